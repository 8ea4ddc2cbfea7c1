//! Module expressions: `P1`, `I2`, `S3`, `tau-(X)`, `tau(X)`, `[i,j]`, `X+Y`, `k*X`, bound names and
//! catalog labels, resolved against one algebra.

use anyhow::{anyhow, bail, Context, Result};
use qfb_core::algebra::Algebra;
use qfb_core::homological::{tau, tau_inv};
use qfb_core::io::ModuleFile;
use qfb_core::knit::Catalog;
use qfb_core::module::{
    coregular_module, direct_sum, injective_at, interval, isomorphic, projective_at, regular_module, simple_at, Rep,
};
use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

pub struct Env<'a> {
    pub alg: Arc<Algebra>,
    pub catalog: Option<&'a Catalog>,
    bindings: BTreeMap<String, Rep>,
}

impl<'a> Env<'a> {
    pub fn new(alg: Arc<Algebra>, catalog: Option<&'a Catalog>) -> Env<'a> {
        Env { alg, catalog, bindings: BTreeMap::new() }
    }

    pub fn bind(&mut self, name: &str, text: &str) -> Result<()> {
        let x = self.resolve(text)?;
        self.bindings.insert(name.to_string(), x);
        Ok(())
    }

    pub fn binding(&self, name: &str) -> Option<&Rep> {
        self.bindings.get(name)
    }

    /// A module file path or an expression.
    pub fn resolve(&self, text: &str) -> Result<Rep> {
        let t = text.trim();
        if t.ends_with(".json") && Path::new(t).is_file() {
            let s = std::fs::read_to_string(t).with_context(|| format!("reading {t}"))?;
            return Ok(ModuleFile::parse(&s)?.to_rep(&self.alg)?);
        }
        let chars: Vec<char> = t.chars().collect();
        let mut p = Parser { env: self, s: &chars, i: 0 };
        let parsed = p.expr().and_then(|x| match p.peek() {
            None => Ok(x),
            Some(c) => Err(anyhow!("unexpected {c:?} at position {}", p.i)),
        });
        match parsed {
            Ok(x) => Ok(x.named(t)),
            Err(e) => match self.catalog.and_then(|c| c.by_label(t)) {
                Some(i) => Ok(self.catalog.unwrap().modules[i].clone()),
                None => Err(e.context(format!("cannot read module expression {t:?}"))),
            },
        }
    }

    fn vertex(&self, s: &str) -> Option<usize> {
        self.alg.vertices.iter().position(|v| v == s).or_else(|| {
            let i: usize = s.parse().ok()?;
            (1..=self.alg.n_vertices()).contains(&i).then(|| i - 1)
        })
    }

    fn name(&self, n: &str) -> Result<Rep> {
        let mut found: Vec<(String, Rep)> = Vec::new();
        if let Some(x) = self.bindings.get(n) {
            found.push((format!("binding {n}"), x.clone()));
        }
        let a = &self.alg;
        match n {
            "A" | "Λ" | "Lambda" => found.push(("regular module".into(), regular_module(a))),
            "DA" | "DΛ" | "DLambda" => found.push(("dual of the regular module".into(), coregular_module(a))),
            _ => {}
        }
        let mut cs = n.chars();
        if let (Some(kind @ ('P' | 'I' | 'S')), rest) = (cs.next(), cs.as_str()) {
            if let Some(v) = self.vertex(rest) {
                let x = match kind {
                    'P' => projective_at(a, v),
                    'I' => injective_at(a, v),
                    _ => simple_at(a, v),
                };
                found.push((format!("{kind} at vertex {}", a.vertices[v]), x));
            }
        }
        if let Some(c) = self.catalog {
            if let Some(i) = c.by_label(n) {
                found.push((format!("catalog entry {i}"), c.modules[i].clone()));
            }
        }
        let Some((_, first)) = found.first() else { bail!("unknown module name {n:?}") };
        if let Some((src, _)) = found.iter().find(|(_, x)| !isomorphic(x, first)) {
            bail!("ambiguous module name {n:?}: {} and {src} differ", found[0].0);
        }
        Ok(first.clone())
    }

    fn interval(&self, i: usize, j: usize) -> Result<Rep> {
        let a = &self.alg;
        let linear = a.is_quiver_algebra() && a.gens.iter().all(|g| g.to == g.from + 1);
        if !linear {
            bail!("intervals [i,j] need a linearly oriented quiver");
        }
        if !(1 <= i && i <= j && j <= a.n_vertices()) {
            bail!("interval [{i},{j}] out of range");
        }
        let x = interval(a, i - 1, j - 1);
        if !x.satisfies_relations() {
            bail!("interval [{i},{j}] is not a module over this algebra");
        }
        Ok(x)
    }
}

struct Parser<'e, 'a, 's> {
    env: &'e Env<'a>,
    s: &'s [char],
    i: usize,
}

impl Parser<'_, '_, '_> {
    fn skip(&mut self) {
        while self.s.get(self.i).is_some_and(|c| c.is_whitespace()) {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.skip();
        let n = lit.chars().count();
        if self.s.len() >= self.i + n && self.s[self.i..self.i + n].iter().copied().eq(lit.chars()) {
            self.i += n;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(anyhow!("expected {lit:?} at position {}", self.i))
        }
    }

    fn number(&mut self) -> Option<usize> {
        self.skip();
        let start = self.i;
        while self.s.get(self.i).is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        (self.i > start).then(|| self.s[start..self.i].iter().collect::<String>().parse().ok()).flatten()
    }

    fn expr(&mut self) -> Result<Rep> {
        let mut parts = vec![self.term()?];
        while self.eat("+") {
            parts.push(self.term()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { direct_sum(&parts).0 })
    }

    fn term(&mut self) -> Result<Rep> {
        let save = self.i;
        if let Some(k) = self.number() {
            if self.eat("*") {
                let x = self.atom()?;
                return Ok(if k == 0 { Rep::zero(&self.env.alg) } else { direct_sum(&vec![x; k]).0 });
            }
        }
        self.i = save;
        self.atom()
    }

    fn atom(&mut self) -> Result<Rep> {
        if self.eat("tau-(") {
            let x = self.expr()?;
            self.expect(")")?;
            return Ok(tau_inv(&x));
        }
        if self.eat("tau(") {
            let x = self.expr()?;
            self.expect(")")?;
            return Ok(tau(&x));
        }
        if self.eat("(") {
            let x = self.expr()?;
            self.expect(")")?;
            return Ok(x);
        }
        if self.eat("[") {
            let i = self.number().ok_or_else(|| anyhow!("expected a vertex number"))?;
            self.expect(",")?;
            let j = self.number().ok_or_else(|| anyhow!("expected a vertex number"))?;
            self.expect("]")?;
            return self.env.interval(i, j);
        }
        self.skip();
        let start = self.i;
        while self.s.get(self.i).is_some_and(|c| c.is_alphanumeric() || *c == '_' || *c == '\'') {
            self.i += 1;
        }
        if self.i == start {
            bail!("expected a module at position {}", self.i);
        }
        let n: String = self.s[start..self.i].iter().collect();
        self.env.name(&n)
    }
}
