use crate::cache;
use crate::names::Env;
use anyhow::{anyhow, bail, Context, Result};
use qfb_core::algebra::Algebra;
use qfb_core::correspondences::{
    self as corr, assign, constraints, fb_poset, restricted_cotilting_triangle, special_cotilts, verify_involution,
    Assignment, Check, CorrespondenceError, TaggedTuple,
};
use qfb_core::homological::{
    build_dualizing_sequence, cogen_level, coresolution, gen_level, in_cogen_k, in_gen_k, is_dualizing_summand,
    is_faithfully_balanced, AddCat,
};
use qfb_core::io::{AlgebraFile, CatalogFile, ModuleFile};
use qfb_core::knit::{Catalog, KnitError, KnitLimits};
use qfb_core::module::{coregular_module, decompose, direct_sum, regular_module, Rep};
use qfb_core::relative::{verify_strong_dualizing, Bound, ExactStructure};
use serde_json::{json, Value};
use std::path::Path;
use std::sync::Arc;

/// What a command prints and how it exits: `verdict` `Some(false)` exits 1 with `obstruction` on stderr.
pub struct Outcome {
    pub report: Value,
    pub verdict: Option<bool>,
    pub obstruction: Option<String>,
}

impl Outcome {
    fn value(report: Value) -> Outcome {
        Outcome { report, verdict: None, obstruction: None }
    }

    fn verdict(report: Value, holds: bool, obstruction: impl FnOnce() -> String) -> Outcome {
        let obstruction = (!holds).then(obstruction);
        Outcome { report, verdict: Some(holds), obstruction }
    }
}

pub struct Session {
    pub use_cache: bool,
    pub max_modules: usize,
}

impl Session {
    pub fn algebra(&self, path: &Path) -> Result<Arc<Algebra>> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let file = AlgebraFile::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
        if matches!(file.field, qfb_core::linalg::Field::Prime { .. }) {
            log::warn!("working over a prime field: characteristic-dependent relations may change answers");
        }
        Ok(file.build()?)
    }

    fn limits(&self, alg: &Algebra) -> KnitLimits {
        KnitLimits { max_modules: self.max_modules, ..KnitLimits::for_algebra(alg) }
    }

    pub fn catalog(&self, alg: &Arc<Algebra>, extra: &[Rep]) -> Result<Catalog, KnitError> {
        cache::catalog(alg, self.use_cache, self.limits(alg), extra)
    }

    /// The catalog when knitting closes, `None` otherwise.
    pub fn try_catalog(&self, alg: &Arc<Algebra>) -> Result<Option<Catalog>> {
        match self.catalog(alg, &[]) {
            Ok(c) => Ok(Some(c)),
            Err(KnitError::NotRepresentationDirected { .. }) => Ok(None),
            Err(e) => Err(e.into()),
        }
    }
}

pub fn bound_json(b: Bound) -> Value {
    match b {
        Bound::Exact(n) => json!(n),
        Bound::AtLeast(n) => json!(format!(">= {n}")),
        Bound::Infinite => json!("infinite"),
    }
}

/// Indecomposable summands of `x`, by catalog label when available.
pub fn summand_labels(x: &Rep, catalog: Option<&Catalog>) -> Vec<String> {
    if x.is_zero() {
        return vec![];
    }
    if let Some(ix) = catalog.and_then(|c| c.locate(x).ok()) {
        return ix.iter().map(|&i| catalog.unwrap().labels[i].clone()).collect();
    }
    match decompose(x) {
        Ok(parts) => parts.iter().map(|p| format!("{:?}", p.rep.dims)).collect(),
        Err(_) => vec![format!("{:?}", x.dims)],
    }
}

fn module_json(x: &Rep, catalog: Option<&Catalog>) -> Value {
    json!({ "summands": summand_labels(x, catalog), "module": ModuleFile::from_rep(x) })
}

fn checks_json(cs: &[Check]) -> Value {
    serde_json::to_value(cs).expect("checks serialize")
}

fn failing(cs: &[Check]) -> String {
    cs.iter().filter(|c| !c.holds).map(|c| c.name.clone()).collect::<Vec<_>>().join("; ")
}

// ---------------------------------------------------------------- knit

pub fn knit(s: &Session, algebra: &Path, dot: Option<&Path>, supplement: Option<&Path>) -> Result<Outcome> {
    let alg = s.algebra(algebra)?;
    let extra = match supplement {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            let files: Vec<ModuleFile> = serde_json::from_str(&text).context("supplement must be a list of modules")?;
            files.iter().map(|f| f.to_rep(&alg)).collect::<Result<Vec<_>, _>>()?
        }
        None => vec![],
    };
    match s.catalog(&alg, &extra) {
        Ok(c) => {
            if let Some(d) = dot {
                std::fs::write(d, c.to_dot()).with_context(|| format!("writing {}", d.display()))?;
            }
            let file = CatalogFile::from_catalog(&c);
            Ok(Outcome::value(json!({
                "count": c.len(),
                "labels": c.labels,
                "dims": c.modules.iter().map(|m| m.dims.clone()).collect::<Vec<_>>(),
                "catalog": file,
            })))
        }
        Err(KnitError::NotRepresentationDirected { found, reason, partial }) => {
            let report = json!({
                "count": Value::Null,
                "partial": partial.iter().map(ModuleFile::from_rep).collect::<Vec<_>>(),
            });
            println!("{report}");
            bail!("knitting did not close after {found} indecomposables ({reason}); no global claims are made")
        }
        Err(e) => Err(e.into()),
    }
}

// ---------------------------------------------------------------- shared module arguments

pub struct ModuleArgs {
    pub m: Option<String>,
    pub lets: Vec<String>,
    pub g: Option<String>,
    pub h: Option<String>,
}

impl ModuleArgs {
    pub fn env<'a>(&self, alg: &Arc<Algebra>, catalog: Option<&'a Catalog>) -> Result<Env<'a>> {
        let mut env = Env::new(alg.clone(), catalog);
        if let Some(m) = &self.m {
            env.bind("M", m)?;
        }
        for l in &self.lets {
            let (name, expr) = l.split_once('=').ok_or_else(|| anyhow!("--let expects NAME=EXPR, got {l:?}"))?;
            env.bind(name.trim(), expr)?;
        }
        Ok(env)
    }

    fn side(&self, env: &Env, text: &str, base: Rep) -> Result<Rep> {
        if text == "auto" {
            let m = env.binding("M").ok_or_else(|| anyhow!("`auto` needs the module M (--M or --let M=…)"))?;
            Ok(direct_sum(&[base, m.clone()]).0)
        } else {
            env.resolve(text)
        }
    }

    pub fn structure(&self, env: &Env) -> Result<ExactStructure> {
        let alg = &env.alg;
        let g = self.g.as_deref().map(|t| self.side(env, t, regular_module(alg))).transpose()?;
        let h = self.h.as_deref().map(|t| self.side(env, t, coregular_module(alg))).transpose()?;
        Ok(match (g, h) {
            (Some(g), Some(h)) => ExactStructure::from_pair(&g, &h)?,
            (Some(g), None) => ExactStructure::from_generator(&g)?,
            (None, Some(h)) => ExactStructure::from_cogenerator(&h)?,
            (None, None) => ExactStructure::standard(alg),
        })
    }

    fn relative(&self) -> bool {
        self.g.is_some() || self.h.is_some()
    }
}

// ---------------------------------------------------------------- check

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Property {
    Fb,
    CogenK,
    GenK,
    FFaithful,
    FCotilting,
    FTilting,
    DomdimF,
    GldimF,
    DualizingSummand,
    StrongSequence,
    ClusterPair,
    FGorenstein,
}

impl Property {
    fn arity(self) -> usize {
        match self {
            Property::DomdimF | Property::GldimF | Property::FGorenstein => 0,
            Property::Fb | Property::FFaithful | Property::FCotilting | Property::FTilting => 1,
            Property::CogenK | Property::GenK | Property::DualizingSummand => 2,
            Property::StrongSequence | Property::ClusterPair => 3,
        }
    }

    fn name(self) -> String {
        clap::ValueEnum::to_possible_value(&self).expect("named").get_name().to_string()
    }
}

pub struct CheckArgs {
    pub property: Property,
    pub modules: Vec<String>,
    pub k: Option<usize>,
    pub cap: usize,
}

fn need_catalog(c: Option<&Catalog>) -> Result<&Catalog> {
    c.ok_or_else(|| CorrespondenceError::NeedsEnumeration.into())
}

pub fn check(s: &Session, algebra: &Path, args: &CheckArgs, margs: &ModuleArgs) -> Result<Outcome> {
    let alg = s.algebra(algebra)?;
    let catalog = s.try_catalog(&alg)?;
    let cat = catalog.as_ref();
    let env = margs.env(&alg, cat)?;
    let p = args.property;
    let mut mods: Vec<Rep> = args.modules.iter().map(|t| env.resolve(t)).collect::<Result<_>>()?;
    if mods.is_empty() && p.arity() >= 1 {
        if let Some(m) = env.binding("M") {
            mods.push(m.clone());
        }
    }
    if mods.len() != p.arity() {
        bail!("{} takes {} module argument(s), got {}", p.name(), p.arity(), mods.len());
    }
    let k = args.k;
    let kk = k.unwrap_or(1);
    let f = margs.structure(&env)?;
    let labels = |x: &Rep| summand_labels(x, cat);
    let mut report = json!({ "property": p.name(), "modules": mods.iter().map(labels).collect::<Vec<_>>() });
    if margs.relative() {
        report["G"] = json!(labels(&f.g));
        report["H"] = json!(labels(&f.h));
    }
    let set = |report: &mut Value, key: &str, v: Value| report[key] = v;

    let out = match p {
        Property::Fb => {
            let m = &mods[0];
            let holds = is_faithfully_balanced(m)?;
            let mcat = AddCat::new(m)?;
            let lam = regular_module(&alg);
            let level = cogen_level(&lam, &mcat, 2, None);
            let terms: Vec<Vec<String>> = coresolution(&mcat, &lam, 2).iter().map(|st| labels(&st.approx.object)).collect();
            set(&mut report, "verdict", json!(holds));
            set(&mut report, "witness", json!({ "regular_cogen_level": level, "coresolution": terms }));
            Outcome::verdict(report, holds, || {
                format!("the regular module only reaches cogen level {level:?} in add(M); coresolution {terms:?}")
            })
        }
        Property::CogenK | Property::GenK => {
            let (x, m) = (&mods[0], &mods[1]);
            let mcat = AddCat::new(m)?;
            let cogen = p == Property::CogenK;
            let (holds, level) = match (cogen, margs.relative()) {
                (true, true) => (f.in_cogen_k(x, &mcat, kk), f.cogen_level(x, &mcat, kk + 1)),
                (false, true) => (f.in_gen_k(x, &mcat, kk), f.gen_level(x, &mcat, kk + 1)),
                (true, false) => (in_cogen_k(x, &mcat, kk), cogen_level(x, &mcat, kk + 1, None)),
                (false, false) => (in_gen_k(x, &mcat, kk), gen_level(x, &mcat, kk + 1, None)),
            };
            set(&mut report, "k", json!(kk));
            set(&mut report, "verdict", json!(holds));
            set(&mut report, "witness", json!({ "level": level }));
            Outcome::verdict(report, holds, || format!("the module only reaches level {level:?}, below k = {kk}"))
        }
        Property::FFaithful => {
            let mcat = AddCat::new(&mods[0])?;
            let holds = f.is_k_faithful(&mods[0], kk)?;
            let level = f.cogen_level(&f.g, &mcat, kk + 1);
            set(&mut report, "k", json!(kk));
            set(&mut report, "verdict", json!(holds));
            set(&mut report, "witness", json!({ "generator_cogen_level": level }));
            Outcome::verdict(report, holds, || format!("G only reaches cogen_F level {level:?}"))
        }
        Property::FCotilting | Property::FTilting => {
            let c = &mods[0];
            let cotilt = p == Property::FCotilting;
            let k = match k {
                Some(k) => k,
                None => {
                    let d = if cotilt { f.id(c, args.cap) } else { f.pd(c, args.cap) };
                    d.exact().ok_or_else(|| anyhow!("dimension is not finite within the cap; pass --k"))?
                }
            };
            let indecs = cat.map(|c| c.modules.as_slice()).unwrap_or(&[]);
            let (holds, tr) = if cotilt {
                (f.is_cotilting(c, k, indecs)?, f.cotilting_report(c, k)?)
            } else {
                (f.is_tilting(c, k, indecs)?, f.tilting_report(c, k)?)
            };
            set(&mut report, "k", json!(k));
            set(&mut report, "verdict", json!(holds));
            set(&mut report, "witness", serde_json::to_value(&tr)?);
            Outcome::verdict(report, holds, || format!("{tr:?}"))
        }
        Property::DomdimF => {
            let d = f.domdim(args.cap);
            set(&mut report, "value", bound_json(d));
            Outcome::value(report)
        }
        Property::GldimF => {
            let c = need_catalog(cat)?;
            let d = f.gldim(&c.modules, args.cap);
            set(&mut report, "value", bound_json(d));
            Outcome::value(report)
        }
        Property::DualizingSummand => {
            let c = need_catalog(cat)?;
            let holds = is_dualizing_summand(&mods[0], &mods[1], kk, &c.modules)?;
            set(&mut report, "k", json!(kk));
            set(&mut report, "verdict", json!(holds));
            Outcome::verdict(report, holds, || format!("M is not a {kk}-dualizing summand of L"))
        }
        Property::StrongSequence => {
            let (l, r, n) = (&mods[0], &mods[1], &mods[2]);
            let holds = corr::strong_sequence_between(l, r, n, kk)?;
            let seq = build_dualizing_sequence(l, n, kk).ok();
            let terms: Option<Vec<Vec<String>>> = seq.as_ref().map(|q| q.terms.iter().map(labels).collect());
            let strong = seq.as_ref().map(|q| verify_strong_dualizing(q, n).map_err(|e| e.to_string()));
            set(&mut report, "k", json!(kk));
            set(&mut report, "verdict", json!(holds));
            set(&mut report, "witness", json!({ "terms": terms, "strong": strong.map(|r| r.map(|x| serde_json::to_value(x).ok())) }));
            Outcome::verdict(report, holds, || format!("no strong {kk}-add(M)-dualizing sequence from L to R; terms {terms:?}"))
        }
        Property::ClusterPair => {
            let c = need_catalog(cat)?;
            let r = corr::is_cluster_tilting_pair(&mods[0], &mods[1], &mods[2], kk, Some(&c.modules))?;
            set(&mut report, "k", json!(kk));
            set(&mut report, "verdict", json!(r.ok()));
            set(&mut report, "witness", serde_json::to_value(&r)?);
            let holds = r.ok();
            Outcome::verdict(report, holds, || format!("sequence {:?}; failing: {}", r.sequence, failing(&r.checks)))
        }
        Property::FGorenstein => {
            let c = need_catalog(cat)?;
            let r = f.gorenstein_witness(&c.modules, args.cap.max(1000))?;
            set(&mut report, "verdict", json!(r.gorenstein));
            set(
                &mut report,
                "witness",
                json!({
                    "module": r.witness.as_ref().map(labels),
                    "cotilting": r.cotilting,
                    "tilting": r.tilting,
                    "searched": r.searched,
                }),
            );
            Outcome::verdict(report, r.gorenstein, || "no module is both F-cotilting and F-tilting".into())
        }
    };
    Ok(out)
}

// ---------------------------------------------------------------- assign

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum AssignKind {
    As,
    DualAs,
    Four,
    DualFour,
    Six,
    MoritaTachikawa,
    Triangle,
}

pub struct AssignArgs {
    pub kind: AssignKind,
    pub l: Option<String>,
    pub r: Option<String>,
    pub c: Option<String>,
    pub k: usize,
    pub verify_involution: bool,
}

fn algebra_json(a: &Algebra) -> Value {
    json!({ "vertices": a.n_vertices(), "dim": a.dim(), "fingerprint": a.fingerprint() })
}

fn tuple_json(t: &TaggedTuple, catalog: Option<&Catalog>) -> Value {
    let mut slots = serde_json::Map::new();
    slots.insert("M".into(), module_json(&t.m, catalog));
    for (n, x) in &t.slots {
        slots.insert(n.clone(), module_json(x, catalog));
    }
    json!({ "algebra": algebra_json(&t.alg), "slots": slots })
}

pub fn assign_cmd(s: &Session, algebra: &Path, args: &AssignArgs, margs: &ModuleArgs) -> Result<Outcome> {
    let alg = s.algebra(algebra)?;
    let catalog = s.try_catalog(&alg)?;
    let cat = catalog.as_ref();
    let env = margs.env(&alg, cat)?;
    let m = env.binding("M").cloned().ok_or_else(|| anyhow!("the tuple needs --M"))?;
    if args.kind == AssignKind::Triangle {
        let c = env.resolve(args.c.as_deref().ok_or_else(|| anyhow!("triangle needs --C"))?)?;
        let indecs = need_catalog(cat)?;
        let rep = restricted_cotilting_triangle(&m, &c, args.k, &indecs.modules)?;
        let gamma_cat = s.try_catalog(&rep.vertex2.alg)?;
        let b_cat = s.try_catalog(&rep.vertex3.alg)?;
        let holds = rep.ok();
        let report = json!({
            "assignment": "triangle",
            "k": rep.k,
            "vertex1": { "M": summand_labels(&m, cat), "C": summand_labels(&c, cat) },
            "vertex2": tuple_json(&rep.vertex2, gamma_cat.as_ref()),
            "vertex3": tuple_json(&rep.vertex3, b_cat.as_ref()),
            "format1": checks_json(&rep.format1),
            "format2": checks_json(&rep.format2),
            "format3": checks_json(&rep.format3),
            "commutes": checks_json(&rep.commutes),
            "verdict": holds,
        });
        let all: Vec<Check> = [rep.format2, rep.format3, rep.commutes].concat();
        return Ok(Outcome::verdict(report, holds, || failing(&all)));
    }
    let a = match args.kind {
        AssignKind::As => Assignment::As,
        AssignKind::DualAs => Assignment::DualAs,
        AssignKind::Four => Assignment::Four,
        AssignKind::DualFour => Assignment::DualFour,
        AssignKind::Six => Assignment::Six,
        AssignKind::MoritaTachikawa => Assignment::MoritaTachikawa,
        AssignKind::Triangle => unreachable!(),
    };
    let mut owned: Vec<(String, Rep)> = Vec::new();
    let named = [("G", &margs.g), ("H", &margs.h), ("L", &args.l), ("R", &args.r)];
    for (n, text) in named {
        if let Some(t) = text {
            let base = if n == "H" { coregular_module(&alg) } else { regular_module(&alg) };
            owned.push((n.to_string(), margs.side(&env, t, base)?));
        }
    }
    let slots: Vec<(&str, &Rep)> = owned.iter().map(|(n, x)| (n.as_str(), x)).collect();
    let t = TaggedTuple::new(&m, &slots)?;
    let cs = constraints(&t, a)?;
    let mut report = json!({
        "assignment": a.to_string(),
        "source": tuple_json(&t, cat),
        "constraints": checks_json(&cs),
    });
    if !cs.iter().all(|c| c.holds) {
        report["verdict"] = json!(false);
        return Ok(Outcome::verdict(report, false, || format!("constraints failed: {}", failing(&cs))));
    }
    let img = assign(&t, a)?;
    let target_cat = s.try_catalog(&img.alg)?;
    report["target"] = tuple_json(&img, target_cat.as_ref());
    let mut holds = true;
    if args.verify_involution {
        let inv = verify_involution(&t, a)?;
        holds = inv.ok();
        report["involution"] = serde_json::to_value(&inv)?;
    }
    report["verdict"] = json!(holds);
    Ok(Outcome::verdict(report, holds, || "the assignment is not involutive on this tuple".into()))
}

// ---------------------------------------------------------------- enumerate-fb

pub fn enumerate_fb(s: &Session, algebra: &Path, hasse: Option<&Path>) -> Result<Outcome> {
    let alg = s.algebra(algebra)?;
    let c = s.try_catalog(&alg)?.ok_or(CorrespondenceError::NeedsEnumeration)?;
    let p = fb_poset(&c)?;
    if let Some(h) = hasse {
        std::fs::write(h, p.to_dot()).with_context(|| format!("writing {}", h.display()))?;
    }
    let modules: Vec<Value> = p
        .modules
        .iter()
        .enumerate()
        .map(|(i, m)| {
            json!({
                "label": m.label,
                "summands": m.summands.iter().map(|&j| c.labels[j].clone()).collect::<Vec<_>>(),
                "class": p.class_of(i),
            })
        })
        .collect();
    let classes: Vec<Vec<String>> =
        p.classes.iter().map(|cl| cl.iter().map(|&i| p.modules[i].label.clone()).collect()).collect();
    Ok(Outcome::value(json!({
        "count": p.n_modules(),
        "classes_count": p.n_classes(),
        "candidates": p.candidates,
        "modules": modules,
        "classes": classes,
        "generator_cogenerators": p.generator_cogenerators.iter().map(|&i| p.modules[i].label.clone()).collect::<Vec<_>>(),
        "covers": p.covers,
    })))
}

// ---------------------------------------------------------------- special-cotilts

pub fn special_cotilts_cmd(s: &Session, algebra: &Path, g: &str, r: usize, dot: Option<&Path>, lets: &ModuleArgs) -> Result<Outcome> {
    if r == 0 {
        bail!("--r must be at least 1");
    }
    let alg = s.algebra(algebra)?;
    let catalog = s.try_catalog(&alg)?;
    let env = lets.env(&alg, catalog.as_ref())?;
    let gm = lets.side(&env, g, regular_module(&alg))?;
    let f = ExactStructure::from_generator(&gm)?;
    let lattice = special_cotilts(&f, r, catalog.as_ref().map(|c| c.modules.as_slice()))?;
    if let Some(d) = dot {
        std::fs::write(d, lattice.to_dot()).with_context(|| format!("writing {}", d.display()))?;
    }
    let holds = lattice.all_special() && lattice.is_full_cube() && lattice.order_matches != Some(false);
    let mut report = serde_json::to_value(&lattice)?;
    if let Some(c) = catalog.as_ref() {
        report["h_summands"] = json!(f.hcat.summands.iter().map(|x| summand_labels(x, Some(c)).join("|")).collect::<Vec<_>>());
        for (i, n) in lattice.nodes.iter().enumerate() {
            report["nodes"][i]["label"] = json!(summand_labels(&n.module, Some(c)).join("|"));
        }
    }
    report["nodes_count"] = json!(lattice.nodes.len());
    report["all_special"] = json!(lattice.all_special());
    report["full_cube"] = json!(lattice.is_full_cube());
    report["verdict"] = json!(holds);
    Ok(Outcome::verdict(report, holds, || "some node fails the special cotilting checks".into()))
}
