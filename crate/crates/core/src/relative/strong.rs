//! Strong dualizing sequences.

use super::RelativeError;
use crate::homological::{cogen_f_by_tensor, verify_dualizing_sequence, AddCat, ExactSeq};
use crate::module::Rep;
use serde::{Deserialize, Serialize};

/// The three equivalent strongness criteria for `0 → L → N_0 → … → N_k → R → 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongReport {
    /// `Hom(L, −)` is exact on the sequence.
    pub left_exact: bool,
    /// `Hom(−, R)` is exact on the sequence.
    pub right_exact: bool,
    /// `(N, R) ⊗ (L, N) → (L, R)` is onto (`k = 0`), or bijective with
    /// `Ext^i((L, N), D(N, R)) = 0` for `1 ≤ i < k`.
    pub tensor: bool,
}

/// Checks that `seq` is a dualizing sequence through `add(n)` and that it is strong.
///
/// The three criteria are asserted to agree; `NotStrong` carries the first one that fails.
pub fn verify_strong_dualizing(seq: &ExactSeq, n: &Rep) -> Result<StrongReport, RelativeError> {
    let report = verify_dualizing_sequence(seq, n)?;
    if let Some(why) = report.failure() {
        return Err(RelativeError::PreconditionFailed(format!("not a dualizing sequence: {why}")));
    }
    let t = &seq.terms;
    let (l, r) = (&t[0], &t[t.len() - 1]);
    let k = t.len() - 3;
    let ncat = AddCat::new(n)?;
    let out = StrongReport {
        left_exact: seq.covariant_exact(l),
        right_exact: seq.contravariant_exact(r),
        tensor: cogen_f_by_tensor(l, &ncat, r, k),
    };
    assert!(
        out.left_exact == out.right_exact && out.right_exact == out.tensor,
        "strongness criteria disagree: {out:?}"
    );
    if !out.left_exact {
        return Err(RelativeError::NotStrong("Hom(L,-) is not exact".into()));
    }
    Ok(out)
}
