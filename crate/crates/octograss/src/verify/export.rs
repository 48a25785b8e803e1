//! CSV dumps for external audit: the epsilon table, the tangent basis of
//! a Grassmannian, and every reproduced closed-form derivative value.

use super::closed_form;
use super::Config;
use crate::grassmann::basis_tangent;
use crate::octonion::epsilon;
use crate::{Error, Result};

/// The exportable table kinds.
pub const EXPORT_KINDS: [&str; 3] = ["epsilon-table", "tangent-basis", "lemma-values"];

/// Renders one of the exportable tables as CSV.
///
/// `epsilon-table` ignores `k`/`n`; `tangent-basis` uses them to pick the
/// Grassmannian; `lemma-values` runs the full closed-form reproduction at
/// the configuration's differentiation settings.
pub fn export_table(kind: &str, k: usize, n: usize, cfg: &Config) -> Result<String> {
    match kind {
        "epsilon-table" => Ok(epsilon_table_csv()),
        "tangent-basis" => tangent_basis_csv(k, n),
        "lemma-values" => lemma_values_csv(cfg),
        other => Err(Error::UnknownExportKind(other.to_string())),
    }
}

/// All 343 epsilon entries, one `i,j,k,sign` row each, signs written as
/// `+1`, `0`, `-1`.
pub fn epsilon_table_csv() -> String {
    let table = epsilon();
    let mut out = String::new();
    for ((i, j, k), s) in table.iter() {
        let sign = match s {
            1 => "+1",
            -1 => "-1",
            _ => "0",
        };
        out.push_str(&format!("{i},{j},{k},{sign}\n"));
    }
    out
}

/// The orthonormal tangent basis of `G(k,n)` at the canonical base point:
/// one row per basis vector with its two nonzero entries.
pub fn tangent_basis_csv(k: usize, n: usize) -> Result<String> {
    let mut out = String::from("l,j,plus_row,plus_col,minus_row,minus_col\n");
    for l in 0..k {
        for j in k..n {
            let t = basis_tangent(k, n, l, j)?;
            debug_assert_eq!(t.mat[(j, l)], 1.0);
            out.push_str(&format!("{l},{j},{j},{l},{l},{j}\n"));
        }
    }
    Ok(out)
}

/// Every reproduced closed-form derivative and curvature value with its
/// numerical residual.
pub fn lemma_values_csv(cfg: &Config) -> Result<String> {
    let dc = cfg.diff_cfg();
    let mut out = String::from("family,i,k,j,l,residual,expected\n");
    let mut push = |cases: Vec<closed_form::LemmaCase>| {
        for c in cases {
            let (i, kk) = match c.outer {
                Some((i, kk)) => (i.to_string(), kk.to_string()),
                None => (String::new(), String::new()),
            };
            let (j, l) = c.inner;
            out.push_str(&format!(
                "{},{},{},{},{},{:e},\"{}\"\n",
                c.family, i, kk, j, l, c.residual, c.expected
            ));
        }
    };
    push(closed_form::sigma3_cases(&dc)?);
    push(closed_form::sigma3_curvature_cases(&dc)?);
    push(closed_form::j_cases(&dc)?);
    push(closed_form::j_curvature_cases(&dc)?);
    Ok(out)
}
