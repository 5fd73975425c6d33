//! Three-way agreement for registry formulas: brute force (up to a ceiling),
//! the closed form (from its stated range on) and the generating function.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::perm::count_avoiders;
use crate::registry::{first_display_mismatch, FormulaId, RegistryError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest `n` counted by brute force.
    pub oracle_max: usize,
    /// Largest `n` compared at all.
    pub nmax: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            oracle_max: 9,
            nmax: 60,
        }
    }
}

/// One `n`. Missing values were not computed for this `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyRow {
    pub id: String,
    pub n: usize,
    pub oracle: Option<BigInt>,
    pub closed: Option<BigInt>,
    pub gf: Option<BigInt>,
    pub ok: bool,
}

impl VerifyRow {
    /// The agreed value, if at least one method produced it.
    pub fn value(&self) -> Option<&BigInt> {
        self.oracle.as_ref().or(self.closed.as_ref()).or(self.gf.as_ref())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub id: String,
    pub valid_from: usize,
    pub rows: Vec<VerifyRow>,
    /// Index of a displayed generating function that differs from the
    /// computed one.
    pub display_mismatch: Option<usize>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn first_discrepancy(&self) -> Option<&VerifyRow> {
        self.rows.iter().find(|r| !r.ok)
    }
}

/// Rows for `n = 1 ..= nmax`.
pub fn verify_formula(id: &FormulaId, opts: VerifyOptions) -> Result<VerifyReport, RegistryError> {
    let series = id.gf_series(opts.nmax)?;
    let patterns = id.patterns();
    let valid_from = id.valid_from();
    let rows: Vec<VerifyRow> = (1..=opts.nmax)
        .into_par_iter()
        .map(|n| {
            let oracle = (n <= opts.oracle_max).then(|| count_avoiders(n, &patterns));
            let closed = if n >= valid_from {
                Some(id.closed_count(n)?)
            } else {
                None
            };
            let gf = Some(series[n].clone());
            let values: Vec<&BigInt> = [&oracle, &closed, &gf].into_iter().flatten().collect();
            let ok = values.windows(2).all(|w| w[0] == w[1]);
            Ok(VerifyRow {
                id: id.to_string(),
                n,
                oracle,
                closed,
                gf,
                ok,
            })
        })
        .collect::<Result<_, RegistryError>>()?;
    let display_mismatch = first_display_mismatch(id);
    let passed = display_mismatch.is_none() && rows.iter().all(|r| r.ok);
    Ok(VerifyReport {
        id: id.to_string(),
        valid_from,
        rows,
        display_mismatch,
        passed,
    })
}

/// Reports in the order of `ids`.
pub fn verify_all(ids: &[FormulaId], opts: VerifyOptions) -> Result<Vec<VerifyReport>, RegistryError> {
    ids.par_iter().map(|id| verify_formula(id, opts)).collect()
}
