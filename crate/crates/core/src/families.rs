//! Named pattern families: the run permutations `tau_r`, their special cases
//! `alpha`, `beta`, the families `gamma`, `omega`, `mu`, the extension
//! operator and the prefix-restriction sets `R^k_{a_1..a_l}`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{all_permutations, PatternSet, PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("r-sequence {0:?}: {1}")]
    BadRSequence(Vec<u32>, &'static str),
    #[error("restriction spec k={k}, a={a:?}: {reason}")]
    BadRestriction {
        k: u32,
        a: Vec<u32>,
        reason: &'static str,
    },
    #[error("{family} parameters out of range: {reason}")]
    BadParams {
        family: &'static str,
        reason: &'static str,
    },
    #[error("cannot parse family spec {0:?}")]
    Parse(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A strictly decreasing sequence `r_0 > r_1 > ... > r_m = 1` with `m >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RSequence(Vec<u32>);

impl RSequence {
    pub fn new(r: Vec<u32>) -> Result<Self, FamilyError> {
        if r.len() < 2 {
            return Err(FamilyError::BadRSequence(r, "needs at least two entries"));
        }
        if r.windows(2).any(|w| w[0] <= w[1]) {
            return Err(FamilyError::BadRSequence(r, "must be strictly decreasing"));
        }
        if *r.last().unwrap() != 1 {
            return Err(FamilyError::BadRSequence(r, "must end with 1"));
        }
        Ok(RSequence(r))
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    /// Length of `tau_r`, i.e. `r_0 - 1`.
    pub fn perm_len(&self) -> usize {
        self.0[0] as usize - 1
    }

    /// Run lengths `r_{j-1} - r_j`, left to right.
    pub fn gaps(&self) -> Vec<u32> {
        self.0.windows(2).map(|w| w[0] - w[1]).collect()
    }

    /// The sequence whose runs have the given lengths; `gaps` must be
    /// nonempty with positive entries.
    pub fn from_gaps(gaps: &[u32]) -> Result<Self, FamilyError> {
        let total: u32 = gaps.iter().sum();
        let mut r = vec![total + 1];
        for g in gaps {
            r.push(r.last().unwrap() - g);
        }
        RSequence::new(r)
    }
}

/// `tau_{r_0..r_m}`: runs `r_j, r_j + 1, ..., r_{j-1} - 1` for `j = 1..m`.
pub fn tau_perm(r: &RSequence) -> Permutation {
    let values: Vec<u32> = r.0.windows(2).flat_map(|w| w[1]..w[0]).collect();
    Permutation::new(values).expect("runs of an r-sequence form a permutation")
}

/// The r-sequence `s+t+2, s+1, s, ..., 1` of `alpha_{s,t}`.
pub fn alpha_rsequence(s: u32, t: u32) -> Result<RSequence, FamilyError> {
    if s < 1 || t < 1 {
        return Err(FamilyError::BadParams {
            family: "alpha",
            reason: "s >= 1 and t >= 1 required",
        });
    }
    let mut r = vec![s + t + 2];
    r.extend((1..=s + 1).rev());
    RSequence::new(r)
}

pub fn alpha_perm(s: u32, t: u32) -> Result<Permutation, FamilyError> {
    Ok(tau_perm(&alpha_rsequence(s, t)?))
}

/// The r-sequence `a+b+c+1, a+b+c, ..., b+c+1, c+1, c, ..., 1` of
/// `beta_{a,b,c}`.
pub fn beta_rsequence(a: u32, b: u32, c: u32) -> Result<RSequence, FamilyError> {
    if b < 1 || a + c < 1 {
        return Err(FamilyError::BadParams {
            family: "beta",
            reason: "b >= 1 and a + c >= 1 required",
        });
    }
    let mut r: Vec<u32> = (b + c + 1..=a + b + c + 1).rev().collect();
    r.extend((1..=c + 1).rev());
    RSequence::new(r)
}

pub fn beta_perm(a: u32, b: u32, c: u32) -> Result<Permutation, FamilyError> {
    Ok(tau_perm(&beta_rsequence(a, b, c)?))
}

/// `beta_{a,b,c}` built directly from its one-line display
/// `a+b+c, ..., b+c+1, c+1, c+2, ..., b+c, c, ..., 2, 1`.
pub fn beta_perm_display(a: u32, b: u32, c: u32) -> Result<Permutation, FamilyError> {
    if b < 1 || a + c < 1 {
        return Err(FamilyError::BadParams {
            family: "beta",
            reason: "b >= 1 and a + c >= 1 required",
        });
    }
    let mut v: Vec<u32> = (b + c + 1..=a + b + c).rev().collect();
    v.extend(c + 1..=b + c);
    v.extend((1..=c).rev());
    Ok(Permutation::new(v)?)
}

/// `gamma_{a,b,c} = a+b+c+1, ..., b+c+2, b+c, ..., c+1, b+c+1, c, ..., 1`.
pub fn gamma_perm(a: u32, b: u32, c: u32) -> Permutation {
    let mut v: Vec<u32> = (b + c + 2..=a + b + c + 1).rev().collect();
    v.extend((c + 1..=b + c).rev());
    v.push(b + c + 1);
    v.extend((1..=c).rev());
    Permutation::new(v).expect("gamma is a permutation")
}

/// `omega_k = k, k-1, ..., 4, 2, 1, 3` for `k >= 4`, and `omega_3 = 213`.
pub fn omega_perm(k: u32) -> Result<Permutation, FamilyError> {
    if k < 3 {
        return Err(FamilyError::BadParams {
            family: "omega",
            reason: "k >= 3 required",
        });
    }
    let mut v: Vec<u32> = (4..=k).rev().collect();
    v.extend([2, 1, 3]);
    Ok(Permutation::new(v)?)
}

/// `mu_{a,b} = b+a, ..., b+1, 1, 2, ..., b`.
pub fn mu_perm(a: u32, b: u32) -> Result<Permutation, FamilyError> {
    if a + b < 1 {
        return Err(FamilyError::BadParams {
            family: "mu",
            reason: "a + b >= 1 required",
        });
    }
    let mut v: Vec<u32> = (b + 1..=a + b).rev().collect();
    v.extend(1..=b);
    Ok(Permutation::new(v)?)
}

/// `12...k`
pub fn increasing(k: usize) -> Permutation {
    Permutation::identity(k)
}

/// The permutations of length `n + 1` whose deletion of the maximum gives
/// `alpha` (of length `n`), ordered by insertion slot from the right.
pub fn extend(alpha: &Permutation) -> Vec<Permutation> {
    let n = alpha.len();
    let top = n as u32 + 1;
    let mut out: Vec<Permutation> = (0..=n)
        .map(|slot| {
            let mut v = alpha.values().to_vec();
            v.insert(slot, top);
            Permutation::new(v).expect("inserting the new maximum keeps a permutation")
        })
        .collect();
    out.sort();
    out
}

/// `E^k(r)`: `E^0(r) = r`, `E^k(r) = E(E^{k-1}(r))`.
pub fn extension_set(r: &PatternSet, k: u32) -> PatternSet {
    (0..k).fold(r.clone(), |acc, _| acc.iter().flat_map(extend).collect())
}

/// The nine pattern pairs whose avoiders are counted by `F_{2n-1}`.
pub const WEST_SETS: [[&str; 2]; 9] = [
    ["123", "1432"],
    ["123", "2143"],
    ["123", "2413"],
    ["132", "1234"],
    ["132", "2134"],
    ["132", "2314"],
    ["132", "2341"],
    ["132", "3241"],
    ["132", "3412"],
];

pub fn west_set(index: usize) -> PatternSet {
    WEST_SETS[index]
        .iter()
        .map(|s| s.parse().expect("static pattern"))
        .collect()
}

/// Parameters `k` and `a_1..a_l` of a prefix-restriction set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RestrictionSpec {
    k: u32,
    a: Vec<u32>,
}

impl RestrictionSpec {
    pub fn new(k: u32, a: Vec<u32>) -> Result<Self, FamilyError> {
        let bad = |reason| FamilyError::BadRestriction {
            k,
            a: a.clone(),
            reason,
        };
        if k < 1 {
            return Err(bad("k >= 1 required"));
        }
        if a.is_empty() || a.len() > k as usize {
            return Err(bad("need 1 <= l <= k"));
        }
        if a.iter().any(|&ai| ai < 1 || ai > k) {
            return Err(bad("each a_i must lie in 1..=k"));
        }
        let head = &a[..a.len() - 1];
        if head.iter().collect::<BTreeSet<_>>().len() != head.len() {
            return Err(bad("a_1..a_{l-1} must be distinct"));
        }
        Ok(RestrictionSpec { k, a })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    /// `k - a_j - eta_j` for `j = 1..l`, where `eta_j` counts the earlier
    /// entries larger than `a_j`.
    pub fn recurrence_coefficients(&self) -> Vec<i64> {
        (0..self.a.len())
            .map(|j| {
                let eta = self.a[..j].iter().filter(|&&ai| ai > self.a[j]).count();
                self.k as i64 - self.a[j] as i64 - eta as i64
            })
            .collect()
    }
}

impl fmt::Display for RestrictionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        write!(f, "k={},a={}", self.k, a.join(";"))
    }
}

/// `R^k_{a_1..a_l}`: every `sigma` in `S_k` that agrees with `a` to length
/// `l`, or agrees to some length `i < l` and then has `sigma(i+1) < a_{i+1}`.
pub fn restriction_set(spec: &RestrictionSpec) -> PatternSet {
    all_permutations(spec.k as usize)
        .into_iter()
        .filter(|sigma| in_restriction_set(sigma.values(), &spec.a))
        .collect()
}

fn in_restriction_set(sigma: &[u32], a: &[u32]) -> bool {
    for (i, &ai) in a.iter().enumerate() {
        if sigma[i] < ai {
            return true;
        }
        if sigma[i] != ai {
            return false;
        }
    }
    true
}

/// A pattern family addressed by name and parameters, as written on the
/// command line: `tau:10,9,7,1`, `alpha:2,3`, `beta:1,2,1`, `gamma:1,2,2`,
/// `omega:4`, `mu:2,3`, `inc:4`, `Rset:k=4,a=2;3`, `west:3`, `E^2(...)`,
/// or a plain pattern list `123,132`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Tau(RSequence),
    Alpha(u32, u32),
    Beta(u32, u32, u32),
    Gamma(u32, u32, u32),
    Omega(u32),
    Mu(u32, u32),
    Increasing(u32),
    Restriction(RestrictionSpec),
    West(usize),
    Extension(u32, Box<FamilySpec>),
    List(PatternSet),
}

impl FamilySpec {
    pub fn patterns(&self) -> Result<PatternSet, FamilyError> {
        let single = |p: Permutation| -> PatternSet { [p].into_iter().collect() };
        Ok(match self {
            FamilySpec::Tau(r) => single(tau_perm(r)),
            FamilySpec::Alpha(s, t) => single(alpha_perm(*s, *t)?),
            FamilySpec::Beta(a, b, c) => single(beta_perm(*a, *b, *c)?),
            FamilySpec::Gamma(a, b, c) => single(gamma_perm(*a, *b, *c)),
            FamilySpec::Omega(k) => single(omega_perm(*k)?),
            FamilySpec::Mu(a, b) => single(mu_perm(*a, *b)?),
            FamilySpec::Increasing(k) => single(increasing(*k as usize)),
            FamilySpec::Restriction(spec) => restriction_set(spec),
            FamilySpec::West(i) => west_set(*i - 1),
            FamilySpec::Extension(k, inner) => extension_set(&inner.patterns()?, *k),
            FamilySpec::List(set) => set.clone(),
        })
    }
}

impl FamilySpec {
    /// The full class the family's results are stated for: the family's own
    /// patterns plus the companions they are always paired with (`132, 213`
    /// for tau, alpha, beta and increasing; `123, 132` for gamma; `132, 2341`
    /// for omega; `132, 3241` for mu).
    pub fn class(&self) -> Result<PatternSet, FamilyError> {
        let companions = match self {
            FamilySpec::Tau(_)
            | FamilySpec::Alpha(..)
            | FamilySpec::Beta(..)
            | FamilySpec::Increasing(_) => "132,213",
            FamilySpec::Gamma(..) => "123,132",
            FamilySpec::Omega(_) => "132,2341",
            FamilySpec::Mu(..) => "132,3241",
            FamilySpec::Extension(k, inner) => return Ok(extension_set(&inner.class()?, *k)),
            _ => return self.patterns(),
        };
        let mut set = PatternSet::parse_list(companions)?;
        set.extend(self.patterns()?.iter().cloned());
        Ok(set)
    }
}

fn parse_u32_list(s: &str, sep: char) -> Option<Vec<u32>> {
    s.split(sep).map(|t| t.trim().parse().ok()).collect()
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, FamilyError> {
        let s = s.trim();
        let err = || FamilyError::Parse(s.to_string());
        if let Some(rest) = s.strip_prefix("E^") {
            let open = rest.find('(').ok_or_else(err)?;
            let k: u32 = rest[..open].parse().map_err(|_| err())?;
            let inner = rest[open + 1..].strip_suffix(')').ok_or_else(err)?;
            return Ok(FamilySpec::Extension(k, Box::new(inner.parse()?)));
        }
        let Some((name, params)) = s.split_once(':') else {
            return Ok(FamilySpec::List(PatternSet::parse_list(s)?));
        };
        let nums = || parse_u32_list(params, ',').ok_or_else(err);
        let arity = |v: Vec<u32>, n: usize| if v.len() == n { Ok(v) } else { Err(err()) };
        let spec = match name {
            "tau" => FamilySpec::Tau(RSequence::new(nums()?)?),
            "alpha" => {
                let v = arity(nums()?, 2)?;
                alpha_rsequence(v[0], v[1])?;
                FamilySpec::Alpha(v[0], v[1])
            }
            "beta" => {
                let v = arity(nums()?, 3)?;
                beta_rsequence(v[0], v[1], v[2])?;
                FamilySpec::Beta(v[0], v[1], v[2])
            }
            "gamma" => {
                let v = arity(nums()?, 3)?;
                FamilySpec::Gamma(v[0], v[1], v[2])
            }
            "omega" => {
                let v = arity(nums()?, 1)?;
                omega_perm(v[0])?;
                FamilySpec::Omega(v[0])
            }
            "mu" => {
                let v = arity(nums()?, 2)?;
                mu_perm(v[0], v[1])?;
                FamilySpec::Mu(v[0], v[1])
            }
            "inc" => FamilySpec::Increasing(arity(nums()?, 1)?[0]),
            "west" => {
                let i = arity(nums()?, 1)?[0] as usize;
                if !(1..=WEST_SETS.len()).contains(&i) {
                    return Err(FamilyError::BadParams {
                        family: "west",
                        reason: "index must be in 1..=9",
                    });
                }
                FamilySpec::West(i)
            }
            "Rset" | "rset" => {
                let (kpart, apart) = params.split_once(',').ok_or_else(err)?;
                let k = kpart.trim().strip_prefix("k=").ok_or_else(err)?;
                let a = apart.trim().strip_prefix("a=").ok_or_else(err)?;
                let k: u32 = k.parse().map_err(|_| err())?;
                let a = parse_u32_list(a, ';').ok_or_else(err)?;
                FamilySpec::Restriction(RestrictionSpec::new(k, a)?)
            }
            _ => return Err(err()),
        };
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{contains, enumerate_avoiders};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn r(v: &[u32]) -> RSequence {
        RSequence::new(v.to_vec()).unwrap()
    }

    fn set(items: &[&str]) -> PatternSet {
        items.iter().map(|s| p(s)).collect()
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau_perm(&r(&[4, 1])), p("123"));
        assert_eq!(tau_perm(&r(&[5, 2, 1])), p("2341"));
        assert_eq!(tau_perm(&r(&[10, 9, 7, 6, 5, 2, 1])), p("978652341"));
    }

    #[test]
    fn rsequence_validation() {
        assert!(matches!(RSequence::new(vec![4]), Err(FamilyError::BadRSequence(..))));
        assert!(matches!(RSequence::new(vec![4, 4, 1]), Err(FamilyError::BadRSequence(..))));
        assert!(matches!(RSequence::new(vec![4, 2]), Err(FamilyError::BadRSequence(..))));
        assert_eq!(RSequence::from_gaps(&[1, 2, 1]).unwrap(), r(&[5, 4, 2, 1]));
    }

    #[test]
    fn alpha_beta_examples() {
        assert_eq!(alpha_perm(1, 1).unwrap(), p("231"));
        assert_eq!(alpha_perm(1, 2).unwrap(), p("2341"));
        assert_eq!(alpha_perm(2, 1).unwrap(), p("3421"));
        assert_eq!(beta_perm(1, 2, 0).unwrap(), p("312"));
        assert_eq!(beta_perm(0, 2, 1).unwrap(), p("231"));
        assert_eq!(beta_perm(1, 1, 1).unwrap(), p("321"));
        assert!(beta_perm(0, 2, 0).is_err());
        assert!(beta_perm(1, 0, 1).is_err());
        assert!(alpha_perm(0, 2).is_err());
    }

    #[test]
    fn gamma_omega_mu_examples() {
        assert_eq!(gamma_perm(0, 2, 0), p("213"));
        assert_eq!(gamma_perm(0, 2, 2), p("43521"));
        assert_eq!(gamma_perm(0, 0, 0), p("1"));
        assert_eq!(gamma_perm(0, 2, 1), p("3241"));
        assert_eq!(gamma_perm(0, 3, 0), p("3214"));
        assert_eq!(omega_perm(3).unwrap(), p("213"));
        assert_eq!(omega_perm(4).unwrap(), p("4213"));
        assert_eq!(omega_perm(6).unwrap(), p("654213"));
        assert!(omega_perm(2).is_err());
        assert_eq!(mu_perm(0, 3).unwrap(), p("123"));
        assert_eq!(mu_perm(1, 3).unwrap(), p("4123"));
        assert_eq!(mu_perm(2, 3).unwrap(), p("54123"));
        assert!(mu_perm(0, 0).is_err());
    }

    #[test]
    fn gamma_lengths() {
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    assert_eq!(gamma_perm(a, b, c).len() as u32, a + b + c + 1);
                }
            }
        }
    }

    #[test]
    fn extension_examples() {
        assert_eq!(extend(&p("1")), vec![p("12"), p("21")]);
        assert_eq!(extend(&p("e")), vec![p("1")]);
        let e1 = extension_set(&set(&["123", "132", "213"]), 1);
        let expected = set(&[
            "1234", "1243", "1423", "4123", "1324", "1342", "1432", "4132", "2134", "2143",
            "2413", "4213",
        ]);
        assert_eq!(e1, expected);
        let base = set(&["123", "132"]);
        assert_eq!(extension_set(&base, 0), base);
        assert_eq!(extension_set(&set(&["123"]), 1).len(), 4);
    }

    #[test]
    fn extension_cardinality_bound() {
        let sets = [set(&["123", "132", "213"]), set(&["12", "21"]), set(&["132", "2341"])];
        for base in &sets {
            let image = extension_set(base, 1);
            let bound: usize = base.iter().map(|a| a.len() + 1).sum();
            let mut all: Vec<Permutation> = base.iter().flat_map(extend).collect();
            let raw = all.len();
            all.sort();
            all.dedup();
            assert_eq!(raw, bound);
            assert!(image.len() <= bound);
            assert_eq!(image.len() == bound, all.len() == raw);
        }
    }

    #[test]
    fn restriction_examples() {
        let spec = RestrictionSpec::new(3, vec![2, 2]).unwrap();
        assert_eq!(restriction_set(&spec), set(&["123", "132", "213"]));
        let pell = RestrictionSpec::new(4, vec![2, 3]).unwrap();
        assert_eq!(
            restriction_set(&pell),
            set(&["1234", "1243", "1324", "1342", "1423", "1432", "2134", "2143", "2314", "2341"])
        );
        let one = RestrictionSpec::new(3, vec![2]).unwrap();
        assert_eq!(restriction_set(&one), set(&["123", "132", "213", "231"]));
    }

    #[test]
    fn restriction_single_entry_is_first_value_bound() {
        for k in 1..=5u32 {
            for a in 1..=k {
                let rs = restriction_set(&RestrictionSpec::new(k, vec![a]).unwrap());
                for sigma in all_permutations(k as usize) {
                    assert_eq!(rs.contains(&sigma), sigma.values()[0] <= a);
                }
            }
        }
    }

    #[test]
    fn restriction_validation() {
        assert!(RestrictionSpec::new(3, vec![]).is_err());
        assert!(RestrictionSpec::new(3, vec![4]).is_err());
        assert!(RestrictionSpec::new(3, vec![2, 2, 1]).is_err());
        assert!(RestrictionSpec::new(2, vec![1, 1, 1]).is_err());
        assert!(RestrictionSpec::new(4, vec![2, 3, 2]).is_ok());
    }

    #[test]
    fn every_132_213_avoider_is_a_unique_tau() {
        let r = set(&["132", "213"]);
        for n in 1..=10usize {
            let avoiders: BTreeSet<Permutation> = enumerate_avoiders(n, &r).into_iter().collect();
            // all compositions of n give distinct taus, all in the class
            let mut taus = BTreeSet::new();
            for mask in 0u32..(1 << (n - 1)) {
                let mut gaps = vec![1u32];
                for i in 0..n - 1 {
                    if mask & (1 << i) != 0 {
                        gaps.push(1);
                    } else {
                        *gaps.last_mut().unwrap() += 1;
                    }
                }
                let t = tau_perm(&RSequence::from_gaps(&gaps).unwrap());
                assert!(!contains(&t, &p("132")) && !contains(&t, &p("213")));
                assert!(taus.insert(t));
            }
            assert_eq!(taus, avoiders);
        }
    }

    #[test]
    fn family_spec_parsing() {
        let t: FamilySpec = "tau:10,9,7,6,5,2,1".parse().unwrap();
        assert_eq!(t.patterns().unwrap(), set(&["978652341"]));
        assert_eq!(
            "gamma:1,2,2".parse::<FamilySpec>().unwrap().patterns().unwrap(),
            [gamma_perm(1, 2, 2)].into_iter().collect()
        );
        assert_eq!(
            "omega:4".parse::<FamilySpec>().unwrap().patterns().unwrap(),
            set(&["4213"])
        );
        assert_eq!("mu:2,3".parse::<FamilySpec>().unwrap().patterns().unwrap(), set(&["54123"]));
        assert_eq!(
            "Rset:k=4,a=2;3".parse::<FamilySpec>().unwrap().patterns().unwrap().len(),
            10
        );
        let e2 = "E^1(123,132,213)".parse::<FamilySpec>().unwrap().patterns().unwrap();
        assert_eq!(e2.len(), 12);
        let nested = "E^1(tau:4,1)".parse::<FamilySpec>().unwrap().patterns().unwrap();
        assert_eq!(nested.len(), 4);
        assert!("gamma:1,2".parse::<FamilySpec>().is_err());
        assert!("omega:2".parse::<FamilySpec>().is_err());
        assert!("bogus:1".parse::<FamilySpec>().is_err());
        assert!("tau:4,2".parse::<FamilySpec>().is_err());
    }
}
