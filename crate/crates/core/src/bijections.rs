//! Tilings of a `1 x n` board and the constructive bijections between
//! constrained tilings and avoider classes.
//!
//! `perm_to_tiling` / `tiling_to_perm` are the basic pair on `S_n(132, 213)`:
//! a permutation there is a sequence of increasing runs of consecutive
//! values, each run lying entirely above the runs to its right, and the run
//! lengths read left to right form the tiling. The themed bijections fill
//! tiles in other orders and land in the classes listed on [`Theorem`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::{gamma_perm, mu_perm};
use crate::perm::{enumerate_avoiders, first_contained, PatternSet, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error(
        "{} contains {} at positions {positions:?}",
        pi.to_pattern_token(),
        pattern.to_pattern_token()
    )]
    ContainsPattern {
        pi: Permutation,
        pattern: Permutation,
        positions: Vec<usize>,
    },
    #[error("tiling {tiling} violates {rule}: {reason}")]
    RuleViolated {
        tiling: Tiling,
        rule: TilingConstraint,
        reason: String,
    },
    #[error("{} is not the image of any tiling under {theorem}", pi.to_pattern_token())]
    NoPreimage { pi: Permutation, theorem: Theorem },
    #[error("bad tiling {0:?}: expected comma-separated positive lengths")]
    ParseTiling(String),
    #[error("unknown theorem {0:?} (expected T44, T47, T410, T54 or T58)")]
    UnknownTheorem(String),
    #[error("{0} needs a parameter b >= 2")]
    MissingB(&'static str),
}

/// An ordered sequence of tile lengths. Ordering is lexicographic on the
/// lengths.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Tiling {
    tiles: Vec<u32>,
}

impl Tiling {
    pub fn new(tiles: Vec<u32>) -> Result<Self, BijectionError> {
        if tiles.contains(&0) {
            return Err(BijectionError::ParseTiling(format!("{tiles:?}")));
        }
        Ok(Tiling { tiles })
    }

    pub fn tiles(&self) -> &[u32] {
        &self.tiles
    }

    /// The board length.
    pub fn total(&self) -> usize {
        self.tiles.iter().map(|&t| t as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }
}

impl fmt::Display for Tiling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.tiles.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for Tiling {
    type Err = BijectionError;

    /// `1,2,1`, optionally bracketed; an empty string is the empty tiling.
    fn from_str(s: &str) -> Result<Self, BijectionError> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if body.is_empty() {
            return Ok(Tiling::default());
        }
        let tiles = body
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| BijectionError::ParseTiling(s.to_string()))?;
        Tiling::new(tiles).map_err(|_| BijectionError::ParseTiling(s.to_string()))
    }
}

/// Predicates on tilings used as bijection domains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TilingConstraint {
    None,
    /// Every tile has length at most `b`.
    MaxLen(u32),
    /// All tiles except the rightmost `s` have length at most `t`.
    LastSUnbounded { s: u32, t: u32 },
    /// All tiles except the leftmost `a` and the rightmost `c` have length at
    /// most `b - 1`.
    EndsFree { a: u32, c: u32, b: u32 },
    /// At most one tile is longer than `b`; if there is one, at most one tile
    /// follows it and that tile has length 1 or 2.
    LongTileRule(u32),
    /// Lengths 1 and 2 only, with at least one 2.
    DominoSquareWithDomino,
    /// The rightmost tile has length at least 2, the others at most `b`.
    RightmostGe2(u32),
}

impl TilingConstraint {
    /// `Ok` if `t` satisfies the rule, otherwise the reason it fails.
    pub fn check(&self, t: &Tiling) -> Result<(), String> {
        let tiles = t.tiles();
        let too_long = |range: &[u32], bound: u32, offset: usize| -> Result<(), String> {
            match range.iter().position(|&len| len > bound) {
                Some(i) => Err(format!(
                    "tile {} has length {} > {bound}",
                    i + offset + 1,
                    range[i]
                )),
                None => Ok(()),
            }
        };
        match *self {
            TilingConstraint::None => Ok(()),
            TilingConstraint::MaxLen(b) => too_long(tiles, b, 0),
            TilingConstraint::LastSUnbounded { s, t: bound } => {
                let cut = tiles.len().saturating_sub(s as usize);
                too_long(&tiles[..cut], bound, 0)
            }
            TilingConstraint::EndsFree { a, c, b } => {
                let lo = (a as usize).min(tiles.len());
                let hi = tiles.len().saturating_sub(c as usize).max(lo);
                too_long(&tiles[lo..hi], b.saturating_sub(1), lo)
            }
            TilingConstraint::LongTileRule(b) => {
                let long: Vec<usize> = (0..tiles.len()).filter(|&i| tiles[i] > b).collect();
                match long[..] {
                    [] => Ok(()),
                    [i] => match &tiles[i + 1..] {
                        [] | [1] | [2] => Ok(()),
                        [len] => Err(format!("the tile after the long tile has length {len}")),
                        rest => Err(format!("{} tiles follow the long tile", rest.len())),
                    },
                    _ => Err(format!("{} tiles are longer than {b}", long.len())),
                }
            }
            TilingConstraint::DominoSquareWithDomino => {
                too_long(tiles, 2, 0)?;
                if tiles.contains(&2) {
                    Ok(())
                } else {
                    Err("no tile of length 2".to_string())
                }
            }
            TilingConstraint::RightmostGe2(b) => match tiles.split_last() {
                None => Err("no rightmost tile".to_string()),
                Some((&last, _)) if last < 2 => Err("the rightmost tile has length 1".to_string()),
                Some((_, rest)) => too_long(rest, b, 0),
            },
        }
    }

    pub fn admits(&self, t: &Tiling) -> bool {
        self.check(t).is_ok()
    }

    fn require(&self, t: &Tiling) -> Result<(), BijectionError> {
        self.check(t).map_err(|reason| BijectionError::RuleViolated {
            tiling: t.clone(),
            rule: *self,
            reason,
        })
    }

    /// Longest tile worth trying during enumeration.
    fn length_cap(&self, n: usize) -> usize {
        match *self {
            TilingConstraint::MaxLen(b) => (b as usize).min(n),
            TilingConstraint::DominoSquareWithDomino => 2.min(n),
            _ => n,
        }
    }
}

impl fmt::Display for TilingConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TilingConstraint::None => write!(f, "none"),
            TilingConstraint::MaxLen(b) => write!(f, "max_len({b})"),
            TilingConstraint::LastSUnbounded { s, t } => write!(f, "last_s_unbounded({s}, {t})"),
            TilingConstraint::EndsFree { a, c, b } => write!(f, "ends_free({a}, {c}, {b})"),
            TilingConstraint::LongTileRule(b) => write!(f, "long_tile_rule({b})"),
            TilingConstraint::DominoSquareWithDomino => write!(f, "domino_square_with_domino"),
            TilingConstraint::RightmostGe2(b) => write!(f, "rightmost_ge2({b})"),
        }
    }
}

/// All tilings of a `1 x n` board satisfying `c`, in lexicographic order.
pub fn enumerate_tilings(n: usize, c: TilingConstraint) -> Vec<Tiling> {
    fn walk(
        left: usize,
        c: &TilingConstraint,
        cap: usize,
        tiles: &mut Vec<u32>,
        out: &mut Vec<Tiling>,
    ) {
        if left == 0 {
            let t = Tiling { tiles: tiles.clone() };
            if c.admits(&t) {
                out.push(t);
            }
            return;
        }
        for len in 1..=cap.min(left) {
            tiles.push(len as u32);
            walk(left - len, c, cap, tiles, out);
            tiles.pop();
        }
    }
    let mut out = Vec::new();
    walk(n, &c, c.length_cap(n), &mut Vec::new(), &mut out);
    out
}

/// The contents of each square of each tile, `None` for an empty square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filling {
    pub tiling: Tiling,
    pub cells: Vec<Vec<Option<u32>>>,
}

impl Filling {
    /// The filled values read left to right.
    pub fn permutation(&self) -> Permutation {
        let values: Vec<u32> = self.cells.iter().flatten().flatten().copied().collect();
        Permutation::new(values).expect("a filling uses each of 1..n once")
    }

    /// An ASCII box picture: `|` separates tiles, squares inside a tile are
    /// separated by spaces.
    pub fn picture(&self) -> String {
        let width = self
            .cells
            .iter()
            .flatten()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        let mut border = String::from("+");
        let mut middle = String::from("|");
        for tile in &self.cells {
            let squares: Vec<String> = tile
                .iter()
                .map(|c| match c {
                    Some(v) => format!(" {v:>width$} "),
                    None => " ".repeat(width + 2),
                })
                .collect();
            let inner = squares.join(" ");
            border.push_str(&"-".repeat(inner.len()));
            border.push('+');
            middle.push_str(&inner);
            middle.push('|');
        }
        format!("{border}\n{middle}\n{border}")
    }
}

/// Fills tiles right to left. `fill(len, next)` returns the contents of a
/// tile of length `len` whose values start at `next`; `next` then advances
/// by the number of values placed.
fn fill_right_to_left<F>(t: &Tiling, mut fill: F) -> Filling
where
    F: FnMut(usize, u32, u32) -> Vec<Option<u32>>,
{
    let mut cells = vec![Vec::new(); t.len()];
    let mut next = 1u32;
    for (i, &len) in t.tiles().iter().enumerate().rev() {
        let tile = fill(i, len, next);
        next += tile.iter().flatten().count() as u32;
        cells[i] = tile;
    }
    Filling {
        tiling: t.clone(),
        cells,
    }
}

fn ascending(len: u32, next: u32) -> Vec<Option<u32>> {
    (next..next + len).map(Some).collect()
}

/// `m-1, m-2, ..., 1, m` shifted to start at `next`.
fn dip_then_top(len: u32, next: u32) -> Vec<Option<u32>> {
    let base = next - 1;
    let mut v: Vec<Option<u32>> = (1..len).rev().map(|i| Some(base + i)).collect();
    v.push(Some(base + len));
    v
}

/// The map `G_n`: tiles filled right to left, each ascending with the
/// smallest available values.
pub fn tiling_filling(t: &Tiling) -> Filling {
    fill_right_to_left(t, |_, len, next| ascending(len, next))
}

pub fn tiling_to_perm(t: &Tiling) -> Permutation {
    tiling_filling(t).permutation()
}

fn basic_class() -> PatternSet {
    PatternSet::parse_list("132,213").expect("valid patterns")
}

fn reject_if_outside(pi: &Permutation, class: &PatternSet) -> Result<(), BijectionError> {
    match first_contained(pi, class) {
        Some((pattern, positions)) => Err(BijectionError::ContainsPattern {
            pi: pi.clone(),
            pattern,
            positions,
        }),
        None => Ok(()),
    }
}

/// Lengths of the maximal runs `v, v+1, v+2, ...` of `values`.
fn consecutive_runs(values: &[u32]) -> Vec<u32> {
    let mut runs = Vec::new();
    let mut len = 0u32;
    for (i, &v) in values.iter().enumerate() {
        if i > 0 && v == values[i - 1] + 1 {
            len += 1;
        } else {
            if len > 0 {
                runs.push(len);
            }
            len = 1;
        }
    }
    if len > 0 {
        runs.push(len);
    }
    runs
}

/// The map `F_n` on `S_n(132, 213)`.
pub fn perm_to_tiling(pi: &Permutation) -> Result<Tiling, BijectionError> {
    reject_if_outside(pi, &basic_class())?;
    Ok(Tiling {
        tiles: consecutive_runs(pi.values()),
    })
}

/// The five themed bijections, each between a constrained set of tilings
/// and an avoider class:
///
/// | theorem | board | tiling rule | class |
/// |---|---|---|---|
/// | `T44{b}` | `n` | `max_len(b)` | `S_n(123, 132, gamma_{0,b,0})` |
/// | `T47{b}` | `n+1` | `rightmost_ge2(b)` | `S_n(123, 132, gamma_{0,b,1})` |
/// | `T410{b}` | `n` | `long_tile_rule(b)` | `S_n(123, 132, gamma_{0,b,2})` |
/// | `T54` | `n+1` | `domino_square_with_domino` | `S_n(132, 213, 2341)` |
/// | `T58` | `n+1` | `domino_square_with_domino` | `S_n(132, 3241, mu_{0,3})` |
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    T44 { b: u32 },
    T47 { b: u32 },
    T410 { b: u32 },
    T54,
    T58,
}

impl Theorem {
    /// `name` is one of `T44`, `T47`, `T410`, `T54`, `T58`; the first three
    /// need `b >= 2`.
    pub fn parse(name: &str, b: Option<u32>) -> Result<Self, BijectionError> {
        let with_b = |label: &'static str| match b {
            Some(b) if b >= 2 => Ok(b),
            _ => Err(BijectionError::MissingB(label)),
        };
        match name.to_ascii_uppercase().as_str() {
            "T44" => Ok(Theorem::T44 { b: with_b("T44")? }),
            "T47" => Ok(Theorem::T47 { b: with_b("T47")? }),
            "T410" => Ok(Theorem::T410 { b: with_b("T410")? }),
            "T54" => Ok(Theorem::T54),
            "T58" => Ok(Theorem::T58),
            _ => Err(BijectionError::UnknownTheorem(name.to_string())),
        }
    }

    pub fn constraint(&self) -> TilingConstraint {
        match *self {
            Theorem::T44 { b } => TilingConstraint::MaxLen(b),
            Theorem::T47 { b } => TilingConstraint::RightmostGe2(b),
            Theorem::T410 { b } => TilingConstraint::LongTileRule(b),
            Theorem::T54 | Theorem::T58 => TilingConstraint::DominoSquareWithDomino,
        }
    }

    /// Board length used for permutations of length `n`.
    pub fn board_len(&self, n: usize) -> usize {
        match self {
            Theorem::T44 { .. } | Theorem::T410 { .. } => n,
            _ => n + 1,
        }
    }

    /// The avoider class the bijection lands in.
    pub fn class(&self) -> PatternSet {
        let mut r = PatternSet::new();
        let p = |s: &str| s.parse::<Permutation>().expect("valid pattern");
        match *self {
            Theorem::T44 { b } | Theorem::T47 { b } | Theorem::T410 { b } => {
                let c = match self {
                    Theorem::T44 { .. } => 0,
                    Theorem::T47 { .. } => 1,
                    _ => 2,
                };
                r.extend([p("123"), p("132"), gamma_perm(0, b, c)]);
            }
            Theorem::T54 => r.extend([p("132"), p("213"), p("2341")]),
            Theorem::T58 => r.extend([
                p("132"),
                p("3241"),
                mu_perm(0, 3).expect("mu_{0,3} exists"),
            ]),
        }
        r
    }

    /// The domain at permutation length `n`.
    pub fn domain(&self, n: usize) -> Vec<Tiling> {
        enumerate_tilings(self.board_len(n), self.constraint())
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theorem::T44 { b } => write!(f, "T44(b={b})"),
            Theorem::T47 { b } => write!(f, "T47(b={b})"),
            Theorem::T410 { b } => write!(f, "T410(b={b})"),
            Theorem::T54 => write!(f, "T54"),
            Theorem::T58 => write!(f, "T58"),
        }
    }
}

/// Index of the rightmost tile of length 2.
fn rightmost_domino(t: &Tiling) -> usize {
    t.tiles()
        .iter()
        .rposition(|&len| len == 2)
        .expect("domain has a tile of length 2")
}

/// The filled board for `t` under `theorem`.
pub fn themed_filling(theorem: Theorem, t: &Tiling) -> Result<Filling, BijectionError> {
    theorem.constraint().require(t)?;
    let last = t.len() - 1;
    Ok(match theorem {
        Theorem::T44 { .. } | Theorem::T410 { .. } => {
            fill_right_to_left(t, |_, len, next| dip_then_top(len, next))
        }
        Theorem::T47 { .. } => fill_right_to_left(t, |i, len, next| {
            if i == last {
                // m-2, ..., 1, m-1 and an empty square
                let mut v = dip_then_top(len - 1, next);
                v.push(None);
                v
            } else {
                dip_then_top(len, next)
            }
        }),
        Theorem::T54 => {
            let d = rightmost_domino(t);
            fill_right_to_left(t, |i, len, next| {
                if i > d {
                    // squares after the domino: 2, 3, ... left to right
                    vec![Some((i - d) as u32 + 1)]
                } else if i == d {
                    vec![Some(1), None]
                } else {
                    ascending(len, next)
                }
            })
        }
        Theorem::T58 => {
            let d = rightmost_domino(t);
            let m = (last - d) as u32;
            fill_right_to_left(t, |i, len, next| {
                if m == 0 && i == d {
                    vec![Some(1), None]
                } else if i == d {
                    vec![Some(m), None]
                } else if i > d {
                    // m-1, ..., 1 then m+1 on the last square
                    let k = (i - d) as u32;
                    vec![Some(if i == last { m + 1 } else { m - k })]
                } else {
                    ascending(len, next)
                }
            })
        }
    })
}

pub fn themed_bijection(theorem: Theorem, t: &Tiling) -> Result<Permutation, BijectionError> {
    Ok(themed_filling(theorem, t)?.permutation())
}

/// Reads tiles filled `m-1, ..., 1, m` off the right end of `values`, whose
/// smallest entry is `offset + 1`.
fn decode_dips(values: &[u32], mut offset: u32, out: &mut Vec<u32>) -> Option<()> {
    let mut end = values.len();
    while end > 0 {
        let m = values[end - 1].checked_sub(offset)?;
        if m == 0 || m as usize > end {
            return None;
        }
        out.push(m);
        end -= m as usize;
        offset += m;
    }
    Some(())
}

/// A candidate preimage of `pi`; the caller checks it by mapping forward.
fn decode(theorem: Theorem, pi: &[u32]) -> Option<Tiling> {
    let n = pi.len();
    let mut rev = Vec::new();
    match theorem {
        Theorem::T44 { .. } | Theorem::T410 { .. } => decode_dips(pi, 0, &mut rev)?,
        Theorem::T47 { .. } => {
            let used = *pi.last()? as usize;
            if used > n {
                return None;
            }
            rev.push(used as u32 + 1);
            decode_dips(&pi[..n - used], used as u32, &mut rev)?;
        }
        Theorem::T54 => {
            let one = pi.iter().position(|&v| v == 1)?;
            rev.extend(std::iter::repeat_n(1, n - one - 1));
            rev.push(2);
            rev.extend(consecutive_runs(&pi[..one]).into_iter().rev());
        }
        Theorem::T58 => {
            let last = *pi.last()? as usize;
            let head = if last == 1 {
                rev.push(2);
                n - 1
            } else {
                // the suffix m, m-1, ..., 1, m+1 covers m + 1 entries
                let m = last - 1;
                if m + 1 > n {
                    return None;
                }
                rev.extend(std::iter::repeat_n(1, m));
                rev.push(2);
                n - m - 1
            };
            rev.extend(consecutive_runs(&pi[..head]).into_iter().rev());
        }
    }
    rev.reverse();
    Some(Tiling { tiles: rev })
}

/// The unique tiling mapped to `pi`. Permutations outside the class are
/// rejected with a pattern occurrence as witness.
pub fn themed_bijection_inverse(theorem: Theorem, pi: &Permutation) -> Result<Tiling, BijectionError> {
    reject_if_outside(pi, &theorem.class())?;
    let no_preimage = || BijectionError::NoPreimage {
        pi: pi.clone(),
        theorem,
    };
    let t = decode(theorem, pi.values()).ok_or_else(no_preimage)?;
    match themed_bijection(theorem, &t) {
        Ok(image) if image == *pi => Ok(t),
        _ => Err(no_preimage()),
    }
}

/// Exhaustive check at permutation length `n` of the basic pair (`None`) or
/// a themed bijection: every domain tiling maps back to itself and the
/// images are exactly the class. Returns the number of objects.
pub fn check_bijection(theorem: Option<Theorem>, n: usize) -> Result<usize, String> {
    let (domain, class) = match theorem {
        None => (enumerate_tilings(n, TilingConstraint::None), basic_class()),
        Some(t) => (t.domain(n), t.class()),
    };
    let mut image = std::collections::BTreeSet::new();
    for t in &domain {
        let (pi, back) = match theorem {
            None => {
                let pi = tiling_to_perm(t);
                let back = perm_to_tiling(&pi).map_err(|e| e.to_string())?;
                (pi, back)
            }
            Some(th) => {
                let pi = themed_bijection(th, t).map_err(|e| e.to_string())?;
                let back = themed_bijection_inverse(th, &pi).map_err(|e| e.to_string())?;
                (pi, back)
            }
        };
        if &back != t {
            return Err(format!("{t} maps to {pi}, which maps back to {back}"));
        }
        if !image.insert(pi.clone()) {
            return Err(format!("{pi} is hit twice"));
        }
    }
    let class: std::collections::BTreeSet<_> = enumerate_avoiders(n, &class).into_iter().collect();
    if let Some(missed) = class.difference(&image).next() {
        return Err(format!("{missed} is in the class but not in the image"));
    }
    if let Some(extra) = image.difference(&class).next() {
        return Err(format!("{extra} is in the image but not in the class"));
    }
    Ok(domain.len())
}
