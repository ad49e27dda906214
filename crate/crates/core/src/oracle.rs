//! Exponential-cost ground truth: tangent-space smoothness, brute-force
//! maximal singular points, and the pattern-pair set `E_w`.
//!
//! Everything here enumerates the Bruhat interval below `w`, so it is only
//! usable for small `n`. Size caps are enforced through `bound`.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::bruhat::{bruhat_leq_unchecked, reflection_set, tilde_restrict};
use crate::error::{Error, Result};
use crate::maxsing::FamilyParams;
use crate::perm::{IndexSet, Permutation};

pub const DEFAULT_ORACLE_BOUND: usize = 8;

/// Tangent-space data at the fixed point `e_x` of `X_w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothnessReport {
    pub x: Permutation,
    pub w: Permutation,
    /// `#R(x, w)`
    pub r_count: usize,
    /// `l(w) - l(x)`
    pub codim: usize,
    pub smooth: bool,
}

fn check_bound(w: &Permutation, bound: usize) -> Result<()> {
    if w.len() > bound {
        return Err(Error::OracleBound { n: w.len(), bound });
    }
    Ok(())
}

/// `X_w` is smooth at `e_x` iff `#R(x, w) = l(w) - l(x)`.
pub fn is_smooth_point(x: &Permutation, w: &Permutation) -> Result<SmoothnessReport> {
    let r_count = reflection_set(x, w)?.len();
    let codim = w.length() - x.length();
    Ok(SmoothnessReport {
        x: x.clone(),
        w: w.clone(),
        r_count,
        codim,
        smooth: r_count == codim,
    })
}

fn pattern(v: &[usize]) -> Permutation {
    Permutation::new(v.to_vec()).expect("literal pattern")
}

/// Whether `w` avoids both 4231 and 3412.
pub fn is_smooth_variety(w: &Permutation) -> bool {
    !w.contains_pattern(&pattern(&[4, 2, 3, 1])) && !w.contains_pattern(&pattern(&[3, 4, 1, 2]))
}

/// The elements covered by `w`: `wt` with `l(wt) = l(w) - 1`.
pub fn lower_covers(w: &Permutation) -> Vec<Permutation> {
    let n = w.len();
    let mut out = Vec::new();
    for a in 1..=n {
        let wa = w.get(a);
        // Scan right keeping the largest value below w(a) seen so far; a cover
        // needs w(b) above every intermediate value that is below w(a).
        let mut ceiling = 0;
        for b in (a + 1)..=n {
            let wb = w.get(b);
            if wb < wa && wb > ceiling {
                out.push(w.swapped(a, b));
                ceiling = wb;
            }
        }
    }
    out
}

/// All `x <= w`, found by walking down through covers from `w`.
pub fn lower_interval(w: &Permutation) -> Vec<Permutation> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut stack = vec![w.clone()];
    seen.insert(w.clone());
    let mut out = Vec::new();
    while let Some(v) = stack.pop() {
        for c in lower_covers(&v) {
            if seen.insert(c.clone()) {
                stack.push(c);
            }
        }
        out.push(v);
    }
    out.sort();
    out
}

/// Bruhat-maximal members of `set`, sorted.
pub fn maximal_elements(set: impl IntoIterator<Item = Permutation>) -> Vec<Permutation> {
    let mut items: Vec<Permutation> = set.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    items.sort_by_key(|v| std::cmp::Reverse(v.length()));
    let mut kept: Vec<Permutation> = Vec::new();
    for v in items {
        // Anything strictly above v is longer, hence already considered; it is
        // below some kept element whenever it is itself in the set.
        if !kept.iter().any(|k| bruhat_leq_unchecked(&v, k)) {
            kept.push(v);
        }
    }
    kept.sort();
    kept
}

/// Maximal singular points of `X_w` by scanning the whole interval `[e, w]`.
pub fn maxsing_bruteforce(w: &Permutation, bound: usize) -> Result<Vec<Permutation>> {
    check_bound(w, bound)?;
    let lw = w.length();
    let mut singular = Vec::new();
    for x in lower_interval(w) {
        if reflection_set(&x, w)?.len() > lw - x.length() {
            singular.push(x);
        }
    }
    Ok(maximal_elements(singular))
}

/// `x` is a maximal singular point: singular, and every `xt` with `t ∈ R(x, w)`
/// is smooth.
pub fn is_msp(x: &Permutation, w: &Permutation) -> Result<bool> {
    let r = reflection_set(x, w)?;
    let lw = w.length();
    if r.len() <= lw - x.length() {
        return Ok(false);
    }
    for t in r.iter() {
        let y = x.swapped(t.a(), t.b());
        if reflection_set(&y, w)?.len() != lw - y.length() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The family `(x̃, w̃)` belongs to when `x` is a maximal singular point,
/// judged by the two-condition characterisation:
/// every `t ∈ R(x, w)` raises length by exactly one, and `(x̃, w̃)` is one
/// of the canonical pairs.
pub fn msp_family(x: &Permutation, w: &Permutation) -> Result<Option<FamilyParams>> {
    let r = reflection_set(x, w)?;
    if r.is_empty() {
        return Ok(None);
    }
    let lx = x.length();
    if r.iter().any(|t| x.swapped(t.a(), t.b()).length() != lx + 1) {
        return Ok(None);
    }
    let (xt, wt) = tilde_restrict(x, w)?;
    Ok(FamilyParams::match_pair(&xt, &wt))
}

pub fn is_msp_by_family(x: &Permutation, w: &Permutation) -> Result<bool> {
    Ok(msp_family(x, w)?.is_some())
}

/// The set `E_w` of pattern-pair witnesses.
///
/// `x ∈ E_w` when some occurrence of 3412 (resp. 4231) in `w` and some
/// occurrence of 1324 (resp. 2143) in `x` use the same four values, and
/// `w̲ <= x <= x̂ <= w`, where `w̲` replaces the pattern in `w` by 1324
/// (resp. 2143) and `x̂` replaces the pattern in `x` by 3412 (resp. 4231).
pub fn ew_set(w: &Permutation, bound: usize) -> Result<Vec<Permutation>> {
    check_bound(w, bound)?;
    let pairs = [
        (pattern(&[3, 4, 1, 2]), pattern(&[1, 3, 2, 4])),
        (pattern(&[4, 2, 3, 1]), pattern(&[2, 1, 4, 3])),
    ];
    let interval = lower_interval(w);
    let mut found = BTreeSet::new();
    for (upper, lower) in &pairs {
        for occ in w.pattern_occurrences(upper) {
            let w_under = w.unflatten(&occ, lower)?;
            let values: Vec<usize> = occ.iter().map(|i| w.get(i)).collect();
            for x in &interval {
                if found.contains(x) {
                    continue;
                }
                let inv = x.inverse();
                let positions = IndexSet::from_unsorted(values.iter().map(|&v| inv.get(v)).collect())?;
                if x.flatten(&positions)? != *lower {
                    continue;
                }
                let x_hat = x.unflatten(&positions, upper)?;
                if bruhat_leq_unchecked(&w_under, x)
                    && bruhat_leq_unchecked(x, &x_hat)
                    && bruhat_leq_unchecked(&x_hat, w)
                {
                    found.insert(x.clone());
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Bruhat-maximal elements of `E_w`.
pub fn ew_maximal(w: &Permutation, bound: usize) -> Result<Vec<Permutation>> {
    Ok(maximal_elements(ew_set(w, bound)?))
}

/// `x <= w` by transitive closure of covers; an independent check on
/// [`crate::bruhat::bruhat_leq`].
pub fn bruhat_leq_by_covers(x: &Permutation, w: &Permutation) -> bool {
    x.len() == w.len() && lower_interval(w).binary_search(x).is_ok()
}
