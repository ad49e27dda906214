//! Polynomial-time enumeration of the irreducible components of the singular
//! locus of `X_w`.
//!
//! Every component is `X_x` with `x = w ∘ (α_1, …, α_m, β_k, …, β_1)`. The
//! sequences are recovered from a four-point frame in `w` (an occurrence of
//! 4231 or 3412) by growing decreasing chains greedily. Each candidate is then
//! checked exactly by [`verify_component`].

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{flatten_values, IndexSet, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    TwoRuns,
    ThreeRuns,
}

/// Parameters of the canonical pairs `(x_{k,m}, w_{k,m})` and
/// `(x_{k,l,m}, w_{k,l,m})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyParams {
    pub variant: Variant,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    pub m: usize,
}

impl FamilyParams {
    pub fn two_runs(k: usize, m: usize) -> Result<Self> {
        let p = FamilyParams {
            variant: Variant::TwoRuns,
            k,
            l: None,
            m,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn three_runs(k: usize, l: usize, m: usize) -> Result<Self> {
        let p = FamilyParams {
            variant: Variant::ThreeRuns,
            k,
            l: Some(l),
            m,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match (self.variant, self.l) {
            (Variant::TwoRuns, None) => self.k >= 2 && self.m >= 2,
            (Variant::ThreeRuns, Some(l)) => {
                (l == 2 && self.k >= 1 && self.m >= 1) || (self.k == 1 && self.m == 1 && l >= 2)
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidFamily(self.to_string()))
        }
    }

    /// Size of the permutations in the pair.
    pub fn size(&self) -> usize {
        self.k + self.l.unwrap_or(0) + self.m
    }

    /// Lengths of the decreasing runs of the canonical `x`.
    fn runs(&self) -> Vec<usize> {
        match self.l {
            None => vec![self.k, self.m],
            Some(l) => vec![self.k, l, self.m],
        }
    }

    /// `R(x, w)` of the canonical pair: every position of one run of `x`
    /// against every position of the next run.
    pub fn reflection_pairs(&self) -> Vec<(usize, usize)> {
        let runs = self.runs();
        let mut starts = vec![1];
        for r in &runs {
            starts.push(starts.last().unwrap() + r);
        }
        let mut out = Vec::new();
        for j in 0..runs.len() - 1 {
            for a in starts[j]..starts[j + 1] {
                for b in starts[j + 1]..starts[j + 2] {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Match `(x̃, w̃)` against every family of the right size.
    pub fn match_pair(x: &Permutation, w: &Permutation) -> Option<FamilyParams> {
        let n = x.len();
        if w.len() != n {
            return None;
        }
        let mut candidates = Vec::new();
        for k in 2..n.saturating_sub(1) {
            candidates.push(FamilyParams {
                variant: Variant::TwoRuns,
                k,
                l: None,
                m: n - k,
            });
        }
        for k in 1..n.saturating_sub(2) {
            candidates.push(FamilyParams {
                variant: Variant::ThreeRuns,
                k,
                l: Some(2),
                m: n - k - 2,
            });
        }
        if n >= 5 {
            candidates.push(FamilyParams {
                variant: Variant::ThreeRuns,
                k: 1,
                l: Some(n - 2),
                m: 1,
            });
        }
        candidates.into_iter().find(|p| {
            p.validate().is_ok() && {
                let (cx, cw) = canonical_entries(p);
                cx == x.entries() && cw == w.entries()
            }
        })
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.l {
            None => write!(f, "TwoRuns(k={}, m={})", self.k, self.m),
            Some(l) => write!(f, "ThreeRuns(k={}, l={}, m={})", self.k, l, self.m),
        }
    }
}

fn canonical_entries(p: &FamilyParams) -> (Vec<usize>, Vec<usize>) {
    let (k, m) = (p.k, p.m);
    match p.l {
        None => {
            let mut x: Vec<usize> = (1..=k).rev().collect();
            x.extend((k + 1..=k + m).rev());
            let mut w = vec![k + m];
            w.extend((2..=k).rev());
            w.extend((k + 1..k + m).rev());
            w.push(1);
            (x, w)
        }
        Some(l) => {
            let mut x: Vec<usize> = (1..=k).rev().collect();
            x.extend((k + 1..=k + l).rev());
            x.extend((k + l + 1..=k + l + m).rev());
            let mut w = vec![k + l];
            w.extend((2..=k).rev());
            w.push(k + l + m);
            w.extend((k + 2..k + l).rev());
            w.push(1);
            w.extend((k + l + 1..k + l + m).rev());
            w.push(k + 1);
            (x, w)
        }
    }
}

/// The canonical pair `(x, w)` for `p`.
pub fn canonical_family(p: &FamilyParams) -> Result<(Permutation, Permutation)> {
    p.validate()?;
    let (x, w) = canonical_entries(p);
    Ok((Permutation::new(x)?, Permutation::new(w)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseTag {
    C4231,
    C3412,
    C45312,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::C4231 => "4231",
            CaseTag::C3412 => "3412",
            CaseTag::C45312 => "45312",
        })
    }
}

/// One irreducible component, with the sequences that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    pub case: CaseTag,
    pub alphas: Vec<usize>,
    pub betas: Vec<usize>,
    pub x: Permutation,
}

impl Component {
    /// Builds the component and its `x` from the sequences; no validity check.
    pub fn new(w: &Permutation, case: CaseTag, alphas: Vec<usize>, betas: Vec<usize>) -> Result<Self> {
        let mut cycle = alphas.clone();
        cycle.extend(betas.iter().rev());
        let x = w.apply_cycle(&cycle)?;
        Ok(Component { case, alphas, betas, x })
    }
}

/// Counts of the points of `mat(w)` in open boxes, in O(1) per query.
pub(crate) struct PointCounts {
    n: usize,
    // prefix[p][v] = #{i <= p : w(i) <= v}
    prefix: Vec<u32>,
}

impl PointCounts {
    pub(crate) fn new(w: &Permutation) -> Self {
        let n = w.len();
        let mut prefix = vec![0u32; (n + 1) * (n + 1)];
        for p in 1..=n {
            let wp = w.get(p);
            for v in 0..=n {
                prefix[p * (n + 1) + v] = prefix[(p - 1) * (n + 1) + v] + u32::from(v >= wp);
            }
        }
        PointCounts { n, prefix }
    }

    fn at(&self, p: usize, v: usize) -> u32 {
        self.prefix[p * (self.n + 1) + v]
    }

    /// Points with row strictly between `r1` and `r2` and value strictly
    /// between `v1` and `v2`.
    pub(crate) fn open_box(&self, r1: usize, r2: usize, v1: usize, v2: usize) -> u32 {
        if r2 <= r1 + 1 || v2 <= v1 + 1 {
            return 0;
        }
        let (p0, p1) = (r1, r2 - 1);
        let (q0, q1) = (v1, v2 - 1);
        self.at(p1, q1) + self.at(p0, q0) - self.at(p0, q1) - self.at(p1, q0)
    }
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedComponent(msg.into())
}

fn check_sequence(w: &Permutation, seq: &[usize], name: &str) -> Result<()> {
    if seq.is_empty() {
        return Err(malformed(format!("{name} is empty")));
    }
    for &i in seq {
        if i == 0 || i > w.len() {
            return Err(Error::OutOfRange { index: i, n: w.len() });
        }
    }
    if seq.windows(2).any(|p| p[0] >= p[1]) {
        return Err(malformed(format!("{name} is not strictly increasing")));
    }
    Ok(())
}

fn decreasing_in(w: &Permutation, seq: &[usize]) -> bool {
    seq.windows(2).all(|p| w.get(p[0]) > w.get(p[1]))
}

/// Points of `w` strictly inside rows `(r1, r2)` and values `(v1, v2)`.
fn region_points(w: &Permutation, r1: usize, r2: usize, v1: usize, v2: usize) -> Vec<usize> {
    ((r1 + 1)..r2).filter(|&i| (v1 + 1..v2).contains(&w.get(i))).collect()
}

/// Checks the sequence chain and inequalities of the case; returns the
/// family parameters and the support of the component.
fn structure(w: &Permutation, case: CaseTag, a: &[usize], b: &[usize]) -> Option<(FamilyParams, Vec<usize>)> {
    let (m, k) = (a.len(), b.len());
    if !decreasing_in(w, a) || !decreasing_in(w, b) {
        return None;
    }
    let wv = |i: usize| w.get(i);
    let mut support: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
    let params = match case {
        CaseTag::C4231 => {
            let ok =
                k >= 2 && m >= 2 && a[0] < b[0] && b[k - 2] < a[1] && a[m - 1] < b[k - 1] && wv(a[m - 1]) > wv(b[0]);
            if !ok {
                return None;
            }
            FamilyParams::two_runs(k, m).ok()?
        }
        CaseTag::C3412 => {
            let ok = k >= 2
                && m >= 2
                && b[k - 2] < a[0]
                && a[0] < b[k - 1]
                && b[k - 1] < a[1]
                && wv(a[m - 2]) > wv(b[0])
                && wv(b[0]) > wv(a[m - 1])
                && wv(a[m - 1]) > wv(b[1]);
            if !ok {
                return None;
            }
            FamilyParams::three_runs(k - 1, 2, m - 1).ok()?
        }
        CaseTag::C45312 => {
            let ok = k == 2
                && m == 2
                && b[0] < a[0]
                && a[0] < b[1]
                && b[1] < a[1]
                && wv(a[0]) > wv(b[0])
                && wv(b[0]) > wv(a[1])
                && wv(a[1]) > wv(b[1]);
            if !ok {
                return None;
            }
            let region = region_points(w, a[0], b[1], wv(a[1]), wv(b[0]));
            if region.is_empty() || !decreasing_in(w, &region) {
                return None;
            }
            let l = 2 + region.len();
            support.extend(region);
            FamilyParams::three_runs(1, l, 1).ok()?
        }
    };
    support.sort_unstable();
    if support.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((params, support))
}

/// Whether `c` witnesses an irreducible component of the singular locus of
/// `X_w`.
///
/// With `C` the support of the component, `x` must agree with `w` off `C`,
/// the flattenings of `x` and `w` to `C` must be the canonical pair, every
/// position off `C` must lie outside `Δ(x, w)`, and no other point of
/// `mat(w)` may sit in the open box spanned by a reflection of `R(x, w)`.
pub fn verify_component(w: &Permutation, c: &Component) -> Result<bool> {
    verify_with(w, c, &PointCounts::new(w))
}

fn verify_with(w: &Permutation, c: &Component, counts: &PointCounts) -> Result<bool> {
    check_sequence(w, &c.alphas, "alphas")?;
    check_sequence(w, &c.betas, "betas")?;
    if c.x.len() != w.len() {
        return Err(Error::SizeMismatch {
            left: c.x.len(),
            right: w.len(),
        });
    }
    if c.alphas.iter().any(|i| c.betas.contains(i)) {
        return Err(malformed("alphas and betas overlap"));
    }
    let Some((params, support)) = structure(w, c.case, &c.alphas, &c.betas) else {
        return Ok(false);
    };
    let x = &c.x;
    let in_support = |i: usize| support.binary_search(&i).is_ok();
    if (1..=w.len()).any(|i| !in_support(i) && x.get(i) != w.get(i)) {
        return Ok(false);
    }

    // The open box of each reflection must hold no point outside the support.
    // Support points inside are exactly those of the canonical pair, which has
    // none, so a plain count suffices.
    for (ia, ib) in params.reflection_pairs() {
        let (pa, pb) = (support[ia - 1], support[ib - 1]);
        if counts.open_box(pa, pb, x.get(pa), x.get(pb)) != 0 {
            return Ok(false);
        }
    }

    let (cx, cw) = canonical_entries(&params);
    let xs: Vec<usize> = support.iter().map(|&i| x.get(i)).collect();
    let ws: Vec<usize> = support.iter().map(|&i| w.get(i)).collect();
    if flatten_values(&xs) != cx || flatten_values(&ws) != cw {
        return Ok(false);
    }

    // Positions off the support must be fixed points outside Δ(x, w).
    let d = |p: usize, q: usize| -> i64 {
        support
            .iter()
            .take_while(|&&s| s <= p)
            .map(|&s| i64::from(w.get(s) >= q) - i64::from(x.get(s) >= q))
            .sum()
    };
    for i in 1..=w.len() {
        if !in_support(i) {
            let v = w.get(i);
            if d(i - 1, v) != 0 || d(i, v + 1) != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Calls `f(a, b, c, d)` for each occurrence at positions `a < b < c < d`
/// of 4231 (`four_two_three_one`) or 3412.
fn for_each_frame(w: &Permutation, four_two_three_one: bool, mut f: impl FnMut(usize, usize, usize, usize)) {
    let n = w.len();
    let v = |i: usize| w.get(i);
    for a in 1..=n {
        for b in (a + 1)..=n {
            if four_two_three_one {
                if v(b) >= v(a) {
                    continue;
                }
                for c in (b + 1)..=n {
                    if v(c) <= v(b) || v(c) >= v(a) {
                        continue;
                    }
                    for d in (c + 1)..=n {
                        if v(d) < v(b) {
                            f(a, b, c, d);
                        }
                    }
                }
            } else {
                if v(b) <= v(a) {
                    continue;
                }
                for c in (b + 1)..=n {
                    if v(c) >= v(a) {
                        continue;
                    }
                    for d in (c + 1)..=n {
                        if v(d) > v(c) && v(d) < v(a) {
                            f(a, b, c, d);
                        }
                    }
                }
            }
        }
    }
}

/// Decreasing chain from `start` to `end` (exclusive): repeatedly take the
/// first later point whose value lies between `w(end)` and the current value.
fn forward_chain(w: &Permutation, start: usize, end: usize) -> Vec<usize> {
    let floor = w.get(end);
    let mut cur = w.get(start);
    let mut chain = vec![start];
    for i in (start + 1)..end {
        let v = w.get(i);
        if v > floor && v < cur {
            chain.push(i);
            cur = v;
        }
    }
    chain.push(end);
    chain
}

/// Mirror of [`forward_chain`], grown leftward from `end` towards `start`.
fn backward_chain(w: &Permutation, start: usize, end: usize) -> Vec<usize> {
    let ceiling = w.get(start);
    let mut cur = w.get(end);
    let mut chain = vec![end];
    for i in ((start + 1)..end).rev() {
        let v = w.get(i);
        if v < ceiling && v > cur {
            chain.push(i);
            cur = v;
        }
    }
    chain.push(start);
    chain.reverse();
    chain
}

/// Components of the singular locus of `X_w`, one witness per distinct `x`,
/// sorted by `x`.
pub fn enumerate_components(w: &Permutation) -> Vec<Component> {
    let counts = PointCounts::new(w);
    let v = |i: usize| w.get(i);
    let mut found: BTreeMap<Permutation, Component> = BTreeMap::new();
    // Distinct frames give distinct (α, β), since the frame points are the
    // chain endpoints; only the resulting x can repeat.
    let mut consider = |case: CaseTag, alphas: Vec<usize>, betas: Vec<usize>| {
        let Ok(c) = Component::new(w, case, alphas, betas) else {
            return;
        };
        if found.contains_key(&c.x) {
            return;
        }
        if let Ok(true) = verify_with(w, &c, &counts) {
            found.insert(c.x.clone(), c);
        }
    };

    // 4231 frames: (α_1, β_1, α_m, β_k). Besides the central box, a point
    // between α_1 and β_1 above w(β_1) would become α_2 too early, and one
    // between α_m and β_k below w(α_m) would become β_{k-1} too late.
    for_each_frame(w, true, |a1, b1, am, bk| {
        if counts.open_box(a1, bk, v(b1), v(am)) != 0
            || counts.open_box(a1, b1, v(b1), v(a1)) != 0
            || counts.open_box(am, bk, v(bk), v(am)) != 0
        {
            return;
        }
        let alphas = forward_chain(w, a1, am);
        let betas = backward_chain(w, b1, bk);
        if structure(w, CaseTag::C4231, &alphas, &betas).is_some() {
            consider(CaseTag::C4231, alphas, betas);
        }
    });

    // 3412 frames: (β_1, α_1, β_k, α_m). Between α_1 and β_k only the
    // region A points of the 45312 case may sit in the value range of the
    // frame.
    for_each_frame(w, false, |b1, a1, bk, am| {
        let region = counts.open_box(a1, bk, v(am), v(b1));
        if region == 0 {
            if counts.open_box(a1, bk, v(bk), v(a1)) != 0 {
                return;
            }
            let alphas = forward_chain(w, a1, am);
            let betas = backward_chain(w, b1, bk);
            if structure(w, CaseTag::C3412, &alphas, &betas).is_some() {
                consider(CaseTag::C3412, alphas, betas);
            }
        } else {
            consider(CaseTag::C45312, vec![a1, am], vec![b1, bk]);
        }
    });

    found.into_values().collect()
}

/// `maxsing(X_w)`, sorted.
pub fn maxsing(w: &Permutation) -> Vec<Permutation> {
    enumerate_components(w).into_iter().map(|c| c.x).collect()
}

/// Pairs (left pattern, right pattern) whose right occurrence is discarded
/// when it sits inside an occurrence of the left pattern.
const USELESS: [(&[usize], &[usize]); 13] = [
    (&[5, 2, 3, 4, 1], &[5, 2, 4, 1]),
    (&[5, 2, 4, 3, 1], &[5, 2, 4, 1]),
    (&[5, 3, 2, 4, 1], &[5, 2, 4, 1]),
    (&[5, 3, 4, 2, 1], &[5, 3, 4, 1]),
    (&[5, 4, 2, 3, 1], &[5, 2, 3, 1]),
    (&[3, 5, 4, 1, 2], &[3, 5, 1, 2]),
    (&[4, 3, 5, 1, 2], &[4, 5, 1, 2]),
    (&[4, 5, 1, 3, 2], &[4, 5, 1, 2]),
    (&[4, 5, 2, 1, 3], &[4, 5, 1, 3]),
    (&[6, 3, 5, 2, 4, 1], &[6, 3, 4, 1]),
    (&[5, 6, 3, 4, 1, 2], &[5, 6, 1, 2]),
    (&[5, 2, 6, 4, 1, 3], &[5, 6, 1, 3]),
    (&[4, 6, 3, 1, 5, 2], &[4, 6, 1, 2]),
];

/// Number of 4231 and 3412 occurrences in `w` left after discarding the
/// useless ones.
pub fn useful_pattern_count(w: &Permutation) -> usize {
    useful_patterns(w).len()
}

/// The useful 4231 and 3412 occurrences of `w`, as sorted position sets.
pub fn useful_patterns(w: &Permutation) -> Vec<IndexSet> {
    let mut useless: HashSet<Vec<usize>> = HashSet::new();
    for (left, right) in USELESS {
        let left_p = Permutation::from_raw(left.to_vec());
        let picks: Vec<usize> = right
            .iter()
            .map(|r| left.iter().position(|l| l == r).expect("letter of left pattern"))
            .collect();
        for occ in w.pattern_occurrences(&left_p) {
            let pos = occ.positions();
            useless.insert(picks.iter().map(|&j| pos[j]).collect());
        }
    }
    let mut out = Vec::new();
    for pattern in [[4, 2, 3, 1], [3, 4, 1, 2]] {
        for occ in w.pattern_occurrences(&Permutation::from_raw(pattern.to_vec())) {
            if !useless.contains(occ.positions()) {
                out.push(occ);
            }
        }
    }
    out.sort_by(|a, b| a.positions().cmp(b.positions()));
    out
}
