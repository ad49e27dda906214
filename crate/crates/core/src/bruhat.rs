//! Rank and difference functions, Bruhat comparison, the up-edge set
//! `R(x, w)`, and the injection `φ_t` between up-edge sets.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{IndexSet, Permutation, Transposition};

fn same_size(x: &Permutation, w: &Permutation) -> Result<()> {
    if x.len() != w.len() {
        return Err(Error::SizeMismatch {
            left: x.len(),
            right: w.len(),
        });
    }
    Ok(())
}

fn not_below(x: &Permutation, w: &Permutation) -> Error {
    Error::NotBelow {
        x: x.to_string(),
        w: w.to_string(),
    }
}

/// `r_w(p, q) = #{i <= p : w(i) >= q}` for `0 <= p <= n`, `1 <= q <= n + 1`.
pub fn rank(w: &Permutation, p: usize, q: usize) -> Result<usize> {
    let n = w.len();
    if p > n {
        return Err(Error::OutOfRange { index: p, n });
    }
    if q == 0 || q > n + 1 {
        return Err(Error::OutOfRange { index: q, n: n + 1 });
    }
    Ok((1..=p).filter(|&i| w.get(i) >= q).count())
}

/// Dual rank `r'_w(p, q) = #{i >= p : w(i) <= q}` for `1 <= p <= n + 1`, `0 <= q <= n`.
pub fn dual_rank(w: &Permutation, p: usize, q: usize) -> Result<usize> {
    let n = w.len();
    if p == 0 || p > n + 1 {
        return Err(Error::OutOfRange { index: p, n: n + 1 });
    }
    if q > n {
        return Err(Error::OutOfRange { index: q, n });
    }
    Ok((p..=n).filter(|&i| w.get(i) <= q).count())
}

/// The difference function `d_{x,w} = r_w - r_x` tabulated on
/// `0 <= p <= n`, `0 <= q <= n + 1`.
///
/// Row `p = 0` and column `q = n + 1` are identically zero, as is column
/// `q <= 1` (both ranks equal `p` there).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffTable {
    n: usize,
    x: Permutation,
    w: Permutation,
    d: Vec<i32>,
}

impl DiffTable {
    pub fn new(x: &Permutation, w: &Permutation) -> Result<Self> {
        same_size(x, w)?;
        let n = w.len();
        let width = n + 2;
        let mut d = vec![0i32; (n + 1) * width];
        for p in 1..=n {
            let (wv, xv) = (w.get(p), x.get(p));
            for q in 0..width {
                let mut v = d[(p - 1) * width + q];
                if wv >= q {
                    v += 1;
                }
                if xv >= q {
                    v -= 1;
                }
                d[p * width + q] = v;
            }
        }
        Ok(DiffTable {
            n,
            x: x.clone(),
            w: w.clone(),
            d,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x(&self) -> &Permutation {
        &self.x
    }

    pub fn w(&self) -> &Permutation {
        &self.w
    }

    /// `d_{x,w}(p, q)`. Panics unless `p <= n` and `q <= n + 1`.
    #[inline]
    pub fn get(&self, p: usize, q: usize) -> i32 {
        assert!(p <= self.n && q <= self.n + 1, "({p}, {q}) outside the table");
        self.d[p * (self.n + 2) + q]
    }

    /// Dual difference `d'_{x,w}(p, q) = r'_w(p, q) - r'_x(p, q)`, computed on demand.
    pub fn dual(&self, p: usize, q: usize) -> Result<i32> {
        Ok(dual_rank(&self.w, p, q)? as i32 - dual_rank(&self.x, p, q)? as i32)
    }

    pub fn min(&self) -> i32 {
        self.d.iter().copied().min().unwrap_or(0)
    }

    /// Minimum over the inclusive rectangle, `None` when it is empty.
    pub fn region_min(&self, rows: (usize, usize), cols: (usize, usize)) -> Option<i32> {
        let mut best: Option<i32> = None;
        for p in rows.0..=rows.1.min(self.n) {
            for q in cols.0..=cols.1.min(self.n + 1) {
                let v = self.get(p, q);
                best = Some(best.map_or(v, |b| b.min(v)));
            }
        }
        best
    }

    /// Whether `t_{a,b}` with `x(a) < x(b)` has its region entirely shaded.
    ///
    /// Passing from `x` to `x·t_{a,b}` lowers `d` by one exactly on the cells
    /// `a <= p < b`, `x(a) < q <= x(b)`, so those cells must carry `d >= 1`.
    fn shaded(&self, t: Transposition) -> bool {
        let (a, b) = (t.a(), t.b());
        let (xa, xb) = (self.x.get(a), self.x.get(b));
        xa < xb && self.region_min((a, b - 1), (xa + 1, xb)).is_none_or(|m| m >= 1)
    }
}

/// Bruhat comparison `x <= w`, i.e. `d_{x,w} >= 0` everywhere.
pub fn bruhat_leq(x: &Permutation, w: &Permutation) -> Result<bool> {
    same_size(x, w)?;
    Ok(bruhat_leq_unchecked(x, w))
}

/// `x <= w` for equal-size inputs; O(n^2) with no table allocation.
pub(crate) fn bruhat_leq_unchecked(x: &Permutation, w: &Permutation) -> bool {
    let n = w.len();
    // diff[q] = d_{x,w}(p, q) for the current p, q in 1..=n.
    let mut diff = vec![0i32; n + 2];
    for p in 1..=n {
        let (wv, xv) = (w.get(p), x.get(p));
        if wv == xv {
            continue;
        }
        if wv > xv {
            for v in diff.iter_mut().take(wv + 1).skip(xv + 1) {
                *v += 1;
            }
        } else {
            for v in diff.iter_mut().take(xv + 1).skip(wv + 1) {
                *v -= 1;
                if *v < 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// A rectangle `[rows.0, rows.1] × [cols.0, cols.1]` of matrix cells
/// (rows are positions, columns are values).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Region {
    pub rows: (usize, usize),
    pub cols: (usize, usize),
}

impl Region {
    pub fn new(rows: (usize, usize), cols: (usize, usize)) -> Result<Self> {
        if rows.0 == 0 || cols.0 == 0 || rows.0 > rows.1 || cols.0 > cols.1 {
            return Err(Error::InvalidRegion(rows.0, rows.1, cols.0, cols.1));
        }
        Ok(Region { rows, cols })
    }

    /// The single cell `pt_x(c) = (c, x(c))`.
    pub fn point(x: &Permutation, c: usize) -> Result<Self> {
        if c == 0 || c > x.len() {
            return Err(Error::OutOfRange { index: c, n: x.len() });
        }
        Region::new((c, c), (x.get(c), x.get(c)))
    }

    pub fn contains(&self, p: usize, q: usize) -> bool {
        (self.rows.0..=self.rows.1).contains(&p) && (self.cols.0..=self.cols.1).contains(&q)
    }
}

/// `Θ_{x,w}(R)`: the number of 1's of `mat(w)` in `R` minus those of `mat(x)`.
pub fn region_signed_count(x: &Permutation, w: &Permutation, region: Region) -> Result<i64> {
    same_size(x, w)?;
    let n = w.len();
    if region.rows.1 > n || region.cols.1 > n {
        return Err(Error::InvalidRegion(
            region.rows.0,
            region.rows.1,
            region.cols.0,
            region.cols.1,
        ));
    }
    let count = |u: &Permutation| {
        (region.rows.0..=region.rows.1)
            .filter(|&p| region.contains(p, u.get(p)))
            .count() as i64
    };
    Ok(count(w) - count(x))
}

/// An ordered set of transpositions, typically `R(x, w)` or a subset of it.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ReflectionSet(BTreeSet<Transposition>);

impl ReflectionSet {
    pub fn new() -> Self {
        ReflectionSet(BTreeSet::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, t: Transposition) -> bool {
        self.0.contains(&t)
    }

    pub fn insert(&mut self, t: Transposition) -> bool {
        self.0.insert(t)
    }

    pub fn iter(&self) -> impl Iterator<Item = Transposition> + '_ {
        self.0.iter().copied()
    }

    /// Every position touched by a member.
    pub fn support(&self) -> IndexSet {
        let positions: Vec<usize> = self.iter().flat_map(|t| [t.a(), t.b()]).collect();
        IndexSet::from_unsorted(positions).expect("positions are 1-based")
    }
}

impl FromIterator<Transposition> for ReflectionSet {
    fn from_iter<I: IntoIterator<Item = Transposition>>(iter: I) -> Self {
        ReflectionSet(iter.into_iter().collect())
    }
}

impl fmt::Debug for ReflectionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// `R(x, w) = {t : x < xt <= w}`, read off the shading of `d_{x,w}`:
/// `t_{a,b}` belongs iff `x(a) < x(b)` and `d_{x,w} >= 1` on the cells
/// `[a, b - 1] × [x(a) + 1, x(b)]`.
pub fn reflection_set(x: &Permutation, w: &Permutation) -> Result<ReflectionSet> {
    let table = DiffTable::new(x, w)?;
    if table.min() < 0 {
        return Err(not_below(x, w));
    }
    Ok(reflection_set_from_table(&table))
}

pub(crate) fn reflection_set_from_table(table: &DiffTable) -> ReflectionSet {
    Transposition::all(table.n()).filter(|&t| table.shaded(t)).collect()
}

/// `R(x, w)` straight from the definition, one Bruhat comparison per transposition.
pub fn reflection_set_direct(x: &Permutation, w: &Permutation) -> Result<ReflectionSet> {
    if !bruhat_leq(x, w)? {
        return Err(not_below(x, w));
    }
    Ok(Transposition::all(w.len())
        .filter(|t| x.get(t.a()) < x.get(t.b()))
        .filter(|t| bruhat_leq_unchecked(&x.swapped(t.a(), t.b()), w))
        .collect())
}

/// `Δ(x, w)`: positions touched by some member of `R(x, w)`.
pub fn delta(x: &Permutation, w: &Permutation) -> Result<IndexSet> {
    Ok(reflection_set(x, w)?.support())
}

/// `(x̃, w̃)`: the flattenings of `x` and `w` to `Δ(x, w)`.
pub fn tilde_restrict(x: &Permutation, w: &Permutation) -> Result<(Permutation, Permutation)> {
    let d = delta(x, w)?;
    if d.is_empty() {
        return Err(Error::EmptyDelta);
    }
    Ok((x.flatten(&d)?, w.flatten(&d)?))
}

/// Rows of the `φ_t` decision table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiCase {
    Ai,
    Aii,
    Aiii,
    Bi,
    Bii,
    Biii,
    Ci,
    Cii,
    Di,
    Dii,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Pair {
    AB,
    AC,
    BC,
}

/// `φ_t^{y,w}(t')` for `yt < y <= w` and `t' ∈ R(y, w)`.
pub fn phi_map(y: &Permutation, w: &Permutation, t: Transposition, tp: Transposition) -> Result<Transposition> {
    phi_map_with_case(y, w, t, tp).map(|(image, _)| image)
}

/// Like [`phi_map`], also reporting the table row used (`None` when `t` and
/// `t'` commute).
pub fn phi_map_with_case(
    y: &Permutation,
    w: &Permutation,
    t: Transposition,
    tp: Transposition,
) -> Result<(Transposition, Option<PhiCase>)> {
    same_size(y, w)?;
    let n = y.len();
    if t.b() > n || tp.b() > n {
        return Err(Error::OutOfRange {
            index: t.b().max(tp.b()),
            n,
        });
    }
    if y.get(t.a()) < y.get(t.b()) {
        return Err(Error::PhiPrecondition("yt < y fails"));
    }
    if t == tp {
        return Err(Error::PhiPrecondition("t' equals t"));
    }
    if !bruhat_leq_unchecked(y, w) {
        return Err(Error::PhiPrecondition("y <= w fails"));
    }
    let in_r = |s: Transposition| y.get(s.a()) < y.get(s.b()) && bruhat_leq_unchecked(&y.swapped(s.a(), s.b()), w);
    if !in_r(tp) {
        return Err(Error::PhiPrecondition("t' is not in R(y, w)"));
    }
    if t.commutes_with(tp) {
        return Ok((tp, None));
    }

    let mut idx = [t.a(), t.b(), tp.a(), tp.b()];
    idx.sort_unstable();
    let (a, b, c) = if idx[0] == idx[1] {
        (idx[0], idx[2], idx[3])
    } else if idx[1] == idx[2] {
        (idx[0], idx[1], idx[3])
    } else {
        (idx[0], idx[1], idx[2])
    };
    let role = |s: Transposition| match (s.a() == a, s.b() == c) {
        (true, false) => Pair::AB,
        (true, true) => Pair::AC,
        _ => Pair::BC,
    };
    let pick = |p: Pair| match p {
        Pair::AB => Transposition::new(a, b),
        Pair::AC => Transposition::new(a, c),
        Pair::BC => Transposition::new(b, c),
    };
    let pattern = {
        let f = crate::perm::flatten_values(&[y.get(a), y.get(b), y.get(c)]);
        [f[0], f[1], f[2]]
    };
    let ac_in_r = in_r(pick(Pair::AC)?);

    use Pair::*;
    use PhiCase::*;
    let (image, case) = match (pattern, role(t), role(tp), ac_in_r) {
        ([2, 1, 3], AB, AC, _) => (BC, Ai),
        ([2, 1, 3], AB, BC, false) => (BC, Aii),
        ([2, 1, 3], AB, BC, true) => (AC, Aiii),
        ([1, 3, 2], BC, AC, _) => (AB, Bi),
        ([1, 3, 2], BC, AB, false) => (AB, Bii),
        ([1, 3, 2], BC, AB, true) => (AC, Biii),
        ([3, 1, 2], AB, BC, false) => (AC, Ci),
        ([3, 1, 2], AC, BC, false) => (BC, Cii),
        ([2, 3, 1], BC, AB, false) => (AC, Di),
        ([2, 3, 1], AC, AB, false) => (AB, Dii),
        _ => return Err(Error::PhiPrecondition("no row of the decision table applies")),
    };
    Ok((pick(image)?, Some(case)))
}

/// `E_t(x, w) = R(x, w) \ ({t} ∪ φ_t^{xt,w}(R(xt, w)))`, the extra reflections at `x`.
pub fn extra_set(x: &Permutation, w: &Permutation, t: Transposition) -> Result<ReflectionSet> {
    let r = reflection_set(x, w)?;
    if !r.contains(t) {
        return Err(Error::NotInReflectionSet(t.to_string()));
    }
    let y = x.apply_transposition_right(t)?;
    let mut image = BTreeSet::new();
    for tp in reflection_set(&y, w)?.iter() {
        image.insert(phi_map(&y, w, t, tp)?);
    }
    Ok(r.iter().filter(|s| *s != t && !image.contains(s)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn t(a: usize, b: usize) -> Transposition {
        Transposition::new(a, b).unwrap()
    }

    fn rs(ts: &[(usize, usize)]) -> ReflectionSet {
        ts.iter().map(|&(a, b)| t(a, b)).collect()
    }

    #[test]
    fn rank_examples() {
        let w = p(&[3, 4, 1, 2]);
        assert_eq!(rank(&w, 2, 3).unwrap(), 2);
        assert_eq!(rank(&w, 0, 2).unwrap(), 0);
        assert_eq!(rank(&Permutation::identity(5).unwrap(), 5, 1).unwrap(), 5);
        assert!(rank(&w, 5, 1).is_err());
        assert!(rank(&w, 1, 0).is_err());
    }

    #[test]
    fn diff_table_examples() {
        let w = p(&[3, 4, 1, 2]);
        assert_eq!(DiffTable::new(&w, &w).unwrap().min(), 0);
        assert!(DiffTable::new(&w, &w).unwrap().d.iter().all(|&v| v == 0));

        let table = DiffTable::new(&p(&[1, 3, 2, 4]), &w).unwrap();
        assert_eq!(table.get(1, 2), 1);
        assert_eq!(table.get(2, 2), 1);
        assert_eq!(table.get(3, 4), 1);
        assert!(table.min() >= 0);

        let table = DiffTable::new(&p(&[2, 1]), &p(&[1, 2])).unwrap();
        assert_eq!(table.get(1, 2), -1);
        assert!(DiffTable::new(&p(&[1]), &w).is_err());
    }

    #[test]
    fn diff_table_boundaries_and_steps() {
        for w in all_permutations(4) {
            for x in all_permutations(4) {
                let tb = DiffTable::new(&x, &w).unwrap();
                for q in 0..=5 {
                    assert_eq!(tb.get(0, q), 0);
                }
                for p in 0..=4 {
                    assert_eq!(tb.get(p, 5), 0);
                    for q in 1..=4 {
                        assert!((tb.get(p, q) - tb.get(p, q + 1)).abs() <= 1);
                        if p > 0 {
                            assert!((tb.get(p, q) - tb.get(p - 1, q)).abs() <= 1);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bruhat_examples() {
        let w = p(&[4, 2, 3, 1]);
        assert!(bruhat_leq(&Permutation::identity(4).unwrap(), &w).unwrap());
        assert!(bruhat_leq(&p(&[2, 1, 4, 3]), &w).unwrap());
        assert!(!bruhat_leq(&p(&[2, 1]), &p(&[1, 2])).unwrap());
        assert!(bruhat_leq(&p(&[1]), &w).is_err());
    }

    #[test]
    fn reflection_set_examples() {
        let w = p(&[2, 4, 5, 3, 1]);
        let x0 = p(&[2, 1, 5, 4, 3]);
        assert_eq!(reflection_set(&x0, &w).unwrap(), rs(&[(2, 4), (2, 5)]));
        let x1 = p(&[1, 2, 5, 4, 3]);
        assert_eq!(reflection_set(&x1, &w).unwrap(), rs(&[(1, 2), (2, 4), (2, 5)]));
        let x2 = p(&[1, 2, 5, 3, 4]);
        assert_eq!(reflection_set(&x2, &w).unwrap(), rs(&[(1, 2), (2, 4), (2, 5), (4, 5)]));
        assert!(reflection_set(&w, &w).unwrap().is_empty());
        assert!(matches!(
            reflection_set(&p(&[2, 1]), &p(&[1, 2])),
            Err(Error::NotBelow { .. })
        ));
        // #R(y, w) can jump by more than one along an edge.
        let w = p(&[4, 2, 3, 1]);
        assert_eq!(reflection_set(&p(&[2, 4, 1, 3]), &w).unwrap(), rs(&[(1, 2), (3, 4)]));
        assert_eq!(
            reflection_set(&p(&[2, 1, 4, 3]), &w).unwrap(),
            rs(&[(1, 3), (1, 4), (2, 3), (2, 4)])
        );
    }

    #[test]
    fn delta_and_tilde_examples() {
        let w = p(&[2, 4, 5, 3, 1]);
        assert!(delta(&w, &w).unwrap().is_empty());
        assert_eq!(tilde_restrict(&w, &w), Err(Error::EmptyDelta));
        let d = delta(&p(&[2, 1, 5, 4, 3]), &w).unwrap();
        assert_eq!(d.positions(), &[2, 4, 5]);

        let (xt, wt) = tilde_restrict(&p(&[1, 3, 2, 4]), &p(&[3, 4, 1, 2])).unwrap();
        assert_eq!((xt, wt), (p(&[1, 3, 2, 4]), p(&[3, 4, 1, 2])));

        // x_{2,2} < w_{2,2} padded by fixed points on both sides.
        let (xt, wt) = tilde_restrict(&p(&[1, 3, 2, 5, 4, 6]), &p(&[1, 5, 3, 4, 2, 6])).unwrap();
        assert_eq!((xt, wt), (p(&[2, 1, 4, 3]), p(&[4, 2, 3, 1])));
    }

    #[test]
    fn phi_examples() {
        let w = p(&[2, 4, 5, 3, 1]);
        let x0 = p(&[2, 1, 5, 4, 3]);
        let x1 = p(&[1, 2, 5, 4, 3]);
        let x2 = p(&[1, 2, 5, 3, 4]);
        let x3 = p(&[1, 2, 3, 5, 4]);
        // y = x0 with t = t12 (x1 = x0 t12 < x0)
        assert_eq!(
            phi_map_with_case(&x0, &w, t(1, 2), t(2, 4)).unwrap(),
            (t(2, 4), Some(PhiCase::Aii))
        );
        assert_eq!(
            phi_map_with_case(&x0, &w, t(1, 2), t(2, 5)).unwrap(),
            (t(2, 5), Some(PhiCase::Aii))
        );
        assert_eq!(phi_map_with_case(&x1, &w, t(4, 5), t(1, 2)).unwrap(), (t(1, 2), None));
        assert_eq!(
            phi_map_with_case(&x1, &w, t(4, 5), t(2, 4)).unwrap(),
            (t(2, 5), Some(PhiCase::Biii))
        );
        assert_eq!(
            phi_map_with_case(&x1, &w, t(4, 5), t(2, 5)).unwrap(),
            (t(2, 4), Some(PhiCase::Bi))
        );
        assert_eq!(phi_map(&x2, &w, t(3, 4), t(1, 2)).unwrap(), t(1, 2));
        assert_eq!(
            phi_map_with_case(&x2, &w, t(3, 4), t(2, 4)).unwrap(),
            (t(2, 3), Some(PhiCase::Bi))
        );
        assert_eq!(phi_map(&x2, &w, t(3, 4), t(2, 5)).unwrap(), t(2, 5));
        assert_eq!(
            phi_map_with_case(&x2, &w, t(3, 4), t(4, 5)).unwrap(),
            (t(3, 5), Some(PhiCase::Ci))
        );
        let _ = x3;

        assert!(matches!(
            phi_map(&x1, &w, t(1, 2), t(2, 4)),
            Err(Error::PhiPrecondition(_))
        ));
        assert!(matches!(
            phi_map(&x0, &w, t(1, 2), t(1, 2)),
            Err(Error::PhiPrecondition(_))
        ));
        assert!(matches!(
            phi_map(&x0, &w, t(1, 2), t(3, 4)),
            Err(Error::PhiPrecondition(_))
        ));
    }

    #[test]
    fn extra_set_examples() {
        let w = p(&[3, 2, 1]);
        let e = Permutation::identity(3).unwrap();
        assert_eq!(extra_set(&e, &w, t(1, 3)).unwrap(), rs(&[(1, 2), (2, 3)]));

        let w = p(&[4, 2, 3, 1]);
        let e = Permutation::identity(4).unwrap();
        assert!(extra_set(&e, &w, t(1, 2)).unwrap().is_empty());

        let x = p(&[2, 1, 4, 3]);
        for tt in reflection_set(&x, &w).unwrap().iter() {
            assert!(!extra_set(&x, &w, tt).unwrap().is_empty());
        }
        assert!(matches!(extra_set(&x, &w, t(1, 2)), Err(Error::NotInReflectionSet(_))));
    }

    #[test]
    fn signed_count_examples() {
        let w = p(&[3, 4, 1, 2]);
        let x = p(&[1, 3, 2, 4]);
        let full = Region::new((1, 4), (1, 4)).unwrap();
        assert_eq!(region_signed_count(&x, &w, full).unwrap(), 0);
        let r = Region::new((1, 2), (2, 3)).unwrap();
        assert_eq!(region_signed_count(&w, &w, r).unwrap(), 0);
        // rows 1..2, values >= 3: w has both, x has one.
        let r = Region::new((1, 2), (3, 4)).unwrap();
        assert_eq!(region_signed_count(&x, &w, r).unwrap(), 1);
        assert!(Region::new((2, 1), (1, 1)).is_err());
        assert!(region_signed_count(&x, &w, Region::new((1, 5), (1, 1)).unwrap()).is_err());
    }
}
