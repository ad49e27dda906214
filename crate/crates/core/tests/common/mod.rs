//! Property checks shared by the property suite and the acceptance suite.
//! Each check returns `Err` with a readable counterexample.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use schubsing::bruhat::{
    bruhat_leq, delta, extra_set, phi_map, reflection_set, reflection_set_direct, region_signed_count, DiffTable,
    Region,
};
use schubsing::kl::{KlPolynomial, KlTable};
use schubsing::oracle::{is_msp, lower_interval};
use schubsing::{IndexSet, Permutation, Transposition};

pub type Check = Result<(), String>;

pub fn perm(v: &[usize]) -> Permutation {
    Permutation::new(v.to_vec()).unwrap()
}

pub fn random_perm(rng: &mut impl Rng, n: usize) -> Permutation {
    let mut v: Vec<usize> = (1..=n).collect();
    v.shuffle(rng);
    Permutation::new(v).unwrap()
}

/// A random `x <= w`, uniform over the interval.
pub fn random_below(rng: &mut impl Rng, w: &Permutation) -> Permutation {
    let interval = lower_interval(w);
    interval[rng.gen_range(0..interval.len())].clone()
}

fn swap(x: &Permutation, t: Transposition) -> Permutation {
    x.swapped(t.a(), t.b())
}

/// `#R(x, w) >= l(w) - l(x)`.
pub fn deodhar(x: &Permutation, w: &Permutation) -> Check {
    let r = reflection_set(x, w).map_err(|e| e.to_string())?.len();
    let codim = w.length() - x.length();
    if r >= codim {
        Ok(())
    } else {
        Err(format!("#R({x},{w}) = {r} < {codim}"))
    }
}

/// The shading criterion and the definition give the same `R(x, w)`.
pub fn shady(x: &Permutation, w: &Permutation) -> Check {
    let a = reflection_set(x, w).map_err(|e| e.to_string())?;
    let b = reflection_set_direct(x, w).map_err(|e| e.to_string())?;
    if a == b {
        Ok(())
    } else {
        Err(format!("R({x},{w}): shading {a:?} vs definition {b:?}"))
    }
}

/// For `yt < y <= w`, `φ_t` maps `R(y, w)` injectively into `R(yt, w) \ {t}`.
pub fn phi_injective(y: &Permutation, w: &Permutation, t: Transposition) -> Check {
    let yt = swap(y, t);
    let target = reflection_set(&yt, w).map_err(|e| e.to_string())?;
    let source = reflection_set(y, w).map_err(|e| e.to_string())?;
    let mut image = std::collections::BTreeSet::new();
    for tp in source.iter() {
        let im = phi_map(y, w, t, tp).map_err(|e| format!("phi({y},{w},{t},{tp}): {e}"))?;
        if im == t || !target.contains(im) {
            return Err(format!("phi_{t}({tp}) = {im} not in R({yt},{w}) minus t, y = {y}"));
        }
        image.insert(im);
    }
    if image.len() == source.len() {
        Ok(())
    } else {
        Err(format!("phi_{t} not injective on R({y},{w})"))
    }
}

/// For `yt < y <= w`, `Δ(y, w) ⊆ Δ(yt, w)`.
pub fn delta_monotone(y: &Permutation, w: &Permutation, t: Transposition) -> Check {
    let yt = swap(y, t);
    let dy = delta(y, w).map_err(|e| e.to_string())?;
    let dyt = delta(&yt, w).map_err(|e| e.to_string())?;
    if dy.is_subset(&dyt) {
        Ok(())
    } else {
        Err(format!("Delta({y},{w}) = {dy:?} not inside Delta({yt},{w}) = {dyt:?}"))
    }
}

/// For `ys_i < y <= w` with `ws_i < w`, `R(ys_i, w) = φ_{s_i}(R(y, w)) ∪ {s_i}`.
pub fn phimax(y: &Permutation, w: &Permutation, i: usize) -> Check {
    let s = Transposition::simple(i).unwrap();
    let ys = swap(y, s);
    let lhs = reflection_set(&ys, w).map_err(|e| e.to_string())?;
    let mut rhs = schubsing::bruhat::ReflectionSet::new();
    rhs.insert(s);
    for tp in reflection_set(y, w).map_err(|e| e.to_string())?.iter() {
        rhs.insert(phi_map(y, w, s, tp).map_err(|e| e.to_string())?);
    }
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!(
            "y = {y}, w = {w}, s = {s}: R(ys,w) = {lhs:?}, phi image plus s = {rhs:?}"
        ))
    }
}

/// Reciprocity of the φ images for two length-one-up reflections.
pub fn reciprocity(x: &Permutation, w: &Permutation, t: Transposition, tp: Transposition) -> Check {
    let image = |a: Transposition| -> Result<Vec<Transposition>, String> {
        let xa = swap(x, a);
        let r = reflection_set(&xa, w).map_err(|e| e.to_string())?;
        r.iter()
            .map(|u| phi_map(&xa, w, a, u).map_err(|e| e.to_string()))
            .collect()
    };
    let left = image(t)?.contains(&tp);
    let right = image(tp)?.contains(&t);
    if left == right {
        Ok(())
    } else {
        Err(format!("x = {x}, w = {w}, t = {t}, t' = {tp}: {left} vs {right}"))
    }
}

/// `x <= y <= w` implies `d_{x,w} >= d_{y,w}` entrywise.
pub fn diff_monotone(x: &Permutation, y: &Permutation, w: &Permutation) -> Check {
    let dx = DiffTable::new(x, w).map_err(|e| e.to_string())?;
    let dy = DiffTable::new(y, w).map_err(|e| e.to_string())?;
    let n = w.len();
    for p in 0..=n {
        for q in 1..=n + 1 {
            if dx.get(p, q) < dy.get(p, q) {
                return Err(format!("x = {x}, y = {y}, w = {w} at ({p},{q})"));
            }
        }
    }
    Ok(())
}

/// The signed count of a rectangle equals the alternating sum of `d` at its
/// corners; in the rhombus setting this reads `Θ = -(α + β - γ)`.
pub fn rhombus(x: &Permutation, w: &Permutation, p: usize, pp: usize, q: usize, qp: usize) -> Check {
    let d = DiffTable::new(x, w).map_err(|e| e.to_string())?;
    let region = Region::new((p + 1, pp), (q, qp - 1)).map_err(|e| e.to_string())?;
    let theta = region_signed_count(x, w, region).map_err(|e| e.to_string())?;
    let (alpha, beta, gamma, zero) = (d.get(p, q), d.get(pp, qp), d.get(pp, q), d.get(p, qp));
    let expected = i64::from(gamma - alpha - beta + zero);
    if theta == expected {
        Ok(())
    } else {
        Err(format!(
            "x = {x}, w = {w}, C = [{},{}]x[{},{}]: {theta} vs {expected}",
            p + 1,
            pp,
            q,
            qp - 1
        ))
    }
}

/// Every reflection of `R(x, w)` at a maximal singular point raises length
/// by exactly one.
pub fn msplo(x: &Permutation, w: &Permutation) -> Check {
    let lx = x.length();
    for t in reflection_set(x, w).map_err(|e| e.to_string())?.iter() {
        if swap(x, t).length() != lx + 1 {
            return Err(format!("x = {x}, w = {w}, t = {t}"));
        }
    }
    Ok(())
}

/// At a maximal singular point, `E_t(x, w)` is nonempty for every
/// length-one-up `t ∈ R(x, w)`.
pub fn enone(x: &Permutation, w: &Permutation) -> Check {
    if !is_msp(x, w).map_err(|e| e.to_string())? {
        return Ok(());
    }
    let lx = x.length();
    for t in reflection_set(x, w).map_err(|e| e.to_string())?.iter() {
        if swap(x, t).length() == lx + 1 && extra_set(x, w, t).map_err(|e| e.to_string())?.is_empty() {
            return Err(format!("x = {x}, w = {w}: E_{t} is empty"));
        }
    }
    Ok(())
}

/// Whether `x` is singular and every length-one-up `t ∈ R(x, w)` has a
/// nonempty extra set.
pub fn all_extra_sets_nonempty(x: &Permutation, w: &Permutation) -> bool {
    let r = reflection_set(x, w).unwrap();
    let lx = x.length();
    r.len() > w.length() - lx
        && r.iter()
            .filter(|&t| swap(x, t).length() == lx + 1)
            .all(|t| !extra_set(x, w, t).unwrap().is_empty())
}

/// Maximal singular points descend along the descents of `w`.
pub fn singext(x: &Permutation, w: &Permutation) -> Check {
    let n = w.len();
    for i in 1..n {
        if w.get(i) > w.get(i + 1) && x.get(i) < x.get(i + 1) {
            return Err(format!("x = {x}, w = {w}: right descent {i}"));
        }
        let (wi, xi) = (w.inverse(), x.inverse());
        if wi.get(i) > wi.get(i + 1) && xi.get(i) < xi.get(i + 1) {
            return Err(format!("x = {x}, w = {w}: left descent {i}"));
        }
    }
    Ok(())
}

/// Degree cap, constant term and nonnegativity of `P_{x,w}` for `x <= w`.
pub fn kl_shape(table: &mut KlTable, x: &Permutation, w: &Permutation) -> Check {
    let p = table.polynomial(x, w).map_err(|e| format!("P({x},{w}): {e}"))?;
    if p.coefficient(0) != 1 {
        return Err(format!("P({x},{w}) = {p} has constant term != 1"));
    }
    let diff = w.length() - x.length();
    let deg = p.degree().unwrap_or(0);
    if diff > 0 && 2 * deg > diff - 1 {
        return Err(format!("P({x},{w}) = {p} exceeds the degree cap"));
    }
    Ok(())
}

fn delete_position(v: &Permutation, i: usize) -> Permutation {
    let keep: Vec<usize> = (1..=v.len()).filter(|&j| j != i).collect();
    v.flatten(&IndexSet::new(keep).unwrap()).unwrap()
}

/// Deleting a position outside `Δ(x, w)` leaves `P_{x,w}` unchanged.
pub fn tilkl(x: &Permutation, w: &Permutation, bound: usize) -> Check {
    if x == w || w.len() < 2 {
        return Ok(());
    }
    let d = delta(x, w).map_err(|e| e.to_string())?;
    let full = KlTable::new(bound).polynomial(x, w).map_err(|e| e.to_string())?;
    for i in (1..=w.len()).filter(|&i| !d.contains(i)) {
        let (xh, wh) = (delete_position(x, i), delete_position(w, i));
        let small = KlTable::new(bound).polynomial(&xh, &wh).map_err(|e| e.to_string())?;
        if small != full {
            return Err(format!("P({x},{w}) = {full} but deleting {i} gives {small}"));
        }
    }
    Ok(())
}

/// `P_{x,w} = P_{xs,w} = P_{s'x,w}` for descents `s` of `w` on the right
/// and `s'` on the left.
pub fn pxwsim(table: &mut KlTable, x: &Permutation, w: &Permutation) -> Check {
    let p = table.polynomial(x, w).map_err(|e| e.to_string())?;
    let n = w.len();
    for i in 1..n {
        if w.get(i) > w.get(i + 1) {
            let q = table.polynomial(&x.swapped(i, i + 1), w).map_err(|e| e.to_string())?;
            if q != p {
                return Err(format!("x = {x}, w = {w}, right s_{i}: {p} vs {q}"));
            }
        }
        let wi = w.inverse();
        if wi.get(i) > wi.get(i + 1) {
            let xi = x.inverse().swapped(i, i + 1);
            let q = table.polynomial(&xi.inverse(), w).map_err(|e| e.to_string())?;
            if q != p {
                return Err(format!("x = {x}, w = {w}, left s_{i}: {p} vs {q}"));
            }
        }
    }
    Ok(())
}

/// `P_{x,w} = 1` exactly when `e_x` is a smooth point.
pub fn kl_one_iff_smooth(table: &mut KlTable, x: &Permutation, w: &Permutation) -> Check {
    let p = table.polynomial(x, w).map_err(|e| e.to_string())?;
    let smooth = schubsing::oracle::is_smooth_point(x, w)
        .map_err(|e| e.to_string())?
        .smooth;
    if p.is_one() == smooth {
        Ok(())
    } else {
        Err(format!("P({x},{w}) = {p}, smooth = {smooth}"))
    }
}

pub fn all_below(w: &Permutation) -> Vec<Permutation> {
    lower_interval(w)
}

pub fn is_below(x: &Permutation, w: &Permutation) -> bool {
    bruhat_leq(x, w).unwrap()
}

pub fn poly(coeffs: &[u64]) -> KlPolynomial {
    KlPolynomial::from_coeffs(coeffs.to_vec())
}
