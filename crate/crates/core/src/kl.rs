//! Kazhdan–Lusztig polynomials: the standard recursion as a small-`n` oracle,
//! and closed forms at maximal singular points.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use crate::bruhat::{bruhat_leq, bruhat_leq_unchecked};
use crate::error::{Error, Result};
use crate::maxsing::{FamilyParams, Variant};
use crate::oracle::{lower_interval, msp_family};
use crate::perm::Permutation;

pub const DEFAULT_KL_BOUND: usize = 7;

/// Polynomial in `q` with nonnegative integer coefficients, lowest power
/// first, trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KlPolynomial {
    coeffs: Vec<u64>,
}

impl KlPolynomial {
    pub fn zero() -> Self {
        KlPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        KlPolynomial { coeffs: vec![1] }
    }

    pub fn from_coeffs(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        KlPolynomial { coeffs }
    }

    /// `1 + q + … + q^d`
    pub fn geometric(d: usize) -> Self {
        KlPolynomial { coeffs: vec![1; d + 1] }
    }

    /// `1 + q^e` for `e >= 1`.
    pub fn one_plus_power(e: usize) -> Self {
        let mut coeffs = vec![0; e + 1];
        coeffs[0] = 1;
        coeffs[e] += 1;
        KlPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn try_from_signed(coeffs: &[i64]) -> Result<Self> {
        let mut out = Vec::with_capacity(coeffs.len());
        for &c in coeffs {
            out.push(u64::try_from(c).map_err(|_| Error::NegativeCoefficient)?);
        }
        Ok(Self::from_coeffs(out))
    }
}

impl fmt::Display for KlPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let var = match i {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{i}"),
            };
            match (c, i) {
                (_, 0) => write!(f, "{c}")?,
                (1, _) => f.write_str(&var)?,
                _ => write!(f, "{c}{var}")?,
            }
        }
        Ok(())
    }
}

type Poly = Rc<Vec<i64>>;

fn add_shifted(acc: &mut Vec<i64>, p: &[i64], shift: usize, scale: i64) -> Result<()> {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (i, &c) in p.iter().enumerate() {
        let term = c.checked_mul(scale).ok_or(Error::Overflow)?;
        acc[i + shift] = acc[i + shift].checked_add(term).ok_or(Error::Overflow)?;
    }
    Ok(())
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Memo table for the recursion. Reuse one table across many pairs with
/// the same `w` to share the subcomputations.
pub struct KlTable {
    bound: usize,
    memo: HashMap<(Permutation, Permutation), Poly>,
    intervals: HashMap<Permutation, Rc<Vec<Permutation>>>,
}

impl KlTable {
    pub fn new(bound: usize) -> Self {
        KlTable {
            bound,
            memo: HashMap::new(),
            intervals: HashMap::new(),
        }
    }

    /// `P_{x,w}`; zero when `x` is not below `w`.
    pub fn polynomial(&mut self, x: &Permutation, w: &Permutation) -> Result<KlPolynomial> {
        if x.len() != w.len() {
            return Err(Error::SizeMismatch {
                left: x.len(),
                right: w.len(),
            });
        }
        if w.len() > self.bound {
            return Err(Error::OracleBound {
                n: w.len(),
                bound: self.bound,
            });
        }
        let p = self.p(x, w)?;
        KlPolynomial::try_from_signed(&p)
    }

    /// `μ(z, w)`: the coefficient of `q^{(l(w)-l(z)-1)/2}` in `P_{z,w}`,
    /// zero when that exponent is not a nonnegative integer.
    pub fn mu(&mut self, z: &Permutation, w: &Permutation) -> Result<u64> {
        if z.len() != w.len() {
            return Err(Error::SizeMismatch {
                left: z.len(),
                right: w.len(),
            });
        }
        if w.len() > self.bound {
            return Err(Error::OracleBound {
                n: w.len(),
                bound: self.bound,
            });
        }
        let m = self.mu_raw(z, w)?;
        u64::try_from(m).map_err(|_| Error::NegativeCoefficient)
    }

    fn mu_raw(&mut self, z: &Permutation, w: &Permutation) -> Result<i64> {
        let (lz, lw) = (z.length(), w.length());
        if lw <= lz || (lw - lz) % 2 == 0 {
            return Ok(0);
        }
        let p = self.p(z, w)?;
        Ok(p.get((lw - lz - 1) / 2).copied().unwrap_or(0))
    }

    fn interval(&mut self, w: &Permutation) -> Rc<Vec<Permutation>> {
        self.intervals
            .entry(w.clone())
            .or_insert_with(|| Rc::new(lower_interval(w)))
            .clone()
    }

    fn p(&mut self, x: &Permutation, w: &Permutation) -> Result<Poly> {
        if let Some(p) = self.memo.get(&(x.clone(), w.clone())) {
            return Ok(p.clone());
        }
        let result = self.compute(x, w)?;
        self.memo.insert((x.clone(), w.clone()), result.clone());
        Ok(result)
    }

    fn compute(&mut self, x: &Permutation, w: &Permutation) -> Result<Poly> {
        if !bruhat_leq_unchecked(x, w) {
            return Ok(Rc::new(Vec::new()));
        }
        let lw = w.length();
        if lw - x.length() <= 2 {
            return Ok(Rc::new(vec![1]));
        }
        // Right descent at the largest position.
        let i = (1..w.len())
            .rev()
            .find(|&i| w.get(i) > w.get(i + 1))
            .expect("w is not the identity");
        let ws = w.swapped(i, i + 1);
        let xs = x.swapped(i, i + 1);
        let c = usize::from(x.get(i) > x.get(i + 1));

        let mut acc = Vec::new();
        let a = self.p(x, &ws)?;
        add_shifted(&mut acc, &a, c, 1)?;
        let b = self.p(&xs, &ws)?;
        add_shifted(&mut acc, &b, 1 - c, 1)?;

        for z in self.interval(&ws).iter() {
            if z == &ws || z.get(i) < z.get(i + 1) || !bruhat_leq_unchecked(x, z) {
                continue;
            }
            let mu = self.mu_raw(z, &ws)?;
            if mu == 0 {
                continue;
            }
            let pz = self.p(x, z)?;
            add_shifted(&mut acc, &pz, (lw - z.length()) / 2, -mu)?;
        }
        Ok(Rc::new(trim(acc)))
    }
}

/// `P_{x,w}` by the recursion, with at most `bound` letters.
pub fn kl_recursive_bounded(x: &Permutation, w: &Permutation, bound: usize) -> Result<KlPolynomial> {
    KlTable::new(bound).polynomial(x, w)
}

pub fn kl_recursive(x: &Permutation, w: &Permutation) -> Result<KlPolynomial> {
    kl_recursive_bounded(x, w, DEFAULT_KL_BOUND)
}

pub fn mu_coefficient(z: &Permutation, w: &Permutation) -> Result<u64> {
    KlTable::new(DEFAULT_KL_BOUND).mu(z, w)
}

/// The family parameters of a maximal singular point.
pub fn classify_msp(x: &Permutation, w: &Permutation) -> Result<FamilyParams> {
    if !bruhat_leq(x, w)? {
        return Err(Error::NotBelow {
            x: x.to_string(),
            w: w.to_string(),
        });
    }
    msp_family(x, w)?.ok_or_else(|| Error::NotMsp {
        x: x.to_string(),
        w: w.to_string(),
    })
}

/// `P_{x,w}` at a maximal singular point of the given family.
pub fn closed_form(p: &FamilyParams) -> KlPolynomial {
    match (p.variant, p.l) {
        (Variant::TwoRuns, _) => KlPolynomial::geometric(p.k.min(p.m) - 1),
        (Variant::ThreeRuns, Some(l)) if l > 2 => KlPolynomial::one_plus_power(l - 1),
        (Variant::ThreeRuns, _) => KlPolynomial::one_plus_power(1),
    }
}

/// `P_{x,w}` from the closed forms; `x` must be a maximal singular point.
pub fn kl_at_msp(x: &Permutation, w: &Permutation) -> Result<KlPolynomial> {
    Ok(closed_form(&classify_msp(x, w)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxsing::canonical_family;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn display() {
        assert_eq!(KlPolynomial::zero().to_string(), "0");
        assert_eq!(KlPolynomial::one().to_string(), "1");
        assert_eq!(KlPolynomial::geometric(2).to_string(), "1 + q + q^2");
        assert_eq!(KlPolynomial::from_coeffs(vec![1, 0, 2, 0]).to_string(), "1 + 2q^2");
        assert_eq!(
            serde_json::to_string(&KlPolynomial::one_plus_power(2)).unwrap(),
            "[1,0,1]"
        );
    }

    #[test]
    fn recursion_examples() {
        assert!(kl_recursive(&p(&[2, 1, 3]), &p(&[1, 3, 2])).unwrap().is_zero());
        assert!(kl_recursive(&p(&[1, 2, 3]), &p(&[2, 3, 1])).unwrap().is_one());
        let w = p(&[4, 2, 3, 1]);
        let x = p(&[2, 1, 4, 3]);
        assert_eq!(kl_recursive(&x, &w).unwrap().coeffs(), &[1, 1]);
        assert_eq!(
            kl_recursive(&p(&[1, 2, 3, 4]), &p(&[3, 4, 1, 2])).unwrap().coeffs(),
            &[1, 1]
        );
        assert!(kl_recursive(&w, &w).unwrap().is_one());
        assert!(matches!(
            kl_recursive(&Permutation::identity(8).unwrap(), &Permutation::identity(8).unwrap()),
            Err(Error::OracleBound { .. })
        ));
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu_coefficient(&p(&[1, 2, 3]), &p(&[2, 1, 3])).unwrap(), 1);
        assert_eq!(mu_coefficient(&p(&[2, 1, 3]), &p(&[1, 3, 2])).unwrap(), 0);
        assert_eq!(mu_coefficient(&p(&[2, 1, 4, 3]), &p(&[4, 2, 3, 1])).unwrap(), 1);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_msp(&p(&[2, 1, 4, 3]), &p(&[4, 2, 3, 1])).unwrap(),
            FamilyParams::two_runs(2, 2).unwrap()
        );
        assert_eq!(
            classify_msp(&p(&[1, 3, 2, 4]), &p(&[3, 4, 1, 2])).unwrap(),
            FamilyParams::three_runs(1, 2, 1).unwrap()
        );
        assert_eq!(
            classify_msp(&p(&[1, 4, 3, 2, 5]), &p(&[4, 5, 3, 1, 2])).unwrap(),
            FamilyParams::three_runs(1, 3, 1).unwrap()
        );
        assert!(matches!(
            classify_msp(&p(&[1, 2, 3, 4]), &p(&[4, 2, 3, 1])),
            Err(Error::NotMsp { .. })
        ));
    }

    #[test]
    fn closed_form_examples() {
        let cases = [
            (FamilyParams::two_runs(3, 2).unwrap(), "1 + q"),
            (FamilyParams::three_runs(2, 2, 1).unwrap(), "1 + q"),
            (FamilyParams::three_runs(1, 4, 1).unwrap(), "1 + q^3"),
        ];
        for (fp, text) in cases {
            let (x, w) = canonical_family(&fp).unwrap();
            assert_eq!(kl_at_msp(&x, &w).unwrap().to_string(), text);
            assert_eq!(kl_recursive(&x, &w).unwrap().to_string(), text, "{fp}");
        }
    }
}
