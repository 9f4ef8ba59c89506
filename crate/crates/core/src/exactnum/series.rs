use std::marker::PhantomData;

use super::{ConstRing, LaurentPoly, Var};
use crate::error::{Error, Result};

/// Power series `Σ_{j≤M} c_j v^j` known modulo `v^{M+1}`.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncSeries<C, V> {
    coeffs: Vec<C>,
    _var: PhantomData<V>,
}

impl<C: ConstRing, V: Var> TruncSeries<C, V> {
    pub fn zero(order: usize) -> Self {
        TruncSeries { coeffs: vec![C::zero_elem(); order + 1], _var: PhantomData }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = C::one_elem();
        s
    }

    /// Truncation of a polynomial; negative exponents are rejected.
    pub fn from_poly(p: &LaurentPoly<C, V>, order: usize) -> Result<Self> {
        if !p.is_polynomial() {
            return Err(Error::NotAUnitSeries("negative exponent in series input".into()));
        }
        let mut s = Self::zero(order);
        for (e, c) in p.terms() {
            if (e as usize) <= order {
                s.coeffs[e as usize] = c.clone();
            }
        }
        Ok(s)
    }

    pub fn from_coeffs(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero_elem());
        coeffs.truncate(order + 1);
        TruncSeries { coeffs, _var: PhantomData }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, j: usize) -> &C {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let m = self.order().min(rhs.order());
        let c = (0..=m).map(|j| self.coeffs[j].plus(&rhs.coeffs[j])).collect();
        TruncSeries { coeffs: c, _var: PhantomData }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let m = self.order().min(rhs.order());
        let c = (0..=m).map(|j| self.coeffs[j].minus(&rhs.coeffs[j])).collect();
        TruncSeries { coeffs: c, _var: PhantomData }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let m = self.order().min(rhs.order());
        let mut out = vec![C::zero_elem(); m + 1];
        for i in 0..=m {
            if self.coeffs[i].is_zero_elem() {
                continue;
            }
            for j in 0..=(m - i) {
                if !rhs.coeffs[j].is_zero_elem() {
                    out[i + j] = out[i + j].plus(&self.coeffs[i].times(&rhs.coeffs[j]));
                }
            }
        }
        TruncSeries { coeffs: out, _var: PhantomData }
    }

    pub fn scale(&self, c: &C) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|a| a.times(c)).collect(), _var: PhantomData }
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        let inv0 = self.coeffs[0]
            .try_inverse()
            .ok_or_else(|| Error::NotAUnitSeries(format!("constant term {:?}", self.coeffs[0])))?;
        let m = self.order();
        let mut out: Vec<C> = Vec::with_capacity(m + 1);
        out.push(inv0.clone());
        for n in 1..=m {
            let mut acc = C::zero_elem();
            for k in 1..=n {
                if !self.coeffs[k].is_zero_elem() {
                    acc = acc.plus(&self.coeffs[k].times(&out[n - k]));
                }
            }
            out.push(acc.negate().times(&inv0));
        }
        Ok(TruncSeries { coeffs: out, _var: PhantomData })
    }

    /// Truncate to a lower order.
    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), order.min(self.order()))
    }
}

/// Series expansion of `numer / Π denom_factors` to order `order`.
pub fn ratfun_expand<C: ConstRing, V: Var>(
    numer: &LaurentPoly<C, V>,
    denom_factors: &[LaurentPoly<C, V>],
    order: usize,
) -> Result<TruncSeries<C, V>> {
    let mut acc = TruncSeries::from_poly(numer, order)?;
    for d in denom_factors {
        let ds = TruncSeries::from_poly(d, order)?;
        acc = acc.mul(&ds.inverse()?);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, Rational, VarT};

    type P = LaurentPoly<Rational, VarT>;

    fn lin(c: i64) -> P {
        P::from_coeffs(vec![rat(1, 1), rat(-c, 1)])
    }

    #[test]
    fn geometric() {
        let s = ratfun_expand(&P::from_coeffs(vec![rat(1, 1)]), &[lin(1)], 3).unwrap();
        assert_eq!(s.coeffs(), &[rat(1, 1), rat(1, 1), rat(1, 1), rat(1, 1)]);
    }

    #[test]
    fn two_factors() {
        let s = ratfun_expand(&P::from_coeffs(vec![rat(1, 1)]), &[lin(1), lin(2)], 2).unwrap();
        assert_eq!(s.coeffs(), &[rat(1, 1), rat(3, 1), rat(7, 1)]);
    }

    #[test]
    fn telescoping() {
        let s = ratfun_expand(&P::from_coeffs(vec![rat(1, 1), rat(1, 1)]), &[lin(1)], 2).unwrap();
        assert_eq!(s.coeffs(), &[rat(1, 1), rat(2, 1), rat(2, 1)]);
    }

    #[test]
    fn non_unit_rejected() {
        let d = P::var();
        let e = ratfun_expand(&P::from_coeffs(vec![rat(1, 1)]), &[d], 2).unwrap_err();
        assert!(e.to_string().contains("not a unit series"));
    }

    #[test]
    fn order_is_min_of_operands() {
        let a = TruncSeries::<Rational, VarT>::one(5);
        let b = TruncSeries::<Rational, VarT>::one(3);
        assert_eq!(a.mul(&b).order(), 3);
        assert_eq!(a.add(&b).order(), 3);
    }
}
