//! Truncated power series with integer coefficients, rational-function expansion,
//! Hilbert-series identities and graded Lie algebra dimensions.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{rational, Rational};
use crate::report::Report;

/// Integer polynomial, lowest degree first.
pub type IntPoly = Vec<BigInt>;

pub fn int_poly(c: &[i64]) -> IntPoly {
    c.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn poly_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn poly_sub(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
            .collect(),
    )
}

pub fn poly_pow(a: &[BigInt], n: usize) -> IntPoly {
    (0..n).fold(int_poly(&[1]), |acc, _| poly_mul(&acc, a))
}

fn trim(mut p: IntPoly) -> IntPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Evaluates an integer polynomial at a rational point.
pub fn poly_eval(p: &[BigInt], t: &Rational) -> Rational {
    p.iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * t + Rational::from_integer(c.clone()))
}

/// Power series truncated after `t^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<BigInt>,
}

impl TruncSeries {
    pub fn new(mut coeffs: Vec<BigInt>, order: usize) -> Self {
        coeffs.resize(order + 1, BigInt::zero());
        TruncSeries { coeffs }
    }

    pub fn from_i64(c: &[i64], order: usize) -> Self {
        Self::new(int_poly(c), order)
    }

    pub fn from_counts(c: &[BigUint]) -> Self {
        let v: Vec<BigInt> = c.iter().map(|x| BigInt::from(x.clone())).collect();
        let n = v.len().saturating_sub(1);
        Self::new(v, n)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> BigInt {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Self::new((0..=n).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect(), n)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Self::new((0..=n).map(|i| &self.coeffs[i] - &o.coeffs[i]).collect(), n)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut out = vec![BigInt::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                out[i + j] += &self.coeffs[i] * &o.coeffs[j];
            }
        }
        Self::new(out, n)
    }

    pub fn mul_poly(&self, p: &[BigInt]) -> Self {
        self.mul(&Self::new(p.to_vec(), self.order()))
    }

    /// Multiplicative inverse; the constant term must be ±1.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !(c0.is_one() || (-c0).is_one()) {
            return Err(Error::NonInvertibleConstant);
        }
        let n = self.order();
        let mut out = vec![BigInt::zero(); n + 1];
        out[0] = c0.clone();
        for k in 1..=n {
            let mut s = BigInt::zero();
            for j in 1..=k {
                s += &self.coeffs[j] * &out[k - j];
            }
            // c0 * out[k] = -s and c0 = ±1
            out[k] = -s * c0;
        }
        Ok(Self::new(out, n))
    }

    /// Index of the first coefficient where two series differ, up to the common order.
    pub fn first_difference(&self, o: &Self) -> Option<usize> {
        let n = self.order().min(o.order());
        (0..=n).find(|&i| self.coeffs[i] != o.coeffs[i])
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

/// Expansion of `numer/denom` through `t^order`.
pub fn expand_rational(numer: &[BigInt], denom: &[BigInt], order: usize) -> Result<TruncSeries> {
    let d = TruncSeries::new(denom.to_vec(), order).inverse()?;
    Ok(d.mul(&TruncSeries::new(numer.to_vec(), order)))
}

pub fn expand_rational_i64(numer: &[i64], denom: &[i64], order: usize) -> Result<TruncSeries> {
    expand_rational(&int_poly(numer), &int_poly(denom), order)
}

/// `1 - 7t + 7t^2 - t^3`, the reciprocal of the Hilbert series of `A`.
pub fn a_denominator() -> IntPoly {
    int_poly(&[1, -7, 7, -1])
}

pub fn hilbert_a(order: usize) -> TruncSeries {
    expand_rational(&int_poly(&[1]), &a_denominator(), order).expect("unit constant term")
}

pub fn hilbert_b(order: usize) -> TruncSeries {
    expand_rational_i64(&[1], &[1, -6, 1], order).expect("unit constant term")
}

/// The Möbius function.
pub fn mobius(mut n: u64) -> i64 {
    let mut m = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            m = -m;
        }
        p += 1;
    }
    if n > 1 {
        m = -m;
    }
    m
}

/// `v_d = t_1^d + t_2^d` for the roots of `t^2 - 6t + 1`: `v_0 = 2, v_1 = 6, v_d = 6 v_{d-1} - v_{d-2}`.
pub fn power_sums(n: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::from(2), BigInt::from(6)];
    while v.len() <= n {
        let k = v.len();
        let next = BigInt::from(6) * &v[k - 1] - &v[k - 2];
        v.push(next);
    }
    v.truncate(n + 1);
    v
}

/// Dimensions `d_1..d_n` of the graded Lie algebra, `d_m = (1/m) Σ_{e|m} μ(m/e)(1 + v_e)`.
pub fn lie_dims(n: usize) -> Result<Vec<BigInt>> {
    let v = power_sums(n);
    let mut out = Vec::with_capacity(n);
    for m in 1..=n {
        let mut s = BigInt::zero();
        for e in (1..=m).filter(|e| m % e == 0) {
            let mu = mobius((m / e) as u64);
            if mu != 0 {
                s += BigInt::from(mu) * (BigInt::one() + &v[e]);
            }
        }
        let (q, r) = s.div_rem(&BigInt::from(m));
        if !r.is_zero() {
            return Err(Error::NonIntegral(format!("Möbius sum {s} at m={m}")));
        }
        out.push(q);
    }
    Ok(out)
}

/// `Π_{i=1}^{n} (1 - t^i)^{-d_i}` truncated at `t^order`.
pub fn pbw_product(dims: &[BigInt], order: usize) -> TruncSeries {
    let mut acc = TruncSeries::from_i64(&[1], order);
    for (k, d) in dims.iter().enumerate() {
        let i = k + 1;
        if i > order || d.is_zero() {
            continue;
        }
        // (1 - t^i)^{-d} = Σ_j C(d+j-1, j) t^{ij}
        let mut f = vec![BigInt::zero(); order + 1];
        let mut binom = BigInt::one();
        let mut j = 0usize;
        while i * j <= order {
            f[i * j] = binom.clone();
            binom = binom * (d + BigInt::from(j)) / BigInt::from(j + 1);
            j += 1;
        }
        acc = acc.mul(&TruncSeries::new(f, order));
    }
    acc
}

/// True when the PBW product of `dims` agrees with `target` through `t^order`.
pub fn pbw_check(dims: &[BigInt], target: &TruncSeries, order: usize) -> bool {
    pbw_product(dims, order)
        .truncate(order)
        .first_difference(&target.truncate(order))
        .is_none()
}

/// A rational function `num/den` with integer polynomial numerator and denominator.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    pub num: IntPoly,
    pub den: IntPoly,
}

impl RationalFunction {
    pub fn new(num: IntPoly, den: IntPoly) -> Self {
        RationalFunction { num, den }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(poly_mul(&self.num, &o.num), poly_mul(&self.den, &o.den))
    }

    pub fn add(&self, o: &Self) -> Self {
        let a = poly_mul(&self.num, &o.den);
        let b = poly_mul(&o.num, &self.den);
        let n = a.len().max(b.len());
        let s = (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
            .collect();
        Self::new(trim(s), poly_mul(&self.den, &o.den))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.num.iter().map(|c| -c).collect(), self.den.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Equality by cross-multiplication.
    pub fn equals(&self, o: &Self) -> bool {
        poly_sub(&poly_mul(&self.num, &o.den), &poly_mul(&o.num, &self.den)).is_empty()
    }

    pub fn expand(&self, order: usize) -> Result<TruncSeries> {
        expand_rational(&self.num, &self.den, order)
    }
}

pub fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
    RationalFunction::new(int_poly(num), int_poly(den))
}

/// `H_A(t) = 1/(1-7t+7t^2-t^3)` as a rational function.
pub fn h_a_rf() -> RationalFunction {
    RationalFunction::new(int_poly(&[1]), a_denominator())
}

/// `(1-t)^{-k}`.
pub fn inv_one_minus_t_pow(k: usize) -> RationalFunction {
    RationalFunction::new(int_poly(&[1]), poly_pow(&int_poly(&[1, -1]), k))
}

/// The three Hilbert-series identities for ideals generated by subspaces of `A_1`, each as
/// a rational-function identity and as a truncated identity against quotient dimensions
/// `h_quot` produced elsewhere (keys: "6-plane", "5-plane", "4-plane").
pub fn ideal_series_identities(
    h_a: &TruncSeries,
    quotients: &[(&str, TruncSeries)],
) -> Report {
    let mut rep = Report::new("ideal-identities");
    let ha = h_a_rf();
    let t = |c: &[i64]| RationalFunction::new(int_poly(c), int_poly(&[1]));

    // 6tH - H + (1-t)^{-1} = t^2 H
    let lhs6 = t(&[0, 6]).mul(&ha).sub(&ha).add(&inv_one_minus_t_pow(1));
    let rhs6 = t(&[0, 0, 1]).mul(&ha);
    rep.push(
        "6-plane.rational",
        lhs6.equals(&rhs6),
        "6tH_A - H_A + (1-t)^{-1} = t^2 H_A",
        "cross-multiplied integer polynomials",
    );
    // H - (1-t)^{-2} = (5t - t^2)(1-t)^{-1} H
    let lhs5 = ha.sub(&inv_one_minus_t_pow(2));
    let rhs5 = t(&[0, 5, -1]).mul(&inv_one_minus_t_pow(1)).mul(&ha);
    rep.push(
        "5-plane.rational",
        lhs5.equals(&rhs5),
        "H_A - (1-t)^{-2} = (5t - t^2)(1-t)^{-1} H_A",
        "cross-multiplied integer polynomials",
    );
    // H - (1-t)^{-3} = H * 4t/(1-t)^2
    let lhs4 = ha.sub(&inv_one_minus_t_pow(3));
    let rhs4 = ha.mul(&t(&[0, 4])).mul(&inv_one_minus_t_pow(2));
    rep.push(
        "4-plane.rational",
        lhs4.equals(&rhs4),
        "H_A - (1-t)^{-3} = H_A 4t/(1-t)^2",
        "cross-multiplied integer polynomials",
    );

    for (name, hq) in quotients {
        let order = hq.order().min(h_a.order());
        let ideal = h_a.truncate(order).sub(&hq.truncate(order));
        // H_A - H_{A/I} is the series of the ideal I
        let (expected, closed, claim) = match *name {
            "6-plane" => (t(&[0, 6, -1]).mul(&ha), inv_one_minus_t_pow(1), "H_{ALA} = (6t - t^2) H_A"),
            "5-plane" => (rhs5.clone(), inv_one_minus_t_pow(2), "H_{ALA} = (5t - t^2)(1-t)^{-1} H_A"),
            "4-plane" => (rhs4.clone(), inv_one_minus_t_pow(3), "H_{AJA} = 4t(1-t)^{-2} H_A"),
            _ => continue,
        };
        let ok_ideal = expected
            .expand(order)
            .map(|e| e.first_difference(&ideal).is_none())
            .unwrap_or(false);
        let ok_quot = closed
            .expand(order)
            .map(|e| e.first_difference(hq).is_none())
            .unwrap_or(false);
        rep.push(
            &format!("{name}.series"),
            ok_ideal && ok_quot,
            claim,
            format!("quotient coefficients {:?} through t^{order}", hq.to_strings()),
        );
    }
    rep
}

/// Checks `(1 - 7t + 7t^2 - t^3) · H(t) = 1` for the given series.
pub fn koszul_functional_equation(h: &TruncSeries, dual: &[i64]) -> Option<usize> {
    // H_{A^!}(-t) has coefficients (-1)^n dim A^!_n
    let signed: Vec<i64> = dual
        .iter()
        .enumerate()
        .map(|(n, &c)| if n % 2 == 0 { c } else { -c })
        .collect();
    let prod = h.mul_poly(&int_poly(&signed));
    prod.first_difference(&TruncSeries::from_i64(&[1], h.order()))
}

/// Sign of `1 - 6t + t^2` at `t = 1/6` and `t = 1/5`; a sign change places the smallest
/// root `3 - 2√2` strictly between them.
pub fn radius_bracket() -> (Rational, Rational) {
    let p = int_poly(&[1, -6, 1]);
    (poly_eval(&p, &rational(1, 6)), poly_eval(&p, &rational(1, 5)))
}

pub fn is_positive(q: &Rational) -> bool {
    q.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &TruncSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| c.try_into().unwrap()).collect()
    }

    #[test]
    fn expansions() {
        assert_eq!(ints(&hilbert_a(5)), vec![1, 7, 42, 246, 1435, 8365]);
        assert_eq!(ints(&hilbert_b(4)), vec![1, 6, 35, 204, 1189]);
        assert_eq!(ints(&expand_rational_i64(&[1], &[1, -1], 3).unwrap()), vec![1, 1, 1, 1]);
        assert!(expand_rational_i64(&[1], &[2, -1], 3).is_err());
    }

    #[test]
    fn recurrence_oracle_for_h_a() {
        let h = hilbert_a(20);
        let c = h.coeffs();
        for n in 3..=20 {
            assert_eq!(c[n], BigInt::from(7) * &c[n - 1] - BigInt::from(7) * &c[n - 2] + &c[n - 3]);
        }
    }

    #[test]
    fn lie_dimensions() {
        let d: Vec<i64> = lie_dims(6).unwrap().iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(d, vec![7, 14, 64, 280, 1344, 6496]);
        assert_eq!(power_sums(5)[2], BigInt::from(34));
        assert_eq!(power_sums(5)[3], BigInt::from(198));
        assert_eq!(power_sums(5)[4], BigInt::from(1154));
    }

    #[test]
    fn pbw_examples() {
        assert!(pbw_check(&lie_dims(8).unwrap(), &hilbert_a(8), 8));
        let only_generators = vec![BigInt::from(7)];
        let prod = pbw_product(&only_generators, 8);
        assert_eq!(prod.first_difference(&hilbert_a(8)), Some(2));
        assert!(!pbw_check(&lie_dims(8).unwrap(), &inv_one_minus_t_pow(7).expand(8).unwrap(), 8));
    }

    #[test]
    fn mobius_values() {
        let m: Vec<i64> = (1..=10).map(mobius).collect();
        assert_eq!(m, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }

    #[test]
    fn functional_equation() {
        let h = hilbert_a(20);
        assert_eq!(koszul_functional_equation(&h, &[1, 7, 7, 1]), None);
        assert_eq!(koszul_functional_equation(&h, &[1, 7, 7]), Some(3));
    }

    #[test]
    fn radius_signs() {
        let (a, b) = radius_bracket();
        assert!(is_positive(&a));
        assert!(!is_positive(&b));
    }

    #[test]
    fn rational_identities() {
        let rep = ideal_series_identities(&hilbert_a(10), &[]);
        assert!(rep.passed(), "{rep:?}");
        assert!(h_a_rf().equals(&inv_one_minus_t_pow(1).mul(&rf(&[1], &[1, -6, 1]))));
    }
}
