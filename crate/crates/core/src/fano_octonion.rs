//! Fano-plane combinatorics, the epsilon symbol and exact octonion arithmetic.
//!
//! Indices are 1-based in the public API (`o_1..o_7`), matching the usual naming
//! of the imaginary units. Internally arrays are 0-based with slot 0 holding the
//! real part of an octonion.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{require_odd_characteristic, Field};
use crate::linalg::Matrix;

/// The seven directed lines of the Fano plane.
pub const LINES: [[usize; 3]; 7] = [
    [1, 2, 3],
    [1, 4, 5],
    [1, 6, 7],
    [2, 4, 6],
    [2, 7, 5],
    [3, 7, 4],
    [3, 6, 5],
];

const fn build_epsilon() -> [[[i8; 7]; 7]; 7] {
    let mut e = [[[0i8; 7]; 7]; 7];
    let mut l = 0;
    while l < 7 {
        let a = LINES[l][0] - 1;
        let b = LINES[l][1] - 1;
        let c = LINES[l][2] - 1;
        e[a][b][c] = 1;
        e[b][c][a] = 1;
        e[c][a][b] = 1;
        e[b][a][c] = -1;
        e[a][c][b] = -1;
        e[c][b][a] = -1;
        l += 1;
    }
    e
}

static EPS: [[[i8; 7]; 7]; 7] = build_epsilon();

/// `ε^{ijk}` with 0-based indices and no range check.
#[inline]
pub fn eps0(i: usize, j: usize, k: usize) -> i8 {
    EPS[i][j][k]
}

/// `ε^{ijk}` with 1-based indices.
pub fn epsilon(i: usize, j: usize, k: usize) -> Result<i8> {
    for x in [i, j, k] {
        if !(1..=7).contains(&x) {
            return Err(Error::IndexOutOfRange(x));
        }
    }
    Ok(eps0(i - 1, j - 1, k - 1))
}

/// The unique third point on the line through two distinct points (0-based), with the sign
/// such that `o_i o_j = sign * o_k`.
pub fn third_point(i: usize, j: usize) -> Option<(usize, i8)> {
    (0..7).find(|&k| eps0(i, j, k) != 0).map(|k| (k, eps0(i, j, k)))
}

/// An octonion `c_0 + c_1 o_1 + ... + c_7 o_7`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Octonion<F: Field> {
    pub coeffs: [F; 8],
}

impl<F: Field> Octonion<F> {
    pub fn new(coeffs: [F; 8]) -> Self {
        Octonion { coeffs }
    }

    pub fn zero() -> Self {
        Octonion::new(std::array::from_fn(|_| F::zero()))
    }

    pub fn one() -> Self {
        Self::scalar(F::one())
    }

    pub fn scalar(c: F) -> Self {
        let mut o = Self::zero();
        o.coeffs[0] = c;
        o
    }

    /// The imaginary unit `o_i`, `i` in 1..=7.
    pub fn unit(i: usize) -> Result<Self> {
        if !(1..=7).contains(&i) {
            return Err(Error::IndexOutOfRange(i));
        }
        let mut o = Self::zero();
        o.coeffs[i] = F::one();
        Ok(o)
    }

    /// `o_{i+1}` for a 0-based index.
    pub fn unit0(i: usize) -> Self {
        let mut o = Self::zero();
        o.coeffs[i + 1] = F::one();
        o
    }

    pub fn from_imag(v: &[F]) -> Self {
        assert_eq!(v.len(), 7, "imaginary octonion needs 7 coordinates");
        let mut o = Self::zero();
        for (i, c) in v.iter().enumerate() {
            o.coeffs[i + 1] = c.clone();
        }
        o
    }

    pub fn imag_coords(&self) -> Vec<F> {
        self.coeffs[1..].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_imaginary(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Octonion::new(std::array::from_fn(|i| self.coeffs[i].clone() + o.coeffs[i].clone()))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Octonion::new(std::array::from_fn(|i| self.coeffs[i].clone() - o.coeffs[i].clone()))
    }

    pub fn scale(&self, c: &F) -> Self {
        Octonion::new(std::array::from_fn(|i| self.coeffs[i].clone() * c.clone()))
    }

    pub fn neg(&self) -> Self {
        Octonion::new(std::array::from_fn(|i| -self.coeffs[i].clone()))
    }

    /// Bilinear extension of `o_r o_s = Σ ε^{rsi} o_i - δ_{rs}`.
    pub fn mul(&self, o: &Self) -> Self {
        let a = &self.coeffs;
        let b = &o.coeffs;
        let mut out: [F; 8] = std::array::from_fn(|_| F::zero());
        if !a[0].is_zero() {
            for i in 0..8 {
                out[i] = out[i].clone() + a[0].clone() * b[i].clone();
            }
        }
        if !b[0].is_zero() {
            for i in 1..8 {
                out[i] = out[i].clone() + a[i].clone() * b[0].clone();
            }
        }
        for r in 0..7 {
            if a[r + 1].is_zero() {
                continue;
            }
            for s in 0..7 {
                if b[s + 1].is_zero() {
                    continue;
                }
                let p = a[r + 1].clone() * b[s + 1].clone();
                if r == s {
                    out[0] = out[0].clone() - p;
                } else if let Some((k, sign)) = third_point(r, s) {
                    out[k + 1] = if sign > 0 {
                        out[k + 1].clone() + p
                    } else {
                        out[k + 1].clone() - p
                    };
                }
            }
        }
        Octonion::new(out)
    }

    pub fn conj(&self) -> Self {
        Octonion::new(std::array::from_fn(|i| {
            if i == 0 {
                self.coeffs[0].clone()
            } else {
                -self.coeffs[i].clone()
            }
        }))
    }

    /// `Re(a) = (a + conj a)/2`, returned as a scalar.
    pub fn re(&self) -> Result<F> {
        require_odd_characteristic::<F>()?;
        Ok(self.coeffs[0].clone())
    }

    /// `Im(a) = (a - conj a)/2`.
    pub fn im(&self) -> Result<Self> {
        require_odd_characteristic::<F>()?;
        let mut o = self.clone();
        o.coeffs[0] = F::zero();
        Ok(o)
    }

    pub fn re_part(&self) -> F {
        self.coeffs[0].clone()
    }

    pub fn im_part(&self) -> Self {
        let mut o = self.clone();
        o.coeffs[0] = F::zero();
        o
    }
}

impl<F: Field> fmt::Display for Octonion<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "o{i}")?;
            } else {
                write!(f, "{c}*o{i}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `⟨u,v⟩ = Re(u conj(v))`.
pub fn form<F: Field>(u: &Octonion<F>, v: &Octonion<F>) -> F {
    u.coeffs
        .iter()
        .zip(&v.coeffs)
        .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
}

/// `φ(u,v,w) = -Re(uvw)` on imaginary octonions.
pub fn phi<F: Field>(u: &Octonion<F>, v: &Octonion<F>, w: &Octonion<F>) -> Result<F> {
    if !(u.is_imaginary() && v.is_imaginary() && w.is_imaginary()) {
        return Err(Error::NonzeroRealPart);
    }
    let mut acc = F::zero();
    for i in 0..7 {
        for j in 0..7 {
            for k in 0..7 {
                let e = eps0(i, j, k);
                if e == 0 {
                    continue;
                }
                let p = u.coeffs[i + 1].clone() * v.coeffs[j + 1].clone() * w.coeffs[k + 1].clone();
                acc = if e > 0 { acc + p } else { acc - p };
            }
        }
    }
    Ok(acc)
}

/// The basis `1, t, u1, u2, u3, v1, v2, v3` available when the field contains `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SplitBasis {
    One,
    T,
    U(usize),
    V(usize),
}

impl SplitBasis {
    /// Order: 1, t, u1, u2, u3, v1, v2, v3.
    pub const ALL: [SplitBasis; 8] = [
        SplitBasis::One,
        SplitBasis::T,
        SplitBasis::U(1),
        SplitBasis::U(2),
        SplitBasis::U(3),
        SplitBasis::V(1),
        SplitBasis::V(2),
        SplitBasis::V(3),
    ];

    pub fn index(self) -> usize {
        match self {
            SplitBasis::One => 0,
            SplitBasis::T => 1,
            SplitBasis::U(m) => 1 + m,
            SplitBasis::V(m) => 4 + m,
        }
    }

    pub fn name(self) -> String {
        match self {
            SplitBasis::One => "1".into(),
            SplitBasis::T => "t".into(),
            SplitBasis::U(m) => format!("u{m}"),
            SplitBasis::V(m) => format!("v{m}"),
        }
    }

    /// The element as an octonion in the standard basis.
    pub fn to_octonion<F: Field>(self) -> Result<Octonion<F>> {
        let i = F::imaginary_unit().ok_or(Error::NoSqrtNegOne)?;
        let mut o = Octonion::zero();
        match self {
            SplitBasis::One => o.coeffs[0] = F::one(),
            SplitBasis::T => o.coeffs[1] = i,
            SplitBasis::U(m) => {
                o.coeffs[2 * m] = F::one();
                o.coeffs[2 * m + 1] = i;
            }
            SplitBasis::V(m) => {
                o.coeffs[2 * m] = F::one();
                o.coeffs[2 * m + 1] = -i;
            }
        }
        Ok(o)
    }
}

/// An octonion written in the split basis `1, t, u1, u2, u3, v1, v2, v3`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SplitOctonion<F: Field> {
    pub coeffs: [F; 8],
}

impl<F: Field> SplitOctonion<F> {
    pub fn basis(b: SplitBasis) -> Self {
        let mut c: [F; 8] = std::array::from_fn(|_| F::zero());
        c[b.index()] = F::one();
        SplitOctonion { coeffs: c }
    }

    pub fn to_standard(&self) -> Result<Octonion<F>> {
        let mut acc = Octonion::zero();
        for b in SplitBasis::ALL {
            let c = &self.coeffs[b.index()];
            if !c.is_zero() {
                acc = acc.add(&b.to_octonion::<F>()?.scale(c));
            }
        }
        Ok(acc)
    }

    /// Inverse change of basis: `o1 = -i t`, `o_{2m} = (u_m + v_m)/2`, `o_{2m+1} = -i (u_m - v_m)/2`.
    pub fn from_standard(o: &Octonion<F>) -> Result<Self> {
        require_odd_characteristic::<F>()?;
        let i = F::imaginary_unit().ok_or(Error::NoSqrtNegOne)?;
        let half = F::from_i64(2).inv().ok_or(Error::CharacteristicTwo)?;
        let mut c: [F; 8] = std::array::from_fn(|_| F::zero());
        c[0] = o.coeffs[0].clone();
        c[1] = -(i.clone() * o.coeffs[1].clone());
        for m in 1..=3 {
            let a = o.coeffs[2 * m].clone();
            let b = o.coeffs[2 * m + 1].clone();
            // a o_{2m} + b o_{2m+1} = ((a - i b)/2) u_m + ((a + i b)/2) v_m
            c[1 + m] = (a.clone() - i.clone() * b.clone()) * half.clone();
            c[4 + m] = (a + i.clone() * b) * half.clone();
        }
        Ok(SplitOctonion { coeffs: c })
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let p = self.to_standard()?.mul(&o.to_standard()?);
        Self::from_standard(&p)
    }
}

impl<F: Field> fmt::Display for SplitOctonion<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for b in SplitBasis::ALL {
            let c = &self.coeffs[b.index()];
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (b, c.is_one()) {
                (SplitBasis::One, _) => write!(f, "{c}")?,
                (_, true) => write!(f, "{}", b.name())?,
                _ => write!(f, "{c}*{}", b.name())?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The 7x7 table of products `o_r o_s` (0-based `r`, `s`).
pub fn standard_table<F: Field>() -> Vec<Vec<Octonion<F>>> {
    (0..7)
        .map(|r| (0..7).map(|s| Octonion::unit0(r).mul(&Octonion::unit0(s))).collect())
        .collect()
}

/// The 7x7 table of products of `t, u1, u2, u3, v1, v2, v3`.
pub fn split_table<F: Field>() -> Result<Vec<Vec<SplitOctonion<F>>>> {
    let names = &SplitBasis::ALL[1..];
    names
        .iter()
        .map(|&a| {
            names
                .iter()
                .map(|&b| SplitOctonion::basis(a).mul(&SplitOctonion::basis(b)))
                .collect()
        })
        .collect()
}

/// A subspace of `Im O` stored as a reduced row-echelon basis (rows are vectors).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace<F: Field> {
    basis: Vec<Vec<F>>,
}

impl<F: Field> Subspace<F> {
    /// Span of imaginary octonions given by 7 coordinates each; errors on dependent input.
    pub fn new(vectors: &[Vec<F>]) -> Result<Self> {
        let s = Self::span(vectors);
        if s.dim() != vectors.len() {
            return Err(Error::DependentBasis);
        }
        Ok(s)
    }

    pub fn from_octonions(vs: &[Octonion<F>]) -> Result<Self> {
        if vs.iter().any(|v| !v.is_imaginary()) {
            return Err(Error::NonzeroRealPart);
        }
        Self::new(&vs.iter().map(|v| v.imag_coords()).collect::<Vec<_>>())
    }

    /// Span of arbitrary vectors (dependencies allowed).
    pub fn span(vectors: &[Vec<F>]) -> Self {
        if vectors.is_empty() {
            return Subspace { basis: Vec::new() };
        }
        let (m, piv) = Matrix::from_rows(vectors.to_vec()).rref();
        Subspace {
            basis: (0..piv.len()).map(|r| m.row(r).to_vec()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn basis_octonions(&self) -> Vec<Octonion<F>> {
        self.basis.iter().map(|v| Octonion::from_imag(v)).collect()
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).rank() == self.dim()
    }

    /// Orthogonal complement inside `Im O` with respect to the standard form.
    pub fn orthogonal(&self) -> Self {
        if self.basis.is_empty() {
            return Self::span(&(0..7).map(|i| Octonion::<F>::unit0(i).imag_coords()).collect::<Vec<_>>());
        }
        let ns = Matrix::from_rows(self.basis.clone()).nullspace();
        Self::span(&ns)
    }

    pub fn classify(&self) -> Result<Classification> {
        if self.dim() == 0 {
            return Err(Error::DependentBasis);
        }
        let b = self.basis_octonions();
        let gram = Matrix::from_fn(b.len(), b.len(), |i, j| form(&b[i], &b[j]));
        let gram_rank = gram.rank();
        let isotropic = gram.is_zero();
        let mut null = true;
        let mut closed = true;
        for x in &b {
            for y in &b {
                let p = x.mul(y);
                if !p.is_zero() {
                    null = false;
                }
                if !self.contains(&p.imag_coords()) {
                    closed = false;
                }
            }
        }
        let associative = self.dim() == 3 && closed && gram_rank == 3;
        let coassociative = self.dim() == 4 && {
            let o = self.orthogonal();
            o.dim() == 3 && o.classify()?.associative
        };
        Ok(Classification {
            dim: self.dim(),
            isotropic,
            null,
            closed,
            associative,
            coassociative,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Classification {
    pub dim: usize,
    pub isotropic: bool,
    pub null: bool,
    /// `k + L` is closed under multiplication.
    pub closed: bool,
    pub associative: bool,
    pub coassociative: bool,
}

/// The 7x7 matrix of `v ↦ Im(u v)` on `Im O`.
pub fn left_im_matrix<F: Field>(u: &Octonion<F>) -> Matrix<F> {
    let cols: Vec<Vec<F>> = (0..7).map(|j| u.mul(&Octonion::unit0(j)).imag_coords()).collect();
    Matrix::from_fn(7, 7, |i, j| cols[j][i].clone())
}

/// `E_u = {v ∈ Im O : Im(uv) = 0}`.
pub fn e_u<F: Field>(u: &Octonion<F>) -> Result<Subspace<F>> {
    if !u.is_imaginary() {
        return Err(Error::NonzeroRealPart);
    }
    if u.is_zero() {
        return Err(Error::ZeroArgument);
    }
    Ok(Subspace::span(&left_im_matrix(u).nullspace()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gaussian, Rational};

    type Q = Rational;

    fn o(i: usize) -> Octonion<Q> {
        Octonion::unit(i).unwrap()
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon(1, 2, 3).unwrap(), 1);
        assert_eq!(epsilon(2, 1, 3).unwrap(), -1);
        assert_eq!(epsilon(1, 2, 4).unwrap(), 0);
        assert!(epsilon(0, 1, 2).is_err());
        assert!(epsilon(1, 2, 8).is_err());
    }

    #[test]
    fn epsilon_has_42_nonzero_entries() {
        let n = (0..343).filter(|&t| eps0(t / 49, t / 7 % 7, t % 7) != 0).count();
        assert_eq!(n, 42);
    }

    #[test]
    fn every_pair_on_exactly_one_line() {
        for i in 1..=7 {
            for j in (i + 1)..=7 {
                let n = LINES.iter().filter(|l| l.contains(&i) && l.contains(&j)).count();
                assert_eq!(n, 1);
            }
        }
    }

    #[test]
    fn products_from_table() {
        assert_eq!(o(5).mul(&o(2)), o(7));
        assert_eq!(o(2).mul(&o(6)), o(4).neg());
        let a = o(3).add(&o(6).scale(&crate::field::rational(-2, 3)));
        assert_eq!(Octonion::one().mul(&a), a);
        assert_eq!(a.mul(&Octonion::one()), a);
    }

    #[test]
    fn real_and_imaginary_parts() {
        let a = Octonion::scalar(crate::field::rational(3, 1)).add(&o(4).scale(&crate::field::rational(2, 1)));
        assert_eq!(a.im().unwrap(), o(4).scale(&crate::field::rational(2, 1)));
        assert_eq!(o(1).mul(&o(2)).im().unwrap(), o(3));
        assert_eq!(o(1).mul(&o(1)).re().unwrap(), crate::field::rational(-1, 1));
    }

    #[test]
    fn form_examples() {
        assert_eq!(form(&o(3), &o(3)), crate::field::rational(1, 1));
        assert_eq!(form(&o(2), &o(5)), crate::field::rational(0, 1));
        let a = Octonion::one().add(&o(1));
        let b = Octonion::one().sub(&o(1));
        // Re(a conj(b)) computed with the product
        assert_eq!(form(&a, &b), a.mul(&b.conj()).re_part());
        assert_eq!(form(&a, &b), crate::field::rational(0, 1));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&o(1), &o(2), &o(3)).unwrap(), crate::field::rational(1, 1));
        assert_eq!(phi(&o(1), &o(1), &o(2)).unwrap(), crate::field::rational(0, 1));
        let direct = -o(1).mul(&o(2)).mul(&o(4)).re_part();
        assert_eq!(phi(&o(1), &o(2), &o(4)).unwrap(), direct);
        assert!(phi(&Octonion::one(), &o(1), &o(2)).is_err());
    }

    #[test]
    fn split_basis_round_trip() {
        for b in SplitBasis::ALL {
            let s = SplitOctonion::<Gaussian>::basis(b);
            let back = SplitOctonion::from_standard(&s.to_standard().unwrap()).unwrap();
            assert_eq!(back, s);
        }
        assert_eq!(SplitBasis::U(1).to_octonion::<Rational>(), Err(Error::NoSqrtNegOne));
    }

    #[test]
    fn subspace_classification() {
        let assoc = Subspace::from_octonions(&[o(1), o(2), o(3)]).unwrap().classify().unwrap();
        assert!(assoc.associative);
        let co = Subspace::from_octonions(&[o(4), o(5), o(6), o(7)]).unwrap().classify().unwrap();
        assert!(co.coassociative && !co.associative);
        let u1 = SplitBasis::U(1).to_octonion::<Gaussian>().unwrap();
        let v3 = SplitBasis::V(3).to_octonion::<Gaussian>().unwrap();
        let null = Subspace::from_octonions(&[u1, v3]).unwrap().classify().unwrap();
        assert!(null.null && null.isotropic);
        assert_eq!(Subspace::from_octonions(&[o(1), o(1)]), Err(Error::DependentBasis));
    }

    #[test]
    fn e_u_examples() {
        assert_eq!(e_u(&o(1)).unwrap(), Subspace::from_octonions(&[o(1)]).unwrap());
        assert_eq!(e_u(&o(1).scale(&crate::field::rational(2, 1))).unwrap(), e_u(&o(1)).unwrap());
        let g = |b| SplitBasis::to_octonion::<Gaussian>(b).unwrap();
        let k = e_u(&g(SplitBasis::U(1))).unwrap();
        let expected = Subspace::from_octonions(&[g(SplitBasis::U(1)), g(SplitBasis::V(2)), g(SplitBasis::V(3))]).unwrap();
        assert_eq!(k, expected);
        assert_eq!(e_u(&Octonion::<Q>::zero()), Err(Error::ZeroArgument));
    }
}
