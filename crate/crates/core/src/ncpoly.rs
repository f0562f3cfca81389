//! Noncommutative polynomials in `x1..x7`, the relations `r_i`, the superpotential `W`
//! and cyclic partial derivatives.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::fano_octonion::{eps0, Octonion};
use crate::field::Field;
use crate::linalg::Matrix;

/// A word in the letters `x1, x2, ...`, stored 0-based (`0` is `x1`).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: u8) -> Self {
        Word(vec![i])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Index of this word among all words of its length over `letters` letters
    /// (base-`letters` numeral, first letter most significant).
    pub fn rank_in_degree(&self, letters: usize) -> usize {
        self.0.iter().fold(0, |acc, &l| acc * letters + l as usize)
    }

    /// Inverse of [`Word::rank_in_degree`].
    pub fn from_rank(mut r: usize, degree: usize, letters: usize) -> Word {
        let mut v = vec![0u8; degree];
        for slot in v.iter_mut().rev() {
            *slot = (r % letters) as u8;
            r /= letters;
        }
        Word(v)
    }

    /// All words of a given length, in increasing order.
    pub fn all(degree: usize, letters: usize) -> impl Iterator<Item = Word> {
        let total = letters.pow(degree as u32);
        (0..total).map(move |r| Word::from_rank(r, degree, letters))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "x{}", l + 1)?;
        }
        Ok(())
    }
}

/// A noncommutative polynomial: a finite map from words to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NcPoly<F: Field> {
    terms: BTreeMap<Word, F>,
}

impl<F: Field> Default for NcPoly<F> {
    fn default() -> Self {
        NcPoly {
            terms: BTreeMap::new(),
        }
    }
}

impl<F: Field> NcPoly<F> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(Word::empty(), F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn term(w: Word, c: F) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, F::one())
    }

    /// The generator `x_{i+1}` (0-based `i`).
    pub fn var(i: u8) -> Self {
        Self::word(Word::letter(i))
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Word, F)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in it {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &F)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, F> {
        self.terms
    }

    pub fn coeff(&self, w: &Word) -> F {
        self.terms.get(w).cloned().unwrap_or_else(F::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest word with nonzero coefficient.
    pub fn leading(&self) -> Option<(&Word, &F)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<usize> {
        self.leading().map(|(w, _)| w.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|w| w.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn homogeneous_part(&self, d: usize) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(w, _)| w.degree() == d)
                .map(|(w, c)| (w.clone(), c.clone())),
        )
    }

    /// Largest letter index used, plus one.
    pub fn letters_used(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|w| w.0.iter())
            .map(|&l| l as usize + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (w, c) in &o.terms {
            p.add_term(w.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (w, c) in &o.terms {
            p.add_term(w.clone(), -c.clone());
        }
        p
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, a)| (w.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                p.add_term(a.concat(b), x.clone() * y.clone());
            }
        }
        p
    }

    pub fn mul_word_left(&self, w: &Word) -> Self {
        NcPoly {
            terms: self.terms.iter().map(|(v, c)| (w.concat(v), c.clone())).collect(),
        }
    }

    pub fn mul_word_right(&self, w: &Word) -> Self {
        NcPoly {
            terms: self.terms.iter().map(|(v, c)| (v.concat(w), c.clone())).collect(),
        }
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Reverses every word and negates; skew-symmetric quadratic tensors are fixed.
    pub fn swap_and_negate(&self) -> Self {
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.reversed(), -c.clone()))
                .collect(),
        }
    }

    /// Substitutes each letter `x_{j+1}` by `images[j]` (an algebra map of free algebras).
    pub fn substitute(&self, images: &[NcPoly<F>]) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut acc = Self::constant(c.clone());
            for &l in &w.0 {
                acc = acc.mul(&images[l as usize]);
            }
            out = out.add(&acc);
        }
        out
    }

    /// Applies the derivation determined by `images` on the generators.
    pub fn apply_derivation(&self, images: &[NcPoly<F>]) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            for k in 0..w.0.len() {
                let img = &images[w.0[k] as usize];
                if img.is_zero() {
                    continue;
                }
                let left = Word(w.0[..k].to_vec());
                let right = Word(w.0[k + 1..].to_vec());
                let t = img.mul_word_left(&left).mul_word_right(&right).scale(c);
                out = out.add(&t);
            }
        }
        out
    }

    /// Cyclic partial derivative `∂°_i`: for each occurrence `w = u x_i v` add `v u`.
    pub fn cyclic_derivative(&self, i: u8) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            for k in 0..w.0.len() {
                if w.0[k] == i {
                    let mut v = w.0[k + 1..].to_vec();
                    v.extend_from_slice(&w.0[..k]);
                    out.add_term(Word(v), c.clone());
                }
            }
        }
        out
    }

    /// Dense coefficient vector of a homogeneous polynomial of degree `d` over `letters` letters.
    pub fn coefficient_vector(&self, d: usize, letters: usize) -> Vec<F> {
        let mut v = vec![F::zero(); letters.pow(d as u32)];
        for (w, c) in &self.terms {
            if w.degree() == d {
                v[w.rank_in_degree(letters)] = c.clone();
            }
        }
        v
    }

    pub fn from_coefficient_vector(v: &[F], d: usize, letters: usize) -> Self {
        Self::from_terms(
            v.iter()
                .enumerate()
                .map(|(r, c)| (Word::from_rank(r, d, letters), c.clone())),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
}

impl<F: Field> fmt::Display for NcPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let (sign, mag) = match s.strip_prefix('-') {
                Some(m) => ("-", m.to_string()),
                None => ("+", s.clone()),
            };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if w.0.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

/// `r_i = Σ_{p,q} ε^{ipq} x_p x_q` for `i = 1..7` (returned 0-based).
pub fn relations_from_mu<F: Field>() -> Vec<NcPoly<F>> {
    (0..7)
        .map(|i| {
            let mut r = NcPoly::zero();
            for p in 0..7 {
                for q in 0..7 {
                    let e = eps0(i, p, q);
                    if e != 0 {
                        r.add_term(Word(vec![p as u8, q as u8]), F::from_i64(e as i64));
                    }
                }
            }
            r
        })
        .collect()
}

/// `r_u = Σ_t Im(o_t u) ⊗ o_t` under the identification `x_i ≡ o_i`.
pub fn relation_r_u<F: Field>(u: &Octonion<F>) -> Result<NcPoly<F>> {
    if !u.is_imaginary() {
        return Err(Error::NonzeroRealPart);
    }
    let mut r = NcPoly::zero();
    for t in 0..7 {
        let p = Octonion::unit0(t).mul(u);
        for l in 0..7 {
            r.add_term(Word(vec![l as u8, t as u8]), p.coeffs[l + 1].clone());
        }
    }
    Ok(r)
}

/// `W = Σ ε^{ijk} x_i x_j x_k`.
pub fn superpotential<F: Field>() -> NcPoly<F> {
    let mut w = NcPoly::zero();
    for i in 0..7 {
        for j in 0..7 {
            for k in 0..7 {
                let e = eps0(i, j, k);
                if e != 0 {
                    w.add_term(Word(vec![i as u8, j as u8, k as u8]), F::from_i64(e as i64));
                }
            }
        }
    }
    w
}

/// Permutes the letter positions of every degree-3 word by `sigma` (position `k` of the
/// result takes letter `sigma[k]` of the original).
pub fn permute_positions<F: Field>(p: &NcPoly<F>, sigma: [usize; 3]) -> NcPoly<F> {
    NcPoly::from_terms(p.terms().map(|(w, c)| {
        (Word(sigma.iter().map(|&s| w.0[s]).collect()), c.clone())
    }))
}

/// Rank of a homogeneous tensor of degree 2 (its 7x7 coefficient matrix) or degree 3 (the
/// map `(λ,μ) ↦ Σ c_{ijk} x_i λ(x_j) μ(x_k)`).
pub fn tensor_rank<F: Field>(p: &NcPoly<F>) -> Result<usize> {
    if p.is_zero() {
        return Ok(0);
    }
    if !p.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let letters = p.letters_used().max(7);
    match p.degree() {
        Some(2) => Ok(Matrix::from_fn(letters, letters, |i, j| {
            p.coeff(&Word(vec![i as u8, j as u8]))
        })
        .rank()),
        Some(3) => Ok(Matrix::from_fn(letters, letters * letters, |i, jk| {
            p.coeff(&Word(vec![i as u8, (jk / letters) as u8, (jk % letters) as u8]))
        })
        .rank()),
        Some(d) => Err(Error::UnsupportedDegree(d)),
        None => Ok(0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rational, Rational};

    type Q = Rational;

    fn x(i: u8) -> NcPoly<Q> {
        NcPoly::var(i - 1)
    }

    fn c(a: u8, b: u8) -> NcPoly<Q> {
        x(a).commutator(&x(b))
    }

    #[test]
    fn deg_lex_order() {
        assert!(Word(vec![6]) < Word(vec![0, 0]));
        assert!(Word(vec![0, 6]) < Word(vec![1, 0]));
        assert!(Word::empty() < Word(vec![0]));
    }

    #[test]
    fn relation_examples() {
        let r = relations_from_mu::<Q>();
        assert_eq!(r[0], c(2, 3).add(&c(4, 5)).add(&c(6, 7)));
        assert_eq!(r[4], c(1, 4).add(&c(2, 7)).add(&c(3, 6)));
        assert_eq!(r[2].swap_and_negate(), r[2]);
    }

    #[test]
    fn r_u_examples() {
        let r = relations_from_mu::<Q>();
        let o1 = Octonion::<Q>::unit(1).unwrap();
        let o2 = Octonion::<Q>::unit(2).unwrap();
        assert_eq!(relation_r_u(&o1).unwrap(), r[0]);
        assert!(relation_r_u(&Octonion::<Q>::zero()).unwrap().is_zero());
        assert_eq!(relation_r_u(&o1.add(&o2)).unwrap(), r[0].add(&r[1]));
        assert!(relation_r_u(&Octonion::<Q>::one()).is_err());
    }

    #[test]
    fn cyclic_derivative_examples() {
        let w = x(1).mul(&x(2)).mul(&x(3));
        assert_eq!(w.cyclic_derivative(0), x(2).mul(&x(3)));
        assert_eq!(w.cyclic_derivative(1), x(3).mul(&x(1)));
        let sp = superpotential::<Q>();
        let r = relations_from_mu::<Q>();
        // each of the three cyclic positions of a letter contributes one copy of r_i
        for i in 0..7 {
            assert_eq!(sp.cyclic_derivative(i as u8), r[i].scale(&rational(3, 1)));
        }
    }

    #[test]
    fn superpotential_examples() {
        let w = superpotential::<Q>();
        assert_eq!(w.len(), 42);
        assert_eq!(w.coeff(&Word(vec![0, 1, 2])), rational(1, 1));
        assert_eq!(w.coeff(&Word(vec![1, 0, 2])), rational(-1, 1));
    }

    #[test]
    fn rank_examples() {
        let r = relations_from_mu::<Q>();
        assert_eq!(tensor_rank(&superpotential::<Q>()).unwrap(), 7);
        assert_eq!(tensor_rank(&r[0]).unwrap(), 6);
        assert_eq!(tensor_rank(&c(1, 2)).unwrap(), 2);
        assert_eq!(tensor_rank(&x(1).add(&c(1, 2))), Err(Error::NotHomogeneous));
    }

    #[test]
    fn display_format() {
        let p = c(2, 3).add(&x(1).scale(&rational(1, 2)));
        assert_eq!(p.to_string(), "1/2*x1 + x2*x3 - x3*x2");
        assert_eq!(NcPoly::<Q>::zero().to_string(), "0");
    }
}
