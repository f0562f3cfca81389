//! The quadratic dual `A^!`, its Frobenius form, the Koszul resolution of the trivial
//! module and the bimodule resolution together with its self-duality.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fano_octonion::{form, Octonion};
use crate::field::{FBig, Field, Rational};
use crate::linalg::{sparse_from_pairs, Matrix, SparseEchelon};
use crate::ncpoly::{relations_from_mu, NcPoly, Word};
use crate::report::Report;
use crate::rewrite::{quotient_dims_linear, quotient_hilbert, Presentation, RewriteSystem};
use crate::series::{hilbert_a, koszul_functional_equation, TruncSeries};

/// Offsets of the graded pieces in the 16-element basis `1, ξ^1..ξ^7, η_1..η_7, ω`.
pub const DUAL_DIMS: [usize; 4] = [1, 7, 7, 1];
pub const DUAL_OFFSETS: [usize; 4] = [0, 1, 8, 15];
pub const DUAL_SIZE: usize = 16;

pub fn dual_degree(b: usize) -> usize {
    match b {
        0 => 0,
        1..=7 => 1,
        8..=14 => 2,
        _ => 3,
    }
}

pub fn dual_basis_name(b: usize) -> String {
    match dual_degree(b) {
        0 => "1".into(),
        1 => format!("xi{}", b),
        2 => format!("eta{}", b - 7),
        _ => "omega".into(),
    }
}

/// The graded algebra `A^!` with basis `1, ξ^1..ξ^7, η_1..η_7, ω` and structure constants
/// `table[a][b]` = coordinates of the product of basis elements `a` and `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualAlgebra<F: Field> {
    pub table: Vec<Vec<Vec<F>>>,
}

impl<F: Field> DualAlgebra<F> {
    fn empty() -> Self {
        DualAlgebra {
            table: vec![vec![vec![F::zero(); DUAL_SIZE]; DUAL_SIZE]; DUAL_SIZE],
        }
    }

    /// Products through octonion arithmetic: `ξ·ξ` is `Im(uv)` in `D_2 = Im O`, the
    /// pairings `D_1 × D_2` and `D_2 × D_1` are `⟨u,v⟩ ω`.
    pub fn from_octonions() -> Self {
        let mut d = Self::empty();
        for b in 0..DUAL_SIZE {
            d.table[0][b][b] = F::one();
            d.table[b][0][b] = F::one();
        }
        for a in 0..7 {
            let u = Octonion::<F>::unit0(a);
            for b in 0..7 {
                let v = Octonion::<F>::unit0(b);
                let p = u.mul(&v);
                for l in 0..7 {
                    d.table[1 + a][1 + b][8 + l] = p.coeffs[l + 1].clone();
                }
                let f = form(&u, &v);
                d.table[1 + a][8 + b][15] = f.clone();
                d.table[8 + b][1 + a][15] = f;
            }
        }
        d
    }

    /// The quadratic dual `T(V*)/(R^⊥)` built by linear algebra from the relations alone:
    /// `D_2 = R*` with basis dual to `r_1..r_7`, and `D_3` dual to the line
    /// `R⊗V ∩ V⊗R`, normalized so that `ξ^1ξ^2ξ^3 = ω`.
    pub fn from_relations(relations: &[NcPoly<F>]) -> Result<Self> {
        if relations.len() != 7 {
            return Err(Error::SizeMismatch("expected seven relations".into()));
        }
        let mut d = Self::empty();
        for b in 0..DUAL_SIZE {
            d.table[0][b][b] = F::one();
            d.table[b][0][b] = F::one();
        }
        let w2 = |p: usize, q: usize| Word(vec![p as u8, q as u8]);
        // (ξ^a ⊗ ξ^b)(r_l) is the coefficient of x_a x_b in r_l
        for a in 0..7 {
            for b in 0..7 {
                for (l, r) in relations.iter().enumerate() {
                    d.table[1 + a][1 + b][8 + l] = r.coeff(&w2(a, b));
                }
            }
        }
        let w = cubic_intersection(relations)?;
        let norm = w
            .coeff(&Word(vec![0, 1, 2]))
            .inv()
            .ok_or_else(|| Error::CheckFailed("x1x2x3 does not occur in R⊗V ∩ V⊗R".into()))?;
        let w = w.scale(&norm);
        // representatives ψ_l in V*⊗V* with ψ_l(r_m) = δ_lm
        let rel_matrix = Matrix::from_fn(7, 49, |l, j| relations[l].coeff(&w2(j / 7, j % 7)));
        let mut psi = Vec::new();
        for l in 0..7 {
            let mut target = vec![F::zero(); 7];
            target[l] = F::one();
            psi.push(rel_matrix.solve(&target).ok_or(Error::DependentBasis)?);
        }
        for a in 0..7 {
            for l in 0..7 {
                let mut left = F::zero();
                let mut right = F::zero();
                for j in 0..49 {
                    let (p, q) = (j / 7, j % 7);
                    left = left + psi[l][j].clone() * w.coeff(&Word(vec![a as u8, p as u8, q as u8]));
                    right = right + psi[l][j].clone() * w.coeff(&Word(vec![p as u8, q as u8, a as u8]));
                }
                d.table[1 + a][8 + l][15] = left;
                d.table[8 + l][1 + a][15] = right;
            }
        }
        Ok(d)
    }

    pub fn mul_basis(&self, a: usize, b: usize) -> &[F] {
        &self.table[a][b]
    }

    pub fn mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); DUAL_SIZE];
        for (a, xa) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for (c, t) in self.table[a][b].iter().enumerate() {
                    if !t.is_zero() {
                        out[c] = out[c].clone() + xa.clone() * yb.clone() * t.clone();
                    }
                }
            }
        }
        out
    }

    /// First basis triple on which the product is not associative.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        for a in 0..DUAL_SIZE {
            for b in 0..DUAL_SIZE {
                let ab = self.table[a][b].clone();
                for c in 0..DUAL_SIZE {
                    let left = self.mul(&ab, &unit_vec(c));
                    let right = self.mul(&unit_vec(a), &self.table[b][c]);
                    if left != right {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// First basis pair whose product leaves the expected degree.
    pub fn grading_failure(&self) -> Option<(usize, usize)> {
        for a in 0..DUAL_SIZE {
            for b in 0..DUAL_SIZE {
                let deg = dual_degree(a) + dual_degree(b);
                let ok = self.table[a][b]
                    .iter()
                    .enumerate()
                    .all(|(c, t)| t.is_zero() || dual_degree(c) == deg);
                if !ok {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

fn unit_vec<F: Field>(i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); DUAL_SIZE];
    v[i] = F::one();
    v
}

/// The intersection `R⊗V ∩ V⊗R` inside `V^{⊗3}`, required to be one-dimensional.
pub fn cubic_intersection<F: Field>(relations: &[NcPoly<F>]) -> Result<NcPoly<F>> {
    let n = relations.len();
    let x = |j: usize| NcPoly::<F>::var(j as u8);
    let mut columns = Vec::new();
    for r in relations {
        for j in 0..7 {
            columns.push(r.mul(&x(j)));
        }
    }
    for r in relations {
        for j in 0..7 {
            columns.push(x(j).mul(r).neg());
        }
    }
    // kernel of [R⊗V | -V⊗R]
    let m = Matrix::from_fn(343, columns.len(), |row, col| {
        columns[col].coeff(&Word::from_rank(row, 3, 7))
    });
    let kernel = m.nullspace();
    if kernel.len() != 1 {
        return Err(Error::CheckFailed(format!(
            "R⊗V ∩ V⊗R has dimension {}, expected 1",
            kernel.len()
        )));
    }
    let k = &kernel[0];
    let mut w = NcPoly::zero();
    for (c, col) in k.iter().zip(&columns).take(7 * n) {
        w = w.add(&col.scale(c));
    }
    Ok(w)
}

/// Dimension of `R^⊥ ∩ Λ²V*`.
pub fn perp_in_exterior_square<F: Field>(relations: &[NcPoly<F>]) -> usize {
    let pairs: Vec<(usize, usize)> = (0..7).flat_map(|a| (a + 1..7).map(move |b| (a, b))).collect();
    // (ξ^aξ^b - ξ^bξ^a)(r) = coeff_ab(r) - coeff_ba(r)
    let m = Matrix::from_fn(relations.len(), pairs.len(), |l, k| {
        let (a, b) = pairs[k];
        relations[l].coeff(&Word(vec![a as u8, b as u8])) - relations[l].coeff(&Word(vec![b as u8, a as u8]))
    });
    pairs.len() - m.rank()
}

/// Basis of `R^⊥ ⊂ V*⊗V*` as quadratic polynomials in the dual letters.
pub fn perp_relations<F: Field>(relations: &[NcPoly<F>]) -> Vec<NcPoly<F>> {
    let m = Matrix::from_fn(relations.len(), 49, |l, j| {
        relations[l].coeff(&Word::from_rank(j, 2, 7))
    });
    m.nullspace()
        .into_iter()
        .map(|v| NcPoly::from_coefficient_vector(&v, 2, 7))
        .collect()
}

/// The pairing `f(a,b)` = coefficient of `ω` in `ab` when degrees add to 3, else 0.
#[derive(Clone, Debug)]
pub struct FrobeniusForm<F: Field> {
    pub gram: Matrix<F>,
}

impl<F: Field> FrobeniusForm<F> {
    pub fn new(d: &DualAlgebra<F>) -> Self {
        let gram = Matrix::from_fn(DUAL_SIZE, DUAL_SIZE, |a, b| {
            if dual_degree(a) + dual_degree(b) == 3 {
                d.table[a][b][15].clone()
            } else {
                F::zero()
            }
        });
        FrobeniusForm { gram }
    }

    pub fn eval(&self, x: &[F], y: &[F]) -> F {
        let gy = self.gram.mul_vec(y);
        x.iter().zip(&gy).fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    /// `β(λ)`: the unique element with `f(β(λ), -) = λ`, for `λ` the dual basis functional of `b`.
    pub fn beta(&self, b: usize) -> Result<Vec<F>> {
        let mut target = vec![F::zero(); DUAL_SIZE];
        target[b] = F::one();
        self.gram.transpose().solve(&target).ok_or(Error::DependentBasis)
    }
}

/// Builds the form and checks nondegeneracy, symmetry on all pairs and associativity on all
/// basis triples.
pub fn frobenius_check<F: Field>(d: &DualAlgebra<F>) -> (FrobeniusForm<F>, Report) {
    let f = FrobeniusForm::new(d);
    let mut rep = Report::new("frobenius");
    let rank = f.gram.rank();
    rep.push("nondegenerate", rank == DUAL_SIZE, "the Frobenius pairing is nondegenerate", format!("Gram rank {rank}"));
    let symmetric = f.gram == f.gram.transpose();
    rep.push("symmetric", symmetric, "f(a,b) = f(b,a) on all basis pairs", "256 pairs");
    let mut assoc_fail = None;
    'outer: for a in 0..DUAL_SIZE {
        for b in 0..DUAL_SIZE {
            for c in 0..DUAL_SIZE {
                let l = f.eval(&d.table[a][b], &unit_vec(c));
                let r = f.eval(&unit_vec(a), &d.table[b][c]);
                if l != r {
                    assoc_fail = Some((a, b, c));
                    break 'outer;
                }
            }
        }
    }
    rep.push(
        "associative",
        assoc_fail.is_none(),
        "f(ab,c) = f(a,bc) on all basis triples",
        match assoc_fail {
            None => "4096 triples".to_string(),
            Some((a, b, c)) => format!("fails at ({}, {}, {})", dual_basis_name(a), dual_basis_name(b), dual_basis_name(c)),
        },
    );
    (f, rep)
}

/// Both constructions of `A^!`, compared, with the structural checks.
pub fn build_dual_checked<F: Field>() -> Result<(DualAlgebra<F>, Report)> {
    let relations = relations_from_mu::<F>();
    let oct = DualAlgebra::<F>::from_octonions();
    let lin = DualAlgebra::<F>::from_relations(&relations)?;
    let mut rep = Report::new("dual");
    rep.push("constructions-agree", oct == lin, "octonion and linear-algebra constructions of the dual agree", "all 4096 structure constants");
    let assoc = oct.associativity_failure();
    rep.push("associative", assoc.is_none(), "the dual algebra is associative", format!("{assoc:?}"));
    let grading = oct.grading_failure();
    rep.push("graded", grading.is_none(), "products respect the grading", format!("{grading:?}"));
    let perp14 = perp_in_exterior_square(&relations);
    rep.push("perp-exterior-14", perp14 == 14, "R^⊥ ∩ Λ²V* has dimension 14", format!("dimension {perp14}"));
    let dual_pres = Presentation {
        letters: 7,
        relations: perp_relations(&relations),
    };
    let dims = quotient_dims_linear(&dual_pres, 4)?;
    rep.push(
        "dual-hilbert",
        dims == [1, 7, 7, 1, 0],
        "T(V*)/(R^⊥) has dimensions 1,7,7,1,0",
        format!("{dims:?}"),
    );
    Ok((oct, rep))
}

/// Entries of the 7x7 matrix of the Koszul resolution, as printed: `±j` means `±x_j`.
pub const MATRIX_M_TABLE: [[i8; 7]; 7] = [
    [0, -3, 2, -5, 4, -7, 6],
    [3, 0, -1, -6, 7, 4, -5],
    [-2, 1, 0, 7, 6, -5, -4],
    [5, 6, -7, 0, -1, -2, 3],
    [-4, -7, -6, 1, 0, 3, 2],
    [7, -4, 5, 2, -3, 0, -1],
    [-6, 5, 4, -3, -2, 1, 0],
];

/// `M_iq = Σ_p ε^{ipq} x_p` as a 7x7 array of linear forms (coordinate vectors).
pub fn matrix_m<F: Field>() -> Vec<Vec<NcPoly<F>>> {
    (0..7)
        .map(|i| {
            (0..7)
                .map(|q| {
                    NcPoly::from_terms((0..7).filter_map(|p| {
                        let e = crate::fano_octonion::eps0(i, p, q);
                        (e != 0).then(|| (Word::letter(p as u8), F::from_i64(e as i64)))
                    }))
                })
                .collect()
        })
        .collect()
}

pub fn matrix_m_from_table<F: Field>() -> Vec<Vec<NcPoly<F>>> {
    MATRIX_M_TABLE
        .iter()
        .map(|row| {
            row.iter()
                .map(|&e| {
                    if e == 0 {
                        NcPoly::zero()
                    } else {
                        NcPoly::var(e.unsigned_abs() - 1).scale(&F::from_i64(e.signum() as i64))
                    }
                })
                .collect()
        })
        .collect()
}

/// Ranks of the three maps of the resolution in total degree `n`.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeRanks {
    pub degree: usize,
    pub dims: [u64; 4],
    pub rank_d1: u64,
    pub rank_d2: u64,
    pub rank_d3: u64,
    pub exact: bool,
}

/// Ranks of `A(-3) → A(-2)^7 → A(-1)^7 → A` in degree `n` over a prime field.
///
/// `d1` and `d3` are certified by unit submatrices: every normal word `u` of length `n` is
/// `w x_q` with `w` normal, and `a ↦ a x_7` sends normal words to distinct normal words
/// since no forbidden word ends in `x7`. The rank of `d2` comes from sparse elimination.
pub fn koszul_degree_ranks(sys: &RewriteSystem<FBig>, n: usize) -> Result<DegreeRanks> {
    let words: Vec<Vec<Word>> = (0..=n).map(|k| sys.normal_words(k)).collect();
    let dim = |k: isize| if k < 0 { 0 } else { words[k as usize].len() as u64 };
    let n_i = n as isize;
    let dims = [dim(n_i - 3), dim(n_i - 2), dim(n_i - 1), dim(n_i)];
    if sys.forbidden().iter().any(|w| w.0.last() == Some(&6)) {
        return Err(Error::CheckFailed("a forbidden word ends in x7".into()));
    }
    let rank_d1 = if n == 0 {
        0
    } else {
        words[n].iter().filter(|u| sys.is_normal(&u.0[..n - 1])).count() as u64
    };
    let rank_d3 = dims[0];
    let mut rank_d2 = 0u64;
    if n >= 2 {
        let index: HashMap<&Word, usize> = words[n - 1].iter().enumerate().map(|(k, w)| (w, k)).collect();
        let width = words[n - 1].len();
        let m = matrix_m::<FBig>();
        let mut cache: HashMap<(usize, usize), NcPoly<FBig>> = HashMap::new();
        let mut ech = SparseEchelon::<FBig>::new();
        for (wi, w) in words[n - 2].iter().enumerate() {
            for row in m.iter() {
                let mut pairs = Vec::new();
                for (q, entry) in row.iter().enumerate() {
                    for (letter, c) in entry.terms() {
                        let p = letter.0[0] as usize;
                        let nf = cache
                            .entry((wi, p))
                            .or_insert_with(|| sys.reduce_word(&w.concat(letter)));
                        for (v, d) in nf.terms() {
                            let k = *index.get(v).ok_or_else(|| Error::CheckFailed(format!("{v} is not normal")))?;
                            pairs.push((q * width + k, *c * *d));
                        }
                    }
                }
                if ech.insert(sparse_from_pairs(pairs)) {
                    rank_d2 += 1;
                }
            }
        }
    }
    let [a3, a2, a1, a0] = dims;
    let exact = if n == 0 {
        true
    } else {
        rank_d1 == a0 && rank_d3 == a3 && rank_d2 + rank_d1 == 7 * a1 && rank_d2 + rank_d3 == 7 * a2
    };
    Ok(DegreeRanks {
        degree: n,
        dims,
        rank_d1,
        rank_d2,
        rank_d3,
        exact,
    })
}

/// Checks the matrix identities, the complex property and exactness through `cap`.
pub fn koszul_complex_check(cap: usize) -> Result<Report> {
    let mut rep = Report::new("koszul");
    let m = matrix_m::<Rational>();
    let relations = relations_from_mu::<Rational>();
    let skew = (0..7).all(|i| (0..7).all(|q| m[i][q] == m[q][i].neg()));
    rep.push("m-skew", skew, "M is skew-symmetric", "");
    rep.push(
        "m-printed",
        m == matrix_m_from_table::<Rational>(),
        "M agrees with the printed matrix",
        "",
    );
    let x = |j: usize| NcPoly::<Rational>::var(j as u8);
    let mx: Vec<NcPoly<Rational>> = (0..7)
        .map(|i| (0..7).fold(NcPoly::zero(), |acc, q| acc.add(&m[i][q].mul(&x(q)))))
        .collect();
    let xm: Vec<NcPoly<Rational>> = (0..7)
        .map(|q| (0..7).fold(NcPoly::zero(), |acc, i| acc.add(&x(i).mul(&m[i][q]))))
        .collect();
    rep.push("m-times-x", mx == relations, "the entries of M x^T are r_1..r_7", "");
    rep.push("x-times-m", xm == relations, "the entries of x M are r_1..r_7", "");
    let sys = RewriteSystem::from_presentation(&Presentation::<Rational>::algebra_a())?;
    let composite_zero = mx.iter().chain(&xm).all(|r| sys.reduce(r).is_zero());
    rep.push("complex", composite_zero, "consecutive maps compose to zero in A", "normal forms of M x^T and x M");
    let order = 20;
    let h = hilbert_a(order);
    let fe = koszul_functional_equation(&h, &[1, 7, 7, 1]);
    rep.push(
        "functional-equation",
        fe.is_none(),
        "H_A(t) (1 - 7t + 7t^2 - t^3) = 1",
        match fe {
            None => format!("through t^{order}"),
            Some(k) => format!("fails at t^{k}"),
        },
    );
    let counts = sys.count_normal_words_upto(cap);
    let counts_series = TruncSeries::from_counts(&counts);
    let euler_fail = (0..=cap).find(|&n| {
        let c = |k: isize| if k < 0 { BigInt::from(0) } else { counts_series.coeff(k as usize) };
        let n = n as isize;
        let e = c(n) - 7 * c(n - 1) + 7 * c(n - 2) - c(n - 3);
        e != BigInt::from((n == 0) as i64)
    });
    rep.push("euler", euler_fail.is_none(), "the alternating sum of dimensions vanishes in each degree", format!("{euler_fail:?}"));
    let sys_p = RewriteSystem::from_presentation(&Presentation::<FBig>::algebra_a())?;
    let ranks: Vec<Result<DegreeRanks>> = std::thread::scope(|s| {
        let handles: Vec<_> = (1..=cap)
            .map(|n| {
                let sys_p = &sys_p;
                s.spawn(move || koszul_degree_ranks(sys_p, n))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("rank worker panicked")).collect()
    });
    for r in ranks {
        let r = r?;
        rep.push(
            &format!("exact-degree-{}", r.degree),
            r.exact,
            "the resolution is exact in this degree",
            format!(
                "dims (A_n-3..A_n) {:?}; ranks d1 {} d2 {} d3 {} (d2 over F_p, which bounds the rational rank from below)",
                r.dims, r.rank_d1, r.rank_d2, r.rank_d3
            ),
        );
    }
    Ok(rep)
}

/// An element of `A ⊗ X ⊗ A` with `X` one graded piece of `A^!` or its dual, keyed by
/// (left word, middle basis index, right word).
pub type BimodElem<F> = BTreeMap<(Word, usize, Word), F>;

fn bimod_add<F: Field>(m: &mut BimodElem<F>, key: (Word, usize, Word), c: F) {
    if c.is_zero() {
        return;
    }
    let e = m.entry(key.clone()).or_insert_with(F::zero);
    *e = e.clone() + c;
    if e.is_zero() {
        m.remove(&key);
    }
}

fn bimod_normalize<F: Field>(sys: &RewriteSystem<F>, m: &BimodElem<F>) -> BimodElem<F> {
    let mut out = BTreeMap::new();
    for ((a, mid, b), c) in m {
        let na = sys.reduce_word(a);
        let nb = sys.reduce_word(b);
        for (u, cu) in na.terms() {
            for (v, cv) in nb.terms() {
                bimod_add(&mut out, (u.clone(), *mid, v.clone()), c.clone() * cu.clone() * cv.clone());
            }
        }
    }
    out
}

fn basis_of_degree(n: usize) -> std::ops::Range<usize> {
    DUAL_OFFSETS[n]..DUAL_OFFSETS[n] + DUAL_DIMS[n]
}

/// `d_n` on `P_n = A ⊗ (A^!_n)* ⊗ A`, using `(tξ)(y) = t(ξy)` and `(ξt)(y) = t(yξ)`.
pub fn d_bimod<F: Field>(d: &DualAlgebra<F>, n: usize, elem: &BimodElem<F>) -> BimodElem<F> {
    let sign = if n % 2 == 0 { F::one() } else { -F::one() };
    let mut out = BTreeMap::new();
    for ((a, t, b), c) in elem {
        for i in 0..7 {
            let xi = 1 + i;
            let xw = Word::letter(i as u8);
            for y in basis_of_degree(n - 1) {
                let right = d.table[xi][y][*t].clone();
                bimod_add(&mut out, (a.concat(&xw), y, b.clone()), c.clone() * right);
                let left = d.table[y][xi][*t].clone();
                bimod_add(&mut out, (a.clone(), y, xw.concat(b)), sign.clone() * c.clone() * left);
            }
        }
    }
    out
}

/// `d_n^∨` from `A ⊗ A^!_{n-1} ⊗ A` to `A ⊗ A^!_n ⊗ A`.
pub fn d_bimod_dual<F: Field>(d: &DualAlgebra<F>, n: usize, elem: &BimodElem<F>) -> BimodElem<F> {
    let sign = if n % 2 == 0 { F::one() } else { -F::one() };
    let mut out = BTreeMap::new();
    for ((u, tau, v), c) in elem {
        for i in 0..7 {
            let xi = 1 + i;
            let xw = Word::letter(i as u8);
            for (z, coef) in d.table[xi][*tau].iter().enumerate() {
                bimod_add(&mut out, (u.clone(), z, xw.concat(v)), c.clone() * coef.clone());
            }
            for (z, coef) in d.table[*tau][xi].iter().enumerate() {
                bimod_add(&mut out, (u.concat(&xw), z, v.clone()), sign.clone() * c.clone() * coef.clone());
            }
        }
    }
    out
}

/// Sign of `α_n`: `-1` for `n ≡ 0,1 (mod 4)`, `+1` for `n ≡ 2,3`.
pub fn alpha_sign(n: usize) -> i64 {
    if n % 4 < 2 {
        -1
    } else {
        1
    }
}

/// `α_n = ±(id ⊗ β_n ⊗ id)`.
pub fn alpha<F: Field>(f: &FrobeniusForm<F>, n: usize, elem: &BimodElem<F>) -> Result<BimodElem<F>> {
    let s = F::from_i64(alpha_sign(n));
    let mut out = BTreeMap::new();
    for ((a, t, b), c) in elem {
        let image = f.beta(*t)?;
        for (z, coef) in image.iter().enumerate() {
            bimod_add(&mut out, (a.clone(), z, b.clone()), s.clone() * c.clone() * coef.clone());
        }
    }
    Ok(out)
}

fn generator<F: Field>(t: usize) -> BimodElem<F> {
    let mut m = BTreeMap::new();
    m.insert((Word::empty(), t, Word::empty()), F::one());
    m
}

/// `d∘d = 0` and the commuting squares of the self-duality diagram, on the generators
/// `1 ⊗ t ⊗ 1` (bilinearity extends the statements to all of `P_n`).
pub fn bimodule_complex_check() -> Result<Report> {
    let d = DualAlgebra::<Rational>::from_octonions();
    let f = FrobeniusForm::new(&d);
    let sys = RewriteSystem::from_presentation(&Presentation::<Rational>::algebra_a())?;
    let mut rep = Report::new("bimodule");
    for n in [2usize, 3] {
        let bad: Vec<String> = basis_of_degree(n)
            .filter(|&t| {
                let once = d_bimod(&d, n, &generator(t));
                !bimod_normalize(&sys, &d_bimod(&d, n - 1, &once)).is_empty()
            })
            .map(dual_basis_name)
            .collect();
        rep.push(
            &format!("d{}-d{}", n - 1, n),
            bad.is_empty(),
            "consecutive bimodule differentials compose to zero (checked on generators 1⊗t⊗1)",
            if bad.is_empty() { String::new() } else { format!("nonzero on {bad:?}") },
        );
    }
    for n in [2usize, 3] {
        let bad: Vec<String> = basis_of_degree(3 - n)
            .filter(|&tau| {
                let once = d_bimod_dual(&d, 4 - n, &generator(tau));
                !bimod_normalize(&sys, &d_bimod_dual(&d, 5 - n, &once)).is_empty()
            })
            .map(dual_basis_name)
            .collect();
        rep.push(
            &format!("dual-d{}-d{}", 4 - n, 5 - n),
            bad.is_empty(),
            "consecutive dual differentials compose to zero (checked on generators)",
            if bad.is_empty() { String::new() } else { format!("nonzero on {bad:?}") },
        );
    }
    for n in 1..=3usize {
        let mut bad = Vec::new();
        for t in basis_of_degree(n) {
            let g = generator(t);
            let top = alpha(&f, n - 1, &d_bimod(&d, n, &g))?;
            let mut bottom = d_bimod_dual(&d, 4 - n, &alpha(&f, n, &g)?);
            for c in bottom.values_mut() {
                *c = -c.clone();
            }
            if bimod_normalize(&sys, &top) != bimod_normalize(&sys, &bottom) {
                bad.push(dual_basis_name(t));
            }
        }
        rep.push(
            &format!("square-{n}"),
            bad.is_empty(),
            "alpha_{n-1} d_n = -d_{4-n}^dual alpha_n (checked on generators 1⊗t⊗1)",
            if bad.is_empty() {
                format!("alpha_{} sign {:+}, alpha_{} sign {:+}", n, alpha_sign(n), n - 1, alpha_sign(n - 1))
            } else {
                format!("fails on {bad:?}")
            },
        );
    }
    Ok(rep)
}

/// `A/(x5,x6,x7)` is a polynomial ring in four variables, and `(1-t)^{-4}` is not
/// `p(t) H_A(t)` for any polynomial `p` of degree `≤ max_deg`: the equations through
/// `t^order` have no solution.
pub fn not_noetherian_certificate(max_deg: usize, order: usize) -> Result<Report> {
    let mut rep = Report::new("not-noetherian");
    let e = |k: usize| {
        let mut v = vec![Rational::zero(); 7];
        v[k] = Rational::one();
        v
    };
    let q = quotient_hilbert::<Rational>(&[e(4), e(5), e(6)], max_deg)?;
    let binom: Vec<u64> = (0..=max_deg as u64).map(|n| (n + 1) * (n + 2) * (n + 3) / 6).collect();
    let got: Vec<u64> = q.coeffs.iter().map(|c| c.try_into().unwrap_or(u64::MAX)).collect();
    rep.push(
        "quotient-polynomial-ring",
        got == binom,
        "A/(x5,x6,x7) has the Hilbert series of a polynomial ring in four variables",
        format!("{got:?} ({:?})", q.certification),
    );
    let infeasible = polynomial_multiplier_exists(max_deg, order).is_none();
    rep.push(
        "no-polynomial-multiplier",
        infeasible,
        "no polynomial p(t) satisfies (1-t)^-4 = p(t) H_A(t)",
        format!("degree ≤ {max_deg}, equations through t^{order}"),
    );
    Ok(rep)
}

/// Solves `p(t) H_A(t) ≡ (1-t)^{-4} mod t^{order+1}` for `p` of degree `≤ max_deg`.
pub fn polynomial_multiplier_exists(max_deg: usize, order: usize) -> Option<Vec<Rational>> {
    let h = hilbert_a(order);
    let target: Vec<Rational> = (0..=order as i64)
        .map(|n| Rational::from_integer(BigInt::from((n + 1) * (n + 2) * (n + 3) / 6)))
        .collect();
    let m = Matrix::from_fn(order + 1, max_deg + 1, |row, col| {
        if col <= row {
            Rational::from_integer(h.coeff(row - col))
        } else {
            Rational::zero()
        }
    });
    m.solve(&target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fano_octonion::phi;

    type Q = Rational;

    fn coords(d: &DualAlgebra<Q>, a: usize, b: usize) -> Vec<(usize, Q)> {
        d.mul_basis(a, b)
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.clone()))
            .collect()
    }

    #[test]
    fn dual_products() {
        let d = DualAlgebra::<Q>::from_octonions();
        // ξ^1 ξ^2 = η_3
        assert_eq!(coords(&d, 1, 2), vec![(10, Q::one())]);
        assert!(coords(&d, 1, 1).is_empty());
        let x12 = d.mul(&unit_vec(1), &unit_vec(2));
        let x123 = d.mul(&x12, &unit_vec(3));
        assert_eq!(x123, unit_vec(15));
    }

    #[test]
    fn triple_products_are_phi() {
        let d = DualAlgebra::<Q>::from_octonions();
        for a in 0..7 {
            for b in 0..7 {
                for c in 0..7 {
                    let ab = d.mul(&unit_vec(1 + a), &unit_vec(1 + b));
                    let abc = d.mul(&ab, &unit_vec(1 + c));
                    let expected = phi(&Octonion::unit0(a), &Octonion::unit0(b), &Octonion::unit0(c)).unwrap();
                    assert_eq!(abc[15], expected);
                }
            }
        }
    }

    #[test]
    fn two_constructions_agree() {
        let (_, rep) = build_dual_checked::<Q>().unwrap();
        assert!(rep.passed(), "{:?}", rep.failures());
    }

    #[test]
    fn frobenius() {
        let d = DualAlgebra::<Q>::from_octonions();
        let (f, rep) = frobenius_check(&d);
        assert!(rep.passed(), "{:?}", rep.failures());
        assert_eq!(f.gram.rank(), 16);
        // f(ξ^1, ξ^2 ξ^3) = f(ξ^1 ξ^2, ξ^3) = 1
        let l = f.eval(&unit_vec(1), &d.mul(&unit_vec(2), &unit_vec(3)));
        let r = f.eval(&d.mul(&unit_vec(1), &unit_vec(2)), &unit_vec(3));
        assert_eq!(l, Q::one());
        assert_eq!(r, Q::one());
        assert!(f.eval(&unit_vec(1), &unit_vec(2)).is_zero());
        // β sends the dual of ξ^a to η_a and the dual of 1 to ω
        let mut eta1 = vec![Q::zero(); 16];
        eta1[8] = Q::one();
        assert_eq!(f.beta(1).unwrap(), eta1);
        assert_eq!(f.beta(0).unwrap(), unit_vec(15));
    }

    #[test]
    fn r4_from_matrix() {
        let m = matrix_m::<Q>();
        let x = |j: usize| NcPoly::<Q>::var(j as u8);
        let r4 = (0..7).fold(NcPoly::zero(), |acc, q| acc.add(&m[3][q].mul(&x(q))));
        let expected = crate::parse::parse_poly::<Q>("[x5,x1]+[x3,x7]+[x6,x2]").unwrap();
        assert_eq!(r4, expected);
    }

    #[test]
    fn koszul_low_degrees() {
        let rep = koszul_complex_check(4).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures());
    }

    #[test]
    fn euler_at_three() {
        let h = hilbert_a(3);
        let e = h.coeff(3) - 7 * h.coeff(2) + 7 * h.coeff(1) - h.coeff(0);
        assert_eq!(e, BigInt::from(0));
    }

    #[test]
    fn bimodule() {
        let rep = bimodule_complex_check().unwrap();
        assert!(rep.passed(), "{:?}", rep.failures());
        assert_eq!(alpha_sign(2), 1);
        assert_eq!(alpha_sign(0), -1);
        let d = DualAlgebra::<Q>::from_octonions();
        let image = d_bimod(&d, 3, &generator(15));
        // d_3(1⊗ω*⊗1) = Σ x_i⊗(ξ^i)*-dual terms on both sides: 7 left and 7 right
        assert_eq!(image.len(), 14);
    }

    #[test]
    fn koszul_degree_six() {
        let rep = koszul_complex_check(6).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn not_noetherian() {
        let rep = not_noetherian_certificate(8, 20).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures());
        // square systems are always solvable; a constant already fails at t^1
        assert!(polynomial_multiplier_exists(8, 8).is_some());
        assert!(polynomial_multiplier_exists(0, 1).is_none());
    }
}
