//! Structure of `A`: the one-relator subalgebra `B`, the Ore extension `A = B[x7; δ]`,
//! the 21 linear derivations and their 14-dimensional span, the invariants
//! `x1²+…+x7²` and `Q`, and the tensor-rank facts about relations.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fano_octonion::LINES;
use crate::field::{Field, Gaussian, Rational};
use crate::linalg::{generated_algebra_dim, minimal_polynomial_degree, Matrix};
use crate::ncpoly::{relations_from_mu, tensor_rank, NcPoly, Word};
use crate::parse::parse_poly;
use crate::report::Report;
use crate::rewrite::{Presentation, RewriteSystem};
use crate::series::{hilbert_a, hilbert_b, TruncSeries};

type Q = Rational;

fn x<F: Field>(i: u8) -> NcPoly<F> {
    NcPoly::var(i - 1)
}

fn br<F: Field>(a: u8, b: u8) -> NcPoly<F> {
    x::<F>(a).commutator(&x(b))
}

/// The relation `[x1,x6]+[x5,x2]+[x4,x3]` of `B`.
pub fn b_relation<F: Field>() -> NcPoly<F> {
    br::<F>(1, 6).add(&br(5, 2)).add(&br(4, 3))
}

/// The derivation `δ` of `k<x1..x6>` with `[x7, x_i] = δ(x_i)` in `A`.
pub fn ore_delta<F: Field>() -> Vec<NcPoly<F>> {
    vec![
        br::<F>(4, 2).add(&br(3, 5)),
        br::<F>(1, 4).add(&br(3, 6)),
        br::<F>(5, 1).add(&br(6, 2)),
        br::<F>(2, 1).add(&br(5, 6)),
        br::<F>(1, 3).add(&br(6, 4)),
        br::<F>(2, 3).add(&br(4, 5)),
    ]
}

/// Rewrite system of `B` together with a report on its Hilbert series and its embedding in `A`.
pub fn build_b(n_max: usize) -> Result<(RewriteSystem<Q>, Report)> {
    let sys = RewriteSystem::from_presentation(&Presentation::<Q>::algebra_b())?;
    let mut rep = Report::new("b");
    let forbidden: Vec<String> = sys.forbidden().iter().map(|w| w.to_string()).collect();
    rep.push(
        "one-rule",
        forbidden == ["x6*x1"],
        "B has a single rewrite rule, for x6x1",
        format!("{forbidden:?}"),
    );
    rep.push("confluent", sys.is_confluent(), "the rule of B has no unresolvable ambiguity", "");
    let counts = TruncSeries::from_counts(&sys.count_normal_words_upto(n_max));
    let diff = counts.first_difference(&hilbert_b(n_max));
    rep.push(
        "hilbert",
        diff.is_none(),
        "H_B = 1/(1-6t+t^2)",
        format!("{:?} through t^{n_max}", counts.to_strings()),
    );
    let brute_ok = (0..=n_max.min(6)).all(|n| counts.coeff(n) == sys.count_normal_words_brute(n).into());
    rep.push("brute-force", brute_ok, "automaton counts agree with enumeration", format!("through degree {}", n_max.min(6)));
    let a_sys = RewriteSystem::from_presentation(&Presentation::<Q>::algebra_a())?;
    let embed = (0..=n_max.min(6)).all(|n| sys.normal_words(n).iter().all(|w| a_sys.is_normal(&w.0)));
    rep.push(
        "embedding",
        embed,
        "normal words of B are normal words of A, so B embeds in A",
        format!("through degree {}", n_max.min(6)),
    );
    let ha = hilbert_a(n_max);
    let via_b = hilbert_b(n_max).mul(&TruncSeries::from_i64(&vec![1; n_max + 1], n_max));
    rep.push(
        "series-relation",
        ha.first_difference(&via_b).is_none(),
        "H_A = H_B / (1-t)",
        format!("through t^{n_max}"),
    );
    Ok((sys, rep))
}

/// The Ore derivation kills the relation of `B` in the free algebra, and the relations of `A`
/// are `[x7, x_i] - δ(x_i)` (up to sign) together with the relation of `B`.
pub fn ore_delta_check(seed: u64) -> Result<Report> {
    let mut rep = Report::new("ore");
    let mut delta = ore_delta::<Q>();
    let rel = b_relation::<Q>();
    let image = rel.apply_derivation(&delta);
    rep.push("kills-relation", image.is_zero(), "δ of the relation of B is zero in the free algebra", image.to_string());
    let relations = relations_from_mu::<Q>();
    let mut matched = Vec::new();
    for i in 0..6u8 {
        let e = br::<Q>(7, i + 1).sub(&delta[i as usize]);
        let hit = relations
            .iter()
            .enumerate()
            .find(|(_, r)| **r == e || r.neg() == e)
            .map(|(k, r)| (k + 1, if *r == e { 1 } else { -1 }));
        matched.push(hit);
    }
    let mut indices: Vec<usize> = matched.iter().flatten().map(|(k, _)| *k).collect();
    indices.sort_unstable();
    indices.dedup();
    let seventh = relations.iter().position(|r| *r == rel || r.neg() == rel);
    let ok = matched.iter().all(Option::is_some) && indices.len() == 6 && seventh.is_some() && !indices.contains(&(seventh.unwrap_or(0) + 1));
    rep.push(
        "presentation",
        ok,
        "A is B with x7 adjoined subject to [x7, b] = δ(b)",
        format!(
            "[x7,x_i] - δ(x_i) = {}; B relation = r{}",
            matched
                .iter()
                .enumerate()
                .map(|(i, m)| match m {
                    Some((k, s)) => format!("x{}: {}r{}", i + 1, if *s > 0 { "+" } else { "-" }, k),
                    None => format!("x{}: none", i + 1),
                })
                .collect::<Vec<_>>()
                .join(", "),
            seventh.map(|k| k + 1).unwrap_or(0)
        ),
    );
    // δ is extended by zero on x7 so that it acts on 7-letter words
    delta.push(NcPoly::zero());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let leibniz = (0..200).all(|_| {
        let a = random_poly(&mut rng, 6, 2);
        let b = random_poly(&mut rng, 6, 2);
        a.mul(&b).apply_derivation(&delta) == a.apply_derivation(&delta).mul(&b).add(&a.mul(&b.apply_derivation(&delta)))
    });
    rep.push_sampled("leibniz", leibniz, "δ(ab) = δ(a)b + aδ(b)", "200 random pairs in B");
    Ok(rep)
}

fn random_poly<F: Field>(rng: &mut ChaCha8Rng, letters: u8, max_deg: usize) -> NcPoly<F> {
    use rand::Rng;
    let mut p = NcPoly::zero();
    for _ in 0..4 {
        let d = rng.gen_range(0..=max_deg);
        let w = Word((0..d).map(|_| rng.gen_range(0..letters)).collect());
        p.add_term(w, F::random(rng, 3));
    }
    p
}

/// One row of the derivation table: the three directed lines through `i` and the images
/// of `x1..x7`, where `±k` stands for `±x_k` and `0` for zero.
#[derive(Clone, Copy, Debug)]
pub struct DerivationRow {
    pub ijk: [u8; 3],
    pub ipq: [u8; 3],
    pub irs: [u8; 3],
    pub images: [i8; 7],
}

impl DerivationRow {
    /// The pair `jk` naming the derivation.
    pub fn name(&self) -> (u8, u8) {
        (self.ijk[1], self.ijk[2])
    }
}

const fn row(ijk: [u8; 3], ipq: [u8; 3], irs: [u8; 3], images: [i8; 7]) -> DerivationRow {
    DerivationRow { ijk, ipq, irs, images }
}

pub const DERIVATION_TABLE: [DerivationRow; 21] = [
    row([1, 2, 3], [1, 4, 5], [1, 6, 7], [0, 0, 0, 5, -4, -7, 6]),
    row([1, 4, 5], [1, 6, 7], [1, 2, 3], [0, -3, 2, 0, 0, 7, -6]),
    row([1, 6, 7], [1, 2, 3], [1, 4, 5], [0, 3, -2, -5, 4, 0, 0]),
    row([2, 3, 1], [2, 7, 5], [2, 4, 6], [0, 0, 0, -6, -7, 4, 5]),
    row([2, 4, 6], [2, 3, 1], [2, 7, 5], [-3, 0, 1, 0, 7, 0, -5]),
    row([2, 7, 5], [2, 4, 6], [2, 3, 1], [3, 0, -1, 6, 0, -4, 0]),
    row([3, 1, 2], [3, 6, 5], [3, 7, 4], [0, 0, 0, 7, -6, 5, -4]),
    row([3, 6, 5], [3, 7, 4], [3, 1, 2], [-2, 1, 0, -7, 0, 0, 4]),
    row([3, 7, 4], [3, 1, 2], [3, 6, 5], [2, -1, 0, 0, 6, -5, 0]),
    row([4, 5, 1], [4, 3, 7], [4, 6, 2], [0, 6, 7, 0, 0, -2, -3]),
    row([4, 3, 7], [4, 6, 2], [4, 5, 1], [5, -6, 0, 0, -1, 2, 0]),
    row([4, 6, 2], [4, 5, 1], [4, 3, 7], [-5, 0, -7, 0, 1, 0, 3]),
    row([5, 1, 4], [5, 2, 7], [5, 3, 6], [0, 7, -6, 0, 0, 3, -2]),
    row([5, 2, 7], [5, 3, 6], [5, 1, 4], [-4, 0, 6, 1, 0, -3, 0]),
    row([5, 3, 6], [5, 1, 4], [5, 2, 7], [4, -7, 0, -1, 0, 0, 2]),
    row([6, 7, 1], [6, 5, 3], [6, 2, 4], [0, -4, -5, 2, 3, 0, 0]),
    row([6, 5, 3], [6, 2, 4], [6, 7, 1], [7, 4, 0, -2, 0, 0, -1]),
    row([6, 2, 4], [6, 7, 1], [6, 5, 3], [-7, 0, 5, 0, -3, 0, 1]),
    row([7, 1, 6], [7, 4, 3], [7, 5, 2], [0, 5, -4, 3, -2, 0, 0]),
    row([7, 5, 2], [7, 1, 6], [7, 4, 3], [6, 0, 4, -3, 0, -1, 0]),
    row([7, 4, 3], [7, 5, 2], [7, 1, 6], [-6, -5, 0, 0, 2, 1, 0]),
];

/// The seven linear relations `δ_jk + δ_pq + δ_rs = 0`, by name.
pub const DERIVATION_RELATIONS: [[(u8, u8); 3]; 7] = [
    [(2, 3), (4, 5), (6, 7)],
    [(3, 1), (4, 6), (7, 5)],
    [(1, 6), (4, 3), (5, 2)],
    [(1, 2), (6, 5), (7, 4)],
    [(5, 1), (3, 7), (6, 2)],
    [(7, 1), (5, 3), (2, 4)],
    [(1, 4), (2, 7), (3, 6)],
];

/// A degree-preserving linear derivation, stored as the 7x7 matrix whose column `j` holds
/// the coordinates of the image of `x_{j+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    pub name: (u8, u8),
    pub matrix: Matrix<Q>,
}

impl Derivation {
    pub fn from_row(r: &DerivationRow) -> Self {
        let matrix = Matrix::from_fn(7, 7, |k, j| {
            let e = r.images[j];
            if e != 0 && (e.unsigned_abs() as usize) == k + 1 {
                Q::from_i64(e.signum() as i64)
            } else {
                Q::from_i64(0)
            }
        });
        Derivation { name: r.name(), matrix }
    }

    pub fn images(&self) -> Vec<NcPoly<Q>> {
        (0..7)
            .map(|j| NcPoly::from_terms((0..7).map(|k| (Word::letter(k as u8), self.matrix[(k, j)].clone()))))
            .collect()
    }

    pub fn apply(&self, p: &NcPoly<Q>) -> NcPoly<Q> {
        p.apply_derivation(&self.images())
    }

    pub fn label(&self) -> String {
        format!("d{}{}", self.name.0, self.name.1)
    }
}

pub fn build_derivations() -> Vec<Derivation> {
    DERIVATION_TABLE.iter().map(Derivation::from_row).collect()
}

fn derivation_by_name(ders: &[Derivation]) -> HashMap<(u8, u8), &Derivation> {
    ders.iter().map(|d| (d.name, d)).collect()
}

fn is_directed_line(t: [u8; 3]) -> bool {
    LINES.iter().any(|l| {
        let l = [l[0] as u8, l[1] as u8, l[2] as u8];
        (0..3).any(|s| [l[s], l[(s + 1) % 3], l[(s + 2) % 3]] == t)
    })
}

fn flatten(m: &Matrix<Q>) -> Vec<Q> {
    (0..7).flat_map(|i| (0..7).map(move |j| (i, j))).map(|(i, j)| m[(i, j)].clone()).collect()
}

/// Each row realizes the pattern `x_p ↦ x_q, x_q ↦ -x_p, x_r ↦ -x_s, x_s ↦ x_r` on directed
/// lines `ijk, ipq, irs, jpr`; each `δ` maps every relation into the span of the relations;
/// the span has dimension 14 and satisfies the seven listed linear relations.
pub fn derivations_check() -> Result<Report> {
    let ders = build_derivations();
    let mut rep = Report::new("derivations");
    let pattern_bad: Vec<String> = DERIVATION_TABLE
        .iter()
        .filter(|r| {
            let [i, j, _k] = r.ijk;
            let [i2, p, q] = r.ipq;
            let [i3, rr, s] = r.irs;
            let lines_ok = i == i2
                && i == i3
                && is_directed_line(r.ijk)
                && is_directed_line(r.ipq)
                && is_directed_line(r.irs)
                && is_directed_line([j, p, rr]);
            let mut expected = [0i8; 7];
            expected[p as usize - 1] = q as i8;
            expected[q as usize - 1] = -(p as i8);
            expected[rr as usize - 1] = -(s as i8);
            expected[s as usize - 1] = rr as i8;
            !(lines_ok && expected == r.images)
        })
        .map(|r| format!("d{}{}", r.name().0, r.name().1))
        .collect();
    rep.push(
        "table-pattern",
        pattern_bad.is_empty(),
        "every table row follows the labelling pattern on directed lines",
        format!("{pattern_bad:?}"),
    );
    let names: Vec<(u8, u8)> = ders.iter().map(|d| d.name).collect();
    let mut expected_names: Vec<(u8, u8)> = LINES
        .iter()
        .flat_map(|l| {
            let l = [l[0] as u8, l[1] as u8, l[2] as u8];
            [(l[0], l[1]), (l[1], l[2]), (l[2], l[0])]
        })
        .collect();
    let mut sorted = names.clone();
    sorted.sort_unstable();
    expected_names.sort_unstable();
    rep.push("arrows", sorted == expected_names, "the 21 derivations are indexed by the 21 arrows", "");
    let relations = relations_from_mu::<Q>();
    let rel_matrix = Matrix::from_fn(49, 7, |row, l| relations[l].coeff(&Word::from_rank(row, 2, 7)));
    let not_derivation: Vec<String> = ders
        .iter()
        .filter(|d| {
            relations
                .iter()
                .any(|r| rel_matrix.solve(&d.apply(r).coefficient_vector(2, 7)).is_none())
        })
        .map(Derivation::label)
        .collect();
    rep.push(
        "preserve-relations",
        not_derivation.is_empty(),
        "each δ maps every relation into the span of the relations",
        format!("failures {not_derivation:?}"),
    );
    let span_rank = Matrix::from_rows(ders.iter().map(|d| flatten(&d.matrix)).collect()).rank();
    rep.push("span-14", span_rank == 14, "the 21 derivations span a 14-dimensional space", format!("rank {span_rank}"));
    let by_name = derivation_by_name(&ders);
    let linear_bad: Vec<String> = DERIVATION_RELATIONS
        .iter()
        .filter(|triple| {
            let sum = triple
                .iter()
                .fold(Matrix::zeros(7, 7), |acc: Matrix<Q>, n| acc.add(&by_name[n].matrix));
            !sum.is_zero()
        })
        .map(|t| format!("{t:?}"))
        .collect();
    rep.push(
        "linear-relations",
        linear_bad.is_empty(),
        "δ_jk + δ_pq + δ_rs = 0 for the seven listed triples",
        format!("failures {linear_bad:?}"),
    );
    let derivation_space = all_graded_derivations_dim();
    let mut with_euler: Vec<Vec<Q>> = ders.iter().map(|d| flatten(&d.matrix)).collect();
    with_euler.push(flatten(&Matrix::identity(7)));
    let with_euler_rank = crate::linalg::rank_of_vectors(&with_euler);
    rep.push(
        "all-derivations",
        derivation_space == 15 && with_euler_rank == 15,
        "every degree-preserving derivation of A is a combination of the 21 and the Euler derivation",
        format!("solution space dimension {derivation_space}; span of the 21 and the identity {with_euler_rank}"),
    );
    Ok(rep)
}

/// Dimension of the space of 7x7 matrices `D` whose derivation maps the relation space
/// into itself, solved directly as a linear system.
pub fn all_graded_derivations_dim() -> usize {
    let relations = relations_from_mu::<Q>();
    let basis = Matrix::from_fn(49, 7, |row, l| relations[l].coeff(&Word::from_rank(row, 2, 7)));
    // projector onto the complement: rows of a matrix annihilating span R
    let annihilator = basis.transpose().nullspace();
    // unknown D_{kj} (49 entries); condition: annihilator · vec(δ_D(r_i)) = 0 for all i
    let mut rows = Vec::new();
    for r in &relations {
        let columns: Vec<Vec<Q>> = (0..49)
            .map(|e| {
                let (k, j) = (e / 7, e % 7);
                let mut images = vec![NcPoly::zero(); 7];
                images[j] = NcPoly::var(k as u8);
                r.apply_derivation(&images).coefficient_vector(2, 7)
            })
            .collect();
        for a in &annihilator {
            rows.push(
                (0..49)
                    .map(|e| a.iter().zip(&columns[e]).fold(Q::from_i64(0), |acc, (x, y)| acc + x.clone() * y.clone()))
                    .collect(),
            );
        }
    }
    49 - Matrix::from_rows(rows).rank()
}

/// so(3) triples on every line, closure of the span under brackets, and irreducibility.
pub fn derivation_brackets(seed: u64) -> Result<Report> {
    let ders = build_derivations();
    let by_name = derivation_by_name(&ders);
    let mut rep = Report::new("brackets");
    let bracket = |a: &Matrix<Q>, b: &Matrix<Q>| a.mul(b).sub(&b.mul(a));
    let two = Q::from_i64(2);
    let mut so3_bad = Vec::new();
    for l in LINES {
        let [i, j, k] = [l[0] as u8, l[1] as u8, l[2] as u8];
        let ij = &by_name[&(i, j)].matrix;
        let jk = &by_name[&(j, k)].matrix;
        let ki = &by_name[&(k, i)].matrix;
        let ok = bracket(ij, jk) == ki.scale(&two) && bracket(jk, ki) == ij.scale(&two) && bracket(ki, ij) == jk.scale(&two);
        if !ok {
            so3_bad.push(format!("{i}{j}{k}"));
        }
    }
    rep.push(
        "so3-triples",
        so3_bad.is_empty(),
        "[δ_ij, δ_jk] = 2δ_ki and its cyclic shifts on every directed line",
        format!("failures {so3_bad:?}"),
    );
    let span: Vec<Vec<Q>> = ders.iter().map(|d| flatten(&d.matrix)).collect();
    let span_rank = crate::linalg::rank_of_vectors(&span);
    let mut outside = Vec::new();
    for a in &ders {
        for b in &ders {
            let mut trial = span.clone();
            trial.push(flatten(&bracket(&a.matrix, &b.matrix)));
            if crate::linalg::rank_of_vectors(&trial) > span_rank {
                outside.push(format!("[{},{}]", a.label(), b.label()));
            }
        }
    }
    rep.push(
        "closed",
        outside.is_empty(),
        "the span of the derivations is closed under brackets",
        format!("441 brackets; outside {outside:?}"),
    );
    let gens: Vec<Matrix<Q>> = ders.iter().map(|d| d.matrix.clone()).collect();
    let alg = generated_algebra_dim(&gens);
    rep.push(
        "irreducible",
        alg == 49,
        "the derivations act irreducibly on the generators",
        format!("associative algebra generated has dimension {alg} (49 = all 7x7 matrices)"),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random = ders.iter().fold(Matrix::zeros(7, 7), |acc: Matrix<Q>, d| {
        acc.add(&d.matrix.scale(&Q::random(&mut rng, 5)))
    });
    let deg = minimal_polynomial_degree(&random);
    rep.push_sampled(
        "minimal-polynomial",
        deg == 7,
        "a random element of the span has minimal polynomial of degree 7",
        format!("degree {deg}"),
    );
    Ok(rep)
}

/// `s2 = x1² + … + x7²`.
pub fn s2<F: Field>() -> NcPoly<F> {
    (1..=7).fold(NcPoly::zero(), |acc, i| acc.add(&x::<F>(i).mul(&x(i))))
}

/// `Q = Σ_{p<q} [x_p, x_q]²`.
pub fn q_element<F: Field>() -> NcPoly<F> {
    let mut q = NcPoly::zero();
    for p in 1..=7u8 {
        for r in p + 1..=7 {
            let c = br::<F>(p, r);
            q = q.add(&c.mul(&c));
        }
    }
    q
}

/// `δ(s2) = δ(Q) = 0` in `A` for all 21 derivations, `Q ≠ 0` in `A`, and `Q ∈ B`.
pub fn invariants_check() -> Result<(Report, NcPoly<Q>)> {
    let ders = build_derivations();
    let sys = RewriteSystem::from_presentation(&Presentation::<Q>::algebra_a())?;
    let mut rep = Report::new("invariants");
    let s = s2::<Q>();
    let q = q_element::<Q>();
    let s_bad: Vec<String> = ders.iter().filter(|d| !sys.reduce(&d.apply(&s)).is_zero()).map(Derivation::label).collect();
    rep.push("s2-invariant", s_bad.is_empty(), "every derivation kills x1^2+...+x7^2 in A", format!("failures {s_bad:?}"));
    let q_bad: Vec<String> = ders.iter().filter(|d| !sys.reduce(&d.apply(&q)).is_zero()).map(Derivation::label).collect();
    rep.push("q-invariant", q_bad.is_empty(), "every derivation kills Q in A", format!("failures {q_bad:?}"));
    let nf = sys.reduce(&q);
    rep.push("q-nonzero", !nf.is_zero(), "Q is nonzero in A", format!("{} terms in normal form", nf.len()));
    // A-normal words avoiding x7 are exactly the normal words of B
    let in_b = nf.terms().all(|(w, _)| !w.0.contains(&6));
    rep.push("q-in-b", in_b, "Q lies in the subalgebra generated by x1..x6", "normal form of Q avoids x7");
    Ok((rep, nf))
}

/// Tensor-rank inputs: each `r_i` has rank 6, random rational combinations have rank at
/// least 4, and over `Q(i)` the relation `[t,u3] - [v2,v1]` has rank 4.
#[derive(Clone, Debug, Serialize)]
pub struct RankInputs {
    pub relation_ranks: Vec<usize>,
    pub random_min_rank: usize,
    pub witness_rank: usize,
}

pub fn rank_six_lemma_inputs(seed: u64, samples: usize) -> Result<(Report, RankInputs)> {
    let relations = relations_from_mu::<Q>();
    let relation_ranks = relations.iter().map(tensor_rank).collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random_min_rank = usize::MAX;
    for _ in 0..samples {
        let comb = relations
            .iter()
            .fold(NcPoly::zero(), |acc, r| acc.add(&r.scale(&Q::random(&mut rng, 9))));
        if !comb.is_zero() {
            random_min_rank = random_min_rank.min(tensor_rank(&comb)?);
        }
    }
    let witness = parse_poly::<Gaussian>("[t,u3] - [v2,v1]")?;
    let relations_g = relations_from_mu::<Gaussian>();
    let basis = Matrix::from_fn(49, 7, |row, l| relations_g[l].coeff(&Word::from_rank(row, 2, 7)));
    let in_r = basis.solve(&witness.coefficient_vector(2, 7)).is_some();
    let witness_rank = tensor_rank(&witness)?;
    let mut rep = Report::new("ranks");
    rep.push(
        "relations-rank-6",
        relation_ranks.iter().all(|&r| r == 6),
        "each r_i has rank 6",
        format!("{relation_ranks:?}"),
    );
    rep.push_sampled(
        "random-rank",
        random_min_rank >= 4 && random_min_rank != usize::MAX,
        "nonzero rational combinations of relations have rank at least 4",
        format!("minimum {random_min_rank} over {samples} samples"),
    );
    rep.push("witness-in-r", in_r, "[t,u3] - [v2,v1] is a relation", "");
    rep.push("witness-rank-4", witness_rank == 4, "over Q(i) some relation has rank 4", format!("rank {witness_rank}"));
    if !in_r {
        return Err(Error::CheckFailed("rank-4 witness is not in R".into()));
    }
    Ok((
        rep,
        RankInputs {
            relation_ranks,
            random_min_rank,
            witness_rank,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b_dimensions() {
        let (sys, rep) = build_b(8).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures());
        assert_eq!(sys.count_normal_words_brute(2), 35);
        assert_eq!(sys.count_normal_words(3), 204u32.into());
    }

    #[test]
    fn ore() {
        let d = ore_delta::<Q>();
        assert_eq!(d[0], parse_poly::<Q>("[x4,x2]+[x3,x5]").unwrap());
        let r6 = &relations_from_mu::<Q>()[5];
        let e = br::<Q>(7, 1).sub(&d[0]);
        assert!(e == *r6 || e.neg() == *r6);
        let rep = ore_delta_check(1).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures());
    }

    #[test]
    fn derivation_table() {
        let ders = build_derivations();
        let d23 = ders.iter().find(|d| d.name == (2, 3)).unwrap();
        let expected: Vec<NcPoly<Q>> = ["0", "0", "0", "x5", "-x4", "-x7", "x6"]
            .iter()
            .map(|s| parse_poly::<Q>(s).unwrap())
            .collect();
        assert_eq!(d23.images(), expected);
        let rep = derivations_check().unwrap();
        assert!(rep.passed(), "{:?}", rep.failures());
    }

    #[test]
    fn brackets() {
        let ders = build_derivations();
        let by = derivation_by_name(&ders);
        let m = |a: u8, b: u8| by[&(a, b)].matrix.clone();
        let b = |p: &Matrix<Q>, q: &Matrix<Q>| p.mul(q).sub(&q.mul(p));
        assert_eq!(b(&m(1, 2), &m(2, 3)), m(3, 1).scale(&Q::from_i64(2)));
        assert!(b(&m(2, 3), &m(2, 3)).is_zero());
        let rep = derivation_brackets(7).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures());
    }

    #[test]
    fn invariants() {
        let (rep, nf) = invariants_check().unwrap();
        assert!(rep.passed(), "{:?}", rep.failures());
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/q_normal_form.txt");
        if std::env::var_os("UPDATE_GOLDEN").is_some() {
            std::fs::write(path, format!("{nf}\n")).unwrap();
        }
        let golden = std::fs::read_to_string(path).unwrap();
        assert_eq!(nf.to_string(), golden.trim());
        // Q expands to 21 squared commutators, 4 words each
        assert_eq!(q_element::<Q>().len(), 84);
    }

    #[test]
    fn ranks() {
        let (rep, inputs) = rank_six_lemma_inputs(3, 30).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures());
        assert_eq!(inputs.witness_rank, 4);
        assert_eq!(tensor_rank(&NcPoly::<Q>::zero()).unwrap(), 0);
    }
}
