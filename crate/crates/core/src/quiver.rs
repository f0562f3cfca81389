//! The quiver with three vertices, fourteen arrows and seven relations: its (1,1,1)
//! moduli space, point counts over prime fields, the triangular algebra `E` and truncated
//! point modules.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fano_octonion::{e_u, eps0, left_im_matrix, Octonion};
use crate::field::{Field, Fp, Rational};
use crate::linalg::{rank_of_vectors, Matrix};
use crate::ncpoly::{relations_from_mu, NcPoly, Word};
use crate::report::Report;
use crate::rewrite::{Presentation, RewriteSystem};

/// A representation of dimension vector (1,1,1): `v` holds the arrows from vertex 1 to 2 and
/// `u` the arrows from vertex 2 to 3.
#[derive(Clone, Debug, PartialEq)]
pub struct QuiverRep111<F: Field> {
    pub v: Vec<F>,
    pub u: Vec<F>,
}

impl<F: Field> QuiverRep111<F> {
    pub fn new(v: Vec<F>, u: Vec<F>) -> Result<Self> {
        if v.len() != 7 || u.len() != 7 {
            return Err(Error::SizeMismatch("each arrow tuple has 7 entries".into()));
        }
        if v.iter().all(F::is_zero) || u.iter().all(F::is_zero) {
            return Err(Error::ZeroArgument);
        }
        Ok(QuiverRep111 { v, u })
    }

    /// The seven relations `Σ_{p,q} ε^{ipq} u_p v_q`.
    pub fn relation_values(&self) -> Vec<F> {
        (0..7)
            .map(|i| {
                let mut s = F::zero();
                for p in 0..7 {
                    for q in 0..7 {
                        let e = eps0(i, p, q);
                        if e != 0 {
                            s = s + F::from_i64(e as i64) * self.u[p].clone() * self.v[q].clone();
                        }
                    }
                }
                s
            })
            .collect()
    }

    /// The octonion pair: `a = Σ v_i o_i`, `b = Σ u_i o_i`.
    pub fn octonions(&self) -> (Octonion<F>, Octonion<F>) {
        (Octonion::from_imag(&self.v), Octonion::from_imag(&self.u))
    }
}

/// Tests the quiver relations and `Im(ab) = 0`; the two must agree.
pub fn moduli_membership<F: Field>(rep: &QuiverRep111<F>) -> Result<bool> {
    let by_relations = rep.relation_values().iter().all(F::is_zero);
    let (a, b) = rep.octonions();
    let by_octonions = a.mul(&b).im_part().is_zero();
    if by_relations != by_octonions {
        return Err(Error::CheckFailed(format!(
            "membership tests disagree at v = {:?}, u = {:?}",
            rep.v, rep.u
        )));
    }
    Ok(by_relations)
}

/// Number of points of `P^6(F_P)`.
pub fn projective_count(p: u64) -> u64 {
    (p.pow(7) - 1) / (p - 1)
}

/// The `idx`-th point of `P^6(F_P)`, normalized with leading coordinate 1.
pub fn projective_point<const P: u64>(mut idx: u64) -> Vec<Fp<P>> {
    for lead in 0..7 {
        let block = P.pow(6 - lead as u32);
        if idx < block {
            let mut pt = vec![Fp::new(0); 7];
            pt[lead] = Fp::new(1);
            for c in pt.iter_mut().skip(lead + 1).rev() {
                *c = Fp::new((idx % P) as i64);
                idx /= P;
            }
            return pt;
        }
        idx -= block;
    }
    panic!("projective point index out of range")
}

fn is_quadric<F: Field>(u: &[F]) -> bool {
    u.iter().fold(F::zero(), |acc, c| acc + c.clone() * c.clone()).is_zero()
}

/// `dim E_u` for an imaginary `u ≠ 0`.
pub fn fiber_dim<F: Field>(u: &[F]) -> usize {
    7 - left_im_matrix(&Octonion::from_imag(u)).rank()
}

/// Point count of the moduli space over `F_P`, with the fibration data.
#[derive(Clone, Debug, Serialize)]
pub struct ModuliCount {
    pub p: u64,
    pub points_p6: u64,
    pub quadric_points: u64,
    pub smooth_quadric_formula: u64,
    /// `(d, number of [u] with dim E_u = d)`.
    pub fiber_dims: Vec<(usize, u64)>,
    pub total: u64,
    pub fibration_formula: u64,
}

pub const DEFAULT_PRIME_CAP: u64 = 13;

/// `Σ_{[u] ∈ P^6} |P(E_u)(F_P)|`, sharded over `[u]`.
pub fn count_moduli_points<const P: u64>(shards: u64) -> Result<ModuliCount> {
    if P == 2 || P > DEFAULT_PRIME_CAP {
        return Err(Error::UnsupportedPrime(P));
    }
    let n = projective_count(P);
    let shards = shards.max(1);
    let partial: Vec<[u64; 8]> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..shards)
            .map(|shard| {
                s.spawn(move || {
                    // dims 0..=7 tallied separately; slot 0 unused
                    let mut tally = [0u64; 8];
                    let mut quad = 0u64;
                    let mut idx = shard;
                    while idx < n {
                        let u = projective_point::<P>(idx);
                        tally[fiber_dim(&u)] += 1;
                        if is_quadric(&u) {
                            quad += 1;
                        }
                        idx += shards;
                    }
                    tally[0] = quad;
                    tally
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("count shard panicked")).collect()
    });
    let mut tally = [0u64; 8];
    for t in partial {
        for (a, b) in tally.iter_mut().zip(t) {
            *a += b;
        }
    }
    let quadric_points = tally[0];
    let fiber_dims: Vec<(usize, u64)> = (1..8).filter(|&d| tally[d] > 0).map(|d| (d, tally[d])).collect();
    let proj = |d: usize| (P.pow(d as u32) - 1) / (P - 1);
    let total = fiber_dims.iter().map(|&(d, c)| c * proj(d)).sum();
    let fibration_formula = (n - quadric_points) + quadric_points * proj(3);
    Ok(ModuliCount {
        p: P,
        points_p6: n,
        quadric_points,
        smooth_quadric_formula: proj(6),
        fiber_dims,
        total,
        fibration_formula,
    })
}

/// Runtime dispatch over the supported primes.
pub fn count_moduli_points_dyn(p: u64, shards: u64) -> Result<ModuliCount> {
    match p {
        3 => count_moduli_points::<3>(shards),
        5 => count_moduli_points::<5>(shards),
        7 => count_moduli_points::<7>(shards),
        11 => count_moduli_points::<11>(shards),
        13 => count_moduli_points::<13>(shards),
        _ => Err(Error::UnsupportedPrime(p)),
    }
}

/// Exhaustive sweep over `P^6(F_P) × P^6(F_P)`.
#[derive(Clone, Debug, Serialize)]
pub struct PairSweep {
    pub pairs: u64,
    pub members: u64,
    pub disagreements: u64,
}

pub fn pair_sweep<const P: u64>(shards: u64) -> PairSweep {
    let n = projective_count(P);
    let shards = shards.max(1);
    let parts: Vec<(u64, u64, u64)> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..shards)
            .map(|shard| {
                s.spawn(move || {
                    let (mut pairs, mut members, mut bad) = (0, 0, 0);
                    let mut i = shard;
                    while i < n {
                        let v = projective_point::<P>(i);
                        for j in 0..n {
                            let u = projective_point::<P>(j);
                            let rep = QuiverRep111 { v: v.clone(), u };
                            pairs += 1;
                            match moduli_membership(&rep) {
                                Ok(true) => members += 1,
                                Ok(false) => {}
                                Err(_) => bad += 1,
                            }
                        }
                        i += shards;
                    }
                    (pairs, members, bad)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sweep shard panicked")).collect()
    });
    parts.into_iter().fold(
        PairSweep {
            pairs: 0,
            members: 0,
            disagreements: 0,
        },
        |acc, (p, m, b)| PairSweep {
            pairs: acc.pairs + p,
            members: acc.members + m,
            disagreements: acc.disagreements + b,
        },
    )
}

/// Checks over `F_3`: the pair sweep, the count against it, and the fiber dimensions.
pub fn moduli_check_f3(shards: u64) -> Result<Report> {
    let mut report = Report::new("moduli");
    let sweep = pair_sweep::<3>(shards);
    report.push(
        "tests-agree",
        sweep.disagreements == 0 && sweep.pairs == 1093 * 1093,
        "quiver relations and Im(uv) = 0 agree on all of P^6(F_3) x P^6(F_3)",
        format!("{} pairs, {} disagreements", sweep.pairs, sweep.disagreements),
    );
    let count = count_moduli_points::<3>(shards)?;
    report.push(
        "count",
        count.total == sweep.members && count.total == count.fibration_formula,
        "fibration count equals brute-force pair count",
        format!("{} by fibers, {} by pairs", count.total, sweep.members),
    );
    let mut fibers_ok = true;
    for idx in 0..projective_count(3) {
        let u = projective_point::<3>(idx);
        let expected = if is_quadric(&u) { 3 } else { 1 };
        fibers_ok &= fiber_dim(&u) == expected;
    }
    report.push(
        "fibers",
        fibers_ok,
        "dim E_u = 3 on the quadric and 1 off it",
        format!("{:?}, {} quadric points", count.fiber_dims, count.quadric_points),
    );
    Ok(report)
}

/// Sampled check over the rationals: membership holds exactly for parallel pairs.
pub fn moduli_check_rational(seed: u64, samples: usize) -> Report {
    let mut report = Report::new("moduli-q");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = true;
    let mut members = 0;
    for k in 0..samples {
        let v: Vec<Rational> = (0..7).map(|_| Rational::random(&mut rng, 5)).collect();
        if v.iter().all(Field::is_zero) {
            continue;
        }
        // every fourth sample is a parallel pair
        let u: Vec<Rational> = if k % 4 == 0 {
            let c = Rational::from_i64(k as i64 % 5 + 1);
            v.iter().map(|x| x.clone() * c.clone()).collect()
        } else {
            (0..7).map(|_| Rational::random(&mut rng, 5)).collect()
        };
        let Ok(rep) = QuiverRep111::new(v.clone(), u.clone()) else { continue };
        let parallel = rank_of_vectors(&[v, u]) == 1;
        match moduli_membership(&rep) {
            Ok(m) => {
                ok &= m == parallel;
                members += usize::from(m);
            }
            Err(_) => ok = false,
        }
    }
    report.push_sampled(
        "diagonal",
        ok,
        "over Q the moduli space is the diagonal copy of P^6",
        format!("{samples} samples, {members} members"),
    );
    report
}

/// Position in `E = [[k, A1, A2], [0, k, A1], [0, 0, k]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    Idempotent(usize),
    /// Arrow from vertex `from` to `from + 1`, labelled by a letter.
    Arrow { from: usize, letter: usize },
    /// Degree-two path from vertex 1 to 3, labelled by a normal word of `A_2`.
    Path(usize),
}

/// The graded triangular algebra built from `A_0, A_1, A_2`.
#[derive(Clone, Debug)]
pub struct TriangularAlgebraE {
    pub basis: Vec<Block>,
    pub a2_basis: Vec<Word>,
    /// `composition[i][j]` is `x_i x_j` in the `A_2` basis.
    pub composition: Vec<Vec<Vec<Rational>>>,
}

impl TriangularAlgebraE {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn mul_basis(&self, a: usize, b: usize) -> Vec<(usize, Rational)> {
        let one = || Rational::from_i64(1);
        match (self.basis[a], self.basis[b]) {
            (Block::Idempotent(i), Block::Idempotent(j)) if i == j => vec![(a, one())],
            (Block::Idempotent(i), Block::Arrow { from, .. }) if i == from => vec![(b, one())],
            (Block::Idempotent(0), Block::Path(_)) => vec![(b, one())],
            (Block::Arrow { from, .. }, Block::Idempotent(j)) if j == from + 1 => vec![(a, one())],
            (Block::Path(_), Block::Idempotent(2)) => vec![(a, one())],
            (Block::Arrow { from: 0, letter: i }, Block::Arrow { from: 1, letter: j }) => self.composition[i][j]
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (self.path_index(k), c.clone()))
                .collect(),
            _ => Vec::new(),
        }
    }

    fn path_index(&self, k: usize) -> usize {
        3 + 14 + k
    }

    /// Checks `(ab)c = a(bc)` on every basis triple.
    pub fn associativity_failures(&self) -> usize {
        let n = self.dim();
        let mul_vec = |v: &[(usize, Rational)], b: usize, left: bool| {
            let mut out = vec![Rational::from_i64(0); n];
            for (i, c) in v {
                let prod = if left { self.mul_basis(*i, b) } else { self.mul_basis(b, *i) };
                for (k, d) in prod {
                    out[k] = out[k].clone() + c.clone() * d;
                }
            }
            out
        };
        let mut failures = 0;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul_basis(a, b);
                for c in 0..n {
                    let lhs = mul_vec(&ab, c, true);
                    let bc = self.mul_basis(b, c);
                    let mut rhs = vec![Rational::from_i64(0); n];
                    for (j, cf) in &bc {
                        for (k, d) in self.mul_basis(a, *j) {
                            rhs[k] = rhs[k].clone() + cf.clone() * d;
                        }
                    }
                    failures += usize::from(lhs != rhs);
                }
            }
        }
        failures
    }

    /// The 49x42 composition map as a matrix acting on coefficient vectors of `A_1 ⊗ A_1`.
    pub fn composition_matrix(&self) -> Matrix<Rational> {
        let k = self.a2_basis.len();
        Matrix::from_fn(k, 49, |row, col| self.composition[col / 7][col % 7][row].clone())
    }
}

pub fn build_e() -> Result<TriangularAlgebraE> {
    let rs = RewriteSystem::from_presentation(&Presentation::<Rational>::algebra_a())?;
    let a2_basis = rs.normal_words(2);
    if a2_basis.len() != 42 {
        return Err(Error::SizeMismatch(format!("A_2 has dimension {}", a2_basis.len())));
    }
    let mut composition = vec![vec![Vec::new(); 7]; 7];
    for (i, row) in composition.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let nf = rs.normal_form(&NcPoly::word(Word(vec![i as u8, j as u8])))?;
            *slot = a2_basis.iter().map(|w| nf.coeff(w)).collect();
        }
    }
    let mut basis: Vec<Block> = (0..3).map(Block::Idempotent).collect();
    for from in 0..2 {
        basis.extend((0..7).map(|letter| Block::Arrow { from, letter }));
    }
    basis.extend((0..42).map(Block::Path));
    Ok(TriangularAlgebraE {
        basis,
        a2_basis,
        composition,
    })
}

/// The quiver relations as vectors in `A_1 ⊗ A_1`, from the arrow labels.
pub fn quiver_relation_vectors() -> Vec<Vec<Rational>> {
    (0..7)
        .map(|i| {
            let mut v = vec![Rational::from_i64(0); 49];
            for p in 0..7 {
                for q in 0..7 {
                    v[7 * p + q] = Rational::from_i64(eps0(i, p, q) as i64);
                }
            }
            v
        })
        .collect()
}

pub fn e_check() -> Result<Report> {
    let mut report = Report::new("e");
    let e = build_e()?;
    report.push("dim", e.dim() == 59, "dim E = 1 + 7 + 42 + 1 + 7 + 1 = 59", e.dim().to_string());
    let fails = e.associativity_failures();
    report.push("associative", fails == 0, "E is associative on all basis triples", format!("{fails} failures"));
    let comp = e.composition_matrix();
    let kernel = comp.nullspace();
    report.push("kernel-dim", kernel.len() == 7, "the composition A_1 ⊗ A_1 -> A_2 has a 7-dimensional kernel", kernel.len().to_string());
    let rels: Vec<Vec<Rational>> = relations_from_mu::<Rational>().iter().map(|r| r.coefficient_vector(2, 7)).collect();
    let quiver = quiver_relation_vectors();
    let in_kernel = rels.iter().chain(&quiver).all(|r| comp.mul_vec(r).iter().all(Field::is_zero));
    let mut all = kernel.clone();
    all.extend(rels.iter().cloned());
    all.extend(quiver.iter().cloned());
    let equal = in_kernel && rank_of_vectors(&rels) == 7 && rank_of_vectors(&quiver) == 7 && rank_of_vectors(&all) == 7;
    report.push("kernel-is-relations", equal, "the kernel equals span{r_i} and the span of the quiver relations", "");
    Ok(report)
}

/// A truncated point module `[u_0], ..., [u_ℓ]` with successor dimensions.
#[derive(Clone, Debug)]
pub struct PointModuleTruncation<F: Field> {
    pub points: Vec<Vec<F>>,
    /// `dim E_{u_m}` for each point but the last.
    pub successor_dims: Vec<usize>,
}

/// One walk: at each step the successor is the first basis vector of `E_u` not proportional
/// to `u` when there is one, so isotropic starts leave the diagonal.
pub fn point_module_walk<F: Field>(u0: &[F], len: usize) -> Result<PointModuleTruncation<F>> {
    let mut points = vec![u0.to_vec()];
    let mut successor_dims = Vec::new();
    for _ in 0..len {
        let u = points.last().cloned().unwrap_or_default();
        let space = e_u(&Octonion::from_imag(&u))?;
        successor_dims.push(space.dim());
        let next = space
            .basis()
            .iter()
            .find(|b| rank_of_vectors(&[u.clone(), (*b).clone()]) == 2)
            .cloned()
            .unwrap_or(u);
        points.push(next);
    }
    Ok(PointModuleTruncation { points, successor_dims })
}

/// Every truncation of length `len` starting at `u0` over `F_P`.
pub fn enumerate_walks<const P: u64>(u0: &[Fp<P>], len: usize) -> Result<Vec<Vec<Vec<Fp<P>>>>> {
    let n = projective_count(P);
    let mut walks = vec![vec![normalize(u0)?]];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in walks {
            let last = w.last().cloned().unwrap_or_default();
            for idx in 0..n {
                let cand = projective_point::<P>(idx);
                if Octonion::from_imag(&last).mul(&Octonion::from_imag(&cand)).im_part().is_zero() {
                    let mut w2 = w.clone();
                    w2.push(cand);
                    next.push(w2);
                }
            }
        }
        walks = next;
    }
    Ok(walks)
}

fn normalize<F: Field>(u: &[F]) -> Result<Vec<F>> {
    let lead = u.iter().find(|c| !c.is_zero()).ok_or(Error::ZeroArgument)?;
    let inv = lead.inv().ok_or(Error::ZeroArgument)?;
    Ok(u.iter().map(|c| c.clone() * inv.clone()).collect())
}
