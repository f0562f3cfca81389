//! Finite-dimensional modules: the criterion `Im(X²) = 0` for `X = Σ X_i o_i`, explicit
//! modules, the trace identity, extensions of one-dimensional modules and a small search.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fano_octonion::{eps0, Octonion, LINES};
use crate::field::{parse_scalar, Field, Fp, Gaussian};
use crate::linalg::{commutant_dim, generated_algebra_dim, Matrix};
use crate::ncpoly::{relations_from_mu, NcPoly, Word};
use crate::report::Report;

/// Seven `n×n` matrices, the images of `x1..x7`.
#[derive(Clone, Debug, PartialEq)]
pub struct RepAssignment<F: Field> {
    pub n: usize,
    pub x: Vec<Matrix<F>>,
}

impl<F: Field> RepAssignment<F> {
    pub fn new(x: Vec<Matrix<F>>) -> Result<Self> {
        if x.len() != 7 {
            return Err(Error::SizeMismatch(format!("expected 7 matrices, got {}", x.len())));
        }
        let n = x[0].rows();
        if x.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::SizeMismatch("matrices must be square of a common size".into()));
        }
        Ok(RepAssignment { n, x })
    }

    pub fn zero(n: usize) -> Self {
        RepAssignment {
            n,
            x: vec![Matrix::zeros(n, n); 7],
        }
    }

    /// One-dimensional module `x_i ↦ λ_i`.
    pub fn scalar(lambda: &[F]) -> Result<Self> {
        if lambda.len() != 7 {
            return Err(Error::SizeMismatch("a point of Im O has 7 coordinates".into()));
        }
        Self::new(lambda.iter().map(|l| Matrix::from_rows(vec![vec![l.clone()]])).collect())
    }

    /// Evaluates a noncommutative polynomial at the assignment.
    pub fn eval(&self, p: &NcPoly<F>) -> Matrix<F> {
        let mut out = Matrix::zeros(self.n, self.n);
        for (w, c) in p.terms() {
            let mut m = Matrix::identity(self.n);
            for &l in &w.0 {
                m = m.mul(&self.x[l as usize]);
            }
            out = out.add(&m.scale(c));
        }
        out
    }

    /// The matrices of `r_1..r_7`.
    pub fn relation_matrices(&self) -> Vec<Matrix<F>> {
        relations_from_mu::<F>().iter().map(|r| self.eval(r)).collect()
    }

    /// Parses `{"n": n, "X": [7 matrices of scalar strings]}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let mats = v
            .get("X")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing array 'X'".into()))?;
        let mut x = Vec::new();
        for m in mats {
            let rows = m.as_array().ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
            let mut parsed = Vec::new();
            for r in rows {
                let entries = r.as_array().ok_or_else(|| Error::Parse("row must be an array".into()))?;
                let mut row = Vec::new();
                for e in entries {
                    let s = match e {
                        Value::String(s) => s.clone(),
                        Value::Number(n) => n.to_string(),
                        _ => return Err(Error::Parse(format!("bad entry {e}"))),
                    };
                    row.push(parse_scalar::<F>(&s)?);
                }
                parsed.push(row);
            }
            let width = parsed.first().map(Vec::len).unwrap_or(0);
            if parsed.iter().any(|r| r.len() != width) {
                return Err(Error::SizeMismatch("ragged matrix".into()));
            }
            x.push(Matrix::from_rows(parsed));
        }
        let rep = Self::new(x)?;
        if let Some(n) = v.get("n").and_then(Value::as_u64) {
            if n as usize != rep.n {
                return Err(Error::SizeMismatch(format!("declared n = {n}, matrices are {}x{}", rep.n, rep.n)));
            }
        }
        Ok(rep)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "X": self.x.iter().map(|m| {
                (0..m.rows()).map(|i| m.row(i).iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }
}

/// An `n×n` matrix with octonion entries, stored as the eight coefficient matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct OctonionMatrix<F: Field> {
    pub parts: Vec<Matrix<F>>,
}

impl<F: Field> OctonionMatrix<F> {
    /// `X = Σ X_i o_i`.
    pub fn from_rep(rep: &RepAssignment<F>) -> Self {
        let mut parts = vec![Matrix::zeros(rep.n, rep.n)];
        parts.extend(rep.x.iter().cloned());
        OctonionMatrix { parts }
    }

    /// Product using octonion multiplication of the units: `(Σ P_a o_a)(Σ Q_b o_b) = Σ P_a Q_b (o_a o_b)`.
    pub fn mul(&self, o: &Self) -> Self {
        let n = self.parts[0].rows();
        let mut parts = vec![Matrix::zeros(n, n); 8];
        for a in 0..8 {
            if self.parts[a].is_zero() {
                continue;
            }
            for b in 0..8 {
                if o.parts[b].is_zero() {
                    continue;
                }
                let unit = unit8::<F>(a).mul(&unit8(b));
                let pq = self.parts[a].mul(&o.parts[b]);
                for (c, coef) in unit.coeffs.iter().enumerate() {
                    if !coef.is_zero() {
                        parts[c] = parts[c].add(&pq.scale(coef));
                    }
                }
            }
        }
        OctonionMatrix { parts }
    }

    /// The imaginary components, entrywise.
    pub fn im(&self) -> Vec<Matrix<F>> {
        self.parts[1..].to_vec()
    }
}

fn unit8<F: Field>(a: usize) -> Octonion<F> {
    if a == 0 {
        Octonion::one()
    } else {
        Octonion::unit0(a - 1)
    }
}

/// Result of the module test, with the first nonvanishing relation as witness.
#[derive(Clone, Debug)]
pub struct ModuleCheck<F: Field> {
    pub is_module: bool,
    pub witness: Option<(usize, Matrix<F>)>,
}

pub fn is_module<F: Field>(rep: &RepAssignment<F>) -> ModuleCheck<F> {
    let witness = rep
        .relation_matrices()
        .into_iter()
        .enumerate()
        .find(|(_, m)| !m.is_zero())
        .map(|(i, m)| (i + 1, m));
    ModuleCheck {
        is_module: witness.is_none(),
        witness,
    }
}

/// `Im(X²) = 0` computed through octonion matrix arithmetic.
pub fn is_module_octonion<F: Field>(rep: &RepAssignment<F>) -> bool {
    let x = OctonionMatrix::from_rep(rep);
    x.mul(&x).im().iter().all(Matrix::is_zero)
}

/// Compares `Im(X²)` with the relation matrices entrywise and checks `Re(X²) = -Σ X_l²`.
pub fn equivalence_check<F: Field>(rep: &RepAssignment<F>) -> Report {
    let mut report = Report::new("equivalence");
    let x = OctonionMatrix::from_rep(rep);
    let sq = x.mul(&x);
    let rel = rep.relation_matrices();
    let agree = sq.im() == rel;
    report.push("im-square", agree, "Im(X^2) has components r_1(X)..r_7(X)", format!("n = {}", rep.n));
    let sum_sq = rep.x.iter().fold(Matrix::zeros(rep.n, rep.n), |acc, m| acc.add(&m.mul(m)));
    let re_ok = sq.parts[0] == sum_sq.scale(&-F::one());
    report.push("re-square", re_ok, "Re(X^2) = -(X_1^2 + ... + X_7^2)", "");
    let both = is_module(rep).is_module == is_module_octonion(rep);
    report.push("criteria-agree", both, "module criterion and Im(X^2) = 0 criterion agree", "");
    report
}

/// The 4x4 matrices `A_i = e_jk - e_kj`, `B_i = e_i4 + e_4i` for cyclic `(i,j,k)`.
pub fn so31_basis<F: Field>() -> (Vec<Matrix<F>>, Vec<Matrix<F>>) {
    let e = |a: usize, b: usize| {
        let mut m = Matrix::zeros(4, 4);
        m[(a, b)] = F::one();
        m
    };
    let cyc = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];
    let a = cyc.iter().map(|&(_, j, k)| e(j, k).sub(&e(k, j))).collect();
    let b = cyc.iter().map(|&(i, _, _)| e(i, 3).add(&e(3, i))).collect();
    (a, b)
}

/// `x1,x2,x3 ↦ 0, x4 ↦ A_1, x5 ↦ A_2, x6 ↦ B_1, x7 ↦ B_2`.
pub fn so31_rep<F: Field>() -> RepAssignment<F> {
    let (a, b) = so31_basis::<F>();
    let z = Matrix::zeros(4, 4);
    RepAssignment {
        n: 4,
        x: vec![z.clone(), z.clone(), z, a[0].clone(), a[1].clone(), b[0].clone(), b[1].clone()],
    }
}

/// The action on homogeneous polynomials of degree `n` in `x, y` (basis `x^{n-k} y^k`) of
/// `x4 ↦ -i x∂_y, x5 ↦ x∂_y, x6 ↦ i y∂_x, x7 ↦ y∂_x`.
pub fn diffop_rep(n: usize) -> RepAssignment<Gaussian> {
    let size = n + 1;
    // x∂_y: x^{n-k} y^k ↦ k x^{n-k+1} y^{k-1}; y∂_x: ↦ (n-k) x^{n-k-1} y^{k+1}
    let x_dy = Matrix::from_fn(size, size, |row, col| {
        if col >= 1 && row == col - 1 {
            Gaussian::from_i64(col as i64)
        } else {
            Gaussian::zero()
        }
    });
    let y_dx = Matrix::from_fn(size, size, |row, col| {
        if row == col + 1 {
            Gaussian::from_i64((n - col) as i64)
        } else {
            Gaussian::zero()
        }
    });
    let i = Gaussian::i();
    let z = Matrix::zeros(size, size);
    RepAssignment {
        n: size,
        x: vec![
            z.clone(),
            z.clone(),
            z,
            x_dy.scale(&-i.clone()),
            x_dy,
            y_dx.scale(&i),
            y_dx,
        ],
    }
}

/// Span of the orbit of `v` under the algebra generated by the matrices.
pub fn orbit_span_dim<F: Field>(mats: &[Matrix<F>], v: &[F]) -> usize {
    let mut ech = crate::linalg::SparseEchelon::new();
    let mut queue = vec![v.to_vec()];
    let to_sparse = |u: &[F]| crate::linalg::sparse_from_pairs(u.iter().cloned().enumerate());
    while let Some(u) = queue.pop() {
        if ech.insert(to_sparse(&u)) {
            queue.extend(mats.iter().map(|m| m.mul_vec(&u)));
        }
    }
    ech.rank()
}

/// Irreducibility evidence: every basis vector generates the whole space, the generated
/// algebra is all of `M_n`, and the commutant is scalars.
pub fn irreducibility_report<F: Field>(rep: &RepAssignment<F>) -> Report {
    let mut report = Report::new("irreducible");
    let n = rep.n;
    let orbit_ok = (0..n).all(|k| {
        let mut e = vec![F::zero(); n];
        e[k] = F::one();
        orbit_span_dim(&rep.x, &e) == n
    });
    report.push("orbits", orbit_ok, "each basis vector generates the whole module", "");
    let alg = generated_algebra_dim(&rep.x);
    report.push("burnside", alg == n * n, "the image of A is the full matrix algebra", format!("dimension {alg} of {}", n * n));
    let comm = commutant_dim(&rep.x);
    report.push("schur", comm == 1, "only scalars commute with the module", format!("commutant dimension {comm}"));
    report
}

/// `Σ_{p<q} Tr([X_p,X_q]²)` and `Σ Tr(r_i(X)²)`.
#[derive(Clone, Debug)]
pub struct TraceIdentity<F: Field> {
    pub commutator_sum: F,
    pub relation_sum: F,
    /// `Tr(d_pqrs)` for each non-collinear 4-set of points.
    pub cross_terms: Vec<(Vec<u8>, F)>,
}

/// The part of `Σ r_i² - Σ_{p<q}[x_p,x_q]²` on each 4-letter set, as free-algebra elements.
pub fn cross_term_parts<F: Field>() -> BTreeMap<Vec<u8>, NcPoly<F>> {
    let relations = relations_from_mu::<F>();
    let sum_sq = relations.iter().fold(NcPoly::zero(), |acc, r| acc.add(&r.mul(r)));
    let d = sum_sq.sub(&q_sum::<F>());
    let mut parts: BTreeMap<Vec<u8>, NcPoly<F>> = BTreeMap::new();
    for (w, c) in d.terms() {
        let set: BTreeSet<u8> = w.0.iter().copied().collect();
        let key: Vec<u8> = set.into_iter().map(|l| l + 1).collect();
        parts.entry(key).or_default().add_term(w.clone(), c.clone());
    }
    parts
}

fn q_sum<F: Field>() -> NcPoly<F> {
    let mut q = NcPoly::zero();
    for p in 0..7u8 {
        for r in p + 1..7 {
            let c = NcPoly::<F>::var(p).commutator(&NcPoly::var(r));
            q = q.add(&c.mul(&c));
        }
    }
    q
}

/// True when the 4-set contains no line of the Fano plane.
pub fn non_collinear(set: &[u8]) -> bool {
    set.len() == 4 && LINES.iter().all(|l| !l.iter().all(|&p| set.contains(&(p as u8))))
}

pub fn trace_identity<F: Field>(rep: &RepAssignment<F>) -> TraceIdentity<F> {
    let q = q_sum::<F>();
    let commutator_sum = rep.eval(&q).trace();
    let relation_sum = rep
        .relation_matrices()
        .iter()
        .fold(F::zero(), |acc, m| acc + m.mul(m).trace());
    let cross_terms = cross_term_parts::<F>()
        .into_iter()
        .map(|(k, p)| (k, rep.eval(&p).trace()))
        .collect();
    TraceIdentity {
        commutator_sum,
        relation_sum,
        cross_terms,
    }
}

/// Structure of the cross terms (free-algebra facts) and the trace identity on a module.
pub fn trace_identity_check<F: Field>(rep: &RepAssignment<F>) -> Result<Report> {
    let mut report = Report::new("trace");
    if !is_module(rep).is_module {
        return Err(Error::CheckFailed("the assignment is not a module".into()));
    }
    let parts = cross_term_parts::<F>();
    let keys: Vec<&Vec<u8>> = parts.keys().collect();
    let shape_ok = parts.len() == 7 && keys.iter().all(|k| non_collinear(k));
    report.push(
        "cross-term-sets",
        shape_ok,
        "sum r_i^2 - Q splits over the seven non-collinear 4-sets",
        format!("{keys:?}"),
    );
    // each part is a signed sum over the three pairings {ab|cd} of [a,b][c,d] + [c,d][a,b]
    let six_terms = parts.iter().all(|(k, p)| {
        let x = |i: u8| NcPoly::<F>::var(i - 1);
        let c = |a: u8, b: u8| x(a).commutator(&x(b));
        let [a, b, cc, d] = [k[0], k[1], k[2], k[3]];
        let pairings = [((a, b), (cc, d)), ((a, cc), (b, d)), ((a, d), (b, cc))];
        let mut rest = p.clone();
        for ((p1, p2), (p3, p4)) in pairings {
            let sym = c(p1, p2).mul(&c(p3, p4)).add(&c(p3, p4).mul(&c(p1, p2)));
            let lead = sym.leading().map(|(w, _)| w.clone());
            if let Some(w) = lead {
                let coef = rest.coeff(&w);
                rest = rest.sub(&sym.scale(&coef));
            }
        }
        rest.is_zero()
    });
    report.push(
        "cross-term-shape",
        six_terms,
        "each 4-set part is a signed sum of the three symmetrized commutator products",
        "",
    );
    let t = trace_identity(rep);
    report.push(
        "sums-equal",
        t.commutator_sum == t.relation_sum,
        "sum Tr([X_p,X_q]^2) = sum Tr(r_i(X)^2)",
        format!("{} and {}", t.commutator_sum, t.relation_sum),
    );
    report.push("sums-zero", t.relation_sum.is_zero(), "both sums vanish on a module", t.relation_sum.to_string());
    let bad: Vec<String> = t
        .cross_terms
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| format!("{k:?}: {v}"))
        .collect();
    report.push("cross-traces", bad.is_empty(), "Tr(d_pqrs) = 0 for each non-collinear 4-set", format!("nonzero {bad:?}"));
    Ok(report)
}

/// Extensions between one-dimensional modules `λ` and `μ`.
#[derive(Clone, Debug, Serialize)]
pub struct Ext1 {
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    pub ext1_dim: usize,
}

/// `X_i = [[λ_i, ν_i], [0, μ_i]]` is a module iff `Σ_m Z_lm ν_m = 0` with
/// `Z_lm = Σ_i ε^{lim} (λ_i - μ_i)`; coboundaries are `ν = c(μ - λ)`.
pub fn ext1<F: Field>(lambda: &[F], mu: &[F]) -> Result<Ext1> {
    if lambda.len() != 7 || mu.len() != 7 {
        return Err(Error::SizeMismatch("points of Im O have 7 coordinates".into()));
    }
    let z = Matrix::from_fn(7, 7, |l, m| {
        (0..7).fold(F::zero(), |acc, i| {
            acc + F::from_i64(eps0(l, i, m) as i64) * (lambda[i].clone() - mu[i].clone())
        })
    });
    let cocycle_dim = 7 - z.rank();
    let coboundary_dim = usize::from(lambda != mu);
    Ok(Ext1 {
        cocycle_dim,
        coboundary_dim,
        ext1_dim: cocycle_dim - coboundary_dim,
    })
}

/// Cross-checks [`ext1`] by building the 2x2 assignment for each cocycle basis vector.
pub fn ext1_vanishing_check<F: Field>(lambda: &[F], mu: &[F]) -> Result<Report> {
    let e = ext1(lambda, mu)?;
    let mut report = Report::new("ext1");
    let two_by_two = |nu: &[F]| {
        RepAssignment::new(
            (0..7)
                .map(|i| Matrix::from_rows(vec![vec![lambda[i].clone(), nu[i].clone()], vec![F::zero(), mu[i].clone()]]))
                .collect(),
        )
    };
    let coboundary: Vec<F> = (0..7).map(|i| mu[i].clone() - lambda[i].clone()).collect();
    let coboundary_is_module = is_module(&two_by_two(&coboundary)?).is_module;
    report.push("coboundary", coboundary_is_module, "the split extension is a module", "");
    if lambda != mu {
        report.push(
            "vanishing",
            e.ext1_dim == 0,
            "Ext^1 vanishes between distinct one-dimensional modules",
            format!("cocycles {}, coboundaries {}", e.cocycle_dim, e.coboundary_dim),
        );
    } else {
        report.push(
            "self-extensions",
            true,
            "self-extensions of a one-dimensional module",
            format!("Ext^1 dimension {} (no claim)", e.ext1_dim),
        );
    }
    Ok(report)
}

/// Outcome of [`search_small_modules`].
#[derive(Clone, Debug)]
pub struct SearchResult<const P: u64> {
    pub modules: Vec<RepAssignment<Fp<P>>>,
    pub tried: u64,
    pub exhaustive: bool,
    pub commuting: usize,
}

impl<const P: u64> SearchResult<P> {
    pub fn to_json(&self) -> Value {
        json!({
            "p": P,
            "tried": self.tried,
            "exhaustive": self.exhaustive,
            "found": self.modules.len(),
            "commuting": self.commuting,
            "modules": self.modules.iter().map(RepAssignment::to_json).collect::<Vec<_>>(),
        })
    }
}

fn assignment_from_index<const P: u64>(n: usize, mut idx: u64, diagonal: bool) -> RepAssignment<Fp<P>> {
    let mut x = Vec::with_capacity(7);
    for _ in 0..7 {
        let m = Matrix::from_fn(n, n, |i, j| {
            if diagonal && i != j {
                Fp::new(0)
            } else {
                let v = idx % P;
                idx /= P;
                Fp::new(v as i64)
            }
        });
        x.push(m);
    }
    RepAssignment { n, x }
}

/// Canonical representative under simultaneous conjugation by permutation matrices and
/// invertible diagonal matrices: the lexicographically smallest flattened image.
pub fn canonical_form<const P: u64>(rep: &RepAssignment<Fp<P>>) -> Vec<u64> {
    let n = rep.n;
    let perms = permutations(n);
    let units: Vec<u64> = (1..P).collect();
    let mut diags: Vec<Vec<u64>> = vec![vec![1]];
    for _ in 1..n {
        diags = diags
            .into_iter()
            .flat_map(|d| units.iter().map(move |&u| [d.clone(), vec![u]].concat()))
            .collect();
    }
    let mut best: Option<Vec<u64>> = None;
    for perm in &perms {
        for d in &diags {
            // entry (i,j) of D P X P^-1 D^-1 is d_i x_{π(i)π(j)} d_j^{-1}
            let mut flat = Vec::with_capacity(7 * n * n);
            for m in &rep.x {
                for i in 0..n {
                    for j in 0..n {
                        let v = m[(perm[i], perm[j])] * Fp::new(d[i] as i64) * Fp::new(d[j] as i64).inv().unwrap_or(Fp::new(0));
                        flat.push(v.value());
                    }
                }
            }
            if best.as_ref().is_none_or(|b| flat < *b) {
                best = Some(flat);
            }
        }
    }
    best.unwrap_or_default()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// Searches for `n×n` modules over `F_P`: exhaustively when the space has at most `budget`
/// points, otherwise by `budget` random samples split over `shards` seeded streams.
pub fn search_small_modules<const P: u64>(
    n: usize,
    budget: u64,
    diagonal: bool,
    seed: u64,
    shards: u64,
) -> Result<SearchResult<P>> {
    if n == 0 || n > 3 {
        return Err(Error::SizeMismatch("search supports 1 <= n <= 3".into()));
    }
    let free_entries = 7 * if diagonal { n } else { n * n };
    let total = (P as u128).checked_pow(free_entries as u32);
    let exhaustive = total.is_some_and(|t| t <= budget as u128);
    let shards = shards.max(1);
    let found: Vec<(Vec<(Vec<u64>, RepAssignment<Fp<P>>)>, u64)> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..shards)
            .map(|shard| {
                s.spawn(move || {
                    let mut local = Vec::new();
                    let mut tried = 0u64;
                    let mut consider = |rep: RepAssignment<Fp<P>>| {
                        tried += 1;
                        if is_module(&rep).is_module {
                            local.push((canonical_form(&rep), rep));
                        }
                    };
                    if exhaustive {
                        let t = total.unwrap_or(0) as u64;
                        let mut idx = shard;
                        while idx < t {
                            consider(assignment_from_index::<P>(n, idx, diagonal));
                            idx += shards;
                        }
                    } else {
                        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(shard));
                        let per = budget / shards + u64::from(shard < budget % shards);
                        for _ in 0..per {
                            let x = (0..7)
                                .map(|_| {
                                    Matrix::from_fn(n, n, |i, j| {
                                        if diagonal && i != j {
                                            Fp::new(0)
                                        } else {
                                            Fp::new(rng.gen_range(0..P) as i64)
                                        }
                                    })
                                })
                                .collect();
                            consider(RepAssignment { n, x });
                        }
                    }
                    (local, tried)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("search shard panicked")).collect()
    });
    let mut dedup: BTreeMap<Vec<u64>, RepAssignment<Fp<P>>> = BTreeMap::new();
    let mut tried = 0;
    for (local, t) in found {
        tried += t;
        for (key, rep) in local {
            dedup.entry(key).or_insert(rep);
        }
    }
    let modules: Vec<RepAssignment<Fp<P>>> = dedup.into_values().collect();
    let commuting = modules
        .iter()
        .filter(|r| r.x.iter().all(|a| r.x.iter().all(|b| a.mul(b) == b.mul(a))))
        .count();
    Ok(SearchResult {
        modules,
        tried,
        exhaustive,
        commuting,
    })
}

/// Polynomial in one word, for tests and demos.
pub fn word_poly<F: Field>(letters: &[u8]) -> NcPoly<F> {
    NcPoly::word(Word(letters.iter().map(|l| l - 1).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Rational, F3};

    type Q = Rational;

    fn random_rep(rng: &mut ChaCha8Rng, n: usize) -> RepAssignment<Q> {
        RepAssignment::new((0..7).map(|_| Matrix::from_fn(n, n, |_, _| Q::random(rng, 3))).collect()).unwrap()
    }

    #[test]
    fn trivial_modules() {
        assert!(is_module(&RepAssignment::<Q>::zero(3)).is_module);
        let lambda: Vec<Q> = (1..=7).map(Q::from_i64).collect();
        let r = RepAssignment::scalar(&lambda).unwrap();
        assert!(is_module(&r).is_module);
        assert!(is_module_octonion(&r));
    }

    #[test]
    fn so31_is_module() {
        let r = so31_rep::<Q>();
        assert!(is_module(&r).is_module);
        assert!(is_module_octonion(&r));
        assert_eq!(generated_algebra_dim(&r.x), 16);
        let (a, b) = so31_basis::<Q>();
        let br = |p: &Matrix<Q>, q: &Matrix<Q>| p.mul(q).sub(&q.mul(p));
        assert_eq!(br(&a[0], &a[1]), a[2].scale(&-Q::one()));
        assert_eq!(br(&b[0], &b[1]), a[2]);
        assert!(br(&a[0], &b[0]).is_zero());
        let t = trace_identity_check(&r).unwrap();
        assert!(t.passed(), "{:?}", t.failures());
    }

    #[test]
    fn random_equivalence() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=3 {
            let r = random_rep(&mut rng, n);
            let rep = equivalence_check(&r);
            assert!(rep.passed(), "{:?}", rep.failures());
            if n > 1 {
                let w = is_module(&r);
                assert!(!w.is_module);
                assert!(w.witness.is_some());
            }
        }
    }

    #[test]
    fn diffop() {
        let r0 = diffop_rep(0);
        assert!(r0.x.iter().all(Matrix::is_zero));
        let r1 = diffop_rep(1);
        let expected = Matrix::from_rows(vec![
            vec![Gaussian::zero(), Gaussian::zero()],
            vec![Gaussian::one(), Gaussian::zero()],
        ]);
        assert_eq!(r1.x[6], expected);
        for n in 0..=4 {
            let r = diffop_rep(n);
            assert!(is_module(&r).is_module, "degree {n}");
            let irr = irreducibility_report(&r);
            assert!(irr.passed(), "degree {n}: {:?}", irr.failures());
        }
        let t = trace_identity_check(&diffop_rep(3)).unwrap();
        assert!(t.passed(), "{:?}", t.failures());
    }

    #[test]
    fn extensions() {
        let e = |k: usize, v: i64| {
            let mut p = vec![Q::zero(); 7];
            p[k] = Q::from_i64(v);
            p
        };
        assert_eq!(ext1(&e(0, 1), &e(1, 1)).unwrap().ext1_dim, 0);
        assert_eq!(ext1(&e(0, 1), &e(0, 2)).unwrap().ext1_dim, 0);
        assert_eq!(ext1(&e(0, 1), &e(0, 1)).unwrap().ext1_dim, 7);
        let rep = ext1_vanishing_check(&e(0, 1), &e(1, 1)).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures());
    }

    #[test]
    fn search() {
        let one = search_small_modules::<3>(1, 3u64.pow(7), false, 0, 4).unwrap();
        assert!(one.exhaustive);
        assert_eq!(one.tried, 2187);
        assert_eq!(one.modules.len(), 2187);
        let diag = search_small_modules::<3>(2, 3u64.pow(14), true, 0, 4).unwrap();
        assert!(diag.exhaustive);
        assert_eq!(diag.tried, 3u64.pow(14));
        assert_eq!(diag.commuting, diag.modules.len());
        let sampled = search_small_modules::<3>(2, 2000, false, 5, 2).unwrap();
        assert!(!sampled.exhaustive);
        assert_eq!(sampled.tried, 2000);
        let _ = F3::new(0);
    }

    #[test]
    fn json_round_trip() {
        let r = so31_rep::<Q>();
        let back = RepAssignment::<Q>::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(RepAssignment::<Q>::from_json(&json!({"n": 2, "X": []})).is_err());
    }
}
