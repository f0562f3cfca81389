//! Acceptance run: one line per criterion. Library results are compared with oracles
//! computed here from the line list of the Fano plane, and every criterion has a time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use octalg::field::{FBig, Field, Gaussian, Rational};
use octalg::koszul::{
    bimodule_complex_check, build_dual_checked, dual_degree, frobenius_check, koszul_complex_check,
    koszul_degree_ranks, matrix_m, perp_in_exterior_square, DualAlgebra,
};
use octalg::linalg::{generated_algebra_dim, rank_of_vectors, Matrix};
use octalg::ncpoly::{relations_from_mu, superpotential, NcPoly, Word};
use octalg::quiver::{e_check, moduli_check_f3};
use octalg::reps::{diffop_rep, ext1, is_module, is_module_octonion, so31_rep, trace_identity_check, RepAssignment};
use octalg::report::Report;
use octalg::rewrite::{quotient_hilbert, Presentation, RewriteSystem};
use octalg::series::{ideal_series_identities, lie_dims, TruncSeries};
use octalg::structure::{build_b, derivation_brackets, derivations_check, invariants_check, ore_delta_check};
use octalg::suites::split_relations;
use octalg::tables::{PRINTED_TABLE_O, PRINTED_TABLE_SO};

/// Criteria known to fail, with the reason; a pass here is reported as unexpected.
const EXPECTED_FAILURES: [(usize, &str); 1] = [(
    1,
    "the printed split table disagrees with the product in five entries",
)];

type Outcome = Result<String, String>;

// ---------- oracles ----------

const ORACLE_LINES: [[usize; 3]; 7] = [[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 4, 6], [2, 7, 5], [3, 7, 4], [3, 6, 5]];

/// `ε^{ijk}` with 1-based indices.
fn eps(i: usize, j: usize, k: usize) -> i64 {
    for [a, b, c] in ORACLE_LINES {
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            if (i, j, k) == (x, y, z) {
                return 1;
            }
            if (i, j, k) == (y, x, z) {
                return -1;
            }
        }
    }
    0
}

/// Gaussian integer.
type G = (i64, i64);

fn gmul(a: G, b: G) -> G {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn gadd(a: G, b: G) -> G {
    (a.0 + b.0, a.1 + b.1)
}

/// Octonion product on coordinates `(1, o1..o7)` from `o_a o_b = -δ_ab + Σ ε^{abc} o_c`.
fn omul(x: &[G; 8], y: &[G; 8]) -> [G; 8] {
    let mut out = [(0, 0); 8];
    for a in 0..8 {
        for b in 0..8 {
            let p = gmul(x[a], y[b]);
            if p == (0, 0) {
                continue;
            }
            match (a, b) {
                (0, _) => out[b] = gadd(out[b], p),
                (_, 0) => out[a] = gadd(out[a], p),
                _ if a == b => out[0] = gadd(out[0], (-p.0, -p.1)),
                _ => {
                    for c in 1..8 {
                        let e = eps(a, b, c);
                        if e != 0 {
                            out[c] = gadd(out[c], (e * p.0, e * p.1));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Standard coordinates of `t, u_m, v_m` and `w = 2 + 2t`.
fn split_coords(sym: &str) -> Option<[G; 8]> {
    let mut v = [(0, 0); 8];
    match sym {
        "t" => v[1] = (0, 1),
        "w" => {
            v[0] = (2, 0);
            v[1] = (0, 2);
        }
        _ => {
            let m: usize = sym.get(1..)?.parse().ok()?;
            let s = match sym.chars().next()? {
                'u' => 1,
                'v' => -1,
                _ => return None,
            };
            v[2 * m] = (1, 0);
            v[2 * m + 1] = (0, s);
        }
    }
    Some(v)
}

fn printed_split(entry: &str) -> Option<[G; 8]> {
    let (sign, rest) = entry.strip_prefix('-').map_or((1, entry), |r| (-1, r));
    let digits: String = rest.chars().take_while(char::is_ascii_digit).collect();
    let sym = &rest[digits.len()..];
    if sym.is_empty() {
        let mut v = [(0, 0); 8];
        v[0] = (sign * digits.parse::<i64>().ok()?, 0);
        return Some(v);
    }
    let c = sign * if digits.is_empty() { 1 } else { digits.parse::<i64>().ok()? };
    Some(split_coords(sym)?.map(|(a, b)| (c * a, c * b)))
}

fn q(n: i64) -> Rational {
    Rational::from_i64(n)
}

fn var(i: usize) -> NcPoly<Rational> {
    NcPoly::var(i as u8 - 1)
}

/// `r_i = Σ ε^{ipq} x_p x_q` built from the oracle epsilon.
fn oracle_relations() -> Vec<NcPoly<Rational>> {
    (1..=7)
        .map(|i| {
            let mut r = NcPoly::zero();
            for p in 1..=7 {
                for s in 1..=7 {
                    let e = eps(i, p, s);
                    if e != 0 {
                        r.add_term(Word(vec![p as u8 - 1, s as u8 - 1]), q(e));
                    }
                }
            }
            r
        })
        .collect()
}

fn oracle_w() -> NcPoly<Rational> {
    let mut w = NcPoly::zero();
    for i in 1..=7 {
        for j in 1..=7 {
            for k in 1..=7 {
                if eps(i, j, k) != 0 {
                    w.add_term(Word(vec![i as u8 - 1, j as u8 - 1, k as u8 - 1]), q(eps(i, j, k)));
                }
            }
        }
    }
    w
}

/// Coefficients of `num/den` through `t^order`, by long division.
fn expand(num: &[i128], den: &[i128], order: usize) -> Vec<i128> {
    let mut out = vec![0i128; order + 1];
    for n in 0..=order {
        let mut c = num.get(n).copied().unwrap_or(0);
        for k in 1..den.len().min(n + 1) {
            c -= den[k] * out[n - k];
        }
        out[n] = c / den[0];
    }
    out
}

/// `1/(1 - 7t + 7t^2 - t^3)` by its recurrence.
fn h_a(order: usize) -> Vec<i128> {
    expand(&[1], &[1, -7, 7, -1], order)
}

fn as_i128(s: &TruncSeries) -> Vec<i128> {
    s.coeffs().iter().map(|c| c.try_into().unwrap()).collect()
}

/// The degree-3 cyclic derivative `∂_i(x_a x_b x_c)`: sum over the cyclic rotations starting with `x_i`.
fn cyclic_derivative(p: &NcPoly<Rational>, i: u8) -> NcPoly<Rational> {
    let mut out = NcPoly::zero();
    for (w, c) in p.terms() {
        let l = &w.0;
        for r in 0..l.len() {
            if l[r] == i {
                let rest: Vec<u8> = l[r + 1..].iter().chain(&l[..r]).copied().collect();
                out.add_term(Word(rest), c.clone());
            }
        }
    }
    out
}

fn report_ok(r: &Report) -> Result<(), String> {
    let f: Vec<String> = r.failures().iter().map(|c| format!("{}: {}", c.id, c.details)).collect();
    if f.is_empty() {
        Ok(())
    } else {
        Err(f.join("; "))
    }
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

// ---------- criteria ----------

fn c1_tables() -> Outcome {
    let mut bad = Vec::new();
    for r in 1..=7 {
        for s in 1..=7 {
            let mut x = [(0, 0); 8];
            let mut y = [(0, 0); 8];
            x[r] = (1, 0);
            y[s] = (1, 0);
            let prod = omul(&x, &y);
            let e = PRINTED_TABLE_O[r - 1][s - 1];
            let mut printed = [(0, 0); 8];
            if e == 0 {
                printed[0] = (-1, 0);
            } else {
                printed[e.unsigned_abs() as usize] = (e.signum() as i64, 0);
            }
            if prod != printed {
                bad.push(format!("o{r}o{s}"));
            }
        }
    }
    let names = ["t", "u1", "u2", "u3", "v1", "v2", "v3"];
    for (r, a) in names.iter().enumerate() {
        for (s, b) in names.iter().enumerate() {
            let prod = omul(&split_coords(a).unwrap(), &split_coords(b).unwrap());
            let printed = printed_split(PRINTED_TABLE_SO[r][s]).ok_or("unparsable printed entry")?;
            if prod != printed {
                bad.push(format!("{a}{b} (printed {})", PRINTED_TABLE_SO[r][s]));
            }
        }
    }
    // the library agrees with the oracle on every standard product
    let lib = octalg::fano_octonion::standard_table::<Rational>();
    for r in 0..7 {
        for s in 0..7 {
            let got: Vec<Rational> = lib[r][s].coeffs.to_vec();
            let mut x = [(0, 0); 8];
            let mut y = [(0, 0); 8];
            x[r + 1] = (1, 0);
            y[s + 1] = (1, 0);
            let want: Vec<Rational> = omul(&x, &y).iter().map(|g| q(g.0)).collect();
            ensure(got == want, format!("library product o{}o{} differs from the oracle", r + 1, s + 1))?;
        }
    }
    if bad.is_empty() {
        Ok("98 entries agree".into())
    } else {
        Err(format!("{} of 98 printed entries differ: {}", bad.len(), bad.join(", ")))
    }
}

fn c2_relations() -> Outcome {
    let oracle = oracle_relations();
    let lib = relations_from_mu::<Rational>();
    ensure(oracle == lib, "relations from mu* differ from the epsilon oracle")?;
    let w = oracle_w();
    let cyc: Vec<NcPoly<Rational>> = (0..7).map(|i| cyclic_derivative(&w, i)).collect();
    let vec2 = |ps: &[NcPoly<Rational>]| ps.iter().map(|p| p.coefficient_vector(2, 7)).collect::<Vec<_>>();
    let (a, b) = (vec2(&oracle), vec2(&cyc));
    ensure(rank_of_vectors(&a) == 7 && rank_of_vectors(&b) == 7, "a family has rank below 7")?;
    ensure(rank_of_vectors(&[a.clone(), b].concat()) == 7, "mu* and cyclic-derivative spans differ")?;
    let to_g = |v: &[Rational]| v.iter().map(|c| Gaussian::new(c.clone(), q(0))).collect::<Vec<_>>();
    let ga: Vec<Vec<Gaussian>> = a.iter().map(|v| to_g(v)).collect();
    let split: Vec<Vec<Gaussian>> = split_relations().map_err(err)?.iter().map(|p| p.coefficient_vector(2, 7)).collect();
    ensure(rank_of_vectors(&split) == 7, "split relations have rank below 7")?;
    ensure(rank_of_vectors(&[ga, split].concat()) == 7, "split presentation spans a different space")?;
    Ok("three presentations span one 7-dimensional space".into())
}

/// Counts words avoiding the given two-letter factors, by enumeration.
fn brute_count(n: usize, letters: u8, forbidden: &[(u8, u8)]) -> u64 {
    fn go(len: usize, last: Option<u8>, letters: u8, forbidden: &[(u8, u8)]) -> u64 {
        if len == 0 {
            return 1;
        }
        (0..letters)
            .filter(|&c| last.is_none_or(|l| !forbidden.contains(&(l, c))))
            .map(|c| go(len - 1, Some(c), letters, forbidden))
            .sum()
    }
    go(n, None, letters, forbidden)
}

fn c3_diamond() -> Outcome {
    let sys = RewriteSystem::from_presentation(&Presentation::<Rational>::algebra_a()).map_err(err)?;
    let amb = sys.ambiguities();
    ensure(amb.len() == 1, format!("{} ambiguities", amb.len()))?;
    ensure(amb[0].word == Word(vec![6, 5, 0]) && amb[0].resolvable, "the ambiguity is not a resolvable x7x6x1")?;
    let forbidden: Vec<(u8, u8)> = (0..6).map(|j| (6, j)).chain([(5, 0)]).collect();
    let lhs: Vec<(u8, u8)> = sys.forbidden().iter().map(|w| (w.0[0], w.0[1])).collect();
    ensure(lhs.len() == 7 && forbidden.iter().all(|f| lhs.contains(f)), "unexpected leading words")?;
    let counts: Vec<i128> = sys.count_normal_words_upto(6).iter().map(|c| c.try_into().unwrap()).collect();
    let brute: Vec<i128> = (0..=6).map(|n| brute_count(n, 7, &forbidden) as i128).collect();
    let lib_brute: Vec<i128> = (0..=5).map(|n| sys.count_normal_words_brute(n) as i128).collect();
    let series = h_a(6);
    ensure(counts == brute, format!("counts {counts:?} vs enumeration {brute:?}"))?;
    ensure(lib_brute[..] == brute[..6], "library enumeration disagrees")?;
    ensure(counts == series, format!("counts {counts:?} vs series {series:?}"))?;
    Ok(format!("one resolvable overlap; counts {counts:?} (the criterion's 8359, 48763 are misprints of 8365, 48756)"))
}

fn c4_cubic() -> Outcome {
    let r = oracle_relations();
    let mut cols: Vec<Vec<Rational>> = Vec::new();
    for p in &r {
        for j in 1..=7 {
            cols.push(p.mul(&var(j)).coefficient_vector(3, 7));
        }
    }
    for p in &r {
        for j in 1..=7 {
            cols.push(var(j).mul(p).neg().coefficient_vector(3, 7));
        }
    }
    let m = Matrix::from_fn(343, 98, |row, col| cols[col][row].clone());
    let kernel = m.nullspace();
    ensure(kernel.len() == 1, format!("intersection has dimension {}", kernel.len()))?;
    let mut elem = vec![q(0); 343];
    for (c, col) in kernel[0].iter().zip(&cols).take(49) {
        for (e, x) in elem.iter_mut().zip(col) {
            *e = e.clone() + c.clone() * x.clone();
        }
    }
    ensure(
        rank_of_vectors(&[elem, oracle_w().coefficient_vector(3, 7)]) == 1,
        "the intersection is not spanned by W",
    )?;
    ensure(superpotential::<Rational>() == oracle_w(), "library W differs")?;
    Ok("dimension 1, spanned by W".into())
}

fn c5_koszul() -> Outcome {
    let m = matrix_m::<Rational>();
    let r = oracle_relations();
    for i in 0..7 {
        for j in 0..7 {
            ensure(m[i][j] == m[j][i].neg(), "M is not skew")?;
        }
        let mx = (0..7).fold(NcPoly::zero(), |acc, j| acc.add(&m[i][j].mul(&var(j + 1))));
        let xm = (0..7).fold(NcPoly::zero(), |acc, p| acc.add(&var(p + 1).mul(&m[p][i])));
        ensure(mx == r[i] && xm == r[i], format!("row {} does not reproduce r_{}", i + 1, i + 1))?;
    }
    let sys = RewriteSystem::from_presentation(&Presentation::<FBig>::algebra_a()).map_err(err)?;
    let h = h_a(20);
    for n in 1..=6 {
        let d = koszul_degree_ranks(&sys, n).map_err(err)?;
        let hn = |k: isize| if k < 0 { 0 } else { h[k as usize] as u64 };
        let n = n as isize;
        // A(-3) -> A(-2)^7 -> A(-1)^7 -> A, exact with A_0 as cokernel in degree 0
        let exact = d.rank_d3 == hn(n - 3)
            && d.rank_d2 + d.rank_d3 == 7 * hn(n - 2)
            && d.rank_d1 + d.rank_d2 == 7 * hn(n - 1)
            && d.rank_d1 == hn(n);
        ensure(exact, format!("degree {n}: ranks {} {} {}", d.rank_d1, d.rank_d2, d.rank_d3))?;
    }
    report_ok(&koszul_complex_check(6).map_err(err)?)?;
    let prod = (0..=20).map(|n| {
        [1i128, -7, 7, -1].iter().enumerate().filter(|(k, _)| *k <= n).map(|(k, c)| c * h[n - k]).sum::<i128>()
    });
    ensure(prod.enumerate().all(|(n, c)| c == i128::from(n == 0)), "functional equation fails")?;
    let lib: Vec<i128> = as_i128(&octalg::series::hilbert_a(20));
    ensure(lib == h, "library H_A differs from the recurrence")?;
    Ok("M skew, Mx = xM = r, exact through degree 6, functional equation through t^20".into())
}

fn c6_dual() -> Outcome {
    let (d, rep) = build_dual_checked::<Rational>().map_err(err)?;
    report_ok(&rep)?;
    let dims: Vec<usize> = (0..4).map(|k| (0..16).filter(|&b| dual_degree(b) == k).count()).collect();
    ensure(dims == [1, 7, 7, 1], format!("dims {dims:?}"))?;
    let one = |b: usize| {
        let mut v = vec![q(0); 16];
        v[b] = q(1);
        v
    };
    // ξ^a ξ^b = Σ ε^{abl} η_l and ξ^a ξ^b ξ^c = φ(o_a, o_b, o_c) ω = ε^{abc} ω
    for a in 1..=7 {
        for b in 1..=7 {
            let ab = d.mul_basis(a, b).to_vec();
            let want: Vec<Rational> = (0..16).map(|k| if (8..15).contains(&k) { q(eps(a, b, k - 7)) } else { q(0) }).collect();
            ensure(ab == want, format!("ξ{a}ξ{b}"))?;
            for c in 1..=7 {
                let abc = d.mul(&ab, &one(c));
                let phi = octalg::fano_octonion::phi(
                    &octalg::fano_octonion::Octonion::<Rational>::unit(a).unwrap(),
                    &octalg::fano_octonion::Octonion::unit(b).unwrap(),
                    &octalg::fano_octonion::Octonion::unit(c).unwrap(),
                )
                .map_err(err)?;
                ensure(abc == one(15).iter().map(|x| x.clone() * phi.clone()).collect::<Vec<_>>(), "triple product")?;
                ensure(phi == q(eps(a, b, c)), "phi differs from epsilon")?;
            }
        }
    }
    let (form, frep) = frobenius_check(&d);
    report_ok(&frep)?;
    ensure(form.gram.rank() == 16, "Gram matrix is degenerate")?;
    ensure(form.gram == form.gram.transpose(), "form is not symmetric")?;
    for x in 0..16 {
        for y in 0..16 {
            for z in 0..16 {
                let lhs = form.eval(d.mul_basis(x, y), &one(z));
                let rhs = form.eval(&one(x), d.mul_basis(y, z));
                ensure(lhs == rhs, "form is not associative")?;
            }
        }
    }
    let p = perp_in_exterior_square(&oracle_relations());
    ensure(p == 14, format!("perp dimension {p}"))?;
    let _ = DualAlgebra::<Rational>::from_octonions();
    Ok("dims (1,7,7,1), products, Frobenius rank 16, perp 14".into())
}

fn c7_bimodule() -> Outcome {
    report_ok(&bimodule_complex_check().map_err(err)?)?;
    Ok("d∘d = 0 and alpha squares commute on generators".into())
}

fn c8_lie() -> Outcome {
    let dims: Vec<i128> = lie_dims(8).map_err(err)?.iter().map(|c| c.try_into().unwrap()).collect();
    ensure(dims[..6] == [7, 14, 64, 280, 1344, 6496], format!("{:?}", &dims[..6]))?;
    // Π (1 - t^n)^{-L_n} through t^8
    let mut series = vec![0i128; 9];
    series[0] = 1;
    for (k, &l) in dims.iter().enumerate() {
        let n = k + 1;
        for _ in 0..l {
            for j in n..=8 {
                series[j] += series[j - n];
            }
        }
    }
    let h = h_a(8);
    ensure(series == h, format!("PBW product {series:?} vs {h:?}"))?;
    Ok("Lie dimensions 7, 14, 64, 280, 1344, 6496; PBW product matches through t^8".into())
}

fn c9_ore() -> Outcome {
    report_ok(&ore_delta_check(7).map_err(err)?)?;
    let (_, b) = build_b(10).map_err(err)?;
    report_ok(&b)?;
    let hb: Vec<i128> = (0..=10).map(|n| brute_count(n, 6, &[(5, 0)]) as i128).collect();
    let partial: Vec<i128> = hb.iter().scan(0, |acc, x| {
        *acc += x;
        Some(*acc)
    }).collect();
    ensure(partial == h_a(10), "H_A != H_B/(1-t)")?;
    Ok(format!("δ kills the relation of B; H_B = {:?}...; H_A = H_B/(1-t) through t^10", &hb[..5]))
}

fn c10_derivations() -> Outcome {
    report_ok(&derivations_check().map_err(err)?)?;
    report_ok(&derivation_brackets(7).map_err(err)?)?;
    report_ok(&invariants_check().map_err(err)?.0)?;
    Ok("21 derivations, 7 relations, span 14, closed, so(3) triples, invariants".into())
}

fn c11_quotients() -> Outcome {
    let e = |ks: &[usize]| -> Vec<Vec<Rational>> {
        ks.iter().map(|&k| (1..=7).map(|j| q(i64::from(j == k))).collect()).collect()
    };
    let cases: [(&str, Vec<usize>, Vec<i128>); 4] = [
        ("A/(x1,x2,x3)", vec![1, 2, 3], vec![1, -4, 3]),
        ("A/(x4..x7)", vec![4, 5, 6, 7], vec![1, -3, 3, -1]),
        ("A/(x5,x6,x7)", vec![5, 6, 7], vec![1, -4, 6, -4, 1]),
        ("A/(x7)", vec![7], vec![1, -6, 7, -2]),
    ];
    let mut seen = Vec::new();
    for (name, ks, den) in cases {
        let got: Vec<i128> = quotient_hilbert(&e(&ks), 8).map_err(err)?.coeffs.iter().map(|c| c.try_into().unwrap()).collect();
        let want = expand(&[1], &den, 8);
        ensure(got == want, format!("{name}: {got:?} vs {want:?}"))?;
        seen.push(format!("{name} {:?}", &got[..4]));
    }
    let mut planes = Vec::new();
    for (name, ks) in [("6-plane", vec![2, 3, 4, 5, 6, 7]), ("5-plane", vec![3, 4, 5, 6, 7]), ("4-plane", vec![4, 5, 6, 7])] {
        let c = quotient_hilbert(&e(&ks), 8).map_err(err)?.coeffs;
        planes.push((name, TruncSeries::from_counts(&c)));
    }
    let rep = ideal_series_identities(&octalg::series::hilbert_a(8), &planes);
    ensure(rep.checks.len() == 6, "missing identity checks")?;
    report_ok(&rep)?;
    Ok(seen.join("; "))
}

fn oracle_relation_matrices(rep: &RepAssignment<Rational>) -> Vec<Matrix<Rational>> {
    (1..=7)
        .map(|i| {
            let mut m = Matrix::zeros(rep.n, rep.n);
            for p in 1..=7 {
                for s in 1..=7 {
                    if eps(i, p, s) != 0 {
                        m = m.add(&rep.x[p - 1].mul(&rep.x[s - 1]).scale(&q(eps(i, p, s))));
                    }
                }
            }
            m
        })
        .collect()
}

fn c12_reps() -> Outcome {
    let so = so31_rep::<Rational>();
    ensure(is_module(&so).is_module, "so(3,1) is not a module")?;
    ensure(oracle_relation_matrices(&so).iter().all(Matrix::is_zero), "oracle: so(3,1) is not a module")?;
    ensure(generated_algebra_dim(&so.x) == 16, "so(3,1) does not generate M_4")?;
    report_ok(&trace_identity_check(&so).map_err(err)?)?;
    for n in 0..=4 {
        let r = diffop_rep(n);
        ensure(is_module(&r).is_module, format!("diffop_rep({n}) is not a module"))?;
        report_ok(&trace_identity_check(&r).map_err(err)?)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 1..=3 {
        for _ in 0..1000 {
            let rep = octalg::suites::random_assignment(&mut rng, n);
            let oracle = oracle_relation_matrices(&rep).iter().all(Matrix::is_zero);
            ensure(
                is_module(&rep).is_module == oracle && is_module_octonion(&rep) == oracle,
                format!("criteria disagree for n = {n}"),
            )?;
        }
    }
    // cocycles: the (1,2) entry of r_i is Σ ε^{ipq}(λ_p ν_q + ν_p μ_q), linear in ν
    for _ in 0..100 {
        let lambda: Vec<Rational> = (0..7).map(|_| Rational::random(&mut rng, 5)).collect();
        let mu: Vec<Rational> = (0..7).map(|_| Rational::random(&mut rng, 5)).collect();
        if lambda == mu {
            continue;
        }
        let z = Matrix::from_fn(7, 7, |i, s| {
            (1..=7).fold(q(0), |acc, p| {
                acc + q(eps(i + 1, p, s + 1)) * lambda[p - 1].clone() + q(eps(i + 1, s + 1, p)) * mu[p - 1].clone()
            })
        });
        let cocycles = 7 - z.rank();
        let e = ext1(&lambda, &mu).map_err(err)?;
        ensure(cocycles == 1 && e.ext1_dim == 0 && e.cocycle_dim == 1, format!("cocycles {cocycles}, library {e:?}"))?;
    }
    Ok("modules verified, 3000 random assignments agree, Ext^1 = 0 on 100 pairs".into())
}

fn c13_quiver() -> Outcome {
    report_ok(&moduli_check_f3(8).map_err(err)?)?;
    let e = e_check().map_err(err)?;
    report_ok(&e)?;
    Ok("1093^2 pairs agree; fibers 3 on the quadric, 1 off it; dim E = 59, kernel = span r".into())
}

fn main() -> ExitCode {
    let criteria: [(usize, &str, u64, fn() -> Outcome); 13] = [
        (1, "multiplication tables", 1, c1_tables),
        (2, "relations agree", 1, c2_relations),
        (3, "diamond lemma and counts", 30, c3_diamond),
        (4, "cubic intersection is spanned by W", 5, c4_cubic),
        (5, "Koszul data", 60, c5_koszul),
        (6, "dual algebra", 5, c6_dual),
        (7, "bimodule complex", 10, c7_bimodule),
        (8, "Lie dimensions and PBW", 1, c8_lie),
        (9, "Ore structure", 5, c9_ore),
        (10, "derivations", 30, c10_derivations),
        (11, "quotient Hilbert series", 60, c11_quotients),
        (12, "representations", 60, c12_reps),
        (13, "quiver and moduli", 120, c13_quiver),
    ];
    let mut unexpected = 0;
    for (id, name, budget, f) in criteria {
        let start = Instant::now();
        let mut outcome = f();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > Duration::from_secs(budget) {
            outcome = Err(format!("took {:.1}s, budget {budget}s", elapsed.as_secs_f64()));
        }
        let expected = EXPECTED_FAILURES.iter().find(|(k, _)| *k == id);
        let (status, detail) = match (&outcome, expected) {
            (Ok(d), None) => ("PASS", d.clone()),
            (Err(d), Some((_, why))) => ("FAIL", format!("{d} (expected: {why})")),
            (Err(d), None) => {
                unexpected += 1;
                ("FAIL", d.clone())
            }
            (Ok(d), Some(_)) => {
                unexpected += 1;
                ("PASS", format!("{d} (unexpected pass of a known failure)"))
            }
        };
        println!("criterion {id:>2} {status}  {name}  [{:.2}s]  {detail}", elapsed.as_secs_f64());
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria changed status");
        ExitCode::FAILURE
    }
}
