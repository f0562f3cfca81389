//! Named verification suites assembled from the checks of each module.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fano_octonion::{eps0, form, phi, Octonion, LINES};
use crate::field::{Field, Gaussian, Rational};
use crate::koszul::{
    bimodule_complex_check, build_dual_checked, cubic_intersection, koszul_complex_check,
    not_noetherian_certificate,
};
use crate::linalg::{rank_of_vectors, Matrix};
use crate::ncpoly::{permute_positions, relations_from_mu, superpotential, tensor_rank, NcPoly, Word};
use crate::parse::parse_poly;
use crate::quiver::{count_moduli_points_dyn, e_check, moduli_check_f3, moduli_check_rational};
use crate::report::Report;
use crate::reps::{
    diffop_rep, equivalence_check, ext1_vanishing_check, irreducibility_report, is_module, so31_rep,
    trace_identity_check, RepAssignment,
};
use crate::rewrite::{quotient_hilbert, Presentation, RewriteSystem};
use crate::series::{
    expand_rational_i64, hilbert_a, ideal_series_identities, is_positive, koszul_functional_equation,
    lie_dims, pbw_check, radius_bracket, TruncSeries,
};
use crate::structure::{
    build_b, derivation_brackets, derivations_check, invariants_check, ore_delta_check, rank_six_lemma_inputs,
};
use crate::tables::tables_check;

pub const SUITES: [&str; 8] = ["octonion", "relations", "rewrite", "series", "koszul", "structure", "reps", "quiver"];

/// Knobs shared by the suites; every randomized check draws from `seed`.
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Top degree for Koszul exactness.
    pub max_degree: usize,
    /// Order for series identities.
    pub series_order: usize,
    /// Top degree for brute-force normal-word counts.
    pub brute_degree: usize,
    /// Random samples per randomized check.
    pub samples: usize,
    pub prime: u64,
    pub budget: u64,
    pub shards: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 7,
            max_degree: 6,
            series_order: 20,
            brute_degree: 6,
            samples: 1000,
            prime: 3,
            budget: 100_000,
            shards: 8,
        }
    }
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<Report> {
    match name {
        "octonion" => octonion_suite(opts),
        "relations" => relations_suite(),
        "rewrite" => rewrite_suite(opts),
        "series" => series_suite(opts),
        "koszul" => koszul_suite(opts),
        "structure" => structure_suite(opts),
        "reps" => reps_suite(opts),
        "quiver" => quiver_suite(opts),
        "all" => run_all(opts),
        _ => Err(Error::Parse(format!("unknown suite '{name}'"))),
    }
}

/// Runs every suite in parallel and assembles the reports in a fixed order.
pub fn run_all(opts: &SuiteOptions) -> Result<Report> {
    let results: Vec<Result<Report>> = std::thread::scope(|s| {
        let handles: Vec<_> = SUITES.iter().map(|name| s.spawn(move || run_suite(name, opts))).collect();
        handles.into_iter().map(|h| h.join().expect("suite panicked")).collect()
    });
    let mut all = Report::new("all");
    for r in results {
        all.extend(r?);
    }
    Ok(all)
}

fn octonion_suite(opts: &SuiteOptions) -> Result<Report> {
    let mut report = Report::new("octonion");
    report.extend(tables_check()?);
    let nonzero = (0..7)
        .flat_map(|i| (0..7).flat_map(move |j| (0..7).map(move |k| (i, j, k))))
        .filter(|&(i, j, k)| eps0(i, j, k) != 0)
        .count();
    report.push("epsilon", nonzero == 42, "epsilon has 42 nonzero entries", nonzero.to_string());
    let pairs_ok = (1..=7).all(|a| {
        (a + 1..=7).all(|b| LINES.iter().filter(|l| l.contains(&a) && l.contains(&b)).count() == 1)
    });
    report.push("lines", pairs_ok, "every pair of points lies on exactly one line", "");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut ok = true;
    let samples = opts.samples.min(200);
    for _ in 0..samples {
        let r = |rng: &mut ChaCha8Rng| Octonion::<Rational>::new(std::array::from_fn(|_| Rational::random(rng, 4)));
        let (a, b) = (r(&mut rng), r(&mut rng));
        // alternative laws, multiplicative norm and conjugation reversing products
        ok &= a.mul(&a).mul(&b) == a.mul(&a.mul(&b));
        ok &= b.mul(&a).mul(&a) == b.mul(&a.mul(&a));
        ok &= form(&a.mul(&b), &a.mul(&b)) == form(&a, &a) * form(&b, &b);
        ok &= a.mul(&b).conj() == b.conj().mul(&a.conj());
        let (u, v, w) = (a.im_part(), b.im_part(), r(&mut rng).im_part());
        ok &= phi(&u, &v, &w)? == -phi(&v, &u, &w)?;
    }
    report.push_sampled(
        "composition",
        ok,
        "alternative laws, multiplicative norm, conjugation and alternating phi",
        format!("{samples} random pairs"),
    );
    Ok(report)
}

/// The split presentation over a field containing `i`.
pub const SPLIT_RELATIONS: [&str; 7] = [
    "[t,u3] - [v2,v1]",
    "[t,u2] - [v1,v3]",
    "[t,u1] - [v3,v2]",
    "[u1,v1] + [u2,v2] + [u3,v3]",
    "[t,v3] - [u1,u2]",
    "[t,v2] - [u3,u1]",
    "[t,v1] - [u2,u3]",
];

pub fn split_relations() -> Result<Vec<NcPoly<Gaussian>>> {
    SPLIT_RELATIONS.iter().map(|s| parse_poly::<Gaussian>(s)).collect()
}

fn vectors<F: Field>(ps: &[NcPoly<F>], d: usize) -> Vec<Vec<F>> {
    ps.iter().map(|p| p.coefficient_vector(d, 7)).collect()
}

/// Checks that several families span one and the same subspace of the given dimension.
fn same_span<F: Field>(families: &[Vec<Vec<F>>], dim: usize) -> bool {
    families.iter().all(|f| rank_of_vectors(f) == dim) && rank_of_vectors(&families.concat()) == dim
}

fn relations_suite() -> Result<Report> {
    let mut report = Report::new("relations");
    let mu = relations_from_mu::<Rational>();
    let w = superpotential::<Rational>();
    let cyclic: Vec<NcPoly<Rational>> = (0..7).map(|i| w.cyclic_derivative(i)).collect();
    report.push(
        "mu-vs-superpotential",
        same_span(&[vectors(&mu, 2), vectors(&cyclic, 2)], 7),
        "relations from mu* and cyclic derivatives of W span the same 7-dimensional space",
        "",
    );
    let mu_g = relations_from_mu::<Gaussian>();
    let cyclic_g: Vec<NcPoly<Gaussian>> = (0..7).map(|i| superpotential::<Gaussian>().cyclic_derivative(i)).collect();
    let split = split_relations()?;
    report.push(
        "split-presentation",
        same_span(&[vectors(&mu_g, 2), vectors(&cyclic_g, 2), vectors(&split, 2)], 7),
        "over Q(i) the split presentation spans the same space",
        "",
    );
    // r6 + i r7, r5 - i r4, r3 - i r2, r1, r6 - i r7, r5 + i r4, r3 + i r2
    let i = Gaussian::i();
    let combos = [(5, 6, 1), (4, 3, -1), (2, 1, -1), (0, 0, 0), (5, 6, -1), (4, 3, 1), (2, 1, 1)];
    let proportional = split.iter().zip(combos).all(|(s, (a, b, sign))| {
        let c = if sign == 0 {
            mu_g[a].clone()
        } else {
            mu_g[a].add(&mu_g[b].scale(&(i.clone() * Gaussian::from_i64(sign))))
        };
        rank_of_vectors(&[s.coefficient_vector(2, 7), c.coefficient_vector(2, 7)]) == 1
    });
    report.push(
        "split-combinations",
        proportional,
        "each split relation is a multiple of the stated combination of r_1..r_7",
        "",
    );
    let cubic = cubic_intersection(&mu)?;
    report.push(
        "cubic-intersection",
        rank_of_vectors(&[cubic.coefficient_vector(3, 7), w.coefficient_vector(3, 7)]) == 1,
        "V⊗R ∩ R⊗V is one-dimensional and spanned by W",
        "exact kernel in the 343-dimensional degree-3 space",
    );
    let cyc = permute_positions(&w, [1, 2, 0]) == w && permute_positions(&w, [1, 0, 2]) == w.neg();
    report.push("w-symmetry", cyc, "W is cyclically invariant and alternating", "");
    let ranks: Vec<usize> = mu.iter().map(tensor_rank).collect::<Result<_>>()?;
    report.push("relation-ranks", ranks.iter().all(|&r| r == 6), "each r_i has rank 6 as a tensor", format!("{ranks:?}"));
    Ok(report)
}

fn rewrite_suite(opts: &SuiteOptions) -> Result<Report> {
    let mut report = Report::new("rewrite");
    let sys = RewriteSystem::from_presentation(&Presentation::<Rational>::algebra_a())?;
    let forbidden: Vec<String> = sys.forbidden().iter().map(ToString::to_string).collect();
    report.push(
        "rules",
        forbidden.len() == 7 && forbidden.iter().all(|w| w.starts_with("x7") || w == "x6*x1"),
        "the leading words are x7x1..x7x6 and x6x1",
        forbidden.join(", "),
    );
    let amb = sys.ambiguities();
    let words: Vec<String> = amb.iter().map(|a| a.word.to_string()).collect();
    report.push(
        "ambiguities",
        amb.len() == 1 && words[0] == "x7*x6*x1" && amb[0].resolvable,
        "the only ambiguity is x7x6x1 and it resolves",
        words.join(", "),
    );
    let n = opts.brute_degree;
    let counts = sys.count_normal_words_upto(n.max(8));
    let series = hilbert_a(n.max(8));
    let recurrence_ok = counts.iter().enumerate().all(|(k, c)| series.coeff(k) == num_bigint::BigInt::from(c.clone()));
    report.push(
        "counts",
        recurrence_ok,
        "normal-word counts equal the coefficients of (1-7t+7t^2-t^3)^-1",
        format!("{:?}", counts.iter().map(ToString::to_string).collect::<Vec<_>>()),
    );
    let brute: Vec<u64> = (0..=n).map(|k| sys.count_normal_words_brute(k)).collect();
    let brute_ok = brute.iter().zip(&counts).all(|(b, c)| num_bigint::BigUint::from(*b) == *c);
    report.push("brute-force", brute_ok, "transfer counts equal brute-force enumeration", format!("{brute:?} through degree {n}"));
    Ok(report)
}

fn series_suite(opts: &SuiteOptions) -> Result<Report> {
    let mut report = Report::new("series");
    let order = opts.series_order;
    let h = hilbert_a(order);
    let fe = koszul_functional_equation(&h, &[1, 7, 7, 1]);
    report.push("functional-equation", fe.is_none(), "(1-7t+7t^2-t^3) H_A(t) = 1", format!("through t^{order}"));
    let dims = lie_dims(6)?;
    let expected = [7, 14, 64, 280, 1344, 6496];
    report.push(
        "lie-dims",
        dims.iter().zip(expected).all(|(d, e)| *d == e.into()),
        "the free Lie algebra degree dimensions are 7, 14, 64, 280, 1344, 6496",
        format!("{:?}", dims.iter().map(ToString::to_string).collect::<Vec<_>>()),
    );
    let more = lie_dims(8)?;
    report.push("pbw", pbw_check(&more, &hilbert_a(8), 8), "the PBW product reproduces H_A through t^8", "");
    let (a, b) = radius_bracket();
    report.push(
        "radius",
        is_positive(&a) && !is_positive(&b),
        "1-6t+t^2 changes sign between 1/6 and 1/5",
        format!("{a} and {b}"),
    );
    let e = |ks: &[usize]| -> Vec<Vec<Rational>> {
        ks.iter()
            .map(|&k| {
                let mut v = vec![Rational::from_i64(0); 7];
                v[k - 1] = Rational::from_i64(1);
                v
            })
            .collect()
    };
    let qn = 8;
    let quotients: [(&str, Vec<usize>, Vec<i64>, Vec<i64>); 4] = [
        ("x1,x2,x3", vec![1, 2, 3], vec![1], vec![1, -4, 3]),
        ("x4..x7", vec![4, 5, 6, 7], vec![1], vec![1, -3, 3, -1]),
        ("x5,x6,x7", vec![5, 6, 7], vec![1], vec![1, -4, 6, -4, 1]),
        ("x7", vec![7], vec![1], vec![1, -6, 7, -2]),
    ];
    for (name, ks, num, den) in quotients {
        let q = quotient_hilbert(&e(&ks), qn)?;
        let expected = expand_rational_i64(&num, &den, qn)?;
        let got = TruncSeries::from_counts(&q.coeffs);
        report.push(
            &format!("quotient.{name}"),
            got.first_difference(&expected).is_none(),
            "quotient Hilbert series equals its closed form",
            format!("{:?} ({:?})", got.to_strings(), q.certification),
        );
    }
    let planes = [("6-plane", vec![2, 3, 4, 5, 6, 7]), ("5-plane", vec![3, 4, 5, 6, 7]), ("4-plane", vec![4, 5, 6, 7])];
    let mut hq = Vec::new();
    for (name, ks) in planes {
        let q = quotient_hilbert(&e(&ks), qn)?;
        hq.push((name, TruncSeries::from_counts(&q.coeffs)));
    }
    report.extend(ideal_series_identities(&hilbert_a(qn), &hq));
    Ok(report)
}

fn koszul_suite(opts: &SuiteOptions) -> Result<Report> {
    let mut report = Report::new("koszul");
    let (_, dual) = build_dual_checked::<Rational>()?;
    report.extend(dual);
    report.extend(koszul_complex_check(opts.max_degree)?);
    report.extend(bimodule_complex_check()?);
    report.extend(not_noetherian_certificate(8, 20)?);
    Ok(report)
}

fn structure_suite(opts: &SuiteOptions) -> Result<Report> {
    let mut report = Report::new("structure");
    let (_, b) = build_b(8)?;
    report.extend(b);
    report.extend(ore_delta_check(opts.seed)?);
    report.extend(derivations_check()?);
    report.extend(derivation_brackets(opts.seed)?);
    report.extend(invariants_check()?.0);
    report.extend(rank_six_lemma_inputs(opts.seed, 30)?.0);
    Ok(report)
}

/// Small random assignment with entries of height at most 3.
pub fn random_assignment(rng: &mut ChaCha8Rng, n: usize) -> RepAssignment<Rational> {
    RepAssignment {
        n,
        x: (0..7).map(|_| Matrix::from_fn(n, n, |_, _| Rational::random(rng, 3))).collect(),
    }
}

fn reps_suite(opts: &SuiteOptions) -> Result<Report> {
    let mut report = Report::new("reps");
    let so31 = so31_rep::<Rational>();
    let so31_ok = is_module(&so31).is_module;
    report.push("so31", so31_ok, "the so(3,1) assignment is a module", "");
    let alg = crate::linalg::generated_algebra_dim(&so31.x);
    report.push("m4", alg == 16, "the so(3,1) assignment generates M_4", format!("dimension {alg}"));
    report.extend(trace_identity_check(&so31)?);
    for n in 0..=4 {
        let r = diffop_rep(n);
        let m = is_module(&r).is_module;
        report.push(&format!("diffop-{n}"), m, "the differential-operator assignment is a module", format!("dimension {}", n + 1));
        if m {
            let mut irr = irreducibility_report(&r);
            irr.suite = format!("diffop-{n}-irreducible");
            report.extend(irr);
            let mut tr = trace_identity_check(&r)?;
            tr.suite = format!("diffop-{n}-trace");
            report.extend(tr);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for n in 1..=3 {
        let mut agree = true;
        for _ in 0..opts.samples {
            agree &= equivalence_check(&random_assignment(&mut rng, n)).passed();
        }
        report.push(
            &format!("equivalence-{n}"),
            agree,
            "is_module agrees with Im(X^2) = 0 on random assignments",
            format!("{} samples of size {n}", opts.samples),
        );
    }
    let mut ext_ok = true;
    let pairs = (opts.samples / 10).max(1);
    for _ in 0..pairs {
        let lambda: Vec<Rational> = (0..7).map(|_| Rational::random(&mut rng, 5)).collect();
        let mu: Vec<Rational> = (0..7).map(|_| Rational::random(&mut rng, 5)).collect();
        if lambda == mu {
            continue;
        }
        ext_ok &= ext1_vanishing_check(&lambda, &mu)?.passed();
    }
    report.push_sampled("ext1", ext_ok, "Ext^1 vanishes between distinct one-dimensional modules", format!("{pairs} random pairs"));
    Ok(report)
}

fn quiver_suite(opts: &SuiteOptions) -> Result<Report> {
    let mut report = Report::new("quiver");
    report.extend(e_check()?);
    report.extend(moduli_check_f3(opts.shards)?);
    report.extend(moduli_check_rational(opts.seed, opts.samples));
    let c = count_moduli_points_dyn(opts.prime, opts.shards)?;
    report.push(
        "count",
        c.total == c.fibration_formula,
        "point count equals the fibration formula",
        format!(
            "p = {}: {} points, {} quadric points (smooth quadric formula {})",
            c.p, c.total, c.quadric_points, c.smooth_quadric_formula
        ),
    );
    Ok(report)
}

/// Normal form of an expression in `A`.
pub fn normal_form_text(expr: &str) -> Result<NcPoly<Rational>> {
    let sys = RewriteSystem::from_presentation(&Presentation::<Rational>::algebra_a())?;
    sys.normal_form(&parse_poly::<Rational>(expr)?)
}

/// Word helper for callers that only need a basis word.
pub fn word(letters: &[u8]) -> Word {
    Word(letters.iter().map(|l| l - 1).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> SuiteOptions {
        SuiteOptions {
            max_degree: 4,
            brute_degree: 4,
            samples: 20,
            ..SuiteOptions::default()
        }
    }

    #[test]
    fn relations_and_rewrite() {
        let r = run_suite("relations", &quick()).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        let r = run_suite("rewrite", &quick()).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
    }

    #[test]
    fn series() {
        let r = run_suite("series", &quick()).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
    }

    #[test]
    fn octonion_reports_split_table() {
        let r = run_suite("octonion", &quick()).unwrap();
        let f: Vec<&str> = r.failures().iter().map(|c| c.id.as_str()).collect();
        assert_eq!(f, vec!["tables.split"]);
    }

    #[test]
    fn reps() {
        let r = run_suite("reps", &quick()).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", &quick()).is_err());
    }

    #[test]
    fn normal_forms() {
        let nf = normal_form_text("x7*x1").unwrap();
        assert!(nf.coeff(&word(&[7, 1])).is_zero());
        assert!(!nf.is_zero());
        assert!(normal_form_text("x6*x1").unwrap().coeff(&word(&[6, 1])).is_zero());
    }
}
