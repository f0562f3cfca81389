//! Rewriting systems for quadratic algebras: replacement rules, overlap ambiguities,
//! normal forms and counts of normal words.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, SparseEchelon};
use crate::ncpoly::{relations_from_mu, NcPoly, Word};

/// A finitely presented graded algebra `k<x1..xn>/(relations)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation<F: Field> {
    pub letters: usize,
    pub relations: Vec<NcPoly<F>>,
}

impl<F: Field> Presentation<F> {
    /// The algebra `A` on seven generators with relations `r_1..r_7`.
    pub fn algebra_a() -> Self {
        Presentation {
            letters: 7,
            relations: relations_from_mu(),
        }
    }

    /// The subalgebra `B = k<x1..x6>/([x1,x6]+[x5,x2]+[x4,x3])`.
    pub fn algebra_b() -> Self {
        let x = |i: u8| NcPoly::<F>::var(i - 1);
        let rel = x(1)
            .commutator(&x(6))
            .add(&x(5).commutator(&x(2)))
            .add(&x(4).commutator(&x(3)));
        Presentation {
            letters: 6,
            relations: vec![rel],
        }
    }
}

/// Replacement `lhs -> rhs` where every word of `rhs` is smaller than `lhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct RewriteRule<F: Field> {
    pub lhs: Word,
    pub rhs: NcPoly<F>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

#[derive(Clone, Debug)]
pub struct RewriteSystem<F: Field> {
    letters: usize,
    rules: Vec<RewriteRule<F>>,
    lookup: HashMap<Vec<u8>, usize>,
    lengths: Vec<usize>,
    degree_cap: usize,
}

/// An overlap `w = lhs_a · s = p · lhs_b` reduced in the two possible ways.
#[derive(Clone, Debug)]
pub struct Ambiguity<F: Field> {
    pub word: Word,
    pub left: NcPoly<F>,
    pub right: NcPoly<F>,
    pub resolvable: bool,
}

pub const DEFAULT_DEGREE_CAP: usize = 12;

impl<F: Field> RewriteSystem<F> {
    fn build(letters: usize, rules: Vec<RewriteRule<F>>) -> Result<Self> {
        let mut lookup = HashMap::new();
        for (k, r) in rules.iter().enumerate() {
            if lookup.insert(r.lhs.0.clone(), k).is_some() {
                return Err(Error::RuleConflict(r.lhs.to_string()));
            }
        }
        let mut lengths: Vec<usize> = rules.iter().map(|r| r.lhs.degree()).collect();
        lengths.sort_unstable();
        lengths.dedup();
        Ok(RewriteSystem {
            letters,
            rules,
            lookup,
            lengths,
            degree_cap: DEFAULT_DEGREE_CAP,
        })
    }

    /// One rule per relation, solving each relation for its largest word.
    pub fn from_relations(letters: usize, relations: &[NcPoly<F>]) -> Result<Self> {
        let mut rules = Vec::new();
        for r in relations {
            let Some((lead, c)) = r.leading() else {
                continue;
            };
            let inv = c.inv().ok_or_else(|| Error::NonInvertibleLead(r.to_string()))?;
            let mut rhs = r.scale(&-inv);
            rhs.add_term(lead.clone(), F::one());
            rules.push(RewriteRule {
                lhs: lead.clone(),
                rhs,
            });
        }
        Self::build(letters, rules)
    }

    /// Rules from a row-reduced basis of the span of homogeneous relations, so that leading
    /// words are distinct even when the given relations share them.
    pub fn from_relation_space(letters: usize, relations: &[NcPoly<F>]) -> Result<Self> {
        let mut by_degree: BTreeMap<usize, Vec<&NcPoly<F>>> = BTreeMap::new();
        for r in relations.iter().filter(|r| !r.is_zero()) {
            if !r.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
            by_degree.entry(r.degree().unwrap_or(0)).or_default().push(r);
        }
        let mut reduced = Vec::new();
        for (d, rels) in by_degree {
            let n = letters.pow(d as u32);
            // columns in decreasing word order so pivots are leading words
            let m = Matrix::from_fn(rels.len(), n, |i, j| rels[i].coeff(&Word::from_rank(n - 1 - j, d, letters)));
            let (e, piv) = m.rref();
            for (row, _) in piv.iter().enumerate() {
                reduced.push(NcPoly::from_terms(
                    (0..n).map(|j| (Word::from_rank(n - 1 - j, d, letters), e[(row, j)].clone())),
                ));
            }
        }
        Self::from_relations(letters, &reduced)
    }

    pub fn from_presentation(p: &Presentation<F>) -> Result<Self> {
        Self::from_relation_space(p.letters, &p.relations)
    }

    pub fn with_degree_cap(mut self, cap: usize) -> Self {
        self.degree_cap = cap;
        self
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn rules(&self) -> &[RewriteRule<F>] {
        &self.rules
    }

    pub fn forbidden(&self) -> Vec<Word> {
        let mut v: Vec<Word> = self.rules.iter().map(|r| r.lhs.clone()).collect();
        v.sort();
        v
    }

    fn rule_at(&self, w: &[u8], pos: usize) -> Option<(usize, usize)> {
        for &len in &self.lengths {
            if pos + len <= w.len() {
                if let Some(&k) = self.lookup.get(&w[pos..pos + len]) {
                    return Some((k, len));
                }
            }
        }
        None
    }

    fn find_redex(&self, w: &[u8], strategy: Strategy) -> Option<(usize, usize, usize)> {
        match strategy {
            Strategy::Leftmost => (0..w.len()).find_map(|p| self.rule_at(w, p).map(|(k, l)| (p, k, l))),
            Strategy::Rightmost => (0..w.len())
                .rev()
                .find_map(|p| self.rule_at(w, p).map(|(k, l)| (p, k, l))),
        }
    }

    /// True when the word contains no left-hand side.
    pub fn is_normal(&self, w: &[u8]) -> bool {
        (0..w.len()).all(|p| self.rule_at(w, p).is_none())
    }

    /// Applies rule `k` at position `pos` of `w`, scaled by `c`, into `out`.
    fn expand(&self, w: &[u8], pos: usize, k: usize, c: &F, out: &mut BTreeMap<Word, F>) {
        let rule = &self.rules[k];
        let len = rule.lhs.degree();
        for (v, d) in rule.rhs.terms() {
            let mut nw = Vec::with_capacity(w.len() - len + v.degree());
            nw.extend_from_slice(&w[..pos]);
            nw.extend_from_slice(&v.0);
            nw.extend_from_slice(&w[pos + len..]);
            add_into(out, Word(nw), c.clone() * d.clone());
        }
    }

    fn reduce_map(&self, mut pending: BTreeMap<Word, F>, strategy: Strategy) -> NcPoly<F> {
        let mut result = Vec::new();
        while let Some((w, c)) = pending.pop_last() {
            match self.find_redex(&w.0, strategy) {
                None => result.push((w, c)),
                Some((pos, k, _)) => self.expand(&w.0, pos, k, &c, &mut pending),
            }
        }
        NcPoly::from_terms(result)
    }

    /// Normal form with the given redex-selection strategy. Words are always processed
    /// from the largest down, so each word is rewritten at most once.
    pub fn normal_form_with(&self, p: &NcPoly<F>, strategy: Strategy) -> Result<NcPoly<F>> {
        if let Some(d) = p.degree() {
            if d > self.degree_cap {
                return Err(Error::DegreeCap {
                    cap: self.degree_cap,
                    degree: d,
                });
            }
        }
        Ok(self.reduce_map(p.clone().into_terms(), strategy))
    }

    pub fn normal_form(&self, p: &NcPoly<F>) -> Result<NcPoly<F>> {
        self.normal_form_with(p, Strategy::Leftmost)
    }

    /// Normal form of a single word, without the degree cap.
    pub fn reduce_word(&self, w: &Word) -> NcPoly<F> {
        let mut m = BTreeMap::new();
        m.insert(w.clone(), F::one());
        self.reduce_map(m, Strategy::Leftmost)
    }

    pub fn reduce(&self, p: &NcPoly<F>) -> NcPoly<F> {
        self.reduce_map(p.clone().into_terms(), Strategy::Leftmost)
    }

    /// All overlap and inclusion ambiguities, each reduced both ways.
    pub fn ambiguities(&self) -> Vec<Ambiguity<F>> {
        let mut out = Vec::new();
        for (a, ra) in self.rules.iter().enumerate() {
            for (b, rb) in self.rules.iter().enumerate() {
                let la = &ra.lhs.0;
                let lb = &rb.lhs.0;
                // overlaps: suffix of la equals prefix of lb
                for k in 1..la.len().min(lb.len()) {
                    if la[la.len() - k..] == lb[..k] {
                        let mut w = la.clone();
                        w.extend_from_slice(&lb[k..]);
                        out.push(self.resolve(&w, (0, a), (la.len() - k, b)));
                    }
                }
                // inclusions: lb strictly inside la
                if a != b && lb.len() < la.len() {
                    for pos in 0..=(la.len() - lb.len()) {
                        if la[pos..pos + lb.len()] == lb[..] {
                            out.push(self.resolve(la, (0, a), (pos, b)));
                        }
                    }
                }
            }
        }
        out.sort_by(|x, y| x.word.cmp(&y.word));
        out
    }

    fn resolve(&self, w: &[u8], first: (usize, usize), second: (usize, usize)) -> Ambiguity<F> {
        let one_step = |(pos, k): (usize, usize)| {
            let mut m = BTreeMap::new();
            self.expand(w, pos, k, &F::one(), &mut m);
            self.reduce_map(m, Strategy::Leftmost)
        };
        let left = one_step(first);
        let right = one_step(second);
        let resolvable = left == right;
        Ambiguity {
            word: Word(w.to_vec()),
            left,
            right,
            resolvable,
        }
    }

    pub fn is_confluent(&self) -> bool {
        self.ambiguities().iter().all(|a| a.resolvable)
    }

    /// Number of words of length `n` avoiding every left-hand side, by a suffix automaton.
    pub fn count_normal_words(&self, n: usize) -> BigUint {
        self.count_normal_words_upto(n).pop().unwrap_or_else(BigUint::zero)
    }

    /// Counts for every length `0..=n`.
    pub fn count_normal_words_upto(&self, n: usize) -> Vec<BigUint> {
        let keep = self.lengths.last().copied().unwrap_or(1).saturating_sub(1);
        let mut states: HashMap<Vec<u8>, BigUint> = HashMap::new();
        states.insert(Vec::new(), BigUint::one());
        let mut counts = vec![BigUint::one()];
        for _ in 0..n {
            let mut next: HashMap<Vec<u8>, BigUint> = HashMap::new();
            for (s, c) in &states {
                for a in 0..self.letters as u8 {
                    let mut t = s.clone();
                    t.push(a);
                    let blocked = (0..t.len()).any(|p| self.lookup.contains_key(&t[p..]));
                    if blocked {
                        continue;
                    }
                    let cut = t.len().saturating_sub(keep);
                    *next.entry(t[cut..].to_vec()).or_insert_with(BigUint::zero) += c;
                }
            }
            states = next;
            counts.push(states.values().sum());
        }
        counts
    }

    /// Brute-force count of normal words of length `n`.
    pub fn count_normal_words_brute(&self, n: usize) -> u64 {
        Word::all(n, self.letters).filter(|w| self.is_normal(&w.0)).count() as u64
    }

    /// All normal words of length `n` in increasing order.
    pub fn normal_words(&self, n: usize) -> Vec<Word> {
        let mut level = vec![Word::empty()];
        for _ in 0..n {
            let mut next = Vec::new();
            for w in &level {
                for a in 0..self.letters as u8 {
                    let mut v = w.0.clone();
                    v.push(a);
                    let ok = self
                        .lengths
                        .iter()
                        .all(|&l| l > v.len() || !self.lookup.contains_key(&v[v.len() - l..]));
                    if ok {
                        next.push(Word(v));
                    }
                }
            }
            level = next;
        }
        level
    }
}

fn add_into<F: Field>(m: &mut BTreeMap<Word, F>, w: Word, c: F) {
    if c.is_zero() {
        return;
    }
    match m.entry(w) {
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

/// Dimensions of the degree-`n` components (`n = 0..=n_max`) of a homogeneous presentation,
/// computed as `letters^n - dim(span{a r b})` without any rewriting.
pub fn quotient_dims_linear<F: Field>(p: &Presentation<F>, n_max: usize) -> Result<Vec<u64>> {
    for r in &p.relations {
        if !r.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
    }
    let mut dims = Vec::new();
    for n in 0..=n_max {
        let total = p.letters.pow(n as u32);
        let mut ech = SparseEchelon::<F>::new();
        for r in &p.relations {
            let Some(d) = r.degree() else { continue };
            if d > n {
                continue;
            }
            let rest = n - d;
            for left_len in 0..=rest {
                let right_len = rest - left_len;
                for a in Word::all(left_len, p.letters) {
                    for b in Word::all(right_len, p.letters) {
                        let v = crate::linalg::sparse_from_pairs(r.terms().map(|(w, c)| {
                            (a.concat(w).concat(&b).rank_in_degree(p.letters), c.clone())
                        }));
                        ech.insert(v);
                    }
                }
            }
        }
        dims.push((total - ech.rank()) as u64);
    }
    Ok(dims)
}

/// How the dimensions of a quotient were certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    /// All ambiguities resolve; dimensions count normal words.
    Diamond,
    /// Per-degree linear algebra on the ideal, up to the requested degree.
    LinearAlgebra,
}

#[derive(Clone, Debug)]
pub struct QuotientHilbert<F: Field> {
    /// Rows of the invertible change of generators `y = T x`; the killed forms are `y_1..y_d`.
    pub change: Matrix<F>,
    pub presentation: Presentation<F>,
    pub coeffs: Vec<BigUint>,
    pub certification: Certification,
}

/// Presentation of `A / (ℓ_1, ..., ℓ_d)` for linear forms `ℓ_j` (coordinate vectors in
/// `x1..x7`), on the surviving generators after a linear change of variables.
pub fn quotient_presentation<F: Field>(
    base: &Presentation<F>,
    forms: &[Vec<F>],
) -> Result<(Matrix<F>, Presentation<F>)> {
    let n = base.letters;
    if forms.iter().any(|f| f.len() != n) {
        return Err(Error::SizeMismatch(format!("linear forms must have {n} coordinates")));
    }
    let (ech, piv) = if forms.is_empty() {
        (Matrix::zeros(0, n), Vec::new())
    } else {
        Matrix::from_rows(forms.to_vec()).rref()
    };
    if piv.len() != forms.len() {
        return Err(Error::DependentBasis);
    }
    let d = piv.len();
    let mut rows: Vec<Vec<F>> = (0..d).map(|r| ech.row(r).to_vec()).collect();
    for j in (0..n).filter(|j| !piv.contains(j)) {
        let mut e = vec![F::zero(); n];
        e[j] = F::one();
        rows.push(e);
    }
    let t = Matrix::from_rows(rows);
    let tinv = t.inverse().ok_or(Error::DependentBasis)?;
    // x_j = Σ_k tinv[j][k] y_k; drop y_0..y_{d-1} and relabel the rest from 0
    let images: Vec<NcPoly<F>> = (0..n)
        .map(|j| {
            NcPoly::from_terms((d..n).map(|k| (Word::letter((k - d) as u8), tinv[(j, k)].clone())))
        })
        .collect();
    let relations = base
        .relations
        .iter()
        .map(|r| r.substitute(&images))
        .filter(|r| !r.is_zero())
        .collect();
    Ok((
        t,
        Presentation {
            letters: n - d,
            relations,
        },
    ))
}

/// Hilbert coefficients of `A / (forms)` through degree `n_max`.
pub fn quotient_hilbert<F: Field>(forms: &[Vec<F>], n_max: usize) -> Result<QuotientHilbert<F>> {
    quotient_hilbert_of(&Presentation::algebra_a(), forms, n_max)
}

pub fn quotient_hilbert_of<F: Field>(
    base: &Presentation<F>,
    forms: &[Vec<F>],
    n_max: usize,
) -> Result<QuotientHilbert<F>> {
    let (change, presentation) = quotient_presentation(base, forms)?;
    let sys = RewriteSystem::from_presentation(&presentation)?;
    let (coeffs, certification) = if sys.is_confluent() {
        (sys.count_normal_words_upto(n_max), Certification::Diamond)
    } else {
        let dims = quotient_dims_linear(&presentation, n_max)?;
        (dims.into_iter().map(BigUint::from).collect(), Certification::LinearAlgebra)
    };
    Ok(QuotientHilbert {
        change,
        presentation,
        coeffs,
        certification,
    })
}

/// The Ore-extension presentation of `A/(x7)`: generators `x1..x6`, relations of
/// `R = k<x1..x5>/([x2,x3]+[x4,x5], [x2,x4]+[x5,x3])` and `[x6, x_i] = δ(x_i)`.
pub fn a_mod_x7_ore_presentation<F: Field>() -> Presentation<F> {
    let x = |i: u8| NcPoly::<F>::var(i - 1);
    let c = |a: u8, b: u8| x(a).commutator(&x(b));
    let delta = [
        c(5, 2).add(&c(4, 3)),
        c(1, 5),
        c(1, 4),
        c(3, 1),
        c(2, 1),
    ];
    let mut relations = vec![c(2, 3).add(&c(4, 5)), c(2, 4).add(&c(5, 3))];
    for (i, d) in delta.iter().enumerate() {
        relations.push(c(6, i as u8 + 1).sub(d));
    }
    Presentation {
        letters: 6,
        relations,
    }
}
