//! Permutation equivalence of codes.
//!
//! A position permutation `σ` acts on words by moving the block of
//! variables of position `i` to position `σ(i)`; it carries tables and bases
//! of `C` to tables and bases of `σ(C)` under the permuted variable order.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::code::{Code, VectorFq};
use crate::error::{Error, Result};
use crate::matphi::MatphiTable;
use crate::monomial::{self, AdmissibleOrder, Word};
use crate::perm::Permutation;
use crate::rbasis::{self, build_reduced_basis, Binomial, ReducedBasis};

fn lifted(sigma: &Permutation, m: usize) -> Permutation {
    Permutation::from_images(sigma.on_variables(m)).expect("block lift is a permutation")
}

fn permuted_order(order: &AdmissibleOrder, sigma_vars: &Permutation) -> AdmissibleOrder {
    let pi = sigma_vars.compose(&order.variable_order());
    AdmissibleOrder::with_variable_order(order.kind(), &pi)
}

fn check_len(sigma: &Permutation, nvars: usize, m: usize) -> Result<()> {
    if sigma.len() * m != nvars {
        return Err(Error::LengthMismatch { expected: nvars / m, found: sigma.len() });
    }
    Ok(())
}

/// `σ(G)`: a reduced basis of `σ(C)` for the permuted variable order.
pub fn permute_basis(sigma: &Permutation, g: &ReducedBasis) -> Result<ReducedBasis> {
    let m = g.vars_per_position();
    check_len(sigma, g.nvars(), m)?;
    let binomials = g
        .binomials()
        .iter()
        .map(|b| Binomial {
            head: monomial::permute_word(sigma, &b.head, m),
            tail: monomial::permute_word(sigma, &b.tail, m),
        })
        .collect();
    let n_words = g.n_words().iter().map(|w| monomial::permute_word(sigma, w, m)).collect();
    let order = permuted_order(g.order(), &lifted(sigma, m));
    Ok(ReducedBasis::from_parts(g.field().clone(), order, n_words, binomials, g.error_capability()))
}

/// The table of `σ(C)` over `σ(N)`, entry order kept.
pub fn permute_matphi(sigma: &Permutation, t: &MatphiTable) -> Result<MatphiTable> {
    let m = t.vars_per_position();
    check_len(sigma, t.nvars(), m)?;
    let sv = lifted(sigma, m);
    let phi = t
        .phi
        .iter()
        .map(|row| {
            let mut out = vec![0; row.len()];
            for (k, &j) in row.iter().enumerate() {
                out[sv.apply(k)] = j;
            }
            out
        })
        .collect();
    Ok(MatphiTable {
        field: t.field.clone(),
        m,
        order: permuted_order(&t.order, &sv),
        words: t.words.iter().map(|w| monomial::permute_word(sigma, w, m)).collect(),
        vectors: t.vectors.iter().map(|v| v.permute(sigma)).collect(),
        syndromes: t.syndromes.clone(),
        index: t.index.clone(),
        flags: t.flags.clone(),
        phi,
        t: t.t,
    })
}

/// Whether `v ↦ cf₂(σ(v))` is a bijection `N₁ → N₂` carrying `φ₁` to `φ₂`.
/// Representatives are compared by coset, so the two tables may have chosen
/// different words for the same coset.
pub fn matphi_equivalent(sigma: &Permutation, t1: &MatphiTable, t2: &MatphiTable) -> Result<bool> {
    if t1.field() != t2.field() || t1.nvars() != t2.nvars() {
        return Err(Error::ParameterMismatch("tables over different fields or lengths".into()));
    }
    let m = t1.vars_per_position();
    check_len(sigma, t1.nvars(), m)?;
    if t1.len() != t2.len() {
        return Ok(false);
    }
    let image = |w: &Word| t2.cf_index(&monomial::permute_word(sigma, w, m));
    let a: Vec<usize> = t1.words().iter().map(image).collect::<Result<_>>()?;
    if a.iter().collect::<HashSet<_>>().len() != a.len() {
        return Ok(false);
    }
    let sv = lifted(sigma, m);
    for (i, row) in t1.phi().iter().enumerate() {
        for (k, &j) in row.iter().enumerate() {
            if a[j] != t2.phi()[a[i]][sv.apply(k)] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Per-position counts over the binomials of one level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelStats {
    pub level: usize,
    /// `heads[i]`: level-`L` heads whose `Ind` contains position `i`.
    pub heads: Vec<usize>,
    /// `irreds[i]`: level-`L` binomials whose tail's `Ind` contains `i`.
    pub irreds: Vec<usize>,
}

pub fn level_stats(g: &ReducedBasis, level: usize) -> LevelStats {
    let m = g.vars_per_position();
    let n = g.nvars() / m;
    let mut heads = vec![0; n];
    let mut irreds = vec![0; n];
    for b in g.binomials().iter().filter(|b| b.level(m) == level) {
        for i in monomial::ind(&b.head, m) {
            heads[i] += 1;
        }
        for i in monomial::ind(&b.tail, m) {
            irreds[i] += 1;
        }
    }
    LevelStats { level, heads, irreds }
}

/// Every binomial of `σ(g1)` reduces to zero modulo `g2`, and every binomial
/// of `g2` reduces to zero modulo `σ(g1)`. The second half reduces
/// `σ^{-1}` of each binomial modulo `g1`.
pub fn bases_equivalent(g1: &ReducedBasis, g2: &ReducedBasis, sigma: &Permutation) -> Result<bool> {
    if g1.field() != g2.field() || g1.nvars() != g2.nvars() {
        return Err(Error::ParameterMismatch("bases over different fields or lengths".into()));
    }
    check_len(sigma, g1.nvars(), 1)?;
    let inv = sigma.inverse();
    for b in g1.binomials() {
        let moved = Binomial {
            head: monomial::permute_word(sigma, &b.head, 1),
            tail: monomial::permute_word(sigma, &b.tail, 1),
        };
        if !rbasis::reduces_to_zero(g2, &moved)? {
            return Ok(false);
        }
    }
    for b in g2.binomials() {
        let back = Binomial {
            head: monomial::permute_word(&inv, &b.head, 1),
            tail: monomial::permute_word(&inv, &b.tail, 1),
        };
        if !rbasis::reduces_to_zero(g1, &back)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_same_space(c1: &Code, c2: &Code) -> Result<()> {
    if c1.field() != c2.field() {
        return Err(Error::ParameterMismatch("codes over different fields".into()));
    }
    if c1.len() != c2.len() {
        return Err(Error::ParameterMismatch(format!(
            "codes of lengths {} and {}",
            c1.len(),
            c2.len()
        )));
    }
    Ok(())
}

/// `σ(C₁) = C₂`, checked on the generator rows of `C₁`.
pub fn verify_permutation(c1: &Code, c2: &Code, sigma: &Permutation) -> Result<bool> {
    check_same_space(c1, c2)?;
    if sigma.len() != c1.len() {
        return Err(Error::LengthMismatch { expected: c1.len(), found: sigma.len() });
    }
    if c1.dimension() != c2.dimension() {
        return Ok(false);
    }
    for row in c1.generator() {
        let moved = VectorFq(row.clone()).permute(sigma);
        if !c2.is_codeword(&moved)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum EquivVerdict {
    Equivalent { witness: Permutation },
    NotEquivalent { certificate: String },
    Undecided { reason: String },
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Longest code searched.
    pub max_n: usize,
    /// Nodes the basis-guided phase may visit before handing over.
    pub heuristic_budget: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { max_n: 12, heuristic_budget: 200_000 }
    }
}

pub fn find_permutation(c1: &Code, c2: &Code) -> Result<EquivVerdict> {
    find_permutation_with(c1, c2, &SearchConfig::default())
}

/// Per position: `(weight, value)` counts over all codewords.
fn position_profiles(code: &Code, words: &[VectorFq]) -> Vec<BTreeMap<(usize, u8), usize>> {
    let mut out = vec![BTreeMap::new(); code.len()];
    for c in words {
        let w = c.weight();
        for (i, x) in c.0.iter().enumerate() {
            if !x.is_zero() {
                *out[i].entry((w, x.0)).or_insert(0) += 1;
            }
        }
    }
    out
}

fn sorted<T: Ord + Clone>(items: &[T]) -> Vec<T> {
    let mut v = items.to_vec();
    v.sort();
    v
}

fn degree_one_heads(g: &ReducedBasis) -> usize {
    g.binomials().iter().filter(|b| b.head.degree() == 1).count()
}

pub fn find_permutation_with(c1: &Code, c2: &Code, cfg: &SearchConfig) -> Result<EquivVerdict> {
    check_same_space(c1, c2)?;
    let n = c1.len();
    if n > cfg.max_n {
        return Ok(EquivVerdict::Undecided {
            reason: format!("length {n} exceeds the search cap {}", cfg.max_n),
        });
    }
    if c1.dimension() != c2.dimension() {
        return Ok(EquivVerdict::NotEquivalent {
            certificate: format!("dimensions differ: {} vs {}", c1.dimension(), c2.dimension()),
        });
    }
    let (words1, words2) = match (c1.codewords(), c2.codewords()) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            return Ok(EquivVerdict::Undecided { reason: e.to_string() });
        }
    };
    let (wd1, wd2) = (c1.weight_distribution()?, c2.weight_distribution()?);
    if wd1 != wd2 {
        return Ok(EquivVerdict::NotEquivalent {
            certificate: format!("weight distributions differ: {wd1:?} vs {wd2:?}"),
        });
    }

    let binary = c1.field().characteristic() == 2 && c1.field().degree() == 1;
    let bases = if binary {
        let order = AdmissibleOrder::drl(n);
        match (build_reduced_basis(c1, &order), build_reduced_basis(c2, &order)) {
            (Ok(g1), Ok(g2)) => Some((g1, g2)),
            _ => None,
        }
    } else {
        None
    };
    if let Some((g1, g2)) = &bases {
        let (d1, d2) = (degree_one_heads(g1), degree_one_heads(g2));
        if d1 != d2 {
            return Ok(EquivVerdict::NotEquivalent {
                certificate: format!(
                    "the first basis has {d1} binomials x_i - x_j (or x_i - 1) of degree one, \
                     while only {d2} variables of the second basis are heads"
                ),
            });
        }
    }

    let prof1 = position_profiles(c1, &words1);
    let prof2 = position_profiles(c2, &words2);
    if sorted(&prof1) != sorted(&prof2) {
        return Ok(EquivVerdict::NotEquivalent {
            certificate: "the per-position counts of codewords by weight differ as multisets".into(),
        });
    }
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| prof1[i] == prof2[j]).collect())
        .collect();

    if let Some((g1, g2)) = &bases {
        if let Some(sigma) = guided_search(c1, c2, g1, g2, &candidates, cfg.heuristic_budget)? {
            return Ok(EquivVerdict::Equivalent { witness: sigma });
        }
    }

    let mut search = Complete::new(c1, c2, &words1, candidates);
    match search.run()? {
        Some(sigma) => Ok(EquivVerdict::Equivalent { witness: sigma }),
        None => Ok(EquivVerdict::NotEquivalent {
            certificate: format!(
                "no permutation maps the first code onto the second: exhaustive search \
                 over position candidates matched by codeword profiles ({} nodes)",
                search.nodes
            ),
        }),
    }
}

/// Search steered by the level statistics, requiring `σ(b) ∈ G₂` for every
/// binomial `b` of `G₁` supported on assigned positions.
fn guided_search(
    c1: &Code,
    c2: &Code,
    g1: &ReducedBasis,
    g2: &ReducedBasis,
    candidates: &[Vec<usize>],
    budget: usize,
) -> Result<Option<Permutation>> {
    let n = c1.len();
    let t = g1.error_capability();
    let levels: Vec<usize> = (2..=t + 2).collect();
    let stats1: Vec<LevelStats> = levels.iter().map(|&l| level_stats(g1, l)).collect();
    let stats2: Vec<LevelStats> = levels.iter().map(|&l| level_stats(g2, l)).collect();
    let sig = |stats: &[LevelStats], i: usize| -> Vec<(usize, usize)> {
        stats.iter().map(|s| (s.heads[i], s.irreds[i])).collect()
    };
    let cand: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            candidates[i]
                .iter()
                .copied()
                .filter(|&j| sig(&stats1, i) == sig(&stats2, j))
                .collect()
        })
        .collect();
    if cand.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let targets: HashSet<(Word, Word)> = g2
        .binomials()
        .iter()
        .map(|b| (b.head.clone(), b.tail.clone()))
        .collect();
    // binomials of G₁ grouped by the largest position they touch
    let mut by_last: Vec<Vec<&Binomial>> = vec![Vec::new(); n];
    for b in g1.binomials() {
        let last = b.head.support().chain(b.tail.support()).max().unwrap_or(0);
        by_last[last].push(b);
    }

    struct State<'a> {
        images: Vec<usize>,
        used: Vec<bool>,
        nodes: usize,
        budget: usize,
        cand: &'a [Vec<usize>],
        by_last: &'a [Vec<&'a Binomial>],
        targets: &'a HashSet<(Word, Word)>,
    }

    fn image(w: &Word, images: &[usize]) -> Word {
        let mut e = vec![0; w.nvars()];
        for k in w.support() {
            e[images[k]] = w.exponent(k);
        }
        Word::from_exponents(e)
    }

    fn go(s: &mut State<'_>, c1: &Code, c2: &Code, d: usize) -> Result<Option<Permutation>> {
        if s.nodes >= s.budget {
            return Ok(None);
        }
        s.nodes += 1;
        if d == s.images.len() {
            let sigma = Permutation::from_images(s.images.clone())?;
            return Ok(verify_permutation(c1, c2, &sigma)?.then_some(sigma));
        }
        for &j in &s.cand[d] {
            if s.used[j] {
                continue;
            }
            s.images[d] = j;
            let ok = s.by_last[d].iter().all(|b| {
                s.targets.contains(&(image(&b.head, &s.images), image(&b.tail, &s.images)))
            });
            if ok {
                s.used[j] = true;
                if let Some(p) = go(s, c1, c2, d + 1)? {
                    return Ok(Some(p));
                }
                s.used[j] = false;
            }
        }
        Ok(None)
    }

    let mut state = State {
        images: vec![0; n],
        used: vec![false; n],
        nodes: 0,
        budget,
        cand: &cand,
        by_last: &by_last,
        targets: &targets,
    };
    go(&mut state, c1, c2, 0)
}

/// Backtracking over all assignments allowed by the profiles; a codeword of
/// `C₁` supported on assigned positions must land in `C₂`.
struct Complete<'a> {
    c1: &'a Code,
    c2: &'a Code,
    candidates: Vec<Vec<usize>>,
    /// Codewords of `C₁` whose last nonzero position is `d`.
    by_last: Vec<Vec<&'a VectorFq>>,
    images: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
}

impl<'a> Complete<'a> {
    fn new(c1: &'a Code, c2: &'a Code, words: &'a [VectorFq], candidates: Vec<Vec<usize>>) -> Self {
        let n = c1.len();
        let mut by_last = vec![Vec::new(); n];
        for c in words {
            if let Some(last) = (0..n).rev().find(|&i| !c.0[i].is_zero()) {
                by_last[last].push(c);
            }
        }
        Complete {
            c1,
            c2,
            candidates,
            by_last,
            images: vec![0; n],
            used: vec![false; n],
            nodes: 0,
        }
    }

    fn lands(&self, c: &VectorFq) -> bool {
        let mut moved = VectorFq::zero(c.len());
        for (i, &x) in c.0.iter().enumerate() {
            if !x.is_zero() {
                moved.0[self.images[i]] = x;
            }
        }
        self.c2.syndrome_unchecked(&moved.0).is_zero()
    }

    fn run(&mut self) -> Result<Option<Permutation>> {
        self.go(0)
    }

    fn go(&mut self, d: usize) -> Result<Option<Permutation>> {
        self.nodes += 1;
        if d == self.images.len() {
            let sigma = Permutation::from_images(self.images.clone())?;
            return Ok(verify_permutation(self.c1, self.c2, &sigma)?.then_some(sigma));
        }
        for idx in 0..self.candidates[d].len() {
            let j = self.candidates[d][idx];
            if self.used[j] {
                continue;
            }
            self.images[d] = j;
            if self.by_last[d].iter().all(|c| self.lands(c)) {
                self.used[j] = true;
                if let Some(p) = self.go(d + 1)? {
                    return Ok(Some(p));
                }
                self.used[j] = false;
            }
        }
        Ok(None)
    }
}
