//! Reduced bases: binomials `head - tail` with `tail ∈ N`, and reduction of
//! words modulo them.
//!
//! The heads are the divisibility-minimal words `w·x ∉ N` with `w ∈ N`; the
//! tail of a head is the element of `N` in its coset. Binomials are stored
//! sorted by level `|Ind(head)|`, then by head under `<_e`.
//!
//! One reduction step first strips a `p`-th power `x_k^p`, if any. A standard
//! word is rewritten by the dividing head of highest level, ties going to
//! the earlier binomial. Over `GF(2)` this terminates in a unique normal
//! form; otherwise the rewriting may cycle, which [`reduce_traced`] reports.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::code::Code;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matphi::{self, MAX_COSETS};
use crate::monomial::{self, AdmissibleOrder, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binomial {
    pub head: Word,
    pub tail: Word,
}

impl Binomial {
    /// `|Ind(head)|`.
    pub fn level(&self, m: usize) -> usize {
        monomial::ind_size(&self.head, m)
    }
}

#[derive(Clone, Debug)]
pub struct ReducedBasis {
    pub(crate) field: FieldSpec,
    pub(crate) order: AdmissibleOrder,
    pub(crate) n_words: Vec<Word>,
    pub(crate) binomials: Vec<Binomial>,
    pub(crate) head_index: HashMap<Word, usize>,
    pub(crate) t: usize,
}

pub fn build_reduced_basis(code: &Code, order: &AdmissibleOrder) -> Result<ReducedBasis> {
    build_reduced_basis_with_cap(code, order, MAX_COSETS)
}

pub fn build_reduced_basis_with_cap(code: &Code, order: &AdmissibleOrder, cap: u128) -> Result<ReducedBasis> {
    let t = code.error_capability()?;
    let tr = matphi::traverse(code, order, cap)?;
    // divisors of a word precede it, so a popped word is minimal iff no
    // earlier head divides it
    let mut binomials: Vec<Binomial> = Vec::new();
    for (w, j) in tr.outside {
        if !binomials.iter().any(|b| b.head.divides(&w)) {
            binomials.push(Binomial { head: w, tail: tr.words[j].clone() });
        }
    }
    Ok(ReducedBasis::from_parts(code.field().clone(), order.clone(), tr.words, binomials, t))
}

/// Which rule produced one reduction step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    /// 0-based index of the binomial applied.
    Binomial(usize),
    /// `x_k^p → 1` where `x_k^p - 1` is not itself in the basis.
    Power(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Canonical(Word),
    /// The last word of the trace already appeared at this index.
    CycleDetected { start: usize },
    StepLimit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    /// The starting word followed by the result of each step; in a cycle the
    /// repeated word appears twice.
    pub words: Vec<Word>,
    /// `steps[i]` turns `words[i]` into `words[i + 1]`.
    pub steps: Vec<Step>,
    pub outcome: Outcome,
}

/// One binary reduction: the standard form of the input, then at most one
/// rewrite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OneStep {
    Rewritten(Word),
    /// The standard form has no head divisor.
    Irreducible(Word),
}

impl ReducedBasis {
    pub(crate) fn from_parts(
        field: FieldSpec,
        order: AdmissibleOrder,
        n_words: Vec<Word>,
        mut binomials: Vec<Binomial>,
        t: usize,
    ) -> Self {
        let m = field.degree();
        binomials.sort_by_cached_key(|b| order.error_key(&b.head, m));
        let head_index = binomials
            .iter()
            .enumerate()
            .map(|(i, b)| (b.head.clone(), i))
            .collect();
        ReducedBasis { field, order, n_words, binomials, head_index, t }
    }

    pub fn binomials(&self) -> &[Binomial] {
        &self.binomials
    }

    pub fn len(&self) -> usize {
        self.binomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.binomials.is_empty()
    }

    /// The canonical-form set built alongside the basis.
    pub fn n_words(&self) -> &[Word] {
        &self.n_words
    }

    pub fn order(&self) -> &AdmissibleOrder {
        &self.order
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn error_capability(&self) -> usize {
        self.t
    }

    pub fn nvars(&self) -> usize {
        self.order.nvars()
    }

    pub fn vars_per_position(&self) -> usize {
        self.field.degree()
    }

    /// Binomials grouped by level, ascending.
    pub fn levels(&self) -> BTreeMap<usize, Vec<&Binomial>> {
        let mut out: BTreeMap<usize, Vec<&Binomial>> = BTreeMap::new();
        for b in &self.binomials {
            out.entry(b.level(self.field.degree())).or_default().push(b);
        }
        out
    }

    pub fn is_binary(&self) -> bool {
        self.field.characteristic() == 2 && self.field.degree() == 1
    }

    fn require_binary(&self, operation: &'static str) -> Result<()> {
        if self.is_binary() {
            Ok(())
        } else {
            Err(Error::WrongCharacteristic {
                operation,
                p: self.field.characteristic(),
                m: self.field.degree(),
            })
        }
    }

    fn check_arity(&self, w: &Word) -> Result<()> {
        if w.nvars() != self.nvars() {
            return Err(Error::LengthMismatch { expected: self.nvars(), found: w.nvars() });
        }
        Ok(())
    }

    /// Indices of the binomials whose head divides `w`.
    pub fn applicable(&self, w: &Word) -> Vec<usize> {
        (0..self.binomials.len())
            .filter(|&i| self.binomials[i].head.divides(w))
            .collect()
    }

    fn preferred(&self, w: &Word) -> Option<usize> {
        let m = self.field.degree();
        let mut best: Option<(usize, usize)> = None;
        for i in self.applicable(w) {
            let level = self.binomials[i].level(m);
            if best.is_none_or(|(l, _)| level > l) {
                best = Some((level, i));
            }
        }
        best.map(|(_, i)| i)
    }

    /// `w / head · tail`.
    pub fn rewrite(&self, w: &Word, index: usize) -> Option<Word> {
        let b = &self.binomials[index];
        w.div(&b.head).map(|q| q.mul(&b.tail))
    }

    /// One step of the general reduction, or `None` if `w` is irreducible.
    pub fn step(&self, w: &Word) -> Option<(Word, Step)> {
        let p = self.field.characteristic();
        if let Some(k) = (0..w.nvars()).find(|&k| w.exponent(k) as u32 >= p) {
            let mut exps = w.exponents().to_vec();
            exps[k] -= p as u8;
            let mut power = vec![0; w.nvars()];
            power[k] = p as u8;
            let rule = match self.head_index.get(&Word::from_exponents(power)) {
                Some(&i) if self.binomials[i].tail.is_one() => Step::Binomial(i),
                _ => Step::Power(k),
            };
            return Some((Word::from_exponents(exps), rule));
        }
        let i = self.preferred(w)?;
        Some((self.rewrite(w, i).expect("head divides w"), Step::Binomial(i)))
    }

    /// Upper bound on steps used by [`reduce_traced`] by default.
    pub fn default_step_limit(&self, w: &Word) -> usize {
        10 * self.nvars() * (w.degree() as usize).max(1)
    }
}

/// One binary reduction step.
pub fn reduce_once_binary(g: &ReducedBasis, w: &Word) -> Result<OneStep> {
    g.require_binary("binary reduction")?;
    g.check_arity(w)?;
    let std = monomial::standard_form(w, 2);
    Ok(match g.preferred(&std) {
        Some(i) => OneStep::Rewritten(g.rewrite(&std, i).expect("head divides w")),
        None => OneStep::Irreducible(std),
    })
}

/// `Can(w, G)` for a binary code.
pub fn canonical_form_binary(g: &ReducedBasis, w: &Word) -> Result<Word> {
    let mut cur = w.clone();
    loop {
        match reduce_once_binary(g, &cur)? {
            OneStep::Rewritten(next) => cur = next,
            OneStep::Irreducible(std) => return Ok(std),
        }
    }
}

/// Binary reduction where `choose` picks, at every step, one of the indices
/// of the applicable binomials (given in basis order).
pub fn reduce_binary_with<F>(g: &ReducedBasis, w: &Word, mut choose: F) -> Result<Word>
where
    F: FnMut(&[usize]) -> usize,
{
    g.require_binary("binary reduction")?;
    g.check_arity(w)?;
    let mut cur = monomial::standard_form(w, 2);
    loop {
        let options = g.applicable(&cur);
        if options.is_empty() {
            return Ok(cur);
        }
        let i = choose(&options);
        let next = g.rewrite(&cur, i).ok_or_else(|| {
            Error::ParameterMismatch(format!("binomial {} does not divide {cur}", i + 1))
        })?;
        cur = monomial::standard_form(&next, 2);
    }
}

/// Reduces `w` step by step, stopping at an irreducible word, a repeated
/// word, or after `limit` steps.
pub fn reduce_traced(g: &ReducedBasis, w: &Word, limit: usize) -> ReductionTrace {
    let mut words = vec![w.clone()];
    let mut steps = Vec::new();
    let mut seen: HashMap<Word, usize> = HashMap::from([(w.clone(), 0)]);
    loop {
        let cur = words.last().expect("trace starts nonempty");
        let Some((next, step)) = g.step(cur) else {
            let outcome = Outcome::Canonical(cur.clone());
            return ReductionTrace { words, steps, outcome };
        };
        if steps.len() == limit {
            return ReductionTrace { words, steps, outcome: Outcome::StepLimit };
        }
        steps.push(step);
        let repeat = seen.get(&next).copied();
        seen.insert(next.clone(), words.len());
        words.push(next);
        if let Some(start) = repeat {
            return ReductionTrace { words, steps, outcome: Outcome::CycleDetected { start } };
        }
    }
}

/// [`reduce_traced`] with [`ReducedBasis::default_step_limit`].
pub fn reduce_traced_default(g: &ReducedBasis, w: &Word) -> ReductionTrace {
    reduce_traced(g, w, g.default_step_limit(w))
}

/// `Can(head) = Can(tail)` modulo `g`.
pub fn reduces_to_zero(g: &ReducedBasis, b: &Binomial) -> Result<bool> {
    Ok(canonical_form_binary(g, &b.head)? == canonical_form_binary(g, &b.tail)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelGroup {
    pub level: usize,
    pub binomials: Vec<[String; 2]>,
}

/// Serialized form: `N`, the binomials `[head, tail]` grouped by level, and
/// `t`.
#[derive(Clone, Debug, Serialize)]
pub struct RbasisExport {
    #[serde(rename = "N")]
    pub n_words: Vec<String>,
    #[serde(rename = "G")]
    pub groups: Vec<LevelGroup>,
    pub t: usize,
}

impl ReducedBasis {
    pub fn export(&self) -> RbasisExport {
        RbasisExport {
            n_words: self.n_words.iter().map(ToString::to_string).collect(),
            groups: self
                .levels()
                .into_iter()
                .map(|(level, bs)| LevelGroup {
                    level,
                    binomials: bs.iter().map(|b| [b.head.to_string(), b.tail.to_string()]).collect(),
                })
                .collect(),
            t: self.t,
        }
    }

    /// Heads of the binomials, as a set.
    pub fn heads(&self) -> HashSet<&Word> {
        self.binomials.iter().map(|b| &b.head).collect()
    }
}
