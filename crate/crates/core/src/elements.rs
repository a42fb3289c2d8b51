//! Linear combinations of paths over an exact coefficient domain, and the
//! rewriting machinery on them: tips, uniformity, simple and complete
//! reduction, tip-reduction of generating sets, overlap relations.
//!
//! The reduction strategy is deterministic everywhere: the reduced path is
//! the largest reducible support path, the occurrence is the leftmost one,
//! and the reducer is the unique member whose tip occurs there (first by
//! index if the set is not tip-reduced). Fixing the strategy makes golden
//! outputs byte-reproducible.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::coefficients::Coefficient;
use crate::error::{Error, Result};
use crate::paths::{Path, PathOrder, Quiver, VertexId};

/// A finite linear combination of paths. No zero coefficients are stored;
/// the zero element has empty support. All paths must come from one quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element<C> {
    terms: BTreeMap<Path, C>,
}

/// Uniformity classification of an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Uniformity {
    /// The zero element is vacuously uniform, with undefined endpoints.
    Zero,
    Uniform {
        origin: VertexId,
        terminus: VertexId,
    },
    Mixed,
}

impl<C: Coefficient> Element<C> {
    pub fn zero() -> Element<C> {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_path(path: Path, coeff: C) -> Element<C> {
        let mut e = Element::zero();
        e.add_term(path, coeff);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Path, C)>>(terms: I) -> Element<C> {
        let mut e = Element::zero();
        for (p, c) in terms {
            e.add_term(p, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &Path) -> Option<&C> {
        self.terms.get(p)
    }

    pub fn add_term(&mut self, path: Path, coeff: C) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&path) {
            Some(old) => {
                let sum = old.add(&coeff);
                if !sum.is_zero() {
                    self.terms.insert(path, sum);
                }
            }
            None => {
                self.terms.insert(path, coeff);
            }
        }
    }

    pub fn add(&self, other: &Element<C>) -> Element<C> {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element<C>) -> Element<C> {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Element<C> {
        Element {
            terms: self
                .terms
                .iter()
                .map(|(p, c)| (p.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scaled(&self, c: &C) -> Element<C> {
        if c.is_zero() {
            return Element::zero();
        }
        let mut out = Element::zero();
        for (p, a) in &self.terms {
            out.add_term(p.clone(), a.mul(c));
        }
        out
    }

    /// Right multiplication by a path; non-composing terms vanish.
    pub fn times_path(&self, quiver: &Quiver, right: &Path) -> Element<C> {
        let mut out = Element::zero();
        for (p, c) in &self.terms {
            if let Some(pq) = p.compose(quiver, right) {
                out.add_term(pq, c.clone());
            }
        }
        out
    }

    /// Left multiplication by a path; non-composing terms vanish.
    pub fn path_times(&self, quiver: &Quiver, left: &Path) -> Element<C> {
        let mut out = Element::zero();
        for (p, c) in &self.terms {
            if let Some(qp) = left.compose(quiver, p) {
                out.add_term(qp, c.clone());
            }
        }
        out
    }

    pub fn mul(&self, quiver: &Quiver, other: &Element<C>) -> Element<C> {
        let mut out = Element::zero();
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if let Some(pq) = p.compose(quiver, q) {
                    out.add_term(pq, a.mul(b));
                }
            }
        }
        out
    }

    /// The ≻-largest support path together with its coefficient.
    pub fn tip<'a>(&'a self, ord: &PathOrder) -> Result<(&'a Path, &'a C)> {
        self.terms
            .iter()
            .max_by(|(p, _), (q, _)| ord.cmp(p, q))
            .ok_or(Error::TipOfZero)
    }

    pub fn uniformity(&self, quiver: &Quiver) -> Uniformity {
        let mut it = self.terms.keys();
        let first = match it.next() {
            None => return Uniformity::Zero,
            Some(p) => p,
        };
        let origin = first.origin();
        let terminus = first.terminus(quiver);
        for p in it {
            if p.origin() != origin || p.terminus(quiver) != terminus {
                return Uniformity::Mixed;
            }
        }
        Uniformity::Uniform { origin, terminus }
    }

    pub fn is_uniform(&self, quiver: &Quiver) -> bool {
        !matches!(self.uniformity(quiver), Uniformity::Mixed)
    }

    /// Scale so the tip coefficient becomes 1. Fails when the tip
    /// coefficient is not invertible in the domain.
    pub fn monic(&self, ord: &PathOrder) -> Result<Element<C>> {
        let (_, c) = self.tip(ord)?;
        if c.is_one() {
            return Ok(self.clone());
        }
        let inv = c.inv().ok_or(Error::NonInvertibleTip)?;
        Ok(self.scaled(&inv))
    }

    /// Support paths sorted descending under `ord`.
    pub fn support_descending(&self, ord: &PathOrder) -> Vec<&Path> {
        let mut paths: Vec<&Path> = self.terms.keys().collect();
        paths.sort_by(|p, q| ord.cmp(p, q).reverse());
        paths
    }

    /// Text form `±c1*p1 ± c2*p2 ...`, terms descending under `ord`.
    pub fn display_with(&self, quiver: &Quiver, ord: &PathOrder) -> String
    where
        C: fmt::Display,
    {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, p) in self.support_descending(ord).into_iter().enumerate() {
            let c = &self.terms[p];
            let text = format!("{c}");
            let (sign, mag) = match text.strip_prefix('-') {
                Some(rest) if !rest.contains(" + ") && !rest.contains(" - ") => {
                    ("-", rest.to_string())
                }
                _ => ("+", text),
            };
            let mag = if mag.contains(" + ") || mag.contains(" - ") {
                format!("({mag})")
            } else {
                mag
            };
            if idx == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            if mag == "1" {
                out.push_str(&p.display(quiver).to_string());
            } else {
                out.push_str(&format!("{}*{}", mag, p.display(quiver)));
            }
        }
        out
    }
}

/// One simple reduction step: the support path that was rewritten, the index
/// of the reducer in the set, and the factorization `path = left*tip*right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub path: Path,
    pub reducer: usize,
    pub left: Path,
    pub right: Path,
}

/// A complete reduction: the sequence of simple steps and the final element.
/// Replaying the steps from the input reproduces the result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace<C> {
    pub steps: Vec<ReductionStep>,
    pub result: Element<C>,
}

/// Reducers with their tips precomputed once.
pub(crate) struct ReducerSet<'a, C> {
    pub members: Vec<(&'a Element<C>, Path, C)>,
}

impl<'a, C: Coefficient> ReducerSet<'a, C> {
    pub fn new<I>(set: I, ord: &PathOrder) -> Result<ReducerSet<'a, C>>
    where
        I: IntoIterator<Item = &'a Element<C>>,
    {
        let mut members = Vec::new();
        for f in set {
            let (t, c) = f.tip(ord)?;
            members.push((f, t.clone(), c.clone()));
        }
        Ok(ReducerSet { members })
    }

    /// Deterministic choice of the next simple reduction on `x`, if any:
    /// largest reducible support path, leftmost occurrence, smallest reducer
    /// index breaking ties at the same position.
    fn find_step(&self, quiver: &Quiver, ord: &PathOrder, x: &Element<C>) -> Option<ReductionStep> {
        let mut best: Option<(&Path, usize, usize)> = None; // (path, position, reducer)
        for p in x.terms.keys() {
            if let Some((path, _, _)) = best {
                if ord.cmp(p, path) != Ordering::Greater {
                    continue;
                }
            }
            let mut hit: Option<(usize, usize)> = None;
            for (fi, (_, tip, _)) in self.members.iter().enumerate() {
                if let Some(pos) = p.find_subpath(quiver, tip) {
                    if hit.is_none_or(|(hp, hf)| pos < hp || (pos == hp && fi < hf)) {
                        hit = Some((pos, fi));
                    }
                }
            }
            if let Some((pos, fi)) = hit {
                best = Some((p, pos, fi));
            }
        }
        best.map(|(p, pos, fi)| {
            let tip_len = self.members[fi].1.len();
            ReductionStep {
                path: p.clone(),
                reducer: fi,
                left: p.segment(quiver, 0, pos),
                right: p.segment(quiver, pos + tip_len, p.len()),
            }
        })
    }

    /// Apply one step: `y = beta*x - alpha_p * left*f*right` where `beta` is
    /// the reducer's tip coefficient.
    fn apply_step(&self, quiver: &Quiver, x: &Element<C>, step: &ReductionStep) -> Element<C> {
        let (f, _, beta) = &self.members[step.reducer];
        let alpha = x
            .terms
            .get(&step.path)
            .expect("step path in support")
            .clone();
        let scaled_x = if beta.is_one() {
            x.clone()
        } else {
            x.scaled(beta)
        };
        let mut rfs = f.path_times(quiver, &step.left);
        rfs = rfs.times_path(quiver, &step.right);
        scaled_x.sub(&rfs.scaled(&alpha))
    }
}

/// One deterministic simple reduction of `x` by `set`, or `None` when no
/// support path of `x` is divisible by any tip.
pub fn simple_reduce<C: Coefficient>(
    quiver: &Quiver,
    x: &Element<C>,
    set: &[Element<C>],
    ord: &PathOrder,
) -> Result<Option<(Element<C>, ReductionStep)>> {
    let reducers = ReducerSet::new(set.iter(), ord)?;
    Ok(reducers
        .find_step(quiver, ord, x)
        .map(|step| (reducers.apply_step(quiver, x, &step), step)))
}

/// Iterate simple reductions to a normal form. Terminates for every
/// admissible order: each step replaces a support path by strictly smaller
/// ones, a descent in the multiset extension of the well-order.
pub fn complete_reduce<C: Coefficient>(
    quiver: &Quiver,
    x: &Element<C>,
    set: &[Element<C>],
    ord: &PathOrder,
) -> Result<(Element<C>, ReductionTrace<C>)> {
    let reducers = ReducerSet::new(set.iter(), ord)?;
    let mut current = x.clone();
    let mut steps = Vec::new();
    while let Some(step) = reducers.find_step(quiver, ord, &current) {
        current = reducers.apply_step(quiver, &current, &step);
        steps.push(step);
    }
    let trace = ReductionTrace {
        steps,
        result: current.clone(),
    };
    Ok((current, trace))
}

/// Rewrite a finite set of nonzero uniform elements into a tip-reduced set
/// generating the same ideal: repeatedly replace a member by its complete
/// reduction modulo the others, dropping zeros, until stable; survivors are
/// normalized monic.
pub fn tip_reduce_set<C: Coefficient>(
    quiver: &Quiver,
    set: Vec<Element<C>>,
    ord: &PathOrder,
) -> Result<Vec<Element<C>>> {
    let mut members: Vec<Element<C>> = Vec::new();
    for x in set {
        if x.is_zero() {
            continue;
        }
        if !x.is_uniform(quiver) {
            return Err(Error::NotUniform);
        }
        members.push(x.monic(ord)?);
    }
    loop {
        let mut changed = false;
        'outer: for i in 0..members.len() {
            let others: Vec<Element<C>> = members
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, e)| e.clone())
                .collect();
            if others.is_empty() {
                break;
            }
            let (reduced, trace) = complete_reduce(quiver, &members[i], &others, ord)?;
            if trace.steps.is_empty() {
                continue;
            }
            if reduced.is_zero() {
                members.remove(i);
            } else {
                members[i] = reduced.monic(ord)?;
            }
            changed = true;
            break 'outer;
        }
        if !changed {
            return Ok(members);
        }
    }
}

/// An overlap relation between two uniform elements: `tip(f)*m = n*tip(g)`
/// with `n` nonempty and `m` nonempty shorter than `tip(g)`, giving
/// `beta*f*m - alpha*n*g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Overlap<C> {
    pub m: Path,
    pub n: Path,
    pub relation: Element<C>,
}

/// All overlap relations of the ordered pair `(f, g)`, shortest `m` first.
/// Self-overlaps (`f` against itself) are found by passing the same element
/// twice.
pub fn overlaps<C: Coefficient>(
    quiver: &Quiver,
    f: &Element<C>,
    g: &Element<C>,
    ord: &PathOrder,
) -> Result<Vec<Overlap<C>>> {
    let (t, alpha) = f.tip(ord)?;
    let (t2, beta) = g.tip(ord)?;
    let mut out = Vec::new();
    if t.len() < 2 && t2.len() < 2 {
        return Ok(out);
    }
    // overlap width k: the last k arrows of t equal the first k of t2
    let max_k = t.len().saturating_sub(1).min(t2.len().saturating_sub(1));
    for k in (1..=max_k).rev() {
        if t.arrows()[t.len() - k..] != t2.arrows()[..k] {
            continue;
        }
        let m = t2.segment(quiver, k, t2.len());
        let n = t.segment(quiver, 0, t.len() - k);
        let fm = f.times_path(quiver, &m).scaled(beta);
        let ng = g.path_times(quiver, &n).scaled(alpha);
        out.push(Overlap {
            m,
            n,
            relation: fm.sub(&ng),
        });
    }
    Ok(out)
}
