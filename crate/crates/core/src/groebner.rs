//! Buchberger-style completion for ideals in a path algebra: a tip-reduced
//! generating set is complete exactly when every overlap relation of any two
//! generators (self-overlaps included) completely reduces to zero.
//!
//! Completion may genuinely diverge — some ideals have no finite basis under
//! any of the supported orders — so the loop runs under explicit caps and a
//! capped result is a status, not an error.

use std::cmp::Ordering;

use crate::coefficients::Coefficient;
use crate::elements::{complete_reduce, overlaps, tip_reduce_set, Element, ReductionTrace};
use crate::error::{Error, Result};
use crate::paths::{Path, PathOrder, Quiver};

/// Work bounds for completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionCaps {
    /// Stop when a remainder's tip gets longer than this.
    pub max_tip_length: usize,
    /// Stop after this many overlap relations have been processed.
    pub max_pair_count: usize,
}

impl Default for CompletionCaps {
    fn default() -> Self {
        CompletionCaps {
            max_tip_length: 12,
            max_pair_count: 10_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapReason {
    TipLength(usize),
    PairCount(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompletionStatus {
    /// Every overlap relation of any two generators reduces to zero.
    Complete,
    Capped(CapReason),
}

impl CompletionStatus {
    pub fn is_complete(&self) -> bool {
        matches!(self, CompletionStatus::Complete)
    }

    fn describe(&self) -> String {
        match self {
            CompletionStatus::Complete => "complete".to_string(),
            CompletionStatus::Capped(CapReason::TipLength(n)) => {
                format!("capped: remainder tip exceeded length {n}")
            }
            CompletionStatus::Capped(CapReason::PairCount(n)) => {
                format!("capped: processed more than {n} overlap relations")
            }
        }
    }
}

/// A tip-reduced set of monic uniform generators plus a completeness status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis<C> {
    pub generators: Vec<Element<C>>,
    pub order: PathOrder,
    pub status: CompletionStatus,
}

impl<C: Coefficient> GroebnerBasis<C> {
    pub fn tips(&self) -> Result<Vec<Path>> {
        self.generators
            .iter()
            .map(|g| g.tip(&self.order).map(|(t, _)| t.clone()))
            .collect()
    }
}

/// Three-valued ideal membership. Reduction to zero is sound for any basis;
/// a nonzero normal form certifies non-membership only for a complete one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    In,
    NotIn,
    Unknown,
}

struct PendingPair<C> {
    i: usize,
    j: usize,
    overlap_path: Path,
    relation: Element<C>,
}

fn seed_pairs<C: Coefficient>(
    quiver: &Quiver,
    basis: &[Element<C>],
    ord: &PathOrder,
) -> Result<Vec<PendingPair<C>>> {
    let mut pending = Vec::new();
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            push_pairs(quiver, basis, ord, i, j, &mut pending)?;
        }
    }
    Ok(pending)
}

fn push_pairs<C: Coefficient>(
    quiver: &Quiver,
    basis: &[Element<C>],
    ord: &PathOrder,
    i: usize,
    j: usize,
    pending: &mut Vec<PendingPair<C>>,
) -> Result<()> {
    let (tip_i, _) = basis[i].tip(ord)?;
    let tip_i = tip_i.clone();
    for ov in overlaps(quiver, &basis[i], &basis[j], ord)? {
        let overlap_path = tip_i.compose(quiver, &ov.m).expect("overlap path composes");
        pending.push(PendingPair {
            i,
            j,
            overlap_path,
            relation: ov.relation,
        });
    }
    Ok(())
}

/// Pop the pending pair whose overlap path is smallest under `ord`
/// (normal-strategy heuristic), tie-broken by generator indices.
fn pop_min<C: Coefficient>(
    pending: &mut Vec<PendingPair<C>>,
    ord: &PathOrder,
) -> Option<PendingPair<C>> {
    if pending.is_empty() {
        return None;
    }
    let mut best = 0;
    for k in 1..pending.len() {
        let cand = &pending[k];
        let cur = &pending[best];
        let cmp = ord
            .cmp(&cand.overlap_path, &cur.overlap_path)
            .then(cand.i.cmp(&cur.i))
            .then(cand.j.cmp(&cur.j))
            .then(cand.relation.support_len().cmp(&cur.relation.support_len()));
        if cmp == Ordering::Less {
            best = k;
        }
    }
    Some(pending.swap_remove(best))
}

/// Complete a finite set of nonzero uniform elements into a Gröbner basis of
/// the ideal they generate, or stop with a capped status.
///
/// The input is tip-reduced first; then overlap relations are completely
/// reduced and nonzero remainders adjoined (re-tip-reducing the whole set
/// whenever a remainder's tip divides an existing tip). On `Complete`, every
/// overlap relation of any two generators reduces to zero.
pub fn buchberger<C: Coefficient>(
    quiver: &Quiver,
    generators: Vec<Element<C>>,
    ord: &PathOrder,
    caps: &CompletionCaps,
) -> Result<GroebnerBasis<C>> {
    if caps.max_tip_length == 0 || caps.max_pair_count == 0 {
        return Err(Error::Config("completion caps must be positive".into()));
    }
    for g in &generators {
        if !g.is_uniform(quiver) {
            return Err(Error::NotUniform);
        }
    }
    let mut basis = tip_reduce_set(quiver, generators, ord)?;
    let mut pending = seed_pairs(quiver, &basis, ord)?;
    let mut processed = 0usize;

    let status = loop {
        let pair = match pop_min(&mut pending, ord) {
            None => break CompletionStatus::Complete,
            Some(p) => p,
        };
        processed += 1;
        if processed > caps.max_pair_count {
            break CompletionStatus::Capped(CapReason::PairCount(caps.max_pair_count));
        }
        let (remainder, _) = complete_reduce(quiver, &pair.relation, &basis, ord)?;
        if remainder.is_zero() {
            continue;
        }
        let remainder = remainder.monic(ord)?;
        let (new_tip, _) = remainder.tip(ord)?;
        if new_tip.len() > caps.max_tip_length {
            break CompletionStatus::Capped(CapReason::TipLength(caps.max_tip_length));
        }
        let divides_existing = basis.iter().any(|g| {
            g.tip(ord)
                .map(|(t, _)| t.has_subpath(quiver, new_tip))
                .unwrap_or(false)
        });
        if divides_existing {
            // the new tip knocks out an existing generator: interreduce and
            // start the pair queue over on the smaller basis
            basis.push(remainder);
            basis = tip_reduce_set(quiver, basis, ord)?;
            pending = seed_pairs(quiver, &basis, ord)?;
        } else {
            basis.push(remainder);
            let new_idx = basis.len() - 1;
            for g in 0..basis.len() {
                push_pairs(quiver, &basis, ord, g, new_idx, &mut pending)?;
                if g != new_idx {
                    push_pairs(quiver, &basis, ord, new_idx, g, &mut pending)?;
                }
            }
        }
    };

    Ok(GroebnerBasis {
        generators: basis,
        order: ord.clone(),
        status,
    })
}

/// The reduced Gröbner basis: every generator has the form `t - N_t` with
/// `t` in the minimal tip set and the tail supported on nontips. Unique for
/// the ideal and order; requires a complete basis.
pub fn reduced_basis<C: Coefficient>(
    quiver: &Quiver,
    gb: &GroebnerBasis<C>,
) -> Result<GroebnerBasis<C>> {
    if !gb.status.is_complete() {
        return Err(Error::CappedBasis(gb.status.describe()));
    }
    let mut generators = tip_reduce_set(quiver, gb.generators.clone(), &gb.order)?;
    generators.sort_by(|a, b| {
        let ta = a.tip(&gb.order).expect("nonzero").0.clone();
        let tb = b.tip(&gb.order).expect("nonzero").0.clone();
        gb.order.cmp(&ta, &tb).reverse()
    });
    Ok(GroebnerBasis {
        generators,
        order: gb.order.clone(),
        status: CompletionStatus::Complete,
    })
}

/// Decide `x ∈ ⟨basis⟩` by complete reduction, with the trace as a witness.
pub fn membership<C: Coefficient>(
    quiver: &Quiver,
    x: &Element<C>,
    gb: &GroebnerBasis<C>,
) -> Result<(Membership, ReductionTrace<C>)> {
    let (nf, trace) = complete_reduce(quiver, x, &gb.generators, &gb.order)?;
    let verdict = if nf.is_zero() {
        Membership::In
    } else if gb.status.is_complete() {
        Membership::NotIn
    } else {
        Membership::Unknown
    };
    Ok((verdict, trace))
}

/// The minimal tip set of the ideal: the tips of the reduced basis, which
/// generate the associated monomial ideal. Sorted descending under the order.
pub fn associated_monomial<C: Coefficient>(
    quiver: &Quiver,
    gb: &GroebnerBasis<C>,
) -> Result<Vec<Path>> {
    let reduced = reduced_basis(quiver, gb)?;
    reduced.tips()
}
