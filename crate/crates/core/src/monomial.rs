//! Combinatorics of a monomial quotient KQ/⟨𝒯⟩ for a tip-reduced set 𝒯 of
//! paths of length at least two: the nontip set 𝒩 (all paths avoiding every
//! element of 𝒯 as a subpath), finiteness, dimension, graded dimensions,
//! Hilbert series, Cartan matrix, and quadraticity.
//!
//! 𝒩 is recognized by a small deterministic automaton whose states are the
//! per-vertex start states plus the distinct proper prefixes of elements of
//! 𝒯; a transition dies exactly when it completes some element of 𝒯. Counting
//! walks in this automaton computes dimensions without enumerating paths.

use std::collections::BTreeMap;

use num::BigUint;

use crate::error::{Error, Result};
use crate::paths::{Path, PathOrder, Quiver, WeightFunction};

/// Discard every path that has another member as a proper subpath, leaving
/// the unique minimal (tip-reduced) generating set of the same monomial
/// ideal. Duplicates collapse to one copy; input order is kept.
pub fn minimal_monomial_generators(quiver: &Quiver, paths: &[Path]) -> Vec<Path> {
    let mut unique: Vec<Path> = Vec::new();
    for p in paths {
        if !unique.contains(p) {
            unique.push(p.clone());
        }
    }
    unique
        .iter()
        .filter(|p| !unique.iter().any(|q| q != *p && p.has_subpath(quiver, q)))
        .cloned()
        .collect()
}

type StateId = usize;

#[derive(Debug, Clone)]
struct State {
    /// The live suffix this state tracks (a vertex path for start states).
    suffix: Path,
    /// Outgoing transitions, indexed by arrow; `None` is the dead sink.
    next: Vec<Option<StateId>>,
}

#[derive(Debug, Clone)]
struct NontipAutomaton {
    states: Vec<State>,
    /// Start state per vertex.
    start: Vec<StateId>,
}

impl NontipAutomaton {
    fn build(quiver: &Quiver, tips: &[Path]) -> NontipAutomaton {
        // state vocabulary: vertex paths + proper prefixes of tips
        let mut words: Vec<Path> = quiver.vertex_ids().map(|v| quiver.vertex_path(v)).collect();
        for t in tips {
            for l in 1..t.len() {
                let prefix = t.segment(quiver, 0, l);
                if !words.contains(&prefix) {
                    words.push(prefix);
                }
            }
        }
        let index_of = |w: &Path| words.iter().position(|x| x == w).expect("state exists");

        let n_arrows = quiver.arrow_count();
        let mut states = Vec::with_capacity(words.len());
        for w in &words {
            let here = w.terminus(quiver);
            let mut next = vec![None; n_arrows];
            for a in quiver.arrows_from(here) {
                let extended = w
                    .compose(quiver, &quiver.arrow_path(a))
                    .expect("composable");
                // dead exactly when some tip ends here
                let completes_tip = tips.iter().any(|t| {
                    t.len() <= extended.len()
                        && extended.arrows()[extended.len() - t.len()..] == t.arrows()[..]
                });
                if completes_tip {
                    continue;
                }
                // fall back to the longest suffix that is again a state word
                let target = (0..=extended.len())
                    .map(|drop| extended.segment(quiver, drop, extended.len()))
                    .find(|s| words.contains(s))
                    .expect("the empty suffix is always a state");
                next[a.index()] = Some(index_of(&target));
            }
            states.push(State {
                suffix: w.clone(),
                next,
            });
        }
        let start = quiver
            .vertex_ids()
            .map(|v| index_of(&quiver.vertex_path(v)))
            .collect();
        NontipAutomaton { states, start }
    }

    fn step(&self, s: StateId, arrow: usize) -> Option<StateId> {
        self.states[s].next[arrow]
    }

    fn accepts(&self, p: &Path) -> bool {
        let mut s = self.start[p.origin().index()];
        for a in p.arrows() {
            match self.step(s, a.index()) {
                Some(t) => s = t,
                None => return false,
            }
        }
        true
    }

    /// A reachable cycle, as the arrow sequence along it, when one exists.
    fn find_cycle(&self, quiver: &Quiver) -> Option<Path> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            White,
            Grey,
            Black,
        }
        let mut mark = vec![Mark::White; self.states.len()];
        // parent edge: (previous state, arrow index)
        let mut parent: Vec<Option<(StateId, usize)>> = vec![None; self.states.len()];

        fn dfs(
            auto: &NontipAutomaton,
            s: StateId,
            mark: &mut [Mark],
            parent: &mut [Option<(StateId, usize)>],
        ) -> Option<(StateId, StateId, usize)> {
            mark[s] = Mark::Grey;
            for (arrow, t) in auto.states[s].next.iter().enumerate() {
                let Some(t) = *t else { continue };
                match mark[t] {
                    Mark::Grey => return Some((t, s, arrow)),
                    Mark::White => {
                        parent[t] = Some((s, arrow));
                        if let Some(hit) = dfs(auto, t, mark, parent) {
                            return Some(hit);
                        }
                    }
                    Mark::Black => {}
                }
            }
            mark[s] = Mark::Black;
            None
        }

        for &root in &self.start {
            if mark[root] != Mark::White {
                continue;
            }
            if let Some((entry, last, arrow)) = dfs(self, root, &mut mark, &mut parent) {
                // walk parents from `last` back to `entry`, then close with `arrow`
                let mut arrows_rev = vec![arrow];
                let mut cur = last;
                while cur != entry {
                    let (prev, via) = parent[cur].expect("parent chain");
                    arrows_rev.push(via);
                    cur = prev;
                }
                arrows_rev.reverse();
                let origin = self.states[entry].suffix.terminus(quiver);
                let mut p = quiver.vertex_path(origin);
                for a in arrows_rev {
                    p = p
                        .compose(quiver, &quiver.arrow_path(crate::paths::ArrowId(a as u32)))
                        .expect("cycle composes");
                }
                return Some(p);
            }
        }
        None
    }

    /// Number of accepted paths per length, `0..=truncation`.
    fn count_by_length(&self, truncation: usize) -> Vec<BigUint> {
        let mut counts = Vec::with_capacity(truncation + 1);
        let mut level: Vec<BigUint> = vec![BigUint::ZERO; self.states.len()];
        for &s in &self.start {
            level[s] += 1u32;
        }
        counts.push(level.iter().sum());
        for _ in 0..truncation {
            let mut next: Vec<BigUint> = vec![BigUint::ZERO; self.states.len()];
            for (s, c) in level.iter().enumerate() {
                if *c == BigUint::ZERO {
                    continue;
                }
                for t in self.states[s].next.iter().flatten() {
                    next[*t] += c.clone();
                }
            }
            counts.push(next.iter().sum());
            level = next;
        }
        counts
    }
}

/// How many nontips to materialize.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NontipBound {
    UpToLength(usize),
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dimension {
    Finite(u64),
    Infinite,
}

/// A monomial quotient: the quiver, the tip set 𝒯, and the automaton that
/// recognizes the nontips. Immutable after construction.
#[derive(Debug, Clone)]
pub struct MonomialData {
    quiver: Quiver,
    tips: Vec<Path>,
    automaton: NontipAutomaton,
}

impl MonomialData {
    /// Validate that `tips` is a tip-reduced set of paths of length ≥ 2 and
    /// build the nontip automaton. Tip order is preserved as given.
    pub fn new(quiver: &Quiver, tips: Vec<Path>) -> Result<MonomialData> {
        for t in &tips {
            if t.len() < 2 {
                return Err(Error::TipTooShort(t.display(quiver).to_string()));
            }
        }
        for (i, t) in tips.iter().enumerate() {
            for (j, u) in tips.iter().enumerate() {
                if i != j && t.has_subpath(quiver, u) {
                    return Err(Error::NotTipReduced {
                        contained: u.display(quiver).to_string(),
                        containing: t.display(quiver).to_string(),
                    });
                }
            }
        }
        let automaton = NontipAutomaton::build(quiver, &tips);
        Ok(MonomialData {
            quiver: quiver.clone(),
            tips,
            automaton,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn tips(&self) -> &[Path] {
        &self.tips
    }

    /// Is `p` a nontip, i.e. free of every element of 𝒯 as a subpath?
    pub fn is_nontip(&self, p: &Path) -> bool {
        self.automaton.accepts(p)
    }

    /// True iff 𝒩 is finite, i.e. the reachable part of the automaton is
    /// acyclic.
    pub fn is_finite_dimensional(&self) -> bool {
        self.automaton.find_cycle(&self.quiver).is_none()
    }

    /// All nontips up to a length bound, or all of 𝒩 when finite; sorted
    /// ascending under `ord`.
    pub fn nontips(&self, ord: &PathOrder, bound: NontipBound) -> Result<Vec<Path>> {
        let max_len = match bound {
            NontipBound::UpToLength(l) => l,
            NontipBound::All => match self.automaton.find_cycle(&self.quiver) {
                Some(cycle) => {
                    return Err(Error::InfiniteNontips {
                        witness: cycle.display(&self.quiver).to_string(),
                    })
                }
                // a finite automaton's accepted paths cannot be longer than
                // its live state count on an acyclic transition graph
                None => self.automaton.states.len(),
            },
        };
        let mut out = Vec::new();
        let mut frontier: Vec<Path> = self
            .quiver
            .vertex_ids()
            .map(|v| self.quiver.vertex_path(v))
            .collect();
        out.extend(frontier.iter().cloned());
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                let end = p.terminus(&self.quiver);
                for a in self.quiver.arrows_from(end) {
                    if let Some(q) = p.compose(&self.quiver, &self.quiver.arrow_path(a)) {
                        if self.is_nontip(&q) {
                            next.push(q);
                        }
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
            if frontier.is_empty() {
                break;
            }
        }
        out.sort_by(|p, q| ord.cmp(p, q));
        Ok(out)
    }

    /// |𝒩| when finite.
    pub fn dimension(&self) -> Dimension {
        if !self.is_finite_dimensional() {
            return Dimension::Infinite;
        }
        // memoized walk count on the acyclic reachable part
        fn walks(auto: &NontipAutomaton, s: StateId, memo: &mut [Option<u64>]) -> u64 {
            if let Some(v) = memo[s] {
                return v;
            }
            let mut total: u64 = 1;
            for t in auto.states[s].next.iter().flatten() {
                total = total
                    .checked_add(walks(auto, *t, memo))
                    .expect("dimension overflow");
            }
            memo[s] = Some(total);
            total
        }
        let mut memo = vec![None; self.automaton.states.len()];
        let mut total: u64 = 0;
        for &s in &self.automaton.start {
            total = total
                .checked_add(walks(&self.automaton, s, &mut memo))
                .expect("dimension overflow");
        }
        Dimension::Finite(total)
    }

    /// Exact nontip counts for the requested degrees of a weight grading.
    ///
    /// Positive ℤ-gradings are counted by bounded walks; otherwise 𝒩 must be
    /// finite, and an infinite 𝒩 is reported against the first requested
    /// degree since per-degree finiteness cannot be certified.
    pub fn graded_dimensions(
        &self,
        weights: &WeightFunction,
        degrees: &[i64],
    ) -> Result<BTreeMap<i64, u64>> {
        let mut counts: BTreeMap<i64, u64> = degrees.iter().map(|&g| (g, 0)).collect();
        if degrees.is_empty() {
            return Ok(counts);
        }
        if weights.is_positive() {
            let gmax = degrees.iter().copied().max().unwrap_or(0);
            // level sets of (state, accumulated weight), one path-length step
            // at a time; every arrow weighs >= 1 so levels drain by gmax
            let mut level: BTreeMap<(StateId, i64), u64> = BTreeMap::new();
            for &s in &self.automaton.start {
                *level.entry((s, 0)).or_insert(0) += 1;
            }
            while !level.is_empty() {
                for (&(_, w), &c) in &level {
                    if let Some(slot) = counts.get_mut(&w) {
                        *slot += c;
                    }
                }
                let mut next: BTreeMap<(StateId, i64), u64> = BTreeMap::new();
                for (&(s, w), &c) in &level {
                    for a in self.quiver.arrow_ids() {
                        let Some(t) = self.automaton.step(s, a.index()) else {
                            continue;
                        };
                        let w2 = w + weights.arrow_weight(&self.quiver, a)?;
                        if w2 <= gmax {
                            *next.entry((t, w2)).or_insert(0) += c;
                        }
                    }
                }
                level = next;
            }
            return Ok(counts);
        }
        if self.automaton.find_cycle(&self.quiver).is_some() {
            return Err(Error::InfiniteDegree {
                degree: degrees[0].to_string(),
            });
        }
        let ord = PathOrder::declaration_order(&self.quiver, crate::paths::OrderKind::LengthLex);
        for n in self.nontips(&ord, NontipBound::All)? {
            let w = weights.weight(&self.quiver, &n)?;
            if let Some(slot) = counts.get_mut(&w) {
                *slot += 1;
            }
        }
        Ok(counts)
    }

    /// Dimensions of the length-graded components 0..=truncation, computed by
    /// transfer counting on the automaton rather than path enumeration.
    pub fn hilbert_series(&self, truncation: usize) -> Vec<BigUint> {
        self.automaton.count_by_length(truncation)
    }

    /// Cartan matrix under the convention `C[i][j]` = number of nontips from
    /// vertex i to vertex j. Requires 𝒩 finite.
    pub fn cartan_matrix(&self) -> Result<Vec<Vec<u64>>> {
        if !self.is_finite_dimensional() {
            return Err(Error::NotFiniteDimensional);
        }
        let n = self.quiver.vertex_count();
        let mut matrix = vec![vec![0u64; n]; n];
        let ord = PathOrder::declaration_order(&self.quiver, crate::paths::OrderKind::LengthLex);
        for p in self.nontips(&ord, NontipBound::All)? {
            matrix[p.origin().index()][p.terminus(&self.quiver).index()] += 1;
        }
        Ok(matrix)
    }

    /// True iff every tip has length exactly 2, the sufficient condition for
    /// the Koszul flag under length-respecting orders.
    pub fn is_quadratic(&self) -> bool {
        self.tips.iter().all(|t| t.len() == 2)
    }

    /// The Koszul flag for every algebra sharing this tip set: certified by a
    /// quadratic tip set together with a length-refining order. A `false`
    /// makes no claim either way.
    pub fn koszul_certified(&self, ord: &PathOrder) -> bool {
        self.is_quadratic() && ord.refines_length()
    }

    /// True iff every path of length `m` contains a tip, i.e. the monomial
    /// ideal swallows all paths of length `m`.
    pub fn rejects_all_of_length(&self, m: usize) -> bool {
        let mut level: Vec<bool> = vec![false; self.automaton.states.len()];
        for &s in &self.automaton.start {
            level[s] = true;
        }
        for _ in 0..m {
            let mut next = vec![false; self.automaton.states.len()];
            for (s, &live) in level.iter().enumerate() {
                if !live {
                    continue;
                }
                for t in self.automaton.states[s].next.iter().flatten() {
                    next[*t] = true;
                }
            }
            level = next;
            if !level.iter().any(|&b| b) {
                return true;
            }
        }
        !level.iter().any(|&b| b)
    }

    /// The longest nontip length, when 𝒩 is finite.
    pub fn max_nontip_length(&self) -> Result<usize> {
        if !self.is_finite_dimensional() {
            return Err(Error::NotFiniteDimensional);
        }
        fn longest(auto: &NontipAutomaton, s: StateId, memo: &mut [Option<usize>]) -> usize {
            if let Some(v) = memo[s] {
                return v;
            }
            let mut best = 0;
            for t in auto.states[s].next.iter().flatten() {
                best = best.max(1 + longest(auto, *t, memo));
            }
            memo[s] = Some(best);
            best
        }
        let mut memo = vec![None; self.automaton.states.len()];
        Ok(self
            .automaton
            .start
            .iter()
            .map(|&s| longest(&self.automaton, s, &mut memo))
            .max()
            .unwrap_or(0))
    }
}
