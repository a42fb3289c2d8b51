//! The deformation space of algebras sharing a fixed tip set.
//!
//! Given a quiver, an admissible order, and a tip-reduced set 𝒯 of paths of
//! length ≥ 2, each tip `t` gets a tail space 𝒩(t) of nontips parallel to
//! and below it. Points of K^D (one coordinate per tail) correspond to
//! candidate reduced bases {t - Σ c_{t,n} n}; the candidates that really are
//! reduced Gröbner bases form an affine variety, cut out by the polynomial
//! coefficients obtained from completely reducing every overlap relation of
//! the symbolic generators h_t = t - Σ x_{t,n} n.
//!
//! Because the h_t are monic, reduction never divides and all intermediate
//! coefficients stay in the polynomial ring — the equations come out exact.

use std::sync::Arc;

use rayon::prelude::*;

use crate::coefficients::{Coefficient, FieldValue, Polynomial, VarTable};
use crate::elements::{complete_reduce, overlaps, Element};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, reduced_basis, CompletionCaps, CompletionStatus, GroebnerBasis};
use crate::monomial::{MonomialData, NontipBound};
use crate::paths::{Path, PathOrder, Quiver, WeightFunction};

/// For each tip `t`, the ordered tail set 𝒩(t): nontips parallel to `t` and
/// strictly below it, listed descending under the order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailSpace {
    tips: Vec<Path>,
    tails: Vec<Vec<Path>>,
}

impl TailSpace {
    pub fn tips(&self) -> &[Path] {
        &self.tips
    }

    pub fn tails(&self, tip_index: usize) -> &[Path] {
        &self.tails[tip_index]
    }

    /// D, the total number of tail coordinates.
    pub fn dimension(&self) -> usize {
        self.tails.iter().map(Vec::len).sum()
    }

    /// Flat (tip, tail) pairs in variable order.
    pub fn legend(&self) -> Vec<(Path, Path)> {
        let mut out = Vec::with_capacity(self.dimension());
        for (i, t) in self.tips.iter().enumerate() {
            for n in &self.tails[i] {
                out.push((t.clone(), n.clone()));
            }
        }
        out
    }

    fn filtered(&self, keep: impl Fn(usize, &Path) -> bool) -> TailSpace {
        TailSpace {
            tips: self.tips.clone(),
            tails: self
                .tails
                .iter()
                .enumerate()
                .map(|(i, ns)| ns.iter().filter(|n| keep(i, n)).cloned().collect())
                .collect(),
        }
    }
}

/// Compute the full tail space of a monomial quotient. Each 𝒩(t) is finite
/// because the built-in orders refine length, so everything below `t` has
/// length at most ℓ(t).
pub fn tail_space(md: &MonomialData, ord: &PathOrder) -> Result<TailSpace> {
    assert!(ord.refines_length());
    let quiver = md.quiver();
    let mut tails = Vec::with_capacity(md.tips().len());
    for t in md.tips() {
        let mut ns: Vec<Path> = md
            .nontips(ord, NontipBound::UpToLength(t.len()))?
            .into_iter()
            .filter(|n| {
                n.origin() == t.origin()
                    && n.terminus(quiver) == t.terminus(quiver)
                    && ord.cmp(t, n) == std::cmp::Ordering::Greater
            })
            .collect();
        ns.sort_by(|p, q| ord.cmp(p, q).reverse());
        tails.push(ns);
    }
    Ok(TailSpace {
        tips: md.tips().to_vec(),
        tails,
    })
}

/// Restrict a tail space to the weight-homogeneous tails of length ≥ 1:
/// 𝒩^W(t) = { n ∈ 𝒩(t) | ℓ(n) ≥ 1, W(n) = W(t) }.
pub fn graded_tail_space(
    md: &MonomialData,
    ts: &TailSpace,
    weights: &WeightFunction,
) -> Result<TailSpace> {
    let quiver = md.quiver();
    let mut tip_weights = Vec::with_capacity(ts.tips.len());
    for t in &ts.tips {
        tip_weights.push(weights.weight(quiver, t)?);
    }
    let mut tails = Vec::with_capacity(ts.tips.len());
    for (i, ns) in ts.tails.iter().enumerate() {
        let mut kept = Vec::new();
        for n in ns {
            if !n.is_vertex() && weights.weight(quiver, n)? == tip_weights[i] {
                kept.push(n.clone());
            }
        }
        tails.push(kept);
    }
    Ok(TailSpace {
        tips: ts.tips.clone(),
        tails,
    })
}

/// Presentation variant tag.
#[derive(Debug, Clone, PartialEq)]
pub enum Variant {
    Plain,
    Graded(WeightFunction),
    /// Pinned coordinates: variable index and prescribed value.
    Special {
        pins: Vec<(usize, FieldValue)>,
    },
    Admissible {
        m: usize,
    },
}

/// One overlap between symbolic generators: tip(h)·m = n·tip(h').
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapRecord {
    pub left_tip: Path,
    pub right_tip: Path,
    pub m: Path,
    pub n: Path,
}

/// Coefficient variables, symbolic generators, and the defining equations of
/// one variety presentation.
#[derive(Debug, Clone)]
pub struct VarietyPresentation {
    quiver: Quiver,
    order: PathOrder,
    pub tail_space: TailSpace,
    pub vars: Arc<VarTable>,
    /// (tip, tail) per variable, aligned with `vars`.
    pub legend: Vec<(Path, Path)>,
    /// The symbolic generators h_t, monic with polynomial tails.
    pub generators: Vec<Element<Polynomial>>,
    pub overlap_inventory: Vec<OverlapRecord>,
    /// Deduplicated, sign-normalized defining polynomials in canonical order.
    pub equations: Vec<Polynomial>,
    pub variant: Variant,
    /// For pinned presentations: the base equations with pinned values
    /// substituted in.
    pub eliminated_equations: Option<Vec<Polynomial>>,
}

fn variable_table(quiver: &Quiver, ts: &TailSpace) -> (Arc<VarTable>, Vec<(Path, Path)>) {
    let legend = ts.legend();
    let names = legend
        .iter()
        .map(|(t, n)| format!("x[{};{}]", t.display(quiver), n.display(quiver)));
    (VarTable::new(names), legend)
}

fn symbolic_generators(ts: &TailSpace, vars: &Arc<VarTable>) -> Vec<Element<Polynomial>> {
    let mut gens = Vec::with_capacity(ts.tips.len());
    let mut var_idx = 0usize;
    for (i, t) in ts.tips.iter().enumerate() {
        let mut h = Element::from_path(t.clone(), Polynomial::one(vars));
        for n in &ts.tails[i] {
            h.add_term(n.clone(), Polynomial::var(vars, var_idx).neg());
            var_idx += 1;
        }
        gens.push(h);
    }
    gens
}

/// Enumerate all overlap relations among the generators (self-overlaps
/// included), completely reduce each one, and collect the nontip coefficient
/// polynomials. The per-overlap reductions are independent and run in
/// parallel; results are merged in the canonical (pair, tail) order so the
/// output does not depend on scheduling.
fn overlap_equations(
    quiver: &Quiver,
    ord: &PathOrder,
    generators: &[Element<Polynomial>],
) -> Result<(Vec<OverlapRecord>, Vec<Polynomial>)> {
    let mut jobs: Vec<(OverlapRecord, Element<Polynomial>)> = Vec::new();
    for f in generators {
        for g in generators {
            let left_tip = f.tip(ord)?.0.clone();
            let right_tip = g.tip(ord)?.0.clone();
            for ov in overlaps(quiver, f, g, ord)? {
                jobs.push((
                    OverlapRecord {
                        left_tip: left_tip.clone(),
                        right_tip: right_tip.clone(),
                        m: ov.m,
                        n: ov.n,
                    },
                    ov.relation,
                ));
            }
        }
    }
    let reduced: Vec<Result<Element<Polynomial>>> = jobs
        .par_iter()
        .map(|(_, relation)| complete_reduce(quiver, relation, generators, ord).map(|(nf, _)| nf))
        .collect();

    let mut records = Vec::with_capacity(jobs.len());
    let mut equations = Vec::new();
    for ((record, _), nf) in jobs.into_iter().zip(reduced) {
        let nf = nf?;
        records.push(record);
        collect_coefficients(&nf, ord, &mut equations);
    }
    Ok((records, equations))
}

fn collect_coefficients(
    nf: &Element<Polynomial>,
    ord: &PathOrder,
    equations: &mut Vec<Polynomial>,
) {
    for p in nf.support_descending(ord) {
        let poly = nf.coefficient(p).expect("support").sign_normalized();
        if !poly.is_zero() && !equations.contains(&poly) {
            equations.push(poly);
        }
    }
}

/// The plain variety presentation for a monomial quotient.
pub fn plain_variety(md: &MonomialData, ord: &PathOrder) -> Result<VarietyPresentation> {
    let ts = tail_space(md, ord)?;
    let (vars, legend) = variable_table(md.quiver(), &ts);
    let generators = symbolic_generators(&ts, &vars);
    let (overlap_inventory, equations) = overlap_equations(md.quiver(), ord, &generators)?;
    Ok(VarietyPresentation {
        quiver: md.quiver().clone(),
        order: ord.clone(),
        tail_space: ts,
        vars,
        legend,
        generators,
        overlap_inventory,
        equations,
        variant: Variant::Plain,
        eliminated_equations: None,
    })
}

/// The graded restriction: tails cut down to 𝒩^W(t) and the plain equations
/// specialized by substituting 0 for every excluded variable.
pub fn graded_variety(
    md: &MonomialData,
    ord: &PathOrder,
    weights: &WeightFunction,
) -> Result<VarietyPresentation> {
    let plain = plain_variety(md, ord)?;
    let graded_ts = graded_tail_space(md, &plain.tail_space, weights)?;
    let kept_pairs = graded_ts.legend();
    let kept: Vec<usize> = plain
        .legend
        .iter()
        .enumerate()
        .filter(|(_, pair)| kept_pairs.contains(pair))
        .map(|(i, _)| i)
        .collect();
    let (vars, legend) = variable_table(md.quiver(), &graded_ts);

    let mut equations = Vec::new();
    for f in &plain.equations {
        let mut g = f.clone();
        for i in 0..plain.vars.len() {
            if !kept.contains(&i) {
                g = g.substitute(i, &FieldValue::zero_rational());
            }
        }
        if g.is_zero() {
            continue;
        }
        let g = g.project(&kept, &vars).sign_normalized();
        if !equations.contains(&g) {
            equations.push(g);
        }
    }
    let generators = symbolic_generators(&graded_ts, &vars);
    Ok(VarietyPresentation {
        quiver: md.quiver().clone(),
        order: ord.clone(),
        tail_space: graded_ts,
        vars,
        legend,
        generators,
        overlap_inventory: plain.overlap_inventory,
        equations,
        variant: Variant::Graded(weights.clone()),
        eliminated_equations: None,
    })
}

/// Pin selected tail coordinates to prescribed values: appends the linear
/// equations x_{t,n} - value and also emits the substituted equations.
pub fn special_subvariety(
    base: &VarietyPresentation,
    pins: &[(Path, Path, FieldValue)],
) -> Result<VarietyPresentation> {
    let mut pin_indices = Vec::with_capacity(pins.len());
    for (t, n, value) in pins {
        let idx = base
            .legend
            .iter()
            .position(|(bt, bn)| bt == t && bn == n)
            .ok_or_else(|| Error::NotATail {
                tip: t.display(&base.quiver).to_string(),
                tail: n.display(&base.quiver).to_string(),
            })?;
        pin_indices.push((idx, value.clone()));
    }
    let mut equations = base.equations.clone();
    for (idx, value) in &pin_indices {
        let linear = Polynomial::var(&base.vars, *idx)
            .sub(&Polynomial::constant(&base.vars, value.clone()))
            .sign_normalized();
        if !equations.contains(&linear) {
            equations.push(linear);
        }
    }
    let mut eliminated = Vec::new();
    for f in &base.equations {
        let mut g = f.clone();
        for (idx, value) in &pin_indices {
            g = g.substitute(*idx, value);
        }
        let g = g.sign_normalized();
        if !g.is_zero() && !eliminated.contains(&g) {
            eliminated.push(g);
        }
    }
    Ok(VarietyPresentation {
        quiver: base.quiver.clone(),
        order: base.order.clone(),
        tail_space: base.tail_space.clone(),
        vars: Arc::clone(&base.vars),
        legend: base.legend.clone(),
        generators: base.generators.clone(),
        overlap_inventory: base.overlap_inventory.clone(),
        equations,
        variant: Variant::Special { pins: pin_indices },
        eliminated_equations: Some(eliminated),
    })
}

/// The admissible-quotient presentation: tails restricted to length ≥ 2
/// (shorter tails are pinned to zero), overlap equations recomputed with the
/// restricted generators, plus the coefficients from completely reducing
/// every path of length `m`.
///
/// Requires every nontip to have length ≤ m-1; otherwise some path of length
/// `m` survives in the monomial quotient and no ideal with this tip set can
/// contain all of them.
pub fn admissible_variety(
    md: &MonomialData,
    ord: &PathOrder,
    m: usize,
) -> Result<VarietyPresentation> {
    if m < 2 {
        return Err(Error::BadAdmissibleExponent(m));
    }
    let max_len = md.max_nontip_length()?;
    if max_len > m - 1 {
        let witness = md
            .nontips(ord, NontipBound::All)?
            .into_iter()
            .find(|n| n.len() == max_len)
            .expect("witness nontip");
        return Err(Error::NontipTooLong {
            nontip: witness.display(md.quiver()).to_string(),
            len: max_len,
            max: m - 1,
            m,
        });
    }
    let ts = tail_space(md, ord)?.filtered(|_, n| n.len() >= 2);
    let (vars, legend) = variable_table(md.quiver(), &ts);
    let generators = symbolic_generators(&ts, &vars);
    let (overlap_inventory, mut equations) = overlap_equations(md.quiver(), ord, &generators)?;

    // every length-m path must die in the quotient: reduce it and demand all
    // coefficients vanish
    let mut length_m: Vec<Path> = crate::paths::enumerate_paths(md.quiver(), m)
        .into_iter()
        .filter(|p| p.len() == m)
        .collect();
    length_m.sort_by(|p, q| ord.cmp(p, q).reverse());
    let reduced: Vec<Result<Element<Polynomial>>> = length_m
        .par_iter()
        .map(|p| {
            let x = Element::from_path(p.clone(), Polynomial::one(&vars));
            complete_reduce(md.quiver(), &x, &generators, ord).map(|(nf, _)| nf)
        })
        .collect();
    for nf in reduced {
        collect_coefficients(&nf?, ord, &mut equations);
    }
    Ok(VarietyPresentation {
        quiver: md.quiver().clone(),
        order: ord.clone(),
        tail_space: ts,
        vars,
        legend,
        generators,
        overlap_inventory,
        equations,
        variant: Variant::Admissible { m },
        eliminated_equations: None,
    })
}

/// A point of a presentation: one exact value per variable, in legend order.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraPoint {
    pub values: Vec<FieldValue>,
}

impl AlgebraPoint {
    pub fn zeros(dimension: usize) -> AlgebraPoint {
        AlgebraPoint {
            values: vec![FieldValue::zero_rational(); dimension],
        }
    }

    pub fn new(values: Vec<FieldValue>) -> AlgebraPoint {
        AlgebraPoint { values }
    }
}

impl VarietyPresentation {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn order(&self) -> &PathOrder {
        &self.order
    }

    pub fn dimension(&self) -> usize {
        self.vars.len()
    }

    /// Indices and texts of the equations violated by `point`.
    pub fn violations(&self, point: &AlgebraPoint) -> Result<Vec<(usize, String)>> {
        if point.values.len() != self.vars.len() {
            return Err(Error::PointDimensionMismatch {
                got: point.values.len(),
                want: self.vars.len(),
            });
        }
        let mut out = Vec::new();
        for (i, f) in self.equations.iter().enumerate() {
            if !f.evaluate(&point.values)?.is_zero() {
                out.push((i, f.canonical_text()));
            }
        }
        Ok(out)
    }

    pub fn satisfies(&self, point: &AlgebraPoint) -> Result<bool> {
        Ok(self.violations(point)?.is_empty())
    }

    /// The candidate reduced basis {t - Σ c_{t,n} n} at a point.
    pub fn generators_at(&self, point: &AlgebraPoint) -> Result<Vec<Element<FieldValue>>> {
        if point.values.len() != self.vars.len() {
            return Err(Error::PointDimensionMismatch {
                got: point.values.len(),
                want: self.vars.len(),
            });
        }
        let mut gens = Vec::with_capacity(self.tail_space.tips().len());
        let mut var_idx = 0usize;
        for (i, t) in self.tail_space.tips().iter().enumerate() {
            let mut g = Element::from_path(t.clone(), FieldValue::one_rational());
            for n in self.tail_space.tails(i) {
                g.add_term(n.clone(), point.values[var_idx].neg());
                var_idx += 1;
            }
            gens.push(g);
        }
        Ok(gens)
    }

    /// Map a point of this (restricted) presentation to the plain
    /// presentation by zero-extension.
    pub fn zero_extend(
        &self,
        plain: &VarietyPresentation,
        point: &AlgebraPoint,
    ) -> Result<AlgebraPoint> {
        if point.values.len() != self.vars.len() {
            return Err(Error::PointDimensionMismatch {
                got: point.values.len(),
                want: self.vars.len(),
            });
        }
        let mut values = vec![FieldValue::zero_rational(); plain.vars.len()];
        for (i, pair) in self.legend.iter().enumerate() {
            let j = plain
                .legend
                .iter()
                .position(|p| p == pair)
                .ok_or_else(|| Error::Config("restricted variable missing from base".into()))?;
            values[j] = point.values[i].clone();
        }
        Ok(AlgebraPoint { values })
    }
}

/// Do all overlap relations of `gens` completely reduce to zero? This is the
/// direct completeness certificate, independent of any equation evaluation.
pub fn overlaps_reduce_to_zero(
    quiver: &Quiver,
    gens: &[Element<FieldValue>],
    ord: &PathOrder,
) -> Result<bool> {
    for f in gens {
        for g in gens {
            for ov in overlaps(quiver, f, g, ord)? {
                let (nf, _) = complete_reduce(quiver, &ov.relation, gens, ord)?;
                if !nf.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Instantiate the algebra at a point of the variety: check the equations,
/// build {t - Σ c_{t,n} n}, and certify completeness by reducing every
/// overlap to zero (an independent check of the evaluation).
pub fn point_to_algebra(
    vp: &VarietyPresentation,
    point: &AlgebraPoint,
) -> Result<GroebnerBasis<FieldValue>> {
    let violated = vp.violations(point)?;
    if !violated.is_empty() {
        let list: Vec<String> = violated
            .into_iter()
            .map(|(i, f)| format!("#{i}: {f}"))
            .collect();
        return Err(Error::PointOffVariety(list.join("; ")));
    }
    let gens = vp.generators_at(point)?;
    if !overlaps_reduce_to_zero(&vp.quiver, &gens, &vp.order)? {
        return Err(Error::PointOffVariety(
            "an overlap relation does not reduce to zero".into(),
        ));
    }
    Ok(GroebnerBasis {
        generators: gens,
        order: vp.order.clone(),
        status: CompletionStatus::Complete,
    })
}

/// Recover the point of the plain presentation from any generating set of
/// the ideal: complete to the reduced basis, check its tip set is the
/// expected 𝒯, and read off the tail coefficients.
pub fn algebra_to_point(
    quiver: &Quiver,
    generators: Vec<Element<FieldValue>>,
    ord: &PathOrder,
    expected_tips: &[Path],
    caps: &CompletionCaps,
) -> Result<AlgebraPoint> {
    let gb = buchberger(quiver, generators, ord, caps)?;
    if !gb.status.is_complete() {
        return Err(Error::CappedBasis(
            "completion capped before certification".into(),
        ));
    }
    let reduced = reduced_basis(quiver, &gb)?;
    let actual = reduced.tips()?;
    let mut expected_sorted = expected_tips.to_vec();
    expected_sorted.sort();
    let mut actual_sorted = actual.clone();
    actual_sorted.sort();
    if expected_sorted != actual_sorted {
        let show = |tips: &[Path]| {
            let names: Vec<String> = tips.iter().map(|t| t.display(quiver).to_string()).collect();
            format!("{{{}}}", names.join(", "))
        };
        return Err(Error::TipSetMismatch {
            actual: show(&actual),
            expected: show(expected_tips),
        });
    }
    let md = MonomialData::new(quiver, expected_tips.to_vec())?;
    let ts = tail_space(&md, ord)?;
    let mut values = Vec::with_capacity(ts.dimension());
    for (i, t) in ts.tips().iter().enumerate() {
        let g = reduced
            .generators
            .iter()
            .find(|g| g.tip(ord).map(|(tip, _)| tip == t).unwrap_or(false))
            .expect("tip present");
        for n in ts.tails(i) {
            // g = t - Σ c_{t,n} n, so the stored coefficient is -c
            values.push(match g.coefficient(n) {
                Some(c) => c.neg(),
                None => FieldValue::zero_rational(),
            });
        }
    }
    Ok(AlgebraPoint { values })
}
