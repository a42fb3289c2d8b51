//! Command implementations: each takes the parsed problem plus flags and
//! produces both a human-readable text block and a JSON value. All maps are
//! sorted and all lists are in canonical order, so output is byte-stable for
//! a fixed input and flag set.

use std::collections::BTreeMap;

use num::BigUint;
use serde_json::{json, Value};

use quivar::coefficients::{FieldValue, Polynomial};
use quivar::elements::Element;
use quivar::error::{Error, Result};
use quivar::groebner::{
    associated_monomial, buchberger, membership, reduced_basis, CompletionCaps, Membership,
};
use quivar::monomial::{Dimension, MonomialData, NontipBound};
use quivar::resolution::{betti, cartan_check, global_dimension, CartanVerdict, GlobalDimension};
use quivar::variety::{
    admissible_variety, algebra_to_point, graded_variety, plain_variety, point_to_algebra,
    special_subvariety, AlgebraPoint, VarietyPresentation,
};
use quivar::{Path, Quiver};

use crate::problem::{IdealInput, ProblemFile};

/// Flags shared by the subcommands; defaults match the library caps.
#[derive(Debug, Clone)]
pub struct Options {
    pub caps: CompletionCaps,
    pub truncate: usize,
    pub nmax: Option<usize>,
    pub admissible_m: Option<usize>,
    pub element: Option<String>,
    pub point: Option<String>,
    pub variant: VariantFlag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariantFlag {
    Plain,
    Graded,
    Special,
    Admissible,
}

pub struct Output {
    pub text: String,
    pub json: Value,
}

fn generator_elements(p: &ProblemFile) -> Vec<Element<FieldValue>> {
    match &p.input {
        IdealInput::Tips(tips) => tips
            .iter()
            .map(|t| Element::from_path(t.clone(), FieldValue::one_rational()))
            .collect(),
        IdealInput::Generators(gens) => gens.clone(),
    }
}

fn require_tips(p: &ProblemFile) -> Result<Vec<Path>> {
    match &p.input {
        IdealInput::Tips(tips) => Ok(tips.clone()),
        IdealInput::Generators(_) => Err(Error::Config(
            "this command needs a `[tips]` section; run `groebner` on `[generators]` first to find the tip set".into(),
        )),
    }
}

fn monomial_data(p: &ProblemFile) -> Result<MonomialData> {
    MonomialData::new(&p.quiver, require_tips(p)?)
}

fn path_list(quiver: &Quiver, paths: &[Path]) -> Vec<String> {
    paths
        .iter()
        .map(|t| t.display(quiver).to_string())
        .collect()
}

fn poly_terms_json(f: &Polynomial) -> Value {
    let terms: Vec<Value> = f
        .sorted_terms()
        .into_iter()
        .map(|(exps, coeff)| {
            let mut monomial = BTreeMap::new();
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    monomial.insert(f.vars().name(i).to_string(), e as u64);
                }
            }
            json!({ "coeff": coeff.to_string(), "monomial": monomial })
        })
        .collect();
    Value::Array(terms)
}

fn presentation_json(p: &ProblemFile, vp: &VarietyPresentation) -> Value {
    let quiver = &p.quiver;
    let variables: Vec<Value> = vp
        .legend
        .iter()
        .enumerate()
        .map(|(i, (t, n))| {
            json!({
                "name": vp.vars.name(i),
                "tip": t.display(quiver).to_string(),
                "tail": n.display(quiver).to_string(),
            })
        })
        .collect();
    let overlaps: Vec<Value> = vp
        .overlap_inventory
        .iter()
        .map(|ov| {
            json!({
                "left": ov.left_tip.display(quiver).to_string(),
                "right": ov.right_tip.display(quiver).to_string(),
                "m": ov.m.display(quiver).to_string(),
                "n": ov.n.display(quiver).to_string(),
            })
        })
        .collect();
    let mut result = json!({
        "dimension": vp.dimension(),
        "variables": variables,
        "generators": vp.generators.iter()
            .map(|h| h.display_with(quiver, vp.order()))
            .collect::<Vec<_>>(),
        "overlaps": overlaps,
        "equations": vp.equations.iter().map(poly_terms_json).collect::<Vec<_>>(),
        "equations_text": vp.equations.iter().map(|f| f.canonical_text()).collect::<Vec<_>>(),
    });
    if let Some(elim) = &vp.eliminated_equations {
        result["eliminated_text"] = Value::Array(
            elim.iter()
                .map(|f| Value::String(f.canonical_text()))
                .collect(),
        );
    }
    result
}

fn presentation_text(p: &ProblemFile, vp: &VarietyPresentation, title: &str) -> String {
    let quiver = &p.quiver;
    let mut out = String::new();
    out.push_str(&format!("variant: {title}\n"));
    out.push_str(&format!(
        "tips: {}\n",
        path_list(quiver, vp.tail_space.tips()).join(", ")
    ));
    out.push_str(&format!("D = {}\n", vp.dimension()));
    out.push_str("variables:\n");
    for (i, _) in vp.legend.iter().enumerate() {
        out.push_str(&format!("  {}\n", vp.vars.name(i)));
    }
    out.push_str("generators:\n");
    for h in &vp.generators {
        out.push_str(&format!("  {}\n", h.display_with(quiver, vp.order())));
    }
    out.push_str(&format!("overlaps ({}):\n", vp.overlap_inventory.len()));
    for ov in &vp.overlap_inventory {
        out.push_str(&format!(
            "  o({}, {}) with m = {}, n = {}\n",
            ov.left_tip.display(quiver),
            ov.right_tip.display(quiver),
            ov.m.display(quiver),
            ov.n.display(quiver)
        ));
    }
    out.push_str(&format!("equations ({}):\n", vp.equations.len()));
    for f in &vp.equations {
        out.push_str(&format!("  {}\n", f.canonical_text()));
    }
    if let Some(elim) = &vp.eliminated_equations {
        out.push_str(&format!("eliminated form ({}):\n", elim.len()));
        for f in elim {
            out.push_str(&format!("  {}\n", f.canonical_text()));
        }
    }
    out
}

fn build_presentation(
    p: &ProblemFile,
    opts: &Options,
    variant: VariantFlag,
) -> Result<VarietyPresentation> {
    let md = monomial_data(p)?;
    match variant {
        VariantFlag::Plain => plain_variety(&md, &p.order),
        VariantFlag::Graded => {
            let weights = p.weights.as_ref().ok_or_else(|| {
                Error::Config("graded variety needs a `[weights]` section".into())
            })?;
            graded_variety(&md, &p.order, weights)
        }
        VariantFlag::Special => {
            if p.phi.is_empty() {
                return Err(Error::Config(
                    "special subvariety needs a nonempty `[phi]` section".into(),
                ));
            }
            let base = plain_variety(&md, &p.order)?;
            special_subvariety(&base, &p.phi)
        }
        VariantFlag::Admissible => {
            let m = opts.admissible_m.or(p.admissible_m).ok_or_else(|| {
                Error::Config("admissible variety needs `--m` or an `[admissible]` section".into())
            })?;
            admissible_variety(&md, &p.order, m)
        }
    }
}

pub fn run_groebner(p: &ProblemFile, opts: &Options) -> Result<Output> {
    let gens = generator_elements(p);
    let gb = buchberger(&p.quiver, gens, &p.order, &opts.caps)?;
    let status = match gb.status {
        quivar::CompletionStatus::Complete => "complete".to_string(),
        quivar::CompletionStatus::Capped(reason) => format!("capped ({reason:?})"),
    };
    let basis_text: Vec<String> = gb
        .generators
        .iter()
        .map(|g| g.display_with(&p.quiver, &p.order))
        .collect();
    let mut text = format!("status: {status}\nbasis ({}):\n", gb.generators.len());
    for g in &basis_text {
        text.push_str(&format!("  {g}\n"));
    }
    let mut result = json!({
        "status": status,
        "basis": basis_text,
    });
    if gb.status.is_complete() {
        let reduced = reduced_basis(&p.quiver, &gb)?;
        let reduced_text: Vec<String> = reduced
            .generators
            .iter()
            .map(|g| g.display_with(&p.quiver, &p.order))
            .collect();
        let tips = path_list(&p.quiver, &associated_monomial(&p.quiver, &gb)?);
        text.push_str("reduced basis:\n");
        for g in &reduced_text {
            text.push_str(&format!("  {g}\n"));
        }
        text.push_str(&format!("tip set: {}\n", tips.join(", ")));
        result["reduced"] = json!(reduced_text);
        result["tips"] = json!(tips);
    }
    Ok(Output { text, json: result })
}

pub fn run_variety(p: &ProblemFile, opts: &Options, variant: VariantFlag) -> Result<Output> {
    let vp = build_presentation(p, opts, variant)?;
    let title = match variant {
        VariantFlag::Plain => "plain".to_string(),
        VariantFlag::Graded => "graded".to_string(),
        VariantFlag::Special => "special".to_string(),
        VariantFlag::Admissible => {
            format!(
                "admissible (m = {})",
                opts.admissible_m.or(p.admissible_m).unwrap_or(0)
            )
        }
    };
    Ok(Output {
        text: presentation_text(p, &vp, &title),
        json: presentation_json(p, &vp),
    })
}

pub fn run_nontips(p: &ProblemFile, opts: &Options) -> Result<Output> {
    let md = monomial_data(p)?;
    let bound = match opts.nmax {
        Some(n) => NontipBound::UpToLength(n),
        None => NontipBound::All,
    };
    let nontips = md.nontips(&p.order, bound)?;
    let names = path_list(&p.quiver, &nontips);
    let mut text = format!("nontips ({}):\n", names.len());
    for n in &names {
        text.push_str(&format!("  {n}\n"));
    }
    Ok(Output {
        text,
        json: json!({ "count": names.len(), "nontips": names }),
    })
}

pub fn run_dimension(p: &ProblemFile) -> Result<Output> {
    let md = monomial_data(p)?;
    let (text, value) = match md.dimension() {
        Dimension::Finite(n) => (format!("dimension: {n}\n"), json!(n)),
        Dimension::Infinite => ("dimension: infinite\n".to_string(), json!("infinite")),
    };
    Ok(Output {
        text,
        json: json!({ "dimension": value }),
    })
}

pub fn run_hilbert(p: &ProblemFile, opts: &Options) -> Result<Output> {
    let md = monomial_data(p)?;
    let coeffs: Vec<BigUint> = md.hilbert_series(opts.truncate);
    let strings: Vec<String> = coeffs.iter().map(BigUint::to_string).collect();
    Ok(Output {
        text: format!(
            "hilbert coefficients (degrees 0..={}): [{}]\n",
            opts.truncate,
            strings.join(", ")
        ),
        json: json!({ "truncation": opts.truncate, "coefficients": strings }),
    })
}

pub fn run_cartan(p: &ProblemFile, opts: &Options) -> Result<Output> {
    let md = monomial_data(p)?;
    let cap = opts.nmax.unwrap_or(8);
    let report = cartan_check(&md, cap)?;
    let verdict = match report.verdict {
        CartanVerdict::Pass => "pass",
        CartanVerdict::Fail => "fail",
        CartanVerdict::NoClaim => "no-claim",
    };
    let gldim = gldim_json(report.global_dimension);
    let mut text = String::from("cartan matrix:\n");
    for row in &report.matrix {
        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
        text.push_str(&format!("  [{}]\n", cells.join(", ")));
    }
    text.push_str(&format!(
        "determinant: {}\nglobal dimension: {}\nverdict: {verdict}\n",
        report.determinant,
        gldim_text(report.global_dimension)
    ));
    Ok(Output {
        text,
        json: json!({
            "matrix": report.matrix,
            "determinant": report.determinant.to_string(),
            "global_dimension": gldim,
            "verdict": verdict,
        }),
    })
}

fn gldim_text(g: GlobalDimension) -> String {
    match g {
        GlobalDimension::Finite(n) => n.to_string(),
        GlobalDimension::AtLeast(cap) => format!("at least {cap} (cap reached)"),
    }
}

fn gldim_json(g: GlobalDimension) -> Value {
    match g {
        GlobalDimension::Finite(n) => json!(n),
        GlobalDimension::AtLeast(cap) => json!({ "at_least": cap }),
    }
}

pub fn run_betti(p: &ProblemFile, opts: &Options) -> Result<Output> {
    let md = monomial_data(p)?;
    let nmax = opts.nmax.unwrap_or(8);
    let mut text = String::new();
    let mut tables = Vec::new();
    for v in p.quiver.vertex_ids() {
        let table = betti(&md, v, nmax);
        let sums = table.row_sums();
        text.push_str(&format!("vertex {}:\n", p.quiver.vertex_name(v)));
        for (n, row) in table.rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            text.push_str(&format!(
                "  degree {n}: [{}] (total {})\n",
                cells.join(", "),
                sums[n]
            ));
        }
        tables.push(json!({
            "vertex": p.quiver.vertex_name(v),
            "rows": table.rows,
            "row_sums": sums,
        }));
    }
    Ok(Output {
        text,
        json: json!({ "nmax": nmax, "tables": tables }),
    })
}

pub fn run_gldim(p: &ProblemFile, opts: &Options) -> Result<Output> {
    let md = monomial_data(p)?;
    let cap = opts.nmax.unwrap_or(8);
    let g = global_dimension(&md, cap);
    Ok(Output {
        text: format!("global dimension: {}\n", gldim_text(g)),
        json: json!({ "global_dimension": gldim_json(g) }),
    })
}

pub fn run_membership(p: &ProblemFile, opts: &Options) -> Result<Output> {
    let element_text = opts
        .element
        .as_ref()
        .ok_or_else(|| Error::Config("membership needs `--element <text>`".into()))?;
    let x = crate::problem::parse_element(&p.quiver, element_text, 0)
        .map_err(|d| Error::Config(format!("cannot parse element: {}", d.message)))?;
    let gens = generator_elements(p);
    let gb = buchberger(&p.quiver, gens, &p.order, &opts.caps)?;
    let (verdict, trace) = membership(&p.quiver, &x, &gb)?;
    let verdict_text = match verdict {
        Membership::In => "in",
        Membership::NotIn => "not-in",
        Membership::Unknown => "unknown (basis capped)",
    };
    let nf = trace.result.display_with(&p.quiver, &p.order);
    Ok(Output {
        text: format!(
            "element: {}\nverdict: {verdict_text}\nnormal form: {nf}\nreduction steps: {}\n",
            x.display_with(&p.quiver, &p.order),
            trace.steps.len()
        ),
        json: json!({
            "verdict": match verdict {
                Membership::In => "in",
                Membership::NotIn => "not-in",
                Membership::Unknown => "unknown",
            },
            "normal_form": nf,
            "steps": trace.steps.len(),
        }),
    })
}

fn parse_point(text: &str, want: usize) -> Result<AlgebraPoint> {
    let mut values = Vec::new();
    let trimmed = text.trim();
    if !trimmed.is_empty() {
        for piece in trimmed.split(',') {
            let fv = piece.trim();
            let parsed = match fv.split_once('/') {
                Some((n, d)) => {
                    let n: i64 = n.trim().parse().map_err(|_| bad_point(fv))?;
                    let d: i64 = d.trim().parse().map_err(|_| bad_point(fv))?;
                    if d == 0 {
                        return Err(bad_point(fv));
                    }
                    FieldValue::rational(n, d)
                }
                None => {
                    let n: i64 = fv.parse().map_err(|_| bad_point(fv))?;
                    FieldValue::from_integer(n)
                }
            };
            values.push(parsed);
        }
    }
    if values.len() != want {
        return Err(Error::PointDimensionMismatch {
            got: values.len(),
            want,
        });
    }
    Ok(AlgebraPoint::new(values))
}

fn bad_point(piece: &str) -> Error {
    Error::Config(format!("cannot parse point coordinate `{piece}`"))
}

pub fn run_point_check(p: &ProblemFile, opts: &Options) -> Result<Output> {
    let point_text = opts
        .point
        .as_ref()
        .ok_or_else(|| Error::Config("point-check needs `--point c1,c2,...`".into()))?;
    let vp = build_presentation(p, opts, opts.variant)?;
    let point = parse_point(point_text, vp.dimension())?;
    let violations = vp.violations(&point)?;
    let satisfied = violations.is_empty();
    let gens = vp.generators_at(&point)?;
    let certified = quivar::variety::overlaps_reduce_to_zero(&p.quiver, &gens, vp.order())?;
    let gens_text: Vec<String> = gens
        .iter()
        .map(|g| g.display_with(&p.quiver, vp.order()))
        .collect();
    let violation_list: Vec<Value> = violations
        .iter()
        .map(|(i, f)| json!({ "index": i, "equation": f }))
        .collect();
    let mut text =
        format!("satisfies equations: {satisfied}\noverlaps certify reduced basis: {certified}\n");
    if !violations.is_empty() {
        text.push_str("violated equations:\n");
        for (i, f) in &violations {
            text.push_str(&format!("  #{i}: {f}\n"));
        }
    }
    text.push_str("candidate basis:\n");
    for g in &gens_text {
        text.push_str(&format!("  {g}\n"));
    }
    Ok(Output {
        text,
        json: json!({
            "satisfies_equations": satisfied,
            "certified": certified,
            "violations": violation_list,
            "basis": gens_text,
        }),
    })
}

/// Recover the variety point of the ideal generated by `[generators]`,
/// relative to the tip set found by completion.
pub fn run_point_of(p: &ProblemFile, opts: &Options) -> Result<Output> {
    let gens = generator_elements(p);
    let gb = buchberger(&p.quiver, gens.clone(), &p.order, &opts.caps)?;
    let tips = associated_monomial(&p.quiver, &gb)?;
    let point = algebra_to_point(&p.quiver, gens, &p.order, &tips, &opts.caps)?;
    let md = MonomialData::new(&p.quiver, tips.clone())?;
    let vp = plain_variety(&md, &p.order)?;
    let gb2 = point_to_algebra(&vp, &point)?;
    let coords: Vec<String> = point.values.iter().map(|c| c.to_string()).collect();
    let names: Vec<String> = (0..vp.dimension())
        .map(|i| vp.vars.name(i).to_string())
        .collect();
    let mut text = format!("tips: {}\npoint:\n", path_list(&p.quiver, &tips).join(", "));
    for (name, c) in names.iter().zip(&coords) {
        text.push_str(&format!("  {name} = {c}\n"));
    }
    text.push_str(&format!("certified basis size: {}\n", gb2.generators.len()));
    Ok(Output {
        text,
        json: json!({
            "tips": path_list(&p.quiver, &tips),
            "variables": names,
            "point": coords,
        }),
    })
}
