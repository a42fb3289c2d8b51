//! The problem-file format: a sectioned plain-text description of a quiver,
//! an order, optional weights, and either a tip set or ideal generators.
//!
//! ```text
//! [quiver]
//! vertices = 1 2 5
//! a: 1 -> 2
//! b: 2 -> 5
//!
//! [order]
//! kind = length-left-lex
//! arrows = a b          # descending precedence: a > b
//! vertices = 1 2 5
//!
//! [tips]
//! a*b
//! ```
//!
//! `#` starts a comment. Exactly one of `[tips]` / `[generators]` must be
//! present. See docs/problemfile.ebnf for the full grammar.

use std::fmt;

use quivar::coefficients::FieldValue;
use quivar::paths::{OrderKind, WeightGroup};
use quivar::{Element, Path, PathOrder, Quiver, WeightFunction};

use num::bigint::BigInt;
use num::rational::BigRational;

/// Machine-readable diagnostic categories for parse failures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagCode {
    MissingSection,
    UnknownSection,
    DuplicateName,
    UnknownArrow,
    UnknownVertex,
    NonComposingPath,
    ConflictingSections,
    BadSyntax,
    BadValue,
}

impl fmt::Display for DiagCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DiagCode::MissingSection => "missing-section",
            DiagCode::UnknownSection => "unknown-section",
            DiagCode::DuplicateName => "duplicate-name",
            DiagCode::UnknownArrow => "unknown-arrow",
            DiagCode::UnknownVertex => "unknown-vertex",
            DiagCode::NonComposingPath => "non-composing-path",
            DiagCode::ConflictingSections => "conflicting-sections",
            DiagCode::BadSyntax => "bad-syntax",
            DiagCode::BadValue => "bad-value",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: DiagCode,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: [{}] {}",
            self.line, self.column, self.code, self.message
        )
    }
}

fn diag(code: DiagCode, line: usize, column: usize, message: impl Into<String>) -> Diagnostic {
    Diagnostic {
        code,
        line,
        column,
        message: message.into(),
    }
}

type ParseResult<T> = Result<T, Diagnostic>;

/// Either a tip set or a list of ideal generators.
#[derive(Debug, Clone, PartialEq)]
pub enum IdealInput {
    Tips(Vec<Path>),
    Generators(Vec<Element<FieldValue>>),
}

/// A fully validated problem description.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemFile {
    pub quiver: Quiver,
    pub order: PathOrder,
    pub weights: Option<WeightFunction>,
    pub input: IdealInput,
    /// Pins `t ; n = value` from the `[phi]` section.
    pub phi: Vec<(Path, Path, FieldValue)>,
    pub admissible_m: Option<usize>,
}

struct Section {
    name: String,
    name_line: usize,
    entries: Vec<(usize, String)>,
}

fn split_sections(text: &str) -> ParseResult<Vec<Section>> {
    let mut sections: Vec<Section> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let name = rest.strip_suffix(']').ok_or_else(|| {
                diag(
                    DiagCode::BadSyntax,
                    line_no,
                    1,
                    "section header must end with `]`",
                )
            })?;
            sections.push(Section {
                name: name.trim().to_string(),
                name_line: line_no,
                entries: Vec::new(),
            });
        } else {
            match sections.last_mut() {
                Some(s) => s.entries.push((line_no, line.to_string())),
                None => {
                    return Err(diag(
                        DiagCode::BadSyntax,
                        line_no,
                        1,
                        "content before the first section header",
                    ))
                }
            }
        }
    }
    Ok(sections)
}

fn key_value(line: &str) -> Option<(&str, &str)> {
    let (k, v) = line.split_once('=')?;
    Some((k.trim(), v.trim()))
}

fn parse_rational(text: &str, line: usize) -> ParseResult<FieldValue> {
    let make_int = |s: &str| s.parse::<BigInt>().ok();
    let value = match text.split_once('/') {
        Some((n, d)) => {
            let n = make_int(n.trim());
            let d = make_int(d.trim());
            match (n, d) {
                (Some(n), Some(d)) if d != BigInt::ZERO => Some(BigRational::new(n, d)),
                _ => None,
            }
        }
        None => make_int(text.trim()).map(BigRational::from_integer),
    };
    value.map(FieldValue::Rational).ok_or_else(|| {
        diag(
            DiagCode::BadValue,
            line,
            1,
            format!("expected a rational, got `{text}`"),
        )
    })
}

fn name_is_numeric(name: &str) -> bool {
    name.chars().next().is_some_and(|c| c.is_ascii_digit())
}

fn check_name(name: &str, what: &str, numeric_ok: bool, line: usize) -> ParseResult<()> {
    if name.is_empty() {
        return Err(diag(
            DiagCode::BadSyntax,
            line,
            1,
            format!("empty {what} name"),
        ));
    }
    let bad = name
        .chars()
        .any(|c| c.is_whitespace() || "*;=/:#[]|,->".contains(c));
    if bad {
        return Err(diag(
            DiagCode::BadSyntax,
            line,
            1,
            format!("{what} name `{name}` contains a reserved character"),
        ));
    }
    if !numeric_ok && name_is_numeric(name) {
        return Err(diag(
            DiagCode::BadSyntax,
            line,
            1,
            format!("{what} name `{name}` must not start with a digit"),
        ));
    }
    Ok(())
}

fn parse_quiver(section: &Section) -> ParseResult<Quiver> {
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut seen_vertices = false;
    for (line_no, line) in &section.entries {
        if let Some((key, value)) = key_value(line) {
            if key == "vertices" {
                if seen_vertices {
                    return Err(diag(
                        DiagCode::DuplicateName,
                        *line_no,
                        1,
                        "duplicate vertices line",
                    ));
                }
                seen_vertices = true;
                for name in value.split_whitespace() {
                    check_name(name, "vertex", true, *line_no)?;
                    vertices.push(name.to_string());
                }
                continue;
            }
        }
        if let Some((name, endpoints)) = line.split_once(':') {
            let name = name.trim();
            check_name(name, "arrow", false, *line_no)?;
            let (src, dst) = endpoints.split_once("->").ok_or_else(|| {
                diag(
                    DiagCode::BadSyntax,
                    *line_no,
                    1,
                    "arrow line must read `name: src -> dst`",
                )
            })?;
            arrows.push((
                name.to_string(),
                src.trim().to_string(),
                dst.trim().to_string(),
            ));
            continue;
        }
        return Err(diag(
            DiagCode::BadSyntax,
            *line_no,
            1,
            format!("cannot parse quiver line `{line}`"),
        ));
    }
    if !seen_vertices {
        return Err(diag(
            DiagCode::MissingSection,
            section.name_line,
            1,
            "quiver section needs a `vertices = ...` line",
        ));
    }
    Quiver::new(vertices, arrows).map_err(|e| {
        let code = match e {
            quivar::Error::DuplicateVertex(_)
            | quivar::Error::DuplicateArrow(_)
            | quivar::Error::ArrowVertexClash(_) => DiagCode::DuplicateName,
            quivar::Error::UnknownVertex(_) => DiagCode::UnknownVertex,
            _ => DiagCode::BadValue,
        };
        diag(code, section.name_line, 1, e.to_string())
    })
}

fn parse_order(quiver: &Quiver, section: Option<&Section>) -> ParseResult<PathOrder> {
    let Some(section) = section else {
        return Ok(PathOrder::declaration_order(
            quiver,
            OrderKind::LengthLeftLex,
        ));
    };
    let mut kind = OrderKind::LengthLeftLex;
    let mut arrows: Option<(usize, Vec<String>)> = None;
    let mut vertices: Option<(usize, Vec<String>)> = None;
    for (line_no, line) in &section.entries {
        let Some((key, value)) = key_value(line) else {
            return Err(diag(
                DiagCode::BadSyntax,
                *line_no,
                1,
                "expected `key = value`",
            ));
        };
        match key {
            "kind" => {
                kind = match value {
                    "length-lex" | "length-lexicographic" => OrderKind::LengthLex,
                    "length-left-lex" | "length-left-lexicographic" => OrderKind::LengthLeftLex,
                    other => {
                        return Err(diag(
                            DiagCode::BadValue,
                            *line_no,
                            1,
                            format!(
                            "unknown order kind `{other}` (supported: length-lex, length-left-lex)"
                        ),
                        ))
                    }
                };
            }
            "arrows" => {
                arrows = Some((
                    *line_no,
                    value.split_whitespace().map(str::to_string).collect(),
                ));
            }
            "vertices" => {
                vertices = Some((
                    *line_no,
                    value.split_whitespace().map(str::to_string).collect(),
                ));
            }
            other => {
                return Err(diag(
                    DiagCode::BadSyntax,
                    *line_no,
                    1,
                    format!("unknown order key `{other}`"),
                ))
            }
        }
    }
    let default_arrows: Vec<String> = quiver
        .arrow_ids()
        .map(|a| quiver.arrow_name(a).to_string())
        .collect();
    let default_vertices: Vec<String> = quiver
        .vertex_ids()
        .map(|v| quiver.vertex_name(v).to_string())
        .collect();
    let (arrow_line, arrow_names) = arrows.unwrap_or((section.name_line, default_arrows));
    let (vertex_line, vertex_names) = vertices.unwrap_or((section.name_line, default_vertices));
    let arrow_refs: Vec<&str> = arrow_names.iter().map(String::as_str).collect();
    let vertex_refs: Vec<&str> = vertex_names.iter().map(String::as_str).collect();
    PathOrder::new(quiver, kind, &arrow_refs, &vertex_refs).map_err(|e| {
        let (code, line) = match e {
            quivar::Error::UnknownArrow(_) => (DiagCode::UnknownArrow, arrow_line),
            quivar::Error::UnknownVertex(_) => (DiagCode::UnknownVertex, vertex_line),
            _ => (DiagCode::BadValue, arrow_line.min(vertex_line)),
        };
        diag(code, line, 1, e.to_string())
    })
}

fn parse_weights(quiver: &Quiver, section: &Section) -> ParseResult<WeightFunction> {
    let mut group = WeightGroup::Integers;
    let mut assignments: Vec<(usize, String, i64)> = Vec::new();
    for (line_no, line) in &section.entries {
        let Some((key, value)) = key_value(line) else {
            return Err(diag(
                DiagCode::BadSyntax,
                *line_no,
                1,
                "expected `key = value`",
            ));
        };
        if key == "group" {
            group = if value == "Z" {
                WeightGroup::Integers
            } else if let Some(m) = value.strip_prefix("Z/") {
                let m: u64 = m.trim().parse().map_err(|_| {
                    diag(
                        DiagCode::BadValue,
                        *line_no,
                        1,
                        format!("bad modulus `{value}`"),
                    )
                })?;
                if m < 2 {
                    return Err(diag(
                        DiagCode::BadValue,
                        *line_no,
                        1,
                        "modulus must be >= 2",
                    ));
                }
                WeightGroup::Cyclic(m)
            } else {
                return Err(diag(
                    DiagCode::BadValue,
                    *line_no,
                    1,
                    format!("unknown weight group `{value}` (supported: Z, Z/m)"),
                ));
            };
        } else {
            let w: i64 = value.parse().map_err(|_| {
                diag(
                    DiagCode::BadValue,
                    *line_no,
                    1,
                    format!("bad weight `{value}`"),
                )
            })?;
            assignments.push((*line_no, key.to_string(), w));
        }
    }
    let mut weights = WeightFunction::new(quiver, group);
    for (line_no, name, w) in assignments {
        let arrow = quiver
            .arrow_id(&name)
            .map_err(|e| diag(DiagCode::UnknownArrow, line_no, 1, e.to_string()))?;
        weights.assign(arrow, w);
    }
    Ok(weights)
}

fn parse_path(quiver: &Quiver, text: &str, line: usize) -> ParseResult<Path> {
    quiver.parse_path(text).map_err(|e| {
        let code = match e {
            quivar::Error::UnknownArrow(_) => DiagCode::UnknownArrow,
            quivar::Error::UnknownVertex(_) => DiagCode::UnknownVertex,
            quivar::Error::NonComposable(..) => DiagCode::NonComposingPath,
            _ => DiagCode::BadSyntax,
        };
        diag(code, line, 1, e.to_string())
    })
}

/// Parse one element in the text form `±c1*p1 ± c2*p2 ...`.
pub fn parse_element(quiver: &Quiver, text: &str, line: usize) -> ParseResult<Element<FieldValue>> {
    // split into signed chunks on top-level + and -
    let mut terms: Vec<(i8, String)> = Vec::new();
    let mut sign: i8 = 1;
    let mut current = String::new();
    let mut started = false;
    for c in text.chars() {
        match c {
            '+' | '-' if started && !current.trim().is_empty() => {
                terms.push((sign, current.trim().to_string()));
                sign = if c == '-' { -1 } else { 1 };
                current = String::new();
            }
            '-' if !started || current.trim().is_empty() => {
                sign = -sign;
                started = true;
            }
            '+' if !started || current.trim().is_empty() => {
                started = true;
            }
            _ => {
                if !c.is_whitespace() {
                    started = true;
                }
                current.push(c);
            }
        }
    }
    if !current.trim().is_empty() {
        terms.push((sign, current.trim().to_string()));
    }
    if terms.is_empty() {
        return Err(diag(DiagCode::BadSyntax, line, 1, "empty element"));
    }
    let mut element = Element::zero();
    for (sgn, chunk) in terms {
        let mut coeff = FieldValue::one_rational();
        let mut path_text = chunk.as_str();
        if let Some((head, rest)) = chunk.split_once('*') {
            let head = head.trim();
            if name_is_numeric(head) {
                coeff = parse_rational(head, line)?;
                path_text = rest;
            }
        } else if name_is_numeric(chunk.trim()) && !chunk.trim().starts_with("e_") {
            return Err(diag(
                DiagCode::BadSyntax,
                line,
                1,
                format!("constant term `{chunk}` needs a vertex, e.g. `{chunk}*e_v`"),
            ));
        }
        let path = parse_path(quiver, path_text.trim(), line)?;
        if sgn < 0 {
            coeff = quivar::coefficients::Coefficient::neg(&coeff);
        }
        element.add_term(path, coeff);
    }
    Ok(element)
}

/// Parse and validate a complete problem file.
pub fn parse(text: &str) -> ParseResult<ProblemFile> {
    let sections = split_sections(text)?;
    let known = [
        "quiver",
        "order",
        "weights",
        "tips",
        "generators",
        "phi",
        "admissible",
    ];
    for s in &sections {
        if !known.contains(&s.name.as_str()) {
            return Err(diag(
                DiagCode::UnknownSection,
                s.name_line,
                1,
                format!("unknown section `[{}]`", s.name),
            ));
        }
        if sections.iter().filter(|t| t.name == s.name).count() > 1 {
            return Err(diag(
                DiagCode::DuplicateName,
                s.name_line,
                1,
                format!("section `[{}]` appears more than once", s.name),
            ));
        }
    }
    let find = |name: &str| sections.iter().find(|s| s.name == name);

    let quiver_section = find("quiver").ok_or_else(|| {
        diag(
            DiagCode::MissingSection,
            1,
            1,
            "missing required `[quiver]` section",
        )
    })?;
    let quiver = parse_quiver(quiver_section)?;
    let order = parse_order(&quiver, find("order"))?;
    let weights = match find("weights") {
        Some(s) => Some(parse_weights(&quiver, s)?),
        None => None,
    };

    let tips_section = find("tips");
    let gens_section = find("generators");
    let input = match (tips_section, gens_section) {
        (Some(t), None) => {
            let mut tips = Vec::new();
            for (line_no, line) in &t.entries {
                tips.push(parse_path(&quiver, line, *line_no)?);
            }
            IdealInput::Tips(tips)
        }
        (None, Some(g)) => {
            let mut gens = Vec::new();
            for (line_no, line) in &g.entries {
                gens.push(parse_element(&quiver, line, *line_no)?);
            }
            IdealInput::Generators(gens)
        }
        (Some(t), Some(_)) => {
            return Err(diag(
                DiagCode::ConflictingSections,
                t.name_line,
                1,
                "exactly one of `[tips]` and `[generators]` may be present",
            ))
        }
        (None, None) => {
            return Err(diag(
                DiagCode::MissingSection,
                quiver_section.name_line,
                1,
                "one of `[tips]` or `[generators]` is required",
            ))
        }
    };

    let mut phi = Vec::new();
    if let Some(s) = find("phi") {
        for (line_no, line) in &s.entries {
            let (lhs, value) = line.split_once('=').ok_or_else(|| {
                diag(
                    DiagCode::BadSyntax,
                    *line_no,
                    1,
                    "phi line must read `t ; n = value`",
                )
            })?;
            let (t, n) = lhs.split_once(';').ok_or_else(|| {
                diag(
                    DiagCode::BadSyntax,
                    *line_no,
                    1,
                    "phi line must read `t ; n = value`",
                )
            })?;
            let t = parse_path(&quiver, t.trim(), *line_no)?;
            let n = parse_path(&quiver, n.trim(), *line_no)?;
            let value = parse_rational(value.trim(), *line_no)?;
            phi.push((t, n, value));
        }
    }

    let mut admissible_m = None;
    if let Some(s) = find("admissible") {
        for (line_no, line) in &s.entries {
            match key_value(line) {
                Some(("m", v)) => {
                    admissible_m = Some(v.parse::<usize>().map_err(|_| {
                        diag(
                            DiagCode::BadValue,
                            *line_no,
                            1,
                            format!("bad exponent `{v}`"),
                        )
                    })?);
                }
                _ => {
                    return Err(diag(
                        DiagCode::BadSyntax,
                        *line_no,
                        1,
                        "admissible section supports only `m = <nat>`",
                    ))
                }
            }
        }
    }

    Ok(ProblemFile {
        quiver,
        order,
        weights,
        input,
        phi,
        admissible_m,
    })
}

/// Canonical text rendering; `parse(print(p)) == p`.
#[cfg_attr(not(test), allow(dead_code))]
pub fn print(p: &ProblemFile) -> String {
    let mut out = String::new();
    out.push_str("[quiver]\n");
    let vertices: Vec<&str> = p
        .quiver
        .vertex_ids()
        .map(|v| p.quiver.vertex_name(v))
        .collect();
    out.push_str(&format!("vertices = {}\n", vertices.join(" ")));
    for a in p.quiver.arrow_ids() {
        let arrow = p.quiver.arrow(a);
        out.push_str(&format!(
            "{}: {} -> {}\n",
            arrow.name,
            p.quiver.vertex_name(arrow.source),
            p.quiver.vertex_name(arrow.target)
        ));
    }
    out.push_str("\n[order]\n");
    out.push_str(&format!("kind = {}\n", p.order.kind()));
    out.push_str(&format!(
        "arrows = {}\n",
        p.order.arrow_precedence(&p.quiver).join(" ")
    ));
    out.push_str(&format!(
        "vertices = {}\n",
        p.order.vertex_precedence(&p.quiver).join(" ")
    ));
    if let Some(w) = &p.weights {
        out.push_str("\n[weights]\n");
        let group = match w.group() {
            WeightGroup::Integers => "Z".to_string(),
            WeightGroup::Cyclic(m) => format!("Z/{m}"),
        };
        out.push_str(&format!("group = {group}\n"));
        for a in p.quiver.arrow_ids() {
            if let Some(x) = w.assignment(a) {
                out.push_str(&format!("{} = {}\n", p.quiver.arrow_name(a), x));
            }
        }
    }
    match &p.input {
        IdealInput::Tips(tips) => {
            out.push_str("\n[tips]\n");
            for t in tips {
                out.push_str(&format!("{}\n", t.display(&p.quiver)));
            }
        }
        IdealInput::Generators(gens) => {
            out.push_str("\n[generators]\n");
            for g in gens {
                out.push_str(&format!("{}\n", g.display_with(&p.quiver, &p.order)));
            }
        }
    }
    if !p.phi.is_empty() {
        out.push_str("\n[phi]\n");
        for (t, n, value) in &p.phi {
            out.push_str(&format!(
                "{} ; {} = {}\n",
                t.display(&p.quiver),
                n.display(&p.quiver),
                value
            ));
        }
    }
    if let Some(m) = p.admissible_m {
        out.push_str(&format!("\n[admissible]\nm = {m}\n"));
    }
    out
}
