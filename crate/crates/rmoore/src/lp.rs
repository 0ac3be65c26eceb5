//! LP-format export and solution-file import.
//!
//! The dialect is the common denominator accepted by the major solvers:
//! `Minimize` / `Subject To` / `Bounds` / `Binary` / `End`, integer
//! coefficients, no ranges, no semicolons, lines capped at 255 characters
//! with continuation on following lines. The objective constant is carried
//! by a dedicated variable `const_one` fixed to 1, because the dialect
//! forbids bare constants in objectives.
//!
//! Solution files are whitespace-separated `name value` pairs, one per line,
//! with `#` comments; values are rounded to binary at tolerance 1e-6.
//!
//! The parser reads back exactly this dialect. It exists so round-trips can
//! be tested; it is not a general LP reader.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{Cmp, IpModel, VarName};

/// Name of the auxiliary variable carrying the objective constant.
pub const CONST_ONE: &str = "const_one";

const MAX_LINE: usize = 255;
const BINARY_TOLERANCE: f64 = 1e-6;

/// Structured form of an LP file in this crate's dialect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpDocument {
    /// Objective terms in emission order; includes `const_one`.
    pub objective: Vec<(String, i64)>,
    pub rows: Vec<LpRow>,
    /// Fixed variables in emission order.
    pub bounds: Vec<(String, u8)>,
    pub binaries: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpRow {
    pub name: String,
    pub terms: Vec<(String, i64)>,
    pub cmp: Cmp,
    pub rhs: i64,
}

/// Serializes a model to the structured LP form.
pub fn write_lp(model: &IpModel) -> LpDocument {
    let mut objective = Vec::with_capacity(model.objective.terms.len() + 1);
    objective.push((CONST_ONE.to_string(), model.objective.constant));
    for &(v, c) in &model.objective.terms {
        objective.push((v.to_string(), c));
    }

    let rows = model
        .constraints
        .iter()
        .map(|row| LpRow {
            name: row.name(),
            terms: row.terms.iter().map(|&(v, c)| (v.to_string(), c)).collect(),
            cmp: row.cmp,
            rhs: row.rhs,
        })
        .collect();

    let mut bounds: Vec<(String, u8)> =
        model.fixings.iter().map(|(&v, &b)| (v.to_string(), b)).collect();
    bounds.push((CONST_ONE.to_string(), 1));

    let mut binaries = Vec::with_capacity(model.var_count() as usize + 1);
    binaries.push(CONST_ONE.to_string());
    binaries.extend(model.variables().map(|v| v.to_string()));

    LpDocument { objective, rows, bounds, binaries }
}

fn term_token(first: bool, name: &str, coef: i64) -> String {
    let mag = coef.unsigned_abs();
    match (first, coef < 0, mag) {
        (true, false, 1) => name.to_string(),
        (true, false, _) => format!("{mag} {name}"),
        (true, true, 1) => format!("- {name}"),
        (true, true, _) => format!("- {mag} {name}"),
        (false, false, 1) => format!("+ {name}"),
        (false, false, _) => format!("+ {mag} {name}"),
        (false, true, 1) => format!("- {name}"),
        (false, true, _) => format!("- {mag} {name}"),
    }
}

/// Appends `prefix` followed by space-separated tokens, wrapping before the
/// 255-column limit; continuation lines start with a single space.
fn push_wrapped<'a>(out: &mut String, prefix: &str, tokens: impl Iterator<Item = std::borrow::Cow<'a, str>>) {
    out.push_str(prefix);
    let mut col = prefix.len();
    for tok in tokens {
        if col + 1 + tok.len() > MAX_LINE {
            out.push_str("\n ");
            col = 1;
        }
        out.push(' ');
        out.push_str(&tok);
        col += 1 + tok.len();
    }
    out.push('\n');
}

impl LpDocument {
    pub fn to_text(&self) -> String {
        use std::borrow::Cow;
        let mut out = String::new();
        out.push_str("Minimize\n");
        push_wrapped(
            &mut out,
            " obj:",
            self.objective
                .iter()
                .enumerate()
                .map(|(i, (name, coef))| Cow::Owned(term_token(i == 0, name, *coef))),
        );
        out.push_str("Subject To\n");
        for row in &self.rows {
            let prefix = format!(" {}:", row.name);
            let tokens = row
                .terms
                .iter()
                .enumerate()
                .map(|(i, (name, coef))| Cow::Owned(term_token(i == 0, name, *coef)))
                .chain(std::iter::once(Cow::Owned(format!("{} {}", row.cmp, row.rhs))));
            push_wrapped(&mut out, &prefix, tokens);
        }
        out.push_str("Bounds\n");
        for (name, value) in &self.bounds {
            out.push(' ');
            out.push_str(name);
            out.push_str(" = ");
            out.push_str(&value.to_string());
            out.push('\n');
        }
        out.push_str("Binary\n");
        push_wrapped(&mut out, "", self.binaries.iter().map(|n| Cow::Borrowed(n.as_str())));
        out.push_str("End\n");
        out
    }
}

/// Parses text produced by [`LpDocument::to_text`].
pub fn parse_lp(text: &str) -> Result<LpDocument> {
    #[derive(PartialEq)]
    enum Section {
        Start,
        Objective,
        Rows,
        Bounds,
        Binary,
        Done,
    }

    let mut section = Section::Start;
    let mut objective_text = String::new();
    let mut row_texts: Vec<String> = Vec::new();
    let mut bounds = Vec::new();
    let mut binaries = Vec::new();

    for raw in text.lines() {
        let line = raw.trim_end();
        if line.trim().is_empty() {
            continue;
        }
        match line.trim() {
            "Minimize" if section == Section::Start => {
                section = Section::Objective;
                continue;
            }
            "Subject To" if section == Section::Objective => {
                section = Section::Rows;
                continue;
            }
            "Bounds" if section == Section::Rows => {
                section = Section::Bounds;
                continue;
            }
            "Binary" if section == Section::Bounds => {
                section = Section::Binary;
                continue;
            }
            "End" if section == Section::Binary => {
                section = Section::Done;
                continue;
            }
            _ => {}
        }
        match section {
            Section::Start | Section::Done => {
                return Err(Error::Parse(format!("unexpected line `{line}`")));
            }
            Section::Objective => {
                objective_text.push(' ');
                objective_text.push_str(line.trim());
            }
            Section::Rows => {
                // New rows carry a `name:` label; continuation lines do not.
                if line.contains(':') {
                    row_texts.push(line.trim().to_string());
                } else {
                    match row_texts.last_mut() {
                        Some(last) => {
                            last.push(' ');
                            last.push_str(line.trim());
                        }
                        None => return Err(Error::Parse("row continuation before any row".into())),
                    }
                }
            }
            Section::Bounds => {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 3 || parts[1] != "=" {
                    return Err(Error::Parse(format!("bad bounds line `{line}`")));
                }
                let value: u8 = parts[2]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad bound value in `{line}`")))?;
                bounds.push((parts[0].to_string(), value));
            }
            Section::Binary => {
                binaries.extend(line.split_whitespace().map(str::to_string));
            }
        }
    }
    if section != Section::Done {
        return Err(Error::Parse("missing End marker".into()));
    }

    let objective_body = objective_text
        .trim()
        .strip_prefix("obj:")
        .ok_or_else(|| Error::Parse("objective must be labeled `obj:`".into()))?;
    let (objective, tail) = parse_expression(objective_body)?;
    if !tail.is_empty() {
        return Err(Error::Parse("trailing tokens after objective".into()));
    }

    let mut rows = Vec::with_capacity(row_texts.len());
    for row_text in &row_texts {
        let (name, rest) = row_text
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("row without label: `{row_text}`")))?;
        let (terms, tail) = parse_expression(rest)?;
        let tail_tokens: Vec<&str> = tail.iter().map(String::as_str).collect();
        let (cmp, rhs) = match tail_tokens.as_slice() {
            ["<=", v] => (Cmp::Le, v),
            ["=", v] => (Cmp::Eq, v),
            [">=", v] => (Cmp::Ge, v),
            _ => return Err(Error::Parse(format!("bad row tail in `{row_text}`"))),
        };
        let rhs: i64 = rhs.parse().map_err(|_| Error::Parse(format!("bad rhs in `{row_text}`")))?;
        rows.push(LpRow { name: name.trim().to_string(), terms, cmp, rhs });
    }

    Ok(LpDocument { objective, rows, bounds, binaries })
}

/// Parses `[sign] [int] name` sequences; returns the terms and any trailing
/// tokens (used for the comparator and right-hand side).
fn parse_expression(text: &str) -> Result<(Vec<(String, i64)>, Vec<String>)> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let mut terms = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let tok = tokens[i];
        if tok == "<=" || tok == ">=" || tok == "=" {
            break;
        }
        let mut sign = 1i64;
        let mut t = tok;
        if t == "+" || t == "-" {
            sign = if t == "-" { -1 } else { 1 };
            i += 1;
            t = *tokens
                .get(i)
                .ok_or_else(|| Error::Parse("dangling sign in expression".into()))?;
        }
        let mut coef = 1i64;
        if let Ok(c) = t.parse::<i64>() {
            coef = c;
            i += 1;
            t = *tokens
                .get(i)
                .ok_or_else(|| Error::Parse("coefficient without variable".into()))?;
        }
        terms.push((t.to_string(), sign * coef));
        i += 1;
    }
    let tail = tokens[i..].iter().map(|s| s.to_string()).collect();
    Ok((terms, tail))
}

/// Parses a solver solution file into a model assignment.
///
/// Every `x`/`y` variable of the model must be present; `d`/`c`/`p` values
/// are accepted when present. `const_one` is accepted and must be 1.
pub fn parse_solution(text: &str, model: &IpModel) -> Result<BTreeMap<VarName, u8>> {
    let mut assignment: BTreeMap<VarName, u8> = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let (name, value) = match (it.next(), it.next(), it.next()) {
            (Some(n), Some(v), None) => (n, v),
            _ => {
                return Err(Error::Parse(format!(
                    "line {}: expected `name value`",
                    lineno + 1
                )))
            }
        };
        let value: f64 = value
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: bad value", lineno + 1)))?;
        let rounded = value.round();
        if (value - rounded).abs() > BINARY_TOLERANCE || !(rounded == 0.0 || rounded == 1.0) {
            return Err(Error::NonBinaryValue { name: name.to_string(), value });
        }
        let bit = rounded as u8;
        if name == CONST_ONE {
            if bit != 1 {
                return Err(Error::FixingViolated { name: name.to_string(), fixed: 1 });
            }
            continue;
        }
        let var: VarName = name.parse()?;
        if !model.declares(var) {
            return Err(Error::UnknownVariable(name.to_string()));
        }
        if assignment.insert(var, bit).is_some() {
            return Err(Error::Parse(format!("duplicate variable `{name}`")));
        }
    }
    model.check_fixings(&assignment)?;
    let n = model.n as u16;
    for i in 0..n {
        for j in 0..n {
            for v in [VarName::X(i, j), VarName::Y(i, j)] {
                if !assignment.contains_key(&v) {
                    return Err(Error::MissingVariable(v.to_string()));
                }
            }
        }
    }
    Ok(assignment)
}

/// Renders an assignment as a solution file (used by tests and examples).
pub fn solution_text(assignment: &BTreeMap<VarName, u8>) -> String {
    let mut out = String::new();
    for (v, bit) in assignment {
        out.push_str(&v.to_string());
        out.push(' ');
        out.push_str(&bit.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{assignment_from_graph, assignment_to_graph, build_model};
    use crate::moore::moore_tree;
    use crate::MixedGraph;

    #[test]
    fn document_declares_all_variables_plus_const_one() {
        let model = build_model(1, 1).unwrap();
        let doc = write_lp(&model);
        assert_eq!(doc.binaries.len(), 1621);
        assert_eq!(doc.binaries[0], CONST_ONE);
        assert_eq!(doc.rows.len(), model.constraints.len());
    }

    #[test]
    fn lines_respect_width_cap() {
        let model = build_model(1, 1).unwrap();
        let text = write_lp(&model).to_text();
        for line in text.lines() {
            assert!(line.len() <= 255, "line too long: {} chars", line.len());
        }
    }

    #[test]
    fn write_parse_write_is_byte_identical() {
        for (r, z) in [(1, 1), (0, 1)] {
            let model = build_model(r, z).unwrap();
            let doc = write_lp(&model);
            let text = doc.to_text();
            let reparsed = parse_lp(&text).unwrap();
            assert_eq!(reparsed, doc, "structured round-trip for ({r},{z})");
            assert_eq!(reparsed.to_text(), text, "byte round-trip for ({r},{z})");
        }
    }

    #[test]
    fn objective_carries_constant_first() {
        let model = build_model(1, 1).unwrap();
        let doc = write_lp(&model);
        assert_eq!(doc.objective[0], (CONST_ONE.to_string(), 66));
        assert_eq!(doc.objective.len(), 1 + 36);
    }

    #[test]
    fn parsed_rows_hold_at_a_feasible_assignment() {
        // All rows of the (0,1) model, read back from the LP text, hold at
        // the indicator assignment of the directed triangle, and the parsed
        // objective evaluates to its status.
        let model = build_model(0, 1).unwrap();
        let cycle = MixedGraph::new(3, vec![], vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let a = assignment_from_graph(&cycle);
        let doc = parse_lp(&write_lp(&model).to_text()).unwrap();
        for row in &doc.rows {
            let lhs: i64 = row
                .terms
                .iter()
                .map(|(name, coef)| {
                    let var: VarName = name.parse().unwrap();
                    coef * i64::from(a[&var])
                })
                .sum();
            let ok = match row.cmp {
                Cmp::Le => lhs <= row.rhs,
                Cmp::Eq => lhs == row.rhs,
                Cmp::Ge => lhs >= row.rhs,
            };
            assert!(ok, "row {} violated: {} {} {}", row.name, lhs, row.cmp, row.rhs);
        }
        let obj: i64 = doc
            .objective
            .iter()
            .map(|(name, coef)| {
                if name == CONST_ONE {
                    *coef
                } else {
                    let var: VarName = name.parse().unwrap();
                    coef * i64::from(a[&var])
                }
            })
            .sum();
        assert_eq!(obj, 9);
    }

    #[test]
    fn solution_roundtrip_reconstructs_tree() {
        let model = build_model(1, 1).unwrap();
        let tree = moore_tree(1, 1).unwrap();
        let full = assignment_from_graph(&tree.graph);
        let text = solution_text(&full);
        let parsed = parse_solution(&text, &model).unwrap();
        let g = assignment_to_graph(&model, &parsed).unwrap();
        assert_eq!(g, tree.graph);
    }

    #[test]
    fn solution_parser_rejects_bad_input() {
        let model = build_model(1, 1).unwrap();
        let tree = moore_tree(1, 1).unwrap();
        let full = assignment_from_graph(&tree.graph);

        let text = format!("{}x_0_1 1\n", solution_text(&full));
        assert!(matches!(
            parse_solution(&text, &model),
            Err(Error::Parse(msg)) if msg.contains("duplicate")
        ));

        assert!(matches!(
            parse_solution("x_0_1 0.5\n", &model),
            Err(Error::NonBinaryValue { value, .. }) if value == 0.5
        ));

        assert!(matches!(
            parse_solution("x_0_99 1\n", &model),
            Err(Error::UnknownVariable(_))
        ));

        // The tree fixes x_0_1 = 1.
        let mut broken = full.clone();
        broken.insert(VarName::X(0, 1), 0);
        broken.insert(VarName::X(1, 0), 0);
        assert!(matches!(
            parse_solution(&solution_text(&broken), &model),
            Err(Error::FixingViolated { .. })
        ));

        // Missing x/y variables are rejected.
        let mut partial = full.clone();
        partial.remove(&VarName::X(3, 4));
        assert!(matches!(
            parse_solution(&solution_text(&partial), &model),
            Err(Error::MissingVariable(_))
        ));

        // Comments and values within tolerance are fine.
        let text = solution_text(&full).replace("x_0_1 1", "x_0_1 0.9999999");
        let parsed = parse_solution(&format!("# comment\n{text}"), &model).unwrap();
        assert_eq!(parsed[&VarName::X(0, 1)], 1);
    }
}
