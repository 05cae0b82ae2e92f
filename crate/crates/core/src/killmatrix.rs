//! Verdict tables: every property of a family against every variant.
//!
//! A family's property set counts as a complete specification (for the
//! purposes of this tool) when it kills every shipped mutant somewhere in
//! the exhaustive domain.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::Family;
use crate::error::UsageError;
use crate::prop::{Outcome, Property};
use crate::runner::{run_property, Status, TestParams};
use crate::value::{Value, ValueKind};

/// Values for 32-bit integer slots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IntDomain {
    Range(i32, i32),
    Values(Vec<i32>),
}

impl IntDomain {
    fn values(&self) -> Vec<i32> {
        match self {
            IntDomain::Range(lo, hi) => (*lo..=*hi).collect(),
            IntDomain::Values(v) => v.clone(),
        }
    }
}

/// Finite per-kind domains for exhaustive evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustiveDomain {
    pub ints: IntDomain,
    pub list_values: Vec<i32>,
    pub max_list_len: usize,
    pub bigint_lo: i64,
    pub bigint_hi: i64,
    pub max_bits_len: usize,
}

impl Default for ExhaustiveDomain {
    fn default() -> Self {
        ExhaustiveDomain {
            ints: IntDomain::Range(-60, 60),
            list_values: vec![0, 7, 42],
            max_list_len: 3,
            bigint_lo: 0,
            bigint_hi: 64,
            max_bits_len: 6,
        }
    }
}

/// All lists up to `max_len` over `alphabet`: shorter first, then in
/// odometer order with the head most significant.
fn lists_over<T: Clone>(alphabet: &[T], max_len: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<T>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for prefix in &layer {
            for a in alphabet {
                let mut l = prefix.clone();
                l.push(a.clone());
                next.push(l);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

impl ExhaustiveDomain {
    pub fn validate(&self) -> Result<(), UsageError> {
        if let IntDomain::Range(lo, hi) = self.ints {
            if lo > hi {
                return Err(UsageError::InvalidDomain(format!("int range {lo}..{hi} is empty")));
            }
        }
        if let IntDomain::Values(v) = &self.ints {
            if v.is_empty() {
                return Err(UsageError::InvalidDomain("int value set is empty".into()));
            }
        }
        if self.bigint_lo > self.bigint_hi {
            return Err(UsageError::InvalidDomain("bigint range is empty".into()));
        }
        if self.list_values.is_empty() && self.max_list_len > 0 {
            return Err(UsageError::InvalidDomain("list value set is empty".into()));
        }
        Ok(())
    }

    /// Enumeration of one slot kind, in declared order.
    pub fn values(&self, kind: ValueKind) -> Vec<Value> {
        match kind {
            ValueKind::Int => self.ints.values().into_iter().map(Value::Int).collect(),
            ValueKind::BigInt => (self.bigint_lo..=self.bigint_hi)
                .map(|n| Value::BigInt(BigInt::from(n)))
                .collect(),
            ValueKind::Bool => vec![Value::Bool(false), Value::Bool(true)],
            ValueKind::IntList => lists_over(&self.list_values, self.max_list_len)
                .into_iter()
                .map(Value::IntList)
                .collect(),
            ValueKind::BoolList => lists_over(&[false, true], self.max_bits_len)
                .into_iter()
                .map(Value::BoolList)
                .collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Mode {
    Random(TestParams),
    Exhaustive(ExhaustiveDomain),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cell {
    Pass,
    Fail,
    /// A recursion or iteration limit was hit; distinct from a falsification.
    Resource,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cell::Pass => "Pass",
            Cell::Fail => "Fail",
            Cell::Resource => "Resource",
        })
    }
}

/// Rows are variants, columns are properties in registration order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KillMatrix {
    pub family: String,
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<ExhaustiveDomain>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_success: Option<usize>,
    pub variants: Vec<String>,
    pub properties: Vec<String>,
    pub cells: Vec<Vec<Cell>>,
}

impl KillMatrix {
    pub fn cell(&self, variant: &str, property: &str) -> Option<Cell> {
        let r = self.variants.iter().position(|v| v == variant)?;
        let c = self.properties.iter().position(|p| p == property)?;
        Some(self.cells[r][c])
    }

    /// Properties with the given verdict for `variant`.
    pub fn with_verdict(&self, variant: &str, verdict: Cell) -> Vec<&str> {
        let Some(r) = self.variants.iter().position(|v| v == variant) else {
            return Vec::new();
        };
        self.properties
            .iter()
            .zip(&self.cells[r])
            .filter(|(_, c)| **c == verdict)
            .map(|(p, _)| p.as_str())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("matrix serializes")
    }

    pub fn from_json(doc: &str) -> Result<KillMatrix, UsageError> {
        let m: KillMatrix =
            serde_json::from_str(doc).map_err(|e| UsageError::InvalidDocument(e.to_string()))?;
        let rows_ok = m.cells.len() == m.variants.len()
            && m.cells.iter().all(|row| row.len() == m.properties.len());
        if !rows_ok {
            return Err(UsageError::InvalidDocument("cell table does not match headers".into()));
        }
        Ok(m)
    }

    /// Aligned table, one line per property, one column per variant.
    pub fn render_text(&self) -> String {
        let mut out = format!("family: {}  mode: {}", self.family, self.mode);
        if let Some(d) = &self.domain {
            let ints = match &d.ints {
                IntDomain::Range(lo, hi) => format!("{lo}..{hi}"),
                IntDomain::Values(v) => format!("{v:?}"),
            };
            out.push_str(&format!(
                "  ints: {ints}  lists: {:?} len<={}  bigints: {}..{}  bits len<={}",
                d.list_values, d.max_list_len, d.bigint_lo, d.bigint_hi, d.max_bits_len
            ));
        }
        if let Some(seed) = self.seed {
            out.push_str(&format!("  seed: {seed}"));
        }
        out.push('\n');
        let name_width = self.properties.iter().map(String::len).max().unwrap_or(0).max(8);
        let widths: Vec<usize> = self.variants.iter().map(|v| v.len().max(8)).collect();
        out.push_str(&format!("{:<name_width$}", "property"));
        for (v, w) in self.variants.iter().zip(&widths) {
            out.push_str(&format!("  {v:<w$}"));
        }
        let trimmed = out.trim_end().len();
        out.truncate(trimmed);
        out.push('\n');
        for (c, p) in self.properties.iter().enumerate() {
            out.push_str(&format!("{p:<name_width$}"));
            for (r, w) in widths.iter().enumerate() {
                out.push_str(&format!("  {:<w$}", self.cells[r][c].to_string()));
            }
            let trimmed = out.trim_end().len();
            out.truncate(trimmed);
            out.push('\n');
        }
        out
    }
}

/// Exhaustive verdict: Fail on the first False or non-resource Error in
/// enumeration order; Resource if only resource errors occurred.
pub fn exhaustive_cell(p: &Property, domain: &ExhaustiveDomain) -> Cell {
    let columns: Vec<Vec<Value>> = p.slot_kinds().into_iter().map(|k| domain.values(k)).collect();
    if columns.iter().any(Vec::is_empty) {
        return Cell::Pass;
    }
    let mut idx = vec![0usize; columns.len()];
    let mut args: Vec<Value> = columns.iter().map(|c| c[0].clone()).collect();
    let mut resource = false;
    loop {
        match p.check(&args) {
            Outcome::False => return Cell::Fail,
            Outcome::Error(e) if !e.is_resource() => return Cell::Fail,
            Outcome::Error(_) => resource = true,
            Outcome::True | Outcome::Discard => {}
        }
        // Odometer: last slot varies fastest.
        let mut slot = columns.len();
        loop {
            if slot == 0 {
                return if resource { Cell::Resource } else { Cell::Pass };
            }
            slot -= 1;
            idx[slot] += 1;
            if idx[slot] < columns[slot].len() {
                args[slot] = columns[slot][idx[slot]].clone();
                break;
            }
            idx[slot] = 0;
            args[slot] = columns[slot][0].clone();
        }
    }
}

pub fn random_cell(suite: &str, p: &Property, params: &TestParams) -> Cell {
    match run_property(suite, p, params).status {
        Status::Falsified { .. } => Cell::Fail,
        Status::Error { resource: true, .. } => Cell::Resource,
        Status::Error { .. } => Cell::Fail,
        Status::Proved | Status::Passed(_) | Status::GaveUp { .. } => Cell::Pass,
    }
}

/// Evaluates every (variant, property) pair of `family`.
pub fn run_matrix(
    family: Family,
    variants: &[&str],
    mode: &Mode,
    native_recursion: bool,
) -> Result<KillMatrix, UsageError> {
    if variants.is_empty() {
        return Err(UsageError::NoVariants);
    }
    if let Mode::Exhaustive(d) = mode {
        d.validate()?;
    }
    let suites = variants
        .iter()
        .map(|v| family.bind(v, native_recursion).map(|b| family.suite(&b)))
        .collect::<Result<Vec<_>, _>>()?;
    let properties: Vec<String> =
        suites[0].properties.iter().map(|p| p.name().to_owned()).collect();

    let jobs: Vec<(usize, usize)> = (0..suites.len())
        .flat_map(|r| (0..properties.len()).map(move |c| (r, c)))
        .collect();
    let verdicts: Vec<Cell> = jobs
        .par_iter()
        .map(|&(r, c)| {
            let p = &suites[r].properties[c];
            match mode {
                Mode::Exhaustive(d) => exhaustive_cell(p, d),
                Mode::Random(params) => random_cell(family.name(), p, params),
            }
        })
        .collect();
    let cells = verdicts.chunks(properties.len().max(1)).map(<[Cell]>::to_vec).collect();

    let (mode_name, domain, seed, min_success) = match mode {
        Mode::Exhaustive(d) => ("exhaustive", Some(d.clone()), None, None),
        Mode::Random(p) => ("random", None, Some(p.root_seed.state()), Some(p.min_success)),
    };
    Ok(KillMatrix {
        family: family.name().to_owned(),
        mode: mode_name.to_owned(),
        domain,
        seed,
        min_success,
        variants: variants.iter().map(|v| (*v).to_owned()).collect(),
        properties,
        cells,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellDiff {
    pub variant: String,
    pub property: String,
    pub expected: Cell,
    pub actual: Cell,
}

impl fmt::Display for CellDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} / {}: expected {}, got {}",
            self.variant, self.property, self.expected, self.actual
        )
    }
}

/// Cell-by-cell differences. Empty means an exact match. Headers must
/// agree exactly.
pub fn compare_matrix(actual: &KillMatrix, expected: &KillMatrix) -> Result<Vec<CellDiff>, UsageError> {
    if actual.variants != expected.variants {
        return Err(UsageError::DimensionMismatch(format!(
            "variants {:?} vs {:?}",
            actual.variants, expected.variants
        )));
    }
    if actual.properties != expected.properties {
        return Err(UsageError::DimensionMismatch(format!(
            "properties {:?} vs {:?}",
            actual.properties, expected.properties
        )));
    }
    let mut diffs = Vec::new();
    for (r, variant) in actual.variants.iter().enumerate() {
        for (c, property) in actual.properties.iter().enumerate() {
            let (a, e) = (actual.cells[r][c], expected.cells[r][c]);
            if a != e {
                diffs.push(CellDiff {
                    variant: variant.clone(),
                    property: property.clone(),
                    expected: e,
                    actual: a,
                });
            }
        }
    }
    Ok(diffs)
}

/// Checked-in expected verdicts under the default exhaustive domain,
/// produced by `scripts/expected_matrix.py`.
pub fn default_expected(family: Family) -> KillMatrix {
    let doc = match family {
        Family::Max => include_str!("../fixtures/expected/max.json"),
        Family::Sum => include_str!("../fixtures/expected/sum.json"),
        Family::Count => include_str!("../fixtures/expected/count.json"),
        Family::Codec => include_str!("../fixtures/expected/codec.json"),
        Family::CodecBij => include_str!("../fixtures/expected/codec_bij.json"),
    };
    KillMatrix::from_json(doc).expect("shipped fixture is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> KillMatrix {
        KillMatrix {
            family: "max".into(),
            mode: "exhaustive".into(),
            domain: None,
            seed: None,
            min_success: None,
            variants: vec!["a".into(), "b".into()],
            properties: vec!["p".into(), "q".into()],
            cells: vec![vec![Cell::Pass, Cell::Pass], vec![Cell::Fail, Cell::Resource]],
        }
    }

    #[test]
    fn list_enumeration_order() {
        let l = lists_over(&[0, 7], 2);
        assert_eq!(l, vec![vec![], vec![0], vec![7], vec![0, 0], vec![0, 7], vec![7, 0], vec![7, 7]]);
        let d = ExhaustiveDomain::default();
        assert_eq!(d.values(ValueKind::IntList).len(), 40);
        assert_eq!(d.values(ValueKind::BoolList).len(), 127);
        assert_eq!(d.values(ValueKind::Int).len(), 121);
        assert_eq!(d.values(ValueKind::BigInt).len(), 65);
    }

    #[test]
    fn compare_contract() {
        let m = tiny();
        assert!(compare_matrix(&m, &m).unwrap().is_empty());
        let mut flipped = m.clone();
        flipped.cells[0][1] = Cell::Fail;
        let diffs = compare_matrix(&flipped, &m).unwrap();
        assert_eq!(diffs.len(), 1);
        assert_eq!(diffs[0].to_string(), "a / q: expected Pass, got Fail");
        let mut narrow = m.clone();
        narrow.properties.pop();
        assert!(matches!(compare_matrix(&narrow, &m), Err(UsageError::DimensionMismatch(_))));
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let m = tiny();
        assert_eq!(KillMatrix::from_json(&m.to_json()).unwrap(), m);
        let mut bad = m.clone();
        bad.cells.pop();
        assert!(KillMatrix::from_json(&bad.to_json()).is_err());
    }

    #[test]
    fn empty_variant_list_is_rejected() {
        let mode = Mode::Exhaustive(ExhaustiveDomain::default());
        assert_eq!(run_matrix(Family::Max, &[], &mode, false), Err(UsageError::NoVariants));
    }

    #[test]
    fn text_table_is_aligned() {
        let text = tiny().render_text();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "property  a         b");
        assert_eq!(lines[2], "p         Pass      Fail");
        assert_eq!(lines[3], "q         Pass      Resource");
    }
}
