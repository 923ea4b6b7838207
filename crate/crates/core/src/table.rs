//! Graded dimension tables and their display formats.
//!
//! Grades are either polynomial degrees or dual weights. Both are shown as
//! Hilbert series in `t^{1/4}`: degree `d` becomes `t^{d/4}` and dual weight
//! `w` becomes `t^{-w/4}`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GradingLabel {
    PolynomialDegree,
    DualWeight,
}

/// Explicit marker for a table that stops short of the requested bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    /// Last grade that was fully computed, if any.
    pub completed_through: Option<i32>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDimensionTable {
    pub group: String,
    pub n: usize,
    pub grading: GradingLabel,
    /// Computed grades, zeros included.
    pub dims: BTreeMap<i32, u64>,
    /// Requested bound on the grade (degree tables only).
    pub bound: Option<i32>,
    pub truncated: Option<Truncation>,
}

impl GradedDimensionTable {
    pub fn new(group: impl Into<String>, n: usize, grading: GradingLabel) -> Self {
        Self { group: group.into(), n, grading, dims: BTreeMap::new(), bound: None, truncated: None }
    }

    pub fn with_bound(mut self, bound: i32) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn set(&mut self, grade: i32, dim: u64) {
        self.dims.insert(grade, dim);
    }

    pub fn add(&mut self, grade: i32, dim: u64) {
        *self.dims.entry(grade).or_insert(0) += dim;
    }

    pub fn get(&self, grade: i32) -> u64 {
        self.dims.get(&grade).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }

    /// Grades with nonzero dimension, ascending.
    pub fn support(&self) -> Vec<i32> {
        self.dims.iter().filter(|(_, &d)| d > 0).map(|(&g, _)| g).collect()
    }

    /// Exponent of `t^{1/4}` for a grade.
    pub fn quarter_exponent(&self, grade: i32) -> i32 {
        match self.grading {
            GradingLabel::PolynomialDegree => grade,
            GradingLabel::DualWeight => -grade,
        }
    }

    /// `(quarter exponent, dim)` pairs with nonzero dim, ascending.
    pub fn series_terms(&self) -> Vec<(i32, u64)> {
        let mut v: Vec<(i32, u64)> =
            self.dims.iter().filter(|(_, &d)| d > 0).map(|(&g, &d)| (self.quarter_exponent(g), d)).collect();
        v.sort();
        v
    }

    /// Plain series such as `1 + t + 3t^2`; `0` for the zero series.
    pub fn display_series(&self) -> String {
        format_series(&self.series_terms(), false)
    }

    /// Same series with LaTeX exponent braces.
    pub fn latex_series(&self) -> String {
        format_series(&self.series_terms(), true)
    }

    /// Dims keyed by decimal grade strings; dual weights descend so the
    /// display exponents ascend.
    pub fn dims_json(&self) -> Value {
        let mut m = Map::new();
        let items: Vec<(&i32, &u64)> = match self.grading {
            GradingLabel::PolynomialDegree => self.dims.iter().collect(),
            GradingLabel::DualWeight => self.dims.iter().rev().collect(),
        };
        for (g, d) in items {
            m.insert(g.to_string(), json!(d));
        }
        Value::Object(m)
    }

    /// `{"group", "n", "grading", "dims", ...}` with a truncation marker when
    /// the table is partial.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("group".into(), json!(self.group));
        m.insert("n".into(), json!(self.n));
        m.insert("grading".into(), serde_json::to_value(self.grading).expect("label"));
        m.insert("dims".into(), self.dims_json());
        if let Some(b) = self.bound {
            m.insert("max_degree".into(), json!(b));
        }
        m.insert("display_series".into(), json!(self.display_series()));
        if let Some(t) = &self.truncated {
            m.insert(
                "truncated".into(),
                json!({ "completed_through": t.completed_through, "reason": t.reason }),
            );
        }
        Value::Object(m)
    }

    /// `grade,dim` lines under a header.
    pub fn to_csv(&self) -> String {
        let head = match self.grading {
            GradingLabel::PolynomialDegree => "degree",
            GradingLabel::DualWeight => "dual_weight",
        };
        let mut s = format!("{head},dim\n");
        for (g, d) in &self.dims {
            let _ = writeln!(s, "{g},{d}");
        }
        s
    }

    /// Two-column aligned text table.
    pub fn to_text(&self) -> String {
        let head = match self.grading {
            GradingLabel::PolynomialDegree => "degree",
            GradingLabel::DualWeight => "weight",
        };
        let mut s = format!("{} n={}\n{head:>8}  dim\n", self.group, self.n);
        for (g, d) in &self.dims {
            let _ = writeln!(s, "{g:>8}  {d}");
        }
        if let Some(t) = &self.truncated {
            let _ = writeln!(s, "(truncated: {})", t.reason);
        }
        s
    }
}

fn format_exponent(q: i32, latex: bool) -> String {
    if q % 4 == 0 {
        let e = q / 4;
        if latex && !(0..10).contains(&e) {
            format!("{{{e}}}")
        } else {
            e.to_string()
        }
    } else if latex {
        format!("{{\\frac{{{q}}}{{4}}}}")
    } else {
        format!("({q}/4)")
    }
}

/// Formats `sum dim * t^{q/4}` with ascending exponents.
pub fn format_series(terms: &[(i32, u64)], latex: bool) -> String {
    let parts: Vec<String> = terms
        .iter()
        .filter(|(_, d)| *d > 0)
        .map(|&(q, d)| {
            if q == 0 {
                return d.to_string();
            }
            let coeff = if d == 1 { String::new() } else { d.to_string() };
            if q == 4 {
                format!("{coeff}t")
            } else {
                format!("{coeff}t^{}", format_exponent(q, latex))
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Header cell of the type-D tables.
pub const LATEX_HEADER: &str = r"$h(\mathsf{HP}_0(\mathcal{O}_{{\Bbb C}^{2n}}^{D_n});t^{\frac{1}{4}})$";

/// One tabular row per table: `n & $series$ \\`, wrapped in a `tabular`.
pub fn latex_tabular(tables: &[GradedDimensionTable]) -> String {
    latex_tabular_with_header(LATEX_HEADER, tables)
}

pub fn latex_tabular_with_header(header: &str, tables: &[GradedDimensionTable]) -> String {
    let mut s = String::from("\\begin{tabular}{|c|l|}\n\\hline\n");
    let _ = writeln!(s, "$n$ & {header} \\\\\n\\hline");
    for t in tables {
        let _ = writeln!(s, "{} & ${}$ \\\\", t.n, t.latex_series());
    }
    s.push_str("\\hline\n\\end{tabular}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_formatting() {
        assert_eq!(format_series(&[], false), "0");
        assert_eq!(format_series(&[(0, 1), (4, 1), (8, 3)], false), "1 + t + 3t^2");
        assert_eq!(format_series(&[(48, 2)], true), "2t^{12}");
        assert_eq!(format_series(&[(2, 1)], false), "t^(2/4)");
    }

    #[test]
    fn dual_weight_table() {
        let mut t = GradedDimensionTable::new("D", 8, GradingLabel::DualWeight);
        t.set(0, 1);
        t.set(-4, 1);
        t.set(-20, 2);
        assert_eq!(t.display_series(), "1 + t + 2t^5");
        let keys: Vec<String> = t.dims_json().as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, vec!["0", "-4", "-20"]);
    }

    #[test]
    fn degree_table_json() {
        let mut t = GradedDimensionTable::new("hyperoctahedral", 2, GradingLabel::PolynomialDegree).with_bound(8);
        for d in 0..=8 {
            t.set(d, u64::from(d == 0 || d == 4));
        }
        let v = t.to_json();
        assert_eq!(v["grading"], "polynomial-degree");
        assert_eq!(v["dims"]["4"], 1);
        assert_eq!(v["display_series"], "1 + t");
        let keys: Vec<&String> = v["dims"].as_object().unwrap().keys().collect();
        assert_eq!(keys[..3], ["0", "1", "2"]);
    }
}
