//! Machine-readable reports and their plain-text rendering.

use std::collections::BTreeMap;
use std::fmt::Write;

use latnorm::{GradedGroup, HilbertTable};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub command: String,
    pub body: Body,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointValue {
    pub point: Vec<i64>,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandDoc {
    pub degree: i64,
    pub rank: usize,
    pub torsion: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyEntry {
    pub point: Vec<i64>,
    pub group: String,
    pub summands: Vec<SummandDoc>,
    /// Poincaré polynomial predicted from the motivic coefficient.
    pub formula: String,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub curve: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Body {
    Hilbert {
        corner: Vec<i64>,
        values: Vec<PointValue>,
    },
    Value {
        point: Vec<i64>,
        value: u64,
    },
    Semigroup {
        corner: Vec<i64>,
        conductor: Vec<i64>,
        members: Vec<Vec<i64>>,
    },
    Series {
        series: String,
        corner: Vec<i64>,
        polynomial: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        symmetry: Option<Symmetry>,
    },
    Homology {
        corner: Vec<i64>,
        entries: Vec<HomologyEntry>,
    },
    Invariants {
        branches: usize,
        delta: u64,
        delta_branches: Vec<u64>,
        milnor: i64,
        milnor_branches: Vec<u64>,
        conductor: Vec<i64>,
        intersections: Vec<Vec<u64>>,
    },
    Verify {
        deep: bool,
        passed: usize,
        failed: usize,
        checks: Vec<CheckDoc>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Symmetry {
    pub reflection: String,
    pub center: Vec<i64>,
    pub sign: i64,
    pub holds: bool,
}

impl ReportDocument {
    pub fn new(command: &str, body: Body) -> Self {
        ReportDocument { schema_version: SCHEMA_VERSION, command: command.to_string(), body }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Human-readable text; two-branch grids have the origin lower-left.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        match &self.body {
            Body::Hilbert { corner, values } => {
                let map: BTreeMap<&[i64], u64> = values.iter().map(|p| (p.point.as_slice(), p.value)).collect();
                grid(&mut out, corner, |p| map.get(p).map(|v| v.to_string()), values.iter().map(|p| (p.point.clone(), p.value.to_string())));
            }
            Body::Value { value, .. } => {
                let _ = writeln!(out, "{}", value);
            }
            Body::Semigroup { corner, conductor, members } => {
                let set: std::collections::BTreeSet<&[i64]> = members.iter().map(|m| m.as_slice()).collect();
                let mark = |p: &[i64]| Some(if set.contains(p) { "*".to_string() } else { ".".to_string() });
                grid(&mut out, corner, mark, members.iter().map(|m| (m.clone(), "*".to_string())));
                let _ = writeln!(out, "conductor {}", point(conductor));
            }
            Body::Series { polynomial, .. } => {
                let _ = writeln!(out, "{}", polynomial);
            }
            Body::Homology { entries, .. } => {
                if let [single] = entries.as_slice() {
                    let _ = writeln!(out, "{}", single.group);
                } else {
                    for e in entries {
                        let _ = writeln!(out, "{} {}", point(&e.point), e.group);
                    }
                }
            }
            Body::Invariants { branches, delta, delta_branches, milnor, milnor_branches, conductor, intersections } => {
                let _ = writeln!(out, "branches {}", branches);
                let _ = writeln!(out, "delta {}", delta);
                let _ = writeln!(out, "delta per branch {}", list(delta_branches));
                let _ = writeln!(out, "milnor {}", milnor);
                let _ = writeln!(out, "milnor per branch {}", list(milnor_branches));
                let _ = writeln!(out, "conductor {}", point(conductor));
                let _ = writeln!(out, "intersections");
                for row in intersections {
                    let _ = writeln!(out, "  {}", list(row));
                }
            }
            Body::Verify { passed, failed, checks, .. } => {
                for c in checks {
                    let status = if c.passed { "PASS" } else { "FAIL" };
                    if c.detail.is_empty() {
                        let _ = writeln!(out, "{} {} {}", status, c.curve, c.name);
                    } else {
                        let _ = writeln!(out, "{} {} {} ({})", status, c.curve, c.name, c.detail);
                    }
                }
                let _ = writeln!(out, "{} passed, {} failed", passed, failed);
            }
        }
        out
    }
}

fn list<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn point(v: &[i64]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn grid(
    out: &mut String,
    corner: &[i64],
    cell: impl Fn(&[i64]) -> Option<String>,
    listing: impl Iterator<Item = (Vec<i64>, String)>,
) {
    match corner.len() {
        1 => {
            let row: Vec<String> = (0..=corner[0]).map(|x| cell(&[x]).unwrap_or_default()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        2 => {
            let cells: Vec<Vec<String>> =
                (0..=corner[1]).rev().map(|y| (0..=corner[0]).map(|x| cell(&[x, y]).unwrap_or_default()).collect()).collect();
            let width = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
            for row in cells {
                let padded: Vec<String> = row.iter().map(|s| format!("{:>w$}", s, w = width)).collect();
                let _ = writeln!(out, "{}", padded.join(" "));
            }
        }
        _ => {
            for (p, s) in listing {
                let _ = writeln!(out, "{} {}", point(&p), s);
            }
        }
    }
}

pub fn hilbert_values(t: &HilbertTable) -> Vec<PointValue> {
    t.iter().map(|(p, h)| PointValue { point: p.to_vec(), value: h }).collect()
}

pub fn summands(g: &GradedGroup) -> Vec<SummandDoc> {
    let mut out: Vec<SummandDoc> = g
        .iter()
        .map(|(d, s)| SummandDoc { degree: d, rank: s.rank, torsion: s.torsion.iter().map(|t| t.to_string()).collect() })
        .collect();
    out.reverse();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let docs = [
            ReportDocument::new("value", Body::Value { point: vec![2, 2], value: 2 }),
            ReportDocument::new(
                "series",
                Body::Series {
                    series: "alexander".into(),
                    corner: vec![2, 4],
                    polynomial: "1 + t1*t2^3".into(),
                    symmetry: Some(Symmetry { reflection: "v -> l - e - v".into(), center: vec![1, 3], sign: 1, holds: true }),
                },
            ),
            ReportDocument::new(
                "homology",
                Body::Homology {
                    corner: vec![3, 3],
                    entries: vec![HomologyEntry {
                        point: vec![2, 2],
                        group: "Z[-4] + Z[-5]".into(),
                        summands: vec![SummandDoc { degree: -4, rank: 1, torsion: vec![] }],
                        formula: "t^-5 + t^-4".into(),
                        agrees: true,
                    }],
                },
            ),
        ];
        for d in docs {
            let text = d.to_json();
            assert_eq!(ReportDocument::from_json(&text).unwrap(), d);
            assert_eq!(ReportDocument::from_json(&text).unwrap().to_json(), text);
            assert!(text.contains("\"schema_version\": 1"));
        }
    }
}
