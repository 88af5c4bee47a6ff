//! Serializable views of the derived data, and their text/CSV/JSON
//! renderings.

use crate::billiard::BilliardMaps;
use crate::construction::{
    generating_family_with, r12_with, r6_with, subset_with, ConstructionError, GeneratorMatrix,
    TriangleSubset,
};
use crate::labeling::{build_hexagon_labeling, build_quadrilateral_labeling, Parity, SignClass};
use serde::Serialize;
use std::fmt::Write as _;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "text" | "txt" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!(
                "unknown format `{other}` (expected text, json or csv)"
            )),
        }
    }
}

/// One labeled triangle. Hexagon triangles have no representative; their
/// parity is that of the quadrilateral labels in the same residue class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelRecord {
    pub label: u8,
    pub parity: Parity,
    pub rep: Option<[[i64; 2]; 2]>,
    pub sign: SignClass,
}

/// Images of labels 1..=24 under each map, in label order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tables {
    pub sigma: Vec<u8>,
    pub delta: Vec<u8>,
    pub kappa: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetRecord {
    pub name: String,
    pub members: Vec<u8>,
    pub hex: String,
}

impl From<&TriangleSubset> for SubsetRecord {
    fn from(s: &TriangleSubset) -> Self {
        SubsetRecord {
            name: s.source.to_string(),
            members: s.members(),
            hex: s.bits.to_hex(),
        }
    }
}

/// Everything `derive` writes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Derivation {
    pub quadrilateral: Vec<LabelRecord>,
    pub hexagon: Vec<LabelRecord>,
    pub tables: Tables,
    pub subsets: Vec<SubsetRecord>,
    pub matrix: GeneratorMatrix,
}

impl Derivation {
    pub fn new(maps: &BilliardMaps) -> Result<Self, ConstructionError> {
        let quad = build_quadrilateral_labeling()?;
        let quadrilateral = quad
            .triangles()
            .iter()
            .map(|t| LabelRecord {
                label: t.label,
                parity: t.parity,
                rep: Some(t.rep.entries()),
                sign: if t.parity == Parity::Delta1Base {
                    SignClass::Q
                } else {
                    SignClass::N
                },
            })
            .collect();
        let hexagon = build_hexagon_labeling()
            .slots()
            .iter()
            .map(|s| LabelRecord {
                label: s.label,
                parity: match s.sign {
                    SignClass::Q => Parity::Delta1Base,
                    SignClass::N => Parity::Delta2Base,
                },
                rep: None,
                sign: s.sign,
            })
            .collect();
        let tables = Tables {
            sigma: maps.sigma.images().to_vec(),
            delta: maps.delta.images().to_vec(),
            kappa: maps.kappa.images().to_vec(),
        };
        let mut subsets = (1..=24u32)
            .map(|k| subset_with(maps, k).map(|s| SubsetRecord::from(&s)))
            .collect::<Result<Vec<_>, _>>()?;
        subsets.push(SubsetRecord::from(&r6_with(maps)?));
        subsets.push(SubsetRecord::from(&r12_with(maps)?));
        Ok(Derivation {
            quadrilateral,
            hexagon,
            tables,
            subsets,
            matrix: generating_family_with(maps)?,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("derivation serializes") + "\n"
    }

    fn labels(&self) -> impl Iterator<Item = &LabelRecord> {
        self.quadrilateral.iter().chain(&self.hexagon)
    }

    pub fn labelings_csv(&self) -> String {
        let mut out = String::from("label,parity,rep,sign\n");
        for r in self.labels() {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                r.label,
                parity_name(r.parity),
                rep_text(r.rep, " "),
                r.sign
            );
        }
        out
    }

    pub fn labelings_text(&self) -> String {
        let mut out = String::new();
        for r in self.labels() {
            let _ = writeln!(
                out,
                "{:>2} {:<12} {} {}",
                r.label,
                parity_name(r.parity),
                r.sign,
                rep_text(r.rep, ",")
            );
        }
        out
    }

    pub fn tables_csv(&self) -> String {
        let mut out = String::from("label,sigma,delta,kappa\n");
        for k in 0..24 {
            let t = &self.tables;
            let _ = writeln!(
                out,
                "{},{},{},{}",
                k + 1,
                t.sigma[k],
                t.delta[k],
                t.kappa[k]
            );
        }
        out
    }

    pub fn tables_text(&self) -> String {
        let line = |name: &str, v: &[u8]| {
            format!(
                "{name} {}\n",
                v.iter().map(u8::to_string).collect::<Vec<_>>().join(" ")
            )
        };
        line("sigma", &self.tables.sigma)
            + &line("delta", &self.tables.delta)
            + &line("kappa", &self.tables.kappa)
    }

    pub fn subsets_csv(&self) -> String {
        let mut out = String::from("name,members,hex\n");
        for s in &self.subsets {
            let _ = writeln!(out, "{},{},{}", s.name, join(&s.members, " "), s.hex);
        }
        out
    }

    pub fn subsets_text(&self) -> String {
        let mut out = String::new();
        for s in &self.subsets {
            let _ = writeln!(out, "{:<4} {} {{{}}}", s.name, s.hex, join(&s.members, ","));
        }
        out
    }

    /// `(file name, contents)` pairs for one output format. JSON is a
    /// single bundle; text and CSV are one file per artifact.
    pub fn files(&self, format: Format) -> Vec<(&'static str, String)> {
        match format {
            Format::Json => vec![("golay-derivation.json", self.to_json())],
            Format::Text => vec![
                ("matrix.txt", self.matrix.to_text()),
                ("labelings.txt", self.labelings_text()),
                ("tables.txt", self.tables_text()),
                ("subsets.txt", self.subsets_text()),
            ],
            Format::Csv => vec![
                ("matrix.csv", self.matrix.to_csv()),
                ("labelings.csv", self.labelings_csv()),
                ("tables.csv", self.tables_csv()),
                ("subsets.csv", self.subsets_csv()),
            ],
        }
    }
}

fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Delta1Base => "delta1-base",
        Parity::Delta2Base => "delta2-base",
    }
}

fn rep_text(rep: Option<[[i64; 2]; 2]>, sep: &str) -> String {
    match rep {
        Some([[a, b], [c, d]]) => format!("[{a}{sep}{b}{sep}{c}{sep}{d}]"),
        None => "-".into(),
    }
}

fn join(xs: &[u8], sep: &str) -> String {
    xs.iter().map(u8::to_string).collect::<Vec<_>>().join(sep)
}

/// Matrix rendered in `format`: 12 lines of 24 binary digits, a CSV grid,
/// or a JSON array of 24-character strings.
pub fn matrix_as(matrix: &GeneratorMatrix, format: Format) -> String {
    match format {
        Format::Text => matrix.to_text(),
        Format::Csv => matrix.to_csv(),
        Format::Json => serde_json::to_string_pretty(matrix).expect("matrix serializes") + "\n",
    }
}
