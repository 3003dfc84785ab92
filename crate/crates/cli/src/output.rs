//! Artifact rendering.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use simprep_core::poset::PosetJson;
use simprep_core::realroots::{format_rational, ThomJson};
use simprep_core::simplicial::ComplexJson;
use simprep_core::{Barcode, Death, ThomEncoding};

use crate::args::{Format, Global};
use crate::error::CliResult;

/// An artifact in both of its renderings.
pub trait Artifact: Serialize {
    fn csv_header(&self) -> Vec<&'static str>;
    fn csv_rows(&self) -> Vec<Vec<String>>;
}

pub fn resolve_format(global: &Global, default: Format) -> Format {
    if let Some(f) = global.format {
        return f;
    }
    match global
        .out
        .as_deref()
        .and_then(Path::extension)
        .and_then(|e| e.to_str())
    {
        Some("csv") => Format::Csv,
        Some("json") => Format::Json,
        _ => default,
    }
}

fn render<A: Artifact>(a: &A, format: Format, w: impl Write) -> CliResult<()> {
    match format {
        Format::Json => {
            let mut w = w;
            serde_json::to_writer_pretty(&mut w, a).map_err(io::Error::from)?;
            writeln!(w)?;
        }
        Format::Csv => {
            let mut cw = csv::Writer::from_writer(w);
            cw.write_record(a.csv_header())?;
            for r in a.csv_rows() {
                cw.write_record(&r)?;
            }
            cw.flush()?;
        }
    }
    Ok(())
}

/// Writes to `--out` when given, else to standard output.
pub fn write_artifact<A: Artifact>(global: &Global, default: Format, a: &A) -> CliResult<()> {
    let format = resolve_format(global, default);
    match &global.out {
        Some(path) => render(a, format, File::create(path)?),
        None => render(a, format, io::stdout().lock()),
    }
}

/// Writes to `--out` only.
pub fn write_artifact_if_requested<A: Artifact>(
    global: &Global,
    default: Format,
    a: &A,
) -> CliResult<()> {
    match &global.out {
        Some(path) => render(a, resolve_format(global, default), File::create(path)?),
        None => Ok(()),
    }
}

pub fn betti_line(betti: &[usize]) -> String {
    let parts: Vec<String> = betti.iter().map(usize::to_string).collect();
    format!("b: {}", parts.join(" "))
}

fn betti_rows(betti: &[usize]) -> Vec<Vec<String>> {
    betti
        .iter()
        .enumerate()
        .map(|(p, b)| vec![p.to_string(), b.to_string()])
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReplaceArtifact {
    pub ell: usize,
    pub labels: Vec<String>,
    pub betti: Vec<usize>,
    pub complex: ComplexJson,
    pub poset: PosetJson,
}

impl Artifact for ReplaceArtifact {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["p", "betti"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        betti_rows(&self.betti)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NerveArtifact {
    pub labels: Vec<String>,
    pub betti: Vec<usize>,
    pub complex: ComplexJson,
}

impl Artifact for NerveArtifact {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["p", "betti"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        betti_rows(&self.betti)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BettiArtifact {
    pub betti: Vec<usize>,
}

impl Artifact for BettiArtifact {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["p", "betti"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        betti_rows(&self.betti)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BarRow {
    pub p: usize,
    pub birth: String,
    pub death: String,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BarcodeArtifact {
    pub bars: Vec<BarRow>,
}

impl BarcodeArtifact {
    pub fn new(barcodes: &[Barcode<BigRational>]) -> Self {
        let bars = barcodes
            .iter()
            .flat_map(|bc| {
                bc.bars().iter().map(|b| BarRow {
                    p: bc.degree,
                    birth: format_rational(&b.birth),
                    death: match &b.death {
                        Death::Finite(d) => format_rational(d),
                        Death::Infinite => "inf".into(),
                    },
                    multiplicity: b.multiplicity,
                })
            })
            .collect();
        Self { bars }
    }
}

impl Artifact for BarcodeArtifact {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["p", "birth", "death", "multiplicity"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.bars
            .iter()
            .map(|b| {
                vec![
                    b.p.to_string(),
                    b.birth.clone(),
                    b.death.clone(),
                    b.multiplicity.to_string(),
                ]
            })
            .collect()
    }
}

fn thom_text(j: &ThomJson) -> String {
    let signs: Vec<String> = j.signs.iter().map(i8::to_string).collect();
    format!("{{{}, [{}]}}", j.poly, signs.join(","))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SaBarRow {
    pub p: usize,
    pub birth: ThomJson,
    /// `None` for an infinite bar.
    pub death: Option<ThomJson>,
    pub multiplicity: usize,
    pub birth_approx: f64,
    pub death_approx: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SaBarcodeArtifact {
    pub bars: Vec<SaBarRow>,
}

impl SaBarcodeArtifact {
    pub fn new(barcodes: &[Barcode<ThomEncoding>]) -> Self {
        let bars = barcodes
            .iter()
            .flat_map(|bc| {
                bc.bars().iter().map(|b| {
                    let death = match &b.death {
                        Death::Finite(d) => Some(d),
                        Death::Infinite => None,
                    };
                    SaBarRow {
                        p: bc.degree,
                        birth: b.birth.to_json(),
                        death: death.map(ThomEncoding::to_json),
                        multiplicity: b.multiplicity,
                        birth_approx: b.birth.approx(),
                        death_approx: death.map(ThomEncoding::approx),
                    }
                })
            })
            .collect();
        Self { bars }
    }
}

impl Artifact for SaBarcodeArtifact {
    fn csv_header(&self) -> Vec<&'static str> {
        vec![
            "p",
            "birth",
            "death",
            "multiplicity",
            "birth_approx",
            "death_approx",
        ]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.bars
            .iter()
            .map(|b| {
                vec![
                    b.p.to_string(),
                    thom_text(&b.birth),
                    b.death.as_ref().map_or_else(|| "inf".into(), thom_text),
                    b.multiplicity.to_string(),
                    format!("{:.6}", b.birth_approx),
                    b.death_approx
                        .map_or_else(|| "inf".into(), |d| format!("{d:.6}")),
                ]
            })
            .collect()
    }
}
