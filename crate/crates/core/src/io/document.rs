//! Self-describing code documents in JSON and a line-oriented text form.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::agcons::{EvalSet, Family, TwistedAgCode};
use crate::eaqecc::EaqeccParams;
use crate::error::{Error, Result};
use crate::galois::{Elem, FieldCtx};
use crate::hullbound::HullReport;
use crate::lincode::{DistanceClaim, LinearCode, Provenance};
use crate::matrix::Mat;

pub const FORMAT_TAG: &str = "hullforge-code";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDocument {
    pub format: String,
    pub version: u32,
    pub q: u32,
    pub family: Family,
    /// Evaluation points; empty for codes given only by a generator.
    pub points: Vec<String>,
    pub twist: Vec<String>,
    pub deg_g: Option<usize>,
    pub distance: Option<DistanceClaim>,
    pub generator: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hull: Option<HullReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub eaqecc: Vec<EaqeccParams>,
}

fn encode_row(f: &FieldCtx, row: &[Elem]) -> Vec<String> {
    row.iter().map(|&x| f.format_elem(x)).collect()
}

fn decode_row(f: &FieldCtx, row: &[String]) -> Result<Vec<Elem>> {
    row.iter().map(|s| f.parse_elem(s)).collect()
}

fn doc_err(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

impl CodeDocument {
    pub fn from_twisted(code: &TwistedAgCode) -> CodeDocument {
        let f = code.evalset().field();
        CodeDocument {
            format: FORMAT_TAG.to_string(),
            version: FORMAT_VERSION,
            q: f.q(),
            family: code.evalset().family(),
            points: encode_row(f, code.evalset().points()),
            twist: encode_row(f, code.twist()),
            deg_g: Some(code.deg_g()),
            distance: code.code().distance(),
            generator: code.code().generator().row_vecs().iter().map(|r| encode_row(f, r)).collect(),
            hull: None,
            eaqecc: Vec::new(),
        }
    }

    /// A bare generator-matrix document (family `custom`, no points).
    pub fn from_linear(code: &LinearCode) -> CodeDocument {
        let f = code.field();
        CodeDocument {
            format: FORMAT_TAG.to_string(),
            version: FORMAT_VERSION,
            q: f.q(),
            family: Family::Custom,
            points: Vec::new(),
            twist: Vec::new(),
            deg_g: None,
            distance: code.distance(),
            generator: code.generator().row_vecs().iter().map(|r| encode_row(f, r)).collect(),
            hull: None,
            eaqecc: Vec::new(),
        }
    }

    pub fn field(&self) -> Result<Arc<FieldCtx>> {
        FieldCtx::for_q(self.q)
    }

    pub fn n(&self) -> usize {
        self.generator.first().map_or(0, Vec::len)
    }

    pub fn k(&self) -> usize {
        self.generator.len()
    }

    fn check_header(&self) -> Result<()> {
        if self.format != FORMAT_TAG {
            return Err(doc_err(format!("unknown format tag {:?}", self.format)));
        }
        if self.version != FORMAT_VERSION {
            return Err(doc_err(format!("unsupported version {}", self.version)));
        }
        Ok(())
    }

    pub fn linear_code(&self) -> Result<LinearCode> {
        self.check_header()?;
        let f = self.field()?;
        let n = self.n();
        let rows = self
            .generator
            .iter()
            .map(|r| {
                if r.len() != n {
                    return Err(doc_err("ragged generator matrix"));
                }
                decode_row(&f, r)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut code = LinearCode::new(Mat::from_rows(f, n, rows)?)?;
        if let Some(claim) = self.distance {
            code = code.with_distance(claim);
        }
        Ok(code)
    }

    /// Rebuilds the construction named by `family` and `deg_g` and checks
    /// that it reproduces the stored points and generator. `None` for
    /// custom documents.
    pub fn twisted_code(&self) -> Result<Option<TwistedAgCode>> {
        self.check_header()?;
        let Some(deg_g) = self.deg_g else { return Ok(None) };
        let f = self.field()?;
        let evalset = match self.family {
            Family::Subgroup { n } => EvalSet::subgroup(&f, n)?,
            Family::Affine { n0 } => EvalSet::affine(&f, n0)?,
            Family::Cosets { s, t } => EvalSet::cosets(&f, s, t)?,
            Family::Custom => {
                if self.points.is_empty() {
                    return Ok(None);
                }
                EvalSet::custom(&f, decode_row(&f, &self.points)?)?
            }
        };
        let code = TwistedAgCode::build(&evalset, deg_g)?;
        let fresh = CodeDocument::from_twisted(&code);
        if fresh.points != self.points {
            return Err(doc_err("evaluation points do not match the named construction"));
        }
        if fresh.generator != self.generator {
            return Err(doc_err("generator does not match the named construction"));
        }
        Ok(Some(code))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(s: &str) -> Result<CodeDocument> {
        let doc: CodeDocument = serde_json::from_str(s).map_err(|e| doc_err(e.to_string()))?;
        doc.check_header()?;
        Ok(doc)
    }

    /// Line-oriented form. Hull and EAQECC records are carried as one JSON
    /// object per line so nothing is lost.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.format, self.version);
        let _ = writeln!(out, "q {}", self.q);
        let family = match self.family {
            Family::Subgroup { n } => format!("subgroup n={n}"),
            Family::Affine { n0 } => format!("affine n0={n0}"),
            Family::Cosets { s, t } => format!("cosets s={s} t={t}"),
            Family::Custom => "custom".to_string(),
        };
        let _ = writeln!(out, "family {family}");
        if let Some(d) = self.deg_g {
            let _ = writeln!(out, "deg_g {d}");
        }
        if let Some(c) = self.distance {
            let prov = match c.provenance {
                Provenance::Structural => "structural",
                Provenance::Verified => "verified",
            };
            let _ = writeln!(out, "distance {} {prov}", c.d);
        }
        if !self.points.is_empty() {
            let _ = writeln!(out, "points {}", self.points.join(" "));
        }
        if !self.twist.is_empty() {
            let _ = writeln!(out, "twist {}", self.twist.join(" "));
        }
        let _ = writeln!(out, "generator {} {}", self.k(), self.n());
        for row in &self.generator {
            let _ = writeln!(out, "{}", row.join(" "));
        }
        if let Some(h) = &self.hull {
            let _ = writeln!(out, "hull {}", serde_json::to_string(h).expect("serializes"));
        }
        for p in &self.eaqecc {
            let _ = writeln!(out, "eaqecc {}", serde_json::to_string(p).expect("serializes"));
        }
        out
    }

    pub fn from_text(s: &str) -> Result<CodeDocument> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| doc_err("empty document"))?;
        let (format, version) = header.split_once(' ').ok_or_else(|| doc_err("bad header line"))?;
        let mut doc = CodeDocument {
            format: format.to_string(),
            version: version.trim().parse().map_err(|_| doc_err("bad version"))?,
            q: 0,
            family: Family::Custom,
            points: Vec::new(),
            twist: Vec::new(),
            deg_g: None,
            distance: None,
            generator: Vec::new(),
            hull: None,
            eaqecc: Vec::new(),
        };
        doc.check_header()?;
        let num = |s: &str, what: &str| -> Result<usize> {
            s.trim().parse().map_err(|_| doc_err(format!("bad {what}: {s:?}")))
        };
        while let Some(line) = lines.next() {
            let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
            let words: Vec<String> = rest.split_whitespace().map(String::from).collect();
            match key {
                "q" => doc.q = num(rest, "q")? as u32,
                "family" => doc.family = parse_family(&words)?,
                "deg_g" => doc.deg_g = Some(num(rest, "deg_g")?),
                "distance" => {
                    let [d, prov] = words.as_slice() else { return Err(doc_err("bad distance line")) };
                    let provenance = match prov.as_str() {
                        "structural" => Provenance::Structural,
                        "verified" => Provenance::Verified,
                        other => return Err(doc_err(format!("unknown provenance {other:?}"))),
                    };
                    doc.distance = Some(DistanceClaim { d: num(d, "distance")?, provenance });
                }
                "points" => doc.points = words,
                "twist" => doc.twist = words,
                "generator" => {
                    let [k, n] = words.as_slice() else { return Err(doc_err("bad generator line")) };
                    let (k, n) = (num(k, "k")?, num(n, "n")?);
                    for _ in 0..k {
                        let row: Vec<String> = lines
                            .next()
                            .ok_or_else(|| doc_err("generator truncated"))?
                            .split_whitespace()
                            .map(String::from)
                            .collect();
                        if row.len() != n {
                            return Err(doc_err(format!("generator row of length {} (expected {n})", row.len())));
                        }
                        doc.generator.push(row);
                    }
                }
                "hull" => doc.hull = Some(serde_json::from_str(rest).map_err(|e| doc_err(e.to_string()))?),
                "eaqecc" => doc.eaqecc.push(serde_json::from_str(rest).map_err(|e| doc_err(e.to_string()))?),
                other => return Err(doc_err(format!("unknown key {other:?}"))),
            }
        }
        Ok(doc)
    }

    /// JSON if the input starts with `{`, text otherwise.
    pub fn parse(s: &str) -> Result<CodeDocument> {
        if s.trim_start().starts_with('{') {
            CodeDocument::from_json(s)
        } else {
            CodeDocument::from_text(s)
        }
    }
}

fn parse_family(words: &[String]) -> Result<Family> {
    let get = |key: &str| -> Result<usize> {
        words
            .iter()
            .find_map(|w| w.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
            .ok_or_else(|| doc_err(format!("family missing {key}")))?
            .parse()
            .map_err(|_| doc_err(format!("bad {key}")))
    };
    match words.first().map(String::as_str) {
        Some("subgroup") => Ok(Family::Subgroup { n: get("n")? }),
        Some("affine") => Ok(Family::Affine { n0: get("n0")? }),
        Some("cosets") => Ok(Family::Cosets { s: get("s")?, t: get("t")? }),
        Some("custom") => Ok(Family::Custom),
        other => Err(doc_err(format!("unknown family {other:?}"))),
    }
}
