//! Flat, serializable view of a classification, as emitted by the CLI.
//!
//! JSON objects are written with lexicographically sorted keys and CSV rows
//! in a fixed column order, so identical inputs give byte-identical output.

use serde::{Deserialize, Serialize};

use crate::classifier::{Case, ClassificationResult, Exception, PicardDescription, Quadrics};
use crate::lattice::Mode;
use crate::special::CiClassification;

pub const CSV_HEADER: [&str; 10] =
    ["n", "d", "g", "lambda", "case", "exists", "exceptions", "quadrics", "picard_rank", "birational_only"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicardRecord {
    pub rank: u8,
    /// `"k:m"` pairs with the minimal `k` first for rank 1; `["H", "C"]` for
    /// rank 2; empty when unrealizable.
    pub witnesses: Vec<String>,
}

impl From<&PicardDescription> for PicardRecord {
    fn from(p: &PicardDescription) -> Self {
        let witnesses = match p {
            PicardDescription::RankOne(w) => w.iter().map(|w| w.to_string()).collect(),
            PicardDescription::RankTwo => vec!["H".to_string(), "C".to_string()],
            PicardDescription::Unrealizable => Vec::new(),
        };
        PicardRecord { rank: p.rank(), witnesses }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub n: i64,
    pub d: i64,
    pub g: i64,
    pub lambda: i64,
    pub case: Case,
    pub exists: bool,
    /// Sorted.
    pub exceptions: Vec<Exception>,
    pub quadrics: Quadrics,
    pub picard: PicardRecord,
    pub birational_only: bool,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypersurface_degree: Option<i64>,
}

impl From<&ClassificationResult> for OutputRecord {
    fn from(r: &ClassificationResult) -> Self {
        OutputRecord {
            n: r.query.n(),
            d: r.query.d(),
            g: r.query.g(),
            lambda: r.lambda,
            case: r.case,
            exists: r.exists,
            exceptions: r.exceptions.iter().copied().collect(),
            quadrics: r.quadrics,
            picard: PicardRecord::from(&r.picard),
            birational_only: r.birational_only,
            mode: r.query.mode(),
            family: None,
            hypersurface_degree: None,
        }
    }
}

impl From<&CiClassification> for OutputRecord {
    fn from(r: &CiClassification) -> Self {
        OutputRecord {
            exists: r.exists,
            family: Some(r.family.label().to_string()),
            hypersurface_degree: r.hypersurface_degree,
            ..OutputRecord::from(&r.classification)
        }
    }
}

impl OutputRecord {
    /// Exceptions as `"a,b,d"`.
    pub fn exception_list(&self) -> String {
        self.exceptions.iter().map(|e| e.label()).collect::<Vec<_>>().join(",")
    }

    /// One JSON object with sorted keys, no trailing newline.
    pub fn to_json(&self) -> String {
        // serde_json::Map is a BTreeMap unless `preserve_order` is enabled.
        let value = serde_json::to_value(self).expect("record serializes");
        serde_json::to_string(&value).expect("value serializes")
    }

    pub fn csv_fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.d.to_string(),
            self.g.to_string(),
            self.lambda.to_string(),
            self.case.label().to_string(),
            self.exists.to_string(),
            self.exception_list(),
            self.quadrics.to_string(),
            self.picard.rank.to_string(),
            self.birational_only.to_string(),
        ]
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            out.push_str(&format!("{k:<16}{v}\n"));
        };
        line("n", self.n.to_string());
        line("d", self.d.to_string());
        line("g", self.g.to_string());
        line("mode", self.mode.to_string());
        line("lambda", self.lambda.to_string());
        line("case", self.case.label().to_string());
        line("exists", self.exists.to_string());
        line("exceptions", if self.exceptions.is_empty() { "-".into() } else { self.exception_list() });
        line("quadrics", self.quadrics.to_string());
        line("picard_rank", self.picard.rank.to_string());
        line("picard", if self.picard.witnesses.is_empty() { "-".into() } else { self.picard.witnesses.join(" ") });
        line("birational_only", self.birational_only.to_string());
        if let Some(family) = &self.family {
            line("family", family.clone());
        }
        if let Some(deg) = self.hypersurface_degree {
            line("hypersurface", deg.to_string());
        }
        out
    }
}
