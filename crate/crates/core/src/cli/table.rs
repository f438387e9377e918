//! The `table` command and its JSON/CSV document.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cli::{Format, TableArgs, EXIT_OK};
use crate::combinatorics::Triangle;
use crate::error::{Error, Result};
use crate::euler::euler_polys;
use crate::rational::{to_f64, Rational};
use crate::rv::RvSpec;
use crate::stirling::cumulants::{adell_benyi_triangle, cumulants};
use crate::stirling::{triangle, Kind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Stirling(Kind),
    Cumulants,
    Euler,
    AdellBenyi,
}

impl TableKind {
    pub fn code(self) -> &'static str {
        match self {
            TableKind::Stirling(kind) => kind.code(),
            TableKind::Cumulants => "CUMULANTS",
            TableKind::Euler => "EULER",
            TableKind::AdellBenyi => "ADELL_BENYI",
        }
    }

    /// Kinds where `--lambda` selects something; the others only accept 0.
    fn takes_lambda(self) -> bool {
        match self {
            TableKind::Stirling(kind) => kind.is_degenerate(),
            TableKind::Euler => true,
            TableKind::Cumulants | TableKind::AdellBenyi => false,
        }
    }

    fn needs_lambda(self) -> bool {
        matches!(self, TableKind::Stirling(kind) if kind.is_degenerate())
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "CUMULANTS" => Ok(TableKind::Cumulants),
            "EULER" => Ok(TableKind::Euler),
            "ADELL_BENYI" => Ok(TableKind::AdellBenyi),
            other => other.parse().map(TableKind::Stirling).map_err(|_| {
                Error::Parse(format!(
                    "unknown kind {s:?}; expected S2Y, S1Y, S2YL, S1YL, CUMULANTS, EULER or ADELL_BENYI"
                ))
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// Exact rational, `num/den` or an integer.
    pub value: String,
    /// Decimal approximation, only with `--float`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub float: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableDocument {
    pub rv: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    pub order: usize,
    pub entries: Vec<TableEntry>,
}

impl TableDocument {
    /// Builds the document for `kind` up to `order`.
    pub fn build(rv: &RvSpec, kind: TableKind, lambda: Option<&Rational>, order: usize, float: bool) -> Result<Self> {
        rv.validate()?;
        let entry = |n: usize, k: Option<usize>, v: &Rational| TableEntry {
            n,
            k,
            value: v.to_string(),
            float: float.then(|| to_f64(v)),
        };
        let from_triangle = |t: &Triangle| t.entries().map(|(n, k, v)| entry(n, Some(k), v)).collect();
        let entries = match kind {
            TableKind::Stirling(k) => {
                let zero = Rational::zero();
                from_triangle(&triangle(rv, k, lambda.unwrap_or(&zero), order)?)
            }
            TableKind::Cumulants => cumulants(rv, order)
                .values()
                .iter()
                .enumerate()
                .map(|(i, v)| entry(i + 1, None, v))
                .collect(),
            TableKind::AdellBenyi => from_triangle(&adell_benyi_triangle(rv, order)),
            TableKind::Euler => euler_polys(rv, lambda, order)
                .iter()
                .enumerate()
                .flat_map(|(n, p)| (0..=n).map(move |k| (n, k, p.coeff(k))))
                .map(|(n, k, v)| entry(n, Some(k), &v))
                .collect(),
        };
        Ok(TableDocument {
            rv: rv.to_string(),
            kind: kind.code().to_string(),
            lambda: lambda.map(ToString::to_string),
            order,
            entries,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_csv(&self) -> String {
        let sequence = self.entries.iter().all(|e| e.k.is_none());
        let with_float = self.entries.iter().any(|e| e.float.is_some());
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["n"];
        if !sequence {
            header.push("k");
        }
        header.push("value");
        if with_float {
            header.push("float");
        }
        w.write_record(&header).expect("in-memory write");
        for e in &self.entries {
            let mut record = vec![e.n.to_string()];
            if let Some(k) = e.k {
                record.push(k.to_string());
            }
            record.push(e.value.clone());
            if let Some(f) = e.float {
                record.push(f.to_string());
            }
            w.write_record(&record).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    /// The exact value at `(n, k)`, for tests and callers.
    pub fn value(&self, n: usize, k: Option<usize>) -> Option<&str> {
        self.entries
            .iter()
            .find(|e| e.n == n && e.k == k)
            .map(|e| e.value.as_str())
    }
}

fn check_lambda(kind: TableKind, lambda: Option<&Rational>) -> Result<()> {
    match lambda {
        None if kind.needs_lambda() => Err(Error::InvalidParameter(format!("{kind} needs --lambda"))),
        Some(l) if !kind.takes_lambda() && !l.is_zero() => Err(Error::InvalidParameter(format!(
            "--lambda is only meaningful for degenerate kinds, {kind} accepts only 0"
        ))),
        _ => Ok(()),
    }
}

pub(crate) fn run(args: &TableArgs, out: &mut dyn Write) -> Result<i32> {
    let order = args.order.checked()?;
    check_lambda(args.kind, args.lambda.as_ref())?;
    // λ = 0 for a non-degenerate kind is accepted and dropped.
    let lambda = args.lambda.as_ref().filter(|_| args.kind.takes_lambda());
    let doc = TableDocument::build(&args.rv, args.kind, lambda, order, args.float)?;
    let text = match args.format {
        Format::Json => doc.to_json() + "\n",
        Format::Csv => doc.to_csv(),
    };
    let _ = out.write_all(text.as_bytes());
    Ok(EXIT_OK)
}
