//! Bound tables and their text encodings.
//!
//! CSV layout:
//!
//! ```text
//! # hbar,1.00000000000
//! # asymptote,-1.00000000000,1.00000000000
//! K,r,sigma_p_min,product
//! 1.00000000000,0.0500000000000,62.8238576023,3.14119288012
//! ```
//!
//! Comment lines carry the metadata and precede the header. Numbers are
//! written with 12 significant digits and a `.` decimal separator.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "K,r,sigma_p_min,product";
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Relative tolerance for `product = sigma_p_min · r` after a text round trip.
const PRODUCT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    #[serde(rename = "K")]
    pub k: f64,
    pub r: f64,
    pub sigma_p_min: f64,
    pub product: f64,
}

/// Large-radius limit `ħ√|K|` of a hyperbolic curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Asymptote {
    #[serde(rename = "K")]
    pub k: f64,
    pub sigma_p_floor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundTable {
    pub hbar: f64,
    pub rows: Vec<BoundRow>,
    pub asymptotes: Vec<Asymptote>,
}

/// Formats `x` with [`SIGNIFICANT_DIGITS`] significant digits: fixed
/// notation for decimal exponents in `[-5, 12)`, scientific otherwise.
pub fn format_sig(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if !(-5..SIGNIFICANT_DIGITS as i32).contains(&exp) {
        return sci;
    }
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let mut out = String::with_capacity(digits.len() + 8);
    out.push_str(sign);
    if exp >= 0 {
        let split = exp as usize + 1;
        out.push_str(&digits[..split]);
        if split < digits.len() {
            out.push('.');
            out.push_str(&digits[split..]);
        }
    } else {
        out.push_str("0.");
        for _ in 0..(-exp - 1) {
            out.push('0');
        }
        out.push_str(&digits);
    }
    out
}

/// `x` rounded to [`SIGNIFICANT_DIGITS`] digits, for JSON output.
pub fn round_sig(x: f64) -> f64 {
    format_sig(x).parse().unwrap_or(x)
}

fn parse_number(field: &str, line: usize) -> Result<f64> {
    let v: f64 = field
        .trim()
        .parse()
        .map_err(|_| Error::Decode(format!("line {line}: `{field}` is not a number")))?;
    if !v.is_finite() {
        return Err(Error::Decode(format!(
            "line {line}: non-finite value `{field}`"
        )));
    }
    Ok(v)
}

impl BoundTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# hbar,{}", format_sig(self.hbar)).unwrap();
        for a in &self.asymptotes {
            writeln!(
                out,
                "# asymptote,{},{}",
                format_sig(a.k),
                format_sig(a.sigma_p_floor)
            )
            .unwrap();
        }
        writeln!(out, "{CSV_HEADER}").unwrap();
        for row in &self.rows {
            writeln!(
                out,
                "{},{},{},{}",
                format_sig(row.k),
                format_sig(row.r),
                format_sig(row.sigma_p_min),
                format_sig(row.product)
            )
            .unwrap();
        }
        out
    }

    /// Parses the CSV layout written by [`BoundTable::to_csv`] and checks
    /// the table invariants.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut hbar = None;
        let mut asymptotes = Vec::new();
        let mut rows = Vec::new();
        let mut seen_header = false;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if seen_header {
                    return Err(Error::Decode(format!(
                        "line {line_no}: metadata after header"
                    )));
                }
                let fields: Vec<&str> = comment.trim().split(',').collect();
                match fields.as_slice() {
                    ["hbar", v] => hbar = Some(parse_number(v, line_no)?),
                    ["asymptote", k, v] => asymptotes.push(Asymptote {
                        k: parse_number(k, line_no)?,
                        sigma_p_floor: parse_number(v, line_no)?,
                    }),
                    _ => {}
                }
                continue;
            }
            if !seen_header {
                if line.trim() != CSV_HEADER {
                    return Err(Error::Decode(format!(
                        "line {line_no}: expected header `{CSV_HEADER}`"
                    )));
                }
                seen_header = true;
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            let [k, r, s, p] = fields.as_slice() else {
                return Err(Error::Decode(format!(
                    "line {line_no}: expected 4 fields, found {}",
                    fields.len()
                )));
            };
            rows.push(BoundRow {
                k: parse_number(k, line_no)?,
                r: parse_number(r, line_no)?,
                sigma_p_min: parse_number(s, line_no)?,
                product: parse_number(p, line_no)?,
            });
        }
        if !seen_header {
            return Err(Error::Decode("missing header".into()));
        }
        let table = Self {
            hbar: hbar.unwrap_or(1.0),
            rows,
            asymptotes,
        };
        table.validate()?;
        Ok(table)
    }

    /// Rows ascend in `r` within each run of equal `K`, radii and bounds are
    /// positive, and `product = sigma_p_min · r`.
    pub fn validate(&self) -> Result<()> {
        if !(self.hbar > 0.0) || !self.hbar.is_finite() {
            return Err(Error::Decode(format!(
                "ħ must be positive, got {}",
                self.hbar
            )));
        }
        for (i, row) in self.rows.iter().enumerate() {
            let finite = [row.k, row.r, row.sigma_p_min, row.product]
                .iter()
                .all(|v| v.is_finite());
            if !finite || !(row.r > 0.0) || !(row.sigma_p_min >= 0.0) {
                return Err(Error::Decode(format!("row {i}: invalid values {row:?}")));
            }
            let expected = row.sigma_p_min * row.r;
            if (row.product - expected).abs() > PRODUCT_TOL * expected.abs().max(f64::MIN_POSITIVE)
            {
                return Err(Error::Decode(format!(
                    "row {i}: product {} differs from sigma_p_min·r = {expected}",
                    row.product
                )));
            }
            if i > 0 {
                let prev = &self.rows[i - 1];
                if prev.k == row.k && !(row.r > prev.r) {
                    return Err(Error::Decode(format!(
                        "row {i}: radii not ascending for K = {}",
                        row.k
                    )));
                }
            }
        }
        Ok(())
    }

    /// Rows of one curvature, in order.
    pub fn curve(&self, k: f64) -> impl Iterator<Item = &BoundRow> {
        self.rows.iter().filter(move |r| r.k == k)
    }

    /// Copy with every number rounded to the printed precision.
    pub fn rounded(&self) -> Self {
        Self {
            hbar: round_sig(self.hbar),
            rows: self
                .rows
                .iter()
                .map(|r| BoundRow {
                    k: round_sig(r.k),
                    r: round_sig(r.r),
                    sigma_p_min: round_sig(r.sigma_p_min),
                    product: round_sig(r.product),
                })
                .collect(),
            asymptotes: self
                .asymptotes
                .iter()
                .map(|a| Asymptote {
                    k: round_sig(a.k),
                    sigma_p_floor: round_sig(a.sigma_p_floor),
                })
                .collect(),
        }
    }
}

/// JSON envelope: the rows plus a metadata object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundDocument {
    pub metadata: BoundMetadata,
    pub rows: Vec<BoundRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundMetadata {
    pub tool: String,
    pub version: String,
    pub hbar: f64,
    pub asymptotes: Vec<Asymptote>,
    /// Echo of the producing configuration.
    #[serde(default)]
    pub config: serde_json::Value,
}

impl BoundDocument {
    pub fn new(table: &BoundTable, tool: &str, version: &str, config: serde_json::Value) -> Self {
        let t = table.rounded();
        Self {
            metadata: BoundMetadata {
                tool: tool.to_owned(),
                version: version.to_owned(),
                hbar: t.hbar,
                asymptotes: t.asymptotes,
                config,
            },
            rows: t.rows,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bound documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(text).map_err(|e| Error::Decode(e.to_string()))?;
        doc.table().validate()?;
        Ok(doc)
    }

    pub fn table(&self) -> BoundTable {
        BoundTable {
            hbar: self.metadata.hbar,
            rows: self.rows.clone(),
            asymptotes: self.metadata.asymptotes.clone(),
        }
    }
}
