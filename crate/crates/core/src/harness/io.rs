//! CSV datasets and traces, and the JSON model file.
//!
//! Floats are written with Rust's shortest round-trip formatting, so
//! re-reading any file reproduces the values bit for bit.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::control::ControlRow;
use crate::error::{Error, Result};
use crate::fuzzy::{MembershipFunction, MembershipKind, Partition, RuleBase};
use crate::learning::{Dataset, DatasetMeta, Sample};
use crate::plant::OpenLoopRow;

pub const DATASET_HEADER: &str = "t,y_ref,omega,v,y";
pub const EVAL_HEADER: &str = "t,omega,omega_star,error";
pub const CONTROL_HEADER: &str = "t,y_ref,y,v,omega_p,omega_comp,omega_ref,omega,error";
pub const OPEN_LOOP_HEADER: &str = "t,omega_ref,omega,v,y";

pub const MODEL_VERSION: u32 = 1;
pub const RULE_INDEX_CONVENTION: &str = "first-antecedent-fastest";

/// One acquisition sample of the closed-loop actuator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DataRow {
    pub t: f64,
    pub y_ref: f64,
    pub omega: f64,
    pub v: f64,
    pub y: f64,
}

impl DataRow {
    /// Inverse-model example `(y_ref, y, v) -> omega`.
    pub fn inverse_sample(&self) -> Sample {
        Sample::at(self.t, vec![self.y_ref, self.y, self.v], self.omega)
    }
}

pub fn inverse_dataset(rows: &[DataRow], dt: Option<f64>) -> Dataset {
    Dataset::with_meta(
        rows.iter().map(DataRow::inverse_sample).collect(),
        DatasetMeta {
            dt,
            input_names: ["y_ref", "y", "v"].map(String::from).to_vec(),
            output_name: "omega".into(),
        },
    )
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn push_row(out: &mut String, fields: &[f64]) {
    for (i, v) in fields.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write!(out, "{v}").unwrap();
    }
    out.push('\n');
}

pub fn dataset_csv(rows: &[DataRow], dt: f64) -> String {
    let mut out = format!("# dt={dt}\n{DATASET_HEADER}\n");
    for r in rows {
        push_row(&mut out, &[r.t, r.y_ref, r.omega, r.v, r.y]);
    }
    out
}

pub fn write_dataset(path: &Path, rows: &[DataRow], dt: f64) -> Result<()> {
    write_text(path, &dataset_csv(rows, dt))
}

/// Reads a dataset CSV. Columns are located by header name; extra columns
/// are ignored. Returns the rows and the `# dt=` value when present.
pub fn read_dataset(path: &Path) -> Result<(Vec<DataRow>, Option<f64>)> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let dt = text
        .lines()
        .take_while(|l| l.starts_with('#'))
        .find_map(|l| l.trim_start_matches('#').trim().strip_prefix("dt="))
        .and_then(|v| v.trim().parse().ok());

    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| Error::csv(path, e))?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::MissingColumn {
                path: path.to_path_buf(),
                column: name.into(),
            })
    };
    let idx = [
        col("t")?,
        col("y_ref")?,
        col("omega")?,
        col("v")?,
        col("y")?,
    ];

    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::csv(path, e))?;
        let mut vals = [0.0; 5];
        for (v, &i) in vals.iter_mut().zip(&idx) {
            let field = record.get(i).unwrap_or("");
            *v = field.parse().map_err(|_| {
                Error::InvalidConfig(format!(
                    "{}: line {}: bad number `{field}`",
                    path.display(),
                    record.position().map_or(0, |p| p.line())
                ))
            })?;
        }
        rows.push(DataRow {
            t: vals[0],
            y_ref: vals[1],
            omega: vals[2],
            v: vals[3],
            y: vals[4],
        });
    }
    Ok((rows, dt))
}

/// Per-sample evaluation output. Samples with no active rule leave
/// `omega_star` and `error` empty.
pub fn eval_csv(data: &Dataset, predictions: &[Option<f64>]) -> String {
    let mut out = format!("{EVAL_HEADER}\n");
    for (s, p) in data.iter().zip(predictions) {
        match p {
            Some(p) => push_row(&mut out, &[s.t, s.y, *p, p - s.y]),
            None => writeln!(out, "{},{},,", s.t, s.y).unwrap(),
        }
    }
    out
}

pub fn control_csv(trace: &[ControlRow]) -> String {
    let mut out = format!("{CONTROL_HEADER}\n");
    for r in trace {
        push_row(
            &mut out,
            &[
                r.t,
                r.y_ref,
                r.y,
                r.v,
                r.omega_p,
                r.omega_comp,
                r.omega_ref,
                r.omega,
                r.error,
            ],
        );
    }
    out
}

pub fn open_loop_csv(rows: &[OpenLoopRow]) -> String {
    let mut out = format!("{OPEN_LOOP_HEADER}\n");
    for r in rows {
        push_row(&mut out, &[r.t, r.omega_ref, r.omega, r.v, r.y]);
    }
    out
}

/// On-disk form of a [`RuleBase`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub version: u32,
    pub rule_index: String,
    pub antecedents: Vec<AntecedentDescriptor>,
    pub conclusions: Vec<f64>,
    pub support_flags: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AntecedentDescriptor {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
    pub kind: MembershipKind,
    pub centers: Vec<f64>,
    pub widths: Vec<f64>,
}

impl ModelFile {
    pub fn from_rule_base(rb: &RuleBase) -> Self {
        let antecedents = rb
            .antecedents()
            .iter()
            .map(|p| AntecedentDescriptor {
                name: p.name().to_string(),
                lo: p.lo(),
                hi: p.hi(),
                kind: p.functions()[0].kind(),
                centers: p.functions().iter().map(|f| f.center()).collect(),
                widths: p.functions().iter().map(|f| f.width()).collect(),
            })
            .collect();
        Self {
            version: MODEL_VERSION,
            rule_index: RULE_INDEX_CONVENTION.into(),
            antecedents,
            conclusions: rb.conclusions().to_vec(),
            support_flags: rb.support_flags().to_vec(),
        }
    }

    pub fn to_rule_base(&self) -> Result<RuleBase> {
        if self.version != MODEL_VERSION {
            return Err(Error::ModelMismatch(format!(
                "unsupported model version {}",
                self.version
            )));
        }
        if self.rule_index != RULE_INDEX_CONVENTION {
            return Err(Error::ModelMismatch(format!(
                "unsupported rule index convention `{}`",
                self.rule_index
            )));
        }
        let partitions = self
            .antecedents
            .iter()
            .map(|a| {
                if a.centers.len() != a.widths.len() {
                    return Err(Error::ModelMismatch(format!(
                        "antecedent `{}` has {} centers and {} widths",
                        a.name,
                        a.centers.len(),
                        a.widths.len()
                    )));
                }
                let functions = a
                    .centers
                    .iter()
                    .zip(&a.widths)
                    .map(|(&c, &w)| MembershipFunction::new(a.kind, c, w))
                    .collect::<Result<Vec<_>>>()?;
                Partition::from_functions(&a.name, a.lo, a.hi, functions)
            })
            .collect::<Result<Vec<_>>>()?;
        RuleBase::from_parts(
            partitions,
            self.conclusions.clone(),
            self.support_flags.clone(),
        )
        .map_err(|e| Error::ModelMismatch(e.to_string()))
    }

    pub fn input_names(&self) -> Vec<&str> {
        self.antecedents.iter().map(|a| a.name.as_str()).collect()
    }
}

pub fn model_json(rb: &RuleBase) -> String {
    let mut s = serde_json::to_string_pretty(&ModelFile::from_rule_base(rb))
        .expect("model serialization is infallible for finite values");
    s.push('\n');
    s
}

pub fn save_model(path: &Path, rb: &RuleBase) -> Result<()> {
    write_text(path, &model_json(rb))
}

pub fn parse_model(text: &str) -> std::result::Result<ModelFile, serde_json::Error> {
    serde_json::from_str(text)
}

pub fn load_model(path: &Path) -> Result<RuleBase> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let file = parse_model(&text).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })?;
    file.to_rule_base()
}

pub fn save_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })?;
    s.push('\n');
    write_text(path, &s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model() -> RuleBase {
        let a = Partition::uniform("y_ref", 0.0, 0.2, 7, MembershipKind::Gaussian, 0.6).unwrap();
        let b = Partition::uniform("y", 0.0, 0.2, 3, MembershipKind::Triangular, 1.0).unwrap();
        let mut rb = RuleBase::zeros(vec![a, b]).unwrap();
        for (l, w) in rb.conclusions_mut().iter_mut().enumerate() {
            *w = (l as f64).sqrt() * 1234.5678901 - 1e-17;
        }
        rb.set_support(3, false);
        rb
    }

    #[test]
    fn model_round_trip_is_exact() {
        let rb = model();
        let back = parse_model(&model_json(&rb))
            .unwrap()
            .to_rule_base()
            .unwrap();
        assert_eq!(back, rb);
    }

    #[test]
    fn model_load_checks_lengths() {
        let mut file = ModelFile::from_rule_base(&model());
        file.conclusions.pop();
        assert!(matches!(file.to_rule_base(), Err(Error::ModelMismatch(_))));
        let mut file = ModelFile::from_rule_base(&model());
        file.rule_index = "last-antecedent-fastest".into();
        assert!(file.to_rule_base().is_err());
        let mut file = ModelFile::from_rule_base(&model());
        file.antecedents[0].widths.pop();
        assert!(file.to_rule_base().is_err());
    }

    #[test]
    fn dataset_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        let rows = vec![
            DataRow {
                t: 0.0,
                y_ref: 0.1,
                omega: -712.25,
                v: 1e-7,
                y: 0.1 / 3.0,
            },
            DataRow {
                t: 0.01,
                y_ref: 0.2,
                omega: 3000.0,
                v: -0.0966,
                y: 0.0,
            },
        ];
        write_dataset(&path, &rows, 0.01).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("# dt=0.01\nt,y_ref,omega,v,y\n"));
        let (back, dt) = read_dataset(&path).unwrap();
        assert_eq!(back, rows);
        assert_eq!(dt, Some(0.01));
    }

    #[test]
    fn missing_column_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        fs::write(&path, "t,y_ref,v,y\n0,0,0,0\n").unwrap();
        match read_dataset(&path) {
            Err(Error::MissingColumn { column, .. }) => assert_eq!(column, "omega"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn eval_rows_leave_gaps_for_unsupported() {
        let data = Dataset::new(vec![
            Sample::at(0.5, vec![0.0], 2.0),
            Sample::at(1.0, vec![0.0], 1.0),
        ]);
        let csv = eval_csv(&data, &[Some(2.5), None]);
        assert_eq!(csv, "t,omega,omega_star,error\n0.5,2,2.5,0.5\n1,1,,\n");
    }
}
