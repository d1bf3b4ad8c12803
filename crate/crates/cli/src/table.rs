//! Sequence tables and their CSV / JSON renderings.

use std::collections::BTreeMap;
use std::io::Write;

use clap::ValueEnum;
use polybern_core::bernoulli::{
    bernoulli2nd_numbers, bernoulli2nd_poly, bernoulli_numbers, gregory_coefficients,
    higher_order_bernoulli,
};
use polybern_core::combinatorics::{StirlingKind, StirlingTriangle};
use polybern_core::polybernoulli::poly_b2nd_gf;
use polybern_core::rational::factorial;
use polybern_core::Rational;
use serde::{Deserialize, Serialize};

use crate::UsageError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SequenceKind {
    Bernoulli,
    Bernoulli2nd,
    Poly2nd,
    Stirling1,
    Stirling2,
    HigherOrder,
}

impl SequenceKind {
    pub fn name(self) -> &'static str {
        match self {
            SequenceKind::Bernoulli => "bernoulli",
            SequenceKind::Bernoulli2nd => "bernoulli2nd",
            SequenceKind::Poly2nd => "poly2nd",
            SequenceKind::Stirling1 => "stirling1",
            SequenceKind::Stirling2 => "stirling2",
            SequenceKind::HigherOrder => "higher-order",
        }
    }
}

/// `egf` reads `n! c_n`, `ogf` the raw coefficient `c_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Convention {
    #[default]
    Egf,
    Ogf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum TableFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Default)]
pub struct TableRequest {
    pub n_max: usize,
    pub k: Option<i64>,
    pub x: Option<Rational>,
    pub convention: Option<Convention>,
    pub l: Option<usize>,
    pub alpha: Option<i64>,
}

/// A named sequence with its parameters and exact values for
/// `n = 0..=n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceTable {
    pub sequence: String,
    pub params: BTreeMap<String, String>,
    pub entries: Vec<(usize, Rational)>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct Row {
    pub n: usize,
    pub value: String,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct TableDocument {
    pub sequence: String,
    pub params: BTreeMap<String, String>,
    pub entries: Vec<Row>,
}

fn reject(flag: &str, kind: SequenceKind) -> UsageError {
    UsageError(format!("{flag} is not valid with --kind {}", kind.name()))
}

pub fn build_table(kind: SequenceKind, req: &TableRequest) -> Result<SequenceTable, UsageError> {
    use SequenceKind::*;

    if req.k.is_some() && kind != Poly2nd {
        return Err(reject("-k", kind));
    }
    if req.convention.is_some() && kind != Bernoulli2nd {
        return Err(reject("--convention", kind));
    }
    if req.alpha.is_some() && kind != HigherOrder {
        return Err(reject("--alpha", kind));
    }
    let stirling = matches!(kind, Stirling1 | Stirling2);
    if req.l.is_some() && !stirling {
        return Err(reject("--l", kind));
    }
    if req.x.is_some() && stirling {
        return Err(reject("--x", kind));
    }

    let n_max = req.n_max;
    let mut params = BTreeMap::new();
    if let Some(x) = &req.x {
        params.insert("x".to_string(), x.to_string());
    }
    let x = req.x.clone().unwrap_or_default();

    let values: Vec<Rational> = match kind {
        Bernoulli => match &req.x {
            None => bernoulli_numbers(n_max),
            Some(x) => (0..=n_max)
                .map(|n| higher_order_bernoulli(n, 1, x).expect("order one"))
                .collect(),
        },
        Bernoulli2nd => {
            let convention = req.convention.unwrap_or_default();
            params.insert(
                "convention".to_string(),
                convention.to_possible_value().unwrap().get_name().to_string(),
            );
            match (&req.x, convention) {
                (None, Convention::Egf) => bernoulli2nd_numbers(n_max),
                (None, Convention::Ogf) => gregory_coefficients(n_max),
                (Some(x), convention) => (0..=n_max)
                    .map(|n| {
                        let v = bernoulli2nd_poly(n).eval(x);
                        match convention {
                            Convention::Egf => v,
                            Convention::Ogf => v / factorial(n),
                        }
                    })
                    .collect(),
            }
        }
        Poly2nd => {
            let k = req
                .k
                .ok_or_else(|| UsageError("--kind poly2nd requires -k <int>".into()))?;
            params.insert("k".to_string(), k.to_string());
            poly_b2nd_gf(n_max, k, &x).into_iter().map(|r| r.value).collect()
        }
        Stirling1 | Stirling2 => {
            let l = req.l.ok_or_else(|| {
                UsageError(format!("--kind {} requires --l <int>", kind.name()))
            })?;
            params.insert("l".to_string(), l.to_string());
            let mut triangle = StirlingTriangle::new(if kind == Stirling1 {
                StirlingKind::FirstSigned
            } else {
                StirlingKind::Second
            });
            (0..=n_max).map(|n| triangle.get(n, l)).collect()
        }
        HigherOrder => {
            if let Some(alpha) = req.alpha {
                if alpha < 0 {
                    return Err(UsageError(format!(
                        "negative order unsupported (--alpha {alpha})"
                    )));
                }
                params.insert("alpha".to_string(), alpha.to_string());
            } else {
                params.insert("alpha".to_string(), "n".to_string());
            }
            (0..=n_max)
                .map(|n| {
                    let alpha = req.alpha.unwrap_or(n as i64);
                    higher_order_bernoulli(n, alpha, &x).expect("order checked above")
                })
                .collect()
        }
    };

    Ok(SequenceTable {
        sequence: kind.name().to_string(),
        params,
        entries: values.into_iter().enumerate().collect(),
    })
}

impl SequenceTable {
    pub fn document(&self) -> TableDocument {
        TableDocument {
            sequence: self.sequence.clone(),
            params: self.params.clone(),
            entries: self
                .entries
                .iter()
                .map(|(n, v)| Row {
                    n: *n,
                    value: v.to_string(),
                })
                .collect(),
        }
    }

    pub fn write_csv(&self, out: impl Write) -> csv::Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        for row in self.document().entries {
            writer.serialize(row)?;
        }
        if self.entries.is_empty() {
            writer.write_record(["n", "value"])?;
        }
        writer.flush()?;
        Ok(())
    }

    pub fn write_json(&self, mut out: impl Write) -> std::io::Result<()> {
        serde_json::to_writer(&mut out, &self.document())?;
        writeln!(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use polybern_core::rational::{int, rat};

    fn values(kind: SequenceKind, req: TableRequest) -> Vec<Rational> {
        build_table(kind, &req)
            .unwrap()
            .entries
            .into_iter()
            .map(|(_, v)| v)
            .collect()
    }

    #[test]
    fn table_examples() {
        let req = TableRequest { n_max: 2, k: Some(2), ..Default::default() };
        assert_eq!(values(SequenceKind::Poly2nd, req), vec![int(1), rat(1, 4), rat(-13, 36)]);
        let req = TableRequest { n_max: 2, ..Default::default() };
        assert_eq!(values(SequenceKind::Bernoulli, req), vec![int(1), rat(-1, 2), rat(1, 6)]);
        let req = TableRequest { n_max: 1, ..Default::default() };
        assert_eq!(values(SequenceKind::Bernoulli2nd, req), vec![int(1), rat(1, 2)]);
    }

    #[test]
    fn conventions() {
        let ogf = TableRequest { n_max: 5, convention: Some(Convention::Ogf), ..Default::default() };
        assert_eq!(
            values(SequenceKind::Bernoulli2nd, ogf),
            vec![int(1), rat(1, 2), rat(-1, 12), rat(1, 24), rat(-19, 720), rat(3, 160)]
        );
        let at_zero = TableRequest {
            n_max: 5,
            x: Some(int(0)),
            convention: Some(Convention::Ogf),
            ..Default::default()
        };
        assert_eq!(values(SequenceKind::Bernoulli2nd, at_zero)[4], rat(-19, 720));
    }

    #[test]
    fn other_kinds() {
        let req = TableRequest { n_max: 5, l: Some(2), ..Default::default() };
        assert_eq!(
            values(SequenceKind::Stirling2, req.clone()),
            [0, 0, 1, 3, 7, 15].map(int).to_vec()
        );
        assert_eq!(
            values(SequenceKind::Stirling1, req),
            [0, 0, 1, -3, 11, -50].map(int).to_vec()
        );
        // B_n^(n)(x) at x = -1 equals b_n(-2)
        let req = TableRequest { n_max: 6, x: Some(int(-1)), ..Default::default() };
        let expected: Vec<_> = (0..=6).map(|n| bernoulli2nd_poly(n).eval(&int(-2))).collect();
        assert_eq!(values(SequenceKind::HigherOrder, req), expected);
        let req = TableRequest { n_max: 2, alpha: Some(2), x: Some(int(3)), ..Default::default() };
        assert_eq!(values(SequenceKind::HigherOrder, req)[2], int(9 - 6) + rat(5, 6));
    }

    #[test]
    fn invalid_combinations() {
        let bad = [
            (SequenceKind::Bernoulli, TableRequest { k: Some(1), ..Default::default() }),
            (SequenceKind::Poly2nd, TableRequest::default()),
            (SequenceKind::Stirling2, TableRequest::default()),
            (SequenceKind::Stirling1, TableRequest { l: Some(1), x: Some(int(1)), ..Default::default() }),
            (SequenceKind::Poly2nd, TableRequest { k: Some(1), convention: Some(Convention::Egf), ..Default::default() }),
            (SequenceKind::HigherOrder, TableRequest { alpha: Some(-1), ..Default::default() }),
            (SequenceKind::Bernoulli, TableRequest { l: Some(0), ..Default::default() }),
        ];
        for (kind, req) in bad {
            assert!(build_table(kind, &req).is_err(), "{kind:?} {req:?}");
        }
    }

    #[test]
    fn csv_and_json_render_the_same_rows() {
        let req = TableRequest { n_max: 4, k: Some(-2), x: Some(rat(1, 2)), ..Default::default() };
        let table = build_table(SequenceKind::Poly2nd, &req).unwrap();
        let mut csv_out = Vec::new();
        table.write_csv(&mut csv_out).unwrap();
        let csv_text = String::from_utf8(csv_out).unwrap();
        assert!(csv_text.starts_with("n,value\n0,1\n"));
        let mut json_out = Vec::new();
        table.write_json(&mut json_out).unwrap();
        let doc: TableDocument = serde_json::from_slice(&json_out).unwrap();
        assert_eq!(doc.sequence, "poly2nd");
        assert_eq!(doc.params["k"], "-2");
        assert_eq!(doc.params["x"], "1/2");
        let rows: Vec<Row> = csv::Reader::from_reader(csv_text.as_bytes())
            .deserialize()
            .collect::<Result<_, _>>()
            .unwrap();
        assert_eq!(rows, doc.entries);
    }
}
