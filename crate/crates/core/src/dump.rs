//! JSON and CSV serialization of matrices, vectors and verification reports.
//! Coefficients are written as canonical strings, so dumping, parsing and
//! dumping again reproduces the same bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Rf;
use crate::linalg::{SparseMatrix, SparseVec};
use crate::rep::{LinearOperator, ModuleSpec, MultiIndex, Space, Vector};

/// Serde adapter writing a `BigRational` as `"p/q"` (or `"p"`).
pub mod rational_string {
    use num_rational::BigRational;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).map_err(de::Error::custom)
    }
}

/// Serde adapter for `BTreeMap<usize, Rf>` with string coefficients.
pub mod rf_map {
    use std::collections::BTreeMap;

    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

    use crate::field::Rf;

    pub fn serialize<S: Serializer>(m: &BTreeMap<usize, Rf>, s: S) -> Result<S::Ok, S::Error> {
        let strings: BTreeMap<usize, String> = m.iter().map(|(k, v)| (*k, v.to_string())).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<usize, Rf>, D::Error> {
        let strings = BTreeMap::<usize, String>::deserialize(d)?;
        strings
            .into_iter()
            .map(|(k, v)| Rf::parse(&v).map(|r| (k, r)).map_err(de::Error::custom))
            .collect()
    }
}

/// Parses `"p/q"`, `"p"` or a decimal-free signed integer pair.
pub fn parse_rational(s: &str) -> Result<num_rational::BigRational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: num_bigint::BigInt = num.parse().map_err(|_| bad())?;
    let den: num_bigint::BigInt = den.parse().map_err(|_| bad())?;
    if den == num_bigint::BigInt::from(0) {
        return Err(bad());
    }
    Ok(num_rational::BigRational::new(num, den))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MatrixLabels {
    pub rows: Vec<Vec<MultiIndex>>,
    pub cols: Vec<Vec<MultiIndex>>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MatrixDump {
    pub rows: usize,
    pub cols: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<MatrixLabels>,
    pub entries: Vec<(usize, usize, String)>,
}

impl MatrixDump {
    pub fn from_matrix(m: &SparseMatrix, labels: Option<MatrixLabels>) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            labels,
            entries: m.iter().map(|(r, c, v)| (r, c, v.to_string())).collect(),
        }
    }

    pub fn from_operator(op: &LinearOperator) -> Self {
        let labels = MatrixLabels {
            rows: (0..op.codomain().dim()).map(|i| op.codomain().label(i)).collect(),
            cols: (0..op.domain().dim()).map(|i| op.domain().label(i)).collect(),
        };
        Self::from_matrix(op.matrix(), Some(labels))
    }

    pub fn to_matrix(&self) -> Result<SparseMatrix> {
        if let Some(l) = &self.labels {
            if l.rows.len() != self.rows || l.cols.len() != self.cols {
                return Err(Error::Parse("label count does not match dimensions".into()));
            }
        }
        let mut triplets = Vec::with_capacity(self.entries.len());
        for (r, c, s) in &self.entries {
            if *r >= self.rows || *c >= self.cols {
                return Err(Error::Parse(format!("entry ({r}, {c}) out of range")));
            }
            triplets.push((*r, *c, Rf::parse(s)?));
        }
        Ok(SparseMatrix::from_triplets(self.rows, self.cols, triplets))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("matrix dump serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// `row_label,col_label,coeff` lines (indices when there are no labels).
    pub fn to_csv(&self) -> String {
        let label = |side: &[Vec<MultiIndex>], i: usize| -> String {
            match side.get(i) {
                Some(l) => l.iter().map(|a| a.to_string()).collect::<Vec<_>>().join("⊗"),
                None => i.to_string(),
            }
        };
        let mut out = String::from("row,col,coeff\n");
        for (r, c, v) in &self.entries {
            let (rl, cl) = match &self.labels {
                Some(l) => (label(&l.rows, *r), label(&l.cols, *c)),
                None => (r.to_string(), c.to_string()),
            };
            out.push_str(&format!("{},{},{}\n", csv_field(&rl), csv_field(&cl), csv_field(v)));
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Serializes a matrix (canonical coefficient strings).
pub fn dump_matrix(m: &SparseMatrix) -> String {
    MatrixDump::from_matrix(m, None).to_json()
}

pub fn parse_matrix(s: &str) -> Result<SparseMatrix> {
    MatrixDump::from_json(s)?.to_matrix()
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct VectorEntry {
    pub index: Vec<MultiIndex>,
    pub coeff: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct VectorDump {
    pub space: Vec<ModuleSpec>,
    pub entries: Vec<VectorEntry>,
}

impl VectorDump {
    pub fn from_vector(v: &Vector) -> Self {
        Self {
            space: v.space().specs(),
            entries: v
                .entries()
                .map(|(index, c)| VectorEntry { index, coeff: c.to_string() })
                .collect(),
        }
    }

    pub fn to_vector(&self) -> Result<Vector> {
        let space = Space::from_specs(&self.space)?;
        let mut coeffs = SparseVec::new();
        for e in &self.entries {
            let idx = space
                .index_of(&e.index)
                .ok_or_else(|| Error::Parse(format!("index {:?} not in the space", e.index)))?;
            let c = Rf::parse(&e.coeff)?;
            if !c.is_zero() {
                coeffs.insert(idx, c);
            }
        }
        Ok(Vector::from_coeffs(&space, coeffs))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("vector dump serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn dump_vector(v: &Vector) -> String {
    VectorDump::from_vector(v).to_json()
}

pub fn parse_vector(s: &str) -> Result<Vector> {
    VectorDump::from_json(s)?.to_vector()
}

/// One verification outcome.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Report {
    pub proposition: String,
    pub context: BTreeMap<String, serde_json::Value>,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Report {
    pub fn new(proposition: impl Into<String>) -> Self {
        Self {
            proposition: proposition.into(),
            context: BTreeMap::new(),
            expected: String::new(),
            computed: String::new(),
            pass: false,
        }
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        let v = serde_json::to_value(value).expect("context value serializes");
        self.context.insert(key.to_string(), v);
        self
    }

    pub fn outcome(mut self, expected: impl ToString, computed: impl ToString, pass: bool) -> Self {
        self.expected = expected.to_string();
        self.computed = computed.to_string();
        self.pass = pass;
        self
    }

    pub fn line(&self) -> String {
        let ctx = serde_json::to_string(&self.context).expect("context serializes");
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        format!("{verdict} {} {ctx}", self.proposition)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::qint_rf;
    use crate::rep::{generator_operator, rational, Generator};

    #[test]
    fn matrix_round_trip_is_byte_identical() {
        let m = SparseMatrix::from_triplets(
            2,
            3,
            vec![
                (0, 1, qint_rf(3)),
                (1, 2, (Rf::q() - Rf::one()).inv().unwrap()),
                (1, 0, Rf::from_int(-7)),
            ],
        );
        let a = dump_matrix(&m);
        let back = parse_matrix(&a).unwrap();
        assert_eq!(back, m);
        assert_eq!(dump_matrix(&back), a);
    }

    #[test]
    fn operator_dump_carries_labels() {
        let s = Space::simple(ModuleSpec::vector(2, 1, rational(2, 1)).unwrap().build());
        let op = generator_operator(&s, Generator::e(0)).unwrap();
        let d = MatrixDump::from_operator(&op);
        let json = d.to_json();
        let again = MatrixDump::from_json(&json).unwrap();
        assert_eq!(again.to_json(), json);
        assert_eq!(&again.to_matrix().unwrap(), op.matrix());
        assert!(d.to_csv().starts_with("row,col,coeff\n"));
    }

    #[test]
    fn vector_round_trip() {
        let s = Space::from_specs(&[
            ModuleSpec::vector(2, 1, rational(1, 1)).unwrap(),
            ModuleSpec::covector(2, 1, rational(3, 5)).unwrap(),
        ])
        .unwrap();
        let mut coeffs = SparseVec::new();
        coeffs.insert(3, Rf::q_pow(-2));
        coeffs.insert(7, qint_rf(2));
        let v = Vector::from_coeffs(&s, coeffs);
        let a = dump_vector(&v);
        let w = parse_vector(&a).unwrap();
        assert_eq!(w.coeffs(), v.coeffs());
        assert_eq!(dump_vector(&w), a);
        assert!(a.contains("\"3/5\""));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_matrix("{\"rows\":1,\"cols\":1,\"entries\":[[0,3,\"1\"]]}").is_err());
        assert!(parse_matrix("{\"rows\":1,\"cols\":1,\"entries\":[[0,0,\"q^\"]]}").is_err());
        assert!(parse_rational("3/0").is_err());
        assert_eq!(parse_rational(" -6/4 ").unwrap(), rational(-3, 2));
    }
}
