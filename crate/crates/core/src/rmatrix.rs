//! R-matrices: validation (Yang–Baxter, Hecke, invertibility) and the TOML
//! config format.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Series {
    A,
    /// Accepted by the config format only.
    BcdReserved,
}

impl Series {
    pub fn as_str(self) -> &'static str {
        match self {
            Series::A => "A",
            Series::BcdReserved => "BCD-reserved",
        }
    }
}

/// Whether the quantum determinant is set to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    SL,
    GL,
}

impl GroupKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupKind::SL => "SL",
            GroupKind::GL => "GL",
        }
    }
}

/// Entries `R^{ab}_{cd}` with 0-based indices; row `(a,b)`, column `(c,d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix {
    n: usize,
    series: Series,
    group: GroupKind,
    entries: Vec<Scalar>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(rename = "N")]
    n: usize,
    series: String,
    #[serde(default = "default_group")]
    group: String,
    #[serde(default)]
    entries: Vec<(usize, usize, usize, usize, String)>,
}

fn default_group() -> String {
    "SL".into()
}

impl RMatrix {
    /// Builds and validates.
    pub fn new(n: usize, series: Series, group: GroupKind, entries: &[(usize, usize, usize, usize, Scalar)]) -> Result<Self> {
        let r = Self::unchecked(n, series, group, entries)?;
        r.validate()?;
        Ok(r)
    }

    /// Builds without the algebraic checks; indices are still range-checked.
    pub fn unchecked(n: usize, series: Series, group: GroupKind, entries: &[(usize, usize, usize, usize, Scalar)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::RMatrix("dimension N must be positive".into()));
        }
        let mut table = vec![Scalar::zero(); n.pow(4)];
        for (a, b, c, d, v) in entries {
            for &i in [a, b, c, d] {
                if i >= n {
                    return Err(Error::RMatrix(format!("index {} out of range for N = {}", i + 1, n)));
                }
            }
            table[((a * n + b) * n + c) * n + d] = v.clone();
        }
        Ok(RMatrix {
            n,
            series,
            group,
            entries: table,
        })
    }

    /// The standard A-series solution for SL_q(N).
    pub fn standard(n: usize) -> Self {
        let mut e = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    e.push((a, a, a, a, Scalar::q()));
                } else {
                    e.push((a, b, a, b, Scalar::one()));
                }
                if a < b {
                    e.push((a, b, b, a, Scalar::lambda()));
                }
            }
        }
        Self::unchecked(n, Series::A, GroupKind::SL, &e).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn group(&self) -> GroupKind {
        self.group
    }

    pub fn with_group(mut self, group: GroupKind) -> Self {
        self.group = group;
        self
    }

    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> &Scalar {
        let n = self.n;
        &self.entries[((a * n + b) * n + c) * n + d]
    }

    pub fn matrix(&self) -> Matrix<Scalar> {
        let n = self.n;
        Matrix::from_fn(n * n, n * n, |r, c| self.get(r / n, r % n, c / n, c % n).clone())
    }

    /// `R⁻¹` in the same index layout.
    pub fn inverse_matrix(&self) -> Result<Matrix<Scalar>> {
        self.matrix().inverse().ok_or_else(|| Error::RMatrix(self.singular_witness()))
    }

    fn singular_witness(&self) -> String {
        let m = self.matrix();
        let n = self.n;
        for r in 0..m.rows() {
            if m.row(r).iter().all(|x| x.is_zero()) {
                return format!("singular R: row ({},{}) is zero", r / n + 1, r % n + 1);
            }
        }
        "singular R: rows are linearly dependent".into()
    }

    /// First `(a,b,c,d,e,f)` (1-based) where `R12 R13 R23` and
    /// `R23 R13 R12` differ.
    pub fn ybe_violation(&self) -> Option<[usize; 6]> {
        let n = self.n;
        let dim = n * n * n;
        let idx = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
        let split = |i: usize| (i / (n * n), (i / n) % n, i % n);
        let r12 = Matrix::from_fn(dim, dim, |r, c| {
            let ((a, b, x), (d, e, y)) = (split(r), split(c));
            if x == y {
                self.get(a, b, d, e).clone()
            } else {
                Scalar::zero()
            }
        });
        let r13 = Matrix::from_fn(dim, dim, |r, c| {
            let ((a, x, b), (d, y, e)) = (split(r), split(c));
            if x == y {
                self.get(a, b, d, e).clone()
            } else {
                Scalar::zero()
            }
        });
        let r23 = Matrix::from_fn(dim, dim, |r, c| {
            let ((x, a, b), (y, d, e)) = (split(r), split(c));
            if x == y {
                self.get(a, b, d, e).clone()
            } else {
                Scalar::zero()
            }
        });
        let lhs = r12.mul(&r13).mul(&r23);
        let rhs = r23.mul(&r13).mul(&r12);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        for e in 0..n {
                            for f in 0..n {
                                let (r, col) = (idx(a, b, c), idx(d, e, f));
                                if lhs.get(r, col) != rhs.get(r, col) {
                                    return Some([a + 1, b + 1, c + 1, d + 1, e + 1, f + 1]);
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// `R̂ = P R`, i.e. `R̂^{ab}_{cd} = R^{ba}_{cd}`.
    pub fn braided(&self) -> Matrix<Scalar> {
        let n = self.n;
        Matrix::from_fn(n * n, n * n, |r, c| self.get(r % n, r / n, c / n, c % n).clone())
    }

    /// First `(a,b,c,d)` (1-based) where `(R̂ − q)(R̂ + q⁻¹)` is nonzero.
    pub fn hecke_violation(&self) -> Option<[usize; 4]> {
        let n = self.n;
        let rh = self.braided();
        let id = Matrix::identity(n * n);
        let p = rh.sub(&id.scale(&Scalar::q())).mul(&rh.add(&id.scale(&Scalar::q_pow(-1))));
        for r in 0..n * n {
            for c in 0..n * n {
                if !p.get(r, c).is_zero() {
                    return Some([r / n + 1, r % n + 1, c / n + 1, c % n + 1]);
                }
            }
        }
        None
    }

    pub fn validate(&self) -> Result<()> {
        if self.matrix().inverse().is_none() {
            return Err(Error::RMatrix(self.singular_witness()));
        }
        if let Some(w) = self.ybe_violation() {
            return Err(Error::RMatrix(format!(
                "Yang-Baxter equation fails at (a,b,c,d,e,f) = ({},{},{},{},{},{})",
                w[0], w[1], w[2], w[3], w[4], w[5]
            )));
        }
        if self.series == Series::A {
            if let Some(w) = self.hecke_violation() {
                return Err(Error::RMatrix(format!(
                    "Hecke relation fails at R^({},{})_({},{})",
                    w[0], w[1], w[2], w[3]
                )));
            }
        }
        Ok(())
    }

    /// Parses and validates a config document.
    pub fn from_toml(text: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
        let series = match raw.series.as_str() {
            "A" => Series::A,
            "BCD-reserved" => Series::BcdReserved,
            other => return Err(Error::Config(format!("unknown series `{}`", other))),
        };
        let group = match raw.group.as_str() {
            "SL" => GroupKind::SL,
            "GL" => GroupKind::GL,
            other => return Err(Error::Config(format!("unknown group `{}`", other))),
        };
        let mut entries = Vec::with_capacity(raw.entries.len());
        for (a, b, c, d, v) in raw.entries {
            if [a, b, c, d].iter().any(|&i| i == 0 || i > raw.n) {
                return Err(Error::Config(format!(
                    "entry ({},{},{},{}) out of range for N = {}",
                    a, b, c, d, raw.n
                )));
            }
            entries.push((a - 1, b - 1, c - 1, d - 1, v.parse::<Scalar>()?));
        }
        Self::new(raw.n, series, group, &entries)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {}", path.display(), e)))?;
        Self::from_toml(&text)
    }

    /// Canonical config text: nonzero entries in index order.
    pub fn to_toml(&self) -> String {
        let n = self.n;
        let mut out = String::new();
        writeln!(out, "N = {}", n).unwrap();
        writeln!(out, "series = \"{}\"", self.series.as_str()).unwrap();
        writeln!(out, "group = \"{}\"", self.group.as_str()).unwrap();
        writeln!(out, "entries = [").unwrap();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let v = self.get(a, b, c, d);
                        if !v.is_zero() {
                            writeln!(out, "    [{}, {}, {}, {}, \"{}\"],", a + 1, b + 1, c + 1, d + 1, v).unwrap();
                        }
                    }
                }
            }
        }
        writeln!(out, "]").unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_sl2_is_valid() {
        let r = RMatrix::standard(2);
        assert_eq!(r.ybe_violation(), None);
        assert_eq!(r.hecke_violation(), None);
        r.validate().unwrap();
    }

    #[test]
    fn standard_sl3_is_valid() {
        RMatrix::standard(3).validate().unwrap();
    }

    #[test]
    fn identity_fails_hecke() {
        let e: Vec<_> = (0..2).flat_map(|a| (0..2).map(move |b| (a, b, a, b, Scalar::one()))).collect();
        let r = RMatrix::unchecked(2, Series::A, GroupKind::SL, &e).unwrap();
        assert_eq!(r.ybe_violation(), None);
        assert!(r.hecke_violation().is_some());
        assert!(matches!(r.validate(), Err(Error::RMatrix(m)) if m.contains("Hecke")));
    }

    #[test]
    fn zero_row_is_singular() {
        let e = vec![(0, 0, 0, 0, Scalar::q()), (1, 1, 1, 1, Scalar::q()), (0, 1, 0, 1, Scalar::one())];
        let r = RMatrix::unchecked(2, Series::A, GroupKind::SL, &e).unwrap();
        match r.validate() {
            Err(Error::RMatrix(m)) => assert!(m.contains("row (2,1) is zero"), "{}", m),
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn config_round_trip() {
        let text = RMatrix::standard(2).to_toml();
        let r = RMatrix::from_toml(&text).unwrap();
        assert_eq!(r, RMatrix::standard(2));
        assert_eq!(r.to_toml(), text);
    }

    #[test]
    fn config_errors() {
        assert!(matches!(RMatrix::from_toml("N = 2\nseries = \"E8\"\n"), Err(Error::Config(_))));
        assert!(matches!(
            RMatrix::from_toml("N = 1\nseries = \"A\"\nentries = [[1, 1, 1, 2, \"q\"]]\n"),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            RMatrix::from_toml("N = 1\nseries = \"A\"\nentries = [[1, 1, 1, 1, \"q +\"]]\n"),
            Err(Error::Syntax { .. })
        ));
    }
}
