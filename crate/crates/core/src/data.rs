//! Plain serializable carriers for complex arrays (split real/imaginary parts).

use nalgebra::{Complex, DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::linalg::C64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexVector {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexMatrix {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl From<&DVector<C64>> for ComplexVector {
    fn from(v: &DVector<C64>) -> Self {
        ComplexVector {
            re: v.iter().map(|z| z.re).collect(),
            im: v.iter().map(|z| z.im).collect(),
        }
    }
}

impl From<&ComplexVector> for DVector<C64> {
    fn from(v: &ComplexVector) -> Self {
        DVector::from_iterator(
            v.re.len(),
            v.re.iter().zip(&v.im).map(|(&re, &im)| Complex::new(re, im)),
        )
    }
}

impl From<&DMatrix<C64>> for ComplexMatrix {
    fn from(a: &DMatrix<C64>) -> Self {
        let rows = |f: fn(&C64) -> f64| -> Vec<Vec<f64>> {
            (0..a.nrows())
                .map(|i| (0..a.ncols()).map(|j| f(&a[(i, j)])).collect())
                .collect()
        };
        ComplexMatrix {
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }
}

impl ComplexMatrix {
    /// Returns `None` when the real and imaginary parts are ragged or differ
    /// in shape.
    pub fn to_matrix(&self) -> Option<DMatrix<C64>> {
        let rows = self.re.len();
        let cols = self.re.first().map_or(0, Vec::len);
        if self.im.len() != rows
            || self.re.iter().chain(&self.im).any(|r| r.len() != cols)
        {
            return None;
        }
        Some(DMatrix::from_fn(rows, cols, |i, j| {
            Complex::new(self.re[i][j], self.im[i][j])
        }))
    }
}

/// `#[serde(with = "vector_serde")]` adapter for `DVector<C64>`.
pub(crate) mod vector_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &DVector<C64>, s: S) -> Result<S::Ok, S::Error> {
        ComplexVector::from(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<DVector<C64>, D::Error> {
        let v = ComplexVector::deserialize(d)?;
        if v.re.len() != v.im.len() {
            return Err(serde::de::Error::custom("re/im length mismatch"));
        }
        Ok(DVector::from(&v))
    }
}
