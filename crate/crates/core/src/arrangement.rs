//! Affine hyperplane arrangements over the rationals.
//!
//! Hyperplanes are stored in a canonical scaling (first nonzero normal entry
//! equal to one), so equality of hyperplanes is equality of their fields.
//! Hyperplane order is significant: deletion and restriction always take an
//! explicit pivot index.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::{format_rational, parse_rational, Field, Matrix, Rationals};

/// The locus `normal · x = offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    normal: Vec<BigRational>,
    offset: BigRational,
}

impl Hyperplane {
    /// Canonicalizes so that the first nonzero normal entry is one. Returns
    /// `None` for a zero normal.
    pub fn new(normal: Vec<BigRational>, offset: BigRational) -> Option<Self> {
        let lead = normal.iter().find(|c| !c.is_zero())?.clone();
        let normal = normal.into_iter().map(|c| c / &lead).collect();
        Some(Hyperplane { normal, offset: offset / lead })
    }

    pub fn from_i64(normal: &[i64], offset: i64) -> Option<Self> {
        let q = Rationals;
        Self::new(normal.iter().map(|&v| q.from_i64(v)).collect(), q.from_i64(offset))
    }

    pub fn normal(&self) -> &[BigRational] {
        &self.normal
    }

    pub fn offset(&self) -> &BigRational {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// Column of the leading one in the normal.
    pub fn lead_column(&self) -> usize {
        self.normal.iter().position(|c| !c.is_zero()).expect("canonical normal is nonzero")
    }

    /// `[normal | offset]`.
    pub fn augmented_row(&self) -> Vec<BigRational> {
        let mut row = self.normal.clone();
        row.push(self.offset.clone());
        row
    }

    pub fn contains_point(&self, x: &[BigRational]) -> bool {
        let lhs: BigRational = self.normal.iter().zip(x).map(|(a, b)| a * b).sum();
        lhs == self.offset
    }

    fn to_json(&self) -> Value {
        json!({
            "normal": self.normal.iter().map(format_rational).collect::<Vec<_>>(),
            "offset": format_rational(&self.offset),
        })
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.normal.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let var = format!("x{}", i + 1);
            let neg = *c < BigRational::zero();
            let abs = if neg { -c } else { c.clone() };
            let sign = match (first, neg) {
                (true, true) => "-".to_string(),
                (true, false) => String::new(),
                (false, true) => " - ".to_string(),
                (false, false) => " + ".to_string(),
            };
            if abs.is_one() {
                write!(f, "{sign}{var}")?;
            } else {
                write!(f, "{sign}{}{var}", format_rational(&abs))?;
            }
            first = false;
        }
        write!(f, " = {}", format_rational(&self.offset))
    }
}

/// A finite ordered list of pairwise distinct affine hyperplanes in `C^n`.
///
/// Arrangements read from input live in dimension at least one; a restriction
/// of an arrangement in `C^1` lands in `C^0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    ambient_dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

/// Built-in families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `x_i = x_j` for `i < j`.
    Braid { n: usize },
    /// `x_i = 0`.
    Boolean { n: usize },
    /// `m` affine hyperplanes in general position from the moment curve.
    Generic { n: usize, m: usize },
}

impl Family {
    pub fn from_name(name: &str, n: Option<usize>, m: Option<usize>) -> Result<Family> {
        let need_n = || match n {
            Some(n) if n >= 1 => Ok(n),
            Some(_) => Err(Error::InvalidParams("n must be at least 1".into())),
            None => Err(Error::InvalidParams(format!("family {name} needs --n"))),
        };
        match name {
            "braid" | "boolean" => {
                if m.is_some() {
                    return Err(Error::InvalidParams(format!("family {name} takes no m")));
                }
                let n = need_n()?;
                Ok(if name == "braid" { Family::Braid { n } } else { Family::Boolean { n } })
            }
            "generic" => {
                let n = need_n()?;
                let m = m.ok_or_else(|| Error::InvalidParams("family generic needs --m".into()))?;
                Ok(Family::Generic { n, m })
            }
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HyperplaneDoc {
    normal: Vec<String>,
    offset: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrangementDoc {
    ambient_dim: usize,
    hyperplanes: Vec<HyperplaneDoc>,
}

impl Arrangement {
    /// Validates dimensions and distinctness.
    pub fn new(ambient_dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.dim() != ambient_dim {
                return Err(Error::DimensionMismatch(format!(
                    "hyperplane {i} has {} coordinates in ambient dimension {ambient_dim}",
                    h.dim()
                )));
            }
            if let Some(j) = hyperplanes[..i].iter().position(|g| g == h) {
                return Err(Error::DuplicateHyperplane { first: j, second: i });
            }
        }
        Ok(Arrangement { ambient_dim, hyperplanes })
    }

    pub fn empty(ambient_dim: usize) -> Self {
        Arrangement { ambient_dim, hyperplanes: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn augmented_rows(&self) -> Vec<Vec<BigRational>> {
        self.hyperplanes.iter().map(Hyperplane::augmented_row).collect()
    }

    /// Parses the JSON arrangement format.
    pub fn parse(text: &[u8]) -> Result<Self> {
        let doc: ArrangementDoc =
            serde_json::from_slice(text).map_err(|e| Error::MalformedJson(e.to_string()))?;
        if doc.ambient_dim == 0 {
            return Err(Error::InvalidParams("ambient_dim must be at least 1".into()));
        }
        let mut hyperplanes = Vec::with_capacity(doc.hyperplanes.len());
        for (index, h) in doc.hyperplanes.into_iter().enumerate() {
            if h.normal.len() != doc.ambient_dim {
                return Err(Error::DimensionMismatch(format!(
                    "hyperplane {index} has {} coordinates, ambient_dim is {}",
                    h.normal.len(),
                    doc.ambient_dim
                )));
            }
            let normal = h.normal.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
            let offset = parse_rational(&h.offset)?;
            hyperplanes.push(Hyperplane::new(normal, offset).ok_or(Error::ZeroNormal { index })?);
        }
        Arrangement::new(doc.ambient_dim, hyperplanes)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ambient_dim": self.ambient_dim,
            "hyperplanes": self.hyperplanes.iter().map(Hyperplane::to_json).collect::<Vec<_>>(),
        })
    }

    /// Pretty JSON with sorted keys.
    pub fn serialize(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("json values serialize")
    }

    pub fn builtin(family: Family) -> Result<Self> {
        let hyperplanes = match family {
            Family::Braid { n } | Family::Boolean { n } | Family::Generic { n, .. } if n == 0 => {
                return Err(Error::InvalidParams("n must be at least 1".into()))
            }
            Family::Braid { n } => {
                let mut hs = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        let mut normal = vec![0; n];
                        normal[i] = 1;
                        normal[j] = -1;
                        hs.push(Hyperplane::from_i64(&normal, 0).expect("nonzero normal"));
                    }
                }
                hs
            }
            Family::Boolean { n } => (0..n)
                .map(|i| {
                    let mut normal = vec![0; n];
                    normal[i] = 1;
                    Hyperplane::from_i64(&normal, 0).expect("nonzero normal")
                })
                .collect(),
            Family::Generic { n, m } => (1..=m)
                .map(|i| {
                    let base = BigInt::from(i);
                    let powers: Vec<BigRational> = (0..=n as u32)
                        .map(|k| BigRational::from_integer(num_traits::pow(base.clone(), k as usize)))
                        .collect();
                    let offset = powers[n].clone();
                    Hyperplane::new(powers[..n].to_vec(), offset).expect("leading entry is one")
                })
                .collect(),
        };
        let n = match family {
            Family::Braid { n } | Family::Boolean { n } | Family::Generic { n, .. } => n,
        };
        Arrangement::new(n, hyperplanes)
    }

    fn check_index(&self, pivot: usize) -> Result<()> {
        if pivot >= self.len() {
            return Err(Error::IndexOutOfRange { index: pivot, len: self.len() });
        }
        Ok(())
    }

    /// `A − H_pivot`, order otherwise preserved.
    pub fn deletion(&self, pivot: usize) -> Result<Self> {
        self.check_index(pivot)?;
        let mut hyperplanes = self.hyperplanes.clone();
        hyperplanes.remove(pivot);
        Ok(Arrangement { ambient_dim: self.ambient_dim, hyperplanes })
    }

    /// The arrangement induced on `H_pivot`, in the coordinates of the
    /// returned chart. Hyperplanes parallel to `H_pivot` are dropped and the
    /// traces are deduplicated, keeping first occurrences.
    pub fn restriction(&self, pivot: usize) -> Result<(Self, Embedding)> {
        if self.ambient_dim == 0 {
            return Err(Error::ZeroAmbient);
        }
        self.check_index(pivot)?;
        let chart = Embedding::for_hyperplane(&self.hyperplanes[pivot]);
        let mut traces: Vec<Hyperplane> = Vec::new();
        for (i, h) in self.hyperplanes.iter().enumerate() {
            if i == pivot {
                continue;
            }
            if let Some(trace) = chart.pull_back(h) {
                if !traces.contains(&trace) {
                    traces.push(trace);
                }
            }
        }
        Ok((Arrangement { ambient_dim: self.ambient_dim - 1, hyperplanes: traces }, chart))
    }

    /// Same hyperplanes in a new order. `order` must be a permutation.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let hyperplanes = order
            .iter()
            .map(|&i| {
                self.hyperplanes
                    .get(i)
                    .cloned()
                    .ok_or(Error::IndexOutOfRange { index: i, len: self.len() })
            })
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(self.ambient_dim, hyperplanes)
    }
}

/// A parametrization `y ↦ base_point + basis·y` of a hyperplane `H_0 ⊂ C^n`
/// by `C^{n−1}`.
///
/// The chart solves `H_0` for its leading column: the base point is
/// `offset · e_lead` and the basis columns are `e_j − a_j e_lead` for the
/// remaining columns `j` in increasing order, so the chart coordinates of a
/// point of `H_0` are its non-leading coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Embedding {
    hyperplane: Hyperplane,
    base_point: Vec<BigRational>,
    basis: Matrix<Rationals>,
    chart_columns: Vec<usize>,
}

impl Embedding {
    pub fn for_hyperplane(h: &Hyperplane) -> Self {
        let n = h.dim();
        let lead = h.lead_column();
        let mut base_point = vec![BigRational::zero(); n];
        base_point[lead] = h.offset.clone();
        let chart_columns: Vec<usize> = (0..n).filter(|&j| j != lead).collect();
        let mut basis = vec![vec![BigRational::zero(); n - 1]; n];
        for (k, &j) in chart_columns.iter().enumerate() {
            basis[j][k] = BigRational::one();
            basis[lead][k] = -h.normal[j].clone();
        }
        let basis = Matrix::from_rows(Rationals, n - 1, basis).expect("rectangular basis");
        Embedding { hyperplane: h.clone(), base_point, basis, chart_columns }
    }

    pub fn hyperplane(&self) -> &Hyperplane {
        &self.hyperplane
    }

    pub fn base_point(&self) -> &[BigRational] {
        &self.base_point
    }

    /// `n × (n−1)` matrix whose columns span the direction space of `H_0`.
    pub fn basis(&self) -> &Matrix<Rationals> {
        &self.basis
    }

    pub fn ambient_dim(&self) -> usize {
        self.base_point.len()
    }

    /// `base_point + basis·y`.
    pub fn embed_point(&self, y: &[BigRational]) -> Result<Vec<BigRational>> {
        if y.len() != self.chart_columns.len() {
            return Err(Error::DimensionMismatch(format!(
                "chart point has {} coordinates, expected {}",
                y.len(),
                self.chart_columns.len()
            )));
        }
        Ok((0..self.ambient_dim())
            .map(|i| {
                let row = self.basis.row(i);
                let lin: BigRational = row.iter().zip(y).map(|(a, b)| a * b).sum();
                &self.base_point[i] + lin
            })
            .collect())
    }

    /// Substitutes the chart into `h`. `None` when the result is constant,
    /// i.e. `h` is parallel to or contains `H_0`.
    fn pull_back(&self, h: &Hyperplane) -> Option<Hyperplane> {
        let n = self.ambient_dim();
        let normal: Vec<BigRational> = (0..n - 1)
            .map(|k| (0..n).map(|i| &h.normal[i] * self.basis.get(i, k)).sum())
            .collect();
        let shift: BigRational = h.normal.iter().zip(&self.base_point).map(|(a, b)| a * b).sum();
        Hyperplane::new(normal, &h.offset - shift)
    }

    /// Rewrites an augmented system in chart coordinates as the augmented
    /// system of the same point set in `C^n`, in reduced row-echelon form
    /// with zero rows removed.
    pub fn embed_system(&self, system: &Matrix<Rationals>) -> Result<Matrix<Rationals>> {
        let k = self.chart_columns.len();
        if system.cols() != k + 1 {
            return Err(Error::DimensionMismatch(format!(
                "system has {} columns, chart expects {}",
                system.cols(),
                k + 1
            )));
        }
        let n = self.ambient_dim();
        let mut rows = vec![self.hyperplane.augmented_row()];
        for r in system.row_iter() {
            let mut row = vec![BigRational::zero(); n + 1];
            for (c, &j) in self.chart_columns.iter().enumerate() {
                row[j] = r[c].clone();
            }
            row[n] = r[k].clone();
            rows.push(row);
        }
        let m = Matrix::from_rows(Rationals, n + 1, rows)?;
        Ok(m.rref().without_zero_rows())
    }
}
