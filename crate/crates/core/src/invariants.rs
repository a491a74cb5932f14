//! Poincaré and characteristic polynomials, the perverse length, and the
//! deletion-restriction identities.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exactalg::{Matrix, Rationals};
use crate::lattice::{build_lattice, system_json, IntersectionLattice, MobiusTable};

/// Integer polynomial in `t`, constant term first, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    /// `c·t^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// Integer strings, constant term first.
    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(|c| Value::String(c.to_string())).collect())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::new(coeffs)
    }
}

impl fmt::Display for IntPolynomial {
    /// Renders like `1 + 3t + 2t^2`, constant term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if k == 0 || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            f.write_str(&var)?;
        }
        Ok(())
    }
}

/// `Π(A,t) = Σ_F μ(F)(−t)^{codim F}` from a finished lattice.
pub fn poincare_from_lattice(l: &IntersectionLattice<Rationals>, mu: &MobiusTable) -> IntPolynomial {
    let mut coeffs = vec![BigInt::zero(); l.ambient_dim() + 1];
    for (i, flat) in l.flats().iter().enumerate() {
        let k = flat.codim();
        let term = if k % 2 == 0 { mu.get(i).clone() } else { -mu.get(i) };
        coeffs[k] += term;
    }
    IntPolynomial::new(coeffs)
}

/// `χ(A,t) = Σ_F μ(F) t^{dim F}` from a finished lattice.
pub fn characteristic_from_lattice(
    l: &IntersectionLattice<Rationals>,
    mu: &MobiusTable,
) -> IntPolynomial {
    let mut coeffs = vec![BigInt::zero(); l.ambient_dim() + 1];
    for (i, flat) in l.flats().iter().enumerate() {
        coeffs[flat.dim()] += mu.get(i);
    }
    IntPolynomial::new(coeffs)
}

pub fn poincare_polynomial(a: &Arrangement) -> IntPolynomial {
    let l = build_lattice(a);
    poincare_from_lattice(&l, &l.mobius())
}

pub fn characteristic_polynomial(a: &Arrangement) -> IntPolynomial {
    let l = build_lattice(a);
    characteristic_from_lattice(&l, &l.mobius())
}

/// `Π(A,1)`, checked against `Σ_F |μ(F)|` computed straight from the table.
pub fn length(a: &Arrangement) -> Result<BigUint> {
    let l = build_lattice(a);
    let mu = l.mobius();
    let at_one = poincare_from_lattice(&l, &mu).eval(&BigInt::one());
    let abs_sum: BigUint = mu.values().iter().map(|m| m.magnitude().clone()).sum();
    if at_one != BigInt::from(abs_sum.clone()) {
        return Err(Error::IdentityViolated(format!(
            "Π(A,1) = {at_one} but Σ|μ(F)| = {abs_sum}"
        )));
    }
    Ok(abs_sum)
}

/// Outcome of comparing `Π(A,t)` with `Π(A′,t) + t·Π(A″,t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleReport {
    pub pivot: usize,
    pub full: IntPolynomial,
    pub deletion: IntPolynomial,
    pub restriction: IntPolynomial,
    pub holds: bool,
}

impl TripleReport {
    pub fn to_json(&self) -> Value {
        json!({
            "pivot": self.pivot,
            "poincare": self.full.to_json(),
            "poincare_deletion": self.deletion.to_json(),
            "poincare_restriction": self.restriction.to_json(),
            "holds": self.holds,
        })
    }
}

pub fn check_triple_identity(a: &Arrangement, pivot: usize) -> Result<TripleReport> {
    let del = a.deletion(pivot)?;
    let (res, _) = a.restriction(pivot)?;
    let full = poincare_polynomial(a);
    let deletion = poincare_polynomial(&del);
    let restriction = poincare_polynomial(&res);
    let holds = full == &deletion + &restriction.shift(1);
    Ok(TripleReport { pivot, full, deletion, restriction, holds })
}

/// One flat of `L(A)` with the absolute Möbius values from the triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivityRow {
    pub flat: usize,
    pub system: Matrix<Rationals>,
    pub full: BigUint,
    pub deletion: BigUint,
    pub restriction: BigUint,
}

impl AdditivityRow {
    pub fn holds(&self) -> bool {
        self.full == &self.deletion + &self.restriction
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivityReport {
    pub pivot: usize,
    pub rows: Vec<AdditivityRow>,
    pub holds: bool,
}

impl AdditivityReport {
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "flat": r.flat,
                    "system": system_json(&Rationals, &r.system),
                    "mu_abs": r.full.to_string(),
                    "mu_abs_deletion": r.deletion.to_string(),
                    "mu_abs_restriction": r.restriction.to_string(),
                    "holds": r.holds(),
                })
            })
            .collect();
        json!({ "pivot": self.pivot, "flats": rows, "holds": self.holds })
    }
}

/// `|μ_A(F)| = |μ_{A′}(F)| + |μ_{A″}(F)|` for every flat `F` of `L(A)`.
///
/// A flat missing from `L(A′)` or from the embedded `L(A″)` counts as zero.
pub fn check_mobius_additivity(a: &Arrangement, pivot: usize) -> Result<AdditivityReport> {
    let del = a.deletion(pivot)?;
    let (res, chart) = a.restriction(pivot)?;
    let l = build_lattice(a);
    let mu = l.mobius();

    let ld = build_lattice(&del);
    let mud = ld.mobius();
    let by_system_del: BTreeMap<Vec<_>, BigUint> = ld
        .flats()
        .iter()
        .zip(mud.values())
        .map(|(f, m)| (f.system().entries().to_vec(), m.magnitude().clone()))
        .collect();

    let lr = build_lattice(&res);
    let mur = lr.mobius();
    let mut by_system_res: BTreeMap<Vec<_>, BigUint> = BTreeMap::new();
    for (f, m) in lr.flats().iter().zip(mur.values()) {
        let embedded = chart.embed_system(f.system())?;
        by_system_res.insert(embedded.entries().to_vec(), m.magnitude().clone());
    }

    let rows: Vec<AdditivityRow> = l
        .flats()
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let key = f.system().entries();
            AdditivityRow {
                flat: i,
                system: f.system().clone(),
                full: mu.get(i).magnitude().clone(),
                deletion: by_system_del.get(key).cloned().unwrap_or_default(),
                restriction: by_system_res.get(key).cloned().unwrap_or_default(),
            }
        })
        .collect();
    let holds = rows.iter().all(AdditivityRow::holds);
    Ok(AdditivityReport { pivot, rows, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{Family, Hyperplane};

    fn builtin(f: Family) -> Arrangement {
        Arrangement::builtin(f).unwrap()
    }

    fn single() -> Arrangement {
        Arrangement::new(2, vec![Hyperplane::from_i64(&[1, -2], 3).unwrap()]).unwrap()
    }

    #[test]
    fn display_format() {
        assert_eq!(IntPolynomial::from_i64(&[1, 3, 2]).to_string(), "1 + 3t + 2t^2");
        assert_eq!(IntPolynomial::from_i64(&[1, -2, 1]).to_string(), "1 - 2t + t^2");
        assert_eq!(IntPolynomial::from_i64(&[0, 2, -3, 1]).to_string(), "2t - 3t^2 + t^3");
        assert_eq!(IntPolynomial::from_i64(&[0, -1]).to_string(), "-t");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(IntPolynomial::from_i64(&[1, 0, 0]).coeffs().len(), 1);
    }

    #[test]
    fn poincare_examples() {
        assert_eq!(poincare_polynomial(&Arrangement::empty(3)), IntPolynomial::one());
        assert_eq!(poincare_polynomial(&single()), IntPolynomial::from_i64(&[1, 1]));
        assert_eq!(
            poincare_polynomial(&builtin(Family::Braid { n: 3 })),
            IntPolynomial::from_i64(&[1, 3, 2])
        );
        assert_eq!(
            poincare_polynomial(&builtin(Family::Generic { n: 2, m: 3 })),
            IntPolynomial::from_i64(&[1, 3, 3])
        );
    }

    #[test]
    fn characteristic_examples() {
        assert_eq!(characteristic_polynomial(&Arrangement::empty(2)), IntPolynomial::from_i64(&[0, 0, 1]));
        assert_eq!(
            characteristic_polynomial(&builtin(Family::Boolean { n: 2 })),
            IntPolynomial::from_i64(&[1, -2, 1])
        );
        assert_eq!(
            characteristic_polynomial(&builtin(Family::Braid { n: 3 })),
            IntPolynomial::from_i64(&[0, 2, -3, 1])
        );
    }

    #[test]
    fn length_examples() {
        assert_eq!(length(&single()).unwrap(), BigUint::from(2u32));
        assert_eq!(length(&builtin(Family::Braid { n: 4 })).unwrap(), BigUint::from(24u32));
        assert_eq!(length(&Arrangement::empty(1)).unwrap(), BigUint::one());
    }

    #[test]
    fn triple_examples() {
        let r = check_triple_identity(&single(), 0).unwrap();
        assert!(r.holds);
        assert_eq!(r.deletion, IntPolynomial::one());
        assert_eq!(r.restriction, IntPolynomial::one());

        let r = check_triple_identity(&builtin(Family::Boolean { n: 2 }), 0).unwrap();
        assert!(r.holds);
        assert_eq!(r.full, IntPolynomial::from_i64(&[1, 2, 1]));
        assert_eq!(r.deletion, IntPolynomial::from_i64(&[1, 1]));
        assert_eq!(r.restriction, IntPolynomial::from_i64(&[1, 1]));

        for k in 0..3 {
            let r = check_triple_identity(&builtin(Family::Braid { n: 3 }), k).unwrap();
            assert!(r.holds);
            assert_eq!(r.deletion, IntPolynomial::from_i64(&[1, 2, 1]));
            assert_eq!(r.restriction, IntPolynomial::from_i64(&[1, 1]));
        }
        assert!(check_triple_identity(&single(), 1).is_err());
    }

    #[test]
    fn additivity_examples() {
        let r = check_mobius_additivity(&single(), 0).unwrap();
        assert!(r.holds);
        let h = &r.rows[1];
        assert_eq!((h.full.clone(), h.deletion.clone(), h.restriction.clone()), (1u32.into(), 0u32.into(), 1u32.into()));

        let r = check_mobius_additivity(&builtin(Family::Boolean { n: 2 }), 0).unwrap();
        assert!(r.holds);
        let origin = r.rows.iter().find(|row| row.system.rows() == 2).unwrap();
        assert_eq!(origin.deletion, BigUint::zero());
        assert_eq!(origin.restriction, BigUint::one());
        let bottom = &r.rows[0];
        assert_eq!((bottom.deletion.clone(), bottom.restriction.clone()), (BigUint::one(), BigUint::zero()));
    }

    #[test]
    fn poincare_degree_is_rank() {
        let l = build_lattice(&builtin(Family::Generic { n: 3, m: 5 }));
        assert_eq!(poincare_from_lattice(&l, &l.mobius()).degree(), Some(l.rank()));
    }
}
