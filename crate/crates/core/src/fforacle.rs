//! Finite-field check of the characteristic polynomial.
//!
//! For a good prime `p` the number of points of `F_p^n` off every hyperplane
//! equals `χ(A, p)`. The count here is a plain enumeration and never looks
//! at the Möbius table; a prime is accepted only if the lattice rebuilt over
//! `F_p` has the same supports and dimensions as the rational one.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exactalg::{Field, Fp, PrimeField};
use crate::invariants::characteristic_polynomial;
use crate::lattice::{build_lattice, IntersectionLattice};

pub const DEFAULT_BUDGET: u64 = 100_000_000;
pub const DEFAULT_PRIMES: [u64; 2] = [101, 103];

/// An arrangement reduced modulo a prime, hyperplane order preserved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedArrangement {
    field: PrimeField,
    ambient_dim: usize,
    equations: Vec<Vec<Fp>>,
}

impl ReducedArrangement {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Augmented rows `[normal | offset]`, first nonzero normal entry one.
    pub fn equations(&self) -> &[Vec<Fp>] {
        &self.equations
    }

    pub fn lattice(&self) -> IntersectionLattice<PrimeField> {
        IntersectionLattice::build(self.field, self.ambient_dim, &self.equations)
            .expect("reduced normals are nonzero")
    }
}

/// Clears denominators hyperplane by hyperplane, reduces mod `p` and
/// rescales.
pub fn reduce_mod_p(a: &Arrangement, p: u64) -> Result<ReducedArrangement> {
    let field = PrimeField::new(p)?;
    let big_p = BigInt::from(p);
    let mut equations: Vec<Vec<Fp>> = Vec::with_capacity(a.len());
    for (index, h) in a.hyperplanes().iter().enumerate() {
        let row = h.augmented_row();
        if row.iter().any(|c| c.denom().is_multiple_of(&big_p)) {
            return Err(Error::DenominatorDivisible { index, prime: p });
        }
        let lcm = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<Fp> = row
            .iter()
            .map(|c| field.from_bigint(&(c.numer() * (&lcm / c.denom()))))
            .collect();
        let n = a.ambient_dim();
        let Some(lead) = ints[..n].iter().find(|c| !field.is_zero(c)).copied() else {
            return Err(Error::VanishingNormal { index, prime: p });
        };
        let inv = field.inv(&lead);
        let scaled: Vec<Fp> = ints.iter().map(|c| field.mul(c, &inv)).collect();
        if let Some(first) = equations.iter().position(|e| *e == scaled) {
            return Err(Error::Collision { first, second: index, prime: p });
        }
        equations.push(scaled);
    }
    Ok(ReducedArrangement { field, ambient_dim: a.ambient_dim(), equations })
}

/// True iff the lattice over `F_p` matches the rational lattice
/// combinatorially. Collisions and vanishing normals make a prime bad;
/// denominators divisible by `p` are an error.
pub fn is_good_prime(a: &Arrangement, p: u64) -> Result<bool> {
    let reduced = match reduce_mod_p(a, p) {
        Ok(r) => r,
        Err(e) if e.is_bad_prime() => return Ok(false),
        Err(e) => return Err(e),
    };
    Ok(reduced.lattice().combinatorial_fingerprint()
        == build_lattice(a).combinatorial_fingerprint())
}

/// Number of points of `F_p^n` on no hyperplane, by exhaustive enumeration
/// in row-major order. Blocks with a fixed first coordinate are counted in
/// parallel.
pub fn count_complement_points(r: &ReducedArrangement, budget: u64) -> Result<BigUint> {
    let p = r.field.modulus();
    let n = r.ambient_dim;
    let points = num_traits::pow(BigUint::from(p), n);
    if points > BigUint::from(budget) {
        return Err(Error::BudgetExceeded { points, budget });
    }
    if n == 0 {
        return Ok(BigUint::one());
    }
    let normals: Vec<Vec<u64>> =
        r.equations.iter().map(|e| e[..n].iter().map(|c| c.value()).collect()).collect();
    let offsets: Vec<u64> = r.equations.iter().map(|e| e[n].value()).collect();

    let count: u64 = (0..p)
        .into_par_iter()
        .map(|x0| {
            let mut sums: Vec<u64> = normals.iter().map(|a| a[0] * x0 % p).collect();
            let mut rest = vec![0u64; n - 1];
            let mut count = 0u64;
            loop {
                if sums.iter().zip(&offsets).all(|(s, b)| s != b) {
                    count += 1;
                }
                // Advance the odometer; p increments of a coordinate return
                // every sum to its previous value.
                let mut j = n - 1;
                loop {
                    if j == 0 {
                        return count;
                    }
                    j -= 1;
                    for (s, a) in sums.iter_mut().zip(&normals) {
                        *s = (*s + a[j + 1]) % p;
                    }
                    rest[j] += 1;
                    if rest[j] < p {
                        break;
                    }
                    rest[j] = 0;
                }
            }
        })
        .sum();
    Ok(BigUint::from(count))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub prime: u64,
    pub good_prime: bool,
    /// Absent when the reduction itself failed (collision or vanishing normal).
    pub point_count: Option<BigUint>,
    pub chi_at_p: BigInt,
    pub pass: bool,
}

impl OracleResult {
    pub fn to_json(&self) -> Value {
        json!({
            "prime": self.prime,
            "good_prime": self.good_prime,
            "point_count": self.point_count.as_ref().map(|c| c.to_string()),
            "chi_at_p": self.chi_at_p.to_string(),
            "pass": self.pass,
        })
    }
}

/// Compares the complement point count over `F_p` with `χ(A, p)`.
pub fn oracle_check(a: &Arrangement, p: u64, budget: u64) -> Result<OracleResult> {
    let chi_at_p = characteristic_polynomial(a).eval(&BigInt::from(p));
    let reduced = match reduce_mod_p(a, p) {
        Ok(r) => r,
        Err(e) if e.is_bad_prime() => {
            return Ok(OracleResult { prime: p, good_prime: false, point_count: None, chi_at_p, pass: false })
        }
        Err(e) => return Err(e),
    };
    let good_prime = reduced.lattice().combinatorial_fingerprint()
        == build_lattice(a).combinatorial_fingerprint();
    let count = count_complement_points(&reduced, budget)?;
    let pass = good_prime && BigInt::from(count.clone()) == chi_at_p;
    Ok(OracleResult { prime: p, good_prime, point_count: Some(count), chi_at_p, pass })
}
