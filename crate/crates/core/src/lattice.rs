//! Intersection posets of arrangements and their Möbius functions.
//!
//! Flats are ordered by reverse inclusion: `F ≤ G` iff `G ⊆ F`, so the
//! ambient space is the bottom element. Everything here is generic over the
//! coefficient field, which lets the finite-field oracle rebuild the same
//! lattice modulo a prime with identical code.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exactalg::{rowspace_contains, Field, Matrix, Rationals};

/// A nonempty affine subspace, stored as the reduced row-echelon form of an
/// augmented system `[A | b]` with zero rows removed.
///
/// Equality and ordering look at the system only. The support (hyperplanes
/// containing the flat) is filled in by [`IntersectionLattice::build`].
#[derive(Clone, Debug)]
pub struct Flat<F: Field> {
    ambient_dim: usize,
    system: Matrix<F>,
    support: Vec<usize>,
}

impl<F: Field> Flat<F> {
    /// The whole space, cut out by the empty system.
    pub fn ambient(field: F, ambient_dim: usize) -> Self {
        Flat { ambient_dim, system: Matrix::zeros(field, 0, ambient_dim + 1), support: Vec::new() }
    }

    /// Solution set of an augmented system, or `None` when it is empty.
    pub fn from_system(system: &Matrix<F>) -> Option<Self> {
        let cols = system.cols();
        assert!(cols >= 1, "augmented system needs a constant column");
        let (rref, pivots) = system.rref_with_pivots();
        if pivots.last() == Some(&(cols - 1)) {
            return None;
        }
        Some(Flat { ambient_dim: cols - 1, system: rref.without_zero_rows(), support: Vec::new() })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn system(&self) -> &Matrix<F> {
        &self.system
    }

    pub fn codim(&self) -> usize {
        self.system.rows()
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim - self.codim()
    }

    /// Sorted indices of the hyperplanes containing this flat.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "flats live in dimensions {} and {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    /// `self ∩ other`, or `None` when the intersection is empty.
    pub fn intersect(&self, other: &Self) -> Result<Option<Self>> {
        self.check_ambient(other)?;
        let stacked = self.system.vstack(&other.system)?;
        Ok(Flat::from_system(&stacked).map(|mut f| {
            f.support = merge_sorted(&self.support, &other.support);
            f
        }))
    }

    /// `self ≤ other` in the intersection poset, i.e. `other ⊆ self`.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check_ambient(other)?;
        rowspace_contains(&other.system, &self.system)
    }

    /// Whether the flat lies inside the hyperplane with augmented row `row`.
    pub fn lies_in(&self, row: &[F::Elem]) -> Result<bool> {
        let field = self.system.field().clone();
        let single = Matrix::from_rows(field, self.ambient_dim + 1, vec![row.to_vec()])?;
        rowspace_contains(&self.system, &single)
    }
}

fn merge_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let set: BTreeSet<usize> = a.iter().chain(b).copied().collect();
    set.into_iter().collect()
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

impl<F: Field> PartialEq for Flat<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.system == other.system
    }
}

impl<F: Field> Eq for Flat<F> {}

impl<F: Field> Ord for Flat<F> {
    /// Canonical order: codimension, then row-major entries of the system.
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient_dim
            .cmp(&other.ambient_dim)
            .then_with(|| self.codim().cmp(&other.codim()))
            .then_with(|| self.system.entries().cmp(other.system.entries()))
    }
}

impl<F: Field> PartialOrd for Flat<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The poset `L(A)` of nonempty intersections, in canonical order.
#[derive(Clone, Debug)]
pub struct IntersectionLattice<F: Field> {
    ambient_dim: usize,
    hyperplane_count: usize,
    flats: Vec<Flat<F>>,
    leq: Vec<bool>,
}

/// `μ(F) = μ(C^n, F)` for every flat, indexed like the lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusTable {
    mu: Vec<BigInt>,
}

impl MobiusTable {
    pub fn get(&self, flat: usize) -> &BigInt {
        &self.mu[flat]
    }

    pub fn values(&self) -> &[BigInt] {
        &self.mu
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }
}

impl<F: Field> IntersectionLattice<F> {
    /// Builds the lattice of the hyperplanes `row · (x, -1) = 0` given as
    /// augmented rows `[normal | offset]`.
    ///
    /// Starting from the ambient space and the hyperplanes, every flat found
    /// is intersected with every hyperplane until nothing new appears. Since
    /// each flat is an intersection of hyperplanes this reaches the closure
    /// under pairwise intersection.
    pub fn build(field: F, ambient_dim: usize, equations: &[Vec<F::Elem>]) -> Result<Self> {
        let mut hyperplane_flats = Vec::with_capacity(equations.len());
        for (index, row) in equations.iter().enumerate() {
            let m = Matrix::from_rows(field.clone(), ambient_dim + 1, vec![row.clone()])?;
            let flat = Flat::from_system(&m).filter(|f| f.codim() == 1);
            hyperplane_flats.push(flat.ok_or(Error::ZeroNormal { index })?);
        }

        let mut seen: BTreeSet<Flat<F>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        let ambient = Flat::ambient(field, ambient_dim);
        seen.insert(ambient.clone());
        queue.push_back(ambient);
        while let Some(flat) = queue.pop_front() {
            for h in &hyperplane_flats {
                if let Some(meet) = flat.intersect(h)? {
                    if !seen.contains(&meet) {
                        seen.insert(meet.clone());
                        queue.push_back(meet);
                    }
                }
            }
        }

        let mut flats: Vec<Flat<F>> = seen.into_iter().collect();
        for flat in &mut flats {
            let mut support = Vec::new();
            for (i, row) in equations.iter().enumerate() {
                if flat.lies_in(row)? {
                    support.push(i);
                }
            }
            flat.support = support;
        }

        // G ⊆ F iff every hyperplane through F also passes through G, because
        // F is the intersection of its support.
        let n = flats.len();
        let mut leq = vec![false; n * n];
        for (i, f) in flats.iter().enumerate() {
            for (j, g) in flats.iter().enumerate() {
                leq[i * n + j] = f.codim() <= g.codim() && is_subset(&f.support, &g.support);
            }
        }
        Ok(IntersectionLattice { ambient_dim, hyperplane_count: equations.len(), flats, leq })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn hyperplane_count(&self) -> usize {
        self.hyperplane_count
    }

    pub fn flats(&self) -> &[Flat<F>] {
        &self.flats
    }

    pub fn flat(&self, i: usize) -> &Flat<F> {
        &self.flats[i]
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    /// Never true: the ambient space is always a flat.
    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    /// Index of the ambient flat.
    pub fn bottom(&self) -> usize {
        0
    }

    pub fn leq(&self, f: usize, g: usize) -> bool {
        self.leq[f * self.flats.len() + g]
    }

    /// Position of a flat in canonical order.
    pub fn index_of(&self, flat: &Flat<F>) -> Option<usize> {
        self.flats.binary_search(flat).ok()
    }

    /// Codimension of the smallest flats.
    pub fn rank(&self) -> usize {
        self.flats.iter().map(Flat::codim).max().unwrap_or(0)
    }

    /// Cover relations `(F, G)` with `F < G` and nothing strictly between,
    /// in lexicographic index order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.flats.len();
        let mut out = Vec::new();
        for f in 0..n {
            for g in 0..n {
                if f == g || !self.leq(f, g) {
                    continue;
                }
                let between = (0..n).any(|k| k != f && k != g && self.leq(f, k) && self.leq(k, g));
                if !between {
                    out.push((f, g));
                }
            }
        }
        out
    }

    /// `μ(C^n, F)` for every flat by the recursion
    /// `μ(G) = −Σ_{bottom ≤ K < G} μ(K)`.
    pub fn mobius(&self) -> MobiusTable {
        MobiusTable { mu: self.interval_mobius(self.bottom()) }
    }

    /// `μ(F, K)` for every `K`, zero outside the up-set of `F`.
    fn interval_mobius(&self, from: usize) -> Vec<BigInt> {
        let n = self.flats.len();
        let mut mu = vec![BigInt::zero(); n];
        // Canonical order is a linear extension, so predecessors come first.
        for g in 0..n {
            if !self.leq(from, g) {
                continue;
            }
            mu[g] = if g == from {
                BigInt::one()
            } else {
                -(from..g)
                    .filter(|&k| self.leq(from, k) && self.leq(k, g))
                    .map(|k| &mu[k])
                    .sum::<BigInt>()
            };
        }
        mu
    }

    /// `μ(F, G)`: one on the diagonal, zero unless `F ≤ G`.
    pub fn mobius_pair(&self, f: usize, g: usize) -> BigInt {
        if f == g {
            return BigInt::one();
        }
        if !self.leq(f, g) {
            return BigInt::zero();
        }
        self.interval_mobius(f).swap_remove(g)
    }

    /// `{(support(F), dim F)}`, used to compare lattices across fields.
    pub fn combinatorial_fingerprint(&self) -> BTreeSet<(Vec<usize>, usize)> {
        self.flats.iter().map(|f| (f.support.clone(), f.dim())).collect()
    }

    /// JSON export with systems, dimensions, supports, Möbius values and
    /// cover relations.
    pub fn to_json(&self, mu: &MobiusTable) -> Value {
        let field = self.flats[0].system.field().clone();
        let flats: Vec<Value> = self
            .flats
            .iter()
            .enumerate()
            .map(|(i, f)| {
                json!({
                    "index": i,
                    "system": system_json(&field, &f.system),
                    "dim": f.dim(),
                    "codim": f.codim(),
                    "support": f.support,
                    "mu": mu.get(i).to_string(),
                })
            })
            .collect();
        json!({
            "ambient_dim": self.ambient_dim,
            "bottom": self.bottom(),
            "flats": flats,
            "covers": self.covers().iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
        })
    }
}

/// Rows of an augmented system as rational strings.
pub fn system_json<F: Field>(field: &F, m: &Matrix<F>) -> Value {
    Value::Array(
        m.row_iter()
            .map(|row| Value::Array(row.iter().map(|e| Value::String(field.render(e))).collect()))
            .collect(),
    )
}

/// `L(A)` over the rationals.
pub fn build_lattice(a: &Arrangement) -> IntersectionLattice<Rationals> {
    IntersectionLattice::build(Rationals, a.ambient_dim(), &a.augmented_rows())
        .expect("canonical hyperplanes have nonzero normals")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{Family, Hyperplane};
    use crate::exactalg::PrimeField;

    fn flat(rows: &[&[i64]]) -> Flat<Rationals> {
        Flat::from_system(&Matrix::from_i64_rows(Rationals, rows).unwrap()).unwrap()
    }

    fn builtin(f: Family) -> Arrangement {
        Arrangement::builtin(f).unwrap()
    }

    #[test]
    fn intersect_examples() {
        let x = flat(&[&[1, 0, 0]]);
        let y = flat(&[&[0, 1, 0]]);
        let origin = x.intersect(&y).unwrap().unwrap();
        assert_eq!(origin.dim(), 0);
        assert!(x.intersect(&flat(&[&[1, 0, 1]])).unwrap().is_none());
        assert_eq!(x.intersect(&x).unwrap().unwrap(), x);
        let other = flat(&[&[1, 0]]);
        assert!(x.intersect(&other).is_err());
    }

    #[test]
    fn leq_examples() {
        let plane = Flat::ambient(Rationals, 2);
        let x = flat(&[&[1, 0, 0]]);
        let y = flat(&[&[0, 1, 0]]);
        let origin = flat(&[&[1, 0, 0], &[0, 1, 0]]);
        assert!(plane.leq(&origin).unwrap());
        assert!(!x.leq(&y).unwrap());
        assert!(x.leq(&origin).unwrap());
        assert!(!origin.leq(&x).unwrap());
    }

    #[test]
    fn lattice_sizes() {
        assert_eq!(build_lattice(&Arrangement::empty(3)).len(), 1);
        assert_eq!(build_lattice(&builtin(Family::Boolean { n: 2 })).len(), 4);
        assert_eq!(build_lattice(&builtin(Family::Braid { n: 3 })).len(), 5);
        assert_eq!(build_lattice(&builtin(Family::Braid { n: 4 })).len(), 15);
    }

    #[test]
    fn canonical_order_is_by_codimension() {
        let l = build_lattice(&builtin(Family::Braid { n: 4 }));
        assert_eq!(l.flat(l.bottom()).codim(), 0);
        assert!(l.flats().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(l.rank(), 3);
    }

    #[test]
    fn mobius_examples() {
        let single = Arrangement::new(3, vec![Hyperplane::from_i64(&[0, 1, 1], 2).unwrap()]).unwrap();
        let l = build_lattice(&single);
        assert_eq!(l.mobius().values(), &[BigInt::one(), -BigInt::one()]);

        let l = build_lattice(&builtin(Family::Braid { n: 3 }));
        let mu = l.mobius();
        assert_eq!(mu.get(4), &BigInt::from(2));
        let abs_sum: BigInt = mu.values().iter().map(|m| BigInt::from(m.magnitude().clone())).sum();
        assert_eq!(abs_sum, BigInt::from(6));

        let l = build_lattice(&builtin(Family::Boolean { n: 2 }));
        assert_eq!(l.mobius().get(3), &BigInt::one());
    }

    #[test]
    fn mobius_pair_examples() {
        let l = build_lattice(&builtin(Family::Braid { n: 3 }));
        for i in 0..l.len() {
            assert_eq!(l.mobius_pair(i, i), BigInt::one());
        }
        assert_eq!(l.mobius_pair(1, 2), BigInt::zero());
        assert_eq!(l.mobius_pair(1, 4), -BigInt::one());
        assert_eq!(l.mobius_pair(4, 1), BigInt::zero());
        assert_eq!(l.mobius_pair(0, 4), BigInt::from(2));
    }

    #[test]
    fn fingerprints() {
        let l = build_lattice(&builtin(Family::Boolean { n: 2 }));
        let expected: BTreeSet<(Vec<usize>, usize)> =
            [(vec![], 2), (vec![0], 1), (vec![1], 1), (vec![0, 1], 0)].into_iter().collect();
        assert_eq!(l.combinatorial_fingerprint(), expected);

        let l = build_lattice(&Arrangement::empty(4));
        assert_eq!(l.combinatorial_fingerprint(), [(vec![], 4)].into_iter().collect());

        let b3 = builtin(Family::Braid { n: 3 });
        let f101 = PrimeField::new(101).unwrap();
        let rows: Vec<Vec<_>> = [[1i64, -1, 0, 0], [1, 0, -1, 0], [0, 1, -1, 0]]
            .iter()
            .map(|r| r.iter().map(|&v| f101.from_i64(v)).collect())
            .collect();
        let lp = IntersectionLattice::build(f101, 3, &rows).unwrap();
        assert_eq!(lp.combinatorial_fingerprint(), build_lattice(&b3).combinatorial_fingerprint());
    }

    #[test]
    fn leq_table_matches_rowspace_test() {
        for a in [builtin(Family::Braid { n: 4 }), builtin(Family::Generic { n: 3, m: 5 })] {
            let l = build_lattice(&a);
            for i in 0..l.len() {
                for j in 0..l.len() {
                    assert_eq!(l.leq(i, j), l.flat(i).leq(l.flat(j)).unwrap(), "{i} {j}");
                }
            }
        }
    }

    #[test]
    fn covers_of_small_lattices() {
        assert!(build_lattice(&Arrangement::empty(2)).covers().is_empty());
        assert_eq!(build_lattice(&builtin(Family::Boolean { n: 2 })).covers().len(), 4);
        assert_eq!(build_lattice(&builtin(Family::Braid { n: 3 })).covers().len(), 6);
    }

    #[test]
    fn index_of_finds_flats() {
        let l = build_lattice(&builtin(Family::Braid { n: 4 }));
        for (i, f) in l.flats().iter().enumerate() {
            assert_eq!(l.index_of(f), Some(i));
        }
        assert_eq!(l.index_of(&flat(&[&[1, 0, 0, 0, 7]])), None);
    }
}
