//! The class of `Rj_*C_U[n]` in the Grothendieck group of perverse sheaves.
//!
//! Each flat `F` contributes the irreducible symbol `[N_F]`, where
//! `N_F = i_*C_F[dim F]`. Classes are finite formal sums of these symbols
//! with positive multiplicities; no sheaf is ever materialized.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::Add;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exactalg::{format_rational, Matrix, Rationals};
use crate::invariants::poincare_from_lattice;
use crate::lattice::{build_lattice, system_json, Flat};

/// Formal sum `Σ m_F [N_F]` keyed on canonical flats. Stored multiplicities
/// are always positive.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GrothendieckClass {
    terms: BTreeMap<Flat<Rationals>, BigUint>,
}

impl GrothendieckClass {
    pub fn new() -> Self {
        Self::default()
    }

    /// `[N_F]` once.
    pub fn symbol(flat: Flat<Rationals>) -> Self {
        let mut c = Self::new();
        c.add_term(flat, BigUint::one());
        c
    }

    pub fn add_term(&mut self, flat: Flat<Rationals>, multiplicity: BigUint) {
        if multiplicity.is_zero() {
            return;
        }
        *self.terms.entry(flat).or_default() += multiplicity;
    }

    pub fn multiplicity(&self, flat: &Flat<Rationals>) -> BigUint {
        self.terms.get(flat).cloned().unwrap_or_default()
    }

    /// Terms in canonical flat order.
    pub fn terms(&self) -> impl Iterator<Item = (&Flat<Rationals>, &BigUint)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all multiplicities, the length of the decomposition series.
    pub fn total(&self) -> BigUint {
        self.terms.values().sum()
    }

    /// Removes one copy of `[N_F]`; fails if `F` is absent.
    pub fn remove_one(&mut self, flat: &Flat<Rationals>) -> Result<()> {
        let m = self.terms.get_mut(flat).ok_or_else(|| {
            Error::IdentityViolated("cannot remove a symbol absent from the class".into())
        })?;
        *m -= 1u32;
        if m.is_zero() {
            self.terms.remove(flat);
        }
        Ok(())
    }

    /// Applies a map on flats, merging terms that land on the same flat.
    pub fn map_flats(
        &self,
        mut f: impl FnMut(&Flat<Rationals>) -> Result<Flat<Rationals>>,
    ) -> Result<Self> {
        let mut out = Self::new();
        for (flat, m) in &self.terms {
            out.add_term(f(flat)?, m.clone());
        }
        Ok(out)
    }
}

impl Add for &GrothendieckClass {
    type Output = GrothendieckClass;

    fn add(self, rhs: &GrothendieckClass) -> GrothendieckClass {
        let mut out = self.clone();
        for (flat, m) in &rhs.terms {
            out.add_term(flat.clone(), m.clone());
        }
        out
    }
}

/// `[Rj_*C_U[n]] = Σ_F |μ(F)| [N_F]` read off the Möbius table.
pub fn decompose_direct(a: &Arrangement) -> GrothendieckClass {
    let l = build_lattice(a);
    let mu = l.mobius();
    let mut class = GrothendieckClass::new();
    for (flat, m) in l.flats().iter().zip(mu.values()) {
        class.add_term(flat.clone(), m.magnitude().clone());
    }
    class
}

/// `Q(A,1)`: the direct class minus the single ambient term.
pub fn reduced_class(a: &Arrangement) -> GrothendieckClass {
    let mut class = decompose_direct(a);
    class
        .remove_one(&Flat::ambient(Rationals, a.ambient_dim()))
        .expect("ambient flat has multiplicity one");
    class
}

/// The class assembled by deletion and restriction with the first
/// hyperplane as pivot at every level.
pub fn decompose_recursive(a: &Arrangement) -> GrothendieckClass {
    decompose_recursive_with(a, &|_: &Arrangement| 0)
}

/// Like [`decompose_recursive`], with `pivot` choosing the hyperplane to
/// split off at each level. Returns `[N_X] + Q(A)` where
/// `Q(∅) = 0` and `Q(A) = [N_{H_0}] + Q(A′) + push(Q(A″))`.
pub fn decompose_recursive_with(
    a: &Arrangement,
    pivot: &(dyn Fn(&Arrangement) -> usize + Sync),
) -> GrothendieckClass {
    let q = recursive_q(a, pivot).expect("pivot rule returns valid indices");
    &GrothendieckClass::symbol(Flat::ambient(Rationals, a.ambient_dim())) + &q
}

fn recursive_q(
    a: &Arrangement,
    pivot: &(dyn Fn(&Arrangement) -> usize + Sync),
) -> Result<GrothendieckClass> {
    if a.is_empty() {
        return Ok(GrothendieckClass::new());
    }
    let p = pivot(a);
    let del = a.deletion(p)?;
    let (res, chart) = a.restriction(p)?;
    let h0 = hyperplane_flat(a, p)?;
    let (q_del, q_res) = rayon::join(|| recursive_q(&del, pivot), || recursive_q(&res, pivot));
    let pushed = q_res?.map_flats(|f| {
        let system = chart.embed_system(f.system())?;
        Ok(Flat::from_system(&system).expect("embedded flats are nonempty"))
    })?;
    Ok(&(&GrothendieckClass::symbol(h0) + &q_del?) + &pushed)
}

fn hyperplane_flat(a: &Arrangement, index: usize) -> Result<Flat<Rationals>> {
    let row = a.hyperplanes()[index].augmented_row();
    let m = Matrix::from_rows(Rationals, a.ambient_dim() + 1, vec![row])?;
    Ok(Flat::from_system(&m).expect("hyperplanes are nonempty"))
}

/// The class of `Rj_!C_U[n]`. Verdier duality fixes every `[N_F]`, so the
/// class is returned unchanged.
pub fn dual_class(c: &GrothendieckClass) -> GrothendieckClass {
    c.clone()
}

/// One row of a decomposition report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorDescriptor {
    pub flat: Flat<Rationals>,
    pub dim: usize,
    pub multiplicity: BigUint,
    /// `i_*C_F[dim F]`.
    pub label_star: String,
    /// `i_*i^!C_X[2n − dim F]`.
    pub label_shriek: String,
}

impl FactorDescriptor {
    pub fn new(flat: Flat<Rationals>, multiplicity: BigUint) -> Self {
        let n = flat.ambient_dim();
        let dim = flat.dim();
        FactorDescriptor {
            label_star: format!("i_*C_F[{dim}]"),
            label_shriek: format!("i_*i^!C_X[{}]", 2 * n - dim),
            flat,
            dim,
            multiplicity,
        }
    }

    /// Both presentations with shifts written relative to `n`, e.g.
    /// `i_*C_F[n-1] = i_*i^!C_X[n+1]` for a hyperplane.
    pub fn symbolic_labels(&self) -> String {
        let c = self.flat.codim();
        let rel = |sign: char| if c == 0 { "n".to_string() } else { format!("n{sign}{c}") };
        format!("i_*C_F[{}] = i_*i^!C_X[{}]", rel('-'), rel('+'))
    }
}

/// Descriptors of a class in canonical flat order.
pub fn factor_table(class: &GrothendieckClass) -> Vec<FactorDescriptor> {
    class.terms().map(|(f, m)| FactorDescriptor::new(f.clone(), m.clone())).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "text" => Ok(ReportFormat::Text),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

fn big_to_json(v: &BigUint) -> Value {
    match v.to_u64() {
        Some(small) => json!(small),
        None => json!(v.to_string()),
    }
}

/// Total multiplicity of `class`, which must agree with `Π(A,1)`.
fn checked_total(a: &Arrangement, class: &GrothendieckClass) -> Result<BigUint> {
    let total = class.total();
    let expected = crate::invariants::length(a)?;
    if total != expected {
        return Err(Error::IdentityViolated(format!(
            "class has total multiplicity {total} but Π(A,1) = {expected}"
        )));
    }
    Ok(total)
}

/// Report of `class` as a JSON value with sorted keys.
pub fn report_json(a: &Arrangement, class: &GrothendieckClass) -> Result<Value> {
    let l = build_lattice(a);
    let poincare = poincare_from_lattice(&l, &l.mobius());
    let total = checked_total(a, class)?;
    let factors: Vec<Value> = factor_table(class)
        .iter()
        .map(|d| {
            json!({
                "flat_system": system_json(&Rationals, d.flat.system()),
                "dim": d.dim,
                "multiplicity": big_to_json(&d.multiplicity),
                "label_star": d.label_star,
                "label_shriek": d.label_shriek,
            })
        })
        .collect();
    Ok(json!({
        "arrangement": a.to_json(),
        "poincare": poincare.to_json(),
        "length": total.to_string(),
        "factors": factors,
    }))
}

fn describe_flat(f: &Flat<Rationals>) -> String {
    if f.codim() == 0 {
        return "C^n".to_string();
    }
    let rows: Vec<String> = f
        .system()
        .row_iter()
        .map(|r| r.iter().map(format_rational).collect::<Vec<_>>().join(" "))
        .collect();
    format!("[{}]", rows.join("; "))
}

pub fn report_text(a: &Arrangement, class: &GrothendieckClass) -> Result<String> {
    let l = build_lattice(a);
    let poincare = poincare_from_lattice(&l, &l.mobius());
    let total = checked_total(a, class)?;
    let mut out = String::new();
    let n = a.ambient_dim();
    writeln!(out, "arrangement: {} hyperplanes in C^{n}", a.len()).unwrap();
    for (i, h) in a.hyperplanes().iter().enumerate() {
        writeln!(out, "  H{i}: {h}").unwrap();
    }
    writeln!(out, "poincare: {poincare}").unwrap();
    writeln!(out, "factors of Rj_*C_U[n] (n = {n}):").unwrap();
    for (i, d) in factor_table(class).iter().enumerate() {
        writeln!(
            out,
            "  F{i}  {}, dim {}, multiplicity {}, {} = {}  ({})",
            describe_flat(&d.flat),
            d.dim,
            d.multiplicity,
            d.label_star,
            d.label_shriek,
            d.symbolic_labels(),
        )
        .unwrap();
    }
    writeln!(out, "total length {total}").unwrap();
    Ok(out)
}

/// Renders the direct decomposition: arrangement, `Π(A,t)`, length and the
/// factor table.
pub fn report(a: &Arrangement, format: ReportFormat) -> Result<String> {
    report_for_class(a, &decompose_direct(a), format)
}

pub fn report_for_class(
    a: &Arrangement,
    class: &GrothendieckClass,
    format: ReportFormat,
) -> Result<String> {
    match format {
        ReportFormat::Json => {
            let v = report_json(a, class)?;
            Ok(serde_json::to_string_pretty(&v).expect("json values serialize") + "\n")
        }
        ReportFormat::Text => report_text(a, class),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{Family, Hyperplane};

    fn builtin(f: Family) -> Arrangement {
        Arrangement::builtin(f).unwrap()
    }

    fn flat(rows: &[&[i64]]) -> Flat<Rationals> {
        Flat::from_system(&Matrix::from_i64_rows(Rationals, rows).unwrap()).unwrap()
    }

    fn mults(c: &GrothendieckClass) -> Vec<u64> {
        c.terms().map(|(_, m)| m.to_u64().unwrap()).collect()
    }

    #[test]
    fn direct_examples() {
        let empty = decompose_direct(&Arrangement::empty(2));
        assert_eq!(empty.len(), 1);
        assert_eq!(empty.multiplicity(&Flat::ambient(Rationals, 2)), BigUint::one());

        let single = Arrangement::new(2, vec![Hyperplane::from_i64(&[1, 0], 0).unwrap()]).unwrap();
        let c = decompose_direct(&single);
        assert_eq!(mults(&c), vec![1, 1]);
        assert_eq!(c.multiplicity(&flat(&[&[1, 0, 0]])), BigUint::one());

        let c = decompose_direct(&builtin(Family::Braid { n: 3 }));
        assert_eq!(mults(&c), vec![1, 1, 1, 1, 2]);
        assert_eq!(c.multiplicity(&flat(&[&[1, 0, -1, 0], &[0, 1, -1, 0]])), BigUint::from(2u32));
        assert_eq!(c.total(), BigUint::from(6u32));
    }

    #[test]
    fn reduced_examples() {
        assert!(reduced_class(&Arrangement::empty(3)).is_empty());
        let single = Arrangement::new(1, vec![Hyperplane::from_i64(&[1], 4).unwrap()]).unwrap();
        let r = reduced_class(&single);
        assert_eq!(r, GrothendieckClass::symbol(flat(&[&[1, 4]])));
        assert_eq!(reduced_class(&builtin(Family::Braid { n: 3 })).total(), BigUint::from(5u32));
    }

    #[test]
    fn recursive_examples() {
        let single = Arrangement::new(2, vec![Hyperplane::from_i64(&[0, 1], 1).unwrap()]).unwrap();
        assert_eq!(decompose_recursive(&single), decompose_direct(&single));

        let bo2 = builtin(Family::Boolean { n: 2 });
        let c = decompose_recursive(&bo2);
        assert_eq!(mults(&c), vec![1, 1, 1, 1]);
        assert_eq!(c.multiplicity(&flat(&[&[1, 0, 0], &[0, 1, 0]])), BigUint::one());

        let b3 = builtin(Family::Braid { n: 3 });
        assert_eq!(decompose_recursive(&b3), decompose_direct(&b3));
    }

    #[test]
    fn duality_is_identity() {
        let c = decompose_direct(&builtin(Family::Braid { n: 3 }));
        assert_eq!(dual_class(&c), c);
        assert_eq!(dual_class(&GrothendieckClass::new()), GrothendieckClass::new());
    }

    #[test]
    fn class_arithmetic() {
        let a = GrothendieckClass::symbol(flat(&[&[1, 0, 0]]));
        let b = GrothendieckClass::symbol(flat(&[&[0, 1, 0]]));
        assert_eq!(&a + &b, &b + &a);
        let mut twice = &a + &a;
        assert_eq!(twice.total(), BigUint::from(2u32));
        twice.remove_one(&flat(&[&[1, 0, 0]])).unwrap();
        assert_eq!(twice, a);
        assert!(twice.remove_one(&flat(&[&[0, 1, 0]])).is_err());
        let mut z = GrothendieckClass::new();
        z.add_term(flat(&[&[1, 0, 0]]), BigUint::zero());
        assert!(z.is_empty());
    }

    #[test]
    fn labels_for_hyperplane() {
        let d = FactorDescriptor::new(flat(&[&[1, 0, 0, 0]]), BigUint::one());
        assert_eq!(d.label_star, "i_*C_F[2]");
        assert_eq!(d.label_shriek, "i_*i^!C_X[4]");
        assert_eq!(d.symbolic_labels(), "i_*C_F[n-1] = i_*i^!C_X[n+1]");
    }

    #[test]
    fn text_reports() {
        let t = report(&builtin(Family::Braid { n: 3 }), ReportFormat::Text).unwrap();
        assert_eq!(t.lines().filter(|l| l.trim_start().starts_with('F')).count(), 5);
        assert!(t.contains("total length 6"));

        let t = report(&Arrangement::empty(2), ReportFormat::Text).unwrap();
        assert!(t.contains("F0  C^n, dim 2, multiplicity 1, i_*C_F[2] = i_*i^!C_X[2]  (i_*C_F[n] = i_*i^!C_X[n])"));
        assert!(t.contains("total length 1"));
        assert!("xml".parse::<ReportFormat>().is_err());
    }

    #[test]
    fn json_report_shape() {
        let b3 = builtin(Family::Braid { n: 3 });
        let v = report_json(&b3, &decompose_direct(&b3)).unwrap();
        assert_eq!(v["length"], "6");
        assert_eq!(v["poincare"], json!(["1", "3", "2"]));
        let factors = v["factors"].as_array().unwrap();
        assert_eq!(factors.len(), 5);
        assert_eq!(factors[4]["multiplicity"], 2);
        assert_eq!(factors[4]["dim"], 1);
        assert_eq!(factors[4]["flat_system"], json!([["1", "0", "-1", "0"], ["0", "1", "-1", "0"]]));
        assert_eq!(factors[0]["label_star"], "i_*C_F[3]");
    }
}
