//! Invariant φ-brackets: the quadratic system
//! `c(ᾱ+β̄)(c(ᾱ)+c(β̄)) = c(ᾱ)c(β̄) + K²`, its recursive solution from seeds
//! on simple quasiroots, the coth parametrization, tangent vectors and good
//! brackets.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::{DMatrix, DVector};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{OrbitError, Result};
use crate::levi::{LeviDatum, PositiveSystem, Quasiroot, SubsetKind};
use crate::linalg::{Added, AffineSystem};
use crate::multivec::{
    bivector_from_coefficients, kks, linear_form, phi_bracket_residual, schouten, BracketCoefficients,
};
use crate::rational::{format_rational, q, to_f64, Q};
use crate::rootsystem::RootSystem;

/// Tolerance of the floating-point parametrization paths.
pub const TOLERANCE: f64 = 1e-9;

fn ff_holds(ca: &Q, cb: &Q, cg: &Q, k2: &Q) -> bool {
    cg * (ca + cb) == ca * cb + k2
}

/// The positive pair representing the zero-sum triple `{a, b, -(a+b)}`.
fn triple_representative(a: &Quasiroot, b: &Quasiroot) -> (Quasiroot, Quasiroot) {
    let trip = [a.clone(), b.clone(), a.add(b).neg()];
    let pos: Vec<&Quasiroot> = trip.iter().filter(|x| x.is_standard_positive()).collect();
    let (x, y) = if pos.len() == 2 {
        (pos[0].clone(), pos[1].clone())
    } else {
        let neg: Vec<Quasiroot> = trip.iter().filter(|x| !x.is_standard_positive()).map(Quasiroot::neg).collect();
        (neg[0].clone(), neg[1].clone())
    };
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

/// A solution of the φ-bracket equations obtained from seeds.
#[derive(Clone, Debug, PartialEq)]
pub struct FFSolution {
    pub positive: PositiveSystem,
    pub k: Q,
    pub c: BracketCoefficients,
    pub seeds: Vec<(Quasiroot, Q)>,
}

/// Propagates seeds on the simple quasiroots of `pos` by
/// `c(ᾱ+β̄) = (c(ᾱ)c(β̄) + K²)/(c(ᾱ)+c(β̄))`, walking positives by height and
/// using the first splitting with a nonzero denominator. The result is then
/// checked on every composable pair.
pub fn solve_ff(levi: &LeviDatum, pos: &PositiveSystem, seeds: &[(Quasiroot, Q)], k: &Q) -> Result<FFSolution> {
    let mut vals: BTreeMap<Quasiroot, Q> = BTreeMap::new();
    for (x, v) in seeds {
        if !pos.simple().contains(x) {
            return Err(OrbitError::Parameter(format!("{x} is not a simple quasiroot")));
        }
        vals.insert(x.clone(), v.clone());
    }
    if let Some(missing) = pos.simple().iter().find(|x| !vals.contains_key(x)) {
        return Err(OrbitError::Parameter(format!("no seed for {missing}")));
    }
    let k2 = k * k;
    for x in pos.positives() {
        if vals.contains_key(x) {
            continue;
        }
        let splits = pos.splittings(x);
        let mut found = None;
        for (a, b) in &splits {
            let den = &vals[a] + &vals[b];
            if !den.is_zero() {
                found = Some((&vals[a] * &vals[b] + &k2) / den);
                break;
            }
        }
        match found {
            Some(v) => {
                vals.insert(x.clone(), v);
            }
            None => {
                let (a, b) = splits.first().ok_or_else(|| OrbitError::Internal(format!("{x} has no splitting")))?;
                return Err(OrbitError::InadmissibleSeed { left: a.key(), right: b.key() });
            }
        }
    }
    let c = BracketCoefficients::from_fn(levi, |x| match vals.get(x) {
        Some(v) => v.clone(),
        None => -vals[&x.neg()].clone(),
    });
    if let Some((a, b)) = ff_violations(levi, &c, k).into_iter().next() {
        return Err(OrbitError::InadmissibleSeed { left: a.key(), right: b.key() });
    }
    Ok(FFSolution { positive: pos.clone(), k: k.clone(), c, seeds: seeds.to_vec() })
}

/// Seeds `c(ᾱ_i) = v_i` on the standard simple quasiroots.
pub fn solve_ff_standard(levi: &LeviDatum, seeds: &[Q], k: &Q) -> Result<FFSolution> {
    let pos = levi.standard_positive();
    if seeds.len() != pos.simple().len() {
        return Err(OrbitError::Parameter(format!("expected {} seeds, got {}", pos.simple().len(), seeds.len())));
    }
    let s: Vec<(Quasiroot, Q)> = pos.simple().iter().cloned().zip(seeds.iter().cloned()).collect();
    solve_ff(levi, pos, &s, k)
}

/// Values of `c(x)` produced by every splitting `x = a + b` in `pos` with a
/// nonzero denominator.
pub fn path_values(pos: &PositiveSystem, c: &BracketCoefficients, x: &Quasiroot, k: &Q) -> Vec<((Quasiroot, Quasiroot), Q)> {
    let k2 = k * k;
    pos.splittings(x)
        .into_iter()
        .filter_map(|(a, b)| {
            let (ca, cb) = (c.value(&a), c.value(&b));
            let den = &ca + &cb;
            if den.is_zero() {
                None
            } else {
                Some(((a, b), (ca * cb + &k2) / den))
            }
        })
        .collect()
}

/// Composable pairs violating the φ-bracket equation, one positive pair per
/// zero-sum triple.
pub fn ff_violations(levi: &LeviDatum, c: &BracketCoefficients, k: &Q) -> Vec<(Quasiroot, Quasiroot)> {
    let k2 = k * k;
    let mut out = BTreeSet::new();
    for (a, b) in levi.composable_pairs() {
        if !ff_holds(&c.value(&a), &c.value(&b), &c.value(&a.add(&b)), &k2) {
            out.insert(triple_representative(&a, &b));
        }
    }
    out.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FFVerdict {
    pub holds: bool,
    pub violations: Vec<(String, String)>,
    pub schouten_residual_zero: bool,
}

/// Checks the equations pairwise and, independently, `[[f,f]] = K²φ_M`.
pub fn verify_ff(levi: &LeviDatum, c: &BracketCoefficients, k: &Q) -> Result<FFVerdict> {
    let violations: Vec<(String, String)> =
        ff_violations(levi, c, k).into_iter().map(|(a, b)| (a.key(), b.key())).collect();
    let residual_zero = phi_bracket_residual(levi, c, k)?.is_zero();
    Ok(FFVerdict { holds: violations.is_empty() && residual_zero, violations, schouten_residual_zero: residual_zero })
}

/// Coefficients in floating point, from the coth parametrization.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproxCoefficients {
    pub values: BTreeMap<Quasiroot, f64>,
}

impl ApproxCoefficients {
    pub fn value(&self, x: &Quasiroot) -> f64 {
        match self.values.get(x) {
            Some(v) => *v,
            None => -self.values.get(&x.neg()).copied().unwrap_or(0.0),
        }
    }

    pub fn max_distance(&self, c: &BracketCoefficients) -> f64 {
        self.values.iter().map(|(k, v)| (v - to_f64(&c.value(k))).abs()).fold(0.0, f64::max)
    }

    /// Largest defect of the φ-bracket equation over composable pairs.
    pub fn ff_defect(&self, levi: &LeviDatum, k: f64) -> f64 {
        levi.composable_pairs()
            .iter()
            .map(|(a, b)| {
                let (ca, cb, cg) = (self.value(a), self.value(b), self.value(&a.add(b)));
                (cg * (ca + cb) - ca * cb - k * k).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// `(Ψ, B, λ, K)`: `Ψ` a linear subset, `B` the quasiroots whose class in
/// `Ω̄/Ψ` lies in a semilinear subset, `λ` a real linear form given by its
/// values on the standard simple quasiroots.
#[derive(Clone, Debug, PartialEq)]
pub struct Parametrization {
    pub psi: Vec<Quasiroot>,
    pub b: Vec<Quasiroot>,
    pub lambda: Vec<f64>,
    pub k: Q,
    /// Largest additivity defect of λ on Ψ (extraction only).
    pub residual: f64,
}

fn coth(x: f64) -> f64 {
    1.0 / x.tanh()
}

fn lambda_at(lambda: &[f64], x: &Quasiroot) -> f64 {
    lambda.iter().zip(&x.0).map(|(l, &c)| l * c as f64).sum()
}

impl Parametrization {
    fn check(&self, levi: &LeviDatum) -> Result<()> {
        if self.lambda.len() != levi.complement().len() {
            return Err(OrbitError::Parameter("λ has the wrong number of values".into()));
        }
        if levi.subset_classify(&self.psi)?.kind != SubsetKind::Linear {
            return Err(OrbitError::Parameter("Ψ is not a linear subset".into()));
        }
        let psi: BTreeSet<&Quasiroot> = self.psi.iter().collect();
        for x in &self.psi {
            if lambda_at(&self.lambda, x).abs() < TOLERANCE {
                return Err(OrbitError::Parameter(format!("λ vanishes on {x}")));
            }
        }
        if self.k.is_zero() {
            if !self.b.is_empty() {
                return Err(OrbitError::Parameter("B must be empty when K = 0".into()));
            }
            return Ok(());
        }
        let quotient = levi.quotient_by(&self.psi)?;
        let b: BTreeSet<&Quasiroot> = self.b.iter().collect();
        if b.iter().any(|x| psi.contains(x)) {
            return Err(OrbitError::Parameter("B meets Ψ".into()));
        }
        let mut classes = Vec::new();
        for (key, members) in &quotient.classes {
            let inside = members.iter().filter(|m| b.contains(m)).count();
            if inside != 0 && inside != members.len() {
                return Err(OrbitError::Parameter("B is not a union of classes of Ω̄/Ψ".into()));
            }
            if inside != 0 {
                classes.push(key.clone());
            }
        }
        if !quotient.is_empty() && quotient.classify(&classes).kind != SubsetKind::Semilinear {
            return Err(OrbitError::Parameter("B is not semilinear in Ω̄/Ψ".into()));
        }
        Ok(())
    }

    pub fn to_json(&self, levi: &LeviDatum) -> ParametrizationJson {
        ParametrizationJson {
            psi: self.psi.iter().map(Quasiroot::key).collect(),
            b: self.b.iter().map(Quasiroot::key).collect(),
            lambda_approx: levi.complement().iter().map(|i| format!("a{i}")).zip(self.lambda.iter().copied()).collect(),
            k: format_rational(&self.k),
            residual_approx: self.residual,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParametrizationJson {
    pub psi: Vec<String>,
    pub b: Vec<String>,
    pub lambda_approx: BTreeMap<String, f64>,
    #[serde(rename = "K")]
    pub k: String,
    pub residual_approx: f64,
}

/// `c = K coth(Kλ/2)` on Ψ, `±K` on `±B`; for `K = 0`, `1/λ` on Ψ and 0
/// elsewhere.
pub fn from_parametrization(levi: &LeviDatum, p: &Parametrization) -> Result<ApproxCoefficients> {
    p.check(levi)?;
    let k = to_f64(&p.k);
    let psi: BTreeSet<&Quasiroot> = p.psi.iter().collect();
    let b: BTreeSet<&Quasiroot> = p.b.iter().collect();
    let mut values = BTreeMap::new();
    for x in levi.standard_positive().positives() {
        let v = if psi.contains(x) {
            let l = lambda_at(&p.lambda, x);
            if p.k.is_zero() {
                1.0 / l
            } else {
                k * coth(k * l / 2.0)
            }
        } else if p.k.is_zero() {
            0.0
        } else if b.contains(x) {
            k
        } else if b.contains(&x.neg()) {
            -k
        } else {
            return Err(OrbitError::Parameter(format!("{x} lies in neither Ψ nor ±B")));
        };
        values.insert(x.clone(), v);
    }
    Ok(ApproxCoefficients { values })
}

/// Recovers `(Ψ, B, λ)` from an exact solution, restricted to real λ.
pub fn extract_parametrization(levi: &LeviDatum, c: &BracketCoefficients, k: &Q) -> Result<Parametrization> {
    if k.is_zero() {
        return Err(OrbitError::Parameter("extraction needs K ≠ 0".into()));
    }
    if !verify_ff(levi, c, k)?.holds {
        return Err(OrbitError::Precondition("c does not solve the φ-bracket equations".into()));
    }
    let approx = ApproxCoefficients {
        values: c.values().iter().map(|(x, v)| (x.clone(), to_f64(v))).collect(),
    };
    let psi: Vec<Quasiroot> = levi.quasiroots().filter(|x| c.value(x).abs() != k.abs()).cloned().collect();
    let b: Vec<Quasiroot> = levi.quasiroots().filter(|x| c.value(x) == k.abs()).cloned().collect();
    // the sign of K is immaterial; B is read with |K|
    extract_with(levi, &approx, k, psi, b)
}

/// Extraction from floating-point coefficients, classifying `±K` within
/// tolerance.
pub fn extract_parametrization_approx(levi: &LeviDatum, c: &ApproxCoefficients, k: &Q) -> Result<Parametrization> {
    if k.is_zero() {
        return Err(OrbitError::Parameter("extraction needs K ≠ 0".into()));
    }
    let kf = to_f64(k).abs();
    if c.ff_defect(levi, kf) > 1e-6 * (1.0 + kf * kf) {
        return Err(OrbitError::Precondition("c does not solve the φ-bracket equations".into()));
    }
    let psi: Vec<Quasiroot> =
        levi.quasiroots().filter(|x| (c.value(x).abs() - kf).abs() > TOLERANCE).cloned().collect();
    let b: Vec<Quasiroot> = levi.quasiroots().filter(|x| (c.value(x) - kf).abs() <= TOLERANCE).cloned().collect();
    extract_with(levi, c, k, psi, b)
}

fn extract_with(
    levi: &LeviDatum,
    c: &ApproxCoefficients,
    k: &Q,
    psi: Vec<Quasiroot>,
    b: Vec<Quasiroot>,
) -> Result<Parametrization> {
    let kf = to_f64(k).abs();
    let verdict = levi.subset_classify(&psi)?;
    if verdict.kind != SubsetKind::Linear {
        return Err(OrbitError::Internal("{c ≠ ±K} is not a linear subset".into()));
    }
    let rows: Vec<&Quasiroot> = psi.iter().filter(|x| x.is_standard_positive()).collect();
    let dim = levi.complement().len();
    let mut lambda = vec![0.0; dim];
    let mut residual = 0.0;
    if !rows.is_empty() {
        let mut targets = Vec::with_capacity(rows.len());
        for x in &rows {
            let v = c.value(x);
            if v.abs() <= kf {
                return Err(OrbitError::ExtractionFailed(format!(
                    "|c({x})| ≤ |K| has no real preimage under K coth(Kλ/2)"
                )));
            }
            targets.push(2.0 / kf * (kf / v).atanh());
        }
        let a = DMatrix::from_fn(rows.len(), dim, |i, j| rows[i].0[j] as f64);
        let rhs = DVector::from_vec(targets.clone());
        let sol = a
            .clone()
            .svd(true, true)
            .solve(&rhs, 1e-12)
            .map_err(|e| OrbitError::Internal(format!("least squares failed: {e}")))?;
        lambda = sol.iter().copied().collect();
        residual = (a * sol - rhs).amax();
        if residual >= TOLERANCE {
            return Err(OrbitError::ExtractionFailed(format!(
                "λ is not additive on Ψ over the reals (defect {residual:e})"
            )));
        }
    }
    let p = Parametrization { psi, b, lambda, k: k.abs(), residual };
    p.check(levi).map_err(|e| OrbitError::Internal(format!("extracted data invalid: {e}")))?;
    Ok(p)
}

/// Solutions `d` of the linearized equations at `c`, one per simple
/// quasiroot of `pos`, built by
/// `d(ᾱ+β̄) = (d(ᾱ)(c(β̄)-c(ᾱ+β̄)) + d(β̄)(c(ᾱ)-c(ᾱ+β̄)))/(c(ᾱ)+c(β̄))`.
pub fn tangent_basis(levi: &LeviDatum, pos: &PositiveSystem, c: &BracketCoefficients, k: &Q) -> Result<Vec<BracketCoefficients>> {
    if !verify_ff(levi, c, k)?.holds {
        return Err(OrbitError::Precondition("c does not solve the φ-bracket equations".into()));
    }
    for x in pos.positives() {
        for (a, b) in pos.splittings(x) {
            if (c.value(&a) + c.value(&b)).is_zero() {
                return Err(OrbitError::Precondition(format!(
                    "positive system not adapted: c({a}) + c({b}) = 0"
                )));
            }
        }
    }
    let f = bivector_from_coefficients(levi, c);
    let mut basis = Vec::new();
    for seed in pos.simple() {
        let mut d: BTreeMap<Quasiroot, Q> = pos
            .simple()
            .iter()
            .map(|s| (s.clone(), if s == seed { Q::one() } else { Q::zero() }))
            .collect();
        for x in pos.positives() {
            if d.contains_key(x) {
                continue;
            }
            let (a, b) = pos.splittings(x).into_iter().next().expect("non-simple positive splits");
            let (ca, cb, cx) = (c.value(&a), c.value(&b), c.value(x));
            let v = (&d[&a] * (&cb - &cx) + &d[&b] * (&ca - &cx)) / (&ca + &cb);
            d.insert(x.clone(), v);
        }
        let dc = BracketCoefficients::from_fn(levi, |x| match d.get(x) {
            Some(v) => v.clone(),
            None => -d[&x.neg()].clone(),
        });
        let fd = schouten(levi, &f, &bivector_from_coefficients(levi, &dc))?;
        if !fd.is_zero() {
            return Err(OrbitError::Internal(format!("tangent vector from seed {seed} fails [[f, d]] = 0")));
        }
        basis.push(dc);
    }
    Ok(basis)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodCertificate {
    pub type_a: bool,
    /// Highest-root coefficients of the simple roots outside Γ, keyed `a<i>`.
    pub coefficients: BTreeMap<String, i32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodVerdict {
    pub good: bool,
    pub certificate: GoodCertificate,
}

/// Good orbits: every orbit in type A; otherwise one or two simple roots
/// outside Γ, each with coefficient 1 in the highest root.
pub fn classify_good_pair(rs: &RootSystem, gamma: &[usize]) -> Result<GoodVerdict> {
    let n = rs.rank();
    let g: BTreeSet<usize> = gamma.iter().copied().collect();
    if g.iter().any(|&i| i == 0 || i > n) {
        return Err(OrbitError::Parameter(format!("simple root index outside 1..={n}")));
    }
    if g.len() == n {
        return Err(OrbitError::DegenerateOrbit("Γ = Π gives a point orbit".into()));
    }
    let hr = rs.highest_root();
    let coefficients: BTreeMap<String, i32> =
        (1..=n).filter(|i| !g.contains(i)).map(|i| (format!("a{i}"), hr.0[i - 1])).collect();
    let type_a = rs.simple_type().series == crate::rootsystem::Series::A;
    let good = type_a || (coefficients.len() <= 2 && coefficients.values().all(|&c| c == 1));
    Ok(GoodVerdict { good, certificate: GoodCertificate { type_a, coefficients } })
}

/// The good brackets `±f₀ + t s` for `s = kks(λ)` and a fixed `K ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct GoodFamily {
    pub f0: BracketCoefficients,
    pub s: BracketCoefficients,
    pub k: Q,
}

impl GoodFamily {
    /// `sign · f₀ + t · s`.
    pub fn member(&self, positive: bool, t: &Q) -> BracketCoefficients {
        let f = if positive { self.f0.clone() } else { self.f0.scale(&-Q::one()) };
        f.add(&self.s.scale(t))
    }

    /// Whether `[[f, f]] = K²φ_M` and `[[f, s]] = 0` hold exactly.
    pub fn is_good(&self, levi: &LeviDatum, f: &BracketCoefficients) -> Result<bool> {
        is_good_bracket(levi, f, &self.s, &self.k)
    }
}

pub fn is_good_bracket(levi: &LeviDatum, f: &BracketCoefficients, s: &BracketCoefficients, k: &Q) -> Result<bool> {
    if !phi_bracket_residual(levi, f, k)?.is_zero() {
        return Ok(false);
    }
    let fs = schouten(levi, &bivector_from_coefficients(levi, f), &bivector_from_coefficients(levi, s))?;
    Ok(fs.is_zero())
}

/// All good brackets modulo `s`, by exact elimination.
///
/// With `g(ᾱ) = c(ᾱ)λ(ᾱ)`, `a = λ(ᾱ)`, `b = λ(β̄)` the two conditions on a
/// positive pair become `(a+b) g(ᾱ+β̄) = a g(ᾱ) + b g(β̄)` and
/// `(g(ᾱ) - g(β̄))² = K²(a+b)²`. Each quadratic is split into its two linear
/// branches. Every consistent branch is normalized by `Σ_{Ω̄⁺} g = 0`, which
/// removes the `s` direction; the distinct normalized solutions are returned.
pub fn good_solutions(levi: &LeviDatum, lambda: &[Q], k: &Q) -> Result<Vec<BracketCoefficients>> {
    kks(levi, lambda)?;
    let pos = levi.standard_positive();
    let vars: Vec<Quasiroot> = pos.positives().to_vec();
    let slot: BTreeMap<&Quasiroot, usize> = vars.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let n = vars.len();
    let pairs = pos.composable_pairs();

    let mut sys = AffineSystem::new(n);
    for (a, b) in &pairs {
        let (la, lb) = (linear_form(lambda, a), linear_form(lambda, b));
        let mut form = vec![Q::zero(); n];
        form[slot[&a.add(b)]] = &la + &lb;
        form[slot[a]] -= la;
        form[slot[b]] -= lb;
        if sys.add(&form, &Q::zero()) == Added::Inconsistent {
            return Err(OrbitError::Internal("homogeneous system inconsistent".into()));
        }
    }
    let quad: Vec<(Vec<Q>, Q)> = pairs
        .iter()
        .map(|(a, b)| {
            let mut form = vec![Q::zero(); n];
            form[slot[a]] += Q::one();
            form[slot[b]] -= Q::one();
            let bound = k * (linear_form(lambda, a) + linear_form(lambda, b));
            (form, bound)
        })
        .collect();

    let mut leaves: BTreeSet<Vec<Q>> = BTreeSet::new();
    let mut stack = vec![(sys, 0usize)];
    while let Some((sys, i)) = stack.pop() {
        if i == quad.len() {
            let mut fixed = sys.clone();
            if fixed.add(&vec![Q::one(); n], &Q::zero()) == Added::Inconsistent {
                return Err(OrbitError::Internal("normalization inconsistent".into()));
            }
            if fixed.free_dimension() != 0 {
                return Err(OrbitError::Internal(format!(
                    "good brackets form a family of dimension {} modulo s",
                    fixed.free_dimension()
                )));
            }
            leaves.insert(fixed.particular());
            continue;
        }
        let (form, bound) = &quad[i];
        match sys.determined(form) {
            Some(v) => {
                if v == *bound || v == -bound.clone() {
                    stack.push((sys, i + 1));
                }
            }
            None => {
                for sign in [1, -1] {
                    let mut branch = sys.clone();
                    if branch.add(form, &(bound * q(sign))) != Added::Inconsistent {
                        stack.push((branch, i + 1));
                    }
                }
            }
        }
    }
    Ok(leaves
        .into_iter()
        .map(|g| {
            BracketCoefficients::from_fn(levi, |x| &g[slot[x]] / linear_form(lambda, x))
        })
        .collect())
}

/// `f₀` normalized by `Σ g = 0` with its first nonzero coefficient positive,
/// verified exactly together with the members `±f₀ + t s`.
pub fn good_bracket_family(levi: &LeviDatum, lambda: &[Q], k: &Q) -> Result<GoodFamily> {
    if k.is_zero() {
        return Err(OrbitError::Parameter("good brackets need K ≠ 0".into()));
    }
    let verdict = classify_good_pair(levi.root_system(), &levi.gamma())?;
    if !verdict.good {
        return Err(OrbitError::Precondition("the pair is not good".into()));
    }
    let s = kks(levi, lambda)?;
    let sols = good_solutions(levi, lambda, k)?;
    let order = levi.standard_positive().positives();
    let first_sign = |c: &BracketCoefficients| {
        order.iter().map(|x| c.value(x)).find(|v| !v.is_zero()).map(|v| v.is_positive())
    };
    let f0 = sols
        .iter()
        .find(|c| first_sign(c) != Some(false))
        .cloned()
        .ok_or_else(|| OrbitError::Internal("no good bracket found on a good pair".into()))?;
    let neg = f0.scale(&-Q::one());
    let expected = if neg == f0 { 1 } else { 2 };
    if sols.len() != expected || !sols.contains(&neg) {
        return Err(OrbitError::Internal(format!("{} solution lines instead of ±f₀", sols.len())));
    }
    let family = GoodFamily { f0, s, k: k.clone() };
    for positive in [true, false] {
        for t in [q(0), q(1), q(-1), Q::new(3.into(), 7.into()), Q::new((-3).into(), 7.into())] {
            if !family.is_good(levi, &family.member(positive, &t))? {
                return Err(OrbitError::Internal(format!("member at t = {t} fails the good-bracket conditions")));
            }
        }
    }
    Ok(family)
}
