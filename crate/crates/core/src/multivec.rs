//! Sparse exterior algebra over `m` or `g` in the Chevalley basis, the
//! Schouten bracket, invariant bivectors and the trivector φ_M.
//!
//! Normalized basis vectors `E_α` with `(E_α, E_{-α}) = 1` never appear
//! explicitly. A pair term `E_α∧E_{-α}` is stored as `κ_α^{-1} e_α∧e_{-α}`
//! and a triple term `N_{α,β} E_{α+β}∧E_{-α}∧E_{-β}` as
//! `N_{α,β} (κ_α κ_β)^{-1} e_{α+β}∧e_{-α}∧e_{-β}`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{OrbitError, Result};
use crate::levi::{LeviDatum, Quasiroot};
use crate::rational::{format_rational, parse_rational, q, Q};
use crate::rootsystem::{BasisElement, RootSystem};

/// Which space a multivector lives over. `Levi` carries the bitmask of Γ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    Levi(u64),
    Full,
}

/// A space on which the Schouten bracket and the invariance test make sense.
pub trait Ambient {
    fn root_system(&self) -> &RootSystem;
    fn space(&self) -> Space;
    /// Whether a global basis index belongs to the space; brackets are
    /// projected onto these indices.
    fn contains(&self, i: usize) -> bool;
    /// Root vectors generating the acting algebra together with the Cartan.
    fn generators(&self) -> Vec<usize>;
}

impl Ambient for RootSystem {
    fn root_system(&self) -> &RootSystem {
        self
    }

    fn space(&self) -> Space {
        Space::Full
    }

    fn contains(&self, _i: usize) -> bool {
        true
    }

    fn generators(&self) -> Vec<usize> {
        let mut g = Vec::new();
        for i in 0..self.rank() {
            let mut v = vec![0; self.rank()];
            v[i] = 1;
            let idx = self.root_index(&crate::rootsystem::Root(v)).expect("simple root");
            g.push(idx);
            g.push(self.neg_index(idx));
        }
        g
    }
}

impl Ambient for LeviDatum {
    fn root_system(&self) -> &RootSystem {
        LeviDatum::root_system(self)
    }

    fn space(&self) -> Space {
        Space::Levi(self.mask())
    }

    fn contains(&self, i: usize) -> bool {
        self.in_m(i)
    }

    fn generators(&self) -> Vec<usize> {
        let rs = LeviDatum::root_system(self);
        let mut g = Vec::new();
        for i in self.gamma() {
            let mut v = vec![0; rs.rank()];
            v[i - 1] = 1;
            let idx = rs.root_index(&crate::rootsystem::Root(v)).expect("simple root");
            g.push(idx);
            g.push(rs.neg_index(idx));
        }
        g
    }
}

/// Sorts an index tuple, returning `None` on a repeated index and otherwise
/// whether the permutation was odd.
pub fn canonicalize(idx: &mut [usize]) -> Option<bool> {
    let mut odd = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(odd)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multivector {
    degree: usize,
    space: Space,
    terms: BTreeMap<Vec<usize>, Q>,
}

impl Multivector {
    pub fn zero(degree: usize, space: Space) -> Self {
        Multivector { degree, space, terms: BTreeMap::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn space(&self) -> Space {
        self.space
    }

    /// Terms keyed by strictly increasing global basis indices.
    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Q> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, idx: &[usize]) -> Q {
        let mut v = idx.to_vec();
        match canonicalize(&mut v) {
            None => Q::zero(),
            Some(odd) => {
                let c = self.terms.get(&v).cloned().unwrap_or_else(Q::zero);
                if odd {
                    -c
                } else {
                    c
                }
            }
        }
    }

    /// Adds `c · x_{idx_1}∧…∧x_{idx_k}` for an arbitrary index order.
    pub fn add_term(&mut self, mut idx: Vec<usize>, c: Q) {
        assert_eq!(idx.len(), self.degree, "term degree");
        if c.is_zero() {
            return;
        }
        let Some(odd) = canonicalize(&mut idx) else {
            return;
        };
        let c = if odd { -c } else { c };
        match self.terms.entry(idx) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, s: &Q) -> Self {
        let mut out = Multivector::zero(self.degree, self.space);
        if s.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(k, v)| (k.clone(), v * s)).collect();
        out
    }

    fn check_compatible(&self, o: &Self) -> Result<()> {
        if self.space != o.space {
            return Err(OrbitError::Parameter("multivectors over different spaces".into()));
        }
        if self.degree != o.degree {
            return Err(OrbitError::Parameter(format!("degree {} vs {}", self.degree, o.degree)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&-Q::one()))
    }

    /// `Some(s)` when `self = s · o` and `o ≠ 0`.
    pub fn ratio_to(&self, o: &Self) -> Option<Q> {
        let (k, v) = o.terms.iter().next()?;
        let s = self.terms.get(k).cloned().unwrap_or_else(Q::zero) / v;
        if self.terms.len() == o.terms.len() && o.scale(&s) == *self {
            Some(s)
        } else {
            None
        }
    }

    pub fn to_json(&self, rs: &RootSystem) -> MultivectorJson {
        MultivectorJson {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| TermJson {
                    basis: k.iter().map(|&i| rs.basis_element(i).to_string()).collect(),
                    coeff: format_rational(v),
                })
                .collect(),
        }
    }

    pub fn from_json<A: Ambient + ?Sized>(amb: &A, j: &MultivectorJson) -> Result<Self> {
        let rs = amb.root_system();
        let mut out = Multivector::zero(j.degree, amb.space());
        for t in &j.terms {
            if t.basis.len() != j.degree {
                return Err(OrbitError::Parameter(format!("term of degree {} in a {}-vector", t.basis.len(), j.degree)));
            }
            let mut idx = Vec::with_capacity(j.degree);
            for label in &t.basis {
                let i = rs.basis_index(&BasisElement::from_str(label)?)?;
                if !amb.contains(i) {
                    return Err(OrbitError::Parameter(format!("{label} outside the space")));
                }
                idx.push(i);
            }
            out.add_term(idx, parse_rational(&t.coeff)?);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub basis: Vec<String>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultivectorJson {
    pub degree: usize,
    pub terms: Vec<TermJson>,
}

fn bracket_into<A: Ambient + ?Sized>(amb: &A, i: usize, j: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
    amb.root_system().bracket_indices(i, j).iter().copied().filter(move |&(k, _)| amb.contains(k))
}

/// Schouten bracket `[[v, w]] = Σ (-1)^{i+j} [v_i, w_j] ∧ v_1…v̂_i…v_k ∧ w_1…ŵ_j…w_l`
/// on decomposable terms. Over `m` the Lie bracket is followed by the
/// projection onto `m`, which drops Cartan and Levi components.
pub fn schouten<A: Ambient + ?Sized>(amb: &A, v: &Multivector, w: &Multivector) -> Result<Multivector> {
    if v.space != amb.space() || w.space != amb.space() {
        return Err(OrbitError::Parameter("schouten bracket of multivectors over different spaces".into()));
    }
    let degree = (v.degree + w.degree).saturating_sub(1);
    let mut acc: HashMap<Vec<usize>, Q> = HashMap::new();
    if v.degree > 0 && w.degree > 0 {
        for (x, cx) in &v.terms {
            for (y, cy) in &w.terms {
                let c = cx * cy;
                for (i, &xi) in x.iter().enumerate() {
                    for (j, &yj) in y.iter().enumerate() {
                        for (z, n) in bracket_into(amb, xi, yj) {
                            let mut idx = Vec::with_capacity(degree);
                            idx.push(z);
                            idx.extend(x.iter().enumerate().filter(|&(a, _)| a != i).map(|(_, &e)| e));
                            idx.extend(y.iter().enumerate().filter(|&(b, _)| b != j).map(|(_, &e)| e));
                            let Some(odd) = canonicalize(&mut idx) else {
                                continue;
                            };
                            let mut s = n;
                            if (i + j) % 2 == 1 {
                                s = -s;
                            }
                            if odd {
                                s = -s;
                            }
                            *acc.entry(idx).or_insert_with(Q::zero) += &c * q(s);
                        }
                    }
                }
            }
        }
    }
    Ok(Multivector {
        degree,
        space: amb.space(),
        terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
    })
}

/// `ad_x v` for a basis element `x` of the acting algebra.
pub fn act<A: Ambient + ?Sized>(amb: &A, x: usize, v: &Multivector) -> Multivector {
    let mut acc: HashMap<Vec<usize>, Q> = HashMap::new();
    for (t, c) in &v.terms {
        for (i, &ti) in t.iter().enumerate() {
            for (z, n) in bracket_into(amb, x, ti) {
                let mut idx = t.clone();
                idx[i] = z;
                let Some(odd) = canonicalize(&mut idx) else {
                    continue;
                };
                let s = if odd { -n } else { n };
                *acc.entry(idx).or_insert_with(Q::zero) += c * q(s);
            }
        }
    }
    Multivector {
        degree: v.degree,
        space: v.space,
        terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
    }
}

/// Total weight of a basis tuple (Cartan elements have weight zero).
pub fn tuple_weight(rs: &RootSystem, idx: &[usize]) -> Vec<i32> {
    let mut w = vec![0; rs.rank()];
    for &i in idx {
        if let Some(r) = rs.weight(i) {
            for (a, b) in w.iter_mut().zip(&r.0) {
                *a += b;
            }
        }
    }
    w
}

/// Invariance under `l` (over `m`) or `g` (over `g`): every term has weight
/// zero and the root-vector generators annihilate `v`.
pub fn is_invariant<A: Ambient + ?Sized>(amb: &A, v: &Multivector) -> bool {
    let rs = amb.root_system();
    if v.terms.keys().any(|t| tuple_weight(rs, t).iter().any(|&c| c != 0)) {
        return false;
    }
    amb.generators().into_iter().all(|x| act(amb, x, v).is_zero())
}

/// `e_α ↦ -e_{-α}`, `h ↦ -h` extended to the exterior algebra.
pub fn cartan_involution(rs: &RootSystem, v: &Multivector) -> Multivector {
    let mut out = Multivector::zero(v.degree, v.space);
    for (t, c) in &v.terms {
        let mut sign = 1i64;
        let idx: Vec<usize> = t
            .iter()
            .map(|&i| {
                let (j, s) = rs.theta(i);
                sign *= s;
                j
            })
            .collect();
        out.add_term(idx, c * q(sign));
    }
    out
}

/// The coefficient map `ᾱ ↦ c(ᾱ)` of an invariant bivector
/// `½ Σ_{α ∈ Ω∖Ω_l} c(ᾱ) E_α∧E_{-α}`, stored on the standard positive
/// quasiroots; `c(-ᾱ) = -c(ᾱ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketCoefficients {
    values: BTreeMap<Quasiroot, Q>,
}

impl BracketCoefficients {
    pub fn new(levi: &LeviDatum, values: BTreeMap<Quasiroot, Q>) -> Result<Self> {
        let pos = levi.standard_positive();
        for k in values.keys() {
            if !pos.contains(k) {
                return Err(OrbitError::Parameter(format!("{k} is not a positive quasiroot")));
            }
        }
        if let Some(missing) = pos.positives().iter().find(|p| !values.contains_key(p)) {
            return Err(OrbitError::Parameter(format!("no coefficient for {missing}")));
        }
        Ok(BracketCoefficients { values })
    }

    /// Builds the map from values on arbitrary quasiroots, reading `c(ᾱ)`
    /// or `-c(-ᾱ)` for each standard positive `ᾱ`.
    pub fn from_fn(levi: &LeviDatum, mut f: impl FnMut(&Quasiroot) -> Q) -> Self {
        let values = levi.standard_positive().positives().iter().map(|p| (p.clone(), f(p))).collect();
        BracketCoefficients { values }
    }

    pub fn constant(levi: &LeviDatum, k: &Q) -> Self {
        Self::from_fn(levi, |_| k.clone())
    }

    pub fn values(&self) -> &BTreeMap<Quasiroot, Q> {
        &self.values
    }

    /// `c(ᾱ)` for any quasiroot.
    pub fn value(&self, x: &Quasiroot) -> Q {
        match self.values.get(x) {
            Some(v) => v.clone(),
            None => self.values.get(&x.neg()).map(|v| -v.clone()).unwrap_or_else(Q::zero),
        }
    }

    pub fn scale(&self, s: &Q) -> Self {
        BracketCoefficients { values: self.values.iter().map(|(k, v)| (k.clone(), v * s)).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        BracketCoefficients {
            values: self.values.iter().map(|(k, v)| (k.clone(), v + o.value(k))).collect(),
        }
    }

    pub fn to_json(&self) -> BTreeMap<String, String> {
        self.values.iter().map(|(k, v)| (k.key(), format_rational(v))).collect()
    }

    pub fn from_json(levi: &LeviDatum, j: &BTreeMap<String, String>) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (k, v) in j {
            values.insert(Quasiroot::from_key(k)?, parse_rational(v)?);
        }
        Self::new(levi, values)
    }
}

/// The invariant bivector with coefficients `c`, in the Chevalley basis.
pub fn bivector_from_coefficients(levi: &LeviDatum, c: &BracketCoefficients) -> Multivector {
    let rs = levi.root_system();
    let mut out = Multivector::zero(2, levi.space());
    for (x, fiber) in levi.classes() {
        if !x.is_standard_positive() {
            continue;
        }
        let cx = c.value(x);
        if cx.is_zero() {
            continue;
        }
        for &a in fiber {
            out.add_term(vec![a, rs.neg_index(a)], &cx / rs.killing_pairing(a));
        }
    }
    out
}

/// Inverse of [`bivector_from_coefficients`].
pub fn coefficients_of(levi: &LeviDatum, v: &Multivector) -> Result<BracketCoefficients> {
    if v.degree != 2 || v.space != levi.space() {
        return Err(OrbitError::Parameter("expected a bivector over m".into()));
    }
    let rs = levi.root_system();
    let mut normalized: HashMap<usize, Q> = HashMap::new();
    for (t, cv) in &v.terms {
        let (a, b) = (t[0], t[1]);
        if !rs.is_root_index(a) || rs.neg_index(a) != b {
            return Err(OrbitError::NotInvariant(format!(
                "off-diagonal term {}∧{}",
                rs.basis_element(a),
                rs.basis_element(b)
            )));
        }
        // a < b, so a is the positive root of the pair
        normalized.insert(a, cv * rs.killing_pairing(a));
    }
    let mut values = BTreeMap::new();
    for x in levi.standard_positive().positives() {
        let fiber = levi.fiber(x).expect("positive quasiroot has a fiber");
        let vals: Vec<Q> = fiber.iter().map(|a| normalized.get(a).cloned().unwrap_or_else(Q::zero)).collect();
        if vals.iter().any(|y| *y != vals[0]) {
            return Err(OrbitError::NotInvariant(format!("coefficient not constant on the fiber of {x}")));
        }
        values.insert(x.clone(), vals[0].clone());
    }
    Ok(BracketCoefficients { values })
}

/// Coefficients of a θ-invariant trivector in the normalized basis, keyed by
/// the sorted triple of global root indices; the value multiplies the wedge
/// in sorted order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TrivectorCoefficients {
    pub values: BTreeMap<[usize; 3], Q>,
}

impl TrivectorCoefficients {
    /// Coefficient `e(α, β)` of `E_{α+β}∧E_{-α}∧E_{-β}`.
    pub fn e(&self, rs: &RootSystem, a: usize, b: usize) -> Q {
        let g = rs.root_index(&rs.roots()[a].add(&rs.roots()[b]));
        let Some(g) = g else { return Q::zero() };
        let mut idx = [g, rs.neg_index(a), rs.neg_index(b)];
        match canonicalize(&mut idx) {
            None => Q::zero(),
            Some(odd) => {
                let v = self.values.get(&idx).cloned().unwrap_or_else(Q::zero);
                if odd {
                    -v
                } else {
                    v
                }
            }
        }
    }

    /// The same trivector in the Chevalley basis.
    pub fn to_multivector(&self, levi: &LeviDatum) -> Multivector {
        let rs = levi.root_system();
        let mut out = Multivector::zero(3, levi.space());
        for (idx, v) in &self.values {
            // the two entries of equal sign are -α and -β
            let pos: Vec<usize> = idx.iter().copied().filter(|&i| rs.roots()[i].is_positive()).collect();
            let pair: Vec<usize> = if pos.len() == 2 {
                pos
            } else {
                idx.iter().copied().filter(|&i| !rs.roots()[i].is_positive()).collect()
            };
            let k = rs.killing_pairing(pair[0]) * rs.killing_pairing(pair[1]);
            out.add_term(idx.to_vec(), v / k);
        }
        out
    }
}

/// Zero-sum triples `(α, β)` with `α, β, α+β` roots of `m`, α and β of
/// equal sign, listed once per unordered pair.
fn m_pairs(levi: &LeviDatum) -> Vec<(usize, usize, usize)> {
    let rs = levi.root_system();
    let mut out = Vec::new();
    for (ia, &a) in levi.m_roots().iter().enumerate() {
        for &b in &levi.m_roots()[ia + 1..] {
            let (ra, rb) = (&rs.roots()[a], &rs.roots()[b]);
            if ra.is_positive() != rb.is_positive() {
                continue;
            }
            if let Some(g) = rs.root_index(&ra.add(rb)) {
                if levi.in_m(g) {
                    out.push((a, b, g));
                }
            }
        }
    }
    out
}

/// The closed-form coefficients of `[[v_c, v_d]]` for invariant bivectors:
/// `e(α,β) = N_{α,β}(d(ᾱ)(c(β̄)-c(γ̄)) + d(β̄)(c(ᾱ)-c(γ̄)) - d(γ̄)(c(ᾱ)+c(β̄)))`
/// with `γ = α+β`.
pub fn schouten_closed_form(levi: &LeviDatum, c: &BracketCoefficients, d: &BracketCoefficients) -> TrivectorCoefficients {
    let rs = levi.root_system();
    let mut out = TrivectorCoefficients::default();
    for (a, b, g) in m_pairs(levi) {
        let qa = levi.quasiroot_of(a).unwrap();
        let qb = levi.quasiroot_of(b).unwrap();
        let qg = levi.quasiroot_of(g).unwrap();
        let (ca, cb, cg) = (c.value(qa), c.value(qb), c.value(qg));
        let (da, db, dg) = (d.value(qa), d.value(qb), d.value(qg));
        let inner = &da * (&cb - &cg) + &db * (&ca - &cg) - &dg * (&ca + &cb);
        let e = inner * q(rs.n(a, b));
        if e.is_zero() {
            continue;
        }
        let mut idx = [g, rs.neg_index(a), rs.neg_index(b)];
        let odd = canonicalize(&mut idx).expect("distinct roots");
        let e = if odd { -e } else { e };
        *out.values.entry(idx).or_insert_with(Q::zero) += e;
    }
    out.values.retain(|_, v| !v.is_zero());
    out
}

/// `φ_M = ⅓ Σ N_{α,β} E_{α+β}∧E_{-α}∧E_{-β}` over `α, β, α+β ∈ Ω∖Ω_l`.
pub fn phi_m(levi: &LeviDatum) -> Multivector {
    let rs = levi.root_system();
    let third = Q::new(1.into(), 3.into());
    let mut out = Multivector::zero(3, levi.space());
    for &a in levi.m_roots() {
        for &b in levi.m_roots() {
            let n = rs.n(a, b);
            if n == 0 {
                continue;
            }
            let g = rs.root_index(&rs.roots()[a].add(&rs.roots()[b])).unwrap();
            if !levi.in_m(g) {
                continue;
            }
            let k = rs.killing_pairing(a) * rs.killing_pairing(b);
            out.add_term(vec![g, rs.neg_index(a), rs.neg_index(b)], &third * q(n) / k);
        }
    }
    out
}

/// The scalar `μ` with `[[f, f]] = μ K² φ_M` for the constant solution
/// `c ≡ K`, checked to be the same on every term. `μ = 1` when `φ_M = 0`.
pub fn calibration(levi: &LeviDatum) -> Result<Q> {
    let f = bivector_from_coefficients(levi, &BracketCoefficients::constant(levi, &Q::one()));
    let ff = schouten(levi, &f, &f)?;
    let phi = phi_m(levi);
    if phi.is_zero() {
        return if ff.is_zero() {
            Ok(Q::one())
        } else {
            Err(OrbitError::Internal("[[f,f]] ≠ 0 for constant f while φ_M = 0".into()))
        };
    }
    let mu = ff
        .ratio_to(&phi)
        .ok_or_else(|| OrbitError::Internal("[[f,f]] for constant f is not a multiple of φ_M".into()))?;
    if mu.is_zero() {
        return Err(OrbitError::Internal("zero calibration scalar".into()));
    }
    Ok(mu)
}

/// `[[f, f]] - K² μ φ_M` for the bivector with coefficients `c`.
pub fn phi_bracket_residual(levi: &LeviDatum, c: &BracketCoefficients, k: &Q) -> Result<Multivector> {
    let f = bivector_from_coefficients(levi, c);
    let ff = schouten(levi, &f, &f)?;
    let mu = calibration(levi)?;
    ff.sub(&phi_m(levi).scale(&(mu * k * k)))
}

/// `c(ᾱ) = 1/λ(ᾱ)` for `λ` given on the simple quasiroots (aligned with
/// the coordinates of Π∖Γ) and extended linearly.
pub fn kks(levi: &LeviDatum, lambda: &[Q]) -> Result<BracketCoefficients> {
    if lambda.len() != levi.complement().len() {
        return Err(OrbitError::Parameter(format!(
            "λ needs {} values, got {}",
            levi.complement().len(),
            lambda.len()
        )));
    }
    let mut values = BTreeMap::new();
    for x in levi.standard_positive().positives() {
        let l = linear_form(lambda, x);
        if l.is_zero() {
            return Err(OrbitError::DegenerateForm(format!("λ vanishes on {x}")));
        }
        values.insert(x.clone(), l.recip());
    }
    Ok(BracketCoefficients { values })
}

/// `λ(ᾱ)` for `λ` given on the simple quasiroots.
pub fn linear_form(lambda: &[Q], x: &Quasiroot) -> Q {
    lambda.iter().zip(&x.0).fold(Q::zero(), |s, (l, &c)| s + l * q(c as i64))
}

/// Sklyanin–Drinfeld `r = Σ_{α>0} E_α∧E_{-α}`.
pub fn standard_r_matrix(rs: &RootSystem) -> Multivector {
    let mut out = Multivector::zero(2, Space::Full);
    for a in 0..rs.num_positive() {
        out.add_term(vec![a, rs.neg_index(a)], rs.killing_pairing(a).recip());
    }
    out
}

/// `φ = [[r, r]]` and whether it is `g`-invariant.
pub fn verify_cybe(rs: &RootSystem) -> Result<(Multivector, bool)> {
    let r = standard_r_matrix(rs);
    let phi = schouten(rs, &r, &r)?;
    let inv = is_invariant(rs, &phi);
    Ok((phi, inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use std::sync::Arc;

    fn levi(t: &str, gamma: &[usize]) -> LeviDatum {
        let rs = Arc::new(RootSystem::new(t.parse().unwrap()).unwrap());
        LeviDatum::new(rs, gamma).unwrap()
    }

    fn coeffs(l: &LeviDatum, vals: &[Q]) -> BracketCoefficients {
        let pos = l.standard_positive().positives().to_vec();
        BracketCoefficients::new(l, pos.into_iter().zip(vals.iter().cloned()).collect()).unwrap()
    }

    #[test]
    fn canonical_signs() {
        let mut v = vec![3, 1, 2];
        assert_eq!(canonicalize(&mut v), Some(false));
        let mut v = vec![2, 1, 3];
        assert_eq!(canonicalize(&mut v), Some(true));
        let mut v = vec![2, 1, 2];
        assert_eq!(canonicalize(&mut v), None);
    }

    #[test]
    fn bivector_round_trip() {
        let l = levi("A2", &[1]);
        let c = coeffs(&l, &[q(1)]);
        let v = bivector_from_coefficients(&l, &c);
        assert_eq!(v.len(), 2);
        assert!(is_invariant(&l, &v));
        assert_eq!(coefficients_of(&l, &v).unwrap(), c);
        let zero = BracketCoefficients::constant(&l, &Q::zero());
        assert!(bivector_from_coefficients(&l, &zero).is_zero());
    }

    #[test]
    fn fiber_inconstant_bivector_rejected() {
        let l = levi("A2", &[1]);
        let rs = l.root_system();
        let a2 = rs.root_index(&crate::rootsystem::Root(vec![0, 1])).unwrap();
        let mut v = Multivector::zero(2, l.space());
        v.add_term(vec![a2, rs.neg_index(a2)], q(1));
        assert!(matches!(coefficients_of(&l, &v), Err(OrbitError::NotInvariant(_))));
        assert!(!is_invariant(&l, &v));
    }

    #[test]
    fn unpaired_term_not_invariant() {
        let l = levi("A2", &[]);
        let mut v = Multivector::zero(2, l.space());
        v.add_term(vec![0, 1], q(1));
        assert!(!is_invariant(&l, &v));
    }

    #[test]
    fn phi_m_examples() {
        assert!(phi_m(&levi("A2", &[1])).is_zero());
        assert!(phi_m(&levi("A1", &[])).is_zero());
        let l = levi("A2", &[]);
        let phi = phi_m(&l);
        assert_eq!(phi.len(), 2);
        assert!(is_invariant(&l, &phi));
        assert_eq!(cartan_involution(l.root_system(), &phi), phi);
    }

    #[test]
    fn calibration_is_minus_one() {
        for (t, g) in [("A2", vec![]), ("A3", vec![2]), ("B2", vec![]), ("G2", vec![]), ("B3", vec![1])] {
            assert_eq!(calibration(&levi(t, &g)).unwrap(), q(-1), "{t}");
        }
    }

    #[test]
    fn closed_form_matches_direct_bracket() {
        let l = levi("B2", &[]);
        let c = coeffs(&l, &[q(2), frac(-1, 3), q(5), frac(7, 2)]);
        let d = coeffs(&l, &[frac(1, 4), q(3), q(-2), q(1)]);
        let direct = schouten(&l, &bivector_from_coefficients(&l, &c), &bivector_from_coefficients(&l, &d)).unwrap();
        let closed = schouten_closed_form(&l, &c, &d).to_multivector(&l);
        assert_eq!(direct, closed);
    }

    #[test]
    fn constant_closed_form() {
        let l = levi("A2", &[]);
        let c = BracketCoefficients::constant(&l, &q(3));
        let e = schouten_closed_form(&l, &c, &c);
        let rs = l.root_system();
        for (a, b, _) in m_pairs(&l) {
            assert_eq!(e.e(rs, a, b), q(-18 * rs.n(a, b)));
        }
    }

    #[test]
    fn kks_examples() {
        let l = levi("A2", &[]);
        let s = kks(&l, &[q(1), q(1)]).unwrap();
        let vals: Vec<Q> = l.standard_positive().positives().iter().map(|x| s.value(x)).collect();
        assert_eq!(vals, vec![q(1), q(1), frac(1, 2)]);
        let f = bivector_from_coefficients(&l, &s);
        assert!(schouten(&l, &f, &f).unwrap().is_zero());
        assert!(schouten_closed_form(&l, &s, &s).values.is_empty());
        assert!(matches!(kks(&l, &[q(1), q(-1)]), Err(OrbitError::DegenerateForm(_))));
        let l1 = levi("A1", &[]);
        assert_eq!(kks(&l1, &[q(5)]).unwrap().value(&Quasiroot(vec![1])), frac(1, 5));
    }

    #[test]
    fn residual_examples() {
        let l = levi("A2", &[]);
        let k = BracketCoefficients::constant(&l, &q(1));
        assert!(phi_bracket_residual(&l, &k, &q(1)).unwrap().is_zero());
        let bad = coeffs(&l, &[q(1), q(1), q(5)]);
        assert!(!phi_bracket_residual(&l, &bad, &q(1)).unwrap().is_zero());
        let s = kks(&l, &[q(2), q(3)]).unwrap();
        assert!(phi_bracket_residual(&l, &s, &q(0)).unwrap().is_zero());
    }

    #[test]
    fn r_matrices() {
        for (t, n) in [("A1", 1), ("A2", 3), ("G2", 6)] {
            let rs = RootSystem::new(t.parse().unwrap()).unwrap();
            assert_eq!(standard_r_matrix(&rs).len(), n);
        }
        for t in ["A1", "A2", "B2", "G2"] {
            let rs = RootSystem::new(t.parse().unwrap()).unwrap();
            let (phi, inv) = verify_cybe(&rs).unwrap();
            assert!(inv, "{t}");
            assert!(!phi.is_zero());
        }
    }

    #[test]
    fn mismatched_spaces() {
        let l = levi("A2", &[]);
        let rs = l.root_system();
        let r = standard_r_matrix(rs);
        let f = bivector_from_coefficients(&l, &BracketCoefficients::constant(&l, &q(1)));
        assert!(matches!(schouten(&l, &f, &r), Err(OrbitError::Parameter(_))));
    }

    #[test]
    fn json_round_trip() {
        let l = levi("B2", &[]);
        let phi = phi_m(&l);
        let j = phi.to_json(l.root_system());
        assert_eq!(Multivector::from_json(&l, &j).unwrap(), phi);
        let c = coeffs(&l, &[q(2), frac(-1, 3), q(5), frac(7, 2)]);
        assert_eq!(BracketCoefficients::from_json(&l, &c.to_json()).unwrap(), c);
    }
}
