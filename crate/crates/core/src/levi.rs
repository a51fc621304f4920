//! The orbit datum `(g, Γ)`: Levi roots, the complement `m`, quasiroots and
//! the combinatorics of linear and semilinear subsets.
//!
//! A quasiroot is stored as the restriction of a root's coefficient vector to
//! the simple roots outside Γ; two roots of `m` have the same quasiroot iff
//! they differ by an element of the span of Γ.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{OrbitError, Result};
use crate::linalg::rref;
use crate::multivec::BracketCoefficients;
use crate::rational::{q, Q};
use crate::rootsystem::{Root, RootSystem};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Quasiroot(pub Vec<i32>);

impl Quasiroot {
    /// Canonical string key: comma-joined coordinates.
    pub fn key(&self) -> String {
        self.0.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn from_key(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| t.trim().parse::<i32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Quasiroot)
            .map_err(|_| OrbitError::Parameter(format!("bad quasiroot key {s:?}")))
    }

    pub fn neg(&self) -> Self {
        Quasiroot(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        Quasiroot(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Quasiroot(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Positive with respect to the standard ordering (all coordinates ≥ 0).
    pub fn is_standard_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c >= 0)
    }

    pub fn to_rational(&self) -> Vec<Q> {
        self.0.iter().map(|&c| q(c as i64)).collect()
    }
}

impl fmt::Display for Quasiroot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.key())
    }
}

#[derive(Clone, Debug)]
pub struct LeviDatum {
    rs: Arc<RootSystem>,
    gamma: Vec<usize>,
    complement: Vec<usize>,
    mask: u64,
    in_m: Vec<bool>,
    m_roots: Vec<usize>,
    levi_roots: Vec<usize>,
    quasi: HashMap<usize, Quasiroot>,
    classes: BTreeMap<Quasiroot, Vec<usize>>,
    standard: PositiveSystem,
}

impl LeviDatum {
    /// `gamma` holds 1-based (Bourbaki) indices of the simple roots of the
    /// Levi factor.
    pub fn new(rs: Arc<RootSystem>, gamma: &[usize]) -> Result<Self> {
        let n = rs.rank();
        let mut g: BTreeSet<usize> = BTreeSet::new();
        for &i in gamma {
            if i == 0 || i > n {
                return Err(OrbitError::Parameter(format!("simple root index {i} outside 1..={n}")));
            }
            g.insert(i - 1);
        }
        if g.len() == n {
            return Err(OrbitError::DegenerateOrbit("Γ = Π gives a point orbit".into()));
        }
        let gamma: Vec<usize> = g.into_iter().collect();
        let complement: Vec<usize> = (0..n).filter(|i| !gamma.contains(i)).collect();
        let mask = gamma.iter().fold(0u64, |m, &i| m | (1 << i));

        let nroots = rs.roots().len();
        let mut in_m = vec![false; nroots];
        let mut m_roots = Vec::new();
        let mut levi_roots = Vec::new();
        let mut quasi = HashMap::new();
        let mut classes: BTreeMap<Quasiroot, Vec<usize>> = BTreeMap::new();
        for (i, r) in rs.roots().iter().enumerate() {
            let qr = Quasiroot(complement.iter().map(|&j| r.0[j]).collect());
            if qr.is_zero() {
                levi_roots.push(i);
            } else {
                in_m[i] = true;
                m_roots.push(i);
                classes.entry(qr.clone()).or_default().push(i);
                quasi.insert(i, qr);
            }
        }
        let k = complement.len();
        let positives: Vec<Quasiroot> =
            classes.keys().filter(|q| q.is_standard_positive()).cloned().collect();
        let simple: Vec<Quasiroot> = (0..k)
            .map(|i| {
                let mut v = vec![0; k];
                v[i] = 1;
                Quasiroot(v)
            })
            .collect();
        let decomposition = positives
            .iter()
            .map(|p| (p.clone(), p.0.iter().map(|&c| c as i64).collect()))
            .collect();
        let standard = PositiveSystem::assemble(positives, simple, decomposition);

        let levi = LeviDatum {
            rs,
            gamma,
            complement,
            mask,
            in_m,
            m_roots,
            levi_roots,
            quasi,
            classes,
            standard,
        };
        levi.check_bracket_spans()?;
        Ok(levi)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn root_system_arc(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    /// 1-based indices of Γ.
    pub fn gamma(&self) -> Vec<usize> {
        self.gamma.iter().map(|i| i + 1).collect()
    }

    /// 1-based indices of Π∖Γ, aligned with quasiroot coordinates.
    pub fn complement(&self) -> Vec<usize> {
        self.complement.iter().map(|i| i + 1).collect()
    }

    pub(crate) fn mask(&self) -> u64 {
        self.mask
    }

    pub fn dim_m(&self) -> usize {
        self.m_roots.len()
    }

    /// Global basis indices of the root vectors spanning `m`.
    pub fn m_roots(&self) -> &[usize] {
        &self.m_roots
    }

    pub fn levi_roots(&self) -> &[usize] {
        &self.levi_roots
    }

    pub fn in_m(&self, i: usize) -> bool {
        self.in_m.get(i).copied().unwrap_or(false)
    }

    pub fn quasiroot_of(&self, root_index: usize) -> Option<&Quasiroot> {
        self.quasi.get(&root_index)
    }

    pub fn quasiroots(&self) -> impl Iterator<Item = &Quasiroot> {
        self.classes.keys()
    }

    pub fn is_quasiroot(&self, q: &Quasiroot) -> bool {
        self.classes.contains_key(q)
    }

    pub fn fiber(&self, q: &Quasiroot) -> Option<&[usize]> {
        self.classes.get(q).map(Vec::as_slice)
    }

    pub fn classes(&self) -> &BTreeMap<Quasiroot, Vec<usize>> {
        &self.classes
    }

    pub fn standard_positive(&self) -> &PositiveSystem {
        &self.standard
    }

    /// The quasiroot of the simple root with 1-based index `i ∉ Γ`.
    pub fn simple_quasiroot(&self, i: usize) -> Result<Quasiroot> {
        let pos = self
            .complement
            .iter()
            .position(|&j| j + 1 == i)
            .ok_or_else(|| OrbitError::Parameter(format!("simple root {i} lies in Γ or outside Π")))?;
        let mut v = vec![0; self.complement.len()];
        v[pos] = 1;
        Ok(Quasiroot(v))
    }

    /// Ordered pairs `(a, b)` of quasiroots with `a + b` a quasiroot.
    pub fn composable_pairs(&self) -> Vec<(Quasiroot, Quasiroot)> {
        let mut out = Vec::new();
        for a in self.classes.keys() {
            for b in self.classes.keys() {
                if self.classes.contains_key(&a.add(b)) {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }

    /// `[m_a, m_b] = m_{a+b}` whenever `a + b` is a quasiroot: the root
    /// vectors reached by brackets of the two fibers cover the target fiber.
    fn check_bracket_spans(&self) -> Result<()> {
        let rs = &*self.rs;
        for (a, b) in self.composable_pairs() {
            let target: BTreeSet<usize> = self.classes[&a.add(&b)].iter().copied().collect();
            let mut hit = BTreeSet::new();
            for &x in &self.classes[&a] {
                for &y in &self.classes[&b] {
                    if rs.n(x, y) != 0 {
                        let s = rs.roots()[x].add(&rs.roots()[y]);
                        hit.insert(rs.root_index(&s).expect("sum is a root"));
                    }
                }
            }
            if hit != target {
                return Err(OrbitError::Internal(format!("[m_{a}, m_{b}] does not span m_{}", a.add(&b))));
            }
        }
        Ok(())
    }

    /// Classifies a set of quasiroots as linear, semilinear or neither.
    pub fn subset_classify(&self, s: &[Quasiroot]) -> Result<SubsetVerdict> {
        for x in s {
            if !self.is_quasiroot(x) {
                return Err(OrbitError::Parameter(format!("{x} is not a quasiroot")));
            }
        }
        let ambient: Vec<Vec<Q>> = self.classes.keys().map(Quasiroot::to_rational).collect();
        let sub: Vec<Vec<Q>> = s.iter().map(Quasiroot::to_rational).collect();
        Ok(classify_vectors(&ambient, &sub))
    }

    /// The image of Ω̄ in Ω̄ / span(Ψ), zero images removed.
    pub fn quotient_by(&self, psi: &[Quasiroot]) -> Result<QuotientSet> {
        let verdict = self.subset_classify(psi)?;
        if verdict.kind != SubsetKind::Linear {
            return Err(OrbitError::Precondition("Ψ is not a linear subset".into()));
        }
        let reducer = SpanReducer::new(&psi.iter().map(Quasiroot::to_rational).collect::<Vec<_>>(), self.complement.len());
        let mut classes: BTreeMap<Vec<Q>, Vec<Quasiroot>> = BTreeMap::new();
        let mut projection = BTreeMap::new();
        for x in self.classes.keys() {
            let key = reducer.reduce(&x.to_rational());
            if key.iter().all(Zero::is_zero) {
                continue;
            }
            classes.entry(key.clone()).or_default().push(x.clone());
            projection.insert(x.clone(), key);
        }
        Ok(QuotientSet { classes, projection })
    }

    /// Positive system from an explicit set of positive quasiroots. The set
    /// must be semilinear.
    pub fn positive_system_from(&self, set: &[Quasiroot]) -> Result<PositiveSystem> {
        let verdict = self.subset_classify(set)?;
        if verdict.kind != SubsetKind::Semilinear {
            return Err(OrbitError::Precondition(format!(
                "positive set is not semilinear (witness {:?})",
                verdict.witness
            )));
        }
        let members: BTreeSet<Quasiroot> = set.iter().cloned().collect();
        let simple: Vec<Quasiroot> = members
            .iter()
            .filter(|x| !members.iter().any(|y| members.contains(&x.sub(y))))
            .cloned()
            .collect();
        let k = self.complement.len();
        let cols = simple.len();
        let mut decomposition = BTreeMap::new();
        for x in &members {
            // solve Σ t_j simple_j = x exactly
            let mut rows: Vec<Vec<Q>> = (0..k)
                .map(|r| {
                    let mut row: Vec<Q> = simple.iter().map(|s| q(s.0[r] as i64)).collect();
                    row.push(q(x.0[r] as i64));
                    row
                })
                .collect();
            let pivots = rref(&mut rows, cols + 1);
            if pivots.len() != cols || pivots.contains(&cols) {
                return Err(OrbitError::Internal(format!("{x} has no unique decomposition over simple quasiroots")));
            }
            let mut coeffs = vec![0i64; cols];
            for (row, &p) in rows.iter().zip(&pivots) {
                let v = &row[cols];
                if !v.is_integer() || v.is_negative() {
                    return Err(OrbitError::Internal(format!("{x} is not a nonnegative integer combination")));
                }
                coeffs[p] = i64::try_from(v.to_integer()).map_err(|_| OrbitError::Internal("overflow".into()))?;
            }
            decomposition.insert(x.clone(), coeffs);
        }
        Ok(PositiveSystem::assemble(members.into_iter().collect(), simple, decomposition))
    }
}

impl LeviDatum {
    /// A positive system for which the recursion never divides by zero at a
    /// solution `c` of the φ-bracket equations with `K ≠ 0`.
    ///
    /// `Ψ = {c ≠ ±K}` is linear and the classes of value `+K` form a
    /// semilinear set `Y` of `Ω̄/Ψ`. The positives are the quasiroots outside
    /// Ψ projecting into `Y`, together with the elements of Ψ on which a
    /// lexicographic functional is positive.
    pub fn adapted_positive_system(&self, c: &BracketCoefficients, k: &Q) -> Result<PositiveSystem> {
        if k.is_zero() {
            return Err(OrbitError::Parameter("adapted positive systems need K ≠ 0".into()));
        }
        if !crate::moduli::verify_ff(self, c, k)?.holds {
            return Err(OrbitError::Precondition("c does not solve the φ-bracket equations".into()));
        }
        let kabs = k.abs();
        let psi: Vec<Quasiroot> = self.quasiroots().filter(|x| c.value(x).abs() != kabs).cloned().collect();
        if self.subset_classify(&psi)?.kind != SubsetKind::Linear {
            return Err(OrbitError::Internal("{c ≠ ±K} is not linear".into()));
        }
        let quotient = self.quotient_by(&psi)?;
        let mut y = Vec::new();
        for (key, members) in &quotient.classes {
            let plus = members.iter().filter(|x| c.value(x) == kabs).count();
            if plus != 0 && plus != members.len() {
                return Err(OrbitError::Internal("value K is not constant on a class of Ω̄/Ψ".into()));
            }
            if plus != 0 {
                y.push(key.clone());
            }
        }
        if !quotient.is_empty() && quotient.classify(&y).kind != SubsetKind::Semilinear {
            return Err(OrbitError::Internal("classes of value K are not semilinear".into()));
        }
        let y: BTreeSet<Vec<Q>> = y.into_iter().collect();
        let bound = self.quasiroots().flat_map(|x| x.0.iter().map(|c| c.abs())).max().unwrap_or(0) as i64;
        let base = 2 * bound + 1;
        let xi = |x: &Quasiroot| x.0.iter().rev().fold(0i64, |acc, &c| acc * base + c as i64);
        let psi_set: BTreeSet<&Quasiroot> = psi.iter().collect();
        let positives: Vec<Quasiroot> = self
            .quasiroots()
            .filter(|x| if psi_set.contains(x) { xi(x) > 0 } else { y.contains(&quotient.projection[*x]) })
            .cloned()
            .collect();
        let pos = self.positive_system_from(&positives)?;
        for x in pos.positives() {
            for (a, b) in pos.splittings(x) {
                if (c.value(&a) + c.value(&b)).is_zero() {
                    return Err(OrbitError::Internal(format!("c({a}) + c({b}) = 0 on the adapted system")));
                }
            }
        }
        Ok(pos)
    }
}

/// Positive quasiroots with their simple quasiroots and the decomposition of
/// each positive quasiroot over the simple ones.
#[derive(Clone, Debug, PartialEq)]
pub struct PositiveSystem {
    positives: Vec<Quasiroot>,
    simple: Vec<Quasiroot>,
    decomposition: BTreeMap<Quasiroot, Vec<i64>>,
}

impl PositiveSystem {
    fn assemble(mut positives: Vec<Quasiroot>, simple: Vec<Quasiroot>, decomposition: BTreeMap<Quasiroot, Vec<i64>>) -> Self {
        positives.sort_by(|a, b| {
            let ha: i64 = decomposition[a].iter().sum();
            let hb: i64 = decomposition[b].iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        PositiveSystem { positives, simple, decomposition }
    }

    /// Positive quasiroots ordered by height.
    pub fn positives(&self) -> &[Quasiroot] {
        &self.positives
    }

    pub fn simple(&self) -> &[Quasiroot] {
        &self.simple
    }

    pub fn contains(&self, x: &Quasiroot) -> bool {
        self.decomposition.contains_key(x)
    }

    pub fn decomposition(&self, x: &Quasiroot) -> Option<&[i64]> {
        self.decomposition.get(x).map(Vec::as_slice)
    }

    pub fn height(&self, x: &Quasiroot) -> Option<i64> {
        self.decomposition.get(x).map(|d| d.iter().sum())
    }

    /// Unordered splittings `x = a + b` with `a`, `b` positive; `a` precedes
    /// or equals `b` in height order.
    pub fn splittings(&self, x: &Quasiroot) -> Vec<(Quasiroot, Quasiroot)> {
        let order: HashMap<&Quasiroot, usize> = self.positives.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut out = Vec::new();
        for a in &self.positives {
            let b = x.sub(a);
            if let (Some(&ia), Some(&ib)) = (order.get(a), order.get(&b)) {
                if ia <= ib {
                    out.push((a.clone(), b));
                }
            }
        }
        out
    }

    /// Unordered positive pairs `(a, b)` whose sum is a quasiroot.
    pub fn composable_pairs(&self) -> Vec<(Quasiroot, Quasiroot)> {
        self.positives.iter().flat_map(|x| self.splittings(x)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubsetKind {
    Linear,
    Semilinear,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetVerdict {
    pub kind: SubsetKind,
    /// A violating pair when the verdict is `Neither`.
    pub witness: Option<(Vec<Q>, Vec<Q>)>,
}

fn neg_vec(v: &[Q]) -> Vec<Q> {
    v.iter().map(|x| -x.clone()).collect()
}

fn add_vec(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Reduction modulo the span of a set of vectors; two vectors are congruent
/// iff they reduce to the same canonical vector.
#[derive(Clone, Debug)]
pub struct SpanReducer {
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl SpanReducer {
    pub fn new(gens: &[Vec<Q>], dim: usize) -> Self {
        let mut rows = gens.to_vec();
        let pivots = rref(&mut rows, dim);
        SpanReducer { rows, pivots }
    }

    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x -= &f * y;
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }
}

/// Linear / semilinear classification of `sub ⊆ ambient` for a finite set
/// `ambient = -ambient` of nonzero vectors.
pub fn classify_vectors(ambient: &[Vec<Q>], sub: &[Vec<Q>]) -> SubsetVerdict {
    let amb: BTreeSet<Vec<Q>> = ambient.iter().cloned().collect();
    let s: BTreeSet<Vec<Q>> = sub.iter().cloned().collect();
    let dim = ambient.first().or(sub.first()).map_or(0, Vec::len);

    let span = SpanReducer::new(&s.iter().cloned().collect::<Vec<_>>(), dim);
    if amb.iter().all(|x| span.contains(x) == s.contains(x)) {
        return SubsetVerdict { kind: SubsetKind::Linear, witness: None };
    }
    let mut witness = None;
    'outer: for x in sub {
        for y in sub {
            let z = add_vec(x, y);
            if amb.contains(&z) && !s.contains(&z) {
                witness = Some((x.clone(), y.clone()));
                break 'outer;
            }
        }
    }
    if witness.is_none() {
        for x in &amb {
            let nx = neg_vec(x);
            if s.contains(x) == s.contains(&nx) {
                witness = Some((x.clone(), nx));
                break;
            }
        }
    }
    match witness {
        None => SubsetVerdict { kind: SubsetKind::Semilinear, witness: None },
        w => SubsetVerdict { kind: SubsetKind::Neither, witness: w },
    }
}

/// Ω̄ / Ψ: quotient classes keyed by the canonical reduced vector.
#[derive(Clone, Debug)]
pub struct QuotientSet {
    pub classes: BTreeMap<Vec<Q>, Vec<Quasiroot>>,
    pub projection: BTreeMap<Quasiroot, Vec<Q>>,
}

impl QuotientSet {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classify(&self, sub: &[Vec<Q>]) -> SubsetVerdict {
        let ambient: Vec<Vec<Q>> = self.classes.keys().cloned().collect();
        classify_vectors(&ambient, sub)
    }
}

/// Even-degree Betti numbers `b_0, b_2, …` of G/P_Γ, counted as the lengths
/// of minimal coset representatives.
///
/// The W-orbit of `λ = Σ_{i∉Γ} ω_i` is in bijection with W/W_Γ and the
/// breadth-first distance of `wλ` from `λ` is the length of the minimal
/// representative of `wW_Γ`.
pub fn betti_numbers(rs: &RootSystem, gamma: &[usize]) -> Result<Vec<usize>> {
    const ORBIT_LIMIT: usize = 200_000;
    let n = rs.rank();
    let mut in_gamma = vec![false; n];
    for &i in gamma {
        if i == 0 || i > n {
            return Err(OrbitError::Parameter(format!("simple root index {i} outside 1..={n}")));
        }
        in_gamma[i - 1] = true;
    }
    if in_gamma.iter().all(|&b| b) {
        return Err(OrbitError::DegenerateOrbit("Γ = Π gives a point orbit".into()));
    }
    let a = rs.cartan_matrix();
    let start: Vec<i64> = in_gamma.iter().map(|&g| if g { 0 } else { 1 }).collect();
    let mut dist: HashMap<Vec<i64>, usize> = HashMap::new();
    dist.insert(start.clone(), 0);
    let mut queue = VecDeque::from([start]);
    let mut counts: Vec<usize> = Vec::new();
    while let Some(mu) = queue.pop_front() {
        let d = dist[&mu];
        if counts.len() <= d {
            counts.resize(d + 1, 0);
        }
        counts[d] += 1;
        for i in 0..n {
            if mu[i] <= 0 {
                continue;
            }
            // s_i μ = μ - μ_i α_i, α_i in fundamental-weight coordinates
            let next: Vec<i64> = (0..n).map(|j| mu[j] - mu[i] * a[j][i]).collect();
            if !dist.contains_key(&next) {
                if dist.len() >= ORBIT_LIMIT {
                    return Err(OrbitError::Resource(format!("Weyl orbit larger than {ORBIT_LIMIT}")));
                }
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    Ok(counts)
}

/// Wire form of an orbit datum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitJson {
    pub r#type: String,
    pub gamma: Vec<usize>,
    pub dim_m: usize,
    /// quasiroot key → roots in its fiber
    pub quasiroots: BTreeMap<String, Vec<Root>>,
    pub positive: Vec<String>,
    pub simple: Vec<String>,
    pub betti: Vec<usize>,
}

impl LeviDatum {
    pub fn to_json(&self) -> Result<OrbitJson> {
        let rs = &*self.rs;
        Ok(OrbitJson {
            r#type: rs.simple_type().to_string(),
            gamma: self.gamma(),
            dim_m: self.dim_m(),
            quasiroots: self
                .classes
                .iter()
                .map(|(k, f)| (k.key(), f.iter().map(|&i| rs.roots()[i].clone()).collect()))
                .collect(),
            positive: self.standard.positives().iter().map(Quasiroot::key).collect(),
            simple: self.standard.simple().iter().map(Quasiroot::key).collect(),
            betti: betti_numbers(rs, &self.gamma())?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn levi(t: &str, gamma: &[usize]) -> LeviDatum {
        let rs = Arc::new(RootSystem::new(t.parse().unwrap()).unwrap());
        LeviDatum::new(rs, gamma).unwrap()
    }

    fn qr(v: &[i32]) -> Quasiroot {
        Quasiroot(v.to_vec())
    }

    #[test]
    fn full_flag_a2() {
        let l = levi("A2", &[]);
        assert_eq!(l.classes().len(), 6);
        assert!(l.classes().values().all(|f| f.len() == 1));
        assert_eq!(l.standard_positive().simple().len(), 2);
    }

    #[test]
    fn projective_plane() {
        let l = levi("A2", &[1]);
        let keys: Vec<_> = l.quasiroots().cloned().collect();
        assert_eq!(keys, vec![qr(&[-1]), qr(&[1])]);
        let fiber: BTreeSet<Root> =
            l.fiber(&qr(&[1])).unwrap().iter().map(|&i| l.root_system().roots()[i].clone()).collect();
        assert_eq!(fiber, BTreeSet::from([Root(vec![0, 1]), Root(vec![1, 1])]));
    }

    #[test]
    fn grassmannian_gr24() {
        let l = levi("A3", &[1, 3]);
        assert_eq!(l.classes().len(), 2);
        assert_eq!(l.fiber(&qr(&[1])).unwrap().len(), 4);
    }

    #[test]
    fn point_orbit_rejected() {
        let rs = Arc::new(RootSystem::new("A2".parse().unwrap()).unwrap());
        assert!(matches!(LeviDatum::new(rs.clone(), &[1, 2]), Err(OrbitError::DegenerateOrbit(_))));
        assert!(matches!(LeviDatum::new(rs, &[3]), Err(OrbitError::Parameter(_))));
    }

    #[test]
    fn fibers_are_symmetric() {
        for (t, g) in [("B3", vec![2]), ("G2", vec![1]), ("D4", vec![2]), ("F4", vec![1, 4])] {
            let l = levi(t, &g);
            let total: usize = l.classes().values().map(Vec::len).sum();
            assert_eq!(total, l.root_system().roots().len() - l.levi_roots().len());
            for (k, f) in l.classes() {
                assert_eq!(f.len(), l.fiber(&k.neg()).unwrap().len());
            }
        }
    }

    #[test]
    fn subset_verdicts() {
        let l = levi("A2", &[]);
        let v = l.subset_classify(&[qr(&[1, 0]), qr(&[-1, 0])]).unwrap();
        assert_eq!(v.kind, SubsetKind::Linear);
        let v = l.subset_classify(&[qr(&[1, 0]), qr(&[0, 1]), qr(&[1, 1])]).unwrap();
        assert_eq!(v.kind, SubsetKind::Semilinear);
        let v = l.subset_classify(&[qr(&[1, 0]), qr(&[0, 1]), qr(&[-1, -1])]).unwrap();
        assert_eq!(v.kind, SubsetKind::Neither);
        assert_eq!(v.witness, Some((qr(&[1, 0]).to_rational(), qr(&[0, 1]).to_rational())));
        assert!(l.subset_classify(&[qr(&[2, 0])]).is_err());
    }

    #[test]
    fn quotients() {
        let l = levi("A2", &[]);
        assert_eq!(l.quotient_by(&[]).unwrap().len(), 6);
        let qs = l.quotient_by(&[qr(&[1, 0]), qr(&[-1, 0])]).unwrap();
        assert_eq!(qs.len(), 2);
        let merged = qs.classes.values().find(|c| c.contains(&qr(&[0, 1]))).unwrap();
        assert_eq!(merged, &vec![qr(&[0, 1]), qr(&[1, 1])]);
        let all = l.quotient_by(&l.quasiroots().cloned().collect::<Vec<_>>()).unwrap().classes;
        assert!(all.is_empty());
        assert!(l.quotient_by(&[qr(&[1, 0])]).is_err());
    }

    #[test]
    fn standard_positive_systems() {
        let l = levi("A2", &[]);
        let p = l.standard_positive();
        assert_eq!(p.positives(), &[qr(&[1, 0]), qr(&[0, 1]), qr(&[1, 1])]);
        let l = levi("A2", &[1]);
        assert_eq!(l.standard_positive().positives(), &[qr(&[1])]);
        let l = levi("B2", &[]);
        assert_eq!(l.standard_positive().positives().len(), 4);
        assert_eq!(l.standard_positive().simple().len(), 2);
        for t in [("G2", vec![]), ("B3", vec![1]), ("F4", vec![2])] {
            let l = levi(t.0, &t.1);
            let pos = l.standard_positive().positives().to_vec();
            assert_eq!(l.subset_classify(&pos).unwrap().kind, SubsetKind::Semilinear);
        }
    }

    #[test]
    fn nonstandard_positive_system() {
        let l = levi("A2", &[]);
        let p = l.positive_system_from(&[qr(&[1, 0]), qr(&[0, -1]), qr(&[-1, -1])]).unwrap();
        assert_eq!(p.simple(), &[qr(&[-1, -1]), qr(&[1, 0])]);
        assert_eq!(p.decomposition(&qr(&[0, -1])), Some(&[1i64, 1][..]));
    }

    #[test]
    fn adapted_systems() {
        use crate::rational::frac;
        let l = levi("A2", &[]);
        let k = q(1);
        let c = BracketCoefficients::constant(&l, &k);
        let p = l.adapted_positive_system(&c, &k).unwrap();
        assert_eq!(p.positives(), l.standard_positive().positives());

        let c = BracketCoefficients::from_fn(&l, |x| if *x == qr(&[1, 0]) { q(1) } else { q(-1) });
        let p = l.adapted_positive_system(&c, &k).unwrap();
        let got: BTreeSet<Quasiroot> = p.positives().iter().cloned().collect();
        assert_eq!(got, BTreeSet::from([qr(&[1, 0]), qr(&[0, -1]), qr(&[-1, -1])]));

        let c = crate::moduli::solve_ff_standard(&l, &[q(2), q(3)], &k).unwrap().c;
        let p = l.adapted_positive_system(&c, &k).unwrap();
        assert_eq!(l.subset_classify(p.positives()).unwrap().kind, SubsetKind::Semilinear);

        let bad = BracketCoefficients::from_fn(&l, |_| frac(1, 3));
        assert!(matches!(l.adapted_positive_system(&bad, &k), Err(OrbitError::Precondition(_))));

        let l1 = levi("A1", &[]);
        let c = BracketCoefficients::constant(&l1, &q(-2));
        let p = l1.adapted_positive_system(&c, &k).unwrap();
        assert_eq!(p.positives().len(), 1);
    }

    #[test]
    fn betti() {
        let a2 = RootSystem::new("A2".parse().unwrap()).unwrap();
        assert_eq!(betti_numbers(&a2, &[]).unwrap(), vec![1, 2, 2, 1]);
        assert_eq!(betti_numbers(&a2, &[1]).unwrap(), vec![1, 1, 1]);
        let a1 = RootSystem::new("A1".parse().unwrap()).unwrap();
        assert_eq!(betti_numbers(&a1, &[]).unwrap(), vec![1, 1]);
        let g2 = RootSystem::new("G2".parse().unwrap()).unwrap();
        assert_eq!(betti_numbers(&g2, &[]).unwrap().iter().sum::<usize>(), 12);
        let e8 = RootSystem::new("E8".parse().unwrap()).unwrap();
        assert!(matches!(betti_numbers(&e8, &[]), Err(OrbitError::Resource(_))));
    }

    #[test]
    fn diagonal_splitting() {
        let rs = Arc::new(RootSystem::new("B2".parse().unwrap()).unwrap());
        let l = LeviDatum::new(rs, &[1]).unwrap();
        let one = Quasiroot(vec![1]);
        assert_eq!(l.standard_positive().splittings(&Quasiroot(vec![2])), vec![(one.clone(), one)]);
    }
}
