//! Poisson cohomology of an invariant bracket: the complex of invariant
//! polyvectors `C^k = (Λ^k m)^l` with differential `δ_f = [[f, ·]]`.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{OrbitError, Result};
use crate::levi::LeviDatum;
use crate::linalg::{kernel_with_free, mat_mul, rank_fraction_free};
use crate::moduli::verify_ff;
use crate::multivec::{act, bivector_from_coefficients, schouten, Ambient, BracketCoefficients, Multivector};
use crate::rational::{format_rational, Q};

/// Upper bound on the search nodes visited while enumerating weight-zero
/// tuples.
pub const SEARCH_LIMIT: usize = 5_000_000;
/// Upper bound on the number of weight-zero tuples in one degree.
pub const STRATUM_LIMIT: usize = 20_000;

/// Strictly increasing `k`-tuples of `m`-roots with total weight zero.
pub fn weight_zero_tuples(levi: &LeviDatum, k: usize) -> Result<Vec<Vec<usize>>> {
    let rs = levi.root_system();
    let roots: Vec<(usize, Vec<i32>)> = levi.m_roots().iter().map(|&i| (i, rs.roots()[i].0.clone())).collect();
    let mut out = Vec::new();
    let mut visited = 0usize;
    let mut stack: Vec<usize> = Vec::with_capacity(k);
    let mut weight = vec![0i32; rs.rank()];

    fn go(
        roots: &[(usize, Vec<i32>)],
        start: usize,
        k: usize,
        stack: &mut Vec<usize>,
        weight: &mut Vec<i32>,
        out: &mut Vec<Vec<usize>>,
        visited: &mut usize,
    ) -> Result<()> {
        *visited += 1;
        if *visited > SEARCH_LIMIT {
            return Err(OrbitError::Resource(format!("more than {SEARCH_LIMIT} search nodes")));
        }
        if stack.len() == k {
            if weight.iter().all(|&w| w == 0) {
                if out.len() >= STRATUM_LIMIT {
                    return Err(OrbitError::Resource(format!("more than {STRATUM_LIMIT} weight-zero tuples")));
                }
                out.push(stack.clone());
            }
            return Ok(());
        }
        let need = k - stack.len();
        for p in start..roots.len() {
            if roots.len() - p < need {
                break;
            }
            let (i, w) = &roots[p];
            stack.push(*i);
            weight.iter_mut().zip(w).for_each(|(a, b)| *a += b);
            go(roots, p + 1, k, stack, weight, out, visited)?;
            weight.iter_mut().zip(w).for_each(|(a, b)| *a -= b);
            stack.pop();
        }
        Ok(())
    }

    go(&roots, 0, k, &mut stack, &mut weight, &mut out, &mut visited)?;
    Ok(out)
}

/// A basis of `C^k`. Basis vector `i` has coefficient 1 at `coords[i]` and 0
/// at every other coordinate tuple, so coordinates are read off directly.
#[derive(Clone, Debug)]
pub struct ChainBasis {
    pub degree: usize,
    pub basis: Vec<Multivector>,
    coords: Vec<Vec<usize>>,
}

impl ChainBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of an invariant `k`-vector; errors if `v` is not in the
    /// span.
    pub fn coordinates(&self, v: &Multivector) -> Result<Vec<Q>> {
        let x: Vec<Q> = self.coords.iter().map(|t| v.coefficient(t)).collect();
        let mut rebuilt = Multivector::zero(v.degree(), v.space());
        for (b, c) in self.basis.iter().zip(&x) {
            rebuilt = rebuilt.add(&b.scale(c))?;
        }
        if rebuilt != *v {
            return Err(OrbitError::Internal(format!("{}-vector outside the invariant subspace", v.degree())));
        }
        Ok(x)
    }
}

/// Weight-zero filter followed by the exact kernel of the actions of the
/// root vectors `e_{±γ}`, `γ ∈ Γ`.
pub fn invariant_chain_basis(levi: &LeviDatum, k: usize) -> Result<ChainBasis> {
    if k > levi.dim_m() {
        return Err(OrbitError::Parameter(format!("degree {k} exceeds dim m = {}", levi.dim_m())));
    }
    let tuples = weight_zero_tuples(levi, k)?;
    let space = levi.space();
    let unit = |t: &Vec<usize>| {
        let mut v = Multivector::zero(k, space);
        v.add_term(t.clone(), Q::from_integer(1.into()));
        v
    };
    let gens = levi.generators();
    let mut row_of: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (col, t) in tuples.iter().enumerate() {
        let u = unit(t);
        for &x in &gens {
            for (target, c) in act(levi, x, &u).terms() {
                let next = row_of.len();
                let r = *row_of.entry((x, target.clone())).or_insert(next);
                if r == rows.len() {
                    rows.push(vec![Q::zero(); tuples.len()]);
                }
                rows[r][col] += c;
            }
        }
    }
    let ker = kernel_with_free(&rows, tuples.len());
    let mut basis = Vec::with_capacity(ker.len());
    let mut coords = Vec::with_capacity(ker.len());
    for (free, v) in ker {
        let mut m = Multivector::zero(k, space);
        for (t, c) in tuples.iter().zip(&v) {
            m.add_term(t.clone(), c.clone());
        }
        basis.push(m);
        coords.push(tuples[free].clone());
    }
    let cb = ChainBasis { degree: k, basis, coords };
    for (i, b) in cb.basis.iter().enumerate() {
        let x = cb.coordinates(b)?;
        if x.iter().enumerate().any(|(j, c)| *c != if i == j { Q::from_integer(1.into()) } else { Q::zero() }) {
            return Err(OrbitError::Internal("chain basis coordinates are not unit vectors".into()));
        }
    }
    Ok(cb)
}

/// The complex `C^0 … C^n` for one orbit, reusable across brackets.
#[derive(Clone, Debug)]
pub struct InvariantComplex {
    pub bases: Vec<ChainBasis>,
}

impl InvariantComplex {
    /// Chain bases in degrees `0..=top`.
    pub fn new(levi: &LeviDatum, top: usize) -> Result<Self> {
        let top = top.min(levi.dim_m());
        let bases = (0..=top).into_par_iter().map(|k| invariant_chain_basis(levi, k)).collect::<Result<Vec<_>>>()?;
        Ok(InvariantComplex { bases })
    }

    pub fn full(levi: &LeviDatum) -> Result<Self> {
        Self::new(levi, levi.dim_m())
    }

    pub fn chain_dims(&self) -> Vec<usize> {
        self.bases.iter().map(ChainBasis::dim).collect()
    }

    /// Matrix of `δ_f: C^k → C^{k+1}`, one row per basis vector of
    /// `C^{k+1}`. Requires degree `k+1` to be present.
    pub fn delta(&self, levi: &LeviDatum, f: &Multivector, k: usize) -> Result<Vec<Vec<Q>>> {
        let (src, dst) = (&self.bases[k], &self.bases[k + 1]);
        let mut m = vec![vec![Q::zero(); src.dim()]; dst.dim()];
        for (j, b) in src.basis.iter().enumerate() {
            let img = schouten(levi, f, b)?;
            for (i, c) in dst.coordinates(&img)?.into_iter().enumerate() {
                m[i][j] = c;
            }
        }
        Ok(m)
    }

    /// Ranks of `δ_0 … δ_{top-1}`, checking `δ² = 0` along the way.
    pub fn delta_ranks(&self, levi: &LeviDatum, f: &Multivector) -> Result<Vec<usize>> {
        let top = self.bases.len() - 1;
        let deltas = (0..top).into_par_iter().map(|k| self.delta(levi, f, k)).collect::<Result<Vec<_>>>()?;
        for k in 0..top.saturating_sub(1) {
            let (a, b) = (&deltas[k + 1], &deltas[k]);
            let prod = mat_mul(a, b, self.bases[k + 1].dim(), self.bases[k].dim());
            if prod.iter().flatten().any(|x| !x.is_zero()) {
                return Err(OrbitError::Internal(format!("δ² ≠ 0 on C^{k}")));
            }
        }
        Ok(deltas.iter().map(|d| rank_fraction_free(d)).collect())
    }

    /// `dim H^k` for the degrees whose neighbours are present.
    pub fn cohomology(&self, levi: &LeviDatum, f: &Multivector) -> Result<Vec<usize>> {
        let ranks = self.delta_ranks(levi, f)?;
        let dims = self.chain_dims();
        let full = dims.len() == levi.dim_m() + 1;
        let last = if full { dims.len() } else { dims.len() - 1 };
        Ok((0..last)
            .map(|k| {
                let out = ranks.get(k).copied().unwrap_or(0);
                let inc = if k == 0 { 0 } else { ranks[k - 1] };
                dims[k] - out - inc
            })
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyProfile {
    pub chain_dims: Vec<usize>,
    pub h_dims: Vec<usize>,
    pub f: BracketCoefficients,
    pub k: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyProfileJson {
    pub chain_dims: Vec<usize>,
    pub h_dims: Vec<usize>,
    pub f: BTreeMap<String, String>,
    #[serde(rename = "K")]
    pub k: String,
}

impl CohomologyProfile {
    pub fn to_json(&self) -> CohomologyProfileJson {
        CohomologyProfileJson {
            chain_dims: self.chain_dims.clone(),
            h_dims: self.h_dims.clone(),
            f: self.f.to_json(),
            k: format_rational(&self.k),
        }
    }

    pub fn euler_characteristics(&self) -> (i64, i64) {
        let chi = |v: &[usize]| v.iter().enumerate().map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
        (chi(&self.chain_dims), chi(&self.h_dims))
    }
}

fn checked_bivector(levi: &LeviDatum, f: &BracketCoefficients, k: &Q) -> Result<Multivector> {
    if !verify_ff(levi, f, k)?.holds {
        return Err(OrbitError::Precondition("f does not solve the φ-bracket equations".into()));
    }
    Ok(bivector_from_coefficients(levi, f))
}

/// `δ_f` on `C^k` in the invariant bases.
pub fn delta_matrix(levi: &LeviDatum, f: &BracketCoefficients, k: &Q, degree: usize) -> Result<Vec<Vec<Q>>> {
    let fv = checked_bivector(levi, f, k)?;
    let cx = InvariantComplex { bases: vec![invariant_chain_basis(levi, degree)?, invariant_chain_basis(levi, degree + 1)?] };
    cx.delta(levi, &fv, 0)
}

/// Full profile `dim H^0 … dim H^{dim m}`.
pub fn cohomology_dims(levi: &LeviDatum, f: &BracketCoefficients, k: &Q) -> Result<CohomologyProfile> {
    let cx = InvariantComplex::full(levi)?;
    profile_in(&cx, levi, f, k)
}

pub fn profile_in(cx: &InvariantComplex, levi: &LeviDatum, f: &BracketCoefficients, k: &Q) -> Result<CohomologyProfile> {
    let fv = checked_bivector(levi, f, k)?;
    let h_dims = cx.cohomology(levi, &fv)?;
    let chain_dims = cx.chain_dims();
    let profile = CohomologyProfile { chain_dims, h_dims, f: f.clone(), k: k.clone() };
    if profile.h_dims.len() == profile.chain_dims.len() {
        let (a, b) = profile.euler_characteristics();
        if a != b {
            return Err(OrbitError::Internal(format!("Euler characteristics differ: {a} vs {b}")));
        }
    }
    Ok(profile)
}

/// `dim H²` from degrees 1 to 3 only.
pub fn h2_dim(levi: &LeviDatum, f: &BracketCoefficients, k: &Q) -> Result<usize> {
    let cx = InvariantComplex::new(levi, 3)?;
    h2_in(&cx, levi, f, k)
}

pub fn h2_in(cx: &InvariantComplex, levi: &LeviDatum, f: &BracketCoefficients, k: &Q) -> Result<usize> {
    let fv = checked_bivector(levi, f, k)?;
    let dims = cx.chain_dims();
    if dims.len() < 3 {
        return Ok(dims.get(2).copied().unwrap_or(0));
    }
    let r1 = rank_fraction_free(&cx.delta(levi, &fv, 1)?);
    let r2 = if dims.len() > 3 { rank_fraction_free(&cx.delta(levi, &fv, 2)?) } else { 0 };
    Ok(dims[2] - r1 - r2)
}

/// Profiles of `f_{h,t} = h f₀ + t s` with `K` replaced by `hK`.
pub fn pencil_cohomology(
    levi: &LeviDatum,
    f0: &BracketCoefficients,
    lambda: &[Q],
    k: &Q,
    samples: &[(Q, Q)],
) -> Result<Vec<CohomologyProfile>> {
    if let Some(bad) = samples.iter().find(|(h, t)| h.is_zero() && t.is_zero()) {
        return Err(OrbitError::Parameter(format!("pencil sample ({}, {}) is excluded", bad.0, bad.1)));
    }
    let s = crate::multivec::kks(levi, lambda)?;
    let cx = InvariantComplex::full(levi)?;
    samples
        .par_iter()
        .map(|(h, t)| {
            let f = f0.scale(h).add(&s.scale(t));
            profile_in(&cx, levi, &f, &(h * k))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::rootsystem::RootSystem;
    use std::sync::Arc;

    fn levi(t: &str, gamma: &[usize]) -> LeviDatum {
        let rs = Arc::new(RootSystem::new(t.parse().unwrap()).unwrap());
        LeviDatum::new(rs, gamma).unwrap()
    }

    #[test]
    fn chain_dimensions() {
        assert_eq!(InvariantComplex::full(&levi("A1", &[])).unwrap().chain_dims(), vec![1, 0, 1]);
        assert_eq!(InvariantComplex::full(&levi("A2", &[])).unwrap().chain_dims(), vec![1, 0, 3, 2, 3, 0, 1]);
        assert_eq!(InvariantComplex::full(&levi("A2", &[1])).unwrap().chain_dims(), vec![1, 0, 1, 0, 1]);
    }

    #[test]
    fn chain_bases_are_invariant() {
        let l = levi("A3", &[2]);
        let cx = InvariantComplex::new(&l, 4).unwrap();
        for b in &cx.bases {
            assert!(b.basis.iter().all(|v| crate::multivec::is_invariant(&l, v)));
        }
        assert_eq!(cx.bases[2].dim(), l.standard_positive().positives().len());
    }

    #[test]
    fn full_flag_profiles() {
        let l = levi("A2", &[]);
        let one = BracketCoefficients::constant(&l, &q(1));
        let p = cohomology_dims(&l, &one, &q(1)).unwrap();
        assert_eq!(p.h_dims, vec![1, 0, 2, 0, 2, 0, 1]);
        let d = delta_matrix(&l, &one, &q(1), 2).unwrap();
        assert_eq!(rank_fraction_free(&d), 1);
        let f0 = BracketCoefficients::from_fn(&l, |x| match x.0.as_slice() {
            [1, 0] => q(1),
            [0, 1] => q(-1),
            _ => q(0),
        });
        assert_eq!(h2_dim(&l, &f0, &q(1)).unwrap(), 2);
    }

    #[test]
    fn small_orbits() {
        let l = levi("A1", &[]);
        let c = BracketCoefficients::constant(&l, &q(7));
        assert_eq!(cohomology_dims(&l, &c, &q(2)).unwrap().h_dims, vec![1, 0, 1]);
        let l = levi("A2", &[1]);
        let c = BracketCoefficients::constant(&l, &q(3));
        let p = cohomology_dims(&l, &c, &q(1)).unwrap();
        assert_eq!(p.h_dims, vec![1, 0, 1, 0, 1]);
        for k in 0..4 {
            let d = delta_matrix(&l, &c, &q(1), k).unwrap();
            assert!(d.iter().flatten().all(Zero::is_zero));
        }
    }

    #[test]
    fn precondition_and_pencil_errors() {
        let l = levi("A2", &[]);
        let bad = BracketCoefficients::from_fn(&l, |x| if x.0 == [1, 1] { q(5) } else { q(1) });
        assert!(matches!(cohomology_dims(&l, &bad, &q(1)), Err(OrbitError::Precondition(_))));
        let f0 = BracketCoefficients::constant(&l, &q(0));
        let err = pencil_cohomology(&l, &f0, &[q(1), q(1)], &q(1), &[(q(0), q(0))]).unwrap_err();
        assert!(matches!(err, OrbitError::Parameter(_)));
    }

    #[test]
    fn pencil_a2() {
        let l = levi("A2", &[]);
        let fam = crate::moduli::good_bracket_family(&l, &[q(1), q(1)], &q(1)).unwrap();
        let samples = [(q(1), q(0)), (q(0), q(1)), (q(1), q(1)), (q(2), q(-3))];
        let profiles = pencil_cohomology(&l, &fam.f0, &[q(1), q(1)], &q(1), &samples).unwrap();
        for p in &profiles {
            assert_eq!(p.h_dims[2], 2);
        }
        assert_eq!(profiles[1].h_dims, vec![1, 0, 2, 0, 2, 0, 1]);
        assert_eq!(profiles[0].h_dims, cohomology_dims(&l, &fam.f0, &q(1)).unwrap().h_dims);
    }
}
