//! Simple root systems with a Chevalley basis.
//!
//! Simple roots are numbered as in Bourbaki. Roots are integer coefficient
//! vectors over the simple roots. The Chevalley basis is
//! `{e_α : α ∈ Ω} ∪ {h_1, …, h_n}` with `h_i` the simple coroots,
//! `[e_α, e_{-α}] = h_α` (the coroot of α) and `[e_α, e_β] = N_{α,β} e_{α+β}`.
//! The integers `N_{α,β}` are produced by the extraspecial-pair algorithm:
//! every extraspecial pair gets the positive sign and the remaining constants
//! follow from the standard identities between structure constants.
//!
//! Basis elements are addressed by a global index: positive roots first (by
//! height), then the negatives in the same order, then `h_1..h_n`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{OrbitError, Result};
use crate::rational::{q, serde_q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    pub series: Series,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let legal = match series {
            Series::A => rank >= 1,
            Series::B => rank >= 2,
            Series::C => rank >= 3,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if legal {
            Ok(SimpleType { series, rank })
        } else {
            Err(OrbitError::Parameter(format!("no simple type {series:?}{rank}")))
        }
    }

    /// Number of roots according to the classification tables.
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n * (n + 1),
            Series::B | Series::C => 2 * n * n,
            Series::D => 2 * n * (n - 1),
            Series::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Series::F => 48,
            Series::G => 12,
        }
    }

    /// Gram matrix of the simple roots, scaled to integers.
    fn gram(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut g = vec![vec![0i64; n]; n];
        let link = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
            g[i][j] = v;
            g[j][i] = v;
        };
        match self.series {
            Series::A => {
                for i in 0..n {
                    g[i][i] = 2;
                }
                for i in 0..n.saturating_sub(1) {
                    link(&mut g, i, i + 1, -1);
                }
            }
            Series::B => {
                for i in 0..n {
                    g[i][i] = if i == n - 1 { 1 } else { 2 };
                }
                for i in 0..n - 1 {
                    link(&mut g, i, i + 1, -1);
                }
            }
            Series::C => {
                for i in 0..n {
                    g[i][i] = if i == n - 1 { 4 } else { 2 };
                }
                for i in 0..n - 2 {
                    link(&mut g, i, i + 1, -1);
                }
                link(&mut g, n - 2, n - 1, -2);
            }
            Series::D => {
                for i in 0..n {
                    g[i][i] = 2;
                }
                for i in 0..n - 2 {
                    link(&mut g, i, i + 1, -1);
                }
                link(&mut g, n - 3, n - 1, -1);
            }
            Series::E => {
                for i in 0..n {
                    g[i][i] = 2;
                }
                // Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4
                link(&mut g, 0, 2, -1);
                link(&mut g, 1, 3, -1);
                for i in 2..n - 1 {
                    link(&mut g, i, i + 1, -1);
                }
            }
            Series::F => {
                g[0][0] = 4;
                g[1][1] = 4;
                g[2][2] = 2;
                g[3][3] = 2;
                link(&mut g, 0, 1, -2);
                link(&mut g, 1, 2, -2);
                link(&mut g, 2, 3, -1);
            }
            Series::G => {
                g[0][0] = 2;
                g[1][1] = 6;
                link(&mut g, 0, 1, -3);
            }
        }
        g
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.series, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = OrbitError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(OrbitError::Parameter(format!("unknown type {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| OrbitError::Parameter(format!("unknown type {s:?}")))?;
        SimpleType::new(series, rank)
    }
}

/// A root as its coefficient vector over the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(pub Vec<i32>);

impl Root {
    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    RootVector(Root),
    /// Simple coroot `h_i`, 1-based.
    Cartan(usize),
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::RootVector(r) => write!(f, "e{r}"),
            BasisElement::Cartan(i) => write!(f, "h{i}"),
        }
    }
}

impl FromStr for BasisElement {
    type Err = OrbitError;

    /// Parses the labels produced by `Display`: `e(1,0,-1)` or `h2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || OrbitError::Parameter(format!("bad basis label {s:?}"));
        if let Some(i) = s.strip_prefix('h') {
            return i.parse().map(BasisElement::Cartan).map_err(|_| bad());
        }
        let inner = s
            .strip_prefix("e(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        inner
            .split(',')
            .map(|t| t.parse::<i32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(|v| BasisElement::RootVector(Root(v)))
            .map_err(|_| bad())
    }
}

/// Sparse linear combination of basis indices with integer coefficients.
pub type IntCombination = Vec<(usize, i64)>;

#[derive(Clone, Debug)]
pub struct RootSystem {
    ty: SimpleType,
    gram: Vec<Vec<i64>>,
    cartan_matrix: Vec<Vec<i64>>,
    roots: Vec<Root>,
    index: HashMap<Root, usize>,
    npos: usize,
    n_table: HashMap<(usize, usize), i64>,
    killing: Vec<Q>,
    highest: usize,
    brackets: Vec<Vec<IntCombination>>,
}

impl RootSystem {
    pub fn new(ty: SimpleType) -> Result<Self> {
        let ty = SimpleType::new(ty.series, ty.rank)?;
        let n = ty.rank;
        let gram = ty.gram();
        let cartan_matrix: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| 2 * gram[i][j] / gram[i][i]).collect())
            .collect();

        let positives = enumerate_positive_roots(&gram);
        let npos = positives.len();
        let mut roots = positives.clone();
        roots.extend(positives.iter().map(Root::neg));
        let index: HashMap<Root, usize> =
            roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let highest = (0..npos).max_by_key(|&i| roots[i].height()).unwrap_or(0);

        let mut rs = RootSystem {
            ty,
            gram,
            cartan_matrix,
            roots,
            index,
            npos,
            n_table: HashMap::new(),
            killing: Vec::new(),
            highest,
            brackets: Vec::new(),
        };
        rs.n_table = rs.structure_constants()?;
        rs.brackets = rs.build_brackets();
        rs.killing = rs.killing_pairings();
        Ok(rs)
    }

    pub fn simple_type(&self) -> SimpleType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn dim(&self) -> usize {
        self.roots.len() + self.rank()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn num_positive(&self) -> usize {
        self.npos
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.npos]
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan_matrix
    }

    pub fn highest_root(&self) -> &Root {
        &self.roots[self.highest]
    }

    pub fn root_index(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.index.contains_key(r)
    }

    /// Index of `-α` for the root at index `i`.
    pub fn neg_index(&self, i: usize) -> usize {
        if i < self.npos {
            i + self.npos
        } else {
            i - self.npos
        }
    }

    pub fn cartan_index(&self, i: usize) -> usize {
        self.roots.len() + i
    }

    pub fn is_root_index(&self, i: usize) -> bool {
        i < self.roots.len()
    }

    pub fn basis_element(&self, i: usize) -> BasisElement {
        if i < self.roots.len() {
            BasisElement::RootVector(self.roots[i].clone())
        } else {
            BasisElement::Cartan(i - self.roots.len() + 1)
        }
    }

    pub fn basis_index(&self, x: &BasisElement) -> Result<usize> {
        match x {
            BasisElement::RootVector(r) => self
                .root_index(r)
                .ok_or_else(|| OrbitError::Parameter(format!("{r} is not a root of {}", self.ty))),
            BasisElement::Cartan(i) if (1..=self.rank()).contains(i) => Ok(self.cartan_index(i - 1)),
            BasisElement::Cartan(i) => {
                Err(OrbitError::Parameter(format!("h{i} outside rank {}", self.rank())))
            }
        }
    }

    /// Weight of a basis element (zero for the Cartan part).
    pub fn weight(&self, i: usize) -> Option<&Root> {
        self.roots.get(i)
    }

    /// `(β, γ)` in the scaled invariant form on the root lattice.
    pub fn inner(&self, b: &Root, c: &Root) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if b.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += b.0[i] as i64 * self.gram[i][j] * c.0[j] as i64;
            }
        }
        s
    }

    /// `N_{α,β}` for roots with `α + β` a root; zero otherwise.
    pub fn n(&self, a: usize, b: usize) -> i64 {
        self.n_table.get(&(a, b)).copied().unwrap_or(0)
    }

    /// All nonzero structure constants as `(α, β, N_{α,β})`.
    pub fn n_entries(&self) -> Vec<(usize, usize, i64)> {
        let mut v: Vec<_> = self.n_table.iter().map(|(&(a, b), &n)| (a, b, n)).collect();
        v.sort_unstable();
        v
    }

    /// `κ_α = κ(e_α, e_{-α})` with κ the Killing form.
    pub fn killing_pairing(&self, i: usize) -> &Q {
        &self.killing[i]
    }

    /// Bracket of two basis elements by global index.
    pub fn bracket_indices(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.brackets[i][j]
    }

    pub fn lie_bracket(&self, x: &BasisElement, y: &BasisElement) -> Result<Vec<(BasisElement, Q)>> {
        let (i, j) = (self.basis_index(x)?, self.basis_index(y)?);
        Ok(self.brackets[i][j]
            .iter()
            .map(|&(k, c)| (self.basis_element(k), q(c)))
            .collect())
    }

    /// Chevalley involution on a basis element: `e_α ↦ -e_{-α}`, `h ↦ -h`.
    pub fn theta(&self, i: usize) -> (usize, i64) {
        if self.is_root_index(i) {
            (self.neg_index(i), -1)
        } else {
            (i, -1)
        }
    }

    /// `⟨β, α_i^∨⟩`.
    fn pairing_with_coroot(&self, b: &Root, i: usize) -> i64 {
        let s: i64 = (0..self.rank()).map(|j| b.0[j] as i64 * self.gram[j][i]).sum();
        2 * s / self.gram[i][i]
    }

    /// Coroot `h_α` expanded over the simple coroots.
    fn coroot(&self, a: &Root) -> IntCombination {
        let len = self.inner(a, a);
        (0..self.rank())
            .filter(|&i| a.0[i] != 0)
            .map(|i| {
                let c = a.0[i] as i64 * self.gram[i][i];
                debug_assert_eq!(c % len, 0);
                (self.cartan_index(i), c / len)
            })
            .collect()
    }

    /// Largest `p` with `b - p·a` a root.
    fn string_down(&self, b: &Root, a: &Root) -> i64 {
        let mut p = 0;
        let mut cur = b.sub(a);
        while self.is_root(&cur) {
            p += 1;
            cur = cur.sub(a);
        }
        p
    }

    fn structure_constants(&self) -> Result<HashMap<(usize, usize), i64>> {
        let mut table: HashMap<(usize, usize), i64> = HashMap::new();
        let npos = self.npos;
        for eta in 0..npos {
            let root = &self.roots[eta];
            if root.height() < 2 {
                continue;
            }
            let (alpha, beta) = (0..self.rank())
                .find_map(|i| {
                    let b = root.sub(&self.roots[i]);
                    self.root_index(&b).filter(|&bi| bi < npos).map(|bi| (i, bi))
                })
                .ok_or_else(|| OrbitError::Internal(format!("no extraspecial pair for {root}")))?;
            let p = self.string_down(&self.roots[beta], &self.roots[alpha]);
            table.insert((alpha, beta), p + 1);
            table.insert((beta, alpha), -(p + 1));

            let eta_len = q(self.inner(root, root));
            let n_ab = q(p + 1);
            for xi in 0..npos {
                let Some(zeta) = self.root_index(&root.sub(&self.roots[xi])) else {
                    continue;
                };
                if zeta >= npos || xi > zeta || xi == alpha || xi == beta {
                    continue;
                }
                let (rx, ra, rb) = (&self.roots[xi], &self.roots[alpha], &self.roots[beta]);
                let (nxi, nzeta) = (self.neg_index(xi), self.neg_index(zeta));
                let mut acc = Q::from_integer(0.into());
                let b_minus_xi = rb.sub(rx);
                if self.is_root(&b_minus_xi) {
                    let t = q(self.mixed_n(&table, beta, nxi)? * self.mixed_n(&table, alpha, nzeta)?);
                    acc += t / q(self.inner(&b_minus_xi, &b_minus_xi));
                }
                let a_minus_xi = ra.sub(rx);
                if self.is_root(&a_minus_xi) {
                    let t = q(self.mixed_n(&table, nxi, alpha)? * self.mixed_n(&table, beta, nzeta)?);
                    acc += t / q(self.inner(&a_minus_xi, &a_minus_xi));
                }
                let value = acc * &eta_len / &n_ab;
                let value = integral(&value, || format!("N for ({rx}, {})", self.roots[zeta]))?;
                table.insert((xi, zeta), value);
                table.insert((zeta, xi), -value);
            }
        }

        let nroots = self.roots.len();
        let mut full = HashMap::new();
        for a in 0..nroots {
            for b in 0..nroots {
                let s = self.roots[a].add(&self.roots[b]);
                if self.is_root(&s) {
                    full.insert((a, b), self.mixed_n(&table, a, b)?);
                }
            }
        }
        Ok(full)
    }

    /// `N_{a,b}` for arbitrary roots, reduced to positive pairs already in
    /// `table` through `N_{-a,-b} = -N_{a,b}` and, for `a + b + c = 0`,
    /// `N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b)`.
    fn mixed_n(&self, table: &HashMap<(usize, usize), i64>, a: usize, b: usize) -> Result<i64> {
        let npos = self.npos;
        let sum = self.roots[a].add(&self.roots[b]);
        if !self.is_root(&sum) {
            return Ok(0);
        }
        let pos_a = a < npos;
        let pos_b = b < npos;
        if pos_a && pos_b {
            return table
                .get(&(a, b))
                .copied()
                .ok_or_else(|| OrbitError::Internal(format!("missing N({a},{b})")));
        }
        if !pos_a && !pos_b {
            return Ok(-self.mixed_n(table, self.neg_index(a), self.neg_index(b))?);
        }
        let c_root = sum.neg();
        let c = self.root_index(&c_root).expect("negated root");
        let len = |i: usize| q(self.inner(&self.roots[i], &self.roots[i]));
        let pos_c = c < npos;
        let value = if pos_c == pos_b {
            len(c) / len(a) * q(self.mixed_n(table, b, c)?)
        } else {
            len(c) / len(b) * q(self.mixed_n(table, c, a)?)
        };
        integral(&value, || format!("mixed N({a},{b})"))
    }

    fn build_brackets(&self) -> Vec<Vec<IntCombination>> {
        let nroots = self.roots.len();
        let dim = self.dim();
        let mut out = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let entry = match (i < nroots, j < nroots) {
                    (true, true) => {
                        let s = self.roots[i].add(&self.roots[j]);
                        if s.is_zero() {
                            self.coroot(&self.roots[i])
                        } else if let Some(k) = self.root_index(&s) {
                            vec![(k, self.n(i, j))]
                        } else {
                            Vec::new()
                        }
                    }
                    (false, true) => {
                        let c = self.pairing_with_coroot(&self.roots[j], i - nroots);
                        if c == 0 { Vec::new() } else { vec![(j, c)] }
                    }
                    (true, false) => {
                        let c = self.pairing_with_coroot(&self.roots[i], j - nroots);
                        if c == 0 { Vec::new() } else { vec![(i, -c)] }
                    }
                    (false, false) => Vec::new(),
                };
                out[i][j] = entry;
            }
        }
        out
    }

    /// `tr(ad e_α ∘ ad e_{-α})` for every root.
    fn killing_pairings(&self) -> Vec<Q> {
        (0..self.roots.len())
            .map(|a| {
                let na = self.neg_index(a);
                let mut trace = 0i64;
                for b in 0..self.dim() {
                    for &(k, c1) in self.bracket_indices(na, b) {
                        for &(l, c2) in self.bracket_indices(a, k) {
                            if l == b {
                                trace += c1 * c2;
                            }
                        }
                    }
                }
                q(trace)
            })
            .collect()
    }

    /// Exact Jacobi identity over every basis triple. Returns the first
    /// failing triple, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let dim = self.dim();
        let mut acc = vec![0i64; dim];
        for x in 0..dim {
            for y in x + 1..dim {
                for z in y + 1..dim {
                    for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
                        for &(k, c1) in self.bracket_indices(a, b) {
                            for &(l, c2) in self.bracket_indices(k, c) {
                                acc[l] += c1 * c2;
                            }
                        }
                    }
                    if acc.iter().any(|&v| v != 0) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn to_json(&self) -> RootSystemJson {
        RootSystemJson {
            r#type: self.ty.to_string(),
            rank: self.rank(),
            cartan_matrix: self.cartan_matrix.clone(),
            roots: self.roots.clone(),
            highest_root: self.highest_root().clone(),
            n_table: self
                .n_entries()
                .into_iter()
                .map(|(a, b, n)| (self.roots[a].clone(), self.roots[b].clone(), n))
                .collect(),
            killing_pairing: (0..self.npos)
                .map(|i| KillingEntry { root: self.roots[i].clone(), value: self.killing[i].clone() })
                .collect(),
        }
    }
}

fn integral(x: &Q, what: impl FnOnce() -> String) -> Result<i64> {
    if x.is_integer() {
        i64::try_from(x.to_integer()).map_err(|_| OrbitError::Internal(what()))
    } else {
        Err(OrbitError::Internal(format!("non-integral {}: {x}", what())))
    }
}

fn enumerate_positive_roots(gram: &[Vec<i64>]) -> Vec<Root> {
    let n = gram.len();
    let inner_simple = |b: &Root, i: usize| -> i64 { (0..n).map(|j| b.0[j] as i64 * gram[j][i]).sum() };
    let unit = |i: usize| {
        let mut v = vec![0; n];
        v[i] = 1;
        Root(v)
    };
    let mut all: Vec<Root> = (0..n).map(unit).collect();
    let mut known: std::collections::HashSet<Root> = all.iter().cloned().collect();
    let mut layer = all.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for b in &layer {
            for i in 0..n {
                let a = unit(i);
                let mut down = 0;
                let mut cur = b.sub(&a);
                while known.contains(&cur) {
                    down += 1;
                    cur = cur.sub(&a);
                }
                let up = down - 2 * inner_simple(b, i) / gram[i][i];
                let s = b.add(&a);
                if up > 0 && !known.contains(&s) {
                    known.insert(s.clone());
                    next.push(s);
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
    all
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KillingEntry {
    pub root: Root,
    #[serde(with = "serde_q")]
    pub value: Q,
}

/// Wire form of a root system.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSystemJson {
    pub r#type: String,
    pub rank: usize,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub roots: Vec<Root>,
    pub highest_root: Root,
    /// `[α, β, N_{α,β}]` for every pair with `α + β` a root.
    pub n_table: Vec<(Root, Root, i64)>,
    /// `κ(e_α, e_{-α})` for the positive roots (equal for `-α`).
    pub killing_pairing: Vec<KillingEntry>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn illegal_types_rejected() {
        for s in ["A0", "B1", "C2", "D3", "E5", "E9", "F3", "G3", "X2", "A"] {
            assert!(s.parse::<SimpleType>().is_err(), "{s}");
        }
    }

    #[test]
    fn a1_has_two_roots_and_no_constants() {
        let a1 = rs("A1");
        assert_eq!(a1.roots().len(), 2);
        assert!(a1.n_entries().is_empty());
        assert_eq!(a1.highest_root(), &Root(vec![1]));
    }

    #[test]
    fn a2_constants_are_unit() {
        let a2 = rs("A2");
        assert_eq!(a2.roots().len(), 6);
        assert_eq!(a2.highest_root(), &Root(vec![1, 1]));
        let e1 = a2.root_index(&Root(vec![1, 0])).unwrap();
        let e2 = a2.root_index(&Root(vec![0, 1])).unwrap();
        assert_eq!(a2.n(e1, e2).abs(), 1);
    }

    #[test]
    fn g2_highest_root() {
        let g2 = rs("G2");
        assert_eq!(g2.roots().len(), 12);
        assert_eq!(g2.highest_root(), &Root(vec![3, 2]));
    }

    #[test]
    fn sl2_triple() {
        let a1 = rs("A1");
        let e = BasisElement::RootVector(Root(vec![1]));
        let f = BasisElement::RootVector(Root(vec![-1]));
        let h = BasisElement::Cartan(1);
        assert_eq!(a1.lie_bracket(&e, &f).unwrap(), vec![(h.clone(), q(1))]);
        assert_eq!(a1.lie_bracket(&h, &e).unwrap(), vec![(e.clone(), q(2))]);
        assert_eq!(a1.lie_bracket(&h, &f).unwrap(), vec![(f.clone(), q(-2))]);
        assert!(a1.lie_bracket(&e, &e).unwrap().is_empty());
    }

    #[test]
    fn structure_constant_symmetries() {
        for t in ["A3", "B3", "C3", "D4", "G2", "F4"] {
            let r = rs(t);
            for (a, b, n) in r.n_entries() {
                assert_eq!(r.n(b, a), -n, "{t}");
                assert_eq!(r.n(r.neg_index(a), r.neg_index(b)), -n, "{t}");
                let p = r.string_down(&r.roots()[b], &r.roots()[a]);
                assert_eq!(n.abs(), p + 1, "{t}");
            }
        }
    }

    #[test]
    fn killing_depends_on_length_only() {
        for t in ["B2", "G2", "C3", "F4"] {
            let r = rs(t);
            let mut by_len: HashMap<i64, Q> = HashMap::new();
            for (i, a) in r.roots().iter().enumerate() {
                let k = r.killing_pairing(i).clone();
                assert!(k > q(0));
                let prev = by_len.entry(r.inner(a, a)).or_insert_with(|| k.clone());
                assert_eq!(prev, &k, "{t}");
            }
        }
    }

    #[test]
    fn jacobi_on_e6() {
        let e6 = rs("E6");
        assert_eq!(e6.roots().len(), 72);
        assert_eq!(e6.highest_root(), &Root(vec![1, 2, 2, 3, 2, 1]));
        assert_eq!(e6.jacobi_violation(), None);
    }

    #[test]
    fn roots_sum_to_zero() {
        let r = rs("B3");
        let total = r.roots().iter().fold(Root(vec![0; 3]), |acc, x| acc.add(x));
        assert!(total.is_zero());
    }
}

