//! Weyl chamber fans of the classical root systems: cone enumeration,
//! smoothness and completeness, the signed-subset chain description of
//! Sigma(B_n), flatness diagnostics for Sigma(R_{n+1}) -> Sigma(R_n), and
//! the contraction of the C-case fan.

use std::collections::{BTreeSet, HashMap, HashSet};

use num::rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::rootsys::{
    build_root_system, weyl_elements, Family, LatticePoint, LatticeTag, RootError, RootVector,
    SignedPermutation,
};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FanError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("signed subset may not contain a pair {{i,-i}} or zero, and must be nonempty")]
    InvalidSubset,
    #[error("chain is not strictly nested")]
    ChainNotNested,
    #[error("ray {0} is not of signed-subset form")]
    BadRay(String),
    #[error("cone rays must be distinct, nonzero and linearly independent")]
    BadCone,
    #[error("contracted fan failed validation: {0}")]
    BadContraction(String),
}

/// Nonempty subset of {±1,...,±n} containing no pair {i,-i}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedSubset {
    elems: Vec<i32>,
}

impl SignedSubset {
    pub fn new(mut elems: Vec<i32>) -> Result<Self, FanError> {
        elems.sort_unstable();
        elems.dedup();
        if elems.is_empty() || elems.contains(&0) {
            return Err(FanError::InvalidSubset);
        }
        let abs: HashSet<i32> = elems.iter().map(|x| x.abs()).collect();
        if abs.len() != elems.len() {
            return Err(FanError::InvalidSubset);
        }
        Ok(SignedSubset { elems })
    }

    pub fn elems(&self) -> &[i32] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, x: i32) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    /// Indices 1..n whose sign appears in the subset.
    pub fn support(&self) -> Vec<i32> {
        let mut s: Vec<i32> = self.elems.iter().map(|x| x.abs()).collect();
        s.sort_unstable();
        s
    }

    pub fn is_subset_of(&self, other: &SignedSubset) -> bool {
        self.elems.iter().all(|x| other.contains(*x))
    }

    pub fn comparable(&self, other: &SignedSubset) -> bool {
        self.is_subset_of(other) || other.is_subset_of(self)
    }

    /// The lattice point v_B = sum of eps_i v_i (stored half-unit coords).
    pub fn v_point(&self, dim: usize) -> LatticePoint {
        let mut coords = vec![0i64; dim];
        for &x in &self.elems {
            coords[(x.unsigned_abs() - 1) as usize] = 2 * x.signum() as i64;
        }
        LatticePoint::new(coords)
    }

    /// The half-sum (1/2) v_B (stored half-unit coords, so entries ±1).
    pub fn half_point(&self, dim: usize) -> LatticePoint {
        let mut coords = vec![0i64; dim];
        for &x in &self.elems {
            coords[(x.unsigned_abs() - 1) as usize] = x.signum() as i64;
        }
        LatticePoint::new(coords)
    }

    /// Decode a ray generator: entries in {0,±2} give (B, half=false),
    /// entries all ±1 give the full-support half-sum (B, half=true).
    pub fn from_ray(p: &LatticePoint) -> Result<(SignedSubset, bool), FanError> {
        let c = p.coords();
        if c.iter().all(|&x| x == 0 || x.abs() == 2) && !p.is_zero() {
            let elems = c
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| (i as i32 + 1) * x.signum() as i32)
                .collect();
            Ok((SignedSubset::new(elems)?, false))
        } else if c.iter().all(|&x| x.abs() == 1) {
            let elems = c
                .iter()
                .enumerate()
                .map(|(i, &x)| (i as i32 + 1) * x.signum() as i32)
                .collect();
            Ok((SignedSubset::new(elems)?, true))
        } else {
            Err(FanError::BadRay(p.to_string()))
        }
    }

    pub fn act(&self, w: &SignedPermutation) -> SignedSubset {
        SignedSubset::new(self.elems.iter().map(|&x| w.apply_index(x)).collect())
            .expect("signed permutation preserves subset validity")
    }
}

impl std::fmt::Display for SignedSubset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// All 3^n - 1 signed subsets over rank n.
pub fn all_signed_subsets(n: usize) -> Vec<SignedSubset> {
    let mut out = Vec::new();
    let mut digits = vec![0i8; n];
    loop {
        let elems: Vec<i32> = digits
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(i, &d)| (i as i32 + 1) * d as i32)
            .collect();
        if !elems.is_empty() {
            out.push(SignedSubset::new(elems).unwrap());
        }
        let mut i = 0;
        loop {
            if i == n {
                out.sort_by(|a, b| (a.len(), a.elems()).cmp(&(b.len(), b.elems())));
                return out;
            }
            if digits[i] == 1 {
                digits[i] = -1;
                break;
            } else if digits[i] == -1 {
                digits[i] = 0;
                i += 1;
            } else {
                digits[i] = 1;
                break;
            }
        }
    }
}

/// Pointed rational cone given by its primitive ray generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cone {
    rays: Vec<LatticePoint>,
    pub lattice: LatticeTag,
}

impl Cone {
    pub fn new(mut rays: Vec<LatticePoint>, lattice: LatticeTag) -> Result<Self, FanError> {
        rays.sort();
        rays.dedup();
        if rays.iter().any(|r| r.is_zero()) {
            return Err(FanError::BadCone);
        }
        let rows: Vec<&[i64]> = rays.iter().map(|r| r.coords()).collect();
        if rank_of(&rows) != rays.len() {
            return Err(FanError::BadCone);
        }
        Ok(Cone { rays, lattice })
    }

    pub fn zero(lattice: LatticeTag) -> Self {
        Cone { rays: Vec::new(), lattice }
    }

    pub fn rays(&self) -> &[LatticePoint] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.rays.len()
    }
}

/// One Weyl chamber: the translate of the standard chamber by `weyl`.
#[derive(Debug, Clone)]
pub struct Chamber {
    pub weyl: SignedPermutation,
    /// Ray generators, aligned with `simple_roots` (ray k is dual to root k).
    pub rays: Vec<LatticePoint>,
    pub simple_roots: Vec<RootVector>,
}

impl Chamber {
    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.simple_roots.iter().all(|a| a.pair2(p) >= 0)
    }

    pub fn sorted_rays(&self) -> Vec<LatticePoint> {
        let mut r = self.rays.clone();
        r.sort();
        r
    }
}

#[derive(Debug, Clone)]
pub struct WeylFan {
    pub family: Family,
    pub rank: usize,
    pub lattice: LatticeTag,
    /// All 1-dimensional cone generators, sorted.
    pub rays: Vec<LatticePoint>,
    pub chambers: Vec<Chamber>,
}

/// Ray generators of the standard (dominant) chamber, dual to the standard
/// simple roots.
pub fn standard_chamber_rays(family: Family, rank: usize) -> Result<Vec<LatticePoint>, RootError> {
    let n = rank;
    let prefix = |k: usize| {
        let mut c = vec![0i64; n];
        for x in c.iter_mut().take(k) {
            *x = 2;
        }
        LatticePoint::new(c)
    };
    let rays = match family {
        Family::A => {
            return Err(RootError::RankOutOfRange { family, rank });
        }
        Family::B => (1..=n).map(prefix).collect(),
        Family::C => {
            let mut r: Vec<LatticePoint> = (1..n).map(prefix).collect();
            r.push(LatticePoint::new(vec![1; n]));
            r
        }
        Family::D => {
            if n < 2 {
                return Err(RootError::RankOutOfRange { family, rank });
            }
            let mut r: Vec<LatticePoint> = (1..=n.saturating_sub(2)).map(prefix).collect();
            let mut minus_last = vec![1i64; n];
            minus_last[n - 1] = -1;
            r.push(LatticePoint::new(minus_last));
            r.push(LatticePoint::new(vec![1; n]));
            r
        }
    };
    Ok(rays)
}

/// The fan of Weyl chambers in N(R).
pub fn weyl_chamber_fan(family: Family, rank: usize) -> Result<WeylFan, FanError> {
    if family == Family::A {
        return Err(RootError::RankOutOfRange { family, rank }.into());
    }
    let rs = build_root_system(family, rank)?;
    let std_rays = standard_chamber_rays(family, rank)?;
    let lattice = LatticeTag::n(family, rank);
    let mut ray_set: BTreeSet<LatticePoint> = BTreeSet::new();
    let mut chambers = Vec::new();
    for w in weyl_elements(family, rank)? {
        let rays: Vec<LatticePoint> =
            std_rays.iter().map(|r| w.act_point(r).unwrap()).collect();
        let simple_roots: Vec<RootVector> =
            rs.simple_roots.iter().map(|a| w.act_root(a).unwrap()).collect();
        ray_set.extend(rays.iter().cloned());
        chambers.push(Chamber { weyl: w, rays, simple_roots });
    }
    Ok(WeylFan {
        family,
        rank,
        lattice,
        rays: ray_set.into_iter().collect(),
        chambers,
    })
}

impl WeylFan {
    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    pub fn maximal_cone_count(&self) -> usize {
        self.chambers.len()
    }

    /// All distinct cones of dimension m (faces of the simplicial chambers).
    pub fn cones_of_dim(&self, m: usize) -> Vec<Cone> {
        if m == 0 {
            return vec![Cone::zero(self.lattice)];
        }
        let mut seen: BTreeSet<Vec<LatticePoint>> = BTreeSet::new();
        for ch in &self.chambers {
            for combo in subsets_of_size(ch.rays.len(), m) {
                let mut rays: Vec<LatticePoint> =
                    combo.iter().map(|&i| ch.rays[i].clone()).collect();
                rays.sort();
                seen.insert(rays);
            }
        }
        seen.into_iter()
            .map(|rays| Cone { rays, lattice: self.lattice })
            .collect()
    }

    pub fn count_d_m(&self, m: usize) -> u64 {
        if m == 0 {
            return 1;
        }
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        for ch in &self.chambers {
            for combo in subsets_of_size(ch.rays.len(), m) {
                let mut rays: Vec<&LatticePoint> =
                    combo.iter().map(|&i| &ch.rays[i]).collect();
                rays.sort();
                let key: Vec<i64> =
                    rays.iter().flat_map(|r| r.coords().iter().copied()).collect();
                seen.insert(key);
            }
        }
        seen.len() as u64
    }

    /// Numbers of cones by dimension, d_0..d_n.
    pub fn f_vector(&self) -> Vec<u64> {
        (0..=self.rank).map(|m| self.count_d_m(m)).collect()
    }

    pub fn is_smooth(&self) -> bool {
        self.is_smooth_in(self.lattice)
    }

    /// Smoothness of the same cones measured in another lattice: every
    /// maximal cone's generators must be primitive members forming a basis.
    pub fn is_smooth_in(&self, tag: LatticeTag) -> bool {
        self.chambers.iter().all(|ch| {
            let coords: Option<Vec<Vec<i64>>> =
                ch.rays.iter().map(|r| tag.lattice_coords(r.coords())).collect();
            match coords {
                None => false,
                Some(m) => {
                    ch.rays.iter().all(|r| r.is_primitive(tag))
                        && det_bareiss(to_i128(&m)).abs() == 1
                }
            }
        })
    }

    /// Facet pairing: every (n-1)-face of a maximal cone lies in exactly
    /// two maximal cones.
    pub fn is_complete(&self) -> bool {
        let cones: Vec<Vec<LatticePoint>> =
            self.chambers.iter().map(|ch| ch.sorted_rays()).collect();
        facets_paired(&cones)
    }

    pub fn chamber_containing(&self, points: &[LatticePoint]) -> Option<&Chamber> {
        self.chambers
            .iter()
            .find(|ch| points.iter().all(|p| ch.contains(p)))
    }

    /// Smallest cone of the fan containing all the given points.
    pub fn smallest_containing_cone(&self, points: &[LatticePoint]) -> Option<Cone> {
        if points.is_empty() {
            return Some(Cone::zero(self.lattice));
        }
        let ch = self.chamber_containing(points)?;
        let cols: Vec<&[i64]> = ch.rays.iter().map(|r| r.coords()).collect();
        let mut support: BTreeSet<usize> = BTreeSet::new();
        for p in points {
            let coeffs = solve_in_basis(&cols, p.coords())?;
            for (i, c) in coeffs.iter().enumerate() {
                if *c != Ratio::from_integer(0) {
                    support.insert(i);
                }
            }
        }
        let mut rays: Vec<LatticePoint> =
            support.iter().map(|&i| ch.rays[i].clone()).collect();
        rays.sort();
        Some(Cone { rays, lattice: self.lattice })
    }
}

fn subsets_of_size(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn rec(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    rec(0, n, m, &mut cur, &mut out);
    out
}

fn facets_paired(cones: &[Vec<LatticePoint>]) -> bool {
    let mut counts: HashMap<Vec<i64>, u32> = HashMap::new();
    for rays in cones {
        for drop in 0..rays.len() {
            let key: Vec<i64> = rays
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != drop)
                .flat_map(|(_, r)| r.coords().iter().copied())
                .collect();
            *counts.entry(key).or_insert(0) += 1;
        }
    }
    counts.values().all(|&c| c == 2)
}

fn to_i128(m: &[Vec<i64>]) -> Vec<Vec<i128>> {
    m.iter().map(|row| row.iter().map(|&x| x as i128).collect()).collect()
}

/// Fraction-free determinant.
fn det_bareiss(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn rank_of(rows: &[&[i64]]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<Ratio<i128>>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Ratio::from_integer(x as i128)).collect())
        .collect();
    let ncols = m[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        if let Some(p) = (rank..m.len()).find(|&i| m[i][col] != Ratio::from_integer(0)) {
            m.swap(rank, p);
            let inv = m[rank][col].recip();
            for x in m[rank].iter_mut() {
                *x *= inv;
            }
            for i in 0..m.len() {
                if i != rank && m[i][col] != Ratio::from_integer(0) {
                    let f = m[i][col];
                    for c in 0..ncols {
                        let sub = f * m[rank][c];
                        m[i][c] -= sub;
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Solve sum c_i cols[i] = target for square independent cols, by Cramer.
fn solve_in_basis(cols: &[&[i64]], target: &[i64]) -> Option<Vec<Ratio<i128>>> {
    let n = cols.len();
    if n == 0 || cols[0].len() != n {
        return None;
    }
    let base: Vec<Vec<i128>> = (0..n)
        .map(|row| cols.iter().map(|c| c[row] as i128).collect())
        .collect();
    let d = det_bareiss(base.clone());
    if d == 0 {
        return None;
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut m = base.clone();
        for (row, mrow) in m.iter_mut().enumerate() {
            mrow[i] = target[row] as i128;
        }
        out.push(Ratio::new(det_bareiss(m), d));
    }
    Some(out)
}

/// Cone of Sigma(B_n) spanned by the v_B of a strictly nested chain.
pub fn cone_from_chain(chain: &[SignedSubset], n: usize) -> Result<Cone, FanError> {
    let mut sorted = chain.to_vec();
    sorted.sort_by_key(|b| b.len());
    for pair in sorted.windows(2) {
        if !(pair[0].is_subset_of(&pair[1]) && pair[0].len() < pair[1].len()) {
            return Err(FanError::ChainNotNested);
        }
    }
    let rays: Vec<LatticePoint> = sorted.iter().map(|b| b.v_point(n)).collect();
    if rays.is_empty() {
        return Ok(Cone::zero(LatticeTag::n(Family::B, n)));
    }
    Cone::new(rays, LatticeTag::n(Family::B, n))
}

/// Recover the nested chain from a cone of Sigma(B_n), smallest set first.
pub fn chain_from_cone(cone: &Cone) -> Result<Vec<SignedSubset>, FanError> {
    let mut chain: Vec<SignedSubset> = Vec::new();
    for r in cone.rays() {
        let (b, half) = SignedSubset::from_ray(r)?;
        if half {
            return Err(FanError::BadRay(r.to_string()));
        }
        chain.push(b);
    }
    chain.sort_by_key(|b| b.len());
    for pair in chain.windows(2) {
        if !(pair[0].is_subset_of(&pair[1]) && pair[0].len() < pair[1].len()) {
            return Err(FanError::ChainNotNested);
        }
    }
    Ok(chain)
}

/// Maximal chain of a signed permutation: B^(k) = {w(k), ..., w(n)},
/// returned smallest set first.
pub fn chain_of_permutation(w: &SignedPermutation) -> Vec<SignedSubset> {
    let n = w.rank();
    (1..=n)
        .rev()
        .map(|k| SignedSubset::new((k..=n).map(|i| w.image(i)).collect()).unwrap())
        .collect()
}

/// Inverse of `chain_of_permutation`: read w(k) off as the single element
/// of B^(k) \ B^(k+1). Expects a maximal chain, smallest set first.
pub fn permutation_from_chain(chain: &[SignedSubset]) -> Result<SignedPermutation, FanError> {
    let n = chain.len();
    let mut images = vec![0i32; n];
    for (i, b) in chain.iter().enumerate() {
        if b.len() != i + 1 {
            return Err(FanError::ChainNotNested);
        }
        let prev: &[i32] = if i == 0 { &[] } else { chain[i - 1].elems() };
        let fresh: Vec<i32> =
            b.elems().iter().copied().filter(|x| !prev.contains(x)).collect();
        match fresh.as_slice() {
            [x] => images[n - 1 - i] = *x,
            _ => return Err(FanError::ChainNotNested),
        }
    }
    SignedPermutation::new(images).ok_or(FanError::ChainNotNested)
}

#[derive(Debug, Clone, Serialize)]
pub struct FanCensus {
    pub family: Family,
    pub rank: usize,
    pub ray_count: u64,
    pub maximal_cone_count: u64,
}

/// Streaming ray and chamber census, usable at ranks where storing the
/// whole fan is wasteful.
pub fn fan_census(family: Family, rank: usize) -> Result<FanCensus, FanError> {
    if family == Family::A {
        return Err(RootError::RankOutOfRange { family, rank }.into());
    }
    let std_rays = standard_chamber_rays(family, rank)?;
    let mut rays: HashSet<Vec<i64>> = HashSet::new();
    let mut chambers = 0u64;
    for w in weyl_elements(family, rank)? {
        chambers += 1;
        for r in &std_rays {
            rays.insert(w.act_point(r).unwrap().coords().to_vec());
        }
    }
    Ok(FanCensus {
        family,
        rank,
        ray_count: rays.len() as u64,
        maximal_cone_count: chambers,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FlatnessWitness {
    /// Projected generators of an upstairs cone (zeros dropped, deduped).
    pub projected: Vec<LatticePoint>,
    /// Smallest cone of the base fan containing the projection.
    pub smallest_cone: Vec<LatticePoint>,
    pub image_rank: usize,
    pub cone_dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FlatnessReport {
    pub family: Family,
    pub base_rank: usize,
    pub flat_compatible: bool,
    pub witnesses: Vec<FlatnessWitness>,
}

/// Project every cone of Sigma(R_{n+1}) along the last coordinate and test
/// whether its image spans the smallest base cone containing it.
pub fn check_fiber_flatness(family: Family, rank: usize) -> Result<FlatnessReport, FanError> {
    let up = weyl_chamber_fan(family, rank + 1)?;
    let base = weyl_chamber_fan(family, rank)?;
    let mut processed: HashSet<Vec<i64>> = HashSet::new();
    let mut witnesses = Vec::new();
    for ch in &up.chambers {
        for m in 1..=ch.rays.len() {
            for combo in subsets_of_size(ch.rays.len(), m) {
                let mut proj: Vec<LatticePoint> = combo
                    .iter()
                    .map(|&i| ch.rays[i].project())
                    .filter(|p| !p.is_zero())
                    .collect();
                proj.sort();
                proj.dedup();
                if proj.is_empty() {
                    continue;
                }
                let key: Vec<i64> =
                    proj.iter().flat_map(|p| p.coords().iter().copied()).collect();
                if !processed.insert(key) {
                    continue;
                }
                let rows: Vec<&[i64]> = proj.iter().map(|p| p.coords()).collect();
                let image_rank = rank_of(&rows);
                let smallest = base
                    .smallest_containing_cone(&proj)
                    .ok_or_else(|| FanError::BadRay(format!("{:?}", proj)))?;
                if smallest.dim() > image_rank {
                    witnesses.push(FlatnessWitness {
                        projected: proj,
                        smallest_cone: smallest.rays().to_vec(),
                        image_rank,
                        cone_dim: smallest.dim(),
                    });
                }
            }
        }
    }
    witnesses.sort_by(|a, b| {
        (a.projected.len(), &a.projected).cmp(&(b.projected.len(), &b.projected))
    });
    Ok(FlatnessReport {
        family,
        base_rank: rank,
        flat_compatible: witnesses.is_empty(),
        witnesses,
    })
}

/// Fan obtained from Sigma(C_{n+1}) by removing the 2^n integer rays
/// supported on the first n coordinates and merging the chamber pairs
/// across each removed ray.
#[derive(Debug, Clone)]
pub struct ContractedFan {
    pub lattice: LatticeTag,
    pub rays: Vec<LatticePoint>,
    pub removed_rays: Vec<LatticePoint>,
    pub maximal_cones: Vec<Vec<LatticePoint>>,
}

impl ContractedFan {
    pub fn is_complete(&self) -> bool {
        facets_paired(&self.maximal_cones)
    }
}

pub fn contracted_c_fan(n: usize) -> Result<ContractedFan, FanError> {
    let fan = weyl_chamber_fan(Family::C, n + 1)?;
    let lattice = fan.lattice;
    let is_removed = |p: &LatticePoint| {
        p.coords()[n] == 0 && p.coords()[..n].iter().all(|&c| c.abs() == 2)
    };
    let removed_rays: Vec<LatticePoint> =
        fan.rays.iter().filter(|r| is_removed(r)).cloned().collect();
    let mut cones: BTreeSet<Vec<LatticePoint>> = BTreeSet::new();
    for ch in &fan.chambers {
        match ch.rays.iter().position(|r| is_removed(r)) {
            None => {
                cones.insert(ch.sorted_rays());
            }
            Some(rho_idx) => {
                let rho = &ch.rays[rho_idx];
                let h_idx = ch
                    .rays
                    .iter()
                    .position(|r| r.coords().iter().all(|&c| c.abs() == 1))
                    .ok_or_else(|| {
                        FanError::BadContraction("chamber lacks a half-sum ray".into())
                    })?;
                let h_prime = rho.add(&ch.rays[h_idx].neg());
                let mut rays: Vec<LatticePoint> = ch
                    .rays
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != rho_idx)
                    .map(|(_, r)| r.clone())
                    .collect();
                rays.push(h_prime);
                rays.sort();
                rays.dedup();
                if rays.len() != n + 1 {
                    return Err(FanError::BadContraction("merged cone not simplicial".into()));
                }
                cones.insert(rays);
            }
        }
    }
    let maximal_cones: Vec<Vec<LatticePoint>> = cones.into_iter().collect();
    if !facets_paired(&maximal_cones) {
        return Err(FanError::BadContraction("facet pairing broken".into()));
    }
    // coverage without overlap: the interior point of every original chamber
    // must be strictly inside exactly one merged cone
    for ch in &fan.chambers {
        let interior = ch
            .rays
            .iter()
            .fold(LatticePoint::zero(n + 1), |acc, r| acc.add(r));
        let hits = maximal_cones
            .iter()
            .filter(|rays| strictly_inside(rays, &interior))
            .count();
        if hits != 1 {
            return Err(FanError::BadContraction(format!(
                "chamber interior point {interior} lies in {hits} cones"
            )));
        }
    }
    let mut rays: BTreeSet<LatticePoint> = BTreeSet::new();
    for c in &maximal_cones {
        rays.extend(c.iter().cloned());
    }
    Ok(ContractedFan {
        lattice,
        rays: rays.into_iter().collect(),
        removed_rays,
        maximal_cones,
    })
}

fn strictly_inside(rays: &[LatticePoint], p: &LatticePoint) -> bool {
    let cols: Vec<&[i64]> = rays.iter().map(|r| r.coords()).collect();
    match solve_in_basis(&cols, p.coords()) {
        Some(coeffs) => coeffs.iter().all(|c| *c > Ratio::from_integer(0)),
        None => false,
    }
}
