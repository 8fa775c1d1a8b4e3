//! Classical root systems B/C/D (and A for labeling), their lattices and
//! Weyl groups.
//!
//! Root vectors live in the character lattice M with basis `u_1..u_n`.
//! Coweight lattice points are stored in half-unit integer coordinates
//! (true coordinates multiplied by 2) so that half-sum generators such as
//! `1/2(v_1+...+v_n)` stay integral.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RootError {
    #[error("rank {rank} out of range for family {family:?}")]
    RankOutOfRange { family: Family, rank: usize },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("{0} is not a sublattice of {1}")]
    NotASublattice(String, String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::B => write!(f, "B"),
            Family::C => write!(f, "C"),
            Family::D => write!(f, "D"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            other => Err(format!("unknown root system family `{other}`")),
        }
    }
}

/// Integer vector in the character lattice M, coordinates in the basis
/// `u_1..u_n` (for family A the ambient dimension is `rank + 1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootVector {
    coords: Vec<i64>,
}

impl RootVector {
    pub fn new(coords: Vec<i64>) -> Self {
        RootVector { coords }
    }

    pub fn zero(dim: usize) -> Self {
        RootVector { coords: vec![0; dim] }
    }

    /// The basis vector `u_i` (1-based).
    pub fn u(i: usize, dim: usize) -> Self {
        let mut coords = vec![0; dim];
        coords[i - 1] = 1;
        RootVector { coords }
    }

    /// `beta_{ij} = u_i - u_j`.
    pub fn beta(i: usize, j: usize, dim: usize) -> Self {
        let mut coords = vec![0; dim];
        coords[i - 1] = 1;
        coords[j - 1] = -1;
        RootVector { coords }
    }

    /// `gamma_{ij} = u_i + u_j`.
    pub fn gamma(i: usize, j: usize, dim: usize) -> Self {
        let mut coords = vec![0; dim];
        coords[i - 1] = 1;
        coords[j - 1] = 1;
        RootVector { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn neg(&self) -> Self {
        RootVector { coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        RootVector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        RootVector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    /// Positive w.r.t. the standard simple roots: first nonzero coordinate > 0.
    pub fn is_positive(&self) -> bool {
        match self.coords.iter().find(|&&c| c != 0) {
            Some(&c) => c > 0,
            None => false,
        }
    }

    /// Canonical representative of the opposite pair {r, -r}.
    pub fn positive_rep(&self) -> Self {
        if self.is_positive() {
            self.clone()
        } else {
            self.neg()
        }
    }

    /// Pairing with a coweight-lattice point in half-unit coordinates,
    /// scaled by 2 (sign and comparisons are unaffected).
    pub fn pair2(&self, p: &LatticePoint) -> i64 {
        self.coords.iter().zip(p.coords()).map(|(a, b)| a * b).sum()
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz: Vec<(usize, i64)> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i + 1, c))
            .collect();
        match nz.as_slice() {
            [] => write!(f, "0"),
            [(i, 1)] => write!(f, "u{i}"),
            [(i, -1)] => write!(f, "-u{i}"),
            [(i, 2)] => write!(f, "2u{i}"),
            [(i, -2)] => write!(f, "-2u{i}"),
            [(i, 1), (j, -1)] => write!(f, "b{i}{j}"),
            [(i, -1), (j, 1)] => write!(f, "-b{i}{j}"),
            [(i, 1), (j, 1)] => write!(f, "g{i}{j}"),
            [(i, -1), (j, -1)] => write!(f, "-g{i}{j}"),
            _ => {
                let mut first = true;
                for (i, c) in nz {
                    if c > 0 && !first {
                        write!(f, "+")?;
                    }
                    match c {
                        1 => write!(f, "u{i}")?,
                        -1 => write!(f, "-u{i}")?,
                        _ => write!(f, "{c}u{i}")?,
                    }
                    first = false;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LatticeKind {
    /// Character / root lattice M(R), unit coordinates.
    M,
    /// Coweight lattice N(R), half-unit coordinates.
    N,
}

/// Identifier of one of the lattices M(R), N(R).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeTag {
    pub kind: LatticeKind,
    pub family: Family,
    pub rank: usize,
}

impl LatticeTag {
    pub fn m(family: Family, rank: usize) -> Self {
        LatticeTag { kind: LatticeKind::M, family, rank }
    }

    pub fn n(family: Family, rank: usize) -> Self {
        LatticeTag { kind: LatticeKind::N, family, rank }
    }

    /// Membership predicate for stored coordinates.
    /// M lattices use unit coordinates, N lattices half-unit coordinates.
    pub fn contains(&self, coords: &[i64]) -> bool {
        if coords.len() != self.ambient_dim() {
            return false;
        }
        match (self.kind, self.family) {
            (LatticeKind::M, Family::A | Family::B) => true,
            (LatticeKind::M, Family::C | Family::D) => {
                coords.iter().sum::<i64>() % 2 == 0
            }
            (LatticeKind::N, Family::A | Family::B) => coords.iter().all(|c| c % 2 == 0),
            (LatticeKind::N, Family::C | Family::D) => {
                coords.iter().all(|c| c % 2 == 0) || coords.iter().all(|c| c % 2 != 0)
            }
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            _ => self.rank,
        }
    }

    /// Covolume of the lattice in stored coordinates: |det| of a basis matrix.
    fn covolume(&self) -> i64 {
        let n = self.ambient_dim() as u32;
        match (self.kind, self.family) {
            (LatticeKind::M, Family::A | Family::B) => 1,
            (LatticeKind::M, Family::C | Family::D) => 2,
            (LatticeKind::N, Family::A | Family::B) => 2i64.pow(n),
            (LatticeKind::N, Family::C | Family::D) => 2i64.pow(n - 1),
        }
    }

    /// A basis of the lattice in stored coordinates.
    pub fn basis(&self) -> Vec<Vec<i64>> {
        let n = self.ambient_dim();
        let scale = match self.kind {
            LatticeKind::M => 1,
            LatticeKind::N => 2,
        };
        let mut basis: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = scale;
                v
            })
            .collect();
        if matches!(self.family, Family::C | Family::D) {
            match self.kind {
                // replace the last vector by 2u_n resp. the all-ones half sum
                LatticeKind::M => {
                    basis[n - 1] = vec![0; n];
                    basis[n - 1][n - 1] = 2;
                    for i in 0..n - 1 {
                        basis[i] = vec![0; n];
                        basis[i][i] = 1;
                        basis[i][i + 1] = -1;
                    }
                    // u_i - u_{i+1} and 2u_n generate {sum even}
                }
                LatticeKind::N => {
                    basis[n - 1] = vec![1; n];
                }
            }
        }
        basis
    }

    /// Express a stored-coordinate point in this lattice's basis; `None`
    /// if the point is not a lattice member.
    pub fn lattice_coords(&self, coords: &[i64]) -> Option<Vec<i64>> {
        if !self.contains(coords) {
            return None;
        }
        let n = self.ambient_dim();
        match (self.kind, self.family) {
            (LatticeKind::M, Family::A | Family::B) => Some(coords.to_vec()),
            (LatticeKind::N, Family::A | Family::B) => {
                Some(coords.iter().map(|c| c / 2).collect())
            }
            (LatticeKind::N, Family::C | Family::D) => {
                // basis 2e_1, ..., 2e_{n-1}, (1,...,1)
                let a_n = coords[n - 1];
                let mut out: Vec<i64> = (0..n - 1).map(|i| (coords[i] - a_n) / 2).collect();
                out.push(a_n);
                Some(out)
            }
            (LatticeKind::M, Family::C | Family::D) => {
                // basis u_1-u_2, ..., u_{n-1}-u_n, 2u_n: a_i = partial sums
                let mut out = Vec::with_capacity(n);
                let mut acc = 0i64;
                for &c in &coords[..n - 1] {
                    acc += c;
                    out.push(acc);
                }
                acc += coords[n - 1];
                out.push(acc / 2);
                Some(out)
            }
        }
    }
}

impl fmt::Display for LatticeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            LatticeKind::M => "M",
            LatticeKind::N => "N",
        };
        write!(f, "{}({}{})", k, self.family, self.rank)
    }
}

/// Index of `sub` in `sup` (both lattices of the same kind and rank).
pub fn lattice_index(sub: LatticeTag, sup: LatticeTag) -> Result<i64, RootError> {
    if sub.kind != sup.kind || sub.ambient_dim() != sup.ambient_dim() {
        return Err(RootError::NotASublattice(sub.to_string(), sup.to_string()));
    }
    for b in sub.basis() {
        if !sup.contains(&b) {
            return Err(RootError::NotASublattice(sub.to_string(), sup.to_string()));
        }
    }
    Ok(sub.covolume() / sup.covolume())
}

/// Point of a coweight lattice N(R), stored in half-unit integer coordinates
/// (stored value = 2 x true coordinate).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    coords: Vec<i64>,
}

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticePoint { coords }
    }

    pub fn zero(dim: usize) -> Self {
        LatticePoint { coords: vec![0; dim] }
    }

    /// The dual basis vector `v_i` (1-based), stored as `2 e_i`.
    pub fn v(i: usize, dim: usize) -> Self {
        let mut coords = vec![0; dim];
        coords[i - 1] = 2;
        LatticePoint { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        LatticePoint {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        LatticePoint { coords: self.coords.iter().map(|c| -c).collect() }
    }

    /// Drop the last coordinate (projection along `v_{n+1}`).
    pub fn project(&self) -> Self {
        LatticePoint { coords: self.coords[..self.coords.len() - 1].to_vec() }
    }

    /// Primitive in the given lattice: member, nonzero, and no proper divisor
    /// stays a member.
    pub fn is_primitive(&self, tag: LatticeTag) -> bool {
        if self.is_zero() || !tag.contains(&self.coords) {
            return false;
        }
        let g = self.coords.iter().fold(0i64, |g, &c| gcd(g, c.abs()));
        for d in 2..=g {
            if g % d == 0 {
                let q: Vec<i64> = self.coords.iter().map(|c| c / d).collect();
                if tag.contains(&q) {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let write_terms = |f: &mut fmt::Formatter<'_>, scale: i64| -> fmt::Result {
            let mut first = true;
            for (i, &c) in self.coords.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let c = c / scale;
                if c > 0 && !first {
                    write!(f, "+")?;
                }
                match c {
                    1 => write!(f, "v{}", i + 1)?,
                    -1 => write!(f, "-v{}", i + 1)?,
                    _ => write!(f, "{}v{}", c, i + 1)?,
                }
                first = false;
            }
            if first {
                write!(f, "0")?;
            }
            Ok(())
        };
        if self.coords.iter().all(|c| c % 2 == 0) {
            write_terms(f, 2)
        } else {
            write!(f, "1/2(")?;
            write_terms(f, 1)?;
            write!(f, ")")
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Signed permutation: `images[i-1] = w(i)`, absolute values a permutation
/// of `1..=n`. Elements of W(B_n) = W(C_n); the even-sign ones form W(D_n).
/// For family A plain permutations (all images positive) are used.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedPermutation {
    images: Vec<i32>,
}

impl SignedPermutation {
    pub fn new(images: Vec<i32>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a - 1] {
                return None;
            }
            seen[a - 1] = true;
        }
        Some(SignedPermutation { images })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation { images: (1..=n as i32).collect() }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    /// `w(i)` for 1-based `i`.
    pub fn image(&self, i: usize) -> i32 {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[i32] {
        &self.images
    }

    pub fn sign_product(&self) -> i32 {
        self.images.iter().map(|x| x.signum()).product()
    }

    pub fn inverse(&self) -> Self {
        let n = self.images.len();
        let mut inv = vec![0i32; n];
        for (i, &x) in self.images.iter().enumerate() {
            let a = x.unsigned_abs() as usize;
            inv[a - 1] = if x > 0 { (i + 1) as i32 } else { -((i + 1) as i32) };
        }
        SignedPermutation { images: inv }
    }

    /// Composition `self o other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        let images = (1..=other.rank())
            .map(|i| self.apply_index(other.image(i)))
            .collect();
        SignedPermutation { images }
    }

    /// Action on a signed index: `w(eps i) = eps w(i)`.
    pub fn apply_index(&self, x: i32) -> i32 {
        let w = self.images[(x.unsigned_abs() - 1) as usize];
        if x > 0 {
            w
        } else {
            -w
        }
    }

    /// Linear action on M: `u_i -> sign(w(i)) u_{|w(i)|}`.
    pub fn act_root(&self, r: &RootVector) -> Result<RootVector, RootError> {
        if r.dim() != self.images.len() {
            return Err(RootError::RankMismatch(r.dim(), self.images.len()));
        }
        let mut out = vec![0i64; r.dim()];
        for (i, &c) in r.coords().iter().enumerate() {
            let w = self.images[i];
            out[(w.unsigned_abs() - 1) as usize] += c * w.signum() as i64;
        }
        Ok(RootVector::new(out))
    }

    /// Dual action on N (same formula in the dual basis).
    pub fn act_point(&self, p: &LatticePoint) -> Result<LatticePoint, RootError> {
        if p.dim() != self.images.len() {
            return Err(RootError::RankMismatch(p.dim(), self.images.len()));
        }
        let mut out = vec![0i64; p.dim()];
        for (i, &c) in p.coords().iter().enumerate() {
            let w = self.images[i];
            out[(w.unsigned_abs() - 1) as usize] += c * w.signum() as i64;
        }
        Ok(LatticePoint::new(out))
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// All Weyl group elements: 2^n n! signed permutations for B/C, the
/// even-sign subgroup for D, plain S_{n+1} for A.
pub fn weyl_elements(family: Family, rank: usize) -> Result<Vec<SignedPermutation>, RootError> {
    check_rank(family, rank)?;
    let n = match family {
        Family::A => rank + 1,
        _ => rank,
    };
    let mut out = Vec::new();
    let mut perm: Vec<i32> = (1..=n as i32).collect();
    permute(&mut perm, 0, &mut |p| match family {
        Family::A => out.push(SignedPermutation { images: p.to_vec() }),
        Family::B | Family::C => {
            for signs in 0..(1u32 << n) {
                let images = p
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| if signs >> i & 1 == 1 { -x } else { x })
                    .collect();
                out.push(SignedPermutation { images });
            }
        }
        Family::D => {
            for signs in 0..(1u32 << n) {
                if (signs.count_ones() % 2) != 0 {
                    continue;
                }
                let images = p
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| if signs >> i & 1 == 1 { -x } else { x })
                    .collect();
                out.push(SignedPermutation { images });
            }
        }
    });
    Ok(out)
}

fn permute(v: &mut Vec<i32>, k: usize, f: &mut impl FnMut(&[i32])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

fn check_rank(family: Family, rank: usize) -> Result<(), RootError> {
    let ok = match family {
        Family::D => rank >= 2,
        _ => rank >= 1,
    };
    if ok && rank <= 16 {
        Ok(())
    } else {
        Err(RootError::RankOutOfRange { family, rank })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    pub roots: Vec<RootVector>,
    pub simple_roots: Vec<RootVector>,
}

/// Build the full root set and the standard simple roots.
pub fn build_root_system(family: Family, rank: usize) -> Result<RootSystem, RootError> {
    check_rank(family, rank)?;
    let n = rank;
    let mut roots = Vec::new();
    let mut simple = Vec::new();
    match family {
        Family::A => {
            let d = n + 1;
            for i in 1..=d {
                for j in 1..=d {
                    if i != j {
                        roots.push(RootVector::beta(i, j, d));
                    }
                }
            }
            for i in 1..n + 1 {
                simple.push(RootVector::beta(i, i + 1, d));
            }
        }
        Family::B => {
            for i in 1..=n {
                roots.push(RootVector::u(i, n));
                roots.push(RootVector::u(i, n).neg());
            }
            push_bcd_long(&mut roots, n);
            for i in 1..n {
                simple.push(RootVector::beta(i, i + 1, n));
            }
            simple.push(RootVector::u(n, n));
        }
        Family::C => {
            for i in 1..=n {
                let two_u = RootVector::new({
                    let mut c = vec![0; n];
                    c[i - 1] = 2;
                    c
                });
                roots.push(two_u.neg());
                roots.push(two_u);
            }
            push_bcd_long(&mut roots, n);
            for i in 1..n {
                simple.push(RootVector::beta(i, i + 1, n));
            }
            let mut c = vec![0; n];
            c[n - 1] = 2;
            simple.push(RootVector::new(c));
        }
        Family::D => {
            push_bcd_long(&mut roots, n);
            for i in 1..n {
                simple.push(RootVector::beta(i, i + 1, n));
            }
            simple.push(RootVector::gamma(n - 1, n, n));
        }
    }
    roots.sort();
    roots.dedup();
    Ok(RootSystem { family, rank, roots, simple_roots: simple })
}

fn push_bcd_long(roots: &mut Vec<RootVector>, n: usize) {
    for i in 1..=n {
        for j in i + 1..=n {
            roots.push(RootVector::beta(i, j, n));
            roots.push(RootVector::beta(i, j, n).neg());
            roots.push(RootVector::gamma(i, j, n));
            roots.push(RootVector::gamma(i, j, n).neg());
        }
    }
}

impl RootSystem {
    pub fn contains(&self, r: &RootVector) -> bool {
        self.roots.binary_search(r).is_ok()
    }

    /// Positive roots w.r.t. the standard simple roots, sorted by
    /// (height, lexicographic coordinates).
    pub fn positive_roots(&self) -> Vec<RootVector> {
        let mut pos: Vec<RootVector> =
            self.roots.iter().filter(|r| r.is_positive()).cloned().collect();
        pos.sort_by_key(|r| (self.height(r), r.coords().to_vec()));
        pos
    }

    /// Sum of coefficients of the expansion in simple roots.
    pub fn height(&self, r: &RootVector) -> i64 {
        self.simple_coefficients(r)
            .map(|c| c.iter().sum())
            .expect("root expands in simple roots")
    }

    /// Expansion of `r` in the simple-root basis (exact, None if not in span).
    pub fn simple_coefficients(&self, r: &RootVector) -> Option<Vec<i64>> {
        use num::rational::Ratio;
        let d = r.dim();
        let k = self.simple_roots.len();
        // columns = simple roots, solve A x = r by rational elimination
        let mut a: Vec<Vec<Ratio<i64>>> = (0..d)
            .map(|row| {
                let mut v: Vec<Ratio<i64>> = self
                    .simple_roots
                    .iter()
                    .map(|s| Ratio::from_integer(s.coords()[row]))
                    .collect();
                v.push(Ratio::from_integer(r.coords()[row]));
                v
            })
            .collect();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..k {
            if let Some(sel) = (prow..d).find(|&i| a[i][col] != Ratio::from_integer(0)) {
                a.swap(prow, sel);
                let inv = a[prow][col].recip();
                for x in a[prow].iter_mut() {
                    *x *= inv;
                }
                for i in 0..d {
                    if i != prow && a[i][col] != Ratio::from_integer(0) {
                        let f = a[i][col];
                        for c in 0..=k {
                            let sub = f * a[prow][c];
                            a[i][c] -= sub;
                        }
                    }
                }
                pivots.push(col);
                prow += 1;
            }
        }
        // consistency
        for row in prow..d {
            if a[row][k] != Ratio::from_integer(0) {
                return None;
            }
        }
        let mut x = vec![Ratio::from_integer(0); k];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = a[row][k];
        }
        x.iter()
            .map(|v| if v.is_integer() { Some(v.to_integer()) } else { None })
            .collect()
    }

    /// All unordered pairs of positive roots whose sum is again positive,
    /// as triples (alpha, beta, gamma) with alpha + beta = gamma.
    pub fn a2_triples(&self) -> Vec<(RootVector, RootVector, RootVector)> {
        let pos = self.positive_roots();
        let mut out = Vec::new();
        for i in 0..pos.len() {
            for j in i + 1..pos.len() {
                let s = pos[i].add(&pos[j]);
                if s.is_positive() && self.contains(&s) {
                    out.push((pos[i].clone(), pos[j].clone(), s));
                }
            }
        }
        out
    }

    pub fn n_lattice(&self) -> LatticeTag {
        LatticeTag::n(self.family, self.rank)
    }

    pub fn m_lattice(&self) -> LatticeTag {
        LatticeTag::m(self.family, self.rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        assert_eq!(build_root_system(Family::B, 2).unwrap().roots.len(), 8);
        assert_eq!(build_root_system(Family::C, 3).unwrap().roots.len(), 18);
        assert_eq!(build_root_system(Family::D, 2).unwrap().roots.len(), 4);
        assert_eq!(build_root_system(Family::A, 2).unwrap().roots.len(), 6);
        for n in 1..=8 {
            assert_eq!(build_root_system(Family::B, n).unwrap().roots.len(), 2 * n * n);
            assert_eq!(build_root_system(Family::C, n).unwrap().roots.len(), 2 * n * n);
            if n >= 2 {
                assert_eq!(
                    build_root_system(Family::D, n).unwrap().roots.len(),
                    2 * n * (n - 1)
                );
            }
        }
        assert!(build_root_system(Family::D, 1).is_err());
    }

    #[test]
    fn d2_roots_are_pm_u1_pm_u2() {
        let rs = build_root_system(Family::D, 2).unwrap();
        let mut expect = vec![
            RootVector::new(vec![1, 1]),
            RootVector::new(vec![1, -1]),
            RootVector::new(vec![-1, 1]),
            RootVector::new(vec![-1, -1]),
        ];
        expect.sort();
        assert_eq!(rs.roots, expect);
    }

    #[test]
    fn negation_closed_and_positive_half() {
        for (fam, lo) in [(Family::B, 1), (Family::C, 1), (Family::D, 2), (Family::A, 1)] {
            for n in lo..=6 {
                let rs = build_root_system(fam, n).unwrap();
                for r in &rs.roots {
                    assert!(rs.contains(&r.neg()));
                }
                assert_eq!(rs.positive_roots().len(), rs.roots.len() / 2);
            }
        }
    }

    #[test]
    fn simple_roots_expand_all_roots() {
        for (fam, lo) in [(Family::B, 1), (Family::C, 1), (Family::D, 2), (Family::A, 1)] {
            for n in lo..=5 {
                let rs = build_root_system(fam, n).unwrap();
                for r in &rs.roots {
                    let c = rs.simple_coefficients(r).expect("in span");
                    assert!(
                        c.iter().all(|&x| x >= 0) || c.iter().all(|&x| x <= 0),
                        "{r} has mixed expansion {c:?}"
                    );
                    assert_eq!(c.iter().all(|&x| x >= 0), r.is_positive());
                }
            }
        }
    }

    #[test]
    fn b2_positive_roots() {
        let rs = build_root_system(Family::B, 2).unwrap();
        let pos = rs.positive_roots();
        let mut expect = vec![
            RootVector::u(1, 2),
            RootVector::u(2, 2),
            RootVector::beta(1, 2, 2),
            RootVector::gamma(1, 2, 2),
        ];
        expect.sort();
        let mut got = pos.clone();
        got.sort();
        assert_eq!(got, expect);
        assert_eq!(build_root_system(Family::B, 1).unwrap().positive_roots(), vec![
            RootVector::u(1, 1)
        ]);
        assert_eq!(build_root_system(Family::D, 3).unwrap().positive_roots().len(), 6);
    }

    #[test]
    fn b2_a2_triples() {
        let rs = build_root_system(Family::B, 2).unwrap();
        let triples = rs.a2_triples();
        assert_eq!(triples.len(), 2);
        // beta_12 + u_2 = u_1 and u_1 + u_2 = gamma_12
        let set: std::collections::HashSet<_> = triples
            .iter()
            .map(|(a, b, c)| {
                let mut p = [a.clone(), b.clone()];
                p.sort();
                (p, c.clone())
            })
            .collect();
        let mut p1 = [RootVector::beta(1, 2, 2), RootVector::u(2, 2)];
        p1.sort();
        let mut p2 = [RootVector::u(1, 2), RootVector::u(2, 2)];
        p2.sort();
        assert!(set.contains(&(p1, RootVector::u(1, 2))));
        assert!(set.contains(&(p2, RootVector::gamma(1, 2, 2))));
        assert!(build_root_system(Family::B, 1).unwrap().a2_triples().is_empty());
    }

    /// Lemma-style instantiation of the four B-triple families, used as an
    /// independent oracle against the pairwise scan.
    fn b_triples_from_patterns(n: usize) -> Vec<(RootVector, RootVector, RootVector)> {
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                out.push((RootVector::beta(i, j, n), RootVector::u(j, n), RootVector::u(i, n)));
                out.push((RootVector::u(i, n), RootVector::u(j, n), RootVector::gamma(i, j, n)));
                for k in j + 1..=n {
                    out.push((
                        RootVector::beta(i, j, n),
                        RootVector::beta(j, k, n),
                        RootVector::beta(i, k, n),
                    ));
                }
                for k in 1..=n {
                    if k != i && k != j {
                        let (a, b) = if j < k { (j, k) } else { (k, j) };
                        out.push((
                            RootVector::beta(i, j, n),
                            RootVector::gamma(a, b, n),
                            RootVector::gamma(i, k, n),
                        ));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn a2_triples_match_lemma_patterns() {
        for n in 1..=6 {
            let rs = build_root_system(Family::B, n).unwrap();
            let scan: std::collections::HashSet<_> = rs
                .a2_triples()
                .into_iter()
                .map(|(a, b, c)| {
                    let mut p = [a, b];
                    p.sort();
                    (p, c)
                })
                .collect();
            let pat: std::collections::HashSet<_> = b_triples_from_patterns(n)
                .into_iter()
                .map(|(a, b, c)| {
                    let mut p = [a, b];
                    p.sort();
                    (p, c)
                })
                .collect();
            assert_eq!(scan, pat, "n={n}");
        }
    }

    #[test]
    fn weyl_counts_and_action() {
        assert_eq!(weyl_elements(Family::B, 2).unwrap().len(), 8);
        assert_eq!(weyl_elements(Family::D, 3).unwrap().len(), 24);
        assert_eq!(weyl_elements(Family::B, 1).unwrap().len(), 2);
        let b1: std::collections::HashSet<Vec<i32>> = weyl_elements(Family::B, 1)
            .unwrap()
            .into_iter()
            .map(|w| w.images().to_vec())
            .collect();
        assert!(b1.contains(&vec![1]) && b1.contains(&vec![-1]));

        let w = SignedPermutation::new(vec![-1, 2]).unwrap();
        assert_eq!(w.act_root(&RootVector::u(1, 2)).unwrap(), RootVector::u(1, 2).neg());
        let swap = SignedPermutation::new(vec![2, 1]).unwrap();
        assert_eq!(
            swap.act_root(&RootVector::beta(1, 2, 2)).unwrap(),
            RootVector::beta(1, 2, 2).neg()
        );

        // orbit of u_1 under W(B_2)
        let orbit: std::collections::HashSet<_> = weyl_elements(Family::B, 2)
            .unwrap()
            .iter()
            .map(|w| w.act_root(&RootVector::u(1, 2)).unwrap())
            .collect();
        assert_eq!(orbit.len(), 4);
        for r in [RootVector::u(1, 2), RootVector::u(2, 2)] {
            assert!(orbit.contains(&r) && orbit.contains(&r.neg()));
        }
    }

    #[test]
    fn weyl_permutes_roots() {
        for (fam, lo) in [(Family::B, 1), (Family::C, 1), (Family::D, 2)] {
            for n in lo..=4 {
                let rs = build_root_system(fam, n).unwrap();
                for w in weyl_elements(fam, n).unwrap() {
                    let image: std::collections::HashSet<_> =
                        rs.roots.iter().map(|r| w.act_root(r).unwrap()).collect();
                    assert_eq!(image.len(), rs.roots.len());
                    assert!(image.iter().all(|r| rs.contains(r)));
                }
            }
        }
    }

    #[test]
    fn d_sign_products() {
        for n in 2..=4 {
            let els = weyl_elements(Family::D, n).unwrap();
            assert_eq!(els.len(), (1 << (n - 1)) * (1..=n).product::<usize>());
            for w in &els {
                assert_eq!(w.sign_product(), 1);
            }
            // closure under composition
            let w1 = &els[1];
            let w2 = &els[els.len() - 1];
            assert_eq!(w1.compose(w2).sign_product(), 1);
        }
    }

    #[test]
    fn lattice_indices() {
        for n in 1..=5 {
            assert_eq!(
                lattice_index(LatticeTag::n(Family::B, n), LatticeTag::n(Family::C, n)).unwrap(),
                2
            );
            assert_eq!(
                lattice_index(LatticeTag::n(Family::B, n), LatticeTag::n(Family::B, n)).unwrap(),
                1
            );
            assert_eq!(
                lattice_index(LatticeTag::m(Family::C, n), LatticeTag::m(Family::B, n)).unwrap(),
                2
            );
        }
        assert!(lattice_index(LatticeTag::n(Family::C, 2), LatticeTag::n(Family::B, 2)).is_err());
        assert!(lattice_index(LatticeTag::n(Family::B, 2), LatticeTag::m(Family::B, 2)).is_err());
    }

    #[test]
    fn half_unit_membership_and_primitivity() {
        let nb = LatticeTag::n(Family::B, 2);
        let nc = LatticeTag::n(Family::C, 2);
        let half_sum = LatticePoint::new(vec![1, 1]);
        assert!(!nb.contains(half_sum.coords()));
        assert!(nc.contains(half_sum.coords()));
        assert!(half_sum.is_primitive(nc));
        // v_1 + v_2 is primitive in N(B) but 2 * half_sum in N(C)
        let full = LatticePoint::new(vec![2, 2]);
        assert!(full.is_primitive(nb));
        assert!(!full.is_primitive(nc));
        assert!(LatticePoint::v(1, 2).is_primitive(nb));
        assert!(LatticePoint::v(1, 2).is_primitive(nc));
    }

    #[test]
    fn lattice_coords_roundtrip() {
        for tag in [
            LatticeTag::n(Family::B, 3),
            LatticeTag::n(Family::C, 3),
            LatticeTag::n(Family::D, 3),
            LatticeTag::m(Family::B, 3),
            LatticeTag::m(Family::C, 3),
        ] {
            let basis = tag.basis();
            for (i, b) in basis.iter().enumerate() {
                assert!(tag.contains(b), "{tag} basis vector {b:?}");
                let lc = tag.lattice_coords(b).unwrap();
                // expressing a basis vector must give a unit coordinate vector
                let mut expect = vec![0; basis.len()];
                expect[i] = 1;
                // basis() and lattice_coords() may use different bases for M(C);
                // check instead that reconstruction works
                let recon: Vec<i64> = (0..b.len())
                    .map(|row| lc.iter().zip(&basis).map(|(c, bv)| c * bv[row]).sum())
                    .collect();
                let _ = expect;
                assert_eq!(recon, *b);
            }
        }
    }
}
