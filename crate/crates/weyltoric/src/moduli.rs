//! Data side of the moduli interpretation: validating projective data on
//! opposite-root pairs, classifying data and torus orbits into combinatorial
//! types of pointed chains with involution, universal-curve equations, a
//! finite-field fiber oracle, and Dynkin-shaped fiber diagrams.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::fan::{weyl_chamber_fan, Cone, FanError, SignedSubset};
use crate::rootsys::{
    build_root_system, Family, LatticePoint, RootError, RootSystem, RootVector,
    SignedPermutation,
};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ModuliError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error("family {0} has no data model here")]
    BadFamily(Family),
    #[error("no data entry for the pair {{+-{0}}}")]
    MissingPair(String),
    #[error("projective pair may not be (0:0)")]
    ZeroPair,
    #[error("{0} is not a usable field size (need a prime <= 13)")]
    BadField(i64),
    #[error("scalars live over different fields")]
    FieldMismatch,
    #[error("data violates an A2 triple relation: {0}")]
    InvalidData(String),
    #[error("data does not induce a total preorder: {0}")]
    NotTotallyOrdered(String),
    #[error("cone does not belong to the fan: {0}")]
    ConeNotInFan(String),
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("cannot parse {0}")]
    Parse(String),
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn mod_inv(a: i64, q: i64) -> i64 {
    // q is prime and a is nonzero mod q
    let mut r = 1i64;
    let mut base = a.rem_euclid(q);
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % q;
        }
        base = base * base % q;
        e >>= 1;
    }
    r
}

pub fn is_prime(q: i64) -> bool {
    q >= 2 && (2..q).all(|d| q % d != 0)
}

/// Point (x : y) of a projective line, over the rationals or a prime field,
/// stored in canonical form.  Over the rationals: coprime integers, first
/// nonzero coordinate positive.  Over F_q: first nonzero coordinate is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ProjectivePair {
    x: i64,
    y: i64,
    modulus: Option<i64>,
}

impl ProjectivePair {
    pub fn rational(x: i64, y: i64) -> Result<Self, ModuliError> {
        if x == 0 && y == 0 {
            return Err(ModuliError::ZeroPair);
        }
        let g = gcd(x, y);
        let (mut x, mut y) = (x / g, y / g);
        if x < 0 || (x == 0 && y < 0) {
            x = -x;
            y = -y;
        }
        Ok(ProjectivePair { x, y, modulus: None })
    }

    pub fn modular(x: i64, y: i64, q: i64) -> Result<Self, ModuliError> {
        if !is_prime(q) || q > 13 {
            return Err(ModuliError::BadField(q));
        }
        let (x, y) = (x.rem_euclid(q), y.rem_euclid(q));
        if x == 0 && y == 0 {
            return Err(ModuliError::ZeroPair);
        }
        let inv = if x != 0 { mod_inv(x, q) } else { mod_inv(y, q) };
        Ok(ProjectivePair { x: x * inv % q, y: y * inv % q, modulus: Some(q) })
    }

    pub fn x(&self) -> i64 {
        self.x
    }

    pub fn y(&self) -> i64 {
        self.y
    }

    pub fn modulus(&self) -> Option<i64> {
        self.modulus
    }

    /// The same point read for the opposite root: (y : x).
    pub fn swapped(&self) -> Self {
        match self.modulus {
            None => ProjectivePair::rational(self.y, self.x).unwrap(),
            Some(q) => ProjectivePair::modular(self.y, self.x, q).unwrap(),
        }
    }

    pub fn negated_y(&self) -> Self {
        match self.modulus {
            None => ProjectivePair::rational(self.x, -self.y).unwrap(),
            Some(q) => ProjectivePair::modular(self.x, -self.y, q).unwrap(),
        }
    }

    pub fn is_zero_one(&self) -> bool {
        self.x == 0
    }

    pub fn is_one_zero(&self) -> bool {
        self.y == 0
    }

    /// Reduce a rational pair modulo q; modular pairs must already live there.
    pub fn in_field(&self, q: i64) -> Result<Self, ModuliError> {
        match self.modulus {
            None => ProjectivePair::modular(self.x, self.y, q),
            Some(p) if p == q => Ok(*self),
            Some(_) => Err(ModuliError::FieldMismatch),
        }
    }
}

impl std::fmt::Display for ProjectivePair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}:{})", self.x, self.y)
    }
}

/// Projective data on every pair of opposite roots of R_n, keyed by the
/// positive representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RnData {
    family: Family,
    rank: usize,
    pairs: BTreeMap<RootVector, ProjectivePair>,
}

fn data_family_ok(family: Family) -> Result<(), ModuliError> {
    match family {
        Family::B | Family::C | Family::D => Ok(()),
        Family::A => Err(ModuliError::BadFamily(Family::A)),
    }
}

impl RnData {
    /// All pairs at (1 : 1), the identity point of the open torus.
    pub fn generic(family: Family, rank: usize) -> Result<Self, ModuliError> {
        data_family_ok(family)?;
        let rs = build_root_system(family, rank)?;
        let one = ProjectivePair::rational(1, 1).unwrap();
        let pairs = rs.positive_roots().into_iter().map(|r| (r, one)).collect();
        Ok(RnData { family, rank, pairs })
    }

    /// The data cut out by a point p of the coweight lattice:
    /// (t_b : t_-b) = (0:1) where <b,p> > 0, (1:0) where < 0, (1:1) on the
    /// orthogonal pairs.  For p interior to a cone this is the data of the
    /// corresponding torus orbit.
    pub fn from_orbit_point(
        family: Family,
        rank: usize,
        p: &LatticePoint,
    ) -> Result<Self, ModuliError> {
        data_family_ok(family)?;
        let rs = build_root_system(family, rank)?;
        let mut pairs = BTreeMap::new();
        for r in rs.positive_roots() {
            let s = r.pair2(p);
            let pair = if s > 0 {
                ProjectivePair::rational(0, 1)
            } else if s < 0 {
                ProjectivePair::rational(1, 0)
            } else {
                ProjectivePair::rational(1, 1)
            };
            pairs.insert(r, pair.unwrap());
        }
        Ok(RnData { family, rank, pairs })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Set the value on the pair of `root`; a negative representative sets
    /// the swapped point.
    pub fn set(&mut self, root: &RootVector, pair: ProjectivePair) {
        if root.is_positive() {
            self.pairs.insert(root.clone(), pair);
        } else {
            self.pairs.insert(root.neg(), pair.swapped());
        }
    }

    /// The pair (t_root : t_-root).
    pub fn get(&self, root: &RootVector) -> Result<ProjectivePair, ModuliError> {
        let (rep, flip) = if root.is_positive() {
            (root.clone(), false)
        } else {
            (root.neg(), true)
        };
        let p = self
            .pairs
            .get(&rep)
            .copied()
            .ok_or_else(|| ModuliError::MissingPair(rep.to_string()))?;
        Ok(if flip { p.swapped() } else { p })
    }

    pub fn positive_roots(&self) -> Vec<RootVector> {
        self.pairs.keys().cloned().collect()
    }

    /// Transport the data along w: the new value on w(root) is the old value
    /// on root.
    pub fn relabel(&self, w: &SignedPermutation) -> Result<Self, ModuliError> {
        let mut out = RnData { family: self.family, rank: self.rank, pairs: BTreeMap::new() };
        for (r, p) in &self.pairs {
            out.set(&w.act_root(r)?, *p);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DataValidity {
    pub valid: bool,
    /// Triples (b, g, d) with b + g = d failing t_b t_g t_-d = t_-b t_-g t_d.
    pub violations: Vec<(RootVector, RootVector, RootVector)>,
}

/// Check every A2 triple relation by cross-multiplication.
pub fn validate_data(d: &RnData) -> Result<DataValidity, ModuliError> {
    let rs = build_root_system(d.family, d.rank)?;
    let mut violations = Vec::new();
    for (b, g, s) in rs.a2_triples() {
        let tb = d.get(&b)?;
        let tg = d.get(&g)?;
        let ts = d.get(&s)?;
        let moduli: BTreeSet<Option<i64>> =
            [tb.modulus(), tg.modulus(), ts.modulus()].into_iter().collect();
        if moduli.len() > 1 {
            return Err(ModuliError::FieldMismatch);
        }
        let lhs = tb.x() as i128 * tg.x() as i128 * ts.y() as i128;
        let rhs = tb.y() as i128 * tg.y() as i128 * ts.x() as i128;
        let equal = match tb.modulus() {
            None => lhs == rhs,
            Some(q) => (lhs - rhs) % q as i128 == 0,
        };
        if !equal {
            violations.push((b, g, s));
        }
    }
    Ok(DataValidity { valid: violations.is_empty(), violations })
}

/// Marked-point labels: 0 for the central section, +i / -i for s_i^+ / s_i^-.
fn label_string(l: i32) -> String {
    match l.cmp(&0) {
        std::cmp::Ordering::Equal => "s0".into(),
        std::cmp::Ordering::Greater => format!("s{l}+"),
        std::cmp::Ordering::Less => format!("s{}-", -l),
    }
}

/// Combinatorial type of a pointed chain of projective lines with involution:
/// the partition of the marked points into the parts P_{-m},...,P_m read left
/// to right, plus fiber flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CombinatorialType {
    parts: Vec<Vec<i32>>,
    nonreduced_central: bool,
    two_dimensional: bool,
    components: Vec<String>,
}

fn sort_left(part: &mut [i32]) {
    part.sort_by_key(|&l| (l.abs(), l < 0));
}

impl CombinatorialType {
    /// Build from raw parts (left to right).  Checks the involution symmetry
    /// and stores each part in print order: left half and middle ascending by
    /// |i| with + before -, right half mirrored.
    pub fn from_parts(parts: Vec<Vec<i32>>) -> Result<Self, ModuliError> {
        let len = parts.len();
        let mut canon: Vec<Vec<i32>> = Vec::with_capacity(len);
        for (k, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(ModuliError::Parse("empty part".into()));
            }
            let mirror: BTreeSet<i32> = parts[len - 1 - k].iter().map(|&l| -l).collect();
            let own: BTreeSet<i32> = part.iter().copied().collect();
            if own != mirror || own.len() != part.len() {
                return Err(ModuliError::Parse(format!(
                    "parts are not symmetric under the involution: {part:?}"
                )));
            }
            if own.contains(&0) && 2 * k + 1 != len {
                return Err(ModuliError::Parse("label 0 outside the middle part".into()));
            }
            let mut p: Vec<i32> = part.clone();
            if 2 * k < len {
                sort_left(&mut p);
            } else {
                // mirror of the opposite part: negate its print order, reversed
                let mut q: Vec<i32> = parts[len - 1 - k].clone();
                sort_left(&mut q);
                p = q.iter().rev().map(|&l| -l).collect();
            }
            canon.push(p);
        }
        Ok(CombinatorialType {
            parts: canon,
            nonreduced_central: false,
            two_dimensional: false,
            components: Vec::new(),
        })
    }

    pub fn two_dim(components: Vec<String>) -> Self {
        CombinatorialType {
            parts: Vec::new(),
            nonreduced_central: false,
            two_dimensional: true,
            components,
        }
    }

    pub fn with_nonreduced(mut self, flag: bool) -> Self {
        self.nonreduced_central = flag;
        self
    }

    pub fn parts(&self) -> &[Vec<i32>] {
        &self.parts
    }

    pub fn has_s0(&self) -> bool {
        self.parts.iter().flatten().any(|&l| l == 0)
    }

    pub fn nonreduced_central(&self) -> bool {
        self.nonreduced_central
    }

    pub fn two_dimensional(&self) -> bool {
        self.two_dimensional
    }

    pub fn components(&self) -> &[String] {
        &self.components
    }

    /// Number of chain components (counting a nonreduced central component
    /// once, by its support).
    pub fn chain_length(&self) -> usize {
        self.parts.len()
    }

    pub fn flag_strings(&self) -> Vec<&'static str> {
        let mut f = Vec::new();
        if self.nonreduced_central {
            f.push("nonreduced");
        }
        if self.two_dimensional {
            f.push("2dim");
        }
        f
    }
}

impl std::fmt::Display for CombinatorialType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", format_type(self))
    }
}

pub fn format_type(t: &CombinatorialType) -> String {
    let mut s = if t.two_dimensional {
        t.components.join(" | ")
    } else {
        t.parts
            .iter()
            .map(|p| p.iter().map(|&l| label_string(l)).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join(" | ")
    };
    for flag in t.flag_strings() {
        s.push_str(&format!(" [{flag}]"));
    }
    s
}

pub fn parse_type(s: &str) -> Result<CombinatorialType, ModuliError> {
    let mut s = s.trim();
    let mut nonreduced = false;
    let mut two_dim = false;
    loop {
        if let Some(rest) = s.strip_suffix("[nonreduced]") {
            nonreduced = true;
            s = rest.trim_end();
        } else if let Some(rest) = s.strip_suffix("[2dim]") {
            two_dim = true;
            s = rest.trim_end();
        } else {
            break;
        }
    }
    let chunks: Vec<&str> = s.split('|').map(str::trim).collect();
    if two_dim {
        return Ok(CombinatorialType::two_dim(chunks.iter().map(|c| c.to_string()).collect()));
    }
    let mut parts = Vec::new();
    for chunk in chunks {
        let mut part = Vec::new();
        for tok in chunk.split_whitespace() {
            let body = tok
                .strip_prefix('s')
                .ok_or_else(|| ModuliError::Parse(tok.into()))?;
            let l = if body == "0" {
                0
            } else if let Some(i) = body.strip_suffix('+') {
                i.parse::<i32>().map_err(|_| ModuliError::Parse(tok.into()))?
            } else if let Some(i) = body.strip_suffix('-') {
                -i.parse::<i32>().map_err(|_| ModuliError::Parse(tok.into()))?
            } else {
                return Err(ModuliError::Parse(tok.into()));
            };
            part.push(l);
        }
        parts.push(part);
    }
    Ok(CombinatorialType::from_parts(parts)?.with_nonreduced(nonreduced))
}

/// The marked sections as roots of R_{n+1}, with their labels.  Label eps*i
/// stands for the section with root u_{n+1} + eps*u_i; label 0 for u_{n+1}.
fn section_roots(family: Family, rank: usize) -> Vec<(i32, RootVector)> {
    let n = rank;
    let mut out = Vec::new();
    if family == Family::B {
        out.push((0, RootVector::u(n + 1, n + 1)));
    }
    for i in 1..=n {
        let up = RootVector::u(n + 1, n + 1).add(&RootVector::u(i, n + 1));
        let dn = RootVector::u(n + 1, n + 1).sub(&RootVector::u(i, n + 1));
        out.push((i as i32, up));
        out.push((-(i as i32), dn));
    }
    out
}

fn classify_data(d: &RnData) -> Result<CombinatorialType, ModuliError> {
    let check = validate_data(d)?;
    if !check.valid {
        let (b, g, s) = &check.violations[0];
        return Err(ModuliError::InvalidData(format!("({b}, {g}, {s})")));
    }
    let rs = build_root_system(d.family, d.rank)?;
    let sections = section_roots(d.family, d.rank);
    let m = sections.len();
    // leq[i][j]: section i is left of or equal to section j; the direct
    // relation reads the pair of the difference root, the rest is closure.
    let mut leq = vec![vec![false; m]; m];
    let mut strict = vec![vec![false; m]; m];
    for i in 0..m {
        leq[i][i] = true;
        for j in 0..m {
            if i == j {
                continue;
            }
            let diff = sections[i].1.sub(&sections[j].1);
            if *diff.coords().last().unwrap() != 0 {
                continue;
            }
            let beta = RootVector::new(diff.coords()[..d.rank].to_vec());
            if !rs.contains(&beta) {
                continue;
            }
            let t = d.get(&beta)?;
            leq[i][j] = !t.is_one_zero();
            strict[i][j] = t.is_zero_one();
        }
    }
    for k in 0..m {
        for i in 0..m {
            for j in 0..m {
                leq[i][j] = leq[i][j] || (leq[i][k] && leq[k][j]);
            }
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            if !leq[i][j] && !leq[j][i] {
                return Err(ModuliError::NotTotallyOrdered(format!(
                    "{} and {} are incomparable",
                    sections[i].1, sections[j].1
                )));
            }
            if leq[i][j] && leq[j][i] && (strict[i][j] || strict[j][i]) {
                return Err(ModuliError::NotTotallyOrdered(format!(
                    "{} and {} compare strictly both ways",
                    sections[i].1, sections[j].1
                )));
            }
        }
    }
    // equivalence classes of mutual comparability, sorted left to right
    let mut class_of = vec![usize::MAX; m];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..m {
        if class_of[i] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let members: Vec<usize> = (0..m).filter(|&j| leq[i][j] && leq[j][i]).collect();
        for &j in &members {
            class_of[j] = id;
        }
        classes.push(members);
    }
    classes.sort_by(|a, b| {
        if a[0] == b[0] {
            std::cmp::Ordering::Equal
        } else if leq[a[0]][b[0]] {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    let parts: Vec<Vec<i32>> =
        classes.iter().map(|c| c.iter().map(|&i| sections[i].0).collect()).collect();
    CombinatorialType::from_parts(parts)
}

/// Partition of {u_{n+1}, a_1^+-, ..., a_n^+-} induced by B_n-data.
pub fn classify_bn_data(d: &RnData) -> Result<CombinatorialType, ModuliError> {
    if d.family != Family::B {
        return Err(ModuliError::BadFamily(d.family));
    }
    classify_data(d)
}

/// Partition of {a_1^+-, ..., a_n^+-} induced by C_n-data; chains may have
/// even length.
pub fn classify_cn_data(d: &RnData) -> Result<CombinatorialType, ModuliError> {
    if d.family != Family::C {
        return Err(ModuliError::BadFamily(d.family));
    }
    classify_data(d)
}

/// Signed-subset decomposition of a cone's rays: the nested chain smallest
/// set first, plus the half-sum subsets (full support), checked against the
/// fan of the family.
fn cone_chain(
    family: Family,
    n: usize,
    cone: &Cone,
) -> Result<(Vec<SignedSubset>, Vec<SignedSubset>), ModuliError> {
    let fan = weyl_chamber_fan(family, n)?;
    for r in cone.rays() {
        if !fan.rays.contains(r) {
            return Err(ModuliError::ConeNotInFan(r.to_string()));
        }
    }
    let mut ints = Vec::new();
    let mut halves = Vec::new();
    for r in cone.rays() {
        let (b, half) = SignedSubset::from_ray(r)?;
        if half {
            halves.push(b);
        } else {
            ints.push(b);
        }
    }
    ints.sort_by_key(|b| b.len());
    for w in ints.windows(2) {
        if !(w[0].is_subset_of(&w[1]) && w[0].len() < w[1].len()) {
            return Err(ModuliError::ConeNotInFan(format!("{} | {}", w[0], w[1])));
        }
    }
    match halves.as_slice() {
        [] => {}
        [h] => {
            if let Some(top) = ints.last() {
                if !top.is_subset_of(h) {
                    return Err(ModuliError::ConeNotInFan(format!("{top} | {h}")));
                }
            }
        }
        [h1, h2] => {
            if family != Family::D {
                return Err(ModuliError::ConeNotInFan(format!("{h1}, {h2}")));
            }
            let differ = h1
                .elems()
                .iter()
                .filter(|x| !h2.contains(**x))
                .count();
            if differ != 1 {
                return Err(ModuliError::ConeNotInFan(format!("{h1}, {h2}")));
            }
            let common =
                SignedSubset::new(h1.elems().iter().copied().filter(|&x| h2.contains(x)).collect())?;
            if let Some(top) = ints.last() {
                if !top.is_subset_of(&common) {
                    return Err(ModuliError::ConeNotInFan(format!("{top} | {common}")));
                }
            }
        }
        _ => return Err(ModuliError::ConeNotInFan("three half-sum rays".into())),
    }
    Ok((ints, halves))
}

fn parts_from_chain(
    family: Family,
    n: usize,
    chain: &[SignedSubset],
) -> Result<CombinatorialType, ModuliError> {
    // chain comes smallest set first; outermost part is the smallest set
    let mut left: Vec<Vec<i32>> = Vec::new();
    let mut prev: Vec<i32> = Vec::new();
    for b in chain {
        let fresh: Vec<i32> =
            b.elems().iter().copied().filter(|x| !prev.contains(x)).collect();
        left.push(fresh);
        prev = b.elems().to_vec();
    }
    let used: BTreeSet<i32> = prev.iter().map(|x| x.abs()).collect();
    let mut middle: Vec<i32> = Vec::new();
    if family == Family::B {
        middle.push(0);
    }
    for i in 1..=n as i32 {
        if !used.contains(&i) {
            middle.push(i);
            middle.push(-i);
        }
    }
    let mut parts = left.clone();
    if !middle.is_empty() {
        parts.push(middle);
    }
    for p in left.iter().rev() {
        parts.push(p.iter().map(|&l| -l).collect());
    }
    CombinatorialType::from_parts(parts)
}

/// Combinatorial type of the fiber over the torus orbit of a cone of the
/// Weyl fan of the family.
pub fn orbit_type(family: Family, n: usize, cone: &Cone) -> Result<CombinatorialType, ModuliError> {
    data_family_ok(family)?;
    let (ints, halves) = cone_chain(family, n, cone)?;
    if halves.len() == 2 {
        // two half-sum rays differing in one coordinate sign: the fiber is
        // two-dimensional, a central P1xP1 with a chain of P1 on both sides
        let side = ints.len() + 1;
        let mut comps = vec!["P1".to_string(); side];
        comps.push("P1xP1".to_string());
        comps.extend(vec!["P1".to_string(); side]);
        return Ok(CombinatorialType::two_dim(comps));
    }
    let mut chain = ints;
    let nonreduced = !halves.is_empty();
    chain.extend(halves);
    let t = parts_from_chain(family, n, &chain)?;
    Ok(t.with_nonreduced(family == Family::C && nonreduced))
}

/// One homogeneous relation of the universal curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CurveRelation {
    /// t_b z_{a2} z_{-a1} = t_{-b} z_{-a2} z_{a1} with b = a1 - a2 a
    /// positive root of R_n.
    Pair { beta: RootVector, alpha1: RootVector, alpha2: RootVector },
    /// z_{a_i^-} z_{a_i^+} z_{-2u_{n+1}} = z_{-a_i^-} z_{-a_i^+} z_{2u_{n+1}}
    /// (family C only, no data coefficient).
    Central { index: usize },
}

impl std::fmt::Display for CurveRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CurveRelation::Pair { beta, alpha1, alpha2 } => write!(
                f,
                "t({beta}) z({alpha2}) z({}) = t({}) z({}) z({alpha1})",
                alpha1.neg(),
                beta.neg(),
                alpha2.neg()
            ),
            CurveRelation::Central { index } => {
                write!(
                    f,
                    "z(a{index}-) z(a{index}+) z(-2u) = z(-a{index}-) z(-a{index}+) z(2u)"
                )
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveEquationSystem {
    pub family: Family,
    pub rank: usize,
    /// Positive representatives of the new opposite-root pairs, one
    /// projective coordinate pair each.
    pub coordinates: Vec<RootVector>,
    pub relations: Vec<CurveRelation>,
}

/// The new positive roots of R_{n+1} over R_n, in n+1 ambient coordinates.
fn new_roots(family: Family, n: usize) -> Vec<RootVector> {
    let u_top = RootVector::u(n + 1, n + 1);
    let mut out = Vec::new();
    match family {
        Family::B => out.push(u_top.clone()),
        Family::C => out.push(u_top.add(&u_top)),
        _ => {}
    }
    for i in 1..=n {
        out.push(u_top.add(&RootVector::u(i, n + 1)));
        out.push(u_top.sub(&RootVector::u(i, n + 1)));
    }
    out
}

/// Equations of X(R_{n+1}) inside the product of projective lines over
/// X(R_n), parametrised by the universal R_n-data.
pub fn universal_curve_equations(
    family: Family,
    n: usize,
) -> Result<CurveEquationSystem, ModuliError> {
    data_family_ok(family)?;
    let rs = build_root_system(family, n)?;
    let coords = new_roots(family, n);
    let mut relations = Vec::new();
    if family == Family::C {
        for i in 1..=n {
            relations.push(CurveRelation::Central { index: i });
        }
    }
    for i in 0..coords.len() {
        for j in i + 1..coords.len() {
            let diff = coords[i].sub(&coords[j]);
            if *diff.coords().last().unwrap() != 0 {
                continue;
            }
            let beta = RootVector::new(diff.coords()[..n].to_vec());
            if !rs.contains(&beta) {
                continue;
            }
            let (beta, a1, a2) = if beta.is_positive() {
                (beta, coords[i].clone(), coords[j].clone())
            } else {
                (beta.neg(), coords[j].clone(), coords[i].clone())
            };
            relations.push(CurveRelation::Pair { beta, alpha1: a1, alpha2: a2 });
        }
    }
    Ok(CurveEquationSystem { family, rank: n, coordinates: coords, relations })
}

impl CurveEquationSystem {
    /// For family C: the subsystem cutting out the contracted universal
    /// C_n-curve (the relations without the central coordinate).
    pub fn contracted_subsystem(&self) -> CurveEquationSystem {
        CurveEquationSystem {
            family: self.family,
            rank: self.rank,
            coordinates: self
                .coordinates
                .iter()
                .filter(|r| r.coords()[..self.rank].iter().any(|&c| c != 0))
                .cloned()
                .collect(),
            relations: self
                .relations
                .iter()
                .filter(|r| matches!(r, CurveRelation::Pair { .. }))
                .cloned()
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CoordinateProfile {
    pub root: RootVector,
    pub at_zero_one: u64,
    pub at_one_zero: u64,
    pub elsewhere: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiberEnumeration {
    pub q: i64,
    pub count: u64,
    pub profile: Vec<CoordinateProfile>,
}

/// Points of a reduced chain of `len` projective lines over F_q.
pub fn expected_chain_points(len: usize, q: i64) -> u64 {
    (len as u64) * (q as u64 + 1) - (len as u64 - 1)
}

/// Brute-force count of the F_q points of the fiber of X(R_{n+1}) over the
/// point of X(R_n) given by the data.
pub fn enumerate_fiber_points(d: &RnData, q: i64) -> Result<FiberEnumeration, ModuliError> {
    if !is_prime(q) || q > 13 {
        return Err(ModuliError::BadField(q));
    }
    if d.rank > 2 {
        return Err(ModuliError::TooLarge(format!("rank {} fiber enumeration", d.rank)));
    }
    let mut data = d.clone();
    for r in d.positive_roots() {
        let p = d.get(&r)?.in_field(q)?;
        data.set(&r, p);
    }
    let system = universal_curve_equations(d.family, d.rank)?;
    let coords = &system.coordinates;
    let k = coords.len();
    let line: Vec<(i64, i64)> =
        (0..q).map(|y| (1i64, y)).chain(std::iter::once((0i64, 1i64))).collect();
    let idx_of = |r: &RootVector| coords.iter().position(|c| c == r).unwrap();
    let u_top2 = RootVector::u(d.rank + 1, d.rank + 1);
    let central_idx = match d.family {
        Family::B => Some(idx_of(&u_top2)),
        Family::C => Some(idx_of(&u_top2.add(&u_top2))),
        _ => None,
    };
    let _ = central_idx;
    let mut count = 0u64;
    let mut profile: Vec<CoordinateProfile> = coords
        .iter()
        .map(|r| CoordinateProfile {
            root: r.clone(),
            at_zero_one: 0,
            at_one_zero: 0,
            elsewhere: 0,
        })
        .collect();
    let mut point = vec![0usize; k];
    loop {
        let z: Vec<(i64, i64)> = point.iter().map(|&i| line[i]).collect();
        let mut ok = true;
        for rel in &system.relations {
            let (lhs, rhs) = match rel {
                CurveRelation::Pair { beta, alpha1, alpha2 } => {
                    let t = data.get(beta)?;
                    let z1 = z[idx_of(alpha1)];
                    let z2 = z[idx_of(alpha2)];
                    (t.x() * z2.0 % q * z1.1 % q, t.y() * z2.1 % q * z1.0 % q)
                }
                CurveRelation::Central { index } => {
                    let n = d.rank;
                    let up = RootVector::u(n + 1, n + 1).add(&RootVector::u(*index, n + 1));
                    let dn = RootVector::u(n + 1, n + 1).sub(&RootVector::u(*index, n + 1));
                    let c = z[idx_of(&u_top2.add(&u_top2))];
                    let zp = z[idx_of(&up)];
                    let zm = z[idx_of(&dn)];
                    (zm.0 * zp.0 % q * c.1 % q, zm.1 * zp.1 % q * c.0 % q)
                }
            };
            if (lhs - rhs) % q != 0 {
                ok = false;
                break;
            }
        }
        if ok {
            count += 1;
            for (slot, &(x, y)) in profile.iter_mut().zip(z.iter()) {
                if x == 0 {
                    slot.at_zero_one += 1;
                } else if y == 0 {
                    slot.at_one_zero += 1;
                } else {
                    slot.elsewhere += 1;
                }
            }
        }
        // odometer over the k-fold product of the projective line
        let mut pos = 0;
        loop {
            if pos == k {
                return Ok(FiberEnumeration { q, count, profile });
            }
            point[pos] += 1;
            if point[pos] < line.len() {
                break;
            }
            point[pos] = 0;
            pos += 1;
        }
    }
}

/// Chain length of the fiber of X(R_{n+1}) predicted by the data
/// classification (for C the central component is counted even when the
/// C_n-chain has even length).
pub fn predicted_chain_length(d: &RnData) -> Result<usize, ModuliError> {
    match d.family {
        Family::B => Ok(classify_bn_data(d)?.chain_length()),
        Family::C => {
            let l = classify_cn_data(d)?.chain_length();
            Ok(if l % 2 == 0 { l + 1 } else { l })
        }
        f => Err(ModuliError::BadFamily(f)),
    }
}

/// The involution J on B_n-data: negate the second coordinate of the pairs
/// for {+-u_i}, leave the other pairs unchanged.
pub fn apply_j(d: &RnData) -> Result<RnData, ModuliError> {
    if d.family != Family::B {
        return Err(ModuliError::BadFamily(d.family));
    }
    let mut out = d.clone();
    for r in d.positive_roots() {
        let nz = r.coords().iter().filter(|&&c| c != 0).count();
        if nz == 1 {
            out.set(&r, d.get(&r)?.negated_y());
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct DynkinEdge {
    pub from: usize,
    pub to: usize,
    pub multiplicity: u8,
    /// For a double edge: true when the arrow points from `from` to `to`.
    pub arrow_forward: bool,
}

/// Fiber over a torus fixed point pictured as a Dynkin diagram: one vertex
/// per component-with-section.
#[derive(Debug, Clone, Serialize)]
pub struct DynkinDiagram {
    pub family: Family,
    pub vertices: Vec<String>,
    pub edges: Vec<DynkinEdge>,
}

pub fn dynkin_fiber(family: Family, n: usize) -> Result<DynkinDiagram, ModuliError> {
    if n == 0 || (family == Family::D && n < 2) {
        return Err(ModuliError::Parse(format!("rank {n} out of range for {family}")));
    }
    let simple = |from: usize, to: usize| DynkinEdge { from, to, multiplicity: 1, arrow_forward: true };
    let (vertices, edges) = match family {
        Family::A => {
            let v: Vec<String> = (1..=n + 1).map(|i| format!("s{i}")).collect();
            let e = (0..n).map(|i| simple(i, i + 1)).collect();
            (v, e)
        }
        Family::B | Family::C => {
            let mut v = vec![if family == Family::B { "s0".to_string() } else { "S0".to_string() }];
            v.extend((1..=n).map(|i| format!("s{i}+")));
            let mut e = vec![DynkinEdge {
                from: 0,
                to: 1,
                multiplicity: 2,
                arrow_forward: family == Family::B,
            }];
            e.extend((1..n).map(|i| simple(i, i + 1)));
            (v, e)
        }
        Family::D => {
            // fork s1+, s1- into s2+, then the path s2+ -- ... -- sn+
            let mut v = vec!["s1+".to_string(), "s1-".to_string()];
            v.extend((2..=n).map(|i| format!("s{i}+")));
            let mut e = vec![simple(0, 2), simple(1, 2)];
            for i in 2..n {
                e.push(simple(i, i + 1));
            }
            (v, e)
        }
    };
    Ok(DynkinDiagram { family, vertices, edges })
}

impl DynkinDiagram {
    pub fn render(&self) -> String {
        match self.family {
            Family::D => {
                let tail = self.vertices[2..].join(" -- ");
                format!(
                    "{} \\\n      {}\n{} /",
                    self.vertices[0], tail, self.vertices[1]
                )
            }
            _ => {
                let mut s = self.vertices[0].clone();
                for e in &self.edges {
                    let sep = match (e.multiplicity, e.arrow_forward) {
                        (2, true) => " => ",
                        (2, false) => " <= ",
                        _ => " -- ",
                    };
                    s.push_str(sep);
                    s.push_str(&self.vertices[e.to]);
                }
                s
            }
        }
    }
}

/// The root system accessor used by callers that already hold data.
pub fn data_root_system(d: &RnData) -> Result<RootSystem, ModuliError> {
    Ok(build_root_system(d.family, d.rank)?)
}
