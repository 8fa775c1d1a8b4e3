//! Homology of X(B_n): Poincare polynomials by several independent routes,
//! the descent basis l^w, and reduction of square-free chain monomials onto
//! that basis.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::fan::{all_signed_subsets, SignedSubset, WeylFan};
use crate::rootsys::{weyl_elements, Family, RootError, SignedPermutation};

/// Polynomial in t with exact integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return IntPolynomial::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    pub fn scale(&self, s: i64) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// t^n p(1/t) = p(t)?
    pub fn is_palindromic(&self, n: usize) -> bool {
        (0..=n).all(|i| self.coeff(i) == self.coeff(n - i))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first && c > 0 {
                write!(f, "+")?;
            }
            let a = c.abs();
            if c < 0 {
                write!(f, "-")?;
            }
            match i {
                0 => write!(f, "{a}")?,
                1 => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    write!(f, "t")?;
                }
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    write!(f, "t^{i}")?;
                }
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn t_minus_1_pow(k: usize) -> IntPolynomial {
    let mut p = IntPolynomial::new(vec![1]);
    let f = IntPolynomial::new(vec![-1, 1]);
    for _ in 0..k {
        p = p.mul(&f);
    }
    p
}

/// p(t) = sum_m d_m (t-1)^(n-m) from the f-vector of the fan.
pub fn poincare_from_fan(fan: &WeylFan) -> IntPolynomial {
    let n = fan.rank;
    let mut p = IntPolynomial::zero();
    for (m, d) in fan.f_vector().into_iter().enumerate() {
        p = p.add(&t_minus_1_pow(n - m).scale(d as i64));
    }
    p
}

fn factorial_big(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn series_mul(a: &[BigRational], b: &[BigRational], trunc: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); trunc + 1];
    for (i, x) in a.iter().enumerate().take(trunc + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j > trunc {
                break;
            }
            out[i + j] += x * y;
        }
    }
    out
}

/// n! times the coefficient of x^n in e^x (e^{2x}-1)^m.
pub fn d_m_closed_form(n: usize, m: usize) -> i64 {
    assert!(m <= n);
    let trunc = n;
    // e^x and e^{2x}-1 as truncated rational series
    let ex: Vec<BigRational> = (0..=trunc)
        .map(|k| BigRational::new(BigInt::one(), factorial_big(k)))
        .collect();
    let e2m1: Vec<BigRational> = (0..=trunc)
        .map(|k| {
            if k == 0 {
                BigRational::zero()
            } else {
                BigRational::new(BigInt::from(2).pow(k as u32), factorial_big(k))
            }
        })
        .collect();
    let mut acc = ex;
    for _ in 0..m {
        acc = series_mul(&acc, &e2m1, trunc);
    }
    let c = &acc[n] * BigRational::from_integer(factorial_big(n));
    assert!(c.is_integer(), "d_m must be an integer");
    let v = c.to_integer();
    i64::try_from(&v).expect("d_m fits in i64")
}

/// Bivariate series in y (outer index) and t; exact rationals.
type BiSeries = Vec<Vec<BigRational>>;

fn bi_mul(a: &BiSeries, b: &BiSeries, ytrunc: usize) -> BiSeries {
    let mut out: BiSeries = vec![vec![BigRational::zero()]; ytrunc + 1];
    for (i, pa) in a.iter().enumerate().take(ytrunc + 1) {
        for (j, pb) in b.iter().enumerate() {
            if i + j > ytrunc {
                break;
            }
            let target_len = (pa.len() + pb.len()).saturating_sub(1).max(1);
            if out[i + j].len() < target_len {
                out[i + j].resize(target_len, BigRational::zero());
            }
            for (da, ca) in pa.iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                for (db, cb) in pb.iter().enumerate() {
                    out[i + j][da + db] += ca * cb;
                }
            }
        }
    }
    out
}

fn bi_add(a: &BiSeries, b: &BiSeries) -> BiSeries {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let pa = a.get(i).cloned().unwrap_or_default();
            let pb = b.get(i).cloned().unwrap_or_default();
            let len = pa.len().max(pb.len()).max(1);
            (0..len)
                .map(|d| {
                    pa.get(d).cloned().unwrap_or_else(BigRational::zero)
                        + pb.get(d).cloned().unwrap_or_else(BigRational::zero)
                })
                .collect()
        })
        .collect()
}

/// Expansion of e^{y(t-1)} (t-1)/(t - e^{2y(t-1)}); returns n! [y^n] for
/// n = 0..max_n, which must be integer polynomials.
pub fn poincare_series(max_n: usize) -> Vec<IntPolynomial> {
    let nn = max_n;
    let tm1: Vec<BigRational> = vec![
        BigRational::from_integer(BigInt::from(-1)),
        BigRational::from_integer(BigInt::one()),
    ];
    let tm1_pow = |k: usize| -> Vec<BigRational> {
        let mut p = vec![BigRational::one()];
        for _ in 0..k {
            p = series_mul(&p, &tm1, k + 1);
        }
        p
    };
    // e^{y(t-1)} = sum_k (t-1)^k y^k / k!
    let eg: BiSeries = (0..=nn)
        .map(|k| {
            let inv = BigRational::new(BigInt::one(), factorial_big(k));
            tm1_pow(k).into_iter().map(|c| c * &inv).collect()
        })
        .collect();
    // (t-1)/(t - e^{2y(t-1)}) = 1/(1-h), h = sum_{k>=1} 2^k (t-1)^{k-1} y^k / k!
    let h: BiSeries = (0..=nn)
        .map(|k| {
            if k == 0 {
                vec![BigRational::zero()]
            } else {
                let s = BigRational::new(BigInt::from(2).pow(k as u32), factorial_big(k));
                tm1_pow(k - 1).into_iter().map(|c| c * &s).collect()
            }
        })
        .collect();
    let mut inv: BiSeries = vec![vec![BigRational::zero()]; nn + 1];
    inv[0] = vec![BigRational::one()];
    let mut hpow: BiSeries = inv.clone();
    for _ in 1..=nn {
        hpow = bi_mul(&hpow, &h, nn);
        inv = bi_add(&inv, &hpow);
    }
    let total = bi_mul(&eg, &inv, nn);
    total
        .into_iter()
        .enumerate()
        .map(|(n, tpoly)| {
            let fact = BigRational::from_integer(factorial_big(n));
            let coeffs: Vec<i64> = tpoly
                .into_iter()
                .map(|c| {
                    let v = c * &fact;
                    assert!(v.is_integer(), "series coefficient must be integer");
                    i64::try_from(&v.to_integer()).expect("coefficient fits in i64")
                })
                .collect();
            IntPolynomial::new(coeffs)
        })
        .collect()
}

/// Desc(w) = {k : w(k-1) > w(k)} with w(0) = 0, standard integer order.
pub fn descent_set(w: &SignedPermutation) -> Vec<usize> {
    let n = w.rank();
    (1..=n)
        .filter(|&k| {
            let prev = if k == 1 { 0 } else { w.image(k - 1) };
            prev > w.image(k)
        })
        .collect()
}

/// Poincare polynomial as the descent statistic: sum_w t^(n - |Desc(w)|).
pub fn poincare_from_descents(n: usize) -> Result<IntPolynomial, RootError> {
    let mut coeffs = vec![0i64; n + 1];
    for w in weyl_elements(Family::B, n)? {
        coeffs[n - descent_set(&w).len()] += 1;
    }
    Ok(IntPolynomial::new(coeffs))
}

/// Product of l_B over a strictly nested chain, smallest set first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChainMonomial {
    chain: Vec<SignedSubset>,
}

impl ChainMonomial {
    pub fn new(mut chain: Vec<SignedSubset>) -> Option<Self> {
        chain.sort_by_key(|b| b.len());
        for pair in chain.windows(2) {
            if !(pair[0].is_subset_of(&pair[1]) && pair[0].len() < pair[1].len()) {
                return None;
            }
        }
        Some(ChainMonomial { chain })
    }

    pub fn one() -> Self {
        ChainMonomial { chain: Vec::new() }
    }

    /// Chain smallest set first; entry i is B^(m-i) in top-down indexing.
    pub fn chain(&self) -> &[SignedSubset] {
        &self.chain
    }

    pub fn degree(&self) -> usize {
        self.chain.len()
    }
}

impl fmt::Display for ChainMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.chain.is_empty() {
            return write!(f, "1");
        }
        for (i, b) in self.chain.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "l{b}")?;
        }
        Ok(())
    }
}

/// The partition P_0, ..., P_m attached to a chain monomial over rank n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetricPartition {
    /// parts[k] = P_k, sorted ascending; parts[0] contains 0 and unused ±i.
    pub parts: Vec<Vec<i32>>,
}

/// Partition of a chain monomial and the statistic
/// d(y) = #{k >= 1 : min P_(k-1) > max P_k}.
pub fn partition_and_d(y: &ChainMonomial, n: usize) -> (SymmetricPartition, usize) {
    let m = y.chain.len();
    let mut parts: Vec<Vec<i32>> = Vec::with_capacity(m + 1);
    // P_0: 0 and the signed pairs of unused indices
    let mut p0 = vec![0i32];
    let used: std::collections::HashSet<i32> = y
        .chain
        .last()
        .map(|b| b.support().into_iter().collect())
        .unwrap_or_default();
    for i in 1..=n as i32 {
        if !used.contains(&i) {
            p0.push(i);
            p0.push(-i);
        }
    }
    p0.sort_unstable();
    parts.push(p0);
    // P_k = B^(k) \ B^(k+1): in smallest-first storage chain[m-k] minus chain[m-k-1]
    for k in 1..=m {
        let outer = &y.chain[m - k];
        let inner: &[i32] = if k == m { &[] } else { y.chain[m - k - 1].elems() };
        let part: Vec<i32> = outer
            .elems()
            .iter()
            .copied()
            .filter(|x| !inner.contains(x))
            .collect();
        parts.push(part);
    }
    let d = (1..=m)
        .filter(|&k| {
            let lo = parts[k - 1].iter().min().copied().unwrap();
            let hi = parts[k].iter().max().copied().unwrap();
            lo > hi
        })
        .count();
    (SymmetricPartition { parts }, d)
}

/// l^w = prod over k not in Desc(w) of l_{{w(k),...,w(n)}}.
pub fn basis_monomial(w: &SignedPermutation) -> ChainMonomial {
    let n = w.rank();
    let desc = descent_set(w);
    let chain: Vec<SignedSubset> = (1..=n)
        .rev()
        .filter(|k| !desc.contains(k))
        .map(|k| SignedSubset::new((k..=n).map(|i| w.image(i)).collect()).unwrap())
        .collect();
    ChainMonomial { chain }
}

/// Integer combination of chain monomials.
pub type Combination = BTreeMap<ChainMonomial, i64>;

fn add_term(c: &mut Combination, m: ChainMonomial, coeff: i64) {
    let e = c.entry(m).or_insert(0);
    *e += coeff;
    if *e == 0 {
        c.retain(|_, v| *v != 0);
    }
}

/// Combination supported on basis monomials only (every term has d = 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyClass {
    pub terms: Combination,
}

impl HomologyClass {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if *c >= 0 && !first {
                write!(f, " + ")?;
            } else if *c < 0 {
                write!(f, "{}", if first { "-" } else { " - " })?;
            }
            let a = c.abs();
            if a != 1 {
                write!(f, "{a}*")?;
            }
            write!(f, "{m}")?;
            first = false;
        }
        Ok(())
    }
}

/// Memoizing reducer of chain monomials onto the l^w basis.
pub struct Reducer {
    n: usize,
    subsets: Vec<SignedSubset>,
    memo: HashMap<ChainMonomial, Combination>,
}

impl Reducer {
    pub fn new(n: usize) -> Self {
        Reducer { n, subsets: all_signed_subsets(n), memo: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn reduce_monomial(&mut self, y: &ChainMonomial) -> Combination {
        if let Some(r) = self.memo.get(y) {
            return r.clone();
        }
        let (parts, d) = partition_and_d(y, self.n);
        let result = if d == 0 {
            Combination::from([(y.clone(), 1i64)])
        } else {
            let m = y.chain.len();
            let k = (1..=m)
                .find(|&k| {
                    parts.parts[k - 1].iter().min().unwrap()
                        > parts.parts[k].iter().max().unwrap()
                })
                .unwrap();
            let replacement = self.rewrite(y, &parts, k);
            let mut out = Combination::new();
            for (term, coeff) in replacement {
                for (b, c) in self.reduce_monomial(&term) {
                    add_term(&mut out, b, c * coeff);
                }
            }
            out
        };
        self.memo.insert(y.clone(), result.clone());
        result
    }

    /// Express y through the relation picked for index k; y itself does not
    /// appear in the output.
    fn rewrite(&self, y: &ChainMonomial, parts: &SymmetricPartition, k: usize) -> Combination {
        let m = y.chain.len();
        let j = *parts.parts[k].iter().max().unwrap();
        let mut out = Combination::new();
        if k >= 2 {
            let i = *parts.parts[k - 1].iter().min().unwrap();
            // relation sums over B^(k+1) < B < B^(k-1); y is the term
            // B = B^(k) of the negative sum
            let upper = &y.chain[m - (k - 1)];
            let lower: Option<&SignedSubset> =
                if k == m { None } else { Some(&y.chain[m - k - 1]) };
            let context: Vec<SignedSubset> = y
                .chain
                .iter()
                .enumerate()
                .filter(|(idx, _)| *idx != m - k)
                .map(|(_, b)| b.clone())
                .collect();
            for b in self.between(lower, upper) {
                let pos = b.contains(i) && !b.contains(j);
                let neg = b.contains(j) && !b.contains(i);
                if !(pos || neg) || b == y.chain[m - k] {
                    continue;
                }
                let mut chain = context.clone();
                chain.push(b);
                let mono = ChainMonomial::new(chain).expect("inserted set nests");
                add_term(&mut out, mono, if pos { 1 } else { -1 });
            }
        } else {
            // k = 1: relation sum_{-j in B} l_B - sum_{j in B} l_B over
            // B strictly containing B^(2); y is the term B = B^(1)
            let context: Vec<SignedSubset> = y.chain[..m - 1].to_vec();
            let base: Option<&SignedSubset> =
                if m >= 2 { Some(&y.chain[m - 2]) } else { None };
            for b in self.supersets(base) {
                let pos = b.contains(-j);
                let neg = b.contains(j);
                if !(pos || neg) || b == y.chain[m - 1] {
                    continue;
                }
                let mut chain = context.clone();
                chain.push(b);
                let mono = ChainMonomial::new(chain).expect("inserted set nests");
                add_term(&mut out, mono, if pos { 1 } else { -1 });
            }
        }
        out
    }

    /// All B with lower < B < upper (strict, lower may be empty).
    fn between(&self, lower: Option<&SignedSubset>, upper: &SignedSubset) -> Vec<SignedSubset> {
        self.subsets
            .iter()
            .filter(|b| {
                b.len() < upper.len()
                    && b.is_subset_of(upper)
                    && lower.map_or(true, |l| l.len() < b.len() && l.is_subset_of(b))
            })
            .cloned()
            .collect()
    }

    /// All B strictly containing base (all of them if base is None).
    fn supersets(&self, base: Option<&SignedSubset>) -> Vec<SignedSubset> {
        self.subsets
            .iter()
            .filter(|b| {
                base.map_or(true, |l| l.len() < b.len() && l.is_subset_of(b))
            })
            .cloned()
            .collect()
    }

    pub fn reduce(&mut self, x: &Combination) -> HomologyClass {
        let mut out = Combination::new();
        for (mono, coeff) in x {
            for (b, c) in self.reduce_monomial(mono) {
                add_term(&mut out, b, c * coeff);
            }
        }
        HomologyClass { terms: out }
    }
}

/// Reduce a combination of chain monomials to the l^w basis.
pub fn reduce_to_basis(x: &Combination, n: usize) -> HomologyClass {
    Reducer::new(n).reduce(x)
}

/// Product of distinct divisor classes: zero if any two are incomparable,
/// otherwise the reduced chain monomial.
pub fn multiply_divisor_classes(bs: &[SignedSubset], n: usize) -> HomologyClass {
    for (i, a) in bs.iter().enumerate() {
        for b in &bs[i + 1..] {
            if !a.comparable(b) {
                return HomologyClass { terms: Combination::new() };
            }
        }
    }
    let mono = ChainMonomial::new(bs.to_vec()).expect("pairwise comparable distinct sets nest");
    reduce_to_basis(&Combination::from([(mono, 1)]), n)
}

/// Generators of the ideal R_1 + R_2 and of the relation module U.
pub struct RelationGenerators {
    /// r_i = sum_{i in B} l_B - sum_{-i in B} l_B, one per i = 1..n.
    pub linear: Vec<Combination>,
    /// Incomparable pairs (B, B') with r_{B,B'} = l_B l_B'.
    pub quadratic_pairs: Vec<(SignedSubset, SignedSubset)>,
    /// Module generators r_{i,j}((B^(h))_h, k).
    pub module_rij: Vec<Combination>,
    /// Module generators r_i((B^(h))_h).
    pub module_ri: Vec<Combination>,
}

/// All chain monomials over rank n, the empty one included.
pub fn all_chain_monomials(n: usize) -> Vec<ChainMonomial> {
    let subsets = all_signed_subsets(n);
    let mut out = vec![ChainMonomial::one()];
    let mut stack: Vec<Vec<SignedSubset>> =
        subsets.iter().map(|b| vec![b.clone()]).collect();
    while let Some(chain) = stack.pop() {
        for b in &subsets {
            let last = chain.last().unwrap();
            if last.len() < b.len() && last.is_subset_of(b) {
                let mut next = chain.clone();
                next.push(b.clone());
                stack.push(next);
            }
        }
        out.push(ChainMonomial { chain });
    }
    out.sort();
    out
}

pub fn relation_generators(n: usize) -> RelationGenerators {
    let subsets = all_signed_subsets(n);
    let single = |b: &SignedSubset| ChainMonomial { chain: vec![b.clone()] };
    let linear: Vec<Combination> = (1..=n as i32)
        .map(|i| {
            let mut c = Combination::new();
            for b in &subsets {
                if b.contains(i) {
                    add_term(&mut c, single(b), 1);
                } else if b.contains(-i) {
                    add_term(&mut c, single(b), -1);
                }
            }
            c
        })
        .collect();
    let mut quadratic_pairs = Vec::new();
    for (i, a) in subsets.iter().enumerate() {
        for b in &subsets[i + 1..] {
            if !a.comparable(b) {
                quadratic_pairs.push((a.clone(), b.clone()));
            }
        }
    }
    let chains = all_chain_monomials(n);
    let mut module_rij = Vec::new();
    let mut module_ri = Vec::new();
    for y in &chains {
        let m = y.chain.len();
        // r_i((B^(h))_h) for i with neither i nor -i in B^(1)
        let top = y.chain.last();
        for i in 1..=n as i32 {
            if let Some(t) = top {
                if t.contains(i) || t.contains(-i) {
                    continue;
                }
            }
            let mut c = Combination::new();
            for b in &subsets {
                let nested = top.map_or(true, |t| t.len() < b.len() && t.is_subset_of(b));
                if !nested {
                    continue;
                }
                let coeff = if b.contains(i) {
                    1
                } else if b.contains(-i) {
                    -1
                } else {
                    continue;
                };
                let mut chain = y.chain.clone();
                chain.push(b.clone());
                add_term(&mut c, ChainMonomial { chain }, coeff);
            }
            if !c.is_empty() {
                module_ri.push(c);
            }
        }
        // r_{i,j}((B^(h))_h, k) for k = 1..m, i != j in B^(k) \ B^(k+1)
        for k in 1..=m {
            let upper = &y.chain[m - k];
            let lower: Option<&SignedSubset> =
                if k == m { None } else { Some(&y.chain[m - k - 1]) };
            let fresh: Vec<i32> = upper
                .elems()
                .iter()
                .copied()
                .filter(|x| lower.map_or(true, |l| !l.contains(*x)))
                .collect();
            for &i in &fresh {
                for &j in &fresh {
                    if i == j {
                        continue;
                    }
                    let mut c = Combination::new();
                    for b in &subsets {
                        let between = b.len() < upper.len()
                            && b.is_subset_of(upper)
                            && lower.map_or(true, |l| {
                                l.len() < b.len() && l.is_subset_of(b)
                            });
                        if !between {
                            continue;
                        }
                        let coeff = if b.contains(i) && !b.contains(j) {
                            1
                        } else if b.contains(j) && !b.contains(i) {
                            -1
                        } else {
                            continue;
                        };
                        let mut chain = y.chain.clone();
                        chain.push(b.clone());
                        add_term(
                            &mut c,
                            ChainMonomial::new(chain).expect("between set nests"),
                            coeff,
                        );
                    }
                    if !c.is_empty() {
                        module_rij.push(c);
                    }
                }
            }
        }
    }
    RelationGenerators { linear, quadratic_pairs, module_rij, module_ri }
}

/// Betti numbers beta_0 .. beta_{2n}; odd entries zero. For B computed from
/// descents, for C and D from the fan f-vector.
pub fn betti_numbers(family: Family, n: usize) -> Result<Vec<i64>, crate::fan::FanError> {
    let p = match family {
        Family::B => poincare_from_descents(n)?,
        Family::C | Family::D => {
            let fan = crate::fan::weyl_chamber_fan(family, n)?;
            poincare_from_fan(&fan)
        }
        Family::A => {
            return Err(crate::fan::FanError::Root(RootError::RankOutOfRange {
                family,
                rank: n,
            }))
        }
    };
    let mut out = vec![0i64; 2 * n + 1];
    for i in 0..=n {
        out[2 * i] = p.coeff(i);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::chain_of_permutation;
    use crate::fan::weyl_chamber_fan;

    fn ss(e: &[i32]) -> SignedSubset {
        SignedSubset::new(e.to_vec()).unwrap()
    }

    fn mono(sets: &[&[i32]]) -> ChainMonomial {
        ChainMonomial::new(sets.iter().map(|s| ss(s)).collect()).unwrap()
    }

    #[test]
    fn listed_polynomials_from_fan() {
        let expected: [&[i64]; 4] = [
            &[1, 1],
            &[1, 6, 1],
            &[1, 23, 23, 1],
            &[1, 76, 230, 76, 1],
        ];
        for (n, coeffs) in expected.iter().enumerate() {
            let fan = weyl_chamber_fan(Family::B, n + 1).unwrap();
            assert_eq!(poincare_from_fan(&fan).coeffs(), *coeffs);
        }
        assert_eq!(
            poincare_from_fan(&weyl_chamber_fan(Family::B, 3).unwrap()).to_string(),
            "t^3+23t^2+23t+1"
        );
    }

    #[test]
    fn closed_form_d_m() {
        assert_eq!(d_m_closed_form(5, 0), 1);
        assert_eq!(d_m_closed_form(2, 1), 8);
        assert_eq!(d_m_closed_form(3, 3), 48);
        for n in 1..=4 {
            let fan = weyl_chamber_fan(Family::B, n).unwrap();
            let fv = fan.f_vector();
            for m in 0..=n {
                assert_eq!(d_m_closed_form(n, m), fv[m] as i64, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn generating_function() {
        let ps = poincare_series(6);
        assert_eq!(ps[0].coeffs(), &[1]);
        assert_eq!(ps[1].coeffs(), &[1, 1]);
        assert_eq!(ps[5].coeffs(), &[1, 237, 1682, 1682, 237, 1]);
        assert_eq!(ps[6].coeffs(), &[1, 722, 10543, 23548, 10543, 722, 1]);
        for (n, p) in ps.iter().enumerate() {
            assert!(p.is_palindromic(n));
            let maximal: i64 =
                (1..=n as i64).product::<i64>() * 2i64.pow(n as u32);
            assert_eq!(p.eval(1), maximal);
        }
    }

    #[test]
    fn descent_route_agrees() {
        let ps = poincare_series(5);
        for n in 1..=5 {
            assert_eq!(poincare_from_descents(n).unwrap(), ps[n]);
        }
    }

    #[test]
    fn descent_examples() {
        assert!(descent_set(&SignedPermutation::identity(4)).is_empty());
        let w = SignedPermutation::new(vec![2, -1, 3]).unwrap();
        assert_eq!(descent_set(&w), vec![2]);
        let count = weyl_elements(Family::B, 2)
            .unwrap()
            .iter()
            .filter(|w| descent_set(w).len() == 1)
            .count();
        assert_eq!(count, 6);
    }

    #[test]
    fn basis_monomials() {
        let w = SignedPermutation::new(vec![1, 2]).unwrap();
        assert_eq!(basis_monomial(&w), mono(&[&[2], &[1, 2]]));
        let w = SignedPermutation::new(vec![-2, -1]).unwrap();
        assert_eq!(basis_monomial(&w), mono(&[&[-1]]));
        // all descents: empty monomial
        let w = SignedPermutation::new(vec![-1, -2]).unwrap();
        assert_eq!(basis_monomial(&w), ChainMonomial::one());

        for n in 1..=4 {
            let els = weyl_elements(Family::B, n).unwrap();
            let monos: std::collections::HashSet<ChainMonomial> =
                els.iter().map(basis_monomial).collect();
            assert_eq!(monos.len(), els.len());
            // degree-m count equals beta_{2(n-m)}
            let betti = betti_numbers(Family::B, n).unwrap();
            for m in 0..=n {
                let count =
                    monos.iter().filter(|y| y.degree() == m).count() as i64;
                assert_eq!(count, betti[2 * (n - m)], "n={n} m={m}");
            }
            for w in &els {
                assert_eq!(basis_monomial(w).degree(), n - descent_set(w).len());
                let (_, d) = partition_and_d(&basis_monomial(w), n);
                assert_eq!(d, 0);
            }
        }
    }

    #[test]
    fn partition_examples() {
        let y = mono(&[&[2], &[-1, 2]]);
        let (p, d) = partition_and_d(&y, 2);
        assert_eq!(p.parts, vec![vec![0], vec![-1], vec![2]]);
        assert_eq!(d, 1);
        let y = mono(&[&[2], &[1, 2]]);
        let (_, d) = partition_and_d(&y, 2);
        assert_eq!(d, 0);
        let (p, d) = partition_and_d(&ChainMonomial::one(), 2);
        assert_eq!(d, 0);
        assert_eq!(p.parts, vec![vec![-2, -1, 0, 1, 2]]);
    }

    #[test]
    fn reduce_example() {
        let y = mono(&[&[2], &[-1, 2]]);
        let r = reduce_to_basis(&Combination::from([(y, 1)]), 2);
        assert_eq!(r.terms, Combination::from([(mono(&[&[2], &[1, 2]]), 1)]));
    }

    #[test]
    fn reduce_fixes_basis_and_is_idempotent() {
        for n in 1..=3 {
            let mut red = Reducer::new(n);
            for w in weyl_elements(Family::B, n).unwrap() {
                let y = basis_monomial(&w);
                let r = red.reduce_monomial(&y);
                assert_eq!(r, Combination::from([(y, 1)]));
            }
            for y in all_chain_monomials(n) {
                let once = red.reduce(&Combination::from([(y, 1)]));
                let twice = red.reduce(&once.terms);
                assert_eq!(once.terms, twice.terms);
                for m in once.terms.keys() {
                    assert_eq!(partition_and_d(m, n).1, 0);
                }
            }
        }
    }

    #[test]
    fn relations_reduce_to_zero() {
        for n in 1..=3 {
            let gens = relation_generators(n);
            assert_eq!(gens.linear.len(), n);
            let mut red = Reducer::new(n);
            for r in gens.module_rij.iter().chain(&gens.module_ri) {
                assert!(red.reduce(r).is_zero(), "n={n}: {r:?}");
            }
            // ring-level r_i coincide with module r_i at empty context
            for r in &gens.linear {
                assert!(red.reduce(r).is_zero());
            }
        }
    }

    #[test]
    fn n1_presentation() {
        let gens = relation_generators(1);
        assert_eq!(gens.linear.len(), 1);
        let r1 = &gens.linear[0];
        assert_eq!(r1.len(), 2);
        assert_eq!(r1.get(&mono(&[&[1]])), Some(&1));
        assert_eq!(r1.get(&mono(&[&[-1]])), Some(&-1));
        assert_eq!(gens.quadratic_pairs, vec![(ss(&[-1]), ss(&[1]))]);
    }

    #[test]
    fn incomparable_pairs_everywhere() {
        let gens = relation_generators(2);
        for (a, b) in &gens.quadratic_pairs {
            assert!(!a.comparable(b));
        }
        // {1},{2} incomparable; {2},{-1,2} comparable
        assert!(gens.quadratic_pairs.contains(&(ss(&[1]), ss(&[2]))));
        assert!(!gens
            .quadratic_pairs
            .iter()
            .any(|(a, b)| (a, b) == (&ss(&[2]), &ss(&[-1, 2]))));
    }

    #[test]
    fn divisor_products() {
        let zero = multiply_divisor_classes(&[ss(&[1]), ss(&[2])], 2);
        assert!(zero.is_zero());
        let r = multiply_divisor_classes(&[ss(&[2]), ss(&[2, -1])], 2);
        assert_eq!(r.terms, Combination::from([(mono(&[&[2], &[1, 2]]), 1)]));
        let r = multiply_divisor_classes(&[ss(&[-1])], 2);
        assert_eq!(r.terms, Combination::from([(mono(&[&[-1]]), 1)]));
    }

    #[test]
    fn chain_monomial_counts() {
        assert_eq!(all_chain_monomials(2).len(), 1 + 8 + 8);
        assert_eq!(all_chain_monomials(3).len(), 1 + 26 + 72 + 48);
    }

    #[test]
    fn maximal_chain_roundtrip() {
        use crate::fan::permutation_from_chain;
        for w in weyl_elements(Family::B, 3).unwrap() {
            let chain = chain_of_permutation(&w);
            let y = ChainMonomial::new(chain.clone()).unwrap();
            let (_, d) = partition_and_d(&y, 3);
            let v = permutation_from_chain(&chain).unwrap();
            assert_eq!(v, w);
            let is_basis_chain = basis_monomial(&w) == y;
            assert_eq!(d == 0, is_basis_chain);
        }
    }

    #[test]
    fn betti_closed_forms() {
        for n in 1..=5 {
            let b = betti_numbers(Family::B, n).unwrap();
            assert_eq!(b[2], 3i64.pow(n as u32) - n as i64 - 1);
            assert_eq!(b[1], 0);
            let chi: i64 = b.iter().sum();
            assert_eq!(chi, 2i64.pow(n as u32) * (1..=n as i64).product::<i64>());
        }
        let d3 = betti_numbers(Family::D, 3).unwrap();
        assert_eq!(d3.iter().sum::<i64>(), 24);
    }
}
