//! One-line models of the classical groups.
//!
//! Type `A_n` is realized as permutations of `{1, .., n+1}`, types `B_n`
//! and `D_n` as signed permutations of `{±1, .., ±n}` (even number of
//! negative entries for `D_n`).
//!
//! Simple reflections are numbered as in [`IrreducibleLabel::coxeter_matrix`].
//! Descent position `i` (0-based for B and D, 1-based for A) belongs to node
//! `i` (B, D) or node `i - 1` (A).

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::ElementError;
use crate::groups::{Family, IrreducibleLabel};
use crate::Statistic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassicalType {
    A,
    B,
    D,
}

impl ClassicalType {
    /// Rank of the group acting on a window of length `len`.
    pub fn rank_for_len(self, len: usize) -> usize {
        match self {
            ClassicalType::A => len.saturating_sub(1),
            _ => len,
        }
    }

    pub fn len_for_rank(self, rank: usize) -> usize {
        match self {
            ClassicalType::A => rank + 1,
            _ => rank,
        }
    }
}

impl fmt::Display for ClassicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassicalType::A => "A",
            ClassicalType::B => "B",
            ClassicalType::D => "D",
        })
    }
}

/// An element of a classical group in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedPermutation {
    window: Vec<i32>,
    kind: ClassicalType,
}

impl SignedPermutation {
    pub fn new(kind: ClassicalType, window: Vec<i32>) -> Result<Self, ElementError> {
        let n = window.len();
        let mut seen = vec![false; n + 1];
        for &v in &window {
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] {
                return Err(ElementError::NotAPermutation(format_window(&window)));
            }
            seen[a] = true;
        }
        let negatives = window.iter().filter(|&&v| v < 0).count();
        match kind {
            ClassicalType::A if negatives > 0 => Err(ElementError::NegativeInTypeA),
            ClassicalType::D if negatives % 2 == 1 => Err(ElementError::OddNegativeCount),
            _ => Ok(SignedPermutation { window, kind }),
        }
    }

    pub fn identity(kind: ClassicalType, len: usize) -> Self {
        SignedPermutation {
            window: (1..=len as i32).collect(),
            kind,
        }
    }

    /// Parses `"[-2,5,1,-3,6,4]"`; brackets and whitespace are optional.
    pub fn parse_one_line(kind: ClassicalType, text: &str) -> Result<Self, ElementError> {
        let body = text.trim().trim_start_matches('[').trim_end_matches(']');
        let window = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i32>()
                        .map_err(|_| ElementError::Parse(text.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        Self::new(kind, window)
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    pub fn kind(&self) -> ClassicalType {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.window.len()
    }

    pub fn is_empty(&self) -> bool {
        self.window.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.kind.rank_for_len(self.window.len())
    }

    /// `π(i)` for `1 <= i <= n`.
    #[inline]
    fn at(&self, i: usize) -> i32 {
        self.window[i - 1]
    }

    /// `|Inv⁺|`.
    pub fn inv_plus(&self) -> usize {
        let w = &self.window;
        let mut c = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    c += 1;
                }
            }
        }
        c
    }

    /// `|Inv⁻|`: pairs `i < j` with `-π(i) > π(j)`.
    pub fn inv_minus(&self) -> usize {
        let w = &self.window;
        let mut c = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if -w[i] > w[j] {
                    c += 1;
                }
            }
        }
        c
    }

    /// `|Inv°|`: negative entries.
    pub fn inv_circ(&self) -> usize {
        self.window.iter().filter(|&&v| v < 0).count()
    }

    pub fn inv_count(&self) -> usize {
        match self.kind {
            ClassicalType::A => self.inv_plus(),
            ClassicalType::B => self.inv_plus() + self.inv_minus() + self.inv_circ(),
            ClassicalType::D => self.inv_plus() + self.inv_minus(),
        }
    }

    /// Bitmask of simple reflections in the right descent set.
    pub fn descent_set(&self) -> u64 {
        let w = &self.window;
        let n = w.len();
        let mut mask = 0u64;
        match self.kind {
            ClassicalType::A => {
                for i in 1..n {
                    if self.at(i) > self.at(i + 1) {
                        mask |= 1 << (i - 1);
                    }
                }
            }
            ClassicalType::B | ClassicalType::D => {
                if n == 0 {
                    return 0;
                }
                let pi0 = match self.kind {
                    ClassicalType::B => 0,
                    _ if n >= 2 => -self.at(2),
                    _ => 0,
                };
                if pi0 > self.at(1) {
                    mask |= 1;
                }
                for i in 1..n {
                    if self.at(i) > self.at(i + 1) {
                        mask |= 1 << i;
                    }
                }
            }
        }
        mask
    }

    pub fn des_count(&self) -> usize {
        self.descent_set().count_ones() as usize
    }

    pub fn inverse(&self) -> SignedPermutation {
        let mut q = vec![0i32; self.window.len()];
        for (i, &v) in self.window.iter().enumerate() {
            q[v.unsigned_abs() as usize - 1] = v.signum() * (i as i32 + 1);
        }
        SignedPermutation {
            window: q,
            kind: self.kind,
        }
    }

    pub fn ides_count(&self) -> usize {
        self.inverse().des_count()
    }

    pub fn left_descent_set(&self) -> u64 {
        self.inverse().descent_set()
    }

    pub fn statistic(&self, stat: Statistic) -> usize {
        match stat {
            Statistic::Inv => self.inv_count(),
            Statistic::Des => self.des_count(),
            Statistic::Ides => self.ides_count(),
            Statistic::DesPlusIdes => self.des_count() + self.ides_count(),
        }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        assert_eq!(self.window.len(), other.window.len(), "window lengths differ");
        let window = other
            .window
            .iter()
            .map(|&v| v.signum() * self.window[v.unsigned_abs() as usize - 1])
            .collect();
        SignedPermutation {
            window,
            kind: self.kind,
        }
    }

    /// `w·s` for the simple reflection at node `s`.
    pub fn right_multiply_simple(&self, s: usize) -> SignedPermutation {
        let mut w = self.window.clone();
        match self.kind {
            ClassicalType::A => w.swap(s, s + 1),
            ClassicalType::B => {
                if s == 0 {
                    w[0] = -w[0];
                } else {
                    w.swap(s - 1, s);
                }
            }
            ClassicalType::D => {
                if s == 0 {
                    let (a, b) = (w[0], w[1]);
                    w[0] = -b;
                    w[1] = -a;
                } else {
                    w.swap(s - 1, s);
                }
            }
        }
        SignedPermutation {
            window: w,
            kind: self.kind,
        }
    }

    /// Number of `i` with `π(i) = i`.
    pub fn fixed_points(&self) -> usize {
        self.window
            .iter()
            .enumerate()
            .filter(|(i, &v)| v == *i as i32 + 1)
            .count()
    }

    /// Number of members of `subset` whose indicator fires on this element.
    pub fn st_i(&self, subset: &RootSubset) -> Result<usize, ElementError> {
        if subset.kind != self.kind || subset.len != self.window.len() {
            return Err(ElementError::IllegalRoot(String::from(
                "subset belongs to a different group",
            )));
        }
        Ok(subset
            .members
            .iter()
            .filter(|r| match **r {
                RootId::Plus(i, j) => self.at(i) > self.at(j),
                RootId::Minus(i, j) => -self.at(i) > self.at(j),
                RootId::Circ(i) => self.at(i) < 0,
            })
            .count())
    }
}

fn format_window(w: &[i32]) -> String {
    let mut s = String::from("[");
    for (k, v) in w.iter().enumerate() {
        if k > 0 {
            s.push(',');
        }
        s.push_str(&v.to_string());
    }
    s.push(']');
    s
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_window(&self.window))
    }
}

/// A positive root of a classical type, with 1-based positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RootId {
    /// `e_i - e_j`
    Plus(usize, usize),
    /// `-e_i - e_j` (the sign convention matching `-π(i) > π(j)`)
    Minus(usize, usize),
    /// `-e_i`, type B only
    Circ(usize),
}

impl fmt::Display for RootId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootId::Plus(i, j) => write!(f, "plus({i},{j})"),
            RootId::Minus(i, j) => write!(f, "minus({i},{j})"),
            RootId::Circ(i) => write!(f, "circ({i})"),
        }
    }
}

/// A set of positive roots of one classical group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSubset {
    kind: ClassicalType,
    len: usize,
    members: BTreeSet<RootId>,
}

impl RootSubset {
    pub fn new(
        kind: ClassicalType,
        len: usize,
        members: impl IntoIterator<Item = RootId>,
    ) -> Result<Self, ElementError> {
        let members: BTreeSet<RootId> = members.into_iter().collect();
        for r in &members {
            let legal = match *r {
                RootId::Plus(i, j) => 1 <= i && i < j && j <= len,
                RootId::Minus(i, j) => kind != ClassicalType::A && 1 <= i && i < j && j <= len,
                RootId::Circ(i) => kind == ClassicalType::B && 1 <= i && i <= len,
            };
            if !legal {
                return Err(ElementError::IllegalRoot(r.to_string()));
            }
        }
        Ok(RootSubset { kind, len, members })
    }

    /// Every positive root of the type.
    pub fn all(kind: ClassicalType, len: usize) -> Self {
        let mut members = BTreeSet::new();
        for i in 1..=len {
            for j in i + 1..=len {
                members.insert(RootId::Plus(i, j));
                if kind != ClassicalType::A {
                    members.insert(RootId::Minus(i, j));
                }
            }
            if kind == ClassicalType::B {
                members.insert(RootId::Circ(i));
            }
        }
        RootSubset { kind, len, members }
    }

    /// The simple roots, so that `st_I` counts descents.
    pub fn simple(kind: ClassicalType, len: usize) -> Self {
        let mut members: BTreeSet<RootId> = (1..len).map(|i| RootId::Plus(i, i + 1)).collect();
        match kind {
            ClassicalType::B if len >= 1 => {
                members.insert(RootId::Circ(1));
            }
            ClassicalType::D if len >= 2 => {
                members.insert(RootId::Minus(1, 2));
            }
            _ => {}
        }
        RootSubset { kind, len, members }
    }

    pub fn members(&self) -> impl Iterator<Item = &RootId> {
        self.members.iter()
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// A subset drawn by keeping each positive root with probability 1/2.
    pub fn random(kind: ClassicalType, len: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let all = Self::all(kind, len);
        let members = all.members.into_iter().filter(|_| rng.gen::<bool>()).collect();
        RootSubset { kind, len, members }
    }
}

/// A classical group given by its type and window length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassicalGroup {
    kind: ClassicalType,
    len: usize,
}

impl ClassicalGroup {
    /// `len` is the window length (`n + 1` for `A_n`). Type D needs `len >= 2`.
    pub fn new(kind: ClassicalType, len: usize) -> Self {
        assert!(len <= 20, "window too long for 64-bit indexing");
        assert!(kind != ClassicalType::D || len >= 2, "type D needs length >= 2");
        ClassicalGroup { kind, len }
    }

    pub fn from_label(label: &IrreducibleLabel) -> Result<Self, ElementError> {
        let n = label.rank() as usize;
        let kind = match label.family() {
            Family::A => ClassicalType::A,
            Family::B => ClassicalType::B,
            Family::D => ClassicalType::D,
            _ => return Err(ElementError::NotClassical(label.to_string())),
        };
        let len = kind.len_for_rank(n);
        if len > 20 {
            return Err(ElementError::CapExceeded {
                order: label.order().to_string(),
                cap: crate::DEFAULT_ENUMERATION_CAP.to_string(),
            });
        }
        Ok(ClassicalGroup::new(kind, len))
    }

    pub fn kind(&self) -> ClassicalType {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn rank(&self) -> usize {
        self.kind.rank_for_len(self.len)
    }

    fn sign_patterns(&self) -> u64 {
        match self.kind {
            ClassicalType::A => 1,
            ClassicalType::B => 1 << self.len,
            ClassicalType::D => 1 << (self.len - 1),
        }
    }

    pub fn order(&self) -> BigUint {
        let fact: BigUint = (1..=self.len as u64).map(BigUint::from).product();
        fact * BigUint::from(self.sign_patterns())
    }

    pub fn identity(&self) -> SignedPermutation {
        SignedPermutation::identity(self.kind, self.len)
    }

    pub fn enumerate(&self) -> Result<ClassicalEnumerator, ElementError> {
        self.enumerate_capped(crate::DEFAULT_ENUMERATION_CAP)
    }

    /// All elements, in lexicographic order on (sign pattern, permutation).
    pub fn enumerate_capped(&self, cap: u64) -> Result<ClassicalEnumerator, ElementError> {
        let order = self.order();
        match order.to_u64() {
            Some(o) if o <= cap => Ok(self.enumerate_range(0, o)),
            _ => Err(ElementError::CapExceeded {
                order: order.to_string(),
                cap: cap.to_string(),
            }),
        }
    }

    /// Elements with index in `start..end` of the enumeration order, so that
    /// disjoint ranges can be walked independently.
    pub fn enumerate_range(&self, start: u64, end: u64) -> ClassicalEnumerator {
        let total = self.order().to_u64().unwrap_or(u64::MAX);
        let end = end.min(total);
        let fact: u64 = (1..=self.len as u64).product();
        let start = start.min(end);
        let signs = start.checked_div(fact).unwrap_or(0);
        let perm = unrank_permutation(self.len, start % fact.max(1));
        ClassicalEnumerator {
            group: *self,
            index: start,
            end,
            signs,
            perm,
        }
    }

    /// Histogram of a statistic over the whole group.
    pub fn tally(&self, stat: Statistic) -> Result<Vec<u64>, ElementError> {
        let mut hist: Vec<u64> = Vec::new();
        for w in self.enumerate()? {
            let v = w.statistic(stat);
            if hist.len() <= v {
                hist.resize(v + 1, 0);
            }
            hist[v] += 1;
        }
        Ok(hist)
    }

    /// A uniformly random element.
    pub fn sample_uniform(&self, seed: u64) -> SignedPermutation {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_with(&mut rng)
    }

    /// A uniformly random element from a caller-supplied generator. For type
    /// D a uniform element of B is drawn and the sign of the entry `±1` is
    /// flipped when the negative count is odd; the map is exactly 2-to-1.
    pub fn sample_with<R: Rng + ?Sized>(&self, rng: &mut R) -> SignedPermutation {
        let mut window: Vec<i32> = (1..=self.len as i32).collect();
        window.shuffle(rng);
        if self.kind != ClassicalType::A {
            for v in window.iter_mut() {
                if rng.gen::<bool>() {
                    *v = -*v;
                }
            }
        }
        if self.kind == ClassicalType::D && window.iter().filter(|&&v| v < 0).count() % 2 == 1 {
            if let Some(v) = window.iter_mut().find(|v| v.abs() == 1) {
                *v = -*v;
            }
        }
        SignedPermutation {
            window,
            kind: self.kind,
        }
    }
}

fn unrank_permutation(len: usize, mut rank: u64) -> Vec<i32> {
    let mut pool: Vec<i32> = (1..=len as i32).collect();
    let mut out = Vec::with_capacity(len);
    for k in (0..len).rev() {
        let f: u64 = (1..=k as u64).product();
        let idx = (rank / f) as usize;
        rank %= f;
        out.push(pool.remove(idx));
    }
    out
}

fn next_permutation(p: &mut [i32]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        p.reverse();
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Iterator over a contiguous index range of a [`ClassicalGroup`].
#[derive(Debug, Clone)]
pub struct ClassicalEnumerator {
    group: ClassicalGroup,
    index: u64,
    end: u64,
    signs: u64,
    perm: Vec<i32>,
}

impl ClassicalEnumerator {
    /// Sign pattern `signs` read with position 1 as the most significant bit.
    fn current(&self) -> SignedPermutation {
        let n = self.group.len;
        let mut window = self.perm.clone();
        match self.group.kind {
            ClassicalType::A => {}
            ClassicalType::B => {
                for (k, v) in window.iter_mut().enumerate() {
                    if (self.signs >> (n - 1 - k)) & 1 == 1 {
                        *v = -*v;
                    }
                }
            }
            ClassicalType::D => {
                let mut parity = 0;
                for (k, v) in window.iter_mut().enumerate().take(n - 1) {
                    if (self.signs >> (n - 2 - k)) & 1 == 1 {
                        *v = -*v;
                        parity ^= 1;
                    }
                }
                if parity == 1 {
                    window[n - 1] = -window[n - 1];
                }
            }
        }
        SignedPermutation {
            window,
            kind: self.group.kind,
        }
    }
}

impl Iterator for ClassicalEnumerator {
    type Item = SignedPermutation;

    fn next(&mut self) -> Option<SignedPermutation> {
        if self.index >= self.end {
            return None;
        }
        let out = self.current();
        self.index += 1;
        if !next_permutation(&mut self.perm) {
            self.signs += 1;
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.index) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for ClassicalEnumerator {}

/// Histogram as exact polynomial coefficients; convenience for callers that
/// need big integers.
pub fn tally_biguint(hist: &[u64]) -> Vec<BigUint> {
    hist.iter().map(|&c| BigUint::from(c)).collect()
}

/// Size of the subgroup generated by the simple reflections in `mask`,
/// found by closing the identity under right multiplication.
pub fn parabolic_order(group: &ClassicalGroup, mask: u64) -> usize {
    let gens: Vec<usize> = (0..group.rank()).filter(|s| mask >> s & 1 == 1).collect();
    let mut seen = BTreeSet::new();
    let mut stack = vec![group.identity()];
    seen.insert(group.identity());
    while let Some(w) = stack.pop() {
        for &s in &gens {
            let ws = w.right_multiply_simple(s);
            if seen.insert(ws.clone()) {
                stack.push(ws);
            }
        }
    }
    seen.len()
}

/// Order of the whole group as `u64`, when it fits.
pub fn order_u64(group: &ClassicalGroup) -> Option<u64> {
    let o = group.order();
    if o > BigUint::from(u64::MAX) || o < BigUint::one() {
        None
    } else {
        o.to_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn a(w: &[i32]) -> SignedPermutation {
        SignedPermutation::new(ClassicalType::A, w.to_vec()).unwrap()
    }
    fn b(w: &[i32]) -> SignedPermutation {
        SignedPermutation::new(ClassicalType::B, w.to_vec()).unwrap()
    }
    fn d(w: &[i32]) -> SignedPermutation {
        SignedPermutation::new(ClassicalType::D, w.to_vec()).unwrap()
    }

    #[test]
    fn worked_permutation() {
        let p = a(&[2, 5, 1, 3, 6, 4]);
        assert_eq!(p.inv_count(), 5);
        assert_eq!(p.des_count(), 2);
        assert_eq!(p.inverse().window(), &[3, 1, 4, 6, 2, 5]);
        assert_eq!(p.ides_count(), 2);
        assert_eq!(p.compose(&p.inverse()), SignedPermutation::identity(ClassicalType::A, 6));
    }

    #[test]
    fn signed_examples() {
        assert_eq!(b(&[-1, -2]).inv_count(), 4);
        assert_eq!(b(&[-2, -1]).inv_count(), 3);
        assert_eq!(b(&[-2, -1]).inverse(), b(&[-2, -1]));
        assert_eq!(d(&[-2, -1, 3]).des_count(), 1);
        assert_eq!(SignedPermutation::identity(ClassicalType::B, 5).des_count(), 0);
    }

    #[test]
    fn validation() {
        assert!(SignedPermutation::new(ClassicalType::A, vec![1, -2]).is_err());
        assert!(SignedPermutation::new(ClassicalType::D, vec![1, -2]).is_err());
        assert!(SignedPermutation::new(ClassicalType::B, vec![1, 1]).is_err());
        assert!(SignedPermutation::new(ClassicalType::B, vec![0, 1]).is_err());
        assert!(SignedPermutation::parse_one_line(ClassicalType::B, "[-2, 5,1,-3,6,4]").is_ok());
        assert!(SignedPermutation::parse_one_line(ClassicalType::B, "[x]").is_err());
    }

    #[test]
    fn group_orders() {
        let count = |k, len| ClassicalGroup::new(k, len).enumerate().unwrap().count();
        assert_eq!(count(ClassicalType::A, 3), 6);
        assert_eq!(count(ClassicalType::B, 3), 48);
        assert_eq!(count(ClassicalType::D, 4), 192);
    }

    #[test]
    fn enumeration_is_distinct_and_ordered() {
        let g = ClassicalGroup::new(ClassicalType::D, 4);
        let all: Vec<_> = g.enumerate().unwrap().collect();
        let set: BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        assert!(all.iter().all(|w| w.inv_circ() % 2 == 0));
        let ranged: Vec<_> = g.enumerate_range(50, 120).collect();
        assert_eq!(ranged.as_slice(), &all[50..120]);
    }

    #[test]
    fn simple_subset_counts_descents() {
        for (kind, len) in [(ClassicalType::A, 4), (ClassicalType::B, 3), (ClassicalType::D, 4)] {
            let g = ClassicalGroup::new(kind, len);
            let simple = RootSubset::simple(kind, len);
            let all = RootSubset::all(kind, len);
            for w in g.enumerate().unwrap() {
                assert_eq!(w.st_i(&simple).unwrap(), w.des_count(), "{w}");
                assert_eq!(w.st_i(&all).unwrap(), w.inv_count(), "{w}");
            }
        }
    }

    #[test]
    fn illegal_roots_rejected() {
        assert!(RootSubset::new(ClassicalType::A, 3, [RootId::Minus(1, 2)]).is_err());
        assert!(RootSubset::new(ClassicalType::D, 3, [RootId::Circ(1)]).is_err());
        assert!(RootSubset::new(ClassicalType::B, 3, [RootId::Plus(2, 2)]).is_err());
        let sub = RootSubset::new(ClassicalType::B, 3, [RootId::Circ(1)]).unwrap();
        let other = SignedPermutation::identity(ClassicalType::B, 4);
        assert!(other.st_i(&sub).is_err());
    }

    #[test]
    fn right_multiplication_changes_length_by_one() {
        for (kind, len) in [(ClassicalType::A, 4), (ClassicalType::B, 3), (ClassicalType::D, 4)] {
            let g = ClassicalGroup::new(kind, len);
            for w in g.enumerate().unwrap() {
                for s in 0..g.rank() {
                    let ws = w.right_multiply_simple(s);
                    let descent = w.descent_set() >> s & 1 == 1;
                    let expected = if descent { w.inv_count() - 1 } else { w.inv_count() + 1 };
                    assert_eq!(ws.inv_count(), expected, "{w} s{s}");
                }
            }
        }
    }

    #[test]
    fn d_sampling_has_even_parity() {
        let g = ClassicalGroup::new(ClassicalType::D, 4);
        for seed in 0..200 {
            assert_eq!(g.sample_uniform(seed).inv_circ() % 2, 0);
        }
        assert_eq!(g.sample_uniform(7), g.sample_uniform(7));
    }

    #[test]
    fn parabolic_orders() {
        let g = ClassicalGroup::new(ClassicalType::B, 3);
        assert_eq!(parabolic_order(&g, 0b111), 48);
        assert_eq!(parabolic_order(&g, 0b011), 8);
        assert_eq!(parabolic_order(&g, 0b110), 6);
        assert_eq!(parabolic_order(&g, 0), 1);
    }
}
