//! Root systems and enumeration of group elements by inversion sets.
//!
//! Roots are stored in the simple-root basis over an exact ring: integers
//! for the crystallographic types, `Z[φ]` for `H3`/`H4`. Dihedral groups
//! use the closed form of their `2m` roots instead of generic closure.
//!
//! Every root system carries an action table on all `2N` roots: index `r`
//! is a positive root for `r < N` and `r + N` is its negative.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Debug;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::RootSystemError;
use crate::groups::{Family, IrreducibleLabel};
use crate::Statistic;

/// The exact scalar rings used for root coordinates.
pub trait Ring: Copy + Ord + Debug {
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn add(self, o: Self) -> Self;
    fn sub(self, o: Self) -> Self;
    fn mul(self, o: Self) -> Self;
    fn signum(self) -> Ordering;
}

impl Ring for i64 {
    fn zero() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn sub(self, o: Self) -> Self {
        self - o
    }
    fn mul(self, o: Self) -> Self {
        self * o
    }
    fn signum(self) -> Ordering {
        self.cmp(&0)
    }
}

/// `a + bφ` with `φ² = φ + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GoldenInt {
    pub a: i64,
    pub b: i64,
}

impl GoldenInt {
    pub const PHI: GoldenInt = GoldenInt { a: 0, b: 1 };

    pub fn new(a: i64, b: i64) -> Self {
        GoldenInt { a, b }
    }

    pub fn to_f64(self) -> f64 {
        let phi = (1.0 + libm::sqrt(5.0)) / 2.0;
        self.a as f64 + self.b as f64 * phi
    }
}

impl Ring for GoldenInt {
    fn zero() -> Self {
        GoldenInt { a: 0, b: 0 }
    }
    fn from_i64(v: i64) -> Self {
        GoldenInt { a: v, b: 0 }
    }
    fn add(self, o: Self) -> Self {
        GoldenInt {
            a: self.a + o.a,
            b: self.b + o.b,
        }
    }
    fn sub(self, o: Self) -> Self {
        GoldenInt {
            a: self.a - o.a,
            b: self.b - o.b,
        }
    }
    fn mul(self, o: Self) -> Self {
        GoldenInt {
            a: self.a * o.a + self.b * o.b,
            b: self.a * o.b + self.b * o.a + self.b * o.b,
        }
    }
    /// Sign of `(x + y√5)/2` with `x = 2a + b`, `y = b`, decided exactly.
    fn signum(self) -> Ordering {
        let x = 2 * self.a + self.b;
        let y = self.b;
        match (x.cmp(&0), y.cmp(&0)) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            (Ordering::Greater, Ordering::Less) => (x * x).cmp(&(5 * y * y)),
            (Ordering::Less, Ordering::Greater) => (5 * y * y).cmp(&(x * x)),
        }
    }
}

/// Coordinates of the positive roots in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootCoordinates {
    Integer(Vec<Vec<i64>>),
    Golden(Vec<Vec<GoldenInt>>),
    /// Root `k` is the unit vector at angle `angle[k]·π/m`.
    Dihedral { m: u32, angle: Vec<u32> },
}

/// Positive roots of an irreducible finite Coxeter group with the action of
/// its simple reflections.
#[derive(Debug, Clone)]
pub struct RootSystem {
    label: IrreducibleLabel,
    rank: usize,
    positive: usize,
    coordinates: RootCoordinates,
    /// `action[s][r]` is the index of `s(root r)` among all `2N` roots.
    action: Vec<Vec<u16>>,
}

fn cartan_entry<R: Ring>(label: &IrreducibleLabel, m: u32, i: usize, j: usize, phi: R) -> R {
    match m {
        2 => R::zero(),
        3 => R::from_i64(-1),
        4 => {
            let short = |k: usize| match label.family() {
                Family::B => k == 0,
                Family::F => k >= 2,
                _ => false,
            };
            if short(i) && !short(j) {
                R::from_i64(-2)
            } else {
                R::from_i64(-1)
            }
        }
        5 => R::zero().sub(phi),
        _ => unreachable!("edge label {m} handled by the dihedral closed form"),
    }
}

struct Closure<R> {
    roots: Vec<Vec<R>>,
    action: Vec<Vec<u16>>,
}

fn close<R: Ring>(k: &[Vec<R>], expected: usize) -> Result<Closure<R>, RootSystemError> {
    let n = k.len();
    let reflect = |i: usize, v: &[R]| -> Vec<R> {
        let mut c = R::zero();
        for j in 0..n {
            c = c.add(k[i][j].mul(v[j]));
        }
        let mut out = v.to_vec();
        out[i] = out[i].sub(c);
        out
    };
    let mut roots: Vec<Vec<R>> = (0..n)
        .map(|i| {
            let mut e = vec![R::zero(); n];
            e[i] = R::from_i64(1);
            e
        })
        .collect();
    let mut index: BTreeMap<Vec<R>, usize> = roots.iter().cloned().zip(0..).collect();
    let mut head = 0;
    while head < roots.len() {
        let r = roots[head].clone();
        for i in 0..n {
            if head == i {
                continue;
            }
            let v = reflect(i, &r);
            if v.iter().any(|c| c.signum() == Ordering::Less) {
                return Err(RootSystemError::ClosureMismatch {
                    found: roots.len(),
                    expected,
                });
            }
            if !index.contains_key(&v) {
                index.insert(v.clone(), roots.len());
                roots.push(v);
                if roots.len() > expected {
                    return Err(RootSystemError::ClosureMismatch {
                        found: roots.len(),
                        expected,
                    });
                }
            }
        }
        head += 1;
    }
    if roots.len() != expected {
        return Err(RootSystemError::ClosureMismatch {
            found: roots.len(),
            expected,
        });
    }
    let big_n = roots.len();
    let mut action = vec![vec![0u16; 2 * big_n]; n];
    for (i, row) in action.iter_mut().enumerate() {
        for (p, r) in roots.iter().enumerate() {
            let img = if p == i { big_n + i } else { index[&reflect(i, r)] };
            row[p] = img as u16;
            row[p + big_n] = if img >= big_n { img - big_n } else { img + big_n } as u16;
        }
    }
    Ok(Closure { roots, action })
}

impl RootSystem {
    pub fn build(label: &IrreducibleLabel) -> Result<Self, RootSystemError> {
        let expected = label.positive_root_count() as usize;
        if expected > 128 {
            return Err(RootSystemError::TooManyRoots(label.to_string()));
        }
        let n = label.rank() as usize;
        if let Some(m) = label.dihedral_parameter() {
            return Ok(Self::dihedral(label, m));
        }
        let cox = label.coxeter_matrix();
        let entries = |i: usize, j: usize| cox[i][j];
        let (coordinates, action) = if label.family() == Family::H {
            let k: Vec<Vec<GoldenInt>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                GoldenInt::from_i64(2)
                            } else {
                                cartan_entry(label, entries(i, j), i, j, GoldenInt::PHI)
                            }
                        })
                        .collect()
                })
                .collect();
            let c = close(&k, expected)?;
            (RootCoordinates::Golden(c.roots), c.action)
        } else {
            let k: Vec<Vec<i64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                2
                            } else {
                                cartan_entry(label, entries(i, j), i, j, 0i64)
                            }
                        })
                        .collect()
                })
                .collect();
            let c = close(&k, expected)?;
            (RootCoordinates::Integer(c.roots), c.action)
        };
        Ok(RootSystem {
            label: *label,
            rank: n,
            positive: expected,
            coordinates,
            action,
        })
    }

    /// Roots `ρ_t` at angle `tπ/m`, `t mod 2m`; the simple roots are `ρ_0`
    /// and `ρ_{m-1}`, and reflection in `ρ_a` sends `t` to `2a + m - t`.
    fn dihedral(label: &IrreducibleLabel, m: u32) -> Self {
        let mm = m as usize;
        let pos_index = |t: usize| -> usize {
            if t == 0 {
                0
            } else if t == mm - 1 {
                1
            } else {
                t + 1
            }
        };
        let index = |t: usize| -> usize {
            if t < mm {
                pos_index(t)
            } else {
                pos_index(t - mm) + mm
            }
        };
        let mut angle = vec![0u32; mm];
        for t in 0..mm {
            angle[pos_index(t)] = t as u32;
        }
        let two_m = 2 * mm;
        let mut action = vec![vec![0u16; two_m]; 2];
        for (s, a) in [(0usize, 0usize), (1, mm - 1)] {
            for t in 0..two_m {
                let img = (2 * a + mm + two_m - t) % two_m;
                action[s][index(t)] = index(img) as u16;
            }
        }
        RootSystem {
            label: *label,
            rank: 2,
            positive: mm,
            coordinates: RootCoordinates::Dihedral { m, angle },
            action,
        }
    }

    pub fn label(&self) -> &IrreducibleLabel {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of positive roots.
    pub fn positive_count(&self) -> usize {
        self.positive
    }

    pub fn coordinates(&self) -> &RootCoordinates {
        &self.coordinates
    }

    /// Image of root `r` (index among all `2N`) under simple reflection `s`.
    pub fn act(&self, s: usize, r: usize) -> usize {
        self.action[s][r] as usize
    }

    pub fn action_row(&self, s: usize) -> &[u16] {
        &self.action[s]
    }

    pub fn order(&self) -> BigUint {
        self.label.order()
    }

    /// Walks every element once, refusing groups larger than `cap`.
    pub fn enumerate_inversion_sets(&self, cap: u64) -> Result<InversionWalk<'_>, RootSystemError> {
        let order = self.order();
        match order.to_u64() {
            Some(o) if o <= cap => Ok(InversionWalk::new(self)),
            _ => Err(RootSystemError::CapExceeded {
                order: order.to_string(),
                cap: cap.to_string(),
            }),
        }
    }

    /// Exact histogram of a statistic over the group.
    pub fn statistics_tally(&self, stat: Statistic, cap: u64) -> Result<Vec<u64>, RootSystemError> {
        let mut hist = vec![0u64; 2 * self.positive + 1];
        for rec in self.enumerate_inversion_sets(cap)? {
            let v = match stat {
                Statistic::Inv => rec.length,
                Statistic::Des => rec.right_descents.count_ones(),
                Statistic::Ides => rec.left_descents.count_ones(),
                Statistic::DesPlusIdes => {
                    rec.right_descents.count_ones() + rec.left_descents.count_ones()
                }
            };
            hist[v as usize] += 1;
        }
        while hist.len() > 1 && hist.last() == Some(&0) {
            hist.pop();
        }
        Ok(hist)
    }

    /// Every element as a permutation of the `2N` roots, by closing the
    /// identity under right multiplication.
    pub fn group_elements(&self, cap: u64) -> Result<Vec<RootPermutation>, RootSystemError> {
        let order = self.order();
        if order.to_u64().is_none_or(|o| o > cap) {
            return Err(RootSystemError::CapExceeded {
                order: order.to_string(),
                cap: cap.to_string(),
            });
        }
        let id = RootPermutation((0..2 * self.positive as u16).collect());
        let mut seen = BTreeSet::new();
        seen.insert(id.clone());
        let mut out = vec![id];
        let mut head = 0;
        while head < out.len() {
            for s in 0..self.rank {
                let ws = out[head].times_simple(self, s);
                if seen.insert(ws.clone()) {
                    out.push(ws);
                }
            }
            head += 1;
        }
        Ok(out)
    }
}

/// One element seen through its inversion set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElementRecord {
    pub inversion_set: u128,
    pub length: u32,
    pub right_descents: u32,
    pub left_descents: u32,
}

#[derive(Clone, Copy)]
struct Frame {
    inv: u128,
    img: [u16; 8],
    next_s: u8,
}

/// Depth-first walk of the right weak order in which every element other
/// than the identity is reached from `w·s` with `s` its largest right
/// descent. Each element is produced exactly once and no visited set is kept.
pub struct InversionWalk<'a> {
    rs: &'a RootSystem,
    /// `table[(s·bytes + b)·256 + v]` is the image under `s` of the roots in
    /// byte `b` of an inversion set holding `v` there.
    table: Vec<u128>,
    bytes: usize,
    simple_mask: u128,
    stack: Vec<Frame>,
    started: bool,
}

impl<'a> InversionWalk<'a> {
    fn new(rs: &'a RootSystem) -> Self {
        assert!(rs.rank <= 8, "rank above 8 is not supported by the walk");
        let big_n = rs.positive;
        let bytes = big_n.div_ceil(8);
        let mut table = vec![0u128; rs.rank * bytes * 256];
        for s in 0..rs.rank {
            for b in 0..bytes {
                let base = (s * bytes + b) * 256;
                for v in 1..256usize {
                    let low = v.trailing_zeros() as usize;
                    let r = 8 * b + low;
                    let single = if r < big_n {
                        let img = rs.action[s][r] as usize;
                        if img < big_n {
                            1u128 << img
                        } else {
                            0
                        }
                    } else {
                        0
                    };
                    table[base + v] = table[base + (v & (v - 1))] | single;
                }
            }
        }
        let mut img = [0u16; 8];
        for (t, slot) in img.iter_mut().enumerate().take(rs.rank) {
            *slot = t as u16;
        }
        InversionWalk {
            rs,
            table,
            bytes,
            simple_mask: (1u128 << rs.rank) - 1,
            stack: vec![Frame {
                inv: 0,
                img,
                next_s: 0,
            }],
            started: false,
        }
    }

    #[inline]
    fn image(&self, s: usize, inv: u128) -> u128 {
        let mut out = 0u128;
        let base = s * self.bytes;
        for b in 0..self.bytes {
            let v = ((inv >> (8 * b)) & 0xff) as usize;
            if v != 0 {
                out |= self.table[(base + b) * 256 + v];
            }
        }
        out
    }

    fn record(&self, f: &Frame) -> ElementRecord {
        let big_n = self.rs.positive as u16;
        let mut left = 0u32;
        for t in 0..self.rs.rank {
            if f.img[t] >= big_n {
                left |= 1 << t;
            }
        }
        ElementRecord {
            inversion_set: f.inv,
            length: f.inv.count_ones(),
            right_descents: (f.inv & self.simple_mask) as u32,
            left_descents: left,
        }
    }
}

impl Iterator for InversionWalk<'_> {
    type Item = ElementRecord;

    fn next(&mut self) -> Option<ElementRecord> {
        if !self.started {
            self.started = true;
            return self.stack.last().map(|f| self.record(f));
        }
        let rank = self.rs.rank;
        loop {
            let top = self.stack.last_mut()?;
            if top.next_s as usize >= rank {
                self.stack.pop();
                continue;
            }
            let s = top.next_s as usize;
            top.next_s += 1;
            let frame = *top;
            if frame.inv >> s & 1 == 1 {
                continue;
            }
            let child = self.image(s, frame.inv) | (1u128 << s);
            let desc = child & self.simple_mask;
            if 127 - desc.leading_zeros() as usize != s {
                continue;
            }
            let mut img = frame.img;
            for slot in img.iter_mut().take(rank) {
                *slot = self.rs.action[s][*slot as usize];
            }
            let f = Frame {
                inv: child,
                img,
                next_s: 0,
            };
            self.stack.push(f);
            return Some(self.record(&f));
        }
    }
}

/// A group element as a permutation of all `2N` roots.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootPermutation(pub Vec<u16>);

impl RootPermutation {
    /// `w·s`: `(ws)(r) = w(s(r))`.
    pub fn times_simple(&self, rs: &RootSystem, s: usize) -> RootPermutation {
        RootPermutation(rs.action[s].iter().map(|&r| self.0[r as usize]).collect())
    }

    /// `s·w`: `(sw)(r) = s(w(r))`.
    pub fn simple_times(&self, rs: &RootSystem, s: usize) -> RootPermutation {
        RootPermutation(self.0.iter().map(|&r| rs.action[s][r as usize]).collect())
    }

    pub fn inverse(&self) -> RootPermutation {
        let mut out = vec![0u16; self.0.len()];
        for (r, &img) in self.0.iter().enumerate() {
            out[img as usize] = r as u16;
        }
        RootPermutation(out)
    }

    fn positive(&self) -> usize {
        self.0.len() / 2
    }

    pub fn length(&self) -> usize {
        let n = self.positive();
        self.0[..n].iter().filter(|&&r| r as usize >= n).count()
    }

    pub fn inversion_set(&self) -> u128 {
        let n = self.positive();
        let mut out = 0u128;
        for (r, &img) in self.0[..n].iter().enumerate() {
            if img as usize >= n {
                out |= 1 << r;
            }
        }
        out
    }

    pub fn right_descents(&self, rank: usize) -> u32 {
        let n = self.positive();
        (0..rank)
            .filter(|&s| self.0[s] as usize >= n)
            .fold(0, |m, s| m | 1 << s)
    }

    pub fn left_descents(&self, rank: usize) -> u32 {
        self.inverse().right_descents(rank)
    }
}

/// Number of double cosets `⟨s⟩ \ W / ⟨t⟩`, counted by orbit enumeration.
pub fn double_coset_count(rs: &RootSystem, elements: &[RootPermutation], s: usize, t: usize) -> usize {
    let index: BTreeMap<&RootPermutation, usize> = elements.iter().zip(0..).collect();
    let mut seen = vec![false; elements.len()];
    let mut orbits = 0;
    for start in 0..elements.len() {
        if seen[start] {
            continue;
        }
        orbits += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(i) = stack.pop() {
            let w = &elements[i];
            for next in [w.simple_times(rs, s), w.times_simple(rs, t)] {
                let j = index[&next];
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    orbits
}

/// `Σ_{s,t} |W_s \ W / W_t|` over ordered pairs of simple reflections.
pub fn double_coset_sum_enumerated(label: &IrreducibleLabel, cap: u64) -> Result<u64, RootSystemError> {
    let rs = RootSystem::build(label)?;
    let elements = rs.group_elements(cap)?;
    let mut total = 0u64;
    for s in 0..rs.rank {
        for t in 0..rs.rank {
            total += double_coset_count(&rs, &elements, s, t) as u64;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::irreducible_catalogue;
    use crate::CoxeterDescriptor;

    fn label(s: &str) -> IrreducibleLabel {
        *s.parse::<CoxeterDescriptor>().unwrap().as_irreducible().unwrap()
    }

    #[test]
    fn golden_sign() {
        assert_eq!(GoldenInt::new(-1, 1).signum(), Ordering::Greater);
        assert_eq!(GoldenInt::new(-2, 1).signum(), Ordering::Less);
        assert_eq!(GoldenInt::new(2, -1).signum(), Ordering::Greater);
        assert_eq!(GoldenInt::new(1, -1).signum(), Ordering::Less);
        assert_eq!(GoldenInt::PHI.mul(GoldenInt::PHI), GoldenInt::new(1, 1));
        for a in -6..6 {
            for b in -6..6 {
                let g = GoldenInt::new(a, b);
                let f = g.to_f64();
                let expect = if f.abs() < 1e-12 {
                    Ordering::Equal
                } else if f > 0.0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
                assert_eq!(g.signum(), expect, "{a} + {b}φ");
            }
        }
    }

    #[test]
    fn root_counts() {
        assert_eq!(RootSystem::build(&label("A2")).unwrap().positive_count(), 3);
        assert_eq!(RootSystem::build(&label("H3")).unwrap().positive_count(), 15);
        assert_eq!(RootSystem::build(&label("E6")).unwrap().positive_count(), 36);
        for l in irreducible_catalogue(8, 20) {
            if l.positive_root_count() <= 128 {
                let rs = RootSystem::build(&l).unwrap();
                assert_eq!(rs.positive_count() as u64, l.positive_root_count(), "{l}");
            }
        }
    }

    #[test]
    fn action_rows_are_involutions() {
        for l in irreducible_catalogue(6, 12) {
            let rs = RootSystem::build(&l).unwrap();
            let n = rs.positive_count();
            for s in 0..rs.rank() {
                for r in 0..2 * n {
                    assert_eq!(rs.act(s, rs.act(s, r)), r);
                }
                assert_eq!(rs.act(s, s), s + n);
            }
        }
    }

    #[test]
    fn walk_counts_match_order() {
        for l in irreducible_catalogue(5, 10) {
            let rs = RootSystem::build(&l).unwrap();
            let count = rs.enumerate_inversion_sets(u64::MAX).unwrap().count();
            assert_eq!(BigUint::from(count), l.order(), "{l}");
        }
    }

    #[test]
    fn a2_records() {
        let rs = RootSystem::build(&label("A2")).unwrap();
        let mut lengths: Vec<u32> = rs.enumerate_inversion_sets(100).unwrap().map(|r| r.length).collect();
        lengths.sort();
        assert_eq!(lengths, vec![0, 1, 1, 2, 2, 3]);
    }

    #[test]
    fn dihedral_des_tally() {
        let rs = RootSystem::build(&IrreducibleLabel::dihedral(4).unwrap()).unwrap();
        assert_eq!(rs.statistics_tally(Statistic::Des, 100).unwrap(), vec![1, 6, 1]);
    }

    #[test]
    fn e8_refused_by_default() {
        let rs = RootSystem::build(&label("E8")).unwrap();
        match rs.enumerate_inversion_sets(crate::DEFAULT_ENUMERATION_CAP) {
            Err(RootSystemError::CapExceeded { order, .. }) => assert_eq!(order, "696729600"),
            _ => panic!("E8 must be refused"),
        }
    }

    #[test]
    fn walk_agrees_with_permutation_model() {
        for l in ["A3", "B3", "H3", "I2(5)", "D4"] {
            let rs = RootSystem::build(&label(l)).unwrap();
            let mut from_walk: Vec<(u128, u32, u32)> = rs
                .enumerate_inversion_sets(u64::MAX)
                .unwrap()
                .map(|r| (r.inversion_set, r.right_descents, r.left_descents))
                .collect();
            let mut from_perm: Vec<(u128, u32, u32)> = rs
                .group_elements(u64::MAX)
                .unwrap()
                .iter()
                .map(|w| (w.inversion_set(), w.right_descents(rs.rank()), w.left_descents(rs.rank())))
                .collect();
            from_walk.sort();
            from_perm.sort();
            assert_eq!(from_walk, from_perm, "{l}");
        }
    }

    #[test]
    fn double_cosets_small() {
        assert_eq!(double_coset_sum_enumerated(&label("A2"), 1000).unwrap(), 8);
        assert_eq!(double_coset_sum_enumerated(&IrreducibleLabel::dihedral(3).unwrap(), 1000).unwrap(), 8);
    }
}
