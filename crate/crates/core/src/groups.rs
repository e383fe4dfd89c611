//! Finite Coxeter groups as products of irreducible factors.
//!
//! A [`CoxeterDescriptor`] is a multiset of [`IrreducibleLabel`]s. Every
//! invariant the moment formulas consume (degrees, order, Coxeter number,
//! maximal edge label) is stored per family rather than derived from a root
//! system; [`crate::rootsys`] provides the independent cross-check.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::GroupError;

/// Irreducible family of the finite classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    D,
    E,
    F,
    H,
    I2,
}

impl Family {
    fn letter(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::H => "H",
            Family::I2 => "I2",
        }
    }
}

/// One irreducible factor, e.g. `B4` or `I2(7)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IrreducibleLabel {
    family: Family,
    rank: u32,
    /// Dihedral parameter; zero for every family other than `I2`.
    m: u32,
}

impl IrreducibleLabel {
    /// Validates the rank constraints of the classification.
    pub fn new(family: Family, rank: u32) -> Result<Self, GroupError> {
        let invalid = |hint: Option<&'static str>| GroupError::InvalidRank {
            family: family.letter(),
            rank,
            hint,
        };
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => {
                if rank == 1 {
                    return Err(invalid(Some("B1 is A1")));
                }
                rank >= 2
            }
            Family::D => match rank {
                2 => return Err(invalid(Some("D2 is A1 x A1"))),
                3 => return Err(invalid(Some("D3 is A3"))),
                r => r >= 4,
            },
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::H => rank == 3 || rank == 4,
            Family::I2 => {
                return Err(GroupError::InvalidRank {
                    family: "I2",
                    rank,
                    hint: Some("use IrreducibleLabel::dihedral"),
                })
            }
        };
        if ok {
            Ok(IrreducibleLabel { family, rank, m: 0 })
        } else {
            Err(invalid(None))
        }
    }

    /// The dihedral group `I2(m)` of order `2m`, `m >= 3`.
    pub fn dihedral(m: u32) -> Result<Self, GroupError> {
        match m {
            0 | 1 => Err(GroupError::InvalidDihedral { m, hint: None }),
            2 => Err(GroupError::InvalidDihedral {
                m,
                hint: Some("I2(2) is A1 x A1"),
            }),
            _ => Ok(IrreducibleLabel {
                family: Family::I2,
                rank: 2,
                m,
            }),
        }
    }

    pub fn a(n: u32) -> Result<Self, GroupError> {
        Self::new(Family::A, n)
    }

    pub fn b(n: u32) -> Result<Self, GroupError> {
        Self::new(Family::B, n)
    }

    pub fn d(n: u32) -> Result<Self, GroupError> {
        Self::new(Family::D, n)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Dihedral parameter of an `I2(m)` label.
    pub fn dihedral_parameter(&self) -> Option<u32> {
        (self.family == Family::I2).then_some(self.m)
    }

    pub fn is_dihedral(&self) -> bool {
        self.family == Family::I2
    }

    pub fn is_classical(&self) -> bool {
        matches!(self.family, Family::A | Family::B | Family::D)
    }

    /// Degrees of the fundamental invariants, ascending.
    pub fn degrees(&self) -> Vec<u64> {
        let n = u64::from(self.rank);
        let mut out: Vec<u64> = match self.family {
            Family::A => (2..=n + 1).collect(),
            Family::B => (1..=n).map(|k| 2 * k).collect(),
            Family::D => {
                let mut v: Vec<u64> = (1..n).map(|k| 2 * k).collect();
                v.push(n);
                v
            }
            Family::E => match self.rank {
                6 => vec![2, 5, 6, 8, 9, 12],
                7 => vec![2, 6, 8, 10, 12, 14, 18],
                _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
            },
            Family::F => vec![2, 6, 8, 12],
            Family::H => {
                if self.rank == 3 {
                    vec![2, 6, 10]
                } else {
                    vec![2, 12, 20, 30]
                }
            }
            Family::I2 => vec![2, u64::from(self.m)],
        };
        out.sort_unstable();
        out
    }

    /// Largest degree.
    pub fn coxeter_number(&self) -> u64 {
        self.degrees().into_iter().max().unwrap_or(1)
    }

    /// Largest edge label of the Coxeter diagram; `None` in rank one.
    pub fn m_max(&self) -> Option<u64> {
        if self.rank < 2 {
            return None;
        }
        Some(match self.family {
            Family::A | Family::D | Family::E => 3,
            Family::B | Family::F => 4,
            Family::H => 5,
            Family::I2 => u64::from(self.m),
        })
    }

    /// Number of positive roots, `sum(d_i - 1)`.
    pub fn positive_root_count(&self) -> u64 {
        self.degrees().iter().map(|d| d - 1).sum()
    }

    pub fn order(&self) -> BigUint {
        self.degrees()
            .iter()
            .fold(BigUint::one(), |acc, &d| acc * BigUint::from(d))
    }

    /// Coxeter matrix in the node numbering shared with [`crate::elements`]
    /// and [`crate::rootsys`]:
    ///
    /// * `A_n`: path `0 - 1 - ... - (n-1)`.
    /// * `B_n`: path with `m(0,1) = 4`; node 0 is the short root.
    /// * `D_n`: node 0 is the fork, attached to node 2; then path `1 - 2 - ... - (n-1)`.
    /// * `E_n`: Bourbaki numbering shifted down by one.
    /// * `F4`: path with `m(1,2) = 4`.
    /// * `H3`, `H4`: path with `m(0,1) = 5`.
    pub fn coxeter_matrix(&self) -> Vec<Vec<u32>> {
        let n = self.rank as usize;
        let mut mat = vec![vec![2u32; n]; n];
        for (i, row) in mat.iter_mut().enumerate() {
            row[i] = 1;
        }
        let mut edge = |i: usize, j: usize, m: u32| {
            mat[i][j] = m;
            mat[j][i] = m;
        };
        match self.family {
            Family::A => (1..n).for_each(|i| edge(i - 1, i, 3)),
            Family::B => {
                edge(0, 1, 4);
                (2..n).for_each(|i| edge(i - 1, i, 3));
            }
            Family::D => {
                edge(0, 2, 3);
                (2..n).for_each(|i| edge(i - 1, i, 3));
            }
            Family::E => {
                edge(0, 2, 3);
                edge(1, 3, 3);
                (3..n).for_each(|i| edge(i - 1, i, 3));
            }
            Family::F => {
                edge(0, 1, 3);
                edge(1, 2, 4);
                edge(2, 3, 3);
            }
            Family::H => {
                edge(0, 1, 5);
                (2..n).for_each(|i| edge(i - 1, i, 3));
            }
            Family::I2 => edge(0, 1, self.m),
        }
        mat
    }
}

impl fmt::Display for IrreducibleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::I2 => write!(f, "I2({})", self.m),
            fam => write!(f, "{}{}", fam.letter(), self.rank),
        }
    }
}

/// A finite Coxeter group given by its irreducible factors. The empty
/// descriptor is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CoxeterDescriptor {
    factors: Vec<IrreducibleLabel>,
}

impl CoxeterDescriptor {
    pub fn new(factors: Vec<IrreducibleLabel>) -> Self {
        CoxeterDescriptor { factors }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn irreducible(label: IrreducibleLabel) -> Self {
        CoxeterDescriptor {
            factors: vec![label],
        }
    }

    pub fn factors(&self) -> &[IrreducibleLabel] {
        &self.factors
    }

    /// Product with another descriptor.
    pub fn times(&self, other: &CoxeterDescriptor) -> CoxeterDescriptor {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        CoxeterDescriptor { factors }
    }

    pub fn rank(&self) -> u32 {
        self.factors.iter().map(|f| f.rank).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Multiset union of the factor degrees, ascending.
    pub fn degrees(&self) -> Vec<u64> {
        let mut all: Vec<u64> = self.factors.iter().flat_map(|f| f.degrees()).collect();
        all.sort_unstable();
        all
    }

    pub fn group_order(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, f| acc * f.order())
    }

    /// Largest `m(s, t)` over pairs of distinct simple reflections. Pairs
    /// in different factors commute and contribute 2.
    pub fn m_max(&self) -> Result<u64, GroupError> {
        if self.rank() < 2 {
            return Err(GroupError::MmaxUndefined);
        }
        let within = self.factors.iter().filter_map(|f| f.m_max()).max();
        let across = (self.factors.len() >= 2).then_some(2);
        Ok(within.into_iter().chain(across).max().unwrap_or(2))
    }

    /// The single factor of an irreducible descriptor.
    pub fn as_irreducible(&self) -> Result<&IrreducibleLabel, GroupError> {
        match self.factors.as_slice() {
            [only] => Ok(only),
            _ => Err(GroupError::Reducible),
        }
    }
}

impl fmt::Display for CoxeterDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.factors.len() {
            let mut j = i + 1;
            while j < self.factors.len() && self.factors[j] == self.factors[i] {
                j += 1;
            }
            if !first {
                f.write_str(" x ")?;
            }
            first = false;
            write!(f, "{}", self.factors[i])?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl FromStr for CoxeterDescriptor {
    type Err = GroupError;

    /// Parses `"A5"`, `"B4 x D4"`, `"A1^3 x I2(5)"`. Whitespace and the
    /// case of family letters are ignored; `"1"` is the trivial group.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(GroupError::Parse {
                position: 0,
                message: "empty group descriptor".to_string(),
            });
        }
        if compact == "1" || compact.eq_ignore_ascii_case("trivial") {
            return Ok(CoxeterDescriptor::trivial());
        }
        let mut parser = DescriptorParser {
            chars: compact.as_bytes(),
            pos: 0,
        };
        let mut factors = Vec::new();
        loop {
            let (label, power) = parser.factor()?;
            factors.extend(core::iter::repeat_n(label, power as usize));
            match parser.peek() {
                None => break,
                Some(b'x') | Some(b'X') => parser.pos += 1,
                Some(_) => return Err(parser.error("expected 'x' between factors")),
            }
        }
        Ok(CoxeterDescriptor { factors })
    }
}

struct DescriptorParser<'a> {
    chars: &'a [u8],
    pos: usize,
}

impl DescriptorParser<'_> {
    fn peek(&self) -> Option<u8> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, message: &str) -> GroupError {
        GroupError::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn number(&mut self) -> Result<u32, GroupError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        core::str::from_utf8(&self.chars[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| GroupError::Parse {
                position: start,
                message: "number out of range".to_string(),
            })
    }

    fn expect(&mut self, c: u8) -> Result<(), GroupError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&alloc::format!("expected '{}'", c as char)))
        }
    }

    fn factor(&mut self) -> Result<(IrreducibleLabel, u32), GroupError> {
        let letter = self
            .peek()
            .ok_or_else(|| self.error("expected a family letter"))?
            .to_ascii_uppercase();
        self.pos += 1;
        let label = match letter {
            b'I' => {
                if self.peek() != Some(b'2') {
                    return Err(self.error("expected I2(m)"));
                }
                self.pos += 1;
                self.expect(b'(')?;
                let m = self.number()?;
                self.expect(b')')?;
                IrreducibleLabel::dihedral(m)?
            }
            b'A' | b'B' | b'D' | b'E' | b'F' | b'H' => {
                let family = match letter {
                    b'A' => Family::A,
                    b'B' => Family::B,
                    b'D' => Family::D,
                    b'E' => Family::E,
                    b'F' => Family::F,
                    _ => Family::H,
                };
                let rank = if self.peek() == Some(b'(') {
                    self.pos += 1;
                    let r = self.number()?;
                    self.expect(b')')?;
                    r
                } else {
                    self.number()?
                };
                IrreducibleLabel::new(family, rank)?
            }
            _ => {
                self.pos -= 1;
                return Err(self.error("unknown family letter"));
            }
        };
        let power = if self.peek() == Some(b'^') {
            self.pos += 1;
            if self.peek() == Some(b'(') {
                self.pos += 1;
                let p = self.number()?;
                self.expect(b')')?;
                p
            } else {
                self.number()?
            }
        } else {
            1
        };
        Ok((label, power))
    }
}

/// Every supported irreducible label with rank at most `max_rank` and, for
/// dihedral groups, `3 <= m <= max_m`.
pub fn irreducible_catalogue(max_rank: u32, max_m: u32) -> Vec<IrreducibleLabel> {
    let mut out = Vec::new();
    for n in 1..=max_rank {
        out.push(IrreducibleLabel::a(n).unwrap());
        if n >= 2 {
            out.push(IrreducibleLabel::b(n).unwrap());
        }
        if n >= 4 {
            out.push(IrreducibleLabel::d(n).unwrap());
        }
    }
    for (family, rank) in [
        (Family::E, 6),
        (Family::E, 7),
        (Family::E, 8),
        (Family::F, 4),
        (Family::H, 3),
        (Family::H, 4),
    ] {
        if rank <= max_rank {
            out.push(IrreducibleLabel::new(family, rank).unwrap());
        }
    }
    if max_rank >= 2 {
        for m in 3..=max_m {
            out.push(IrreducibleLabel::dihedral(m).unwrap());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> CoxeterDescriptor {
        s.parse().unwrap()
    }

    #[test]
    fn degree_tables() {
        assert_eq!(parse("A3").degrees(), vec![2, 3, 4]);
        assert_eq!(parse("E6").degrees(), vec![2, 5, 6, 8, 9, 12]);
        assert_eq!(parse("A1 x A1").degrees(), vec![2, 2]);
        assert_eq!(parse("D4").degrees(), vec![2, 4, 4, 6]);
        assert!(CoxeterDescriptor::trivial().degrees().is_empty());
    }

    #[test]
    fn orders() {
        assert_eq!(parse("A2").group_order(), BigUint::from(6u32));
        assert_eq!(parse("E6").group_order(), BigUint::from(51840u32));
        assert_eq!(parse("B3").group_order(), BigUint::from(48u32));
        assert_eq!(parse("E8").group_order(), BigUint::from(696_729_600u64));
        assert_eq!(CoxeterDescriptor::trivial().group_order(), BigUint::one());
    }

    #[test]
    fn coxeter_numbers() {
        for n in 1..10 {
            assert_eq!(IrreducibleLabel::a(n).unwrap().coxeter_number(), u64::from(n) + 1);
        }
        assert_eq!(parse("E8").as_irreducible().unwrap().coxeter_number(), 30);
        assert_eq!(IrreducibleLabel::dihedral(17).unwrap().coxeter_number(), 17);
    }

    #[test]
    fn m_max_values() {
        assert_eq!(parse("F4").m_max().unwrap(), 4);
        assert_eq!(parse("A1 x A1").m_max().unwrap(), 2);
        assert_eq!(parse("A1^5 x I2(7)").m_max().unwrap(), 7);
        assert_eq!(parse("A1").m_max(), Err(GroupError::MmaxUndefined));
        assert_eq!(CoxeterDescriptor::trivial().m_max(), Err(GroupError::MmaxUndefined));
    }

    #[test]
    fn m_max_matches_coxeter_matrix() {
        for label in irreducible_catalogue(9, 12) {
            let mat = label.coxeter_matrix();
            let from_matrix = mat
                .iter()
                .flat_map(|r| r.iter().copied())
                .filter(|&m| m != 1)
                .max()
                .map(u64::from);
            assert_eq!(label.m_max(), from_matrix, "{label}");
        }
    }

    #[test]
    fn rejects_low_rank_aliases() {
        assert!(matches!(
            "D3".parse::<CoxeterDescriptor>(),
            Err(GroupError::InvalidRank { hint: Some(_), .. })
        ));
        assert!(matches!(
            "D2".parse::<CoxeterDescriptor>(),
            Err(GroupError::InvalidRank { hint: Some(_), .. })
        ));
        assert!(matches!(
            "I2(2)".parse::<CoxeterDescriptor>(),
            Err(GroupError::InvalidDihedral { m: 2, .. })
        ));
        assert!("E5".parse::<CoxeterDescriptor>().is_err());
        assert!("F3".parse::<CoxeterDescriptor>().is_err());
        assert!("H2".parse::<CoxeterDescriptor>().is_err());
        assert!("".parse::<CoxeterDescriptor>().is_err());
        assert!("Q3".parse::<CoxeterDescriptor>().is_err());
        assert!("A3 B2".parse::<CoxeterDescriptor>().is_err());
    }

    #[test]
    fn parse_syntax() {
        let d = parse(" a1^3 x i2( 5 ) ");
        assert_eq!(d.factors().len(), 4);
        assert_eq!(d.rank(), 5);
        assert_eq!(d.to_string(), "A1^3 x I2(5)");
        assert_eq!(parse("B2").to_string(), "B2");
        assert_eq!(parse("1"), CoxeterDescriptor::trivial());
        assert_eq!(parse("A(4)"), parse("A4"));
    }

    #[test]
    fn positive_roots_are_half_rank_times_coxeter_number() {
        for label in irreducible_catalogue(12, 50) {
            let n = u64::from(label.rank());
            let h = label.coxeter_number();
            assert_eq!(2 * label.positive_root_count(), n * h, "{label}");
        }
    }

    #[test]
    fn m_max_bounded_by_largest_degree() {
        for label in irreducible_catalogue(12, 50) {
            if let Some(m) = label.m_max() {
                assert!(2 <= m && m <= label.coxeter_number(), "{label}");
            }
        }
    }
}
