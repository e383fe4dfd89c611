//! Experimental pipeline for permutation statistics: per-rank data, exact
//! moments, normalized cumulants and rational formula guessing.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::elements::{ClassicalGroup, ClassicalType, SignedPermutation};
use crate::error::InterpError;
use crate::moments::moments_from_polynomial;
use crate::polynomials::ExactPolynomial;
use crate::Statistic;

/// Data for one rank: raw values or a histogram indexed by value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RankData {
    Values(Vec<u64>),
    Histogram(ExactPolynomial),
}

impl RankData {
    pub fn histogram(&self) -> ExactPolynomial {
        match self {
            RankData::Histogram(h) => h.clone(),
            RankData::Values(v) => {
                let max = v.iter().copied().max().unwrap_or(0) as usize;
                let mut counts = vec![0u64; if v.is_empty() { 0 } else { max + 1 }];
                for &x in v {
                    counts[x as usize] += 1;
                }
                ExactPolynomial::from_u64(&counts)
            }
        }
    }

    pub fn total(&self) -> BigUint {
        match self {
            RankData::Values(v) => BigUint::from(v.len()),
            RankData::Histogram(h) => h.eval_at_one(),
        }
    }
}

/// Values of one statistic, keyed by rank `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatisticDataset {
    pub name: String,
    per_rank: BTreeMap<u32, RankData>,
}

impl StatisticDataset {
    pub fn new(name: impl Into<String>) -> Self {
        StatisticDataset {
            name: name.into(),
            per_rank: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, n: u32, data: RankData) {
        self.per_rank.insert(n, data);
    }

    pub fn insert_values(&mut self, n: u32, values: Vec<u64>) {
        self.insert(n, RankData::Values(values));
    }

    pub fn insert_histogram(&mut self, n: u32, histogram: ExactPolynomial) {
        self.insert(n, RankData::Histogram(histogram));
    }

    pub fn ranks(&self) -> impl Iterator<Item = u32> + '_ {
        self.per_rank.keys().copied()
    }

    pub fn get(&self, n: u32) -> Option<&RankData> {
        self.per_rank.get(&n)
    }

    pub fn histogram(&self, n: u32) -> Option<ExactPolynomial> {
        self.per_rank.get(&n).map(RankData::histogram)
    }

    pub fn is_empty(&self) -> bool {
        self.per_rank.is_empty()
    }

    /// Same dataset with every rank stored as a histogram.
    pub fn to_histograms(&self) -> StatisticDataset {
        StatisticDataset {
            name: self.name.clone(),
            per_rank: self
                .per_rank
                .iter()
                .map(|(&n, d)| (n, RankData::Histogram(d.histogram())))
                .collect(),
        }
    }

    /// Checks every rank against the order of the classical group with
    /// window length `n` (`S_n` for type A).
    pub fn check_orders(&self, kind: ClassicalType) -> Result<(), InterpError> {
        for (&n, data) in &self.per_rank {
            let expected = ClassicalGroup::new(kind, n as usize).order();
            let found = data.total();
            if found != expected {
                return Err(InterpError::LengthMismatch {
                    n,
                    found: found.to_usize().unwrap_or(usize::MAX),
                    expected: expected.to_string(),
                });
            }
        }
        Ok(())
    }
}

/// One row of the cumulant table.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub n: u32,
    pub mean: BigRational,
    pub variance: BigRational,
    /// `κ̃_3 .. κ̃_kmax`; `None` for zero-variance rows.
    pub normalized_cumulants: Option<Vec<f64>>,
}

impl SummaryRow {
    pub fn zero_variance(&self) -> bool {
        self.variance.is_zero()
    }

    /// The normalized cumulants in table style.
    pub fn formatted(&self) -> Vec<String> {
        self.normalized_cumulants
            .as_ref()
            .map(|v| v.iter().map(|&x| format_sig3(x)).collect())
            .unwrap_or_default()
    }
}

pub const DEFAULT_K_MAX: usize = 8;

pub fn summarize(ds: &StatisticDataset, k_max: usize) -> Result<Vec<SummaryRow>, InterpError> {
    if ds.is_empty() {
        return Err(InterpError::Empty);
    }
    let mut rows = Vec::new();
    for (&n, data) in &ds.per_rank {
        let h = data.histogram();
        let s = moments_from_polynomial(&h, k_max.max(2)).map_err(|e| InterpError::Malformed {
            line: 0,
            message: alloc::format!("rank {n}: {e}"),
        })?;
        rows.push(SummaryRow {
            n,
            normalized_cumulants: s.normalized_cumulants.clone(),
            mean: s.mean,
            variance: s.variance,
        });
    }
    Ok(rows)
}

/// Three significant figures: `1.00`, `-0.556`, `12.5`, `-118.`, and
/// `0.000` for zero.
pub fn format_sig3(x: f64) -> String {
    if !x.is_finite() {
        return alloc::format!("{x}");
    }
    if x.abs() < 1e-12 {
        return "0.000".to_string();
    }
    let mut e = libm::floor(libm::log10(x.abs())) as i32;
    loop {
        let decimals = (2 - e).max(0) as usize;
        let s = alloc::format!("{x:.decimals$}");
        let rounded: f64 = s.parse().unwrap_or(x);
        if rounded.abs() >= libm::pow(10.0, f64::from(e + 1)) {
            e += 1;
            continue;
        }
        return if decimals == 0 { s + "." } else { s };
    }
}

/// `V(n) = f(n) / (a n + b)^c` with rational `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFormula {
    /// Coefficients of `f`, constant term first, trimmed.
    pub numerator: Vec<BigRational>,
    pub a: i64,
    pub b: i64,
    pub c: u32,
}

impl RationalFormula {
    pub fn degree(&self) -> usize {
        self.numerator.len().saturating_sub(1)
    }

    pub fn eval(&self, n: i64) -> Option<BigRational> {
        let x = BigRational::from_integer(BigInt::from(n));
        let mut f = BigRational::zero();
        for c in self.numerator.iter().rev() {
            f = f * &x + c;
        }
        let den = BigRational::from_integer(num_traits::pow(BigInt::from(self.a * n + self.b), self.c as usize));
        if self.c > 0 && den.is_zero() {
            return None;
        }
        Some(if self.c == 0 { f } else { f / den })
    }

    /// `f = P / L` with integer `P` and positive integer `L`.
    pub fn integer_numerator(&self) -> (Vec<BigInt>, BigInt) {
        let l = self
            .numerator
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let p = self
            .numerator
            .iter()
            .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
            .collect();
        (p, l)
    }
}

fn poly_string(p: &[BigInt]) -> String {
    let mut out = String::new();
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if k == 0 || !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        match k {
            0 => {}
            1 => out.push('n'),
            _ => out.push_str(&alloc::format!("n^{k}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for RationalFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, l) = self.integer_numerator();
        let num = poly_string(&p);
        let nonzero_terms = p.iter().filter(|c| !c.is_zero()).count();
        let mut den = String::new();
        if !l.is_one() {
            den.push_str(&l.to_string());
        }
        if self.c > 0 {
            let lin = poly_string(&[BigInt::from(self.b), BigInt::from(self.a)]);
            den.push_str(&alloc::format!("({lin})"));
            if self.c > 1 {
                den.push_str(&alloc::format!("^{}", self.c));
            }
        }
        if den.is_empty() {
            write!(f, "{num}")
        } else if nonzero_terms > 1 {
            write!(f, "({num})/{den}")
        } else {
            write!(f, "{num}/{den}")
        }
    }
}

/// Coefficients (constant first) of the interpolating polynomial.
pub fn interpolate(points: &[(BigRational, BigRational)]) -> Vec<BigRational> {
    let k = points.len();
    // Newton divided differences
    let mut dd: Vec<BigRational> = points.iter().map(|p| p.1.clone()).collect();
    for level in 1..k {
        for i in (level..k).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&points[i].0 - &points[i - level].0);
        }
    }
    let mut coeffs = vec![BigRational::zero(); k.max(1)];
    // Horner on the Newton form
    for i in (0..k).rev() {
        let x = &points[i].0;
        let mut next = vec![BigRational::zero(); k.max(1)];
        for (j, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j + 1 < next.len() {
                next[j + 1] += c;
            }
            next[j] -= c * x;
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    if coeffs.len() == 1 && coeffs[0].is_zero() {
        coeffs.clear();
    }
    coeffs
}

fn divide_linear(f: &[BigRational], a: i64, b: i64) -> Option<Vec<BigRational>> {
    // f / (a n + b) when exact, by synthetic division at n = -b/a
    if f.is_empty() {
        return Some(Vec::new());
    }
    let r = BigRational::new(BigInt::from(-b), BigInt::from(a));
    let mut q = vec![BigRational::zero(); f.len() - 1];
    let mut carry = BigRational::zero();
    for k in (1..f.len()).rev() {
        carry = &f[k] + &carry * &r;
        q[k - 1] = carry.clone();
    }
    if !(&f[0] + &carry * &r).is_zero() {
        return None;
    }
    let inv_a = BigRational::new(BigInt::one(), BigInt::from(a));
    Some(q.into_iter().map(|c| c * &inv_a).collect())
}

fn candidates() -> Vec<(i64, i64, u32)> {
    let mut out = vec![(0, 0, 0)];
    for c in 1..=5u32 {
        for a in 1..=2i64 {
            for b in -2..=2i64 {
                if a.gcd(&b) == 1 {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

/// Searches `f(n)/(a n + b)^c` with `a, b ∈ {0, ±1, ±2}`, `c ≤ 5`, accepting
/// an exact interpolant of degree at most `#points - 3`.
///
/// Equivalent candidates are merged: `gcd(a, b) = 1`, `a > 0`, constant
/// denominators folded into `c = 0`, and common factors `(a n + b)` cancelled.
pub fn lagrange_guess(points: &[(i64, BigRational)]) -> Result<Vec<RationalFormula>, InterpError> {
    let mut ns: Vec<i64> = points.iter().map(|p| p.0).collect();
    ns.sort_unstable();
    ns.dedup();
    if ns.len() != points.len() || points.len() < 4 {
        return Err(InterpError::TooFewPoints {
            needed: 4,
            got: ns.len(),
        });
    }
    let max_degree = points.len() - 3;
    let mut found: Vec<RationalFormula> = Vec::new();
    for (a, b, c) in candidates() {
        if points.iter().any(|&(n, _)| c > 0 && a * n + b == 0) {
            continue;
        }
        let scaled: Vec<(BigRational, BigRational)> = points
            .iter()
            .map(|(n, v)| {
                let den = num_traits::pow(BigInt::from(a * n + b), c as usize);
                (BigRational::from_integer(BigInt::from(*n)), v * BigRational::from_integer(den))
            })
            .collect();
        let mut f = interpolate(&scaled);
        if f.len().saturating_sub(1) > max_degree {
            continue;
        }
        let mut formula = RationalFormula {
            numerator: f.clone(),
            a,
            b,
            c,
        };
        if !points.iter().all(|(n, v)| formula.eval(*n).as_ref() == Some(v)) {
            continue;
        }
        let mut cc = c;
        while cc > 0 {
            match divide_linear(&f, a, b) {
                Some(q) => {
                    f = q;
                    cc -= 1;
                }
                None => break,
            }
        }
        formula = if cc == 0 {
            RationalFormula {
                numerator: f,
                a: 0,
                b: 0,
                c: 0,
            }
        } else {
            RationalFormula {
                numerator: f,
                a,
                b,
                c: cc,
            }
        };
        if !found.contains(&formula) {
            found.push(formula);
        }
    }
    found.sort_by_key(|f| (f.c, f.a.abs(), f.b.abs(), f.degree(), f.a, f.b));
    Ok(found)
}

/// Which moment to interpolate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Mean,
    Variance,
}

/// `(n, mean)` or `(n, variance)` for every rank.
pub fn target_points(ds: &StatisticDataset, target: Target) -> Result<Vec<(i64, BigRational)>, InterpError> {
    Ok(summarize(ds, 2)?
        .into_iter()
        .map(|r| {
            (
                i64::from(r.n),
                match target {
                    Target::Mean => r.mean,
                    Target::Variance => r.variance,
                },
            )
        })
        .collect())
}

/// Statistics on `S_n` evaluated from enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinStatistic {
    Inv,
    Des,
    Ides,
    DesPlusIdes,
    /// `#{i : π(i) = i}`.
    FixedPoints,
    /// `#{i : π(i) ∈ {i, i + 1}}` with `n + 1` read as `1`.
    CyclicSmallWeakExcedances,
}

impl BuiltinStatistic {
    pub const ALL: [BuiltinStatistic; 6] = [
        BuiltinStatistic::Inv,
        BuiltinStatistic::Des,
        BuiltinStatistic::Ides,
        BuiltinStatistic::DesPlusIdes,
        BuiltinStatistic::FixedPoints,
        BuiltinStatistic::CyclicSmallWeakExcedances,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinStatistic::Inv => "inv",
            BuiltinStatistic::Des => "des",
            BuiltinStatistic::Ides => "ides",
            BuiltinStatistic::DesPlusIdes => "des+ides",
            BuiltinStatistic::FixedPoints => "fixed-points",
            BuiltinStatistic::CyclicSmallWeakExcedances => "cyclic-small-weak-excedances",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name().eq_ignore_ascii_case(name)).or_else(|| {
            name.parse::<Statistic>().ok().map(|s| match s {
                Statistic::Inv => BuiltinStatistic::Inv,
                Statistic::Des => BuiltinStatistic::Des,
                Statistic::Ides => BuiltinStatistic::Ides,
                Statistic::DesPlusIdes => BuiltinStatistic::DesPlusIdes,
            })
        })
    }

    pub fn evaluate(self, w: &SignedPermutation) -> u64 {
        let n = w.len() as i64;
        (match self {
            BuiltinStatistic::Inv => w.statistic(Statistic::Inv),
            BuiltinStatistic::Des => w.statistic(Statistic::Des),
            BuiltinStatistic::Ides => w.statistic(Statistic::Ides),
            BuiltinStatistic::DesPlusIdes => w.statistic(Statistic::DesPlusIdes),
            BuiltinStatistic::FixedPoints => w.fixed_points(),
            BuiltinStatistic::CyclicSmallWeakExcedances => w
                .window()
                .iter()
                .enumerate()
                .filter(|&(i, &v)| (i64::from(v) - 1 - i as i64).rem_euclid(n) <= 1)
                .count(),
        }) as u64
    }
}

/// Histograms of a built-in statistic on `S_n` for each `n` in `ns`.
pub fn generate_dataset(stat: BuiltinStatistic, ns: impl IntoIterator<Item = u32>) -> Result<StatisticDataset, InterpError> {
    let mut ds = StatisticDataset::new(stat.name());
    for n in ns {
        let group = ClassicalGroup::new(ClassicalType::A, n as usize);
        let mut counts: Vec<u64> = Vec::new();
        for w in group.enumerate()? {
            let v = stat.evaluate(&w) as usize;
            if counts.len() <= v {
                counts.resize(v + 1, 0);
            }
            counts[v] += 1;
        }
        ds.insert_histogram(n, ExactPolynomial::from_u64(&counts));
    }
    Ok(ds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, ratio};

    #[test]
    fn sig3_style() {
        let cases = [
            (1.0, "1.00"),
            (0.0, "0.000"),
            (-14.0, "-14.0"),
            (-118.2, "-118."),
            (0.2724, "0.272"),
            (-0.5556, "-0.556"),
            (-1.0902, "-1.09"),
            (9.996, "10.0"),
            (12.47, "12.5"),
            (-0.0713, "-0.0713"),
        ];
        for (x, s) in cases {
            assert_eq!(format_sig3(x), s, "{x}");
        }
    }

    #[test]
    fn uniform_two_point() {
        let mut ds = StatisticDataset::new("coin");
        ds.insert_histogram(1, ExactPolynomial::from_u64(&[1, 1]));
        let rows = summarize(&ds, 8).unwrap();
        assert_eq!(rows[0].mean, ratio(1, 2));
        assert_eq!(rows[0].variance, ratio(1, 4));
        assert_eq!(rows[0].normalized_cumulants.as_ref().unwrap()[0], 0.0);
    }

    #[test]
    fn zero_variance_flagged() {
        let mut ds = StatisticDataset::new("const");
        ds.insert_values(3, vec![2, 2, 2]);
        let rows = summarize(&ds, 8).unwrap();
        assert!(rows[0].zero_variance());
        assert!(rows[0].formatted().is_empty());
    }

    #[test]
    fn length_check() {
        let mut ds = StatisticDataset::new("inv");
        ds.insert_values(4, vec![0; 24]);
        assert!(ds.check_orders(ClassicalType::A).is_ok());
        ds.insert_values(4, vec![0; 23]);
        assert!(matches!(
            ds.check_orders(ClassicalType::A),
            Err(InterpError::LengthMismatch { n: 4, found: 23, .. })
        ));
    }

    #[test]
    fn interpolation_exact() {
        let pts: Vec<_> = (0..5).map(|x| (int(x), int(x * x * x - 2 * x + 7))).collect();
        assert_eq!(interpolate(&pts), vec![int(7), int(-2), int(0), int(1)]);
    }

    #[test]
    fn guesses_constant() {
        let pts: Vec<_> = (2..=8).map(|n| (n, int(1))).collect();
        let g = lagrange_guess(&pts).unwrap();
        assert_eq!(g[0].numerator, vec![int(1)]);
        assert_eq!(g[0].c, 0);
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn guesses_rational() {
        let pts: Vec<_> = (3..=8).map(|n| (n, ratio(2 * (n - 2), n - 1))).collect();
        let g = lagrange_guess(&pts).unwrap();
        assert_eq!((g[0].a, g[0].b, g[0].c), (1, -1, 1));
        assert_eq!(g[0].numerator, vec![int(-4), int(2)]);
        assert_eq!(g[0].to_string(), "(2n - 4)/(n - 1)");
    }

    #[test]
    fn too_few_points() {
        let pts: Vec<_> = (2..=4).map(|n| (n, int(n))).collect();
        assert!(matches!(lagrange_guess(&pts), Err(InterpError::TooFewPoints { .. })));
        let dup = vec![(2, int(1)), (2, int(1)), (3, int(1)), (4, int(1))];
        assert!(lagrange_guess(&dup).is_err());
    }

    #[test]
    fn cyclic_excedances_mean_two() {
        let ds = generate_dataset(BuiltinStatistic::CyclicSmallWeakExcedances, 3..=6).unwrap();
        for row in summarize(&ds, 2).unwrap() {
            assert_eq!(row.mean, int(2));
            assert_eq!(row.variance, ratio(2 * (i64::from(row.n) - 2), i64::from(row.n) - 1));
        }
    }

    #[test]
    fn display_forms() {
        let f = RationalFormula {
            numerator: vec![int(0), ratio(7, 72), ratio(9, 72), ratio(2, 72)],
            a: 0,
            b: 0,
            c: 0,
        };
        assert_eq!(f.to_string(), "(2n^3 + 9n^2 + 7n)/72");
        let g = RationalFormula {
            numerator: vec![int(2)],
            a: 1,
            b: 1,
            c: 2,
        };
        assert_eq!(g.to_string(), "2/(n + 1)^2");
    }
}
