//! Dense polynomials with nonnegative big-integer coefficients, the
//! generating functions built from them, and their negated real roots.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::sync::atomic::{AtomicU8, Ordering};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::elements::ClassicalGroup;
use crate::error::PolyError;
use crate::groups::{CoxeterDescriptor, Family, IrreducibleLabel};
use crate::numeric::{bigint_to_f64, rational_to_f64};
use crate::rootsys::RootSystem;
use crate::Statistic;

/// `Σ a_k z^k`, constant term first, no trailing zeros. The empty vector is
/// the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactPolynomial {
    coeffs: Vec<BigUint>,
}

impl ExactPolynomial {
    pub fn new(mut coeffs: Vec<BigUint>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ExactPolynomial { coeffs }
    }

    pub fn from_u64(coeffs: &[u64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_u64(&[1])
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigUint {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn eval_at_one(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    pub fn mul(&self, other: &ExactPolynomial) -> ExactPolynomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigUint::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &ExactPolynomial) -> ExactPolynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn scale(&self, c: &BigUint) -> ExactPolynomial {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `z^deg f(1/z)`.
    pub fn reversed(&self) -> ExactPolynomial {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// Product of many polynomials.
    pub fn product<'a>(factors: impl IntoIterator<Item = &'a ExactPolynomial>) -> ExactPolynomial {
        factors.into_iter().fold(Self::one(), |acc, f| acc.mul(f))
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| bigint_to_f64(&BigInt::from(c.clone())))
            .collect()
    }

    /// Coefficients as `u64`, when they fit.
    pub fn to_u64_coeffs(&self) -> Option<Vec<u64>> {
        self.coeffs.iter().map(|c| c.to_u64()).collect()
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => f.write_str("z")?,
                1 => write!(f, "{c}z")?,
                _ if c.is_one() => write!(f, "z^{k}")?,
                _ => write!(f, "{c}z^{k}")?,
            }
        }
        Ok(())
    }
}

/// `[d]_z = 1 + z + … + z^{d-1}`.
pub fn z_integer(d: u64) -> ExactPolynomial {
    ExactPolynomial::new(vec![BigUint::one(); d as usize])
}

/// Length generating function `∏ [d_i]_z`.
pub fn gf_inv(d: &CoxeterDescriptor) -> ExactPolynomial {
    d.degrees()
        .into_iter()
        .fold(ExactPolynomial::one(), |acc, deg| acc.mul(&z_integer(deg)))
}

/// Structural properties of a coefficient sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructuralReport {
    pub palindromic: bool,
    pub unimodal: bool,
    /// `a_i² >= a_{i-1} a_{i+1}` for every interior `i`.
    pub log_concave: bool,
    pub no_internal_zeros: bool,
    /// Log-concavity holds only because internal zeros make the
    /// inequalities trivial.
    pub log_concave_vacuous: bool,
}

pub fn structural_checks(f: &ExactPolynomial) -> Result<StructuralReport, PolyError> {
    if f.is_zero() {
        return Err(PolyError::Zero);
    }
    let a = &f.coeffs[f.valuation()..];
    let palindromic = a.iter().eq(a.iter().rev());
    let mut peak = 0;
    while peak + 1 < a.len() && a[peak + 1] >= a[peak] {
        peak += 1;
    }
    let unimodal = a[peak..].windows(2).all(|w| w[0] >= w[1]);
    let log_concave = a.windows(3).all(|w| &w[1] * &w[1] >= &w[0] * &w[2]);
    let no_internal_zeros = a.iter().all(|c| !c.is_zero());
    Ok(StructuralReport {
        palindromic,
        unimodal,
        log_concave,
        no_internal_zeros,
        log_concave_vacuous: log_concave && !no_internal_zeros,
    })
}

/// Eulerian polynomial of `A_n` (permutations of `n + 1` letters) by
/// `A(n,k) = (k+1)A(n-1,k) + (n+1-k)A(n-1,k-1)`.
pub fn eulerian_a(n: usize) -> ExactPolynomial {
    let mut row = vec![BigUint::one()];
    for m in 1..=n {
        let mut next = vec![BigUint::zero(); m + 1];
        for (k, slot) in next.iter_mut().enumerate() {
            if k < row.len() {
                *slot += &row[k] * BigUint::from(k + 1);
            }
            if k >= 1 && k - 1 < row.len() {
                *slot += &row[k - 1] * BigUint::from(m + 1 - k);
            }
        }
        row = next;
    }
    ExactPolynomial::new(row)
}

/// Type-B Eulerian polynomial by
/// `B(n,k) = (2k+1)B(n-1,k) + (2n-2k+1)B(n-1,k-1)`.
pub fn eulerian_b(n: usize) -> ExactPolynomial {
    let mut row = vec![BigUint::one()];
    for m in 1..=n {
        let mut next = vec![BigUint::zero(); m + 1];
        for (k, slot) in next.iter_mut().enumerate() {
            if k < row.len() {
                *slot += &row[k] * BigUint::from(2 * k + 1);
            }
            if k >= 1 && k - 1 < row.len() {
                *slot += &row[k - 1] * BigUint::from(2 * m - 2 * k + 1);
            }
        }
        row = next;
    }
    ExactPolynomial::new(row)
}

/// Type-D Eulerian polynomial, `n >= 2`, from
/// `D_n(z) = B_n(z) - n·2^{n-1}·z·A_{n-2}(z)`.
pub fn eulerian_d(n: usize) -> ExactPolynomial {
    assert!(n >= 2, "type D needs n >= 2");
    let b = eulerian_b(n);
    let a = eulerian_a(n - 2);
    let c = BigUint::from(n) << (n - 1);
    let mut out: Vec<BigInt> = b.coeffs.iter().map(|x| BigInt::from(x.clone())).collect();
    for (k, x) in a.coeffs.iter().enumerate() {
        out[k + 1] -= BigInt::from(x * &c);
    }
    ExactPolynomial::new(
        out.into_iter()
            .map(|x| x.to_biguint().expect("type-D relation produced a negative coefficient"))
            .collect(),
    )
}

/// Where a factor's generating function came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GfSource {
    ClosedForm,
    /// Recurrence, validated against enumeration before first use.
    Recurrence,
    Enumeration,
    Cache,
    /// Recurrence failed validation and enumeration was used instead.
    EnumerationFallback,
}

/// Knobs for generating-function construction.
#[derive(Debug, Clone, Copy)]
pub struct GfOptions {
    /// Permit enumerating `E8`.
    pub allow_e8: bool,
    pub cap: u64,
}

impl Default for GfOptions {
    fn default() -> Self {
        GfOptions {
            allow_e8: false,
            cap: crate::DEFAULT_ENUMERATION_CAP,
        }
    }
}

/// Storage for tallies that are expensive to recompute.
pub trait TallyProvider {
    fn get(&self, label: &IrreducibleLabel, stat: Statistic) -> Option<ExactPolynomial>;
    fn put(&self, label: &IrreducibleLabel, stat: Statistic, poly: &ExactPolynomial);
}

/// A provider that stores nothing.
pub struct NoCache;

impl TallyProvider for NoCache {
    fn get(&self, _: &IrreducibleLabel, _: Statistic) -> Option<ExactPolynomial> {
        None
    }
    fn put(&self, _: &IrreducibleLabel, _: Statistic, _: &ExactPolynomial) {}
}

const UNCHECKED: u8 = 0;
const VALID: u8 = 1;
const INVALID: u8 = 2;
static FAST_PATH_STATE: AtomicU8 = AtomicU8::new(UNCHECKED);

/// Compares the three recurrences against direct enumeration: `A_n` and
/// `B_n` for `n <= 6`, `D_n` for `n ∈ {4,5,6}`.
pub fn validate_fast_paths() -> bool {
    match FAST_PATH_STATE.load(Ordering::Acquire) {
        VALID => return true,
        INVALID => return false,
        _ => {}
    }
    let ok = fast_path_agrees();
    FAST_PATH_STATE.store(if ok { VALID } else { INVALID }, Ordering::Release);
    ok
}

fn fast_path_agrees() -> bool {
    use crate::elements::ClassicalType::{A, B, D};
    let check = |kind, len: usize, poly: ExactPolynomial| {
        ClassicalGroup::new(kind, len)
            .tally(Statistic::Des)
            .map(|h| ExactPolynomial::from_u64(&h) == poly)
            .unwrap_or(false)
    };
    (1..=6).all(|n| check(A, n + 1, eulerian_a(n)))
        && (2..=6).all(|n| check(B, n, eulerian_b(n)))
        && (4..=6).all(|n| check(D, n, eulerian_d(n)))
}

fn enumerate_factor(label: &IrreducibleLabel, stat: Statistic, opts: &GfOptions) -> Result<ExactPolynomial, PolyError> {
    if label.family() == Family::E && label.rank() == 8 && !opts.allow_e8 {
        return Err(PolyError::Infeasible(alloc::format!(
            "{label} has {} elements; pass the E8 override to enumerate it",
            label.order()
        )));
    }
    let cap = if opts.allow_e8 { opts.cap.max(label.order().to_u64().unwrap_or(u64::MAX)) } else { opts.cap };
    if label.is_classical() && label.rank() <= 19 {
        let g = ClassicalGroup::from_label(label)?;
        let o = g.order();
        if o.to_u64().is_some_and(|o| o <= cap) {
            return Ok(ExactPolynomial::from_u64(&g.tally(stat)?));
        }
        return Err(PolyError::Infeasible(alloc::format!("{label} has {o} elements")));
    }
    let rs = RootSystem::build(label)?;
    Ok(ExactPolynomial::from_u64(&rs.statistics_tally(stat, cap)?))
}

fn des_factor(
    label: &IrreducibleLabel,
    opts: &GfOptions,
    provider: &dyn TallyProvider,
) -> Result<(ExactPolynomial, GfSource), PolyError> {
    let n = label.rank() as usize;
    if let Some(m) = label.dihedral_parameter() {
        return Ok((ExactPolynomial::from_u64(&[1, 2 * u64::from(m) - 2, 1]), GfSource::ClosedForm));
    }
    if label.is_classical() {
        if validate_fast_paths() {
            let poly = match label.family() {
                Family::A => eulerian_a(n),
                Family::B => eulerian_b(n),
                _ => eulerian_d(n),
            };
            return Ok((poly, GfSource::Recurrence));
        }
        return Ok((enumerate_factor(label, Statistic::Des, opts)?, GfSource::EnumerationFallback));
    }
    cached_enumeration(label, Statistic::Des, opts, provider)
}

fn cached_enumeration(
    label: &IrreducibleLabel,
    stat: Statistic,
    opts: &GfOptions,
    provider: &dyn TallyProvider,
) -> Result<(ExactPolynomial, GfSource), PolyError> {
    if let Some(p) = provider.get(label, stat) {
        return Ok((p, GfSource::Cache));
    }
    let p = enumerate_factor(label, stat, opts)?;
    provider.put(label, stat, &p);
    Ok((p, GfSource::Enumeration))
}

/// Descent generating function.
pub fn gf_des(d: &CoxeterDescriptor) -> Result<ExactPolynomial, PolyError> {
    gf_des_with(d, &GfOptions::default(), &NoCache).map(|(p, _)| p)
}

/// Descent generating function with a source tag per factor.
pub fn gf_des_with(
    d: &CoxeterDescriptor,
    opts: &GfOptions,
    provider: &dyn TallyProvider,
) -> Result<(ExactPolynomial, Vec<GfSource>), PolyError> {
    let mut acc = ExactPolynomial::one();
    let mut sources = Vec::new();
    for f in d.factors() {
        let (p, src) = des_factor(f, opts, provider)?;
        acc = acc.mul(&p);
        sources.push(src);
    }
    Ok((acc, sources))
}

/// Generating function of `des + ides`.
pub fn gf_des_plus_ides(d: &CoxeterDescriptor) -> Result<ExactPolynomial, PolyError> {
    gf_des_plus_ides_with(d, &GfOptions::default(), &NoCache).map(|(p, _)| p)
}

pub fn gf_des_plus_ides_with(
    d: &CoxeterDescriptor,
    opts: &GfOptions,
    provider: &dyn TallyProvider,
) -> Result<(ExactPolynomial, Vec<GfSource>), PolyError> {
    let mut acc = ExactPolynomial::one();
    let mut sources = Vec::new();
    for f in d.factors() {
        let (p, src) = if let Some(m) = f.dihedral_parameter() {
            (ExactPolynomial::from_u64(&[1, 0, 2 * u64::from(m) - 2, 0, 1]), GfSource::ClosedForm)
        } else if f.family() == Family::A && f.rank() == 1 {
            (ExactPolynomial::from_u64(&[1, 0, 1]), GfSource::ClosedForm)
        } else {
            cached_enumeration(f, Statistic::DesPlusIdes, opts, provider)?
        };
        acc = acc.mul(&p);
        sources.push(src);
    }
    Ok((acc, sources))
}

/// Generating function of any supported statistic. `ides` is
/// equidistributed with `des`.
pub fn gf(d: &CoxeterDescriptor, stat: Statistic, opts: &GfOptions, provider: &dyn TallyProvider) -> Result<ExactPolynomial, PolyError> {
    match stat {
        Statistic::Inv => Ok(gf_inv(d)),
        Statistic::Des | Statistic::Ides => gf_des_with(d, opts, provider).map(|(p, _)| p),
        Statistic::DesPlusIdes => gf_des_plus_ides_with(d, opts, provider).map(|(p, _)| p),
    }
}

/// The numbers `q_i > 0` with `f(z) = lead·∏(z + q_i)`, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct RootBag {
    pub roots: Vec<f64>,
    /// Largest `|f(-q)| / Σ a_j q^j` over the roots.
    pub residual_bound: f64,
    /// Largest relative coefficient error of `lead·∏(z + q_i)`.
    pub reconstruction_error: f64,
}

impl RootBag {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// `Σ 1/(1+q_i)`.
    pub fn mean(&self) -> f64 {
        self.roots.iter().map(|q| 1.0 / (1.0 + q)).sum()
    }

    /// `Σ q_i/(1+q_i)²`.
    pub fn variance(&self) -> f64 {
        self.roots.iter().map(|q| q / ((1.0 + q) * (1.0 + q))).sum()
    }
}

type QPoly = Vec<BigRational>;

fn q_trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn q_derivative(p: &QPoly) -> QPoly {
    q_trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
            .collect(),
    )
}

fn q_divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    (q_trim(q), q_trim(r))
}

fn q_monic(p: QPoly) -> QPoly {
    match p.last().cloned() {
        Some(l) => p.into_iter().map(|c| c / &l).collect(),
        None => p,
    }
}

fn q_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let (_, r) = q_divrem(&x, &y);
        x = y;
        y = q_monic(r);
    }
    q_monic(x)
}

fn q_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let len = a.len().max(b.len());
    q_trim(
        (0..len)
            .map(|k| a.get(k).cloned().unwrap_or_default() - b.get(k).cloned().unwrap_or_default())
            .collect(),
    )
}

/// Yun's squarefree decomposition: pairs `(factor, multiplicity)`.
fn squarefree(f: &QPoly) -> Vec<(QPoly, usize)> {
    let fp = q_derivative(f);
    if fp.is_empty() {
        return Vec::new();
    }
    let a0 = q_gcd(f, &fp);
    let mut b = q_divrem(f, &a0).0;
    let c = q_divrem(&fp, &a0).0;
    let mut d = q_sub(&c, &q_derivative(&b));
    let mut out = Vec::new();
    let mut i = 1;
    while b.len() > 1 {
        let a = q_gcd(&b, &d);
        let b_next = q_divrem(&b, &a).0;
        let c_next = q_divrem(&d, &a).0;
        d = q_sub(&c_next, &q_derivative(&b_next));
        if a.len() > 1 {
            out.push((a, i));
        }
        b = b_next;
        i += 1;
    }
    out
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

fn derivative_f64(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(k, a)| a * k as f64).collect()
}

fn bisect(c: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = horner(c, lo);
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = horner(c, mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    if horner(c, lo).abs() <= horner(c, hi).abs() {
        lo
    } else {
        hi
    }
}

/// Real roots of `c` inside `(lo, hi)`, isolated between the real roots of
/// its derivative.
fn real_roots_in(c: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    match c.len() {
        0 | 1 => return Vec::new(),
        2 => {
            let r = -c[0] / c[1];
            return if r > lo && r < hi { vec![r] } else { Vec::new() };
        }
        _ => {}
    }
    let crit = real_roots_in(&derivative_f64(c), lo, hi);
    let mut points = vec![lo];
    points.extend(crit);
    points.push(hi);
    let mut out = Vec::new();
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (fa, fb) = (horner(c, a), horner(c, b));
        if fa == 0.0 && a > lo {
            if out.last() != Some(&a) {
                out.push(a);
            }
            continue;
        }
        if fb == 0.0 {
            continue;
        }
        if (fa < 0.0) != (fb < 0.0) {
            out.push(bisect(c, a, b));
        }
    }
    if let Some(&last) = points.last() {
        if last < hi && horner(c, last) == 0.0 && out.last() != Some(&last) {
            out.push(last);
        }
    }
    out
}

/// Finds `q_1 <= … <= q_n` with `f(z) = lead·∏(z + q_i)`.
pub fn negated_real_roots(f: &ExactPolynomial, tol: f64) -> Result<RootBag, PolyError> {
    if f.is_zero() {
        return Err(PolyError::Zero);
    }
    if f.coeffs.iter().any(|c| c.is_zero()) {
        return Err(PolyError::NonPositive);
    }
    let degree = f.degree();
    let qf: QPoly = f
        .coeffs
        .iter()
        .map(|c| BigRational::from_integer(BigInt::from(c.clone())))
        .collect();
    let mut roots: Vec<f64> = Vec::with_capacity(degree);
    let pieces = if degree == 0 { Vec::new() } else { squarefree(&qf) };
    for (g, mult) in &pieces {
        let scale = g.iter().map(|c| c.abs()).max().unwrap_or_else(BigRational::one);
        let gc: Vec<f64> = g.iter().map(|c| rational_to_f64(&(c / &scale))).collect();
        let lead = gc[gc.len() - 1].abs();
        let bound = 1.0 + gc[..gc.len() - 1].iter().map(|a| (a / lead).abs()).fold(0.0, f64::max);
        let found = real_roots_in(&gc, -bound * 1.0001, 0.0);
        for r in found {
            for _ in 0..*mult {
                roots.push(-r);
            }
        }
    }
    if roots.len() < degree {
        return Err(PolyError::NotRealRooted {
            found: roots.len(),
            degree,
            tol,
        });
    }
    roots.sort_by(|a, b| a.total_cmp(b));
    let report = structural_checks(f)?;
    if report.palindromic {
        let n = roots.len();
        for i in 0..n / 2 {
            roots[n - 1 - i] = 1.0 / roots[i];
        }
    }
    let fc = f.to_f64_coeffs();
    let mut residual: f64 = 0.0;
    for &q in &roots {
        let value = horner(&fc, -q).abs();
        let scale = horner(&fc, q);
        residual = residual.max(value / scale);
    }
    let mut prod = vec![1.0f64];
    for &q in &roots {
        let mut next = vec![0.0; prod.len() + 1];
        for (k, &a) in prod.iter().enumerate() {
            next[k] += a * q;
            next[k + 1] += a;
        }
        prod = next;
    }
    let lead = fc[degree];
    let mut recon: f64 = 0.0;
    for (k, &a) in fc.iter().enumerate() {
        recon = recon.max((lead * prod[k] - a).abs() / a);
    }
    if residual > tol || recon > 10.0 * tol {
        return Err(PolyError::NotRealRooted {
            found: roots.len(),
            degree,
            tol,
        });
    }
    Ok(RootBag {
        roots,
        residual_bound: residual,
        reconstruction_error: recon,
    })
}

/// Success probabilities `p_i = 1/(1+q_i)` of the Bernoulli summands.
pub fn bernoulli_parameters(rb: &RootBag) -> Vec<f64> {
    rb.roots.iter().map(|q| 1.0 / (1.0 + q)).collect()
}

/// Coefficients as signed big integers.
pub fn signed_coeffs(f: &ExactPolynomial) -> Vec<BigInt> {
    f.coeffs
        .iter()
        .map(|c| BigInt::from_biguint(Sign::Plus, c.clone()))
        .collect()
}

/// Decimal strings, constant term first.
pub fn coeff_strings(f: &ExactPolynomial) -> Vec<alloc::string::String> {
    if f.is_zero() {
        return vec!["0".to_string()];
    }
    f.coeffs.iter().map(|c| c.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> CoxeterDescriptor {
        s.parse().unwrap()
    }

    #[test]
    fn inv_examples() {
        assert_eq!(gf_inv(&d("A2")), ExactPolynomial::from_u64(&[1, 2, 2, 1]));
        assert_eq!(gf_inv(&CoxeterDescriptor::trivial()), ExactPolynomial::one());
        let m = 7;
        let expect = z_integer(2).mul(&z_integer(m));
        assert_eq!(gf_inv(&d("I2(7)")), expect);
    }

    #[test]
    fn des_examples() {
        assert_eq!(gf_des(&d("A2")).unwrap(), ExactPolynomial::from_u64(&[1, 4, 1]));
        assert_eq!(gf_des(&d("I2(4)")).unwrap(), ExactPolynomial::from_u64(&[1, 6, 1]));
        assert_eq!(gf_des(&d("A1 x A1")).unwrap(), ExactPolynomial::from_u64(&[1, 2, 1]));
        assert_eq!(gf_des(&d("A3")).unwrap(), ExactPolynomial::from_u64(&[1, 11, 11, 1]));
        assert_eq!(gf_des(&d("B3")).unwrap(), ExactPolynomial::from_u64(&[1, 23, 23, 1]));
        assert_eq!(gf_des(&d("D4")).unwrap(), ExactPolynomial::from_u64(&[1, 44, 102, 44, 1]));
    }

    #[test]
    fn recurrences_validate() {
        assert!(validate_fast_paths());
    }

    #[test]
    fn e8_needs_override() {
        assert!(matches!(gf_des(&d("E8")), Err(PolyError::Infeasible(_))));
    }

    #[test]
    fn structure() {
        let r = structural_checks(&gf_des(&d("B4")).unwrap()).unwrap();
        assert!(r.palindromic && r.unimodal && r.log_concave && r.no_internal_zeros);
        let r = structural_checks(&ExactPolynomial::from_u64(&[1, 0, 0, 1])).unwrap();
        assert!(!r.no_internal_zeros && r.log_concave_vacuous && !r.unimodal);
        let r = structural_checks(&gf_inv(&d("H4"))).unwrap();
        assert!(r.unimodal && r.log_concave);
        assert!(structural_checks(&ExactPolynomial::zero()).is_err());
    }

    #[test]
    fn quadratic_roots() {
        let rb = negated_real_roots(&ExactPolynomial::from_u64(&[1, 4, 1]), 1e-12).unwrap();
        let s3 = libm::sqrt(3.0);
        assert!((rb.roots[0] - (2.0 - s3)).abs() < 1e-14);
        assert!((rb.roots[1] - (2.0 + s3)).abs() < 1e-12);
        let p = bernoulli_parameters(&rb);
        assert!((p[0] - 0.7887).abs() < 1e-4 && (p[1] - 0.2113).abs() < 1e-4);
    }

    #[test]
    fn repeated_roots() {
        let f = ExactPolynomial::product(&vec![ExactPolynomial::from_u64(&[1, 1]); 6]);
        let rb = negated_real_roots(&f, 1e-12).unwrap();
        assert_eq!(rb.roots.len(), 6);
        assert!(rb.roots.iter().all(|&q| (q - 1.0).abs() < 1e-12));
        assert!(bernoulli_parameters(&rb).iter().all(|&p| (p - 0.5).abs() < 1e-12));
    }

    #[test]
    fn not_real_rooted() {
        let f = ExactPolynomial::from_u64(&[1, 1, 1]);
        assert!(matches!(negated_real_roots(&f, 1e-12), Err(PolyError::NotRealRooted { .. })));
    }

    #[test]
    fn squarefree_parts() {
        let f = ExactPolynomial::from_u64(&[1, 1])
            .mul(&ExactPolynomial::from_u64(&[1, 1]))
            .mul(&ExactPolynomial::from_u64(&[2, 1]));
        let q: QPoly = f.coeffs.iter().map(|c| BigRational::from_integer(BigInt::from(c.clone()))).collect();
        let parts = squarefree(&q);
        let mults: Vec<usize> = parts.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![1, 2]);
    }

    #[test]
    fn d_relation_small_cases() {
        assert_eq!(eulerian_d(2), ExactPolynomial::from_u64(&[1, 2, 1]));
        assert_eq!(eulerian_d(3), eulerian_a(3));
    }
}
