//! Exact means, variances, moments and cumulants.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::MomentError;
use crate::groups::{CoxeterDescriptor, IrreducibleLabel};
use crate::numeric::{int, rational_to_f64, ratio};
use crate::polynomials::{gf_inv, ExactPolynomial};

pub use crate::numeric::ExactRational;

/// Mean, variance and higher moments of a finite distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionSummary {
    pub mean: ExactRational,
    pub variance: ExactRational,
    /// Central moments of orders `2..=k_max`.
    pub central_moments: Vec<ExactRational>,
    /// Cumulants of orders `2..=k_max`.
    pub cumulants: Vec<ExactRational>,
    /// `κ_k / s^k` for orders `3..=k_max`; `None` when the variance is zero.
    pub normalized_cumulants: Option<Vec<f64>>,
}

impl DistributionSummary {
    pub fn k_max(&self) -> usize {
        self.cumulants.len() + 1
    }

    pub fn central_moment(&self, k: usize) -> Option<&ExactRational> {
        k.checked_sub(2).and_then(|i| self.central_moments.get(i))
    }

    pub fn cumulant(&self, k: usize) -> Option<&ExactRational> {
        k.checked_sub(2).and_then(|i| self.cumulants.get(i))
    }

    pub fn normalized_cumulant(&self, k: usize) -> Option<f64> {
        let v = self.normalized_cumulants.as_ref()?;
        k.checked_sub(3).and_then(|i| v.get(i)).copied()
    }
}

fn sum_degrees(d: &CoxeterDescriptor, f: impl Fn(i64) -> i64) -> BigInt {
    d.degrees().into_iter().map(|x| BigInt::from(f(x as i64))).sum()
}

fn sum_degrees_big(d: &CoxeterDescriptor, power: u32) -> BigInt {
    d.degrees()
        .into_iter()
        .map(|x| num_traits::pow(BigInt::from(x), power as usize) - BigInt::one())
        .sum()
}

/// `(½Σ(d_k - 1), (1/12)Σ(d_k² - 1))`.
pub fn mahonian_moments(d: &CoxeterDescriptor) -> (ExactRational, ExactRational) {
    let mean = BigRational::new(sum_degrees(d, |x| x - 1), BigInt::from(2));
    let var = BigRational::new(sum_degrees(d, |x| x * x - 1), BigInt::from(12));
    (mean, var)
}

/// Cumulants `κ_1..=κ_k` of the inversion number. Orders up to six use
/// the closed forms; beyond that they come from the generating function.
pub fn mahonian_cumulants(d: &CoxeterDescriptor, k: usize) -> Result<Vec<ExactRational>, MomentError> {
    if k > 6 {
        let s = moments_from_polynomial(&gf_inv(d), k)?;
        let mut out = vec![s.mean];
        out.extend(s.cumulants);
        return Ok(out);
    }
    let (mean, var) = mahonian_moments(d);
    let mut out = vec![mean, var];
    for order in 3..=k {
        out.push(match order {
            4 => -BigRational::new(sum_degrees_big(d, 4), BigInt::from(120)),
            6 => BigRational::new(sum_degrees_big(d, 6), BigInt::from(252)),
            _ => BigRational::zero(),
        });
    }
    out.truncate(k);
    Ok(out)
}

fn eulerian_factor(f: &IrreducibleLabel) -> (ExactRational, ExactRational) {
    let n = i64::from(f.rank());
    match f.m_max() {
        None => (ratio(1, 2), ratio(1, 4)),
        Some(m) => (ratio(n, 2), ratio(n - 2, 12) + ratio(1, m as i64)),
    }
}

/// Mean and variance of the descent number, summed over factors.
pub fn eulerian_moments(d: &CoxeterDescriptor) -> (ExactRational, ExactRational) {
    d.factors().iter().fold((int(0), int(0)), |(m, v), f| {
        let (fm, fv) = eulerian_factor(f);
        (m + fm, v + fv)
    })
}

/// Mean and variance of `des + ides`: per factor `n` and `2V(des) + n/h`.
pub fn double_eulerian_moments(d: &CoxeterDescriptor) -> (ExactRational, ExactRational) {
    d.factors().iter().fold((int(0), int(0)), |(m, v), f| {
        let n = i64::from(f.rank());
        let h = f.coxeter_number() as i64;
        let (_, dv) = eulerian_factor(f);
        (m + int(n), v + dv * int(2) + ratio(n, h))
    })
}

fn binomials(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::one()]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![BigInt::one(); i + 1];
        for j in 1..i {
            row[j] = &prev[j - 1] + &prev[j];
        }
        rows.push(row);
    }
    rows
}

/// Cumulants of orders `1..=k` from central moments `m_0 = 1, m_1 = 0, …`.
fn cumulants_from_central(m: &[ExactRational], k: usize) -> Vec<ExactRational> {
    let c = binomials(k);
    let mut kappa: Vec<ExactRational> = vec![BigRational::zero(); k + 1];
    for n in 2..=k {
        let mut v = m[n].clone();
        for j in 2..n {
            if !m[n - j].is_zero() {
                v -= BigRational::from_integer(c[n - 1][j - 1].clone()) * &kappa[j] * &m[n - j];
            }
        }
        kappa[n] = v;
    }
    kappa
}

fn normalized(kappa: &ExactRational, var: &ExactRational, k: usize) -> f64 {
    let half = k / 2;
    let denom = num_traits::pow(var.clone(), half);
    let base = rational_to_f64(&(kappa / denom));
    if k % 2 == 1 {
        base / libm::sqrt(rational_to_f64(var))
    } else {
        base
    }
}

/// Exact summary of the distribution `P(X = k) = a_k / f(1)`.
pub fn moments_from_polynomial(f: &ExactPolynomial, k_max: usize) -> Result<DistributionSummary, MomentError> {
    if f.is_zero() {
        return Err(MomentError::Empty);
    }
    let k_max = k_max.max(2);
    let total = BigInt::from(f.eval_at_one());
    let coeffs: Vec<BigInt> = f.coeffs().iter().map(|c| BigInt::from(c.clone())).collect();
    let weighted: BigInt = coeffs.iter().enumerate().map(|(k, a)| a * BigInt::from(k)).sum();
    let mean = BigRational::new(weighted, total.clone());
    let den = mean.denom().clone();
    let num = mean.numer().clone();
    // (k - μ)·den is an integer, so central moments are integer sums over den^j·total
    let shifted: Vec<BigInt> = (0..coeffs.len())
        .map(|k| BigInt::from(k) * &den - &num)
        .collect();
    let mut central = vec![BigRational::one(), BigRational::zero()];
    let mut powers: Vec<BigInt> = shifted.clone();
    let mut den_power = den.clone();
    for _ in 2..=k_max {
        for (p, s) in powers.iter_mut().zip(&shifted) {
            *p *= s;
        }
        den_power *= &den;
        let s: BigInt = powers.iter().zip(&coeffs).map(|(p, a)| p * a).sum();
        central.push(BigRational::new(s, &den_power * &total));
    }
    let kappa = cumulants_from_central(&central, k_max);
    let variance = central[2].clone();
    let normalized_cumulants = if variance.is_zero() {
        None
    } else {
        Some((3..=k_max).map(|k| normalized(&kappa[k], &variance, k)).collect())
    };
    Ok(DistributionSummary {
        mean,
        variance,
        central_moments: central[2..].to_vec(),
        cumulants: kappa[2..].to_vec(),
        normalized_cumulants,
    })
}

/// `Σ_{s,t} |W_s \ W / W_t| = |W|·n(nh+2)/(4h)` for an irreducible group.
pub fn double_coset_sum(label: &IrreducibleLabel) -> Result<BigUint, MomentError> {
    let n = BigUint::from(label.rank());
    let h = BigUint::from(label.coxeter_number());
    let num = label.order() * &n * (&n * &h + BigUint::from(2u8));
    let den = BigUint::from(4u8) * &h;
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(MomentError::NonIntegral(alloc::format!("{num}/{den}")));
    }
    Ok(q)
}

/// `E(inv²)` on `B_n`: `n⁴/4 + (4n³ + 6n² - n)/36`.
pub fn second_moment_inv_type_b(n: u32) -> Result<ExactRational, MomentError> {
    if n < 2 {
        return Err(MomentError::RankTooSmall(2));
    }
    let n = i64::from(n);
    Ok(ratio(n.pow(4), 4) + ratio(4 * n.pow(3) + 6 * n * n - n, 36))
}

/// Normalized cumulants `κ_k/s^k` as reals for `k` in `3..=k_max`, from
/// exact cumulants.
pub fn normalize_cumulants(cumulants: &[ExactRational], variance: &ExactRational) -> Option<Vec<f64>> {
    if variance.is_zero() || variance.is_negative() {
        return None;
    }
    Some(
        cumulants
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| normalized(c, variance, i + 2))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomials::gf_des;

    fn d(s: &str) -> CoxeterDescriptor {
        s.parse().unwrap()
    }

    #[test]
    fn mahonian_examples() {
        assert_eq!(mahonian_moments(&d("E6")), (int(18), int(29)));
        assert_eq!(mahonian_moments(&d("H4")), (int(30), ratio(361, 3)));
        assert_eq!(mahonian_moments(&CoxeterDescriptor::trivial()), (int(0), int(0)));
    }

    #[test]
    fn cumulant_examples() {
        let a1 = mahonian_cumulants(&d("A1"), 6).unwrap();
        assert_eq!(a1[3], ratio(-1, 8));
        let m = 9i64;
        let i2 = mahonian_cumulants(&d("I2(9)"), 6).unwrap();
        assert_eq!(i2[3], -ratio(m.pow(4) + 14, 120));
        assert!(i2[2].is_zero() && i2[4].is_zero());
    }

    #[test]
    fn eulerian_examples() {
        assert_eq!(eulerian_moments(&d("F4")).1, ratio(5, 12));
        assert_eq!(eulerian_moments(&d("H3")).1, ratio(17, 60));
        assert_eq!(eulerian_moments(&d("A1")), (ratio(1, 2), ratio(1, 4)));
    }

    #[test]
    fn double_eulerian_examples() {
        assert_eq!(double_eulerian_moments(&d("E7")).1, ratio(17, 9));
        assert_eq!(double_eulerian_moments(&d("I2(11)")).1, ratio(4, 11));
        assert_eq!(double_eulerian_moments(&d("B4")).1, ratio(4, 3));
        assert_eq!(double_eulerian_moments(&d("A1")), (int(1), int(1)));
    }

    #[test]
    fn from_polynomial() {
        let s = moments_from_polynomial(&ExactPolynomial::from_u64(&[1, 1]), 4).unwrap();
        assert_eq!((s.mean.clone(), s.variance.clone()), (ratio(1, 2), ratio(1, 4)));
        let s = moments_from_polynomial(&gf_inv(&d("B3")), 4).unwrap();
        assert_eq!(s.variance, ratio(53, 12));
        let s = moments_from_polynomial(&gf_des(&d("A5")).unwrap(), 4).unwrap();
        assert_eq!(s.variance, ratio(7, 12));
        assert!(moments_from_polynomial(&ExactPolynomial::zero(), 4).is_err());
        let point = moments_from_polynomial(&ExactPolynomial::one(), 4).unwrap();
        assert!(point.normalized_cumulants.is_none());
    }

    #[test]
    fn bernoulli_cumulants() {
        // κ_4 of a fair coin is -1/8.
        let s = moments_from_polynomial(&ExactPolynomial::from_u64(&[1, 1]), 6).unwrap();
        assert_eq!(s.cumulant(4), Some(&ratio(-1, 8)));
        assert_eq!(s.cumulant(3), Some(&int(0)));
    }

    #[test]
    fn coset_sums() {
        assert_eq!(double_coset_sum(d("A2").as_irreducible().unwrap()).unwrap(), BigUint::from(8u8));
        assert_eq!(double_coset_sum(d("I2(3)").as_irreducible().unwrap()).unwrap(), BigUint::from(8u8));
        assert_eq!(double_coset_sum(d("B3").as_irreducible().unwrap()).unwrap(), BigUint::from(120u8));
    }

    #[test]
    fn type_b_second_moment() {
        // B2 lengths: 0, 1, 1, 2, 2, 3, 3, 4
        assert_eq!(second_moment_inv_type_b(2).unwrap(), ratio(1 + 1 + 4 + 4 + 9 + 9 + 16, 8));
        assert_eq!(second_moment_inv_type_b(3).unwrap(), ratio(81, 4) + ratio(159, 36));
        for n in 2..=10u32 {
            let (m, v) = mahonian_moments(&d(&alloc::format!("B{n}")));
            assert_eq!(second_moment_inv_type_b(n).unwrap(), v + &m * &m);
        }
        assert!(second_moment_inv_type_b(1).is_err());
    }
}
