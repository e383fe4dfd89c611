//! Limit-theorem diagnostics for sequences of finite Coxeter groups.
//!
//! A [`SequenceSpec`] is a rule `n ↦ W⁽ⁿ⁾` written in a small grammar:
//!
//! ```text
//! spec   := term ('x' term)*
//! term   := factor ('^' atom)?
//! factor := FAMILY '(' expr ')' | FAMILY INT | I2 '(' expr ')'
//!         | 'prod' '(' spec ',' IDENT '=' expr '..' expr ')'
//! expr   := sum of products of powers over integers, n and bound indices
//! ```
//!
//! Inside `prod(..)` a dihedral factor `I2(m)` is taken formally for every
//! `m >= 1` (degrees `{2, m}`), which is what the classical examples need for
//! their first terms. At top level `I2(m)` still requires `m >= 3`.
//!
//! Verdicts from finite ranges are diagnostics, not proofs.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::LimitError;
use crate::groups::{CoxeterDescriptor, Family, IrreducibleLabel};
use crate::moments::moments_from_polynomial;
use crate::numeric::{rational_sqrt_f64, rational_to_f64};
use crate::polynomials::{bernoulli_parameters, gf_des, negated_real_roots, ExactPolynomial};
use crate::Statistic;

/// One factor of `W⁽ⁿ⁾`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LimitFactor {
    /// A non-dihedral irreducible label (including `A1`, `A2`, `B2`).
    Classical(IrreducibleLabel),
    /// `I2(m)` with `m` possibly huge; `m = 1, 2` only arise inside `prod`.
    Dihedral(BigUint),
}

impl LimitFactor {
    pub fn from_label(label: &IrreducibleLabel) -> Self {
        match label.dihedral_parameter() {
            Some(m) => LimitFactor::Dihedral(BigUint::from(m)),
            None => LimitFactor::Classical(*label),
        }
    }

    pub fn rank(&self) -> u64 {
        match self {
            LimitFactor::Classical(l) => u64::from(l.rank()),
            LimitFactor::Dihedral(_) => 2,
        }
    }

    pub fn degrees(&self) -> Vec<BigUint> {
        match self {
            LimitFactor::Classical(l) => l.degrees().into_iter().map(BigUint::from).collect(),
            LimitFactor::Dihedral(m) => vec![BigUint::from(2u8), m.clone()],
        }
    }

    pub fn max_degree(&self) -> BigUint {
        self.degrees().into_iter().max().unwrap_or_default()
    }

    pub fn m_max(&self) -> Option<BigUint> {
        match self {
            LimitFactor::Classical(l) => l.m_max().map(BigUint::from),
            LimitFactor::Dihedral(m) => Some(m.clone()),
        }
    }

    /// Rank-two components count as dihedral.
    pub fn is_dihedral(&self) -> bool {
        self.rank() == 2
    }

    /// `(1/12)Σ(d² - 1)`.
    pub fn inv_variance(&self) -> BigRational {
        let s: BigInt = self
            .degrees()
            .iter()
            .map(|d| BigInt::from(d * d) - BigInt::one())
            .sum();
        BigRational::new(s, BigInt::from(12))
    }

    /// `(n-2)/12 + 1/m`, or `1/4` in rank one.
    pub fn des_variance(&self) -> BigRational {
        match self.m_max() {
            None => BigRational::new(BigInt::one(), BigInt::from(4)),
            Some(m) => {
                let n = self.rank() as i64;
                BigRational::new(BigInt::from(n - 2), BigInt::from(12))
                    + BigRational::new(BigInt::one(), BigInt::from(m))
            }
        }
    }
}

impl fmt::Display for LimitFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitFactor::Classical(l) => write!(f, "{l}"),
            LimitFactor::Dihedral(m) => write!(f, "I2({m})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Expr {
    Num(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum FactorAst {
    Family { family: Family, arg: Expr, position: usize },
    Prod { body: Box<SpecAst>, var: String, lo: Expr, hi: Expr },
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Term {
    factor: FactorAst,
    power: Option<Expr>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct SpecAst {
    terms: Vec<Term>,
}

type Env = BTreeMap<String, BigInt>;

fn eval_expr(e: &Expr, env: &Env, n: i64) -> Result<BigInt, LimitError> {
    let semantic = |message: String| LimitError::Semantic { n, message };
    Ok(match e {
        Expr::Num(v) => v.clone(),
        Expr::Var(name) => env
            .get(name)
            .cloned()
            .ok_or_else(|| semantic(alloc::format!("unbound variable '{name}'")))?,
        Expr::Neg(a) => -eval_expr(a, env, n)?,
        Expr::Add(a, b) => eval_expr(a, env, n)? + eval_expr(b, env, n)?,
        Expr::Sub(a, b) => eval_expr(a, env, n)? - eval_expr(b, env, n)?,
        Expr::Mul(a, b) => eval_expr(a, env, n)? * eval_expr(b, env, n)?,
        Expr::Pow(a, b) => {
            let base = eval_expr(a, env, n)?;
            let exp = eval_expr(b, env, n)?;
            let exp = exp
                .to_u32()
                .filter(|&k| k <= 100_000)
                .ok_or_else(|| semantic(alloc::format!("exponent {exp} out of range")))?;
            num_traits::pow(base, exp as usize)
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    DotDot,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, LimitError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Num(text[start..i].parse().unwrap()), start));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_alphabetic() {
                i += 1;
            }
            // a family letter glued to a rank or I2, e.g. "A5", "I2(": split after one letter
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if c == '.' && bytes.get(i + 1) == Some(&b'.') {
            out.push((Tok::DotDot, i));
            i += 2;
        } else if "()^,=+-*".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(LimitError::Parse {
                position: i,
                message: alloc::format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.len)
    }

    fn err(&self, message: &str) -> LimitError {
        LimitError::Parse {
            position: self.offset(),
            message: message.to_string(),
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), LimitError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.err(&alloc::format!("expected '{c}'")))
        }
    }

    fn is_times(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s.eq_ignore_ascii_case("x"))
    }

    fn spec(&mut self) -> Result<SpecAst, LimitError> {
        let mut terms = vec![self.term()?];
        while self.is_times() {
            self.pos += 1;
            terms.push(self.term()?);
        }
        Ok(SpecAst { terms })
    }

    fn term(&mut self) -> Result<Term, LimitError> {
        let factor = self.factor()?;
        let power = if self.eat_sym('^') { Some(self.atom()?) } else { None };
        Ok(Term { factor, power })
    }

    fn factor(&mut self) -> Result<FactorAst, LimitError> {
        let position = self.offset();
        let word = match self.peek() {
            Some(Tok::Ident(w)) => w.clone(),
            _ => return Err(self.err("expected a family or 'prod'")),
        };
        self.pos += 1;
        if word.eq_ignore_ascii_case("prod") {
            self.expect_sym('(')?;
            let body = self.spec()?;
            self.expect_sym(',')?;
            let var = match self.peek() {
                Some(Tok::Ident(v)) if !v.eq_ignore_ascii_case("x") => v.clone(),
                _ => return Err(self.err("expected an index variable")),
            };
            self.pos += 1;
            self.expect_sym('=')?;
            let lo = self.expr()?;
            if self.peek() != Some(&Tok::DotDot) {
                return Err(self.err("expected '..'"));
            }
            self.pos += 1;
            let hi = self.expr()?;
            self.expect_sym(')')?;
            return Ok(FactorAst::Prod {
                body: Box::new(body),
                var,
                lo,
                hi,
            });
        }
        let family = match word.to_ascii_uppercase().as_str() {
            "A" => Family::A,
            "B" => Family::B,
            "D" => Family::D,
            "E" => Family::E,
            "F" => Family::F,
            "H" => Family::H,
            "I" => Family::I2,
            _ => {
                self.pos -= 1;
                return Err(self.err(&alloc::format!("unknown family '{word}'")));
            }
        };
        if family == Family::I2 {
            match self.peek() {
                Some(Tok::Num(v)) if *v == BigInt::from(2) => self.pos += 1,
                _ => return Err(self.err("expected I2(m)")),
            }
            self.expect_sym('(')?;
            let arg = self.expr()?;
            self.expect_sym(')')?;
            return Ok(FactorAst::Family { family, arg, position });
        }
        let arg = match self.peek() {
            Some(Tok::Num(v)) => {
                let v = v.clone();
                self.pos += 1;
                Expr::Num(v)
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect_sym(')')?;
                e
            }
            _ => return Err(self.err("expected a rank")),
        };
        Ok(FactorAst::Family { family, arg, position })
    }

    fn expr(&mut self) -> Result<Expr, LimitError> {
        let mut lhs = self.product()?;
        loop {
            if self.eat_sym('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat_sym('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr, LimitError> {
        let mut lhs = self.power()?;
        while self.eat_sym('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
        }
        Ok(lhs)
    }

    fn power(&mut self) -> Result<Expr, LimitError> {
        let base = self.atom()?;
        if self.eat_sym('^') {
            let exp = self.power()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, LimitError> {
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(Expr::Num(v))
            }
            Some(Tok::Ident(name)) if !name.eq_ignore_ascii_case("x") => {
                self.pos += 1;
                Ok(Expr::Var(name))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.atom()?)))
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

/// A parsed rule `n ↦ W⁽ⁿ⁾`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceSpec {
    source: String,
    ast: SpecAst,
}

const MAX_FACTORS: usize = 1_000_000;

fn eval_spec(ast: &SpecAst, env: &mut Env, n: i64, nested: bool, out: &mut Vec<LimitFactor>) -> Result<(), LimitError> {
    for term in &ast.terms {
        let copies = match &term.power {
            None => 1usize,
            Some(e) => {
                let k = eval_expr(e, env, n)?;
                if k.is_negative() {
                    return Err(LimitError::Semantic {
                        n,
                        message: alloc::format!("negative exponent {k}"),
                    });
                }
                k.to_usize().filter(|&k| k <= MAX_FACTORS).ok_or(LimitError::Semantic {
                    n,
                    message: "too many factors".to_string(),
                })?
            }
        };
        let mut one = Vec::new();
        match &term.factor {
            FactorAst::Family { family, arg, position } => {
                let v = eval_expr(arg, env, n)?;
                let semantic = |message: String| LimitError::Semantic { n, message };
                if *family == Family::I2 {
                    let min = if nested { 1 } else { 3 };
                    if v < BigInt::from(min) {
                        return Err(semantic(alloc::format!(
                            "I2({v}) is not allowed here (column {position}); dihedral parameters need m >= {min}"
                        )));
                    }
                    one.push(LimitFactor::Dihedral(v.to_biguint().unwrap()));
                } else {
                    let rank = v
                        .to_u32()
                        .ok_or_else(|| semantic(alloc::format!("rank {v} out of range")))?;
                    let label = IrreducibleLabel::new(*family, rank).map_err(|e| semantic(e.to_string()))?;
                    one.push(LimitFactor::Classical(label));
                }
            }
            FactorAst::Prod { body, var, lo, hi } => {
                let lo = eval_expr(lo, env, n)?;
                let hi = eval_expr(hi, env, n)?;
                let mut i = lo;
                let saved = env.get(var).cloned();
                while i <= hi {
                    env.insert(var.clone(), i.clone());
                    eval_spec(body, env, n, true, &mut one)?;
                    if one.len() > MAX_FACTORS {
                        return Err(LimitError::Semantic {
                            n,
                            message: "too many factors".to_string(),
                        });
                    }
                    i += 1;
                }
                match saved {
                    Some(v) => env.insert(var.clone(), v),
                    None => env.remove(var),
                };
            }
        }
        if one.len().saturating_mul(copies) > MAX_FACTORS {
            return Err(LimitError::Semantic {
                n,
                message: "too many factors".to_string(),
            });
        }
        for _ in 0..copies {
            out.extend(one.iter().cloned());
        }
    }
    Ok(())
}

impl SequenceSpec {
    pub fn parse(text: &str) -> Result<Self, LimitError> {
        let toks = tokenize(text)?;
        if toks.is_empty() {
            return Err(LimitError::Parse {
                position: 0,
                message: "empty sequence specification".to_string(),
            });
        }
        let mut p = Parser {
            toks,
            pos: 0,
            len: text.len(),
        };
        let ast = p.spec()?;
        if p.pos != p.toks.len() {
            return Err(p.err("trailing input"));
        }
        Ok(SequenceSpec {
            source: text.to_string(),
            ast,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// The factors of `W⁽ⁿ⁾`.
    pub fn evaluate(&self, n: i64) -> Result<Vec<LimitFactor>, LimitError> {
        let mut env = Env::new();
        env.insert("n".to_string(), BigInt::from(n));
        let mut out = Vec::new();
        eval_spec(&self.ast, &mut env, n, false, &mut out)?;
        Ok(out)
    }

    /// `W⁽ⁿ⁾` as a descriptor, when every factor is an ordinary label.
    pub fn descriptor(&self, n: i64) -> Result<CoxeterDescriptor, LimitError> {
        let factors = self.evaluate(n)?;
        let mut labels = Vec::new();
        for f in factors {
            let label = match f {
                LimitFactor::Classical(l) => l,
                LimitFactor::Dihedral(m) => m
                    .to_u32()
                    .and_then(|m| IrreducibleLabel::dihedral(m).ok())
                    .ok_or_else(|| LimitError::Semantic {
                        n,
                        message: alloc::format!("I2({m}) has no ordinary label"),
                    })?,
            };
            labels.push(label);
        }
        Ok(CoxeterDescriptor::new(labels))
    }

    /// Closed-form families the checkers can classify exactly.
    pub fn recognize(&self) -> Option<Family_> {
        let [term] = self.ast.terms.as_slice() else {
            return None;
        };
        if term.power.is_some() {
            return None;
        }
        match &term.factor {
            FactorAst::Family { family, arg, .. } => {
                if !matches!(family, Family::A | Family::B | Family::D) {
                    return None;
                }
                let env_at = |n: i64| {
                    let mut env = Env::new();
                    env.insert("n".to_string(), BigInt::from(n));
                    eval_expr(arg, &env, n).ok()
                };
                let vals: Option<Vec<BigInt>> = (1..=8).map(env_at).collect();
                let vals = vals?;
                if vals.windows(2).all(|w| w[1] > w[0]) {
                    Some(Family_::GrowingClassical(*family))
                } else {
                    None
                }
            }
            FactorAst::Prod { body, var, lo, hi } => {
                let [inner] = body.terms.as_slice() else {
                    return None;
                };
                if inner.power.is_some() || *hi != Expr::Var("n".to_string()) {
                    return None;
                }
                let FactorAst::Family {
                    family: Family::I2,
                    arg,
                    ..
                } = &inner.factor
                else {
                    return None;
                };
                let lo = eval_expr(lo, &Env::new(), 0).ok()?;
                let g = |i: &BigInt| {
                    let mut env = Env::new();
                    env.insert(var.clone(), i.clone());
                    eval_expr(arg, &env, 0).ok()
                };
                let samples: Option<Vec<BigInt>> = (0..16).map(|k| g(&(&lo + BigInt::from(k)))).collect();
                classify_parameter(&samples?).map(Family_::DihedralProduct)
            }
        }
    }
}

/// A recognized sequence shape.
#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family_ {
    /// `A(n)`, `B(n)`, `D(n)` with increasing rank.
    GrowingClassical(Family),
    /// `prod(I2(g(i)), i=c..n)`.
    DihedralProduct(ParameterGrowth),
}

/// Growth of the dihedral parameter `g(i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParameterGrowth {
    Polynomial { degree: u32 },
    Exponential { base: u64 },
}

fn classify_parameter(vals: &[BigInt]) -> Option<ParameterGrowth> {
    if vals.iter().any(|v| !v.is_positive()) {
        return None;
    }
    let mut diffs = vals.to_vec();
    for degree in 0..8u32 {
        if diffs.windows(2).all(|w| w[0] == w[1]) {
            return Some(ParameterGrowth::Polynomial { degree });
        }
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let b = &vals[1] / &vals[0];
    if b >= BigInt::from(2) && vals.windows(2).all(|w| &w[0] * &b == w[1]) {
        return b.to_u64().map(|base| ParameterGrowth::Exponential { base });
    }
    None
}

/// Qualitative trend over a finite range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    TendsToZero,
    TendsToInfinity,
    Bounded,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::TendsToZero => "tends_to_zero",
            Verdict::TendsToInfinity => "tends_to_infinity",
            Verdict::Bounded => "bounded",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Samples of a positive quantity with a fitted power law and a verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct TrendReport {
    pub samples: Vec<(i64, f64)>,
    /// Least-squares slope of `ln value` against `ln n`.
    pub fitted_exponent: f64,
    pub verdict: Verdict,
    pub rationale: String,
}

pub const MIN_TREND_POINTS: usize = 6;

/// Applies the fixed thresholds: zero if the last value is below half the
/// first and the exponent is below -0.1; infinity symmetrically (twice, above
/// 0.1); bounded if the exponent lies in [-0.05, 0.05] and the last quartile
/// spreads by less than 10%.
pub fn classify_trend(samples: Vec<(i64, f64)>) -> TrendReport {
    let len = samples.len();
    let positive = samples.iter().all(|(n, v)| *n > 0 && *v > 0.0 && v.is_finite());
    let fitted_exponent = if len >= 2 && positive {
        let xs: Vec<f64> = samples.iter().map(|(n, _)| libm::log(*n as f64)).collect();
        let ys: Vec<f64> = samples.iter().map(|(_, v)| libm::log(*v)).collect();
        let mx = xs.iter().sum::<f64>() / len as f64;
        let my = ys.iter().sum::<f64>() / len as f64;
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        if sxx > 0.0 {
            sxy / sxx
        } else {
            f64::NAN
        }
    } else {
        f64::NAN
    };
    let (verdict, rationale) = if len < MIN_TREND_POINTS {
        (
            Verdict::Inconclusive,
            alloc::format!("only {len} points; at least {MIN_TREND_POINTS} are needed"),
        )
    } else if !positive {
        (Verdict::Inconclusive, "nonpositive or non-finite values".to_string())
    } else {
        let first = samples[0].1;
        let last = samples[len - 1].1;
        let quart = &samples[len - len.div_ceil(4)..];
        let hi = quart.iter().map(|s| s.1).fold(f64::MIN, f64::max);
        let lo = quart.iter().map(|s| s.1).fold(f64::MAX, f64::min);
        let spread = (hi - lo) / hi;
        let e = fitted_exponent;
        if last < 0.5 * first && e < -0.1 {
            (
                Verdict::TendsToZero,
                alloc::format!("last/first = {:.4}, exponent {e:.3}", last / first),
            )
        } else if last > 2.0 * first && e > 0.1 {
            (
                Verdict::TendsToInfinity,
                alloc::format!("last/first = {:.4}, exponent {e:.3}", last / first),
            )
        } else if (-0.05..=0.05).contains(&e) && spread < 0.1 {
            (
                Verdict::Bounded,
                alloc::format!("exponent {e:.3}, last-quartile spread {:.2}%", 100.0 * spread),
            )
        } else {
            (
                Verdict::Inconclusive,
                alloc::format!(
                    "last/first = {:.4}, exponent {e:.3}, last-quartile spread {:.2}%",
                    last / first,
                    100.0 * spread
                ),
            )
        }
    };
    TrendReport {
        samples,
        fitted_exponent,
        verdict,
        rationale,
    }
}

/// Exact data of `W⁽ⁿ⁾` for the Mahonian criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct InvPoint {
    pub n: i64,
    pub rank: u64,
    pub max_degree: BigUint,
    pub m_max: Option<BigUint>,
    pub variance: BigRational,
}

impl InvPoint {
    /// `d_n / s_n`.
    pub fn ratio(&self) -> f64 {
        ratio_over_s(&self.max_degree, &self.variance)
    }

    /// `m_n / s_n`.
    pub fn m_ratio(&self) -> f64 {
        self.m_max.as_ref().map_or(f64::NAN, |m| ratio_over_s(m, &self.variance))
    }
}

fn ratio_over_s(x: &BigUint, var: &BigRational) -> f64 {
    if var.is_zero() {
        return f64::INFINITY;
    }
    let sq = BigRational::from_integer(BigInt::from(x * x)) / var;
    rational_sqrt_f64(&sq)
}

fn m_max_of(factors: &[LimitFactor]) -> Option<BigUint> {
    let rank: u64 = factors.iter().map(|f| f.rank()).sum();
    if rank < 2 {
        return None;
    }
    let within = factors.iter().filter_map(|f| f.m_max()).max();
    let across = (factors.len() >= 2).then(|| BigUint::from(2u8));
    within.into_iter().chain(across).max()
}

pub fn inv_point(spec: &SequenceSpec, n: i64) -> Result<InvPoint, LimitError> {
    let factors = spec.evaluate(n)?;
    Ok(InvPoint {
        n,
        rank: factors.iter().map(|f| f.rank()).sum(),
        max_degree: factors.iter().map(|f| f.max_degree()).max().unwrap_or_default(),
        m_max: m_max_of(&factors),
        variance: factors.iter().map(|f| f.inv_variance()).sum(),
    })
}

/// Exact data of `W⁽ⁿ⁾` for the Eulerian criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct DesPoint {
    pub n: i64,
    pub rank: u64,
    pub variance: BigRational,
    /// Rank of the non-dihedral component.
    pub non_dihedral_rank: u64,
    /// `Σ 1/m` over the dihedral components.
    pub inverse_m_sum: BigRational,
}

pub fn des_point(spec: &SequenceSpec, n: i64) -> Result<DesPoint, LimitError> {
    let factors = spec.evaluate(n)?;
    let mut inverse_m_sum = BigRational::zero();
    for f in factors.iter().filter(|f| f.is_dihedral()) {
        if let Some(m) = f.m_max() {
            inverse_m_sum += BigRational::new(BigInt::one(), BigInt::from(m));
        }
    }
    Ok(DesPoint {
        n,
        rank: factors.iter().map(|f| f.rank()).sum(),
        variance: factors.iter().map(|f| f.des_variance()).sum(),
        non_dihedral_rank: factors.iter().filter(|f| !f.is_dihedral()).map(|f| f.rank()).sum(),
        inverse_m_sum,
    })
}

fn check_range(range: (i64, i64)) -> Result<(), LimitError> {
    if range.1 < range.0 {
        Err(LimitError::EmptyRange)
    } else {
        Ok(())
    }
}

/// Outcome of the Mahonian criterion `d_n/s_n → 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct InvCltReport {
    pub spec: String,
    pub points: Vec<InvPoint>,
    /// `d_n / s_n`.
    pub ratio: TrendReport,
    /// `m_n / s_n`, which has the same limit behaviour.
    pub m_ratio: TrendReport,
    /// Exact classification for recognized families.
    pub symbolic: Option<Verdict>,
    /// Symbolic verdict if any, else the numeric one.
    pub verdict: Verdict,
    pub clt_holds: Option<bool>,
    pub rank_increasing: bool,
    pub rank_equals_n: bool,
}

fn rank_flags(points: impl Iterator<Item = (i64, u64)> + Clone) -> (bool, bool) {
    let ranks: Vec<(i64, u64)> = points.collect();
    let increasing = ranks.windows(2).all(|w| w[1].1 > w[0].1);
    let equals_n = ranks.iter().all(|(n, r)| *n >= 0 && *r == *n as u64);
    (increasing, equals_n)
}

pub fn clt_check_inv(spec: &SequenceSpec, range: (i64, i64)) -> Result<InvCltReport, LimitError> {
    check_range(range)?;
    let points = (range.0..=range.1)
        .map(|n| inv_point(spec, n))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(inv_report(spec, points))
}

/// Assembles a report from points computed elsewhere, e.g. in parallel.
pub fn inv_report(spec: &SequenceSpec, points: Vec<InvPoint>) -> InvCltReport {
    let ratio = classify_trend(points.iter().map(|p| (p.n, p.ratio())).collect());
    let m_ratio = classify_trend(points.iter().map(|p| (p.n, p.m_ratio())).collect());
    let symbolic = match spec.recognize() {
        Some(Family_::GrowingClassical(_)) => Some(Verdict::TendsToZero),
        Some(Family_::DihedralProduct(ParameterGrowth::Polynomial { .. })) => Some(Verdict::TendsToZero),
        Some(Family_::DihedralProduct(ParameterGrowth::Exponential { .. })) => Some(Verdict::Bounded),
        None => None,
    };
    let verdict = symbolic.unwrap_or(ratio.verdict);
    let (rank_increasing, rank_equals_n) = rank_flags(points.iter().map(|p| (p.n, p.rank)));
    InvCltReport {
        spec: spec.source.clone(),
        points,
        clt_holds: clt_from(verdict, Verdict::TendsToZero),
        ratio,
        m_ratio,
        symbolic,
        verdict,
        rank_increasing,
        rank_equals_n,
    }
}

fn clt_from(verdict: Verdict, good: Verdict) -> Option<bool> {
    match verdict {
        Verdict::Inconclusive => None,
        v => Some(v == good),
    }
}

/// Which of the conditions (A1), (A2), (B) are observed over the range.
#[derive(Debug, Clone, PartialEq)]
pub struct DihedralConditions {
    /// Non-dihedral rank tends to infinity.
    pub a1: bool,
    /// Non-dihedral rank keeps reaching new maxima.
    pub a2: bool,
    /// `Σ 1/m_i` diverges.
    pub b: bool,
    pub non_dihedral_rank: TrendReport,
    pub inverse_m_sums: TrendReport,
}

/// Outcome of the Eulerian criterion `s_n → ∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct DesCltReport {
    pub spec: String,
    pub points: Vec<DesPoint>,
    /// `s_n`.
    pub s: TrendReport,
    pub symbolic: Option<Verdict>,
    pub verdict: Verdict,
    pub clt_holds: Option<bool>,
    pub conditions: DihedralConditions,
    /// `[(A1) or (B)] ⇒ s_n → ∞ ⇒ [(A2) or (B)]` observed on this range.
    pub implications_consistent: bool,
    pub rank_increasing: bool,
    pub rank_equals_n: bool,
}

pub fn clt_check_des(spec: &SequenceSpec, range: (i64, i64)) -> Result<DesCltReport, LimitError> {
    check_range(range)?;
    let points = (range.0..=range.1)
        .map(|n| des_point(spec, n))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(des_report(spec, points))
}

pub fn des_report(spec: &SequenceSpec, points: Vec<DesPoint>) -> DesCltReport {
    let s = classify_trend(points.iter().map(|p| (p.n, rational_sqrt_f64(&p.variance))).collect());
    let recognized = spec.recognize();
    let symbolic = match recognized {
        Some(Family_::GrowingClassical(_)) => Some(Verdict::TendsToInfinity),
        Some(Family_::DihedralProduct(ParameterGrowth::Polynomial { degree })) if degree <= 1 => {
            Some(Verdict::TendsToInfinity)
        }
        Some(Family_::DihedralProduct(_)) => Some(Verdict::Bounded),
        None => None,
    };
    let verdict = symbolic.unwrap_or(s.verdict);
    let rank_trend = classify_trend(points.iter().map(|p| (p.n, p.non_dihedral_rank as f64)).collect());
    let sums = classify_trend(points.iter().map(|p| (p.n, rational_to_f64(&p.inverse_m_sum))).collect());
    let a1 = rank_trend.verdict == Verdict::TendsToInfinity;
    let a2 = {
        let r: Vec<u64> = points.iter().map(|p| p.non_dihedral_rank).collect();
        let cut = r.len() - r.len().div_ceil(4);
        cut > 0 && r[cut..].iter().max() > r[..cut].iter().max()
    };
    let b = match recognized {
        Some(Family_::DihedralProduct(ParameterGrowth::Polynomial { degree })) => degree <= 1,
        Some(Family_::DihedralProduct(ParameterGrowth::Exponential { .. })) => false,
        _ => sums.verdict == Verdict::TendsToInfinity,
    };
    let diverges = verdict == Verdict::TendsToInfinity;
    let implications_consistent = (!(a1 || b) || diverges) && (!diverges || a2 || b);
    let (rank_increasing, rank_equals_n) = rank_flags(points.iter().map(|p| (p.n, p.rank)));
    DesCltReport {
        spec: spec.source.clone(),
        points,
        s,
        symbolic,
        clt_holds: clt_from(verdict, Verdict::TendsToInfinity),
        verdict,
        conditions: DihedralConditions {
            a1,
            a2,
            b,
            non_dihedral_rank: rank_trend,
            inverse_m_sums: sums,
        },
        implications_consistent,
        rank_increasing,
        rank_equals_n,
    }
}

/// Variances of the independent summands and the Lindeberg/maximum
/// quantities of the triangular-array decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct LindebergReport {
    pub statistic: Statistic,
    pub epsilon: f64,
    pub summand_variances: Vec<f64>,
    pub total_variance: f64,
    /// `max_i V(summand_i) / s²`.
    pub max_ratio: f64,
    /// `(1/s²) Σ E[Y_i² ; |Y_i| > ε s]` for the centred summands `Y_i`.
    pub lindeberg_sum: f64,
    /// Exact values, available for `inv`.
    pub exact: Option<ExactLindeberg>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactLindeberg {
    pub summand_variances: Vec<BigRational>,
    pub total_variance: BigRational,
    pub max_ratio: BigRational,
    pub lindeberg_sum: BigRational,
}

/// `Σ_{t=0}^{T} (p + 2t)²`.
fn sum_squares_step_two(p: &BigUint, count: &BigUint) -> BigUint {
    if count.is_zero() {
        return BigUint::zero();
    }
    let t = count - 1u8;
    let two = BigUint::from(2u8);
    let s1 = &t * (&t + 1u8) / &two;
    let s2 = &t * (&t + 1u8) * (&two * &t + 1u8) / BigUint::from(6u8);
    count * p * p + BigUint::from(4u8) * p * s1 + BigUint::from(4u8) * s2
}

/// Exact Lindeberg data for independent uniform summands on `{0..d-1}`.
pub fn lindeberg_uniform(degrees: &[BigUint], epsilon: &BigRational) -> Result<ExactLindeberg, LimitError> {
    let summand_variances: Vec<BigRational> = degrees
        .iter()
        .map(|d| BigRational::new(BigInt::from(d * d) - 1, BigInt::from(12)))
        .collect();
    let total: BigRational = summand_variances.iter().cloned().sum();
    if total.is_zero() {
        return Err(LimitError::Degenerate("total variance is zero".to_string()));
    }
    let max_ratio = summand_variances.iter().max().cloned().unwrap_or_default() / &total;
    // |Y| > ε s  ⇔  j² > 4ε²s²  with j = |2k - (d - 1)|
    let bound = BigRational::from_integer(BigInt::from(4)) * epsilon * epsilon * &total;
    let floor = bound.floor().to_integer().to_biguint().unwrap_or_default();
    let j0 = floor.sqrt() + 1u8;
    let mut tail = BigRational::zero();
    for d in degrees {
        if d.is_zero() {
            continue;
        }
        let top = d - 1u8;
        if j0 > top {
            continue;
        }
        let p = if (&top - &j0) % 2u8 == BigUint::zero() { j0.clone() } else { &j0 + 1u8 };
        if p > top {
            continue;
        }
        let count = (&top - &p) / 2u8 + 1u8;
        let s = sum_squares_step_two(&p, &count);
        tail += BigRational::new(BigInt::from(s), BigInt::from(d * 2u8));
    }
    Ok(ExactLindeberg {
        summand_variances,
        lindeberg_sum: tail / &total,
        total_variance: total,
        max_ratio,
    })
}

/// Lindeberg data for independent Bernoulli summands with parameters `p`.
pub fn lindeberg_bernoulli(p: &[f64], epsilon: f64) -> (Vec<f64>, f64, f64, f64) {
    let vars: Vec<f64> = p.iter().map(|p| p * (1.0 - p)).collect();
    let total: f64 = vars.iter().sum();
    let s = libm::sqrt(total);
    let max = vars.iter().cloned().fold(0.0, f64::max);
    let mut tail = 0.0;
    for &pi in p {
        let q = 1.0 - pi;
        if q > epsilon * s {
            tail += q * q * pi;
        }
        if pi > epsilon * s {
            tail += pi * pi * q;
        }
    }
    let sum = if total > 0.0 { tail / total } else { f64::NAN };
    let ratio = if total > 0.0 { max / total } else { f64::NAN };
    (vars, total, ratio, sum)
}

/// Triangular-array diagnostics for `inv` (uniform summands from the
/// degrees) or `des` (Bernoulli summands from the roots of the descent
/// generating function).
pub fn triangular_array_diagnostics(
    d: &CoxeterDescriptor,
    stat: Statistic,
    epsilon: f64,
) -> Result<LindebergReport, LimitError> {
    match stat {
        Statistic::Inv => {
            let eps = BigRational::from_float(epsilon)
                .ok_or_else(|| LimitError::Degenerate("epsilon must be finite".to_string()))?;
            let degrees: Vec<BigUint> = d.degrees().into_iter().map(BigUint::from).collect();
            let exact = lindeberg_uniform(&degrees, &eps)?;
            Ok(LindebergReport {
                statistic: stat,
                epsilon,
                summand_variances: exact.summand_variances.iter().map(rational_to_f64).collect(),
                total_variance: rational_to_f64(&exact.total_variance),
                max_ratio: rational_to_f64(&exact.max_ratio),
                lindeberg_sum: rational_to_f64(&exact.lindeberg_sum),
                exact: Some(exact),
            })
        }
        Statistic::Des => {
            let f = gf_des(d)?;
            if f.degree() == 0 {
                return Err(LimitError::Degenerate("trivial group".to_string()));
            }
            let roots = negated_real_roots(&f, 1e-12)?;
            let p = bernoulli_parameters(&roots);
            let (summand_variances, total_variance, max_ratio, lindeberg_sum) = lindeberg_bernoulli(&p, epsilon);
            Ok(LindebergReport {
                statistic: stat,
                epsilon,
                summand_variances,
                total_variance,
                max_ratio,
                lindeberg_sum,
                exact: None,
            })
        }
        other => Err(LimitError::Degenerate(alloc::format!(
            "no triangular-array decomposition for {other}"
        ))),
    }
}

/// Supremum distance between the rescaled point probabilities and the
/// standard normal density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LltReport {
    pub distance: f64,
    /// Where the supremum is approached.
    pub argmax: f64,
    /// Point mass: `s = 0` and the distance is `1/√(2π)` by convention.
    pub degenerate: bool,
}

fn phi(x: f64) -> f64 {
    libm::exp(-0.5 * x * x) / libm::sqrt(2.0 * core::f64::consts::PI)
}

/// `sup_x |s·p(⌊s x + μ⌋) - φ(x)|`, evaluated on the finitely many places
/// where the supremum can occur: both ends of every step and `x = 0`.
pub fn llt_sup_distance(f: &ExactPolynomial) -> Result<LltReport, LimitError> {
    let summary = moments_from_polynomial(f, 2).map_err(|_| LimitError::Degenerate("zero polynomial".to_string()))?;
    if summary.variance.is_zero() {
        return Ok(LltReport {
            distance: phi(0.0),
            argmax: 0.0,
            degenerate: true,
        });
    }
    let s = rational_sqrt_f64(&summary.variance);
    let mu = rational_to_f64(&summary.mean);
    let total = BigInt::from(f.eval_at_one());
    let deg = f.degree() as i64;
    let prob = |k: i64| -> f64 {
        if k < 0 || k > deg {
            0.0
        } else {
            rational_to_f64(&BigRational::new(
                BigInt::from_biguint(Sign::Plus, f.coeff(k as usize)),
                total.clone(),
            ))
        }
    };
    let x = |k: i64| (k as f64 - mu) / s;
    let mut best = (0.0f64, 0.0f64);
    let mut consider = |value: f64, at: f64| {
        let d = (value - phi(at)).abs();
        if d > best.0 {
            best = (d, at);
        }
    };
    // left tail (-∞, x_0) and right tail [x_{deg+1}, ∞), where p = 0
    let x0 = x(0);
    consider(0.0, if x0 > 0.0 { 0.0 } else { x0 });
    let xr = x(deg + 1);
    consider(0.0, if xr < 0.0 { 0.0 } else { xr });
    for k in 0..=deg {
        let c = s * prob(k);
        let (a, b) = (x(k), x(k + 1));
        consider(c, a);
        consider(c, b);
        if a <= 0.0 && 0.0 < b {
            consider(c, 0.0);
        }
    }
    Ok(LltReport {
        distance: best.0,
        argmax: best.1,
        degenerate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ratio;
    use crate::polynomials::gf_inv;

    fn spec(s: &str) -> SequenceSpec {
        SequenceSpec::parse(s).unwrap()
    }

    #[test]
    fn inverse_square_dihedral_variance() {
        let p = des_point(&spec("prod(I2(i^2), i=1..n)"), 100).unwrap();
        let basel: f64 = (1..=100).map(|i| 1.0 / f64::from(i * i)).sum();
        let s2 = p.variance.to_f64().unwrap();
        assert!((s2 - basel).abs() < 1e-12);
        assert!((s2 - 1.6350).abs() < 1e-4);
        assert!((s2 - core::f64::consts::PI.powi(2) / 6.0).abs() < 1e-2);
    }

    #[test]
    fn llt_b30_regression() {
        let d = CoxeterDescriptor::irreducible(IrreducibleLabel::b(30).unwrap());
        let r = llt_sup_distance(&crate::polynomials::gf_des(&d).unwrap()).unwrap();
        assert!((r.distance - 0.144348).abs() < 1e-6, "{}", r.distance);
    }

    #[test]
    fn parses_examples() {
        let s = spec("prod(I2(i), i=1..n)");
        let f = s.evaluate(4).unwrap();
        assert_eq!(f.len(), 4);
        assert_eq!(f[3], LimitFactor::Dihedral(BigUint::from(4u8)));
        let s = spec("A1^(n-2) x I2(n)");
        let f = s.evaluate(6).unwrap();
        assert_eq!(f.len(), 5);
        assert_eq!(f.iter().map(|x| x.rank()).sum::<u64>(), 6);
        assert_eq!(spec("A(n)").evaluate(5).unwrap()[0], LimitFactor::Classical(IrreducibleLabel::a(5).unwrap()));
        let big = spec("prod(I2(2^i), i=1..n)").evaluate(200).unwrap();
        assert_eq!(big[199], LimitFactor::Dihedral(BigUint::from(1u8) << 200usize));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(SequenceSpec::parse("prod(I2(i), i=1..)"), Err(LimitError::Parse { .. })));
        assert!(matches!(SequenceSpec::parse("Q(n)"), Err(LimitError::Parse { .. })));
        assert!(SequenceSpec::parse("").is_err());
        assert!(matches!(spec("I2(2)").evaluate(3), Err(LimitError::Semantic { .. })));
        assert!(matches!(spec("I2(n)").evaluate(2), Err(LimitError::Semantic { n: 2, .. })));
        assert!(matches!(spec("D(n)").evaluate(3), Err(LimitError::Semantic { .. })));
    }

    #[test]
    fn recognizes_families() {
        assert_eq!(spec("B(n)").recognize(), Some(Family_::GrowingClassical(Family::B)));
        assert_eq!(
            spec("prod(I2(i^2), i=1..n)").recognize(),
            Some(Family_::DihedralProduct(ParameterGrowth::Polynomial { degree: 2 }))
        );
        assert_eq!(
            spec("prod(I2(2^i), i=1..n)").recognize(),
            Some(Family_::DihedralProduct(ParameterGrowth::Exponential { base: 2 }))
        );
        assert_eq!(spec("A1^(n-2) x I2(n)").recognize(), None);
    }

    #[test]
    fn trend_thresholds() {
        let pts = |f: &dyn Fn(f64) -> f64| (10..=40).map(|n| (n, f(n as f64))).collect::<Vec<_>>();
        assert_eq!(classify_trend(pts(&|n| 1.0 / n)).verdict, Verdict::TendsToZero);
        assert_eq!(classify_trend(pts(&|n| n)).verdict, Verdict::TendsToInfinity);
        assert_eq!(classify_trend(pts(&|n| 3.0 + 1.0 / n)).verdict, Verdict::Bounded);
        assert_eq!(classify_trend(pts(&|n| n)[..5].to_vec()).verdict, Verdict::Inconclusive);
    }

    #[test]
    fn max_ratio_a5() {
        let d: CoxeterDescriptor = "A5".parse().unwrap();
        let r = triangular_array_diagnostics(&d, Statistic::Inv, 0.5).unwrap();
        let e = r.exact.unwrap();
        assert_eq!(e.max_ratio, ratio(35, 85));
        assert_eq!(e.total_variance, crate::moments::mahonian_moments(&d).1);
    }

    #[test]
    fn bernoulli_lindeberg_vanishes() {
        // centred Bernoulli summands are bounded by 1, so ε s >= 1 leaves no tail
        let d: CoxeterDescriptor = "B5".parse().unwrap();
        let r = triangular_array_diagnostics(&d, Statistic::Des, 0.01).unwrap();
        let s = libm::sqrt(r.total_variance);
        assert!(r.lindeberg_sum > 0.0);
        assert!((r.total_variance - rational_to_f64(&crate::moments::eulerian_moments(&d).1)).abs() < 1e-9);
        let r = triangular_array_diagnostics(&d, Statistic::Des, 1.0 / s + 1e-9).unwrap();
        assert_eq!(r.lindeberg_sum, 0.0);
    }

    #[test]
    fn llt_point_mass() {
        let r = llt_sup_distance(&ExactPolynomial::one()).unwrap();
        assert!(r.degenerate);
        assert!((r.distance - 0.398_942_280_401_432_7).abs() < 1e-15);
    }

    #[test]
    fn llt_scaling_and_palindromic_reversal() {
        for p in [gf_inv(&"A4 x I2(5)".parse().unwrap()), ExactPolynomial::from_u64(&[1, 3, 7, 2])] {
            let a = llt_sup_distance(&p).unwrap().distance;
            let c = llt_sup_distance(&p.scale(&BigUint::from(7u8))).unwrap().distance;
            assert!((a - c).abs() < 1e-12);
        }
        let f = gf_inv(&"B3".parse().unwrap());
        let a = llt_sup_distance(&f).unwrap().distance;
        assert_eq!(a, llt_sup_distance(&f.reversed()).unwrap().distance);
    }

    #[test]
    fn llt_two_point() {
        // 1 + z: μ = 1/2, s = 1/2, steps of height 1/4 on [-1, 1) and [1, 3)
        let r = llt_sup_distance(&ExactPolynomial::from_u64(&[1, 1])).unwrap();
        let expected = 0.25 - libm::exp(-4.5) / libm::sqrt(2.0 * core::f64::consts::PI);
        assert!((r.distance - expected).abs() < 1e-15, "{r:?} {expected}");
        assert_eq!(r.argmax, 3.0);
    }
}
