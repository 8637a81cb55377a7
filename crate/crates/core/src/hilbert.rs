//! Hilbert series: exact closed forms, their expansions, and graded
//! dimensions measured from the algebras themselves.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::envelope::Mode;
use crate::error::{Error, Result};
use crate::expr::Evaluator;
use crate::morphlab::EnvMorphism;
use crate::named;
use crate::scalars::{RatFunc, Rational, UniPoly};
use crate::twisted::{algebra_q, algebra_r, algebra_s, graded_intersection, ModulePieces, Side, Subalgebra};

/// `num(t) / den(t)` with integer coefficients and `den(0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    num: UniPoly,
    den: UniPoly,
}

impl RationalSeries {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        let d0 = den.constant_term();
        if num_traits::Zero::is_zero(&d0) {
            return Err(Error::SeriesError);
        }
        let inv = <Rational as num_traits::One>::one() / &d0;
        let (num, den) = (num.scale(&inv), den.scale(&inv));
        if !integral(&num) || !integral(&den) {
            return Err(Error::SeriesError);
        }
        Ok(RationalSeries { num, den })
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    /// Coefficients of `t^0 … t^order`.
    pub fn expand(&self, order: usize) -> Vec<BigInt> {
        let ints = |p: &UniPoly| -> Vec<BigInt> { p.coeffs().iter().map(|c| c.to_integer()).collect() };
        let (num, den) = (ints(&self.num), ints(&self.den));
        let mut out: Vec<BigInt> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut c = num.get(n).cloned().unwrap_or_default();
            for k in 1..=n.min(den.len().saturating_sub(1)) {
                c -= &den[k] * &out[n - k];
            }
            out.push(c);
        }
        out
    }

    /// Shifts by `t^k`.
    pub fn shifted(&self, k: usize) -> Self {
        let mut t = UniPoly::one();
        for _ in 0..k {
            t = t.mul(&UniPoly::var());
        }
        RationalSeries { num: self.num.mul(&t), den: self.den.clone() }
    }
}

fn integral(p: &UniPoly) -> bool {
    p.coeffs().iter().all(|c| c.is_integer())
}

impl FromStr for RationalSeries {
    type Err = Error;

    /// Parses expressions in `t` such as `t^5/((1-t)^2*(1-t^2))`.
    fn from_str(s: &str) -> Result<Self> {
        let (num, den) = SeriesEval.parse_eval(s)?;
        RationalSeries::new(num, den)
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num.fmt_with("t"));
        }
        write!(f, "({})/({})", self.num.fmt_with("t"), self.den.fmt_with("t"))
    }
}

struct SeriesEval;

impl Evaluator for SeriesEval {
    type Value = (UniPoly, UniPoly);

    fn scalar(&self, q: Rational) -> Result<Self::Value> {
        Ok((UniPoly::constant(q), UniPoly::one()))
    }
    fn symbol(&self, name: &str, offset: usize) -> Result<Self::Value> {
        match name {
            "t" => Ok((UniPoly::var(), UniPoly::one())),
            _ => Err(Error::Parse { offset, message: format!("unknown symbol `{name}`, series are in `t`") }),
        }
    }
    fn add(&self, (a, b): Self::Value, (c, d): Self::Value) -> Result<Self::Value> {
        if b == d {
            return Ok((a.add(&c), b));
        }
        Ok((a.mul(&d).add(&c.mul(&b)), b.mul(&d)))
    }
    fn neg(&self, (a, b): Self::Value) -> Result<Self::Value> {
        Ok((a.neg(), b))
    }
    fn mul(&self, (a, b): Self::Value, (c, d): Self::Value) -> Result<Self::Value> {
        Ok((a.mul(&c), b.mul(&d)))
    }
    fn pow(&self, x: Self::Value, k: i64) -> Result<Self::Value> {
        let (a, b) = if k < 0 { self.div((UniPoly::one(), UniPoly::one()), x)? } else { x };
        let (mut n, mut d) = (UniPoly::one(), UniPoly::one());
        for _ in 0..k.unsigned_abs() {
            n = n.mul(&a);
            d = d.mul(&b);
        }
        Ok((n, d))
    }
    fn div(&self, (a, b): Self::Value, (c, d): Self::Value) -> Result<Self::Value> {
        if c.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok((a.mul(&d), b.mul(&c)))
    }
}

/// The first `order + 1` coefficients of `s`.
pub fn series_expand(s: &RationalSeries, order: usize) -> Vec<BigInt> {
    s.expand(order)
}

/// Graded dimensions actually computed, starting in degree 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeasuredSeries {
    pub label: String,
    pub coefficients: Vec<usize>,
}

impl MeasuredSeries {
    /// First degree with a nonzero dimension.
    pub fn start(&self) -> Option<usize> {
        self.coefficients.iter().position(|&c| c != 0)
    }
}

impl fmt::Display for MeasuredSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coefficients.iter().map(|c| c.to_string()).collect();
        write!(f, "{}: {}", self.label, cs.join(","))?;
        match self.start() {
            Some(s) if s > 0 => write!(f, " (from degree {s})"),
            _ => Ok(()),
        }
    }
}

/// The graded objects that can be measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `B = φ(U(W+))` in `S`.
    B,
    /// `A(0)`, `A(1)` and `A(a)` for generic `a`, inside `R`.
    A0,
    A1,
    AGeneric,
    Q,
    R,
    S,
    /// `I = BpB`.
    I,
    /// `M = uB ∩ (u − w)vB`.
    M,
    /// `M′ = b5 B + b6 B + b7 B`.
    MPrime,
    /// `ker λ_a` for generic `a`.
    KerLambda,
    KerPhi,
}

impl Family {
    pub const ALL: [Family; 12] = [
        Family::B,
        Family::A0,
        Family::A1,
        Family::AGeneric,
        Family::Q,
        Family::R,
        Family::S,
        Family::I,
        Family::M,
        Family::MPrime,
        Family::KerLambda,
        Family::KerPhi,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Family::B => "B",
            Family::A0 => "A(0)",
            Family::A1 => "A(1)",
            Family::AGeneric => "A(a)",
            Family::Q => "Q",
            Family::R => "R",
            Family::S => "S",
            Family::I => "I",
            Family::M => "M",
            Family::MPrime => "M'",
            Family::KerLambda => "ker-lambda",
            Family::KerPhi => "ker-phi",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().replace('′', "'");
        let alias = match norm.as_str() {
            "kerlambda" | "ker lambda" => "ker-lambda",
            "kerphi" | "ker phi" => "ker-phi",
            "Mprime" => "M'",
            other => other,
        };
        Family::ALL.into_iter().find(|f| f.label() == alias).ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
}

/// Measures the graded dimensions of `family` in degrees `0..=order`.
pub fn measure(family: Family, order: usize) -> Result<MeasuredSeries> {
    let n = order as i64;
    let coefficients = match family {
        Family::B => named::algebra_b::<Rational>()?.1.dims(n)?,
        Family::A0 | Family::A1 => {
            let r = algebra_r::<Rational>();
            let second = if family == Family::A0 { "x*y" } else { "(x - y)*y" };
            Subalgebra::new(&r, vec![r.parse("x")?, r.parse(second)?])?.dims(n)?
        }
        Family::AGeneric => {
            let r = algebra_r::<RatFunc>();
            Subalgebra::new(&r, vec![r.parse("x")?, r.parse("(x - a*y)*y")?])?.dims(n)?
        }
        Family::Q => {
            let q = algebra_q::<Rational>();
            (0..=n).map(|k| Ok(q.piece_monomials(k)?.len())).collect::<Result<_>>()?
        }
        Family::R => {
            let r = algebra_r::<Rational>();
            (0..=n).map(|k| Ok(r.piece_monomials(k)?.len())).collect::<Result<_>>()?
        }
        Family::S => {
            let s = algebra_s::<Rational>();
            (0..=n).map(|k| Ok(s.piece_monomials(k)?.len())).collect::<Result<_>>()?
        }
        Family::I => {
            let s = algebra_s::<Rational>();
            let m = ModulePieces::new(&s, vec![named::p(&s)?], Side::TwoSided, &named::b_over(&s)?)?;
            (0..=n).map(|k| Ok(m.piece(k)?.dim())).collect::<Result<_>>()?
        }
        Family::M => {
            let s = algebra_s::<Rational>();
            let over = named::b_over(&s)?;
            let gens = named::b_generators(&s)?;
            let ub = ModulePieces::new(&s, vec![gens[0].clone()], Side::Right, &over)?;
            let vb = ModulePieces::new(&s, vec![gens[1].clone()], Side::Right, &over)?;
            (0..=n).map(|k| Ok(graded_intersection(&*ub.piece(k)?, &*vb.piece(k)?)?.dim())).collect::<Result<_>>()?
        }
        Family::MPrime => {
            let s = algebra_s::<Rational>();
            let m = ModulePieces::new(&s, named::b567(&s)?, Side::Right, &named::b_over(&s)?)?;
            (0..=n).map(|k| Ok(m.piece(k)?.dim())).collect::<Result<_>>()?
        }
        Family::KerLambda => {
            let l = EnvMorphism::lambda_generic(Mode::WPlus);
            kernel_dims(|k| Ok(l.kernel_at_degree(k)?.dimension), n)?
        }
        Family::KerPhi => {
            let phi = EnvMorphism::<Rational>::phi(Mode::WPlus);
            kernel_dims(|k| Ok(phi.kernel_at_degree(k)?.dimension), n)?
        }
    };
    Ok(MeasuredSeries { label: family.label().to_string(), coefficients })
}

fn kernel_dims(f: impl Fn(i64) -> Result<usize> + Sync, n: i64) -> Result<Vec<usize>> {
    (0..=n).into_par_iter().map(|k| if k == 0 { Ok(0) } else { f(k) }).collect()
}

/// Measures a family given by label.
pub fn measure_label(label: &str, order: usize) -> Result<MeasuredSeries> {
    measure(label.parse()?, order)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub degree: usize,
    pub measured: usize,
    pub expected: String,
}

/// Outcome of comparing measured dimensions against a closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub matches: bool,
    pub checked_through: usize,
    pub first_mismatch: Option<Mismatch>,
}

/// Compares degrees `offset..` of `measured` with the expansion of `closed`.
pub fn compare(measured: &MeasuredSeries, closed: &RationalSeries, offset: usize) -> Comparison {
    let len = measured.coefficients.len();
    let expected = closed.expand(len.saturating_sub(1));
    let first_mismatch = (offset..len)
        .find(|&d| BigInt::from(measured.coefficients[d]) != expected[d])
        .map(|d| Mismatch { degree: d, measured: measured.coefficients[d], expected: expected[d].to_string() });
    Comparison { matches: first_mismatch.is_none(), checked_through: len.saturating_sub(1), first_mismatch }
}

/// Closed forms attached to the measured families.
pub fn closed_form(family: Family) -> Option<RationalSeries> {
    let text = match family {
        Family::B => "(1 - t + t^3)/((1 - t)^2*(1 - t^2))",
        Family::Q => "1/((1 - t)^2*(1 - t^2))",
        Family::A0 | Family::A1 => "(1 - t + t^2)/(1 - t)^2",
        Family::R => "1/(1 - t)^2",
        Family::S => "1/(1 - t)^3",
        Family::I => "t^4/((1 - t)^2*(1 - t^2))",
        Family::M | Family::MPrime => "t^5/((1 - t)^2*(1 - t^2))",
        _ => return None,
    };
    Some(text.parse().expect("built-in closed form"))
}

/// The partition numbers `p(0) … p(order)`.
pub fn partition_counts(order: usize) -> Vec<u64> {
    let mut p = vec![0u64; order + 1];
    p[0] = 1;
    for part in 1..=order {
        for n in part..=order {
            p[n] += p[n - part];
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&k| BigInt::from(k)).collect()
    }

    /// Coefficients of 1/((1−t)²(1−t²)) by direct convolution.
    fn convolution_oracle(order: usize) -> Vec<i64> {
        let ones = vec![1i64; order + 1];
        let evens: Vec<i64> = (0..=order).map(|k| if k % 2 == 0 { 1 } else { 0 }).collect();
        let conv = |a: &[i64], b: &[i64]| -> Vec<i64> {
            (0..=order).map(|n| (0..=n).map(|k| a[k] * b[n - k]).sum()).collect()
        };
        conv(&conv(&ones, &ones), &evens)
    }

    #[test]
    fn expansions() {
        let q: RationalSeries = "1/((1-t)^2*(1-t^2))".parse().unwrap();
        assert_eq!(q.expand(6), ints(&convolution_oracle(6)));
        assert_eq!(q.expand(6), ints(&[1, 2, 4, 6, 9, 12, 16]));
        let b: RationalSeries = "(1-t+t^3)/((1-t)^2*(1-t^2))".parse().unwrap();
        let o = convolution_oracle(8);
        let want: Vec<i64> = (0..=8).map(|n| o[n] - if n >= 1 { o[n - 1] } else { 0 } + if n >= 3 { o[n - 3] } else { 0 }).collect();
        assert_eq!(b.expand(8), ints(&want));
        let m: RationalSeries = "t^5/((1-t)^2*(1-t^2))".parse().unwrap();
        assert_eq!(m.expand(8), ints(&[0, 0, 0, 0, 0, 1, 2, 4, 6]));
        assert_eq!(m, q.shifted(5));
    }

    #[test]
    fn bad_series() {
        assert!(matches!("1/t".parse::<RationalSeries>(), Err(Error::SeriesError)));
        assert!(matches!("1/(2 - t)".parse::<RationalSeries>(), Err(Error::SeriesError)));
        assert!("1/(1-s)".parse::<RationalSeries>().is_err());
        assert_eq!("-1/(-1 + t)".parse::<RationalSeries>().unwrap().expand(3), ints(&[1, 1, 1, 1]));
    }

    #[test]
    fn small_measurements() {
        let a0 = measure(Family::A0, 6).unwrap();
        assert_eq!(a0.coefficients, vec![1, 1, 2, 3, 4, 5, 6]);
        let i = measure(Family::I, 8).unwrap();
        assert_eq!(i.coefficients, vec![0, 0, 0, 0, 1, 2, 4, 6, 9]);
        assert_eq!(i.to_string(), "I: 0,0,0,0,1,2,4,6,9 (from degree 4)");
        assert!(compare(&i, &closed_form(Family::I).unwrap(), 0).matches);
        for f in [Family::R, Family::S, Family::Q] {
            let m = measure(f, 8).unwrap();
            assert!(compare(&m, &closed_form(f).unwrap(), 0).matches, "{f:?}");
        }
    }

    #[test]
    fn perturbation_is_located() {
        let mut b = measure(Family::B, 9).unwrap();
        let closed = closed_form(Family::B).unwrap();
        assert!(compare(&b, &closed, 0).matches);
        b.coefficients[7] += 1;
        let c = compare(&b, &closed, 0);
        assert!(!c.matches);
        assert_eq!(c.first_mismatch.unwrap().degree, 7);
    }

    #[test]
    fn generic_a_and_kernel_complement() {
        let a = measure(Family::AGeneric, 7).unwrap();
        let k = measure(Family::KerLambda, 7).unwrap();
        let p = partition_counts(7);
        for n in 1..=7 {
            assert_eq!((a.coefficients[n] + k.coefficients[n]) as u64, p[n], "n = {n}");
        }
        for n in 4..=7 {
            assert_eq!(a.coefficients[n], n + 1);
        }
    }

    #[test]
    fn labels() {
        for f in Family::ALL {
            assert_eq!(f.label().parse::<Family>().unwrap(), f);
        }
        assert!(matches!("T".parse::<Family>(), Err(Error::UnknownLabel(_))));
    }
}
