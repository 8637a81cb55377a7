//! Coordinate checks for the commutative geometry behind the maps:
//! pullbacks along ψ_a, τ, μ, ν and i_a over ℚ(a).

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::commpoly::{Poly, PolyRing, RingMap};
use crate::envelope::Mode;
use crate::error::{Error, Result};
use crate::morphlab::EnvMorphism;
use crate::scalars::{Field, RatFunc};

type P = Poly<RatFunc>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MapName {
    Tau,
    Mu,
    Nu,
    PsiA,
    IA,
    Identity,
    Other,
}

fn p1() -> Arc<PolyRing> {
    PolyRing::new(&["x", "y"], &[]).expect("ring")
}

fn p2() -> Arc<PolyRing> {
    PolyRing::new(&["x", "y", "z"], &[]).expect("ring")
}

fn p3() -> Arc<PolyRing> {
    PolyRing::new(&["w", "x", "y", "z"], &[]).expect("ring")
}

/// A map of projective spaces given by homogeneous coordinates, stored as the
/// pullback of the target coordinate ring into the source one.
#[derive(Clone, Debug)]
pub struct ProjectiveMapSpec {
    name: MapName,
    pullback: RingMap<RatFunc>,
}

impl ProjectiveMapSpec {
    pub fn new(name: MapName, source: &Arc<PolyRing>, target: &Arc<PolyRing>, coords: &[&str]) -> Result<Self> {
        let pullback = RingMap::parse(target, source, coords)?;
        let degs: Vec<Option<i64>> = pullback.images().iter().map(|p| p.homogeneous_degree()).collect();
        if degs.iter().any(|d| d.is_none() || *d != degs[0]) {
            return Err(Error::NotHomogeneous);
        }
        Ok(ProjectiveMapSpec { name, pullback })
    }

    pub fn name(&self) -> MapName {
        self.name
    }

    pub fn source(&self) -> &Arc<PolyRing> {
        self.pullback.target()
    }

    pub fn target(&self) -> &Arc<PolyRing> {
        self.pullback.source()
    }

    pub fn coordinates(&self) -> &[P] {
        self.pullback.images()
    }

    pub fn pullback(&self, f: &P) -> Result<P> {
        self.pullback.apply(f)
    }

    /// The same map with every coordinate multiplied by `c`.
    pub fn rescaled(&self, c: &RatFunc) -> Result<Self> {
        let images = self.coordinates().iter().map(|p| p.scale(c)).collect();
        Ok(ProjectiveMapSpec { name: self.name, pullback: RingMap::new(self.target(), self.source(), images)? })
    }

    pub fn identity(ring: &Arc<PolyRing>) -> Self {
        ProjectiveMapSpec { name: MapName::Identity, pullback: RingMap::identity(ring) }
    }
}

/// `τ` on `ℙ³`, preserving `X = V(xz − y²)`.
pub fn tau() -> ProjectiveMapSpec {
    let r = p3();
    ProjectiveMapSpec::new(MapName::Tau, &r, &r, &["w - 2*x + 2*z", "z", "-y - 2*z", "x + 4*y + 4*z"]).expect("tau")
}

/// `ψ_a : ℙ¹ → ℙ³`.
pub fn psi_a() -> ProjectiveMapSpec {
    ProjectiveMapSpec::new(
        MapName::PsiA,
        &p1(),
        &p3(),
        &["2*x^2 - 4*x*y - 6*a*y^2", "x^2 - 2*x*y + y^2", "-x^2 + 3*x*y - 2*y^2", "x^2 - 4*x*y + 4*y^2"],
    )
    .expect("psi")
}

/// `ν` on `ℙ¹`.
pub fn nu() -> ProjectiveMapSpec {
    let r = p1();
    ProjectiveMapSpec::new(MapName::Nu, &r, &r, &["x - y", "y"]).expect("nu")
}

/// `μ` on `ℙ²`.
pub fn mu() -> ProjectiveMapSpec {
    let r = p2();
    ProjectiveMapSpec::new(MapName::Mu, &r, &r, &["x - y", "y", "z"]).expect("mu")
}

/// `i_a : ℙ¹ → ℙ², [x:y] ↦ [x:y:ay]`.
pub fn i_a() -> ProjectiveMapSpec {
    ProjectiveMapSpec::new(MapName::IA, &p1(), &p2(), &["x", "y", "a*y"]).expect("i_a")
}

/// Compares the composites `outer.0 ∘ outer.1` and `inner.0 ∘ inner.1` by
/// pulling back each coordinate of the common target; one verdict per coordinate.
pub fn square_commutes(
    lhs: (&ProjectiveMapSpec, &ProjectiveMapSpec),
    rhs: (&ProjectiveMapSpec, &ProjectiveMapSpec),
) -> Result<Vec<bool>> {
    let composite = |(f, g): (&ProjectiveMapSpec, &ProjectiveMapSpec)| -> Result<RingMap<RatFunc>> {
        if g.target() != f.source() {
            return Err(Error::ShapeMismatch(format!("{:?} cannot follow {:?}", f.name, g.name)));
        }
        g.pullback.compose(&f.pullback)
    };
    let (l, r) = (composite(lhs)?, composite(rhs)?);
    if l.source() != r.source() || l.target() != r.target() {
        return Err(Error::ShapeMismatch("the two composites have different ends".into()));
    }
    Ok(l.images().iter().zip(r.images()).map(|(a, b)| a == b).collect())
}

/// Like [`square_commutes`], but the two composites only have to agree up to
/// one common nonzero scalar, which is what equality of projective maps means.
pub fn square_commutes_projectively(
    lhs: (&ProjectiveMapSpec, &ProjectiveMapSpec),
    rhs: (&ProjectiveMapSpec, &ProjectiveMapSpec),
) -> Result<bool> {
    square_commutes(lhs, rhs)?;
    let (l, r) = (lhs.1.pullback.compose(&lhs.0.pullback)?, rhs.1.pullback.compose(&rhs.0.pullback)?);
    let Some((m, c)) = l.images().iter().find_map(|p| p.leading_term().map(|(m, c)| (*m, c.clone()))) else {
        return Ok(r.images().iter().all(|p| p.is_zero()));
    };
    let pos = l.images().iter().position(|p| !p.is_zero()).expect("nonzero image");
    let ratio = r.images()[pos].coeff(&m) * &c.inv()?;
    if ratio.is_zero() {
        return Ok(false);
    }
    Ok(l.images().iter().zip(r.images()).all(|(a, b)| a.scale(&ratio) == *b))
}

/// A quotient of polynomials over ℚ(a); equality is by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalExpr {
    pub num: P,
    pub den: P,
}

impl RationalExpr {
    pub fn new(num: P, den: P) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        // Make the denominator's leading coefficient 1 when it is a constant.
        let lead = den.leading_term().and_then(|(_, c)| c.as_rational());
        match lead {
            Some(c) => {
                let inv = RatFunc::constant(c.recip());
                Ok(RationalExpr { num: num.scale(&inv), den: den.scale(&inv) })
            }
            None => Ok(RationalExpr { num, den }),
        }
    }

    pub fn parse(ring: &Arc<PolyRing>, num: &str, den: &str) -> Result<Self> {
        Self::new(Poly::parse(ring, num)?, Poly::parse(ring, den)?)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl PartialEq for RationalExpr {
    fn eq(&self, o: &Self) -> bool {
        match (self.num.mul(&o.den), o.num.mul(&self.den)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }
}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

pub fn pullback_rational(m: &ProjectiveMapSpec, e: &RationalExpr) -> Result<RationalExpr> {
    RationalExpr::new(m.pullback(&e.num)?, m.pullback(&e.den)?)
}

/// True iff every equation pulls back to zero.
pub fn curve_containment(m: &ProjectiveMapSpec, eqs: &[P]) -> Result<bool> {
    for e in eqs {
        if !m.pullback(e)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The quadric `xz − y²` in `ℙ³`.
pub fn quadric() -> P {
    Poly::parse(&p3(), "x*z - y^2").expect("quadric")
}

/// Equations of the curve `C_a`.
pub fn curve_c_a() -> Vec<P> {
    let r = p3();
    vec![Poly::parse(&r, "w + 6*a*x + (4 + 12*a)*y + (2 + 6*a)*z").expect("C_a"), quadric()]
}

/// `f = (w + 12x + 22y + 8z)/(12x + 6y)` on `X`.
pub fn function_f() -> RationalExpr {
    RationalExpr::parse(&p3(), "w + 12*x + 22*y + 8*z", "12*x + 6*y").expect("f")
}

/// `ψ_a*(f)` as recorded: `(xy − ay²)/(x² − xy)`.
pub fn expected_psi_f() -> RationalExpr {
    RationalExpr::parse(&p1(), "x*y - a*y^2", "x^2 - x*y").expect("expected value")
}

/// Generator-level check that `Ψ_a ρ = γ λ_a` for a given `f`: `e1` maps to
/// `s` on both sides, and for `e2` we need `ψ_a*(f) = λ_a(e2)/(x(x − y))`.
pub fn gamma_check_with(f: &RationalExpr) -> Result<[bool; 2]> {
    let lambda = EnvMorphism::lambda_generic(Mode::WPlus);
    let ring = p1();
    let image = |n: i64| -> Result<P> { lambda.generator_image(n)?.with_ring(&ring) };
    let gamma = |n: i64, h: P| -> Result<RationalExpr> {
        let mut den = Poly::one(&ring);
        for j in 0..n {
            den = den.mul(&Poly::parse(&ring, &format!("x - {j}*y"))?)?;
        }
        RationalExpr::new(h, den)
    };
    let one = RationalExpr::new(Poly::one(&ring), Poly::one(&ring))?;
    let e1 = gamma(1, image(1)?)? == one;
    let e2 = pullback_rational(&psi_a(), f)? == gamma(2, image(2)?)?;
    Ok([e1, e2])
}

pub fn gamma_check() -> Result<[bool; 2]> {
    gamma_check_with(&function_f())
}

/// Whether `[2x + y : x + y]` undoes `ψ_a` as a rational map of `ℙ¹`.
pub fn inverse_check() -> Result<bool> {
    let back = ProjectiveMapSpec::new(MapName::Other, &p3(), &p1(), &["2*x + y", "x + y"])?;
    let (x, y) = (Poly::parse(&p1(), "x")?, Poly::parse(&p1(), "y")?);
    let c = psi_a().pullback.compose(&back.pullback)?;
    let (c0, c1) = (&c.images()[0], &c.images()[1]);
    Ok(!(c0.is_zero() && c1.is_zero()) && c0.mul(&y)? == c1.mul(&x)?)
}

/// `i_a* ∘ φ = λ_a` on `e1, …, e_max`.
pub fn ia_phi_is_lambda(max: i64) -> Result<bool> {
    let phi = EnvMorphism::<RatFunc>::phi(Mode::WPlus);
    let lambda = EnvMorphism::lambda_generic(Mode::WPlus);
    let ia = i_a();
    let ring = p1();
    for n in 1..=max {
        let lhs = ia.pullback(&phi.generator_image(n)?.with_ring(&p2())?)?;
        if lhs != lambda.generator_image(n)?.with_ring(&ring)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All the geometry verdicts in one place.
#[derive(Clone, Debug, Serialize)]
pub struct GeometryReport {
    pub psi_square: Vec<bool>,
    pub ia_square: Vec<bool>,
    pub quadric_killed: bool,
    pub psi_f: String,
    pub psi_f_matches: bool,
    pub curve_contains_image: bool,
    pub gamma: [bool; 2],
    pub inverse: bool,
    pub ia_phi_lambda: bool,
}

impl GeometryReport {
    pub fn all_pass(&self) -> bool {
        self.psi_square.iter().chain(&self.ia_square).all(|&b| b)
            && self.quadric_killed
            && self.psi_f_matches
            && self.curve_contains_image
            && self.gamma.iter().all(|&b| b)
            && self.inverse
            && self.ia_phi_lambda
    }
}

pub fn geometry_report() -> Result<GeometryReport> {
    let (psi, tau, nu, mu, ia) = (psi_a(), tau(), nu(), mu(), i_a());
    let psi_f = pullback_rational(&psi, &function_f())?;
    Ok(GeometryReport {
        psi_square: square_commutes((&psi, &nu), (&tau, &psi))?,
        ia_square: square_commutes((&ia, &nu), (&mu, &ia))?,
        quadric_killed: psi.pullback(&quadric())?.is_zero(),
        psi_f_matches: psi_f == expected_psi_f(),
        psi_f: psi_f.to_string(),
        curve_contains_image: curve_containment(&psi, &curve_c_a())?,
        gamma: gamma_check()?,
        inverse: inverse_check()?,
        ia_phi_lambda: ia_phi_is_lambda(6)?,
    })
}
