//! Zhang-twisted polynomial algebras `k[x..]^μ` with product `f ∗ g = f · μ^{deg f}(g)`.

mod pieces;
mod span;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::commpoly::{graded_component_basis, Monomial, Poly, PolyEval, PolyRing, Restriction, RingMap};
use crate::expr::Evaluator;
use crate::error::{Error, Result};
use crate::scalars::{ExactMatrix, Field};

pub use pieces::{module_piece, span_generated, ModulePieces, Over, Side, Subalgebra};
pub use span::{graded_intersection, GradedSpan};

pub struct TwistedAlgebra<F> {
    name: String,
    carrier: Arc<PolyRing>,
    twist: RingMap<F>,
    inverse: RingMap<F>,
    restriction: Option<Restriction>,
    generators: Vec<(String, Poly<F>)>,
    powers: Mutex<HashMap<i64, Arc<RingMap<F>>>>,
}

impl<F> fmt::Debug for TwistedAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwistedAlgebra({})", self.name)
    }
}

impl<F: Field> TwistedAlgebra<F> {
    /// Checks that `twist` and `inverse` are mutually inverse graded
    /// automorphisms and that both preserve the restricted subring.
    pub fn new(
        name: &str,
        twist: RingMap<F>,
        inverse: RingMap<F>,
        restriction: Option<Restriction>,
        generators: Vec<(String, Poly<F>)>,
    ) -> Result<Arc<Self>> {
        let carrier = twist.source().clone();
        if twist.target() != &carrier || inverse.source() != &carrier || inverse.target() != &carrier {
            return Err(Error::InvalidTwist("twist must be an endomorphism of the carrier".into()));
        }
        if !twist.is_graded() || !inverse.is_graded() {
            return Err(Error::InvalidTwist("twist must preserve degrees".into()));
        }
        let id = RingMap::identity(&carrier);
        if twist.compose(&inverse)? != id || inverse.compose(&twist)? != id {
            return Err(Error::InvalidTwist("the given inverse does not invert the twist".into()));
        }
        if let Some(r) = &restriction {
            for g in r.generators() {
                let gp = Poly::monomial(&carrier, *g, F::one());
                for m in [&twist, &inverse] {
                    let img = m.apply(&gp)?;
                    if img.terms().keys().any(|mm| !r.contains(mm)) {
                        return Err(Error::InvalidTwist(format!("twist does not preserve the subring at {gp}")));
                    }
                }
            }
        }
        let alg = TwistedAlgebra {
            name: name.to_string(),
            carrier,
            twist,
            inverse,
            restriction,
            generators,
            powers: Mutex::new(HashMap::new()),
        };
        for (_, g) in &alg.generators {
            alg.check_member(g)?;
        }
        Ok(Arc::new(alg))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier(&self) -> &Arc<PolyRing> {
        &self.carrier
    }

    pub fn twist(&self) -> &RingMap<F> {
        &self.twist
    }

    pub fn restriction(&self) -> Option<&Restriction> {
        self.restriction.as_ref()
    }

    /// Named algebra generators, e.g. `u, v, w` for S.
    pub fn generators(&self) -> &[(String, Poly<F>)] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Result<&Poly<F>> {
        self.generators
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn check_member(&self, f: &Poly<F>) -> Result<()> {
        if f.ring() != &self.carrier {
            return Err(Error::RingMismatch(f.ring().to_string(), self.carrier.to_string()));
        }
        if let Some(r) = &self.restriction {
            if let Some(m) = f.terms().keys().find(|m| !r.contains(m)) {
                return Err(Error::NotInSubring(m.fmt_with(self.carrier.variables())));
            }
        }
        Ok(())
    }

    /// `μ^k` for any integer `k`.
    pub fn twist_power(&self, k: i64) -> Result<Arc<RingMap<F>>> {
        if let Some(m) = self.powers.lock().expect("twist cache").get(&k) {
            return Ok(m.clone());
        }
        let m = match k {
            0 => RingMap::identity(&self.carrier),
            1 => self.twist.clone(),
            -1 => self.inverse.clone(),
            k if k > 0 => self.twist.compose(&*self.twist_power(k - 1)?)?,
            k => self.inverse.compose(&*self.twist_power(k + 1)?)?,
        };
        let m = Arc::new(m);
        self.powers.lock().expect("twist cache").insert(k, m.clone());
        Ok(m)
    }

    /// Twisted product; `f` is split into homogeneous parts.
    pub fn mul(&self, f: &Poly<F>, g: &Poly<F>) -> Result<Poly<F>> {
        if f.ring() != &self.carrier || g.ring() != &self.carrier {
            return Err(Error::RingMismatch(f.ring().to_string(), self.carrier.to_string()));
        }
        let mut out = Poly::zero(&self.carrier);
        for (d, part) in f.homogeneous_parts() {
            out = out.add(&part.mul(&self.twist_power(d)?.apply(g)?)?)?;
        }
        Ok(out)
    }

    /// Left-to-right twisted product of homogeneous factors.
    pub fn product_chain(&self, factors: &[Poly<F>]) -> Result<Poly<F>> {
        let mut acc = Poly::one(&self.carrier);
        let mut deg = 0;
        for f in factors {
            if f.is_zero() {
                return Ok(Poly::zero(&self.carrier));
            }
            let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
            acc = acc.mul(&self.twist_power(deg)?.apply(f)?)?;
            deg += d;
        }
        Ok(acc)
    }

    /// Commutator `f ∗ g − g ∗ f`.
    pub fn commutator(&self, f: &Poly<F>, g: &Poly<F>) -> Result<Poly<F>> {
        self.mul(f, g)?.sub(&self.mul(g, f)?)
    }

    /// Monomials spanning the degree-`n` piece of the algebra.
    pub fn piece_monomials(&self, n: i64) -> Result<Vec<Monomial>> {
        graded_component_basis(&self.carrier, n, self.restriction.as_ref())
    }

    pub fn parse(&self, s: &str) -> Result<Poly<F>> {
        let p = Poly::parse_uvw(&self.carrier, s)?;
        self.check_member(&p)?;
        Ok(p)
    }

    /// Parses an expression whose products are twisted products; `u, v, w`
    /// stand for the carrier variables. Intermediate values may leave the
    /// restriction, the result may not.
    pub fn parse_twisted(&self, s: &str) -> Result<Poly<F>> {
        let p = TwistedEval { alg: self, inner: PolyEval::new(&self.carrier, true) }.parse_eval(s)?;
        self.check_member(&p)?;
        Ok(p)
    }

    /// Decides whether `h` is normal by solving `x ∗ h = h ∗ c` for every
    /// generator `x`.
    pub fn is_normal(&self, h: &Poly<F>) -> Result<NormalReport<F>> {
        let k = match h.homogeneous_degree() {
            Some(k) if !h.is_zero() => k,
            _ => return Err(Error::NotHomogeneous),
        };
        let tw = self.twist_power(k)?;
        let mut companions = Vec::new();
        for (name, x) in &self.generators {
            let d = x.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
            let lhs = self.mul(x, h)?;
            let cands = self.piece_monomials(d)?;
            let cols: Vec<Poly<F>> = cands
                .iter()
                .map(|m| h.mul(&tw.apply(&Poly::monomial(&self.carrier, *m, F::one()))?))
                .collect::<Result<_>>()?;
            let mut rows: Vec<Monomial> = lhs.terms().keys().copied().collect();
            for c in &cols {
                rows.extend(c.terms().keys().copied());
            }
            rows.sort();
            rows.dedup();
            let vecs: Vec<Vec<F>> = cols.iter().map(|c| c.to_vector(&rows).expect("rows cover")).collect();
            let mat = ExactMatrix::from_columns(&vecs, rows.len())?;
            match mat.solve(&lhs.to_vector(&rows).expect("rows cover"))? {
                Some(sol) => companions.push((name.clone(), Poly::from_vector(&self.carrier, &cands, &sol))),
                None => return Ok(NormalReport { normal: false, companions, failed_at: Some(name.clone()) }),
            }
        }
        Ok(NormalReport { normal: true, companions, failed_at: None })
    }
}

struct TwistedEval<'a, F> {
    alg: &'a TwistedAlgebra<F>,
    inner: PolyEval<F>,
}

impl<F: Field> Evaluator for TwistedEval<'_, F> {
    type Value = Poly<F>;

    fn scalar(&self, q: crate::scalars::Rational) -> Result<Poly<F>> {
        self.inner.scalar(q)
    }
    fn symbol(&self, name: &str, offset: usize) -> Result<Poly<F>> {
        self.inner.symbol(name, offset)
    }
    fn add(&self, x: Poly<F>, y: Poly<F>) -> Result<Poly<F>> {
        x.add(&y)
    }
    fn neg(&self, x: Poly<F>) -> Result<Poly<F>> {
        Ok(x.neg())
    }
    fn mul(&self, x: Poly<F>, y: Poly<F>) -> Result<Poly<F>> {
        self.alg.mul(&x, &y)
    }
    fn pow(&self, x: Poly<F>, k: i64) -> Result<Poly<F>> {
        if k < 0 {
            // only twist-invariant elements (powers of v) are inverted
            if self.alg.twist.apply(&x)? != x {
                return Err(Error::Parse { offset: 0, message: format!("cannot invert `{x}`") });
            }
            return x.pow(k);
        }
        let mut acc = Poly::one(&self.alg.carrier);
        for _ in 0..k {
            acc = self.alg.mul(&acc, &x)?;
        }
        Ok(acc)
    }
    fn div(&self, x: Poly<F>, y: Poly<F>) -> Result<Poly<F>> {
        self.inner.div(x, y)
    }
}

#[derive(Clone, Debug)]
pub struct NormalReport<F> {
    pub normal: bool,
    /// For each generator `x`, the `c` with `x ∗ h = h ∗ c`.
    pub companions: Vec<(String, Poly<F>)>,
    pub failed_at: Option<String>,
}

/// Element of a twisted algebra.
#[derive(Clone, Debug)]
pub struct AlgElement<F> {
    algebra: Arc<TwistedAlgebra<F>>,
    value: Poly<F>,
}

impl<F: Field> AlgElement<F> {
    pub fn new(algebra: &Arc<TwistedAlgebra<F>>, value: Poly<F>) -> Result<Self> {
        algebra.check_member(&value)?;
        Ok(AlgElement { algebra: algebra.clone(), value })
    }

    pub fn parse(algebra: &Arc<TwistedAlgebra<F>>, s: &str) -> Result<Self> {
        Self::new(algebra, algebra.parse(s)?)
    }

    pub fn algebra(&self) -> &Arc<TwistedAlgebra<F>> {
        &self.algebra
    }

    pub fn value(&self) -> &Poly<F> {
        &self.value
    }

    fn same(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &o.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch(self.algebra.name.clone(), o.algebra.name.clone()))
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(AlgElement { algebra: self.algebra.clone(), value: self.algebra.mul(&self.value, &o.value)? })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(AlgElement { algebra: self.algebra.clone(), value: self.value.add(&o.value)? })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(AlgElement { algebra: self.algebra.clone(), value: self.value.sub(&o.value)? })
    }

    pub fn scale(&self, c: &F) -> Self {
        AlgElement { algebra: self.algebra.clone(), value: self.value.scale(c) }
    }
}

impl<F: Field> PartialEq for AlgElement<F> {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &o.algebra) && self.value == o.value
    }
}

impl<F: Field> fmt::Display for AlgElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn uvw<F: Field>(ring: &Arc<PolyRing>, names: &[(&str, &str)]) -> Result<Vec<(String, Poly<F>)>> {
    names.iter().map(|(n, e)| Ok((n.to_string(), Poly::parse(ring, e)?))).collect()
}

/// `S = k[x,y,z]^μ` with `μ(x) = x − y`; `u, v, w` are `x, y, z`.
pub fn algebra_s<F: Field>() -> Arc<TwistedAlgebra<F>> {
    xyz_algebra("S", &[], None)
}

/// The Laurent extension `Ŝ = S[v^{-1}]`.
pub fn algebra_s_hat<F: Field>() -> Arc<TwistedAlgebra<F>> {
    xyz_algebra("S^", &["y"], None)
}

/// `Q = k[x,y,yz]^μ`, the twist restricted to the monomial subring.
pub fn algebra_q<F: Field>() -> Arc<TwistedAlgebra<F>> {
    let r = Restriction::new(vec![
        Monomial::from_exps(&[1, 0, 0]),
        Monomial::from_exps(&[0, 1, 0]),
        Monomial::from_exps(&[0, 1, 1]),
    ]);
    xyz_algebra("Q", &[], Some(r))
}

fn xyz_algebra<F: Field>(name: &str, laurent: &[&str], restriction: Option<Restriction>) -> Arc<TwistedAlgebra<F>> {
    let ring = PolyRing::new(&["x", "y", "z"], laurent).expect("ring");
    let mu = RingMap::parse(&ring, &ring, &["x - y", "y", "z"]).expect("twist");
    let inv = RingMap::parse(&ring, &ring, &["x + y", "y", "z"]).expect("twist");
    let gens = if restriction.is_some() {
        uvw(&ring, &[("u", "x"), ("v", "y"), ("vw", "y*z")])
    } else {
        uvw(&ring, &[("u", "x"), ("v", "y"), ("w", "z")])
    }
    .expect("generators");
    TwistedAlgebra::new(name, mu, inv, restriction, gens).expect("valid twist")
}

/// The Jordan plane `R = k[x,y]^ν` with `ν(x) = x − y`.
pub fn algebra_r<F: Field>() -> Arc<TwistedAlgebra<F>> {
    xy_algebra("R", &[])
}

/// `R̂ = R[v^{-1}]`.
pub fn algebra_r_hat<F: Field>() -> Arc<TwistedAlgebra<F>> {
    xy_algebra("R^", &["y"])
}

fn xy_algebra<F: Field>(name: &str, laurent: &[&str]) -> Arc<TwistedAlgebra<F>> {
    let ring = PolyRing::new(&["x", "y"], laurent).expect("ring");
    let nu = RingMap::parse(&ring, &ring, &["x - y", "y"]).expect("twist");
    let inv = RingMap::parse(&ring, &ring, &["x + y", "y"]).expect("twist");
    let gens = uvw(&ring, &[("u", "x"), ("v", "y")]).expect("generators");
    TwistedAlgebra::new(name, nu, inv, None, gens).expect("valid twist")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{RatFunc, Rational};

    type Q = Rational;

    #[test]
    fn products_in_s() {
        let s = algebra_s::<Q>();
        let p = |e: &str| s.parse(e).unwrap();
        assert_eq!(s.mul(&p("y"), &p("x")).unwrap().to_string(), "x*y - y^2");
        assert_eq!(s.mul(&p("z"), &p("y")).unwrap().to_string(), "y*z");
        let pp = p("y^3*z - y^2*z^2");
        assert_eq!(s.mul(&p("x"), &pp).unwrap().to_string(), "x*y^3*z - x*y^2*z^2");
        assert_eq!(s.mul(&p("x"), &pp).unwrap(), s.mul(&pp, &p("x + 4*y")).unwrap());
    }

    #[test]
    fn chains_in_r() {
        let r = algebra_r::<Q>();
        let u = r.parse("u").unwrap();
        let prod = r.product_chain(&[u.clone(), u.clone(), u.clone(), u]).unwrap();
        assert_eq!(prod, r.parse("x*(x - y)*(x - 2*y)*(x - 3*y)").unwrap());
        assert_eq!(r.product_chain(&[]).unwrap(), r.parse("1").unwrap());

        let ra = algebra_r::<RatFunc>();
        let f = ra.parse("(x - a*y)*y").unwrap();
        let prod = ra.product_chain(&[f.clone(), f]).unwrap();
        assert_eq!(prod, ra.parse("(x - a*y)*y*(x - (2 + a)*y)*y").unwrap());
    }

    #[test]
    fn normal_elements() {
        let s = algebra_s::<Q>();
        let p = s.parse("y^3*z - y^2*z^2").unwrap();
        let rep = s.is_normal(&p).unwrap();
        assert!(rep.normal);
        let comp: Vec<String> = rep.companions.iter().map(|(n, c)| format!("{n}:{c}")).collect();
        assert_eq!(comp, ["u:x + 4*y", "v:y", "w:z"]);
        for (n, c) in &rep.companions {
            let g = s.generator(n).unwrap();
            assert_eq!(s.mul(g, &p).unwrap(), s.mul(&p, c).unwrap());
        }
        let v = s.is_normal(&s.parse("y").unwrap()).unwrap();
        assert!(v.normal);
        assert_eq!(v.companions[0].1.to_string(), "x + y");

        let r = algebra_r::<Q>();
        let bad = r.is_normal(&r.parse("x + y").unwrap()).unwrap();
        assert!(!bad.normal);
        assert_eq!(bad.failed_at.as_deref(), Some("u"));
    }

    #[test]
    fn q_membership_enforced() {
        let q = algebra_q::<Q>();
        assert!(q.parse("y*z + x^2").is_ok());
        assert!(matches!(q.parse("z"), Err(Error::NotInSubring(_))));
    }

    #[test]
    fn laurent_twist() {
        let sh = algebra_s_hat::<Q>();
        let vi = sh.parse("y^-1").unwrap();
        let x = sh.parse("x").unwrap();
        // v^{-1} ∗ u = y^{-1} (x + y)
        assert_eq!(sh.mul(&vi, &x).unwrap().to_string(), "x*y^-1 + 1");
        let v = sh.parse("y").unwrap();
        assert_eq!(sh.mul(&v, &vi).unwrap(), sh.parse("1").unwrap());
    }

    #[test]
    fn bad_twist_rejected() {
        let ring = PolyRing::new(&["x", "y"], &[]).unwrap();
        let mu = RingMap::<Q>::parse(&ring, &ring, &["x - y", "y"]).unwrap();
        let wrong = RingMap::parse(&ring, &ring, &["x - y", "y"]).unwrap();
        assert!(matches!(TwistedAlgebra::new("bad", mu, wrong, None, vec![]), Err(Error::InvalidTwist(_))));
        let r = Restriction::new(vec![Monomial::from_exps(&[1, 0]), Monomial::from_exps(&[0, 2])]);
        let mu = RingMap::<Q>::parse(&ring, &ring, &["x - y", "y"]).unwrap();
        let inv = RingMap::parse(&ring, &ring, &["x + y", "y"]).unwrap();
        assert!(TwistedAlgebra::new("bad", mu, inv, Some(r), vec![]).is_err());
    }

    #[test]
    fn element_wrapper() {
        let s = algebra_s::<Q>();
        let r = algebra_r::<Q>();
        let a = AlgElement::parse(&s, "v").unwrap();
        let b = AlgElement::parse(&s, "u").unwrap();
        assert_eq!(a.mul(&b).unwrap().to_string(), "x*y - y^2");
        let c = AlgElement::parse(&r, "u").unwrap();
        assert!(matches!(a.mul(&c), Err(Error::AlgebraMismatch(_, _))));
    }
}
