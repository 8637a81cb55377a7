use std::collections::HashMap;
use std::sync::Arc;

use super::{same_ring, Monomial, Poly, PolyRing};
use crate::error::{Error, Result};
use crate::scalars::Field;

/// Ring map given by the images of the source variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMap<F> {
    source: Arc<PolyRing>,
    target: Arc<PolyRing>,
    images: Vec<Poly<F>>,
}

impl<F: Field> RingMap<F> {
    pub fn new(source: &Arc<PolyRing>, target: &Arc<PolyRing>, images: Vec<Poly<F>>) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(Error::ShapeMismatch(format!(
                "{} images for {} variables",
                images.len(),
                source.nvars()
            )));
        }
        for im in &images {
            same_ring(im.ring(), target)?;
        }
        Ok(RingMap { source: source.clone(), target: target.clone(), images })
    }

    /// A map that must send each variable to a homogeneous element of degree 1
    /// (or to zero).
    pub fn new_graded(source: &Arc<PolyRing>, target: &Arc<PolyRing>, images: Vec<Poly<F>>) -> Result<Self> {
        let m = Self::new(source, target, images)?;
        for im in &m.images {
            match im.homogeneous_degree() {
                Some(1) => {}
                None if im.is_zero() => {}
                Some(d) => return Err(Error::DegreeMismatch { expected: 1, found: d }),
                None => return Err(Error::NotHomogeneous),
            }
        }
        Ok(m)
    }

    /// Parses the images, one expression per source variable.
    pub fn parse(source: &Arc<PolyRing>, target: &Arc<PolyRing>, images: &[&str]) -> Result<Self> {
        let images = images.iter().map(|s| Poly::parse(target, s)).collect::<Result<Vec<_>>>()?;
        Self::new(source, target, images)
    }

    pub fn identity(ring: &Arc<PolyRing>) -> Self {
        let images = (0..ring.nvars()).map(|i| Poly::monomial(ring, Monomial::var(i), F::one())).collect();
        RingMap { source: ring.clone(), target: ring.clone(), images }
    }

    pub fn source(&self) -> &Arc<PolyRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PolyRing> {
        &self.target
    }

    pub fn images(&self) -> &[Poly<F>] {
        &self.images
    }

    pub fn image_of(&self, var: &str) -> Result<&Poly<F>> {
        let i = self.source.index_of(var).ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        Ok(&self.images[i])
    }

    pub fn apply(&self, f: &Poly<F>) -> Result<Poly<F>> {
        same_ring(f.ring(), &self.source)?;
        let mut powers: HashMap<(usize, i32), Poly<F>> = HashMap::new();
        let mut out = Poly::zero(&self.target);
        for (m, c) in f.terms() {
            let mut t = Poly::constant(&self.target, c.clone());
            for i in 0..self.source.nvars() {
                let e = m.exp(i);
                if e == 0 {
                    continue;
                }
                let pw = match powers.get(&(i, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = self.images[i].pow(e as i64)?;
                        powers.insert((i, e), p.clone());
                        p
                    }
                };
                t = t.mul(&pw)?;
            }
            for (mm, cc) in t.terms {
                out.add_term(mm, cc);
            }
        }
        Ok(out)
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &RingMap<F>) -> Result<RingMap<F>> {
        same_ring(&first.target, &self.source)?;
        let images = first.images.iter().map(|p| self.apply(p)).collect::<Result<Vec<_>>>()?;
        Ok(RingMap { source: first.source.clone(), target: self.target.clone(), images })
    }

    /// `k`-fold composite of an endomorphism (k ≥ 0).
    pub fn power(&self, k: u32) -> Result<RingMap<F>> {
        same_ring(&self.source, &self.target)?;
        let mut acc = Self::identity(&self.source);
        for _ in 0..k {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn is_graded(&self) -> bool {
        self.images.iter().all(|p| p.is_zero() || p.homogeneous_degree() == Some(1))
    }
}

/// Whether `m` kills every relation; on failure, the first nonzero image.
pub fn check_map_kills<F: Field>(m: &RingMap<F>, relations: &[Poly<F>]) -> Result<(bool, Option<Poly<F>>)> {
    for r in relations {
        let img = m.apply(r)?;
        if !img.is_zero() {
            return Ok((false, Some(img)));
        }
    }
    Ok((true, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{RatFunc, Rational};

    fn xyz() -> Arc<PolyRing> {
        PolyRing::new(&["x", "y", "z"], &[]).unwrap()
    }

    #[test]
    fn twist_of_x() {
        let r = xyz();
        let mu = RingMap::<Rational>::parse(&r, &r, &["x - y", "y", "z"]).unwrap();
        let x = Poly::parse(&r, "x").unwrap();
        assert_eq!(mu.apply(&x).unwrap().to_string(), "x - y");
        let mu4 = mu.power(4).unwrap();
        assert_eq!(mu4.apply(&x).unwrap().to_string(), "x - 4*y");
        // iterate by hand
        let mut f = x.clone();
        for _ in 0..4 {
            f = mu.apply(&f).unwrap();
        }
        assert_eq!(f, mu4.apply(&x).unwrap());
    }

    #[test]
    fn tau_pullback_of_x() {
        let r = PolyRing::new(&["w", "x", "y", "z"], &[]).unwrap();
        let tau = RingMap::<Rational>::parse(&r, &r, &["w - 2*x + 2*z", "z", "-y - 2*z", "x + 4*y + 4*z"]).unwrap();
        assert_eq!(tau.apply(&Poly::parse(&r, "x").unwrap()).unwrap().to_string(), "z");
        assert!(tau.is_graded());
    }

    #[test]
    fn kills_relations() {
        let src = PolyRing::new(&["w", "x", "y", "z"], &[]).unwrap();
        let tgt = PolyRing::new(&["x", "y"], &[]).unwrap();
        let psi = RingMap::<RatFunc>::parse(
            &src,
            &tgt,
            &["2*x^2 - 4*x*y - 6*a*y^2", "x^2 - 2*x*y + y^2", "-x^2 + 3*x*y - 2*y^2", "x^2 - 4*x*y + 4*y^2"],
        )
        .unwrap();
        let rel = Poly::parse(&src, "x*z - y^2").unwrap();
        assert_eq!(check_map_kills(&psi, &[rel]).unwrap(), (true, None));

        let r = xyz();
        let ia = RingMap::<RatFunc>::parse(&r, &r, &["x", "y", "a*y"]).unwrap();
        assert!(check_map_kills(&ia, &[Poly::parse(&r, "z - a*y").unwrap()]).unwrap().0);

        let id = RingMap::<Rational>::identity(&r);
        let x = Poly::parse(&r, "x").unwrap();
        assert_eq!(check_map_kills(&id, std::slice::from_ref(&x)).unwrap(), (false, Some(x)));
    }

    #[test]
    fn graded_check() {
        let r = xyz();
        let bad = vec![Poly::<Rational>::parse(&r, "x^2").unwrap(), Poly::parse(&r, "y").unwrap(), Poly::parse(&r, "z").unwrap()];
        assert!(matches!(RingMap::new_graded(&r, &r, bad), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn laurent_images() {
        let r = PolyRing::new(&["x", "y"], &["y"]).unwrap();
        let m = RingMap::<Rational>::parse(&r, &r, &["x", "2*y"]).unwrap();
        let f = Poly::parse(&r, "x*y^-2").unwrap();
        assert_eq!(m.apply(&f).unwrap().to_string(), "1/4*x*y^-2");
    }
}
