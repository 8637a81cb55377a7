use std::sync::Arc;

use crate::commpoly::{Monomial, Poly, PolyRing};
use crate::error::{Error, Result};
use crate::scalars::{Echelon, Field};

/// Finite-dimensional subspace of one graded piece of a polynomial carrier.
#[derive(Clone, Debug)]
pub struct GradedSpan<F> {
    ring: Arc<PolyRing>,
    degree: i64,
    ech: Echelon<Monomial, F>,
}

impl<F: Field> GradedSpan<F> {
    pub fn new(ring: &Arc<PolyRing>, degree: i64) -> Self {
        GradedSpan { ring: ring.clone(), degree, ech: Echelon::new() }
    }

    pub fn from_polys<'a>(ring: &Arc<PolyRing>, degree: i64, polys: impl IntoIterator<Item = &'a Poly<F>>) -> Result<Self> {
        let mut s = Self::new(ring, degree);
        for p in polys {
            s.insert(p)?;
        }
        Ok(s)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    fn check(&self, p: &Poly<F>) -> Result<()> {
        if p.ring() != &self.ring {
            return Err(Error::RingMismatch(p.ring().to_string(), self.ring.to_string()));
        }
        if p.is_zero() {
            return Ok(());
        }
        match p.homogeneous_degree() {
            Some(d) if d == self.degree => Ok(()),
            Some(d) => Err(Error::DegreeMismatch { expected: self.degree, found: d }),
            None => Err(Error::NotHomogeneous),
        }
    }

    /// Adds an element; returns whether the dimension grew.
    pub fn insert(&mut self, p: &Poly<F>) -> Result<bool> {
        self.check(p)?;
        Ok(self.ech.insert(p.terms().iter()))
    }

    pub fn contains(&self, p: &Poly<F>) -> Result<bool> {
        self.check(p)?;
        Ok(self.ech.contains(p.terms().iter()))
    }

    /// Reduced echelon basis over the descending monomial order; each element
    /// has leading coefficient 1.
    pub fn basis(&self) -> Vec<Poly<F>> {
        self.ech
            .reduced_basis(|a, b| b.cmp(a))
            .into_iter()
            .map(|terms| Poly::from_terms(&self.ring, terms).expect("legal monomials"))
            .collect()
    }

    /// Some basis, cheaper than [`GradedSpan::basis`].
    pub fn raw_basis(&self) -> Vec<Poly<F>> {
        self.ech
            .rows()
            .into_iter()
            .map(|terms| Poly::from_terms(&self.ring, terms).expect("legal monomials"))
            .collect()
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(GradedSpan { ring: self.ring.clone(), degree: self.degree, ech: self.ech.intersect(&other.ech) })
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        out.ech.extend_from(&other.ech);
        Ok(out)
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        self.compatible(other)?;
        Ok(self.ech.is_subspace_of(&other.ech))
    }

    pub fn same_span(&self, other: &Self) -> Result<bool> {
        self.compatible(other)?;
        Ok(self.ech.same_span(&other.ech))
    }
}

/// The intersection of two spans in the same degree.
pub fn graded_intersection<F: Field>(a: &GradedSpan<F>, b: &GradedSpan<F>) -> Result<GradedSpan<F>> {
    a.intersect(b)
}
