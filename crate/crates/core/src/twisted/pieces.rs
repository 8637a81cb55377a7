use std::sync::{Arc, Mutex};

use super::{GradedSpan, TwistedAlgebra};
use crate::commpoly::Poly;
use crate::error::{Error, Result};
use crate::scalars::Field;

type Piece<F> = (Arc<GradedSpan<F>>, Arc<Vec<Poly<F>>>);

fn degrees<F: Field>(gens: &[Poly<F>]) -> Result<Vec<i64>> {
    gens.iter()
        .map(|g| match g.homogeneous_degree() {
            Some(d) if d >= 1 => Ok(d),
            Some(d) => Err(Error::DegreeMismatch { expected: 1, found: d }),
            None => Err(Error::NotHomogeneous),
        })
        .collect()
}

/// Unital subalgebra generated by homogeneous elements of positive degree,
/// with its graded pieces memoized.
pub struct Subalgebra<F> {
    algebra: Arc<TwistedAlgebra<F>>,
    generators: Vec<Poly<F>>,
    degrees: Vec<i64>,
    cache: Mutex<Vec<Piece<F>>>,
}

impl<F: Field> Subalgebra<F> {
    pub fn new(algebra: &Arc<TwistedAlgebra<F>>, generators: Vec<Poly<F>>) -> Result<Self> {
        for g in &generators {
            algebra.check_member(g)?;
        }
        let degrees = degrees(&generators)?;
        Ok(Subalgebra { algebra: algebra.clone(), generators, degrees, cache: Mutex::new(Vec::new()) })
    }

    pub fn algebra(&self) -> &Arc<TwistedAlgebra<F>> {
        &self.algebra
    }

    pub fn generators(&self) -> &[Poly<F>] {
        &self.generators
    }

    fn piece_full(&self, n: i64) -> Result<Piece<F>> {
        let ring = self.algebra.carrier();
        if n < 0 {
            return Ok((Arc::new(GradedSpan::new(ring, n)), Arc::new(Vec::new())));
        }
        let mut cache = self.cache.lock().expect("subalgebra cache");
        while cache.len() as i64 <= n {
            let k = cache.len() as i64;
            let mut span = GradedSpan::new(ring, k);
            if k == 0 {
                span.insert(&Poly::one(ring))?;
            }
            for (g, &d) in self.generators.iter().zip(&self.degrees) {
                if d > k {
                    continue;
                }
                let tw = self.algebra.twist_power(k - d)?.apply(g)?;
                for b in cache[(k - d) as usize].1.iter() {
                    span.insert(&b.mul(&tw)?)?;
                }
            }
            let raw = span.raw_basis();
            cache.push((Arc::new(span), Arc::new(raw)));
        }
        Ok(cache[n as usize].clone())
    }

    /// The degree-`n` piece.
    pub fn piece(&self, n: i64) -> Result<Arc<GradedSpan<F>>> {
        Ok(self.piece_full(n)?.0)
    }

    pub fn dims(&self, max_degree: i64) -> Result<Vec<usize>> {
        (0..=max_degree).map(|n| Ok(self.piece(n)?.dim())).collect()
    }
}

/// Degree-`n` piece of the subalgebra generated by `generators`.
pub fn span_generated<F: Field>(
    algebra: &Arc<TwistedAlgebra<F>>,
    generators: &[Poly<F>],
    n: i64,
) -> Result<GradedSpan<F>> {
    let sub = Subalgebra::new(algebra, generators.to_vec())?;
    Ok((*sub.piece(n)?).clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `h ∗ A`
    Right,
    /// `A ∗ h`
    Left,
    /// `A ∗ h ∗ A`
    TwoSided,
}

/// The ring acting on a module: the whole algebra or a generated subalgebra.
#[derive(Clone, Debug)]
pub enum Over<F> {
    Full,
    Generators(Vec<Poly<F>>),
}

/// Graded pieces of `Σ h_i A` (or `A h_i`, `A h_i A`), computed by multiplying
/// lower pieces by the generators of `A`.
pub struct ModulePieces<F> {
    algebra: Arc<TwistedAlgebra<F>>,
    over: Vec<Poly<F>>,
    over_degrees: Vec<i64>,
    elements: Vec<Poly<F>>,
    element_degrees: Vec<i64>,
    side: Side,
    cache: Mutex<Vec<Piece<F>>>,
}

impl<F: Field> ModulePieces<F> {
    pub fn new(algebra: &Arc<TwistedAlgebra<F>>, elements: Vec<Poly<F>>, side: Side, over: &Over<F>) -> Result<Self> {
        let over = match over {
            Over::Full => algebra.generators().iter().map(|(_, g)| g.clone()).collect(),
            Over::Generators(g) => g.clone(),
        };
        for e in elements.iter().chain(&over) {
            algebra.check_member(e)?;
        }
        let element_degrees = elements
            .iter()
            .map(|e| e.homogeneous_degree().ok_or(Error::NotHomogeneous))
            .collect::<Result<Vec<_>>>()?;
        Ok(ModulePieces {
            algebra: algebra.clone(),
            over_degrees: degrees(&over)?,
            over,
            elements,
            element_degrees,
            side,
            cache: Mutex::new(Vec::new()),
        })
    }

    fn start(&self) -> i64 {
        self.element_degrees.iter().copied().min().unwrap_or(0)
    }

    fn piece_full(&self, n: i64) -> Result<Piece<F>> {
        let ring = self.algebra.carrier();
        let start = self.start();
        if n < start || self.elements.is_empty() {
            return Ok((Arc::new(GradedSpan::new(ring, n)), Arc::new(Vec::new())));
        }
        let mut cache = self.cache.lock().expect("module cache");
        while start + (cache.len() as i64) <= n {
            let k = start + cache.len() as i64;
            let mut span = GradedSpan::new(ring, k);
            for (e, &d) in self.elements.iter().zip(&self.element_degrees) {
                if d == k {
                    span.insert(e)?;
                }
            }
            for (g, &d) in self.over.iter().zip(&self.over_degrees) {
                if k - d < start {
                    continue;
                }
                let lower = &cache[(k - d - start) as usize].1;
                if matches!(self.side, Side::Right | Side::TwoSided) {
                    let tw = self.algebra.twist_power(k - d)?.apply(g)?;
                    for b in lower.iter() {
                        span.insert(&b.mul(&tw)?)?;
                    }
                }
                if matches!(self.side, Side::Left | Side::TwoSided) {
                    let tw = self.algebra.twist_power(d)?;
                    for b in lower.iter() {
                        span.insert(&g.mul(&tw.apply(b)?)?)?;
                    }
                }
            }
            let raw = span.raw_basis();
            cache.push((Arc::new(span), Arc::new(raw)));
        }
        Ok(cache[(n - start) as usize].clone())
    }

    pub fn piece(&self, n: i64) -> Result<Arc<GradedSpan<F>>> {
        Ok(self.piece_full(n)?.0)
    }
}

/// Degree-`n` piece of `Σ` (side-products of each element with `over`).
pub fn module_piece<F: Field>(
    algebra: &Arc<TwistedAlgebra<F>>,
    generators: &[(Poly<F>, Side)],
    over: &Over<F>,
    n: i64,
) -> Result<GradedSpan<F>> {
    let mut out = GradedSpan::new(algebra.carrier(), n);
    for side in [Side::Right, Side::Left, Side::TwoSided] {
        let elems: Vec<Poly<F>> = generators.iter().filter(|(_, s)| *s == side).map(|(e, _)| e.clone()).collect();
        if elems.is_empty() {
            continue;
        }
        let mp = ModulePieces::new(algebra, elems, side, over)?;
        out = out.sum(&*mp.piece(n)?)?;
    }
    Ok(out)
}
