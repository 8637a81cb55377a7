use std::sync::Mutex;

use crate::envelope::{EnvElement, EnvSpan, Mode, Straightener};
use crate::error::{Error, Result};
use crate::scalars::{Field, RatFunc, Rational};

use super::{specialize_env, EnvMorphism};

/// Graded pieces of a two-sided ideal of `U(W+)`, built from
/// `I_n = gens_n + e1 I_{n-1} + I_{n-1} e1 + e2 I_{n-2} + I_{n-2} e2`.
pub struct IdealPieces<F> {
    gens: Vec<(i64, EnvElement<F>)>,
    st: Mutex<Straightener>,
    cache: Mutex<Vec<(EnvSpan<F>, Vec<EnvElement<F>>)>>,
}

impl<F: Field> IdealPieces<F> {
    pub fn new(generators: &[EnvElement<F>]) -> Result<Self> {
        let mut gens = Vec::new();
        for g in generators {
            if g.mode() != Mode::WPlus {
                return Err(Error::ModeError("ideal pieces live in the positive part".into()));
            }
            if g.is_zero() {
                continue;
            }
            let d = g.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
            gens.push((d, g.clone()));
        }
        Ok(IdealPieces { gens, st: Mutex::new(Straightener::new(Mode::WPlus)), cache: Mutex::new(Vec::new()) })
    }

    pub fn piece(&self, n: i64) -> Result<EnvSpan<F>> {
        if n < 0 {
            return Ok(EnvSpan::new(Mode::WPlus, n));
        }
        let e1 = EnvElement::gen(Mode::WPlus, 1)?;
        let e2 = EnvElement::gen(Mode::WPlus, 2)?;
        let mut cache = self.cache.lock().expect("ideal cache");
        let mut st = self.st.lock().expect("straightener");
        while cache.len() as i64 <= n {
            let k = cache.len() as i64;
            let mut span = EnvSpan::new(Mode::WPlus, k);
            for (d, g) in &self.gens {
                if *d == k {
                    span.insert(g)?;
                }
            }
            for (step, e) in [(1, &e1), (2, &e2)] {
                if k - step < 0 {
                    continue;
                }
                for b in &cache[(k - step) as usize].1 {
                    span.insert(&st.mul(e, b)?)?;
                    span.insert(&st.mul(b, e)?)?;
                }
            }
            let raw = span.raw_basis();
            cache.push((span, raw));
        }
        Ok(cache[n as usize].0.clone())
    }

    pub fn dims(&self, max_degree: i64) -> Result<Vec<usize>> {
        (0..=max_degree).map(|n| Ok(self.piece(n)?.dim())).collect()
    }
}

/// Outcome of comparing an ideal over `Q(a)` with the kernel of `λ_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericIdealCheck {
    pub degree: i64,
    pub kernel_dim: usize,
    /// Dimension of the ideal piece at the witness value (a lower bound for the generic one).
    pub witness_dim: usize,
    pub witness: Option<Rational>,
    pub equal: bool,
}

/// Decides `(gens)_n = (ker λ_a)_n` over `Q(a)` without eliminating over `Q(a)`.
///
/// Each generator is checked to map to zero, so the ideal sits inside the
/// kernel. Specialising `a` can only lower the rank of the (polynomial)
/// spanning set of the ideal piece, so its dimension at any rational `a0` is a
/// lower bound for the generic dimension. When that bound reaches the generic
/// kernel dimension the two spans coincide.
pub fn generic_ideal_matches_kernel(
    generators: &[EnvElement<RatFunc>],
    max_degree: i64,
    witnesses: &[Rational],
) -> Result<Vec<GenericIdealCheck>> {
    let lambda = EnvMorphism::lambda_generic(Mode::WPlus);
    for g in generators {
        if g.terms().values().any(|c| !c.is_polynomial()) {
            return Err(Error::ModeError("generators must have polynomial coefficients in a".into()));
        }
        if !lambda.eval(g)?.is_zero() {
            return Ok(Vec::new());
        }
    }
    let specialised: Vec<IdealPieces<Rational>> = witnesses
        .iter()
        .map(|a0| IdealPieces::new(&generators.iter().map(|g| specialize_env(g, a0)).collect::<Result<Vec<_>>>()?))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for n in 1..=max_degree {
        let kernel_dim = lambda.kernel_at_degree(n)?.dimension;
        let mut best = (0, None);
        for (a0, ideal) in witnesses.iter().zip(&specialised) {
            let d = ideal.piece(n)?.dim();
            if d > best.0 || best.1.is_none() {
                best = (d, Some(a0.clone()));
            }
            if d >= kernel_dim {
                break;
            }
        }
        out.push(GenericIdealCheck {
            degree: n,
            kernel_dim,
            witness_dim: best.0,
            equal: best.0 == kernel_dim,
            witness: best.1,
        });
    }
    Ok(out)
}

/// Degree-`n` piece of the two-sided ideal generated by `generators`.
pub fn ideal_graded_piece<F: Field>(generators: &[EnvElement<F>], n: i64) -> Result<EnvSpan<F>> {
    IdealPieces::new(generators)?.piece(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphlab::EnvMorphism;
    use crate::scalars::{int, Rational};

    #[test]
    fn ideal_of_g4_is_kernel_of_lambda_zero() {
        let g4: EnvElement<Rational> = EnvElement::parse("e1*e3 - e2^2 - e4", Mode::WPlus).unwrap();
        let ideal = IdealPieces::new(&[g4]).unwrap();
        let l0 = EnvMorphism::lambda(int(0), Mode::WPlus);
        let partitions = [1, 2, 3, 5, 7, 11, 15, 22];
        for n in 4..=8 {
            let piece = ideal.piece(n).unwrap();
            assert_eq!(piece.dim() as i64, partitions[n as usize - 1] - n);
            assert!(piece.same_span(&l0.kernel_at_degree(n).unwrap().span().unwrap()));
        }
        assert_eq!(ideal.piece(3).unwrap().dim(), 0);
    }

    #[test]
    fn generic_certificate_detects_missing_generators() {
        let hs = crate::named::h_elements::<RatFunc>().unwrap();
        let w = [crate::scalars::rat(3, 7)];
        let full = generic_ideal_matches_kernel(&hs[..3], 7, &w).unwrap();
        assert!(full.iter().all(|r| r.equal));
        let partial = generic_ideal_matches_kernel(&hs[..1], 6, &w).unwrap();
        assert!(partial[4].equal && !partial[5].equal);
        assert_eq!((partial[5].witness_dim, partial[5].kernel_dim), (2, 4));
        // g4 is not in the generic kernel.
        let g4: EnvElement<RatFunc> = EnvElement::parse("e1*e3 - e2^2 - e4", Mode::WPlus).unwrap();
        assert!(generic_ideal_matches_kernel(&[g4], 5, &w).unwrap().is_empty());
    }
}
