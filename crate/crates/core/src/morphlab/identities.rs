use crate::commpoly::Poly;
use crate::envelope::Mode;
use crate::error::Result;
use crate::scalars::Field;

use super::EnvMorphism;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// `λ_0(e_n) ∗ u = u ∗ λ_1(e_n)`.
    ConjLambda { n: i64 },
    /// `[φ̂(e_n), w^j p] = (j+4) v^n w^j p` in `Ŝ`.
    AdWjp { n: i64, j: u32 },
    /// `(φ̂(e1) − φ̂(e2) v^{-1}) w^j p = w^{j+1} p` in `Ŝ`.
    ClosingProduct { j: u32 },
}

fn wjp<F: Field>(phi: &EnvMorphism<F>, j: u32) -> Result<Poly<F>> {
    let s = phi.target();
    let p = phi.eval_word(&[1, 3])?.sub(&phi.eval_word(&[2, 2])?)?.sub(&phi.eval_word(&[4])?)?;
    let w = s.parse("w")?;
    let mut acc = p;
    for _ in 0..j {
        acc = s.mul(&w, &acc)?;
    }
    Ok(acc)
}

pub fn laurent_identity_check<F: Field>(identity: Identity) -> Result<bool> {
    match identity {
        Identity::ConjLambda { n } => {
            let mode = if n >= 1 { Mode::WPlus } else { Mode::Witt };
            let l0 = EnvMorphism::<F>::lambda(F::zero(), mode);
            let l1 = EnvMorphism::<F>::lambda(F::one(), mode);
            let r = l0.target().clone();
            let u = r.parse("u")?;
            Ok(r.mul(&l0.generator_image(n)?, &u)? == r.mul(&u, &l1.generator_image(n)?)?)
        }
        Identity::AdWjp { n, j } => {
            let phi = EnvMorphism::<F>::phi(Mode::Witt);
            let s = phi.target().clone();
            let h = wjp(&phi, j)?;
            let lhs = s.commutator(&phi.generator_image(n)?, &h)?;
            let vn = Poly::var(s.carrier(), "y")?.pow(n)?;
            let rhs = s.mul(&vn, &h)?.scale(&F::from_int(j as i64 + 4));
            Ok(lhs == rhs)
        }
        Identity::ClosingProduct { j } => {
            let phi = EnvMorphism::<F>::phi(Mode::Witt);
            let s = phi.target().clone();
            let vinv = s.parse("v^-1")?;
            let left = phi.generator_image(1)?.sub(&s.mul(&phi.generator_image(2)?, &vinv)?)?;
            Ok(s.mul(&left, &wjp(&phi, j)?)? == wjp(&phi, j + 1)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rational;

    #[test]
    fn conjugation_and_commutators() {
        for n in [-2, 0, 1, 3, 8] {
            assert!(laurent_identity_check::<Rational>(Identity::ConjLambda { n }).unwrap(), "n = {n}");
        }
        assert!(laurent_identity_check::<Rational>(Identity::AdWjp { n: 1, j: 0 }).unwrap());
        assert!(laurent_identity_check::<Rational>(Identity::AdWjp { n: -2, j: 1 }).unwrap());
        assert!(laurent_identity_check::<Rational>(Identity::ClosingProduct { j: 2 }).unwrap());
    }
}
