//! Named elements and families that recur across the checks.

use std::sync::Arc;

use crate::commpoly::Poly;
use crate::envelope::{EnvElement, Mode};
use crate::error::Result;
use crate::scalars::Field;
use crate::twisted::{algebra_s, Over, Subalgebra, TwistedAlgebra};

pub const G4: &str = "e1*e3 - e2^2 - e4";
pub const G: &str = "e1*e5 - 4*e2*e4 + 3*e3^2 + 2*e6";

pub const H1: &str = "e1*e2^2 - e1^2*e3 - 2*a*e2*e3 + (1 + 2*a)*e1*e4 - (a^2 + a)*e5";
pub const H2: &str = G;
pub const H3: &str = "-4*e1^2*e2^2 - 4*e2^3 + 4*e1^3*e3 + (20*a^2 + 14*a - 7)*e3^2 \
     - (16*a^2 + 18*a + 5)*e1*e5 + (16*a^3 + 36*a^2 + 16*a - 2)*e6";
pub const H4: &str = "4*e2^3 - 4*e1*e2*e3 + (7 - 4*a)*e3^2 + (1 + 4*a)*e1*e5 + (2 - 4*a - 4*a^2)*e6";
pub const H5: &str = "4*e2^3 + (7 - 14*a)*e3^2 - 4*e1^2*e4 + (5 + 14*a)*e1*e5 + (2 - 16*a - 12*a^2)*e6";

pub const R5: &str = "e2*(e1^3 - 6*e2*e1 + 12*e1*e2)";
pub const R6: &str = "e2*(-48*e4 - 36*e1*e3 + e1^4)";
pub const R7: &str = "e2*(e1^5 - 40*(e2^2*e1 - 3*e2*e1*e2 + 3*e1*e2^2))";

/// The same elements written with a left factor `e1`; `R6_LEFT` still needs `+ 12g`.
pub const R5_LEFT: &str = "e1*(e1^2*e2 - 3*e1*e2*e1 + 3*e2*e1^2 + 6*e2^2)";
pub const R6_LEFT: &str = "e1*(-36*e2*e3 - 18*e5 + 2*e4*e1 - e3*e1^2 + e2*e1^3)";
pub const R7_LEFT: &str = "e1*(e1^4*e2 - 5*e1^3*e2*e1 + 10*e1^2*e2*e1^2 - 10*e1*e2*e1^3 + 5*e2*e1^4 - 40*e2^3)";

/// Twisted-product expressions in `S` (`u, v, w` = `x, y, z`).
pub const B5: &str = "(u*v - v*w)*(u^3 - 6*(u*v - v*w)*u + 12*u*(u*v - v*w))";
pub const B6: &str = "(u*v - v*w)*(-48*(u*v - 3*v*w)*v^2 - 36*u*(u*v - 2*v*w)*v + u^4)";
pub const B7: &str = "(u*v - v*w)*(u^5 - 40*((u*v - v*w)^2*u - 3*(u*v - v*w)*u*(u*v - v*w) + 3*u*(u*v - v*w)^2))";
pub const P: &str = "y^3*z - y^2*z^2";
/// `(uv − vw)(u + 2v)p`, a twisted product.
pub const H: &str = "(u*v - v*w)*(u + 2*v)*(v^3*w - v^2*w^2)";

pub fn env<F: Field>(s: &str) -> Result<EnvElement<F>> {
    EnvElement::parse(s, Mode::WPlus)
}

/// `h1, …, h5` over the field of `F`.
pub fn h_elements<F: Field>() -> Result<Vec<EnvElement<F>>> {
    [H1, H2, H3, H4, H5].iter().map(|s| env(s)).collect()
}

/// Generators `u` and `(u − w)v` of `B = φ(U(W+))` inside `S`.
pub fn b_generators<F: Field>(s: &TwistedAlgebra<F>) -> Result<Vec<Poly<F>>> {
    Ok(vec![s.parse("x")?, s.parse("x*y - y*z")?])
}

pub fn b_over<F: Field>(s: &TwistedAlgebra<F>) -> Result<Over<F>> {
    Ok(Over::Generators(b_generators(s)?))
}

pub fn algebra_b<F: Field>() -> Result<(Arc<TwistedAlgebra<F>>, Subalgebra<F>)> {
    let s = algebra_s::<F>();
    let b = Subalgebra::new(&s, b_generators(&s)?)?;
    Ok((s, b))
}

pub fn p<F: Field>(s: &TwistedAlgebra<F>) -> Result<Poly<F>> {
    s.parse(P)
}

pub fn b567<F: Field>(s: &TwistedAlgebra<F>) -> Result<Vec<Poly<F>>> {
    [B5, B6, B7].iter().map(|e| s.parse_twisted(e)).collect()
}

pub fn h<F: Field>(s: &TwistedAlgebra<F>) -> Result<Poly<F>> {
    s.parse_twisted(H)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphlab::EnvMorphism;
    use crate::scalars::Rational;

    #[test]
    fn b_elements_are_images() {
        let phi = EnvMorphism::<Rational>::phi(Mode::WPlus);
        let s = algebra_s::<Rational>();
        let bs = b567(&s).unwrap();
        for (b, r) in bs.iter().zip([R5, R6, R7]) {
            assert_eq!(*b, phi.eval(&env(r).unwrap()).unwrap());
        }
        assert_eq!(h(&s).unwrap(), s.parse("(x*y - y*z)*x*(y^3*z - y^2*z^2)").unwrap());
    }

    #[test]
    fn left_factor_forms_agree() {
        let g = env::<Rational>(G).unwrap();
        assert_eq!(env::<Rational>(R5).unwrap(), env(R5_LEFT).unwrap());
        assert_eq!(env::<Rational>(R6).unwrap(), env::<Rational>(R6_LEFT).unwrap().add(&g.scale(&crate::scalars::int(12))).unwrap());
        assert_eq!(env::<Rational>(R7).unwrap(), env(R7_LEFT).unwrap());
    }
}
