//! The maps `λ_a`, `φ` (and their Laurent extensions) from the enveloping
//! algebra into twisted polynomial rings, with graded kernels, ideal pieces
//! and preimage lifting.

mod ideal;
mod identities;
mod lift;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::commpoly::{Monomial, Poly};
use crate::envelope::{env_basis, EnvElement, EnvSpan, FreeElement, Mode, PBWMonomial};
use crate::error::{Error, Result};
use crate::scalars::{ratfunc_eval, ExactMatrix, Field, RatFunc, Rational, UniPoly};
use crate::twisted::{algebra_r, algebra_r_hat, algebra_s, algebra_s_hat, TwistedAlgebra};

pub use ideal::{generic_ideal_matches_kernel, ideal_graded_piece, GenericIdealCheck, IdealPieces};
pub use identities::{laurent_identity_check, Identity};
pub use lift::{membership, membership_locus, preimage_lift, presentation_from_syzygies, MembershipLocus};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum MorphKind {
    Lambda,
    Phi,
}

/// `λ_a : e_n ↦ (u − (n−1)a v) v^{n−1}` into `R`, or
/// `φ : e_n ↦ (u − (n−1)w) v^{n−1}` into `S`.
pub struct EnvMorphism<F> {
    kind: MorphKind,
    param: F,
    mode: Mode,
    target: Arc<TwistedAlgebra<F>>,
    shifted: Mutex<HashMap<(i64, i64), Poly<F>>>,
}

impl<F: Field> std::fmt::Debug for EnvMorphism<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl<F: Field> EnvMorphism<F> {
    pub fn lambda(a: F, mode: Mode) -> Self {
        let target = match mode {
            Mode::WPlus => algebra_r(),
            Mode::Witt => algebra_r_hat(),
        };
        EnvMorphism { kind: MorphKind::Lambda, param: a, mode, target, shifted: Mutex::new(HashMap::new()) }
    }

    pub fn phi(mode: Mode) -> Self {
        let target = match mode {
            Mode::WPlus => algebra_s(),
            Mode::Witt => algebra_s_hat(),
        };
        EnvMorphism { kind: MorphKind::Phi, param: F::zero(), mode, target, shifted: Mutex::new(HashMap::new()) }
    }

    pub fn kind(&self) -> MorphKind {
        self.kind
    }

    pub fn param(&self) -> &F {
        &self.param
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn target(&self) -> &Arc<TwistedAlgebra<F>> {
        &self.target
    }

    pub fn name(&self) -> String {
        match self.kind {
            MorphKind::Lambda => format!("lambda[a={}]", self.param),
            MorphKind::Phi => "phi".to_string(),
        }
    }

    /// Image of `e_i` as a commutative polynomial.
    pub fn generator_image(&self, i: i64) -> Result<Poly<F>> {
        self.mode.check_index(i)?;
        let ring = self.target.carrier();
        let x = Poly::var(ring, "x")?;
        let y = Poly::var(ring, "y")?;
        let k = F::from_int(i - 1);
        let lead = match self.kind {
            MorphKind::Lambda => x.sub(&y.scale(&(k * &self.param)))?,
            MorphKind::Phi => x.sub(&Poly::var(ring, "z")?.scale(&k))?,
        };
        lead.mul(&y.pow(i - 1)?)
    }

    /// `μ^j` applied to the image of `e_i`.
    fn shifted_image(&self, i: i64, j: i64) -> Result<Poly<F>> {
        if let Some(p) = self.shifted.lock().expect("image cache").get(&(i, j)) {
            return Ok(p.clone());
        }
        let p = self.target.twist_power(j)?.apply(&self.generator_image(i)?)?;
        self.shifted.lock().expect("image cache").insert((i, j), p.clone());
        Ok(p)
    }

    /// Image of the word `e_{i1} ⋯ e_{ik}`.
    pub fn eval_word(&self, word: &[i64]) -> Result<Poly<F>> {
        let mut acc = Poly::one(self.target.carrier());
        let mut deg = 0;
        for &i in word {
            acc = acc.mul(&self.shifted_image(i, deg)?)?;
            deg += i;
        }
        Ok(acc)
    }

    pub fn eval(&self, f: &EnvElement<F>) -> Result<Poly<F>> {
        if f.mode() != self.mode {
            return Err(Error::ModeError(format!("{} element fed to a {} map", f.mode(), self.mode)));
        }
        let mut out = Poly::zero(self.target.carrier());
        for (m, c) in f.terms() {
            out = out.add(&self.eval_word(m.indices())?.scale(c))?;
        }
        Ok(out)
    }

    /// Image of a free-algebra element under `t_i ↦ (image of e_i)`.
    pub fn eval_free(&self, f: &FreeElement<F>) -> Result<Poly<F>> {
        let mut out = Poly::zero(self.target.carrier());
        for (w, c) in f.terms() {
            let word: Vec<i64> = w.letters().iter().map(|&l| l as i64).collect();
            out = out.add(&self.eval_word(&word)?.scale(c))?;
        }
        Ok(out)
    }

    /// Matrix of the degree-`n` map in PBW / monomial coordinates.
    pub fn matrix_at_degree(&self, n: i64) -> Result<(Vec<PBWMonomial>, Vec<Monomial>, ExactMatrix<F>)> {
        let basis = env_basis(n, self.mode)?;
        let rows = self.target.piece_monomials(n)?;
        let cols: Vec<Vec<F>> = basis
            .iter()
            .map(|m| {
                let img = self.eval_word(m.indices())?;
                img.to_vector(&rows).ok_or_else(|| Error::NotInSubring(img.to_string()))
            })
            .collect::<Result<_>>()?;
        let mat = ExactMatrix::from_columns(&cols, rows.len())?;
        Ok((basis, rows, mat))
    }

    pub fn kernel_at_degree(&self, n: i64) -> Result<KernelReport<F>> {
        if self.mode != Mode::WPlus {
            return Err(Error::ModeError("kernels are computed in the positive part only".into()));
        }
        let (basis, _, mat) = self.matrix_at_degree(n)?;
        let ns = mat.nullspace();
        let elems: Vec<EnvElement<F>> =
            ns.basis.iter().map(|v| EnvElement::from_vector(Mode::WPlus, &basis, v)).collect();
        let mut verified = true;
        for e in &elems {
            verified &= self.eval(e)?.is_zero();
        }
        Ok(KernelReport {
            degree: n,
            dimension: elems.len(),
            basis: elems,
            image_rank: ns.rank,
            excluded: ns.excluded,
            verified,
        })
    }
}

impl EnvMorphism<RatFunc> {
    /// `λ_a` over `ℚ(a)`.
    pub fn lambda_generic(mode: Mode) -> Self {
        Self::lambda(RatFunc::param(), mode)
    }
}

/// Degree-`n` kernel of a map out of `U(W+)`.
#[derive(Clone, Debug)]
pub struct KernelReport<F> {
    pub degree: i64,
    pub dimension: usize,
    /// Reduced echelon basis over the partition order of the PBW basis.
    pub basis: Vec<EnvElement<F>>,
    pub image_rank: usize,
    /// Parameter factors whose roots may change the answer.
    pub excluded: Vec<UniPoly>,
    /// Every basis element was re-evaluated to zero.
    pub verified: bool,
}

impl<F: Field> KernelReport<F> {
    pub fn span(&self) -> Result<EnvSpan<F>> {
        EnvSpan::from_elements(Mode::WPlus, self.degree, &self.basis)
    }
}

pub fn kernel_at_degree<F: Field>(m: &EnvMorphism<F>, n: i64) -> Result<KernelReport<F>> {
    m.kernel_at_degree(n)
}

pub fn eval_morphism<F: Field>(m: &EnvMorphism<F>, f: &EnvElement<F>) -> Result<Poly<F>> {
    m.eval(f)
}

/// Evaluates every coefficient at `a = a0`.
pub fn specialize_env(e: &EnvElement<RatFunc>, a0: &Rational) -> Result<EnvElement<Rational>> {
    e.map_coeffs(|c| ratfunc_eval(c, a0))
}

pub fn specialize_poly(p: &Poly<RatFunc>, a0: &Rational) -> Result<Poly<Rational>> {
    p.map_coeffs(|c| ratfunc_eval(c, a0))
}

/// Whether `a0` avoids all the given factors.
pub fn avoids(excluded: &[UniPoly], a0: &Rational) -> bool {
    excluded.iter().all(|f| !num_traits::Zero::is_zero(&f.eval(a0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat};

    type Q = Rational;

    fn env<F: Field>(s: &str) -> EnvElement<F> {
        EnvElement::parse(s, Mode::WPlus).unwrap()
    }

    #[test]
    fn generator_images() {
        let l = EnvMorphism::lambda_generic(Mode::WPlus);
        assert_eq!(l.eval(&env("e1*e2")).unwrap().to_string(), "x^2*y + (-a - 1)*x*y^2");
        let phi = EnvMorphism::<Q>::phi(Mode::WPlus);
        assert_eq!(phi.eval(&env("e1*e3 - e2^2 - e4")).unwrap().to_string(), "y^3*z - y^2*z^2");
        assert!(phi.eval(&env("e1*e5 - 4*e2*e4 + 3*e3^2 + 2*e6")).unwrap().is_zero());
        assert!(phi.generator_image(0).is_err());
        let hat = EnvMorphism::<Q>::phi(Mode::Witt);
        assert_eq!(hat.generator_image(-1).unwrap().to_string(), "x*y^-2 + 2*y^-2*z");
    }

    #[test]
    fn witt_relations_hold() {
        let l = EnvMorphism::lambda_generic(Mode::WPlus);
        let phi = EnvMorphism::<Q>::phi(Mode::WPlus);
        for n in 1..4 {
            for m in (n + 1)..6 {
                let c = rat(m - n, 1);
                let lhs = l.eval_word(&[n, m]).unwrap().sub(&l.eval_word(&[m, n]).unwrap()).unwrap();
                assert_eq!(lhs, l.generator_image(n + m).unwrap().scale(&RatFunc::constant(c.clone())));
                let lhs = phi.eval_word(&[n, m]).unwrap().sub(&phi.eval_word(&[m, n]).unwrap()).unwrap();
                assert_eq!(lhs, phi.generator_image(n + m).unwrap().scale(&c));
            }
        }
    }

    #[test]
    fn kernel_dimensions() {
        let l = EnvMorphism::lambda_generic(Mode::WPlus);
        let dims: Vec<usize> = (1..=6).map(|n| l.kernel_at_degree(n).unwrap().dimension).collect();
        assert_eq!(dims, vec![0, 0, 0, 0, 1, 4]);
        let k5 = l.kernel_at_degree(5).unwrap();
        assert!(k5.verified);
        let factors: Vec<String> = k5.excluded.iter().map(|f| f.to_string()).collect();
        assert!(factors.contains(&"a".to_string()) && factors.contains(&"a - 1".to_string()), "{factors:?}");
        let l0 = EnvMorphism::<Q>::lambda(int(0), Mode::WPlus);
        let dims: Vec<usize> = (4..=6).map(|n| l0.kernel_at_degree(n).unwrap().dimension).collect();
        assert_eq!(dims, vec![1, 2, 5]);
        let phi = EnvMorphism::<Q>::phi(Mode::WPlus);
        assert_eq!(phi.kernel_at_degree(5).unwrap().dimension, 0);
        let k6 = phi.kernel_at_degree(6).unwrap();
        assert_eq!(k6.dimension, 1);
        assert!(k6.span().unwrap().contains(&env("e1*e5 - 4*e2*e4 + 3*e3^2 + 2*e6")).unwrap());
    }

    #[test]
    fn specialization_matches_direct_computation() {
        let l = EnvMorphism::lambda_generic(Mode::WPlus);
        let k = l.kernel_at_degree(6).unwrap();
        let a0 = rat(3, 7);
        assert!(avoids(&k.excluded, &a0));
        let spec: Vec<EnvElement<Q>> = k.basis.iter().map(|e| specialize_env(e, &a0).unwrap()).collect();
        let direct = EnvMorphism::<Q>::lambda(a0, Mode::WPlus).kernel_at_degree(6).unwrap();
        let s1 = EnvSpan::from_elements(Mode::WPlus, 6, &spec).unwrap();
        assert!(s1.same_span(&direct.span().unwrap()));
    }

    #[test]
    fn twisted_expressions_match_images() {
        let phi = EnvMorphism::<Q>::phi(Mode::WPlus);
        let s = phi.target().clone();
        let cases = [
            ("(u*v - v*w)*(u^3 - 6*(u*v - v*w)*u + 12*u*(u*v - v*w))", "e2*(e1^3 - 6*e2*e1 + 12*e1*e2)"),
            ("(u*v - v*w)*(-48*(u*v - 3*v*w)*v^2 - 36*u*(u*v - 2*v*w)*v + u^4)", "e2*(-48*e4 - 36*e1*e3 + e1^4)"),
        ];
        for (b, r) in cases {
            assert_eq!(s.parse_twisted(b).unwrap(), phi.eval(&env(r)).unwrap(), "{b}");
        }
        assert!(s.parse_twisted("v^-1").is_err());
        let hat = crate::twisted::algebra_s_hat::<Q>();
        assert_eq!(hat.parse_twisted("v^-2*v^2").unwrap(), hat.parse("1").unwrap());
        assert!(hat.parse_twisted("u^-1").is_err());
    }
}
