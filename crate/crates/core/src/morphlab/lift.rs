use crate::commpoly::{Monomial, Poly};
use crate::envelope::{free_word_basis, FreeElement};
use crate::error::{Error, Result};
use crate::scalars::{ExactMatrix, Field, RatFunc, UniPoly};
use crate::twisted::GradedSpan;

use super::EnvMorphism;

fn coordinates<F: Field>(polys: &[Poly<F>], extra: Option<&Poly<F>>) -> Vec<Monomial> {
    let mut rows: Vec<Monomial> = polys.iter().chain(extra).flat_map(|p| p.terms().keys().copied()).collect();
    rows.sort();
    rows.dedup();
    rows
}

/// A free-algebra element of degree `n` mapping to `target`, or `None` if the
/// target is not in the image. Free unknowns are set to zero.
pub fn preimage_lift<F: Field>(m: &EnvMorphism<F>, target: &Poly<F>, n: i64) -> Result<Option<FreeElement<F>>> {
    if !target.is_zero() {
        match target.homogeneous_degree() {
            Some(d) if d == n => {}
            Some(d) => return Err(Error::DegreeMismatch { expected: n, found: d }),
            None => return Err(Error::NotHomogeneous),
        }
    }
    let words = free_word_basis(n);
    let images: Vec<Poly<F>> = words
        .iter()
        .map(|w| m.eval_word(&w.letters().iter().map(|&l| l as i64).collect::<Vec<_>>()))
        .collect::<Result<_>>()?;
    let rows = coordinates(&images, Some(target));
    let cols: Vec<Vec<F>> = images.iter().map(|p| p.to_vector(&rows).expect("rows cover")).collect();
    let mat = ExactMatrix::from_columns(&cols, rows.len())?;
    let Some(sol) = mat.solve(&target.to_vector(&rows).expect("rows cover"))? else {
        return Ok(None);
    };
    let mut out = FreeElement::zero();
    for (w, c) in words.iter().zip(sol) {
        if !c.is_zero() {
            let letter_terms = w.letters().iter().map(|&l| FreeElement::letter(l)).collect::<Result<Vec<_>>>()?;
            let word = letter_terms.iter().fold(FreeElement::constant(F::one()), |acc, t| acc.mul(t));
            out = out.add(&word.scale(&c));
        }
    }
    Ok(Some(out))
}

/// Relations `q_j = t1·b̃_1^j + t2·b̃_2^j` from syzygies `(b_1^j, b_2^j)` of
/// `(image of e1, image of e2)`.
pub fn presentation_from_syzygies<F: Field>(
    m: &EnvMorphism<F>,
    syzygies: &[(Poly<F>, Poly<F>)],
    lifts: Option<&[(FreeElement<F>, FreeElement<F>)]>,
) -> Result<Vec<FreeElement<F>>> {
    let alg = m.target();
    let a1 = m.generator_image(1)?;
    let a2 = m.generator_image(2)?;
    let t1 = FreeElement::letter(1)?;
    let t2 = FreeElement::letter(2)?;
    if let Some(l) = lifts {
        if l.len() != syzygies.len() {
            return Err(Error::ShapeMismatch(format!("{} syzygies but {} lifts", syzygies.len(), l.len())));
        }
    }
    let mut out = Vec::new();
    for (j, (b1, b2)) in syzygies.iter().enumerate() {
        let total = alg.mul(&a1, b1)?.add(&alg.mul(&a2, b2)?)?;
        if !total.is_zero() {
            return Err(Error::InvalidSyzygy(format!("u*b1 + e2-image*b2 = {total}")));
        }
        let degree = |p: &Poly<F>, shift: i64| -> Result<i64> {
            match p.homogeneous_degree() {
                Some(d) => Ok(d),
                None if p.is_zero() => Ok(total_degree(b1, b2)? - shift),
                None => Err(Error::NotHomogeneous),
            }
        };
        let (l1, l2) = match lifts {
            Some(l) => {
                let (l1, l2) = &l[j];
                if m.eval_free(l1)? != *b1 || m.eval_free(l2)? != *b2 {
                    return Err(Error::InvalidSyzygy(format!("lifts of syzygy {} do not map onto it", j + 1)));
                }
                (l1.clone(), l2.clone())
            }
            None => {
                let l1 = preimage_lift(m, b1, degree(b1, 1)?)?;
                let l2 = preimage_lift(m, b2, degree(b2, 2)?)?;
                match (l1, l2) {
                    (Some(l1), Some(l2)) => (l1, l2),
                    _ => return Err(Error::InvalidSyzygy(format!("syzygy {} has a component outside the image", j + 1))),
                }
            }
        };
        out.push(t1.mul(&l1).add(&t2.mul(&l2)));
    }
    Ok(out)
}

fn total_degree<F: Field>(b1: &Poly<F>, b2: &Poly<F>) -> Result<i64> {
    if let Some(d) = b1.homogeneous_degree() {
        return Ok(d + 1);
    }
    if let Some(d) = b2.homogeneous_degree() {
        return Ok(d + 2);
    }
    Err(Error::NotHomogeneous)
}

/// Exact membership test in a graded span.
pub fn membership<F: Field>(f: &Poly<F>, span: &GradedSpan<F>) -> Result<bool> {
    span.contains(f)
}

/// Where, as a function of the parameter, a target lies in a span.
#[derive(Clone, Debug)]
pub struct MembershipLocus {
    /// Generic rank of the spanning set.
    pub rank: usize,
    /// The spanning set keeps its rank at every specialization.
    pub rank_stable: bool,
    pub member_generically: bool,
    /// Squarefree polynomial whose roots are the specializations where the
    /// target joins the span (meaningful when not a generic member).
    pub locus: UniPoly,
    /// Irreducible-over-ℚ factors of `locus`, linear ones first.
    pub factors: Vec<UniPoly>,
}

/// Computes the values of `a` at which `target` lies in the span of
/// `spanning` via gcds of maximal minors.
pub fn membership_locus(spanning: &[Poly<RatFunc>], target: &Poly<RatFunc>) -> Result<MembershipLocus> {
    let rows = coordinates(spanning, Some(target));
    let vecs: Vec<Vec<RatFunc>> = spanning.iter().map(|p| p.to_vector(&rows).expect("rows cover")).collect();
    let base = ExactMatrix::from_columns(&vecs, rows.len())?;
    let rank = base.rank();
    let mut aug_vecs = vecs.clone();
    aug_vecs.push(target.to_vector(&rows).expect("rows cover"));
    let aug = ExactMatrix::from_columns(&aug_vecs, rows.len())?;
    let member_generically = aug.rank() == rank;
    let minors_gcd = |m: &ExactMatrix<RatFunc>, k: usize, cols: &[usize]| -> Result<UniPoly> {
        let mut g = UniPoly::zero();
        for_each_subset(m.rows(), k, &mut |rs| {
            if g.is_one() {
                return Ok(());
            }
            let entries: Vec<RatFunc> =
                rs.iter().flat_map(|&r| cols.iter().map(move |&c| (r, c))).map(|(r, c)| m.get(r, c).clone()).collect();
            let d = ExactMatrix::new(k, k, entries)?.det()?;
            g = g.gcd(d.numer());
            Ok(())
        })?;
        Ok(g)
    };
    let base_cols = independent_columns(&base);
    let rank_locus = minors_gcd(&base, rank, &base_cols)?;
    let rank_stable = rank_locus.is_constant();
    let locus = if member_generically {
        UniPoly::zero()
    } else {
        let mut cols = base_cols.clone();
        cols.push(spanning.len());
        minors_gcd(&aug, rank + 1, &cols)?.squarefree_part().monic()
    };
    let factors = crate::scalars::excluded_factors(&[RatFunc::from_poly(locus.clone())]);
    Ok(MembershipLocus { rank, rank_stable, member_generically, locus, factors })
}

fn independent_columns(m: &ExactMatrix<RatFunc>) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for c in 0..m.cols() {
        let mut trial = chosen.clone();
        trial.push(c);
        let cols: Vec<Vec<RatFunc>> = trial.iter().map(|&j| (0..m.rows()).map(|r| m.get(r, j).clone()).collect()).collect();
        if ExactMatrix::from_columns(&cols, m.rows()).expect("columns").rank() == trial.len() {
            chosen = trial;
        }
    }
    chosen
}

fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> Result<()>) -> Result<()> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> Result<()>) -> Result<()> {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f)?;
            cur.pop();
        }
        Ok(())
    }
    rec(0, n, k, &mut Vec::new(), f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::{free_reduce_and_project, Mode};
    use crate::scalars::{int, Rational};

    type Q = Rational;

    fn free(s: &str) -> FreeElement<Q> {
        FreeElement::parse(s).unwrap()
    }

    #[test]
    fn lifts_into_a0() {
        let l0 = EnvMorphism::<Q>::lambda(int(0), Mode::WPlus);
        let r = l0.target().clone();
        let target = r.product_chain(&[r.parse("u").unwrap(), r.parse("u").unwrap(), r.parse("v").unwrap()]).unwrap();
        let lift = preimage_lift(&l0, &target, 3).unwrap().unwrap();
        assert_eq!(l0.eval_free(&lift).unwrap(), target);
        assert_eq!(l0.eval_free(&free("t1*t2")).unwrap(), target);
        let y5 = r.parse("v^5").unwrap();
        assert!(preimage_lift(&l0, &y5, 5).unwrap().is_none());
    }

    #[test]
    fn presentation_of_a0() {
        let l0 = EnvMorphism::<Q>::lambda(int(0), Mode::WPlus);
        let r = l0.target().clone();
        let ch = |fs: &[&str]| r.product_chain(&fs.iter().map(|f| r.parse(f).unwrap()).collect::<Vec<_>>()).unwrap();
        let b11 = ch(&["u", "u", "v"]);
        let b12 = ch(&["u", "u + 2*v"]).neg();
        let b21 = ch(&["u", "u", "v", "v"]);
        let b22 = ch(&["u", "u + 2*v", "v"]).neg();
        let syz = vec![(b11, b12), (b21, b22)];
        let lifts = vec![(free("t1*t2"), free("-t1^2 - 2*t2")), (free("t1^2*t2 - t1*t2*t1"), free("2*t2*t1 - 3*t1*t2"))];
        let qs = presentation_from_syzygies(&l0, &syz, Some(&lifts)).unwrap();
        assert_eq!(qs[0], free("t1^2*t2 - t2*t1^2 - 2*t2^2"));
        assert_eq!(qs[1], free("t1^3*t2 - t1^2*t2*t1 + 2*t2^2*t1 - 3*t2*t1*t2"));
        let auto = presentation_from_syzygies(&l0, &syz, None).unwrap();
        for q in &auto {
            assert!(l0.eval_free(q).unwrap().is_zero());
        }
        assert!(presentation_from_syzygies(&l0, &[], None).unwrap().is_empty());
        let bad = vec![(r.parse("u").unwrap(), Poly::zero(r.carrier()))];
        assert!(matches!(presentation_from_syzygies(&l0, &bad, None), Err(Error::InvalidSyzygy(_))));
        assert_eq!(free_reduce_and_project(&qs[0]).unwrap().to_string(), "2*e1*e3 - 2*e2^2 - 2*e4");
    }

    #[test]
    fn locus_of_a_simple_family() {
        // span{x^2 + a*y^2} contains x^2 + y^2 only at a = 1
        let r = crate::twisted::algebra_r::<RatFunc>();
        let span = vec![r.parse("x^2 + a*y^2").unwrap()];
        let loc = membership_locus(&span, &r.parse("x^2 + y^2").unwrap()).unwrap();
        assert!(!loc.member_generically);
        assert!(loc.rank_stable);
        assert_eq!(loc.factors, vec![UniPoly::from_ints(&[-1, 1])]);
    }
}
