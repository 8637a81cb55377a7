use std::collections::HashMap;
use std::sync::Arc;

use super::{Monomial, PolyRing, MAX_VARS};
use crate::error::{Error, Result};

/// Monomial subring generated by a finite set of monomials, e.g. `{x, y, y*z}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    generators: Vec<Monomial>,
}

impl Restriction {
    pub fn new(generators: Vec<Monomial>) -> Self {
        Restriction { generators }
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    /// Whether `m` is a product of generators.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.contains_memo(m, &mut HashMap::new())
    }

    fn contains_memo(&self, m: &Monomial, memo: &mut HashMap<Monomial, bool>) -> bool {
        if m.is_one() {
            return true;
        }
        if let Some(&r) = memo.get(m) {
            return r;
        }
        let r = self
            .generators
            .iter()
            .filter(|g| !g.is_one())
            .any(|g| m.div(g).is_some_and(|q| self.contains_memo(&q, memo)));
        memo.insert(*m, r);
        r
    }
}

/// All degree-`n` monomials of `ring` (optionally inside a monomial subring),
/// in descending graded lexicographic order.
pub fn graded_component_basis(ring: &Arc<PolyRing>, n: i64, restriction: Option<&Restriction>) -> Result<Vec<Monomial>> {
    if ring.has_laurent() {
        return Err(Error::LaurentViolation(format!("graded pieces of {ring} are infinite-dimensional")));
    }
    if n < 0 {
        return Ok(Vec::new());
    }
    let k = ring.nvars();
    let mut out = Vec::new();
    let mut exps = [0i32; MAX_VARS];
    fill(0, k, n as i32, &mut exps, &mut out);
    if let Some(r) = restriction {
        let mut memo = HashMap::new();
        out.retain(|m| r.contains_memo(m, &mut memo));
    }
    Ok(out)
}

fn fill(i: usize, k: usize, left: i32, exps: &mut [i32; MAX_VARS], out: &mut Vec<Monomial>) {
    if k == 0 {
        if left == 0 {
            out.push(Monomial::one());
        }
        return;
    }
    if i == k - 1 {
        exps[i] = left;
        out.push(Monomial::from_exps(&exps[..k]));
        exps[i] = 0;
        return;
    }
    for e in (0..=left).rev() {
        exps[i] = e;
        fill(i + 1, k, left - e, exps, out);
    }
    exps[i] = 0;
}
