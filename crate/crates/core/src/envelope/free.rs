use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::{fmt_runs, EnvElement, Mode, Straightener};
use crate::error::{Error, Result};
use crate::expr::{self, Evaluator};
use crate::scalars::{Field, Rational};

/// Word in the letters `t1` (degree 1) and `t2` (degree 2).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeWord(Vec<u8>);

impl FreeWord {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if letters.iter().any(|&l| l != 1 && l != 2) {
            return Err(Error::Parse { offset: 0, message: "letters must be t1 or t2".into() });
        }
        Ok(FreeWord(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&l| l as i64).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for FreeWord {
    fn cmp(&self, o: &Self) -> Ordering {
        o.0.len().cmp(&self.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for FreeWord {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        f.write_str(&fmt_runs(&self.0, |l| format!("t{l}")))
    }
}

/// Element of the free algebra `Q<t1, t2>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeElement<F> {
    terms: BTreeMap<FreeWord, F>,
}

impl<F: Field> FreeElement<F> {
    pub fn zero() -> Self {
        FreeElement { terms: BTreeMap::new() }
    }

    pub fn constant(c: F) -> Self {
        let mut e = Self::zero();
        e.add_term(FreeWord(Vec::new()), c);
        e
    }

    pub fn letter(l: u8) -> Result<Self> {
        let mut e = Self::zero();
        e.add_term(FreeWord::new(vec![l])?, F::one());
        Ok(e)
    }

    pub fn terms(&self) -> &BTreeMap<FreeWord, F> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, w: FreeWord, c: F) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_insert_with(F::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x.clone() * c);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = w1.0.clone();
                w.extend_from_slice(&w2.0);
                out.add_term(FreeWord(w), c1.clone() * c2);
            }
        }
        out
    }

    pub fn bracket(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree();
        it.all(|w| w.degree() == d).then_some(d)
    }

    pub fn parse(s: &str) -> Result<Self> {
        FreeEval::default().parse_eval(s)
    }
}

impl<F: Field> fmt::Display for FreeElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|(w, c)| (c, if w.is_empty() { String::new() } else { w.to_string() }));
        f.write_str(&expr::format_terms(terms))
    }
}

/// Words of weighted degree `n` (`t1` ↦ 1, `t2` ↦ 2); there are Fibonacci many.
pub fn free_word_basis(n: i64) -> Vec<FreeWord> {
    fn rec(left: i64, cur: &mut Vec<u8>, out: &mut Vec<FreeWord>) {
        if left == 0 {
            out.push(FreeWord(cur.clone()));
            return;
        }
        for l in [1u8, 2] {
            if l as i64 <= left {
                cur.push(l);
                rec(left - l as i64, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if n >= 0 {
        rec(n, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

/// Sends `t_i` to `e_i` and writes the result in PBW normal form in `U(W+)`.
pub fn free_reduce_and_project<F: Field>(f: &FreeElement<F>) -> Result<EnvElement<F>> {
    let mut st = Straightener::new(Mode::WPlus);
    let words: Vec<(Vec<i64>, F)> =
        f.terms.iter().map(|(w, c)| (w.0.iter().map(|&l| l as i64).collect(), c.clone())).collect();
    st.words(&words)
}

pub struct FreeEval<F>(std::marker::PhantomData<F>);

impl<F> Default for FreeEval<F> {
    fn default() -> Self {
        FreeEval(std::marker::PhantomData)
    }
}

impl<F: Field> Evaluator for FreeEval<F> {
    type Value = FreeElement<F>;

    fn scalar(&self, q: Rational) -> Result<FreeElement<F>> {
        Ok(FreeElement::constant(F::from_rational(q)))
    }
    fn symbol(&self, name: &str, offset: usize) -> Result<FreeElement<F>> {
        match name {
            "t1" => FreeElement::letter(1),
            "t2" => FreeElement::letter(2),
            crate::scalars::PARAMETER if F::parameter().is_some() => {
                Ok(FreeElement::constant(F::parameter().expect("parameter")))
            }
            _ => Err(Error::Parse { offset, message: format!("unknown symbol `{name}`") }),
        }
    }
    fn add(&self, x: FreeElement<F>, y: FreeElement<F>) -> Result<FreeElement<F>> {
        Ok(x.add(&y))
    }
    fn neg(&self, x: FreeElement<F>) -> Result<FreeElement<F>> {
        Ok(x.neg())
    }
    fn mul(&self, x: FreeElement<F>, y: FreeElement<F>) -> Result<FreeElement<F>> {
        Ok(x.mul(&y))
    }
    fn pow(&self, x: FreeElement<F>, k: i64) -> Result<FreeElement<F>> {
        if k < 0 {
            return Err(Error::Parse { offset: 0, message: "negative power in a free algebra".into() });
        }
        let mut acc = FreeElement::constant(F::one());
        for _ in 0..k {
            acc = acc.mul(&x);
        }
        Ok(acc)
    }
    fn div(&self, x: FreeElement<F>, y: FreeElement<F>) -> Result<FreeElement<F>> {
        match y.terms.iter().next() {
            Some((w, c)) if y.terms.len() == 1 && w.is_empty() => Ok(x.scale(&c.inv()?)),
            None => Err(Error::DomainError),
            _ => Err(Error::Parse { offset: 0, message: format!("division by non-scalar `{y}`") }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Rational;

    #[test]
    fn fibonacci_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| free_word_basis(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 8, 13, 21, 34]);
    }

    #[test]
    fn printing_and_projection() {
        let q: FreeElement<Q> = FreeElement::parse("t1^2*t2 - t2*t1^2 - 2*t2^2").unwrap();
        assert_eq!(q.to_string(), "t1^2*t2 - t2*t1^2 - 2*t2^2");
        let p = free_reduce_and_project(&q).unwrap();
        assert_eq!(p.to_string(), "2*e1*e3 - 2*e2^2 - 2*e4");
    }

    #[test]
    fn brackets() {
        let t1: FreeElement<Q> = FreeElement::letter(1).unwrap();
        let t2 = FreeElement::letter(2).unwrap();
        let c = t1.bracket(&t2);
        assert_eq!(c.to_string(), "t1*t2 - t2*t1");
        assert_eq!(free_reduce_and_project(&c).unwrap().to_string(), "e3");
        assert_eq!(c.homogeneous_degree(), Some(3));
    }
}
