//! Enveloping algebras of the positive Witt algebra and of the full Witt algebra
//! in PBW normal form, and the free algebra on `t1`, `t2`.

mod free;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::{self, Evaluator};
use crate::scalars::{Echelon, Field, Rational};

pub use free::{free_reduce_and_project, free_word_basis, FreeElement, FreeEval, FreeWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Mode {
    /// Indices ≥ 1.
    WPlus,
    /// Any integer index.
    Witt,
}

impl Mode {
    pub fn check_index(self, i: i64) -> Result<()> {
        if self == Mode::WPlus && i < 1 {
            return Err(Error::ModeError(format!("e{i} is not in the positive Witt algebra")));
        }
        Ok(())
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::WPlus => "wplus",
            Mode::Witt => "witt",
        })
    }
}

/// Ordered product `e_{i1} ⋯ e_{ik}` with `i1 ≤ … ≤ ik`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PBWMonomial(Vec<i64>);

impl PBWMonomial {
    pub fn new(mut indices: Vec<i64>) -> Self {
        indices.sort();
        PBWMonomial(indices)
    }

    pub fn one() -> Self {
        PBWMonomial(Vec::new())
    }

    pub fn indices(&self) -> &[i64] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Longer monomials first, then lexicographically ascending.
impl Ord for PBWMonomial {
    fn cmp(&self, o: &Self) -> Ordering {
        o.0.len().cmp(&self.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for PBWMonomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// `letter^k` runs joined by `*`, e.g. `e1^2*e3`.
pub(crate) fn fmt_runs<T: PartialEq + Copy>(xs: &[T], name: impl Fn(T) -> String) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < xs.len() {
        let mut j = i;
        while j < xs.len() && xs[j] == xs[i] {
            j += 1;
        }
        let k = j - i;
        parts.push(if k == 1 { name(xs[i]) } else { format!("{}^{k}", name(xs[i])) });
        i = j;
    }
    parts.join("*")
}

impl fmt::Display for PBWMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        f.write_str(&fmt_runs(&self.0, |i| format!("e{i}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

type NormalForm = Arc<Vec<(PBWMonomial, Rational)>>;

/// PBW straightening with memoized word normal forms.
pub struct Straightener {
    mode: Mode,
    strategy: Strategy,
    memo: HashMap<Vec<i64>, NormalForm>,
}

impl Straightener {
    pub fn new(mode: Mode) -> Self {
        Self::with_strategy(mode, Strategy::Leftmost)
    }

    pub fn with_strategy(mode: Mode, strategy: Strategy) -> Self {
        Straightener { mode, strategy, memo: HashMap::new() }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Normal form of a word `e_{w1} ⋯ e_{wk}` with integer coefficients.
    pub fn word(&mut self, w: &[i64]) -> Result<NormalForm> {
        for &i in w {
            self.mode.check_index(i)?;
        }
        Ok(self.nf(w))
    }

    fn nf(&mut self, w: &[i64]) -> NormalForm {
        if let Some(r) = self.memo.get(w) {
            return r.clone();
        }
        let inversion = match self.strategy {
            Strategy::Leftmost => (0..w.len().saturating_sub(1)).find(|&k| w[k] > w[k + 1]),
            Strategy::Rightmost => (0..w.len().saturating_sub(1)).rev().find(|&k| w[k] > w[k + 1]),
        };
        let result = match inversion {
            None => Arc::new(vec![(PBWMonomial(w.to_vec()), Rational::from_integer(1.into()))]),
            Some(k) => {
                // e_j e_i = e_i e_j + (i - j) e_{i+j}
                let (j, i) = (w[k], w[k + 1]);
                let mut swapped = w.to_vec();
                swapped.swap(k, k + 1);
                let mut acc: HashMap<PBWMonomial, Rational> = HashMap::new();
                for (m, c) in self.nf(&swapped).iter() {
                    *acc.entry(m.clone()).or_default() += c;
                }
                let mut shorter = w[..k].to_vec();
                shorter.push(i + j);
                shorter.extend_from_slice(&w[k + 2..]);
                let coef = Rational::from_integer((i - j).into());
                for (m, c) in self.nf(&shorter).iter() {
                    *acc.entry(m.clone()).or_default() += &(c * &coef);
                }
                let mut v: Vec<_> = acc.into_iter().filter(|(_, c)| *c != Rational::default()).collect();
                v.sort_by(|a, b| a.0.cmp(&b.0));
                Arc::new(v)
            }
        };
        self.memo.insert(w.to_vec(), result.clone());
        result
    }

    pub fn mul<F: Field>(&mut self, f: &EnvElement<F>, g: &EnvElement<F>) -> Result<EnvElement<F>> {
        if f.mode != self.mode || g.mode != self.mode {
            return Err(Error::ModeError(format!("cannot multiply {} by {} in {} mode", f.mode, g.mode, self.mode)));
        }
        let mut out = EnvElement::zero(self.mode);
        let mut word = Vec::new();
        for (m1, c1) in &f.terms {
            for (m2, c2) in &g.terms {
                word.clear();
                word.extend_from_slice(&m1.0);
                word.extend_from_slice(&m2.0);
                let c = c1.clone() * c2;
                for (m, k) in self.nf(&word).iter() {
                    out.add_term(m.clone(), c.clone() * &F::from_rational(k.clone()));
                }
            }
        }
        Ok(out)
    }

    /// `[f, g] = f g − g f`.
    pub fn bracket<F: Field>(&mut self, f: &EnvElement<F>, g: &EnvElement<F>) -> Result<EnvElement<F>> {
        self.mul(f, g)?.sub(&self.mul(g, f)?)
    }

    /// `ad(x)^k (y)`.
    pub fn ad_power<F: Field>(&mut self, x: &EnvElement<F>, k: usize, y: &EnvElement<F>) -> Result<EnvElement<F>> {
        if x.mode != y.mode {
            return Err(Error::ModeError(format!("{} vs {}", x.mode, y.mode)));
        }
        let mut acc = y.clone();
        for _ in 0..k {
            acc = self.bracket(x, &acc)?;
        }
        Ok(acc)
    }

    /// Normal form of `Σ c_w w` over words.
    pub fn words<F: Field>(&mut self, words: &[(Vec<i64>, F)]) -> Result<EnvElement<F>> {
        let mut out = EnvElement::zero(self.mode);
        for (w, c) in words {
            for (m, k) in self.word(w)?.iter() {
                out.add_term(m.clone(), c.clone() * &F::from_rational(k.clone()));
            }
        }
        Ok(out)
    }
}

/// PBW normal form of a word.
pub fn straighten(word: &[i64], mode: Mode) -> Result<EnvElement<Rational>> {
    Straightener::new(mode).words(&[(word.to_vec(), Rational::from_integer(1.into()))])
}

/// Element of `U(W+)` or `U(W)` in PBW normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvElement<F> {
    mode: Mode,
    terms: BTreeMap<PBWMonomial, F>,
}

impl<F: Field> EnvElement<F> {
    pub fn zero(mode: Mode) -> Self {
        EnvElement { mode, terms: BTreeMap::new() }
    }

    pub fn one(mode: Mode) -> Self {
        Self::constant(mode, F::one())
    }

    pub fn constant(mode: Mode, c: F) -> Self {
        let mut e = Self::zero(mode);
        e.add_term(PBWMonomial::one(), c);
        e
    }

    /// The generator `e_i`.
    pub fn gen(mode: Mode, i: i64) -> Result<Self> {
        mode.check_index(i)?;
        let mut e = Self::zero(mode);
        e.add_term(PBWMonomial(vec![i]), F::one());
        Ok(e)
    }

    pub fn monomial(mode: Mode, m: PBWMonomial, c: F) -> Result<Self> {
        for &i in &m.0 {
            mode.check_index(i)?;
        }
        let mut e = Self::zero(mode);
        e.add_term(m, c);
        Ok(e)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn terms(&self) -> &BTreeMap<PBWMonomial, F> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &PBWMonomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub(crate) fn add_term(&mut self, m: PBWMonomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_mode(&self, o: &Self) -> Result<()> {
        if self.mode == o.mode {
            Ok(())
        } else {
            Err(Error::ModeError(format!("{} vs {}", self.mode, o.mode)))
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_mode(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.mode);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x.clone() * c);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        Straightener::new(self.mode).mul(self, o)
    }

    pub fn bracket(&self, o: &Self) -> Result<Self> {
        Straightener::new(self.mode).bracket(self, o)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut st = Straightener::new(self.mode);
        let mut acc = Self::one(self.mode);
        for _ in 0..k {
            acc = st.mul(&acc, self)?;
        }
        Ok(acc)
    }

    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree();
        it.all(|m| m.degree() == d).then_some(d)
    }

    pub fn homogeneous_parts(&self) -> BTreeMap<i64, EnvElement<F>> {
        let mut out: BTreeMap<i64, EnvElement<F>> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree()).or_insert_with(|| Self::zero(self.mode)).add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn to_vector(&self, basis: &[PBWMonomial]) -> Option<Vec<F>> {
        let v: Vec<F> = basis.iter().map(|m| self.coeff(m)).collect();
        let hits = basis.iter().filter(|m| self.terms.contains_key(m)).count();
        (hits == self.terms.len()).then_some(v)
    }

    pub fn from_vector(mode: Mode, basis: &[PBWMonomial], v: &[F]) -> Self {
        let mut out = Self::zero(mode);
        for (m, c) in basis.iter().zip(v) {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<EnvElement<G>> {
        let mut out = EnvElement::zero(self.mode);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn parse(s: &str, mode: Mode) -> Result<Self> {
        EnvEval::new(mode).parse_eval(s)
    }
}

impl<F: Field> fmt::Display for EnvElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|(m, c)| (c, if m.is_empty() { String::new() } else { m.to_string() }));
        f.write_str(&expr::format_terms(terms))
    }
}

/// `ad(x)^k (y)`.
pub fn ad_power<F: Field>(x: &EnvElement<F>, k: usize, y: &EnvElement<F>) -> Result<EnvElement<F>> {
    Straightener::new(x.mode).ad_power(x, k, y)
}

/// Multiplies two elements in PBW normal form.
pub fn env_mul<F: Field>(f: &EnvElement<F>, g: &EnvElement<F>) -> Result<EnvElement<F>> {
    f.mul(g)
}

/// Weakly increasing index sequences with sum `n` (partitions of `n`), in
/// lexicographic order.
pub fn env_basis(n: i64, mode: Mode) -> Result<Vec<PBWMonomial>> {
    if mode == Mode::Witt {
        return Err(Error::ModeError("graded pieces of U(W) are infinite-dimensional".into()));
    }
    let mut out = Vec::new();
    if n < 0 {
        return Ok(out);
    }
    fn rec(left: i64, min: i64, cur: &mut Vec<i64>, out: &mut Vec<PBWMonomial>) {
        if left == 0 {
            out.push(PBWMonomial(cur.clone()));
            return;
        }
        for p in min..=left {
            cur.push(p);
            rec(left - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, 1, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Finite-dimensional span of homogeneous elements of `U(W+)`.
#[derive(Clone, Debug)]
pub struct EnvSpan<F> {
    mode: Mode,
    degree: i64,
    ech: Echelon<PBWMonomial, F>,
}

impl<F: Field> EnvSpan<F> {
    pub fn new(mode: Mode, degree: i64) -> Self {
        EnvSpan { mode, degree, ech: Echelon::new() }
    }

    pub fn from_elements<'a>(mode: Mode, degree: i64, elems: impl IntoIterator<Item = &'a EnvElement<F>>) -> Result<Self> {
        let mut s = Self::new(mode, degree);
        for e in elems {
            s.insert(e)?;
        }
        Ok(s)
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    fn check(&self, e: &EnvElement<F>) -> Result<()> {
        if e.mode != self.mode {
            return Err(Error::ModeError(format!("{} vs {}", e.mode, self.mode)));
        }
        if e.is_zero() {
            return Ok(());
        }
        match e.homogeneous_degree() {
            Some(d) if d == self.degree => Ok(()),
            Some(d) => Err(Error::DegreeMismatch { expected: self.degree, found: d }),
            None => Err(Error::NotHomogeneous),
        }
    }

    pub fn insert(&mut self, e: &EnvElement<F>) -> Result<bool> {
        self.check(e)?;
        Ok(self.ech.insert(e.terms.iter()))
    }

    pub fn contains(&self, e: &EnvElement<F>) -> Result<bool> {
        self.check(e)?;
        Ok(self.ech.contains(e.terms.iter()))
    }

    /// Reduced echelon basis in the PBW print order.
    pub fn basis(&self) -> Vec<EnvElement<F>> {
        self.ech
            .reduced_basis(|a, b| a.cmp(b))
            .into_iter()
            .map(|terms| {
                let mut e = EnvElement::zero(self.mode);
                for (m, c) in terms {
                    e.add_term(m, c);
                }
                e
            })
            .collect()
    }

    pub fn raw_basis(&self) -> Vec<EnvElement<F>> {
        self.ech
            .rows()
            .into_iter()
            .map(|terms| {
                let mut e = EnvElement::zero(self.mode);
                for (m, c) in terms {
                    e.add_term(m, c);
                }
                e
            })
            .collect()
    }

    pub fn same_span(&self, o: &Self) -> bool {
        self.mode == o.mode && self.degree == o.degree && self.ech.same_span(&o.ech)
    }

    pub fn is_subspace_of(&self, o: &Self) -> bool {
        self.mode == o.mode && self.degree == o.degree && self.ech.is_subspace_of(&o.ech)
    }

    pub fn intersect(&self, o: &Self) -> Result<Self> {
        if self.degree != o.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: o.degree });
        }
        Ok(EnvSpan { mode: self.mode, degree: self.degree, ech: self.ech.intersect(&o.ech) })
    }
}

/// Expression evaluator for enveloping-algebra elements.
pub struct EnvEval<F> {
    mode: Mode,
    st: std::cell::RefCell<Straightener>,
    _f: std::marker::PhantomData<F>,
}

impl<F> EnvEval<F> {
    pub fn new(mode: Mode) -> Self {
        EnvEval { mode, st: std::cell::RefCell::new(Straightener::new(mode)), _f: std::marker::PhantomData }
    }
}

impl<F: Field> Evaluator for EnvEval<F> {
    type Value = EnvElement<F>;

    fn scalar(&self, q: Rational) -> Result<EnvElement<F>> {
        Ok(EnvElement::constant(self.mode, F::from_rational(q)))
    }
    fn symbol(&self, name: &str, offset: usize) -> Result<EnvElement<F>> {
        match (name, F::parameter()) {
            (crate::scalars::PARAMETER, Some(a)) => Ok(EnvElement::constant(self.mode, a)),
            _ => Err(Error::Parse { offset, message: format!("unknown symbol `{name}`") }),
        }
    }
    fn generator(&self, k: i64) -> Result<EnvElement<F>> {
        EnvElement::gen(self.mode, k)
    }
    fn add(&self, x: EnvElement<F>, y: EnvElement<F>) -> Result<EnvElement<F>> {
        x.add(&y)
    }
    fn neg(&self, x: EnvElement<F>) -> Result<EnvElement<F>> {
        Ok(x.neg())
    }
    fn mul(&self, x: EnvElement<F>, y: EnvElement<F>) -> Result<EnvElement<F>> {
        self.st.borrow_mut().mul(&x, &y)
    }
    fn pow(&self, x: EnvElement<F>, k: i64) -> Result<EnvElement<F>> {
        if k < 0 {
            return Err(Error::Parse { offset: 0, message: "negative power in an enveloping algebra".into() });
        }
        let mut acc = EnvElement::one(self.mode);
        for _ in 0..k {
            acc = self.st.borrow_mut().mul(&acc, &x)?;
        }
        Ok(acc)
    }
    fn div(&self, x: EnvElement<F>, y: EnvElement<F>) -> Result<EnvElement<F>> {
        match y.terms.iter().next() {
            Some((m, c)) if y.terms.len() == 1 && m.is_empty() => Ok(x.scale(&c.inv()?)),
            None => Err(Error::DomainError),
            _ => Err(Error::Parse { offset: 0, message: format!("division by non-scalar `{y}`") }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::int;

    type Q = Rational;

    fn env(s: &str) -> EnvElement<Q> {
        EnvElement::parse(s, Mode::WPlus).unwrap()
    }

    fn witt(s: &str) -> EnvElement<Q> {
        EnvElement::parse(s, Mode::Witt).unwrap()
    }

    #[test]
    fn single_bracket() {
        assert_eq!(straighten(&[2, 1], Mode::WPlus).unwrap().to_string(), "e1*e2 - e3");
        assert_eq!(straighten(&[0, -1], Mode::Witt).unwrap().to_string(), "e-1*e0 - e-1");
        assert!(matches!(straighten(&[0, 1], Mode::WPlus), Err(Error::ModeError(_))));
    }

    #[test]
    fn image_of_q() {
        let f = env("e1^2*e2 - e2*e1^2 - 2*e2^2");
        assert_eq!(f, env("2*(e1*e3 - e2^2 - e4)"));
        assert_eq!(f.to_string(), "2*e1*e3 - 2*e2^2 - 2*e4");
    }

    #[test]
    fn products_and_relations() {
        assert_eq!(env("e1*(e1*e2)").to_string(), "e1^2*e2");
        let lhs = env("e2*(e1^3 - 6*e2*e1 + 12*e1*e2) - e1*(e1^2*e2 - 3*e1*e2*e1 + 3*e2*e1^2 + 6*e2^2)");
        assert!(lhs.is_zero());
    }

    #[test]
    fn ad_powers() {
        let g4 = witt("e1*e3 - e2^2 - e4");
        let x = witt("e-1");
        let r = ad_power(&x, 3, &g4).unwrap();
        assert_eq!(r.to_string(), "12*e-1*e2 - 12*e0*e1 - 12*e1");
        let g = witt("e1*e5 - 4*e2*e4 + 3*e3^2 + 2*e6");
        assert_eq!(ad_power(&x, 4, &g).unwrap(), witt("24*(e-1*e3 - 4*e0*e2 + 3*e1^2 + 2*e2)"));
        assert_eq!(ad_power(&witt("e1"), 0, &g).unwrap(), g);
    }

    #[test]
    fn bases() {
        assert_eq!(env_basis(4, Mode::WPlus).unwrap().len(), 5);
        assert_eq!(env_basis(1, Mode::WPlus).unwrap(), vec![PBWMonomial(vec![1])]);
        let six: Vec<String> = env_basis(6, Mode::WPlus).unwrap().iter().map(|m| m.to_string()).collect();
        let mut want = vec![
            "e1^6", "e1^4*e2", "e1^2*e2^2", "e2^3", "e1^3*e3", "e1*e2*e3", "e3^2", "e1^2*e4", "e2*e4", "e1*e5", "e6",
        ];
        let mut got = six.clone();
        got.sort();
        want.sort();
        assert_eq!(got, want);
        assert!(env_basis(3, Mode::Witt).is_err());
    }

    #[test]
    fn strategies_agree() {
        let w = [3, 1, 2, 1, 4, 2];
        let a = Straightener::with_strategy(Mode::WPlus, Strategy::Leftmost).words(&[(w.to_vec(), int(1))]).unwrap();
        let b = Straightener::with_strategy(Mode::WPlus, Strategy::Rightmost).words(&[(w.to_vec(), int(1))]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn spans() {
        let s = EnvSpan::from_elements(Mode::WPlus, 4, &[env("e1*e3 - e2^2 - e4"), env("e1^4")]).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&env("2*e1^4 - e1*e3 + e2^2 + e4")).unwrap());
        assert!(!s.contains(&env("e4")).unwrap());
        assert!(matches!(s.contains(&env("e3")), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn parse_print_round_trip() {
        for s in ["2*e1*e3 - e2^2 - e4", "12*e-1*e2 - 12*e0*e1 - 12*e1", "1/2*e1^2 + 3"] {
            let mode = if s.contains("e-1") { Mode::Witt } else { Mode::WPlus };
            let e: EnvElement<Q> = EnvElement::parse(s, mode).unwrap();
            assert_eq!(e.to_string(), s);
        }
    }
}
