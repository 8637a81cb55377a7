//! Sparse commutative polynomials (optionally Laurent in declared variables),
//! graded pieces, and ring maps given by substitution.

mod basis;
mod map;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::{self, Evaluator};
use crate::scalars::{Field, Rational};

pub use basis::{graded_component_basis, Restriction};
pub use map::{check_map_kills, RingMap};

/// Maximum number of variables of a [`PolyRing`].
pub const MAX_VARS: usize = 6;

/// Exponent vector aligned with the variables of its ring.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    exps: [i32; MAX_VARS],
    deg: i32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn from_exps(exps: &[i32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::default();
        m.exps[..exps.len()].copy_from_slice(exps);
        m.deg = exps.iter().sum();
        m
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::default();
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn exp(&self, i: usize) -> i32 {
        self.exps[i]
    }

    pub fn exps(&self) -> &[i32; MAX_VARS] {
        &self.exps
    }

    pub fn degree(&self) -> i64 {
        self.deg as i64
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] += o.exps[i];
        }
        m.deg += o.deg;
        m
    }

    pub fn pow(&self, k: i32) -> Monomial {
        let mut m = *self;
        for e in m.exps.iter_mut() {
            *e *= k;
        }
        m.deg *= k;
        m
    }

    /// `self / o` when every exponent stays nonnegative (ignoring Laurent rules).
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] -= o.exps[i];
            if m.exps[i] < 0 {
                return None;
            }
        }
        m.deg -= o.deg;
        Some(m)
    }

    pub fn with_exp(&self, i: usize, e: i32) -> Monomial {
        let mut m = *self;
        m.deg += e - m.exps[i];
        m.exps[i] = e;
        m
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, name) in names.iter().enumerate() {
            match self.exps[i] {
                0 => {}
                1 => parts.push(name.clone()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }
}

/// Graded lexicographic order with the first declared variable largest.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyRing {
    variables: Vec<String>,
    laurent: Vec<bool>,
}

impl PolyRing {
    pub fn new(variables: &[&str], laurent: &[&str]) -> Result<Arc<Self>> {
        if variables.len() > MAX_VARS {
            return Err(Error::ShapeMismatch(format!("at most {MAX_VARS} variables supported")));
        }
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].contains(v) {
                return Err(Error::ShapeMismatch(format!("duplicate variable {v}")));
            }
        }
        for l in laurent {
            if !variables.contains(l) {
                return Err(Error::UnknownVariable(l.to_string()));
            }
        }
        Ok(Arc::new(PolyRing {
            variables: variables.iter().map(|s| s.to_string()).collect(),
            laurent: variables.iter().map(|v| laurent.contains(v)).collect(),
        }))
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn is_laurent(&self, i: usize) -> bool {
        self.laurent[i]
    }

    pub fn has_laurent(&self) -> bool {
        self.laurent.iter().any(|&l| l)
    }

    pub fn check_monomial(&self, m: &Monomial) -> Result<()> {
        for i in 0..MAX_VARS {
            let e = m.exps[i];
            if i >= self.nvars() && e != 0 {
                return Err(Error::UnknownVariable(format!("#{i}")));
            }
            if e < 0 && !self.laurent.get(i).copied().unwrap_or(false) {
                return Err(Error::LaurentViolation(self.variables[i].clone()));
            }
        }
        Ok(())
    }

    fn describe(&self) -> String {
        let vars: Vec<String> = self
            .variables
            .iter()
            .zip(&self.laurent)
            .map(|(v, &l)| if l { format!("{v}^±1") } else { v.clone() })
            .collect();
        format!("[{}]", vars.join(","))
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::RingMismatch(a.describe(), b.describe()))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<F> {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Poly<F> {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Poly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: F) -> Self {
        Self::monomial(ring, Monomial::one(), c)
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, F::one())
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Arc<PolyRing>, name: &str) -> Result<Self> {
        let i = ring.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::monomial(ring, Monomial::var(i), F::one()))
    }

    /// Builds a polynomial from terms, merging duplicates and dropping zeros.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: impl IntoIterator<Item = (Monomial, F)>) -> Result<Self> {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            ring.check_monomial(&m)?;
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, F> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    /// Largest monomial in the graded lexicographic order with its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: F) {
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

    pub fn add(&self, o: &Self) -> Result<Self> {
        same_ring(&self.ring, &o.ring)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, x)| (*m, x.clone() * c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        same_ring(&self.ring, &o.ring)?;
        let mut acc: std::collections::HashMap<Monomial, F> = std::collections::HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = m1.mul(m2);
                let c = c1.clone() * c2;
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += &c,
                }
            }
        }
        Ok(Poly { ring: self.ring.clone(), terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() })
    }

    /// Multiplies by a single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &F) -> Result<Self> {
        let mut out = Self::zero(&self.ring);
        if c.is_zero() {
            return Ok(out);
        }
        for (m0, c0) in &self.terms {
            let mm = m0.mul(m);
            self.ring.check_monomial(&mm)?;
            out.terms.insert(mm, c0.clone() * c);
        }
        Ok(out)
    }

    /// Power; negative exponents are allowed only for a single Laurent-legal term.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            let [(m, c)] = self.terms.iter().collect::<Vec<_>>()[..] else {
                return Err(Error::LaurentViolation(format!("({self})^{k}")));
            };
            let inv_m = m.pow(-1);
            self.ring.check_monomial(&inv_m)?;
            let inv = Self::monomial(&self.ring, inv_m, c.inv()?);
            return inv.pow(-k);
        }
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// The common degree of all terms, if the polynomial is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree();
        it.all(|m| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Homogeneous components keyed by degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<i64, Poly<F>> {
        let mut out: BTreeMap<i64, Poly<F>> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree()).or_insert_with(|| Self::zero(&self.ring)).terms.insert(*m, c.clone());
        }
        out
    }

    /// Coefficients along a monomial list; `None` if a term falls outside it.
    pub fn to_vector(&self, basis: &[Monomial]) -> Option<Vec<F>> {
        let mut v = vec![F::zero(); basis.len()];
        let mut found = 0;
        for (i, m) in basis.iter().enumerate() {
            if let Some(c) = self.terms.get(m) {
                v[i] = c.clone();
                found += 1;
            }
        }
        (found == self.terms.len()).then_some(v)
    }

    pub fn from_vector(ring: &Arc<PolyRing>, basis: &[Monomial], v: &[F]) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in basis.iter().zip(v) {
            p.add_term(*m, c.clone());
        }
        p
    }

    /// Applies a coefficient map, e.g. a specialization of the parameter.
    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<Poly<G>> {
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            out.add_term(*m, f(c)?);
        }
        Ok(out)
    }

    /// Same polynomial viewed in another ring with the same variable layout.
    pub fn with_ring(&self, ring: &Arc<PolyRing>) -> Result<Self> {
        if ring.variables != self.ring.variables {
            return Err(Error::RingMismatch(self.ring.describe(), ring.describe()));
        }
        for m in self.terms.keys() {
            ring.check_monomial(m)?;
        }
        Ok(Poly { ring: ring.clone(), terms: self.terms.clone() })
    }

    pub fn parse(ring: &Arc<PolyRing>, s: &str) -> Result<Self> {
        PolyEval { ring: ring.clone(), aliases: false, _f: std::marker::PhantomData }.parse_eval(s)
    }

    /// Parses with `u`, `v`, `w` read as the first three variables.
    pub fn parse_uvw(ring: &Arc<PolyRing>, s: &str) -> Result<Self> {
        PolyEval { ring: ring.clone(), aliases: true, _f: std::marker::PhantomData }.parse_eval(s)
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = &self.ring.variables;
        f.write_str(&expr::format_terms(self.terms.iter().rev().map(|(m, c)| (c, m.fmt_with(names)))))
    }
}

/// Expression evaluator producing polynomials in a fixed ring.
pub struct PolyEval<F> {
    pub ring: Arc<PolyRing>,
    /// Read `u`, `v`, `w` as the first three variables when the ring lacks them.
    pub aliases: bool,
    _f: std::marker::PhantomData<F>,
}

impl<F> PolyEval<F> {
    pub fn new(ring: &Arc<PolyRing>, aliases: bool) -> Self {
        PolyEval { ring: ring.clone(), aliases, _f: std::marker::PhantomData }
    }
}

impl<F: Field> Evaluator for PolyEval<F> {
    type Value = Poly<F>;

    fn scalar(&self, q: Rational) -> Result<Poly<F>> {
        Ok(Poly::constant(&self.ring, F::from_rational(q)))
    }

    fn symbol(&self, name: &str, offset: usize) -> Result<Poly<F>> {
        if self.ring.index_of(name).is_some() {
            return Poly::var(&self.ring, name);
        }
        if self.aliases {
            if let Some(i) = ["u", "v", "w"].iter().position(|s| *s == name) {
                if i < self.ring.nvars() {
                    return Ok(Poly::monomial(&self.ring, Monomial::var(i), F::one()));
                }
            }
        }
        if name == crate::scalars::PARAMETER {
            if let Some(a) = F::parameter() {
                return Ok(Poly::constant(&self.ring, a));
            }
        }
        Err(Error::Parse { offset, message: format!("unknown symbol `{name}`") })
    }

    fn add(&self, x: Poly<F>, y: Poly<F>) -> Result<Poly<F>> {
        x.add(&y)
    }
    fn neg(&self, x: Poly<F>) -> Result<Poly<F>> {
        Ok(x.neg())
    }
    fn mul(&self, x: Poly<F>, y: Poly<F>) -> Result<Poly<F>> {
        x.mul(&y)
    }
    fn pow(&self, x: Poly<F>, k: i64) -> Result<Poly<F>> {
        x.pow(k)
    }
    fn div(&self, x: Poly<F>, y: Poly<F>) -> Result<Poly<F>> {
        match (y.len(), y.terms.get(&Monomial::one())) {
            (1, Some(c)) => Ok(x.scale(&c.inv()?)),
            (0, _) => Err(Error::DomainError),
            _ => Err(Error::Parse { offset: 0, message: format!("division by non-scalar `{y}`") }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, RatFunc};
    use num_traits::Zero;

    fn xyz() -> Arc<PolyRing> {
        PolyRing::new(&["x", "y", "z"], &[]).unwrap()
    }

    fn p(r: &Arc<PolyRing>, s: &str) -> Poly<Rational> {
        Poly::parse(r, s).unwrap()
    }

    #[test]
    fn expansion() {
        let r = xyz();
        let f = p(&r, "(x - y)*(x - 2*y)");
        assert_eq!(f, p(&r, "x^2 - 3*x*y + 2*y^2"));
        assert_eq!(f.neg().to_string(), "-x^2 + 3*x*y - 2*y^2");
    }

    #[test]
    fn canonical_order() {
        let r = xyz();
        let f = p(&r, "1/2*y^2*z + x^2*y - 3*y^3");
        assert_eq!(f.to_string(), "x^2*y - 3*y^3 + 1/2*y^2*z");
        assert_eq!(p(&r, "0").to_string(), "0");
        assert_eq!(p(&r, "2 - x").to_string(), "-x + 2");
    }

    #[test]
    fn laurent_powers() {
        let r = PolyRing::new(&["x", "y", "z"], &["y"]).unwrap();
        let y = Poly::<Rational>::var(&r, "y").unwrap();
        let inv = y.pow(-1).unwrap();
        assert_eq!(inv.to_string(), "y^-1");
        assert_eq!(inv.mul(&y).unwrap(), Poly::one(&r));
        let x = Poly::<Rational>::var(&r, "x").unwrap();
        assert!(matches!(x.pow(-1), Err(Error::LaurentViolation(_))));
        assert!(matches!(p(&r, "x + y").pow(-2), Err(Error::LaurentViolation(_))));
        assert_eq!(Poly::<Rational>::parse(&r, "y^-2*x").unwrap().homogeneous_degree(), Some(-1));
    }

    #[test]
    fn ring_mismatch() {
        let r1 = xyz();
        let r2 = PolyRing::new(&["x", "y"], &[]).unwrap();
        let err = p(&r1, "x").add(&Poly::var(&r2, "x").unwrap()).unwrap_err();
        assert!(matches!(err, Error::RingMismatch(_, _)));
    }

    #[test]
    fn parametric_coefficients_print_in_parens() {
        let r = PolyRing::new(&["x", "y"], &[]).unwrap();
        let f: Poly<RatFunc> = Poly::parse(&r, "x - a*y").unwrap();
        assert_eq!(f.to_string(), "x + (-a)*y");
        assert_eq!(Poly::<RatFunc>::parse(&r, "x*y - (1+a)*y^2").unwrap().to_string(), "x*y + (-a - 1)*y^2");
    }

    #[test]
    fn homogeneous_parts_split() {
        let r = xyz();
        let f = p(&r, "x^2 + y + 3");
        let parts = f.homogeneous_parts();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[&2].to_string(), "x^2");
        assert!(!f.is_homogeneous());
        assert_eq!(p(&r, "x*y - z^2").homogeneous_degree(), Some(2));
    }

    #[test]
    fn vectors_round_trip() {
        let r = xyz();
        let basis = graded_component_basis(&r, 2, None).unwrap();
        let f = p(&r, "x^2 - 2*y*z");
        let v = f.to_vector(&basis).unwrap();
        assert_eq!(Poly::from_vector(&r, &basis, &v), f);
        assert_eq!(v.iter().filter(|c| !c.is_zero()).count(), 2);
        assert!(p(&r, "x").to_vector(&basis).is_none());
        assert_eq!(f.coeff(&Monomial::from_exps(&[2, 0, 0])), int(1));
    }
}
