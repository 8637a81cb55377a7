use std::cmp::Ordering;
use std::collections::HashMap;
use std::hash::Hash;

use super::matrix::rref_rows;
use super::Field;

/// Incrementally built row-echelon basis of a span of sparse vectors whose
/// coordinates are labelled by keys of type `K`.
///
/// Columns are allocated in order of first appearance, so new keys never
/// disturb the echelon shape of existing rows.
#[derive(Clone, Debug)]
pub struct Echelon<K, F> {
    cols: Vec<K>,
    index: HashMap<K, usize>,
    rows: Vec<Vec<F>>,
    pivot_row: HashMap<usize, usize>,
}

impl<K: Clone + Eq + Hash, F: Field> Default for Echelon<K, F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Clone + Eq + Hash, F: Field> Echelon<K, F> {
    pub fn new() -> Self {
        Echelon { cols: Vec::new(), index: HashMap::new(), rows: Vec::new(), pivot_row: HashMap::new() }
    }

    /// Pre-allocates columns in a fixed order.
    pub fn with_columns(cols: impl IntoIterator<Item = K>) -> Self {
        let mut e = Self::new();
        for k in cols {
            e.column(k);
        }
        e
    }

    fn column(&mut self, k: K) -> usize {
        if let Some(&i) = self.index.get(&k) {
            return i;
        }
        let i = self.cols.len();
        self.index.insert(k.clone(), i);
        self.cols.push(k);
        i
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn reduce(&self, v: &mut Vec<F>) {
        let mut c = 0;
        while c < v.len() {
            if !v[c].is_zero() {
                if let Some(&r) = self.pivot_row.get(&c) {
                    let row = &self.rows[r];
                    if v.len() < row.len() {
                        v.resize(row.len(), F::zero());
                    }
                    let f = v[c].clone();
                    for (x, y) in v.iter_mut().zip(row.iter()).skip(c) {
                        if !y.is_zero() {
                            *x -= &(f.clone() * y);
                        }
                    }
                }
            }
            c += 1;
        }
    }

    /// Adds a vector; returns whether the rank grew.
    pub fn insert<'a>(&mut self, terms: impl IntoIterator<Item = (&'a K, &'a F)>) -> bool
    where
        K: 'a,
    {
        let mut v: Vec<F> = Vec::new();
        for (k, c) in terms {
            if c.is_zero() {
                continue;
            }
            let i = self.column(k.clone());
            if v.len() <= i {
                v.resize(i + 1, F::zero());
            }
            v[i] += c;
        }
        self.insert_dense(v)
    }

    fn insert_dense(&mut self, mut v: Vec<F>) -> bool {
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        for x in v.iter_mut().skip(p) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        while v.last().is_some_and(|x| x.is_zero()) {
            v.pop();
        }
        self.pivot_row.insert(p, self.rows.len());
        self.rows.push(v);
        true
    }

    /// Whether the vector lies in the span.
    pub fn contains<'a>(&self, terms: impl IntoIterator<Item = (&'a K, &'a F)>) -> bool
    where
        K: 'a,
    {
        let mut v: Vec<F> = Vec::new();
        for (k, c) in terms {
            if c.is_zero() {
                continue;
            }
            let Some(&i) = self.index.get(k) else { return false };
            if v.len() <= i {
                v.resize(i + 1, F::zero());
            }
            v[i] += c;
        }
        self.reduce(&mut v);
        v.iter().all(|x| x.is_zero())
    }

    /// Echelon rows as sparse term lists (not canonical).
    pub fn rows(&self) -> Vec<Vec<(K, F)>> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| (self.cols[i].clone(), x.clone()))
                    .collect()
            })
            .collect()
    }

    /// Reduced echelon basis with columns ordered by `order` (earliest first);
    /// each vector has a leading 1.
    pub fn reduced_basis(&self, order: impl Fn(&K, &K) -> Ordering) -> Vec<Vec<(K, F)>> {
        let mut perm: Vec<usize> = (0..self.cols.len()).collect();
        perm.sort_by(|&a, &b| order(&self.cols[a], &self.cols[b]));
        let n = perm.len();
        let dense: Vec<Vec<F>> = self
            .rows
            .iter()
            .map(|r| {
                perm.iter().map(|&j| r.get(j).cloned().unwrap_or_else(F::zero)).collect()
            })
            .collect();
        let (red, _) = rref_rows(dense, n);
        red.into_iter()
            .map(|r| {
                r.into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (self.cols[perm[j]].clone(), x))
                    .collect()
            })
            .collect()
    }

    /// Basis of the intersection of two spans.
    pub fn intersect(&self, other: &Self) -> Self {
        // Zassenhaus: rows [a | a] and [b | 0]; rows with empty left half span the meet.
        #[derive(Clone, PartialEq, Eq, Hash)]
        enum Side<K> {
            L(K),
            R(K),
        }
        // every left column must precede every right column
        let mut z: Echelon<Side<K>, F> = Echelon::with_columns(
            self.cols
                .iter()
                .chain(&other.cols)
                .map(|k| Side::L(k.clone()))
                .chain(self.cols.iter().map(|k| Side::R(k.clone()))),
        );
        for row in self.rows() {
            let mut terms: Vec<(Side<K>, F)> = row.iter().map(|(k, c)| (Side::L(k.clone()), c.clone())).collect();
            terms.extend(row.iter().map(|(k, c)| (Side::R(k.clone()), c.clone())));
            z.insert(terms.iter().map(|(k, c)| (k, c)));
        }
        for row in other.rows() {
            let terms: Vec<(Side<K>, F)> = row.iter().map(|(k, c)| (Side::L(k.clone()), c.clone())).collect();
            z.insert(terms.iter().map(|(k, c)| (k, c)));
        }
        let mut out = Echelon::new();
        for row in z.rows() {
            if row.iter().all(|(k, _)| matches!(k, Side::R(_))) {
                let terms: Vec<(K, F)> = row
                    .into_iter()
                    .map(|(k, c)| match k {
                        Side::R(k) | Side::L(k) => (k, c),
                    })
                    .collect();
                out.insert(terms.iter().map(|(k, c)| (k, c)));
            }
        }
        out
    }

    pub fn extend_from(&mut self, other: &Self) {
        for row in other.rows() {
            self.insert(row.iter().map(|(k, c)| (k, c)));
        }
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.rows().iter().all(|r| other.contains(r.iter().map(|(k, c)| (k, c))))
    }

    pub fn same_span(&self, other: &Self) -> bool {
        self.rank() == other.rank() && self.is_subspace_of(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, Rational};

    fn vecs(e: &mut Echelon<&'static str, Rational>, v: &[(&'static str, i64)]) -> bool {
        let terms: Vec<(&str, Rational)> = v.iter().map(|&(k, c)| (k, int(c))).collect();
        e.insert(terms.iter().map(|(k, c)| (k, c)))
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new();
        assert!(vecs(&mut e, &[("x2", 1), ("xy", 1)]));
        assert!(vecs(&mut e, &[("xy", 1)]));
        assert!(!vecs(&mut e, &[("x2", 2), ("xy", 5)]));
        assert_eq!(e.rank(), 2);
        let probe = [("x2", int(1))];
        assert!(e.contains(probe.iter().map(|(k, c)| (k, c))));
        let probe = [("y2", int(1))];
        assert!(!e.contains(probe.iter().map(|(k, c)| (k, c))));
    }

    #[test]
    fn meet_of_planes() {
        let mut a = Echelon::new();
        vecs(&mut a, &[("x2", 1)]);
        vecs(&mut a, &[("xy", 1)]);
        let mut b = Echelon::new();
        vecs(&mut b, &[("xy", 1)]);
        vecs(&mut b, &[("y2", 1)]);
        let m = a.intersect(&b);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.reduced_basis(|x, y| x.cmp(y)), vec![vec![("xy", int(1))]]);
    }

    #[test]
    fn reduced_basis_is_canonical() {
        let mut a = Echelon::new();
        vecs(&mut a, &[("b", 2), ("a", 2)]);
        vecs(&mut a, &[("a", 1), ("c", 1)]);
        let mut b = Echelon::new();
        vecs(&mut b, &[("c", 1), ("a", 1)]);
        vecs(&mut b, &[("b", 1), ("c", -1)]);
        assert!(a.same_span(&b));
        assert_eq!(a.reduced_basis(|x, y| x.cmp(y)), b.reduced_basis(|x, y| x.cmp(y)));
    }
}
