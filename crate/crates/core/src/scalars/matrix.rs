use std::fmt;


use super::{Field, UniPoly};
use crate::error::{Error, Result};

/// Dense row-major matrix of exact scalars.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

/// Right nullspace of a matrix together with the elimination data that
/// certifies it.
#[derive(Clone, Debug)]
pub struct Nullspace<F> {
    /// Reduced echelon basis: each vector starts with a 1, ordered by pivot column.
    pub basis: Vec<Vec<F>>,
    pub rank: usize,
    /// Pivot values met during fraction-free elimination.
    pub pivots: Vec<F>,
    /// Distinct factors in the parameter whose roots invalidate the generic answer.
    pub excluded: Vec<UniPoly>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn new(rows: usize, cols: usize, entries: Vec<F>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![F::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::ShapeMismatch(format!("row of length {} (expected {cols})", r.len())));
            }
            entries.extend(r);
        }
        Ok(ExactMatrix { rows: n, cols, entries })
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<F>], rows: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::ShapeMismatch(format!("column of length {} (expected {rows})", col.len())));
            }
            for (i, v) in col.iter().enumerate() {
                m.entries[i * m.cols + j] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a.clone() * b);
                    }
                }
                acc
            })
            .collect())
    }

    /// Applies `f` entrywise, e.g. to specialize a parameter.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<ExactMatrix<G>> {
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
        })
    }

    /// Reduced row echelon form: returns the nonzero rows and their pivot columns.
    pub fn rref(&self) -> (Vec<Vec<F>>, Vec<usize>) {
        rref_rows(self.row_vecs(), self.cols)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A solution of `self * x = b`, with free variables set to zero, if one exists.
    pub fn solve(&self, b: &[F]) -> Result<Option<Vec<F>>> {
        if b.len() != self.rows {
            return Err(Error::ShapeMismatch(format!("right-hand side of length {} for {} rows", b.len(), self.rows)));
        }
        let aug: Vec<Vec<F>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let (red, pivots) = rref_rows(aug, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = red[r][self.cols].clone();
        }
        Ok(Some(x))
    }

    /// Determinant of a square matrix by Gaussian elimination.
    pub fn det(&self) -> Result<F> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(format!("{}x{} matrix has no determinant", self.rows, self.cols)));
        }
        let mut rows = self.row_vecs();
        let n = self.rows;
        let mut det = F::one();
        for c in 0..n {
            let Some(pi) = (c..n).filter(|&i| !rows[i][c].is_zero()).min_by_key(|&i| rows[i][c].complexity()) else {
                return Ok(F::zero());
            };
            if pi != c {
                rows.swap(pi, c);
                det = -det;
            }
            let p = rows[c][c].clone();
            det *= &p;
            let inv = p.inv()?;
            for i in (c + 1)..n {
                if rows[i][c].is_zero() {
                    continue;
                }
                let f = rows[i][c].clone() * &inv;
                for j in c..n {
                    let t = f.clone() * &rows[c][j];
                    rows[i][j] -= &t;
                }
            }
        }
        Ok(det)
    }

    pub fn nullspace(&self) -> Nullspace<F> {
        let (red, pivot_cols) = self.rref();
        let mut raw = Vec::new();
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivot_cols.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (r, &c) in pivot_cols.iter().enumerate() {
                v[c] = -red[r][free].clone();
            }
            raw.push(v);
        }
        let (basis, _) = rref_rows(raw, self.cols);
        let pivots = self.fraction_free_pivots();
        let excluded = excluded_factors(&pivots);
        Nullspace { basis, rank: pivot_cols.len(), pivots, excluded }
    }

    /// Pivots of a Bareiss-style fraction-free elimination.
    ///
    /// Rows are first scaled to clear parameter denominators; pivots constant in
    /// the parameter are preferred. Over the rationals the pivots are all constants.
    pub fn fraction_free_pivots(&self) -> Vec<F> {
        let mut rows = self.row_vecs();
        for row in rows.iter_mut() {
            loop {
                let Some(d) = row.iter().map(F::parameter_denominator).find(|d| !d.is_one()) else {
                    break;
                };
                for x in row.iter_mut() {
                    *x *= &d;
                }
            }
        }
        let (n, m) = (rows.len(), self.cols);
        let mut col_order: Vec<usize> = (0..m).collect();
        let mut prev = F::one();
        let mut pivots = Vec::new();
        for k in 0..n.min(m) {
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, row) in rows.iter().enumerate().skip(k) {
                for (jj, &j) in col_order.iter().enumerate().skip(k) {
                    let x = &row[j];
                    if x.is_zero() {
                        continue;
                    }
                    let c = x.complexity();
                    if best.is_none_or(|(_, _, bc)| c < bc) {
                        best = Some((i, jj, c));
                    }
                }
            }
            let Some((pi, pj, _)) = best else { break };
            rows.swap(k, pi);
            col_order.swap(k, pj);
            let pc = col_order[k];
            let p = rows[k][pc].clone();
            for i in (k + 1)..n {
                let aik = rows[i][pc].clone();
                for &j in &col_order[k + 1..] {
                    let updated = p.clone() * &rows[i][j] - &(aik.clone() * &rows[k][j]);
                    rows[i][j] = updated.div(&prev).expect("nonzero previous pivot");
                }
                rows[i][pc] = F::zero();
            }
            pivots.push(p.clone());
            prev = p;
        }
        pivots
    }
}

/// Distinct monic factors from the parameter-dependent pivots: a linear factor per
/// rational root, plus whatever is left over.
pub fn excluded_factors<F: Field>(pivots: &[F]) -> Vec<UniPoly> {
    let mut out: Vec<UniPoly> = Vec::new();
    let mut push = |f: UniPoly| {
        if !f.is_constant() && !out.contains(&f) {
            out.push(f);
        }
    };
    for p in pivots {
        let Some(mut f) = p.parameter_factor() else { continue };
        for root in f.rational_roots() {
            let lin = UniPoly::new(vec![-root, num_traits::One::one()]);
            f = f.div_rem(&lin).0;
            push(lin);
        }
        push(f.monic());
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.to_string().cmp(&b.to_string())));
    out
}

/// Gauss-Jordan elimination of a list of row vectors.
pub(crate) fn rref_rows<F: Field>(mut rows: Vec<Vec<F>>, cols: usize) -> (Vec<Vec<F>>, Vec<usize>) {
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(pi) = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i][c].complexity())
        else {
            continue;
        };
        rows.swap(r, pi);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *x -= &(factor.clone() * p);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivot_cols)
}

impl<F: Field> fmt::Display for ExactMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, RatFunc, Rational};
    use num_traits::One;

    fn qm(rows: &[&[i64]]) -> ExactMatrix<Rational> {
        let cols = rows[0].len();
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(), cols).unwrap()
    }

    #[test]
    fn proportional_rows() {
        let ns = qm(&[&[1, 1], &[2, 2]]).nullspace();
        assert_eq!(ns.rank, 1);
        assert_eq!(ns.basis, vec![vec![int(1), int(-1)]]);
    }

    #[test]
    fn identity_has_trivial_nullspace() {
        let ns = qm(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).nullspace();
        assert!(ns.basis.is_empty());
        assert_eq!(ns.rank, 3);
        assert!(ns.excluded.is_empty());
    }

    #[test]
    fn parametric_determinant_pivot() {
        let a = RatFunc::param();
        let m = ExactMatrix::from_rows(vec![vec![a.clone(), RatFunc::one()], vec![RatFunc::one(), a]], 2).unwrap();
        let ns = m.nullspace();
        assert!(ns.basis.is_empty());
        let sq = UniPoly::from_ints(&[-1, 0, 1]);
        assert!(ns.pivots.iter().any(|p| p.numer().monic() == sq));
        assert_eq!(ns.excluded, vec![UniPoly::from_ints(&[1, 1]), UniPoly::from_ints(&[-1, 1])]);
    }

    #[test]
    fn solve_sets_free_variables_to_zero() {
        let m = qm(&[&[1, 1, 0], &[0, 0, 1]]);
        assert_eq!(m.solve(&[int(2), int(3)]).unwrap(), Some(vec![int(2), int(0), int(3)]));
        let m = qm(&[&[1, 1], &[2, 2]]);
        assert_eq!(m.solve(&[int(1), int(3)]).unwrap(), None);
    }

    #[test]
    fn determinants() {
        assert_eq!(qm(&[&[2, 1], &[4, 3]]).det().unwrap(), int(2));
        assert_eq!(qm(&[&[0, 1], &[1, 0]]).det().unwrap(), int(-1));
        assert_eq!(qm(&[&[1, 2], &[2, 4]]).det().unwrap(), int(0));
        assert!(qm(&[&[1, 2]]).det().is_err());
    }

    #[test]
    fn shape_errors() {
        assert!(ExactMatrix::<Rational>::new(2, 2, vec![int(1)]).is_err());
    }
}
