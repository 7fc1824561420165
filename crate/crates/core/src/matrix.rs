//! Dense matrices over GF(q²) with exact Gaussian elimination.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::galois::{Elem, FieldCtx};

#[derive(Clone)]
pub struct Mat {
    field: Arc<FieldCtx>,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}

impl Eq for Mat {}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over GF({})", self.rows, self.cols, self.field.size())?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|&x| self.field.format_elem(x)).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn new(field: Arc<FieldCtx>, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat { field, rows, cols, data })
    }

    pub fn zeros(field: Arc<FieldCtx>, rows: usize, cols: usize) -> Mat {
        Mat { field, rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(field: Arc<FieldCtx>, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    /// Builds from row vectors; `cols` is needed when there are no rows.
    pub fn from_rows(field: Arc<FieldCtx>, cols: usize, rows: Vec<Vec<Elem>>) -> Result<Mat> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Dimension(format!("row of length {} but {cols} columns", r.len())));
            }
            data.extend(r);
        }
        Mat::new(field, n, cols, data)
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Entrywise q-th power.
    pub fn conjugate(&self) -> Mat {
        let f = &self.field;
        Mat {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f.conjugate(x)).collect(),
        }
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Mat::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = f.mul(a, other.get(l, j));
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, prod));
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(self.row(r)) {
                *o = f.add(*o, f.mul(a, g));
            }
        }
        out
    }

    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        if self.rows != other.rows {
            return Err(Error::Dimension("hstack row count".into()));
        }
        let rows = (0..self.rows)
            .map(|r| self.row(r).iter().chain(other.row(r)).copied().collect())
            .collect();
        Mat::from_rows(self.field.clone(), self.cols + other.cols, rows)
    }

    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.cols {
            return Err(Error::Dimension("vstack column count".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat::new(self.field.clone(), self.rows + other.rows, self.cols, data)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let rows = idx.iter().map(|&r| self.row(r).to_vec()).collect();
        Mat::from_rows(self.field.clone(), self.cols, rows).expect("consistent widths")
    }

    pub fn select_columns(&self, idx: &[usize]) -> Mat {
        let rows = (0..self.rows)
            .map(|r| idx.iter().map(|&c| self.get(r, c)).collect())
            .collect();
        Mat::from_rows(self.field.clone(), idx.len(), rows).expect("consistent widths")
    }

    /// Multiplies column j by `scale[j]`.
    pub fn scale_columns(&self, scale: &[Elem]) -> Result<Mat> {
        if scale.len() != self.cols {
            return Err(Error::Dimension("column scale length".into()));
        }
        let f = &self.field;
        let mut out = self.clone();
        for r in 0..self.rows {
            for (c, &s) in scale.iter().enumerate() {
                out.set(r, c, f.mul(self.get(r, c), s));
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form with first-nonzero pivoting.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, lead);
            let inv = f.inv(m.get(lead, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(lead, j);
                m.set(lead, j, f.mul(v, inv));
            }
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m.get(r, c);
                if factor.is_zero() {
                    continue;
                }
                let neg = f.neg(factor);
                for j in c..m.cols {
                    let v = f.add(m.get(r, j), f.mul(neg, m.get(lead, j)));
                    m.set(r, j, v);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Nonzero rows of the rref: a canonical basis of the row space.
    pub fn row_basis(&self) -> Mat {
        let (r, piv) = self.rref();
        r.select_rows(&(0..piv.len()).collect::<Vec<_>>())
    }

    /// Rows span { x : A xᵀ = 0 }.
    pub fn kernel_basis(&self) -> Mat {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let rows = free
            .iter()
            .map(|&fc| {
                let mut v = vec![Elem::ZERO; self.cols];
                v[fc] = Elem::ONE;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(i, fc));
                }
                v
            })
            .collect();
        Mat::from_rows(f.clone(), self.cols, rows).expect("kernel rows have full width")
    }

    /// Basis of rowspace(self) ∩ rowspace(other) by Zassenhaus' method:
    /// eliminate [[A, A], [B, 0]] and read the rows whose left half vanished.
    pub fn rowspace_intersection(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.cols {
            return Err(Error::Dimension("intersection of different widths".into()));
        }
        let n = self.cols;
        let top = self.hstack(self)?;
        let bottom = other.hstack(&Mat::zeros(self.field.clone(), other.rows, n))?;
        let (r, pivots) = top.vstack(&bottom)?.rref();
        let rows = (0..pivots.len())
            .filter(|&i| pivots[i] >= n)
            .map(|i| r.row(i)[n..].to_vec())
            .collect();
        Mat::from_rows(self.field.clone(), n, rows)
    }

    /// True iff every row of `other` lies in the row space of `self`.
    pub fn contains_rowspace(&self, other: &Mat) -> bool {
        let r = self.rank();
        self.vstack(other).map(|s| s.rank() == r).unwrap_or(false)
    }

    /// Systematic form (I_k | A) with the column permutation applied.
    ///
    /// `perm[j]` is the original column placed at position j. The permutation
    /// is the identity when the leading k×k block is already invertible.
    pub fn systematic_form(&self) -> Result<(Mat, Vec<usize>)> {
        let (r, pivots) = self.rref();
        if pivots.len() < self.rows {
            return Err(Error::RankDeficient { rank: pivots.len(), rows: self.rows });
        }
        let mut perm = pivots.clone();
        perm.extend((0..self.cols).filter(|c| !pivots.contains(c)));
        Ok((r.select_columns(&perm), perm))
    }
}
