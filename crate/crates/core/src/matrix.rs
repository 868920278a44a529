//! Dense matrices over GF(p^m) with exact row reduction.
//!
//! Entries are stored row-major as canonical encodings (packed residues), so
//! a matrix of a few thousand rows and columns stays small. Rank computation
//! uses Gaussian elimination with first-nonzero pivoting, rows processed in
//! the given order. For fields with q <= 2^16 the elimination runs in the
//! discrete-log domain with Zech logarithms; the table-free path is kept and
//! the two are cross-checked in tests.

use crate::error::{Error, Result};
use crate::gf::{Elem, Field, NONE32};
use crate::rng::Rng;

#[derive(Clone, PartialEq, Eq)]
pub struct MatrixGF {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl std::fmt::Debug for MatrixGF {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "MatrixGF {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows.min(12) {
            writeln!(f, "  {:?}", self.row_encs(r))?;
        }
        if self.rows > 12 {
            writeln!(f, "  ...")?;
        }
        Ok(())
    }
}

impl MatrixGF {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> MatrixGF {
        MatrixGF {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> MatrixGF {
        let mut m = MatrixGF::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.order();
        }
        m
    }

    /// Build from encoded entries, row-major.
    pub fn from_encs(field: &Field, rows: usize, cols: usize, data: Vec<u64>) -> Result<MatrixGF> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        let q = field.order();
        if let Some(bad) = data.iter().find(|&&e| e >= q) {
            return Err(Error::ParamRange(format!(
                "encoding {} out of range for field of order {}",
                bad, q
            )));
        }
        Ok(MatrixGF {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Elem>]) -> Result<MatrixGF> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::ShapeMismatch("ragged rows".into()));
            }
            for e in row {
                if e.field() != field {
                    return Err(Error::FieldMismatch);
                }
                data.push(e.enc());
            }
        }
        MatrixGF::from_encs(field, nrows, ncols, data)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn enc_data(&self) -> &[u64] {
        &self.data
    }

    #[inline]
    pub fn enc_at(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set_enc(&mut self, r: usize, c: usize, enc: u64) {
        debug_assert!(enc < self.field.order());
        self.data[r * self.cols + c] = enc;
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.field.from_enc(self.enc_at(r, c)).expect("stored encodings are canonical")
    }

    pub fn row_encs(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Reshape to a single row, row-major order.
    pub fn flattened(&self) -> MatrixGF {
        MatrixGF {
            field: self.field.clone(),
            rows: 1,
            cols: self.rows * self.cols,
            data: self.data.clone(),
        }
    }

    /// Stack `bottom` below `self`.
    pub fn stack(&self, bottom: &MatrixGF) -> Result<MatrixGF> {
        if self.field != bottom.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != bottom.cols {
            return Err(Error::ShapeMismatch(format!(
                "cannot stack {} columns on {} columns",
                bottom.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&bottom.data);
        Ok(MatrixGF {
            field: self.field.clone(),
            rows: self.rows + bottom.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn matmul(&self, rhs: &MatrixGF) -> Result<MatrixGF> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = &self.field;
        let mut out = MatrixGF::zero(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.enc_at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = f.enc_mul(a, rhs.enc_at(k, j));
                    let cur = out.enc_at(i, j);
                    out.set_enc(i, j, f.enc_add(cur, prod));
                }
            }
        }
        Ok(out)
    }

    /// Scale column `c` by a nonzero encoded constant.
    pub fn scale_column(&mut self, c: usize, enc: u64) {
        for r in 0..self.rows {
            let v = self.field.enc_mul(self.enc_at(r, c), enc);
            self.set_enc(r, c, v);
        }
    }

    // -- rank ----------------------------------------------------------------

    /// Rank over GF(p^m).
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        match self.field.zech() {
            Some(_) => self.rank_zech(),
            None => self.rank_generic(),
        }
    }

    fn rank_zech(&self) -> usize {
        let z = self.field.zech().expect("caller checked");
        let qm1 = z.qm1;
        let cols = self.cols;
        let rows = self.rows;
        // move to the log domain; NONE32 encodes zero
        let mut a: Vec<u32> = self.data.iter().map(|&e| z.log[e as usize]).collect();
        let mut rank = 0usize;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| a[r * cols + col] != NONE32) else {
                continue;
            };
            if pivot != rank {
                let (top, bottom) = a.split_at_mut(pivot * cols);
                top[rank * cols..rank * cols + cols].swap_with_slice(&mut bottom[..cols]);
            }
            let lp = a[rank * cols + col];
            let (pivot_rows, rest) = a.split_at_mut((rank + 1) * cols);
            let prow = &pivot_rows[rank * cols..];
            for r in rank + 1..rows {
                let trow = &mut rest[(r - rank - 1) * cols..(r - rank) * cols];
                let lr = trow[col];
                if lr == NONE32 {
                    continue;
                }
                // log(-entry/pivot)
                let mut lf = lr + qm1 - lp;
                if lf >= qm1 {
                    lf -= qm1;
                }
                let mut lfneg = lf + z.log_neg1;
                if lfneg >= qm1 {
                    lfneg -= qm1;
                }
                // target += g^lfneg * pivot_row
                for j in col..cols {
                    let lb = prow[j];
                    if lb == NONE32 {
                        continue;
                    }
                    let mut lm = lfneg + lb;
                    if lm >= qm1 {
                        lm -= qm1;
                    }
                    let la = trow[j];
                    trow[j] = if la == NONE32 {
                        lm
                    } else {
                        let d = if lm >= la { lm - la } else { lm + qm1 - la };
                        let zl = z.zech[d as usize];
                        if zl == NONE32 {
                            NONE32
                        } else {
                            let mut s = la + zl;
                            if s >= qm1 {
                                s -= qm1;
                            }
                            s
                        }
                    };
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    pub(crate) fn rank_generic(&self) -> usize {
        let f = &self.field;
        let cols = self.cols;
        let rows = self.rows;
        let mut a = self.data.clone();
        let mut rank = 0usize;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
                continue;
            };
            if pivot != rank {
                let (top, bottom) = a.split_at_mut(pivot * cols);
                top[rank * cols..rank * cols + cols].swap_with_slice(&mut bottom[..cols]);
            }
            let pinv = f.enc_inv(a[rank * cols + col]).expect("pivot nonzero");
            for r in rank + 1..rows {
                let lead = a[r * cols + col];
                if lead == 0 {
                    continue;
                }
                let factor = f.enc_mul(lead, pinv);
                for j in col..cols {
                    let sub = f.enc_mul(factor, a[rank * cols + j]);
                    a[r * cols + j] = f.enc_sub(a[r * cols + j], sub);
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Result<Elem> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let f = &self.field;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = 1 % f.order();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return Ok(f.zero());
            };
            if pivot != col {
                let (top, bottom) = a.split_at_mut(pivot * n);
                top[col * n..col * n + n].swap_with_slice(&mut bottom[..n]);
                det = f.enc_neg(det);
            }
            let pv = a[col * n + col];
            det = f.enc_mul(det, pv);
            let pinv = f.enc_inv(pv).expect("pivot nonzero");
            for r in col + 1..n {
                let lead = a[r * n + col];
                if lead == 0 {
                    continue;
                }
                let factor = f.enc_mul(lead, pinv);
                for j in col..n {
                    let sub = f.enc_mul(factor, a[col * n + j]);
                    a[r * n + j] = f.enc_sub(a[r * n + j], sub);
                }
            }
        }
        f.from_enc(det)
    }

    /// Solve `self * X = rhs` for a square invertible `self` by Gauss-Jordan.
    pub fn solve(&self, rhs: &MatrixGF) -> Result<MatrixGF> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != self.cols || self.rows != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "solving {}x{} system against {}x{} right-hand side",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = &self.field;
        let n = self.rows;
        let w = n + rhs.cols;
        let mut a = vec![0u64; n * w];
        for r in 0..n {
            a[r * w..r * w + n].copy_from_slice(self.row_encs(r));
            a[r * w + n..r * w + w].copy_from_slice(rhs.row_encs(r));
        }
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| a[r * w + col] != 0) else {
                return Err(Error::SingularSystem);
            };
            if pivot != col {
                let (top, bottom) = a.split_at_mut(pivot * w);
                top[col * w..col * w + w].swap_with_slice(&mut bottom[..w]);
            }
            let pinv = f.enc_inv(a[col * w + col]).expect("pivot nonzero");
            for j in col..w {
                a[col * w + j] = f.enc_mul(a[col * w + j], pinv);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * w + col];
                if factor == 0 {
                    continue;
                }
                for j in col..w {
                    let sub = f.enc_mul(factor, a[col * w + j]);
                    a[r * w + j] = f.enc_sub(a[r * w + j], sub);
                }
            }
        }
        let mut data = Vec::with_capacity(n * rhs.cols);
        for r in 0..n {
            data.extend_from_slice(&a[r * w + n..r * w + w]);
        }
        MatrixGF::from_encs(f, n, rhs.cols, data)
    }

    // -- random matrices ------------------------------------------------------

    pub fn random(field: &Field, rows: usize, cols: usize, rng: &mut Rng) -> MatrixGF {
        let q = field.order();
        let data = (0..rows * cols).map(|_| rng.below(q)).collect();
        MatrixGF {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Draw uniformly until the sample is invertible.
    pub fn random_invertible(field: &Field, n: usize, rng: &mut Rng) -> MatrixGF {
        loop {
            let m = MatrixGF::random(field, n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn rank_edge_cases() {
        let f = gf(7);
        assert_eq!(MatrixGF::zero(&f, 3, 4).rank(), 0);
        assert_eq!(MatrixGF::identity(&f, 5).rank(), 5);
        // equal rows collapse
        let m = MatrixGF::from_encs(&f, 3, 2, vec![1, 2, 1, 2, 1, 2]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rank_is_idempotent_under_row_ops() {
        let f = gf(13);
        let mut rng = Rng::new(5);
        for _ in 0..50 {
            let m = MatrixGF::random(&f, 6, 9, &mut rng);
            let r = m.rank();
            let a = MatrixGF::random_invertible(&f, 6, &mut rng);
            assert_eq!(a.matmul(&m).unwrap().rank(), r);
            // column permutation via scaling every column by nonzero constants
            let mut scaled = m.clone();
            for c in 0..9 {
                scaled.scale_column(c, 1 + rng.below(12));
            }
            assert_eq!(scaled.rank(), r);
        }
    }

    #[test]
    fn zech_and_generic_rank_agree() {
        for (p, m) in [(2u64, 3u32), (5, 2), (31, 3), (43, 2), (13, 1)] {
            let f = Field::new(p, m, None).unwrap();
            let mut rng = Rng::new(p + m as u64);
            for trial in 0..30 {
                let rows = 1 + (trial % 7);
                let cols = 1 + (trial % 9);
                let mat = MatrixGF::random(&f, rows, cols, &mut rng);
                assert_eq!(mat.rank(), mat.rank_generic(), "{}x{} over {}", rows, cols, f);
            }
        }
    }

    #[test]
    fn determinant_matches_two_by_two_formula() {
        let f = gf(11);
        let mut rng = Rng::new(17);
        for _ in 0..200 {
            let m = MatrixGF::random(&f, 2, 2, &mut rng);
            let (a, b, c, d) = (m.enc_at(0, 0), m.enc_at(0, 1), m.enc_at(1, 0), m.enc_at(1, 1));
            let expect = f.enc_sub(f.enc_mul(a, d), f.enc_mul(b, c));
            assert_eq!(m.det().unwrap().enc(), expect);
        }
    }

    #[test]
    fn solve_round_trips() {
        let f = Field::new(3, 2, None).unwrap();
        let mut rng = Rng::new(23);
        for _ in 0..50 {
            let a = MatrixGF::random_invertible(&f, 4, &mut rng);
            let x = MatrixGF::random(&f, 4, 3, &mut rng);
            let b = a.matmul(&x).unwrap();
            let solved = a.solve(&b).unwrap();
            assert_eq!(solved, x);
        }
        let singular = MatrixGF::zero(&f, 2, 2);
        assert!(matches!(
            singular.solve(&MatrixGF::identity(&f, 2)),
            Err(Error::SingularSystem)
        ));
    }

    #[test]
    fn stack_and_flatten_shapes() {
        let f = gf(7);
        let a = MatrixGF::from_encs(&f, 2, 3, vec![1, 2, 3, 4, 5, 6]).unwrap();
        let b = MatrixGF::from_encs(&f, 1, 3, vec![0, 1, 0]).unwrap();
        let s = a.stack(&b).unwrap();
        assert_eq!((s.rows(), s.cols()), (3, 3));
        assert_eq!(s.row_encs(2), &[0, 1, 0]);
        let flat = a.flattened();
        assert_eq!((flat.rows(), flat.cols()), (1, 6));
        assert_eq!(flat.enc_data(), &[1, 2, 3, 4, 5, 6]);
    }
}
