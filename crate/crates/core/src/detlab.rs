//! The binomial-product matrix family and its determinant identities.
//!
//! `M(a, b, i, j, m)` is the m x (b-a+1) matrix whose (row, col) entry is
//! `C(i+row, col) * C(j-row, col)` for col = a..=b; `m = b-a+1` makes it
//! square. `M_{l,k}` replaces its l-th column (1-based) with the column of
//! the same shape built from lower index k. Closed forms exist for
//! `det M(a, b, i, j)` and `det M_{l,k}(0, b, i, j)`; they are evaluated here
//! over exact big rationals, asserted integral, and only then reduced mod p,
//! so the mod-p value is always the reduction of the true integer
//! determinant.
//!
//! On top of the family sit the coefficient blocks `C` solving
//! `M(0, A-1, i-t+1, t-1) C = M(A, s-1, i-t+1, t-1, A)`, the invertibility
//! checks of their designated submatrices, and the structured generating
//! matrix whose rows span the Schur square of an HRS code.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::hrs::CodeSpec;
use crate::matrix::MatrixGF;
use crate::poly::{binomial_bigint, factorial_bigint};

// ---------------------------------------------------------------------------
// the matrix family
// ---------------------------------------------------------------------------

/// Index data for one member of the family: columns a..=b, binomial upper
/// indices seeded by i (ascending) and j (descending), m rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinomialMatrixParams {
    pub a: i64,
    pub b: i64,
    pub i: i64,
    pub j: i64,
    pub m: i64,
}

impl BinomialMatrixParams {
    /// Square member: m = b - a + 1.
    pub fn square(a: i64, b: i64, i: i64, j: i64) -> Result<Self> {
        Self::rect(a, b, i, j, b - a + 1)
    }

    pub fn rect(a: i64, b: i64, i: i64, j: i64, m: i64) -> Result<Self> {
        if !(0 <= a && a <= b) {
            return Err(Error::ParamRange(format!("need 0 <= a <= b, got a = {a}, b = {b}")));
        }
        if i < 0 {
            return Err(Error::ParamRange(format!("need i >= 0, got i = {i}")));
        }
        if m < 1 {
            return Err(Error::ParamRange(format!("need m >= 1, got m = {m}")));
        }
        if j < m - 1 {
            return Err(Error::ParamRange(format!("need j >= m - 1, got j = {j}, m = {m}")));
        }
        Ok(BinomialMatrixParams { a, b, i, j, m })
    }

    pub fn cols(&self) -> i64 {
        self.b - self.a + 1
    }
}

/// The integer matrix.
pub fn binomial_matrix_int(p: &BinomialMatrixParams) -> Vec<Vec<BigInt>> {
    (0..p.m)
        .map(|row| {
            (p.a..=p.b)
                .map(|col| binomial_bigint(p.i + row, col) * binomial_bigint(p.j - row, col))
                .collect()
        })
        .collect()
}

/// Integer matrix with the 1-based column `ell` replaced by the k-column.
pub fn binomial_matrix_replaced_int(
    p: &BinomialMatrixParams,
    ell: i64,
    k: i64,
) -> Result<Vec<Vec<BigInt>>> {
    if ell < 1 || ell > p.cols() {
        return Err(Error::ParamRange(format!(
            "replacement position must satisfy 1 <= ell <= {}, got {}",
            p.cols(),
            ell
        )));
    }
    if k < 0 {
        return Err(Error::ParamRange(format!("need k >= 0, got k = {k}")));
    }
    Ok((0..p.m)
        .map(|row| {
            (p.a..=p.b)
                .map(|col| {
                    let low = if col == p.a + ell - 1 { k } else { col };
                    binomial_bigint(p.i + row, low) * binomial_bigint(p.j - row, low)
                })
                .collect()
        })
        .collect())
}

/// The matrix reduced into a field of characteristic p. Entries live in the
/// prime subfield, so the same encodings are valid in any GF(p^m).
pub fn binomial_matrix(params: &BinomialMatrixParams, field: &Field) -> Result<MatrixGF> {
    reduce_rows(&binomial_matrix_int(params), field, params.b)
}

pub fn binomial_matrix_replaced(
    params: &BinomialMatrixParams,
    ell: i64,
    k: i64,
    field: &Field,
) -> Result<MatrixGF> {
    reduce_rows(&binomial_matrix_replaced_int(params, ell, k)?, field, params.b)
}

fn reduce_rows(rows: &[Vec<BigInt>], field: &Field, b: i64) -> Result<MatrixGF> {
    let p = field.characteristic();
    if b as u64 > p - 1 {
        return Err(Error::ParamRange(format!(
            "need b <= p - 1 for entries in GF({p}), got b = {b}"
        )));
    }
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let data = rows
        .iter()
        .flat_map(|r| r.iter().map(|e| bigint_mod(e, p)))
        .collect();
    MatrixGF::from_encs(field, nrows, ncols, data)
}

/// Nonnegative residue of an integer mod p.
pub fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

// ---------------------------------------------------------------------------
// closed-form determinants
// ---------------------------------------------------------------------------

/// Closed form for `det M(a, b, i, j)` (square, m = b-a+1), valid for
/// `0 <= a <= b`, `i >= 0`, `j >= b-a+1`. Evaluated over exact rationals;
/// the result is asserted integral.
pub fn binomial_det_closed(a: i64, b: i64, i: i64, j: i64) -> Result<BigInt> {
    if !(0 <= a && a <= b) || i < 0 || j < b - a + 1 {
        return Err(Error::ParamRange(format!(
            "closed form needs 0 <= a <= b, i >= 0, j >= b-a+1; got ({a},{b},{i},{j})"
        )));
    }
    let mut acc = BigRational::one();
    for l in 0..=(b - a) {
        let num = binomial_bigint(i + l, a) * binomial_bigint(j - l, a);
        let den = binomial_bigint(a + l, l);
        acc *= BigRational::new(num, &den * &den);
    }
    for w in 0..=(b - a - 1) {
        let mut num = BigInt::one();
        for u in 1..=(b - a - w) {
            num *= BigInt::from(j - i + 1 - w - 2 * u);
        }
        acc *= BigRational::new(num, factorial_bigint(b - a - w));
    }
    rational_to_int(acc)
}

/// Closed form for `det M_{ell,k}(0, b, i, j)`, valid for `0 <= b`, `i >= 0`,
/// `j >= b+1` and `1 <= ell <= b+1 <= k`.
pub fn replaced_det_closed(b: i64, i: i64, j: i64, ell: i64, k: i64) -> Result<BigInt> {
    if b < 0 || i < 0 || j < b + 1 || ell < 1 || ell > b + 1 || k < b + 1 {
        return Err(Error::ParamRange(format!(
            "replaced closed form needs 0 <= b, i >= 0, j >= b+1, 1 <= ell <= b+1 <= k; got (b={b},i={i},j={j},ell={ell},k={k})"
        )));
    }
    let tail = binomial_bigint(i - 1, k - b - 1) * binomial_bigint(j - b - 1, k - b - 1);
    let acc = if ell == 1 {
        let mut acc = sign(b);
        let mut num = BigInt::one();
        for h in 0..=b {
            num *= BigInt::from(i + h) * BigInt::from(j - h);
        }
        let bf = factorial_bigint(b);
        acc *= BigRational::new(num, &bf * &bf * BigInt::from(k) * BigInt::from(k));
        for u in 0..=(b - 1) {
            let mut num = BigInt::one();
            for h in 0..=(b - 1 - u) {
                num *= BigInt::from(j - u - i - 1 - 2 * h);
            }
            acc *= BigRational::new(num, factorial_bigint(b - u - 1) * BigInt::from(k - u - 1));
        }
        acc
    } else {
        let mut acc = sign(b - ell + 1);
        for m in 0..=(ell - 2) {
            let mut num = BigInt::one();
            for u in 1..=(b - m) {
                num *= BigInt::from(j - m - i - 2 * u + 1);
            }
            // denominator (b-m)! * (k-m) / (ell-m-1)
            acc *= BigRational::new(
                num * BigInt::from(ell - m - 1),
                factorial_bigint(b - m) * BigInt::from(k - m),
            );
        }
        let mut num = BigInt::one();
        for h in 0..=(b - ell + 1) {
            num *= BigInt::from(i + h) * BigInt::from(j - ell + 1 - h);
        }
        let f = factorial_bigint(b - ell + 1);
        let d = BigInt::from(k - ell + 1);
        acc *= BigRational::new(num, &f * &f * &d * &d);
        for u in 0..=(b - ell) {
            let mut num = BigInt::one();
            for h in 0..=(b - ell - u) {
                num *= BigInt::from(j - u - i - ell - 2 * h);
            }
            acc *= BigRational::new(num, factorial_bigint(b - ell - u) * BigInt::from(k - ell - u));
        }
        acc
    };
    rational_to_int(acc * BigRational::from_integer(tail))
}

fn sign(e: i64) -> BigRational {
    if e.rem_euclid(2) == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

fn rational_to_int(acc: BigRational) -> Result<BigInt> {
    if !acc.is_integer() {
        return Err(Error::InexactDivision);
    }
    Ok(acc.to_integer())
}

/// Fraction-free Bareiss determinant of an integer matrix.
pub fn det_bigint(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(rows.iter().all(|r| r.len() == n));
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = val;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = std::mem::take(&mut a[n - 1][n - 1]);
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Cauchy's double alternant: det(1 / (x_i + y_j)) as an exact rational.
pub fn cauchy_det(x: &[BigRational], y: &[BigRational]) -> Result<BigRational> {
    if x.len() != y.len() {
        return Err(Error::ShapeMismatch(format!(
            "cauchy determinant of {} x-values and {} y-values",
            x.len(),
            y.len()
        )));
    }
    let mut den = BigRational::one();
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            let s = xi + yj;
            if s.is_zero() {
                return Err(Error::CauchyZeroDenominator { i, j });
            }
            den *= s;
        }
    }
    let mut num = BigRational::one();
    for j in 0..x.len() {
        for i in 0..j {
            num *= (&x[j] - &x[i]) * (&y[j] - &y[i]);
        }
    }
    Ok(num / den)
}

// ---------------------------------------------------------------------------
// coefficient blocks
// ---------------------------------------------------------------------------

/// Row/column split for the degree layer i of a Schur square: the pivot
/// block has `pivot_rows = t - ceil(i/2)` rows and the coefficient block has
/// `coeff_cols = s - t + ceil(i/2)` columns; the two always sum to s.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaseSplit {
    pub i: i64,
    pub pivot_rows: i64,
    pub coeff_cols: i64,
}

impl CaseSplit {
    pub fn new(s: i64, t: i64, i: i64) -> Result<CaseSplit> {
        if !(2 * t - 2 * s + 1 <= i && i <= 2 * t - 2) {
            return Err(Error::ParamRange(format!(
                "need 2t-2s+1 <= i <= 2t-2, got i = {i} with s = {s}, t = {t}"
            )));
        }
        let half = (i + 1).div_euclid(2); // ceil(i/2) for i >= 0
        let a = t - half;
        let b = s - t + half;
        if !(1 <= a && a <= s - 1 && 1 <= b && b <= s - 1) {
            return Err(Error::ParamRange(format!(
                "split ({a}, {b}) outside [1, s-1] for s = {s}, t = {t}, i = {i}"
            )));
        }
        debug_assert_eq!(a + b, s);
        Ok(CaseSplit {
            i,
            pivot_rows: a,
            coeff_cols: b,
        })
    }
}

/// The unique solution C of
/// `M(0, A-1, i-t+1, t-1) * C = M(A, s-1, i-t+1, t-1, A)` over GF(p).
#[derive(Debug, Clone)]
pub struct CoefficientBlock {
    pub i: i64,
    pub split: CaseSplit,
    /// A x B matrix over GF(p).
    pub entries: MatrixGF,
}

/// Solve the coefficient block for degree layer i. Requires p >= 2s,
/// t >= 2s and 2t-2s+1 <= i <= 2t-2; under these the left matrix is
/// invertible, so a singular system signals a precondition violation.
pub fn solve_coefficient_block(s: i64, t: i64, i: i64, p: u64) -> Result<CoefficientBlock> {
    if s < 2 || t < 2 * s || (p as i64) < 2 * s {
        return Err(Error::ParamRange(format!(
            "coefficient blocks need s >= 2, t >= 2s and p >= 2s; got s = {s}, t = {t}, p = {p}"
        )));
    }
    let split = CaseSplit::new(s, t, i)?;
    let field = Field::prime(p)?;
    let a = split.pivot_rows;
    let lhs = binomial_matrix(
        &BinomialMatrixParams::square(0, a - 1, i - t + 1, t - 1)?,
        &field,
    )?;
    let rhs = binomial_matrix(
        &BinomialMatrixParams::rect(a, s - 1, i - t + 1, t - 1, a)?,
        &field,
    )?;
    let entries = lhs.solve(&rhs)?;
    debug_assert_eq!(lhs.matmul(&entries).unwrap(), rhs, "residual must vanish");
    Ok(CoefficientBlock { i, split, entries })
}

/// Which submatrix of the coefficient block is predicted invertible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockCase {
    /// `2t-2s+1 <= i <= 2t-s-1`: the leading B x B principal submatrix.
    LeadingPrincipal,
    /// `2t-s <= i <= 2t-2`: the A x A submatrix in the last A columns.
    TrailingColumns,
}

#[derive(Debug, Clone)]
pub struct InvertibilityCheck {
    pub s: i64,
    pub t: i64,
    pub i: i64,
    pub p: u64,
    pub case: BlockCase,
    pub submatrix_size: i64,
    pub predicted_invertible: bool,
    pub observed_invertible: bool,
}

/// Solve the block and test the designated submatrix for invertibility by
/// rank.
///
/// The submatrix is predicted invertible whenever p >= t; p >= 2s alone is
/// not enough. At (s, t, i, p) = (2, 6, 9, 5) the block is the single entry
/// C(4,1) C(5,1) = 20 = 0 mod 5, so the leading principal submatrix is
/// singular even though p = 5 >= 2s = 4. Calls with 2s <= p < t are allowed
/// for exploration and simply report what they observe.
pub fn coefficient_block_invertibility(s: i64, t: i64, i: i64, p: u64) -> Result<InvertibilityCheck> {
    let block = solve_coefficient_block(s, t, i, p)?;
    let a = block.split.pivot_rows;
    let b = block.split.coeff_cols;
    let (case, size, row0, col0) = if i <= 2 * t - s - 1 {
        (BlockCase::LeadingPrincipal, b, 0i64, 0i64)
    } else {
        (BlockCase::TrailingColumns, a, 0i64, b - a)
    };
    let field = block.entries.field().clone();
    let mut sub = MatrixGF::zero(&field, size as usize, size as usize);
    for r in 0..size {
        for c in 0..size {
            sub.set_enc(
                r as usize,
                c as usize,
                block.entries.enc_at((row0 + r) as usize, (col0 + c) as usize),
            );
        }
    }
    let observed = sub.rank() == size as usize;
    Ok(InvertibilityCheck {
        s,
        t,
        i,
        p,
        case,
        submatrix_size: size,
        predicted_invertible: p >= t as u64,
        observed_invertible: observed,
    })
}

// ---------------------------------------------------------------------------
// structured generating matrix of the Schur square
// ---------------------------------------------------------------------------

/// The (2t-2s+1)s x rs block matrix whose rows span the Schur square of
/// `HRS_t(alpha, s)`:
///
/// - diagonal power blocks: block column j (0-based) carries the rows
///   alpha^0 .. alpha^(2t-2s-2j), for j = 0..s-1;
/// - for each degree layer i = 2t-2s+1 .. 2t-2, `pivot_rows` additional rows
///   with a single power vector alpha^(i-2(l-1)) in block column l-1 and the
///   coefficient-block entries c_{l,j} * alpha^(i-2*col) in the last
///   `coeff_cols` block columns.
///
/// Requires p >= 2s, s >= 2, t >= 2s, t <= rs-1 and r >= 2t-2s+1. A
/// multiplier matrix scales the flattened columns by its squared entries.
pub fn structured_square_generator(spec: &CodeSpec) -> Result<MatrixGF> {
    let field = spec.field().clone();
    let p = field.characteristic() as i64;
    let (s, t, r) = (spec.s() as i64, spec.t() as i64, spec.r() as i64);
    if s < 2 || t < 2 * s || p < 2 * s {
        return Err(Error::ParamRange(format!(
            "structured generator needs s >= 2, t >= 2s, p >= 2s; got s = {s}, t = {t}, p = {p}"
        )));
    }
    if t > r * s - 1 {
        return Err(Error::ParamRange(format!(
            "structured generator needs t <= rs - 1, got t = {t} with rs = {}",
            r * s
        )));
    }
    if r < 2 * t - 2 * s + 1 {
        return Err(Error::ParamRange(format!(
            "structured generator needs r >= 2t - 2s + 1 = {}, got r = {r}",
            2 * t - 2 * s + 1
        )));
    }
    let n = (r * s) as usize;
    let total_rows = ((2 * t - 2 * s + 1) * s) as usize;
    let alpha = spec.alpha();
    let mut out = MatrixGF::zero(&field, total_rows, n);
    let mut row = 0usize;
    let power_row = |out: &mut MatrixGF, row: usize, block: i64, e: i64, coeff: u64| {
        debug_assert!(e >= 0);
        for (c, &a) in alpha.iter().enumerate() {
            let val = field.enc_mul(coeff, field.enc_pow(a, e as u64));
            out.set_enc(row, (block * r) as usize + c, val);
        }
    };
    // diagonal blocks of decreasing top degree
    for blk in 0..s {
        let top = 2 * t - 2 * s - 2 * blk;
        for e in 0..=top {
            power_row(&mut out, row, blk, e, 1);
            row += 1;
        }
    }
    // coefficient-augmented rows for the top degree layers
    for i in (2 * t - 2 * s + 1)..=(2 * t - 2) {
        let block = solve_coefficient_block(s, t, i, p as u64)?;
        let a = block.split.pivot_rows;
        let b = block.split.coeff_cols;
        for l in 1..=a {
            power_row(&mut out, row, l - 1, i - 2 * (l - 1), 1);
            for jj in 1..=b {
                let bc = a + jj - 1;
                // coefficient lives in the prime subfield; encodings carry over
                let coeff = block.entries.enc_at((l - 1) as usize, (jj - 1) as usize);
                power_row(&mut out, row, bc, i - 2 * bc, coeff);
            }
            row += 1;
        }
    }
    debug_assert_eq!(row, total_rows);
    if let Some(v) = spec.multiplier() {
        for (idx, &vi) in v.iter().enumerate() {
            out.scale_column(idx, field.enc_mul(vi, vi));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// determinant cross-check grid
// ---------------------------------------------------------------------------

/// One grid point of the closed-form / brute-force comparison.
#[derive(Debug, Clone)]
pub struct DetCheckRow {
    pub a: i64,
    pub b: i64,
    pub i: i64,
    pub j: i64,
    pub ell: Option<i64>,
    pub k: Option<i64>,
    pub closed_form: BigInt,
    pub brute_force: BigInt,
}

impl DetCheckRow {
    pub fn matches(&self) -> bool {
        self.closed_form == self.brute_force
    }
}

/// Grid for the plain closed form: b-a <= 4, b <= 6, i <= 12,
/// b-a+1 <= j <= 14.
pub fn plain_det_grid() -> Vec<(i64, i64, i64, i64)> {
    let mut out = Vec::new();
    for a in 0..=6 {
        for b in a..=(a + 4).min(6) {
            for i in 0..=12 {
                for j in (b - a + 1)..=14 {
                    out.push((a, b, i, j));
                }
            }
        }
    }
    out
}

/// Grid for the replaced-column closed form: a = 0, b <= 4, i <= 12,
/// b+1 <= j <= 14, 1 <= ell <= b+1 <= k <= b+4.
pub fn replaced_det_grid() -> Vec<(i64, i64, i64, i64, i64)> {
    let mut out = Vec::new();
    for b in 0..=4 {
        for i in 0..=12 {
            for j in (b + 1)..=14 {
                for ell in 1..=(b + 1) {
                    for k in (b + 1)..=(b + 4) {
                        out.push((b, i, j, ell, k));
                    }
                }
            }
        }
    }
    out
}

/// Evaluate both routes on the full grid.
pub fn run_det_check() -> Result<Vec<DetCheckRow>> {
    let mut rows = Vec::new();
    for (a, b, i, j) in plain_det_grid() {
        let params = BinomialMatrixParams::square(a, b, i, j)?;
        rows.push(DetCheckRow {
            a,
            b,
            i,
            j,
            ell: None,
            k: None,
            closed_form: binomial_det_closed(a, b, i, j)?,
            brute_force: det_bigint(&binomial_matrix_int(&params)),
        });
    }
    for (b, i, j, ell, k) in replaced_det_grid() {
        let params = BinomialMatrixParams::square(0, b, i, j)?;
        rows.push(DetCheckRow {
            a: 0,
            b,
            i,
            j,
            ell: Some(ell),
            k: Some(k),
            closed_form: replaced_det_closed(b, i, j, ell, k)?,
            brute_force: det_bigint(&binomial_matrix_replaced_int(&params, ell, k)?),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::square_basis;

    #[test]
    fn binomial_matrix_examples() {
        let f7 = Field::prime(7).unwrap();
        // 1x1 with a = 0 is always (1)
        let m = binomial_matrix(&BinomialMatrixParams::square(0, 0, 4, 9).unwrap(), &f7).unwrap();
        assert_eq!(m.enc_data(), &[1]);

        // M(0,1,2,5) over GF(7) = ((1, 3), (1, 5))
        let m = binomial_matrix(&BinomialMatrixParams::square(0, 1, 2, 5).unwrap(), &f7).unwrap();
        assert_eq!(m.enc_data(), &[1, 3, 1, 5]);

        // M(1,1,2,3,1) over GF(7) = (C(2,1)C(3,1)) = (6)
        let m = binomial_matrix(&BinomialMatrixParams::rect(1, 1, 2, 3, 1).unwrap(), &f7).unwrap();
        assert_eq!(m.enc_data(), &[6]);
    }

    #[test]
    fn replaced_matrix_examples() {
        let f7 = Field::prime(7).unwrap();
        let params = BinomialMatrixParams::square(0, 1, 2, 5).unwrap();
        // self-replacement: column ell picks its own index
        for ell in 1..=2 {
            let k = params.a + ell - 1;
            let m = binomial_matrix_replaced(&params, ell, k, &f7).unwrap();
            assert_eq!(m, binomial_matrix(&params, &f7).unwrap());
        }
        // replacing column 1 with k = 2: (C(2,2)C(5,2), C(3,2)C(4,2)) = (10, 18)
        let m = binomial_matrix_replaced(&params, 1, 2, &f7).unwrap();
        assert_eq!(m.enc_at(0, 0), 3);
        assert_eq!(m.enc_at(1, 0), 4);
        // out-of-range position
        assert!(binomial_matrix_replaced_int(&params, 0, 2).is_err());
        assert!(binomial_matrix_replaced_int(&params, 3, 2).is_err());
    }

    #[test]
    fn closed_form_examples() {
        // det M(0,1,i,j) = j - i - 1
        assert_eq!(binomial_det_closed(0, 1, 2, 5).unwrap(), BigInt::from(2));
        // empty products
        assert_eq!(binomial_det_closed(0, 0, 3, 9).unwrap(), BigInt::one());
        // against Bareiss
        let params = BinomialMatrixParams::square(1, 2, 3, 6).unwrap();
        assert_eq!(
            binomial_det_closed(1, 2, 3, 6).unwrap(),
            det_bigint(&binomial_matrix_int(&params))
        );
        assert!(binomial_det_closed(0, 1, 2, 1).is_err());
    }

    #[test]
    fn replaced_closed_form_examples() {
        // b = 0: the matrix is the single entry C(i,k)C(j,k)
        for (i, j, k) in [(3i64, 5i64, 2i64), (4, 7, 1), (0, 9, 3)] {
            assert_eq!(
                replaced_det_closed(0, i, j, 1, k).unwrap(),
                binomial_bigint(i, k) * binomial_bigint(j, k)
            );
        }
        // 2x2 spot checks against brute force, both ell values
        let params = BinomialMatrixParams::square(0, 1, 2, 5).unwrap();
        for (ell, k) in [(1i64, 2i64), (2, 2), (1, 3), (2, 4)] {
            let brute = det_bigint(&binomial_matrix_replaced_int(&params, ell, k).unwrap());
            assert_eq!(replaced_det_closed(1, 2, 5, ell, k).unwrap(), brute, "ell={ell} k={k}");
        }
        assert_eq!(replaced_det_closed(1, 2, 5, 1, 2).unwrap(), BigInt::from(-60));
    }

    #[test]
    fn closed_form_agrees_with_brute_force_on_a_subgrid() {
        // the full grid runs in the acceptance suite; spot a diagonal here
        for a in 0..=2i64 {
            for span in 0..=2i64 {
                let b = a + span;
                for i in [0i64, 3, 7] {
                    for j in [b - a + 1, b - a + 4, 11] {
                        let params = BinomialMatrixParams::square(a, b, i, j).unwrap();
                        assert_eq!(
                            binomial_det_closed(a, b, i, j).unwrap(),
                            det_bigint(&binomial_matrix_int(&params)),
                            "({a},{b},{i},{j})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn factorization_into_prime_block_holds() {
        // det M(a,b,i,j) = prod_l C(i+l,a)C(j-l,a)/C(a+l,l)^2 * det M(0,b-a,i-a,j-a)
        for (a, b, i, j) in [(1i64, 3i64, 2i64, 8i64), (2, 4, 5, 9), (1, 1, 1, 3), (3, 5, 3, 10)] {
            let lhs = det_bigint(&binomial_matrix_int(
                &BinomialMatrixParams::square(a, b, i, j).unwrap(),
            ));
            let inner = det_bigint(&binomial_matrix_int(
                &BinomialMatrixParams::square(0, b - a, i - a, j - a).unwrap(),
            ));
            let mut factor = BigRational::one();
            for l in 0..=(b - a) {
                let den = binomial_bigint(a + l, l);
                factor *= BigRational::new(
                    binomial_bigint(i + l, a) * binomial_bigint(j - l, a),
                    &den * &den,
                );
            }
            let rhs = factor * BigRational::from_integer(inner);
            assert!(rhs.is_integer());
            assert_eq!(BigInt::from(lhs), rhs.to_integer(), "({a},{b},{i},{j})");
        }
    }

    #[test]
    fn cauchy_examples() {
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        // 1x1
        assert_eq!(
            cauchy_det(&[r(1, 1)], &[r(3, 1)]).unwrap(),
            r(1, 4)
        );
        // 2x2: 1/600
        assert_eq!(
            cauchy_det(&[r(1, 1), r(2, 1)], &[r(3, 1), r(4, 1)]).unwrap(),
            r(1, 600)
        );
        // repeated x entries: zero
        assert!(cauchy_det(&[r(2, 1), r(2, 1)], &[r(3, 1), r(4, 1)])
            .unwrap()
            .is_zero());
        // zero denominator
        assert!(matches!(
            cauchy_det(&[r(1, 1)], &[r(-1, 1)]),
            Err(Error::CauchyZeroDenominator { i: 0, j: 0 })
        ));
    }

    #[test]
    fn cauchy_matches_rational_elimination() {
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        for size in 1..=5usize {
            let x: Vec<BigRational> = (0..size).map(|v| r(2 * v as i64 + 1, 1)).collect();
            let y: Vec<BigRational> = (0..size).map(|v| r(3 * v as i64 + 2, 1)).collect();
            let mut m: Vec<Vec<BigRational>> = (0..size)
                .map(|i| (0..size).map(|j| BigRational::one() / (&x[i] + &y[j])).collect())
                .collect();
            // rational Gaussian elimination
            let mut det = BigRational::one();
            for c in 0..size {
                let pivot = (c..size).find(|&rr| !m[rr][c].is_zero()).unwrap();
                if pivot != c {
                    m.swap(pivot, c);
                    det = -det;
                }
                det *= m[c][c].clone();
                let inv = BigRational::one() / m[c][c].clone();
                for rr in c + 1..size {
                    let f = &m[rr][c] * &inv;
                    for cc in c..size {
                        let sub = &f * &m[c][cc];
                        m[rr][cc] = &m[rr][cc] - &sub;
                    }
                }
            }
            assert_eq!(cauchy_det(&x, &y).unwrap(), det, "size {size}");
        }
    }

    #[test]
    fn coefficient_block_small_cases() {
        // s=2, t=4, p=7, i=5: 1x1 system with solution 6
        let block = solve_coefficient_block(2, 4, 5, 7).unwrap();
        assert_eq!(block.split.pivot_rows, 1);
        assert_eq!(block.split.coeff_cols, 1);
        assert_eq!(block.entries.enc_data(), &[6]);

        // i=6: C(3,1)^2 = 9 = 2 mod 7
        let block = solve_coefficient_block(2, 4, 6, 7).unwrap();
        assert_eq!(block.entries.enc_data(), &[2]);

        // s=3, t=6, p=13, i=8: residual vanishes (checked inside), shape 2x1
        let block = solve_coefficient_block(3, 6, 8, 13).unwrap();
        assert_eq!(block.split.pivot_rows, 2);
        assert_eq!(block.split.coeff_cols, 1);

        assert!(solve_coefficient_block(2, 4, 4, 7).is_err()); // i below range
        assert!(solve_coefficient_block(2, 4, 7, 7).is_err()); // i above range
        assert!(solve_coefficient_block(2, 3, 5, 7).is_err()); // t < 2s
    }

    #[test]
    fn invertibility_examples() {
        let chk = coefficient_block_invertibility(2, 4, 5, 7).unwrap();
        assert_eq!(chk.case, BlockCase::LeadingPrincipal);
        assert!(chk.observed_invertible);
        let chk = coefficient_block_invertibility(2, 4, 6, 7).unwrap();
        assert_eq!(chk.case, BlockCase::TrailingColumns);
        assert!(chk.observed_invertible);
    }

    #[test]
    fn invertibility_mini_sweep() {
        for s in 2..=4i64 {
            for t in (2 * s)..=(3 * s) {
                let p = first_prime_at_least(2 * s as u64).max(first_prime_at_least(t as u64));
                for i in (2 * t - 2 * s + 1)..=(2 * t - 2) {
                    let chk = coefficient_block_invertibility(s, t, i, p).unwrap();
                    assert!(chk.predicted_invertible);
                    assert!(chk.observed_invertible, "s={s} t={t} i={i} p={p}");
                }
            }
        }
    }

    #[test]
    fn invertibility_needs_p_at_least_t() {
        // concrete boundary case: C(4,1) C(5,1) = 20 vanishes mod 5
        let chk = coefficient_block_invertibility(2, 6, 9, 5).unwrap();
        assert!(!chk.predicted_invertible);
        assert!(!chk.observed_invertible);
        // the same block over a characteristic >= t is invertible
        let chk = coefficient_block_invertibility(2, 6, 9, 7).unwrap();
        assert!(chk.predicted_invertible);
        assert!(chk.observed_invertible);
    }

    fn first_prime_at_least(n: u64) -> u64 {
        (n..).find(|&v| crate::gf::is_prime(v)).unwrap()
    }

    #[test]
    fn structured_generator_row_count_and_rank() {
        let f7 = Field::prime(7).unwrap();
        let spec = CodeSpec::canonical(&f7, 5, 2, 4).unwrap();
        let sgen = structured_square_generator(&spec).unwrap();
        assert_eq!((sgen.rows(), sgen.cols()), (10, 10));
        assert_eq!(sgen.rank(), 10);
    }

    fn assert_same_row_space(a: &MatrixGF, b: &MatrixGF) {
        let ra = a.rank();
        let rb = b.rank();
        let stacked = a.stack(b).unwrap().rank();
        assert_eq!(ra, rb);
        assert_eq!(ra, stacked);
    }

    #[test]
    fn structured_generator_spans_the_square() {
        for (p, r, s, t) in [(7u64, 5usize, 2usize, 4usize), (11, 9, 2, 5), (13, 7, 2, 5), (13, 9, 3, 6)] {
            let field = Field::prime(p).unwrap();
            let spec = CodeSpec::canonical(&field, r, s, t).unwrap();
            let sgen = structured_square_generator(&spec).unwrap();
            let products = square_basis(&spec.generator_matrix().unwrap());
            assert_same_row_space(&sgen, &products);
        }
    }

    #[test]
    fn structured_generator_respects_the_multiplier() {
        let field = Field::prime(11).unwrap();
        let mut rng = crate::rng::Rng::new(4);
        let v: Vec<u64> = (0..18).map(|_| 1 + rng.below(10)).collect();
        let spec = CodeSpec::canonical(&field, 9, 2, 5)
            .unwrap()
            .with_multiplier(v)
            .unwrap();
        let sgen = structured_square_generator(&spec).unwrap();
        let products = square_basis(&spec.generator_matrix().unwrap());
        assert_same_row_space(&sgen, &products);
    }

    #[test]
    fn structured_generator_checks_preconditions() {
        let f7 = Field::prime(7).unwrap();
        // t < 2s
        let spec = CodeSpec::canonical(&f7, 5, 2, 3).unwrap();
        assert!(structured_square_generator(&spec).is_err());
        // r < 2t-2s+1
        let spec = CodeSpec::canonical(&f7, 4, 2, 4).unwrap();
        assert!(structured_square_generator(&spec).is_err());
        // p < 2s
        let spec = CodeSpec::canonical(&f7, 7, 4, 8).unwrap();
        assert!(structured_square_generator(&spec).is_err());
    }

    #[test]
    fn det_check_grid_sizes() {
        assert!(plain_det_grid().len() > 3000);
        assert!(replaced_det_grid().len() > 8000);
    }
}
