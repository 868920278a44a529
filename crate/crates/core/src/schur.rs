//! Schur (coordinatewise) products, square bases, exact square dimensions,
//! and the structured-vs-random distinguisher.
//!
//! The Schur square of a code C is the span of all pairwise coordinatewise
//! products of codewords. Given a k-row generator matrix, the k(k+1)/2
//! products g_i * g_j with i <= j generate the square, so its dimension is
//! the rank of that product stack. Random [n, k] codes reach
//! min(n, k(k+1)/2) with high probability; codes that fall short are
//! distinguishable from random ones.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::hrs::CodeSpec;
use crate::matrix::MatrixGF;
use crate::rng::Rng;

/// Coordinatewise product of two equal-shape matrices (or row vectors).
pub fn schur_product(a: &MatrixGF, b: &MatrixGF) -> Result<MatrixGF> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::ShapeMismatch(format!(
            "schur product of {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let f = a.field();
    let data = a
        .enc_data()
        .iter()
        .zip(b.enc_data())
        .map(|(&x, &y)| f.enc_mul(x, y))
        .collect();
    MatrixGF::from_encs(f, a.rows(), a.cols(), data)
}

/// All pairwise products of the rows of `g`, in lexicographic (i, j) order
/// with i <= j: (1,1), (1,2), ..., (1,k), (2,2), ..., (k,k).
pub fn square_basis(g: &MatrixGF) -> MatrixGF {
    let f = g.field();
    let k = g.rows();
    let n = g.cols();
    let mut data = Vec::with_capacity(k * (k + 1) / 2 * n);
    for i in 0..k {
        let ri = g.row_encs(i);
        for j in i..k {
            let rj = g.row_encs(j);
            data.extend(ri.iter().zip(rj).map(|(&x, &y)| f.enc_mul(x, y)));
        }
    }
    MatrixGF::from_encs(f, k * (k + 1) / 2, n, data).expect("shape by construction")
}

/// Exact rank over GF(p^m).
pub fn rank(m: &MatrixGF) -> usize {
    m.rank()
}

/// Square dimension of a generator matrix together with the quantities the
/// distinguisher compares it against.
#[derive(Debug, Clone, Serialize)]
pub struct SquareReport {
    /// Code length.
    pub n: usize,
    /// Code dimension.
    pub k: usize,
    /// Dimension of the Schur square.
    pub dim_hat: usize,
    /// Number of pairwise products formed, k(k+1)/2.
    pub generator_count: usize,
    /// Expected square dimension of a random [n, k] code.
    pub random_expectation: usize,
}

fn report_for(g: &MatrixGF) -> SquareReport {
    let n = g.cols();
    let k = g.rows();
    let products = square_basis(g);
    let dim_hat = products.rank();
    let report = SquareReport {
        n,
        k,
        dim_hat,
        generator_count: k * (k + 1) / 2,
        random_expectation: n.min(k * (k + 1) / 2),
    };
    debug_assert!(report.dim_hat <= report.random_expectation);
    report
}

/// Schur-square dimension of an HRS code.
pub fn schur_square_dim(spec: &CodeSpec) -> Result<SquareReport> {
    let g = spec.generator_matrix()?;
    let report = report_for(&g);
    debug_assert!(report.k <= report.dim_hat);
    Ok(report)
}

/// Fraction of uniformly drawn full-rank k x n matrices whose square
/// dimension reaches min(n, k(k+1)/2). Rank-deficient draws are resampled,
/// not counted. Deterministic for a given seed.
pub fn random_square_baseline(
    field: &Field,
    n: usize,
    k: usize,
    trials: u32,
    seed: u64,
) -> Result<BaselineReport> {
    if trials < 1 {
        return Err(Error::ParamRange("trials must be >= 1".into()));
    }
    if k > n {
        return Err(Error::ParamRange(format!("need k <= n, got k = {k}, n = {n}")));
    }
    let mut rng = Rng::new(seed);
    let expected = n.min(k * (k + 1) / 2);
    let mut hits = 0u32;
    for _ in 0..trials {
        let g = MatrixGF::random_full_rank(field, k, n, &mut rng);
        if report_for(&g).dim_hat == expected {
            hits += 1;
        }
    }
    Ok(BaselineReport {
        n,
        k,
        q: field.order(),
        trials,
        hits,
        expected_dim: expected,
        fraction: hits as f64 / trials as f64,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BaselineReport {
    pub n: usize,
    pub k: usize,
    pub q: u64,
    pub trials: u32,
    pub hits: u32,
    pub expected_dim: usize,
    pub fraction: f64,
}

/// Distinguisher verdict for a generator matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CodeClass {
    #[serde(rename = "structured")]
    Structured,
    #[serde(rename = "random-like")]
    RandomLike,
}

impl std::fmt::Display for CodeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CodeClass::Structured => write!(f, "structured"),
            CodeClass::RandomLike => write!(f, "random-like"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub n: usize,
    pub k: usize,
    pub dim_hat: usize,
    pub random_expectation: usize,
    pub flag: CodeClass,
}

/// Flag a full-rank generator matrix as structured when its square dimension
/// falls below the random expectation min(n, k(k+1)/2). Invariant under
/// invertible row operations on `g`.
pub fn distinguish(g: &MatrixGF) -> Result<Verdict> {
    if g.rank() < g.rows() {
        return Err(Error::RankDeficient);
    }
    let report = report_for(g);
    let flag = if report.dim_hat < report.random_expectation {
        CodeClass::Structured
    } else {
        CodeClass::RandomLike
    };
    Ok(Verdict {
        n: report.n,
        k: report.k,
        dim_hat: report.dim_hat,
        random_expectation: report.random_expectation,
        flag,
    })
}

impl MatrixGF {
    /// Uniform draw conditioned on full row rank.
    pub fn random_full_rank(field: &Field, rows: usize, cols: usize, rng: &mut Rng) -> MatrixGF {
        loop {
            let m = MatrixGF::random(field, rows, cols, rng);
            if m.rank() == rows {
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
    fn schur_product_examples() {
        let f = gf(7);
        let a = MatrixGF::from_encs(&f, 1, 3, vec![1, 2, 3]).unwrap();
        let ones = MatrixGF::from_encs(&f, 1, 3, vec![1, 1, 1]).unwrap();
        assert_eq!(schur_product(&a, &ones).unwrap().enc_data(), &[1, 2, 3]);

        let x = MatrixGF::from_encs(&f, 1, 2, vec![2, 3]).unwrap();
        let y = MatrixGF::from_encs(&f, 1, 2, vec![4, 5]).unwrap();
        assert_eq!(schur_product(&x, &y).unwrap().enc_data(), &[1, 1]);

        let zero = MatrixGF::zero(&f, 1, 2);
        assert_eq!(schur_product(&x, &zero).unwrap().enc_data(), &[0, 0]);

        let wrong_shape = MatrixGF::zero(&f, 1, 3);
        assert!(schur_product(&x, &wrong_shape).is_err());
        let f11 = gf(11);
        let other = MatrixGF::zero(&f11, 1, 2);
        assert!(matches!(schur_product(&x, &other), Err(Error::FieldMismatch)));
    }

    #[test]
    fn square_basis_ordering() {
        let f = gf(7);
        let g1 = MatrixGF::from_encs(&f, 1, 2, vec![2, 3]).unwrap();
        let b1 = square_basis(&g1);
        assert_eq!((b1.rows(), b1.cols()), (1, 2));
        assert_eq!(b1.row_encs(0), &[4, 2]);

        let id2 = MatrixGF::identity(&f, 2);
        let b2 = square_basis(&id2);
        assert_eq!(b2.rows(), 3);
        assert_eq!(b2.row_encs(0), &[1, 0]);
        assert_eq!(b2.row_encs(1), &[0, 0]);
        assert_eq!(b2.row_encs(2), &[0, 1]);

        let g3 = MatrixGF::from_encs(&f, 3, 2, vec![1, 0, 0, 1, 1, 1]).unwrap();
        assert_eq!(square_basis(&g3).rows(), 6);
    }

    #[test]
    fn grs_square_dimension_follows_the_min_law() {
        // s = 1: dim of the square is min(2t-1, r)
        let f = Field::new(13, 1, None).unwrap();
        let spec = CodeSpec::canonical(&f, 10, 1, 3).unwrap();
        let report = schur_square_dim(&spec).unwrap();
        assert_eq!(report.dim_hat, 5);
        assert_eq!(report.n, 10);
        assert_eq!(report.generator_count, 6);
    }

    #[test]
    fn hrs_example_reaches_the_random_expectation() {
        // (p, m, r, s, t) = (7, 1, 5, 2, 4): square dimension 10 = t(t+1)/2
        let f = gf(7);
        let spec = CodeSpec::canonical(&f, 5, 2, 4).unwrap();
        let report = schur_square_dim(&spec).unwrap();
        assert_eq!(report.dim_hat, 10);
        assert_eq!(report.random_expectation, 10);
    }

    #[test]
    fn report_bounds_hold() {
        let f = gf(11);
        for (r, s, t) in [(5, 2, 4), (9, 2, 5), (6, 1, 4), (11, 1, 11)] {
            let spec = CodeSpec::canonical(&f, r, s, t).unwrap();
            let rep = schur_square_dim(&spec).unwrap();
            assert!(rep.k <= rep.dim_hat);
            assert!(rep.dim_hat <= rep.n.min(rep.generator_count));
        }
    }

    #[test]
    fn dimension_is_invariant_under_basis_change() {
        let f = gf(11);
        let spec = CodeSpec::canonical(&f, 9, 2, 5).unwrap();
        let g = spec.generator_matrix().unwrap();
        let base = square_basis(&g).rank();
        let mut rng = Rng::new(31);
        for _ in 0..10 {
            let a = MatrixGF::random_invertible(&f, g.rows(), &mut rng);
            let scrambled = a.matmul(&g).unwrap();
            assert_eq!(square_basis(&scrambled).rank(), base);
        }
    }

    #[test]
    fn dimension_is_invariant_under_column_scaling() {
        // covers the multiplier matrix: scaling coordinates by nonzero
        // constants leaves the square dimension unchanged
        let f = gf(11);
        let plain = CodeSpec::canonical(&f, 7, 2, 4).unwrap();
        let base = schur_square_dim(&plain).unwrap().dim_hat;
        let mut rng = Rng::new(8);
        for _ in 0..5 {
            let v: Vec<u64> = (0..14).map(|_| 1 + rng.below(10)).collect();
            let scaled = CodeSpec::canonical(&f, 7, 2, 4)
                .unwrap()
                .with_multiplier(v)
                .unwrap();
            assert_eq!(schur_square_dim(&scaled).unwrap().dim_hat, base);
        }
    }

    #[test]
    fn baseline_edge_cases() {
        let f = Field::new(31, 1, None).unwrap();
        // k = 1 always hits min(n, 1) = 1
        let rep = random_square_baseline(&f, 6, 1, 50, 1).unwrap();
        assert_eq!(rep.fraction, 1.0);
        assert_eq!(rep.expected_dim, 1);
        // deterministic per seed
        let a = random_square_baseline(&f, 12, 3, 40, 7).unwrap();
        let b = random_square_baseline(&f, 12, 3, 40, 7).unwrap();
        assert_eq!(a.hits, b.hits);
        assert!(random_square_baseline(&f, 3, 4, 10, 1).is_err());
        assert!(random_square_baseline(&f, 3, 2, 0, 1).is_err());
    }

    #[test]
    fn small_dense_baseline_hits_often() {
        // n = 3, k = 3 over GF(16): expectation min(3, 6) = 3
        let f = Field::new(2, 4, None).unwrap();
        let rep = random_square_baseline(&f, 3, 3, 200, 5).unwrap();
        assert_eq!(rep.expected_dim, 3);
        assert!(rep.fraction > 0.8, "fraction {}", rep.fraction);
    }

    #[test]
    fn distinguisher_flags_grs_and_passes_hrs() {
        let f = Field::new(23, 1, None).unwrap();
        let grs = CodeSpec::canonical(&f, 20, 1, 6).unwrap();
        let verdict = distinguish(&grs.generator_matrix().unwrap()).unwrap();
        assert_eq!(verdict.dim_hat, 11);
        assert_eq!(verdict.flag, CodeClass::Structured);

        let f7 = gf(7);
        let hrs = CodeSpec::canonical(&f7, 5, 2, 4).unwrap();
        let g = hrs.generator_matrix().unwrap();
        let verdict = distinguish(&g).unwrap();
        assert_eq!(verdict.flag, CodeClass::RandomLike);

        // row scrambling does not change the verdict
        let mut rng = Rng::new(13);
        let a = MatrixGF::random_invertible(&f7, g.rows(), &mut rng);
        let scrambled = a.matmul(&g).unwrap();
        assert_eq!(distinguish(&scrambled).unwrap().flag, CodeClass::RandomLike);

        let deficient = MatrixGF::zero(&f7, 2, 4);
        assert!(matches!(distinguish(&deficient), Err(Error::RankDeficient)));
    }
}
