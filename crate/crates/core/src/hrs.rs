//! Hyperderivative Reed-Solomon codes.
//!
//! `HRS_t(alpha, V, s)` is the image of polynomials of degree < t under the
//! evaluation map sending f to the s x r matrix whose entry (i, j) is
//! `v_{i,j} * D_i f(alpha_j)` (0-based i, hyperderivatives down the rows).
//! Codeword matrices flatten row-major (left to right, top to bottom) into
//! vectors of length r*s; `s = 1` degenerates to a classical GRS code.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::matrix::MatrixGF;
use crate::poly::Polynomial;
use crate::rng::Rng;

/// Parameters of one HRS code: field, evaluation points, number of
/// hyperderivative rows s, dimension t, and an optional multiplier matrix
/// (absent means all ones).
#[derive(Clone, Debug)]
pub struct CodeSpec {
    field: Field,
    alpha: Vec<u64>,
    s: usize,
    t: usize,
    multiplier: Option<Vec<u64>>,
}

impl CodeSpec {
    pub fn new(field: &Field, alpha: &[Elem], s: usize, t: usize) -> Result<CodeSpec> {
        let encs = alpha
            .iter()
            .map(|a| {
                if a.field() == field {
                    Ok(a.enc())
                } else {
                    Err(Error::FieldMismatch)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        CodeSpec::from_encs(field, encs, s, t, None)
    }

    pub fn from_encs(
        field: &Field,
        alpha: Vec<u64>,
        s: usize,
        t: usize,
        multiplier: Option<Vec<u64>>,
    ) -> Result<CodeSpec> {
        let r = alpha.len();
        let q = field.order();
        if r == 0 || r as u64 > q {
            return Err(Error::ParamRange(format!(
                "need 1 <= r <= q, got r = {} with q = {}",
                r, q
            )));
        }
        if alpha.iter().any(|&a| a >= q) {
            return Err(Error::ParamRange("evaluation point encoding out of range".into()));
        }
        let mut seen = alpha.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::RepeatedPoints);
        }
        if s < 1 || s as u64 > field.characteristic() {
            return Err(Error::ParamRange(format!(
                "need 1 <= s <= p, got s = {} with p = {}",
                s,
                field.characteristic()
            )));
        }
        if t < 1 || t > r * s {
            return Err(Error::ParamRange(format!(
                "need 1 <= t <= r*s, got t = {} with r*s = {}",
                t,
                r * s
            )));
        }
        if let Some(v) = &multiplier {
            if v.len() != s * r {
                return Err(Error::ShapeMismatch(format!(
                    "multiplier has {} entries, expected s*r = {}",
                    v.len(),
                    s * r
                )));
            }
            if v.iter().any(|&e| e == 0 || e >= q) {
                return Err(Error::ZeroMultiplier);
            }
        }
        Ok(CodeSpec {
            field: field.clone(),
            alpha,
            s,
            t,
            multiplier,
        })
    }

    /// Canonical evaluation points: the first r field elements in encoding
    /// order. Seedless and reproducible.
    pub fn canonical(field: &Field, r: usize, s: usize, t: usize) -> Result<CodeSpec> {
        let alpha = (0..r as u64).collect();
        CodeSpec::from_encs(field, alpha, s, t, None)
    }

    /// r distinct evaluation points drawn with the crate PRNG (see [`crate::rng`]).
    pub fn seeded(field: &Field, r: usize, s: usize, t: usize, seed: u64) -> Result<CodeSpec> {
        let q = field.order();
        if r as u64 > q {
            return Err(Error::ParamRange(format!(
                "need r <= q, got r = {} with q = {}",
                r, q
            )));
        }
        let mut rng = Rng::new(seed);
        let mut taken = std::collections::HashSet::with_capacity(r);
        let mut alpha = Vec::with_capacity(r);
        while alpha.len() < r {
            let candidate = rng.below(q);
            if taken.insert(candidate) {
                alpha.push(candidate);
            }
        }
        CodeSpec::from_encs(field, alpha, s, t, None)
    }

    pub fn with_multiplier(mut self, multiplier: Vec<u64>) -> Result<CodeSpec> {
        CodeSpec::from_encs(&self.field.clone(), std::mem::take(&mut self.alpha), self.s, self.t, Some(multiplier))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn alpha(&self) -> &[u64] {
        &self.alpha
    }

    pub fn r(&self) -> usize {
        self.alpha.len()
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Code length n = r*s.
    pub fn len(&self) -> usize {
        self.alpha.len() * self.s
    }

    pub fn multiplier(&self) -> Option<&[u64]> {
        self.multiplier.as_deref()
    }

    fn multiplier_at(&self, i: usize, j: usize) -> u64 {
        match &self.multiplier {
            Some(v) => v[i * self.r() + j],
            None => 1,
        }
    }

    /// Encode a message polynomial (degree <= t-1) into its s x r codeword.
    pub fn encode(&self, f: &Polynomial) -> Result<MatrixGF> {
        if f.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if !f.degree().at_most(self.t - 1) {
            let deg = match f.degree() {
                crate::poly::Degree::Finite(d) => d,
                crate::poly::Degree::NegativeInfinity => unreachable!(),
            };
            return Err(Error::DegreeTooLarge {
                deg,
                bound: self.t - 1,
            });
        }
        let field = &self.field;
        let r = self.r();
        let mut out = MatrixGF::zero(field, self.s, r);
        for i in 0..self.s {
            let deriv = f.hyperderivative(i as u64);
            for (j, &a) in self.alpha.iter().enumerate() {
                let val = field.enc_mul(self.multiplier_at(i, j), deriv.eval_enc(a));
                out.set_enc(i, j, val);
            }
        }
        Ok(out)
    }

    /// Generator matrix: row j is the flattened codeword of x^j. Errors when
    /// the rows are dependent (degenerate parameters).
    pub fn generator_matrix(&self) -> Result<MatrixGF> {
        let n = self.len();
        let mut data = Vec::with_capacity(self.t * n);
        for j in 0..self.t {
            let cw = self.encode(&Polynomial::monomial(&self.field, j))?;
            data.extend_from_slice(cw.enc_data());
        }
        let g = MatrixGF::from_encs(&self.field, self.t, n, data)?;
        let rank = g.rank();
        if rank < self.t {
            return Err(Error::DegenerateSpec { rank, t: self.t });
        }
        Ok(g)
    }
}

/// Row-major flattening of a codeword matrix: block i holds the i-th
/// hyperderivative at all r points.
pub fn flatten(cw: &MatrixGF) -> MatrixGF {
    cw.flattened()
}

/// The (i+1) x r matrix of powers alpha^0 .. alpha^i columnwise.
pub fn vandermonde_matrix(field: &Field, alpha: &[u64], i: usize) -> MatrixGF {
    let r = alpha.len();
    let mut m = MatrixGF::zero(field, i + 1, r);
    for (j, &a) in alpha.iter().enumerate() {
        let mut acc = 1 % field.order();
        for row in 0..=i {
            m.set_enc(row, j, acc);
            acc = field.enc_mul(acc, a);
        }
    }
    m
}

/// Product formula for the Vandermonde determinant of distinct points.
pub fn vandermonde_det(field: &Field, alpha: &[u64]) -> Elem {
    let mut acc = 1 % field.order();
    for t in 0..alpha.len() {
        for s in 0..t {
            acc = field.enc_mul(acc, field.enc_sub(alpha[t], alpha[s]));
        }
    }
    field.from_enc(acc).expect("encoding in range")
}

// ---------------------------------------------------------------------------
// matrix file format
// ---------------------------------------------------------------------------

/// A generator matrix together with the parameters that produced it, as
/// stored in the versioned text format:
///
/// ```text
/// HRSGF v1 p m r s t
/// <m+1 modulus coefficients, constant-first>
/// <r evaluation-point encodings>
/// <t lines of r*s entry encodings>
/// ```
#[derive(Debug, Clone)]
pub struct MatrixFile {
    pub field: Field,
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub alpha: Vec<u64>,
    pub generator: MatrixGF,
}

impl MatrixFile {
    pub fn from_spec(spec: &CodeSpec) -> Result<MatrixFile> {
        Ok(MatrixFile {
            field: spec.field().clone(),
            r: spec.r(),
            s: spec.s(),
            t: spec.t(),
            alpha: spec.alpha().to_vec(),
            generator: spec.generator_matrix()?,
        })
    }

    pub fn write_to(&self, w: &mut impl Write) -> Result<()> {
        writeln!(
            w,
            "HRSGF v1 {} {} {} {} {}",
            self.field.characteristic(),
            self.field.extension_degree(),
            self.r,
            self.s,
            self.t
        )?;
        writeln!(w, "{}", join(self.field.modulus()))?;
        writeln!(w, "{}", join(&self.alpha))?;
        for row in 0..self.t {
            writeln!(w, "{}", join(self.generator.row_encs(row)))?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = Vec::new();
        self.write_to(&mut out).expect("writing to a Vec cannot fail");
        String::from_utf8(out).expect("output is ASCII")
    }

    pub fn read_from(r: &mut impl BufRead) -> Result<MatrixFile> {
        let mut lines = r.lines();
        let mut next_line = |what: &str| -> Result<String> {
            lines
                .next()
                .ok_or_else(|| Error::MatrixFile(format!("missing {}", what)))?
                .map_err(Error::Io)
        };
        let header = next_line("header")?;
        let tokens: Vec<&str> = header.split_whitespace().collect();
        if tokens.len() != 7 || tokens[0] != "HRSGF" || tokens[1] != "v1" {
            return Err(Error::MatrixFile("expected header 'HRSGF v1 p m r s t'".into()));
        }
        let parse = |tok: &str, what: &str| -> Result<u64> {
            tok.parse::<u64>()
                .map_err(|_| Error::MatrixFile(format!("bad {}: {:?}", what, tok)))
        };
        let p = parse(tokens[2], "p")?;
        let m = parse(tokens[3], "m")? as u32;
        let r_len = parse(tokens[4], "r")? as usize;
        let s = parse(tokens[5], "s")? as usize;
        let t = parse(tokens[6], "t")? as usize;

        let modulus = parse_ints(&next_line("modulus line")?)?;
        let field = Field::new(p, m, Some(&modulus))?;

        let alpha = parse_ints(&next_line("evaluation-point line")?)?;
        if alpha.len() != r_len {
            return Err(Error::MatrixFile(format!(
                "expected {} evaluation points, found {}",
                r_len,
                alpha.len()
            )));
        }
        let n = r_len * s;
        let mut data = Vec::with_capacity(t * n);
        for i in 0..t {
            let row = parse_ints(&next_line(&format!("generator row {}", i))?)?;
            if row.len() != n {
                return Err(Error::MatrixFile(format!(
                    "generator row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    n
                )));
            }
            data.extend_from_slice(&row);
        }
        let generator = MatrixGF::from_encs(&field, t, n, data)
            .map_err(|e| Error::MatrixFile(e.to_string()))?;
        // validate the evaluation points like CodeSpec does
        CodeSpec::from_encs(&field, alpha.clone(), s, t, None)
            .map_err(|e| Error::MatrixFile(e.to_string()))?;
        Ok(MatrixFile {
            field,
            r: r_len,
            s,
            t,
            alpha,
            generator,
        })
    }
}

fn join(values: &[u64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_ints(line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>()
                .map_err(|_| Error::MatrixFile(format!("bad integer {:?}", tok)))
        })
        .collect()
}
