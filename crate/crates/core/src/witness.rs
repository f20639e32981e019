//! Explicit witness matrices (E, C, R, J, padded identity, Sylvester
//! Hadamard) and the closed-form quotient checks built on them.
//!
//! Witnesses are generated in integer arithmetic and converted to scalars at
//! the norm boundary, so the equality claims below are exact.

use crate::error::{Error, Result};
use crate::exponent::{rational_pow, ratio_abs, Exponent, ExponentTriple};
use crate::matnorm::{pq_norm_exact, DEFAULT_ENUMERATION_CAP};
use crate::matrix::Matrix;
use crate::IntMatrix;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum WitnessKind {
    /// Single 1 in the (1,1) entry.
    E { rows: usize, cols: usize },
    /// First column all ones.
    C { rows: usize, cols: usize },
    /// First row all ones.
    R { rows: usize, cols: usize },
    /// All ones.
    J { rows: usize, cols: usize },
    /// Identity padded with zero rows or columns.
    IPad { rows: usize, cols: usize },
    /// Sylvester Hadamard matrix, n a power of two.
    Hadamard { n: usize },
}

pub fn make_witness(kind: WitnessKind) -> Result<IntMatrix> {
    match kind {
        WitnessKind::E { rows, cols } => {
            let mut m = Matrix::zeros(rows, cols);
            m.set(0, 0, 1);
            Ok(m)
        }
        WitnessKind::C { rows, cols } => {
            let mut m = Matrix::zeros(rows, cols);
            for i in 0..rows {
                m.set(i, 0, 1);
            }
            Ok(m)
        }
        WitnessKind::R { rows, cols } => {
            let mut m = Matrix::zeros(rows, cols);
            for j in 0..cols {
                m.set(0, j, 1);
            }
            Ok(m)
        }
        WitnessKind::J { rows, cols } => Matrix::new(rows, cols, vec![1; rows * cols]),
        WitnessKind::IPad { rows, cols } => Ok(Matrix::identity_padded(rows, cols)),
        WitnessKind::Hadamard { n } => hadamard(n),
    }
}

/// Sylvester Hadamard matrix: the k-fold Kronecker power of the 2x2 block
/// `[1 1; 1 -1]`, n = 2^k.
pub fn hadamard(n: usize) -> Result<IntMatrix> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::HadamardSize(n));
    }
    let mut h = Matrix::new(1, 1, vec![1])?;
    let block = Matrix::from_rows(&[vec![1i64, 1], vec![1, -1]])?;
    let mut size = 1;
    while size < n {
        h = h.kron(&block);
        size *= 2;
    }
    Ok(h)
}

/// ||I_{m,n}||_{p,q} = min(m,n)^{1/q - 1/p} if p >= q, else 1.
pub fn identity_pq_norm(m: usize, n: usize, p: Exponent, q: Exponent) -> f64 {
    if p >= q {
        rational_pow(m.min(n) as f64, q.recip() - p.recip())
    } else {
        1.0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SharpnessReport {
    pub dims: (usize, usize, usize),
    pub triple: ExponentTriple,
    /// Quotient of the prescribed witnesses at (p,q,r).
    pub lhs: f64,
    /// Same quotient at (1,2,inf) times the dimension factor.
    pub rhs: f64,
    pub rel_err: f64,
    pub equal: bool,
    /// Which witness family was used ("q<=2" or "q>2").
    pub branch: &'static str,
}

const SHARPNESS_TOL: f64 = 1e-10;

/// Evaluate both sides of the sharp Hölder comparison on the prescribed
/// witnesses: (E_{l,m}, R_{n,l}, J_{m,n}) for q <= 2, (C_{l,m}, E_{n,l},
/// J_{m,n}) for q > 2, using exact norms throughout.
pub fn sharpness_check(l: usize, m: usize, n: usize, e: ExponentTriple) -> Result<SharpnessReport> {
    let q_small = e.q <= Exponent::TWO;
    let (x, y, branch) = if q_small {
        (
            make_witness(WitnessKind::E { rows: l, cols: m })?,
            make_witness(WitnessKind::R { rows: n, cols: l })?,
            "q<=2",
        )
    } else {
        (
            make_witness(WitnessKind::C { rows: l, cols: m })?,
            make_witness(WitnessKind::E { rows: n, cols: l })?,
            "q>2",
        )
    };
    let mw = make_witness(WitnessKind::J { rows: m, cols: n })?;

    let tr = x.matmul(&mw)?.matmul(&y)?.trace() as f64;
    let xf = x.to_entry::<f64>();
    let yf = y.to_entry::<f64>();
    let mf = mw.to_entry::<f64>();

    let norm = |a: &Matrix<f64>, p: Exponent, q: Exponent| -> Result<f64> {
        pq_norm_exact(a, p, q, DEFAULT_ENUMERATION_CAP)
            .map(|r| r.value)
            .map_err(|err| Error::Mode(format!("sharpness needs exact norms: {err}")))
    };

    let lhs = tr.abs() / (norm(&xf, e.p, e.q)? * norm(&yf, e.q, e.r)? * norm(&mf, e.r, e.p)?);
    let one = Exponent::ONE;
    let two = Exponent::TWO;
    let inf = Exponent::INF;
    let base = tr.abs() / (norm(&xf, one, two)? * norm(&yf, two, inf)? * norm(&mf, inf, one)?);
    let factor = rational_pow(l as f64, ratio_abs(e.q.recip() - Ratio::new(1, 2)))
        * rational_pow(m as f64, Ratio::new(1, 1) - e.p.recip())
        * rational_pow(n as f64, e.r.recip());
    let rhs = base * factor;
    let rel_err = (lhs - rhs).abs() / rhs.abs().max(f64::MIN_POSITIVE);
    Ok(SharpnessReport {
        dims: (l, m, n),
        triple: e,
        lhs,
        rhs,
        rel_err,
        equal: rel_err <= SHARPNESS_TOL,
        branch,
    })
}

/// Closed form of the identity-triple quotient, the six-branch display keyed
/// by the exact ordering of (p,q,r).
pub fn identity_quotient_closed_form(
    l: usize,
    m: usize,
    n: usize,
    e: ExponentTriple,
) -> f64 {
    let (p, q, r) = (e.p, e.q, e.r);
    let lmn = l.min(m).min(n) as f64;
    let mn = m.min(n) as f64;
    let ln = l.min(n) as f64;
    let lm = l.min(m) as f64;
    let rp = r.recip() - p.recip();
    let qr = q.recip() - r.recip();
    let pq = p.recip() - q.recip();
    if p <= q && q <= r {
        lmn * rational_pow(mn, rp)
    } else if p <= r && r <= q {
        lmn * rational_pow(ln, qr) * rational_pow(mn, rp)
    } else if q <= p && p <= r {
        lmn * rational_pow(lm, pq) * rational_pow(mn, rp)
    } else if q <= r && r <= p {
        lmn * rational_pow(lm, pq)
    } else if r <= p && p <= q {
        lmn * rational_pow(ln, qr)
    } else {
        lmn * rational_pow(lm, pq) * rational_pow(ln, qr)
    }
}

/// The same quotient evaluated directly: build the padded-identity triple,
/// take the trace of the product and divide by exact operator norms.
pub fn identity_quotient_direct(
    l: usize,
    m: usize,
    n: usize,
    e: ExponentTriple,
) -> Result<f64> {
    let x = Matrix::<f64>::identity_padded(l, m);
    let mm = Matrix::<f64>::identity_padded(m, n);
    let y = Matrix::<f64>::identity_padded(n, l);
    let tr = x.matmul(&mm)?.matmul(&y)?.trace();
    let nx = pq_norm_exact(&x, e.p, e.q, DEFAULT_ENUMERATION_CAP)?.value;
    let ny = pq_norm_exact(&y, e.q, e.r, DEFAULT_ENUMERATION_CAP)?.value;
    let nm = pq_norm_exact(&mm, e.r, e.p, DEFAULT_ENUMERATION_CAP)?.value;
    Ok(tr.abs() / (nx * ny * nm))
}

impl IntMatrix {
    /// Convert an integer matrix into scalar entries at the norm boundary.
    pub fn to_entry<T: crate::scalar::Entry>(&self) -> Matrix<T> {
        self.map(|v| {
            T::from_real(
                <T::Real as num_traits::NumCast>::from(v).expect("small integer fits"),
            )
        })
    }
}
