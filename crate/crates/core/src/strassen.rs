//! Fast matrix multiplication: the 7-multiplication 2x2 scheme, recursive
//! block multiplication with multiplication counting, the mu_{l,m,n}
//! hypermatrix, rank-decomposition verification and exponent upper bounds.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Sub};

/// Ring-ish entry bound shared by the multiplication routines; satisfied by
/// both integers (exact checks) and floats.
pub trait RingEntry:
    Copy + Zero + One + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self>
{
}
impl<T> RingEntry for T where
    T: Copy + Zero + One + PartialEq + Add<Output = T> + Sub<Output = T> + Mul<Output = T>
{
}

/// Sparse 3-dimensional hypermatrix with flattened axis lengths `dims`.
#[derive(Clone, Debug, PartialEq)]
pub struct Hypermatrix<T> {
    pub dims: (usize, usize, usize),
    pub entries: Vec<((usize, usize, usize), T)>,
}

/// The matrix multiplication tensor mu_{l,m,n} as a hypermatrix in
/// F^{lm x mn x nl}: a 1 at (vec(i,j), vec(j,k), vec(k,i)) for every i,j,k,
/// with the row-major flattening vec(i,j) = i*cols + j.
pub fn mu_hypermatrix<T: RingEntry>(l: usize, m: usize, n: usize) -> Hypermatrix<T> {
    let mut entries = Vec::with_capacity(l * m * n);
    for i in 0..l {
        for j in 0..m {
            for k in 0..n {
                entries.push(((i * m + j, j * n + k, k * l + i), T::one()));
            }
        }
    }
    Hypermatrix {
        dims: (l * m, m * n, n * l),
        entries,
    }
}

/// Trilinear contraction of a hypermatrix against flattened (X, M, Y).
pub fn contract<T: RingEntry>(
    h: &Hypermatrix<T>,
    x: &Matrix<T>,
    m: &Matrix<T>,
    y: &Matrix<T>,
) -> Result<T> {
    if x.rows() * x.cols() != h.dims.0
        || m.rows() * m.cols() != h.dims.1
        || y.rows() * y.cols() != h.dims.2
    {
        return Err(Error::Dimension(format!(
            "flattened sizes ({},{},{}) do not match hypermatrix dims {:?}",
            x.rows() * x.cols(),
            m.rows() * m.cols(),
            y.rows() * y.cols(),
            h.dims
        )));
    }
    let (xs, ms, ys) = (x.as_slice(), m.as_slice(), y.as_slice());
    let mut acc = T::zero();
    for &((a, b, c), v) in &h.entries {
        acc = acc + v * xs[a] * ms[b] * ys[c];
    }
    Ok(acc)
}

/// One rank-one term lambda * u (x) v (x) w.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RankOneTerm<T> {
    pub weight: T,
    pub u: Vec<T>,
    pub v: Vec<T>,
    pub w: Vec<T>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RankDecomposition<T> {
    pub terms: Vec<RankOneTerm<T>>,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct VerifyReport<T> {
    pub valid: bool,
    pub max_abs_error: T,
}

/// Check that the terms sum to mu_{l,m,n} entrywise within `tol`
/// (use tol = 0 for integer decompositions).
pub fn verify_rank_decomposition<T: RingEntry + Signed + PartialOrd>(
    d: &RankDecomposition<T>,
    l: usize,
    m: usize,
    n: usize,
    tol: T,
) -> Result<VerifyReport<T>> {
    let dims = (l * m, m * n, n * l);
    for (idx, t) in d.terms.iter().enumerate() {
        if t.u.len() != dims.0 || t.v.len() != dims.1 || t.w.len() != dims.2 {
            return Err(Error::Dimension(format!(
                "term {idx}: lengths ({},{},{}) vs required {:?}",
                t.u.len(),
                t.v.len(),
                t.w.len(),
                dims
            )));
        }
    }
    let mut dense = vec![T::zero(); dims.0 * dims.1 * dims.2];
    for t in &d.terms {
        for (a, &ua) in t.u.iter().enumerate() {
            if ua.is_zero() {
                continue;
            }
            for (b, &vb) in t.v.iter().enumerate() {
                if vb.is_zero() {
                    continue;
                }
                let uv = t.weight * ua * vb;
                for (c, &wc) in t.w.iter().enumerate() {
                    let i = (a * dims.1 + b) * dims.2 + c;
                    dense[i] = dense[i] + uv * wc;
                }
            }
        }
    }
    for ((a, b, c), v) in &mu_hypermatrix::<T>(l, m, n).entries {
        let i = (a * dims.1 + b) * dims.2 + c;
        dense[i] = dense[i] - *v;
    }
    let mut max_err = T::zero();
    for v in dense {
        let e = v.abs();
        if e > max_err {
            max_err = e;
        }
    }
    Ok(VerifyReport {
        valid: max_err <= tol,
        max_abs_error: max_err,
    })
}

/// The 7-term rank decomposition of mu_{2,2,2} transcribed from the
/// 7-multiplication scheme in `strassen_2x2`.
pub fn strassen_decomposition() -> RankDecomposition<i64> {
    let term = |u: [i64; 4], v: [i64; 4], w: [i64; 4]| RankOneTerm {
        weight: 1,
        u: u.to_vec(),
        v: v.to_vec(),
        w: w.to_vec(),
    };
    RankDecomposition {
        terms: vec![
            term([1, 0, 0, 0], [1, 0, 0, 0], [1, 1, 1, 1]),
            term([0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0]),
            term([-1, 0, 1, 0], [0, 1, 0, -1], [0, 1, 0, 1]),
            term([0, 0, 1, 1], [-1, 1, 0, 0], [0, 0, 1, 1]),
            term([-1, 0, 1, 1], [1, -1, 0, 1], [0, 1, 1, 1]),
            term([1, 1, -1, -1], [0, 0, 0, 1], [0, 0, 1, 0]),
            term([0, 0, 0, 1], [-1, 1, 1, -1], [0, 1, 0, 0]),
        ],
    }
}

/// 2x2 product with exactly seven multiplications.
pub fn strassen_2x2<T: RingEntry>(a: &Matrix<T>, b: &Matrix<T>) -> Result<(Matrix<T>, u64)> {
    if a.rows() != 2 || a.cols() != 2 || b.rows() != 2 || b.cols() != 2 {
        return Err(Error::Dimension("strassen_2x2 needs 2x2 operands".into()));
    }
    let (a11, a12, a21, a22) = (a.at(0, 0), a.at(0, 1), a.at(1, 0), a.at(1, 1));
    let (b11, b12, b21, b22) = (b.at(0, 0), b.at(0, 1), b.at(1, 0), b.at(1, 1));

    let p1 = a11 * b11;
    let p2 = a12 * b21;
    let p3 = (a21 - a11) * (b12 - b22);
    let p4 = (a21 + a22) * (b12 - b11);
    let p5 = (a21 + a22 - a11) * (b11 + b22 - b12);
    let p6 = (a11 + a12 - a21 - a22) * b22;
    let p7 = a22 * (b21 + b12 - b11 - b22);

    let gamma = p1 + p5;
    let c = Matrix::new(
        2,
        2,
        vec![p1 + p2, p4 + gamma + p6, p3 + gamma + p7, p3 + p4 + gamma],
    )?;
    Ok((c, 7))
}

/// Plain cubic multiplication together with its scalar multiplication count.
pub fn naive_mult<T: RingEntry>(a: &Matrix<T>, b: &Matrix<T>) -> Result<(Matrix<T>, u64)> {
    let c = a.matmul(b)?;
    Ok((c, (a.rows() * a.cols() * b.cols()) as u64))
}

/// Recursive block multiplication: pads to the next power of two, splits into
/// quadrants, runs the seven-product scheme above the cutoff and plain cubic
/// multiplication at or below it. Returns the product and the number of
/// scalar multiplications performed (on the padded operands).
pub fn strassen_recursive<T: RingEntry>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    cutoff: usize,
) -> Result<(Matrix<T>, u64)> {
    if a.cols() != b.rows() {
        return Err(Error::Dimension(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let cutoff = cutoff.max(1);
    let size = a.rows().max(a.cols()).max(b.cols()).next_power_of_two();
    let ap = pad_square(a, size);
    let bp = pad_square(b, size);
    let (cp, count) = mul_rec(&ap, &bp, cutoff);
    let mut c = Matrix::zeros(a.rows(), b.cols());
    for i in 0..c.rows() {
        for j in 0..c.cols() {
            c.set(i, j, cp.at(i, j));
        }
    }
    Ok((c, count))
}

fn pad_square<T: RingEntry>(m: &Matrix<T>, size: usize) -> Matrix<T> {
    if m.rows() == size && m.cols() == size {
        return m.clone();
    }
    let mut out = Matrix::zeros(size, size);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, m.at(i, j));
        }
    }
    out
}

fn quadrant<T: RingEntry>(m: &Matrix<T>, qi: usize, qj: usize) -> Matrix<T> {
    let h = m.rows() / 2;
    let mut out = Matrix::zeros(h, h);
    for i in 0..h {
        for j in 0..h {
            out.set(i, j, m.at(qi * h + i, qj * h + j));
        }
    }
    out
}

fn mul_rec<T: RingEntry>(a: &Matrix<T>, b: &Matrix<T>, cutoff: usize) -> (Matrix<T>, u64) {
    let n = a.rows();
    if n <= cutoff {
        let c = a.matmul(b).expect("square operands");
        return (c, (n * n * n) as u64);
    }
    let (a11, a12, a21, a22) = (
        quadrant(a, 0, 0),
        quadrant(a, 0, 1),
        quadrant(a, 1, 0),
        quadrant(a, 1, 1),
    );
    let (b11, b12, b21, b22) = (
        quadrant(b, 0, 0),
        quadrant(b, 0, 1),
        quadrant(b, 1, 0),
        quadrant(b, 1, 1),
    );
    let add = |x: &Matrix<T>, y: &Matrix<T>| x.add(y).expect("same shape");
    let sub = |x: &Matrix<T>, y: &Matrix<T>| x.sub(y).expect("same shape");

    let (p1, c1) = mul_rec(&a11, &b11, cutoff);
    let (p2, c2) = mul_rec(&a12, &b21, cutoff);
    let (p3, c3) = mul_rec(&sub(&a21, &a11), &sub(&b12, &b22), cutoff);
    let (p4, c4) = mul_rec(&add(&a21, &a22), &sub(&b12, &b11), cutoff);
    let (p5, c5) = mul_rec(&sub(&add(&a21, &a22), &a11), &sub(&add(&b11, &b22), &b12), cutoff);
    let (p6, c6) = mul_rec(&sub(&add(&a11, &a12), &add(&a21, &a22)), &b22, cutoff);
    let (p7, c7) = mul_rec(&a22, &sub(&add(&b21, &b12), &add(&b11, &b22)), cutoff);

    let gamma = add(&p1, &p5);
    let c11 = add(&p1, &p2);
    let c12 = add(&add(&p4, &gamma), &p6);
    let c21 = add(&add(&p3, &gamma), &p7);
    let c22 = add(&add(&p3, &p4), &gamma);

    let h = n / 2;
    let mut c = Matrix::zeros(n, n);
    for i in 0..h {
        for j in 0..h {
            c.set(i, j, c11.at(i, j));
            c.set(i, j + h, c12.at(i, j));
            c.set(i + h, j, c21.at(i, j));
            c.set(i + h, j + h, c22.at(i, j));
        }
    }
    (c, c1 + c2 + c3 + c4 + c5 + c6 + c7)
}

/// log_n(r): the exponent bound implied by an l x l scheme of rank r.
pub fn omega_upper(n: usize, r: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("omega_upper needs n >= 2, got {n}")));
    }
    if r < (n * n) as u64 {
        return Err(Error::Domain(format!(
            "rank {r} below the trivial n^2 = {}",
            n * n
        )));
    }
    Ok((r as f64).ln() / (n as f64).ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeding;
    use rand::Rng;

    #[test]
    fn mu_examples() {
        let mu = mu_hypermatrix::<i64>(1, 1, 1);
        assert_eq!(mu.entries, vec![((0, 0, 0), 1)]);
        let mu = mu_hypermatrix::<i64>(2, 2, 2);
        assert_eq!(mu.dims, (4, 4, 4));
        assert_eq!(mu.entries.len(), 8);
        assert!(mu.entries.iter().all(|&(_, v)| v == 1));
    }

    #[test]
    fn contraction_equals_trace_of_product() {
        let mut rng = seeding::rng_for(31, 0);
        for l in 1..=3usize {
            for m in 1..=3usize {
                for n in 1..=3usize {
                    let mu = mu_hypermatrix::<f64>(l, m, n);
                    for _ in 0..1000 {
                        let rand_mat = |rows: usize, cols: usize, rng: &mut _| {
                            Matrix::new(
                                rows,
                                cols,
                                (0..rows * cols)
                                    .map(|_| rand::Rng::gen_range(rng, -1.0..1.0))
                                    .collect(),
                            )
                            .unwrap()
                        };
                        let x = rand_mat(l, m, &mut rng);
                        let mm = rand_mat(m, n, &mut rng);
                        let y = rand_mat(n, l, &mut rng);
                        let via_mu = contract(&mu, &x, &mm, &y).unwrap();
                        let via_trace = x.matmul(&mm).unwrap().matmul(&y).unwrap().trace();
                        assert!((via_mu - via_trace).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn contract_checks_shapes() {
        let mu = mu_hypermatrix::<f64>(2, 2, 2);
        let x = Matrix::<f64>::identity_padded(2, 2);
        let bad = Matrix::<f64>::identity_padded(3, 2);
        assert!(contract(&mu, &x, &x, &bad).is_err());
        let i = Matrix::<f64>::identity_padded(2, 2);
        assert_eq!(contract(&mu, &i, &i, &i).unwrap(), 2.0);
    }

    #[test]
    fn strassen_2x2_examples() {
        let i2 = Matrix::<i64>::identity_padded(2, 2);
        let (c, count) = strassen_2x2(&i2, &i2).unwrap();
        assert_eq!(c, i2);
        assert_eq!(count, 7);

        let a = Matrix::from_rows(&[vec![1i64, 2], vec![3, 4]]).unwrap();
        let b = Matrix::from_rows(&[vec![5i64, 6], vec![7, 8]]).unwrap();
        let (c, _) = strassen_2x2(&a, &b).unwrap();
        assert_eq!(c.as_slice(), &[19, 22, 43, 50]);
    }

    #[test]
    fn strassen_2x2_matches_naive_on_random_integers() {
        let mut rng = seeding::rng_for(37, 0);
        for _ in 0..200 {
            let a = Matrix::new(2, 2, (0..4).map(|_| rng.gen_range(-50i64..50)).collect()).unwrap();
            let b = Matrix::new(2, 2, (0..4).map(|_| rng.gen_range(-50i64..50)).collect()).unwrap();
            let (c, count) = strassen_2x2(&a, &b).unwrap();
            assert_eq!(count, 7);
            assert_eq!(c, a.matmul(&b).unwrap());
        }
    }

    #[test]
    fn recursive_counts_and_values() {
        // n = 1 is a plain scalar product
        let a = Matrix::new(1, 1, vec![3i64]).unwrap();
        let b = Matrix::new(1, 1, vec![-4i64]).unwrap();
        let (c, count) = strassen_recursive(&a, &b, 1).unwrap();
        assert_eq!(c.at(0, 0), -12);
        assert_eq!(count, 1);

        // n = 4, cutoff 1: 7^2 multiplications
        let mut rng = seeding::rng_for(41, 0);
        let a = Matrix::new(4, 4, (0..16).map(|_| rng.gen_range(-9i64..9)).collect()).unwrap();
        let b = Matrix::new(4, 4, (0..16).map(|_| rng.gen_range(-9i64..9)).collect()).unwrap();
        let (c, count) = strassen_recursive(&a, &b, 1).unwrap();
        assert_eq!(count, 49);
        assert_eq!(c, a.matmul(&b).unwrap());
    }

    #[test]
    fn recursive_pads_non_power_sizes() {
        let mut rng = seeding::rng_for(43, 0);
        let a = Matrix::new(3, 5, (0..15).map(|_| rng.gen_range(-4i64..4)).collect()).unwrap();
        let b = Matrix::new(5, 2, (0..10).map(|_| rng.gen_range(-4i64..4)).collect()).unwrap();
        let (c, _) = strassen_recursive(&a, &b, 1).unwrap();
        assert_eq!(c, a.matmul(&b).unwrap());
    }

    #[test]
    fn recursive_close_to_naive_on_floats() {
        let mut rng = seeding::rng_for(47, 0);
        let n = 64;
        let a = Matrix::new(n, n, (0..n * n).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap();
        let b = Matrix::new(n, n, (0..n * n).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap();
        let (c, _) = strassen_recursive(&a, &b, 8).unwrap();
        let exact = a.matmul(&b).unwrap();
        let mut num = 0.0f64;
        let mut den = 0.0f64;
        for (x, y) in c.as_slice().iter().zip(exact.as_slice()) {
            num += (x - y) * (x - y);
            den += y * y;
        }
        assert!((num / den).sqrt() < 1e-12);
    }

    #[test]
    fn seven_term_decomposition_is_exact() {
        let d = strassen_decomposition();
        let rep = verify_rank_decomposition(&d, 2, 2, 2, 0i64).unwrap();
        assert!(rep.valid);
        assert_eq!(rep.max_abs_error, 0);
    }

    #[test]
    fn trivial_decomposition_and_perturbation() {
        // one rank-one term per entry of mu
        let mu = mu_hypermatrix::<f64>(2, 1, 2);
        let terms: Vec<RankOneTerm<f64>> = mu
            .entries
            .iter()
            .map(|&((a, b, c), v)| {
                let unit = |len: usize, at: usize| {
                    let mut e = vec![0.0; len];
                    e[at] = 1.0;
                    e
                };
                RankOneTerm {
                    weight: v,
                    u: unit(mu.dims.0, a),
                    v: unit(mu.dims.1, b),
                    w: unit(mu.dims.2, c),
                }
            })
            .collect();
        let d = RankDecomposition { terms };
        let rep = verify_rank_decomposition(&d, 2, 1, 2, 1e-10).unwrap();
        assert!(rep.valid);

        let mut bad: RankDecomposition<f64> = RankDecomposition {
            terms: strassen_decomposition()
                .terms
                .iter()
                .map(|t| RankOneTerm {
                    weight: t.weight as f64,
                    u: t.u.iter().map(|&x| x as f64).collect(),
                    v: t.v.iter().map(|&x| x as f64).collect(),
                    w: t.w.iter().map(|&x| x as f64).collect(),
                })
                .collect(),
        };
        bad.terms[3].weight += 1e-3;
        let rep = verify_rank_decomposition(&bad, 2, 2, 2, 1e-10).unwrap();
        assert!(!rep.valid);
        assert!(rep.max_abs_error >= 1e-3 - 1e-12);
    }

    #[test]
    fn omega_examples() {
        assert!((omega_upper(2, 7).unwrap() - 7f64.log2()).abs() < 1e-12);
        assert_eq!(omega_upper(2, 8).unwrap(), 3.0);
        assert!((omega_upper(4, 49).unwrap() - 7f64.log2()).abs() < 1e-12);
        assert!(omega_upper(1, 7).is_err());
        assert!(omega_upper(2, 3).is_err());
    }
}
