//! Certified lower bounds on the (p,q,r)-norms of the matrix multiplication
//! tensor via explicit feasible triples.
//!
//! Every reported value is the quotient of an explicit (X, M, Y), so it is a
//! sound lower bound whenever the denominator norms are exact. Quotients whose
//! denominators are themselves lower bounds are flagged unsound and never enter
//! certificates.

use crate::error::{Error, Result};
use crate::exponent::{Exponent, ExponentTriple};
use crate::matnorm::{
    frobenius_norm, infty_one_norm_exact, infty_one_norm_heuristic, pq_norm_exact,
    pq_norm_lower_heuristic, vector_norm, NormKind,
};
use crate::matrix::Matrix;
use crate::scalar::{Entry, RealEntry};
use crate::seeding;
use crate::witness::{make_witness, WitnessKind};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// An explicit (X, M, Y) with the chained shapes l x m, m x n, n x l.
#[derive(Clone, Debug, PartialEq)]
pub struct FeasibleTriple<T: Entry> {
    pub x: Matrix<T>,
    pub m: Matrix<T>,
    pub y: Matrix<T>,
}

impl<T: Entry> FeasibleTriple<T> {
    pub fn new(x: Matrix<T>, m: Matrix<T>, y: Matrix<T>) -> Result<Self> {
        if x.cols() != m.rows() || m.cols() != y.rows() || y.cols() != x.rows() {
            return Err(Error::Dimension(format!(
                "triple shapes {}x{}, {}x{}, {}x{} do not chain",
                x.rows(),
                x.cols(),
                m.rows(),
                m.cols(),
                y.rows(),
                y.cols()
            )));
        }
        if x.is_zero() || m.is_zero() || y.is_zero() {
            return Err(Error::Degenerate("zero matrix in feasible triple"));
        }
        Ok(FeasibleTriple { x, m, y })
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.x.rows(), self.x.cols(), self.m.cols())
    }

    /// tr(XMY); trilinear in the three factors.
    pub fn trace(&self) -> T {
        self.x
            .matmul(&self.m)
            .and_then(|xm| xm.matmul(&self.y))
            .expect("shapes chain")
            .trace()
    }

    /// (X,M,Y) -> (M,Y,X); pairs with the exponent rotation e -> cyclic(cyclic(e)),
    /// i.e. quotient(t.rotate(), e.cyclic().cyclic()) = quotient(t, e).
    pub fn rotate(&self) -> FeasibleTriple<T> {
        FeasibleTriple {
            x: self.m.clone(),
            m: self.y.clone(),
            y: self.x.clone(),
        }
    }

    /// (X,M,Y) -> (Y†,M†,X†); pairs with conjugation: quotient(t.adjoint(),
    /// e.conjugate()) = quotient(t, e).
    pub fn adjoint(&self) -> FeasibleTriple<T> {
        FeasibleTriple {
            x: self.y.conj_transpose(),
            m: self.m.conj_transpose(),
            y: self.x.conj_transpose(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormMode {
    Exact,
    BestAvailable,
}

/// A quotient value; `sound` is false when some denominator norm was only a
/// lower bound, which biases the quotient upward.
#[derive(Clone, Copy, Debug)]
pub struct QuotientValue<R> {
    pub value: R,
    pub sound: bool,
}

/// Search parameters shared by the ascent and estimate routines.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct AscentConfig {
    pub restarts: u32,
    pub max_sweeps: u32,
    pub tol: f64,
    pub seed: u64,
    /// Enumeration cap for exact ||.||_{inf,1} denominators.
    pub cap: usize,
}

impl Default for AscentConfig {
    fn default() -> Self {
        AscentConfig {
            restarts: 100,
            max_sweeps: 500,
            tol: 1e-10,
            seed: 42,
            cap: crate::matnorm::DEFAULT_ENUMERATION_CAP,
        }
    }
}

/// |tr(XMY)| / (||X||_{p,q} ||Y||_{q,r} ||M||_{r,p}).
pub fn quotient<T: Entry>(
    t: &FeasibleTriple<T>,
    e: ExponentTriple,
    mode: NormMode,
    cfg: &AscentConfig,
) -> Result<QuotientValue<T::Real>> {
    let numerator = t.trace().modulus();
    let mut sound = true;
    let mut norm_of = |m: &Matrix<T>, p: Exponent, q: Exponent| -> Result<T::Real> {
        match pq_norm_exact(m, p, q, cfg.cap) {
            Ok(r) => Ok(r.value),
            Err(err) => match mode {
                NormMode::Exact => Err(Error::Mode(format!(
                    "exact quotient needs exact norms: {err}"
                ))),
                NormMode::BestAvailable => {
                    let r = pq_norm_lower_heuristic(m, p, q, 32, 0)?;
                    debug_assert_eq!(r.kind, NormKind::LowerBound);
                    sound = false;
                    Ok(r.value)
                }
            },
        }
    };
    let nx = norm_of(&t.x, e.p, e.q)?;
    let ny = norm_of(&t.y, e.q, e.r)?;
    let nm = norm_of(&t.m, e.r, e.p)?;
    let denom = nx * ny * nm;
    if denom == T::Real::zero() {
        return Err(Error::Degenerate("zero norm in quotient denominator"));
    }
    Ok(QuotientValue {
        value: numerator / denom,
        sound,
    })
}

/// |tr(XMY)| / (||X||_F ||M||_F ||Y||_F); never exceeds 1.
pub fn spectral_quotient<T: Entry>(t: &FeasibleTriple<T>) -> Result<T::Real> {
    let denom = frobenius_norm(&t.x) * frobenius_norm(&t.m) * frobenius_norm(&t.y);
    if denom == T::Real::zero() {
        return Err(Error::Degenerate("zero Frobenius norm"));
    }
    Ok(t.trace().modulus() / denom)
}

/// A certified lower bound on ||mu_{l,m,n}||_{p,q,r} with its witness.
#[derive(Clone, Debug)]
pub struct TensorNormEstimate<T: Entry> {
    pub value: T::Real,
    pub certificate: FeasibleTriple<T>,
    pub triple: ExponentTriple,
    pub dims: (usize, usize, usize),
    pub restarts_used: u32,
    pub iterations: u64,
    pub seed: u64,
    /// True when every denominator norm in `value` was exact.
    pub sound: bool,
}

impl<T: Entry> TensorNormEstimate<T> {
    /// Re-evaluate the certificate quotient; matches `value` to 1e-10 relative.
    pub fn reevaluate(&self, cfg: &AscentConfig) -> Result<T::Real> {
        Ok(quotient(&self.certificate, self.triple, NormMode::Exact, cfg)?.value)
    }
}

/// Result of the alternating vector ascent for the (1,2,inf) numerator.
pub struct AscentOutcome<R: RealEntry> {
    pub estimate: TensorNormEstimate<R>,
    /// Best bilinear objective sum_ij M_ij <x_i, y_j> (the quotient numerator).
    pub objective: R,
    /// Per-sweep objectives of the best restart; nondecreasing.
    pub history: Vec<R>,
}

/// Alternating closed-form block updates for the Grothendieck numerator
/// max sum_ij M_ij <x_i, y_j> over unit vectors in R^l, divided by
/// ||M||_{inf,1} (exact under the enumeration cap, else flagged unsound).
pub fn grothendieck_ascent<R: RealEntry>(
    m: &Matrix<R>,
    l: usize,
    cfg: &AscentConfig,
) -> Result<AscentOutcome<R>> {
    if l == 0 {
        return Err(Error::Degenerate("l must be at least 1"));
    }
    if m.is_zero() {
        return Err(Error::Degenerate("zero matrix"));
    }
    if cfg.restarts == 0 {
        return Err(Error::Domain("restarts must be at least 1".into()));
    }
    let (rows, cols) = (m.rows(), m.cols());
    let tol = R::from(cfg.tol).unwrap();
    let mut best_obj = R::zero();
    let mut best_x: Vec<Vec<R>> = vec![unit_first(l); rows];
    let mut best_y: Vec<Vec<R>> = vec![unit_first(l); cols];
    let mut best_history: Vec<R> = Vec::new();
    let mut total_sweeps: u64 = 0;

    for restart in 0..cfg.restarts {
        let mut rng = seeding::rng_for(cfg.seed, restart as u64);
        let mut xs: Vec<Vec<R>> = (0..rows).map(|_| random_unit(l, &mut rng)).collect();
        let mut ys: Vec<Vec<R>> = (0..cols).map(|_| random_unit(l, &mut rng)).collect();
        let mut history: Vec<R> = Vec::new();
        let mut prev = R::neg_infinity();
        for _ in 0..cfg.max_sweeps.max(1) {
            total_sweeps += 1;
            for (i, xi) in xs.iter_mut().enumerate() {
                let mut v = vec![R::zero(); l];
                for (j, yj) in ys.iter().enumerate() {
                    axpy(&mut v, m.at(i, j), yj);
                }
                normalize_into(xi, &v);
            }
            let mut obj = R::zero();
            for (j, yj) in ys.iter_mut().enumerate() {
                let mut w = vec![R::zero(); l];
                for (i, xi) in xs.iter().enumerate() {
                    axpy(&mut w, m.at(i, j), xi);
                }
                obj = obj + normalize_into(yj, &w);
            }
            debug_assert!(
                history.last().is_none_or(|&h| obj >= h - tol.max(R::from(1e-12).unwrap())),
                "ascent objective decreased"
            );
            history.push(obj);
            if obj - prev <= tol * obj.abs().max(R::one()) && prev.is_finite() {
                break;
            }
            prev = obj;
        }
        let obj = *history.last().unwrap();
        if obj > best_obj {
            best_obj = obj;
            best_x = xs;
            best_y = ys;
            best_history = history;
        }
    }

    let denominator = match infty_one_norm_exact(m, cfg.cap) {
        Ok(r) => r,
        Err(Error::EnumerationCap { .. }) => infty_one_norm_heuristic(m, cfg.restarts, cfg.seed)?,
        Err(e) => return Err(e),
    };
    let sound = denominator.kind == NormKind::Exact;
    if denominator.value == R::zero() {
        return Err(Error::Degenerate("zero (inf,1) norm"));
    }

    // columns x_i into X (l x m-rows), rows y_j into Y (n-cols x l)
    let mut x = Matrix::zeros(l, rows);
    for (i, xi) in best_x.iter().enumerate() {
        for (a, &v) in xi.iter().enumerate() {
            x.set(a, i, v);
        }
    }
    let mut y = Matrix::zeros(cols, l);
    for (j, yj) in best_y.iter().enumerate() {
        for (b, &v) in yj.iter().enumerate() {
            y.set(j, b, v);
        }
    }
    let certificate = FeasibleTriple::new(x, m.clone(), y)?;
    let triple = ExponentTriple::new(Exponent::ONE, Exponent::TWO, Exponent::INF);
    let estimate = TensorNormEstimate {
        value: best_obj / denominator.value,
        certificate,
        triple,
        dims: (l, rows, cols),
        restarts_used: cfg.restarts,
        iterations: total_sweeps,
        seed: cfg.seed,
        sound,
    };
    Ok(AscentOutcome {
        estimate,
        objective: best_obj,
        history: best_history,
    })
}

fn unit_first<R: RealEntry>(l: usize) -> Vec<R> {
    let mut v = vec![R::zero(); l];
    v[0] = R::one();
    v
}

fn random_unit<R: RealEntry>(l: usize, rng: &mut rand_chacha::ChaCha8Rng) -> Vec<R> {
    loop {
        let v: Vec<R> = (0..l)
            .map(|_| R::from(seeding::standard_normal(rng)).unwrap())
            .collect();
        let n = vector_norm(&v, Exponent::TWO).expect("nonempty");
        if n > R::zero() {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

fn axpy<R: RealEntry>(acc: &mut [R], a: R, v: &[R]) {
    if a.is_zero() {
        return;
    }
    for (out, &x) in acc.iter_mut().zip(v) {
        *out = *out + a * x;
    }
}

/// Normalize `v` into `dst` and return ||v||_2; keeps `dst` when v = 0.
fn normalize_into<R: RealEntry>(dst: &mut Vec<R>, v: &[R]) -> R {
    let n = vector_norm(v, Exponent::TWO).expect("nonempty");
    if n > R::zero() {
        dst.clear();
        dst.extend(v.iter().map(|&x| x / n));
    }
    n
}

// ---------------------------------------------------------------------------
// estimate search over candidate triples
// ---------------------------------------------------------------------------

const GROTHENDIECK_TRIPLE: ExponentTriple = ExponentTriple {
    p: Exponent::ONE,
    q: Exponent::TWO,
    r: Exponent::INF,
};

/// Best certified quotient over witness triples, the identity triple, the
/// (1,2,inf) vector ascent (when applicable up to cyclic rotation) and
/// projected-ascent random restarts on exactly-normed exponent pairs.
pub fn estimate_tensor_norm<R: RealEntry>(
    l: usize,
    m: usize,
    n: usize,
    e: ExponentTriple,
    cfg: &AscentConfig,
) -> Result<TensorNormEstimate<R>> {
    if l == 0 || m == 0 || n == 0 {
        return Err(Error::Degenerate("dims must be at least 1"));
    }
    if cfg.restarts == 0 {
        return Err(Error::Domain("restarts must be at least 1".into()));
    }
    let mut best: Option<(R, FeasibleTriple<R>)> = None;
    let consider = |value: R, t: FeasibleTriple<R>, best: &mut Option<(R, FeasibleTriple<R>)>| {
        if best.as_ref().is_none_or(|(v, _)| value > *v) {
            *best = Some((value, t));
        }
    };

    for t in fixed_candidates::<R>(l, m, n, e)? {
        if let Ok(qv) = quotient(&t, e, NormMode::Exact, cfg) {
            if qv.sound {
                consider(qv.value, t, &mut best);
            }
        }
    }

    let mut iterations: u64 = 0;

    if e.canonical() == GROTHENDIECK_TRIPLE {
        // rotate so the ascent always runs in (1,2,inf) coordinates
        let rotation = [e, e.cyclic(), e.cyclic().cyclic()]
            .iter()
            .position(|&v| v == GROTHENDIECK_TRIPLE)
            .expect("member of the cyclic class");
        let (lp, mp, np) = match rotation {
            0 => (l, m, n),
            1 => (n, l, m),
            _ => (m, n, l),
        };
        for (idx, cand) in ascent_candidate_matrices::<R>(mp, np, cfg.seed).into_iter().enumerate()
        {
            let sub = AscentConfig {
                seed: seeding::sub_seed(cfg.seed, 0x100 + idx as u64),
                ..*cfg
            };
            let Ok(outcome) = grothendieck_ascent(&cand, lp, &sub) else {
                continue;
            };
            iterations += outcome.estimate.iterations;
            if !outcome.estimate.sound {
                continue;
            }
            let t_prime = outcome.estimate.certificate;
            let mapped = match rotation {
                0 => t_prime,
                1 => FeasibleTriple::new(t_prime.m.clone(), t_prime.y.clone(), t_prime.x.clone())?,
                _ => FeasibleTriple::new(t_prime.y.clone(), t_prime.x.clone(), t_prime.m.clone())?,
            };
            debug_assert_eq!(mapped.dims(), (l, m, n));
            if let Ok(qv) = quotient(&mapped, e, NormMode::Exact, cfg) {
                if qv.sound {
                    consider(qv.value, mapped, &mut best);
                }
            }
        }
    }

    // the projected route re-normalizes every sweep, so keep its (inf,1)
    // enumerations small; the final quotient still uses the full cap
    if pairs_exactly_supported::<R>(l, m, n, e, cfg.cap.min(10)) {
        for restart in 0..cfg.restarts {
            if let Some(t) = projected_ascent_triple::<R>(l, m, n, e, cfg, restart as u64) {
                iterations += cfg.max_sweeps as u64;
                if let Ok(qv) = quotient(&t, e, NormMode::Exact, cfg) {
                    if qv.sound {
                        consider(qv.value, t, &mut best);
                    }
                }
            }
        }
    }

    let (value, certificate) = best.expect("E-triple always yields a sound quotient");
    Ok(TensorNormEstimate {
        value,
        certificate,
        triple: e,
        dims: (l, m, n),
        restarts_used: cfg.restarts,
        iterations,
        seed: cfg.seed,
        sound: true,
    })
}

fn fixed_candidates<R: RealEntry>(
    l: usize,
    m: usize,
    n: usize,
    e: ExponentTriple,
) -> Result<Vec<FeasibleTriple<R>>> {
    let ew = |rows, cols| make_witness(WitnessKind::E { rows, cols }).map(|w| w.to_entry::<R>());
    let mut out = Vec::new();
    // the E-triple attains the spectral ceiling and every (p,q,r) quotient 1
    out.push(FeasibleTriple::new(
        ew(l, m)?,
        ew(m, n)?,
        ew(n, l)?,
    )?);
    out.push(FeasibleTriple::new(
        Matrix::identity_padded(l, m),
        Matrix::identity_padded(m, n),
        Matrix::identity_padded(n, l),
    )?);
    let j = make_witness(WitnessKind::J { rows: m, cols: n })?.to_entry::<R>();
    if e.q <= Exponent::TWO {
        let r = make_witness(WitnessKind::R { rows: n, cols: l })?.to_entry::<R>();
        out.push(FeasibleTriple::new(ew(l, m)?, j, r)?);
    } else {
        let c = make_witness(WitnessKind::C { rows: l, cols: m })?.to_entry::<R>();
        out.push(FeasibleTriple::new(c, j, ew(n, l)?)?);
    }
    Ok(out)
}

fn ascent_candidate_matrices<R: RealEntry>(m: usize, n: usize, seed: u64) -> Vec<Matrix<R>> {
    let mut out = Vec::new();
    if let Ok(j) = make_witness(WitnessKind::J { rows: m, cols: n }) {
        out.push(j.to_entry::<R>());
    }
    if m == n && m.is_power_of_two() {
        if let Ok(h) = make_witness(WitnessKind::Hadamard { n: m }) {
            out.push(h.to_entry::<R>());
        }
    }
    for i in 0..4u64 {
        let mut rng = seeding::rng_for(seed, 0x5160 + i);
        use rand::Rng;
        let data: Vec<R> = (0..m * n)
            .map(|_| {
                if rng.gen::<bool>() {
                    R::one()
                } else {
                    -R::one()
                }
            })
            .collect();
        out.push(Matrix::new(m, n, data).expect("positive dims"));
    }
    out
}

fn pair_supported<R: RealEntry>(p: Exponent, q: Exponent, rows: usize, cols: usize, cap: usize) -> bool {
    p.is_one()
        || q.is_infinite()
        || (p == Exponent::TWO && q == Exponent::TWO)
        || (p.is_infinite() && q.is_one() && rows.min(cols) <= cap && !R::IS_COMPLEX)
}

fn pairs_exactly_supported<R: RealEntry>(
    l: usize,
    m: usize,
    n: usize,
    e: ExponentTriple,
    cap: usize,
) -> bool {
    pair_supported::<R>(e.p, e.q, l, m, cap)
        && pair_supported::<R>(e.q, e.r, n, l, cap)
        && pair_supported::<R>(e.r, e.p, m, n, cap)
}

const PROJECTED_STEP: f64 = 0.5;

fn projected_ascent_triple<R: RealEntry>(
    l: usize,
    m: usize,
    n: usize,
    e: ExponentTriple,
    cfg: &AscentConfig,
    restart: u64,
) -> Option<FeasibleTriple<R>> {
    let mut rng = seeding::rng_for(cfg.seed ^ 0x9ade_7a11, restart);
    let mut x = random_matrix::<R>(l, m, &mut rng);
    let mut mm = random_matrix::<R>(m, n, &mut rng);
    let mut y = random_matrix::<R>(n, l, &mut rng);
    normalize_matrix(&mut x, e.p, e.q, cfg.cap)?;
    normalize_matrix(&mut mm, e.r, e.p, cfg.cap)?;
    normalize_matrix(&mut y, e.q, e.r, cfg.cap)?;
    let step = R::from(PROJECTED_STEP).unwrap();
    let sweeps = cfg.max_sweeps.min(120);
    for _ in 0..sweeps {
        let gx = mm.matmul(&y).ok()?.transpose();
        gradient_step(&mut x, &gx, step);
        normalize_matrix(&mut x, e.p, e.q, cfg.cap)?;

        let gm = y.matmul(&x).ok()?.transpose();
        gradient_step(&mut mm, &gm, step);
        normalize_matrix(&mut mm, e.r, e.p, cfg.cap)?;

        let gy = x.matmul(&mm).ok()?.transpose();
        gradient_step(&mut y, &gy, step);
        normalize_matrix(&mut y, e.q, e.r, cfg.cap)?;
    }
    FeasibleTriple::new(x, mm, y).ok()
}

fn random_matrix<R: RealEntry>(rows: usize, cols: usize, rng: &mut rand_chacha::ChaCha8Rng) -> Matrix<R> {
    Matrix::new(
        rows,
        cols,
        (0..rows * cols)
            .map(|_| R::from(seeding::standard_normal(rng)).unwrap())
            .collect(),
    )
    .expect("positive dims")
}

fn gradient_step<R: RealEntry>(m: &mut Matrix<R>, g: &Matrix<R>, step: R) {
    let gn = frobenius_norm(g);
    if gn <= R::zero() {
        return;
    }
    let s = step / gn;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            m.set(i, j, m.at(i, j) + s * g.at(i, j));
        }
    }
}

fn normalize_matrix<R: RealEntry>(
    m: &mut Matrix<R>,
    p: Exponent,
    q: Exponent,
    cap: usize,
) -> Option<()> {
    let norm = pq_norm_exact(m, p, q, cap).ok()?.value;
    if norm <= R::zero() {
        return None;
    }
    *m = m.scale(R::one() / norm);
    Some(())
}

/// Best Grothendieck quotient over the supplied matrices: a certified lower
/// bound on the order-l constant (denominators must be exactly enumerable).
pub fn kg_lower_bound<R: RealEntry>(
    matrices: &[Matrix<R>],
    l: usize,
    cfg: &AscentConfig,
) -> Result<TensorNormEstimate<R>> {
    if matrices.is_empty() {
        return Err(Error::Empty("kg_lower_bound matrices"));
    }
    let mut best: Option<TensorNormEstimate<R>> = None;
    for m in matrices {
        let outcome = grothendieck_ascent(m, l, cfg)?;
        if !outcome.estimate.sound {
            return Err(Error::EnumerationCap {
                side: m.rows().min(m.cols()),
                cap: cfg.cap,
            });
        }
        if best
            .as_ref()
            .is_none_or(|b| outcome.estimate.value > b.value)
        {
            best = Some(outcome.estimate);
        }
    }
    Ok(best.expect("nonempty input"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::hadamard;
    use rand::Rng;

    fn e(s: &str) -> Exponent {
        s.parse().unwrap()
    }

    fn triple(p: &str, q: &str, r: &str) -> ExponentTriple {
        ExponentTriple::new(e(p), e(q), e(r))
    }

    fn e_triple(l: usize, m: usize, n: usize) -> FeasibleTriple<f64> {
        let ew = |rows, cols| {
            make_witness(WitnessKind::E { rows, cols })
                .unwrap()
                .to_entry::<f64>()
        };
        FeasibleTriple::new(ew(l, m), ew(m, n), ew(n, l)).unwrap()
    }

    fn random_triple(l: usize, m: usize, n: usize, seed: u64) -> FeasibleTriple<f64> {
        let mut rng = seeding::rng_for(seed, 0);
        let mut rand_mat = |rows: usize, cols: usize| loop {
            let mat = Matrix::new(
                rows,
                cols,
                (0..rows * cols).map(|_| rng.gen_range(-1.0..1.0)).collect(),
            )
            .unwrap();
            if !mat.is_zero() {
                break mat;
            }
        };
        let x = rand_mat(l, m);
        let mm = rand_mat(m, n);
        let y = rand_mat(n, l);
        FeasibleTriple::new(x, mm, y).unwrap()
    }

    #[test]
    fn triple_construction_validates() {
        let x = Matrix::<f64>::identity_padded(2, 3);
        let m = Matrix::<f64>::identity_padded(3, 2);
        let y = Matrix::<f64>::identity_padded(2, 2);
        assert!(FeasibleTriple::new(x.clone(), m.clone(), y.clone()).is_ok());
        assert!(FeasibleTriple::new(m.clone(), x.clone(), y).is_err());
        let z = Matrix::<f64>::zeros(3, 2);
        assert!(matches!(
            FeasibleTriple::new(x, z, Matrix::<f64>::identity_padded(2, 2)),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn spectral_quotient_examples() {
        assert_eq!(spectral_quotient(&e_triple(3, 2, 4)).unwrap(), 1.0);
        let i = Matrix::<f64>::identity_padded(2, 2);
        let t = FeasibleTriple::new(i.clone(), i.clone(), i).unwrap();
        let v = spectral_quotient(&t).unwrap();
        assert!((v - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        // scalars
        let s = Matrix::new(1, 1, vec![1.0]).unwrap();
        let t = FeasibleTriple::new(s.clone(), s.clone(), s).unwrap();
        assert_eq!(spectral_quotient(&t).unwrap(), 1.0);
    }

    #[test]
    fn spectral_quotient_is_capped_at_one() {
        for seed in 0..200 {
            let t = random_triple(3, 3, 3, seed);
            assert!(spectral_quotient(&t).unwrap() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn quotient_examples() {
        let cfg = AscentConfig::default();
        // scalar triple is 1 for any exponents
        let s = Matrix::new(1, 1, vec![1.0]).unwrap();
        let t = FeasibleTriple::new(s.clone(), s.clone(), s).unwrap();
        for tr in [triple("1", "2", "inf"), triple("3/2", "3", "2")] {
            let qv = quotient(&t, tr, NormMode::Exact, &cfg).unwrap();
            assert_eq!(qv.value, 1.0);
            assert!(qv.sound);
        }
        // witness equality triple at (1,2,inf): 1 / (sqrt(l) m n)
        let (l, m, n) = (3, 2, 4);
        let x = make_witness(WitnessKind::E { rows: l, cols: m })
            .unwrap()
            .to_entry::<f64>();
        let j = make_witness(WitnessKind::J { rows: m, cols: n })
            .unwrap()
            .to_entry::<f64>();
        let r = make_witness(WitnessKind::R { rows: n, cols: l })
            .unwrap()
            .to_entry::<f64>();
        let t = FeasibleTriple::new(x, j, r).unwrap();
        let qv = quotient(&t, triple("1", "2", "inf"), NormMode::Exact, &cfg).unwrap();
        let want = 1.0 / ((l as f64).sqrt() * (m * n) as f64);
        assert!((qv.value - want).abs() < 1e-15);
    }

    #[test]
    fn quotient_mode_error_on_unsupported_pairs() {
        let cfg = AscentConfig::default();
        let t = random_triple(3, 3, 3, 5);
        let err = quotient(&t, triple("3", "3/2", "2"), NormMode::Exact, &cfg).unwrap_err();
        assert!(matches!(err, Error::Mode(_)));
        let qv = quotient(&t, triple("3", "3/2", "2"), NormMode::BestAvailable, &cfg).unwrap();
        assert!(!qv.sound);
    }

    #[test]
    fn quotient_scaling_invariance() {
        let cfg = AscentConfig::default();
        let t = random_triple(2, 3, 2, 9);
        let tr = triple("1", "2", "inf");
        let base = quotient(&t, tr, NormMode::Exact, &cfg).unwrap().value;
        let scaled = FeasibleTriple::new(
            t.x.scale(3.7),
            t.m.scale(-0.2),
            t.y.scale(11.0),
        )
        .unwrap();
        let v = quotient(&scaled, tr, NormMode::Exact, &cfg).unwrap().value;
        assert!((v - base).abs() <= 1e-12 * base.max(1.0));
    }

    #[test]
    fn pointwise_cyclic_and_conjugation_identities() {
        let cfg = AscentConfig::default();
        let exponent_sets = [
            triple("1", "2", "inf"),
            triple("1", "1", "inf"),
            triple("1", "3", "inf"),
            triple("1", "1", "1"),
            triple("inf", "inf", "inf"),
            triple("2", "inf", "1"),
        ];
        for seed in 0..40 {
            let t = random_triple(2, 3, 2, seed);
            for &tr in &exponent_sets {
                let base = quotient(&t, tr, NormMode::Exact, &cfg).unwrap().value;
                let rot = quotient(
                    &t.rotate(),
                    tr.cyclic().cyclic(),
                    NormMode::Exact,
                    &cfg,
                )
                .unwrap()
                .value;
                assert!(
                    (rot - base).abs() <= 1e-12 * base.max(1.0),
                    "cyclic at {tr}: {base} vs {rot}"
                );
                let conj = quotient(&t.adjoint(), tr.conjugate(), NormMode::Exact, &cfg)
                    .unwrap()
                    .value;
                assert!(
                    (conj - base).abs() <= 1e-12 * base.max(1.0),
                    "conjugate at {tr}: {base} vs {conj}"
                );
            }
        }
    }

    #[test]
    fn ascent_on_all_ones_and_e() {
        let cfg = AscentConfig {
            restarts: 4,
            ..Default::default()
        };
        let j = make_witness(WitnessKind::J { rows: 3, cols: 2 })
            .unwrap()
            .to_entry::<f64>();
        let out = grothendieck_ascent(&j, 4, &cfg).unwrap();
        assert!((out.estimate.value - 1.0).abs() < 1e-9);

        let em = make_witness(WitnessKind::E { rows: 2, cols: 3 })
            .unwrap()
            .to_entry::<f64>();
        let out = grothendieck_ascent(&em, 2, &cfg).unwrap();
        assert!((out.estimate.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn ascent_on_hadamard_reaches_sqrt2() {
        let h = hadamard(2).unwrap().to_entry::<f64>();
        let cfg = AscentConfig {
            restarts: 50,
            ..Default::default()
        };
        let out = grothendieck_ascent(&h, 2, &cfg).unwrap();
        assert!(out.estimate.value >= 2f64.sqrt() - 1e-6);
        assert!(out.estimate.sound);
        // objective history is monotone nondecreasing
        for w in out.history.windows(2) {
            assert!(w[1] >= w[0] - 1e-10);
        }
        // certificate reproduces the value
        let cfg_check = AscentConfig::default();
        let re = out.estimate.reevaluate(&cfg_check).unwrap();
        assert!((re - out.estimate.value).abs() <= 1e-10 * out.estimate.value.max(1.0));
    }

    #[test]
    fn estimate_examples() {
        let cfg = AscentConfig {
            restarts: 30,
            ..Default::default()
        };
        let est = estimate_tensor_norm::<f64>(1, 1, 1, triple("1", "2", "inf"), &cfg).unwrap();
        assert!((est.value - 1.0).abs() < 1e-12);

        for (l, m, n) in [(1, 1, 1), (2, 3, 2), (4, 4, 4)] {
            let est = estimate_tensor_norm::<f64>(l, m, n, triple("2", "2", "2"), &cfg).unwrap();
            assert!(est.value >= 1.0 - 1e-12, "dims ({l},{m},{n}): {}", est.value);
        }

        let est = estimate_tensor_norm::<f64>(2, 2, 2, triple("1", "2", "inf"), &cfg).unwrap();
        assert!(est.value >= 2f64.sqrt() - 1e-6);
    }

    #[test]
    fn estimate_handles_cyclic_variants() {
        let cfg = AscentConfig {
            restarts: 30,
            ..Default::default()
        };
        for tr in [triple("2", "inf", "1"), triple("inf", "1", "2")] {
            let est = estimate_tensor_norm::<f64>(2, 2, 2, tr, &cfg).unwrap();
            assert!(
                est.value >= 2f64.sqrt() - 1e-6,
                "triple {tr}: {}",
                est.value
            );
            let re = est.reevaluate(&cfg).unwrap();
            assert!((re - est.value).abs() <= 1e-10 * est.value.max(1.0));
        }
    }

    #[test]
    fn estimate_rejects_degenerate_inputs() {
        let cfg = AscentConfig::default();
        assert!(estimate_tensor_norm::<f64>(0, 1, 1, triple("1", "2", "inf"), &cfg).is_err());
        let zero_restarts = AscentConfig {
            restarts: 0,
            ..Default::default()
        };
        assert!(
            estimate_tensor_norm::<f64>(1, 1, 1, triple("1", "2", "inf"), &zero_restarts).is_err()
        );
    }

    #[test]
    fn complex_quotients() {
        use num_complex::Complex64;
        let cfg = AscentConfig::default();
        let mut rng = seeding::rng_for(51, 0);
        let mut rand_c = |rows: usize, cols: usize| loop {
            let mat = Matrix::new(
                rows,
                cols,
                (0..rows * cols)
                    .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect(),
            )
            .unwrap();
            if !mat.is_zero() {
                break mat;
            }
        };
        // spectral ceiling and the E-triple over the complex field
        let mut e_mat = Matrix::<Complex64>::zeros(2, 3);
        e_mat.set(0, 0, Complex64::new(1.0, 0.0));
        let mut e2 = Matrix::<Complex64>::zeros(3, 2);
        e2.set(0, 0, Complex64::new(1.0, 0.0));
        let mut e3 = Matrix::<Complex64>::zeros(2, 2);
        e3.set(0, 0, Complex64::new(1.0, 0.0));
        let t = FeasibleTriple::new(e_mat, e2, e3).unwrap();
        assert_eq!(spectral_quotient(&t).unwrap(), 1.0);

        for _ in 0..50 {
            let t = FeasibleTriple::new(rand_c(2, 3), rand_c(3, 2), rand_c(2, 2)).unwrap();
            assert!(spectral_quotient(&t).unwrap() <= 1.0 + 1e-12);
            // conjugation identity on an all-(2,2) triple
            let tr = triple("2", "2", "2");
            let base = quotient(&t, tr, NormMode::Exact, &cfg).unwrap().value;
            let conj = quotient(&t.adjoint(), tr.conjugate(), NormMode::Exact, &cfg)
                .unwrap()
                .value;
            assert!((conj - base).abs() <= 1e-11 * base.max(1.0));
        }
        // the (inf,1) denominator has no exact complex path
        let t = FeasibleTriple::new(rand_c(2, 2), rand_c(2, 2), rand_c(2, 2)).unwrap();
        assert!(matches!(
            quotient(&t, triple("1", "2", "inf"), NormMode::Exact, &cfg),
            Err(Error::Mode(_))
        ));
    }

    #[test]
    fn kg_examples() {
        let cfg = AscentConfig {
            restarts: 50,
            ..Default::default()
        };
        let j = make_witness(WitnessKind::J { rows: 3, cols: 3 })
            .unwrap()
            .to_entry::<f64>();
        let est = kg_lower_bound(&[j], 3, &cfg).unwrap();
        assert!((est.value - 1.0).abs() < 1e-9);

        let h = hadamard(2).unwrap().to_entry::<f64>();
        let est = kg_lower_bound(std::slice::from_ref(&h), 2, &cfg).unwrap();
        assert!(est.value >= 2f64.sqrt() - 1e-6);

        // l = 1 collapses to signs, quotient 1
        let est = kg_lower_bound(&[h], 1, &cfg).unwrap();
        assert!((est.value - 1.0).abs() < 1e-9);

        assert!(matches!(
            kg_lower_bound::<f64>(&[], 2, &cfg),
            Err(Error::Empty(_))
        ));
    }
}
