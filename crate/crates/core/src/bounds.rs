//! The two-sided analytic bounds around the tensor-norm estimates, the
//! divergence sequences that separate the bounded exponent class, and the
//! uniqueness verdict built on them.

use crate::error::{Error, Result};
use crate::exponent::{rational_pow, ratio_abs, Exponent, ExponentTriple};
use crate::matnorm::{infty_one_norm_exact, pq_norm_exact};
use crate::matrix::Matrix;
use crate::tensornorm::{estimate_tensor_norm, AscentConfig, TensorNormEstimate};
use crate::witness::{hadamard, identity_quotient_closed_form};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

/// Krivine's proven upper bound pi / (2 ln(1 + sqrt 2)).
pub fn krivine_upper() -> f64 {
    std::f64::consts::PI / (2.0 * (1.0 + std::f64::consts::SQRT_2).ln())
}

/// Haagerup's complex upper bound, rounded up.
pub const HAAGERUP_UPPER: f64 = 1.4049;

/// Which constant to use in the upper-bound formulas. The defaults are proven
/// upper bounds, so the sandwich invariant is sound; substituting a smaller
/// conjectural value downgrades the invariant to a report.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct GrothendieckConstantConfig {
    pub field: Field,
    pub kg_upper: f64,
}

impl GrothendieckConstantConfig {
    pub fn real() -> Self {
        GrothendieckConstantConfig {
            field: Field::Real,
            kg_upper: krivine_upper(),
        }
    }

    pub fn complex() -> Self {
        GrothendieckConstantConfig {
            field: Field::Complex,
            kg_upper: HAAGERUP_UPPER,
        }
    }

    pub fn with_upper(self, kg_upper: f64) -> Self {
        GrothendieckConstantConfig { kg_upper, ..self }
    }
}

impl Default for GrothendieckConstantConfig {
    fn default() -> Self {
        GrothendieckConstantConfig::real()
    }
}

/// The symmetry orbit of ((l,m,n), (p,q,r)): exponent rotation pairs with a
/// dims rotation and Hölder conjugation with a dims swap, leaving the tensor
/// norm unchanged.
fn symmetry_orbit(
    l: usize,
    m: usize,
    n: usize,
    e: ExponentTriple,
) -> [((usize, usize, usize), ExponentTriple); 6] {
    let rot1 = ((n, l, m), e.cyclic());
    let rot2 = ((m, n, l), e.cyclic().cyclic());
    let conj = |(dl, dm, dn): (usize, usize, usize), t: ExponentTriple| {
        ((dl, dn, dm), t.conjugate())
    };
    [
        ((l, m, n), e),
        rot1,
        rot2,
        conj((l, m, n), e),
        conj(rot1.0, rot1.1),
        conj(rot2.0, rot2.1),
    ]
}

fn raw_upper(l: usize, m: usize, n: usize, e: ExponentTriple, kg_upper: f64) -> f64 {
    let half = Ratio::new(1, 2);
    kg_upper
        * rational_pow(l as f64, ratio_abs(e.q.recip() - half))
        * rational_pow(m as f64, Ratio::new(1, 1) - e.p.recip())
        * rational_pow(n as f64, e.r.recip())
}

/// kg_upper * l^{|1/q-1/2|} * m^{1-1/p} * n^{1/r}, minimized over the norm's
/// symmetry orbit so that the whole (1,2,inf) class gets the
/// dimension-independent bound.
pub fn upper_bound(
    l: usize,
    m: usize,
    n: usize,
    e: ExponentTriple,
    cfg: &GrothendieckConstantConfig,
) -> f64 {
    symmetry_orbit(l, m, n, e)
        .iter()
        .map(|&((a, b, c), t)| raw_upper(a, b, c, t, cfg.kg_upper))
        .fold(f64::INFINITY, f64::min)
}

/// 1 / (l^{|1/q-1/2|} * m^{|1/p-1/2|} * n^{|1/r-1/2|}); always <= 1.
pub fn lower_bound(l: usize, m: usize, n: usize, e: ExponentTriple) -> f64 {
    let half = Ratio::new(1, 2);
    1.0 / (rational_pow(l as f64, ratio_abs(e.q.recip() - half))
        * rational_pow(m as f64, ratio_abs(e.p.recip() - half))
        * rational_pow(n as f64, ratio_abs(e.r.recip() - half)))
}

/// analytic lower bound <= certified estimate <= analytic upper bound.
#[derive(Clone, Debug)]
pub struct SandwichReport {
    pub dims: (usize, usize, usize),
    pub triple: ExponentTriple,
    pub lower: f64,
    pub estimate: TensorNormEstimate<f64>,
    pub upper: f64,
    pub kg_upper: f64,
}

const SANDWICH_SLACK: f64 = 1e-9;

/// Compute the estimate and check it against the two analytic bounds; a
/// violation is a hard error because it signals an estimator or formula bug.
pub fn sandwich(
    l: usize,
    m: usize,
    n: usize,
    e: ExponentTriple,
    cfg: &GrothendieckConstantConfig,
    ascent: &AscentConfig,
) -> Result<SandwichReport> {
    let estimate = estimate_tensor_norm::<f64>(l, m, n, e, ascent)?;
    let lower = lower_bound(l, m, n, e);
    let upper = upper_bound(l, m, n, e, cfg);
    let slack = SANDWICH_SLACK * estimate.value.abs().max(1.0);
    if estimate.value < lower - slack || estimate.value > upper + slack {
        return Err(Error::SandwichViolation {
            l,
            m,
            n,
            lower,
            estimate: estimate.value,
            upper,
        });
    }
    Ok(SandwichReport {
        dims: (l, m, n),
        triple: e,
        lower,
        estimate,
        upper,
        kg_upper: cfg.kg_upper,
    })
}

/// The explicit divergence families that separate the bounded exponent
/// class. Conjugate variants are handled by reduction (they have no separate
/// witness family).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DivergenceCase {
    /// (1,q,inf) with q > 2 (including q = inf).
    IQ { q: Exponent },
    /// (1,q,inf) with 1 <= q < 2; reduces to IQ at the conjugate exponent.
    IQConjugate { q: Exponent },
    /// (1,inf,r) with 1 < r < 2.
    IIR { r: Exponent },
    /// (1,inf,r) with 2 < r < inf; reduces to IIR at the conjugate exponent.
    IIRConjugate { r: Exponent },
    /// (1,inf,2).
    IIRTwo,
}

impl DivergenceCase {
    pub fn validate(&self) -> Result<()> {
        match *self {
            DivergenceCase::IQ { q } => {
                if q > Exponent::TWO {
                    Ok(())
                } else {
                    Err(Error::Domain(format!("case I needs q > 2, got {q}")))
                }
            }
            DivergenceCase::IQConjugate { q } => {
                if q < Exponent::TWO {
                    Ok(())
                } else {
                    Err(Error::Domain(format!(
                        "conjugate case I needs q < 2, got {q}"
                    )))
                }
            }
            DivergenceCase::IIR { r } => {
                if Exponent::ONE < r && r < Exponent::TWO {
                    Ok(())
                } else {
                    Err(Error::Domain(format!("case II needs 1 < r < 2, got {r}")))
                }
            }
            DivergenceCase::IIRConjugate { r } => {
                if Exponent::TWO < r && !r.is_infinite() {
                    Ok(())
                } else {
                    Err(Error::Domain(format!(
                        "conjugate case II needs 2 < r < inf, got {r}"
                    )))
                }
            }
            DivergenceCase::IIRTwo => Ok(()),
        }
    }

    /// Reduce conjugate variants to the directly-constructed family.
    pub fn reduced(&self) -> DivergenceCase {
        match *self {
            DivergenceCase::IQConjugate { q } => DivergenceCase::IQ { q: q.conjugate() },
            DivergenceCase::IIRConjugate { r } => DivergenceCase::IIR { r: r.conjugate() },
            other => other,
        }
    }

    /// Predicted growth exponent g with quotient(n) >= n^g.
    pub fn growth_exponent(&self) -> Ratio<i64> {
        let half = Ratio::new(1, 2);
        match self.reduced() {
            DivergenceCase::IQ { q } => half - q.recip(),
            DivergenceCase::IIR { r } => r.recip() - half,
            DivergenceCase::IIRTwo => half,
            _ => unreachable!("reduced"),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            DivergenceCase::IQ { q } => format!("I(q={q})"),
            DivergenceCase::IQConjugate { q } => format!("I*(q={q})"),
            DivergenceCase::IIR { r } => format!("II(r={r})"),
            DivergenceCase::IIRConjugate { r } => format!("II*(r={r})"),
            DivergenceCase::IIRTwo => "II(r=2)".to_string(),
        }
    }

    /// The exponent triple the case certifies divergence for.
    pub fn triple(&self) -> ExponentTriple {
        match *self {
            DivergenceCase::IQ { q } | DivergenceCase::IQConjugate { q } => {
                ExponentTriple::new(Exponent::ONE, q, Exponent::INF)
            }
            DivergenceCase::IIR { r } | DivergenceCase::IIRConjugate { r } => {
                ExponentTriple::new(Exponent::ONE, Exponent::INF, r)
            }
            DivergenceCase::IIRTwo => {
                ExponentTriple::new(Exponent::ONE, Exponent::INF, Exponent::TWO)
            }
        }
    }
}

/// One point of a divergence sequence.
#[derive(Clone, Debug, Serialize)]
pub struct DivergencePoint {
    pub case: String,
    pub n: usize,
    /// Certified quotient: exact trace over certified norm bounds.
    pub quotient: f64,
    /// Quotient with the (inf,1) denominator enumerated exactly, when the
    /// size is under the enumeration cap. Always >= `quotient`.
    pub refined: Option<f64>,
    pub predicted_floor: f64,
}

/// Build the case's explicit Hadamard triple at size n and evaluate its
/// quotient.
///
/// The certified quotient divides the exact trace by exact norms for the two
/// factors that have them and by the proven bound (= 1 after scaling) for the
/// Hadamard factor, so it is a sound lower bound equal to n^g.
pub fn divergence_experiment(case: DivergenceCase, n: usize, cap: usize) -> Result<DivergencePoint> {
    case.validate()?;
    let reduced = case.reduced();
    let h = hadamard(n)?.to_entry::<f64>();
    let nf = n as f64;
    let point = match reduced {
        DivergenceCase::IQ { q } => {
            // X0 = n^{-1/q} sign(M)^T, M = n^{-3/2} H_n, Y0 = I_n
            let x0 = h.transpose().scale(rational_pow(nf, -q.recip()));
            let m = h.scale(nf.powf(-1.5));
            let y0 = Matrix::<f64>::identity_padded(n, n);
            let tr = x0.matmul(&m).unwrap().matmul(&y0).unwrap().trace().abs();
            let nx = pq_norm_exact(&x0, Exponent::ONE, q, cap)?.value;
            let ny = pq_norm_exact(&y0, q, Exponent::INF, cap)?.value;
            let certified = tr / (nx * ny); // ||M||_{inf,1} <= 1
            let refined = infty_one_norm_exact(&m, cap)
                .ok()
                .map(|r| tr / (nx * ny * r.value));
            (certified, refined)
        }
        DivergenceCase::IIR { r } => {
            // X = H^T, M = n^{1/r-1} I, Y = n^{-3/2} H
            let x = h.transpose();
            let m = Matrix::<f64>::identity_padded(n, n)
                .scale(rational_pow(nf, r.recip() - Ratio::new(1, 1)));
            let y = h.scale(nf.powf(-1.5));
            let tr = x.matmul(&m).unwrap().matmul(&y).unwrap().trace().abs();
            let nx = pq_norm_exact(&x, Exponent::ONE, Exponent::INF, cap)?.value;
            let nm = pq_norm_exact(&m, r, Exponent::ONE, cap)?.value;
            let certified = tr / (nx * nm); // ||Y||_{inf,r} <= ||Y||_{inf,1} <= 1
            let refined = infty_one_norm_exact(&y, cap)
                .ok()
                .map(|ry| tr / (nx * nm * ry.value));
            (certified, refined)
        }
        DivergenceCase::IIRTwo => {
            // X = H^T, M = n^{-1/2} I, Y = n^{-1} H; ||Y||_{inf,2} = 1 exactly
            let x = h.transpose();
            let m = Matrix::<f64>::identity_padded(n, n).scale(nf.powf(-0.5));
            let y = h.scale(1.0 / nf);
            let tr = x.matmul(&m).unwrap().matmul(&y).unwrap().trace().abs();
            let nx = pq_norm_exact(&x, Exponent::ONE, Exponent::INF, cap)?.value;
            let nm = pq_norm_exact(&m, Exponent::TWO, Exponent::ONE, cap)?.value;
            (tr / (nx * nm), None)
        }
        _ => unreachable!("reduced"),
    };
    let floor = rational_pow(nf, case.growth_exponent());
    Ok(DivergencePoint {
        case: case.label(),
        n,
        quotient: point.0,
        refined: point.1,
        predicted_floor: floor,
    })
}

/// Least-squares slope of log2(v) against log2(n).
pub fn fit_loglog_slope(points: &[(usize, f64)]) -> Result<f64> {
    if points.len() < 3 {
        return Err(Error::InsufficientSizes(points.len()));
    }
    let xs: Vec<f64> = points.iter().map(|&(n, _)| (n as f64).log2()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, v)| v.log2()).collect();
    let k = xs.len() as f64;
    let xbar = xs.iter().sum::<f64>() / k;
    let ybar = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xbar) * (y - ybar)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - xbar) * (x - xbar)).sum();
    Ok(sxy / sxx)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictKind {
    /// The exponent class of (1,2,inf): the only class the bounds leave
    /// uniformly bounded. The tool never claims "bounded", only "candidate".
    BoundedCandidate,
    Diverges,
}

#[derive(Clone, Debug, Serialize)]
pub struct UniquenessVerdict {
    pub triple: ExponentTriple,
    pub canonical: ExponentTriple,
    pub kind: VerdictKind,
    pub case: Option<String>,
    /// Predicted growth exponent of the divergence sequence.
    pub g: Option<f64>,
    /// Measured log-log slope over the sizes.
    pub slope: Option<f64>,
    pub slope_ok: Option<bool>,
    pub points: Vec<(usize, f64)>,
}

const SLOPE_TOLERANCE: f64 = 0.05;

/// Classify a triple: bounded-candidate iff its canonical form is (1,2,inf);
/// otherwise run the applicable divergence sequence and fit its slope.
pub fn uniqueness_verdict(
    e: ExponentTriple,
    sizes: &[usize],
    cap: usize,
) -> Result<UniquenessVerdict> {
    let canonical = e.canonical();
    let grothendieck = ExponentTriple::new(Exponent::ONE, Exponent::TWO, Exponent::INF);
    if canonical == grothendieck {
        return Ok(UniquenessVerdict {
            triple: e,
            canonical,
            kind: VerdictKind::BoundedCandidate,
            case: None,
            g: None,
            slope: None,
            slope_ok: None,
            points: Vec::new(),
        });
    }
    if sizes.len() < 3 {
        return Err(Error::InsufficientSizes(sizes.len()));
    }
    let (label, g, points) = if e.min() > Exponent::ONE || e.max() < Exponent::INF {
        // identity-triple sequence on dims (2n, n, n)
        let g = Ratio::new(1, 1) + e.max().recip() - e.min().recip();
        let points: Vec<(usize, f64)> = sizes
            .iter()
            .map(|&n| (n, identity_quotient_closed_form(2 * n, n, n, e)))
            .collect();
        ("identity".to_string(), g, points)
    } else {
        let case = hadamard_case_for(e).expect("min 1 and max inf admits a Hadamard case");
        let mut points = Vec::with_capacity(sizes.len());
        for &n in sizes {
            let pt = divergence_experiment(case, n, cap)?;
            points.push((n, pt.quotient));
        }
        (case.label(), case.growth_exponent(), points)
    };
    let slope = fit_loglog_slope(&points)?;
    let g_f = rational_pow(2.0, g).log2();
    Ok(UniquenessVerdict {
        triple: e,
        canonical,
        kind: VerdictKind::Diverges,
        case: Some(label),
        g: Some(g_f),
        slope: Some(slope),
        slope_ok: Some(slope >= g_f - SLOPE_TOLERANCE),
        points,
    })
}

/// Pick the Hadamard divergence family for a triple with min 1 and max inf
/// that is not in the (1,2,inf) class.
pub fn hadamard_case_for(e: ExponentTriple) -> Option<DivergenceCase> {
    let variants = e.variants();
    // direct case I: (1, q, inf) with q > 2
    for v in variants {
        if v.p.is_one() && v.r.is_infinite() && v.q > Exponent::TWO {
            return Some(DivergenceCase::IQ { q: v.q });
        }
    }
    for v in variants {
        if v.p.is_one() && v.q.is_infinite() {
            if v.r == Exponent::TWO {
                return Some(DivergenceCase::IIRTwo);
            }
            if Exponent::ONE < v.r && v.r < Exponent::TWO {
                return Some(DivergenceCase::IIR { r: v.r });
            }
        }
    }
    for v in variants {
        if v.p.is_one() && v.r.is_infinite() && v.q < Exponent::TWO {
            return Some(DivergenceCase::IQConjugate { q: v.q });
        }
    }
    for v in variants {
        if v.p.is_one() && v.q.is_infinite() && Exponent::TWO < v.r && !v.r.is_infinite() {
            return Some(DivergenceCase::IIRConjugate { r: v.r });
        }
    }
    None
}
