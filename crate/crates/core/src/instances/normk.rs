use std::sync::Arc;

use num_rational::BigRational;

use super::InstanceError;
use crate::family::AdmissibleFamily;
use crate::slope::DegreeRankLabels;

/// Coefficient bound of the smallest-vector search.
pub const SMALLEST_VECTOR_GRID: i64 = 50;

const GRID_POINTS: usize = 4001;
const GOLDEN_ITERATIONS: usize = 200;

/// `‖(a, b)‖_k = sqrt(max{a, kb, 0}² + min{a, kb, 0}²)`.
pub fn norm_k(k: f64, a: f64, b: f64) -> f64 {
    let kb = k * b;
    let hi = a.max(kb).max(0.0);
    let lo = a.min(kb).min(0.0);
    hi.hypot(lo)
}

/// The lattice `ℤ²` with norm `‖·‖_k`, its sublattice `ℤe₁` and quotient.
#[derive(Debug, Clone)]
pub struct NormKInstance {
    pub k: f64,
    pub e1_norm: f64,
    pub e2_norm: f64,
    /// `-ln` of the covolume `‖k e₁ + e₂‖ · ‖e₁ - k⁻¹e₂‖ / 2`.
    pub deg_total: f64,
    pub sub_degree: f64,
    /// Numeric minimum of `λ ↦ ‖e₂ + λe₁‖_k`.
    pub quotient_norm: f64,
    pub quotient_degree: f64,
    /// Least norm of a nonzero vector with coefficients bounded by
    /// [`SMALLEST_VECTOR_GRID`], and the vectors attaining it.
    pub smallest_norm: f64,
    pub smallest_vectors: Vec<(i64, i64)>,
    /// Chain `0 ⊊ ℤe₁ ⊊ ℤ²` on the ground set `{0, 1}`.
    pub family: Arc<AdmissibleFamily>,
    pub labels: DegreeRankLabels,
}

impl NormKInstance {
    /// Last slope of the HN polygon minus the quotient degree.
    pub fn mismatch(&self) -> f64 {
        (self.deg_total - self.sub_degree) - self.quotient_degree
    }
}

fn golden_section<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..GOLDEN_ITERATIONS {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
    }
    f1.min(f2)
}

fn quotient_norm(k: f64) -> f64 {
    let f = |lambda: f64| norm_k(k, lambda, 1.0);
    let (lo, hi) = (-4.0 * k, 4.0 * k);
    let step = (hi - lo) / (GRID_POINTS - 1) as f64;
    let best = (0..GRID_POINTS)
        .min_by(|&i, &j| f(lo + i as f64 * step).total_cmp(&f(lo + j as f64 * step)))
        .expect("nonempty grid");
    let x = lo + best as f64 * step;
    golden_section(f, x - step, x + step).min(f(x))
}

pub fn build_norm_k_demo(k: f64) -> Result<NormKInstance, InstanceError> {
    if !k.is_finite() || k <= 2f64.sqrt() {
        return Err(InstanceError::KTooSmall(k));
    }
    let covolume = norm_k(k, k, 1.0) * norm_k(k, 1.0, -1.0 / k) / 2.0;
    let deg_total = -covolume.ln();
    let qn = quotient_norm(k);

    let mut smallest_norm = f64::INFINITY;
    let mut smallest_vectors = Vec::new();
    let g = SMALLEST_VECTOR_GRID;
    for a in -g..=g {
        for b in -g..=g {
            if (a, b) == (0, 0) {
                continue;
            }
            let v = norm_k(k, a as f64, b as f64);
            if v < smallest_norm - 1e-12 {
                smallest_norm = v;
                smallest_vectors.clear();
            }
            if (v - smallest_norm).abs() <= 1e-12 {
                smallest_vectors.push((a, b));
            }
        }
    }

    let family = Arc::new(AdmissibleFamily::from_lists(2, &[vec![], vec![0], vec![0, 1]])?);
    let exact = |x: f64| BigRational::from_float(x).expect("finite degree");
    let labels = DegreeRankLabels::new(&family, vec![exact(0.0), exact(0.0), exact(deg_total)], vec![0, 1, 2])?;
    Ok(NormKInstance {
        k,
        e1_norm: norm_k(k, 1.0, 0.0),
        e2_norm: norm_k(k, 0.0, 1.0),
        deg_total,
        sub_degree: 0.0,
        quotient_norm: qn,
        quotient_degree: -k.ln(),
        smallest_norm,
        smallest_vectors,
        family,
        labels,
    })
}
