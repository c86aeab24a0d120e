//! Lower bounds on the independence number and the performance ratios they
//! guarantee.
//!
//! Turán and Caro-Wei values are accumulated exactly as rationals (grouped by
//! degree, so at most `max_degree + 1` terms) and converted to `f64` only for
//! reporting. Ratio formulas take the degree parameter directly so they can be
//! tabulated without building instances.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::graph::{Graph, WeightedGraph};
use crate::{Error, Result};

/// `4(sqrt 2 - 1) ~ 1.6569`, the denominator of the average-degree ratio.
pub fn sparse_constant() -> f64 {
    4.0 * (std::f64::consts::SQRT_2 - 1.0)
}

/// `2^(2/3) / 3 ~ 0.52913`, the limit of `rho(delta) / (delta + 1)`.
pub fn asymptotic_constant() -> f64 {
    2f64.powf(2.0 / 3.0) / 3.0
}

/// Grid resolution of the `rho` scan over `(0, 1]`.
pub const RHO_GRID_POINTS: usize = 1000;

fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Turán bound `n / (avg_degree + 1) = n^2 / (2m + n)` (zero for the null graph).
pub fn turan_bound_exact(g: &Graph) -> BigRational {
    let n = g.n();
    if n == 0 {
        return BigRational::zero();
    }
    ratio(n * n, 2 * g.m() + n)
}

pub fn turan_bound(g: &Graph) -> f64 {
    to_f64(&turan_bound_exact(g))
}

/// Caro-Wei bound `sum_v 1 / (d(v) + 1)`.
pub fn caro_wei_exact(g: &Graph) -> BigRational {
    g.degree_histogram()
        .iter()
        .enumerate()
        .filter(|(_, &count)| count > 0)
        .fold(BigRational::zero(), |acc, (d, &count)| acc + ratio(count, d + 1))
}

pub fn caro_wei(g: &Graph) -> f64 {
    to_f64(&caro_wei_exact(g))
}

/// `sum_v w(v)^2 / w(N[v])`: the expected weight of the weight-tilted rule,
/// and the value the ratio-greedy rule is guaranteed to reach.
pub fn weighted_nbhd_bound(wg: &WeightedGraph) -> f64 {
    let g = wg.graph();
    let value: f64 = (0..g.n())
        .map(|v| {
            let w = wg.weight(v) as f64;
            w * w / wg.closed_nbhd_weight(v) as f64
        })
        .sum();
    debug_assert!(
        value >= wg.total_weight() as f64 / (g.max_degree() + 1) as f64 * (1.0 - 1e-12),
        "weighted neighbourhood bound below w(V)/(delta+1)"
    );
    value
}

pub fn cw_ratio_exact(delta: usize) -> BigRational {
    ratio(delta + 1, 2)
}

/// `(delta + 1) / 2`.
pub fn cw_ratio(delta: usize) -> f64 {
    (delta as f64 + 1.0) / 2.0
}

pub fn turan_ratio_exact(delta: usize) -> BigRational {
    let num = (2 * delta + 1) * (2 * delta + 1);
    ratio(num, 8 * delta)
}

/// `(2 delta + 1)^2 / (8 delta)`.
pub fn turan_ratio(delta: usize) -> f64 {
    let d = delta as f64;
    (2.0 * d + 1.0).powi(2) / (8.0 * d)
}

/// `(avg_degree + 2) / (4 (sqrt 2 - 1))`.
pub fn sparse_ratio(avg_degree: f64) -> f64 {
    (avg_degree + 2.0) / sparse_constant()
}

/// Reciprocal ratio of Caro-Wei on bipartite graphs with regular sides, where
/// the larger side holds a `tau` fraction of the vertices:
/// `tau / (d/2 + tau) + ((1 - tau)^2 / tau) / (d/2 + 1 - tau)`.
pub fn inv_perf_bipartite(tau: f64, avg_degree: f64) -> Result<f64> {
    if !(0.5..1.0).contains(&tau) {
        return Err(Error::InvalidParameter(format!("tau = {tau} outside [1/2, 1)")));
    }
    if avg_degree.is_nan() || avg_degree <= 0.0 {
        return Err(Error::InvalidParameter(format!("average degree {avg_degree} must be positive")));
    }
    let half = avg_degree / 2.0;
    Ok(tau / (half + tau) + ((1.0 - tau).powi(2) / tau) / (half + 1.0 - tau))
}

/// The function minimised in the definition of `rho`:
/// `x^2 / (delta + x) + 1 / (x delta + 1)`.
pub fn rho_objective(delta: f64, x: f64) -> f64 {
    x * x / (delta + x) + 1.0 / (x * delta + 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RhoResult {
    /// Performance ratio of the weight-tilted rule.
    pub rho: f64,
    /// Minimum of the objective, `1 / rho`.
    pub inv_rho: f64,
    /// Minimising `x`; also the worst-case weight ratio between the sides.
    pub argmin: f64,
}

/// Computes `rho(delta)` by minimising [`rho_objective`] over `x in (0, 1]`.
///
/// The objective is not known to be unimodal, so a uniform grid scan locates
/// the best cell first and golden-section search then refines inside the
/// neighbouring bracket until it is narrower than `tol`.
pub fn rho(delta: usize, tol: f64) -> RhoResult {
    assert!(tol > 0.0, "tolerance must be positive");
    let d = delta as f64;
    let f = |x: f64| rho_objective(d, x);
    let step = 1.0 / RHO_GRID_POINTS as f64;

    let (best_i, best_f) = (1..=RHO_GRID_POINTS)
        .map(|i| (i, f(i as f64 * step)))
        .fold((0, f64::INFINITY), |acc, cur| if cur.1 < acc.1 { cur } else { acc });
    let lo = (best_i - 1) as f64 * step;
    let hi = ((best_i + 1) as f64 * step).min(1.0);
    let (x_ref, f_ref) = golden_section(f, lo, hi, tol);

    let (argmin, min) = if f_ref <= best_f { (x_ref, f_ref) } else { (best_i as f64 * step, best_f) };
    RhoResult { rho: 1.0 / min, inv_rho: min, argmin }
}

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = (a + b) / 2.0;
    (x, f(x))
}

/// `2^(2/3) (delta + 1) / 3`.
pub fn rho_asymptotic(delta: usize) -> f64 {
    asymptotic_constant() * (delta as f64 + 1.0)
}

/// `a / (y + t x) + b / (z + (1 - t) x)`, defined for `a > b > 0`,
/// `z - y >= x > 0` and `t in [0, 1]`; minimised at `t = 1`.
pub fn eval_lemma_technical(a: f64, b: f64, y: f64, z: f64, x: f64, t: f64) -> Result<f64> {
    if !(a > b && b > 0.0) {
        return Err(Error::InvalidParameter(format!("need a > b > 0, got a={a}, b={b}")));
    }
    if !(z - y >= x && x > 0.0) {
        return Err(Error::InvalidParameter(format!("need z - y >= x > 0, got y={y}, z={z}, x={x}")));
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidParameter(format!("t = {t} outside [0, 1]")));
    }
    Ok(a / (y + t * x) + b / (z + (1.0 - t) * x))
}

/// Both sides of `sum w_i^2 / x_i >= (sum w_i)^2 / sum x_i`.
pub fn cauchy_schwarz_sides(w: &[f64], x: &[f64]) -> (f64, f64) {
    assert_eq!(w.len(), x.len());
    let lhs = w.iter().zip(x).map(|(w, x)| w * w / x).sum();
    let sum_w: f64 = w.iter().sum();
    let sum_x: f64 = x.iter().sum();
    (lhs, sum_w * sum_w / sum_x)
}

/// Every bound for one graph.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub avg_degree: f64,
    pub turan: f64,
    pub caro_wei: f64,
    /// Exact rationals as `p/q` strings.
    pub turan_exact: String,
    pub caro_wei_exact: String,
    pub weighted_nbhd: f64,
    pub total_weight: u64,
}

impl BoundReport {
    pub fn new(wg: &WeightedGraph) -> Self {
        let g = wg.graph();
        let turan = turan_bound_exact(g);
        let cw = caro_wei_exact(g);
        Self {
            n: g.n(),
            m: g.m(),
            max_degree: g.max_degree(),
            avg_degree: to_f64(&g.avg_degree()),
            turan: to_f64(&turan),
            caro_wei: to_f64(&cw),
            turan_exact: turan.to_string(),
            caro_wei_exact: cw.to_string(),
            weighted_nbhd: weighted_nbhd_bound(wg),
            total_weight: wg.total_weight(),
        }
    }
}

/// Ratio formulas for one maximum degree.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RatioTable {
    pub delta: usize,
    pub cw_ratio: f64,
    pub turan_ratio: f64,
    pub rho: f64,
    pub rho_argmin: f64,
    pub rho_asymptotic: f64,
}

impl RatioTable {
    pub const CSV_HEADER: &'static str =
        "delta,cw_ratio,turan_ratio,rho,argmin_x,rho_over_delta_plus_1";

    pub fn new(delta: usize, tol: f64) -> Self {
        let r = rho(delta, tol);
        Self {
            delta,
            cw_ratio: cw_ratio(delta),
            turan_ratio: turan_ratio(delta),
            rho: r.rho,
            rho_argmin: r.argmin,
            rho_asymptotic: rho_asymptotic(delta),
        }
    }

    pub fn rho_over_delta_plus_1(&self) -> f64 {
        self.rho / (self.delta as f64 + 1.0)
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.delta,
            self.cw_ratio,
            self.turan_ratio,
            self.rho,
            self.rho_argmin,
            self.rho_over_delta_plus_1()
        )
    }
}
