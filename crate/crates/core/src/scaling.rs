//! Numeric evaluation of the large-map scaling limit: critical lines, the scaling
//! factor, continuous two- and three-point functions, geodesic and vertex/face
//! observables, and discrete-to-continuum convergence tables.
//!
//! Everything here is double precision; the exact-series layer never feeds this
//! module and vice versa. Root-finding is bracketed bisection throughout: the
//! critical-line parameters are monotone in z, and the (x, alpha) inversion nests
//! a bisection for alpha at fixed x inside a bisection for x. (A Newton iteration
//! on the cleared relations is unusable here: the cleared system has the spurious
//! solution x = alpha = 1 for every (g, z), and near-critical seeds drift into it.)

use std::fmt;

use crate::formulas::{DistanceSpec, Parity};
use crate::params::MapClass;

#[derive(Clone, Debug, PartialEq)]
pub enum ScalingError {
    Domain(String),
    RootFind(String),
}

impl fmt::Display for ScalingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalingError::Domain(m) => write!(f, "{m}"),
            ScalingError::RootFind(m) => write!(f, "root finding failed: {m}"),
        }
    }
}

impl std::error::Error for ScalingError {}

type Result<T> = std::result::Result<T, ScalingError>;

// ---------------------------------------------------------------------------
// critical line
// ---------------------------------------------------------------------------

/// A point on the critical line: the internal parameter (r for general maps,
/// v for bipartite ones), the critical edge weight, and the scaling factor.
#[derive(Clone, Copy, Debug)]
pub struct CriticalPoint {
    pub class: MapClass,
    pub z: f64,
    pub param: f64,
    pub g_crit: f64,
    pub gamma: f64,
}

fn z_of_param(class: MapClass, p: f64) -> f64 {
    match class {
        MapClass::General => (3.0 - p).powi(3) * (p + 1.0) / (16.0 * p.powi(3)),
        MapClass::Bipartite => (1.0 - 2.0 * p).powi(3) / ((3.0 - 4.0 * p) * p * p),
    }
}

fn g_crit_of_param(class: MapClass, p: f64) -> f64 {
    match class {
        MapClass::General => 4.0 * p.powi(3) / (3.0 * (p * p + 3.0).powi(2)),
        MapClass::Bipartite => (3.0 - 4.0 * p) * p * p,
    }
}

fn gamma_of_param(class: MapClass, p: f64) -> f64 {
    match class {
        MapClass::General => {
            (3.0 * (3.0 - p) * (p * p + 3.0).sqrt() / (2.0 * p * (p + 3.0))).sqrt()
        }
        MapClass::Bipartite => {
            (3.0f64.sqrt() * (1.0 - 2.0 * p) / (2.0 * (p * (1.0 - p)).sqrt())).sqrt()
        }
    }
}

/// Bisection for a decreasing function; the bracket must straddle the target.
fn invert_decreasing(f: impl Fn(f64) -> f64, target: f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    if !(f(lo) >= target && target >= f(hi)) {
        return Err(ScalingError::RootFind(format!(
            "target {target} not bracketed by [{lo}, {hi}] -> [{}, {}]",
            f(lo),
            f(hi)
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) >= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Inverts the monotone z(param) map and fills the closed-form critical data.
pub fn critical_point(class: MapClass, z: f64) -> Result<CriticalPoint> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(ScalingError::Domain(format!(
            "face weight must be positive and finite, got {z}"
        )));
    }
    let (lo, hi) = match class {
        MapClass::General => (1e-12, 3.0),
        MapClass::Bipartite => (1e-12, 0.5 - 1e-14),
    };
    let param = invert_decreasing(|p| z_of_param(class, p), z, lo, hi)?;
    Ok(CriticalPoint {
        class,
        z,
        param,
        g_crit: g_crit_of_param(class, param),
        gamma: gamma_of_param(class, param),
    })
}

// ---------------------------------------------------------------------------
// continuous two- and three-point functions
// ---------------------------------------------------------------------------

pub fn continuous_two_point(class: MapClass, d: f64, z: f64) -> Result<f64> {
    if !(d > 0.0) {
        return Err(ScalingError::Domain(format!(
            "continuum distance must be positive, got {d}"
        )));
    }
    let gamma = critical_point(class, z)?.gamma;
    let prefactor = match class {
        MapClass::General => 2.0,
        MapClass::Bipartite => 4.0,
    };
    let x = gamma * d;
    Ok(prefactor * gamma.powi(3) * x.cosh() / x.sinh().powi(3))
}

/// Normalization constant of the three-point scaling function.
fn three_point_prefactor(class: MapClass, cp: &CriticalPoint) -> f64 {
    let (p, gamma) = (cp.param, cp.gamma);
    match class {
        MapClass::General => 3.0 * (3.0 - p).powi(2) / (2.0 * (3.0 + p).powi(3) * gamma * gamma),
        MapClass::Bipartite => {
            (1.0 - 2.0 * p).powi(2) * (3.0 - 4.0 * p) / (4.0 * (1.0 - p).powi(2) * gamma * gamma)
        }
    }
}

/// The sinh-product scaling function of the branch lengths.
fn f_scal(s: f64, t: f64, u: f64, gamma: f64, pref: f64) -> f64 {
    let sig = s + t + u;
    let num = 2.0
        * (gamma * sig).sinh()
        * (gamma * s).sinh()
        * (gamma * t).sinh()
        * (gamma * u).sinh();
    let den = (gamma * (s + t)).sinh() * (gamma * (t + u)).sinh() * (gamma * (u + s)).sinh();
    pref * (num / den).powi(2)
}

fn coth(x: f64) -> f64 {
    x.cosh() / x.sinh()
}

fn csch2(x: f64) -> f64 {
    let s = x.sinh();
    1.0 / (s * s)
}

/// Third mixed derivative of the scaling function, differentiated once by hand:
/// with L_a = d log F / da the result is
/// F (L_S L_T L_U + L_S M_TU + L_T M_SU + L_U M_ST + P).
fn d3_f_scal(s: f64, t: f64, u: f64, gamma: f64, pref: f64) -> f64 {
    let sig = s + t + u;
    let f = f_scal(s, t, u, gamma, pref);
    let ls = 2.0
        * gamma
        * (coth(gamma * sig) + coth(gamma * s) - coth(gamma * (s + t)) - coth(gamma * (s + u)));
    let lt = 2.0
        * gamma
        * (coth(gamma * sig) + coth(gamma * t) - coth(gamma * (s + t)) - coth(gamma * (t + u)));
    let lu = 2.0
        * gamma
        * (coth(gamma * sig) + coth(gamma * u) - coth(gamma * (t + u)) - coth(gamma * (s + u)));
    let g2 = 2.0 * gamma * gamma;
    let mst = g2 * (csch2(gamma * (s + t)) - csch2(gamma * sig));
    let msu = g2 * (csch2(gamma * (s + u)) - csch2(gamma * sig));
    let mtu = g2 * (csch2(gamma * (t + u)) - csch2(gamma * sig));
    let p = 4.0 * gamma.powi(3) * csch2(gamma * sig) * coth(gamma * sig);
    f * (ls * lt * lu + ls * mtu + lt * msu + lu * mst + p)
}

fn branch_lengths(d12: f64, d13: f64, d23: f64) -> Result<(f64, f64, f64)> {
    let s = 0.5 * (d12 + d13 - d23);
    let t = 0.5 * (d12 + d23 - d13);
    let u = 0.5 * (d13 + d23 - d12);
    if !(s > 0.0 && t > 0.0 && u > 0.0) {
        return Err(ScalingError::Domain(format!(
            "strict triangle inequalities required, got ({d12}, {d13}, {d23})"
        )));
    }
    Ok((s, t, u))
}

/// Continuous three-point function, evaluated analytically. For bipartite maps
/// the extra factor 1/2 accounts for the parity constraint on the distance sum.
pub fn continuous_three_point(
    class: MapClass,
    d12: f64,
    d13: f64,
    d23: f64,
    z: f64,
) -> Result<f64> {
    let (s, t, u) = branch_lengths(d12, d13, d23)?;
    let cp = critical_point(class, z)?;
    let pref = three_point_prefactor(class, &cp);
    let parity_factor = match class {
        MapClass::General => 1.0,
        MapClass::Bipartite => 0.5,
    };
    Ok(parity_factor * d3_f_scal(s, t, u, cp.gamma, pref))
}

/// Independent cross-check of the analytic third derivative: central finite
/// differences on the scaling function with a Richardson extrapolation ladder,
/// returning the level whose successive change is smallest.
pub fn continuous_three_point_fd(
    class: MapClass,
    d12: f64,
    d13: f64,
    d23: f64,
    z: f64,
) -> Result<f64> {
    let (s, t, u) = branch_lengths(d12, d13, d23)?;
    let cp = critical_point(class, z)?;
    let pref = three_point_prefactor(class, &cp);
    let parity_factor = match class {
        MapClass::General => 1.0,
        MapClass::Bipartite => 0.5,
    };
    let fd = |h: f64| -> f64 {
        let mut acc = 0.0;
        for (ds, s1) in [(0.5 * h, 1.0), (-0.5 * h, -1.0)] {
            for (dt, s2) in [(0.5 * h, 1.0), (-0.5 * h, -1.0)] {
                for (du, s3) in [(0.5 * h, 1.0), (-0.5 * h, -1.0)] {
                    acc += s1 * s2 * s3 * f_scal(s + ds, t + dt, u + du, cp.gamma, pref);
                }
            }
        }
        acc / (h * h * h)
    };
    // Neville tableau over h, h/2, h/4, h/8 with O(h^2) base error. The base
    // step only needs to keep the shifted arguments positive; shrinking it
    // further amplifies the cancellation noise of the triple difference.
    let h0 = 0.04f64.min(s.min(t).min(u));
    let levels: usize = 4;
    let base: Vec<f64> = (0..levels).map(|k| fd(h0 / f64::powi(2.0, k as i32))).collect();
    let mut tab: Vec<Vec<f64>> = vec![base];
    for m in 1..levels {
        let prev = &tab[m - 1];
        let fac = f64::powi(4.0, m as i32);
        let row: Vec<f64> = (0..prev.len() - 1)
            .map(|i| (fac * prev[i + 1] - prev[i]) / (fac - 1.0))
            .collect();
        tab.push(row);
    }
    // adaptive pick: the extrapolation level that moved least from its parent
    let mut best = tab[0][0];
    let mut best_change = f64::INFINITY;
    for m in 1..levels {
        let change = (tab[m][0] - tab[m - 1][0]).abs();
        if change <= best_change {
            best_change = change;
            best = tab[m][0];
        }
    }
    Ok(parity_factor * best)
}

// ---------------------------------------------------------------------------
// observables
// ---------------------------------------------------------------------------

/// Large-map averages at fixed face weight: geodesic vertex/edge counts between
/// far-away vertices and the vertex/face fractions. No geodesic-edge expression
/// exists for bipartite maps (the equal-label border blocks are empty there).
#[derive(Clone, Copy, Debug)]
pub struct Observables {
    pub n_geod_vertices: f64,
    pub n_geod_edges: Option<f64>,
    pub n_v_fraction: f64,
    pub n_f_fraction: f64,
}

pub fn observables(class: MapClass, z: f64) -> Result<Observables> {
    let cp = critical_point(class, z)?;
    let p = cp.param;
    Ok(match class {
        MapClass::General => Observables {
            n_geod_vertices: 6.0 / (3.0 + p),
            n_geod_edges: Some((3.0 + p) / (2.0 * p)),
            n_v_fraction: 8.0 * p * p / ((3.0 + p) * (3.0 + p * p)),
            n_f_fraction: (1.0 + p) * (3.0 - p).powi(2) / ((3.0 + p) * (3.0 + p * p)),
        },
        MapClass::Bipartite => Observables {
            n_geod_vertices: 3.0 - 4.0 * p,
            n_geod_edges: None,
            n_v_fraction: p * (3.0 - 4.0 * p) / (1.0 - p),
            n_f_fraction: (1.0 - 2.0 * p).powi(2) / (1.0 - p),
        },
    })
}

// ---------------------------------------------------------------------------
// numeric inversion of the parametrization at a concrete (g, z)
// ---------------------------------------------------------------------------

fn z_relation(class: MapClass, x: f64, a: f64) -> f64 {
    match class {
        MapClass::General => {
            a * (1.0 - x).powi(3) * (1.0 - a * a * x.powi(3))
                / ((1.0 - a * x).powi(3) * (1.0 - a * x.powi(3)))
        }
        MapClass::Bipartite => {
            a * (1.0 - x).powi(2) * (1.0 - x * x) * (1.0 + a * x * x)
                / ((1.0 - a * x).powi(2) * (1.0 - a * x.powi(4)))
        }
    }
}

fn g_relation(class: MapClass, x: f64, a: f64) -> f64 {
    match class {
        MapClass::General => {
            let p = 1.0 + x + a * x - 6.0 * a * x * x
                + a * x.powi(3)
                + a * a * x.powi(3)
                + a * a * x.powi(4);
            x * (1.0 - a * x).powi(3) * (1.0 - a * x.powi(3)) / (p * p)
        }
        MapClass::Bipartite => {
            x * (1.0 - a * x).powi(2) * (1.0 - a * x.powi(4))
                / ((1.0 + x).powi(2) * (1.0 - a * x * x).powi(3))
        }
    }
}

fn alpha_at(class: MapClass, x: f64, z: f64) -> f64 {
    // the z relation runs from 0 at alpha = 0 to +infinity as alpha -> 1/x
    let mut lo = 0.0;
    let mut hi = (1.0 / x) * (1.0 - 1e-15);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if z_relation(class, x, mid) < z {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Solves the parametrization for the physical branch x in (0, 1) at a given
/// (g, z), g strictly below the critical value.
pub fn solve_parametrization(class: MapClass, g: f64, z: f64) -> Result<(f64, f64)> {
    if !(z > 0.0) {
        return Err(ScalingError::Domain(format!("z must be positive, got {z}")));
    }
    let g_max = critical_point(class, z)?.g_crit;
    if !(g > 0.0 && g < g_max) {
        return Err(ScalingError::RootFind(format!(
            "g = {g} outside the convergence region (0, {g_max})"
        )));
    }
    // the defining polynomials vanish to second order at x = alpha = 1, so the
    // relations lose all significant digits within ~1e-4 of the critical point;
    // approaches closer than 1 - g/g_crit ~ 1e-10 are not resolvable in doubles
    if 1.0 - g / g_max < 1e-10 {
        return Err(ScalingError::RootFind(format!(
            "g = {g} is too close to the critical value {g_max} for double \
             precision (1 - g/g_crit = {:.3e})",
            1.0 - g / g_max
        )));
    }
    let mut lo = 1e-300;
    let mut hi = 1.0 - 1e-4;
    let g_at = |x: f64| g_relation(class, x, alpha_at(class, x, z));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g_at(mid) < g {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    let a = alpha_at(class, x, z);
    let g_back = g_relation(class, x, a);
    if (g_back - g).abs() > 1e-9 * g_max {
        return Err(ScalingError::RootFind(format!(
            "bisection for x stalled: bracket [{lo}, {hi}], g(x) = {g_back}, \
             target {g}"
        )));
    }
    Ok((x, a))
}

// ---------------------------------------------------------------------------
// discrete closed forms at numeric (x, alpha)
// ---------------------------------------------------------------------------

fn bk(s: i64, a: f64, x: f64) -> f64 {
    1.0 - a * x.powi(s as i32)
}

/// Discrete two-point function from the closed bracket form.
pub fn discrete_two_point(class: MapClass, d: u32, x: f64, a: f64) -> f64 {
    let d = d as i64;
    match class {
        MapClass::General => (bk(d + 1, a, x).powi(3) * bk(d + 3, a, x)
            / (bk(d, a, x) * bk(d + 2, a, x).powi(3)))
        .ln(),
        MapClass::Bipartite => (bk(d + 1, a, x).powi(2) * bk(d + 4, a, x)
            / (bk(d, a, x) * bk(d + 3, a, x).powi(2)))
        .ln(),
    }
}

fn f_even_num(s: i64, t: i64, u: i64, x: f64, a: f64) -> f64 {
    if s < 0 || t < 0 || u < 0 {
        return 0.0;
    }
    let num = bk(3, a, x)
        * (bk(s + 2, a, x) * bk(t + 2, a, x) * bk(u + 2, a, x) * bk(s + t + u + 3, a, x)).powi(2);
    let den = bk(2, a, x).powi(3)
        * bk(s + t + 2, a, x)
        * bk(t + u + 2, a, x)
        * bk(u + s + 2, a, x)
        * bk(s + t + 3, a, x)
        * bk(t + u + 3, a, x)
        * bk(u + s + 3, a, x);
    num / den
}

fn f_odd_num(s: i64, t: i64, u: i64, x: f64, a: f64) -> f64 {
    if s <= 0 || t <= 0 || u <= 0 {
        return 0.0;
    }
    let unit = (1.0 - x.powi(s as i32))
        * (1.0 - x.powi(t as i32))
        * (1.0 - x.powi(u as i32))
        * (1.0 - a * a * x.powi((s + t + u + 3) as i32));
    let num = bk(3, a, x) * (a * unit).powi(2);
    let den = bk(2, a, x).powi(3)
        * bk(s + t + 1, a, x)
        * bk(t + u + 1, a, x)
        * bk(u + s + 1, a, x)
        * bk(s + t + 2, a, x)
        * bk(t + u + 2, a, x)
        * bk(u + s + 2, a, x);
    x.powi(3) * num / den
}

fn x_tilde_num(s: i64, t: i64, x: f64, a: f64) -> f64 {
    bk(4, a, x) * bk(s + 2, a, x) * bk(t + 2, a, x) * bk(s + t + 4, a, x)
        / (bk(2, a, x) * bk(s + 4, a, x) * bk(t + 4, a, x) * bk(s + t + 2, a, x))
}

fn y_tilde_num(s: i64, t: i64, u: i64, x: f64, a: f64) -> f64 {
    let pre = bk(s + 4, a, x) * bk(t + 4, a, x) * bk(u + 4, a, x)
        / (bk(3, a, x)
            * bk(4, a, x)
            * bk(s + 2, a, x)
            * bk(t + 2, a, x)
            * bk(u + 2, a, x)
            * bk(s + t + 4, a, x)
            * bk(t + u + 4, a, x)
            * bk(u + s + 4, a, x));
    let t1 = a
        * x
        * bk(3, a, x)
        * (1.0 - x.powi((s + 1) as i32))
        * (1.0 - x.powi((t + 1) as i32))
        * (1.0 - x.powi((u + 1) as i32))
        * (1.0 - a * a * x.powi((s + t + u + 5) as i32));
    let t2 = bk(1, a, x)
        * bk(s + 3, a, x)
        * bk(t + 3, a, x)
        * bk(u + 3, a, x)
        * bk(s + t + u + 3, a, x);
    pre * (t1 + t2)
}

fn f_bip_num(s: i64, t: i64, u: i64, x: f64, a: f64) -> f64 {
    if s < 0 || t < 0 || u < 0 {
        return 0.0;
    }
    x_tilde_num(s, t, x, a)
        * x_tilde_num(s, u, x, a)
        * x_tilde_num(t, u, x, a)
        * y_tilde_num(s, t, u, x, a).powi(2)
}

/// Discrete three-point function at numeric (x, alpha) via the eight-corner
/// finite difference of the appropriate kernel.
pub fn discrete_three_point(class: MapClass, spec: &DistanceSpec, x: f64, a: f64) -> Result<f64> {
    let (parity, stu) = match spec {
        DistanceSpec::Triple { parity, stu, .. } => (*parity, *stu),
        DistanceSpec::Pair { .. } => {
            return Err(ScalingError::Domain("need a distance triple".into()))
        }
    };
    if class == MapClass::Bipartite && parity == Parity::Odd {
        return Err(ScalingError::Domain(
            "bipartite maps require an even total distance".into(),
        ));
    }
    let kernel = |s: i64, t: i64, u: i64| -> f64 {
        match (class, parity) {
            (MapClass::General, Parity::Even) => f_even_num(s, t, u, x, a),
            (MapClass::General, Parity::Odd) => f_odd_num(s, t, u, x, a),
            (MapClass::Bipartite, Parity::Even) => f_bip_num(s, t, u, x, a),
            (MapClass::Bipartite, Parity::Odd) => unreachable!(),
        }
    };
    let (s, t, u) = (stu[0] as i64, stu[1] as i64, stu[2] as i64);
    let mut acc = 0.0;
    for (ds, s1) in [(0, 1.0), (1, -1.0)] {
        for (dt, s2) in [(0, 1.0), (1, -1.0)] {
            for (du, s3) in [(0, 1.0), (1, -1.0)] {
                acc += s1 * s2 * s3 * kernel(s - ds, t - dt, u - du);
            }
        }
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// convergence tables
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug)]
pub enum ConvergenceKind {
    TwoPoint,
    ThreePoint,
}

/// How the continuum distance is discretized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceRounding {
    /// d = ceil(D / eps).
    Ceil,
    /// Nearest even integer; the default for bipartite tables so the three-point
    /// parity constraint can always be met.
    NearestEven,
}

impl DistanceRounding {
    pub fn default_for(class: MapClass) -> Self {
        match class {
            MapClass::General => DistanceRounding::Ceil,
            MapClass::Bipartite => DistanceRounding::NearestEven,
        }
    }

    fn apply(self, v: f64) -> u32 {
        match self {
            DistanceRounding::Ceil => (v - 1e-9).ceil().max(1.0) as u32,
            DistanceRounding::NearestEven => (2.0 * (v / 2.0).round()).max(2.0) as u32,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConvergenceRow {
    pub eps: f64,
    pub g: f64,
    pub d: u32,
    pub discrete: f64,
    pub continuum: f64,
    pub rel_error: f64,
}

/// For each epsilon: g approaches the critical point as g_crit (1 - eps^4), the
/// distance grows as D/eps, and the rescaled discrete value is compared with the
/// continuum limit.
pub fn convergence_table(
    class: MapClass,
    kind: ConvergenceKind,
    d_cont: f64,
    z: f64,
    eps_list: &[f64],
    rounding: DistanceRounding,
) -> Result<Vec<ConvergenceRow>> {
    if !(d_cont > 0.0) {
        return Err(ScalingError::Domain(
            "continuum distance must be positive".into(),
        ));
    }
    for &e in eps_list {
        if !(e > 0.0 && e <= 0.2) {
            return Err(ScalingError::Domain(format!(
                "epsilon values must lie in (0, 0.2], got {e}"
            )));
        }
    }
    let cp = critical_point(class, z)?;
    let mut rows = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let g = cp.g_crit * (1.0 - eps.powi(4));
        let d = rounding.apply(d_cont / eps);
        let (x, a) = solve_parametrization(class, g, z)?;
        let (discrete, continuum) = match kind {
            ConvergenceKind::TwoPoint => (
                discrete_two_point(class, d, x, a) / eps.powi(3),
                continuous_two_point(class, d_cont, z)?,
            ),
            ConvergenceKind::ThreePoint => {
                let spec = DistanceSpec::triple(d as usize, d as usize, d as usize)
                    .map_err(|e| ScalingError::Domain(e.to_string()))?;
                (
                    discrete_three_point(class, &spec, x, a)? / eps,
                    continuous_three_point(class, d_cont, d_cont, d_cont, z)?,
                )
            }
        };
        rows.push(ConvergenceRow {
            eps,
            g,
            d,
            discrete,
            continuum,
            rel_error: (discrete - continuum).abs() / continuum.abs(),
        });
    }
    Ok(rows)
}
