//! Frozen reference expansions and constants used as regression baselines.
//!
//! Every value here was reproduced by an independent route (order-by-order
//! solving of the defining relations, exhaustive enumeration, or closed-form
//! evaluation) before being frozen. The alpha expansion's g^3 coefficient is
//! pinned by back-substitution into the defining relations, which is the
//! arbiter for that series (see `alpha_discrepancy_note`).

use crate::formulas::{three_point, two_point, DistanceSpec, Route};
use crate::params::{solve_params_bivariate, solve_x_univariate, MapClass};
use crate::ring::{rat_int, Rational, Ring, ZPoly};
use crate::scaling;
use crate::series::Series;

pub struct GoldenCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn zp(coeffs: &[i64]) -> ZPoly {
    ZPoly::new(coeffs.iter().map(|&c| rat_int(c)).collect())
}

fn rational_series(coeffs: &[i64], order: usize) -> Series<Rational> {
    let mut v: Vec<Rational> = coeffs.iter().map(|&c| rat_int(c)).collect();
    v.resize(order + 1, <Rational as Ring>::zero());
    Series::from_coeffs(v)
}

fn zpoly_series(coeffs: &[&[i64]], order: usize) -> Series<ZPoly> {
    let mut v: Vec<ZPoly> = coeffs.iter().map(|c| zp(c)).collect();
    v.resize(order + 1, <ZPoly as Ring>::zero());
    Series::from_coeffs(v)
}

// ---------------------------------------------------------------------------
// frozen series (outer index = power of g, inner arrays = z-coefficients)
// ---------------------------------------------------------------------------

pub const X_GENERAL_UNI: [i64; 9] = [0, 1, 7, 59, 544, 5289, 53256, 549771, 5782105];
pub const X_BIPARTITE_UNI: [i64; 9] = [0, 1, 4, 21, 124, 782, 5144, 34845, 241196];

pub const G222_GENERAL_UNI: [i64; 9] = [0, 0, 0, 2, 39, 558, 7123, 86139, 1011954];
pub const G111_GENERAL_UNI: [i64; 9] = [0, 0, 0, 1, 15, 174, 1867, 19482, 201450];
pub const G222_BIPARTITE_UNI: [i64; 9] = [0, 0, 0, 2, 21, 174, 1336, 9942, 72966];

pub const X_GENERAL_BIV: [&[i64]; 7] = [
    &[],
    &[1],
    &[2, 5],
    &[5, 31, 23],
    &[14, 153, 275, 102],
    &[42, 696, 2170, 1938, 443],
    &[132, 3042, 14212, 21937, 12035, 1898],
];

/// alpha for general maps; row k is the z-expansion of the g^k coefficient.
/// Row 3 is z(1-z)(49+51z+4z^2) = 49z + 2z^2 - 47z^3 - 4z^4.
pub const ALPHA_GENERAL_BIV: [&[i64]; 7] = [
    &[0, 1],
    &[0, 3, -3],
    &[0, 12, -9, -3],
    &[0, 49, 2, -47, -4],
    &[0, 201, 249, -264, -180, -6],
    &[0, 825, 2289, -249, -2208, -648, -9],
    &[0, 3384, 15581, 10782, -14096, -13341, -2299, -11],
];

pub const X_BIPARTITE_BIV: [&[i64]; 7] = [
    &[],
    &[1],
    &[2, 2],
    &[5, 13, 3],
    &[14, 66, 40, 4],
    &[42, 306, 339, 90, 5],
    &[132, 1356, 2336, 1144, 170, 6],
];

pub const ALPHA_BIPARTITE_BIV: [&[i64]; 7] = [
    &[0, 1],
    &[0, 2, -2],
    &[0, 8, -9, 1],
    &[0, 32, -32],
    &[0, 129, -87, -42],
    &[0, 522, -94, -376, -52],
    &[0, 2116, 977, -2135, -896, -62],
];

pub const G222_GENERAL_BIV: [&[i64]; 7] = [
    &[],
    &[],
    &[],
    &[0, 2],
    &[0, 12, 27],
    &[0, 54, 270, 234],
    &[0, 220, 1795, 3453, 1655],
];

pub const G111_GENERAL_BIV: [&[i64]; 7] = [
    &[],
    &[],
    &[],
    &[0, 0, 1],
    &[0, 0, 6, 9],
    &[0, 0, 27, 90, 57],
    &[0, 0, 110, 600, 845, 312],
];

pub const G222_BIPARTITE_BIV: [&[i64]; 7] = [
    &[],
    &[],
    &[],
    &[0, 2],
    &[0, 12, 9],
    &[0, 54, 96, 24],
    &[0, 220, 667, 399, 50],
];

pub fn alpha_discrepancy_note() -> String {
    "the g^3 coefficient is z(1-z)(49+51z+4z^2): the trailing term is 4z^2, not \
     4z^4; the solver output is pinned by back-substitution, which reproduces g \
     and z exactly to the truncation order"
        .to_string()
}

// ---------------------------------------------------------------------------
// runner
// ---------------------------------------------------------------------------

fn check_series<R: Ring>(name: &str, got: &Series<R>, want: &Series<R>) -> GoldenCheck {
    let pass = got == want;
    let detail = if pass {
        format!("{got}")
    } else {
        format!("got {got}, want {want}")
    };
    GoldenCheck {
        name: name.to_string(),
        pass,
        detail,
    }
}

fn check_f64(name: &str, got: f64, want: f64, tol: f64) -> GoldenCheck {
    let pass = (got - want).abs() <= tol * want.abs().max(1.0);
    GoldenCheck {
        name: name.to_string(),
        pass,
        detail: format!("got {got:.15}, want {want:.15}"),
    }
}

/// Recomputes every frozen reference value and reports pass/fail per item.
pub fn run_reference_checks() -> Vec<GoldenCheck> {
    let mut out = Vec::new();

    let uni_gen = solve_x_univariate(MapClass::General, 8);
    let uni_bip = solve_x_univariate(MapClass::Bipartite, 8);
    out.push(check_series(
        "x(g), general, to g^8",
        uni_gen.x(),
        &rational_series(&X_GENERAL_UNI, 8),
    ));
    out.push(check_series(
        "x(g), bipartite, to g^8",
        uni_bip.x(),
        &rational_series(&X_BIPARTITE_UNI, 8),
    ));

    let g222 = three_point(&uni_gen, &DistanceSpec::triple(2, 2, 2).unwrap()).unwrap();
    let g111 = three_point(&uni_gen, &DistanceSpec::triple(1, 1, 1).unwrap()).unwrap();
    let gt222 = three_point(&uni_bip, &DistanceSpec::triple(2, 2, 2).unwrap()).unwrap();
    out.push(check_series(
        "G_{2,2,2}(g), general, to g^8",
        &g222,
        &rational_series(&G222_GENERAL_UNI, 8),
    ));
    out.push(check_series(
        "G_{1,1,1}(g), general, to g^8",
        &g111,
        &rational_series(&G111_GENERAL_UNI, 8),
    ));
    out.push(check_series(
        "G_{2,2,2}(g), bipartite, to g^8",
        &gt222,
        &rational_series(&G222_BIPARTITE_UNI, 8),
    ));

    let biv_gen = solve_params_bivariate(MapClass::General, 6);
    let biv_bip = solve_params_bivariate(MapClass::Bipartite, 6);
    out.push(check_series(
        "x(g,z), general, to g^6",
        biv_gen.x(),
        &zpoly_series(&X_GENERAL_BIV, 6),
    ));
    let mut alpha_check = check_series(
        "alpha(g,z), general, to g^6",
        biv_gen.alpha(),
        &zpoly_series(&ALPHA_GENERAL_BIV, 6),
    );
    alpha_check.detail = format!("{} [note: {}]", alpha_check.detail, alpha_discrepancy_note());
    out.push(alpha_check);
    out.push(check_series(
        "x(g,z), bipartite, to g^6",
        biv_bip.x(),
        &zpoly_series(&X_BIPARTITE_BIV, 6),
    ));
    out.push(check_series(
        "alpha(g,z), bipartite, to g^6",
        biv_bip.alpha(),
        &zpoly_series(&ALPHA_BIPARTITE_BIV, 6),
    ));

    let g222b = three_point(&biv_gen, &DistanceSpec::triple(2, 2, 2).unwrap()).unwrap();
    let g111b = three_point(&biv_gen, &DistanceSpec::triple(1, 1, 1).unwrap()).unwrap();
    let gt222b = three_point(&biv_bip, &DistanceSpec::triple(2, 2, 2).unwrap()).unwrap();
    out.push(check_series(
        "G_{2,2,2}(g,z), general, to g^6",
        &g222b,
        &zpoly_series(&G222_GENERAL_BIV, 6),
    ));
    out.push(check_series(
        "G_{1,1,1}(g,z), general, to g^6",
        &g111b,
        &zpoly_series(&G111_GENERAL_BIV, 6),
    ));
    out.push(check_series(
        "G_{2,2,2}(g,z), bipartite, to g^6",
        &gt222b,
        &zpoly_series(&G222_BIPARTITE_BIV, 6),
    ));

    let g1 = two_point(&biv_gen, &DistanceSpec::pair(1).unwrap(), Route::Direct).unwrap();
    out.push(GoldenCheck {
        name: "[g^1] G_1(g,z), general = z".into(),
        pass: g1.coeff(1) == ZPoly::z(),
        detail: format!("{}", g1.coeff(1)),
    });

    let tol = 1e-12;
    match scaling::critical_point(MapClass::General, 1.0) {
        Ok(cp) => {
            out.push(check_f64("g_crit(1), general = 1/12", cp.g_crit, 1.0 / 12.0, tol));
            out.push(check_f64(
                "gamma(1), general = sqrt(3/2)",
                cp.gamma,
                (1.5f64).sqrt(),
                tol,
            ));
        }
        Err(e) => out.push(GoldenCheck {
            name: "critical point, general, z=1".into(),
            pass: false,
            detail: e.to_string(),
        }),
    }
    match scaling::critical_point(MapClass::Bipartite, 1.0) {
        Ok(cp) => {
            out.push(check_f64("g_crit(1), bipartite = 1/8", cp.g_crit, 0.125, tol));
            out.push(check_f64("gamma(1), bipartite = 1", cp.gamma, 1.0, tol));
        }
        Err(e) => out.push(GoldenCheck {
            name: "critical point, bipartite, z=1".into(),
            pass: false,
            detail: e.to_string(),
        }),
    }
    match scaling::observables(MapClass::General, 1.0) {
        Ok(obs) => {
            out.push(check_f64(
                "geodesic vertices, general z=1 = 3/2",
                obs.n_geod_vertices,
                1.5,
                tol,
            ));
            out.push(check_f64(
                "geodesic edges, general z=1 = 2",
                obs.n_geod_edges.unwrap_or(f64::NAN),
                2.0,
                tol,
            ));
            out.push(check_f64(
                "vertex fraction, general z=1 = 1/2",
                obs.n_v_fraction,
                0.5,
                tol,
            ));
        }
        Err(e) => out.push(GoldenCheck {
            name: "observables, general, z=1".into(),
            pass: false,
            detail: e.to_string(),
        }),
    }
    match scaling::observables(MapClass::Bipartite, 1.0) {
        Ok(obs) => {
            out.push(check_f64(
                "geodesic vertices, bipartite z=1 = 2",
                obs.n_geod_vertices,
                2.0,
                tol,
            ));
            out.push(check_f64(
                "vertex fraction, bipartite z=1 = 2/3",
                obs.n_v_fraction,
                2.0 / 3.0,
                tol,
            ));
        }
        Err(e) => out.push(GoldenCheck {
            name: "observables, bipartite, z=1".into(),
            pass: false,
            detail: e.to_string(),
        }),
    }

    out
}
