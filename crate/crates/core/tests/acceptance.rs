//! Acceptance suite: one test per gate criterion, each printing a verdict line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use mapdist_core::bijection;
use mapdist_core::formulas::{three_point, two_point, DistanceSpec, Route};
use mapdist_core::goldens;
use mapdist_core::identities::{self, IdentityId, VerifyConfig};
use mapdist_core::oracle::{self, PointedKind};
use mapdist_core::params::{solve_params_bivariate, MapClass};
use mapdist_core::ring::{Ring, ZPoly};
use mapdist_core::scaling;

fn verdict(n: u32, pass: bool, detail: &str) {
    println!(
        "criterion {n}: {} - {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {n} failed: {detail}");
}

/// Exact golden expansions, byte-equal to the frozen references, plus the
/// documented alpha-coefficient discrepancy note.
#[test]
fn acceptance_1_golden_series() {
    let t0 = std::time::Instant::now();
    let checks = goldens::run_reference_checks();
    let series_checks: Vec<_> = checks
        .iter()
        .filter(|c| !c.name.contains("z=1") && !c.name.contains("(1)"))
        .collect();
    let failed: Vec<_> = series_checks.iter().filter(|c| !c.pass).collect();
    for f in &failed {
        println!("  golden mismatch [{}]: {}", f.name, f.detail);
    }
    let alpha_note = checks
        .iter()
        .find(|c| c.name.starts_with("alpha(g,z), general"))
        .map(|c| c.detail.contains("4z^2, not 4z^4"))
        .unwrap_or(false);
    let elapsed = t0.elapsed();
    verdict(
        1,
        failed.is_empty() && alpha_note && elapsed.as_secs() < 10,
        &format!(
            "{} golden expansions byte-equal, alpha g^3 discrepancy documented, {:.2?}",
            series_checks.len(),
            elapsed
        ),
    );
}

/// All seventeen identities pass coefficient-exactly at the default ranges.
#[test]
fn acceptance_2_identity_suite() {
    let t0 = std::time::Instant::now();
    let cfg = VerifyConfig::default();
    let reports = identities::verify_all(&cfg);
    assert_eq!(reports.len(), 17);
    let mut all = true;
    for r in &reports {
        if !r.pass {
            all = false;
            println!("  identity {} failed: {:?}", r.id, r.first_failure);
        }
    }
    let elapsed = t0.elapsed();
    verdict(
        2,
        all && elapsed.as_secs() < 60,
        &format!("17 identities, orders 16/10, indices 5/3, {elapsed:.2?}"),
    );
}

/// All two-point routes that exist in a regime agree over every index split at
/// order 16. Bipartite maps admit no type-B route (no equal-label border
/// configurations exist); both natural candidates for one were checked and
/// differ from the two-point function at order g^3 already.
#[test]
fn acceptance_3_route_equivalence() {
    let cfg = VerifyConfig {
        uni_order: 16,
        biv_order: 16,
        route_max_distance: 6,
        ..VerifyConfig::default()
    };
    let report = identities::verify(IdentityId::RouteEquivalence, &cfg);
    verdict(
        3,
        report.pass,
        &format!(
            "{} route comparisons at order 16, d <= 6, all splits ({:?})",
            report.cases, report.first_failure
        ),
    );
}

/// Every weighted oracle table entry equals the corresponding exact series
/// coefficient for n <= 5, general and bipartite, both parities and aligned
/// triples included; and the per-n totals agree (the sum rule).
#[test]
fn acceptance_4_oracle_equivalence() {
    let t0 = std::time::Instant::now();
    let max_edges = 5usize;
    let zero = <ZPoly as Ring>::zero();
    let mut entries = 0usize;
    let mut mismatches = vec![];
    for (bipartite, class) in [(false, MapClass::General), (true, MapClass::Bipartite)] {
        let p = solve_params_bivariate(class, max_edges);
        for n in 1..=max_edges {
            let bi = oracle::count_pointed(n, PointedKind::BiPointed, bipartite).unwrap();
            let tri = oracle::count_pointed(n, PointedKind::TriPointed, bipartite).unwrap();
            let mut visited = std::collections::BTreeSet::new();
            let mut series_total = zero.clone();
            for d in 1..=n {
                let series =
                    two_point(&p, &DistanceSpec::pair(d).unwrap(), Route::Direct).unwrap();
                let got = series.coeff(n);
                let want = bi.table.get(&vec![d as u32]).cloned().unwrap_or(zero.clone());
                entries += 1;
                if got != want {
                    mismatches.push(format!("bi {class} n={n} d={d}"));
                }
            }
            assert!(
                bi.table.keys().all(|k| (k[0] as usize) <= n),
                "oracle distances exceed the edge count"
            );
            for d12 in 1..=n {
                for d13 in 1..=n {
                    for d23 in 1..=n {
                        let Ok(spec) = DistanceSpec::triple(d12, d13, d23) else {
                            continue;
                        };
                        if bipartite && (d12 + d13 + d23) % 2 == 1 {
                            continue;
                        }
                        let got = three_point(&p, &spec).unwrap().coeff(n);
                        let key = vec![d12 as u32, d13 as u32, d23 as u32];
                        visited.insert(key.clone());
                        let want = tri.table.get(&key).cloned().unwrap_or(zero.clone());
                        entries += 1;
                        if got != want {
                            mismatches.push(format!("tri {class} n={n} d=({d12},{d13},{d23})"));
                        }
                        series_total = series_total.add(&got);
                    }
                }
            }
            // completeness: every oracle key was compared
            for key in tri.table.keys() {
                assert!(visited.contains(key), "oracle key {key:?} not covered");
            }
            // sum rule: totals agree
            let oracle_total = tri
                .table
                .values()
                .fold(zero.clone(), |acc, v| acc.add(v));
            if series_total != oracle_total {
                mismatches.push(format!("sum rule {class} n={n}"));
            }
        }
    }
    let elapsed = t0.elapsed();
    verdict(
        4,
        mismatches.is_empty() && elapsed.as_secs() < 300,
        &format!(
            "{entries} table entries vs series coefficients, n <= 5, both families \
             ({} mismatches), {elapsed:.2?}",
            mismatches.len()
        ),
    );
}

/// The root-edge generator reproduces the closed-formula counts for n = 1..7 and
/// agrees map-by-map with the rotation-system brute force for n <= 3; every map
/// satisfies the sphere relation.
#[test]
fn acceptance_5_generator_soundness() {
    let t0 = std::time::Instant::now();
    let levels = oracle::enumerate_levels(7).unwrap();
    let expected = [1usize, 2, 9, 54, 378, 2916, 24057, 208494];
    let mut pass = true;
    for n in 1..=7 {
        if levels[n].len() != expected[n] {
            println!("  count mismatch at n={n}: {} vs {}", levels[n].len(), expected[n]);
            pass = false;
        }
        for m in &levels[n] {
            if m.n_vertices() + m.n_faces() != m.n_edges() + 2 {
                pass = false;
            }
        }
    }
    for n in 1..=3 {
        let naive: std::collections::BTreeSet<Vec<u32>> = oracle::naive_rooted_maps(n)
            .unwrap()
            .iter()
            .map(|m| m.sigma_table().to_vec())
            .collect();
        let structured: std::collections::BTreeSet<Vec<u32>> = levels[n]
            .iter()
            .map(|m| oracle::relabel_from(m.sigma_table(), 0))
            .collect();
        if naive != structured {
            println!("  naive/structured mismatch at n={n}");
            pass = false;
        }
    }
    verdict(
        5,
        pass,
        &format!(
            "counts 2..208494 for n=1..7, map-by-map against brute force for n<=3, {:.2?}",
            t0.elapsed()
        ),
    );
}

/// The full rewriting suite over very-well-labelled quadrangulations with up to
/// three faces: injectivity and completeness, extrema/face and dual-edge
/// correspondences, the angular-sector property, the distance dichotomies, the
/// geodesic-passage property, and the independent count equalities.
#[test]
fn acceptance_6_bijection_suite() {
    let t0 = std::time::Instant::now();
    let mut all = true;
    let local = bijection::verify_local_rules(3).unwrap();
    for c in &local.checks {
        if !c.pass {
            println!("  local-rule check failed: {} {}", c.name, c.detail);
            all = false;
        }
    }
    for n in 1..=3 {
        let pointed = bijection::verify_pointed_bijections(n).unwrap();
        for c in &pointed.checks {
            if !c.pass {
                println!("  pointed check failed: {} {}", c.name, c.detail);
                all = false;
            }
        }
    }
    let elapsed = t0.elapsed();
    verdict(
        6,
        all && elapsed.as_secs() < 300,
        &format!(
            "{} local-rule checks and pointed suites at n <= 3, {elapsed:.2?}",
            local.checks.len()
        ),
    );
}

/// Closed-form scaling constants at z = 1 and the duality identities on a grid.
#[test]
fn acceptance_7_scaling_closed_forms() {
    let tol = 1e-12;
    let mut all = true;
    let mut expect = |name: &str, got: f64, want: f64, tol: f64| {
        if (got - want).abs() > tol * want.abs().max(1.0) {
            println!("  {name}: got {got}, want {want}");
            all = false;
        }
    };
    let cp = scaling::critical_point(MapClass::General, 1.0).unwrap();
    expect("g_crit(1) general", cp.g_crit, 1.0 / 12.0, tol);
    expect("gamma(1) general", cp.gamma, 1.5f64.sqrt(), tol);
    let cpb = scaling::critical_point(MapClass::Bipartite, 1.0).unwrap();
    expect("g_crit(1) bipartite", cpb.g_crit, 0.125, tol);
    expect("gamma(1) bipartite", cpb.gamma, 1.0, tol);
    let obs = scaling::observables(MapClass::General, 1.0).unwrap();
    expect("geodesic vertices general", obs.n_geod_vertices, 1.5, tol);
    expect("geodesic edges general", obs.n_geod_edges.unwrap(), 2.0, tol);
    expect("vertex fraction general", obs.n_v_fraction, 0.5, tol);
    let obsb = scaling::observables(MapClass::Bipartite, 1.0).unwrap();
    expect("geodesic vertices bipartite", obsb.n_geod_vertices, 2.0, tol);
    expect("vertex fraction bipartite", obsb.n_v_fraction, 2.0 / 3.0, tol);
    // duality over a z-grid at 1e-10
    for k in 1..=20 {
        let z = 0.2 * k as f64;
        let a = scaling::critical_point(MapClass::General, 1.0 / z).unwrap().g_crit;
        let b = scaling::critical_point(MapClass::General, z).unwrap().g_crit;
        expect(&format!("duality z={z:.1}"), a, z * b, 1e-10);
        let oa = scaling::observables(MapClass::General, z).unwrap();
        let ob = scaling::observables(MapClass::General, 1.0 / z).unwrap();
        expect(&format!("fraction exchange z={z:.1}"), oa.n_v_fraction, ob.n_f_fraction, 1e-10);
    }
    verdict(7, all, "critical constants to 1e-12, duality grid to 1e-10");
}

/// Discrete-to-continuum convergence at D = 1 for z in {0.5, 1, 2}: the relative
/// error must decrease strictly along eps = 0.05, 0.02, 0.01 and end below 5%;
/// and the analytic third derivative of the scaling function must match finite
/// differences to 1e-8 on a grid.
///
/// Measured once and for all: the z = 0.5 error at the finest eps is 5.58%, so
/// that sub-case fails the 5% bound as specified. The trend is strictly
/// decreasing and the limit value is confirmed by the z in {1, 2} cases and by
/// the independent derivative check, so the bound, not the formula, is the
/// obstruction; the failure is left visible on purpose.
#[test]
fn acceptance_8_convergence() {
    let t0 = std::time::Instant::now();
    let mut all = true;
    let mut lines = vec![];
    for z in [0.5, 1.0, 2.0] {
        let rows = scaling::convergence_table(
            MapClass::General,
            scaling::ConvergenceKind::TwoPoint,
            1.0,
            z,
            &[0.05, 0.02, 0.01],
            scaling::DistanceRounding::Ceil,
        )
        .unwrap();
        let decreasing = rows.windows(2).all(|w| w[1].rel_error < w[0].rel_error);
        let final_err = rows.last().unwrap().rel_error;
        lines.push(format!(
            "z={z}: errors {:.4} -> {:.4} -> {:.4}{}",
            rows[0].rel_error,
            rows[1].rel_error,
            rows[2].rel_error,
            if decreasing { "" } else { " NOT DECREASING" }
        ));
        if !decreasing {
            all = false;
        }
        if final_err >= 0.05 {
            println!("  z={z}: final relative error {final_err:.4} is not below 5%");
            all = false;
        }
    }
    // analytic vs finite-difference third derivative on a grid
    let mut fd_ok = true;
    for d12 in [0.8, 1.0, 1.4] {
        for d13 in [0.9, 1.1] {
            for d23 in [0.7, 1.2] {
                for class in [MapClass::General, MapClass::Bipartite] {
                    let Ok(an) = scaling::continuous_three_point(class, d12, d13, d23, 1.0)
                    else {
                        continue;
                    };
                    let fd =
                        scaling::continuous_three_point_fd(class, d12, d13, d23, 1.0).unwrap();
                    if ((an - fd) / an).abs() > 1e-8 {
                        println!("  derivative mismatch at ({d12},{d13},{d23}): {an} vs {fd}");
                        fd_ok = false;
                    }
                }
            }
        }
    }
    all &= fd_ok;
    let elapsed = t0.elapsed();
    verdict(
        8,
        all && elapsed.as_secs() < 30,
        &format!("{}; derivative grid {}", lines.join("; "), if fd_ok { "within 1e-8" } else { "FAILED" }),
    );
}

/// The leading z-order of the face-weight three-point functions matches the
/// minimal-face-count closed forms order-by-order at order 12.
#[test]
fn acceptance_9_tree_limits() {
    let cfg = VerifyConfig {
        tree_order: 12,
        biv_max_index: 3,
        ..VerifyConfig::default()
    };
    let mut all = true;
    let mut total = 0usize;
    for id in [
        IdentityId::TreeLimitEven,
        IdentityId::TreeLimitOdd,
        IdentityId::TreeLimitBip,
    ] {
        let r = identities::verify(id, &cfg);
        total += r.cases;
        if !r.pass {
            println!("  {} failed: {:?}", r.id, r.first_failure);
            all = false;
        }
    }
    verdict(
        9,
        all,
        &format!("{total} leading-order comparisons at order 12, branch lengths <= 3"),
    );
}
