//! Coefficient-exact verification of every recursion relation and cross-check
//! identity characterizing the generating-function families.
//!
//! Identities are verified over finite index ranges at fixed truncation orders,
//! by substituting the closed forms into both sides and requiring the difference
//! to vanish exactly. Reports carry the first failing index tuple and g-order.

use std::fmt;
use std::str::FromStr;

use crate::formulas::{
    family_g_d, family_n, family_r, family_t, family_u, family_w, family_x, family_y,
    three_point, tree_limit_three_point, two_point, DistanceSpec, Parity, Route,
};
use crate::params::{solve_params_bivariate, solve_x_univariate, MapClass, ParamSolution};
use crate::ring::{Rational, Ring, ZPoly};
use crate::series::Series;

/// The verifiable identities, one entry per recursion or cross-check.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum IdentityId {
    RecurX,
    XToN,
    RecurN,
    RecurY,
    RecurNBiv,
    DstClosed,
    RecurYBiv,
    RecurXTilde,
    RecurXTildeBiv,
    RecurYTilde,
    RecurYTildeBiv,
    RouteEquivalence,
    Telescoping,
    ProductFormulaR,
    TreeLimitEven,
    TreeLimitOdd,
    TreeLimitBip,
}

pub const ALL_IDENTITIES: [IdentityId; 17] = [
    IdentityId::RecurX,
    IdentityId::XToN,
    IdentityId::RecurN,
    IdentityId::RecurY,
    IdentityId::RecurNBiv,
    IdentityId::DstClosed,
    IdentityId::RecurYBiv,
    IdentityId::RecurXTilde,
    IdentityId::RecurXTildeBiv,
    IdentityId::RecurYTilde,
    IdentityId::RecurYTildeBiv,
    IdentityId::RouteEquivalence,
    IdentityId::Telescoping,
    IdentityId::ProductFormulaR,
    IdentityId::TreeLimitEven,
    IdentityId::TreeLimitOdd,
    IdentityId::TreeLimitBip,
];

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IdentityId::RecurX => "recurX",
            IdentityId::XToN => "XtoN",
            IdentityId::RecurN => "recurN",
            IdentityId::RecurY => "recurY",
            IdentityId::RecurNBiv => "recurNbiv",
            IdentityId::DstClosed => "DstClosed",
            IdentityId::RecurYBiv => "recurYbiv",
            IdentityId::RecurXTilde => "recurXtilde",
            IdentityId::RecurXTildeBiv => "recurXtildeBiv",
            IdentityId::RecurYTilde => "recurYtilde",
            IdentityId::RecurYTildeBiv => "recurYtildeBiv",
            IdentityId::RouteEquivalence => "routeEquivalence",
            IdentityId::Telescoping => "telescoping",
            IdentityId::ProductFormulaR => "productFormulaR",
            IdentityId::TreeLimitEven => "treeLimitEven",
            IdentityId::TreeLimitOdd => "treeLimitOdd",
            IdentityId::TreeLimitBip => "treeLimitBip",
        };
        write!(f, "{s}")
    }
}

impl FromStr for IdentityId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL_IDENTITIES
            .iter()
            .find(|id| id.to_string() == s)
            .copied()
            .ok_or_else(|| format!("unknown identity {s:?}"))
    }
}

/// Index ranges and truncation orders for a verification run.
#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub uni_order: usize,
    pub biv_order: usize,
    pub uni_max_index: usize,
    pub biv_max_index: usize,
    pub tree_order: usize,
    pub route_max_distance: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            uni_order: 16,
            biv_order: 10,
            uni_max_index: 5,
            biv_max_index: 3,
            tree_order: 12,
            route_max_distance: 6,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Failure {
    pub indices: Vec<i64>,
    pub g_order: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub id: IdentityId,
    pub pass: bool,
    pub cases: usize,
    pub first_failure: Option<Failure>,
}

impl VerificationReport {
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "identity": self.id.to_string(),
            "status": if self.pass { "pass" } else { "fail" },
            "cases": self.cases,
        });
        if let Some(f) = &self.first_failure {
            v["first_failure"] = serde_json::json!({
                "indices": f.indices,
                "g_order": f.g_order,
                "lhs": f.lhs,
                "rhs": f.rhs,
            });
        }
        v
    }
}

struct Checker {
    id: IdentityId,
    cases: usize,
    failure: Option<Failure>,
}

impl Checker {
    fn new(id: IdentityId) -> Self {
        Checker {
            id,
            cases: 0,
            failure: None,
        }
    }

    fn check<R: Ring>(&mut self, indices: &[i64], lhs: &Series<R>, rhs: &Series<R>) {
        self.cases += 1;
        if self.failure.is_some() {
            return;
        }
        for k in 0..=lhs.order().min(rhs.order()) {
            let (a, b) = (lhs.coeff(k), rhs.coeff(k));
            if a != b {
                self.failure = Some(Failure {
                    indices: indices.to_vec(),
                    g_order: k,
                    lhs: a.to_string(),
                    rhs: b.to_string(),
                });
                return;
            }
        }
    }

    fn report(self) -> VerificationReport {
        VerificationReport {
            id: self.id,
            pass: self.failure.is_none(),
            cases: self.cases,
            first_failure: self.failure,
        }
    }
}

// ---------------------------------------------------------------------------
// individual identities
// ---------------------------------------------------------------------------

fn x_of<R: Ring>(p: &ParamSolution<R>, s: usize, t: usize) -> Series<R> {
    family_x(p, s, t).expect("chain family defined in this regime")
}

/// Chain recursion with both block shapes: X = 1 + g T T X + g^2 T T X T' T' X'.
fn verify_recur_x(cfg: &VerifyConfig) -> VerificationReport {
    let p = solve_x_univariate(MapClass::General, cfg.uni_order);
    let one = Series::one(p.order());
    let mut c = Checker::new(IdentityId::RecurX);
    for s in 1..=cfg.uni_max_index {
        for t in 1..=cfg.uni_max_index {
            let x = x_of(&p, s, t);
            let tt = family_t(&p, s).mul(&family_t(&p, t));
            let tt1 = family_t(&p, s + 1).mul(&family_t(&p, t + 1));
            let rhs = one
                .add(&tt.mul(&x).shift_up(1))
                .add(&tt.mul(&x).mul(&tt1).mul(&x_of(&p, s + 1, t + 1)).shift_up(2));
            c.check(&[s as i64, t as i64], &x, &rhs);
        }
    }
    c.report()
}

/// N = X / (1 + g T T X): the equal-label spine edges are factored out.
fn verify_x_to_n(cfg: &VerifyConfig) -> VerificationReport {
    let p = solve_x_univariate(MapClass::General, cfg.uni_order);
    let one = Series::one(p.order());
    let mut c = Checker::new(IdentityId::XToN);
    for s in 1..=cfg.uni_max_index {
        for t in 1..=cfg.uni_max_index {
            let x = x_of(&p, s, t);
            let tt = family_t(&p, s).mul(&family_t(&p, t));
            let rhs = x
                .div(&one.add(&tt.mul(&x).shift_up(1)))
                .expect("unit constant term");
            c.check(&[s as i64, t as i64], &family_n(&p, s, t), &rhs);
        }
    }
    c.report()
}

/// Residual of the no-equal-label chain recursion; exposed so a perturbed
/// chain family can be fed in (the mutation test relies on it).
pub(crate) fn recur_n_residual(
    p: &ParamSolution<Rational>,
    n_of: &dyn Fn(usize, usize) -> Series<Rational>,
    s: usize,
    t: usize,
) -> Series<Rational> {
    let one = Series::one(p.order());
    let inner = family_t(p, s + 1)
        .mul(&family_t(p, t + 1))
        .mul(&n_of(s + 1, t + 1));
    let rhs = one.add(
        &family_t(p, s)
            .mul(&family_t(p, t))
            .mul(&n_of(s, t))
            .mul(&inner)
            .shift_up(2)
            .div(&one.sub(&inner.shift_up(1)))
            .expect("unit constant term"),
    );
    n_of(s, t).sub(&rhs)
}

fn verify_recur_n(cfg: &VerifyConfig) -> VerificationReport {
    let p = solve_x_univariate(MapClass::General, cfg.uni_order);
    let zero = Series::zero(p.order());
    let mut c = Checker::new(IdentityId::RecurN);
    for s in 1..=cfg.uni_max_index {
        for t in 1..=cfg.uni_max_index {
            let res = recur_n_residual(&p, &|a, b| family_n(&p, a, b), s, t);
            c.check(&[s as i64, t as i64], &res, &zero);
        }
    }
    c.report()
}

/// Three-branch recursion, general or bipartite trees/chains depending on class.
fn verify_recur_y(cfg: &VerifyConfig, class: MapClass, id: IdentityId) -> VerificationReport {
    let p = solve_x_univariate(class, cfg.uni_order);
    let one = Series::one(p.order());
    let mut c = Checker::new(id);
    let m = cfg.uni_max_index;
    for s in 1..=m {
        for t in 1..=m {
            for u in 1..=m {
                let prod = family_t(&p, s)
                    .mul(&family_t(&p, t))
                    .mul(&family_t(&p, u))
                    .mul(&x_of(&p, s + 1, t + 1))
                    .mul(&x_of(&p, s + 1, u + 1))
                    .mul(&x_of(&p, t + 1, u + 1))
                    .mul(&family_t(&p, s + 1))
                    .mul(&family_t(&p, t + 1))
                    .mul(&family_t(&p, u + 1))
                    .mul(&family_y(&p, s + 1, t + 1, u + 1));
                let rhs = one.add(&prod.shift_up(3));
                c.check(&[s as i64, t as i64, u as i64], &family_y(&p, s, t, u), &rhs);
            }
        }
    }
    c.report()
}

/// Chain recursion for equal-increment labellings: X = 1 + g^2 T T X T' T' X'.
fn verify_recur_x_tilde(cfg: &VerifyConfig) -> VerificationReport {
    let p = solve_x_univariate(MapClass::Bipartite, cfg.uni_order);
    let one = Series::one(p.order());
    let mut c = Checker::new(IdentityId::RecurXTilde);
    for s in 1..=cfg.uni_max_index {
        for t in 1..=cfg.uni_max_index {
            let x = x_of(&p, s, t);
            let rhs = one.add(
                &family_t(&p, s)
                    .mul(&family_t(&p, t))
                    .mul(&x)
                    .mul(&family_t(&p, s + 1))
                    .mul(&family_t(&p, t + 1))
                    .mul(&x_of(&p, s + 1, t + 1))
                    .shift_up(2),
            );
            c.check(&[s as i64, t as i64], &x, &rhs);
        }
    }
    c.report()
}

fn z_minus_one(order: usize) -> Series<ZPoly> {
    Series::constant(
        ZPoly::z().sub(&<ZPoly as Ring>::one()),
        order,
    )
}

/// Face-weight chain recursion via the block family D.
fn verify_recur_n_biv(cfg: &VerifyConfig) -> VerificationReport {
    let p = solve_params_bivariate(MapClass::General, cfg.biv_order);
    let one = Series::one(p.order());
    let mut c = Checker::new(IdentityId::RecurNBiv);
    for s in 1..=cfg.biv_max_index {
        for t in 1..=cfg.biv_max_index {
            let n = family_n(&p, s, t);
            let gd1 = family_g_d(&p, s + 1, t + 1).unwrap();
            let rhs = one.add(
                &family_u(&p, s)
                    .mul(&family_u(&p, t))
                    .mul(&n)
                    .shift_up(1)
                    .mul(&gd1)
                    .div(&one.sub(&gd1))
                    .expect("unit constant term"),
            );
            c.check(&[s as i64, t as i64], &n, &rhs);
        }
    }
    c.report()
}

/// g D = g (U U N + (z-1) W W) equals its single closed bracket form.
fn verify_dst_closed(cfg: &VerifyConfig) -> VerificationReport {
    let p = solve_params_bivariate(MapClass::General, cfg.biv_order);
    let zm1 = z_minus_one(p.order());
    let mut c = Checker::new(IdentityId::DstClosed);
    for s in 1..=cfg.biv_max_index {
        for t in 1..=cfg.biv_max_index {
            let parts = family_u(&p, s)
                .mul(&family_u(&p, t))
                .mul(&family_n(&p, s, t))
                .add(&zm1.mul(&family_w(&p, s)).mul(&family_w(&p, t)))
                .shift_up(1);
            let closed = family_g_d(&p, s, t).unwrap();
            c.check(&[s as i64, t as i64], &parts, &closed);
        }
    }
    c.report()
}

/// Face-weight three-branch recursion for general maps, with the local-max
/// correction term.
fn verify_recur_y_biv(cfg: &VerifyConfig) -> VerificationReport {
    let p = solve_params_bivariate(MapClass::General, cfg.biv_order);
    let one = Series::one(p.order());
    let zm1 = z_minus_one(p.order());
    let mut c = Checker::new(IdentityId::RecurYBiv);
    let m = cfg.biv_max_index;
    for s in 1..=m {
        for t in 1..=m {
            for u in 1..=m {
                let block = |a: usize, b: usize| {
                    one.div(&one.sub(&family_g_d(&p, a, b).unwrap()))
                        .expect("unit constant term")
                };
                let big = family_n(&p, s + 1, t + 1)
                    .mul(&family_n(&p, s + 1, u + 1))
                    .mul(&family_n(&p, t + 1, u + 1))
                    .mul(&family_u(&p, s + 1))
                    .mul(&family_u(&p, t + 1))
                    .mul(&family_u(&p, u + 1))
                    .mul(&family_y(&p, s + 1, t + 1, u + 1))
                    .add(
                        &zm1.mul(&family_w(&p, s + 1))
                            .mul(&family_w(&p, t + 1))
                            .mul(&family_w(&p, u + 1)),
                    );
                let rhs = one.add(
                    &family_u(&p, s)
                        .mul(&family_u(&p, t))
                        .mul(&family_u(&p, u))
                        .mul(&block(s + 1, t + 1))
                        .mul(&block(s + 1, u + 1))
                        .mul(&block(t + 1, u + 1))
                        .mul(&big)
                        .shift_up(3),
                );
                c.check(&[s as i64, t as i64, u as i64], &family_y(&p, s, t, u), &rhs);
            }
        }
    }
    c.report()
}

/// Face-weight chain recursion for bipartite maps. The correction term carries
/// the shifted indices W_{s+1} W_{t+1}, matching the label shift of the middle
/// portion (an unshifted variant fails at order g^3 already).
fn verify_recur_x_tilde_biv(cfg: &VerifyConfig) -> VerificationReport {
    let p = solve_params_bivariate(MapClass::Bipartite, cfg.biv_order);
    let one = Series::one(p.order());
    let zm1 = z_minus_one(p.order());
    let mut c = Checker::new(IdentityId::RecurXTildeBiv);
    for s in 1..=cfg.biv_max_index {
        for t in 1..=cfg.biv_max_index {
            let x = x_of(&p, s, t);
            let inner = family_u(&p, s + 1)
                .mul(&family_u(&p, t + 1))
                .mul(&x_of(&p, s + 1, t + 1))
                .add(&zm1.mul(&family_w(&p, s + 1)).mul(&family_w(&p, t + 1)));
            let rhs = one.add(
                &family_u(&p, s)
                    .mul(&family_u(&p, t))
                    .mul(&x)
                    .mul(&inner)
                    .shift_up(2),
            );
            c.check(&[s as i64, t as i64], &x, &rhs);
        }
    }
    c.report()
}

/// Face-weight three-branch recursion for bipartite maps.
fn verify_recur_y_tilde_biv(cfg: &VerifyConfig) -> VerificationReport {
    let p = solve_params_bivariate(MapClass::Bipartite, cfg.biv_order);
    let one = Series::one(p.order());
    let zm1 = z_minus_one(p.order());
    let mut c = Checker::new(IdentityId::RecurYTildeBiv);
    let m = cfg.biv_max_index;
    for s in 1..=m {
        for t in 1..=m {
            for u in 1..=m {
                let big = x_of(&p, s + 1, t + 1)
                    .mul(&x_of(&p, s + 1, u + 1))
                    .mul(&x_of(&p, t + 1, u + 1))
                    .mul(&family_u(&p, s + 1))
                    .mul(&family_u(&p, t + 1))
                    .mul(&family_u(&p, u + 1))
                    .mul(&family_y(&p, s + 1, t + 1, u + 1))
                    .add(
                        &zm1.mul(&family_w(&p, s + 1))
                            .mul(&family_w(&p, t + 1))
                            .mul(&family_w(&p, u + 1)),
                    );
                let rhs = one.add(
                    &family_u(&p, s)
                        .mul(&family_u(&p, t))
                        .mul(&family_u(&p, u))
                        .mul(&big)
                        .shift_up(3),
                );
                c.check(&[s as i64, t as i64, u as i64], &family_y(&p, s, t, u), &rhs);
            }
        }
    }
    c.report()
}

/// All routes that exist in a regime agree for every admissible split. Bipartite
/// maps have no equal-label border configurations, so no type-B route there.
fn verify_route_equivalence(cfg: &VerifyConfig) -> VerificationReport {
    let mut c = Checker::new(IdentityId::RouteEquivalence);
    fn run<R: Ring>(
        c: &mut Checker,
        p: &ParamSolution<R>,
        regime_code: i64,
        max_d: usize,
    ) {
        for d in 1..=max_d {
            let spec = DistanceSpec::pair(d).unwrap();
            let direct = two_point(p, &spec, Route::Direct).unwrap();
            for s in 1..d {
                let via_a = two_point(p, &spec, Route::TypeA { split: Some(s) }).unwrap();
                c.check(&[regime_code, d as i64, s as i64, 0], &direct, &via_a);
            }
            if p.class == MapClass::General {
                for s in 1..=d {
                    let via_b = two_point(p, &spec, Route::TypeB { split: Some(s) }).unwrap();
                    c.check(&[regime_code, d as i64, s as i64, 1], &direct, &via_b);
                }
            }
        }
    }
    run(
        &mut c,
        &solve_x_univariate(MapClass::General, cfg.uni_order),
        0,
        cfg.route_max_distance,
    );
    run(
        &mut c,
        &solve_x_univariate(MapClass::Bipartite, cfg.uni_order),
        1,
        cfg.route_max_distance,
    );
    run(
        &mut c,
        &solve_params_bivariate(MapClass::General, cfg.biv_order),
        2,
        cfg.route_max_distance,
    );
    run(
        &mut c,
        &solve_params_bivariate(MapClass::Bipartite, cfg.biv_order),
        3,
        cfg.route_max_distance,
    );
    c.report()
}

/// Partial sums of the two-point function telescope to log(1 + g T_D T_{D+1}).
fn verify_telescoping(cfg: &VerifyConfig) -> VerificationReport {
    let mut c = Checker::new(IdentityId::Telescoping);
    for (code, class) in [(0i64, MapClass::General), (1, MapClass::Bipartite)] {
        let p = solve_x_univariate(class, cfg.uni_order);
        let mut acc = Series::zero(p.order());
        for d in 1..=cfg.uni_max_index {
            acc = acc.add(&two_point(&p, &DistanceSpec::pair(d).unwrap(), Route::Direct).unwrap());
            let rhs = family_r(&p, d).unwrap().log().unwrap();
            c.check(&[code, d as i64], &acc, &rhs);
        }
    }
    c.report()
}

/// N_{s,t} (or the bipartite chain) times the partial products of R equals the
/// full product up to s + t.
fn verify_product_formula(cfg: &VerifyConfig) -> VerificationReport {
    let mut c = Checker::new(IdentityId::ProductFormulaR);
    for (code, class) in [(0i64, MapClass::General), (1, MapClass::Bipartite)] {
        let p = solve_x_univariate(class, cfg.uni_order);
        let r_prod = |up_to: usize| {
            let mut acc = Series::one(p.order());
            for u in 1..=up_to {
                acc = acc.mul(&family_r(&p, u).unwrap());
            }
            acc
        };
        for s in 1..=4usize {
            for t in 1..=4usize {
                let lhs = family_n(&p, s, t).mul(&r_prod(s)).mul(&r_prod(t));
                let rhs = r_prod(s + t);
                c.check(&[code, s as i64, t as i64], &lhs, &rhs);
            }
        }
    }
    c.report()
}

/// Leading z-order of the face-weight three-point functions against the closed
/// minimal-face-count forms.
fn verify_tree_limit(cfg: &VerifyConfig, id: IdentityId) -> VerificationReport {
    let order = cfg.tree_order;
    let mut c = Checker::new(id);
    let m = cfg.biv_max_index;
    let (class, parity, z_order) = match id {
        IdentityId::TreeLimitEven => (MapClass::General, Parity::Even, 1),
        IdentityId::TreeLimitOdd => (MapClass::General, Parity::Odd, 2),
        IdentityId::TreeLimitBip => (MapClass::Bipartite, Parity::Even, 1),
        _ => unreachable!(),
    };
    let p = solve_params_bivariate(class, order);
    for s in 1..=m {
        for t in 1..=m {
            for u in 1..=m {
                let spec = match parity {
                    Parity::Even => DistanceSpec::triple(s + t, s + u, t + u),
                    Parity::Odd => DistanceSpec::triple(s + t - 1, s + u - 1, t + u - 1),
                }
                .unwrap();
                let g = three_point(&p, &spec).unwrap();
                let lhs = g.z_coeff(z_order);
                let rhs = tree_limit_three_point(parity, [s, t, u], order).unwrap();
                c.check(&[s as i64, t as i64, u as i64], &lhs, &rhs);
            }
        }
    }
    c.report()
}

// ---------------------------------------------------------------------------
// entry points
// ---------------------------------------------------------------------------

pub fn verify(id: IdentityId, cfg: &VerifyConfig) -> VerificationReport {
    match id {
        IdentityId::RecurX => verify_recur_x(cfg),
        IdentityId::XToN => verify_x_to_n(cfg),
        IdentityId::RecurN => verify_recur_n(cfg),
        IdentityId::RecurY => verify_recur_y(cfg, MapClass::General, IdentityId::RecurY),
        IdentityId::RecurNBiv => verify_recur_n_biv(cfg),
        IdentityId::DstClosed => verify_dst_closed(cfg),
        IdentityId::RecurYBiv => verify_recur_y_biv(cfg),
        IdentityId::RecurXTilde => verify_recur_x_tilde(cfg),
        IdentityId::RecurXTildeBiv => verify_recur_x_tilde_biv(cfg),
        IdentityId::RecurYTilde => verify_recur_y(cfg, MapClass::Bipartite, IdentityId::RecurYTilde),
        IdentityId::RecurYTildeBiv => verify_recur_y_tilde_biv(cfg),
        IdentityId::RouteEquivalence => verify_route_equivalence(cfg),
        IdentityId::Telescoping => verify_telescoping(cfg),
        IdentityId::ProductFormulaR => verify_product_formula(cfg),
        IdentityId::TreeLimitEven => verify_tree_limit(cfg, IdentityId::TreeLimitEven),
        IdentityId::TreeLimitOdd => verify_tree_limit(cfg, IdentityId::TreeLimitOdd),
        IdentityId::TreeLimitBip => verify_tree_limit(cfg, IdentityId::TreeLimitBip),
    }
}

pub fn verify_all(cfg: &VerifyConfig) -> Vec<VerificationReport> {
    ALL_IDENTITIES.iter().map(|&id| verify(id, cfg)).collect()
}
