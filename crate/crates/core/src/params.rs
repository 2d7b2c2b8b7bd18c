//! Order-by-order exact solution of the implicit parametrizations (x, and in the
//! face-weight ring also alpha) that underlie every closed-form generating function.
//!
//! All relations are used with denominators cleared, so each solver step is pure
//! polynomial arithmetic. Writing the cleared relations as F(x, alpha) = 0, the
//! coefficient of g^n in F depends on the nth unknowns only through a triangular
//! linear system with unit diagonal; one residual update per unknown per order
//! therefore converges, gaining one exact order per sweep.

use crate::ring::{Rational, Ring, ZPoly};
use crate::series::Series;

/// General maps (all face degrees) or bipartite maps (even face degrees).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MapClass {
    General,
    Bipartite,
}

impl std::fmt::Display for MapClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MapClass::General => write!(f, "general"),
            MapClass::Bipartite => write!(f, "bipartite"),
        }
    }
}

/// Whether the coefficient ring carries the face weight z.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variate {
    Univariate,
    Bivariate,
}

/// A solved parametrization: x (and alpha) as exact series in g, plus cached powers
/// of x so bracket evaluation stays cheap.
#[derive(Clone, Debug)]
pub struct ParamSolution<R: Ring> {
    pub class: MapClass,
    pub variate: Variate,
    order: usize,
    x: Series<R>,
    alpha: Series<R>,
    alpha_sq: Series<R>,
    x_pows: Vec<Series<R>>,
    t_pref: Series<R>,
    u_pref: Series<R>,
}

const POWER_CACHE: usize = 48;

impl<R: Ring> ParamSolution<R> {
    fn new(class: MapClass, variate: Variate, x: Series<R>, alpha: Series<R>) -> Self {
        let order = x.order();
        let mut x_pows = Vec::with_capacity(POWER_CACHE + 1);
        x_pows.push(Series::one(order));
        for k in 1..=POWER_CACHE {
            let next = x_pows[k - 1].mul(&x);
            x_pows.push(next);
        }
        let alpha_sq = alpha.mul(&alpha);
        let one = Series::one(order);
        let (t_pref, u_pref) = match class {
            MapClass::General => {
                let p = {
                    let ax = alpha.mul(&x);
                    let ax2 = alpha.mul(&x_pows[2]);
                    let ax3 = alpha.mul(&x_pows[3]);
                    let a2x3 = alpha_sq.mul(&x_pows[3]);
                    let a2x4 = alpha_sq.mul(&x_pows[4]);
                    one.add(&x)
                        .add(&ax)
                        .sub(&ax2.scale(&R::from_int(6)))
                        .add(&ax3)
                        .add(&a2x3)
                        .add(&a2x4)
                };
                let b1 = one.sub(&alpha.mul(&x));
                let b3 = one.sub(&alpha.mul(&x_pows[3]));
                let t = alpha
                    .mul(&one.sub(&x).pow(2))
                    .mul(&p)
                    .div(&b1.pow(3).mul(&b3))
                    .expect("unit constant term");
                let u = p.div(&b1.mul(&b3)).expect("unit constant term");
                (t, u)
            }
            MapClass::Bipartite => {
                let b1 = one.sub(&alpha.mul(&x));
                let b2 = one.sub(&alpha.mul(&x_pows[2]));
                let b4 = one.sub(&alpha.mul(&x_pows[4]));
                let t = alpha
                    .mul(&one.sub(&x_pows[2]).pow(2))
                    .mul(&b2)
                    .div(&b1.pow(2).mul(&b4))
                    .expect("unit constant term");
                let u = one
                    .add(&x)
                    .mul(&b2.pow(2))
                    .div(&b1.mul(&b4))
                    .expect("unit constant term");
                (t, u)
            }
        };
        ParamSolution {
            class,
            variate,
            order,
            x,
            alpha,
            alpha_sq,
            x_pows,
            t_pref,
            u_pref,
        }
    }

    /// Prefactor of the tree family T_s.
    pub fn t_pref(&self) -> &Series<R> {
        &self.t_pref
    }

    /// Prefactor of the unit-root-weight tree family U_s.
    pub fn u_pref(&self) -> &Series<R> {
        &self.u_pref
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn x(&self) -> &Series<R> {
        &self.x
    }

    pub fn alpha(&self) -> &Series<R> {
        &self.alpha
    }

    pub fn alpha_sq(&self) -> &Series<R> {
        &self.alpha_sq
    }

    pub fn x_pow(&self, k: usize) -> Series<R> {
        if k < self.x_pows.len() {
            self.x_pows[k].clone()
        } else {
            let mut acc = self.x_pows.last().unwrap().clone();
            for _ in self.x_pows.len()..=k {
                acc = acc.mul(&self.x);
            }
            acc
        }
    }

    /// Plugs (x, alpha) back into the defining relations; a correct solution
    /// returns exactly (g, z) as series.
    pub fn back_substitute(&self) -> (Series<R>, Series<R>) {
        let n = self.order;
        let one = Series::one(n);
        let x = &self.x;
        let al = &self.alpha;
        match self.class {
            MapClass::General => {
                let ax = al.mul(x);
                let ax3 = al.mul(&x.pow(3));
                let q = one.sub(&ax).pow(3).mul(&one.sub(&ax3));
                let p = poly_p_general(x, al);
                let g = x.mul(&q).div(&p.pow(2)).expect("P has unit constant term");
                let z = al
                    .mul(&one.sub(x).pow(3))
                    .mul(&one.sub(&al.pow(2).mul(&x.pow(3))))
                    .div(&q)
                    .expect("denominator has unit constant term");
                (g, z)
            }
            MapClass::Bipartite => {
                let ax = al.mul(x);
                let ax2 = al.mul(&x.pow(2));
                let ax4 = al.mul(&x.pow(4));
                let q = one.sub(&ax).pow(2).mul(&one.sub(&ax4));
                let g = x
                    .mul(&q)
                    .div(&one.add(x).pow(2).mul(&one.sub(&ax2).pow(3)))
                    .expect("denominator has unit constant term");
                let z = al
                    .mul(&one.sub(x).pow(2))
                    .mul(&one.sub(&x.pow(2)))
                    .mul(&one.add(&ax2))
                    .div(&q)
                    .expect("denominator has unit constant term");
                (g, z)
            }
        }
    }
}

/// The polynomial 1 + x + ax - 6ax^2 + ax^3 + a^2x^3 + a^2x^4 shared by the
/// general-map relations.
fn poly_p_general<R: Ring>(x: &Series<R>, al: &Series<R>) -> Series<R> {
    let n = x.order();
    let one = Series::one(n);
    let ax = al.mul(x);
    let x2 = x.pow(2);
    let x3 = x2.mul(x);
    let ax2 = al.mul(&x2);
    let ax3 = al.mul(&x3);
    let a2 = al.mul(al);
    let a2x3 = a2.mul(&x3);
    let a2x4 = a2x3.mul(x);
    one.add(x)
        .add(&ax)
        .sub(&ax2.scale(&R::from_int(6)))
        .add(&ax3)
        .add(&a2x3)
        .add(&a2x4)
}

/// Solves g = x(1+x+x^2)/(1+4x+x^2)^2 (general) or g = x(1+x^2)/(1+x)^4
/// (bipartite) for the branch x = O(g), exactly to the requested order.
pub fn solve_x_univariate(class: MapClass, order: usize) -> ParamSolution<Rational> {
    let n = order;
    let g = Series::<Rational>::g(n);
    let one = Series::one(n);
    let mut x = Series::<Rational>::zero(n);
    for _ in 0..=n + 1 {
        let residual = match class {
            MapClass::General => {
                // g(1+4x+x^2)^2 - x(1+x+x^2)
                let a = one.add(&x.scale(&Rational::from_int(4))).add(&x.pow(2));
                g.mul(&a.pow(2)).sub(&x.mul(&one.add(&x).add(&x.pow(2))))
            }
            MapClass::Bipartite => {
                // g(1+x)^4 - x(1+x^2)
                g.mul(&one.add(&x).pow(4)).sub(&x.mul(&one.add(&x.pow(2))))
            }
        };
        x = x.add(&residual);
    }
    ParamSolution::new(class, Variate::Univariate, x, Series::one(n))
}

/// Solves the paired (g, z) relations for x(g; z) and alpha(g; z) in the ring of
/// series in g with polynomial-in-z coefficients: x = O(g) and alpha = z + O(g).
pub fn solve_params_bivariate(class: MapClass, order: usize) -> ParamSolution<ZPoly> {
    let n = order;
    let g = Series::<ZPoly>::g(n);
    let one = Series::one(n);
    let zc = Series::constant(ZPoly::z(), n);
    let mut x = Series::<ZPoly>::zero(n);
    let mut al = zc.clone();
    for _ in 0..=n + 1 {
        match class {
            MapClass::General => {
                // F1 = g P^2 - x (1-ax)^3 (1-ax^3)
                let p = poly_p_general(&x, &al);
                let ax = al.mul(&x);
                let ax3 = al.mul(&x.pow(3));
                let q = one.sub(&ax).pow(3).mul(&one.sub(&ax3));
                let f1 = g.mul(&p.pow(2)).sub(&x.mul(&q));
                x = x.add(&f1);
                // F2 = z (1-ax)^3 (1-ax^3) - a (1-x)^3 (1-a^2 x^3), with x updated
                let ax = al.mul(&x);
                let ax3 = al.mul(&x.pow(3));
                let q = one.sub(&ax).pow(3).mul(&one.sub(&ax3));
                let r = one
                    .sub(&x)
                    .pow(3)
                    .mul(&one.sub(&al.pow(2).mul(&x.pow(3))));
                let f2 = zc.mul(&q).sub(&al.mul(&r));
                al = al.add(&f2);
            }
            MapClass::Bipartite => {
                // F1 = g (1+x)^2 (1-ax^2)^3 - x (1-ax)^2 (1-ax^4)
                let ax = al.mul(&x);
                let ax2 = al.mul(&x.pow(2));
                let ax4 = al.mul(&x.pow(4));
                let f1 = g
                    .mul(&one.add(&x).pow(2))
                    .mul(&one.sub(&ax2).pow(3))
                    .sub(&x.mul(&one.sub(&ax).pow(2)).mul(&one.sub(&ax4)));
                x = x.add(&f1);
                // F2 = z (1-ax)^2 (1-ax^4) - a (1-x)^2 (1-x^2) (1+ax^2)
                let ax = al.mul(&x);
                let ax2 = al.mul(&x.pow(2));
                let ax4 = al.mul(&x.pow(4));
                let q = one.sub(&ax).pow(2).mul(&one.sub(&ax4));
                let r = one
                    .sub(&x)
                    .pow(2)
                    .mul(&one.sub(&x.pow(2)))
                    .mul(&one.add(&ax2));
                let f2 = zc.mul(&q).sub(&al.mul(&r));
                al = al.add(&f2);
            }
        }
    }
    ParamSolution::new(class, Variate::Bivariate, x, al)
}

/// Default truncation orders: the bivariate ring carries z-polynomials whose degree
/// grows with the order, so it defaults lower.
pub const DEFAULT_UNIVARIATE_ORDER: usize = 24;
pub const DEFAULT_BIVARIATE_ORDER: usize = 12;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat_int, ZPoly};

    #[test]
    fn univariate_general_expansion() {
        let p = solve_x_univariate(MapClass::General, 8);
        let expect = [0, 1, 7, 59, 544, 5289, 53256, 549771, 5782105];
        for (k, &c) in expect.iter().enumerate() {
            assert_eq!(p.x().coeff(k), rat_int(c), "x coefficient of g^{k}");
        }
    }

    #[test]
    fn univariate_bipartite_expansion() {
        let p = solve_x_univariate(MapClass::Bipartite, 8);
        let expect = [0, 1, 4, 21, 124, 782, 5144, 34845, 241196];
        for (k, &c) in expect.iter().enumerate() {
            assert_eq!(p.x().coeff(k), rat_int(c), "x coefficient of g^{k}");
        }
    }

    #[test]
    fn univariate_order_zero() {
        let p = solve_x_univariate(MapClass::General, 0);
        assert!(p.x().is_zero());
    }

    #[test]
    fn back_substitution_univariate() {
        for class in [MapClass::General, MapClass::Bipartite] {
            let p = solve_x_univariate(class, 12);
            let (g, z) = p.back_substitute();
            assert_eq!(g, Series::g(12));
            assert_eq!(z, Series::one(12));
        }
    }

    #[test]
    fn back_substitution_bivariate() {
        for class in [MapClass::General, MapClass::Bipartite] {
            let p = solve_params_bivariate(class, 8);
            let (g, z) = p.back_substitute();
            assert_eq!(g, Series::g(8), "{class} g relation");
            assert_eq!(z, Series::constant(ZPoly::z(), 8), "{class} z relation");
        }
    }

    #[test]
    fn bivariate_specializes_to_univariate_at_z_one() {
        for class in [MapClass::General, MapClass::Bipartite] {
            let biv = solve_params_bivariate(class, 10);
            let uni = solve_x_univariate(class, 10);
            assert_eq!(&biv.x().eval_z(&rat_int(1)), uni.x());
            assert_eq!(biv.alpha().eval_z(&rat_int(1)), Series::one(10));
        }
    }
}
