//! Closed-form evaluation of the named generating-function families and assembly of
//! the two- and three-point functions, in all four regimes
//! (general/bipartite x univariate/bivariate).
//!
//! Every closed form is a ratio of bracket factors 1 - d*x^s (d one of 1, alpha,
//! alpha^2) over a solved parametrization; nothing is re-derived symbolically.
//! Index boundary conventions are hard-coded here: T_0 = 0, N with a zero index
//! is 1, O with a zero index is 0, and the even-case F vanishes at index -1 so
//! that the aligned (degenerate-triangle) case comes out of the same finite
//! differences as the generic one.

use std::fmt;

use crate::params::{MapClass, ParamSolution, Variate};
use crate::ring::Ring;
use crate::series::Series;

/// The deformation carried by a bracket factor: `[s]_x`, `[s]_{x,alpha}`,
/// `[s]_{x,alpha^2}` or `[s]_{x,1}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Deformation {
    None,
    Alpha,
    AlphaSq,
    Unit,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Bracket {
    pub exponent: usize,
    pub deformation: Deformation,
}

/// The named generating-function families.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    /// Label-bounded trees with a marked corner at a 0-labelled vertex.
    T,
    /// Same trees, root vertex weighted 1 even when it is a local max (face-weight ring only).
    U,
    /// Same trees with the root vertex required to be a local max (face-weight ring only).
    W,
    /// Label-bounded chains, spine-edges of equal labels allowed.
    X,
    /// Label-bounded chains with no 0-0 spine edge.
    N,
    /// Label-bounded chains with at least one 0-0 spine edge.
    O,
    /// Chains with two extra attached trees, single-vertex case weighted by the
    /// local-max rule (face-weight ring only).
    D,
    /// Three-branch label-bounded diagrams.
    Y,
    /// The elementary two-point building block 1 + g T_u T_{u+1}.
    R,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::T => "T",
            Family::U => "U",
            Family::W => "W",
            Family::X => "X",
            Family::N => "N",
            Family::O => "O",
            Family::D => "D",
            Family::Y => "Y",
            Family::R => "R",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormulaError {
    Arity {
        family: Family,
        expected: usize,
        got: usize,
    },
    Unsupported(String),
    Distance(String),
}

impl fmt::Display for FormulaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaError::Arity {
                family,
                expected,
                got,
            } => write!(f, "family {family} takes {expected} indices, got {got}"),
            FormulaError::Unsupported(m) => write!(f, "{m}"),
            FormulaError::Distance(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for FormulaError {}

type Result<T> = std::result::Result<T, FormulaError>;

// ---------------------------------------------------------------------------
// brackets
// ---------------------------------------------------------------------------

pub fn eval_bracket<R: Ring>(p: &ParamSolution<R>, b: Bracket) -> Result<Series<R>> {
    if p.variate == Variate::Univariate
        && matches!(b.deformation, Deformation::Alpha | Deformation::AlphaSq)
    {
        return Err(FormulaError::Unsupported(
            "alpha-deformed brackets need the face-weight ring".into(),
        ));
    }
    Ok(bracket(p, b.exponent, b.deformation))
}

fn bracket<R: Ring>(p: &ParamSolution<R>, s: usize, d: Deformation) -> Series<R> {
    let xs = p.x_pow(s);
    let t = match d {
        Deformation::None | Deformation::Unit => xs,
        Deformation::Alpha => p.alpha().mul(&xs),
        Deformation::AlphaSq => p.alpha_sq().mul(&xs),
    };
    Series::one(p.order()).sub(&t)
}

/// Product of alpha-brackets over product of alpha-brackets, with one division.
fn ratio<R: Ring>(p: &ParamSolution<R>, nums: &[usize], dens: &[usize]) -> Series<R> {
    let mut num = Series::one(p.order());
    for &s in nums {
        num = num.mul(&bracket(p, s, Deformation::Alpha));
    }
    if dens.is_empty() {
        return num;
    }
    let mut den = Series::one(p.order());
    for &s in dens {
        den = den.mul(&bracket(p, s, Deformation::Alpha));
    }
    num.div(&den)
        .expect("brackets with positive exponent have unit constant term")
}

// ---------------------------------------------------------------------------
// prefactors and families
// ---------------------------------------------------------------------------

fn require_bivariate<R: Ring>(p: &ParamSolution<R>, family: Family) -> Result<()> {
    if p.variate == Variate::Univariate {
        return Err(FormulaError::Unsupported(format!(
            "family {family} degenerates without the face weight; it is only \
             defined in the bivariate ring"
        )));
    }
    Ok(())
}

pub fn family_t<R: Ring>(p: &ParamSolution<R>, s: usize) -> Series<R> {
    if s == 0 {
        return Series::zero(p.order());
    }
    let shape = match p.class {
        MapClass::General => (s, s + 3, s + 1, s + 2),
        MapClass::Bipartite => (s, s + 4, s + 1, s + 3),
    };
    let num = bracket(p, shape.0, Deformation::Unit).mul(&bracket(p, shape.1, Deformation::AlphaSq));
    let den = bracket(p, shape.2, Deformation::Alpha).mul(&bracket(p, shape.3, Deformation::Alpha));
    p.t_pref().mul(&num.div(&den).expect("unit constant term"))
}

pub fn family_u<R: Ring>(p: &ParamSolution<R>, s: usize) -> Series<R> {
    if s == 0 {
        return Series::zero(p.order());
    }
    let shape = match p.class {
        MapClass::General => (s, s + 3, s + 1, s + 2),
        MapClass::Bipartite => (s, s + 4, s + 1, s + 3),
    };
    let num = bracket(p, shape.0, Deformation::Unit).mul(&bracket(p, shape.1, Deformation::Alpha));
    let den = bracket(p, shape.2, Deformation::Unit).mul(&bracket(p, shape.3, Deformation::Alpha));
    p.u_pref().mul(&num.div(&den).expect("unit constant term"))
}

pub fn family_w<R: Ring>(p: &ParamSolution<R>, s: usize) -> Series<R> {
    let one = Series::one(p.order());
    let u = family_u(p, s);
    let den = one.add(&u.mul(&family_t(p, s + 1)).shift_up(1));
    u.div(&den).expect("unit constant term")
}

pub fn family_x<R: Ring>(p: &ParamSolution<R>, s: usize, t: usize) -> Result<Series<R>> {
    match (p.class, p.variate) {
        (MapClass::General, Variate::Univariate) => {
            Ok(ratio(p, &[3, s + 1, t + 1, s + t + 3], &[1, s + 3, t + 3, s + t + 1]))
        }
        (MapClass::General, Variate::Bivariate) => Err(FormulaError::Unsupported(
            "no closed form is used for the general-map chain family X in the \
             face-weight ring; it is eliminated in favor of N and D"
                .into(),
        )),
        (MapClass::Bipartite, _) => {
            Ok(ratio(p, &[4, s + 2, t + 2, s + t + 4], &[2, s + 4, t + 4, s + t + 2]))
        }
    }
}

pub fn family_n<R: Ring>(p: &ParamSolution<R>, s: usize, t: usize) -> Series<R> {
    match p.class {
        MapClass::General => ratio(p, &[3, s + 2, t + 2, s + t + 3], &[2, s + 3, t + 3, s + t + 2]),
        // chains of very-well-labelled type cannot have a 0-0 spine edge at all
        MapClass::Bipartite => {
            family_x(p, s, t).expect("bipartite X is defined in both rings")
        }
    }
}

pub fn family_o<R: Ring>(p: &ParamSolution<R>, s: usize, t: usize) -> Result<Series<R>> {
    match (p.class, p.variate) {
        (MapClass::General, Variate::Univariate) => {
            let r = ratio(
                p,
                &[3, s, t, s + t + 3, s + t + 3],
                &[2, s + 3, t + 3, s + t + 1, s + t + 2],
            );
            Ok(r.mul(&p.x_pow(1)))
        }
        (MapClass::General, Variate::Bivariate) => Err(FormulaError::Unsupported(
            "the 0-0-spine chain family O has no closed form in the face-weight \
             ring; the odd-case assembly uses D instead"
                .into(),
        )),
        (MapClass::Bipartite, _) => Ok(Series::zero(p.order())),
    }
}

/// g*D as a single closed form (the combination U_s U_t N_{s,t} + (z-1) W_s W_t,
/// times g, collapses to one bracket ratio).
pub fn family_g_d<R: Ring>(p: &ParamSolution<R>, s: usize, t: usize) -> Result<Series<R>> {
    require_bivariate(p, Family::D)?;
    if s == 0 || t == 0 {
        // D inherits the chain conventions: g T_0 = 0 kills the block
        return Ok(Series::zero(p.order()));
    }
    match p.class {
        MapClass::General => {
            let num = bracket(p, 1, Deformation::Unit)
                .mul(&bracket(p, s, Deformation::Unit))
                .mul(&bracket(p, t, Deformation::Unit))
                .mul(&bracket(p, s + t + 3, Deformation::AlphaSq));
            let den = ratio(p, &[], &[2, s + 1, t + 1, s + t + 2]);
            Ok(p.alpha().mul(&p.x_pow(1)).mul(&num).mul(&den))
        }
        MapClass::Bipartite => Err(FormulaError::Unsupported(
            "no 0-0 border blocks exist for bipartite labellings; D is a \
             general-map family"
                .into(),
        )),
    }
}

pub fn family_y<R: Ring>(p: &ParamSolution<R>, s: usize, t: usize, u: usize) -> Series<R> {
    match p.class {
        MapClass::General => ratio(
            p,
            &[s + 3, t + 3, u + 3, s + t + u + 3],
            &[3, s + t + 3, t + u + 3, u + s + 3],
        ),
        MapClass::Bipartite => {
            let pre = ratio(
                p,
                &[s + 4, t + 4, u + 4],
                &[3, 4, s + 2, t + 2, u + 2, s + t + 4, t + u + 4, u + s + 4],
            );
            let t1 = p
                .alpha()
                .mul(&p.x_pow(1))
                .mul(&bracket(p, 3, Deformation::Alpha))
                .mul(&bracket(p, s + 1, Deformation::Unit))
                .mul(&bracket(p, t + 1, Deformation::Unit))
                .mul(&bracket(p, u + 1, Deformation::Unit))
                .mul(&bracket(p, s + t + u + 5, Deformation::AlphaSq));
            let t2 = bracket(p, 1, Deformation::Alpha)
                .mul(&bracket(p, s + 3, Deformation::Alpha))
                .mul(&bracket(p, t + 3, Deformation::Alpha))
                .mul(&bracket(p, u + 3, Deformation::Alpha))
                .mul(&bracket(p, s + t + u + 3, Deformation::Alpha));
            pre.mul(&t1.add(&t2))
        }
    }
}

pub fn family_r<R: Ring>(p: &ParamSolution<R>, u: usize) -> Result<Series<R>> {
    if p.variate == Variate::Bivariate {
        return Err(FormulaError::Unsupported(
            "R is the edge-count-only building block 1 + g T_u T_{u+1}".into(),
        ));
    }
    let one = Series::one(p.order());
    Ok(one.add(&family_t(p, u).mul(&family_t(p, u + 1)).shift_up(1)))
}

/// Evaluates a family at explicit indices, enforcing arity and regime support.
pub fn eval_family<R: Ring>(
    p: &ParamSolution<R>,
    family: Family,
    indices: &[usize],
) -> Result<Series<R>> {
    let arity = match family {
        Family::T | Family::U | Family::W | Family::R => 1,
        Family::X | Family::N | Family::O | Family::D => 2,
        Family::Y => 3,
    };
    if indices.len() != arity {
        return Err(FormulaError::Arity {
            family,
            expected: arity,
            got: indices.len(),
        });
    }
    match family {
        Family::T => Ok(family_t(p, indices[0])),
        Family::U => {
            require_bivariate(p, Family::U)?;
            Ok(family_u(p, indices[0]))
        }
        Family::W => {
            require_bivariate(p, Family::W)?;
            Ok(family_w(p, indices[0]))
        }
        Family::X => family_x(p, indices[0], indices[1]),
        Family::N => Ok(family_n(p, indices[0], indices[1])),
        Family::O => family_o(p, indices[0], indices[1]),
        Family::D => family_g_d(p, indices[0], indices[1]),
        Family::Y => Ok(family_y(p, indices[0], indices[1], indices[2])),
        Family::R => family_r(p, indices[0]),
    }
}

// ---------------------------------------------------------------------------
// finite differences
// ---------------------------------------------------------------------------

/// Alternating-sign combination over the 2^k shifted corners of the selected axes.
/// The family callback sees possibly negative indices and owns the boundary rule.
pub fn finite_difference<R: Ring, F>(f: F, at: &[i64], which: &[usize]) -> Result<Series<R>>
where
    F: Fn(&[i64]) -> Result<Series<R>>,
{
    let mut acc: Option<Series<R>> = None;
    for mask in 0..(1u32 << which.len()) {
        let mut idx = at.to_vec();
        let mut sign = 1i32;
        for (bit, &axis) in which.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                idx[axis] -= 1;
                sign = -sign;
            }
        }
        let term = f(&idx)?;
        let term = if sign == 1 { term } else { term.neg() };
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    Ok(acc.expect("at least one corner"))
}

// ---------------------------------------------------------------------------
// distance specs
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    Even,
    Odd,
}

/// A validated pair or triple of marked-vertex distances together with the
/// derived branch lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistanceSpec {
    Pair {
        d12: usize,
    },
    Triple {
        d: [usize; 3],
        parity: Parity,
        stu: [usize; 3],
        /// True when one triangle inequality is tight (one branch length is zero).
        aligned: bool,
    },
}

impl DistanceSpec {
    pub fn pair(d12: usize) -> Result<Self> {
        if d12 == 0 {
            return Err(FormulaError::Distance(
                "two-point distance must be at least 1".into(),
            ));
        }
        Ok(DistanceSpec::Pair { d12 })
    }

    pub fn triple(d12: usize, d13: usize, d23: usize) -> Result<Self> {
        let d = [d12, d13, d23];
        if d.contains(&0) {
            return Err(FormulaError::Distance(
                "marked vertices are distinct, so all pairwise distances must be \
                 at least 1"
                    .into(),
            ));
        }
        if d12 > d13 + d23 || d13 > d12 + d23 || d23 > d12 + d13 {
            return Err(FormulaError::Distance(format!(
                "triangular inequality violated by ({d12}, {d13}, {d23})"
            )));
        }
        let total = d12 + d13 + d23;
        if total % 2 == 0 {
            let s = (d12 + d13 - d23) / 2;
            let t = (d12 + d23 - d13) / 2;
            let u = (d13 + d23 - d12) / 2;
            let zeros = [s, t, u].iter().filter(|&&v| v == 0).count();
            debug_assert!(zeros <= 1, "two zero branches need coinciding marks");
            Ok(DistanceSpec::Triple {
                d,
                parity: Parity::Even,
                stu: [s, t, u],
                aligned: zeros == 1,
            })
        } else {
            // an odd total forces strict triangle inequalities, so these are >= 1
            let s = (d12 + d13 - d23).div_ceil(2);
            let t = (d12 + d23 - d13).div_ceil(2);
            let u = (d13 + d23 - d12).div_ceil(2);
            Ok(DistanceSpec::Triple {
                d,
                parity: Parity::Odd,
                stu: [s, t, u],
                aligned: false,
            })
        }
    }
}

// ---------------------------------------------------------------------------
// two-point function
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Route {
    /// The closed bracket form in s = d12.
    Direct,
    /// Cyclic-block decomposition with no 0-0 border edge; split s + t = d12.
    TypeA { split: Option<usize> },
    /// Cyclic 0-0-edge-block decomposition; split s + t - 1 = d12.
    TypeB { split: Option<usize> },
}

pub fn two_point<R: Ring>(p: &ParamSolution<R>, spec: &DistanceSpec, route: Route) -> Result<Series<R>> {
    let d = match spec {
        DistanceSpec::Pair { d12 } => *d12,
        DistanceSpec::Triple { .. } => {
            return Err(FormulaError::Distance(
                "two_point takes a pair spec".into(),
            ))
        }
    };
    match route {
        Route::Direct => {
            let r = match p.class {
                MapClass::General => ratio(p, &[d + 1, d + 1, d + 1, d + 3], &[d, d + 2, d + 2, d + 2]),
                MapClass::Bipartite => ratio(p, &[d + 1, d + 1, d + 4], &[d, d + 3, d + 3]),
            };
            r.log().map_err(|e| FormulaError::Unsupported(e.to_string()))
        }
        Route::TypeA { split } => {
            if d < 2 {
                return Err(FormulaError::Distance(
                    "the type-A route needs a split d12 = s + t with s, t >= 1".into(),
                ));
            }
            let s = split.unwrap_or(d.div_ceil(2));
            if s == 0 || s >= d {
                return Err(FormulaError::Distance(format!(
                    "invalid type-A split s={s} for d12={d}"
                )));
            }
            let t = d - s;
            let f = |idx: &[i64]| -> Result<Series<R>> {
                let (a, b) = (idx[0], idx[1]);
                debug_assert!(a >= 0 && b >= 0);
                family_n(p, a as usize, b as usize)
                    .log()
                    .map_err(|e| FormulaError::Unsupported(e.to_string()))
            };
            finite_difference(f, &[s as i64, t as i64], &[0, 1])
        }
        Route::TypeB { split } => {
            if p.class == MapClass::Bipartite {
                return Err(FormulaError::Unsupported(
                    "the type-B route does not exist for bipartite maps: chains \
                     with equal-label spine edges are empty there"
                        .into(),
                ));
            }
            let s = split.unwrap_or((d + 1).div_ceil(2));
            if s == 0 || s > d {
                return Err(FormulaError::Distance(format!(
                    "invalid type-B split s={s} for d12={d}"
                )));
            }
            let t = d + 1 - s;
            let one = Series::one(p.order());
            let f = |idx: &[i64]| -> Result<Series<R>> {
                let (a, b) = (idx[0] as usize, idx[1] as usize);
                let block = if a == 0 || b == 0 {
                    Series::zero(p.order())
                } else {
                    match p.variate {
                        Variate::Univariate => family_t(p, a)
                            .mul(&family_t(p, b))
                            .mul(&family_n(p, a, b))
                            .shift_up(1),
                        Variate::Bivariate => family_g_d(p, a, b)?,
                    }
                };
                one.div(&one.sub(&block))
                    .expect("unit constant term")
                    .log()
                    .map_err(|e| FormulaError::Unsupported(e.to_string()))
            };
            finite_difference(f, &[s as i64, t as i64], &[0, 1])
        }
    }
}

// ---------------------------------------------------------------------------
// three-point function
// ---------------------------------------------------------------------------

/// Even-case kernel; vanishes at index -1 so the aligned case needs no special
/// dispatch, and automatically reduces to the chain family when an index is 0.
fn f_even<R: Ring>(p: &ParamSolution<R>, s: i64, t: i64, u: i64) -> Series<R> {
    if s < 0 || t < 0 || u < 0 {
        return Series::zero(p.order());
    }
    let (s, t, u) = (s as usize, t as usize, u as usize);
    ratio(
        p,
        &[3, s + 2, s + 2, t + 2, t + 2, u + 2, u + 2, s + t + u + 3, s + t + u + 3],
        &[2, 2, 2, s + t + 2, t + u + 2, u + s + 2, s + t + 3, t + u + 3, u + s + 3],
    )
}

/// Odd-case kernel; the unit brackets kill it whenever an index reaches 0.
fn f_odd<R: Ring>(p: &ParamSolution<R>, s: i64, t: i64, u: i64) -> Series<R> {
    if s <= 0 || t <= 0 || u <= 0 {
        return Series::zero(p.order());
    }
    let (s, t, u) = (s as usize, t as usize, u as usize);
    let unit_part = bracket(p, s, Deformation::Unit)
        .mul(&bracket(p, t, Deformation::Unit))
        .mul(&bracket(p, u, Deformation::Unit))
        .mul(&bracket(p, s + t + u + 3, Deformation::AlphaSq));
    let num = bracket(p, 3, Deformation::Alpha).mul(&unit_part.pow(2));
    let den = ratio(
        p,
        &[],
        &[2, 2, 2, s + t + 1, t + u + 1, u + s + 1, s + t + 2, t + u + 2, u + s + 2],
    );
    p.alpha_sq().mul(&p.x_pow(3)).mul(&num).mul(&den)
}

/// Bipartite kernel X X X Y^2, also vanishing at index -1.
fn f_bipartite<R: Ring>(p: &ParamSolution<R>, s: i64, t: i64, u: i64) -> Series<R> {
    if s < 0 || t < 0 || u < 0 {
        return Series::zero(p.order());
    }
    let (s, t, u) = (s as usize, t as usize, u as usize);
    let xs = family_x(p, s, t)
        .and_then(|a| Ok(a.mul(&family_x(p, s, u)?)))
        .and_then(|a| Ok(a.mul(&family_x(p, t, u)?)))
        .expect("bipartite X defined in both rings");
    xs.mul(&family_y(p, s, t, u).pow(2))
}

pub fn three_point<R: Ring>(p: &ParamSolution<R>, spec: &DistanceSpec) -> Result<Series<R>> {
    let (parity, stu) = match spec {
        DistanceSpec::Triple { parity, stu, .. } => (*parity, *stu),
        DistanceSpec::Pair { .. } => {
            return Err(FormulaError::Distance(
                "three_point takes a triple spec".into(),
            ))
        }
    };
    if p.class == MapClass::Bipartite && parity == Parity::Odd {
        return Err(FormulaError::Distance(
            "bipartite maps require an even total distance".into(),
        ));
    }
    let at = [stu[0] as i64, stu[1] as i64, stu[2] as i64];
    let f = |idx: &[i64]| -> Result<Series<R>> {
        Ok(match (p.class, parity) {
            (MapClass::General, Parity::Even) => f_even(p, idx[0], idx[1], idx[2]),
            (MapClass::General, Parity::Odd) => f_odd(p, idx[0], idx[1], idx[2]),
            (MapClass::Bipartite, Parity::Even) => f_bipartite(p, idx[0], idx[1], idx[2]),
            (MapClass::Bipartite, Parity::Odd) => unreachable!(),
        })
    };
    finite_difference(f, &at, &[0, 1, 2])
}

// ---------------------------------------------------------------------------
// minimal-face-count limits (the z -> 0 leading behavior)
// ---------------------------------------------------------------------------

use crate::ring::Rational;

/// The Catalan generating function C = 1 + g C^2.
pub fn catalan(order: usize) -> Series<Rational> {
    let one = Series::one(order);
    let mut c = one.clone();
    for _ in 0..=order {
        c = one.add(&c.pow(2).shift_up(1));
    }
    c
}

/// Leading z-order of the three-point function: the coefficient of z (even total,
/// general or bipartite) or z^2 (odd total), as a series in g.
pub fn tree_limit_three_point(
    parity: Parity,
    stu: [usize; 3],
    order: usize,
) -> Result<Series<Rational>> {
    let [s, t, u] = stu;
    if s == 0 || t == 0 || u == 0 {
        return Err(FormulaError::Distance(
            "branch lengths must be positive".into(),
        ));
    }
    // x = g * Cat(g)^2 counts a backbone edge with its two free corners
    let x = catalan(order).pow(2).shift_up(1);
    let one = Series::one(order);
    match parity {
        Parity::Even => Ok(x.pow(s + t + u).scale(&Rational::from_int(2))),
        Parity::Odd => {
            let mut num = x.pow(s + t + u);
            for i in [s, t, u] {
                let two = Series::constant(Rational::from_int(2), order);
                num = num.mul(&two.sub(&x.pow(i)).sub(&x.pow(i - 1)));
            }
            num.div(&one.sub(&x).pow(3))
                .map_err(|e| FormulaError::Unsupported(e.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{solve_params_bivariate, solve_x_univariate};
    use crate::ring::{rat_int, Rational};

    fn uni(class: MapClass, order: usize) -> ParamSolution<Rational> {
        solve_x_univariate(class, order)
    }

    #[test]
    fn bracket_zero_exponent() {
        let p = uni(MapClass::General, 6);
        for d in [Deformation::None, Deformation::Unit] {
            let b = eval_bracket(&p, Bracket { exponent: 0, deformation: d }).unwrap();
            assert!(b.is_zero());
        }
    }

    #[test]
    fn bracket_alpha_univariate_is_error() {
        let p = uni(MapClass::General, 4);
        assert!(eval_bracket(&p, Bracket { exponent: 2, deformation: Deformation::Alpha }).is_err());
    }

    #[test]
    fn bracket_squared_x() {
        // [2]_x = 1 - x^2 = 1 - g^2 - 14 g^3 + ... for the general tree series
        let p = uni(MapClass::General, 3);
        let b = eval_bracket(&p, Bracket { exponent: 2, deformation: Deformation::None }).unwrap();
        assert_eq!(b.coeff(0), rat_int(1));
        assert_eq!(b.coeff(1), rat_int(0));
        assert_eq!(b.coeff(2), rat_int(-1));
        assert_eq!(b.coeff(3), rat_int(-14));
    }

    #[test]
    fn t_boundary_and_constant_term() {
        for class in [MapClass::General, MapClass::Bipartite] {
            let p = uni(class, 6);
            assert!(family_t(&p, 0).is_zero());
            for s in 1..=4 {
                assert_eq!(family_t(&p, s).coeff(0), rat_int(1), "T_{s} starts at 1");
            }
        }
    }

    #[test]
    fn n_and_o_boundary_conventions() {
        let p = uni(MapClass::General, 8);
        for s in 0..=3 {
            assert_eq!(family_n(&p, s, 0), Series::one(8));
            assert_eq!(family_n(&p, 0, s), Series::one(8));
            assert!(family_o(&p, s, 0).unwrap().is_zero());
            assert!(family_o(&p, 0, s).unwrap().is_zero());
        }
    }

    #[test]
    fn x_splits_into_n_plus_o() {
        let p = uni(MapClass::General, 16);
        let x = family_x(&p, 1, 1).unwrap();
        let n = family_n(&p, 1, 1);
        let o = family_o(&p, 1, 1).unwrap();
        assert!(x.sub(&n).sub(&o).is_zero());
    }

    #[test]
    fn families_are_symmetric() {
        let p = uni(MapClass::General, 12);
        for s in 1..=3usize {
            for t in 1..=3usize {
                assert_eq!(family_n(&p, s, t), family_n(&p, t, s));
                for u in 1..=3usize {
                    let y = family_y(&p, s, t, u);
                    assert_eq!(y, family_y(&p, t, s, u));
                    assert_eq!(y, family_y(&p, u, t, s));
                    assert_eq!(y, family_y(&p, s, u, t));
                }
            }
        }
    }

    #[test]
    fn y_closes_at_zero_index() {
        let p = uni(MapClass::General, 10);
        let q = uni(MapClass::Bipartite, 10);
        for s in 1..=3usize {
            for t in 1..=3usize {
                assert_eq!(family_y(&p, s, t, 0), Series::one(10));
                assert_eq!(family_y(&q, s, t, 0), Series::one(10));
            }
        }
    }

    #[test]
    fn bivariate_u_at_z_one_is_univariate_t() {
        let biv = solve_params_bivariate(MapClass::General, 10);
        let uni = solve_x_univariate(MapClass::General, 10);
        for s in 1..=4 {
            let u1 = family_u(&biv, s).eval_z(&rat_int(1));
            assert_eq!(u1, family_t(&uni, s), "U_{s}(g,1) = T_{s}(g)");
        }
    }

    #[test]
    fn alpha_bracket_specializes() {
        let biv = solve_params_bivariate(MapClass::General, 10);
        let uni = solve_x_univariate(MapClass::General, 10);
        for s in 1..=5 {
            let b = eval_bracket(&biv, Bracket { exponent: s, deformation: Deformation::Alpha })
                .unwrap()
                .eval_z(&rat_int(1));
            let u = eval_bracket(&uni, Bracket { exponent: s, deformation: Deformation::None })
                .unwrap();
            assert_eq!(b, u);
        }
    }

    #[test]
    fn two_point_leading_coefficients() {
        let p = uni(MapClass::General, 4);
        let g1 = two_point(&p, &DistanceSpec::pair(1).unwrap(), Route::Direct).unwrap();
        assert_eq!(g1.coeff(1), rat_int(1), "one bi-pointed one-edge map");
        let biv = solve_params_bivariate(MapClass::General, 4);
        let g1 = two_point(&biv, &DistanceSpec::pair(1).unwrap(), Route::Direct).unwrap();
        assert_eq!(g1.coeff(1), crate::ring::ZPoly::z(), "the one-edge map has one face");
    }

    #[test]
    fn two_point_rejects_zero_distance() {
        assert!(DistanceSpec::pair(0).is_err());
    }

    #[test]
    fn three_point_validation() {
        assert!(DistanceSpec::triple(1, 1, 3).is_err(), "triangle violation");
        assert!(DistanceSpec::triple(1, 1, 0).is_err(), "marks must be distinct");
        let aligned = DistanceSpec::triple(2, 1, 1).unwrap();
        match &aligned {
            DistanceSpec::Triple { aligned, parity, stu, .. } => {
                assert!(*aligned);
                assert_eq!(*parity, Parity::Even);
                assert_eq!(*stu, [1, 1, 0]);
            }
            _ => unreachable!(),
        }
        let p = solve_x_univariate(MapClass::Bipartite, 6);
        let odd = DistanceSpec::triple(1, 1, 1).unwrap();
        assert!(three_point(&p, &odd).is_err(), "odd total distance is not bipartite");
    }

    #[test]
    fn aligned_three_point_equals_chain_difference() {
        let p = uni(MapClass::General, 10);
        let spec = DistanceSpec::triple(2, 1, 1).unwrap();
        let g = three_point(&p, &spec).unwrap();
        let via_n = finite_difference(
            |idx| {
                Ok(if idx[0] < 0 || idx[1] < 0 {
                    Series::zero(10)
                } else {
                    family_n(&p, idx[0] as usize, idx[1] as usize)
                })
            },
            &[1, 1],
            &[0, 1],
        )
        .unwrap();
        assert_eq!(g, via_n);
        // hand count: the 3-vertex path admits one aligned marking pattern
        assert_eq!(g.coeff(2), rat_int(1));
    }

    #[test]
    fn finite_difference_kills_constants() {
        let c = Series::constant(rat_int(5), 6);
        let out = finite_difference(|_idx: &[i64]| Ok(c.clone()), &[3, 2], &[0]).unwrap();
        assert!(out.is_zero());
        let out = finite_difference(|_idx: &[i64]| Ok(c.clone()), &[3, 2], &[0, 1]).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn tree_limit_spot_values() {
        let even = tree_limit_three_point(Parity::Even, [1, 1, 1], 6).unwrap();
        assert_eq!(even.coeff(3), rat_int(2));
        assert_eq!(even.coeff(4), rat_int(12));
        // at s=t=u=1 the odd-case zipper factors collapse to 1
        let odd = tree_limit_three_point(Parity::Odd, [1, 1, 1], 8).unwrap();
        let x3 = catalan(8).pow(2).shift_up(1).pow(3);
        assert_eq!(odd, x3);
    }
}
