//! Value functions on the simplex and the two inverse maps between sets and
//! functions: `sigma` takes a set to its restricted support function and
//! `theta` takes a convex function back to `{x : <p, x> <= f(p) for all p}`.
//!
//! Piecewise-linear functions are stored by their canonical pieces, so both
//! maps are exact on them. Numeric oracles (e.g. negentropy) have no finite
//! set representation; their `theta` image is a membership oracle.

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{Belief, DioidElement, PolyCUAS, StateSpace, UtilityAct};
use crate::scalar::{dot, to_f64, Extended, Rational, Scalar, NUMERIC_TOLERANCE};

/// Number of random midpoint tests run before a numeric oracle is trusted.
pub const CONVEXITY_TRIALS: usize = 10_000;
/// Restarts of the inner maximization in the numeric membership test.
pub const MEMBERSHIP_RESTARTS: usize = 50;

pub type OracleFn = dyn Fn(&[f64]) -> f64 + Send + Sync;

/// A convex function on the simplex known only through evaluations.
#[derive(Clone)]
pub struct NumericOracle {
    name: String,
    eval: Arc<OracleFn>,
    tolerance: f64,
}

impl NumericOracle {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn eval(&self, p: &[f64]) -> f64 {
        (self.eval)(p)
    }
}

impl fmt::Debug for NumericOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumericOracle")
            .field("name", &self.name)
            .field("tolerance", &self.tolerance)
            .finish()
    }
}

#[derive(Clone, Debug)]
enum Body {
    Pwl(PolyCUAS),
    Numeric(NumericOracle),
    NegInfinity,
}

/// A value function on the beliefs of a state space.
#[derive(Clone, Debug)]
pub struct ValueFunction {
    space: StateSpace,
    body: Body,
}

impl ValueFunction {
    /// `p -> max_a <p, a>`; the pieces are canonicalized.
    pub fn piecewise_linear(space: &StateSpace, pieces: Vec<UtilityAct>) -> Result<Self> {
        Ok(ValueFunction {
            space: space.clone(),
            body: Body::Pwl(PolyCUAS::canonicalize(space, pieces)?),
        })
    }

    pub fn numeric<F>(space: &StateSpace, name: impl Into<String>, tolerance: f64, eval: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        ValueFunction {
            space: space.clone(),
            body: Body::Numeric(NumericOracle {
                name: name.into(),
                eval: Arc::new(eval),
                tolerance,
            }),
        }
    }

    /// The constant `-inf`, image of the empty set.
    pub fn neg_infinity(space: &StateSpace) -> Self {
        ValueFunction {
            space: space.clone(),
            body: Body::NegInfinity,
        }
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn is_neg_infinity(&self) -> bool {
        matches!(self.body, Body::NegInfinity)
    }

    /// Canonical pieces of a piecewise-linear function.
    pub fn pieces(&self) -> Option<&[UtilityAct]> {
        self.as_pwl_set().map(PolyCUAS::generators)
    }

    pub(crate) fn as_pwl_set(&self) -> Option<&PolyCUAS> {
        match &self.body {
            Body::Pwl(g) => Some(g),
            _ => None,
        }
    }

    pub fn as_numeric(&self) -> Option<&NumericOracle> {
        match &self.body {
            Body::Numeric(o) => Some(o),
            _ => None,
        }
    }

    pub fn eval(&self, p: &Belief) -> Result<Extended> {
        self.space.check_len(p.dim())?;
        Ok(match &self.body {
            Body::Pwl(g) => Extended::Finite(Scalar::Exact(g.support_unchecked(p.coords()))),
            Body::Numeric(o) => Extended::Finite(Scalar::Approx(o.eval(&p.to_f64()))),
            Body::NegInfinity => Extended::NegInfinity,
        })
    }

    /// Binary64 value at `p`; fails on the `-inf` function.
    pub fn eval_numeric(&self, p: &Belief) -> Result<f64> {
        self.space.check_len(p.dim())?;
        self.eval_f64(&p.to_f64())
    }

    pub fn eval_f64(&self, p: &[f64]) -> Result<f64> {
        match &self.body {
            Body::Pwl(g) => Ok(g
                .generators()
                .iter()
                .map(|a| a.coords().iter().zip(p).map(|(x, y)| to_f64(x) * y).sum::<f64>())
                .fold(f64::NEG_INFINITY, f64::max)),
            Body::Numeric(o) => Ok(o.eval(p)),
            Body::NegInfinity => Err(Error::EmptySet),
        }
    }

    /// Random midpoint convexity test; piecewise-linear functions pass
    /// without sampling.
    pub fn validate_convexity(&self, trials: usize, seed: u64) -> Result<()> {
        let oracle = match &self.body {
            Body::Numeric(o) => o,
            _ => return Ok(()),
        };
        let k = self.space.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let a = random_simplex_point(&mut rng, k);
            let b = random_simplex_point(&mut rng, k);
            let mid: Vec<f64> = a.iter().zip(&b).map(|(x, y)| 0.5 * (x + y)).collect();
            if oracle.eval(&mid) > 0.5 * (oracle.eval(&a) + oracle.eval(&b)) + oracle.tolerance {
                return Err(Error::NotConvex { left: a, right: b });
            }
        }
        Ok(())
    }
}

/// `G -> σ̆_G`.
pub fn sigma(g: &DioidElement) -> ValueFunction {
    match g {
        DioidElement::Empty(space) => ValueFunction::neg_infinity(space),
        DioidElement::Set(set) => ValueFunction {
            space: set.space().clone(),
            body: Body::Pwl(set.clone()),
        },
    }
}

/// Image of a value function under `theta`.
#[derive(Clone, Debug)]
pub enum ThetaImage {
    Set(DioidElement),
    Oracle(MembershipOracle),
}

impl ThetaImage {
    pub fn as_set(&self) -> Option<&DioidElement> {
        match self {
            ThetaImage::Set(s) => Some(s),
            ThetaImage::Oracle(_) => None,
        }
    }

    pub fn as_oracle(&self) -> Option<&MembershipOracle> {
        match self {
            ThetaImage::Set(_) => None,
            ThetaImage::Oracle(o) => Some(o),
        }
    }
}

/// `f -> {x : <p, x> <= f(p) for all beliefs p}`.
pub fn theta(f: &ValueFunction) -> Result<ThetaImage> {
    match &f.body {
        Body::Pwl(g) => Ok(ThetaImage::Set(DioidElement::Set(g.clone()))),
        Body::NegInfinity => Ok(ThetaImage::Set(DioidElement::Empty(f.space.clone()))),
        Body::Numeric(o) => {
            f.validate_convexity(CONVEXITY_TRIALS, 0)?;
            Ok(ThetaImage::Oracle(MembershipOracle {
                dim: f.space.dim(),
                oracle: o.clone(),
                restarts: MEMBERSHIP_RESTARTS,
                seed: 0,
            }))
        }
    }
}

/// Membership in `theta(f)` for a numeric `f`: `x` belongs iff
/// `max_p <p, x> - f(p) <= tolerance`, the maximum being approached by
/// projected gradient ascent over the simplex from seeded restarts. The
/// ascent only ever reports attained values, so boundary members are never
/// rejected.
#[derive(Clone, Debug)]
pub struct MembershipOracle {
    dim: usize,
    oracle: NumericOracle,
    restarts: usize,
    seed: u64,
}

impl MembershipOracle {
    pub fn contains(&self, x: &[f64]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok(self.conjugate_lower_bound(x) <= self.oracle.tolerance)
    }

    fn objective(&self, x: &[f64], p: &[f64]) -> f64 {
        p.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() - self.oracle.eval(p)
    }

    /// Gradient of the positively homogeneous extension of `f` by forward
    /// differences; stepping along `e_k` stays inside the orthant where the
    /// extension is finite.
    fn extension_gradient(&self, p: &[f64]) -> Vec<f64> {
        const H: f64 = 1e-7;
        let base = self.oracle.eval(p);
        (0..p.len())
            .map(|k| {
                let mut y = p.to_vec();
                y[k] += H;
                let s: f64 = y.iter().sum();
                let scaled: Vec<f64> = y.iter().map(|v| v / s).collect();
                (s * self.oracle.eval(&scaled) - base) / H
            })
            .collect()
    }

    fn conjugate_lower_bound(&self, x: &[f64]) -> f64 {
        let k = self.dim;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut starts: Vec<Vec<f64>> = (0..k)
            .map(|i| (0..k).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        starts.push(vec![1.0 / k as f64; k]);
        while starts.len() < self.restarts {
            starts.push(random_simplex_point(&mut rng, k));
        }
        starts
            .into_iter()
            .map(|p| self.ascend(x, p))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    fn ascend(&self, x: &[f64], mut p: Vec<f64>) -> f64 {
        let mut value = self.objective(x, &p);
        let mut step = 0.5;
        for _ in 0..500 {
            let grad: Vec<f64> = self
                .extension_gradient(&p)
                .iter()
                .zip(x)
                .map(|(g, xi)| xi - g)
                .collect();
            loop {
                let moved: Vec<f64> = p.iter().zip(&grad).map(|(a, g)| a + step * g).collect();
                let candidate = project_to_simplex(&moved);
                let v = self.objective(x, &candidate);
                if v > value {
                    p = candidate;
                    value = v;
                    step = (step * 2.0).min(1e3);
                    break;
                }
                step *= 0.5;
                if step < 1e-14 {
                    return value;
                }
            }
        }
        value
    }
}

/// Euclidean projection onto the probability simplex.
pub(crate) fn project_to_simplex(y: &[f64]) -> Vec<f64> {
    let mut sorted = y.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut shift = 0.0;
    for (i, v) in sorted.iter().enumerate() {
        cumulative += v;
        let t = (cumulative - 1.0) / (i + 1) as f64;
        if v - t > 0.0 {
            shift = t;
        }
    }
    y.iter().map(|v| (v - shift).max(0.0)).collect()
}

pub(crate) fn random_simplex_point(rng: &mut impl Rng, k: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..k)
        .map(|_| -(1.0 - rng.gen::<f64>()).ln())
        .collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|v| v / s).collect()
}

/// `p -> sum p_k ln p_k` with `0 ln 0 = 0`.
pub fn negentropy(space: &StateSpace) -> ValueFunction {
    ValueFunction::numeric(space, "negentropy", NUMERIC_TOLERANCE, |p: &[f64]| {
        p.iter()
            .map(|&x| if x > 0.0 { x * x.ln() } else { 0.0 })
            .sum()
    })
}

/// Extension of a value function to all of `R^K`: `|y| f(y / |y|)` on the
/// nonnegative orthant (with `|y| = <y, 1>`), `0` at the origin and `+inf`
/// elsewhere.
#[derive(Clone, Debug)]
pub struct HomogeneousExtension {
    base: ValueFunction,
}

pub fn homogeneous_extension(f: &ValueFunction) -> Result<HomogeneousExtension> {
    if f.is_neg_infinity() {
        return Err(Error::EmptySet);
    }
    Ok(HomogeneousExtension { base: f.clone() })
}

impl HomogeneousExtension {
    pub fn base(&self) -> &ValueFunction {
        &self.base
    }

    pub fn eval(&self, y: &[Rational]) -> Result<Extended> {
        self.base.space.check_len(y.len())?;
        if y.iter().any(|c| c.is_negative()) {
            return Ok(Extended::PosInfinity);
        }
        let total: Rational = y.iter().sum();
        Ok(match &self.base.body {
            Body::Pwl(g) => {
                // on the orthant the extension is the full support function
                let value = g
                    .generators()
                    .iter()
                    .map(|a| dot(a.coords(), y))
                    .max()
                    .expect("nonempty");
                Extended::Finite(Scalar::Exact(value))
            }
            Body::Numeric(o) => {
                if total.is_zero() {
                    Extended::Finite(Scalar::Approx(0.0))
                } else {
                    let s = to_f64(&total);
                    let p: Vec<f64> = y.iter().map(|c| to_f64(c) / s).collect();
                    Extended::Finite(Scalar::Approx(s * o.eval(&p)))
                }
            }
            Body::NegInfinity => unreachable!("rejected at construction"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn k2() -> StateSpace {
        StateSpace::with_dimension(2)
    }

    fn restaurant() -> PolyCUAS {
        PolyCUAS::canonicalize(
            &k2(),
            [[0, 0], [4, -1], [7, -5]].iter().map(|p| UtilityAct::from_ints(p)),
        )
        .unwrap()
    }

    fn exact(e: Extended) -> Rational {
        e.finite_exact().cloned().unwrap()
    }

    #[test]
    fn sigma_of_restaurant() {
        let f = sigma(&restaurant().into());
        assert_eq!(f.pieces().unwrap(), restaurant().generators());
        assert_eq!(exact(f.eval(&Belief::uniform(2)).unwrap()), ratio(3, 2));
    }

    #[test]
    fn sigma_of_unit_and_singleton() {
        let f = sigma(&PolyCUAS::unit(&k2()).into());
        let p = Belief::new(vec![ratio(2, 9), ratio(7, 9)]).unwrap();
        assert_eq!(exact(f.eval(&p).unwrap()), int(0));
        let a = UtilityAct::from_ints(&[3, -6]);
        let f = sigma(&PolyCUAS::singleton(&k2(), a.clone()).unwrap().into());
        assert_eq!(exact(f.eval(&p).unwrap()), a.pair(&p));
    }

    #[test]
    fn sigma_of_empty_is_neg_infinity() {
        let f = sigma(&DioidElement::Empty(k2()));
        assert_eq!(f.eval(&Belief::uniform(2)).unwrap(), Extended::NegInfinity);
        assert!(homogeneous_extension(&f).is_err());
    }

    #[test]
    fn theta_inverts_sigma() {
        let g: DioidElement = restaurant().into();
        assert_eq!(theta(&sigma(&g)).unwrap().as_set(), Some(&g));
        let zero = ValueFunction::piecewise_linear(&k2(), vec![UtilityAct::zero(2)]).unwrap();
        assert_eq!(
            theta(&zero).unwrap().as_set(),
            Some(&PolyCUAS::unit(&k2()).into())
        );
        let empty = DioidElement::Empty(k2());
        assert_eq!(theta(&sigma(&empty)).unwrap().as_set(), Some(&empty));
    }

    #[test]
    fn negentropy_values() {
        let h = negentropy(&k2());
        let u = h.eval_numeric(&Belief::uniform(2)).unwrap();
        assert!((u + std::f64::consts::LN_2).abs() < 1e-12);
        assert_eq!(h.eval_numeric(&Belief::dirac(2, 1)).unwrap(), 0.0);
        let p = Belief::new(vec![ratio(1, 4), ratio(3, 4)]).unwrap();
        // 0.25 ln 0.25 + 0.75 ln 0.75, evaluated independently
        let expected = -0.562_335_144_618_808_6;
        assert!((h.eval_numeric(&p).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn negentropy_theta_membership() {
        let image = theta(&negentropy(&k2())).unwrap();
        let oracle = image.as_oracle().unwrap();
        let ln2 = std::f64::consts::LN_2;
        assert!(oracle.contains(&[-ln2, -ln2]).unwrap());
        assert!(oracle.contains(&[-1.0, -3.0]).unwrap());
        assert!(oracle.contains(&[0.0, -40.0]).unwrap());
        assert!(!oracle.contains(&[-ln2 + 1e-3, -ln2]).unwrap());
        assert!(!oracle.contains(&[0.1, -5.0]).unwrap());
    }

    #[test]
    fn non_convex_oracle_is_rejected() {
        let f = ValueFunction::numeric(&k2(), "concave", 1e-9, |p: &[f64]| -p[0] * p[0]);
        assert!(matches!(theta(&f), Err(Error::NotConvex { .. })));
    }

    #[test]
    fn homogeneous_extension_values() {
        let ext = homogeneous_extension(&sigma(&restaurant().into())).unwrap();
        assert_eq!(exact(ext.eval(&[int(2), int(0)]).unwrap()), int(14));
        assert_eq!(exact(ext.eval(&[int(0), int(0)]).unwrap()), int(0));
        assert_eq!(ext.eval(&[int(-1), int(1)]).unwrap(), Extended::PosInfinity);
        // homogeneity at an interior point
        let y = [int(3), int(5)];
        let p = Belief::new(vec![ratio(3, 8), ratio(5, 8)]).unwrap();
        let at_p = exact(sigma(&restaurant().into()).eval(&p).unwrap());
        assert_eq!(exact(ext.eval(&y).unwrap()), at_p * int(8));

        let neg = homogeneous_extension(&negentropy(&k2())).unwrap();
        assert_eq!(neg.eval(&[int(0), int(0)]).unwrap().to_f64(), 0.0);
        assert_eq!(neg.eval(&[int(1), int(-1)]).unwrap(), Extended::PosInfinity);
        let v = neg.eval(&[int(2), int(2)]).unwrap().to_f64();
        assert!((v + 4.0 * std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn simplex_projection() {
        assert_eq!(project_to_simplex(&[0.2, 0.8]), vec![0.2, 0.8]);
        assert_eq!(project_to_simplex(&[2.0, 0.0]), vec![1.0, 0.0]);
        let p = project_to_simplex(&[0.5, 0.5, 0.5]);
        assert!(p.iter().all(|v| (v - 1.0 / 3.0).abs() < 1e-15));
    }
}
