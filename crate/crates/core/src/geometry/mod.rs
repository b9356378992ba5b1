//! Exact comprehensive polyhedra in `R^K` and beliefs on the simplex.
//!
//! A decision maker is stored in generator form: the set represented by
//! generators `g_1..g_n` is `conv(g_1..g_n) + R_-^K`. Generators are kept
//! canonical (the vertices of that set, sorted lexicographically), so two
//! sets are equal iff their generator lists are equal. The inequality form
//! is derived on demand by double description and cached.

pub(crate) mod dd;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{dot, format_rational, int, to_f64, Rational};

/// Default cap on `K` for facet and vertex enumeration.
pub const DEFAULT_DIMENSION_CAP: usize = 6;

/// Ordered, named states of nature.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StateSpace {
    labels: Arc<[String]>,
}

impl StateSpace {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidStateSpace("at least one state is required".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::InvalidStateSpace(format!("duplicate state label {l:?}")));
            }
        }
        Ok(StateSpace {
            labels: labels.into(),
        })
    }

    /// States labelled `s1..sK`.
    pub fn with_dimension(k: usize) -> Self {
        assert!(k >= 1, "state space must be nonempty");
        StateSpace {
            labels: (1..=k).map(|i| format!("s{i}")).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub(crate) fn check_len(&self, len: usize) -> Result<()> {
        if len == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: len,
            })
        }
    }

    pub(crate) fn check_same(&self, other: &StateSpace) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }
}

/// A probability vector over the states.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Belief(Vec<Rational>);

impl Belief {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidBelief("no coordinates".into()));
        }
        if let Some(c) = coords.iter().find(|c| c.is_negative()) {
            return Err(Error::InvalidBelief(format!(
                "negative coordinate {}",
                format_rational(c)
            )));
        }
        let total: Rational = coords.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidBelief(format!(
                "coordinates sum to {}",
                format_rational(&total)
            )));
        }
        Ok(Belief(coords))
    }

    /// Normalizes a nonnegative, nonzero weight vector onto the simplex.
    pub fn from_weights(weights: Vec<Rational>) -> Result<Self> {
        let total: Rational = weights.iter().sum();
        if total.is_zero() || weights.iter().any(|w| w.is_negative()) {
            return Err(Error::InvalidBelief("weights must be nonnegative with positive sum".into()));
        }
        Belief::new(weights.into_iter().map(|w| w / &total).collect())
    }

    pub fn uniform(k: usize) -> Self {
        Belief(vec![Rational::new(1.into(), (k as i64).into()); k])
    }

    pub fn dirac(k: usize, state: usize) -> Self {
        Belief(
            (0..k)
                .map(|i| if i == state { Rational::one() } else { Rational::zero() })
                .collect(),
        )
    }

    /// `(1 - lambda) * self + lambda * other`.
    pub fn mix(&self, other: &Belief, lambda: &Rational) -> Belief {
        let mu = Rational::one() - lambda;
        Belief(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a * &mu + b * lambda)
                .collect(),
        )
    }

    pub fn midpoint(&self, other: &Belief) -> Belief {
        self.mix(other, &Rational::new(1.into(), 2.into()))
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(to_f64).collect()
    }
}

impl fmt::Display for Belief {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, coords: &[Rational]) -> fmt::Result {
    f.write_str("(")?;
    for (i, c) in coords.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        f.write_str(&format_rational(c))?;
    }
    f.write_str(")")
}

/// A vector of utilities, one per state.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UtilityAct(Vec<Rational>);

impl UtilityAct {
    pub fn new(coords: Vec<Rational>) -> Self {
        UtilityAct(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        UtilityAct(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(k: usize) -> Self {
        UtilityAct(vec![Rational::zero(); k])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Expected utility of the act under belief `p`.
    pub fn pair(&self, p: &Belief) -> Rational {
        dot(&self.0, p.coords())
    }

    pub fn add(&self, other: &UtilityAct) -> UtilityAct {
        UtilityAct(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &UtilityAct) -> UtilityAct {
        UtilityAct(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, factor: &Rational) -> UtilityAct {
        UtilityAct(self.0.iter().map(|a| a * factor).collect())
    }

    /// Componentwise `self <= other`.
    pub fn is_below(&self, other: &UtilityAct) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for UtilityAct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

/// The inequality `<normal, x> <= offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Facet {
    pub normal: Belief,
    pub offset: Rational,
}

impl Facet {
    pub fn holds_at(&self, x: &UtilityAct) -> bool {
        dot(self.normal.coords(), x.coords()) <= self.offset
    }
}

/// A polyhedral set `conv(generators) + R_-^K` in canonical generator form.
#[derive(Clone, Debug)]
pub struct PolyCUAS {
    space: StateSpace,
    generators: Vec<UtilityAct>,
    facets: OnceLock<Vec<Facet>>,
}

impl PartialEq for PolyCUAS {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.generators == other.generators
    }
}

impl Eq for PolyCUAS {}

impl PolyCUAS {
    /// Canonical form of `R_-^K + conv(acts)`.
    ///
    /// Dominated acts are dropped first; the survivors are kept iff the
    /// facets tight at them have full rank, i.e. iff they are vertices.
    pub fn canonicalize<I>(space: &StateSpace, acts: I) -> Result<PolyCUAS>
    where
        I: IntoIterator<Item = UtilityAct>,
    {
        let mut acts: Vec<UtilityAct> = acts.into_iter().collect();
        if acts.is_empty() {
            return Err(Error::DegenerateInput(
                "no acts given; use the empty-set sentinel for the empty set".into(),
            ));
        }
        for a in &acts {
            space.check_len(a.dim())?;
        }
        acts.sort();
        acts.dedup();
        let undominated: Vec<UtilityAct> = acts
            .iter()
            .filter(|a| !acts.iter().any(|b| b != *a && a.is_below(b)))
            .cloned()
            .collect();

        let k = space.dim();
        if undominated.len() == 1 || k == 1 {
            return Ok(PolyCUAS::from_canonical(space.clone(), undominated));
        }
        let facets = facets_of_generators(k, &undominated);
        let vertices: Vec<UtilityAct> = undominated
            .into_iter()
            .filter(|g| {
                let tight: Vec<&[Rational]> = facets
                    .iter()
                    .filter(|f| dot(f.normal.coords(), g.coords()) == f.offset)
                    .map(|f| f.normal.coords())
                    .collect();
                rank(&tight) == k
            })
            .collect();
        let set = PolyCUAS::from_canonical(space.clone(), vertices);
        let _ = set.facets.set(facets);
        Ok(set)
    }

    pub(crate) fn from_canonical(space: StateSpace, generators: Vec<UtilityAct>) -> PolyCUAS {
        debug_assert!(generators.windows(2).all(|w| w[0] < w[1]));
        PolyCUAS {
            space,
            generators,
            facets: OnceLock::new(),
        }
    }

    /// `R_-^K`, the unit of fusion.
    pub fn unit(space: &StateSpace) -> PolyCUAS {
        PolyCUAS::from_canonical(space.clone(), vec![UtilityAct::zero(space.dim())])
    }

    /// `R_-^K + {a}`: the decision maker with the single act `a`.
    pub fn singleton(space: &StateSpace, act: UtilityAct) -> Result<PolyCUAS> {
        space.check_len(act.dim())?;
        Ok(PolyCUAS::from_canonical(space.clone(), vec![act]))
    }

    /// `R_-^K + [0, a]`.
    pub fn segment(space: &StateSpace, act: UtilityAct) -> Result<PolyCUAS> {
        PolyCUAS::canonicalize(space, [UtilityAct::zero(space.dim()), act])
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn generators(&self) -> &[UtilityAct] {
        &self.generators
    }

    /// Restricted support function `p -> max_g <p, g>`.
    pub fn support(&self, p: &Belief) -> Result<Rational> {
        self.space.check_len(p.dim())?;
        Ok(self.support_unchecked(p.coords()))
    }

    pub(crate) fn support_unchecked(&self, p: &[Rational]) -> Rational {
        self.generators
            .iter()
            .map(|g| dot(g.coords(), p))
            .max()
            .expect("generator list is nonempty")
    }

    /// Generators attaining the support function at `p`.
    pub fn argmax(&self, p: &Belief) -> Result<Vec<&UtilityAct>> {
        let best = self.support(p)?;
        Ok(self
            .generators
            .iter()
            .filter(|g| g.pair(p) == best)
            .collect())
    }

    /// Minimal inequality description, normals on the simplex.
    pub fn facet_form(&self) -> Result<&[Facet]> {
        self.facet_form_capped(DEFAULT_DIMENSION_CAP)
    }

    pub fn facet_form_capped(&self, cap: usize) -> Result<&[Facet]> {
        check_cap(self.dim(), cap)?;
        Ok(self
            .facets
            .get_or_init(|| facets_of_generators(self.dim(), &self.generators)))
    }

    pub fn contains(&self, x: &UtilityAct) -> Result<bool> {
        self.space.check_len(x.dim())?;
        Ok(self.facet_form()?.iter().all(|f| f.holds_at(x)))
    }

    /// `other ⊆ self`.
    pub fn contains_set(&self, other: &PolyCUAS) -> Result<bool> {
        self.space.check_same(&other.space)?;
        let facets = self.facet_form()?;
        Ok(other
            .generators
            .iter()
            .all(|g| facets.iter().all(|f| f.holds_at(g))))
    }

    /// `{factor * x : x in self}` for `factor >= 0`.
    pub fn scale(&self, factor: &Rational) -> Result<PolyCUAS> {
        if factor.is_negative() {
            return Err(Error::DegenerateInput("negative scaling factor".into()));
        }
        if factor.is_zero() {
            return Ok(PolyCUAS::unit(&self.space));
        }
        let generators = self.generators.iter().map(|g| g.scale(factor)).collect();
        Ok(PolyCUAS::from_canonical(self.space.clone(), generators))
    }

    /// `self + t` for a fixed act `t`.
    pub fn translate(&self, t: &UtilityAct) -> Result<PolyCUAS> {
        self.space.check_len(t.dim())?;
        let generators = self.generators.iter().map(|g| g.add(t)).collect();
        Ok(PolyCUAS::from_canonical(self.space.clone(), generators))
    }
}

impl fmt::Display for PolyCUAS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("] + R_-")
    }
}

/// Either a polyhedral c-utility-act set or the empty set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DioidElement {
    Empty(StateSpace),
    Set(PolyCUAS),
}

impl DioidElement {
    pub fn space(&self) -> &StateSpace {
        match self {
            DioidElement::Empty(s) => s,
            DioidElement::Set(g) => g.space(),
        }
    }

    pub fn as_set(&self) -> Option<&PolyCUAS> {
        match self {
            DioidElement::Empty(_) => None,
            DioidElement::Set(g) => Some(g),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, DioidElement::Empty(_))
    }

    pub fn generators(&self) -> &[UtilityAct] {
        match self {
            DioidElement::Empty(_) => &[],
            DioidElement::Set(g) => g.generators(),
        }
    }

    /// `None` stands for the support value `-inf` of the empty set.
    pub fn support(&self, p: &Belief) -> Result<Option<Rational>> {
        match self {
            DioidElement::Empty(s) => {
                s.check_len(p.dim())?;
                Ok(None)
            }
            DioidElement::Set(g) => g.support(p).map(Some),
        }
    }

    /// `other ⊆ self`.
    pub fn contains_set(&self, other: &DioidElement) -> Result<bool> {
        self.space().check_same(other.space())?;
        match (self, other) {
            (_, DioidElement::Empty(_)) => Ok(true),
            (DioidElement::Empty(_), DioidElement::Set(_)) => Ok(false),
            (DioidElement::Set(g), DioidElement::Set(h)) => g.contains_set(h),
        }
    }
}

impl From<PolyCUAS> for DioidElement {
    fn from(g: PolyCUAS) -> Self {
        DioidElement::Set(g)
    }
}

impl fmt::Display for DioidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DioidElement::Empty(_) => f.write_str("empty"),
            DioidElement::Set(g) => g.fmt(f),
        }
    }
}

/// Rebuilds the canonical set from an inequality description.
///
/// Every normal lies on the simplex, so the system is always feasible; its
/// support is bounded on the simplex iff each coordinate direction `e_k`
/// occurs among the normals.
pub fn vertex_enumerate(facets: &[Facet], space: &StateSpace) -> Result<DioidElement> {
    vertex_enumerate_capped(facets, space, DEFAULT_DIMENSION_CAP)
}

pub fn vertex_enumerate_capped(
    facets: &[Facet],
    space: &StateSpace,
    cap: usize,
) -> Result<DioidElement> {
    let k = space.dim();
    check_cap(k, cap)?;
    for f in facets {
        space.check_len(f.normal.dim())?;
    }
    for state in 0..k {
        let e = Belief::dirac(k, state);
        if !facets.iter().any(|f| f.normal == e) {
            return Err(Error::UnboundedSupport { state });
        }
    }
    // homogenized cone in (x, t): b t - <n, x> >= 0, t >= 0
    let mut rows: Vec<Vec<Rational>> = facets
        .iter()
        .map(|f| {
            let mut r: Vec<Rational> = f.normal.coords().iter().map(|c| -c).collect();
            r.push(f.offset.clone());
            r
        })
        .collect();
    let mut t_row = vec![Rational::zero(); k];
    t_row.push(Rational::one());
    rows.push(t_row);

    let rays = dd::extreme_rays(&rows, k + 1).expect("coordinate facets make the cone pointed");
    let mut vertices: Vec<UtilityAct> = rays
        .into_iter()
        .filter(|r| r[k].is_positive())
        .map(|r| {
            let t = Rational::from_integer(r[k].clone());
            UtilityAct(r[..k].iter().map(|x| Rational::from_integer(x.clone()) / &t).collect())
        })
        .collect();
    if vertices.is_empty() {
        return Ok(DioidElement::Empty(space.clone()));
    }
    vertices.sort();
    Ok(DioidElement::Set(PolyCUAS::from_canonical(space.clone(), vertices)))
}

pub(crate) fn check_cap(dim: usize, cap: usize) -> Result<()> {
    if dim > cap {
        Err(Error::DimensionCap { dim, cap })
    } else {
        Ok(())
    }
}

/// Facets of `conv(gens) + R_-^K`, read off the extreme rays of the cone of
/// valid inequalities `{(n, b) : n >= 0, b >= <n, g> for all g}`.
fn facets_of_generators(k: usize, gens: &[UtilityAct]) -> Vec<Facet> {
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(gens.len() + k);
    for state in 0..k {
        let mut r = vec![Rational::zero(); k + 1];
        r[state] = Rational::one();
        rows.push(r);
    }
    for g in gens {
        let mut r: Vec<Rational> = g.coords().iter().map(|c| -c).collect();
        r.push(Rational::one());
        rows.push(r);
    }
    let rays = dd::extreme_rays(&rows, k + 1).expect("valid-inequality cone is pointed");
    let mut facets: Vec<Facet> = rays
        .into_iter()
        .filter(|r| r[..k].iter().any(|x| !x.is_zero()))
        .map(|r| {
            let total = Rational::from_integer(r[..k].iter().sum());
            let normal = r[..k]
                .iter()
                .map(|x| Rational::from_integer(x.clone()) / &total)
                .collect();
            Facet {
                normal: Belief(normal),
                offset: Rational::from_integer(r[k].clone()) / &total,
            }
        })
        .collect();
    facets.sort_by(|a, b| b.normal.cmp(&a.normal));
    facets
}

/// Vertices of `{p in simplex : <c, p> >= 0 for every constraint c}`.
pub(crate) fn simplex_region_vertices(k: usize, constraints: &[Vec<Rational>]) -> Vec<Belief> {
    let mut rows: Vec<Vec<Rational>> = (0..k)
        .map(|state| {
            let mut r = vec![Rational::zero(); k];
            r[state] = Rational::one();
            r
        })
        .collect();
    rows.extend(constraints.iter().cloned());
    let rays = dd::extreme_rays(&rows, k).expect("orthant rows make the cone pointed");
    let mut vertices: Vec<Belief> = rays
        .into_iter()
        .map(|r| {
            let total = Rational::from_integer(r.iter().sum());
            Belief(
                r.into_iter()
                    .map(|x| Rational::from_integer(x) / &total)
                    .collect(),
            )
        })
        .collect();
    vertices.sort();
    vertices
}

fn rank(vectors: &[&[Rational]]) -> usize {
    let mut echelon: Vec<(usize, Vec<Rational>)> = Vec::new();
    for v in vectors {
        let mut r = v.to_vec();
        for (pivot, e) in &echelon {
            if !r[*pivot].is_zero() {
                let f = &r[*pivot] / &e[*pivot];
                for (x, y) in r.iter_mut().zip(e) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(pivot) = r.iter().position(|x| !x.is_zero()) {
            echelon.push((pivot, r));
        }
    }
    echelon.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn k2() -> StateSpace {
        StateSpace::with_dimension(2)
    }

    fn acts(points: &[[i64; 2]]) -> Vec<UtilityAct> {
        points.iter().map(|p| UtilityAct::from_ints(p)).collect()
    }

    fn restaurant() -> PolyCUAS {
        PolyCUAS::canonicalize(&k2(), acts(&[[0, 0], [4, -1], [7, -5]])).unwrap()
    }

    fn belief(a: i64, b: i64, den: i64) -> Belief {
        Belief::new(vec![ratio(a, den), ratio(b, den)]).unwrap()
    }

    #[test]
    fn state_space_rejects_duplicates_and_empty() {
        assert!(StateSpace::new(["a", "a"]).is_err());
        assert!(StateSpace::new(Vec::<String>::new()).is_err());
        assert_eq!(StateSpace::new(["rain", "sun"]).unwrap().dim(), 2);
    }

    #[test]
    fn belief_validation() {
        assert!(Belief::new(vec![ratio(1, 2), ratio(1, 3)]).is_err());
        assert!(Belief::new(vec![ratio(3, 2), ratio(-1, 2)]).is_err());
        assert_eq!(
            Belief::from_weights(vec![int(1), int(3)]).unwrap(),
            belief(1, 3, 4)
        );
    }

    #[test]
    fn canonicalize_keeps_hull_vertices() {
        assert_eq!(restaurant().generators(), &acts(&[[0, 0], [4, -1], [7, -5]])[..]);
    }

    #[test]
    fn canonicalize_absorbs_dominated_point() {
        let g = PolyCUAS::canonicalize(&k2(), acts(&[[0, 0], [-1, -1]])).unwrap();
        assert_eq!(g.generators(), &acts(&[[0, 0]])[..]);
    }

    #[test]
    fn canonicalize_absorbs_point_under_edge() {
        // (5,-4) is not dominated by any single act, but lies below C-D.
        let g =
            PolyCUAS::canonicalize(&k2(), acts(&[[5, -4], [7, -5], [0, 0], [4, -1]])).unwrap();
        assert_eq!(g, restaurant());
    }

    #[test]
    fn canonicalize_rejects_empty_and_wrong_arity() {
        assert!(matches!(
            PolyCUAS::canonicalize(&k2(), Vec::new()),
            Err(Error::DegenerateInput(_))
        ));
        assert!(matches!(
            PolyCUAS::canonicalize(&k2(), vec![UtilityAct::from_ints(&[1, 2, 3])]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn support_values() {
        let g = restaurant();
        assert_eq!(g.support(&Belief::dirac(2, 0)).unwrap(), int(7));
        assert_eq!(g.support(&Belief::uniform(2)).unwrap(), ratio(3, 2));
        let unit = PolyCUAS::unit(&k2());
        assert_eq!(unit.support(&belief(1, 2, 3)).unwrap(), int(0));
        let a = PolyCUAS::singleton(&k2(), UtilityAct::from_ints(&[3, -2])).unwrap();
        assert_eq!(a.support(&belief(1, 2, 3)).unwrap(), ratio(-1, 3));
    }

    #[test]
    fn facets_of_negative_orthant() {
        let unit = PolyCUAS::unit(&k2());
        let f = unit.facet_form().unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|f| f.offset.is_zero()));
        assert!(f.iter().any(|f| f.normal == Belief::dirac(2, 0)));
        assert!(f.iter().any(|f| f.normal == Belief::dirac(2, 1)));
    }

    #[test]
    fn facets_of_restaurant_set() {
        let g = restaurant();
        let mut got: Vec<(Belief, Rational)> = g
            .facet_form()
            .unwrap()
            .iter()
            .map(|f| (f.normal.clone(), f.offset.clone()))
            .collect();
        got.sort();
        let mut want = vec![
            (belief(0, 1, 1), int(0)),
            (belief(1, 4, 5), int(0)),
            (belief(4, 3, 7), ratio(13, 7)),
            (belief(1, 0, 1), int(7)),
        ];
        want.sort();
        assert_eq!(got, want);
        for f in g.facet_form().unwrap() {
            assert_eq!(f.offset, g.support(&f.normal).unwrap());
        }
    }

    #[test]
    fn facets_of_singleton() {
        let a = PolyCUAS::singleton(&k2(), UtilityAct::new(vec![ratio(5, 2), int(-3)])).unwrap();
        let f = a.facet_form().unwrap();
        assert_eq!(f.len(), 2);
        for facet in f {
            let idx = if facet.normal == Belief::dirac(2, 0) { 0 } else { 1 };
            assert_eq!(&facet.offset, &a.generators()[0].coords()[idx]);
        }
    }

    #[test]
    fn vertex_enumeration_round_trips() {
        for g in [PolyCUAS::unit(&k2()), restaurant()] {
            let back = vertex_enumerate(g.facet_form().unwrap(), &k2()).unwrap();
            assert_eq!(back, DioidElement::Set(g.clone()));
        }
    }

    #[test]
    fn half_space_is_unbounded() {
        let f = Facet {
            normal: belief(1, 1, 2),
            offset: int(0),
        };
        assert!(matches!(
            vertex_enumerate(&[f], &k2()),
            Err(Error::UnboundedSupport { .. })
        ));
    }

    #[test]
    fn dimension_cap_is_enforced() {
        let space = StateSpace::with_dimension(7);
        let g = PolyCUAS::unit(&space);
        assert!(matches!(g.facet_form(), Err(Error::DimensionCap { dim: 7, cap: 6 })));
        assert_eq!(g.facet_form_capped(7).unwrap().len(), 7);
    }

    #[test]
    fn membership() {
        let g = restaurant();
        assert!(g.contains(&UtilityAct::from_ints(&[5, -4])).unwrap());
        assert!(!g.contains(&UtilityAct::from_ints(&[8, 0])).unwrap());
        assert!(g.contains_set(&PolyCUAS::unit(&k2())).unwrap());
        assert!(!PolyCUAS::unit(&k2()).contains_set(&g).unwrap());
    }

    #[test]
    fn three_dimensional_cube_corner() {
        let space = StateSpace::with_dimension(3);
        let g = PolyCUAS::canonicalize(
            &space,
            vec![
                UtilityAct::from_ints(&[1, 0, 0]),
                UtilityAct::from_ints(&[0, 1, 0]),
                UtilityAct::from_ints(&[0, 0, 1]),
                UtilityAct::from_ints(&[0, 0, 0]),
            ],
        )
        .unwrap();
        assert_eq!(g.generators().len(), 3);
        // x_i <= 1, x_i + x_j <= 1 and x + y + z <= 1
        assert_eq!(g.facet_form().unwrap().len(), 7);
        let back = vertex_enumerate(g.facet_form().unwrap(), &space).unwrap();
        assert_eq!(back, DioidElement::Set(g));
    }

    #[test]
    fn region_vertices_of_a_cell() {
        // where (4,-1) beats (0,0) and (7,-5): t in [1/5, 4/7]
        let c = vec![
            vec![int(4), int(-1)],
            vec![int(-3), int(4)],
        ];
        let v = simplex_region_vertices(2, &c);
        assert_eq!(v, vec![belief(1, 4, 5), belief(4, 3, 7)]);
    }

    #[test]
    fn one_dimensional_sets() {
        let s = StateSpace::with_dimension(1);
        let g = PolyCUAS::canonicalize(&s, acts1(&[3, -2, 5])).unwrap();
        assert_eq!(g.generators(), &acts1(&[5])[..]);
        let f = g.facet_form().unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].offset, int(5));
    }

    fn acts1(v: &[i64]) -> Vec<UtilityAct> {
        v.iter().map(|&x| UtilityAct::from_ints(&[x])).collect()
    }
}
