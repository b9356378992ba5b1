//! Union (⊕), fusion (⊗) and star-difference of c-utility-act sets.
//!
//! `(sets, ⊕, ⊗)` is an idempotent commutative semiring with the empty set
//! as zero and `R_-^K` as unit. Under the support-function map, ⊕ becomes
//! pointwise max and ⊗ becomes pointwise sum.

use std::fmt;

use crate::error::Result;
use crate::geometry::{vertex_enumerate, DioidElement, Facet, PolyCUAS, StateSpace, UtilityAct};

/// `closure(conv(G ∪ H))`.
pub fn oplus(g: &DioidElement, h: &DioidElement) -> Result<DioidElement> {
    g.space().check_same(h.space())?;
    match (g, h) {
        (DioidElement::Empty(_), x) | (x, DioidElement::Empty(_)) => Ok(x.clone()),
        (DioidElement::Set(a), DioidElement::Set(b)) => Ok(DioidElement::Set(union(a, b)?)),
    }
}

/// `G + H` (Minkowski sum).
pub fn otimes(g: &DioidElement, h: &DioidElement) -> Result<DioidElement> {
    g.space().check_same(h.space())?;
    match (g, h) {
        (DioidElement::Empty(s), _) | (_, DioidElement::Empty(s)) => Ok(DioidElement::Empty(s.clone())),
        (DioidElement::Set(a), DioidElement::Set(b)) => Ok(DioidElement::Set(fusion(a, b)?)),
    }
}

/// ⊕ restricted to nonempty sets.
pub fn union(g: &PolyCUAS, h: &PolyCUAS) -> Result<PolyCUAS> {
    g.space().check_same(h.space())?;
    PolyCUAS::canonicalize(
        g.space(),
        g.generators().iter().chain(h.generators()).cloned(),
    )
}

/// ⊗ restricted to nonempty sets.
pub fn fusion(g: &PolyCUAS, h: &PolyCUAS) -> Result<PolyCUAS> {
    g.space().check_same(h.space())?;
    let sums: Vec<UtilityAct> = g
        .generators()
        .iter()
        .flat_map(|a| h.generators().iter().map(move |b| a.add(b)))
        .collect();
    PolyCUAS::canonicalize(g.space(), sums)
}

/// Largest `T` with `L + T ⊆ M`.
///
/// `x + L ⊆ M` iff `x + g ∈ M` for every generator `g` of `L`: convexity of
/// `M` covers convex combinations of generators and comprehensiveness covers
/// the `R_-^K` part. Hence each facet `<n, x> <= b` of `M` turns into
/// `<n, x> <= b - σ_L(n)`.
pub fn star_difference(m: &PolyCUAS, l: &PolyCUAS) -> Result<DioidElement> {
    m.space().check_same(l.space())?;
    let eroded: Vec<Facet> = m
        .facet_form()?
        .iter()
        .map(|f| Facet {
            normal: f.normal.clone(),
            offset: &f.offset - l.support_unchecked(f.normal.coords()),
        })
        .collect();
    vertex_enumerate(&eroded, m.space())
}

/// `R_-^K`, as a dioid element.
pub fn unit(space: &StateSpace) -> DioidElement {
    DioidElement::Set(PolyCUAS::unit(space))
}

pub fn zero(space: &StateSpace) -> DioidElement {
    DioidElement::Empty(space.clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DioidLaw {
    OplusCommutative,
    OplusAssociative,
    OtimesCommutative,
    OtimesAssociative,
    Distributive,
    Idempotent,
    ZeroNeutral,
    ZeroAbsorbing,
    UnitNeutral,
}

impl fmt::Display for DioidLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DioidLaw::OplusCommutative => "A⊕B = B⊕A",
            DioidLaw::OplusAssociative => "(A⊕B)⊕C = A⊕(B⊕C)",
            DioidLaw::OtimesCommutative => "A⊗B = B⊗A",
            DioidLaw::OtimesAssociative => "(A⊗B)⊗C = A⊗(B⊗C)",
            DioidLaw::Distributive => "A⊗(B⊕C) = (A⊗B)⊕(A⊗C)",
            DioidLaw::Idempotent => "A⊕A = A",
            DioidLaw::ZeroNeutral => "A⊕∅ = A",
            DioidLaw::ZeroAbsorbing => "A⊗∅ = ∅",
            DioidLaw::UnitNeutral => "A⊗R_- = A",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawFailure {
    pub triple: usize,
    pub law: DioidLaw,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DioidLawReport {
    pub triples_checked: usize,
    pub laws_checked: usize,
    pub failures: Vec<LawFailure>,
}

impl DioidLawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every dioid law on each triple by canonical-form equality.
pub fn check_dioid_laws(
    sample: &[(DioidElement, DioidElement, DioidElement)],
) -> Result<DioidLawReport> {
    let mut report = DioidLawReport::default();
    for (i, (a, b, c)) in sample.iter().enumerate() {
        a.space().check_same(b.space())?;
        a.space().check_same(c.space())?;
        let space = a.space();
        let mut record = |law: DioidLaw, holds: bool| {
            report.laws_checked += 1;
            if !holds {
                report.failures.push(LawFailure { triple: i, law });
            }
        };

        record(DioidLaw::OplusCommutative, oplus(a, b)? == oplus(b, a)?);
        record(
            DioidLaw::OplusAssociative,
            oplus(&oplus(a, b)?, c)? == oplus(a, &oplus(b, c)?)?,
        );
        record(DioidLaw::OtimesCommutative, otimes(a, b)? == otimes(b, a)?);
        record(
            DioidLaw::OtimesAssociative,
            otimes(&otimes(a, b)?, c)? == otimes(a, &otimes(b, c)?)?,
        );
        record(
            DioidLaw::Distributive,
            otimes(a, &oplus(b, c)?)? == oplus(&otimes(a, b)?, &otimes(a, c)?)?,
        );
        record(DioidLaw::Idempotent, oplus(a, a)? == *a);
        record(DioidLaw::ZeroNeutral, oplus(a, &zero(space))? == *a);
        record(DioidLaw::ZeroAbsorbing, otimes(a, &zero(space))? == zero(space));
        record(DioidLaw::UnitNeutral, otimes(a, &unit(space))? == *a);
        report.triples_checked += 1;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Belief;
    use crate::scalar::{int, ratio};

    fn k2() -> StateSpace {
        StateSpace::with_dimension(2)
    }

    fn set(points: &[[i64; 2]]) -> PolyCUAS {
        PolyCUAS::canonicalize(&k2(), points.iter().map(|p| UtilityAct::from_ints(p))).unwrap()
    }

    fn restaurant() -> PolyCUAS {
        set(&[[0, 0], [4, -1], [7, -5]])
    }

    #[test]
    fn union_with_e_adds_a_vertex() {
        let u = union(&restaurant(), &set(&[[8, -8]])).unwrap();
        assert_eq!(u, set(&[[0, 0], [4, -1], [7, -5], [8, -8]]));
        assert_eq!(u.generators().len(), 4);
    }

    #[test]
    fn fusion_with_segment_matches_union() {
        let seg = set(&[[0, 0], [1, -3]]);
        assert_eq!(
            fusion(&restaurant(), &seg).unwrap(),
            union(&restaurant(), &set(&[[8, -8]])).unwrap()
        );
    }

    #[test]
    fn neutral_absorbing_and_unit() {
        let l: DioidElement = restaurant().into();
        let e = zero(&k2());
        assert_eq!(oplus(&l, &l).unwrap(), l);
        assert_eq!(oplus(&l, &e).unwrap(), l);
        assert_eq!(oplus(&e, &l).unwrap(), l);
        assert_eq!(otimes(&l, &e).unwrap(), e);
        assert_eq!(otimes(&l, &unit(&k2())).unwrap(), l);
    }

    #[test]
    fn star_difference_recovers_fusion_factor() {
        let l = restaurant();
        let seg = set(&[[0, 0], [1, -3]]);
        let m = fusion(&l, &seg).unwrap();
        let t = star_difference(&m, &l).unwrap();
        let t = t.as_set().unwrap();
        assert!(t.contains_set(&seg).unwrap());
        assert_eq!(fusion(&l, t).unwrap(), m);
    }

    #[test]
    fn star_difference_with_itself_is_unit() {
        let l = restaurant();
        let t = star_difference(&l, &l).unwrap();
        let t = t.as_set().unwrap();
        assert!(t.contains_set(&PolyCUAS::unit(&k2())).unwrap());
        assert_eq!(fusion(&l, t).unwrap(), l);
    }

    #[test]
    fn star_difference_from_orthant() {
        // {x : x + L ⊆ R_-^2} for L with generators (2,-1),(-1,3) is
        // R_-^2 + (-2,-3).
        let l = set(&[[2, -1], [-1, 3]]);
        let t = star_difference(&PolyCUAS::unit(&k2()), &l).unwrap();
        assert_eq!(t, set(&[[-2, -3]]).into());
    }

    #[test]
    fn support_of_union_and_fusion() {
        let g = restaurant();
        let h = set(&[[-2, 3], [8, -8]]);
        let u = union(&g, &h).unwrap();
        let f = fusion(&g, &h).unwrap();
        for (a, b) in [(0, 1), (1, 5), (2, 7), (1, 2), (1, 1)] {
            let p = Belief::new(vec![ratio(a, b), ratio(b - a, b)]).unwrap();
            let (sg, sh) = (g.support(&p).unwrap(), h.support(&p).unwrap());
            assert_eq!(u.support(&p).unwrap(), sg.clone().max(sh.clone()));
            assert_eq!(f.support(&p).unwrap(), sg + sh);
        }
        assert_eq!(f.support(&Belief::dirac(2, 0)).unwrap(), int(15));
    }

    #[test]
    fn laws_on_degenerate_and_fig_triples() {
        let e = zero(&k2());
        let r = check_dioid_laws(&[(e.clone(), e.clone(), e)]).unwrap();
        assert!(r.passed());
        let r = check_dioid_laws(&[(
            restaurant().into(),
            set(&[[8, -8]]).into(),
            set(&[[0, 0], [1, -3]]).into(),
        )])
        .unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.laws_checked, 9);
    }

    #[test]
    fn mixed_spaces_are_rejected() {
        let a: DioidElement = restaurant().into();
        let b = unit(&StateSpace::with_dimension(3));
        assert!(oplus(&a, &b).is_err());
        assert!(otimes(&a, &b).is_err());
    }
}
