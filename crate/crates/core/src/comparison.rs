//! Deciding whether one decision maker values information more than another.
//!
//! `M` values information more than `L` iff `M = L ⊗ T` for some set `T`,
//! and then `T` can be taken to be the star-difference `M ∼ L`. The exact
//! decision therefore erodes `M` by `L` and checks that fusing back
//! reproduces `M`. Convexity sampling of `σ_M - σ_L` is kept as a one-sided
//! falsifier.
//!
//! Regions of the simplex used below (cells, sublevel sets of differences
//! of linear functions) are all cones intersected with the simplex, so they
//! are handled as `{p ∈ Δ : <c_i, p> >= 0}` and compared through their
//! vertices. Boundaries are closed.

use std::fmt;

use num_traits::Signed;

use crate::dioid::{fusion, star_difference, union};
use crate::error::{Error, Result};
use crate::geometry::{
    check_cap, simplex_region_vertices, Belief, DioidElement, PolyCUAS, DEFAULT_DIMENSION_CAP,
    UtilityAct,
};
use crate::information::{garble, relative_voi_unchecked, InfoStructure, Partition};
use crate::oracle::{random_belief, rng, SimplexGrid};
use crate::scalar::{dot, int, Rational};

/// Grid resolution used by the region-convexity probes.
pub const REGION_PROBE_RESOLUTION: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// `L ⊗ (M ∼ L) = M`, checked by mutual containment.
    StarDifferenceReconstruction,
    /// `M ∼ L` is empty.
    EmptyStarDifference,
    /// `L ⊗ (M ∼ L)` is a proper subset of `M`.
    ReconstructionMismatch,
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Evidence::StarDifferenceReconstruction => "star-difference reconstruction M = L ⊗ (M ∼ L)",
            Evidence::EmptyStarDifference => "star-difference M ∼ L is empty",
            Evidence::ReconstructionMismatch => "L ⊗ (M ∼ L) is strictly smaller than M",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonVerdict {
    pub holds: bool,
    /// `T` with `M = L ⊗ T`; present iff `holds`.
    pub witness: Option<DioidElement>,
    pub star_difference: DioidElement,
    pub evidence: Evidence,
}

/// Whether `M` values information (weakly) more than `L`.
pub fn values_more(m: &PolyCUAS, l: &PolyCUAS) -> Result<ComparisonVerdict> {
    m.space().check_same(l.space())?;
    let t = star_difference(m, l)?;
    let (holds, evidence) = match &t {
        DioidElement::Empty(_) => (false, Evidence::EmptyStarDifference),
        DioidElement::Set(t_set) => {
            let rebuilt = fusion(l, t_set)?;
            if rebuilt.contains_set(m)? && m.contains_set(&rebuilt)? {
                (true, Evidence::StarDifferenceReconstruction)
            } else {
                (false, Evidence::ReconstructionMismatch)
            }
        }
    };
    Ok(ComparisonVerdict {
        holds,
        witness: holds.then(|| t.clone()),
        star_difference: t,
        evidence,
    })
}

/// Random exact midpoint test of `σ_M - σ_L`. `false` is conclusive.
pub fn convexity_probe(m: &PolyCUAS, l: &PolyCUAS, trials: usize, seed: u64) -> Result<bool> {
    m.space().check_same(l.space())?;
    Ok(find_difference_violation(m, l, trials, seed).is_none())
}

/// A belief pair at whose midpoint `σ_M - σ_L` lies above the chord.
pub fn find_difference_violation(
    m: &PolyCUAS,
    l: &PolyCUAS,
    trials: usize,
    seed: u64,
) -> Option<(Belief, Belief)> {
    let k = m.dim();
    let diff = |p: &Belief| m.support_unchecked(p.coords()) - l.support_unchecked(p.coords());
    let mut rng = rng(seed);
    for _ in 0..trials {
        let a = random_belief(&mut rng, k, 1000);
        let b = random_belief(&mut rng, k, 1000);
        if int(2) * diff(&a.midpoint(&b)) > diff(&a) + diff(&b) {
            return Some((a, b));
        }
    }
    None
}

/// Relative value of information of `M` dominates that of `L` on every
/// `(q, partition)` pair of the suite.
pub fn values_more_strong(
    m: &PolyCUAS,
    l: &PolyCUAS,
    suite: &[(InfoStructure, Partition)],
) -> Result<bool> {
    m.space().check_same(l.space())?;
    for (q, partition) in suite {
        let coarse = garble(q, partition)?;
        if relative_voi_unchecked(m, q, &coarse) < relative_voi_unchecked(l, q, &coarse) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A two-signal structure and its full garbling that separates `M` from
/// `L` whenever `(a, b)` is a midpoint-convexity violation of `σ_M - σ_L`.
pub fn separating_suite(a: &Belief, b: &Belief) -> Result<(InfoStructure, Partition)> {
    let half = Rational::new(1.into(), 2.into());
    let space = crate::geometry::StateSpace::with_dimension(a.dim());
    let q = InfoStructure::new(&space, vec![(half.clone(), a.clone()), (half, b.clone())])?;
    Ok((q, Partition::trivial(2)))
}

/// A region `{p ∈ Δ : <c, p> >= 0 for every constraint c}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexRegion {
    pub constraints: Vec<Vec<Rational>>,
    pub vertices: Vec<Belief>,
}

impl SimplexRegion {
    fn new(k: usize, constraints: Vec<Vec<Rational>>) -> Self {
        let vertices = simplex_region_vertices(k, &constraints);
        SimplexRegion {
            constraints,
            vertices,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, p: &Belief) -> bool {
        self.constraints
            .iter()
            .all(|c| !dot(c, p.coords()).is_negative())
    }

    /// `self ⊆ other`, by testing the vertices of `self`.
    pub fn within(&self, other: &SimplexRegion) -> bool {
        self.vertices.iter().all(|v| other.contains(v))
    }
}

/// The beliefs at which `owner` attains the support function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalCell {
    pub owner: UtilityAct,
    pub region: SimplexRegion,
}

/// `{p : <p, a> >= <p, b> for every b in others}`.
fn dominance_constraints<'a>(
    a: &UtilityAct,
    others: impl IntoIterator<Item = &'a UtilityAct>,
) -> Vec<Vec<Rational>> {
    others
        .into_iter()
        .filter(|b| *b != a)
        .map(|b| a.sub(b).coords().to_vec())
        .collect()
}

/// The generator-indexed decomposition of the simplex.
pub fn normal_cells(g: &PolyCUAS) -> Result<Vec<NormalCell>> {
    check_cap(g.dim(), DEFAULT_DIMENSION_CAP)?;
    Ok(g.generators()
        .iter()
        .map(|owner| NormalCell {
            owner: owner.clone(),
            region: SimplexRegion::new(g.dim(), dominance_constraints(owner, g.generators())),
        })
        .collect())
}

fn cell_of(l: &PolyCUAS, owner: &UtilityAct) -> SimplexRegion {
    SimplexRegion::new(l.dim(), dominance_constraints(owner, l.generators()))
}

/// Every cell of `M` lies inside some cell of `L`.
pub fn refines(m: &PolyCUAS, l: &PolyCUAS) -> Result<bool> {
    m.space().check_same(l.space())?;
    let coarse = normal_cells(l)?;
    Ok(normal_cells(m)?
        .iter()
        .all(|cell| coarse.iter().any(|c| cell.region.within(&c.region))))
}

/// Midpoint-convexity scan of a subset of the simplex on a grid.
fn region_probe(k: usize, member: impl Fn(&Belief) -> bool) -> bool {
    let grid = SimplexGrid::new(k, REGION_PROBE_RESOLUTION);
    let inside: Vec<&Belief> = grid.points().iter().filter(|p| member(p)).collect();
    for (i, a) in inside.iter().enumerate() {
        for b in &inside[i + 1..] {
            if !member(&a.midpoint(b)) {
                return false;
            }
        }
    }
    true
}

/// `{σ_L ≤ σ_G}` split by the generator of `G` attaining `σ_G`.
fn upper_pieces(l: &PolyCUAS, g: &PolyCUAS) -> Vec<(UtilityAct, SimplexRegion)> {
    g.generators()
        .iter()
        .map(|gen| {
            let mut c = dominance_constraints(gen, g.generators());
            c.extend(dominance_constraints(gen, l.generators()));
            (gen.clone(), SimplexRegion::new(g.dim(), c))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnionFlexibilityReport {
    /// `L ⊕ G` values information more than `L` (exact).
    pub values_more: bool,
    pub witness: Option<DioidElement>,
    /// Grid evidence that `{σ_G ≤ σ_L}` is convex (necessary).
    pub dominated_region_convex: bool,
    /// The normal fan of `L ⊕ G` refines that of `L` (necessary).
    pub fan_refines: bool,
    /// Each piece of `{σ_L ≤ σ_G}` sits in a single cell of `L` (necessary).
    pub pieces_in_single_cells: bool,
    /// Generators of `G` whose piece straddles several cells of `L`.
    pub straddling_generators: Vec<UtilityAct>,
    /// `G = L ⊗ H` for some `H` (sufficient).
    pub g_is_fusion_of_l: bool,
    /// Generator `l` with `{<·,l> ≤ σ_G} ⊂ {σ_L ≤ σ_G} ⊂ {σ_L = <·,l>}`
    /// (sufficient).
    pub sufficient_generator: Option<UtilityAct>,
    /// `L ⊕ G = L ⊗ (R_- ⊕ (G - l))` for the sufficient generator.
    pub sufficient_identity_holds: Option<bool>,
}

pub fn union_flexibility_check(l: &PolyCUAS, g: &PolyCUAS) -> Result<UnionFlexibilityReport> {
    l.space().check_same(g.space())?;
    check_cap(l.dim(), DEFAULT_DIMENSION_CAP)?;
    let k = l.dim();
    let joined = union(l, g)?;
    let verdict = values_more(&joined, l)?;

    let dominated_region_convex = region_probe(k, |p| {
        g.support_unchecked(p.coords()) <= l.support_unchecked(p.coords())
    });
    let fan_refines = refines(&joined, l)?;

    let l_cells = normal_cells(l)?;
    let pieces = upper_pieces(l, g);
    let straddling_generators: Vec<UtilityAct> = pieces
        .iter()
        .filter(|(_, piece)| !l_cells.iter().any(|c| piece.within(&c.region)))
        .map(|(gen, _)| gen.clone())
        .collect();

    let g_is_fusion_of_l = values_more(g, l)?.holds;

    let mut sufficient_generator = None;
    for (lgen, cell) in l_cells.iter().map(|c| (&c.owner, &c.region)) {
        let upper_in_cell = pieces.iter().all(|(_, piece)| piece.within(cell));
        if !upper_in_cell {
            continue;
        }
        // {<·,l> ≤ σ_G} ⊂ {σ_L ≤ σ_G}, piece by piece of σ_G
        let lower_in_upper = g.generators().iter().all(|gen| {
            let mut c = dominance_constraints(gen, g.generators());
            c.push(gen.sub(lgen).coords().to_vec());
            let region = SimplexRegion::new(k, c);
            region.vertices.iter().all(|v| {
                l.generators().iter().all(|other| gen.pair(v) >= other.pair(v))
            })
        });
        if lower_in_upper {
            sufficient_generator = Some(lgen.clone());
            break;
        }
    }
    let sufficient_identity_holds = match &sufficient_generator {
        Some(lgen) => {
            let shifted = g
                .generators()
                .iter()
                .map(|gen| gen.sub(lgen))
                .chain(std::iter::once(UtilityAct::zero(k)));
            let factor = PolyCUAS::canonicalize(l.space(), shifted)?;
            Some(fusion(l, &factor)? == joined)
        }
        None => None,
    };

    Ok(UnionFlexibilityReport {
        values_more: verdict.holds,
        witness: verdict.witness,
        dominated_region_convex,
        fan_refines,
        pieces_in_single_cells: straddling_generators.is_empty(),
        straddling_generators,
        g_is_fusion_of_l,
        sufficient_generator,
        sufficient_identity_holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LittleFlexibilityReport {
    /// `â ∈ L`, so adding it changes nothing.
    pub already_contained: bool,
    /// `L ⊕ (R_- ⊗ {â})` values information more than `L` (exact).
    pub values_more: bool,
    pub witness: Option<DioidElement>,
    /// Grid evidence that `{<·,â> ≤ σ_L}` is convex (necessary).
    pub lower_region_convex: bool,
    /// Some `l` with `{σ_L ≤ <·,â>} ⊂ {σ_L = <·,l>}` (necessary).
    pub necessary_generator: Option<UtilityAct>,
    /// All `l` with `{<·,l> ≤ <·,â>} ⊂ {σ_L ≤ <·,â>} ⊂ {σ_L = <·,l>}`.
    pub qualifying_generators: Vec<UtilityAct>,
}

fn little_regions(l: &PolyCUAS, act: &UtilityAct, lgen: &UtilityAct) -> (SimplexRegion, SimplexRegion, SimplexRegion) {
    let k = l.dim();
    let below_act = SimplexRegion::new(k, vec![act.sub(lgen).coords().to_vec()]);
    let support_below_act = SimplexRegion::new(
        k,
        l.generators().iter().map(|o| act.sub(o).coords().to_vec()).collect(),
    );
    (below_act, support_below_act, cell_of(l, lgen))
}

fn qualifies(l: &PolyCUAS, act: &UtilityAct, lgen: &UtilityAct) -> bool {
    let (below_act, support_below_act, cell) = little_regions(l, act, lgen);
    below_act.within(&support_below_act) && support_below_act.within(&cell)
}

pub fn little_flexibility_check(l: &PolyCUAS, act: &UtilityAct) -> Result<LittleFlexibilityReport> {
    l.space().check_len(act.dim())?;
    check_cap(l.dim(), DEFAULT_DIMENSION_CAP)?;
    let added = PolyCUAS::singleton(l.space(), act.clone())?;
    let verdict = values_more(&union(l, &added)?, l)?;
    let lower_region_convex = region_probe(l.dim(), |p| act.pair(p) <= l.support_unchecked(p.coords()));
    let necessary_generator = l
        .generators()
        .iter()
        .find(|lgen| {
            let (_, support_below_act, cell) = little_regions(l, act, lgen);
            support_below_act.within(&cell)
        })
        .cloned();
    let qualifying_generators = l
        .generators()
        .iter()
        .filter(|lgen| qualifies(l, act, lgen))
        .cloned()
        .collect();
    Ok(LittleFlexibilityReport {
        already_contained: l.contains(act)?,
        values_more: verdict.holds,
        witness: verdict.witness,
        lower_region_convex,
        necessary_generator,
        qualifying_generators,
    })
}

/// `R_- ⊗ [0, â - l]`, after checking that `l` qualifies and that
/// `L ⊕ (R_- ⊗ {â}) = L ⊗ (R_- ⊗ [0, â - l])`.
pub fn little_flexibility_witness(
    l: &PolyCUAS,
    act: &UtilityAct,
    lgen: &UtilityAct,
) -> Result<DioidElement> {
    l.space().check_len(act.dim())?;
    l.space().check_len(lgen.dim())?;
    if !l.generators().contains(lgen) || !qualifies(l, act, lgen) {
        return Err(Error::NoQualifyingGenerator);
    }
    let witness = PolyCUAS::segment(l.space(), act.sub(lgen))?;
    let joined = union(l, &PolyCUAS::singleton(l.space(), act.clone())?)?;
    if fusion(l, &witness)? != joined {
        return Err(Error::IdentityViolated(format!(
            "L ⊕ {act} differs from L ⊗ {witness}"
        )));
    }
    Ok(DioidElement::Set(witness))
}
