//! Brute-force verifiers that share no code path with the fast algorithms
//! they check, plus seeded random instance generation.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::geometry::{Belief, PolyCUAS, StateSpace, UtilityAct};
use crate::information::{InfoStructure, Partition};
use crate::scalar::{common_denominator, dot, int, Rational};

/// All beliefs whose coordinates are multiples of `1/resolution`.
#[derive(Clone, Debug)]
pub struct SimplexGrid {
    dim: usize,
    resolution: u32,
    points: Vec<Belief>,
    counts: Vec<Vec<u32>>,
    doubled: OnceLock<Box<SimplexGrid>>,
}

impl SimplexGrid {
    pub fn new(dim: usize, resolution: u32) -> Self {
        assert!(dim >= 1 && resolution >= 1);
        let counts = compositions(dim, resolution);
        let n = BigInt::from(resolution);
        let points = counts
            .iter()
            .map(|c| {
                Belief::new(
                    c.iter()
                        .map(|&x| Rational::new(BigInt::from(x), n.clone()))
                        .collect(),
                )
                .expect("grid point is a belief")
            })
            .collect();
        SimplexGrid {
            dim,
            resolution,
            points,
            counts,
            doubled: OnceLock::new(),
        }
    }

    /// The grid at twice the resolution, built once.
    fn doubled(&self) -> &SimplexGrid {
        self.doubled
            .get_or_init(|| Box::new(SimplexGrid::new(self.dim, 2 * self.resolution)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn points(&self) -> &[Belief] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Nonnegative integer vectors of length `dim` summing to `total`.
fn compositions(dim: usize, total: u32) -> Vec<Vec<u32>> {
    if dim == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(dim - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `max_a <p, a>` over the raw acts, without canonicalization.
pub fn brute_support(acts: &[UtilityAct], p: &Belief) -> Rational {
    acts.iter()
        .map(|a| dot(a.coords(), p.coords()))
        .max()
        .expect("acts must be nonempty")
}

/// Whether `x ∈ conv(gens) + R_-^K`, decided by an exact phase-one simplex
/// on `{λ >= 0, s >= 0 : Σλ = 1, Σ λ_i g_i - s = x}`.
pub fn in_hull_plus_orthant(gens: &[UtilityAct], x: &UtilityAct) -> bool {
    if gens.iter().any(|g| x.is_below(g)) {
        return true;
    }
    let k = x.dim();
    for state in 0..k {
        if gens.iter().all(|g| g.coords()[state] < x.coords()[state]) {
            return false;
        }
    }
    let n = gens.len();
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(k + 1);
    let mut rhs = Vec::with_capacity(k + 1);
    let mut ones = vec![Rational::one(); n];
    ones.extend(vec![Rational::zero(); k]);
    rows.push(ones);
    rhs.push(Rational::one());
    for state in 0..k {
        let mut r: Vec<Rational> = gens.iter().map(|g| g.coords()[state].clone()).collect();
        r.extend((0..k).map(|j| if j == state { -Rational::one() } else { Rational::zero() }));
        rows.push(r);
        rhs.push(x.coords()[state].clone());
    }
    lp_feasible(rows, rhs)
}

/// Feasibility of `{z >= 0 : A z = b}` by phase-one simplex with Bland's rule.
fn lp_feasible(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> bool {
    let m = a.len();
    let n = a[0].len();
    for (row, rhs) in a.iter_mut().zip(b.iter_mut()) {
        if rhs.is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            *rhs = -rhs.clone();
        }
    }
    // tableau columns: n originals, m artificials, rhs
    let width = n + m + 1;
    let mut t: Vec<Vec<Rational>> = a
        .into_iter()
        .zip(b)
        .enumerate()
        .map(|(i, (mut row, rhs))| {
            row.extend((0..m).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row.push(rhs);
            row
        })
        .collect();
    let mut cost = vec![Rational::zero(); width];
    for row in &t {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[width - 1] -= &row[width - 1];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((row, _)) = leave else {
            // unbounded phase-one objective cannot happen; bail out safely
            break;
        };
        let pivot = t[row][enter].clone();
        for v in t[row].iter_mut() {
            *v /= &pivot;
        }
        let pivot_row = t[row].clone();
        for (i, r) in t.iter_mut().enumerate() {
            if i != row && !r[enter].is_zero() {
                let f = r[enter].clone();
                for (v, p) in r.iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for (v, p) in cost.iter_mut().zip(&pivot_row) {
                *v -= &f * p;
            }
        }
        basis[row] = enter;
    }
    cost[width - 1].is_zero()
}

/// Box `[-half_width, half_width]^K` sampled with step `1/step_den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ActLattice {
    pub half_width: i64,
    pub step_den: i64,
}

impl Default for ActLattice {
    fn default() -> Self {
        ActLattice {
            half_width: 12,
            step_den: 4,
        }
    }
}

impl ActLattice {
    pub fn contains(&self, x: &UtilityAct) -> bool {
        let den = Rational::from_integer(BigInt::from(self.step_den));
        let bound = int(self.half_width);
        x.coords()
            .iter()
            .all(|c| (c * &den).is_integer() && c.abs() <= bound)
    }

    fn points(&self, k: usize) -> Vec<UtilityAct> {
        let steps = 2 * self.half_width * self.step_den + 1;
        let den = Rational::from_integer(BigInt::from(self.step_den));
        let low = -self.half_width * self.step_den;
        let total = (steps as usize).pow(k as u32);
        (0..total)
            .map(|mut idx| {
                let coords = (0..k)
                    .map(|_| {
                        let i = (idx % steps as usize) as i64;
                        idx /= steps as usize;
                        int(low + i) / &den
                    })
                    .collect();
                UtilityAct::new(coords)
            })
            .collect()
    }
}

/// Lattice points `x` with `x + g ∈ M` for every generator `g` of `L`.
pub fn brute_star_difference(m: &PolyCUAS, l: &PolyCUAS, lattice: ActLattice) -> Vec<UtilityAct> {
    let mut out: Vec<UtilityAct> = lattice
        .points(m.dim())
        .into_iter()
        .filter(|x| {
            l.generators()
                .iter()
                .all(|g| in_hull_plus_orthant(m.generators(), &x.add(g)))
        })
        .collect();
    out.sort();
    out
}

/// Outcome of a grid midpoint-convexity scan.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexityReport {
    pub convex: bool,
    /// Grid points `(a, b)` with `f((a+b)/2) > (f(a) + f(b)) / 2`.
    pub violation: Option<(Belief, Belief)>,
}

/// Midpoint convexity of an exact function over every pair of grid points.
///
/// `f` is sampled once on the doubled grid (which holds every midpoint) and
/// the comparisons run on integers after clearing denominators.
pub fn brute_convexity<F>(f: F, grid: &SimplexGrid) -> ConvexityReport
where
    F: Fn(&Belief) -> Rational,
{
    let fine = grid.doubled();
    let radix = 2 * grid.resolution as usize + 1;
    let index = |c: &[u32]| -> usize {
        c[..c.len() - 1]
            .iter()
            .fold(0usize, |acc, &x| acc * radix + x as usize)
    };
    let size = radix.pow(grid.dim as u32 - 1);
    let values: Vec<Rational> = fine.points.iter().map(&f).collect();
    let den = common_denominator(&values);
    let den_q = Rational::from_integer(den);
    let scaled: Option<Vec<i128>> = values
        .iter()
        .map(|v| (v * &den_q).to_integer().to_i128())
        .collect();
    let mut table_int = vec![0i128; if scaled.is_some() { size } else { 0 }];
    let mut table_q = vec![Rational::zero(); if scaled.is_some() { 0 } else { size }];
    match &scaled {
        Some(s) => {
            for (c, v) in fine.counts.iter().zip(s) {
                table_int[index(c)] = *v;
            }
        }
        None => {
            for (c, v) in fine.counts.iter().zip(values) {
                table_q[index(c)] = v;
            }
        }
    }
    // `index` is linear in the counts, so doubling and midpoints are sums.
    let base: Vec<usize> = grid.counts.iter().map(|c| index(c)).collect();
    for i in 0..grid.len() {
        for j in i + 1..grid.len() {
            let (ia, ib, im) = (2 * base[i], 2 * base[j], base[i] + base[j]);
            let violated = if scaled.is_some() {
                2 * table_int[im] > table_int[ia] + table_int[ib]
            } else {
                int(2) * &table_q[im] > &table_q[ia] + &table_q[ib]
            };
            if violated {
                return ConvexityReport {
                    convex: false,
                    violation: Some((grid.points[i].clone(), grid.points[j].clone())),
                };
            }
        }
    }
    ConvexityReport {
        convex: true,
        violation: None,
    }
}

/// Binary64 variant of [`brute_convexity`] with an absolute tolerance.
pub fn brute_convexity_numeric<F>(f: F, grid: &SimplexGrid, tolerance: f64) -> ConvexityReport
where
    F: Fn(&[f64]) -> f64,
{
    let values: Vec<f64> = grid.points.iter().map(|p| f(&p.to_f64())).collect();
    let coords: Vec<Vec<f64>> = grid.points.iter().map(Belief::to_f64).collect();
    for i in 0..grid.len() {
        for j in i + 1..grid.len() {
            let mid: Vec<f64> = coords[i]
                .iter()
                .zip(&coords[j])
                .map(|(a, b)| 0.5 * (a + b))
                .collect();
            if f(&mid) > 0.5 * (values[i] + values[j]) + tolerance {
                return ConvexityReport {
                    convex: false,
                    violation: Some((grid.points[i].clone(), grid.points[j].clone())),
                };
            }
        }
    }
    ConvexityReport {
        convex: true,
        violation: None,
    }
}

/// Knobs for [`random_instance`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InstanceParams {
    pub dim: usize,
    pub min_generators: usize,
    pub max_generators: usize,
    /// Generator coordinates are integers in `[-coord_bound, coord_bound]`.
    pub coord_bound: i64,
    pub max_signals: usize,
}

impl Default for InstanceParams {
    fn default() -> Self {
        InstanceParams {
            dim: 2,
            min_generators: 2,
            max_generators: 6,
            coord_bound: 9,
            max_signals: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RandomInstance {
    pub first: PolyCUAS,
    pub second: PolyCUAS,
    pub info: InfoStructure,
}

/// Two independent random sets and an information structure, fully
/// determined by `seed`.
pub fn random_instance(seed: u64, params: &InstanceParams) -> RandomInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = StateSpace::with_dimension(params.dim);
    let first = random_set(&mut rng, &space, params);
    let second = random_set(&mut rng, &space, params);
    let info = random_info_structure(&mut rng, &space, params.max_signals);
    RandomInstance {
        first,
        second,
        info,
    }
}

pub fn random_set(rng: &mut impl Rng, space: &StateSpace, params: &InstanceParams) -> PolyCUAS {
    let n = rng.gen_range(params.min_generators..=params.max_generators);
    let acts: Vec<UtilityAct> = (0..n)
        .map(|_| {
            UtilityAct::new(
                (0..space.dim())
                    .map(|_| int(rng.gen_range(-params.coord_bound..=params.coord_bound)))
                    .collect(),
            )
        })
        .collect();
    PolyCUAS::canonicalize(space, acts).expect("at least one act")
}

/// A rational belief with integer weights in `0..=max_weight`.
pub fn random_belief(rng: &mut impl Rng, k: usize, max_weight: i64) -> Belief {
    loop {
        let w: Vec<Rational> = (0..k).map(|_| int(rng.gen_range(0..=max_weight))).collect();
        if w.iter().any(|x| !x.is_zero()) {
            return Belief::from_weights(w).expect("nonzero weights");
        }
    }
}

pub fn random_info_structure(rng: &mut impl Rng, space: &StateSpace, max_signals: usize) -> InfoStructure {
    let n = rng.gen_range(1..=max_signals.max(1));
    let raw: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=10)).collect();
    let total: i64 = raw.iter().sum();
    let signals = raw
        .into_iter()
        .map(|w| (Rational::new(w.into(), total.into()), random_belief(rng, space.dim(), 12)))
        .collect();
    InfoStructure::new(space, signals).expect("weights normalized")
}

pub fn random_partition(rng: &mut impl Rng, n: usize) -> Partition {
    let blocks_wanted = rng.gen_range(1..=n.max(1));
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); blocks_wanted];
    for i in 0..n {
        let b = if i < blocks_wanted { i } else { rng.gen_range(0..blocks_wanted) };
        blocks[b].push(i);
    }
    Partition::new(blocks)
}

/// Seeded generator for suites that need more than one instance.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Facet-free membership check used to cross-validate `contains`.
pub fn brute_contains(g: &PolyCUAS, x: &UtilityAct) -> Result<bool> {
    g.space().check_len(x.dim())?;
    Ok(in_hull_plus_orthant(g.generators(), x))
}
