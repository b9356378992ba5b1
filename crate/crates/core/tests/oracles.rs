//! Fast paths against their brute-force counterparts on seeded instances.

use cuas_core::dioid::{fusion, star_difference};
use cuas_core::geometry::vertex_enumerate;
use cuas_core::oracle::{
    brute_contains, brute_star_difference, brute_support, random_info_structure, random_set, rng,
    ActLattice, InstanceParams, SimplexGrid,
};
use cuas_core::{voi, DioidElement, PolyCUAS, Rational, StateSpace, UtilityAct};
use rand::Rng;

const INSTANCES: u64 = 500;

fn setup(seed: u64) -> (StateSpace, InstanceParams, rand_chacha::ChaCha8Rng) {
    let dim = 2 + (seed % 2) as usize;
    let params = InstanceParams {
        dim,
        ..InstanceParams::default()
    };
    (StateSpace::with_dimension(dim), params, rng(seed))
}

fn raw_acts(r: &mut impl Rng, dim: usize) -> Vec<UtilityAct> {
    let n = r.gen_range(1..=8);
    (0..n)
        .map(|_| UtilityAct::from_ints(&(0..dim).map(|_| r.gen_range(-9..=9)).collect::<Vec<_>>()))
        .collect()
}

#[test]
fn support_matches_raw_maximum() {
    let grids = [SimplexGrid::new(2, 24), SimplexGrid::new(3, 12)];
    for seed in 0..INSTANCES {
        let (space, _, mut r) = setup(seed);
        let acts = raw_acts(&mut r, space.dim());
        let g = PolyCUAS::canonicalize(&space, acts.clone()).unwrap();
        for p in grids[space.dim() - 2].points() {
            assert_eq!(g.support(p).unwrap(), brute_support(&acts, p), "seed {seed} at {p}");
        }
    }
}

#[test]
fn membership_matches_linear_program() {
    for seed in 0..INSTANCES {
        let (space, params, mut r) = setup(seed);
        let g = random_set(&mut r, &space, &params);
        for _ in 0..40 {
            let x = UtilityAct::new(
                (0..space.dim())
                    .map(|_| Rational::new(r.gen_range(-40..=40).into(), 4.into()))
                    .collect(),
            );
            assert_eq!(g.contains(&x).unwrap(), brute_contains(&g, &x).unwrap(), "seed {seed}: {x}");
        }
    }
}

#[test]
fn facets_reproduce_support_and_generators() {
    for seed in 0..INSTANCES {
        let (space, params, mut r) = setup(seed);
        let g = random_set(&mut r, &space, &params);
        let facets = g.facet_form().unwrap();
        for f in facets {
            assert_eq!(f.offset, brute_support(g.generators(), &f.normal), "seed {seed}");
        }
        // every generator is tight on at least K facets and inside all of them
        for a in g.generators() {
            assert!(facets.iter().all(|f| f.holds_at(a)), "seed {seed}");
            let tight = facets.iter().filter(|f| a.pair(&f.normal) == f.offset).count();
            assert!(tight >= space.dim(), "seed {seed}: {a} tight on {tight} facets");
        }
        assert_eq!(vertex_enumerate(facets, &space).unwrap(), DioidElement::Set(g), "seed {seed}");
    }
}

#[test]
fn star_difference_is_sandwiched_by_lattice_search() {
    let lattice = ActLattice {
        half_width: 10,
        step_den: 1,
    };
    let space = StateSpace::with_dimension(2);
    let params = InstanceParams::default();
    for seed in 0..INSTANCES {
        let mut r = rng(seed.wrapping_add(1 << 48));
        let l = random_set(&mut r, &space, &params);
        let other = random_set(&mut r, &space, &params);
        let m = if seed % 2 == 0 { fusion(&l, &other).unwrap() } else { other };
        let fast = match star_difference(&m, &l).unwrap() {
            DioidElement::Set(t) => t,
            DioidElement::Empty(_) => panic!("seed {seed}: empty erosion"),
        };
        let brute = brute_star_difference(&m, &l, lattice);
        for x in &brute {
            assert!(fast.contains(x).unwrap(), "seed {seed}: lattice point {x} missing");
        }
        for g in fast.generators().iter().filter(|g| lattice.contains(g)) {
            assert!(brute.contains(g), "seed {seed}: generator {g} not in brute erosion");
        }
    }
}

#[test]
fn voi_matches_brute_support() {
    for seed in 0..INSTANCES {
        let (space, params, mut r) = setup(seed);
        let g = random_set(&mut r, &space, &params);
        let q = random_info_structure(&mut r, &space, 6);
        let posterior: Rational = q
            .signals()
            .iter()
            .map(|s| &s.weight * brute_support(g.generators(), &s.posterior))
            .sum();
        let want = posterior - brute_support(g.generators(), &q.prior());
        assert_eq!(voi(&g, &q).unwrap(), want, "seed {seed}");
    }
}
