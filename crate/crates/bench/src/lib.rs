//! Fixtures shared by the criterion benches.

use cuas_core::dioid::fusion;
use cuas_core::oracle::{random_info_structure, random_set, rng, InstanceParams};
use cuas_core::{InfoStructure, PolyCUAS, StateSpace, UtilityAct};
use rand::Rng;

/// The three-act decision maker with breakpoints at 1/5 and 4/7.
pub fn restaurant() -> PolyCUAS {
    let space = StateSpace::with_dimension(2);
    PolyCUAS::canonicalize(
        &space,
        [[0, 0], [4, -1], [7, -5]].iter().map(|a| UtilityAct::from_ints(a)),
    )
    .expect("nonempty")
}

/// Raw, uncanonicalized acts: `n` integer points in `[-9, 9]^dim`.
pub fn raw_acts(seed: u64, dim: usize, n: usize) -> Vec<UtilityAct> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| UtilityAct::from_ints(&(0..dim).map(|_| r.gen_range(-9..=9)).collect::<Vec<_>>()))
        .collect()
}

/// `(L, M = L ⊗ T, q)` with up to six generators per set.
pub struct Pair {
    pub l: PolyCUAS,
    pub m: PolyCUAS,
    pub q: InfoStructure,
}

pub fn fusion_pair(seed: u64, dim: usize) -> Pair {
    let space = StateSpace::with_dimension(dim);
    let params = InstanceParams {
        dim,
        ..InstanceParams::default()
    };
    let mut r = rng(seed);
    let l = random_set(&mut r, &space, &params);
    let t = random_set(&mut r, &space, &params);
    let q = random_info_structure(&mut r, &space, 8);
    Pair {
        m: fusion(&l, &t).expect("same space"),
        l,
        q,
    }
}
