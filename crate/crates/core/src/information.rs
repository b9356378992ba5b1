//! Finitely supported information structures, garbling and value of
//! information.

use num_traits::{Signed, Zero};

use crate::duality::ValueFunction;
use crate::error::{Error, Result};
use crate::geometry::{Belief, PolyCUAS, StateSpace};
use crate::scalar::{format_rational, Rational, Scalar};

/// Refinement search gives up beyond this many fine signals.
pub const SIGNAL_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signal {
    pub weight: Rational,
    pub posterior: Belief,
}

/// A distribution over posterior beliefs with finitely many atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfoStructure {
    space: StateSpace,
    signals: Vec<Signal>,
}

impl InfoStructure {
    pub fn new(space: &StateSpace, signals: Vec<(Rational, Belief)>) -> Result<Self> {
        if signals.is_empty() {
            return Err(Error::InvalidInfoStructure("no signals".into()));
        }
        let mut total = Rational::zero();
        for (w, p) in &signals {
            space.check_len(p.dim())?;
            if !w.is_positive() {
                return Err(Error::InvalidInfoStructure(format!(
                    "signal weight {} is not positive",
                    format_rational(w)
                )));
            }
            total += w;
        }
        if total != Rational::from_integer(1.into()) {
            return Err(Error::InvalidInfoStructure(format!(
                "weights sum to {}",
                format_rational(&total)
            )));
        }
        Ok(InfoStructure {
            space: space.clone(),
            signals: signals
                .into_iter()
                .map(|(weight, posterior)| Signal { weight, posterior })
                .collect(),
        })
    }

    /// The structure that always reveals `p` (no information).
    pub fn constant(space: &StateSpace, p: Belief) -> Result<Self> {
        InfoStructure::new(space, vec![(Rational::from_integer(1.into()), p)])
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn signals(&self) -> &[Signal] {
        &self.signals
    }

    pub fn len(&self) -> usize {
        self.signals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signals.is_empty()
    }

    /// Mean posterior.
    pub fn prior(&self) -> Belief {
        let k = self.space.dim();
        let mut acc = vec![Rational::zero(); k];
        for s in &self.signals {
            for (a, c) in acc.iter_mut().zip(s.posterior.coords()) {
                *a += &s.weight * c;
            }
        }
        Belief::new(acc).expect("weighted average of beliefs is a belief")
    }

    /// Identical posteriors merged, signals sorted by posterior.
    pub fn normalized(&self) -> InfoStructure {
        let mut merged: Vec<Signal> = Vec::new();
        let mut sorted = self.signals.clone();
        sorted.sort_by(|a, b| a.posterior.cmp(&b.posterior));
        for s in sorted {
            match merged.last_mut() {
                Some(last) if last.posterior == s.posterior => last.weight += s.weight,
                _ => merged.push(s),
            }
        }
        InfoStructure {
            space: self.space.clone(),
            signals: merged,
        }
    }

    /// Equality up to reordering and merging of identical posteriors.
    pub fn equivalent(&self, other: &InfoStructure) -> bool {
        self.space == other.space && self.normalized().signals == other.normalized().signals
    }

    fn expectation(&self, mut value: impl FnMut(&Belief) -> Rational) -> Rational {
        self.signals
            .iter()
            .fold(Rational::zero(), |acc, s| acc + &s.weight * value(&s.posterior))
    }
}

/// Blocks of signal indices (0-based) covering every signal exactly once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(blocks: Vec<Vec<usize>>) -> Self {
        Partition { blocks }
    }

    /// Every signal in its own block.
    pub fn discrete(n: usize) -> Self {
        Partition {
            blocks: (0..n).map(|i| vec![i]).collect(),
        }
    }

    /// All signals in one block.
    pub fn trivial(n: usize) -> Self {
        Partition {
            blocks: vec![(0..n).collect()],
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let mut seen = vec![false; n];
        for block in &self.blocks {
            if block.is_empty() {
                return Err(Error::PartitionError("empty block".into()));
            }
            for &i in block {
                if i >= n {
                    return Err(Error::PartitionError(format!(
                        "index {i} out of range for {n} signals"
                    )));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::PartitionError(format!("index {i} appears twice")));
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::PartitionError(format!("index {i} is not covered")));
        }
        Ok(())
    }
}

/// Conditional expectation of `q` given the blocks of `partition`.
pub fn garble(q: &InfoStructure, partition: &Partition) -> Result<InfoStructure> {
    partition.validate(q.len())?;
    let k = q.space.dim();
    let signals = partition
        .blocks
        .iter()
        .map(|block| {
            let weight: Rational = block.iter().map(|&i| &q.signals[i].weight).sum();
            let mut mass = vec![Rational::zero(); k];
            for &i in block {
                let s = &q.signals[i];
                for (m, c) in mass.iter_mut().zip(s.posterior.coords()) {
                    *m += &s.weight * c;
                }
            }
            let posterior = Belief::new(mass.into_iter().map(|m| m / &weight).collect())
                .expect("conditional mean is a belief");
            Signal { weight, posterior }
        })
        .collect();
    Ok(InfoStructure {
        space: q.space.clone(),
        signals,
    })
}

/// Whether some partition of `fine`'s signals garbles it into `coarse`.
///
/// Each fine signal is assigned to one coarse posterior; an assignment works
/// iff, per coarse signal, the assigned weights and posterior masses add up
/// exactly. All masses are nonnegative, so partial sums that overshoot prune
/// the search.
pub fn is_refinement(fine: &InfoStructure, coarse: &InfoStructure) -> Result<bool> {
    Ok(find_garbling(fine, coarse)?.is_some())
}

/// The partition witnessing [`is_refinement`], if any.
pub fn find_garbling(fine: &InfoStructure, coarse: &InfoStructure) -> Result<Option<Partition>> {
    fine.space.check_same(&coarse.space)?;
    if fine.len() > SIGNAL_CAP {
        return Err(Error::SignalCap {
            count: fine.len(),
            cap: SIGNAL_CAP,
        });
    }
    let coarse = coarse.normalized();
    let targets: Vec<(Rational, Vec<Rational>)> = coarse
        .signals
        .iter()
        .map(|s| {
            let mass = s.posterior.coords().iter().map(|c| &s.weight * c).collect();
            (s.weight.clone(), mass)
        })
        .collect();
    let items: Vec<(Rational, Vec<Rational>)> = fine
        .signals
        .iter()
        .map(|s| {
            let mass = s.posterior.coords().iter().map(|c| &s.weight * c).collect();
            (s.weight.clone(), mass)
        })
        .collect();
    let k = fine.space.dim();
    let mut filled: Vec<(Rational, Vec<Rational>)> =
        vec![(Rational::zero(), vec![Rational::zero(); k]); targets.len()];
    let mut assignment = vec![0usize; items.len()];
    if !assign(0, &items, &targets, &mut filled, &mut assignment) {
        return Ok(None);
    }
    let mut blocks = vec![Vec::new(); targets.len()];
    for (i, &j) in assignment.iter().enumerate() {
        blocks[j].push(i);
    }
    Ok(Some(Partition::new(blocks)))
}

fn assign(
    i: usize,
    items: &[(Rational, Vec<Rational>)],
    targets: &[(Rational, Vec<Rational>)],
    filled: &mut [(Rational, Vec<Rational>)],
    assignment: &mut [usize],
) -> bool {
    if i == items.len() {
        return filled.iter().zip(targets).all(|(f, t)| f == t);
    }
    let (w, mass) = &items[i];
    for j in 0..targets.len() {
        let fits = &filled[j].0 + w <= targets[j].0
            && filled[j]
                .1
                .iter()
                .zip(mass)
                .zip(&targets[j].1)
                .all(|((f, m), t)| &(f + m) <= t);
        if !fits {
            continue;
        }
        filled[j].0 += w;
        for (f, m) in filled[j].1.iter_mut().zip(mass) {
            *f += m;
        }
        assignment[i] = j;
        if assign(i + 1, items, targets, filled, assignment) {
            return true;
        }
        filled[j].0 -= w;
        for (f, m) in filled[j].1.iter_mut().zip(mass) {
            *f -= m;
        }
    }
    false
}

/// `E[σ(q)] - σ(E[q])`.
pub fn voi(g: &PolyCUAS, q: &InfoStructure) -> Result<Rational> {
    g.space().check_same(&q.space)?;
    let expected = q.expectation(|p| g.support_unchecked(p.coords()));
    Ok(expected - g.support_unchecked(q.prior().coords()))
}

/// `E[σ(q_fine)] - E[σ(q_coarse)]`, defined when `q_coarse` garbles `q_fine`.
pub fn relative_voi(g: &PolyCUAS, fine: &InfoStructure, coarse: &InfoStructure) -> Result<Rational> {
    g.space().check_same(&fine.space)?;
    if !is_refinement(fine, coarse)? {
        return Err(Error::NotARefinement);
    }
    Ok(relative_voi_unchecked(g, fine, coarse))
}

/// [`relative_voi`] without the refinement search, for callers that built
/// `coarse` with [`garble`].
pub fn relative_voi_unchecked(g: &PolyCUAS, fine: &InfoStructure, coarse: &InfoStructure) -> Rational {
    fine.expectation(|p| g.support_unchecked(p.coords()))
        - coarse.expectation(|p| g.support_unchecked(p.coords()))
}

/// Value of information for an arbitrary value function; exact for
/// piecewise-linear ones.
pub fn voi_of(f: &ValueFunction, q: &InfoStructure) -> Result<Scalar> {
    f.space().check_same(&q.space)?;
    if let Some(set) = f.as_pwl_set() {
        return voi(set, q).map(Scalar::Exact);
    }
    let mut expected = 0.0;
    for s in &q.signals {
        expected += crate::scalar::to_f64(&s.weight) * f.eval_numeric(&s.posterior)?;
    }
    Ok(Scalar::Approx(expected - f.eval_numeric(&q.prior())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::UtilityAct;
    use crate::scalar::{int, ratio};

    fn k2() -> StateSpace {
        StateSpace::with_dimension(2)
    }

    fn b(a: i64, c: i64, den: i64) -> Belief {
        Belief::new(vec![ratio(a, den), ratio(c, den)]).unwrap()
    }

    fn two_diracs() -> InfoStructure {
        InfoStructure::new(&k2(), vec![(ratio(1, 2), b(1, 0, 1)), (ratio(1, 2), b(0, 1, 1))]).unwrap()
    }

    fn restaurant() -> PolyCUAS {
        PolyCUAS::canonicalize(
            &k2(),
            [[0, 0], [4, -1], [7, -5]].iter().map(|p| UtilityAct::from_ints(p)),
        )
        .unwrap()
    }

    #[test]
    fn validation() {
        assert!(InfoStructure::new(&k2(), vec![]).is_err());
        assert!(InfoStructure::new(&k2(), vec![(ratio(9, 10), b(1, 0, 1))]).is_err());
        assert!(InfoStructure::new(&k2(), vec![(int(0), b(1, 0, 1)), (int(1), b(0, 1, 1))]).is_err());
    }

    #[test]
    fn priors() {
        assert_eq!(two_diracs().prior(), b(1, 1, 2));
        let c = InfoStructure::constant(&k2(), b(1, 3, 4)).unwrap();
        assert_eq!(c.prior(), b(1, 3, 4));
        let q = InfoStructure::new(&k2(), vec![(ratio(1, 4), b(1, 0, 1)), (ratio(3, 4), b(1, 2, 3))])
            .unwrap();
        assert_eq!(q.prior(), b(1, 1, 2));
    }

    #[test]
    fn garbling() {
        let q = two_diracs();
        let g = garble(&q, &Partition::trivial(2)).unwrap();
        assert_eq!(g, InfoStructure::constant(&k2(), b(1, 1, 2)).unwrap());
        assert_eq!(garble(&q, &Partition::discrete(2)).unwrap(), q);

        let q3 = InfoStructure::new(
            &k2(),
            vec![
                (ratio(1, 5), b(1, 0, 1)),
                (ratio(3, 10), b(1, 2, 3)),
                (ratio(1, 2), b(1, 3, 4)),
            ],
        )
        .unwrap();
        let g = garble(&q3, &Partition::new(vec![vec![0, 1], vec![2]])).unwrap();
        // block {0,1}: weight 1/2, mass (1/5 + 1/10, 1/5) -> posterior (3/5, 2/5)
        assert_eq!(g.signals()[0].weight, ratio(1, 2));
        assert_eq!(g.signals()[0].posterior, b(3, 2, 5));
        assert_eq!(g.signals()[1].posterior, b(1, 3, 4));
        assert_eq!(g.prior(), q3.prior());
    }

    #[test]
    fn partition_errors() {
        let q = two_diracs();
        for p in [
            Partition::new(vec![vec![0]]),
            Partition::new(vec![vec![0, 1], vec![]]),
            Partition::new(vec![vec![0, 0, 1]]),
            Partition::new(vec![vec![0, 2], vec![1]]),
        ] {
            assert!(matches!(garble(&q, &p), Err(Error::PartitionError(_))));
        }
    }

    #[test]
    fn refinement_search() {
        let q = two_diracs();
        let prior = InfoStructure::constant(&k2(), q.prior()).unwrap();
        assert!(is_refinement(&q, &prior).unwrap());
        assert!(is_refinement(&q, &q).unwrap());
        let other = InfoStructure::new(&k2(), vec![(ratio(1, 2), b(3, 1, 4)), (ratio(1, 2), b(1, 3, 4))])
            .unwrap();
        assert!(!is_refinement(&q, &other).unwrap());
        assert!(!is_refinement(&prior, &q).unwrap());
    }

    #[test]
    fn refinement_matches_merged_posteriors() {
        // four signals where two blocks collapse onto the same posterior
        let q = InfoStructure::new(
            &k2(),
            vec![
                (ratio(1, 4), b(1, 0, 1)),
                (ratio(1, 4), b(0, 1, 1)),
                (ratio(1, 4), b(3, 1, 4)),
                (ratio(1, 4), b(1, 3, 4)),
            ],
        )
        .unwrap();
        let prior = InfoStructure::constant(&k2(), b(1, 1, 2)).unwrap();
        let p = find_garbling(&q, &prior).unwrap().unwrap();
        assert!(garble(&q, &p).unwrap().equivalent(&prior));
    }

    #[test]
    fn signal_cap() {
        let signals = (0..9).map(|_| (ratio(1, 9), b(1, 1, 2))).collect();
        let q = InfoStructure::new(&k2(), signals).unwrap();
        assert!(matches!(is_refinement(&q, &q), Err(Error::SignalCap { count: 9, cap: 8 })));
    }

    #[test]
    fn voi_examples() {
        assert_eq!(voi(&restaurant(), &two_diracs()).unwrap(), int(2));
        let c = InfoStructure::constant(&k2(), b(2, 5, 7)).unwrap();
        assert_eq!(voi(&restaurant(), &c).unwrap(), int(0));
        let single = PolyCUAS::singleton(&k2(), UtilityAct::from_ints(&[3, -9])).unwrap();
        assert_eq!(voi(&single, &two_diracs()).unwrap(), int(0));
    }

    #[test]
    fn relative_voi_examples() {
        let q = two_diracs();
        let prior = InfoStructure::constant(&k2(), q.prior()).unwrap();
        assert_eq!(relative_voi(&restaurant(), &q, &prior).unwrap(), voi(&restaurant(), &q).unwrap());
        assert_eq!(relative_voi(&restaurant(), &q, &q).unwrap(), int(0));
        assert_eq!(relative_voi(&restaurant(), &q, &prior).unwrap(), int(2));
        assert!(matches!(
            relative_voi(&restaurant(), &prior, &q),
            Err(Error::NotARefinement)
        ));
    }
}
