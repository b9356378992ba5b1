//! Incremental double-description method for pointed polyhedral cones.
//!
//! Given rows `a_1..a_m` in `R^d`, [`extreme_rays`] returns the extreme rays
//! of `{y : <a_i, y> >= 0 for all i}`. Rows and rays are kept as primitive
//! integer vectors so that the arithmetic stays exact and the entries small.
//! Adjacency of a positive/negative ray pair is decided combinatorially: the
//! pair is adjacent iff their common tight set has at least `d - 2` rows and
//! no third ray is tight on a superset of it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{common_denominator, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
struct RowSet(Vec<u64>);

impl RowSet {
    fn new(rows: usize) -> Self {
        RowSet(vec![0; rows.div_ceil(64).max(1)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersection(&self, other: &RowSet) -> RowSet {
        RowSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset(&self, other: &RowSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Ray {
    coords: Vec<BigInt>,
    tight: RowSet,
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut v {
            *x /= &g;
        }
    }
    v
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let den = common_denominator(row);
    primitive(
        row.iter()
            .map(|q| (q * Rational::from_integer(den.clone())).to_integer())
            .collect(),
    )
}

fn idot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

/// Greedily picks `d` linearly independent rows; `None` if the rank is short.
fn independent_rows(rows: &[Vec<BigInt>], d: usize) -> Option<Vec<usize>> {
    let mut echelon: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut chosen = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut r: Vec<Rational> = row.iter().cloned().map(Rational::from_integer).collect();
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
            chosen.push(i);
            if chosen.len() == d {
                return Some(chosen);
            }
        }
    }
    None
}

/// Columns of the inverse of the square matrix formed by `basis` rows.
fn inverse_columns(basis: &[&Vec<BigInt>], d: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<Rational>> = basis
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().cloned().map(Rational::from_integer).collect();
            r.extend((0..d).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..d {
        let pivot = (col..d)
            .find(|&r| !m[r][col].is_zero())
            .expect("basis rows are independent");
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for x in &mut m[col] {
            *x /= &p;
        }
        for r in 0..d {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    (0..d)
        .map(|j| {
            let column: Vec<Rational> = (0..d).map(|i| m[i][d + j].clone()).collect();
            integer_row(&column)
        })
        .collect()
}

/// Extreme rays of `{y in R^d : <row, y> >= 0 for every row}` as primitive
/// integer vectors. Returns `None` when the cone is not pointed.
pub(crate) fn extreme_rays(rows: &[Vec<Rational>], d: usize) -> Option<Vec<Vec<BigInt>>> {
    let rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            debug_assert_eq!(r.len(), d);
            integer_row(r)
        })
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let basis = independent_rows(&rows, d)?;
    let basis_rows: Vec<&Vec<BigInt>> = basis.iter().map(|&i| &rows[i]).collect();

    let mut rays: Vec<Ray> = inverse_columns(&basis_rows, d)
        .into_iter()
        .enumerate()
        .map(|(j, coords)| {
            let mut tight = RowSet::new(rows.len());
            for (k, &i) in basis.iter().enumerate() {
                if k != j {
                    tight.insert(i);
                }
            }
            Ray { coords, tight }
        })
        .collect();

    let rest: Vec<usize> = (0..rows.len()).filter(|i| !basis.contains(i)).collect();
    for i in rest {
        let row = &rows[i];
        let values: Vec<BigInt> = rays.iter().map(|r| idot(row, &r.coords)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            for (ray, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    ray.tight.insert(i);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&j| values[j].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&j| values[j].is_negative()).collect();

        let mut created = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].tight.intersection(&rays[n].tight);
                if common.len() + 2 < d {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(k, r)| k != p && k != n && common.is_subset(&r.tight));
                if blocked {
                    continue;
                }
                let vp = &values[p];
                let vn = -&values[n];
                let coords: Vec<BigInt> = rays[p]
                    .coords
                    .iter()
                    .zip(&rays[n].coords)
                    .map(|(xp, xn)| xp * &vn + xn * vp)
                    .collect();
                let mut tight = common;
                tight.insert(i);
                created.push(Ray {
                    coords: primitive(coords),
                    tight,
                });
            }
        }

        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (mut ray, v) in rays.into_iter().zip(values) {
            if v.is_negative() {
                continue;
            }
            if v.is_zero() {
                ray.tight.insert(i);
            }
            kept.push(ray);
        }
        kept.extend(created);
        rays = kept;
    }
    Some(rays.into_iter().map(|r| r.coords).collect())
}
