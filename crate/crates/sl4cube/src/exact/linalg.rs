//! Exact linear algebra over the rationals.
//!
//! Rank and kernel go through fraction-free (Bareiss) elimination on an
//! integer matrix obtained by clearing row denominators. Incremental span
//! tests use a reduced echelon basis over the rationals.

use super::{common_denominator, from_bigint, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Row echelon form computed without fractions.
#[derive(Clone, Debug)]
pub struct IntEchelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let d = common_denominator(row);
    row.iter().map(|q| q.numer() * (&d / q.denom())).collect()
}

/// Bareiss elimination; every division is exact.
pub fn fraction_free_echelon(rows: &[Vec<Rational>], ncols: usize) -> IntEchelon {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "ragged matrix");
            clear_denominators(r)
        })
        .collect();
    let m = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut k = 0;
    for c in 0..ncols {
        if k == m {
            break;
        }
        let Some(p) = (k..m).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(k, p);
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pv = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..ncols {
                let v = (&pv * &row[j] - &f * &pivot_row[j]) / &prev;
                row[j] = v;
            }
            row[c] = BigInt::zero();
        }
        // rows above the pivot keep their values; only the trailing block is rescaled
        prev = pv;
        pivots.push(c);
        k += 1;
    }
    a.truncate(k);
    IntEchelon {
        rows: a,
        pivots,
        ncols,
    }
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    fraction_free_echelon(rows, first.len()).pivots.len()
}

/// Basis of {x : M x = 0}, one vector per free column.
pub fn kernel(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let ech = fraction_free_echelon(rows, ncols);
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &p in &ech.pivots {
            v[p] = true;
        }
        v
    };
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![Rational::zero(); ncols];
        x[free] = Rational::one();
        for (i, &p) in ech.pivots.iter().enumerate().rev() {
            let row = &ech.rows[i];
            let mut acc = Rational::zero();
            for j in p + 1..ncols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    acc += from_bigint(row[j].clone()) * &x[j];
                }
            }
            x[p] = -acc / from_bigint(row[p].clone());
        }
        out.push(x);
    }
    out
}

pub fn mat_vec(rows: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
    rows.iter()
        .map(|r| {
            r.iter()
                .zip(x)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .map(|(a, b)| a * b)
                .fold(Rational::zero(), |s, t| s + t)
        })
        .collect()
}

/// Reduced echelon basis grown one vector at a time.
#[derive(Clone, Debug, Default)]
pub struct SpanBasis {
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl SpanBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors<'a>(vs: impl IntoIterator<Item = &'a Vec<Rational>>) -> Self {
        let mut b = Self::new();
        for v in vs {
            b.insert(v);
        }
        b
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (wj, rj) in w.iter_mut().zip(row) {
                if !rj.is_zero() {
                    *wj -= &f * rj;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|q| !q.is_zero()) else {
            return false;
        };
        let inv = Rational::one() / &w[p];
        for q in w.iter_mut() {
            *q *= &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (rj, wj) in row.iter_mut().zip(&w) {
                if !wj.is_zero() {
                    *rj -= &f * wj;
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    /// Every vector of `other` lies in this span.
    pub fn contains_span(&self, other: &SpanBasis) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }
}
