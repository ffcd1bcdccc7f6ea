//! Brute-force enumeration of lattice points in the hypercube `|p_i| ≤ n`.
//!
//! This is the ground truth the closed forms are checked against, so it stays
//! deliberately simple: [`count_bulk_pspace`] walks every integer vector of the
//! cube and applies the membership predicate, and [`count_bulk_alphaspace`]
//! walks coefficient vectors `α` inside a box derived from the inverse
//! generator and keeps those whose image `Gα` lands in the cube.
//!
//! Both split the outermost coordinate into independent chunks and sum the
//! chunk subtotals, so the result does not depend on scheduling.

use std::sync::atomic::{AtomicU64, Ordering};

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{generator_matrix, invert_generator, membership_predicate, LatticeSpec};
use crate::{BigCount, Rational};

/// Default cap on the number of candidate vectors an enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Only lattice points with integer coordinates.
    #[default]
    IntegerPoints,
    /// Every lattice point, including half-integer ones (`D*_k`, `E_k`).
    FullLattice,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub spec: LatticeSpec,
    pub n: u64,
    pub mode: Mode,
    pub budget: u64,
}

impl OracleConfig {
    pub fn new(spec: LatticeSpec, n: u64) -> Self {
        OracleConfig {
            spec,
            n,
            mode: Mode::IntegerPoints,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    fn radius(&self) -> Result<i64> {
        i64::try_from(self.n)
            .ok()
            .filter(|&n| n < i64::MAX / 64)
            .ok_or_else(|| Error::InvalidInput(format!("radius {} too large", self.n)))
    }
}

/// Counts integer vectors in `[-n, n]^dim` accepted by `filter`.
pub fn count_hypercube<F>(dim: usize, n: u64, budget: u64, filter: F) -> Result<BigCount>
where
    F: Fn(&[i64]) -> bool + Sync,
{
    assert!(dim >= 1, "hypercube dimension must be positive");
    let side = 2 * u128::from(n) + 1;
    let needed = side.checked_pow(dim as u32).unwrap_or(u128::MAX);
    if needed > u128::from(budget) {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let n = n as i64;
    let total: u64 = (-n..=n)
        .into_par_iter()
        .map(|first| {
            let mut p = vec![-n; dim];
            p[0] = first;
            let mut count = 0_u64;
            loop {
                if filter(&p) {
                    count += 1;
                }
                // odometer over coordinates 1..dim
                let mut i = dim - 1;
                loop {
                    if i == 0 {
                        return count;
                    }
                    if p[i] < n {
                        p[i] += 1;
                        break;
                    }
                    p[i] = -n;
                    i -= 1;
                }
            }
        })
        .sum();
    Ok(total.into())
}

/// Number of integer points of the cube satisfying the lattice's membership
/// predicate.
pub fn count_bulk_pspace(config: &OracleConfig) -> Result<BigCount> {
    if config.mode != Mode::IntegerPoints {
        return Err(Error::InvalidInput(
            "p-space enumeration only counts integer points".into(),
        ));
    }
    config.radius()?;
    let pred = membership_predicate(config.spec);
    count_hypercube(config.spec.ambient_dim(), config.n, config.budget, |p| pred.contains(p))
}

/// Depth-first search over coefficient vectors `α`, one generator column per
/// level. Rows of `2G·α` are checked against `[-2n, 2n]` as soon as the
/// remaining columns can no longer bring them back into range.
struct AlphaSearch {
    /// Nonzero `(row, 2G entry)` pairs of the column chosen at each level.
    columns: Vec<Vec<(usize, i64)>>,
    bounds: Vec<i64>,
    /// `[level][row]`: extreme contributions of levels `level..` to the row.
    rem_lo: Vec<Vec<i64>>,
    rem_hi: Vec<Vec<i64>>,
    /// `[level][row]`: true once no later level touches the row.
    complete: Vec<Vec<bool>>,
    limit: i64,
    integer_only: bool,
}

const FLUSH_EVERY: u64 = 1 << 14;

struct Tally<'a> {
    shared: &'a AtomicU64,
    local: u64,
    budget: u64,
}

impl Tally<'_> {
    fn tick(&mut self) -> std::result::Result<(), ()> {
        self.local += 1;
        if self.local >= FLUSH_EVERY {
            self.flush()
        } else {
            Ok(())
        }
    }

    fn flush(&mut self) -> std::result::Result<(), ()> {
        let after = self.shared.fetch_add(self.local, Ordering::Relaxed) + self.local;
        self.local = 0;
        if after > self.budget {
            Err(())
        } else {
            Ok(())
        }
    }
}

impl AlphaSearch {
    fn new(config: &OracleConfig) -> Result<Self> {
        let spec = config.spec;
        let n = config.radius()?;
        let g2 = generator_matrix(spec).doubled();
        let inverse = invert_generator(spec)?;
        let rows = g2.rows();
        let rank = g2.cols();

        // |α_j| ≤ n Σ_i |(G⁻¹)_{ji}|
        let box_bounds: Vec<i64> = (0..rank)
            .map(|j| {
                let s: Rational = inverse.row(j).iter().map(Signed::abs).sum();
                let b = (s * Rational::from_integer(n.into())).floor().to_integer();
                b.to_i64().expect("coefficient bound fits in i64")
            })
            .collect();

        // Greedy column order: prefer columns that finish the most rows, then
        // narrower ranges. Keeps pruning effective for banded generators.
        let mut order = Vec::with_capacity(rank);
        let mut used = vec![false; rank];
        for _ in 0..rank {
            let best = (0..rank)
                .filter(|&c| !used[c])
                .max_by_key(|&c| {
                    let finishes = (0..rows)
                        .filter(|&r| {
                            g2[(r, c)] != 0
                                && (0..rank).all(|o| o == c || used[o] || g2[(r, o)] == 0)
                        })
                        .count();
                    (finishes, std::cmp::Reverse(box_bounds[c]), std::cmp::Reverse(c))
                })
                .expect("an unused column remains");
            used[best] = true;
            order.push(best);
        }

        let columns: Vec<Vec<(usize, i64)>> = order
            .iter()
            .map(|&c| (0..rows).filter(|&r| g2[(r, c)] != 0).map(|r| (r, g2[(r, c)])).collect())
            .collect();
        let bounds: Vec<i64> = order.iter().map(|&c| box_bounds[c]).collect();

        let mut rem_lo = vec![vec![0_i64; rows]; rank + 1];
        let mut rem_hi = vec![vec![0_i64; rows]; rank + 1];
        let mut touched_later = vec![vec![false; rows]; rank + 1];
        for level in (0..rank).rev() {
            for r in 0..rows {
                rem_lo[level][r] = rem_lo[level + 1][r];
                rem_hi[level][r] = rem_hi[level + 1][r];
                touched_later[level][r] = touched_later[level + 1][r];
            }
            for &(r, g) in &columns[level] {
                let span = g.abs() * bounds[level];
                rem_lo[level][r] -= span;
                rem_hi[level][r] += span;
                touched_later[level][r] = true;
            }
        }
        let complete = touched_later
            .iter()
            .map(|row| row.iter().map(|t| !t).collect())
            .collect();

        Ok(AlphaSearch {
            columns,
            bounds,
            rem_lo,
            rem_hi,
            complete,
            limit: 2 * n,
            integer_only: config.mode == Mode::IntegerPoints,
        })
    }

    fn row_ok(&self, next: usize, r: usize, value: i64) -> bool {
        if value + self.rem_lo[next][r] > self.limit || value + self.rem_hi[next][r] < -self.limit {
            return false;
        }
        !(self.integer_only && self.complete[next][r] && value.is_odd())
    }

    fn descend(
        &self,
        level: usize,
        partial: &mut [i64],
        tally: &mut Tally<'_>,
    ) -> std::result::Result<u64, ()> {
        if level == self.columns.len() {
            return Ok(1);
        }
        let b = self.bounds[level];
        let mut count = 0;
        for a in -b..=b {
            tally.tick()?;
            if self.apply(level, a, partial) {
                count += self.descend(level + 1, partial, tally)?;
            }
            self.apply_raw(level, -a, partial);
        }
        Ok(count)
    }

    /// Adds column `level` times `a`; reports whether all touched rows are
    /// still feasible.
    fn apply(&self, level: usize, a: i64, partial: &mut [i64]) -> bool {
        self.apply_raw(level, a, partial);
        self.columns[level]
            .iter()
            .all(|&(r, _)| self.row_ok(level + 1, r, partial[r]))
    }

    fn apply_raw(&self, level: usize, a: i64, partial: &mut [i64]) {
        for &(r, g) in &self.columns[level] {
            partial[r] += g * a;
        }
    }

    fn run(&self, rows: usize, budget: u64) -> Result<u64> {
        let shared = AtomicU64::new(0);
        if self.columns.is_empty() {
            return Ok(1);
        }
        let b = self.bounds[0];
        let results: Vec<std::result::Result<u64, ()>> = (-b..=b)
            .into_par_iter()
            .map(|a| {
                let mut tally = Tally {
                    shared: &shared,
                    local: 1,
                    budget,
                };
                let mut partial = vec![0_i64; rows];
                let count = if self.apply(0, a, &mut partial) {
                    self.descend(1, &mut partial, &mut tally)?
                } else {
                    0
                };
                tally.flush()?;
                Ok(count)
            })
            .collect();
        let visited = shared.load(Ordering::Relaxed);
        if visited > budget || results.iter().any(|r| r.is_err()) {
            return Err(Error::BudgetExceeded {
                needed: u128::from(visited),
                budget,
            });
        }
        Ok(results.into_iter().map(|r| r.unwrap()).sum())
    }
}

/// Number of lattice points in the cube found by enumerating coefficient
/// vectors. Works in both modes; in integer mode it agrees with
/// [`count_bulk_pspace`].
pub fn count_bulk_alphaspace(config: &OracleConfig) -> Result<BigCount> {
    let search = AlphaSearch::new(config)?;
    let rows = config.spec.ambient_dim();
    search.run(rows, config.budget).map(BigCount::from)
}

fn count_bulk(config: &OracleConfig) -> Result<BigCount> {
    match config.mode {
        Mode::IntegerPoints => count_bulk_pspace(config),
        Mode::FullLattice => count_bulk_alphaspace(config),
    }
}

/// Points with infinity norm exactly `n`; `bulk(-1)` is taken as 0 so the
/// surface at `n = 0` is the origin alone.
pub fn count_surface(config: &OracleConfig) -> Result<BigCount> {
    let outer = count_bulk(config)?;
    if config.n == 0 {
        return Ok(outer);
    }
    let inner = count_bulk(&OracleConfig {
        n: config.n - 1,
        ..*config
    })?;
    Ok(outer - inner)
}
