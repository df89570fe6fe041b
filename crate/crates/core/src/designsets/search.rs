//! Exhaustive backtracking search for cyclic difference sets and picket
//! fence sequences.
//!
//! Every translate class has exactly one lexicographically smallest member.
//! It contains 0, and its second element `s` is the smallest cyclic gap of
//! the set. The search fixes `0`, branches on `s`, and only extends with
//! elements that keep every gap at least `s`, so each class is visited
//! through a small number of representatives and emitted once, in canonical
//! form. An empty result is therefore a proof of nonexistence, unless the
//! node budget ran out first.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use thiserror::Error;

use super::{canonical_form, DesignKind, DesignSet, Provenance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of candidate extensions examined across all workers.
    pub budget: u64,
    /// Stop after this many sets.
    pub limit: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            budget: 1_000_000_000,
            limit: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search budget of {budget} nodes exhausted; result inconclusive ({} sets found so far)", partial.len())]
    BudgetExceeded {
        budget: u64,
        partial: Vec<DesignSet>,
    },
    #[error("invalid search parameters: {0}")]
    InvalidParameters(String),
}

struct Problem {
    m: usize,
    k: usize,
    lambda: u32,
    /// Residues that must never occur as a difference.
    forbidden: Vec<bool>,
}

const FLUSH_EVERY: u64 = 1 << 12;

struct Worker<'a> {
    problem: &'a Problem,
    counts: Vec<u32>,
    elements: Vec<usize>,
    gap: usize,
    found: Vec<Vec<u64>>,
    limit: usize,
    local_nodes: u64,
    nodes: &'a AtomicU64,
    budget: u64,
    exhausted: &'a AtomicBool,
}

impl Worker<'_> {
    fn tick(&mut self) -> bool {
        self.local_nodes += 1;
        if self.local_nodes == FLUSH_EVERY {
            let total =
                self.nodes.fetch_add(self.local_nodes, Ordering::Relaxed) + self.local_nodes;
            self.local_nodes = 0;
            if total > self.budget {
                self.exhausted.store(true, Ordering::Relaxed);
            }
        }
        !self.exhausted.load(Ordering::Relaxed)
    }

    fn flush(&mut self) {
        let total = self.nodes.fetch_add(self.local_nodes, Ordering::Relaxed) + self.local_nodes;
        self.local_nodes = 0;
        if total > self.budget {
            self.exhausted.store(true, Ordering::Relaxed);
        }
    }

    /// Adds `e` and all its differences with the current elements; undoes
    /// everything and returns false if a count overflows or a forbidden
    /// residue is hit.
    fn try_push(&mut self, e: usize) -> bool {
        let m = self.problem.m;
        let mut touched = Vec::with_capacity(2 * self.elements.len());
        let mut ok = true;
        'outer: for &a in &self.elements {
            for d in [(e + m - a) % m, (a + m - e) % m] {
                if self.problem.forbidden[d] {
                    ok = false;
                    break 'outer;
                }
                self.counts[d] += 1;
                touched.push(d);
                if self.counts[d] > self.problem.lambda {
                    ok = false;
                    break 'outer;
                }
            }
        }
        if ok {
            self.elements.push(e);
        } else {
            for d in touched {
                self.counts[d] -= 1;
            }
        }
        ok
    }

    fn pop(&mut self) {
        let m = self.problem.m;
        let e = self.elements.pop().expect("pop after push");
        for &a in &self.elements {
            self.counts[(e + m - a) % m] -= 1;
            self.counts[(a + m - e) % m] -= 1;
        }
    }

    fn leaf(&mut self) {
        let p = self.problem;
        let complete = (1..p.m).all(|x| p.forbidden[x] || self.counts[x] == p.lambda);
        if !complete {
            return;
        }
        let set: Vec<u64> = self.elements.iter().map(|&e| e as u64).collect();
        if canonical_form(p.m as u64, &set) == set {
            self.found.push(set);
        }
    }

    fn extend(&mut self) {
        if self.found.len() >= self.limit {
            return;
        }
        let (m, k, s) = (self.problem.m, self.problem.k, self.gap);
        let len = self.elements.len();
        if len == k {
            self.leaf();
            return;
        }
        let last = *self.elements.last().expect("0 is always present");
        // Room for the remaining k - len elements plus the wrap-around gap.
        let Some(hi) = m.checked_sub(s * (k - len)) else {
            return;
        };
        for e in last + s..=hi {
            if !self.tick() {
                return;
            }
            if self.try_push(e) {
                self.extend();
                self.pop();
                if self.found.len() >= self.limit {
                    return;
                }
            }
        }
    }
}

/// Sets found before the budget ran out, and the budget.
type Exhausted = (Vec<Vec<u64>>, u64);

fn run(problem: &Problem, config: &SearchConfig) -> Result<Vec<Vec<u64>>, Exhausted> {
    let nodes = AtomicU64::new(0);
    let exhausted = AtomicBool::new(false);
    let (m, k) = (problem.m, problem.k);

    let branches: Vec<Vec<Vec<u64>>> = (1..m)
        .into_par_iter()
        .filter(|&s| s * k <= m)
        .map(|s| {
            let mut w = Worker {
                problem,
                counts: vec![0; m],
                elements: vec![0],
                gap: s,
                found: Vec::new(),
                limit: config.limit,
                local_nodes: 0,
                nodes: &nodes,
                budget: config.budget,
                exhausted: &exhausted,
            };
            if w.tick() && w.try_push(s) {
                w.extend();
            }
            w.flush();
            w.found
        })
        .collect();

    let mut all: Vec<Vec<u64>> = branches.into_iter().flatten().collect();
    all.truncate(config.limit);
    if exhausted.load(Ordering::Relaxed) && all.len() < config.limit {
        Err((all, config.budget))
    } else {
        Ok(all)
    }
}

fn package(m: u64, sets: Vec<Vec<u64>>, kind: DesignKind) -> Vec<DesignSet> {
    sets.into_iter()
        .map(|e| {
            DesignSet::new(m, e, kind, Provenance::Searched).expect("search emits valid shapes")
        })
        .collect()
}

/// All `(M, K, lambda)`-difference sets of `Z_M` up to translation, as
/// canonical representatives in lexicographic order (at most
/// `config.limit`). An `Ok` empty list certifies nonexistence.
pub fn search_difference_sets(
    m: u64,
    k: usize,
    lambda: u64,
    config: &SearchConfig,
) -> Result<Vec<DesignSet>, SearchError> {
    if m == 0 || k == 0 || lambda == 0 {
        return Err(SearchError::InvalidParameters(
            "M, K and lambda must be positive".into(),
        ));
    }
    if k as u64 > m {
        return Err(SearchError::InvalidParameters(format!(
            "K = {k} exceeds M = {m}"
        )));
    }
    let kind = DesignKind::Plain { k, lambda };
    // Counting every ordered pair: K(K-1) = lambda (M-1) is necessary.
    if (k as u64) * (k as u64 - 1) != lambda * (m - 1) {
        return Ok(Vec::new());
    }
    if k == 1 {
        // Only M = 1 passes the count above.
        return Ok(package(m, vec![vec![0]], kind));
    }
    let problem = Problem {
        m: m as usize,
        k,
        lambda: lambda as u32,
        forbidden: (0..m).map(|x| x == 0).collect(),
    };
    match run(&problem, config) {
        Ok(sets) => Ok(package(m, sets, kind)),
        Err((partial, budget)) => Err(SearchError::BudgetExceeded {
            budget,
            partial: package(m, partial, kind),
        }),
    }
}

/// All picket fence sequences for `Z_{K^2-1}` up to translation: `K`-sets
/// whose differences avoid the multiples of `K+1` and hit every other
/// nonzero residue exactly once.
pub fn search_picket_fence(k: usize, config: &SearchConfig) -> Result<Vec<DesignSet>, SearchError> {
    if k < 2 {
        return Err(SearchError::InvalidParameters(
            "picket fence search needs K >= 2".into(),
        ));
    }
    let kk = k as u64;
    let m = kk * kk - 1;
    let kind = DesignKind::Relative {
        n: kk + 1,
        l: kk - 1,
        k,
        lambda: 1,
    };
    let problem = Problem {
        m: m as usize,
        k,
        lambda: 1,
        forbidden: (0..m).map(|x| x % (kk + 1) == 0).collect(),
    };
    match run(&problem, config) {
        Ok(sets) => Ok(package(m, sets, kind)),
        Err((partial, budget)) => Err(SearchError::BudgetExceeded {
            budget,
            partial: package(m, partial, kind),
        }),
    }
}
