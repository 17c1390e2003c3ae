//! Exact Stanley depth by backtracking over interval partitions.
//!
//! For a threshold k the solver decides whether the poset admits a
//! partition in which every interval top d satisfies rho(d) >= k. The
//! rank-minimal uncovered point must open an interval in any partition,
//! so branching over its admissible tops is complete. Scanning k downward
//! from n, the first feasible threshold is the Stanley depth and the
//! witness partition certifies it.

use std::cmp::Reverse;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::poset::{CharacteristicPoset, PosetMode, DEFAULT_BOX_CAP};
use crate::stanley::IntervalPartition;

/// Boxes up to this many points get precomputed up-set/down-set masks,
/// making interval tests pure word operations.
const MASK_CACHE_LIMIT: usize = 4096;

/// How often the deadline is polled, in search nodes.
const DEADLINE_POLL_MASK: u64 = 0x3ff;

/// Caps and execution mode for one solve.
#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// Upper bound on the number of box points.
    pub box_cap: usize,
    /// Wall-clock budget for the whole solve; `None` runs unbounded.
    pub time_budget: Option<Duration>,
    /// Fan the root branching out over the rayon pool. The optimum is
    /// scheduling-independent either way; the witness partition is only
    /// reproducible in the sequential (canonical) mode.
    pub parallel: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            box_cap: DEFAULT_BOX_CAP,
            time_budget: Some(Duration::from_secs(30)),
            parallel: false,
        }
    }
}

/// Search effort counters.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct SolverStats {
    /// Backtracking nodes expanded across all thresholds.
    pub nodes: u64,
    pub wall_ms: u64,
}

/// An exact sdepth value with its certificate.
#[derive(Clone, Debug)]
pub struct SdepthOutcome {
    pub value: u32,
    pub partition: IntervalPartition,
    pub stats: SolverStats,
}

/// Exact Stanley depth of an ideal (ideal-mode poset with the canonical
/// bound). The zero ideal is rejected; the unit ideal comes out as n.
pub fn sdepth_exact(ideal: &MonomialIdeal, cfg: &SolverConfig) -> Result<SdepthOutcome> {
    let poset = CharacteristicPoset::build(ideal, PosetMode::Ideal, None, cfg.box_cap)?;
    sdepth_poset(&poset, cfg)
}

/// Exact Stanley depth of the cyclic quotient S/I. The unit ideal is
/// rejected (S/S has an empty poset); the zero ideal comes out as n.
pub fn sdepth_quotient_exact(ideal: &MonomialIdeal, cfg: &SolverConfig) -> Result<SdepthOutcome> {
    let poset = CharacteristicPoset::build(ideal, PosetMode::Quotient, None, cfg.box_cap)?;
    sdepth_poset(&poset, cfg)
}

/// Exact sdepth over an already-built poset.
pub fn sdepth_poset(poset: &CharacteristicPoset, cfg: &SolverConfig) -> Result<SdepthOutcome> {
    if poset.point_count() == 0 {
        return Err(Error::EmptyPoset);
    }
    let start = Instant::now();
    let deadline = cfg.time_budget.map(|b| (start + b, b));
    let masks = (poset.box_size() <= MASK_CACHE_LIMIT).then(|| MaskCache::build(poset));
    let mut nodes = 0u64;
    for k in (0..=poset.n() as u32).rev() {
        let decision = decide(poset, k, masks.as_ref(), deadline, cfg.parallel, &mut nodes)?;
        if let Some(ranks) = decision {
            return Ok(SdepthOutcome {
                value: k,
                partition: IntervalPartition::from_ranks(poset, ranks),
                stats: SolverStats {
                    nodes,
                    wall_ms: start.elapsed().as_millis() as u64,
                },
            });
        }
    }
    unreachable!("threshold 0 is always feasible via singleton intervals");
}

/// Up-set and down-set of every box point as bit masks; the interval
/// [c, d] is up[c] & down[d].
struct MaskCache {
    up: Vec<BitSet>,
    down: Vec<BitSet>,
}

impl MaskCache {
    fn build(poset: &CharacteristicPoset) -> Self {
        let size = poset.box_size();
        let g = poset.g();
        let n = poset.n();
        let weights = poset.weights();
        let mut down: Vec<BitSet> = Vec::with_capacity(size);
        for rank in 0..size {
            let exps = poset.unrank(rank);
            let mut mask = BitSet::new(size);
            mask.set(rank);
            for j in 0..n {
                if exps[j] > 0 {
                    // down[d] = {d} with every down[d - e_j] folded in
                    mask.or_assign(&down[rank - weights[j]]);
                }
            }
            down.push(mask);
        }
        let mut up = vec![BitSet::new(0); size];
        for rank in (0..size).rev() {
            let exps = poset.unrank(rank);
            let mut mask = BitSet::new(size);
            mask.set(rank);
            for j in 0..n {
                if exps[j] < g[j] {
                    mask.or_assign(&up[rank + weights[j]]);
                }
            }
            up[rank] = mask;
        }
        MaskCache { up, down }
    }
}

/// Decides feasibility at threshold k, returning a witness list of
/// (bottom, top) rank pairs when feasible.
fn decide(
    poset: &CharacteristicPoset,
    k: u32,
    masks: Option<&MaskCache>,
    deadline: Option<(Instant, Duration)>,
    parallel: bool,
    nodes_out: &mut u64,
) -> Result<Option<Vec<(usize, usize)>>> {
    let free = poset.points().clone();
    if !parallel {
        let mut search = Search {
            poset,
            masks,
            k,
            free,
            chosen: Vec::new(),
            nodes: 0,
            deadline,
            stop: None,
        };
        let found = search.run()?;
        *nodes_out += search.nodes;
        return Ok(found.then_some(search.chosen));
    }

    // Parallel mode: fan the root candidates out over the rayon pool.
    let root = free.first_set().expect("poset is nonempty");
    let root_search = Search {
        poset,
        masks,
        k,
        free: free.clone(),
        chosen: Vec::new(),
        nodes: 0,
        deadline,
        stop: None,
    };
    let candidates = root_search.candidate_tops(root);
    *nodes_out += 1;
    let found = AtomicBool::new(false);
    let timed_out = AtomicBool::new(false);
    let winner: Mutex<Option<Vec<(usize, usize)>>> = Mutex::new(None);
    let nodes = AtomicU64::new(0);
    rayon::scope(|scope| {
        for &top in &candidates {
            let free = &free;
            let found = &found;
            let timed_out = &timed_out;
            let winner = &winner;
            let nodes = &nodes;
            scope.spawn(move |_| {
                if found.load(Ordering::Relaxed) || timed_out.load(Ordering::Relaxed) {
                    return;
                }
                let mut search = Search {
                    poset,
                    masks,
                    k,
                    free: free.clone(),
                    chosen: Vec::new(),
                    nodes: 0,
                    deadline,
                    stop: Some(found),
                };
                search.cover(root, top);
                search.chosen.push((root, top));
                match search.run() {
                    Ok(true) => {
                        let mut slot = winner.lock().unwrap();
                        if slot.is_none() {
                            *slot = Some(std::mem::take(&mut search.chosen));
                        }
                        found.store(true, Ordering::Relaxed);
                    }
                    Ok(false) => {}
                    Err(_) => timed_out.store(true, Ordering::Relaxed),
                }
                nodes.fetch_add(search.nodes, Ordering::Relaxed);
            });
        }
    });
    *nodes_out += nodes.load(Ordering::Relaxed);
    let witness = winner.into_inner().unwrap();
    if witness.is_some() {
        return Ok(witness);
    }
    if timed_out.load(Ordering::Relaxed) {
        let budget = deadline.map(|(_, b)| b).unwrap_or_default();
        return Err(Error::TimeBudgetExceeded {
            budget_ms: budget.as_millis() as u64,
        });
    }
    Ok(None)
}

struct Search<'a> {
    poset: &'a CharacteristicPoset,
    masks: Option<&'a MaskCache>,
    k: u32,
    free: BitSet,
    chosen: Vec<(usize, usize)>,
    nodes: u64,
    deadline: Option<(Instant, Duration)>,
    stop: Option<&'a AtomicBool>,
}

impl Search<'_> {
    /// Depth-first decision search. Returns whether the remaining free
    /// points were fully covered; `self.chosen` holds the intervals.
    fn run(&mut self) -> Result<bool> {
        self.nodes += 1;
        if self.nodes & DEADLINE_POLL_MASK == 0 {
            if let Some((deadline, budget)) = self.deadline {
                if Instant::now() >= deadline {
                    return Err(Error::TimeBudgetExceeded {
                        budget_ms: budget.as_millis() as u64,
                    });
                }
            }
            if let Some(stop) = self.stop {
                if stop.load(Ordering::Relaxed) {
                    // another worker already proved feasibility
                    return Ok(false);
                }
            }
        }
        let bottom = match self.free.first_set() {
            None => return Ok(true),
            Some(c) => c,
        };
        for top in self.candidate_tops(bottom) {
            self.cover(bottom, top);
            self.chosen.push((bottom, top));
            if self.run()? {
                return Ok(true);
            }
            self.chosen.pop();
            self.uncover(bottom, top);
        }
        Ok(false)
    }

    /// Admissible interval tops for the given bottom: d in [c, g] with
    /// rho(d) >= k and [c, d] entirely free. Ordered by decreasing rho,
    /// ties by rank, so large spaces are tried first.
    fn candidate_tops(&self, bottom: usize) -> Vec<usize> {
        let lo = self.poset.unrank(bottom);
        let g = self.poset.g();
        let mut out = Vec::new();
        self.poset.for_each_rank_in_box(&lo, g, |rank| {
            if self.poset.rho_of_rank(rank) >= self.k && self.free.get(rank) {
                out.push(rank);
            }
            true
        });
        out.retain(|&top| self.interval_is_free(bottom, top));
        out.sort_unstable_by_key(|&top| (Reverse(self.poset.rho_of_rank(top)), top));
        out
    }

    fn interval_is_free(&self, bottom: usize, top: usize) -> bool {
        match self.masks {
            Some(masks) => {
                let up = masks.up[bottom].words();
                let down = masks.down[top].words();
                let free = self.free.words();
                up.iter()
                    .zip(down)
                    .zip(free)
                    .all(|((u, d), f)| u & d & !f == 0)
            }
            None => {
                let lo = self.poset.unrank(bottom);
                let hi = self.poset.unrank(top);
                self.poset
                    .for_each_rank_in_box(&lo, &hi, |rank| self.free.get(rank))
            }
        }
    }

    fn cover(&mut self, bottom: usize, top: usize) {
        match self.masks {
            Some(masks) => {
                let up = masks.up[bottom].words();
                let down = masks.down[top].words();
                for ((f, u), d) in self.free.words_mut().iter_mut().zip(up).zip(down) {
                    *f &= !(u & d);
                }
            }
            None => {
                let lo = self.poset.unrank(bottom);
                let hi = self.poset.unrank(top);
                let free = &mut self.free;
                self.poset.for_each_rank_in_box(&lo, &hi, |rank| {
                    free.clear(rank);
                    true
                });
            }
        }
    }

    fn uncover(&mut self, bottom: usize, top: usize) {
        match self.masks {
            Some(masks) => {
                let up = masks.up[bottom].words();
                let down = masks.down[top].words();
                for ((f, u), d) in self.free.words_mut().iter_mut().zip(up).zip(down) {
                    *f |= u & d;
                }
            }
            None => {
                let lo = self.poset.unrank(bottom);
                let hi = self.poset.unrank(top);
                let free = &mut self.free;
                self.poset.for_each_rank_in_box(&lo, &hi, |rank| {
                    free.set(rank);
                    true
                });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::ideal_from_human;
    use crate::stanley::{decomposition_from_partition, verify_decomposition};

    fn ideal(text: &str) -> MonomialIdeal {
        ideal_from_human(text).unwrap()
    }

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    fn example_ideal() -> MonomialIdeal {
        ideal("n=5; x1^3, x2^2, x3^2, x4, x5")
            .intersect(&ideal("n=5; x1, x2, x3, x4"))
            .unwrap()
    }

    #[test]
    fn prime_in_five_variables() {
        let out = sdepth_exact(&ideal("n=5; x1, x2, x3, x4"), &cfg()).unwrap();
        assert_eq!(out.value, 3);
    }

    #[test]
    fn example_intersection_attains_the_lower_bound() {
        let out = sdepth_exact(&example_ideal(), &cfg()).unwrap();
        assert_eq!(out.value, 2);
    }

    #[test]
    fn modified_example_attains_the_upper_bound() {
        let i = ideal("n=5; x1^2, x2^2, x3, x4, x5")
            .intersect(&ideal("n=5; x1, x2, x3, x4"))
            .unwrap();
        let out = sdepth_exact(&i, &cfg()).unwrap();
        assert_eq!(out.value, 3);
    }

    #[test]
    fn witness_partitions_validate_and_verify() {
        for i in [
            example_ideal(),
            ideal("n=5; x1, x2, x3, x4"),
            ideal("n=2; x1^3, x2^2"),
        ] {
            let poset =
                CharacteristicPoset::build(&i, PosetMode::Ideal, None, DEFAULT_BOX_CAP).unwrap();
            let out = sdepth_poset(&poset, &cfg()).unwrap();
            out.partition.validate(&poset).unwrap();
            assert_eq!(out.partition.value(), out.value);
            let d = decomposition_from_partition(&out.partition);
            assert!(verify_decomposition(&i, &d, None).unwrap().passed());
        }
    }

    #[test]
    fn quotient_values_match_the_depth_formula() {
        // S/I for the example: n - n_0 = 0; S/Q1: n - n_1 = 1
        let out = sdepth_quotient_exact(&example_ideal(), &cfg()).unwrap();
        assert_eq!(out.value, 0);
        let out = sdepth_quotient_exact(&ideal("n=5; x1, x2, x3, x4"), &cfg()).unwrap();
        assert_eq!(out.value, 1);
        let out = sdepth_quotient_exact(&ideal("n=1; x1"), &cfg()).unwrap();
        assert_eq!(out.value, 0);
    }

    #[test]
    fn unit_and_zero_conventions() {
        // sdepth of the unit ideal is n
        let out = sdepth_exact(&MonomialIdeal::unit(4), &cfg()).unwrap();
        assert_eq!(out.value, 4);
        assert!(matches!(
            sdepth_exact(&MonomialIdeal::zero(3), &cfg()),
            Err(Error::ZeroIdeal)
        ));
        // S/0 = S has sdepth n
        let out = sdepth_quotient_exact(&MonomialIdeal::zero(3), &cfg()).unwrap();
        assert_eq!(out.value, 3);
        assert!(matches!(
            sdepth_quotient_exact(&MonomialIdeal::unit(3), &cfg()),
            Err(Error::UnitIdeal)
        ));
    }

    #[test]
    fn irreducible_values_are_exponent_independent() {
        for (text, r, n) in [
            ("n=2; x1^3, x2^2", 2, 2),
            ("n=3; x1^2, x2^2", 2, 3),
            ("n=4; x1, x2, x3", 3, 4),
        ] {
            let out = sdepth_exact(&ideal(text), &cfg()).unwrap();
            assert_eq!(
                out.value,
                crate::stanley::sdepth_irreducible_formula(r, n),
                "{text}"
            );
        }
    }

    #[test]
    fn parallel_mode_reaches_the_same_value() {
        let mut parallel = cfg();
        parallel.parallel = true;
        let i = example_ideal();
        let a = sdepth_exact(&i, &cfg()).unwrap();
        let b = sdepth_exact(&i, &parallel).unwrap();
        assert_eq!(a.value, b.value);
        let poset =
            CharacteristicPoset::build(&i, PosetMode::Ideal, None, DEFAULT_BOX_CAP).unwrap();
        b.partition.validate(&poset).unwrap();
        assert_eq!(b.partition.value(), b.value);
    }

    #[test]
    fn canonical_mode_is_deterministic() {
        let i = example_ideal();
        let a = sdepth_exact(&i, &cfg()).unwrap();
        let b = sdepth_exact(&i, &cfg()).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.stats.nodes, b.stats.nodes);
        assert_eq!(
            format!("{:?}", a.partition.intervals()),
            format!("{:?}", b.partition.intervals())
        );
    }

    #[test]
    fn time_budget_aborts_instead_of_answering() {
        let mut tight = cfg();
        tight.time_budget = Some(Duration::from_nanos(1));
        let result = sdepth_exact(&example_ideal(), &tight);
        assert!(matches!(result, Err(Error::TimeBudgetExceeded { .. })));
    }

    #[test]
    fn box_cap_propagates() {
        let mut small = cfg();
        small.box_cap = 10;
        assert!(matches!(
            sdepth_exact(&example_ideal(), &small),
            Err(Error::BoxCapExceeded { .. })
        ));
    }

    #[test]
    fn larger_bound_gives_the_same_value() {
        // g-robustness on a small corpus
        for text in ["n=2; x1, x2", "n=2; x1^2, x1*x2", "n=3; x1*x2, x3"] {
            let i = ideal(text);
            let canonical = sdepth_exact(&i, &cfg()).unwrap().value;
            let mut g = i.max_exponents().unwrap();
            for gj in &mut g {
                *gj += 1;
            }
            let poset =
                CharacteristicPoset::build(&i, PosetMode::Ideal, Some(&g), DEFAULT_BOX_CAP)
                    .unwrap();
            let padded = sdepth_poset(&poset, &cfg()).unwrap().value;
            assert_eq!(canonical, padded, "{text}");
        }
    }
}
