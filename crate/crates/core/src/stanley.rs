//! Interval partitions, Stanley decompositions and the closed sdepth
//! formulas and bounds.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::family::BorelFamily;
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::poset::{rho, CharacteristicPoset, PosetMode};

/// One interval [lo, hi] = {a : lo <= a <= hi} of box points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lo: Vec<u32>,
    pub hi: Vec<u32>,
}

/// A partition of a characteristic poset into disjoint intervals.
///
/// Its value min rho(hi) is always recomputed from the interval tops,
/// never cached.
#[derive(Clone, Debug, Serialize)]
pub struct IntervalPartition {
    g: Vec<u32>,
    mode: PosetMode,
    intervals: Vec<Interval>,
}

impl IntervalPartition {
    pub fn new(g: Vec<u32>, mode: PosetMode, intervals: Vec<Interval>) -> Self {
        IntervalPartition { g, mode, intervals }
    }

    pub(crate) fn from_ranks(poset: &CharacteristicPoset, mut ranks: Vec<(usize, usize)>) -> Self {
        ranks.sort_unstable();
        IntervalPartition {
            g: poset.g().to_vec(),
            mode: poset.mode(),
            intervals: ranks
                .into_iter()
                .map(|(lo, hi)| Interval {
                    lo: poset.unrank(lo),
                    hi: poset.unrank(hi),
                })
                .collect(),
        }
    }

    pub fn g(&self) -> &[u32] {
        &self.g
    }

    pub fn mode(&self) -> PosetMode {
        self.mode
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    /// min over interval tops of rho(hi, g), recomputed on each call.
    pub fn value(&self) -> u32 {
        self.intervals
            .iter()
            .map(|iv| rho(&iv.hi, &self.g))
            .min()
            .expect("a partition of a nonempty poset has at least one interval")
    }

    /// Independent re-check of the partition invariants against a poset:
    /// every interval lies inside the point set, intervals are pairwise
    /// disjoint, and their union is the whole point set.
    pub fn validate(&self, poset: &CharacteristicPoset) -> Result<()> {
        if self.g != poset.g() || self.mode != poset.mode() {
            return Err(Error::InvalidPartition(
                "partition bound or mode does not match the poset".into(),
            ));
        }
        let mut covered = BitSet::new(poset.box_size());
        for iv in &self.intervals {
            if iv.lo.len() != self.g.len() || iv.hi.len() != self.g.len() {
                return Err(Error::InvalidPartition("interval dimension mismatch".into()));
            }
            if !(iv.lo.iter().zip(&iv.hi).all(|(a, b)| a <= b)
                && iv.hi.iter().zip(&self.g).all(|(a, b)| a <= b))
            {
                return Err(Error::InvalidPartition(format!(
                    "interval [{:?}, {:?}] is not within the box",
                    iv.lo, iv.hi
                )));
            }
            let mut bad = None;
            poset.for_each_rank_in_box(&iv.lo, &iv.hi, |rank| {
                if !poset.contains_rank(rank) {
                    bad = Some(format!(
                        "interval [{:?}, {:?}] leaves the point set at {:?}",
                        iv.lo,
                        iv.hi,
                        poset.unrank(rank)
                    ));
                    return false;
                }
                if covered.get(rank) {
                    bad = Some(format!(
                        "point {:?} is covered twice",
                        poset.unrank(rank)
                    ));
                    return false;
                }
                covered.set(rank);
                true
            });
            if let Some(msg) = bad {
                return Err(Error::InvalidPartition(msg));
            }
        }
        if covered.count_ones() != poset.point_count() {
            return Err(Error::InvalidPartition(format!(
                "{} of {} points covered",
                covered.count_ones(),
                poset.point_count()
            )));
        }
        Ok(())
    }
}

/// One direct summand x^base K[vars].
#[derive(Clone, Debug, Serialize)]
pub struct StanleySpace {
    pub base: Monomial,
    /// 1-indexed free variables.
    pub vars: BTreeSet<usize>,
}

/// A Stanley decomposition derived from an interval partition: the
/// interval [c, d] becomes the space x^c K[Z(d)] with
/// Z(d) = {x_j : d_j = g_j}.
#[derive(Clone, Debug, Serialize)]
pub struct StanleyDecomposition {
    pub n: usize,
    pub mode: PosetMode,
    pub g: Vec<u32>,
    pub spaces: Vec<StanleySpace>,
    pub claimed_sdepth: u32,
}

pub fn decomposition_from_partition(partition: &IntervalPartition) -> StanleyDecomposition {
    let g = partition.g();
    let n = g.len();
    let spaces = partition
        .intervals()
        .iter()
        .map(|iv| StanleySpace {
            base: Monomial::new(iv.lo.clone()),
            vars: (1..=n).filter(|&j| iv.hi[j - 1] == g[j - 1]).collect(),
        })
        .collect();
    StanleyDecomposition {
        n,
        mode: partition.mode(),
        g: g.to_vec(),
        spaces,
        claimed_sdepth: partition.value(),
    }
}

/// Why a decomposition failed verification, with the offending monomial.
#[derive(Clone, Debug)]
pub struct CoverageFailure {
    pub monomial: Monomial,
    pub kind: CoverageFailureKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverageFailureKind {
    /// Belongs to the module but no space covers it.
    Uncovered,
    /// Belongs to the module and at least two spaces cover it.
    Overcovered,
    /// Outside the module yet covered by a space.
    Spurious,
}

impl fmt::Display for CoverageFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CoverageFailureKind::Uncovered => {
                write!(f, "{} belongs to the module but no space covers it", self.monomial)
            }
            CoverageFailureKind::Overcovered => {
                write!(f, "{} is covered by more than one space", self.monomial)
            }
            CoverageFailureKind::Spurious => {
                write!(f, "{} lies outside the module but is covered", self.monomial)
            }
        }
    }
}

/// Outcome of a decomposition verification.
#[derive(Clone, Debug)]
pub enum Verification {
    Pass { degree_cap: u32 },
    Fail { degree_cap: u32, failure: CoverageFailure },
}

impl Verification {
    pub fn passed(&self) -> bool {
        matches!(self, Verification::Pass { .. })
    }

    pub fn degree_cap(&self) -> u32 {
        match self {
            Verification::Pass { degree_cap } | Verification::Fail { degree_cap, .. } => {
                *degree_cap
            }
        }
    }

    pub fn failure(&self) -> Option<&CoverageFailure> {
        match self {
            Verification::Pass { .. } => None,
            Verification::Fail { failure, .. } => Some(failure),
        }
    }
}

/// Checks the direct-sum property degree by degree: every monomial of
/// total degree at most the cap lies in the module (I or S/I according
/// to the mode) iff exactly one space covers it.
///
/// The default cap is sum(g) + 1: box membership determines everything
/// beyond the corner, and one extra degree exercises the tails.
pub fn verify_decomposition(
    ideal: &MonomialIdeal,
    decomposition: &StanleyDecomposition,
    degree_cap: Option<u32>,
) -> Result<Verification> {
    if ideal.n() != decomposition.n {
        return Err(Error::DimensionMismatch {
            expected: ideal.n(),
            got: decomposition.n,
        });
    }
    let min_cap: u32 = decomposition.g.iter().sum::<u32>() + 1;
    let cap = match degree_cap {
        None => min_cap,
        Some(c) if c < min_cap => {
            return Err(Error::DegreeCapTooSmall { min: min_cap, got: c })
        }
        Some(c) => c,
    };

    let n = decomposition.n;
    let mut failure: Option<CoverageFailure> = None;
    let mut scratch = vec![0u32; n];
    for degree in 0..=cap {
        enumerate_degree(&mut scratch, 0, degree, &mut |exps| {
            if failure.is_some() {
                return;
            }
            let member = match decomposition.mode {
                PosetMode::Ideal => ideal.contains_exponents(exps),
                PosetMode::Quotient => !ideal.contains_exponents(exps),
            };
            let mut covering = 0usize;
            for space in &decomposition.spaces {
                if space_covers(space, exps) {
                    covering += 1;
                    if covering > 1 {
                        break;
                    }
                }
            }
            let kind = match (member, covering) {
                (true, 1) | (false, 0) => None,
                (true, 0) => Some(CoverageFailureKind::Uncovered),
                (true, _) => Some(CoverageFailureKind::Overcovered),
                (false, _) => Some(CoverageFailureKind::Spurious),
            };
            if let Some(kind) = kind {
                failure = Some(CoverageFailure {
                    monomial: Monomial::new(exps.to_vec()),
                    kind,
                });
            }
        });
        if failure.is_some() {
            break;
        }
    }
    Ok(match failure {
        None => Verification::Pass { degree_cap: cap },
        Some(failure) => Verification::Fail {
            degree_cap: cap,
            failure,
        },
    })
}

fn enumerate_degree(scratch: &mut [u32], pos: usize, left: u32, f: &mut impl FnMut(&[u32])) {
    if pos + 1 == scratch.len() {
        scratch[pos] = left;
        f(scratch);
        return;
    }
    for a in 0..=left {
        scratch[pos] = a;
        enumerate_degree(scratch, pos + 1, left - a, f);
    }
}

fn space_covers(space: &StanleySpace, exps: &[u32]) -> bool {
    space
        .base
        .exponents()
        .iter()
        .enumerate()
        .all(|(idx, &c)| exps[idx] >= c && (space.vars.contains(&(idx + 1)) || exps[idx] == c))
}

/// sdepth of the prime (x1..xk) in n variables: n - floor(k/2).
pub fn sdepth_prime_formula(k: usize, n: usize) -> u32 {
    assert!(k >= 1 && k <= n);
    (n - k / 2) as u32
}

/// sdepth of an irreducible ideal with r pure-power generators in n
/// variables: n - floor(r/2), independent of the exponents.
pub fn sdepth_irreducible_formula(r: usize, n: usize) -> u32 {
    assert!(r >= 1 && r <= n);
    (n - r / 2) as u32
}

/// The sharp bounds for level i of a monotone family:
/// n + ceil(n_m/2) - n_i <= sdepth(I_i) <= n - floor(n_i/2).
pub fn sdepth_bounds(family: &BorelFamily, level: usize) -> Result<(u32, u32)> {
    if let Some((i, var)) = family.first_monotonicity_violation() {
        return Err(Error::NotMonotone {
            level: i,
            next: i + 1,
            var,
        });
    }
    Ok(sdepth_bounds_unchecked(family, level))
}

/// The same arithmetic without the monotonicity hypothesis, for probing
/// whether the bounds happen to hold on arbitrary families.
pub fn sdepth_bounds_unchecked(family: &BorelFamily, level: usize) -> (u32, u32) {
    let n = family.n();
    let ni = family.levels()[level].ni;
    let nm = family.levels().last().expect("families are nonempty").ni;
    let lower = (n + nm.div_ceil(2) - ni) as u32;
    let upper = (n - ni / 2) as u32;
    (lower, upper)
}

/// Entry of the decomposition report.
#[derive(Clone, Debug, Serialize)]
pub struct IntervalReport {
    pub c: Vec<u32>,
    pub d: Vec<u32>,
    pub z: Vec<usize>,
}

/// Report emitted by the sdepth and decomposition subcommands.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub n: usize,
    pub g: Vec<u32>,
    pub mode: PosetMode,
    pub sdepth: u32,
    pub intervals: Vec<IntervalReport>,
    pub verified: Option<bool>,
    pub degree_cap: Option<u32>,
}

impl DecompositionReport {
    pub fn from_partition(
        partition: &IntervalPartition,
        sdepth: u32,
        verification: Option<&Verification>,
    ) -> Self {
        let g = partition.g();
        DecompositionReport {
            n: g.len(),
            g: g.to_vec(),
            mode: partition.mode(),
            sdepth,
            intervals: partition
                .intervals()
                .iter()
                .map(|iv| IntervalReport {
                    c: iv.lo.clone(),
                    d: iv.hi.clone(),
                    z: (1..=g.len()).filter(|&j| iv.hi[j - 1] == g[j - 1]).collect(),
                })
                .collect(),
            verified: verification.map(|v| v.passed()),
            degree_cap: verification.map(|v| v.degree_cap()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::ideal_from_human;
    use crate::poset::DEFAULT_BOX_CAP;

    fn ideal(text: &str) -> MonomialIdeal {
        ideal_from_human(text).unwrap()
    }

    fn partition(g: &[u32], mode: PosetMode, pairs: &[(&[u32], &[u32])]) -> IntervalPartition {
        IntervalPartition::new(
            g.to_vec(),
            mode,
            pairs
                .iter()
                .map(|(lo, hi)| Interval {
                    lo: lo.to_vec(),
                    hi: hi.to_vec(),
                })
                .collect(),
        )
    }

    #[test]
    fn single_point_decomposition() {
        // I = (x1) in one variable: the point (1) alone, space x1 K[x1]
        let i = ideal("n=1; x1");
        let p = partition(&[1], PosetMode::Ideal, &[(&[1], &[1])]);
        assert_eq!(p.value(), 1);
        let d = decomposition_from_partition(&p);
        assert_eq!(d.claimed_sdepth, 1);
        assert_eq!(d.spaces.len(), 1);
        assert_eq!(d.spaces[0].base, Monomial::new(vec![1]));
        assert!(d.spaces[0].vars.contains(&1));
        assert!(verify_decomposition(&i, &d, None).unwrap().passed());
    }

    #[test]
    fn two_variable_prime_decomposition() {
        // (x1, x2) with intervals [(1,0),(1,1)] and [(0,1),(0,1)]:
        // spaces x1 K[x1,x2] and x2 K[x2], sdepth 1 = 2 - floor(2/2)
        let i = ideal("n=2; x1, x2");
        let p = partition(
            &[1, 1],
            PosetMode::Ideal,
            &[(&[1, 0], &[1, 1]), (&[0, 1], &[0, 1])],
        );
        assert_eq!(p.value(), 1);
        let poset =
            CharacteristicPoset::build(&i, PosetMode::Ideal, None, DEFAULT_BOX_CAP).unwrap();
        p.validate(&poset).unwrap();
        let d = decomposition_from_partition(&p);
        assert!(verify_decomposition(&i, &d, None).unwrap().passed());
        assert_eq!(d.claimed_sdepth, sdepth_prime_formula(2, 2));
    }

    #[test]
    fn dropping_an_interval_is_caught() {
        let i = ideal("n=2; x1, x2");
        let p = partition(&[1, 1], PosetMode::Ideal, &[(&[1, 0], &[1, 1])]);
        let poset =
            CharacteristicPoset::build(&i, PosetMode::Ideal, None, DEFAULT_BOX_CAP).unwrap();
        assert!(p.validate(&poset).is_err());
        let d = decomposition_from_partition(&p);
        let v = verify_decomposition(&i, &d, None).unwrap();
        assert!(!v.passed());
        assert_eq!(v.failure().unwrap().kind, CoverageFailureKind::Uncovered);
    }

    #[test]
    fn overlapping_spaces_are_caught() {
        let i = ideal("n=2; x1, x2");
        let p = partition(
            &[1, 1],
            PosetMode::Ideal,
            &[
                (&[1, 0], &[1, 1]),
                (&[0, 1], &[1, 1]), // overlaps at (1,1)
            ],
        );
        let poset =
            CharacteristicPoset::build(&i, PosetMode::Ideal, None, DEFAULT_BOX_CAP).unwrap();
        assert!(p.validate(&poset).is_err());
        let d = decomposition_from_partition(&p);
        let v = verify_decomposition(&i, &d, None).unwrap();
        assert!(!v.passed());
        assert_eq!(v.failure().unwrap().kind, CoverageFailureKind::Overcovered);
    }

    #[test]
    fn interval_leaving_the_point_set_is_caught() {
        let i = ideal("n=2; x1, x2");
        // [(0,0),(1,1)] includes the origin, which is not an ideal point
        let p = partition(&[1, 1], PosetMode::Ideal, &[(&[0, 0], &[1, 1])]);
        let poset =
            CharacteristicPoset::build(&i, PosetMode::Ideal, None, DEFAULT_BOX_CAP).unwrap();
        assert!(p.validate(&poset).is_err());
        let d = decomposition_from_partition(&p);
        let v = verify_decomposition(&i, &d, None).unwrap();
        assert!(!v.passed());
        assert_eq!(v.failure().unwrap().kind, CoverageFailureKind::Spurious);
    }

    #[test]
    fn degree_cap_floor_is_enforced() {
        let i = ideal("n=1; x1");
        let p = partition(&[1], PosetMode::Ideal, &[(&[1], &[1])]);
        let d = decomposition_from_partition(&p);
        assert!(matches!(
            verify_decomposition(&i, &d, Some(1)),
            Err(Error::DegreeCapTooSmall { min: 2, got: 1 })
        ));
        assert!(verify_decomposition(&i, &d, Some(5)).unwrap().passed());
    }

    #[test]
    fn closed_formulas() {
        assert_eq!(sdepth_prime_formula(4, 5), 3);
        assert_eq!(sdepth_prime_formula(1, 7), 7);
        assert_eq!(sdepth_prime_formula(2, 2), 1);
        assert_eq!(sdepth_irreducible_formula(5, 5), 3);
        assert_eq!(sdepth_irreducible_formula(1, 4), 4);
        assert_eq!(sdepth_irreducible_formula(2, 2), 1);
    }

    #[test]
    fn bounds_on_the_example_family() {
        use crate::family::FamilyLevel;
        let f = BorelFamily::new(
            5,
            vec![
                FamilyLevel { ni: 5, exponents: vec![3, 2, 2, 1, 1] },
                FamilyLevel { ni: 4, exponents: vec![1, 1, 1, 1] },
            ],
        )
        .unwrap();
        assert_eq!(sdepth_bounds(&f, 0).unwrap(), (2, 3));
        // at the last level the two bounds coincide
        let (lo, hi) = sdepth_bounds(&f, 1).unwrap();
        assert_eq!((lo, hi), (3, 3));
    }

    #[test]
    fn bounds_require_monotonicity() {
        use crate::family::FamilyLevel;
        let f = BorelFamily::new(
            3,
            vec![
                FamilyLevel { ni: 2, exponents: vec![1, 1] },
                FamilyLevel { ni: 1, exponents: vec![3] },
            ],
        )
        .unwrap();
        assert!(matches!(
            sdepth_bounds(&f, 0),
            Err(Error::NotMonotone { .. })
        ));
        let (lo, hi) = sdepth_bounds_unchecked(&f, 0);
        assert_eq!((lo, hi), (2, 2));
    }
}
