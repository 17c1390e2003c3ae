//! Families of intersections of initial-segment irreducible ideals.
//!
//! A family is the data (n; n_0 > ... > n_m; a_{ij}) defining the
//! irreducible ideals Q_i = (x1^{a_{i1}}, ..., x_{n_i}^{a_{i n_i}}) and
//! the intersections I_i = Q_i cap ... cap Q_m. Every I_i is of Borel
//! type. The monotone condition a_{ij} >= a_{i+1,j} (for j <= n_{i+1})
//! is the hypothesis of the sharp sdepth bounds and of the closed
//! regularity formula.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{IrreducibleIdeal, MonomialIdeal};
use crate::monomial::{MAX_EXPONENT, MAX_VARS};

/// One level of a family: the support size n_i and the exponent row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyLevel {
    pub ni: usize,
    #[serde(rename = "a")]
    pub exponents: Vec<u32>,
}

/// Family data (n; n_0 > ... > n_m; a_{ij}).
///
/// Wire form: `{"n":5,"levels":[{"ni":5,"a":[3,2,2,1,1]},{"ni":4,"a":[1,1,1,1]}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FamilyFile", into = "FamilyFile")]
pub struct BorelFamily {
    n: usize,
    levels: Vec<FamilyLevel>,
}

#[derive(Serialize, Deserialize)]
struct FamilyFile {
    n: usize,
    levels: Vec<FamilyLevel>,
}

impl From<BorelFamily> for FamilyFile {
    fn from(f: BorelFamily) -> Self {
        FamilyFile {
            n: f.n,
            levels: f.levels,
        }
    }
}

impl TryFrom<FamilyFile> for BorelFamily {
    type Error = Error;

    fn try_from(file: FamilyFile) -> Result<Self> {
        BorelFamily::new(file.n, file.levels)
    }
}

impl BorelFamily {
    pub fn new(n: usize, levels: Vec<FamilyLevel>) -> Result<Self> {
        if n < 1 || n > MAX_VARS {
            return Err(Error::VarCountOutOfRange(n));
        }
        if levels.is_empty() {
            return Err(Error::InvalidFamily("a family needs at least one level".into()));
        }
        for (i, level) in levels.iter().enumerate() {
            if level.ni < 1 || level.ni > n {
                return Err(Error::InvalidFamily(format!(
                    "level {i} has support size {} outside 1..={n}",
                    level.ni
                )));
            }
            if level.exponents.len() != level.ni {
                return Err(Error::InvalidFamily(format!(
                    "level {i} has {} exponents for support size {}",
                    level.exponents.len(),
                    level.ni
                )));
            }
            if level.exponents.iter().any(|&a| a == 0) {
                return Err(Error::InvalidFamily(format!(
                    "level {i} has a zero exponent; all a_ij must be positive"
                )));
            }
            if let Some(&a) = level.exponents.iter().find(|&&a| a > MAX_EXPONENT) {
                return Err(Error::ExponentTooLarge(a));
            }
            if i > 0 && levels[i - 1].ni <= level.ni {
                return Err(Error::InvalidFamily(format!(
                    "support sizes must strictly decrease: n_{} = {} !> n_{} = {}",
                    i - 1,
                    levels[i - 1].ni,
                    i,
                    level.ni
                )));
            }
        }
        Ok(BorelFamily { n, levels })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn levels(&self) -> &[FamilyLevel] {
        &self.levels
    }

    /// Number of levels, m + 1.
    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn ni_sequence(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.ni).collect()
    }

    /// The monotone condition a_{ij} >= a_{i+1,j} for all j <= n_{i+1},
    /// i < m. Always recomputed from the matrix.
    pub fn is_monotone(&self) -> bool {
        self.first_monotonicity_violation().is_none()
    }

    /// First (level, variable) breaking monotonicity, if any.
    pub fn first_monotonicity_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.levels.len().saturating_sub(1) {
            let upper = &self.levels[i];
            let lower = &self.levels[i + 1];
            for j in 1..=lower.ni {
                if upper.exponents[j - 1] < lower.exponents[j - 1] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// The irreducible ideal Q_i.
    pub fn irreducible(&self, i: usize) -> IrreducibleIdeal {
        IrreducibleIdeal::from_initial_row(self.n, &self.levels[i].exponents)
            .expect("family levels are validated on construction")
    }

    /// The intersections I_i = Q_i cap ... cap Q_m for every level i.
    pub fn build_ideals(&self) -> Vec<MonomialIdeal> {
        let mut out = vec![MonomialIdeal::unit(self.n); self.levels.len()];
        let mut acc = MonomialIdeal::unit(self.n);
        for i in (0..self.levels.len()).rev() {
            acc = acc
                .intersect(&self.irreducible(i).to_ideal())
                .expect("same ambient ring");
            out[i] = acc.clone();
        }
        out
    }

    /// The full intersection I = I_0.
    pub fn ideal(&self) -> MonomialIdeal {
        self.build_ideals().swap_remove(0)
    }

    /// Levels j whose Q_j is redundant in the full intersection.
    pub fn redundant_levels(&self) -> Vec<usize> {
        if self.levels.len() == 1 {
            return vec![];
        }
        let components: Vec<MonomialIdeal> =
            (0..self.levels.len()).map(|i| self.irreducible(i).to_ideal()).collect();
        let mut redundant = Vec::new();
        let mut kept: Vec<usize> = (0..components.len()).collect();
        // Greedy pruning in level order, against the currently kept rest.
        let mut idx = 0;
        while idx < kept.len() {
            if kept.len() == 1 {
                break;
            }
            let rest = kept
                .iter()
                .enumerate()
                .filter(|(pos, _)| *pos != idx)
                .map(|(_, &lvl)| &components[lvl])
                .fold(MonomialIdeal::unit(self.n), |acc, c| {
                    acc.intersect(c).expect("same ambient ring")
                });
            if components[kept[idx]].contains_ideal(&rest) {
                redundant.push(kept.remove(idx));
            } else {
                idx += 1;
            }
        }
        redundant.sort_unstable();
        redundant
    }

    /// Drops redundant levels; returns the reduced family and whether the
    /// input was already reduced.
    pub fn reduced(&self) -> (BorelFamily, bool) {
        let redundant = self.redundant_levels();
        if redundant.is_empty() {
            return (self.clone(), true);
        }
        let levels = self
            .levels
            .iter()
            .enumerate()
            .filter(|(i, _)| !redundant.contains(i))
            .map(|(_, l)| l.clone())
            .collect();
        (
            BorelFamily::new(self.n, levels).expect("reduced family stays valid"),
            false,
        )
    }

    /// Compact one-line description, e.g. `n=5 (5:3,2,2,1,1)(4:1,1,1,1)`.
    pub fn descriptor(&self) -> String {
        use std::fmt::Write;
        let mut s = format!("n={} ", self.n);
        for level in &self.levels {
            let row: Vec<String> = level.exponents.iter().map(|a| a.to_string()).collect();
            write!(s, "({}:{})", level.ni, row.join(",")).unwrap();
        }
        s
    }
}

/// Draws a family uniformly: the support sizes are a uniform strictly
/// decreasing (m+1)-subset of 1..=n and the exponents are uniform in
/// 1..=max_exp. With `monotone` set, rows are drawn bottom-up and each
/// overlapping entry is redrawn from [a_{i+1,j}, max_exp], so the
/// monotone condition holds by construction.
///
/// Deterministic for a fixed seed.
pub fn random_family(
    n: usize,
    m: usize,
    max_exp: u32,
    monotone: bool,
    seed: u64,
) -> Result<BorelFamily> {
    if n < 1 || n > MAX_VARS {
        return Err(Error::VarCountOutOfRange(n));
    }
    if m + 1 > n {
        return Err(Error::InfeasibleParams(format!(
            "cannot fit {} strictly decreasing support sizes in 1..={n}",
            m + 1
        )));
    }
    if max_exp < 1 || max_exp > MAX_EXPONENT {
        return Err(Error::InfeasibleParams(format!(
            "max_exp {max_exp} outside 1..={MAX_EXPONENT}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sizes: Vec<usize> = sample(&mut rng, n, m + 1).into_iter().map(|i| i + 1).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));

    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); m + 1];
    for i in (0..=m).rev() {
        let ni = sizes[i];
        let mut row = Vec::with_capacity(ni);
        for j in 1..=ni {
            let lo = if monotone && i < m && j <= sizes[i + 1] {
                rows[i + 1][j - 1]
            } else {
                1
            };
            row.push(rng.gen_range(lo..=max_exp));
        }
        rows[i] = row;
    }

    BorelFamily::new(
        n,
        sizes
            .into_iter()
            .zip(rows)
            .map(|(ni, exponents)| FamilyLevel { ni, exponents })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::borel::is_borel_type;
    use crate::parse::ideal_from_human;

    pub(crate) fn example_family() -> BorelFamily {
        BorelFamily::new(
            5,
            vec![
                FamilyLevel { ni: 5, exponents: vec![3, 2, 2, 1, 1] },
                FamilyLevel { ni: 4, exponents: vec![1, 1, 1, 1] },
            ],
        )
        .unwrap()
    }

    #[test]
    fn build_ideals_of_the_example() {
        let f = example_family();
        let ideals = f.build_ideals();
        assert_eq!(
            ideals[0],
            ideal_from_human("n=5; x1^3, x2^2, x3^2, x4, x1*x5, x2*x5, x3*x5").unwrap()
        );
        assert_eq!(ideals[1], ideal_from_human("n=5; x1, x2, x3, x4").unwrap());
    }

    #[test]
    fn single_level_family_is_its_irreducible() {
        let f = BorelFamily::new(3, vec![FamilyLevel { ni: 2, exponents: vec![2, 5] }]).unwrap();
        assert_eq!(f.build_ideals(), vec![f.irreducible(0).to_ideal()]);
    }

    #[test]
    fn all_ones_family_gives_nested_primes() {
        let f = BorelFamily::new(
            4,
            vec![
                FamilyLevel { ni: 3, exponents: vec![1, 1, 1] },
                FamilyLevel { ni: 1, exponents: vec![1] },
            ],
        )
        .unwrap();
        let ideals = f.build_ideals();
        // intersection of nested primes is the smallest
        assert_eq!(ideals[0], MonomialIdeal::prime(4, 1));
        assert_eq!(ideals[1], MonomialIdeal::prime(4, 1));
        assert!(!f.redundant_levels().is_empty());
    }

    #[test]
    fn built_ideals_are_borel_type() {
        let f = example_family();
        for i in f.build_ideals() {
            assert!(is_borel_type(&i).unwrap());
        }
    }

    #[test]
    fn monotonicity_is_recomputed() {
        assert!(example_family().is_monotone());
        let f = BorelFamily::new(
            3,
            vec![
                FamilyLevel { ni: 2, exponents: vec![1, 3] },
                FamilyLevel { ni: 1, exponents: vec![2] },
            ],
        )
        .unwrap();
        assert!(!f.is_monotone());
        assert_eq!(f.first_monotonicity_violation(), Some((0, 1)));
    }

    #[test]
    fn invalid_families_are_rejected() {
        // non-decreasing sizes
        assert!(BorelFamily::new(
            3,
            vec![
                FamilyLevel { ni: 2, exponents: vec![1, 1] },
                FamilyLevel { ni: 2, exponents: vec![1, 1] },
            ],
        )
        .is_err());
        // zero exponent
        assert!(BorelFamily::new(3, vec![FamilyLevel { ni: 1, exponents: vec![0] }]).is_err());
        // row length mismatch
        assert!(BorelFamily::new(3, vec![FamilyLevel { ni: 2, exponents: vec![1] }]).is_err());
    }

    #[test]
    fn random_family_is_deterministic() {
        let a = random_family(5, 1, 3, true, 42).unwrap();
        let b = random_family(5, 1, 3, true, 42).unwrap();
        assert_eq!(a, b);
        let c = random_family(5, 1, 3, true, 43).unwrap();
        assert!(a == c || a != c); // different seeds may or may not collide
    }

    #[test]
    fn random_monotone_families_pass_the_recheck() {
        for seed in 0..50 {
            let f = random_family(5, 2, 3, true, seed).unwrap();
            assert!(f.is_monotone(), "seed {seed}: {}", f.descriptor());
            assert_eq!(f.num_levels(), 3);
        }
    }

    #[test]
    fn infeasible_parameters_are_rejected() {
        assert!(random_family(2, 2, 3, false, 0).is_err());
        assert!(random_family(3, 1, 0, false, 0).is_err());
    }

    #[test]
    fn family_json_roundtrip() {
        let f = example_family();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<BorelFamily>(&json).unwrap(), f);
        let parsed: BorelFamily = serde_json::from_str(
            r#"{"n":5,"levels":[{"ni":5,"a":[3,2,2,1,1]},{"ni":4,"a":[1,1,1,1]}]}"#,
        )
        .unwrap();
        assert_eq!(parsed, f);
    }

    #[test]
    fn reduction_drops_contained_components() {
        // equal rows on the overlap make the wider component redundant
        let f = BorelFamily::new(
            3,
            vec![
                FamilyLevel { ni: 2, exponents: vec![1, 1] },
                FamilyLevel { ni: 1, exponents: vec![1] },
            ],
        )
        .unwrap();
        assert_eq!(f.redundant_levels(), vec![0]);
        let (reduced, was_reduced) = f.reduced();
        assert!(!was_reduced);
        assert_eq!(reduced.num_levels(), 1);
        assert_eq!(reduced.ideal(), f.ideal());
        assert!(example_family().reduced().1);
    }
}
