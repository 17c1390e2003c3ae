//! Monomial ideals with canonical minimal generating sets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MAX_EXPONENT, MAX_VARS};

/// A monomial ideal in `n` variables, held as its unique minimal generating
/// set, sorted canonically (total degree, then lexicographic on exponents).
///
/// Two ideals are equal iff their canonical forms coincide, so structural
/// equality is ideal equality. The zero ideal has no generators; the unit
/// ideal has the single generator 1.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "IdealFile", into = "IdealFile")]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

/// Wire form of an ideal: `{"n":5,"gens":[[3,0,0,0,0],[0,2,0,0,0]]}`.
#[derive(Serialize, Deserialize)]
struct IdealFile {
    n: usize,
    gens: Vec<Vec<u32>>,
}

impl From<MonomialIdeal> for IdealFile {
    fn from(ideal: MonomialIdeal) -> Self {
        IdealFile {
            n: ideal.n,
            gens: ideal.gens.iter().map(|g| g.exponents().to_vec()).collect(),
        }
    }
}

impl TryFrom<IdealFile> for MonomialIdeal {
    type Error = Error;

    fn try_from(file: IdealFile) -> Result<Self> {
        let gens = file
            .gens
            .into_iter()
            .map(|exps| {
                if exps.len() != file.n {
                    return Err(Error::DimensionMismatch {
                        expected: file.n,
                        got: exps.len(),
                    });
                }
                Ok(Monomial::new(exps))
            })
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::new(file.n, gens)
    }
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, minimalizing and canonically
    /// sorting. Rejects dimension mismatches and out-of-range sizes.
    pub fn new(n: usize, gens: Vec<Monomial>) -> Result<Self> {
        if n < 1 || n > MAX_VARS {
            return Err(Error::VarCountOutOfRange(n));
        }
        for g in &gens {
            if g.vars() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: g.vars(),
                });
            }
            if let Some(&a) = g.exponents().iter().find(|&&a| a > MAX_EXPONENT) {
                return Err(Error::ExponentTooLarge(a));
            }
        }
        Ok(Self::minimalize(n, gens))
    }

    /// Minimalization of an already-validated generator list: removes
    /// divisibility-redundant generators, deduplicates, sorts canonically.
    fn minimalize(n: usize, mut gens: Vec<Monomial>) -> Self {
        if gens.iter().any(|g| g.is_one()) {
            return MonomialIdeal {
                n,
                gens: vec![Monomial::one(n)],
            };
        }
        gens.sort();
        gens.dedup();
        // After the canonical sort a divisor always precedes its multiples.
        let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
        for g in gens {
            if !kept.iter().any(|h| h.divides(&g)) {
                kept.push(g);
            }
        }
        MonomialIdeal { n, gens: kept }
    }

    /// The zero ideal (no generators).
    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, gens: vec![] }
    }

    /// The unit ideal S = (1).
    pub fn unit(n: usize) -> Self {
        MonomialIdeal {
            n,
            gens: vec![Monomial::one(n)],
        }
    }

    /// The principal ideal (m).
    pub fn principal(n: usize, m: Monomial) -> Result<Self> {
        Self::new(n, vec![m])
    }

    /// The prime (x1, ..., xk).
    pub fn prime(n: usize, k: usize) -> Self {
        assert!(k >= 1 && k <= n);
        Self::minimalize(n, (1..=k).map(|j| Monomial::variable(n, j)).collect())
    }

    /// The principal ideal (x_j).
    pub fn variable_ideal(n: usize, j: usize) -> Self {
        MonomialIdeal {
            n,
            gens: vec![Monomial::variable(n, j)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The canonical minimal generating set.
    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    /// Membership: true iff some minimal generator divides `m`.
    pub fn contains(&self, m: &Monomial) -> bool {
        assert_eq!(m.vars(), self.n, "monomial lives in a different ring");
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Allocation-free membership test on a raw exponent vector.
    pub fn contains_exponents(&self, exps: &[u32]) -> bool {
        debug_assert_eq!(exps.len(), self.n);
        self.gens
            .iter()
            .any(|g| g.exponents().iter().zip(exps).all(|(a, b)| a <= b))
    }

    /// Ideal containment: `other` is a subset of `self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        assert_eq!(self.n, other.n);
        other.gens.iter().all(|g| self.contains(g))
    }

    /// I + J, minimalized.
    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Self::minimalize(self.n, gens))
    }

    /// I intersect J via pairwise lcms of the generators.
    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for g in &self.gens {
            for h in &other.gens {
                gens.push(g.lcm(h));
            }
        }
        Ok(Self::minimalize(self.n, gens))
    }

    /// The colon ideal (I : u) = ({ g / gcd(g, u) : g in G(I) }).
    ///
    /// Satisfies `contains(colon_monomial(I, u), m) == contains(I, u*m)`.
    pub fn colon_monomial(&self, u: &Monomial) -> MonomialIdeal {
        assert_eq!(u.vars(), self.n);
        Self::minimalize(self.n, self.gens.iter().map(|g| g.colon_by(u)).collect())
    }

    /// The colon ideal (I : J) = intersection of (I : g) over g in G(J).
    pub fn colon(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same_ring(other)?;
        if other.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let mut acc: Option<MonomialIdeal> = None;
        for g in &other.gens {
            let quot = self.colon_monomial(g);
            acc = Some(match acc {
                None => quot,
                Some(a) => a.intersect(&quot)?,
            });
        }
        Ok(acc.unwrap())
    }

    /// The saturation (I : J^inf): iterates K <- (K : J) to its fixpoint.
    /// Terminates by the ascending chain condition on monomial ideals.
    pub fn saturate(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same_ring(other)?;
        if other.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let mut current = self.clone();
        loop {
            let next = current.colon(other)?;
            if next == current {
                return Ok(current);
            }
            current = next;
        }
    }

    /// True iff every minimal generator is a pure variable power.
    /// The zero and unit ideals are not irreducible.
    pub fn is_irreducible(&self) -> bool {
        !self.is_zero()
            && !self.is_unit()
            && self
                .gens
                .iter()
                .all(|g| g.exponents().iter().filter(|&&a| a > 0).count() == 1)
    }

    pub fn as_irreducible(&self) -> Result<IrreducibleIdeal> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let mut powers = BTreeMap::new();
        for g in &self.gens {
            let positive: Vec<usize> = (1..=self.n).filter(|&j| g.exponent(j) > 0).collect();
            if positive.len() != 1 {
                return Err(Error::NotIrreducible(g.to_string()));
            }
            powers.insert(positive[0], g.exponent(positive[0]));
        }
        IrreducibleIdeal::new(self.n, powers)
    }

    /// The irredundant irreducible decomposition of the ideal.
    ///
    /// Splits a mixed generator g = x_j^b * v (with x_j not dividing v) into
    /// the two ideals I + (x_j^b) and I + (v), recurses until every branch is
    /// irreducible, then deduplicates and prunes redundant components in
    /// canonical order.
    pub fn irreducible_decomposition(&self) -> Result<Vec<IrreducibleIdeal>> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let mut components: Vec<MonomialIdeal> = Vec::new();
        let mut stack = vec![self.clone()];
        while let Some(ideal) = stack.pop() {
            match ideal.find_mixed_generator() {
                None => components.push(ideal),
                Some((j, b, v)) => {
                    let power = Monomial::pure_power(self.n, j, b);
                    stack.push(Self::minimalize(self.n, {
                        let mut g = ideal.gens.clone();
                        g.push(power);
                        g
                    }));
                    stack.push(Self::minimalize(self.n, {
                        let mut g = ideal.gens.clone();
                        g.push(v);
                        g
                    }));
                }
            }
        }
        components.sort_by(|a, b| a.gens.cmp(&b.gens));
        components.dedup();

        // Greedy irredundancy pruning in canonical order. The irredundant
        // core of an irreducible decomposition is unique, so the order only
        // affects the amount of work.
        let mut idx = 0;
        while idx < components.len() {
            if components.len() == 1 {
                break;
            }
            let rest = components
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != idx)
                .map(|(_, c)| c.clone())
                .try_fold(MonomialIdeal::unit(self.n), |acc, c| acc.intersect(&c))?;
            if components[idx].contains_ideal(&rest) {
                components.remove(idx);
            } else {
                idx += 1;
            }
        }

        components.iter().map(|c| c.as_irreducible()).collect()
    }

    /// First generator that is not a pure power, split as (j, b, v) with
    /// g = x_j^b * v, x_j not dividing v, v != 1.
    fn find_mixed_generator(&self) -> Option<(usize, u32, Monomial)> {
        for g in &self.gens {
            let positive: Vec<usize> = (1..=self.n).filter(|&j| g.exponent(j) > 0).collect();
            if positive.len() >= 2 {
                let j = positive[0];
                let b = g.exponent(j);
                let mut rest = g.exponents().to_vec();
                rest[j - 1] = 0;
                return Some((j, b, Monomial::new(rest)));
            }
        }
        None
    }

    /// 1-indexed variables occurring in some minimal generator.
    pub fn support(&self) -> Result<BTreeSet<usize>> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        Ok((1..=self.n)
            .filter(|&j| self.gens.iter().any(|g| g.exponent(j) > 0))
            .collect())
    }

    /// Componentwise maximum generator exponent; zero for absent variables.
    pub fn max_exponents(&self) -> Result<Vec<u32>> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let mut g = vec![0u32; self.n];
        for gen in &self.gens {
            for (slot, &a) in g.iter_mut().zip(gen.exponents()) {
                *slot = (*slot).max(a);
            }
        }
        Ok(g)
    }

    fn check_same_ring(&self, other: &MonomialIdeal) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {} vars", self.n)
    }
}

/// An irreducible monomial ideal: generated by pure variable powers
/// (x_{j1}^{a1}, ..., x_{jr}^{ar}) with all exponents >= 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IrreducibleIdeal {
    n: usize,
    powers: BTreeMap<usize, u32>,
}

impl IrreducibleIdeal {
    pub fn new(n: usize, powers: BTreeMap<usize, u32>) -> Result<Self> {
        if n < 1 || n > MAX_VARS {
            return Err(Error::VarCountOutOfRange(n));
        }
        if powers.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        for (&j, &a) in &powers {
            if j < 1 || j > n {
                return Err(Error::VarCountOutOfRange(j));
            }
            if a < 1 {
                return Err(Error::NotIrreducible(format!("x{j}^0")));
            }
            if a > MAX_EXPONENT {
                return Err(Error::ExponentTooLarge(a));
            }
        }
        Ok(IrreducibleIdeal { n, powers })
    }

    /// Builds (x1^a1, ..., xr^ar) from a row of exponents on the first
    /// r variables.
    pub fn from_initial_row(n: usize, row: &[u32]) -> Result<Self> {
        Self::new(
            n,
            row.iter().enumerate().map(|(i, &a)| (i + 1, a)).collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Map from 1-indexed variable to its pure-power exponent.
    pub fn powers(&self) -> &BTreeMap<usize, u32> {
        &self.powers
    }

    /// Number of variables carrying a generator.
    pub fn num_powers(&self) -> usize {
        self.powers.len()
    }

    pub fn to_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(
            self.n,
            self.powers
                .iter()
                .map(|(&j, &a)| Monomial::pure_power(self.n, j, a))
                .collect(),
        )
        .expect("validated on construction")
    }
}

impl fmt::Display for IrreducibleIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_ideal().fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::ideal_from_human;

    fn ideal(text: &str) -> MonomialIdeal {
        ideal_from_human(text).unwrap()
    }

    #[test]
    fn minimalize_removes_multiples() {
        // {x1, x1^2} -> {x1}
        let i = ideal("n=1; x1, x1^2");
        assert_eq!(i.gens().len(), 1);
        assert_eq!(i, ideal("n=1; x1"));
    }

    #[test]
    fn minimalize_keeps_antichains() {
        let i = ideal("n=5; x1^3, x2^2, x3^2, x4, x5");
        assert_eq!(i.num_gens(), 5);
    }

    #[test]
    fn minimalize_of_nothing_is_zero() {
        let i = MonomialIdeal::new(3, vec![]).unwrap();
        assert!(i.is_zero());
        assert_eq!(i, MonomialIdeal::zero(3));
    }

    #[test]
    fn unit_ideal_swallows_everything() {
        let i = MonomialIdeal::new(2, vec![Monomial::one(2), Monomial::variable(2, 1)]).unwrap();
        assert!(i.is_unit());
        assert_eq!(i.num_gens(), 1);
    }

    #[test]
    fn membership() {
        let i = ideal("n=2; x1*x2");
        assert!(i.contains(&Monomial::new(vec![2, 1])));
        assert!(!i.contains(&Monomial::new(vec![2, 0])));
    }

    #[test]
    fn intersect_principal_primes() {
        let a = ideal("n=2; x1");
        let b = ideal("n=2; x2");
        assert_eq!(a.intersect(&b).unwrap(), ideal("n=2; x1*x2"));
    }

    #[test]
    fn intersect_with_unit_is_identity() {
        let i = ideal("n=3; x1^2, x2*x3");
        assert_eq!(i.intersect(&MonomialIdeal::unit(3)).unwrap(), i);
    }

    #[test]
    fn example_intersection_of_two_irreducibles() {
        let q0 = ideal("n=5; x1^3, x2^2, x3^2, x4, x5");
        let q1 = ideal("n=5; x1, x2, x3, x4");
        let i = q0.intersect(&q1).unwrap();
        assert_eq!(
            i,
            ideal("n=5; x1^3, x2^2, x3^2, x4, x1*x5, x2*x5, x3*x5")
        );
        // x5 lies in q0 but not in q1, hence not in the intersection
        assert!(!i.contains(&Monomial::variable(5, 5)));
    }

    #[test]
    fn colon_by_monomial() {
        let i = ideal("n=2; x1^2*x2");
        assert_eq!(
            i.colon_monomial(&Monomial::variable(2, 1)),
            ideal("n=2; x1*x2")
        );
        let j = ideal("n=2; x2");
        assert!(j
            .colon_monomial(&Monomial::variable(2, 2))
            .is_unit());
    }

    #[test]
    fn colon_by_ideal() {
        let i = ideal("n=2; x1*x2, x2^2");
        let j = ideal("n=2; x2");
        assert_eq!(i.colon(&j).unwrap(), ideal("n=2; x1, x2"));
        // (I : S) = I
        assert_eq!(i.colon(&MonomialIdeal::unit(2)).unwrap(), i);
        // coprime supports leave the ideal unchanged
        let a = ideal("n=2; x1");
        assert_eq!(a.colon(&ideal("n=2; x2")).unwrap(), a);
        // colon by the zero ideal is undefined
        assert!(matches!(
            a.colon(&MonomialIdeal::zero(2)),
            Err(Error::ZeroIdeal)
        ));
    }

    #[test]
    fn saturation_reaches_fixpoints() {
        let x2 = ideal("n=2; x2");
        assert_eq!(
            ideal("n=2; x1^2, x1*x2").saturate(&x2).unwrap(),
            ideal("n=2; x1")
        );
        assert!(ideal("n=2; x1*x2, x2^2").saturate(&x2).unwrap().is_unit());
        // an x2-free ideal is already saturated
        let a = ideal("n=2; x1");
        assert_eq!(a.saturate(&x2).unwrap(), a);
    }

    #[test]
    fn irreducibility_detection() {
        assert!(ideal("n=2; x1^3, x2^2").is_irreducible());
        assert!(!ideal("n=2; x1*x2").is_irreducible());
        assert!(ideal("n=5; x1^3, x2^2, x3^2, x4, x5").is_irreducible());
        assert!(!MonomialIdeal::zero(2).is_irreducible());
        assert!(!MonomialIdeal::unit(2).is_irreducible());
        assert!(ideal("n=2; x1*x2").as_irreducible().is_err());
    }

    #[test]
    fn decomposition_of_edge_products() {
        let comps = ideal("n=2; x1*x2").irreducible_decomposition().unwrap();
        let ideals: Vec<MonomialIdeal> = comps.iter().map(|c| c.to_ideal()).collect();
        assert_eq!(ideals, vec![ideal("n=2; x1"), ideal("n=2; x2")]);
    }

    #[test]
    fn decomposition_roundtrip() {
        let i = ideal("n=2; x1^2, x1*x2");
        let comps = i.irreducible_decomposition().unwrap();
        assert_eq!(
            comps.iter().map(|c| c.to_ideal()).collect::<Vec<_>>(),
            vec![ideal("n=2; x1"), ideal("n=2; x1^2, x2")]
        );
        let back = comps
            .iter()
            .fold(MonomialIdeal::unit(2), |acc, c| {
                acc.intersect(&c.to_ideal()).unwrap()
            });
        assert_eq!(back, i);
    }

    #[test]
    fn decomposition_of_example_intersection() {
        let q0 = ideal("n=5; x1^3, x2^2, x3^2, x4, x5");
        let q1 = ideal("n=5; x1, x2, x3, x4");
        let i = q0.intersect(&q1).unwrap();
        let comps: Vec<MonomialIdeal> = i
            .irreducible_decomposition()
            .unwrap()
            .iter()
            .map(|c| c.to_ideal())
            .collect();
        assert_eq!(comps.len(), 2);
        assert!(comps.contains(&q0));
        assert!(comps.contains(&q1));
    }

    #[test]
    fn support_and_max_exponents() {
        let i = ideal("n=3; x1^3, x2^2");
        assert_eq!(
            i.support().unwrap().into_iter().collect::<Vec<_>>(),
            vec![1, 2]
        );
        assert_eq!(i.max_exponents().unwrap(), vec![3, 2, 0]);

        let unit = MonomialIdeal::unit(3);
        assert!(unit.support().unwrap().is_empty());
        assert_eq!(unit.max_exponents().unwrap(), vec![0, 0, 0]);

        assert!(MonomialIdeal::zero(3).support().is_err());

        let q0 = ideal("n=5; x1^3, x2^2, x3^2, x4, x5");
        let q1 = ideal("n=5; x1, x2, x3, x4");
        let i = q0.intersect(&q1).unwrap();
        assert_eq!(i.max_exponents().unwrap(), vec![3, 2, 2, 1, 1]);
    }

    #[test]
    fn validation_limits() {
        assert!(matches!(
            MonomialIdeal::new(17, vec![]),
            Err(Error::VarCountOutOfRange(17))
        ));
        assert!(matches!(
            MonomialIdeal::new(1, vec![Monomial::new(vec![257])]),
            Err(Error::ExponentTooLarge(257))
        ));
        assert!(matches!(
            MonomialIdeal::new(2, vec![Monomial::new(vec![1])]),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
