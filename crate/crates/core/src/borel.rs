//! Borel type detection and the sequential chain of a Borel type ideal.
//!
//! An ideal I is of Borel type when (I : x_j^inf) = (I : (x1..xj)^inf) for
//! every j. Such an ideal carries a ladder I = I_0 c I_1 c ... c I_m c S
//! obtained by saturating each level at its top variable; the ladder
//! encodes the associated primes P_i = (x1..x_{n_i}) and drives both the
//! regularity and the depth computations.

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;

/// Checks the Borel type condition on every variable index.
///
/// Returns an error on the zero and unit ideals, where the condition is
/// not meaningful.
pub fn is_borel_type(ideal: &MonomialIdeal) -> Result<bool> {
    Ok(first_borel_violation(ideal)?.is_none())
}

/// The smallest j where the Borel condition fails, if any. Used by the CLI
/// to explain a negative verdict per index.
pub fn first_borel_violation(ideal: &MonomialIdeal) -> Result<Option<usize>> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let n = ideal.n();
    for j in 1..=n {
        let by_variable = ideal.saturate(&MonomialIdeal::variable_ideal(n, j))?;
        let by_prime = ideal.saturate(&MonomialIdeal::prime(n, j))?;
        if by_variable != by_prime {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

/// One level of a sequential chain.
#[derive(Clone, Debug)]
pub struct ChainLevel {
    /// The ideal I_i in the ambient ring.
    pub ideal: MonomialIdeal,
    /// Largest variable index occurring in G(I_i).
    pub ni: usize,
    /// G(I_i) read inside K[x1..x_{n_i}].
    pub restricted: MonomialIdeal,
    /// The saturation (J_i : (x1..x_{n_i})^inf), again in n_i variables.
    pub restricted_sat: MonomialIdeal,
}

/// The sequential chain I = I_0 c I_1 c ... c I_m (the terminal S is left
/// implicit). Levels are strictly increasing and the n_i strictly decrease.
#[derive(Clone, Debug)]
pub struct SequentialChain {
    n: usize,
    levels: Vec<ChainLevel>,
}

impl SequentialChain {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn levels(&self) -> &[ChainLevel] {
        &self.levels
    }

    /// Number of levels, m + 1.
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// The strictly decreasing sequence n_0 > n_1 > ... > n_m.
    pub fn ni_sequence(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.ni).collect()
    }

    /// Associated primes of S/I, read off the chain: P_i = (x1..x_{n_i}).
    pub fn ass_primes(&self) -> Vec<MonomialIdeal> {
        self.levels
            .iter()
            .map(|l| MonomialIdeal::prime(self.n, l.ni))
            .collect()
    }

    /// Per level, the closed forms (depth S/I_i, depth I_i)
    /// = (n - n_i, n - n_i + 1).
    pub fn depth_formulas(&self) -> Vec<(u32, u32)> {
        self.levels
            .iter()
            .map(|l| {
                let d = (self.n - l.ni) as u32;
                (d, d + 1)
            })
            .collect()
    }
}

/// Builds the sequential chain of a Borel type ideal by iterated
/// saturation: n_i is the top variable of G(I_i) and
/// I_{i+1} = (I_i : x_{n_i}^inf), stopping when the saturation reaches S.
///
/// Rejects ideals that are not of Borel type.
pub fn sequential_chain(ideal: &MonomialIdeal) -> Result<SequentialChain> {
    if let Some(j) = first_borel_violation(ideal)? {
        return Err(Error::NotBorelType { var: j });
    }
    let n = ideal.n();
    let mut levels = Vec::new();
    let mut current = ideal.clone();
    let mut previous_ni: Option<usize> = None;
    while !current.is_unit() {
        let ni = current
            .gens()
            .iter()
            .filter_map(|g| g.max_var())
            .max()
            .expect("nonzero non-unit ideal has a top variable");
        if let Some(prev) = previous_ni {
            // Saturating at x_{prev} removes it from every minimal
            // generator, so the top variable must drop strictly.
            if ni >= prev {
                return Err(Error::NotBorelType { var: ni });
            }
        }
        previous_ni = Some(ni);

        let restricted = MonomialIdeal::new(
            ni,
            current.gens().iter().map(|g| g.truncate(ni)).collect(),
        )?;
        let restricted_sat = restricted.saturate(&MonomialIdeal::prime(ni, ni))?;
        let next = current.saturate(&MonomialIdeal::variable_ideal(n, ni))?;
        levels.push(ChainLevel {
            ideal: current,
            ni,
            restricted,
            restricted_sat,
        });
        current = next;
    }
    Ok(SequentialChain { n, levels })
}

/// Associated primes of S/I for a Borel type ideal.
pub fn ass_primes(ideal: &MonomialIdeal) -> Result<Vec<MonomialIdeal>> {
    Ok(sequential_chain(ideal)?.ass_primes())
}
