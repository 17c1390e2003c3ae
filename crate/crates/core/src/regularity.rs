//! Castelnuovo-Mumford regularity by three cross-checking routes.
//!
//! * via the sequential chain: reg(I) = max_i s(J_i^sat / J_i) + 1;
//! * per irreducible component: reg(x_{j1}^{a1},...,x_{jr}^{ar})
//!   = a_1 + ... + a_r - r + 1, maximised over the irredundant
//!   irreducible decomposition;
//! * the closed form for monotone families: reg(I_i)
//!   = a_{i1} + ... + a_{i n_i} - n_i + 1.
//!
//! Betti numbers never enter; the chain route reduces everything to
//! top-degree scans of the finite quotients J_i^sat / J_i.

use serde::Serialize;

use crate::borel::{sequential_chain, SequentialChain};
use crate::error::{Error, Result};
use crate::family::BorelFamily;
use crate::ideal::{IrreducibleIdeal, MonomialIdeal};

/// s(Jsat/J): the largest degree t carrying a monomial of Jsat \ J, or
/// `None` when the two ideals agree in every degree.
///
/// Scans degrees upward and stops at the first degree t at or beyond the
/// maximal generator degree where the degree-t components coincide; from
/// such a degree on both ideals are spanned by variable multiples of the
/// agreeing components, so they stay equal.
///
/// # Panics
///
/// When the scan passes the hard cap (sum of the componentwise maximal
/// exponents, plus one). That only happens when Jsat/J is not Artinian,
/// which violates the preconditions of this function; for sequential
/// chain levels it would be a bug.
pub fn s_value(j: &MonomialIdeal, j_sat: &MonomialIdeal) -> Result<Option<u32>> {
    if j.n() != j_sat.n() {
        return Err(Error::DimensionMismatch {
            expected: j.n(),
            got: j_sat.n(),
        });
    }
    if j.is_zero() {
        return if j_sat.is_zero() {
            Ok(None)
        } else {
            Err(Error::ZeroIdeal)
        };
    }
    if !j_sat.contains_ideal(j) {
        return Err(Error::NotASubideal);
    }
    if j == j_sat {
        return Ok(None);
    }

    let r = j.n();
    let all_gens = j.gens().iter().chain(j_sat.gens().iter());
    let mut bound = vec![0u32; r];
    let mut max_gen_degree = 0u32;
    for g in all_gens {
        max_gen_degree = max_gen_degree.max(g.degree());
        for (slot, &a) in bound.iter_mut().zip(g.exponents()) {
            *slot = (*slot).max(a);
        }
    }
    let cap: u32 = bound.iter().sum::<u32>() + 1;

    let mut top: Option<u32> = None;
    let mut scratch = vec![0u32; r];
    for t in 0..=cap {
        let mut witness = false;
        for_each_of_degree(&mut scratch, 0, t, &mut |exps| {
            if !witness && j_sat.contains_exponents(exps) && !j.contains_exponents(exps) {
                witness = true;
            }
        });
        if witness {
            assert!(
                t < cap,
                "degree scan exceeded the cap {cap}: the quotient is not Artinian"
            );
            top = Some(t);
        } else if t >= max_gen_degree {
            return Ok(top);
        }
    }
    unreachable!("scan always stops at or before the cap");
}

/// Visits every exponent vector extending `scratch[..pos]` whose remaining
/// coordinates sum to `left`.
fn for_each_of_degree(scratch: &mut [u32], pos: usize, left: u32, f: &mut impl FnMut(&[u32])) {
    if pos + 1 == scratch.len() {
        scratch[pos] = left;
        f(scratch);
        return;
    }
    for a in 0..=left {
        scratch[pos] = a;
        for_each_of_degree(scratch, pos + 1, left - a, f);
    }
}

/// reg(I) along an already-built sequential chain.
pub fn regularity_of_chain(chain: &SequentialChain) -> Result<u32> {
    let mut best = 0u32;
    for (level, l) in chain.levels().iter().enumerate() {
        match s_value(&l.restricted, &l.restricted_sat)? {
            Some(s) => best = best.max(s + 1),
            None => return Err(Error::EmptyChainQuotient { level }),
        }
    }
    Ok(best)
}

/// reg(I) via the sequential chain. Borel type input only.
pub fn regularity_via_chain(ideal: &MonomialIdeal) -> Result<u32> {
    regularity_of_chain(&sequential_chain(ideal)?)
}

/// reg of an irreducible ideal: a_1 + ... + a_r - r + 1.
pub fn regularity_irreducible(q: &IrreducibleIdeal) -> u32 {
    let sum: u32 = q.powers().values().sum();
    sum - q.num_powers() as u32 + 1
}

/// reg(I) as the maximum of the component regularities over the
/// irredundant irreducible decomposition. Stated for Borel type ideals
/// only; other inputs are rejected rather than extrapolated.
pub fn regularity_via_decomposition(ideal: &MonomialIdeal) -> Result<u32> {
    if let Some(j) = crate::borel::first_borel_violation(ideal)? {
        return Err(Error::NotBorelType { var: j });
    }
    let components = ideal.irreducible_decomposition()?;
    Ok(components
        .iter()
        .map(regularity_irreducible)
        .max()
        .expect("decomposition of a proper ideal is nonempty"))
}

/// The closed form reg(I_i) = a_{i1} + ... + a_{i n_i} - n_i + 1, valid
/// for monotone families.
pub fn regularity_family(family: &BorelFamily, level: usize) -> Result<u32> {
    if let Some((i, var)) = family.first_monotonicity_violation() {
        return Err(Error::NotMonotone {
            level: i,
            next: i + 1,
            var,
        });
    }
    let row = &family.levels()[level];
    let sum: u32 = row.exponents.iter().sum();
    Ok(sum - row.ni as u32 + 1)
}

/// Per-level line of the chain report.
#[derive(Clone, Debug, Serialize)]
pub struct ChainLevelReport {
    pub i: usize,
    pub ni: usize,
    /// I_i in the ambient ring.
    pub ideal: MonomialIdeal,
    /// J_i = G(I_i) read in n_i variables.
    pub restricted: MonomialIdeal,
    /// (J_i : (x1..x_{n_i})^inf).
    pub restricted_sat: MonomialIdeal,
    pub s_value: u32,
    pub depth_quotient: u32,
    pub depth_ideal: u32,
}

/// Chain report consumed by the `chain` and `reg` subcommands.
#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub n: usize,
    pub levels: Vec<ChainLevelReport>,
    pub regularity: u32,
}

pub fn chain_report(ideal: &MonomialIdeal) -> Result<ChainReport> {
    let chain = sequential_chain(ideal)?;
    let depths = chain.depth_formulas();
    let mut levels = Vec::with_capacity(chain.len());
    let mut regularity = 0u32;
    for (i, (l, &(dq, di))) in chain.levels().iter().zip(&depths).enumerate() {
        let s = s_value(&l.restricted, &l.restricted_sat)?
            .ok_or(Error::EmptyChainQuotient { level: i })?;
        regularity = regularity.max(s + 1);
        levels.push(ChainLevelReport {
            i,
            ni: l.ni,
            ideal: l.ideal.clone(),
            restricted: l.restricted.clone(),
            restricted_sat: l.restricted_sat.clone(),
            s_value: s,
            depth_quotient: dq,
            depth_ideal: di,
        });
    }
    Ok(ChainReport {
        n: ideal.n(),
        levels,
        regularity,
    })
}
