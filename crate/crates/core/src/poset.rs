//! The characteristic poset of a monomial ideal.
//!
//! For a bound vector g at least the componentwise maximal generator
//! exponent, the box of exponent vectors a <= g splits into the points
//! with x^a in I (ideal mode, upward closed in the box) and those with
//! x^a outside I (quotient mode, downward closed). Interval partitions
//! of either point set correspond to Stanley decompositions of I or S/I,
//! and the invariant of an interval [c, d] is rho(d) = #{j : d_j = g_j}.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;

/// Default cap on the number of box points.
pub const DEFAULT_BOX_CAP: usize = 1_000_000;

/// Which side of the box a poset describes.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PosetMode {
    /// Points a <= g with x^a in I.
    Ideal,
    /// Points a <= g with x^a not in I.
    Quotient,
}

/// rho(d) = #{j : d_j = g_j}, the number of free directions of the
/// Stanley space attached to an interval topped at d.
pub fn rho(d: &[u32], g: &[u32]) -> u32 {
    debug_assert_eq!(d.len(), g.len());
    d.iter().zip(g).filter(|(a, b)| a == b).count() as u32
}

/// The finite point set the sdepth search runs on.
#[derive(Clone, Debug)]
pub struct CharacteristicPoset {
    n: usize,
    mode: PosetMode,
    g: Vec<u32>,
    /// Mixed-radix weights: rank(a) = sum a_j * weight_j, last coordinate
    /// fastest. The rank order is a linear extension of the componentwise
    /// order.
    weights: Vec<usize>,
    box_size: usize,
    points: BitSet,
    point_count: usize,
    rho_by_rank: Vec<u8>,
}

impl CharacteristicPoset {
    /// Enumerates and classifies the box. `g` defaults to the
    /// componentwise maximal generator exponent.
    ///
    /// Ideal mode rejects the zero ideal, quotient mode the unit ideal;
    /// both would have empty point sets.
    pub fn build(
        ideal: &MonomialIdeal,
        mode: PosetMode,
        g: Option<&[u32]>,
        box_cap: usize,
    ) -> Result<Self> {
        match mode {
            PosetMode::Ideal => {
                if ideal.is_zero() {
                    return Err(Error::ZeroIdeal);
                }
            }
            PosetMode::Quotient => {
                if ideal.is_unit() {
                    return Err(Error::UnitIdeal);
                }
            }
        }
        let n = ideal.n();
        let min_g = if ideal.is_zero() {
            vec![0u32; n]
        } else {
            ideal.max_exponents()?
        };
        let g: Vec<u32> = match g {
            None => min_g,
            Some(g) => {
                if g.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        got: g.len(),
                    });
                }
                if let Some(var) = (0..n).find(|&j| g[j] < min_g[j]) {
                    return Err(Error::BoundTooSmall { var: var + 1 });
                }
                g.to_vec()
            }
        };

        let mut box_size = 1usize;
        for &gj in &g {
            box_size = box_size
                .checked_mul(gj as usize + 1)
                .filter(|&s| s <= box_cap)
                .ok_or(Error::BoxCapExceeded {
                    size: usize::MAX,
                    cap: box_cap,
                })?;
        }
        if box_size > box_cap {
            return Err(Error::BoxCapExceeded {
                size: box_size,
                cap: box_cap,
            });
        }

        let mut weights = vec![1usize; n];
        for j in (0..n.saturating_sub(1)).rev() {
            weights[j] = weights[j + 1] * (g[j + 1] as usize + 1);
        }

        // With the last coordinate fastest, stepping the odometer visits
        // ranks 0, 1, 2, ... in order.
        let mut points = BitSet::new(box_size);
        let mut rho_by_rank = vec![0u8; box_size];
        let mut exps = vec![0u32; n];
        let mut point_count = 0usize;
        for rank in 0..box_size {
            let member = ideal.contains_exponents(&exps);
            let is_point = match mode {
                PosetMode::Ideal => member,
                PosetMode::Quotient => !member,
            };
            if is_point {
                points.set(rank);
                point_count += 1;
            }
            rho_by_rank[rank] = rho(&exps, &g) as u8;
            // advance the odometer
            for j in (0..n).rev() {
                if exps[j] < g[j] {
                    exps[j] += 1;
                    break;
                }
                exps[j] = 0;
            }
        }

        Ok(CharacteristicPoset {
            n,
            mode,
            g,
            weights,
            box_size,
            points,
            point_count,
            rho_by_rank,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> PosetMode {
        self.mode
    }

    pub fn g(&self) -> &[u32] {
        &self.g
    }

    pub fn box_size(&self) -> usize {
        self.box_size
    }

    pub fn point_count(&self) -> usize {
        self.point_count
    }

    pub fn rank(&self, exps: &[u32]) -> usize {
        debug_assert_eq!(exps.len(), self.n);
        exps.iter()
            .zip(&self.weights)
            .map(|(&a, &w)| a as usize * w)
            .sum()
    }

    pub fn unrank(&self, mut rank: usize) -> Vec<u32> {
        let mut exps = vec![0u32; self.n];
        for j in 0..self.n {
            exps[j] = (rank / self.weights[j]) as u32;
            rank %= self.weights[j];
        }
        exps
    }

    pub fn contains_rank(&self, rank: usize) -> bool {
        self.points.get(rank)
    }

    pub fn rho_of_rank(&self, rank: usize) -> u32 {
        self.rho_by_rank[rank] as u32
    }

    pub(crate) fn points(&self) -> &BitSet {
        &self.points
    }

    pub(crate) fn weights(&self) -> &[usize] {
        &self.weights
    }

    /// Visits the ranks of the sub-box [lo, hi] (inclusive). The visitor
    /// returns false to abort; the function reports whether the walk ran
    /// to completion.
    pub(crate) fn for_each_rank_in_box(
        &self,
        lo: &[u32],
        hi: &[u32],
        mut f: impl FnMut(usize) -> bool,
    ) -> bool {
        debug_assert!(lo.iter().zip(hi).all(|(a, b)| a <= b));
        let n = self.n;
        let mut cur = lo.to_vec();
        let mut rank = self.rank(lo);
        loop {
            if !f(rank) {
                return false;
            }
            let mut j = n;
            loop {
                if j == 0 {
                    return true;
                }
                j -= 1;
                if cur[j] < hi[j] {
                    cur[j] += 1;
                    rank += self.weights[j];
                    break;
                }
                rank -= (cur[j] - lo[j]) as usize * self.weights[j];
                cur[j] = lo[j];
            }
        }
    }
}
