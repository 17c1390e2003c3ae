//! Monomials as exponent vectors.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

/// Largest ambient variable count the engine accepts.
pub const MAX_VARS: usize = 16;
/// Largest single exponent the engine accepts in input data.
pub const MAX_EXPONENT: u32 = 256;

/// A monomial in a fixed polynomial ring, stored as its exponent vector.
///
/// Variables are 1-indexed: `exponent(1)` is the power of the first variable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    /// Builds a monomial from its exponent vector. The vector length fixes
    /// the ambient variable count and must be at least 1.
    pub fn new(exponents: Vec<u32>) -> Self {
        assert!(!exponents.is_empty(), "monomial needs at least one variable");
        Monomial { exponents }
    }

    /// The constant monomial 1 in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial::new(vec![0; n])
    }

    /// The variable x_j (1-indexed) in `n` variables.
    pub fn variable(n: usize, j: usize) -> Self {
        Self::pure_power(n, j, 1)
    }

    /// The pure power x_j^a (1-indexed) in `n` variables.
    pub fn pure_power(n: usize, j: usize, a: u32) -> Self {
        assert!(j >= 1 && j <= n, "variable index out of range");
        let mut exps = vec![0; n];
        exps[j - 1] = a;
        Monomial::new(exps)
    }

    pub fn vars(&self) -> usize {
        self.exponents.len()
    }

    /// Exponent of x_j, 1-indexed.
    pub fn exponent(&self, j: usize) -> u32 {
        self.exponents[j - 1]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&a| a == 0)
    }

    /// True iff `self` divides `other` (componentwise `<=`).
    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.vars(), other.vars());
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.vars(), other.vars());
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.vars(), other.vars());
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.vars(), other.vars());
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// self / gcd(self, u): the generator image under the colon (I : u).
    pub fn colon_by(&self, u: &Monomial) -> Monomial {
        debug_assert_eq!(self.vars(), u.vars());
        Monomial::new(
            self.exponents
                .iter()
                .zip(&u.exponents)
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        )
    }

    /// Largest 1-indexed variable with a positive exponent, `None` for 1.
    pub fn max_var(&self) -> Option<usize> {
        self.exponents.iter().rposition(|&a| a > 0).map(|i| i + 1)
    }

    /// Reads the monomial inside the subring on the first `r` variables.
    /// Requires every variable beyond `r` to be absent.
    pub fn truncate(&self, r: usize) -> Monomial {
        assert!(r >= 1 && r <= self.vars());
        assert!(
            self.exponents[r..].iter().all(|&a| a == 0),
            "monomial involves variables beyond x{r}"
        );
        Monomial::new(self.exponents[..r].to_vec())
    }

    /// Re-reads the monomial in a larger ring of `n` variables.
    pub fn extend(&self, n: usize) -> Monomial {
        assert!(n >= self.vars());
        let mut exps = self.exponents.clone();
        exps.resize(n, 0);
        Monomial::new(exps)
    }
}

/// Canonical order: total degree first, ties by exponent vectors in
/// descending lexicographic order, so that x1 sorts before x2 and the
/// prime (x1, ..., xk) lists its variables in index order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exponents.cmp(&self.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &a) in self.exponents.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if a == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, a)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serializes as the bare exponent vector, matching the ideal wire format.
impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.exponents.serialize(serializer)
    }
}
