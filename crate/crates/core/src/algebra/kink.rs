//! The kink map of a rack and the associated quandle.
//!
//! For a rack `R` the *kink map* `i : R -> R` sends `a` to the unique
//! element with `i(a) * a = a`; uniqueness and existence follow from the
//! bijectivity of right translations. It measures the failure of
//! idempotency: `R` is a quandle iff `i` is the identity. The *associated
//! quandle* of `R` is the same underlying set with the deformed operation
//! `a *' b = i(a) * b`, which always satisfies the quandle axioms.

use super::{AlgebraError, RackTable};

/// The kink map as a permutation together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KinkMap {
    forward: Vec<usize>,
    inverse: Vec<usize>,
}

impl KinkMap {
    pub fn order(&self) -> usize {
        self.forward.len()
    }

    /// `i(a)`.
    pub fn apply(&self, a: usize) -> usize {
        self.forward[a]
    }

    /// `i^{-1}(a)`.
    pub fn apply_inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `i^m(a)` for any integer `m`, negative powers via the inverse.
    pub fn power(&self, a: usize, m: i64) -> usize {
        // Walk the cycle containing `a` and reduce the exponent modulo its
        // length, so arbitrarily large powers stay cheap.
        let mut cycle = vec![a];
        let mut x = self.forward[a];
        while x != a {
            cycle.push(x);
            x = self.forward[x];
        }
        let len = cycle.len() as i64;
        let offset = ((m % len) + len) % len;
        cycle[offset as usize]
    }

    /// The one-line notation of `i`: `forward()[a] = i(a)`.
    pub fn forward(&self) -> &[usize] {
        &self.forward
    }

    pub fn inverse(&self) -> &[usize] {
        &self.inverse
    }

    pub fn is_identity(&self) -> bool {
        self.forward.iter().enumerate().all(|(a, &fa)| a == fa)
    }
}

/// Verification of the kink map laws on a concrete rack.
///
/// Each field holds the smallest counterexample, or `None` when the law
/// holds. On an actual rack all of them hold; the report exists so that the
/// laws can be checked exhaustively rather than trusted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KinkReport {
    /// Pair `(a, b)` with `a != b` but `i(a) = i(b)` (bijectivity failure).
    pub k1_witness: Option<(usize, usize)>,
    /// Pair `(a, b)` with `i(a)*b != i(a*b)`.
    pub k2_witness: Option<(usize, usize)>,
    /// Pair `(a, b)` with `a*i(b) != a*b`.
    pub k3_witness: Option<(usize, usize)>,
    /// Element `a` with `i(a)*a != a` (defining equation failure).
    pub defining_witness: Option<usize>,
}

impl KinkReport {
    pub fn k1(&self) -> bool {
        self.k1_witness.is_none()
    }
    pub fn k2(&self) -> bool {
        self.k2_witness.is_none()
    }
    pub fn k3(&self) -> bool {
        self.k3_witness.is_none()
    }
    pub fn all_hold(&self) -> bool {
        self.k1() && self.k2() && self.k3() && self.defining_witness.is_none()
    }
}

impl RackTable {
    /// Computes the kink map. Requires Q2 (for existence and uniqueness of
    /// `i(a)`); a failure of bijectivity of the resulting map means the
    /// table is not a rack and is reported as such.
    pub fn kink_map(&self) -> Result<KinkMap, AlgebraError> {
        let n = self.order();
        let mut forward = Vec::with_capacity(n);
        for a in 0..n {
            let inv_col = self.inverse_column(a).ok_or_else(|| {
                self.not_a_rack(format!("right translation by {a} is not a bijection"))
            })?;
            // i(a) is the preimage of a under the right translation by a.
            forward.push(inv_col[a]);
        }
        let mut inverse = vec![usize::MAX; n];
        for (a, &fa) in forward.iter().enumerate() {
            if inverse[fa] != usize::MAX {
                // The kink map of a rack is always bijective, so a repeat
                // image means self-distributivity must fail somewhere.
                return self.require_rack().and(Err(AlgebraError::InternalInvariant(
                    "kink map not bijective on a rack".to_string(),
                )));
            }
            inverse[fa] = a;
        }
        Ok(KinkMap { forward, inverse })
    }

    /// Exhaustively verifies the kink map laws: bijectivity (K1),
    /// `i(a)*b = i(a*b)` (K2) and `a*i(b) = a*b` (K3). Requires a rack.
    pub fn verify_kink_properties(&self) -> Result<KinkReport, AlgebraError> {
        self.require_rack()?;
        let kink = self.kink_map()?;
        let n = self.order();
        let mut k1_witness = None;
        'k1: for a in 0..n {
            for b in (a + 1)..n {
                if kink.apply(a) == kink.apply(b) {
                    k1_witness = Some((a, b));
                    break 'k1;
                }
            }
        }
        let mut k2_witness = None;
        'k2: for a in 0..n {
            for b in 0..n {
                if self.op(kink.apply(a), b) != kink.apply(self.op(a, b)) {
                    k2_witness = Some((a, b));
                    break 'k2;
                }
            }
        }
        let mut k3_witness = None;
        'k3: for a in 0..n {
            for b in 0..n {
                if self.op(a, kink.apply(b)) != self.op(a, b) {
                    k3_witness = Some((a, b));
                    break 'k3;
                }
            }
        }
        let defining_witness = (0..n).find(|&a| self.op(kink.apply(a), a) != a);
        Ok(KinkReport {
            k1_witness,
            k2_witness,
            k3_witness,
            defining_witness,
        })
    }

    /// The associated quandle: same elements, operation `a *' b = i(a) * b`.
    /// Always a quandle when the input is a rack; equals the input exactly
    /// when the input is already a quandle.
    pub fn associated_quandle(&self) -> Result<RackTable, AlgebraError> {
        self.require_rack()?;
        let kink = self.kink_map()?;
        let n = self.order();
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| self.op(kink.apply(a), b)).collect())
            .collect();
        let quandle = RackTable::new(n, rows)?;
        if !quandle.is_quandle() {
            return Err(AlgebraError::InternalInvariant(
                "associated quandle construction failed the quandle axioms".to_string(),
            ));
        }
        Ok(match self.label() {
            Some(l) => quandle.with_label(format!("assoc({l})")),
            None => quandle,
        })
    }
}
