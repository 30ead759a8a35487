//! Binary tensor product `⊗` and quasi-tensor product `⊗̇` of two
//! seminormal quasi-crystals of the same type.
//!
//! Pair products are materialized eagerly as explicit tables: the carriers
//! involved are small and the resulting crystals feed the golden-graph
//! tests. Word-level structure never goes through this module — the free
//! monoids in [`crate::words`] evaluate the same formulas lazily.

use std::fmt;
use std::str::FromStr;

use crate::crystal::{EltId, QuasiCrystal};
use crate::error::{Error, Result};
use crate::extint::ExtInt;
use crate::rootsys::RootSystem;

/// Which product structure is in play.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum ProductMode {
    /// The tensor product `⊗` (plactic side).
    Tensor,
    /// The quasi-tensor product `⊗̇` (hypoplactic side).
    QuasiTensor,
}

impl ProductMode {
    pub fn symbol(self) -> &'static str {
        match self {
            ProductMode::Tensor => "⊗",
            ProductMode::QuasiTensor => "⊗̇",
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ProductMode::Tensor => "tensor",
            ProductMode::QuasiTensor => "qtensor",
        }
    }
}

impl fmt::Display for ProductMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProductMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tensor" => Ok(ProductMode::Tensor),
            "qtensor" => Ok(ProductMode::QuasiTensor),
            other => Err(Error::parse(format!(
                "unknown mode {other:?}, expected \"tensor\" or \"qtensor\""
            ))),
        }
    }
}

/// A materialized pair product together with the pairing layout.
///
/// Element `x ⊗ x'` lives at index `x * right_len + x'`.
pub struct PairProduct {
    pub crystal: QuasiCrystal,
    left_len: usize,
    right_len: usize,
}

impl PairProduct {
    pub fn pair(&self, left: EltId, right: EltId) -> EltId {
        debug_assert!(left.0 < self.left_len && right.0 < self.right_len);
        EltId(left.0 * self.right_len + right.0)
    }

    pub fn split(&self, x: EltId) -> (EltId, EltId) {
        (EltId(x.0 / self.right_len), EltId(x.0 % self.right_len))
    }
}

/// The tensor product of `left` and `right`.
pub fn tensor(left: &QuasiCrystal, right: &QuasiCrystal) -> Result<PairProduct> {
    product(ProductMode::Tensor, left, right)
}

/// The quasi-tensor product of `left` and `right`.
pub fn quasi_tensor(left: &QuasiCrystal, right: &QuasiCrystal) -> Result<PairProduct> {
    product(ProductMode::QuasiTensor, left, right)
}

/// The pair product in either mode. Both factors must carry the same root
/// system.
pub fn product(mode: ProductMode, left: &QuasiCrystal, right: &QuasiCrystal) -> Result<PairProduct> {
    if left.sys() != right.sys() {
        return Err(Error::TypeMismatch);
    }
    let sys: RootSystem = left.sys().clone();
    let nl = left.len();
    let nr = right.len();
    let size = nl * nr;
    let k = sys.index_set().len();

    let mut names = Vec::with_capacity(size);
    let mut weights = Vec::with_capacity(size);
    for x in left.elements() {
        for y in right.elements() {
            names.push(format!("{}{}{}", left.name(x), mode.symbol(), right.name(y)));
            weights.push(left.weight(x).add(right.weight(y)));
        }
    }

    let mut e_ops = vec![vec![None; size]; k];
    let mut f_ops = vec![vec![None; size]; k];
    let mut eps = vec![vec![ExtInt::ZERO; size]; k];
    let mut phi = vec![vec![ExtInt::ZERO; size]; k];

    for pos in 0..k {
        for x in left.elements() {
            for y in right.elements() {
                let id = x.0 * nr + y.0;
                let phi_x = left.phi_pos(pos, x);
                let eps_y = right.eps_pos(pos, y);

                if mode == ProductMode::QuasiTensor
                    && phi_x.is_positive()
                    && eps_y.is_positive()
                {
                    eps[pos][id] = ExtInt::PlusInf;
                    phi[pos][id] = ExtInt::PlusInf;
                    continue;
                }

                let eps_x = left.eps_pos(pos, x);
                let phi_y = right.phi_pos(pos, y);
                let pair_left = sys.pairing_at(pos, left.weight(x));
                let pair_right = sys.pairing_at(pos, right.weight(y));
                eps[pos][id] = eps_x.max(eps_y - pair_left);
                phi[pos][id] = (phi_x + pair_right).max(phi_y);

                // e goes left exactly when φ_i(x) ≥ ε_i(x'), f when strict
                e_ops[pos][id] = if phi_x >= eps_y {
                    left.e_pos(pos, x).map(|ex| ex.0 * nr + y.0)
                } else {
                    right.e_pos(pos, y).map(|ey| x.0 * nr + ey.0)
                };
                f_ops[pos][id] = if phi_x > eps_y {
                    left.f_pos(pos, x).map(|fx| fx.0 * nr + y.0)
                } else {
                    right.f_pos(pos, y).map(|fy| x.0 * nr + fy.0)
                };
            }
        }
    }

    let label = format!("{}{}{}", left.label(), mode.symbol(), right.label());
    let crystal = QuasiCrystal::from_parts(label, sys, names, weights, e_ops, f_ops, eps, phi)?;
    Ok(PairProduct {
        crystal,
        left_len: nl,
        right_len: nr,
    })
}

/// Left-associated `k`-fold product of `base` with itself. `k = 0` yields
/// the one-element trivial quasi-crystal of weight 0.
pub fn iterated_product(mode: ProductMode, base: &QuasiCrystal, k: usize) -> Result<QuasiCrystal> {
    if k == 0 {
        return Ok(QuasiCrystal::trivial(base.sys().clone()));
    }
    let mut acc = base.clone();
    for _ in 1..k {
        acc = product(mode, &acc, base)?.crystal;
    }
    Ok(acc)
}
