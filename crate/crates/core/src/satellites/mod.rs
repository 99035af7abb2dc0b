//! Satellite knot groups `G(k) = A_{v0} *_C G(k_1)` with `C = ⟨m_e, l_e⟩ ≅ Z²`,
//! the tame (Whitehead double) and benign (braid satellite) folding descents,
//! and their certificates.

mod certify;
mod fold;
mod path;
mod sides;
mod torus;

pub use certify::{PeripheralRow, PeripheralVerdict, PropernessCertificate, TameMeridian, TamenessCertificate, TamenessOf};
pub use fold::{ComplexityTame, FoldOutcome, GraphOf, OutcomeOf, PathOf, SatEGroup, SatEdge, SatGraph, SatStep, Verdict};
pub use path::SatPath;
pub use sides::{BraidSide, FiberSub, GoodSub, PatternSide, Pipeline, WhiteheadSide};
pub use torus::{CompanionOracle, TorusOracle};

use alloc::format;

use crate::error::{Error, Result};

/// Pattern of a satellite, for bridge numbers.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PatternKind {
    Whitehead,
    /// Braid or cable pattern on `n` strands.
    Braid { n: u32 },
}

/// `b(k) = 2 b(k_1)` for a Whitehead double, `n b(k_1)` for a braid satellite.
pub fn bridge_number(pattern: PatternKind, b1: usize) -> Result<usize> {
    if b1 < 2 {
        return Err(Error::precondition(format!("companion bridge number {b1} < 2: the companion must be nontrivial")));
    }
    Ok(match pattern {
        PatternKind::Whitehead => 2 * b1,
        PatternKind::Braid { n } => n as usize * b1,
    })
}

/// The satellite graph of groups: pattern vertex `v0`, companion vertex `v1`,
/// one edge with `α: m_e ↦ m_V, l_e ↦ l_V` and `ω: m_e ↦ m_1, l_e ↦ λ_1`.
#[derive(Clone, Debug)]
pub struct Satellite<P, Q> {
    pub pattern: P,
    pub companion: Q,
}

impl<P: PatternSide, Q: CompanionOracle> Satellite<P, Q> {
    pub fn new(pattern: P, companion: Q) -> Result<Satellite<P, Q>> {
        if companion.bridge_number() < 2 {
            return Err(Error::precondition("trivial companion"));
        }
        Ok(Satellite { pattern, companion })
    }

    pub fn bridge_number(&self) -> usize {
        self.pattern.bridge_factor() * self.companion.bridge_number()
    }
}

#[cfg(test)]
mod tests;
