//! Window compositions `Φ_{L,i} = F_{i+L-1} ∘ ... ∘ F_{i+1} ∘ F_i`.
//!
//! Compositions are evaluated lazily by folding; no symbolic composed
//! expression is ever built. A composition of triangular maps is again
//! triangular, which is what the fixed-point cascade downstream relies on.

use crate::error::CoreError;
use crate::point::Point;
use crate::system::TriangularSystem;

/// Anything that acts as a triangular self-map: coordinate j of the output
/// depends only on coordinates 1..j of the input.
pub trait TriangularOperator {
    fn dimension(&self) -> usize;

    fn evaluate(&self, x: &Point) -> Result<Point, CoreError>;
}

impl TriangularOperator for crate::map::TriangularMap {
    fn dimension(&self) -> usize {
        TriangularMap::dimension(self)
    }

    fn evaluate(&self, x: &Point) -> Result<Point, CoreError> {
        TriangularMap::evaluate(self, x)
    }
}

use crate::map::TriangularMap;

/// The composition of `length` consecutive system maps starting at `phase`.
/// `compose(system, i, p)` is the paper's return map `Φ_{p,i}`; phase 0 is
/// the distinguished `Φ_p`.
#[derive(Clone, Copy, Debug)]
pub struct CompositionOperator<'a> {
    system: &'a TriangularSystem,
    phase: usize,
    length: usize,
}

impl<'a> CompositionOperator<'a> {
    pub fn new(
        system: &'a TriangularSystem,
        phase: usize,
        length: usize,
    ) -> Result<Self, CoreError> {
        if phase >= system.period() {
            return Err(CoreError::InvalidPhase {
                phase,
                period: system.period(),
            });
        }
        if length == 0 {
            return Err(CoreError::EmptyWindow);
        }
        Ok(CompositionOperator {
            system,
            phase,
            length,
        })
    }

    pub fn system(&self) -> &'a TriangularSystem {
        self.system
    }

    pub fn phase(&self) -> usize {
        self.phase
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// The map applied at window step `t` (0-based), i.e. `F_{phase+t}`.
    pub fn map_at(&self, t: usize) -> &'a TriangularMap {
        self.system.map(self.phase + t)
    }

    /// The partial orbit `x, F_i(x), ..., Φ_{L,i}(x)` (length L+1).
    pub fn trajectory(&self, x: &Point) -> Result<Vec<Point>, CoreError> {
        let mut states = Vec::with_capacity(self.length + 1);
        states.push(x.clone());
        for t in 0..self.length {
            let next = self.map_at(t).evaluate(states.last().expect("nonempty"))?;
            states.push(next);
        }
        Ok(states)
    }
}

impl TriangularOperator for CompositionOperator<'_> {
    fn dimension(&self) -> usize {
        self.system.dimension()
    }

    fn evaluate(&self, x: &Point) -> Result<Point, CoreError> {
        let mut cur = x.clone();
        for t in 0..self.length {
            cur = self.map_at(t).evaluate(&cur)?;
        }
        Ok(cur)
    }
}

/// `inner` applied `times` times: the literal iterate `op ∘ op ∘ ...`,
/// which differs from a longer window unless the window length is a
/// multiple of the system period.
#[derive(Clone, Copy, Debug)]
pub struct Iterated<'a, T: TriangularOperator> {
    inner: &'a T,
    times: usize,
}

impl<'a, T: TriangularOperator> Iterated<'a, T> {
    pub fn new(inner: &'a T, times: usize) -> Self {
        assert!(times >= 1);
        Iterated { inner, times }
    }
}

impl<T: TriangularOperator> TriangularOperator for Iterated<'_, T> {
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    fn evaluate(&self, x: &Point) -> Result<Point, CoreError> {
        let mut cur = x.clone();
        for _ in 0..self.times {
            cur = self.inner.evaluate(&cur)?;
        }
        Ok(cur)
    }
}

/// Convenience free function mirroring the library vocabulary.
pub fn compose<'a>(
    system: &'a TriangularSystem,
    phase: usize,
    length: usize,
) -> Result<CompositionOperator<'a>, CoreError> {
    CompositionOperator::new(system, phase, length)
}
