//! Coordinate slot bookkeeping.
//!
//! Phase-space vectors are flat `f64` slices; a layout records which slot
//! holds which coordinate. Spatial layouts order coordinates as
//! [pos_1..pos_n, mom_1..mom_n]; extended layouts prepend time and insert the
//! energy coordinate ahead of the momenta: [t, pos.., H, mom..].

use serde::Serialize;

/// Which linear frame the coordinates live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Frame {
    /// Deformed coordinates (q, k) with nonvanishing q-q and k-k brackets.
    Deformed,
    /// Canonical coordinates (x, p) with only the x-p bracket nonzero.
    Canonical,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LayoutError {
    #[error("spatial dimension must be 2 or 3, got {0}")]
    InvalidDimension(usize),
}

/// A fixed assignment of coordinates to vector slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoordinateLayout {
    n: usize,
    extended: bool,
    frame: Frame,
}

impl CoordinateLayout {
    /// [pos_1..pos_n, mom_1..mom_n].
    pub fn spatial(n: usize, frame: Frame) -> Result<Self, LayoutError> {
        if n != 2 && n != 3 {
            return Err(LayoutError::InvalidDimension(n));
        }
        Ok(Self { n, extended: false, frame })
    }

    /// [t, pos_1..pos_n, H, mom_1..mom_n].
    pub fn extended(n: usize, frame: Frame) -> Result<Self, LayoutError> {
        Ok(Self { extended: true, ..Self::spatial(n, frame)? })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_extended(&self) -> bool {
        self.extended
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    /// Total number of slots: 2n, or 2n+2 when extended.
    pub fn dim(&self) -> usize {
        if self.extended { 2 * self.n + 2 } else { 2 * self.n }
    }

    /// Slot of the i-th position coordinate (0-based i < n).
    pub fn position_slot(&self, i: usize) -> usize {
        debug_assert!(i < self.n);
        if self.extended { 1 + i } else { i }
    }

    /// Slot of the i-th momentum coordinate (0-based i < n).
    pub fn momentum_slot(&self, i: usize) -> usize {
        debug_assert!(i < self.n);
        if self.extended { self.n + 2 + i } else { self.n + i }
    }

    pub fn time_slot(&self) -> Option<usize> {
        self.extended.then_some(0)
    }

    /// Slot of the energy coordinate conjugate to time.
    pub fn energy_slot(&self) -> Option<usize> {
        self.extended.then_some(self.n + 1)
    }

    /// The same slot assignment relabeled to another frame.
    pub fn with_frame(&self, frame: Frame) -> Self {
        Self { frame, ..*self }
    }

    /// The extended layout over the same spatial coordinates.
    pub fn to_extended(&self) -> Self {
        Self { extended: true, ..*self }
    }

    /// Coordinate names in slot order, e.g. ["q1", "q2", "k1", "k2"] or
    /// ["t", "x1", "x2", "x3", "H", "p1", "p2", "p3"].
    pub fn names(&self) -> Vec<String> {
        let (pos, mom) = match self.frame {
            Frame::Deformed => ("q", "k"),
            Frame::Canonical => ("x", "p"),
        };
        let mut out = Vec::with_capacity(self.dim());
        if self.extended {
            out.push("t".to_string());
        }
        for i in 1..=self.n {
            out.push(format!("{pos}{i}"));
        }
        if self.extended {
            out.push("H".to_string());
        }
        for i in 1..=self.n {
            out.push(format!("{mom}{i}"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unsupported_dimension() {
        assert_eq!(
            CoordinateLayout::spatial(4, Frame::Deformed),
            Err(LayoutError::InvalidDimension(4))
        );
        assert_eq!(
            CoordinateLayout::extended(1, Frame::Canonical),
            Err(LayoutError::InvalidDimension(1))
        );
    }

    #[test]
    fn spatial_slots() {
        let l = CoordinateLayout::spatial(2, Frame::Deformed).unwrap();
        assert_eq!(l.dim(), 4);
        assert_eq!(l.position_slot(0), 0);
        assert_eq!(l.momentum_slot(1), 3);
        assert_eq!(l.time_slot(), None);
        assert_eq!(l.names(), ["q1", "q2", "k1", "k2"]);
    }

    #[test]
    fn extended_slots() {
        let l = CoordinateLayout::extended(3, Frame::Canonical).unwrap();
        assert_eq!(l.dim(), 8);
        assert_eq!(l.time_slot(), Some(0));
        assert_eq!(l.position_slot(0), 1);
        assert_eq!(l.energy_slot(), Some(4));
        assert_eq!(l.momentum_slot(2), 7);
        assert_eq!(l.names(), ["t", "x1", "x2", "x3", "H", "p1", "p2", "p3"]);
        // Every coordinate appears exactly once.
        let mut names = l.names();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), l.dim());
    }

    #[test]
    fn extension_preserves_spatial_indices_order() {
        let s = CoordinateLayout::spatial(2, Frame::Deformed).unwrap();
        let e = s.to_extended();
        for i in 0..2 {
            assert_eq!(e.position_slot(i), s.position_slot(i) + 1);
            assert_eq!(e.momentum_slot(i), s.momentum_slot(i) + 2);
        }
    }
}
