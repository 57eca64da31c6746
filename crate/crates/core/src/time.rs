//! Fixed-point time values.
//!
//! Every temporal quantity in the engine is a whole number of abstract
//! ticks. The tick size (how much wall time one tick represents) is a
//! labelling parameter carried by the graph; no arithmetic depends on it.
//! Keeping time integral makes every search result exactly reproducible
//! and keeps state expansions finite.

use std::fmt;

/// A point in time, as a tick count since the engine epoch.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TimePoint(u64);

/// A non-negative span of time in ticks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DurationTicks(u64);

impl TimePoint {
    pub const ZERO: TimePoint = TimePoint(0);
    pub const MAX: TimePoint = TimePoint(u64::MAX);

    pub const fn new(ticks: u64) -> Self {
        TimePoint(ticks)
    }

    pub const fn ticks(self) -> u64 {
        self.0
    }

    /// Adds a duration, reporting overflow instead of wrapping. Callers in
    /// engine paths surface a `None` as [`crate::EngineError::TimeOverflow`].
    pub fn checked_add(self, d: DurationTicks) -> Option<TimePoint> {
        self.0.checked_add(d.0).map(TimePoint)
    }

    /// Saturating addition, used only for horizon bookkeeping where the cap
    /// itself may sit at the end of the representable range.
    pub fn saturating_add(self, d: DurationTicks) -> TimePoint {
        TimePoint(self.0.saturating_add(d.0))
    }
}

impl DurationTicks {
    pub const ZERO: DurationTicks = DurationTicks(0);

    pub const fn new(ticks: u64) -> Self {
        DurationTicks(ticks)
    }

    pub const fn ticks(self) -> u64 {
        self.0
    }
}

impl fmt::Display for TimePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for DurationTicks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checked_add_reports_overflow() {
        let t = TimePoint::new(u64::MAX - 1);
        assert_eq!(t.checked_add(DurationTicks::new(1)), Some(TimePoint::MAX));
        assert_eq!(t.checked_add(DurationTicks::new(2)), None);
    }

    #[test]
    fn ordering_is_by_tick() {
        assert!(TimePoint::new(3) < TimePoint::new(4));
        assert!(DurationTicks::new(0) < DurationTicks::new(1));
    }
}
