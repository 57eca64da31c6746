//! Per-edge travel-time functions and the FIFO property.
//!
//! A travel-time function gives the cost of traversing an edge as a function
//! of the departure time. Three shapes are supported: constant,
//! piecewise-constant over breakpoints, and piecewise-linear between samples.
//! Beyond the last breakpoint every function is constant, so evaluation is
//! total over all of time.
//!
//! The FIFO property (`t1 < t2` implies `t1 + c(t1) < t2 + c(t2)`) is what
//! makes the plain time-dependent Dijkstra in [`crate::td`] exact. It is
//! decided here by segment analysis on the exact (unrounded) function:
//! within a linear piece the arrival `t + c(t)` is strictly increasing iff
//! the slope of `c` exceeds -1, and across a piecewise-constant breakpoint
//! the arrival must not fall from one tick to the next. No scanning is
//! involved; the verdict is exact for these representations.

use crate::time::{DurationTicks, TimePoint};

/// Travel time as a function of departure time.
///
/// Invariants (enforced by [`crate::Graph::validate`]):
/// breakpoint/sample times strictly increasing, piecewise-constant profiles
/// start at tick 0, profiles are non-empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TravelTimeFunction {
    /// The same duration at every departure time.
    Constant(DurationTicks),
    /// Constant pieces; entry `(start, value)` applies from `start` until the
    /// next breakpoint, the last value applying forever.
    PiecewiseConstant(Vec<(TimePoint, DurationTicks)>),
    /// Linear interpolation between samples, constant beyond the ends.
    /// Interior evaluations round to the nearest tick, ties away from zero.
    PiecewiseLinear(Vec<(TimePoint, DurationTicks)>),
}

/// Two departures proving a FIFO violation: `t1 < t2` but the first
/// departure arrives no earlier (`a1 >= a2`), arrivals in rounded ticks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FifoWitness {
    pub t1: TimePoint,
    pub t2: TimePoint,
    pub a1: TimePoint,
    pub a2: TimePoint,
}

/// Outcome of a FIFO check. The witness is present exactly when the
/// function is not FIFO.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FifoReport {
    pub witness: Option<FifoWitness>,
}

impl FifoReport {
    pub fn is_fifo(&self) -> bool {
        self.witness.is_none()
    }
}

impl TravelTimeFunction {
    /// Travel time when departing at `t`. Total over all `t`: before the
    /// first breakpoint the first value applies, after the last the last
    /// value holds forever. Piecewise-linear interior points round to the
    /// nearest tick, ties away from zero.
    pub fn evaluate(&self, t: TimePoint) -> DurationTicks {
        match self {
            TravelTimeFunction::Constant(v) => *v,
            TravelTimeFunction::PiecewiseConstant(pieces) => {
                if pieces.is_empty() {
                    return DurationTicks::ZERO;
                }
                let mut value = pieces[0].1;
                for &(start, v) in pieces {
                    if start <= t {
                        value = v;
                    } else {
                        break;
                    }
                }
                value
            }
            TravelTimeFunction::PiecewiseLinear(samples) => {
                if samples.is_empty() {
                    return DurationTicks::ZERO;
                }
                let first = samples[0];
                let last = samples[samples.len() - 1];
                if t <= first.0 {
                    return first.1;
                }
                if t >= last.0 {
                    return last.1;
                }
                let seg = samples.windows(2).find(|w| w[0].0 <= t && t <= w[1].0);
                let [(t0, v0), (t1, v1)] = match seg {
                    Some(&[a, b]) => [a, b],
                    _ => return last.1,
                };
                interpolate(t0.ticks(), v0.ticks(), t1.ticks(), v1.ticks(), t.ticks())
            }
        }
    }

    /// Minimum travel time over all departures. For every shape the exact
    /// minimum sits on a stored breakpoint/sample, so this is an integer min.
    pub fn min_travel_time(&self) -> DurationTicks {
        match self {
            TravelTimeFunction::Constant(v) => *v,
            TravelTimeFunction::PiecewiseConstant(pieces)
            | TravelTimeFunction::PiecewiseLinear(pieces) => pieces
                .iter()
                .map(|&(_, v)| v)
                .min()
                .unwrap_or(DurationTicks::ZERO),
        }
    }

    /// Maximum stored travel time, used for horizon defaults.
    pub fn max_travel_time(&self) -> DurationTicks {
        match self {
            TravelTimeFunction::Constant(v) => *v,
            TravelTimeFunction::PiecewiseConstant(pieces)
            | TravelTimeFunction::PiecewiseLinear(pieces) => pieces
                .iter()
                .map(|&(_, v)| v)
                .max()
                .unwrap_or(DurationTicks::ZERO),
        }
    }

    /// First time from which the function is constant forever.
    pub fn steady_from(&self) -> TimePoint {
        match self {
            TravelTimeFunction::Constant(_) => TimePoint::ZERO,
            TravelTimeFunction::PiecewiseConstant(pieces)
            | TravelTimeFunction::PiecewiseLinear(pieces) => {
                pieces.last().map_or(TimePoint::ZERO, |&(t, _)| t)
            }
        }
    }

    /// Decides the FIFO property by segment analysis.
    ///
    /// Piecewise-linear: the exact arrival `t + c(t)` is linear per segment
    /// and continuous, so it is strictly increasing iff the arrivals at the
    /// samples are, i.e. `t_i + v_i` is strictly increasing (this is the
    /// slope > -1 condition in integer form). Piecewise-constant: within a
    /// piece the arrival always increases; across a breakpoint at `t_b` the
    /// condition `(t_b - 1) + v_prev < t_b + v_next` reduces to
    /// `v_next >= v_prev`, so any drop in value is a violation.
    pub fn check_fifo(&self) -> FifoReport {
        match self {
            TravelTimeFunction::Constant(_) => FifoReport { witness: None },
            TravelTimeFunction::PiecewiseConstant(pieces) => {
                for w in pieces.windows(2) {
                    let (_, v_prev) = w[0];
                    let (t_b, v_next) = w[1];
                    if v_next < v_prev {
                        let t1 = TimePoint::new(t_b.ticks().saturating_sub(1));
                        return FifoReport {
                            witness: Some(self.witness_at(t1, t_b)),
                        };
                    }
                }
                FifoReport { witness: None }
            }
            TravelTimeFunction::PiecewiseLinear(samples) => {
                for w in samples.windows(2) {
                    let (t_a, v_a) = w[0];
                    let (t_b, v_b) = w[1];
                    let arr_a = t_a.ticks() as u128 + v_a.ticks() as u128;
                    let arr_b = t_b.ticks() as u128 + v_b.ticks() as u128;
                    if arr_b <= arr_a {
                        // Slope <= -1 on this segment: consecutive ticks at
                        // its start already witness the violation.
                        let t1 = t_a;
                        let t2 = TimePoint::new(t_a.ticks() + 1);
                        return FifoReport {
                            witness: Some(self.witness_at(t1, t2)),
                        };
                    }
                }
                FifoReport { witness: None }
            }
        }
    }

    fn witness_at(&self, t1: TimePoint, t2: TimePoint) -> FifoWitness {
        FifoWitness {
            t1,
            t2,
            a1: t1.saturating_add(self.evaluate(t1)),
            a2: t2.saturating_add(self.evaluate(t2)),
        }
    }
}

/// `v0 + (t - t0) * (v1 - v0) / (t1 - t0)` rounded to the nearest integer,
/// ties away from zero. The interpolated value is non-negative because both
/// endpoints are.
fn interpolate(t0: u64, v0: u64, t1: u64, v1: u64, t: u64) -> DurationTicks {
    debug_assert!(t0 < t1 && t0 <= t && t <= t1);
    let den = (t1 - t0) as i128;
    let num = v0 as i128 * den + (t - t0) as i128 * (v1 as i128 - v0 as i128);
    debug_assert!(num >= 0);
    let rounded = (2 * num + den) / (2 * den);
    DurationTicks::new(rounded as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1_vf() -> TravelTimeFunction {
        TravelTimeFunction::PiecewiseConstant(vec![
            (TimePoint::new(0), DurationTicks::new(10)),
            (TimePoint::new(2), DurationTicks::new(1)),
        ])
    }

    #[test]
    fn evaluate_piecewise_constant_counterexample_edge() {
        let f = fig1_vf();
        assert_eq!(f.evaluate(TimePoint::new(1)), DurationTicks::new(10));
        assert_eq!(f.evaluate(TimePoint::new(2)), DurationTicks::new(1));
        assert_eq!(f.evaluate(TimePoint::new(0)), DurationTicks::new(10));
        // Constant extrapolation past the last breakpoint.
        assert_eq!(f.evaluate(TimePoint::new(1000)), DurationTicks::new(1));
    }

    #[test]
    fn evaluate_constant() {
        let f = TravelTimeFunction::Constant(DurationTicks::new(7));
        for t in [0u64, 1, 5, 1_000_000] {
            assert_eq!(f.evaluate(TimePoint::new(t)), DurationTicks::new(7));
        }
    }

    #[test]
    fn evaluate_piecewise_linear_rounds_ties_away_from_zero() {
        // (0,10) .. (20,0): value at t is 10 - t/2.
        let f = TravelTimeFunction::PiecewiseLinear(vec![
            (TimePoint::new(0), DurationTicks::new(10)),
            (TimePoint::new(20), DurationTicks::new(0)),
        ]);
        assert_eq!(f.evaluate(TimePoint::new(0)), DurationTicks::new(10));
        assert_eq!(f.evaluate(TimePoint::new(1)), DurationTicks::new(10)); // 9.5 -> 10
        assert_eq!(f.evaluate(TimePoint::new(2)), DurationTicks::new(9));
        assert_eq!(f.evaluate(TimePoint::new(3)), DurationTicks::new(9)); // 8.5 -> 9
        assert_eq!(f.evaluate(TimePoint::new(20)), DurationTicks::new(0));
        assert_eq!(f.evaluate(TimePoint::new(21)), DurationTicks::new(0));
    }

    #[test]
    fn check_fifo_flags_counterexample_edge_with_expected_witness() {
        let report = fig1_vf().check_fifo();
        assert!(!report.is_fifo());
        let w = report.witness.unwrap();
        assert_eq!(w.t1, TimePoint::new(1));
        assert_eq!(w.t2, TimePoint::new(2));
        assert_eq!(w.a1, TimePoint::new(11));
        assert_eq!(w.a2, TimePoint::new(3));
    }

    #[test]
    fn check_fifo_constant_is_fifo() {
        let f = TravelTimeFunction::Constant(DurationTicks::new(3));
        assert!(f.check_fifo().is_fifo());
    }

    #[test]
    fn check_fifo_gentle_linear_decline_is_fifo() {
        // Slope -0.5 > -1: the exact arrival t + c(t) = 10 + t/2 strictly
        // increases even though the travel time falls.
        let f = TravelTimeFunction::PiecewiseLinear(vec![
            (TimePoint::new(0), DurationTicks::new(10)),
            (TimePoint::new(20), DurationTicks::new(0)),
        ]);
        assert!(f.check_fifo().is_fifo());
    }

    #[test]
    fn check_fifo_steep_linear_decline_is_not_fifo() {
        // Slope -2 <= -1.
        let f = TravelTimeFunction::PiecewiseLinear(vec![
            (TimePoint::new(0), DurationTicks::new(10)),
            (TimePoint::new(5), DurationTicks::new(0)),
        ]);
        let report = f.check_fifo();
        assert!(!report.is_fifo());
        let w = report.witness.unwrap();
        assert!(w.t1 < w.t2);
        assert!(w.a1 >= w.a2, "witness arrivals must not increase");
    }

    #[test]
    fn check_fifo_non_decreasing_piecewise_constant_is_fifo() {
        let f = TravelTimeFunction::PiecewiseConstant(vec![
            (TimePoint::new(0), DurationTicks::new(2)),
            (TimePoint::new(4), DurationTicks::new(2)),
            (TimePoint::new(9), DurationTicks::new(5)),
        ]);
        assert!(f.check_fifo().is_fifo());
    }

    #[test]
    fn min_travel_time_examples() {
        assert_eq!(fig1_vf().min_travel_time(), DurationTicks::new(1));
        assert_eq!(
            TravelTimeFunction::Constant(DurationTicks::new(7)).min_travel_time(),
            DurationTicks::new(7)
        );
        let f = TravelTimeFunction::PiecewiseLinear(vec![
            (TimePoint::new(0), DurationTicks::new(10)),
            (TimePoint::new(20), DurationTicks::new(0)),
        ]);
        assert_eq!(f.min_travel_time(), DurationTicks::new(0));
    }

    #[test]
    fn steady_from_is_last_breakpoint() {
        assert_eq!(fig1_vf().steady_from(), TimePoint::new(2));
        assert_eq!(
            TravelTimeFunction::Constant(DurationTicks::new(1)).steady_from(),
            TimePoint::ZERO
        );
    }
}
