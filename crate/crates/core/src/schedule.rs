//! Annealing schedules A(t), B(t) over the dimensionless fraction t/t_a.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Piecewise-linear annealing schedule. A drives the transverse term,
/// B the Ising term.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    points: Vec<(f64, f64, f64)>, // (fraction, A, B)
}

impl Schedule {
    /// Validates and builds a schedule. Fractions must increase strictly
    /// from 0 to 1. A must be non-increasing and B non-decreasing unless
    /// `allow_exotic` is set.
    pub fn new(points: Vec<(f64, f64, f64)>, allow_exotic: bool) -> Result<Schedule> {
        if points.len() < 2 {
            return Err(Error::InvalidSchedule("need at least two points".into()));
        }
        if points[0].0 != 0.0 || points[points.len() - 1].0 != 1.0 {
            return Err(Error::InvalidSchedule("fractions must span 0 to 1".into()));
        }
        for w in points.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::InvalidSchedule("fractions must strictly increase".into()));
            }
            if !allow_exotic {
                if w[1].1 > w[0].1 {
                    return Err(Error::InvalidSchedule("A(t) must be non-increasing".into()));
                }
                if w[1].2 < w[0].2 {
                    return Err(Error::InvalidSchedule("B(t) must be non-decreasing".into()));
                }
            }
        }
        if points.iter().any(|p| !p.0.is_finite() || !p.1.is_finite() || !p.2.is_finite()) {
            return Err(Error::InvalidSchedule("non-finite entry".into()));
        }
        Ok(Schedule { points })
    }

    /// The default schedule: A from 1 to 0 and B from 0 to 1, linearly.
    pub fn linear_default() -> Schedule {
        Schedule { points: vec![(0.0, 1.0, 0.0), (1.0, 0.0, 1.0)] }
    }

    /// Linear interpolation at fraction `f` (clamped into [0, 1]).
    pub fn at(&self, f: f64) -> (f64, f64) {
        let f = f.clamp(0.0, 1.0);
        let pts = &self.points;
        let hi = match pts.iter().position(|p| p.0 >= f) {
            Some(0) => return (pts[0].1, pts[0].2),
            Some(i) => i,
            None => return (pts[pts.len() - 1].1, pts[pts.len() - 1].2),
        };
        let (f0, a0, b0) = pts[hi - 1];
        let (f1, a1, b1) = pts[hi];
        let w = (f - f0) / (f1 - f0);
        (a0 + w * (a1 - a0), b0 + w * (b1 - b0))
    }

    pub fn points(&self) -> &[(f64, f64, f64)] {
        &self.points
    }

    /// One `fraction A B` triple per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for &(f, a, b) in &self.points {
            let _ = writeln!(out, "{f} {a} {b}");
        }
        out
    }

    pub fn from_text(text: &str, allow_exotic: bool) -> Result<Schedule> {
        let mut points = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let mut next = || -> Result<f64> {
                it.next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::parse("schedule", format!("bad line: {line}")))
            };
            points.push((next()?, next()?, next()?));
        }
        Schedule::new(points, allow_exotic)
    }

    /// Canonical text used in parameter hashes.
    pub fn canonical(&self) -> String {
        let mut s = String::new();
        for &(f, a, b) in &self.points {
            let _ = write!(s, "({f},{a},{b})");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_interpolates_linearly() {
        let s = Schedule::linear_default();
        assert_eq!(s.at(0.0), (1.0, 0.0));
        assert_eq!(s.at(1.0), (0.0, 1.0));
        let (a, b) = s.at(0.25);
        assert!((a - 0.75).abs() < 1e-15);
        assert!((b - 0.25).abs() < 1e-15);
    }

    #[test]
    fn validation_rules() {
        assert!(Schedule::new(vec![(0.0, 1.0, 0.0)], false).is_err());
        assert!(Schedule::new(vec![(0.0, 1.0, 0.0), (0.5, 0.5, 0.5)], false).is_err());
        // A increasing rejected unless exotic allowed.
        let exotic = vec![(0.0, 0.5, 0.0), (1.0, 1.0, 1.0)];
        assert!(Schedule::new(exotic.clone(), false).is_err());
        assert!(Schedule::new(exotic, true).is_ok());
    }

    #[test]
    fn text_round_trip() {
        let s = Schedule::new(vec![(0.0, 2.5, 0.0), (0.5, 1.0, 0.25), (1.0, 0.0, 1.5)], false).unwrap();
        let text = s.to_text();
        let back = Schedule::from_text(&text, false).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_text(), text);
    }
}
