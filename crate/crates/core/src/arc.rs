//! Arcs of the unit circle.
//!
//! An arc is stored as a pair of angles (θ0, θ1) with θ0 ∈ [0, 2π) and
//! θ0 < θ1 ≤ θ0 + 2π, so wrapping through zero is unambiguous. θ1 = θ0 + 2π
//! marks the degenerate full circle.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Tolerance used when deciding whether a query angle sits on an endpoint.
const ENDPOINT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleArc {
    theta0: f64,
    theta1: f64,
    #[serde(default = "yes")]
    closed_lo: bool,
    #[serde(default = "yes")]
    closed_hi: bool,
}

fn yes() -> bool {
    true
}

impl CircleArc {
    /// Closed arc [θ0, θ1]. θ0 is canonicalized to [0, 2π), θ1 shifted along.
    pub fn closed(theta0: f64, theta1: f64) -> Result<Self> {
        Self::with_closure(theta0, theta1, true, true)
    }

    /// Open arc (θ0, θ1).
    pub fn open(theta0: f64, theta1: f64) -> Result<Self> {
        Self::with_closure(theta0, theta1, false, false)
    }

    pub fn with_closure(
        theta0: f64,
        theta1: f64,
        closed_lo: bool,
        closed_hi: bool,
    ) -> Result<Self> {
        if !theta0.is_finite() || !theta1.is_finite() {
            return Err(Error::ArcOrdering { theta0, theta1 });
        }
        let lo = theta0.rem_euclid(TAU);
        let hi = theta1 + (lo - theta0);
        if !(lo < hi && hi <= lo + TAU) {
            return Err(Error::ArcOrdering { theta0, theta1 });
        }
        Ok(Self {
            theta0: lo,
            theta1: hi,
            closed_lo,
            closed_hi,
        })
    }

    /// The whole circle, flagged by θ1 = θ0 + 2π.
    pub fn full_circle() -> Self {
        Self {
            theta0: 0.0,
            theta1: TAU,
            closed_lo: true,
            closed_hi: true,
        }
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    pub fn theta1(&self) -> f64 {
        self.theta1
    }

    pub fn width(&self) -> f64 {
        self.theta1 - self.theta0
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.theta0 + self.theta1)
    }

    pub fn is_full_circle(&self) -> bool {
        self.width() >= TAU * (1.0 - 1e-14)
    }

    /// Membership, consistent under 2π-shifts of the query and honoring the
    /// closure flags (up to a 1e−12 endpoint tolerance).
    pub fn contains(&self, theta: f64) -> bool {
        if self.is_full_circle() {
            return true;
        }
        let d = (theta - self.theta0).rem_euclid(TAU);
        let w = self.width();
        if d <= ENDPOINT_TOL || d >= TAU - ENDPOINT_TOL {
            return self.closed_lo;
        }
        if (d - w).abs() <= ENDPOINT_TOL {
            return self.closed_hi;
        }
        d < w
    }

    /// Rotates the arc by `phi` (adds phi to both endpoints, re-canonicalizes).
    pub fn rotated(&self, phi: f64) -> Self {
        if self.is_full_circle() {
            return *self;
        }
        Self::with_closure(
            self.theta0 + phi,
            self.theta1 + phi,
            self.closed_lo,
            self.closed_hi,
        )
        .expect("rotation preserves ordering")
    }

    /// Uniform interior grid of `n` angles, excluding `margin` radians at each
    /// end. Errors when the margin eats the whole arc.
    pub fn interior_grid(&self, n: usize, margin: f64) -> Result<Vec<f64>> {
        let lo = self.theta0 + margin;
        let hi = self.theta1 - margin;
        if hi <= lo || n == 0 {
            return Err(Error::EmptyArcInterior);
        }
        let step = (hi - lo) / n as f64;
        Ok((0..n).map(|i| lo + (i as f64 + 0.5) * step).collect())
    }

    /// Endpoint distance to another arc, insensitive to the 2π ambiguity.
    pub fn endpoint_distance(&self, other: &CircleArc) -> f64 {
        let d0 = angle_distance(self.theta0, other.theta0);
        let d1 = angle_distance(self.theta1, other.theta1);
        d0.max(d1)
    }
}

/// Distance between two angles on the circle.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}
