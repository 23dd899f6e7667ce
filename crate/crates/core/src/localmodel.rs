//! Local models `Re(x + iy)^k` on the closed upper half-plane.

use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::diagram::Sign;

/// An exact angle `r * π`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PiMultiple(pub Ratio<u64>);

impl PiMultiple {
    pub fn new(numer: u64, denom: u64) -> Self {
        PiMultiple(Ratio::new(numer, denom))
    }

    pub fn ratio(&self) -> Ratio<u64> {
        self.0
    }

    pub fn radians(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64 * std::f64::consts::PI
    }
}

/// Reduced fraction of π, e.g. `1/6`, `1/2`, `1` for π itself.
impl fmt::Display for PiMultiple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for PiMultiple {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalModel {
    k: usize,
    #[serde(serialize_with = "serialize_bigints")]
    coefficients: Vec<BigInt>,
    ray_angles: Vec<PiMultiple>,
    sector_signs: Vec<Sign>,
}

/// Numbers while they fit in an `i64` (every coefficient up to `k = 64`
/// does), decimal strings beyond that.
fn serialize_bigints<S: Serializer>(values: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(|v| match v.to_i64() {
        Some(n) => serde_json::Value::from(n),
        None => serde_json::Value::String(v.to_string()),
    }))
}

impl LocalModel {
    pub fn k(&self) -> usize {
        self.k
    }

    /// `c_j` multiplies `x^(k-2j) y^(2j)`.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn ray_angles(&self) -> &[PiMultiple] {
        &self.ray_angles
    }

    /// Sign on each of the `k + 1` sectors, counter-clockwise from the
    /// positive x-axis.
    pub fn sector_signs(&self) -> &[Sign] {
        &self.sector_signs
    }

    pub fn evaluate(&self, x: f64, y: f64) -> f64 {
        let y2 = y * y;
        let mut acc = 0.0;
        for (j, c) in self.coefficients.iter().enumerate() {
            let c = c.to_f64().expect("finite coefficient");
            acc += c * x.powi((self.k - 2 * j) as i32) * y2.powi(j as i32);
        }
        acc
    }

    /// Human-readable polynomial such as `x^3 - 3x y^2`.
    pub fn polynomial(&self) -> String {
        let mut out = String::new();
        for (j, c) in self.coefficients.iter().enumerate() {
            let (xp, yp) = (self.k - 2 * j, 2 * j);
            let negative = c.sign() == num_bigint::Sign::Minus;
            let magnitude = c.magnitude().to_string();
            if j == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if magnitude != "1" {
                out.push_str(&magnitude);
            }
            let mut first = true;
            for (var, p) in [("x", xp), ("y", yp)] {
                if p == 0 {
                    continue;
                }
                if !first {
                    out.push(' ');
                }
                first = false;
                out.push_str(var);
                if p > 1 {
                    out.push_str(&format!("^{p}"));
                }
            }
        }
        out
    }
}

pub fn build_local_model(k: usize) -> LocalModel {
    assert!(k >= 1, "local model needs k >= 1");
    let kb = BigInt::from(k);
    let coefficients = (0..=k / 2)
        .map(|j| {
            let c = binomial(kb.clone(), BigInt::from(2 * j));
            if j % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    LocalModel {
        k,
        coefficients,
        ray_angles: zero_rays(k),
        sector_signs: (0..=k).map(|i| Sign::Pos.alternate(i)).collect(),
    }
}

/// `(2m + 1)π / (2k)` for `m = 0..k`.
pub fn zero_rays(k: usize) -> Vec<PiMultiple> {
    let k = k as u64;
    (0..k).map(|m| PiMultiple::new(2 * m + 1, 2 * k)).collect()
}

/// Sign sectors of the model, equal to the arc count of a diagram with the
/// same `k`.
pub fn sector_arc_count(k: usize) -> usize {
    k + 1
}

/// `±(x² + y²)` near a boundary minimum or maximum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremumModel {
    pub sign: Sign,
    pub kind: &'static str,
    pub polynomial: &'static str,
    pub zero_rays: Vec<PiMultiple>,
    pub level_curves: &'static str,
}

impl ExtremumModel {
    pub fn evaluate(&self, x: f64, y: f64) -> f64 {
        let r2 = x * x + y * y;
        match self.sign {
            Sign::Pos => r2,
            Sign::Neg => -r2,
        }
    }
}

pub fn extremum_model(sign: Sign) -> ExtremumModel {
    let (kind, polynomial) = match sign {
        Sign::Pos => ("minimum", "x^2 + y^2"),
        Sign::Neg => ("maximum", "-x^2 - y^2"),
    };
    ExtremumModel {
        sign,
        kind,
        polynomial,
        zero_rays: Vec::new(),
        level_curves: "half-circles",
    }
}
