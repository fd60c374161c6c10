use serde::{Deserialize, Serialize};

use crate::error::ElasticaError;

/// Which cross-section axis the beam bends about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BendingAxis {
    /// Bending in the wafer plane, I = t·w³/12.
    InPlane,
    /// Bending out of the wafer plane, I = w·t³/12.
    OutOfPlane,
    /// Whichever of the two has the smaller second moment.
    #[default]
    Weakest,
}

/// Straight prismatic beam with a rectangular cross-section. SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeamGeometry {
    pub length: f64,
    pub width: f64,
    pub thickness: f64,
    #[serde(default)]
    pub bending_axis: BendingAxis,
}

impl BeamGeometry {
    pub fn new(length: f64, width: f64, thickness: f64, bending_axis: BendingAxis) -> Result<Self, ElasticaError> {
        let geom = Self {
            length,
            width,
            thickness,
            bending_axis,
        };
        geom.validate()?;
        Ok(geom)
    }

    /// 100 µm × 1 µm × 1.5 µm, bending about the weak axis.
    pub fn reference_beam() -> Self {
        Self {
            length: 100e-6,
            width: 1e-6,
            thickness: 1.5e-6,
            bending_axis: BendingAxis::Weakest,
        }
    }

    pub fn validate(&self) -> Result<(), ElasticaError> {
        for (name, v) in [
            ("length", self.length),
            ("width", self.width),
            ("thickness", self.thickness),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(ElasticaError::Domain(format!("beam {name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    /// Returns a message when the beam is too stubby for beam theory to be trusted.
    pub fn slenderness_warning(&self) -> Option<String> {
        let side = self.width.max(self.thickness);
        (self.length < 10.0 * side).then(|| {
            format!(
                "beam length {} m is less than ten times the largest section side {} m",
                self.length, side
            )
        })
    }

    pub fn area(&self) -> f64 {
        self.width * self.thickness
    }

    pub fn second_moment(&self) -> f64 {
        let in_plane = self.thickness * self.width.powi(3) / 12.0;
        let out_of_plane = self.width * self.thickness.powi(3) / 12.0;
        match self.bending_axis {
            BendingAxis::InPlane => in_plane,
            BendingAxis::OutOfPlane => out_of_plane,
            BendingAxis::Weakest => in_plane.min(out_of_plane),
        }
    }

    /// Section depth in the bending plane.
    pub fn depth(&self) -> f64 {
        (12.0 * self.second_moment() / self.area()).sqrt()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            length: self.length * factor,
            width: self.width * factor,
            thickness: self.thickness * factor,
            bending_axis: self.bending_axis,
        }
    }
}

impl Default for BeamGeometry {
    fn default() -> Self {
        Self::reference_beam()
    }
}
