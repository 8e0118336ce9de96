//! Fixtures shared by the benchmarks.

use sasaki_core::linalg::{vector, Vector};
use sasaki_core::models::{heisenberg_model, HeisenbergConfig};
use sasaki_core::{ModelInstance, Point, WedgeConvention};

/// Heisenberg model at its known Sasakian scales, skipping the search.
pub fn heisenberg() -> ModelInstance {
    let config = HeisenbergConfig {
        signs: [-1, 1, 1, -1],
        eta_half: true,
        wedge: WedgeConvention::Half,
    };
    heisenberg_model(0.25, 0.25, config).expect("canonical configuration")
}

pub fn point() -> Point {
    Point::new(vec![0.31, -0.42, 0.77, 0.05, -0.6, 0.18])
}

pub fn vectors() -> [Vector; 3] {
    [
        vector(&[0.2, -1.0, 0.5, 0.3, 0.0, 0.7]),
        vector(&[-0.4, 0.1, 0.9, -0.2, 0.6, 0.0]),
        vector(&[0.0, 0.3, -0.8, 0.5, 0.1, -0.9]),
    ]
}
