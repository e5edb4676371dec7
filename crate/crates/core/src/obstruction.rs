//! Data-level obstruction checks for closed 5-manifolds.

use crate::error::{Error, Result};

/// Betti numbers, spin flag and optional opaque class labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyData {
    pub betti: [u64; 6],
    pub spin: bool,
    pub e_squared: Option<String>,
    pub half_p1: Option<String>,
}

impl CohomologyData {
    pub fn new(betti: &[u64], spin: bool) -> Result<Self> {
        let betti: [u64; 6] = betti
            .try_into()
            .map_err(|_| Error::Shape(format!("expected 6 Betti numbers, got {}", betti.len())))?;
        Ok(CohomologyData {
            betti,
            spin,
            e_squared: None,
            half_p1: None,
        })
    }

    /// Poincaré duality warnings for a closed connected orientable 5-manifold.
    pub fn warnings(&self) -> Vec<String> {
        let b = &self.betti;
        let mut w = Vec::new();
        for q in 0..3 {
            if b[q] != b[5 - q] {
                w.push(format!("b{q} = {} differs from b{} = {}; not a closed orientable 5-manifold", b[q], 5 - q, b[5 - q]));
            }
        }
        w
    }
}

/// `(b₀ + b₂) mod 2`: even degrees up to half the dimension.
pub fn kervaire_semicharacteristic(betti: &[u64; 6]) -> u8 {
    ((betti[0] + betti[2]) % 2) as u8
}

pub fn existence_verdict_closed(spin: bool, kappa: u8) -> bool {
    spin && kappa == 0
}

/// Equality of the two class labels.
pub fn euler_condition(e_squared: &str, half_p1: &str) -> bool {
    e_squared == half_p1
}
