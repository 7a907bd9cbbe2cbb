use std::fmt;

use crate::error::{Error, Result};

/// The m-fold indicator `χ_{n mod m = j}`; `(0, 0)` is the zero sequence and
/// `(0, 1)` the all-ones sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndicatorClass {
    residue: u64,
    modulus: u64,
}

impl IndicatorClass {
    pub const ZERO: IndicatorClass = IndicatorClass { residue: 0, modulus: 0 };
    pub const ONE: IndicatorClass = IndicatorClass { residue: 0, modulus: 1 };

    pub fn new(residue: u64, modulus: u64) -> Result<Self> {
        let ok = if modulus == 0 { residue == 0 } else { residue < modulus };
        if !ok {
            return Err(Error::InvalidClass { residue, modulus });
        }
        Ok(IndicatorClass { residue, modulus })
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.modulus == 0
    }

    pub fn contains(&self, n: u64) -> bool {
        self.modulus != 0 && n % self.modulus == self.residue
    }

    /// Sort key: modulus first, then residue.
    pub(crate) fn key(&self) -> (u64, u64) {
        (self.modulus, self.residue)
    }
}

impl fmt::Display for IndicatorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "χ[{} mod {}]", self.residue, self.modulus)
    }
}

/// Value of the indicator sequence at `n`.
pub fn mfold_indicator(n: u64, class: IndicatorClass) -> u32 {
    u32::from(class.contains(n))
}
