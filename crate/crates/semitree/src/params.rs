use std::fmt;

use serde::Serialize;

use crate::{Error, Result};

/// The two vertex classes `V₊`, `V₋`. Also used as the `±` label of `F±`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Plus,
    Minus,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Plus => Parity::Minus,
            Parity::Minus => Parity::Plus,
        }
    }

    /// Class of a vertex at distance `n` from a vertex of class `self`.
    pub fn at_distance(self, n: usize) -> Parity {
        if n % 2 == 0 {
            self
        } else {
            self.flip()
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Plus => "V+",
            Parity::Minus => "V-",
        })
    }
}

/// Homogeneity degrees of `T(q₊, q₋)` and the class of the reference vertex `v₀`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TreeParams {
    q_plus: u32,
    q_minus: u32,
    root_parity: Parity,
}

impl TreeParams {
    /// Root in `V₊`. Both degrees must be at least 2.
    pub fn new(q_plus: u32, q_minus: u32) -> Result<Self> {
        Self::with_root(q_plus, q_minus, Parity::Plus)
    }

    pub fn with_root(q_plus: u32, q_minus: u32, root_parity: Parity) -> Result<Self> {
        if q_plus < 2 || q_minus < 2 {
            return Err(Error::InvalidParams(format!(
                "need q_plus, q_minus >= 2, got ({q_plus}, {q_minus})"
            )));
        }
        // keeps (q+1)^2 (q-1)^2 and friends exact in u64
        if q_plus > 1 << 20 || q_minus > 1 << 20 {
            return Err(Error::InvalidParams("degrees above 2^20 are not supported".into()));
        }
        Ok(TreeParams { q_plus, q_minus, root_parity })
    }

    pub fn q_plus(&self) -> u32 {
        self.q_plus
    }

    pub fn q_minus(&self) -> u32 {
        self.q_minus
    }

    pub fn root_parity(&self) -> Parity {
        self.root_parity
    }

    pub fn q(&self, parity: Parity) -> u32 {
        match parity {
            Parity::Plus => self.q_plus,
            Parity::Minus => self.q_minus,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.q_plus == self.q_minus
    }

    /// `q₊q₋` as an exact integer.
    pub fn q_product(&self) -> u64 {
        self.q_plus as u64 * self.q_minus as u64
    }

    /// `𝔮 = √(q₊q₋)`.
    pub fn qq(&self) -> f64 {
        (self.q_product() as f64).sqrt()
    }

    /// `(q₊+1)(q₋+1)`.
    pub fn d(&self) -> f64 {
        ((self.q_plus as u64 + 1) * (self.q_minus as u64 + 1)) as f64
    }

    pub fn swapped(&self) -> TreeParams {
        TreeParams {
            q_plus: self.q_minus,
            q_minus: self.q_plus,
            root_parity: self.root_parity.flip(),
        }
    }

    /// The same tree relabelled so that the root is in `V₊`.
    ///
    /// Formulas stated "with `q_{v₀} = q₊`" are evaluated on this view.
    pub fn rooted(&self) -> TreeParams {
        match self.root_parity {
            Parity::Plus => *self,
            Parity::Minus => self.swapped(),
        }
    }
}
