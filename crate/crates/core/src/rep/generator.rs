use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenKind {
    E,
    F,
    K,
    Kinv,
    /// Coideal generator; acts only together with [`CoidealParams`](super::CoidealParams).
    B,
}

/// Chevalley generator (or coideal generator `b_i`) with index in `Z_2n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Generator {
    pub kind: GenKind,
    pub index: usize,
}

impl Generator {
    pub const fn new(kind: GenKind, index: usize) -> Self {
        Self { kind, index }
    }

    pub const fn e(i: usize) -> Self {
        Self::new(GenKind::E, i)
    }

    pub const fn f(i: usize) -> Self {
        Self::new(GenKind::F, i)
    }

    pub const fn k(i: usize) -> Self {
        Self::new(GenKind::K, i)
    }

    pub const fn kinv(i: usize) -> Self {
        Self::new(GenKind::Kinv, i)
    }

    pub const fn b(i: usize) -> Self {
        Self::new(GenKind::B, i)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            GenKind::E => "e",
            GenKind::F => "f",
            GenKind::K => "k",
            GenKind::Kinv => "kinv",
            GenKind::B => "b",
        };
        write!(f, "{name}{}", self.index)
    }
}

/// Index arithmetic in `Z_2n`.
pub fn wrap(i: i64, n: usize) -> usize {
    i.rem_euclid(2 * n as i64) as usize
}

/// Cartan matrix entry of `A^(1)_{2n-1}`.
pub fn cartan(i: usize, j: usize, n: usize) -> i64 {
    let (i, j) = (i as i64, j as i64);
    let d = |a: i64, b: i64| i64::from(wrap(a, n) == wrap(b, n));
    2 * d(i, j) - d(i, j + 1) - d(i, j - 1)
}
