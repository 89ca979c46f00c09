use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on the number of group elements any enumeration-based
/// operation will materialize.
pub const DEFAULT_ORDER_CAP: u128 = 1_000_000;

/// The pair `(m, n)` naming the group `G(m,1,n)`: `n` cards, each an `m`-gon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupParams {
    m: u8,
    n: u8,
}

impl GroupParams {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParams("m must be at least 1".into()));
        }
        if m > u8::MAX as usize {
            return Err(Error::InvalidParams(format!("m = {m} exceeds {}", u8::MAX)));
        }
        if n > u8::MAX as usize {
            return Err(Error::InvalidParams(format!("n = {n} exceeds {}", u8::MAX)));
        }
        Ok(GroupParams {
            m: m as u8,
            n: n as u8,
        })
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m as usize
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Same rotation order, different deck size.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        GroupParams::new(self.m(), n)
    }

    /// `m^n · n!`, or `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        let mut order: u128 = 1;
        for k in 1..=self.n() as u128 {
            order = order.checked_mul(k)?.checked_mul(self.m as u128)?;
        }
        Some(order)
    }

    /// `m^n`, the number of rotation patterns.
    pub fn rotation_count(&self) -> Option<u128> {
        (self.m as u128).checked_pow(self.n as u32)
    }

    /// Fails with [`Error::CapExceeded`] when the group has more than `cap`
    /// elements.
    pub fn check_cap(&self, cap: u128) -> Result<u128> {
        match self.order() {
            Some(order) if order <= cap => Ok(order),
            order => Err(Error::CapExceeded { order, cap }),
        }
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},1,{})", self.m, self.n)
    }
}
