//! Exact computations in the graded tree groups of Whitney tower
//! intersection theory.
//!
//! Trees, their normal forms and the groups `T_n(m)` live in [`tree`],
//! [`sum`] and [`group`]; split Whitney towers and the order-raising
//! planner in [`tower`]; the free Lie algebra oracle in [`lie`].

#![no_std]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod error;
pub mod group;
pub mod lie;
pub mod linalg;
pub mod planner;
pub mod random;
pub mod sum;
pub mod tower;
pub mod tree;
pub mod word;

pub use error::{Error, Result};

/// Enumeration limits for exhaustive computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_order: usize,
    pub max_labels: u32,
    pub max_lie_length: usize,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds { max_order: 4, max_labels: 6, max_lie_length: 8 }
    }
}

impl Bounds {
    pub fn check(&self, order: usize, labels: u32) -> Result<()> {
        if order > self.max_order {
            return Err(Error::BoundExceeded { what: "order", value: order, max: self.max_order });
        }
        if labels > self.max_labels {
            return Err(Error::BoundExceeded { what: "labels", value: labels as usize, max: self.max_labels as usize });
        }
        Ok(())
    }

    pub fn check_lie(&self, length: usize) -> Result<()> {
        if length > self.max_lie_length {
            return Err(Error::BoundExceeded { what: "length", value: length, max: self.max_lie_length });
        }
        Ok(())
    }
}
