//! Size guard for exhaustive enumerations.
//!
//! Every search in the crate charges its visited states against a
//! thread-local budget. The cap applies per enumeration, not per process.

use std::cell::Cell;

use crate::error::{Error, Result};

pub const DEFAULT_CAP: u64 = 1_000_000;

thread_local! {
    static CAP: Cell<u64> = const { Cell::new(DEFAULT_CAP) };
}

/// The cap currently in force on this thread.
pub fn size_cap() -> u64 {
    CAP.with(Cell::get)
}

/// Runs `f` with the size cap temporarily set to `cap`.
pub fn with_size_cap<T>(cap: u64, f: impl FnOnce() -> T) -> T {
    struct Restore(u64);
    impl Drop for Restore {
        fn drop(&mut self) {
            CAP.with(|c| c.set(self.0));
        }
    }
    let _restore = Restore(CAP.with(|c| c.replace(cap)));
    f()
}

/// A counter that fails once more than [`size_cap`] states were charged.
#[derive(Debug)]
pub(crate) struct Budget {
    used: u64,
    cap: u64,
}

impl Budget {
    pub(crate) fn new() -> Self {
        Budget {
            used: 0,
            cap: size_cap(),
        }
    }

    pub(crate) fn charge(&mut self, n: u64) -> Result<()> {
        self.used = self.used.saturating_add(n);
        if self.used > self.cap {
            Err(Error::SizeExceeded { cap: self.cap })
        } else {
            Ok(())
        }
    }
}

/// Fails if a single materialized collection would exceed the cap.
pub(crate) fn check_size(n: u128) -> Result<()> {
    let cap = size_cap();
    if n > cap as u128 {
        Err(Error::SizeExceeded { cap })
    } else {
        Ok(())
    }
}
