use std::cell::Cell;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

const CHECK_EVERY: u32 = 1 << 12;

/// Cooperative cancellation for the exponential searches: a wall-clock
/// deadline and/or an external stop flag, polled every few thousand nodes.
#[derive(Debug, Default)]
pub struct Budget {
    deadline: Option<Instant>,
    stop: Option<Arc<AtomicBool>>,
    ticks: Cell<u32>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn with_timeout(limit: Duration) -> Self {
        Self {
            deadline: Some(Instant::now() + limit),
            ..Self::default()
        }
    }

    pub fn with_stop_flag(mut self, flag: Arc<AtomicBool>) -> Self {
        self.stop = Some(flag);
        self
    }

    #[inline]
    pub fn tick(&self) -> Result<()> {
        let t = self.ticks.get().wrapping_add(1);
        self.ticks.set(t);
        if t % CHECK_EVERY == 0 {
            self.check()?;
        }
        Ok(())
    }

    pub fn check(&self) -> Result<()> {
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(Error::Timeout);
        }
        if self.stop.as_ref().is_some_and(|f| f.load(Ordering::Relaxed)) {
            return Err(Error::Timeout);
        }
        Ok(())
    }
}
