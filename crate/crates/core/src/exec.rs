//! Execution mode switch and cooperative time budgets.
//!
//! Heavy kernels (matrix reduction, batch evaluation) run on the rayon pool
//! when the `parallel` feature is enabled and the mode is [`Exec::Parallel`].
//! Long computations call [`check_budget`] at safe points; once the deadline
//! installed by [`with_budget`] has passed it returns [`Error::Timeout`].

use crate::error::{Error, Result};
use std::cell::Cell;
use std::sync::atomic::{AtomicU8, Ordering};
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

static MODE: AtomicU8 = AtomicU8::new(1);

/// Selects the execution mode for subsequent kernel calls.
pub fn set_exec(mode: Exec) {
    MODE.store(matches!(mode, Exec::Parallel) as u8, Ordering::Relaxed);
}

pub fn exec() -> Exec {
    if cfg!(feature = "parallel") && MODE.load(Ordering::Relaxed) == 1 {
        Exec::Parallel
    } else {
        Exec::Sequential
    }
}

#[inline]
pub fn parallel() -> bool {
    exec() == Exec::Parallel
}

thread_local! {
    static DEADLINE: Cell<Option<Instant>> = const { Cell::new(None) };
}

/// Runs `f` with a deadline `limit` from now. Nested budgets keep the
/// earlier deadline.
pub fn with_budget<T>(limit: Duration, f: impl FnOnce() -> T) -> T {
    let new = Instant::now() + limit;
    let old = DEADLINE.with(|d| d.get());
    let eff = match old {
        Some(o) if o < new => o,
        _ => new,
    };
    DEADLINE.with(|d| d.set(Some(eff)));
    struct Restore(Option<Instant>);
    impl Drop for Restore {
        fn drop(&mut self) {
            DEADLINE.with(|d| d.set(self.0));
        }
    }
    let _g = Restore(old);
    f()
}

/// Fails with [`Error::Timeout`] once the current budget is spent.
#[inline]
pub fn check_budget() -> Result<()> {
    match DEADLINE.with(|d| d.get()) {
        Some(t) if Instant::now() > t => Err(Error::Timeout),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_expires() {
        assert!(check_budget().is_ok());
        let r = with_budget(Duration::from_millis(1), || {
            std::thread::sleep(Duration::from_millis(5));
            check_budget()
        });
        assert_eq!(r, Err(Error::Timeout));
        assert!(check_budget().is_ok());
    }
}
