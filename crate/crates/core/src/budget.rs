use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

/// Resource cap for enumerations, checked cooperatively.
///
/// `limit` bounds the number of items an enumeration may produce. A shared
/// cancellation flag lets another thread stop a running enumeration; the
/// enumeration then returns what it has, flagged incomplete.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: usize,
    cancel: Option<Arc<AtomicBool>>,
}

impl Budget {
    pub const DEFAULT_LIMIT: usize = 2_000_000;

    pub fn new(limit: usize) -> Self {
        Budget {
            limit,
            cancel: None,
        }
    }

    pub fn with_cancel(mut self, flag: Arc<AtomicBool>) -> Self {
        self.cancel = Some(flag);
        self
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    /// True once `used` items exceed the limit or cancellation was requested.
    pub fn exhausted(&self, used: usize) -> bool {
        used > self.limit || self.cancel.as_ref().is_some_and(|c| c.load(Ordering::Relaxed))
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_LIMIT)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limit_and_cancel() {
        let flag = Arc::new(AtomicBool::new(false));
        let b = Budget::new(3).with_cancel(flag.clone());
        assert!(!b.exhausted(3));
        assert!(b.exhausted(4));
        flag.store(true, Ordering::Relaxed);
        assert!(b.exhausted(0));
    }
}
