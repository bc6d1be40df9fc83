use std::time::Instant;

use xdhh_core::Clock;

/// Wall clock started at construction.
#[derive(Debug, Clone, Copy)]
pub struct StdClock {
    start: Instant,
}

impl StdClock {
    pub fn start() -> Self {
        Self { start: Instant::now() }
    }
}

impl Clock for StdClock {
    fn elapsed_ms(&self) -> u64 {
        self.start.elapsed().as_millis() as u64
    }
}
