//! Process-wide size guards.
//!
//! All limits can be overridden at runtime; the CLI reads them from the
//! environment on start-up.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_LEVEL: u64 = 1_000_000;
pub const DEFAULT_MAX_FIELD_SIZE: u64 = 1 << 20;
pub const DEFAULT_MAX_TABLE_Q: u64 = 64;
pub const DEFAULT_MAX_M: u64 = 4;
pub const DEFAULT_MAX_ELLR: u64 = 729;

static MAX_LEVEL: AtomicU64 = AtomicU64::new(DEFAULT_MAX_LEVEL);
static MAX_FIELD_SIZE: AtomicU64 = AtomicU64::new(DEFAULT_MAX_FIELD_SIZE);
static MAX_TABLE_Q: AtomicU64 = AtomicU64::new(DEFAULT_MAX_TABLE_Q);
static MAX_M: AtomicU64 = AtomicU64::new(DEFAULT_MAX_M);
static MAX_ELLR: AtomicU64 = AtomicU64::new(DEFAULT_MAX_ELLR);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Largest cyclotomic level `n` for which `Q(zeta_n)` arithmetic is allowed.
    pub max_level: u64,
    /// Largest finite field order `p^n` that may be constructed.
    pub max_field_size: u64,
    /// Largest `q` for which full GL2/SL2 tables are built.
    pub max_table_q: u64,
    /// Largest rank `m` for GL_m enumeration.
    pub max_m: u64,
    /// Largest prime power `l^r` for order-restricted GL_m fields.
    pub max_ellr: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_level: DEFAULT_MAX_LEVEL,
            max_field_size: DEFAULT_MAX_FIELD_SIZE,
            max_table_q: DEFAULT_MAX_TABLE_Q,
            max_m: DEFAULT_MAX_M,
            max_ellr: DEFAULT_MAX_ELLR,
        }
    }
}

pub fn bounds() -> Bounds {
    Bounds {
        max_level: MAX_LEVEL.load(Ordering::Relaxed),
        max_field_size: MAX_FIELD_SIZE.load(Ordering::Relaxed),
        max_table_q: MAX_TABLE_Q.load(Ordering::Relaxed),
        max_m: MAX_M.load(Ordering::Relaxed),
        max_ellr: MAX_ELLR.load(Ordering::Relaxed),
    }
}

pub fn set_bounds(b: Bounds) {
    MAX_LEVEL.store(b.max_level, Ordering::Relaxed);
    MAX_FIELD_SIZE.store(b.max_field_size, Ordering::Relaxed);
    MAX_TABLE_Q.store(b.max_table_q, Ordering::Relaxed);
    MAX_M.store(b.max_m, Ordering::Relaxed);
    MAX_ELLR.store(b.max_ellr, Ordering::Relaxed);
}

pub fn check_level(level: u64) -> Result<()> {
    let max = MAX_LEVEL.load(Ordering::Relaxed);
    if level == 0 {
        return Err(Error::InvalidArgument("cyclotomic level must be positive".into()));
    }
    if level > max {
        return Err(Error::LevelTooLarge { level, max });
    }
    Ok(())
}

pub(crate) fn check(what: &'static str, value: u64, max: u64) -> Result<()> {
    if value > max {
        Err(Error::BoundExceeded { what, value, max })
    } else {
        Ok(())
    }
}
