//! Vertex-count ceilings for the expensive computations.

/// Environment variable that overrides every cap at once.
pub const SIZE_CAP_ENV: &str = "SPECSUB_SIZE_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest graph handed to the exact Matrix-Tree count.
    pub matrix_tree: usize,
    /// Largest graph produced by iterated transforms.
    pub transform: usize,
    /// Largest graph handed to the dense eigensolver.
    pub eigen: usize,
    /// Largest graph for the hitting-time and resistance oracles.
    pub walk: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            matrix_tree: 400,
            transform: 20_000,
            eigen: 2_000,
            walk: 2_000,
        }
    }
}

impl Caps {
    /// Defaults, with every cap replaced by `SPECSUB_SIZE_CAP` when it is set
    /// to a positive integer.
    pub fn from_env() -> Self {
        match std::env::var(SIZE_CAP_ENV).ok().and_then(|s| s.trim().parse::<usize>().ok()) {
            Some(cap) if cap > 0 => Caps::uniform(cap),
            _ => Caps::default(),
        }
    }

    pub fn uniform(cap: usize) -> Self {
        Caps {
            matrix_tree: cap,
            transform: cap,
            eigen: cap,
            walk: cap,
        }
    }
}

pub(crate) fn check(what: &'static str, size: usize, cap: usize) -> crate::Result<()> {
    if size > cap {
        Err(crate::Error::SizeCapExceeded { what, size, cap })
    } else {
        Ok(())
    }
}
