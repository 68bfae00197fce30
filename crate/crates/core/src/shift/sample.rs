use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{budget, Result};
use crate::laurent::CaShift;

use super::{top_slice_system, Budgets, Configuration, Window};

/// Draws a configuration on `window` from the Haar measure: a uniform
/// top-layer assignment pushed through the top-slice system.
pub fn sample_point(ca: &CaShift, window: &Window, seed: u64, budgets: &Budgets) -> Result<Configuration> {
    budget("window cells", window.len() as u128, budgets.max_cells as u128)?;
    let sys = top_slice_system(ca, window, budgets)?;
    let p = ca.prime();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let y: Vec<u32> = (0..sys.region().len())
        .map(|_| rng.gen_range(0..p.get()))
        .collect();
    Configuration::new(window.clone(), sys.apply(&y), p)
}
