//! Per-trial seed derivation.

const TRIAL_STRIDE: u64 = 0xD1B5_4A32_D192_ED03;

/// One SplitMix64 output for state `x`: add the golden-ratio increment,
/// then the variant-13 finalizer.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for trial `trial_id` of an experiment seeded with `experiment_seed`:
/// `splitmix64(experiment_seed ^ trial_id * 0xD1B54A32D192ED03)`.
///
/// Every step is a bijection of `trial_id`, so for a fixed experiment seed
/// distinct trials always get distinct seeds.
pub fn derive_trial_seed(experiment_seed: u64, trial_id: u64) -> u64 {
    splitmix64(experiment_seed ^ trial_id.wrapping_mul(TRIAL_STRIDE))
}
