/// FNV-1a over `bytes`, continuing from `state`.
fn fnv1a(mut state: u64, bytes: &[u8]) -> u64 {
    for &b in bytes {
        state ^= u64::from(b);
        state = state.wrapping_mul(0x0100_0000_01b3);
    }
    state
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for one run, stable across platforms and releases.
pub fn run_seed(base_seed: u64, algorithm: &str, problem: &str, run: usize) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325;
    h = fnv1a(h, &base_seed.to_le_bytes());
    h = fnv1a(h, algorithm.as_bytes());
    h = fnv1a(h, &[0xff]);
    h = fnv1a(h, problem.as_bytes());
    h = fnv1a(h, &[0xff]);
    h = fnv1a(h, &(run as u64).to_le_bytes());
    splitmix64(h)
}
