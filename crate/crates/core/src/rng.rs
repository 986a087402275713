//! Seedable, splittable pseudo-random numbers with a fully specified output stream.
//!
//! The generator is SplitMix64 (Steele, Lea and Flood): a 64-bit state advanced by
//! `0x9E3779B97F4A7C15` per draw, output mixed with
//! `z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9; z = (z ^ (z >> 27)) * 0x94D049BB133111EB; z ^ (z >> 31)`.
//! Uniform doubles take the top 53 bits. Standard normals use Box-Muller on a pair of
//! uniforms `(u1, u2)` with `u1` mapped into `(0, 1]`, yielding `r cos(2 pi u2)` then
//! `r sin(2 pi u2)`. Stream `k` of seed `s` starts from state `mix(s ^ mix(k + GAMMA))`.

use crate::qcore::C64;

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
    spare_normal: Option<f64>,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 {
            state: seed,
            spare_normal: None,
        }
    }

    /// Independent generator for sub-task `index` of `seed`.
    pub fn stream(seed: u64, index: u64) -> Self {
        Self::new(mix(seed ^ mix(index.wrapping_add(GAMMA))))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix(self.state)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn next_normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let u1 = 1.0 - self.next_f64();
        let u2 = self.next_f64();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.spare_normal = Some(r * theta.sin());
        r * theta.cos()
    }

    /// Real and imaginary parts independent standard normals.
    pub fn next_complex_normal(&mut self) -> C64 {
        let re = self.next_normal();
        let im = self.next_normal();
        C64::new(re, im)
    }
}
