// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Seeded random source shared by every stochastic routine.
//!
//! All randomness goes through [`Rng`], a ChaCha8 stream seeded from a `u64`.
//! ChaCha8 output is specified independently of platform word size, and all
//! index draws go through [`uniform_index`], which samples in `u64` space, so
//! a given seed yields the same instance, shuffle and trace everywhere.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw from `0..upper`. `upper` must be nonzero.
pub fn uniform_index(rng: &mut Rng, upper: usize) -> usize {
    rng.gen_range(0..upper as u64) as usize
}

pub fn bernoulli(rng: &mut Rng, p: f64) -> bool {
    if p <= 0.0 {
        false
    } else if p >= 1.0 {
        true
    } else {
        rng.gen_bool(p)
    }
}
