//! Seeded exact-rational samplers used by the verification commands and tests.
//!
//! Isotropic vectors are produced by stereographic projection from a known
//! rational isotropic seed: for a random integral direction d, the second
//! intersection of the line seed + t*d with the light cone is
//! <d,d>*seed - 2*<seed,d>*d, which is integral. All outputs are exact.

use crate::lattice::LorentzLattice;
use crate::mat::{self, Int, Rat};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }

    fn random_direction(&mut self, n: usize, bound: i64) -> Vec<Rat> {
        (0..n).map(|_| mat::rat(self.int_in(-bound, bound))).collect()
    }

    /// Random primitive isotropic vector in the closed positive cone, built
    /// from a rational isotropic seed of the same lattice.
    pub fn isotropic(&mut self, lat: &LorentzLattice, seed_vec: &[Rat]) -> Vec<Int> {
        assert!(lat.norm(seed_vec).is_zero(), "seed must be isotropic");
        loop {
            let d = self.random_direction(lat.rank(), 9);
            let qd = lat.norm(&d);
            let sd = lat.pairing(seed_vec, &d);
            // e' = <d,d> seed - 2 <seed,d> d lies on the light cone
            let e = mat::vsub(
                &mat::vscale(&qd, seed_vec),
                &mat::vscale(&(&sd + &sd), &d),
            );
            if mat::is_zero_vec(&e) {
                continue;
            }
            debug_assert!(lat.norm(&e).is_zero());
            if let Ok(p) = lat.primitive(&e) {
                let pq = mat::int_to_rat_vec(&p);
                if lat.in_closed_positive_cone(&pq) {
                    return p;
                }
            }
        }
    }

    /// Random integral point in the open positive cone.
    pub fn interior(&mut self, lat: &LorentzLattice) -> Vec<Int> {
        let ample_int = mat::clear_denominators(lat.ample());
        let ample_q = mat::int_to_rat_vec(&ample_int);
        for scale in 1..64 {
            for _ in 0..16 {
                let d = self.random_direction(lat.rank(), 3);
                let x = mat::vadd(&mat::vscale(&mat::rat(scale), &ample_q), &d);
                if lat.in_positive_cone(&x) {
                    return mat::clear_denominators(&x);
                }
            }
        }
        unreachable!("interior sampling failed near the reference class");
    }

    /// Random nonnegative rational combination of the given integral points,
    /// with at least one strictly positive weight.
    /// Combination with strictly positive weight on every point; for the
    /// extreme rays of a pointed full-dimensional cone the result is
    /// guaranteed interior.
    pub fn strict_combination(&mut self, points: &[Vec<Int>]) -> Vec<Rat> {
        let mut acc = vec![Rat::zero(); points[0].len()];
        for p in points {
            let w = mat::ratio(self.int_in(1, 12), 1 + self.int_in(0, 3) as i64);
            acc = mat::vadd(&acc, &mat::vscale(&w, &mat::int_to_rat_vec(p)));
        }
        acc
    }

    pub fn positive_combination(&mut self, points: &[Vec<Int>]) -> Vec<Rat> {
        loop {
            let mut acc = vec![Rat::zero(); points[0].len()];
            let mut any = false;
            for p in points {
                let w = mat::ratio(self.int_in(0, 12), 1 + self.int_in(0, 3) as i64);
                if !w.is_zero() {
                    any = true;
                    acc = mat::vadd(&acc, &mat::vscale(&w, &mat::int_to_rat_vec(p)));
                }
            }
            if any && !mat::is_zero_vec(&acc) {
                return acc;
            }
        }
    }

    /// Random integer vector in the integral span of the given basis.
    pub fn lattice_combination(&mut self, basis: &[Vec<Int>], bound: i64) -> Vec<Int> {
        let n = basis[0].len();
        loop {
            let mut acc = vec![Int::zero(); n];
            for b in basis {
                let c = mat::int(self.int_in(-bound, bound));
                for (a, x) in acc.iter_mut().zip(b) {
                    *a += &c * x;
                }
            }
            if !mat::is_zero_ivec(&acc) {
                return acc;
            }
        }
    }
}
