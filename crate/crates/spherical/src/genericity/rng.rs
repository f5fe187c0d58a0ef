//! SplitMix64 (Steele, Lea, Flood 2014): state += 0x9e3779b97f4a7c15, then the
//! standard two-multiply finalizer. Streams are portable bit-for-bit.

use num_bigint::BigInt;

use crate::exact_linalg::Rational;

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Independent stream keyed by a parent seed and a path of indices.
    pub fn derive(seed: u64, path: &[u64]) -> Self {
        let mut s = SplitMix64::new(seed);
        let mut st = s.next_u64();
        for &p in path {
            let mut t = SplitMix64::new(st ^ p.wrapping_mul(0xd1b5_4a32_d192_ed03));
            st = t.next_u64();
        }
        SplitMix64::new(st)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform integer in [0, n) by rejection.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % n;
            }
        }
    }

    /// Integer in [-h, h].
    pub fn int_in(&mut self, h: u64) -> i64 {
        self.below(2 * h + 1) as i64 - h as i64
    }

    /// Random rational a/b with |a| <= h and 1 <= b <= h.
    pub fn rational(&mut self, h: u64) -> Rational {
        let a = self.int_in(h);
        let b = 1 + self.below(h) as i64;
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    /// Nonzero random rational of height h.
    pub fn nonzero_rational(&mut self, h: u64) -> Rational {
        loop {
            let r = self.rational(h);
            if r != Rational::from_integer(0.into()) {
                return r;
            }
        }
    }
}
