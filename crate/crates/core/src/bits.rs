//! Word-level helpers shared by the cube primitives.

/// All-ones mask of width `n`, `n <= 63`.
#[inline]
pub fn mask(n: u32) -> u64 {
    debug_assert!(n <= 63);
    (1u64 << n) - 1
}

/// Deposits the low bits of `value` onto the set positions of `m`
/// (software PDEP).
#[inline]
pub fn scatter(mut value: u64, mut m: u64) -> u64 {
    let mut out = 0u64;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if value & 1 != 0 {
            out |= low;
        }
        value >>= 1;
        m ^= low;
    }
    out
}

/// Drops bit `c` from `value`, closing the gap.
#[inline]
pub fn remove_bit(value: u64, c: u32) -> u64 {
    let low = value & mask(c);
    ((value >> (c + 1)) << c) | low
}

/// Iterator over the `n`-bit masks with exactly `k` set bits in increasing
/// integer order (Gosper's hack).
pub struct MaskCombinations {
    next: Option<u64>,
    limit: u64,
}

impl MaskCombinations {
    pub fn new(n: u32, k: u32) -> Self {
        debug_assert!(k <= n && n <= 63);
        let first = if k == 0 { 0 } else { mask(k) };
        MaskCombinations {
            next: Some(first),
            limit: 1u64 << n,
        }
    }
}

impl Iterator for MaskCombinations {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            let low = cur & cur.wrapping_neg();
            let ripple = cur + low;
            let new = (((cur ^ ripple) / low) >> 2) | ripple;
            (new < self.limit).then_some(new)
        };
        Some(cur)
    }
}

/// Iterator over the submasks of `m` in increasing integer order,
/// starting at 0 and ending at `m` itself.
pub struct Submasks {
    m: u64,
    cur: u64,
    done: bool,
}

impl Submasks {
    pub fn new(m: u64) -> Self {
        Submasks {
            m,
            cur: 0,
            done: false,
        }
    }
}

impl Iterator for Submasks {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        let cur = self.cur;
        if cur == self.m {
            self.done = true;
        } else {
            self.cur = (cur.wrapping_sub(self.m)) & self.m;
        }
        Some(cur)
    }
}

/// Binomial coefficient computed in u128 to avoid overflow in the ranges we
/// enumerate (n <= 63).
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// splitmix64: small deterministic generator for seeded simulation and
/// sampling. Stable across platforms and releases, unlike external RNG crates.
#[derive(Debug, Clone)]
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound` (bound > 0); modulo bias is irrelevant at
    /// the board sizes simulated here.
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        self.next_u64() % bound
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mask_combinations_count_and_order() {
        let got: Vec<u64> = MaskCombinations::new(4, 2).collect();
        assert_eq!(got, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        for n in 0..=10u32 {
            for k in 0..=n {
                let v: Vec<u64> = MaskCombinations::new(n, k).collect();
                assert_eq!(v.len() as u128, binomial(n as u64, k as u64));
                assert!(v.windows(2).all(|w| w[0] < w[1]));
                assert!(v.iter().all(|m| m.count_ones() == k));
            }
        }
    }

    #[test]
    fn submasks_cover_all_subsets_in_order() {
        let got: Vec<u64> = Submasks::new(0b1010).collect();
        assert_eq!(got, vec![0b0000, 0b0010, 0b1000, 0b1010]);
        assert_eq!(Submasks::new(0).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn scatter_then_mask_roundtrip() {
        assert_eq!(scatter(0b101, 0b11010), 0b10010);
        assert_eq!(scatter(0b11, 0b0011), 0b0011);
        assert_eq!(scatter(0, 0b1111), 0);
    }

    #[test]
    fn remove_bit_closes_gap() {
        assert_eq!(remove_bit(0b1101, 1), 0b111);
        assert_eq!(remove_bit(0b1101, 0), 0b110);
        assert_eq!(remove_bit(0b1101, 3), 0b101);
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(12, 7), 792);
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(63, 31), 916312070471295267);
    }
}
