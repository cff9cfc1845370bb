//! Odd-only segmented sieve of Eratosthenes.
//!
//! Each segment is a bitmap over odd integers; base primes up to `sqrt(hi)`
//! are sieved once per [`PrimeRange`] iterator. Disjoint ranges are
//! independent, so callers may sieve them on separate threads.

use crate::error::{Error, Result};

/// Default segment size in bytes (1 MiB of bitmap, 16 Mi odd numbers).
pub const DEFAULT_SEGMENT_BYTES: usize = 1 << 20;

/// Closed range `[lo, hi]` of integers to enumerate primes in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeRange {
    lo: u64,
    hi: u64,
    segment_size: usize,
}

impl PrimeRange {
    pub fn new(lo: u64, hi: u64) -> Result<Self> {
        Self::with_segment_size(lo, hi, DEFAULT_SEGMENT_BYTES)
    }

    pub fn with_segment_size(lo: u64, hi: u64, segment_size: usize) -> Result<Self> {
        if segment_size == 0 {
            return Err(Error::InvalidInput("segment size must be positive".into()));
        }
        if hi < lo {
            return Err(Error::InvalidInput(format!("empty prime range [{lo}, {hi}]")));
        }
        Ok(Self { lo: lo.max(2), hi, segment_size })
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn iter(&self) -> PrimeIter {
        PrimeIter::new(*self)
    }
}

impl IntoIterator for PrimeRange {
    type Item = u64;
    type IntoIter = PrimeIter;

    fn into_iter(self) -> PrimeIter {
        PrimeIter::new(self)
    }
}

/// Floor of the square root, exact for all `u64`.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// Simple sieve for the base primes `<= n`.
fn small_primes(n: u64) -> Vec<u64> {
    let n = n as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Streaming iterator over the primes of a [`PrimeRange`], ascending.
pub struct PrimeIter {
    hi: u64,
    /// First odd number not yet sieved.
    next_odd: u64,
    segment_odds: u64,
    base: Vec<u64>,
    emit_two: bool,
    /// Odd numbers covered by the current segment start here.
    seg_start: u64,
    bits: Vec<u64>,
    seg_len: u64,
    cursor: u64,
    exhausted: bool,
}

impl PrimeIter {
    fn new(range: PrimeRange) -> Self {
        let base = small_primes(isqrt(range.hi));
        let first_odd = if range.lo <= 3 { 3 } else { range.lo | 1 };
        Self {
            hi: range.hi,
            next_odd: first_odd,
            segment_odds: (range.segment_size as u64) * 8,
            base,
            emit_two: range.lo <= 2 && range.hi >= 2,
            seg_start: first_odd,
            bits: Vec::new(),
            seg_len: 0,
            cursor: 0,
            exhausted: first_odd > range.hi,
        }
    }

    fn fill_segment(&mut self) -> bool {
        if self.next_odd > self.hi {
            return false;
        }
        let start = self.next_odd;
        let remaining = (self.hi - start) / 2 + 1;
        let len = remaining.min(self.segment_odds);
        let words = len.div_ceil(64) as usize;
        self.bits.clear();
        self.bits.resize(words, !0u64);
        // Last odd number in the segment.
        let end = start + 2 * (len - 1);
        for &q in self.base.iter().skip(1) {
            let sq = q * q;
            if sq > end {
                break;
            }
            // First odd multiple of q that is >= max(start, q^2).
            let mut m = if sq >= start {
                sq
            } else {
                let r = start.div_ceil(q) * q;
                if r % 2 == 0 {
                    r + q
                } else {
                    r
                }
            };
            while m <= end {
                let idx = (m - start) / 2;
                self.bits[(idx / 64) as usize] &= !(1u64 << (idx % 64));
                m += 2 * q;
            }
        }
        // 1 is not prime.
        if start == 1 {
            self.bits[0] &= !1;
        }
        self.seg_start = start;
        self.seg_len = len;
        self.cursor = 0;
        self.next_odd = end + 2;
        true
    }
}

impl Iterator for PrimeIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.emit_two {
            self.emit_two = false;
            return Some(2);
        }
        if self.exhausted {
            return None;
        }
        loop {
            while self.cursor < self.seg_len {
                let word_idx = (self.cursor / 64) as usize;
                let word = self.bits[word_idx] >> (self.cursor % 64);
                if word == 0 {
                    self.cursor = (word_idx as u64 + 1) * 64;
                    continue;
                }
                self.cursor += word.trailing_zeros() as u64;
                if self.cursor >= self.seg_len {
                    break;
                }
                let p = self.seg_start + 2 * self.cursor;
                self.cursor += 1;
                return Some(p);
            }
            if !self.fill_segment() {
                self.exhausted = true;
                return None;
            }
        }
    }
}

/// All primes in `[lo, hi]`, ascending.
pub fn primes_in(range: PrimeRange) -> PrimeIter {
    range.iter()
}

/// Primes `<= x` collected into a vector.
pub fn primes_up_to(x: u64) -> Vec<u64> {
    if x < 2 {
        return Vec::new();
    }
    PrimeRange::new(2, x).expect("valid range").iter().collect()
}

/// pi(x), the number of primes `<= x`.
pub fn prime_count(x: u64) -> u64 {
    if x < 2 {
        return 0;
    }
    let range = PrimeRange::new(2, x).expect("valid range");
    let mut it = range.iter();
    let mut count = 0u64;
    // Count whole segments by popcount instead of iterating bit by bit.
    if it.emit_two {
        it.emit_two = false;
        count += 1;
    }
    while it.fill_segment() {
        let full = (it.seg_len / 64) as usize;
        count += it.bits[..full].iter().map(|w| w.count_ones() as u64).sum::<u64>();
        let tail = it.seg_len % 64;
        if tail > 0 {
            count += (it.bits[full] & ((1u64 << tail) - 1)).count_ones() as u64;
        }
    }
    count
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
