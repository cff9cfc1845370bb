//! Elliptic curves over the rationals and their traces of Frobenius.
//!
//! `a_p = p + 1 - #E(F_p)` is computed three ways:
//! * [`count_points_enumerate`]: every `(x, y)` on the long model, any `p`;
//! * [`ec_count_points_naive`]: Legendre-symbol sum on the short model;
//! * [`ec_ap_bsgs`]: baby-step/giant-step search for the group order in the
//!   Hasse interval, with a quadratic-twist fallback (Mestre).
//!
//! [`ap`] dispatches between them by size of `p`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modp::ModP;
use crate::primes::isqrt;

/// Primes at or below this use the naive count; above it, BSGS.
pub const BSGS_CROSSOVER: u64 = 229;

/// Default cost guard for [`ec_count_points_naive`].
pub const NAIVE_LIMIT: u64 = 100_000;

/// Random points tried per curve (and per twist) before giving up.
const BSGS_ATTEMPTS: usize = 24;

/// Long Weierstrass model `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    pub a4: i64,
    pub a6: i64,
    pub conductor: u64,
    pub label: String,
}

/// Standard invariants `b2, b4, b6, b8, c4, c6, Δ` of a long model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Invariants {
    pub b2: i128,
    pub b4: i128,
    pub b6: i128,
    pub b8: i128,
    pub c4: i128,
    pub c6: i128,
    pub disc: i128,
}

fn overflow() -> Error {
    Error::InvalidInput("Weierstrass coefficients too large for 128-bit invariants".into())
}

macro_rules! ck {
    ($e:expr) => {
        $e.ok_or_else(overflow)?
    };
}

impl CurveSpec {
    /// Validates nonsingularity and a positive conductor.
    pub fn new(coeffs: [i64; 5], conductor: u64, label: impl Into<String>) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = coeffs;
        let curve = Self { a1, a2, a3, a4, a6, conductor, label: label.into() };
        if conductor == 0 {
            return Err(Error::InvalidInput("conductor must be positive".into()));
        }
        if curve.invariants()?.disc == 0 {
            return Err(Error::InvalidInput(format!(
                "curve {:?} is singular (discriminant 0)",
                curve.coefficients()
            )));
        }
        Ok(curve)
    }

    pub fn coefficients(&self) -> [i64; 5] {
        [self.a1, self.a2, self.a3, self.a4, self.a6]
    }

    pub fn invariants(&self) -> Result<Invariants> {
        let [a1, a2, a3, a4, a6] = self.coefficients().map(i128::from);
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = ck!((a1 * a1 * a6)
            .checked_add(4 * a2 * a6)
            .and_then(|v| v.checked_sub(a1 * a3 * a4))
            .and_then(|v| v.checked_add(a2 * a3 * a3))
            .and_then(|v| v.checked_sub(a4 * a4)));
        let c4 = ck!(b2.checked_mul(b2).and_then(|v| v.checked_sub(24 * b4)));
        let b2_cubed = ck!(b2.checked_mul(b2).and_then(|v| v.checked_mul(b2)));
        let b2b4 = ck!(b2.checked_mul(b4).and_then(|t| t.checked_mul(36)));
        let c6 = ck!(b2_cubed
            .checked_neg()
            .and_then(|v| v.checked_add(b2b4))
            .and_then(|v| v.checked_sub(216 * b6)));
        let t1 = ck!(b2.checked_mul(b2).and_then(|v| v.checked_mul(b8)));
        let t2 = ck!(b4.checked_mul(b4).and_then(|v| v.checked_mul(b4)).and_then(|v| v.checked_mul(8)));
        let t3 = ck!(b6.checked_mul(b6).and_then(|v| v.checked_mul(27)));
        let t4 = ck!(b2.checked_mul(b4).and_then(|v| v.checked_mul(b6)).and_then(|v| v.checked_mul(9)));
        let disc = ck!(t1
            .checked_neg()
            .and_then(|v| v.checked_sub(t2))
            .and_then(|v| v.checked_sub(t3))
            .and_then(|v| v.checked_add(t4)));
        Ok(Invariants { b2, b4, b6, b8, c4, c6, disc })
    }

    /// True when `p` divides the conductor.
    pub fn is_bad_prime(&self, p: u64) -> bool {
        self.conductor.is_multiple_of(p)
    }

    fn check_good(&self, p: u64) -> Result<()> {
        if self.is_bad_prime(p) {
            return Err(Error::BadReduction { p, conductor: self.conductor });
        }
        Ok(())
    }

    /// Short model `y^2 = x^3 + A x + B` over `F_p` (`p > 3`), with
    /// `A = -27 c4`, `B = -54 c6`.
    pub fn short_model(&self, p: u64) -> Result<ShortCurve> {
        if p <= 3 {
            return Err(Error::SmallCharacteristic { p });
        }
        self.check_good(p)?;
        let inv = self.invariants()?;
        let f = ModP::new(p);
        let a = f.mul(f.from_i128(-27), f.from_i128(inv.c4));
        let b = f.mul(f.from_i128(-54), f.from_i128(inv.c6));
        let curve = ShortCurve { f, a, b };
        if curve.discriminant_is_zero() {
            return Err(Error::SingularModel { p });
        }
        Ok(curve)
    }
}

/// `y^2 = x^3 + a x + b` over `F_p`.
#[derive(Debug, Clone, Copy)]
pub struct ShortCurve {
    f: ModP,
    a: u64,
    b: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Point {
    Infinity,
    Affine(u64, u64),
}

impl ShortCurve {
    fn discriminant_is_zero(&self) -> bool {
        let f = &self.f;
        let a3 = f.mul(f.mul(self.a, self.a), self.a);
        let b2 = f.mul(self.b, self.b);
        f.add(f.mul(4, a3), f.mul(27, b2)) == 0
    }

    fn rhs(&self, x: u64) -> u64 {
        let f = &self.f;
        let x2 = f.mul(x, x);
        f.add(f.mul(f.add(x2, self.a), x), self.b)
    }

    /// Quadratic twist by a non-residue `d`: `y^2 = x^3 + a d^2 x + b d^3`.
    fn twist(&self) -> ShortCurve {
        let f = self.f;
        let mut d = 2;
        while f.legendre(d) != -1 {
            d += 1;
        }
        let d2 = f.mul(d, d);
        ShortCurve { f, a: f.mul(self.a, d2), b: f.mul(self.b, f.mul(d2, d)) }
    }

    fn add(&self, u: Point, v: Point) -> Point {
        let f = &self.f;
        let (x1, y1, x2, y2) = match (u, v) {
            (Point::Infinity, _) => return v,
            (_, Point::Infinity) => return u,
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if f.add(y1, y2) == 0 {
                return Point::Infinity;
            }
            let num = f.add(f.mul(3, f.mul(x1, x1)), self.a);
            f.mul(num, f.inv(f.add(y1, y1)).expect("y nonzero"))
        } else {
            f.mul(f.sub(y2, y1), f.inv(f.sub(x2, x1)).expect("distinct x"))
        };
        let x3 = f.sub(f.sub(f.mul(lambda, lambda), x1), x2);
        let y3 = f.sub(f.mul(lambda, f.sub(x1, x3)), y1);
        Point::Affine(x3, y3)
    }

    fn mul(&self, pt: Point, mut k: u64) -> Point {
        let mut acc = Point::Infinity;
        let mut base = pt;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    /// Deterministic point with `x >= start`, skipping 2-torsion.
    fn point_from(&self, start: u64) -> Option<(Point, u64)> {
        let p = self.f.modulus();
        (0..p).map(|i| (start + i) % p).find_map(|x| {
            let r = self.rhs(x);
            if r == 0 {
                return None;
            }
            self.f.sqrt(r).map(|y| (Point::Affine(x, y), x + 1))
        })
    }

    /// Exact order of `pt` given any positive multiple `n` of it.
    fn order_from_multiple(&self, pt: Point, n: u64) -> u64 {
        let mut order = n;
        let mut rest = n;
        let mut q = 2;
        while q * q <= rest {
            if rest.is_multiple_of(q) {
                while rest.is_multiple_of(q) {
                    rest /= q;
                }
                while order.is_multiple_of(q) && self.mul(pt, order / q) == Point::Infinity {
                    order /= q;
                }
            }
            q += 1;
        }
        if rest > 1 {
            let q = rest;
            while order.is_multiple_of(q) && self.mul(pt, order / q) == Point::Infinity {
                order /= q;
            }
        }
        order
    }

    /// A positive multiple of the order of `pt` found by baby steps
    /// `jP (0 < j <= m)` and giant steps `(lo + i m) P` over `[lo, hi]`.
    fn order_multiple(&self, pt: Point, lo: u64, hi: u64) -> Option<u64> {
        let width = hi - lo;
        let m = isqrt(width).max(1) + 1;
        let mut baby: HashMap<u64, (u64, u64)> = HashMap::with_capacity(m as usize);
        let mut cur = Point::Infinity;
        for j in 1..=m {
            cur = self.add(cur, pt);
            match cur {
                Point::Infinity => return Some(j),
                Point::Affine(x, y) => {
                    if let Some(&(j0, y0)) = baby.get(&x) {
                        // jP = ±j0 P
                        return Some(if y == y0 { j - j0 } else { j + j0 });
                    }
                    baby.insert(x, (j, y));
                }
            }
        }
        let step = cur; // m P
        let mut giant = self.mul(pt, lo);
        let mut base = lo;
        while base <= hi + m {
            match giant {
                Point::Infinity => {
                    if base > 0 {
                        return Some(base);
                    }
                }
                Point::Affine(x, y) => {
                    if let Some(&(j, yj)) = baby.get(&x) {
                        // base P = -jP  => (base + j) P = O;  base P = jP => (base - j) P = O
                        if yj == self.f.neg(y) {
                            return Some(base + j);
                        } else if base > j {
                            return Some(base - j);
                        }
                    }
                }
            }
            giant = self.add(giant, step);
            base += m;
        }
        None
    }

    fn naive_count(&self) -> u64 {
        let p = self.f.modulus();
        let mut is_square = vec![false; p as usize];
        for y in 1..p.div_ceil(2) {
            is_square[self.f.mul(y, y) as usize] = true;
        }
        let mut count: i64 = p as i64 + 1;
        for x in 0..p {
            let r = self.rhs(x);
            if r == 0 {
                continue;
            }
            count += if is_square[r as usize] { 1 } else { -1 };
        }
        count as u64
    }
}

/// Counts every affine solution of the long model over `F_p` plus the point
/// at infinity. Cost `O(p^2)`; intended for `p` in {2, 3} and as a check.
pub fn count_points_enumerate(curve: &CurveSpec, p: u64) -> Result<u64> {
    curve.check_good(p)?;
    let f = ModP::new(p);
    let r = |v: i64| f.from_i128(v as i128);
    let (a1, a2, a3, a4, a6) = (r(curve.a1), r(curve.a2), r(curve.a3), r(curve.a4), r(curve.a6));
    let mut count = 1;
    for x in 0..p {
        let x2 = f.mul(x, x);
        let rhs = f.add(f.add(f.add(f.mul(x2, x), f.mul(a2, x2)), f.mul(a4, x)), a6);
        for y in 0..p {
            let lhs = f.add(f.add(f.mul(y, y), f.mul(a1, f.mul(x, y))), f.mul(a3, y));
            if lhs == rhs {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// `#E(F_p)` from `p + 1 + Σ_x χ(x^3 + Ax + B)` on the short model.
pub fn ec_count_points_naive(curve: &CurveSpec, p: u64) -> Result<u64> {
    ec_count_points_naive_with_limit(curve, p, NAIVE_LIMIT)
}

pub fn ec_count_points_naive_with_limit(curve: &CurveSpec, p: u64, limit: u64) -> Result<u64> {
    let short = curve.short_model(p)?;
    if p >= limit {
        return Err(Error::CostGuard { p, limit });
    }
    Ok(short.naive_count())
}

/// `a_p` by baby-step/giant-step order search in the Hasse interval.
///
/// Points are drawn deterministically from the curve and its quadratic
/// twist. The least common multiple of the point orders found on each side
/// is grown until exactly one group order `N` in `[p+1-2√p, p+1+2√p]` is
/// divisible by the curve-side lcm while `2p+2-N` is divisible by the
/// twist-side lcm. For `p > 229` this always happens, so
/// [`Error::AmbiguousOrder`] there indicates a bug. For `p <= 229` a residual
/// ambiguity is settled by the character sum, and `p` in {2, 3} is counted by
/// enumeration of the long model.
pub fn ec_ap_bsgs(curve: &CurveSpec, p: u64) -> Result<i64> {
    if p <= 3 {
        return Ok(p as i64 + 1 - count_points_enumerate(curve, p)? as i64);
    }
    match bsgs_isolate(curve, p)? {
        Some(ap) => Ok(ap),
        None if p <= BSGS_CROSSOVER => Ok(p as i64 + 1 - ec_count_points_naive(curve, p)? as i64),
        None => Err(Error::AmbiguousOrder { p }),
    }
}

/// The order search alone, without any fallback. `Ok(None)` when the group
/// order was not isolated.
pub fn bsgs_isolate(curve: &CurveSpec, p: u64) -> Result<Option<i64>> {
    let short = curve.short_model(p)?;
    let twist = short.twist();
    let spread = isqrt(4 * p);
    let lo = p + 1 - spread;
    let hi = p + 1 + spread;

    struct Side {
        curve: ShortCurve,
        lcm: u64,
        next_x: u64,
        exhausted: bool,
    }
    let mut sides = [
        Side { curve: short, lcm: 1, next_x: 0, exhausted: false },
        Side { curve: twist, lcm: 1, next_x: 0, exhausted: false },
    ];
    for _ in 0..BSGS_ATTEMPTS {
        for idx in 0..2 {
            let side = &mut sides[idx];
            if side.exhausted {
                continue;
            }
            let Some((pt, next)) = side.curve.point_from(side.next_x) else {
                side.exhausted = true;
                continue;
            };
            side.next_x = next;
            let Some(multiple) = side.curve.order_multiple(pt, lo, hi) else {
                return Err(Error::AmbiguousOrder { p });
            };
            let order = side.curve.order_from_multiple(pt, multiple);
            side.lcm = lcm(side.lcm, order);
            if let Some(n) = joint_candidate(sides[0].lcm, sides[1].lcm, p, lo, hi) {
                return Ok(Some(p as i64 + 1 - n as i64));
            }
        }
        if sides.iter().all(|s| s.exhausted) {
            break;
        }
    }
    Ok(None)
}

/// The unique `N` in `[lo, hi]` with `l_curve | N` and `l_twist | 2p+2-N`.
fn joint_candidate(l_curve: u64, l_twist: u64, p: u64, lo: u64, hi: u64) -> Option<u64> {
    let total = 2 * p + 2;
    let ok = |n: u64| n.is_multiple_of(l_curve) && (total - n).is_multiple_of(l_twist);
    let mut found = None;
    if l_curve >= l_twist {
        let mut n = lo.div_ceil(l_curve) * l_curve;
        while n <= hi {
            if ok(n) {
                if found.is_some() {
                    return None;
                }
                found = Some(n);
            }
            n += l_curve;
        }
    } else {
        let tlo = total - hi;
        let thi = total - lo;
        let mut t = tlo.div_ceil(l_twist) * l_twist;
        while t <= thi {
            if ok(total - t) {
                if found.is_some() {
                    return None;
                }
                found = Some(total - t);
            }
            t += l_twist;
        }
    }
    found
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}


/// `a_p` for a good prime, choosing the cheapest correct method.
pub fn ap(curve: &CurveSpec, p: u64) -> Result<i64> {
    if p <= 3 {
        return Ok(p as i64 + 1 - count_points_enumerate(curve, p)? as i64);
    }
    if p <= BSGS_CROSSOVER {
        return Ok(p as i64 + 1 - ec_count_points_naive(curve, p)? as i64);
    }
    ec_ap_bsgs(curve, p)
}

/// A few standard curves (minimal models) used in tests and examples.
pub mod catalog {
    use super::CurveSpec;

    fn mk(c: [i64; 5], n: u64, label: &str) -> CurveSpec {
        CurveSpec::new(c, n, label).expect("catalog curve is nonsingular")
    }

    pub fn c11a1() -> CurveSpec {
        mk([0, -1, 1, -10, -20], 11, "11a1")
    }
    pub fn c37a1() -> CurveSpec {
        mk([0, 0, 1, -1, 0], 37, "37a1")
    }
    pub fn c389a1() -> CurveSpec {
        mk([0, 1, 1, -2, 0], 389, "389a1")
    }
    pub fn c5077a1() -> CurveSpec {
        mk([0, 0, 1, -7, 6], 5077, "5077a1")
    }
    /// `y^2 = x^3 - x`, CM by `Z[i]`.
    pub fn c32a() -> CurveSpec {
        mk([0, 0, 0, -1, 0], 32, "32a")
    }
}
