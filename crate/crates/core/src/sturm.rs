//! Sturm chains and exact real-root counting.
//!
//! Chains are always built on the square-free part of the input, so every
//! count in this module is a count of *distinct* real roots.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ratpoly::{int, rat, squarefree_part, Poly, Rational};
use crate::reduce::TInterval;

/// Evaluation point for sign variations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point {
    NegInf,
    At(Rational),
    PosInf,
}

/// `p0 = sqfree(p)`, `p1 = p0'`, `p_{i+1} = -rem(p_{i-1}, p_i)`, each member
/// rescaled by a positive constant to a primitive integer polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmChain {
    polys: Vec<Poly>,
    source: Poly,
}

/// Sign of `p` at a point, as `-1`, `0` or `1`.
pub fn sign_at(p: &Poly, at: &Point) -> i8 {
    match at {
        Point::NegInf => p.sign_at_neg_inf(),
        Point::PosInf => p.sign_at_pos_inf(),
        Point::At(r) => match p.sign_at(r) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        },
    }
}

/// Number of sign changes along a sequence, zeros skipped.
pub fn count_variations(signs: impl IntoIterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in signs.into_iter().filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

pub fn build_chain(p: &Poly) -> Result<SturmChain> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(SturmChain {
            polys: vec![p.primitive().1],
            source: p.clone(),
        });
    }
    let p0 = squarefree_part(p)?.primitive().1;
    let p1 = p0.derivative().primitive().1;
    let mut polys = vec![p0, p1];
    loop {
        let n = polys.len();
        let r = polys[n - 2].rem(&polys[n - 1])?;
        if r.is_zero() {
            break;
        }
        polys.push((-r).primitive().1);
    }
    Ok(SturmChain {
        polys,
        source: p.clone(),
    })
}

impl SturmChain {
    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn source(&self) -> &Poly {
        &self.source
    }

    /// The square-free polynomial whose roots the chain counts.
    pub fn head(&self) -> &Poly {
        &self.polys[0]
    }

    pub fn sign_variations(&self, at: &Point) -> usize {
        sign_variations(self, at)
    }

    /// Distinct roots in `(a, b]` (Sturm's theorem), `a < b`.
    pub fn count_half_open(&self, a: &Point, b: &Point) -> usize {
        self.sign_variations(a).saturating_sub(self.sign_variations(b))
    }

    /// Distinct roots in `iv`, honoring its open/closed endpoints.
    pub fn count_in(&self, iv: &TInterval) -> usize {
        let a = iv.lo.clone().map_or(Point::NegInf, Point::At);
        let b = iv.hi.clone().map_or(Point::PosInf, Point::At);
        let mut n = self.count_half_open(&a, &b);
        let head = self.head();
        if let (Some(lo), true) = (&iv.lo, iv.lo_closed) {
            if head.eval(lo).is_zero() {
                n += 1;
            }
        }
        if let (Some(hi), false) = (&iv.hi, iv.hi_closed) {
            if head.eval(hi).is_zero() {
                n -= 1;
            }
        }
        n
    }
}

pub fn sign_variations(chain: &SturmChain, at: &Point) -> usize {
    count_variations(chain.polys.iter().map(|p| sign_at(p, at)))
}

/// Number of distinct real roots of `p` in `iv`.
pub fn count_roots(p: &Poly, iv: &TInterval) -> Result<usize> {
    Ok(build_chain(p)?.count_in(iv))
}

/// Closed interval `[lo, hi]` holding exactly one distinct root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl IsolatingInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn as_interval(&self) -> TInterval {
        TInterval {
            lo: Some(self.lo.clone()),
            hi: Some(self.hi.clone()),
            lo_closed: true,
            hi_closed: true,
            exact: true,
        }
    }
}

/// `2^-20`.
pub fn default_isolation_width() -> Rational {
    Rational::new(1.into(), num_bigint::BigInt::from(1u64 << 20))
}

/// Disjoint isolating intervals, one per distinct real root of `p` in `iv`,
/// in increasing order, each of width at most `width`.
///
/// Infinite endpoints are replaced by the Cauchy bound. Roots sitting on a
/// closed endpoint of `iv` come back as degenerate intervals `[r, r]`.
pub fn isolate_roots(p: &Poly, iv: &TInterval, width: &Rational) -> Result<Vec<IsolatingInterval>> {
    let chain = build_chain(p)?;
    Ok(isolate_with_chain(&chain, iv, width))
}

pub fn isolate_with_chain(chain: &SturmChain, iv: &TInterval, width: &Rational) -> Vec<IsolatingInterval> {
    let head = chain.head();
    let mut out = Vec::new();
    if head.is_constant() {
        return out;
    }
    let bound = head.cauchy_bound();
    let neg_bound = -bound.clone();
    // Endpoints beyond the bound hold no roots and are replaced by it.
    let (mut lo, lo_real) = match &iv.lo {
        Some(l) if *l > neg_bound => (l.clone(), true),
        _ => (neg_bound, false),
    };
    let (mut hi, hi_real) = match &iv.hi {
        Some(h) if *h < bound => (h.clone(), true),
        _ => (bound, false),
    };
    if lo >= hi {
        return out;
    }
    let count = |a: &Rational, b: &Rational| chain.count_half_open(&Point::At(a.clone()), &Point::At(b.clone()));

    if lo_real && head.eval(&lo).is_zero() {
        if iv.lo_closed {
            out.push(IsolatingInterval {
                lo: lo.clone(),
                hi: lo.clone(),
            });
        }
        lo = shrink_from(head, &lo, &hi, |a, b| count(a, b) == 0);
    }
    let mut hi_root = None;
    if hi_real && head.eval(&hi).is_zero() {
        if iv.hi_closed {
            hi_root = Some(hi.clone());
        }
        // roots in [h', hi) must be none: (h', hi] holds only hi itself
        hi = shrink_from(head, &hi, &lo, |b, a| count(a, b) == 1);
    }

    let mut stack = vec![(lo, hi)];
    while let Some((a, b)) = stack.pop() {
        let n = count(&a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 && &(&b - &a) <= width {
            out.push(IsolatingInterval { lo: a, hi: b });
            continue;
        }
        let mid = split_point(head, &a, &b);
        stack.push((mid.clone(), b));
        stack.push((a, mid));
    }
    if let Some(r) = hi_root {
        out.push(IsolatingInterval { lo: r.clone(), hi: r });
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Moves from a root endpoint `from` toward `to` until `ok(from, candidate)`
/// holds and the candidate is not a root.
fn shrink_from(head: &Poly, from: &Rational, to: &Rational, ok: impl Fn(&Rational, &Rational) -> bool) -> Rational {
    let mut step = (to - from) / int(2);
    loop {
        let cand = from + &step;
        if !head.eval(&cand).is_zero() && ok(from, &cand) {
            return cand;
        }
        step /= int(2);
    }
}

/// A point strictly inside `(a, b)` that is not a root of `head`, close to the midpoint.
fn split_point(head: &Poly, a: &Rational, b: &Rational) -> Rational {
    let w = b - a;
    let mut k = 2i64;
    loop {
        for num in [1, k - 1] {
            let cand = a + &w * rat(num, k);
            if !head.eval(&cand).is_zero() {
                return cand;
            }
        }
        k += 1;
    }
}

/// Refines an isolating interval of a root of `chain.head()` by bisection
/// until its width is at most `width`.
pub fn refine(chain: &SturmChain, iv: &IsolatingInterval, width: &Rational) -> IsolatingInterval {
    let head = chain.head();
    let (mut a, mut b) = (iv.lo.clone(), iv.hi.clone());
    if a == b {
        return iv.clone();
    }
    // closed interval with one root: make the low end a non-root
    if head.eval(&a).is_zero() {
        return IsolatingInterval { lo: a.clone(), hi: a };
    }
    if head.eval(&b).is_zero() {
        return IsolatingInterval { lo: b.clone(), hi: b };
    }
    while &(&b - &a) > width {
        let mid = (&a + &b) / int(2);
        if head.eval(&mid).is_zero() {
            return IsolatingInterval { lo: mid.clone(), hi: mid };
        }
        if chain.count_half_open(&Point::At(a.clone()), &Point::At(mid.clone())) == 1 {
            b = mid;
        } else {
            a = mid;
        }
    }
    IsolatingInterval { lo: a, hi: b }
}
