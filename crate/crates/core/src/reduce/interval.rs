//! Angles, algebraic-domain intervals, and the exact transport of an
//! `x`-interval to `T = tan(x/2)` or `X = cos x`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratpoly::text::parse_rational;
use crate::ratpoly::{int, rat, rational_from_f64, rational_to_f64, Rational};

/// Relative slack added when an endpoint has no exact rational value.
pub const ENDPOINT_SLACK: f64 = 1e-12;

/// The angle `q * pi`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AngleSpec {
    pub q: Rational,
}

impl AngleSpec {
    pub fn new(q: Rational) -> Self {
        AngleSpec { q }
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.q) * core::f64::consts::PI
    }
}

impl fmt::Display for AngleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            f.write_str("0")
        } else if self.q.is_one() {
            f.write_str("pi")
        } else if self.q == -Rational::one() {
            f.write_str("-pi")
        } else {
            write!(f, "{}*pi", self.q)
        }
    }
}

/// Interval of the real line, possibly unbounded. `None` endpoints are
/// `-inf` (low) and `+inf` (high) and are always open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TInterval {
    pub lo: Option<Rational>,
    pub hi: Option<Rational>,
    pub lo_closed: bool,
    pub hi_closed: bool,
    /// False when an endpoint was rounded from an irrational value.
    pub exact: bool,
}

impl TInterval {
    pub fn new(lo: Option<Rational>, hi: Option<Rational>, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        if let (Some(a), Some(b)) = (&lo, &hi) {
            if a >= b {
                return Err(Error::InvalidInterval(format!("empty interval: {a} >= {b}")));
            }
        }
        Ok(TInterval {
            lo_closed: lo_closed && lo.is_some(),
            hi_closed: hi_closed && hi.is_some(),
            lo,
            hi,
            exact: true,
        })
    }

    pub fn closed(lo: Rational, hi: Rational) -> Result<Self> {
        TInterval::new(Some(lo), Some(hi), true, true)
    }

    pub fn whole_line() -> Self {
        TInterval {
            lo: None,
            hi: None,
            lo_closed: false,
            hi_closed: false,
            exact: true,
        }
    }

    pub fn interior(&self) -> TInterval {
        TInterval {
            lo_closed: false,
            hi_closed: false,
            ..self.clone()
        }
    }

    pub fn contains(&self, t: &Rational) -> bool {
        let above = match &self.lo {
            None => true,
            Some(a) => t > a || (self.lo_closed && t == a),
        };
        let below = match &self.hi {
            None => true,
            Some(b) => t < b || (self.hi_closed && t == b),
        };
        above && below
    }
}

impl fmt::Display for TInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.lo_closed { "[" } else { "(" })?;
        match &self.lo {
            Some(a) => write!(f, "{a}")?,
            None => f.write_str("-inf")?,
        }
        f.write_str(", ")?;
        match &self.hi {
            Some(b) => write!(f, "{b}")?,
            None => f.write_str("+inf")?,
        }
        f.write_str(if self.hi_closed { "]" } else { ")" })
    }
}

/// Direction for endpoints that cannot be represented exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rounding {
    /// Enlarge the interval: sound for proving nonnegativity.
    Outward,
    /// Shrink the interval: sound for exhibiting violations.
    Inward,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Dir {
    Down,
    Up,
}

impl Rounding {
    fn lo(self) -> Dir {
        match self {
            Rounding::Outward => Dir::Down,
            Rounding::Inward => Dir::Up,
        }
    }
    fn hi(self) -> Dir {
        match self {
            Rounding::Outward => Dir::Up,
            Rounding::Inward => Dir::Down,
        }
    }
}

fn widen(v: f64, scale: f64, dir: Dir) -> Rational {
    let delta = ENDPOINT_SLACK * scale.max(1.0);
    let w = match dir {
        Dir::Down => v - delta,
        Dir::Up => v + delta,
    };
    rational_from_f64(w).expect("finite endpoint")
}

/// `tan(q pi / 2)` for `-1 < q < 1`, exact when `q` is `-1/2`, `0` or `1/2`.
fn tan_half_angle(q: &Rational, dir: Dir) -> (Rational, bool) {
    let half = rat(1, 2);
    if q.is_zero() {
        return (int(0), true);
    }
    if q.abs() == half {
        return (q.signum() * int(1), true);
    }
    let pi_2 = core::f64::consts::FRAC_PI_2;
    let t = if q.abs() < half {
        libm::tan(rational_to_f64(q) * pi_2)
    } else {
        // cot of the complementary angle keeps full relative accuracy near pi/2
        let comp = Rational::one() - q.abs();
        let v = 1.0 / libm::tan(rational_to_f64(&comp) * pi_2);
        if q.is_negative() {
            -v
        } else {
            v
        }
    };
    (widen(t, t.abs(), dir), false)
}

/// `cos(q pi)` for `0 <= q <= 1`, exact on `{0, 1/3, 1/2, 2/3, 1}`, clamped to `[-1, 1]`.
fn cos_pi(q: &Rational, dir: Dir) -> (Rational, bool) {
    let exact = [
        (int(0), int(1)),
        (rat(1, 3), rat(1, 2)),
        (rat(1, 2), int(0)),
        (rat(2, 3), rat(-1, 2)),
        (int(1), int(-1)),
    ];
    if let Some((_, v)) = exact.iter().find(|(k, _)| k == q) {
        return (v.clone(), true);
    }
    let c = libm::cos(rational_to_f64(q) * core::f64::consts::PI);
    let v = widen(c, 1.0, dir);
    (v.clamp(int(-1), int(1)), false)
}

/// Image of an `x`-interval under `T = tan(x/2)`: at most two pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XImage {
    pub pieces: Vec<TInterval>,
    /// Whether some odd multiple of `pi` lies in the `x`-interval. Those
    /// points have no `T` image and must be checked separately.
    pub includes_pi: bool,
}

fn floor_div2(q: &Rational) -> Rational {
    // floor((q + 1) / 2)
    Rational::from_integer(((q + Rational::one()) / int(2)).floor().to_integer())
}

/// Image of `[a pi, b pi]` under `T = tan(x/2)`.
///
/// The interval is first reduced modulo `2 pi` so that it starts in
/// `[-pi, pi)`; if it then crosses `pi` it is split there, with the part past
/// `pi` shifted back by one period. Spans of a full period or more map to
/// the whole `T` line. Endpoints `q` in `{-1/2, 0, 1/2}` (mod 2) are exact;
/// others are rounded in the requested direction.
pub fn map_x_interval(a: &AngleSpec, b: &AngleSpec, rounding: Rounding) -> Result<XImage> {
    if a.q >= b.q {
        return Err(Error::InvalidInterval(format!("{a} >= {b}")));
    }
    if &b.q - &a.q >= int(2) {
        return Ok(XImage {
            pieces: alloc::vec![TInterval::whole_line()],
            includes_pi: true,
        });
    }
    let k = floor_div2(&a.q) * int(2);
    let lo = &a.q - &k;
    let hi = &b.q - &k;
    let one = Rational::one();
    let minus_one = -Rational::one();
    let includes_pi = lo == minus_one || hi >= one;

    let piece = |from: &Rational, to: &Rational| -> TInterval {
        let (lo_v, lo_ex) = if *from == minus_one {
            (None, true)
        } else {
            let (v, e) = tan_half_angle(from, rounding.lo());
            (Some(v), e)
        };
        let (hi_v, hi_ex) = if *to == one {
            (None, true)
        } else {
            let (v, e) = tan_half_angle(to, rounding.hi());
            (Some(v), e)
        };
        TInterval {
            lo_closed: lo_v.is_some(),
            hi_closed: hi_v.is_some(),
            lo: lo_v,
            hi: hi_v,
            exact: lo_ex && hi_ex,
        }
    };

    let mut pieces = Vec::new();
    if hi <= one {
        pieces.push(piece(&lo, &hi));
    } else {
        pieces.push(piece(&lo, &one));
        pieces.push(piece(&minus_one, &(&hi - int(2))));
    }
    // Inward rounding can collapse a sliver to nothing.
    pieces.retain(|p| match (&p.lo, &p.hi) {
        (Some(l), Some(h)) => l < h,
        _ => true,
    });
    Ok(XImage {
        pieces,
        includes_pi,
    })
}

/// Image `[cos(b pi), cos(a pi)]` of `[a pi, b pi]` under `X = cos x`, for
/// `0 <= a < b <= 1`.
pub fn map_x_interval_cosine(a: &AngleSpec, b: &AngleSpec, rounding: Rounding) -> Result<TInterval> {
    if a.q.is_negative() || b.q > Rational::one() || a.q >= b.q {
        return Err(Error::InvalidInterval(format!(
            "cosine transport needs 0 <= a < b <= 1, got [{a}, {b}]"
        )));
    }
    let (lo, lo_ex) = cos_pi(&b.q, rounding.lo());
    let (hi, hi_ex) = cos_pi(&a.q, rounding.hi());
    if lo >= hi {
        return Err(Error::InvalidInterval(format!("[{a}, {b}] is narrower than the rounding slack")));
    }
    Ok(TInterval {
        lo: Some(lo),
        hi: Some(hi),
        lo_closed: true,
        hi_closed: true,
        exact: lo_ex && hi_ex,
    })
}

/// An interval as written on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntervalSpec {
    Angles(AngleSpec, AngleSpec),
    T(TInterval),
}

/// Parses `"a,b"` where each endpoint is an angle (`0`, `pi`, `-pi`, `pi/2`,
/// `2*pi/3`, `3/4*pi`, ...) or, for both endpoints, a raw `T=` value
/// (`T=0,T=inf`).
pub fn parse_interval(text: &str) -> Result<IntervalSpec> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| Error::InvalidInterval(format!("expected `a,b`, got `{text}`")))?;
    let (a, b) = (a.trim(), b.trim());
    match (a.strip_prefix("T="), b.strip_prefix("T=")) {
        (Some(ta), Some(tb)) => {
            let lo = parse_t_value(ta, true)?;
            let hi = parse_t_value(tb, false)?;
            Ok(IntervalSpec::T(TInterval::new(lo, hi, true, true)?))
        }
        (None, None) => {
            let qa = parse_angle(a)?;
            let qb = parse_angle(b)?;
            if qa >= qb {
                return Err(Error::InvalidInterval(format!("`{a}` is not below `{b}`")));
            }
            Ok(IntervalSpec::Angles(AngleSpec::new(qa), AngleSpec::new(qb)))
        }
        _ => Err(Error::InvalidInterval(
            "both endpoints must be angles or both `T=` values".into(),
        )),
    }
}

fn parse_t_value(s: &str, is_lo: bool) -> Result<Option<Rational>> {
    let s = s.trim();
    match (s, is_lo) {
        ("-inf", true) => Ok(None),
        ("inf" | "+inf", false) => Ok(None),
        ("-inf", false) | ("inf" | "+inf", true) => Err(Error::InvalidInterval(format!(
            "infinite endpoint `{s}` on the wrong side"
        ))),
        _ => parse_rational(s)
            .map(Some)
            .ok_or_else(|| Error::InvalidInterval(format!("bad T value `{s}`"))),
    }
}

fn parse_angle(s: &str) -> Result<Rational> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::InvalidInterval(format!("bad angle `{s}`; use a rational multiple of pi"));
    let Some(idx) = compact.find("pi") else {
        let v = parse_rational(&compact).ok_or_else(bad)?;
        return if v.is_zero() { Ok(v) } else { Err(bad()) };
    };
    let (prefix, suffix) = (&compact[..idx], &compact[idx + 2..]);
    let coeff = match prefix {
        "" | "+" => Rational::one(),
        "-" => -Rational::one(),
        p => parse_rational(p.strip_suffix('*').ok_or_else(bad)?).ok_or_else(bad)?,
    };
    let divisor = match suffix {
        "" => Rational::one(),
        s => {
            let d = parse_rational(s.strip_prefix('/').ok_or_else(bad)?).ok_or_else(bad)?;
            if d.is_zero() || !d.is_integer() {
                return Err(bad());
            }
            d
        }
    };
    Ok(coeff / divisor)
}

/// The angle in `[0, pi]` whose cosine is `x`.
pub(crate) fn acos_f64(x: &Rational) -> f64 {
    libm::acos(rational_to_f64(x).clamp(-1.0, 1.0))
}

/// Shifts `x` by whole periods to the first representative `>= start`.
pub(crate) fn shift_into(x: f64, start: f64) -> f64 {
    let tau = core::f64::consts::TAU;
    let k = libm::ceil((start - x) / tau - 1e-12);
    x + k * tau
}
