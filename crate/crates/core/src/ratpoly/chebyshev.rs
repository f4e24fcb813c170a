use super::poly::Poly;

fn recurrence(k: u32, first: Poly) -> Poly {
    let two_x = Poly::from_ints(&[0, 2]);
    let (mut prev, mut cur) = (Poly::one(), first);
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = &(&two_x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `T_k` with `cos(kx) = T_k(cos x)`.
pub fn chebyshev_first(k: u32) -> Poly {
    recurrence(k, Poly::x())
}

/// `U_k` with `sin((k+1)x) = sin(x) U_k(cos x)`.
pub fn chebyshev_second(k: u32) -> Poly {
    recurrence(k, Poly::from_ints(&[0, 2]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_orders() {
        assert_eq!(chebyshev_first(0), Poly::one());
        assert_eq!(chebyshev_first(2), Poly::from_ints(&[-1, 0, 2]));
        assert_eq!(chebyshev_first(3), Poly::from_ints(&[0, -3, 0, 4]));
        assert_eq!(chebyshev_second(0), Poly::one());
        assert_eq!(chebyshev_second(1), Poly::from_ints(&[0, 2]));
        assert_eq!(chebyshev_second(2), Poly::from_ints(&[-1, 0, 4]));
    }

    #[test]
    fn t3_at_cos_point_seven() {
        let th: f64 = 0.7;
        let v = chebyshev_first(3).eval_f64(th.cos());
        assert!((v - (3.0 * th).cos()).abs() < 1e-14);
    }

    #[test]
    fn floating_cross_check() {
        for &th in &[0.3f64, 0.7, 1.1, 2.9] {
            for k in 0..=12u32 {
                let c = chebyshev_first(k).eval_f64(th.cos());
                assert!((c - (k as f64 * th).cos()).abs() < 1e-12, "T_{k} at {th}");
                let s = th.sin() * chebyshev_second(k).eval_f64(th.cos());
                assert!((s - ((k + 1) as f64 * th).sin()).abs() < 1e-12, "U_{k} at {th}");
            }
        }
    }
}
