//! Closed forms for invariants of iterated subdivisions, transcribed term by
//! term as they were published. Nothing here is corrected; several of these
//! disagree with the spectral reference values and that disagreement is what
//! the verification report records.
//!
//! Inputs are the base graph's `Kf*`/`Ke`/`ln tau`, its `n` and `m`, the
//! branch count `k` and the iteration count `r >= 1`.

use crate::{Error, Result};

fn pow(x: f64, e: usize) -> f64 {
    x.powi(e as i32)
}

/// `S_k^r`, `k > 2`:
/// `(8k)^r Kf* + (2k)^r (4^r - 1)(m - 2mn)/3 + k(4k)^r (k^r - 2^r) m^2/(k - 2)
///  - k(2k)^r [4^r - 2k(4^r - 1) + 3(2k)^r - 4] m^2 / (3(k - 2)(2k - 1))`.
pub fn kf_star_sk_closed(kf: f64, n: usize, m: usize, k: usize, r: usize) -> Result<f64> {
    if k <= 2 {
        return Err(Error::UnsupportedK {
            k,
            reason: "general S_k closed form has a (k - 2) denominator",
        });
    }
    let (n, m, k) = (n as f64, m as f64, k as f64);
    let four_r = pow(4.0, r);
    let two_k_r = pow(2.0 * k, r);
    Ok(pow(8.0 * k, r) * kf + two_k_r * (four_r - 1.0) / 3.0 * (m - 2.0 * m * n)
        + k * pow(4.0 * k, r) * (pow(k, r) - pow(2.0, r)) / (k - 2.0) * m * m
        - k * two_k_r * (four_r - 2.0 * k * (four_r - 1.0) + 3.0 * two_k_r - 4.0)
            / (3.0 * (k - 2.0) * (2.0 * k - 1.0))
            * m
            * m)
}

/// `S_1`, one step: `8 Kf* + 2m(1 + 2m - 2n)`.
pub fn kf_star_s1_step(kf: f64, n: usize, m: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    8.0 * kf + 2.0 * m * (1.0 + 2.0 * m - 2.0 * n)
}

/// `S_2^r`: `16^r Kf* + 4^r(4^r - 1)m/3 - 2*4^r(4^r - 1)mn/3 + 2*4^r[2(4^r - 1) + 3r 4^r] m^2/9`.
pub fn kf_star_s2_closed(kf: f64, n: usize, m: usize, r: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    let f = pow(4.0, r);
    pow(16.0, r) * kf + f * (f - 1.0) / 3.0 * m - 2.0 * f * (f - 1.0) / 3.0 * m * n
        + 2.0 * f * (2.0 * (f - 1.0) + 3.0 * r as f64 * f) / 9.0 * m * m
}

/// Published `Kf*(S_k^r)` for any `k`: the general closed form for `k > 2`,
/// the `k = 2` closed form, and the `k = 1` one-step form applied `r` times.
pub fn kf_star_sk(kf: f64, n: usize, m: usize, k: usize, r: usize) -> f64 {
    match k {
        0 => f64::NAN,
        1 => {
            let (mut kf, mut n, mut m) = (kf, n, m);
            for _ in 0..r {
                kf = kf_star_s1_step(kf, n, m);
                n += m;
                m *= 2;
            }
            kf
        }
        2 => kf_star_s2_closed(kf, n, m, r),
        _ => kf_star_sk_closed(kf, n, m, k, r).expect("k > 2"),
    }
}

/// `S_k` one step: `4 Ke + (1 + 2km - 2n)/2`.
pub fn kemeny_sk_step(ke: f64, n: usize, m: usize, k: usize) -> f64 {
    let km = (k * m) as f64;
    4.0 * ke + 0.5 * (1.0 + 2.0 * km - 2.0 * n as f64)
}

/// `S_k^r`, `k > 2`:
/// `4^r Ke + (4^r - 1)(1 - 2n)/6 + 2^(r-1) k (k^r - 2^r) m/(k - 2)
///  - k[4^r - 2k(4^r - 1) + 3(2k)^r - 4] m / (6(k - 2)(2k - 1))`.
pub fn kemeny_sk_closed(ke: f64, n: usize, m: usize, k: usize, r: usize) -> Result<f64> {
    if k <= 2 {
        return Err(Error::UnsupportedK {
            k,
            reason: "general S_k closed form has a (k - 2) denominator",
        });
    }
    let (n, m, k) = (n as f64, m as f64, k as f64);
    let four_r = pow(4.0, r);
    Ok(four_r * ke + (four_r - 1.0) / 6.0 * (1.0 - 2.0 * n)
        + pow(2.0, r) / 2.0 * k * (pow(k, r) - pow(2.0, r)) / (k - 2.0) * m
        - k * (four_r - 2.0 * k * (four_r - 1.0) + 3.0 * pow(2.0 * k, r) - 4.0) / (6.0 * (k - 2.0) * (2.0 * k - 1.0))
            * m)
}

/// `S_2^r`: `4^r Ke + (4^r - 1)(1 - 2n)/6 + [2(4^r - 1) + 3r 4^r] m/9`.
pub fn kemeny_s2_closed(ke: f64, n: usize, m: usize, r: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    let f = pow(4.0, r);
    f * ke + (f - 1.0) / 6.0 * (1.0 - 2.0 * n) + (2.0 * (f - 1.0) + 3.0 * r as f64 * f) / 9.0 * m
}

/// Published `Ke(S_k^r)` for any `k`; `k = 1` iterates the one-step form.
pub fn kemeny_sk(ke: f64, n: usize, m: usize, k: usize, r: usize) -> f64 {
    match k {
        0 => f64::NAN,
        1 => {
            let (mut ke, mut n, mut m) = (ke, n, m);
            for _ in 0..r {
                ke = kemeny_sk_step(ke, n, m, 1);
                n += m;
                m *= 2;
            }
            ke
        }
        2 => kemeny_s2_closed(ke, n, m, r),
        _ => kemeny_sk_closed(ke, n, m, k, r).expect("k > 2"),
    }
}

/// `ln tau(S_k^r)` from
/// `tau = 2^(km (1 - (2k)^r)/(1 - 2k) - r) * k^(nr + km((2k)^r - 2kr + r - 1)/(1 - 2k)^2 - r) * tau(G)`.
pub fn log_tau_sk(log_tau: f64, n: usize, m: usize, k: usize, r: usize) -> f64 {
    let (n, m, k, r) = (n as f64, m as f64, k as f64, r as f64);
    let two_k_r = (2.0 * k).powf(r);
    let exp2 = k * m * (1.0 - two_k_r) / (1.0 - 2.0 * k) - r;
    let expk = n * r + k * m * (two_k_r - 2.0 * k * r + r - 1.0) / (1.0 - 2.0 * k).powi(2) - r;
    exp2 * std::f64::consts::LN_2 + expk * k.ln() + log_tau
}

/// `S_2k` one step: `27k Kf* + 16k^2 m^2 - 16kmn + 11km`.
pub fn kf_star_s2k_step(kf: f64, n: usize, m: usize, k: usize) -> f64 {
    let (n, m, k) = (n as f64, m as f64, k as f64);
    27.0 * k * kf + 16.0 * k * k * m * m - 16.0 * k * m * n + 11.0 * k * m
}

/// `S_2k^r`, `k != 3`:
/// `(27k)^r Kf* + 16k^2(9k)^(r-1)(k^r - 3^r) m^2/(k - 3) + 11k^2(3k)^(r-1)(9^r - 1) m/8
///  - 6k^2(3k)^(r-2)(9^r - 1) n + 4k^3(3k)^(r-2)[9 - 9^r + 3k(9^r - 1) - 8(3k)^r] m^2/((3k - 1)(k - 3))`.
pub fn kf_star_s2k_closed(kf: f64, n: usize, m: usize, k: usize, r: usize) -> Result<f64> {
    if k == 3 {
        return Err(Error::UnsupportedK {
            k,
            reason: "general S_2k closed form has a (k - 3) denominator",
        });
    }
    let (n, m, k, rf) = (n as f64, m as f64, k as f64, r as f64);
    let nine_r = pow(9.0, r);
    let three_k = 3.0 * k;
    Ok((27.0 * k).powf(rf) * kf
        + 16.0 * k * k * (9.0 * k).powf(rf - 1.0) * (k.powf(rf) - 3f64.powf(rf)) / (k - 3.0) * m * m
        + 11.0 * k * k * three_k.powf(rf - 1.0) * (nine_r - 1.0) / 8.0 * m
        - 6.0 * k * k * three_k.powf(rf - 2.0) * (nine_r - 1.0) * n
        + 4.0 * k.powi(3) * three_k.powf(rf - 2.0) * (9.0 - nine_r + 3.0 * k * (nine_r - 1.0) - 8.0 * three_k.powf(rf))
            / ((three_k - 1.0) * (k - 3.0))
            * m
            * m)
}

/// `S_6^r` (`k = 3`):
/// `81^r Kf* + 11*3^(2r-1)(9^r - 1) m/8 - 2*3^(2r-1)(9^r - 1) mn + 3^(2r-1)[3(9^r - 1) + 8r 9^r] m^2/2`.
pub fn kf_star_s6_closed(kf: f64, n: usize, m: usize, r: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    let nine_r = pow(9.0, r);
    let c = 3f64.powi(2 * r as i32 - 1);
    pow(81.0, r) * kf + 11.0 * c * (nine_r - 1.0) / 8.0 * m - 2.0 * c * (nine_r - 1.0) * m * n
        + c * (3.0 * (nine_r - 1.0) + 8.0 * r as f64 * nine_r) / 2.0 * m * m
}

/// Published `Kf*(S_2k^r)`: the one-step form at `r = 1`, otherwise the
/// closed form for `k != 3` or the `k = 3` closed form.
pub fn kf_star_s2k(kf: f64, n: usize, m: usize, k: usize, r: usize) -> f64 {
    match (k, r) {
        (0, _) => f64::NAN,
        (_, 1) => kf_star_s2k_step(kf, n, m, k),
        (3, _) => kf_star_s6_closed(kf, n, m, r),
        _ => kf_star_s2k_closed(kf, n, m, k, r).expect("k != 3"),
    }
}

/// Published closed form at any `r`, dispatching `k = 3` to its own form.
pub fn kf_star_s2k_closed_any_k(kf: f64, n: usize, m: usize, k: usize, r: usize) -> f64 {
    if k == 3 {
        kf_star_s6_closed(kf, n, m, r)
    } else {
        kf_star_s2k_closed(kf, n, m, k, r).expect("k != 3")
    }
}

/// `S_2k` one step: `9 Ke + (16km - 16n + 11)/6`.
pub fn kemeny_s2k_step(ke: f64, n: usize, m: usize, k: usize) -> f64 {
    let km = (k * m) as f64;
    9.0 * ke + (16.0 * km - 16.0 * n as f64 + 11.0) / 6.0
}

/// `S_2k^r`, `k != 3`:
/// `9^r Ke + 8k 3^(r-2)(k^r - 3^r) m/(k - 3) - (9^r - 1) n/(3m) + 11k(9^r - 1)/48
///  + 2k[9 - 9^r + 3k(9^r - 1) - 8(3k)^r] m/(9(3k - 1)(k - 3))`.
pub fn kemeny_s2k_closed(ke: f64, n: usize, m: usize, k: usize, r: usize) -> Result<f64> {
    if k == 3 {
        return Err(Error::UnsupportedK {
            k,
            reason: "general S_2k closed form has a (k - 3) denominator",
        });
    }
    let (n, m, k, rf) = (n as f64, m as f64, k as f64, r as f64);
    let nine_r = pow(9.0, r);
    Ok(nine_r * ke + 8.0 * k * 3f64.powf(rf - 2.0) * (k.powf(rf) - 3f64.powf(rf)) / (k - 3.0) * m
        - (nine_r - 1.0) / (3.0 * m) * n
        + 11.0 * k * (nine_r - 1.0) / 48.0
        + 2.0 * k * (9.0 - nine_r + 3.0 * k * (nine_r - 1.0) - 8.0 * (3.0 * k).powf(rf))
            / (9.0 * (3.0 * k - 1.0) * (k - 3.0))
            * m)
}

/// `S_6^r` (`k = 3`): `9^r Ke + (9^r - 1)(11 - 16n)/48 + [3(9^r - 1) + 8r 9^r] m/12`.
pub fn kemeny_s6_closed(ke: f64, n: usize, m: usize, r: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    let nine_r = pow(9.0, r);
    nine_r * ke + (nine_r - 1.0) * (11.0 - 16.0 * n) / 48.0 + (3.0 * (nine_r - 1.0) + 8.0 * r as f64 * nine_r) / 12.0 * m
}

/// Published `Ke(S_2k^r)`, dispatched like [`kf_star_s2k`].
pub fn kemeny_s2k(ke: f64, n: usize, m: usize, k: usize, r: usize) -> f64 {
    match (k, r) {
        (0, _) => f64::NAN,
        (_, 1) => kemeny_s2k_step(ke, n, m, k),
        (3, _) => kemeny_s6_closed(ke, n, m, r),
        _ => kemeny_s2k_closed(ke, n, m, k, r).expect("k != 3"),
    }
}

pub fn kemeny_s2k_closed_any_k(ke: f64, n: usize, m: usize, k: usize, r: usize) -> f64 {
    if k == 3 {
        kemeny_s6_closed(ke, n, m, r)
    } else {
        kemeny_s2k_closed(ke, n, m, k, r).expect("k != 3")
    }
}

/// `phi(r) = 2km(r - 1 - 3kr + 3^r k^r)/(3k - 1)^2`.
pub fn phi(n_edges: usize, k: usize, r: usize) -> f64 {
    let (m, k, r) = (n_edges as f64, k as f64, r as f64);
    2.0 * k * m * (r - 1.0 - 3.0 * k * r + (3.0 * k).powf(r)) / (3.0 * k - 1.0).powi(2)
}

/// `ln tau(S_2k^r)` from
/// `tau = (1/2)^(r(1-n) - phi) (3/2)^(r(2-n) - phi) 3^(km(3^r k^r - 1)/(3k - 1) - 1) k^(nr - 1 + phi) tau(G)`.
pub fn log_tau_s2k(log_tau: f64, n: usize, m: usize, k: usize, r: usize) -> f64 {
    let p = phi(m, k, r);
    let (n, m, k, r) = (n as f64, m as f64, k as f64, r as f64);
    let half = (r * (1.0 - n) - p) * 0.5f64.ln();
    let three_halves = (r * (2.0 - n) - p) * 1.5f64.ln();
    let three = (k * m * ((3.0 * k).powf(r) - 1.0) / (3.0 * k - 1.0) - 1.0) * 3f64.ln();
    let kk = (n * r - 1.0 + p) * k.ln();
    half + three_halves + three + kk + log_tau
}
