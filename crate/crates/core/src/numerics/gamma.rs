//! Regularized incomplete gamma function and the χ² distribution.

const MAX_ITER: usize = 10_000;
const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;

/// Lower regularized incomplete gamma function `P(s, x)`.
///
/// Uses the power series for `x < s + 1` and a Lentz continued fraction for
/// the complement otherwise. Returns NaN when `s <= 0`, `x < 0` or either is NaN.
pub fn regularized_gamma_p(s: f64, x: f64) -> f64 {
    if !(s > 0.0) || !(x >= 0.0) {
        return f64::NAN;
    }
    if x == 0.0 {
        return 0.0;
    }
    if x.is_infinite() {
        return 1.0;
    }
    if x < s + 1.0 {
        series(s, x)
    } else {
        1.0 - continued_fraction(s, x)
    }
}

/// log of `x^s e^{-x} / Γ(s)`, the common prefactor of both expansions.
fn log_prefactor(s: f64, x: f64) -> f64 {
    s * libm::log(x) - x - libm::lgamma(s)
}

fn series(s: f64, x: f64) -> f64 {
    let mut denom = s;
    let mut term = 1.0 / s;
    let mut sum = term;
    for _ in 0..MAX_ITER {
        denom += 1.0;
        term *= x / denom;
        sum += term;
        if term < sum * EPS {
            break;
        }
    }
    (sum * libm::exp(log_prefactor(s, x))).min(1.0)
}

/// Upper regularized `Q(s, x)` by the modified Lentz method.
fn continued_fraction(s: f64, x: f64) -> f64 {
    let mut b = x + 1.0 - s;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - s);
        b += 2.0;
        d = an * d + b;
        if libm::fabs(d) < TINY {
            d = TINY;
        }
        c = b + an / c;
        if libm::fabs(c) < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if libm::fabs(delta - 1.0) < EPS {
            break;
        }
    }
    (libm::exp(log_prefactor(s, x)) * h).clamp(0.0, 1.0)
}

/// χ² distribution function with `df` degrees of freedom.
pub fn chisq_cdf(q: f64, df: u32) -> f64 {
    if q <= 0.0 {
        return 0.0;
    }
    regularized_gamma_p(f64::from(df) / 2.0, q / 2.0)
}

/// χ² density with `df` degrees of freedom.
pub fn chisq_pdf(q: f64, df: u32) -> f64 {
    if q <= 0.0 {
        return if df == 2 { 0.5 } else { 0.0 };
    }
    let k = f64::from(df) / 2.0;
    libm::exp((k - 1.0) * libm::log(q) - q / 2.0 - k * core::f64::consts::LN_2 - libm::lgamma(k))
}

/// Inverse of the standard normal distribution function (Acklam's rational
/// approximation, relative error about 1e-9). Only used for starting values.
pub fn std_normal_quantile(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969_683_028_665_376e1,
        2.209_460_984_245_205e2,
        -2.759_285_104_469_687e2,
        1.383_577_518_672_69e2,
        -3.066_479_806_614_716e1,
        2.506_628_277_459_239,
    ];
    const B: [f64; 5] = [
        -5.447_609_879_822_406e1,
        1.615_858_368_580_409e2,
        -1.556_989_798_598_866e2,
        6.680_131_188_771_972e1,
        -1.328_068_155_288_572e1,
    ];
    const C: [f64; 6] = [
        -7.784_894_002_430_293e-3,
        -3.223_964_580_411_365e-1,
        -2.400_758_277_161_838,
        -2.549_732_539_343_734,
        4.374_664_141_464_968,
        2.938_163_982_698_783,
    ];
    const D: [f64; 4] = [
        7.784_695_709_041_462e-3,
        3.224_671_290_700_398e-1,
        2.445_134_137_142_996,
        3.754_408_661_907_416,
    ];
    const P_LOW: f64 = 0.02425;

    if p <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if p >= 1.0 {
        return f64::INFINITY;
    }
    if p < P_LOW {
        let q = libm::sqrt(-2.0 * libm::log(p));
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        -std_normal_quantile(1.0 - p)
    }
}

/// Quantile of the χ² distribution: the `q` with `chisq_cdf(q, df) == prob`.
///
/// Starts from the Wilson–Hilferty approximation and refines with Newton
/// steps inside a shrinking bracket, bisecting whenever a Newton step leaves
/// the bracket. Returns NaN unless `0 < prob < 1` and `df >= 1`.
pub fn chisq_quantile(prob: f64, df: u32) -> f64 {
    if !(prob > 0.0 && prob < 1.0) || df == 0 {
        return f64::NAN;
    }
    let k = f64::from(df);
    let z = std_normal_quantile(prob);
    let h = 2.0 / (9.0 * k);
    let wh = k * libm::pow(1.0 - h + z * libm::sqrt(h), 3.0);

    let mut lo = 0.0_f64;
    let mut hi = k.max(1.0);
    while chisq_cdf(hi, df) < prob {
        lo = hi;
        hi *= 2.0;
    }
    let mut q = if wh > lo && wh < hi {
        wh
    } else {
        0.5 * (lo + hi)
    };

    for _ in 0..200 {
        let err = chisq_cdf(q, df) - prob;
        if libm::fabs(err) < 1e-15 {
            break;
        }
        if err < 0.0 {
            lo = q;
        } else {
            hi = q;
        }
        if hi - lo <= 4.0 * f64::EPSILON * hi {
            break;
        }
        let dens = chisq_pdf(q, df);
        let newton = q - err / dens;
        q = if dens > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    q
}
