#include "radnav/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "radnav/errors.hpp"

namespace radnav {

namespace {

constexpr int kMaxIterations = 2000000;
constexpr double kTiny = 1e-300;

// Lower regularized gamma P(a, x) by power series; valid for x < a + 1.
double reg_gamma_lower_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < kMaxIterations; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-17) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized gamma Q(a, x) by modified Lentz continued fraction;
// valid for x >= a + 1.
double reg_gamma_upper_cf(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIterations; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-17) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

// Acklam's rational approximation of the standard normal quantile.
// Only used to seed Newton iterations, so ~1e-9 accuracy is plenty.
double std_normal_quantile(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

} // namespace

double reg_gamma_upper(double a, double x) {
    if (!(a > 0.0)) throw ValidationError("reg_gamma_upper: a must be > 0");
    if (!(x >= 0.0)) throw ValidationError("reg_gamma_upper: x must be >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - reg_gamma_lower_series(a, x);
    return reg_gamma_upper_cf(a, x);
}

double inv_reg_gamma_upper(double a, double p) {
    if (!(a > 0.0)) throw ValidationError("inv_reg_gamma_upper: a must be > 0");
    if (!(p > 0.0) || !(p < 1.0))
        throw ValidationError("inv_reg_gamma_upper: p must be in (0, 1)");

    // Wilson-Hilferty start for the chi-square quantile with 2a dof.
    const double z = std_normal_quantile(1.0 - p); // upper-tail p
    const double nu = 2.0 * a;
    const double g = 1.0 - 2.0 / (9.0 * nu) + z * std::sqrt(2.0 / (9.0 * nu));
    double x = 0.5 * nu * g * g * g;
    if (!(x > 0.0) || !std::isfinite(x)) x = a;

    // Bracket: Q is strictly decreasing, Q(lo) > p > Q(hi).
    double lo = 0.0;
    double hi = std::max(x * 2.0, a + 10.0);
    for (int i = 0; i < 400 && reg_gamma_upper(a, hi) > p; ++i) hi *= 2.0;
    x = std::clamp(x, lo + kTiny, hi);

    const double lg = std::lgamma(a);
    for (int it = 0; it < 200; ++it) {
        const double q = reg_gamma_upper(a, x);
        const double f = q - p;
        if (q > p) lo = x; else hi = x;
        if (std::fabs(f) < 1e-13 * std::max(p, 1e-12) + 1e-300) break;
        // dQ/dx = -x^(a-1) e^(-x) / Gamma(a)
        const double dq = -std::exp((a - 1.0) * std::log(x) - x - lg);
        double xn = (dq != 0.0) ? x - f / dq : 0.5 * (lo + hi);
        if (!(xn > lo) || !(xn < hi) || !std::isfinite(xn)) xn = 0.5 * (lo + hi);
        if (xn == x) break;
        x = xn;
    }
    return x;
}

double marcum_q(double h, double a, double b) {
    if (!(h > 0.0)) throw ValidationError("marcum_q: order h must be > 0");
    if (a < 0.0 || b < 0.0) throw ValidationError("marcum_q: a, b must be >= 0");
    if (b == 0.0) return 1.0;
    const double y = 0.5 * b * b;
    if (a == 0.0) return reg_gamma_upper(h, y);

    const double mu = 0.5 * a * a;
    const long mode = static_cast<long>(std::floor(mu));

    // Poisson weight and chi-square survival term at the mode; both walked
    // outward by recurrence, refreshed periodically against drift.
    const double log_w_mode =
        mode * std::log(mu) - mu - std::lgamma(static_cast<double>(mode) + 1.0);
    const double w_mode = std::exp(log_w_mode);
    const double t_mode = reg_gamma_upper(h + static_cast<double>(mode), y);

    const double tail_tol = 1e-13;
    double sum = w_mode * t_mode;
    double covered = w_mode;

    // Upward: j = mode+1, mode+2, ...
    {
        double w = w_mode;
        double t = t_mode;
        for (long j = mode; ; ++j) {
            w *= mu / static_cast<double>(j + 1);
            t += std::exp((h + static_cast<double>(j)) * std::log(y) - y -
                          std::lgamma(h + static_cast<double>(j) + 1.0));
            if ((j - mode) % 256 == 255)
                t = reg_gamma_upper(h + static_cast<double>(j + 1), y);
            t = std::min(t, 1.0);
            sum += w * t;
            covered += w;
            const double ratio = mu / static_cast<double>(j + 2);
            if (ratio < 1.0 && w * ratio / (1.0 - ratio) < tail_tol) break;
            if (j - mode > kMaxIterations) break;
        }
    }
    // Downward: j = mode-1, ..., 0.
    {
        double w = w_mode;
        double t = t_mode;
        for (long j = mode; j > 0; --j) {
            w *= static_cast<double>(j) / mu;
            t -= std::exp((h + static_cast<double>(j) - 1.0) * std::log(y) - y -
                          std::lgamma(h + static_cast<double>(j)));
            if ((mode - j) % 256 == 255)
                t = reg_gamma_upper(h + static_cast<double>(j - 1), y);
            t = std::clamp(t, 0.0, 1.0);
            sum += w * t;
            covered += w;
            if (1.0 - covered < tail_tol) break;
        }
    }
    return std::clamp(sum, 0.0, 1.0);
}

double binary_entropy(double p) {
    if (!(p >= 0.0) || !(p <= 1.0))
        throw ValidationError("binary_entropy: p must be in [0, 1]");
    double h = 0.0;
    if (p > 0.0) h -= p * std::log(p);
    if (p < 1.0) h -= (1.0 - p) * std::log(1.0 - p);
    return h;
}

double log_pdf_noncentral_chi2(double x, double dof, double lambda) {
    if (!(dof > 0.0)) throw ValidationError("log_pdf_noncentral_chi2: dof must be > 0");
    if (!(lambda >= 0.0))
        throw ValidationError("log_pdf_noncentral_chi2: lambda must be >= 0");
    if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();

    auto log_central = [x](double nu) {
        return (0.5 * nu - 1.0) * std::log(x) - 0.5 * x -
               0.5 * nu * std::numbers::ln2 - std::lgamma(0.5 * nu);
    };
    if (lambda == 0.0) return log_central(dof);

    // Poisson mixture of central chi-square densities, summed in linear
    // space relative to the mode term. Term ratios:
    //   t_{j+1}/t_j = [mu/(j+1)] * [x/(dof+2j)]
    const double mu = 0.5 * lambda;
    const long mode = static_cast<long>(std::floor(mu));
    const double log_t_mode = mode * std::log(mu) - mu -
                              std::lgamma(static_cast<double>(mode) + 1.0) +
                              log_central(dof + 2.0 * static_cast<double>(mode));
    double rel_sum = 1.0;
    double r = 1.0;
    for (long j = mode; j - mode < kMaxIterations; ++j) {
        r *= (mu / static_cast<double>(j + 1)) * (x / (dof + 2.0 * static_cast<double>(j)));
        rel_sum += r;
        if (r < 1e-18 * rel_sum) break;
    }
    r = 1.0;
    for (long j = mode; j > 0; --j) {
        r *= (static_cast<double>(j) / mu) * ((dof + 2.0 * static_cast<double>(j - 1)) / x);
        rel_sum += r;
        if (r < 1e-18 * rel_sum) break;
    }
    return log_t_mode + std::log(rel_sum);
}

double sample_gaussian(Rng& rng, double mean, double variance) {
    if (!(variance >= 0.0)) throw ValidationError("sample_gaussian: variance must be >= 0");
    if (variance == 0.0) return mean;
    // Marsaglia polar method; the second output is discarded here.
    double u, v, s;
    do {
        u = 2.0 * rng.uniform01() - 1.0;
        v = 2.0 * rng.uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    return mean + std::sqrt(variance) * u * f;
}

double sample_chi2(Rng& rng, int dof, double lambda) {
    if (dof < 1) throw ValidationError("sample_chi2: dof must be >= 1");
    if (!(lambda >= 0.0)) throw ValidationError("sample_chi2: lambda must be >= 0");
    const double offset = std::sqrt(lambda);
    double total = 0.0;
    int produced = 0;
    while (produced < dof) {
        double u, v, s;
        do {
            u = 2.0 * rng.uniform01() - 1.0;
            v = 2.0 * rng.uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        double n1 = u * f;
        if (produced == 0) n1 += offset;
        total += n1 * n1;
        ++produced;
        if (produced < dof) {
            const double n2 = v * f;
            total += n2 * n2;
            ++produced;
        }
    }
    return total;
}

} // namespace radnav
