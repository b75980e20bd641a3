/**
 * Special functions and statistical primitives shared by the detector,
 * mapper and planner: regularized incomplete gamma (and its inverse),
 * the Marcum Q-function, binary entropy, and the reference samplers.
 */

#ifndef RADNAV_NUMERICS_HPP
#define RADNAV_NUMERICS_HPP

#include "radnav/rng.hpp"

namespace radnav {

// Physical constants.
inline constexpr double kSpeedOfLight = 299792458.0;      // m/s
inline constexpr double kBoltzmann = 1.380649e-23;        // J/K
inline constexpr double kReferenceTemperature = 290.0;    // K

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
/// Series for x < a + 1, Lentz continued fraction otherwise.
/// a > 0, x >= 0; monotone decreasing in x, Q(a, 0) = 1.
double reg_gamma_upper(double a, double x);

/// Solves reg_gamma_upper(a, x) = p for x, 0 < p < 1.
/// Safeguarded Newton from a Wilson-Hilferty start; |Q(a,x) - p| <= ~1e-12.
double inv_reg_gamma_upper(double a, double p);

/// Marcum Q_h(a, b): survival function at b^2 of a noncentral chi-square
/// with 2h degrees of freedom and noncentrality a^2. Evaluated as a
/// Poisson-weighted sum of central chi-square survival terms, truncated
/// when the remaining Poisson mass is below 1e-13 per tail.
double marcum_q(double h, double a, double b);

/// -p ln p - (1-p) ln(1-p) in nats, with 0 ln 0 := 0.
double binary_entropy(double p);

/// Log-density at x of a noncentral chi-square with `dof` degrees of
/// freedom and noncentrality `lambda`. Stable for large lambda; used by
/// the target-position belief filter.
double log_pdf_noncentral_chi2(double x, double dof, double lambda);

/// Gaussian draw; variance = 0 returns the mean exactly.
double sample_gaussian(Rng& rng, double mean, double variance);

/// Noncentral chi-square draw built as a sum of `dof` squared unit
/// normals with one mean offset by sqrt(lambda). Exact by construction.
double sample_chi2(Rng& rng, int dof, double lambda);

} // namespace radnav

#endif // RADNAV_NUMERICS_HPP
