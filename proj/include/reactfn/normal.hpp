#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "reactfn/errors.hpp"

namespace reactfn {

inline constexpr double kSqrt2Pi = 2.506628274631000502;
inline constexpr double kInvSqrt2Pi = 0.3989422804014326779;

inline double normal_pdf(double x, double mu = 0.0, double sigma = 1.0) {
  const double z = (x - mu) / sigma;
  return kInvSqrt2Pi / sigma * std::exp(-0.5 * z * z);
}

/// Standard normal CDF via the complementary error function. Accurate to a
/// few ulp over the whole double range, including far tails.
inline double normal_cdf(double x, double mu = 0.0, double sigma = 1.0) {
  const double z = (x - mu) / sigma;
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

/// Inverse standard normal CDF. Rational initial guess (Acklam's
/// approximation, ~1e-9 relative) polished with two Newton iterations against
/// the erfc-based CDF. The upper half reflects onto the lower one, where
/// 1 - p is exact and the CDF residual keeps full relative precision, so the
/// absolute error stays below 1e-12 across the double range.
inline double normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0)) throw input_error("normal_quantile: p must lie in (0, 1)");
  if (p > 0.5) return -normal_quantile(1.0 - p);

  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }

  for (int i = 0; i < 2; ++i) {
    const double err = normal_cdf(x) - p;
    const double dens = normal_pdf(x);
    if (dens <= 0.0) break;
    x -= err / dens;
  }
  return x;
}

/// Deterministic normal sampler: mt19937_64 engine, each output word mapped
/// to a uniform strictly inside (0, 1) from its top 53 bits, then through the
/// inverse CDF. Identical seeds give identical samples on every platform.
class NormalSampler {
public:
  explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

  double next_uniform() {
    const std::uint64_t word = engine_();
    return (static_cast<double>(word >> 11) + 0.5) * 0x1.0p-53;
  }

  double next(double mu = 0.0, double sigma = 1.0) {
    return mu + sigma * normal_quantile(next_uniform());
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace reactfn
