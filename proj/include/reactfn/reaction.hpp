#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "reactfn/errors.hpp"
#include "reactfn/histogram.hpp"
#include "reactfn/normal.hpp"
#include "reactfn/returns.hpp"

namespace reactfn {

/// The raw normal N(mu, sigma^2) the returns would follow under an
/// undistorted response. mu is the sample median; sigma comes from matching
/// the histogram mass of a narrow interval around the median against the
/// normal's peak density:
///
///   sigma = (mu_plus - mu_minus) / (sqrt(2*pi) * central_mass)
struct HypotheticalNormal {
  double mu = 0.0;
  double sigma = 0.0;
  double mu_plus = 0.0;
  double mu_minus = 0.0;
  double central_mass = 0.0;

  // calibration provenance
  std::size_t central_bin = 0;
  int window = 0;
  bool window_clamped = false;
};

enum class PointStatus { valid, central, empty_bin, log_domain_violation };

inline std::string to_string(PointStatus s) {
  switch (s) {
    case PointStatus::valid: return "valid";
    case PointStatus::central: return "central";
    case PointStatus::empty_bin: return "empty_bin";
    case PointStatus::log_domain_violation: return "log_domain_violation";
  }
  return "unknown";
}

struct ReactionPoint {
  double r_lo = 0.0;
  double r_hi = 0.0;
  double r_mid = 0.0;
  double delta_f = 0.0;   // bin mass
  double a_ratio = 0.0;   // empirical bin density over the normal's peak density
  double value = std::numeric_limits<double>::quiet_NaN();
  PointStatus status = PointStatus::empty_bin;

  bool has_value() const { return status == PointStatus::valid || status == PointStatus::central; }
};

struct CurveSource {
  std::string instrument;
  std::string scale;
  std::string kind;
  int bin_count = 0;
  double n = 0.0;
};

struct ReactionCurve {
  HypotheticalNormal normal;
  std::vector<ReactionPoint> points;  // one per histogram bin, ordered by r_mid
  CurveSource source;
};

/// Calibrates the raw normal from the histogram around a given center. The
/// window widens the interval by that many bins on each side of the median
/// bin; endpoints falling outside the histogram are clamped with a warning.
inline HypotheticalNormal calibrate_normal(const EmpiricalDistribution& dist, double mu, int window) {
  if (window < 0) throw input_error("calibration window must be >= 0");

  HypotheticalNormal normal;
  normal.mu = mu;
  normal.window = window;
  normal.central_bin = dist.median_bin(mu);

  const auto c = static_cast<std::ptrdiff_t>(normal.central_bin);
  const std::ptrdiff_t last = dist.bin_count() - 1;
  const std::ptrdiff_t lo_bin = std::clamp<std::ptrdiff_t>(c - window, 0, last);
  const std::ptrdiff_t hi_bin = std::clamp<std::ptrdiff_t>(c + window, 0, last);
  normal.window_clamped = lo_bin != c - window || hi_bin != c + window;
  if (normal.window_clamped) log_note("calibration window clamped to histogram range");

  normal.mu_minus = dist.edge(static_cast<std::size_t>(lo_bin));
  normal.mu_plus = dist.edge(static_cast<std::size_t>(hi_bin) + 1);
  double mass = 0.0;
  for (std::ptrdiff_t i = lo_bin; i <= hi_bin; ++i) mass += dist.mass(static_cast<std::size_t>(i));
  normal.central_mass = mass;
  if (!(mass > 0.0)) throw data_error("calibration failed: zero mass around the median");

  normal.sigma = (normal.mu_plus - normal.mu_minus) / (kSqrt2Pi * normal.central_mass);
  return normal;
}

inline HypotheticalNormal calibrate_normal(const EmpiricalDistribution& dist,
                                           const ReturnSeries& sample, int window) {
  return calibrate_normal(dist, quantile(sample, 0.5), window);
}

/// Calibration without a raw sample: the center is the histogram's
/// interpolated median. Used when the histogram is fed from analytic masses.
inline HypotheticalNormal calibrate_normal(const EmpiricalDistribution& dist, int window) {
  return calibrate_normal(dist, dist.interpolated_median(), window);
}

/// Inverts the distorted-density relation bin by bin. With A the ratio of the
/// empirical bin density to the normal's peak density,
///
///   A = sqrt(2*pi) * sigma * delta_f / (r_hi - r_lo)
///   R  = |r_mid - mu| / (sigma * sqrt(-2 * ln A))
///
/// The bin holding the median carries the center convention R = 0. Bins with
/// zero mass or with A >= 1 (where the logarithm leaves the model's domain)
/// are flagged and carry no value.
inline ReactionCurve reaction_curve(const EmpiricalDistribution& dist, const HypotheticalNormal& normal,
                                    CurveSource source = {}) {
  ReactionCurve curve;
  curve.normal = normal;
  curve.source = std::move(source);
  if (curve.source.bin_count == 0) curve.source.bin_count = dist.bin_count();
  if (curve.source.n == 0.0) curve.source.n = dist.n();

  const std::size_t central = dist.median_bin(normal.mu);
  const double sigma = normal.sigma;

  curve.points.reserve(static_cast<std::size_t>(dist.bin_count()));
  for (std::size_t i = 0; i < static_cast<std::size_t>(dist.bin_count()); ++i) {
    ReactionPoint p;
    p.r_lo = dist.edge(i);
    p.r_hi = dist.edge(i + 1);
    p.r_mid = dist.mid(i);
    p.delta_f = dist.mass(i);
    p.a_ratio = kSqrt2Pi * sigma * p.delta_f / (p.r_hi - p.r_lo);

    if (i == central) {
      p.status = PointStatus::central;
      p.value = 0.0;
    } else if (p.delta_f <= 0.0) {
      p.status = PointStatus::empty_bin;
    } else if (p.a_ratio >= 1.0) {
      p.status = PointStatus::log_domain_violation;
    } else {
      p.status = PointStatus::valid;
      p.value = std::abs(p.r_mid - normal.mu) / (sigma * std::sqrt(-2.0 * std::log(p.a_ratio)));
    }
    curve.points.push_back(p);
  }
  return curve;
}

/// Per-bin masses implied by the fitted curve: the algebraic inverse of the
/// reaction computation, so valid bins reproduce their delta_f exactly up to
/// rounding. Flagged bins are excluded.
inline std::vector<std::optional<double>> reconstruct_density(const ReactionCurve& curve) {
  std::vector<std::optional<double>> masses;
  masses.reserve(curve.points.size());
  const double mu = curve.normal.mu;
  const double sigma = curve.normal.sigma;
  for (const auto& p : curve.points) {
    const double width = p.r_hi - p.r_lo;
    const double peak_mass = width / (kSqrt2Pi * sigma);
    if (p.status == PointStatus::central) {
      masses.emplace_back(peak_mass);
    } else if (p.status == PointStatus::valid) {
      const double d = p.r_mid - mu;
      masses.emplace_back(peak_mass * std::exp(-d * d / (2.0 * sigma * sigma * p.value * p.value)));
    } else {
      masses.emplace_back(std::nullopt);
    }
  }
  return masses;
}

struct Crossing {
  double r = 0.0;       // signed location where the interpolated curve equals 1
  double radius = 0.0;  // |r - mu|
  bool rising_outward = false;
};

struct SideSummary {
  bool computable = false;
  int valid_points = 0;
  std::vector<Crossing> crossings;
};

struct CurveSummary {
  int valid_points = 0;
  SideSummary left;
  SideSummary right;
  // value at the nearest valid bin to mu + k*sigma minus the one at
  // mu - k*sigma, for k = 1, 2, 3.
  std::array<std::optional<double>, 3> asymmetry;
};

inline CurveSummary curve_summary(const ReactionCurve& curve) {
  const double mu = curve.normal.mu;
  const double sigma = curve.normal.sigma;

  std::vector<const ReactionPoint*> left, right;
  for (const auto& p : curve.points) {
    if (p.status != PointStatus::valid) continue;
    (p.r_mid < mu ? left : right).push_back(&p);
  }

  CurveSummary summary;
  summary.valid_points = static_cast<int>(left.size() + right.size());

  const auto scan = [&](std::vector<const ReactionPoint*> pts, bool outward_is_reverse) {
    SideSummary side;
    side.valid_points = static_cast<int>(pts.size());
    side.computable = pts.size() >= 3;
    if (!side.computable) return side;
    if (outward_is_reverse) std::reverse(pts.begin(), pts.end());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const double v0 = pts[i]->value;
      const double v1 = pts[i + 1]->value;
      const bool straddles = (v0 < 1.0 && v1 > 1.0) || (v0 > 1.0 && v1 < 1.0);
      if (!straddles) continue;
      const double t = (1.0 - v0) / (v1 - v0);
      const double r = pts[i]->r_mid + t * (pts[i + 1]->r_mid - pts[i]->r_mid);
      side.crossings.push_back(Crossing{r, std::abs(r - mu), v0 < 1.0});
    }
    return side;
  };
  summary.left = scan(left, true);
  summary.right = scan(right, false);

  if (summary.left.computable && summary.right.computable) {
    const auto nearest_value = [&](const std::vector<const ReactionPoint*>& pts, double target) {
      const ReactionPoint* best = nullptr;
      for (const auto* p : pts)
        if (best == nullptr || std::abs(p->r_mid - target) < std::abs(best->r_mid - target)) best = p;
      return best->value;
    };
    for (int k = 1; k <= 3; ++k) {
      summary.asymmetry[static_cast<std::size_t>(k - 1)] =
          nearest_value(right, mu + k * sigma) - nearest_value(left, mu - k * sigma);
    }
  }
  return summary;
}

struct EstimateResult {
  EmpiricalDistribution dist;
  HypotheticalNormal normal;
  ReactionCurve curve;
  CurveSummary summary;
};

/// Full pipeline on a return series: histogram, calibration, inversion,
/// summary.
inline EstimateResult run_estimate(const ReturnSeries& returns, int bin_count, int window) {
  EmpiricalDistribution dist = build_histogram(returns, bin_count);
  HypotheticalNormal normal = calibrate_normal(dist, returns, window);
  CurveSource source{returns.instrument, returns.scale.str(), to_string(returns.kind), bin_count,
                     static_cast<double>(returns.values.size())};
  ReactionCurve curve = reaction_curve(dist, normal, source);
  CurveSummary summary = curve_summary(curve);
  return EstimateResult{std::move(dist), normal, std::move(curve), std::move(summary)};
}

}  // namespace reactfn
