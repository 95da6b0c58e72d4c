#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "reactfn/errors.hpp"
#include "reactfn/normal.hpp"
#include "reactfn/returns.hpp"

namespace reactfn {

enum class ShapeKind { constant, linear_vee, asymmetric, power };

inline std::string to_string(ShapeKind k) {
  switch (k) {
    case ShapeKind::constant: return "constant";
    case ShapeKind::linear_vee: return "linear_vee";
    case ShapeKind::asymmetric: return "asymmetric";
    case ShapeKind::power: return "power";
  }
  return "unknown";
}

inline ShapeKind parse_shape_kind(const std::string& s) {
  if (s == "constant") return ShapeKind::constant;
  if (s == "linear_vee") return ShapeKind::linear_vee;
  if (s == "asymmetric") return ShapeKind::asymmetric;
  if (s == "power") return ShapeKind::power;
  throw input_error("unknown reaction shape '" + s + "'");
}

// Parametric reaction shapes, all expressed in units of (r - mu) / sigma:
//   constant(c):            R = c
//   linear_vee(a):          R = 1 + a * |u|
//   asymmetric(a+, a-):     R = 1 + a<sign> * |u|
//   power(p, a):            R = 1 + a * |u|^p
struct ReactionShape {
  ShapeKind kind = ShapeKind::constant;
  double c = 1.0;
  double a = 0.0;
  double a_plus = 0.0;
  double a_minus = 0.0;
  double p = 1.0;

  static ReactionShape constant(double c) { return {ShapeKind::constant, c, 0, 0, 0, 1}; }
  static ReactionShape linear_vee(double a) { return {ShapeKind::linear_vee, 1, a, 0, 0, 1}; }
  static ReactionShape asymmetric(double a_plus, double a_minus) {
    return {ShapeKind::asymmetric, 1, 0, a_plus, a_minus, 1};
  }
  static ReactionShape power(double p, double a) { return {ShapeKind::power, 1, a, 0, 0, p}; }
};

/// Spec for the synthetic generator: apply the distortion
/// g(r) = mu + R(r) * (r - mu) to draws r ~ N(mu, sigma^2).
struct GeneratorSpec {
  double mu = 0.0;
  double sigma = 0.01;
  ReactionShape reaction;
  std::uint64_t seed = 0;
  std::size_t n = 0;

  double reaction_value(double r) const {
    const double u = std::abs(r - mu) / sigma;
    switch (reaction.kind) {
      case ShapeKind::constant: return reaction.c;
      case ShapeKind::linear_vee: return 1.0 + reaction.a * u;
      case ShapeKind::asymmetric:
        return 1.0 + (r > mu ? reaction.a_plus : r < mu ? reaction.a_minus : 0.0) * u;
      case ShapeKind::power: return 1.0 + reaction.a * std::pow(u, reaction.p);
    }
    return 1.0;
  }

  double forward(double r) const { return mu + reaction_value(r) * (r - mu); }
};

namespace detail {

inline constexpr int kGridPoints = 10000;
inline constexpr double kGridHalfWidthSigmas = 6.0;
inline constexpr double kDomainHalfWidthSigmas = 8.0;

}  // namespace detail

/// Checks the generator invariants on a grid over mu +/- 6 sigma: sigma
/// positive, the shape non-negative, and g non-decreasing. require_strict
/// additionally demands strict monotonicity, which the analytic inversion
/// needs.
inline void validate_spec(const GeneratorSpec& spec, bool require_strict = false) {
  if (!(spec.sigma > 0.0)) throw input_error("generator sigma must be > 0");
  if (spec.n == 0) throw input_error("generator n must be >= 1");
  if (spec.reaction.kind == ShapeKind::power && !(spec.reaction.p > 0.0))
    throw input_error("power shape requires p > 0");

  const double half = detail::kGridHalfWidthSigmas * spec.sigma;
  const double step = 2.0 * half / detail::kGridPoints;
  double prev_g = spec.forward(spec.mu - half);
  for (int i = 0; i <= detail::kGridPoints; ++i) {
    const double r = spec.mu - half + i * step;
    if (spec.reaction_value(r) < 0.0)
      throw input_error("reaction shape negative at r = " + std::to_string(r));
    const double g = spec.forward(r);
    if (i > 0) {
      if (g < prev_g) throw input_error("distortion map g is not monotone");
      if (require_strict && !(g > prev_g))
        throw input_error("distortion map g is not strictly increasing");
    }
    prev_g = g;
  }
}

/// Draws n distorted samples g(r_i), r_i ~ N(mu, sigma^2), deterministically
/// from the seed.
inline ReturnSeries generate(const GeneratorSpec& spec) {
  validate_spec(spec);
  ReturnSeries out;
  out.instrument = "synthetic";
  out.scale = ReturnScale::daily();
  out.kind = ReturnKind::simple;
  out.values.reserve(spec.n);
  NormalSampler sampler(spec.seed);
  for (std::size_t i = 0; i < spec.n; ++i) out.values.push_back(spec.forward(sampler.next(spec.mu, spec.sigma)));
  return out;
}

/// Inverse of the distortion map by bisection over mu +/- 8 sigma, to an
/// absolute tolerance of 1e-12 on r. Targets outside the image of that range
/// clamp to its ends; *clamped reports whether that happened.
inline double invert_forward(const GeneratorSpec& spec, double y, bool* clamped = nullptr) {
  const double half = detail::kDomainHalfWidthSigmas * spec.sigma;
  double lo = spec.mu - half;
  double hi = spec.mu + half;
  if (clamped != nullptr) *clamped = false;
  if (y <= spec.forward(lo)) {
    if (clamped != nullptr && y < spec.forward(lo)) *clamped = true;
    return lo;
  }
  if (y >= spec.forward(hi)) {
    if (clamped != nullptr && y > spec.forward(hi)) *clamped = true;
    return hi;
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (spec.forward(mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

struct PushforwardResult {
  std::vector<double> masses;              // one per bin
  std::size_t out_of_image_edges = 0;      // edges beyond the image of mu +/- 8 sigma
};

/// Exact bin masses of the distorted distribution: mass of (e1, e2] is
/// Phi((g^-1(e2) - mu)/sigma) - Phi((g^-1(e1) - mu)/sigma). Sampling-noise
/// free ground truth for the estimator.
inline PushforwardResult pushforward_masses(const GeneratorSpec& spec, std::span<const double> edges) {
  validate_spec(spec, /*require_strict=*/true);
  if (edges.size() < 2) throw input_error("pushforward needs at least one bin");

  PushforwardResult result;
  std::vector<double> cdf_at_edge(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    bool clamped = false;
    const double r = invert_forward(spec, edges[i], &clamped);
    if (clamped) ++result.out_of_image_edges;
    cdf_at_edge[i] = normal_cdf(r, spec.mu, spec.sigma);
  }
  result.masses.resize(edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    result.masses[i] = std::max(0.0, cdf_at_edge[i + 1] - cdf_at_edge[i]);
  if (result.out_of_image_edges > 0)
    log_note("pushforward: " + std::to_string(result.out_of_image_edges) +
             " edge(s) outside the image of mu +/- 8 sigma, treated as zero-mass boundary");
  return result;
}

/// Ground-truth reaction values at bin midpoints: R(g^-1(y)).
inline std::vector<double> oracle_curve(const GeneratorSpec& spec, std::span<const double> edges) {
  validate_spec(spec, /*require_strict=*/true);
  std::vector<double> values;
  values.reserve(edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double y = 0.5 * (edges[i] + edges[i + 1]);
    values.push_back(spec.reaction_value(invert_forward(spec, y)));
  }
  return values;
}

}  // namespace reactfn
