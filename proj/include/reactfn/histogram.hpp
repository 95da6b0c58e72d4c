#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "reactfn/errors.hpp"
#include "reactfn/returns.hpp"

namespace reactfn {

/// Equal-width histogram over [min, max] of a sample, together with its
/// cumulative masses. Bins are half-open [edge_i, edge_{i+1}) except the last,
/// which includes the upper bound. Counts are stored as doubles so that a
/// distribution can also be built from exact analytic bin masses.
class EmpiricalDistribution {
public:
  static EmpiricalDistribution build(std::span<const double> values, int bin_count) {
    if (bin_count < 3) throw input_error("bin_count must be >= 3");
    if (values.empty()) throw data_error("cannot build histogram from empty sample");

    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    const double lo = *mn;
    const double hi = *mx;
    if (!(hi > lo)) throw data_error("degenerate range: all values equal " + std::to_string(lo));

    EmpiricalDistribution dist;
    const double width = (hi - lo) / bin_count;
    dist.edges_.resize(static_cast<std::size_t>(bin_count) + 1);
    for (int i = 0; i <= bin_count; ++i) dist.edges_[static_cast<std::size_t>(i)] = lo + i * width;
    dist.edges_.back() = hi;
    dist.require_increasing_edges();

    dist.counts_.assign(static_cast<std::size_t>(bin_count), 0.0);
    for (const double x : values) dist.counts_[dist.bin_index(x)] += 1.0;
    dist.n_ = static_cast<double>(values.size());
    dist.finish();
    return dist;
  }

  /// Builds a distribution directly from bin edges and per-bin masses
  /// (total weight 1), e.g. exact masses from an analytic oracle.
  static EmpiricalDistribution from_masses(std::vector<double> edges, std::vector<double> masses) {
    if (edges.size() < 4) throw input_error("from_masses needs at least 3 bins");
    if (masses.size() + 1 != edges.size()) throw input_error("edges/masses size mismatch");
    for (const double m : masses)
      if (!(m >= 0.0)) throw input_error("negative bin mass");

    EmpiricalDistribution dist;
    dist.edges_ = std::move(edges);
    dist.require_increasing_edges();
    dist.counts_ = std::move(masses);
    dist.n_ = 1.0;
    dist.finish();
    return dist;
  }

  int bin_count() const { return static_cast<int>(counts_.size()); }
  double lo() const { return edges_.front(); }
  double hi() const { return edges_.back(); }
  double bin_width() const { return (hi() - lo()) / bin_count(); }
  double n() const { return n_; }
  const std::vector<double>& edges() const { return edges_; }
  const std::vector<double>& counts() const { return counts_; }

  double edge(std::size_t i) const { return edges_[i]; }
  double count(std::size_t i) const { return counts_[i]; }
  double mass(std::size_t i) const { return counts_[i] / n_; }
  double width(std::size_t i) const { return edges_[i + 1] - edges_[i]; }
  double mid(std::size_t i) const { return 0.5 * (edges_[i] + edges_[i + 1]); }
  double density(std::size_t i) const { return mass(i) / width(i); }

  std::size_t bin_index(double x) const {
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
    const auto raw = static_cast<std::ptrdiff_t>(it - edges_.begin()) - 1;
    const auto last = static_cast<std::ptrdiff_t>(counts_.size()) - 1;
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(raw, 0, last));
  }

  /// Bin holding the median value mu; a value exactly on a shared edge is
  /// assigned to the lower bin.
  std::size_t median_bin(double mu) const {
    std::size_t idx = bin_index(mu);
    if (idx > 0 && mu == edges_[idx]) --idx;
    return idx;
  }

  /// Median located from cumulative bin masses by interpolation within the
  /// bin where the cumulative mass crosses one half.
  double interpolated_median() const {
    const double half = 0.5 * cum_.back();
    std::size_t i = 0;
    while (i + 1 < cum_.size() && cum_[i] < half) ++i;
    const double before = i == 0 ? 0.0 : cum_[i - 1];
    if (counts_[i] <= 0.0) return edges_[i];
    return edges_[i] + (half - before) / counts_[i] * width(i);
  }

  /// Mass between a and b under the uniform-within-bin assumption, clamped to
  /// the histogram range.
  double cdf_between(double a, double b) const {
    if (a > b) throw input_error("cdf_between requires a <= b");
    return cdf(b) - cdf(a);
  }

  double cdf(double x) const {
    if (x <= lo()) return 0.0;
    if (x >= hi()) return 1.0;
    const std::size_t i = bin_index(x);
    const double before = (i == 0 ? 0.0 : cum_[i - 1]) / n_;
    return before + mass(i) * (x - edges_[i]) / width(i);
  }

private:
  void require_increasing_edges() const {
    for (std::size_t i = 1; i < edges_.size(); ++i)
      if (!(edges_[i] > edges_[i - 1])) throw data_error("degenerate range: histogram edges collapse");
  }

  void finish() {
    cum_.resize(counts_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      acc += counts_[i];
      cum_[i] = acc;
    }
  }

  std::vector<double> edges_;
  std::vector<double> counts_;
  std::vector<double> cum_;  // cumulative counts
  double n_ = 0.0;
};

inline EmpiricalDistribution build_histogram(const ReturnSeries& returns, int bin_count) {
  return EmpiricalDistribution::build(returns.values, bin_count);
}

/// Interpolated order-statistic quantile: position p = q*(n-1) in the sorted
/// sample, linear interpolation between the flanking order statistics.
inline double quantile(std::span<const double> sample, double q) {
  if (sample.empty()) throw data_error("quantile of empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw input_error("quantile requires q in [0, 1]");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double p = q * static_cast<double>(sorted.size() - 1);
  const auto i = static_cast<std::size_t>(p);
  if (i + 1 >= sorted.size()) return sorted.back();
  const double frac = p - static_cast<double>(i);
  return sorted[i] * (1.0 - frac) + sorted[i + 1] * frac;
}

inline double quantile(const ReturnSeries& returns, double q) { return quantile(std::span<const double>(returns.values), q); }

}  // namespace reactfn
