#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "reactfn/histogram.hpp"
#include "reactfn/normal.hpp"
#include "support/oracles.hpp"

using namespace reactfn;

TEST_CASE("identical values give a degenerate-range error") {
  const std::vector<double> values{0.0, 0.0, 0.0};
  CHECK_THROWS_AS(EmpiricalDistribution::build(values, 10), data_error);
}

TEST_CASE("the maximum lands in the last bin") {
  const std::vector<double> values{0.0, 1.0};
  const auto dist = EmpiricalDistribution::build(values, 3);
  CHECK(dist.count(0) == 1.0);
  CHECK(dist.count(1) == 0.0);
  CHECK(dist.count(2) == 1.0);
}

TEST_CASE("bin_count below 3 is rejected") {
  const std::vector<double> values{0.0, 1.0};
  CHECK_THROWS_AS(EmpiricalDistribution::build(values, 2), input_error);
}

TEST_CASE("central bin of a large normal sample matches the exact density") {
  NormalSampler sampler(99);
  std::vector<double> values;
  values.reserve(1000000);
  for (int i = 0; i < 1000000; ++i) values.push_back(sampler.next(0.0, 0.01));

  const auto dist = EmpiricalDistribution::build(values, 150);
  const double median = quantile(values, 0.5);
  const double rel_freq = dist.mass(dist.median_bin(median));
  const double expected = dist.bin_width() / (kSqrt2Pi * 0.01);
  CHECK(std::abs(rel_freq - expected) / expected < 0.05);
}

TEST_CASE("bin sums match direct counting on small samples") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::uniform_int_distribution<int> n_dist(5, 100);
  std::uniform_int_distribution<int> b_dist(3, 12);

  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> values(static_cast<std::size_t>(n_dist(rng)));
    for (auto& v : values) v = unif(rng);
    const int bins = b_dist(rng);
    EmpiricalDistribution dist;
    try {
      dist = EmpiricalDistribution::build(values, bins);
    } catch (const data_error&) {
      continue;
    }
    for (int i = 0; i < bins; ++i) {
      for (int j = i + 1; j <= bins; ++j) {
        double summed = 0.0;
        for (int b = i; b < j; ++b) summed += dist.count(static_cast<std::size_t>(b));
        const auto direct =
            oracles::brute_count(values, dist.edge(static_cast<std::size_t>(i)),
                                 dist.edge(static_cast<std::size_t>(j)), dist.hi(), j == bins);
        REQUIRE(summed == static_cast<double>(direct));
      }
    }
  }
}

TEST_CASE("histogram invariants hold on random samples") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> values(5000);
  for (auto& v : values) v = normal(rng);

  const auto dist = EmpiricalDistribution::build(values, 37);
  double total = 0.0;
  double mass_total = 0.0;
  for (int i = 0; i < dist.bin_count(); ++i) {
    total += dist.count(static_cast<std::size_t>(i));
    mass_total += dist.mass(static_cast<std::size_t>(i));
  }
  CHECK(total == dist.n());
  CHECK(mass_total == Catch::Approx(1.0).epsilon(1e-12));
  for (int i = 1; i <= dist.bin_count(); ++i) {
    const double w = dist.edge(static_cast<std::size_t>(i)) - dist.edge(static_cast<std::size_t>(i - 1));
    CHECK(w == Catch::Approx(dist.bin_width()).epsilon(1e-9));
  }
}

TEST_CASE("interpolated quantiles") {
  CHECK(quantile(std::vector<double>{1, 2, 3}, 0.5) == 2.0);
  CHECK(quantile(std::vector<double>{1, 2}, 0.5) == 1.5);
  CHECK(quantile(std::vector<double>{1, 2, 3, 4}, 0.25) == 1.75);
  CHECK(quantile(std::vector<double>{4, 1, 3, 2}, 0.0) == 1.0);
  CHECK(quantile(std::vector<double>{4, 1, 3, 2}, 1.0) == 4.0);
  CHECK_THROWS_AS(quantile(std::vector<double>{1.0}, -0.1), input_error);
  CHECK_THROWS_AS(quantile(std::vector<double>{1.0}, 1.1), input_error);
  CHECK_THROWS_AS(quantile(std::vector<double>{}, 0.5), data_error);
}

TEST_CASE("cdf_between under the uniform-within-bin rule") {
  std::vector<double> edges;
  for (int i = 0; i <= 10; ++i) edges.push_back(0.1 * i);
  const auto dist = EmpiricalDistribution::from_masses(edges, std::vector<double>(10, 0.1));

  CHECK(dist.cdf_between(dist.lo(), dist.hi()) == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(dist.cdf_between(0.4, 0.4) == 0.0);
  CHECK(dist.cdf_between(0.25, 0.75) == Catch::Approx(0.5).epsilon(1e-12));
  CHECK(dist.cdf_between(-5.0, 5.0) == Catch::Approx(1.0).epsilon(1e-12));  // clamps
  CHECK_THROWS_AS(dist.cdf_between(0.5, 0.4), input_error);
}

TEST_CASE("cdf is non-decreasing and reaches 1") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> values(2000);
  for (auto& v : values) v = normal(rng);
  const auto dist = EmpiricalDistribution::build(values, 25);

  double prev = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double x = dist.lo() + (dist.hi() - dist.lo()) * i / 200.0;
    const double f = dist.cdf_between(dist.lo(), x);
    CHECK(f >= prev - 1e-15);
    prev = f;
  }
  CHECK(prev == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("median bin assigns edge ties to the lower bin") {
  std::vector<double> edges{0.0, 1.0, 2.0, 3.0, 4.0};
  const auto dist = EmpiricalDistribution::from_masses(edges, {0.25, 0.25, 0.25, 0.25});
  CHECK(dist.median_bin(1.5) == 1);
  CHECK(dist.median_bin(2.0) == 1);  // tie goes down
  CHECK(dist.median_bin(0.0) == 0);  // no lower bin to fall into
  CHECK(dist.median_bin(4.0) == 3);
}

TEST_CASE("interpolated median matches the sample median on symmetric masses") {
  std::vector<double> edges{-2.0, -1.0, 0.0, 1.0, 2.0};
  const auto dist = EmpiricalDistribution::from_masses(edges, {0.1, 0.4, 0.4, 0.1});
  CHECK(dist.interpolated_median() == Catch::Approx(0.0).margin(1e-12));
}
