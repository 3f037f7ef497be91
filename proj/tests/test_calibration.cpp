#include <doctest.h>

#include <cmath>

#include "hstm/calibration.hpp"
#include "hstm/errors.hpp"
#include "hstm/ingest.hpp"

using namespace hstm;

TEST_SUITE("calibration") {

TEST_CASE("degree histogram examples") {
  auto m = HypersparseMatrix::from_pairs(
      std::vector<AddrPair>{{1, 2}, {1, 2}, {1, 3}, {4, 2}});
  auto h = degree_histogram(m);
  CHECK(h.counts.at(1) == 2);
  CHECK(h.counts.at(2) == 1);
  CHECK(h.total_links() == 3);
  CHECK(h.total_packets() == 4);
  CHECK(h.fraction(1) == doctest::Approx(2.0 / 3.0));
  CHECK(h.fraction(2) == doctest::Approx(1.0 / 3.0));
  CHECK(h.fraction(7) == 0.0);
  CHECK(degree_histogram(HypersparseMatrix{}).counts.empty());
}

TEST_CASE("zm_pdf closed forms") {
  CHECK(zm_pdf(1, 0, 2, 2) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(zm_pdf(2, 0, 2, 2) == doctest::Approx(0.2).epsilon(1e-12));

  double sum = 0;
  double prev = 1e9;
  for (std::uint32_t d = 1; d <= 50; ++d) {
    double p = zm_pdf(d, 1.5, 1.2, 50);
    CHECK(p < prev);  // strictly decreasing
    prev = p;
    sum += p;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

  // Huge delta flattens the pmf toward uniform.
  double lo = zm_pdf(1, 1e6, 2, 4), hi = zm_pdf(4, 1e6, 2, 4);
  CHECK(std::abs(lo - hi) < 1e-5);

  CHECK_THROWS_AS(zm_pdf(0, 0, 2, 4), parameter_error);
  CHECK_THROWS_AS(zm_pdf(5, 0, 2, 4), parameter_error);
}

TEST_CASE("fit rejects tiny histograms") {
  DegreeHistogram h;
  h.counts = {{1, 10}, {2, 5}};
  CHECK_THROWS_AS(fit_zipf_mandelbrot(h), parameter_error);
}

TEST_CASE("noise-free model fractions fit exactly at grid-aligned truth") {
  // Build exact expected counts from the model at (delta=0, alpha=2), which
  // sits on the coarse search grid.
  DegreeHistogram h;
  const std::uint32_t d_max = 64;
  const std::uint64_t total = 1'000'000'000;
  for (std::uint32_t d = 1; d <= d_max; ++d) {
    double p = zm_pdf(d, 0.0, 2.0, d_max);
    h.counts[d] = static_cast<std::uint64_t>(p * total + 0.5);
  }
  // Rounding perturbs fractions slightly; regenerate with exact fractions by
  // fitting against a synthetic histogram whose fractions equal the pmf.
  // Use counts proportional to the pmf with a common scale that keeps all
  // values integral: counts = pmf(d) * Z where Z = (d+0)^2 products is not
  // integral, so instead check the residual at truth is the grid minimum.
  auto fit = fit_zipf_mandelbrot(h);
  CHECK(fit.alpha == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(fit.delta == doctest::Approx(0.0).scale(1).epsilon(1e-2));
  CHECK(fit.fit_error < 1e-10);
  CHECK(fit.d_max == d_max);

  // Refit is bit-reproducible.
  auto fit2 = fit_zipf_mandelbrot(h);
  CHECK(fit.alpha == fit2.alpha);
  CHECK(fit.delta == fit2.delta);
  CHECK(fit.fit_error == fit2.fit_error);
}

TEST_CASE("recovers alpha=2 delta=0 from 2^20 sampled links") {
  auto degrees = sample_zm_degrees(1 << 20, 0.0, 2.0, 256, 909);
  DegreeHistogram h;
  for (auto d : degrees) h.counts[d] += 1;
  auto fit = fit_zipf_mandelbrot(h);
  CHECK(fit.alpha >= 1.95);
  CHECK(fit.alpha <= 2.05);
}

TEST_CASE("recovers delta=3 alpha=1.5 within 0.5") {
  auto degrees = sample_zm_degrees(1 << 20, 3.0, 1.5, 256, 911);
  DegreeHistogram h;
  for (auto d : degrees) h.counts[d] += 1;
  auto fit = fit_zipf_mandelbrot(h);
  CHECK(std::abs(fit.delta - 3.0) <= 0.5);
  CHECK(fit.alpha == doctest::Approx(1.5).epsilon(0.15));
}

}  // TEST_SUITE
