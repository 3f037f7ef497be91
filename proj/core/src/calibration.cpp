#include "hstm/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hstm/errors.hpp"

namespace hstm {

std::uint64_t DegreeHistogram::total_links() const {
  std::uint64_t n = 0;
  for (const auto& [d, c] : counts) n += c;
  return n;
}

std::uint64_t DegreeHistogram::total_packets() const {
  std::uint64_t n = 0;
  for (const auto& [d, c] : counts) n += std::uint64_t{d} * c;
  return n;
}

std::uint32_t DegreeHistogram::d_max() const {
  return counts.empty() ? 0 : counts.rbegin()->first;
}

double DegreeHistogram::fraction(std::uint32_t d) const {
  auto it = counts.find(d);
  if (it == counts.end()) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(total_links());
}

DegreeHistogram degree_histogram(const HypersparseMatrix& a) {
  DegreeHistogram h;
  for (std::uint64_t v : a.values()) {
    h.counts[static_cast<std::uint32_t>(std::min<std::uint64_t>(v, 0xFFFFFFFFull))] += 1;
  }
  return h;
}

double zm_pdf(std::uint32_t d, double delta, double alpha, std::uint32_t d_max) {
  if (d < 1 || d > d_max) throw parameter_error("zm_pdf: d outside support");
  if (alpha <= 0 || delta < 0) throw parameter_error("zm_pdf: bad parameters");
  double z = 0;
  for (std::uint32_t k = 1; k <= d_max; ++k) z += std::pow(k + delta, -alpha);
  return std::pow(d + delta, -alpha) / z;
}

namespace {

struct FitPoint {
  std::uint32_t d;
  double log_frac;  // log10 of empirical fraction
  int bin;          // floor(log2(d))
};

// Mean over occupied log bins of the bin-mean squared log10 residual.
double residual(const std::vector<FitPoint>& pts, double delta, double alpha,
                std::uint32_t d_max) {
  double z = 0;
  for (std::uint32_t k = 1; k <= d_max; ++k) z += std::pow(k + delta, -alpha);
  double log_z = std::log10(z);

  double bin_sum = 0;
  int bins = 0;
  std::size_t i = 0;
  while (i < pts.size()) {
    std::size_t j = i;
    double acc = 0;
    while (j < pts.size() && pts[j].bin == pts[i].bin) {
      double log_model = -alpha * std::log10(pts[j].d + delta) - log_z;
      double r = pts[j].log_frac - log_model;
      acc += r * r;
      ++j;
    }
    bin_sum += acc / static_cast<double>(j - i);
    ++bins;
    i = j;
  }
  return bin_sum / static_cast<double>(bins);
}

}  // namespace

ZipfMandelbrotFit fit_zipf_mandelbrot(const DegreeHistogram& h) {
  if (h.counts.size() < 3) {
    throw parameter_error("fit_zipf_mandelbrot: need >= 3 occupied degree values");
  }
  const std::uint32_t d_max = h.d_max();
  const double total = static_cast<double>(h.total_links());

  std::vector<FitPoint> pts;
  pts.reserve(h.counts.size());
  for (const auto& [d, c] : h.counts) {
    FitPoint p;
    p.d = d;
    p.log_frac = std::log10(static_cast<double>(c) / total);
    p.bin = static_cast<int>(std::floor(std::log2(static_cast<double>(d))));
    pts.push_back(p);
  }

  double best_delta = 0, best_alpha = 1, best_err = std::numeric_limits<double>::infinity();
  for (double delta = 0; delta <= 16.0 + 1e-12; delta += 0.25) {
    for (double alpha = 0.25; alpha <= 4.0 + 1e-12; alpha += 0.05) {
      double e = residual(pts, delta, alpha, d_max);
      if (e < best_err) {
        best_err = e;
        best_delta = delta;
        best_alpha = alpha;
      }
    }
  }

  // Pattern search with step halving around the grid optimum.
  double step_d = 0.25, step_a = 0.05;
  while (step_d > 1e-3 || step_a > 1e-3) {
    bool improved = false;
    for (auto [dd, da] : {std::pair{step_d, 0.0}, {-step_d, 0.0}, {0.0, step_a},
                          {0.0, -step_a}, {step_d, step_a}, {step_d, -step_a},
                          {-step_d, step_a}, {-step_d, -step_a}}) {
      double nd = best_delta + dd, na = best_alpha + da;
      if (nd < 0 || na <= 0.01) continue;
      double e = residual(pts, nd, na, d_max);
      if (e < best_err) {
        best_err = e;
        best_delta = nd;
        best_alpha = na;
        improved = true;
      }
    }
    if (!improved) {
      step_d /= 2;
      step_a /= 2;
    }
  }

  ZipfMandelbrotFit fit;
  fit.delta = best_delta;
  fit.alpha = best_alpha;
  fit.d_max = d_max;
  fit.fit_error = best_err;
  return fit;
}

}  // namespace hstm
