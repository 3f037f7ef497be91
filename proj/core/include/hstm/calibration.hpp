#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "hstm/hmatrix.hpp"

namespace hstm {

// Link-degree histogram: d (packets per link) -> number of links with that d.
struct DegreeHistogram {
  std::map<std::uint32_t, std::uint64_t> counts;
  std::uint64_t window_packets = 0;  // N_V of the source window, informational
  std::string direction;             // e.g. "assigned->other", informational

  std::uint64_t total_links() const;
  std::uint64_t total_packets() const;  // sum d * count(d)
  std::uint32_t d_max() const;
  double fraction(std::uint32_t d) const;  // count(d) / total_links
};

DegreeHistogram degree_histogram(const HypersparseMatrix& a);

// Zipf-Mandelbrot pmf over support 1..d_max:
//   p(d) = (d+delta)^-alpha / sum_{k=1..d_max} (k+delta)^-alpha
double zm_pdf(std::uint32_t d, double delta, double alpha, std::uint32_t d_max);

struct ZipfMandelbrotFit {
  double delta = 0;
  double alpha = 0;
  std::uint32_t d_max = 0;
  double fit_error = 0;  // mean squared log10 residual over occupied bins
};

// Best (delta, alpha) under mean squared log10 residual between the model pmf
// and empirical link fractions, aggregated per occupied logarithmic bin
// [2^k, 2^{k+1}) with equal bin weight. Deterministic: coarse grid search
// (delta 0..16 step 0.25, alpha 0.25..4 step 0.05) plus step-halving
// refinement down to 1e-3. Requires >= 3 occupied d values.
ZipfMandelbrotFit fit_zipf_mandelbrot(const DegreeHistogram& h);

}  // namespace hstm
