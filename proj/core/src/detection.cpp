#include "hstm/detection.hpp"

#include <cmath>

#include "hstm/errors.hpp"

namespace hstm {

namespace {

void check_cerr(double c_err) {
  if (!(c_err > 0 && c_err < 1)) throw parameter_error("c_err must be in (0,1)");
}

void check_lower(double c_err, double x) {
  if (!(x >= 1.0 - c_err - 1e-12 && x <= 1.0 + 1e-12)) {
    throw parameter_error("x outside lower branch domain [1-c_err, 1]");
  }
}

void check_higher(double c_err, double x) {
  if (!(x >= 1.0 - 1e-12 && x <= 1.0 / (1.0 - c_err) + 1e-12)) {
    throw parameter_error("x outside higher branch domain [1, 1/(1-c_err)]");
  }
}

}  // namespace

void DetectionParams::validate() const {
  check_cerr(c_err);
  if (!(c_cut > 0 && c_cut < c_err)) throw parameter_error("c_cut must be in (0, c_err)");
}

double density_back_low(double c_err, double x) {
  check_cerr(c_err);
  check_lower(c_err, x);
  return 2.0 * (x - (1.0 - c_err)) / (c_err * c_err);
}

double density_back_high(double c_err, double x) {
  check_cerr(c_err);
  check_higher(c_err, x);
  return (2.0 / c_err) * (1.0 - c_err) * (x + (1.0 - x) / c_err);
}

double density_tar_low(double c_err, double x) {
  check_cerr(c_err);
  check_lower(c_err, x);
  return 2.0 * (1.0 - x) / (c_err * c_err);
}

double density_tar_high(double c_err, double x) {
  check_cerr(c_err);
  check_higher(c_err, x);
  return (2.0 / (c_err * c_err)) * (1.0 - c_err) * (1.0 - c_err) * (x - 1.0);
}

double cum_back_low(double c_err, double x) {
  check_cerr(c_err);
  check_lower(c_err, x);
  return (1.0 - x) * (2.0 * c_err + x - 1.0) / (c_err * c_err);
}

double cum_back_high(double c_err, double x) {
  check_cerr(c_err);
  check_higher(c_err, x);
  return (1.0 - c_err) * (x - 1.0) * (c_err * x + c_err - x + 1.0) / (c_err * c_err);
}

double cum_tar_low(double c_err, double x) {
  check_cerr(c_err);
  check_lower(c_err, x);
  return (x - 1.0) * (x - 1.0) / (c_err * c_err);
}

double cum_tar_high(double c_err, double x) {
  check_cerr(c_err);
  check_higher(c_err, x);
  return (c_err - 1.0) * (c_err - 1.0) * (x - 1.0) * (x - 1.0) / (c_err * c_err);
}

TriangularModels triangular_models(double c_err, double x) {
  check_cerr(c_err);
  TriangularModels m{};
  bool lower = x <= 1.0;
  if (lower) {
    m.p_back_low = density_back_low(c_err, x);
    m.p_tar_low = density_tar_low(c_err, x);
    m.P_back_low = cum_back_low(c_err, x);
    m.P_tar_low = cum_tar_low(c_err, x);
  }
  if (!lower || x == 1.0) {
    m.p_back_high = density_back_high(c_err, x);
    m.p_tar_high = density_tar_high(c_err, x);
    m.P_back_high = cum_back_high(c_err, x);
    m.P_tar_high = cum_tar_high(c_err, x);
  }
  return m;
}

OutcomeProbs outcome_probs(const DetectionParams& p) {
  p.validate();
  double tl = cum_tar_low(p.c_err, p.x_cut_min());
  double th = cum_tar_high(p.c_err, p.x_cut_max());
  double bl = cum_back_low(p.c_err, p.x_cut_min());
  double bh = cum_back_high(p.c_err, p.x_cut_max());
  OutcomeProbs o;
  o.p_tt = (1.0 - tl + 1.0 - th) / 2.0;
  o.p_tb = (tl + th) / 2.0;
  o.p_bt = (1.0 - bl + 1.0 - bh) / 2.0;
  o.p_bb = (bl + bh) / 2.0;
  return o;
}

double prob_bb_count(const DetectionParams& p, unsigned n_samp, unsigned k) {
  if (n_samp < 1 || k > n_samp) throw parameter_error("bad binomial arguments");
  double p_bb = outcome_probs(p).p_bb;
  double binom = 1.0;
  for (unsigned i = 0; i < k; ++i) {
    binom *= static_cast<double>(n_samp - i) / static_cast<double>(i + 1);
  }
  return binom * std::pow(p_bb, k) * std::pow(1.0 - p_bb, n_samp - k);
}

const char* roc_variant_name(RocVariant v) {
  switch (v) {
    case RocVariant::kBaseline: return "baseline";
    case RocVariant::kCoherent: return "coherent";
    case RocVariant::kMismatchAll: return "mismatch_all";
    case RocVariant::kMismatchNone: return "mismatch_none";
  }
  return "?";
}

std::vector<RocPoint> roc_curve(double c_err, const std::vector<double>& cut_grid,
                                RocVariant variant, unsigned n_samp, double f) {
  check_cerr(c_err);
  if (variant == RocVariant::kCoherent && n_samp < 1) {
    throw parameter_error("n_samp must be >= 1");
  }
  if ((variant == RocVariant::kMismatchAll || variant == RocVariant::kMismatchNone) &&
      !(f > 0 && f <= 1)) {
    throw parameter_error("mismatch fraction f must be in (0,1]");
  }
  std::vector<RocPoint> out;
  out.reserve(cut_grid.size());
  for (double c_cut : cut_grid) {
    DetectionParams p{c_err, c_cut};
    OutcomeProbs o = outcome_probs(p);
    RocPoint pt;
    pt.variant = variant;
    pt.c_err = c_err;
    pt.c_cut = c_cut;
    pt.n_samp = n_samp;
    pt.f = f;
    switch (variant) {
      case RocVariant::kBaseline:
        pt.p_fa = o.p_bt;
        pt.p_det = o.p_tt;
        break;
      case RocVariant::kCoherent:
        pt.p_fa = std::pow(o.p_bt, n_samp);
        pt.p_det = o.p_tt;
        break;
      case RocVariant::kMismatchAll:
        pt.p_fa = o.p_bt * f + 1.0 - f;
        pt.p_det = o.p_tt * f + 1.0 - f;
        break;
      case RocVariant::kMismatchNone:
        pt.p_fa = o.p_bt * f;
        pt.p_det = o.p_tt * f;
        break;
    }
    out.push_back(pt);
  }
  return out;
}

double fdmax(std::uint64_t d_max) {
  if (d_max < 2) throw parameter_error("fdmax requires d_max >= 2");
  return 1.0 / std::log2(static_cast<double>(d_max));
}

std::vector<ModelCurvePoint> model_curves(double zm_delta, double zm_alpha, double gauss_mu,
                                          double gauss_sigma, double c_err,
                                          const std::vector<double>& d_grid) {
  check_cerr(c_err);
  if (gauss_sigma <= 0) throw parameter_error("gauss sigma must be > 0");
  double zm_norm = 0;
  for (double d : d_grid) {
    if (d <= 0) throw parameter_error("model grid must be positive");
    zm_norm += std::pow(d + zm_delta, -zm_alpha);
  }
  std::vector<ModelCurvePoint> out;
  out.reserve(d_grid.size());
  const double lo = 1.0 - c_err, hi = 1.0 / (1.0 - c_err);
  for (double d : d_grid) {
    ModelCurvePoint pt{};
    pt.d = d;
    pt.p_zm = std::pow(d + zm_delta, -zm_alpha) / zm_norm;
    double gz = (d - gauss_mu) / gauss_sigma;
    pt.p_gauss = std::exp(-0.5 * gz * gz) / (gauss_sigma * std::sqrt(2.0 * M_PI));
    pt.p_zm_lo = pt.p_zm * lo;
    pt.p_zm_hi = pt.p_zm * hi;
    pt.p_gauss_lo = pt.p_gauss * lo;
    pt.p_gauss_hi = pt.p_gauss * hi;
    out.push_back(pt);
  }
  return out;
}

}  // namespace hstm
