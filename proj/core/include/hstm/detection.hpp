#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hstm {

// Triangular background/target model parameters. x is a multiplicative
// distance (observed/model ratio), so the domain [1-c_err, 1/(1-c_err)] is
// asymmetric around 1.
struct DetectionParams {
  double c_err = 2.0 / 3.0;  // in (0,1)
  double c_cut = 1.0 / 3.0;  // in (0, c_err)

  double x_min() const { return 1.0 - c_err; }
  double x_max() const { return 1.0 / (1.0 - c_err); }
  double x_cut_min() const { return 1.0 - c_cut; }
  double x_cut_max() const { return 1.0 / (1.0 - c_cut); }

  void validate() const;  // throws parameter_error
};

// The eight closed forms: normalized densities on their branch domains and
// the cumulative forms as printed (lower branch cumulatives are upper tails
// P(sample > x), higher branch cumulatives are lower tails P(sample < x)).
struct TriangularModels {
  double p_back_low, p_back_high, p_tar_low, p_tar_high;
  double P_back_low, P_back_high, P_tar_low, P_tar_high;
};
TriangularModels triangular_models(double c_err, double x);

// Lower-branch densities live on [x_min, 1], higher on [1, x_max]; calling
// the out-of-branch side throws a domain error via triangular_models.
double density_back_low(double c_err, double x);
double density_back_high(double c_err, double x);
double density_tar_low(double c_err, double x);
double density_tar_high(double c_err, double x);
double cum_back_low(double c_err, double x);   // P(sample > x), lower branch
double cum_back_high(double c_err, double x);  // P(sample < x), higher branch
double cum_tar_low(double c_err, double x);
double cum_tar_high(double c_err, double x);

// Probabilities of the four labeling outcomes at the cut thresholds.
struct OutcomeProbs {
  double p_tt = 0;  // true target labeled target (detection)
  double p_tb = 0;  // missed detection
  double p_bt = 0;  // false alarm
  double p_bb = 0;  // correct nondetection
};
OutcomeProbs outcome_probs(const DetectionParams& p);

// Binomial count of BB labels over n_samp consecutive background samples.
double prob_bb_count(const DetectionParams& p, unsigned n_samp, unsigned k);

enum class RocVariant { kBaseline, kCoherent, kMismatchAll, kMismatchNone };
const char* roc_variant_name(RocVariant v);

struct RocPoint {
  RocVariant variant = RocVariant::kBaseline;
  double c_err = 0;
  double c_cut = 0;
  unsigned n_samp = 1;  // coherent only
  double f = 1.0;       // mismatch fraction, mismatch variants only
  double p_fa = 0;
  double p_det = 0;
};

// Baseline: (p_bt, p_tt). Coherent: (p_bt^n_samp, p_tt).
// Mismatch-all: (p_bt*f + 1-f, p_tt*f + 1-f). Mismatch-none: (p_bt*f, p_tt*f).
std::vector<RocPoint> roc_curve(double c_err, const std::vector<double>& cut_grid,
                                RocVariant variant, unsigned n_samp = 1, double f = 1.0);

// Fractional accuracy of a mismatched background model over log2 bins.
double fdmax(std::uint64_t d_max);

// Reference model curves with multiplicative error bounds
// [(1-c_err)*p, p/(1-c_err)] per point.
struct ModelCurvePoint {
  double d;
  double p_zm, p_zm_lo, p_zm_hi;
  double p_gauss, p_gauss_lo, p_gauss_hi;
};
std::vector<ModelCurvePoint> model_curves(double zm_delta, double zm_alpha, double gauss_mu,
                                          double gauss_sigma, double c_err,
                                          const std::vector<double>& d_grid);

}  // namespace hstm
