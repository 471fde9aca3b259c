#pragma once

// The invariant suite behind `ptgauge verify`: algebra, PT symmetry, BCH
// relations, kernel reduction, biorthonormality, metric and the classical
// identities, each reduced to one residual against a fixed tolerance.

#include <string>
#include <vector>

#include "ptgauge/gauge_engine.hpp"

namespace ptgauge {

enum class CheckStatus { Passed, Failed, Skipped };

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::Skipped;
  std::string note;
};

struct VerifyOptions {
  /// Flips the sign of the S+- part of the connection closed form.
  bool inject_fault = false;
  double time = 0.3;
  int bch_cutoff = 128;
  int bch_margin = 16;
  int state_count = 9;  // biorthonormality over n, m < state_count
  CutoffPolicy policy;
  int classical_samples = 1000;
};

std::vector<CheckResult> run_verification(const ModelParams& params,
                                          const VerifyOptions& options = {});

/// Max |H' - Gamma (n + 1/2)| over the diagonal and max |H'| off it, on the
/// leading `block` states.
struct KernelDeviation {
  double diagonal = 0.0;
  double off_diagonal = 0.0;
  double max() const { return diagonal > off_diagonal ? diagonal : off_diagonal; }
};
KernelDeviation kernel_deviation(const OperatorMatrix& transformed, double gamma, int block);

}  // namespace ptgauge
