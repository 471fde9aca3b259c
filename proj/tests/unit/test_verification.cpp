#include "doctest.h"

#include <algorithm>

#include "ptgauge/verification.hpp"
#include "support/generators.hpp"

using namespace ptgauge;

namespace {

const CheckResult& find(const std::vector<CheckResult>& checks, const std::string& name) {
  const auto it = std::find_if(checks.begin(), checks.end(), [&](const CheckResult& c) { return c.name == name; });
  REQUIRE(it != checks.end());
  return *it;
}

}  // namespace

TEST_CASE("verification suite passes at the acceptance parameters") {
  for (Branch b : {Branch::Plus, Branch::Minus}) {
    const auto checks = run_verification(testing::acceptance_params(b));
    CHECK(checks.size() == 16);
    for (const auto& c : checks) {
      INFO(c.name << " " << c.residual << " " << c.note);
      CHECK(c.status != CheckStatus::Failed);
      if (c.status == CheckStatus::Passed) CHECK(c.residual <= c.tolerance);
    }
    const bool fock = b == Branch::Minus;
    CHECK((find(checks, "biorthonormality").status == CheckStatus::Passed) == fock);
    CHECK((find(checks, "kernel_similarity").status == CheckStatus::Skipped) == !fock);
  }
}

TEST_CASE("injected fault is caught") {
  VerifyOptions opt;
  opt.inject_fault = true;
  const auto checks = run_verification(testing::acceptance_params(Branch::Minus), opt);
  CHECK(find(checks, "bch_connection").status == CheckStatus::Failed);
  CHECK(find(checks, "bch_splus").status == CheckStatus::Passed);
}

TEST_CASE("G = 0 residuals are at machine precision") {
  const auto checks = run_verification({2.0, 0.0, 1.0, Branch::Minus});
  for (const auto& c : checks) {
    INFO(c.name);
    CHECK(c.status == CheckStatus::Passed);
    CHECK(c.residual < 1e-13);
  }
}

TEST_CASE("kernel_deviation") {
  const FockSpace s(8);
  CMatrix m = CMatrix::Zero(8, 8);
  for (int n = 0; n < 8; ++n) m(n, n) = (n + 0.5) * 1.5;
  m(2, 5) = 1e-3;
  const auto d = kernel_deviation(OperatorMatrix(s, m), 1.5, 8);
  CHECK(d.diagonal < 1e-15);
  CHECK(d.off_diagonal == doctest::Approx(1e-3));
  CHECK(kernel_deviation(OperatorMatrix(s, m), 1.5, 4).off_diagonal == 0.0);
}
