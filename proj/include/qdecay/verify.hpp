#pragma once

// Property suites run by `qdecay verify`.

#include <cstdint>
#include <string>
#include <vector>

namespace qdecay {

struct VerifyOptions {
  std::uint64_t seed = 1;
  int trials = 200;  // entropy suite instances
  int trees = 500;   // walks suite instances
  int n = 5;         // glue suite qubits
  int k = 1;         // glue suite copies
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t checks = 0;
  std::string first_failure;
  double seconds = 0.0;
  std::vector<std::string> notes;

  /// "PASS name: N checks in T s" or "FAIL name: <first failure>".
  std::string summary() const;
};

std::vector<std::string> suite_names();
/// Throws std::invalid_argument for an unknown suite name.
SuiteResult run_suite(const std::string& name, const VerifyOptions& opts);

SuiteResult verify_entropy(const VerifyOptions& opts);
SuiteResult verify_moments(const VerifyOptions& opts);
SuiteResult verify_walks(const VerifyOptions& opts);
SuiteResult verify_arch(const VerifyOptions& opts);
SuiteResult verify_glue(const VerifyOptions& opts);
SuiteResult verify_cb(const VerifyOptions& opts);
SuiteResult verify_formulas(const VerifyOptions& opts);

}  // namespace qdecay
