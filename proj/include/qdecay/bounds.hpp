#pragma once

// Closed-form decay constants, gluing errors and depths. Every calculator
// returns a BoundReport echoing its inputs together with validity flags.

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qdecay {

enum class Variant { kAsStated, kAsDerived };
std::string to_string(Variant v);
Variant parse_variant(const std::string& s);

enum class Validity { kOk, kFailed, kUnknown };
std::string to_string(Validity v);

struct ValidityFlag {
  std::string name;
  Validity state = Validity::kUnknown;
  bool precondition = false;  // input-range requirement rather than a reported property
  bool ok() const noexcept { return state == Validity::kOk; }
};

struct BoundReport {
  std::string formula_id;
  std::vector<std::pair<std::string, double>> inputs;
  std::optional<Variant> variant;
  std::vector<std::pair<std::string, double>> values;  // first entry is the headline value
  std::vector<ValidityFlag> validity;
  std::vector<std::string> notes;

  double value() const;
  std::optional<double> get(const std::string& name) const;
  bool all_valid() const;
  /// First failed flag name, if any.
  std::optional<std::string> first_failure() const;
  /// First failed precondition flag name, if any.
  std::optional<std::string> failed_precondition() const;

  std::string to_json(int indent = 2) const;
  static BoundReport from_json(const std::string& text);
  /// Flattened columns: formula_id, variant, inputs..., values..., flags...
  std::vector<std::string> csv_header() const;
  std::vector<std::string> csv_row() const;
};

std::string to_csv(const std::vector<BoundReport>& reports);

/// log_q(x), snapped to the nearest integer when within 1e-12 of it so that
/// exact powers do not round up under ceil.
double log_q(double x, double q);
double ceil_snapped(double x);

BoundReport glue_error(double eps1, double eps2, int k, double dim_b);
BoundReport glue_chain(const std::vector<double>& overlap_dims, int k);

BoundReport parallel_r(int q, int k, double n, double eps, Variant variant);
BoundReport parallel_delta(int q, int k, double n, int r, Variant variant);
BoundReport parallel_lambda(int q, int k, double n, double c_k);

enum class LogConvention { kNatural, kBase2, kBaseQ };
std::string to_string(LogConvention c);
LogConvention parse_log_convention(const std::string& s);

struct CqkMode {
  bool user_override = false;
  double override_value = 1.0;
  LogConvention log = LogConvention::kNatural;
};
BoundReport c_qk(int q, int k, CqkMode mode = {});

BoundReport parallel_depth(int q, int k, double n, double eps, int ell, double c_qk_value);
BoundReport tree_lambda(int q, int k, double n, int ell, double eps_prime, double min_p_lambda, double c_qk_value);
BoundReport random_graph_lambda(int q, int k, double n, int ell, double eps, double min_p_lambda, double c_qk_value,
                                Variant variant, std::optional<bool> connected = std::nullopt);
/// Uniform complete graph: effective l = 2 and min p = 2 / (n (n - 1)).
BoundReport complete_graph_lambda(int q, int k, int n, double eps, double local_lambda, double c_qk_value,
                                  Variant variant);
BoundReport compose_sdpi(const std::vector<double>& lambdas, double eps, double delta);
/// C(k) = max(1, prefactor (log2 k)^7), then parallel_lambda with q = 2.
BoundReport brickwork_lambda(double n, int k, double prefactor = 1.0);

}  // namespace qdecay
