#include "qdecay/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qdecay/entropy.hpp"

namespace qdecay {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Validity flag(bool ok) { return ok ? Validity::kOk : Validity::kFailed; }

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ojson number_or_string(double x) {
  if (std::isfinite(x)) return x;
  return fmt(x);
}

double number_from(const ojson& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "nan") return kNaN;
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return std::stod(s);
}

int segment_sites(int q, int k, double n, int ell, double eps_prime) {
  return 2 * ell * static_cast<int>(ceil_snapped(log_q(60.0 * k * k * n / eps_prime, q)));
}

bool eps_prime_in_range(int q, int k, double n, double eps_prime) {
  // eps' <= q^n / (60 k^2 n), compared in log_q to avoid overflow.
  return eps_prime > 0.0 && log_q(eps_prime, q) <= n - log_q(60.0 * k * k * n, q) + 1e-12;
}

}  // namespace

std::string to_string(Variant v) { return v == Variant::kAsStated ? "as_stated" : "as_derived"; }

Variant parse_variant(const std::string& s) {
  if (s == "as_stated" || s == "stated") return Variant::kAsStated;
  if (s == "as_derived" || s == "derived") return Variant::kAsDerived;
  throw std::invalid_argument("unknown variant: " + s);
}

std::string to_string(Validity v) {
  switch (v) {
    case Validity::kOk:
      return "ok";
    case Validity::kFailed:
      return "failed";
    case Validity::kUnknown:
      return "unknown";
  }
  return "unknown";
}

std::string to_string(LogConvention c) {
  switch (c) {
    case LogConvention::kNatural:
      return "natural";
    case LogConvention::kBase2:
      return "base2";
    case LogConvention::kBaseQ:
      return "base_q";
  }
  return "natural";
}

LogConvention parse_log_convention(const std::string& s) {
  if (s == "natural" || s == "ln" || s == "e") return LogConvention::kNatural;
  if (s == "base2" || s == "2") return LogConvention::kBase2;
  if (s == "base_q" || s == "q") return LogConvention::kBaseQ;
  throw std::invalid_argument("unknown log convention: " + s);
}

double BoundReport::value() const { return values.empty() ? kNaN : values.front().second; }

std::optional<double> BoundReport::get(const std::string& name) const {
  for (const auto& [k, v] : values) {
    if (k == name) return v;
  }
  for (const auto& [k, v] : inputs) {
    if (k == name) return v;
  }
  return std::nullopt;
}

bool BoundReport::all_valid() const {
  return std::all_of(validity.begin(), validity.end(), [](const ValidityFlag& f) { return f.ok(); });
}

std::optional<std::string> BoundReport::first_failure() const {
  for (const auto& f : validity) {
    if (f.state == Validity::kFailed) return f.name;
  }
  return std::nullopt;
}

std::optional<std::string> BoundReport::failed_precondition() const {
  for (const auto& f : validity) {
    if (f.precondition && f.state == Validity::kFailed) return f.name;
  }
  return std::nullopt;
}

std::string BoundReport::to_json(int indent) const {
  ojson doc;
  doc["formula_id"] = formula_id;
  doc["inputs"] = ojson::object();
  for (const auto& [k, v] : inputs) doc["inputs"][k] = number_or_string(v);
  doc["variant"] = variant ? ojson(to_string(*variant)) : ojson(nullptr);
  doc["values"] = ojson::object();
  for (const auto& [k, v] : values) doc["values"][k] = number_or_string(v);
  doc["validity"] = ojson::array();
  for (const auto& f : validity) {
    ojson jf;
    jf["name"] = f.name;
    jf["ok"] = f.state == Validity::kUnknown ? ojson(nullptr) : ojson(f.ok());
    jf["state"] = to_string(f.state);
    jf["precondition"] = f.precondition;
    doc["validity"].push_back(jf);
  }
  doc["notes"] = notes;
  return doc.dump(indent);
}

BoundReport BoundReport::from_json(const std::string& text) {
  const auto doc = ojson::parse(text);
  BoundReport r;
  r.formula_id = doc.at("formula_id").get<std::string>();
  for (const auto& [k, v] : doc.at("inputs").items()) r.inputs.emplace_back(k, number_from(v));
  if (!doc.at("variant").is_null()) r.variant = parse_variant(doc.at("variant").get<std::string>());
  for (const auto& [k, v] : doc.at("values").items()) r.values.emplace_back(k, number_from(v));
  for (const auto& jf : doc.at("validity")) {
    ValidityFlag f;
    f.name = jf.at("name").get<std::string>();
    const auto state = jf.at("state").get<std::string>();
    f.state = state == "ok" ? Validity::kOk : state == "failed" ? Validity::kFailed : Validity::kUnknown;
    f.precondition = jf.value("precondition", false);
    r.validity.push_back(f);
  }
  r.notes = doc.at("notes").get<std::vector<std::string>>();
  return r;
}

std::vector<std::string> BoundReport::csv_header() const {
  std::vector<std::string> h{"formula_id", "variant"};
  for (const auto& [k, v] : inputs) h.push_back(k);
  for (const auto& [k, v] : values) h.push_back(k);
  for (const auto& f : validity) h.push_back("valid:" + f.name);
  return h;
}

std::vector<std::string> BoundReport::csv_row() const {
  std::vector<std::string> row{formula_id, variant ? to_string(*variant) : ""};
  for (const auto& [k, v] : inputs) row.push_back(fmt(v));
  for (const auto& [k, v] : values) row.push_back(fmt(v));
  for (const auto& f : validity) row.push_back(to_string(f.state));
  return row;
}

std::string to_csv(const std::vector<BoundReport>& reports) {
  std::ostringstream out;
  auto write = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const bool quote = cells[i].find_first_of(",\"\n") != std::string::npos;
      if (i) out << ',';
      if (quote) {
        out << '"';
        for (char c : cells[i]) out << (c == '"' ? std::string("\"\"") : std::string(1, c));
        out << '"';
      } else {
        out << cells[i];
      }
    }
    out << '\n';
  };
  std::vector<std::string> header;
  for (const auto& r : reports) {
    auto h = r.csv_header();
    if (h != header) {
      write(h);
      header = std::move(h);
    }
    write(r.csv_row());
  }
  return out.str();
}

double log_q(double x, double q) {
  const double v = std::log(x) / std::log(q);
  const double rounded = std::round(v);
  return std::abs(v - rounded) <= 1e-12 * std::max(1.0, std::abs(v)) ? rounded : v;
}

double ceil_snapped(double x) {
  const double rounded = std::round(x);
  if (std::abs(x - rounded) <= 1e-12 * std::max(1.0, std::abs(x))) return rounded;
  return std::ceil(x);
}

BoundReport glue_error(double eps1, double eps2, int k, double dim_b) {
  if (!(dim_b > 0.0)) throw std::invalid_argument("glue_error: dim_B must be positive");
  BoundReport r;
  r.formula_id = "glue_error";
  r.inputs = {{"eps1", eps1}, {"eps2", eps2}, {"k", k}, {"dim_B", dim_b}};
  const double growth = 5.0 * k * k / dim_b;
  r.values = {{"eps", (1.0 + eps1) * (1.0 + eps2) * (1.0 + growth) - 1.0}};
  r.validity = {{"dim_B >= 5k^2", flag(dim_b >= 5.0 * k * k)},
                {"eps1, eps2 >= 0", flag(eps1 >= 0.0 && eps2 >= 0.0), true}};
  return r;
}

BoundReport glue_chain(const std::vector<double>& overlap_dims, int k) {
  BoundReport r;
  r.formula_id = "glue_chain";
  r.inputs = {{"k", k}, {"overlaps", static_cast<double>(overlap_dims.size())}};
  double log_prod = 0.0;
  double inv_sum = 0.0;
  bool large = true;
  for (double a : overlap_dims) {
    if (!(a > 0.0)) throw std::invalid_argument("glue_chain: overlap dimensions must be positive");
    log_prod += std::log1p(5.0 * k * k / a);
    inv_sum += 1.0 / a;
    large = large && a >= 5.0 * k * k;
  }
  const double exact = std::expm1(log_prod);
  const double bound = overlap_dims.empty() ? 0.0 : std::expm1(1.0 + 5.0 * k * k * inv_sum);
  r.values = {{"exact", exact}, {"exp_bound", bound}};
  r.validity = {{"all overlaps >= 5k^2", flag(large)}};
  if (overlap_dims.empty()) r.notes.push_back("empty chain: no gluing, error 0");
  return r;
}

BoundReport parallel_r(int q, int k, double n, double eps, Variant variant) {
  BoundReport r;
  r.formula_id = "parallel_r";
  r.variant = variant;
  r.inputs = {{"q", q}, {"k", k}, {"n", n}, {"eps", eps}};
  const double base = log_q(static_cast<double>(k) * k * n / eps, q);
  const double stated = 2.0 * ceil_snapped(base + log_q(10.0, q) + 1.0);
  const double derived = 2.0 * ceil_snapped(log_q(10.0 * q * q * k * k * n / eps, q) + 1.0);
  const double chosen = variant == Variant::kAsStated ? stated : derived;
  r.values = {{"r", chosen}, {"r_as_stated", stated}, {"r_as_derived", derived}};
  r.validity = {{"eps in (0, 1/2]", flag(eps > 0.0 && eps <= 0.5), true},
                {"q >= 2, n >= 2, k >= 1", flag(q >= 2 && n >= 2 && k >= 1), true},
                {"r < n/4", flag(chosen < n / 4.0)}};
  return r;
}

BoundReport parallel_delta(int q, int k, double n, int r_chunk, Variant variant) {
  BoundReport r;
  r.formula_id = "parallel_delta";
  r.variant = variant;
  r.inputs = {{"q", q}, {"k", k}, {"n", n}, {"r", r_chunk}};
  const double kk = static_cast<double>(k) * k;
  const double stated = std::expm1(1.0 + 20.0 * kk * n / (r_chunk * std::pow(q, r_chunk / 2.0 - 1.0)));
  const double derived = std::expm1(1.0 + 10.0 * kk * n / (std::pow(q, r_chunk - 1.0) * r_chunk));
  const double chosen = variant == Variant::kAsStated ? stated : derived;
  r.values = {{"delta", chosen},
              {"delta_as_stated", stated},
              {"delta_as_derived", derived},
              {"difference", stated - derived}};
  r.validity = {{"r even >= 2", flag(r_chunk >= 2 && r_chunk % 2 == 0), true}};
  return r;
}

BoundReport parallel_lambda(int q, int k, double n, double c_k) {
  BoundReport r;
  r.formula_id = "parallel_lambda";
  r.inputs = {{"q", q}, {"k", k}, {"n", n}, {"C_k", c_k}};
  const double lg = log_q(5670.0 * q * q * static_cast<double>(k) * k * n, q);
  r.values = {{"lambda", 2.0 / (3.0 * k * c_k * lg)}, {"log_q_term", lg}};
  r.validity = {{"q, k, n >= 1", flag(q >= 1 && k >= 1 && n >= 1), true}, {"C_k > 0", flag(c_k > 0.0), true}};
  r.notes.push_back("CSDPI constant of the two-layer circuit applied twice");
  r.notes.push_back("C(k) is taken as a CSDPI-type depth constant; the hypothesis reads like a design depth");
  return r;
}

BoundReport c_qk(int q, int k, CqkMode mode) {
  BoundReport r;
  r.formula_id = "c_qk";
  r.inputs = {{"q", q}, {"k", k}};
  r.validity = {{"q >= 2, k >= 1", flag(q >= 2 && k >= 1), true}};
  if (mode.user_override) {
    r.inputs.emplace_back("override", mode.override_value);
    r.values = {{"C", mode.override_value}};
    r.notes.push_back("user override");
    return r;
  }
  double log_of_q = std::log(static_cast<double>(q));
  if (mode.log == LogConvention::kBase2) log_of_q = std::log2(static_cast<double>(q));
  if (mode.log == LogConvention::kBaseQ) log_of_q = 1.0;
  const double c = ceil_snapped(log_q(4.0 * k, q));
  const double value = 261000.0 * c * c * q * q * std::pow(static_cast<double>(k), 5.0 + 3.1 / log_of_q);
  r.values = {{"C", value}};
  r.notes.push_back("exponent log convention: " + to_string(mode.log));
  return r;
}

BoundReport parallel_depth(int q, int k, double n, double eps, int ell, double c_qk_value) {
  BoundReport r;
  r.formula_id = "parallel_depth";
  r.inputs = {{"q", q}, {"k", k}, {"n", n}, {"eps", eps}, {"ell", ell}, {"C_qk", c_qk_value}};
  const double m = ceil_snapped((2.0 * k * n + log_q(1.0 / eps, q)) * 4.0 * std::pow(c_qk_value, ell - 1));
  r.values = {{"m", m}};
  r.validity = {{"eps in (0, 1)", flag(eps > 0.0 && eps < 1.0), true}, {"ell >= 2", flag(ell >= 2), true}};
  return r;
}

BoundReport tree_lambda(int q, int k, double n, int ell, double eps_prime, double min_p_lambda, double c_qk_value) {
  BoundReport r;
  r.formula_id = "tree_lambda";
  r.inputs = {{"q", q},           {"k", k},           {"n", n},          {"ell", ell},
              {"eps_prime", eps_prime}, {"min_p_lambda", min_p_lambda}, {"C_qk", c_qk_value}};
  const int sites = segment_sites(q, k, n, ell, eps_prime);
  const BoundReport depth = parallel_depth(q, k, sites, 0.1, ell, c_qk_value);
  const double f = depth.value();
  const double factor = 1.0 - eps_prime;
  r.values = {{"lambda", factor * min_p_lambda / (4.0 * f)},
              {"segment_sites", static_cast<double>(sites)},
              {"f", f},
              {"one_minus_eps_prime", factor}};
  r.validity = {{"eps_prime in (0, q^n/(60k^2 n)]", flag(eps_prime_in_range(q, k, n, eps_prime))},
                {"ell >= 2", flag(ell >= 2), true},
                {"min_p_lambda > 0", flag(min_p_lambda > 0.0), true}};
  r.notes.push_back("local constants labelled (C)MLSI and (C)SDPI are both read as local SDPI constants");
  return r;
}

BoundReport random_graph_lambda(int q, int k, double n, int ell, double eps, double min_p_lambda, double c_qk_value,
                                Variant variant, std::optional<bool> connected) {
  BoundReport r;
  r.formula_id = "random_graph_lambda";
  r.variant = variant;
  r.inputs = {{"q", q},     {"k", k},           {"n", n},          {"ell", ell},
              {"eps", eps}, {"min_p_lambda", min_p_lambda}, {"C_qk", c_qk_value}};
  const int sites = segment_sites(q, k, n, ell, eps);
  const double stated = 4.0 * (1.0 - eps) * std::pow(c_qk_value, ell - 1) * min_p_lambda /
                        (2.0 * k * sites + log_q(0.1, q));
  const double derived = tree_lambda(q, k, n, ell, eps, min_p_lambda, c_qk_value).value();
  r.values = {{"lambda", variant == Variant::kAsStated ? stated : derived},
              {"lambda_as_stated", stated},
              {"lambda_as_derived", derived},
              {"stated_over_derived", stated / derived}};
  r.validity = {{"connected graph", connected ? flag(*connected) : Validity::kUnknown},
                {"eps in (0, q^n/(60k^2 n)]", flag(eps_prime_in_range(q, k, n, eps))},
                {"ell >= 1", flag(ell >= 1), true}};
  r.notes.push_back("as_stated: literal text with C^(l-1) in the numerator and log_q(1/10) in the denominator");
  r.notes.push_back("as_derived: tree_lambda with f from parallel_depth");
  return r;
}

BoundReport complete_graph_lambda(int q, int k, int n, double eps, double local_lambda, double c_qk_value,
                                  Variant variant) {
  if (n < 2) throw std::invalid_argument("complete_graph_lambda: n must be >= 2");
  const double min_p = 2.0 / (static_cast<double>(n) * (n - 1));
  BoundReport r = random_graph_lambda(q, k, n, 2, eps, min_p * local_lambda, c_qk_value, variant, true);
  r.formula_id = "complete_graph_lambda";
  r.inputs.emplace_back("local_lambda", local_lambda);
  r.values.emplace_back("min_p", min_p);
  r.notes.push_back("uniform complete graph as an average over random paths: effective l = 2");
  return r;
}

BoundReport compose_sdpi(const std::vector<double>& lambdas, double eps, double delta) {
  BoundReport r;
  r.formula_id = "compose_sdpi";
  r.inputs = {{"eps", eps}, {"delta", delta}};
  for (std::size_t i = 0; i < lambdas.size(); ++i) r.inputs.emplace_back("lambda_" + std::to_string(i), lambdas[i]);
  const bool lambdas_ok = !lambdas.empty() && std::all_of(lambdas.begin(), lambdas.end(),
                                                          [](double l) { return l > 0.0 && l <= 1.0; });
  const bool range_ok = eps >= 0.0 && eps < 1.0 && delta >= 0.0 && delta < 1.0;
  r.validity = {{"lambdas in (0, 1]", flag(lambdas_ok), true}, {"eps, delta in [0, 1)", flag(range_ok), true}};
  if (lambdas.empty() || !range_ok) {
    r.values = {{"lambda", kNaN}};
    return r;
  }
  const double min_lambda = *std::min_element(lambdas.begin(), lambdas.end());
  const BetaParams b = beta(eps, delta);
  r.values = {{"lambda", min_lambda * b.beta}, {"min_lambda", min_lambda}, {"beta", b.beta}};
  r.notes.push_back("beta variant: " + to_string(b.variant));
  return r;
}

BoundReport brickwork_lambda(double n, int k, double prefactor) {
  const double lg = std::log2(static_cast<double>(std::max(k, 1)));
  const double c_k = std::max(1.0, prefactor * std::pow(lg, 7));
  BoundReport r = parallel_lambda(2, k, n, c_k);
  r.formula_id = "brickwork_lambda";
  r.inputs = {{"n", n}, {"k", k}, {"prefactor", prefactor}};
  r.values.emplace_back("C_k", c_k);
  r.validity.push_back({"k <= a 2^(2n/5) for the unknown constant a", Validity::kUnknown});
  r.notes.push_back("C(k) = max(1, prefactor (log2 k)^7) by convention");
  return r;
}

}  // namespace qdecay
