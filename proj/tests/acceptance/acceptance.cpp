// Acceptance run: one PASS/FAIL line per criterion, exit 0 iff all pass.
// Usage: qdecay_acceptance [criterion ...]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/oracle_values.hpp"
#include "qdecay/arch.hpp"
#include "qdecay/bounds.hpp"
#include "qdecay/channels.hpp"
#include "qdecay/entropy.hpp"
#include "qdecay/moments.hpp"
#include "qdecay/parallel.hpp"
#include "qdecay/simulation.hpp"
#include "qdecay/verify.hpp"

using namespace qdecay;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) {
      passed = false;
      detail = what;
    }
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Projector properties plus Monte-Carlo agreement within 5 standard errors.
Outcome twirl_projector() {
  Outcome o;
  std::ostringstream summary;
  const std::vector<std::pair<int, int>> cases{{2, 1}, {3, 1}, {2, 2}, {3, 2}, {2, 3}};
  for (const auto& [d, k] : cases) {
    const std::string tag = "(d=" + std::to_string(d) + ", k=" + std::to_string(k) + ")";
    const CondExpectation e = haar_twirl_projector(d, k);
    o.require(e.idempotent, "not idempotent at 1e-8 " + tag);
    o.require(e.self_adjoint, "not HS self-adjoint at 1e-8 " + tag);
    for (const auto& s : all_permutations(k)) {
      const Matrix p = permutation_operator(s, d);
      o.require(max_abs(qdecay::apply(e.channel, p) - p) <= 1e-10, "P_sigma not fixed at 1e-10 " + tag);
    }
    Rng rng(derive_seed(1001, static_cast<std::uint64_t>(d * 10 + k)));
    const auto dim = static_cast<std::size_t>(std::pow(d, k));
    std::vector<Matrix> inputs;
    for (int i = 0; i < 20; ++i) {
      inputs.push_back(i % 2 == 0 ? random_density(dim, 1 + static_cast<std::size_t>(i) % dim, rng)
                                  : random_hermitian(dim, 1.0, rng));
    }
    const McTwirlResult mc = mc_twirl(inputs, d, k, 100000, derive_seed(2002, static_cast<std::uint64_t>(d * 10 + k)));
    double worst_z = 0.0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const Matrix exact = qdecay::apply(e.channel, inputs[i]);
      const RealMatrix dev = (mc.mean[i] - exact).cwiseAbs();
      for (Eigen::Index r = 0; r < dev.rows(); ++r) {
        for (Eigen::Index c = 0; c < dev.cols(); ++c) {
          const double se = mc.std_error[i](r, c).real();
          const double allowed = 5.0 * se + 1e-10;
          if (se > 0.0) worst_z = std::max(worst_z, dev(r, c) / se);
          o.require(dev(r, c) <= allowed, "Monte-Carlo deviation " + num(dev(r, c)) + " above 5 s.e. " + tag);
        }
      }
    }
    summary << tag << " max z " << num(worst_z) << "; ";
  }
  if (o.passed) o.detail = summary.str();
  return o;
}

// Twirls on qubit layouts with n <= 3 and k in {1, 2}.
std::vector<std::pair<SiteLayout, ChannelPtr>> qubit_twirls() {
  std::vector<std::pair<SiteLayout, ChannelPtr>> out;
  for (int n = 1; n <= 3; ++n) {
    for (int k = 1; k <= 2; ++k) {
      const SiteLayout layout = SiteLayout::uniform(n, 2, k);
      std::vector<int> all(static_cast<std::size_t>(n));
      for (int s = 0; s < n; ++s) all[s] = s;
      out.emplace_back(layout, share(global_twirl(layout)));
      if (n > 1) out.emplace_back(layout, share(local_twirl(layout, std::vector<int>{n - 1})));
      if (n > 2) out.emplace_back(layout, share(local_twirl(layout, std::vector<int>{0, 1})));
    }
  }
  return out;
}

Outcome chain_rule() {
  Outcome o;
  const auto twirls = qubit_twirls();
  std::vector<double> residual(200, 0.0);
  parallel_for(residual.size(), [&](std::size_t i) {
    Rng rng(derive_seed(3003, i));
    const auto& [layout, e] = twirls[i % twirls.size()];
    const std::size_t dim = layout.total_dim();
    std::uniform_int_distribution<std::size_t> rank(1, dim);
    const Matrix omega = hermitian_part(qdecay::apply(*e, random_density(dim, dim, rng)));
    const Matrix rho = random_density(dim, rank(rng), rng);
    const CondExpectation ce{*e, true, true, true};
    residual[i] = chain_rule_residual(QState::unchecked(rho, layout), ce, QState::unchecked(omega, layout));
  });
  double worst = 0.0;
  for (double r : residual) worst = std::max(worst, r);
  o.require(worst <= 1e-8, "max residual " + num(worst));
  if (o.passed) o.detail = "max residual " + num(worst) + " over 200 triples";
  return o;
}

Outcome dpi_pinsker() {
  Outcome o;
  struct Result {
    double dpi = -1e300;
    double pinsker = -1e300;
  };
  std::vector<Result> results(500);
  parallel_for(results.size(), [&](std::size_t i) {
    Rng rng(derive_seed(4004, i));
    const int d = 2 << (i % 4);  // 2, 4, 8, 16
    std::uniform_int_distribution<int> pick(1, d);
    const ChannelRep phi = random_channel(d, 1 + static_cast<int>(i % 4), rng);
    const Matrix rho = random_density(static_cast<std::size_t>(d), static_cast<std::size_t>(pick(rng)), rng);
    const Matrix sigma = random_density(static_cast<std::size_t>(d), static_cast<std::size_t>(d), rng);
    const EntropyValue before = relative_entropy(rho, sigma);
    const EntropyValue after = relative_entropy(qdecay::apply(phi, rho), qdecay::apply(phi, sigma));
    if (!before.infinite) results[i].dpi = after.infinite ? 1e300 : after.value - before.value;
    results[i].pinsker = pinsker_residual(rho, sigma);
  });
  double worst_dpi = -1e300;
  double worst_pinsker = -1e300;
  for (const auto& r : results) {
    worst_dpi = std::max(worst_dpi, r.dpi);
    worst_pinsker = std::max(worst_pinsker, r.pinsker);
  }
  o.require(worst_dpi <= 1e-8, "DPI excess " + num(worst_dpi));
  o.require(worst_pinsker <= 1e-8, "Pinsker residual " + num(worst_pinsker));
  if (o.passed) o.detail = "max DPI excess " + num(worst_dpi) + ", max Pinsker residual " + num(worst_pinsker);
  return o;
}

Outcome brickwork_decay() {
  Outcome o;
  const ArchitectureSpec spec = brickwork(4, 2);
  const SiteLayout layout = spec.layout(1);
  const ChannelRep phi = architecture_channel(spec, 1);
  const ChannelRep e = global_twirl(layout);
  TrajectoryOptions opts;
  opts.layers = 50;
  opts.samples = 10;
  opts.seed = 5005;
  const auto rows = entropy_trajectories([&](int) -> const ChannelRep& { return phi; }, e, opts);
  double worst_increase = -1e300;
  double final_max = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && rows[i].trial == rows[i - 1].trial) {
      worst_increase = std::max(worst_increase, rows[i].entropy - rows[i - 1].entropy);
    }
    if (rows[i].layer == 50) final_max = std::max(final_max, rows[i].entropy);
  }
  o.require(worst_increase <= 1e-8, "entropy increased by " + num(worst_increase));
  o.require(final_max <= 1e-6, "entropy at t = 50 is " + num(final_max));
  // Two-layer decay ratio on the same kind of initial states.
  double worst_ratio = 0.0;
  int defined = 0;
  for (int s = 0; s < 10; ++s) {
    Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(s)));
    const Vector psi = haar_pure_state(layout.total_dim(), rng);
    const auto r = decay_ratio(phi, e, psi * psi.adjoint());
    if (r) {
      ++defined;
      worst_ratio = std::max(worst_ratio, *r);
    }
  }
  o.require(defined > 0, "no defined decay ratio");
  o.require(worst_ratio < 1.0, "decay ratio " + num(worst_ratio) + " not below 1");
  if (o.passed) {
    o.detail = "max entropy step " + num(worst_increase) + ", max D at t=50 " + num(final_max) +
               ", max 2-layer ratio " + num(worst_ratio);
  }
  return o;
}

struct Glue {
  ChannelRep e1;
  ChannelRep e2;
  ChannelRep global;
};

Glue glue_setup() {
  const SiteLayout layout = SiteLayout::uniform(5, 2, 1);
  return {local_twirl(layout, std::vector<int>{0, 1, 2, 3}), local_twirl(layout, std::vector<int>{1, 2, 3, 4}),
          global_twirl(layout)};
}

Outcome glue_check() {
  Outcome o;
  const Glue g = glue_setup();
  const ComparabilityResult cmp = relative_error(compose(g.e2, g.e1), g.global);
  const double bound = glue_error(0, 0, 1, 8).value();
  o.require(cmp.valid, "bisection did not converge");
  o.require(bound == oracle::kGlue_0_0_1_8, "glue_error(0,0,1,8) = " + num(bound));
  o.require(cmp.eps <= bound, "eps " + num(cmp.eps) + " > " + num(bound));
  o.require(std::abs(cmp.eps - oracle::kGlueMeasuredEps) <= 1e-8, "eps disagrees with the numpy bisection oracle");
  if (o.passed) o.detail = "measured eps " + num(cmp.eps) + ", delta " + num(cmp.delta) + " <= bound " + num(bound);
  return o;
}

Outcome composition() {
  Outcome o;
  const Glue g = glue_setup();
  const ChannelRep composed = compose(g.e2, g.e1);
  const ComparabilityResult cmp = relative_error(composed, g.global);
  o.require(cmp.valid && cmp.delta_finite, "comparability not established");
  const BoundReport lam = compose_sdpi({1.0, 1.0}, cmp.eps, cmp.delta);
  const double allowed = 1.0 - lam.value() + 1e-6;
  double worst = 0.0;
  int defined = 0;
  for (int s = 0; s < 50; ++s) {
    Rng rng(derive_seed(6006, static_cast<std::uint64_t>(s)));
    Matrix rho;
    if (s % 2 == 0) {
      rho = random_density(32, 1 + static_cast<std::size_t>(s) % 32, rng);
    } else {
      const Vector psi = haar_pure_state(32, rng);
      rho = psi * psi.adjoint();
    }
    const auto r = decay_ratio(composed, g.global, rho);
    if (r) {
      ++defined;
      worst = std::max(worst, *r);
    }
  }
  o.require(defined == 50, "undefined decay ratios");
  o.require(worst <= allowed, "ratio " + num(worst) + " > " + num(allowed));
  if (o.passed) {
    o.detail = "eps " + num(cmp.eps) + ", delta " + num(cmp.delta) + ", lambda " + num(lam.value()) +
               ", max ratio " + num(worst) + " <= " + num(allowed);
  }
  return o;
}

bool rel_near(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)); }

Outcome formulas() {
  Outcome o;
  // Scalar recomputation, independent of the library.
  const double r42 = 2.0 * std::ceil(std::log2(4.0 * 1024.0 * 24.0) + std::log2(10.0) + 1.0);
  const double lam = 2.0 / (6.0 * std::log2(5670.0 * 16.0 * 1024.0));
  const double sites = 4.0 * std::ceil(std::log2(1920.0));
  const double f = std::ceil((2.0 * sites + std::log2(10.0)) * 4.0);
  const double tree = 0.5 / 30.0 / (4.0 * f);
  o.require(r42 == oracle::kParallelR_2_2_1024, "scalar r != frozen oracle");
  o.require(rel_near(lam, oracle::kParallelLambda_2_2_1024_1, 1e-12), "scalar lambda != frozen oracle");
  o.require(rel_near(tree, oracle::kTreeLambda, 1e-12), "scalar tree lambda != frozen oracle");

  const double r = parallel_r(2, 2, 1024, 1.0 / 24.0, Variant::kAsStated).value();
  const double g = glue_error(0, 0, 2, 1024).value();
  const double pl = parallel_lambda(2, 2, 1024, 1).value();
  const double b = beta(0.1, 0.1).beta;
  const double tl = tree_lambda(2, 1, 16, 2, 0.5, 1.0 / 30.0, 1).value();
  o.require(r == 42.0, "parallel_r = " + num(r));
  o.require(g == 0.01953125, "glue_error = " + num(g));
  o.require(rel_near(pl, lam, 1e-6), "parallel_lambda = " + num(pl));
  o.require(b >= 0.5 && b <= 0.531, "beta = " + num(b));
  o.require(rel_near(tl, tree, 1e-8), "tree_lambda = " + num(tl));
  if (o.passed) {
    o.detail = "r 42, glue 0.01953125, lambda " + num(pl) + " (quoted 0.012594), beta " + num(b) + ", tree " +
               num(tl) + " (quoted 1.139e-5)";
  }
  return o;
}

Outcome suite(const std::string& name, VerifyOptions opts = {}) {
  Outcome o;
  const SuiteResult r = run_suite(name, opts);
  o.require(r.passed, r.first_failure);
  if (o.passed) o.detail = std::to_string(r.checks) + " checks";
  return o;
}

Outcome graph_suites() {
  VerifyOptions opts;
  opts.trees = 500;
  Outcome w = suite("walks", opts);
  Outcome a = suite("arch", opts);
  Outcome o;
  o.require(w.passed, "walks: " + w.detail);
  o.require(a.passed, "arch: " + a.detail);
  if (o.passed) o.detail = "walks " + w.detail + ", arch " + a.detail;
  return o;
}

Outcome cb_return() {
  Outcome o = suite("cb");
  const CondExpectation e = validate_cond_expectation(full_depolarizer(2));
  const auto t = cb_return_time(depolarizing(2, 0.5), e, 20);
  o.require(t && *t == oracle::kCbDepolHalf, "depolarizing(1/2) return time differs from oracle");
  if (o.passed) o.detail = "t_cb(E, E) = 1, t_cb(depolarizing(1/2)) = " + std::to_string(*t);
  return o;
}

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "twirl projector correctness", 120.0, twirl_projector},
      {2, "chain-rule equality", 60.0, chain_rule},
      {3, "data processing and Pinsker", 60.0, dpi_pinsker},
      {4, "brickwork decay", 120.0, brickwork_decay},
      {5, "glue desk-check", 180.0, glue_check},
      {6, "composition verification", 180.0, composition},
      {7, "formula regression", 10.0, formulas},
      {8, "graph suites", 60.0, graph_suites},
      {9, "cb return time", 10.0, cb_return},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));
  bool all = true;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.passed && secs > c.budget_seconds) {
      o.passed = false;
      o.detail = "runtime " + num(secs) + " s exceeds " + num(c.budget_seconds) + " s";
    }
    all = all && o.passed;
    std::cout << (o.passed ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail
              << " [" << num(secs) << " s]" << std::endl;
  }
  return all ? 0 : 1;
}
