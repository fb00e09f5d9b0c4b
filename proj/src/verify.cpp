#include "qdecay/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qdecay/arch.hpp"
#include "qdecay/bounds.hpp"
#include "qdecay/channels.hpp"
#include "qdecay/entropy.hpp"
#include "qdecay/moments.hpp"
#include "qdecay/parallel.hpp"
#include "qdecay/walks.hpp"

namespace qdecay {

namespace {

class Checker {
 public:
  explicit Checker(std::string name) : start_(std::chrono::steady_clock::now()) { result_.name = std::move(name); }

  void check(bool ok, const std::string& what) {
    ++result_.checks;
    if (!ok && result_.passed) {
      result_.passed = false;
      result_.first_failure = what;
    }
  }

  void note(std::string s) { result_.notes.push_back(std::move(s)); }

  SuiteResult finish() {
    result_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return result_;
  }

 private:
  SuiteResult result_;
  std::chrono::steady_clock::time_point start_;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

bool near(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)); }

// Failure messages per instance, collected in index order.
std::vector<std::string> run_instances(std::size_t count, const std::function<std::string(std::size_t)>& body) {
  std::vector<std::string> fails(count);
  parallel_for(count, [&](std::size_t i) { fails[i] = body(i); });
  return fails;
}

Matrix liouville_of_kraus(const std::vector<Matrix>& ops) {
  const auto d = ops.front().rows();
  Matrix l = Matrix::Zero(d * d, d * d);
  for (const auto& k : ops) l += kron(k, k.conjugate());
  return l;
}

// Choi J(i d + a, j d + b) from the row-major Liouville matrix.
Matrix reshuffle(const Matrix& l, Eigen::Index d) {
  Matrix j(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index jj = 0; jj < d; ++jj)
      for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b) j(i * d + a, jj * d + b) = l(a * d + b, i * d + jj);
  return j;
}

}  // namespace

std::string SuiteResult::summary() const {
  std::ostringstream out;
  if (passed) {
    out << "PASS " << name << ": " << checks << " checks in " << num(seconds) << " s";
  } else {
    out << "FAIL " << name << ": " << first_failure;
  }
  return out.str();
}

std::vector<std::string> suite_names() { return {"entropy", "moments", "walks", "arch", "glue", "cb", "formulas"}; }

SuiteResult run_suite(const std::string& name, const VerifyOptions& opts) {
  if (name == "entropy") return verify_entropy(opts);
  if (name == "moments") return verify_moments(opts);
  if (name == "walks") return verify_walks(opts);
  if (name == "arch") return verify_arch(opts);
  if (name == "glue") return verify_glue(opts);
  if (name == "cb") return verify_cb(opts);
  if (name == "formulas") return verify_formulas(opts);
  throw std::invalid_argument("unknown suite: " + name);
}

SuiteResult verify_entropy(const VerifyOptions& opts) {
  Checker c("entropy");
  // Twirls reused across instances: global and single-site, k in {1, 2}, n <= 3.
  struct Setup {
    int n;
    int k;
    std::vector<int> sites;
    ChannelPtr e;
  };
  std::vector<Setup> setups;
  for (int n = 1; n <= 3; ++n) {
    for (int k = 1; k <= 2; ++k) {
      const SiteLayout layout = SiteLayout::uniform(n, 2, k);
      std::vector<int> all(static_cast<std::size_t>(n));
      for (int s = 0; s < n; ++s) all[s] = s;
      setups.push_back({n, k, all, share(global_twirl(layout))});
      if (n > 1) setups.push_back({n, k, {0}, share(local_twirl(layout, std::vector<int>{0}))});
      if (n > 2) setups.push_back({n, k, {1, 2}, share(local_twirl(layout, std::vector<int>{1, 2}))});
    }
  }
  const auto trials = static_cast<std::size_t>(std::max(opts.trials, 0));
  const auto fails = run_instances(trials, [&](std::size_t i) -> std::string {
    Rng rng(derive_seed(opts.seed, i));
    const Setup& s = setups[i % setups.size()];
    const std::size_t dim = s.e->dim();
    std::uniform_int_distribution<std::size_t> rank_pick(1, dim);
    // Chain rule with omega a full-rank fixed point.
    const Matrix omega = hermitian_part(qdecay::apply(*s.e, random_density(dim, dim, rng)));
    const Matrix rho = random_density(dim, rank_pick(rng), rng);
    const SiteLayout layout = SiteLayout::uniform(s.n, 2, s.k);
    const CondExpectation e{*s.e, true, true, true};
    const double res = chain_rule_residual(QState::unchecked(rho, layout), e, QState::unchecked(omega, layout));
    if (!(res <= 1e-8)) return "chain rule residual " + num(res) + " at instance " + std::to_string(i);
    // Data processing and Pinsker, d in {2, 4, 8, 16}.
    const int d = 2 << (i % 4);
    std::uniform_int_distribution<int> kraus_pick(1, 4);
    const ChannelRep phi = random_channel(d, kraus_pick(rng), rng);
    const Matrix r1 = random_density(static_cast<std::size_t>(d), static_cast<std::size_t>(kraus_pick(rng)), rng);
    const Matrix s1 = random_density(static_cast<std::size_t>(d), static_cast<std::size_t>(d), rng);
    const auto before = relative_entropy(r1, s1);
    const auto after = relative_entropy(qdecay::apply(phi, r1), qdecay::apply(phi, s1));
    if (!before.infinite && !(after.value <= before.value + 1e-8)) {
      return "data processing violated at instance " + std::to_string(i);
    }
    const double pres = pinsker_residual(r1, s1);
    if (!(pres <= 1e-8)) return "Pinsker residual " + num(pres) + " at instance " + std::to_string(i);
    // Decay ratio never exceeds one.
    const ChannelRep psi = random_channel(static_cast<int>(dim), 2, rng);
    const auto ratio = decay_ratio(psi, *s.e, rho);
    if (ratio && !(*ratio <= 1.0 + 1e-8)) return "decay ratio " + num(*ratio) + " above 1 at instance " + std::to_string(i);
    return {};
  });
  for (const auto& f : fails) c.check(f.empty(), f);
  return c.finish();
}

SuiteResult verify_moments(const VerifyOptions&) {
  Checker c("moments");
  const std::vector<std::pair<int, int>> cases{{2, 1}, {3, 1}, {4, 1}, {2, 2}, {3, 2}, {4, 2}, {3, 3}, {2, 3}};
  for (const auto& [d, k] : cases) {
    const std::string tag = "(d=" + std::to_string(d) + ", k=" + std::to_string(k) + ")";
    const CondExpectation e = haar_twirl_projector(d, k);
    c.check(e.idempotent, "twirl not idempotent " + tag);
    c.check(e.self_adjoint, "twirl not self-adjoint " + tag);
    c.check(e.trace_preserving, "twirl not trace preserving " + tag);
    const std::size_t dim = e.channel.dim();
    const Matrix id = Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    c.check((qdecay::apply(e.channel, id) - id).cwiseAbs().maxCoeff() <= 1e-10, "twirl not unital " + tag);
    for (const auto& sigma : all_permutations(k)) {
      const Matrix p = permutation_operator(sigma, d);
      c.check((qdecay::apply(e.channel, p) - p).cwiseAbs().maxCoeff() <= 1e-10, "P_sigma not fixed " + tag);
      const double tr = p.trace().real();
      c.check(std::abs(tr - std::pow(d, cycle_count(sigma))) <= 1e-9, "tr P_sigma != d^cycles " + tag);
    }
    const GramMatrix& g = gram_matrix(d, k);
    c.check((g.gram * g.pseudo_inverse * g.gram - g.gram).cwiseAbs().maxCoeff() <= 1e-8, "G G+ G != G " + tag);
  }
  return c.finish();
}

SuiteResult verify_walks(const VerifyOptions& opts) {
  Checker c("walks");
  const auto trees = static_cast<std::size_t>(std::max(opts.trees, 0));
  const auto fails = run_instances(trees, [&](std::size_t i) -> std::string {
    Rng rng(derive_seed(opts.seed ^ 0x57a1c5ULL, i));
    std::uniform_int_distribution<int> n_pick(1, 50);
    const int max_deg = 2 + static_cast<int>(i % 5);
    const Graph tree = random_tree(n_pick(rng), max_deg, rng);
    const std::string at = " (tree " + std::to_string(i) + ")";
    const int ell = std::max(tree.max_degree(), 1);
    const TraversingWalk walk = traversing_walk(tree);
    if (!is_traversing_walk(tree, walk)) return "traversing walk invalid" + at;
    for (int count : walk.visit_counts) {
      if (count < 1 || count > ell) return "visit count outside [1, l]" + at;
    }
    std::uniform_int_distribution<int> len_pick(1, 10);
    const SegmentPlan plan = segment_walk(tree, walk, len_pick(rng));
    if (!plan.valid) return "segment audit failed" + at;
    const auto adj = tree.adjacency();
    for (std::size_t s = 0; s + 1 < plan.segments.size(); ++s) {
      std::set<int> sites(plan.segments[s].sites.begin(), plan.segments[s].sites.end());
      sites.insert(plan.segments[s + 1].sites.begin(), plan.segments[s + 1].sites.end());
      std::set<int> reached{*sites.begin()};
      std::vector<int> stack{*sites.begin()};
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : adj[v]) {
          if (sites.count(w) && reached.insert(w).second) stack.push_back(w);
        }
      }
      if (reached.size() != sites.size()) return "W_s + W_s+1 disconnected" + at;
    }
    const auto layers = color_tree_edges(tree);
    if (static_cast<int>(layers.size()) > ell) return "more colours than max degree" + at;
    std::size_t covered = 0;
    for (const auto& layer : layers) {
      std::set<int> used;
      for (const auto& cl : layer.clusters) {
        for (int v : cl) {
          if (!used.insert(v).second) return "colour class is not a matching" + at;
        }
        ++covered;
      }
    }
    if (covered != tree.edges.size()) return "colouring does not cover every edge once" + at;
    return {};
  });
  for (const auto& f : fails) c.check(f.empty(), f);
  return c.finish();
}

SuiteResult verify_arch(const VerifyOptions& opts) {
  Checker c("arch");
  auto audit = [&](const ArchitectureSpec& spec, const std::string& tag) {
    c.check(validate(spec).empty(), "spec invalid " + tag);
    const ClusterGraph g = cluster_graph(spec);
    c.check(g.connected, "cluster graph disconnected " + tag);
    c.check(g.bipartite, "cluster graph not bipartite " + tag);
    const HamiltonianResult h = hamiltonian_path(g);
    std::string why;
    c.check(h.status == PathStatus::kFound && is_hamiltonian_path(g, h.path, &why),
            "Hamiltonian path failed " + tag + ": " + (why.empty() ? h.reason : why));
  };
  for (int n = 3; n <= 100; ++n) audit(brickwork(n, 2), "brickwork(" + std::to_string(n) + ")");
  for (int dim = 1; dim <= 3; ++dim) {
    for (int side = 4; side <= 8; side += 2) {
      audit(lattice(dim, side, 2), "lattice(" + std::to_string(dim) + ", " + std::to_string(side) + ")");
    }
  }
  const ClusterGraph g = cluster_graph(brickwork(20, 2));
  const PathPlan plan = chunk_partitions(g, hamiltonian_path(g).path, 4);
  c.check(plan.observation1, "observation 1 fails on brickwork(20), r = 4");
  c.check(plan.observation2, "observation 2 fails on brickwork(20), r = 4");
  c.check(plan.observation3, "observation 3 fails on brickwork(20), r = 4");
  c.check(plan.min_overlap >= 3, "overlap below r - 1 on brickwork(20), r = 4");
  const auto a = spurious_circuit(12, 8, 0.3, opts.seed);
  const auto b = spurious_circuit(12, 8, 0.3, opts.seed);
  bool same = a.size() == b.size();
  for (std::size_t l = 0; same && l < a.size(); ++l) {
    for (std::size_t e = 0; same && e < a[l].edges.size(); ++e) same = a[l].edges[e].tag == b[l].edges[e].tag;
  }
  c.check(same, "spurious_circuit not reproducible");
  return c.finish();
}

SuiteResult verify_glue(const VerifyOptions& opts) {
  Checker c("glue");
  if (opts.n < 3) throw std::invalid_argument("verify glue: n must be >= 3");
  const SiteLayout layout = SiteLayout::uniform(opts.n, 2, opts.k);
  std::vector<int> ab;
  std::vector<int> bc;
  for (int s = 0; s + 1 < opts.n; ++s) ab.push_back(s);
  for (int s = 1; s < opts.n; ++s) bc.push_back(s);
  const ChannelRep glued = compose(local_twirl(layout, bc), local_twirl(layout, ab));
  const ChannelRep target = global_twirl(layout);
  const ComparabilityResult cmp = relative_error(glued, target);
  const double dim_b = std::pow(2.0, opts.n - 2);
  const BoundReport bound = glue_error(0.0, 0.0, opts.k, dim_b);
  c.note("measured eps = " + num(cmp.eps) + ", delta = " + num(cmp.delta) + ", bound = " + num(bound.value()));
  c.check(cmp.valid, "comparability bisection did not converge");
  c.check(cmp.eps <= bound.value(), "eps " + num(cmp.eps) + " exceeds glue bound " + num(bound.value()));
  c.check(cmp.delta <= bound.value(), "delta " + num(cmp.delta) + " exceeds glue bound " + num(bound.value()));
  return c.finish();
}

SuiteResult verify_cb(const VerifyOptions&) {
  Checker c("cb");
  const CondExpectation e = validate_cond_expectation(full_depolarizer(2));
  c.check(e.valid(), "full depolarizer is not a conditional expectation");
  const auto t_self = cb_return_time(e.channel, e, 10);
  c.check(t_self && *t_self == 1, "cb_return_time(E, E) != 1");
  // Oracle: Kraus Liouville powers and direct Choi eigenvalues.
  const double p = 0.5;
  Matrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, cplx(0, -1), cplx(0, 1), 0;
  z << 1, 0, 0, -1;
  const Matrix id2 = Matrix::Identity(2, 2);
  const Matrix l = liouville_of_kraus({std::sqrt(1 - 3 * p / 4) * id2, std::sqrt(p / 4) * x, std::sqrt(p / 4) * y,
                                       std::sqrt(p / 4) * z});
  const Matrix choi_e = Matrix::Identity(4, 4) / 2.0;
  const Matrix step = l.adjoint() * l;
  Matrix power = Matrix::Identity(4, 4);
  int oracle = -1;
  for (int t = 1; t <= 20 && oracle < 0; ++t) {
    power = step * power;
    const Matrix j = reshuffle(power, 2);
    const double lo = hermitian_eig(j - 0.9 * choi_e).values.minCoeff();
    const double hi = hermitian_eig(1.1 * choi_e - j).values.minCoeff();
    if (lo >= -1e-9 && hi >= -1e-9) oracle = t;
  }
  const auto t = cb_return_time(depolarizing(2, p), e, 20);
  c.check(oracle == 3, "oracle threshold " + std::to_string(oracle) + " != 3");
  c.check(t && *t == oracle, "cb_return_time disagrees with the Choi eigenvalue oracle");
  c.check(std::abs(sdpi_from_return_time(3) - 1.0 / 6.0) < 1e-15, "sdpi_from_return_time(3) != 1/6");
  return c.finish();
}

SuiteResult verify_formulas(const VerifyOptions&) {
  Checker c("formulas");
  const double ln2 = std::log(2.0);
  // Independent scalar recomputations.
  const double r_expected = 2.0 * std::ceil(std::log2(4.0 * 1024.0 * 24.0) + std::log2(10.0) + 1.0);
  c.check(r_expected == 42.0, "scalar parallel_r oracle != 42");
  c.check(parallel_r(2, 2, 1024, 1.0 / 24.0, Variant::kAsStated).value() == 42.0, "parallel_r(2,2,1024,1/24) != 42");
  const auto r18 = parallel_r(2, 1, 8, 0.5, Variant::kAsStated);
  c.check(r18.value() == 18.0 && r18.validity.back().state == Validity::kFailed, "parallel_r(2,1,8,1/2) != 18 with r<n/4 false");
  c.check(glue_error(0, 0, 2, 1024).value() == 20.0 / 1024.0, "glue_error(0,0,2,1024) != 0.01953125");
  c.check(near(glue_error(0.1, 0, 1, 8).value(), 1.1 * 1.625 - 1.0, 1e-14), "glue_error(0.1,0,1,8) != 0.7875");
  const double lam = 2.0 / (3.0 * 2.0 * std::log2(5670.0 * 4.0 * 4.0 * 1024.0));
  c.check(near(parallel_lambda(2, 2, 1024, 1).value(), lam, 1e-12), "parallel_lambda mismatch with scalar oracle");
  c.check(near(lam, 0.012594, 1e-4), "parallel_lambda oracle not ~0.012594");
  const double b = beta(0.1, 0.1).beta;
  c.check(b >= 0.5 && b <= 0.531, "beta(0.1,0.1) outside [0.5, 0.531]");
  c.check(near(b, 0.9 / 1.1 - 0.1 / (0.9 * (2 * ln2 - 1)), 1e-12), "beta(0.1,0.1) != equal-eps closed form");
  const double sites = 2.0 * 2.0 * std::ceil(std::log2(60.0 * 16.0 / 0.5));
  const double f = std::ceil((2.0 * sites + std::log2(10.0)) * 4.0);
  const double tl = 0.5 * (1.0 / 30.0) / (4.0 * f);
  c.check(sites == 44.0 && f == 366.0, "tree_lambda scalar pipeline mismatch");
  c.check(near(tree_lambda(2, 1, 16, 2, 0.5, 1.0 / 30.0, 1).value(), tl, 1e-12), "tree_lambda mismatch");
  c.check(near(tl, 1.139e-5, 1e-3), "tree_lambda oracle not ~1.139e-5");
  c.check(parallel_depth(2, 1, 8, 0.5, 2, 1).value() == 68.0, "parallel_depth(2,1,8,1/2,2,1) != 68");
  c.check(near(parallel_delta(2, 1, 16, 10, Variant::kAsDerived).value(), std::exp(1.03125) - 1.0, 1e-12),
          "parallel_delta as_derived mismatch");
  const double cq = 261000.0 * 9.0 * 4.0 * std::pow(2.0, 5.0 + 3.1 / ln2);
  c.check(near(c_qk(2, 2).value(), cq, 1e-12), "c_qk(2,2) mismatch");
  c.check(additive_depth(0.01, 10, 2, 2, 0.01) == 1110, "additive_depth(0.01,10,2,2,0.01) != 1110");
  c.check(near(compose_sdpi({0.5, 0.3}, 0.1, 0.1).value(), 0.3 * b, 1e-14), "compose_sdpi mismatch");
  c.check(near(continuity_bound(0.1, 5.0), 0.5 + 1.1 * (std::log(11.0) - 10.0 / 11.0 * std::log(10.0)), 1e-12),
          "continuity_bound mismatch");
  return c.finish();
}

}  // namespace qdecay
