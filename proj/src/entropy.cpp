#include "qdecay/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qdecay/moments.hpp"
#include "qdecay/parallel.hpp"

namespace qdecay {

namespace {

// f(x) = (1 + x)(ln(1 + x) - 1) + 1, with its series near 0.
double beta_denominator_shape(double x) {
  if (x < 1e-3) return x * x * (0.5 - x / 6.0 + x * x / 12.0 - x * x * x / 20.0);
  return (1.0 + x) * (std::log1p(x) - 1.0) + 1.0;
}

double beta_general(double eps, double delta) {
  if (eps == 0.0) return 1.0 / (1.0 + delta);
  const double x = delta / eps;
  const double f = beta_denominator_shape(x);
  // 2(1+eps) delta^2 / (eps f(x)) = 2(1+eps) eps x^2 / f(x), finite as x -> 0.
  const double middle = x == 0.0 ? 4.0 * (1.0 + eps) * eps : 2.0 * (1.0 + eps) * eps * x * x / f;
  return (1.0 - middle - 4.0 * eps - eps * eps) / ((1.0 + eps) * (1.0 + delta));
}

double beta_equal_eps(double eps) {
  if (eps >= 1.0) return -std::numeric_limits<double>::infinity();
  return (1.0 - eps) / (1.0 + eps) - eps / ((1.0 - eps) * (2.0 * std::log(2.0) - 1.0));
}

Matrix sample_state(const ChannelRep& e_ext, StateSampler sampler, Rng& rng) {
  const std::size_t dim = e_ext.dim();
  switch (sampler) {
    case StateSampler::kPureProduct: {
      Vector psi = Vector::Ones(1);
      for (int d : e_ext.dims()) {
        const Vector local = haar_pure_state(static_cast<std::size_t>(d), rng);
        Vector next(psi.size() * local.size());
        for (Eigen::Index i = 0; i < psi.size(); ++i) next.segment(i * local.size(), local.size()) = psi(i) * local;
        psi = std::move(next);
      }
      return psi * psi.adjoint();
    }
    case StateSampler::kHaarPure: {
      const Vector psi = haar_pure_state(dim, rng);
      return psi * psi.adjoint();
    }
    case StateSampler::kNearFixedPoint: {
      const Matrix omega = hermitian_part(qdecay::apply(e_ext, random_density(dim, dim, rng)));
      const double lmin = std::max(0.0, min_eigenvalue(omega));
      const Vector a = haar_pure_state(dim, rng);
      const Vector b = haar_pure_state(dim, rng);
      std::uniform_real_distribution<double> unif(0.1, 0.9);
      return omega + unif(rng) * lmin * (a * a.adjoint() - b * b.adjoint());
    }
    case StateSampler::kMixed:
      break;
  }
  throw std::logic_error("sample_state: unresolved sampler");
}

}  // namespace

EntropyValue relative_entropy(const Matrix& rho, const Matrix& sigma, LogBase base, double support_tol) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols() || rho.rows() != rho.cols()) {
    throw DimensionError("relative_entropy: operand dimensions differ");
  }
  const double tol = psd_tolerance();
  const auto rho_eig = hermitian_eig(rho);
  if (rho_eig.values.size() > 0 && rho_eig.values(0) < -1e-8) {
    throw NotPsdError("relative_entropy: rho is not a state", rho_eig.values(0));
  }
  const SupportLog sigma_log = herm_log_on_support(sigma, tol);
  EntropyValue out;
  out.base = base;
  const Matrix rho_h = hermitian_part(rho);
  const double leak = (rho_h * (Matrix::Identity(rho.rows(), rho.cols()) - sigma_log.projector)).trace().real();
  if (leak > support_tol) {
    out.infinite = true;
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  double neg_entropy = 0.0;
  for (Eigen::Index i = 0; i < rho_eig.values.size(); ++i) {
    const double p = rho_eig.values(i);
    if (p > tol) neg_entropy += p * std::log(p);
  }
  const double cross = (rho_h * sigma_log.log).trace().real();
  out.value = (neg_entropy - cross) / base.ln_base;
  return out;
}

EntropyValue relative_entropy(const QState& rho, const QState& sigma, LogBase base) {
  if (!(rho.layout() == sigma.layout())) throw DimensionError("relative_entropy: layouts differ");
  return relative_entropy(rho.matrix(), sigma.matrix(), base);
}

double chain_rule_residual(const QState& rho, const CondExpectation& e, const QState& omega) {
  const Matrix e_omega = qdecay::apply(e.channel, omega.matrix());
  if ((e_omega - omega.matrix()).cwiseAbs().maxCoeff() > 1e-8) {
    throw PreconditionError("chain_rule_residual: omega is not a fixed point of E");
  }
  const Matrix e_rho = qdecay::apply(e.channel, rho.matrix());
  const auto full = relative_entropy(rho.matrix(), omega.matrix());
  const auto first = relative_entropy(rho.matrix(), e_rho);
  const auto second = relative_entropy(e_rho, omega.matrix());
  if (full.infinite || first.infinite || second.infinite) {
    // Both sides infinite exactly when supp(rho) leaves supp(omega).
    return (full.infinite == (first.infinite || second.infinite)) ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return std::abs(full.value - first.value - second.value);
}

std::optional<double> decay_ratio(const ChannelRep& phi, const ChannelRep& e, const Matrix& rho) {
  if (phi.dim() != e.dim()) throw DimensionError("decay_ratio: channel dimensions differ");
  const Matrix e_rho = qdecay::apply(e, rho);
  const auto denom = relative_entropy(rho, e_rho);
  if (denom.infinite) return std::nullopt;
  if (denom.value <= 1e-10) return std::nullopt;
  const auto num = relative_entropy(qdecay::apply(phi, rho), qdecay::apply(phi, e_rho));
  if (num.infinite) return std::numeric_limits<double>::infinity();
  return num.value / denom.value;
}

DecayEstimate estimate_sdpi(const ChannelRep& phi, const ChannelRep& e, StateSampler sampler, std::size_t samples,
                            int aux_dim, std::uint64_t seed) {
  if (aux_dim < 1) throw std::invalid_argument("estimate_sdpi: aux_dim must be >= 1");
  if (samples < 1) throw std::invalid_argument("estimate_sdpi: samples must be >= 1");
  const ChannelRep phi_ext = aux_dim > 1 ? extend(phi, aux_dim) : phi;
  const ChannelRep e_ext = aux_dim > 1 ? extend(e, aux_dim) : e;
  std::vector<std::optional<double>> ratios(samples);
  std::vector<Matrix> states(samples);
  parallel_for(samples, [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    StateSampler s = sampler;
    if (s == StateSampler::kMixed) s = static_cast<StateSampler>(i % 3);
    states[i] = sample_state(e_ext, s, rng);
    ratios[i] = decay_ratio(phi_ext, e_ext, states[i]);
  });
  DecayEstimate out;
  out.samples = samples;
  out.aux_dim = aux_dim;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples; ++i) {
    if (!ratios[i]) {
      ++out.undefined;
      continue;
    }
    out.ratios.push_back(*ratios[i]);
    if (*ratios[i] > worst) {
      worst = *ratios[i];
      out.worst_state = states[i];
    }
  }
  out.lambda_est = out.defined() ? 1.0 - worst : std::numeric_limits<double>::quiet_NaN();
  return out;
}

std::string to_string(BetaVariant v) {
  switch (v) {
    case BetaVariant::kGeneral:
      return "general";
    case BetaVariant::kEqualEps:
      return "equal_eps";
    case BetaVariant::kLinearBound:
      return "linear_bound";
    case BetaVariant::kFloor:
      return "floor";
    case BetaVariant::kTrivial:
      return "trivial";
  }
  return "unknown";
}

BetaParams beta(double eps, double delta) {
  if (!(eps >= 0.0 && eps < 1.0) || !(delta >= 0.0 && delta < 1.0)) {
    throw std::invalid_argument("beta: eps and delta must lie in [0, 1)");
  }
  BetaParams out;
  out.eps = eps;
  out.delta = delta;
  // The equal-eps forms bound beta_{m,m}; the hypothesis at (eps, delta)
  // implies it at (m, m), so they apply with m = max(eps, delta).
  const double m = std::max(eps, delta);
  out.general = beta_general(eps, delta);
  out.equal_eps = beta_equal_eps(m);
  out.linear_bound = 1.0 - 12.0 * m;
  out.beta = out.general;
  out.variant = BetaVariant::kGeneral;
  if (out.equal_eps > out.beta) {
    out.beta = out.equal_eps;
    out.variant = BetaVariant::kEqualEps;
  }
  if (out.linear_bound > out.beta) {
    out.beta = out.linear_bound;
    out.variant = BetaVariant::kLinearBound;
  }
  if (m <= 0.1 && 0.5 > out.beta) {
    out.beta = 0.5;
    out.variant = BetaVariant::kFloor;
  }
  if (out.beta < 0.0) {
    out.beta = 0.0;
    out.variant = BetaVariant::kTrivial;
  }
  return out;
}

double pinsker_residual(const Matrix& rho, const Matrix& sigma) {
  const auto d = relative_entropy(rho, sigma);
  if (d.infinite) return -std::numeric_limits<double>::infinity();
  const double tn = trace_norm(rho - sigma);
  return tn * tn - 2.0 * d.value;
}

double binary_entropy(double x) {
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("binary_entropy: argument outside [0, 1]");
  double h = 0.0;
  if (x > 0.0) h -= x * std::log(x);
  if (x < 1.0) h -= (1.0 - x) * std::log1p(-x);
  return h;
}

double continuity_bound(double eps, double sup_d) {
  if (eps < 0.0 || eps > 1.0) throw std::invalid_argument("continuity_bound: eps outside [0, 1]");
  if (sup_d < 0.0) throw std::invalid_argument("continuity_bound: sup_d must be >= 0");
  return eps * sup_d + (1.0 + eps) * binary_entropy(eps / (1.0 + eps));
}

long long additive_depth(double lambda, int n, int k, int q, double eps_target) {
  if (!(lambda > 0.0)) throw std::invalid_argument("additive_depth: lambda must be positive");
  if (!(eps_target > 0.0 && eps_target < 1.0)) throw std::invalid_argument("additive_depth: eps_target outside (0, 1)");
  if (n < 1 || k < 1 || q < 2) throw std::invalid_argument("additive_depth: need n, k >= 1 and q >= 2");
  if (lambda >= 1.0) return 1;
  const double d_max = static_cast<double>(k) * n * std::log(static_cast<double>(q));
  const double target = 2.0 * eps_target * eps_target;
  if (d_max <= target) return 0;
  return static_cast<long long>(std::ceil(std::log(d_max / target) / -std::log1p(-lambda)));
}

}  // namespace qdecay
