#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdecay/channels.hpp"
#include "qdecay/tensors.hpp"

namespace qdecay {

struct EntropyValue {
  double value = 0.0;
  bool infinite = false;
  LogBase base = LogBase::natural();
};

/// Umegaki relative entropy tr(rho (log rho - log sigma)). Reports +inf when
/// more than support_tol of rho's weight lies outside supp(sigma).
EntropyValue relative_entropy(const Matrix& rho, const Matrix& sigma, LogBase base = LogBase::natural(),
                              double support_tol = 1e-8);
EntropyValue relative_entropy(const QState& rho, const QState& sigma, LogBase base = LogBase::natural());

/// |D(rho||omega) - D(rho||E rho) - D(E rho||omega)|. Throws
/// PreconditionError unless E(omega) = omega within 1e-8.
double chain_rule_residual(const QState& rho, const CondExpectation& e, const QState& omega);

/// D(phi rho || phi E rho) / D(rho || E rho); nullopt when the denominator is
/// below 1e-10 (rho is a fixed point).
std::optional<double> decay_ratio(const ChannelRep& phi, const ChannelRep& e, const Matrix& rho);

enum class StateSampler {
  kPureProduct,     // product of Haar-random pure states on every factor
  kHaarPure,        // Haar-random global pure state
  kNearFixedPoint,  // fixed point plus a PSD-preserving rank-2 traceless term
  kMixed,           // cycles through the three above
};

struct DecayEstimate {
  double lambda_est = 0.0;
  std::size_t samples = 0;
  int aux_dim = 1;
  Matrix worst_state;
  std::vector<double> ratios;  // defined samples only, in sample order
  std::size_t undefined = 0;
  bool defined() const noexcept { return !ratios.empty(); }
};

/// Heuristic lower-confidence estimate of the (complete) SDPI constant over
/// sampled states on system (x) C^aux_dim. Not a certificate.
DecayEstimate estimate_sdpi(const ChannelRep& phi, const ChannelRep& e, StateSampler sampler, std::size_t samples,
                            int aux_dim, std::uint64_t seed);

enum class BetaVariant { kGeneral, kEqualEps, kLinearBound, kFloor, kTrivial };
std::string to_string(BetaVariant v);

struct BetaParams {
  double eps = 0.0;
  double delta = 0.0;
  double beta = 0.0;
  BetaVariant variant = BetaVariant::kGeneral;
  double general = 0.0;
  double equal_eps = 0.0;
  double linear_bound = 0.0;
};

/// Entropy comparison factor for two-sided CP closeness, maximized over the
/// applicable closed forms.
BetaParams beta(double eps, double delta);

/// ||rho - sigma||_1^2 - 2 D_nat(rho||sigma); -inf when D is infinite.
double pinsker_residual(const Matrix& rho, const Matrix& sigma);

/// Binary entropy in nats.
double binary_entropy(double x);

/// eps * sup_d + (1 + eps) h(eps / (1 + eps)).
double continuity_bound(double eps, double sup_d);

/// Smallest t with (1 - lambda)^t k n ln q <= 2 eps_target^2.
long long additive_depth(double lambda, int n, int k, int q, double eps_target);

}  // namespace qdecay
