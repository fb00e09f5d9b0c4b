#pragma once

// Quantum channels on a space of tensor factors.
//
// A ChannelRep carries the factor dimensions of the space it acts on and one
// of several representations. Values are immutable after construction; nested
// channels are shared through shared_ptr<const>.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qdecay/parallel.hpp"
#include "qdecay/tensors.hpp"

namespace qdecay {

/// Structured linear map applied by a callback (e.g. an exact twirl).
class MapKernel {
 public:
  virtual ~MapKernel() = default;
  virtual std::size_t dim() const = 0;
  virtual Matrix apply(const Matrix& x) const = 0;
  virtual std::string name() const = 0;
};

class ChannelRep {
 public:
  struct Kraus {
    std::vector<Matrix> ops;
  };
  struct Choi {
    Matrix choi;
    Matrix liouville;
  };
  struct Kernel {
    std::shared_ptr<const MapKernel> kernel;
  };
  /// Channel acting on the listed factor positions (in that order), identity
  /// on the rest.
  struct Piece {
    std::vector<int> factors;
    std::shared_ptr<const ChannelRep> channel;
  };
  /// Pieces applied in order (first piece first).
  struct Local {
    std::vector<Piece> pieces;
  };
  struct Mixture {
    std::vector<double> weights;
    std::vector<std::shared_ptr<const ChannelRep>> terms;
  };
  using Variant = std::variant<Kraus, Choi, Kernel, Local, Mixture>;

  static ChannelRep kraus(std::vector<int> dims, std::vector<Matrix> ops);
  static ChannelRep from_choi(std::vector<int> dims, Matrix choi);
  static ChannelRep from_kernel(std::vector<int> dims, std::shared_ptr<const MapKernel> kernel);
  static ChannelRep local(std::vector<int> dims, std::vector<Piece> pieces);
  static ChannelRep mixture(std::vector<int> dims, std::vector<double> weights,
                            std::vector<std::shared_ptr<const ChannelRep>> terms);
  static ChannelRep identity(std::vector<int> dims);
  static ChannelRep unitary(std::vector<int> dims, Matrix u);

  const std::vector<int>& dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return dim_; }
  const Variant& rep() const noexcept { return rep_; }

  /// Same channel, viewed on a different factorization of the same total
  /// dimension.
  ChannelRep with_dims(std::vector<int> dims) const;

 private:
  ChannelRep(std::vector<int> dims, Variant rep);
  std::vector<int> dims_;
  std::size_t dim_;
  Variant rep_;
};

using ChannelPtr = std::shared_ptr<const ChannelRep>;
ChannelPtr share(ChannelRep ch);

Matrix apply(const ChannelRep& ch, const Matrix& x);
/// Applies the channel and validates the output state (tolerance 1e-8).
QState apply(const ChannelRep& ch, const QState& rho);

/// second after first.
ChannelRep compose(const ChannelRep& second, const ChannelRep& first);
/// Left-to-right sequence: channels[0] acts first.
ChannelRep sequence(const std::vector<ChannelRep>& channels);
/// ch tensor Id on an auxiliary factor of dimension aux_dim.
ChannelRep extend(const ChannelRep& ch, int aux_dim);

/// Choi matrix sum_ij |i><j| (x) ch(|i><j|), input factor first. Throws
/// CapacityError when dim^2 exceeds choi_dim_cap().
Matrix choi(const ChannelRep& ch);
Matrix choi_to_liouville(const Matrix& choi, std::size_t d);
Matrix liouville_to_choi(const Matrix& liouville, std::size_t d);
/// Choi of the Hilbert-Schmidt adjoint, via the transpose of the swapped
/// Choi matrix.
Matrix adjoint_choi(const Matrix& choi, std::size_t d);
ChannelRep adjoint(const ChannelRep& ch);

struct CptpCheck {
  double tp_error = 0.0;       // max |tr_out J - I|
  double min_eigenvalue = 0.0; // of J
  bool cp = false;
  bool tp = false;
};
CptpCheck check_cptp(const Matrix& choi, std::size_t d, double tol = 1e-8);

bool is_unital(const ChannelRep& ch, double tol = 1e-8);

// Common channels.
ChannelRep full_depolarizer(int d);
/// (1 - p) id + p * full_depolarizer.
ChannelRep depolarizing(int d, double p);

struct ComparabilityResult {
  double eps = 1.0;
  double delta = 0.0;
  double bisection_tol = 0.0;
  bool delta_finite = true;
  bool valid = false;
};

/// Smallest eps with phi - (1 - eps) psi CP and smallest delta with
/// (1 + delta) psi - phi CP, both by bisection on Choi positivity.
ComparabilityResult relative_error(const ChannelRep& phi, const ChannelRep& psi, double tol = 1e-8,
                                   int steps = 60);
ComparabilityResult relative_error_choi(const Matrix& choi_phi, const Matrix& choi_psi, double tol = 1e-8,
                                        int steps = 60);

struct CondExpectation {
  ChannelRep channel;
  bool idempotent = false;
  bool self_adjoint = false;
  bool trace_preserving = false;
  bool valid() const noexcept { return idempotent && self_adjoint && trace_preserving; }
};

/// Numerical idempotence on the matrix-unit basis and Hilbert-Schmidt
/// self-adjointness via Choi symmetry. Never throws on failed checks.
CondExpectation validate_cond_expectation(const ChannelRep& e, double tol = 1e-8);

/// max |phi(e(X)) - e(phi(X))| over matrix units X.
double commutation_defect(const ChannelRep& phi, const ChannelRep& e);

struct ReturnTimeOptions {
  double lower = 0.9;
  double upper = 1.1;
  double tol = 1e-9;
};

/// Smallest t <= t_max with lower*E <=cp (phi* phi)^t <=cp upper*E; nullopt
/// when not reached. Throws PreconditionError for non-unital phi.
std::optional<int> cb_return_time(const ChannelRep& phi, const CondExpectation& e, int t_max,
                                  ReturnTimeOptions opts = {});

/// lambda = 1 / (2 t_cb).
double sdpi_from_return_time(int t_cb);

}  // namespace qdecay
