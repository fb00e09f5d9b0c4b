#include "qdecay/channels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qdecay {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

class TraceReplaceKernel final : public MapKernel {
 public:
  explicit TraceReplaceKernel(std::size_t d) : d_(d) {}
  std::size_t dim() const override { return d_; }
  Matrix apply(const Matrix& x) const override {
    const auto n = static_cast<Eigen::Index>(d_);
    return Matrix::Identity(n, n) * (x.trace() / static_cast<double>(d_));
  }
  std::string name() const override { return "full_depolarizer"; }

 private:
  std::size_t d_;
};

void check_dim(const ChannelRep& ch, const Matrix& x) {
  const auto d = static_cast<Eigen::Index>(ch.dim());
  if (x.rows() != d || x.cols() != d) {
    throw DimensionError("channel of dimension " + std::to_string(ch.dim()) + " applied to " +
                         std::to_string(x.rows()) + "x" + std::to_string(x.cols()) + " operator");
  }
}

void check_choi_cap(std::size_t d) {
  const std::size_t cap = choi_dim_cap();
  if (d * d > cap) throw CapacityError("Choi matrix", d * d, cap);
}

Matrix matrix_unit(std::size_t d, std::size_t i, std::size_t j) {
  const auto n = static_cast<Eigen::Index>(d);
  Matrix e = Matrix::Zero(n, n);
  e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
  return e;
}

bool is_identity_order(const std::vector<int>& factors, std::size_t nf) {
  if (factors.size() != nf) return false;
  for (std::size_t p = 0; p < nf; ++p) {
    if (factors[p] != static_cast<int>(p)) return false;
  }
  return true;
}

Matrix apply_piece(const std::vector<int>& dims, const ChannelRep::Piece& piece, const Matrix& x) {
  if (is_identity_order(piece.factors, dims.size())) return qdecay::apply(*piece.channel, x);
  std::vector<int> perm;
  perm.reserve(dims.size());
  for (int f = 0; f < static_cast<int>(dims.size()); ++f) {
    if (std::find(piece.factors.begin(), piece.factors.end(), f) == piece.factors.end()) perm.push_back(f);
  }
  perm.insert(perm.end(), piece.factors.begin(), piece.factors.end());
  const Matrix moved = permute_factors(x, dims, perm);
  const auto d_loc = static_cast<Eigen::Index>(piece.channel->dim());
  const Eigen::Index rest = moved.rows() / d_loc;
  Matrix out = Matrix::Zero(moved.rows(), moved.cols());
  for (Eigen::Index r = 0; r < rest; ++r) {
    for (Eigen::Index s = 0; s < rest; ++s) {
      const auto blk = moved.block(r * d_loc, s * d_loc, d_loc, d_loc);
      if (blk.cwiseAbs().maxCoeff() == 0.0) continue;
      out.block(r * d_loc, s * d_loc, d_loc, d_loc) = qdecay::apply(*piece.channel, Matrix(blk));
    }
  }
  std::vector<int> moved_dims(dims.size());
  std::vector<int> inverse(dims.size());
  for (std::size_t p = 0; p < perm.size(); ++p) {
    moved_dims[p] = dims[static_cast<std::size_t>(perm[p])];
    inverse[static_cast<std::size_t>(perm[p])] = static_cast<int>(p);
  }
  return permute_factors(out, moved_dims, inverse);
}

}  // namespace

ChannelRep::ChannelRep(std::vector<int> dims, Variant rep)
    : dims_(std::move(dims)), dim_(dims_product(dims_)), rep_(std::move(rep)) {
  if (dims_.empty()) throw DimensionError("ChannelRep: empty factor list");
  for (int d : dims_) {
    if (d < 1) throw DimensionError("ChannelRep: factor dimension must be positive");
  }
}

ChannelRep ChannelRep::kraus(std::vector<int> dims, std::vector<Matrix> ops) {
  const auto d = static_cast<Eigen::Index>(dims_product(dims));
  if (ops.empty()) throw std::invalid_argument("ChannelRep::kraus: no Kraus operators");
  for (const auto& k : ops) {
    if (k.rows() != d || k.cols() != d) throw DimensionError("ChannelRep::kraus: operator dimension mismatch");
  }
  return ChannelRep(std::move(dims), Kraus{std::move(ops)});
}

ChannelRep ChannelRep::from_choi(std::vector<int> dims, Matrix choi_matrix) {
  const std::size_t d = dims_product(dims);
  if (static_cast<std::size_t>(choi_matrix.rows()) != d * d || choi_matrix.rows() != choi_matrix.cols()) {
    throw DimensionError("ChannelRep::from_choi: Choi matrix must be d^2 x d^2");
  }
  Matrix l = choi_to_liouville(choi_matrix, d);
  return ChannelRep(std::move(dims), Choi{std::move(choi_matrix), std::move(l)});
}

ChannelRep ChannelRep::from_kernel(std::vector<int> dims, std::shared_ptr<const MapKernel> kernel) {
  if (!kernel || kernel->dim() != dims_product(dims)) {
    throw DimensionError("ChannelRep::from_kernel: kernel dimension mismatch");
  }
  return ChannelRep(std::move(dims), Kernel{std::move(kernel)});
}

ChannelRep ChannelRep::local(std::vector<int> dims, std::vector<Piece> pieces) {
  for (const auto& p : pieces) {
    if (!p.channel) throw std::invalid_argument("ChannelRep::local: null piece");
    std::vector<int> sorted = p.factors;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.empty() || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted.front() < 0 ||
        sorted.back() >= static_cast<int>(dims.size())) {
      throw DimensionError("ChannelRep::local: invalid factor list");
    }
    std::size_t d = 1;
    for (int f : p.factors) d *= static_cast<std::size_t>(dims[static_cast<std::size_t>(f)]);
    if (d != p.channel->dim()) throw DimensionError("ChannelRep::local: piece dimension mismatch");
  }
  return ChannelRep(std::move(dims), Local{std::move(pieces)});
}

ChannelRep ChannelRep::mixture(std::vector<int> dims, std::vector<double> weights, std::vector<ChannelPtr> terms) {
  if (weights.size() != terms.size() || terms.empty()) {
    throw std::invalid_argument("ChannelRep::mixture: weights and terms must be non-empty and aligned");
  }
  const std::size_t d = dims_product(dims);
  double total = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!terms[i] || terms[i]->dim() != d) throw DimensionError("ChannelRep::mixture: term dimension mismatch");
    if (weights[i] < 0.0) throw std::invalid_argument("ChannelRep::mixture: negative weight");
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("ChannelRep::mixture: weights must sum to 1");
  return ChannelRep(std::move(dims), Mixture{std::move(weights), std::move(terms)});
}

ChannelRep ChannelRep::identity(std::vector<int> dims) { return ChannelRep(std::move(dims), Local{}); }

ChannelRep ChannelRep::unitary(std::vector<int> dims, Matrix u) { return kraus(std::move(dims), {std::move(u)}); }

ChannelRep ChannelRep::with_dims(std::vector<int> dims) const {
  if (dims_product(dims) != dim_) throw DimensionError("ChannelRep::with_dims: total dimension mismatch");
  if (!std::holds_alternative<Local>(rep_)) return ChannelRep(std::move(dims), rep_);
  std::vector<int> all(dims.size());
  std::iota(all.begin(), all.end(), 0);
  return local(std::move(dims), {Piece{std::move(all), share(*this)}});
}

ChannelPtr share(ChannelRep ch) { return std::make_shared<const ChannelRep>(std::move(ch)); }

Matrix apply(const ChannelRep& ch, const Matrix& x) {
  check_dim(ch, x);
  return std::visit(
      overloaded{
          [&](const ChannelRep::Kraus& k) -> Matrix {
            Matrix out = Matrix::Zero(x.rows(), x.cols());
            for (const auto& op : k.ops) out.noalias() += op * x * op.adjoint();
            return out;
          },
          [&](const ChannelRep::Choi& c) -> Matrix {
            const Eigen::Index d = x.rows();
            Vector v(d * d);
            for (Eigen::Index a = 0; a < d; ++a)
              for (Eigen::Index b = 0; b < d; ++b) v(a * d + b) = x(a, b);
            const Vector w = c.liouville * v;
            Matrix out(d, d);
            for (Eigen::Index a = 0; a < d; ++a)
              for (Eigen::Index b = 0; b < d; ++b) out(a, b) = w(a * d + b);
            return out;
          },
          [&](const ChannelRep::Kernel& k) -> Matrix { return k.kernel->apply(x); },
          [&](const ChannelRep::Local& l) -> Matrix {
            Matrix cur = x;
            for (const auto& piece : l.pieces) cur = apply_piece(ch.dims(), piece, cur);
            return cur;
          },
          [&](const ChannelRep::Mixture& m) -> Matrix {
            Matrix out = Matrix::Zero(x.rows(), x.cols());
            for (std::size_t i = 0; i < m.terms.size(); ++i) {
              if (m.weights[i] != 0.0) out += m.weights[i] * qdecay::apply(*m.terms[i], x);
            }
            return out;
          },
      },
      ch.rep());
}

QState apply(const ChannelRep& ch, const QState& rho) {
  if (rho.layout().total_dim() != ch.dim()) throw DimensionError("apply: state and channel dimensions differ");
  return QState(qdecay::apply(ch, rho.matrix()), rho.layout(), 1e-8);
}

ChannelRep compose(const ChannelRep& second, const ChannelRep& first) {
  if (second.dim() != first.dim()) throw DimensionError("compose: dimension mismatch");
  const auto& dims = first.dims();
  std::vector<ChannelRep::Piece> pieces;
  auto add = [&](const ChannelRep& ch) {
    if (const auto* l = std::get_if<ChannelRep::Local>(&ch.rep()); l != nullptr && ch.dims() == dims) {
      pieces.insert(pieces.end(), l->pieces.begin(), l->pieces.end());
      return;
    }
    std::vector<int> all(dims.size());
    std::iota(all.begin(), all.end(), 0);
    pieces.push_back({std::move(all), share(ch)});
  };
  add(first);
  add(second);
  return ChannelRep::local(dims, std::move(pieces));
}

ChannelRep sequence(const std::vector<ChannelRep>& channels) {
  if (channels.empty()) throw std::invalid_argument("sequence: no channels");
  ChannelRep out = channels.front();
  for (std::size_t i = 1; i < channels.size(); ++i) out = compose(channels[i], out);
  return out;
}

ChannelRep extend(const ChannelRep& ch, int aux_dim) {
  if (aux_dim < 1) throw DimensionError("extend: aux_dim must be >= 1");
  std::vector<int> dims = ch.dims();
  std::vector<int> sys(dims.size());
  std::iota(sys.begin(), sys.end(), 0);
  dims.push_back(aux_dim);
  return ChannelRep::local(std::move(dims), {ChannelRep::Piece{std::move(sys), share(ch)}});
}

Matrix choi(const ChannelRep& ch) {
  const std::size_t d = ch.dim();
  check_choi_cap(d);
  if (const auto* c = std::get_if<ChannelRep::Choi>(&ch.rep())) return c->choi;
  const auto n = static_cast<Eigen::Index>(d);
  Matrix j(n * n, n * n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      j.block(a * n, b * n, n, n) =
          qdecay::apply(ch, matrix_unit(d, static_cast<std::size_t>(a), static_cast<std::size_t>(b)));
    }
  }
  return j;
}

Matrix choi_to_liouville(const Matrix& choi_matrix, std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  Matrix l(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index b = 0; b < n; ++b) l(a * n + b, i * n + j) = choi_matrix(i * n + a, j * n + b);
  return l;
}

Matrix liouville_to_choi(const Matrix& liouville, std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  Matrix c(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index b = 0; b < n; ++b) c(i * n + a, j * n + b) = liouville(a * n + b, i * n + j);
  return c;
}

Matrix adjoint_choi(const Matrix& choi_matrix, std::size_t d) {
  // J*((i,a),(j,b)) = J((b,j),(a,i)): swap the tensor factors, then transpose.
  const auto n = static_cast<Eigen::Index>(d);
  Matrix out(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index b = 0; b < n; ++b) out(i * n + a, j * n + b) = choi_matrix(b * n + j, a * n + i);
  return out;
}

ChannelRep adjoint(const ChannelRep& ch) {
  if (const auto* k = std::get_if<ChannelRep::Kraus>(&ch.rep())) {
    std::vector<Matrix> ops;
    for (const auto& op : k->ops) ops.push_back(op.adjoint());
    return ChannelRep::kraus(ch.dims(), std::move(ops));
  }
  return ChannelRep::from_choi(ch.dims(), adjoint_choi(choi(ch), ch.dim()));
}

CptpCheck check_cptp(const Matrix& choi_matrix, std::size_t d, double tol) {
  CptpCheck out;
  const std::vector<int> dims{static_cast<int>(d), static_cast<int>(d)};
  const std::vector<int> keep{0};
  const Matrix reduced = partial_trace(choi_matrix, dims, keep);
  out.tp_error = (reduced - Matrix::Identity(reduced.rows(), reduced.cols())).cwiseAbs().maxCoeff();
  out.tp = out.tp_error <= tol;
  out.cp = is_psd_within(choi_matrix, tol);
  out.min_eigenvalue = out.cp ? std::numeric_limits<double>::quiet_NaN() : min_eigenvalue(choi_matrix);
  return out;
}

bool is_unital(const ChannelRep& ch, double tol) {
  const auto d = static_cast<Eigen::Index>(ch.dim());
  const Matrix id = Matrix::Identity(d, d);
  return (qdecay::apply(ch, id) - id).cwiseAbs().maxCoeff() <= tol;
}

ChannelRep full_depolarizer(int d) {
  return ChannelRep::from_kernel({d}, std::make_shared<const TraceReplaceKernel>(static_cast<std::size_t>(d)));
}

ChannelRep depolarizing(int d, double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing: p must lie in [0, 1]");
  return ChannelRep::mixture({d}, {1.0 - p, p}, {share(ChannelRep::identity({d})), share(full_depolarizer(d))});
}

ComparabilityResult relative_error_choi(const Matrix& choi_phi, const Matrix& choi_psi, double tol, int steps) {
  if (choi_phi.rows() != choi_psi.rows() || choi_phi.cols() != choi_psi.cols()) {
    throw DimensionError("relative_error: Choi dimension mismatch");
  }
  if (!is_psd_within(choi_phi, tol) || !is_psd_within(choi_psi, tol)) {
    throw std::invalid_argument("relative_error: input channel is not completely positive");
  }
  ComparabilityResult out;
  double max_bracket = 0.0;

  // eps: phi - (1 - eps) psi >= 0 is monotone in eps and holds at eps = 1.
  if (is_psd_within(choi_phi - choi_psi, tol)) {
    out.eps = 0.0;
  } else {
    double lo = 0.0;
    double hi = 1.0;
    for (int s = 0; s < steps; ++s) {
      const double mid = 0.5 * (lo + hi);
      if (is_psd_within(choi_phi - (1.0 - mid) * choi_psi, tol)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    out.eps = hi;
    max_bracket = std::max(max_bracket, hi - lo);
  }

  // delta: (1 + delta) psi - phi >= 0; bracket grows geometrically.
  if (is_psd_within(choi_psi - choi_phi, tol)) {
    out.delta = 0.0;
  } else {
    double lo = 0.0;
    double hi = 1.0;
    while (!is_psd_within((1.0 + hi) * choi_psi - choi_phi, tol)) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e12) {
        out.delta = std::numeric_limits<double>::infinity();
        out.delta_finite = false;
        break;
      }
    }
    if (out.delta_finite) {
      for (int s = 0; s < steps; ++s) {
        const double mid = 0.5 * (lo + hi);
        if (is_psd_within((1.0 + mid) * choi_psi - choi_phi, tol)) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      out.delta = hi;
      max_bracket = std::max(max_bracket, hi - lo);
    }
  }
  out.bisection_tol = max_bracket;
  out.valid = out.delta_finite;
  return out;
}

ComparabilityResult relative_error(const ChannelRep& phi, const ChannelRep& psi, double tol, int steps) {
  if (phi.dim() != psi.dim()) throw DimensionError("relative_error: channel dimensions differ");
  return relative_error_choi(choi(phi), choi(psi), tol, steps);
}

CondExpectation validate_cond_expectation(const ChannelRep& e, double tol) {
  const std::size_t d = e.dim();
  check_choi_cap(d);
  const auto n = static_cast<Eigen::Index>(d);
  Matrix j(n * n, n * n);
  double idem_defect = 0.0;
  double tp_defect = 0.0;
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      const Matrix y = qdecay::apply(e, matrix_unit(d, static_cast<std::size_t>(a), static_cast<std::size_t>(b)));
      j.block(a * n, b * n, n, n) = y;
      idem_defect = std::max(idem_defect, (qdecay::apply(e, y) - y).cwiseAbs().maxCoeff());
      tp_defect = std::max(tp_defect, std::abs(y.trace() - (a == b ? cplx(1.0) : cplx(0.0))));
    }
  }
  const double sa_defect = (j - adjoint_choi(j, d)).cwiseAbs().maxCoeff();
  CondExpectation out{e};
  out.idempotent = idem_defect <= tol;
  out.self_adjoint = sa_defect <= tol;
  out.trace_preserving = tp_defect <= tol;
  return out;
}

double commutation_defect(const ChannelRep& phi, const ChannelRep& e) {
  if (phi.dim() != e.dim()) throw DimensionError("commutation_defect: dimension mismatch");
  const std::size_t d = phi.dim();
  double defect = 0.0;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      const Matrix x = matrix_unit(d, a, b);
      defect = std::max(defect, (qdecay::apply(phi, qdecay::apply(e, x)) - qdecay::apply(e, qdecay::apply(phi, x))).cwiseAbs().maxCoeff());
    }
  }
  return defect;
}

std::optional<int> cb_return_time(const ChannelRep& phi, const CondExpectation& e, int t_max,
                                  ReturnTimeOptions opts) {
  if (phi.dim() != e.channel.dim()) throw DimensionError("cb_return_time: dimension mismatch");
  if (!e.valid()) throw PreconditionError("cb_return_time: E is not a validated conditional expectation");
  if (!is_unital(phi)) throw PreconditionError("cb_return_time: channel is not unital");
  const std::size_t d = phi.dim();
  const Matrix j_phi = choi(phi);
  const Matrix j_e = choi(e.channel);
  const Matrix step = choi_to_liouville(adjoint_choi(j_phi, d), d) * choi_to_liouville(j_phi, d);
  Matrix power = step;
  for (int t = 1; t <= t_max; ++t) {
    const Matrix j_t = liouville_to_choi(power, d);
    if (is_psd_within(j_t - opts.lower * j_e, opts.tol) && is_psd_within(opts.upper * j_e - j_t, opts.tol)) {
      return t;
    }
    power = step * power;
  }
  return std::nullopt;
}

double sdpi_from_return_time(int t_cb) {
  if (t_cb < 1) throw std::invalid_argument("sdpi_from_return_time: t_cb must be >= 1");
  return 1.0 / (2.0 * static_cast<double>(t_cb));
}

}  // namespace qdecay
