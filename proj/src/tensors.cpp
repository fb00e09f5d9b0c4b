#include "qdecay/tensors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace qdecay {

namespace {

std::atomic<double> g_psd_tol{1e-10};

void check_square(const Matrix& m, std::size_t dim, const char* what) {
  if (static_cast<std::size_t>(m.rows()) != dim || static_cast<std::size_t>(m.cols()) != dim) {
    throw DimensionError(std::string(what) + ": expected " + std::to_string(dim) + "x" + std::to_string(dim) +
                         " matrix, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

// Row-major strides: stride[f] = product of dims after f.
std::vector<std::size_t> strides_of(std::span<const int> dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t f = dims.size(); f-- > 1;) strides[f - 1] = strides[f] * static_cast<std::size_t>(dims[f]);
  return strides;
}

}  // namespace

CapacityError::CapacityError(const std::string& what, std::size_t required, std::size_t cap)
    : std::runtime_error(what + ": required dimension " + std::to_string(required) + " exceeds cap " +
                         std::to_string(cap)),
      required_(required),
      cap_(cap) {}

NotPsdError::NotPsdError(const std::string& what, double min_eigenvalue)
    : std::domain_error(what + " (min eigenvalue " + std::to_string(min_eigenvalue) + ")"),
      min_eigenvalue_(min_eigenvalue) {}

double psd_tolerance() noexcept { return g_psd_tol.load(std::memory_order_relaxed); }
void set_psd_tolerance(double tol) noexcept { g_psd_tol.store(tol, std::memory_order_relaxed); }

std::size_t state_dim_cap() noexcept { return 2048; }

std::size_t choi_dim_cap() {
  if (const char* env = std::getenv("QDECAY_DIM_CAP"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 4096;
}

std::size_t dims_product(std::span<const int> dims) {
  std::size_t p = 1;
  for (int d : dims) p *= static_cast<std::size_t>(d);
  return p;
}

SiteLayout::SiteLayout(std::vector<int> local_dims, int copies)
    : local_dims_(std::move(local_dims)), copies_(copies) {
  if (local_dims_.empty()) throw DimensionError("SiteLayout: need at least one site");
  if (copies_ < 1) throw DimensionError("SiteLayout: copies must be >= 1");
  for (int q : local_dims_) {
    if (q < 2) throw DimensionError("SiteLayout: local dimension must be >= 2");
  }
  copy_dim_ = dims_product(local_dims_);
  total_dim_ = 1;
  for (int c = 0; c < copies_; ++c) total_dim_ *= copy_dim_;
}

SiteLayout SiteLayout::uniform(int sites, int q, int copies) {
  if (sites < 1) throw DimensionError("SiteLayout: need at least one site");
  return SiteLayout(std::vector<int>(static_cast<std::size_t>(sites), q), copies);
}

int SiteLayout::factor_index(int copy, int site) const {
  if (copy < 0 || copy >= copies_ || site < 0 || site >= sites()) {
    throw DimensionError("SiteLayout: (copy, site) out of range");
  }
  return copy * sites() + site;
}

std::vector<int> SiteLayout::factor_dims() const {
  std::vector<int> dims;
  dims.reserve(static_cast<std::size_t>(factor_count()));
  for (int c = 0; c < copies_; ++c) dims.insert(dims.end(), local_dims_.begin(), local_dims_.end());
  return dims;
}

std::vector<int> SiteLayout::copy_factors(std::span<const int> sites) const {
  std::vector<int> out;
  out.reserve(sites.size() * static_cast<std::size_t>(copies_));
  for (int c = 0; c < copies_; ++c) {
    for (int s : sites) out.push_back(factor_index(c, s));
  }
  return out;
}

std::vector<std::size_t> factor_gather_map(std::span<const int> dims, std::span<const int> perm) {
  const std::size_t nf = dims.size();
  if (perm.size() != nf) throw DimensionError("permutation length does not match factor count");
  std::vector<char> seen(nf, 0);
  for (int p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= nf || seen[static_cast<std::size_t>(p)]) {
      throw DimensionError("factor permutation is not a bijection");
    }
    seen[static_cast<std::size_t>(p)] = 1;
  }
  const auto old_strides = strides_of(dims);
  std::vector<int> new_dims(nf);
  std::vector<std::size_t> step(nf);
  for (std::size_t p = 0; p < nf; ++p) {
    new_dims[p] = dims[static_cast<std::size_t>(perm[p])];
    step[p] = old_strides[static_cast<std::size_t>(perm[p])];
  }
  const std::size_t total = dims_product(dims);
  std::vector<std::size_t> map(total);
  std::vector<int> digit(nf, 0);
  std::size_t old_index = 0;
  for (std::size_t i = 0; i < total; ++i) {
    map[i] = old_index;
    // Odometer increment over the new digits, least significant last.
    for (std::size_t p = nf; p-- > 0;) {
      if (++digit[p] < new_dims[p]) {
        old_index += step[p];
        break;
      }
      old_index -= step[p] * static_cast<std::size_t>(new_dims[p] - 1);
      digit[p] = 0;
    }
  }
  return map;
}

Matrix permute_factors(const Matrix& op, std::span<const int> dims, std::span<const int> perm) {
  const std::size_t total = dims_product(dims);
  check_square(op, total, "permute_factors");
  bool identity = true;
  for (std::size_t p = 0; p < perm.size(); ++p) identity = identity && perm[p] == static_cast<int>(p);
  if (identity && perm.size() == dims.size()) return op;
  const auto map = factor_gather_map(dims, perm);
  Matrix out(op.rows(), op.cols());
  for (std::size_t j = 0; j < total; ++j) {
    const auto oj = static_cast<Eigen::Index>(map[j]);
    for (std::size_t i = 0; i < total; ++i) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = op(static_cast<Eigen::Index>(map[i]), oj);
    }
  }
  return out;
}

Matrix permute_factors(const Matrix& op, const SiteLayout& layout, std::span<const int> perm) {
  const auto dims = layout.factor_dims();
  return permute_factors(op, dims, perm);
}

Matrix partial_trace(const Matrix& op, std::span<const int> dims, std::span<const int> keep) {
  const std::size_t total = dims_product(dims);
  check_square(op, total, "partial_trace");
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw DimensionError("partial_trace: duplicate factor in keep set");
  }
  for (int f : kept) {
    if (f < 0 || static_cast<std::size_t>(f) >= dims.size()) throw DimensionError("partial_trace: factor out of range");
  }
  std::vector<int> traced;
  for (int f = 0; f < static_cast<int>(dims.size()); ++f) {
    if (!std::binary_search(kept.begin(), kept.end(), f)) traced.push_back(f);
  }
  // Move kept factors to the front, traced ones to the back.
  std::vector<int> perm = kept;
  perm.insert(perm.end(), traced.begin(), traced.end());
  const Matrix moved = permute_factors(op, dims, perm);
  std::size_t keep_dim = 1;
  for (int f : kept) keep_dim *= static_cast<std::size_t>(dims[static_cast<std::size_t>(f)]);
  const std::size_t trace_dim = total / keep_dim;
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(keep_dim), static_cast<Eigen::Index>(keep_dim));
  for (std::size_t a = 0; a < keep_dim; ++a) {
    for (std::size_t b = 0; b < keep_dim; ++b) {
      cplx s = 0.0;
      for (std::size_t t = 0; t < trace_dim; ++t) {
        s += moved(static_cast<Eigen::Index>(a * trace_dim + t), static_cast<Eigen::Index>(b * trace_dim + t));
      }
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = s;
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& op, const SiteLayout& layout, std::span<const int> keep) {
  const auto dims = layout.factor_dims();
  return partial_trace(op, dims, keep);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix kron_power(const Matrix& a, int k) {
  Matrix out = Matrix::Identity(1, 1);
  for (int i = 0; i < k; ++i) out = kron(out, a);
  return out;
}

double hermitian_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) { return m.size() == 0 || hermitian_defect(m) <= tol; }

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

EigenPair hermitian_eig(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
  return {es.eigenvalues(), es.eigenvectors()};
}

double min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool is_psd_within(const Matrix& m, double tol) {
  Matrix shifted = hermitian_part(m);
  shifted.diagonal().array() += tol;
  Eigen::LLT<Matrix> llt(shifted);
  return llt.info() == Eigen::Success;
}

double trace_norm(const Matrix& m) {
  if (is_hermitian(m, 1e-12 * (1.0 + m.cwiseAbs().maxCoeff()))) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

LogBase LogBase::two() { return {std::log(2.0)}; }
LogBase LogBase::of(double base) {
  if (!(base > 1.0)) throw std::invalid_argument("LogBase: base must exceed 1");
  return {std::log(base)};
}

HermitianOp::HermitianOp(Matrix m, double tol) : matrix_(std::move(m)) {
  if (matrix_.rows() != matrix_.cols()) throw DimensionError("HermitianOp: matrix not square");
  if (!is_hermitian(matrix_, tol)) throw std::invalid_argument("HermitianOp: matrix not Hermitian");
}

QState::QState(Matrix rho, SiteLayout layout, Unchecked) : rho_(std::move(rho)), layout_(std::move(layout)) {}

QState::QState(Matrix rho, SiteLayout layout, double tol) : QState(std::move(rho), std::move(layout), Unchecked{}) {
  check_square(rho_, layout_.total_dim(), "QState");
  if (!is_hermitian(rho_, tol)) throw std::invalid_argument("QState: matrix not Hermitian");
  const double tr = rho_.trace().real();
  if (std::abs(tr - 1.0) > tol) throw std::invalid_argument("QState: trace " + std::to_string(tr) + " != 1");
  const double lmin = min_eigenvalue(rho_);
  if (lmin < -tol) throw NotPsdError("QState: negative eigenvalue", lmin);
}

QState QState::unchecked(Matrix rho, SiteLayout layout) {
  return QState(std::move(rho), std::move(layout), Unchecked{});
}

QState QState::pure(const Vector& psi, SiteLayout layout) {
  const Vector v = psi / psi.norm();
  return QState(v * v.adjoint(), std::move(layout));
}

QState QState::maximally_mixed(SiteLayout layout) {
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  return QState(Matrix::Identity(d, d) / static_cast<double>(d), std::move(layout));
}

SupportLog herm_log_on_support(const Matrix& op, double tol, LogBase base) {
  if (op.rows() != op.cols()) throw DimensionError("herm_log_on_support: matrix not square");
  const auto [values, vectors] = hermitian_eig(op);
  if (values.size() > 0 && values(0) < -tol) throw NotPsdError("herm_log_on_support: input not PSD", values(0));
  RealVector logs = RealVector::Zero(values.size());
  RealVector mask = RealVector::Zero(values.size());
  int rank = 0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) > tol) {
      logs(i) = std::log(values(i)) / base.ln_base;
      mask(i) = 1.0;
      ++rank;
    }
  }
  SupportLog out;
  out.log = vectors * logs.cast<cplx>().asDiagonal() * vectors.adjoint();
  out.projector = vectors * mask.cast<cplx>().asDiagonal() * vectors.adjoint();
  out.rank = rank;
  out.eigenvalues = values;
  return out;
}

SupportLog herm_log_on_support(const HermitianOp& op, double tol, LogBase base) {
  return herm_log_on_support(op.matrix(), tol, base);
}

Matrix herm_exp(const Matrix& h) {
  const auto [values, vectors] = hermitian_eig(h);
  const RealVector e = values.array().exp().matrix();
  return vectors * e.cast<cplx>().asDiagonal() * vectors.adjoint();
}

}  // namespace qdecay
