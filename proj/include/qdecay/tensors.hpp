#pragma once

// Dense complex linear algebra on multi-site, k-copy Hilbert spaces.
//
// Factor positions follow copy-major order: copy 0 holds sites 0..n-1, copy 1
// holds sites 0..n-1 again, and so on. Within a matrix index the first factor
// is the most significant digit.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qdecay {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, std::size_t required, std::size_t cap);
  std::size_t required() const noexcept { return required_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t required_;
  std::size_t cap_;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotPsdError : public std::domain_error {
 public:
  NotPsdError(const std::string& what, double min_eigenvalue);
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// Global eigenvalue tolerance for positivity tests (default 1e-10).
double psd_tolerance() noexcept;
void set_psd_tolerance(double tol) noexcept;

/// Largest state dimension (default 2048) and largest Choi side length
/// (default 4096). QDECAY_DIM_CAP overrides the Choi cap.
std::size_t state_dim_cap() noexcept;
std::size_t choi_dim_cap();

class SiteLayout {
 public:
  SiteLayout(std::vector<int> local_dims, int copies);
  static SiteLayout uniform(int sites, int q, int copies);

  int sites() const noexcept { return static_cast<int>(local_dims_.size()); }
  int copies() const noexcept { return copies_; }
  const std::vector<int>& local_dims() const noexcept { return local_dims_; }
  std::size_t copy_dim() const noexcept { return copy_dim_; }
  std::size_t total_dim() const noexcept { return total_dim_; }

  int factor_count() const noexcept { return sites() * copies_; }
  int factor_index(int copy, int site) const;
  std::vector<int> factor_dims() const;

  /// Factor positions of the given sites in every copy, copy-major.
  std::vector<int> copy_factors(std::span<const int> sites) const;

  bool operator==(const SiteLayout&) const = default;

 private:
  std::vector<int> local_dims_;
  int copies_;
  std::size_t copy_dim_;
  std::size_t total_dim_;
};

std::size_t dims_product(std::span<const int> dims);

/// Index map for a factor reordering: entry i is the old flat index of the
/// basis vector whose new flat index is i. New factor position p holds old
/// factor perm[p].
std::vector<std::size_t> factor_gather_map(std::span<const int> dims, std::span<const int> perm);

/// P op P^dagger for the reindexing unitary P induced by perm.
Matrix permute_factors(const Matrix& op, std::span<const int> dims, std::span<const int> perm);
Matrix permute_factors(const Matrix& op, const SiteLayout& layout, std::span<const int> perm);

/// Partial trace keeping the listed factors (in ascending position order).
/// An empty keep set yields the full trace as a 1x1 matrix.
Matrix partial_trace(const Matrix& op, std::span<const int> dims, std::span<const int> keep);
Matrix partial_trace(const Matrix& op, const SiteLayout& layout, std::span<const int> keep);

Matrix kron(const Matrix& a, const Matrix& b);
Matrix kron_power(const Matrix& a, int k);

bool is_hermitian(const Matrix& m, double tol);
double hermitian_defect(const Matrix& m);
Matrix hermitian_part(const Matrix& m);

struct EigenPair {
  RealVector values;  // ascending
  Matrix vectors;
};
EigenPair hermitian_eig(const Matrix& m);
double min_eigenvalue(const Matrix& m);

/// Cholesky test of m + tol*I; equivalent to lambda_min(m) >= -tol up to
/// rounding and several times cheaper than a full eigendecomposition.
bool is_psd_within(const Matrix& m, double tol);

double trace_norm(const Matrix& m);

/// Natural-log base carried as ln(base).
struct LogBase {
  double ln_base = 1.0;
  static LogBase natural() { return {1.0}; }
  static LogBase two();
  static LogBase of(double base);
};

class HermitianOp {
 public:
  HermitianOp(Matrix m, double tol = 1e-10);
  const Matrix& matrix() const noexcept { return matrix_; }

 private:
  Matrix matrix_;
};

class QState {
 public:
  /// Validates Hermiticity, unit trace and positivity within tol.
  QState(Matrix rho, SiteLayout layout, double tol = 1e-10);
  static QState unchecked(Matrix rho, SiteLayout layout);

  const Matrix& matrix() const noexcept { return rho_; }
  const SiteLayout& layout() const noexcept { return layout_; }

  static QState pure(const Vector& psi, SiteLayout layout);
  static QState maximally_mixed(SiteLayout layout);

 private:
  struct Unchecked {};
  QState(Matrix rho, SiteLayout layout, Unchecked);
  Matrix rho_;
  SiteLayout layout_;
};

struct SupportLog {
  Matrix log;        // zero outside the support
  Matrix projector;  // onto eigenvectors with eigenvalue > tol
  int rank = 0;
  RealVector eigenvalues;
};

/// Logarithm on the support; eigenvalues <= tol are outside the support.
/// Throws NotPsdError when an eigenvalue is below -tol.
SupportLog herm_log_on_support(const Matrix& op, double tol, LogBase base = LogBase::natural());
SupportLog herm_log_on_support(const HermitianOp& op, double tol, LogBase base = LogBase::natural());

Matrix herm_exp(const Matrix& h);

}  // namespace qdecay
