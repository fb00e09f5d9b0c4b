#include "qdecay/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qdecay {

namespace {

constexpr std::size_t kMcChunks = 64;

std::size_t ipow(std::size_t base, int exp) {
  std::size_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

cplx gaussian_complex(Rng& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  const double re = n01(rng);
  const double im = n01(rng);
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

}  // namespace

std::vector<Permutation> all_permutations(int k) {
  if (k < 1) throw std::invalid_argument("all_permutations: k must be >= 1");
  Permutation p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  std::vector<Permutation> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int cycle_count(const Permutation& p) {
  std::vector<char> seen(p.size(), 0);
  int cycles = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) seen[j] = 1;
  }
  return cycles;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation out(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) out[j] = a[static_cast<std::size_t>(b[j])];
  return out;
}

Permutation inverse(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) out[static_cast<std::size_t>(p[j])] = static_cast<int>(j);
  return out;
}

namespace {

// For each column b of P_sigma, the row a holding the single 1.
std::vector<std::size_t> permutation_rows(const Permutation& sigma, int d) {
  const int k = static_cast<int>(sigma.size());
  const std::size_t dim = ipow(static_cast<std::size_t>(d), k);
  std::vector<std::size_t> stride(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) stride[static_cast<std::size_t>(c)] = ipow(static_cast<std::size_t>(d), k - 1 - c);
  std::vector<std::size_t> rows(dim);
  for (std::size_t b = 0; b < dim; ++b) {
    std::size_t a = 0;
    for (int c = 0; c < k; ++c) {
      const std::size_t digit = (b / stride[static_cast<std::size_t>(c)]) % static_cast<std::size_t>(d);
      a += digit * stride[static_cast<std::size_t>(sigma[static_cast<std::size_t>(c)])];
    }
    rows[b] = a;
  }
  return rows;
}

}  // namespace

Matrix permutation_operator(const Permutation& sigma, int d) {
  const auto rows = permutation_rows(sigma, d);
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix p = Matrix::Zero(n, n);
  for (Eigen::Index b = 0; b < n; ++b) p(static_cast<Eigen::Index>(rows[static_cast<std::size_t>(b)]), b) = 1.0;
  return p;
}

int twirl_k_cap() noexcept { return 4; }

GramMatrix gram_matrix(int d, int k) {
  if (d < 1 || k < 1) throw std::invalid_argument("gram_matrix: d and k must be >= 1");
  GramMatrix g;
  g.d = d;
  g.k = k;
  g.perms = all_permutations(k);
  const auto m = static_cast<Eigen::Index>(g.perms.size());
  g.gram.resize(m, m);
  for (Eigen::Index s = 0; s < m; ++s) {
    const Permutation inv = inverse(g.perms[static_cast<std::size_t>(s)]);
    for (Eigen::Index t = 0; t < m; ++t) {
      const int cyc = cycle_count(compose(inv, g.perms[static_cast<std::size_t>(t)]));
      g.gram(s, t) = std::pow(static_cast<double>(d), cyc);
    }
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(g.gram);
  const RealVector& ev = es.eigenvalues();
  const double cutoff = 1e-9 * ev.cwiseAbs().maxCoeff();
  RealVector inv_ev = RealVector::Zero(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > cutoff) {
      inv_ev(i) = 1.0 / ev(i);
      ++g.rank;
    }
  }
  g.pseudo_inverse = es.eigenvectors() * inv_ev.asDiagonal() * es.eigenvectors().transpose();
  return g;
}

SchurWeylTwirl::SchurWeylTwirl(int d, int k)
    : gram_(gram_matrix(d, k)), dim_(ipow(static_cast<std::size_t>(d), k)) {
  rows_.reserve(gram_.perms.size());
  for (const auto& p : gram_.perms) rows_.push_back(permutation_rows(p, d));
}

std::string SchurWeylTwirl::name() const {
  return "haar_twirl(d=" + std::to_string(gram_.d) + ",k=" + std::to_string(gram_.k) + ")";
}

std::vector<cplx> SchurWeylTwirl::overlaps(const Matrix& x) const {
  std::vector<cplx> c(rows_.size(), 0.0);
  for (std::size_t s = 0; s < rows_.size(); ++s) {
    cplx acc = 0.0;
    for (std::size_t b = 0; b < dim_; ++b) {
      acc += x(static_cast<Eigen::Index>(rows_[s][b]), static_cast<Eigen::Index>(b));
    }
    c[s] = acc;
  }
  return c;
}

Matrix SchurWeylTwirl::apply(const Matrix& x) const {
  const auto c = overlaps(x);
  const std::size_t m = rows_.size();
  const auto n = static_cast<Eigen::Index>(dim_);
  Matrix out = Matrix::Zero(n, n);
  for (std::size_t t = 0; t < m; ++t) {
    cplx y = 0.0;
    for (std::size_t s = 0; s < m; ++s) {
      y += gram_.pseudo_inverse(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)) * c[s];
    }
    if (y == cplx(0.0)) continue;
    for (std::size_t b = 0; b < dim_; ++b) {
      out(static_cast<Eigen::Index>(rows_[t][b]), static_cast<Eigen::Index>(b)) += y;
    }
  }
  return out;
}

ChannelRep haar_twirl_channel(int d, int k) {
  if (k > twirl_k_cap()) {
    throw CapacityError("haar twirl copies", static_cast<std::size_t>(k), static_cast<std::size_t>(twirl_k_cap()));
  }
  const std::size_t dim = ipow(static_cast<std::size_t>(d), k);
  if (dim > std::max<std::size_t>(state_dim_cap(), choi_dim_cap())) {
    throw CapacityError("haar twirl dimension", dim, std::max<std::size_t>(state_dim_cap(), choi_dim_cap()));
  }
  return ChannelRep::from_kernel(std::vector<int>(static_cast<std::size_t>(k), d),
                                 std::make_shared<const SchurWeylTwirl>(d, k));
}

CondExpectation haar_twirl_projector(int d, int k) { return validate_cond_expectation(haar_twirl_channel(d, k)); }

ChannelRep local_twirl(const SiteLayout& layout, std::span<const int> sites) {
  if (sites.empty()) throw std::invalid_argument("local_twirl: empty site set");
  std::vector<int> sorted(sites.begin(), sites.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("local_twirl: duplicate site");
  }
  if (sorted.front() < 0 || sorted.back() >= layout.sites()) throw DimensionError("local_twirl: site out of range");
  int d = 1;
  for (int s : sorted) d *= layout.local_dims()[static_cast<std::size_t>(s)];
  ChannelRep twirl = haar_twirl_channel(d, layout.copies());
  const auto factors = layout.copy_factors(sorted);
  std::vector<int> gathered_dims;
  for (int f : factors) gathered_dims.push_back(layout.factor_dims()[static_cast<std::size_t>(f)]);
  return ChannelRep::local(layout.factor_dims(),
                           {ChannelRep::Piece{factors, share(twirl.with_dims(std::move(gathered_dims)))}});
}

ChannelRep global_twirl(const SiteLayout& layout) {
  std::vector<int> all(static_cast<std::size_t>(layout.sites()));
  std::iota(all.begin(), all.end(), 0);
  return local_twirl(layout, all);
}

Matrix haar_sample_unitary(int d, Rng& rng) {
  if (d < 1) throw std::invalid_argument("haar_sample_unitary: d must be >= 1");
  const auto n = static_cast<Eigen::Index>(d);
  Matrix z(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) z(i, j) = gaussian_complex(rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const cplx rjj = r(j, j);
    const double mag = std::abs(rjj);
    q.col(j) *= (mag > 0.0 ? rjj / mag : cplx(1.0));
  }
  return q;
}

Matrix haar_sample_unitary(int d, std::uint64_t seed) {
  Rng rng(seed);
  return haar_sample_unitary(d, rng);
}

Vector haar_pure_state(std::size_t dim, Rng& rng) {
  Vector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = gaussian_complex(rng);
  return v / v.norm();
}

Matrix random_density(std::size_t dim, std::size_t rank, Rng& rng) {
  Matrix g(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(rank));
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = gaussian_complex(rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return hermitian_part(rho);
}

Matrix random_hermitian(std::size_t dim, double scale, Rng& rng) {
  Matrix g(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = gaussian_complex(rng);
  return scale * hermitian_part(g);
}

ChannelRep random_channel(int d, int kraus_rank, Rng& rng) {
  if (kraus_rank < 1) throw std::invalid_argument("random_channel: kraus_rank must be >= 1");
  const Matrix u = haar_sample_unitary(d * kraus_rank, rng);
  std::vector<Matrix> ops;
  for (int i = 0; i < kraus_rank; ++i) ops.push_back(u.block(static_cast<Eigen::Index>(i) * d, 0, d, d));
  return ChannelRep::kraus({d}, std::move(ops));
}

McTwirlResult mc_twirl(std::span<const Matrix> inputs, int d, int k, std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("mc_twirl: samples must be >= 1");
  const auto n = static_cast<Eigen::Index>(ipow(static_cast<std::size_t>(d), k));
  for (const auto& x : inputs) {
    if (x.rows() != n || x.cols() != n) throw DimensionError("mc_twirl: input dimension mismatch");
  }
  const std::size_t chunks = std::min(kMcChunks, samples);
  struct Partial {
    std::vector<Matrix> sum;
    std::vector<RealMatrix> sumsq;
  };
  std::vector<Partial> partial(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t begin = samples * c / chunks;
    const std::size_t end = samples * (c + 1) / chunks;
    Rng rng(derive_seed(seed, c));
    Partial& p = partial[c];
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      p.sum.push_back(Matrix::Zero(n, n));
      p.sumsq.push_back(RealMatrix::Zero(n, n));
    }
    for (std::size_t s = begin; s < end; ++s) {
      const Matrix v = kron_power(haar_sample_unitary(d, rng), k);
      for (std::size_t i = 0; i < inputs.size(); ++i) {
        const Matrix y = v * inputs[i] * v.adjoint();
        p.sum[i] += y;
        p.sumsq[i] += y.cwiseAbs2();
      }
    }
  });
  McTwirlResult out;
  out.samples = samples;
  const auto ns = static_cast<double>(samples);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    Matrix sum = Matrix::Zero(n, n);
    RealMatrix sumsq = RealMatrix::Zero(n, n);
    for (const auto& p : partial) {
      sum += p.sum[i];
      sumsq += p.sumsq[i];
    }
    Matrix mean = sum / ns;
    RealMatrix se = RealMatrix::Zero(n, n);
    if (samples > 1) {
      const RealMatrix var = ((sumsq - ns * mean.cwiseAbs2()) / (ns - 1.0)).cwiseMax(0.0);
      se = (var / ns).cwiseSqrt();
    }
    out.mean.push_back(std::move(mean));
    out.std_error.push_back(std::move(se));
  }
  return out;
}

Matrix mc_twirl(const Matrix& x, int d, int k, std::size_t samples, std::uint64_t seed) {
  return mc_twirl(std::span<const Matrix>(&x, 1), d, k, samples, seed).mean.front();
}

}  // namespace qdecay
