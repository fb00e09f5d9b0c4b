#include <numeric>

#include "doctest.h"
#include "helpers.hpp"
#include "qdecay/moments.hpp"
#include "qdecay/parallel.hpp"
#include "qdecay/tensors.hpp"

using namespace qdecay;
using testutil::max_abs;

TEST_SUITE("tensors") {
  TEST_CASE("layout is copy-major") {
    const SiteLayout l = SiteLayout::uniform(3, 2, 2);
    CHECK(l.factor_count() == 6);
    CHECK(l.total_dim() == 64);
    CHECK(l.copy_dim() == 8);
    CHECK(l.factor_index(0, 2) == 2);
    CHECK(l.factor_index(1, 0) == 3);
    const std::vector<int> sites{0, 2};
    CHECK(l.copy_factors(sites) == std::vector<int>{0, 2, 3, 5});
    CHECK_THROWS_AS(SiteLayout::uniform(0, 2, 1), DimensionError);
    CHECK_THROWS_AS(SiteLayout({1}, 1), DimensionError);
    CHECK_THROWS_AS(l.factor_index(2, 0), DimensionError);
  }

  TEST_CASE("kron and partial trace") {
    Rng rng(3);
    const Matrix a = random_density(2, 2, rng);
    const Matrix b = random_density(3, 3, rng);
    const Matrix ab = kron(a, b);
    const std::vector<int> dims{2, 3};
    CHECK(max_abs(partial_trace(ab, dims, std::vector<int>{0}) - a) < 1e-12);
    CHECK(max_abs(partial_trace(ab, dims, std::vector<int>{1}) - b) < 1e-12);
    const Matrix full = partial_trace(ab, dims, std::vector<int>{});
    CHECK(full.rows() == 1);
    CHECK(std::abs(full(0, 0) - 1.0) < 1e-12);
    CHECK_THROWS_AS(partial_trace(ab, dims, std::vector<int>{0, 0}), DimensionError);
    CHECK(max_abs(kron_power(a, 3) - kron(a, kron(a, a))) < 1e-12);
  }

  TEST_CASE("factor permutation reorders tensor products") {
    Rng rng(5);
    const Matrix a = random_density(2, 2, rng);
    const Matrix b = random_density(3, 1, rng);
    const Matrix c = random_density(2, 2, rng);
    const std::vector<int> dims{2, 3, 2};
    const std::vector<int> perm{2, 0, 1};
    const Matrix out = permute_factors(kron(a, kron(b, c)), dims, perm);
    CHECK(max_abs(out - kron(c, kron(a, b))) < 1e-12);
    CHECK_THROWS_AS(permute_factors(out, dims, std::vector<int>{0, 0, 1}), DimensionError);
  }

  TEST_CASE("state validation") {
    const SiteLayout l = SiteLayout::uniform(1, 2, 1);
    Matrix bad = Matrix::Identity(2, 2);
    CHECK_THROWS_AS(QState(bad, l), std::invalid_argument);
    Matrix neg(2, 2);
    neg << 1.5, 0, 0, -0.5;
    CHECK_THROWS_AS(QState(neg, l), NotPsdError);
    Matrix nonherm(2, 2);
    nonherm << 0.5, 0.3, 0.0, 0.5;
    CHECK_THROWS_AS(QState(nonherm, l), std::invalid_argument);
    CHECK_NOTHROW(QState::maximally_mixed(l));
    Vector psi(2);
    psi << 1, 0;
    CHECK(max_abs(QState::pure(psi, l).matrix() - psi * psi.adjoint()) < 1e-15);
  }

  TEST_CASE("logarithm on the support") {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 0) = 0.5;
    m(1, 1) = 0.5;
    const SupportLog s = herm_log_on_support(m, 1e-12, LogBase::two());
    CHECK(s.rank == 2);
    CHECK(std::abs(s.log(0, 0).real() + 1.0) < 1e-12);
    CHECK(std::abs(s.log(2, 2)) < 1e-15);
    Matrix neg = -Matrix::Identity(2, 2);
    CHECK_THROWS_AS(herm_log_on_support(neg, 1e-10), NotPsdError);
    CHECK_THROWS_AS(LogBase::of(1.0), std::invalid_argument);
  }

  TEST_CASE("positivity helpers agree") {
    Rng rng(9);
    for (int i = 0; i < 20; ++i) {
      const Matrix h = random_hermitian(6, 1.0, rng);
      const double lmin = min_eigenvalue(h);
      CHECK(is_psd_within(h, std::max(-lmin, 0.0) + 1e-9));
      if (lmin < -1e-6) CHECK_FALSE(is_psd_within(h, 0.0));
    }
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = -2.0;
    CHECK(std::abs(trace_norm(d) - 3.0) < 1e-12);
  }

  TEST_CASE("parallel_for is deterministic and derive_seed separates streams") {
    std::vector<double> a(64), b(64);
    parallel_for(64, [&](std::size_t i) {
      Rng rng(derive_seed(1, i));
      a[i] = std::uniform_real_distribution<double>()(rng);
    });
    parallel_for(64, [&](std::size_t i) {
      Rng rng(derive_seed(1, i));
      b[i] = std::uniform_real_distribution<double>()(rng);
    });
    CHECK(a == b);
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK_THROWS(parallel_for(4, [](std::size_t i) {
      if (i == 2) throw std::runtime_error("boom");
    }));
  }
}
