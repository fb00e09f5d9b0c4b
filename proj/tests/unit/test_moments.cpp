#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "qdecay/moments.hpp"

using namespace qdecay;
using testutil::max_abs;

TEST_SUITE("moments") {
  TEST_CASE("permutation group") {
    CHECK(all_permutations(3).size() == 6);
    CHECK(cycle_count({0, 1, 2}) == 3);
    CHECK(cycle_count({1, 2, 0}) == 1);
    const Permutation a{1, 0, 2};
    const Permutation b{0, 2, 1};
    const Matrix pa = permutation_operator(a, 2);
    const Matrix pb = permutation_operator(b, 2);
    CHECK(max_abs(pa * pb - permutation_operator(compose(a, b), 2)) < 1e-15);
    CHECK(compose(a, inverse(a)) == Permutation{0, 1, 2});
  }

  TEST_CASE("projector properties across (d, k)") {
    const std::vector<std::pair<int, int>> cases{{2, 1}, {3, 1}, {2, 2}, {3, 2}, {2, 3}, {4, 2}, {3, 3}, {4, 3}};
    for (const auto& [d, k] : cases) {
      CAPTURE(d);
      CAPTURE(k);
      const CondExpectation e = haar_twirl_projector(d, k);
      CHECK(e.valid());
      for (const auto& s : all_permutations(k)) {
        const Matrix p = permutation_operator(s, d);
        CHECK(max_abs(qdecay::apply(e.channel, p) - p) < 1e-10);
      }
      const GramMatrix& g = gram_matrix(d, k);
      int expected_rank = 0;
      // rank = number of permutations when d >= k; for d < k it drops.
      if (d >= k) expected_rank = static_cast<int>(g.perms.size());
      if (d >= k) CHECK(g.rank == expected_rank);
      if (d < k) CHECK(g.rank < static_cast<int>(g.perms.size()));
    }
  }

  TEST_CASE("k = 2 twirl matches the symmetric/antisymmetric formula") {
    Rng rng(21);
    const int d = 3;
    const Matrix swap = permutation_operator({1, 0}, d);
    const Matrix id = Matrix::Identity(d * d, d * d);
    const Matrix ps = (id + swap) / 2.0;
    const Matrix pa = (id - swap) / 2.0;
    const ChannelRep e = haar_twirl_channel(d, 2);
    for (int i = 0; i < 5; ++i) {
      const Matrix x = random_hermitian(d * d, 1.0, rng);
      const Matrix expect = (ps * x).trace() / ps.trace() * ps + (pa * x).trace() / pa.trace() * pa;
      CHECK(max_abs(qdecay::apply(e, x) - expect) < 1e-12);
    }
  }

  TEST_CASE("Monte-Carlo oracle for |00><11|") {
    Matrix x = Matrix::Zero(4, 4);
    x(0, 3) = 1.0;
    const Matrix exact = qdecay::apply(haar_twirl_channel(2, 2), x);
    CHECK(max_abs(exact) < 1e-14);
    const Matrix mc = mc_twirl(x, 2, 2, 100000, 17);
    CHECK(max_abs(mc - exact) < 2e-2);
  }

  TEST_CASE("Monte-Carlo average of a random input within 2e-2 in Frobenius norm") {
    Rng rng(8);
    const Matrix x = random_density(4, 4, rng);
    const Matrix exact = qdecay::apply(haar_twirl_channel(2, 2), x);
    CHECK((mc_twirl(x, 2, 2, 100000, 3) - exact).norm() <= 2e-2);
  }

  TEST_CASE("Haar mean is zero and samples are unitary") {
    Rng rng(1);
    Matrix mean = Matrix::Zero(2, 2);
    const int samples = 100000;
    for (int i = 0; i < samples; ++i) {
      const Matrix u = haar_sample_unitary(2, rng);
      if (i < 10) CHECK(max_abs(u * u.adjoint() - Matrix::Identity(2, 2)) < 1e-12);
      mean += u;
    }
    CHECK(max_abs(mean / samples) <= 0.02);
  }

  TEST_CASE("Monte-Carlo is independent of worker count") {
    Matrix x = Matrix::Zero(4, 4);
    x(1, 2) = 1.0;
    const Matrix a = mc_twirl(x, 2, 2, 5000, 42);
    const Matrix b = mc_twirl(x, 2, 2, 5000, 42);
    CHECK(max_abs(a - b) == 0.0);
  }

  TEST_CASE("local twirl commutes with V (x) V on its sites") {
    const SiteLayout layout = SiteLayout::uniform(3, 2, 2);
    const std::vector<int> sites{0, 1};
    const ChannelRep e = local_twirl(layout, sites);
    Rng rng(6);
    const Matrix x = random_density(layout.total_dim(), 3, rng);
    const Matrix out = qdecay::apply(e, x);
    const Matrix id2 = Matrix::Identity(2, 2);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Matrix v = haar_sample_unitary(4, rng);
      // Copy-major factors: copy 0 = (s0, s1, s2), copy 1 = (s0, s1, s2).
      const Matrix w = kron(kron(v, id2), kron(v, id2));
      worst = std::max(worst, max_abs(w * out * w.adjoint() - out));
    }
    CHECK(worst <= 1e-8);
  }

  TEST_CASE("capacity") {
    CHECK_THROWS_AS(haar_twirl_projector(2, twirl_k_cap() + 1), CapacityError);
  }
}
