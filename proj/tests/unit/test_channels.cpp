#include "doctest.h"
#include "helpers.hpp"
#include "oracle_values.hpp"
#include "qdecay/channels.hpp"
#include "qdecay/moments.hpp"

using namespace qdecay;
using testutil::max_abs;

namespace {

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

}  // namespace

TEST_SUITE("channels") {
  TEST_CASE("representations agree") {
    Rng rng(11);
    const ChannelRep k = random_channel(3, 2, rng);
    const Matrix j = choi(k);
    const ChannelRep c = ChannelRep::from_choi({3}, j);
    const Matrix x = random_density(3, 3, rng);
    CHECK(max_abs(qdecay::apply(k, x) - qdecay::apply(c, x)) < 1e-12);
    CHECK(max_abs(liouville_to_choi(choi_to_liouville(j, 3), 3) - j) < 1e-14);
    const CptpCheck chk = check_cptp(j, 3);
    CHECK(chk.cp);
    CHECK(chk.tp);
  }

  TEST_CASE("Choi convention") {
    const ChannelRep x = ChannelRep::unitary({2}, pauli_x());
    const Matrix j = choi(x);
    // J(i d + a, j d + b) = X E_ij X (a, b)
    CHECK(std::abs(j(0 * 2 + 1, 0 * 2 + 1) - 1.0) < 1e-15);
    CHECK(std::abs(j(0 * 2 + 1, 1 * 2 + 0) - 1.0) < 1e-15);
    CHECK(std::abs(j(0, 0)) < 1e-15);
  }

  TEST_CASE("composition order and local pieces") {
    Rng rng(2);
    const ChannelRep a = random_channel(2, 2, rng);
    const ChannelRep b = random_channel(2, 3, rng);
    const Matrix x = random_density(2, 2, rng);
    CHECK(max_abs(qdecay::apply(compose(b, a), x) - qdecay::apply(b, qdecay::apply(a, x))) < 1e-12);
    CHECK(max_abs(qdecay::apply(sequence({a, b}), x) - qdecay::apply(b, qdecay::apply(a, x))) < 1e-12);
    const ChannelRep on_second = ChannelRep::local({2, 2}, {{{1}, share(a)}});
    const Matrix y = random_density(2, 2, rng);
    CHECK(max_abs(qdecay::apply(on_second, kron(y, x)) - kron(y, qdecay::apply(a, x))) < 1e-12);
    const ChannelRep ext = extend(a, 2);
    CHECK(max_abs(qdecay::apply(ext, kron(x, y)) - kron(qdecay::apply(a, x), y)) < 1e-12);
    CHECK_THROWS_AS(compose(a, random_channel(3, 1, rng)), DimensionError);
  }

  TEST_CASE("mixtures and adjoints") {
    Rng rng(4);
    const auto a = share(random_channel(2, 2, rng));
    const auto b = share(random_channel(2, 2, rng));
    const ChannelRep m = ChannelRep::mixture({2}, {0.25, 0.75}, {a, b});
    const Matrix x = random_density(2, 2, rng);
    CHECK(max_abs(qdecay::apply(m, x) - (0.25 * qdecay::apply(*a, x) + 0.75 * qdecay::apply(*b, x))) < 1e-12);
    CHECK_THROWS(ChannelRep::mixture({2}, {0.5, 0.6}, {a, b}));
    // <Y, phi(X)> = <phi*(Y), X>
    const Matrix y = random_hermitian(2, 1.0, rng);
    const cplx lhs = (y.adjoint() * qdecay::apply(*a, x)).trace();
    const cplx rhs = (qdecay::apply(adjoint(*a), y).adjoint() * x).trace();
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }

  TEST_CASE("depolarizing comparability matches the Choi eigenvalue oracle") {
    const ComparabilityResult r = relative_error(depolarizing(2, 0.9), full_depolarizer(2));
    CHECK(r.valid);
    CHECK(std::abs(r.eps - oracle::kDepol09Eps) < 1e-7);
    CHECK(std::abs(r.delta - oracle::kDepol09Delta) < 1e-7);
    const ComparabilityResult same = relative_error(full_depolarizer(2), full_depolarizer(2));
    CHECK(same.eps == 0.0);
    CHECK(same.delta == 0.0);
  }

  TEST_CASE("conditional expectations") {
    const CondExpectation e = validate_cond_expectation(full_depolarizer(3));
    CHECK(e.valid());
    const CondExpectation not_e = validate_cond_expectation(depolarizing(2, 0.5));
    CHECK_FALSE(not_e.idempotent);
    CHECK(commutation_defect(depolarizing(2, 0.3), full_depolarizer(2)) < 1e-12);
  }

  TEST_CASE("cb return time") {
    const CondExpectation e = validate_cond_expectation(full_depolarizer(2));
    CHECK(cb_return_time(e.channel, e, 5) == 1);
    CHECK(cb_return_time(depolarizing(2, 0.5), e, 20) == oracle::kCbDepolHalf);
    CHECK_FALSE(cb_return_time(depolarizing(2, 0.01), e, 3).has_value());
    CHECK(sdpi_from_return_time(1) == doctest::Approx(0.5));
    Matrix amp(2, 2);
    amp << 1, 0, 0, 0;
    Matrix amp2(2, 2);
    amp2 << 0, 1, 0, 0;
    CHECK_THROWS_AS(cb_return_time(ChannelRep::kraus({2}, {amp, amp2}), e, 5), PreconditionError);
  }

  TEST_CASE("Choi capacity") {
    CHECK_THROWS_AS(choi(ChannelRep::identity({2, 2, 2, 2, 2, 2, 2})), CapacityError);
  }
}
