#pragma once

// Exact k-fold Haar twirls from Schur-Weyl duality.
//
// The commutant of {U^(x)k} is spanned by the copy-permutation operators P_s.
// The twirl is the Hilbert-Schmidt orthogonal projection onto that span:
//   E(X) = sum_{s,t} (G^+)_{st} tr(P_s^dag X) P_t,   G_{st} = d^{cycles(s^-1 t)}.
// For d < k the P_s are linearly dependent and G^+ is a pseudo-inverse.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "qdecay/channels.hpp"
#include "qdecay/parallel.hpp"
#include "qdecay/tensors.hpp"

namespace qdecay {

/// Permutation of {0..k-1}; entry j is the image of j.
using Permutation = std::vector<int>;

std::vector<Permutation> all_permutations(int k);
int cycle_count(const Permutation& p);
/// (a * b)(j) = a(b(j)).
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& p);

/// P_s on (C^d)^(x)k: the vector in copy j moves to copy s(j). Satisfies
/// P_s P_t = P_{s t}.
Matrix permutation_operator(const Permutation& sigma, int d);

/// Largest k for twirl construction (default 4).
int twirl_k_cap() noexcept;

struct GramMatrix {
  int d = 0;
  int k = 0;
  std::vector<Permutation> perms;
  RealMatrix gram;
  RealMatrix pseudo_inverse;
  int rank = 0;
};

/// Gram data with spectral cutoff 1e-9 * lambda_max.
GramMatrix gram_matrix(int d, int k);

/// The exact twirl as a structured linear map on (C^d)^(x)k.
class SchurWeylTwirl final : public MapKernel {
 public:
  SchurWeylTwirl(int d, int k);
  std::size_t dim() const override { return dim_; }
  Matrix apply(const Matrix& x) const override;
  std::string name() const override;

  const GramMatrix& gram() const noexcept { return gram_; }
  /// Coefficients c_s = tr(P_s^dag X).
  std::vector<cplx> overlaps(const Matrix& x) const;

 private:
  GramMatrix gram_;
  std::size_t dim_;
  // rows_[s][b] = a with (P_s)_{ab} = 1.
  std::vector<std::vector<std::size_t>> rows_;
};

/// Unvalidated twirl channel on (C^d)^(x)k with factor dims {d, ..., d}.
ChannelRep haar_twirl_channel(int d, int k);

/// Twirl channel validated as a conditional expectation. Throws CapacityError
/// when k exceeds twirl_k_cap() or the Choi matrix exceeds the cap.
CondExpectation haar_twirl_projector(int d, int k);

/// Twirl on the k copies of `sites`, identity elsewhere.
ChannelRep local_twirl(const SiteLayout& layout, std::span<const int> sites);

/// Twirl over all sites of the layout.
ChannelRep global_twirl(const SiteLayout& layout);

/// Haar unitary from a complex Ginibre matrix, QR, and phase correction.
Matrix haar_sample_unitary(int d, Rng& rng);
Matrix haar_sample_unitary(int d, std::uint64_t seed);

Vector haar_pure_state(std::size_t dim, Rng& rng);
/// Density matrix G G^dag / tr, G a dim x rank Ginibre matrix.
Matrix random_density(std::size_t dim, std::size_t rank, Rng& rng);
Matrix random_hermitian(std::size_t dim, double scale, Rng& rng);

/// Random CPTP map with kraus_rank Kraus operators cut from a Haar isometry.
ChannelRep random_channel(int d, int kraus_rank, Rng& rng);

struct McTwirlResult {
  std::vector<Matrix> mean;
  std::vector<Matrix> std_error;  // entrywise, sqrt(var / samples)
  std::size_t samples = 0;
};

/// Monte-Carlo average of U^(x)k X U^dag(x)k over Haar samples, for several
/// inputs sharing the same samples. Sampling is split into fixed chunks with
/// streams derived from (seed, chunk), so results do not depend on workers.
McTwirlResult mc_twirl(std::span<const Matrix> inputs, int d, int k, std::size_t samples, std::uint64_t seed);
Matrix mc_twirl(const Matrix& x, int d, int k, std::size_t samples, std::uint64_t seed);

}  // namespace qdecay
