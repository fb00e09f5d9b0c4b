#pragma once

// Circuit architectures: 2-layer parallel cluster specs, unstructured
// weighted-edge layers, their cluster graphs, Hamiltonian paths, and the
// overlapping P1/P2 chunkings of a path.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qdecay/tensors.hpp"

namespace qdecay {

struct ParallelLayer {
  std::vector<std::vector<int>> clusters;
};

struct WeightedEdge {
  int i = 0;
  int j = 0;
  double p = 0.0;
  std::string tag = "haar";  // "haar" or "identity"
};

struct UnstructuredLayer {
  std::vector<WeightedEdge> edges;
  /// false: one edge is drawn with probability p per application.
  /// true: every "haar" edge is applied, in order (a fixed realization).
  bool realized = false;
};

using Layer = std::variant<ParallelLayer, UnstructuredLayer>;

enum class ArchFamily { kGeneric, kBrickwork, kLattice };

struct ArchitectureSpec {
  int n = 0;
  int q = 2;
  std::vector<Layer> layers;
  ArchFamily family = ArchFamily::kGeneric;
  int lattice_dim = 0;
  int lattice_side = 0;

  SiteLayout layout(int copies = 1) const { return SiteLayout::uniform(n, q, copies); }
  /// Largest cluster size over parallel layers (the bound c).
  int cluster_bound() const;
};

struct Violation {
  std::string path;  // JSON-pointer-like location, e.g. /layers/1/clusters/0
  std::string message;
};

/// All invariant violations; empty when the spec is valid.
std::vector<Violation> validate(const ArchitectureSpec& spec);

ArchitectureSpec brickwork(int n, int q);
ArchitectureSpec lattice(int dim, int side, int q);

struct EdgeWeight {
  int i = 0;
  int j = 0;
  double w = 0.0;
};

/// Normalized single unstructured layer; zero-weight edges dropped.
/// Throws std::invalid_argument on negative or all-zero weights.
ArchitectureSpec unstructured_layer(const std::vector<EdgeWeight>& edges, int n, int q);

/// Connectivity of the graph on edges with p > 0.
bool edges_connected(const UnstructuredLayer& layer, int n);
int max_degree(const UnstructuredLayer& layer, int n);

/// Nearest-neighbour line circuit where each pair is independently random
/// with probability alpha per layer; the rest are identity placeholders.
std::vector<UnstructuredLayer> spurious_circuit(int n, int m_layers, double alpha, std::uint64_t seed);

struct ClusterNode {
  int layer = 0;
  int cluster = 0;
  std::vector<int> sites;
};

struct ClusterGraph {
  std::vector<ClusterNode> nodes;
  std::vector<std::vector<int>> adjacency;  // sorted neighbour lists
  std::vector<std::vector<int>> site_map;   // site -> nodes containing it
  int n_sites = 0;
  bool connected = false;
  bool bipartite = false;
  ArchFamily family = ArchFamily::kGeneric;
  int lattice_dim = 0;
  int lattice_side = 0;

  std::size_t size() const noexcept { return nodes.size(); }
  bool adjacent(int a, int b) const;
  std::size_t edge_count() const;
};

/// Nodes are the clusters of all parallel layers; edges join overlapping
/// clusters. Throws std::invalid_argument if the spec has no parallel layer.
ClusterGraph cluster_graph(const ArchitectureSpec& spec);

enum class PathStatus { kFound, kNoPath, kBudgetExhausted };
std::string to_string(PathStatus s);

struct HamiltonianResult {
  PathStatus status = PathStatus::kNoPath;
  std::vector<int> path;
  std::size_t expansions = 0;
  std::string reason;
};

inline constexpr std::size_t kDefaultPathBudget = 10'000'000;

HamiltonianResult hamiltonian_path(const ClusterGraph& g, std::size_t budget = kDefaultPathBudget);

/// Independent check: every node exactly once, consecutive nodes adjacent.
bool is_hamiltonian_path(const ClusterGraph& g, const std::vector<int>& path, std::string* why = nullptr);

struct Chunk {
  int begin = 0;  // path positions [begin, end)
  int end = 0;
  int role_nodes = 0;  // nodes of the partition's own layer
  bool merged_tail = false;
  std::vector<int> sites;
};

struct PathPlan {
  std::vector<int> path;
  int r = 0;
  std::vector<Chunk> p1;
  std::vector<Chunk> p2;
  std::vector<int> p1_missing;  // path positions
  std::vector<int> p2_missing;
  bool r_valid = false;         // r < n / 4
  int min_overlap = 0;          // over P1/P2 chunk pairs sharing a position
  bool observation1 = false;    // min_overlap >= r - 1
  bool observation2 = false;    // every chunk holds <= 3r/2 role nodes
  bool observation3 = false;    // missing sets match the closed form
};

/// Role index helpers for an alternating path: x^(1)_j sits at position
/// 2(j-1), x^(2)_j at 2j-1 (j from 1).
inline int layer1_position(int j) { return 2 * (j - 1); }
inline int layer2_position(int j) { return 2 * j - 1; }

/// P1 chunks r first-layer nodes with gaps at x^(2)_{r}, x^(2)_{2r}, ...;
/// P2 starts with 3r/2 second-layer nodes (plus the leading x^(1)_1) and
/// has gaps at x^(1)_{3r/2+1}, x^(1)_{5r/2+1}, .... A final chunk with
/// fewer than r/2 role nodes is merged into its predecessor. Throws
/// std::invalid_argument for odd or non-positive r or a malformed path.
PathPlan chunk_partitions(const ClusterGraph& g, const std::vector<int>& path, int r);

}  // namespace qdecay
