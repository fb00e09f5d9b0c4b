#pragma once

// Trees on weighted interaction graphs: spanning trees, traversing walks,
// walk segmentation and edge colouring into parallel layers.

#include <vector>

#include "qdecay/arch.hpp"
#include "qdecay/parallel.hpp"

namespace qdecay {

struct Graph {
  int n = 0;
  std::vector<EdgeWeight> edges;

  std::vector<std::vector<int>> adjacency() const;
  int max_degree() const;
};

Graph graph_from_layer(const UnstructuredLayer& layer, int n);

/// Maximum-weight spanning tree (Kruskal). Throws PreconditionError when the
/// graph is disconnected.
Graph spanning_tree(const Graph& g);

bool is_tree(const Graph& g);

/// Random labelled tree on n nodes with every degree <= max_deg (>= 2);
/// unit edge weights.
Graph random_tree(int n, int max_deg, Rng& rng);

struct TraversingWalk {
  std::vector<int> nodes;
  std::vector<int> visit_counts;
  int max_degree = 0;  // l
};

/// Depth-first walk from a leaf that never returns along its final branch,
/// so each node is visited at most deg(node) times. Throws
/// std::invalid_argument when the input is not a tree.
TraversingWalk traversing_walk(const Graph& tree);

/// Consecutive walk nodes are tree-adjacent and visit counts lie in [1, l].
bool is_traversing_walk(const Graph& tree, const TraversingWalk& walk);

struct Segment {
  int begin = 0;  // walk positions [begin, end)
  int end = 0;
  std::vector<int> sites;                    // distinct nodes, sorted
  std::vector<std::pair<int, int>> edges;    // distinct traversed edges (min, max)
  bool connected = false;
  bool connects_next = false;                // last node adjacent to next segment's first
  bool qudit_count_ok = false;               // len / l <= |sites| <= len + 1

  int length() const { return end - begin; }
};

struct SegmentPlan {
  std::vector<Segment> segments;
  int target_len = 0;
  bool valid = false;  // all per-segment audits passed
};

/// Cuts the walk into consecutive segments of target_len nodes (the last may
/// be shorter) and audits the connectivity invariants.
SegmentPlan segment_walk(const Graph& tree, const TraversingWalk& walk, int target_len);

/// Proper edge colouring of a forest, greedy from each component root; each
/// colour becomes a parallel layer of 2-site clusters. Throws
/// std::invalid_argument when the edges contain a cycle.
std::vector<ParallelLayer> color_tree_edges(const Graph& forest);

}  // namespace qdecay
