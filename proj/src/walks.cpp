#include "qdecay/walks.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "qdecay/tensors.hpp"

namespace qdecay {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

void check_endpoints(const Graph& g) {
  for (const auto& e : g.edges) {
    if (e.i < 0 || e.j < 0 || e.i >= g.n || e.j >= g.n || e.i == e.j) {
      throw std::invalid_argument("graph: bad edge endpoints");
    }
  }
}

bool is_forest(const Graph& g) {
  UnionFind uf(g.n);
  for (const auto& e : g.edges) {
    if (!uf.unite(e.i, e.j)) return false;
  }
  return true;
}

}  // namespace

std::vector<std::vector<int>> Graph::adjacency() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const auto& e : edges) {
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return adj;
}

int Graph::max_degree() const {
  int best = 0;
  for (const auto& a : adjacency()) best = std::max(best, static_cast<int>(a.size()));
  return best;
}

Graph graph_from_layer(const UnstructuredLayer& layer, int n) {
  Graph g;
  g.n = n;
  for (const auto& e : layer.edges) {
    if (e.p > 0.0) g.edges.push_back({e.i, e.j, e.p});
  }
  return g;
}

Graph spanning_tree(const Graph& g) {
  check_endpoints(g);
  if (g.n < 1) throw PreconditionError("spanning_tree: empty graph");
  std::vector<std::size_t> order(g.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return g.edges[a].w > g.edges[b].w; });
  UnionFind uf(g.n);
  Graph tree;
  tree.n = g.n;
  for (std::size_t idx : order) {
    const auto& e = g.edges[idx];
    if (uf.unite(e.i, e.j)) tree.edges.push_back(e);
  }
  if (static_cast<int>(tree.edges.size()) != g.n - 1) throw PreconditionError("spanning_tree: graph is disconnected");
  return tree;
}

bool is_tree(const Graph& g) {
  if (g.n < 1 || static_cast<int>(g.edges.size()) != g.n - 1) return false;
  for (const auto& e : g.edges) {
    if (e.i < 0 || e.j < 0 || e.i >= g.n || e.j >= g.n || e.i == e.j) return false;
  }
  return is_forest(g);
}

Graph random_tree(int n, int max_deg, Rng& rng) {
  if (n < 1 || max_deg < 2) throw std::invalid_argument("random_tree: need n >= 1 and max_deg >= 2");
  Graph tree;
  tree.n = n;
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  std::vector<int> open;
  if (n > 0) open.push_back(0);
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
    const std::size_t slot = pick(rng);
    const int u = open[slot];
    tree.edges.push_back({u, v, 1.0});
    if (++degree[u] >= max_deg) {
      open[slot] = open.back();
      open.pop_back();
    }
    ++degree[v];
    open.push_back(v);
  }
  return tree;
}

TraversingWalk traversing_walk(const Graph& tree) {
  if (!is_tree(tree)) throw std::invalid_argument("traversing_walk: input is not a tree");
  const auto adj = tree.adjacency();
  TraversingWalk walk;
  walk.max_degree = tree.max_degree();
  walk.visit_counts.assign(static_cast<std::size_t>(tree.n), 0);
  int root = 0;
  for (int v = 0; v < tree.n; ++v) {
    if (adj[v].size() <= 1) {
      root = v;
      break;
    }
  }
  // Rooted children and subtree heights, so the deepest branch is walked last.
  std::vector<int> parent(static_cast<std::size_t>(tree.n), -1);
  std::vector<int> order{root};
  parent[root] = root;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int w : adj[order[i]]) {
      if (parent[w] < 0) {
        parent[w] = order[i];
        order.push_back(w);
      }
    }
  }
  std::vector<int> height(static_cast<std::size_t>(tree.n), 0);
  std::vector<std::vector<int>> children(static_cast<std::size_t>(tree.n));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    if (v == root) continue;
    children[parent[v]].push_back(v);
    height[parent[v]] = std::max(height[parent[v]], height[v] + 1);
  }
  for (auto& c : children) {
    std::sort(c.begin(), c.end(), [&](int a, int b) { return height[a] != height[b] ? height[a] < height[b] : a < b; });
  }
  // Iterative DFS; frames carry (node, next child index, on final branch).
  struct Frame {
    int v;
    std::size_t next;
    bool final_branch;
  };
  std::vector<Frame> stack{{root, 0, true}};
  walk.nodes.push_back(root);
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& ch = children[f.v];
    if (f.next < ch.size()) {
      const int c = ch[f.next];
      const bool last = f.next + 1 == ch.size();
      ++f.next;
      stack.push_back({c, 0, f.final_branch && last});
      walk.nodes.push_back(c);
      continue;
    }
    const bool final_branch = f.final_branch;
    stack.pop_back();
    if (!stack.empty() && !final_branch) walk.nodes.push_back(stack.back().v);
  }
  for (int v : walk.nodes) ++walk.visit_counts[v];
  return walk;
}

bool is_traversing_walk(const Graph& tree, const TraversingWalk& walk) {
  if (walk.nodes.empty()) return false;
  const auto adj = tree.adjacency();
  const int ell = std::max(tree.max_degree(), 1);
  std::vector<int> counts(static_cast<std::size_t>(tree.n), 0);
  for (std::size_t i = 0; i < walk.nodes.size(); ++i) {
    const int v = walk.nodes[i];
    if (v < 0 || v >= tree.n) return false;
    ++counts[v];
    if (i > 0 && !std::binary_search(adj[walk.nodes[i - 1]].begin(), adj[walk.nodes[i - 1]].end(), v)) return false;
  }
  return std::all_of(counts.begin(), counts.end(), [&](int c) { return c >= 1 && c <= ell; });
}

SegmentPlan segment_walk(const Graph& tree, const TraversingWalk& walk, int target_len) {
  if (target_len < 1) throw std::invalid_argument("segment_walk: target_len must be >= 1");
  const auto adj = tree.adjacency();
  const int ell = std::max(tree.max_degree(), 1);
  const int len = static_cast<int>(walk.nodes.size());
  SegmentPlan plan;
  plan.target_len = target_len;
  for (int b = 0; b < len; b += target_len) {
    Segment s;
    s.begin = b;
    s.end = std::min(len, b + target_len);
    std::set<int> sites;
    std::set<std::pair<int, int>> edges;
    for (int p = s.begin; p < s.end; ++p) {
      sites.insert(walk.nodes[p]);
      if (p > s.begin) {
        const int a = walk.nodes[p - 1];
        const int c = walk.nodes[p];
        edges.insert({std::min(a, c), std::max(a, c)});
      }
    }
    s.sites.assign(sites.begin(), sites.end());
    s.edges.assign(edges.begin(), edges.end());
    plan.segments.push_back(std::move(s));
  }
  plan.valid = !plan.segments.empty();
  for (std::size_t i = 0; i < plan.segments.size(); ++i) {
    auto& s = plan.segments[i];
    // Connectivity of the induced subgraph on the segment's sites.
    std::vector<int> local(static_cast<std::size_t>(tree.n), -1);
    for (std::size_t k = 0; k < s.sites.size(); ++k) local[s.sites[k]] = static_cast<int>(k);
    std::vector<char> seen(s.sites.size(), 0);
    std::vector<int> stack{s.sites.front()};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : adj[v]) {
        if (local[w] >= 0 && !seen[local[w]]) {
          seen[local[w]] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    s.connected = reached == s.sites.size();
    if (i + 1 < plan.segments.size()) {
      const int last = walk.nodes[s.end - 1];
      const int next = walk.nodes[plan.segments[i + 1].begin];
      s.connects_next = std::binary_search(adj[last].begin(), adj[last].end(), next);
    } else {
      s.connects_next = true;
    }
    const int count = static_cast<int>(s.sites.size());
    s.qudit_count_ok = count * ell >= s.length() && count <= s.length() + 1;
    plan.valid = plan.valid && s.connected && s.connects_next && s.qudit_count_ok;
  }
  return plan;
}

std::vector<ParallelLayer> color_tree_edges(const Graph& forest) {
  check_endpoints(forest);
  if (!is_forest(forest)) throw std::invalid_argument("color_tree_edges: input contains a cycle");
  const int n = forest.n;
  std::vector<std::vector<std::pair<int, std::size_t>>> inc(static_cast<std::size_t>(n));
  for (std::size_t e = 0; e < forest.edges.size(); ++e) {
    inc[forest.edges[e].i].push_back({forest.edges[e].j, e});
    inc[forest.edges[e].j].push_back({forest.edges[e].i, e});
  }
  std::vector<int> color(forest.edges.size(), -1);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> parent_color(static_cast<std::size_t>(n), -1);
  int colors = 0;
  for (int root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    std::vector<int> queue{root};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const int v = queue[qi];
      int next = 0;
      for (const auto& [w, e] : inc[v]) {
        if (seen[w]) continue;
        if (next == parent_color[v]) ++next;
        color[e] = next;
        colors = std::max(colors, next + 1);
        parent_color[w] = next;
        seen[w] = 1;
        queue.push_back(w);
        ++next;
      }
    }
  }
  std::vector<ParallelLayer> layers(static_cast<std::size_t>(colors));
  for (std::size_t e = 0; e < forest.edges.size(); ++e) {
    layers[color[e]].clusters.push_back({forest.edges[e].i, forest.edges[e].j});
  }
  return layers;
}

}  // namespace qdecay
