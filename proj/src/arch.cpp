#include "qdecay/arch.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>

#include "qdecay/parallel.hpp"

namespace qdecay {

namespace {

std::string layer_path(std::size_t l) { return "/layers/" + std::to_string(l); }

// Connected components over an adjacency list; returns the component count.
int component_count(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<char> seen(adj.size(), 0);
  int comps = 0;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++comps;
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : adj[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  return comps;
}

bool two_colorable(const std::vector<std::vector<int>>& adj) {
  std::vector<int> color(adj.size(), -1);
  for (std::size_t s = 0; s < adj.size(); ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::queue<int> bfs;
    bfs.push(static_cast<int>(s));
    while (!bfs.empty()) {
      const int v = bfs.front();
      bfs.pop();
      for (int w : adj[v]) {
        if (color[w] < 0) {
          color[w] = 1 - color[v];
          bfs.push(w);
        } else if (color[w] == color[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

std::vector<std::vector<int>> edge_adjacency(const UnstructuredLayer& layer, int n) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const auto& e : layer.edges) {
    if (e.p <= 0.0 || e.i < 0 || e.j < 0 || e.i >= n || e.j >= n) continue;
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return adj;
}

// Lattice corner enumeration, axis 0 fastest.
std::vector<std::vector<int>> corners(int dim, int side, int offset) {
  const int per_axis = side / 2;
  std::size_t count = 1;
  for (int a = 0; a < dim; ++a) count *= static_cast<std::size_t>(per_axis);
  std::vector<std::vector<int>> out;
  out.reserve(count);
  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<int> corner(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; ++a) corner[a] = 2 * idx[a] + offset;
    out.push_back(std::move(corner));
    for (int a = 0; a < dim; ++a) {
      if (++idx[a] < per_axis) break;
      idx[a] = 0;
    }
  }
  return out;
}

std::vector<int> hypercube_sites(const std::vector<int>& corner, int side) {
  const int dim = static_cast<int>(corner.size());
  std::vector<int> sites;
  for (int mask = 0; mask < (1 << dim); ++mask) {
    int site = 0;
    int stride = 1;
    for (int a = 0; a < dim; ++a) {
      site += ((corner[a] + ((mask >> a) & 1)) % side) * stride;
      stride *= side;
    }
    sites.push_back(site);
  }
  std::sort(sites.begin(), sites.end());
  return sites;
}

}  // namespace

int ArchitectureSpec::cluster_bound() const {
  int c = 0;
  for (const auto& layer : layers) {
    if (const auto* p = std::get_if<ParallelLayer>(&layer)) {
      for (const auto& cl : p->clusters) c = std::max(c, static_cast<int>(cl.size()));
    } else {
      c = std::max(c, 2);
    }
  }
  return c;
}

std::vector<Violation> validate(const ArchitectureSpec& spec) {
  std::vector<Violation> out;
  if (spec.n < 1) out.push_back({"/n", "n must be >= 1"});
  if (spec.q < 2) out.push_back({"/q", "q must be >= 2"});
  if (spec.layers.empty()) out.push_back({"/layers", "at least one layer required"});
  const int n = std::max(spec.n, 0);
  std::vector<char> covered(static_cast<std::size_t>(n), 0);
  for (std::size_t l = 0; l < spec.layers.size(); ++l) {
    const std::string lp = layer_path(l);
    if (const auto* par = std::get_if<ParallelLayer>(&spec.layers[l])) {
      if (par->clusters.empty()) out.push_back({lp + "/clusters", "parallel layer has no clusters"});
      std::vector<int> owner(static_cast<std::size_t>(n), -1);
      for (std::size_t c = 0; c < par->clusters.size(); ++c) {
        const auto& cl = par->clusters[c];
        const std::string cp = lp + "/clusters/" + std::to_string(c);
        if (cl.size() < 2) out.push_back({cp, "cluster size must be >= 2"});
        std::set<int> seen;
        for (std::size_t s = 0; s < cl.size(); ++s) {
          const int site = cl[s];
          const std::string sp = cp + "/" + std::to_string(s);
          if (site < 0 || site >= n) {
            out.push_back({sp, "site " + std::to_string(site) + " out of range"});
            continue;
          }
          if (!seen.insert(site).second) {
            out.push_back({sp, "duplicate site " + std::to_string(site) + " in cluster"});
            continue;
          }
          if (owner[site] >= 0) {
            out.push_back({sp, "site " + std::to_string(site) + " also in cluster " + std::to_string(owner[site]) +
                                   " of the same layer"});
          }
          owner[site] = static_cast<int>(c);
          covered[site] = 1;
        }
      }
    } else {
      const auto& un = std::get<UnstructuredLayer>(spec.layers[l]);
      if (un.edges.empty()) out.push_back({lp + "/edges", "unstructured layer has no edges"});
      double total = 0.0;
      for (std::size_t e = 0; e < un.edges.size(); ++e) {
        const auto& ed = un.edges[e];
        const std::string ep = lp + "/edges/" + std::to_string(e);
        bool ok = true;
        if (ed.i < 0 || ed.i >= n || ed.j < 0 || ed.j >= n) {
          out.push_back({ep, "endpoint out of range"});
          ok = false;
        } else if (ed.i == ed.j) {
          out.push_back({ep, "self-loop"});
          ok = false;
        }
        if (!(ed.p >= 0.0)) out.push_back({ep + "/2", "probability must be >= 0"});
        if (ed.tag != "haar" && ed.tag != "identity") out.push_back({ep + "/3", "unknown measure tag " + ed.tag});
        total += ed.p;
        if (ok) covered[ed.i] = covered[ed.j] = 1;
      }
      if (!un.edges.empty() && std::abs(total - 1.0) > 1e-9) {
        out.push_back({lp + "/edges", "probabilities sum to " + std::to_string(total) + ", not 1"});
      }
    }
  }
  for (int s = 0; s < n; ++s) {
    if (!covered[s] && !spec.layers.empty()) out.push_back({"/layers", "site " + std::to_string(s) + " is in no cluster"});
  }
  return out;
}

ArchitectureSpec brickwork(int n, int q) {
  if (n < 3) throw std::invalid_argument("brickwork: n must be >= 3");
  if (q < 2) throw std::invalid_argument("brickwork: q must be >= 2");
  ParallelLayer first;
  ParallelLayer second;
  for (int i = 0; i + 1 < n; i += 2) first.clusters.push_back({i, i + 1});
  for (int i = 1; i + 1 < n; i += 2) second.clusters.push_back({i, i + 1});
  ArchitectureSpec spec;
  spec.n = n;
  spec.q = q;
  spec.layers = {first, second};
  spec.family = ArchFamily::kBrickwork;
  return spec;
}

ArchitectureSpec lattice(int dim, int side, int q) {
  if (dim < 1) throw std::invalid_argument("lattice: D must be >= 1");
  if (side < 4 || side % 2 != 0) throw std::invalid_argument("lattice: side must be even and >= 4");
  if (q < 2) throw std::invalid_argument("lattice: q must be >= 2");
  double sites = std::pow(static_cast<double>(side), dim);
  if (sites > 1e7) throw std::invalid_argument("lattice: too many sites");
  ParallelLayer first;
  ParallelLayer second;
  for (const auto& c : corners(dim, side, 0)) first.clusters.push_back(hypercube_sites(c, side));
  for (const auto& c : corners(dim, side, 1)) second.clusters.push_back(hypercube_sites(c, side));
  ArchitectureSpec spec;
  spec.n = static_cast<int>(sites);
  spec.q = q;
  spec.layers = {first, second};
  spec.family = ArchFamily::kLattice;
  spec.lattice_dim = dim;
  spec.lattice_side = side;
  return spec;
}

ArchitectureSpec unstructured_layer(const std::vector<EdgeWeight>& edges, int n, int q) {
  if (n < 2) throw std::invalid_argument("unstructured_layer: n must be >= 2");
  if (q < 2) throw std::invalid_argument("unstructured_layer: q must be >= 2");
  double total = 0.0;
  for (const auto& e : edges) {
    if (!(e.w >= 0.0)) throw std::invalid_argument("unstructured_layer: negative weight");
    if (e.i < 0 || e.j < 0 || e.i >= n || e.j >= n || e.i == e.j) {
      throw std::invalid_argument("unstructured_layer: bad edge endpoints");
    }
    total += e.w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("unstructured_layer: all weights are zero");
  UnstructuredLayer layer;
  for (const auto& e : edges) {
    if (e.w > 0.0) layer.edges.push_back({e.i, e.j, e.w / total, "haar"});
  }
  ArchitectureSpec spec;
  spec.n = n;
  spec.q = q;
  spec.layers = {layer};
  return spec;
}

bool edges_connected(const UnstructuredLayer& layer, int n) {
  return n >= 1 && component_count(edge_adjacency(layer, n)) == 1;
}

int max_degree(const UnstructuredLayer& layer, int n) {
  int best = 0;
  for (const auto& a : edge_adjacency(layer, n)) best = std::max(best, static_cast<int>(a.size()));
  return best;
}

std::vector<UnstructuredLayer> spurious_circuit(int n, int m_layers, double alpha, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("spurious_circuit: n must be >= 2");
  if (m_layers < 0) throw std::invalid_argument("spurious_circuit: negative layer count");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("spurious_circuit: alpha outside [0, 1]");
  std::vector<UnstructuredLayer> out(static_cast<std::size_t>(m_layers));
  const double p = 1.0 / (n - 1);
  for (int l = 0; l < m_layers; ++l) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(l)));
    std::bernoulli_distribution coin(alpha);
    auto& layer = out[l];
    layer.realized = true;
    for (int i = 0; i + 1 < n; ++i) layer.edges.push_back({i, i + 1, p, coin(rng) ? "haar" : "identity"});
  }
  return out;
}

bool ClusterGraph::adjacent(int a, int b) const {
  const auto& nb = adjacency.at(static_cast<std::size_t>(a));
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::size_t ClusterGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& a : adjacency) total += a.size();
  return total / 2;
}

ClusterGraph cluster_graph(const ArchitectureSpec& spec) {
  ClusterGraph g;
  g.n_sites = spec.n;
  g.family = spec.family;
  g.lattice_dim = spec.lattice_dim;
  g.lattice_side = spec.lattice_side;
  g.site_map.assign(static_cast<std::size_t>(std::max(spec.n, 0)), {});
  int parallel_index = 0;
  for (const auto& layer : spec.layers) {
    const auto* par = std::get_if<ParallelLayer>(&layer);
    if (!par) continue;
    for (std::size_t c = 0; c < par->clusters.size(); ++c) {
      ClusterNode node{parallel_index, static_cast<int>(c), par->clusters[c]};
      std::sort(node.sites.begin(), node.sites.end());
      const int id = static_cast<int>(g.nodes.size());
      for (int s : node.sites) {
        if (s < 0 || s >= spec.n) throw std::invalid_argument("cluster_graph: site out of range");
        g.site_map[s].push_back(id);
      }
      g.nodes.push_back(std::move(node));
    }
    ++parallel_index;
  }
  if (parallel_index == 0) throw std::invalid_argument("cluster_graph: spec has no parallel layer");
  g.adjacency.assign(g.nodes.size(), {});
  for (const auto& holders : g.site_map) {
    for (std::size_t a = 0; a < holders.size(); ++a) {
      for (std::size_t b = a + 1; b < holders.size(); ++b) {
        g.adjacency[holders[a]].push_back(holders[b]);
        g.adjacency[holders[b]].push_back(holders[a]);
      }
    }
  }
  for (auto& a : g.adjacency) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  g.connected = !g.nodes.empty() && component_count(g.adjacency) == 1;
  g.bipartite = two_colorable(g.adjacency);
  return g;
}

std::string to_string(PathStatus s) {
  switch (s) {
    case PathStatus::kFound:
      return "found";
    case PathStatus::kNoPath:
      return "no_path";
    case PathStatus::kBudgetExhausted:
      return "budget_exhausted";
  }
  return "unknown";
}

bool is_hamiltonian_path(const ClusterGraph& g, const std::vector<int>& path, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (path.size() != g.size()) return fail("path length differs from node count");
  std::vector<char> seen(g.size(), 0);
  for (std::size_t i = 0; i < path.size(); ++i) {
    const int v = path[i];
    if (v < 0 || static_cast<std::size_t>(v) >= g.size()) return fail("node id out of range");
    if (seen[v]) return fail("node " + std::to_string(v) + " visited twice");
    seen[v] = 1;
    if (i > 0) {
      const int u = path[i - 1];
      // Adjacency re-derived from site overlap, not from the stored lists.
      const auto& a = g.nodes[u].sites;
      const auto& b = g.nodes[v].sites;
      std::vector<int> common;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
      if (common.empty()) return fail("nodes " + std::to_string(u) + " and " + std::to_string(v) + " do not overlap");
    }
  }
  return true;
}

namespace {

// Alternating first/second-layer order used by brickwork and lattice, whose
// generators list layer-2 cluster i next to layer-1 cluster i.
std::vector<int> family_path(const ClusterGraph& g) {
  std::vector<int> first;
  std::vector<int> second;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (g.nodes[v].layer == 0) first.push_back(static_cast<int>(v));
    else if (g.nodes[v].layer == 1) second.push_back(static_cast<int>(v));
    else return {};
  }
  std::vector<int> path;
  for (std::size_t i = 0; i < first.size(); ++i) {
    path.push_back(first[i]);
    if (i < second.size()) path.push_back(second[i]);
  }
  for (std::size_t i = first.size(); i < second.size(); ++i) path.push_back(second[i]);
  return path;
}

struct Search {
  const ClusterGraph& g;
  std::size_t budget;
  std::size_t expansions = 0;
  bool exhausted = false;
  std::vector<char> used;
  std::vector<int> path;

  bool extend() {
    if (path.size() == g.size()) return true;
    const int v = path.back();
    std::vector<std::pair<int, int>> options;
    for (int w : g.adjacency[v]) {
      if (used[w]) continue;
      int free_deg = 0;
      for (int x : g.adjacency[w]) free_deg += used[x] ? 0 : 1;
      options.emplace_back(free_deg, w);
    }
    std::sort(options.begin(), options.end());
    for (const auto& [deg, w] : options) {
      if (++expansions > budget) {
        exhausted = true;
        return false;
      }
      used[w] = 1;
      path.push_back(w);
      if (extend()) return true;
      path.pop_back();
      used[w] = 0;
      if (exhausted) return false;
    }
    return false;
  }
};

}  // namespace

HamiltonianResult hamiltonian_path(const ClusterGraph& g, std::size_t budget) {
  HamiltonianResult out;
  if (g.size() == 0) {
    out.reason = "empty graph";
    return out;
  }
  if (g.family != ArchFamily::kGeneric) {
    auto path = family_path(g);
    if (is_hamiltonian_path(g, path)) {
      out.status = PathStatus::kFound;
      out.path = std::move(path);
      out.reason = "constructive";
      return out;
    }
  }
  if (component_count(g.adjacency) != 1) {
    out.reason = "graph is disconnected";
    return out;
  }
  int leaves = 0;
  for (const auto& a : g.adjacency) leaves += a.size() <= 1 ? 1 : 0;
  if (g.size() > 1 && leaves > 2) {
    out.reason = "more than two nodes of degree one";
    return out;
  }
  std::vector<int> starts(g.size());
  std::iota(starts.begin(), starts.end(), 0);
  std::stable_sort(starts.begin(), starts.end(),
                   [&](int a, int b) { return g.adjacency[a].size() < g.adjacency[b].size(); });
  Search s{g, budget, 0, false, {}, {}};
  s.used.assign(g.size(), 0);
  for (int start : starts) {
    s.used[start] = 1;
    s.path = {start};
    ++s.expansions;
    if (s.extend()) {
      out.status = PathStatus::kFound;
      out.path = s.path;
      out.expansions = s.expansions;
      out.reason = "search";
      return out;
    }
    s.used[start] = 0;
    if (s.exhausted || s.expansions > budget) {
      out.status = PathStatus::kBudgetExhausted;
      out.expansions = s.expansions;
      out.reason = "expansion budget of " + std::to_string(budget) + " exhausted";
      return out;
    }
  }
  out.expansions = s.expansions;
  out.reason = "exhaustive search found no path";
  return out;
}

namespace {

struct Partition {
  std::vector<Chunk> chunks;
  std::vector<int> missing;
  int merged_gap = -1;
};

Partition split_at(const ClusterGraph& g, const std::vector<int>& path, const std::vector<int>& gaps, int role_parity,
                   int r) {
  const int len = static_cast<int>(path.size());
  Partition part;
  std::vector<char> is_gap(static_cast<std::size_t>(len), 0);
  for (int p : gaps) is_gap[p] = 1;
  int p = 0;
  while (p < len) {
    if (is_gap[p]) {
      part.missing.push_back(p);
      ++p;
      continue;
    }
    Chunk c;
    c.begin = p;
    while (p < len && !is_gap[p]) {
      c.role_nodes += (p % 2 == role_parity) ? 1 : 0;
      ++p;
    }
    c.end = p;
    part.chunks.push_back(c);
  }
  if (part.chunks.size() >= 2 && part.chunks.back().role_nodes < r / 2) {
    Chunk last = part.chunks.back();
    part.chunks.pop_back();
    Chunk& prev = part.chunks.back();
    part.merged_gap = prev.end;
    part.missing.erase(std::remove(part.missing.begin(), part.missing.end(), prev.end), part.missing.end());
    prev.role_nodes += last.role_nodes + ((prev.end % 2 == role_parity) ? 1 : 0);
    prev.end = last.end;
    prev.merged_tail = true;
  }
  for (auto& c : part.chunks) {
    std::set<int> sites;
    for (int q = c.begin; q < c.end; ++q) sites.insert(g.nodes[path[q]].sites.begin(), g.nodes[path[q]].sites.end());
    c.sites.assign(sites.begin(), sites.end());
  }
  return part;
}

// Closed-form gap predicates, written in role indices.
bool p1_gap(int pos, int r) {
  if (pos % 2 == 0) return false;
  const int j = (pos + 1) / 2;
  return j % r == 0;
}

bool p2_gap(int pos, int r) {
  if (pos % 2 != 0) return false;
  const int j = pos / 2 + 1;
  return j >= 3 * r / 2 + 1 && (j - (3 * r / 2 + 1)) % r == 0;
}

bool closed_form_matches(const Partition& part, int len, bool (*pred)(int, int), int r) {
  std::vector<char> covered(static_cast<std::size_t>(len), 0);
  for (const auto& c : part.chunks) {
    for (int p = c.begin; p < c.end; ++p) {
      if (covered[p]) return false;
      covered[p] = 1;
    }
  }
  std::vector<char> missing(static_cast<std::size_t>(len), 0);
  for (int p : part.missing) {
    if (covered[p]) return false;
    missing[p] = 1;
  }
  for (int p = 0; p < len; ++p) {
    if (!covered[p] && !missing[p]) return false;
    const bool expected = pred(p, r) && p != part.merged_gap;
    if (expected != static_cast<bool>(missing[p])) return false;
  }
  return true;
}

}  // namespace

PathPlan chunk_partitions(const ClusterGraph& g, const std::vector<int>& path, int r) {
  if (r < 2 || r % 2 != 0) throw std::invalid_argument("chunk_partitions: r must be even and >= 2");
  if (path.empty()) throw std::invalid_argument("chunk_partitions: empty path");
  std::vector<char> seen(g.size(), 0);
  for (std::size_t i = 0; i < path.size(); ++i) {
    const int v = path[i];
    if (v < 0 || static_cast<std::size_t>(v) >= g.size() || seen[v]) {
      throw std::invalid_argument("chunk_partitions: malformed path");
    }
    seen[v] = 1;
    if (i > 0 && g.nodes[v].layer == g.nodes[path[i - 1]].layer) {
      throw std::invalid_argument("chunk_partitions: path does not alternate layers");
    }
  }
  const int len = static_cast<int>(path.size());
  PathPlan plan;
  plan.path = path;
  plan.r = r;
  plan.r_valid = 4 * r < g.n_sites;

  std::vector<int> gaps1;
  for (int m = 1; layer2_position(m * r) < len; ++m) gaps1.push_back(layer2_position(m * r));
  std::vector<int> gaps2;
  for (int m = 0; layer1_position(3 * r / 2 + 1 + m * r) < len; ++m) gaps2.push_back(layer1_position(3 * r / 2 + 1 + m * r));

  const Partition a = split_at(g, path, gaps1, 0, r);
  const Partition b = split_at(g, path, gaps2, 1, r);
  plan.p1 = a.chunks;
  plan.p2 = b.chunks;
  plan.p1_missing = a.missing;
  plan.p2_missing = b.missing;

  int min_overlap = -1;
  for (const auto& c1 : plan.p1) {
    for (const auto& c2 : plan.p2) {
      if (c1.end <= c2.begin || c2.end <= c1.begin) continue;
      std::vector<int> common;
      std::set_intersection(c1.sites.begin(), c1.sites.end(), c2.sites.begin(), c2.sites.end(),
                            std::back_inserter(common));
      const int o = static_cast<int>(common.size());
      min_overlap = min_overlap < 0 ? o : std::min(min_overlap, o);
    }
  }
  plan.min_overlap = std::max(min_overlap, 0);
  plan.observation1 = min_overlap >= r - 1;
  plan.observation2 = true;
  for (const auto* part : {&plan.p1, &plan.p2}) {
    for (const auto& c : *part) plan.observation2 = plan.observation2 && c.role_nodes <= 3 * r / 2;
  }
  plan.observation3 = closed_form_matches(a, len, p1_gap, r) && closed_form_matches(b, len, p2_gap, r);
  return plan;
}

}  // namespace qdecay
