#include <set>

#include "doctest.h"
#include "oracle_values.hpp"
#include "qdecay/arch.hpp"
#include "qdecay/arch_io.hpp"

using namespace qdecay;

TEST_SUITE("arch") {
  TEST_CASE("brickwork layers") {
    const ArchitectureSpec b = brickwork(4, 2);
    REQUIRE(b.layers.size() == 2);
    const auto& l1 = std::get<ParallelLayer>(b.layers[0]).clusters;
    const auto& l2 = std::get<ParallelLayer>(b.layers[1]).clusters;
    CHECK(l1 == std::vector<std::vector<int>>{{0, 1}, {2, 3}});
    CHECK(l2 == std::vector<std::vector<int>>{{1, 2}});
    CHECK(validate(b).empty());
    CHECK(b.cluster_bound() == 2);
  }

  TEST_CASE("2D lattice groups fours with a shifted second layer") {
    const ArchitectureSpec l = lattice(2, 4, 2);
    CHECK(validate(l).empty());
    const auto& l1 = std::get<ParallelLayer>(l.layers[0]).clusters;
    const auto& l2 = std::get<ParallelLayer>(l.layers[1]).clusters;
    CHECK(l1.size() == 4);
    CHECK(l2.size() == 4);
    for (const auto& c : l1) CHECK(c.size() == 4);
    // Second-layer cluster containing site (1,1) also holds (2,1), (1,2), (2,2).
    bool found = false;
    for (const auto& c : l2) {
      std::set<int> s(c.begin(), c.end());
      if (s == std::set<int>{1 + 4, 2 + 4, 1 + 8, 2 + 8}) found = true;
    }
    CHECK(found);
  }

  TEST_CASE("validation reports paths") {
    ArchitectureSpec s = brickwork(4, 2);
    std::get<ParallelLayer>(s.layers[0]).clusters[1] = {1, 3};
    const auto v = validate(s);
    REQUIRE_FALSE(v.empty());
    bool overlap = false;
    for (const auto& x : v) overlap = overlap || x.path.rfind("/layers/0", 0) == 0;
    CHECK(overlap);
  }

  TEST_CASE("cluster graphs") {
    const ClusterGraph g = cluster_graph(brickwork(6, 2));
    CHECK(g.size() == 5);
    CHECK(g.edge_count() == 4);
    CHECK(g.connected);
    CHECK(g.bipartite);
    const ClusterGraph l = cluster_graph(lattice(2, 4, 2));
    CHECK(l.connected);
    CHECK(l.bipartite);
    const HamiltonianResult h = hamiltonian_path(l);
    REQUIRE(h.status == PathStatus::kFound);
    CHECK(h.path.size() == 8);
    std::string why;
    CHECK_MESSAGE(is_hamiltonian_path(l, h.path, &why), why);
  }

  TEST_CASE("Hamiltonian paths on generic specs use search") {
    ArchitectureSpec star;
    star.n = 4;
    star.layers = {ParallelLayer{{{0, 1}, {2, 3}}}, ParallelLayer{{{1, 2}}}, ParallelLayer{{{0, 3}}}};
    const ClusterGraph g = cluster_graph(star);
    const HamiltonianResult h = hamiltonian_path(g);
    CHECK(h.status == PathStatus::kFound);
    CHECK(is_hamiltonian_path(g, h.path));
    ArchitectureSpec split;
    split.n = 4;
    split.layers = {ParallelLayer{{{0, 1}, {2, 3}}}};
    CHECK(hamiltonian_path(cluster_graph(split)).status == PathStatus::kNoPath);
    CHECK_FALSE(is_hamiltonian_path(g, {0, 0, 1, 2}));
  }

  TEST_CASE("chunk partitions on brickwork(16), r = 2") {
    const ClusterGraph g = cluster_graph(brickwork(16, 2));
    const PathPlan plan = chunk_partitions(g, hamiltonian_path(g).path, 2);
    CHECK(plan.observation3);
    // P1 skips x^(2)_2, x^(2)_4, ...
    std::vector<int> expect;
    for (int j = 2; layer2_position(j) < static_cast<int>(plan.path.size()); j += 2) expect.push_back(layer2_position(j));
    CHECK(plan.p1_missing == expect);
    CHECK_THROWS_AS(chunk_partitions(g, plan.path, 3), std::invalid_argument);
  }

  TEST_CASE("chunk overlaps on brickwork(20), r = 4") {
    const ClusterGraph g = cluster_graph(brickwork(20, 2));
    const PathPlan plan = chunk_partitions(g, hamiltonian_path(g).path, 4);
    CHECK(plan.min_overlap >= 3);
    CHECK(plan.observation1);
    CHECK(plan.observation2);
    CHECK(plan.observation3);
  }

  TEST_CASE("unstructured layers") {
    const ArchitectureSpec u = unstructured_layer({{0, 1, 2.0}, {1, 2, 2.0}, {0, 2, 0.0}}, 3, 2);
    const auto& layer = std::get<UnstructuredLayer>(u.layers[0]);
    CHECK(layer.edges.size() == 2);
    CHECK(layer.edges[0].p == doctest::Approx(0.5));
    CHECK(edges_connected(layer, 3));
    CHECK(max_degree(layer, 3) == 2);
    CHECK_THROWS_AS(unstructured_layer({{0, 1, -1.0}}, 2, 2), std::invalid_argument);
  }

  TEST_CASE("spurious circuit gate count within 5 sigma of binomial") {
    const auto layers = spurious_circuit(100, 50, 0.1, 2024);
    int random_gates = 0;
    for (const auto& l : layers) {
      CHECK(l.realized);
      for (const auto& e : l.edges) random_gates += e.tag == "haar" ? 1 : 0;
    }
    CHECK(std::abs(random_gates - oracle::kSpuriousMean_100_50) <= 5.0 * oracle::kSpuriousSd_100_50);
  }

  TEST_CASE("architecture files round-trip") {
    for (const ArchitectureSpec& s : {brickwork(5, 3), lattice(2, 4, 2)}) {
      const auto back = parse_architecture(dump_architecture(s));
      REQUIRE(back.spec.has_value());
      CHECK(dump_architecture(*back.spec) == dump_architecture(s));
    }
    ArchitectureSpec sp;
    sp.n = 6;
    for (auto& l : spurious_circuit(6, 3, 0.5, 1)) sp.layers.emplace_back(l);
    const auto back = parse_architecture(dump_architecture(sp));
    REQUIRE(back.spec.has_value());
    CHECK(dump_architecture(*back.spec) == dump_architecture(sp));
  }

  TEST_CASE("malformed architecture files") {
    CHECK_FALSE(parse_architecture("not json").spec.has_value());
    const auto r = parse_architecture(R"({"n": 3, "q": 2, "layers": [{"type": "parallel", "clusters": [[0, 5]]}]})");
    REQUIRE_FALSE(r.spec.has_value());
    CHECK(r.violations.front().path.rfind("/layers/0", 0) == 0);
    const auto w = parse_architecture(R"({"n": 2, "q": 2, "layers": [{"type": "unstructured", "edges": [[0, 1, 3]]}]})");
    REQUIRE(w.spec.has_value());
    CHECK(std::get<UnstructuredLayer>(w.spec->layers[0]).edges[0].p == doctest::Approx(1.0));
  }
}
