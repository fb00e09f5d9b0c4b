#include "qdecay/arch_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qdecay {

namespace {

using nlohmann::json;

bool read_int(const json& j, const std::string& path, int& out, std::vector<Violation>& v) {
  if (!j.is_number_integer()) {
    v.push_back({path, "expected an integer"});
    return false;
  }
  out = j.get<int>();
  return true;
}

void parse_parallel(const json& layer, const std::string& lp, ParallelLayer& out, std::vector<Violation>& v) {
  if (!layer.contains("clusters") || !layer["clusters"].is_array()) {
    v.push_back({lp + "/clusters", "expected an array of clusters"});
    return;
  }
  const auto& clusters = layer["clusters"];
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const std::string cp = lp + "/clusters/" + std::to_string(c);
    if (!clusters[c].is_array()) {
      v.push_back({cp, "expected an array of sites"});
      continue;
    }
    std::vector<int> sites;
    for (std::size_t s = 0; s < clusters[c].size(); ++s) {
      int site = 0;
      if (read_int(clusters[c][s], cp + "/" + std::to_string(s), site, v)) sites.push_back(site);
    }
    out.clusters.push_back(std::move(sites));
  }
}

void parse_unstructured(const json& layer, const std::string& lp, UnstructuredLayer& out, std::vector<Violation>& v) {
  if (!layer.contains("edges") || !layer["edges"].is_array()) {
    v.push_back({lp + "/edges", "expected an array of edges"});
    return;
  }
  if (layer.contains("realized")) {
    if (!layer["realized"].is_boolean()) v.push_back({lp + "/realized", "expected a boolean"});
    else out.realized = layer["realized"].get<bool>();
  }
  const auto& edges = layer["edges"];
  double total = 0.0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::string ep = lp + "/edges/" + std::to_string(e);
    const auto& ed = edges[e];
    if (!ed.is_array() || ed.size() < 3 || ed.size() > 4) {
      v.push_back({ep, "expected [i, j, weight] or [i, j, weight, tag]"});
      continue;
    }
    WeightedEdge w;
    bool ok = read_int(ed[0], ep + "/0", w.i, v);
    ok = read_int(ed[1], ep + "/1", w.j, v) && ok;
    if (!ed[2].is_number()) {
      v.push_back({ep + "/2", "expected a number"});
      ok = false;
    } else {
      w.p = ed[2].get<double>();
      if (!(w.p >= 0.0)) {
        v.push_back({ep + "/2", "weight must be >= 0"});
        ok = false;
      }
    }
    if (ed.size() == 4) {
      if (!ed[3].is_string()) {
        v.push_back({ep + "/3", "expected a measure tag string"});
        ok = false;
      } else {
        w.tag = ed[3].get<std::string>();
      }
    }
    if (!ok) continue;
    total += w.p;
    if (w.p > 0.0 || out.realized) out.edges.push_back(w);
  }
  if (!(total > 0.0)) {
    v.push_back({lp + "/edges", "weights are all zero"});
    return;
  }
  for (auto& w : out.edges) w.p /= total;
}

}  // namespace

ArchLoadResult parse_architecture(const std::string& text) {
  ArchLoadResult res;
  auto& v = res.violations;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    v.push_back({"", std::string("invalid JSON: ") + e.what()});
    return res;
  }
  if (!doc.is_object()) {
    v.push_back({"", "expected a JSON object"});
    return res;
  }
  ArchitectureSpec spec;
  if (!doc.contains("n")) v.push_back({"/n", "missing"});
  else read_int(doc["n"], "/n", spec.n, v);
  if (!doc.contains("q")) v.push_back({"/q", "missing"});
  else read_int(doc["q"], "/q", spec.q, v);
  if (!doc.contains("layers") || !doc["layers"].is_array()) {
    v.push_back({"/layers", "expected an array of layers"});
    return res;
  }
  const auto& layers = doc["layers"];
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const std::string lp = "/layers/" + std::to_string(l);
    const auto& layer = layers[l];
    if (!layer.is_object() || !layer.contains("type") || !layer["type"].is_string()) {
      v.push_back({lp + "/type", "expected \"parallel\" or \"unstructured\""});
      continue;
    }
    const auto type = layer["type"].get<std::string>();
    if (type == "parallel") {
      ParallelLayer p;
      parse_parallel(layer, lp, p, v);
      spec.layers.emplace_back(std::move(p));
    } else if (type == "unstructured") {
      UnstructuredLayer u;
      parse_unstructured(layer, lp, u, v);
      spec.layers.emplace_back(std::move(u));
    } else {
      v.push_back({lp + "/type", "unknown layer type \"" + type + "\""});
    }
  }
  if (!v.empty()) return res;
  v = validate(spec);
  if (v.empty()) res.spec = std::move(spec);
  return res;
}

ArchLoadResult load_architecture(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    ArchLoadResult res;
    res.violations.push_back({"", "cannot open " + path});
    return res;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_architecture(buf.str());
}

std::string dump_architecture(const ArchitectureSpec& spec, int indent) {
  json doc;
  doc["n"] = spec.n;
  doc["q"] = spec.q;
  doc["layers"] = json::array();
  for (const auto& layer : spec.layers) {
    json jl;
    if (const auto* p = std::get_if<ParallelLayer>(&layer)) {
      jl["type"] = "parallel";
      jl["clusters"] = p->clusters;
    } else {
      const auto& u = std::get<UnstructuredLayer>(layer);
      jl["type"] = "unstructured";
      jl["edges"] = json::array();
      for (const auto& e : u.edges) {
        json je = json::array({e.i, e.j, e.p});
        if (e.tag != "haar") je.push_back(e.tag);
        jl["edges"].push_back(je);
      }
      if (u.realized) jl["realized"] = true;
    }
    doc["layers"].push_back(jl);
  }
  return doc.dump(indent);
}

void save_architecture(const ArchitectureSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << dump_architecture(spec) << "\n";
}

}  // namespace qdecay
