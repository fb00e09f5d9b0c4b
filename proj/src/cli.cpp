#include "qdecay/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdecay/arch.hpp"
#include "qdecay/arch_io.hpp"
#include "qdecay/bounds.hpp"
#include "qdecay/entropy.hpp"
#include "qdecay/moments.hpp"
#include "qdecay/parallel.hpp"
#include "qdecay/simulation.hpp"
#include "qdecay/verify.hpp"

namespace qdecay {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

// ---------------------------------------------------------------- bound

struct BoundArgs {
  std::string formula;
  std::map<std::string, double> num;
  std::vector<double> dims;
  std::vector<double> lambdas;
  std::string variant = "as_stated";
  std::string log = "natural";
  std::vector<std::string> sweeps;
  std::string out;
  std::string format = "json";
  bool connected = false;
  bool connected_set = false;

  double get(const std::string& name) const {
    const auto it = num.find(name);
    if (it == num.end() || std::isnan(it->second)) throw UsageError("missing required option --" + name);
    return it->second;
  }
  double get_or(const std::string& name, double fallback) const {
    const auto it = num.find(name);
    return it == num.end() || std::isnan(it->second) ? fallback : it->second;
  }
  int get_int(const std::string& name) const {
    const double v = get(name);
    if (v != std::round(v)) throw UsageError("--" + name + " must be an integer");
    return static_cast<int>(v);
  }
};

BoundReport entropy_report(const std::string& id, std::vector<std::pair<std::string, double>> inputs,
                           std::vector<std::pair<std::string, double>> values, std::vector<ValidityFlag> flags) {
  BoundReport r;
  r.formula_id = id;
  r.inputs = std::move(inputs);
  r.values = std::move(values);
  r.validity = std::move(flags);
  return r;
}

BoundReport compute_bound(const BoundArgs& a) {
  const std::string& f = a.formula;
  const Variant variant = parse_variant(a.variant);
  if (f == "glue") return glue_error(a.get("eps1"), a.get("eps2"), a.get_int("k"), a.get("dimB"));
  if (f == "glue-chain") {
    if (a.dims.empty() && a.num.count("dims") == 0) return glue_chain({}, a.get_int("k"));
    return glue_chain(a.dims, a.get_int("k"));
  }
  if (f == "parallel-r") return parallel_r(a.get_int("q"), a.get_int("k"), a.get("n"), a.get("eps"), variant);
  if (f == "parallel-delta") return parallel_delta(a.get_int("q"), a.get_int("k"), a.get("n"), a.get_int("r"), variant);
  if (f == "parallel-lambda") return parallel_lambda(a.get_int("q"), a.get_int("k"), a.get("n"), a.get("Ck"));
  if (f == "c-qk") {
    CqkMode mode;
    mode.log = parse_log_convention(a.log);
    if (!std::isnan(a.get_or("override", kUnset))) {
      mode.user_override = true;
      mode.override_value = a.get("override");
    }
    return c_qk(a.get_int("q"), a.get_int("k"), mode);
  }
  if (f == "parallel-depth") {
    return parallel_depth(a.get_int("q"), a.get_int("k"), a.get("n"), a.get("eps"), a.get_int("ell"), a.get("C"));
  }
  if (f == "tree-lambda") {
    return tree_lambda(a.get_int("q"), a.get_int("k"), a.get("n"), a.get_int("ell"), a.get("eps-prime"),
                       a.get("min-p-lambda"), a.get("C"));
  }
  if (f == "random-graph-lambda") {
    std::optional<bool> connected;
    if (a.connected_set) connected = a.connected;
    return random_graph_lambda(a.get_int("q"), a.get_int("k"), a.get("n"), a.get_int("ell"), a.get("eps"),
                               a.get("min-p-lambda"), a.get("C"), variant, connected);
  }
  if (f == "complete-graph-lambda") {
    return complete_graph_lambda(a.get_int("q"), a.get_int("k"), a.get_int("n"), a.get("eps"),
                                 a.get_or("local-lambda", 1.0), a.get("C"), variant);
  }
  if (f == "compose-sdpi") {
    if (a.lambdas.empty()) throw UsageError("missing required option --lambdas");
    return compose_sdpi(a.lambdas, a.get("eps"), a.get("delta"));
  }
  if (f == "brickwork-lambda") return brickwork_lambda(a.get("n"), a.get_int("k"), a.get_or("prefactor", 1.0));
  if (f == "beta") {
    const double eps = a.get("eps");
    const double delta = a.get("delta");
    const bool ok = eps >= 0.0 && eps < 1.0 && delta >= 0.0 && delta < 1.0;
    if (!ok) {
      return entropy_report("beta", {{"eps", eps}, {"delta", delta}}, {{"beta", kUnset}},
                            {{"eps, delta in [0, 1)", Validity::kFailed, true}});
    }
    const BetaParams b = beta(eps, delta);
    auto r = entropy_report("beta", {{"eps", eps}, {"delta", delta}},
                            {{"beta", b.beta}, {"general", b.general}, {"equal_eps", b.equal_eps},
                             {"linear_bound", b.linear_bound}},
                            {{"eps, delta in [0, 1)", Validity::kOk, true}});
    r.notes.push_back("variant: " + to_string(b.variant));
    return r;
  }
  if (f == "additive-depth") {
    const double lambda = a.get("lambda");
    const double eps = a.get("eps");
    const bool ok = lambda > 0.0 && eps > 0.0 && eps < 1.0;
    const double t = ok ? static_cast<double>(additive_depth(lambda, a.get_int("n"), a.get_int("k"), a.get_int("q"), eps))
                        : kUnset;
    return entropy_report("additive_depth",
                          {{"lambda", lambda}, {"n", a.get("n")}, {"k", a.get("k")}, {"q", a.get("q")}, {"eps", eps}},
                          {{"t", t}}, {{"lambda > 0, eps in (0, 1)", ok ? Validity::kOk : Validity::kFailed, true}});
  }
  if (f == "continuity") {
    const double eps = a.get("eps");
    const double sup_d = a.get("sup-d");
    const bool ok = eps >= 0.0 && eps <= 1.0 && sup_d >= 0.0;
    return entropy_report("continuity_bound", {{"eps", eps}, {"sup_d", sup_d}},
                          {{"bound", ok ? continuity_bound(eps, sup_d) : kUnset}},
                          {{"eps in [0, 1], sup_d >= 0", ok ? Validity::kOk : Validity::kFailed, true}});
  }
  throw UsageError("unknown formula: " + f);
}

std::vector<double> sweep_values(const std::string& spec) {
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    std::stringstream ss(spec);
    std::string part;
    std::vector<double> p;
    while (std::getline(ss, part, ':')) p.push_back(std::stod(part));
    if (p.size() != 3 || !(p[2] > 0.0)) throw UsageError("sweep range must be start:stop:step with step > 0");
    for (double v = p[0]; v <= p[1] + 1e-12 * std::abs(p[1]); v += p[2]) out.push_back(v);
  } else {
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(std::stod(part));
  }
  if (out.empty()) throw UsageError("empty sweep");
  return out;
}

int cmd_bound(BoundArgs args, std::ostream& out, std::ostream& err) {
  std::vector<BoundArgs> grid{args};
  for (const auto& s : args.sweeps) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw UsageError("sweep must look like name=values");
    const std::string name = s.substr(0, eq);
    std::vector<double> values;
    try {
      values = sweep_values(s.substr(eq + 1));
    } catch (const std::invalid_argument&) {
      throw UsageError("bad sweep values in " + s);
    }
    std::vector<BoundArgs> next;
    for (const auto& g : grid) {
      for (double v : values) {
        BoundArgs c = g;
        c.num[name] = v;
        next.push_back(c);
      }
    }
    grid = std::move(next);
  }
  std::vector<BoundReport> reports;
  for (const auto& g : grid) {
    BoundReport r = compute_bound(g);
    if (const auto bad = r.failed_precondition()) {
      err << "error: precondition failed: " << *bad << "\n";
      return kExitUsage;
    }
    reports.push_back(std::move(r));
  }
  std::string text;
  if (args.format == "csv") {
    text = to_csv(reports);
  } else if (reports.size() == 1 && args.sweeps.empty()) {
    text = reports.front().to_json() + "\n";
  } else {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(nlohmann::ordered_json::parse(r.to_json()));
    text = arr.dump(2) + "\n";
  }
  emit(text, args.out, out);
  return kExitOk;
}

// ------------------------------------------------------------- simulate

struct SimArgs {
  std::string arch;
  std::string file;
  int n = 4;
  int q = 2;
  int k = 1;
  int layers = 20;
  int samples = 10;
  std::uint64_t seed = 0;
  double alpha = 0.1;
  int dim = 1;
  int side = 4;
  std::string base = "q";
  std::string out;
};

int cmd_simulate(const SimArgs& a, std::ostream& out) {
  if (a.layers < 1 || a.samples < 1) throw UsageError("--layers and --samples must be >= 1");
  if (a.k < 1 || a.k > twirl_k_cap()) throw UsageError("--k must lie in [1, " + std::to_string(twirl_k_cap()) + "]");
  ArchitectureSpec spec;
  std::vector<UnstructuredLayer> realized;
  if (a.arch == "brickwork") {
    spec = brickwork(a.n, a.q);
  } else if (a.arch == "lattice") {
    spec = lattice(a.dim, a.side, a.q);
  } else if (a.arch == "spurious") {
    spec.n = a.n;
    spec.q = a.q;
    realized = spurious_circuit(a.n, a.layers, a.alpha, derive_seed(a.seed, 0x5b0u));
  } else if (a.arch == "file") {
    if (a.file.empty()) throw UsageError("simulate file requires --file");
    auto loaded = load_architecture(a.file);
    if (!loaded.spec) {
      const auto& v = loaded.violations.front();
      throw UsageError("invalid architecture " + v.path + ": " + v.message);
    }
    spec = *loaded.spec;
  } else {
    throw UsageError("unknown architecture: " + a.arch);
  }
  // Dimension check before any channel is built.
  const double dim = std::pow(static_cast<double>(spec.q), static_cast<double>(spec.n) * a.k);
  if (dim > static_cast<double>(state_dim_cap())) {
    throw CapacityError("simulate: state dimension q^(n k) = " + std::to_string(static_cast<long double>(dim)),
                        static_cast<std::size_t>(std::min(dim, 1e18)), state_dim_cap());
  }
  const SiteLayout layout = spec.layout(a.k);
  const ChannelRep e = global_twirl(layout);
  std::vector<ChannelRep> steps;
  if (realized.empty()) {
    steps.push_back(architecture_channel(spec, a.k));
  } else {
    for (const auto& l : realized) steps.push_back(unstructured_layer_channel(l, layout));
  }
  TrajectoryOptions opts;
  opts.layers = a.layers;
  opts.samples = a.samples;
  opts.seed = a.seed;
  if (a.base == "q") opts.base = LogBase::of(spec.q);
  else if (a.base == "2") opts.base = LogBase::two();
  else if (a.base == "natural" || a.base == "e") opts.base = LogBase::natural();
  else throw UsageError("unknown --base " + a.base);
  const auto rows = entropy_trajectories(
      [&](int t) -> const ChannelRep& { return steps.size() == 1 ? steps.front() : steps.at(t - 1); }, e, opts);
  emit(trajectories_csv(rows), a.out, out);
  return kExitOk;
}

// --------------------------------------------------------------- verify

int cmd_verify(const std::string& suite, const VerifyOptions& opts, std::ostream& out) {
  std::vector<std::string> names;
  if (suite == "all") names = suite_names();
  else names = {suite};
  bool ok = true;
  for (const auto& name : names) {
    SuiteResult r;
    try {
      r = run_suite(name, opts);
    } catch (const std::invalid_argument& e) {
      if (std::string(e.what()).rfind("unknown suite", 0) == 0) throw UsageError(e.what());
      throw;
    }
    out << r.summary() << "\n";
    for (const auto& n : r.notes) out << "  " << n << "\n";
    ok = ok && r.passed;
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

// ----------------------------------------------------------------- arch

struct ArchArgs {
  std::string kind;
  std::string file;
  int n = 4;
  int q = 2;
  int dim = 1;
  int side = 4;
  int layers = 1;
  double alpha = 0.1;
  std::uint64_t seed = 0;
  std::string graph = "path";
  std::string edges;
  int r = 2;
  std::size_t budget = kDefaultPathBudget;
  std::string out;
};

std::vector<EdgeWeight> parse_edges(const std::string& text) {
  std::vector<EdgeWeight> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    EdgeWeight e;
    const auto dash = item.find('-');
    const auto colon = item.find(':');
    if (dash == std::string::npos) throw UsageError("edge must look like i-j or i-j:w, got " + item);
    try {
      e.i = std::stoi(item.substr(0, dash));
      e.j = std::stoi(item.substr(dash + 1, colon == std::string::npos ? std::string::npos : colon - dash - 1));
      e.w = colon == std::string::npos ? 1.0 : std::stod(item.substr(colon + 1));
    } catch (const std::logic_error&) {
      throw UsageError("bad edge " + item);
    }
    out.push_back(e);
  }
  return out;
}

std::vector<EdgeWeight> named_graph(const std::string& name, int n) {
  std::vector<EdgeWeight> e;
  if (name == "path") {
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, 1.0});
  } else if (name == "cycle") {
    for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n, 1.0});
  } else if (name == "star") {
    for (int i = 1; i < n; ++i) e.push_back({0, i, 1.0});
  } else if (name == "complete") {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) e.push_back({i, j, 1.0});
  } else {
    throw UsageError("unknown graph " + name);
  }
  return e;
}

int cmd_arch_generate(const ArchArgs& a, std::ostream& out) {
  ArchitectureSpec spec;
  if (a.kind == "brickwork") {
    spec = brickwork(a.n, a.q);
  } else if (a.kind == "lattice") {
    spec = lattice(a.dim, a.side, a.q);
  } else if (a.kind == "unstructured") {
    spec = unstructured_layer(a.edges.empty() ? named_graph(a.graph, a.n) : parse_edges(a.edges), a.n, a.q);
  } else if (a.kind == "spurious") {
    spec.n = a.n;
    spec.q = a.q;
    for (auto& l : spurious_circuit(a.n, a.layers, a.alpha, a.seed)) spec.layers.emplace_back(std::move(l));
  } else {
    throw UsageError("unknown generator " + a.kind);
  }
  emit(dump_architecture(spec) + "\n", a.out, out);
  return kExitOk;
}

int cmd_arch_validate(const ArchArgs& a, std::ostream& out, std::ostream& err) {
  const auto loaded = load_architecture(a.file);
  if (!loaded.spec) {
    for (const auto& v : loaded.violations) err << (v.path.empty() ? "/" : v.path) << ": " << v.message << "\n";
    return kExitUsage;
  }
  const auto& spec = *loaded.spec;
  nlohmann::ordered_json doc;
  doc["valid"] = true;
  doc["n"] = spec.n;
  doc["q"] = spec.q;
  doc["layers"] = spec.layers.size();
  doc["cluster_bound"] = spec.cluster_bound();
  bool has_parallel = false;
  for (const auto& l : spec.layers) has_parallel = has_parallel || std::holds_alternative<ParallelLayer>(l);
  if (has_parallel) {
    const auto g = cluster_graph(spec);
    doc["cluster_nodes"] = g.size();
    doc["cluster_edges"] = g.edge_count();
    doc["connected"] = g.connected;
    doc["bipartite"] = g.bipartite;
  }
  for (std::size_t l = 0; l < spec.layers.size(); ++l) {
    if (const auto* u = std::get_if<UnstructuredLayer>(&spec.layers[l])) {
      doc["unstructured"].push_back({{"layer", l},
                                     {"connected", edges_connected(*u, spec.n)},
                                     {"max_degree", max_degree(*u, spec.n)}});
    }
  }
  out << doc.dump(2) << "\n";
  return kExitOk;
}

int cmd_arch_path(const ArchArgs& a, std::ostream& out, std::ostream& err) {
  ArchitectureSpec spec;
  if (!a.file.empty()) {
    const auto loaded = load_architecture(a.file);
    if (!loaded.spec) {
      for (const auto& v : loaded.violations) err << v.path << ": " << v.message << "\n";
      return kExitUsage;
    }
    spec = *loaded.spec;
  } else if (a.kind == "brickwork") {
    spec = brickwork(a.n, a.q);
  } else if (a.kind == "lattice") {
    spec = lattice(a.dim, a.side, a.q);
  } else {
    throw UsageError("arch path needs --file or a brickwork/lattice generator");
  }
  const auto g = cluster_graph(spec);
  const auto h = hamiltonian_path(g, a.budget);
  nlohmann::ordered_json doc;
  doc["status"] = to_string(h.status);
  doc["reason"] = h.reason;
  doc["expansions"] = h.expansions;
  doc["path"] = h.path;
  if (h.status == PathStatus::kFound) {
    const auto plan = chunk_partitions(g, h.path, a.r);
    auto chunks = [](const std::vector<Chunk>& cs) {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& c : cs) {
        arr.push_back({{"begin", c.begin}, {"end", c.end}, {"role_nodes", c.role_nodes}, {"merged_tail", c.merged_tail},
                       {"sites", c.sites}});
      }
      return arr;
    };
    doc["r"] = plan.r;
    doc["r_valid"] = plan.r_valid;
    doc["p1"] = chunks(plan.p1);
    doc["p2"] = chunks(plan.p2);
    doc["p1_missing"] = plan.p1_missing;
    doc["p2_missing"] = plan.p2_missing;
    doc["min_overlap"] = plan.min_overlap;
    doc["observation1"] = plan.observation1;
    doc["observation2"] = plan.observation2;
    doc["observation3"] = plan.observation3;
  }
  emit(doc.dump(2) + "\n", a.out, out);
  return h.status == PathStatus::kFound ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qdecay: twirl channels, entropy decay and architecture bounds"};
  app.require_subcommand(1);

  BoundArgs bound;
  auto* b = app.add_subcommand("bound", "Evaluate a closed-form bound");
  b->add_option("formula", bound.formula,
                "glue | glue-chain | parallel-r | parallel-delta | parallel-lambda | c-qk | parallel-depth | "
                "tree-lambda | random-graph-lambda | complete-graph-lambda | compose-sdpi | brickwork-lambda | "
                "beta | additive-depth | continuity")
      ->required();
  for (const char* name : {"q", "k", "n", "eps", "delta", "r", "Ck", "ell", "eps-prime", "min-p-lambda", "C",
                           "override", "eps1", "eps2", "dimB", "prefactor", "lambda", "sup-d", "local-lambda"}) {
    bound.num[name] = kUnset;
    b->add_option(std::string("--") + name, bound.num[name]);
  }
  b->add_option("--dims", bound.dims, "Overlap dimensions for glue-chain");
  b->add_option("--lambdas", bound.lambdas, "Decay constants for compose-sdpi");
  b->add_option("--variant", bound.variant, "as_stated | as_derived");
  b->add_option("--log", bound.log, "Log convention in C(q,k): natural | base2 | base_q");
  b->add_option("--connected", bound.connected, "Connectivity of the interaction graph");
  b->add_option("--sweep", bound.sweeps, "name=v1,v2,... or name=start:stop:step (repeatable)");
  b->add_option("--out", bound.out, "Output file (default stdout)");
  b->add_option("--format", bound.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

  SimArgs sim;
  auto* s = app.add_subcommand("simulate", "Entropy trajectories under an architecture");
  s->add_option("arch", sim.arch, "brickwork | lattice | spurious | file")->required();
  s->add_option("--file", sim.file, "Architecture JSON for arch = file");
  s->add_option("--n", sim.n);
  s->add_option("--q", sim.q);
  s->add_option("--k", sim.k);
  s->add_option("--layers", sim.layers);
  s->add_option("--samples", sim.samples);
  s->add_option("--seed", sim.seed);
  s->add_option("--alpha", sim.alpha);
  s->add_option("--D", sim.dim);
  s->add_option("--side", sim.side);
  s->add_option("--base", sim.base, "Entropy base: q | 2 | natural");
  s->add_option("--out", sim.out, "Output CSV (default stdout)");

  std::string suite = "all";
  VerifyOptions vopts;
  auto* v = app.add_subcommand("verify", "Run property suites");
  v->add_option("suite", suite, "entropy | moments | walks | arch | glue | cb | formulas | all");
  v->add_option("--trials", vopts.trials);
  v->add_option("--trees", vopts.trees);
  v->add_option("--seed", vopts.seed);
  v->add_option("--n", vopts.n);
  v->add_option("--k", vopts.k);

  ArchArgs arch;
  auto* a = app.add_subcommand("arch", "Generate, validate or path-plan architecture files");
  a->require_subcommand(1);
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", arch.n);
    sub->add_option("--q", arch.q);
    sub->add_option("--D", arch.dim);
    sub->add_option("--side", arch.side);
    sub->add_option("--out", arch.out);
  };
  auto* gen = a->add_subcommand("generate", "Write a generated architecture as JSON");
  gen->add_option("kind", arch.kind, "brickwork | lattice | unstructured | spurious")->required();
  add_common(gen);
  gen->add_option("--graph", arch.graph, "path | cycle | star | complete (unstructured)");
  gen->add_option("--edges", arch.edges, "Explicit edges i-j:w,... (unstructured)");
  gen->add_option("--layers", arch.layers, "Layer count (spurious)");
  gen->add_option("--alpha", arch.alpha, "Spurious gate probability");
  gen->add_option("--seed", arch.seed);
  auto* val = a->add_subcommand("validate", "Validate an architecture file");
  val->add_option("file", arch.file)->required();
  auto* path = a->add_subcommand("path", "Hamiltonian path and P1/P2 chunking");
  path->add_option("kind", arch.kind, "brickwork | lattice (when --file is absent)");
  path->add_option("--file", arch.file);
  add_common(path);
  path->add_option("--r", arch.r);
  path->add_option("--budget", arch.budget);

  std::vector<std::string> argv_store{"qdecay"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& x : argv_store) argv.push_back(x.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (b->parsed()) {
      bound.connected_set = b->count("--connected") > 0;
      return cmd_bound(bound, out, err);
    }
    if (s->parsed()) return cmd_simulate(sim, out);
    if (v->parsed()) return cmd_verify(suite, vopts, out);
    if (gen->parsed()) return cmd_arch_generate(arch, out);
    if (val->parsed()) return cmd_arch_validate(arch, out, err);
    if (path->parsed()) return cmd_arch_path(arch, out, err);
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "error: no command\n";
  return kExitUsage;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace qdecay
