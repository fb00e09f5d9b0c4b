#include "qdecay/simulation.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qdecay/entropy.hpp"
#include "qdecay/moments.hpp"
#include "qdecay/parallel.hpp"

namespace qdecay {

ChannelRep parallel_layer_channel(const ParallelLayer& layer, const SiteLayout& layout) {
  ChannelRep out = ChannelRep::identity(layout.factor_dims());
  for (const auto& cluster : layer.clusters) out = compose(local_twirl(layout, cluster), out);
  return out;
}

ChannelRep unstructured_layer_channel(const UnstructuredLayer& layer, const SiteLayout& layout) {
  const auto dims = layout.factor_dims();
  if (layer.realized) {
    ChannelRep out = ChannelRep::identity(dims);
    for (const auto& e : layer.edges) {
      if (e.tag == "haar") out = compose(local_twirl(layout, std::vector<int>{e.i, e.j}), out);
    }
    return out;
  }
  std::vector<double> weights;
  std::vector<ChannelPtr> terms;
  for (const auto& e : layer.edges) {
    if (e.p <= 0.0) continue;
    weights.push_back(e.p);
    terms.push_back(share(e.tag == "haar" ? local_twirl(layout, std::vector<int>{e.i, e.j})
                                          : ChannelRep::identity(dims)));
  }
  return ChannelRep::mixture(dims, std::move(weights), std::move(terms));
}

ChannelRep layer_channel(const Layer& layer, const SiteLayout& layout) {
  if (const auto* p = std::get_if<ParallelLayer>(&layer)) return parallel_layer_channel(*p, layout);
  return unstructured_layer_channel(std::get<UnstructuredLayer>(layer), layout);
}

ChannelRep architecture_channel(const ArchitectureSpec& spec, int k) {
  const SiteLayout layout = spec.layout(k);
  if (layout.total_dim() > state_dim_cap()) {
    throw CapacityError("architecture_channel: state dimension", layout.total_dim(), state_dim_cap());
  }
  ChannelRep out = ChannelRep::identity(layout.factor_dims());
  for (const auto& layer : spec.layers) out = compose(layer_channel(layer, layout), out);
  return out;
}

std::vector<TrajectoryRow> entropy_trajectories(const std::function<const ChannelRep&(int)>& step,
                                                const ChannelRep& e, TrajectoryOptions opts) {
  if (opts.layers < 1 || opts.samples < 1) throw std::invalid_argument("entropy_trajectories: need layers, samples >= 1");
  const std::size_t dim = e.dim();
  if (dim > state_dim_cap()) throw CapacityError("entropy_trajectories: state dimension", dim, state_dim_cap());
  // Resolve the steps once so workers only read shared channels.
  std::vector<const ChannelRep*> steps;
  for (int t = 1; t <= opts.layers; ++t) steps.push_back(&step(t));
  std::vector<std::vector<TrajectoryRow>> per_trial(static_cast<std::size_t>(opts.samples));
  parallel_for(per_trial.size(), [&](std::size_t trial) {
    Rng rng(derive_seed(opts.seed, trial));
    const Vector psi = haar_pure_state(dim, rng);
    Matrix rho = psi * psi.adjoint();
    const Matrix target = qdecay::apply(e, rho);
    double prev = relative_entropy(rho, target, opts.base).value;
    auto& rows = per_trial[trial];
    for (int t = 1; t <= opts.layers; ++t) {
      rho = hermitian_part(qdecay::apply(*steps[t - 1], rho));
      const auto d = relative_entropy(rho, target, opts.base);
      const double ratio = prev > 1e-10 ? d.value / prev : std::numeric_limits<double>::quiet_NaN();
      rows.push_back({static_cast<int>(trial), t, d.value, ratio});
      prev = d.value;
    }
  });
  std::vector<TrajectoryRow> out;
  for (auto& rows : per_trial) out.insert(out.end(), rows.begin(), rows.end());
  return out;
}

std::string trajectories_csv(const std::vector<TrajectoryRow>& rows) {
  std::ostringstream out;
  out << "trial,layer,entropy,ratio\n";
  char buf[64];
  for (const auto& r : rows) {
    out << r.trial << ',' << r.layer << ',';
    std::snprintf(buf, sizeof buf, "%.17g", r.entropy);
    out << buf << ',';
    if (!std::isnan(r.ratio)) {
      std::snprintf(buf, sizeof buf, "%.17g", r.ratio);
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

std::vector<TrajectoryRow> parse_trajectories_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<TrajectoryRow> rows;
  if (!std::getline(in, line) || line != "trial,layer,entropy,ratio") {
    throw std::invalid_argument("parse_trajectories_csv: unexpected header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream cells(line);
    std::string c[4];
    for (int i = 0; i < 4; ++i) std::getline(cells, c[i], ',');
    TrajectoryRow r;
    r.trial = std::stoi(c[0]);
    r.layer = std::stoi(c[1]);
    r.entropy = std::stod(c[2]);
    r.ratio = c[3].empty() ? std::numeric_limits<double>::quiet_NaN() : std::stod(c[3]);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace qdecay
