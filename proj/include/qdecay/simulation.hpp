#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qdecay/arch.hpp"
#include "qdecay/channels.hpp"
#include "qdecay/tensors.hpp"

namespace qdecay {

/// Product of commuting local twirls over the clusters of the layer.
ChannelRep parallel_layer_channel(const ParallelLayer& layer, const SiteLayout& layout);
/// Sampled layer: sum_ij p_ij twirl_ij. Realized layer: every "haar" edge
/// twirled in listed order; "identity" edges do nothing.
ChannelRep unstructured_layer_channel(const UnstructuredLayer& layer, const SiteLayout& layout);
ChannelRep layer_channel(const Layer& layer, const SiteLayout& layout);
/// All layers of the spec in order, on k copies.
ChannelRep architecture_channel(const ArchitectureSpec& spec, int k);

struct TrajectoryRow {
  int trial = 0;
  int layer = 0;
  double entropy = 0.0;
  double ratio = 0.0;  // entropy / previous entropy; NaN when the previous is below 1e-10
};

struct TrajectoryOptions {
  int layers = 1;
  int samples = 1;
  std::uint64_t seed = 0;
  LogBase base = LogBase::natural();
};

/// D(step_t ... step_1 (rho) || E(rho)) for t = 1..layers over Haar-random
/// pure initial states, one RNG stream per trial.
std::vector<TrajectoryRow> entropy_trajectories(const std::function<const ChannelRep&(int)>& step,
                                                const ChannelRep& e, TrajectoryOptions opts);

std::string trajectories_csv(const std::vector<TrajectoryRow>& rows);
std::vector<TrajectoryRow> parse_trajectories_csv(const std::string& text);

}  // namespace qdecay
