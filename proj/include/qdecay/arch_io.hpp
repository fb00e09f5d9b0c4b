#pragma once

// Architecture files:
// { "n": int, "q": int, "layers": [
//     {"type": "parallel", "clusters": [[int, ...], ...]}
//   | {"type": "unstructured", "edges": [[i, j, weight] | [i, j, weight, tag], ...],
//      "realized": bool (optional)} ] }
// Unstructured weights are normalized on load.

#include <optional>
#include <string>
#include <vector>

#include "qdecay/arch.hpp"

namespace qdecay {

struct ArchLoadResult {
  std::optional<ArchitectureSpec> spec;  // set only when violations is empty
  std::vector<Violation> violations;
};

ArchLoadResult parse_architecture(const std::string& text);
ArchLoadResult load_architecture(const std::string& path);

std::string dump_architecture(const ArchitectureSpec& spec, int indent = 2);
void save_architecture(const ArchitectureSpec& spec, const std::string& path);

}  // namespace qdecay
