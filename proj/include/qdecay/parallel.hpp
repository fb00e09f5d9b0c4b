#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace qdecay {

using Rng = std::mt19937_64;

/// Independent stream seed for (seed, stream) via splitmix64 mixing, so that
/// per-trial generators never depend on worker count or scheduling.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Worker count: QDECAY_THREADS if set, else hardware concurrency.
unsigned worker_count() noexcept;

/// Runs body(i) for i in [0, count). Each index is executed exactly once; the
/// body must only write to per-index state. Exceptions are rethrown (first
/// failing index wins).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace qdecay
