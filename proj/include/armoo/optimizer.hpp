#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "armoo/kernels.hpp"
#include "armoo/pareto.hpp"
#include "armoo/variation.hpp"

namespace armoo {

/// State handed to observers after initialization (generation 0) and after
/// every generation.
struct GenerationView {
    std::size_t generation = 0;
    std::span<const Individual> population;
    const NondominatedArchive* archive = nullptr;
};

using GenerationCallback = std::function<void(const GenerationView&)>;

struct RunResult {
    /// Non-dominated, duplicate-free subset of the final population.
    std::vector<Individual> front;
    /// Non-dominated set over every evaluated individual of the run.
    std::vector<Individual> archive;
    /// Archive objective vectors after each generation (index 0 = initial),
    /// filled only when history recording is on.
    std::vector<std::vector<ObjectiveVector>> history;
    std::size_t evaluations = 0;
    InitStrategy init = InitStrategy::Random;
};

/// Runs fn(i) for i in [0, n), in parallel when asked. The first exception
/// thrown by any iteration is rethrown after the loop.
void parallel_for(std::size_t n, Execution exec, const std::function<void(std::size_t)>& fn);

} // namespace armoo
