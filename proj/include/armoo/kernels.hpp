#pragma once

// Data-parallel inner loops. Every kernel has a serial reference version and
// an OpenMP version that must return identical results; tests and the
// benchmark compare the two.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "armoo/dataset.hpp"
#include "armoo/rule.hpp"

namespace armoo {

enum class Execution { Serial, Parallel };

using Point3 = std::array<double, 3>;

struct Individual {
    Rule rule;
    RuleMetrics metrics;
    ObjectiveVector objectives;
};

/// For each point: the indices it dominates (ascending) and how many points
/// dominate it. Minimization orientation.
struct DominanceTable {
    std::vector<std::vector<std::uint32_t>> dominated;
    std::vector<std::uint32_t> dominator_count;
};

namespace kernels {

namespace serial {
std::vector<Individual> evaluate(std::span<const Rule> rules, const TransactionDatabase& db, Variant variant);
DominanceTable dominance(std::span<const Point3> points);
} // namespace serial

namespace omp {
std::vector<Individual> evaluate(std::span<const Rule> rules, const TransactionDatabase& db, Variant variant);
DominanceTable dominance(std::span<const Point3> points);
} // namespace omp

} // namespace kernels

/// Dispatches to the serial or OpenMP kernel.
std::vector<Individual> evaluate_population(std::span<const Rule> rules, const TransactionDatabase& db, Variant variant,
                                            Execution exec = Execution::Serial);

DominanceTable dominance_table(std::span<const Point3> points, Execution exec = Execution::Serial);

/// Number of OpenMP threads available (1 when built without OpenMP).
int max_threads() noexcept;

} // namespace armoo
