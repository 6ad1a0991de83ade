#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "armoo/dataset.hpp"
#include "armoo/optimizer.hpp"

namespace armoo {

/// Simplex weight vectors with their T nearest neighbours (self included,
/// nearest first, ties by index).
struct WeightVectorSystem {
    std::vector<Point3> weights;
    std::vector<std::vector<std::size_t>> neighbors;
    std::size_t neighborhood_size = 0;
};

/// Throws NeighborhoodOverdraw when T exceeds the number of weights and
/// InvalidParameter when T is zero.
WeightVectorSystem make_weight_system(std::size_t divisions, std::size_t neighborhood_size);

/// Penalty-based boundary intersection, minimized. F and z are in the
/// minimization orientation; d1 is the projected distance along the weight
/// ray from z, d2 the distance from that ray.
double pbi_scalar(const Point3& f, const Point3& weight, const Point3& ideal, double theta);

struct MoeadParams {
    std::size_t divisions = 8;  // 45 weight vectors = population size
    std::size_t neighborhood = 20;
    std::size_t generations = 200;
    double theta = 5.0;
    VariationParams variation;
    std::uint64_t seed = 1;
    /// Keep the working population free of duplicate rules.
    bool dedup_working_set = false;
    bool record_history = false;
};

struct ReplacementEvent {
    std::size_t generation = 0;
    std::size_t subproblem = 0;  // i, whose neighbourhood produced the child
    std::size_t replaced = 0;    // j, the neighbour that was overwritten
    double scalar_new = 0.0;
    double scalar_old = 0.0;
};

struct MoeadObserver {
    /// Ideal point (maximization orientation) after every child evaluation.
    std::function<void(const Point3&)> on_ideal;
    std::function<void(const ReplacementEvent&)> on_replacement;
    GenerationCallback on_generation;
};

RunResult run_moead(const TransactionDatabase& db, Variant variant, const MoeadParams& params,
                    const MoeadObserver& observer = {});

} // namespace armoo
