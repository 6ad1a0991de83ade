#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "armoo/dataset.hpp"
#include "armoo/optimizer.hpp"
#include "armoo/random.hpp"

namespace armoo {

/// Points of the unit simplex with coordinates that are multiples of
/// 1/divisions.
struct ReferencePointSet {
    std::vector<Point3> points;
    std::size_t divisions = 0;
};

/// All (i, j, k)/p with i + j + k = p, ordered with i descending, then j
/// descending. Throws InvalidDivisions for p = 0.
ReferencePointSet das_dennis(std::size_t divisions);

constexpr std::size_t das_dennis_count(std::size_t divisions) noexcept
{
    return (divisions + 1) * (divisions + 2) / 2;
}

/// Smallest p with das_dennis_count(p) >= n.
std::size_t divisions_for_count(std::size_t n) noexcept;

/// Ideal point and axis intercepts used to scale minimization points.
struct Normalization {
    Point3 ideal{};
    Point3 intercepts{1.0, 1.0, 1.0};
    bool hyperplane_fallback = false;

    [[nodiscard]] Point3 apply(const Point3& p) const noexcept;
};

/// Ideal point, achievement-scalarizing extreme points, and the intercepts
/// of the hyperplane through them. Falls back to per-axis maxima when the
/// system is singular or an intercept is not positive, and never lets an
/// intercept fall below the observed extent on its axis.
Normalization fit_normalization(std::span<const Point3> points);

/// Distance from p to the line through the origin along direction.
double perpendicular_distance(const Point3& p, const Point3& direction) noexcept;

struct Association {
    std::vector<std::size_t> line;  // reference point index per point
    std::vector<double> distance;   // perpendicular distance to that line
};

/// Nearest reference line per normalized point; ties go to the lower index.
Association associate(std::span<const Point3> normalized, const ReferencePointSet& refs);

/// Environmental selection of n survivors from `objs` (maximization).
/// Returns ascending indices into objs.
std::vector<std::size_t> nsga3_select(std::span<const ObjectiveVector> objs, const ReferencePointSet& refs,
                                      std::size_t n, Rng& rng, Execution exec = Execution::Serial);

struct Nsga3Params {
    std::size_t population = 50;
    std::size_t generations = 200;
    std::size_t divisions = 12;  // 91 reference points
    VariationParams variation;
    std::uint64_t seed = 1;
    Execution exec = Execution::Serial;
    bool record_history = false;
};

RunResult run_nsga3(const TransactionDatabase& db, Variant variant, const Nsga3Params& params,
                    const GenerationCallback& on_generation = {});

} // namespace armoo
