#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "armoo/dataset.hpp"
#include "armoo/kernels.hpp"
#include "armoo/rule.hpp"

namespace armoo {

enum class FrontProvenance { OracleExact, BigRunApprox, File };

/// Per-objective (min, max) of a reference front. An objective with
/// max == min is degenerate and normalizes to the constant 0.5.
struct ObjectiveBounds {
    Point3 min{};
    Point3 max{};
    std::array<bool, 3> degenerate{};

    [[nodiscard]] Point3 normalize(const Point3& p) const noexcept;
};

/// Reference front in raw maximization values.
struct FrontApproximation {
    std::vector<Point3> points;
    FrontProvenance provenance = FrontProvenance::File;
    ObjectiveBounds bounds;
};

/// Keeps the non-dominated, distinct points (sorted) and records bounds.
/// Throws EmptyReferenceFront for no points.
FrontApproximation make_front_approximation(std::span<const Point3> raw, FrontProvenance provenance);
FrontApproximation make_front_approximation(std::span<const ObjectiveVector> raw, FrontProvenance provenance);

std::vector<Point3> normalize_points(std::span<const Point3> raw, const ObjectiveBounds& bounds);

/// Mean over reference points of the distance to the nearest solution.
/// Both sets must already live in the same space.
double igd(std::span<const Point3> solutions, std::span<const Point3> reference);

/// Exact volume dominated by `points` and bounded below by `ref`
/// (maximization). Throws PointBelowReference.
double hypervolume_3d(std::span<const Point3> points, const Point3& ref);

/// Reference point of the normalized box.
inline constexpr Point3 hv_reference_point{-0.01, -0.01, -0.01};

struct RunIndicators {
    double hv = 0.0;
    double igd = 0.0;
    std::size_t clamped = 0;  // solutions pulled back into [0,1]^3 before HV
};

/// HV and IGD of a raw front against a reference front, in the space
/// normalized by the reference front's bounds.
RunIndicators evaluate_indicators(std::span<const Point3> raw_front, const FrontApproximation& reference);

enum class RatioMode { RatioOfMeans, MeanOfRatios };

/// mean(HV) / mean(IGD), or the mean of per-run ratios; +inf when an IGD
/// denominator is zero.
double hv_igd_ratio(std::span<const std::pair<double, double>> runs, RatioMode mode = RatioMode::RatioOfMeans);

/// Four decimals, or "inf".
std::string format_ratio(double value);

struct TrueFrontSettings {
    std::size_t population = 500;
    std::size_t generations = 500;
    std::size_t divisions = 0;  // 0: smallest lattice with >= population points
    double crossover_prob = 0.9;
    double mutation_prob = 0.1;
    Execution exec = Execution::Serial;
};

/// Archive of one large NSGA-III run.
FrontApproximation approximate_true_front(const TransactionDatabase& db, Variant variant, std::uint64_t seed,
                                          const TrueFrontSettings& settings = {});

/// CSV with header o1,o2,o3 and raw values at full precision.
void write_front_csv(std::ostream& out, std::span<const Point3> points);
void write_front_csv(const std::filesystem::path& path, std::span<const Point3> points);
std::vector<Point3> read_front_csv(std::istream& in);
std::vector<Point3> read_front_csv(const std::filesystem::path& path);

std::vector<Point3> to_points(std::span<const ObjectiveVector> objs);

} // namespace armoo
