#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "armoo/kernels.hpp"
#include "armoo/rule.hpp"

namespace armoo {

/// a <= b componentwise with at least one strict inequality.
inline bool dominates_min(const Point3& a, const Point3& b) noexcept
{
    bool strict = false;
    for (std::size_t k = 0; k < 3; ++k) {
        if (a[k] > b[k]) {
            return false;
        }
        strict = strict || a[k] < b[k];
    }
    return strict;
}

/// a >= b componentwise with at least one strict inequality.
inline bool dominates_max(const Point3& a, const Point3& b) noexcept
{
    return dominates_min(b, a);
}

/// Negated objective values, the orientation all internal machinery uses.
inline Point3 to_minimization(const ObjectiveVector& v) noexcept
{
    return {-v.values[0], -v.values[1], -v.values[2]};
}

std::vector<Point3> to_minimization(std::span<const ObjectiveVector> objs);
std::vector<Point3> objective_points(std::span<const Individual> pop);

struct FrontPartition {
    /// fronts[0] is the non-dominated set; indices ascending within a front.
    std::vector<std::vector<std::size_t>> fronts;

    /// Front index of every element.
    [[nodiscard]] std::vector<std::size_t> ranks(std::size_t n) const;
};

/// Fast non-dominated sort on minimization points. Throws NaNObjective.
FrontPartition sort_fronts(std::span<const Point3> points, Execution exec = Execution::Serial);

/// Non-dominated sort under maximization of every objective.
FrontPartition fast_nondominated_sort(std::span<const ObjectiveVector> objs, Execution exec = Execution::Serial);

/// Indices (ascending) of the points no other point dominates; maximization.
/// Equal points do not dominate each other, so all copies are kept.
std::vector<std::size_t> nondominated_indices(std::span<const Point3> points);

/// Non-dominated individuals of a population, one per distinct rule,
/// in population order.
std::vector<Individual> nondominated_subset(std::span<const Individual> pop);

/// Running non-dominated set over everything offered to it, holding one
/// rule per distinct objective vector.
class NondominatedArchive {
public:
    /// Returns true when the individual entered the archive.
    bool offer(const Individual& ind);
    void offer_all(std::span<const Individual> pop);

    [[nodiscard]] const std::vector<Individual>& members() const noexcept { return members_; }
    [[nodiscard]] std::vector<ObjectiveVector> objectives() const;

private:
    std::vector<Individual> members_;
};

} // namespace armoo
