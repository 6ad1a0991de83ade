#include "armoo/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "armoo/error.hpp"

namespace armoo {

std::vector<Point3> to_minimization(std::span<const ObjectiveVector> objs)
{
    std::vector<Point3> pts;
    pts.reserve(objs.size());
    for (const auto& o : objs) {
        pts.push_back(to_minimization(o));
    }
    return pts;
}

std::vector<Point3> objective_points(std::span<const Individual> pop)
{
    std::vector<Point3> pts;
    pts.reserve(pop.size());
    for (const auto& ind : pop) {
        pts.push_back(ind.objectives.values);
    }
    return pts;
}

std::vector<std::size_t> FrontPartition::ranks(std::size_t n) const
{
    std::vector<std::size_t> r(n, 0);
    for (std::size_t f = 0; f < fronts.size(); ++f) {
        for (auto i : fronts[f]) {
            r[i] = f;
        }
    }
    return r;
}

FrontPartition sort_fronts(std::span<const Point3> points, Execution exec)
{
    for (const auto& p : points) {
        if (std::isnan(p[0]) || std::isnan(p[1]) || std::isnan(p[2])) {
            throw Error(ErrorCode::NaNObjective, "dominance is undefined for NaN objectives");
        }
    }
    auto table = dominance_table(points, exec);
    FrontPartition part;
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (table.dominator_count[i] == 0) {
            current.push_back(i);
        }
    }
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (auto i : current) {
            for (auto j : table.dominated[i]) {
                if (--table.dominator_count[j] == 0) {
                    next.push_back(j);
                }
            }
        }
        std::sort(next.begin(), next.end());
        part.fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return part;
}

FrontPartition fast_nondominated_sort(std::span<const ObjectiveVector> objs, Execution exec)
{
    const auto pts = to_minimization(objs);
    return sort_fronts(pts, exec);
}

std::vector<std::size_t> nondominated_indices(std::span<const Point3> points)
{
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    // lexicographically descending: a point can only be dominated by points
    // that come before it
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a] > points[b]; });
    std::vector<std::size_t> kept;
    for (auto i : order) {
        const bool dominated = std::any_of(kept.begin(), kept.end(),
                                           [&](std::size_t k) { return dominates_max(points[k], points[i]); });
        if (!dominated) {
            kept.push_back(i);
        }
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

std::vector<Individual> nondominated_subset(std::span<const Individual> pop)
{
    const auto pts = objective_points(pop);
    std::vector<Individual> out;
    std::unordered_set<Rule, RuleHash> seen;
    for (auto i : nondominated_indices(pts)) {
        if (seen.insert(pop[i].rule).second) {
            out.push_back(pop[i]);
        }
    }
    return out;
}

bool NondominatedArchive::offer(const Individual& ind)
{
    const auto& p = ind.objectives.values;
    for (const auto& m : members_) {
        if (m.objectives.values == p || dominates_max(m.objectives.values, p)) {
            return false;
        }
    }
    std::erase_if(members_, [&](const Individual& m) { return dominates_max(p, m.objectives.values); });
    members_.push_back(ind);
    return true;
}

void NondominatedArchive::offer_all(std::span<const Individual> pop)
{
    for (const auto& ind : pop) {
        offer(ind);
    }
}

std::vector<ObjectiveVector> NondominatedArchive::objectives() const
{
    std::vector<ObjectiveVector> out;
    out.reserve(members_.size());
    for (const auto& m : members_) {
        out.push_back(m.objectives);
    }
    return out;
}

} // namespace armoo
