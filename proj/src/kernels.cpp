#include "armoo/kernels.hpp"

#include <cstddef>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "armoo/pareto.hpp"

namespace armoo {

namespace kernels {

namespace serial {

std::vector<Individual> evaluate(std::span<const Rule> rules, const TransactionDatabase& db, Variant variant)
{
    std::vector<Individual> out;
    out.reserve(rules.size());
    for (const auto& r : rules) {
        const auto m = evaluate_rule(r, db);
        out.push_back({r, m, objective_vector(m, variant)});
    }
    return out;
}

DominanceTable dominance(std::span<const Point3> points)
{
    const auto n = points.size();
    DominanceTable t;
    t.dominated.assign(n, {});
    t.dominator_count.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dominates_min(points[i], points[j])) {
                t.dominated[i].push_back(static_cast<std::uint32_t>(j));
                ++t.dominator_count[j];
            } else if (dominates_min(points[j], points[i])) {
                t.dominated[j].push_back(static_cast<std::uint32_t>(i));
                ++t.dominator_count[i];
            }
        }
    }
    return t;
}

} // namespace serial

namespace omp {

std::vector<Individual> evaluate(std::span<const Rule> rules, const TransactionDatabase& db, Variant variant)
{
    const auto n = static_cast<std::ptrdiff_t>(rules.size());
    std::vector<Individual> out(rules.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            const auto m = evaluate_rule(rules[i], db);
            out[i] = {rules[i], m, objective_vector(m, variant)};
        } catch (...) {
#pragma omp critical(armoo_evaluate_failure)
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return out;
}

DominanceTable dominance(std::span<const Point3> points)
{
    // full rows instead of the half matrix so each row has one writer
    const auto n = static_cast<std::ptrdiff_t>(points.size());
    DominanceTable t;
    t.dominated.assign(points.size(), {});
    t.dominator_count.assign(points.size(), 0);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        auto& row = t.dominated[i];
        std::uint32_t count = 0;
        for (std::ptrdiff_t j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            if (dominates_min(points[i], points[j])) {
                row.push_back(static_cast<std::uint32_t>(j));
            } else if (dominates_min(points[j], points[i])) {
                ++count;
            }
        }
        t.dominator_count[i] = count;
    }
    return t;
}

} // namespace omp

} // namespace kernels

std::vector<Individual> evaluate_population(std::span<const Rule> rules, const TransactionDatabase& db, Variant variant,
                                            Execution exec)
{
    return exec == Execution::Parallel ? kernels::omp::evaluate(rules, db, variant)
                                       : kernels::serial::evaluate(rules, db, variant);
}

DominanceTable dominance_table(std::span<const Point3> points, Execution exec)
{
    return exec == Execution::Parallel ? kernels::omp::dominance(points) : kernels::serial::dominance(points);
}

int max_threads() noexcept
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace armoo
