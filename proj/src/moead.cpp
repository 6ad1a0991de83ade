#include "armoo/moead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "armoo/error.hpp"
#include "armoo/nsga3.hpp"

namespace armoo {

namespace {

double norm(const Point3& v) noexcept
{
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

// Per-objective scale between the ideal point and the population's worst
// values, so lift does not swamp the bounded objectives.
Point3 objective_scale(const std::vector<Point3>& fs, const Point3& ideal)
{
    Point3 worst = ideal;
    for (const auto& f : fs) {
        for (std::size_t k = 0; k < 3; ++k) {
            worst[k] = std::max(worst[k], f[k]);
        }
    }
    Point3 s{};
    for (std::size_t k = 0; k < 3; ++k) {
        s[k] = worst[k] - ideal[k] > 1e-12 ? worst[k] - ideal[k] : 1.0;
    }
    return s;
}

Point3 scaled(const Point3& p, const Point3& s) noexcept
{
    return {p[0] / s[0], p[1] / s[1], p[2] / s[2]};
}

Rule fresh_absent(const std::unordered_set<Rule, RuleHash>& present, const RuleSource& source, Rng& rng)
{
    for (std::size_t attempt = 0; attempt < source.retry_budget(); ++attempt) {
        Rule r = source.fresh(rng);
        if (!present.contains(r)) {
            return r;
        }
    }
    throw Error(ErrorCode::PopulationTooLargeForRuleSpace, "no rule outside the working set found");
}

Point3 negate(const Point3& p) noexcept
{
    return {-p[0], -p[1], -p[2]};
}

} // namespace

WeightVectorSystem make_weight_system(std::size_t divisions, std::size_t neighborhood_size)
{
    WeightVectorSystem sys;
    sys.weights = das_dennis(divisions).points;
    const auto n = sys.weights.size();
    if (neighborhood_size == 0) {
        throw Error(ErrorCode::InvalidParameter, "neighbourhood size must be positive");
    }
    if (neighborhood_size > n) {
        throw Error(ErrorCode::NeighborhoodOverdraw, "neighbourhood of " + std::to_string(neighborhood_size) +
                                                         " exceeds " + std::to_string(n) + " weight vectors");
    }
    sys.neighborhood_size = neighborhood_size;
    sys.neighbors.resize(n);
    std::vector<double> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Point3 d{sys.weights[i][0] - sys.weights[j][0], sys.weights[i][1] - sys.weights[j][1],
                           sys.weights[i][2] - sys.weights[j][2]};
            dist[j] = norm(d);
        }
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
        order.resize(neighborhood_size);
        sys.neighbors[i] = std::move(order);
    }
    return sys;
}

double pbi_scalar(const Point3& f, const Point3& weight, const Point3& ideal, double theta)
{
    const double wn = norm(weight);
    if (!(wn > 0.0)) {
        throw Error(ErrorCode::DegenerateWeight, "zero weight vector");
    }
    const Point3 diff{f[0] - ideal[0], f[1] - ideal[1], f[2] - ideal[2]};
    const double d1 = std::abs(diff[0] * weight[0] + diff[1] * weight[1] + diff[2] * weight[2]) / wn;
    const Point3 off{f[0] - (ideal[0] + d1 * weight[0] / wn), f[1] - (ideal[1] + d1 * weight[1] / wn),
                     f[2] - (ideal[2] + d1 * weight[2] / wn)};
    return d1 + theta * norm(off);
}

RunResult run_moead(const TransactionDatabase& db, Variant variant, const MoeadParams& params,
                    const MoeadObserver& observer)
{
    params.variation.validate();
    if (params.theta < 0.0) {
        throw Error(ErrorCode::InvalidParameter, "PBI penalty must be non-negative");
    }
    const auto sys = make_weight_system(params.divisions, params.neighborhood);
    const auto& var = params.variation;
    const std::size_t n = sys.weights.size();
    const std::size_t t = sys.neighborhood_size;

    RunResult result;
    result.init = resolve_init_strategy(var.init, db);
    const RuleSource source(db, result.init, var.retry_budget);
    Rng rng(params.seed);

    auto rules = initial_rules(n, source, rng, params.dedup_working_set);
    auto pop = evaluate_population(rules, db, variant);
    result.evaluations += pop.size();

    std::vector<Point3> fs(n);
    Point3 ideal = to_minimization(pop[0].objectives);
    for (std::size_t i = 0; i < n; ++i) {
        fs[i] = to_minimization(pop[i].objectives);
        for (std::size_t k = 0; k < 3; ++k) {
            ideal[k] = std::min(ideal[k], fs[i][k]);
        }
    }
    if (observer.on_ideal) {
        observer.on_ideal(negate(ideal));
    }

    NondominatedArchive archive;
    archive.offer_all(pop);
    auto observe = [&](std::size_t gen) {
        if (params.record_history) {
            result.history.push_back(archive.objectives());
        }
        if (observer.on_generation) {
            observer.on_generation(GenerationView{gen, pop, &archive});
        }
    };
    observe(0);

    std::unordered_set<Rule, RuleHash> present;
    if (params.dedup_working_set) {
        for (const auto& ind : pop) {
            present.insert(ind.rule);
        }
    }

    for (std::size_t gen = 1; gen <= params.generations; ++gen) {
        const Point3 scale = objective_scale(fs, ideal);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& hood = sys.neighbors[i];
            const auto first = rng.below(t);
            auto second = first;
            if (t > 1) {
                second = rng.below(t - 1);
                if (second >= first) {
                    ++second;
                }
            }
            auto child = crossover(pop[hood[first]].rule, pop[hood[second]].rule, var.crossover_prob, rng).first;
            child = repair(mutate(child, var.mutation_prob, rng, var.mutation_mode), source, rng);
            if (params.dedup_working_set && present.contains(child)) {
                child = fresh_absent(present, source, rng);
            }
            const auto metrics = evaluate_rule(child, db);
            Individual d{child, metrics, objective_vector(metrics, variant)};
            ++result.evaluations;
            archive.offer(d);

            const Point3 fd = to_minimization(d.objectives);
            for (std::size_t k = 0; k < 3; ++k) {
                ideal[k] = std::min(ideal[k], fd[k]);
            }
            if (observer.on_ideal) {
                observer.on_ideal(negate(ideal));
            }

            const Point3 z = scaled(ideal, scale);
            const Point3 fd_scaled = scaled(fd, scale);
            for (auto j : hood) {
                const double g_new = pbi_scalar(fd_scaled, sys.weights[j], z, params.theta);
                const double g_old = pbi_scalar(scaled(fs[j], scale), sys.weights[j], z, params.theta);
                if (g_new <= g_old) {
                    if (params.dedup_working_set) {
                        present.erase(pop[j].rule);
                        present.insert(d.rule);
                    }
                    pop[j] = d;
                    fs[j] = fd;
                    if (observer.on_replacement) {
                        observer.on_replacement(ReplacementEvent{gen, i, j, g_new, g_old});
                    }
                    if (params.dedup_working_set) {
                        break;  // a second copy would duplicate the child
                    }
                }
            }
        }
        observe(gen);
    }

    result.front = nondominated_subset(pop);
    result.archive = archive.members();
    return result;
}

} // namespace armoo
