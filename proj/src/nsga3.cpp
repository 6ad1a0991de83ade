#include "armoo/nsga3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "armoo/error.hpp"

namespace armoo {

namespace {

constexpr double asf_epsilon = 1e-6;
constexpr double min_intercept = 1e-10;

// Solves m * x = rhs in place by Gaussian elimination with partial pivoting.
bool solve3(std::array<Point3, 3> m, Point3 rhs, Point3& x)
{
    for (std::size_t col = 0; col < 3; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < 3; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) {
                pivot = r;
            }
        }
        if (std::abs(m[pivot][col]) < 1e-12) {
            return false;
        }
        std::swap(m[col], m[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (std::size_t r = col + 1; r < 3; ++r) {
            const double f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < 3; ++c) {
                m[r][c] -= f * m[col][c];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    for (std::size_t i = 3; i-- > 0;) {
        double s = rhs[i];
        for (std::size_t c = i + 1; c < 3; ++c) {
            s -= m[i][c] * x[c];
        }
        x[i] = s / m[i][i];
    }
    return true;
}

std::size_t tournament(const std::vector<std::size_t>& ranks, Rng& rng)
{
    const auto a = rng.below(ranks.size());
    const auto b = rng.below(ranks.size());
    if (ranks[a] != ranks[b]) {
        return ranks[a] < ranks[b] ? a : b;
    }
    return rng.bernoulli(0.5) ? a : b;
}

std::vector<ObjectiveVector> objectives_of(std::span<const Individual> pop)
{
    std::vector<ObjectiveVector> out;
    out.reserve(pop.size());
    for (const auto& ind : pop) {
        out.push_back(ind.objectives);
    }
    return out;
}

} // namespace

ReferencePointSet das_dennis(std::size_t divisions)
{
    if (divisions == 0) {
        throw Error(ErrorCode::InvalidDivisions, "need at least one division");
    }
    ReferencePointSet refs;
    refs.divisions = divisions;
    refs.points.reserve(das_dennis_count(divisions));
    const auto p = static_cast<double>(divisions);
    for (std::size_t i = divisions + 1; i-- > 0;) {
        for (std::size_t j = divisions - i + 1; j-- > 0;) {
            const std::size_t k = divisions - i - j;
            refs.points.push_back({static_cast<double>(i) / p, static_cast<double>(j) / p, static_cast<double>(k) / p});
        }
    }
    return refs;
}

std::size_t divisions_for_count(std::size_t n) noexcept
{
    std::size_t p = 1;
    while (das_dennis_count(p) < n) {
        ++p;
    }
    return p;
}

Point3 Normalization::apply(const Point3& p) const noexcept
{
    return {(p[0] - ideal[0]) / intercepts[0], (p[1] - ideal[1]) / intercepts[1], (p[2] - ideal[2]) / intercepts[2]};
}

Normalization fit_normalization(std::span<const Point3> points)
{
    Normalization norm;
    if (points.empty()) {
        return norm;
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    norm.ideal = {inf, inf, inf};
    Point3 extent{0.0, 0.0, 0.0};
    for (const auto& p : points) {
        for (std::size_t k = 0; k < 3; ++k) {
            norm.ideal[k] = std::min(norm.ideal[k], p[k]);
        }
    }
    for (const auto& p : points) {
        for (std::size_t k = 0; k < 3; ++k) {
            extent[k] = std::max(extent[k], p[k] - norm.ideal[k]);
        }
    }

    std::array<Point3, 3> extremes{};
    for (std::size_t axis = 0; axis < 3; ++axis) {
        double best = inf;
        for (const auto& p : points) {
            double asf = 0.0;
            for (std::size_t k = 0; k < 3; ++k) {
                const double w = k == axis ? 1.0 : asf_epsilon;
                asf = std::max(asf, (p[k] - norm.ideal[k]) / w);
            }
            if (asf < best) {
                best = asf;
                for (std::size_t k = 0; k < 3; ++k) {
                    extremes[axis][k] = p[k] - norm.ideal[k];
                }
            }
        }
    }

    Point3 plane{};
    bool ok = solve3(extremes, {1.0, 1.0, 1.0}, plane);
    Point3 intercepts{};
    for (std::size_t k = 0; ok && k < 3; ++k) {
        intercepts[k] = 1.0 / plane[k];
        ok = std::isfinite(intercepts[k]) && intercepts[k] > min_intercept;
    }
    norm.hyperplane_fallback = !ok;
    for (std::size_t k = 0; k < 3; ++k) {
        double a = ok ? std::max(intercepts[k], extent[k]) : extent[k];
        if (a <= min_intercept) {
            a = 1.0;  // every point shares this coordinate
        }
        norm.intercepts[k] = a;
    }
    return norm;
}

double perpendicular_distance(const Point3& p, const Point3& direction) noexcept
{
    const double dd = direction[0] * direction[0] + direction[1] * direction[1] + direction[2] * direction[2];
    const double t = (p[0] * direction[0] + p[1] * direction[1] + p[2] * direction[2]) / dd;
    double s = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        const double d = p[k] - t * direction[k];
        s += d * d;
    }
    return std::sqrt(s);
}

Association associate(std::span<const Point3> normalized, const ReferencePointSet& refs)
{
    Association a;
    a.line.resize(normalized.size());
    a.distance.resize(normalized.size());
    for (std::size_t i = 0; i < normalized.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_ref = 0;
        for (std::size_t r = 0; r < refs.points.size(); ++r) {
            const double d = perpendicular_distance(normalized[i], refs.points[r]);
            if (d < best) {
                best = d;
                best_ref = r;
            }
        }
        a.line[i] = best_ref;
        a.distance[i] = best;
    }
    return a;
}

std::vector<std::size_t> nsga3_select(std::span<const ObjectiveVector> objs, const ReferencePointSet& refs,
                                      std::size_t n, Rng& rng, Execution exec)
{
    if (n > objs.size()) {
        throw Error(ErrorCode::SelectionOverdraw,
                    "cannot select " + std::to_string(n) + " of " + std::to_string(objs.size()));
    }
    const auto points = to_minimization(objs);
    const auto part = sort_fronts(points, exec);

    std::vector<std::size_t> selected;
    std::size_t last = 0;
    for (; last < part.fronts.size(); ++last) {
        if (selected.size() + part.fronts[last].size() > n) {
            break;
        }
        selected.insert(selected.end(), part.fronts[last].begin(), part.fronts[last].end());
        if (selected.size() == n) {
            std::sort(selected.begin(), selected.end());
            return selected;
        }
    }

    // niching over the partially fitting front
    const auto& last_front = part.fronts[last];
    std::vector<std::size_t> members = selected;
    members.insert(members.end(), last_front.begin(), last_front.end());
    std::vector<Point3> member_points;
    member_points.reserve(members.size());
    for (auto i : members) {
        member_points.push_back(points[i]);
    }
    const auto norm = fit_normalization(member_points);
    for (auto& p : member_points) {
        p = norm.apply(p);
    }
    const auto assoc = associate(member_points, refs);

    std::vector<std::size_t> niche(refs.points.size(), 0);
    for (std::size_t m = 0; m < selected.size(); ++m) {
        ++niche[assoc.line[m]];
    }
    // candidates[r]: positions in `members` of last-front points on line r
    std::vector<std::vector<std::size_t>> candidates(refs.points.size());
    for (std::size_t m = selected.size(); m < members.size(); ++m) {
        candidates[assoc.line[m]].push_back(m);
    }
    std::vector<bool> active(refs.points.size(), true);

    std::size_t remaining = n - selected.size();
    std::vector<std::size_t> ties;
    while (remaining > 0) {
        std::size_t min_count = std::numeric_limits<std::size_t>::max();
        ties.clear();
        for (std::size_t r = 0; r < refs.points.size(); ++r) {
            if (!active[r]) {
                continue;
            }
            if (niche[r] < min_count) {
                min_count = niche[r];
                ties.clear();
            }
            if (niche[r] == min_count) {
                ties.push_back(r);
            }
        }
        const auto r = ties[rng.below(ties.size())];
        auto& pool = candidates[r];
        if (pool.empty()) {
            active[r] = false;
            continue;
        }
        std::size_t pick;
        if (niche[r] == 0) {
            double best = std::numeric_limits<double>::infinity();
            std::vector<std::size_t> closest;
            for (std::size_t c = 0; c < pool.size(); ++c) {
                const double d = assoc.distance[pool[c]];
                if (d < best) {
                    best = d;
                    closest.clear();
                }
                if (d == best) {
                    closest.push_back(c);
                }
            }
            pick = closest[rng.below(closest.size())];
        } else {
            pick = rng.below(pool.size());
        }
        selected.push_back(members[pool[pick]]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
        ++niche[r];
        --remaining;
    }
    std::sort(selected.begin(), selected.end());
    return selected;
}

RunResult run_nsga3(const TransactionDatabase& db, Variant variant, const Nsga3Params& params,
                    const GenerationCallback& on_generation)
{
    params.variation.validate();
    if (params.population == 0) {
        throw Error(ErrorCode::InvalidParameter, "population size must be positive");
    }
    const auto refs = das_dennis(params.divisions);
    const auto& var = params.variation;

    RunResult result;
    result.init = resolve_init_strategy(var.init, db);
    const RuleSource source(db, result.init, var.retry_budget);
    Rng rng(params.seed);

    auto rules = initial_rules(params.population, source, rng, true);
    auto pop = evaluate_population(rules, db, variant, params.exec);
    result.evaluations += pop.size();

    NondominatedArchive archive;
    archive.offer_all(pop);
    auto observe = [&](std::size_t gen) {
        if (params.record_history) {
            result.history.push_back(archive.objectives());
        }
        if (on_generation) {
            on_generation(GenerationView{gen, pop, &archive});
        }
    };
    observe(0);

    const std::size_t n = params.population;
    const std::size_t pairs = (n + 1) / 2;
    for (std::size_t gen = 1; gen <= params.generations; ++gen) {
        const auto ranks = fast_nondominated_sort(objectives_of(pop), params.exec).ranks(pop.size());
        std::vector<std::pair<std::size_t, std::size_t>> mates(pairs);
        for (auto& [a, b] : mates) {
            a = tournament(ranks, rng);
            b = tournament(ranks, rng);
        }

        std::vector<Rule> children(n);
        parallel_for(pairs, params.exec, [&](std::size_t p) {
            Rng local(mix_seed({params.seed, gen, p}));
            auto [c1, c2] = crossover(pop[mates[p].first].rule, pop[mates[p].second].rule, var.crossover_prob, local);
            children[2 * p] = repair(mutate(c1, var.mutation_prob, local, var.mutation_mode), source, local);
            if (2 * p + 1 < n) {
                children[2 * p + 1] = repair(mutate(c2, var.mutation_prob, local, var.mutation_mode), source, local);
            }
        });

        std::vector<Rule> parent_rules;
        parent_rules.reserve(n);
        for (const auto& ind : pop) {
            parent_rules.push_back(ind.rule);
        }
        dedup(children, source, rng, parent_rules);

        auto offspring = evaluate_population(children, db, variant, params.exec);
        result.evaluations += offspring.size();
        archive.offer_all(offspring);

        std::vector<Individual> merged = std::move(pop);
        merged.insert(merged.end(), std::make_move_iterator(offspring.begin()), std::make_move_iterator(offspring.end()));
        const auto survivors = nsga3_select(objectives_of(merged), refs, n, rng, params.exec);
        pop.clear();
        pop.reserve(n);
        for (auto i : survivors) {
            pop.push_back(std::move(merged[i]));
        }
        observe(gen);
    }

    result.front = nondominated_subset(pop);
    result.archive = archive.members();
    return result;
}

} // namespace armoo
