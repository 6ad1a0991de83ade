#include "armoo/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "armoo/error.hpp"
#include "armoo/optimizer.hpp"
#include "armoo/pareto.hpp"

namespace armoo {

namespace {

std::size_t effective_cap(std::size_t n_items, std::optional<std::size_t> max_antecedent)
{
    if (max_antecedent && *max_antecedent == 0) {
        throw Error(ErrorCode::InvalidParameter, "antecedent cap must be at least 1");
    }
    const std::size_t others = n_items == 0 ? 0 : n_items - 1;
    return max_antecedent ? std::min(*max_antecedent, others) : others;
}

void check_feasible(std::size_t n_items, std::optional<std::size_t> max_antecedent)
{
    if (!max_antecedent && n_items > max_uncapped_items) {
        throw Error(ErrorCode::InstanceTooLarge, std::to_string(n_items) +
                                                     " items is too many to enumerate without --max-antecedent");
    }
}

bool row_contains(std::span<const std::uint32_t> row, std::uint32_t item)
{
    return std::binary_search(row.begin(), row.end(), item);
}

struct Candidate {
    Rule rule;
    RuleMetrics metrics;
    Point3 point;
};

std::vector<Candidate> nondominated_candidates(std::vector<Candidate> cands)
{
    std::vector<Point3> pts;
    pts.reserve(cands.size());
    for (const auto& c : cands) {
        pts.push_back(c.point);
    }
    std::vector<Candidate> kept;
    for (auto i : nondominated_indices(pts)) {
        kept.push_back(std::move(cands[i]));
    }
    return kept;
}

} // namespace

std::uint64_t structural_rule_count(std::size_t n_items, std::optional<std::size_t> max_antecedent)
{
    if (n_items < 2) {
        return 0;
    }
    const std::size_t cap = effective_cap(n_items, max_antecedent);
    const std::uint64_t others = n_items - 1;
    std::uint64_t per_consequent = 0;
    std::uint64_t binom = 1;
    for (std::uint64_t k = 1; k <= cap; ++k) {
        binom = binom * (others - k + 1) / k;
        per_consequent += binom;
    }
    return n_items * per_consequent;
}

void for_each_structural_rule(std::size_t n_items, std::size_t consequent, std::optional<std::size_t> max_antecedent,
                              const std::function<void(const Rule&)>& fn)
{
    if (consequent >= n_items) {
        throw Error(ErrorCode::InvalidItemIndex, "consequent index out of range");
    }
    const std::size_t cap = effective_cap(n_items, max_antecedent);
    std::vector<std::uint32_t> others;
    for (std::uint32_t i = 0; i < n_items; ++i) {
        if (i != consequent) {
            others.push_back(i);
        }
    }
    const std::size_t m = others.size();
    Rule rule(std::vector<Gene>(n_items, Gene::Absent));
    rule[consequent] = Gene::Consequent;

    std::vector<std::size_t> idx;
    for (std::size_t k = 1; k <= cap; ++k) {
        idx.resize(k);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        while (true) {
            for (auto i : idx) {
                rule[others[i]] = Gene::Antecedent;
            }
            fn(rule);
            for (auto i : idx) {
                rule[others[i]] = Gene::Absent;
            }
            // next k-combination of [0, m)
            std::size_t pos = k;
            while (pos > 0 && idx[pos - 1] == m - k + pos - 1) {
                --pos;
            }
            if (pos == 0) {
                break;
            }
            ++idx[pos - 1];
            for (std::size_t j = pos; j < k; ++j) {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

RuleCounts naive_counts(const Rule& rule, const TransactionDatabase& db)
{
    if (rule.size() != db.n_items()) {
        throw Error(ErrorCode::GeneLengthMismatch, "rule length differs from item count");
    }
    if (!rule.is_well_formed()) {
        throw Error(ErrorCode::InvalidRule, "rule needs one consequent and at least one antecedent item");
    }
    std::vector<std::uint32_t> antecedent;
    std::uint32_t consequent = 0;
    for (std::uint32_t i = 0; i < rule.size(); ++i) {
        if (rule[i] == Gene::Antecedent) {
            antecedent.push_back(i);
        } else if (rule[i] == Gene::Consequent) {
            consequent = i;
        }
    }
    RuleCounts c;
    c.transactions = db.n_transactions();
    for (std::size_t t = 0; t < db.n_transactions(); ++t) {
        const auto row = db.transaction(t);
        const bool has_a = std::all_of(antecedent.begin(), antecedent.end(),
                                       [&](std::uint32_t item) { return row_contains(row, item); });
        const bool has_b = row_contains(row, consequent);
        c.antecedent += has_a ? 1 : 0;
        c.consequent += has_b ? 1 : 0;
        c.both += has_a && has_b ? 1 : 0;
    }
    return c;
}

namespace {

RuleMetrics naive_metrics(const RuleCounts& c)
{
    if (c.antecedent == 0) {
        throw Error(ErrorCode::UndefinedConfidence, "antecedent never occurs");
    }
    if (c.both == 0) {
        throw Error(ErrorCode::InvalidRule, "rule has zero support");
    }
    // Exact integer numerators and denominators, then a single rounding.
    __extension__ typedef unsigned __int128 u128;
    const u128 n = c.transactions;
    const u128 a = c.antecedent;
    const u128 b = c.consequent;
    const u128 ab = c.both;
    RuleMetrics m;
    m.support = static_cast<double>(ab) / static_cast<double>(n);
    m.confidence = static_cast<double>(ab) / static_cast<double>(a);
    m.lift = static_cast<double>(ab * n) / static_cast<double>(a * b);
    m.interestingness = static_cast<double>(ab * ab * (n - ab)) / static_cast<double>(a * b * n);
    return m;
}

} // namespace

RuleMetrics naive_evaluate(const Rule& rule, const TransactionDatabase& db)
{
    return naive_metrics(naive_counts(rule, db));
}

std::vector<Rule> enumerate_rules(const TransactionDatabase& db, std::optional<std::size_t> max_antecedent)
{
    check_feasible(db.n_items(), max_antecedent);
    std::vector<Rule> out;
    if (db.n_items() < 2) {
        return out;
    }
    for (std::size_t c = 0; c < db.n_items(); ++c) {
        for_each_structural_rule(db.n_items(), c, max_antecedent, [&](const Rule& r) {
            if (naive_counts(r, db).both > 0) {
                out.push_back(r);
            }
        });
    }
    return out;
}

ExactFront exact_pareto_front(const TransactionDatabase& db, Variant variant, std::optional<std::size_t> max_antecedent,
                              Execution exec)
{
    check_feasible(db.n_items(), max_antecedent);
    const std::size_t m = db.n_items();
    std::vector<std::vector<Candidate>> per_consequent(m);
    if (m >= 2) {
        parallel_for(m, exec, [&](std::size_t c) {
            std::vector<Candidate> local;
            for_each_structural_rule(m, c, max_antecedent, [&](const Rule& r) {
                const auto counts = naive_counts(r, db);
                if (counts.both == 0) {
                    return;
                }
                const auto metrics = naive_metrics(counts);
                local.push_back({r, metrics, objective_vector(metrics, variant).values});
            });
            per_consequent[c] = nondominated_candidates(std::move(local));
        });
    }
    std::vector<Candidate> merged;
    for (auto& chunk : per_consequent) {
        std::move(chunk.begin(), chunk.end(), std::back_inserter(merged));
    }
    merged = nondominated_candidates(std::move(merged));

    ExactFront front;
    front.variant = variant;
    for (auto& c : merged) {
        front.objectives.push_back(ObjectiveVector{c.point, variant});
        front.metrics.push_back(c.metrics);
        front.rules.push_back(std::move(c.rule));
    }
    return front;
}

} // namespace armoo
