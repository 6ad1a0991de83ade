#pragma once

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "armoo/dataset.hpp"
#include "armoo/random.hpp"
#include "armoo/rule.hpp"

namespace armoo {

enum class InitStrategy { Random, Seeded, Auto };
enum class MutationMode { PerGene, PerIndividual };

InitStrategy parse_init_strategy(std::string_view name);
std::string_view to_string(InitStrategy s) noexcept;
MutationMode parse_mutation_mode(std::string_view name);

inline constexpr std::size_t default_retry_budget = 1000;

struct VariationParams {
    double crossover_prob = 0.9;
    double mutation_prob = 0.1;
    InitStrategy init = InitStrategy::Auto;
    MutationMode mutation_mode = MutationMode::PerGene;
    std::size_t retry_budget = default_retry_budget;

    /// Throws InvalidParameter for probabilities outside [0, 1].
    void validate() const;
};

/// Picks Seeded for sparse data (mean density < 0.1) and also when a fixed
/// probe of uniform random rules almost never hits a supported itemset.
InitStrategy resolve_init_strategy(InitStrategy requested, const TransactionDatabase& db);

/// Uniform ternary genes followed by structural repair. Throws TooFewItems
/// for M < 2.
Rule random_rule(std::size_t n_items, Rng& rng);

/// Rule built from a random transaction with at least two items: one of
/// its items becomes the consequent, the rest the antecedent.
Rule transaction_seeded_rule(const TransactionDatabase& db, Rng& rng);

/// Single-point crossover at a uniform cut in [1, M-1] with probability pc,
/// otherwise clones.
std::pair<Rule, Rule> crossover(const Rule& a, const Rule& b, double pc, Rng& rng);
/// Deterministic splice: children take [0, cut) from one parent and the
/// rest from the other.
std::pair<Rule, Rule> crossover_at(const Rule& a, const Rule& b, std::size_t cut);

/// Per-gene mode: each gene, with probability pm, becomes one of the two
/// other symbols. Per-individual mode: with probability pm one uniformly
/// chosen gene does.
Rule mutate(const Rule& r, double pm, Rng& rng, MutationMode mode = MutationMode::PerGene);

/// Enforces one consequent and at least one antecedent item, in place.
void structural_repair(Rule& r, Rng& rng);

/// Source of fresh valid rules with positive support, drawn with the
/// population's initialization strategy.
class RuleSource {
public:
    /// `strategy` must already be resolved (not Auto).
    RuleSource(const TransactionDatabase& db, InitStrategy strategy, std::size_t retry_budget = default_retry_budget);

    [[nodiscard]] const TransactionDatabase& db() const noexcept { return *db_; }
    [[nodiscard]] InitStrategy strategy() const noexcept { return strategy_; }
    [[nodiscard]] std::size_t retry_budget() const noexcept { return retry_budget_; }

    /// Throws RepairExhausted when the random strategy cannot find a
    /// supported rule within the retry budget.
    Rule fresh(Rng& rng) const;

private:
    const TransactionDatabase* db_;
    InitStrategy strategy_;
    std::size_t retry_budget_;
};

/// Structural repair, then replacement of zero-support rules by a fresh rule
/// from `source`.
Rule repair(Rule r, const RuleSource& source, Rng& rng);

/// Replaces every repeat of an earlier rule (or of a rule in `reserved`) by
/// a fresh rule not present yet. Size is unchanged. Throws
/// PopulationTooLargeForRuleSpace when no new rule turns up within the
/// retry budget.
void dedup(std::vector<Rule>& rules, const RuleSource& source, Rng& rng, const std::vector<Rule>& reserved = {});

/// `n` fresh, distinct, supported rules.
std::vector<Rule> initial_rules(std::size_t n, const RuleSource& source, Rng& rng, bool distinct = true);

} // namespace armoo
