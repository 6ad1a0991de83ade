#pragma once

// Exhaustive ground truth for small instances. Counting here walks the
// sorted transaction rows and never touches the column bitsets.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "armoo/dataset.hpp"
#include "armoo/kernels.hpp"
#include "armoo/rule.hpp"

namespace armoo {

/// Largest item count enumerated without an antecedent cap.
inline constexpr std::size_t max_uncapped_items = 20;

/// Structurally valid rules over n_items: M * sum_{k=1..cap} C(M-1, k),
/// which is M * (2^(M-1) - 1) uncapped.
std::uint64_t structural_rule_count(std::size_t n_items, std::optional<std::size_t> max_antecedent = std::nullopt);

/// Calls fn for every structurally valid rule with the given consequent,
/// antecedents ordered by size then lexicographically.
void for_each_structural_rule(std::size_t n_items, std::size_t consequent, std::optional<std::size_t> max_antecedent,
                              const std::function<void(const Rule&)>& fn);

/// Every valid rule with support > 0, grouped by consequent item.
/// Uncapped enumeration over more than 20 items throws InstanceTooLarge.
std::vector<Rule> enumerate_rules(const TransactionDatabase& db,
                                  std::optional<std::size_t> max_antecedent = std::nullopt);

/// Row-scan counts.
RuleCounts naive_counts(const Rule& rule, const TransactionDatabase& db);

/// Same contract as evaluate_rule, computed from naive_counts.
RuleMetrics naive_evaluate(const Rule& rule, const TransactionDatabase& db);

struct ExactFront {
    std::vector<Rule> rules;
    std::vector<RuleMetrics> metrics;
    std::vector<ObjectiveVector> objectives;
    Variant variant = Variant::V1;
};

/// All enumerated rules whose objective vector no other enumerated rule
/// dominates. Rules sharing a front vector are all kept. Work is split by
/// consequent item; the result does not depend on exec.
ExactFront exact_pareto_front(const TransactionDatabase& db, Variant variant,
                              std::optional<std::size_t> max_antecedent = std::nullopt,
                              Execution exec = Execution::Serial);

} // namespace armoo
