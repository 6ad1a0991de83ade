#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "armoo/dataset.hpp"

namespace armoo {

/// Role of one item in a rule. Values match the ternary chromosome layout.
enum class Gene : std::uint8_t { Antecedent = 0, Consequent = 1, Absent = 2 };

/// An association rule as one gene per item. Value-equal rules are
/// duplicates.
class Rule {
public:
    Rule() = default;
    explicit Rule(std::vector<Gene> genes) : genes_(std::move(genes)) {}
    /// From the 0/1/2 integer form; any other digit is MalformedEncoding.
    static Rule from_digits(std::initializer_list<int> digits);

    [[nodiscard]] std::size_t size() const noexcept { return genes_.size(); }
    [[nodiscard]] Gene operator[](std::size_t i) const noexcept { return genes_[i]; }
    Gene& operator[](std::size_t i) noexcept { return genes_[i]; }
    [[nodiscard]] const std::vector<Gene>& genes() const noexcept { return genes_; }

    [[nodiscard]] std::size_t count(Gene g) const noexcept;
    [[nodiscard]] std::vector<std::uint32_t> items_with(Gene g) const;
    [[nodiscard]] std::vector<std::uint32_t> antecedent() const { return items_with(Gene::Antecedent); }
    /// Index of the first consequent gene, or size() if there is none.
    [[nodiscard]] std::size_t consequent() const noexcept;

    /// Exactly one consequent and at least one antecedent item.
    [[nodiscard]] bool is_well_formed() const noexcept;

    friend bool operator==(const Rule&, const Rule&) = default;

private:
    std::vector<Gene> genes_;
};

struct RuleHash {
    std::size_t operator()(const Rule& r) const noexcept;
};

/// Two bits per item: antecedent 11, consequent 10, absent 00 (01 also reads
/// as absent).
std::string encode_bits(const Rule& rule);
Rule decode_bits(std::string_view bits);

struct RuleMetrics {
    double support = 0.0;
    double confidence = 0.0;
    double lift = 0.0;
    double interestingness = 0.0;

    friend bool operator==(const RuleMetrics&, const RuleMetrics&) = default;
};

/// Raw transaction counts behind a rule's metrics.
struct RuleCounts {
    std::size_t antecedent = 0;  // transactions containing A
    std::size_t consequent = 0;  // transactions containing B
    std::size_t both = 0;        // transactions containing A and B
    std::size_t transactions = 0;
};

/// Counts via bitset intersection. Requires a well-formed rule.
RuleCounts count_rule(const Rule& rule, const TransactionDatabase& db);

/// Support count of the union of antecedent and consequent, 0 for rules
/// with no items.
std::size_t union_support_count(const Rule& rule, const TransactionDatabase& db);

/// Each metric is one division of exact integer products converted to double.
RuleMetrics metrics_from_counts(const RuleCounts& counts);

RuleMetrics evaluate_rule(const Rule& rule, const TransactionDatabase& db);

enum class Variant { V1, V2 };

Variant parse_variant(std::string_view name);
std::string_view to_string(Variant v) noexcept;

/// Three objectives, all maximized: V1 = (support, confidence, lift),
/// V2 = (confidence, lift, interestingness).
struct ObjectiveVector {
    std::array<double, 3> values{};
    Variant variant = Variant::V1;

    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values[i]; }
    friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

ObjectiveVector objective_vector(const RuleMetrics& m, Variant variant) noexcept;

/// Names of the three objective columns for a variant.
std::array<std::string_view, 3> objective_names(Variant variant) noexcept;

/// {"antecedent": [...], "consequent": [...], "support": ..., ...}; labels sorted.
nlohmann::ordered_json rule_to_json(const Rule& rule, const RuleMetrics& metrics, const TransactionDatabase& db);

/// Sorted antecedent labels joined with ','.
std::string antecedent_label(const Rule& rule, const TransactionDatabase& db);

} // namespace armoo
