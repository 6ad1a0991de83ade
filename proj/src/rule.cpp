#include "armoo/rule.hpp"

#include <algorithm>

#include "armoo/error.hpp"

namespace armoo {

Rule Rule::from_digits(std::initializer_list<int> digits)
{
    std::vector<Gene> genes;
    genes.reserve(digits.size());
    for (int d : digits) {
        if (d < 0 || d > 2) {
            throw Error(ErrorCode::MalformedEncoding, "gene digit " + std::to_string(d));
        }
        genes.push_back(static_cast<Gene>(d));
    }
    return Rule(std::move(genes));
}

std::size_t Rule::count(Gene g) const noexcept
{
    return static_cast<std::size_t>(std::count(genes_.begin(), genes_.end(), g));
}

std::vector<std::uint32_t> Rule::items_with(Gene g) const
{
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < genes_.size(); ++i) {
        if (genes_[i] == g) {
            out.push_back(static_cast<std::uint32_t>(i));
        }
    }
    return out;
}

std::size_t Rule::consequent() const noexcept
{
    return static_cast<std::size_t>(std::find(genes_.begin(), genes_.end(), Gene::Consequent) - genes_.begin());
}

bool Rule::is_well_formed() const noexcept
{
    return count(Gene::Consequent) == 1 && count(Gene::Antecedent) >= 1;
}

std::size_t RuleHash::operator()(const Rule& r) const noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto g : r.genes()) {
        h ^= static_cast<std::uint8_t>(g);
        h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
}

std::string encode_bits(const Rule& rule)
{
    std::string bits;
    bits.reserve(rule.size() * 2);
    for (auto g : rule.genes()) {
        switch (g) {
        case Gene::Antecedent: bits += "11"; break;
        case Gene::Consequent: bits += "10"; break;
        case Gene::Absent: bits += "00"; break;
        }
    }
    return bits;
}

Rule decode_bits(std::string_view bits)
{
    if (bits.size() % 2 != 0) {
        throw Error(ErrorCode::MalformedEncoding, "odd bit-string length " + std::to_string(bits.size()));
    }
    std::vector<Gene> genes;
    genes.reserve(bits.size() / 2);
    for (std::size_t i = 0; i < bits.size(); i += 2) {
        const char hi = bits[i];
        const char lo = bits[i + 1];
        if ((hi != '0' && hi != '1') || (lo != '0' && lo != '1')) {
            throw Error(ErrorCode::MalformedEncoding, "non-binary character at position " + std::to_string(i));
        }
        if (hi == '1') {
            genes.push_back(lo == '1' ? Gene::Antecedent : Gene::Consequent);
        } else {
            genes.push_back(Gene::Absent);
        }
    }
    return Rule(std::move(genes));
}

RuleCounts count_rule(const Rule& rule, const TransactionDatabase& db)
{
    if (rule.size() != db.n_items()) {
        throw Error(ErrorCode::GeneLengthMismatch, "rule has " + std::to_string(rule.size()) + " genes, database has " +
                                                       std::to_string(db.n_items()) + " items");
    }
    if (!rule.is_well_formed()) {
        throw Error(ErrorCode::InvalidRule, "rule needs one consequent and at least one antecedent item");
    }
    const auto antecedent = rule.antecedent();
    const auto& consequent = db.column(rule.consequent());

    RuleCounts c;
    c.transactions = db.n_transactions();
    c.consequent = consequent.count();
    if (antecedent.size() == 1) {
        const auto& a = db.column(antecedent[0]);
        c.antecedent = a.count();
        c.both = a.and_count(consequent);
        return c;
    }
    Bitset acc = db.column(antecedent[0]);
    for (std::size_t k = 1; k < antecedent.size(); ++k) {
        acc &= db.column(antecedent[k]);
    }
    c.antecedent = acc.count();
    c.both = acc.and_count(consequent);
    return c;
}

std::size_t union_support_count(const Rule& rule, const TransactionDatabase& db)
{
    std::vector<std::uint32_t> items;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        if (rule[i] != Gene::Absent) {
            items.push_back(static_cast<std::uint32_t>(i));
        }
    }
    if (items.empty()) {
        return 0;
    }
    return db.support_count(ItemSet(std::move(items), db.n_items()));
}

RuleMetrics metrics_from_counts(const RuleCounts& c)
{
    if (c.antecedent == 0) {
        throw Error(ErrorCode::UndefinedConfidence, "antecedent never occurs");
    }
    if (c.both == 0) {
        throw Error(ErrorCode::InvalidRule, "rule has zero support");
    }
    __extension__ typedef unsigned __int128 wide;
    const wide n = c.transactions;
    const wide na = c.antecedent;
    const wide nb = c.consequent;
    const wide nab = c.both;
    auto ratio = [](wide num, wide den) { return static_cast<double>(num) / static_cast<double>(den); };

    RuleMetrics m;
    m.support = ratio(nab, n);
    m.confidence = ratio(nab, na);
    m.lift = ratio(nab * n, na * nb);
    m.interestingness = ratio(nab * nab * (n - nab), na * nb * n);
    return m;
}

RuleMetrics evaluate_rule(const Rule& rule, const TransactionDatabase& db)
{
    return metrics_from_counts(count_rule(rule, db));
}

Variant parse_variant(std::string_view name)
{
    if (name == "v1" || name == "V1") {
        return Variant::V1;
    }
    if (name == "v2" || name == "V2") {
        return Variant::V2;
    }
    throw Error(ErrorCode::InvalidParameter, "unknown variant '" + std::string(name) + "'");
}

std::string_view to_string(Variant v) noexcept
{
    return v == Variant::V1 ? "v1" : "v2";
}

ObjectiveVector objective_vector(const RuleMetrics& m, Variant variant) noexcept
{
    if (variant == Variant::V1) {
        return {{m.support, m.confidence, m.lift}, variant};
    }
    return {{m.confidence, m.lift, m.interestingness}, variant};
}

std::array<std::string_view, 3> objective_names(Variant variant) noexcept
{
    if (variant == Variant::V1) {
        return {"support", "confidence", "lift"};
    }
    return {"confidence", "lift", "interestingness"};
}

namespace {

std::vector<std::string> sorted_labels(const std::vector<std::uint32_t>& items, const TransactionDatabase& db)
{
    std::vector<std::string> labels;
    labels.reserve(items.size());
    for (auto i : items) {
        labels.push_back(db.item_names()[i]);
    }
    std::sort(labels.begin(), labels.end());
    return labels;
}

} // namespace

nlohmann::ordered_json rule_to_json(const Rule& rule, const RuleMetrics& metrics, const TransactionDatabase& db)
{
    nlohmann::ordered_json j;
    j["antecedent"] = sorted_labels(rule.antecedent(), db);
    j["consequent"] = sorted_labels(rule.items_with(Gene::Consequent), db);
    j["support"] = metrics.support;
    j["confidence"] = metrics.confidence;
    j["lift"] = metrics.lift;
    j["interestingness"] = metrics.interestingness;
    return j;
}

std::string antecedent_label(const Rule& rule, const TransactionDatabase& db)
{
    std::string out;
    for (const auto& label : sorted_labels(rule.antecedent(), db)) {
        if (!out.empty()) {
            out += ',';
        }
        out += label;
    }
    return out;
}

} // namespace armoo
