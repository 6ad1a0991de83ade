#include "armoo/variation.hpp"

#include <unordered_set>

#include "armoo/error.hpp"

namespace armoo {

namespace {

constexpr std::size_t probe_draws = 512;
constexpr std::uint64_t probe_seed = 0x5eed5eed5eedULL;

std::size_t pick_with(const Rule& r, Gene g, Rng& rng)
{
    const auto positions = r.items_with(g);
    return positions[rng.below(positions.size())];
}

} // namespace

InitStrategy parse_init_strategy(std::string_view name)
{
    if (name == "random") {
        return InitStrategy::Random;
    }
    if (name == "seeded") {
        return InitStrategy::Seeded;
    }
    if (name == "auto") {
        return InitStrategy::Auto;
    }
    throw Error(ErrorCode::InvalidParameter, "unknown init strategy '" + std::string(name) + "'");
}

std::string_view to_string(InitStrategy s) noexcept
{
    switch (s) {
    case InitStrategy::Random: return "random";
    case InitStrategy::Seeded: return "seeded";
    case InitStrategy::Auto: return "auto";
    }
    return "auto";
}

MutationMode parse_mutation_mode(std::string_view name)
{
    if (name == "per-gene") {
        return MutationMode::PerGene;
    }
    if (name == "per-individual") {
        return MutationMode::PerIndividual;
    }
    throw Error(ErrorCode::InvalidParameter, "unknown mutation mode '" + std::string(name) + "'");
}

void VariationParams::validate() const
{
    if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0)) {
        throw Error(ErrorCode::InvalidParameter, "crossover probability must lie in [0, 1]");
    }
    if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0)) {
        throw Error(ErrorCode::InvalidParameter, "mutation probability must lie in [0, 1]");
    }
    if (retry_budget == 0) {
        throw Error(ErrorCode::InvalidParameter, "retry budget must be positive");
    }
}

InitStrategy resolve_init_strategy(InitStrategy requested, const TransactionDatabase& db)
{
    if (requested != InitStrategy::Auto) {
        return requested;
    }
    if (db.density() < 0.1) {
        return InitStrategy::Seeded;
    }
    if (db.n_items() < 2) {
        return InitStrategy::Random;
    }
    Rng probe(probe_seed);
    std::size_t hits = 0;
    for (std::size_t k = 0; k < probe_draws; ++k) {
        if (union_support_count(random_rule(db.n_items(), probe), db) > 0) {
            ++hits;
        }
    }
    // below 1% the random strategy spends most of its retry budget on misses
    return hits * 100 < probe_draws ? InitStrategy::Seeded : InitStrategy::Random;
}

void structural_repair(Rule& r, Rng& rng)
{
    if (r.size() < 2) {
        throw Error(ErrorCode::TooFewItems, "a rule needs at least two items");
    }
    while (r.count(Gene::Consequent) > 1) {
        r[pick_with(r, Gene::Consequent, rng)] = Gene::Antecedent;
    }
    if (r.count(Gene::Consequent) == 0) {
        if (r.count(Gene::Antecedent) > 0) {
            r[pick_with(r, Gene::Antecedent, rng)] = Gene::Consequent;
        } else {
            const auto a = rng.below(r.size());
            auto c = rng.below(r.size() - 1);
            if (c >= a) {
                ++c;
            }
            r[a] = Gene::Antecedent;
            r[c] = Gene::Consequent;
        }
    }
    if (r.count(Gene::Antecedent) == 0) {
        r[pick_with(r, Gene::Absent, rng)] = Gene::Antecedent;
    }
}

Rule random_rule(std::size_t n_items, Rng& rng)
{
    if (n_items < 2) {
        throw Error(ErrorCode::TooFewItems, "a rule needs at least two items");
    }
    std::vector<Gene> genes(n_items);
    for (auto& g : genes) {
        g = static_cast<Gene>(rng.below(3));
    }
    Rule r(std::move(genes));
    structural_repair(r, rng);
    return r;
}

Rule transaction_seeded_rule(const TransactionDatabase& db, Rng& rng)
{
    std::size_t chosen = db.n_transactions();
    // cheap rejection sampling first; scan only when eligible rows are rare
    for (int attempt = 0; attempt < 64; ++attempt) {
        const auto t = rng.below(db.n_transactions());
        if (db.transaction(t).size() >= 2) {
            chosen = t;
            break;
        }
    }
    if (chosen == db.n_transactions()) {
        std::vector<std::size_t> eligible;
        for (std::size_t t = 0; t < db.n_transactions(); ++t) {
            if (db.transaction(t).size() >= 2) {
                eligible.push_back(t);
            }
        }
        if (eligible.empty()) {
            throw Error(ErrorCode::SeedingImpossible, "no transaction holds two or more items");
        }
        chosen = eligible[rng.below(eligible.size())];
    }
    const auto items = db.transaction(chosen);
    std::vector<Gene> genes(db.n_items(), Gene::Absent);
    for (auto i : items) {
        genes[i] = Gene::Antecedent;
    }
    genes[items[rng.below(items.size())]] = Gene::Consequent;
    return Rule(std::move(genes));
}

std::pair<Rule, Rule> crossover_at(const Rule& a, const Rule& b, std::size_t cut)
{
    if (a.size() != b.size()) {
        throw Error(ErrorCode::GeneLengthMismatch, "parents differ in length");
    }
    std::vector<Gene> c1(a.genes());
    std::vector<Gene> c2(b.genes());
    for (std::size_t i = cut; i < a.size(); ++i) {
        std::swap(c1[i], c2[i]);
    }
    return {Rule(std::move(c1)), Rule(std::move(c2))};
}

std::pair<Rule, Rule> crossover(const Rule& a, const Rule& b, double pc, Rng& rng)
{
    if (a.size() != b.size()) {
        throw Error(ErrorCode::GeneLengthMismatch, "parents differ in length");
    }
    if (a.size() < 2 || !rng.bernoulli(pc)) {
        return {a, b};
    }
    const auto cut = 1 + rng.below(a.size() - 1);
    return crossover_at(a, b, cut);
}

Rule mutate(const Rule& r, double pm, Rng& rng, MutationMode mode)
{
    auto flip = [&rng](Gene g) { return static_cast<Gene>((static_cast<int>(g) + 1 + static_cast<int>(rng.below(2))) % 3); };
    Rule out = r;
    if (mode == MutationMode::PerGene) {
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (rng.bernoulli(pm)) {
                out[i] = flip(out[i]);
            }
        }
    } else if (out.size() > 0 && rng.bernoulli(pm)) {
        const auto i = rng.below(out.size());
        out[i] = flip(out[i]);
    }
    return out;
}

RuleSource::RuleSource(const TransactionDatabase& db, InitStrategy strategy, std::size_t retry_budget)
    : db_(&db)
    , strategy_(strategy)
    , retry_budget_(retry_budget)
{
    if (strategy == InitStrategy::Auto) {
        throw Error(ErrorCode::InvalidParameter, "rule source needs a resolved init strategy");
    }
    if (db.n_items() < 2) {
        throw Error(ErrorCode::TooFewItems, "a rule needs at least two items");
    }
}

Rule RuleSource::fresh(Rng& rng) const
{
    if (strategy_ == InitStrategy::Seeded) {
        return transaction_seeded_rule(*db_, rng);
    }
    for (std::size_t attempt = 0; attempt < retry_budget_; ++attempt) {
        Rule r = random_rule(db_->n_items(), rng);
        if (union_support_count(r, *db_) > 0) {
            return r;
        }
    }
    throw Error(ErrorCode::RepairExhausted,
                std::to_string(retry_budget_) + " random rules in a row had zero support; try --init seeded");
}

Rule repair(Rule r, const RuleSource& source, Rng& rng)
{
    if (r.size() != source.db().n_items()) {
        throw Error(ErrorCode::GeneLengthMismatch, "rule length differs from item count");
    }
    structural_repair(r, rng);
    if (union_support_count(r, source.db()) == 0) {
        return source.fresh(rng);
    }
    return r;
}

void dedup(std::vector<Rule>& rules, const RuleSource& source, Rng& rng, const std::vector<Rule>& reserved)
{
    std::unordered_set<Rule, RuleHash> seen(reserved.begin(), reserved.end());
    for (auto& r : rules) {
        if (seen.contains(r)) {
            bool replaced = false;
            for (std::size_t attempt = 0; attempt < source.retry_budget(); ++attempt) {
                Rule candidate = source.fresh(rng);
                if (!seen.contains(candidate)) {
                    r = std::move(candidate);
                    replaced = true;
                    break;
                }
            }
            if (!replaced) {
                throw Error(ErrorCode::PopulationTooLargeForRuleSpace,
                            "no new distinct rule found after " + std::to_string(source.retry_budget()) + " draws");
            }
        }
        seen.insert(r);
    }
}

std::vector<Rule> initial_rules(std::size_t n, const RuleSource& source, Rng& rng, bool distinct)
{
    std::vector<Rule> rules;
    rules.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        rules.push_back(source.fresh(rng));
    }
    if (distinct) {
        dedup(rules, source, rng);
    }
    return rules;
}

} // namespace armoo
