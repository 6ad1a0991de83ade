#include <doctest.h>

#include <random>
#include <set>

#include "armoo/oracle.hpp"
#include "armoo/pareto.hpp"
#include "support.hpp"

using namespace armoo;

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

} // namespace

TEST_CASE("structural rule counts")
{
    CHECK(structural_rule_count(2) == 2);
    CHECK(structural_rule_count(3) == 9);
    CHECK(structural_rule_count(10) == 10 * 511);
    CHECK(structural_rule_count(1) == 0);
    CHECK(structural_rule_count(20, 3) == 20 * (binomial(19, 1) + binomial(19, 2) + binomial(19, 3)));
    CHECK(structural_rule_count(6, 99) == structural_rule_count(6));
    CHECK(test::error_of([] { structural_rule_count(5, 0); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("enumeration visits every structural rule once")
{
    for (std::size_t m = 2; m <= 9; ++m) {
        for (std::optional<std::size_t> cap : {std::optional<std::size_t>{}, std::optional<std::size_t>{2}}) {
            std::set<std::vector<Gene>> seen;
            std::size_t visits = 0;
            for (std::size_t c = 0; c < m; ++c) {
                for_each_structural_rule(m, c, cap, [&](const Rule& r) {
                    ++visits;
                    CHECK(r.is_well_formed());
                    CHECK(r.consequent() == c);
                    if (cap) {
                        CHECK(r.count(Gene::Antecedent) <= *cap);
                    }
                    seen.insert(r.genes());
                });
            }
            CHECK(visits == structural_rule_count(m, cap));
            CHECK(seen.size() == visits);
        }
    }
}

TEST_CASE("enumeration keeps supported rules only")
{
    CHECK(enumerate_rules(test::d5()).size() == 9);
    const TransactionDatabase apart({"A", "B", "C"}, {{0, 2}, {1, 2}});
    // A and B never meet: A->C, C->A, B->C, C->B survive.
    CHECK(enumerate_rules(apart).size() == 4);
    std::mt19937_64 g(1);
    const auto db = test::random_db(g, 40, 7, 0.3);
    for (const auto& r : enumerate_rules(db)) {
        auto items = r.antecedent();
        items.push_back(static_cast<std::uint32_t>(r.consequent()));
        CHECK(test::rows_containing(db, items) > 0);
    }
}

TEST_CASE("uncapped enumeration refuses wide instances")
{
    const auto wide = generate_synthetic(30, 21, 0.3, 1);
    CHECK(test::error_of([&] { enumerate_rules(wide); }) == ErrorCode::InstanceTooLarge);
    CHECK(test::error_of([&] { exact_pareto_front(wide, Variant::V1); }) == ErrorCode::InstanceTooLarge);
    CHECK_FALSE(enumerate_rules(wide, 1).empty());
    CHECK_FALSE(exact_pareto_front(wide, Variant::V2, 2).rules.empty());
}

TEST_CASE("naive evaluation")
{
    const auto db = test::d5();
    const auto m = naive_evaluate(test::rule({0, 1, 2}), db);
    CHECK(m.support == doctest::Approx(0.6));
    CHECK(m.confidence == doctest::Approx(0.75));
    CHECK(m.lift == doctest::Approx(0.9375));
    CHECK(m.interestingness == doctest::Approx(0.225));
    const TransactionDatabase apart({"A", "B"}, {{0}, {1}});
    CHECK(test::error_of([&] { naive_evaluate(test::rule({0, 1}), apart); }) == ErrorCode::InvalidRule);
    CHECK(test::error_of([&] { naive_evaluate(test::rule({0, 1}), db); }) == ErrorCode::GeneLengthMismatch);

    std::mt19937_64 g(2);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n_items = 2 + g() % 10;
        const auto rdb = test::random_db(g, 1 + g() % 200, n_items, 0.5);
        const auto r = test::random_valid_rule(g, n_items);
        if (naive_counts(r, rdb).both > 0) {
            CHECK(naive_evaluate(r, rdb) == evaluate_rule(r, rdb));
        }
    }
}

TEST_CASE("exact front of the five-transaction example")
{
    // Every item occurs four times, so all six single-antecedent rules share
    // (0.6, 0.75, 0.9375); every two-antecedent rule has (0.4, 2/3, 5/6).
    const auto db = test::d5();
    const auto pair_rule = naive_evaluate(test::rule({0, 1, 0}), db);
    CHECK(pair_rule.support == doctest::Approx(0.4));
    CHECK(pair_rule.confidence == doctest::Approx(2.0 / 3.0));
    CHECK(pair_rule.lift == doctest::Approx(5.0 / 6.0));

    const auto front = exact_pareto_front(db, Variant::V1);
    CHECK(front.variant == Variant::V1);
    REQUIRE(front.rules.size() == 6);
    for (std::size_t i = 0; i < front.rules.size(); ++i) {
        CHECK(front.rules[i].count(Gene::Antecedent) == 1);
        CHECK(front.objectives[i].values == Point3{0.6, 0.75, 0.9375});
        CHECK(front.metrics[i] == naive_evaluate(front.rules[i], db));
    }
}

TEST_CASE("a dominating rule is the whole front")
{
    // B -> A has confidence 1, A -> B only 0.5 at the same support and lift.
    const TransactionDatabase db({"A", "B"}, {{0, 1}, {0}});
    const auto front = exact_pareto_front(db, Variant::V1);
    REQUIRE(front.rules.size() == 1);
    CHECK(front.rules[0] == test::rule({1, 0}));
}

TEST_CASE("exact front covers every rule and is stable")
{
    std::mt19937_64 g(3);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t m = 2 + g() % 7;
        const auto db = test::random_db(g, 20 + g() % 100, m, 0.3 + 0.1 * static_cast<double>(g() % 4));
        const auto v = trial % 2 == 0 ? Variant::V1 : Variant::V2;
        const auto front = exact_pareto_front(db, v);
        const auto par = exact_pareto_front(db, v, std::nullopt, Execution::Parallel);
        CHECK(front.rules == par.rules);
        CHECK(front.objectives == par.objectives);

        std::set<std::vector<Gene>> on_front;
        for (const auto& r : front.rules) {
            on_front.insert(r.genes());
        }
        for (const auto& r : enumerate_rules(db)) {
            const auto o = objective_vector(naive_evaluate(r, db), v).values;
            bool covered = on_front.contains(r.genes());
            for (const auto& f : front.objectives) {
                CHECK_FALSE(dominates_max(o, f.values));
                covered = covered || dominates_max(f.values, o);
            }
            CHECK(covered);
        }
        // Filtering the front again removes nothing.
        const auto pts = to_minimization(front.objectives);
        CHECK(sort_fronts(pts).fronts.size() == (pts.empty() ? 0 : 1));
    }
}
