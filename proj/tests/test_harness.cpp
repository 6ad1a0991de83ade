#include <doctest.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "armoo/harness.hpp"
#include "support.hpp"

using namespace armoo;

namespace {

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> lines_of(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

const char* small_config = R"(
name = "small"
algorithms = ["nsga3", "moead"]
variants = ["v1", "v2"]
pc = [0.8, 0.9]
pm = [0.1]
runs = 2
generations = 8
population = 20
nsga3_divisions = 4
moead_divisions = 4
neighborhood = 5
base_seed = 11

[dataset.synthetic]
transactions = 60
items = 6
density = 0.4
seed = 3

[truefront]
population = 40
generations = 15
)";

FrontRules front_of(std::initializer_list<Rule> rules, const TransactionDatabase& db)
{
    FrontRules f;
    for (const auto& r : rules) {
        f.rules.push_back(r);
        f.metrics.push_back(evaluate_rule(r, db));
    }
    return f;
}

CellResult cell(double pc, double pm, double ratio)
{
    CellResult c;
    c.pc = pc;
    c.pm = pm;
    c.ratio = ratio;
    return c;
}

} // namespace

TEST_CASE("names")
{
    CHECK(parse_algorithm("nsga3") == Algorithm::Nsga3);
    CHECK(parse_algorithm("moead") == Algorithm::Moead);
    CHECK(test::error_of([] { parse_algorithm("spea2"); }) == ErrorCode::InvalidParameter);
    CHECK(framework_name(Algorithm::Nsga3, Variant::V1) == "NSGA-III-ARM-V1");
    CHECK(framework_name(Algorithm::Moead, Variant::V2) == "MOEAD-ARM-V2");
    CHECK(parse_ratio_mode("mean-of-ratios") == RatioMode::MeanOfRatios);
    CHECK(to_string(RatioMode::RatioOfMeans) == "ratio-of-means");
}

TEST_CASE("config parsing")
{
    const auto c = parse_experiment_config(small_config);
    CHECK(c.name == "small");
    CHECK(c.algorithms.size() == 2);
    CHECK(c.pc_grid == std::vector<double>{0.8, 0.9});
    CHECK(c.pm_grid == std::vector<double>{0.1});
    CHECK(c.runs == 2);
    CHECK(c.population == 20);
    REQUIRE(c.synthetic);
    CHECK(c.synthetic->items == 6);
    CHECK(c.truefront.population == 40);
    CHECK(c.truefront.generations == 15);
    CHECK(c.ratio_mode == RatioMode::RatioOfMeans);

    SUBCASE("defaults")
    {
        const auto d = parse_experiment_config("[dataset]\npath = \"x.csv\"\n", "/data");
        CHECK(d.dataset_path == std::filesystem::path("/data/x.csv"));
        CHECK(d.format == DatasetFormat::MatrixCsv);
        CHECK(d.runs == 30);
        CHECK(d.generations == 200);
        CHECK(d.pc_grid == std::vector<double>{0.8, 0.85, 0.9});
        CHECK(d.pm_grid == std::vector<double>{0.1, 0.15, 0.2});
        CHECK(d.theta == 5.0);
    }
    SUBCASE("absolute paths and zeff")
    {
        const auto d = parse_experiment_config(
            "ratio = \"mean-of-ratios\"\n[dataset]\npath = \"/abs/b.txt\"\nformat = \"basket\"\n[zeff]\nv1 = \"f.csv\"\n",
            "/base");
        CHECK(d.dataset_path == std::filesystem::path("/abs/b.txt"));
        CHECK(d.format == DatasetFormat::Basket);
        CHECK(d.zeff.at(Variant::V1) == std::filesystem::path("/base/f.csv"));
        CHECK(d.ratio_mode == RatioMode::MeanOfRatios);
    }
    SUBCASE("errors")
    {
        CHECK(test::error_of([] { parse_experiment_config("runs = 3\n"); }) == ErrorCode::MalformedConfig);
        CHECK(test::error_of([] { parse_experiment_config("[dataset]\npath = \"a\"\nbogus = 1\n"); }) ==
              ErrorCode::MalformedConfig);
        CHECK(test::error_of([] { parse_experiment_config("colour = 1\n[dataset]\npath = \"a\"\n"); }) ==
              ErrorCode::MalformedConfig);
        CHECK(test::error_of([] { parse_experiment_config("runs = \"many\"\n[dataset]\npath = \"a\"\n"); }) ==
              ErrorCode::MalformedConfig);
        CHECK(test::error_of([] { parse_experiment_config("runs = [\n"); }) == ErrorCode::MalformedConfig);
        CHECK(test::error_of([] { parse_experiment_config("runs = 0\n[dataset]\npath = \"a\"\n"); }) ==
              ErrorCode::MalformedConfig);
        CHECK(test::error_of([] { parse_experiment_config("pc = [1.5]\n[dataset]\npath = \"a\"\n"); }) ==
              ErrorCode::InvalidParameter);
        CHECK(test::error_of([] { parse_experiment_config("algorithms = [\"x\"]\n[dataset]\npath = \"a\"\n"); }) ==
              ErrorCode::InvalidParameter);
    }
    SUBCASE("file loading resolves against the config directory")
    {
        test::TempDir dir;
        std::ofstream(dir / "exp.toml") << "[dataset]\npath = \"data.csv\"\n";
        CHECK(load_experiment_config(dir / "exp.toml").dataset_path == dir.path() / "data.csv");
        CHECK(test::error_of([&] { load_experiment_config(dir / "missing.toml"); }) == ErrorCode::IoFailure);
    }
}

TEST_CASE("rule frequency table")
{
    const auto db = test::d5();
    const auto r1 = test::rule({0, 1, 2});
    const auto r2 = test::rule({1, 0, 2});
    const auto r3 = test::rule({0, 2, 1});

    SUBCASE("counts once per front")
    {
        const std::vector<FrontRules> fronts{front_of({r1, r2}, db), front_of({r1}, db), front_of({r1, r3, r1}, db)};
        const auto table = rule_frequency_table(fronts, db);
        REQUIRE(table.size() == 3);
        CHECK(table[0].rule == r1);
        CHECK(table[0].frequency == 3);
        CHECK(table[1].frequency == 1);
        CHECK(table[2].frequency == 1);
        std::set<std::vector<Gene>> tail{table[1].rule.genes(), table[2].rule.genes()};
        CHECK(tail == std::set<std::vector<Gene>>{r2.genes(), r3.genes()});
        CHECK(table[0].metrics == evaluate_rule(r1, db));
    }
    SUBCASE("identical fronts")
    {
        const std::vector<FrontRules> fronts(4, front_of({r1, r2, r3}, db));
        for (const auto& row : rule_frequency_table(fronts, db)) {
            CHECK(row.frequency == 4);
        }
    }
    SUBCASE("disjoint fronts")
    {
        const std::vector<FrontRules> fronts{front_of({r1}, db), front_of({r2}, db), front_of({r3}, db)};
        const auto table = rule_frequency_table(fronts, db);
        CHECK(table.size() == 3);
        for (const auto& row : table) {
            CHECK(row.frequency == 1);
        }
    }
    SUBCASE("support breaks frequency ties")
    {
        const auto pair = test::rule({0, 1, 0});  // support 0.4
        const std::vector<FrontRules> fronts{front_of({pair, r1}, db)};
        const auto table = rule_frequency_table(fronts, db);
        CHECK(table[0].rule == r1);
        CHECK(table[1].rule == pair);
    }
    CHECK(rule_frequency_table({}, db).empty());
}

TEST_CASE("best cell")
{
    const std::vector<CellResult> cells{cell(0.8, 0.1, 2.0), cell(0.8, 0.2, 5.0), cell(0.9, 0.1, 5.0)};
    CHECK(best_cell_index(cells) == 1);
    const std::vector<CellResult> ties{cell(0.9, 0.1, 3.0), cell(0.8, 0.2, 3.0), cell(0.8, 0.1, 3.0)};
    CHECK(best_cell_index(ties) == 2);
    const double inf = std::numeric_limits<double>::infinity();
    const std::vector<CellResult> infinite{cell(0.8, 0.1, 1e9), cell(0.9, 0.2, inf)};
    CHECK(best_cell_index(infinite) == 1);
    CHECK(test::error_of([] { best_cell_index({}); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("cell summary")
{
    CellResult c;
    c.runs = {{0.5, 0.25, 1}};
    summarize_cell(c, RatioMode::RatioOfMeans);
    CHECK(c.mean_hv == 0.5);
    CHECK(c.mean_igd == 0.25);
    CHECK(c.ratio == 2.0);
    CHECK(c.clamped == 1);

    c.runs = {{0.4, 0.2, 0}, {0.6, 0.6, 2}};
    summarize_cell(c, RatioMode::RatioOfMeans);
    CHECK(c.ratio == doctest::Approx(1.25));
    summarize_cell(c, RatioMode::MeanOfRatios);
    CHECK(c.ratio == doctest::Approx(1.5));
    CHECK(c.clamped == 2);

    c.runs = {{0.7, 0.0, 0}};
    summarize_cell(c, RatioMode::RatioOfMeans);
    CHECK(std::isinf(c.ratio));
    CHECK(format_ratio(c.ratio) == "inf");
}

TEST_CASE("run seeds depend only on their own cell")
{
    const auto s = run_seed(1, Algorithm::Nsga3, Variant::V1, 0.8, 0.1, 0);
    CHECK(s == run_seed(1, Algorithm::Nsga3, Variant::V1, 0.8, 0.1, 0));
    std::set<std::uint64_t> seeds{s,
                                  run_seed(2, Algorithm::Nsga3, Variant::V1, 0.8, 0.1, 0),
                                  run_seed(1, Algorithm::Moead, Variant::V1, 0.8, 0.1, 0),
                                  run_seed(1, Algorithm::Nsga3, Variant::V2, 0.8, 0.1, 0),
                                  run_seed(1, Algorithm::Nsga3, Variant::V1, 0.85, 0.1, 0),
                                  run_seed(1, Algorithm::Nsga3, Variant::V1, 0.8, 0.15, 0),
                                  run_seed(1, Algorithm::Nsga3, Variant::V1, 0.8, 0.1, 1)};
    CHECK(seeds.size() == 7);
}

TEST_CASE("small experiment")
{
    const auto config = parse_experiment_config(small_config);
    const auto db = load_experiment_dataset(config);
    CHECK(db.n_transactions() == 60);
    CHECK(db.n_items() == 6);

    test::TempDir a;
    test::TempDir b;
    const auto serial = run_experiment(config, db, {1, a.path(), {}});
    std::vector<std::string> messages;
    const auto parallel = run_experiment(config, db, {4, b.path(), [&](std::string_view m) { messages.emplace_back(m); }});
    CHECK_FALSE(messages.empty());
    write_reports(serial, db, a.path());
    write_reports(parallel, db, b.path());

    const std::vector<std::string> files{"hv_igd_v1.csv",         "hv_igd_v2.csv",         "top_rules_nsga3_v1.csv",
                                         "top_rules_nsga3_v2.csv", "top_rules_moead_v1.csv", "top_rules_moead_v2.csv",
                                         "report.json",            "truefront_v1.csv",      "truefront_v2.csv"};
    for (const auto& f : files) {
        INFO(f);
        REQUIRE(std::filesystem::exists(a / f));
        CHECK(slurp(a / f) == slurp(b / f));
    }
    CHECK(std::filesystem::exists(a / "timing.csv"));

    REQUIRE(serial.groups.size() == 4);
    CHECK(serial.groups[0].algorithm == Algorithm::Nsga3);
    CHECK(serial.groups[1].variant == Variant::V2);
    CHECK(serial.groups[2].algorithm == Algorithm::Moead);
    for (const auto& g : serial.groups) {
        REQUIRE(g.cells.size() == 2);
        CHECK(g.cells[0].pc == 0.8);
        CHECK(g.cells[1].pc == 0.9);
        CHECK(g.best_cell == best_cell_index(g.cells));
        CHECK(g.top_rules.size() <= config.top_rules);
        for (const auto& c : g.cells) {
            CHECK(c.runs.size() == 2);
            CHECK(c.evaluations > 0);
            for (const auto& r : c.runs) {
                CHECK(r.hv >= 0.0);
                CHECK(r.hv <= 1.0);
                CHECK(r.igd >= 0.0);
            }
        }
        for (std::size_t i = 1; i < g.top_rules.size(); ++i) {
            CHECK(g.top_rules[i - 1].frequency >= g.top_rules[i].frequency);
        }
        for (const auto& row : g.top_rules) {
            CHECK(row.frequency >= 1);
            CHECK(row.frequency <= config.runs);
            CHECK(row.metrics == evaluate_rule(row.rule, db));
        }
    }

    const auto hv = lines_of(slurp(a / "hv_igd_v1.csv"));
    REQUIRE(hv.size() == 5);
    CHECK(hv[0] == "problem,framework,prob cross,prob mut,mean hv,mean igd,hv/igd,evaluations,best");
    CHECK(hv[1].starts_with("synthetic-N60-M6,NSGA-III-ARM-V1,0.8,0.1,"));
    CHECK(hv[3].starts_with("synthetic-N60-M6,MOEAD-ARM-V1,0.8,0.1,"));
    std::size_t best = 0;
    for (std::size_t i = 1; i < hv.size(); ++i) {
        best += hv[i].ends_with(",yes") ? 1 : 0;
    }
    CHECK(best == 2);

    const auto top = lines_of(slurp(a / "top_rules_nsga3_v2.csv"));
    REQUIRE_FALSE(top.empty());
    CHECK(top[0] == "frequency,antecedent,consequent,confidence,lift,interestingness");
    CHECK(lines_of(slurp(a / "top_rules_moead_v1.csv"))[0] == "frequency,antecedent,consequent,support,confidence,lift");

    const auto json = nlohmann::json::parse(slurp(a / "report.json"));
    CHECK(json["name"] == "small");
    CHECK(json["items"] == 6);
    CHECK(json["frameworks"].size() == 4);
    CHECK(json["reference_fronts"]["v1"]["provenance"] == "big-run-approx");
    CHECK(json["frameworks"][0]["cells"][0]["runs"].size() == 2);
}

TEST_CASE("reference fronts from files")
{
    auto config = parse_experiment_config(small_config);
    config.algorithms = {Algorithm::Nsga3};
    config.variants = {Variant::V1};
    config.runs = 1;
    config.no_truefront = true;
    const auto db = load_experiment_dataset(config);
    CHECK(test::error_of([&] { run_experiment(config, db); }) == ErrorCode::MissingReferenceFront);

    test::TempDir dir;
    // A front that every run dominates in IGD terms still yields finite numbers.
    write_front_csv(dir / "ref.csv", std::vector<Point3>{{0.1, 0.5, 0.5}, {0.2, 0.4, 0.6}});
    config.zeff[Variant::V1] = dir / "ref.csv";
    const auto report = run_experiment(config, db);
    CHECK(report.zeff.at(Variant::V1).provenance == FrontProvenance::File);
    CHECK(report.zeff.at(Variant::V1).points.size() == 2);
    CHECK(report.groups.size() == 1);

    config.zeff[Variant::V1] = dir / "missing.csv";
    CHECK(test::error_of([&] { run_experiment(config, db); }) == ErrorCode::IoFailure);
}

TEST_CASE("infinite ratios are rendered as text")
{
    AggregateReport r;
    r.name = "x";
    r.problem = "p";
    r.runs = 1;
    GroupReport g;
    CellResult c = cell(0.8, 0.1, std::numeric_limits<double>::infinity());
    c.runs = {{0.5, 0.0, 0}};
    c.mean_hv = 0.5;
    g.cells = {c};
    r.groups = {g};
    const auto db = test::d5();
    CHECK(lines_of(hv_igd_csv(r, Variant::V1))[1] == "p,NSGA-III-ARM-V1,0.8,0.1,0.500000,0.000000,inf,0,yes");
    const auto json = nlohmann::json::parse(report_json(r, db));
    CHECK(json["frameworks"][0]["cells"][0]["hv_igd"] == "inf");
}
