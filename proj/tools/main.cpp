#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "armoo/dataset.hpp"
#include "armoo/error.hpp"
#include "armoo/harness.hpp"
#include "armoo/moead.hpp"
#include "armoo/nsga3.hpp"
#include "armoo/oracle.hpp"
#include "armoo/quality.hpp"

namespace fs = std::filesystem;
using namespace armoo;

namespace {

struct DatasetArgs {
    std::string path;
    std::string format = "matrix-csv";
};

void add_dataset_options(CLI::App* cmd, DatasetArgs& args)
{
    cmd->add_option("--dataset", args.path, "Transaction file")->required();
    cmd->add_option("--format", args.format, "matrix-csv or basket")->check(CLI::IsMember({"matrix-csv", "basket"}));
}

TransactionDatabase load(const DatasetArgs& args)
{
    return load_transactions(args.path, parse_dataset_format(args.format));
}

void write_file(const fs::path& path, const std::string& text)
{
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
    }
}

std::string rules_json(const std::vector<Rule>& rules, const std::vector<RuleMetrics>& metrics,
                       const TransactionDatabase& db)
{
    auto arr = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < rules.size(); ++i) {
        arr.push_back(rule_to_json(rules[i], metrics[i], db));
    }
    return arr.dump(2) + "\n";
}

void write_individuals(const fs::path& dir, const std::string& stem, const std::vector<Individual>& inds,
                       const TransactionDatabase& db)
{
    std::vector<Rule> rules;
    std::vector<RuleMetrics> metrics;
    std::vector<Point3> pts;
    for (const auto& ind : inds) {
        rules.push_back(ind.rule);
        metrics.push_back(ind.metrics);
        pts.push_back(ind.objectives.values);
    }
    write_front_csv(dir / (stem + ".csv"), pts);
    write_file(dir / (stem + "_rules.json"), rules_json(rules, metrics, db));
}

struct MineArgs {
    DatasetArgs data;
    std::string algo;
    std::string variant;
    double pc = 0.9;
    double pm = 0.1;
    std::size_t gens = 200;
    std::size_t pop = 50;
    std::uint64_t seed = 1;
    std::string init = "auto";
    double theta = 5.0;
    std::size_t neighborhood = 20;
    std::string mutation_mode = "per-gene";
    bool dedup = false;
    std::string out;
};

int cmd_mine(const MineArgs& a)
{
    const auto db = load(a.data);
    const auto variant = parse_variant(a.variant);
    VariationParams var;
    var.crossover_prob = a.pc;
    var.mutation_prob = a.pm;
    var.init = parse_init_strategy(a.init);
    var.mutation_mode = parse_mutation_mode(a.mutation_mode);

    RunResult result;
    nlohmann::ordered_json summary;
    summary["algorithm"] = a.algo;
    summary["variant"] = a.variant;
    summary["prob_cross"] = a.pc;
    summary["prob_mut"] = a.pm;
    summary["generations"] = a.gens;
    summary["seed"] = a.seed;
    if (parse_algorithm(a.algo) == Algorithm::Nsga3) {
        Nsga3Params p;
        p.population = a.pop;
        p.generations = a.gens;
        p.divisions = 12;
        p.variation = var;
        p.seed = a.seed;
        result = run_nsga3(db, variant, p);
        summary["population"] = a.pop;
        summary["reference_points"] = das_dennis_count(p.divisions);
    } else {
        // The population of MOEA/D is the weight lattice; pick the smallest
        // lattice holding --pop subproblems.
        MoeadParams p;
        p.divisions = divisions_for_count(a.pop);
        p.neighborhood = a.neighborhood;
        p.generations = a.gens;
        p.theta = a.theta;
        p.variation = var;
        p.seed = a.seed;
        p.dedup_working_set = a.dedup;
        result = run_moead(db, variant, p);
        summary["population"] = das_dennis_count(p.divisions);
        summary["neighborhood"] = a.neighborhood;
        summary["theta"] = a.theta;
    }
    summary["init"] = to_string(result.init);
    summary["evaluations"] = result.evaluations;
    summary["front_size"] = result.front.size();
    summary["archive_size"] = result.archive.size();

    const fs::path out(a.out);
    fs::create_directories(out);
    write_individuals(out, "front", result.front, db);
    write_individuals(out, "archive", result.archive, db);
    write_file(out / "summary.json", summary.dump(2) + "\n");
    std::cout << fmt::format("{} rules on the final front, {} in the archive, {} evaluations\n", result.front.size(),
                             result.archive.size(), result.evaluations);
    return 0;
}

int run(int argc, char** argv)
{
    CLI::App app{"Multi-objective association rule mining with NSGA-III and MOEA/D"};
    app.require_subcommand(1);

    MineArgs mine;
    auto* mine_cmd = app.add_subcommand("mine", "Run one optimizer and write its front");
    add_dataset_options(mine_cmd, mine.data);
    mine_cmd->add_option("--algo", mine.algo)->required()->check(CLI::IsMember({"nsga3", "moead"}));
    mine_cmd->add_option("--variant", mine.variant)->required()->check(CLI::IsMember({"v1", "v2"}));
    mine_cmd->add_option("--pc", mine.pc, "Crossover probability")->capture_default_str();
    mine_cmd->add_option("--pm", mine.pm, "Mutation probability")->capture_default_str();
    mine_cmd->add_option("--gens", mine.gens)->capture_default_str();
    mine_cmd->add_option("--pop", mine.pop)->capture_default_str();
    mine_cmd->add_option("--seed", mine.seed)->capture_default_str();
    mine_cmd->add_option("--init", mine.init)->check(CLI::IsMember({"random", "seeded", "auto"}))->capture_default_str();
    mine_cmd->add_option("--theta", mine.theta, "PBI penalty (MOEA/D)")->capture_default_str();
    mine_cmd->add_option("--neighborhood", mine.neighborhood, "Neighbourhood size (MOEA/D)")->capture_default_str();
    mine_cmd->add_option("--mutation-mode", mine.mutation_mode)
        ->check(CLI::IsMember({"per-gene", "per-individual"}))
        ->capture_default_str();
    mine_cmd->add_flag("--dedup", mine.dedup, "Keep the MOEA/D population free of duplicates");
    mine_cmd->add_option("--out", mine.out)->required();

    DatasetArgs tf_data;
    std::string tf_variant;
    std::uint64_t tf_seed = 1;
    std::string tf_out;
    TrueFrontSettings tf_settings;
    auto* tf_cmd = app.add_subcommand("truefront", "Approximate the true front with a large NSGA-III run");
    add_dataset_options(tf_cmd, tf_data);
    tf_cmd->add_option("--variant", tf_variant)->required()->check(CLI::IsMember({"v1", "v2"}));
    tf_cmd->add_option("--seed", tf_seed)->capture_default_str();
    tf_cmd->add_option("--pop", tf_settings.population)->capture_default_str();
    tf_cmd->add_option("--gens", tf_settings.generations)->capture_default_str();
    tf_cmd->add_option("--out", tf_out)->required();

    std::string ex_config;
    std::size_t ex_workers = 1;
    std::string ex_out;
    bool ex_quiet = false;
    auto* ex_cmd = app.add_subcommand("experiment", "Run a parameter grid and write reports");
    ex_cmd->add_option("--config", ex_config)->required();
    ex_cmd->add_option("--workers", ex_workers)->capture_default_str()->check(CLI::PositiveNumber);
    ex_cmd->add_option("--out", ex_out)->required();
    ex_cmd->add_flag("--quiet", ex_quiet);

    DatasetArgs or_data;
    std::string or_variant;
    std::optional<std::size_t> or_cap;
    std::string or_out;
    auto* or_cmd = app.add_subcommand("oracle", "Enumerate every rule and write the exact front");
    add_dataset_options(or_cmd, or_data);
    or_cmd->add_option("--variant", or_variant)->required()->check(CLI::IsMember({"v1", "v2"}));
    or_cmd->add_option("--max-antecedent", or_cap);
    or_cmd->add_option("--out", or_out)->required();

    std::string ind_front;
    std::string ind_zeff;
    auto* ind_cmd = app.add_subcommand("indicators", "HV and IGD of a front file against a reference front file");
    ind_cmd->add_option("--front", ind_front)->required();
    ind_cmd->add_option("--zeff", ind_zeff)->required();

    std::size_t gen_n = 200;
    std::size_t gen_m = 10;
    double gen_density = 0.4;
    std::uint64_t gen_seed = 1;
    std::string gen_format = "matrix-csv";
    std::string gen_out;
    auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic transaction dataset");
    gen_cmd->add_option("--transactions", gen_n)->capture_default_str();
    gen_cmd->add_option("--items", gen_m)->capture_default_str();
    gen_cmd->add_option("--density", gen_density)->capture_default_str();
    gen_cmd->add_option("--seed", gen_seed)->capture_default_str();
    gen_cmd->add_option("--format", gen_format)->check(CLI::IsMember({"matrix-csv", "basket"}))->capture_default_str();
    gen_cmd->add_option("--out", gen_out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*mine_cmd) {
        return cmd_mine(mine);
    }
    if (*tf_cmd) {
        const auto db = load(tf_data);
        const auto front = approximate_true_front(db, parse_variant(tf_variant), tf_seed, tf_settings);
        const fs::path out(tf_out);
        if (out.has_parent_path()) {
            fs::create_directories(out.parent_path());
        }
        write_front_csv(out, front.points);
        std::cout << fmt::format("{} points written to {}\n", front.points.size(), tf_out);
        return 0;
    }
    if (*ex_cmd) {
        const auto config = load_experiment_config(ex_config);
        const auto db = load_experiment_dataset(config);
        RunOptions opts;
        opts.workers = ex_workers;
        opts.out_dir = fs::path(ex_out);
        if (!ex_quiet) {
            opts.log = [](std::string_view msg) { std::cerr << msg << '\n'; };
        }
        const auto report = run_experiment(config, db, opts);
        write_reports(report, db, ex_out);
        return 0;
    }
    if (*or_cmd) {
        const auto db = load(or_data);
        const auto front = exact_pareto_front(db, parse_variant(or_variant), or_cap, Execution::Parallel);
        const fs::path out(or_out);
        fs::create_directories(out);
        write_front_csv(out / "front.csv", to_points(front.objectives));
        write_file(out / "front_rules.json", rules_json(front.rules, front.metrics, db));
        std::cout << fmt::format("{} rules on the exact front\n", front.rules.size());
        return 0;
    }
    if (*ind_cmd) {
        const auto pts = read_front_csv(fs::path(ind_front));
        const auto zeff_pts = read_front_csv(fs::path(ind_zeff));
        const auto zeff = make_front_approximation(std::span<const Point3>(zeff_pts), FrontProvenance::File);
        const auto r = evaluate_indicators(pts, zeff);
        const std::pair<double, double> run{r.hv, r.igd};
        std::cout << fmt::format("hv {:.10f}\nigd {:.10f}\nhv/igd {}\nclamped {}\npoints {}\nreference_points {}\n",
                                 r.hv, r.igd, format_ratio(hv_igd_ratio(std::span(&run, 1))), r.clamped, pts.size(),
                                 zeff.points.size());
        return 0;
    }
    if (*gen_cmd) {
        const auto db = generate_synthetic(gen_n, gen_m, gen_density, gen_seed);
        std::ostringstream text;
        if (parse_dataset_format(gen_format) == DatasetFormat::MatrixCsv) {
            write_matrix_csv(text, db);
        } else {
            write_basket(text, db);
        }
        write_file(gen_out, text.str());
        return 0;
    }
    return 2;
}

} // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
