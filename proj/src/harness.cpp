#include "armoo/harness.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <exception>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <toml.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "armoo/error.hpp"
#include "armoo/moead.hpp"
#include "armoo/nsga3.hpp"
#include "armoo/random.hpp"

namespace armoo {

namespace {

[[noreturn]] void config_error(const std::string& what)
{
    throw Error(ErrorCode::MalformedConfig, what);
}

void reject_unknown_keys(const toml::table& table, std::initializer_list<std::string_view> known,
                         std::string_view where)
{
    for (const auto& [key, _] : table) {
        if (std::find(known.begin(), known.end(), key.str()) == known.end()) {
            config_error(fmt::format("unknown key '{}' in {}", key.str(), where));
        }
    }
}

template <typename T>
std::optional<T> get_value(const toml::table& table, std::string_view key)
{
    const auto* node = table.get(key);
    if (node == nullptr) {
        return std::nullopt;
    }
    if constexpr (std::is_same_v<T, double>) {
        if (auto v = node->value<double>()) {
            return *v;
        }
    } else if constexpr (std::is_same_v<T, bool>) {
        if (node->is_boolean()) {
            return node->as_boolean()->get();
        }
    } else if constexpr (std::is_same_v<T, std::string>) {
        if (node->is_string()) {
            return node->as_string()->get();
        }
    } else {
        if (node->is_integer()) {
            const auto v = node->as_integer()->get();
            if (v < 0) {
                config_error(fmt::format("'{}' must be non-negative", key));
            }
            return static_cast<T>(v);
        }
    }
    config_error(fmt::format("'{}' has the wrong type", key));
}

template <typename T>
void read_into(const toml::table& table, std::string_view key, T& out)
{
    if (auto v = get_value<T>(table, key)) {
        out = *v;
    }
}

template <typename T, typename Parse>
std::optional<std::vector<T>> get_list(const toml::table& table, std::string_view key, Parse parse)
{
    const auto* node = table.get(key);
    if (node == nullptr) {
        return std::nullopt;
    }
    const auto* arr = node->as_array();
    if (arr == nullptr) {
        config_error(fmt::format("'{}' must be an array", key));
    }
    std::vector<T> out;
    for (const auto& el : *arr) {
        out.push_back(parse(el));
    }
    return out;
}

std::string node_string(const toml::node& n)
{
    if (!n.is_string()) {
        config_error("expected a string in array");
    }
    return n.as_string()->get();
}

double node_double(const toml::node& n)
{
    if (auto v = n.value<double>()) {
        return *v;
    }
    config_error("expected a number in array");
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p)
{
    std::filesystem::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string number(double v)
{
    return fmt::format("{}", v);
}

nlohmann::ordered_json json_number(double v)
{
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    return v;
}

std::string consequent_label(const Rule& rule, const TransactionDatabase& db)
{
    return db.item_names()[rule.consequent()];
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
    }
}

struct RunOutcome {
    RunIndicators indicators;
    std::size_t evaluations = 0;
    double seconds = 0.0;
    FrontRules front;
};

RunResult run_one(const ExperimentConfig& config, const TransactionDatabase& db, Algorithm algo, Variant variant,
                  double pc, double pm, std::uint64_t seed)
{
    VariationParams var;
    var.crossover_prob = pc;
    var.mutation_prob = pm;
    var.init = config.init;
    var.mutation_mode = config.mutation_mode;
    if (algo == Algorithm::Nsga3) {
        Nsga3Params p;
        p.population = config.population;
        p.generations = config.generations;
        p.divisions = config.nsga3_divisions;
        p.variation = var;
        p.seed = seed;
        return run_nsga3(db, variant, p);
    }
    MoeadParams p;
    p.divisions = config.moead_divisions;
    p.neighborhood = config.neighborhood;
    p.generations = config.generations;
    p.theta = config.theta;
    p.variation = var;
    p.seed = seed;
    return run_moead(db, variant, p);
}

// Runs fn(i) for every i on up to `workers` threads. The exception of the
// lowest failing index is rethrown so the error is the same on every run.
template <typename Fn>
void run_tasks(std::size_t n, std::size_t workers, Fn&& fn)
{
    std::vector<std::exception_ptr> errors(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(static_cast<int>(std::max<std::size_t>(workers, 1)))
#endif
    for (std::size_t i = 0; i < n; ++i) {
        try {
            fn(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

} // namespace

Algorithm parse_algorithm(std::string_view name)
{
    if (name == "nsga3") {
        return Algorithm::Nsga3;
    }
    if (name == "moead") {
        return Algorithm::Moead;
    }
    throw Error(ErrorCode::InvalidParameter, "unknown algorithm '" + std::string(name) + "'");
}

std::string_view to_string(Algorithm a) noexcept
{
    return a == Algorithm::Nsga3 ? "nsga3" : "moead";
}

std::string framework_name(Algorithm a, Variant v)
{
    return fmt::format("{}-ARM-{}", a == Algorithm::Nsga3 ? "NSGA-III" : "MOEAD", v == Variant::V1 ? "V1" : "V2");
}

RatioMode parse_ratio_mode(std::string_view name)
{
    if (name == "ratio-of-means") {
        return RatioMode::RatioOfMeans;
    }
    if (name == "mean-of-ratios") {
        return RatioMode::MeanOfRatios;
    }
    throw Error(ErrorCode::InvalidParameter, "unknown ratio mode '" + std::string(name) + "'");
}

std::string_view to_string(RatioMode m) noexcept
{
    return m == RatioMode::RatioOfMeans ? "ratio-of-means" : "mean-of-ratios";
}

void ExperimentConfig::validate() const
{
    if (dataset_path.empty() && !synthetic) {
        config_error("config needs a dataset path or a [dataset.synthetic] section");
    }
    if (!dataset_path.empty() && synthetic) {
        config_error("dataset path and [dataset.synthetic] are mutually exclusive");
    }
    if (algorithms.empty() || variants.empty()) {
        config_error("algorithms and variants must be non-empty");
    }
    if (pc_grid.empty() || pm_grid.empty()) {
        config_error("pc and pm grids must be non-empty");
    }
    for (double p : pc_grid) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw Error(ErrorCode::InvalidParameter, "crossover probability must lie in [0, 1]");
        }
    }
    for (double p : pm_grid) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw Error(ErrorCode::InvalidParameter, "mutation probability must lie in [0, 1]");
        }
    }
    if (runs == 0) {
        config_error("runs must be at least 1");
    }
    if (population == 0 || top_rules == 0) {
        config_error("population and top_rules must be positive");
    }
    if (theta < 0.0) {
        throw Error(ErrorCode::InvalidParameter, "theta must be non-negative");
    }
    if (synthetic && !(synthetic->density > 0.0 && synthetic->density <= 1.0)) {
        throw Error(ErrorCode::InvalidDensity, "synthetic density must lie in (0, 1]");
    }
}

ExperimentConfig parse_experiment_config(std::string_view toml_text, const std::filesystem::path& base_dir)
{
    toml::table root;
    try {
        root = toml::parse(toml_text);
    } catch (const toml::parse_error& e) {
        config_error(fmt::format("TOML error at line {}: {}", e.source().begin.line, e.description()));
    }
    reject_unknown_keys(root,
                        {"name", "dataset", "algorithms", "variants", "pc", "pm", "runs", "generations", "base_seed",
                         "population", "nsga3_divisions", "moead_divisions", "neighborhood", "theta", "init",
                         "mutation_mode", "ratio", "top_rules", "truefront", "zeff", "no_truefront"},
                        "config");

    ExperimentConfig c;
    read_into(root, "name", c.name);
    read_into(root, "runs", c.runs);
    read_into(root, "generations", c.generations);
    read_into(root, "base_seed", c.base_seed);
    read_into(root, "population", c.population);
    read_into(root, "nsga3_divisions", c.nsga3_divisions);
    read_into(root, "moead_divisions", c.moead_divisions);
    read_into(root, "neighborhood", c.neighborhood);
    read_into(root, "theta", c.theta);
    read_into(root, "top_rules", c.top_rules);
    read_into(root, "no_truefront", c.no_truefront);
    if (auto v = get_value<std::string>(root, "init")) {
        c.init = parse_init_strategy(*v);
    }
    if (auto v = get_value<std::string>(root, "mutation_mode")) {
        c.mutation_mode = parse_mutation_mode(*v);
    }
    if (auto v = get_value<std::string>(root, "ratio")) {
        c.ratio_mode = parse_ratio_mode(*v);
    }
    if (auto v = get_list<Algorithm>(root, "algorithms", [](const toml::node& n) {
            return parse_algorithm(node_string(n));
        })) {
        c.algorithms = *v;
    }
    if (auto v = get_list<Variant>(root, "variants", [](const toml::node& n) { return parse_variant(node_string(n)); })) {
        c.variants = *v;
    }
    if (auto v = get_list<double>(root, "pc", node_double)) {
        c.pc_grid = *v;
    }
    if (auto v = get_list<double>(root, "pm", node_double)) {
        c.pm_grid = *v;
    }

    if (const auto* ds = root["dataset"].as_table()) {
        reject_unknown_keys(*ds, {"path", "format", "synthetic"}, "[dataset]");
        if (auto p = get_value<std::string>(*ds, "path")) {
            c.dataset_path = resolve(base_dir, *p);
        }
        if (auto f = get_value<std::string>(*ds, "format")) {
            c.format = parse_dataset_format(*f);
        }
        if (const auto* syn = (*ds)["synthetic"].as_table()) {
            reject_unknown_keys(*syn, {"transactions", "items", "density", "seed"}, "[dataset.synthetic]");
            SyntheticDataset s;
            read_into(*syn, "transactions", s.transactions);
            read_into(*syn, "items", s.items);
            read_into(*syn, "density", s.density);
            read_into(*syn, "seed", s.seed);
            c.synthetic = s;
        }
    } else if (root.contains("dataset")) {
        config_error("'dataset' must be a table");
    }

    if (const auto* tf = root["truefront"].as_table()) {
        reject_unknown_keys(*tf, {"population", "generations", "divisions"}, "[truefront]");
        read_into(*tf, "population", c.truefront.population);
        read_into(*tf, "generations", c.truefront.generations);
        read_into(*tf, "divisions", c.truefront.divisions);
    }
    if (const auto* z = root["zeff"].as_table()) {
        reject_unknown_keys(*z, {"v1", "v2"}, "[zeff]");
        for (const auto& [key, node] : *z) {
            if (!node.is_string()) {
                config_error("zeff entries must be paths");
            }
            c.zeff[parse_variant(key.str())] = resolve(base_dir, node.as_string()->get());
        }
    }
    c.validate();
    return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_experiment_config(buf.str(), path.parent_path());
}

TransactionDatabase load_experiment_dataset(const ExperimentConfig& config)
{
    if (config.synthetic) {
        const auto& s = *config.synthetic;
        return generate_synthetic(s.transactions, s.items, s.density, s.seed);
    }
    return load_transactions(config.dataset_path, config.format);
}

std::vector<FrequencyRow> rule_frequency_table(std::span<const FrontRules> fronts, const TransactionDatabase& db)
{
    std::vector<FrequencyRow> rows;
    std::unordered_map<Rule, std::size_t, RuleHash> index;
    for (const auto& front : fronts) {
        std::unordered_map<Rule, bool, RuleHash> seen;
        for (std::size_t i = 0; i < front.rules.size(); ++i) {
            const auto& rule = front.rules[i];
            if (!seen.emplace(rule, true).second) {
                continue;
            }
            auto [it, fresh] = index.emplace(rule, rows.size());
            if (fresh) {
                rows.push_back({rule, front.metrics[i], 0});
            }
            ++rows[it->second].frequency;
        }
    }
    std::vector<std::string> keys;
    keys.reserve(rows.size());
    for (const auto& r : rows) {
        keys.push_back(rule_to_json(r.rule, r.metrics, db).dump());
    }
    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (rows[a].frequency != rows[b].frequency) {
            return rows[a].frequency > rows[b].frequency;
        }
        if (rows[a].metrics.support != rows[b].metrics.support) {
            return rows[a].metrics.support > rows[b].metrics.support;
        }
        return keys[a] < keys[b];
    });
    std::vector<FrequencyRow> sorted;
    sorted.reserve(rows.size());
    for (auto i : order) {
        sorted.push_back(std::move(rows[i]));
    }
    return sorted;
}

std::size_t best_cell_index(std::span<const CellResult> cells)
{
    if (cells.empty()) {
        throw Error(ErrorCode::InvalidParameter, "no cells to rank");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < cells.size(); ++i) {
        const auto& c = cells[i];
        const auto& b = cells[best];
        if (c.ratio > b.ratio || (c.ratio == b.ratio && std::pair(c.pc, c.pm) < std::pair(b.pc, b.pm))) {
            best = i;
        }
    }
    return best;
}

void summarize_cell(CellResult& cell, RatioMode mode)
{
    std::vector<std::pair<double, double>> pairs;
    double hv = 0.0;
    double igd_sum = 0.0;
    cell.clamped = 0;
    for (const auto& r : cell.runs) {
        pairs.emplace_back(r.hv, r.igd);
        hv += r.hv;
        igd_sum += r.igd;
        cell.clamped += r.clamped;
    }
    const auto n = static_cast<double>(cell.runs.size());
    cell.mean_hv = hv / n;
    cell.mean_igd = igd_sum / n;
    cell.ratio = hv_igd_ratio(pairs, mode);
}

std::uint64_t run_seed(std::uint64_t base_seed, Algorithm a, Variant v, double pc, double pm, std::size_t run)
{
    return mix_seed({base_seed, hash_string(to_string(a)), hash_string(to_string(v)), std::bit_cast<std::uint64_t>(pc),
                     std::bit_cast<std::uint64_t>(pm), static_cast<std::uint64_t>(run)});
}

AggregateReport run_experiment(const ExperimentConfig& config, const TransactionDatabase& db, const RunOptions& options)
{
    config.validate();
    auto log = [&](const std::string& msg) {
        if (options.log) {
            options.log(msg);
        }
    };

    AggregateReport report;
    report.name = config.name;
    report.problem = config.synthetic ? fmt::format("synthetic-N{}-M{}", db.n_transactions(), db.n_items())
                                      : config.dataset_path.stem().string();
    report.transactions = db.n_transactions();
    report.items = db.n_items();
    report.runs = config.runs;
    report.ratio_mode = config.ratio_mode;

    // Reference fronts.
    for (auto v : config.variants) {
        if (report.zeff.contains(v)) {
            continue;
        }
        if (auto it = config.zeff.find(v); it != config.zeff.end()) {
            const auto pts = read_front_csv(it->second);
            report.zeff[v] = make_front_approximation(std::span<const Point3>(pts), FrontProvenance::File);
            log(fmt::format("reference front {} loaded from {}", to_string(v), it->second.string()));
            continue;
        }
        if (config.no_truefront) {
            throw Error(ErrorCode::MissingReferenceFront,
                        fmt::format("no reference front for {} and computing one is disabled", to_string(v)));
        }
        auto settings = config.truefront;
        settings.exec = options.workers > 1 ? Execution::Parallel : Execution::Serial;
        const auto seed = mix_seed({config.base_seed, hash_string("truefront"), hash_string(to_string(v))});
        log(fmt::format("computing reference front for {} (pop {}, {} generations)", to_string(v),
                        settings.population, settings.generations));
        report.zeff[v] = approximate_true_front(db, v, seed, settings);
        if (options.out_dir) {
            std::filesystem::create_directories(*options.out_dir);
            write_front_csv(*options.out_dir / fmt::format("truefront_{}.csv", to_string(v)), report.zeff[v].points);
        }
    }

    // Grid runs.
    for (auto a : config.algorithms) {
        for (auto v : config.variants) {
            GroupReport g;
            g.algorithm = a;
            g.variant = v;
            for (double pc : config.pc_grid) {
                for (double pm : config.pm_grid) {
                    CellResult cell;
                    cell.pc = pc;
                    cell.pm = pm;
                    g.cells.push_back(cell);
                }
            }
            report.groups.push_back(std::move(g));
        }
    }
    const std::size_t cells_per_group = config.pc_grid.size() * config.pm_grid.size();
    const std::size_t runs_per_group = cells_per_group * config.runs;
    const std::size_t n_tasks = report.groups.size() * runs_per_group;
    std::vector<RunOutcome> outcomes(n_tasks);
    log(fmt::format("{} runs on {} worker(s)", n_tasks, options.workers));

    run_tasks(n_tasks, options.workers, [&](std::size_t task) {
        const auto& g = report.groups[task / runs_per_group];
        const auto& cell = g.cells[(task % runs_per_group) / config.runs];
        const std::size_t r = task % config.runs;
        const auto start = std::chrono::steady_clock::now();
        const auto result = run_one(config, db, g.algorithm, g.variant, cell.pc, cell.pm,
                                    run_seed(config.base_seed, g.algorithm, g.variant, cell.pc, cell.pm, r));
        auto& out = outcomes[task];
        std::vector<Point3> pts;
        for (const auto& ind : result.front) {
            pts.push_back(ind.objectives.values);
            out.front.rules.push_back(ind.rule);
            out.front.metrics.push_back(ind.metrics);
        }
        out.indicators = evaluate_indicators(pts, report.zeff.at(g.variant));
        out.evaluations = result.evaluations;
        out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    });

    // Aggregation in (group, cell, run) order.
    for (std::size_t gi = 0; gi < report.groups.size(); ++gi) {
        auto& g = report.groups[gi];
        for (std::size_t ci = 0; ci < g.cells.size(); ++ci) {
            auto& cell = g.cells[ci];
            for (std::size_t r = 0; r < config.runs; ++r) {
                const auto& o = outcomes[gi * runs_per_group + ci * config.runs + r];
                cell.runs.push_back(o.indicators);
                cell.evaluations += o.evaluations;
                cell.seconds += o.seconds;
            }
            summarize_cell(cell, config.ratio_mode);
        }
        g.best_cell = best_cell_index(g.cells);
        std::vector<FrontRules> fronts;
        for (std::size_t r = 0; r < config.runs; ++r) {
            fronts.push_back(std::move(outcomes[gi * runs_per_group + g.best_cell * config.runs + r].front));
        }
        g.top_rules = rule_frequency_table(fronts, db);
        if (g.top_rules.size() > config.top_rules) {
            g.top_rules.resize(config.top_rules);
        }
        log(fmt::format("{}: best cell pc={} pm={} hv/igd={}", framework_name(g.algorithm, g.variant),
                        number(g.cells[g.best_cell].pc), number(g.cells[g.best_cell].pm),
                        format_ratio(g.cells[g.best_cell].ratio)));
    }
    return report;
}

std::string hv_igd_csv(const AggregateReport& report, Variant variant)
{
    std::string out = "problem,framework,prob cross,prob mut,mean hv,mean igd,hv/igd,evaluations,best\n";
    for (const auto& g : report.groups) {
        if (g.variant != variant) {
            continue;
        }
        for (std::size_t i = 0; i < g.cells.size(); ++i) {
            const auto& c = g.cells[i];
            out += fmt::format("{},{},{},{},{:.6f},{:.6f},{},{},{}\n", csv_field(report.problem),
                               framework_name(g.algorithm, g.variant), number(c.pc), number(c.pm), c.mean_hv,
                               c.mean_igd, format_ratio(c.ratio), c.evaluations, i == g.best_cell ? "yes" : "no");
        }
    }
    return out;
}

std::string top_rules_csv(const GroupReport& group, const TransactionDatabase& db)
{
    const auto names = objective_names(group.variant);
    std::string out = fmt::format("frequency,antecedent,consequent,{},{},{}\n", names[0], names[1], names[2]);
    for (const auto& row : group.top_rules) {
        const auto obj = objective_vector(row.metrics, group.variant);
        out += fmt::format("{},{},{},{:.4f},{:.4f},{:.4f}\n", row.frequency, csv_field(antecedent_label(row.rule, db)),
                           csv_field(consequent_label(row.rule, db)), obj[0], obj[1], obj[2]);
    }
    return out;
}

std::string report_json(const AggregateReport& report, const TransactionDatabase& db)
{
    nlohmann::ordered_json j;
    j["name"] = report.name;
    j["problem"] = report.problem;
    j["transactions"] = report.transactions;
    j["items"] = report.items;
    j["runs"] = report.runs;
    j["ratio_mode"] = to_string(report.ratio_mode);

    auto& refs = j["reference_fronts"] = nlohmann::ordered_json::object();
    for (const auto& [v, front] : report.zeff) {
        nlohmann::ordered_json f;
        f["provenance"] = front.provenance == FrontProvenance::OracleExact    ? "oracle-exact"
                          : front.provenance == FrontProvenance::BigRunApprox ? "big-run-approx"
                                                                              : "file";
        f["points"] = front.points.size();
        f["min"] = front.bounds.min;
        f["max"] = front.bounds.max;
        f["degenerate"] = front.bounds.degenerate;
        refs[std::string(to_string(v))] = f;
    }

    auto& groups = j["frameworks"] = nlohmann::ordered_json::array();
    for (const auto& g : report.groups) {
        nlohmann::ordered_json gj;
        gj["framework"] = framework_name(g.algorithm, g.variant);
        gj["algorithm"] = to_string(g.algorithm);
        gj["variant"] = to_string(g.variant);
        auto& cells = gj["cells"] = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < g.cells.size(); ++i) {
            const auto& c = g.cells[i];
            nlohmann::ordered_json cj;
            cj["prob_cross"] = c.pc;
            cj["prob_mut"] = c.pm;
            cj["mean_hv"] = c.mean_hv;
            cj["mean_igd"] = c.mean_igd;
            cj["hv_igd"] = json_number(c.ratio);
            cj["evaluations"] = c.evaluations;
            cj["clamped"] = c.clamped;
            cj["best"] = i == g.best_cell;
            auto& runs = cj["runs"] = nlohmann::ordered_json::array();
            for (const auto& r : c.runs) {
                runs.push_back({{"hv", r.hv}, {"igd", r.igd}, {"clamped", r.clamped}});
            }
            cells.push_back(std::move(cj));
        }
        gj["best_cell"] = g.best_cell;
        auto& rules = gj["top_rules"] = nlohmann::ordered_json::array();
        for (const auto& row : g.top_rules) {
            auto rj = rule_to_json(row.rule, row.metrics, db);
            rj["frequency"] = row.frequency;
            rules.push_back(std::move(rj));
        }
        groups.push_back(std::move(gj));
    }
    return j.dump(2) + "\n";
}

std::string timing_csv(const AggregateReport& report)
{
    std::string out = "framework,prob cross,prob mut,runs,evaluations,seconds\n";
    for (const auto& g : report.groups) {
        for (const auto& c : g.cells) {
            out += fmt::format("{},{},{},{},{},{:.3f}\n", framework_name(g.algorithm, g.variant), number(c.pc),
                               number(c.pm), c.runs.size(), c.evaluations, c.seconds);
        }
    }
    return out;
}

void write_reports(const AggregateReport& report, const TransactionDatabase& db, const std::filesystem::path& out_dir)
{
    std::filesystem::create_directories(out_dir);
    for (const auto& [v, _] : report.zeff) {
        write_text(out_dir / fmt::format("hv_igd_{}.csv", to_string(v)), hv_igd_csv(report, v));
    }
    for (const auto& g : report.groups) {
        write_text(out_dir / fmt::format("top_rules_{}_{}.csv", to_string(g.algorithm), to_string(g.variant)),
                   top_rules_csv(g, db));
    }
    write_text(out_dir / "report.json", report_json(report, db));
    write_text(out_dir / "timing.csv", timing_csv(report));
}

} // namespace armoo
