#include "armoo/quality.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>

#include <fmt/format.h>

#include "armoo/error.hpp"
#include "armoo/nsga3.hpp"
#include "armoo/pareto.hpp"

namespace armoo {

namespace {

// 2-D non-dominated staircase under maximization: x ascending, y descending.
class Staircase {
public:
    void insert(double x, double y)
    {
        auto it = steps_.lower_bound(x);
        if (it != steps_.end() && it->second >= y) {
            return;
        }
        if (it != steps_.end() && it->first == x) {
            it = steps_.erase(it);
        }
        while (it != steps_.begin()) {
            auto prev = std::prev(it);
            if (prev->second > y) {
                break;
            }
            steps_.erase(prev);
        }
        steps_.emplace_hint(it, x, y);
    }

    [[nodiscard]] double area(double ref_x, double ref_y) const
    {
        double a = 0.0;
        double left = ref_x;
        for (const auto& [x, y] : steps_) {
            a += (x - left) * (y - ref_y);
            left = x;
        }
        return a;
    }

private:
    std::map<double, double> steps_;
};

double parse_double(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw Error(ErrorCode::MalformedFrontFile, "not a number: '" + std::string(s) + "'");
    }
    return v;
}

} // namespace

Point3 ObjectiveBounds::normalize(const Point3& p) const noexcept
{
    Point3 out{};
    for (std::size_t k = 0; k < 3; ++k) {
        out[k] = degenerate[k] ? 0.5 : (p[k] - min[k]) / (max[k] - min[k]);
    }
    return out;
}

std::vector<Point3> to_points(std::span<const ObjectiveVector> objs)
{
    std::vector<Point3> pts;
    pts.reserve(objs.size());
    for (const auto& o : objs) {
        pts.push_back(o.values);
    }
    return pts;
}

FrontApproximation make_front_approximation(std::span<const Point3> raw, FrontProvenance provenance)
{
    if (raw.empty()) {
        throw Error(ErrorCode::EmptyReferenceFront, "reference front has no points");
    }
    FrontApproximation front;
    front.provenance = provenance;
    for (auto i : nondominated_indices(raw)) {
        front.points.push_back(raw[i]);
    }
    std::sort(front.points.begin(), front.points.end());
    front.points.erase(std::unique(front.points.begin(), front.points.end()), front.points.end());

    auto& b = front.bounds;
    b.min = b.max = front.points.front();
    for (const auto& p : front.points) {
        for (std::size_t k = 0; k < 3; ++k) {
            if (!std::isfinite(p[k])) {
                throw Error(ErrorCode::MalformedFrontFile, "non-finite objective in reference front");
            }
            b.min[k] = std::min(b.min[k], p[k]);
            b.max[k] = std::max(b.max[k], p[k]);
        }
    }
    for (std::size_t k = 0; k < 3; ++k) {
        b.degenerate[k] = !(b.max[k] > b.min[k]);
    }
    return front;
}

FrontApproximation make_front_approximation(std::span<const ObjectiveVector> raw, FrontProvenance provenance)
{
    const auto pts = to_points(raw);
    return make_front_approximation(std::span<const Point3>(pts), provenance);
}

std::vector<Point3> normalize_points(std::span<const Point3> raw, const ObjectiveBounds& bounds)
{
    std::vector<Point3> out;
    out.reserve(raw.size());
    for (const auto& p : raw) {
        out.push_back(bounds.normalize(p));
    }
    return out;
}

double igd(std::span<const Point3> solutions, std::span<const Point3> reference)
{
    if (solutions.empty()) {
        throw Error(ErrorCode::EmptySolutionSet, "IGD needs at least one solution");
    }
    if (reference.empty()) {
        throw Error(ErrorCode::EmptyReferenceFront, "IGD needs at least one reference point");
    }
    double total = 0.0;
    for (const auto& z : reference) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& a : solutions) {
            const double dx = z[0] - a[0];
            const double dy = z[1] - a[1];
            const double dz = z[2] - a[2];
            best = std::min(best, dx * dx + dy * dy + dz * dz);
        }
        total += std::sqrt(best);
    }
    return total / static_cast<double>(reference.size());
}

double hypervolume_3d(std::span<const Point3> points, const Point3& ref)
{
    for (const auto& p : points) {
        if (p[0] < ref[0] || p[1] < ref[1] || p[2] < ref[2]) {
            throw Error(ErrorCode::PointBelowReference, "every point must weakly dominate the reference point");
        }
    }
    std::vector<Point3> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end(), [](const Point3& a, const Point3& b) { return a[2] > b[2]; });

    Staircase stairs;
    double volume = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        stairs.insert(sorted[i][0], sorted[i][1]);
        const double next_z = i + 1 < sorted.size() ? sorted[i + 1][2] : ref[2];
        const double depth = sorted[i][2] - next_z;
        if (depth > 0.0) {
            volume += stairs.area(ref[0], ref[1]) * depth;
        }
    }
    return volume;
}

RunIndicators evaluate_indicators(std::span<const Point3> raw_front, const FrontApproximation& reference)
{
    if (raw_front.empty()) {
        throw Error(ErrorCode::EmptySolutionSet, "run produced no solutions");
    }
    RunIndicators r;
    auto normalized = normalize_points(raw_front, reference.bounds);
    const auto ref_points = normalize_points(reference.points, reference.bounds);
    r.igd = igd(normalized, ref_points);
    for (auto& p : normalized) {
        bool clamped = false;
        for (auto& v : p) {
            const double c = std::clamp(v, 0.0, 1.0);
            clamped = clamped || c != v;
            v = c;
        }
        r.clamped += clamped ? 1 : 0;
    }
    r.hv = hypervolume_3d(normalized, hv_reference_point);
    return r;
}

double hv_igd_ratio(std::span<const std::pair<double, double>> runs, RatioMode mode)
{
    if (runs.empty()) {
        throw Error(ErrorCode::InvalidParameter, "ratio needs at least one run");
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    const auto n = static_cast<double>(runs.size());
    if (mode == RatioMode::MeanOfRatios) {
        double sum = 0.0;
        for (const auto& [hv, d] : runs) {
            if (d == 0.0) {
                return inf;
            }
            sum += hv / d;
        }
        return sum / n;
    }
    double hv_sum = 0.0;
    double igd_sum = 0.0;
    for (const auto& [hv, d] : runs) {
        hv_sum += hv;
        igd_sum += d;
    }
    if (igd_sum == 0.0) {
        return inf;
    }
    return (hv_sum / n) / (igd_sum / n);
}

std::string format_ratio(double value)
{
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    return fmt::format("{:.4f}", value);
}

FrontApproximation approximate_true_front(const TransactionDatabase& db, Variant variant, std::uint64_t seed,
                                          const TrueFrontSettings& settings)
{
    Nsga3Params params;
    params.population = settings.population;
    params.generations = settings.generations;
    params.divisions = settings.divisions != 0 ? settings.divisions : divisions_for_count(settings.population);
    params.variation.crossover_prob = settings.crossover_prob;
    params.variation.mutation_prob = settings.mutation_prob;
    params.seed = seed;
    params.exec = settings.exec;
    const auto run = run_nsga3(db, variant, params);
    std::vector<Point3> pts;
    pts.reserve(run.archive.size());
    for (const auto& ind : run.archive) {
        pts.push_back(ind.objectives.values);
    }
    return make_front_approximation(std::span<const Point3>(pts), FrontProvenance::BigRunApprox);
}

void write_front_csv(std::ostream& out, std::span<const Point3> points)
{
    out << "o1,o2,o3\n";
    for (const auto& p : points) {
        out << fmt::format("{:.17g},{:.17g},{:.17g}\n", p[0], p[1], p[2]);
    }
}

void write_front_csv(const std::filesystem::path& path, std::span<const Point3> points)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
    }
    write_front_csv(out, points);
}

std::vector<Point3> read_front_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorCode::MalformedFrontFile, "missing header");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "o1,o2,o3") {
        throw Error(ErrorCode::MalformedFrontFile, "header must be o1,o2,o3");
    }
    std::vector<Point3> pts;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        std::string_view rest(line);
        Point3 p{};
        for (std::size_t k = 0; k < 3; ++k) {
            const auto comma = rest.find(',');
            if ((k < 2) == (comma == std::string_view::npos)) {
                throw Error(ErrorCode::MalformedFrontFile, "line " + std::to_string(line_no) + " needs 3 values");
            }
            p[k] = parse_double(rest.substr(0, comma));
            rest = k < 2 ? rest.substr(comma + 1) : std::string_view{};
        }
        pts.push_back(p);
    }
    return pts;
}

std::vector<Point3> read_front_csv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    }
    return read_front_csv(in);
}

} // namespace armoo
