#pragma once

// Fixtures, generators and brute-force reference computations shared by the
// test binaries. Nothing here calls the library code it is used to check.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "armoo/dataset.hpp"
#include "armoo/error.hpp"
#include "armoo/rule.hpp"

namespace test {

using P3 = std::array<double, 3>;

// Five transactions over A, B, C: {A,B,C}, {A,B}, {A,C}, {B,C}, {A,B,C}.
inline armoo::TransactionDatabase d5()
{
    return armoo::TransactionDatabase({"A", "B", "C"}, {{0, 1, 2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}});
}

inline armoo::Rule rule(std::initializer_list<int> digits)
{
    return armoo::Rule::from_digits(digits);
}

template <typename Fn>
armoo::ErrorCode error_of(Fn&& fn)
{
    try {
        fn();
    } catch (const armoo::Error& e) {
        return e.code();
    }
    throw std::runtime_error("expected an armoo::Error");
}

class TempDir {
public:
    TempDir()
    {
        static std::atomic<unsigned> counter{0};
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("armoo_test_" + std::to_string(rd()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    [[nodiscard]] const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

// Random database built directly from std::mt19937 draws.
inline armoo::TransactionDatabase random_db(std::mt19937_64& g, std::size_t n, std::size_t m, double density)
{
    std::bernoulli_distribution cell(density);
    std::uniform_int_distribution<std::uint32_t> item(0, static_cast<std::uint32_t>(m - 1));
    std::vector<std::vector<std::uint32_t>> rows(n);
    for (auto& row : rows) {
        for (std::uint32_t i = 0; i < m; ++i) {
            if (cell(g)) {
                row.push_back(i);
            }
        }
        if (row.empty()) {
            row.push_back(item(g));
        }
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < m; ++i) {
        names.push_back("x" + std::to_string(i));
    }
    return armoo::TransactionDatabase(names, rows);
}

// Random rule with one consequent and at least one antecedent item.
inline armoo::Rule random_valid_rule(std::mt19937_64& g, std::size_t m)
{
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    std::uniform_int_distribution<int> sym(0, 2);
    std::vector<armoo::Gene> genes(m);
    for (auto& gene : genes) {
        gene = sym(g) == 0 ? armoo::Gene::Antecedent : armoo::Gene::Absent;
    }
    const auto c = pick(g);
    genes[c] = armoo::Gene::Consequent;
    auto a = pick(g);
    while (a == c) {
        a = pick(g);
    }
    genes[a] = armoo::Gene::Antecedent;
    return armoo::Rule(genes);
}

// Plain row membership count.
inline std::size_t rows_containing(const armoo::TransactionDatabase& db, const std::vector<std::uint32_t>& items)
{
    std::size_t count = 0;
    for (std::size_t t = 0; t < db.n_transactions(); ++t) {
        const auto row = db.transaction(t);
        bool all = true;
        for (auto i : items) {
            all = all && std::find(row.begin(), row.end(), i) != row.end();
        }
        count += all ? 1 : 0;
    }
    return count;
}

inline bool dominates(const P3& a, const P3& b)
{
    return a[0] >= b[0] && a[1] >= b[1] && a[2] >= b[2] && (a[0] > b[0] || a[1] > b[1] || a[2] > b[2]);
}

// Front rank by longest dominance chain (maximization). A dominator is
// lexicographically larger, so one pass in descending lexicographic order
// sees every dominator of a point before the point itself.
inline std::vector<std::size_t> brute_ranks(const std::vector<P3>& pts)
{
    const std::size_t n = pts.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pts[a] > pts[b]; });
    std::vector<std::size_t> rank(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
        const auto i = order[x];
        for (std::size_t y = 0; y < x; ++y) {
            const auto j = order[y];
            if (dominates(pts[j], pts[i])) {
                rank[i] = std::max(rank[i], rank[j] + 1);
            }
        }
    }
    return rank;
}

inline double box_volume(const P3& hi, const P3& ref)
{
    return std::max(0.0, hi[0] - ref[0]) * std::max(0.0, hi[1] - ref[1]) * std::max(0.0, hi[2] - ref[2]);
}

// Union volume of boxes [ref, p] by inclusion-exclusion over all subsets.
inline double inclusion_exclusion_hv(const std::vector<P3>& pts, const P3& ref)
{
    const std::size_t n = pts.size();
    double total = 0.0;
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        P3 lo{1e300, 1e300, 1e300};
        int bits = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) {
                ++bits;
                for (int k = 0; k < 3; ++k) {
                    lo[k] = std::min(lo[k], pts[i][k]);
                }
            }
        }
        total += (bits % 2 == 1 ? 1.0 : -1.0) * box_volume(lo, ref);
    }
    return total;
}

// Exact union volume by coordinate compression: every grid cell between
// consecutive coordinates is either fully dominated or not at all.
inline double grid_hv(const std::vector<P3>& pts, const P3& ref)
{
    std::array<std::vector<double>, 3> axes;
    for (int k = 0; k < 3; ++k) {
        axes[k].push_back(ref[k]);
        for (const auto& p : pts) {
            axes[k].push_back(std::max(p[k], ref[k]));
        }
        std::sort(axes[k].begin(), axes[k].end());
        axes[k].erase(std::unique(axes[k].begin(), axes[k].end()), axes[k].end());
    }
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < axes[0].size(); ++i) {
        for (std::size_t j = 0; j + 1 < axes[1].size(); ++j) {
            for (std::size_t l = 0; l + 1 < axes[2].size(); ++l) {
                const P3 corner{axes[0][i + 1], axes[1][j + 1], axes[2][l + 1]};
                const bool covered = std::any_of(pts.begin(), pts.end(), [&](const P3& p) {
                    return p[0] >= corner[0] && p[1] >= corner[1] && p[2] >= corner[2];
                });
                if (covered) {
                    total += (axes[0][i + 1] - axes[0][i]) * (axes[1][j + 1] - axes[1][j]) * (axes[2][l + 1] - axes[2][l]);
                }
            }
        }
    }
    return total;
}

struct MonteCarloEstimate {
    double value;
    double standard_error;
};

inline MonteCarloEstimate monte_carlo_hv(const std::vector<P3>& pts, const P3& ref, std::size_t samples,
                                         std::uint64_t seed)
{
    P3 hi = ref;
    for (const auto& p : pts) {
        for (int k = 0; k < 3; ++k) {
            hi[k] = std::max(hi[k], p[k]);
        }
    }
    const double box = box_volume(hi, ref);
    std::mt19937_64 g(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        const P3 x{ref[0] + u(g) * (hi[0] - ref[0]), ref[1] + u(g) * (hi[1] - ref[1]), ref[2] + u(g) * (hi[2] - ref[2])};
        for (const auto& p : pts) {
            if (p[0] >= x[0] && p[1] >= x[1] && p[2] >= x[2]) {
                ++hits;
                break;
            }
        }
    }
    const double frac = static_cast<double>(hits) / static_cast<double>(samples);
    return {box * frac, box * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples))};
}

inline double brute_igd(const std::vector<P3>& sol, const std::vector<P3>& ref)
{
    double sum = 0.0;
    for (const auto& z : ref) {
        double best = 1e300;
        for (const auto& a : sol) {
            const double dx = z[0] - a[0];
            const double dy = z[1] - a[1];
            const double dz = z[2] - a[2];
            best = std::min(best, std::sqrt(dx * dx + dy * dy + dz * dz));
        }
        sum += best;
    }
    return sum / static_cast<double>(ref.size());
}

} // namespace test
