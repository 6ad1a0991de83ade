#include "armoo/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "armoo/error.hpp"
#include "armoo/random.hpp"

namespace armoo {

namespace {

std::string_view trim(std::string_view s)
{
    constexpr std::string_view ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_commas(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

// Lines of the stream; a trailing newline does not create an extra empty line.
std::vector<std::string> read_lines(std::istream& in)
{
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        lines.push_back(std::move(line));
    }
    while (!lines.empty() && trim(lines.back()).empty()) {
        lines.pop_back();
    }
    return lines;
}

TransactionDatabase read_matrix_csv(const std::vector<std::string>& lines)
{
    if (lines.empty()) {
        throw Error(ErrorCode::EmptyDataset, "no header row");
    }
    std::vector<std::string> names;
    for (auto field : split_commas(lines[0])) {
        names.emplace_back(field);
    }
    if (lines.size() < 2) {
        throw Error(ErrorCode::EmptyDataset, "header but no transactions");
    }
    std::vector<std::vector<std::uint32_t>> rows;
    rows.reserve(lines.size() - 1);
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto cells = split_commas(lines[r]);
        if (cells.size() != names.size()) {
            throw Error(ErrorCode::MalformedRow, "row " + std::to_string(r) + " has " + std::to_string(cells.size()) +
                                                     " cells, expected " + std::to_string(names.size()));
        }
        std::vector<std::uint32_t> items;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (cells[c] == "1") {
                items.push_back(static_cast<std::uint32_t>(c));
            } else if (cells[c] != "0") {
                throw Error(ErrorCode::MalformedCell, "row " + std::to_string(r) + ", col " + std::to_string(c + 1) +
                                                          ": '" + std::string(cells[c]) + "'");
            }
        }
        if (items.empty()) {
            throw Error(ErrorCode::EmptyTransaction, "line " + std::to_string(r + 1));
        }
        rows.push_back(std::move(items));
    }
    return TransactionDatabase(std::move(names), rows);
}

TransactionDatabase read_basket(const std::vector<std::string>& lines)
{
    if (lines.empty()) {
        throw Error(ErrorCode::EmptyDataset, "no transactions");
    }
    std::vector<std::string> names;
    std::unordered_map<std::string, std::uint32_t> index;
    std::vector<std::vector<std::uint32_t>> rows;
    rows.reserve(lines.size());
    for (std::size_t l = 0; l < lines.size(); ++l) {
        std::vector<std::uint32_t> items;
        for (auto label : split_commas(lines[l])) {
            if (label.empty()) {
                continue;
            }
            auto [it, inserted] = index.try_emplace(std::string(label), static_cast<std::uint32_t>(names.size()));
            if (inserted) {
                names.emplace_back(label);
            }
            items.push_back(it->second);
        }
        if (items.empty()) {
            throw Error(ErrorCode::EmptyTransaction, "line " + std::to_string(l + 1));
        }
        std::sort(items.begin(), items.end());
        items.erase(std::unique(items.begin(), items.end()), items.end());
        rows.push_back(std::move(items));
    }
    return TransactionDatabase(std::move(names), rows);
}

} // namespace

DatasetFormat parse_dataset_format(std::string_view name)
{
    if (name == "matrix-csv") {
        return DatasetFormat::MatrixCsv;
    }
    if (name == "basket") {
        return DatasetFormat::Basket;
    }
    throw Error(ErrorCode::InvalidParameter, "unknown dataset format '" + std::string(name) + "'");
}

ItemSet::ItemSet(std::vector<std::uint32_t> members, std::size_t n_items) : members_(std::move(members))
{
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
        throw Error(ErrorCode::InvalidItemIndex, "duplicate item index in item set");
    }
    if (!members_.empty() && members_.back() >= n_items) {
        throw Error(ErrorCode::InvalidItemIndex, "item index " + std::to_string(members_.back()) + " out of range");
    }
}

TransactionDatabase::TransactionDatabase(std::vector<std::string> item_names,
                                         const std::vector<std::vector<std::uint32_t>>& rows)
    : item_names_(std::move(item_names))
    , n_transactions_(rows.size())
{
    if (item_names_.empty() || rows.empty()) {
        throw Error(ErrorCode::EmptyDataset, "database needs at least one item and one transaction");
    }
    std::unordered_set<std::string_view> seen;
    for (const auto& name : item_names_) {
        if (name.empty()) {
            throw Error(ErrorCode::DuplicateItem, "empty item label");
        }
        if (!seen.insert(name).second) {
            throw Error(ErrorCode::DuplicateItem, "'" + name + "'");
        }
    }
    columns_.assign(item_names_.size(), Bitset(n_transactions_));
    rows_.reserve(rows.size());
    for (std::size_t t = 0; t < rows.size(); ++t) {
        std::vector<std::uint32_t> items = rows[t];
        std::sort(items.begin(), items.end());
        items.erase(std::unique(items.begin(), items.end()), items.end());
        if (items.empty()) {
            throw Error(ErrorCode::EmptyTransaction, "transaction " + std::to_string(t));
        }
        if (items.back() >= item_names_.size()) {
            throw Error(ErrorCode::InvalidItemIndex, "transaction " + std::to_string(t));
        }
        for (auto i : items) {
            columns_[i].set(t);
        }
        rows_.push_back(std::move(items));
    }
}

std::size_t TransactionDatabase::support_count(const ItemSet& s) const
{
    if (s.empty()) {
        throw Error(ErrorCode::EmptyItemSet, "support of the empty item set is not defined here");
    }
    const auto members = s.members();
    if (members.back() >= n_items()) {
        throw Error(ErrorCode::InvalidItemIndex, "item index out of range");
    }
    if (members.size() == 1) {
        return columns_[members[0]].count();
    }
    if (members.size() == 2) {
        return columns_[members[0]].and_count(columns_[members[1]]);
    }
    Bitset acc = columns_[members[0]];
    for (std::size_t k = 1; k + 1 < members.size(); ++k) {
        acc &= columns_[members[k]];
    }
    return acc.and_count(columns_[members.back()]);
}

double TransactionDatabase::density() const noexcept
{
    std::size_t total = 0;
    for (const auto& row : rows_) {
        total += row.size();
    }
    return static_cast<double>(total) / static_cast<double>(n_transactions_) / static_cast<double>(n_items());
}

TransactionDatabase read_transactions(std::istream& in, DatasetFormat format)
{
    const auto lines = read_lines(in);
    return format == DatasetFormat::MatrixCsv ? read_matrix_csv(lines) : read_basket(lines);
}

TransactionDatabase load_transactions(const std::filesystem::path& path, DatasetFormat format)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    }
    return read_transactions(in, format);
}

void write_matrix_csv(std::ostream& out, const TransactionDatabase& db)
{
    const auto& names = db.item_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        out << (i ? "," : "") << names[i];
    }
    out << '\n';
    std::string line;
    for (std::size_t t = 0; t < db.n_transactions(); ++t) {
        line.clear();
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (i) {
                line += ',';
            }
            line += db.column(i).test(t) ? '1' : '0';
        }
        out << line << '\n';
    }
}

void write_basket(std::ostream& out, const TransactionDatabase& db)
{
    for (std::size_t t = 0; t < db.n_transactions(); ++t) {
        const auto items = db.transaction(t);
        for (std::size_t k = 0; k < items.size(); ++k) {
            out << (k ? "," : "") << db.item_names()[items[k]];
        }
        out << '\n';
    }
}

TransactionDatabase generate_synthetic(std::size_t n_transactions, std::size_t n_items, double density,
                                       std::uint64_t seed)
{
    if (!(density > 0.0 && density < 1.0)) {
        throw Error(ErrorCode::InvalidDensity, "density must lie in (0, 1)");
    }
    if (n_transactions == 0 || n_items == 0) {
        throw Error(ErrorCode::InvalidParameter, "need at least one transaction and one item");
    }
    Rng rng(seed);
    std::vector<std::vector<std::uint32_t>> rows(n_transactions);
    for (auto& row : rows) {
        for (std::size_t i = 0; i < n_items; ++i) {
            if (rng.bernoulli(density)) {
                row.push_back(static_cast<std::uint32_t>(i));
            }
        }
        if (row.empty()) {
            row.push_back(static_cast<std::uint32_t>(rng.below(n_items)));
        }
    }
    std::vector<std::string> names;
    names.reserve(n_items);
    for (std::size_t i = 0; i < n_items; ++i) {
        names.push_back("i" + std::to_string(i));
    }
    return TransactionDatabase(std::move(names), rows);
}

} // namespace armoo
