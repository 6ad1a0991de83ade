#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "armoo/bitset.hpp"

namespace armoo {

enum class DatasetFormat { MatrixCsv, Basket };

DatasetFormat parse_dataset_format(std::string_view name);

/// Sorted set of distinct item indices.
class ItemSet {
public:
    ItemSet() = default;
    /// Sorts and validates; duplicate indices are rejected.
    ItemSet(std::vector<std::uint32_t> members, std::size_t n_items);
    ItemSet(std::initializer_list<std::uint32_t> members, std::size_t n_items)
        : ItemSet(std::vector<std::uint32_t>(members), n_items)
    {
    }

    [[nodiscard]] std::span<const std::uint32_t> members() const noexcept { return members_; }
    [[nodiscard]] bool empty() const noexcept { return members_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }

private:
    std::vector<std::uint32_t> members_;
};

/// Binary transaction data stored column-wise: one bitset per item marking
/// the transactions that contain it. Immutable once built.
class TransactionDatabase {
public:
    /// rows[t] lists the items of transaction t. Throws on empty rows,
    /// duplicate or empty labels, or out-of-range indices.
    TransactionDatabase(std::vector<std::string> item_names, const std::vector<std::vector<std::uint32_t>>& rows);

    [[nodiscard]] std::size_t n_transactions() const noexcept { return n_transactions_; }
    [[nodiscard]] std::size_t n_items() const noexcept { return item_names_.size(); }
    [[nodiscard]] const std::vector<std::string>& item_names() const noexcept { return item_names_; }
    [[nodiscard]] const Bitset& column(std::size_t item) const noexcept { return columns_[item]; }

    /// Sorted item list of one transaction.
    [[nodiscard]] std::span<const std::uint32_t> transaction(std::size_t t) const noexcept { return rows_[t]; }

    /// Number of transactions containing every member of s.
    [[nodiscard]] std::size_t support_count(const ItemSet& s) const;

    /// Mean number of items per transaction divided by the number of items.
    [[nodiscard]] double density() const noexcept;

    friend bool operator==(const TransactionDatabase&, const TransactionDatabase&) = default;

private:
    std::vector<std::string> item_names_;
    std::vector<Bitset> columns_;
    std::vector<std::vector<std::uint32_t>> rows_;
    std::size_t n_transactions_ = 0;
};

TransactionDatabase read_transactions(std::istream& in, DatasetFormat format);
TransactionDatabase load_transactions(const std::filesystem::path& path, DatasetFormat format);

void write_matrix_csv(std::ostream& out, const TransactionDatabase& db);
void write_basket(std::ostream& out, const TransactionDatabase& db);

/// Bernoulli(density) cells; rows that come out empty get one random item.
/// Items are labelled i0, i1, ...
TransactionDatabase generate_synthetic(std::size_t n_transactions, std::size_t n_items, double density,
                                       std::uint64_t seed);

} // namespace armoo
