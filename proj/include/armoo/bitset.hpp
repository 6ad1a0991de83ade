#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace armoo {

/// Fixed-length bitset over transactions. Bits past size() are always zero,
/// so popcounts over whole words are exact.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t n_bits) : n_bits_(n_bits), words_((n_bits + 63) / 64, 0) {}

    [[nodiscard]] std::size_t size() const noexcept { return n_bits_; }

    [[nodiscard]] bool test(std::size_t i) const noexcept { return (words_[i / 64] >> (i % 64)) & 1U; }
    void set(std::size_t i) noexcept { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void reset(std::size_t i) noexcept { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }

    [[nodiscard]] std::size_t count() const noexcept
    {
        std::size_t c = 0;
        for (auto w : words_) {
            c += static_cast<std::size_t>(std::popcount(w));
        }
        return c;
    }

    /// popcount(*this & other) without materializing the intersection.
    [[nodiscard]] std::size_t and_count(const Bitset& other) const noexcept
    {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) {
            c += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
        }
        return c;
    }

    Bitset& operator&=(const Bitset& other) noexcept
    {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            words_[i] &= other.words_[i];
        }
        return *this;
    }

    friend bool operator==(const Bitset&, const Bitset&) = default;

private:
    std::size_t n_bits_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace armoo
