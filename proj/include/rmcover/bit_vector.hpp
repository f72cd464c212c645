#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace rmcover {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

/// Fixed-length GF(2) vector packed into 64-bit words. Bits past size() are
/// always zero, so word-wise comparison and hashing are exact.
class BitVector {
public:
    BitVector() = default;

    explicit BitVector(std::size_t nbits)
        : nbits_(nbits), words_((nbits + kWordBits - 1) / kWordBits, 0) {}

    [[nodiscard]] std::size_t size() const noexcept { return nbits_; }
    [[nodiscard]] std::size_t word_count() const noexcept { return words_.size(); }
    [[nodiscard]] std::span<const Word> words() const noexcept { return words_; }
    [[nodiscard]] std::span<Word> words() noexcept { return words_; }

    [[nodiscard]] bool get(std::size_t i) const noexcept {
        return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
    }
    void set(std::size_t i, bool value = true) noexcept {
        const Word bit = Word{1} << (i % kWordBits);
        if (value)
            words_[i / kWordBits] |= bit;
        else
            words_[i / kWordBits] &= ~bit;
    }
    void flip(std::size_t i) noexcept { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

    [[nodiscard]] std::size_t popcount() const noexcept {
        std::size_t n = 0;
        for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }
    [[nodiscard]] bool any() const noexcept {
        for (Word w : words_)
            if (w != 0) return true;
        return false;
    }
    [[nodiscard]] bool none() const noexcept { return !any(); }

    /// Index of the highest set bit; size() when the vector is zero.
    [[nodiscard]] std::size_t highest_set_bit() const noexcept {
        for (std::size_t k = words_.size(); k-- > 0;)
            if (words_[k] != 0) return k * kWordBits + (kWordBits - 1 - std::countl_zero(words_[k]));
        return nbits_;
    }

    BitVector& operator^=(const BitVector& other) {
        check_same_size(other);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
        return *this;
    }
    BitVector& operator&=(const BitVector& other) {
        check_same_size(other);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
        return *this;
    }
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }

    friend bool operator==(const BitVector&, const BitVector&) = default;

    /// Orders vectors of equal length as unsigned integers (bit i has weight 2^i).
    friend std::strong_ordering operator<=>(const BitVector& a, const BitVector& b) {
        if (a.nbits_ != b.nbits_) return a.nbits_ <=> b.nbits_;
        for (std::size_t k = a.words_.size(); k-- > 0;)
            if (a.words_[k] != b.words_[k]) return a.words_[k] <=> b.words_[k];
        return std::strong_ordering::equal;
    }

    [[nodiscard]] std::size_t hash() const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ULL ^ nbits_;
        for (Word w : words_) {
            h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }

private:
    void check_same_size(const BitVector& other) const {
        if (other.nbits_ != nbits_) throw std::invalid_argument("BitVector: length mismatch");
    }

    std::size_t nbits_ = 0;
    std::vector<Word> words_;
};

struct BitVectorHash {
    std::size_t operator()(const BitVector& v) const noexcept { return v.hash(); }
};

}  // namespace rmcover
