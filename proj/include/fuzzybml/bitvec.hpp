#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fuzzybml {

// Fixed-size packed bit vector. Rows of the incidence matrices and the E/S
// channels of the automaton are stored as these, so the transition sweeps
// become word-wide logic ops.
class BitVec {
 public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

    std::size_t size() const { return size_; }

    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void clear() { for (auto& w : words_) w = 0; }

    // this |= other
    void or_with(const BitVec& other) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
    }

    // true iff every bit of `mask` is also set here
    bool contains_all(const BitVec& mask) const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (mask.words_[w] & ~words_[w]) return false;
        return true;
    }

    // flip all bits, trimming the tail past size()
    void flip_all() {
        for (auto& w : words_) w = ~w;
        trim();
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    bool operator==(const BitVec& other) const = default;

 private:
    void trim() {
        if (size_ & 63) words_.back() &= (std::uint64_t{1} << (size_ & 63)) - 1;
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace fuzzybml
