#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ekg {

// Fixed-size bit set over [0, size), growable.
class bit_array {
public:
    bit_array() = default;
    explicit bit_array(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const noexcept { return size_; }

    bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    // New bits are zero.
    void resize(std::size_t size)
    {
        words_.resize((size + 63) / 64, 0);
        if (size < size_ && (size & 63))
            words_.back() &= (std::uint64_t{1} << (size & 63)) - 1;
        size_ = size;
    }

    /// Smallest index >= from whose bit is clear, or size() if none.
    std::size_t find_first_clear(std::size_t from) const noexcept
    {
        if (from >= size_)
            return size_;
        std::size_t w = from >> 6;
        std::uint64_t word = ~words_[w] & (~std::uint64_t{0} << (from & 63));
        while (word == 0) {
            if (++w == words_.size())
                return size_;
            word = ~words_[w];
        }
        std::size_t i = (w << 6) + static_cast<std::size_t>(__builtin_ctzll(word));
        return i < size_ ? i : size_;
    }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace ekg
