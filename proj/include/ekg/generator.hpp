#pragma once

#include "ekg/bit_array.hpp"
#include "ekg/factor_table.hpp"
#include "ekg/types.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ekg {

/// Greedy gcd rule: after the prefix, each term is the smallest unused
/// natural v with gcd(previous, v) >= threshold.
///
/// threshold = 2 with prefix {1, 2} is the EKG sequence. The prefix must be
/// pairwise distinct, contain every k in [1, threshold], and end on a value
/// >= threshold (otherwise no successor exists).
struct rule {
    value_t threshold = 2;
    std::vector<value_t> prefix{1, 2};

    static rule ekg() { return {}; }
    /// threshold M with prefix 1, 2, ..., M.
    static rule with_threshold(value_t m);

    bool canonical() const { return threshold == 2 && prefix == std::vector<value_t>{1, 2}; }

    /// Throws std::invalid_argument naming the broken condition.
    void validate() const;

    friend bool operator==(const rule&, const rule&) = default;
};

struct term {
    std::size_t index; // 1-based
    value_t value;
};

/// Incremental generator following the four-table scheme: a hit bit per
/// value, a lazily advanced gap value B_d per divisor d, and the shared
/// smallest-prime-factor/quotient sieve.
///
/// gap[d] caches the smallest multiple of d not yet hit; it only moves
/// forward, so the total scanning work over a run is sum_d N/d. Tables grow
/// 2x whenever a candidate passes the current value capacity.
///
/// Single owner, not thread-safe. terms() may be copied out for parallel
/// read-only analysis.
class generator {
public:
    static constexpr value_t max_capacity = (value_t{1} << 31) - 1;

    explicit generator(ekg::rule r = ekg::rule::ekg(), value_t capacity_hint = 0, bool trace = false);

    const ekg::rule& rule() const noexcept { return rule_; }
    std::size_t size() const noexcept { return terms_.size(); }
    value_t last() const noexcept { return terms_.back(); }
    value_t capacity() const noexcept { return capacity_; }
    bool tracing() const noexcept { return trace_; }

    /// a(1..size()) stored at positions 0..size()-1.
    std::span<const value_t> terms() const noexcept { return terms_; }
    value_t operator[](std::size_t n) const { return terms_.at(n - 1); }
    const factor_table& factors() const noexcept { return factors_; }

    term next_term();

    /// Extends to exactly n terms; if already longer, returns the first n.
    std::span<const value_t> generate_count(std::size_t n);

    /// Extends until the first term >= bound, inclusive.
    std::span<const value_t> generate_until_value(value_t bound);

    /// Current B_d: smallest multiple of d not among the terms so far.
    /// Advances the cache but is observationally pure.
    value_t b_value(value_t d) const;

    /// B_d(n) recomputed from the stored terms: the smallest multiple of d
    /// not among a(1..n-1), for 2 <= n <= size() + 1. Independent of the
    /// gap cache; at n = size() + 1 it equals b_value(d).
    value_t b_value_at(std::size_t n, value_t d) const;

    /// Divisors of a(n-1) (>= threshold) attaining the minimum that produced
    /// a(n). Empty for prefix positions. Requires trace mode.
    std::vector<value_t> controlling_divisors(std::size_t n) const;

    /// Total gap-advance steps taken so far (complexity probe).
    std::uint64_t scan_steps() const noexcept { return scan_steps_; }

private:
    value_t advance_gap(value_t d) const;
    void grow_to(value_t needed);
    void append(value_t v);
    void check_bounds(std::size_t n, value_t v) const;

    ekg::rule rule_;
    bool trace_;
    bool canonical_;
    value_t capacity_ = 0;
    factor_table factors_;
    bit_array hit_;
    mutable std::vector<std::uint32_t> gap_; // 0 = not yet demanded
    mutable std::uint64_t scan_steps_ = 0;
    std::vector<value_t> terms_;
    std::vector<value_t> trace_divisors_;
    std::vector<std::size_t> trace_offsets_; // term n owns [offsets[n-1], offsets[n])
};

/// Direct transcription of the definition: scan unused values upward and
/// take the first passing the gcd test. Quadratic; used as a test oracle.
std::vector<value_t> naive_generate(const rule& r, std::size_t n);

} // namespace ekg
