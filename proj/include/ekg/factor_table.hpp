#pragma once

#include "ekg/types.hpp"

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace ekg {

/// Smallest-prime-factor sieve over [2, limit].
///
/// For every m in range the table holds small(m), the smallest prime dividing
/// m, and quot(m), the largest factor of m coprime to small(m). Walking
/// m -> quot(m) visits the distinct primes of m in increasing order, one table
/// lookup per prime. The two fields are packed per entry so a factor walk
/// touches one cache line per step.
///
/// m = 1 is outside the domain. Immutable once built; concurrent reads are safe.
class factor_table {
public:
    /// Largest limit the packed 32-bit layout can represent.
    static constexpr value_t max_limit = UINT32_MAX;

    factor_table() = default;
    explicit factor_table(value_t limit);

    value_t limit() const noexcept { return limit_; }

    value_t small(value_t m) const { return entries_[check(m)].small; }
    value_t quot(value_t m) const { return entries_[check(m)].quot; }
    bool is_prime(value_t m) const { return m >= 2 && small(m) == m; }

    /// Distinct primes of m, increasing.
    std::vector<value_t> distinct_primes(value_t m) const;

    /// Calls f(p) for each distinct prime p of m in increasing order. No
    /// range check beyond the one on m.
    template <class F>
    void for_each_prime(value_t m, F&& f) const
    {
        check(m);
        while (m > 1) {
            const entry& e = entries_[m];
            f(static_cast<value_t>(e.small));
            m = e.quot;
        }
    }

    /// pi(x): number of primes <= x. Requires x <= limit().
    value_t prime_count(value_t x) const;

    std::span<const std::uint32_t> primes() const noexcept { return primes_; }

    friend bool operator==(const factor_table& a, const factor_table& b)
    {
        return a.limit_ == b.limit_ && a.primes_ == b.primes_ &&
               std::equal(a.entries_.begin(), a.entries_.end(), b.entries_.begin(),
                          [](const entry& x, const entry& y) {
                              return x.small == y.small && x.quot == y.quot;
                          });
    }

private:
    struct entry {
        std::uint32_t small;
        std::uint32_t quot;
    };

    value_t check(value_t m) const;

    value_t limit_ = 0;
    std::vector<entry> entries_;
    std::vector<std::uint32_t> primes_;
};

/// Builds the sieve for [2, limit]. Throws std::invalid_argument if limit < 2
/// and std::length_error if limit exceeds factor_table::max_limit.
factor_table build_spf(value_t limit);

/// Table covering new_limit that agrees with t below t.limit(). Returns t
/// unchanged when new_limit <= t.limit().
factor_table extend(const factor_table& t, value_t new_limit);

/// Free-function spellings of the queries.
inline std::vector<value_t> distinct_primes(const factor_table& t, value_t m) { return t.distinct_primes(m); }
inline value_t prime_count(const factor_table& t, value_t x) { return t.prime_count(x); }

} // namespace ekg
