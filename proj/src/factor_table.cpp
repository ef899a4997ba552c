#include "ekg/factor_table.hpp"

#include <algorithm>
#include <string>

namespace ekg {

factor_table::factor_table(value_t limit) : limit_(limit)
{
    if (limit < 2)
        throw std::invalid_argument("factor_table: limit must be >= 2, got " + std::to_string(limit));
    if (limit > max_limit)
        throw std::length_error("factor_table: limit " + std::to_string(limit) + " exceeds 32-bit table");

    entries_.assign(limit + 1, entry{0, 0});

    // Mark composites with their smallest prime; only primes <= sqrt(limit) matter.
    for (value_t p = 2; p * p <= limit; ++p) {
        if (entries_[p].small != 0)
            continue;
        for (value_t m = p * p; m <= limit; m += p)
            if (entries_[m].small == 0)
                entries_[m].small = static_cast<std::uint32_t>(p);
    }

    // quot(m) derives from quot(m / small(m)), which is already filled in.
    for (value_t m = 2; m <= limit; ++m) {
        entry& e = entries_[m];
        if (e.small == 0) {
            e.small = static_cast<std::uint32_t>(m);
            e.quot = 1;
            primes_.push_back(static_cast<std::uint32_t>(m));
            continue;
        }
        const value_t q = m / e.small;
        e.quot = (q % e.small == 0) ? entries_[q].quot : static_cast<std::uint32_t>(q);
    }
}

value_t factor_table::check(value_t m) const
{
    if (m < 2 || m > limit_)
        throw std::invalid_argument("factor_table: " + std::to_string(m) + " outside [2, " +
                                    std::to_string(limit_) + "]");
    return m;
}

std::vector<value_t> factor_table::distinct_primes(value_t m) const
{
    std::vector<value_t> out;
    for_each_prime(m, [&](value_t p) { out.push_back(p); });
    return out;
}

value_t factor_table::prime_count(value_t x) const
{
    if (x > limit_)
        throw std::out_of_range("factor_table: pi(" + std::to_string(x) + ") beyond limit " +
                                std::to_string(limit_));
    return static_cast<value_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

factor_table build_spf(value_t limit) { return factor_table(limit); }

factor_table extend(const factor_table& t, value_t new_limit)
{
    if (new_limit <= t.limit())
        return t;
    return factor_table(new_limit);
}

} // namespace ekg
