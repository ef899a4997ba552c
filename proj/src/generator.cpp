#include "ekg/generator.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

namespace ekg {

rule rule::with_threshold(value_t m)
{
    rule r;
    r.threshold = m;
    r.prefix.resize(m);
    std::iota(r.prefix.begin(), r.prefix.end(), value_t{1});
    return r;
}

void rule::validate() const
{
    if (threshold < 2)
        throw std::invalid_argument("rule: threshold must be >= 2");
    if (prefix.empty())
        throw std::invalid_argument("rule: empty prefix");

    std::vector<value_t> sorted = prefix;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() == 0)
        throw std::invalid_argument("rule: prefix values must be natural numbers");
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("rule: duplicate prefix value");
    for (value_t k = 1; k <= threshold; ++k)
        if (!std::binary_search(sorted.begin(), sorted.end(), k))
            throw std::invalid_argument("rule: prefix is missing " + std::to_string(k));
    if (prefix.back() < threshold)
        throw std::invalid_argument("rule: last prefix value must be >= threshold");
}

generator::generator(ekg::rule r, value_t capacity_hint, bool trace)
    : rule_(std::move(r)), trace_(trace)
{
    rule_.validate();
    canonical_ = rule_.canonical();

    const value_t top = *std::max_element(rule_.prefix.begin(), rule_.prefix.end());
    capacity_ = std::max({capacity_hint, 2 * top, value_t{64}});
    if (capacity_ > max_capacity)
        throw std::overflow_error("generator: capacity beyond " + std::to_string(max_capacity));

    factors_ = build_spf(capacity_);
    hit_ = bit_array(capacity_ + 1);
    gap_.assign(capacity_ + 1, 0);

    terms_.reserve(rule_.prefix.size());
    if (trace_)
        trace_offsets_.push_back(0);
    for (value_t v : rule_.prefix) {
        append(v);
        if (trace_)
            trace_offsets_.push_back(trace_divisors_.size());
    }
}

void generator::grow_to(value_t needed)
{
    if (needed <= capacity_)
        return;
    if (needed > max_capacity)
        throw std::overflow_error("generator: value " + std::to_string(needed) + " beyond capacity limit");
    value_t cap = capacity_;
    while (cap < needed)
        cap *= 2;
    cap = std::min(cap, max_capacity);

    factors_ = extend(factors_, cap);
    hit_.resize(cap + 1);
    gap_.resize(cap + 1, 0);
    capacity_ = cap;
}

value_t generator::advance_gap(value_t d) const
{
    value_t g = gap_[d];
    if (g == 0)
        g = d;
    while (g <= capacity_ && hit_.test(g)) {
        g += d;
        ++scan_steps_;
    }
    gap_[d] = static_cast<std::uint32_t>(g);
    return g;
}

value_t generator::b_value(value_t d) const
{
    if (d < 2)
        throw std::invalid_argument("b_value: divisor must be >= 2");
    if (d > capacity_)
        return d; // nothing above capacity has been hit
    return advance_gap(d);
}

value_t generator::b_value_at(std::size_t n, value_t d) const
{
    if (d < 2)
        throw std::invalid_argument("b_value_at: divisor must be >= 2");
    if (n < 2 || n > terms_.size() + 1)
        throw std::out_of_range("b_value_at: index " + std::to_string(n) + " not in [2, " +
                                std::to_string(terms_.size() + 1) + "]");
    std::vector<value_t> seen;
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (terms_[i] % d == 0)
            seen.push_back(terms_[i] / d);
    std::sort(seen.begin(), seen.end());
    value_t k = 1;
    for (value_t s : seen) {
        if (s != k)
            break;
        ++k;
    }
    return k * d;
}

void generator::append(value_t v)
{
    grow_to(v);
    hit_.set(v);
    terms_.push_back(v);
}

void generator::check_bounds(std::size_t n, value_t v) const
{
    const value_t lo = (n + 259) / 260;
    if (v < lo || v > 14 * static_cast<value_t>(n)) {
        std::ostringstream os;
        os << "linear bounds violated: a(" << n << ") = " << v << " outside [" << lo << ", "
           << 14 * n << "]";
        throw invariant_violation(os.str());
    }
}

term generator::next_term()
{
    const value_t prev = last();
    value_t best = std::numeric_limits<value_t>::max();

    // Divisors taking part in the minimum; at most 2^9 for values < 2^32.
    std::vector<value_t> candidates;
    auto consider = [&](value_t d) {
        const value_t g = advance_gap(d);
        if (trace_)
            candidates.push_back(d);
        best = std::min(best, g);
    };

    if (rule_.threshold == 2) {
        factors_.for_each_prime(prev, consider);
    } else {
        std::array<value_t, 16> primes{};
        std::array<unsigned, 16> exps{};
        std::size_t k = 0;
        for (value_t m = prev; m > 1; m = factors_.quot(m)) {
            const value_t p = factors_.small(m);
            unsigned e = 0;
            for (value_t r = m; r % p == 0; r /= p)
                ++e;
            primes[k] = p;
            exps[k] = e;
            ++k;
        }
        auto walk = [&](auto& self, std::size_t i, value_t d) -> void {
            if (i == k) {
                if (d >= rule_.threshold)
                    consider(d);
                return;
            }
            for (unsigned e = 0; e <= exps[i]; ++e, d *= primes[i])
                self(self, i + 1, d);
        };
        walk(walk, 0, 1);
    }

    if (best == std::numeric_limits<value_t>::max())
        throw invariant_violation("next_term: a(" + std::to_string(size()) + ") = " +
                                  std::to_string(prev) + " has no divisor >= threshold");

    append(best);
    const std::size_t n = terms_.size();
    if (canonical_)
        check_bounds(n, best);

    if (trace_) {
        for (value_t d : candidates)
            if (gap_[d] == best)
                trace_divisors_.push_back(d);
        std::sort(trace_divisors_.begin() + static_cast<std::ptrdiff_t>(trace_offsets_.back()),
                  trace_divisors_.end());
        trace_offsets_.push_back(trace_divisors_.size());
    }
    return {n, best};
}

std::span<const value_t> generator::generate_count(std::size_t n)
{
    if (n <= terms_.size())
        return std::span<const value_t>(terms_).first(n);
    if (capacity_ < 2 * static_cast<value_t>(n))
        grow_to(std::min(2 * static_cast<value_t>(n), max_capacity));
    terms_.reserve(n);
    while (terms_.size() < n)
        next_term();
    return terms_;
}

std::span<const value_t> generator::generate_until_value(value_t bound)
{
    auto it = std::find_if(terms_.begin(), terms_.end(), [&](value_t v) { return v >= bound; });
    if (it != terms_.end())
        return std::span<const value_t>(terms_).first(static_cast<std::size_t>(it - terms_.begin()) + 1);
    while (next_term().value < bound) {
    }
    return terms_;
}

std::vector<value_t> generator::controlling_divisors(std::size_t n) const
{
    if (!trace_)
        throw unsupported_operation("controlling_divisors: generator built without trace");
    if (n < 2 || n > terms_.size())
        throw std::out_of_range("controlling_divisors: index " + std::to_string(n) + " not in [2, " +
                                std::to_string(terms_.size()) + "]");
    return {trace_divisors_.begin() + static_cast<std::ptrdiff_t>(trace_offsets_[n - 1]),
            trace_divisors_.begin() + static_cast<std::ptrdiff_t>(trace_offsets_[n])};
}

std::vector<value_t> naive_generate(const rule& r, std::size_t n)
{
    r.validate();
    std::vector<value_t> out(r.prefix.begin(), r.prefix.begin() + static_cast<std::ptrdiff_t>(
                                                                       std::min(n, r.prefix.size())));
    std::vector<bool> used;
    auto mark = [&](value_t v) {
        if (v >= used.size())
            used.resize(2 * v + 1, false);
        used[v] = true;
    };
    for (value_t v : r.prefix)
        mark(v);

    value_t smallest_unused = 1;
    while (out.size() < n) {
        while (smallest_unused < used.size() && used[smallest_unused])
            ++smallest_unused;
        const value_t prev = out.back();
        value_t v = smallest_unused;
        while ((v < used.size() && used[v]) || std::gcd(prev, v) < r.threshold)
            ++v;
        mark(v);
        out.push_back(v);
    }
    return out;
}

} // namespace ekg
