#include "ekg/analysis.hpp"

#include "ekg/bit_array.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ekg {
namespace {

std::string str(value_t v) { return std::to_string(v); }

value_t max_value(std::span<const value_t> terms)
{
    return terms.empty() ? 0 : *std::max_element(terms.begin(), terms.end());
}

bool trial_division_prime(value_t p)
{
    if (p < 2)
        return false;
    for (value_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

} // namespace

const char* to_string(term_kind k) noexcept
{
    switch (k) {
    case term_kind::prime:
        return "prime";
    case term_kind::three_prime:
        return "three_prime";
    case term_kind::other:
        return "other";
    }
    return "other";
}

term_class classify_term(const factor_table& ft, value_t m)
{
    if (m > ft.limit())
        throw std::out_of_range("classify_term: " + str(m) + " beyond table limit " + str(ft.limit()));
    if (m < 2)
        return {};
    if (ft.is_prime(m))
        return {term_kind::prime, m};
    if (m % 3 == 0 && ft.is_prime(m / 3))
        return {term_kind::three_prime, m / 3};
    return {};
}

std::vector<value_t> smooth(std::span<const value_t> terms, const factor_table& ft)
{
    std::vector<value_t> out;
    out.reserve(terms.size());
    for (value_t v : terms) {
        const term_class c = classify_term(ft, v);
        out.push_back(c.kind != term_kind::other && c.p > 2 ? 2 * c.p : v);
    }
    return out;
}

std::vector<violation> check_conjecture0(std::span<const value_t> terms, const factor_table& ft)
{
    std::vector<violation> out;
    const std::size_t size = terms.size();
    for (std::size_t i = 0; i < size; ++i) {
        const value_t p = terms[i];
        if (p <= 2 || !ft.is_prime(p))
            continue;
        const std::size_t n = i + 1;
        if (i == 0 || terms[i - 1] != 2 * p)
            out.push_back({"conjecture0", n, p,
                           "predecessor " + (i == 0 ? std::string("none") : str(terms[i - 1])) +
                               " != " + str(2 * p)});
        else if (i + 1 < size && terms[i + 1] != 3 * p)
            out.push_back({"conjecture0", n, p, "successor " + str(terms[i + 1]) + " != " + str(3 * p)});
    }
    return out;
}

std::vector<violation> check_lemma1(std::span<const value_t> terms, const factor_table& ft)
{
    std::vector<violation> out;
    const std::size_t size = terms.size();
    bit_array seen(max_value(terms) + 1);
    value_t largest_new = 0;
    value_t last_prime_term = 0;

    for (std::size_t i = 0; i < size; ++i) {
        const std::size_t n = i + 1;
        const value_t v = terms[i];
        if (v < 2)
            continue;

        if (ft.is_prime(v)) {
            if (v <= last_prime_term)
                out.push_back({"lemma1a", n, v, "prime term after larger prime " + str(last_prime_term)});
            last_prime_term = v;
        }

        ft.for_each_prime(v, [&](value_t p) {
            if (seen.test(p))
                return;
            seen.set(p);
            if (p < largest_new)
                out.push_back({"lemma1", n, v, "new prime " + str(p) + " after " + str(largest_new)});
            largest_new = std::max(largest_new, p);
            if (p == 2)
                return;

            if (i == 0 || terms[i - 1] < 2) {
                out.push_back({"lemma1", n, v, "new prime " + str(p) + " with no prime in predecessor"});
                return;
            }
            const value_t q = ft.small(terms[i - 1]);
            if (v != q * p || q >= p)
                out.push_back({"lemma1", n, v,
                               "first multiple of " + str(p) + " is not q*p with q = " + str(q) + " < p"});
            if (i + 1 < size && terms[i + 1] != p)
                out.push_back({"lemma1", n, v, "next term " + str(terms[i + 1]) + " != " + str(p)});
            if (v != 2 * p && i + 2 < size && terms[i + 2] != 2 * p)
                out.push_back({"lemma1", n, v, "2p = " + str(2 * p) + " is neither a(n) nor a(n+2)"});
        });
    }
    return out;
}

std::vector<violation> check_lemma4(std::span<const value_t> terms, const factor_table& ft,
                                    std::span<const std::size_t> sample)
{
    std::vector<violation> out;
    const std::size_t size = terms.size();
    std::vector<std::size_t> position(max_value(terms) + 1, 0);
    for (std::size_t i = 0; i < size; ++i)
        position[terms[i]] = i + 1;

    for (std::size_t n : sample) {
        if (n < 1 || n > size)
            throw std::out_of_range("check_lemma4: sample index " + std::to_string(n) + " outside buffer");
        const value_t v = terms[n - 1];
        if (v < 2)
            continue;
        ft.for_each_prime(v, [&](value_t p) {
            const value_t k = v / p;
            const std::size_t j = k < position.size() ? position[k] : 0;
            if (j == 0 ? n + 1 <= size : j > n + 1)
                out.push_back({"lemma4", n, v,
                               "cofactor " + str(k) + " of " + str(p) +
                                   (j == 0 ? std::string(" never appears") : " first at " + std::to_string(j))});
        });
    }
    return out;
}

std::vector<violation> check_lemma5a(std::span<const value_t> terms, const factor_table& ft)
{
    std::vector<violation> out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::size_t n = i + 1;
        if (terms[i] < 2)
            continue;
        ft.for_each_prime(terms[i], [&](value_t p) {
            if (p > n || (p != 2 && p == n))
                out.push_back({"lemma5a", n, terms[i], "prime divisor " + str(p) + " too large for index"});
        });
    }
    return out;
}

std::vector<violation> check_lemma6(std::span<const value_t> terms, const factor_table& ft)
{
    std::vector<violation> out;
    bit_array seen(max_value(terms) + 2);
    value_t smallest_missing = 1;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const value_t v = terms[i];
        if (ft.is_prime(v) && smallest_missing < v)
            out.push_back({"lemma6", i + 1, v, str(smallest_missing) + " not seen before this prime"});
        seen.set(v);
        smallest_missing = seen.find_first_clear(smallest_missing);
    }
    return out;
}

std::vector<std::size_t> even_sample(std::size_t n, std::size_t count)
{
    std::vector<std::size_t> out;
    if (n == 0 || count == 0)
        return out;
    count = std::min(count, n);
    out.reserve(count);
    for (std::size_t i = 1; i <= count; ++i)
        out.push_back(static_cast<std::size_t>((static_cast<unsigned __int128>(i) * n) / count));
    return out;
}

value_t predicted_index(const factor_table& ft, value_t m)
{
    if (m > ft.limit())
        throw std::out_of_range("predicted_index: " + str(m) + " beyond table limit " + str(ft.limit()));
    auto pi = [&](value_t x) { return x < 2 ? value_t{0} : ft.prime_count(x); };
    return m - pi(m) - pi(m / 3) + 2 * pi(m / 2);
}

double fit_coefficient(std::size_t n, value_t a)
{
    const double ln = std::log(static_cast<double>(n));
    const double ratio = static_cast<double>(a) / static_cast<double>(n);
    return ((ratio - 1.0) - 1.0 / (3.0 * ln)) * ln * ln;
}

std::vector<fit_sample> fit_c(std::span<const value_t> terms, std::span<const std::size_t> indices)
{
    std::vector<fit_sample> out;
    out.reserve(indices.size());
    for (std::size_t n : indices) {
        if (n < 3 || n > terms.size())
            throw std::invalid_argument("fit_c: index " + std::to_string(n) + " outside [3, " +
                                        std::to_string(terms.size()) + "]");
        out.push_back({n, terms[n - 1], fit_coefficient(n, terms[n - 1])});
    }
    return out;
}

double c_prime_reference() { return 4.0 / 9.0 + std::log(3.0) / 3.0 - std::log(2.0); }

fit_summary summarize_fit(std::vector<fit_sample> samples)
{
    fit_summary s;
    s.c_prime = c_prime_reference();
    s.histogram.assign(fit_summary::bins + 2, 0);

    std::vector<double> cs;
    cs.reserve(samples.size());
    for (const auto& f : samples) {
        cs.push_back(f.c);
        const double pos = std::floor((f.c + 1.0) / fit_summary::bin_width);
        std::size_t bin;
        if (pos < 0)
            bin = 0;
        else if (pos >= static_cast<double>(fit_summary::bins))
            bin = fit_summary::bins + 1;
        else
            bin = static_cast<std::size_t>(pos) + 1;
        ++s.histogram[bin];
    }
    if (!cs.empty()) {
        std::sort(cs.begin(), cs.end());
        const std::size_t mid = cs.size() / 2;
        s.median = cs.size() % 2 ? cs[mid] : (cs[mid - 1] + cs[mid]) / 2;
    }
    s.samples = std::move(samples);
    return s;
}

rational make_rational(value_t num, value_t den)
{
    if (den == 0)
        throw std::invalid_argument("make_rational: zero denominator");
    const value_t g = std::gcd(num, den);
    return {num / g, den / g};
}

ratio_extremes_result ratio_extremes(std::span<const value_t> terms)
{
    if (terms.empty())
        throw std::invalid_argument("ratio_extremes: empty buffer");
    using wide = unsigned __int128;
    // Compare a/n against b/m by cross multiplication.
    auto cmp = [](value_t a, value_t n, value_t b, value_t m) {
        const wide l = wide{a} * m, r = wide{b} * n;
        return l < r ? -1 : (l > r ? 1 : 0);
    };

    ratio_extremes_result r;
    value_t min_a = terms[0], min_n = 1, max_a = terms[0], max_n = 1;
    r.argmin = {1};
    r.argmax = {1};
    for (std::size_t i = 1; i < terms.size(); ++i) {
        const value_t a = terms[i], n = i + 1;
        if (int c = cmp(a, n, min_a, min_n); c < 0) {
            min_a = a, min_n = n;
            r.argmin = {n};
        } else if (c == 0) {
            r.argmin.push_back(n);
        }
        if (int c = cmp(a, n, max_a, max_n); c > 0) {
            max_a = a, max_n = n;
            r.argmax = {n};
        } else if (c == 0) {
            r.argmax.push_back(n);
        }
    }
    r.min_ratio = make_rational(min_a, min_n);
    r.max_ratio = make_rational(max_a, max_n);
    return r;
}

double prime_position_estimate(value_t p)
{
    if (p < 3 || !trial_division_prime(p))
        throw std::invalid_argument("prime_position_estimate: " + str(p) + " is not a prime >= 3");
    const double two_p = 2.0 * static_cast<double>(p);
    return two_p / (1.0 + 1.0 / (3.0 * std::log(two_p)));
}

double line_slope(term_kind k) noexcept
{
    switch (k) {
    case term_kind::prime:
        return 0.5;
    case term_kind::three_prime:
        return 1.5;
    case term_kind::other:
        return 1.0;
    }
    return 1.0;
}

double line_residual(std::size_t n, double a, term_kind k)
{
    const double nd = static_cast<double>(n);
    return a / (line_slope(k) * nd * (1.0 + 1.0 / (3.0 * std::log(nd)))) - 1.0;
}

line_summary line_residuals(std::span<const value_t> terms, const factor_table& ft,
                            std::span<const std::size_t> indices)
{
    line_summary out{};
    std::array<double, 3> sums{};
    for (std::size_t n : indices) {
        if (n < 3 || n > terms.size())
            throw std::invalid_argument("line_residuals: index " + std::to_string(n) + " outside [3, " +
                                        std::to_string(terms.size()) + "]");
        const value_t a = terms[n - 1];
        const term_kind k = classify_term(ft, a).kind;
        const double r = line_residual(n, static_cast<double>(a), k);
        auto& c = out[static_cast<std::size_t>(k)];
        ++c.count;
        sums[static_cast<std::size_t>(k)] += r;
        c.max_abs = std::max(c.max_abs, std::abs(r));
    }
    for (std::size_t k = 0; k < 3; ++k)
        if (out[k].count)
            out[k].mean = sums[k] / static_cast<double>(out[k].count);
    return out;
}

} // namespace ekg
