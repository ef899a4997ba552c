#pragma once

#include "ekg/factor_table.hpp"
#include "ekg/types.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

// Conjecture checks, lemma audits and asymptotic diagnostics over a
// generated buffer. Every function is pure; buffers hold a(1..N) at
// positions 0..N-1. Logarithms are natural.

namespace ekg {

enum class term_kind { prime, three_prime, other };

const char* to_string(term_kind k) noexcept;

struct term_class {
    term_kind kind = term_kind::other;
    value_t p = 0; // the prime, unless kind == other

    friend bool operator==(const term_class&, const term_class&) = default;
};

/// prime: m is prime. three_prime: m = 3p, p prime, m itself not prime
/// (so 6 and 9 qualify, 3 does not). Everything else, including 1, is other.
/// Throws std::out_of_range if m > ft.limit().
term_class classify_term(const factor_table& ft, value_t m);

/// Replaces p and 3p (p prime > 2) by 2p. The output is a diagnostic stream
/// and may contain repeats.
std::vector<value_t> smooth(std::span<const value_t> terms, const factor_table& ft);

struct violation {
    std::string check;
    std::size_t index = 0; // 1-based
    value_t value = 0;
    std::string detail;
};

/// Every prime term p > 2 must sit between 2p and 3p. The 3p side is skipped
/// for the final index.
std::vector<violation> check_conjecture0(std::span<const value_t> terms, const factor_table& ft);

/// When a prime p > 2 first divides a(n): a(n) = qp with q = small(a(n-1))
/// < p, a(n+1) = p, and 2p is a(n) or a(n+2); first divisions happen in
/// increasing prime order. Also the prime-valued terms are increasing.
/// Conditions that need terms past the buffer end are skipped.
std::vector<violation> check_lemma1(std::span<const value_t> terms, const factor_table& ft);

/// For each sampled n and each prime p | a(n), k = a(n)/p occurs at some
/// index j <= n+1.
std::vector<violation> check_lemma4(std::span<const value_t> terms, const factor_table& ft,
                                    std::span<const std::size_t> sample);

/// Every prime p | a(n) has p <= n, and p < n unless p = 2.
std::vector<violation> check_lemma5a(std::span<const value_t> terms, const factor_table& ft);

/// Each prime term a(n) = p is preceded by all of 1..p-1.
std::vector<violation> check_lemma6(std::span<const value_t> terms, const factor_table& ft);

/// count indices spread evenly over [1, n], deterministic.
std::vector<std::size_t> even_sample(std::size_t n, std::size_t count);

/// m - pi(m) - pi(m/3) + 2 pi(m/2), floors taken before pi. The heuristic
/// index at which value m lands once p and 3p are smoothed to 2p.
value_t predicted_index(const factor_table& ft, value_t m);

struct fit_sample {
    std::size_t n = 0;
    value_t a = 0;
    double c = 0;
};

/// c(n) = ((a(n)/n - 1) - 1/(3 ln n)) (ln n)^2, the coefficient of the
/// (ln n)^-2 correction term. Indices must lie in [3, terms.size()].
double fit_coefficient(std::size_t n, value_t a);
std::vector<fit_sample> fit_c(std::span<const value_t> terms, std::span<const std::size_t> indices);

/// 4/9 + (ln 3)/3 - ln 2 = 0.1175..., the constant obtained from two terms
/// of the prime-counting expansion.
double c_prime_reference();

struct fit_summary {
    static constexpr double bin_width = 0.01;
    static constexpr std::size_t bins = 200; // over [-1, 1)

    std::vector<fit_sample> samples;
    /// [0] underflow (c < -1), [1..bins] regular bins, [bins + 1] overflow (c >= 1).
    std::vector<std::size_t> histogram;
    std::optional<double> median;
    double c_prime = 0;
};

fit_summary summarize_fit(std::vector<fit_sample> samples);

struct rational {
    value_t num = 0;
    value_t den = 1;

    friend bool operator==(const rational&, const rational&) = default;
};

rational make_rational(value_t num, value_t den);

struct ratio_extremes_result {
    rational min_ratio;
    std::vector<std::size_t> argmin;
    rational max_ratio;
    std::vector<std::size_t> argmax;
};

/// Exact min and max of a(n)/n with every attaining index.
/// Throws std::invalid_argument on an empty buffer.
ratio_extremes_result ratio_extremes(std::span<const value_t> terms);

/// 2p / (1 + 1/(3 ln 2p)): asymptotic index of the prime p in the sequence.
/// Throws std::invalid_argument unless p is a prime >= 3.
double prime_position_estimate(value_t p);

struct class_residuals {
    std::size_t count = 0;
    double mean = 0;
    double max_abs = 0;
};

/// Slope of the line each class clusters around: 1 (other), 1/2 (prime), 3/2 (3p).
double line_slope(term_kind k) noexcept;

/// r(n) = a(n) / (L n (1 + 1/(3 ln n))) - 1.
double line_residual(std::size_t n, double a, term_kind k);

/// Indexed by term_kind.
using line_summary = std::array<class_residuals, 3>;

line_summary line_residuals(std::span<const value_t> terms, const factor_table& ft,
                            std::span<const std::size_t> indices);

} // namespace ekg
