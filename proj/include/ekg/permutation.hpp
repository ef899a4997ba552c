#pragma once

#include "ekg/generator.hpp"
#include "ekg/types.hpp"

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace ekg {

/// The first `horizon` terms viewed as a partial permutation n -> a(n), with
/// the inverse v -> n for every v <= horizon that occurs among them.
/// Immutable; safe to share between threads.
class permutation_view {
public:
    permutation_view(std::span<const value_t> terms, std::size_t horizon);

    std::size_t horizon() const noexcept { return forward_.size(); }

    /// a(n) for 1 <= n <= horizon.
    value_t forward(std::size_t n) const { return forward_.at(n - 1); }

    /// n with a(n) = v, or 0 when v > horizon or v is not among a(1..horizon).
    std::size_t inverse(value_t v) const noexcept
    {
        return v < inverse_.size() ? inverse_[v] : 0;
    }

    std::span<const value_t> terms() const noexcept { return forward_; }

private:
    std::vector<value_t> forward_;
    std::vector<std::size_t> inverse_;
};

/// Throws std::invalid_argument if terms.size() < horizon.
permutation_view build_view(std::span<const value_t> terms, std::size_t horizon);

/// Cycle returning to its start inside the horizon. members begin at the
/// minimal element and follow v -> a(v).
struct closed_cycle {
    std::vector<value_t> members;
    std::size_t length() const noexcept { return members.size(); }
};

/// Maximal in-horizon stretch of an orbit that leaves the horizon. The
/// segment follows v -> a(v); its first element has no known predecessor and
/// a(segment.back()) = escape_value > horizon. "Open" means only that: the
/// orbit may still close beyond the horizon.
struct open_cycle {
    std::vector<value_t> segment;
    value_t escape_value = 0;
};

struct cycle_record {
    value_t representative = 0;
    std::size_t horizon = 0;
    std::variant<closed_cycle, open_cycle> status;

    bool closed() const noexcept { return std::holds_alternative<closed_cycle>(status); }
    /// members or segment, whichever applies.
    const std::vector<value_t>& elements() const;
};

/// Follows start forward (and, if open, backward) through the view.
/// Throws std::out_of_range unless 1 <= start <= horizon.
cycle_record cycle_of(const permutation_view& view, value_t start);

/// One record per cycle (or open stretch) whose minimal element is
/// <= max_representative, sorted by representative. O(horizon) overall.
std::vector<cycle_record> enumerate_cycles(const permutation_view& view, value_t max_representative);

struct coverage_result {
    bool covered = true;
    value_t smallest_missing = 0; // meaningful when !covered
    explicit operator bool() const noexcept { return covered; }
};

/// Whether every value in [1, k] occurs in the view's terms.
coverage_result verify_prefix_coverage(const permutation_view& view, value_t k);

/// Follows start's cycle, generating more terms as needed: while the cycle
/// is open, the horizon is raised to 1.5x the escape value, capped at
/// ceiling. Returns the last record (closed, or open at the ceiling).
cycle_record resolve_cycle(generator& gen, value_t start, std::size_t horizon, std::size_t ceiling);

} // namespace ekg
