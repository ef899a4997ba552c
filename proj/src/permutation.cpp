#include "ekg/permutation.hpp"

#include "ekg/bit_array.hpp"

#include <algorithm>
#include <string>

namespace ekg {

permutation_view::permutation_view(std::span<const value_t> terms, std::size_t horizon)
{
    if (terms.size() < horizon)
        throw std::invalid_argument("permutation_view: " + std::to_string(terms.size()) +
                                    " terms, horizon " + std::to_string(horizon));
    forward_.assign(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(horizon));
    inverse_.assign(horizon + 1, 0);
    for (std::size_t n = 1; n <= horizon; ++n) {
        const value_t v = forward_[n - 1];
        if (v <= horizon)
            inverse_[v] = n;
    }
}

permutation_view build_view(std::span<const value_t> terms, std::size_t horizon)
{
    return permutation_view(terms, horizon);
}

const std::vector<value_t>& cycle_record::elements() const
{
    if (const auto* c = std::get_if<closed_cycle>(&status))
        return c->members;
    return std::get<open_cycle>(status).segment;
}

cycle_record cycle_of(const permutation_view& view, value_t start)
{
    const std::size_t h = view.horizon();
    if (start < 1 || start > h)
        throw std::out_of_range("cycle_of: " + std::to_string(start) + " outside horizon " +
                                std::to_string(h));

    cycle_record rec;
    rec.horizon = h;

    std::vector<value_t> chain{start};
    value_t v = start;
    for (;;) {
        const value_t next = view.forward(v);
        if (next == start) {
            auto lo = std::min_element(chain.begin(), chain.end());
            std::rotate(chain.begin(), lo, chain.end());
            rec.representative = chain.front();
            rec.status = closed_cycle{std::move(chain)};
            return rec;
        }
        if (next > h) {
            open_cycle open;
            open.escape_value = next;
            // Predecessors of start, newest first.
            std::vector<value_t> back;
            for (std::size_t u = view.inverse(start); u != 0; u = view.inverse(u))
                back.push_back(u);
            open.segment.assign(back.rbegin(), back.rend());
            open.segment.insert(open.segment.end(), chain.begin(), chain.end());
            rec.representative = *std::min_element(open.segment.begin(), open.segment.end());
            rec.status = std::move(open);
            return rec;
        }
        chain.push_back(next);
        v = next;
    }
}

std::vector<cycle_record> enumerate_cycles(const permutation_view& view, value_t max_representative)
{
    const std::size_t h = view.horizon();
    const value_t top = std::min<value_t>(max_representative, h);
    bit_array visited(h + 1);
    std::vector<cycle_record> out;
    for (value_t x = 1; x <= top; ++x) {
        if (visited.test(x))
            continue;
        // x is the smallest unvisited value, so it is the minimum of its record.
        cycle_record rec = cycle_of(view, x);
        for (value_t m : rec.elements())
            visited.set(m);
        out.push_back(std::move(rec));
    }
    return out;
}

coverage_result verify_prefix_coverage(const permutation_view& view, value_t k)
{
    if (k <= view.horizon()) {
        for (value_t v = 1; v <= k; ++v)
            if (view.inverse(v) == 0)
                return {false, v};
        return {};
    }
    bit_array seen(k + 1);
    for (value_t v : view.terms())
        if (v <= k)
            seen.set(v);
    for (value_t v = 1; v <= k; ++v)
        if (!seen.test(v))
            return {false, v};
    return {};
}

cycle_record resolve_cycle(generator& gen, value_t start, std::size_t horizon, std::size_t ceiling)
{
    horizon = std::min(horizon, ceiling);
    for (;;) {
        const auto view = build_view(gen.generate_count(horizon), horizon);
        cycle_record rec = cycle_of(view, start);
        if (rec.closed() || horizon >= ceiling)
            return rec;
        const value_t escape = std::get<open_cycle>(rec.status).escape_value;
        horizon = std::min<std::size_t>(ceiling, escape + escape / 2);
    }
}

} // namespace ekg
