#include "doctest.h"
#include "ekg/permutation.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <set>

using ekg::value_t;

namespace {

const std::vector<value_t>& terms_10k()
{
    static const std::vector<value_t> t = [] {
        ekg::generator g;
        const auto s = g.generate_count(10'000);
        return std::vector<value_t>(s.begin(), s.end());
    }();
    return t;
}

bool contains_run(const std::vector<value_t>& hay, const std::vector<value_t>& needle)
{
    return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

} // namespace

TEST_CASE("build_view and inverse")
{
    const auto view = ekg::build_view(oracle::ekg30, 30);
    CHECK(view.horizon() == 30);
    CHECK(view.inverse(5) == 10);
    CHECK(view.inverse(1) == 1);
    CHECK(view.inverse(7) == 14);
    CHECK(view.inverse(17) == 0); // not among the first 30
    CHECK(view.inverse(31) == 0); // beyond the horizon
    CHECK(view.forward(30) == 36);
    CHECK_THROWS_AS(ekg::build_view(oracle::ekg30, 31), std::invalid_argument);
}

TEST_CASE("inverse undoes forward inside the horizon")
{
    const auto view = ekg::build_view(terms_10k(), 10'000);
    for (std::size_t n = 1; n <= view.horizon(); ++n)
        if (view.forward(n) <= view.horizon())
            REQUIRE(view.inverse(view.forward(n)) == n);
}

TEST_CASE("cycle_of")
{
    const auto view = ekg::build_view(oracle::ekg30, 30);

    SUBCASE("3 -> 4 -> 6 -> 9 -> 10 -> 5 -> 3")
    {
        const auto rec = ekg::cycle_of(view, 3);
        REQUIRE(rec.closed());
        const auto& c = std::get<ekg::closed_cycle>(rec.status);
        CHECK(c.members == std::vector<value_t>{3, 4, 6, 9, 10, 5});
        CHECK(c.length() == 6);
        CHECK(rec.representative == 3);
        CHECK(rec.horizon == 30);
    }
    SUBCASE("starting mid-cycle reports the same record")
    {
        const auto rec = ekg::cycle_of(view, 9);
        REQUIRE(rec.closed());
        CHECK(rec.elements() == std::vector<value_t>{3, 4, 6, 9, 10, 5});
    }
    SUBCASE("fixed points")
    {
        for (value_t v : {1, 2, 8}) {
            const auto rec = ekg::cycle_of(view, v);
            REQUIRE(rec.closed());
            CHECK(rec.elements() == std::vector<value_t>{v});
        }
    }
    SUBCASE("out of range")
    {
        CHECK_THROWS_AS(ekg::cycle_of(view, 0), std::out_of_range);
        CHECK_THROWS_AS(ekg::cycle_of(view, 31), std::out_of_range);
    }
}

TEST_CASE("open cycle through 7")
{
    const auto view = ekg::build_view(terms_10k(), 10'000);
    const auto rec = ekg::cycle_of(view, 7);
    REQUIRE(!rec.closed());
    const auto& o = std::get<ekg::open_cycle>(rec.status);
    CHECK(rec.representative == 7);
    CHECK(o.escape_value > 10'000);
    CHECK(view.forward(o.segment.back()) == o.escape_value);
    CHECK(view.inverse(o.segment.front()) == 0);
    CHECK(contains_run(o.segment, {22, 27, 26, 28, 13, 14, 7, 12, 18, 20, 11, 15, 21}));
    for (std::size_t i = 0; i + 1 < o.segment.size(); ++i)
        REQUIRE(view.forward(o.segment[i]) == o.segment[i + 1]);
}

TEST_CASE("enumerate_cycles partitions the horizon")
{
    const auto view = ekg::build_view(terms_10k(), 10'000);
    const auto recs = ekg::enumerate_cycles(view, view.horizon());

    std::vector<int> hits(view.horizon() + 1, 0);
    value_t prev_rep = 0;
    for (const auto& r : recs) {
        REQUIRE(r.representative > prev_rep);
        prev_rep = r.representative;
        REQUIRE(*std::min_element(r.elements().begin(), r.elements().end()) == r.representative);
        for (value_t v : r.elements())
            ++hits[v];
        if (r.closed()) {
            const auto& m = r.elements();
            for (std::size_t i = 0; i < m.size(); ++i)
                REQUIRE(view.forward(m[i]) == m[(i + 1) % m.size()]);
        }
    }
    for (value_t v = 1; v <= view.horizon(); ++v)
        REQUIRE(hits[v] == 1);
}

TEST_CASE("first closed cycles at a small horizon")
{
    const auto view = ekg::build_view(terms_10k(), 10'000);
    std::vector<value_t> reps;
    std::vector<std::size_t> lens;
    for (const auto& r : ekg::enumerate_cycles(view, 359))
        if (r.closed()) {
            reps.push_back(r.representative);
            lens.push_back(r.elements().size());
        }
    CHECK(reps == std::vector<value_t>{1, 2, 3, 8, 40, 64, 121, 149, 359});
    CHECK(lens == std::vector<std::size_t>{1, 1, 6, 1, 1, 1, 2, 12, 11});
}

TEST_CASE("enumerate_cycles clamps the representative bound to the horizon")
{
    const auto view = ekg::build_view(oracle::ekg30, 30);
    const auto recs = ekg::enumerate_cycles(view, 1000);
    std::size_t total = 0;
    for (const auto& r : recs)
        total += r.elements().size();
    CHECK(total == 30);
}

TEST_CASE("verify_prefix_coverage")
{
    const auto view = ekg::build_view(oracle::ekg30, 30);
    CHECK(static_cast<bool>(ekg::verify_prefix_coverage(view, 13)));
    const auto miss = ekg::verify_prefix_coverage(view, 17);
    CHECK(!miss);
    CHECK(miss.smallest_missing == 17);
    CHECK(static_cast<bool>(ekg::verify_prefix_coverage(view, 0)));
    // k past the horizon takes the scanning path.
    const auto wide = ekg::verify_prefix_coverage(view, 40);
    CHECK(!wide);
    CHECK(wide.smallest_missing == 17);
}

TEST_CASE("resolve_cycle extends the horizon until the cycle closes")
{
    ekg::generator g;
    const auto rec = ekg::resolve_cycle(g, 149, 200, 100'000);
    REQUIRE(rec.closed());
    CHECK(rec.elements().size() == 12);
    CHECK(rec.representative == 149);
    CHECK(rec.horizon > 200);

    const auto capped = ekg::resolve_cycle(g, 7, 1000, 5000);
    CHECK(!capped.closed());
    CHECK(capped.horizon == 5000);
}

TEST_CASE("larger closed cycles")
{
    ekg::generator g;
    const auto view = ekg::build_view(g.generate_count(3'000'000), 3'000'000);
    std::vector<std::pair<value_t, std::size_t>> got;
    for (const auto& rec : ekg::enumerate_cycles(view, 252'000))
        if (rec.closed() && rec.representative > 359)
            got.emplace_back(rec.representative, rec.elements().size());
    const std::vector<std::pair<value_t, std::size_t>> want{{2879, 25}, {5563, 8}, {28571, 22}, {251677, 11}};
    CHECK(got == want);
}
