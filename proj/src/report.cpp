#include "ekg/report.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace ekg::report {

std::string format_double(double x)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

json rule_json(const rule& r)
{
    return json{{"threshold", r.threshold}, {"prefix", r.prefix}};
}

json violations_json(std::span<const violation> v)
{
    json arr = json::array();
    for (const auto& x : v)
        arr.push_back(json{{"check", x.check}, {"index", x.index}, {"value", x.value}, {"detail", x.detail}});
    return arr;
}

json conjecture0(std::size_t range, std::span<const violation> v)
{
    return json{{"range", range}, {"violations", violations_json(v)}};
}

json lemma_audit(const std::string& lemma, std::size_t range, std::span<const violation> v)
{
    return json{{"lemma", lemma}, {"range", range}, {"violations", violations_json(v)}};
}

json fit(const fit_summary& s)
{
    json samples = json::array();
    for (const auto& f : s.samples)
        samples.push_back(json{{"n", f.n}, {"a", f.a}, {"c", f.c}});

    json hist{{"bin_width", fit_summary::bin_width},
              {"low", -1.0},
              {"high", 1.0},
              {"underflow", s.histogram.front()},
              {"counts", std::vector<std::size_t>(s.histogram.begin() + 1, s.histogram.end() - 1)},
              {"overflow", s.histogram.back()}};

    return json{{"log", "natural"},
                {"samples", std::move(samples)},
                {"histogram", std::move(hist)},
                {"median", s.median ? json(*s.median) : json(nullptr)},
                {"c_prime_ref", s.c_prime}};
}

json lines(const line_summary& s)
{
    json per = json::object();
    for (term_kind k : {term_kind::other, term_kind::prime, term_kind::three_prime}) {
        const auto& c = s[static_cast<std::size_t>(k)];
        per[to_string(k)] = json{{"slope", line_slope(k)}, {"count", c.count}, {"mean", c.mean}, {"max_abs", c.max_abs}};
    }
    return json{{"log", "natural"}, {"per_class", std::move(per)}};
}

json extremes(const ratio_extremes_result& r)
{
    auto q = [](const rational& x) { return json{{"num", x.num}, {"den", x.den}}; };
    return json{{"min_ratio", q(r.min_ratio)},
                {"argmin", r.argmin},
                {"max_ratio", q(r.max_ratio)},
                {"argmax", r.argmax}};
}

json cycle(const cycle_record& rec)
{
    json j{{"representative", rec.representative}};
    if (const auto* c = std::get_if<closed_cycle>(&rec.status)) {
        j["status"] = "closed";
        j["length"] = c->length();
        j["members"] = c->members;
    } else {
        const auto& o = std::get<open_cycle>(rec.status);
        j["status"] = "open";
        j["segment"] = o.segment;
        j["escape_value"] = o.escape_value;
    }
    j["horizon"] = rec.horizon;
    return j;
}

void write_cycles_jsonl(std::ostream& out, std::span<const cycle_record> records)
{
    for (const auto& r : records)
        out << cycle(r).dump() << '\n';
}

namespace {

void put_controlling(std::ostream& out, const generator& g, std::size_t n)
{
    if (n < 2)
        return;
    const auto ds = g.controlling_divisors(n);
    for (std::size_t i = 0; i < ds.size(); ++i)
        out << (i ? ";" : "") << ds[i];
}

} // namespace

void write_terms_csv(std::ostream& out, std::span<const value_t> terms, const factor_table& ft,
                     const generator* traced)
{
    out << "n,a,class" << (traced ? ",controlling" : "") << '\n';
    for (std::size_t i = 0; i < terms.size(); ++i) {
        out << i + 1 << ',' << terms[i] << ',' << to_string(classify_term(ft, terms[i]).kind);
        if (traced) {
            out << ',';
            put_controlling(out, *traced, i + 1);
        }
        out << '\n';
    }
}

void write_terms_jsonl(std::ostream& out, std::span<const value_t> terms, const generator* traced)
{
    for (std::size_t i = 0; i < terms.size(); ++i) {
        json j{{"n", i + 1}, {"a", terms[i]}};
        if (traced)
            j["controlling"] = i == 0 ? std::vector<value_t>{} : traced->controlling_divisors(i + 1);
        out << j.dump() << '\n';
    }
}

void write_fit_csv(std::ostream& out, std::span<const fit_sample> samples)
{
    out << "n,c\n";
    for (const auto& f : samples)
        out << f.n << ',' << format_double(f.c) << '\n';
}

} // namespace ekg::report
