#include "ekg/cli.hpp"

#include "ekg/analysis.hpp"
#include "ekg/dump.hpp"
#include "ekg/permutation.hpp"
#include "ekg/report.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

namespace ekg::cli {
namespace {

struct usage_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct io_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::vector<std::string> commands = {"generate", "oracle-check", "conjectures", "lemmas", "cycles",
                                           "fit",      "lines",        "extremes",    "invert", "predict"};

// Sends output either to the caller's stream or to cfg.out via temp file + rename.
void emit(const run_config& cfg, std::ostream& fallback, bool binary,
          const std::function<void(std::ostream&)>& write)
{
    if (cfg.out.empty()) {
        write(fallback);
        fallback.flush();
        return;
    }
    const std::filesystem::path target(cfg.out);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
        if (!f)
            throw io_failure("cannot open " + tmp.string() + " for writing");
        write(f);
        f.close();
        if (!f)
            throw io_failure("write to " + tmp.string() + " failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw io_failure("cannot rename into " + target.string());
    }
}

void emit_json(const run_config& cfg, std::ostream& data, const report::json& j)
{
    emit(cfg, data, false, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
}

std::size_t count_or(const run_config& cfg, std::size_t fallback)
{
    return cfg.count.value_or(fallback);
}

void require_canonical(const run_config& cfg, const rule& r)
{
    if (!r.canonical())
        throw usage_failure(cfg.command + " applies to the EKG rule only (threshold 2, prefix 1,2)");
}

/// stride, 2*stride, ... <= n, skipping indices below 3.
std::vector<std::size_t> strided(std::size_t n, std::size_t stride)
{
    std::vector<std::size_t> out;
    for (std::size_t i = stride; i <= n; i += stride)
        if (i >= 3)
            out.push_back(i);
    return out;
}

int cmd_generate(const run_config& cfg, const rule& r, std::ostream& data)
{
    if (cfg.count.has_value() == cfg.max_value.has_value())
        throw usage_failure("generate needs exactly one of --count or --max-value");
    const std::string format = cfg.format.empty() ? "csv" : cfg.format;
    if (format != "bin" && format != "csv" && format != "jsonl")
        throw usage_failure("generate writes bin, csv or jsonl, not " + format);

    generator gen(r, 0, cfg.trace);
    std::span<const value_t> terms =
        cfg.count ? gen.generate_count(*cfg.count) : gen.generate_until_value(*cfg.max_value);
    const generator* traced = cfg.trace ? &gen : nullptr;

    if (format == "bin")
        emit(cfg, data, true, [&](std::ostream& o) { write_dump(o, r, terms); });
    else if (format == "csv")
        emit(cfg, data, false, [&](std::ostream& o) { report::write_terms_csv(o, terms, gen.factors(), traced); });
    else
        emit(cfg, data, false, [&](std::ostream& o) { report::write_terms_jsonl(o, terms, traced); });
    return ok;
}

int cmd_oracle_check(const run_config& cfg, const rule& r, std::ostream& data)
{
    const std::size_t n = count_or(cfg, 10'000);
    generator gen(r);
    const auto fast = gen.generate_count(n);
    const auto slow = naive_generate(r, n);

    report::json mismatches = report::json::array();
    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (fast[i] == slow[i])
            continue;
        if (++total <= 20)
            mismatches.push_back({{"index", i + 1}, {"fast", fast[i]}, {"naive", slow[i]}});
    }
    emit_json(cfg, data,
              {{"rule", report::rule_json(r)}, {"count", n}, {"mismatch_count", total}, {"mismatches", mismatches}});
    return total ? violation_found : ok;
}

int cmd_conjectures(const run_config& cfg, const rule& r, std::ostream& data)
{
    require_canonical(cfg, r);
    const std::size_t n = count_or(cfg, 100'000);
    generator gen(r);
    const auto terms = gen.generate_count(n);
    const auto v = check_conjecture0(terms, gen.factors());
    emit_json(cfg, data, report::conjecture0(n, v));
    return v.empty() ? ok : violation_found;
}

int cmd_lemmas(const run_config& cfg, const rule& r, std::ostream& data)
{
    require_canonical(cfg, r);
    const std::size_t n = count_or(cfg, 100'000);
    generator gen(r);
    const auto terms = gen.generate_count(n);
    const auto& ft = gen.factors();
    const auto sample = even_sample(n, 1000);

    const auto l1 = check_lemma1(terms, ft);
    const auto l4 = check_lemma4(terms, ft, sample);
    const auto l5a = check_lemma5a(terms, ft);
    const auto l6 = check_lemma6(terms, ft);

    report::json audits = report::json::array();
    audits.push_back(report::lemma_audit("lemma1", n, l1));
    audits.push_back(report::lemma_audit("lemma4", n, l4));
    audits.push_back(report::lemma_audit("lemma5a", n, l5a));
    audits.push_back(report::lemma_audit("lemma6", n, l6));
    emit_json(cfg, data, {{"audits", audits}});

    const bool clean = l1.empty() && l4.empty() && l5a.empty() && l6.empty();
    return clean ? ok : violation_found;
}

int cmd_cycles(const run_config& cfg, const rule& r, std::ostream& data)
{
    generator gen(r);
    const auto view = build_view(gen.generate_count(cfg.horizon), cfg.horizon);
    const auto records = enumerate_cycles(view, cfg.max_value.value_or(1000));
    emit(cfg, data, false, [&](std::ostream& o) { report::write_cycles_jsonl(o, records); });
    return ok;
}

int cmd_fit(const run_config& cfg, const rule& r, std::ostream& data)
{
    const std::size_t n = count_or(cfg, 1'000'000);
    generator gen(r);
    const auto terms = gen.generate_count(n);
    std::vector<std::size_t> idx;
    for (std::size_t i : strided(n, cfg.stride))
        if (classify_term(gen.factors(), terms[i - 1]).kind == term_kind::other)
            idx.push_back(i);
    auto summary = summarize_fit(fit_c(terms, idx));
    if (cfg.format == "csv")
        emit(cfg, data, false, [&](std::ostream& o) { report::write_fit_csv(o, summary.samples); });
    else
        emit_json(cfg, data, report::fit(summary));
    return ok;
}

int cmd_lines(const run_config& cfg, const rule& r, std::ostream& data)
{
    const std::size_t n = count_or(cfg, 1'000'000);
    generator gen(r);
    const auto terms = gen.generate_count(n);
    emit_json(cfg, data, report::lines(line_residuals(terms, gen.factors(), strided(n, cfg.stride))));
    return ok;
}

int cmd_extremes(const run_config& cfg, const rule& r, std::ostream& data)
{
    require_canonical(cfg, r);
    const std::size_t n = count_or(cfg, 1'000'000);
    generator gen(r);
    emit_json(cfg, data, report::extremes(ratio_extremes(gen.generate_count(n))));
    return ok;
}

int cmd_invert(const run_config& cfg, const rule& r, std::ostream& data)
{
    if (!cfg.value)
        throw usage_failure("invert needs --value");
    const std::size_t n = count_or(cfg, 1'000'000);
    generator gen(r);
    const auto terms = gen.generate_count(n);
    report::json j{{"value", *cfg.value}, {"count", n}, {"index", nullptr}};
    for (std::size_t i = 0; i < terms.size(); ++i)
        if (terms[i] == *cfg.value) {
            j["index"] = i + 1;
            break;
        }
    emit_json(cfg, data, j);
    return ok;
}

int cmd_predict(const run_config& cfg, const rule& r, std::ostream& data)
{
    require_canonical(cfg, r);
    if (!cfg.value || *cfg.value < 1)
        throw usage_failure("predict needs --value >= 1");
    const value_t m = *cfg.value;
    const auto ft = build_spf(std::max<value_t>(m, 2));
    const term_class cls = classify_term(ft, m);

    report::json j{{"value", m}, {"class", to_string(cls.kind)}, {"predicted_index", predicted_index(ft, m)}};
    if (cls.kind == term_kind::prime && m >= 3)
        j["prime_position_estimate"] = prime_position_estimate(m);
    if (cfg.count) {
        generator gen(r);
        const auto terms = gen.generate_count(*cfg.count);
        j["actual_index"] = nullptr;
        for (std::size_t i = 0; i < terms.size(); ++i)
            if (terms[i] == m) {
                j["actual_index"] = i + 1;
                break;
            }
    }
    emit_json(cfg, data, j);
    return ok;
}

} // namespace

ekg::rule run_config::rule() const
{
    ekg::rule r = ekg::rule::with_threshold(threshold);
    if (!prefix.empty())
        r.prefix = prefix;
    return r;
}

int run(const run_config& cfg, std::ostream& data, std::ostream& diag)
{
    try {
        if (cfg.threshold < 2)
            throw usage_failure("--threshold must be >= 2");
        if (cfg.stride == 0)
            throw usage_failure("--stride must be positive");
        ekg::rule r = cfg.rule();
        try {
            r.validate();
        } catch (const std::invalid_argument& e) {
            throw usage_failure(e.what());
        }

        if (cfg.command == "generate")
            return cmd_generate(cfg, r, data);
        if (cfg.command == "oracle-check")
            return cmd_oracle_check(cfg, r, data);
        if (cfg.command == "conjectures")
            return cmd_conjectures(cfg, r, data);
        if (cfg.command == "lemmas")
            return cmd_lemmas(cfg, r, data);
        if (cfg.command == "cycles")
            return cmd_cycles(cfg, r, data);
        if (cfg.command == "fit")
            return cmd_fit(cfg, r, data);
        if (cfg.command == "lines")
            return cmd_lines(cfg, r, data);
        if (cfg.command == "extremes")
            return cmd_extremes(cfg, r, data);
        if (cfg.command == "invert")
            return cmd_invert(cfg, r, data);
        if (cfg.command == "predict")
            return cmd_predict(cfg, r, data);
        throw usage_failure("unknown command " + cfg.command);
    } catch (const usage_failure& e) {
        diag << "ekg: " << e.what() << '\n';
        return usage_error;
    } catch (const io_failure& e) {
        diag << "ekg: " << e.what() << '\n';
        return io_error;
    } catch (const invariant_violation& e) {
        diag << "ekg: invariant violated: " << e.what() << '\n';
        return violation_found;
    } catch (const std::exception& e) {
        diag << "ekg: " << e.what() << '\n';
        return io_error;
    }
}

int main(int argc, const char* const* argv, std::ostream& data, std::ostream& diag)
{
    run_config cfg;
    CLI::App app{"EKG sequence generator and verification toolkit", "ekg"};
    app.add_option("command", cfg.command, "Command to run")
        ->required()
        ->check(CLI::IsMember(commands));

    std::size_t count = 0;
    value_t max_value = 0, value = 0;
    auto* count_opt = app.add_option("--count", count, "Number of terms to generate");
    auto* max_opt = app.add_option("--max-value", max_value,
                                   "generate: stop at the first term >= this; cycles: largest representative");
    auto* value_opt = app.add_option("--value", value, "Value to look up (invert, predict)");
    app.add_option("--threshold", cfg.threshold, "Minimum gcd of consecutive terms")->capture_default_str();
    app.add_option("--prefix", cfg.prefix, "Comma-separated starting terms (default 1..threshold)")
        ->delimiter(',');
    app.add_option("--horizon", cfg.horizon, "Terms in the permutation view (cycles)")->capture_default_str();
    app.add_option("--stride", cfg.stride, "Index sampling stride (fit, lines)")->capture_default_str();
    app.add_option("--format", cfg.format, "bin, csv or jsonl for generate (default csv); csv or json for fit")
        ->check(CLI::IsMember({"bin", "csv", "jsonl", "json"}));
    app.add_option("--out", cfg.out, "Output file (default: standard output)");
    app.add_flag("--trace", cfg.trace, "Record controlling divisors (generate)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        data << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        diag << "ekg: " << e.what() << '\n' << "Run with --help for usage.\n";
        return usage_error;
    }

    if (count_opt->count())
        cfg.count = count;
    if (max_opt->count())
        cfg.max_value = max_value;
    if (value_opt->count())
        cfg.value = value;
    return run(cfg, data, diag);
}

} // namespace ekg::cli
