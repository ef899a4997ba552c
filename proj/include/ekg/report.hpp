#pragma once

#include "ekg/analysis.hpp"
#include "ekg/generator.hpp"
#include "ekg/permutation.hpp"

#include <iosfwd>
#include "json.hpp"
#include <span>
#include <string>
#include <vector>

// JSON and CSV report shapes. ordered_json keeps field order fixed so the
// same inputs always serialize to the same bytes.

namespace ekg::report {

using json = nlohmann::ordered_json;

json rule_json(const rule& r);
json violations_json(std::span<const violation> v);

/// {range, violations[]}
json conjecture0(std::size_t range, std::span<const violation> v);

/// {lemma, range, violations[]}
json lemma_audit(const std::string& lemma, std::size_t range, std::span<const violation> v);

/// {samples[], histogram, median, c_prime_ref}
json fit(const fit_summary& s);

/// {log, per_class: {prime|three_prime|other: {slope, count, mean, max_abs}}}
json lines(const line_summary& s);

/// {min_ratio: {num, den}, argmin[], max_ratio, argmax[]}
json extremes(const ratio_extremes_result& r);

/// {representative, status, length?, members|segment, escape_value?, horizon}
json cycle(const cycle_record& rec);

/// One JSON object per line.
void write_cycles_jsonl(std::ostream& out, std::span<const cycle_record> records);

/// Header "n,a,class" (plus ",controlling" when gen is tracing, divisors
/// separated by ';'). ft must cover every value.
void write_terms_csv(std::ostream& out, std::span<const value_t> terms, const factor_table& ft,
                     const generator* traced = nullptr);

/// {"n":..,"a":..[,"controlling":[..]]} per line.
void write_terms_jsonl(std::ostream& out, std::span<const value_t> terms, const generator* traced = nullptr);

/// Header "n,c".
void write_fit_csv(std::ostream& out, std::span<const fit_sample> samples);

/// Shortest round-trip decimal form, so CSV and JSON agree bit for bit.
std::string format_double(double x);

} // namespace ekg::report
