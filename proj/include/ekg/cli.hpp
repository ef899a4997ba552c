#pragma once

#include "ekg/generator.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ekg::cli {

enum exit_code : int {
    ok = 0,
    io_error = 1,
    usage_error = 2,
    violation_found = 3,
};

struct run_config {
    std::string command;
    std::optional<std::size_t> count;
    std::optional<value_t> max_value;
    std::optional<value_t> value; // invert / predict
    value_t threshold = 2;
    std::vector<value_t> prefix; // empty = 1..threshold
    std::size_t horizon = 1'000'000;
    std::size_t stride = 1000;
    std::string format; // empty = command default (csv for generate, json for fit)
    std::string out; // empty = stdout
    bool trace = false;

    ekg::rule rule() const;
};

/// Dispatches one command. Data goes to cfg.out (atomically, via a temp
/// file and rename) or to `data` when no path is set; diagnostics go to `diag`.
int run(const run_config& cfg, std::ostream& data, std::ostream& diag);

/// Parses argv and calls run(). Parse failures return usage_error.
int main(int argc, const char* const* argv, std::ostream& data, std::ostream& diag);

} // namespace ekg::cli
