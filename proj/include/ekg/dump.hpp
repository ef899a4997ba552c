#pragma once

#include "ekg/generator.hpp"
#include "ekg/types.hpp"

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

namespace ekg {

// "EKG1" binary dump, all integers little-endian:
//
//   offset  size    field
//   0       4       magic 'E' 'K' 'G' '1'
//   4       1       format version (1)
//   5       1       threshold M
//   6       2       prefix length L
//   8       8*L     prefix values
//   8+8L    8       term count C
//   16+8L   8*C     a(1..C)

inline constexpr unsigned char dump_magic[4] = {0x45, 0x4B, 0x47, 0x31};
inline constexpr unsigned char dump_version = 1;

class dump_format_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct sequence_dump {
    ekg::rule rule;
    std::vector<value_t> terms;
};

/// Throws std::invalid_argument if the rule does not fit the header
/// (threshold > 255 or more than 65535 prefix values).
void write_dump(std::ostream& out, const rule& r, std::span<const value_t> terms);

/// Throws dump_format_error on wrong magic, unknown version, or truncation.
sequence_dump read_dump(std::istream& in);

} // namespace ekg
