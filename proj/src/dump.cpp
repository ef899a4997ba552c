#include "ekg/dump.hpp"

#include <array>
#include <istream>
#include <ostream>
#include <string>

namespace ekg {
namespace {

template <std::size_t N>
void put_le(std::ostream& out, std::uint64_t v)
{
    std::array<char, N> buf;
    for (std::size_t i = 0; i < N; ++i)
        buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    out.write(buf.data(), N);
}

template <std::size_t N>
std::uint64_t get_le(std::istream& in, const char* what)
{
    std::array<unsigned char, N> buf;
    if (!in.read(reinterpret_cast<char*>(buf.data()), N))
        throw dump_format_error(std::string("EKG1: truncated ") + what);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < N; ++i)
        v |= std::uint64_t{buf[i]} << (8 * i);
    return v;
}

} // namespace

void write_dump(std::ostream& out, const rule& r, std::span<const value_t> terms)
{
    if (r.threshold > 0xFF)
        throw std::invalid_argument("EKG1: threshold does not fit one byte");
    if (r.prefix.size() > 0xFFFF)
        throw std::invalid_argument("EKG1: prefix longer than 65535");

    out.write(reinterpret_cast<const char*>(dump_magic), 4);
    put_le<1>(out, dump_version);
    put_le<1>(out, r.threshold);
    put_le<2>(out, r.prefix.size());
    for (value_t v : r.prefix)
        put_le<8>(out, v);
    put_le<8>(out, terms.size());
    for (value_t v : terms)
        put_le<8>(out, v);
}

sequence_dump read_dump(std::istream& in)
{
    std::array<unsigned char, 4> magic{};
    if (!in.read(reinterpret_cast<char*>(magic.data()), 4))
        throw dump_format_error("EKG1: truncated magic");
    if (!std::equal(magic.begin(), magic.end(), dump_magic))
        throw dump_format_error("EKG1: bad magic");
    if (get_le<1>(in, "version") != dump_version)
        throw dump_format_error("EKG1: unsupported version");

    sequence_dump d;
    d.rule.threshold = get_le<1>(in, "threshold");
    const auto prefix_len = get_le<2>(in, "prefix length");
    d.rule.prefix.resize(prefix_len);
    for (auto& v : d.rule.prefix)
        v = get_le<8>(in, "prefix");
    const auto count = get_le<8>(in, "term count");
    // Grow as we read so a corrupt count cannot force a huge allocation.
    for (std::uint64_t i = 0; i < count; ++i)
        d.terms.push_back(get_le<8>(in, "terms"));
    return d;
}

} // namespace ekg
