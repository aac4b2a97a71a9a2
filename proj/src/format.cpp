#include "qpath/format.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace qpath::format {

namespace {

// q1 is printed first, so string order compares coordinates from q1 upward.
Vertex reading_order(Vertex v, int n) {
    Vertex r = 0;
    for (int i = 0; i < n; ++i, v >>= 1) r = (r << 1) | (v & 1);
    return r;
}

std::vector<std::size_t> line_order(const Decomposition& d) {
    const int n = d.dim().value();
    std::vector<std::size_t> order(d.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto pa = d.path(a);
        const auto pb = d.path(b);
        for (std::size_t i = 0; i < pa.size(); ++i) {
            if (pa[i] != pb[i]) return reading_order(pa[i], n) < reading_order(pb[i], n);
        }
        return false;
    });
    return order;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

// Consumes "<key>=<decimal>" followed by `terminator`.
std::uint64_t field(std::string_view& rest, std::string_view key, char terminator, std::size_t line) {
    if (rest.substr(0, key.size()) != key || rest.size() <= key.size() || rest[key.size()] != '=')
        fail(line, "expected " + std::string(key) + "=");
    rest.remove_prefix(key.size() + 1);
    const std::size_t end = rest.find(terminator);
    if (end == std::string_view::npos || end == 0) fail(line, "bad value for " + std::string(key));
    const std::string_view digits = rest.substr(0, end);
    if (digits.size() > 1 && digits[0] == '0') fail(line, "leading zero in " + std::string(key));
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) fail(line, "bad value for " + std::string(key));
    rest.remove_prefix(end + 1);
    return value;
}

}  // namespace

void write_decomposition(std::ostream& os, const Decomposition& d) {
    const int n = d.dim().value();
    os << "QPATH v1 n=" << n << " k=" << d.length() << " count=" << d.size() << '\n';
    const std::size_t stride = d.stride();
    std::string line;
    line.reserve(stride * static_cast<std::size_t>(n + 1));
    for (std::size_t p : line_order(d)) {
        line.clear();
        const auto path = d.path(p);
        for (std::size_t i = 0; i < stride; ++i) {
            if (i) line.push_back(' ');
            Vertex v = path[i];
            for (int b = 0; b < n; ++b, v >>= 1) line.push_back((v & 1) ? '1' : '0');
        }
        line.push_back('\n');
        os.write(line.data(), static_cast<std::streamsize>(line.size()));
    }
}

std::string serialize(const Decomposition& d) {
    std::ostringstream os;
    write_decomposition(os, d);
    return std::move(os).str();
}

Decomposition parse(std::string_view text) {
    const std::size_t header_end = text.find('\n');
    if (header_end == std::string_view::npos) fail(1, "missing header line");
    std::string_view rest = text.substr(0, header_end + 1);
    constexpr std::string_view magic = "QPATH v1 ";
    if (rest.substr(0, magic.size()) != magic) fail(1, "expected \"QPATH v1\" header");
    rest.remove_prefix(magic.size());
    const std::uint64_t n = field(rest, "n", ' ', 1);
    const std::uint64_t k = field(rest, "k", ' ', 1);
    const std::uint64_t count = field(rest, "count", '\n', 1);
    if (n < 1 || n > static_cast<std::uint64_t>(kMaxDim)) fail(1, "n out of range");
    if (k < 1 || k >= (std::uint64_t{1} << n) || k > 0x7fffffff) fail(1, "k out of range");

    const Dim dim(static_cast<int>(n));
    const std::size_t stride = static_cast<std::size_t>(k) + 1;
    const std::size_t line_bytes = stride * static_cast<std::size_t>(n + 1);
    std::string_view body = text.substr(header_end + 1);
    if (count > 0 && k >= body.size()) fail(2, "body too short for count=" + std::to_string(count));
    if (body.size() / line_bytes != count || body.size() % line_bytes != 0)
        fail(2, "body size does not match count=" + std::to_string(count));

    Decomposition d(dim, static_cast<int>(k));
    d.reserve(static_cast<std::size_t>(count));
    std::vector<Vertex> path(stride);
    for (std::uint64_t p = 0; p < count; ++p) {
        const std::size_t line_no = static_cast<std::size_t>(p) + 2;
        const std::string_view line = body.substr(static_cast<std::size_t>(p) * line_bytes, line_bytes);
        for (std::size_t t = 0; t < stride; ++t) {
            const std::string_view token = line.substr(t * static_cast<std::size_t>(n + 1), static_cast<std::size_t>(n));
            Vertex v = 0;
            for (std::size_t b = 0; b < token.size(); ++b) {
                if (token[b] == '1') v |= Vertex{1} << b;
                else if (token[b] != '0') fail(line_no, "vertex " + std::to_string(t) + " is not an " + std::to_string(n) + "-bit binary string");
            }
            path[t] = v;
            const char sep = line[t * static_cast<std::size_t>(n + 1) + static_cast<std::size_t>(n)];
            if (sep != (t + 1 == stride ? '\n' : ' ')) fail(line_no, "expected " + std::to_string(stride) + " single-space separated vertices");
        }
        d.add_path(path);
    }
    return d;
}

Decomposition read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.view());
}

Decomposition sorted(const Decomposition& d) {
    Decomposition out(d.dim(), d.length());
    out.reserve(d.size());
    for (std::size_t p : line_order(d)) out.add_path(d.path(p));
    return out;
}

}  // namespace qpath::format
