#include "primegaps/numfmt.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace primegaps {

namespace {

[[noreturn]] void bad(const std::string& text) {
    throw std::invalid_argument("cannot parse number '" + text + "'");
}

}  // namespace

double parse_real(const std::string& text) {
    if (text.empty()) bad(text);
    const auto caret = text.find('^');
    if (caret != std::string::npos) {
        const double base = parse_real(text.substr(0, caret));
        const double expo = parse_real(text.substr(caret + 1));
        return std::pow(base, expo);
    }
    size_t used = 0;
    double v;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        bad(text);
    }
    if (used != text.size()) bad(text);
    return v;
}

uint64_t parse_uint(const std::string& text) {
    const double v = parse_real(text);
    if (!(v >= 0) || v > 1.8e19 || v != std::floor(v))
        throw std::invalid_argument("'" + text + "' is not a non-negative integer");
    return (uint64_t)v;
}

std::vector<uint64_t> parse_checkpoints(const std::string& text) {
    std::vector<uint64_t> out;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const std::string lo = text.substr(0, dots), hi = text.substr(dots + 2);
        if (lo.rfind("2^", 0) != 0 || hi.rfind("2^", 0) != 0)
            throw std::invalid_argument(
                "range checkpoints must look like 2^a..2^b, got '" + text + "'");
        const uint64_t a = parse_uint(lo.substr(2)), b = parse_uint(hi.substr(2));
        if (a > b || b >= 64)
            throw std::invalid_argument("bad checkpoint range '" + text + "'");
        for (uint64_t k = a; k <= b; ++k) out.push_back(1ULL << k);
        return out;
    }
    size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto piece =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        out.push_back(parse_uint(piece));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    for (size_t i = 1; i < out.size(); ++i)
        if (out[i] <= out[i - 1])
            throw std::invalid_argument("checkpoints must strictly increase");
    return out;
}

}  // namespace primegaps
