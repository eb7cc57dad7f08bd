#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace primegaps {

// Integer from "123", "2^34" or "1e9"; throws std::invalid_argument on
// malformed input or values that do not fit / are not integral.
uint64_t parse_uint(const std::string& text);

// Real from the same notations.
double parse_real(const std::string& text);

// Checkpoint grammar: "2^a..2^b" (inclusive doubling grid) or a comma list
// of numbers. Result is strictly increasing.
std::vector<uint64_t> parse_checkpoints(const std::string& text);

}  // namespace primegaps
