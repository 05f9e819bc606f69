#pragma once

// The three builtin algorithms and the functions they compute: XOR-sum of a bit
// word, and the longest proper border (maxPS) of a word computed either by the
// quadratic shift-and-compare algorithm (A0) or the linear failure-function
// algorithm (A1).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entropic/prog.hpp"

namespace entropic {

enum class ModelId { Xor, MaxPsA0, MaxPsA1 };

/// The function an algorithm is checked against.
enum class OracleKind { Parity, MaxPs };

std::string_view model_name(ModelId id);
std::optional<ModelId> parse_model(std::string_view name);
std::string_view oracle_name(OracleKind kind);
std::optional<OracleKind> parse_oracle(std::string_view name);
OracleKind oracle_of(ModelId id);

/// XOR of the bits of x. Requires an even length.
int sigma_oracle(std::span<const std::uint8_t> x);
/// XOR of the bits of x, any length.
int parity(std::span<const std::uint8_t> x);
/// Length of the longest proper border of w, straight from the definition.
int maxps_oracle(std::span<const std::uint8_t> w);

std::int64_t oracle_value(OracleKind kind, std::span<const std::uint8_t> word);

std::string_view builtin_source(ModelId id);
Program builtin_program(ModelId id);

/// Letters 'a'.. map to 0.., and for bit words '0'/'1' map to 0/1.
std::vector<std::uint8_t> parse_word(std::string_view text);
std::string format_word(std::span<const std::uint8_t> word, bool bits);

}  // namespace entropic
