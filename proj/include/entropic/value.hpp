#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace entropic {

/// Value sorts of the mini-language. `Bit` is the two-element field: sums fold mod 2.
enum class Sort : std::uint8_t { Int, Bit, Char };

std::string_view sort_name(Sort sort);
Sort parse_sort(std::string_view text);

inline constexpr std::int64_t kValueMagnitudeCap = std::int64_t{1} << 31;

struct Value {
  Sort sort = Sort::Int;
  std::int64_t v = 0;

  static constexpr Value integer(std::int64_t x) { return {Sort::Int, x}; }
  static constexpr Value bit(std::int64_t x) { return {Sort::Bit, x & 1}; }
  static constexpr Value character(std::int64_t x) { return {Sort::Char, x}; }

  friend constexpr bool operator==(const Value&, const Value&) = default;
};

class ValueError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OpKind : std::uint8_t { Add, Sub };

enum class Relation : std::uint8_t { Eq, Ne, Lt, Le, Gt, Ge };

std::string_view op_name(OpKind op);
std::string_view relation_name(Relation rel);    // eq, ne, ...
std::string_view relation_symbol(Relation rel);  // =, !=, ...
Relation negate(Relation rel);

/// Arithmetic on values. Bit wins over Int; Char takes no arithmetic.
Value apply_op(OpKind op, Value a, Value b);
bool compare(Relation rel, Value a, Value b);

/// Coerce a value into the declared sort of an assignment target.
Value coerce(Value v, Sort target);

/// Characters print as letters, numbers as decimals.
std::string format_value(Value v);

}  // namespace entropic
