#include "entropic/value.hpp"

#include <string>

namespace entropic {

std::string_view sort_name(Sort sort) {
  switch (sort) {
    case Sort::Int: return "int";
    case Sort::Bit: return "bit";
    case Sort::Char: return "char";
  }
  return "?";
}

Sort parse_sort(std::string_view text) {
  if (text == "int") return Sort::Int;
  if (text == "bit") return Sort::Bit;
  if (text == "char") return Sort::Char;
  throw ValueError("unknown sort '" + std::string(text) + "'");
}

std::string_view op_name(OpKind op) { return op == OpKind::Add ? "add" : "sub"; }

std::string_view relation_name(Relation rel) {
  switch (rel) {
    case Relation::Eq: return "eq";
    case Relation::Ne: return "ne";
    case Relation::Lt: return "lt";
    case Relation::Le: return "le";
    case Relation::Gt: return "gt";
    case Relation::Ge: return "ge";
  }
  return "?";
}

std::string_view relation_symbol(Relation rel) {
  switch (rel) {
    case Relation::Eq: return "=";
    case Relation::Ne: return "!=";
    case Relation::Lt: return "<";
    case Relation::Le: return "<=";
    case Relation::Gt: return ">";
    case Relation::Ge: return ">=";
  }
  return "?";
}

Relation negate(Relation rel) {
  switch (rel) {
    case Relation::Eq: return Relation::Ne;
    case Relation::Ne: return Relation::Eq;
    case Relation::Lt: return Relation::Ge;
    case Relation::Le: return Relation::Gt;
    case Relation::Gt: return Relation::Le;
    case Relation::Ge: return Relation::Lt;
  }
  return rel;
}

Value apply_op(OpKind op, Value a, Value b) {
  if (a.sort == Sort::Char || b.sort == Sort::Char) {
    throw ValueError("arithmetic on a character value");
  }
  std::int64_t r = op == OpKind::Add ? a.v + b.v : a.v - b.v;
  if (a.sort == Sort::Bit || b.sort == Sort::Bit) {
    return Value::bit(((r % 2) + 2) % 2);
  }
  if (r > kValueMagnitudeCap || r < -kValueMagnitudeCap) {
    throw ValueError("integer value exceeds magnitude cap 2^31");
  }
  return Value::integer(r);
}

bool compare(Relation rel, Value a, Value b) {
  if ((a.sort == Sort::Char) != (b.sort == Sort::Char)) {
    throw ValueError("comparison between a character and a number");
  }
  switch (rel) {
    case Relation::Eq: return a.v == b.v;
    case Relation::Ne: return a.v != b.v;
    case Relation::Lt: return a.v < b.v;
    case Relation::Le: return a.v <= b.v;
    case Relation::Gt: return a.v > b.v;
    case Relation::Ge: return a.v >= b.v;
  }
  return false;
}

Value coerce(Value v, Sort target) {
  if (v.sort == target) return v;
  if (target == Sort::Char || v.sort == Sort::Char) {
    throw ValueError("cannot store a " + std::string(sort_name(v.sort)) + " value in a " +
                     std::string(sort_name(target)) + " function");
  }
  if (target == Sort::Bit) return Value::bit(((v.v % 2) + 2) % 2);
  return Value::integer(v.v);
}

std::string format_value(Value v) {
  if (v.sort == Sort::Char) {
    if (v.v >= 0 && v.v < 26) return std::string(1, static_cast<char>('a' + v.v));
    return "#" + std::to_string(v.v);
  }
  return std::to_string(v.v);
}

}  // namespace entropic
