#pragma once

// The low-level algorithm language: programs over external (input) and
// internal functions, built from updates, guarded branches, goto and halt.
// Running a program records every update and every guard in the polarity
// that held; goto and halt never appear in a trace.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "entropic/value.hpp"

namespace entropic {

struct FunctionDecl {
  std::string name;
  int arity = 0;
  Sort sort = Sort::Int;
};

struct Term {
  enum class Kind : std::uint8_t { Const, Input, Internal, Op };

  Kind kind = Kind::Const;
  Value constant{};
  OpKind op = OpKind::Add;
  std::uint32_t fn = 0;  // index into externals (Input) or internals (Internal)
  std::vector<Term> args;

  static Term make_const(Value v);
  static Term make_input(std::uint32_t fn, std::vector<Term> args);
  static Term make_internal(std::uint32_t fn, std::vector<Term> args);
  static Term make_op(OpKind op, Term lhs, Term rhs);
};

struct GuardLiteral {
  Relation rel = Relation::Eq;
  Term lhs;
  Term rhs;
};

struct Assign {
  std::uint32_t target = 0;
  std::vector<Term> target_args;
  Term rhs;
};

struct Branch {
  GuardLiteral guard;
  int then_label = 0;
  int else_label = 0;
  std::size_t then_index = 0;
  std::size_t else_index = 0;
};

struct Goto {
  int label = 0;
  std::size_t index = 0;
};

struct Halt {};

struct Instruction {
  int label = 0;
  int line = 0;
  std::variant<Assign, Branch, Goto, Halt> body;
};

class Program {
 public:
  std::vector<FunctionDecl> externals;
  std::vector<FunctionDecl> internals;
  std::uint32_t output = 0;
  std::vector<Instruction> instructions;  // ascending label order
  std::size_t entry = 0;

  std::optional<std::uint32_t> find_external(std::string_view name) const;
  std::optional<std::uint32_t> find_internal(std::string_view name) const;
  const std::string& output_name() const { return internals.at(output).name; }
  /// The arity-1 external holding the input word, if the program reads one.
  std::optional<std::uint32_t> word_external() const;
  std::optional<std::size_t> index_of_label(int label) const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses the textual form:
///   external NAME/ARITY SORT | internal NAME/ARITY SORT | output NAME
///   LABEL: f(args) := term | LABEL: if LIT then LABEL else LABEL
///   LABEL: goto LABEL | LABEL: halt
/// `%` starts a comment.
Program parse_program(std::string_view text);

struct InputInstance {
  int n = 0;
  int alpha = 2;
  std::vector<std::uint8_t> word;  // w(1..n) stored at word[0..n-1]
};

class RunError : public std::runtime_error {
 public:
  RunError(std::size_t time, const std::string& message);
  std::size_t time() const { return time_; }

 private:
  std::size_t time_;
};

/// Values of internal functions. Nothing is assigned at instant 0.
class Store {
 public:
  explicit Store(const Program& program);

  void reset();
  const Value* get(std::uint32_t fn, std::int64_t arg) const;
  void set(std::uint32_t fn, std::int64_t arg, Value v);

 private:
  std::vector<std::vector<Value>> values_;
  std::vector<std::vector<std::uint8_t>> assigned_;
};

/// Value of an external application. Nullary externals `n` and `alpha`
/// are the size parameters; the arity-1 external reads the input word.
Value external_value(const FunctionDecl& decl, const Value* arg, const InputInstance& input);

Value eval_term(const Program& program, const Term& term, const Store& store,
                const InputInstance& input);

struct Event {
  enum class Kind : std::uint8_t { Update, Guard };

  Kind kind = Kind::Update;
  bool holds = true;        // guards: true if the written literal held
  std::uint32_t instr = 0;  // index into Program::instructions
  std::int64_t arg = 0;     // updates: concrete argument of the target
  Value value{};            // updates: value after the update
};

struct Trace {
  InputInstance input;
  std::vector<Event> events;

  std::size_t length() const { return events.size(); }
  /// Event at instant t, 1-based.
  const Event& at(std::size_t t) const { return events.at(t - 1); }
  Value output_value() const { return events.back().value; }
};

std::size_t default_step_budget(int n);

void validate_input(const Program& program, const InputInstance& input);

/// Deterministic run. Throws RunError on unassigned reads, budget overrun,
/// or a misplaced output update.
Trace run(const Program& program, const InputInstance& input, std::size_t step_budget);

/// Same as run() but reuses the caller's buffers.
void run_into(const Program& program, const InputInstance& input, std::size_t step_budget,
              Trace& trace, Store& store);

/// Human-readable form of event t, e.g. `i := 2` or `w(3) != w(4)`.
std::string describe_event(const Program& program, const Trace& trace, std::size_t t);

std::string format_term(const Program& program, const Term& term);

}  // namespace entropic
