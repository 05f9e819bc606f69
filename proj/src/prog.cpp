#include "entropic/prog.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace entropic {

namespace {

constexpr std::int64_t kMaxInternalIndex = std::int64_t{1} << 20;

}  // namespace

Term Term::make_const(Value v) {
  Term t;
  t.kind = Kind::Const;
  t.constant = v;
  return t;
}

Term Term::make_input(std::uint32_t fn, std::vector<Term> args) {
  Term t;
  t.kind = Kind::Input;
  t.fn = fn;
  t.args = std::move(args);
  return t;
}

Term Term::make_internal(std::uint32_t fn, std::vector<Term> args) {
  Term t;
  t.kind = Kind::Internal;
  t.fn = fn;
  t.args = std::move(args);
  return t;
}

Term Term::make_op(OpKind op, Term lhs, Term rhs) {
  Term t;
  t.kind = Kind::Op;
  t.op = op;
  t.args.reserve(2);
  t.args.push_back(std::move(lhs));
  t.args.push_back(std::move(rhs));
  return t;
}

std::optional<std::uint32_t> Program::find_external(std::string_view name) const {
  for (std::size_t i = 0; i < externals.size(); ++i) {
    if (externals[i].name == name) return static_cast<std::uint32_t>(i);
  }
  return std::nullopt;
}

std::optional<std::uint32_t> Program::find_internal(std::string_view name) const {
  for (std::size_t i = 0; i < internals.size(); ++i) {
    if (internals[i].name == name) return static_cast<std::uint32_t>(i);
  }
  return std::nullopt;
}

std::optional<std::uint32_t> Program::word_external() const {
  for (std::size_t i = 0; i < externals.size(); ++i) {
    if (externals[i].arity == 1) return static_cast<std::uint32_t>(i);
  }
  return std::nullopt;
}

std::optional<std::size_t> Program::index_of_label(int label) const {
  auto it = std::lower_bound(instructions.begin(), instructions.end(), label,
                             [](const Instruction& ins, int l) { return ins.label < l; });
  if (it == instructions.end() || it->label != label) return std::nullopt;
  return static_cast<std::size_t>(it - instructions.begin());
}

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

RunError::RunError(std::size_t time, const std::string& message)
    : std::runtime_error("t=" + std::to_string(time) + ": " + message), time_(time) {}

Store::Store(const Program& program)
    : values_(program.internals.size()), assigned_(program.internals.size()) {
  for (std::size_t i = 0; i < program.internals.size(); ++i) {
    values_[i].resize(1);
    assigned_[i].resize(1, 0);
  }
}

void Store::reset() {
  for (auto& a : assigned_) std::fill(a.begin(), a.end(), std::uint8_t{0});
}

const Value* Store::get(std::uint32_t fn, std::int64_t arg) const {
  if (arg < 0) return nullptr;
  const auto idx = static_cast<std::size_t>(arg);
  if (idx >= assigned_[fn].size() || !assigned_[fn][idx]) return nullptr;
  return &values_[fn][idx];
}

void Store::set(std::uint32_t fn, std::int64_t arg, Value v) {
  if (arg < 0 || arg > kMaxInternalIndex) {
    throw ValueError("internal index " + std::to_string(arg) + " out of range");
  }
  const auto idx = static_cast<std::size_t>(arg);
  if (idx >= assigned_[fn].size()) {
    values_[fn].resize(idx + 1);
    assigned_[fn].resize(idx + 1, 0);
  }
  values_[fn][idx] = v;
  assigned_[fn][idx] = 1;
}

Value external_value(const FunctionDecl& decl, const Value* arg, const InputInstance& input) {
  if (decl.arity == 0) {
    if (decl.name == "n") return Value::integer(input.n);
    if (decl.name == "alpha") return Value::integer(input.alpha);
    throw ValueError("unknown size parameter '" + decl.name + "'");
  }
  const std::int64_t i = arg->v;
  if (arg->sort == Sort::Char || i < 1 || i > input.n) {
    throw ValueError(decl.name + "(" + format_value(*arg) + ") is outside 1.." +
                     std::to_string(input.n));
  }
  const std::int64_t digit = input.word[static_cast<std::size_t>(i - 1)];
  return decl.sort == Sort::Bit ? Value::bit(digit) : Value{decl.sort, digit};
}

Value eval_term(const Program& program, const Term& term, const Store& store,
                const InputInstance& input) {
  switch (term.kind) {
    case Term::Kind::Const:
      return term.constant;
    case Term::Kind::Op:
      return apply_op(term.op, eval_term(program, term.args[0], store, input),
                      eval_term(program, term.args[1], store, input));
    case Term::Kind::Input: {
      Value arg{};
      if (!term.args.empty()) arg = eval_term(program, term.args[0], store, input);
      return external_value(program.externals[term.fn], &arg, input);
    }
    case Term::Kind::Internal: {
      std::int64_t arg = 0;
      if (!term.args.empty()) arg = eval_term(program, term.args[0], store, input).v;
      const Value* v = store.get(term.fn, arg);
      if (v == nullptr) {
        std::string name = program.internals[term.fn].name;
        if (!term.args.empty()) name += "(" + std::to_string(arg) + ")";
        throw ValueError("read of unassigned internal " + name);
      }
      return *v;
    }
  }
  return {};
}

std::size_t default_step_budget(int n) {
  const auto m = static_cast<std::size_t>(std::max(n, 1));
  return 64 * m * m;
}

void validate_input(const Program& program, const InputInstance& input) {
  if (input.n < 1) throw ValueError("input size must be positive");
  if (input.word.size() != static_cast<std::size_t>(input.n)) {
    throw ValueError("input word length differs from n");
  }
  if (auto w = program.word_external()) {
    const Sort sort = program.externals[*w].sort;
    const int limit = sort == Sort::Bit ? 2 : input.alpha;
    for (auto d : input.word) {
      if (d >= limit) throw ValueError("input letter outside the alphabet");
    }
  }
}

void run_into(const Program& program, const InputInstance& input, std::size_t step_budget,
              Trace& trace, Store& store) {
  trace.input = input;
  trace.events.clear();
  store.reset();

  std::size_t pc = program.entry;
  std::size_t steps = 0;
  bool output_pending = false;
  const auto time = [&] { return trace.events.size() + 1; };

  try {
    while (true) {
      if (++steps > step_budget) {
        throw RunError(time(), "step budget " + std::to_string(step_budget) +
                                   " exceeded (non-termination?)");
      }
      const Instruction& ins = program.instructions[pc];
      if (output_pending && !std::holds_alternative<Halt>(ins.body)) {
        throw RunError(time(), "output " + program.output_name() +
                                   " must be assigned immediately before halt");
      }
      if (const auto* a = std::get_if<Assign>(&ins.body)) {
        std::int64_t arg = 0;
        if (!a->target_args.empty()) {
          arg = eval_term(program, a->target_args[0], store, input).v;
        }
        const Value v =
            coerce(eval_term(program, a->rhs, store, input), program.internals[a->target].sort);
        Event ev;
        ev.kind = Event::Kind::Update;
        ev.instr = static_cast<std::uint32_t>(pc);
        ev.arg = arg;
        ev.value = v;
        trace.events.push_back(ev);
        store.set(a->target, arg, v);
        if (a->target == program.output) output_pending = true;
        ++pc;
      } else if (const auto* b = std::get_if<Branch>(&ins.body)) {
        const bool holds = compare(b->guard.rel, eval_term(program, b->guard.lhs, store, input),
                                   eval_term(program, b->guard.rhs, store, input));
        Event ev;
        ev.kind = Event::Kind::Guard;
        ev.holds = holds;
        ev.instr = static_cast<std::uint32_t>(pc);
        trace.events.push_back(ev);
        pc = holds ? b->then_index : b->else_index;
      } else if (const auto* g = std::get_if<Goto>(&ins.body)) {
        pc = g->index;
      } else {
        if (!output_pending) {
          throw RunError(time(), "halt reached before the output " + program.output_name() +
                                     " was assigned");
        }
        return;
      }
      if (pc >= program.instructions.size()) {
        throw RunError(time(), "execution fell off the end of the program");
      }
    }
  } catch (const ValueError& e) {
    throw RunError(time(), e.what());
  }
}

Trace run(const Program& program, const InputInstance& input, std::size_t step_budget) {
  validate_input(program, input);
  Trace trace;
  Store store(program);
  run_into(program, input, step_budget, trace, store);
  return trace;
}

std::string format_term(const Program& program, const Term& term) {
  switch (term.kind) {
    case Term::Kind::Const:
      return term.constant.sort == Sort::Char ? "'" + format_value(term.constant) + "'"
                                              : format_value(term.constant);
    case Term::Kind::Op:
      return format_term(program, term.args[0]) + (term.op == OpKind::Add ? " + " : " - ") +
             (term.args[1].kind == Term::Kind::Op ? "(" + format_term(program, term.args[1]) + ")"
                                                   : format_term(program, term.args[1]));
    case Term::Kind::Input:
    case Term::Kind::Internal: {
      const auto& decl = term.kind == Term::Kind::Input ? program.externals[term.fn]
                                                        : program.internals[term.fn];
      if (term.args.empty()) return decl.name;
      return decl.name + "(" + format_term(program, term.args[0]) + ")";
    }
  }
  return "?";
}

std::string describe_event(const Program& program, const Trace& trace, std::size_t t) {
  const Event& ev = trace.at(t);
  const Instruction& ins = program.instructions[ev.instr];
  std::ostringstream out;
  if (ev.kind == Event::Kind::Update) {
    const auto& a = std::get<Assign>(ins.body);
    out << program.internals[a.target].name;
    if (!a.target_args.empty()) out << "(" << ev.arg << ")";
    out << " := " << format_term(program, a.rhs) << " [" << format_value(ev.value) << "]";
  } else {
    const auto& b = std::get<Branch>(ins.body);
    const Relation rel = ev.holds ? b.guard.rel : negate(b.guard.rel);
    out << format_term(program, b.guard.lhs) << " " << relation_symbol(rel) << " "
        << format_term(program, b.guard.rhs);
  }
  return out.str();
}

}  // namespace entropic
