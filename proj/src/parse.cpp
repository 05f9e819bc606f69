#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <string>
#include <vector>

#include "entropic/prog.hpp"

namespace entropic {

namespace {

enum class Tok { Name, Int, Char, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::int64_t number = 0;
};

std::vector<Token> tokenize(std::string_view line, int lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < line.size() &&
             (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) {
        ++j;
      }
      out.push_back({Tok::Name, std::string(line.substr(i, j - i)), 0});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      Token t{Tok::Int, std::string(line.substr(i, j - i)), 0};
      auto [p, ec] = std::from_chars(line.data() + i, line.data() + j, t.number);
      if (ec != std::errc() || t.number > kValueMagnitudeCap) {
        throw ParseError(lineno, "integer literal out of range");
      }
      out.push_back(t);
      i = j;
    } else if (c == '\'') {
      if (i + 2 >= line.size() || line[i + 2] != '\'' || line[i + 1] < 'a' || line[i + 1] > 'z') {
        throw ParseError(lineno, "malformed character literal");
      }
      out.push_back({Tok::Char, std::string(1, line[i + 1]), line[i + 1] - 'a'});
      i += 3;
    } else {
      static const char* two[] = {":=", "!=", "<=", ">="};
      bool matched = false;
      for (const char* s : two) {
        if (line.substr(i, 2) == s) {
          out.push_back({Tok::Sym, s, 0});
          i += 2;
          matched = true;
          break;
        }
      }
      if (matched) continue;
      if (std::string_view("()+-,=<>:/").find(c) == std::string_view::npos) {
        throw ParseError(lineno, std::string("unexpected character '") + c + "'");
      }
      out.push_back({Tok::Sym, std::string(1, c), 0});
      ++i;
    }
  }
  out.push_back({Tok::End, "", 0});
  return out;
}

class LineParser {
 public:
  LineParser(const Program& program, std::vector<Token> tokens, int lineno)
      : program_(program), toks_(std::move(tokens)), line_(lineno) {}

  const Token& peek() const { return toks_[pos_]; }
  bool at_end() const { return peek().kind == Tok::End; }

  bool accept(std::string_view sym) {
    if (peek().kind == Tok::Sym && peek().text == sym) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool accept_word(std::string_view word) {
    if (peek().kind == Tok::Name && peek().text == word) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(std::string_view sym) {
    if (!accept(sym)) fail("expected '" + std::string(sym) + "'");
  }
  void expect_word(std::string_view word) {
    if (!accept_word(word)) fail("expected '" + std::string(word) + "'");
  }
  std::string name() {
    if (peek().kind != Tok::Name) fail("expected a name");
    return toks_[pos_++].text;
  }
  std::int64_t integer() {
    if (peek().kind != Tok::Int) fail("expected an integer");
    return toks_[pos_++].number;
  }
  void finish() {
    if (!at_end()) fail("unexpected '" + peek().text + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, msg); }

  Term expr() {
    Term lhs = primary();
    while (true) {
      if (accept("+")) {
        lhs = Term::make_op(OpKind::Add, std::move(lhs), primary());
      } else if (accept("-")) {
        lhs = Term::make_op(OpKind::Sub, std::move(lhs), primary());
      } else {
        return lhs;
      }
    }
  }

  Term primary() {
    const Token& t = peek();
    if (t.kind == Tok::Int) {
      ++pos_;
      return Term::make_const(Value::integer(t.number));
    }
    if (t.kind == Tok::Char) {
      ++pos_;
      return Term::make_const(Value::character(t.number));
    }
    if (accept("(")) {
      Term inner = expr();
      expect(")");
      return inner;
    }
    const std::string fname = name();
    std::vector<Term> args;
    if (accept("(")) {
      args.push_back(expr());
      while (accept(",")) args.push_back(expr());
      expect(")");
    }
    return application(fname, std::move(args));
  }

  Term application(const std::string& fname, std::vector<Term> args) {
    if (auto e = program_.find_external(fname)) {
      check_arity(program_.externals[*e], args.size());
      return Term::make_input(*e, std::move(args));
    }
    if (auto g = program_.find_internal(fname)) {
      check_arity(program_.internals[*g], args.size());
      return Term::make_internal(*g, std::move(args));
    }
    fail("unknown function '" + fname + "'");
  }

  void check_arity(const FunctionDecl& decl, std::size_t got) const {
    if (static_cast<std::size_t>(decl.arity) != got) {
      fail("arity mismatch for '" + decl.name + "': declared " + std::to_string(decl.arity) +
           ", used with " + std::to_string(got));
    }
  }

  Relation relation() {
    static const std::pair<const char*, Relation> rels[] = {
        {"=", Relation::Eq},  {"!=", Relation::Ne}, {"<", Relation::Lt},
        {"<=", Relation::Le}, {">", Relation::Gt},  {">=", Relation::Ge}};
    for (auto [s, r] : rels) {
      if (accept(s)) return r;
    }
    fail("expected a relation");
  }

 private:
  const Program& program_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_;
};

std::string_view strip_comment(std::string_view line) {
  const auto pct = line.find('%');
  return pct == std::string_view::npos ? line : line.substr(0, pct);
}

}  // namespace

Program parse_program(std::string_view text) {
  Program program;
  std::optional<std::string> output_name;
  int output_line = 0;

  struct Pending {
    int label;
    int line;
    std::vector<Token> tokens;
  };
  std::vector<Pending> pending;

  // Pass 1: declarations and raw instruction lines; terms need the full vocabulary.
  int lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    const std::string_view raw =
        text.substr(start, nl == std::string_view::npos ? text.size() - start : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;

    auto toks = tokenize(strip_comment(raw), lineno);
    if (toks.front().kind == Tok::End) continue;
    LineParser p(program, toks, lineno);

    if (p.accept_word("external") || p.accept_word("internal")) {
      const bool external = toks.front().text == "external";
      FunctionDecl decl;
      decl.name = p.name();
      p.expect("/");
      decl.arity = static_cast<int>(p.integer());
      try {
        decl.sort = parse_sort(p.name());
      } catch (const ValueError& e) {
        p.fail(e.what());
      }
      p.finish();
      if (decl.arity > 1) p.fail("functions of arity above 1 are not supported");
      if (program.find_external(decl.name) || program.find_internal(decl.name)) {
        p.fail("duplicate declaration of '" + decl.name + "'");
      }
      if (external) {
        if (decl.arity == 0 && decl.name != "n" && decl.name != "alpha") {
          p.fail("nullary externals must be the size parameters n or alpha");
        }
        if (decl.arity == 1 && program.word_external()) {
          p.fail("only one input word external is supported");
        }
        if (decl.arity == 1 && decl.sort == Sort::Int) {
          p.fail("the input word must be of sort bit or char");
        }
        program.externals.push_back(decl);
      } else {
        program.internals.push_back(decl);
      }
    } else if (p.accept_word("output")) {
      output_name = p.name();
      output_line = lineno;
      p.finish();
    } else if (toks.front().kind == Tok::Int) {
      const int label = static_cast<int>(p.integer());
      p.expect(":");
      pending.push_back({label, lineno, std::vector<Token>(toks.begin() + 2, toks.end())});
    } else {
      p.fail("expected a declaration or a labelled instruction");
    }
  }

  if (pending.empty()) throw ParseError(lineno, "no instructions");
  if (!output_name) throw ParseError(lineno, "missing 'output' declaration");
  if (auto o = program.find_internal(*output_name)) {
    program.output = *o;
  } else {
    throw ParseError(output_line, "output '" + *output_name + "' is not a declared internal");
  }

  std::stable_sort(pending.begin(), pending.end(),
                   [](const Pending& a, const Pending& b) { return a.label < b.label; });
  for (std::size_t i = 1; i < pending.size(); ++i) {
    if (pending[i].label == pending[i - 1].label) {
      throw ParseError(pending[i].line, "duplicate label " + std::to_string(pending[i].label));
    }
  }

  // Pass 2: instruction bodies.
  std::vector<std::pair<int, int>> label_refs;  // (label, line)
  for (auto& pend : pending) {
    LineParser p(program, std::move(pend.tokens), pend.line);
    Instruction ins;
    ins.label = pend.label;
    ins.line = pend.line;
    if (p.accept_word("if")) {
      Branch b;
      b.guard.lhs = p.expr();
      b.guard.rel = p.relation();
      b.guard.rhs = p.expr();
      p.expect_word("then");
      b.then_label = static_cast<int>(p.integer());
      p.expect_word("else");
      b.else_label = static_cast<int>(p.integer());
      label_refs.emplace_back(b.then_label, pend.line);
      label_refs.emplace_back(b.else_label, pend.line);
      ins.body = std::move(b);
    } else if (p.accept_word("goto")) {
      Goto g;
      g.label = static_cast<int>(p.integer());
      label_refs.emplace_back(g.label, pend.line);
      ins.body = g;
    } else if (p.accept_word("halt")) {
      ins.body = Halt{};
    } else {
      const std::string target = p.name();
      if (program.find_external(target)) p.fail("external '" + target + "' cannot be assigned");
      auto g = program.find_internal(target);
      if (!g) p.fail("unknown function '" + target + "'");
      Assign a;
      a.target = *g;
      if (p.accept("(")) {
        a.target_args.push_back(p.expr());
        p.expect(")");
      }
      p.check_arity(program.internals[*g], a.target_args.size());
      p.expect(":=");
      a.rhs = p.expr();
      ins.body = std::move(a);
    }
    p.finish();
    program.instructions.push_back(std::move(ins));
  }

  for (auto [label, line] : label_refs) {
    if (!program.index_of_label(label)) {
      throw ParseError(line, "dangling label " + std::to_string(label));
    }
  }
  for (auto& ins : program.instructions) {
    if (auto* b = std::get_if<Branch>(&ins.body)) {
      b->then_index = *program.index_of_label(b->then_label);
      b->else_index = *program.index_of_label(b->else_label);
    } else if (auto* g = std::get_if<Goto>(&ins.body)) {
      g->index = *program.index_of_label(g->label);
    }
  }
  program.entry = 0;
  return program;
}

}  // namespace entropic
