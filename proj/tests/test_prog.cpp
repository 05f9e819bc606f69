#include "doctest.h"

#include "entropic/models.hpp"
#include "entropic/prog.hpp"
#include "entropic/value.hpp"

using namespace entropic;

namespace {

constexpr const char* kCountEqual = R"(external w/1 char
external n/0 int
internal k/0 int
internal c/0 int
output c
1: k := 0
2: if w(1) = w(2) then 3 else 5
3: c := k + 1
4: halt
5: c := k
6: halt
)";

InputInstance word_input(const std::string& text, int alpha = 2) {
  InputInstance x;
  x.n = static_cast<int>(text.size());
  x.alpha = alpha;
  x.word = parse_word(text);
  return x;
}

}  // namespace

TEST_SUITE("prog") {
  TEST_CASE("bit arithmetic folds mod 2") {
    CHECK(apply_op(OpKind::Add, Value::bit(1), Value::bit(1)) == Value::bit(0));
    CHECK(apply_op(OpKind::Sub, Value::bit(0), Value::bit(1)) == Value::bit(1));
    CHECK(apply_op(OpKind::Add, Value::integer(2), Value::integer(3)) == Value::integer(5));
  }

  TEST_CASE("relations and their negations") {
    for (Relation r : {Relation::Eq, Relation::Ne, Relation::Lt, Relation::Le, Relation::Gt,
                       Relation::Ge}) {
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          CHECK(compare(r, Value::integer(a), Value::integer(b)) !=
                compare(negate(r), Value::integer(a), Value::integer(b)));
        }
      }
    }
  }

  TEST_CASE("a small program runs and records guards in the polarity that held") {
    const Program p = parse_program(kCountEqual);
    const Trace equal = run(p, word_input("aa"), 100);
    CHECK(equal.length() == 3);
    CHECK(equal.output_value().v == 1);
    CHECK(equal.at(2).kind == Event::Kind::Guard);
    CHECK(equal.at(2).holds);

    const Trace differ = run(p, word_input("ab"), 100);
    CHECK(differ.length() == 3);
    CHECK(differ.output_value().v == 0);
    CHECK_FALSE(differ.at(2).holds);
  }

  TEST_CASE("malformed programs are rejected with a line number") {
    CHECK_THROWS_AS(parse_program("external w/1 char\n1: c := \n"), ParseError);
    CHECK_THROWS_AS(parse_program("output c\n1: halt\n"), ParseError);
    try {
      parse_program("external w/1 char\ninternal c/0 int\noutput c\n1: goto 7\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() >= 1);
    }
  }

  TEST_CASE("reading an unassigned internal is a run error") {
    const Program p = parse_program(R"(external w/1 char
internal c/0 int
output c
1: c := c + 1
2: halt
)");
    CHECK_THROWS_AS(run(p, word_input("ab"), 100), RunError);
  }

  TEST_CASE("step budget is enforced") {
    const Program p = parse_program(R"(external w/1 char
internal c/0 int
output c
1: c := 0
2: goto 1
)");
    CHECK_THROWS_AS(run(p, word_input("ab"), 50), RunError);
  }

  TEST_CASE("builtin sources parse back") {
    for (ModelId id : {ModelId::Xor, ModelId::MaxPsA0, ModelId::MaxPsA1}) {
      CHECK_NOTHROW(parse_program(builtin_source(id)));
    }
  }
}
