#include "doctest.h"

#include "entropic/domain.hpp"
#include "entropic/models.hpp"
#include "entropic/symimg.hpp"

using namespace entropic;

namespace {

std::vector<std::string> weeded_keys(const Program& p, ImagePool& pool, const InputInstance& x) {
  const Trace t = run(p, x, default_step_budget(x.n));
  std::vector<std::string> out;
  for (const auto& e : weed(p, pool, t).entries) out.push_back(pool.literal_key(e.literal));
  return out;
}

}  // namespace

TEST_SUITE("symimg") {
  TEST_CASE("XOR updates carry the running sum image and its value image") {
    const Program p = builtin_program(ModelId::Xor);
    const Domain dom = build_domain(ModelId::Xor, 4, 2);
    ImagePool pool(p);
    const auto keys = weeded_keys(p, pool, dom.input(dom.index_of("1001")));
    REQUIRE(keys.size() == 5);
    CHECK(keys[0] == "U(x(1),1b)");
    CHECK(keys[1] == "U(add(x(1),x(2)),add(1b,0b))");
    CHECK(keys[2] == "U(add(add(x(1),x(2)),x(3)),add(add(1b,0b),0b))");
    CHECK(keys[4] == "O(sigma,0)");
  }

  TEST_CASE("A0 guards on the worst-case word") {
    const Program p = builtin_program(ModelId::MaxPsA0);
    const Domain dom = build_domain(ModelId::MaxPsA0, 4, 2);
    ImagePool pool(p);
    const auto keys = weeded_keys(p, pool, dom.input(dom.index_of("aaab")));
    const std::vector<std::string> expected{
        "G(eq,w(1),w(2))", "G(eq,w(2),w(3))", "G(ne,w(3),w(4))", "G(eq,w(1),w(3))",
        "G(ne,w(2),w(4))", "G(ne,w(1),w(4))", "O(phi,0)"};
    CHECK(keys == expected);
  }

  TEST_CASE("full trace literals are one per event and weeding keeps times") {
    const Program p = builtin_program(ModelId::MaxPsA1);
    const Domain dom = build_domain(ModelId::MaxPsA1, 5, 2);
    ImagePool pool(p);
    const Trace t = run(p, dom.input(dom.index_of("abaab")), default_step_budget(5));
    const auto lits = trace_literals(p, pool, t);
    CHECK(lits.size() == t.length());
    const WeededTrace w = weed(p, pool, t);
    for (const auto& e : w.entries) {
      CHECK(lits[e.time - 1] == e.literal);
      CHECK(w.time_of(e.literal) <= e.time);
    }
    CHECK(pool.literal(w.entries.back().literal).kind == TraceLiteral::Kind::Output);
  }

  TEST_CASE("hash-consing gives equal ids for equal keys") {
    const Program p = builtin_program(ModelId::Xor);
    ImagePool pool(p);
    const SymId one = pool.constant(Value::bit(1));
    CHECK(pool.constant(Value::bit(1)) == one);
    CHECK(pool.key(one) == "1b");
    CHECK(pool.key(pool.constant(Value::integer(5))) == "5");
    const SymId x1 = pool.input(*p.find_external("x"), pool.constant(Value::integer(1)));
    CHECK(pool.key(x1) == "x(1)");
    CHECK(pool.fold(OpKind::Add, pool.constant(Value::integer(0)), x1) != kNoSym);
    CHECK(pool.key(pool.fold(OpKind::Add, pool.constant(Value::integer(2)),
                             pool.constant(Value::integer(3)))) == "5");
    CHECK(pool.key(pool.raw_op(OpKind::Add, pool.constant(Value::integer(2)),
                               pool.constant(Value::integer(3)))) == "add(2,3)");
  }

  TEST_CASE("satisfaction and triviality") {
    const Program p = parse_program(R"(external w/1 char
external n/0 int
internal c/0 int
output c
1: if w(1) = w(1) then 2 else 2
2: if w(1) = w(2) then 3 else 5
3: c := 1
4: halt
5: c := 0
6: halt
)");
    const Domain dom = build_domain(OracleKind::MaxPs, 3, 2);
    ImagePool pool(p);
    const Trace t = run(p, dom.input(dom.index_of("aab")), 100);
    const WeededTrace w = weed(p, pool, t);
    REQUIRE(w.size() >= 2);
    CHECK(pool.literal_key(w.entries[0].literal) == "G(eq,w(1),w(1))");
    CHECK(is_trivial(dom, pool, w.entries[0].literal));
    CHECK_FALSE(is_trivial(dom, pool, w.entries[1].literal));
    CHECK(satisfies(pool, w.entries[1].literal, dom.input(dom.index_of("bba"))));
    CHECK_FALSE(satisfies(pool, w.entries[1].literal, dom.input(dom.index_of("baa"))));

    TrivialityCache cache;
    const auto essential = essential_events(w, dom, pool, &cache);
    CHECK(essential.size() == w.size() - 1);
    CHECK(cache.size() >= 1);
  }
}
