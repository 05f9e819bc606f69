#include "doctest.h"

#include "entropic/event_index.hpp"
#include "entropic/models.hpp"

using namespace entropic;

namespace {

void check_same(const EventIndex& a, const EventIndex& b) {
  REQUIRE(a.classes().size() == b.classes().size());
  CHECK(a.init_time() == b.init_time());
  CHECK(a.total_events() == b.total_events());
  for (std::size_t i = 0; i < a.classes().size(); ++i) {
    const EventClass& x = a.classes()[i];
    const EventClass& y = b.classes()[i];
    CHECK(x.key == y.key);
    CHECK(x.occurrences == y.occurrences);
    CHECK(x.first_time == y.first_time);
    CHECK(x.last_time == y.last_time);
    CHECK(x.count == y.count);
  }
}

}  // namespace

TEST_SUITE("event_index") {
  TEST_CASE("XOR n=4: one class per prefix value plus two outputs") {
    const Program p = builtin_program(ModelId::Xor);
    const Domain dom = build_domain(ModelId::Xor, 4, 2);
    const EventIndex index = build_event_index(p, dom);
    CHECK(index.classes().size() == 2 + 4 + 8 + 16 + 2);
    CHECK(index.init_time() == 2);
    const EventClass* c = index.find("U(x(1),1b)");
    REQUIRE(c != nullptr);
    CHECK(c->occurrences.count() == 8);
    CHECK(c->first_time == 5);
    CHECK(c->last_time == 5);
  }

  TEST_CASE("A0 n=3 alpha=2 classes") {
    const Program p = builtin_program(ModelId::MaxPsA0);
    const Domain dom = build_domain(ModelId::MaxPsA0, 3, 2);
    const EventIndex index = build_event_index(p, dom);
    CHECK(index.classes().size() == 9);
    const EventClass* c = index.find("G(ne,w(2),w(3))");
    REQUIRE(c != nullptr);
    CHECK(c->occurrences.count() == 2);
  }

  TEST_CASE("serial reference, parallel kernel and block sizes agree") {
    for (ModelId id : {ModelId::MaxPsA0, ModelId::MaxPsA1}) {
      const Program p = builtin_program(id);
      const Domain dom = build_domain(id, 7, 3);
      IndexOptions serial;
      serial.exec = Exec::Serial;
      const EventIndex ref = build_event_index(p, dom, serial);
      for (std::size_t block : {std::size_t{64}, std::size_t{100}, std::size_t{4096}}) {
        IndexOptions par;
        par.block_inputs = block;
        check_same(ref, build_event_index(p, dom, par));
      }
    }
  }

  TEST_CASE("key filter keeps exactly the matching classes") {
    const Program p = builtin_program(ModelId::MaxPsA0);
    const Domain dom = build_domain(ModelId::MaxPsA0, 6, 2);
    const EventIndex all = build_event_index(p, dom);
    IndexOptions opt;
    opt.key_filter = [](const std::string& k) { return k.rfind("G(ne", 0) == 0; };
    const EventIndex some = build_event_index(p, dom, opt);
    std::size_t expected = 0;
    for (const auto& c : all.classes()) {
      if (c.key.rfind("G(ne", 0) != 0) continue;
      ++expected;
      const EventClass* d = some.find(c.key);
      REQUIRE(d != nullptr);
      CHECK(d->occurrences == c.occurrences);
    }
    CHECK(some.classes().size() == expected);
  }

  TEST_CASE("essential filter drops only trivial classes") {
    const Program p = builtin_program(ModelId::MaxPsA1);
    const Domain dom = build_domain(ModelId::MaxPsA1, 5, 2);
    IndexOptions weeded;
    weeded.filter = EventFilter::Weeded;
    const EventIndex w = build_event_index(p, dom, weeded);
    const EventIndex e = build_event_index(p, dom);
    CHECK(e.classes().size() <= w.classes().size());
    for (const auto& c : e.classes()) CHECK(w.find(c.key) != nullptr);
    for (const auto& c : w.classes()) {
      if (e.find(c.key) == nullptr) {
        CHECK(c.occurrences == dom.full_set());
      }
    }
  }

  TEST_CASE("a failing run names the first offending input") {
    const Program p = parse_program(R"(external w/1 char
internal c/0 int
output c
1: if w(1) = w(2) then 2 else 3
2: c := c + 1
3: c := 0
4: halt
)");
    const Domain dom = build_domain(OracleKind::MaxPs, 2, 2);
    for (Exec exec : {Exec::Serial, Exec::Parallel}) {
      IndexOptions opt;
      opt.exec = exec;
      try {
        build_event_index(p, dom, opt);
        FAIL("expected a run error");
      } catch (const RunError& e) {
        CHECK(std::string(e.what()).find("aa") != std::string::npos);
      }
    }
  }
}
