#include "doctest.h"

#include "entropic/domain.hpp"
#include "oracles.hpp"

using namespace entropic;

TEST_SUITE("domain") {
  TEST_CASE("maxPS n=3 alpha=2 preimages") {
    const Domain dom = build_domain(OracleKind::MaxPs, 3, 2);
    CHECK(dom.size() == 8);
    CHECK(dom.range() == std::vector<std::int64_t>{0, 1, 2});
    CHECK(dom.preimage_size(0) == 4);
    CHECK(dom.preimage_size(1) == 2);
    CHECK(dom.preimage_size(2) == 2);
    CHECK(dom.output(dom.index_of("aba")) == 1);
  }

  TEST_CASE("enumeration order is lexicographic and index_of inverts word") {
    const Domain dom = build_domain(OracleKind::MaxPs, 4, 3);
    const auto words = oracle::all_words(4, 3);
    REQUIRE(words.size() == dom.size());
    for (std::size_t i = 0; i < dom.size(); ++i) {
      CHECK(dom.word(i) == words[i]);
      CHECK(dom.index_of(words[i]) == i);
    }
  }

  TEST_CASE("XOR domain needs an even length and bit words") {
    CHECK_THROWS_AS(build_domain(ModelId::Xor, 7, 2), DomainError);
    const Domain dom = build_domain(ModelId::Xor, 6, 5);
    CHECK(dom.base() == 2);
    CHECK(dom.size() == 64);
    CHECK(dom.range_size() == 2);
  }

  TEST_CASE("enumeration cap") {
    CHECK_THROWS_AS(build_domain(OracleKind::MaxPs, 40, 2), DomainError);
    CHECK_THROWS_AS(build_domain(OracleKind::MaxPs, 10, 2, 1000), DomainError);
  }

  TEST_CASE("measure is exact and normalised") {
    const Domain dom = build_domain(OracleKind::MaxPs, 5, 2);
    CHECK(measure(dom, dom.full_set()) == Rational(1));
    CHECK(measure(dom, dom.empty_set()) == Rational(0));
    for (std::size_t k = 0; k < dom.range_size(); ++k) {
      CHECK(measure(dom, dom.preimage(k)) == Rational(1, static_cast<long long>(dom.range_size())));
    }
    InputSet s = dom.empty_set();
    s.set(dom.index_of("aabaa"));
    const auto k = dom.class_of(dom.index_of("aabaa"));
    CHECK(measure(dom, s) ==
          Rational(1, static_cast<long long>(dom.range_size() * dom.preimage_size(k))));
  }

  TEST_CASE("serial and parallel enumeration agree") {
    const Domain a(OracleKind::MaxPs, 8, 3, kDefaultEnumerationCap, Exec::Serial);
    const Domain b(OracleKind::MaxPs, 8, 3, kDefaultEnumerationCap, Exec::Parallel);
    REQUIRE(a.range() == b.range());
    for (std::size_t k = 0; k < a.range_size(); ++k) CHECK(a.preimage(k) == b.preimage(k));
  }

  TEST_CASE("partition distance") {
    const Domain dom = build_domain(OracleKind::MaxPs, 4, 2);
    const auto p = partition_of(dom, dom.full_set());
    CHECK(partition_distance(dom, p, p) == Rational(0));
    const auto q = partition_of(dom, dom.empty_set());
    CHECK(partition_distance(dom, p, q) == Rational(1));
  }

  TEST_CASE("input set algebra") {
    InputSet a(130), b(130);
    a.set(0);
    a.set(64);
    a.set(129);
    b.set(64);
    CHECK((a & b).count() == 1);
    CHECK((a | b).count() == 3);
    CHECK((a - b).count() == 2);
    CHECK(b.subset_of(a));
    CHECK(a.complement().count() == 127);
    CHECK(InputSet(130, true).count() == 130);
  }
}
