#include "doctest.h"

#include "entropic/domain.hpp"
#include "entropic/models.hpp"
#include "oracles.hpp"

using namespace entropic;

TEST_SUITE("models") {
  TEST_CASE("oracle examples") {
    CHECK(sigma_oracle(parse_word("10")) == 1);
    CHECK(sigma_oracle(parse_word("1111")) == 0);
    CHECK(sigma_oracle(parse_word("00000000")) == 0);
    CHECK_THROWS_AS(sigma_oracle(parse_word("101")), std::invalid_argument);
    CHECK(maxps_oracle(parse_word("aaab")) == 0);
    CHECK(maxps_oracle(parse_word("aaa")) == 2);
    CHECK(maxps_oracle(parse_word("aba")) == 1);
    CHECK(maxps_oracle(parse_word("a")) == 0);
  }

  TEST_CASE("maxPS oracle agrees with the failure function") {
    for (int n = 1; n <= 9; ++n) {
      for (const auto& w : oracle::all_words(n, n <= 7 ? 3 : 2)) {
        REQUIRE(maxps_oracle(parse_word(w)) == oracle::kmp_border(w));
      }
    }
  }

  TEST_CASE("parity agrees with the reference") {
    for (int n = 2; n <= 10; n += 2) {
      for (const auto& w : oracle::all_words(n, 2, '0')) {
        REQUIRE(sigma_oracle(parse_word(w)) == oracle::bit_parity(w));
      }
    }
  }

  TEST_CASE("model names round-trip") {
    for (ModelId id : {ModelId::Xor, ModelId::MaxPsA0, ModelId::MaxPsA1}) {
      CHECK(parse_model(model_name(id)) == id);
    }
    CHECK_FALSE(parse_model("sort").has_value());
    CHECK(parse_oracle("xor") == OracleKind::Parity);
    CHECK(parse_oracle("maxps") == OracleKind::MaxPs);
  }

  TEST_CASE("builtin programs compute their oracles on every input") {
    for (ModelId id : {ModelId::MaxPsA0, ModelId::MaxPsA1}) {
      const Program p = builtin_program(id);
      for (int alpha = 2; alpha <= 3; ++alpha) {
        for (int n = 2; n <= (alpha == 2 ? 10 : 7); ++n) {
          const Domain dom = build_domain(id, n, alpha);
          for (std::size_t i = 0; i < dom.size(); ++i) {
            const Trace t = run(p, dom.input(i), default_step_budget(n));
            REQUIRE(t.output_value().v == dom.output(i));
          }
        }
      }
    }
    const Program x = builtin_program(ModelId::Xor);
    for (int n = 2; n <= 12; n += 2) {
      const Domain dom = build_domain(ModelId::Xor, n, 2);
      for (std::size_t i = 0; i < dom.size(); ++i) {
        REQUIRE(run(x, dom.input(i), default_step_budget(n)).output_value().v == dom.output(i));
      }
    }
  }

  TEST_CASE("linear and quadratic trace lengths") {
    const Program a0 = builtin_program(ModelId::MaxPsA0);
    const Program a1 = builtin_program(ModelId::MaxPsA1);
    for (int n = 2; n <= 9; ++n) {
      const Domain dom = build_domain(ModelId::MaxPsA0, n, 2);
      for (std::size_t i = 0; i < dom.size(); ++i) {
        CHECK(run(a0, dom.input(i), default_step_budget(n)).length() <=
              static_cast<std::size_t>(8 * n * n));
        CHECK(run(a1, dom.input(i), default_step_budget(n)).length() <=
              static_cast<std::size_t>(8 * n));
      }
    }
  }

  TEST_CASE("word parsing") {
    CHECK(parse_word("abc") == std::vector<std::uint8_t>{0, 1, 2});
    CHECK(parse_word("0110") == std::vector<std::uint8_t>{0, 1, 1, 0});
    CHECK(format_word(parse_word("cab"), false) == "cab");
    CHECK(format_word(parse_word("0110"), true) == "0110");
  }
}
