#include <cmath>
#include <random>

#include "doctest.h"

#include "entropic/entropy.hpp"
#include "entropic/models.hpp"
#include "oracles.hpp"

using namespace entropic;

namespace {

InputSet set_of(const Domain& dom, const std::set<std::string>& words) {
  InputSet s = dom.empty_set();
  for (const auto& w : words) s.set(dom.index_of(w));
  return s;
}

std::set<std::string> words_of(const Domain& dom, const InputSet& s) {
  std::set<std::string> out;
  s.for_each([&](std::size_t i) { out.insert(dom.word(i)); });
  return out;
}

InputSet random_set(const Domain& dom, std::mt19937_64& rng, double density) {
  std::bernoulli_distribution keep(density);
  InputSet s = dom.empty_set();
  for (std::size_t i = 0; i < dom.size(); ++i) {
    if (keep(rng)) s.set(i);
  }
  return s;
}

}  // namespace

TEST_SUITE("entropy") {
  TEST_CASE("frozen weight on the n=3 maxPS domain") {
    const Domain dom = build_domain(OracleKind::MaxPs, 3, 2);
    const InputSet s = set_of(dom, {"aab", "aba"});
    // (1/12) log2 3 + (1/6) log2 (3/2)
    CHECK(entropic_weight(dom, s) == doctest::Approx(0.2295739585).epsilon(1e-9));
    CHECK(entropic_weight(dom, s) == doctest::Approx(std::log2(3.0) / 12 + std::log2(1.5) / 6));
  }

  TEST_CASE("weights match the string-based reference") {
    const Domain dom = build_domain(OracleKind::MaxPs, 6, 2);
    const auto universe = oracle::all_words(6, 2);
    const auto f = [](const std::string& w) { return static_cast<long long>(oracle::kmp_border(w)); };
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
      const InputSet s = random_set(dom, rng, 0.05 + 0.9 * trial / 50.0);
      CHECK(entropic_weight(dom, s) == doctest::Approx(oracle::weight(universe, f, words_of(dom, s))).epsilon(1e-12));
    }
  }

  TEST_CASE("certainty and maximal uncertainty") {
    const Domain dom = build_domain(OracleKind::MaxPs, 7, 3);
    CHECK(entropic_weight(dom, dom.full_set()) ==
          doctest::Approx(std::log2(static_cast<double>(dom.range_size()))));
    CHECK(entropic_weight(dom, dom.empty_set()) == 0.0);
    for (std::size_t k = 0; k < dom.range_size(); ++k) {
      CHECK(entropic_weight(dom, dom.preimage(k)) == 0.0);
    }
  }

  TEST_CASE("both weight formulas agree and weight is monotone") {
    const Domain dom = build_domain(ModelId::Xor, 10, 2);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const InputSet b = random_set(dom, rng, 0.5);
      const InputSet a = b & random_set(dom, rng, 0.5);
      CHECK(entropic_weight(dom, b) == doctest::Approx(entropic_weight_alt(dom, b)).epsilon(1e-12));
      CHECK(entropic_weight(dom, a) <= entropic_weight(dom, b) + kTolerance);
    }
  }

  TEST_CASE("bound checks on random pairs") {
    const Domain dom = build_domain(OracleKind::MaxPs, 8, 2);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<std::size_t> j;
      for (std::size_t k = 0; k < dom.range_size(); ++k) {
        if (rng() % 2 == 0) j.push_back(k);
      }
      InputSet s = random_set(dom, rng, 0.3);
      for (const auto& c : check_bounds(dom, s, j)) {
        CHECK_MESSAGE((c.skipped || c.holds), c.name);
      }
      // Restricting S to J activates the support bounds.
      InputSet inside = dom.empty_set();
      for (std::size_t k : j) inside |= dom.preimage(k);
      s &= inside;
      for (const auto& c : check_bounds(dom, s, j)) {
        CHECK_MESSAGE((c.skipped || c.holds), c.name);
      }
    }
    CHECK_THROWS_AS(delta(dom, dom.full_set(), std::vector<std::size_t>{99}), std::out_of_range);
  }

  TEST_CASE("property suite passes") {
    const Domain dom = build_domain(OracleKind::MaxPs, 6, 3);
    for (const auto& c : property_checks(dom, 100, 3)) {
      CHECK_MESSAGE((c.skipped || c.holds), c.name);
    }
  }

  TEST_CASE("XOR prefix classes have weight 2^-k and volume drops by one per level") {
    const int n = 8;
    const Program p = builtin_program(ModelId::Xor);
    const Domain dom = build_domain(ModelId::Xor, n, 2);
    const EventIndex index = build_event_index(p, dom);
    const auto weights = class_weights(dom, index);
    for (std::size_t c = 0; c < index.classes().size(); ++c) {
      const auto& key = index.classes()[c].key;
      if (key[0] != 'U') continue;
      int k = 0;
      for (std::size_t pos = key.find("x("); pos != std::string::npos; pos = key.find("x(", pos + 1)) ++k;
      const double expected = k < n ? std::ldexp(1.0, -k) : 0.0;
      CHECK(weights[c] == doctest::Approx(expected).epsilon(1e-12));
    }
    const auto vol = weighted_volume_profile(dom, index, weights);
    CHECK(vol.init_time == 2);
    for (int k = 0; k <= n; ++k) {
      // Level k (k < n) adds 1, the last level adds 0, initialisation adds log2 2.
      CHECK(vol.at(2 + 3 * static_cast<std::size_t>(k)) ==
            doctest::Approx(static_cast<double>(n - k)).epsilon(1e-12));
    }
  }

  TEST_CASE("trace profile of the worst-case word") {
    const int n = 8;
    const Program p = builtin_program(ModelId::MaxPsA0);
    const Domain dom = build_domain(ModelId::MaxPsA0, n, 2);
    const EventIndex index = build_event_index(p, dom);
    const auto prof = trace_profile(p, dom, index, dom.index_of("aaaaaaab"));
    bool seen = false;
    for (std::size_t i = 0; i < prof.points.size(); ++i) {
      if (i > 0) CHECK(prof.points[i].t > prof.points[i - 1].t);
      if (prof.points[i].key == "G(ne,w(7),w(8))") {
        seen = true;
        CHECK(prof.points[i].weight == 0.0);
      }
    }
    CHECK(seen);
    CHECK(prof.points.back().key == "O(phi,0)");
  }

  TEST_CASE("defining formulas") {
    const int n = 6;
    const Program p = builtin_program(ModelId::MaxPsA0);
    const Domain dom = build_domain(ModelId::MaxPsA0, n, 2);
    const EventIndex index = build_event_index(p, dom);
    const std::size_t x = dom.index_of("aaaaab");
    const std::vector<std::string> last{"G(ne,w(5),w(6))"};
    CHECK(df_check_occurrence(dom, index, last, x));
    CHECK(mdf_check_occurrence(dom, index, last, x));
    const std::vector<std::string> two{"G(eq,w(1),w(2))", "G(ne,w(5),w(6))"};
    CHECK(df_check_occurrence(dom, index, two, x));
    CHECK_FALSE(mdf_check_occurrence(dom, index, two, x));

    ImagePool pool(p);
    const Trace t = run(p, dom.input(x), default_step_budget(n));
    std::vector<LitId> lits;
    for (const auto& e : weed(p, pool, t).entries) lits.push_back(e.literal);
    CHECK(df_check(dom, pool, lits, x));
    const std::vector<LitId> first{lits.front()};
    CHECK_FALSE(df_check(dom, pool, first, x));
  }

  TEST_CASE("logical uncertainty model") {
    CHECK(logical_uncertainty(4, 3) == doctest::Approx(2.0 - 0.75 * std::log2(3.0)));
    CHECK(logical_uncertainty(4, 3) == doctest::Approx(0.811278).epsilon(1e-6));
    CHECK(logical_step_prob(4, 3) == Rational(3, 4));
    CHECK(logical_step_prob(5, 0) == Rational(4, 25));
    CHECK_THROWS_AS(logical_uncertainty(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(logical_uncertainty(4, 4), std::invalid_argument);
  }
}
