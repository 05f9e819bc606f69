#include "entropic/named_sets.hpp"

#include <stdexcept>

namespace entropic {

std::string char_guard_key(Relation rel, int i, int j) {
  return "G(" + std::string(relation_name(rel)) + ",w(" + std::to_string(i) + "),w(" +
         std::to_string(j) + "))";
}

std::string xi_key(int n, int k, int i) {
  if (k < 1 || k >= n || i < 1 || i > k) throw std::invalid_argument("xi index out of range");
  if (i < k) return char_guard_key(Relation::Eq, i, i + n - k);
  return char_guard_key(Relation::Ne, k, n);
}

std::vector<std::uint8_t> worst_case_word(int n) {
  if (n < 2) throw std::invalid_argument("the worst-case word needs n >= 2");
  std::vector<std::uint8_t> w(static_cast<std::size_t>(n), 0);
  w.back() = 1;
  return w;
}

namespace {

InputSet occurrences_or_empty(const Domain& dom, const EventIndex& index, const std::string& key) {
  const EventClass* c = index.find(key);
  return c == nullptr ? dom.empty_set() : c->occurrences;
}

}  // namespace

NamedSets named_sets(const Domain& dom, const EventIndex& index) {
  if (dom.oracle() != OracleKind::MaxPs) {
    throw std::invalid_argument("named sets are defined for the maxPS domain only");
  }
  const int n = dom.n();
  if (n < 4) throw std::invalid_argument("named sets need n >= 4");
  NamedSets out;
  out.g_key = xi_key(n, n - 2, 1);
  out.h_key = xi_key(n, n - 2, n - 2);
  out.g = occurrences_or_empty(dom, index, out.g_key);
  out.h = occurrences_or_empty(dom, index, out.h_key);
  out.g_prime = dom.empty_set();
  out.w0 = dom.empty_set();
  out.w1 = dom.empty_set();

  InputInstance x;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    dom.decode_into(i, x);
    if (x.word[0] == x.word[2]) out.g_prime.set(i);
  }
  if (n % 2 != 0) return out;

  const int alpha = dom.alpha();
  std::vector<std::uint8_t> w(static_cast<std::size_t>(n));
  for (int a = 0; a < alpha; ++a) {
    for (int b = 0; b < alpha; ++b) {
      if (a == b) continue;
      for (int j = 0; j < n - 1; ++j) w[static_cast<std::size_t>(j)] = (j % 2 == 0) ? a : b;
      for (int c = 0; c < alpha; ++c) {
        if (c == b) continue;
        w.back() = static_cast<std::uint8_t>(c);
        (c == a ? out.w1 : out.w0).set(dom.index_of(w));
      }
    }
  }
  return out;
}

InputSet equal_prefix_set(const Domain& dom, int s) {
  if (s < 0 || s >= dom.n()) throw std::invalid_argument("prefix run length out of range");
  InputSet out = dom.empty_set();
  InputInstance x;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    dom.decode_into(i, x);
    bool equal = true;
    for (int j = 1; j <= s && equal; ++j) equal = x.word[static_cast<std::size_t>(j)] == x.word[0];
    if (equal) out.set(i);
  }
  return out;
}

}  // namespace entropic
