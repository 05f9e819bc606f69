#pragma once

// Fixture sets for the maxPS analysis of the shift-and-compare algorithm.
//
// xi(k, i) names the i-th comparison of the shift n-k phase on the worst-case
// word a^{n-1}b: w(i) = w(i + n - k) for i < k, and w(k) != w(n) for i = k.

#include <cstdint>
#include <string>
#include <vector>

#include "entropic/domain.hpp"
#include "entropic/event_index.hpp"

namespace entropic {

/// Canonical key of the guard literal w(i) REL w(j).
std::string char_guard_key(Relation rel, int i, int j);
std::string xi_key(int n, int k, int i);

/// a^{n-1} b.
std::vector<std::uint8_t> worst_case_word(int n);

struct NamedSets {
  InputSet g;        // occurrence set of w(1) = w(3)
  InputSet g_prime;  // inputs with w(1) = w(3)
  InputSet h;        // occurrence set of w(n-2) != w(n)
  InputSet w0;       // (ab)^{n/2-1} a c with a != b, c not in {a, b}; even n
  InputSet w1;       // (ab)^{n/2-1} a a with a != b; even n
  std::string g_key;
  std::string h_key;
};

/// `index` must come from the shift-and-compare program on `dom`; it needs the
/// classes of w(1) = w(3) and w(n-2) != w(n) (an absent class is empty).
NamedSets named_sets(const Domain& dom, const EventIndex& index);

/// Inputs with w(1) = w(2) = ... = w(s+1).
InputSet equal_prefix_set(const Domain& dom, int s);

}  // namespace entropic
