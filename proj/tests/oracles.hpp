#pragma once

// Reference implementations that share no code with the library. They work on
// plain strings and doubles so a bug in the bitset or rational layers cannot
// hide behind them.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

/// All words of length n over the first `alpha` letters, lexicographic order.
inline std::vector<std::string> all_words(int n, int alpha, char first = 'a') {
  std::vector<std::string> out{""};
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> next;
    for (const auto& w : out) {
      for (int c = 0; c < alpha; ++c) next.push_back(w + static_cast<char>(first + c));
    }
    out.swap(next);
  }
  return out;
}

/// KMP failure value at the last position.
inline int kmp_border(const std::string& w) {
  std::vector<int> f(w.size(), 0);
  int k = 0;
  for (std::size_t i = 1; i < w.size(); ++i) {
    while (k > 0 && w[i] != w[static_cast<std::size_t>(k)]) k = f[static_cast<std::size_t>(k) - 1];
    if (w[i] == w[static_cast<std::size_t>(k)]) ++k;
    f[i] = k;
  }
  return w.empty() ? 0 : f.back();
}

inline int bit_parity(const std::string& bits) {
  int p = 0;
  for (char c : bits) p ^= (c == '1');
  return p;
}

/// A word is primitive iff it occurs in ww only at offsets 0 and |w|.
inline bool primitive_by_rotation(const std::string& w) {
  const std::string ww = w + w;
  return ww.find(w, 1) == w.size();
}

inline long long count_primitive(int s, int alpha, bool first_eq_third) {
  long long c = 0;
  for (const auto& w : all_words(s, alpha)) {
    // Position 3 of the periodic extension.
    const char third = w[static_cast<std::size_t>(2 % s)];
    if (first_eq_third && w[0] != third) continue;
    if (primitive_by_rotation(w)) ++c;
  }
  return c;
}

/// Weight of a set of words under the maximal-uncertainty measure of `f` over
/// `universe`: each output value has mass 1/M, uniform inside its preimage.
inline double weight(const std::vector<std::string>& universe,
                     const std::function<long long(const std::string&)>& f,
                     const std::set<std::string>& s) {
  std::map<long long, double> pre;
  for (const auto& w : universe) pre[f(w)] += 1;
  const double m = static_cast<double>(pre.size());
  std::map<long long, double> slot;
  double total = 0;
  for (const auto& w : s) {
    const long long v = f(w);
    const double p = 1.0 / (m * pre[v]);
    slot[v] += p;
    total += p;
  }
  double d = 0;
  for (const auto& [v, p] : slot) {
    if (p > 0) d -= p * std::log2(p / total);
  }
  return d;
}

}  // namespace oracle
