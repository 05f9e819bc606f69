#include "entropic/words.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "entropic/models.hpp"

namespace entropic {

namespace {

std::int64_t ipow(std::int64_t base, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

void check_args(int s, int alpha) {
  if (s < 1) throw std::invalid_argument("word length must be positive");
  if (alpha < 1) throw std::invalid_argument("alphabet size must be positive");
  if (static_cast<double>(s) * std::log2(static_cast<double>(alpha)) > 62) {
    throw std::invalid_argument("alpha^s does not fit in 64 bits");
  }
}

std::size_t checked_count(int s, int alpha, std::size_t cap) {
  check_args(s, alpha);
  const auto total = static_cast<std::size_t>(ipow(alpha, s));
  if (total > cap) {
    throw std::invalid_argument(std::to_string(alpha) + "^" + std::to_string(s) +
                                " words exceed the enumeration cap");
  }
  return total;
}

void decode(std::size_t index, int s, int alpha, std::uint8_t* w) {
  for (int j = s - 1; j >= 0; --j) {
    w[j] = static_cast<std::uint8_t>(index % static_cast<std::size_t>(alpha));
    index /= static_cast<std::size_t>(alpha);
  }
}

}  // namespace

int mobius(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("mobius is defined for positive integers");
  int sign = 1;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    m /= p;
    if (m % p == 0) return 0;
    sign = -sign;
  }
  if (m > 1) sign = -sign;
  return sign;
}

std::int64_t gamma_mobius(int s, int alpha) {
  check_args(s, alpha);
  std::int64_t total = 0;
  for (int d = 1; d <= s; ++d) {
    if (s % d == 0) total += ipow(alpha, d) * mobius(s / d);
  }
  return total;
}

std::int64_t gamma_recursive(int s, int alpha) {
  check_args(s, alpha);
  std::vector<std::int64_t> g(static_cast<std::size_t>(s) + 1, 0);
  for (int t = 1; t <= s; ++t) {
    std::int64_t v = ipow(alpha, t);
    for (int d = 1; d < t; ++d) {
      if (t % d == 0) v -= g[static_cast<std::size_t>(d)];
    }
    g[static_cast<std::size_t>(t)] = v;
  }
  return g[static_cast<std::size_t>(s)];
}

std::int64_t big_gamma_recursive(int s, int alpha) {
  check_args(s, alpha);
  std::vector<std::int64_t> g(static_cast<std::size_t>(s) + 1, 0);
  for (int t = 1; t <= s; ++t) {
    if (t == 1) {
      g[1] = alpha;
    } else if (t == 2) {
      g[2] = static_cast<std::int64_t>(alpha) * alpha - alpha;
    } else {
      std::int64_t v = ipow(alpha, t - 1);
      for (int d = 1; d < t; ++d) {
        if (t % d == 0) v -= g[static_cast<std::size_t>(d)];
      }
      g[static_cast<std::size_t>(t)] = v;
    }
  }
  return g[static_cast<std::size_t>(s)];
}

bool is_primitive(const std::uint8_t* w, int s) {
  for (int d = 1; d < s; ++d) {
    if (s % d != 0) continue;
    bool periodic = true;
    for (int j = d; j < s && periodic; ++j) periodic = w[j] == w[j - d];
    if (periodic) return false;
  }
  return true;
}

std::int64_t brute_primitive(int s, int alpha, WordConstraint constraint, std::size_t cap,
                             Exec exec) {
  const std::size_t total = checked_count(s, alpha, cap);
  // Position 3 of the periodic extension, for periods shorter than 3.
  const int third = 2 % s;
  const auto counts = [&](std::size_t index, std::uint8_t* w) -> std::int64_t {
    decode(index, s, alpha, w);
    if (constraint == WordConstraint::FirstEqualsThird && w[0] != w[third]) return 0;
    return is_primitive(w, s) ? 1 : 0;
  };

  std::int64_t count = 0;
  const auto n = static_cast<std::int64_t>(total);
  if (exec == Exec::Parallel) {
#pragma omp parallel reduction(+ : count)
    {
      std::vector<std::uint8_t> w(static_cast<std::size_t>(s));
#pragma omp for schedule(static)
      for (std::int64_t i = 0; i < n; ++i) count += counts(static_cast<std::size_t>(i), w.data());
    }
  } else {
    std::vector<std::uint8_t> w(static_cast<std::size_t>(s));
    for (std::size_t i = 0; i < total; ++i) count += counts(i, w.data());
  }
  return count;
}

std::vector<std::int64_t> preimage_counts(int n, int alpha, std::size_t cap, Exec exec) {
  const std::size_t total = checked_count(n, alpha, cap);
  std::vector<std::int64_t> hist(static_cast<std::size_t>(n), 0);
  const auto words = static_cast<std::int64_t>(total);
  if (exec == Exec::Parallel) {
#pragma omp parallel
    {
      std::vector<std::int64_t> local(static_cast<std::size_t>(n), 0);
      std::vector<std::uint8_t> w(static_cast<std::size_t>(n));
#pragma omp for schedule(static)
      for (std::int64_t i = 0; i < words; ++i) {
        decode(static_cast<std::size_t>(i), n, alpha, w.data());
        ++local[static_cast<std::size_t>(maxps_oracle(w))];
      }
#pragma omp critical(entropic_preimage_counts)
      for (std::size_t k = 0; k < hist.size(); ++k) hist[k] += local[k];
    }
  } else {
    std::vector<std::uint8_t> w(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < total; ++i) {
      decode(i, n, alpha, w.data());
      ++hist[static_cast<std::size_t>(maxps_oracle(w))];
    }
  }
  return hist;
}

}  // namespace entropic
