#pragma once

// Counting primitive words. gamma(s) counts primitive words of length s over an
// alpha-letter alphabet; Gamma(s) counts those whose periodic extension has
// w(1) = w(3). For s <= n/2 these are the sizes of the maxPS preimage of n-s and
// of its intersection with w(1) = w(3).

#include <cstddef>
#include <cstdint>
#include <vector>

#include "entropic/parallel.hpp"

namespace entropic {

int mobius(std::int64_t m);

std::int64_t gamma_mobius(int s, int alpha);
std::int64_t gamma_recursive(int s, int alpha);
std::int64_t big_gamma_recursive(int s, int alpha);

enum class WordConstraint { None, FirstEqualsThird };

/// Exhaustive count over all alpha^s words.
std::int64_t brute_primitive(int s, int alpha, WordConstraint constraint = WordConstraint::None,
                             std::size_t cap = std::size_t{1} << 26, Exec exec = Exec::Parallel);

/// |F_k| for k = 0 .. n-1 by brute force over all alpha^n words.
std::vector<std::int64_t> preimage_counts(int n, int alpha, std::size_t cap = std::size_t{1} << 26,
                                          Exec exec = Exec::Parallel);

/// True if w is not a proper power u^i, i >= 2.
bool is_primitive(const std::uint8_t* w, int s);

}  // namespace entropic
