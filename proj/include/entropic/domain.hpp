#pragma once

// The enumerated input domain of one size, its preimage partition under the
// oracle function, and the maximal-uncertainty measure: every output value has
// mass 1/M, spread uniformly over its preimage.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "entropic/input_set.hpp"
#include "entropic/models.hpp"
#include "entropic/parallel.hpp"
#include "entropic/rational.hpp"
#include "entropic/symimg.hpp"

namespace entropic {

inline constexpr std::size_t kDefaultEnumerationCap = std::size_t{1} << 24;

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Domain {
 public:
  /// Enumerates all base^n words in lexicographic order (w(1) most significant)
  /// and classifies them by oracle value, ascending.
  Domain(OracleKind oracle, int n, int alpha, std::size_t cap = kDefaultEnumerationCap,
         Exec exec = Exec::Parallel);

  OracleKind oracle() const { return oracle_; }
  int n() const { return n_; }
  int alpha() const { return alpha_; }
  /// Letters per position: 2 for bit words, alpha otherwise.
  int base() const { return base_; }
  bool bit_words() const { return oracle_ == OracleKind::Parity; }
  std::size_t size() const { return size_; }

  void decode_into(std::size_t index, InputInstance& x) const;
  InputInstance input(std::size_t index) const;
  std::size_t index_of(std::span<const std::uint8_t> word) const;
  std::size_t index_of(std::string_view word) const;
  std::string word(std::size_t index) const;

  /// M, the number of distinct output values.
  std::size_t range_size() const { return range_.size(); }
  const std::vector<std::int64_t>& range() const { return range_; }
  std::optional<std::size_t> class_of_value(std::int64_t value) const;
  std::size_t class_of(std::size_t index) const { return classes_[index]; }
  std::int64_t output(std::size_t index) const { return range_[classes_[index]]; }
  const InputSet& preimage(std::size_t k) const { return preimages_[k]; }
  std::size_t preimage_size(std::size_t k) const { return preimage_sizes_[k]; }

  InputSet empty_set() const { return InputSet(size_); }
  InputSet full_set() const { return InputSet(size_, true); }

 private:
  OracleKind oracle_;
  int n_;
  int alpha_;
  int base_;
  std::size_t size_;
  std::vector<std::uint16_t> classes_;
  std::vector<std::int64_t> range_;
  std::vector<InputSet> preimages_;
  std::vector<std::size_t> preimage_sizes_;
};

/// Checks n/alpha for the model and the cap, then enumerates.
Domain build_domain(ModelId model, int n, int alpha, std::size_t cap = kDefaultEnumerationCap,
                    Exec exec = Exec::Parallel);
Domain build_domain(OracleKind oracle, int n, int alpha, std::size_t cap = kDefaultEnumerationCap,
                    Exec exec = Exec::Parallel);

/// Pr(S) = sum_k |S cap F_k| / (M |F_k|).
Rational measure(const Domain& dom, const InputSet& s);
/// Pr(S cap F_k).
Rational measure_slot(const Domain& dom, const InputSet& s, std::size_t k);

struct OrderedPartition {
  std::vector<InputSet> slots;
};

/// Slot k is S cap F_k.
OrderedPartition partition_of(const Domain& dom, const InputSet& s);
/// sum_i Pr(A_i symmetric-difference B_i).
Rational partition_distance(const Domain& dom, const OrderedPartition& p,
                            const OrderedPartition& q);

/// Inputs satisfying every literal (empty list: the whole domain).
InputSet satisfaction_set(const Domain& dom, const ImagePool& pool,
                          std::span<const LitId> literals, Exec exec = Exec::Parallel);

}  // namespace entropic
