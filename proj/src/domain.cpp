#include "entropic/domain.hpp"

#include <algorithm>

namespace entropic {

namespace {

std::size_t checked_power(int base, int n, std::size_t cap) {
  std::size_t size = 1;
  for (int i = 0; i < n; ++i) {
    if (size > cap / static_cast<std::size_t>(base)) {
      throw DomainError("domain of " + std::to_string(base) + "^" + std::to_string(n) +
                        " inputs exceeds the enumeration cap of " + std::to_string(cap));
    }
    size *= static_cast<std::size_t>(base);
  }
  return size;
}

}  // namespace

Domain::Domain(OracleKind oracle, int n, int alpha, std::size_t cap, Exec exec)
    : oracle_(oracle), n_(n), alpha_(alpha) {
  if (n < 1) throw DomainError("n must be positive");
  if (alpha < 2) throw DomainError("alphabet size must be at least 2");
  if (alpha > 26) throw DomainError("alphabet size must be at most 26");
  if (oracle == OracleKind::Parity && n % 2 != 0) {
    throw DomainError("the XOR domain is defined for even n only");
  }
  base_ = oracle == OracleKind::Parity ? 2 : alpha;
  if (oracle == OracleKind::Parity) alpha_ = 2;
  size_ = checked_power(base_, n, cap);

  std::vector<std::int64_t> outputs(size_);
  const auto n_inputs = static_cast<std::int64_t>(size_);
  if (exec == Exec::Parallel) {
#pragma omp parallel
    {
      InputInstance x;
#pragma omp for schedule(static)
      for (std::int64_t i = 0; i < n_inputs; ++i) {
        decode_into(static_cast<std::size_t>(i), x);
        outputs[static_cast<std::size_t>(i)] = oracle_value(oracle_, x.word);
      }
    }
  } else {
    InputInstance x;
    for (std::size_t i = 0; i < size_; ++i) {
      decode_into(i, x);
      outputs[i] = oracle_value(oracle_, x.word);
    }
  }

  range_ = outputs;
  std::sort(range_.begin(), range_.end());
  range_.erase(std::unique(range_.begin(), range_.end()), range_.end());
  if (range_.size() > 0xffff) throw DomainError("too many distinct output values");

  classes_.resize(size_);
  preimage_sizes_.assign(range_.size(), 0);
  for (std::size_t i = 0; i < size_; ++i) {
    const auto k = static_cast<std::size_t>(
        std::lower_bound(range_.begin(), range_.end(), outputs[i]) - range_.begin());
    classes_[i] = static_cast<std::uint16_t>(k);
    ++preimage_sizes_[k];
  }
  preimages_.assign(range_.size(), InputSet(size_));
  for (std::size_t i = 0; i < size_; ++i) preimages_[classes_[i]].set(i);
}

void Domain::decode_into(std::size_t index, InputInstance& x) const {
  x.n = n_;
  x.alpha = alpha_;
  x.word.resize(static_cast<std::size_t>(n_));
  for (int j = n_ - 1; j >= 0; --j) {
    x.word[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(index % base_);
    index /= base_;
  }
}

InputInstance Domain::input(std::size_t index) const {
  InputInstance x;
  decode_into(index, x);
  return x;
}

std::size_t Domain::index_of(std::span<const std::uint8_t> word) const {
  if (word.size() != static_cast<std::size_t>(n_)) {
    throw DomainError("word length " + std::to_string(word.size()) + " differs from n = " +
                      std::to_string(n_));
  }
  std::size_t index = 0;
  for (auto d : word) {
    if (d >= base_) throw DomainError("letter outside the alphabet");
    index = index * base_ + d;
  }
  return index;
}

std::size_t Domain::index_of(std::string_view word) const { return index_of(parse_word(word)); }

std::string Domain::word(std::size_t index) const {
  return format_word(input(index).word, bit_words());
}

std::optional<std::size_t> Domain::class_of_value(std::int64_t value) const {
  auto it = std::lower_bound(range_.begin(), range_.end(), value);
  if (it == range_.end() || *it != value) return std::nullopt;
  return static_cast<std::size_t>(it - range_.begin());
}

Domain build_domain(OracleKind oracle, int n, int alpha, std::size_t cap, Exec exec) {
  return Domain(oracle, n, alpha, cap, exec);
}

Domain build_domain(ModelId model, int n, int alpha, std::size_t cap, Exec exec) {
  return Domain(oracle_of(model), n, alpha, cap, exec);
}

Rational measure_slot(const Domain& dom, const InputSet& s, std::size_t k) {
  const std::size_t hits = s.intersection_count(dom.preimage(k));
  if (hits == 0) return Rational(0);
  return Rational(static_cast<long long>(hits),
                  static_cast<long long>(dom.range_size() * dom.preimage_size(k)));
}

Rational measure(const Domain& dom, const InputSet& s) {
  Rational total(0);
  for (std::size_t k = 0; k < dom.range_size(); ++k) total += measure_slot(dom, s, k);
  return total;
}

OrderedPartition partition_of(const Domain& dom, const InputSet& s) {
  OrderedPartition p;
  p.slots.reserve(dom.range_size());
  for (std::size_t k = 0; k < dom.range_size(); ++k) p.slots.push_back(s & dom.preimage(k));
  return p;
}

Rational partition_distance(const Domain& dom, const OrderedPartition& p,
                            const OrderedPartition& q) {
  if (p.slots.size() != q.slots.size()) {
    throw std::invalid_argument("partitions have different slot counts");
  }
  Rational total(0);
  for (std::size_t i = 0; i < p.slots.size(); ++i) total += measure(dom, p.slots[i] ^ q.slots[i]);
  return total;
}

InputSet satisfaction_set(const Domain& dom, const ImagePool& pool,
                          std::span<const LitId> literals, Exec exec) {
  InputSet out(dom.size());
  const auto words = static_cast<std::int64_t>(out.word_count());
  InputSet::Word* data = out.data();
  const auto fill_word = [&](std::int64_t w, InputInstance& x) {
    InputSet::Word bits = 0;
    const std::size_t first = static_cast<std::size_t>(w) * InputSet::kBits;
    const std::size_t last = std::min(dom.size(), first + InputSet::kBits);
    for (std::size_t i = first; i < last; ++i) {
      dom.decode_into(i, x);
      bool all = true;
      for (LitId lit : literals) {
        if (!satisfies(pool, lit, x)) {
          all = false;
          break;
        }
      }
      if (all) bits |= InputSet::Word{1} << (i - first);
    }
    data[w] = bits;
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel
    {
      InputInstance x;
#pragma omp for schedule(static)
      for (std::int64_t w = 0; w < words; ++w) fill_word(w, x);
    }
  } else {
    InputInstance x;
    for (std::int64_t w = 0; w < words; ++w) fill_word(w, x);
  }
  return out;
}

}  // namespace entropic
