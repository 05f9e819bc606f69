#include "entropic/models.hpp"

#include <omp.h>

#include <stdexcept>

#include "entropic/parallel.hpp"

namespace entropic {

namespace {

constexpr std::string_view kXorSource = R"(% XOR-sum of a bit word
external x/1 bit
external n/0 int
internal i/0 int
internal s/0 bit
internal sigma/0 bit
output sigma

1: i := 0
2: s := 0
3: if i < n then 4 else 7
4: i := i + 1
5: s := s + x(i)
6: goto 3
7: sigma := s
8: halt
)";

// Shift the word against itself by h = 1, 2, ... and stop at the first shift
// whose overlap matches.
constexpr std::string_view kMaxPsA0Source = R"(% maxPS by shift-and-compare
external w/1 char
external n/0 int
internal h/0 int
internal i/0 int
internal phi/0 int
output phi

1: h := 0
2: if h >= n - 1 then 3 else 5
3: phi := 0
4: halt
5: h := h + 1
6: i := 1
7: if w(i) = w(i + h) then 8 else 2
8: if i < n - h then 9 else 11
9: i := i + 1
10: goto 7
11: phi := n - h
12: halt
)";

// Failure-function recursion: phi(m+1) is phi^s(m) + 1 for the least s whose
// border extends, or 0. Label 16 stores phi(i) := 0 when no border extends;
// without it the next phi(psi) lookup may read an unassigned cell.
constexpr std::string_view kMaxPsA1Source = R"(% maxPS by the failure function
external w/1 char
external n/0 int
internal i/0 int
internal phi/1 int
internal psi/0 int
internal r/0 int
output r

1: i := 1
2: phi(1) := 0
3: psi := 0
4: if i >= n then 5 else 8
5: phi(n) := psi
6: r := psi
7: halt
8: i := i + 1
9: if w(psi + 1) = w(i) then 10 else 13
10: phi(i) := psi + 1
11: psi := psi + 1
12: goto 4
13: if psi > 0 then 14 else 16
14: psi := phi(psi)
15: goto 9
16: phi(i) := 0
17: goto 4
)";

}  // namespace

int thread_count() { return omp_get_max_threads(); }

void set_thread_count(int threads) {
  if (threads < 1) throw std::invalid_argument("thread count must be positive");
  omp_set_num_threads(threads);
}

std::string_view model_name(ModelId id) {
  switch (id) {
    case ModelId::Xor: return "xor";
    case ModelId::MaxPsA0: return "maxps-a0";
    case ModelId::MaxPsA1: return "maxps-a1";
  }
  return "?";
}

std::optional<ModelId> parse_model(std::string_view name) {
  if (name == "xor") return ModelId::Xor;
  if (name == "maxps-a0") return ModelId::MaxPsA0;
  if (name == "maxps-a1") return ModelId::MaxPsA1;
  return std::nullopt;
}

std::string_view oracle_name(OracleKind kind) {
  return kind == OracleKind::Parity ? "parity" : "maxps";
}

std::optional<OracleKind> parse_oracle(std::string_view name) {
  if (name == "parity" || name == "xor") return OracleKind::Parity;
  if (name == "maxps") return OracleKind::MaxPs;
  return std::nullopt;
}

OracleKind oracle_of(ModelId id) {
  return id == ModelId::Xor ? OracleKind::Parity : OracleKind::MaxPs;
}

int parity(std::span<const std::uint8_t> x) {
  int p = 0;
  for (auto b : x) p ^= b & 1;
  return p;
}

int sigma_oracle(std::span<const std::uint8_t> x) {
  if (x.size() % 2 != 0) throw std::invalid_argument("sigma oracle is defined for even n only");
  return parity(x);
}

int maxps_oracle(std::span<const std::uint8_t> w) {
  const std::size_t n = w.size();
  for (std::size_t k = n == 0 ? 0 : n - 1; k > 0; --k) {
    bool border = true;
    for (std::size_t j = 0; j < k && border; ++j) border = w[j] == w[n - k + j];
    if (border) return static_cast<int>(k);
  }
  return 0;
}

std::int64_t oracle_value(OracleKind kind, std::span<const std::uint8_t> word) {
  return kind == OracleKind::Parity ? sigma_oracle(word) : maxps_oracle(word);
}

std::string_view builtin_source(ModelId id) {
  switch (id) {
    case ModelId::Xor: return kXorSource;
    case ModelId::MaxPsA0: return kMaxPsA0Source;
    case ModelId::MaxPsA1: return kMaxPsA1Source;
  }
  return {};
}

Program builtin_program(ModelId id) { return parse_program(builtin_source(id)); }

std::vector<std::uint8_t> parse_word(std::string_view text) {
  std::vector<std::uint8_t> out;
  out.reserve(text.size());
  for (char c : text) {
    if (c >= 'a' && c <= 'z') {
      out.push_back(static_cast<std::uint8_t>(c - 'a'));
    } else if (c == '0' || c == '1') {
      out.push_back(static_cast<std::uint8_t>(c - '0'));
    } else {
      throw std::invalid_argument(std::string("bad letter '") + c + "' in input word");
    }
  }
  return out;
}

std::string format_word(std::span<const std::uint8_t> word, bool bits) {
  std::string out;
  out.reserve(word.size());
  for (auto d : word) out.push_back(static_cast<char>((bits ? '0' : 'a') + d));
  return out;
}

}  // namespace entropic
