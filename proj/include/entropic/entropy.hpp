#pragma once

// Entropic weight of an input set against the preimage partition, and the
// analyses built on it: profiles along one trace, the weighted volume of all
// classes still to come, bound checks and defining formulas.
//
// Why single-literal drops suffice for minimality: the solution set of a
// conjunction only grows when conjuncts are removed. If some proper
// subconjunction were defining, the conjunction obtained by dropping one literal
// outside it has a smaller solution set, hence is defining too.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "entropic/domain.hpp"
#include "entropic/event_index.hpp"
#include "entropic/rational.hpp"

namespace entropic {

inline constexpr double kTolerance = 1e-12;

/// -sum_k Pr(S cap F_k) log2(Pr(S cap F_k) / Pr(S)); D(empty) = 0.
double entropic_weight(const Domain& dom, const InputSet& s);
/// -sum_k Pr(S cap F_k) log2 Pr(S cap F_k) + Pr(S) log2 Pr(S).
double entropic_weight_alt(const Domain& dom, const InputSet& s);
/// The weight restricted to the slots in `j` (0-based class indices).
double delta(const Domain& dom, const InputSet& s, std::span<const std::size_t> j);

struct BoundCheck {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  double slack = 0;  // rhs - lhs
  bool holds = true;
  bool skipped = false;
  std::string reason;  // why a check was skipped, or a witness
  std::string exact_lhs;
  std::string exact_rhs;
};

BoundCheck make_check(std::string name, double lhs, double rhs, double tolerance = kTolerance);
BoundCheck make_exact_check(std::string name, const Rational& lhs, const Rational& rhs);
BoundCheck skipped_check(std::string name, std::string reason);

/// Partial-sum bound (needs M >= 3) and the support bounds (need S to miss
/// every preimage outside J).
std::vector<BoundCheck> check_bounds(const Domain& dom, const InputSet& s,
                                     std::span<const std::size_t> j);

/// Randomised property suite: maximal uncertainty of the whole domain,
/// certainty of preimages and their subsets, agreement of both weight formulas,
/// monotonicity on nested pairs and both bounds on random (S, J). One aggregated
/// record per property, carrying the worst slack seen.
std::vector<BoundCheck> property_checks(const Domain& dom, std::size_t samples,
                                        std::uint64_t seed);

/// D of every class occurrence set, index order.
std::vector<double> class_weights(const Domain& dom, const EventIndex& index,
                                  Exec exec = Exec::Parallel);

struct ProfilePoint {
  std::size_t t = 0;
  std::string key;
  double weight = 0;
};

struct ConvergenceProfile {
  std::string input;
  std::vector<ProfilePoint> points;  // strictly increasing t
};

/// For each essential event of the input's weeded trace: its time and the
/// weight of its class. `index` must use the essential filter.
ConvergenceProfile trace_profile(const Program& program, const Domain& dom,
                                 const EventIndex& index, std::size_t input,
                                 std::span<const double> weights = {});

struct VolumePoint {
  std::size_t t = 0;
  double volume = 0;
  std::size_t classes = 0;  // classes counted at t, initialisation included
};

struct WeightedVolumeProfile {
  std::size_t init_time = 0;
  double init_weight = 0;
  std::vector<VolumePoint> points;  // t = 1 .. last event time + 1
  double at(std::size_t t) const;
};

/// Volume at t: weights of the classes with an occurrence at t or later, plus
/// log2 M for the initialisation step while t <= its time.
WeightedVolumeProfile weighted_volume_profile(const Domain& dom, const EventIndex& index,
                                              std::span<const double> weights = {});

/// Satisfaction semantics: every input satisfying all literals has the output of input x.
bool df_check(const Domain& dom, const ImagePool& pool, std::span<const LitId> literals,
              std::size_t x);
bool mdf_check(const Domain& dom, const ImagePool& pool, std::span<const LitId> literals,
               std::size_t x);
/// Occurrence semantics: the conjunct sets are class occurrence sets (absent key: empty).
bool df_check_occurrence(const Domain& dom, const EventIndex& index,
                         std::span<const std::string> keys, std::size_t x);
bool mdf_check_occurrence(const Domain& dom, const EventIndex& index,
                          std::span<const std::string> keys, std::size_t x);

/// Entropy of the step distribution while checking a shift with s candidate
/// values after p confirmed equalities: log2 s - (1 - 1/s) log2((s-1)/(s-p)).
double logical_uncertainty(long long s, long long p);
/// Probability of the next inequality in that model: (s-1) / (s(s-p)).
Rational logical_step_prob(long long s, long long p);

}  // namespace entropic
