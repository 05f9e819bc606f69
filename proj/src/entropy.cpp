#include "entropic/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace entropic {

namespace {

double log2_ratio(const Rational& num, const Rational& den) {
  return std::log2(to_double(num / den));
}

// Pr(S cap F_k) for every k.
std::vector<Rational> slot_measures(const Domain& dom, const InputSet& s) {
  std::vector<Rational> out;
  out.reserve(dom.range_size());
  for (std::size_t k = 0; k < dom.range_size(); ++k) out.push_back(measure_slot(dom, s, k));
  return out;
}

double weight_over(const std::vector<Rational>& slots, std::span<const std::size_t> j,
                   const Rational& total) {
  if (total == 0) return 0.0;
  double d = 0.0;
  for (std::size_t k : j) {
    if (slots[k] == 0) continue;
    d -= to_double(slots[k]) * log2_ratio(slots[k], total);
  }
  return d;
}

std::vector<std::size_t> all_slots(const Domain& dom) {
  std::vector<std::size_t> j(dom.range_size());
  for (std::size_t k = 0; k < j.size(); ++k) j[k] = k;
  return j;
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

double entropic_weight(const Domain& dom, const InputSet& s) {
  const auto slots = slot_measures(dom, s);
  Rational total(0);
  for (const auto& p : slots) total += p;
  const auto j = all_slots(dom);
  return weight_over(slots, j, total);
}

double entropic_weight_alt(const Domain& dom, const InputSet& s) {
  const auto slots = slot_measures(dom, s);
  Rational total(0);
  double d = 0.0;
  for (const auto& p : slots) {
    total += p;
    if (p != 0) d -= to_double(p) * std::log2(to_double(p));
  }
  if (total != 0) d += to_double(total) * std::log2(to_double(total));
  return d;
}

double delta(const Domain& dom, const InputSet& s, std::span<const std::size_t> j) {
  for (std::size_t k : j) {
    if (k >= dom.range_size()) throw std::out_of_range("class index outside the range");
  }
  const auto slots = slot_measures(dom, s);
  Rational total(0);
  for (const auto& p : slots) total += p;
  return weight_over(slots, j, total);
}

BoundCheck make_check(std::string name, double lhs, double rhs, double tolerance) {
  BoundCheck c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.slack = rhs - lhs;
  c.holds = lhs <= rhs + tolerance;
  c.exact_lhs = format_double(lhs);
  c.exact_rhs = format_double(rhs);
  return c;
}

BoundCheck make_exact_check(std::string name, const Rational& lhs, const Rational& rhs) {
  BoundCheck c;
  c.name = std::move(name);
  c.lhs = to_double(lhs);
  c.rhs = to_double(rhs);
  c.slack = to_double(rhs - lhs);
  c.holds = lhs <= rhs;
  c.exact_lhs = to_string(lhs);
  c.exact_rhs = to_string(rhs);
  return c;
}

BoundCheck skipped_check(std::string name, std::string reason) {
  BoundCheck c;
  c.name = std::move(name);
  c.skipped = true;
  c.reason = std::move(reason);
  return c;
}

std::vector<BoundCheck> check_bounds(const Domain& dom, const InputSet& s,
                                     std::span<const std::size_t> j) {
  std::vector<BoundCheck> out;
  const double d = delta(dom, s, j);
  const double m = static_cast<double>(dom.range_size());
  const double size_j = static_cast<double>(j.size());

  if (dom.range_size() >= 3) {
    out.push_back(make_check("partial_sum_bound", d, size_j / m * std::log2(m)));
  } else {
    out.push_back(skipped_check("partial_sum_bound", "needs at least 3 output values"));
  }

  std::vector<bool> in_j(dom.range_size(), false);
  for (std::size_t k : j) in_j[k] = true;
  std::string outside;
  for (std::size_t k = 0; k < dom.range_size() && outside.empty(); ++k) {
    if (!in_j[k] && s.intersection_count(dom.preimage(k)) > 0) {
      outside = "S meets the preimage of " + std::to_string(dom.range()[k]) + " outside J";
    }
  }
  if (!outside.empty() || j.empty()) {
    const std::string why = j.empty() ? "J is empty" : outside;
    out.push_back(skipped_check("support_bound", why));
    out.push_back(skipped_check("support_bound_weak", why));
    return out;
  }
  const double pr = to_double(measure(dom, s));
  out.push_back(make_check("support_bound", d, pr * std::log2(size_j)));
  out.push_back(make_check("support_bound_weak", pr * std::log2(size_j), std::log2(size_j)));
  return out;
}

namespace {

class SetSampler {
 public:
  SetSampler(const Domain& dom, std::uint64_t seed) : dom_(dom), rng_(seed) {}

  // Random subset of `within` with a random density in {1, 1/2, 1/4, 1/8, 1/16}.
  InputSet subset(const InputSet& within) {
    InputSet s = within;
    const int halvings = std::uniform_int_distribution<int>(0, 4)(rng_);
    for (std::size_t w = 0; w < s.word_count(); ++w) {
      InputSet::Word mask = ~InputSet::Word{0};
      for (int h = 0; h < halvings; ++h) mask &= rng_();
      s.data()[w] &= mask;
    }
    return s;
  }
  InputSet any() { return subset(dom_.full_set()); }

  std::vector<std::size_t> classes(bool nonempty) {
    std::vector<std::size_t> j;
    while (true) {
      for (std::size_t k = 0; k < dom_.range_size(); ++k) {
        if (rng_() & 1U) j.push_back(k);
      }
      if (!nonempty || !j.empty()) return j;
    }
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  const Domain& dom_;
  std::mt19937_64 rng_;
};

struct Worst {
  double lhs = 0;
  double rhs = 0;
  double excess = -INFINITY;
  void see(double l, double r) {
    if (l - r > excess) {
      excess = l - r;
      lhs = l;
      rhs = r;
    }
  }
  BoundCheck check(std::string name, std::size_t n) const {
    BoundCheck c = make_check(std::move(name), lhs, rhs);
    c.reason = "worst of " + std::to_string(n) + " cases";
    return c;
  }
};

}  // namespace

std::vector<BoundCheck> property_checks(const Domain& dom, std::size_t samples,
                                        std::uint64_t seed) {
  std::vector<BoundCheck> out;
  SetSampler sampler(dom, seed);
  const double log_m = std::log2(static_cast<double>(dom.range_size()));

  {
    const double d = entropic_weight(dom, dom.full_set());
    BoundCheck c = make_check("maximal_uncertainty", std::abs(d - log_m), 0.0);
    c.reason = "D(domain) = " + format_double(d) + ", log2 M = " + format_double(log_m);
    out.push_back(c);
  }
  {
    Worst preimage;
    Worst subset;
    std::size_t subsets = 0;
    for (std::size_t k = 0; k < dom.range_size(); ++k) {
      preimage.see(entropic_weight(dom, dom.preimage(k)), 0.0);
      for (std::size_t r = 0; r < std::max<std::size_t>(1, samples / dom.range_size()); ++r) {
        subset.see(entropic_weight(dom, sampler.subset(dom.preimage(k))), 0.0);
        ++subsets;
      }
    }
    out.push_back(preimage.check("preimage_certainty", dom.range_size()));
    out.push_back(subset.check("determining_subset", subsets));
  }
  {
    Worst agree;
    for (std::size_t r = 0; r < samples; ++r) {
      const InputSet s = sampler.any();
      agree.see(std::abs(entropic_weight(dom, s) - entropic_weight_alt(dom, s)), 0.0);
    }
    out.push_back(agree.check("alt_form_agreement", samples));
  }
  {
    Worst mono;
    for (std::size_t r = 0; r < samples; ++r) {
      const InputSet s1 = sampler.any();
      const InputSet s0 = sampler.subset(s1);
      mono.see(entropic_weight(dom, s0), entropic_weight(dom, s1));
    }
    out.push_back(mono.check("monotonicity", samples));
  }
  if (dom.range_size() >= 3) {
    Worst partial;
    for (std::size_t r = 0; r < samples; ++r) {
      const InputSet s = sampler.any();
      const auto j = sampler.classes(true);
      partial.see(delta(dom, s, j), static_cast<double>(j.size()) /
                                        static_cast<double>(dom.range_size()) * log_m);
    }
    out.push_back(partial.check("partial_sum_bound", samples));
  } else {
    out.push_back(skipped_check("partial_sum_bound", "needs at least 3 output values"));
  }
  {
    Worst support;
    Worst weak;
    for (std::size_t r = 0; r < samples; ++r) {
      const auto j = sampler.classes(true);
      InputSet within = dom.empty_set();
      for (std::size_t k : j) within |= dom.preimage(k);
      const InputSet s = sampler.subset(within);
      const double lj = std::log2(static_cast<double>(j.size()));
      const double pr = to_double(measure(dom, s));
      support.see(delta(dom, s, j), pr * lj);
      weak.see(pr * lj, lj);
    }
    out.push_back(support.check("support_bound", samples));
    out.push_back(weak.check("support_bound_weak", samples));
  }
  return out;
}

std::vector<double> class_weights(const Domain& dom, const EventIndex& index, Exec exec) {
  const auto& classes = index.classes();
  std::vector<double> out(classes.size());
  const auto n = static_cast<std::int64_t>(classes.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(i)] =
          entropic_weight(dom, classes[static_cast<std::size_t>(i)].occurrences);
    }
  } else {
    for (std::size_t i = 0; i < classes.size(); ++i) {
      out[i] = entropic_weight(dom, classes[i].occurrences);
    }
  }
  return out;
}

ConvergenceProfile trace_profile(const Program& program, const Domain& dom,
                                 const EventIndex& index, std::size_t input,
                                 std::span<const double> weights) {
  ConvergenceProfile profile;
  profile.input = dom.word(input);
  const Trace trace = run(program, dom.input(input), default_step_budget(dom.n()));
  ImagePool pool(program);
  const WeededTrace weeded = weed(program, pool, trace);
  const auto& classes = index.classes();
  for (const auto& e : weeded.entries) {
    const std::string& key = pool.literal_key(e.literal);
    const EventClass* c = index.find(key);
    if (c == nullptr) continue;  // trivially true, filtered out of the index
    const auto ci = static_cast<std::size_t>(c - classes.data());
    const double w = weights.empty() ? entropic_weight(dom, c->occurrences) : weights[ci];
    profile.points.push_back({e.time, key, w});
  }
  return profile;
}

double WeightedVolumeProfile::at(std::size_t t) const {
  for (const auto& p : points) {
    if (p.t == t) return p.volume;
  }
  return 0.0;
}

WeightedVolumeProfile weighted_volume_profile(const Domain& dom, const EventIndex& index,
                                              std::span<const double> weights) {
  std::vector<double> computed;
  if (weights.empty()) {
    computed = class_weights(dom, index);
    weights = computed;
  }
  WeightedVolumeProfile profile;
  profile.init_time = index.init_time();
  profile.init_weight = std::log2(static_cast<double>(dom.range_size()));
  const auto& classes = index.classes();
  std::size_t horizon = profile.init_time;
  for (const auto& c : classes) horizon = std::max(horizon, c.last_time);

  for (std::size_t t = 1; t <= horizon + 1; ++t) {
    VolumePoint p;
    p.t = t;
    if (t <= profile.init_time) {
      p.volume += profile.init_weight;
      ++p.classes;
    }
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (classes[i].last_time >= t) {
        p.volume += weights[i];
        ++p.classes;
      }
    }
    profile.points.push_back(p);
  }
  return profile;
}

bool df_check(const Domain& dom, const ImagePool& pool, std::span<const LitId> literals,
              std::size_t x) {
  const InputSet s = satisfaction_set(dom, pool, literals);
  return s.subset_of(dom.preimage(dom.class_of(x)));
}

bool mdf_check(const Domain& dom, const ImagePool& pool, std::span<const LitId> literals,
               std::size_t x) {
  if (!df_check(dom, pool, literals, x)) return false;
  std::vector<LitId> rest;
  for (std::size_t drop = 0; drop < literals.size(); ++drop) {
    rest.clear();
    for (std::size_t i = 0; i < literals.size(); ++i) {
      if (i != drop) rest.push_back(literals[i]);
    }
    if (df_check(dom, pool, rest, x)) return false;
  }
  return true;
}

bool df_check_occurrence(const Domain& dom, const EventIndex& index,
                         std::span<const std::string> keys, std::size_t x) {
  InputSet s = dom.full_set();
  for (const auto& key : keys) {
    const EventClass* c = index.find(key);
    if (c == nullptr) return true;  // empty solution set
    s &= c->occurrences;
  }
  return s.subset_of(dom.preimage(dom.class_of(x)));
}

bool mdf_check_occurrence(const Domain& dom, const EventIndex& index,
                          std::span<const std::string> keys, std::size_t x) {
  if (!df_check_occurrence(dom, index, keys, x)) return false;
  std::vector<std::string> rest;
  for (std::size_t drop = 0; drop < keys.size(); ++drop) {
    rest.clear();
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (i != drop) rest.push_back(keys[i]);
    }
    if (df_check_occurrence(dom, index, rest, x)) return false;
  }
  return true;
}

namespace {

void check_logical_args(long long s, long long p) {
  if (s < 2) throw std::invalid_argument("s must be at least 2");
  if (p < 0 || p >= s) throw std::invalid_argument("p must lie in [0, s)");
}

}  // namespace

double logical_uncertainty(long long s, long long p) {
  check_logical_args(s, p);
  const double sd = static_cast<double>(s);
  return std::log2(sd) -
         (1.0 - 1.0 / sd) * std::log2((sd - 1.0) / static_cast<double>(s - p));
}

Rational logical_step_prob(long long s, long long p) {
  check_logical_args(s, p);
  return Rational(s - 1, s * (s - p));
}

}  // namespace entropic
