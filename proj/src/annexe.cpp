#include "entropic/annexe.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "entropic/event_index.hpp"
#include "entropic/named_sets.hpp"
#include "entropic/words.hpp"

namespace entropic {

namespace {

Rational rpow(long long base, int e) {
  Rational r(1);
  if (e >= 0) {
    for (int i = 0; i < e; ++i) r *= base;
  } else {
    for (int i = 0; i < -e; ++i) r /= base;
  }
  return r;
}

std::string tag(const std::string& name, const char* var, long long v) {
  return name + "[" + var + "=" + std::to_string(v) + "]";
}

BoundCheck strict_check(std::string name, const Rational& lhs, const Rational& rhs) {
  BoundCheck c = make_exact_check(std::move(name), lhs, rhs);
  c.holds = lhs < rhs;
  return c;
}

BoundCheck equality_check(std::string name, const Rational& lhs, const Rational& rhs) {
  BoundCheck c = make_exact_check(std::move(name), lhs, rhs);
  c.holds = lhs == rhs;
  return c;
}

// Names the first member of a \ b, or of b \ a.
std::string set_witness(const Domain& dom, const InputSet& a, const InputSet& b,
                        const char* a_name, const char* b_name) {
  std::string out;
  const auto first = [&](const InputSet& s) {
    std::size_t found = std::numeric_limits<std::size_t>::max();
    s.for_each([&](std::size_t i) { found = std::min(found, i); });
    return found;
  };
  const InputSet extra = a - b;
  const InputSet missing = b - a;
  if (!extra.empty()) {
    out += dom.word(first(extra)) + " is in " + a_name + " but not in " + b_name + " (" +
           std::to_string(extra.count()) + " such words)";
  }
  if (!missing.empty()) {
    if (!out.empty()) out += "; ";
    out += dom.word(first(missing)) + " is in " + b_name + " but not in " + a_name + " (" +
           std::to_string(missing.count()) + " such words)";
  }
  return out;
}

}  // namespace

bool BoundChainReport::all_hold() const {
  for (const auto& l : links) {
    if (!l.skipped && !l.holds) return false;
  }
  return true;
}

bool BoundChainReport::failures_localised() const {
  for (const auto& l : links) {
    if (l.skipped || l.holds) continue;
    if (l.exact_lhs.empty() || l.exact_rhs.empty() || l.reason.empty()) return false;
  }
  return true;
}

BoundChainReport validate_annexe(int n, int alpha, std::size_t cap, Exec exec) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("bound chains need an even n >= 4");
  if (alpha < 2) throw std::invalid_argument("alphabet size must be at least 2");

  BoundChainReport rep;
  rep.n = n;
  rep.alpha = alpha;
  const long long a = alpha;
  const long long nn = n;
  const int half = n / 2;
  auto& links = rep.links;

  const Domain dom = build_domain(OracleKind::MaxPs, n, alpha, cap, exec);
  const Program program = builtin_program(ModelId::MaxPsA0);
  const std::string g_key = xi_key(n, n - 2, 1);
  const std::string h_key = xi_key(n, n - 2, n - 2);
  IndexOptions options;
  options.filter = EventFilter::Weeded;
  options.exec = exec;
  options.key_filter = [&](const std::string& key) { return key == g_key || key == h_key; };
  const EventIndex index = build_event_index(program, dom, options);
  const NamedSets sets = named_sets(dom, index);

  const auto slot = [&](long long value) {
    auto k = dom.class_of_value(value);
    if (!k) throw std::logic_error("maxPS value " + std::to_string(value) + " has no preimage");
    return *k;
  };
  const auto gamma_of = [&](int s) {
    return static_cast<long long>(dom.preimage_size(slot(n - s)));
  };
  const auto g_slice = [&](int s) {
    return static_cast<long long>(sets.g.intersection_count(dom.preimage(slot(n - s))));
  };

  // Primitive-word counts against the preimage sizes.
  std::vector<long long> big_gamma(static_cast<std::size_t>(half) + 1, 0);
  for (int s = 1; s <= half; ++s) {
    big_gamma[static_cast<std::size_t>(s)] =
        brute_primitive(s, alpha, WordConstraint::FirstEqualsThird, cap, exec);
    links.push_back(equality_check(tag("preimage_is_gamma", "s", s), gamma_of(s),
                                   gamma_mobius(s, alpha)));
    if (s >= 2) {
      links.push_back(equality_check(tag("g_slice_is_big_gamma", "s", s), g_slice(s),
                                     big_gamma[static_cast<std::size_t>(s)]));
    }
  }

  for (int s = 1; s <= half; ++s) {
    const Rational g(gamma_of(s));
    const Rational bg(big_gamma[static_cast<std::size_t>(s)]);
    const Rational ratio = bg / g;
    links.push_back(
        make_exact_check(tag("big_gamma_window_lower", "s", s), g / a - a * a - a, bg));
    links.push_back(
        make_exact_check(tag("big_gamma_window_upper", "s", s), bg, g / a + a * a + a));
    if (s % 2 == 0) {
      links.push_back(
          make_exact_check(tag("gamma_floor", "s", s), rpow(a, s) - rpow(a, s / 2 + 1), g));
    } else {
      const double floor_real =
          std::pow(static_cast<double>(a), s) - std::pow(static_cast<double>(a), s / 2.0 + 1);
      links.push_back(
          make_check(tag("gamma_floor", "s", s), floor_real, to_double(g), 1e-9));
    }
    if (s >= 6) {
      links.push_back(make_exact_check(tag("primitive_margin", "s", s), Rational(a * (a + 1)) / g,
                                       Rational(1, 4 * a)));
      links.push_back(make_exact_check(tag("ratio_floor", "s", s), Rational(3, 4 * a), ratio));
    }
    if (s == 3 || s == 4) {
      links.push_back(
          equality_check(tag("ratio_closed_form", "s", s), ratio, Rational(1, a + 1)));
      links.push_back(make_exact_check(tag("ratio_floor", "s", s), Rational(1, 2 * a), ratio));
    }
    if (s == 5) {
      links.push_back(equality_check(tag("ratio_closed_form", "s", s), ratio,
                                     Rational(a * a * a - 1, a * a * a * a - 1)));
      links.push_back(make_exact_check(tag("ratio_floor", "s", s), Rational(3, 4 * a), ratio));
    }
    if (s >= 3) {
      links.push_back(make_exact_check(tag("ratio_ceiling", "s", s), ratio, Rational(8, 5 * a)));
    }
  }

  // Slices of G.
  for (int k = half; k <= n - 3; ++k) {
    const Rational pr = measure_slot(dom, sets.g, slot(k));
    links.push_back(make_exact_check(tag("slice_floor", "k", k), Rational(1, 2 * nn * a), pr));
    links.push_back(make_exact_check(tag("slice_ceiling", "k", k), pr, Rational(8, 5 * nn * a)));
  }
  links.push_back(equality_check("g_misses_top", g_slice(1), 0));
  links.push_back(equality_check("g_contains_next", g_slice(2), gamma_of(2)));

  const Rational pr_g = measure(dom, sets.g);
  rep.pr_g = to_string(pr_g);
  {
    Rational upper_slices(1, nn);
    Rational closed(1, nn);
    for (int s = 3; s <= half; ++s) {
      upper_slices += measure_slot(dom, sets.g, slot(n - s));
      closed += Rational(big_gamma[static_cast<std::size_t>(s)], nn * gamma_of(s));
    }
    links.push_back(strict_check("pr_g_exceeds_upper_slices", upper_slices, pr_g));
    links.push_back(equality_check("upper_slices_closed_form", upper_slices, closed));
    const Rational explicit_sum =
        Rational(1, nn) + Rational(1, nn * a) + Rational(half - 4) * Rational(3, 4 * nn * a);
    links.push_back(make_exact_check("pr_g_slice_sum_floor", explicit_sum, upper_slices));
    links.push_back(make_exact_check("pr_g_explicit_floor", Rational(3, 8 * a), explicit_sum));
    links.push_back(make_exact_check("pr_g_floor", Rational(3, 8 * a), pr_g));
  }

  rep.weight_g = entropic_weight(dom, sets.g);
  if (n >= 12) {
    const double ln = std::log2(static_cast<double>(n));
    rep.explicit_g_floor =
        (1.0 / n) * (ln - std::log2(8.0 * a / 3.0)) +
        (half - 2) * (1.0 / (2.0 * n * a)) * (ln - std::log2(64.0 / 15.0));
    rep.implied_c = ln / (4.0 * a) - rep.explicit_g_floor;
    links.push_back(make_check("weight_g_explicit_floor", rep.explicit_g_floor, rep.weight_g, 1e-9));
    rep.notes.push_back("implied c(alpha) = log2(n)/(4 alpha) - explicit floor = " +
                        std::to_string(rep.implied_c));
  } else {
    rep.explicit_g_floor = std::numeric_limits<double>::quiet_NaN();
    links.push_back(skipped_check("weight_g_explicit_floor", "needs n >= 12"));
  }

  // H and the two small sets it is meant to consist of.
  const long long f0 = static_cast<long long>(dom.preimage_size(slot(0)));
  const long long f1 = static_cast<long long>(dom.preimage_size(slot(1)));
  const Rational size_floor = rpow(a, half - 1) * (a - 1);
  links.push_back(make_exact_check("f0_size_floor", size_floor, f0));
  links.push_back(make_exact_check("f1_size_floor", size_floor, f1));
  links.push_back(equality_check("w0_count", static_cast<long long>(sets.w0.count()),
                                 a * (a - 1) * (a - 2)));
  links.push_back(
      equality_check("w1_count", static_cast<long long>(sets.w1.count()), a * (a - 1)));

  const Rational pr_w0 = measure(dom, sets.w0);
  const Rational pr_w1 = measure(dom, sets.w1);
  const Rational tiny = Rational(1, nn) * rpow(a, -(n + 1));
  const Rational ceiling = Rational(1, nn) * rpow(a, -(half - 3));
  const Rational w0_floor = Rational(a * (a - 1) * (a - 2), nn) * rpow(a, -n);
  const Rational w1_floor = Rational(a * (a - 1), nn) * rpow(a, -(n - 1));
  const Rational w0_step = Rational(a * a * (a - 1), nn * f0);
  const Rational w1_step = Rational(a * a * (a - 1), nn * f1);
  const std::string empty_w0 =
      alpha == 2 ? "W0 is empty when alpha = 2, so Pr(W0) = 0 and its count formula is 0" : "";
  const auto with_reason = [](BoundCheck c, const std::string& reason) {
    if (!c.holds && !reason.empty()) c.reason = reason;
    return c;
  };
  links.push_back(with_reason(strict_check("w0_floor_chain", tiny, w0_floor), empty_w0));
  links.push_back(with_reason(strict_check("w0_floor", w0_floor, pr_w0), empty_w0));
  links.push_back(strict_check("w0_ceiling_step", pr_w0, w0_step));
  links.push_back(make_exact_check("w0_ceiling", w0_step, ceiling));
  links.push_back(strict_check("w1_floor_chain", tiny, w1_floor));
  links.push_back(strict_check("w1_floor", w1_floor, pr_w1));
  links.push_back(strict_check("w1_ceiling_step", pr_w1, w1_step));
  links.push_back(make_exact_check("w1_ceiling", w1_step, ceiling));

  const InputSet h0 = sets.h & dom.preimage(slot(0));
  const InputSet h1 = sets.h & dom.preimage(slot(1));
  {
    BoundCheck c = equality_check("h_cap_f0_is_w0", static_cast<long long>(h0.count()),
                                  static_cast<long long>(sets.w0.count()));
    c.holds = h0 == sets.w0;
    if (!c.holds) c.reason = set_witness(dom, h0, sets.w0, "H cap F0", "W0");
    links.push_back(c);
  }
  {
    BoundCheck c = equality_check("h_cap_f1_is_w1", static_cast<long long>(h1.count()),
                                  static_cast<long long>(sets.w1.count()));
    c.holds = h1 == sets.w1;
    if (!c.holds) c.reason = set_witness(dom, h1, sets.w1, "H cap F1", "W1");
    links.push_back(c);
  }
  {
    const InputSet rest = sets.h - dom.preimage(slot(0)) - dom.preimage(slot(1));
    BoundCheck c = equality_check("h_within_two_values", static_cast<long long>(rest.count()), 0);
    if (!c.holds) c.reason = set_witness(dom, rest, dom.empty_set(), "H", "F0 or F1");
    links.push_back(c);
  }
  const Rational pr_h = measure(dom, sets.h);
  rep.pr_h = to_string(pr_h);
  links.push_back(strict_check("pr_h_f0_ceiling", measure(dom, h0), ceiling));
  links.push_back(strict_check("pr_h_ceiling", pr_h, 2 * ceiling));

  rep.weight_h = entropic_weight(dom, sets.h);
  const double h_bound = 2.0 / (n * std::pow(static_cast<double>(a), half - 3)) *
                         std::log2(2.0 * std::pow(static_cast<double>(a), half + 4));
  links.push_back(make_check("weight_h_ceiling", rep.weight_h, h_bound, 1e-9));

  for (auto& l : links) {
    if (!l.holds && !l.skipped && l.reason.empty()) {
      l.reason = "exact values: " + l.exact_lhs + " vs " + l.exact_rhs;
    }
  }
  return rep;
}

}  // namespace entropic
