#include "entropic/symimg.hpp"

#include <algorithm>
#include <functional>

#include "entropic/domain.hpp"

namespace entropic {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::string constant_key(Value v) {
  switch (v.sort) {
    case Sort::Char: return "'" + format_value(v) + "'";
    case Sort::Bit: return std::to_string(v.v) + "b";
    case Sort::Int: break;
  }
  return std::to_string(v.v);
}

bool is_zero_number(const SymNode& n) {
  return n.kind == SymNode::Kind::Const && n.value.sort != Sort::Char && n.value.v == 0;
}

}  // namespace

std::size_t ImagePool::NodeHash::operator()(const SymNode& n) const {
  std::size_t h = static_cast<std::size_t>(n.kind);
  h = mix(h, static_cast<std::size_t>(n.op));
  h = mix(h, static_cast<std::size_t>(n.value.sort));
  h = mix(h, static_cast<std::size_t>(n.value.v));
  h = mix(h, n.fn);
  h = mix(h, n.a);
  return mix(h, n.b);
}

bool ImagePool::NodeEq::operator()(const SymNode& x, const SymNode& y) const {
  return x.kind == y.kind && x.op == y.op && x.value == y.value && x.fn == y.fn && x.a == y.a &&
         x.b == y.b;
}

// Output literals are identified by their value alone.
std::size_t ImagePool::LitHash::operator()(const TraceLiteral& l) const {
  std::size_t h = static_cast<std::size_t>(l.kind);
  if (l.kind == TraceLiteral::Kind::Output) {
    h = mix(h, static_cast<std::size_t>(l.value.sort));
    return mix(h, static_cast<std::size_t>(l.value.v));
  }
  h = mix(h, static_cast<std::size_t>(l.rel));
  h = mix(h, l.lhs);
  return mix(h, l.rhs);
}

bool ImagePool::LitEq::operator()(const TraceLiteral& x, const TraceLiteral& y) const {
  if (x.kind != y.kind) return false;
  if (x.kind == TraceLiteral::Kind::Output) return x.value == y.value;
  return x.rel == y.rel && x.lhs == y.lhs && x.rhs == y.rhs;
}

ImagePool::ImagePool(const Program& program)
    : externals_(program.externals),
      output_name_(program.output_name()),
      output_sort_(program.internals[program.output].sort) {}

SymId ImagePool::intern(const SymNode& n) {
  auto it = node_index_.find(n);
  if (it != node_index_.end()) return it->second;
  const auto id = static_cast<SymId>(nodes_.size());
  SymNode stored = n;
  std::string key;
  switch (n.kind) {
    case SymNode::Kind::Const:
      stored.has_input = false;
      key = constant_key(n.value);
      break;
    case SymNode::Kind::Input:
      stored.has_input = true;
      key = externals_[n.fn].name + "(" + node_keys_[n.a] + ")";
      break;
    case SymNode::Kind::Op:
      stored.has_input = nodes_[n.a].has_input || nodes_[n.b].has_input;
      key = std::string(op_name(n.op)) + "(" + node_keys_[n.a] + "," + node_keys_[n.b] + ")";
      break;
  }
  nodes_.push_back(stored);
  node_keys_.push_back(std::move(key));
  node_index_.emplace(stored, id);
  return id;
}

SymId ImagePool::constant(Value v) {
  SymNode n;
  n.kind = SymNode::Kind::Const;
  n.value = v;
  return intern(n);
}

SymId ImagePool::input(std::uint32_t fn, SymId arg) {
  SymNode n;
  n.kind = SymNode::Kind::Input;
  n.fn = fn;
  n.a = arg;
  return intern(n);
}

SymId ImagePool::raw_op(OpKind op, SymId a, SymId b) {
  SymNode n;
  n.kind = SymNode::Kind::Op;
  n.op = op;
  n.a = a;
  n.b = b;
  return intern(n);
}

Sort ImagePool::sort_of(SymId id) const {
  const SymNode& n = nodes_[id];
  switch (n.kind) {
    case SymNode::Kind::Const: return n.value.sort;
    case SymNode::Kind::Input: return externals_[n.fn].sort;
    case SymNode::Kind::Op:
      return sort_of(n.a) == Sort::Bit || sort_of(n.b) == Sort::Bit ? Sort::Bit : Sort::Int;
  }
  return Sort::Int;
}

SymId ImagePool::fold(OpKind op, SymId a, SymId b) {
  const SymNode& na = nodes_[a];
  const SymNode& nb = nodes_[b];
  if (na.kind == SymNode::Kind::Const && nb.kind == SymNode::Kind::Const) {
    return constant(apply_op(op, na.value, nb.value));
  }
  // Dropping a zero must not lose a bit-sorted result.
  const auto keeps_sort = [&](const SymNode& zero, SymId other) {
    return zero.value.sort != Sort::Bit || sort_of(other) == Sort::Bit;
  };
  if (op == OpKind::Add && is_zero_number(na) && keeps_sort(na, b)) return b;
  if (is_zero_number(nb) && keeps_sort(nb, a)) return a;
  return raw_op(op, a, b);
}

LitId ImagePool::intern(const TraceLiteral& l) {
  auto it = literal_index_.find(l);
  if (it != literal_index_.end()) {
    TraceLiteral& existing = literals_[it->second];
    // Keep the smallest output image so the stored literal is order-independent.
    if (l.kind == TraceLiteral::Kind::Output && l.lhs != existing.lhs &&
        node_keys_[l.lhs] < node_keys_[existing.lhs]) {
      existing.lhs = l.lhs;
    }
    return it->second;
  }
  const auto id = static_cast<LitId>(literals_.size());
  std::string key;
  switch (l.kind) {
    case TraceLiteral::Kind::Update:
      key = "U(" + node_keys_[l.lhs] + "," + node_keys_[l.rhs] + ")";
      break;
    case TraceLiteral::Kind::Output:
      key = "O(" + output_name_ + "," + format_value(l.value) + ")";
      break;
    case TraceLiteral::Kind::Guard:
      key = "G(" + std::string(relation_name(l.rel)) + "," + node_keys_[l.lhs] + "," +
            node_keys_[l.rhs] + ")";
      break;
  }
  literals_.push_back(l);
  literal_keys_.push_back(std::move(key));
  literal_index_.emplace(l, id);
  return id;
}

LitId ImagePool::update_literal(SymId lhs, SymId value_image) {
  TraceLiteral l;
  l.kind = TraceLiteral::Kind::Update;
  l.lhs = lhs;
  l.rhs = value_image;
  l.constant = !nodes_[lhs].has_input && !nodes_[value_image].has_input;
  return intern(l);
}

LitId ImagePool::output_literal(SymId image, Value value) {
  TraceLiteral l;
  l.kind = TraceLiteral::Kind::Output;
  l.lhs = image;
  l.value = coerce(value, output_sort_);
  l.constant = false;
  return intern(l);
}

LitId ImagePool::guard_literal(Relation rel, SymId lhs, SymId rhs) {
  TraceLiteral l;
  l.kind = TraceLiteral::Kind::Guard;
  l.rel = rel;
  l.lhs = lhs;
  l.rhs = rhs;
  l.constant = !nodes_[lhs].has_input && !nodes_[rhs].has_input;
  return intern(l);
}

SymId ImagePool::import_node(const ImagePool& other, SymId id) {
  const SymNode n = other.nodes_[id];
  switch (n.kind) {
    case SymNode::Kind::Const: return constant(n.value);
    case SymNode::Kind::Input: return input(n.fn, import_node(other, n.a));
    case SymNode::Kind::Op:
      return raw_op(n.op, import_node(other, n.a), import_node(other, n.b));
  }
  return kNoSym;
}

LitId ImagePool::import_literal(const ImagePool& other, LitId id) {
  TraceLiteral l = other.literals_[id];
  l.lhs = import_node(other, l.lhs);
  if (l.rhs != kNoSym) l.rhs = import_node(other, l.rhs);
  return intern(l);
}

Value ImagePool::eval(SymId id, const InputInstance& input) const {
  const SymNode& n = nodes_[id];
  switch (n.kind) {
    case SymNode::Kind::Const: return n.value;
    case SymNode::Kind::Input: {
      const Value arg = eval(n.a, input);
      return external_value(externals_[n.fn], &arg, input);
    }
    case SymNode::Kind::Op: return apply_op(n.op, eval(n.a, input), eval(n.b, input));
  }
  return {};
}

SymId ImagePool::value_image(SymId id, const InputInstance& input) {
  const SymNode n = nodes_[id];
  switch (n.kind) {
    case SymNode::Kind::Const: return id;
    case SymNode::Kind::Input: return constant(eval(id, input));
    case SymNode::Kind::Op:
      return raw_op(n.op, value_image(n.a, input), value_image(n.b, input));
  }
  return kNoSym;
}

bool ImagePool::matches_value_image(SymId id, SymId image, const InputInstance& input) const {
  const SymNode& n = nodes_[id];
  const SymNode& m = nodes_[image];
  switch (n.kind) {
    case SymNode::Kind::Const: return id == image;
    case SymNode::Kind::Input:
      return m.kind == SymNode::Kind::Const && eval(id, input) == m.value;
    case SymNode::Kind::Op:
      return m.kind == SymNode::Kind::Op && m.op == n.op &&
             matches_value_image(n.a, m.a, input) && matches_value_image(n.b, m.b, input);
  }
  return false;
}

ImageTracker::ImageTracker(const Program& program, ImagePool& pool)
    : program_(program), pool_(pool), values_(program), images_(program.internals.size()) {}

void ImageTracker::reset(const InputInstance& input) {
  input_ = &input;
  values_.reset();
  for (auto& v : images_) std::fill(v.begin(), v.end(), kNoSym);
  time_ = 0;
}

SymId ImageTracker::image(const Term& term) {
  switch (term.kind) {
    case Term::Kind::Const: return pool_.constant(term.constant);
    case Term::Kind::Op:
      return pool_.fold(term.op, image(term.args[0]), image(term.args[1]));
    case Term::Kind::Input: {
      const FunctionDecl& decl = program_.externals[term.fn];
      if (decl.arity == 0) return pool_.constant(external_value(decl, nullptr, *input_));
      return pool_.input(term.fn, image(term.args[0]));
    }
    case Term::Kind::Internal: {
      std::int64_t arg = 0;
      if (!term.args.empty()) arg = eval_term(program_, term.args[0], values_, *input_).v;
      const auto& slots = images_[term.fn];
      if (arg < 0 || static_cast<std::size_t>(arg) >= slots.size() ||
          slots[static_cast<std::size_t>(arg)] == kNoSym) {
        throw ValueError("read of unassigned internal " + program_.internals[term.fn].name);
      }
      return slots[static_cast<std::size_t>(arg)];
    }
  }
  return kNoSym;
}

LitId ImageTracker::step(const Event& event) {
  const Instruction& ins = program_.instructions[event.instr];
  ++time_;
  if (event.kind == Event::Kind::Update) {
    const auto& a = std::get<Assign>(ins.body);
    SymId img = image(a.rhs);
    const FunctionDecl& target = program_.internals[a.target];
    if (pool_.node(img).kind == SymNode::Kind::Const) {
      img = pool_.constant(coerce(pool_.node(img).value, target.sort));
    }
    auto& slots = images_[a.target];
    const auto idx = static_cast<std::size_t>(event.arg);
    if (idx >= slots.size()) slots.resize(idx + 1, kNoSym);
    slots[idx] = img;
    values_.set(a.target, event.arg, event.value);
    if (a.target == program_.output) return pool_.output_literal(img, event.value);
    return pool_.update_literal(img, pool_.value_image(img, *input_));
  }
  const auto& b = std::get<Branch>(ins.body);
  const Relation rel = event.holds ? b.guard.rel : negate(b.guard.rel);
  const SymId lhs = image(b.guard.lhs);
  const SymId rhs = image(b.guard.rhs);
  return pool_.guard_literal(rel, lhs, rhs);
}

SymId input_image(const Program& program, ImagePool& pool, const Trace& trace, std::size_t t,
                  const Term& term) {
  ImageTracker tracker(program, pool);
  tracker.reset(trace.input);
  for (std::size_t k = 1; k <= t; ++k) tracker.step(trace.at(k));
  return tracker.image(term);
}

LitId trace_literal(const Program& program, ImagePool& pool, const Trace& trace, std::size_t t) {
  ImageTracker tracker(program, pool);
  tracker.reset(trace.input);
  LitId lit = 0;
  for (std::size_t k = 1; k <= t; ++k) lit = tracker.step(trace.at(k));
  return lit;
}

std::vector<LitId> trace_literals(const Program& program, ImagePool& pool, const Trace& trace) {
  ImageTracker tracker(program, pool);
  tracker.reset(trace.input);
  std::vector<LitId> out;
  out.reserve(trace.length());
  for (const Event& ev : trace.events) out.push_back(tracker.step(ev));
  return out;
}

std::size_t WeededTrace::time_of(LitId literal) const {
  for (const auto& e : entries) {
    if (e.literal == literal) return e.time;
  }
  return 0;
}

namespace {

bool kept_by_weeding(const TraceLiteral& l) {
  return l.kind == TraceLiteral::Kind::Output || !l.constant;
}

}  // namespace

WeededTrace weed(const Program& program, ImagePool& pool, const Trace& trace) {
  ImageTracker tracker(program, pool);
  tracker.reset(trace.input);
  WeededTrace out;
  for (std::size_t t = 1; t <= trace.length(); ++t) {
    const LitId lit = tracker.step(trace.at(t));
    if (kept_by_weeding(pool.literal(lit))) out.entries.push_back({lit, t});
  }
  return out;
}

WeededTrace weed(const ImagePool& pool, const WeededTrace& weeded) {
  WeededTrace out;
  for (const auto& e : weeded.entries) {
    if (kept_by_weeding(pool.literal(e.literal))) out.entries.push_back(e);
  }
  return out;
}

bool satisfies(const ImagePool& pool, LitId literal, const InputInstance& input) {
  const TraceLiteral& l = pool.literal(literal);
  try {
    switch (l.kind) {
      case TraceLiteral::Kind::Guard:
        return compare(l.rel, pool.eval(l.lhs, input), pool.eval(l.rhs, input));
      case TraceLiteral::Kind::Update: return pool.matches_value_image(l.lhs, l.rhs, input);
      case TraceLiteral::Kind::Output:
        return coerce(pool.eval(l.lhs, input), l.value.sort) == l.value;
    }
  } catch (const ValueError&) {
    // An image that cannot be evaluated on this input is not satisfied by it.
  }
  return false;
}

bool TrivialityCache::lookup(const std::string& key, bool& verdict) const {
  std::lock_guard lock(mutex_);
  auto it = verdicts_.find(key);
  if (it == verdicts_.end()) return false;
  verdict = it->second;
  return true;
}

void TrivialityCache::insert(const std::string& key, bool verdict) {
  std::lock_guard lock(mutex_);
  verdicts_[key] = verdict;
}

void TrivialityCache::merge(const TrivialityCache& other) {
  if (&other == this) return;
  std::scoped_lock lock(mutex_, other.mutex_);
  for (const auto& [k, v] : other.verdicts_) verdicts_[k] = v;
}

std::size_t TrivialityCache::size() const {
  std::lock_guard lock(mutex_);
  return verdicts_.size();
}

bool is_trivial(const Domain& dom, const ImagePool& pool, LitId literal, TrivialityCache* cache) {
  const std::string& key = pool.literal_key(literal);
  bool verdict = false;
  if (cache != nullptr && cache->lookup(key, verdict)) return verdict;

  const std::size_t size = dom.size();
  InputInstance x;
  // Counterexamples usually sit far from the first inputs, so probe a spread first.
  const std::size_t probes = std::min<std::size_t>(size, 64);
  const std::size_t stride = probes == 0 ? 1 : size / probes;
  verdict = true;
  for (std::size_t k = 0; k < probes && verdict; ++k) {
    dom.decode_into(k * stride + (k * 2654435761ULL) % stride, x);
    verdict = satisfies(pool, literal, x);
  }
  for (std::size_t i = 0; i < size && verdict; ++i) {
    dom.decode_into(i, x);
    verdict = satisfies(pool, literal, x);
  }
  if (cache != nullptr) cache->insert(key, verdict);
  return verdict;
}

std::vector<WeededEntry> essential_events(const WeededTrace& weeded, const Domain& dom,
                                          const ImagePool& pool, TrivialityCache* cache) {
  std::vector<WeededEntry> out;
  for (const auto& e : weeded.entries) {
    if (pool.literal(e.literal).kind == TraceLiteral::Kind::Output ||
        !is_trivial(dom, pool, e.literal, cache)) {
      out.push_back(e);
    }
  }
  return out;
}

}  // namespace entropic
