#include "entropic/event_index.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <unordered_map>

namespace entropic {

namespace {

struct Failure {
  std::size_t input = std::numeric_limits<std::size_t>::max();
  std::size_t time = 0;
  std::string message;
};

struct LocalClass {
  std::vector<InputSet::Word> bits;
  std::size_t first_time = std::numeric_limits<std::size_t>::max();
  std::size_t last_time = 0;
  std::uint64_t count = 0;
  bool used = false;
};

// Classes under construction, keyed by canonical literal key.
struct Accumulator {
  explicit Accumulator(const Program& program, std::size_t domain_size)
      : pool(std::make_unique<ImagePool>(program)), size(domain_size) {}

  std::unique_ptr<ImagePool> pool;
  std::size_t size;
  std::unordered_map<std::string, EventClass> classes;
  std::size_t init_time = std::numeric_limits<std::size_t>::max();
  std::uint64_t total_events = 0;

  EventClass& slot(const ImagePool& from, LitId lit) {
    const std::string key = from.literal_key(lit);
    auto it = classes.find(key);
    if (it == classes.end()) {
      EventClass c;
      c.key = key;
      c.literal = pool->import_literal(from, lit);
      c.occurrences = InputSet(size);
      c.first_time = std::numeric_limits<std::size_t>::max();
      it = classes.emplace(key, std::move(c)).first;
    } else {
      pool->import_literal(from, lit);  // keeps the output image choice order-independent
    }
    return it->second;
  }
};

bool passes_weeding(const TraceLiteral& l) {
  return l.kind == TraceLiteral::Kind::Output || !l.constant;
}

std::size_t leading_updates(const Trace& trace) {
  std::size_t k = 0;
  while (k < trace.events.size() && trace.events[k].kind == Event::Kind::Update) ++k;
  return k;
}

// Processes inputs [begin, end) with a private pool and merges into acc.
// `begin` is a multiple of 64.
void process_block(const Program& program, const Domain& dom, const IndexOptions& options,
                   std::size_t budget, std::size_t begin, std::size_t end, Accumulator& acc,
                   Failure& failure, bool merge_locked) {
  ImagePool pool(program);
  ImageTracker tracker(program, pool);
  Trace trace;
  Store store(program);
  InputInstance x;
  std::vector<LocalClass> local;
  std::vector<std::int8_t> keep;  // per local literal: -1 unknown, 0 drop, 1 keep
  const std::size_t block_words = (end - begin + InputSet::kBits - 1) / InputSet::kBits;
  std::size_t init_time = std::numeric_limits<std::size_t>::max();
  std::uint64_t events = 0;
  Failure local_failure;

  for (std::size_t i = begin; i < end; ++i) {
    dom.decode_into(i, x);
    try {
      run_into(program, x, budget, trace, store);
      tracker.reset(x);
      init_time = std::min(init_time, leading_updates(trace));
      for (std::size_t t = 1; t <= trace.length(); ++t) {
        const LitId lit = tracker.step(trace.events[t - 1]);
        if (lit >= keep.size()) keep.resize(static_cast<std::size_t>(lit) + 1, -1);
        if (keep[lit] < 0) {
          const bool ok = passes_weeding(pool.literal(lit)) &&
                          (!options.key_filter || options.key_filter(pool.literal_key(lit)));
          keep[lit] = ok ? 1 : 0;
        }
        if (keep[lit] == 0) continue;
        if (lit >= local.size()) local.resize(static_cast<std::size_t>(lit) + 1);
        LocalClass& c = local[lit];
        if (!c.used) {
          c.used = true;
          c.bits.assign(block_words, 0);
        }
        const std::size_t off = i - begin;
        c.bits[off / InputSet::kBits] |= InputSet::Word{1} << (off % InputSet::kBits);
        c.first_time = std::min(c.first_time, t);
        c.last_time = std::max(c.last_time, t);
        ++c.count;
        ++events;
      }
    } catch (const RunError& e) {
      local_failure = {i, e.time(), e.what()};
      break;
    } catch (const ValueError& e) {
      local_failure = {i, 0, e.what()};
      break;
    }
  }

  const auto merge = [&] {
    if (local_failure.input < failure.input) failure = local_failure;
    acc.init_time = std::min(acc.init_time, init_time);
    acc.total_events += events;
    for (LitId lit = 0; lit < local.size(); ++lit) {
      const LocalClass& c = local[lit];
      if (!c.used) continue;
      EventClass& g = acc.slot(pool, lit);
      g.occurrences.or_words(begin / InputSet::kBits, c.bits.data(), c.bits.size());
      g.first_time = std::min(g.first_time, c.first_time);
      g.last_time = std::max(g.last_time, c.last_time);
      g.count += c.count;
    }
  };
  if (merge_locked) {
#pragma omp critical(entropic_event_index_merge)
    merge();
  } else {
    merge();
  }
}

}  // namespace

EventIndex::EventIndex(const Program& program, const Domain&)
    : pool_(std::make_unique<ImagePool>(program)) {}

const EventClass* EventIndex::find(const std::string& key) const {
  auto it = by_key_.find(key);
  return it == by_key_.end() ? nullptr : &classes_[it->second];
}

EventIndex build_event_index(const Program& program, const Domain& dom,
                             const IndexOptions& options) {
  const std::size_t budget =
      options.step_budget == 0 ? default_step_budget(dom.n()) : options.step_budget;
  Accumulator acc(program, dom.size());
  Failure failure;

  if (options.exec == Exec::Parallel) {
    std::size_t block = std::max<std::size_t>(options.block_inputs, InputSet::kBits);
    block = (block + InputSet::kBits - 1) / InputSet::kBits * InputSet::kBits;
    const auto blocks = static_cast<std::int64_t>((dom.size() + block - 1) / block);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t b = 0; b < blocks; ++b) {
      const std::size_t begin = static_cast<std::size_t>(b) * block;
      const std::size_t end = std::min(dom.size(), begin + block);
      process_block(program, dom, options, budget, begin, end, acc, failure, true);
    }
  } else {
    // Reference path: one trace at a time straight into the shared classes.
    InputInstance x;
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < dom.size() && failure.input == kNone; ++i) {
      dom.decode_into(i, x);
      try {
        const Trace trace = run(program, x, budget);
        acc.init_time = std::min(acc.init_time, leading_updates(trace));
        const WeededTrace weeded = weed(program, *acc.pool, trace);
        for (const auto& e : weeded.entries) {
          const std::string key = acc.pool->literal_key(e.literal);
          if (options.key_filter && !options.key_filter(key)) continue;
          EventClass& c = acc.slot(*acc.pool, e.literal);
          c.occurrences.set(i);
          c.first_time = std::min(c.first_time, e.time);
          c.last_time = std::max(c.last_time, e.time);
          ++c.count;
          ++acc.total_events;
        }
      } catch (const RunError& e) {
        failure = {i, e.time(), e.what()};
      } catch (const ValueError& e) {
        failure = {i, 0, e.what()};
      }
    }
  }

  if (failure.input != std::numeric_limits<std::size_t>::max()) {
    throw RunError(failure.time, "input " + dom.word(failure.input) + ": " + failure.message);
  }

  EventIndex index(program, dom);
  index.filter_ = options.filter;
  index.init_time_ = acc.init_time == std::numeric_limits<std::size_t>::max() ? 0 : acc.init_time;
  index.total_events_ = acc.total_events;

  std::vector<EventClass> classes;
  classes.reserve(acc.classes.size());
  for (auto& [key, c] : acc.classes) classes.push_back(std::move(c));
  std::sort(classes.begin(), classes.end(),
            [](const EventClass& a, const EventClass& b) { return a.key < b.key; });

  TrivialityCache cache;
  for (auto& c : classes) {
    const LitId lit = index.pool_->import_literal(*acc.pool, c.literal);
    if (options.filter == EventFilter::Essential &&
        index.pool_->literal(lit).kind != TraceLiteral::Kind::Output &&
        is_trivial(dom, *index.pool_, lit, &cache)) {
      index.total_events_ -= c.count;
      continue;
    }
    c.literal = lit;
    index.by_key_.emplace(c.key, index.classes_.size());
    index.classes_.push_back(std::move(c));
  }
  return index;
}

}  // namespace entropic
