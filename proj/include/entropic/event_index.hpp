#pragma once

// Similarity classes of events over a whole domain. Two events are similar when
// their trace literals have the same canonical key; the occurrence set of a
// class holds every input whose trace contains such an event.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "entropic/domain.hpp"
#include "entropic/input_set.hpp"
#include "entropic/parallel.hpp"
#include "entropic/prog.hpp"
#include "entropic/symimg.hpp"

namespace entropic {

enum class EventFilter { Weeded, Essential };

struct EventClass {
  std::string key;
  LitId literal = 0;  // in EventIndex::pool()
  InputSet occurrences;
  std::size_t first_time = 0;  // earliest instant over all traces
  std::size_t last_time = 0;   // latest instant over all traces
  std::uint64_t count = 0;     // total number of occurrences, all traces
};

struct IndexOptions {
  EventFilter filter = EventFilter::Essential;
  /// Keep only classes whose key passes; empty keeps everything.
  std::function<bool(const std::string&)> key_filter;
  std::size_t step_budget = 0;  // 0: default_step_budget(n)
  Exec exec = Exec::Parallel;
  std::size_t block_inputs = 4096;  // rounded up to a multiple of 64
};

class EventIndex {
 public:
  EventIndex(const Program& program, const Domain& dom);

  const std::vector<EventClass>& classes() const { return classes_; }
  const EventClass* find(const std::string& key) const;
  const ImagePool& pool() const { return *pool_; }
  ImagePool& pool() { return *pool_; }
  EventFilter filter() const { return filter_; }
  /// Number of leading events before the first guard, minimised over inputs:
  /// the initialisation step.
  std::size_t init_time() const { return init_time_; }
  std::uint64_t total_events() const { return total_events_; }

 private:
  friend EventIndex build_event_index(const Program&, const Domain&, const IndexOptions&);

  std::unique_ptr<ImagePool> pool_;
  std::vector<EventClass> classes_;  // ascending key
  std::map<std::string, std::size_t> by_key_;
  EventFilter filter_ = EventFilter::Essential;
  std::size_t init_time_ = 0;
  std::uint64_t total_events_ = 0;
};

/// Runs the program on every input of the domain. Throws RunError naming the
/// first offending input (in domain order) if any run fails.
EventIndex build_event_index(const Program& program, const Domain& dom,
                             const IndexOptions& options = {});

}  // namespace entropic
