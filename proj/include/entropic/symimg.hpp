#pragma once

// Input images, trace literals and weeded traces.
//
// The input image of a term replaces every internal function application by
// the image of the right-hand side that last assigned it, so images are built
// from constants, input applications and add/sub only. Constant subterms are
// folded and `0 + e` becomes `e`. Images and literals are hash-consed in an
// ImagePool; two events are similar exactly when their literal ids (equivalently
// their canonical keys) coincide.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "entropic/prog.hpp"

namespace entropic {

class Domain;

using SymId = std::uint32_t;
using LitId = std::uint32_t;
inline constexpr SymId kNoSym = std::numeric_limits<SymId>::max();

struct SymNode {
  enum class Kind : std::uint8_t { Const, Input, Op };

  Kind kind = Kind::Const;
  OpKind op = OpKind::Add;
  Value value{};
  std::uint32_t fn = 0;  // external function (Input)
  SymId a = kNoSym;      // Input argument or left operand
  SymId b = kNoSym;      // right operand
  bool has_input = false;
};

struct TraceLiteral {
  enum class Kind : std::uint8_t { Update, Output, Guard };

  Kind kind = Kind::Guard;
  Relation rel = Relation::Eq;
  SymId lhs = kNoSym;  // Update/Guard: symbolic side; Output: image of the output
  SymId rhs = kNoSym;  // Update: value image; Guard: symbolic side
  Value value{};       // Output: the folded result
  bool constant = false;
};

/// Hash-consing store for symbolic terms and trace literals of one program.
class ImagePool {
 public:
  explicit ImagePool(const Program& program);

  SymId constant(Value v);
  SymId input(std::uint32_t fn, SymId arg);
  /// Folds constant operands and the additive identity.
  SymId fold(OpKind op, SymId a, SymId b);
  /// Keeps the operation node even when both operands are constants.
  SymId raw_op(OpKind op, SymId a, SymId b);

  LitId update_literal(SymId lhs, SymId value_image);
  LitId output_literal(SymId image, Value value);
  LitId guard_literal(Relation rel, SymId lhs, SymId rhs);

  const SymNode& node(SymId id) const { return nodes_[id]; }
  const TraceLiteral& literal(LitId id) const { return literals_[id]; }
  const std::string& key(SymId id) const { return node_keys_[id]; }
  const std::string& literal_key(LitId id) const { return literal_keys_[id]; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t literal_count() const { return literals_.size(); }

  /// Copies a literal (and its terms) from another pool of the same program.
  LitId import_literal(const ImagePool& other, LitId id);

  const std::vector<FunctionDecl>& externals() const { return externals_; }
  const std::string& output_name() const { return output_name_; }

  /// Evaluates a symbolic term on a concrete input.
  Value eval(SymId id, const InputInstance& input) const;
  /// Every input application replaced by its value; structure is preserved.
  SymId value_image(SymId id, const InputInstance& input);
  /// True if value_image(id, input) would be `image`, without interning anything.
  bool matches_value_image(SymId id, SymId image, const InputInstance& input) const;
  Sort sort_of(SymId id) const;

 private:
  struct NodeHash {
    std::size_t operator()(const SymNode& n) const;
  };
  struct NodeEq {
    bool operator()(const SymNode& x, const SymNode& y) const;
  };
  struct LitHash {
    std::size_t operator()(const TraceLiteral& l) const;
  };
  struct LitEq {
    bool operator()(const TraceLiteral& x, const TraceLiteral& y) const;
  };

  SymId intern(const SymNode& n);
  LitId intern(const TraceLiteral& l);
  SymId import_node(const ImagePool& other, SymId id);

  std::vector<FunctionDecl> externals_;
  std::string output_name_;
  Sort output_sort_ = Sort::Int;
  std::vector<SymNode> nodes_;
  std::vector<std::string> node_keys_;
  std::unordered_map<SymNode, SymId, NodeHash, NodeEq> node_index_;
  std::vector<TraceLiteral> literals_;
  std::vector<std::string> literal_keys_;
  std::unordered_map<TraceLiteral, LitId, LitHash, LitEq> literal_index_;
};

/// Replays a trace event by event, maintaining internal values and images.
class ImageTracker {
 public:
  ImageTracker(const Program& program, ImagePool& pool);

  void reset(const InputInstance& input);
  /// Consumes the next event and returns its trace literal.
  LitId step(const Event& event);
  /// Input image of `term` at the current instant.
  SymId image(const Term& term);
  std::size_t time() const { return time_; }

 private:
  const Program& program_;
  ImagePool& pool_;
  const InputInstance* input_ = nullptr;
  Store values_;
  std::vector<std::vector<SymId>> images_;
  std::size_t time_ = 0;
};

/// Input image of `term` at instant t (0 = before the first event).
SymId input_image(const Program& program, ImagePool& pool, const Trace& trace, std::size_t t,
                  const Term& term);

/// Literal of the event at instant t (1-based).
LitId trace_literal(const Program& program, ImagePool& pool, const Trace& trace, std::size_t t);

/// Literals of every event, in trace order.
std::vector<LitId> trace_literals(const Program& program, ImagePool& pool, const Trace& trace);

struct WeededEntry {
  LitId literal = 0;
  std::size_t time = 0;  // instant of the event in the full trace
};

struct WeededTrace {
  std::vector<WeededEntry> entries;

  std::size_t size() const { return entries.size(); }
  /// Instant of the first occurrence of `literal`, 0 if absent.
  std::size_t time_of(LitId literal) const;
};

/// Drops constant literals (no input application anywhere). Output literals stay.
WeededTrace weed(const Program& program, ImagePool& pool, const Trace& trace);
WeededTrace weed(const ImagePool& pool, const WeededTrace& weeded);

/// Satisfaction of a literal by an input: guards are evaluated, update literals
/// must reproduce their value image exactly, output literals compare the value
/// of the output's image.
bool satisfies(const ImagePool& pool, LitId literal, const InputInstance& input);

/// Memo of "true for every input of the domain" verdicts, keyed by literal key.
/// Verdicts are deterministic, so concurrent inserts of the same key agree.
class TrivialityCache {
 public:
  bool lookup(const std::string& key, bool& verdict) const;
  void insert(const std::string& key, bool verdict);
  void merge(const TrivialityCache& other);
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::unordered_map<std::string, bool> verdicts_;
};

bool is_trivial(const Domain& dom, const ImagePool& pool, LitId literal,
                TrivialityCache* cache = nullptr);

/// Weeded literals that are not true for every input. Output literals are kept.
std::vector<WeededEntry> essential_events(const WeededTrace& weeded, const Domain& dom,
                                          const ImagePool& pool, TrivialityCache* cache = nullptr);

}  // namespace entropic
