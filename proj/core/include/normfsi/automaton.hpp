#pragma once

#include "normfsi/rational.hpp"
#include "normfsi/stream.hpp"
#include "normfsi/words.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace normfsi {

using StateId = std::uint32_t;
using TransitionId = std::uint32_t;

/// One entry per tape; nullopt is the empty word on that tape.
using Label = std::vector<std::optional<Symbol>>;

struct Transition {
  StateId from = 0;
  Label label;
  StateId to = 0;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Tapes of the first l label entries that carry a symbol.
std::vector<std::size_t> support(const Label& label, std::size_t l);

/// A k-tape automaton <Q, A, delta, I> with dense state ids 0..|Q|-1.
/// The constructor checks only structural well-formedness (arity, symbol
/// ranges, state ranges); determinism and completeness are checked by the
/// validate_* functions below.
class KAutomaton {
 public:
  KAutomaton(std::vector<Alphabet> alphabets, std::size_t state_count, std::vector<StateId> initial,
             std::vector<Transition> transitions);

  std::size_t tapes() const noexcept { return alphabets_.size(); }
  const std::vector<Alphabet>& alphabets() const noexcept { return alphabets_; }
  Alphabet alphabet(std::size_t tape) const { return alphabets_.at(tape); }
  std::size_t state_count() const noexcept { return state_count_; }
  const std::vector<StateId>& initial() const noexcept { return initial_; }
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }
  const Transition& transition(TransitionId id) const { return transitions_.at(id); }

  /// Ids of transitions leaving q, in insertion order.
  const std::vector<TransitionId>& outgoing(StateId q) const { return outgoing_.at(q); }

  friend bool operator==(const KAutomaton& a, const KAutomaton& b) {
    return a.alphabets_ == b.alphabets_ && a.state_count_ == b.state_count_ && a.initial_ == b.initial_ &&
           a.transitions_ == b.transitions_;
  }

 private:
  std::vector<Alphabet> alphabets_;
  std::size_t state_count_;
  std::vector<StateId> initial_;
  std::vector<Transition> transitions_;
  std::vector<std::vector<TransitionId>> outgoing_;
};

std::string label_to_string(const Label& label, std::size_t inputs);

struct Violation {
  std::string kind;  // "initial", "support", "duplicate-label", "missing-label", "dead-state", "type", ...
  std::optional<StateId> state;
  std::optional<TransitionId> first;
  std::optional<TransitionId> second;
  std::string message;
};

struct Diagnostics {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  void merge(const Diagnostics& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  }
};

/// l-determinism: one initial state, and at each state all outgoing
/// transitions share one l-support while having pairwise distinct l-labels.
Diagnostics validate_l_deterministic(const KAutomaton& a, std::size_t l);

/// l-completeness: at each state, every l-tuple over the state's l-support
/// labels some outgoing transition. Determinism violations are reported
/// first since completeness is only meaningful on top of them.
Diagnostics validate_l_complete(const KAutomaton& a, std::size_t l);

/// A KAutomaton proven l-deterministic, with a dispatch table from the
/// symbols under the read heads to the unique matching transition.
class Deterministic {
 public:
  /// Throws ValidationError listing the violations when `a` is not
  /// l-deterministic.
  static Deterministic make(KAutomaton a, std::size_t inputs);

  const KAutomaton& automaton() const noexcept { return automaton_; }
  std::size_t inputs() const noexcept { return inputs_; }
  StateId initial() const noexcept { return automaton_.initial().front(); }

  /// Input tapes read when leaving q.
  const std::vector<std::size_t>& reads(StateId q) const { return states_.at(q).tapes; }

  /// Transition matching the symbols under the heads of reads(q), in the
  /// same order; nullopt when q has no such transition (incomplete).
  std::optional<TransitionId> lookup(StateId q, std::span<const Symbol> symbols) const;

 private:
  struct StateTable {
    std::vector<std::size_t> tapes;
    std::vector<std::int64_t> table;  // mixed-radix index -> transition id or -1
  };

  Deterministic(KAutomaton a, std::size_t inputs) : automaton_(std::move(a)), inputs_(inputs) {}

  KAutomaton automaton_;
  std::size_t inputs_;
  std::vector<StateTable> states_;
};

enum class HaltReason { budget, input_exhausted, stuck };
std::string to_string(HaltReason reason);

/// A finite run: the transitions fired, the state each one left from, the
/// per-tape symbol counts, and the words written on the output tapes.
struct RunTrace {
  StateId start = 0;
  StateId final_state = 0;
  std::vector<StateId> states;            // states[i] = source of transitions[i]
  std::vector<TransitionId> transitions;
  std::vector<std::size_t> tape_counts;   // consumed (input tapes) or written (output tapes)
  std::vector<FiniteWord> outputs;        // one per output tape
  HaltReason halt = HaltReason::budget;
  std::size_t state_count = 0;
  std::size_t transition_count = 0;

  std::size_t length() const noexcept { return transitions.size(); }
};

struct RunOptions {
  std::optional<StateId> start;  // defaults to the initial state
  bool record = true;            // keep per-transition history
};

/// Executes `a` on the given input streams for at most `budget`
/// transitions. The read heads are peeked before anything is consumed, so
/// a stuck or starved state leaves the input positions untouched.
RunTrace run(const Deterministic& a, std::span<const WordStream> inputs, std::size_t budget, RunOptions options = {});

/// occ(gamma[1..n], q)/n for every state q (zeros included).
std::vector<Rational> state_frequencies(const RunTrace& t);

/// occ(gamma[1..n], tau)/n for every transition id.
std::vector<Rational> transition_frequencies(const RunTrace& t);

/// Input tapes never read during the second half of the trace: a finite
/// run cannot decide acceptance, so this is reported as a diagnostic.
std::vector<std::size_t> starved_tapes(const Deterministic& a, const RunTrace& t);

/// Result of the 2-tape normal form: every transition carries exactly one
/// symbol. Original states keep their ids; fresh states are appended.
struct Normalization {
  KAutomaton automaton;
  std::size_t original_states = 0;
  /// For every new transition, the original transition it completes, or
  /// nullopt for the first half (p --a,e--> q_a) of a split transition.
  std::vector<std::optional<TransitionId>> origin;
};

/// Splits each p --a,b--> q into p --a,e--> q_{p,a} --e,b--> q, with one
/// fresh state per (p, a). Throws Error unless k = 2 or when a transition
/// reads nothing.
Normalization normalize(const KAutomaton& a);

/// Projection of a run of the normalized automaton onto the original
/// transitions (first halves dropped).
std::vector<TransitionId> project_run(const Normalization& n, std::span<const TransitionId> run);

}  // namespace normfsi
