#pragma once

#include "normfsi/automaton.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace normfsi {

/// Selector transition types: I (a,e|a), II (a,e|e), III (e,b|e).
/// Shuffler transition types: I (a,e|a), II (e,a|a).
enum class MachineType { selector, shuffler };

/// Type of a single transition, or 0 when it fits none.
int transition_type(const Transition& t, MachineType kind);

/// Type audit plus 2-determinism. Selectors must copy onto an output tape
/// with the alphabet of x.
Diagnostics validate_selector(const KAutomaton& a);

/// Type audit, one shared alphabet, 2-determinism and 2-completeness.
Diagnostics validate_shuffler(const KAutomaton& a);

/// All transitions leaving each state share one type.
bool is_oblivious(const KAutomaton& selector);

struct Selection {
  FiniteWord output;
  HaltReason halt;
  std::size_t x_consumed = 0;
  std::size_t y_consumed = 0;
};

/// Runs a selector for at most `budget` transitions.
Selection select(const Deterministic& selector, const WordStream& x, const WordStream& y, std::size_t budget);

/// Exactly n transitions of a shuffler, hence n output symbols. Throws
/// StreamExhausted when an explicit input runs out first.
FiniteWord shuffle(const Deterministic& shuffler, const WordStream& x, const WordStream& y, std::size_t n);

/// The same run as shuffle(), with the trace.
RunTrace shuffle_run(const Deterministic& shuffler, const WordStream& x, const WordStream& y, std::size_t n);

/// Exchanges input and output tapes: tapes become [z, x, y], the machine is
/// 1-deterministic, and transition ids are kept.
Deterministic splitter_of(const KAutomaton& shuffler);

/// Reads n symbols of z and returns the (x, y) prefixes written.
std::pair<FiniteWord, FiniteWord> split(const Deterministic& splitter, const WordStream& z, std::size_t n);

/// The run of length |w| from q whose output is w. Transition ids refer to
/// the shuffler. Throws ValidationError if the shuffler is incomplete along w.
RunTrace unique_run_for_output(const KAutomaton& shuffler, StateId q, const FiniteWord& w);

struct RatioCheckpoint {
  std::size_t transitions = 0;
  std::size_t x_consumed = 0;
  std::size_t output = 0;
  Rational ratio;
};

/// Finite-prefix estimate of the conditional compression ratio.
/// `ratio` is |output| / |x consumed| (y is not counted); the reported
/// estimate multiplies it by log|A| / log|B|, which is 1 when input and
/// output alphabets agree. Checkpoints sit at n, n/2, n/4, ... and
/// `running_min` is the smallest ratio among them.
struct CompressionReport {
  std::size_t transitions = 0;
  std::size_t x_consumed = 0;
  std::size_t y_consumed = 0;
  std::size_t output = 0;
  Rational ratio;
  Rational running_min;
  double alphabet_factor = 1.0;
  double estimate = 0.0;
  double running_min_estimate = 0.0;
  HaltReason halt = HaltReason::budget;
  std::vector<RatioCheckpoint> checkpoints;  // increasing n
};

/// Throws Error when no x symbol was consumed within n transitions.
CompressionReport conditional_compression_ratio(const Deterministic& compressor, const WordStream& x,
                                                const WordStream& y, std::size_t n);

}  // namespace normfsi
