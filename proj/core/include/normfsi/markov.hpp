#pragma once

#include "normfsi/automaton.hpp"
#include "normfsi/rational.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace normfsi {

/// Dense |Q| x |Q| matrix of exact transition weights.
class StochasticMatrix {
 public:
  explicit StochasticMatrix(std::size_t dimension) : n_(dimension), entries_(dimension * dimension) {}

  std::size_t dimension() const noexcept { return n_; }
  Rational& at(std::size_t p, std::size_t q) { return entries_.at(p * n_ + q); }
  const Rational& at(std::size_t p, std::size_t q) const { return entries_.at(p * n_ + q); }
  Rational row_sum(std::size_t p) const;

  /// pi * M.
  std::vector<Rational> left_multiply(std::span<const Rational> pi) const;

  friend bool operator==(const StochasticMatrix&, const StochasticMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<Rational> entries_;
};

/// Weights read off the first two label entries: 1/|A| for (a,e),
/// 1/|B| for (e,b), 1/(|A||B|) for (a,b). Output tapes are ignored.
/// Throws Error for automata with fewer than two tapes or transitions
/// that read nothing.
StochasticMatrix transition_matrix(const KAutomaton& a);

/// Components in order of their smallest state; states sorted within.
std::vector<std::vector<StateId>> strongly_connected_components(const KAutomaton& a);

bool is_strongly_connected(const KAutomaton& a);

/// Components with no transition leaving them.
std::vector<std::vector<StateId>> final_components(const KAutomaton& a);

struct SubAutomaton {
  KAutomaton automaton;
  std::vector<StateId> states;  // new id -> original id
};

/// Keeps the given states (sorted, renumbered densely) and the transitions
/// between them. The initial state is kept when present, otherwise the
/// first kept state becomes initial.
SubAutomaton restrict_to(const KAutomaton& a, std::span<const StateId> states);

/// The final strongly connected component reachable from the initial state
/// with the smallest state id.
SubAutomaton final_scc(const KAutomaton& a);

/// The unique pi with pi M = pi and sum 1, by exact Gaussian elimination.
/// Throws ValidationError unless `a` is 2-complete and strongly connected.
std::vector<Rational> stationary(const KAutomaton& a);

bool is_stationary(const StochasticMatrix& m, std::span<const Rational> pi);

/// Solves x * A = b exactly; throws Error when A is singular.
std::vector<Rational> solve_left(std::vector<Rational> a, std::size_t n, std::vector<Rational> b);

struct BlockState {
  StateId q = 0;
  std::vector<Symbol> u;  // buffered symbols of x
  std::vector<Symbol> v;  // buffered symbols of y
};

/// The automaton A_{k,l} that buffers the next k symbols of x and the next
/// l symbols of y ahead of the simulated state.
struct BlockProduct {
  KAutomaton automaton;
  std::vector<BlockState> states;   // product id -> (q, u, v)
  std::vector<StateId> recurrent;   // ids with |u| = k and |v| = l

  /// Restriction to Q x A^k x B^l.
  SubAutomaton recurrent_part() const { return restrict_to(automaton, recurrent); }
};

/// Requires a 2-deterministic 2-automaton in normal form (each transition
/// reads one symbol). Throws BudgetExceeded when the product would have more
/// than `max_states` states.
BlockProduct block_product(const KAutomaton& a, std::size_t k, std::size_t l, std::size_t max_states);

}  // namespace normfsi
