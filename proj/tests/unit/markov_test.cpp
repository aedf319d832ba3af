#include <normfsi/builtins.hpp>
#include <normfsi/error.hpp>
#include <normfsi/markov.hpp>

#include <gtest/gtest.h>

using namespace normfsi;

namespace {

constexpr std::optional<Symbol> e = std::nullopt;

std::vector<Alphabet> binary(std::size_t k) { return std::vector<Alphabet>(k, Alphabet(2)); }

Rational r(int p, int q = 1) { return Rational(p, q); }

}  // namespace

TEST(TransitionMatrix, FigureThree) {
  const StochasticMatrix m = transition_matrix(builtin("fig3"));
  ASSERT_EQ(m.dimension(), 2U);
  EXPECT_EQ(m.at(0, 0), r(1, 2));
  EXPECT_EQ(m.at(0, 1), r(1, 2));
  EXPECT_EQ(m.at(1, 0), r(1));
  EXPECT_EQ(m.at(1, 1), r(0));
}

TEST(TransitionMatrix, FigureFive) {
  const StochasticMatrix m = transition_matrix(builtin("fig5"));
  const int pattern[4][4] = {{0, 0, 1, 1}, {0, 0, 1, 1}, {1, 1, 0, 0}, {1, 1, 0, 0}};
  for (std::size_t p = 0; p < 4; ++p) {
    for (std::size_t q = 0; q < 4; ++q) EXPECT_EQ(m.at(p, q), r(pattern[p][q], 2)) << p << "," << q;
  }
}

TEST(TransitionMatrix, LoopsSumToOne) {
  const KAutomaton a(binary(2), 1, {0}, {{0, {0, e}, 0}, {0, {1, e}, 0}});
  const StochasticMatrix m = transition_matrix(a);
  EXPECT_EQ(m.at(0, 0), r(1));
}

TEST(TransitionMatrix, TwoSymbolLabelsWeighByProduct) {
  const KAutomaton a(std::vector<Alphabet>{Alphabet(2), Alphabet(3)}, 2, {0},
                     {{0, {0, 0}, 0}, {0, {0, 1}, 1}, {0, {0, 2}, 1}, {0, {1, 0}, 1}, {0, {1, 1}, 1}, {0, {1, 2}, 1},
                      {1, {e, 0}, 0}, {1, {e, 1}, 0}, {1, {e, 2}, 0}});
  const StochasticMatrix m = transition_matrix(a);
  EXPECT_EQ(m.at(0, 0), r(1, 6));
  EXPECT_EQ(m.at(0, 1), r(5, 6));
  EXPECT_EQ(m.row_sum(1), r(1));
}

TEST(Connectivity, Figures) {
  EXPECT_TRUE(is_strongly_connected(builtin("fig3")));
  EXPECT_TRUE(is_strongly_connected(builtin("fig5")));
  const KAutomaton oneway(binary(2), 2, {0}, {{0, {0, e}, 1}});
  EXPECT_FALSE(is_strongly_connected(oneway));
  const auto comps = strongly_connected_components(oneway);
  EXPECT_EQ(comps.size(), 2U);
  const auto finals = final_components(oneway);
  ASSERT_EQ(finals.size(), 1U);
  EXPECT_EQ(finals[0], std::vector<StateId>{1});
}

TEST(Connectivity, FinalComponentRestriction) {
  // 0 -> {1,2} cycle, 3 unreachable sink
  const KAutomaton a(binary(2), 4, {0},
                     {{0, {0, e}, 1}, {0, {1, e}, 1}, {1, {e, 0}, 2}, {1, {e, 1}, 2}, {2, {0, e}, 1},
                      {2, {1, e}, 1}, {3, {0, e}, 3}, {3, {1, e}, 3}});
  const SubAutomaton f = final_scc(a);
  EXPECT_EQ(f.states, (std::vector<StateId>{1, 2}));
  EXPECT_TRUE(is_strongly_connected(f.automaton));
  const auto pi = stationary(f.automaton);
  EXPECT_EQ(pi, (std::vector<Rational>{r(1, 2), r(1, 2)}));
}

TEST(Stationary, FigureThree) {
  EXPECT_EQ(stationary(builtin("fig3")), (std::vector<Rational>{r(2, 3), r(1, 3)}));
}

TEST(Stationary, FigureFive) {
  EXPECT_EQ(stationary(builtin("fig5")), (std::vector<Rational>(4, r(1, 4))));
}

TEST(Stationary, SingleState) {
  const KAutomaton a(binary(2), 1, {0}, {{0, {0, e}, 0}, {0, {1, e}, 0}});
  EXPECT_EQ(stationary(a), std::vector<Rational>{r(1)});
}

TEST(Stationary, RejectsBadInputs) {
  const KAutomaton oneway(binary(2), 2, {0}, {{0, {0, e}, 1}, {0, {1, e}, 1}, {1, {0, e}, 1}, {1, {1, e}, 1}});
  EXPECT_THROW(stationary(oneway), ValidationError);
  const KAutomaton partial(binary(2), 1, {0}, {{0, {0, e}, 0}});
  EXPECT_THROW(stationary(partial), ValidationError);
}

TEST(Stationary, SolutionIsFixedPoint) {
  for (const char* name : {"fig3", "fig5"}) {
    const KAutomaton a = builtin(name);
    EXPECT_TRUE(is_stationary(transition_matrix(a), stationary(a))) << name;
  }
  EXPECT_FALSE(is_stationary(transition_matrix(builtin("fig3")), std::vector<Rational>{r(1, 2), r(1, 2)}));
}

TEST(SolveLeft, SmallSystem) {
  // [x y] * [[2,1],[1,3]] = [5,10]  ->  x = 1, y = 3
  const auto sol = solve_left({r(2), r(1), r(1), r(3)}, 2, {r(5), r(10)});
  EXPECT_EQ(sol, (std::vector<Rational>{r(1), r(3)}));
}

TEST(BlockProduct, FigureThreeLaw) {
  const KAutomaton a = builtin("fig3");
  const BlockProduct p = block_product(a, 1, 1, 1000);
  EXPECT_EQ(p.recurrent.size(), 8U);
  const SubAutomaton rec = p.recurrent_part();
  EXPECT_TRUE(is_strongly_connected(rec.automaton));
  const auto pi = stationary(a);
  const auto rho = stationary(rec.automaton);
  for (std::size_t i = 0; i < rec.states.size(); ++i) {
    EXPECT_EQ(rho[i], pi[p.states[rec.states[i]].q] / 4);
  }
}

TEST(BlockProduct, FigureFiveWiderBlocks) {
  const KAutomaton a = builtin("fig5");
  const BlockProduct p = block_product(a, 2, 1, 10000);
  const SubAutomaton rec = p.recurrent_part();
  ASSERT_TRUE(is_strongly_connected(rec.automaton));
  const auto pi = stationary(a);
  const auto rho = stationary(rec.automaton);
  for (std::size_t i = 0; i < rec.states.size(); ++i) {
    EXPECT_EQ(rho[i], pi[p.states[rec.states[i]].q] / 8);
  }
}

TEST(BlockProduct, OneStateMachine) {
  const KAutomaton a(binary(2), 1, {0}, {{0, {0, e}, 0}, {0, {1, e}, 0}});
  const BlockProduct p = block_product(a, 1, 1, 100);
  const SubAutomaton rec = p.recurrent_part();
  EXPECT_EQ(rec.states.size(), 4U);
  // the buffered y symbol never changes, so the recurrent part splits
  EXPECT_FALSE(is_strongly_connected(rec.automaton));
  EXPECT_TRUE(is_stationary(transition_matrix(rec.automaton), std::vector<Rational>(4, r(1, 4))));
  EXPECT_THROW(stationary(rec.automaton), ValidationError);
}

TEST(BlockProduct, Preconditions) {
  const KAutomaton both(binary(2), 1, {0}, {{0, {0, 0}, 0}});
  EXPECT_THROW(block_product(both, 1, 1, 100), ValidationError);
  EXPECT_THROW(block_product(builtin("fig3"), 4, 4, 10), BudgetExceeded);
  EXPECT_THROW(block_product(builtin("fig3"), 0, 1, 100), Error);
}
