#include <normfsi/automaton.hpp>
#include <normfsi/automaton_json.hpp>
#include <normfsi/builtins.hpp>
#include <normfsi/error.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace normfsi;

namespace {

constexpr std::optional<Symbol> e = std::nullopt;

std::vector<Alphabet> binary(std::size_t k) { return std::vector<Alphabet>(k, Alphabet(2)); }

bool has_kind(const Diagnostics& d, std::string_view kind) {
  return std::any_of(d.violations.begin(), d.violations.end(), [&](const Violation& v) { return v.kind == kind; });
}

KAutomaton random_two_automaton(std::mt19937& rng) {
  std::vector<Transition> ts;
  const StateId states = 4;
  for (StateId q = 0; q < states; ++q) {
    const int shape = static_cast<int>(rng() % 3);
    for (Symbol a = 0; a < 2; ++a) {
      if (shape == 0) {
        ts.push_back({q, {a, e}, static_cast<StateId>(rng() % states)});
      } else if (shape == 1) {
        ts.push_back({q, {e, a}, static_cast<StateId>(rng() % states)});
      } else {
        for (Symbol b = 0; b < 2; ++b) ts.push_back({q, {a, b}, static_cast<StateId>(rng() % states)});
      }
    }
  }
  return KAutomaton(binary(2), states, {0}, ts);
}

}  // namespace

TEST(KAutomaton, RejectsMalformedStructure) {
  EXPECT_THROW(KAutomaton(binary(2), 1, {1}, {}), Error);
  EXPECT_THROW(KAutomaton(binary(2), 1, {0}, {{0, {0, e}, 1}}), Error);
  EXPECT_THROW(KAutomaton(binary(2), 1, {0}, {{0, {0}, 0}}), Error);
  EXPECT_THROW(KAutomaton(binary(2), 1, {0}, {{0, {2, e}, 0}}), AlphabetMismatch);
}

TEST(Determinism, JoinIsTwoDeterministic) {
  EXPECT_TRUE(validate_l_deterministic(builtin("fig2-join"), 2).ok());
}

TEST(Determinism, ShuffleViolatesSupportCondition) {
  const Diagnostics d = validate_l_deterministic(builtin("fig2-shuffle"), 2);
  ASSERT_FALSE(d.ok());
  const auto& a = builtin("fig2-shuffle");
  bool found = false;
  for (const auto& v : d.violations) {
    if (v.kind != "support" || v.state != 0U) continue;
    const Label l1 = a.transition(*v.first).label;
    const Label l2 = a.transition(*v.second).label;
    if ((l1 == Label{0, e, 0} && l2 == Label{e, 0, 0}) || (l1 == Label{e, 0, 0} && l2 == Label{0, e, 0})) {
      found = true;
    }
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(builtin("fig4"), builtin("fig2-shuffle"));
}

TEST(Determinism, DuplicateLabel) {
  const KAutomaton a(binary(2), 2, {0}, {{0, {0, e}, 0}, {0, {0, e}, 1}});
  const Diagnostics d = validate_l_deterministic(a, 2);
  EXPECT_TRUE(has_kind(d, "duplicate-label"));
  EXPECT_TRUE(validate_l_deterministic(KAutomaton(binary(2), 1, {0}, {{0, {0, e}, 0}}), 2).ok());
}

TEST(Determinism, MultipleInitialStates) {
  const KAutomaton a(binary(2), 2, {0, 1}, {});
  EXPECT_TRUE(has_kind(validate_l_deterministic(a, 2), "initial"));
}

TEST(Completeness, FigureThreeIsComplete) { EXPECT_TRUE(validate_l_complete(builtin("fig3"), 2).ok()); }

TEST(Completeness, MissingTupleAfterDeletion) {
  const KAutomaton full = builtin("fig3");
  std::vector<Transition> ts;
  for (const auto& t : full.transitions()) {
    if (!(t.from == 1 && t.label == Label{e, 1})) ts.push_back(t);
  }
  const KAutomaton cut(full.alphabets(), full.state_count(), full.initial(), ts);
  const Diagnostics d = validate_l_complete(cut, 2);
  ASSERT_EQ(d.violations.size(), 1U);
  EXPECT_EQ(d.violations[0].kind, "missing-label");
  EXPECT_EQ(d.violations[0].state, 1U);
  EXPECT_NE(d.violations[0].message.find("(e,1)"), std::string::npos) << d.violations[0].message;
}

TEST(Completeness, SingleLoopState) {
  const KAutomaton a(binary(2), 1, {0}, {{0, {0, e}, 0}, {0, {1, e}, 0}});
  EXPECT_TRUE(validate_l_complete(a, 2).ok());
}

TEST(Completeness, DeadState) {
  const KAutomaton a(binary(2), 2, {0}, {{0, {0, e}, 1}, {0, {1, e}, 1}});
  EXPECT_TRUE(has_kind(validate_l_complete(a, 2), "dead-state"));
}

TEST(Deterministic, RefusesNondeterministicMachines) {
  EXPECT_THROW(Deterministic::make(builtin("fig2-shuffle"), 2), ValidationError);
}

TEST(Run, JoinInterleavesInputs) {
  const auto join = Deterministic::make(builtin("fig2-join"), 2);
  const std::vector<WordStream> in{WordStream::parse("explicit:00110"), WordStream::parse("explicit:10100")};
  const RunTrace t = run(join, in, 10);
  EXPECT_EQ(t.outputs.at(0).to_string(), "0100111000");
  EXPECT_EQ(t.halt, HaltReason::budget);
  EXPECT_EQ(t.tape_counts[0], 5U);
  EXPECT_EQ(t.tape_counts[1], 5U);
  EXPECT_EQ(t.tape_counts[2], 10U);
}

TEST(Run, ZeroBudget) {
  const auto a = Deterministic::make(builtin("fig3"), 2);
  const std::vector<WordStream> in{WordStream::champernowne(2), WordStream::champernowne(2)};
  const RunTrace t = run(a, in, 0);
  EXPECT_EQ(t.length(), 0U);
  EXPECT_EQ(t.halt, HaltReason::budget);
  EXPECT_EQ(t.final_state, 0U);
}

TEST(Run, ZerosKeepFigureThreeInFirstState) {
  const auto a = Deterministic::make(builtin("fig3"), 2);
  const std::vector<WordStream> in{WordStream::parse("periodic:0"), WordStream::prng(2, 5)};
  const RunTrace t = run(a, in, 1000);
  EXPECT_TRUE(std::all_of(t.states.begin(), t.states.end(), [](StateId q) { return q == 0; }));
  EXPECT_EQ(t.tape_counts[1], 0U);
  EXPECT_EQ(starved_tapes(a, t), std::vector<std::size_t>{1});
}

TEST(Run, HaltsWhenInputRunsOut) {
  const auto a = Deterministic::make(builtin("fig2-join"), 2);
  const std::vector<WordStream> in{WordStream::parse("explicit:01"), WordStream::parse("explicit:1")};
  const RunTrace t = run(a, in, 100);
  EXPECT_EQ(t.halt, HaltReason::input_exhausted);
  EXPECT_EQ(t.length(), 3U);
}

TEST(Run, HaltsWhenStuck) {
  const KAutomaton a(binary(2), 2, {0}, {{0, {0, e}, 1}, {1, {0, e}, 1}});
  const std::vector<WordStream> in{WordStream::parse("explicit:001"), WordStream::parse("periodic:0")};
  const RunTrace t = run(Deterministic::make(a, 2), in, 100);
  EXPECT_EQ(t.halt, HaltReason::stuck);
  EXPECT_EQ(t.length(), 2U);
  EXPECT_EQ(t.final_state, 1U);
}

TEST(Run, ArityAndAlphabetChecks) {
  const auto a = Deterministic::make(builtin("fig3"), 2);
  const std::vector<WordStream> one{WordStream::champernowne(2)};
  EXPECT_THROW(run(a, one, 5), Error);
  const std::vector<WordStream> wide{WordStream::champernowne(3), WordStream::champernowne(2)};
  EXPECT_THROW(run(a, wide, 5), AlphabetMismatch);
}

TEST(Frequencies, SingleStep) {
  const auto a = Deterministic::make(builtin("fig3"), 2);
  const std::vector<WordStream> in{WordStream::parse("periodic:0"), WordStream::parse("periodic:0")};
  const RunTrace t = run(a, in, 1);
  const auto f = state_frequencies(t);
  EXPECT_EQ(f[0], 1);
  EXPECT_EQ(f[1], 0);
  EXPECT_THROW(state_frequencies(run(a, in, 0)), Error);
}

TEST(Frequencies, SingleLoopingTransition) {
  const KAutomaton a(binary(2), 1, {0}, {{0, {0, e}, 0}});
  const std::vector<WordStream> in{WordStream::parse("periodic:0"), WordStream::parse("periodic:0")};
  const auto f = transition_frequencies(run(Deterministic::make(a, 2), in, 17));
  ASSERT_EQ(f.size(), 1U);
  EXPECT_EQ(f[0], 1);
}

TEST(Frequencies, OutgoingSumsMatchStateFrequency) {
  const KAutomaton fig = builtin("fig3");
  const auto a = Deterministic::make(fig, 2);
  const std::vector<WordStream> in{WordStream::prng(2, 11), WordStream::prng(2, 12)};
  const std::size_t n = 1000000;
  const RunTrace t = run(a, in, n);
  const auto sf = state_frequencies(t);
  const auto tf = transition_frequencies(t);
  for (StateId q = 0; q < fig.state_count(); ++q) {
    Rational sum = 0;
    for (TransitionId id : fig.outgoing(q)) sum += tf[id];
    Rational diff = sum - sf[q];
    if (diff < 0) diff = -diff;
    EXPECT_LE(diff, Rational(1, n));
  }
  EXPECT_NEAR(to_double(sf[0]), 2.0 / 3.0, 0.01);
  EXPECT_NEAR(to_double(sf[1]), 1.0 / 3.0, 0.01);
  // both transitions leaving q0 carry about a third each
  for (TransitionId id : fig.outgoing(0)) EXPECT_NEAR(to_double(tf[id]), 1.0 / 3.0, 0.01);
}

TEST(Normalize, SplitsTwoSymbolTransitions) {
  const KAutomaton a(binary(2), 1, {0}, {{0, {0, 1}, 0}});
  const Normalization n = normalize(a);
  EXPECT_EQ(n.automaton.state_count(), 2U);
  ASSERT_EQ(n.automaton.transitions().size(), 2U);
  EXPECT_EQ(n.automaton.transition(0), (Transition{0, {0, e}, 1}));
  EXPECT_EQ(n.automaton.transition(1), (Transition{1, {e, 1}, 0}));
  EXPECT_FALSE(n.origin[0].has_value());
  EXPECT_EQ(n.origin[1], 0U);
}

TEST(Normalize, FixedPointOnNormalForm) {
  const KAutomaton a = builtin("fig5");
  const Normalization n = normalize(a);
  EXPECT_EQ(n.automaton, a);
  EXPECT_EQ(n.original_states, a.state_count());
}

TEST(Normalize, PreservesRuns) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const KAutomaton a = random_two_automaton(rng);
    ASSERT_TRUE(validate_l_complete(a, 2).ok());
    const Normalization norm = normalize(a);
    ASSERT_TRUE(validate_l_complete(norm.automaton, 2).ok());
    const std::vector<WordStream> in{WordStream::prng(2, 2 * trial), WordStream::prng(2, 2 * trial + 1)};
    const std::size_t n = 200;
    const RunTrace before = run(Deterministic::make(a, 2), in, n);
    const RunTrace after = run(Deterministic::make(norm.automaton, 2), in, 2 * n);
    auto projected = project_run(norm, after.transitions);
    ASSERT_GE(projected.size(), n);
    projected.resize(n);
    EXPECT_EQ(projected, before.transitions) << "trial " << trial;
  }
}

TEST(Json, RoundTripsBuiltins) {
  for (const auto& name : builtin_names()) {
    const KAutomaton a = builtin(name);
    EXPECT_EQ(automaton_from_json(nlohmann::json::parse(to_json(a).dump())), a) << name;
  }
}

TEST(Json, RejectsMalformedDocuments) {
  EXPECT_THROW(automaton_from_json(nlohmann::json::parse(R"({"k":2})")), Error);
  EXPECT_THROW(
      automaton_from_json(nlohmann::json::parse(
          R"({"k":2,"alphabets":[2],"states":1,"initial":0,"transitions":[]})")),
      Error);
}

TEST(Json, DiagnosticsShape) {
  const auto j = to_json(validate_l_deterministic(builtin("fig2-shuffle"), 2));
  EXPECT_FALSE(j.at("ok").get<bool>());
  ASSERT_FALSE(j.at("violations").empty());
  EXPECT_EQ(j["violations"][0]["kind"], "support");
  EXPECT_EQ(j["violations"][0]["state"], 0);
}
