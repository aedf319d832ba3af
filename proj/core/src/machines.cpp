#include "normfsi/machines.hpp"

#include "normfsi/error.hpp"

#include <array>
#include <cmath>

namespace normfsi {

int transition_type(const Transition& t, MachineType kind) {
  if (t.label.size() != 3) {
    return 0;
  }
  const auto& [x, y, z] = std::array{t.label[0], t.label[1], t.label[2]};
  if (kind == MachineType::selector) {
    if (x && !y && z && *x == *z) return 1;
    if (x && !y && !z) return 2;
    if (!x && y && !z) return 3;
    return 0;
  }
  if (x && !y && z && *x == *z) return 1;
  if (!x && y && z && *y == *z) return 2;
  return 0;
}

namespace {

Diagnostics audit_types(const KAutomaton& a, MachineType kind) {
  Diagnostics d;
  const char* name = kind == MachineType::selector ? "selector" : "shuffler";
  for (TransitionId id = 0; id < a.transitions().size(); ++id) {
    const Transition& t = a.transition(id);
    if (transition_type(t, kind) == 0) {
      d.violations.push_back({"type", t.from, id, std::nullopt,
                              "transition " + std::to_string(id) + " (" + label_to_string(t.label, 2) +
                                  ") has no " + name + " type"});
    }
  }
  return d;
}

Diagnostics check_three_tapes(const KAutomaton& a) {
  Diagnostics d;
  if (a.tapes() != 3) {
    d.violations.push_back({"arity", std::nullopt, std::nullopt, std::nullopt,
                            "expected a 3-automaton, got " + std::to_string(a.tapes()) + " tapes"});
  }
  return d;
}

}  // namespace

Diagnostics validate_selector(const KAutomaton& a) {
  Diagnostics d = check_three_tapes(a);
  if (!d.ok()) {
    return d;
  }
  if (a.alphabet(2) != a.alphabet(0)) {
    d.violations.push_back({"alphabet", std::nullopt, std::nullopt, std::nullopt,
                            "output alphabet differs from the alphabet of x"});
  }
  d.merge(audit_types(a, MachineType::selector));
  d.merge(validate_l_deterministic(a, 2));
  return d;
}

Diagnostics validate_shuffler(const KAutomaton& a) {
  Diagnostics d = check_three_tapes(a);
  if (!d.ok()) {
    return d;
  }
  if (a.alphabet(1) != a.alphabet(0) || a.alphabet(2) != a.alphabet(0)) {
    d.violations.push_back({"alphabet", std::nullopt, std::nullopt, std::nullopt,
                            "a shuffler uses one alphabet on all three tapes"});
  }
  d.merge(audit_types(a, MachineType::shuffler));
  d.merge(validate_l_complete(a, 2));
  return d;
}

bool is_oblivious(const KAutomaton& selector) {
  for (StateId q = 0; q < selector.state_count(); ++q) {
    const auto& out = selector.outgoing(q);
    for (TransitionId id : out) {
      if (transition_type(selector.transition(id), MachineType::selector) !=
          transition_type(selector.transition(out.front()), MachineType::selector)) {
        return false;
      }
    }
  }
  return true;
}

Selection select(const Deterministic& selector, const WordStream& x, const WordStream& y, std::size_t budget) {
  const std::array inputs{x, y};
  RunTrace t = run(selector, inputs, budget, RunOptions{std::nullopt, false});
  return Selection{std::move(t.outputs.at(0)), t.halt, t.tape_counts[0], t.tape_counts[1]};
}

RunTrace shuffle_run(const Deterministic& shuffler, const WordStream& x, const WordStream& y, std::size_t n) {
  const std::array inputs{x, y};
  RunTrace t = run(shuffler, inputs, n);
  if (t.length() < n) {
    if (t.halt == HaltReason::input_exhausted) {
      throw StreamExhausted("shuffle: input exhausted after " + std::to_string(t.length()) + " of " +
                            std::to_string(n) + " transitions");
    }
    throw ValidationError("shuffle: machine stuck after " + std::to_string(t.length()) + " transitions");
  }
  return t;
}

FiniteWord shuffle(const Deterministic& shuffler, const WordStream& x, const WordStream& y, std::size_t n) {
  return std::move(shuffle_run(shuffler, x, y, n).outputs.at(0));
}

Deterministic splitter_of(const KAutomaton& shuffler) {
  if (shuffler.tapes() != 3) {
    throw ValidationError("splitter_of needs a 3-automaton");
  }
  std::vector<Transition> transitions;
  transitions.reserve(shuffler.transitions().size());
  for (const auto& t : shuffler.transitions()) {
    transitions.push_back(Transition{t.from, Label{t.label[2], t.label[0], t.label[1]}, t.to});
  }
  const auto& alphabets = shuffler.alphabets();
  KAutomaton swapped({alphabets[2], alphabets[0], alphabets[1]}, shuffler.state_count(), shuffler.initial(),
                     std::move(transitions));
  return Deterministic::make(std::move(swapped), 1);
}

std::pair<FiniteWord, FiniteWord> split(const Deterministic& splitter, const WordStream& z, std::size_t n) {
  const std::array inputs{z};
  RunTrace t = run(splitter, inputs, n, RunOptions{std::nullopt, false});
  return {std::move(t.outputs.at(0)), std::move(t.outputs.at(1))};
}

RunTrace unique_run_for_output(const KAutomaton& shuffler, StateId q, const FiniteWord& w) {
  const Deterministic splitter = splitter_of(shuffler);
  const std::array inputs{WordStream::explicit_prefix(w)};
  RunTrace t = run(splitter, inputs, w.size(), RunOptions{q, true});
  if (t.length() != w.size()) {
    throw ValidationError("no run from state " + std::to_string(q) + " outputs " + w.to_string() +
                          ": stuck after " + std::to_string(t.length()) + " symbols");
  }
  return t;
}

CompressionReport conditional_compression_ratio(const Deterministic& compressor, const WordStream& x,
                                                const WordStream& y, std::size_t n) {
  const KAutomaton& a = compressor.automaton();
  if (a.tapes() != 3 || compressor.inputs() != 2) {
    throw Error("a conditional compressor is a 2-deterministic 3-automaton");
  }
  const std::array inputs{x, y};
  RunTrace t = run(compressor, inputs, n);

  CompressionReport report;
  report.transitions = t.length();
  report.x_consumed = t.tape_counts[0];
  report.y_consumed = t.tape_counts[1];
  report.output = t.tape_counts[2];
  report.halt = t.halt;
  if (report.x_consumed == 0) {
    throw Error("compression ratio undefined: no symbol of x consumed in " + std::to_string(t.length()) +
                " transitions");
  }
  report.ratio = Rational(report.output, report.x_consumed);

  std::vector<std::size_t> marks;
  for (std::size_t m = t.length(); m > 0; m /= 2) {
    marks.push_back(m);
  }
  std::size_t x_count = 0;
  std::size_t out_count = 0;
  std::size_t next = marks.size();
  for (std::size_t i = 0; i < t.length() && next > 0; ++i) {
    const Label& label = a.transition(t.transitions[i]).label;
    x_count += label[0] ? 1 : 0;
    out_count += label[2] ? 1 : 0;
    if (i + 1 == marks[next - 1]) {
      if (x_count > 0) {
        report.checkpoints.push_back({i + 1, x_count, out_count, Rational(out_count, x_count)});
      }
      --next;
    }
  }
  report.running_min = report.ratio;
  for (const auto& c : report.checkpoints) {
    report.running_min = std::min(report.running_min, c.ratio);
  }
  report.alphabet_factor = std::log(static_cast<double>(a.alphabet(0).size())) /
                           std::log(static_cast<double>(a.alphabet(2).size()));
  report.estimate = to_double(report.ratio) * report.alphabet_factor;
  report.running_min_estimate = to_double(report.running_min) * report.alphabet_factor;
  return report;
}

}  // namespace normfsi
