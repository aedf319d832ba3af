#include "normfsi/automaton.hpp"

#include "normfsi/error.hpp"

#include <algorithm>
#include <map>

namespace normfsi {

std::vector<std::size_t> support(const Label& label, std::size_t l) {
  std::vector<std::size_t> tapes;
  for (std::size_t i = 0; i < l && i < label.size(); ++i) {
    if (label[i]) {
      tapes.push_back(i);
    }
  }
  return tapes;
}

KAutomaton::KAutomaton(std::vector<Alphabet> alphabets, std::size_t state_count, std::vector<StateId> initial,
                       std::vector<Transition> transitions)
    : alphabets_(std::move(alphabets)),
      state_count_(state_count),
      initial_(std::move(initial)),
      transitions_(std::move(transitions)),
      outgoing_(state_count) {
  if (alphabets_.empty()) {
    throw Error("an automaton needs at least one tape");
  }
  for (StateId q : initial_) {
    if (q >= state_count_) {
      throw Error("initial state " + std::to_string(q) + " out of range");
    }
  }
  for (TransitionId id = 0; id < transitions_.size(); ++id) {
    const Transition& t = transitions_[id];
    if (t.from >= state_count_ || t.to >= state_count_) {
      throw Error("transition " + std::to_string(id) + " has an endpoint outside 0.." +
                  std::to_string(state_count_ == 0 ? 0 : state_count_ - 1));
    }
    if (t.label.size() != alphabets_.size()) {
      throw Error("transition " + std::to_string(id) + " label has " + std::to_string(t.label.size()) +
                  " entries, expected " + std::to_string(alphabets_.size()));
    }
    for (std::size_t tape = 0; tape < t.label.size(); ++tape) {
      if (t.label[tape] && !alphabets_[tape].contains(*t.label[tape])) {
        throw AlphabetMismatch("transition " + std::to_string(id) + " writes symbol " +
                               std::to_string(*t.label[tape]) + " outside tape " + std::to_string(tape) +
                               "'s alphabet");
      }
    }
    outgoing_[t.from].push_back(id);
  }
}

std::string label_to_string(const Label& label, std::size_t inputs) {
  std::string out;
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (i > 0) {
      out += (i == inputs) ? "|" : ",";
    }
    out += label[i] ? std::to_string(*label[i]) : "e";
  }
  return out;
}

namespace {

Label prefix_label(const Label& label, std::size_t l) { return Label(label.begin(), label.begin() + l); }

void check_arity(const KAutomaton& a, std::size_t l) {
  if (l < 1 || l > a.tapes()) {
    throw Error("l = " + std::to_string(l) + " outside 1.." + std::to_string(a.tapes()));
  }
}

}  // namespace

Diagnostics validate_l_deterministic(const KAutomaton& a, std::size_t l) {
  check_arity(a, l);
  Diagnostics d;
  if (a.initial().size() != 1) {
    d.violations.push_back({"initial", std::nullopt, std::nullopt, std::nullopt,
                            "expected exactly one initial state, found " + std::to_string(a.initial().size())});
  }
  for (StateId q = 0; q < a.state_count(); ++q) {
    const auto& out = a.outgoing(q);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const Transition& ti = a.transition(out[i]);
      for (std::size_t j = i + 1; j < out.size(); ++j) {
        const Transition& tj = a.transition(out[j]);
        if (support(ti.label, l) != support(tj.label, l)) {
          d.violations.push_back({"support", q, out[i], out[j],
                                  "state " + std::to_string(q) + ": transitions (" + label_to_string(ti.label, l) +
                                      ") and (" + label_to_string(tj.label, l) + ") have different " +
                                      std::to_string(l) + "-supports"});
        } else if (prefix_label(ti.label, l) == prefix_label(tj.label, l)) {
          d.violations.push_back({"duplicate-label", q, out[i], out[j],
                                  "state " + std::to_string(q) + ": transitions " + std::to_string(out[i]) + " and " +
                                      std::to_string(out[j]) + " share the " + std::to_string(l) + "-label (" +
                                      label_to_string(prefix_label(ti.label, l), l) + ")"});
        }
      }
    }
  }
  return d;
}

Diagnostics validate_l_complete(const KAutomaton& a, std::size_t l) {
  Diagnostics d = validate_l_deterministic(a, l);
  if (!d.ok()) {
    return d;
  }
  for (StateId q = 0; q < a.state_count(); ++q) {
    const auto& out = a.outgoing(q);
    if (out.empty()) {
      d.violations.push_back({"dead-state", q, std::nullopt, std::nullopt,
                              "state " + std::to_string(q) + " has no outgoing transition"});
      continue;
    }
    const auto tapes = support(a.transition(out.front()).label, l);
    std::size_t expected = 1;
    for (std::size_t tape : tapes) {
      expected *= a.alphabet(tape).size();
    }
    if (out.size() == expected) {
      continue;
    }
    // enumerate the tuples over the support and report the missing ones
    std::vector<Symbol> tuple(tapes.size(), 0);
    for (std::size_t n = 0; n < expected; ++n) {
      std::size_t rest = n;
      for (std::size_t i = tapes.size(); i-- > 0;) {
        tuple[i] = static_cast<Symbol>(rest % a.alphabet(tapes[i]).size());
        rest /= a.alphabet(tapes[i]).size();
      }
      bool found = std::any_of(out.begin(), out.end(), [&](TransitionId id) {
        const Label& lab = a.transition(id).label;
        for (std::size_t i = 0; i < tapes.size(); ++i) {
          if (*lab[tapes[i]] != tuple[i]) {
            return false;
          }
        }
        return true;
      });
      if (!found) {
        Label missing(l);
        for (std::size_t i = 0; i < tapes.size(); ++i) {
          missing[tapes[i]] = tuple[i];
        }
        d.violations.push_back({"missing-label", q, std::nullopt, std::nullopt,
                                "state " + std::to_string(q) + " has no transition with " + std::to_string(l) +
                                    "-label (" + label_to_string(missing, l) + ")"});
      }
    }
  }
  return d;
}

Deterministic Deterministic::make(KAutomaton a, std::size_t inputs) {
  Diagnostics d = validate_l_deterministic(a, inputs);
  if (!d.ok()) {
    std::string msg = "automaton is not " + std::to_string(inputs) + "-deterministic:";
    for (const auto& v : d.violations) {
      msg += "\n  " + v.message;
    }
    throw ValidationError(msg);
  }
  Deterministic det(std::move(a), inputs);
  const KAutomaton& aut = det.automaton_;
  det.states_.resize(aut.state_count());
  for (StateId q = 0; q < aut.state_count(); ++q) {
    StateTable& st = det.states_[q];
    const auto& out = aut.outgoing(q);
    if (out.empty()) {
      continue;
    }
    st.tapes = support(aut.transition(out.front()).label, inputs);
    std::size_t cells = 1;
    for (std::size_t tape : st.tapes) {
      cells *= aut.alphabet(tape).size();
    }
    st.table.assign(cells, -1);
    for (TransitionId id : out) {
      const Label& lab = aut.transition(id).label;
      std::size_t index = 0;
      for (std::size_t tape : st.tapes) {
        index = index * aut.alphabet(tape).size() + *lab[tape];
      }
      st.table[index] = id;
    }
  }
  return det;
}

std::optional<TransitionId> Deterministic::lookup(StateId q, std::span<const Symbol> symbols) const {
  const StateTable& st = states_[q];
  if (st.table.empty()) {
    return std::nullopt;
  }
  std::size_t index = 0;
  for (std::size_t i = 0; i < st.tapes.size(); ++i) {
    index = index * automaton_.alphabet(st.tapes[i]).size() + symbols[i];
  }
  const std::int64_t id = st.table[index];
  if (id < 0) {
    return std::nullopt;
  }
  return static_cast<TransitionId>(id);
}

std::string to_string(HaltReason reason) {
  switch (reason) {
    case HaltReason::budget:
      return "budget";
    case HaltReason::input_exhausted:
      return "input-exhausted";
    case HaltReason::stuck:
      return "stuck";
  }
  return "unknown";
}

RunTrace run(const Deterministic& det, std::span<const WordStream> inputs, std::size_t budget, RunOptions options) {
  const KAutomaton& a = det.automaton();
  if (inputs.size() != det.inputs()) {
    throw Error("run needs " + std::to_string(det.inputs()) + " input streams, got " +
                std::to_string(inputs.size()));
  }
  for (std::size_t tape = 0; tape < inputs.size(); ++tape) {
    if (inputs[tape].alphabet().size() > a.alphabet(tape).size()) {
      throw AlphabetMismatch("input stream " + std::to_string(tape) + " (base " +
                             std::to_string(inputs[tape].alphabet().size()) + ") exceeds tape alphabet (base " +
                             std::to_string(a.alphabet(tape).size()) + ")");
    }
  }
  RunTrace trace;
  trace.start = options.start.value_or(det.initial());
  if (trace.start >= a.state_count()) {
    throw Error("start state out of range");
  }
  trace.state_count = a.state_count();
  trace.transition_count = a.transitions().size();
  trace.tape_counts.assign(a.tapes(), 0);
  for (std::size_t tape = det.inputs(); tape < a.tapes(); ++tape) {
    trace.outputs.emplace_back(a.alphabet(tape));
  }
  if (options.record) {
    trace.states.reserve(budget);
    trace.transitions.reserve(budget);
  }

  std::vector<StreamReader> readers;
  readers.reserve(inputs.size());
  for (const auto& s : inputs) {
    readers.emplace_back(s);
  }

  StateId q = trace.start;
  std::vector<Symbol> heads;
  std::size_t fired = 0;
  trace.halt = HaltReason::budget;
  while (fired < budget) {
    const auto& tapes = det.reads(q);
    heads.clear();
    bool exhausted = false;
    for (std::size_t tape : tapes) {
      auto s = readers[tape].peek();
      if (!s) {
        exhausted = true;
        break;
      }
      heads.push_back(*s);
    }
    if (exhausted) {
      trace.halt = HaltReason::input_exhausted;
      break;
    }
    auto id = det.lookup(q, heads);
    if (!id) {
      trace.halt = HaltReason::stuck;
      break;
    }
    const Transition& t = a.transition(*id);
    for (std::size_t tape : tapes) {
      readers[tape].advance();
      ++trace.tape_counts[tape];
    }
    for (std::size_t tape = det.inputs(); tape < a.tapes(); ++tape) {
      if (t.label[tape]) {
        trace.outputs[tape - det.inputs()].push_back(*t.label[tape]);
        ++trace.tape_counts[tape];
      }
    }
    if (options.record) {
      trace.states.push_back(q);
      trace.transitions.push_back(*id);
    }
    q = t.to;
    ++fired;
  }
  trace.final_state = q;
  return trace;
}

std::vector<Rational> state_frequencies(const RunTrace& t) {
  if (t.states.empty()) {
    throw Error("state frequencies of an empty trace are undefined");
  }
  std::vector<std::uint64_t> counts(t.state_count, 0);
  for (StateId q : t.states) {
    ++counts[q];
  }
  std::vector<Rational> freq(t.state_count);
  for (std::size_t q = 0; q < counts.size(); ++q) {
    freq[q] = Rational(counts[q], t.states.size());
  }
  return freq;
}

std::vector<Rational> transition_frequencies(const RunTrace& t) {
  if (t.transitions.empty()) {
    throw Error("transition frequencies of an empty trace are undefined");
  }
  std::vector<std::uint64_t> counts(t.transition_count, 0);
  for (TransitionId id : t.transitions) {
    ++counts[id];
  }
  std::vector<Rational> freq(t.transition_count);
  for (std::size_t id = 0; id < counts.size(); ++id) {
    freq[id] = Rational(counts[id], t.transitions.size());
  }
  return freq;
}

std::vector<std::size_t> starved_tapes(const Deterministic& a, const RunTrace& t) {
  std::vector<bool> read(a.inputs(), false);
  for (std::size_t i = t.transitions.size() / 2; i < t.transitions.size(); ++i) {
    const Label& lab = a.automaton().transition(t.transitions[i]).label;
    for (std::size_t tape = 0; tape < a.inputs(); ++tape) {
      read[tape] = read[tape] || lab[tape].has_value();
    }
  }
  std::vector<std::size_t> starved;
  for (std::size_t tape = 0; tape < read.size(); ++tape) {
    if (!read[tape]) {
      starved.push_back(tape);
    }
  }
  return starved;
}

Normalization normalize(const KAutomaton& a) {
  if (a.tapes() != 2) {
    throw Error("normal form is defined for 2-automata, got " + std::to_string(a.tapes()) + " tapes");
  }
  std::size_t states = a.state_count();
  std::map<std::pair<StateId, Symbol>, StateId> fresh;
  std::vector<Transition> out;
  std::vector<std::optional<TransitionId>> origin;
  for (TransitionId id = 0; id < a.transitions().size(); ++id) {
    const Transition& t = a.transition(id);
    const bool first = t.label[0].has_value();
    const bool second = t.label[1].has_value();
    if (!first && !second) {
      throw Error("transition " + std::to_string(id) + " reads no symbol and has no normal form");
    }
    if (first != second) {
      out.push_back(t);
      origin.emplace_back(id);
      continue;
    }
    auto key = std::make_pair(t.from, *t.label[0]);
    auto it = fresh.find(key);
    if (it == fresh.end()) {
      const auto middle = static_cast<StateId>(states++);
      it = fresh.emplace(key, middle).first;
      out.push_back(Transition{t.from, Label{t.label[0], std::nullopt}, middle});
      origin.emplace_back(std::nullopt);
    }
    out.push_back(Transition{it->second, Label{std::nullopt, t.label[1]}, t.to});
    origin.emplace_back(id);
  }
  return Normalization{KAutomaton(a.alphabets(), states, a.initial(), std::move(out)), a.state_count(),
                       std::move(origin)};
}

std::vector<TransitionId> project_run(const Normalization& n, std::span<const TransitionId> run) {
  std::vector<TransitionId> projected;
  for (TransitionId id : run) {
    if (auto o = n.origin.at(id)) {
      projected.push_back(*o);
    }
  }
  return projected;
}

}  // namespace normfsi
