#include "normfsi/markov.hpp"

#include "normfsi/error.hpp"

#include <algorithm>
#include <map>

namespace normfsi {

Rational StochasticMatrix::row_sum(std::size_t p) const {
  Rational sum = 0;
  for (std::size_t q = 0; q < n_; ++q) {
    sum += at(p, q);
  }
  return sum;
}

std::vector<Rational> StochasticMatrix::left_multiply(std::span<const Rational> pi) const {
  if (pi.size() != n_) {
    throw Error("vector dimension does not match the matrix");
  }
  std::vector<Rational> out(n_);
  for (std::size_t p = 0; p < n_; ++p) {
    if (pi[p] == 0) {
      continue;
    }
    for (std::size_t q = 0; q < n_; ++q) {
      if (at(p, q) != 0) {
        out[q] += pi[p] * at(p, q);
      }
    }
  }
  return out;
}

StochasticMatrix transition_matrix(const KAutomaton& a) {
  if (a.tapes() < 2) {
    throw Error("transition_matrix needs at least two tapes, got " + std::to_string(a.tapes()));
  }
  const Rational wa(1, a.alphabet(0).size());
  const Rational wb(1, a.alphabet(1).size());
  StochasticMatrix m(a.state_count());
  for (TransitionId id = 0; id < a.transitions().size(); ++id) {
    const Transition& t = a.transition(id);
    const bool x = t.label[0].has_value();
    const bool y = t.label[1].has_value();
    if (!x && !y) {
      throw Error("transition " + std::to_string(id) + " reads no input and has no weight");
    }
    m.at(t.from, t.to) += x && y ? wa * wb : (x ? wa : wb);
  }
  return m;
}

namespace {

std::vector<std::vector<StateId>> successors(const KAutomaton& a, bool reverse) {
  std::vector<std::vector<StateId>> adj(a.state_count());
  for (const auto& t : a.transitions()) {
    if (reverse) {
      adj[t.to].push_back(t.from);
    } else {
      adj[t.from].push_back(t.to);
    }
  }
  return adj;
}

}  // namespace

std::vector<std::vector<StateId>> strongly_connected_components(const KAutomaton& a) {
  // Kosaraju with explicit stacks
  const std::size_t n = a.state_count();
  const auto fwd = successors(a, false);
  const auto bwd = successors(a, true);
  std::vector<bool> seen(n, false);
  std::vector<StateId> order;
  order.reserve(n);
  for (StateId root = 0; root < n; ++root) {
    if (seen[root]) {
      continue;
    }
    std::vector<std::pair<StateId, std::size_t>> stack{{root, 0}};
    seen[root] = true;
    while (!stack.empty()) {
      auto& [q, next] = stack.back();
      if (next < fwd[q].size()) {
        const StateId r = fwd[q][next++];
        if (!seen[r]) {
          seen[r] = true;
          stack.emplace_back(r, 0);
        }
      } else {
        order.push_back(q);
        stack.pop_back();
      }
    }
  }
  std::vector<std::int64_t> component(n, -1);
  std::vector<std::vector<StateId>> components;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (component[*it] >= 0) {
      continue;
    }
    const auto id = static_cast<std::int64_t>(components.size());
    components.emplace_back();
    std::vector<StateId> stack{*it};
    component[*it] = id;
    while (!stack.empty()) {
      const StateId q = stack.back();
      stack.pop_back();
      components.back().push_back(q);
      for (StateId r : bwd[q]) {
        if (component[r] < 0) {
          component[r] = id;
          stack.push_back(r);
        }
      }
    }
  }
  for (auto& c : components) {
    std::sort(c.begin(), c.end());
  }
  std::sort(components.begin(), components.end());
  return components;
}

bool is_strongly_connected(const KAutomaton& a) { return strongly_connected_components(a).size() <= 1; }

std::vector<std::vector<StateId>> final_components(const KAutomaton& a) {
  std::vector<std::vector<StateId>> finals;
  std::vector<std::size_t> component(a.state_count());
  const auto components = strongly_connected_components(a);
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (StateId q : components[c]) {
      component[q] = c;
    }
  }
  std::vector<bool> leaves(components.size(), false);
  for (const auto& t : a.transitions()) {
    if (component[t.from] != component[t.to]) {
      leaves[component[t.from]] = true;
    }
  }
  for (std::size_t c = 0; c < components.size(); ++c) {
    if (!leaves[c]) {
      finals.push_back(components[c]);
    }
  }
  return finals;
}

SubAutomaton restrict_to(const KAutomaton& a, std::span<const StateId> states) {
  std::vector<StateId> kept(states.begin(), states.end());
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  if (kept.empty()) {
    throw Error("cannot restrict an automaton to no states");
  }
  std::vector<std::int64_t> renumber(a.state_count(), -1);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    renumber.at(kept[i]) = static_cast<std::int64_t>(i);
  }
  std::vector<Transition> transitions;
  for (const auto& t : a.transitions()) {
    if (renumber[t.from] >= 0 && renumber[t.to] >= 0) {
      transitions.push_back(
          Transition{static_cast<StateId>(renumber[t.from]), t.label, static_cast<StateId>(renumber[t.to])});
    }
  }
  std::vector<StateId> initial;
  for (StateId q : a.initial()) {
    if (renumber[q] >= 0) {
      initial.push_back(static_cast<StateId>(renumber[q]));
    }
  }
  if (initial.empty()) {
    initial.push_back(0);
  }
  return SubAutomaton{KAutomaton(a.alphabets(), kept.size(), std::move(initial), std::move(transitions)),
                      std::move(kept)};
}

SubAutomaton final_scc(const KAutomaton& a) {
  std::vector<bool> reachable(a.state_count(), false);
  const auto fwd = successors(a, false);
  std::vector<StateId> stack(a.initial().begin(), a.initial().end());
  for (StateId q : stack) {
    reachable[q] = true;
  }
  while (!stack.empty()) {
    const StateId q = stack.back();
    stack.pop_back();
    for (StateId r : fwd[q]) {
      if (!reachable[r]) {
        reachable[r] = true;
        stack.push_back(r);
      }
    }
  }
  for (const auto& c : final_components(a)) {
    if (reachable[c.front()]) {
      return restrict_to(a, c);
    }
  }
  throw Error("no final component is reachable from the initial state");
}

std::vector<Rational> solve_left(std::vector<Rational> a, std::size_t n, std::vector<Rational> b) {
  // x A = b  <=>  A^T x^T = b^T; eliminate on the transpose
  std::vector<Rational> m(n * (n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m[i * (n + 1) + j] = a[j * n + i];
    }
    m[i * (n + 1) + n] = b[i];
  }
  const std::size_t w = n + 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot * w + col] == 0) {
      ++pivot;
    }
    if (pivot == n) {
      throw Error("singular linear system");
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < w; ++j) {
        std::swap(m[pivot * w + j], m[col * w + j]);
      }
    }
    const Rational inv = 1 / m[col * w + col];
    for (std::size_t j = col; j < w; ++j) {
      m[col * w + j] *= inv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || m[i * w + col] == 0) {
        continue;
      }
      const Rational f = m[i * w + col];
      for (std::size_t j = col; j < w; ++j) {
        m[i * w + j] -= f * m[col * w + j];
      }
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = m[i * w + n];
  }
  return x;
}

std::vector<Rational> stationary(const KAutomaton& a) {
  const Diagnostics d = validate_l_complete(a, 2);
  if (!d.ok()) {
    throw ValidationError("stationary distribution needs a 2-complete automaton: " + d.violations.front().message);
  }
  if (!is_strongly_connected(a)) {
    throw ValidationError("automaton is not strongly connected; restrict it to a final component first");
  }
  const StochasticMatrix m = transition_matrix(a);
  const std::size_t n = m.dimension();
  // pi (M - I) = 0 with the last equation replaced by sum(pi) = 1
  std::vector<Rational> system(n * n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      system[p * n + q] = q + 1 == n ? Rational(1) : m.at(p, q) - (p == q ? 1 : 0);
    }
  }
  std::vector<Rational> rhs(n, 0);
  rhs[n - 1] = 1;
  return solve_left(std::move(system), n, std::move(rhs));
}

bool is_stationary(const StochasticMatrix& m, std::span<const Rational> pi) {
  Rational sum = 0;
  for (const auto& p : pi) {
    sum += p;
  }
  if (sum != 1) {
    return false;
  }
  const auto next = m.left_multiply(pi);
  return std::equal(next.begin(), next.end(), pi.begin(), pi.end());
}

BlockProduct block_product(const KAutomaton& a, std::size_t k, std::size_t l, std::size_t max_states) {
  if (a.tapes() != 2) {
    throw Error("block_product needs a 2-automaton");
  }
  if (k < 1 || l < 1) {
    throw Error("block_product needs k, l >= 1");
  }
  const Diagnostics d = validate_l_deterministic(a, 2);
  if (!d.ok()) {
    throw ValidationError("block_product needs a 2-deterministic automaton: " + d.violations.front().message);
  }
  for (const auto& t : a.transitions()) {
    if (t.label[0].has_value() == t.label[1].has_value()) {
      throw ValidationError("block_product needs the normal form (one symbol per transition); normalize first");
    }
  }
  const std::uint64_t na = a.alphabet(0).size();
  const std::uint64_t nb = a.alphabet(1).size();
  // |Q| * (sum_{i<k} |A|^i + |A|^k * sum_{j<=l} |B|^j), checked against the budget
  long double count = 0;
  long double pa = 1;
  for (std::size_t i = 0; i < k; ++i, pa *= na) {
    count += pa;
  }
  long double pb = 1;
  for (std::size_t j = 0; j <= l; ++j, pb *= nb) {
    count += pa * pb;
  }
  count *= static_cast<long double>(a.state_count());
  if (count > static_cast<long double>(max_states)) {
    throw BudgetExceeded("block product too large", std::to_string(static_cast<std::uint64_t>(count)), max_states);
  }

  BlockProduct product{KAutomaton(a.alphabets(), 0, {}, {}), {}, {}};
  std::map<std::tuple<StateId, std::vector<Symbol>, std::vector<Symbol>>, StateId> ids;
  auto add = [&](StateId q, std::vector<Symbol> u, std::vector<Symbol> v) {
    const auto id = static_cast<StateId>(product.states.size());
    ids.emplace(std::make_tuple(q, u, v), id);
    if (u.size() == k && v.size() == l) {
      product.recurrent.push_back(id);
    }
    product.states.push_back(BlockState{q, std::move(u), std::move(v)});
  };
  auto words = [](std::size_t length, std::uint64_t base) {
    std::vector<std::vector<Symbol>> out{{}};
    for (std::size_t i = 0; i < length; ++i) {
      std::vector<std::vector<Symbol>> longer;
      for (const auto& w : out) {
        for (Symbol s = 0; s < base; ++s) {
          longer.push_back(w);
          longer.back().push_back(s);
        }
      }
      out = std::move(longer);
    }
    return out;
  };
  for (StateId q = 0; q < a.state_count(); ++q) {
    for (std::size_t i = 0; i < k; ++i) {
      for (auto& u : words(i, na)) {
        add(q, std::move(u), {});
      }
    }
    for (const auto& u : words(k, na)) {
      for (std::size_t j = 0; j <= l; ++j) {
        for (auto& v : words(j, nb)) {
          add(q, u, std::move(v));
        }
      }
    }
  }

  std::vector<Transition> transitions;
  for (StateId id = 0; id < product.states.size(); ++id) {
    const BlockState& s = product.states[id];
    if (s.u.size() < k) {
      for (Symbol a0 = 0; a0 < na; ++a0) {
        auto u = s.u;
        u.push_back(a0);
        transitions.push_back({id, Label{a0, std::nullopt}, ids.at({s.q, u, s.v})});
      }
    } else if (s.v.size() < l) {
      for (Symbol b0 = 0; b0 < nb; ++b0) {
        auto v = s.v;
        v.push_back(b0);
        transitions.push_back({id, Label{std::nullopt, b0}, ids.at({s.q, s.u, v})});
      }
    } else {
      for (TransitionId tid : a.outgoing(s.q)) {
        const Transition& t = a.transition(tid);
        if (t.label[0]) {
          if (*t.label[0] != s.u.front()) {
            continue;
          }
          for (Symbol a0 = 0; a0 < na; ++a0) {
            std::vector<Symbol> u(s.u.begin() + 1, s.u.end());
            u.push_back(a0);
            transitions.push_back({id, Label{a0, std::nullopt}, ids.at({t.to, u, s.v})});
          }
        } else {
          if (*t.label[1] != s.v.front()) {
            continue;
          }
          for (Symbol b0 = 0; b0 < nb; ++b0) {
            std::vector<Symbol> v(s.v.begin() + 1, s.v.end());
            v.push_back(b0);
            transitions.push_back({id, Label{std::nullopt, b0}, ids.at({t.to, s.u, v})});
          }
        }
      }
    }
  }
  const StateId start = ids.at({a.initial().front(), {}, {}});
  product.automaton = KAutomaton(a.alphabets(), product.states.size(), {start}, std::move(transitions));
  return product;
}

}  // namespace normfsi
