#include "normfsi/measure.hpp"

#include "normfsi/error.hpp"
#include "normfsi/stream.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <thread>
#include <unordered_map>

namespace normfsi {

Rational ExactMeasure::value() const { return Rational(count) / Rational(power(base, exponent)); }

ExactMeasure CylinderPair::measure() const {
  return ExactMeasure{1, u.alphabet().size(), static_cast<std::uint64_t>(u.size() + v.size())};
}

CylinderPair CylinderPair::extend(bool extend_u, Symbol c) const {
  CylinderPair child = *this;
  (extend_u ? child.u : child.v).push_back(c);
  return child;
}

std::size_t MeasureProblem::horizon() const {
  std::size_t l = std::max(cylinder.u.size(), cylinder.v.size());
  for (const auto& c : checks) {
    l = std::max(l, c.length);
  }
  return l;
}

bool within_epsilon(std::uint64_t occurrences, std::size_t n, std::size_t r, std::uint32_t base,
                    const Rational& epsilon) {
  const BigInt scale = power(base, r);
  BigInt deviation = BigInt(occurrences) * scale - BigInt(n);
  if (deviation < 0) {
    deviation = -deviation;
  }
  return deviation * denominator(epsilon) < numerator(epsilon) * BigInt(n) * scale;
}

Cost enumeration_cost(const MeasureProblem& p) {
  std::size_t machines = 0;
  for (const auto& c : p.checks) {
    machines = std::max(machines, c.machines);
  }
  const std::size_t l = p.horizon();
  const std::size_t free = 2 * l - p.cylinder.u.size() - p.cylinder.v.size();
  return Cost{power(p.base, free) * std::max<std::size_t>(machines, 1)};
}

namespace {

__extension__ using u128 = unsigned __int128;

constexpr std::size_t memo_limit = std::size_t{1} << 20;

struct MachineInfo {
  const Deterministic* det = nullptr;
  std::size_t horizon = 0;
  std::size_t max_block = 0;
  std::vector<bool> reads_x;  // per state
  // reach[tape][k * states + q]: most symbols of the tape readable in k steps from q
  std::array<std::vector<std::uint32_t>, 2> reach;
};

struct Live {
  StateId q = 0;
  std::uint32_t px = 0;
  std::uint32_t py = 0;
  std::uint64_t window = 0;  // last min(outputs, max_block - 1) symbols as a base-b rank
  std::vector<std::uint32_t> counts;
};

struct Undo {
  StateId q;
  std::uint32_t px;
  std::uint32_t py;
  std::uint64_t window;
  std::array<std::uint32_t, 16> touched;
  std::size_t n_touched = 0;
};

// per (check, block length): accepted[occ] for occ in 0..length
struct CheckTable {
  const BlockCheck* check = nullptr;
  std::vector<std::vector<bool>> accepted;  // index r - 1
  std::vector<std::pair<std::size_t, std::uint64_t>> blocks;  // (length, rank)
};

class Kernel {
 public:
  Kernel(const MeasureProblem& p, const std::vector<MachineInfo>& machines,
         const std::vector<std::vector<CheckTable>>& by_round, std::size_t horizon, std::size_t max_round,
         const std::vector<std::size_t>& offsets)
      : base_(p.base),
        machines_(machines),
        by_round_(by_round),
        horizon_(horizon),
        max_round_(max_round),
        offsets_(offsets) {
    full_ = 1;
    for (std::size_t i = 0; i < 2 * horizon_; ++i) {
      full_ *= base_;
    }
    active_.assign(max_round_, 0);
    for (std::size_t r = 0; r < max_round_; ++r) {
      for (const auto& m : machines_) {
        active_[r] += m.horizon > r ? 1 : 0;
      }
    }
    pow_.assign(8, 1);
    for (std::size_t i = 1; i < pow_.size(); ++i) {
      pow_[i] = pow_[i - 1] * base_;
    }
  }

  // number of grid pairs in A^L x A^L extending (u, v) that pass every check
  BigInt count(const FiniteWord& u, const FiniteWord& v) {
    xs_ = u.symbols();
    ys_ = v.symbols();
    live_.assign(machines_.size(), Live{});
    for (std::size_t i = 0; i < machines_.size(); ++i) {
      live_[i].q = machines_[i].det->initial();
      live_[i].counts.assign(offsets_[machines_[i].max_block], 0);
    }
    memo_.clear();
    const u128 w = max_round_ == 0 ? full_ : at_round(0);
    BigInt scaled = 0;
    // BigInt from u128 in two halves
    scaled = BigInt(static_cast<std::uint64_t>(w >> 64));
    scaled <<= 64;
    scaled += BigInt(static_cast<std::uint64_t>(w));
    return scaled / power(base_, u.size() + v.size());
  }

 private:
  u128 at_round(std::size_t r) {
    std::string key = make_key(r);
    if (auto it = memo_.find(key); it != memo_.end()) {
      return it->second;
    }
    const u128 value = visit(r, 0);
    if (memo_.size() >= memo_limit) {
      memo_.clear();
    }
    memo_.emplace(std::move(key), value);
    return value;
  }

  u128 visit(std::size_t r, std::size_t i) {
    if (i == active_[r]) {
      if (!checks_pass(r + 1)) {
        return 0;
      }
      if (r + 1 == max_round_) {
        return full_;
      }
      return at_round(r + 1);
    }
    Live& m = live_[i];
    const bool from_x = machines_[i].reads_x[m.q];
    const std::uint32_t pos = from_x ? m.px : m.py;
    std::vector<Symbol>& tape = from_x ? xs_ : ys_;
    if (pos < tape.size()) {
      const Undo undo = fire(i, tape[pos]);
      const u128 value = visit(r, i + 1);
      revert(i, undo);
      return value;
    }
    u128 sum = 0;
    for (Symbol c = 0; c < base_; ++c) {
      tape.push_back(c);
      const Undo undo = fire(i, c);
      sum += visit(r, i + 1);
      revert(i, undo);
      tape.pop_back();
    }
    return sum / base_;
  }

  Undo fire(std::size_t i, Symbol c) {
    Live& m = live_[i];
    const MachineInfo& info = machines_[i];
    Undo undo{m.q, m.px, m.py, m.window, {}, 0};
    const bool from_x = info.reads_x[m.q];
    (from_x ? m.px : m.py) += 1;
    const std::size_t produced = m.px + m.py;  // outputs so far, including c
    const Symbol read[1] = {c};
    m.q = info.det->automaton().transition(*info.det->lookup(m.q, read)).to;
    if (info.max_block == 0) {
      return undo;
    }
    // blocks ending at this output: suffixes of (window, c) of length 1..max_block
    const std::size_t have = std::min<std::size_t>(produced - 1, info.max_block - 1);
    for (std::size_t len = 1; len <= have + 1; ++len) {
      const std::uint64_t rank = (m.window % pow_[len - 1]) * base_ + c;
      const std::uint32_t index = static_cast<std::uint32_t>(offsets_[len - 1] + rank);
      ++m.counts[index];
      undo.touched[undo.n_touched++] = index;
    }
    if (info.max_block > 1) {
      m.window = (m.window * base_ + c) % pow_[info.max_block - 1];
    }
    return undo;
  }

  void revert(std::size_t i, const Undo& undo) {
    Live& m = live_[i];
    m.q = undo.q;
    m.px = undo.px;
    m.py = undo.py;
    m.window = undo.window;
    for (std::size_t k = 0; k < undo.n_touched; ++k) {
      --m.counts[undo.touched[k]];
    }
  }

  bool checks_pass(std::size_t length) const {
    for (const CheckTable& table : by_round_[length]) {
      for (std::size_t i = 0; i < table.check->machines; ++i) {
        const Live& m = live_[i];
        for (const auto& [len, rank] : table.blocks) {
          if (!table.accepted[len - 1][m.counts[offsets_[len - 1] + rank]]) {
            return false;
          }
        }
      }
    }
    return true;
  }

  std::string make_key(std::size_t r) const {
    std::string key;
    auto put = [&key](std::uint64_t v) { key.append(reinterpret_cast<const char*>(&v), sizeof v); };
    put(r);
    for (std::size_t i = 0; i < active_[r]; ++i) {
      const Live& m = live_[i];
      put(m.q);
      put(m.window);
      for (std::uint32_t c : m.counts) {
        key.append(reinterpret_cast<const char*>(&c), sizeof c);
      }
      // only the known symbols this machine can still reach matter
      const MachineInfo& info = machines_[i];
      const std::size_t states = info.reads_x.size();
      const std::size_t left = info.horizon - r;
      const std::size_t rx = info.reach[0][left * states + m.q];
      const std::size_t ry = info.reach[1][left * states + m.q];
      key.push_back('|');
      for (std::size_t k = m.px; k < xs_.size() && k < m.px + rx; ++k) {
        key.push_back(static_cast<char>(xs_[k]));
      }
      key.push_back('|');
      for (std::size_t k = m.py; k < ys_.size() && k < m.py + ry; ++k) {
        key.push_back(static_cast<char>(ys_[k]));
      }
      key.push_back(';');
    }
    return key;
  }

  std::uint32_t base_;
  const std::vector<MachineInfo>& machines_;
  const std::vector<std::vector<CheckTable>>& by_round_;
  std::size_t horizon_;
  std::size_t max_round_;
  const std::vector<std::size_t>& offsets_;
  std::vector<std::size_t> active_;
  std::vector<std::uint64_t> pow_;
  u128 full_ = 1;
  std::vector<Symbol> xs_;
  std::vector<Symbol> ys_;
  std::vector<Live> live_;
  std::unordered_map<std::string, u128> memo_;
};

std::vector<FiniteWord> all_words(std::size_t length, Alphabet alphabet) {
  std::vector<FiniteWord> out;
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < length; ++i) {
    n *= alphabet.size();
  }
  for (std::uint64_t k = 0; k < n; ++k) {
    out.push_back(block_from_index(k, length, alphabet));
  }
  return out;
}

}  // namespace

ExactMeasure measure(const MeasureProblem& p, const MeasureOptions& options) {
  const Alphabet alphabet(p.base);
  if (p.cylinder.u.alphabet() != alphabet || p.cylinder.v.alphabet() != alphabet) {
    throw AlphabetMismatch("cylinder alphabet differs from the problem base");
  }
  const Cost cost = enumeration_cost(p);
  if (!cost.within(options.budget)) {
    throw BudgetExceeded("measure enumeration of " + cost.size.str() + " exceeds the budget of " +
                             std::to_string(options.budget),
                         cost.size.str(), options.budget);
  }
  const std::size_t horizon = p.horizon();
  if (2.0 * static_cast<double>(horizon) * std::log2(static_cast<double>(p.base)) > 126.0) {
    throw Error("extension length " + std::to_string(horizon) + " too large for the exact kernel");
  }

  // machines and per-machine horizons
  std::size_t used = 0;
  std::size_t max_round = 0;
  for (const auto& c : p.checks) {
    if (c.machines > p.shufflers.size()) {
      throw Error("check needs " + std::to_string(c.machines) + " shufflers, only " +
                  std::to_string(p.shufflers.size()) + " given");
    }
    if (c.length == 0) {
      throw Error("checkpoint length must be positive");
    }
    used = std::max(used, c.machines);
    if (c.machines > 0) {
      max_round = std::max(max_round, c.length);
    }
  }
  std::vector<MachineInfo> machines(used);
  for (std::size_t i = 0; i < used; ++i) {
    const Deterministic& det = p.shufflers[i];
    const KAutomaton& a = det.automaton();
    if (a.tapes() != 3 || det.inputs() != 2 || a.alphabet(0) != alphabet) {
      throw ValidationError("measure needs shufflers over the problem alphabet");
    }
    machines[i].det = &det;
    machines[i].reads_x.resize(a.state_count());
    for (StateId q = 0; q < a.state_count(); ++q) {
      const auto& reads = det.reads(q);
      if (reads.size() != 1) {
        throw ValidationError("state " + std::to_string(q) + " of shuffler " + std::to_string(i + 1) +
                              " does not read exactly one tape");
      }
      machines[i].reads_x[q] = reads.front() == 0;
    }
  }

  std::size_t max_block = 0;
  std::vector<std::vector<CheckTable>> by_round(max_round + 1);
  for (const auto& c : p.checks) {
    if (c.machines == 0) {
      continue;
    }
    CheckTable table;
    table.check = &c;
    if (c.blocks.empty()) {
      if (c.max_block == 0) {
        throw Error("max block length must be positive");
      }
      for (std::size_t len = 1; len <= c.max_block; ++len) {
        const std::uint64_t n = power(p.base, len).convert_to<std::uint64_t>();
        for (std::uint64_t k = 0; k < n; ++k) {
          table.blocks.emplace_back(len, k);
        }
      }
    } else {
      for (const auto& g : c.blocks) {
        if (g.empty() || g.alphabet() != alphabet) {
          throw Error("check blocks must be nonempty words over the problem alphabet");
        }
        table.blocks.emplace_back(g.size(), block_index(g));
      }
    }
    std::size_t longest = 0;
    for (const auto& b : table.blocks) {
      longest = std::max(longest, b.first);
    }
    if (longest > 7) {
      throw Error("block lengths above 7 are not supported by the measure kernel");
    }
    table.accepted.resize(longest);
    for (std::size_t len = 1; len <= longest; ++len) {
      for (std::uint64_t occ = 0; occ <= c.length; ++occ) {
        table.accepted[len - 1].push_back(within_epsilon(occ, c.length, len, p.base, c.epsilon));
      }
    }
    for (std::size_t i = 0; i < c.machines; ++i) {
      machines[i].horizon = std::max(machines[i].horizon, c.length);
      machines[i].max_block = std::max(machines[i].max_block, longest);
    }
    max_block = std::max(max_block, longest);
    by_round[c.length].push_back(std::move(table));
  }
  for (auto& info : machines) {
    const KAutomaton& a = info.det->automaton();
    const std::size_t states = a.state_count();
    for (int tape = 0; tape < 2; ++tape) {
      auto& reach = info.reach[tape];
      reach.assign((info.horizon + 1) * states, 0);
      for (std::size_t k = 1; k <= info.horizon; ++k) {
        for (StateId q = 0; q < states; ++q) {
          std::uint32_t best = 0;
          for (TransitionId id : a.outgoing(q)) {
            best = std::max(best, reach[(k - 1) * states + a.transition(id).to]);
          }
          const bool reads = (tape == 0) == info.reads_x[q];
          reach[k * states + q] = best + (reads ? 1 : 0);
        }
      }
    }
  }
  std::vector<std::size_t> offsets(max_block + 1, 0);
  for (std::size_t len = 1; len <= max_block; ++len) {
    offsets[len] = offsets[len - 1] + power(p.base, len).convert_to<std::size_t>();
  }

  const std::uint64_t exponent = 2 * horizon;
  const auto& u = p.cylinder.u;
  const auto& v = p.cylinder.v;
  const unsigned workers = std::max(1u, options.workers);

  // split on leading free digits of x (or of y when x is fully fixed)
  std::size_t depth = 0;
  if (workers > 1) {
    std::uint64_t jobs = 1;
    const bool split_x = u.size() < horizon;
    const std::size_t room = split_x ? horizon - u.size() : horizon - v.size();
    while (jobs < 4ull * workers && depth < room) {
      jobs *= p.base;
      ++depth;
    }
    if (!split_x && room == 0) {
      depth = 0;
    }
  }
  if (depth == 0) {
    Kernel kernel(p, machines, by_round, horizon, max_round, offsets);
    return ExactMeasure{kernel.count(u, v), p.base, exponent};
  }
  const bool split_x = u.size() < horizon;
  const auto prefixes = all_words(depth, alphabet);
  std::vector<BigInt> partial(prefixes.size());
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      Kernel kernel(p, machines, by_round, horizon, max_round, offsets);
      for (std::size_t j = w; j < prefixes.size(); j += workers) {
        FiniteWord uu = u;
        FiniteWord vv = v;
        (split_x ? uu : vv).append(prefixes[j]);
        partial[j] = kernel.count(uu, vv);
      }
    });
  }
  for (auto& t : pool) {
    t.join();
  }
  BigInt total = 0;
  for (const auto& c : partial) {
    total += c;
  }
  return ExactMeasure{total, p.base, exponent};
}

bool membership_in_E(const Deterministic& shuffler, const Rational& epsilon, const FiniteWord& gamma,
                     std::size_t n, const FiniteWord& x_ext, const FiniteWord& y_ext) {
  if (x_ext.size() < n || y_ext.size() < n) {
    throw Error("membership_in_E needs extensions of length at least n");
  }
  if (gamma.empty()) {
    throw Error("empty block");
  }
  const std::array inputs{WordStream::explicit_prefix(x_ext), WordStream::explicit_prefix(y_ext)};
  const RunTrace t = run(shuffler, inputs, n, RunOptions{std::nullopt, false});
  const FiniteWord& z = t.outputs.at(0);
  return within_epsilon(occ(z, gamma), n, gamma.size(), z.alphabet().size(), epsilon);
}

}  // namespace normfsi
