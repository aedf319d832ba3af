#include "normfsi/shuffler_enum.hpp"

#include "normfsi/error.hpp"

#include <limits>

namespace normfsi {

namespace {

constexpr std::uint64_t saturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > saturated / a) {
    return saturated;
  }
  return a * b;
}

}  // namespace

ShufflerEnumeration::ShufflerEnumeration(std::uint32_t base) : base_(Alphabet(base).size()) {}

std::uint64_t ShufflerEnumeration::count_with_states(std::size_t m) const {
  std::uint64_t per_state = 2;
  for (std::uint32_t a = 0; a < base_; ++a) {
    per_state = mul_sat(per_state, m);
  }
  std::uint64_t total = 1;
  for (std::size_t p = 0; p < m; ++p) {
    total = mul_sat(total, per_state);
  }
  return total;
}

std::vector<std::uint32_t> ShufflerEnumeration::code(std::uint64_t index) const {
  if (index == 0) {
    throw Error("shuffler indices start at 1");
  }
  std::uint64_t k = index - 1;
  std::size_t m = 1;
  for (;; ++m) {
    const std::uint64_t c = count_with_states(m);
    if (k < c) {
      break;
    }
    k -= c;
  }
  const std::size_t width = m * (1 + base_);
  std::vector<std::uint32_t> digits(width);
  for (std::size_t i = width; i-- > 0;) {
    const std::uint64_t radix = (i % (1 + base_) == 0) ? 2 : m;
    digits[i] = static_cast<std::uint32_t>(k % radix);
    k /= radix;
  }
  return digits;
}

KAutomaton ShufflerEnumeration::from_code(std::size_t m, const std::vector<std::uint32_t>& code) const {
  std::vector<Transition> transitions;
  transitions.reserve(m * base_);
  for (std::size_t p = 0; p < m; ++p) {
    const std::uint32_t type = code[p * (1 + base_)];
    for (Symbol a = 0; a < base_; ++a) {
      const auto to = static_cast<StateId>(code[p * (1 + base_) + 1 + a]);
      Label label = type == 0 ? Label{a, std::nullopt, a} : Label{std::nullopt, a, a};
      transitions.push_back(Transition{static_cast<StateId>(p), std::move(label), to});
    }
  }
  return KAutomaton(std::vector<Alphabet>(3, Alphabet(base_)), m, {0}, std::move(transitions));
}

KAutomaton ShufflerEnumeration::decode(std::uint64_t index) const {
  const auto digits = code(index);
  return from_code(digits.size() / (1 + base_), digits);
}

std::uint64_t ShufflerEnumeration::encode(const KAutomaton& s) const {
  const std::size_t m = s.state_count();
  if (s.tapes() != 3 || s.initial() != std::vector<StateId>{0} || s.transitions().size() != m * base_) {
    throw Error("machine is not in canonical shuffler form");
  }
  std::uint64_t k = 0;
  for (std::size_t p = 0; p < m; ++p) {
    const Transition& first = s.transition(static_cast<TransitionId>(p * base_));
    const std::uint32_t type = first.label[0] ? 0 : 1;
    k = k * 2 + type;
    for (Symbol a = 0; a < base_; ++a) {
      const Transition& t = s.transition(static_cast<TransitionId>(p * base_ + a));
      const Label expected = type == 0 ? Label{a, std::nullopt, a} : Label{std::nullopt, a, a};
      if (t.from != p || t.label != expected) {
        throw Error("machine is not in canonical shuffler form");
      }
      k = k * m + t.to;
    }
  }
  std::uint64_t index = 1 + k;
  for (std::size_t smaller = 1; smaller < m; ++smaller) {
    index += count_with_states(smaller);
  }
  return index;
}

std::vector<KAutomaton> ShufflerEnumeration::range(std::uint64_t from, std::size_t count) const {
  std::vector<KAutomaton> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(decode(from + i));
  }
  return out;
}

}  // namespace normfsi
