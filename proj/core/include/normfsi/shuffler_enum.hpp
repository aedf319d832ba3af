#pragma once

#include "normfsi/automaton.hpp"

#include <cstdint>
#include <vector>

namespace normfsi {

/// Canonical enumeration of shufflers over {0..b-1}.
///
/// An m-state shuffler is coded as [type_0, t_0(0), ..., t_0(b-1), type_1, ...]
/// where type_p is 0 for type I (reads x) and 1 for type II (reads y), and
/// t_p(a) is the target of the transition reading a. Codes are ordered by m
/// first, then lexicographically, and indexed from 1. State 0 is initial;
/// every coded machine is 2-complete. S_1 copies x.
class ShufflerEnumeration {
 public:
  explicit ShufflerEnumeration(std::uint32_t base);

  std::uint32_t base() const noexcept { return base_; }

  /// (2 m^b)^m, saturated at 2^64 - 1.
  std::uint64_t count_with_states(std::size_t m) const;

  /// Machine with 1-based index i.
  KAutomaton decode(std::uint64_t index) const;

  /// Code vector of the machine with 1-based index i.
  std::vector<std::uint32_t> code(std::uint64_t index) const;

  /// Inverse of decode; throws Error for machines outside the canonical
  /// shape (initial state not 0, transitions not in code order).
  std::uint64_t encode(const KAutomaton& shuffler) const;

  /// Machines with indices from, from+1, ..., from+count-1.
  std::vector<KAutomaton> range(std::uint64_t from, std::size_t count) const;

 private:
  KAutomaton from_code(std::size_t m, const std::vector<std::uint32_t>& code) const;

  std::uint32_t base_;
};

}  // namespace normfsi
