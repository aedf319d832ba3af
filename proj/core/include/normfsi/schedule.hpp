#pragma once

#include "normfsi/rational.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace normfsi {

/// floor(log_b n), exactly.
std::size_t floor_log(std::uint64_t n, std::uint32_t b);

/// l_n = max(1, floor(log_b n / 3)); with natural = true the natural
/// logarithm is used instead.
std::size_t paper_ell(std::uint64_t n, std::uint32_t b, bool natural = false);

/// Smallest dyadic p/2^64 >= 2 sqrt(ln n * log_b n / n).
Rational paper_epsilon(std::uint64_t n, std::uint32_t b);

/// Whether eps_n >= 6/floor(n/l_n), evaluated with 100 significant digits.
bool start_condition(std::uint64_t n, std::uint32_t b, bool natural_ell = false);

/// Smallest n with start_condition(n).
std::uint64_t compute_n_start(std::uint32_t b, bool natural_ell = false);

/// ceil(log_b n_start).
std::size_t compute_n0(std::uint32_t b, bool natural_ell = false);

/// Parameters of the construction: checkpoint lengths s_0 < s_1 < ... and,
/// per checkpoint, the number of shufflers t, the block length l and epsilon.
/// Step n of the construction adds the checkpoint s_{n+1}.
class Schedule {
 public:
  enum class Mode { paper, relaxed };

  /// s_j = b^(n0 + j), t = s_j, l = l_{s_j}, epsilon = eps_{s_j}.
  static Schedule paper(std::uint32_t base, bool natural_ell = false);

  /// Fixed t, l, epsilon; s_j from `checkpoints`, or 2(j+1) when empty.
  static Schedule relaxed(std::uint32_t base, std::vector<std::uint64_t> checkpoints, std::size_t t, std::size_t l,
                          Rational epsilon);

  /// {"base", "checkpoints", "t", "ell", "epsilon": "p/q"}; all optional,
  /// defaulting to the relaxed schedule s_j = 2(j+1), t = 2, l = 1, 9/20.
  static Schedule from_json(const nlohmann::json& doc);

  Mode mode() const noexcept { return mode_; }
  std::uint32_t base() const noexcept { return base_; }
  std::size_t n0() const noexcept { return n0_; }
  bool natural_ell() const noexcept { return natural_ell_; }

  /// Throws Error past the end of an explicit checkpoint list.
  std::uint64_t checkpoint(std::size_t j) const;
  std::size_t shufflers(std::size_t j) const;
  std::size_t ell(std::size_t j) const;
  Rational epsilon(std::size_t j) const;

  /// Canonical JSON description, the basis of the schedule hash.
  nlohmann::json to_json() const;
  std::uint64_t hash() const;

 private:
  Mode mode_ = Mode::relaxed;
  std::uint32_t base_ = 2;
  std::size_t n0_ = 0;
  bool natural_ell_ = false;
  std::vector<std::uint64_t> checkpoints_;
  std::size_t t_ = 2;
  std::size_t ell_ = 1;
  Rational epsilon_{9, 20};
};

}  // namespace normfsi
