#pragma once

#include "normfsi/words.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace normfsi {

/// A lazily generated infinite (or, for explicit streams, finite) word.
///
/// Spec strings:
///   champernowne:<base>        base-b numerals of 0, 1, 2, ... concatenated
///   periodic:<digits>[:<base>] the pattern repeated forever
///   explicit:<digits>[:<base>] exactly these digits, then exhausted
///   prng:<base>:<seed>         mt19937_64-driven uniform symbols
///
/// For digit-based streams the base defaults to max(2, largest digit + 1).
class WordStream {
 public:
  enum class Kind { champernowne, periodic, explicit_prefix, prng };

  static WordStream champernowne(std::uint32_t base);
  static WordStream periodic(FiniteWord pattern);
  static WordStream explicit_prefix(FiniteWord prefix);
  static WordStream prng(std::uint32_t base, std::uint64_t seed);
  static WordStream parse(std::string_view spec);

  Kind kind() const noexcept { return kind_; }
  Alphabet alphabet() const noexcept { return alphabet_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const FiniteWord& pattern() const noexcept { return pattern_; }
  std::string spec() const;

  /// Symbol count for explicit streams; nullopt for infinite ones.
  std::optional<std::size_t> length() const;

  /// x[i], 1-indexed. Throws StreamExhausted past the end of an explicit
  /// stream. O(log i) for champernowne, O(i) for prng.
  Symbol at(std::size_t i) const;

 private:
  WordStream(Kind kind, Alphabet alphabet, FiniteWord pattern, std::uint64_t seed)
      : kind_(kind), alphabet_(alphabet), pattern_(std::move(pattern)), seed_(seed) {}

  Kind kind_;
  Alphabet alphabet_;
  FiniteWord pattern_;
  std::uint64_t seed_;
};

/// Sequential cursor over a WordStream, buffered in chunks.
class StreamReader {
 public:
  explicit StreamReader(const WordStream& stream);

  /// Next unread symbol, or nullopt when an explicit stream is exhausted.
  std::optional<Symbol> peek() {
    if (cursor_ == buffer_.size() && !refill()) {
      return std::nullopt;
    }
    return buffer_[cursor_];
  }

  /// Consumes the symbol returned by the last successful peek().
  void advance() noexcept {
    ++cursor_;
    ++consumed_;
  }

  std::size_t consumed() const noexcept { return consumed_; }

 private:
  bool refill();

  const WordStream* stream_;
  std::vector<Symbol> buffer_;
  std::size_t cursor_ = 0;
  std::size_t consumed_ = 0;
  // generator state per kind
  std::uint64_t next_number_ = 0;
  std::size_t produced_ = 0;
  std::mt19937_64 engine_;
};

/// First n symbols of s. Throws StreamExhausted for short explicit streams.
FiniteWord stream_prefix(const WordStream& s, std::size_t n);

/// Uniform symbol in [0, b) from one 64-bit engine output.
inline Symbol reduce_to_base(std::uint64_t raw, std::uint32_t base) {
  __extension__ using wide = unsigned __int128;
  return static_cast<Symbol>((static_cast<wide>(raw) * base) >> 64);
}

}  // namespace normfsi
