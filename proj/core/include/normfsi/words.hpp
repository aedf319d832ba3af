#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace normfsi {

using Symbol = std::uint32_t;

/// The alphabet {0, 1, ..., b-1} for some b >= 2.
class Alphabet {
 public:
  /// Throws normfsi::Error when size < 2.
  explicit Alphabet(std::uint32_t size);

  std::uint32_t size() const noexcept { return size_; }
  bool contains(Symbol s) const noexcept { return s < size_; }

  /// Bits needed to store one symbol: ceil(log2 b).
  unsigned bits_per_symbol() const noexcept;

  friend bool operator==(Alphabet, Alphabet) = default;

 private:
  std::uint32_t size_;
};

/// Digit character for a symbol ('0'-'9' then 'a'-'z'); bases above 36
/// have no textual form.
char symbol_char(Symbol s);
Symbol char_symbol(char c);

/// A finite word over an Alphabet, stored bit-packed.
///
/// Positions follow the usual combinatorics-on-words convention and are
/// numbered from 1: `letter(i)` is w[i] and `factor(i, j)` is w[i..j].
/// `operator[]` is the unchecked 0-based accessor for hot loops.
class FiniteWord {
 public:
  explicit FiniteWord(Alphabet alphabet);
  FiniteWord(Alphabet alphabet, std::span<const Symbol> symbols);

  /// Parses a digit string ("0110", "a9z"); every digit must be < b.
  static FiniteWord parse(std::string_view digits, Alphabet alphabet);

  Alphabet alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  Symbol operator[](std::size_t offset) const noexcept {
    const std::size_t word = offset / per_word_;
    const unsigned shift = static_cast<unsigned>(offset % per_word_) * bits_;
    return static_cast<Symbol>((storage_[word] >> shift) & mask_);
  }

  /// w[i], 1 <= i <= |w|.
  Symbol letter(std::size_t i) const;

  /// w[i..j]; defined for 1 <= i <= j+1 <= |w|+1 (i = j+1 gives the empty word).
  FiniteWord factor(std::size_t i, std::size_t j) const;

  FiniteWord prefix(std::size_t n) const;

  void push_back(Symbol s);
  void append(const FiniteWord& other);

  std::vector<Symbol> symbols() const;
  std::string to_string() const;

  friend bool operator==(const FiniteWord& a, const FiniteWord& b);

 private:
  Alphabet alphabet_;
  unsigned bits_;
  unsigned per_word_;
  std::uint64_t mask_;
  std::size_t size_ = 0;
  std::vector<std::uint64_t> storage_;
};

/// Number of (possibly overlapping) occurrences of u in w. Returns 0 when
/// |u| > |w|. Throws on alphabet mismatch or empty u.
std::size_t occ(const FiniteWord& w, const FiniteWord& u);

/// Number of occurrences of u in w at positions i = 1 mod |u|.
std::size_t alocc(const FiniteWord& w, const FiniteWord& u);

/// Lexicographic rank of u among words of length |u| (most significant
/// symbol first).
std::uint64_t block_index(const FiniteWord& u);

/// Word of length `length` with lexicographic rank `index`.
FiniteWord block_from_index(std::uint64_t index, std::size_t length, Alphabet alphabet);

/// Re-reads w (|w| a multiple of r) over the alphabet A^r, mapping each
/// aligned block to its lexicographic rank.
FiniteWord reblock(const FiniteWord& w, std::size_t r);

/// counts[k] = number of positions where the length-r block of rank k
/// starts; `aligned` restricts starts to positions 1 mod r.
std::vector<std::uint64_t> block_histogram(const FiniteWord& w, std::size_t r, bool aligned);

}  // namespace normfsi
