#include "normfsi/words.hpp"

#include "normfsi/error.hpp"

#include <bit>

namespace normfsi {

Alphabet::Alphabet(std::uint32_t size) : size_(size) {
  if (size < 2) {
    throw Error("alphabet size must be at least 2, got " + std::to_string(size));
  }
}

unsigned Alphabet::bits_per_symbol() const noexcept {
  return static_cast<unsigned>(std::bit_width(size_ - 1));
}

char symbol_char(Symbol s) {
  if (s < 10) {
    return static_cast<char>('0' + s);
  }
  if (s < 36) {
    return static_cast<char>('a' + (s - 10));
  }
  throw Error("symbol " + std::to_string(s) + " has no digit character");
}

Symbol char_symbol(char c) {
  if (c >= '0' && c <= '9') {
    return static_cast<Symbol>(c - '0');
  }
  if (c >= 'a' && c <= 'z') {
    return static_cast<Symbol>(c - 'a' + 10);
  }
  if (c >= 'A' && c <= 'Z') {
    return static_cast<Symbol>(c - 'A' + 10);
  }
  throw Error(std::string("not a digit character: '") + c + "'");
}

FiniteWord::FiniteWord(Alphabet alphabet)
    : alphabet_(alphabet),
      bits_(alphabet.bits_per_symbol()),
      per_word_(64 / bits_),
      mask_(bits_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits_) - 1) {}

FiniteWord::FiniteWord(Alphabet alphabet, std::span<const Symbol> symbols) : FiniteWord(alphabet) {
  storage_.reserve(symbols.size() / per_word_ + 1);
  for (Symbol s : symbols) {
    push_back(s);
  }
}

FiniteWord FiniteWord::parse(std::string_view digits, Alphabet alphabet) {
  FiniteWord w(alphabet);
  for (char c : digits) {
    w.push_back(char_symbol(c));
  }
  return w;
}

Symbol FiniteWord::letter(std::size_t i) const {
  if (i < 1 || i > size_) {
    throw std::out_of_range("position " + std::to_string(i) + " outside 1.." + std::to_string(size_));
  }
  return (*this)[i - 1];
}

FiniteWord FiniteWord::factor(std::size_t i, std::size_t j) const {
  if (i < 1 || i > j + 1 || j + 1 > size_ + 1) {
    throw std::out_of_range("factor [" + std::to_string(i) + ".." + std::to_string(j) + "] of a word of length " +
                            std::to_string(size_));
  }
  FiniteWord out(alphabet_);
  for (std::size_t k = i; k <= j; ++k) {
    out.push_back((*this)[k - 1]);
  }
  return out;
}

FiniteWord FiniteWord::prefix(std::size_t n) const {
  if (n > size_) {
    throw std::out_of_range("prefix longer than word");
  }
  return n == 0 ? FiniteWord(alphabet_) : factor(1, n);
}

void FiniteWord::push_back(Symbol s) {
  if (!alphabet_.contains(s)) {
    throw AlphabetMismatch("symbol " + std::to_string(s) + " outside alphabet of size " +
                           std::to_string(alphabet_.size()));
  }
  const std::size_t word = size_ / per_word_;
  const unsigned shift = static_cast<unsigned>(size_ % per_word_) * bits_;
  if (word == storage_.size()) {
    storage_.push_back(0);
  }
  storage_[word] |= static_cast<std::uint64_t>(s) << shift;
  ++size_;
}

void FiniteWord::append(const FiniteWord& other) {
  if (other.alphabet_ != alphabet_) {
    throw AlphabetMismatch("cannot append words over different alphabets");
  }
  for (std::size_t k = 0; k < other.size_; ++k) {
    push_back(other[k]);
  }
}

std::vector<Symbol> FiniteWord::symbols() const {
  std::vector<Symbol> out(size_);
  for (std::size_t k = 0; k < size_; ++k) {
    out[k] = (*this)[k];
  }
  return out;
}

std::string FiniteWord::to_string() const {
  std::string out;
  out.reserve(size_);
  for (std::size_t k = 0; k < size_; ++k) {
    out.push_back(symbol_char((*this)[k]));
  }
  return out;
}

bool operator==(const FiniteWord& a, const FiniteWord& b) {
  return a.alphabet_ == b.alphabet_ && a.size_ == b.size_ && a.storage_ == b.storage_;
}

namespace {

void check_pattern(const FiniteWord& w, const FiniteWord& u) {
  if (w.alphabet() != u.alphabet()) {
    throw AlphabetMismatch("occurrence count over different alphabets (" + std::to_string(w.alphabet().size()) +
                           " vs " + std::to_string(u.alphabet().size()) + ")");
  }
  if (u.empty()) {
    throw Error("occurrences of the empty word are not defined");
  }
}

bool matches_at(const FiniteWord& w, const FiniteWord& u, std::size_t start) {
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (w[start + k] != u[k]) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::size_t occ(const FiniteWord& w, const FiniteWord& u) {
  check_pattern(w, u);
  if (u.size() > w.size()) {
    return 0;
  }
  std::size_t count = 0;
  for (std::size_t start = 0; start + u.size() <= w.size(); ++start) {
    count += matches_at(w, u, start) ? 1 : 0;
  }
  return count;
}

std::size_t alocc(const FiniteWord& w, const FiniteWord& u) {
  check_pattern(w, u);
  std::size_t count = 0;
  for (std::size_t start = 0; start + u.size() <= w.size(); start += u.size()) {
    count += matches_at(w, u, start) ? 1 : 0;
  }
  return count;
}

std::uint64_t block_index(const FiniteWord& u) {
  std::uint64_t index = 0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    index = index * u.alphabet().size() + u[k];
  }
  return index;
}

FiniteWord block_from_index(std::uint64_t index, std::size_t length, Alphabet alphabet) {
  std::vector<Symbol> symbols(length);
  for (std::size_t k = length; k-- > 0;) {
    symbols[k] = static_cast<Symbol>(index % alphabet.size());
    index /= alphabet.size();
  }
  return FiniteWord(alphabet, symbols);
}

FiniteWord reblock(const FiniteWord& w, std::size_t r) {
  if (r == 0 || w.size() % r != 0) {
    throw Error("reblock needs a positive r dividing |w|");
  }
  std::uint64_t super = 1;
  for (std::size_t k = 0; k < r; ++k) {
    super *= w.alphabet().size();
    if (super > std::uint64_t{1} << 32) {
      throw Error("super-alphabet too large");
    }
  }
  FiniteWord out(Alphabet(static_cast<std::uint32_t>(super)));
  for (std::size_t start = 0; start < w.size(); start += r) {
    std::uint64_t index = 0;
    for (std::size_t k = 0; k < r; ++k) {
      index = index * w.alphabet().size() + w[start + k];
    }
    out.push_back(static_cast<Symbol>(index));
  }
  return out;
}

std::vector<std::uint64_t> block_histogram(const FiniteWord& w, std::size_t r, bool aligned) {
  if (r == 0) {
    throw Error("block length must be positive");
  }
  const std::uint64_t b = w.alphabet().size();
  std::uint64_t cells = 1;
  for (std::size_t k = 0; k < r; ++k) {
    cells *= b;
    if (cells > (std::uint64_t{1} << 28)) {
      throw Error("block histogram too large: b^r exceeds 2^28");
    }
  }
  std::vector<std::uint64_t> counts(cells, 0);
  if (w.size() < r) {
    return counts;
  }
  if (aligned) {
    for (std::size_t start = 0; start + r <= w.size(); start += r) {
      std::uint64_t index = 0;
      for (std::size_t k = 0; k < r; ++k) {
        index = index * b + w[start + k];
      }
      ++counts[index];
    }
    return counts;
  }
  // rolling rank of the window ending at position k
  const std::uint64_t top = cells / b;
  std::uint64_t index = 0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    index = (index % top) * b + w[k];
    if (k + 1 >= r) {
      ++counts[index];
    }
  }
  return counts;
}

}  // namespace normfsi
