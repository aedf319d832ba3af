#include "normfsi/stream.hpp"

#include "normfsi/error.hpp"

#include <algorithm>
#include <charconv>

namespace normfsi {

namespace {

constexpr std::size_t kChunk = 4096;

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error("malformed " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split_fields(std::string_view spec) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto colon = spec.find(':', start);
    fields.push_back(spec.substr(start, colon - start));
    if (colon == std::string_view::npos) {
      break;
    }
    start = colon + 1;
  }
  return fields;
}

FiniteWord digits_word(std::string_view digits, std::optional<std::uint32_t> base) {
  Symbol largest = 0;
  for (char c : digits) {
    largest = std::max(largest, char_symbol(c));
  }
  std::uint32_t b = base.value_or(std::max<std::uint32_t>(2, largest + 1));
  return FiniteWord::parse(digits, Alphabet(b));
}

/// Base-b numeral of `value` (no leading zeros; "0" for zero).
void append_numeral(std::vector<Symbol>& out, std::uint64_t value, std::uint32_t base) {
  if (value == 0) {
    out.push_back(0);
    return;
  }
  std::size_t first = out.size();
  while (value > 0) {
    out.push_back(static_cast<Symbol>(value % base));
    value /= base;
  }
  std::reverse(out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
}

}  // namespace

WordStream WordStream::champernowne(std::uint32_t base) {
  Alphabet a(base);
  return WordStream(Kind::champernowne, a, FiniteWord(a), 0);
}

WordStream WordStream::periodic(FiniteWord pattern) {
  if (pattern.empty()) {
    throw Error("periodic stream needs a nonempty pattern");
  }
  Alphabet a = pattern.alphabet();
  return WordStream(Kind::periodic, a, std::move(pattern), 0);
}

WordStream WordStream::explicit_prefix(FiniteWord prefix) {
  Alphabet a = prefix.alphabet();
  return WordStream(Kind::explicit_prefix, a, std::move(prefix), 0);
}

WordStream WordStream::prng(std::uint32_t base, std::uint64_t seed) {
  Alphabet a(base);
  return WordStream(Kind::prng, a, FiniteWord(a), seed);
}

WordStream WordStream::parse(std::string_view spec) {
  auto fields = split_fields(spec);
  const std::string_view kind = fields.front();
  auto optional_base = [&](std::size_t idx) -> std::optional<std::uint32_t> {
    if (fields.size() > idx) {
      return static_cast<std::uint32_t>(parse_u64(fields[idx], "base"));
    }
    return std::nullopt;
  };
  if (kind == "champernowne" && fields.size() == 2) {
    return champernowne(static_cast<std::uint32_t>(parse_u64(fields[1], "base")));
  }
  if (kind == "periodic" && (fields.size() == 2 || fields.size() == 3)) {
    return periodic(digits_word(fields[1], optional_base(2)));
  }
  if (kind == "explicit" && (fields.size() == 2 || fields.size() == 3)) {
    return explicit_prefix(digits_word(fields[1], optional_base(2)));
  }
  if (kind == "prng" && fields.size() == 3) {
    return prng(static_cast<std::uint32_t>(parse_u64(fields[1], "base")), parse_u64(fields[2], "seed"));
  }
  throw Error("unrecognised word-stream spec '" + std::string(spec) +
              "' (expected champernowne:<b>, periodic:<digits>, explicit:<digits>, prng:<b>:<seed>)");
}

std::string WordStream::spec() const {
  const std::string base = std::to_string(alphabet_.size());
  switch (kind_) {
    case Kind::champernowne:
      return "champernowne:" + base;
    case Kind::periodic:
      return "periodic:" + pattern_.to_string() + ":" + base;
    case Kind::explicit_prefix:
      return "explicit:" + pattern_.to_string() + ":" + base;
    case Kind::prng:
      return "prng:" + base + ":" + std::to_string(seed_);
  }
  return {};
}

std::optional<std::size_t> WordStream::length() const {
  if (kind_ == Kind::explicit_prefix) {
    return pattern_.size();
  }
  return std::nullopt;
}

Symbol WordStream::at(std::size_t i) const {
  if (i == 0) {
    throw std::out_of_range("stream positions start at 1");
  }
  switch (kind_) {
    case Kind::explicit_prefix:
      if (i > pattern_.size()) {
        throw StreamExhausted("explicit stream of length " + std::to_string(pattern_.size()) +
                              " has no position " + std::to_string(i));
      }
      return pattern_[i - 1];
    case Kind::periodic:
      return pattern_[(i - 1) % pattern_.size()];
    case Kind::prng: {
      std::mt19937_64 engine(seed_);
      engine.discard(i - 1);
      return reduce_to_base(engine(), alphabet_.size());
    }
    case Kind::champernowne: {
      const std::uint64_t b = alphabet_.size();
      std::uint64_t offset = i - 1;
      // the one-digit block holds 0..b-1
      if (offset < b) {
        return static_cast<Symbol>(offset);
      }
      offset -= b;
      std::uint64_t digits = 2;
      std::uint64_t first = b;  // smallest numeral with `digits` digits
      while (true) {
        const std::uint64_t count = first * (b - 1);  // numerals with `digits` digits
        const std::uint64_t span = count * digits;
        if (offset < span) {
          const std::uint64_t value = first + offset / digits;
          std::uint64_t from_right = digits - 1 - offset % digits;
          std::uint64_t v = value;
          for (std::uint64_t k = 0; k < from_right; ++k) {
            v /= b;
          }
          return static_cast<Symbol>(v % b);
        }
        offset -= span;
        first *= b;
        ++digits;
      }
    }
  }
  return 0;
}

StreamReader::StreamReader(const WordStream& stream) : stream_(&stream), engine_(stream.seed()) {
  buffer_.reserve(kChunk + 64);
}

bool StreamReader::refill() {
  buffer_.clear();
  cursor_ = 0;
  const std::uint32_t b = stream_->alphabet().size();
  switch (stream_->kind()) {
    case WordStream::Kind::explicit_prefix: {
      const FiniteWord& p = stream_->pattern();
      const std::size_t end = std::min(p.size(), produced_ + kChunk);
      for (std::size_t k = produced_; k < end; ++k) {
        buffer_.push_back(p[k]);
      }
      break;
    }
    case WordStream::Kind::periodic: {
      const FiniteWord& p = stream_->pattern();
      for (std::size_t k = 0; k < kChunk; ++k) {
        buffer_.push_back(p[(produced_ + k) % p.size()]);
      }
      break;
    }
    case WordStream::Kind::prng:
      for (std::size_t k = 0; k < kChunk; ++k) {
        buffer_.push_back(reduce_to_base(engine_(), b));
      }
      break;
    case WordStream::Kind::champernowne:
      while (buffer_.size() < kChunk) {
        append_numeral(buffer_, next_number_++, b);
      }
      break;
  }
  produced_ += buffer_.size();
  return !buffer_.empty();
}

FiniteWord stream_prefix(const WordStream& s, std::size_t n) {
  if (auto len = s.length(); len && *len < n) {
    throw StreamExhausted("explicit stream holds " + std::to_string(*len) + " symbols, " + std::to_string(n) +
                          " requested");
  }
  StreamReader reader(s);
  FiniteWord out(s.alphabet());
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(*reader.peek());
    reader.advance();
  }
  return out;
}

}  // namespace normfsi
