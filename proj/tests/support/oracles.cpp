#include "oracles.hpp"

#include <bit>
#include <stdexcept>

namespace oracle {

using normfsi::BigInt;
using normfsi::Rational;

std::size_t occ(const std::string& w, const std::string& u) {
  std::size_t n = 0;
  for (std::size_t i = 0; i + u.size() <= w.size(); ++i) {
    if (w.compare(i, u.size(), u) == 0) ++n;
  }
  return n;
}

std::size_t alocc(const std::string& w, const std::string& u) {
  std::size_t n = 0;
  for (std::size_t i = 0; i + u.size() <= w.size(); i += u.size()) {
    if (w.compare(i, u.size(), u) == 0) ++n;
  }
  return n;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt c = 1;
  for (unsigned i = 0; i < k; ++i) {
    c = c * (n - i) / (i + 1);
  }
  return c;
}

BigInt binomial_tail(unsigned n, const Rational& eps) {
  std::vector<BigInt> hist(n + 1);
  for (unsigned k = 0; k <= n; ++k) hist[k] = binomial(n, k);
  return tail_from_histogram(hist, n, 1, eps);
}

std::vector<std::vector<std::uint64_t>> popcount_histograms_32() {
  std::vector<std::vector<std::uint64_t>> hist(6, std::vector<std::uint64_t>(33, 0));
  constexpr std::uint32_t low31 = 0x7fffffffU;
  std::uint32_t w = 0;
  do {
    const std::uint32_t s = w >> 1;
    const int ones = std::popcount(w);
    ++hist[1][ones];
    ++hist[2][std::popcount(~w & ~s & low31)];
    ++hist[3][std::popcount(~w & s & low31)];
    ++hist[4][std::popcount(w & ~s & low31)];
    ++hist[5][std::popcount(w & s & low31)];
    ++w;
  } while (w != 0);
  for (int k = 0; k <= 32; ++k) hist[0][k] = hist[1][32 - k];
  return hist;
}

std::vector<BigInt> pair_block_histogram(const std::string& gamma, unsigned n) {
  if (gamma.size() != 2 || n < 1) throw std::invalid_argument("pair_block_histogram");
  const int g0 = gamma[0] - '0';
  const int g1 = gamma[1] - '0';
  // table[last][count]
  std::vector<std::vector<BigInt>> table(2, std::vector<BigInt>(n + 1, 0));
  table[0][0] = 1;
  table[1][0] = 1;
  for (unsigned i = 1; i < n; ++i) {
    std::vector<std::vector<BigInt>> next(2, std::vector<BigInt>(n + 1, 0));
    for (int last = 0; last < 2; ++last) {
      for (unsigned c = 0; c < i; ++c) {
        if (table[last][c] == 0) continue;
        for (int s = 0; s < 2; ++s) {
          const unsigned hit = (last == g0 && s == g1) ? 1 : 0;
          next[s][c + hit] += table[last][c];
        }
      }
    }
    table = std::move(next);
  }
  std::vector<BigInt> hist(n + 1, 0);
  for (unsigned c = 0; c <= n; ++c) hist[c] = table[0][c] + table[1][c];
  return hist;
}

std::size_t count_runs_with_output(const normfsi::KAutomaton& a, normfsi::StateId start, const std::string& w) {
  const std::size_t out = a.tapes() - 1;
  std::size_t found = 0;
  std::vector<std::pair<normfsi::StateId, std::size_t>> stack{{start, 0}};
  while (!stack.empty()) {
    auto [q, depth] = stack.back();
    stack.pop_back();
    if (depth == w.size()) {
      ++found;
      continue;
    }
    for (const auto& t : a.transitions()) {
      if (t.from != q) continue;
      const auto& z = t.label[out];
      if (z && static_cast<char>('0' + *z) == w[depth]) stack.emplace_back(t.to, depth + 1);
    }
  }
  return found;
}

FlatShuffler::FlatShuffler(const normfsi::KAutomaton& a) : tape(a.state_count(), -1), next(a.state_count()) {
  start = static_cast<int>(a.initial().at(0));
  for (const auto& t : a.transitions()) {
    const int reads = t.label[0] ? 0 : 1;
    tape[t.from] = reads;
    next[t.from][*t.label[reads]] = static_cast<int>(t.to);
  }
}

std::vector<std::string> all_blocks(unsigned l) {
  std::vector<std::string> out;
  for (unsigned r = 1; r <= l; ++r) {
    for (unsigned k = 0; k < (1U << r); ++k) {
      std::string b;
      for (unsigned i = r; i-- > 0;) b.push_back(((k >> i) & 1U) ? '1' : '0');
      out.push_back(b);
    }
  }
  return out;
}

unsigned grid_horizon(const std::vector<NaiveCheck>& checks) {
  unsigned h = 0;
  for (const auto& c : checks) h = std::max(h, c.length);
  return h;
}

namespace {

struct PackedBlock {
  unsigned length;
  std::uint64_t bits;  // bit k = block[k]
};

struct PackedCheck {
  unsigned length;
  unsigned machines;
  std::vector<PackedBlock> blocks;
  std::int64_t p;
  std::int64_t q;
};

std::uint64_t parse_bits(const std::string& s) {
  std::uint64_t b = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') b |= std::uint64_t{1} << i;
  }
  return b;
}

std::uint64_t low_mask(unsigned n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

bool passes(std::uint64_t z, const PackedCheck& c) {
  for (const auto& b : c.blocks) {
    if (b.length > c.length) {
      // no room for the block; occ = 0
      const std::int64_t dev = c.length;
      if (dev * c.q >= c.p * c.length * (std::int64_t{1} << b.length)) return false;
      continue;
    }
    std::uint64_t match = low_mask(c.length - b.length + 1);
    for (unsigned k = 0; k < b.length; ++k) {
      const std::uint64_t shifted = z >> k;
      match &= ((b.bits >> k) & 1U) ? shifted : ~shifted;
    }
    const std::int64_t count = std::popcount(match);
    std::int64_t dev = count * (std::int64_t{1} << b.length) - c.length;
    if (dev < 0) dev = -dev;
    if (dev * c.q >= c.p * static_cast<std::int64_t>(c.length) * (std::int64_t{1} << b.length)) return false;
  }
  return true;
}

}  // namespace

std::uint64_t grid_count(const std::vector<normfsi::KAutomaton>& shufflers, const std::vector<NaiveCheck>& checks,
                         const std::string& u, const std::string& v) {
  const unsigned h = grid_horizon(checks);
  if (h > 32 || u.size() > h || v.size() > h) throw std::invalid_argument("grid_count horizon");
  std::vector<FlatShuffler> flat;
  for (const auto& s : shufflers) flat.emplace_back(s);
  std::vector<PackedCheck> packed;
  std::vector<unsigned> run_length(flat.size(), 0);
  for (const auto& c : checks) {
    if (c.machines > flat.size()) throw std::invalid_argument("grid_count machines");
    PackedCheck p{c.length, c.machines, {}, 0, 0};
    for (const auto& b : c.blocks) p.blocks.push_back({static_cast<unsigned>(b.size()), parse_bits(b)});
    p.p = static_cast<std::int64_t>(boost::multiprecision::numerator(c.epsilon));
    p.q = static_cast<std::int64_t>(boost::multiprecision::denominator(c.epsilon));
    packed.push_back(std::move(p));
    for (unsigned i = 0; i < c.machines; ++i) run_length[i] = std::max(run_length[i], c.length);
  }
  const std::uint64_t ub = parse_bits(u);
  const std::uint64_t vb = parse_bits(v);
  const std::uint64_t xs = std::uint64_t{1} << (h - u.size());
  const std::uint64_t ys = std::uint64_t{1} << (h - v.size());
  std::uint64_t total = 0;
  for (std::uint64_t xf = 0; xf < xs; ++xf) {
    const std::uint64_t x = ub | (xf << u.size());
    for (std::uint64_t yf = 0; yf < ys; ++yf) {
      const std::uint64_t y = vb | (yf << v.size());
      bool ok = true;
      for (std::size_t m = 0; m < flat.size() && ok; ++m) {
        const auto& s = flat[m];
        std::uint64_t z = 0;
        unsigned px = 0;
        unsigned py = 0;
        int q = s.start;
        for (unsigned i = 0; i < run_length[m]; ++i) {
          std::uint64_t c;
          if (s.tape[q] == 0) {
            c = (x >> px++) & 1U;
          } else {
            c = (y >> py++) & 1U;
          }
          z |= c << i;
          q = s.next[q][c];
        }
        for (const auto& c : packed) {
          if (m < c.machines && !passes(z, c)) {
            ok = false;
            break;
          }
        }
      }
      if (ok) ++total;
    }
  }
  return total;
}

Rational grid_measure(const std::vector<normfsi::KAutomaton>& shufflers, const std::vector<NaiveCheck>& checks,
                      const std::string& u, const std::string& v) {
  const unsigned h = grid_horizon(checks);
  return Rational(BigInt(grid_count(shufflers, checks, u, v)), normfsi::power(2, 2 * h));
}

}  // namespace oracle
