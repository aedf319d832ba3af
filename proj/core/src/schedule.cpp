#include "normfsi/schedule.hpp"

#include "normfsi/error.hpp"
#include "normfsi/words.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace normfsi {

namespace {

using Precise = boost::multiprecision::cpp_bin_float_100;

Precise log_base(std::uint64_t n, std::uint32_t b) { return log(Precise(n)) / log(Precise(b)); }

}  // namespace

std::size_t floor_log(std::uint64_t n, std::uint32_t b) {
  if (n == 0 || b < 2) {
    throw Error("floor_log needs n >= 1 and b >= 2");
  }
  std::size_t k = 0;
  for (std::uint64_t p = 1; p <= n / b; p *= b) {
    ++k;
  }
  return k;
}

std::size_t paper_ell(std::uint64_t n, std::uint32_t b, bool natural) {
  std::size_t k = 0;
  if (natural) {
    k = static_cast<std::size_t>(floor(log(Precise(n)) / 3).convert_to<double>());
  } else {
    k = floor_log(n, b) / 3;
  }
  return std::max<std::size_t>(1, k);
}

Rational paper_epsilon(std::uint64_t n, std::uint32_t b) {
  const Precise value = 2 * sqrt(log(Precise(n)) * log_base(n, b) / Precise(n));
  const Precise scale = pow(Precise(2), 64);
  const BigInt p = ceil(value * scale).convert_to<BigInt>();
  return Rational(p) / Rational(power(2, 64));
}

bool start_condition(std::uint64_t n, std::uint32_t b, bool natural_ell) {
  if (n < 2) {
    return false;
  }
  const std::uint64_t d = n / paper_ell(n, b, natural_ell);
  if (d == 0) {
    return false;
  }
  // eps_n^2 = 4 ln n log_b n / n against (6/d)^2
  const Precise lhs = 4 * log(Precise(n)) * log_base(n, b) / Precise(n);
  const Precise rhs = Precise(36) / (Precise(d) * Precise(d));
  return lhs >= rhs;
}

std::uint64_t compute_n_start(std::uint32_t b, bool natural_ell) {
  for (std::uint64_t n = 1; n < 100000000; ++n) {
    if (start_condition(n, b, natural_ell)) {
      return n;
    }
  }
  throw Error("start condition not met below 10^8");
}

std::size_t compute_n0(std::uint32_t b, bool natural_ell) {
  const std::uint64_t n = compute_n_start(b, natural_ell);
  std::size_t k = 0;
  for (std::uint64_t p = 1; p < n; p *= b) {
    ++k;
  }
  return k;
}

Schedule Schedule::paper(std::uint32_t base, bool natural_ell) {
  Schedule s;
  s.mode_ = Mode::paper;
  s.base_ = Alphabet(base).size();
  s.natural_ell_ = natural_ell;
  s.n0_ = compute_n0(base, natural_ell);
  return s;
}

Schedule Schedule::relaxed(std::uint32_t base, std::vector<std::uint64_t> checkpoints, std::size_t t, std::size_t l,
                           Rational epsilon) {
  Schedule s;
  s.mode_ = Mode::relaxed;
  s.base_ = Alphabet(base).size();
  for (std::size_t j = 0; j < checkpoints.size(); ++j) {
    if (checkpoints[j] == 0 || (j > 0 && checkpoints[j] <= checkpoints[j - 1])) {
      throw Error("checkpoint lengths must be positive and strictly increasing");
    }
  }
  if (t < 1 || l < 1 || epsilon <= 0) {
    throw Error("a schedule needs t >= 1, l >= 1 and epsilon > 0");
  }
  s.checkpoints_ = std::move(checkpoints);
  s.t_ = t;
  s.ell_ = l;
  s.epsilon_ = std::move(epsilon);
  return s;
}

Schedule Schedule::from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw Error("schedule JSON must be an object");
  }
  try {
    const auto base = doc.value("base", 2u);
    if (doc.value("mode", std::string("relaxed")) == "paper") {
      return paper(base, doc.value("ell_base", std::string("b")) == "e");
    }
    const auto checkpoints = doc.value("checkpoints", std::vector<std::uint64_t>{});
    const auto t = doc.value("t", std::size_t{2});
    const auto l = doc.value("ell", std::size_t{1});
    Rational epsilon(9, 20);
    if (doc.contains("epsilon")) {
      epsilon = doc["epsilon"].is_string() ? parse_rational(doc["epsilon"].get<std::string>())
                                           : parse_rational(doc["epsilon"].dump());
    }
    return relaxed(base, checkpoints, t, l, epsilon);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("schedule JSON: ") + e.what());
  }
}

std::uint64_t Schedule::checkpoint(std::size_t j) const {
  if (mode_ == Mode::paper) {
    const BigInt s = power(base_, n0_ + j);
    if (s > BigInt(std::uint64_t{1} << 62)) {
      throw Error("checkpoint s_" + std::to_string(j) + " does not fit in 64 bits");
    }
    return s.convert_to<std::uint64_t>();
  }
  if (checkpoints_.empty()) {
    return 2 * (j + 1);
  }
  if (j >= checkpoints_.size()) {
    throw Error("schedule lists only " + std::to_string(checkpoints_.size()) + " checkpoints, s_" +
                std::to_string(j) + " requested");
  }
  return checkpoints_[j];
}

std::size_t Schedule::shufflers(std::size_t j) const {
  return mode_ == Mode::paper ? static_cast<std::size_t>(checkpoint(j)) : t_;
}

std::size_t Schedule::ell(std::size_t j) const {
  return mode_ == Mode::paper ? paper_ell(checkpoint(j), base_, natural_ell_) : ell_;
}

Rational Schedule::epsilon(std::size_t j) const {
  return mode_ == Mode::paper ? paper_epsilon(checkpoint(j), base_) : epsilon_;
}

nlohmann::json Schedule::to_json() const {
  if (mode_ == Mode::paper) {
    return {{"mode", "paper"}, {"base", base_}, {"n0", n0_}, {"ell_base", natural_ell_ ? "e" : "b"}};
  }
  return {{"mode", "relaxed"},
          {"base", base_},
          {"checkpoints", checkpoints_},
          {"t", t_},
          {"ell", ell_},
          {"epsilon", to_string(epsilon_)}};
}

std::uint64_t Schedule::hash() const {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : to_json().dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace normfsi
