#include "normfsi/construction.hpp"

#include "normfsi/error.hpp"
#include "normfsi/shuffler_enum.hpp"

#include <algorithm>

namespace normfsi {

MeasureProblem g_problem(const Schedule& schedule, std::size_t n, const CylinderPair& cylinder,
                         const std::vector<Deterministic>& shufflers) {
  MeasureProblem p;
  p.base = schedule.base();
  p.cylinder = cylinder;
  for (std::size_t j = 1; j <= n; ++j) {
    p.checks.push_back(BlockCheck{static_cast<std::size_t>(schedule.checkpoint(j)), schedule.shufflers(j),
                                  schedule.ell(j), {}, schedule.epsilon(j)});
  }
  std::size_t t = 0;
  for (const auto& c : p.checks) {
    t = std::max(t, c.machines);
  }
  if (shufflers.size() < t) {
    throw Error("G_" + std::to_string(n) + " needs " + std::to_string(t) + " shufflers");
  }
  p.shufflers.assign(shufflers.begin(), shufflers.begin() + static_cast<std::ptrdiff_t>(t));
  return p;
}

BigInt step_cost(const Schedule& schedule, std::size_t n) {
  std::size_t horizon = 0;
  std::size_t t = 1;
  for (std::size_t j = 1; j <= n + 1; ++j) {
    horizon = std::max<std::size_t>(horizon, schedule.checkpoint(j));
    t = std::max(t, schedule.shufflers(j));
  }
  horizon = std::max(horizon, n / 2 + 1);
  return power(schedule.base(), 2 * horizon - (n + 1)) * t;
}

nlohmann::json Checkpoint::to_json() const {
  return {{"step", step},
          {"base", u.alphabet().size()},
          {"u", u.to_string()},
          {"v", v.to_string()},
          {"schedule_hash", schedule_hash},
          {"measures", measures}};
}

Checkpoint Checkpoint::from_json(const nlohmann::json& doc) {
  try {
    Checkpoint c;
    c.step = doc.at("step").get<std::size_t>();
    c.schedule_hash = doc.at("schedule_hash").get<std::uint64_t>();
    c.measures = doc.value("measures", std::vector<std::string>{});
    const auto base = doc.value("base", 2u);
    c.u = FiniteWord::parse(doc.at("u").get<std::string>(), Alphabet(base));
    c.v = FiniteWord::parse(doc.at("v").get<std::string>(), Alphabet(base));
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("checkpoint JSON: ") + e.what());
  }
}

namespace {

std::size_t shufflers_needed(const Schedule& schedule, std::size_t n) {
  std::size_t t = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    t = std::max(t, schedule.shufflers(j));
  }
  return t;
}

}  // namespace

ConstructionResult construct_pair(const Schedule& schedule, const ConstructionOptions& options) {
  const Alphabet alphabet(schedule.base());
  ConstructionResult result;
  CylinderPair current(alphabet);
  std::size_t start = 0;
  result.checkpoint.schedule_hash = schedule.hash();
  result.checkpoint.u = current.u;
  result.checkpoint.v = current.v;
  if (options.resume) {
    const Checkpoint& c = *options.resume;
    if (c.schedule_hash != schedule.hash()) {
      throw ValidationError("checkpoint was written for a different schedule");
    }
    if (c.u.size() != (c.step + 1) / 2 || c.v.size() != c.step / 2 || c.u.alphabet() != alphabet) {
      throw ValidationError("checkpoint cylinder does not match its step count");
    }
    current = CylinderPair(c.u, c.v);
    start = c.step;
    result.checkpoint = c;
  }
  result.cylinders.push_back(current);

  const ShufflerEnumeration enumeration(schedule.base());
  std::vector<Deterministic> shufflers;

  for (std::size_t n = start; n < start + options.steps; ++n) {
    const BigInt cost = step_cost(schedule, n);
    if (options.budget != 0 && cost > options.budget) {
      result.refusal = BudgetRefusal{n, cost.str(), options.budget};
      break;
    }
    const std::size_t t = shufflers_needed(schedule, n + 1);
    while (shufflers.size() < t) {
      shufflers.push_back(Deterministic::make(enumeration.decode(shufflers.size() + 1), 2));
    }
    StepRecord record;
    record.step = n;
    record.extended_u = n % 2 == 0;
    for (Symbol c = 0; c < alphabet.size(); ++c) {
      const CylinderPair child = current.extend(record.extended_u, c);
      const MeasureProblem p = g_problem(schedule, n + 1, child, shufflers);
      record.children.push_back(measure(p, MeasureOptions{0, options.workers}));
    }
    const bool all_zero = std::all_of(record.children.begin(), record.children.end(),
                                      [](const ExactMeasure& m) { return m.count == 0; });
    if (all_zero) {
      throw ValidationError("schedule invalid: every child has measure zero at step " + std::to_string(n));
    }
    if (options.rule == SelectionRule::largest) {
      std::size_t best = 0;
      for (std::size_t c = 1; c < record.children.size(); ++c) {
        if (record.children[best] < record.children[c]) {
          best = c;
        }
      }
      record.chosen = static_cast<Symbol>(best);
    } else {
      // 2^(-2n+1)
      const Rational threshold =
          n == 0 ? Rational(2) : Rational(1) / Rational(power(2, 2 * n - 1));
      record.chosen = alphabet.size() - 1;
      for (std::size_t c = 0; c + 1 < record.children.size(); ++c) {
        if (record.children[c].value() > threshold) {
          record.chosen = static_cast<Symbol>(c);
          break;
        }
      }
    }
    current = current.extend(record.extended_u, record.chosen);
    record.cylinder = current;
    result.cylinders.push_back(current);
    result.checkpoint.step = n + 1;
    result.checkpoint.u = current.u;
    result.checkpoint.v = current.v;
    result.checkpoint.measures.push_back(record.children[record.chosen].to_string());
    if (options.on_step) {
      options.on_step(record);
    }
    result.steps.push_back(std::move(record));
  }
  return result;
}

}  // namespace normfsi
