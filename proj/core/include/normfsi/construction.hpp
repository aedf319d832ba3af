#pragma once

#include "normfsi/measure.hpp"
#include "normfsi/schedule.hpp"

#include <json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace normfsi {

/// largest: child with the largest exact measure, ties to the smaller symbol.
/// threshold: the first child whose measure exceeds 2^(-2n+1), else the last.
enum class SelectionRule { largest, threshold };

/// The problem whose measure is mu(cylinder ∩ G_n), G_n = F(s_1) ∩ ... ∩ F(s_n)
/// (G_0 is the whole space). `shufflers` must hold the first
/// max_j t(s_j) enumerated shufflers.
MeasureProblem g_problem(const Schedule& schedule, std::size_t n, const CylinderPair& cylinder,
                         const std::vector<Deterministic>& shufflers);

/// Nominal enumeration size of one child measure at step n.
BigInt step_cost(const Schedule& schedule, std::size_t n);

/// Resumable state after a completed step.
struct Checkpoint {
  std::size_t step = 0;  // number of completed steps
  FiniteWord u{Alphabet(2)};
  FiniteWord v{Alphabet(2)};
  std::uint64_t schedule_hash = 0;
  std::vector<std::string> measures;  // mu(I_n ∩ G_n) for n = 1..step, as "p/q"

  nlohmann::json to_json() const;
  static Checkpoint from_json(const nlohmann::json& doc);
};

struct StepRecord {
  std::size_t step = 0;                // n: I_n -> I_{n+1}
  bool extended_u = true;
  std::vector<ExactMeasure> children;  // mu(I_n^c ∩ G_{n+1})
  Symbol chosen = 0;
  CylinderPair cylinder{Alphabet(2)};  // I_{n+1}
};

struct BudgetRefusal {
  std::size_t step = 0;
  std::string required;
  std::uint64_t budget = 0;
};

struct ConstructionOptions {
  std::size_t steps = 0;
  std::uint64_t budget = 0;  // 0 = unlimited
  unsigned workers = 1;
  SelectionRule rule = SelectionRule::largest;
  std::optional<Checkpoint> resume;
  std::function<void(const StepRecord&)> on_step;
};

struct ConstructionResult {
  std::vector<CylinderPair> cylinders;  // I_start .. I_end
  std::vector<StepRecord> steps;
  std::optional<BudgetRefusal> refusal;
  Checkpoint checkpoint;
};

/// Runs the nested-cylinder construction for options.steps steps (counted
/// from the resumed step, if any). A step whose enumeration exceeds the
/// budget stops the run: the completed steps and a checkpoint are returned
/// with `refusal` set. Throws ValidationError when every child has measure
/// zero, naming the step.
ConstructionResult construct_pair(const Schedule& schedule, const ConstructionOptions& options);

}  // namespace normfsi
