#include "cli.hpp"

#include "normfsi/automaton.hpp"
#include "normfsi/automaton_json.hpp"
#include "normfsi/bounds.hpp"
#include "normfsi/builtins.hpp"
#include "normfsi/construction.hpp"
#include "normfsi/error.hpp"
#include "normfsi/machines.hpp"
#include "normfsi/markov.hpp"
#include "normfsi/measure.hpp"
#include "normfsi/normality.hpp"
#include "normfsi/schedule.hpp"
#include "normfsi/shuffler_enum.hpp"
#include "normfsi/stream.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace normfsi::cli {

using nlohmann::json;

std::uint64_t default_budget() {
  if (const char* env = std::getenv("NORMFSI_BUDGET"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const auto value = std::stoull(env, &used);
      if (used == std::string(env).size()) {
        return value;
      }
    } catch (const std::exception&) {
    }
    throw Error(std::string("NORMFSI_BUDGET is not an integer: ") + env);
  }
  return std::uint64_t{1} << 32;
}

namespace {

struct UsageError : Error {
  using Error::Error;
};

struct MachineSource {
  std::string builtin;
  std::string file;

  void add(CLI::App* app) {
    auto* b = app->add_option("--builtin", builtin, "Built-in machine name");
    auto* f = app->add_option("--automaton", file, "Automaton JSON file");
    b->excludes(f);
  }

  KAutomaton load() const {
    if (!builtin.empty()) {
      return normfsi::builtin(builtin);
    }
    if (!file.empty()) {
      return load_automaton(file);
    }
    throw UsageError("one of --builtin or --automaton is required");
  }
};

std::size_t default_inputs(const KAutomaton& a, std::size_t requested) {
  if (requested != 0) {
    return requested;
  }
  return std::min<std::size_t>(2, a.tapes());
}

Deterministic deterministic(const KAutomaton& a, std::size_t inputs) {
  return Deterministic::make(a, inputs);
}

json rational_map(const std::vector<Rational>& values, const std::string& prefix) {
  json out = json::object();
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[prefix + std::to_string(i)] = to_string(values[i]);
  }
  return out;
}

std::string join_symbols(const std::vector<Symbol>& s) {
  std::string out;
  for (Symbol c : s) {
    out += symbol_char(c);
  }
  return out;
}

json load_json_argument(const std::string& text) {
  std::string body = text;
  if (!text.empty() && text.front() != '{' && text.front() != '[') {
    std::ifstream in(text);
    if (!in) {
      throw UsageError("cannot open " + text);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("malformed JSON: ") + e.what());
  }
}

std::vector<WordStream> parse_streams(const std::vector<std::string>& specs) {
  std::vector<WordStream> streams;
  for (const auto& s : specs) {
    streams.push_back(WordStream::parse(s));
  }
  return streams;
}

std::string cylinder_text(const CylinderPair& c) {
  auto show = [](const FiniteWord& w) { return w.empty() ? std::string("ε") : w.to_string(); };
  return show(c.u) + " " + show(c.v);
}

json report_json(const BoundReport& r) {
  json out = {{"name", r.name},
              {"window_ok", r.window_ok},
              {"feasible", r.feasible},
              {"required", r.required},
              {"bound", r.bound.str(20)},
              {"informative", r.informative}};
  out["measure"] = r.measure ? json(to_string(*r.measure)) : json(nullptr);
  out["holds"] = r.holds ? json(*r.holds) : json(nullptr);
  return out;
}

MeasureProblem problem_from_json(const json& doc, std::vector<Deterministic>& pool) {
  const auto base = doc.value("base", 2u);
  const Alphabet alphabet(base);
  CylinderPair cylinder(alphabet);
  if (doc.contains("cylinder")) {
    const auto& c = doc.at("cylinder");
    cylinder = CylinderPair(FiniteWord::parse(c.value("u", std::string()), alphabet),
                            FiniteWord::parse(c.value("v", std::string()), alphabet));
  }
  const ShufflerEnumeration enumeration(base);
  if (doc.contains("schedule")) {
    const Schedule schedule = Schedule::from_json(doc.at("schedule"));
    const std::size_t g = doc.value("g", std::size_t{1});
    std::size_t t = 0;
    for (std::size_t j = 1; j <= g; ++j) {
      t = std::max(t, schedule.shufflers(j));
    }
    for (std::size_t i = pool.size(); i < t; ++i) {
      pool.push_back(Deterministic::make(enumeration.decode(i + 1), 2));
    }
    return g_problem(schedule, g, cylinder, pool);
  }
  MeasureProblem p;
  p.base = base;
  p.cylinder = cylinder;
  std::vector<std::uint64_t> indices;
  if (doc.contains("shufflers")) {
    const auto& s = doc.at("shufflers");
    if (s.is_number_unsigned()) {
      for (std::uint64_t i = 1; i <= s.get<std::uint64_t>(); ++i) {
        indices.push_back(i);
      }
    } else {
      indices = s.get<std::vector<std::uint64_t>>();
    }
  }
  for (const auto& c : doc.value("checks", json::array())) {
    BlockCheck check;
    check.length = c.at("length").get<std::size_t>();
    check.machines = c.value("machines", indices.size());
    check.max_block = c.value("max_block", std::size_t{1});
    for (const auto& g : c.value("blocks", std::vector<std::string>{})) {
      check.blocks.push_back(FiniteWord::parse(g, alphabet));
    }
    const auto& eps = c.at("epsilon");
    check.epsilon = parse_rational(eps.is_string() ? eps.get<std::string>() : eps.dump());
    p.checks.push_back(std::move(check));
  }
  for (auto i : indices) {
    p.shufflers.push_back(Deterministic::make(enumeration.decode(i), 2));
  }
  return p;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-state independence toolkit"};
  app.require_subcommand(1);
  std::function<void()> action;
  std::uint64_t budget = 0;
  bool budget_set = false;

  auto budget_option = [&](CLI::App* sub) {
    sub->add_option_function<std::uint64_t>(
        "--budget",
        [&](const std::uint64_t& value) {
          budget = value;
          budget_set = true;
        },
        "Enumeration budget (default NORMFSI_BUDGET or 2^32)");
  };
  auto effective_budget = [&] { return budget_set ? budget : default_budget(); };

  // generate
  std::string stream_spec;
  std::size_t count = 0;
  auto* generate = app.add_subcommand("generate", "Print a prefix of a word stream");
  generate->add_option("--stream", stream_spec, "Stream spec")->required();
  generate->add_option("--n", count, "Prefix length")->required();
  generate->callback([&] {
    action = [&] { out << stream_prefix(WordStream::parse(stream_spec), count).to_string() << "\n"; };
  });

  // validate
  MachineSource validate_src;
  std::size_t validate_l = 0;
  std::string validate_kind = "deterministic";
  auto* validate = app.add_subcommand("validate", "Check determinism, completeness or machine type");
  validate_src.add(validate);
  validate->add_option("--l", validate_l, "Number of input tapes");
  validate->add_option("--kind", validate_kind, "deterministic|complete|selector|shuffler")
      ->check(CLI::IsMember({"deterministic", "complete", "selector", "shuffler"}));
  validate->callback([&] {
    action = [&] {
      const KAutomaton a = validate_src.load();
      const std::size_t l = default_inputs(a, validate_l);
      Diagnostics d;
      if (validate_kind == "deterministic") {
        d = validate_l_deterministic(a, l);
      } else if (validate_kind == "complete") {
        d = validate_l_complete(a, l);
      } else if (validate_kind == "selector") {
        d = validate_selector(a);
      } else {
        d = validate_shuffler(a);
      }
      json report = to_json(d);
      if (validate_kind == "selector" && d.ok()) {
        report["oblivious"] = is_oblivious(a);
      }
      if (!d.ok()) {
        err << report.dump() << "\n";
        throw ValidationError("");
      }
      out << report.dump() << "\n";
    };
  });

  // normalize
  MachineSource normalize_src;
  auto* normalize_cmd = app.add_subcommand("normalize", "Split two-symbol transitions of a 2-automaton");
  normalize_src.add(normalize_cmd);
  normalize_cmd->callback([&] {
    action = [&] { out << to_json(normalize(normalize_src.load()).automaton).dump() << "\n"; };
  });

  // run / freqs
  MachineSource run_src;
  std::vector<std::string> run_inputs;
  std::size_t run_budget = 0;
  std::size_t run_l = 0;
  auto* run_cmd = app.add_subcommand("run", "Run a deterministic automaton on word streams");
  run_src.add(run_cmd);
  run_cmd->add_option("--input", run_inputs, "Input stream spec, one per input tape")->required();
  run_cmd->add_option("--steps", run_budget, "Maximum number of transitions")->required();
  run_cmd->add_option("--l", run_l, "Number of input tapes");
  run_cmd->callback([&] {
    action = [&] {
      const KAutomaton a = run_src.load();
      const auto det = deterministic(a, default_inputs(a, run_l));
      const auto streams = parse_streams(run_inputs);
      const RunTrace t = run(det, streams, run_budget, RunOptions{std::nullopt, true});
      json outputs = json::array();
      for (const auto& w : t.outputs) {
        outputs.push_back(w.to_string());
      }
      json starved = starved_tapes(det, t);
      out << json{{"transitions", t.length()},
                  {"halt", to_string(t.halt)},
                  {"final_state", t.final_state},
                  {"tape_counts", t.tape_counts},
                  {"outputs", outputs},
                  {"starved_tapes", starved}}
                 .dump()
          << "\n";
    };
  });

  MachineSource freqs_src;
  std::vector<std::string> freqs_inputs;
  std::size_t freqs_budget = 0;
  std::size_t freqs_l = 0;
  auto* freqs = app.add_subcommand("freqs", "Empirical state and transition frequencies of a run");
  freqs_src.add(freqs);
  freqs->add_option("--input", freqs_inputs, "Input stream spec, one per input tape")->required();
  freqs->add_option("--steps", freqs_budget, "Number of transitions")->required();
  freqs->add_option("--l", freqs_l, "Number of input tapes");
  freqs->callback([&] {
    action = [&] {
      const KAutomaton a = freqs_src.load();
      const auto det = deterministic(a, default_inputs(a, freqs_l));
      const auto streams = parse_streams(freqs_inputs);
      const RunTrace t = run(det, streams, freqs_budget);
      out << json{{"transitions", t.length()},
                  {"halt", to_string(t.halt)},
                  {"states", rational_map(state_frequencies(t), "q")},
                  {"transitions_freq", rational_map(transition_frequencies(t), "t")}}
                 .dump()
          << "\n";
    };
  });

  // stationary
  MachineSource stationary_src;
  bool stationary_final = false;
  auto* stationary_cmd = app.add_subcommand("stationary", "Exact stationary distribution");
  stationary_src.add(stationary_cmd);
  stationary_cmd->add_flag("--final-scc", stationary_final, "Use the reachable final component");
  stationary_cmd->callback([&] {
    action = [&] {
      const KAutomaton a = stationary_src.load();
      if (stationary_final) {
        const SubAutomaton sub = final_scc(a);
        const auto pi = stationary(sub.automaton);
        json result = json::object();
        for (std::size_t i = 0; i < pi.size(); ++i) {
          result["q" + std::to_string(sub.states[i])] = to_string(pi[i]);
        }
        out << result.dump() << "\n";
        return;
      }
      out << rational_map(stationary(a), "q").dump() << "\n";
    };
  });

  // block-product
  MachineSource block_src;
  std::size_t block_k = 1;
  std::size_t block_l = 1;
  std::size_t block_max = 100000;
  bool block_stationary = false;
  auto* block_cmd = app.add_subcommand("block-product", "Build the block-product automaton A_{k,l}");
  block_src.add(block_cmd);
  block_cmd->add_option("--k", block_k, "Buffered symbols of x");
  block_cmd->add_option("--l", block_l, "Buffered symbols of y");
  block_cmd->add_option("--max-states", block_max, "State budget");
  block_cmd->add_flag("--stationary", block_stationary, "Stationary law of the recurrent part");
  block_cmd->callback([&] {
    action = [&] {
      const BlockProduct product = block_product(block_src.load(), block_k, block_l, block_max);
      json report = {{"states", product.states.size()},
                     {"recurrent", product.recurrent.size()},
                     {"automaton", to_json(product.automaton)}};
      if (block_stationary) {
        const SubAutomaton sub = product.recurrent_part();
        const auto pi = stationary(sub.automaton);
        json law = json::object();
        for (std::size_t i = 0; i < pi.size(); ++i) {
          const BlockState& s = product.states[sub.states[i]];
          law["q" + std::to_string(s.q) + "," + join_symbols(s.u) + "," + join_symbols(s.v)] = to_string(pi[i]);
        }
        report["stationary"] = law;
      }
      out << report.dump() << "\n";
    };
  });

  // select / shuffle / split / compress-ratio
  MachineSource select_src;
  std::string x_spec;
  std::string y_spec;
  std::size_t select_budget = 0;
  auto* select_cmd = app.add_subcommand("select", "Run a selector and print the selected symbols");
  select_src.add(select_cmd);
  select_cmd->add_option("--x", x_spec, "Stream spec for x")->required();
  select_cmd->add_option("--y", y_spec, "Stream spec for y")->required();
  select_cmd->add_option("--steps", select_budget, "Maximum number of transitions")->required();
  select_cmd->callback([&] {
    action = [&] {
      const KAutomaton a = select_src.load();
      const Diagnostics d = validate_selector(a);
      if (!d.ok()) {
        err << to_json(d).dump() << "\n";
        throw ValidationError("");
      }
      const auto s = normfsi::select(Deterministic::make(a, 2), WordStream::parse(x_spec),
                                     WordStream::parse(y_spec), select_budget);
      out << s.output.to_string() << "\n";
    };
  });

  MachineSource shuffle_src;
  std::size_t shuffle_n = 0;
  auto* shuffle_cmd = app.add_subcommand("shuffle", "Run a shuffler for exactly n transitions");
  shuffle_src.add(shuffle_cmd);
  shuffle_cmd->add_option("--x", x_spec, "Stream spec for x")->required();
  shuffle_cmd->add_option("--y", y_spec, "Stream spec for y")->required();
  shuffle_cmd->add_option("--n", shuffle_n, "Output length")->required();
  shuffle_cmd->callback([&] {
    action = [&] {
      const KAutomaton a = shuffle_src.load();
      const Diagnostics d = validate_shuffler(a);
      if (!d.ok()) {
        err << to_json(d).dump() << "\n";
        throw ValidationError("");
      }
      out << shuffle(Deterministic::make(a, 2), WordStream::parse(x_spec), WordStream::parse(y_spec), shuffle_n)
                 .to_string()
          << "\n";
    };
  });

  MachineSource split_src;
  std::string z_spec;
  std::size_t split_n = 0;
  auto* split_cmd = app.add_subcommand("split", "Invert a shuffler with its splitter");
  split_src.add(split_cmd);
  split_cmd->add_option("--z", z_spec, "Stream spec for the shuffled word")->required();
  split_cmd->add_option("--n", split_n, "Symbols of z to read")->required();
  split_cmd->callback([&] {
    action = [&] {
      const KAutomaton a = split_src.load();
      const Diagnostics d = validate_shuffler(a);
      if (!d.ok()) {
        err << to_json(d).dump() << "\n";
        throw ValidationError("");
      }
      const auto [x, y] = split(splitter_of(a), WordStream::parse(z_spec), split_n);
      out << json{{"x", x.to_string()}, {"y", y.to_string()}}.dump() << "\n";
    };
  });

  MachineSource ratio_src;
  std::size_t ratio_n = 0;
  auto* ratio_cmd = app.add_subcommand("compress-ratio", "Conditional compression ratio on a prefix");
  ratio_src.add(ratio_cmd);
  ratio_cmd->add_option("--x", x_spec, "Stream spec for x")->required();
  ratio_cmd->add_option("--y", y_spec, "Stream spec for y")->required();
  ratio_cmd->add_option("--n", ratio_n, "Number of transitions")->required();
  ratio_cmd->callback([&] {
    action = [&] {
      const auto report = conditional_compression_ratio(Deterministic::make(ratio_src.load(), 2),
                                                        WordStream::parse(x_spec), WordStream::parse(y_spec),
                                                        ratio_n);
      json checkpoints = json::array();
      for (const auto& c : report.checkpoints) {
        checkpoints.push_back({{"n", c.transitions}, {"ratio", to_string(c.ratio)}});
      }
      out << json{{"transitions", report.transitions},
                  {"x_consumed", report.x_consumed},
                  {"y_consumed", report.y_consumed},
                  {"output", report.output},
                  {"ratio", to_string(report.ratio)},
                  {"running_min", to_string(report.running_min)},
                  {"alphabet_factor", report.alphabet_factor},
                  {"estimate", report.estimate},
                  {"checkpoints", checkpoints}}
                 .dump()
          << "\n";
    };
  });

  // normality-stats
  std::size_t stats_n = 0;
  std::size_t stats_ell = 1;
  std::string stats_mode = "aligned";
  std::string stats_format = "json";
  std::string stats_c;
  auto* stats = app.add_subcommand("normality-stats", "Block-frequency deviations of a prefix");
  stats->add_option("--stream", stream_spec, "Stream spec")->required();
  stats->add_option("--n", stats_n, "Prefix length")->required();
  stats->add_option("--max-ell", stats_ell, "Largest block length");
  stats->add_option("--mode", stats_mode, "aligned|sliding")->check(CLI::IsMember({"aligned", "sliding"}));
  stats->add_option("--format", stats_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  stats->add_option("--c", stats_c, "Also check occ/n <= C/b^l (C as p/q)");
  stats->callback([&] {
    action = [&] {
      const FiniteWord w = stream_prefix(WordStream::parse(stream_spec), stats_n);
      std::vector<DiscrepancyReport> reports;
      for (std::size_t l = 1; l <= stats_ell; ++l) {
        reports.push_back(stats_mode == "aligned" ? simple_normality_discrepancy(w, l) : sliding_discrepancy(w, l));
      }
      if (stats_format == "csv") {
        out << "ell,block,count,denominator,deviation\n";
        for (const auto& r : reports) {
          for (std::size_t k = 0; k < r.counts.size(); ++k) {
            out << r.length << "," << block_from_index(k, r.length, w.alphabet()).to_string() << "," << r.counts[k]
                << "," << r.denominator << "," << to_string(r.deviations[k]) << "\n";
          }
        }
        return;
      }
      json levels = json::array();
      for (const auto& r : reports) {
        json deviations = json::object();
        for (std::size_t k = 0; k < r.counts.size(); ++k) {
          deviations[block_from_index(k, r.length, w.alphabet()).to_string()] = to_string(r.deviations[k]);
        }
        levels.push_back({{"ell", r.length},
                          {"denominator", r.denominator},
                          {"max_deviation", to_string(r.max_deviation)},
                          {"max_deviation_approx", to_double(r.max_deviation)},
                          {"deviations", deviations}});
      }
      json report = {{"n", w.size()}, {"mode", stats_mode}, {"levels", levels}};
      if (!stats_c.empty()) {
        json verdicts = json::array();
        for (const auto& level : c_bound_check(w, stats_ell, parse_rational(stats_c))) {
          verdicts.push_back({{"ell", level.length},
                              {"holds", level.holds},
                              {"worst_block", block_from_index(level.worst_block, level.length, w.alphabet()).to_string()},
                              {"worst_ratio", to_string(level.worst_ratio)}});
        }
        report["c_bound"] = verdicts;
      }
      out << report.dump() << "\n";
    };
  });

  // enumerate-shufflers
  std::uint32_t enum_base = 2;
  std::uint64_t enum_from = 1;
  std::size_t enum_count = 1;
  auto* enumerate = app.add_subcommand("enumerate-shufflers", "List shufflers in canonical order");
  enumerate->add_option("--base", enum_base, "Alphabet size");
  enumerate->add_option("--from", enum_from, "First index (1-based)");
  enumerate->add_option("--count", enum_count, "Number of machines");
  enumerate->callback([&] {
    action = [&] {
      const ShufflerEnumeration e(enum_base);
      json list = json::array();
      for (std::size_t i = 0; i < enum_count; ++i) {
        list.push_back({{"index", enum_from + i}, {"automaton", to_json(e.decode(enum_from + i))}});
      }
      out << list.dump() << "\n";
    };
  });

  // measure
  std::string measure_params;
  unsigned measure_workers = 1;
  auto* measure_cmd = app.add_subcommand("measure", "Exact measure of a cylinder pair within E/F/G");
  measure_cmd->add_option("--params", measure_params, "Params JSON (inline or file)")->required();
  measure_cmd->add_option("--workers", measure_workers, "Worker threads");
  budget_option(measure_cmd);
  measure_cmd->callback([&] {
    action = [&] {
      const json doc = load_json_argument(measure_params);
      std::vector<Deterministic> pool;
      const MeasureProblem p = problem_from_json(doc, pool);
      const ExactMeasure m = measure(p, MeasureOptions{effective_budget(), measure_workers});
      out << json{{"count", m.count.str()},
                  {"base", m.base},
                  {"exponent", m.exponent},
                  {"measure", m.to_string()},
                  {"cylinder", m.count == 0 ? "0/1" : to_string(p.cylinder.measure().value())}}
                 .dump()
          << "\n";
    };
  });

  // bounds
  std::string bounds_kind = "n0";
  std::uint32_t bounds_base = 2;
  std::size_t bounds_r = 1;
  std::size_t bounds_n = 0;
  std::size_t bounds_t = 1;
  std::string bounds_eps;
  std::string bounds_gamma;
  std::string bounds_ell_base = "b";
  unsigned bounds_workers = 1;
  auto* bounds = app.add_subcommand("bounds", "Closed-form bounds against exact counts");
  bounds->add_option("--kind", bounds_kind, "hardy|E|A|quad|n0")
      ->check(CLI::IsMember({"hardy", "E", "A", "quad", "n0"}));
  bounds->add_option("--base", bounds_base, "Alphabet size");
  bounds->add_option("--r", bounds_r, "Block length (l for --kind A)");
  bounds->add_option("--n", bounds_n, "Word length");
  bounds->add_option("--t", bounds_t, "Number of shufflers (--kind A)");
  bounds->add_option("--epsilon", bounds_eps, "Epsilon as p/q");
  bounds->add_option("--gamma", bounds_gamma, "Block for --kind hardy (default 0^r)");
  bounds->add_option("--ell-base", bounds_ell_base, "b|e")->check(CLI::IsMember({"b", "e"}));
  bounds->add_option("--workers", bounds_workers, "Worker threads");
  budget_option(bounds);
  bounds->callback([&] {
    action = [&] {
      const bool natural = bounds_ell_base == "e";
      if (bounds_kind == "n0") {
        out << json{{"base", bounds_base},
                    {"n_start", compute_n_start(bounds_base, natural)},
                    {"n0", compute_n0(bounds_base, natural)}}
                   .dump()
            << "\n";
        return;
      }
      if (bounds_n == 0) {
        throw UsageError("--n is required");
      }
      if (bounds_kind == "quad") {
        out << report_json(verify_boundquad(bounds_base, bounds_n, effective_budget(), bounds_workers, natural))
                   .dump()
            << "\n";
        return;
      }
      if (bounds_eps.empty()) {
        throw UsageError("--epsilon is required");
      }
      const Rational eps = parse_rational(bounds_eps);
      if (bounds_kind == "hardy") {
        const Alphabet alphabet(bounds_base);
        const FiniteWord gamma = bounds_gamma.empty() ? block_from_index(0, bounds_r, alphabet)
                                                      : FiniteWord::parse(bounds_gamma, alphabet);
        const BigInt tail = tail_count(gamma, eps, bounds_n);
        const Real bound = hardy_bound(bounds_base, gamma.size(), eps, bounds_n);
        out << json{{"gamma", gamma.to_string()},
                    {"window_ok", in_hardy_window(bounds_base, gamma.size(), eps, bounds_n)},
                    {"tail_count", tail.str()},
                    {"bound", bound.str(20)},
                    {"holds", Real(tail) < bound}}
                   .dump()
            << "\n";
      } else if (bounds_kind == "E") {
        out << report_json(verify_boundE(bounds_base, bounds_r, eps, bounds_n, effective_budget())).dump() << "\n";
      } else {
        out << report_json(
                   verify_boundA(bounds_base, eps, bounds_t, bounds_r, bounds_n, effective_budget(), bounds_workers))
                   .dump()
            << "\n";
      }
    };
  });

  // construct-pair
  std::string cp_mode = "relaxed";
  std::size_t cp_steps = 0;
  bool cp_steps_set = false;
  std::string cp_schedule;
  std::string cp_checkpoint;
  std::string cp_emit = "digits";
  std::string cp_rule = "largest";
  std::string cp_ell_base = "b";
  std::uint32_t cp_base = 2;
  unsigned cp_workers = 1;
  bool cp_resume = false;
  auto* construct = app.add_subcommand("construct-pair", "Nested cylinder construction of a word pair");
  construct->add_option("--mode", cp_mode, "paper|relaxed")->check(CLI::IsMember({"paper", "relaxed"}));
  construct->add_option_function<std::size_t>(
      "--steps",
      [&](const std::size_t& s) {
        cp_steps = s;
        cp_steps_set = true;
      },
      "Number of steps (paper mode: until refused)");
  construct->add_option("--schedule", cp_schedule, "Relaxed schedule JSON (inline or file)");
  construct->add_option("--checkpoint", cp_checkpoint, "Checkpoint file written after every step");
  construct->add_flag("--resume", cp_resume, "Resume from --checkpoint");
  construct->add_option("--emit", cp_emit, "digits|json")->check(CLI::IsMember({"digits", "json"}));
  construct->add_option("--rule", cp_rule, "largest|threshold")->check(CLI::IsMember({"largest", "threshold"}));
  construct->add_option("--ell-base", cp_ell_base, "b|e (paper mode)")->check(CLI::IsMember({"b", "e"}));
  construct->add_option("--base", cp_base, "Alphabet size");
  construct->add_option("--workers", cp_workers, "Worker threads");
  budget_option(construct);
  construct->callback([&] {
    action = [&] {
      Schedule schedule = cp_mode == "paper" ? Schedule::paper(cp_base, cp_ell_base == "e")
                                             : (cp_schedule.empty()
                                                    ? Schedule::relaxed(cp_base, {}, 2, 1, Rational(9, 20))
                                                    : Schedule::from_json(load_json_argument(cp_schedule)));
      ConstructionOptions options;
      options.budget = effective_budget();
      options.workers = cp_workers;
      options.rule = cp_rule == "largest" ? SelectionRule::largest : SelectionRule::threshold;
      options.steps = cp_steps_set ? cp_steps : (cp_mode == "paper" ? std::size_t{1} << 20 : 0);
      if (cp_resume) {
        if (cp_checkpoint.empty()) {
          throw UsageError("--resume needs --checkpoint");
        }
        options.resume = Checkpoint::from_json(load_json_argument(cp_checkpoint));
      }
      auto write_checkpoint = [&](const Checkpoint& c) {
        if (cp_checkpoint.empty()) {
          return;
        }
        std::ofstream file(cp_checkpoint);
        file << c.to_json().dump() << "\n";
      };
      auto emit = [&](std::size_t step, const CylinderPair& c, const std::optional<ExactMeasure>& m) {
        if (cp_emit == "digits") {
          out << step << " " << cylinder_text(c) << std::endl;
        } else {
          json line = {{"step", step}, {"u", c.u.to_string()}, {"v", c.v.to_string()}};
          if (m) {
            line["measure"] = m->to_string();
          }
          out << line.dump() << std::endl;
        }
      };
      if (!options.resume) {
        emit(0, CylinderPair(Alphabet(cp_base)), std::nullopt);
      }
      Checkpoint running;
      running.schedule_hash = schedule.hash();
      running.u = running.v = FiniteWord(Alphabet(cp_base));
      if (options.resume) {
        running = *options.resume;
      }
      options.on_step = [&](const StepRecord& r) {
        emit(r.step + 1, r.cylinder, r.children[r.chosen]);
        running.step = r.step + 1;
        running.u = r.cylinder.u;
        running.v = r.cylinder.v;
        running.measures.push_back(r.children[r.chosen].to_string());
        write_checkpoint(running);
      };
      const ConstructionResult result = construct_pair(schedule, options);
      write_checkpoint(result.checkpoint);
      if (result.refusal) {
        json diag = {{"error", "budget"},
                     {"step", result.refusal->step},
                     {"required", result.refusal->required},
                     {"budget", result.refusal->budget},
                     {"completed_steps", result.checkpoint.step}};
        if (schedule.mode() == Schedule::Mode::paper) {
          diag["n0"] = schedule.n0();
          diag["checkpoint_length"] = schedule.checkpoint(result.refusal->step + 1);
        }
        err << diag.dump() << "\n";
        throw BudgetExceeded("", result.refusal->required, result.refusal->budget);
      }
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ExitCode::ok : ExitCode::usage;
  }
  if (!action) {
    return ExitCode::usage;
  }
  try {
    action();
    out.flush();
    return ExitCode::ok;
  } catch (const BudgetExceeded& e) {
    if (*e.what() != '\0') {
      err << json{{"error", "budget"}, {"message", e.what()}, {"required", e.required()}, {"budget", e.budget()}}
                 .dump()
          << "\n";
    }
    return ExitCode::budget;
  } catch (const ValidationError& e) {
    if (*e.what() != '\0') {
      err << json{{"error", "validation"}, {"message", e.what()}}.dump() << "\n";
    }
    return ExitCode::validation;
  } catch (const Error& e) {
    err << json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
    return ExitCode::usage;
  } catch (const json::exception& e) {
    err << json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
    return ExitCode::usage;
  }
}

}  // namespace normfsi::cli
