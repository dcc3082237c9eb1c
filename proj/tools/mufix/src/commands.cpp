//  Copyright 2026 The mufix Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.


#include "mufix_cli/commands.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <random>
#include <regex>
#include <sstream>
#include <thread>
#include <utility>

#include <CLI11.hpp>

#include "mufix/bekic.hpp"
#include "mufix/fixpoint.hpp"
#include "mufix/monofn.hpp"

namespace mufix::cli {

namespace {

using nlohmann::json;

json elems(std::span<const Elem> point) {
  json out = json::array();
  for (const Elem& e : point) out.push_back(e.to_string());
  return out;
}

json header(const char* command, const ProblemFile& problem) {
  json j;
  j["command"] = command;
  j["input"] = problem.source;
  j["coordinates"] = problem.arity();
  json lattices = json::array();
  for (const Lattice& l : problem.domain) lattices.push_back(l.name());
  j["lattices"] = std::move(lattices);
  return j;
}

std::string tuple_text(const json& values) {
  std::string out = "(";
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k > 0) out += ",";
    out += values[k].get<std::string>();
  }
  return out + ")";
}

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

std::vector<Elem> shift_values(const Lattice& l, const CheckOptions& options,
                               std::uint64_t salt) {
  std::vector<Elem> all = enumerate(l);
  if (all.size() <= options.max_values || options.max_values < 2) return all;
  std::vector<Elem> middle(all.begin() + 1, all.end() - 1);
  std::vector<Elem> out{all.front(), all.back()};
  std::mt19937_64 rng(options.seed + salt);
  std::sample(middle.begin(), middle.end(), std::back_inserter(out), options.max_values - 2,
              rng);
  return out;
}

std::string render_solve(const json& r) {
  std::ostringstream os;
  os << "lfp = " << tuple_text(r["lfp"]) << "\n";
  os << "iterations = " << r["iterations"].get<std::size_t>() << "\n";
  return os.str();
}

std::string render_bekic(const json& r) {
  std::ostringstream os;
  const json& which = r["evaluated"];
  for (std::size_t k = 0; k < which.size(); ++k) {
    os << "nested x" << which[k].get<std::size_t>() << " = "
       << r["nested"][k].get<std::string>() << "\n";
  }
  return os.str();
}

std::string render_check(const json& r) {
  std::ostringstream os;
  const std::size_t n = r["coordinates"];
  for (std::size_t i = 0; i < n; ++i) {
    os << "bekic x" << i + 1 << ": lfp " << r["lfp"][i].get<std::string>() << ", nested "
       << r["nested"][i].get<std::string>() << "  " << verdict(r["equal"][i]) << "\n";
  }
  for (const json& c : r["claim"]) {
    os << "claim x" << c["coordinate"].get<std::size_t>() << ": "
       << c["component"].get<std::string>() << " >= " << c["bound"].get<std::string>()
       << "  " << verdict(c["holds"]) << "\n";
  }
  for (const json& s : r["shift"]) {
    os << "shift i=" << s["i"].get<std::size_t>() << " j=" << s["j"].get<std::size_t>()
       << " a=" << s["a"].get<std::string>() << ": " << s["lhs"].get<std::string>()
       << " = " << s["rhs"].get<std::string>() << "  " << verdict(s["holds"]) << "\n";
  }
  const std::size_t checks = r["checks"];
  const std::size_t failures = r["failures"];
  os << checks - failures << "/" << checks << " checks pass\n";
  return os.str();
}

std::string render_expr(const json& r) {
  std::ostringstream os;
  os << r["expr"].get<std::string>() << "\n";
  os << "mu_count = " << r["mu_count"].get<std::uint64_t>() << "\n";
  return os.str();
}

std::string render_sweep(const json& r) {
  std::ostringstream os;
  for (const json& f : r["failed_instances"]) {
    os << "FAIL instance " << f["instance"].get<std::size_t>() << ": x"
       << f["coordinate"].get<std::size_t>() << " lfp " << tuple_text(f["lfp"])
       << " nested " << tuple_text(f["nested"]) << "\n";
  }
  os << r["passed"].get<std::size_t>() << "/" << r["instances"].get<std::size_t>()
     << " pass\n";
  return os.str();
}

std::string render_error(const json& r) {
  return "error: " + r["error"].get<std::string>() + "\n";
}

}  // namespace

Report solve(const ProblemFile& problem) {
  const FixResult<Point> r = lfp_vector(problem.function);
  json j = header("solve", problem);
  j["lfp"] = elems(r.value);
  j["iterations"] = r.iterations;
  return {std::move(j), kExitPass};
}

Report bekic(const ProblemFile& problem, std::optional<std::size_t> coordinate) {
  const std::size_t n = problem.arity();
  if (coordinate && *coordinate >= n) {
    throw RangeError("coordinate " + std::to_string(*coordinate + 1) +
                     " out of range for a system of " + std::to_string(n) + " coordinates");
  }
  NestedEvaluator evaluator(problem.function);
  const BindingMap b0(problem.domain);
  json evaluated = json::array();
  json nested = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    if (coordinate && *coordinate != i) continue;
    evaluated.push_back(i + 1);
    nested.push_back(evaluator.eval(i, b0).to_string());
  }
  json j = header("bekic", problem);
  j["evaluated"] = std::move(evaluated);
  j["nested"] = std::move(nested);
  j["calls"] = evaluator.stats().calls;
  j["cache_hits"] = evaluator.stats().cache_hits;
  return {std::move(j), kExitPass};
}

Report check(const ProblemFile& problem, const CheckOptions& options) {
  const VectorFn& f = problem.function;
  const std::size_t n = problem.arity();
  std::size_t checks = 0;
  std::size_t failures = 0;
  const auto tally = [&](bool ok) {
    ++checks;
    if (!ok) ++failures;
    return ok;
  };

  json j = header("check", problem);
  const BekicReport bk = check_bekic(f);
  j["lfp"] = elems(bk.lfp);
  j["nested"] = elems(bk.nested);
  j["equal"] = json::array();
  for (bool e : bk.equal) j["equal"].push_back(tally(e));
  j["iterations"] = bk.lfp_iterations;

  j["claim"] = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    const ClaimReport c = check_claim(f, i);
    j["claim"].push_back({{"coordinate", i + 1},
                          {"component", c.component.to_string()},
                          {"bound", c.bound.to_string()},
                          {"holds", tally(c.holds)}});
  }

  j["shift"] = json::array();
  const BindingMap b0(problem.domain);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t jj = 0; jj < n; ++jj) {
      if (i == jj) continue;
      for (const Elem& a : shift_values(problem.domain[jj], options, i * n + jj)) {
        const ShiftLemmaReport s = check_shift_lemma(i, jj, b0, a, f);
        j["shift"].push_back({{"i", i + 1},
                              {"j", jj + 1},
                              {"a", a.to_string()},
                              {"lhs", s.lhs.to_string()},
                              {"rhs", s.rhs.to_string()},
                              {"holds", tally(s.holds)}});
      }
    }
  }

  j["checks"] = checks;
  j["failures"] = failures;
  j["pass"] = failures == 0;
  return {std::move(j), failures == 0 ? kExitPass : kExitCheckFailed};
}

Report expr(std::size_t arity, std::size_t coordinate, std::size_t max_arity) {
  if (arity == 0) throw RangeError("arity must be positive");
  if (coordinate >= arity) {
    throw RangeError("coordinate " + std::to_string(coordinate + 1) +
                     " out of range for arity " + std::to_string(arity));
  }
  const MuExpr e = build_nested_expr(arity, coordinate, BindingMap(arity), max_arity);
  json j;
  j["command"] = "expr";
  j["coordinates"] = arity;
  j["coordinate"] = coordinate + 1;
  j["expr"] = print_expr(e);
  j["mu_count"] = count_mu(e);
  return {std::move(j), kExitPass};
}

Report sweep(const SweepOptions& options) {
  if (options.arity == 0) throw RangeError("arity must be positive");
  const std::vector<Lattice> domain(options.arity, options.lattice);

  std::optional<MonotoneFamily> family;
  std::size_t count = options.samples;
  if (options.exhaustive) {
    family = enumerate_monotone(domain);
    count = family->size();
  }

  std::vector<std::optional<BekicReport>> failed(count);
  std::vector<std::exception_ptr> errors(std::max<std::size_t>(options.jobs, 1));
  const auto work = [&](std::size_t worker, std::size_t stride) {
    try {
      for (std::size_t k = worker; k < count; k += stride) {
        const VectorFn f = family ? family->at(k) : random_monotone(domain, options.seed + k);
        BekicReport r = check_bekic(f);
        if (!r.holds()) failed[k] = std::move(r);
      }
    } catch (...) {
      errors[worker] = std::current_exception();
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, std::max<std::size_t>(count, 1));
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < jobs; ++t) threads.emplace_back(work, t, jobs);
    for (std::thread& t : threads) t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  json failures = json::array();
  for (std::size_t k = 0; k < count; ++k) {
    if (!failed[k]) continue;
    failures.push_back({{"instance", k},
                        {"coordinate", *failed[k]->first_mismatch + 1},
                        {"lfp", elems(failed[k]->lfp)},
                        {"nested", elems(failed[k]->nested)}});
  }
  const std::size_t bad = failures.size();

  json j;
  j["command"] = "sweep";
  j["lattice"] = options.lattice.name();
  j["coordinates"] = options.arity;
  j["mode"] = options.exhaustive ? "exhaustive" : "sampled";
  if (!options.exhaustive) j["seed"] = options.seed;
  j["instances"] = count;
  j["passed"] = count - bad;
  j["failed"] = bad;
  j["equal"] = bad == 0;
  j["failed_instances"] = std::move(failures);
  return {std::move(j), bad == 0 ? kExitPass : kExitCheckFailed};
}

Lattice parse_lattice_name(std::string_view name) {
  static const std::regex pattern(R"((chain|powerset)(?:(\d+)|\((\d+)\)))");
  std::cmatch m;
  if (!std::regex_match(name.begin(), name.end(), m, pattern)) {
    throw ConstructionError("unknown lattice '" + std::string(name) +
                            "'; expected chain<k> or powerset<m>");
  }
  const std::string digits = m[2].matched ? m[2].str() : m[3].str();
  if (digits.size() > 9) throw ConstructionError("lattice parameter out of range: " + digits);
  const auto p = static_cast<std::uint32_t>(std::stoul(digits));
  return m[1] == "chain" ? Lattice::chain(p) : Lattice::powerset(p);
}

std::string render_text(const json& report) {
  if (report.contains("error")) return render_error(report);
  const std::string command = report.at("command");
  if (command == "solve") return render_solve(report);
  if (command == "bekic") return render_bekic(report);
  if (command == "check") return render_check(report);
  if (command == "expr") return render_expr(report);
  if (command == "sweep") return render_sweep(report);
  throw PreconditionError("no text renderer for command '" + command + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Least fixpoints, nested mu-expressions and Bekic checks on finite lattices",
               "mufix"};
  app.require_subcommand(1, 1);
  bool json_output = false;
  app.add_flag("--json", json_output, "Print a JSON report");

  std::string input;
  std::size_t coordinate = 0;
  std::size_t arity = 0;
  std::size_t max_arity = kDefaultMaxExprArity;
  CheckOptions check_options;
  SweepOptions sweep_options;
  std::string lattice_name;

  CLI::App* solve_cmd = app.add_subcommand("solve", "Vectorial least fixpoint by Kleene iteration");
  solve_cmd->add_option("--input,-i", input, "Problem file")->required();

  CLI::App* bekic_cmd = app.add_subcommand("bekic", "Nested scalar fixpoint per coordinate");
  bekic_cmd->add_option("--input,-i", input, "Problem file")->required();
  CLI::Option* bekic_coord =
      bekic_cmd->add_option("--coordinate,-c", coordinate, "Coordinate (from 1)")
          ->check(CLI::PositiveNumber);

  CLI::App* check_cmd =
      app.add_subcommand("check", "Check the Bekic identity, the claim inequality and the shift lemma");
  check_cmd->add_option("--input,-i", input, "Problem file")->required();
  check_cmd->add_option("--seed", check_options.seed, "Seed for sampled shift values")
      ->capture_default_str();
  check_cmd->add_option("--max-values", check_options.max_values,
                        "Shift values per coordinate before sampling")
      ->capture_default_str();

  CLI::App* expr_cmd = app.add_subcommand("expr", "Print the nested mu-expression");
  expr_cmd->add_option("--arity,-n", arity, "Number of coordinates")->required()
      ->check(CLI::PositiveNumber);
  expr_cmd->add_option("--coordinate,-c", coordinate, "Coordinate (from 1)")->required()
      ->check(CLI::PositiveNumber);
  expr_cmd->add_option("--max-arity", max_arity, "Refuse larger arities")->capture_default_str();

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Check the Bekic identity over many monotone functions");
  sweep_cmd->add_option("--lattice,-l", lattice_name, "chain<k> or powerset<m>")->required();
  sweep_cmd->add_option("--arity,-n", sweep_options.arity, "Number of coordinates")->required()
      ->check(CLI::PositiveNumber);
  CLI::Option* exhaustive_flag =
      sweep_cmd->add_flag("--exhaustive", "Every monotone function (default)");
  CLI::Option* samples_opt =
      sweep_cmd->add_option("--samples", sweep_options.samples, "Random monotone functions");
  exhaustive_flag->excludes(samples_opt);
  sweep_cmd->add_option("--seed", sweep_options.seed, "Seed of instance 0")
      ->capture_default_str();
  sweep_cmd->add_option("--jobs,-j", sweep_options.jobs, "Worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  for (CLI::App* sub : {solve_cmd, bekic_cmd, check_cmd, expr_cmd, sweep_cmd}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInputError;
  }

  try {
    Report report;
    if (solve_cmd->parsed()) {
      report = solve(parse_problem(input));
    } else if (bekic_cmd->parsed()) {
      std::optional<std::size_t> which;
      if (*bekic_coord) which = coordinate - 1;
      report = bekic(parse_problem(input), which);
    } else if (check_cmd->parsed()) {
      report = check(parse_problem(input), check_options);
    } else if (expr_cmd->parsed()) {
      report = expr(arity, coordinate - 1, max_arity);
    } else {
      sweep_options.lattice = parse_lattice_name(lattice_name);
      sweep_options.exhaustive = samples_opt->count() == 0;
      report = sweep(sweep_options);
    }
    out << (json_output ? report.data.dump(2) + "\n" : render_text(report.data));
    return report.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (json_output) {
      out << json{{"error", e.what()}, {"exit_code", kExitInputError}}.dump(2) << "\n";
    }
    return kExitInputError;
  }
}

}  // namespace mufix::cli
