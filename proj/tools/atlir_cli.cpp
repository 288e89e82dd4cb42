// atlir: compile Turing machines to game structures, simulate, check, verify.
//
// Exit codes: 0 ok/true, 1 false or failed verification, 2 parse or usage
// error, 3 invalid machine or structure, 4 s_err reached, 5 unknown.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "atlir/atl.hpp"
#include "atlir/io.hpp"
#include "atlir/mc.hpp"
#include "atlir/reduction.hpp"

using namespace atlir;

namespace {

enum Exit { kOk = 0, kFalse = 1, kParse = 2, kInvalid = 3, kErrReached = 4, kUnknown = 5 };

int fail(int code, const std::string& msg) {
  std::cerr << "atlir: " << msg << "\n";
  return code;
}

int cmd_reduce(const std::string& tm_file, const std::string& out) {
  auto m = load_machine(tm_file);
  for (const auto& w : m.lint()) std::cerr << "warning: " << w << "\n";
  auto r = build_cgs(m);
  save_cgs(r.cgs, out);
  std::cout << "states " << r.cgs.state_count() << "\nactions " << r.cgs.action_count() << "\n";
  return kOk;
}

int cmd_simulate(const std::string& tm_file, int depth, const std::string& format, bool decode) {
  if (depth < 0) return fail(kParse, "depth must be >= 0");
  auto r = build_cgs(load_machine(tm_file));
  auto t = saturate(r.cgs, r.init, simulation_strategy(r), depth);

  std::optional<int> err_level;
  for (std::size_t v = 0; v < t.size(); ++v)
    if (t.label(static_cast<NodeId>(v)) == r.err) {
      int d = t.depth(static_cast<NodeId>(v));
      if (!err_level || d < *err_level) err_level = d;
    }

  // Complete odd levels from 3 on, stopping at the first one holding s_err.
  std::vector<std::pair<int, std::string>> decoded;
  if (decode)
    for (int n = 3; n <= depth; n += 2) {
      if (err_level && n >= *err_level) break;
      if (!is_complete_level(t, n)) break;
      auto d = decode_level(r, t, n);
      auto c = as_configuration(r, d);
      decoded.emplace_back(n, c ? c->str() : d.word());
    }

  if (format == "json") {
    Json j;
    j["depth"] = depth;
    j["levels"] = levels_to_json(r.cgs, t, r.anchors());
    if (decode) {
      Json lines = Json::object();
      for (const auto& [n, w] : decoded) lines["level_" + std::to_string(n)] = w;
      j["decoded"] = lines;
    }
    j["err_level"] = err_level ? Json(*err_level) : Json(nullptr);
    std::cout << j.dump(2) << "\n";
  } else {
    std::vector<std::string> comments;
    for (const auto& [n, w] : decoded) comments.push_back("level " + std::to_string(n) + ": " + w);
    std::cout << tree_to_dot(r.cgs, t, comments);
  }
  if (err_level) return fail(kErrReached, "s_err reached at level " + std::to_string(*err_level));
  return kOk;
}

int cmd_check(std::string cgs_file, std::string state, std::string formula, int bound, const std::string& job_file,
              int jobs, bool allow_invalid) {
  if (!job_file.empty()) {
    auto job = job_from_json(read_json_file(job_file));
    std::filesystem::path p(job.cgs);
    if (p.is_relative()) p = std::filesystem::path(job_file).parent_path() / p;
    cgs_file = p.string();
    state = job.state;
    formula = job.formula;
    bound = job.bound;
  }
  if (cgs_file.empty() || state.empty() || formula.empty())
    return fail(kParse, "check needs CGS STATE FORMULA or --job");
  auto g = load_cgs(cgs_file, allow_invalid);
  auto f = parse_formula(formula);
  auto s = g.state(state);
  auto t0 = std::chrono::steady_clock::now();
  auto v = check(g, s, f, bound, CheckOptions{jobs});
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Json out;
  out["verdict"] = verdict_to_json(g, v);
  out["timing"] = {{"seconds", secs}};
  std::cout << out.dump(2) << "\n";
  switch (v.value) {
    case Truth::True: return kOk;
    case Truth::False: return kFalse;
    default: return kUnknown;
  }
}

int cmd_verify(const std::string& tm_file, int depth, bool json) {
  if (depth < 3) return fail(kParse, "depth must be >= 3");
  auto report = verify_claims(load_machine(tm_file), depth);
  if (json) {
    std::cout << claim_report_to_json(report).dump(2) << "\n";
  } else {
    std::printf("%-6s %-10s %5s  %-4s  %s\n", "claim", "subclaim", "level", "", "detail");
    for (const auto& row : report.rows)
      std::printf("%-6s %-10s %5d  %-4s  %s\n", row.claim.c_str(), row.subclaim.c_str(), row.level,
                  row.pass ? "PASS" : "FAIL", row.detail.c_str());
    if (report.err_level) std::printf("s_err first at level %d\n", *report.err_level);
  }
  return report.all_pass() ? kOk : kFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ATL model checking under imperfect information and perfect recall"};
  app.require_subcommand(1);

  std::string tm_file, out_file, cgs_file, state, formula, job_file, format = "dot";
  int depth = 7, bound = 0, jobs = 1;
  bool decode = false, allow_invalid = false, json = false;

  auto* reduce = app.add_subcommand("reduce", "Compile a Turing machine to a game structure");
  reduce->add_option("TM", tm_file, "machine file")->required();
  reduce->add_option("OUT", out_file, "output CGS file")->required();

  auto* simulate = app.add_subcommand("simulate", "Saturate the tree under the simulation strategy");
  simulate->add_option("TM", tm_file, "machine file")->required();
  simulate->add_option("-d,--depth", depth, "tree depth");
  simulate->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  simulate->add_flag("--decode", decode, "decode complete odd levels");

  auto* chk = app.add_subcommand("check", "Bounded check of a formula at a state");
  chk->add_option("CGS", cgs_file, "CGS file");
  chk->add_option("STATE", state, "state name");
  chk->add_option("FORMULA", formula, "formula");
  chk->add_option("-b,--bound", bound, "search bound");
  chk->add_option("--job", job_file, "job file with cgs, state, formula and bound");
  chk->add_option("--jobs", jobs, "threads for the strategy search (0 = all)");
  chk->add_flag("--allow-invalid", allow_invalid, "load structures that fail validation");

  auto* verify = app.add_subcommand("verify", "Check the simulation invariants of the compiled structure");
  verify->add_option("TM", tm_file, "machine file")->required();
  verify->add_option("-d,--depth", depth, "tree depth (>= 3)");
  verify->add_flag("--json", json, "print the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (*reduce) return cmd_reduce(tm_file, out_file);
    if (*simulate) return cmd_simulate(tm_file, depth, format, decode);
    if (*chk) return cmd_check(cgs_file, state, formula, bound, job_file, jobs, allow_invalid);
    if (*verify) return cmd_verify(tm_file, depth, json);
  } catch (const InvalidMachine& e) {
    return fail(kInvalid, e.what());
  } catch (const InvalidCgs& e) {
    std::ostringstream msg;
    msg << e.what();
    for (const auto& v : e.violations()) msg << "\n  " << v.detail;
    return fail(kInvalid, msg.str());
  } catch (const ParseError& e) {
    return fail(kParse, e.what());
  } catch (const SyntaxError& e) {
    return fail(kParse, e.what());
  } catch (const BoundTooSmall& e) {
    return fail(kParse, e.what());
  } catch (const LookupError& e) {
    return fail(kParse, e.what());
  }
  return kParse;
}
