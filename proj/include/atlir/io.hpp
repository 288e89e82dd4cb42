// JSON file formats and graph exports.
//
//   CGS  {"agents","states","props","label","obs","actions","avail","delta"}
//   TM   {"states","alphabet","q0","blank","delta":[[q,a,q',a',"L"|"R"],...]}
//   job  {"cgs","state","formula","bound"}
//
// Writers emit keys in a fixed order and lists in id order, so a loaded file
// saved once is a fixed point of load/save.

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "atlir/cgs.hpp"
#include "atlir/comptree.hpp"
#include "atlir/mc.hpp"
#include "atlir/reduction.hpp"
#include "atlir/strategy.hpp"
#include "atlir/turing.hpp"

namespace atlir {

using Json = nlohmann::ordered_json;

/// Malformed document: bad JSON, missing keys, wrong types, unknown names.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed document describing an ill-formed CGS.
class InvalidCgs : public std::runtime_error {
 public:
  explicit InvalidCgs(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

Json cgs_to_json(const Cgs& g);
/// Throws ParseError, and InvalidCgs unless allow_invalid.
Cgs cgs_from_json(const Json& j, bool allow_invalid = false);
std::string dump_cgs(const Cgs& g);
Cgs load_cgs(const std::filesystem::path& path, bool allow_invalid = false);
void save_cgs(const Cgs& g, const std::filesystem::path& path);

Json machine_to_json(const TuringMachine& m);
/// Throws ParseError; does not validate the machine.
TuringMachine machine_from_json(const Json& j);
TuringMachine load_machine(const std::filesystem::path& path);

struct Job {
  std::string cgs;  // path, relative to the job file
  std::string state;
  std::string formula;
  int bound = 0;
};
Job job_from_json(const Json& j);

Json dump_to_json(const Cgs& g, const StrategyDump& dump);
StrategyDump dump_from_json(const Cgs& g, const Json& j);

/// Deterministic verdict payload; no timing.
Json verdict_to_json(const Cgs& g, const Verdict& v);
Json claim_report_to_json(const ClaimReport& r);

/// Nodes "state | props", edges "(a1,...,ak)".
std::string tree_to_dot(const Cgs& g, const ComputationTree& t,
                        const std::vector<std::string>& comments = {});
/// {"level_0": [...], ...} with each level in the anchored order when it is
/// total, and in insertion order otherwise.
Json levels_to_json(const Cgs& g, const ComputationTree& t, std::span<const StateId> anchors);

}  // namespace atlir
