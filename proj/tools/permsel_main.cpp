#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "permsel/ballean.hpp"
#include "permsel/cellular.hpp"
#include "permsel/decompose.hpp"
#include "permsel/document.hpp"
#include "permsel/error.hpp"
#include "permsel/oracle.hpp"

namespace {

using namespace permsel;

// Outcomes: 0 success, 1 failed check, 2 parse/validation or usage,
// 3 symmetry refusal, 4 base-axiom failure, 5 cap exceeded.
int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSymmetric:
      return 3;
    case ErrorKind::InvalidBase:
    case ErrorKind::NotEquivalence:
      return 4;
    case ErrorKind::CapExceeded:
      return 5;
    default:
      return 2;
  }
}

void print_error(const Error& error) {
  std::cerr << "permsel: " << error_kind_name(error.kind());
  if (error.line() > 0) {
    std::cerr << " at line " << error.line() << ", column " << error.column();
  }
  std::cerr << ": " << error.what();
  if (!error.witness_a().empty()) {
    std::cerr << "; witness (" << error.witness_a();
    if (!error.witness_b().empty()) {
      std::cerr << "," << error.witness_b();
    }
    std::cerr << ")";
  }
  std::cerr << "\n";
}

/// One machine record: space-separated key=value fields, keys sorted.
std::string record(std::vector<std::pair<std::string, std::string>> fields) {
  std::sort(fields.begin(), fields.end());
  std::string line;
  for (const auto& [key, value] : fields) {
    if (!line.empty()) {
      line += ' ';
    }
    line += key;
    line += '=';
    line += value;
  }
  line += '\n';
  return line;
}

std::string flag(bool value) { return value ? "1" : "0"; }

struct CommonOptions {
  std::string format = "text";
  int threads = 1;

  bool machine() const { return format == "machine"; }
};

void add_format_option(CLI::App* cmd, CommonOptions& options) {
  cmd->add_option("--format", options.format, "Report format")
      ->check(CLI::IsMember({"text", "machine"}))
      ->capture_default_str();
}

void add_threads_option(CLI::App* cmd, CommonOptions& options) {
  cmd->add_option("--threads", options.threads, "Worker threads for component blocks")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

SelectorFamily::Mode parse_mode(const std::string& mode) {
  return mode == "strict" ? SelectorFamily::Mode::Strict : SelectorFamily::Mode::Relaxed;
}

int cmd_decompose(const std::string& input, const std::string& mode_text,
                  const std::string& output, const CommonOptions& options) {
  SetValuedMap map = read_map_file(input);
  SelectorFamily family = decompose(map, parse_mode(mode_text), options.threads);
  VerificationReport report = verify_family(map, family);

  std::string document = write_family_document(family);
  if (output.empty()) {
    std::cout << document;
  } else {
    std::ofstream file(output, std::ios::binary);
    if (!file) {
      throw Error(ErrorKind::ParseError, "cannot write '" + output + "'");
    }
    file << document;
  }

  if (options.machine()) {
    std::cout << record({{"record", "decompose"},
                         {"elements", std::to_string(map.size())},
                         {"mode", mode_name(family.mode)},
                         {"family", std::to_string(report.family_size)},
                         {"limit", std::to_string(report.size_limit)},
                         {"verified", flag(report.all_ok())}});
  } else {
    std::cout << "# mode: " << mode_name(family.mode) << "\n";
    std::cout << "# family: " << report.family_size << "\n";
    std::cout << "# limit: " << report.size_limit << "\n";
    std::cout << "# verification: " << (report.all_ok() ? "pass" : "fail") << "\n";
  }
  return report.all_ok() ? 0 : 1;
}

void print_verification_witness(const GroundSet& ground, const VerificationWitness& w,
                                bool machine) {
  if (machine) {
    switch (w.kind) {
      case VerificationWitness::Kind::NotBijective:
        std::cout << record({{"record", "witness"},
                             {"kind", "bijective"},
                             {"perm", std::to_string(w.perm_index)},
                             {"pair", format_pair(ground, {w.x, w.y})}});
        break;
      case VerificationWitness::Kind::NotSelector:
        std::cout << record({{"record", "witness"},
                             {"kind", "selector"},
                             {"perm", std::to_string(w.perm_index)},
                             {"pair", format_pair(ground, {w.x, w.y})}});
        break;
      case VerificationWitness::Kind::MissingCoverage:
        std::cout << record({{"record", "witness"},
                             {"kind", "coverage"},
                             {"pair", format_pair(ground, {w.x, w.y})}});
        break;
    }
    return;
  }
  switch (w.kind) {
    case VerificationWitness::Kind::NotBijective:
      std::cout << "witness: perm " << w.perm_index << " not bijective at "
                << format_pair(ground, {w.x, w.y}) << "\n";
      break;
    case VerificationWitness::Kind::NotSelector:
      std::cout << "witness: perm " << w.perm_index << " leaves the image at "
                << format_pair(ground, {w.x, w.y}) << "\n";
      break;
    case VerificationWitness::Kind::MissingCoverage:
      std::cout << "witness: pair " << format_pair(ground, {w.x, w.y})
                << " not covered\n";
      break;
  }
}

int cmd_verify(const std::string& map_path, const std::string& family_path,
               const CommonOptions& options) {
  SetValuedMap map = read_map_file(map_path);
  SelectorFamily family = read_family_file(family_path);
  VerificationReport report = verify_family(map, family);

  if (options.machine()) {
    std::cout << record({{"record", "verify"},
                         {"bijective", flag(report.bijective_ok)},
                         {"selector", flag(report.selector_ok)},
                         {"coverage", flag(report.coverage_ok)},
                         {"size_bound", flag(report.size_bound_ok)},
                         {"family", std::to_string(report.family_size)},
                         {"limit", std::to_string(report.size_limit)},
                         {"result", flag(report.all_ok())}});
  } else {
    std::cout << "bijective: " << (report.bijective_ok ? "pass" : "fail") << "\n";
    std::cout << "selector: " << (report.selector_ok ? "pass" : "fail") << "\n";
    std::cout << "coverage: " << (report.coverage_ok ? "pass" : "fail") << "\n";
    std::cout << "size: " << report.family_size << " of " << report.size_limit
              << (report.size_bound_ok ? " (pass)" : " (fail)") << "\n";
  }
  for (const auto& witness : report.witnesses) {
    print_verification_witness(*map.ground(), witness, options.machine());
  }
  if (!options.machine()) {
    std::cout << "result: " << (report.all_ok() ? "pass" : "fail") << "\n";
  }
  return report.all_ok() ? 0 : 1;
}

void print_base_report(const CoarseBase& base, const BaseReport& report) {
  for (const auto& failure : report.diagonal_failures) {
    std::cerr << "permsel: base: '" << failure.name << "' misses "
              << format_pair(*base.ground, {failure.x, failure.x}) << "\n";
  }
  for (const auto& failure : report.composition_failures) {
    std::cerr << "permsel: base: " << failure.left << "*" << failure.right
              << " fits no member;";
    for (const auto& [name, pair] : failure.missing) {
      std::cerr << " " << name << " lacks " << format_pair(*base.ground, pair);
    }
    std::cerr << "\n";
  }
  for (const auto& failure : report.inverse_failures) {
    std::cerr << "permsel: base: inverse of " << failure.name << " fits no member;";
    for (const auto& [name, pair] : failure.missing) {
      std::cerr << " " << name << " lacks " << format_pair(*base.ground, pair);
    }
    std::cerr << "\n";
  }
  for (const auto& pair : report.uncovered_pairs) {
    std::cerr << "permsel: base: no member covers " << format_pair(*base.ground, pair)
              << "\n";
  }
}

int run_represent_plain(const CoarseBase& base, int depth, const CommonOptions& options) {
  BaseReport base_report = validate_base(base);
  if (!base_report.ok()) {
    print_base_report(base, base_report);
    return 4;
  }

  GSpaceRepresentation rep = represent(base, SelectorFamily::Mode::Relaxed,
                                       options.threads);
  bool all_ok = true;
  for (size_t i = 0; i < rep.entries.size(); ++i) {
    const auto& entry = rep.entries[i];
    const Entourage& member = rep.base.members[i].entourage;
    Entourage expected =
        entry.symmetrized ? member.union_with(member.inverse()) : member;
    bool matches = entry.orbit == expected;
    all_ok = all_ok && matches;
    if (options.machine()) {
      std::cout << record({{"record", "entry"},
                           {"name", entry.generators.name},
                           {"generators", std::to_string(entry.generators.members.size())},
                           {"symmetrized", flag(entry.symmetrized)},
                           {"orbit", flag(matches)}});
    } else {
      std::cout << "entourage " << entry.generators.name << ": "
                << entry.generators.members.size() << " generators, orbit "
                << (matches ? "matches" : "differs")
                << (entry.symmetrized ? " (symmetrized)" : "") << "\n";
    }
  }

  IdealClosureReport ideal = ideal_closure_check(rep, depth);
  for (const auto& entry : ideal.entries) {
    if (options.machine()) {
      std::vector<std::pair<std::string, std::string>> fields{
          {"record", "ideal"},
          {"left", entry.left},
          {"right", entry.right},
          {"dominated", flag(entry.dominated)}};
      if (entry.dominated) {
        fields.emplace_back("word", entry.dominated_by);
      } else if (entry.witness) {
        fields.emplace_back("pair", format_pair(*base.ground, *entry.witness));
      }
      std::cout << record(std::move(fields));
    } else {
      std::cout << "ideal " << entry.left << " x " << entry.right << ": ";
      if (entry.dominated) {
        std::cout << "dominated by " << entry.dominated_by << "\n";
      } else if (entry.witness) {
        std::cout << "undominated at " << format_pair(*base.ground, *entry.witness)
                  << "\n";
      } else {
        std::cout << "undominated\n";
      }
    }
  }
  all_ok = all_ok && ideal.all_dominated();

  if (options.machine()) {
    std::cout << record({{"record", "result"}, {"status", flag(all_ok)}});
  } else {
    std::cout << "result: " << (all_ok ? "pass" : "fail") << "\n";
  }
  return all_ok ? 0 : 1;
}

int run_represent_cellular(const CoarseBase& base, std::uint64_t cap,
                           const CommonOptions& options) {
  CellularRepresentation cellular = represent_cellular(base, cap);
  for (size_t i = 0; i < cellular.checks.size(); ++i) {
    const auto& check = cellular.checks[i];
    const auto& named = cellular.partitions.partitions[i];
    const auto& entry = cellular.rep.entries[i];
    if (options.machine()) {
      std::cout << record({{"record", "partition"},
                           {"name", check.name},
                           {"blocks", std::to_string(named.partition.blocks.size())},
                           {"generators", std::to_string(entry.generators.members.size())},
                           {"finite", flag(check.closure_finite)},
                           {"order", std::to_string(check.closure_order)},
                           {"orbit", flag(check.orbit_matches)}});
    } else {
      std::cout << "partition " << check.name << ": "
                << named.partition.blocks.size() << " blocks, "
                << entry.generators.members.size() << " generators, closure "
                << (check.closure_finite ? "order " + std::to_string(check.closure_order)
                                         : std::string("over cap"))
                << ", orbit " << (check.orbit_matches ? "matches" : "differs") << "\n";
    }
  }
  if (options.machine()) {
    std::cout << record({{"record", "group"},
                         {"finite", flag(cellular.full_group.finite())},
                         {"order", std::to_string(cellular.full_group.order())}});
    std::cout << record({{"record", "result"}, {"status", flag(cellular.all_ok())}});
  } else {
    std::cout << "full group: "
              << (cellular.full_group.finite()
                      ? "order " + std::to_string(cellular.full_group.order())
                      : std::string("over cap"))
              << "\n";
    std::cout << "result: " << (cellular.all_ok() ? "pass" : "fail") << "\n";
  }
  return cellular.all_ok() ? 0 : 1;
}

int cmd_represent(const std::string& input, bool cellular, int depth, std::uint64_t cap,
                  const CommonOptions& options) {
  CoarseBase base = read_ballean_file(input);
  if (cellular) {
    return run_represent_cellular(base, cap, options);
  }
  return run_represent_plain(base, depth, options);
}

int cmd_oracle(const std::string& input, int enumeration_cap, int cover_cap,
               const CommonOptions& options) {
  SetValuedMap map = read_map_file(input);
  std::vector<Permutation> selectors = enumerate_bijective_selectors(map, enumeration_cap);
  MinFamilyResult minimum = min_family_oracle(map, cover_cap);

  if (options.machine()) {
    std::vector<std::pair<std::string, std::string>> fields{
        {"record", "oracle"}, {"selectors", std::to_string(selectors.size())}};
    if (minimum.feasible) {
      fields.emplace_back("minimum", std::to_string(minimum.size));
    } else {
      fields.emplace_back("infeasible", format_pair(*map.ground(), minimum.uncoverable));
    }
    std::cout << record(std::move(fields));
  } else {
    std::cout << "selectors: " << selectors.size() << "\n";
    if (minimum.feasible) {
      std::cout << "minimum: " << minimum.size << "\n";
    } else {
      std::cout << "infeasible: " << format_pair(*map.ground(), minimum.uncoverable)
                << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Permutation families for set-valued maps and coarse bases"};
  app.require_subcommand(1);

  CommonOptions decompose_options;
  std::string decompose_input, decompose_mode = "relaxed", decompose_output;
  CLI::App* decompose_cmd =
      app.add_subcommand("decompose", "Decompose a map document into a selector family");
  decompose_cmd->add_option("input", decompose_input, "Map document")->required();
  decompose_cmd->add_option("--mode", decompose_mode, "strict or relaxed")
      ->check(CLI::IsMember({"strict", "relaxed"}))
      ->capture_default_str();
  decompose_cmd->add_option("--output", decompose_output, "Family document destination");
  add_threads_option(decompose_cmd, decompose_options);
  add_format_option(decompose_cmd, decompose_options);

  CommonOptions verify_options;
  std::string verify_map, verify_family;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Check a selector family against a map document");
  verify_cmd->add_option("map", verify_map, "Map document")->required();
  verify_cmd->add_option("family", verify_family, "Family document")->required();
  add_format_option(verify_cmd, verify_options);

  CommonOptions represent_options;
  std::string represent_input;
  bool represent_cellular_flag = false;
  int represent_depth = 2;
  std::uint64_t represent_cap = kDefaultClosureCap;
  CLI::App* represent_cmd =
      app.add_subcommand("represent", "Realise a coarse base by permutation families");
  represent_cmd->add_option("input", represent_input, "Ballean document")->required();
  represent_cmd->add_flag("--cellular", represent_cellular_flag,
                          "Treat members as partitions and build block groups");
  represent_cmd->add_option("--depth", represent_depth, "Composition depth for the ideal check")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  represent_cmd->add_option("--cap", represent_cap, "Closure size cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_threads_option(represent_cmd, represent_options);
  add_format_option(represent_cmd, represent_options);

  CommonOptions oracle_options;
  std::string oracle_input;
  int oracle_cap = 0;
  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "Exhaustive selector enumeration and minimum cover");
  oracle_cmd->add_option("input", oracle_input, "Map document")->required();
  oracle_cmd->add_option("--cap", oracle_cap,
                         "Ground size cap for both oracles (default 8 / 6)");
  add_format_option(oracle_cmd, oracle_options);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (decompose_cmd->parsed()) {
      return cmd_decompose(decompose_input, decompose_mode, decompose_output,
                           decompose_options);
    }
    if (verify_cmd->parsed()) {
      return cmd_verify(verify_map, verify_family, verify_options);
    }
    if (represent_cmd->parsed()) {
      return cmd_represent(represent_input, represent_cellular_flag, represent_depth,
                           represent_cap, represent_options);
    }
    if (oracle_cmd->parsed()) {
      int enumeration_cap = oracle_cap > 0 ? oracle_cap : kDefaultEnumerationCap;
      int cover_cap = oracle_cap > 0 ? oracle_cap : kDefaultCoverCap;
      return cmd_oracle(oracle_input, enumeration_cap, cover_cap, oracle_options);
    }
  } catch (const Error& e) {
    print_error(e);
    return exit_code_for(e.kind());
  }
  return 2;
}
