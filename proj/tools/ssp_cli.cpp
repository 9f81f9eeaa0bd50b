// Command-line front end: enumerate, analyze, verify, repr, oracle.
//
// Exit codes: 0 success, 1 theorem/oracle violation, 2 usage or parse error,
// 3 capacity exceeded.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "ssp/enumerate.hpp"
#include "ssp/golden.hpp"
#include "ssp/io.hpp"
#include "ssp/matrep.hpp"
#include "ssp/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

struct RunConfig {
  int p = 3;
  int max_n = 6;
  unsigned threads = 0;  // 0 = hardware concurrency
  std::size_t brute_force_limit = 1000000;
  std::size_t oracle_limit = 243;
  std::size_t sweep_limit = 729;
  std::string format = "text";
  std::string output;
  std::string input;
  std::string golden_file;
  bool prune = false;
  bool no_timing = false;
  std::uint64_t budget = 0;
  std::string spill;
  std::string mode = "exhaustive";
  std::size_t samples = 100000;
  std::uint64_t seed = 12345;
};

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::fputs(content.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ssp::capacity_error("cannot open output file " + path);
  out << content;
}

std::string read_input_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ssp::parse_error("cannot open input file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string report_text(const ssp::EnumerationReport& rep, bool timing) {
  std::string out = "p = " + std::to_string(rep.p) + "\n";
  out += "   n     class1     class2     class3  class4plus      seconds\n";
  char line[160];
  for (const auto& row : rep.rows) {
    std::snprintf(line, sizeof line, "%4d %10llu %10llu %10llu %11llu %12.3f\n",
                  row.n, static_cast<unsigned long long>(row.class1),
                  static_cast<unsigned long long>(row.class2),
                  static_cast<unsigned long long>(row.class3),
                  static_cast<unsigned long long>(row.class4plus),
                  timing ? row.seconds : 0.0);
    out += line;
  }
  out += "tested " + std::to_string(rep.total_tested) + " candidate chains\n";
  if (rep.truncated) out += "TRUNCATED: test budget exhausted\n";
  if (rep.alpha_order_failures > 0)
    out += "note: " + std::to_string(rep.alpha_order_failures) +
           " candidate maps satisfied the relations but had order > p\n";
  return out;
}

int cmd_enumerate(const RunConfig& cfg) {
  ssp::EnumerateOptions opts;
  opts.threads = cfg.threads;
  opts.prune = cfg.prune;
  opts.test_budget = cfg.budget;
  opts.spill_path = cfg.spill;
  ssp::ConsistencyLog log;
  auto rep = ssp::enumerate_chains(cfg.p, cfg.max_n, opts, &log);

  std::string content;
  if (cfg.format == "csv")
    content = ssp::report_csv(rep, !cfg.no_timing);
  else if (cfg.format == "json")
    content = ssp::report_json(rep, !cfg.no_timing);
  else
    content = report_text(rep, !cfg.no_timing);
  write_output(cfg.output, content);

  bool class4 = false;
  for (const auto& row : rep.rows) class4 |= row.class4plus != 0;
  if (class4) {
    std::fprintf(stderr, "VIOLATION: a group of class >= 4 was enumerated\n");
    return kExitViolation;
  }
  if (rep.truncated) return kExitCapacity;
  return kExitOk;
}

int cmd_analyze(const RunConfig& cfg) {
  ssp::EssentialChain chain = ssp::parse_presentation(read_input_file(cfg.input));
  ssp::Thresholds th;
  th.brute_force = cfg.brute_force_limit;
  auto rep = ssp::analyze_structure(chain, th);
  if (cfg.format == "json")
    write_output(cfg.output, ssp::structure_report_json(rep).dump(2) + "\n");
  else
    write_output(cfg.output, ssp::structure_report_text(rep));
  return rep.violations.empty() ? kExitOk : kExitViolation;
}

int cmd_verify(const RunConfig& cfg) {
  ssp::SweepThresholds th;
  th.structural_order_limit = cfg.sweep_limit;
  auto out = ssp::verify_sweep(cfg.p, cfg.max_n, th, cfg.threads);

  auto line = [](const char* name, std::uint64_t failures) {
    std::printf("%s %s (%llu failures)\n", failures == 0 ? "PASS" : "FAIL",
                name, static_cast<unsigned long long>(failures));
  };
  std::printf("verified %llu consistent chains (p=%d, n <= %d), %llu within "
              "the brute-force limit\n",
              static_cast<unsigned long long>(out.chains_checked), cfg.p,
              cfg.max_n, static_cast<unsigned long long>(out.structural_checked));
  line("cut-off arithmetic c = 2q+r+j", out.cutoff_violations);
  line("metabelian", out.metabelian_failures);
  line("nilpotency class <= 3", out.class_bound_failures);
  line("p = 2 implies class <= 2", out.p2_class_failures);
  line("n = 4 non-abelian cut-off = 3", out.n4_cutoff_failures);
  line("center = <g_{q+1-j}..g_c>, 3*rank >= n", out.center_failures);
  line("triple decomposition", out.triple_failures);
  line("commutator membership window", out.membership_failures);
  line("shifted commutator independence", out.independence_failures);
  line("simple-triple fixpoint trivial", out.simple_triple_failures);
  line("class-2 presentation shape", out.class2_shape_failures);
  line("lift shape over class <= 2 prefixes", out.lift_shape_failures);
  line("class-2 matrix representation faithful", out.matrep_failures);

  if (out.golden_available) {
    std::printf("%s reference counts\n", out.golden_match ? "PASS" : "FAIL");
  }
  if (!cfg.golden_file.empty()) {
    std::string golden = read_input_file(cfg.golden_file);
    std::string ours = ssp::report_csv(out.report, /*timing=*/false);
    if (golden != ours) {
      std::printf("FAIL golden file %s differs\n", cfg.golden_file.c_str());
      return kExitViolation;
    }
    std::printf("PASS golden file %s\n", cfg.golden_file.c_str());
  }
  if (out.alpha_order_failures > 0)
    std::printf("note: %llu candidate maps satisfied the relations but had "
                "order > p (all rejected)\n",
                static_cast<unsigned long long>(out.alpha_order_failures));
  return out.ok() ? kExitOk : kExitViolation;
}

int cmd_repr(const RunConfig& cfg) {
  ssp::EssentialChain chain = ssp::parse_presentation(read_input_file(cfg.input));
  if (!ssp::is_consistent(chain)) {
    std::fprintf(stderr, "input presentation is not consistent\n");
    return kExitUsage;
  }
  auto P = ssp::PcPresentation::compile(chain);
  ssp::AffineRep rep;
  try {
    rep = ssp::build_affine_rep(P);
  } catch (const ssp::validation_error& e) {
    std::fprintf(stderr, "rejected: %s\n", e.what());
    return kExitUsage;
  }
  const bool faithful =
      ssp::verify_representation(P, rep, cfg.brute_force_limit);

  std::string content;
  if (cfg.format == "json") {
    nlohmann::json doc;
    doc["p"] = P.p();
    doc["n"] = P.n();
    doc["dim"] = rep.dim;
    doc["verified"] = faithful;
    auto gens = nlohmann::json::array();
    for (const auto& m : rep.gens) {
      auto rows = nlohmann::json::array();
      for (int r = 0; r < rep.dim; ++r) {
        auto row = nlohmann::json::array();
        for (int c = 0; c < rep.dim; ++c) row.push_back(int(m.at(r, c)));
        rows.push_back(row);
      }
      gens.push_back(rows);
    }
    doc["generators"] = gens;
    content = doc.dump(2) + "\n";
  } else {
    for (std::size_t g = 0; g < rep.gens.size(); ++g) {
      content += "g_" + std::to_string(g + 1) + " ->\n";
      for (int r = 0; r < rep.dim; ++r) {
        for (int c = 0; c < rep.dim; ++c) {
          content += std::to_string(int(rep.gens[g].at(r, c)));
          content += c + 1 < rep.dim ? " " : "\n";
        }
      }
    }
    content += faithful ? "verified: faithful homomorphism\n"
                        : "verification FAILED\n";
  }
  write_output(cfg.output, content);
  return faithful ? kExitOk : kExitViolation;
}

int cmd_oracle(const RunConfig& cfg) {
  ssp::OracleMode mode = cfg.mode == "sampled"
                             ? ssp::OracleMode::sampled(cfg.samples, cfg.seed)
                             : ssp::OracleMode::exhaustive();
  if (!cfg.input.empty()) {
    ssp::EssentialChain chain =
        ssp::parse_presentation(read_input_file(cfg.input));
    bool fast = ssp::is_consistent(chain);
    bool slow = ssp::associativity_oracle(chain, mode, cfg.oracle_limit);
    std::printf("inductive criterion: %s\n", fast ? "consistent" : "inconsistent");
    std::printf("associativity oracle: %s\n", slow ? "consistent" : "inconsistent");
    return fast == slow ? kExitOk : kExitViolation;
  }

  std::uint64_t disagreements = 0, tested = 0;
  ssp::ConsistencyCache cache;
  std::vector<ssp::EssentialChain> level{
      ssp::EssentialChain(ssp::PrimeModulus(cfg.p), 2)};
  for (int n = 3; n <= cfg.max_n; ++n) {
    std::vector<ssp::EssentialChain> next;
    for (const auto& parent : level) {
      std::vector<std::uint8_t> a(static_cast<std::size_t>(n - 2), 0);
      do {
        next.push_back(parent.extended(a));
      } while (ssp::next_extension_vector(a, cfg.p));
    }
    for (const auto& chain : next) {
      ++tested;
      bool fast = ssp::is_consistent(chain, &cache);
      bool slow = ssp::associativity_oracle(chain, mode, cfg.oracle_limit);
      if (fast != slow) {
        ++disagreements;
        std::printf("DISAGREEMENT on:\n%s",
                    ssp::serialize_presentation(chain).c_str());
      }
    }
    level = std::move(next);
  }
  std::printf("compared %llu chains (p=%d, n <= %d): %llu disagreements\n",
              static_cast<unsigned long long>(tested), cfg.p, cfg.max_n,
              static_cast<unsigned long long>(disagreements));
  return disagreements == 0 ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"self-similar polycyclic p-group kernel"};
  app.require_subcommand(1);

  auto add_threads = [&](CLI::App* cmd) {
    cmd->add_option("--threads", cfg.threads,
                    "worker threads (0 = hardware concurrency)")
        ->envname("SSP_THREADS");
  };
  auto add_brute_force = [&](CLI::App* cmd) {
    cmd->add_option("--brute-force-limit", cfg.brute_force_limit,
                    "element ceiling for brute-force checks")
        ->envname("SSP_BRUTE_FORCE_LIMIT");
  };
  auto add_oracle_limit = [&](CLI::App* cmd) {
    cmd->add_option("--oracle-limit", cfg.oracle_limit,
                    "order ceiling for the exhaustive oracle")
        ->envname("SSP_ORACLE_LIMIT");
  };

  auto* enumerate = app.add_subcommand(
      "enumerate", "count consistent presentations by class per n");
  enumerate->add_option("--p", cfg.p, "prime")->required();
  enumerate->add_option("--max-n", cfg.max_n, "largest generator count")
      ->required();
  add_threads(enumerate);
  enumerate->add_flag("--prune", cfg.prune,
                      "skip candidates whose cut-off violates c(n,j)");
  enumerate->add_option("--format", cfg.format, "csv|json|text")
      ->check(CLI::IsMember({"csv", "json", "text"}));
  enumerate->add_option("--output,-o", cfg.output, "output file (default stdout)");
  enumerate->add_flag("--no-timing", cfg.no_timing,
                      "zero the seconds column and drop the timestamp header");
  enumerate->add_option("--budget", cfg.budget,
                        "stop before a level that would exceed this many "
                        "candidate tests (0 = unlimited)");
  enumerate->add_option("--spill", cfg.spill,
                        "keep level frontiers in this file instead of memory");

  auto* analyze = app.add_subcommand("analyze",
                                     "structural report for one presentation");
  analyze->add_option("file", cfg.input, "presentation file")->required();
  analyze->add_option("--format", cfg.format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  analyze->add_option("--output,-o", cfg.output, "output file");
  add_brute_force(analyze);

  auto* verify = app.add_subcommand(
      "verify", "run the theorem suite over an enumeration range");
  verify->add_option("--p", cfg.p, "prime")->required();
  verify->add_option("--max-n", cfg.max_n, "largest generator count")
      ->required();
  add_threads(verify);
  verify->add_option("--sweep-limit", cfg.sweep_limit,
                     "order ceiling for brute-force checks during the sweep")
      ->envname("SSP_SWEEP_LIMIT");
  verify->add_option("--golden", cfg.golden_file,
                     "CSV file that the (timing-free) report must match");

  auto* repr = app.add_subcommand(
      "repr", "affine matrix representation of a class <= 2 presentation");
  repr->add_option("file", cfg.input, "presentation file")->required();
  repr->add_option("--format", cfg.format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  repr->add_option("--output,-o", cfg.output, "output file");
  add_brute_force(repr);

  auto* oracle = app.add_subcommand(
      "oracle", "differential test: inductive criterion vs associativity");
  oracle->add_option("file", cfg.input, "single presentation file");
  oracle->add_option("--p", cfg.p, "prime (sweep mode)");
  oracle->add_option("--max-n", cfg.max_n, "largest generator count (sweep)");
  oracle->add_option("--mode", cfg.mode, "exhaustive|sampled")
      ->check(CLI::IsMember({"exhaustive", "sampled"}));
  oracle->add_option("--samples", cfg.samples, "triples in sampled mode");
  oracle->add_option("--seed", cfg.seed, "sampled-mode RNG seed");
  add_oracle_limit(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(enumerate)) return cmd_enumerate(cfg);
    if (app.got_subcommand(analyze)) return cmd_analyze(cfg);
    if (app.got_subcommand(verify)) return cmd_verify(cfg);
    if (app.got_subcommand(repr)) return cmd_repr(cfg);
    if (app.got_subcommand(oracle)) return cmd_oracle(cfg);
  } catch (const ssp::parse_error& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kExitUsage;
  } catch (const ssp::capacity_error& e) {
    std::fprintf(stderr, "capacity exceeded: %s\n", e.what());
    return kExitCapacity;
  } catch (const ssp::validation_error& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
