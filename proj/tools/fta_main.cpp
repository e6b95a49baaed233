#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fta/parser.hpp"
#include "fta/report.hpp"

namespace {

struct Options {
  std::string file;
  std::vector<std::string> entries;
  std::string domain = "hp-fd-gd";
  unsigned max_iterations = 100;
  bool dump_fixpoint = false;
  uint64_t seed = 0;
  std::string format = "text";
};

int run_analyze(const Options& opt) {
  std::ifstream in(opt.file);
  if (!in) {
    std::cerr << "error: file not found: " << opt.file << "\n";
    return 1;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  fta::AnalyzerOptions aopt;
  if (opt.domain == "hp")
    aopt.domain = fta::DomainLevel::HP;
  else if (opt.domain == "hp-fd")
    aopt.domain = fta::DomainLevel::HP_FD;
  else
    aopt.domain = fta::DomainLevel::HP_FD_GD;
  aopt.max_iterations = opt.max_iterations;
  aopt.dump_fixpoint = opt.dump_fixpoint;

  try {
    fta::TermArena arena;
    fta::VarTable vt;
    fta::Program program = fta::parse_program(buf.str(), arena, vt);
    fta::Analyzer analyzer(arena, vt, std::move(program), aopt);
    fta::AnalysisResult result = analyzer.analyze();
    std::vector<fta::EntryResult> entry_results;
    for (const std::string& spec : opt.entries) {
      auto slash = spec.rfind('/');
      if (slash == std::string::npos) {
        std::cerr << "error: --entry expects NAME/ARITY, got: " << spec
                  << "\n";
        return 2;
      }
      std::string name = spec.substr(0, slash);
      uint32_t arity =
          static_cast<uint32_t>(std::stoul(spec.substr(slash + 1)));
      entry_results.push_back(
          analyzer.specialize_entry(result, name, arity));
    }
    if (opt.dump_fixpoint)
      for (const auto& line : result.fixpoint_trace)
        std::cerr << line << "\n";
    fta::ReportData data = build_report(result, vt, entry_results, arena);
    if (opt.format == "json")
      std::cout << render_json(data);
    else
      std::cout << render_text(data);
    return 0;
  } catch (const fta::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const fta::AnalysisError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-tree analyzer for logic programs over rational trees"};
  app.require_subcommand(1);

  Options opt;
  CLI::App* analyze = app.add_subcommand("analyze", "Analyze a program");
  analyze->add_option("file", opt.file, "Program file")->required();
  analyze->add_option("--entry", opt.entries,
                      "Entry goal NAME/ARITY (repeatable)");
  analyze->add_option("--domain", opt.domain, "Domain layers to run")
      ->check(CLI::IsMember({"hp", "hp-fd", "hp-fd-gd"}));
  analyze->add_option("--max-iterations", opt.max_iterations,
                      "Fixpoint iteration cap per SCC");
  analyze->add_flag("--dump-fixpoint", opt.dump_fixpoint,
                    "Print per-iteration states to stderr");
  analyze->add_option("--seed", opt.seed, "Seed for randomized diagnostics");
  analyze->add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return run_analyze(opt);
}
