#pragma once

#include <string>
#include <vector>

#include "fta/analyzer.hpp"

namespace fta {

// Everything a report shows, detached from analyzer internals so the text
// rendering can be re-derived from the JSON form.
struct ReportData {
  struct Sharing {
    std::vector<std::vector<int>> groups;  // 1-based parameter positions
    std::vector<int> free;
    std::vector<int> linear;
    friend bool operator==(const Sharing&, const Sharing&) = default;
  };
  struct Pred {
    std::string name;
    uint32_t arity = 0;
    std::vector<int> finite_params;  // 1-based positions
    Sharing sharing;
    std::string fd_formula;
    std::string gd_formula;
    std::vector<std::string> reductions_fired;
    friend bool operator==(const Pred&, const Pred&) = default;
  };
  struct Entry {
    std::string goal;
    std::vector<std::string> finite_vars;
    std::string fd_formula;
    std::string gd_formula;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  std::vector<Pred> predicates;
  std::vector<std::string> warnings;
  std::vector<Entry> entries;

  friend bool operator==(const ReportData&, const ReportData&) = default;
};

ReportData build_report(const AnalysisResult& result, const VarTable& vt,
                        const std::vector<EntryResult>& entries,
                        TermArena& arena);

std::string render_text(const ReportData& data);
std::string render_json(const ReportData& data);
ReportData report_from_json(const std::string& json_text);

}  // namespace fta
