#include "fta/report.hpp"

#include <sstream>

#include <json.hpp>

namespace fta {

namespace {

std::vector<int> positions(const VarSet& s,
                           const std::vector<Variable>& params) {
  std::vector<int> out;
  for (size_t i = 0; i < params.size(); ++i)
    if (s.contains(params[i])) out.push_back(static_cast<int>(i) + 1);
  return out;
}

}  // namespace

ReportData build_report(const AnalysisResult& result, const VarTable& vt,
                        const std::vector<EntryResult>& entries,
                        TermArena& arena) {
  (void)arena;
  ReportData data;
  for (const auto& [key, s] : result.summaries) {
    ReportData::Pred p;
    p.name = key.first;
    p.arity = key.second;
    p.finite_params = positions(s.h, s.params);
    for (const VarSet& g : s.p.sh())
      p.sharing.groups.push_back(positions(g, s.params));
    p.sharing.free = positions(s.p.free(), s.params);
    p.sharing.linear = positions(s.p.lin(), s.params);
    p.fd_formula = s.mgr->sop_string(s.fd, vt);
    p.gd_formula = s.mgr->sop_string(s.gd, vt);
    p.reductions_fired = s.reductions_fired;
    data.predicates.push_back(std::move(p));
  }
  data.warnings = result.warnings;
  for (const EntryResult& er : entries) {
    ReportData::Entry e;
    std::ostringstream os;
    os << er.goal.pred << '/' << er.goal.args.size();
    e.goal = os.str();
    for (Variable v : er.goal_vars)
      if (er.state.h.contains(v)) e.finite_vars.push_back(vt.name(v));
    e.fd_formula = er.mgr->sop_string(er.state.fd, vt);
    e.gd_formula = er.mgr->sop_string(er.state.gd, vt);
    data.entries.push_back(std::move(e));
  }
  return data;
}

std::string render_text(const ReportData& data) {
  std::ostringstream os;
  auto int_set = [&](const std::vector<int>& v) {
    std::ostringstream o;
    o << '{';
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) o << ',';
      o << v[i];
    }
    o << '}';
    return o.str();
  };
  for (const auto& p : data.predicates) {
    os << p.name << '/' << p.arity << '\n';
    os << "  finite: " << int_set(p.finite_params) << '\n';
    os << "  sharing: groups={";
    for (size_t i = 0; i < p.sharing.groups.size(); ++i) {
      if (i) os << ',';
      os << int_set(p.sharing.groups[i]);
    }
    os << "} free=" << int_set(p.sharing.free)
       << " linear=" << int_set(p.sharing.linear) << '\n';
    os << "  fd: " << p.fd_formula << '\n';
    os << "  gd: " << p.gd_formula << '\n';
    os << "  reductions:";
    if (p.reductions_fired.empty()) os << " none";
    for (const auto& r : p.reductions_fired) os << ' ' << r;
    os << '\n';
  }
  for (const auto& e : data.entries) {
    os << "entry " << e.goal << '\n';
    os << "  finite: {";
    for (size_t i = 0; i < e.finite_vars.size(); ++i) {
      if (i) os << ',';
      os << e.finite_vars[i];
    }
    os << "}\n";
    os << "  fd: " << e.fd_formula << '\n';
    os << "  gd: " << e.gd_formula << '\n';
  }
  for (const auto& w : data.warnings) os << "warning: " << w << '\n';
  return os.str();
}

std::string render_json(const ReportData& data) {
  nlohmann::json j;
  j["predicates"] = nlohmann::json::array();
  for (const auto& p : data.predicates) {
    nlohmann::json jp;
    jp["name"] = p.name;
    jp["arity"] = p.arity;
    jp["finite_params"] = p.finite_params;
    jp["sharing"] = {{"groups", p.sharing.groups},
                     {"free", p.sharing.free},
                     {"linear", p.sharing.linear}};
    jp["fd_formula"] = p.fd_formula;
    jp["gd_formula"] = p.gd_formula;
    jp["reductions_fired"] = p.reductions_fired;
    j["predicates"].push_back(std::move(jp));
  }
  j["warnings"] = data.warnings;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : data.entries) {
    nlohmann::json je;
    je["goal"] = e.goal;
    je["finite_vars"] = e.finite_vars;
    je["fd_formula"] = e.fd_formula;
    je["gd_formula"] = e.gd_formula;
    j["entries"].push_back(std::move(je));
  }
  return j.dump(2) + "\n";
}

ReportData report_from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  ReportData data;
  for (const auto& jp : j.at("predicates")) {
    ReportData::Pred p;
    p.name = jp.at("name").get<std::string>();
    p.arity = jp.at("arity").get<uint32_t>();
    p.finite_params = jp.at("finite_params").get<std::vector<int>>();
    p.sharing.groups =
        jp.at("sharing").at("groups").get<std::vector<std::vector<int>>>();
    p.sharing.free = jp.at("sharing").at("free").get<std::vector<int>>();
    p.sharing.linear = jp.at("sharing").at("linear").get<std::vector<int>>();
    p.fd_formula = jp.at("fd_formula").get<std::string>();
    p.gd_formula = jp.at("gd_formula").get<std::string>();
    p.reductions_fired =
        jp.at("reductions_fired").get<std::vector<std::string>>();
    data.predicates.push_back(std::move(p));
  }
  data.warnings = j.at("warnings").get<std::vector<std::string>>();
  for (const auto& je : j.at("entries")) {
    ReportData::Entry e;
    e.goal = je.at("goal").get<std::string>();
    e.finite_vars = je.at("finite_vars").get<std::vector<std::string>>();
    e.fd_formula = je.at("fd_formula").get<std::string>();
    e.gd_formula = je.at("gd_formula").get<std::string>();
    data.entries.push_back(std::move(e));
  }
  return data;
}

}  // namespace fta
