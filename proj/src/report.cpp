#include "zc1/report.hpp"

#include <sstream>

#include <json.hpp>

namespace zc1 {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json toggles_json(const Toggles& t) {
  ordered_json j;
  j["ordinary"] = t.ordinary;
  j["modular"] = t.modular_primes;
  j["fusion"] = t.fusion;
  j["berman-higman"] = t.berman_higman;
  j["remark2"] = t.remark2;
  j["cohn-livingstone"] = t.cohn_livingstone;
  j["central-translation"] = t.central_translation;
  return j;
}

ordered_json unit_json(const SolvedUnit& u) {
  ordered_json j;
  ordered_json pa = ordered_json::object();
  for (const auto& [c, v] : u.pa.entries) pa[c] = v;
  j["order"] = u.order;
  j["classes"] = std::move(pa);
  if (!u.children.empty()) {
    ordered_json ch = ordered_json::object();
    for (const auto& [p, s] : u.children) ch[std::to_string(p)] = unit_json(*s);
    j["powers"] = std::move(ch);
  }
  return j;
}

}  // namespace

Report make_report(const std::string& group_name, const Toggles& toggles,
                   const std::map<long, OrderVerdict>& verdicts, double seconds) {
  Report r;
  r.group = group_name;
  r.toggles = toggles;
  r.orders = verdicts;
  r.seconds = seconds;
  r.verified = true;
  for (const auto& [n, v] : verdicts)
    if (v.status == Zc1Status::open) r.verified = false;
  return r;
}

std::string Report::to_json(bool with_timing) const {
  ordered_json j;
  j["schema"] = schema;
  j["group"] = group;
  j["toggles"] = toggles_json(toggles);
  j["orders"] = ordered_json::array();
  for (const auto& [n, v] : orders) {
    ordered_json o;
    o["order"] = n;
    o["status"] = to_string(v.status);
    o["solutions"] = ordered_json::array();
    for (const auto& s : v.solutions) o["solutions"].push_back(unit_json(*s));
    if (v.solutions.empty()) o["note"] = "no torsion units of this order";
    if (!v.notes.empty()) o["details"] = v.notes;
    if (!v.eliminations.first_violation.empty()) {
      ordered_json e = ordered_json::array();
      for (const auto& [tag, count] : v.eliminations.first_violation) {
        ordered_json ee;
        ee["constraint"] = tag;
        ee["excluded_box_points"] = count;
        e.push_back(std::move(ee));
      }
      o["eliminations"] = std::move(e);
    }
    j["orders"].push_back(std::move(o));
  }
  j["zc1"] = verified ? "verified" : "open";
  if (with_timing) j["seconds"] = seconds;
  return j.dump(1) + "\n";
}

std::string Report::to_text(bool with_timing) const {
  std::ostringstream os;
  os << "group " << group << "\n";
  for (const auto& [n, v] : orders) {
    os << "order " << n << ": " << to_string(v.status);
    if (v.solutions.empty()) {
      os << "; no torsion units of this order\n";
    } else {
      os << "; " << v.solutions.size() << " solution(s)\n";
      for (const auto& s : v.solutions) {
        os << "  [";
        bool first = true;
        for (const auto& [c, val] : s->pa.entries) {
          if (!first) os << ", ";
          os << c << ": " << val;
          first = false;
        }
        os << "]\n";
      }
    }
    for (const auto& note : v.notes) os << "  note: " << note << "\n";
    if (!v.eliminations.first_violation.empty()) {
      std::uint64_t total = 0;
      for (const auto& [tag, count] : v.eliminations.first_violation) total += count;
      os << "  eliminated box points: " << total << " (first violation";
      size_t shown = 0;
      for (const auto& [tag, count] : v.eliminations.first_violation) {
        os << (shown == 0 ? ": " : ", ") << tag << " x" << count;
        if (++shown >= 4) {
          os << ", ...";
          break;
        }
      }
      os << ")\n";
    }
  }
  os << "zc1: " << (verified ? "verified" : "open") << "\n";
  if (with_timing) os << "seconds: " << seconds << "\n";
  return os.str();
}

int exit_code_for(const Report& r) { return r.verified ? 0 : 2; }

int exit_code_for(errc cat) {
  switch (cat) {
    case errc::io:
    case errc::parse:
    case errc::validation:
      return 3;
    case errc::config:
    case errc::dependency:
    case errc::invalid_argument:
      return 4;
    default:
      return 1;
  }
}

}  // namespace zc1
