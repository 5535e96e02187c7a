#pragma once

#include <map>
#include <string>
#include <vector>

#include "zc1/solver.hpp"

namespace zc1 {

struct RunConfig {
  std::string group_path;
  std::vector<std::string> quotient_paths;
  Toggles toggles;
  std::vector<long> orders_filter;  // empty = all candidate orders
  std::string format = "text";      // "text" | "json"
  std::string out_path;             // empty = stdout
  bool with_timing = false;         // timing makes reports non-reproducible; off by default
};

struct Report {
  std::string group;
  std::string schema = "zc1-report/1";
  Toggles toggles;
  std::map<long, OrderVerdict> orders;
  bool verified = false;
  double seconds = 0.0;

  std::string to_json(bool with_timing) const;  // byte-stable when !with_timing
  std::string to_text(bool with_timing) const;
};

Report make_report(const std::string& group_name, const Toggles& toggles,
                   const std::map<long, OrderVerdict>& verdicts, double seconds);

// exit codes: 0 verified, 2 open orders exist, 3 data/validation, 4 configuration
int exit_code_for(const Report& r);
int exit_code_for(errc cat);

}  // namespace zc1
