// Command-line driver: validates group data files and verifies rational
// conjugacy of torsion units order by order.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "zc1/report.hpp"

namespace fs = std::filesystem;
using namespace zc1;

namespace {

std::string resolve_data_path(const std::string& arg) {
  if (fs::exists(arg)) return arg;
  std::vector<fs::path> roots;
  if (const char* env = std::getenv("ZC1_DATA_DIR")) roots.emplace_back(env);
  roots.emplace_back("data");
  for (const auto& root : roots) {
    fs::path p = root / (arg + ".json");
    if (fs::exists(p)) return p.string();
    p = root / arg;
    if (fs::exists(p)) return p.string();
  }
  throw error(errc::io, "cannot find group file: " + arg);
}

struct LoadedGroups {
  GroupData group;
  std::vector<GroupData> quotients;
  const GroupData* quotient_for(const GroupData& g) const {
    if (g.quotients().empty()) return nullptr;
    for (const auto& q : quotients)
      if (q.name() == g.quotients()[0].quotient_name) return &q;
    return nullptr;
  }
};

LoadedGroups load_groups(const std::string& group_arg,
                         const std::vector<std::string>& quotient_args) {
  LoadedGroups out{GroupData::load_file(resolve_data_path(group_arg)), {}};
  for (const auto& qa : quotient_args)
    out.quotients.push_back(GroupData::load_file(resolve_data_path(qa)));
  return out;
}

Toggles toggles_from_flags(const std::vector<std::string>& names,
                           const std::vector<long>& modular, const GroupData& g) {
  Toggles t;
  if (!names.empty()) {
    t.ordinary = t.fusion = t.berman_higman = t.remark2 = t.cohn_livingstone =
        t.central_translation = false;
    bool want_modular = false;
    for (const auto& n : names) {
      if (n == "ordinary") t.ordinary = true;
      else if (n == "modular") want_modular = true;
      else if (n == "fusion") t.fusion = true;
      else if (n == "berman-higman") t.berman_higman = true;
      else if (n == "remark2") t.remark2 = true;
      else if (n == "cohn-livingstone") t.cohn_livingstone = true;
      else if (n == "central-translation") t.central_translation = true;
      else throw error(errc::config, "unknown toggle: " + n);
    }
    if (want_modular && modular.empty()) {
      for (const auto& bt : g.brauer_tables()) t.modular_primes.push_back(bt.p);
    } else if (want_modular) {
      t.modular_primes = modular;
    }
  } else {
    if (!modular.empty()) {
      t.modular_primes = modular;
    } else {
      for (const auto& bt : g.brauer_tables()) t.modular_primes.push_back(bt.p);
    }
  }
  return t;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw error(errc::io, "cannot write " + out_path);
  f << text;
}

int cmd_validate(const std::string& path, const std::vector<std::string>& quotient_args) {
  try {
    LoadedGroups lg = load_groups(path, quotient_args);
    const auto& g = lg.group;
    std::cout << "ok: " << g.name() << " (order " << g.order() << ", " << g.class_count()
              << " classes, " << g.characters().size() << " characters)\n";
    for (const auto& link : g.quotients()) {
      const GroupData* q = lg.quotient_for(g);
      if (q != nullptr) {
        validate_quotient_link(g, link, *q);
        std::cout << "ok: fusion onto " << q->name() << " (kernel size "
                  << link.kernel_class_ids.size() << ")\n";
      } else {
        std::cout << "note: quotient '" << link.quotient_name
                  << "' not supplied; cross-file fusion checks skipped\n";
      }
    }
    return 0;
  } catch (const error& e) {
    std::cerr << (e.category() == errc::io ? "io error: " : "error: ") << e.what() << "\n";
    return exit_code_for(e.category());
  }
}

int run_engine(const RunConfig& cfg, std::optional<long> single_order) {
  LoadedGroups lg = load_groups(cfg.group_path, cfg.quotient_paths);
  const GroupData& g = lg.group;
  const GroupData* q = lg.quotient_for(g);
  if (!g.quotients().empty() && q == nullptr && cfg.toggles.fusion)
    throw error(errc::dependency, "group declares quotient '" + g.quotients()[0].quotient_name +
                                      "' but no --quotient file was supplied");
  auto t0 = std::chrono::steady_clock::now();
  Engine engine(g, q, cfg.toggles);
  std::map<long, OrderVerdict> verdicts;
  if (single_order) {
    verdicts[*single_order] = engine.solve_order(*single_order);
  } else if (!cfg.orders_filter.empty()) {
    for (long n : cfg.orders_filter) verdicts[n] = engine.solve_order(n);
  } else {
    verdicts = engine.verify_zc1();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Report rep = make_report(g.name(), cfg.toggles, verdicts, secs);
  emit(cfg.format == "json" ? rep.to_json(cfg.with_timing) : rep.to_text(cfg.with_timing),
       cfg.out_path);
  return exit_code_for(rep);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification of rational conjugacy for torsion units"};
  app.require_subcommand(1);

  std::string val_path;
  std::vector<std::string> val_quotients;
  auto* validate = app.add_subcommand("validate", "validate a group data file");
  validate->add_option("file", val_path)->required();
  validate->add_option("--quotient", val_quotients, "quotient group file(s)");

  RunConfig cfg;
  std::vector<std::string> toggle_names;
  std::vector<long> modular;
  long order = 0;

  auto add_common = [&](CLI::App* sub, bool with_order) {
    sub->add_option("--group", cfg.group_path)->required();
    sub->add_option("--quotient", cfg.quotient_paths, "quotient group file(s)");
    sub->add_option("--toggles", toggle_names,
                    "restrict to these constraint families (default: all)")
        ->delimiter(',');
    sub->add_option("--modular", modular, "modular primes (default: from the data file)")
        ->delimiter(',');
    sub->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out", cfg.out_path);
    sub->add_flag("--with-timing", cfg.with_timing,
                  "include wall-clock timing (makes reports non-reproducible)");
    if (with_order) sub->add_option("--order", order, "unit order to solve")->required();
  };

  auto* solve = app.add_subcommand("solve", "solve a single unit order");
  add_common(solve, true);
  std::vector<long> orders_filter;
  auto* verify = app.add_subcommand("verify", "verify all candidate unit orders");
  add_common(verify, false);
  verify->add_option("--orders", orders_filter, "only these orders")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(val_path, val_quotients);
    // toggles need the group file loaded first to know its modular primes
    LoadedGroups lg = load_groups(cfg.group_path, cfg.quotient_paths);
    cfg.toggles = toggles_from_flags(toggle_names, modular, lg.group);
    cfg.orders_filter = orders_filter;
    if (solve->parsed()) return run_engine(cfg, order);
    return run_engine(cfg, std::nullopt);
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.category());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
