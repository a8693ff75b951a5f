#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <json.hpp>

#include "pact/decomp.hpp"
#include "pact/gridtowers.hpp"
#include "pact/harness.hpp"
#include "pact/io.hpp"
#include "pact/rokhlin.hpp"

using nlohmann::json;
using namespace pact;

namespace {

constexpr int kOk = 0;
constexpr int kDomain = 1;
constexpr int kUsage = 2;

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_validate(const std::string& file) {
  const PartialAction pa = read_instance_file(file);
  emit({{"valid", true},
        {"instanceDigest", instance_digest(pa)},
        {"group", pa.group().name()},
        {"carrierSize", pa.size()}});
  return kOk;
}

int cmd_analyze(const std::string& file, const AnalyzeOptions& options) {
  const Report r = analyze(read_instance_file(file), options);
  emit(to_json(r));
  return kOk;
}

int cmd_towers(const std::string& file, int d, std::uint64_t budget) {
  const PartialAction pa = read_instance_file(file);
  SearchOptions so;
  so.budget = budget;
  json out{{"instanceDigest", instance_digest(pa)}, {"d", d}};
  try {
    const TowerSearchResult res = towers_exist(pa, d, so);
    if (const auto* cert = std::get_if<TowerCertificate>(&res)) {
      const CertificateCheck check = verify_certificate(pa, *cert);
      out["exists"] = true;
      out["certificate"] = certificate_json(*cert);
      out["verified"] = check.ok;
      if (!check.ok) out["verification"] = {{"condition", check.condition}, {"witness", check.witness}, {"detail", check.detail}};
    } else {
      out["exists"] = false;
      out["proof"] = nonexistence_json(std::get<NonexistenceProof>(res));
    }
    out["budgetExceeded"] = false;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SearchBudgetExceeded) throw;
    out["exists"] = nullptr;
    out["budgetExceeded"] = true;
    out["budgetNote"] = e.what();
    emit(out);
    std::cerr << e.what() << "\n";
    return kDomain;
  }
  emit(out);
  return kOk;
}

int cmd_globalize(const std::string& file) {
  const PartialAction pa = read_instance_file(file);
  const GlobalizationResult gr = globalize(pa);
  const CheckResult verified = verify_globalization(pa, gr);
  const CheckResult unique = check_globalization_uniqueness(pa, gr);
  emit({{"instanceDigest", instance_digest(pa)},
        {"envelope", serialize_instance(gr.envelope)},
        {"embedding", gr.embedding},
        {"splitting", gr.splitting},
        {"verified", verified.ok},
        {"unique", unique.ok},
        {"detail", verified.ok ? unique.detail : verified.detail}});
  return kOk;
}

int cmd_decompose(const std::string& file, std::uint64_t budget) {
  const PartialAction pa = read_instance_file(file);
  const Stratification strat = stratification(pa);
  const int n = decomposition_degree(pa);
  SearchOptions so;
  so.budget = budget;
  json parts = json::array();
  if (n > 0) {
    for (const auto& part : orbit_type_decomposition(pa, n)) {
      const GlobalSubsystem sub = global_subsystem(pa, part.tau);
      parts.push_back({{"orbitClass", part.orbit_class},
                       {"tau", part.tau},
                       {"points", part.points},
                       {"xTau", part.x_tau},
                       {"stabilizer", part.stabilizer.members},
                       {"globalSubsystem", serialize_instance(sub.action)},
                       {"rokhlinDimension", dimension_json(rokhlin_dimension(sub.action, so).value)}});
    }
  }
  json chain = json::array();
  for (const auto& ext : strat.chain)
    chain.push_back({{"k", ext.k}, {"ideal", ext.ideal.points}, {"total", ext.total.points}, {"quotient", ext.quotient.points}});
  emit({{"instanceDigest", instance_digest(pa)},
        {"degree", n},
        {"strata", strat.strata},
        {"chain", chain},
        {"orbitTypes", parts}});
  return kOk;
}

struct GridArgs {
  std::string example = "example_4_5";
  std::string variant = "corrected";
  std::string parametrization = "levels";
  std::string trace;
  double delta = 0.125;
  double lipschitz = 8.0;
  int m = 64;
  int d = 1;
  int restarts = 20;
  bool search = false;
};

json breakdown_json(const ResidualBreakdown& b) {
  return {{"equivariance", b.equivariance},
          {"orthogonality", b.orthogonality},
          {"partition", b.partition},
          {"total", b.total()},
          {"worstPoint", b.worst_point}};
}

int cmd_grid(const GridArgs& a, std::uint64_t seed) {
  GridExample ex = a.example == "example_4_5"
                       ? example_4_5(a.delta, a.m, a.variant == "literal" ? TowerVariant::Literal : TowerVariant::Corrected)
                   : a.example == "example_3_2" ? example_3_2(a.m)
                                        : example_3_2_global(a.m);
  ex.action.lipschitz = a.lipschitz;
  json out{{"example", a.example}, {"m", a.m}, {"gridSize", ex.action.size()}, {"epsilon", ex.epsilon}};
  if (a.example == "example_4_5") {
    out["delta"] = a.delta;
    out["variant"] = a.variant;
    out["bound"] = example_4_5_bound(ex);
  }
  if (!a.search) {
    const Admissibility adm = check_admissible(ex.action, ex.towers);
    out["towers"] = {{"d", ex.towers.d},
                     {"residual", breakdown_json(residual_breakdown(ex.action, ex.towers, ex.F))},
                     {"admissible", adm.ok},
                     {"worstExcess", adm.worst_excess}};
    emit(out);
    return kOk;
  }
  SearchTuning tuning;
  tuning.parametrization = a.parametrization == "free" ? Parametrization::Free : Parametrization::Levels;
  const TowerSearchOutcome res = search_towers(ex.action, ex.F, ex.epsilon, a.d, a.lipschitz, seed, a.restarts, tuning);
  out["search"] = {{"d", a.d},
                   {"lipschitz", a.lipschitz},
                   {"seed", seed},
                   {"restarts", a.restarts},
                   {"parametrization", a.parametrization},
                   {"bestResidual", res.best_residual},
                   {"bestRestart", res.best_restart},
                   {"breakdown", breakdown_json(residual_breakdown(ex.action, res.towers, ex.F))},
                   {"admissible", check_admissible(ex.action, res.towers).ok}};
  if (!a.trace.empty()) {
    std::ofstream os(a.trace);
    if (!os) throw Error(ErrorCode::ParseError, "cannot write '" + a.trace + "'");
    write_traces(os, res);
  }
  emit(out);
  return kOk;
}

json check_json(const CheckReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures)
    failures.push_back({{"seed", f.seed}, {"instance", json::parse(f.instance)}, {"lhs", f.lhs}, {"rhs", f.rhs}});
  return {{"theorem", r.theorem},
          {"instances", r.instances},
          {"seed", r.seed},
          {"instanceSeeds", r.instance_seeds},
          {"passed", r.ok()},
          {"failures", failures},
          {"notes", r.notes}};
}

int cmd_check(std::uint64_t seed, int count, int threads, std::uint64_t budget) {
  HarnessOptions options;
  options.threads = threads;
  options.search.budget = budget;
  json reports = json::array();
  bool ok = true;
  for (const auto& r : run_all_checks(seed, count, options)) {
    ok = ok && r.ok();
    reports.push_back(check_json(r));
  }
  emit({{"toolVersion", kToolVersion}, {"seed", seed}, {"count", count}, {"reports", reports}});
  return ok ? kOk : kDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial actions of finite groups: Rokhlin dimension, crossed products, tower search"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string file;
  std::uint64_t seed = 0x5eed;
  std::uint64_t budget = kDefaultSearchBudget;

  auto* validate = app.add_subcommand("validate", "Parse and validate an instance");
  validate->add_option("instance", file, "Instance file")->required();

  auto* analyze_cmd = app.add_subcommand("analyze", "Full report for an instance");
  analyze_cmd->add_option("instance", file, "Instance file")->required();
  analyze_cmd->add_option("--seed", seed, "Seed for the numeric block decomposition");
  analyze_cmd->add_option("--budget", budget, "Tower search budget per orbit");

  int d = 0;
  auto* towers = app.add_subcommand("towers", "Decide existence of exact towers with d+1 levels");
  towers->add_option("instance", file, "Instance file")->required();
  towers->add_option("--d", d, "Number of levels minus one")->required()->check(CLI::NonNegativeNumber);
  towers->add_option("--budget", budget, "Tower search budget per orbit");

  auto* glob = app.add_subcommand("globalize", "Enveloping action and central splitting");
  glob->add_option("instance", file, "Instance file")->required();

  auto* decompose = app.add_subcommand("decompose", "Strata, decomposability and global subsystems");
  decompose->add_option("instance", file, "Instance file")->required();
  decompose->add_option("--budget", budget, "Tower search budget per orbit");

  GridArgs grid_args;
  auto* grid = app.add_subcommand("grid", "Discretized interval examples and numeric tower search");
  grid->add_option("--example", grid_args.example, "example_4_5, example_3_2 or example_3_2_global")
      ->check(CLI::IsMember({"example_4_5", "example_3_2", "example_3_2_global"}));
  grid->add_option("--m", grid_args.m, "Grid points per unit length");
  grid->add_option("--delta", grid_args.delta, "Plateau half-width (example_4_5)");
  grid->add_option("--variant", grid_args.variant, "literal or corrected (example_4_5)")
      ->check(CLI::IsMember({"literal", "corrected"}));
  grid->add_flag("--search", grid_args.search, "Search for towers instead of evaluating the explicit ones");
  grid->add_option("--d", grid_args.d, "Levels minus one for the search")->check(CLI::NonNegativeNumber);
  grid->add_option("--restarts", grid_args.restarts, "Search restarts")->check(CLI::PositiveNumber);
  grid->add_option("--lipschitz", grid_args.lipschitz, "Lipschitz cap L");
  grid->add_option("--parametrization", grid_args.parametrization, "levels or free")
      ->check(CLI::IsMember({"levels", "free"}));
  grid->add_option("--trace", grid_args.trace, "Write the per-restart residual table here");
  grid->add_option("--seed", seed, "Search seed");

  int count = 100, threads = 1;
  auto* check = app.add_subcommand("check", "Seeded theorem checks on a random corpus");
  check->add_option("--seed", seed, "Corpus seed");
  check->add_option("--count", count, "Instances per check")->check(CLI::PositiveNumber);
  check->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  check->add_option("--budget", budget, "Tower search budget per orbit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*validate) return cmd_validate(file);
    if (*analyze_cmd) return cmd_analyze(file, {seed, budget});
    if (*towers) return cmd_towers(file, d, budget);
    if (*glob) return cmd_globalize(file);
    if (*decompose) return cmd_decompose(file, budget);
    if (*grid) return cmd_grid(grid_args, seed);
    if (*check) return cmd_check(seed, count, threads, budget);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kDomain;
  }
  return kUsage;
}
