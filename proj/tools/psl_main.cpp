// Command-line front end. Links the C API only; JSON is used here for
// argument assembly and table rendering of reports.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "psl/psl.h"

namespace {

using nlohmann::json;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open '" << path << "'\n";
    std::exit(1);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot write '" << out_path << "'\n";
    std::exit(1);
  }
  out << text << "\n";
}

int finish(psl_status st, char* result, const std::string& out_path) {
  if (result) {
    emit(result, out_path);
    psl_string_free(result);
  }
  if (st == PSL_ERROR) std::cerr << "error: " << psl_last_error() << "\n";
  if (st == PSL_BUDGET_EXCEEDED) std::cerr << "error: " << psl_last_error() << "\n";
  return static_cast<int>(st);
}

psl_morphism* parse_morphism_or_die(const std::string& path) {
  std::string text = read_input(path);
  psl_morphism* m = nullptr;
  psl_status st = psl_morphism_parse(text.c_str(), &m);
  if (st != PSL_OK) {
    std::cerr << "error: " << psl_last_error() << "\n";
    std::exit(static_cast<int>(st));
  }
  return m;
}

std::string bundle_str(const std::vector<long>& twists) {
  // {-2,-2,-1} -> "2O(-2)+O(-1)"
  std::string s;
  std::size_t i = 0;
  while (i < twists.size()) {
    std::size_t j = i;
    while (j < twists.size() && twists[j] == twists[i]) ++j;
    if (!s.empty()) s += "+";
    if (j - i > 1) s += std::to_string(j - i);
    s += "O";
    if (twists[i] != 0) s += "(" + std::to_string(twists[i]) + ")";
    i = j;
  }
  return s;
}

std::string triple_str(const json& t) {
  return "(" + t[0].dump() + "," + t[1].dump() + "," + t[2].dump() + ")";
}

void render_census_table(const json& rep) {
  long chi = 0;
  std::printf("%-9s %-10s %-28s %5s  %s\n", "stratum", "triple", "resolution", "codim", "result");
  for (const auto& row : rep["rows"]) {
    std::string id = row["stratum"].get<std::string>();
    long row_chi = std::stol(id.substr(id.find(',') + 1));
    if (row_chi != chi) {
      chi = row_chi;
      std::printf("M(4,%ld)\n", chi);
    }
    auto src = row["resolution"]["source"].get<std::vector<long>>();
    auto tgt = row["resolution"]["target"].get<std::vector<long>>();
    std::string res = bundle_str(src) + " -> " + bundle_str(tgt);
    std::printf("%-9s %-10s %-28s %5ld  %s (%lu/%lu)\n", id.c_str(),
                triple_str(row["expected_triple"]).c_str(), res.c_str(),
                row["codim"].get<long>(), row["pass"].get<bool>() ? "pass" : "FAIL",
                row["matches"].get<unsigned long>(), row["trials"].get<unsigned long>());
  }
  std::printf("no_matching_stratum: %ld\n", rep["no_matching_stratum"].get<long>());
  std::printf("%s\n", rep["passed"].get<bool>() ? "PASSED" : "FAILED");
}

void render_classify_table(const json& rep) {
  std::printf("r = %ld, chi = %ld (normalized %ld, twist %d)\n", rep["r"].get<long>(),
              rep["chi"].get<long>(), rep["chi_normalized"].get<long>(),
              rep["normalizing_twist"].get<int>());
  std::printf("triple %s\n", triple_str(rep["triple"]).c_str());
  if (rep["matched"].get<bool>()) {
    std::printf("stratum %s, codim %ld, shape %s\n", rep["stratum"].get<std::string>().c_str(),
                rep["codim"].get<long>(),
                rep["shape_match"].get<bool>() ? "matches" : "differs");
  } else {
    std::printf("NO MATCHING STRATUM (potential falsification)\n");
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact presentations, cohomology and stability of one-dimensional "
               "sheaves on the plane supported on quartics"};
  app.require_subcommand(1);

  std::string input = "-", out_path, field = "F7", format = "json", mode = "exact";
  std::string polarization, chi_list;
  unsigned long trials = 0, translates = 200, budget = 200000;
  unsigned long long seed = 1;

  auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("--input", input, "morphism JSON file ('-' for stdin)");
    cmd->add_option("--out", out_path, "write the JSON report to this file");
  };
  auto add_scan_opts = [&](CLI::App* cmd, unsigned long default_trials) {
    trials = default_trials;
    cmd->add_option("--field", field, "Q or F<p>, p prime <= 97 (default F7)");
    cmd->add_option("--trials", trials, "samples per row/space");
    cmd->add_option("--seed", seed, "RNG seed (reports are reproducible per seed)");
    cmd->add_option("--chi", chi_list, "comma-separated chi values to scan");
    cmd->add_option("--budget", budget, "subspace enumeration budget");
    cmd->add_option("--out", out_path, "write the JSON report to this file");
    cmd->add_option("--format", format, "json or table");
  };

  auto* c_validate = app.add_subcommand("validate", "check degree homogeneity of a morphism");
  add_io(c_validate);

  bool verify_omega = false;
  auto* c_cohom = app.add_subcommand("cohomology", "Beilinson table and monad of coker(phi)");
  add_io(c_cohom);
  c_cohom->add_flag("--verify-omega", verify_omega,
                    "cross-check h1(F(x)Omega^1(1)) through the full Euler sequence");

  auto* c_classify = app.add_subcommand("classify", "locate coker(phi) in the M(4,chi) tables");
  add_io(c_classify);
  c_classify->add_option("--format", format, "json or table");

  auto* c_stab = app.add_subcommand("stability", "stability verdicts for a morphism");
  add_io(c_stab);
  c_stab->add_option("--mode", mode, "exact, exhaustive or mc");
  c_stab->add_option("--polarization", polarization,
                     "comma-separated rationals, lambdas then mus (e.g. 3/10,2/5,2/5,3/10)");
  c_stab->add_option("--seed", seed, "RNG seed (mc mode)");
  c_stab->add_option("--translates", translates, "unipotent translates (mc mode)");
  c_stab->add_option("--budget", budget, "subspace enumeration budget");

  auto* c_delta = app.add_subcommand("delta-check", "Delta(g w) = tau(g) Delta(w) suite");
  c_delta->add_option("--field", field, "Q or F<p> (default F7)");
  c_delta->add_option("--trials", trials, "number of random (g, w) pairs")->default_val(1000);
  c_delta->add_option("--seed", seed, "RNG seed");
  c_delta->add_option("--out", out_path, "write the JSON report to this file");

  auto* c_census = app.add_subcommand("census", "reproduce the stratification tables by sampling");
  add_scan_opts(c_census, 100);

  auto* c_clifford = app.add_subcommand("clifford-scan", "Clifford bound scan over chi = 0..3");
  add_scan_opts(c_clifford, 100);

  auto* c_vanishing = app.add_subcommand("vanishing-scan",
                                         "h1 and h0(F(-1)) vanishing scans over the tables");
  add_scan_opts(c_vanishing, 100);

  CLI11_PARSE(app, argc, argv);

  auto field_json = [&]() -> json {
    if (field == "Q" || field == "q") return json("Q");
    return json{{"Fp", std::stoul(field.substr(1))}};
  };
  auto chi_json = [&]() -> json {
    json a = json::array();
    if (chi_list.empty()) return a;
    std::stringstream ss(chi_list);
    std::string tok;
    while (std::getline(ss, tok, ',')) a.push_back(std::stoi(tok));
    return a;
  };

  char* result = nullptr;

  if (*c_validate || *c_cohom || *c_classify) {
    psl_morphism* m = parse_morphism_or_die(input);
    psl_status st = PSL_ERROR;
    if (*c_validate) st = psl_validate(m, &result);
    if (*c_cohom) {
      json opt{{"verify_omega", verify_omega}};
      st = psl_cohomology(m, opt.dump().c_str(), &result);
    }
    if (*c_classify) st = psl_classify(m, &result);
    psl_morphism_free(m);
    if (*c_classify && st == PSL_OK && format == "table" && out_path.empty()) {
      render_classify_table(json::parse(result));
      psl_string_free(result);
      return 0;
    }
    return finish(st, result, out_path);
  }

  if (*c_stab) {
    psl_morphism* m = parse_morphism_or_die(input);
    json opt{{"mode", mode}, {"seed", seed}, {"translates", translates}, {"budget", budget}};
    if (!polarization.empty()) {
      json p = json::array();
      std::stringstream ss(polarization);
      std::string tok;
      while (std::getline(ss, tok, ',')) p.push_back(tok);
      opt["polarization"] = p;
    }
    psl_status st = psl_stability(m, opt.dump().c_str(), &result);
    psl_morphism_free(m);
    return finish(st, result, out_path);
  }

  if (*c_delta) {
    json opt{{"field", field_json()}, {"trials", trials == 0 ? 1000 : trials}, {"seed", seed}};
    psl_status st = psl_delta_check(opt.dump().c_str(), &result);
    return finish(st, result, out_path);
  }

  const char* kind = *c_census ? "census" : *c_clifford ? "clifford" : "vanishing";
  json cfg{{"field", field_json()}, {"trials", trials}, {"seed", seed}, {"budget", budget}};
  if (!chi_list.empty()) cfg["chi_list"] = chi_json();
  psl_status st = psl_scan(kind, cfg.dump().c_str(), &result);
  if (*c_census && (st == PSL_OK || st == PSL_VIOLATIONS) && format == "table" && out_path.empty()) {
    render_census_table(json::parse(result));
    psl_string_free(result);
    return static_cast<int>(st);
  }
  return finish(st, result, out_path);
}
