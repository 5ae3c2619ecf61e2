#include "psl/psl.h"

#include <cstring>
#include <variant>

#include "psl/harness.hpp"

using namespace psl;

namespace {

thread_local std::string t_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

psl_status map_error(const Error& e) {
  t_last_error = e.code() + ": " + e.what();
  if (e.code() == "BudgetExceeded" || e.code() == "GenericityExhausted")
    return PSL_BUDGET_EXCEEDED;
  return PSL_ERROR;
}

template <class Fn>
psl_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    return map_error(e);
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return PSL_ERROR;
  } catch (...) {
    t_last_error = "unknown failure";
    return PSL_ERROR;
  }
}

} // namespace

struct psl_morphism {
  FieldSpec field;
  std::variant<Morphism<Rationals>, Morphism<PrimeField>> value;

  template <class Fn>
  decltype(auto) visit(Fn&& fn) const {
    return std::visit(std::forward<Fn>(fn), value);
  }
};

extern "C" {

psl_status psl_morphism_parse(const char* text, psl_morphism** out) {
  if (!text || !out) {
    t_last_error = "null argument";
    return PSL_ERROR;
  }
  return guarded([&]() -> psl_status {
    json j = json::parse(text, nullptr, true);
    FieldSpec fs = morphism_field(j);
    auto* handle = with_field(fs, [&](auto K) {
      return new psl_morphism{fs, morphism_from_json_t(K, j)};
    });
    *out = handle;
    return PSL_OK;
  });
}

void psl_morphism_free(psl_morphism* m) { delete m; }

psl_status psl_morphism_to_json(const psl_morphism* m, char** out_json) {
  if (!m || !out_json) {
    t_last_error = "null argument";
    return PSL_ERROR;
  }
  return guarded([&]() -> psl_status {
    *out_json = dup_string(m->visit([](const auto& phi) { return morphism_to_json(phi).dump(2); }));
    return PSL_OK;
  });
}

psl_status psl_validate(const psl_morphism* m, char** out_json) {
  if (!m || !out_json) {
    t_last_error = "null argument";
    return PSL_ERROR;
  }
  return guarded([&]() -> psl_status {
    json j;
    j["schema_version"] = kSchemaVersion;
    auto violation = m->visit([](const auto& phi) { return validate(phi); });
    j["ok"] = !violation.has_value();
    if (violation)
      j["violation"] = json{{"row", violation->row},
                            {"col", violation->col},
                            {"expected_degree", violation->expected},
                            {"found_degree", violation->found}};
    *out_json = dup_string(j.dump(2));
    return PSL_OK;
  });
}

psl_status psl_cohomology(const psl_morphism* m, const char* options_json, char** out_json) {
  if (!m || !out_json) {
    t_last_error = "null argument";
    return PSL_ERROR;
  }
  return guarded([&]() -> psl_status {
    json opt = options_json && *options_json ? json::parse(options_json) : json::object();
    bool verify_omega = opt.value("verify_omega", false);
    json j = m->visit([&](const auto& phi) {
      using F = std::decay_t<decltype(phi.field())>;
      return cohomology_report(Presentation<F>(phi), verify_omega);
    });
    *out_json = dup_string(j.dump(2));
    return PSL_OK;
  });
}

psl_status psl_classify(const psl_morphism* m, char** out_json) {
  if (!m || !out_json) {
    t_last_error = "null argument";
    return PSL_ERROR;
  }
  return guarded([&]() -> psl_status {
    json j = m->visit([](const auto& phi) {
      using F = std::decay_t<decltype(phi.field())>;
      return classification_to_json(classify(Presentation<F>(phi)));
    });
    j["schema_version"] = kSchemaVersion;
    *out_json = dup_string(j.dump(2));
    return PSL_OK;
  });
}

} // extern "C"

namespace {

Polarization parse_polarization(const json& arr, std::size_t n_lambdas) {
  Polarization sigma;
  std::size_t i = 0;
  for (const auto& e : arr) {
    mpq_class v(e.get<std::string>());
    v.canonicalize();
    if (i < n_lambdas)
      sigma.lambdas.push_back(v);
    else
      sigma.mus.push_back(v);
    ++i;
  }
  return sigma;
}

// exact-list applicability: sigma in the family ((1-mu)/2, mu, mu, (1-mu)/2)
// with 1/3 < mu < 1/2
bool sigma_in_42_family(const Polarization& s) {
  if (s.lambdas.size() != 2 || s.mus.size() != 2) return false;
  const mpq_class& mu = s.lambdas[1];
  if (!(mu > mpq_class(1, 3) && mu < mpq_class(1, 2))) return false;
  mpq_class a = (1 - mu) / 2;
  return s.lambdas[0] == a && s.mus[0] == mu && s.mus[1] == a;
}

template <class F>
json stability_dispatch(const F& K, const Morphism<F>& phi, const std::string& mode,
                        const std::optional<json>& polarization, std::uint64_t seed,
                        unsigned long translates, unsigned long budget) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["mode"] = mode;
  j["field"] = field_to_json(K.spec());
  auto src_groups = group_twists(phi.source());
  std::optional<Polarization> sigma;
  if (polarization) {
    sigma = parse_polarization(*polarization, src_groups.size());
    sigma->validate(src_groups, group_twists(phi.target()));
    json pj = json::array();
    for (const auto& l : sigma->lambdas) pj.push_back(l.get_str());
    for (const auto& u : sigma->mus) pj.push_back(u.get_str());
    j["polarization"] = pj;
  }

  if (mode == "exact") {
    if (phi.source() == TwistList{-2, -2, -1} && phi.target() == TwistList{-1, 0, 0}) {
      if (sigma && !sigma_in_42_family(*sigma))
        fail("ModeUnavailable",
             "exact-list mode needs the polarization family ((1-mu)/2, mu, mu, (1-mu)/2), 1/3 < mu < 1/2");
      j["criterion"] = "forbidden configuration list";
      j["verdict"] = g_verdict_to_json(g_semistable_42_exact(phi));
    } else if (phi.source() == TwistList{-2, -1} && phi.target() == TwistList{0, 1}) {
      j["criterion"] = "phi12 divisibility";
      j["verdict"] = divisibility_verdict_to_json(divisibility_stability(phi));
    } else if (phi.rows() == 3 && phi.cols() == 2 && phi.source() == TwistList{-1, -1} &&
               phi.target() == TwistList{0, 0, 0}) {
      j["criterion"] = "maximal minors nonzero";
      bool stable = minors_criterion_23(phi);
      j["verdict"] = json{{"status", stab_name(stable ? Stab::Stable : Stab::Unstable)}};
    } else if constexpr (std::is_same_v<F, PrimeField>) {
      if (phi.source() == TwistList{-1, -1, -1, -1} && phi.target() == TwistList{0, 0, 0, 0}) {
        j["criterion"] = "block reducibility via Kronecker enumeration";
        j["verdict"] = kronecker_verdict_to_json(reducibility_44(phi, budget));
      } else {
        fail("ModeUnavailable", "no exact criterion for this shape");
      }
    } else {
      fail("ModeUnavailable", "no exact criterion for this shape");
    }
    return j;
  }

  if constexpr (!std::is_same_v<F, PrimeField>) {
    fail("FieldUnsupported", "exhaustive and monte-carlo modes need a prime field");
  } else {
    if (mode == "exhaustive") {
      if (!sigma && phi.source() == TwistList{-2, -2, -1} && phi.target() == TwistList{-1, 0, 0}) {
        sigma = polarization_42(mpq_class(2, 5)); // default mu for this shape
        j["polarization"] = json::array({"3/10", "2/5", "2/5", "3/10"});
      }
      if (sigma) {
        j["criterion"] = "G_red subspace enumeration";
        j["verdict"] = gred_verdict_to_json(gred_semistable(phi, *sigma, budget));
      } else {
        j["criterion"] = "Kronecker subspace enumeration";
        j["verdict"] = kronecker_verdict_to_json(kronecker_semistable(kronecker_of(phi), budget));
      }
    } else if (mode == "mc") {
      if (!sigma) fail("MalformedPolarization", "monte-carlo mode needs a polarization");
      Rng rng = Rng::substream(seed, 5000, 0);
      auto v = g_semistable_mc(phi, *sigma, translates, rng, budget);
      json vj{{"status", stab_name(v.status)}};
      if (v.witness) {
        json M = json::array(), N = json::array();
        for (const auto& s : v.witness->M) M.push_back(subspace_to_json(s));
        for (const auto& s : v.witness->N) N.push_back(subspace_to_json(s));
        vj["witness"] = json{{"M", std::move(M)},
                             {"N", std::move(N)},
                             {"lhs", v.witness->lhs.get_str()},
                             {"rhs", v.witness->rhs.get_str()},
                             {"failing_translate", v.failing_translate}};
      }
      if (!v.note.empty()) vj["note"] = v.note;
      j["criterion"] = "monte-carlo unipotent translates (one-sided)";
      j["seed"] = seed;
      j["translates"] = translates;
      j["verdict"] = std::move(vj);
    } else {
      fail("BadArgument", "mode must be exact, exhaustive or mc");
    }
  }
  return j;
}

} // namespace

extern "C" {

psl_status psl_stability(const psl_morphism* m, const char* options_json, char** out_json) {
  if (!m || !out_json) {
    t_last_error = "null argument";
    return PSL_ERROR;
  }
  return guarded([&]() -> psl_status {
    json opt = options_json && *options_json ? json::parse(options_json) : json::object();
    std::string mode = opt.value("mode", std::string("exact"));
    std::optional<json> sigma;
    if (opt.contains("polarization")) sigma = opt["polarization"];
    std::uint64_t seed = opt.value("seed", 1ULL);
    unsigned long translates = opt.value("translates", 200UL);
    unsigned long budget = opt.value("budget", kDefaultSubspaceBudget);
    json j = m->visit([&](const auto& phi) {
      return stability_dispatch(phi.field(), phi, mode, sigma, seed, translates, budget);
    });
    *out_json = dup_string(j.dump(2));
    return PSL_OK;
  });
}

psl_status psl_delta_check(const char* options_json, char** out_json) {
  if (!out_json) {
    t_last_error = "null argument";
    return PSL_ERROR;
  }
  return guarded([&]() -> psl_status {
    json opt = options_json && *options_json ? json::parse(options_json) : json::object();
    FieldSpec fs = opt.contains("field") ? field_from_json(opt["field"]) : FieldSpec::prime(7);
    unsigned long trials = opt.value("trials", 1000UL);
    std::uint64_t seed = opt.value("seed", 1ULL);
    json j = with_field(fs, [&](auto K) { return delta_check(K, trials, seed); });
    *out_json = dup_string(j.dump(2));
    return j["passed"].get<bool>() ? PSL_OK : PSL_VIOLATIONS;
  });
}

psl_status psl_scan(const char* kind, const char* config_json, char** out_json) {
  if (!kind || !out_json) {
    t_last_error = "null argument";
    return PSL_ERROR;
  }
  return guarded([&]() -> psl_status {
    json cj = config_json && *config_json ? json::parse(config_json) : json::object();
    ScanConfig cfg;
    if (cj.contains("field")) cfg.field = field_from_json(cj["field"]);
    cfg.trials = cj.value("trials", 100UL);
    cfg.seed = cj.value("seed", 1ULL);
    if (cj.contains("chi_list")) cfg.chi_list = cj["chi_list"].get<std::vector<int>>();
    cfg.budget = cj.value("budget", kDefaultSubspaceBudget);
    std::string k(kind);
    json j = with_field(cfg.field, [&](auto K) {
      if (k == "census") return census(K, cfg);
      if (k == "vanishing" || k == "vanishing-scan") return vanishing_scan(K, cfg);
      if (k == "clifford" || k == "clifford-scan") return clifford_scan(K, cfg);
      fail("BadArgument", "scan kind must be census, vanishing or clifford");
    });
    *out_json = dup_string(j.dump(2));
    return j["passed"].get<bool>() ? PSL_OK : PSL_VIOLATIONS;
  });
}

void psl_string_free(char* s) { std::free(s); }

const char* psl_last_error(void) { return t_last_error.c_str(); }

const char* psl_version(void) { return "0.1.0"; }

} // extern "C"
