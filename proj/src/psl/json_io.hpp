#pragma once

#include <json.hpp>

#include "psl/atlas.hpp"

namespace psl {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

inline json field_to_json(const FieldSpec& fs) {
  if (fs.kind == FieldKind::Rationals) return json("Q");
  return json{{"Fp", fs.p}};
}

inline FieldSpec field_from_json(const json& j) {
  if (j.is_string()) return FieldSpec::parse(j.get<std::string>());
  if (j.is_object() && j.contains("Fp")) return FieldSpec::prime(j["Fp"].get<unsigned>());
  fail("BadField", "field must be \"Q\" or {\"Fp\": p}");
}

template <class F>
json morphism_to_json(const Morphism<F>& phi) {
  json j;
  j["field"] = field_to_json(phi.field().spec());
  j["source"] = phi.source();
  j["target"] = phi.target();
  json rows = json::array();
  for (std::size_t i = 0; i < phi.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < phi.cols(); ++k) row.push_back(phi.at(i, k).to_string());
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

template <class F>
Morphism<F> morphism_from_json_t(const F& K, const json& j) {
  if (!j.contains("source") || !j.contains("target") || !j.contains("entries"))
    fail("BadDocument", "morphism document needs source, target and entries");
  TwistList src = j["source"].get<TwistList>();
  TwistList tgt = j["target"].get<TwistList>();
  Morphism<F> phi(K, src, tgt);
  const auto& entries = j["entries"];
  if (!entries.is_array() || entries.size() != phi.rows())
    fail("BadDocument", "entries must be an array of " + std::to_string(phi.rows()) + " rows");
  for (std::size_t i = 0; i < phi.rows(); ++i) {
    const auto& row = entries[i];
    if (!row.is_array() || row.size() != phi.cols())
      fail("BadDocument", "entry row " + std::to_string(i) + " must have " +
                              std::to_string(phi.cols()) + " columns");
    for (std::size_t k = 0; k < phi.cols(); ++k) {
      int deg = phi.entry_degree(i, k);
      try {
        auto f = Form<F>::parse(K, row[k].get<std::string>(), deg >= 0 ? deg : -1);
        if (deg < 0 && !f.is_zero())
          fail("DegreeMismatch", "required degree " + std::to_string(deg) + " forces zero");
        phi.set(i, k, std::move(f));
      } catch (const Error& e) {
        fail(e.code(), "entry (" + std::to_string(i) + "," + std::to_string(k) + "): " + e.what());
      }
    }
  }
  return phi;
}

inline FieldSpec morphism_field(const json& j) {
  if (!j.contains("field")) fail("BadDocument", "morphism document needs a field");
  return field_from_json(j["field"]);
}

template <class F>
json subspace_to_json(const Subspace<F>& s) {
  json basis = json::array();
  const F& K = s.field();
  for (std::size_t i = 0; i < s.dim(); ++i) {
    json v = json::array();
    for (std::size_t j = 0; j < s.ambient_dim(); ++j) v.push_back(K.to_string(s.basis().at(i, j)));
    basis.push_back(std::move(v));
  }
  return json{{"ambient_dim", s.ambient_dim()}, {"dim", s.dim()}, {"basis", std::move(basis)}};
}

inline json table_to_json(const CohomologyTable& t) {
  return json{{"h0_Fm1", t.h0_Fm1},       {"h1_Fm1", t.h1_Fm1}, {"h0_FOmega", t.h0_FOmega},
              {"h1_FOmega", t.h1_FOmega}, {"h0_F", t.h0_F},     {"h1_F", t.h1_F}};
}

inline json monad_to_json(const MonadReport& m) {
  json terms = json::array();
  for (const auto& t : m.terms) terms.push_back(json{{"O(-2)", t[0]}, {"O(-1)", t[1]}, {"O", t[2]}});
  return json{{"terms", std::move(terms)},
              {"ranks", m.ranks},
              {"alternating_chi", m.alternating_chi},
              {"expected_chi", m.expected_chi},
              {"consistent", m.consistent}};
}

inline json classification_to_json(const Classification& c) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["r"] = c.r;
  j["chi"] = c.chi_raw;
  j["chi_normalized"] = c.chi_norm;
  j["normalizing_twist"] = c.normalizing_twist;
  j["triple"] = c.triple;
  j["table"] = table_to_json(c.table);
  j["matched"] = c.matched;
  if (c.matched) {
    j["stratum"] = c.stratum_id;
    j["codim"] = c.codim;
    j["shape_match"] = c.shape_match;
    j["stratum_note"] = stratum_by_id(c.stratum_id).note;
  } else {
    j["stratum"] = nullptr;
    j["note"] = "NoMatchingStratum: triple not in the tables (potential falsification)";
  }
  return j;
}

template <class F>
json kronecker_verdict_to_json(const KroneckerVerdict<F>& v) {
  json j{{"status", stab_name(v.status)}};
  if (v.witness) {
    j["witness"] = json{{"H", subspace_to_json(v.witness->H)}, {"K", subspace_to_json(v.witness->K)}};
  }
  return j;
}

template <class F>
json gred_verdict_to_json(const GredVerdict<F>& v) {
  json j{{"status", stab_name(v.status)}};
  if (v.witness) {
    json M = json::array(), N = json::array();
    for (const auto& s : v.witness->M) M.push_back(subspace_to_json(s));
    for (const auto& s : v.witness->N) N.push_back(subspace_to_json(s));
    j["witness"] = json{{"M", std::move(M)},
                        {"N", std::move(N)},
                        {"lhs", v.witness->lhs.get_str()},
                        {"rhs", v.witness->rhs.get_str()}};
  }
  return j;
}

inline json g_verdict_to_json(const GVerdict& v) {
  json j{{"status", stab_name(v.status)}};
  if (v.witness) j["witness"] = json{{"config", v.witness->config}, {"detail", v.witness->detail}};
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

inline json divisibility_verdict_to_json(const DivisibilityVerdict& v) {
  json j{{"status", stab_name(v.status)}};
  if (!v.divisor_of.empty()) j["witness"] = json{{"phi12_divides", v.divisor_of}};
  return j;
}

inline json dimension_audit_to_json(const DimensionAudit& a) {
  return json{{"stratum", a.stratum_id},
              {"dim_hom", a.dim_hom},
              {"dim_aut_source", a.dim_aut_source},
              {"dim_aut_target", a.dim_aut_target},
              {"dim_group", a.dim_group},
              {"quotient_dim", a.quotient_dim},
              {"expected", a.expected},
              {"ok", a.ok}};
}

inline json error_to_json(const Error& e) {
  return json{{"error", e.code()}, {"message", e.what()}};
}

} // namespace psl
