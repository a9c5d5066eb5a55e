#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "derham.hpp"
#include "representations.hpp"

namespace ncsphere {

using json = nlohmann::ordered_json;

// ---- scalars ----

inline json to_json(const GPoly& p) {
  json a = json::array();
  for (auto& [e, c] : p.terms())
    a.push_back({{"re", c.re.str()}, {"im", c.im.str()}, {"eh", e.eh}, {"ea", e.ea}});
  return a;
}

inline GPoly gpoly_from_json(const json& a) {
  if (!a.is_array()) throw ParseError("polynomial must be an array of terms");
  std::vector<GPoly::Term> ts;
  for (auto& t : a) {
    try {
      ts.push_back({Exp{t.at("eh").get<uint16_t>(), t.at("ea").get<uint16_t>()},
                    GaussInt(Int::parse(t.at("re").get<std::string>()), Int::parse(t.at("im").get<std::string>()))});
    } catch (const json::exception& e) {
      throw ParseError(std::string("polynomial term: ") + e.what());
    }
  }
  return GPoly::from_terms(std::move(ts));
}

inline json to_json(const Scalar& x) { return {{"p", to_json(x.p())}, {"q", to_json(x.q())}, {"d", to_json(x.d())}}; }

inline Scalar scalar_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("scalar must be an object");
  GPoly d = gpoly_from_json(j.at("d"));
  if (d.is_zero()) throw DivisionByZero("scalar with zero denominator");
  return Scalar(gpoly_from_json(j.at("p")), gpoly_from_json(j.at("q")), std::move(d));
}

inline json to_json(const GaussRational& x) { return x.str(); }

// ---- algebra elements ----

inline json to_json(const NCElement& f) {
  json terms = json::array();
  for (auto& [m, c] : f.terms()) {
    json exps = json::array();
    for (int g = 0; g < f.ctx()->ngens(); ++g) exps.push_back(m.e[g]);
    terms.push_back({{"exps", exps}, {"coeff", to_json(c)}});
  }
  return {{"ctx", f.ctx()->name()}, {"terms", terms}};
}

inline NCElement element_from_json(const json& j, const Ctx& ctx) {
  if (j.at("ctx").get<std::string>() != ctx->name())
    throw ContextMismatch("element for " + j.at("ctx").get<std::string>() + " read into " + ctx->name());
  TermList ts;
  for (auto& t : j.at("terms")) {
    Monomial m;
    const auto& e = t.at("exps");
    if (int(e.size()) != ctx->ngens()) throw ParseError("exponent vector length");
    for (int g = 0; g < ctx->ngens(); ++g) m.e[g] = e[g].get<uint8_t>();
    ts.emplace_back(m, scalar_from_json(t.at("coeff")));
  }
  return NCElement::from_terms(ctx, ts);
}

inline json to_json(const NCMatrix& M) {
  json e = json::array();
  for (size_t i = 0; i < M.rows(); ++i)
    for (size_t j = 0; j < M.cols(); ++j) e.push_back(to_json(M(i, j)));
  return {{"rows", M.rows()}, {"cols", M.cols()}, {"entries", e}};
}

inline NCMatrix matrix_from_json(const json& j, const Ctx& ctx) {
  const size_t r = j.at("rows").get<size_t>(), c = j.at("cols").get<size_t>();
  const auto& e = j.at("entries");
  if (e.size() != r * c) throw ShapeMismatch("entries do not match rows x cols");
  NCMatrix M(ctx, r, c);
  for (size_t i = 0; i < r * c; ++i) M(i / c, i % c) = element_from_json(e[i], ctx);
  return M;
}

inline json to_json(const KMatrix& M) {
  json e = json::array();
  for (size_t i = 0; i < M.rows(); ++i)
    for (size_t j = 0; j < M.cols(); ++j) e.push_back(to_json(M(i, j)));
  return {{"rows", M.rows()}, {"cols", M.cols()}, {"entries", e}};
}

inline json scalars_json(const std::vector<Scalar>& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(to_json(x));
  return a;
}

inline json label_json(Label l) { return json::array({l.k1, l.k2}); }

// ---- reports ----

inline json to_json(const ChReport& r) {
  json j = {{"task", r.task}, {"k", r.k}, {"status", r.status}};
  j["lhs_residual"] = r.residual && !r.residual->is_zero() ? to_json(*r.residual) : json(nullptr);
  j["minpoly"] = scalars_json(r.minpoly);
  j["predicted"] = scalars_json(r.predicted);
  if (!r.notes.empty()) j["notes"] = r.notes;
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

inline json to_json(const LabelCheck& c) {
  json j = {{"label", label_json(c.label)},
            {"status", c.status},
            {"trace", to_json(c.trace)},
            {"checks",
             {{"idempotent", c.idempotent},
              {"direct_product", c.direct_product},
              {"trace_scalar", c.trace_scalar},
              {"trace_matches", c.trace_matches}}}};
  if (!c.error.empty()) j["error"] = c.error;
  return j;
}

inline json to_json(const SuiteReport& r) {
  json labels = json::array();
  for (auto& c : r.labels) labels.push_back(to_json(c));
  json j = {{"task", "idempotents"},     {"k", r.k},
            {"status", r.status},        {"labels", labels},
            {"orthogonal", r.orthogonal}, {"complete", r.complete},
            {"trace_sum", r.trace_sum}};
  if (!r.notes.empty()) j["notes"] = r.notes;
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

inline json to_json(const Idempotent& e) {
  return {{"label", label_json(e.label)}, {"matrix", to_json(e.e)}, {"coefficients", scalars_json(e.coeffs)}};
}

inline json to_json(const IsoCheck& c) {
  return {{"AB=e1", c.ab}, {"BA=e2", c.ba}, {"A=e1A", c.a_left}, {"A=Ae2", c.a_right}, {"B=e2B", c.b_left},
          {"B=Be1", c.b_right}};
}

inline json to_json(const PairingResult& r) {
  json j = {{"task", "pairing"}, {"label", label_json(r.label)}, {"n", r.n}, {"status", r.status},
            {"regime", r.regime()}};
  j["pairing"] = r.value ? to_json(*r.value) : json(nullptr);
  j["numeric"] = r.numeric ? to_json(*r.numeric) : json(nullptr);
  j["closed_form"] = r.closed_form ? json(*r.closed_form) : json(nullptr);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline json to_json(const DifferentialMap& d) {
  json b = json::object();
  for (auto& [w, M] : d.blocks) b[std::to_string(w)] = to_json(M);
  return {{"level", d.level}, {"blocks", b}};
}

inline json to_json(const DerhamReport& r) {
  json j = {{"task", "derham"}, {"N", r.N}, {"classical", r.classical}, {"status", r.status}};
  j["decompositions"] = {{"Omega0", r.multiplicities[0]}, {"Omega1", r.multiplicities[1]}, {"Omega2", r.multiplicities[2]}};
  j["multiplicities_match"] = r.multiplicities_match;
  j["d_squared_zero"] = r.d_squared_zero;
  j["intertwines"] = r.intertwines;
  j["cohomology"] = r.cohomology;
  j["generators"] = {{"h0", r.h0_generator ? "1" : ""}, {"h2", r.h2_generator ? "u20*x + u11*y + u02*z" : ""}};
  j["classical_limit_ok"] = r.classical_limit_ok ? json(*r.classical_limit_ok) : json(nullptr);
  if (!r.notes.empty()) j["notes"] = r.notes;
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

// Drops timing fields so identical runs compare byte for byte.
inline void strip_timing(json& j) {
  if (j.is_object()) {
    j.erase("elapsed_ms");
    for (auto& [k, v] : j.items()) strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_timing(v);
  }
}

}  // namespace ncsphere
