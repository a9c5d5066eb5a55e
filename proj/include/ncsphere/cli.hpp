#pragma once

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cache.hpp"

namespace ncsphere {

struct CliOptions {
  std::optional<std::string> hbar, alpha, out, cache_dir;
  std::string format = "json";
  std::string presentation;
  bool stable = false, verbose = false;
  int branch = 1;

  std::string k;
  int k1 = 0, k2 = 0, n = 0, max_k = 0, max_n = 0, max_degree = 0;
  std::string witness = "e11";
};

namespace cli_detail {

struct Run {
  const CliOptions& opt;
  std::ostream& err;
  std::vector<json> lines;
  std::string tsv;
  bool bad = false;  // any failed or degenerate status
  std::optional<Cache> cache;

  Run(const CliOptions& o, std::ostream& e) : opt(o), err(e) {
    if (auto d = Cache::resolve_dir(opt.cache_dir)) cache.emplace(*d);
  }

  std::optional<mpq_class> hbar() const {
    return opt.hbar ? std::optional<mpq_class>(parse_rational(*opt.hbar)) : std::nullopt;
  }
  std::optional<mpq_class> alpha() const {
    return opt.alpha ? std::optional<mpq_class>(parse_rational(*opt.alpha)) : std::nullopt;
  }
  Scalar alpha_scalar() const { return opt.alpha ? Scalar::rational(*alpha()) : Scalar::alpha(); }
  std::string mode() const { return opt.alpha ? "al=" + alpha()->get_str() : "symbolic"; }

  json inputs(json extra = json::object()) const {
    json j = json::object();
    for (auto& [k, v] : extra.items()) j[k] = v;
    j["hbar"] = opt.hbar ? json(hbar()->get_str()) : json("symbolic");
    j["alpha"] = opt.alpha ? json(alpha()->get_str()) : json("symbolic");
    return j;
  }

  void emit(json j) {
    const std::string st = j.value("status", "verified");
    if (st != "verified" && st != "outside-regime") bad = true;
    if (opt.stable) strip_timing(j);
    lines.push_back(std::move(j));
  }

  json degenerate(const std::string& task, json in, const Error& e) {
    return {{"task", task}, {"inputs", in}, {"status", "degenerate"}, {"error", e.what()}};
  }

  NCMatrix extension(const Ctx& ctx, int k) {
    if (!cache) return extension_matrix(ctx, k).matrix;
    const CacheKey key{"extension_matrix", ctx->name(), k, mode()};
    const size_t before = cache->hits();
    NCMatrix M = cache->get_or_compute<NCMatrix>(
        key, [&] { return extension_matrix(ctx, k).matrix; }, [](const NCMatrix& m) { return to_json(m); },
        [&](const json& j) { return matrix_from_json(j, ctx); });
    if (opt.verbose) err << (cache->hits() > before ? "cache hit " : "cache miss ") << key.str() << "\n";
    return M;
  }
};

inline std::vector<Presentation> presentations(const CliOptions& o) {
  if (!o.presentation.empty()) return {parse_presentation(o.presentation)};
  return {Presentation::sl2h, Presentation::su2h};
}

inline void verify_ch(Run& r) {
  const auto& o = r.opt;
  if (o.k == "generic") {
    auto rep = verify_generic_ch(make_algebra(Presentation::gl2h));
    json j = to_json(rep);
    j["inputs"] = r.inputs({{"k", "generic"}});
    r.emit(j);
    return;
  }
  if (o.k != "1" && o.k != "2") throw ParseError("--k must be 1, 2 or generic");
  const int k = std::stoi(o.k);
  for (auto p : presentations(o)) {
    json in = r.inputs({{"k", o.k}, {"presentation", to_string(p)}});
    try {
      auto rep = verify_numeric_ch(make_algebra(p, r.alpha_scalar()), k);
      json j = to_json(rep);
      j["inputs"] = in;
      r.emit(j);
    } catch (const DivisionByZero& e) {
      r.emit(r.degenerate("verify-ch", in, e));
    }
  }
}

inline void minpoly(Run& r) {
  const int k = std::stoi(r.opt.k);
  if (k < 1) throw IndexOutOfRange("--k must be at least 1");
  if (k > kDefaultSpinCap) throw DegreeCapExceeded("k = " + std::to_string(k) + " above cap");
  auto ctx = make_algebra(Presentation::sl2h, r.alpha_scalar());
  json in = r.inputs({{"k", k}});
  auto s = spectrum_check(r.extension(ctx, k), k, r.alpha());
  json j = to_json(s.report);
  j["inputs"] = in;
  j["degree"] = s.minpoly.degree();
  j["matches_prediction"] = s.matches;
  if (r.opt.hbar && r.opt.alpha) {
    const auto sp = Specialization::at(*r.hbar(), *r.alpha(), r.opt.branch);
    const bool distinct = roots_distinct_at(s.prediction.values(), sp.hbar, sp.alpha, sp.s);
    j["distinct_at_point"] = distinct;
    if (!distinct && j["status"] == "verified") j["status"] = "degenerate";
  }
  r.emit(j);
}

inline void idempotents(Run& r) {
  const int k = std::stoi(r.opt.k);
  if (k < 0) throw IndexOutOfRange("--k must be non-negative");
  if (k > kDefaultSpinCap) throw DegreeCapExceeded("k = " + std::to_string(k) + " above cap");
  auto ctx = make_algebra(Presentation::sl2h, Scalar::alpha());
  PartialPoint pt{r.hbar(), r.alpha()};
  json in = r.inputs({{"k", k}});
  std::optional<NCMatrix> L;
  if (k > 0) L = r.extension(ctx, k);
  auto rep = idempotent_suite_check(ctx, k, pt, L);
  json j = to_json(rep);
  j["inputs"] = in;
  r.emit(j);
}

inline void iso_check(Run& r) {
  if (r.opt.witness != "e11") throw ParseError("only the e11 witness is available");
  json in = r.inputs({{"witness", "e11"}});
  try {
    auto W = e11_trivialization_witness(make_algebra(Presentation::su2h, r.alpha_scalar()));
    const bool ok = W.check.ok() && W.compact_identity && W.displayed_square && W.displayed_identity &&
                    W.matches_lagrange;
    json j = {{"task", "iso-check"}, {"inputs", in}, {"status", ok ? "verified" : "failed"}};
    j["checks"] = to_json(W.check);
    j["compact_identity"] = W.compact_identity;
    j["displayed_square"] = W.displayed_square;
    j["displayed_identity"] = W.displayed_identity;
    j["matches_lagrange"] = W.matches_lagrange;
    j["A"] = to_json(W.witness.A);
    j["B"] = to_json(W.witness.B);
    if (!ok) j["residual"] = to_json(W.witness.A * W.witness.B - W.e00);
    r.emit(j);
  } catch (const DivisionByZero& e) {
    r.emit(r.degenerate("iso-check", in, e));
  }
}

inline mpq_class pairing_hbar(const Run& r, int n) {
  const mpq_class h = r.opt.hbar ? *r.hbar() : mpq_class(1);
  if (sgn(h) == 0) throw SpecializationMismatch("pairing needs h != 0");
  if (r.opt.alpha && *r.alpha() != Irrep(n).forced_alpha_at(h))
    throw SpecializationMismatch("al = " + r.alpha()->get_str() + " is not the value forced by n = " + std::to_string(n));
  return h;
}

inline void pairing(Run& r) {
  const auto& o = r.opt;
  if (o.k1 < 0 || o.k2 < 0 || o.n < 1) throw IndexOutOfRange("need k1, k2 >= 0 and n >= 1");
  if (o.k1 + o.k2 > kDefaultSpinCap) throw DegreeCapExceeded("k1 + k2 above cap");
  auto res = index_pairing({o.k1, o.k2}, o.n, pairing_hbar(r, o.n), o.branch);
  json j = to_json(res);
  j["inputs"] = r.inputs({{"k1", o.k1}, {"k2", o.k2}, {"n", o.n}});
  r.emit(j);
}

inline void pairing_table_cmd(Run& r) {
  const auto& o = r.opt;
  if (o.max_k < 0 || o.max_n < 1) throw IndexOutOfRange("need max-k >= 0 and max-n >= 1");
  if (o.alpha) throw ParseError("--alpha is forced by n in a pairing table");
  const mpq_class h = o.hbar ? *r.hbar() : mpq_class(1);
  if (sgn(h) == 0) throw SpecializationMismatch("pairing needs h != 0");
  auto t = pairing_table(o.max_k, o.max_n, h, o.branch);
  r.tsv = "k1\tk2\tn\tpairing\tregime\n";
  for (auto& c : t.cells) {
    json j = to_json(c);
    j["task"] = "pairing-table";
    r.emit(j);
    r.tsv += std::to_string(c.label.k1) + "\t" + std::to_string(c.label.k2) + "\t" + std::to_string(c.n) + "\t" +
             (c.value ? c.value->str() : "-") + "\t" + c.regime() + "\n";
    if (c.status == "failed") r.tsv += "# failed: " + c.note + "\n";
  }
}

inline void derham(Run& r) {
  const int N = r.opt.max_degree;
  if (N < 0) throw IndexOutOfRange("--max-degree must be non-negative");
  if (N > 4) throw DegreeCapExceeded("--max-degree above 4");
  const bool classical = r.opt.hbar && sgn(*r.hbar()) == 0;
  json in = r.inputs({{"max_degree", N}});
  try {
    auto C = build_complex(N, classical, r.alpha_scalar());
    auto rep = derham_report(C);
    json j = to_json(rep);
    j["inputs"] = in;
    j["d0"] = to_json(C.d0);
    j["d1"] = to_json(C.d1);
    r.emit(j);
  } catch (const DivisionByZero& e) {
    r.emit(r.degenerate("derham", in, e));
  }
}

}  // namespace cli_detail

// Exit codes: 0 when every status is verified or outside-regime, 1 when any
// is failed or degenerate, 2 for malformed input.
inline int run_command(int argc, const char* const* argv, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
  CliOptions o;
  CLI::App app{"Exact checks for the noncommutative sphere", "ncsphere"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* s) {
    s->add_option("--hbar", o.hbar, "rational P/Q; symbolic when omitted");
    s->add_option("--alpha", o.alpha, "rational P/Q; symbolic when omitted");
    s->add_option("--out", o.out, "write the report to FILE");
    s->add_option("--format", o.format)->check(CLI::IsMember({"json", "tsv"}));
    s->add_option("--cache-dir", o.cache_dir, "cache directory (NCSPHERE_CACHE overrides)");
    s->add_flag("--stable-output", o.stable, "omit timings");
    s->add_flag("-v,--verbose", o.verbose);
    s->add_option("--branch", o.branch, "sign of s at the point")->check(CLI::IsMember({1, -1}));
  };
  auto* ch = app.add_subcommand("verify-ch", "Cayley-Hamilton identities");
  ch->add_option("--k", o.k)->required()->check(CLI::IsMember({"1", "2", "generic"}));
  ch->add_option("--presentation", o.presentation)->check(CLI::IsMember({"sl2h", "su2h"}));
  auto* mp = app.add_subcommand("minpoly", "minimal polynomial of L_(k)");
  mp->add_option("--k", o.k)->required();
  auto* id = app.add_subcommand("idempotents", "Lagrange idempotents of level k");
  id->add_option("--k", o.k)->required();
  auto* iso = app.add_subcommand("iso-check", "module isomorphism witness");
  iso->add_option("--witness", o.witness)->required();
  auto* pr = app.add_subcommand("pairing", "index pairing with an irrep");
  pr->add_option("--k1", o.k1)->required();
  pr->add_option("--k2", o.k2)->required();
  pr->add_option("--n", o.n)->required();
  auto* pt = app.add_subcommand("pairing-table", "pairing table");
  pt->add_option("--max-k", o.max_k)->required();
  pt->add_option("--max-n", o.max_n)->required();
  auto* dr = app.add_subcommand("derham", "truncated de Rham complex");
  dr->add_option("--max-degree", o.max_degree)->required();
  for (auto* s : {ch, mp, id, iso, pr, pt, dr}) common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o_out, o_err;
    const int code = app.exit(e, o_out, o_err);
    out << o_out.str();
    err << o_err.str();
    return code == 0 ? 0 : 2;
  }

  cli_detail::Run run(o, err);
  try {
    if (o.format == "tsv" && !pt->parsed()) throw ParseError("--format tsv is only available for pairing-table");
    if (o.k.size() && !ch->parsed()) {
      size_t pos = 0;
      std::stoi(o.k, &pos);
      if (pos != o.k.size()) throw ParseError("--k must be an integer");
    }
    if (ch->parsed()) cli_detail::verify_ch(run);
    if (mp->parsed()) cli_detail::minpoly(run);
    if (id->parsed()) cli_detail::idempotents(run);
    if (iso->parsed()) cli_detail::iso_check(run);
    if (pr->parsed()) cli_detail::pairing(run);
    if (pt->parsed()) cli_detail::pairing_table_cmd(run);
    if (dr->parsed()) cli_detail::derham(run);
  } catch (const std::invalid_argument&) {
    err << "error: --k must be an integer\n";
    return 2;
  } catch (const std::out_of_range&) {
    err << "error: integer out of range\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  std::string body;
  if (o.format == "tsv") {
    body = run.tsv;
  } else {
    for (auto& j : run.lines) body += j.dump() + "\n";
  }
  if (o.out) {
    std::ofstream f(*o.out, std::ios::trunc);
    if (!f || !(f << body)) {
      err << "error: IoError: cannot write " << *o.out << "\n";
      return 2;
    }
  } else {
    out << body;
  }
  return run.bad ? 1 : 0;
}

}  // namespace ncsphere
