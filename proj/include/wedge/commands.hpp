#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "wedge/session.hpp"
#include "wedge/wedge.hpp"

namespace wedge {

// ---------------------------------------------------------------------------
// CLI command layer.  Exit codes:
//   0  success (including positive verdicts)
//   1  errors: bad input, parse/semantic failures, oracle mismatch,
//      cross-validation disagreement
//   2  filtration verify: certificate did not verify
//   3  filtration find: no filtration found within the budget
//   10 koszul: certified non-Koszul
//   20 koszul: inconclusive (linear through the window, no certificate)
// ---------------------------------------------------------------------------

struct CommandSpec {
  std::string command;       // gb hilbert betti koszul qform filtration
                             // oracle crossval
  std::string action;        // qform: classify|normalform|factor
                             // filtration: find|verify
  std::string session_path;  // session file; ignored if session_text set
  std::string session_text;  // inline session source (tests, pipes)
  std::string ideal;         // --ideal NAME
  std::string form;          // --form NAME (element)
  std::string module = "k";  // --module k|cyclic
  std::string order = "degrevlex";  // --order deglex|degrevlex
  std::string vars;                 // --vars comma-separated permutation
  std::string pool;                 // --pool comma-separated linear forms
  std::string cert;                 // --cert FILE (filtration verify)
  int imax = -1;
  int jmax = -1;
  int depth = -1;
  int dmax = -1;
  long count = 100;
  long max_ideals = 5000;
  std::uint64_t seed = 1;
  bool json = false;
  bool normal_forms = false;
  int threads = 1;  // accepted for interface stability; execution is
                    // single-threaded and deterministic
};

namespace cmddetail {

using nlohmann::json;

inline std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  // trim
  for (auto& t : out) {
    size_t a = t.find_first_not_of(" \t");
    size_t b = t.find_last_not_of(" \t");
    t = a == std::string::npos ? "" : t.substr(a, b - a + 1);
  }
  return out;
}

template <class K>
TermOrder make_order(const CommandSpec& spec, const Ring<K>& ring,
                     std::string& desc) {
  OrderKind kind;
  if (spec.order == "degrevlex")
    kind = OrderKind::DegRevLex;
  else if (spec.order == "deglex")
    kind = OrderKind::DegLex;
  else
    throw std::runtime_error("unknown order '" + spec.order +
                             "' (expected deglex or degrevlex)");
  if (spec.vars.empty()) {
    desc = spec.order + " natural";
    return TermOrder(kind, ring.n());
  }
  std::vector<std::string> names = split_csv(spec.vars);
  std::vector<int> perm;
  for (const auto& nm : names) {
    int idx = ring.var_index(nm);
    if (idx < 0)
      throw std::runtime_error("--vars: unknown variable '" + nm + "'");
    perm.push_back(idx);
  }
  desc = spec.order + " [" + spec.vars + "]";
  return TermOrder(kind, perm);  // ctor validates the permutation
}

template <class K>
std::pair<std::string, std::vector<Element<K>>> pick_ideal(
    const CommandSpec& spec, const BoundSession<K>& ses) {
  if (!spec.ideal.empty()) {
    const auto* gens = ses.find_ideal(spec.ideal);
    if (!gens)
      throw std::runtime_error("no ideal named '" + spec.ideal +
                               "' in the session");
    return {spec.ideal, *gens};
  }
  if (ses.ideals.size() == 1) return ses.ideals.front();
  if (ses.ideals.empty()) return {"", {}};  // the zero ideal
  throw std::runtime_error(
      "session declares several ideals; select one with --ideal");
}

template <class K>
std::pair<std::string, Element<K>> pick_form(const CommandSpec& spec,
                                             const BoundSession<K>& ses) {
  if (!spec.form.empty()) {
    const auto* e = ses.find_element(spec.form);
    if (!e)
      throw std::runtime_error("no element named '" + spec.form +
                               "' in the session");
    return {spec.form, *e};
  }
  if (ses.elements.size() == 1) return ses.elements.front();
  throw std::runtime_error(
      ses.elements.empty()
          ? "session declares no elements; add one or pass --form"
          : "session declares several elements; select one with --form");
}

template <class K>
std::vector<Element<K>> parse_pool(const std::string& csv,
                                   const Ring<K>& ring) {
  std::vector<Element<K>> pool;
  for (const auto& part : split_csv(csv)) {
    if (part.empty()) throw std::runtime_error("--pool: empty entry");
    pool.push_back(eval_expression(parse_expression(part), ring));
  }
  return pool;
}

template <class K>
std::string ring_line(const Ring<K>& ring) {
  std::string s = "ring: " + ring.mode_name() + " " + ring.field().name() + " [";
  for (int i = 0; i < ring.n(); ++i) {
    if (i) s += ",";
    s += ring.names()[static_cast<size_t>(i)];
  }
  s += "]";
  return s;
}

template <class K>
std::string gens_text(const std::vector<Element<K>>& gens) {
  if (gens.empty()) return "(0)";
  std::string s = "(";
  for (size_t i = 0; i < gens.size(); ++i) {
    if (i) s += ", ";
    s += gens[i].to_string();
  }
  s += ")";
  return s;
}

template <class K>
json ring_json(const Ring<K>& ring) {
  json j;
  j["mode"] = ring.mode_name();
  j["field"] = ring.field().name();
  j["vars"] = ring.names();
  return j;
}

inline json betti_json(const BettiTable& b) {
  json j;
  j["imax"] = b.i_max();
  j["jmax"] = b.j_max();
  json entries = json::array();
  for (const auto& [ij, v] : b.entries())
    entries.push_back({{"i", ij.first}, {"j", ij.second}, {"value", v}});
  j["entries"] = entries;
  json totals = json::array(), complete = json::array();
  for (int i = 0; i <= b.i_max(); ++i) {
    totals.push_back(b.total(i));
    complete.push_back(b.is_complete(i));
  }
  j["totals"] = totals;
  j["complete"] = complete;
  j["table"] = format_betti_m2(b);
  return j;
}

inline std::string series_csv(const TruncSeries& s) {
  std::string out;
  for (int i = 0; i <= s.order(); ++i) {
    if (i) out += ", ";
    out += s.coeff(i).get_str();
  }
  return out;
}

inline json series_json(const TruncSeries& s) {
  json arr = json::array();
  for (int i = 0; i <= s.order(); ++i) arr.push_back(s.coeff(i).get_str());
  return arr;
}

template <class K>
json filtration_json(const Filtration<K>& f) {
  json j;
  j["zero_at"] = f.zero_at;
  j["max_at"] = f.max_at;
  json ideals = json::array();
  for (const auto& fi : f.ideals) {
    json m;
    json gens = json::array();
    for (const auto& g : fi.gens) gens.push_back(g.to_string());
    m["gens"] = gens;
    if (fi.parent >= 0) {
      m["parent"] = fi.parent;
      m["colon"] = fi.colon;
      m["x"] = fi.x.to_string();
    }
    ideals.push_back(m);
  }
  j["ideals"] = ideals;
  return j;
}

template <class K>
Filtration<K> filtration_from_json(const json& j, const Ring<K>& ring) {
  Filtration<K> f;
  f.zero_at = j.at("zero_at").get<int>();
  f.max_at = j.at("max_at").get<int>();
  for (const auto& m : j.at("ideals")) {
    FiltrationIdeal<K> fi;
    for (const auto& g : m.at("gens"))
      fi.gens.push_back(
          eval_expression(parse_expression(g.get<std::string>()), ring));
    if (m.contains("parent")) {
      fi.parent = m.at("parent").get<int>();
      fi.colon = m.at("colon").get<int>();
      fi.x = eval_expression(parse_expression(m.at("x").get<std::string>()),
                             ring);
    }
    f.ideals.push_back(std::move(fi));
  }
  return f;
}

template <class K>
void print_filtration(std::ostream& out, const Filtration<K>& f) {
  out << "filtration (zero at [" << f.zero_at << "], max at [" << f.max_at
      << "]):\n";
  for (size_t i = 0; i < f.ideals.size(); ++i) {
    const auto& fi = f.ideals[i];
    out << "  [" << i << "] ideal " << gens_text(fi.gens);
    if (fi.parent >= 0)
      out << "  witness: parent [" << fi.parent << "], form "
          << fi.x.to_string() << ", colon [" << fi.colon << "]";
    out << "\n";
  }
}

inline const char* status_name(KoszulStatus s) {
  switch (s) {
    case KoszulStatus::CertifiedKoszul:
      return "certified_koszul";
    case KoszulStatus::CertifiedNonKoszul:
      return "certified_non_koszul";
    default:
      return "linear_through_window";
  }
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

template <class K>
int cmd_gb(const CommandSpec& spec, const BoundSession<K>& ses,
           std::ostream& out) {
  const Ring<K>& ring = *ses.ring;
  std::string odesc;
  TermOrder ord = make_order(spec, ring, odesc);
  auto [iname, gens] = pick_ideal(spec, ses);
  GroebnerBasis<K> gb = buchberger(Ideal<K>(ring, gens), ord);
  if (spec.json) {
    json j;
    j["command"] = "gb";
    j["ring"] = ring_json(ring);
    j["order"] = odesc;
    j["ideal"] = iname;
    j["size"] = gb.gens().size();
    j["max_degree"] = max_gb_degree(gb);
    json g = json::array(), lm = json::array();
    for (const auto& e : gb.gens()) g.push_back(e.to_string());
    for (Mono m : gb.leading_monomials())
      lm.push_back(mono_to_string(m, ring.names()));
    j["generators"] = g;
    j["initial_monomials"] = lm;
    out << j.dump(2) << "\n";
    return 0;
  }
  out << ring_line(ring) << "\n";
  out << "order: " << odesc << "\n";
  out << "ideal " << (iname.empty() ? "(anonymous)" : iname) << ": "
      << gens_text(gens) << "\n";
  out << "gb: " << gb.gens().size() << " element(s), max degree "
      << max_gb_degree(gb) << "\n";
  for (size_t i = 0; i < gb.gens().size(); ++i)
    out << "  [" << i + 1 << "] " << gb.gens()[i].to_string() << "\n";
  return 0;
}

template <class K>
int cmd_hilbert(const CommandSpec& spec, const BoundSession<K>& ses,
                std::ostream& out) {
  const Ring<K>& ring = *ses.ring;
  std::string odesc;
  TermOrder ord = make_order(spec, ring, odesc);
  auto [iname, gens] = pick_ideal(spec, ses);
  GroebnerBasis<K> gb = buchberger(Ideal<K>(ring, gens), ord);
  TruncSeries h = hilbert_series(gb);
  int depth = spec.depth > 0 ? spec.depth : 2 * ring.n();
  TruncSeries inv = series_invert(h.at_neg(), depth);
  auto fro = froberg_obstruction(h, depth);
  if (spec.json) {
    json j;
    j["command"] = "hilbert";
    j["ring"] = ring_json(ring);
    j["order"] = odesc;
    j["ideal"] = iname;
    j["series"] = h.to_string();
    j["coefficients"] = series_json(h);
    j["depth"] = depth;
    j["inverse_at_neg"] = series_json(inv);
    if (fro)
      j["froberg_index"] = *fro;
    else
      j["froberg_index"] = nullptr;
    out << j.dump(2) << "\n";
    return 0;
  }
  out << ring_line(ring) << "\n";
  out << "order: " << odesc << "\n";
  out << "ideal " << (iname.empty() ? "(anonymous)" : iname) << ": "
      << gens_text(gens) << "\n";
  out << "H(t) = " << h.to_string() << "\n";
  out << "coefficients: " << series_csv(h) << "\n";
  out << "depth: " << depth << "\n";
  out << "1/H(-t): " << series_csv(inv) << "\n";
  if (fro)
    out << "froberg_obstruction: index " << *fro << " (coefficient "
        << inv.coeff(*fro).get_str() << ")\n";
  else
    out << "froberg_obstruction: none through degree " << depth << "\n";
  return 0;
}

template <class K>
int cmd_betti(const CommandSpec& spec, const BoundSession<K>& ses,
              std::ostream& out) {
  const Ring<K>& ring = *ses.ring;
  std::string odesc;
  TermOrder ord = make_order(spec, ring, odesc);
  auto [iname, gens] = pick_ideal(spec, ses);
  int imax = spec.imax > 0 ? spec.imax : 5;
  int jmax = spec.jmax > 0 ? spec.jmax : 2 * imax + 2;

  std::optional<FreeResolution<K>> res;
  std::optional<Quotient<K>> a;
  if (spec.module == "k") {
    a.emplace(buchberger(Ideal<K>(ring, gens), ord));
    res = resolution_of_k(*a, imax, jmax);
  } else if (spec.module == "cyclic") {
    if (gens.empty())
      throw std::runtime_error(
          "--module cyclic needs a nonzero ideal presenting the module");
    a.emplace(Quotient<K>::whole_ring(ring));
    res = minimal_free_resolution(*a, cyclic_presentation(*a, gens), imax,
                                  jmax);
  } else {
    throw std::runtime_error("--module must be 'k' or 'cyclic'");
  }
  const BettiTable& b = res->betti;

  std::string incomplete;
  for (int i = 0; i <= b.i_max(); ++i)
    if (!b.is_complete(i))
      incomplete += (incomplete.empty() ? "" : " ") + std::to_string(i);

  if (spec.json) {
    json j;
    j["command"] = "betti";
    j["ring"] = ring_json(ring);
    j["order"] = odesc;
    j["ideal"] = iname;
    j["module"] = spec.module;
    j["betti"] = betti_json(b);
    out << j.dump(2) << "\n";
    return 0;
  }
  out << ring_line(ring) << "\n";
  out << "order: " << odesc << "\n";
  out << "ideal " << (iname.empty() ? "(anonymous)" : iname) << ": "
      << gens_text(gens) << "\n";
  out << "module: " << spec.module << "\n";
  out << "imax: " << imax << "  jmax: " << jmax << "\n";
  out << "betti:\n";
  out << format_betti_m2(b);
  if (incomplete.empty()) {
    bool all_complete = true;
    for (int i = 0; i <= b.i_max(); ++i)
      all_complete = all_complete && b.is_complete(i);
    if (all_complete) {
      out << "t_degrees:";
      for (int i = 0; i <= b.i_max(); ++i) out << " " << b.t_degree(i);
      out << "\n";
    }
  } else {
    out << "incomplete columns: " << incomplete
        << " (raise --jmax to finish them)\n";
  }
  return 0;
}

template <class K>
int cmd_koszul(const CommandSpec& spec, const BoundSession<K>& ses,
               std::ostream& out) {
  const Ring<K>& ring = *ses.ring;
  std::string odesc;
  TermOrder ord = make_order(spec, ring, odesc);
  auto [iname, gens] = pick_ideal(spec, ses);
  Quotient<K> a(buchberger(Ideal<K>(ring, gens), ord));

  KoszulOptions<K> opts;
  if (spec.imax > 0) opts.i_max = spec.imax;
  if (spec.jmax > 0) opts.j_max = spec.jmax;
  if (spec.depth > 0) opts.depth = spec.depth;
  opts.max_ideals = spec.max_ideals;
  if (!spec.pool.empty()) opts.pool = parse_pool(spec.pool, ring);
  KoszulVerdict<K> v = koszul_check(a, opts);

  bool verified = false;
  if (v.filtration) verified = verify_filtration(a, *v.filtration).ok;

  if (spec.json) {
    json j;
    j["command"] = "koszul";
    j["ring"] = ring_json(ring);
    j["order"] = odesc;
    j["ideal"] = iname;
    j["status"] = status_name(v.status);
    j["window"] = {{"imax", v.i_max}, {"jmax", v.j_max}, {"depth", v.depth}};
    if (v.witness == NonKoszulWitness::FrobergNegative)
      j["witness"] = {{"kind", "froberg_negative"}, {"index", v.froberg_index}};
    else if (v.witness == NonKoszulWitness::NonlinearBetti)
      j["witness"] = {{"kind", "nonlinear_betti"},
                      {"i", v.nonlinear_i},
                      {"j", v.nonlinear_j}};
    else if (v.status == KoszulStatus::CertifiedKoszul)
      j["witness"] = {{"kind", "koszul_filtration"},
                      {"ideals", v.filtration->ideals.size()}};
    else
      j["witness"] = nullptr;
    if (v.filtration) {
      j["filtration"] = filtration_json(*v.filtration);
      j["filtration"]["verified"] = verified;
    }
    j["filtration_budget_exceeded"] = v.filtration_budget_exceeded;
    out << j.dump(2) << "\n";
  } else {
    out << ring_line(ring) << "\n";
    out << "order: " << odesc << "\n";
    out << "ideal " << (iname.empty() ? "(anonymous)" : iname) << ": "
        << gens_text(gens) << "\n";
    out << "window: imax " << v.i_max << "  jmax " << v.j_max << "  depth "
        << v.depth << "\n";
    out << "status: " << status_name(v.status) << "\n";
    if (v.witness == NonKoszulWitness::FrobergNegative)
      out << "witness: froberg_negative at index " << v.froberg_index << "\n";
    else if (v.witness == NonKoszulWitness::NonlinearBetti)
      out << "witness: nonlinear_betti at (" << v.nonlinear_i << ","
          << v.nonlinear_j << ")\n";
    else if (v.status == KoszulStatus::CertifiedKoszul)
      out << "witness: koszul_filtration with " << v.filtration->ideals.size()
          << " ideal(s)\n";
    else
      out << "witness: none (no certificate either way within the window)\n";
    if (v.filtration) {
      out << "filtration verified: " << (verified ? "true" : "false") << "\n";
      print_filtration(out, *v.filtration);
    }
    if (v.filtration_budget_exceeded)
      out << "note: filtration search budget exceeded\n";
  }
  switch (v.status) {
    case KoszulStatus::CertifiedKoszul:
      return 0;
    case KoszulStatus::CertifiedNonKoszul:
      return 10;
    default:
      return 20;
  }
}

template <class K>
int cmd_qform(const CommandSpec& spec, const BoundSession<K>& ses,
              std::ostream& out) {
  const Ring<K>& ring = *ses.ring;
  auto [fname, h] = pick_form(spec, ses);
  std::string action = spec.action.empty() ? "classify" : spec.action;
  const K& fld = ring.field();

  json j;
  j["command"] = "qform";
  j["action"] = action;
  j["ring"] = ring_json(ring);
  j["form"] = fname;

  if (action == "classify") {
    int rank = rank_alternating(qform_to_matrix(h), fld);
    bool red = rank <= 2;
    if (spec.json) {
      j["rank"] = rank;
      j["reducible"] = red;
      j["koszul_predicted"] = red;
      out << j.dump(2) << "\n";
      return 0;
    }
    out << ring_line(ring) << "\n";
    out << "form " << fname << ": " << h.to_string() << "\n";
    out << "rank: " << rank << "\n";
    out << "reducible: " << (red ? "true" : "false") << "\n";
    out << "koszul_predicted: " << (red ? "true" : "false") << "\n";
    return 0;
  }
  if (action == "normalform") {
    SymplecticNF<K> s = symplectic_normal_form(h);
    bool ok = substitute(h, s.change) == s.normal_form;
    if (spec.json) {
      j["rank"] = s.rank;
      j["normal_form"] = s.normal_form.to_string();
      json rows = json::array();
      const Matrix<K>& u = s.change.matrix();
      for (int r = 0; r < u.rows; ++r) {
        json row = json::array();
        for (int c = 0; c < u.cols; ++c) row.push_back(fld.to_string(u.at(r, c)));
        rows.push_back(row);
      }
      j["change"] = rows;
      j["verified"] = ok;
      out << j.dump(2) << "\n";
      return 0;
    }
    out << ring_line(ring) << "\n";
    out << "form " << fname << ": " << h.to_string() << "\n";
    out << "rank: " << s.rank << "\n";
    out << "normal_form: "
        << (s.normal_form.is_zero() ? "0" : s.normal_form.to_string()) << "\n";
    out << "change:\n";
    const Matrix<K>& u = s.change.matrix();
    for (int r = 0; r < u.rows; ++r) {
      out << "  [";
      for (int c = 0; c < u.cols; ++c)
        out << " " << fld.to_string(u.at(r, c));
      out << " ]\n";
    }
    out << "verified: " << (ok ? "true" : "false") << "\n";
    return 0;
  }
  if (action == "factor") {
    FactorResult<K> fr = factor_reducible(h);
    using Kind = typename FactorResult<K>::Kind;
    const char* kind = fr.kind == Kind::Zero        ? "zero"
                       : fr.kind == Kind::Product   ? "product"
                                                    : "irreducible";
    if (spec.json) {
      j["kind"] = kind;
      if (fr.factors) {
        j["factors"] = {fr.factors->first.to_string(),
                        fr.factors->second.to_string()};
      }
      out << j.dump(2) << "\n";
      return 0;
    }
    out << ring_line(ring) << "\n";
    out << "form " << fname << ": " << h.to_string() << "\n";
    out << "kind: " << kind << "\n";
    if (fr.factors)
      out << "factors: (" << fr.factors->first.to_string() << ") * ("
          << fr.factors->second.to_string() << ")\n";
    return 0;
  }
  throw std::runtime_error("qform action must be classify, normalform, or factor");
}

template <class K>
int cmd_filtration(const CommandSpec& spec, const BoundSession<K>& ses,
                   std::ostream& out) {
  const Ring<K>& ring = *ses.ring;
  std::string odesc;
  TermOrder ord = make_order(spec, ring, odesc);
  auto [iname, gens] = pick_ideal(spec, ses);
  Quotient<K> a(buchberger(Ideal<K>(ring, gens), ord));
  std::string action = spec.action.empty() ? "find" : spec.action;

  if (action == "find") {
    std::vector<Element<K>> pool;
    if (!spec.pool.empty()) pool = parse_pool(spec.pool, ring);
    FiltrationSearch<K> s =
        find_koszul_filtration(a, pool, spec.max_ideals);
    bool verified =
        s.filtration && verify_filtration(a, *s.filtration).ok;
    if (spec.json) {
      json j;
      j["command"] = "filtration";
      j["action"] = "find";
      j["ring"] = ring_json(ring);
      j["order"] = odesc;
      j["ideal"] = iname;
      j["pool"] = spec.pool.empty() ? "variables" : spec.pool;
      j["ideals_seen"] = s.ideals_seen;
      j["budget_exceeded"] = s.budget_exceeded;
      j["found"] = s.filtration.has_value();
      if (s.filtration) {
        j["filtration"] = filtration_json(*s.filtration);
        j["filtration"]["verified"] = verified;
      }
      out << j.dump(2) << "\n";
    } else {
      out << ring_line(ring) << "\n";
      out << "order: " << odesc << "\n";
      out << "ideal " << (iname.empty() ? "(anonymous)" : iname) << ": "
          << gens_text(gens) << "\n";
      out << "pool: " << (spec.pool.empty() ? "variables" : spec.pool) << "\n";
      out << "ideals considered: " << s.ideals_seen << "\n";
      if (s.budget_exceeded) out << "note: search budget exceeded\n";
      out << "found: " << (s.filtration ? "true" : "false") << "\n";
      if (s.filtration) {
        out << "verified: " << (verified ? "true" : "false") << "\n";
        print_filtration(out, *s.filtration);
      }
    }
    return s.filtration && verified ? 0 : 3;
  }
  if (action == "verify") {
    if (spec.cert.empty())
      throw std::runtime_error("filtration verify needs --cert FILE");
    std::ifstream in(spec.cert);
    if (!in) throw std::runtime_error("cannot read '" + spec.cert + "'");
    json cj = json::parse(in);
    Filtration<K> f = filtration_from_json<K>(cj, ring);
    VerifyReport rep = verify_filtration(a, f);
    if (spec.json) {
      json j;
      j["command"] = "filtration";
      j["action"] = "verify";
      j["ring"] = ring_json(ring);
      j["ideal"] = iname;
      j["ok"] = rep.ok;
      j["message"] = rep.message;
      out << j.dump(2) << "\n";
    } else {
      out << ring_line(ring) << "\n";
      out << "ideal " << (iname.empty() ? "(anonymous)" : iname) << ": "
          << gens_text(gens) << "\n";
      out << "ok: " << (rep.ok ? "true" : "false") << "\n";
      if (!rep.ok) out << "reason: " << rep.message << "\n";
    }
    return rep.ok ? 0 : 2;
  }
  throw std::runtime_error("filtration action must be find or verify");
}

template <class K>
int cmd_oracle(const CommandSpec& spec, const BoundSession<K>& ses,
               std::ostream& out) {
  const Ring<K>& ring = *ses.ring;
  std::string odesc;
  TermOrder ord = make_order(spec, ring, odesc);
  auto [iname, gens] = pick_ideal(spec, ses);
  Ideal<K> ideal(ring, gens);
  GroebnerBasis<K> gb = buchberger(ideal, ord);
  int dmax = spec.dmax >= 0 ? spec.dmax : ring.n();

  bool agree = true;
  std::vector<std::pair<long long, long long>> rows;
  for (int d = 0; d <= dmax; ++d) {
    long long a = dim_oracle(ideal, d);
    long long b = static_cast<long long>(standard_monomials(gb, d).size());
    rows.emplace_back(a, b);
    agree = agree && a == b;
  }
  if (spec.json) {
    json j;
    j["command"] = "oracle";
    j["ring"] = ring_json(ring);
    j["order"] = odesc;
    j["ideal"] = iname;
    json dims = json::array();
    for (int d = 0; d <= dmax; ++d)
      dims.push_back({{"degree", d},
                      {"dim_oracle", rows[static_cast<size_t>(d)].first},
                      {"standard_monomials",
                       rows[static_cast<size_t>(d)].second}});
    j["dims"] = dims;
    j["agree"] = agree;
    out << j.dump(2) << "\n";
  } else {
    out << ring_line(ring) << "\n";
    out << "order: " << odesc << "\n";
    out << "ideal " << (iname.empty() ? "(anonymous)" : iname) << ": "
        << gens_text(gens) << "\n";
    out << "degree dim_oracle standard_monomials\n";
    for (int d = 0; d <= dmax; ++d)
      out << d << " " << rows[static_cast<size_t>(d)].first << " "
          << rows[static_cast<size_t>(d)].second << "\n";
    out << "agree: " << (agree ? "true" : "false") << "\n";
  }
  return agree ? 0 : 1;
}

template <class K>
Element<K> random_quadric(const Ring<K>& ring, std::mt19937_64& rng) {
  std::vector<std::pair<Mono, typename K::Elem>> terms;
  const K& f = ring.field();
  for (int i = 0; i < ring.n(); ++i)
    for (int j = i + 1; j < ring.n(); ++j) {
      long c;
      if constexpr (std::is_same_v<K, Rationals>) {
        c = static_cast<long>(rng() % 9) - 4;  // small integers in [-4, 4]
      } else {
        c = static_cast<long>(rng() % ring.field().characteristic());
      }
      if (c == 0) continue;
      terms.emplace_back((Mono(1) << i) | (Mono(1) << j), f.from_int(c));
    }
  return Element<K>::from_terms(ring, std::move(terms));
}

template <class K>
int cmd_crossval(const CommandSpec& spec, const BoundSession<K>& ses,
                 std::ostream& out) {
  const Ring<K>& ring = *ses.ring;
  if (ring.mode() != RingMode::Exterior)
    throw std::runtime_error("crossval needs an exterior ring");
  int imax = spec.imax > 0 ? spec.imax : 6;
  int depth = spec.depth > 0 ? spec.depth : 12;

  std::vector<std::pair<std::string, Element<K>>> cases;
  std::mt19937_64 rng(spec.seed);
  for (long c = 0; c < spec.count; ++c)
    cases.emplace_back("random " + std::to_string(c),
                       random_quadric(ring, rng));
  if (spec.normal_forms) {
    const K& f = ring.field();
    for (int r = 0; 2 * r <= ring.n(); ++r) {
      std::vector<std::pair<Mono, typename K::Elem>> terms;
      for (int k = 0; k < r; ++k)
        terms.emplace_back((Mono(1) << (2 * k)) | (Mono(1) << (2 * k + 1)),
                           f.one());
      cases.emplace_back("normal form rank " + std::to_string(2 * r),
                         Element<K>::from_terms(ring, std::move(terms)));
    }
  }

  long disagreements = 0;
  json jcases = json::array();
  std::ostringstream lines;
  for (const auto& [label, h] : cases) {
    CrossReport<K> rep = cross_validate(h, imax, depth);
    if (!rep.agree) ++disagreements;
    if (spec.json) {
      json jc;
      jc["label"] = label;
      jc["h"] = h.is_zero() ? "0" : h.to_string();
      jc["rank"] = rep.rank;
      jc["predicted_koszul"] = rep.predicted_koszul;
      jc["status"] = status_name(rep.verdict.status);
      jc["agree"] = rep.agree;
      jcases.push_back(jc);
    } else {
      lines << "[" << label << "] rank " << rep.rank << ", predicted "
            << (rep.predicted_koszul ? "koszul" : "non_koszul") << ", verdict "
            << status_name(rep.verdict.status) << ", "
            << (rep.agree ? "agree" : "DISAGREE") << "\n";
    }
  }
  if (spec.json) {
    json j;
    j["command"] = "crossval";
    j["ring"] = ring_json(ring);
    j["seed"] = spec.seed;
    j["imax"] = imax;
    j["depth"] = depth;
    j["cases"] = jcases;
    j["count"] = cases.size();
    j["disagreements"] = disagreements;
    out << j.dump(2) << "\n";
  } else {
    out << ring_line(ring) << "\n";
    out << "seed: " << spec.seed << "  imax: " << imax
        << "  depth: " << depth << "\n";
    out << lines.str();
    out << "cases: " << cases.size() << "\n";
    out << "disagreements: " << disagreements << "\n";
  }
  return disagreements == 0 ? 0 : 1;
}

template <class K>
int run_typed(const CommandSpec& spec, const BoundSession<K>& ses,
              std::ostream& out) {
  if (spec.command == "gb") return cmd_gb(spec, ses, out);
  if (spec.command == "hilbert") return cmd_hilbert(spec, ses, out);
  if (spec.command == "betti") return cmd_betti(spec, ses, out);
  if (spec.command == "koszul") return cmd_koszul(spec, ses, out);
  if (spec.command == "qform") return cmd_qform(spec, ses, out);
  if (spec.command == "filtration") return cmd_filtration(spec, ses, out);
  if (spec.command == "oracle") return cmd_oracle(spec, ses, out);
  if (spec.command == "crossval") return cmd_crossval(spec, ses, out);
  throw std::runtime_error("unknown command '" + spec.command + "'");
}

}  // namespace cmddetail

inline int run_command(const CommandSpec& spec, std::ostream& out,
                       std::ostream& err) {
  try {
    std::string text = spec.session_text;
    if (text.empty()) {
      if (spec.session_path.empty())
        throw std::runtime_error("no session file given");
      std::ifstream in(spec.session_path);
      if (!in)
        throw std::runtime_error("cannot read '" + spec.session_path + "'");
      std::ostringstream buf;
      buf << in.rdbuf();
      text = buf.str();
    }
    SessionAst ast = parse_session(text);
    AnySession ses = bind_session(ast);
    return std::visit(
        [&](const auto& s) { return cmddetail::run_typed(spec, s, out); },
        ses);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  }
}

}  // namespace wedge
