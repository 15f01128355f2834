#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"

#include "scat/galois.hpp"
#include "scat/groups.hpp"
#include "scat/intutil.hpp"
#include "scat/mrd.hpp"
#include "scat/scatter.hpp"

namespace {

using nlohmann::json;

struct out_opts {
  std::string path;
  std::string csv_path;
  bool no_timestamp = false;
};

void add_out(CLI::App *cmd, out_opts &o)
{
  cmd->add_option("-o,--out", o.path, "write the JSON report here instead of stdout");
  cmd->add_flag("--no-timestamp", o.no_timestamp,
                "omit the timestamp so identical runs give byte-identical reports");
}

void add_limits(CLI::App *cmd, scat::run_limits &lim)
{
  cmd->add_option("--max-specializations", lim.max_specializations,
                  "budget for specialization scans");
  cmd->add_option("--threads", lim.threads, "worker threads (0 = hardware)");
}

int emit(const out_opts &o, const std::string &command, json params, json result,
         int status)
{
  json rep;
  rep["command"] = command;
  if (!o.no_timestamp) {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    rep["timestamp"] = buf;
  }
  rep["params"] = std::move(params);
  rep["result"] = std::move(result);
  std::string text = rep.dump(2) + "\n";
  if (o.path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.path);
    if (!f)
      scat::fail(scat::errc::parse_error, "cannot write " + o.path);
    f << text;
  }
  return status;
}

void write_csv(const std::string &path, const std::string &header,
               const std::vector<std::string> &rows)
{
  std::ofstream f(path);
  if (!f)
    scat::fail(scat::errc::parse_error, "cannot write " + path);
  f << header << "\n";
  for (const auto &r : rows)
    f << r << "\n";
}

std::vector<uint64_t> parse_u64_list(const std::string &s)
{
  std::vector<uint64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    uint64_t v = 0;
    try {
      v = std::stoull(item, &pos);
    } catch (const std::exception &) {
      pos = 0;
    }
    if (pos != item.size() || item.empty())
      scat::fail(scat::errc::parse_error, "bad integer list entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty())
    scat::fail(scat::errc::parse_error, "empty integer list");
  return out;
}

struct poly_opts {
  std::string file;
  std::string field;  // p:d1,d2,...
  std::string coeffs; // codes on the top layer
};

void add_poly(CLI::App *cmd, poly_opts &po)
{
  auto *pf = cmd->add_option("--poly", po.file, "polynomial descriptor JSON file");
  auto *fs = cmd->add_option("--field", po.field,
                             "inline tower 'p:d1,d2,...' (layers above F_p)");
  auto *cs = cmd->add_option(
      "--coeffs", po.coeffs, "inline coefficient codes on the top layer, 'a0,a1,...'");
  fs->needs(cs);
  cs->needs(fs);
  pf->excludes(fs);
  pf->excludes(cs);
}

json load_json_file(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
    scat::fail(scat::errc::parse_error, "cannot open " + path);
  return json::parse(in);
}

scat::lin_poly load_poly(const poly_opts &po)
{
  if (!po.file.empty())
    return scat::lin_poly_from_json(load_json_file(po.file));
  if (po.field.empty())
    scat::fail(scat::errc::parse_error,
               "a polynomial is required: --poly FILE or --field/--coeffs");
  auto colon = po.field.find(':');
  if (colon == std::string::npos)
    scat::fail(scat::errc::parse_error, "--field wants the form p:d1,d2,...");
  uint64_t p = parse_u64_list(po.field.substr(0, colon)).at(0);
  std::vector<uint32_t> degs;
  for (uint64_t d : parse_u64_list(po.field.substr(colon + 1)))
    degs.push_back(uint32_t(d));
  auto F = scat::make_field(p, degs);
  return scat::make_lin_poly(F, uint32_t(F->num_layers() - 1), parse_u64_list(po.coeffs));
}

// towers from inline specs usually stop at the coefficient layer; grow them
// on demand when m asks for a higher one
scat::lin_poly for_m(scat::lin_poly l, uint32_t m)
{
  if (m >= 2) {
    try {
      target_layer(l, m);
    } catch (const scat::error &) {
      return scat::extend_for_m(l, m);
    }
  }
  return l;
}

// ---- verify: recheck the integer witnesses of a stored report ----

struct verify_state {
  uint64_t checks = 0;
  std::vector<std::string> failures;
  void expect(bool ok, const std::string &what)
  {
    ++checks;
    if (!ok)
      failures.push_back(what);
  }
};

uint64_t upow(uint64_t b, uint64_t e)
{
  uint64_t out = 0;
  if (!scat::checked_pow_u64(b, uint32_t(e), out))
    scat::fail(scat::errc::budget_exceeded, "power overflows in verification");
  return out;
}

void verify_kummer(const json &r, verify_state &v)
{
  uint64_t q = r.at("q"), n = r.at("n"), m = r.at("m"), t = r.at("t");
  uint64_t geom = upow(q, t) - 1;
  uint64_t cfd = t / std::gcd(t, n * m);
  v.expect(r.at("geometric_order") == geom, "geometric order is q^t - 1");
  v.expect(r.at("constant_field_degree") == cfd,
           "constant field degree is t/gcd(t, nm)");
  v.expect(r.at("arithmetic_order") == geom * cfd, "arithmetic order is geom * cfd");
  v.expect(r.at("frobenius_power") == (n * m) % t, "frobenius power is nm mod t");
  bool differ = r.at("groups_differ"), sc = r.at("scattered");
  v.expect(differ == (cfd > 1), "groups differ exactly when cfd > 1");
  v.expect(r.at("corollary_holds") == (sc == differ),
           "corollary flag is the biconditional");
}

void verify_mrd(const json &r, verify_state &v)
{
  uint64_t q = r.at("q"), n = r.at("n"), mr = r.at("min_rank");
  uint64_t qn = upow(q, n);
  v.expect(r.at("codewords") == qn * qn, "codewords is q^{2n}");
  v.expect(r.at("classes_checked") == qn + 1, "one representative per projective class");
  v.expect(mr >= 1 && mr <= n, "minimum rank lies in [1, n]");
  v.expect(r.at("is_mrd") == (mr + 1 == n), "is_mrd means distance n - 1");
}

void verify_orders(const json &r, verify_state &v)
{
  uint32_t d = r.at("d");
  uint64_t q = r.at("q");
  v.expect(r.at("gl") == scat::order_gl(d, q).str(), "|GL_d(F_q)|");
  v.expect(r.at("sl") == scat::order_sl(d, q).str(), "|SL_d(F_q)|");
  v.expect(r.at("gammal1") == scat::order_gammal1(d, q).str(), "|GammaL_1(q^d)|");
  if (r.contains("sp"))
    v.expect(r.at("sp") == scat::order_sp(d, q).str(), "|Sp_d(F_q)|");
}

void verify_zsigmondy(const json &r, verify_state &v)
{
  uint64_t b = r.at("b");
  uint32_t n = r.at("n");
  if (r.at("prime").is_null()) {
    v.expect(scat::zsigmondy(b, n) == std::nullopt, "exception case re-derives");
    return;
  }
  uint64_t rr = r.at("prime");
  v.expect(scat::is_prime_u64(rr), "witness is prime");
  v.expect(scat::powmod_u64(b % rr, n, rr) == 1, "prime divides b^n - 1");
  for (uint64_t s : scat::prime_factors_u64(n))
    v.expect(scat::powmod_u64(b % rr, n / s, rr) != 1, "order of b is exactly n");
}

void verify_obstructions(const json &arr, verify_state &v)
{
  for (const auto &r : arr) {
    std::string label = r.at("case");
    uint64_t p = r.at("p");
    uint32_t a = r.at("a"), d = r.at("d"), e = r.at("e");
    bool holds = r.at("obstruction_holds");
    const json &w = r.at("witness");
    scat::bigint ambient = scat::order_gl(d, upow(p, a));
    uint32_t ad = a * d;
    if (label == "Case1") {
      std::string family = w.value("family", "SL");
      uint64_t vs = w.at("vp_subgroup"), va = w.at("vp_ambient");
      v.expect(va == uint64_t(ad) * (d - 1) / 2, "ambient p-valuation");
      v.expect(vs == (family == "SL" ? uint64_t(ad) * (e - 1) / 2
                                     : uint64_t(ad) * e / 4),
               "subgroup p-valuation");
      v.expect(holds == (vs > va), "valuation comparison decides the case");
      if (family == "SL")
        v.expect((e == d) == !holds, "e = d is the only admitted shape");
    } else if (label == "Case2") {
      std::string family = w.value("family", "SL");
      uint64_t rr = w.at("zsigmondy_prime");
      uint64_t Pe = upow(p, ad / e);
      scat::bigint sub =
          family == "SL" ? scat::order_sl(e, Pe) : scat::order_sp(e, Pe);
      v.expect(scat::is_prime_u64(rr), "witness is prime");
      v.expect(sub % rr == 0, "witness divides the subgroup order");
      v.expect(ambient % rr != 0, "witness misses the ambient order");
      v.expect(holds, "Case2 always obstructs");
    } else if (label == "SL2Singer") {
      uint64_t pt = w.at("ptilde");
      v.expect(pt == upow(p, a / 2), "ptilde is p^{a/2}");
      scat::bigint n1 =
          (boost::multiprecision::pow(scat::bigint(pt), 2 * d) - 1) /
          (scat::bigint(pt) * pt - 1);
      scat::bigint n2 = boost::multiprecision::pow(scat::bigint(pt), d) + 1;
      v.expect(w.at("singer_intersection") == n1.str(), "Singer intersection count");
      v.expect(w.at("required_divisor") == n2.str(), "required divisor p~^d + 1");
      v.expect(w.at("remainder") == scat::bigint(n1 % n2).str(), "division remainder");
      v.expect(holds == (n1 % n2 != 0), "non-divisibility decides the case");
    } else if (label == "Sp4") {
      uint64_t P = upow(p, ad / 4);
      v.expect(w.at("sp4_order") == scat::order_sp4(P).str(), "|Sp_4| recomputes");
      v.expect(w.at("divides_ambient") == (ambient % scat::order_sp4(P) == 0),
               "divisibility flag recomputes");
      v.expect(holds == (ambient % scat::order_sp4(P) != 0),
               "non-divisibility decides the case");
    } else if (label == "Sporadic") {
      v.expect(ad % 2 == 0, "sporadic shapes need even ad");
      v.expect(holds, "sporadic case is excluded");
    } else {
      v.expect(false, "unknown case label " + label);
    }
  }
}

void verify_embed(const json &r, verify_state &v)
{
  uint64_t reps = r.at("class_reps"), bs = r.at("b_candidates");
  v.expect(reps == 4, "four order-13 class representatives");
  v.expect(bs == 14744, "full B^2 = -Id candidate set");
  v.expect(r.at("pairs") == reps * bs, "pair count is the product");
  v.expect(r.at("order_filtered") == r.at("chain_runs"),
           "every filtered pair got a chain run");
  bool noemb = r.at("no_embedding"), control = r.at("control_hit");
  uint64_t hits = r.at("hits");
  v.expect(noemb == (hits == 0 && control), "verdict matches hits and control");
  if (r.contains("facts")) {
    const json &f = r.at("facts");
    v.expect(f.at("gl1_order") == scat::order_gl(1, 9).str(), "|GL_1(F_9)|");
    v.expect(f.at("gl2_order") == scat::order_gl(2, 9).str(), "|GL_2(F_9)|");
    v.expect(f.at("gl1_divisible_by_13") == false, "13 misses |GL_1(F_9)|");
    v.expect(f.at("gl2_divisible_by_13") == false, "13 misses |GL_2(F_9)|");
    if (f.contains("b_type_counts")) {
      uint64_t sum = 0;
      for (const auto &c : f.at("b_type_counts"))
        sum += uint64_t(c);
      v.expect(sum == bs, "B candidates split into the three types");
    }
  }
}

void verify_equivalence_report(const json &r, verify_state &v)
{
  uint64_t q = r.at("q"), n = r.at("n"), m = r.at("m");
  v.expect(r.at("places") == upow(q, n * m), "one place per element of F_{q^{nm}}");
  v.expect(r.at("all_consistent") == (r.at("inconsistent") == 0),
           "consistency flag matches the count");
  bool sc = r.at("scattered"), gb = r.at("global_bound_holds");
  v.expect(r.at("agree") == (sc == gb), "agreement flag is the biconditional");
  if (r.contains("detail"))
    for (const auto &pl : r.at("detail")) {
      uint64_t k = pl.at("kernel_dim");
      if (pl.at("consistent"))
        v.expect(pl.at("fixed_roots") == upow(q, k) - 1,
                 "fixed roots are q^k - 1 at a consistent place");
    }
}

void verify_ramify(const json &r, verify_state &v)
{
  uint64_t total0 = 0;
  bool first = true;
  for (const auto &prof : r.at("profiles")) {
    uint64_t total = prof.at("total_degree"), sum = 0;
    bool wild = false;
    for (const auto &en : prof.at("entries")) {
      uint64_t e = en.at("e"), mult = en.at("multiplicity"), width = en.at("width");
      v.expect(width == e * mult, "segment width is e times multiplicity");
      sum += width;
      if (en.at("wild").get<bool>())
        wild = true;
    }
    v.expect(sum == total, "widths sum to the total degree");
    v.expect(prof.at("q_divisible") == wild, "wildness flag matches the entries");
    if (first) {
      total0 = total;
      first = false;
    } else {
      v.expect(total == total0, "both places share the total q^d - 1");
    }
  }
}

int run_verify(const out_opts &o, const std::string &file)
{
  json j = load_json_file(file);
  json r = (j.contains("result") && j.contains("command")) ? j.at("result") : j;

  verify_state v;
  std::string kind;
  if (r.contains("geometric_order")) {
    kind = "kummer";
    verify_kummer(r, v);
  } else if (r.contains("min_rank")) {
    kind = "mrd";
    verify_mrd(r, v);
  } else if (r.contains("reports")) {
    kind = "obstructions";
    verify_obstructions(r.at("reports"), v);
  } else if (r.is_array() && !r.empty() && r.at(0).contains("case")) {
    kind = "obstructions";
    verify_obstructions(r, v);
  } else if (r.contains("b_candidates")) {
    kind = "embed";
    verify_embed(r, v);
  } else if (r.contains("global_bound_holds")) {
    kind = "equivalence";
    verify_equivalence_report(r, v);
  } else if (r.contains("profiles")) {
    kind = "ramify";
    verify_ramify(r, v);
  } else if (r.contains("gl")) {
    kind = "orders";
    verify_orders(r, v);
  } else if (r.contains("prime") && r.contains("b")) {
    kind = "zsigmondy";
    verify_zsigmondy(r, v);
  } else {
    std::cerr << "error: report kind not recognized; nothing to verify\n";
    return 1;
  }

  json result = {{"kind", kind},
                 {"checks", v.checks},
                 {"failures", v.failures},
                 {"valid", v.failures.empty()}};
  return emit(o, "verify", {{"report", file}}, result, v.failures.empty() ? 0 : 2);
}

// ---- subcommand bodies ----

int run_check(const out_opts &o, const poly_opts &po, uint32_t m, uint32_t t,
              bool profile, const scat::run_limits &lim)
{
  auto l = for_m(load_poly(po), m);
  json params = {{"poly", lin_poly_to_json(l)}, {"m", m}, {"t", t}};
  bool sc = is_scattered(l, m, t, lim);
  json result = {{"scattered", sc}};
  if (profile) {
    auto pr = root_count_profile(l, m, t, lim);
    result["profile"] = pr.to_json();
    if (!o.csv_path.empty()) {
      std::vector<std::string> rows;
      for (auto [dim, count] : pr.histogram)
        rows.push_back(std::to_string(dim) + "," + std::to_string(count));
      write_csv(o.csv_path, "kernel_dim,count", rows);
    }
  }
  return emit(o, "check", params, result, sc ? 0 : 2);
}

int run_scan(const out_opts &o, const poly_opts &po, uint32_t t, uint32_t m_max,
             const scat::run_limits &lim)
{
  auto l = load_poly(po);
  json params = {{"poly", lin_poly_to_json(l)}, {"t", t}, {"m_max", m_max}};
  auto rep = exceptional_scan(l, t, m_max, lim);
  return emit(o, "scan", params, rep.to_json(), 0);
}

int run_orbits(const out_opts &o, const poly_opts &po, uint32_t m, uint32_t t,
               const scat::run_limits &lim)
{
  auto l = for_m(load_poly(po), m);
  scat::require_t_normalized(l, t);
  json params = {{"poly", lin_poly_to_json(l)}, {"m", m}, {"t", t}};
  size_t T = target_layer(l, m);
  uint64_t Q = l.F->cardinality(T);
  if (Q > lim.max_specializations)
    scat::fail(scat::errc::budget_exceeded, "specialization budget exceeded");

  std::map<std::string, std::pair<json, uint64_t>> hist;
  for (uint64_t s0 = 0; s0 < Q; ++s0) {
    auto ot = scat::orbit_type_at(l, t, m, s0);
    json key = {{"degrees", ot.degrees},
                {"ramified", ot.ramified},
                {"degenerate", ot.degenerate}};
    auto [it, fresh] = hist.try_emplace(key.dump(), key, 0);
    ++it->second.second;
  }
  json rows = json::array();
  std::vector<std::string> csv;
  for (auto &[k, v] : hist) {
    json row = v.first;
    row["count"] = v.second;
    rows.push_back(row);
    std::string degs;
    for (const auto &d : v.first.at("degrees")) {
      if (!degs.empty())
        degs += "+";
      degs += std::to_string(uint64_t(d));
    }
    if (degs.empty())
      degs = "-";
    csv.push_back(degs + "," + (v.first.at("ramified") ? "1" : "0") + "," +
                  (v.first.at("degenerate") ? "1" : "0") + "," +
                  std::to_string(v.second));
  }
  if (!o.csv_path.empty())
    write_csv(o.csv_path, "degrees,ramified,degenerate,count", csv);
  json result = {{"specializations", Q}, {"histogram", rows}};
  return emit(o, "orbits", params, result, 0);
}

int run_ramify(const out_opts &o, const poly_opts &po, uint32_t t,
               const std::string &place)
{
  auto l = load_poly(po);
  json params = {{"poly", lin_poly_to_json(l)}, {"t", t}, {"place", place}};
  json profiles = json::array();
  if (place == "0" || place == "both")
    profiles.push_back(scat::newton_ramification(l, t, false).to_json());
  if (place == "inf" || place == "both")
    profiles.push_back(scat::newton_ramification(l, t, true).to_json());
  return emit(o, "ramify", params, {{"profiles", profiles}}, 0);
}

int run_kummer(const out_opts &o, uint64_t q, uint32_t n, uint32_t m, uint32_t t,
               const scat::run_limits &lim)
{
  json params = {{"q", q}, {"n", n}, {"m", m}, {"t", t}};
  auto rep = scat::kummer_monodromy(q, n, m, t, lim);
  return emit(o, "kummer", params, rep.to_json(), rep.cor_holds ? 0 : 2);
}

int run_orders(const out_opts &o, uint32_t d, uint64_t q)
{
  json params = {{"d", d}, {"q", q}};
  json result = {{"d", d},
                 {"q", q},
                 {"gl", scat::order_gl(d, q).str()},
                 {"sl", scat::order_sl(d, q).str()},
                 {"gammal1", scat::order_gammal1(d, q).str()}};
  if (d % 2 == 0)
    result["sp"] = scat::order_sp(d, q).str();
  return emit(o, "groups orders", params, result, 0);
}

int run_zsigmondy(const out_opts &o, uint64_t b, uint32_t n)
{
  json params = {{"b", b}, {"n", n}};
  auto r = scat::zsigmondy(b, n);
  json result = {{"b", b}, {"n", n}, {"prime", r ? json(*r) : json(nullptr)}};
  return emit(o, "groups zsigmondy", params, result, r ? 0 : 2);
}

int run_classify(const out_opts &o, const std::string &file)
{
  json j = load_json_file(file);
  auto F = scat::field_ctx::from_json(j.at("field"));
  size_t li = j.value("layer", size_t{1});
  std::vector<scat::matrix> gens;
  for (const auto &gj : j.at("generators")) {
    uint32_t d = uint32_t(gj.size());
    scat::matrix g(d, d);
    for (uint32_t r = 0; r < d; ++r) {
      if (gj.at(r).size() != d)
        scat::fail(scat::errc::parse_error, "generator rows must be square");
      for (uint32_t c = 0; c < d; ++c)
        g.at(r, c) = gj.at(r).at(c).get<uint32_t>();
    }
    gens.push_back(std::move(g));
  }
  auto G = scat::make_matrix_group(F, li, gens);
  json params = {{"group", file}, {"d", G.d}, {"q", G.q()}};
  auto cls = scat::classify_transitive(G);
  bool conclusive = cls.verdict != scat::transitive_class::inconclusive;
  return emit(o, "groups classify", params, cls.to_json(), conclusive ? 0 : 2);
}

int run_obstructions(const out_opts &o, uint64_t p, uint32_t a, uint32_t d)
{
  json params = {{"p", p}, {"a", a}, {"d", d}};
  auto reps = scat::proposition_obstructions(p, a, d);
  json arr = json::array();
  bool ok = true;
  for (const auto &r : reps) {
    arr.push_back(r.to_json());
    ok = ok && (r.obstruction_holds || (r.case_label == "Case1" && r.e == d));
  }
  json result = {{"reports", arr}, {"all_non_admitted_hold", ok}};
  return emit(o, "groups obstructions", params, result, ok ? 0 : 2);
}

int run_embed_check(const out_opts &o, const scat::run_limits &lim)
{
  auto cert = scat::no_embedding_sl2_13_in_gl3_9(lim.threads);
  json result = cert.to_json();
  result["verdict"] = cert.no_embedding ? "NoEmbedding" : "EmbeddingFound";
  return emit(o, "groups embed-check", {{"threads", lim.threads}}, result,
              cert.no_embedding ? 0 : 2);
}

int run_mrd(const out_opts &o, const poly_opts &po, const scat::run_limits &lim)
{
  auto l = load_poly(po);
  json params = {{"poly", lin_poly_to_json(l)}};
  try {
    auto rep = min_rank_distance(build_code(l, lim), lim);
    return emit(o, "mrd", params, rep.to_json(), rep.is_mrd ? 0 : 2);
  } catch (const scat::error &e) {
    if (e.code() != scat::errc::not_scattered)
      throw;
    json result = {{"is_mrd", false}, {"reason", e.what()}};
    return emit(o, "mrd", params, result, 2);
  }
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"scattered linearized polynomials: specialization scans, "
               "ramification profiles, Galois monodromy, matrix-group "
               "certificates, and rank-metric code checks"};
  app.require_subcommand(1);

  scat::run_limits lim = scat::default_limits();
  std::function<int()> action;

  out_opts o;
  poly_opts po;
  uint32_t m = 1, t = 0, m_max = 4, d = 3, a = 1, n = 1;
  uint64_t q = 3, b = 2, zn_b = 2;
  uint32_t zn = 1;
  bool profile = false;
  std::string place = "both", file;

  auto *check = app.add_subcommand("check", "decide scatteredness of one polynomial");
  add_poly(check, po);
  check->add_option("-m", m, "extension multiplier");
  check->add_option("-t", t, "twist index");
  check->add_flag("--profile", profile, "include the kernel-dimension histogram");
  check->add_option("--csv", o.csv_path, "histogram CSV path (with --profile)");
  add_limits(check, lim);
  add_out(check, o);
  check->callback([&] { action = [&] { return run_check(o, po, m, t, profile, lim); }; });

  auto *scan = app.add_subcommand("scan", "scatteredness across m = 1..m_max");
  add_poly(scan, po);
  scan->add_option("-t", t, "twist index");
  scan->add_option("--m-max", m_max, "largest extension multiplier");
  add_limits(scan, lim);
  add_out(scan, o);
  scan->callback([&] { action = [&] { return run_scan(o, po, t, m_max, lim); }; });

  auto *orbits = app.add_subcommand(
      "orbits", "Frobenius orbit types of every specialization");
  add_poly(orbits, po);
  orbits->add_option("-m", m, "extension multiplier");
  orbits->add_option("-t", t, "twist index")->required();
  orbits->add_option("--csv", o.csv_path, "histogram CSV path");
  add_limits(orbits, lim);
  add_out(orbits, o);
  orbits->callback([&] { action = [&] { return run_orbits(o, po, m, t, lim); }; });

  auto *ramify =
      app.add_subcommand("ramify", "Newton-polygon ramification at s = 0 and infinity");
  add_poly(ramify, po);
  ramify->add_option("-t", t, "twist index")->required();
  ramify->add_option("--place", place, "0, inf, or both")
      ->check(CLI::IsMember({"0", "inf", "both"}));
  add_out(ramify, o);
  ramify->callback([&] { action = [&] { return run_ramify(o, po, t, place); }; });

  auto *kummer =
      app.add_subcommand("kummer", "exact monodromy of the family l = x");
  kummer->add_option("-q", q, "base field size")->required();
  kummer->add_option("-n", n, "coefficient extension degree")->required();
  kummer->add_option("-m", m, "extension multiplier")->required();
  kummer->add_option("-t", t, "twist index")->required();
  add_limits(kummer, lim);
  add_out(kummer, o);
  kummer->callback([&] { action = [&] { return run_kummer(o, q, n, m, t, lim); }; });

  auto *groups = app.add_subcommand("groups", "group-theoretic certificates");
  groups->require_subcommand(1);

  auto *orders = groups->add_subcommand("orders", "classical group orders");
  orders->add_option("-d", d, "dimension")->required();
  orders->add_option("-q", q, "field size")->required();
  add_out(orders, o);
  orders->callback([&] { action = [&] { return run_orders(o, d, q); }; });

  auto *zs = groups->add_subcommand("zsigmondy", "primitive prime divisor of b^n - 1");
  zs->add_option("-b", zn_b, "base")->required();
  zs->add_option("-n", zn, "exponent")->required();
  add_out(zs, o);
  zs->callback([&] { action = [&] { return run_zsigmondy(o, zn_b, zn); }; });

  auto *classify = groups->add_subcommand(
      "classify", "transitive subgroup dichotomy for a generator file");
  classify->add_option("--group", file, "group descriptor JSON file")->required();
  add_out(classify, o);
  classify->callback([&] { action = [&] { return run_classify(o, file); }; });

  auto *obstructions =
      groups->add_subcommand("obstructions", "integer certificates per subgroup shape");
  obstructions->add_option("-p", b, "odd prime")->required();
  obstructions->add_option("-a", a, "exponent of q = p^a")->required();
  obstructions->add_option("-d", d, "odd prime dimension")->required();
  add_out(obstructions, o);
  obstructions->callback(
      [&] { action = [&] { return run_obstructions(o, b, a, d); }; });

  auto *embed = groups->add_subcommand(
      "embed-check", "exhaustive SL_2(F_13) pair search inside GL_3(F_9)");
  embed->add_option("--threads", lim.threads, "worker threads (0 = hardware)");
  add_out(embed, o);
  embed->callback([&] { action = [&] { return run_embed_check(o, lim); }; });

  auto *mrd = app.add_subcommand("mrd", "rank-metric code from a scattered polynomial");
  add_poly(mrd, po);
  add_limits(mrd, lim);
  add_out(mrd, o);
  mrd->callback([&] { action = [&] { return run_mrd(o, po, lim); }; });

  auto *verify = app.add_subcommand("verify", "recheck a stored report's witnesses");
  verify->add_option("--report", file, "report JSON file")->required();
  add_out(verify, o);
  verify->callback([&] { action = [&] { return run_verify(o, file); }; });

  CLI11_PARSE(app, argc, argv);

  try {
    return action ? action() : 1;
  } catch (const scat::error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == scat::errc::budget_exceeded ? 3 : 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
