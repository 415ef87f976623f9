// pk: generator tables, verification suites and the improvement pipeline.
// Exit codes: 0 every check passed, 1 some check failed, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pk/cyclotomic.hpp"
#include "pk/deform.hpp"
#include "pk/enumerate.hpp"
#include "pk/farey.hpp"
#include "pk/kernels.hpp"
#include "pk/report.hpp"
#include "pk/reps.hpp"
#include "pk/words.hpp"

using json = nlohmann::ordered_json;
using namespace pk;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  int k = 0;
  int radius = 3;
  std::string rep_name;
  std::string scope = "all";
  std::string format = "json";
  std::string out_path;
  std::uint64_t seed = 0;
  std::size_t coset_limit = 1000000;
  std::size_t slope_budget = 24;
};

struct Report {
  std::vector<CheckRecord> records;
  json data = json::object();

  void add(std::string claim, std::string location, std::string computed, std::string expected, bool pass) {
    records.push_back({std::move(claim), std::move(location), std::move(computed), std::move(expected), pass});
  }
  void add_eq(const std::string& claim, const std::string& location, const std::string& computed,
              const std::string& expected) {
    add(claim, location, computed, expected, computed == expected);
  }
  void append(const Report& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
    for (const auto& [key, value] : other.data.items()) data[key] = value;
  }
};

// ---- serialisation ----

json to_json(const CycNum& x) {
  json coeffs = json::array();
  for (const auto& c : x.coeffs()) coeffs.push_back(c.get_str());
  return {{"n", x.conductor()}, {"coeffs", coeffs}};
}

json to_json(const CycMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j).embed(m.conductor())));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const Rep& r) {
  return {{"name", r.name()}, {"n", r.dim()}, {"conductor", r.conductor()}, {"img_a", to_json(r.img_a())},
          {"img_b", to_json(r.img_b())}};
}

json to_json(const AffableRep& h) {
  json va = json::array(), vb = json::array();
  for (const auto& x : h.va) va.push_back(x.str());
  for (const auto& x : h.vb) vb.push_back(x.str());
  return {{"va", va}, {"vb", vb}};
}

json to_json(const CheckRecord& r) {
  return {{"claim", r.claim}, {"location", r.location}, {"computed", r.computed}, {"expected", r.expected},
          {"pass", r.pass}};
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string order_str(const CosetEnumeration& e) { return e.overflow ? "overflow" : std::to_string(e.order); }

// ---- representations, including improve:<base> ----

ImproveResult run_improve(const std::string& base_name, int k, std::size_t budget) {
  const Rep base = builtin(base_name);
  return improve(base, builtin_witness(base_name), k, budget);
}

Rep resolve_rep(const std::string& name, std::size_t budget) {
  if (name.rfind("improve:", 0) == 0) {
    const std::string base = name.substr(8);
    const auto k = builtin_exponent(base);
    if (!k) throw UsageError("no exponent known for '" + base + "'");
    ImproveResult res = run_improve(base, *k, budget);
    if (!res.extension) throw UsageError("improve:" + base + " has an empty invariant subspace");
    return *res.extension;
  }
  try {
    return builtin(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::optional<CharWitness> witness_for(const std::string& name, const Rep& rho) {
  if (name.rfind("improve:", 0) == 0) return solve_witness(rho);
  return builtin_witness(name);
}

// ---- suites ----

Report suite_generators(int k, int radius) {
  if (k < 2) throw UsageError("--k must be at least 2");
  Report rep;
  const std::string loc = "generator table, k = " + std::to_string(k);
  const auto gens = normal_generators(k, radius);
  json rows = json::array();
  const auto table = tabulated_generators(k);
  for (const auto& g : gens) {
    json row = {{"vertex", g.slope.str()}, {"generator", g.word().str()}};
    if (!table.empty()) {
      const auto it = std::find_if(table.begin(), table.end(), [&](const auto& t) { return t.first == g.slope; });
      const bool found = it != table.end();
      const bool match = found && (conjugate_test(g.base, it->second) || conjugate_test(g.base, it->second.inverse()));
      row["tabulated"] = found ? it->second.pow(k).str() : "";
      row["conjugate_match"] = match;
      rep.add("generator at " + g.slope.str() + " is conjugate to the tabulated entry", loc, g.base.str(),
              found ? it->second.str() : "(missing)", match);
    }
    rows.push_back(row);
  }
  if (!table.empty()) {
    rep.add_eq("generator count", loc, std::to_string(gens.size()), std::to_string(table.size()));
  } else {
    const TriComplex c = quotient_complex(k, radius);
    rep.add_eq("one generator per vertex of the radius-" + std::to_string(radius) + " patch", loc,
               std::to_string(gens.size()), std::to_string(c.vertex_labels.size()));
  }
  rep.data["generators_k" + std::to_string(k)] = rows;
  return rep;
}

Report suite_quotients(std::size_t coset_limit) {
  Report rep;
  const std::string loc = "finite quotients";
  const Word ab = commutator(Word::a(), Word::b());
  const Presentation p2 = Presentation::primitive_powers(2), p3 = Presentation::primitive_powers(3);
  const Presentation heis({Word::a(3), Word::b(3), ab.pow(3), commutator(Word::a(), ab), commutator(Word::b(), ab)});
  const Presentation klein = Presentation::parse("a^2, b^2, abAB"), c4 = Presentation::parse("a^4, bA");
  const auto e2 = todd_coxeter(p2, coset_limit), e3 = todd_coxeter(p3, coset_limit);
  rep.add_eq("|F_2/P_2| by coset enumeration", loc, order_str(e2), "4");
  rep.add_eq("|F_2/P_3| by coset enumeration", loc, order_str(e3), "27");
  rep.add_eq("|rho2(F_2)| by matrix closure", loc, std::to_string(image_closure(builtin("rho2")).order()), "4");
  rep.add_eq("|rho_odd:3(F_2)| by matrix closure", loc, std::to_string(image_closure(builtin("rho_odd:3")).order()),
             "27");
  rep.add_eq("|H(Z/3)| by coset enumeration", loc, order_str(todd_coxeter(heis, coset_limit)), "27");
  const auto m2 = multiplication_table(p2, coset_limit), m3 = multiplication_table(p3, coset_limit);
  const auto mk = multiplication_table(klein, coset_limit), mh = multiplication_table(heis, coset_limit);
  const auto mc = multiplication_table(c4, coset_limit);
  if (m2 && mk) {
    const IsoCheck c = iso_order_exponent_check(*m2, *mk);
    rep.add("F_2/P_2 against the Klein four-group", loc, c.reason, "consistent with isomorphism", c.consistent);
  }
  if (m3 && mh) {
    const IsoCheck c = iso_order_exponent_check(*m3, *mh);
    rep.add("F_2/P_3 against H(Z/3)", loc, c.reason, "consistent with isomorphism", c.consistent);
  }
  if (m2 && mc) {
    const IsoCheck c = iso_order_exponent_check(*m2, *mc);
    rep.add("F_2/P_2 against C_4 is told apart", loc, c.reason, "element-order multisets differ", !c.consistent);
  }
  const std::size_t p4_limit = std::min<std::size_t>(coset_limit, 100000);
  const auto e4 = todd_coxeter(Presentation::primitive_powers(4), p4_limit);
  rep.add("P_4 relators overflow " + std::to_string(p4_limit) + " cosets (no conclusion about finiteness)", loc,
          order_str(e4), "overflow", e4.overflow);
  return rep;
}

Report suite_rep(const std::string& name, std::uint64_t seed, std::size_t budget) {
  Report rep;
  const std::string loc = "representation " + name;
  const Rep rho = resolve_rep(name, budget);
  const auto w = witness_for(name, rho);
  if (!w) {
    rep.add("characteristic witness exists", loc, "no invertible solution", "witness", false);
    return rep;
  }
  const CharCheck c = check_characteristic(rho, *w);
  const bool transcribed = name.rfind("improve:", 0) != 0 && witness_is_transcribed(name);
  rep.add("characteristic criterion (" + std::string(transcribed ? "transcribed" : "derived") + " witness)", loc,
          c.ok ? "all six equations hold" : "fails: " + c.failed, "all six equations hold", c.ok);
  if (transcribed)
    rep.add("M_minus = I", loc, yes_no(w->m_minus.is_identity()), "yes", w->m_minus.is_identity());
  const std::string base = name.rfind("improve:", 0) == 0 ? name.substr(8) : name;
  if (const auto k = builtin_exponent(base); k && c.ok) {
    const bool pk = kernel_contains_Pk(rho, *w, *k, seed);
    rep.add("P_" + std::to_string(*k) + " lies in the kernel", loc, yes_no(pk), "yes", pk);
  }
  // finite images of the base families
  static const std::map<std::string, std::string> orders = {{"rho2", "4"},        {"rho_odd:3", "27"},
                                                            {"rho_odd:5", "125"}, {"rho_odd:7", "343"},
                                                            {"rho4", "8"},        {"rho6", "108"}};
  if (const auto it = orders.find(name); it != orders.end())
    rep.add_eq("image order", loc, std::to_string(image_closure(rho).order()), it->second);
  if (name.rfind("rho_odd:", 0) == 0) {
    const int k = *builtin_exponent(name);
    const auto r = additive_span_rank(rho);
    rep.add_eq("additive span of the image has full rank k^2 phi(k)", loc, r ? std::to_string(*r) : "overflow",
               std::to_string(k * k * euler_phi(k)));
  }
  rep.data["rep:" + name] = to_json(rho);
  return rep;
}

Report suite_improve(const std::string& name, int k, std::uint64_t seed, std::size_t budget) {
  Report rep;
  const std::string loc = "improvement of " + name;
  const Rep base = resolve_rep(name, budget);
  if (name.rfind("improve:", 0) == 0) throw UsageError("improve expects a builtin base rep");
  const ImproveResult res = improve(base, builtin_witness(name), k, budget);
  json d = {{"base", name},
            {"k", k},
            {"affable_dim", res.affable_dim},
            {"quotient_dim", res.quotient_dim},
            {"chosen_dim", res.chosen_dim},
            {"filter", res.filter},
            {"certified_slope_budget", res.certified_budget},
            {"seed", seed}};
  json basis = json::array();
  for (const auto& h : res.chosen) basis.push_back(to_json(h));
  d["chosen_basis"] = basis;
  if (!res.extension) {
    d["extension"] = nullptr;
    rep.add("invariant subspace", loc, "empty", "reported", true);
    rep.data["improve:" + name] = d;
    return rep;
  }
  const Rep& ext = *res.extension;
  d["extension"] = to_json(ext);
  rep.add_eq("extension dimension", loc, std::to_string(ext.dim()), std::to_string(base.dim() + res.chosen_dim));
  const auto w = solve_witness(ext);
  const bool w_ok = w && check_characteristic(ext, *w).ok;
  rep.add("extension has a characteristic witness", loc, yes_no(w_ok), "yes", w_ok);
  if (w_ok) {
    const bool pk = kernel_contains_Pk(ext, *w, k, seed);
    rep.add("P_" + std::to_string(k) + " lies in the extension kernel", loc, yes_no(pk), "yes", pk);
  }
  std::string twin;
  if (name.rfind("rho_odd:", 0) == 0) twin = "t" + name;
  if (name == "rho4") twin = "trho4";
  if (!twin.empty()) {
    const Rep t = builtin(twin);
    const auto probes = kernel_probe_words(base, k, 200, seed);
    const KernelComparison cmp = compare_kernels(ext, t, probes);
    rep.add("kernel agrees with " + twin + " on 200 probe words", loc,
            std::to_string(cmp.agree) + "/" + std::to_string(cmp.total) + " (" + std::to_string(cmp.in_both) +
                " in both kernels)",
            "200/200", cmp.identical());
    const bool same = ext.img_a() == t.img_a() && ext.img_b() == t.img_b();
    d["identical_to_" + twin] = same;
  }
  rep.data["improve:" + name] = d;
  return rep;
}

Word odd_rank_word() { return commutator(commutator(Word::a(-1), Word::b(-1)), Word::b(-1)); }

Report suite_k_odd(int k, std::uint64_t seed, std::size_t budget) {
  if (k < 3 || k % 2 == 0) throw UsageError("k-odd scope needs an odd k >= 3");
  Report rep;
  const std::string ks = std::to_string(k), name = "rho_odd:" + ks, loc = "odd k = " + ks;
  rep.append(suite_rep(name, seed, budget));
  const Rep rho = builtin(name);
  const CycMatrix c = evaluate(rho, commutator(Word::a(), Word::b()));
  const bool scalar = c == CycNum::zeta(k, -1) * CycMatrix::identity(static_cast<std::size_t>(k), k);
  rep.add("rho_odd(" + ks + ")([a,b]) = omega^-1 I", loc, yes_no(scalar), "yes", scalar);
  if (k < 5) return rep;
  rep.append(suite_rep("trho_odd:" + ks, seed, budget));
  const EigenSplitReport e = eigen_split(k);
  rep.add("items (a)-(d): eigenvalues +k and -k on the listed vectors", loc,
          std::string("a ") + yes_no(e.item_a) + ", b " + yes_no(e.item_b) + ", c " + yes_no(e.item_c) + ", d " +
              yes_no(e.item_d),
          "a yes, b yes, c yes, d yes", e.item_a && e.item_b && e.item_c && e.item_d);
  rep.add_eq("+k eigenspace dimension", loc, std::to_string(e.plus_k_dim), std::to_string((k - 3) / 2));
  rep.add_eq("-k eigenspace dimension", loc, std::to_string(e.minus_k_dim), std::to_string((k + 3) / 2));
  const IntLattice lat = conjugate_orbit_lattice(rho, builtin("trho_odd:" + ks), {odd_rank_word()});
  rep.add_eq("rank of the kernel image, k (k-3)/2 phi(k)", loc, std::to_string(lat.rank()),
             std::to_string(k * (k - 3) / 2 * euler_phi(k)));
  if (k == 5) rep.append(suite_improve(name, k, seed, budget));
  return rep;
}

Report suite_k6(std::uint64_t seed, std::size_t budget, std::size_t coset_limit) {
  Report rep;
  const std::string loc = "k = 6";
  rep.append(suite_rep("rho6", seed, budget));
  rep.append(suite_rep("trho6", seed, budget));
  const Word ab = commutator(Word::a(), Word::b());
  const std::vector<Word> nil = {commutator(Word::a(), ab), commutator(Word::b(), ab)};
  const std::vector<Word> pres = {Word::a(6), Word::b(6), ab.pow(3), nil[0], nil[1]};
  rep.add_eq("order of <a,b | a^6, b^6, [a,b]^3, [a,[a,b]], [b,[a,b]]>", loc,
             order_str(todd_coxeter(Presentation(pres), coset_limit)), "108");
  const IntLattice lat = conjugate_orbit_lattice(builtin("rho6"), builtin("trho6"), nil);
  rep.add_eq("rank of trho6(ker rho6)", loc, std::to_string(lat.rank()), "18");
  const ExactSequence es = exact_sequence_report(builtin("rho6"), builtin("trho6"), pres);
  rep.add_eq("exact sequence (|image|, d)", loc,
             "(" + (es.base_order ? std::to_string(*es.base_order) : "inf") + ", " + std::to_string(es.rank) + ")",
             "(108, 18)");
  return rep;
}

Report suite_faithful(std::uint64_t seed, std::size_t budget, std::size_t coset_limit) {
  Report rep;
  const std::string loc = "quaternion chain";
  rep.append(suite_rep("rho4", seed, budget));
  rep.append(suite_rep("trho4", seed, budget));
  rep.append(suite_rep("ttrho4", seed, budget));
  rep.add_eq("order of <a,b | a^4, b^4, a^2b^2, aBab>", loc,
             order_str(todd_coxeter(Presentation(quaternion_relators()), coset_limit)), "8");
  for (const auto& r : verify_faithful_p4()) rep.records.push_back(r);
  const ExactSequence e4 = exact_sequence_report(builtin("rho4"), builtin("trho4"), quaternion_relators());
  rep.add_eq("exact sequence (|rho4 image|, d)", loc,
             "(" + (e4.base_order ? std::to_string(*e4.base_order) : "inf") + ", " + std::to_string(e4.rank) + ")",
             "(8, 4)");
  const ExactSequence e1 = exact_sequence_report(builtin("trho4"), builtin("ttrho4"), trho4_kernel_relators(), 8);
  rep.add_eq("d for ttrho4 over trho4", loc, std::to_string(e1.rank), "1");
  rep.append(suite_improve("rho4", 4, seed, budget));
  return rep;
}

Report suite_all(const RunConfig& cfg) {
  Report rep;
  for (int k = 2; k <= 5; ++k) rep.append(suite_generators(k, cfg.radius));
  rep.append(suite_quotients(cfg.coset_limit));
  rep.append(suite_rep("rho2", cfg.seed, cfg.slope_budget));
  for (const int k : {3, 5, 7}) rep.append(suite_k_odd(k, cfg.seed, cfg.slope_budget));
  rep.append(suite_k6(cfg.seed, cfg.slope_budget, cfg.coset_limit));
  rep.append(suite_faithful(cfg.seed, cfg.slope_budget, cfg.coset_limit));
  rep.append(suite_improve("rho2", 2, cfg.seed, cfg.slope_budget));
  return rep;
}

Report run_verify(const RunConfig& cfg) {
  const std::string& s = cfg.scope;
  if (s == "all") return suite_all(cfg);
  if (s == "quotients") return suite_quotients(cfg.coset_limit);
  if (s == "k6") return suite_k6(cfg.seed, cfg.slope_budget, cfg.coset_limit);
  if (s == "faithful-p4") return suite_faithful(cfg.seed, cfg.slope_budget, cfg.coset_limit);
  if (s.rfind("rep:", 0) == 0) return suite_rep(s.substr(4), cfg.seed, cfg.slope_budget);
  if (s.rfind("k-odd:", 0) == 0) {
    int k = 0;
    try {
      k = std::stoi(s.substr(6));
    } catch (const std::exception&) {
      throw UsageError("bad k in scope '" + s + "'");
    }
    return suite_k_odd(k, cfg.seed, cfg.slope_budget);
  }
  throw UsageError("unknown scope '" + s + "'");
}

// ---- output ----

std::string markdown(const RunConfig& cfg, const Report& rep) {
  std::ostringstream os;
  os << "# pk " << cfg.command << "\n\n";
  if (cfg.command == "verify") os << "scope: `" << cfg.scope << "`, ";
  os << "seed: " << cfg.seed << "\n\n";
  if (cfg.command == "generators") {
    for (const auto& [key, rows] : rep.data.items()) {
      os << "| vertex | generator |" << (rows.empty() || !rows[0].contains("tabulated") ? "\n|---|---|\n" : " tabulated | match |\n|---|---|---|---|\n");
      for (const auto& r : rows) {
        os << "| " << r["vertex"].get<std::string>() << " | " << r["generator"].get<std::string>() << " |";
        if (r.contains("tabulated"))
          os << " " << r["tabulated"].get<std::string>() << " | " << (r["conjugate_match"].get<bool>() ? "yes" : "no")
             << " |";
        os << "\n";
      }
      os << "\n" << key << ": " << rows.size() << " generators\n\n";
    }
  }
  if (!rep.records.empty()) {
    os << "| claim | location | computed | expected | pass |\n|---|---|---|---|---|\n";
    for (const auto& r : rep.records)
      os << "| " << r.claim << " | " << r.location << " | " << r.computed << " | " << r.expected << " | "
         << (r.pass ? "PASS" : "FAIL") << " |\n";
  }
  os << "\n" << (all_pass(rep.records) ? "all checks passed" : "CHECK FAILURES") << "\n";
  return os.str();
}

std::string render(const RunConfig& cfg, const Report& rep) {
  if (cfg.format == "markdown") return markdown(cfg, rep);
  json out = {{"command", cfg.command}, {"seed", cfg.seed}};
  if (cfg.command == "verify") out["scope"] = cfg.scope;
  out["pass"] = all_pass(rep.records);
  json records = json::array();
  for (const auto& r : rep.records) records.push_back(to_json(r));
  out["records"] = records;
  out["data"] = rep.data;
  return out.dump(2) + "\n";
}

int emit(const RunConfig& cfg, const Report& rep) {
  const std::string text = render(cfg, rep);
  if (cfg.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.out_path);
    if (!f) throw UsageError("cannot write '" + cfg.out_path + "'");
    f << text;
  }
  return all_pass(rep.records) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Primitive-power quotients of F_2: generators, checks and rep improvement"};
  app.require_subcommand(1);
  app.add_option("--format", cfg.format, "json or markdown")->check(CLI::IsMember({"json", "markdown"}));
  app.add_option("--out", cfg.out_path, "write the report here instead of stdout");
  app.add_option("--seed", cfg.seed, "seed for sampled checks");
  app.add_option("--coset-limit", cfg.coset_limit, "coset table limit")->check(CLI::PositiveNumber);
  app.add_option("--slope-budget", cfg.slope_budget, "slopes per round of the affable solve")
      ->check(CLI::PositiveNumber);

  auto* gen = app.add_subcommand("generators", "normal generators of P_k");
  gen->add_option("--k", cfg.k, "exponent")->required();
  gen->add_option("--radius", cfg.radius, "patch radius for k >= 6")->check(CLI::PositiveNumber);

  auto* ver = app.add_subcommand("verify", "run a check suite");
  ver->add_option("--scope", cfg.scope, "all, rep:<name>, faithful-p4, k-odd:<k>, k6, quotients");

  auto* imp = app.add_subcommand("improve", "extend a rep by an invariant space of affable deformations");
  imp->add_option("--rep", cfg.rep_name, "builtin rep name")->required();
  imp->add_option("--k", cfg.k, "exponent")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      cfg.command = "generators";
      return emit(cfg, suite_generators(cfg.k, cfg.radius));
    }
    if (ver->parsed()) {
      cfg.command = "verify";
      return emit(cfg, run_verify(cfg));
    }
    cfg.command = "improve";
    if (cfg.k < 1) throw UsageError("--k must be positive");
    return emit(cfg, suite_improve(cfg.rep_name, cfg.k, cfg.seed, cfg.slope_budget));
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
}
