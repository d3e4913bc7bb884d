#pragma once

/*
 * blowdown-lab command line. run() takes the arguments after the program
 * name and returns the exit code:
 *   0 success, 1 domain error, 2 consistency failure, 64 usage error.
 */

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "blowdown/geography.hpp"
#include "blowdown/json_io.hpp"
#include "blowdown/prop_verifiers.hpp"
#include "blowdown/svg.hpp"

namespace blowdown {

namespace cli {

constexpr int kOk = 0;
constexpr int kDomain = 1;
constexpr int kConsistency = 2;
constexpr int kUsage = 64;

inline std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DomainError(path + ": " + e.what());
  }
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw DomainError("cannot write " + path);
  f << text;
}

inline Report verify_horizontal_fiber(long q) {
  HorizontalFiberSystem sys = horizontal_fiber_system(q);
  const long box = horizontal_fiber_box(q);
  Report rep{"horizontal_fiber(q=" + std::to_string(q) + ")", {}};
  auto all = solve_class(sys.lattice, sys.constraints, sys.square_target, box);
  std::vector<HomClass> positive;
  for (auto& c : all) {
    if (c.coeff("H") > 0) positive.push_back(c);
  }
  rep.verify("unique positive-degree solution", positive.size() == 1,
             std::to_string(positive.size()) + " in box " + std::to_string(box) + " (" +
                 std::to_string(all.size()) + " total)");
  const HomClass sigma = *build_R(q + 1).sigma.cls;
  rep.verify("equals Sigma_R(q+1)", positive.size() == 1 && positive.front() == sigma,
             positive.empty() ? "none" : positive.front().to_string());
  return rep;
}

inline Report verify_e_fibersum(long x) {
  EllipticRoutes r = build_E_routes(x);
  Report rep{"e_fibersum(x=" + std::to_string(x) + ")", {}};
  rep.verify("direct: chi_h = x, c1^2 = 0", r.direct.chi_h == x && r.direct.c1sq == 0,
             "(" + r.direct.chi_h.get_str() + ", " + r.direct.c1sq.get_str() + ")");
  rep.verify("R(x+1) # R(x+1) agrees with E(x)", same_invariants(r.direct, r.fiber_sum),
             "e " + r.fiber_sum.e.get_str() + ", sign " + r.fiber_sum.sign.get_str());
  rep.verify("fiber sum simply connected", r.fiber_sum.simply_connected == Connectivity::yes,
             to_string(r.fiber_sum.simply_connected));
  return rep;
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Exact bookkeeping for rational blowdown constructions", "blowdown-lab"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--timestamps", timestamps_, "Add a generated_at field to JSON output");

    auto* construct = app.add_subcommand("construct", "Build a manifold ledger");
    construct->require_subcommand(1);
    long p = 0, k = 0, x = 0, q = 0, c = 0, x_max = 0, width = 800, height = 600;
    unsigned threads = 0;
    bool odd = false, filter = false;
    std::string svg_path, table_path, input;

    auto* xp = construct->add_subcommand("xp", "X_p: R(2p-3) # S(p), checked against E(2p-4)");
    xp->add_option("--p", p, "p >= 4")->required();
    auto* xpp = construct->add_subcommand("xp-prime", "X'_p: R(2p-4) # S'(p), checked against E(2p-5)");
    xpp->add_option("--p", p, "p >= 5")->required();
    auto* xpk = construct->add_subcommand("xpk", "X(p,k): k (-4)-spheres blown down in X_p");
    xpk->add_option("--p", p)->required();
    xpk->add_option("--k", k)->required();
    xpk->add_flag("--odd", odd, "Use X'_p");
    auto* z = construct->add_subcommand("z", "E(x) # k CP2bar with C_{x+2k-2} blown down");
    z->add_option("--x", x)->required();
    z->add_option("--k", k)->required();

    auto* verify = app.add_subcommand("verify", "Run a verifier");
    verify->require_subcommand(1);
    auto* vp = verify->add_subcommand("prop-p", "C_{2p-6} in R(2p-3) blows down to S(p)");
    vp->add_option("--p", p)->required();
    auto* vpp = verify->add_subcommand("prop-p-prime", "C_{2p-7} in R(2p-4) blows down to S'(p)");
    vpp->add_option("--p", p)->required();
    auto* vh = verify->add_subcommand("horizontal-fiber", "Horizontal fiber of R(q+1) is Sigma_R(q+1)");
    vh->add_option("--q", q)->required();
    auto* ve = verify->add_subcommand("e-fibersum", "E(x) directly and as R(x+1) # R(x+1)");
    ve->add_option("--x", x)->required();

    auto* bc = app.add_subcommand("basic-classes", "Basic classes of E(x) # k CP2bar");
    bc->add_option("--x", x)->required();
    bc->add_option("--k", k)->required();
    bc->add_flag("--filter", filter, "Apply the blowdown filter for C_{x+2k-2}");

    auto* geo = app.add_subcommand("geography", "Recipe for (chi_h, c1^2) = (x, c)");
    geo->add_option("--x", x)->required();
    geo->add_option("--c", c)->required();

    auto* sweep = app.add_subcommand("sweep", "Verify every region point with x <= x-max");
    sweep->add_option("--x-max", x_max)->required();
    sweep->add_option("--svg", svg_path, "Write an SVG plot");
    sweep->add_option("--table", table_path, "Write a CSV table ('-' for stdout, replacing the JSON)");
    sweep->add_option("--width", width, "SVG width");
    sweep->add_option("--height", height, "SVG height");
    sweep->add_option("--threads", threads, "Worker threads, 0 = all cores");

    auto* lat = app.add_subcommand("lattice", "Lattice utilities on a JSON lattice");
    lat->require_subcommand(1);
    std::vector<CLI::App*> lat_ops;
    for (const char* op : {"pair", "square", "complement", "gram"}) {
      auto* s = lat->add_subcommand(op);
      s->add_option("--input", input, "JSON file with labels, gram, classes")->required();
      lat_ops.push_back(s);
    }

    try {
      std::vector<std::string> rev(args.rbegin(), args.rend());
      app.parse(rev);
    } catch (const CLI::CallForHelp&) {
      out_ << app.help();
      return kOk;
    } catch (const CLI::CallForAllHelp&) {
      out_ << app.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (const CLI::ParseError& e) {
      err_ << "usage error: " << e.what() << "\n";
      return kUsage;
    }

    try {
      if (*xp) return emit_construction(construct_Xp(p));
      if (*xpp) return emit_construction(construct_Xp_prime(p));
      if (*xpk) return emit_construction(construct_Xpk(p, k, odd));
      if (*z) return emit_construction(construct_Z(x, k));
      if (*vp) return emit_prop(verify_prop_P(p));
      if (*vpp) return emit_prop(verify_prop_Pprime(p));
      if (*vh) return emit_report(verify_horizontal_fiber(q));
      if (*ve) return emit_report(verify_e_fibersum(x));
      if (*bc) return basic_classes(x, k, filter);
      if (*geo) return geography(x, c);
      if (*sweep) return run_sweep(x_max, threads, svg_path, table_path, SvgOptions{width, height});
      for (auto* s : lat_ops) {
        if (*s) return lattice(s->get_name(), input);
      }
    } catch (const ConsistencyError& e) {
      err_ << "consistency failure: " << e.what() << "\n";
      return kConsistency;
    } catch (const DomainError& e) {
      err_ << "error: " << e.what() << "\n";
      return kDomain;
    } catch (const Json::exception& e) {
      err_ << "error: " << e.what() << "\n";
      return kDomain;
    }
    err_ << "usage error: no command\n";
    return kUsage;
  }

 private:
  void emit(Json d) {
    if (timestamps_) d["generated_at"] = utc_now();
    out_ << d.dump(2) << "\n";
  }

  static int status(const Report& r) { return r.passed() ? kOk : kConsistency; }

  int emit_construction(const Construction& c) {
    emit(ledger_document(c.ledger, c.report.checks));
    return status(c.report);
  }

  int emit_report(const Report& r) {
    emit(report_to_json(r));
    return status(r);
  }

  int emit_prop(const PropVerification& v) {
    Json d = report_to_json(v.report);
    d["gram"] = to_json(v.gram);
    d["final_class"] = v.final_class.to_string();
    emit(std::move(d));
    return status(v.report);
  }

  int basic_classes(long x, long k, bool filter) {
    BasicClassSet set = blowup_formula(basic_classes_E(x), k);
    Json d;
    d["schema_version"] = kSchemaVersion;
    d["x"] = x;
    d["k"] = k;
    d["count"] = to_json(set.size());
    constexpr std::size_t kListLimit = 1 << 16;
    if (set.size() <= Integer(static_cast<unsigned long>(kListLimit))) {
      Json cls = Json::array();
      for (const auto& b : set.enumerate(kListLimit)) cls.push_back(describe_basic_class(b));
      d["classes"] = std::move(cls);
    } else {
      d["classes"] = nullptr;
    }
    Report rep{"basic_classes(x=" + std::to_string(x) + ",k=" + std::to_string(k) + ")", {}};
    if (filter) {
      ConfigCn config = config_in_E_blowup(x, k);
      rep.append(adjunction_zero_check(x, k));
      BasicClassSet surv = taut_filter(set, config);
      rep.verify("filter hypotheses", true, "|k.S0| <= " + std::to_string(config.n()) + ", k.t_i = 0");
      Json s = Json::array();
      for (const auto& b : surv.enumerate()) s.push_back(describe_basic_class(b));
      d["configuration"] = config.to_string();
      d["survivors"] = std::move(s);
      rep.verify("survivors up to sign", surv.base().size() == 2, std::to_string(surv.base().size() / 2));
    }
    d["checks"] = checks_to_json(rep.checks);
    emit(std::move(d));
    return status(rep);
  }

  int geography(long x, long c) {
    GeographyPlan plan = geography_recipe(x, c);
    NoetherPosition pos = noether_position(x, c);
    Json d;
    d["schema_version"] = kSchemaVersion;
    d["x"] = x;
    d["c"] = c;
    d["position"] = Json{{"half_noether", pos.on_half_noether},
                         {"noether", pos.on_noether},
                         {"theorem_T", pos.in_region_T},
                         {"theorem_TT", pos.in_region_TT}};
    Construction main = execute(plan.canonical);
    d["recipe"] = recipe_to_json(plan.canonical);
    d["ledger"] = ledger_document(main.ledger, main.report.checks);
    bool ok = main.report.passed();
    if (plan.alternate) {
      Construction alt = execute(*plan.alternate);
      d["alternate"] = Json{{"recipe", recipe_to_json(*plan.alternate)},
                            {"ledger", ledger_document(alt.ledger, alt.report.checks)}};
      ok = ok && alt.report.passed();
    } else {
      d["alternate"] = nullptr;
    }
    emit(std::move(d));
    return ok ? kOk : kConsistency;
  }

  int run_sweep(long x_max, unsigned threads, const std::string& svg_path, const std::string& table_path,
                const SvgOptions& svg) {
    std::vector<SweepRow> rows = geography_sweep(x_max, threads);
    if (!svg_path.empty()) write_file(svg_path, geography_svg(x_max, rows, svg));
    if (table_path == "-") {
      out_ << sweep_table(rows);
    } else {
      if (!table_path.empty()) write_file(table_path, sweep_table(rows));
      emit(sweep_to_json(x_max, rows));
    }
    const bool ok = std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.pass; });
    return ok ? kOk : kConsistency;
  }

  int lattice(const std::string& op, const std::string& path) {
    Json in = read_json_file(path);
    LatticePtr L = lattice_from_json(in);
    std::vector<HomClass> classes;
    if (in.contains("classes")) {
      for (const auto& c : in.at("classes")) classes.push_back(class_from_json(L, c));
    }
    Json d;
    d["schema_version"] = kSchemaVersion;
    d["rank"] = L->rank();
    if (op == "pair") {
      if (classes.size() != 2) throw DomainError("lattice pair: needs exactly 2 classes, got " +
                                                 std::to_string(classes.size()));
      d["pair"] = to_json(pair(classes[0], classes[1]));
    } else if (op == "square") {
      Json a = Json::array();
      for (const auto& c : classes) a.push_back(to_json(square(c)));
      d["squares"] = std::move(a);
    } else if (op == "complement") {
      std::vector<HomClass> perp = orthogonal_complement(L, classes);
      Json a = Json::array();
      for (const auto& b : perp) a.push_back(to_json(b.coeffs()));
      d["basis"] = std::move(a);
      d["gram"] = to_json(gram_of(perp));
    } else {
      d["gram"] = to_json(gram_of(classes));
    }
    emit(std::move(d));
    return kOk;
  }

  std::ostream& out_;
  std::ostream& err_;
  bool timestamps_ = false;
};

}  // namespace cli

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return cli::Runner(out, err).run(args);
}

}  // namespace blowdown
