// Command-line driver: exact identity suites, trace-fiber torsion sums on the
// character-variety components of the once-punctured torus bundles M_n, and
// the supporting self-tests. Reports are deterministic JSON (or CSV for fiber
// data): identical configuration, seed, and precision give identical bytes.

#include <atomic>
#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ptb/report.hpp"

using namespace ptb;
using Complex = std::complex<double>;

namespace {

const std::vector<SlopeParam> kDefaultSlopes = {{1, 0}, {0, 1}, {2, 1}, {3, 1}, {5, 1}, {7, 2}};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

SlopeParam parse_slope(const std::string& text) {
  SlopeParam sp;
  char comma = 0;
  std::istringstream in(text);
  if (!(in >> sp.p >> comma >> sp.q) || comma != ',' || !(in >> std::ws).eof())
    throw UsageError("slope must be given as p,q (got '" + text + "')");
  sp = sp.normalized();
  require_slope(sp, "slope");
  return sp;
}

std::vector<SlopeParam> parse_slopes(const std::string& text) {
  std::vector<SlopeParam> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ';'))
    if (!item.empty()) out.push_back(parse_slope(item));
  if (out.empty()) throw UsageError("empty slope list");
  return out;
}

Complex parse_complex(const std::string& text) {
  std::istringstream in(text);
  double re = 0, im = 0;
  char comma = 0;
  if (!(in >> re)) throw UsageError("complex value must be re[,im] (got '" + text + "')");
  if (in >> comma) {
    if (comma != ',' || !(in >> im)) throw UsageError("complex value must be re[,im]");
  }
  if (!(in >> std::ws).eof()) throw UsageError("complex value must be re[,im]");
  return {re, im};
}

Json ratfunc_json(const RatFunc& f) {
  return Json{{"num", f.num().str()}, {"den", f.den().str()}};
}

struct RunConfig {
  std::string command;
  long n = 0;
  SlopeParam slope{1, 0};
  std::vector<SlopeParam> slopes = kDefaultSlopes;
  bool have_c = false;
  Complex c{};
  int samples = 1;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  std::string component = "geometric";
  std::string word;
  bool torsion_flag = false;
  std::optional<Complex> eval_y;
  std::vector<long> q_list = {0, 1, 2};
  int trials = 200;
  std::string jobs_path;
  unsigned threads = 0;
  std::string out_path;
  std::string format = "json";
  std::string precision = "binary64";
};

struct RunResult {
  Json report;
  std::vector<CheckResult> checks;
  std::string csv;  // empty unless CSV was produced
};

void require_bundle(const RunConfig& cfg, bool needs_extra) {
  BundleParam bp{cfg.n};
  if (!bp.hyperbolic())
    throw UsageError("n = " + std::to_string(cfg.n) + " is not hyperbolic (need |n| > 2)");
  if (needs_extra && !bp.has_extra_component())
    throw UsageError("n = " + std::to_string(cfg.n) +
                     " has no extra component (need n = 2 mod 4)");
}

Json report_header(const RunConfig& cfg) {
  Json j;
  j["tool_version"] = kToolVersion;
  j["command"] = cfg.command;
  j["precision"] = cfg.precision;
  return j;
}

// ---------------------------------------------------------------- commands

RunResult run_identities(const RunConfig& cfg) {
  require_bundle(cfg, false);
  RunResult res;
  res.checks = identity_suite({cfg.n}, cfg.slopes);
  Json j = report_header(cfg);
  j["n"] = cfg.n;
  Json slopes = Json::array();
  for (const auto& sp : cfg.slopes) slopes.push_back(Json::array({sp.p, sp.q}));
  j["slopes"] = slopes;
  j["checks"] = checks_json(res.checks);
  res.report = std::move(j);
  return res;
}

RunResult run_torsion_lambda(const RunConfig& cfg) {
  require_bundle(cfg, false);
  RunResult res;
  RatFunc t = torsion_lambda({cfg.n});
  Json j = report_header(cfg);
  j["n"] = cfg.n;
  j["torsion_lambda"] = ratfunc_json(t);
  if (cfg.eval_y) {
    const Complex v = t.eval(*cfg.eval_y);
    j["y"] = complex_json(*cfg.eval_y);
    j["value"] = complex_json(v);
  }
  j["checks"] = Json::array();
  res.report = std::move(j);
  return res;
}

RunResult run_slope_fns(const RunConfig& cfg) {
  require_bundle(cfg, false);
  RunResult res;
  BundleParam bp{cfg.n};
  BoundaryFns bf = boundary_functions(bp);
  SlopeFns sf = slope_fns(bf, cfg.slope);
  res.checks = slope_structure_checks(bp, bf, sf, "");
  Json j = report_header(cfg);
  j["n"] = cfg.n;
  j["slope"] = Json::array({cfg.slope.p, cfg.slope.q});
  j["parity"] = sf.even_p ? "even" : "odd";
  j["g"] = ratfunc_json(sf.g);
  j["h"] = ratfunc_json(sf.h);
  j["trace_fn"] = ratfunc_json(sf.trace_fn);
  j["G"] = ratfunc_json(sf.G);
  j["boundary"] = Json{{"u", ratfunc_json(bf.u)},
                       {"v", ratfunc_json(bf.v)},
                       {"s", ratfunc_json(bf.s)},
                       {"A", bf.A.str()},
                       {"B", bf.B.str()},
                       {"d", bf.d.str()}};
  j["checks"] = checks_json(res.checks);
  res.report = std::move(j);
  return res;
}

template <class Real>
RunResult run_fiber_sum(const RunConfig& cfg) {
  require_bundle(cfg, cfg.component == "extra");
  BundleParam bp{cfg.n};
  BoundaryFns bf = boundary_functions(bp);
  SlopeFns sf = slope_fns(bf, cfg.slope);
  const bool want_geo = cfg.component == "geometric" || cfg.component == "all";
  const bool extra_exists = bp.has_extra_component() && cfg.slope.p != 4 * cfg.slope.q;
  const bool want_extra = cfg.component == "extra" || (cfg.component == "all" && extra_exists);
  if (cfg.component == "extra" && !extra_exists)
    throw UsageError("slope " + cfg.slope.str() + " has constant trace on the extra component");

  RunResult res;
  Json runs = Json::array();
  std::string csv = fiber_csv_header();
  TraceDraw draw(cfg.seed);
  const int samples = cfg.have_c ? 1 : cfg.samples;
  GenericityConfig gcfg;

  for (int i = 0; i < samples; ++i) {
    std::optional<FiberReport<Real>> geo, extra;
    std::complex<Real> c;
    for (int attempt = 0;; ++attempt) {
      if (attempt >= gcfg.max_redraws)
        throw NonGenericError("no generic trace target found after " +
                              std::to_string(gcfg.max_redraws) + " draws");
      const Complex cd = cfg.have_c ? cfg.c : draw.next();
      c = std::complex<Real>(Real(cd.real()), Real(cd.imag()));
      try {
        if (want_geo) geo = fiber_sum_geometric<Real>(bf, sf, c, Real(cfg.tol), gcfg);
        if (want_extra) extra = fiber_sum_extra<Real>(bp, cfg.slope, c, Real(cfg.tol), gcfg);
        break;
      } catch (const NonGenericError&) {
        if (cfg.have_c) throw;  // explicit target: report the rejection
      }
    }

    Json run;
    run["c"] = complex_json({double(c.real()), double(c.imag())});
    if (geo) {
      run["geometric"] = fiber_report_json(*geo);
      append_fiber_csv(csv, cfg.command, cfg.n, cfg.slope, cfg.seed, cfg.precision, *geo);
      const bool pass = geo->normalized_residual < Real(cfg.tol);
      res.checks.push_back({"vanishing_residual[" + std::to_string(i) + "]", pass,
                            "normalized residual " +
                                std::to_string(double(geo->normalized_residual))});
    }
    if (extra) {
      run["extra"] = fiber_report_json(*extra);
      append_fiber_csv(csv, cfg.command, cfg.n, cfg.slope, cfg.seed, cfg.precision, *extra);
      if (extra->expected_sum) {
        const Real err = std::abs(extra->sum - *extra->expected_sum);
        const bool pass = err <= Real(1e-10) * std::max(std::abs(*extra->expected_sum), Real(1));
        res.checks.push_back({"closed_form_match[" + std::to_string(i) + "]", pass,
                              "deviation " + std::to_string(double(err))});
      }
    }
    if (cfg.component == "all") {
      std::complex<Real> total = geo ? geometric_character_sum(sf, *geo) : std::complex<Real>(0);
      if (extra) total += extra->sum;
      run["total_character_sum"] = complex_json({double(total.real()), double(total.imag())});
    }
    runs.push_back(run);
  }

  Json j = report_header(cfg);
  j["n"] = cfg.n;
  j["slope"] = Json::array({cfg.slope.p, cfg.slope.q});
  j["seed"] = cfg.seed;
  j["component"] = cfg.component;
  j["runs"] = runs;
  j["checks"] = checks_json(res.checks);
  res.report = std::move(j);
  if (cfg.format == "csv") res.csv = std::move(csv);
  return res;
}

template <class Real>
RunResult run_cross_check(const RunConfig& cfg) {
  require_bundle(cfg, false);
  BundleParam bp{cfg.n};
  BoundaryFns bf = boundary_functions(bp);
  SlopeFns sf = slope_fns(bf, cfg.slope);
  TraceDraw draw(cfg.seed);
  int used = 0, skipped = 0;
  Real worst = 0;
  GenericityConfig gcfg;
  for (int round = 0; round < gcfg.max_redraws && used < cfg.samples; ++round) {
    const Complex cd = cfg.have_c ? cfg.c : draw.next();
    try {
      auto rep = cross_check<Real>(bp, bf, sf,
                                   std::complex<Real>(Real(cd.real()), Real(cd.imag())),
                                   cfg.samples - used, Real(cfg.tol), gcfg);
      used += rep.samples_used;
      skipped += rep.skipped;
      worst = std::max(worst, rep.max_rel_deviation);
    } catch (const NonGenericError&) {
      if (cfg.have_c) throw;
    }
    if (cfg.have_c) break;
  }
  RunResult res;
  res.checks.push_back({"pathway_agreement", used > 0 && worst < Real(cfg.tol),
                        "max relative deviation " + std::to_string(double(worst)) + " over " +
                            std::to_string(used) + " samples"});
  Json j = report_header(cfg);
  j["n"] = cfg.n;
  j["slope"] = Json::array({cfg.slope.p, cfg.slope.q});
  j["seed"] = cfg.seed;
  j["samples_used"] = used;
  j["samples_skipped"] = skipped;
  j["max_rel_deviation"] = double(worst);
  j["checks"] = checks_json(res.checks);
  res.report = std::move(j);
  return res;
}

template <class Real>
RunResult run_counterexample(const RunConfig& cfg) {
  require_bundle(cfg, true);
  BundleParam bp{cfg.n};
  BoundaryFns bf = boundary_functions(bp);
  RunResult res;
  Json qs = Json::array();
  GenericityConfig gcfg;

  for (long q : cfg.q_list) {
    const SlopeParam sp{4 * q + 1, q};
    SlopeFns sf = slope_fns(bf, sp);
    TraceDraw draw(cfg.seed + static_cast<std::uint64_t>(q));
    Json runs = Json::array();
    bool closed_ok = true, total_nonzero = true;
    double worst_closed = 0, min_total_ratio = std::numeric_limits<double>::infinity();

    for (int i = 0; i < cfg.samples; ++i) {
      std::optional<FiberReport<Real>> geo, extra;
      std::complex<Real> c;
      for (int attempt = 0;; ++attempt) {
        if (attempt >= gcfg.max_redraws)
          throw NonGenericError("no generic trace target found");
        const Complex cd = cfg.have_c ? cfg.c : draw.next();
        c = std::complex<Real>(Real(cd.real()), Real(cd.imag()));
        try {
          geo = fiber_sum_geometric<Real>(bf, sf, c, Real(cfg.tol), gcfg);
          extra = fiber_sum_extra<Real>(bp, sp, c, Real(cfg.tol), gcfg);
          break;
        } catch (const NonGenericError&) {
          if (cfg.have_c) throw;
        }
      }
      const Real closed_err = std::abs(extra->sum - *extra->expected_sum);
      worst_closed = std::max(
          worst_closed,
          double(closed_err / std::max(std::abs(*extra->expected_sum), Real(1e-30))));
      closed_ok = closed_ok &&
                  closed_err <= Real(1e-10) * std::max(std::abs(*extra->expected_sum), Real(1));
      const std::complex<Real> total = geometric_character_sum(sf, *geo) + extra->sum;
      Real max_inv = 0;
      for (const auto& r : geo->roots) max_inv = std::max(max_inv, std::abs(r.inv_torsion));
      for (const auto& r : extra->roots) max_inv = std::max(max_inv, std::abs(r.inv_torsion));
      const double ratio = double(std::abs(total) / std::max(max_inv, Real(1e-300)));
      min_total_ratio = std::min(min_total_ratio, ratio);
      total_nonzero = total_nonzero && std::abs(total) > Real(1e-3) * max_inv;

      Json run;
      run["c"] = complex_json({double(c.real()), double(c.imag())});
      run["geometric"] = fiber_report_json(*geo);
      run["extra"] = fiber_report_json(*extra);
      run["total_character_sum"] =
          complex_json({double(total.real()), double(total.imag())});
      run["total_over_max_inv_torsion"] = ratio;
      runs.push_back(run);
    }

    // independent exact check at a rational target
    const Rat cr = rat(17, 10) + rat(q, 7);
    auto exact = exact_component_sums(bp, bf, sf, cr);
    Json ex;
    ex["c"] = rat_str(cr);
    ex["geometric"] = rat_str(exact.geometric);
    ex["extra"] = rat_str(exact.extra);
    ex["total"] = rat_str(exact.total);
    ex["pole_order"] = exact.pole_order;

    const std::string tag = "[q=" + std::to_string(q) + "]";
    res.checks.push_back({"closed_form_match" + tag, closed_ok,
                          "worst relative deviation " + std::to_string(worst_closed)});
    res.checks.push_back(
        {"total_nonzero" + tag, total_nonzero,
         "min |total|/max|1/T| = " + std::to_string(min_total_ratio) +
             "; exact total at c = " + rat_str(cr) + " is " + rat_str(exact.total)});
    res.checks.push_back({"exact_residue_cancellation" + tag, sgn(exact.total) == 0,
                          "geometric " + rat_str(exact.geometric) + ", extra " +
                              rat_str(exact.extra)});

    Json qj;
    qj["q"] = q;
    qj["slope"] = Json::array({sp.p, sp.q});
    qj["runs"] = runs;
    qj["exact"] = ex;
    qs.push_back(qj);
  }

  Json j = report_header(cfg);
  j["n"] = cfg.n;
  j["seed"] = cfg.seed;
  j["q_list"] = cfg.q_list;
  j["results"] = qs;
  j["checks"] = checks_json(res.checks);
  res.report = std::move(j);
  return res;
}

RunResult run_monodromy(const RunConfig& cfg) {
  MonodromyWord w = parse_word(cfg.word);
  RunResult res;
  Json j = report_header(cfg);
  j["word"] = w.str();
  j["negative"] = w.negative;
  if (cfg.torsion_flag) {
    j["torsion_polynomial"] = torsion_polynomial(w).str();
  } else {
    TraceTriple t = apply_word(w, TraceTriple::identity());
    j["action"] = Json{{"P1", t.p1.str()}, {"P2", t.p2.str()}, {"P3", t.p3.str()}};
  }
  j["checks"] = Json::array();
  res.report = std::move(j);
  return res;
}

RunResult run_jacobi(const RunConfig& cfg) {
  JacobiReport rep = jacobi_selftest(cfg.seed, cfg.trials);
  RunResult res;
  res.checks.push_back({"positive_controls", rep.failures == 0 && rep.worst_residual < 1e-9,
                        "worst residual " + std::to_string(rep.worst_residual) + " over " +
                            std::to_string(rep.trials) + " trials"});
  res.checks.push_back({"negative_control", rep.negative_control_pass, ""});
  Json j = report_header(cfg);
  j["seed"] = cfg.seed;
  j["trials"] = rep.trials;
  j["failures"] = rep.failures;
  j["worst_residual"] = rep.worst_residual;
  j["details"] = rep.details;
  j["checks"] = checks_json(res.checks);
  res.report = std::move(j);
  return res;
}

RunResult dispatch(const RunConfig& cfg);

RunResult run_sweep(const RunConfig& cfg) {
  std::ifstream in(cfg.jobs_path);
  if (!in) throw UsageError("cannot open jobs file '" + cfg.jobs_path + "'");
  Json jobs_spec = Json::parse(in);
  if (!jobs_spec.is_array()) throw UsageError("jobs file must hold a JSON array");

  struct Job {
    std::string name;
    RunConfig cfg;
    Json report;
    int exit_code = 0;
  };
  std::vector<Job> jobs;
  for (size_t i = 0; i < jobs_spec.size(); ++i) {
    const Json& spec = jobs_spec[i];
    Job job;
    job.name = spec.value("name", "job-" + std::to_string(i));
    RunConfig jc;
    jc.command = spec.value("command", "");
    jc.precision = spec.value("precision", cfg.precision);
    if (spec.contains("n")) jc.n = spec["n"].get<long>();
    if (spec.contains("slope"))
      jc.slope = SlopeParam{spec["slope"][0].get<long>(), spec["slope"][1].get<long>()}
                     .normalized();
    if (spec.contains("slopes")) {
      jc.slopes.clear();
      for (const auto& s : spec["slopes"])
        jc.slopes.push_back(SlopeParam{s[0].get<long>(), s[1].get<long>()}.normalized());
    }
    if (spec.contains("c")) {
      jc.have_c = true;
      jc.c = Complex(spec["c"][0].get<double>(),
                     spec["c"].size() > 1 ? spec["c"][1].get<double>() : 0.0);
    }
    jc.samples = spec.value("samples", 1);
    jc.seed = spec.value("seed", std::uint64_t{0});
    jc.tol = spec.value("tol", 1e-8);
    jc.component = spec.value("component", "geometric");
    jc.word = spec.value("word", "");
    jc.torsion_flag = spec.value("torsion", false);
    if (spec.contains("q_list")) jc.q_list = spec["q_list"].get<std::vector<long>>();
    jc.trials = spec.value("trials", 200);
    job.cfg = std::move(jc);
    jobs.push_back(std::move(job));
  }

  const unsigned workers =
      cfg.threads > 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        RunResult r = dispatch(jobs[i].cfg);
        jobs[i].report = std::move(r.report);
        jobs[i].exit_code = all_pass(r.checks) ? 0 : 1;
      } catch (const std::exception& e) {
        jobs[i].report = Json{{"error", e.what()}};
        jobs[i].exit_code = 1;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w + 1 < workers && w + 1 < jobs.size(); ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::stable_sort(jobs.begin(), jobs.end(),
                   [](const Job& a, const Job& b) { return a.name < b.name; });

  RunResult res;
  Json j = report_header(cfg);
  Json out = Json::array();
  bool ok = true;
  for (const auto& job : jobs) {
    out.push_back(
        Json{{"name", job.name}, {"exit_code", job.exit_code}, {"report", job.report}});
    ok = ok && job.exit_code == 0;
  }
  j["jobs"] = out;
  res.checks.push_back({"all_jobs", ok, ""});
  j["checks"] = checks_json(res.checks);
  res.report = std::move(j);
  return res;
}

RunResult dispatch(const RunConfig& cfg) {
  const bool extended = cfg.precision == "extended";
  if (cfg.command == "identities") return run_identities(cfg);
  if (cfg.command == "torsion-lambda") return run_torsion_lambda(cfg);
  if (cfg.command == "slope-fns") return run_slope_fns(cfg);
  if (cfg.command == "fiber-sum")
    return extended ? run_fiber_sum<long double>(cfg) : run_fiber_sum<double>(cfg);
  if (cfg.command == "cross-check")
    return extended ? run_cross_check<long double>(cfg) : run_cross_check<double>(cfg);
  if (cfg.command == "counterexample")
    return extended ? run_counterexample<long double>(cfg) : run_counterexample<double>(cfg);
  if (cfg.command == "monodromy") return run_monodromy(cfg);
  if (cfg.command == "jacobi-selftest") return run_jacobi(cfg);
  if (cfg.command == "sweep") return run_sweep(cfg);
  throw UsageError("unknown command '" + cfg.command + "'");
}

void emit(const RunConfig& cfg, const RunResult& res) {
  const std::string payload =
      cfg.format == "csv" && !res.csv.empty() ? res.csv : res.report.dump(2) + "\n";
  if (cfg.out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw UsageError("cannot open output file '" + cfg.out_path + "'");
    out << payload;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adjoint torsion toolkit for once-punctured torus bundles"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string slope_text;
  std::string slopes_text;
  std::string c_text;
  std::string y_text;
  std::string q_list_text;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_path, "write the report to this path (default stdout)");
    sub->add_option("--format", cfg.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--precision", cfg.precision, "binary64 or extended")
        ->check(CLI::IsMember({"binary64", "extended"}));
  };

  CLI::App* identities = app.add_subcommand("identities", "run the exact identity suite");
  identities->add_option("--n", cfg.n, "bundle parameter")->required();
  identities->add_option("--slopes", slopes_text, "semicolon-separated slopes p,q;p,q;...");
  add_common(identities);

  CLI::App* tl = app.add_subcommand(
      "torsion-lambda", "torsion of the fiber-boundary slope as a rational function");
  tl->add_option("--n", cfg.n, "bundle parameter")->required();
  tl->add_option("--y", y_text, "evaluate at y = re[,im]");
  add_common(tl);

  CLI::App* sfns = app.add_subcommand("slope-fns", "slope machinery g, h, trace function, G");
  sfns->add_option("--n", cfg.n, "bundle parameter")->required();
  sfns->add_option("--slope", slope_text, "slope p,q")->required();
  add_common(sfns);

  CLI::App* fsum = app.add_subcommand("fiber-sum", "sum of 1/T over a trace fiber");
  fsum->add_option("--n", cfg.n, "bundle parameter")->required();
  fsum->add_option("--slope", slope_text, "slope p,q")->required();
  fsum->add_option("--c", c_text, "explicit trace target re[,im]");
  fsum->add_option("--samples", cfg.samples, "number of generic targets to draw");
  fsum->add_option("--seed", cfg.seed, "seed for the target draw");
  fsum->add_option("--tol", cfg.tol, "residual tolerance");
  fsum->add_option("--component", cfg.component, "geometric, extra, or all")
      ->check(CLI::IsMember({"geometric", "extra", "all"}));
  add_common(fsum);

  CLI::App* cc = app.add_subcommand("cross-check",
                                    "trace-derivative vs Jacobian/change-of-curve pathways");
  cc->add_option("--n", cfg.n, "bundle parameter")->required();
  cc->add_option("--slope", slope_text, "slope p,q")->required();
  cc->add_option("--samples", cfg.samples, "fiber points to compare");
  cc->add_option("--seed", cfg.seed, "seed for the target draw");
  cc->add_option("--c", c_text, "explicit trace target re[,im]");
  cc->add_option("--tol", cfg.tol, "relative agreement tolerance");
  add_common(cc);

  CLI::App* cex = app.add_subcommand("counterexample",
                                     "component sums on bundles with an extra component");
  cex->add_option("--n", cfg.n, "bundle parameter, n = 2 (mod 4)")->required();
  cex->add_option("--q-list", q_list_text, "comma-separated q values (slopes p = 4q+1)");
  cex->add_option("--samples", cfg.samples, "generic targets per slope");
  cex->add_option("--seed", cfg.seed, "seed for the target draw");
  cex->add_option("--tol", cfg.tol, "residual tolerance");
  add_common(cex);

  CLI::App* mono =
      app.add_subcommand("monodromy", "act by a word in L, R on trace coordinates");
  mono->add_option("--word", cfg.word, "word such as \"L R^-6\"")->required();
  mono->add_flag("--torsion", cfg.torsion_flag, "print 3 - tr(Jacobian) of the action");
  add_common(mono);

  CLI::App* sweep = app.add_subcommand("sweep", "run a JSON job list in parallel");
  sweep->add_option("--jobs", cfg.jobs_path, "path to the JSON job array")->required();
  sweep->add_option("--threads", cfg.threads, "worker threads (default: hardware)");
  add_common(sweep);

  CLI::App* jac = app.add_subcommand("jacobi-selftest", "residue-theorem self test");
  jac->add_option("--seed", cfg.seed, "seed");
  jac->add_option("--trials", cfg.trials, "number of trials");
  add_common(jac);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    if (!slopes_text.empty()) cfg.slopes = parse_slopes(slopes_text);
    if (!slope_text.empty()) cfg.slope = parse_slope(slope_text);
    if (!c_text.empty()) {
      cfg.c = parse_complex(c_text);
      cfg.have_c = true;
    }
    if (!y_text.empty()) cfg.eval_y = parse_complex(y_text);
    if (!q_list_text.empty()) {
      cfg.q_list.clear();
      std::istringstream in(q_list_text);
      std::string item;
      while (std::getline(in, item, ',')) cfg.q_list.push_back(std::stol(item));
    }
    if (cfg.samples < 1) throw UsageError("--samples must be >= 1");
    if (cfg.tol <= 0) throw UsageError("--tol must be > 0");
    if (cfg.format == "csv" && cfg.command != "fiber-sum")
      throw UsageError("--format csv is only supported for fiber-sum");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    RunResult res = dispatch(cfg);
    emit(cfg, res);
    return all_pass(res.checks) ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    // execution failure: emit a minimal failing report
    RunResult res;
    res.checks.push_back({"execution", false, e.what()});
    Json j = report_header(cfg);
    j["error"] = e.what();
    j["checks"] = checks_json(res.checks);
    res.report = std::move(j);
    try {
      emit(cfg, res);
    } catch (...) {
    }
    return 1;
  }
}
