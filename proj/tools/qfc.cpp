// qfc: counting solutions of Q(x,y) = lambda (mod p) in boxes, and the
// experiments around it.
//
//   qfc count     --prime 101 --form 0,1,0,0,0,0 --lambda 5 --box 0,0,10 [--list]
//   qfc pipeline  --prime 101 --form 1,0,-2,0,0,0 --lambda 3 --box 7,9,10
//   qfc pell      --d 61 [--n 7 --box -100,100,-100,100]
//   qfc verify-lemma1 --d 2 --nmax 10000
//   qfc sweep     --config grid.cfg --out out.csv [--seed 7]
//   qfc fit       --in out.csv
//   qfc parabola  --prime 1000000007 --m 100,1000,10000

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "qfc/harness.hpp"

namespace {

using qfc::BigInt;

constexpr int kExitUsage = 1;
constexpr int kExitMismatch = 2;

std::vector<BigInt> parse_bigs(const std::string& text, std::size_t expected, const char* what) {
  std::vector<BigInt> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    BigInt v;
    if (v.set_str(item, 10) != 0) throw qfc::Error(qfc::Errc::BadConfig, std::string("bad integer in ") + what);
    out.push_back(v);
  }
  if (expected && out.size() != expected) {
    throw qfc::Error(qfc::Errc::BadConfig, std::string(what) + " needs " + std::to_string(expected) + " values");
  }
  return out;
}

struct Instance {
  std::string prime, form, lambda = "0", box;
};

void add_instance_flags(CLI::App* cmd, Instance& in) {
  cmd->add_option("--prime", in.prime, "odd prime p")->required();
  cmd->add_option("--form", in.form, "coefficients a,b,c,d,e,f")->required();
  cmd->add_option("--lambda", in.lambda, "right-hand side lambda");
  cmd->add_option("--box", in.box, "K,L,M")->required();
}

struct Parsed {
  qfc::PrimeModulus p;
  qfc::QuadraticForm q;
  BigInt lambda;
  qfc::Box box;
};

Parsed parse_instance(const Instance& in) {
  const auto f = parse_bigs(in.form, 6, "--form");
  const auto b = parse_bigs(in.box, 3, "--box");
  if (!b[2].fits_slong_p()) throw qfc::Error(qfc::Errc::BadConfig, "M too large");
  return {qfc::PrimeModulus(parse_bigs(in.prime, 1, "--prime")[0]), qfc::QuadraticForm(f[0], f[1], f[2], f[3], f[4], f[5]),
          parse_bigs(in.lambda, 1, "--lambda")[0], qfc::Box(b[0], b[1], b[2].get_si())};
}

int cmd_count(const Instance& in, bool list) {
  const auto x = parse_instance(in);
  const auto res = qfc::count_exact(x.q, x.lambda, x.p, x.box, list);
  std::cout << "count " << res.count << "\n";
  std::cout << "irreducible " << (qfc::is_absolutely_irreducible(x.q, x.lambda, x.p) ? "yes" : "no") << "\n";
  if (res.degenerate_row) std::cout << "degenerate_row yes\n";
  if (list) {
    for (const auto& [px, py] : *res.solutions) std::cout << px << " " << py << "\n";
  }
  return 0;
}

int cmd_pipeline(const Instance& in) {
  const auto x = parse_instance(in);
  const auto rep = qfc::run_pipeline(x.q, x.lambda, x.p, x.box);
  const auto& s = rep.standard;
  std::cout << "kind " << qfc::kind_name(s.kind) << "\n";
  if (s.kind != qfc::StandardKind::Hyperbolic) std::cout << "D " << s.D << "\n";
  std::cout << "mu " << s.mu << "\nscale " << s.scale << "\ny_stretch " << s.y_stretch << "\n";
  std::cout << "x_interval [" << s.x_interval.lo << ", " << s.x_interval.hi << "]\n";
  std::cout << "y_interval [" << s.y_interval.lo << ", " << s.y_interval.hi << "]\n";
  if (rep.decomposition) {
    const auto& d = *rep.decomposition;
    std::cout << "regime " << qfc::regime_name(d.choice.regime) << "\nT " << d.choice.T << "\n";
    std::cout << "t " << d.pigeonhole.t << "\nk0 " << d.pigeonhole.k0 << "\nl0 " << d.pigeonhole.l0 << "\n";
    std::cout << "mu0 " << d.mu0 << "\n";
  }
  std::cout << "z_range [" << rep.z_lo << ", " << rep.z_hi << "] (" << rep.z_count << " values)\n";
  std::cout << "z\tn_z\tsolutions\n";
  for (const auto& r : rep.rows) std::cout << r.z << "\t" << r.n << "\t" << r.solutions << "\n";
  std::cout << "pipeline_count " << rep.recomposed.size() << "\nexact_count " << rep.exact_count << "\n";
  std::cout << "match " << (rep.match ? "yes" : "no") << "\n";
  return 0;
}

int cmd_pell(const std::string& dtext, const std::string& ntext, const std::string& boxtext) {
  const BigInt D = parse_bigs(dtext, 1, "--d")[0];
  if (D >= 2) {
    const auto unit = qfc::fundamental_solution(D);
    std::cout << "u0 " << unit.u0 << "\nv0 " << unit.v0 << "\n";
  }
  if (ntext.empty()) {
    if (D < 2) throw qfc::Error(qfc::Errc::DTooSmall, "Pell unit needs D >= 2; pass --n for D < 0");
    return 0;
  }
  const BigInt n = parse_bigs(ntext, 1, "--n")[0];
  const auto b = boxtext.empty() ? std::vector<BigInt>{-100, 100, -100, 100} : parse_bigs(boxtext, 4, "--box");
  const qfc::Interval xI{b[0], b[1]}, yI{b[2], b[3]};
  const auto pts = (D >= 2 && n != 0) ? qfc::enumerate_in_box_orbit(D, n, xI, yI) : qfc::enumerate_in_box_scan(D, n, xI, yI);
  std::cout << "points " << pts.size() << "\n";
  for (const auto& pt : pts) {
    std::cout << pt.x << " " << pt.y;
    if (D >= 2 && n != 0) {
      const auto rep = qfc::primitive_reduce(D, pt);
      std::cout << "  class (" << rep.x << ", " << rep.y << ")";
    }
    std::cout << "\n";
  }
  return 0;
}

int cmd_lemma(std::int64_t D, std::int64_t nmax, std::int64_t ywin) {
  const auto r = qfc::verify_small_arc_lemma(D, nmax, ywin);
  std::cout << "D " << r.D << "\nn_max " << r.n_max << "\n";
  if (D > 0) std::cout << "y_window " << r.y_window << "\n";
  std::cout << "conics " << r.conics_with_points << "\ntriples " << r.triples_checked << "\n";
  std::cout << "min_ratio " << r.min_ratio << " (n = " << r.min_ratio_n << ")\n";
  std::cout << "violations " << r.violations.size() << "\n";
  for (const auto& v : r.violations) {
    std::cout << "  n=" << v.n << " (" << v.first.x << "," << v.first.y << ") (" << v.middle.x << "," << v.middle.y
              << ") (" << v.last.x << "," << v.last.y << ") arc=" << v.arc << " threshold=" << v.threshold << "\n";
  }
  return r.violations.empty() ? 0 : kExitMismatch;
}

int cmd_sweep(const std::string& config, const std::string& out, std::optional<std::uint64_t> seed) {
  auto spec = qfc::parse_sweep_config_file(config);
  if (seed) spec.seed = *seed;
  const auto records = qfc::sweep(spec);
  int status = 0;
  for (const auto& r : records) {
    if (r.error.empty() && r.count > r.trivial_bound) status = kExitMismatch;
  }
  if (out.empty() || out == "-") {
    qfc::write_csv(std::cout, records);
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw qfc::Error(qfc::Errc::BadConfig, "cannot write " + out);
    qfc::write_csv(f, records);
  }
  return status;
}

int cmd_fit(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw qfc::Error(qfc::Errc::BadConfig, "cannot open " + path);
  std::map<std::uint64_t, std::vector<qfc::ExperimentRecord>> by_p;
  for (auto& r : qfc::read_csv(f)) by_p[r.p].push_back(std::move(r));
  std::cout << "p,points,slope,residual\n";
  for (const auto& [p, recs] : by_p) {
    try {
      const auto fit = qfc::fit_exponent(recs);
      std::cout << p << "," << recs.size() << "," << fit.slope << "," << fit.residual << "\n";
    } catch (const qfc::Error& e) {
      std::cout << p << "," << recs.size() << ",,underdetermined\n";
    }
  }
  return 0;
}

int cmd_parabola(const std::string& prime, const std::string& ms) {
  const qfc::PrimeModulus p(parse_bigs(prime, 1, "--prime")[0]);
  std::vector<std::int64_t> schedule;
  for (const auto& m : parse_bigs(ms, 0, "--m")) schedule.push_back(m.get_si());
  std::cout << "M,count,ratio\n";
  for (const auto& r : qfc::parabola_sanity(schedule, p)) std::cout << r.M << "," << r.count << "," << r.ratio << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solution counts of quadratic congruences in boxes"};
  app.require_subcommand(1);

  Instance count_in;
  bool list = false;
  auto* count = app.add_subcommand("count", "exact I_Q(M;K,L)");
  add_instance_flags(count, count_in);
  count->add_flag("--list", list, "print every solution");

  Instance pipe_in;
  auto* pipeline = app.add_subcommand("pipeline", "decomposition pipeline checked against the exact count");
  add_instance_flags(pipeline, pipe_in);

  std::string pell_d, pell_n, pell_box;
  auto* pell = app.add_subcommand("pell", "fundamental unit and lattice points of x^2 - D y^2 = n");
  pell->add_option("--d", pell_d, "D")->required();
  pell->add_option("--n", pell_n, "n");
  pell->add_option("--box", pell_box, "x0,x1,y0,y1");

  std::int64_t lemma_d = 0, lemma_nmax = 0, lemma_ywin = qfc::kDefaultYWindow;
  auto* lemma = app.add_subcommand("verify-lemma1", "three lattice points never fit in an arc of length |n|^{1/6}");
  lemma->add_option("--d", lemma_d, "square-free D")->required();
  lemma->add_option("--nmax", lemma_nmax, "largest |n|")->required();
  lemma->add_option("--ywindow", lemma_ywin, "hyperbola window |y| <= W");

  std::string sweep_cfg, sweep_out;
  std::optional<std::uint64_t> sweep_seed;
  auto* sweep = app.add_subcommand("sweep", "grid experiment, CSV output");
  sweep->add_option("--config", sweep_cfg, "key = value config file")->required();
  sweep->add_option("--out", sweep_out, "output CSV (default stdout)");
  sweep->add_option("--seed", sweep_seed, "override the config seed");

  std::string fit_in;
  auto* fit = app.add_subcommand("fit", "log-log slope of max count against M, per prime");
  fit->add_option("--in", fit_in, "sweep CSV")->required();

  std::string para_p, para_m = "100,1000,10000";
  auto* para = app.add_subcommand("parabola", "y = x^2 (mod p) counts against sqrt(M)");
  para->add_option("--prime", para_p, "odd prime p")->required();
  para->add_option("--m", para_m, "M schedule");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*count) return cmd_count(count_in, list);
    if (*pipeline) return cmd_pipeline(pipe_in);
    if (*pell) return cmd_pell(pell_d, pell_n, pell_box);
    if (*lemma) return cmd_lemma(lemma_d, lemma_nmax, lemma_ywin);
    if (*sweep) return cmd_sweep(sweep_cfg, sweep_out, sweep_seed);
    if (*fit) return cmd_fit(fit_in);
    if (*para) return cmd_parabola(para_p, para_m);
  } catch (const qfc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == qfc::Errc::PipelineMismatch ? kExitMismatch : kExitUsage;
  }
  return kExitUsage;
}
