#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "atomdec/cli.hpp"
#include "atomdec/diagnostics.hpp"
#include "atomdec/disc.hpp"
#include "atomdec/exp_cinfty.hpp"
#include "atomdec/gabor.hpp"
#include "atomdec/perturbation.hpp"
#include "atomdec/probes.hpp"
#include "atomdec/tables.hpp"

using namespace atomdec;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

using Clock = std::chrono::steady_clock;

Real seconds_since(Clock::time_point t0) {
  return std::chrono::duration<Real>(Clock::now() - t0).count();
}

std::string fmt(Real x) { return format_real(x); }

Vector p1_samples(long N) { return probe_p1(full_box(1.0, 1, N)).samples(); }

void exp_round_trip(Verdict& v) {
  const auto t0 = Clock::now();
  ExpConfig cfg;
  const ExpDecomposition d(cfg);
  const Vector f = p1_samples(cfg.N);
  const auto at64 = reproduction_residuals(d, f, 3, 64);
  const auto at32 = reproduction_residuals(d, f, 3, 32);
  const Real elapsed = seconds_since(t0);
  Real worst = 0.0;
  for (Real r : at64)
    worst = std::max(worst, r);
  v.check(worst <= 1e-6, "q_n residual <= 1e-6 for n <= 3");
  v.check(at64[0] < at32[0] / 10.0, "residual(64) < residual(32) / 10");
  v.check(elapsed < 5.0, "runtime < 5 s");
  v.detail << "max q_n residual " << fmt(worst) << ", q0 residual J=32 " << fmt(at32[0]) << " vs J=64 "
           << fmt(at64[0]) << ", " << fmt(elapsed) << " s";
}

void exp_decay(Verdict& v) {
  const ExpDecomposition d{ExpConfig{}};
  const auto alpha = analyze(d, p1_samples(1024));
  const auto report = decay_report(alpha, 8, 16, 64);
  bool finite = true, monotone = true;
  for (std::size_t m = 0; m < report.rows.size(); ++m) {
    finite = finite && std::isfinite(report.rows[m].sup);
    if (m > 0)
      monotone = monotone && report.rows[m].sup >= report.rows[m - 1].sup;
  }
  v.check(report.slope <= -6.0, "slope over [16, 64] <= -6");
  v.check(finite, "decay table finite");
  v.check(monotone, "decay table monotone in m");
  v.check(report.rows.size() == 9, "rows for m = 0..8");
  v.detail << "slope " << fmt(report.slope) << ", sup |a_j||j|^8 = " << fmt(report.rows.back().sup);
}

void exp_removal(Verdict& v) {
  const ExpDecomposition d{ExpConfig{}};
  const Vector f = p1_samples(1024);
  const auto removed = remove_atom(d, {3, 0}, {f}, 2);
  const auto& r = removed.decomposition;
  const Real q2 = reproduction_residual(r, f, 2, r.truncation());
  // dual at j = 5: compare y_5' and u_5 on P1 and on the removed atom
  const long before = d.indices().position({5, 0}), after = r.indices().position({5, 0});
  Real change = 0.0;
  for (const Vector& probe : {f, d.atom_at({3, 0}), d.atom_at({-3, 0})})
    change = std::max(change, std::abs(r.analyze(probe)(after) - d.analyze(probe)(before)));
  v.check(q2 <= 1e-5, "q_2 residual <= 1e-5");
  v.check(change > 1e-8, "dual at j = 5 changes by more than 1e-8");
  v.detail << "q2 residual " << fmt(q2) << ", dual change " << fmt(change) << ", |1 - u_j0(e_j0)| "
           << fmt(removed.margin);
}

void gabor_reconstruction(Verdict& v) {
  const auto t0 = Clock::now();
  const GaborSystem sys(64, 4, 4, gaussian_window(64));
  const Vector h = dual_window(sys);
  Real worst = 0.0;
  for (const auto& f : random_signals(64, 50, default_seed)) {
    const Vector back = gabor_reconstruct(sys, gabor_analyze(sys, f), h);
    worst = std::max(worst, (back - f).norm() / f.norm());
  }
  const Real elapsed = seconds_since(t0);
  // dense oracle: G G^* h = g from the explicit synthesis matrix
  const Matrix G = synthesis_matrix(sys, sys.window());
  const Vector oracle = (G * G.adjoint()).fullPivLu().solve(sys.window());
  const Real dual_err = (h - oracle).cwiseAbs().maxCoeff();
  v.check(worst <= 1e-8, "round trip <= 1e-8 on 50 probes");
  v.check(dual_err <= 1e-9, "dual matches dense solve to 1e-9");
  v.check(elapsed < 10.0, "runtime < 10 s");
  v.detail << "max relative error " << fmt(worst) << ", dual vs oracle " << fmt(dual_err) << ", " << fmt(elapsed)
           << " s";
}

void gabor_certificate(Verdict& v) {
  const GaborSystem sys(64, 4, 4, gaussian_window(64));
  const auto c = summability_certificate(sys, sys.window(), dual_window(sys), 2);
  bool monotone = true;
  for (std::size_t s = 2; s + 1 < c.shell_sums.size(); ++s)
    monotone = monotone && c.shell_sums[s + 1] <= c.shell_sums[s];
  v.check(c.N == 6, "N = 6");
  v.check(monotone, "shell sums decrease beyond shell 2");
  v.check(c.total <= c.bound * (1 + 1e-6), "total <= bound (1 + 1e-6)");
  v.detail << "total " << fmt(c.total) << ", bound " << fmt(c.bound) << ", shells " << c.shell_sums.size();
}

void disc_reproduction(Verdict& v) {
  const auto part = build_partition(6);
  const DiscDecomposition d(part, 32, PolarGrid::standard(10));
  const Vector f = probe_p3(32);
  const auto res = reproduction_residuals(d, f, 3, d.truncation());
  const Real area_err = std::abs(part.total_area() - pi);
  Real worst = 0.0;
  for (int n = 1; n <= 3; ++n)
    worst = std::max(worst, res[std::size_t(n)]);
  v.check(worst <= 1e-6, "v_n residual <= 1e-6 for n = 1, 2, 3");
  v.check(area_err <= 1e-12, "areas sum to pi within 1e-12");
  v.check(d.condition() < 1e8, "condition < 1e8");
  v.detail << "max residual " << fmt(worst) << ", area error " << fmt(area_err) << ", condition "
           << fmt(d.condition());
}

void perturbation_transfer(Verdict& v) {
  const long count = 16;
  ExpConfig cfg;
  cfg.max_order = 16;
  const auto base = std::make_shared<const ExpDecomposition>(cfg);
  const GridShape box = *base->grid();
  const Vector f = p1_samples(cfg.N);

  PerturbationProblem problem;
  problem.base = base;
  problem.mode = PerturbMode::duals;
  problem.shift = corollary_dual_noise(*base, count, base->derivative_sup().nodes_in_k(), 0.5);
  problem.probes = samples_of(exp_probe_set(box));
  const auto out = perturb_duals(problem, 1e-8);
  const Real closed = std::pow(out.gate.c, out.depth + 1) / (1 - out.gate.c);
  const Real q1 = reproduction_residual(*out.decomposition, f, 1, base->truncation());
  v.check(out.gate.contraction, "contraction gate passes");
  v.check(closed <= 1e-8 && std::abs(closed - out.residual_bound) <= 1e-15, "depth meets closed-form bound");
  v.check(q1 <= 1e-4, "P1 q_1 residual <= 1e-4");

  // rank one: y_0' = x_0' + e, atoms (I + x_0 e)^{-1} x_k by Sherman-Morrison
  PerturbationProblem rank_one;
  rank_one.base = base;
  rank_one.mode = PerturbMode::duals;
  rank_one.shift = Matrix::Zero(1, base->dimension());
  rank_one.shift(0, base->derivative_sup().nodes_in_k()[100]) = Scalar(0.1, 0.05);
  rank_one.probes = problem.probes;
  for (long k : {0L, 7L})
    rank_one.probes.push_back(base->atom(k));
  const auto r1 = perturb_duals(rank_one, 1e-6);
  const auto& q = base->seminorms();
  const Vector x0 = base->atom(0);
  const Scalar denom = 1.0 + (rank_one.shift * x0)(0);
  Real excess = 0.0;
  for (long k : {0L, 7L}) {
    const Vector xk = base->atom(k);
    const Vector exact = xk - x0 * ((rank_one.shift * xk)(0) / denom);
    const Real err = q.evaluate(r1.decomposition->atom(k) - exact, 0) / q.evaluate(xk, 0);
    excess = std::max(excess, err - r1.residual_bound);
  }
  v.check(excess <= 1e-14, "rank-one atoms within c^{K+1}/(1-c)");
  v.detail << "c = " << fmt(out.gate.c) << ", depth " << out.depth << ", bound " << fmt(closed) << ", P1 q1 "
           << fmt(q1) << ", rank-one depth " << r1.depth << " bound " << fmt(r1.residual_bound);
}

void diagnostics(Verdict& v) {
  auto decrease = [](const AtomicDecomposition& d, std::vector<Vector> elements) {
    const ProbeSet set = make_probe_set(d, std::move(elements), default_functionals(d));
    return shrinking_curve(d, set, resolve_ngrid(d, {})).min_decrease;
  };
  ExpConfig cfg;
  cfg.J = 128;
  const ExpDecomposition e(cfg);
  const Real exp_gain = decrease(e, samples_of(exp_probe_set(*e.grid())));
  const GaborDecomposition g(GaborSystem(64, 4, 4, gaussian_window(64)));
  const Real gabor_gain = decrease(g, samples_of(gabor_probe_set(g.system())));
  const DiscDecomposition disc(build_partition(13), 32);
  const Real disc_gain = decrease(disc, samples_of(disc_probe_set(32)));

  Vector h = Vector::Zero(e.size());
  for (long k = 0; k < e.size(); ++k)
    if (const int m = e.indices().magnitude(k); m > 0)
      h(k) = 1.0 / Real(m);
  const auto harmonic = boundedly_complete_probe(e, CoefficientSeq(e.index_ptr(), h), resolve_ngrid(e, {}), {1, 2});

  v.check(exp_gain >= 1e3, "exp shrinking >= 1e3");
  v.check(gabor_gain >= 1e3, "gabor shrinking >= 1e3");
  v.check(disc_gain >= 1e3, "disc shrinking >= 1e3");
  v.check(!harmonic.consistent, "harmonic verdict negative");
  v.detail << "decrease exp " << fmt(exp_gain) << ", gabor " << fmt(gabor_gain) << ", disc " << fmt(disc_gain)
           << ", harmonic consistent " << (harmonic.consistent ? "yes" : "no");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void determinism(Verdict& v) {
  const fs::path root = fs::temp_directory_path() / "atomdec-acceptance";
  fs::remove_all(root);
  const std::vector<std::vector<std::string>> runs{
      {"expdecomp"},
      {"expdecomp", "--remove", "3"},
      {"gabor"},
      {"disc"},
      {"perturb"},
      {"diagnose", "--decomposition", "gabor"},
  };
  const fs::path cfg = root / "run.cfg";
  fs::create_directories(root);
  std::ofstream(cfg) << "schema_version = 1\nseed = 424242\n";
  long files = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    std::vector<std::string> reports[2];
    fs::path dirs[2] = {root / (std::to_string(i) + "a"), root / (std::to_string(i) + "b")};
    for (int rep = 0; rep < 2; ++rep) {
      std::vector<std::string> args{"--config", cfg.string(), "--out", dirs[rep].string()};
      args.insert(args.end(), runs[i].begin(), runs[i].end());
      std::ostringstream out, err;
      const int status = cli::run(args, out, err);
      v.check(status == 0, runs[i].front() + " exits 0 (" + err.str() + ")");
    }
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      ++files;
      v.check(slurp(entry.path()) == slurp(dirs[1] / entry.path().filename()),
              runs[i].front() + " " + entry.path().filename().string() + " identical");
    }
  }
  v.detail << runs.size() << " subcommand runs, " << files << " report files compared";
  fs::remove_all(root);
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria{
      {"exponential round trip", exp_round_trip},
      {"coefficient decay", exp_decay},
      {"one-atom removal", exp_removal},
      {"Gabor perfect reconstruction", gabor_reconstruction},
      {"summability certificate", gabor_certificate},
      {"disc reproduction", disc_reproduction},
      {"perturbation transfer", perturbation_transfer},
      {"diagnostics consistency", diagnostics},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "[exception: " << e.what() << "]";
    }
    failures += v.pass ? 0 : 1;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first
              << "): " << v.detail.str() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
