#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "atomdec/diagnostics.hpp"
#include "atomdec/disc.hpp"
#include "atomdec/exp_cinfty.hpp"
#include "atomdec/gabor.hpp"
#include "atomdec/perturbation.hpp"
#include "atomdec/probes.hpp"
#include "atomdec/tables.hpp"

namespace atomdec::cli {

namespace {

using json = nlohmann::json;

// JSON has no inf/nan; those go out as their text form.
json number(Real x) {
  if (std::isfinite(x))
    return x;
  return format_real(x);
}

json numbers(const std::vector<Real>& xs) {
  json out = json::array();
  for (Real x : xs)
    out.push_back(number(x));
  return out;
}

json complex_number(Scalar z) { return json::array({number(z.real()), number(z.imag())}); }

class Reports {
public:
  Reports(const Context& ctx, std::string command) : ctx_(ctx), command_(std::move(command)) {}

  json header() const {
    json h;
    h["command"] = command_;
    h["schema_version"] = schema_version;
    h["seed"] = ctx_.seed;
    h["config"] = ctx_.settings.values();
    return h;
  }

  template <class Body>
  void write(const std::string& file, Body&& body) {
    const auto path = ctx_.out_dir / file;
    std::ofstream out(path, std::ios::binary);
    if (!out)
      throw InputError("cannot write " + path.string());
    body(out);
    if (!out)
      throw InputError("write failed for " + path.string());
    written_.push_back(file);
  }

  void write_json(const std::string& file, const json& j) {
    write(file, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
  }

  void summary(const std::string& line) const {
    ctx_.log << command_ << ": " << line << "; wrote";
    for (const auto& f : written_)
      ctx_.log << ' ' << f;
    ctx_.log << '\n';
  }

private:
  const Context& ctx_;
  std::string command_;
  std::vector<std::string> written_;
};

const NamedProbe& pick(const std::vector<NamedProbe>& probes, const std::string& name) {
  for (const auto& p : probes)
    if (p.name == name)
      return p;
  std::string known;
  for (const auto& p : probes)
    known += (known.empty() ? "" : ", ") + p.name;
  throw InputError("unknown probe '" + name + "' (known: " + known + ")");
}

void write_vector_csv(std::ostream& out, const Vector& v, const char* index_name) {
  out << index_name << ",re,im\n";
  for (long k = 0; k < v.size(); ++k)
    out << k << ',' << format_real(v(k).real()) << ',' << format_real(v(k).imag()) << '\n';
}

struct SparseEntry {
  std::string key;
  long coordinate;
  Scalar value;
};

// Rows "key,coordinate,re,im"; a first line that does not parse is taken as a header.
std::vector<SparseEntry> read_sparse_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot read " + path);
  std::vector<SparseEntry> out;
  std::string line;
  long number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line == "\r")
      continue;
    const auto fields = split_csv_line(line);
    try {
      if (fields.size() != 4)
        throw InputError("expected 4 fields");
      out.push_back({fields[0], parse_integer(fields[1]), Scalar(parse_real(fields[2]), parse_real(fields[3]))});
    } catch (const InputError& e) {
      if (number == 1)
        continue;
      throw InputError(path + " line " + std::to_string(number) + ": " + e.what());
    }
  }
  if (out.empty())
    throw InputError(path + " holds no entries");
  return out;
}

std::vector<NamedProbe> read_probe_file(const std::string& path, long dim) {
  std::vector<NamedProbe> out;
  std::vector<std::vector<bool>> seen;
  for (const auto& e : read_sparse_csv(path)) {
    auto it = std::find_if(out.begin(), out.end(), [&](const NamedProbe& p) { return p.name == e.key; });
    if (it == out.end()) {
      out.push_back({e.key, Vector::Zero(dim)});
      seen.emplace_back(std::size_t(dim), false);
      it = out.end() - 1;
    }
    if (e.coordinate < 0 || e.coordinate >= dim)
      throw InputError("probe '" + e.key + "': coordinate " + std::to_string(e.coordinate) + " outside 0.." +
                       std::to_string(dim - 1));
    const auto k = std::size_t(it - out.begin());
    it->samples(e.coordinate) = e.value;
    seen[k][std::size_t(e.coordinate)] = true;
  }
  for (std::size_t k = 0; k < out.size(); ++k)
    if (std::find(seen[k].begin(), seen[k].end(), false) != seen[k].end())
      throw InputError("probe '" + out[k].name + "' does not give every coordinate");
  return out;
}

LatticeIndex parse_index(const std::string& text, int dim) {
  const auto fields = split_csv_line(text);
  if (int(fields.size()) != dim)
    throw InputError("index '" + text + "' needs " + std::to_string(dim) + " component(s)");
  LatticeIndex j{0, 0};
  for (int d = 0; d < dim; ++d)
    j[std::size_t(d)] = int(parse_integer(fields[std::size_t(d)]));
  return j;
}

std::vector<int> orders_upto(int top) {
  std::vector<int> out;
  for (int n = 0; n <= top; ++n)
    out.push_back(n);
  return out;
}

// expdecomp ------------------------------------------------------------------

int run_expdecomp(const Context& ctx) {
  const Settings& s = ctx.settings;
  ExpConfig cfg;
  cfg.M = s.real("M");
  cfg.dim = int(s.integer("dim"));
  cfg.N = s.integer("N");
  cfg.J = int(s.integer("J"));
  cfg.rho = s.real("rho");
  cfg.backend = parse_backend(s.text("backend"));
  cfg.reflection_order = int(s.integer("reflection-order"));
  const int top = int(s.integer("residual-order"));
  const int decay_m = int(s.integer("decay-order"));
  const Real tol = s.real("tol");
  if (top < 0 || top > 8)
    throw InputError("residual-order must lie in 0..8");
  if (cfg.J < 2)
    throw InputError("J must be at least 2");
  cfg.max_order = std::max(cfg.max_order, top);

  Reports reports(ctx, "expdecomp");
  const ExpDecomposition d(cfg);
  const auto probes = exp_probe_set(*d.grid(), ctx.seed);
  const NamedProbe& probe = pick(probes, s.text("probe"));
  const CoefficientSeq coeffs = analyze(d, probe.samples);
  const DecayReport decay = decay_report(coeffs, decay_m);
  const auto at_J = reproduction_residuals(d, probe.samples, top, cfg.J);
  const auto at_half = reproduction_residuals(d, probe.samples, top, cfg.J / 2);

  json report = reports.header();
  report["truncation"] = {{"M", cfg.M},     {"N", cfg.N},     {"J", cfg.J},
                          {"dim", cfg.dim}, {"rho", cfg.rho}, {"backend", to_string(cfg.backend)},
                          {"atoms", d.size()}};
  report["tolerances"] = {{"residual", tol}, {"halving_gain", 10.0}, {"decay_slope", -6.0}};
  report["probe"] = probe.name;
  report["residuals"] = {{"orders", orders_upto(top)}, {"at_J", numbers(at_J)}, {"at_half_J", numbers(at_half)}};
  json rows = json::array();
  for (const auto& r : decay.rows)
    rows.push_back({{"m", r.m}, {"sup", number(r.sup)}});
  report["decay"] = {{"slope", number(decay.slope)}, {"fit_lo", decay.fit_lo}, {"fit_hi", decay.fit_hi},
                     {"fit_points", decay.fit_points}, {"rows", rows}};

  bool within = true, gain = true;
  for (std::size_t n = 0; n < at_J.size(); ++n) {
    within = within && at_J[n] <= tol;
    gain = gain && at_J[n] * 10.0 < at_half[n];
  }
  bool finite = true, monotone = true;
  for (std::size_t i = 0; i < decay.rows.size(); ++i) {
    finite = finite && std::isfinite(decay.rows[i].sup);
    monotone = monotone && (i == 0 || decay.rows[i].sup >= decay.rows[i - 1].sup);
  }
  json verdicts = {{"residual_within_tolerance", within},
                   {"halving_gain_at_least_10", gain},
                   {"decay_slope_at_most_minus_6", decay.slope <= -6.0},
                   {"decay_table_finite", finite},
                   {"decay_table_monotone", monotone}};

  const std::string remove = s.text("remove");
  if (remove != "none") {
    const LatticeIndex j0 = parse_index(remove, cfg.dim);
    const RemovalResult r = remove_atom(d, j0, {probe.samples}, 2);
    const auto after = reproduction_residuals(r.decomposition, probe.samples, top, cfg.J);
    report["removal"] = {{"index", json::array({j0[0], j0[1]})},
                         {"self_value", complex_number(r.self_value)},
                         {"margin", number(r.margin)},
                         {"residual_order", r.residual_order},
                         {"residual_before", numbers(r.residual_before)},
                         {"residual_after", numbers(r.residual_after)},
                         {"residuals_after", numbers(after)},
                         {"within_factor_10", r.within_factor}};
    verdicts["removal_within_factor_10"] = r.within_factor;
  } else {
    report["removal"] = nullptr;
  }
  report["verdicts"] = verdicts;

  reports.write("coefficients.csv", [&](std::ostream& out) { write_csv(out, coeffs); });
  TidyTable table;
  for (const auto& r : decay.rows)
    table.add("sup", r.m, r.sup);
  reports.write("decay.csv", [&](std::ostream& out) { emit_plotdata(out, table); });
  reports.write_json("residual.json", report);
  reports.summary("max residual " + format_real(*std::max_element(at_J.begin(), at_J.end())) + ", slope " +
                  format_real(decay.slope));
  return ok;
}

// gabor ------------------------------------------------------------------------

Vector load_window(const std::string& spec, long L, Real& norm_before) {
  Vector w;
  if (spec == "gaussian")
    w = gaussian_window(L);
  else if (spec == "impulse")
    w = impulse_window(L);
  else {
    const auto probes = read_probe_file(spec, L);
    if (probes.size() != 1)
      throw InputError("window file must hold exactly one series");
    w = probes.front().samples;
  }
  norm_before = w.norm();
  if (!(norm_before > 0.0))
    throw InputError("window is zero");
  return w / norm_before;
}

int run_gabor(const Context& ctx) {
  const Settings& s = ctx.settings;
  const long L = s.integer("L"), a = s.integer("a"), b = s.integer("b");
  const int n = int(s.integer("n"));
  const Real tol = s.real("tol");
  Real norm_before = 0.0;
  const Vector window = load_window(s.text("window"), L, norm_before);
  const GaborSystem sys(L, a, b, window);
  const FrameBounds fb = frame_bounds(sys);

  Reports reports(ctx, "gabor");
  json report = reports.header();
  report["truncation"] = {{"L", L}, {"a", a}, {"b", b}, {"lattice_size", sys.lattice_size()}};
  report["tolerances"] = {{"reconstruction", tol}, {"frame_floor", 1e-10}, {"bound_slack", 1e-6}};
  report["frame"] = {{"A", number(fb.A)}, {"B", number(fb.B)}, {"redundancy", sys.redundancy()},
                     {"window_norm_before_normalization", number(norm_before)}};

  Vector h;
  try {
    h = dual_window(sys);
  } catch (const GateRefusal&) {
    report["gate"] = {{"passed", false}, {"reason", "frame operator numerically singular"}};
    reports.write_json("certificate.json", report);
    throw;
  }
  report["gate"] = {{"passed", true}};

  auto probes = gabor_probe_set(sys, ctx.seed);
  probes.push_back({"random", random_signals(L, 1, ctx.seed).front()});
  const NamedProbe& probe = pick(probes, s.text("probe"));
  const CoefficientSeq coeffs = gabor_analyze(sys, probe.samples);
  const Vector back = gabor_reconstruct(sys, coeffs, h);
  const Real rel = (back - probe.samples).norm() / probe.samples.norm();
  const SummabilityCertificate cert = summability_certificate(sys, probe.samples, h, n);

  report["probe"] = probe.name;
  report["reconstruction_error"] = number(rel);
  report["certificate"] = {{"n", cert.n},
                           {"N", cert.N},
                           {"shell_sums", numbers(cert.shell_sums)},
                           {"total", number(cert.total)},
                           {"qN_h", number(cert.qN_h)},
                           {"qN_f", number(cert.qN_f)},
                           {"weight_sum", number(cert.weight_sum)},
                           {"bound", number(cert.bound)},
                           {"decay_ratio", number(cert.decay_ratio)}};
  report["verdicts"] = {{"reconstruction_within_tolerance", rel <= tol},
                        {"total_within_bound", cert.within_bound},
                        {"shells_monotone_beyond_2", cert.monotone_beyond_shell2}};

  reports.write("dual.csv", [&](std::ostream& out) { write_vector_csv(out, h, "t"); });
  reports.write("coefficients.csv", [&](std::ostream& out) { write_csv(out, coeffs); });
  TidyTable shells;
  for (std::size_t k = 0; k < cert.shell_sums.size(); ++k)
    shells.add("shell", Real(k), cert.shell_sums[k]);
  reports.write("shells.csv", [&](std::ostream& out) { emit_plotdata(out, shells); });
  reports.write_json("certificate.json", report);
  reports.summary("frame bounds [" + format_real(fb.A) + ", " + format_real(fb.B) + "], reconstruction " +
                  format_real(rel));
  return ok;
}

// disc -------------------------------------------------------------------------

AngularLaw angular_law(const Settings& s) {
  AngularLaw law;
  law.multiplier = int(s.integer("multiplier"));
  law.min_sectors = int(s.integer("min-sectors"));
  law.rotation = s.real("rotation");
  if (s.text("sectors") != "auto")
    law.constant = int(s.integer("sectors"));
  return law;
}

int run_disc(const Context& ctx) {
  const Settings& s = ctx.settings;
  const int K = int(s.integer("K"));
  const int N = int(s.integer("N"));
  const int top = int(s.integer("residual-order"));
  const Real tol = s.real("tol");
  const Real gate = s.real("condition-gate");
  if (top < 0 || top > 8)
    throw InputError("residual-order must lie in 0..8");
  const DiscPartition part = build_partition(K, angular_law(s));
  const PolarGrid grid = PolarGrid::standard(int(s.integer("boundary-exponent")), int(s.integer("angles")));

  Reports reports(ctx, "disc");
  json report = reports.header();
  const Real area_error = std::abs(part.total_area() - pi);
  report["truncation"] = {{"K", K}, {"N", N}, {"cells", part.size()}};
  report["tolerances"] = {{"residual", tol}, {"area", 1e-12}, {"condition_gate", gate}};
  report["partition"] = {{"cells", part.size()},
                         {"area_sum", part.total_area()},
                         {"area_error", area_error},
                         {"max_relative_diameter", number(part.max_relative_diameter())}};
  reports.write("cells.csv", [&](std::ostream& out) {
    out << "j,annulus,r_inner,r_outer,theta_begin,theta_end,area,re,im\n";
    long j = 1;
    for (const auto& c : part.cells())
      out << j++ << ',' << c.annulus << ',' << format_real(c.r_inner) << ',' << format_real(c.r_outer) << ','
          << format_real(c.theta_begin) << ',' << format_real(c.theta_end) << ',' << format_real(c.area) << ','
          << format_real(c.point.real()) << ',' << format_real(c.point.imag()) << '\n';
  });

  std::optional<DiscDecomposition> d;
  try {
    d.emplace(part, N, grid, std::max(8, top), gate);
  } catch (const GateRefusal& e) {
    report["gate"] = {{"passed", false}, {"condition", number(e.value())}};
    reports.write_json("residual.json", report);
    throw;
  }
  report["gate"] = {{"passed", true}, {"condition", number(d->condition())}};

  const auto probes = disc_probe_set(N, ctx.seed);
  const NamedProbe& probe = pick(probes, s.text("probe"));
  const CoefficientSeq duals = analyze(*d, probe.samples);
  const auto res = reproduction_residuals(*d, probe.samples, top, d->truncation());
  bool within = true;
  for (int n = 1; n <= top; ++n)
    within = within && res[std::size_t(n)] <= tol;
  report["probe"] = probe.name;
  report["residuals"] = {{"orders", orders_upto(top)}, {"values", numbers(res)}};
  report["verdicts"] = {{"residual_within_tolerance", within},
                        {"areas_tile_disc", area_error <= 1e-12},
                        {"condition_below_gate", d->condition() < gate}};

  reports.write("duals.csv", [&](std::ostream& out) { write_csv(out, duals); });
  reports.write_json("residual.json", report);
  reports.summary("condition " + format_real(d->condition()) + ", max residual " +
                  format_real(*std::max_element(res.begin(), res.end())));
  return ok;
}

// perturb ----------------------------------------------------------------------

struct Base {
  std::shared_ptr<const AtomicDecomposition> decomp;
  std::vector<NamedProbe> probes;
  std::vector<long> nodes;  // where p_1 takes its sup, when it is a node sup
};

Base make_base(const Settings& s, std::uint64_t seed, long count) {
  const std::string kind = s.text("base");
  if (kind == "exp") {
    ExpConfig cfg;
    cfg.N = s.integer("N");
    cfg.J = int(s.integer("J"));
    cfg.max_order = std::max<int>(cfg.max_order, int(count));
    auto d = std::make_shared<const ExpDecomposition>(cfg);
    return {d, exp_probe_set(*d->grid(), seed), d->derivative_sup().nodes_in_k()};
  }
  if (kind == "gabor") {
    const long L = s.integer("L");
    GaborSystem sys(L, s.integer("a"), s.integer("b"), gaussian_window(L));
    auto probes = gabor_probe_set(sys, seed);
    return {std::make_shared<const GaborDecomposition>(std::move(sys)), std::move(probes), {}};
  }
  throw InputError("perturb base must be exp or gabor, got '" + kind + "'");
}

Matrix noise_from_file(const std::string& path, PerturbMode mode, long dim, long size) {
  const auto entries = read_sparse_csv(path);
  long count = 0;
  for (const auto& e : entries)
    count = std::max(count, parse_integer(e.key) + 1);
  if (count > size)
    throw InputError("noise file positions exceed the truncation");
  Matrix shift = mode == PerturbMode::atoms ? Matrix::Zero(dim, count) : Matrix::Zero(count, dim);
  for (const auto& e : entries) {
    const long k = parse_integer(e.key);
    if (k < 0 || e.coordinate < 0 || e.coordinate >= dim)
      throw InputError("noise entry out of range");
    if (mode == PerturbMode::atoms)
      shift(e.coordinate, k) += e.value;
    else
      shift(k, e.coordinate) += e.value;
  }
  return shift;
}

int run_perturb(const Context& ctx) {
  const Settings& s = ctx.settings;
  const std::string mode_text = s.text("mode");
  if (mode_text != "atoms" && mode_text != "duals")
    throw InputError("mode must be atoms or duals");
  const PerturbMode mode = mode_text == "atoms" ? PerturbMode::atoms : PerturbMode::duals;
  const long count = s.integer("count");
  const Real tol = s.real("tol");
  const int p0 = int(s.integer("p0"));
  const int max_order = int(s.integer("max-order"));
  const Real residual_tol = s.real("residual-tol");
  if (count < 0)
    throw InputError("count must be nonnegative");
  const Base base = make_base(s, ctx.seed, count);
  const long dim = base.decomp->dimension();

  const std::string recipe = s.text("recipe");
  Matrix shift;
  if (recipe == "corollary") {
    if (mode == PerturbMode::duals) {
      if (base.nodes.empty())
        throw InputError("corollary dual noise needs a base whose p_1 is a sup over grid nodes (exp)");
      shift = corollary_dual_noise(*base.decomp, count, base.nodes, s.real("fraction"), ctx.seed);
    } else {
      shift = corollary_atom_noise(*base.decomp, count, s.real("fraction"), ctx.seed);
    }
  } else if (recipe == "none") {
    shift = mode == PerturbMode::atoms ? Matrix::Zero(dim, count) : Matrix::Zero(count, dim);
  } else if (recipe == "csv") {
    shift = noise_from_file(s.text("noise"), mode, dim, base.decomp->size());
  } else {
    throw InputError("recipe must be corollary, none or csv");
  }
  const long replaced = mode == PerturbMode::atoms ? shift.cols() : shift.rows();

  const PerturbationProblem problem{base.decomp, mode, shift, p0, samples_of(base.probes)};
  Reports reports(ctx, "perturb");
  json gate = reports.header();
  gate["truncation"] = {{"base", base.decomp->name()}, {"atoms", base.decomp->size()}, {"replaced", replaced}};
  gate["tolerances"] = {{"neumann", tol}, {"contraction_margin", 1e-2}, {"residual", residual_tol}};

  auto gate_json = [&](const ContractionEstimate& e) {
    return json{{"p0", e.p0},
                {"constants", numbers(e.constants)},
                {"c", number(e.c)},
                {"margin", e.margin},
                {"contraction", e.contraction},
                {"hypothesis_violation", e.hypothesis_violation},
                {"probes", e.probes},
                {"evidence", "probe-certified"}};
  };

  PerturbationOutcome outcome;
  try {
    outcome = perturb(problem, tol, max_order);
  } catch (const GateRefusal&) {
    const int top = std::max(p0, std::min(max_order, base.decomp->seminorms().max_order()));
    gate["gate"] = gate_json(contraction_estimate(perturbation_operator(problem), base.decomp->seminorms(), p0,
                                                  problem.probes, top));
    gate["gate"]["passed"] = false;
    reports.write_json("gate.json", gate);
    throw;
  }
  const Real closed_form = std::pow(outcome.gate.c, outcome.depth + 1) / (1.0 - outcome.gate.c);
  gate["gate"] = gate_json(outcome.gate);
  gate["gate"]["passed"] = true;
  gate["neumann"] = {{"depth", outcome.depth},
                     {"residual_bound", number(outcome.residual_bound)},
                     {"closed_form_bound", number(closed_form)},
                     {"bound_consistent", std::abs(closed_form - outcome.residual_bound) <= 1e-12},
                     {"within_tol", outcome.residual_bound <= tol}};
  gate["summability_proxy"] = number(outcome.summability_proxy);

  const auto& family = base.decomp->seminorms();
  const int top = std::min(3, family.max_order());
  json residual = reports.header();
  residual["truncation"] = gate["truncation"];
  residual["tolerances"] = gate["tolerances"];
  json per_probe = json::object();
  bool transfer = true;
  Real p1_q1 = 0.0;
  for (const auto& probe : base.probes) {
    const auto before = reproduction_residuals(*base.decomp, probe.samples, top, base.decomp->truncation());
    const auto after = reproduction_residuals(*outcome.decomposition, probe.samples, top, base.decomp->truncation());
    const Real scale = family.evaluate(probe.samples, p0);
    transfer = transfer && after[std::size_t(p0)] <= before[std::size_t(p0)] + 2.0 * outcome.residual_bound * scale;
    per_probe[probe.name] = {{"base", numbers(before)}, {"perturbed", numbers(after)}, {"scale", number(scale)}};
    if (probe.name == "p1")
      p1_q1 = after[1];
  }
  residual["orders"] = orders_upto(top);
  residual["probes"] = per_probe;
  json verdicts = {{"gate_passed", true}, {"transfer_within_bound", transfer}};
  if (per_probe.contains("p1"))
    verdicts["p1_q1_within_tolerance"] = p1_q1 <= residual_tol;
  residual["verdicts"] = verdicts;

  std::vector<GapRow> rows;
  const long checked = std::min<long>(replaced, family.max_order() + 1);
  if (checked > 0) {
    const auto dictionary = normalized_dictionary(*base.decomp, 0, s.integer("dictionary"), ctx.seed);
    rows = corollary_gap_check(*base.decomp, *outcome.decomposition, checked, dictionary);
  }
  bool all_pass = true;
  for (const auto& r : rows)
    all_pass = all_pass && r.pass;
  gate["corollary"] = {{"rows", rows.size()}, {"dictionary", s.integer("dictionary")}, {"all_pass", all_pass}};

  reports.write_json("gate.json", gate);
  reports.write("thresholds.csv", [&](std::ostream& out) {
    out << "j,j0,j1,pj,p1,threshold,gap,pass\n";
    for (const auto& r : rows)
      out << r.j << ',' << r.index[0] << ',' << r.index[1] << ',' << format_real(r.pj) << ','
          << format_real(r.p1) << ',' << format_real(r.threshold) << ',' << format_real(r.gap) << ','
          << (r.pass ? 1 : 0) << '\n';
  });
  reports.write_json("residual.json", residual);
  reports.summary("C_p0 " + format_real(outcome.gate.c) + ", depth " + std::to_string(outcome.depth));
  return ok;
}

// diagnose ---------------------------------------------------------------------

struct Diagnosed {
  std::shared_ptr<const AtomicDecomposition> decomp;
  std::vector<NamedProbe> probes;
};

Diagnosed make_diagnosed(const Settings& s, std::uint64_t seed) {
  const std::string kind = s.text("decomposition");
  const std::string N = s.text("N");
  if (kind == "exp") {
    ExpConfig cfg;
    cfg.J = int(s.integer("J"));
    if (N != "auto")
      cfg.N = s.integer("N");
    auto d = std::make_shared<const ExpDecomposition>(cfg);
    return {d, exp_probe_set(*d->grid(), seed)};
  }
  if (kind == "gabor") {
    const long L = s.integer("L");
    GaborSystem sys(L, s.integer("a"), s.integer("b"), gaussian_window(L));
    auto probes = gabor_probe_set(sys, seed);
    return {std::make_shared<const GaborDecomposition>(std::move(sys)), std::move(probes)};
  }
  if (kind == "disc") {
    const int order = N == "auto" ? 32 : int(s.integer("N"));
    auto d = std::make_shared<const DiscDecomposition>(build_partition(int(s.integer("K"))), order);
    return {d, disc_probe_set(order, seed)};
  }
  throw InputError("decomposition must be exp, gabor or disc, got '" + kind + "'");
}

int run_diagnose(const Context& ctx) {
  const Settings& s = ctx.settings;
  Diagnosed dg = make_diagnosed(s, ctx.seed);
  const AtomicDecomposition& d = *dg.decomp;
  if (s.text("probes") != "standard")
    dg.probes = read_probe_file(s.text("probes"), d.dimension());
  const auto ngrid = resolve_ngrid(d, s.integers("ngrid"));
  const auto orders = s.integers("orders");
  const Real gain = s.real("gain");

  const ProbeSet set = make_probe_set(d, samples_of(dg.probes), default_functionals(d));
  const ShrinkingReport shrink = shrinking_curve(d, set, ngrid);
  const auto bc = boundedly_complete_probe(d, analyze(d, dg.probes.front().samples), ngrid, orders);

  Reports reports(ctx, "diagnose");
  json report = reports.header();
  report["truncation"] = {{"decomposition", d.name()}, {"atoms", d.size()}, {"J", d.truncation()}, {"ngrid", ngrid}};
  report["tolerances"] = {{"shrinking_factor", 10.0}, {"gain", gain}};
  report["probe_set"] = {{"elements", set.elements.size()},
                         {"functionals", set.functionals.size()},
                         {"bound_order", set.bound_order},
                         {"bound", number(set.bound)},
                         {"certified", certified(d, set)}};
  report["shrinking"] = {{"consistent_with_shrinking", shrink.consistent},
                         {"min_decrease", number(shrink.min_decrease)},
                         {"decrease_at_least_gain", shrink.min_decrease >= gain}};

  auto series_json = [](const BoundedCompletenessReport& r) {
    json out = json::array();
    for (const auto& ser : r.series)
      out.push_back({{"order", ser.order}, {"increments", numbers(ser.increments)}, {"consistent", ser.consistent}});
    return out;
  };
  report["bounded_completeness"] = {{"source", dg.probes.front().name},
                                    {"series", series_json(bc)},
                                    {"consistent_with_bounded_completeness", bc.consistent}};

  TidyTable increments;
  for (const auto& ser : bc.series)
    for (std::size_t i = 0; i < ser.increments.size(); ++i)
      increments.add("q" + std::to_string(ser.order), ngrid[i + 1], ser.increments[i]);

  if (dynamic_cast<const ExpDecomposition*>(&d)) {
    Vector h = Vector::Zero(d.size());
    for (long k = 0; k < d.size(); ++k)
      if (const int m = d.indices().magnitude(k); m > 0)
        h(k) = 1.0 / Real(m);
    const auto harmonic = boundedly_complete_probe(d, CoefficientSeq(d.index_ptr(), h), ngrid, orders);
    report["harmonic"] = {{"series", series_json(harmonic)},
                          {"consistent_with_bounded_completeness", harmonic.consistent}};
    for (const auto& ser : harmonic.series)
      for (std::size_t i = 0; i < ser.increments.size(); ++i)
        increments.add("harmonic-q" + std::to_string(ser.order), ngrid[i + 1], ser.increments[i]);
  } else {
    report["harmonic"] = nullptr;
  }

  TidyTable curves;
  for (const auto& c : shrink.curves)
    for (std::size_t i = 0; i < ngrid.size(); ++i)
      curves.add(c.id, ngrid[i], c.values[i]);
  reports.write("curves.csv", [&](std::ostream& out) { emit_plotdata(out, curves); });
  if (!increments.empty())
    reports.write("increments.csv", [&](std::ostream& out) { emit_plotdata(out, increments); });
  reports.write_json("verdict.json", report);
  reports.summary("min decrease " + format_real(shrink.min_decrease) + ", shrinking " +
                  (shrink.consistent ? "consistent" : "not consistent"));
  return ok;
}

} // namespace

const std::vector<Command>& commands() {
  static const std::vector<Command> table = {
      {"expdecomp",
       "Fourier-series decomposition of a smooth function on [-M, M]^dim",
       {{"probe", "p1", "Builtin probe: p1, exp-cos, lorentz, gauss-x, trig-0..5 (2-D: p1, exp-cos, lorentz, wave)"},
        {"M", "1", "Half width of K"},
        {"dim", "1", "1 or 2"},
        {"N", "1024", "Grid nodes per axis on [-2M, 2M)"},
        {"J", "64", "Truncation |j| <= J"},
        {"rho", "0.1", "Cutoff plateau margin"},
        {"backend", "caller-global", "caller-global or reflection"},
        {"reflection-order", "8", "Derivatives matched by the reflection backend"},
        {"remove", "none", "Atom index to remove (j or j0,j1)"},
        {"residual-order", "3", "Report q_0..q_n residuals"},
        {"decay-order", "8", "Report sup |a_j||j|^m for m <= this"},
        {"tol", "1e-6", "Residual tolerance for the verdict"}},
       run_expdecomp},
      {"gabor",
       "Gabor frame on Z_L: dual window, reconstruction, summability certificate",
       {{"L", "64", "Signal length (power of two)"},
        {"a", "4", "Time step"},
        {"b", "4", "Frequency step"},
        {"window", "gaussian", "gaussian, impulse, or a CSV file of name,t,re,im rows"},
        {"probe", "window", "window, shift-a, mod-b, shift-mod, off-lattice, combo-0..2, random"},
        {"n", "2", "Seminorm order of the certificate (<= 4)"},
        {"tol", "1e-8", "Reconstruction tolerance"}},
       run_gabor},
      {"disc",
       "Sampled Bergman-kernel decomposition on the unit disc",
       {{"K", "6", "Number of dyadic annuli"},
        {"N", "32", "Taylor order"},
        {"sectors", "auto", "Constant sector count per annulus, or auto"},
        {"multiplier", "8", "Sectors of annulus k: max(min-sectors, multiplier 2^k)"},
        {"min-sectors", "8", "Lower bound on sectors per annulus"},
        {"rotation", "0", "Sector offset as a fraction of the sector width"},
        {"probe", "p3", "p3, inv-square, exp-half, poly-0..3"},
        {"boundary-exponent", "10", "Evaluation radii reach 1 - 2^-e"},
        {"angles", "128", "Evaluation angles per radius"},
        {"condition-gate", "1e8", "Refuse when the condition estimate of S exceeds this"},
        {"residual-order", "3", "Report ||.||_{v_n} residuals for n <= this"},
        {"tol", "1e-6", "Residual tolerance for the verdict"}},
       run_disc},
      {"perturb",
       "Perturb atoms or duals of a base decomposition and invert by a Neumann series",
       {{"base", "exp", "exp or gabor"},
        {"mode", "duals", "atoms or duals"},
        {"recipe", "corollary", "corollary, none, or csv"},
        {"noise", "", "CSV of position,coordinate,re,im rows for recipe csv"},
        {"count", "16", "Positions perturbed by the corollary recipe"},
        {"fraction", "0.5", "Noise size as a fraction of the corollary threshold"},
        {"tol", "1e-8", "Neumann truncation tolerance"},
        {"p0", "0", "Seminorm order of the contraction gate"},
        {"max-order", "3", "Highest order in the constant table"},
        {"dictionary", "512", "Normalized dictionary size for the dual-norm gaps"},
        {"residual-tol", "1e-4", "Tolerance on the p1 q_1 residual"},
        {"N", "1024", "exp: grid nodes"},
        {"J", "64", "exp: truncation"},
        {"L", "64", "gabor: signal length"},
        {"a", "4", "gabor: time step"},
        {"b", "4", "gabor: frequency step"}},
       run_perturb},
      {"diagnose",
       "Tail-operator shrinking curves and bounded-completeness increments",
       {{"decomposition", "exp", "exp, gabor or disc"},
        {"probes", "standard", "standard, or a CSV file of name,coordinate,re,im rows"},
        {"ngrid", "", "Comma-separated n values (default per decomposition)"},
        {"orders", "1,2", "Seminorm orders for the increments"},
        {"gain", "1e3", "Required first/last decrease of every curve"},
        {"J", "128", "exp: truncation"},
        {"N", "auto", "exp: grid nodes (1024); disc: Taylor order (32)"},
        {"L", "64", "gabor: signal length"},
        {"a", "4", "gabor: time step"},
        {"b", "4", "gabor: frequency step"},
        {"K", "13", "disc: number of annuli"}},
       run_diagnose},
  };
  return table;
}

} // namespace atomdec::cli
