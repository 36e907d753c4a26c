#include <algorithm>
#include <array>
#include <map>
#include <ostream>

#include "context.hpp"
#include "mero/cli/run.hpp"
#include "mero/commute.hpp"
#include "mero/construct.hpp"
#include "mero/error.hpp"
#include "mero/format.hpp"
#include "mero/julia.hpp"
#include "mero/ladder.hpp"
#include "mero/orbit.hpp"

namespace mero::cli {

namespace {

std::string fmt(double x) { return format_double(x); }
std::string fmt(Complex z) { return format_point(SpherePoint::finite(z)); }

PingPongParams ping_pong_params(Params& p) {
  PingPongParams pp;
  pp.delta = p.real("pp_delta", pp.delta);
  pp.escape_radius = p.real("pp_escape_radius", pp.escape_radius);
  pp.max_gap = p.integer("pp_max_gap", pp.max_gap);
  pp.min_alternations = p.integer("pp_min_alternations", pp.min_alternations);
  return pp;
}

void write_verdict(std::ostream& os, const PingPongVerdict& v) {
  os << "ping_pong = " << (v.detected ? "detected" : "not-detected") << '\n';
  if (!v.detected) return;
  os << "ping_pong_pole = " << fmt(v.pole) << '\n';
  os << "ping_pong_gap_bound = " << v.gap_bound << '\n';
  os << "ping_pong_m =";
  for (std::size_t i : v.m_indices) os << ' ' << i;
  os << "\nping_pong_n =";
  for (std::size_t i : v.n_indices) os << ' ' << i;
  os << '\n';
}

int cmd_classify(Params& p, Context& ctx) {
  const MeromorphicMap map = p.map("map");
  const Complex z0 = p.complex("z0");
  const int max_steps = p.integer("max_steps", 100);
  const double pole_eps = p.real("pole_eps", kDefaultPoleEps);
  const double escape = p.real("escape_radius", kDefaultEscapeRadius);
  const int window = p.integer("window", kDefaultClassifyWindow);
  const PingPongParams pp = ping_pong_params(p);
  ctx.begin("classify", p);

  const OrbitRecord orbit = iterate(map, z0, max_steps, pole_eps, escape);
  const OrbitClass label = classify(orbit, window);
  const PingPongVerdict verdict = detect_ping_pong(orbit, pole_locations(map), pp);
  {
    std::ofstream csv = ctx.create("orbit.csv");
    write_orbit_csv(csv, orbit);
  }
  std::ofstream report = ctx.create("report.txt");
  report << "status = pass\n";
  report << "map = " << map.label() << '\n';
  report << "z0 = " << fmt(z0) << '\n';
  report << "points = " << orbit.points.size() << '\n';
  report << "terminal_event = "
         << (orbit.terminal_event == TerminalEvent::HitInfinity ? "hit_infinity_at " + std::to_string(orbit.event_step)
                                                                 : std::string("completed"))
         << '\n';
  report << "class = " << to_string(label) << '\n';
  write_verdict(report, verdict);
  ctx.log() << to_string(label) << '\n';
  return kExitPass;
}

int cmd_ladder(Params& p, Context& ctx) {
  const MeromorphicMap map = p.map("map");
  const double r1 = p.real("r1");
  const double c = p.real("c", 1.0);
  const int n = p.integer("n", 3);
  const int samples = p.integer("circle_samples", kDefaultCircleSamples);
  ctx.begin("ladder", p);

  const RadiusLadder ladder = radius_ladder_outer(map, r1, c, n, samples);
  std::ofstream report = ctx.create("report.txt");
  report << "status = pass\n";
  write_ladder_report(report, ladder);
  ctx.log() << "ladder with " << ladder.radii.size() << " radii\n";
  return kExitPass;
}

int cmd_fast_escape(Params& p, Context& ctx) {
  const MeromorphicMap map = p.map("map");
  const Complex z = p.complex("z");
  const double r1 = p.real("r1");
  const double c = p.real("c", 1.0);
  const int n = p.integer("n", 3);
  const int max_lag = p.integer("max_lag", 3);
  const int samples = p.integer("circle_samples", kDefaultCircleSamples);
  ctx.begin("fast-escape", p);

  const RadiusLadder ladder = radius_ladder_outer(map, r1, c, n, samples);
  const FastEscapeResult result = is_fast_escaping(map, z, ladder, max_lag);
  std::ofstream report = ctx.create("report.txt");
  report << "status = " << (result.member ? "pass" : "negative") << '\n';
  report << "member = " << (result.member ? "true" : "false") << '\n';
  report << "lag = " << (result.member ? std::to_string(result.lag) : std::string("none")) << '\n';
  report << "tested_depth = " << result.tested_depth << '\n';
  report << "hit_pole = " << (result.hit_pole ? "true" : "false") << '\n';
  write_ladder_report(report, ladder);
  ctx.log() << (result.member ? "fast-escaping" : "not fast-escaping") << '\n';
  return result.member ? kExitPass : kExitNegative;
}

std::vector<Bit> parse_bits(Params& p, const std::string& key) {
  const Json* v = p.raw(key);
  if (v == nullptr) throw UsageError("missing required config key '" + p.name(key) + "'");
  if (!v->is_array() || v->empty()) throw UsageError("config key '" + p.name(key) + "': expected a nonempty array of \"inf\"/\"0\"");
  std::vector<Bit> bits;
  Json resolved = Json::array();
  for (const Json& b : *v) {
    const bool inf = (b.is_string() && b.get<std::string>() == "inf");
    const bool zero = (b.is_string() && b.get<std::string>() == "0") || (b.is_number_integer() && b.get<int>() == 0);
    if (!inf && !zero) throw UsageError("config key '" + p.name(key) + "': bits must be \"inf\" or \"0\"");
    bits.push_back(inf ? Bit::Infinity : Bit::Zero);
    resolved.push_back(inf ? "inf" : "0");
  }
  p.set_resolved(key, resolved);
  return bits;
}

int cmd_itinerary(Params& p, Context& ctx) {
  const MeromorphicMap map = p.map("map");
  ItinerarySpec spec;
  spec.bits = parse_bits(p, "bits");
  spec.lag = p.integer("lag", 0);
  const double r = p.real("R");
  const int samples = p.integer("circle_samples", kDefaultCircleSamples);
  const bool with_orbit = p.has("z0");
  const Complex z0 = with_orbit ? p.complex("z0") : Complex{};
  ctx.begin("itinerary", p);

  spec.validate();
  const RadiusLadder ladder = itinerary_ladder(map, spec, r, samples);
  std::ofstream report = ctx.create("report.txt");
  int code = kExitPass;
  if (with_orbit) {
    const int steps = static_cast<int>(spec.bits.size()) + spec.lag;
    const double escape = std::max(kDefaultEscapeRadius, map.max_pole_modulus() + 2.0);
    const OrbitRecord orbit = iterate(map, z0, std::max(steps, 1), kDefaultPoleEps, escape);
    const bool follows = orbit.points.size() >= spec.bits.size() + static_cast<std::size_t>(spec.lag) &&
                         follows_itinerary(orbit, ladder, spec.lag);
    report << "status = " << (follows ? "pass" : "negative") << '\n';
    report << "follows = " << (follows ? "true" : "false") << '\n';
    std::ofstream csv = ctx.create("orbit.csv");
    write_orbit_csv(csv, orbit);
    code = follows ? kExitPass : kExitNegative;
  } else {
    report << "status = pass\n";
  }
  report << "lag = " << spec.lag << '\n';
  write_ladder_report(report, ladder);
  return code;
}

GridSpec grid_spec(Params& p) {
  GridSpec g;
  g.window = p.rect("window");
  g.width = p.integer("width", 64);
  g.height = p.integer("height", 64);
  if (g.width < 1 || g.height < 1) throw UsageError("config keys 'width'/'height' must be positive");
  return g;
}

RenderParams render_params(Params& p, int default_steps, int workers) {
  RenderParams r;
  r.max_steps = p.integer("max_steps", default_steps);
  r.escape_radius = p.real("escape_radius", kDefaultEscapeRadius);
  r.pole_eps = p.real("pole_eps", kDefaultPoleEps);
  r.workers = workers;
  return r;
}

void write_counts(std::ostream& os, const RasterGrid& grid, const std::string& prefix) {
  std::array<std::size_t, 4> counts{};
  for (CellLabel c : grid.cells) ++counts[static_cast<std::size_t>(c)];
  for (CellLabel c : {CellLabel::Escaping, CellLabel::Bounded, CellLabel::NearPole, CellLabel::Undecided}) {
    os << prefix << to_string(c) << " = " << counts[static_cast<std::size_t>(c)] << '\n';
  }
}

int cmd_render(Params& p, Context& ctx) {
  const MeromorphicMap map = p.map("map");
  const GridSpec grid = grid_spec(p);
  const RenderParams params = render_params(p, 100, ctx.workers());
  ctx.begin("render", p);

  const RasterGrid raster = render(map, grid, params);
  {
    std::ofstream pgm = ctx.create_raw("raster.pgm");
    write_pgm(pgm, raster, ctx.header());
  }
  {
    std::ofstream csv = ctx.create("raster.csv");
    write_raster_csv(csv, raster);
  }
  std::ofstream report = ctx.create("report.txt");
  report << "status = pass\n";
  report << "size = " << raster.width << "x" << raster.height << '\n';
  write_counts(report, raster, "");
  return kExitPass;
}

int cmd_backward(Params& p, Context& ctx) {
  const MeromorphicMap map = p.map("map");
  const int depth = p.integer("depth", 2);
  const Rect region = p.rect("region");
  const int seeds = p.integer("seed_density", 32);
  ctx.begin("backward", p);

  const PointCloud cloud = pole_backward_orbit(map, depth, region, seeds, ctx.workers());
  {
    std::ofstream csv = ctx.create("cloud.csv");
    write_cloud_csv(csv, cloud);
  }
  std::ofstream report = ctx.create("report.txt");
  report << "status = pass\n";
  report << "depth = " << depth << '\n';
  report << "points = " << cloud.size() << '\n';
  for (int g = 1; g <= depth; ++g) {
    report << "generation_" << g << " = " << std::count(cloud.generations.begin(), cloud.generations.end(), g)
           << '\n';
  }
  return kExitPass;
}

std::vector<Complex> sample_grid(Params& p) {
  const Rect window = p.rect("sample_window", Rect{-4.0, 4.0, -4.0, 4.0});
  const int n = p.integer("sample_count", 32);
  if (n < 1) throw UsageError("config key 'sample_count' must be positive");
  return cell_centers(window, n, n);
}

int cmd_commute(Params& p, Context& ctx) {
  const MeromorphicMap f = p.map("f");
  const MeromorphicMap g = p.map("g");
  std::vector<Complex> samples = sample_grid(p);
  if (const Json* extra = p.raw("extra_samples")) {
    if (!extra->is_array()) throw UsageError("config key 'extra_samples': expected an array of points");
    Json resolved = Json::array();
    for (const Json& z : *extra) {
      const Complex c = parse_complex(z, "extra_samples");
      samples.push_back(c);
      resolved.push_back(Json::array({c.real(), c.imag()}));
    }
    p.set_resolved("extra_samples", resolved);
  } else {
    p.set_resolved("extra_samples", Json::array());
  }
  const double tol = p.real("tolerance", 1e-9);
  const double pole_eps = p.real("pole_eps", kCommutePoleEps);
  const double pole_tol = p.real("pole_tolerance", 1e-12);
  ctx.begin("commute", p);

  const CommuteReport report = check_commuting(f, g, samples, tol, pole_eps, ctx.workers());
  const bool same_poles = shared_poles(f, g, pole_tol);
  {
    std::ofstream csv = ctx.create("violations.csv");
    write_violations_csv(csv, report);
  }
  std::ofstream out = ctx.create("report.txt");
  out << "status = " << (report.passed() ? "pass" : "negative") << '\n';
  out << "shared_poles = " << (same_poles ? "true" : "false") << '\n';
  write_commute_report(out, report);
  ctx.log() << (report.passed() ? "commuting check passed" : "commuting violations found") << '\n';
  return report.passed() ? kExitPass : kExitNegative;
}

int cmd_julia_compare(Params& p, Context& ctx) {
  const MeromorphicMap f = p.map("f");
  const MeromorphicMap g = p.map("g");
  const GridSpec grid = grid_spec(p);
  const RenderParams params = render_params(p, 60, ctx.workers());
  ctx.begin("julia-compare", p);

  JuliaComparison cmp;
  try {
    cmp = julia_equality_experiment(f, g, grid, params);
  } catch (const DomainError& e) {
    std::ofstream out = ctx.create("report.txt");
    out << "status = negative\nerror = " << e.what() << '\n';
    ctx.log() << e.what() << '\n';
    return kExitNegative;
  }
  {
    std::ofstream a = ctx.create_raw("f.pgm");
    write_pgm(a, cmp.f_grid, ctx.header());
    std::ofstream b = ctx.create_raw("g.pgm");
    write_pgm(b, cmp.g_grid, ctx.header());
  }
  std::ofstream out = ctx.create("report.txt");
  out << "status = pass\n";
  out << "agreement = " << fmt(cmp.agreement) << '\n';
  out << "probe_pairs_tested = " << cmp.probe.pairs_tested << '\n';
  out << "probe_max_discrepancy = " << fmt(cmp.probe.max_discrepancy) << '\n';
  out << "probe_near_pole_excluded = " << cmp.probe.near_pole_excluded << '\n';
  write_counts(out, cmp.f_grid, "f_");
  write_counts(out, cmp.g_grid, "g_");
  return kExitPass;
}

struct ConstructSetup {
  double R;
  std::vector<double> k;
  int start_degree;
  int max_degree;
  FitOptions fit;
  int density;
  int inclusion_density;
};

ConstructSetup construct_setup(Params& p) {
  ConstructSetup s;
  s.R = p.real("R");
  s.k = p.reals("k");
  s.start_degree = p.integer("start_degree", 8);
  s.max_degree = p.integer("max_degree", 256);
  s.fit.samples_per_region = p.integer("samples_per_region", 40);
  s.fit.validation_density = p.integer("validation_density", 64);
  const std::string basis = p.text("basis", "arnoldi");
  if (basis == "arnoldi") {
    s.fit.basis = FitBasis::Arnoldi;
  } else if (basis == "monomial") {
    s.fit.basis = FitBasis::ScaledMonomial;
  } else {
    throw UsageError("config key 'basis': expected \"arnoldi\" or \"monomial\"");
  }
  s.density = p.integer("density", 64);
  s.inclusion_density = p.integer("inclusion_density", 256);
  return s;
}

void write_fit(Context& ctx, std::ostream& report, const FitSearch& search) {
  for (const FitAttempt& a : search.attempts) {
    report << "attempt degree " << a.degree << ": " << (a.report.passed ? "pass" : "fail") << '\n';
  }
  report << "fit_degree = " << search.best.degree << '\n';
  report << "fit_objective = " << fmt(search.best.objective) << '\n';
  report << "basis_scale = " << fmt(search.best.scale) << '\n';
  report << "condition_estimate = " << fmt(search.best.condition_estimate) << '\n';
  for (const RegionResidual& r : search.best.fit_report) {
    report << "validation " << r.name << ": max = " << fmt(r.max_residual) << " bound = " << fmt(r.bound) << '\n';
  }
  std::ofstream coeff = ctx.create("coefficients.csv");
  write_coefficients_csv(coeff, search.best);
  if (search.best.basis == FitBasis::Arnoldi) {
    std::ofstream h = ctx.create("hessenberg.csv");
    write_hessenberg_csv(h, search.best);
  }
}

int cmd_construct(Params& p, Context& ctx) {
  const ConstructSetup s = construct_setup(p);
  const int steps = p.integer("demo_steps", -1);
  ctx.begin("construct", p);

  const DiskConfig config = build_configuration(s.R, s.k);
  std::ofstream report = ctx.create("report.txt");
  write_config_report(report, config);
  report << "eps_containments = "
         << (epsilon_containments_hold(config.R, config.k, config.eps) ? "pass" : "fail") << '\n';

  const FitSearch search = fit_with_escalation(config, s.start_degree, s.max_degree, s.fit, s.density);
  write_fit(ctx, report, search);
  const InequalityReport ineq = verify_inequalities(config, search.best, s.density);
  write_inequality_report(report, ineq);
  if (!ineq.passed) {
    report << "status = negative\n";
    return kExitNegative;
  }
  const InclusionReport inc = verify_inclusions(config, search.best, s.inclusion_density);
  write_inclusion_report(report, inc);
  const int demo_steps = steps >= 0 ? steps : 2 * static_cast<int>(config.depth()) - 2;
  bool demo_ok = false;
  try {
    const PingPongDemo demo = ping_pong_demo(config, search.best, demo_steps);
    std::ofstream csv = ctx.create("demo_orbit.csv");
    write_orbit_csv(csv, demo.orbit);
    report << "demo_pattern = pass\n";
    write_verdict(report, demo.verdict);
    demo_ok = demo.verdict.detected;
  } catch (const ConstructionError& e) {
    report << "demo_pattern = fail (" << e.what() << ")\n";
  }
  const bool pass = inc.passed && demo_ok;
  report << "status = " << (pass ? "pass" : "negative") << '\n';
  return pass ? kExitPass : kExitNegative;
}

int cmd_ping_pong_demo(Params& p, Context& ctx) {
  const ConstructSetup s = construct_setup(p);
  const int steps = p.integer("steps", 4);
  ctx.begin("ping-pong-demo", p);

  const DiskConfig config = build_configuration(s.R, s.k);
  const FitSearch search = fit_with_escalation(config, s.start_degree, s.max_degree, s.fit, s.density);
  std::ofstream report = ctx.create("report.txt");
  write_fit(ctx, report, search);
  const PingPongDemo demo = ping_pong_demo(config, search.best, steps);
  {
    std::ofstream csv = ctx.create("demo_orbit.csv");
    write_orbit_csv(csv, demo.orbit);
  }
  report << "pattern =";
  for (const std::string& a : demo.orbit.annotations) report << ' ' << a;
  report << '\n';
  write_verdict(report, demo.verdict);
  report << "status = " << (demo.verdict.detected ? "pass" : "negative") << '\n';
  return demo.verdict.detected ? kExitPass : kExitNegative;
}

int cmd_thread(Params& p, Context& ctx) {
  const MeromorphicMap map = p.map("map");
  const std::vector<DiskRegion> regions = p.disks("regions");
  const double tol = p.real("tolerance", 0.0);
  ThreadOptions options;
  options.seed_density = p.integer("seed_density", options.seed_density);
  const PingPongParams pp = ping_pong_params(p);
  ctx.begin("thread", p);

  ThreadResult result;
  try {
    result = thread_orbit(map, regions, tol, options);
  } catch (const ConstructionError& e) {
    std::ofstream out = ctx.create("report.txt");
    out << "status = negative\nerror = " << e.what() << '\n';
    ctx.log() << e.what() << '\n';
    return kExitNegative;
  }
  const OrbitRecord orbit = OrbitRecord::from_points(result.orbit);
  {
    std::ofstream csv = ctx.create("orbit.csv");
    write_orbit_csv(csv, orbit);
  }
  std::ofstream out = ctx.create("report.txt");
  out << "status = pass\n";
  out << "z0 = " << fmt(result.z0) << '\n';
  for (std::size_t n = 0; n < result.distances.size(); ++n) {
    out << "step " << n << ": distance = " << fmt(result.distances[n]) << " radius = " << fmt(regions[n].radius)
        << '\n';
  }
  write_verdict(out, detect_ping_pong(orbit, pole_locations(map), pp));
  return kExitPass;
}

const std::map<std::string, Command>& registry() {
  static const std::map<std::string, Command> table{
      {"classify", cmd_classify},       {"ladder", cmd_ladder},
      {"fast-escape", cmd_fast_escape}, {"render", cmd_render},
      {"backward", cmd_backward},       {"commute", cmd_commute},
      {"julia-compare", cmd_julia_compare}, {"construct", cmd_construct},
      {"thread", cmd_thread},           {"itinerary", cmd_itinerary},
      {"ping-pong-demo", cmd_ping_pong_demo},
  };
  return table;
}

}  // namespace

Command find_command(const std::string& name) {
  const auto it = registry().find(name);
  return it == registry().end() ? nullptr : it->second;
}

std::vector<std::string> command_names() {
  std::vector<std::string> out;
  for (const auto& [name, cmd] : registry()) out.push_back(name);
  return out;
}

}  // namespace mero::cli
