#include "mero/construct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "mero/error.hpp"
#include "mero/format.hpp"

namespace mero {

std::vector<NamedRegion> DiskConfig::regions() const {
  std::vector<NamedRegion> out;
  for (std::size_t m = 0; m < A.size(); ++m) {
    out.push_back({"A_" + std::to_string(m + 1), RegionKind::A, static_cast<int>(m + 1), A[m]});
  }
  for (std::size_t m = 0; m < B.size(); ++m) {
    out.push_back({"B_" + std::to_string(m + 1), RegionKind::B, static_cast<int>(m + 1), B[m]});
  }
  out.push_back({"B_+", RegionKind::BPlus, 0, B_plus});
  out.push_back({"B_-", RegionKind::BMinus, 0, B_minus});
  out.push_back({"D", RegionKind::UnitDisk, 0, unit_disk});
  return out;
}

DiskConfig build_configuration(double R, std::vector<double> k) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("configuration radius R must be positive");
  if (k.size() < 2) throw DomainError("configuration needs at least two centers k_m");
  for (std::size_t m = 0; m < k.size(); ++m) {
    if (!std::isfinite(k[m])) throw ConstructionError("k_" + std::to_string(m + 1) + " is not finite", m + 1);
    if (!(k[m] > 2.5)) {
      throw ConstructionError("constraint k_m > 5/2 fails at m = " + std::to_string(m + 1) + " (k = " +
                                  format_double(k[m]) + ")",
                              m + 1);
    }
    if (m + 1 < k.size() && !(k[m + 1] > k[m] + 3.0 * R)) {
      throw ConstructionError("constraint k_{m+1} > k_m + 3R fails at m = " + std::to_string(m + 1) + " (" +
                                  format_double(k[m + 1]) + " <= " + format_double(k[m] + 3.0 * R) + ")",
                              m + 1);
    }
  }

  DiskConfig config;
  config.R = R;
  config.k = std::move(k);
  for (std::size_t m = 0; m < config.k.size(); ++m) {
    config.A.emplace_back(config.k[m], R);
    if (m + 1 < config.k.size()) config.B.emplace_back((config.k[m] + config.k[m + 1]) / 2.0, R / 4.0);
  }

  const std::vector<NamedRegion> regions = config.regions();
  for (std::size_t i = 0; i < regions.size(); ++i) {
    for (std::size_t j = i + 1; j < regions.size(); ++j) {
      if (!closures_disjoint(regions[i].disk, regions[j].disk)) {
        throw ConstructionError("regions " + regions[i].name + " and " + regions[j].name + " overlap", i);
      }
    }
  }

  config.eps = derive_epsilons(config);
  return config;
}

std::vector<double> derive_epsilons(double R, std::span<const double> k) {
  std::vector<double> eps;
  for (std::size_t m = 0; m + 1 < k.size(); ++m) {
    const double kn = k[m + 1];
    const DiskRegion inverse = disk_inversion(DiskRegion(kn, R));
    const double gap1 = inverse.radius - std::abs(1.0 / kn - inverse.center);
    const double gap2 = 1.0 / kn - 1.0 / (kn + R / 4.0);
    eps.push_back(0.5 * std::min(gap1, gap2));
  }
  return eps;
}

std::vector<double> derive_epsilons(const DiskConfig& config) { return derive_epsilons(config.R, config.k); }

bool epsilon_containments_hold(double R, std::span<const double> k, std::span<const double> eps, double tol) {
  if (eps.size() + 1 != k.size()) return false;
  for (std::size_t m = 0; m < eps.size(); ++m) {
    if (!(eps[m] > 0.0)) return false;
    const double kn = k[m + 1];
    const DiskRegion small(1.0 / kn, eps[m]);
    const DiskRegion inverse_a = disk_inversion(DiskRegion(kn, R));
    if (std::abs(small.center - inverse_a.center) + small.radius > inverse_a.radius + tol) return false;
    const DiskRegion back = disk_inversion(small);
    if (std::abs(back.center - kn) + back.radius > R / 4.0 + tol) return false;
  }
  return true;
}

Complex region_target(const DiskConfig& config, const NamedRegion& region, Complex z) {
  switch (region.kind) {
    case RegionKind::A: {
      const auto m = static_cast<std::size_t>(region.index);
      if (m >= config.k.size()) throw DomainError(region.name + " carries no target");
      return 1.0 / config.k[m] - 1.0 / z;
    }
    case RegionKind::B:
    case RegionKind::BPlus:
      return 2.0 - 1.0 / z;
    case RegionKind::UnitDisk:
      return 0.0;
    case RegionKind::BMinus:
      return z + 5.0 - 1.0 / z;
  }
  return 0.0;
}

std::optional<double> region_bound(const DiskConfig& config, const NamedRegion& region) {
  switch (region.kind) {
    case RegionKind::A: {
      const auto m = static_cast<std::size_t>(region.index);
      if (m > config.eps.size()) return std::nullopt;
      return config.eps[m - 1];
    }
    case RegionKind::B:
    case RegionKind::BPlus:
      return 0.2;
    case RegionKind::UnitDisk:
      return config.R / 4.0;
    case RegionKind::BMinus:
      return 0.5;
  }
  return std::nullopt;
}

std::optional<Complex> target_value(const DiskConfig& config, Complex z) {
  for (const NamedRegion& region : config.regions()) {
    if (!region.disk.contains(z)) continue;
    if (!region_bound(config, region)) return std::nullopt;
    return region_target(config, region, z);
  }
  return std::nullopt;
}

const InequalityRow* InequalityReport::find(const std::string& name) const {
  for (const InequalityRow& row : rows) {
    if (row.name == name) return &row;
  }
  return nullptr;
}

const InclusionRow* InclusionReport::find(const std::string& name) const {
  for (const InclusionRow& row : rows) {
    if (row.name == name) return &row;
  }
  return nullptr;
}

InequalityReport verify_inequalities(const DiskConfig& config, const EntireApprox& approx, int density) {
  InequalityReport report;
  for (const NamedRegion& region : config.regions()) {
    InequalityRow row;
    row.name = region.name;
    const std::optional<double> bound = region_bound(config, region);
    if (!bound) {
      row.constrained = false;
      report.rows.push_back(row);
      continue;
    }
    row.bound = *bound;
    const std::vector<Complex> zs = disk_samples(region.disk, density);
    const std::vector<Complex> gs = approx.evaluate(zs);
    for (std::size_t i = 0; i < zs.size(); ++i) {
      const double lhs = std::abs(gs[i] - region_target(config, region, zs[i]));
      row.max_lhs = std::max(row.max_lhs, std::isnan(lhs) ? std::numeric_limits<double>::infinity() : lhs);
    }
    row.passed = row.max_lhs < row.bound;
    report.passed = report.passed && row.passed;
    report.rows.push_back(row);
  }
  return report;
}

namespace {

std::vector<Complex> apply_f(const EntireApprox& approx, std::span<const Complex> zs) {
  std::vector<Complex> out = approx.evaluate(zs);
  for (std::size_t i = 0; i < zs.size(); ++i) out[i] += 1.0 / zs[i];
  return out;
}

InclusionRow inclusion_row(std::string name, bool prerequisites, std::span<const Complex> images,
                           const DiskRegion& target) {
  InclusionRow row;
  row.name = std::move(name);
  row.prerequisites = prerequisites;
  row.samples = images.size();
  row.all_inside = true;
  row.worst_margin = std::numeric_limits<double>::infinity();
  for (Complex w : images) {
    const double margin = std::isfinite(std::abs(w)) ? target.margin(w) : -std::numeric_limits<double>::infinity();
    row.worst_margin = std::min(row.worst_margin, margin);
    if (!target.contains(w)) row.all_inside = false;
  }
  row.established = row.prerequisites && row.all_inside;
  return row;
}

}  // namespace

InclusionReport verify_inclusions(const DiskConfig& config, const EntireApprox& approx, int density) {
  if (density < 256) throw DomainError("inclusion checks need density >= 256");
  const InequalityReport ineq = verify_inequalities(config, approx, 64);
  auto ok = [&ineq](const std::string& name) {
    const InequalityRow* row = ineq.find(name);
    return row != nullptr && row->passed;
  };

  InclusionReport report;
  const std::size_t M = config.depth();
  for (std::size_t m = 1; m < M; ++m) {
    const std::string a = "A_" + std::to_string(m);
    const std::string next = std::to_string(m + 1);
    const std::vector<Complex> zs = disk_samples(config.A[m - 1], density);
    const std::vector<Complex> once = apply_f(approx, zs);
    report.rows.push_back(
        inclusion_row("f(" + a + ") in 1/A_" + next, ok(a), once, disk_inversion(config.A[m])));
    const std::vector<Complex> twice = apply_f(approx, once);
    report.rows.push_back(inclusion_row("f^2(" + a + ") in A_" + next, ok(a) && ok("D"), twice, config.A[m]));
  }
  {
    const std::vector<Complex> zs = disk_samples(config.B_plus, density);
    report.rows.push_back(inclusion_row("f(B_+) in B_+", ok("B_+"), apply_f(approx, zs), config.B_plus));
  }
  for (std::size_t m = 1; m < M; ++m) {
    const std::string b = "B_" + std::to_string(m);
    const std::vector<Complex> zs = disk_samples(config.B[m - 1], density);
    report.rows.push_back(inclusion_row("f(" + b + ") in B_+", ok(b), apply_f(approx, zs), config.B_plus));
  }
  for (const InclusionRow& row : report.rows) report.passed = report.passed && row.established;
  return report;
}

FitSearch fit_with_escalation(const DiskConfig& config, int start_degree, int max_degree,
                              const FitOptions& options, int density) {
  if (start_degree < 0 || max_degree < start_degree) throw DomainError("invalid degree range");
  FitSearch search;
  double best_ratio = std::numeric_limits<double>::infinity();
  bool have_best = false;
  for (int degree = start_degree;; degree = std::max(1, degree * 2)) {
    EntireApprox approx = fit_entire(config, degree, options);
    InequalityReport report = verify_inequalities(config, approx, density);
    double worst = 0.0;
    for (const InequalityRow& row : report.rows) {
      if (row.constrained) worst = std::max(worst, row.max_lhs / row.bound);
    }
    const bool passed = report.passed;
    search.attempts.push_back({degree, std::move(report)});
    if (passed || !have_best || worst < best_ratio) {
      best_ratio = worst;
      search.best = std::move(approx);
      have_best = true;
    }
    if (passed) {
      search.passed = true;
      break;
    }
    if (degree >= max_degree || std::max(1, degree * 2) > max_degree) break;
  }
  return search;
}

std::string region_label(const DiskConfig& config, Complex z) {
  for (std::size_t m = 0; m < config.A.size(); ++m) {
    if (config.A[m].contains(z)) return "A_" + std::to_string(m + 1);
  }
  for (std::size_t m = 0; m < config.A.size(); ++m) {
    if (disk_inversion(config.A[m]).contains(z)) return "1/A_" + std::to_string(m + 1);
  }
  for (std::size_t m = 0; m < config.B.size(); ++m) {
    if (config.B[m].contains(z)) return "B_" + std::to_string(m + 1);
  }
  if (config.B_plus.contains(z)) return "B_+";
  if (config.B_minus.contains(z)) return "B_-";
  if (config.unit_disk.contains(z)) return "D";
  return {};
}

PingPongDemo ping_pong_demo(const DiskConfig& config, const EntireApprox& approx, int steps) {
  if (steps < 1) throw DomainError("demo needs at least one step");
  const std::vector<Complex> pole{Complex{}};
  const double bound = std::max(config.k.back() + config.R, 10.0);
  auto f = [&approx](Complex z) { return SpherePoint::guarded(approx(z) + 1.0 / z); };

  PingPongDemo demo;
  demo.orbit = iterate_with(f, pole, Complex(config.k.front(), 0.0), steps, kDefaultPoleEps, bound);

  const std::size_t M = config.depth();
  for (std::size_t s = 0; s < demo.orbit.points.size(); ++s) {
    const bool even = s % 2 == 0;
    const std::size_t m = even ? s / 2 + 1 : (s + 1) / 2 + 1;
    const std::string expected = (even ? "A_" : "1/A_") + std::to_string(m);
    const SpherePoint& p = demo.orbit.points[s];
    if (m > M) {
      throw ConstructionError("pattern break at step " + std::to_string(s) + ": " + expected +
                                  " lies beyond the truncation depth " + std::to_string(M),
                              s);
    }
    const std::string label = p.is_finite() ? region_label(config, p.value()) : std::string("infinity");
    demo.orbit.annotations[s] = label;
    if (label != expected) {
      throw ConstructionError("pattern break at step " + std::to_string(s) + ": expected " + expected +
                                  ", found " + (label.empty() ? std::string("no region") : label),
                              s);
    }
  }

  double reach = 0.0;
  for (const DiskRegion& a : config.A) {
    const DiskRegion inv = disk_inversion(a);
    reach = std::max(reach, std::abs(inv.center) + inv.radius);
  }
  demo.params.delta = 2.0 * reach;
  demo.params.escape_radius = config.k[1] - config.R;
  demo.params.max_gap = 1;
  demo.params.min_alternations = 2;
  demo.verdict = detect_ping_pong(demo.orbit, pole, demo.params);
  return demo;
}

ThreadResult thread_orbit(const MeromorphicMap& map, const std::vector<DiskRegion>& regions, double tol,
                          const ThreadOptions& options) {
  if (regions.empty()) throw DomainError("threading needs at least one region");
  if (!(tol >= 0.0)) throw DomainError("threading tolerance must be nonnegative");
  if (options.seed_density < 1) throw DomainError("seed density must be positive");

  Complex target = regions.back().center;
  for (std::size_t n = regions.size() - 1; n-- > 0;) {
    const DiskRegion& region = regions[n];
    const Rect box{region.center.real() - region.radius, region.center.real() + region.radius,
                   region.center.imag() - region.radius, region.center.imag() + region.radius};
    std::vector<Complex> seeds{region.center};
    const std::vector<Complex> lattice = cell_centers(box, options.seed_density, options.seed_density);
    seeds.insert(seeds.end(), lattice.begin(), lattice.end());

    std::optional<Complex> chosen;
    double chosen_distance = std::numeric_limits<double>::infinity();
    for (Complex seed : seeds) {
      const std::optional<Complex> root = newton_root(map, target, seed, options.newton);
      if (!root) continue;
      const double d = std::abs(*root - region.center);
      if (d <= region.radius && d < chosen_distance) {
        chosen = root;
        chosen_distance = d;
      }
    }
    if (!chosen) {
      throw ConstructionError("threading failure at step " + std::to_string(n + 1) + ": no preimage of " +
                                  format_point(SpherePoint::finite(target)) + " found in region " +
                                  std::to_string(n) + " (center " +
                                  format_point(SpherePoint::finite(region.center)) + ", radius " +
                                  format_double(region.radius) + ")",
                              n + 1);
    }
    target = *chosen;
  }

  ThreadResult result;
  result.z0 = target;
  SpherePoint p = SpherePoint::finite(target);
  for (std::size_t n = 0; n < regions.size(); ++n) {
    if (n > 0) p = p.is_finite() ? map(p.value()) : SpherePoint::infinity();
    const double d = p.is_finite() ? std::abs(p.value() - regions[n].center) : std::numeric_limits<double>::infinity();
    result.orbit.push_back(p);
    result.distances.push_back(d);
    if (!(d <= regions[n].radius + tol)) {
      throw ConstructionError("threading failure at step " + std::to_string(n) +
                                  ": forward orbit misses region by " + format_double(d - regions[n].radius),
                              n);
    }
  }
  return result;
}

void write_config_report(std::ostream& os, const DiskConfig& config) {
  os << "R = " << format_double(config.R) << '\n';
  os << "Mmax = " << config.depth() << '\n';
  for (const NamedRegion& r : config.regions()) {
    os << r.name << " = B(" << format_point(SpherePoint::finite(r.disk.center)) << "; "
       << format_double(r.disk.radius) << (r.disk.closed ? ") closed" : ") open") << '\n';
  }
  for (std::size_t m = 0; m < config.eps.size(); ++m) {
    os << "eps_" << m + 1 << " = " << format_double(config.eps[m]) << '\n';
  }
}

void write_inequality_report(std::ostream& os, const InequalityReport& report) {
  os << "inequalities = " << (report.passed ? "pass" : "fail") << '\n';
  for (const InequalityRow& row : report.rows) {
    if (!row.constrained) {
      os << row.name << ": unconstrained\n";
      continue;
    }
    os << row.name << ": max = " << format_double(row.max_lhs) << " bound = " << format_double(row.bound)
       << (row.passed ? " pass" : " fail") << '\n';
  }
}

void write_inclusion_report(std::ostream& os, const InclusionReport& report) {
  os << "inclusions = " << (report.passed ? "pass" : "fail") << '\n';
  for (const InclusionRow& row : report.rows) {
    os << row.name << ": " << (row.established ? "established" : "not-established")
       << " prerequisites = " << (row.prerequisites ? "pass" : "fail")
       << " samples_inside = " << (row.all_inside ? "all" : "not all")
       << " worst_margin = " << format_double(row.worst_margin) << '\n';
  }
}

void write_coefficients_csv(std::ostream& os, const EntireApprox& approx) {
  os << "index,re,im\n";
  for (std::size_t i = 0; i < approx.coefficients.size(); ++i) {
    os << i << ',' << format_double(approx.coefficients[i].real()) << ','
       << format_double(approx.coefficients[i].imag()) << '\n';
  }
}

void write_hessenberg_csv(std::ostream& os, const EntireApprox& approx) {
  os << "row,col,re,im\n";
  const auto rows = static_cast<std::size_t>(approx.degree) + 1;
  for (std::size_t col = 0; col < static_cast<std::size_t>(approx.degree); ++col) {
    for (std::size_t row = 0; row <= col + 1 && row < rows; ++row) {
      const Complex h = approx.hessenberg[col * rows + row];
      os << row << ',' << col << ',' << format_double(h.real()) << ',' << format_double(h.imag()) << '\n';
    }
  }
}

}  // namespace mero
