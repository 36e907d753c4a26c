#include "mero/commute.hpp"

#include <algorithm>
#include <ostream>

#include "mero/error.hpp"
#include "mero/format.hpp"
#include "mero/parallel.hpp"

namespace mero {

namespace {

SpherePoint apply(const MeromorphicMap& map, const SpherePoint& p) {
  return p.is_finite() ? map(p.value()) : SpherePoint::infinity();
}

bool near_declared_pole(const MeromorphicMap& f, const MeromorphicMap& g, const SpherePoint& p,
                        double eps) {
  if (p.is_infinite()) return false;
  return f.pole_distance(p.value()) < eps || g.pole_distance(p.value()) < eps;
}

struct SampleOutcome {
  enum Kind { Excluded, BothUndefined, Compared } kind = Compared;
  SpherePoint fg;
  SpherePoint gf;
  double discrepancy = 0.0;
};

}  // namespace

CommuteReport check_commuting(const MeromorphicMap& f, const MeromorphicMap& g,
                              const std::vector<Complex>& samples, double tol, double pole_eps,
                              int workers) {
  if (!(tol > 0.0)) throw DomainError("commuting tolerance must be positive");
  std::vector<SampleOutcome> outcomes(samples.size());
  parallel_for(samples.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      SampleOutcome& out = outcomes[i];
      const SpherePoint z = SpherePoint::finite(samples[i]);
      const SpherePoint fz = f(samples[i]);
      const SpherePoint gz = g(samples[i]);
      if (near_declared_pole(f, g, z, pole_eps) || near_declared_pole(f, g, fz, pole_eps) ||
          near_declared_pole(f, g, gz, pole_eps)) {
        out.kind = SampleOutcome::Excluded;
        continue;
      }
      out.fg = apply(f, gz);
      out.gf = apply(g, fz);
      if (out.fg.is_infinite() && out.gf.is_infinite()) {
        out.kind = SampleOutcome::BothUndefined;
        continue;
      }
      out.discrepancy = chordal(out.fg, out.gf);
    }
  });

  CommuteReport report;
  report.tolerance = tol;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const SampleOutcome& out = outcomes[i];
    switch (out.kind) {
      case SampleOutcome::Excluded:
        ++report.near_pole_excluded;
        break;
      case SampleOutcome::BothUndefined:
        ++report.pairs_tested;
        ++report.both_undefined_count;
        break;
      case SampleOutcome::Compared:
        ++report.pairs_tested;
        report.max_discrepancy = std::max(report.max_discrepancy, out.discrepancy);
        if (out.discrepancy > tol) {
          report.violations.push_back({i, samples[i], out.fg, out.gf, out.discrepancy});
        }
        break;
    }
  }
  return report;
}

bool shared_poles(const MeromorphicMap& f, const MeromorphicMap& g, double tol) {
  auto covered = [tol](const MeromorphicMap& a, const MeromorphicMap& b) {
    return std::all_of(a.poles().begin(), a.poles().end(), [&](const Pole& p) {
      return std::any_of(b.poles().begin(), b.poles().end(),
                         [&](const Pole& q) { return std::abs(p.location - q.location) <= tol; });
    });
  };
  return covered(f, g) && covered(g, f);
}

void write_commute_report(std::ostream& os, const CommuteReport& report) {
  os << "verdict = " << (report.passed() ? "pass" : "fail") << '\n';
  os << "tolerance = " << format_double(report.tolerance) << '\n';
  os << "pairs_tested = " << report.pairs_tested << '\n';
  os << "max_discrepancy = " << format_double(report.max_discrepancy) << '\n';
  os << "both_undefined = " << report.both_undefined_count << '\n';
  os << "near_pole_excluded = " << report.near_pole_excluded << '\n';
  os << "violations = " << report.violations.size() << '\n';
  for (const CommuteViolation& v : report.violations) {
    os << "violation " << v.index << ": z = " << format_point(SpherePoint::finite(v.z))
       << " f(g(z)) = " << format_point(v.fg) << " g(f(z)) = " << format_point(v.gf)
       << " chordal = " << format_double(v.discrepancy) << '\n';
  }
}

void write_violations_csv(std::ostream& os, const CommuteReport& report) {
  os << "index,re,im,fg_re,fg_im,gf_re,gf_im,discrepancy\n";
  for (const CommuteViolation& v : report.violations) {
    os << v.index << ',' << format_point(SpherePoint::finite(v.z)) << ',' << format_point(v.fg) << ','
       << format_point(v.gf) << ',' << format_double(v.discrepancy) << '\n';
  }
}

JuliaComparison julia_equality_experiment(const MeromorphicMap& f, const MeromorphicMap& g,
                                          const GridSpec& grid, const RenderParams& params) {
  grid.validate();
  JuliaComparison out;
  const std::vector<Complex> probe = cell_centers(grid.window, kProbeGridSize, kProbeGridSize);
  out.probe = check_commuting(f, g, probe, kProbeTolerance, kCommutePoleEps, params.workers);
  if (!out.probe.passed()) {
    throw DomainError("commuting probe failed: " + std::to_string(out.probe.violations.size()) +
                      " violations, max chordal discrepancy " + format_double(out.probe.max_discrepancy));
  }
  out.f_grid = render(f, grid, params);
  out.g_grid = render(g, grid, params);
  out.agreement = raster_agreement(out.f_grid, out.g_grid);
  return out;
}

}  // namespace mero
