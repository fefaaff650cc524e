#include <algorithm>

#include "qfc/harness.hpp"

namespace qfc {

namespace {

struct Hull {
  BigInt lo, hi;
};

// Range of X^2 over an interval.
Hull square_range(const Interval& I) {
  const BigInt a = I.lo * I.lo, b = I.hi * I.hi;
  if (I.contains(0)) return {0, std::max<BigInt>(a, b)};
  return {std::min<BigInt>(a, b), std::max<BigInt>(a, b)};
}

Hull product_range(const Interval& X, const Interval& Y) {
  const BigInt c[4] = {X.lo * Y.lo, X.lo * Y.hi, X.hi * Y.lo, X.hi * Y.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

// Lifts an XY = mu shaped congruence: every integer value v of the product in
// [range.lo, range.hi] with v = mu0 (mod p) is mu0 + p z for one z.
template <typename Solve>
void lift_products(const Hull& range, const BigInt& mu0, const PrimeModulus& p, PipelineReport& report,
                   std::vector<LatticePoint>& standard_points, Solve&& solve) {
  const BigInt P = p.big();
  report.z_lo = ceil_div(range.lo - mu0, P);
  report.z_hi = floor_div(range.hi - mu0, P);
  for (BigInt z = report.z_lo; z <= report.z_hi; ++z) {
    const BigInt n = mu0 + P * z;
    const auto pts = solve(n);
    ++report.z_count;
    if (!pts.empty()) report.rows.push_back({z, n, pts.size()});
    standard_points.insert(standard_points.end(), pts.begin(), pts.end());
  }
}

}  // namespace

PipelineReport run_pipeline(const QuadraticForm& q, const BigInt& lambda, const PrimeModulus& p, const Box& box) {
  PipelineReport report{standardize(q, lambda, p, box), std::nullopt, 0, 0, {}, 0, {}, 0, false};
  const StandardInstance& inst = report.standard;
  const CountResult exact = count_exact(q, lambda, p, box, true);
  report.exact_count = exact.count;

  std::vector<LatticePoint> standard_points;  // (X, Y) of the standardized congruence
  switch (inst.kind) {
    case StandardKind::Norm: {
      report.decomposition = decompose(inst, p);
      const Decomposition& dec = *report.decomposition;
      std::optional<PellUnit> unit;
      if (dec.D >= 2) unit = fundamental_solution(dec.D);
      std::vector<std::vector<LatticePoint>> per_z;
      per_z.reserve(dec.instances.size());
      for (const auto& ne : dec.instances) {
        per_z.push_back(solve_instance(ne, SolveStrategy::Auto, unit));
        if (!per_z.back().empty()) report.rows.push_back({ne.z, ne.n, per_z.back().size()});
      }
      report.z_count = dec.instances.size();
      report.z_lo = dec.instances.front().z;
      report.z_hi = dec.instances.back().z;
      standard_points = recompose(dec.instances, per_z);
      break;
    }
    case StandardKind::Hyperbolic: {
      const BigInt mu0 = signed_rep(inst.mu, p);
      lift_products(product_range(inst.x_interval, inst.y_interval), mu0, p, report, standard_points,
                    [&](const BigInt& n) { return solve_xy_in_box(n, inst.x_interval, inst.y_interval); });
      break;
    }
    case StandardKind::Difference: {
      // X^2 - Y^2 = U V with U = X + Y, V = X - Y.
      const Interval& XI = inst.x_interval;
      const Interval& YI = inst.y_interval;
      const Hull xs = square_range(XI), ys = square_range(YI);
      const Interval UI{XI.lo + YI.lo, XI.hi + YI.hi};
      const Interval VI{XI.lo - YI.hi, XI.hi - YI.lo};
      const BigInt mu0 = signed_rep(inst.mu, p);
      lift_products({xs.lo - ys.hi, xs.hi - ys.lo}, mu0, p, report, standard_points, [&](const BigInt& n) {
        std::vector<LatticePoint> out;
        for (const auto& uv : solve_xy_in_box(n, UI, VI)) {
          const BigInt sum = uv.x + uv.y;
          if (!divides(2, sum)) continue;
          LatticePoint xy{sum / 2, (uv.x - uv.y) / 2};
          if (XI.contains(xy.x) && YI.contains(xy.y)) out.push_back(std::move(xy));
        }
        return out;
      });
      break;
    }
  }

  for (const auto& pt : standard_points) {
    const auto pre = inst.map.invert(pt.x, pt.y);
    if (!pre) continue;
    const auto& [x, y] = *pre;
    if (x >= box.x_lo() && x <= box.x_hi() && y >= box.y_lo() && y <= box.y_hi()) report.recomposed.push_back(*pre);
  }
  std::sort(report.recomposed.begin(), report.recomposed.end());
  report.match = report.recomposed == *exact.solutions;
  if (!report.match) {
    throw Error(Errc::PipelineMismatch, "pipeline found " + std::to_string(report.recomposed.size()) +
                                            " solutions, count_exact found " + std::to_string(exact.count));
  }
  return report;
}

}  // namespace qfc
