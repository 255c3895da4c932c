#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

namespace fbnet::quad {

struct Result {
  double value = 0.0;
  double error_bound = 0.0;  // estimated absolute error
  bool converged = false;
  int intervals = 0;
};

namespace detail {

// Gauss 7 / Kronrod 15 node-weight table on [-1, 1].
// Columns: abscissa, Gauss weight (0 for Kronrod-only nodes), Kronrod weight.
inline constexpr double kG7K15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

template <class F>
void g7k15(F&& f, double a, double b, double& value, double& error) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double y0 = f(mid);
  double g7 = kG7K15[0][1] * y0;
  double k15 = kG7K15[0][2] * y0;
  for (int i = 1; i < 8; ++i) {
    const double dx = half * kG7K15[i][0];
    const double yi = f(mid + dx) + f(mid - dx);
    g7 += kG7K15[i][1] * yi;
    k15 += kG7K15[i][2] * yi;
  }
  g7 *= half;
  k15 *= half;

  value = k15;
  // standard QUADPACK-style inflation of the raw G-K difference
  const double diff = std::fabs(g7 - k15);
  error = diff * std::sqrt(diff) * 200.0;
  if (!(error < std::fabs(k15)) || !std::isfinite(error)) error = std::max(error, diff);
}

struct Interval {
  double a, b, value, error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration over the union of segments
// [nodes[0], nodes[1]], [nodes[1], nodes[2]], ... Subdivides whichever
// interval currently carries the largest error estimate until the total
// estimated error drops below max(abs_tol, rel_tol * |value|) or the
// interval budget runs out.
template <class F>
Result integrate_segments(F&& f, std::span<const double> nodes, double abs_tol,
                          double rel_tol = 0.0, int max_intervals = 4000) {
  Result res;
  if (nodes.size() < 2) return res;

  std::priority_queue<detail::Interval> heap;
  double total = 0.0, total_err = 0.0;
  int count = 0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (!(nodes[i] < nodes[i + 1])) continue;
    detail::Interval iv{nodes[i], nodes[i + 1], 0.0, 0.0};
    detail::g7k15(f, iv.a, iv.b, iv.value, iv.error);
    total += iv.value;
    total_err += iv.error;
    heap.push(iv);
    ++count;
  }

  auto tol = [&] { return std::max(abs_tol, rel_tol * std::fabs(total)); };
  while (!heap.empty() && total_err > tol() && count < max_intervals) {
    detail::Interval worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      // interval no longer splittable in double precision; keep as is
      total_err -= worst.error;
      continue;
    }
    detail::Interval left{worst.a, mid, 0.0, 0.0};
    detail::Interval right{mid, worst.b, 0.0, 0.0};
    detail::g7k15(f, left.a, left.b, left.value, left.error);
    detail::g7k15(f, right.a, right.b, right.value, right.error);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }

  res.value = total;
  res.error_bound = total_err;
  res.converged = total_err <= tol();
  res.intervals = count;
  return res;
}

template <class F>
Result integrate(F&& f, double a, double b, double abs_tol, double rel_tol = 0.0,
                 int max_intervals = 4000) {
  const double nodes[2] = {a, b};
  return integrate_segments(f, nodes, abs_tol, rel_tol, max_intervals);
}

// Integral over [a, inf) via the rational map x = a + t/(1-t), t in [0,1).
template <class F>
Result integrate_to_infinity(F&& f, double a, double abs_tol, double rel_tol = 0.0,
                             int max_intervals = 4000) {
  auto mapped = [&f, a](double t) {
    const double om = 1.0 - t;
    const double x = a + t / om;
    if (!std::isfinite(x)) return 0.0;
    const double v = f(x) / (om * om);
    return std::isfinite(v) ? v : 0.0;
  };
  return integrate(mapped, 0.0, 1.0, abs_tol, rel_tol, max_intervals);
}

}  // namespace fbnet::quad
