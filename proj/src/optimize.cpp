#include "qdisc/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "qdisc/qstate.hpp"

namespace qdisc::optimize {

namespace {

struct Simplex {
  std::vector<std::vector<double>> points;
  std::vector<double> values;
};

LocalResult simplex_run(const Objective& f, const std::vector<double>& x0, double step, int max_iter, double tol) {
  const std::size_t n = x0.size();
  const double nd = static_cast<double>(n);
  const double reflect = 1.0;
  const double expand = 1.0 + 2.0 / nd;
  const double contract = 0.75 - 1.0 / (2.0 * nd);
  const double shrink = 1.0 - 1.0 / nd;

  Simplex s;
  s.points.assign(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) s.points[i + 1][i] += step;
  for (const auto& p : s.points) s.values.push_back(f(p));

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n);
  std::vector<double> trial(n);
  auto point_at = [&](double coef, const std::vector<double>& worst) {
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = centroid[k] + coef * (centroid[k] - worst[k]);
    return out;
  };

  int it = 0;
  bool converged = false;
  for (; it < max_iter; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s.values[a] < s.values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];

    if (s.values[worst] - s.values[best] <= tol) {
      double extent = 0.0;
      for (const auto& p : s.points)
        for (std::size_t k = 0; k < n; ++k) extent = std::max(extent, std::abs(p[k] - s.points[best][k]));
      if (extent <= 1e-3 || s.values[worst] - s.values[best] <= 1e-14) {
        converged = true;
        break;
      }
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += s.points[i][k] / nd;
    }

    const auto xr = point_at(reflect, s.points[worst]);
    const double fr = f(xr);
    if (fr < s.values[best]) {
      const auto xe = point_at(expand, s.points[worst]);
      const double fe = f(xe);
      if (fe < fr) {
        s.points[worst] = xe;
        s.values[worst] = fe;
      } else {
        s.points[worst] = xr;
        s.values[worst] = fr;
      }
      continue;
    }
    if (fr < s.values[second]) {
      s.points[worst] = xr;
      s.values[worst] = fr;
      continue;
    }
    const bool outside = fr < s.values[worst];
    const auto xc = outside ? point_at(contract, s.points[worst]) : point_at(-contract, s.points[worst]);
    const double fc = f(xc);
    if (fc < std::min(fr, s.values[worst])) {
      s.points[worst] = xc;
      s.values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k)
        s.points[i][k] = s.points[best][k] + shrink * (s.points[i][k] - s.points[best][k]);
      s.values[i] = f(s.points[i]);
    }
  }

  const auto best = static_cast<std::size_t>(std::min_element(s.values.begin(), s.values.end()) - s.values.begin());
  return LocalResult{s.points[best], s.values[best], it, converged};
}

}  // namespace

LocalResult nelder_mead(const Objective& f, std::vector<double> x0, const LocalOptions& opts) {
  if (x0.empty()) return LocalResult{x0, f(x0), 0, true};
  LocalResult result = simplex_run(f, x0, opts.initial_step, opts.max_iterations, opts.tolerance);
  int total = result.iterations;
  double step = opts.initial_step;
  for (int round = 0; round < opts.polish_rounds; ++round) {
    step *= 0.25;
    LocalResult next = simplex_run(f, result.x, step, opts.max_iterations, opts.tolerance);
    total += next.iterations;
    const double gain = result.value - next.value;
    if (next.value <= result.value) {
      next.converged = next.converged && result.converged;
      result = std::move(next);
    }
    if (gain <= opts.tolerance) break;
  }
  result.iterations = total;
  return result;
}

ScalarResult golden_section(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  const double fx = f(x);
  if (fx <= std::min(fc, fd)) return {x, fx};
  return fc < fd ? ScalarResult{c, fc} : ScalarResult{d, fd};
}

MultiStartResult multistart(const Objective& f, const StartSampler& start, const MultiStartOptions& opts) {
  if (opts.restarts < 1) throw ContractViolation("multistart: restarts must be >= 1");
  if (!(opts.local.tolerance > 0.0)) throw ContractViolation("multistart: tolerance must be > 0");

  const int restarts = opts.restarts;
  std::vector<LocalResult> results(static_cast<std::size_t>(restarts));
  auto run = [&](int index) {
    Rng rng = make_rng(opts.seed, static_cast<std::uint64_t>(index));
    results[static_cast<std::size_t>(index)] = nelder_mead(f, start(index, rng), opts.local);
  };

  int threads = opts.threads > 0 ? opts.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, restarts);
  if (threads == 1) {
    for (int i = 0; i < restarts; ++i) run(i);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (int i = t; i < restarts; i += threads) run(i);
      });
  }

  std::size_t best = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].value < results[best].value) best = i;
    worst = std::max(worst, results[i].value);
  }
  return MultiStartResult{results[best].x, results[best].value, results[best].converged, worst - results[best].value,
                          static_cast<int>(best)};
}

}  // namespace qdisc::optimize
