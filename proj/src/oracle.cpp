#include "timealloc/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace timealloc {

namespace {

// 15-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 8> kGlNodes = {
    0.000000000000000, 0.201194093997435, 0.394151347077563, 0.570972172608539,
    0.724417731360170, 0.848206583410427, 0.937273392400706, 0.987992518020485};
constexpr std::array<double, 8> kGlWeights = {
    0.202578241925561, 0.198431485327111, 0.186161000015562, 0.166269205816994,
    0.139570677926154, 0.107159220467172, 0.070366047488108, 0.030753241996117};

template <class F>
double gl15(const F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = kGlWeights[0] * f(mid);
  for (std::size_t i = 1; i < kGlNodes.size(); ++i) {
    const double d = half * kGlNodes[i];
    acc += kGlWeights[i] * (f(mid - d) + f(mid + d));
  }
  return half * acc;
}

template <class F>
double adaptive_step(const F& f, double a, double b, double whole, double tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = gl15(f, a, mid);
  const double right = gl15(f, mid, b);
  if (std::abs(left + right - whole) <= tol || depth >= 30) return left + right;
  return adaptive_step(f, a, mid, left, 0.5 * tol, depth + 1) +
         adaptive_step(f, mid, b, right, 0.5 * tol, depth + 1);
}

template <class F>
double adaptive_integral(const F& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  return adaptive_step(f, a, b, gl15(f, a, b), tol, 0);
}

struct Interval {
  double lo, hi;
};

// Subintervals of [lo, hi] where r(x) - c x > 0, found from the closed form
// of the reward; the kink at the region boundary would otherwise ruin
// quadrature accuracy.
std::vector<Interval> positive_region(const RewardFn& fn, double c, double lo, double hi) {
  std::vector<Interval> out;
  auto push = [&](double a, double b) {
    a = std::max(a, lo);
    b = std::min(b, hi);
    if (b > a) out.push_back({a, b});
  };
  auto affine_region = [&](double slope, double intercept) {
    if (slope == 0) {
      if (intercept > 0) push(lo, hi);
    } else if (slope > 0) {
      push(-intercept / slope, hi);
    } else {
      push(lo, -intercept / slope);
    }
  };
  if (const auto* a = std::get_if<Affine>(&fn)) {
    affine_region(a->slope - c, a->intercept);
    return out;
  }
  if (const auto* q = std::get_if<Quadratic>(&fn)) {
    const double A = q->a;
    const double B = q->b - c;
    const double C0 = q->c;
    if (A == 0) {
      affine_region(B, C0);
      return out;
    }
    const double disc = B * B - 4 * A * C0;
    if (disc <= 0) {
      if (A > 0) push(lo, hi);  // positive everywhere (up to a touching point)
      return out;
    }
    const double sq = std::sqrt(disc);
    double r1 = (-B - sq) / (2 * A);
    double r2 = (-B + sq) / (2 * A);
    if (r1 > r2) std::swap(r1, r2);
    if (A < 0) {
      push(r1, r2);
    } else {
      push(lo, r1);
      push(r2, hi);
    }
    return out;
  }
  throw std::invalid_argument("phi: table rewards require a discrete duration law");
}

// Polynomial view of a continuous-case reward, for the hot integration loops.
struct PolyReward {
  double a2, a1, a0;
  double operator()(double x) const { return (a2 * x + a1) * x + a0; }
};

PolyReward poly_reward(const RewardFn& fn) {
  if (const auto* a = std::get_if<Affine>(&fn)) return {0.0, a->slope, a->intercept};
  if (const auto* q = std::get_if<Quadratic>(&fn)) return {q->a, q->b, q->c};
  throw std::invalid_argument("continuous duration laws require affine or quadratic rewards");
}

}  // namespace

double OracleSolution::value_at(double t) const {
  if (t >= horizon) return 0.0;
  if (t <= 0) return values.front();
  const double p = t / grid_step;
  const auto j = static_cast<std::size_t>(p);
  if (j + 1 >= values.size()) return values.back();
  const double frac = p - static_cast<double>(j);
  return values[j] + frac * (values[j + 1] - values[j]);
}

double phi(const EnvironmentSpec& spec, double c) {
  if (!(c >= 0)) throw std::domain_error("phi: threshold must be >= 0");
  double expectation = 0;
  if (is_discrete(spec.duration)) {
    for (const auto& [x, p] : discrete_support(spec.duration))
      expectation += p * std::max(0.0, eval_reward(spec.reward, x) - c * x);
  } else {
    const auto& u = std::get<Uniform>(spec.duration);
    const double density = 1.0 / (u.hi - u.lo);
    for (const auto& iv : positive_region(spec.reward, c, u.lo, u.hi)) {
      expectation += density * adaptive_integral(
                                   [&](double x) { return eval_reward(spec.reward, x) - c * x; },
                                   iv.lo, iv.hi, 1e-12);
    }
  }
  return spec.lambda * expectation - c;
}

double solve_c_star(const EnvironmentSpec& spec) {
  double hi = spec.lambda * spec.reward_upper;
  if (hi <= 0 || phi(spec, 0.0) <= 0) return 0.0;
  while (phi(spec, hi) > 0) hi *= 2;  // analytic guarantee Phi(lambda*D) <= 0; numeric guard
  double lo = 0.0;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (phi(spec, mid) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double renewal_rate(const EnvironmentSpec& spec, double s) {
  double num = 0;  // E[r(X) 1(X >= s)]
  double den = 0;  // E[X 1(X >= s)]
  if (is_discrete(spec.duration)) {
    for (const auto& [x, p] : discrete_support(spec.duration)) {
      if (x >= s) {
        num += p * eval_reward(spec.reward, x);
        den += p * x;
      }
    }
  } else {
    const auto& u = std::get<Uniform>(spec.duration);
    const double a = std::max(s, u.lo);
    if (a < u.hi) {
      const double density = 1.0 / (u.hi - u.lo);
      num = density * adaptive_integral([&](double x) { return eval_reward(spec.reward, x); },
                                        a, u.hi, 1e-12);
      den = density * adaptive_integral([](double x) { return x; }, a, u.hi, 1e-12);
    }
  }
  return spec.lambda * num / (1.0 + spec.lambda * den);
}

OracleSolution solve_value_function(const EnvironmentSpec& spec, double T, double dt_req) {
  if (!(T > 0)) throw std::invalid_argument("solve_value_function: horizon must be > 0");
  if (!(dt_req > 0) || dt_req > spec.max_duration / 10.0)
    throw std::invalid_argument("solve_value_function: grid step must be positive and <= C/10");

  const auto N = static_cast<std::size_t>(std::max<long long>(1, std::llround(T / dt_req)));
  const double dt = T / static_cast<double>(N);
  std::vector<double> v(N + 1, 0.0);

  // State for the advanced-argument lookup: grid values are known for indices
  // >= front; the single sliver (t_front - dt, t_front) opened by the
  // midpoint half-step is covered by the provisional Euler value at t_front-dt.
  std::size_t front = N;
  double prov = 0;
  auto lookup = [&](double t) -> double {
    if (t >= T) return 0.0;
    const double p = t / dt;
    const auto j = static_cast<std::size_t>(p);
    const double frac = p - static_cast<double>(j);
    const double left = (j >= front) ? v[j] : prov;
    return left + frac * (v[j + 1] - left);
  };

  // lambda * E[(r(X) + v(tau + X) - val)_+], the backward increment rate.
  std::function<double(double, double)> rate;
  if (is_discrete(spec.duration)) {
    struct Atom {
      double x, p, r;
    };
    std::vector<Atom> atoms;
    for (const auto& [x, p] : discrete_support(spec.duration))
      atoms.push_back({x, p, eval_reward(spec.reward, x)});
    rate = [&, atoms](double tau, double val) {
      double acc = 0;
      for (const auto& a : atoms) acc += a.p * std::max(0.0, a.r + lookup(tau + a.x) - val);
      return spec.lambda * acc;
    };
  } else {
    const auto& u = std::get<Uniform>(spec.duration);
    const PolyReward r = poly_reward(spec.reward);
    // Composite 2-point Gauss rule; cells are fine enough that the kink of
    // the positive part costs O(cell^2) per evaluation.
    const int ncells = 800;
    const double w = (u.hi - u.lo) / ncells;
    const double off = w * 0.28867513459481287;  // w / (2*sqrt(3))
    const double scale = spec.lambda * (0.5 * w) / (u.hi - u.lo);
    rate = [&, u, r, w, off, scale](double tau, double val) {
      double acc = 0;
      for (int k = 0; k < ncells; ++k) {
        const double center = u.lo + (k + 0.5) * w;
        const double x1 = center - off;
        const double x2 = center + off;
        const double g1 = r(x1) + lookup(tau + x1) - val;
        if (g1 > 0) acc += g1;
        const double g2 = r(x2) + lookup(tau + x2) - val;
        if (g2 > 0) acc += g2;
      }
      return scale * acc;
    };
  }

  for (std::size_t i = N; i-- > 0;) {
    front = i + 1;
    const double t_front = static_cast<double>(front) * dt;
    const double f1 = rate(t_front, v[front]);
    prov = v[front] + dt * f1;  // Euler estimate at t_front - dt, for the sliver
    const double v_half = v[front] + 0.5 * dt * f1;
    const double f2 = rate(t_front - 0.5 * dt, v_half);
    v[i] = v[front] + dt * f2;
  }

  OracleSolution sol;
  sol.c_star = solve_c_star(spec);
  sol.horizon = T;
  sol.grid_step = dt;
  sol.values = std::move(v);
  return sol;
}

SandwichReport sandwich_violations(const OracleSolution& sol, double max_duration) {
  double lower = 0;
  double upper = 0;
  for (std::size_t i = 0; i < sol.values.size(); ++i) {
    const double t = static_cast<double>(i) * sol.grid_step;
    lower = std::max(lower, sol.w(t) - sol.values[i]);
    upper = std::max(upper, sol.values[i] - sol.w(t - max_duration));
  }
  return {lower, upper};
}

}  // namespace timealloc
