#include "kato/quadrature.hpp"

#include "kato/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <thread>

namespace kato::quad {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Neumaier compensated summation.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

bool within(double err, double value, double tol, double rel_tol) {
  return err <= std::max(tol, rel_tol * std::abs(value));
}

void check_interval(double a, double b, double tol, const char *who) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
    throw Error(ErrorKind::InvalidArgument,
                std::string(who) + ": require finite a < b");
  if (!(tol > 0.0))
    throw Error(ErrorKind::InvalidArgument,
                std::string(who) + ": tolerance must be positive");
}

[[noreturn]] void non_finite(double x) {
  std::ostringstream os;
  os << "integrand returned a non-finite value at x = " << x;
  throw Error(ErrorKind::NonFiniteIntegrand, os.str());
}

// ---------------------------------------------------------------------------
// tanh-sinh

constexpr int kMinLevel = 3;
constexpr int kMaxLevel = 11;
constexpr double kTMax = 6.2;

class TanhSinh {
public:
  TanhSinh(const EndpointFn &f, double a, double b)
      : f_(f), a_(a), b_(b), len_(b - a), half_(0.5 * (b - a)) {}

  // Adds the weighted values of every node t = j*h, |t| <= kTMax, with j
  // odd (or all j when `all` is set), without the factor h.
  double sweep(double h, bool all) {
    CompensatedSum acc;
    if (all) acc.add(node(0.0));
    const int step = all ? 1 : 2;
    for (int j = 1;; j += step) {
      const double t = j * h;
      if (t > kTMax) break;
      acc.add(node(t));
      acc.add(node(-t));
    }
    return acc.value();
  }

  std::size_t evaluations() const { return evaluations_; }

private:
  double node(double t) {
    const double u = 0.5 * kPi * std::sinh(t);
    const double e = std::exp(-2.0 * std::abs(u));
    const double d_near = half_ * 2.0 * e / (1.0 + e);
    if (!(d_near > 0.0)) return 0.0;
    const double w = half_ * 0.5 * kPi * std::cosh(t) * 4.0 * e /
                     ((1.0 + e) * (1.0 + e));
    double x, from_a, to_b;
    if (t > 0.0) {
      to_b = d_near;
      from_a = len_ - d_near;
      x = b_ - d_near;
    } else if (t < 0.0) {
      from_a = d_near;
      to_b = len_ - d_near;
      x = a_ + d_near;
    } else {
      from_a = to_b = half_;
      x = a_ + half_;
    }
    ++evaluations_;
    const double v = f_(x, from_a, to_b);
    if (!std::isfinite(v)) non_finite(x);
    return w * v;
  }

  const EndpointFn &f_;
  double a_, b_, len_, half_;
  std::size_t evaluations_ = 0;
};

// ---------------------------------------------------------------------------
// Gauss-Kronrod 7/15

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error, resabs;
  bool operator<(const Panel &o) const { return error < o.error; }
};

Panel gk_panel(const Fn1 &f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  auto eval = [&](double x) {
    const double v = f(x);
    if (!std::isfinite(v)) non_finite(x);
    return v;
  };
  const double fc = eval(c);
  double k = fc * kWgk[7];
  double g = fc * kWg[3];
  double resabs = std::abs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = eval(c - dx);
    const double f2 = eval(c + dx);
    k += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) g += kWg[j / 2] * (f1 + f2);
  }
  const double value = k * h;
  const double err = std::max(std::abs((k - g) * h), 4.0 * kEps * std::abs(value));
  return {a, b, value, err, resabs * std::abs(h)};
}

} // namespace

// ---------------------------------------------------------------------------

QuadratureResult integrate_1d_endpoint(const EndpointFn &f, double a, double b,
                                       double tol, double rel_tol) {
  check_interval(a, b, tol, "integrate_1d");
  TanhSinh ts(f, a, b);
  double h = 1.0;
  double total = ts.sweep(h, true);
  double prev = h * total;
  for (int level = 1; level <= kMaxLevel; ++level) {
    h *= 0.5;
    total += ts.sweep(h, false);
    const double cur = h * total;
    const double err = std::max(std::abs(cur - prev), 4.0 * kEps * std::abs(cur));
    if (level >= kMinLevel &&
        (within(err, cur, tol, rel_tol) || err <= 8.0 * kEps * std::abs(cur)))
      return {cur, err, ts.evaluations(), 0};
    prev = cur;
  }
  std::ostringstream os;
  os << "tanh-sinh did not reach tolerance " << tol << " on (" << a << ", "
     << b << ")";
  throw Error(ErrorKind::NonConvergence, os.str());
}

QuadratureResult integrate_1d(const Fn1 &f, double a, double b, double tol,
                              double rel_tol) {
  return integrate_1d_endpoint(
      [&](double x, double, double) {
        if (x <= a || x >= b) return 0.0;
        return f(x);
      },
      a, b, tol, rel_tol);
}

std::vector<std::pair<double, double>> gauss_legendre(int m) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "gauss_legendre: m must be >= 1");
  std::vector<std::pair<double, double>> out(m);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= m; ++j) {
        const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (m == 1) p0 = 1.0;
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= m; ++j) {
      const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = m * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    out[i] = {-x, w};
    out[m - 1 - i] = {x, w};
  }
  return out;
}

QuadratureResult gauss_kronrod_15(const Fn1 &f, double a, double b) {
  const Panel p = gk_panel(f, a, b);
  return {p.value, p.error, 15, 0};
}

QuadratureResult integrate_adaptive(const Fn1 &f, double a, double b,
                                    double tol, double rel_tol,
                                    std::span<const double> breakpoints) {
  check_interval(a, b, tol, "integrate_adaptive");
  std::vector<double> edges{a};
  for (double x : breakpoints)
    if (x > a && x < b) edges.push_back(x);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::priority_queue<Panel> heap;
  std::size_t evals = 0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    heap.push(gk_panel(f, edges[i], edges[i + 1]));
    evals += 15;
  }

  constexpr std::size_t kMaxPanels = 4000;
  double err_sum = 0.0, value_sum = 0.0, resabs_sum = 0.0;
  {
    auto copy = heap;
    for (; !copy.empty(); copy.pop()) {
      err_sum += copy.top().error;
      value_sum += copy.top().value;
      resabs_sum += copy.top().resabs;
    }
  }
  auto finish = [&] {
    CompensatedSum value, error;
    for (; !heap.empty(); heap.pop()) {
      value.add(heap.top().value);
      error.add(heap.top().error);
    }
    return QuadratureResult{value.value(), error.value(), evals, 0};
  };
  for (;;) {
    const bool roundoff = err_sum <= 50.0 * kEps * resabs_sum;
    if (within(err_sum, value_sum, tol, rel_tol) || roundoff) return finish();
    if (heap.size() >= kMaxPanels) break;
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    heap.pop();
    const Panel left = gk_panel(f, worst.a, mid);
    const Panel right = gk_panel(f, mid, worst.b);
    heap.push(left);
    heap.push(right);
    evals += 30;
    err_sum += left.error + right.error - worst.error;
    value_sum += left.value + right.value - worst.value;
    resabs_sum += left.resabs + right.resabs - worst.resabs;
    if ((heap.size() & 63) == 0) {
      err_sum = value_sum = resabs_sum = 0.0;
      auto copy = heap;
      for (; !copy.empty(); copy.pop()) {
        err_sum += copy.top().error;
        value_sum += copy.top().value;
        resabs_sum += copy.top().resabs;
      }
    }
  }
  std::ostringstream os;
  os << "adaptive Gauss-Kronrod did not reach tolerance " << tol << " on ("
     << a << ", " << b << ")";
  throw Error(ErrorKind::NonConvergence, os.str());
}

QuadratureResult integrate_semi_infinite(const Fn1 &f, double a, double tol,
                                         double rel_tol) {
  if (!std::isfinite(a) || !(tol > 0.0))
    throw Error(ErrorKind::InvalidArgument,
                "integrate_semi_infinite: require finite a and positive tol");
  QuadratureResult out;
  double m = a;
  if (a < 1.0) {
    out += integrate_1d(f, a, 1.0, 0.5 * tol, rel_tol);
    m = 1.0;
  }
  out += integrate_1d_endpoint(
      [&](double, double u, double one_minus_u) {
        if (one_minus_u < 1e-100) return 0.0;
        const double t = m + u / one_minus_u;
        const double v = f(t);
        if (!std::isfinite(v)) non_finite(t);
        return v / (one_minus_u * one_minus_u);
      },
      0.0, 1.0, 0.5 * tol, rel_tol);
  return out;
}

QuadratureResult principal_value(const Fn1 &f_offset, double center, double lo,
                                 double hi, double tol, double rel_tol) {
  if (!std::isfinite(lo) || !(lo < center) || !(center < hi))
    throw Error(ErrorKind::InvalidArgument,
                "principal_value: require finite lo < center < hi");
  const bool infinite = std::isinf(hi);
  const double d = infinite ? center - lo : std::min(center - lo, hi - center);
  const double tiny = 1e-100 * std::max(1.0, d);

  QuadratureResult out = integrate_1d_endpoint(
      [&](double, double t, double) {
        if (t < tiny) return 0.0;
        return f_offset(t) + f_offset(-t);
      },
      0.0, d, tol / 3.0, rel_tol);

  const double left = lo - center;
  if (left < -d)
    out += integrate_1d(f_offset, left, -d, tol / 3.0, rel_tol);
  if (infinite) {
    out += integrate_semi_infinite([&](double s) { return f_offset(d + s); },
                                   0.0, tol / 3.0, rel_tol);
  } else if (hi - center > d) {
    out += integrate_1d(f_offset, d, hi - center, tol / 3.0, rel_tol);
  }
  return out;
}

QuadratureResult integrate_diagonal_double(const DiagonalFn &g, double tol,
                                           double band,
                                           std::span<const double> breakpoints,
                                           double rel_tol) {
  if (!(band > 0.0 && band < 0.5))
    throw Error(ErrorKind::InvalidArgument,
                "integrate_diagonal_double: band must lie in (0, 1/2)");
  if (!(tol > 0.0))
    throw Error(ErrorKind::InvalidArgument,
                "integrate_diagonal_double: tolerance must be positive");

  std::vector<double> bps;
  for (double b : breakpoints)
    if (b > 0.0 && b < 1.0) bps.push_back(b);
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

  std::size_t evals = 0;
  const double inner_tol = 0.25 * tol;
  const double inner_rel = 0.25 * rel_tol;
  // G(t) = int_0^{1-t} g(r, r+t) dr.
  std::vector<double> cuts;
  auto G = [&](double t) {
    cuts.clear();
    if (bps.size() <= 1024) {
      for (double b : bps) {
        cuts.push_back(b);
        cuts.push_back(b - t);
      }
    }
    const QuadratureResult r = integrate_adaptive(
        [&](double r) { return g(r, r + t, t); }, 0.0, 1.0 - t, inner_tol,
        inner_rel, cuts);
    evals += r.evaluations;
    return r.value;
  };

  std::vector<double> edges{band};
  while (edges.back() * 2.0 < 1.0) edges.push_back(edges.back() * 2.0);
  edges.push_back(1.0);

  // Bounded G makes consecutive dyadic strips double; a 1/t blow-up makes
  // them equal.
  std::array<double, 3> first{};
  const std::size_t probes = std::min<std::size_t>(3, edges.size() - 1);
  for (std::size_t k = 0; k < probes; ++k)
    first[k] = gauss_kronrod_15(G, edges[k], edges[k + 1]).value;
  if (probes == 3) {
    const double scale = std::abs(first[0]) + std::abs(first[1]) +
                         std::abs(first[2]);
    if (scale > 0.0 && first[0] != 0.0 && first[1] != 0.0) {
      const double r1 = first[1] / first[0];
      const double r2 = first[2] / first[1];
      if (r1 < 1.5 && r2 < 1.5 && r1 > 0.0 && r2 > 0.0)
        throw Error(ErrorKind::DiagonalDivergence,
                    "strip contributions do not decay towards the diagonal");
    }
  }

  const QuadratureResult core = gauss_kronrod_15(G, 0.0, band);
  const QuadratureResult outer =
      integrate_adaptive(G, band, 1.0, 0.25 * tol, 0.25 * rel_tol, edges);

  QuadratureResult out;
  out.value = 2.0 * (core.value + outer.value);
  out.error_estimate = 2.0 * (core.error_estimate + outer.error_estimate);
  out.evaluations = std::max<std::size_t>(evals, 1);
  return out;
}

QuadratureResult integrate_diagonal_double(const Fn2 &g, double tol,
                                           double band,
                                           std::span<const double> breakpoints,
                                           double rel_tol) {
  return integrate_diagonal_double(
      [&](double r, double s, double) { return g(r, s); }, tol, band,
      breakpoints, rel_tol);
}

// ---------------------------------------------------------------------------
// Monte Carlo

std::uint64_t shard_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double rad = std::sqrt(-2.0 * std::log(u1));
  spare_ = rad * std::sin(2.0 * kPi * u2);
  has_spare_ = true;
  return rad * std::cos(2.0 * kPi * u2);
}

void Rng::unit_vector(std::span<double> out) {
  for (;;) {
    double norm2 = 0.0;
    for (double &c : out) {
      c = normal();
      norm2 += c * c;
    }
    if (norm2 > 1e-300) {
      const double inv = 1.0 / std::sqrt(norm2);
      for (double &c : out) c *= inv;
      return;
    }
  }
}

void Rng::point_in_ball(std::span<double> out) {
  unit_vector(out);
  const double r =
      std::pow(uniform(), 1.0 / static_cast<double>(out.size()));
  for (double &c : out) c *= r;
}

double ball_volume(int n) {
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double sphere_area(int n) { return n * ball_volume(n); }

namespace {

struct ShardTally {
  CompensatedSum sum, sum2;
  std::uint64_t count = 0;
  std::uint64_t rejected = 0;
};

template <class Body>
QuadratureResult run_shards(const MCConfig &cfg, int n, Body body) {
  if (n < 2)
    throw Error(ErrorKind::InvalidArgument, "Monte Carlo requires n >= 2");
  if (cfg.samples < 2 || cfg.shards == 0)
    throw Error(ErrorKind::InvalidArgument,
                "Monte Carlo requires samples >= 2 and shards >= 1");
  const std::uint32_t shards =
      static_cast<std::uint32_t>(std::min<std::uint64_t>(cfg.shards, cfg.samples));
  std::vector<ShardTally> tallies(shards);
  std::vector<std::exception_ptr> failures(shards);

  auto work = [&](std::uint32_t s) {
    try {
      const std::uint64_t base = cfg.samples / shards;
      const std::uint64_t count = base + (s < cfg.samples % shards ? 1 : 0);
      Rng rng(shard_seed(cfg.seed, s));
      ShardTally &t = tallies[s];
      for (std::uint64_t i = 0; i < count; ++i) {
        const double w = body(rng, t.rejected);
        if (!std::isfinite(w))
          throw Error(ErrorKind::NonFiniteSample,
                      "Monte Carlo sample produced a non-finite value");
        t.sum.add(w);
        t.sum2.add(w * w);
      }
      t.count = count;
    } catch (...) {
      failures[s] = std::current_exception();
    }
  };

  const unsigned workers =
      std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), shards));
  if (workers == 1) {
    for (std::uint32_t s = 0; s < shards; ++s) work(s);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::uint32_t s = w; s < shards; s += workers) work(s);
      });
    for (auto &th : pool) th.join();
  }
  for (auto &f : failures)
    if (f) std::rethrow_exception(f);

  CompensatedSum sum, sum2;
  std::uint64_t count = 0, rejected = 0;
  for (const ShardTally &t : tallies) {
    sum.add(t.sum.value());
    sum2.add(t.sum2.value());
    count += t.count;
    rejected += t.rejected;
  }
  const double N = static_cast<double>(count);
  const double mean = sum.value() / N;
  const double var =
      std::max(0.0, (sum2.value() / N - mean * mean) * N / (N - 1.0));
  QuadratureResult out;
  out.value = mean;
  out.error_estimate = 3.0 * std::sqrt(var / N);
  out.evaluations = count;
  out.rejected = rejected;
  return out;
}

} // namespace

QuadratureResult mc_ball(const PointFn &F, int n, const MCConfig &cfg) {
  const double vol = ball_volume(n);
  return run_shards(cfg, n, [&, x = std::vector<double>(std::max(n, 0))](
                                Rng &rng, std::uint64_t &) mutable {
    rng.point_in_ball(x);
    return vol * F(x);
  });
}

QuadratureResult mc_double_ball(const PairFn &F, int n, const MCConfig &cfg,
                                PairSampler sampler, double reject_radius) {
  const double vol = ball_volume(n);
  const double area = sphere_area(n);
  const std::size_t dim = static_cast<std::size_t>(std::max(n, 0));
  if (sampler == PairSampler::Uniform) {
    return run_shards(cfg, n, [&, x = std::vector<double>(dim),
                               y = std::vector<double>(dim)](
                                  Rng &rng, std::uint64_t &rejected) mutable {
      for (;;) {
        rng.point_in_ball(x);
        rng.point_in_ball(y);
        double d2 = 0.0;
        for (std::size_t i = 0; i < dim; ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
        if (std::sqrt(d2) >= reject_radius) break;
        ++rejected;
      }
      return vol * vol * F(x, y);
    });
  }
  return run_shards(cfg, n, [&, x = std::vector<double>(dim),
                             y = std::vector<double>(dim),
                             theta = std::vector<double>(dim)](
                                Rng &rng, std::uint64_t &rejected) mutable {
    double chord = 0.0, len = 0.0;
    for (;;) {
      rng.point_in_ball(x);
      rng.unit_vector(theta);
      double xt = 0.0, xx = 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        xt += x[i] * theta[i];
        xx += x[i] * x[i];
      }
      chord = -xt + std::sqrt(std::max(0.0, xt * xt + 1.0 - xx));
      len = rng.uniform() * chord;
      if (len >= reject_radius) break;
      ++rejected;
    }
    for (std::size_t i = 0; i < dim; ++i) y[i] = x[i] + len * theta[i];
    const double jac = vol * area * chord * std::pow(len, n - 1);
    return jac * F(x, y);
  });
}

// ---------------------------------------------------------------------------

void LimitPolicy::validate() const {
  if (sequence.empty())
    throw Error(ErrorKind::InvalidArgument, "LimitPolicy: empty sequence");
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    if (!(sequence[i] > 0.0 && sequence[i] < 1.0))
      throw Error(ErrorKind::InvalidArgument,
                  "LimitPolicy: entries must lie in (0,1)");
    if (i > 0 && !(sequence[i] < sequence[i - 1]))
      throw Error(ErrorKind::InvalidArgument,
                  "LimitPolicy: sequence must be strictly decreasing");
  }
  if (extrapolation_order < 0)
    throw Error(ErrorKind::InvalidArgument,
                "LimitPolicy: negative extrapolation order");
}

double limit_extrapolate(std::span<const std::pair<double, double>> values,
                         const LimitPolicy &policy) {
  const std::size_t m = static_cast<std::size_t>(policy.extrapolation_order) + 1;
  if (policy.extrapolation_order < 0 || values.size() < m)
    throw Error(ErrorKind::InsufficientData,
                "limit_extrapolate needs at least extrapolation_order + 1 values");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i].first < values[i - 1].first))
      throw Error(ErrorKind::InvalidArgument,
                  "limit_extrapolate: eps must be strictly decreasing");

  double scale = 0.0;
  for (const auto &[e, v] : values) scale = std::max(scale, std::abs(v));
  const double floor = 1e-13 * scale + 1e-300;
  for (std::size_t i = 2; i < values.size(); ++i) {
    const double d_prev = values[i - 1].second - values[i - 2].second;
    const double d_last = values[i].second - values[i - 1].second;
    if (std::abs(d_last) > floor && std::abs(d_last) > 0.9 * std::abs(d_prev))
      throw Error(ErrorKind::Oscillation,
                  "successive differences do not contract; limit appears divergent");
  }

  // Neville tableau evaluated at eps = 0 on the m smallest eps.
  const auto tail = values.subspan(values.size() - m);
  std::vector<double> p(m);
  for (std::size_t i = 0; i < m; ++i) p[i] = tail[i].second;
  for (std::size_t k = 1; k < m; ++k)
    for (std::size_t i = 0; i + k < m; ++i) {
      const double xi = tail[i].first, xk = tail[i + k].first;
      p[i] = (xi * p[i + 1] - xk * p[i]) / (xi - xk);
    }
  return p[0];
}

double limit_of(const std::function<double(double)> &f,
                const LimitPolicy &policy) {
  policy.validate();
  std::vector<std::pair<double, double>> values;
  for (double eps : policy.sequence) values.emplace_back(eps, f(eps));
  return limit_extrapolate(values, policy);
}

// ---------------------------------------------------------------------------

double wallis(int m) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "wallis: m must be >= 0");
  double w = (m % 2 == 0) ? kPi : 2.0;
  for (int j = (m % 2 == 0) ? 2 : 3; j <= m; j += 2)
    w *= static_cast<double>(j - 1) / j;
  return w;
}

QuadratureResult wallis_quadrature(int m) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "wallis: m must be >= 0");
  return integrate_1d_endpoint(
      [m](double, double from_a, double to_b) {
        // sin(x) = sin(pi - x); use the nearer endpoint distance.
        return std::pow(std::sin(std::min(from_a, to_b)), m);
      },
      0.0, kPi, 1e-14, 1e-15);
}

} // namespace kato::quad
