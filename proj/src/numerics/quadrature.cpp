#include "qsl/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <queue>
#include <vector>

namespace qsl {

namespace {

// 15-point Kronrod rule with embedded 7-point Gauss rule (QUADPACK dqk15).
// Abscissae are the positive half; index 7 is the center.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

constexpr double kEps = 2.220446049250313e-16;
constexpr double kUflow = 2.2250738585072014e-308;

struct Panel {
  double a, b;
  double value;
  double error;
  double extra;  // carried inner-axis error (2-D), zero in 1-D
};

struct PanelOrder {
  bool operator()(const Panel& lhs, const Panel& rhs) const {
    const double le = lhs.error + lhs.extra;
    const double re = rhs.error + rhs.extra;
    if (le != re) return le < re;
    return lhs.a < rhs.a;  // deterministic tie break
  }
};

void panel_nodes(double a, double b, double* x) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    x[2 * j] = c - dx;
    x[2 * j + 1] = c + dx;
  }
  x[14] = c;
}

// QUADPACK-style panel estimate from the 15 integrand values laid out as
// produced by panel_nodes.
Panel panel_from_values(double a, double b, const double* y) {
  const double h = 0.5 * (b - a);
  double resg = kWg[3] * y[14];
  double resk = kWgk[7] * y[14];
  double resabs = kWgk[7] * std::fabs(y[14]);
  for (int j = 0; j < 7; ++j) {
    const double sum = y[2 * j] + y[2 * j + 1];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::fabs(y[2 * j]) + std::fabs(y[2 * j + 1]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;  // odd Kronrod indices are Gauss
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::fabs(y[14] - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::fabs(y[2 * j] - reskh) + std::fabs(y[2 * j + 1] - reskh));
  resasc *= h;
  resabs *= h;

  double err = std::fabs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > kUflow / (50.0 * kEps)) err = std::max(kEps * 50.0 * resabs, err);

  return Panel{a, b, resk * h, err, 0.0};
}

Panel eval_panel(const BatchFn1& f, double a, double b) {
  double x[15], y[15];
  panel_nodes(a, b, x);
  f(x, y, 15);
  return panel_from_values(a, b, y);
}

bool within(double total_err, double total_val, const Tolerance& tol) {
  return total_err <= std::max(tol.abs, tol.rel * std::fabs(total_val));
}

// Scratch for batch transforms: panel evaluations are 15 wide, so the stack
// buffer covers every internal call without allocating.
struct NodeScratch {
  double stack[15];
  std::vector<double> heap;

  double* get(std::size_t n) {
    if (n <= 15) return stack;
    heap.resize(n);
    return heap.data();
  }
};

// Maps an arbitrary (possibly infinite) interval onto a finite one and wraps
// the integrand with the corresponding jacobian.
struct MappedInterval {
  double a, b;
  BatchFn1 f;
};

MappedInterval map_interval(const BatchFn1& f, double a, double b) {
  const bool lo_inf = std::isinf(a);
  const bool hi_inf = std::isinf(b);
  if (!lo_inf && !hi_inf) return {a, b, f};
  // Nodes of deeply refined panels can round onto the mapped endpoint; the
  // integrand is required to be absolutely integrable there, so those
  // measure-zero collisions contribute zero rather than 0/0.
  if (!lo_inf && hi_inf) {
    // t = a + x/(1-x), x in [0,1)
    return {0.0, 1.0,
            [f, a, sc = std::make_shared<NodeScratch>()](
                const double* x, double* out, std::size_t n) {
              double* t = sc->get(n);
              for (std::size_t i = 0; i < n; ++i) t[i] = a + x[i] / (1.0 - x[i]);
              f(t, out, n);
              for (std::size_t i = 0; i < n; ++i) {
                const double d = 1.0 - x[i];
                out[i] = d == 0.0 ? 0.0 : out[i] / (d * d);
              }
            }};
  }
  if (lo_inf && !hi_inf) {
    // t = b - x/(1-x), x in [0,1)
    return {0.0, 1.0,
            [f, b, sc = std::make_shared<NodeScratch>()](
                const double* x, double* out, std::size_t n) {
              double* t = sc->get(n);
              for (std::size_t i = 0; i < n; ++i) t[i] = b - x[i] / (1.0 - x[i]);
              f(t, out, n);
              for (std::size_t i = 0; i < n; ++i) {
                const double d = 1.0 - x[i];
                out[i] = d == 0.0 ? 0.0 : out[i] / (d * d);
              }
            }};
  }
  // t = x/(1-x^2), x in (-1,1)
  return {-1.0, 1.0,
          [f, sc = std::make_shared<NodeScratch>()](
              const double* x, double* out, std::size_t n) {
            double* t = sc->get(n);
            for (std::size_t i = 0; i < n; ++i) {
              const double d = 1.0 - x[i] * x[i];
              t[i] = x[i] / d;
            }
            f(t, out, n);
            for (std::size_t i = 0; i < n; ++i) {
              const double d = 1.0 - x[i] * x[i];
              out[i] = d == 0.0 ? 0.0
                                : out[i] * (1.0 + x[i] * x[i]) / (d * d);
            }
          }};
}

QuadratureResult adapt_finite(const BatchFn1& f, double a, double b,
                              const Tolerance& tol, std::size_t max_evals) {
  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> heap;
  std::size_t evals = 15;
  heap.push(eval_panel(f, a, b));
  double total_val = heap.top().value;
  double total_err = heap.top().error;

  while (!within(total_err, total_val, tol)) {
    if (evals + 30 > max_evals) {
      throw ConvergenceError("integrate_1d: evaluation budget exhausted",
                             QuadratureResult{total_val, total_err, evals});
    }
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      throw ConvergenceError("integrate_1d: interval too small to subdivide",
                             QuadratureResult{total_val, total_err, evals});
    }
    heap.pop();
    const Panel left = eval_panel(f, worst.a, mid);
    const Panel right = eval_panel(f, mid, worst.b);
    evals += 30;
    total_val += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  return {total_val, total_err, evals};
}

}  // namespace

QuadratureResult integrate_1d(const BatchFn1& f, double a, double b,
                              Tolerance tol, std::size_t max_evals) {
  tol.validate();
  if (std::isnan(a) || std::isnan(b) || a > b)
    throw std::domain_error("integrate_1d: need a <= b");
  if (a == b) return {0.0, 0.0, 0};
  MappedInterval m = map_interval(f, a, b);
  return adapt_finite(m.f, m.a, m.b, tol, max_evals);
}

QuadratureResult integrate_1d(const ScalarFn1& f, double a, double b,
                              Tolerance tol, std::size_t max_evals) {
  return integrate_1d(
      [&f](const double* x, double* out, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) out[i] = f(x[i]);
      },
      a, b, tol, max_evals);
}

namespace {

// Inner integrals of the iterated 2-D rule. Evaluated panel by panel so the
// outer rule sees both the inner value and the inner error at each node.
struct InnerEval {
  double value;
  double error;
};

struct Outer2D {
  const BatchFn2* f;
  double y_lo, y_hi;
  Tolerance inner_tol;
  std::size_t* evals;
  std::size_t max_evals;

  InnerEval inner(double x) const {
    BatchFn1 g = [this, x, sc = std::make_shared<NodeScratch>()](
                     const double* y, double* out, std::size_t n) {
      double* xs = sc->get(n);
      std::fill(xs, xs + n, x);
      (*f)(xs, y, out, n);
      *evals += n;
    };
    MappedInterval m = map_interval(g, y_lo, y_hi);
    std::priority_queue<Panel, std::vector<Panel>, PanelOrder> heap;
    heap.push(eval_panel(m.f, m.a, m.b));
    double val = heap.top().value;
    double err = heap.top().error;
    while (!within(err, val, inner_tol)) {
      if (*evals + 30 > max_evals)
        throw ConvergenceError("integrate_2d: evaluation budget exhausted",
                               QuadratureResult{val, err, *evals});
      const Panel worst = heap.top();
      const double mid = 0.5 * (worst.a + worst.b);
      if (!(worst.a < mid && mid < worst.b)) break;  // inner floor reached
      heap.pop();
      const Panel left = eval_panel(m.f, worst.a, mid);
      const Panel right = eval_panel(m.f, mid, worst.b);
      val += left.value + right.value - worst.value;
      err += left.error + right.error - worst.error;
      heap.push(left);
      heap.push(right);
    }
    return {val, err};
  }
};

}  // namespace

QuadratureResult integrate_2d(const BatchFn2& f, Rect domain, Tolerance tol,
                              std::size_t max_evals) {
  tol.validate();
  if (!(domain.x_lo <= domain.x_hi) || !(domain.y_lo <= domain.y_hi))
    throw std::domain_error("integrate_2d: malformed rectangle");
  if (domain.x_lo == domain.x_hi || domain.y_lo == domain.y_hi)
    return {0.0, 0.0, 0};

  // The inner error contributions add up across the outer axis; their
  // absolute floor must shrink with the outer extent or a small integral can
  // never satisfy the combined tolerance.
  const double x_extent =
      (std::isinf(domain.x_lo) || std::isinf(domain.x_hi))
          ? 100.0
          : domain.x_hi - domain.x_lo;
  std::size_t evals = 0;
  Tolerance inner_tol{tol.rel * 0.1, tol.abs * 0.1 / std::max(1.0, x_extent)};
  Outer2D outer{&f, domain.y_lo, domain.y_hi, inner_tol, &evals, max_evals};

  // Map the outer axis onto a finite interval.
  const bool lo_inf = std::isinf(domain.x_lo);
  const bool hi_inf = std::isinf(domain.x_hi);
  double a = domain.x_lo, b = domain.x_hi;
  std::function<double(double)> x_of;   // map variable -> x
  std::function<double(double)> jac;
  if (!lo_inf && !hi_inf) {
    x_of = [](double u) { return u; };
    jac = [](double) { return 1.0; };
  } else if (!lo_inf && hi_inf) {
    const double x0 = domain.x_lo;
    a = 0.0; b = 1.0;
    x_of = [x0](double u) { return x0 + u / (1.0 - u); };
    jac = [](double u) { const double d = 1.0 - u; return 1.0 / (d * d); };
  } else if (lo_inf && !hi_inf) {
    const double x1 = domain.x_hi;
    a = 0.0; b = 1.0;
    x_of = [x1](double u) { return x1 - u / (1.0 - u); };
    jac = [](double u) { const double d = 1.0 - u; return 1.0 / (d * d); };
  } else {
    a = -1.0; b = 1.0;
    x_of = [](double u) { return u / (1.0 - u * u); };
    jac = [](double u) {
      const double d = 1.0 - u * u;
      return (1.0 + u * u) / (d * d);
    };
  }

  auto outer_panel = [&](double pa, double pb) {
    double x[15], v[15];
    panel_nodes(pa, pb, x);
    double inner_err = 0.0;
    for (int i = 0; i < 15; ++i) {
      const double j = jac(x[i]);
      if (!std::isfinite(j) || !std::isfinite(x_of(x[i]))) {
        v[i] = 0.0;  // node rounded onto a mapped endpoint
        continue;
      }
      const InnerEval e = outer.inner(x_of(x[i]));
      v[i] = e.value * j;
      inner_err += e.error * j;
    }
    Panel p = panel_from_values(pa, pb, v);
    p.extra = inner_err * (pb - pa) / 15.0;
    return p;
  };

  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> heap;
  heap.push(outer_panel(a, b));
  double total_val = heap.top().value;
  double total_err = heap.top().error + heap.top().extra;

  while (!within(total_err, total_val, tol)) {
    if (evals >= max_evals)
      throw ConvergenceError("integrate_2d: evaluation budget exhausted",
                             QuadratureResult{total_val, total_err, evals});
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b))
      throw ConvergenceError("integrate_2d: interval too small to subdivide",
                             QuadratureResult{total_val, total_err, evals});
    heap.pop();
    const Panel left = outer_panel(worst.a, mid);
    const Panel right = outer_panel(mid, worst.b);
    total_val += left.value + right.value - worst.value;
    total_err += left.error + left.extra + right.error + right.extra -
                 (worst.error + worst.extra);
    heap.push(left);
    heap.push(right);
  }
  return {total_val, total_err, evals};
}

QuadratureResult integrate_2d(const ScalarFn2& f, Rect domain, Tolerance tol,
                              std::size_t max_evals) {
  return integrate_2d(
      [&f](const double* x, const double* y, double* out, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) out[i] = f(x[i], y[i]);
      },
      domain, tol, max_evals);
}

}  // namespace qsl
