#pragma once

// Numerical kernels shared by the capacity solvers: a bracketed Brent root
// finder, adaptive Gauss-Kronrod quadrature, the Bose log integral with its
// small-argument series, and a cyclic Jacobi eigensolver for small dense
// symmetric matrices.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "bosonic_capacity/errors.hpp"

namespace bcap {

namespace tolerances {
inline constexpr double root_abs = 1e-12;
inline constexpr int root_max_iter = 200;
inline constexpr double quad_rel = 1e-12;
inline constexpr std::size_t quad_max_intervals = 4000;
// Below this argument the Bose log integrand is replaced by its series.
inline constexpr double bose_series_cutoff = 1e-3;
// Beyond this argument the Bose log integrand is below 1e-26 and is dropped.
inline constexpr double bose_tail_cutoff = 60.0;
inline constexpr double jacobi_off_rel = 1e-12;
inline constexpr int jacobi_max_sweeps = 30;
}  // namespace tolerances

struct RootProblem {
  std::function<double(double)> objective;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double tol_abs = tolerances::root_abs;
  int max_iter = tolerances::root_max_iter;
};

namespace detail {

inline void check_bracket(const RootProblem& p, double flo, double fhi) {
  if (!(p.bracket_lo < p.bracket_hi) || !std::isfinite(p.bracket_lo) ||
      !std::isfinite(p.bracket_hi)) {
    throw DomainError("root bracket must be finite with lo < hi");
  }
  if (!std::isfinite(flo) || !std::isfinite(fhi)) {
    throw NonFinite("objective is not finite at the bracket endpoints");
  }
  if ((flo > 0.0 && fhi > 0.0) || (flo < 0.0 && fhi < 0.0)) {
    throw NoSignChange("objective has the same sign at both bracket endpoints");
  }
}

}  // namespace detail

// Brent's method (inverse quadratic interpolation safeguarded by bisection).
// The returned root lies inside the bracket and within tol_abs of a sign
// change of the objective.
inline double find_root(const RootProblem& p) {
  double a = p.bracket_lo;
  double b = p.bracket_hi;
  double fa = p.objective(a);
  double fb = p.objective(b);
  detail::check_bracket(p, fa, fb);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;

  constexpr double eps = std::numeric_limits<double>::epsilon();
  double c = b;
  double fc = fb;
  double d = b - a;
  double e = d;
  for (int iter = 0; iter < p.max_iter; ++iter) {
    if ((fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::fabs(b) + 0.5 * p.tol_abs;
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0) return b;

    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      const double s = fb / fa;
      double pp;
      double q;
      if (a == c) {
        pp = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        pp = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (pp > 0.0) q = -q;
      pp = std::fabs(pp);
      const double min1 = 3.0 * xm * q - std::fabs(tol1 * q);
      const double min2 = std::fabs(e * q);
      if (2.0 * pp < std::min(min1, min2)) {
        e = d;
        d = pp / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::fabs(d) > tol1) ? d : std::copysign(tol1, xm);
    fb = p.objective(b);
    if (!std::isfinite(fb)) throw NonFinite("objective became non-finite during root search");
  }
  throw NoConvergence("Brent root search exceeded " + std::to_string(p.max_iter) +
                      " iterations");
}

// Plain bisection on the same contract; slower, used as a cross-check.
inline double find_root_bisection(const RootProblem& p) {
  double lo = p.bracket_lo;
  double hi = p.bracket_hi;
  double flo = p.objective(lo);
  const double fhi = p.objective(hi);
  detail::check_bracket(p, flo, fhi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  for (int iter = 0; iter < 4 * p.max_iter; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= p.tol_abs || mid == lo || mid == hi) return mid;
    const double fm = p.objective(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  throw NoConvergence("bisection exceeded its iteration cap");
}

// Grows [guess/2, 2 guess] geometrically until a monotone objective changes
// sign. Intended for objectives defined on the positive half-line.
inline std::pair<double, double> expand_bracket(const std::function<double(double)>& objective,
                                                double guess, int max_doublings = 200) {
  if (!(guess > 0.0) || !std::isfinite(guess)) {
    throw DomainError("bracket guess must be positive and finite");
  }
  double lo = 0.5 * guess;
  double hi = 2.0 * guess;
  double flo = objective(lo);
  double fhi = objective(hi);
  for (int i = 0; i < max_doublings; ++i) {
    if ((flo <= 0.0) != (fhi <= 0.0)) return {lo, hi};
    // Move toward the side whose value is smaller in magnitude.
    if (std::fabs(flo) < std::fabs(fhi)) {
      hi = lo;
      fhi = flo;
      lo *= 0.5;
      flo = objective(lo);
    } else {
      lo = hi;
      flo = fhi;
      hi *= 2.0;
      fhi = objective(hi);
    }
  }
  throw NoSignChange("could not bracket a sign change around the initial guess");
}

namespace detail {

// 7-point Gauss / 15-point Kronrod nodes and weights on [-1, 1].
inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel gauss_kronrod_15(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kronrod_weights[7];
  double gauss = fc * gauss_weights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kronrod_nodes[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kronrod_weights[j] * pair;
    if (j % 2 == 1) gauss += gauss_weights[j / 2] * pair;
  }
  return {a, b, kronrod * half, std::fabs((kronrod - gauss) * half)};
}

}  // namespace detail

// Globally adaptive 15-point Gauss-Kronrod quadrature. The rule never samples
// the endpoints, so integrable logarithmic endpoint singularities are resolved
// by bisection toward the singular end.
template <class F>
double integrate_log_singular(const F& f, double a, double b,
                              double tol_rel = tolerances::quad_rel) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("integration limits must be finite with a < b");
  }
  if (!(tol_rel > 0.0)) throw DomainError("tol_rel must be positive");

  std::priority_queue<detail::Panel> panels;
  const detail::Panel first = detail::gauss_kronrod_15(f, a, b);
  double total = first.value;
  double error = first.error;
  panels.push(first);

  const double tiny = 50.0 * std::numeric_limits<double>::min();
  while (error > std::max(tol_rel * std::fabs(total), tiny)) {
    if (!std::isfinite(total) || !std::isfinite(error)) {
      throw NonFinite("quadrature produced a non-finite estimate");
    }
    if (panels.size() >= tolerances::quad_max_intervals) {
      throw NonFinite("quadrature did not reach the requested tolerance");
    }
    const detail::Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      throw NonFinite("quadrature reached machine resolution before converging");
    }
    panels.pop();
    const detail::Panel left = detail::gauss_kronrod_15(f, worst.a, mid);
    const detail::Panel right = detail::gauss_kronrod_15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  double sum = 0.0;
  while (!panels.empty()) {
    sum += panels.top().value;
    panels.pop();
  }
  if (!std::isfinite(sum)) throw NonFinite("quadrature produced a non-finite estimate");
  return sum;
}

// ln[1/(1 - e^{-x})], accurate for small and large x.
inline double bose_log(double x) {
  return x > std::numbers::ln2 ? -std::log1p(-std::exp(-x)) : -std::log(-std::expm1(-x));
}

namespace detail {

// Antiderivative of the small-x series -ln x + x/2 - x^2/24 + x^4/2880.
inline double bose_log_series_antiderivative(double x) {
  if (x == 0.0) return 0.0;
  const double x2 = x * x;
  return x - x * std::log(x) + 0.25 * x2 - x2 * x / 72.0 + x2 * x2 * x / 14400.0;
}

}  // namespace detail

// Integral of ln[1/(1 - e^{-x})] over [lo, hi] with 0 <= lo <= hi. The
// logarithmic singularity at 0 is integrated analytically below the series
// cutoff; the exponentially small tail past the tail cutoff is dropped.
inline double bose_log_integral(double lo, double hi, double tol_rel = tolerances::quad_rel) {
  if (!(lo >= 0.0) || !(hi >= lo) || std::isnan(hi)) {
    throw DomainError("Bose log integral needs 0 <= lo <= hi");
  }
  using tolerances::bose_series_cutoff;
  using tolerances::bose_tail_cutoff;
  hi = std::min(hi, bose_tail_cutoff);
  if (!(lo < hi)) return 0.0;

  double sum = 0.0;
  if (lo < bose_series_cutoff) {
    const double top = std::min(hi, bose_series_cutoff);
    sum += detail::bose_log_series_antiderivative(top) -
           detail::bose_log_series_antiderivative(lo);
    lo = top;
  }
  if (lo < hi) sum += integrate_log_singular(bose_log, lo, hi, tol_rel);
  return sum;
}

// Dense real symmetric matrix; symmetry holds exactly by construction.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {
    if (n == 0) throw DomainError("matrix dimension must be positive");
  }

  static SymmetricMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    SymmetricMatrix m(rows.size());
    for (std::size_t i = 0; i < m.n_; ++i) {
      if (rows[i].size() != m.n_) throw DomainError("matrix rows must be square");
      for (std::size_t j = 0; j < m.n_; ++j) {
        if (!std::isfinite(rows[i][j])) throw DomainError("matrix entries must be finite");
        if (rows[i][j] != rows[j][i]) throw DomainError("matrix is not symmetric");
        m.entries_[i * m.n_ + j] = rows[i][j];
      }
    }
    return m;
  }

  static SymmetricMatrix identity(std::size_t n) {
    SymmetricMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1.0);
    return m;
  }

  std::size_t size() const { return n_; }

  double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  void set(std::size_t i, std::size_t j, double value) {
    if (!std::isfinite(value)) throw DomainError("matrix entries must be finite");
    entries_[i * n_ + j] = value;
    entries_[j * n_ + i] = value;
  }

  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double v : entries_) s += v * v;
    return std::sqrt(s);
  }

 private:
  std::size_t n_;
  std::vector<double> entries_;
};

// Cyclic Jacobi rotations; eigenvalues returned in ascending order.
inline std::vector<double> symmetric_eigenvalues(const SymmetricMatrix& m) {
  const std::size_t n = m.size();
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += at(i, j) * at(i, j);
    return std::sqrt(s);
  };

  const double threshold = tolerances::jacobi_off_rel * m.frobenius_norm();
  bool converged = false;
  for (int sweep = 0; sweep <= tolerances::jacobi_max_sweeps; ++sweep) {
    if (off_norm() <= threshold) {
      converged = true;
      break;
    }
    if (sweep == tolerances::jacobi_max_sweeps) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = std::fabs(theta) > 1e150
                             ? 0.5 / theta
                             : std::copysign(1.0, theta) /
                                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        at(p, p) -= t * apq;
        at(q, q) += t * apq;
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = at(r, p);
          const double arq = at(r, q);
          at(r, p) = arp - s * (arq + tau * arp);
          at(r, q) = arq + s * (arp - tau * arq);
          at(p, r) = at(r, p);
          at(q, r) = at(r, q);
        }
      }
    }
  }
  if (!converged) {
    throw NoConvergence("Jacobi eigensolver did not converge within " +
                        std::to_string(tolerances::jacobi_max_sweeps) + " sweeps");
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace bcap
