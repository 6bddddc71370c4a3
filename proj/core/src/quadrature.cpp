#include "ofdmcr/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace ofdmcr::quad {
namespace {

// QUADPACK qk15 abscissae and weights.
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

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod15(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double value = resk * half;
  const double err = std::abs((resk - resg) * half);
  return {a, b, value, err};
}

}  // namespace

Result integrate(const Integrand& f, double a, double b, Tolerance tol, int max_intervals) {
  std::priority_queue<Segment> heap;
  Segment first = kronrod15(f, a, b);
  heap.push(first);
  double total = first.value;
  double total_err = first.error;
  int evals = 15;
  int intervals = 1;
  while (total_err > std::max(tol.absolute, tol.relative * std::abs(total)) && intervals < max_intervals) {
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      heap.push(worst);
      break;  // interval cannot be split further in floating point
    }
    Segment left = kronrod15(f, worst.a, mid);
    Segment right = kronrod15(f, mid, worst.b);
    evals += 30;
    ++intervals;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed the drift from incremental updates.
  double sum = 0.0, err = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return {sum, err, evals, err <= std::max(tol.absolute, tol.relative * std::abs(sum))};
}

Result integrate_to_infinity(const Integrand& f, double a, Tolerance tol, int max_intervals) {
  auto mapped = [&f, a](double t) {
    const double u = 1.0 - t;
    const double x = a + t / u;
    if (std::isinf(x)) return 0.0;
    const double v = f(x);
    return v == 0.0 ? 0.0 : v / (u * u);
  };
  return integrate(mapped, 0.0, 1.0, tol, max_intervals);
}

}  // namespace ofdmcr::quad
