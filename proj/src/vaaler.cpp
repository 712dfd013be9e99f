#include "floorsum/vaaler.hpp"

#include "floorsum/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace floorsum::vaaler {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesCutoff = 1e-4;

void require_order(int H) {
  if (H < 1) throw DomainError("vaaler: H must be >= 1");
}

double frac(double x) { return x - std::floor(x); }

}  // namespace

double kernel_w(double t) {
  const double a = std::abs(t);
  if (!(a < 1.0)) throw DomainError("kernel_w: requires |t| < 1");
  if (a < kSeriesCutoff) {
    // pi t cot(pi t) = 1 - u/3 - u^2/45 - 2u^3/945, u = (pi t)^2
    const double u = kPi * kPi * a * a;
    const double pcot = 1.0 - u / 3.0 - u * u / 45.0 - 2.0 * u * u * u / 945.0;
    return (1.0 - a) * pcot + a;
  }
  return kPi * a * (1.0 - a) / std::tan(kPi * a) + a;
}

PsiApproximation::PsiApproximation(int H) : order_(H) {
  require_order(H);
  w_.resize(H);
  fejer_.resize(H + 1);
  const double denom = static_cast<double>(H) + 1.0;
  for (int h = 1; h <= H; ++h) w_[h - 1] = kernel_w(h / denom);
  for (int h = 0; h <= H; ++h) fejer_[h] = 1.0 - h / denom;
}

double PsiApproximation::psi_star(double x) const {
  const double r = frac(x);
  double acc = 0.0;
  for (int h = order_; h >= 1; --h) acc += w_[h - 1] * std::sin(2.0 * kPi * h * r) / (kPi * h);
  return -acc;
}

double PsiApproximation::delta(double x) const {
  const double r = frac(x);
  double acc = 0.0;
  for (int h = order_; h >= 1; --h) acc += fejer_[h] * std::cos(2.0 * kPi * h * r);
  return (1.0 + 2.0 * acc) / (2.0 * order_ + 2.0);
}

double psi_star(double x, int H) { return PsiApproximation(H).psi_star(x); }
double delta_majorant(double x, int H) { return PsiApproximation(H).delta(x); }

VaalerReport check_vaaler_inequality(int H, std::span<const double> grid, bool keep_rows) {
  const PsiApproximation approx(H);
  VaalerReport report;
  report.H = H;
  report.points = grid.size();
  report.max_violation = -std::numeric_limits<double>::infinity();
  report.min_delta = std::numeric_limits<double>::infinity();
  for (const double x : grid) {
    const double p = x - std::floor(x) - 0.5;
    const double ps = approx.psi_star(x);
    const double d = approx.delta(x);
    const double violation = std::abs(ps - p) - d;
    if (violation > report.max_violation) {
      report.max_violation = violation;
      report.argmax = x;
    }
    report.min_delta = std::min(report.min_delta, d);
    if (keep_rows) report.rows.push_back({x, p, ps, d, -violation});
  }
  return report;
}

std::vector<double> vaaler_grid(std::size_t uniform, int max_denominator) {
  std::vector<double> grid;
  grid.reserve(uniform + 4 + static_cast<std::size_t>(max_denominator * max_denominator));
  for (std::size_t i = 0; i < uniform; ++i) grid.push_back(-1.0 + 3.0 * static_cast<double>(i) / uniform);
  for (int n = -1; n <= 2; ++n) grid.push_back(n);
  for (int q = 1; q <= max_denominator; ++q)
    for (int p = 0; p <= q; ++p)
      if (std::gcd(p, q) == 1) grid.push_back(static_cast<double>(p) / q);
  return grid;
}

}  // namespace floorsum::vaaler
