#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace floorsum::vaaler {

// W(t) = pi t (1 - |t|) cot(pi t) + |t| for 0 < |t| < 1, W(0) = 1.
double kernel_w(double t);

// Degree-H trigonometric approximation of the sawtooth psi together with
// its Fejer-kernel majorant delta:
//   psi*(x)  = -sum_{h=1..H} W(h/(H+1)) sin(2 pi h x) / (pi h)
//   delta(x) = (1/(2H+2)) sum_{|h|<=H} (1 - |h|/(H+1)) e(hx)
// and |psi*(x) - psi(x)| <= delta(x) for every real x.
class PsiApproximation {
 public:
  explicit PsiApproximation(int H);

  int order() const { return order_; }
  std::span<const double> w_weights() const { return w_; }           // h = 1..H
  std::span<const double> fejer_weights() const { return fejer_; }   // h = 0..H

  double psi_star(double x) const;
  double delta(double x) const;

 private:
  int order_;
  std::vector<double> w_;
  std::vector<double> fejer_;
};

double psi_star(double x, int H);
double delta_majorant(double x, int H);

struct VaalerRow {
  double x;
  double psi;
  double psi_star;
  double delta;
  double slack;  // delta - |psi* - psi|
};

struct VaalerReport {
  int H = 0;
  std::size_t points = 0;
  double max_violation = 0.0;  // max of |psi* - psi| - delta
  double argmax = 0.0;
  double min_delta = 0.0;
  std::vector<VaalerRow> rows;  // filled when requested
};

VaalerReport check_vaaler_inequality(int H, std::span<const double> grid, bool keep_rows = false);

// `uniform` equispaced points on [-1, 2), the integers -1..2, and every p/q
// in [0, 1] with q <= max_denominator.
std::vector<double> vaaler_grid(std::size_t uniform, int max_denominator = 20);

}  // namespace floorsum::vaaler
