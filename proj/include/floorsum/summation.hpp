#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace floorsum {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double v) {
    add(v);
    return *this;
  }
  CompensatedSum& operator+=(const CompensatedSum& other) {
    add(other.sum_);
    add(other.comp_);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexCompensatedSum {
 public:
  void add(std::complex<double> v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  ComplexCompensatedSum& operator+=(std::complex<double> v) {
    add(v);
    return *this;
  }
  ComplexCompensatedSum& operator+=(const ComplexCompensatedSum& other) {
    re_ += other.re_;
    im_ += other.im_;
    return *this;
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

// Closed interval of doubles whose arithmetic widens outward by one ulp per
// operation, so an enclosure of the exact real result survives rounding.
struct Enclosure {
  double lo = 0.0;
  double hi = 0.0;

  static constexpr double kInf = std::numeric_limits<double>::infinity();

  static double down(double v, int ulps = 1) {
    for (int i = 0; i < ulps; ++i) v = std::nextafter(v, -kInf);
    return v;
  }
  static double up(double v, int ulps = 1) {
    for (int i = 0; i < ulps; ++i) v = std::nextafter(v, kInf);
    return v;
  }
  // A value computed with a few roundings of error, widened by `ulps`.
  static Enclosure around(double v, int ulps) { return {down(v, ulps), up(v, ulps)}; }

  Enclosure& operator+=(const Enclosure& o) {
    lo = down(lo + o.lo);
    hi = up(hi + o.hi);
    return *this;
  }
  double width() const { return hi - lo; }
};

}  // namespace floorsum
