#pragma once

#include <cmath>

#include "prpairs/types.hpp"

namespace prp {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  void merge(const CompensatedSum& o) {
    add(o.sum_);
    add(o.comp_);
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexSum {
 public:
  void add(Complex z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  void merge(const ComplexSum& o) {
    re_.merge(o.re_);
    im_.merge(o.im_);
  }
  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_, im_;
};

}  // namespace prp
