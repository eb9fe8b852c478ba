#pragma once

// Monotone piecewise-cubic Hermite interpolant (Fritsch-Carlson slopes via
// Boost.Math pchip), extended linearly outside the node range.

#include <math.h>  // pchip calls unqualified isnan

#include <boost/math/interpolators/pchip.hpp>

#include <vector>

namespace radial::detail {

class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y)
      : x_front_(x.front()),
        x_back_(x.back()),
        y_front_(y.front()),
        y_back_(y.back()),
        left_slope_((y[1] - y[0]) / (x[1] - x[0])),
        right_slope_((y[y.size() - 1] - y[y.size() - 2]) / (x[x.size() - 1] - x[x.size() - 2])),
        spline_(std::move(x), std::move(y)) {}

  double operator()(double t) const {
    if (t <= x_front_) return y_front_ + left_slope_ * (t - x_front_);
    if (t >= x_back_) return y_back_ + right_slope_ * (t - x_back_);
    return spline_(t);
  }

  double prime(double t) const {
    if (t < x_front_) return left_slope_;
    if (t > x_back_) return right_slope_;
    return spline_.prime(t);
  }

  double x_front() const { return x_front_; }
  double x_back() const { return x_back_; }

 private:
  double x_front_;
  double x_back_;
  double y_front_;
  double y_back_;
  double left_slope_;
  double right_slope_;
  boost::math::interpolators::pchip<std::vector<double>> spline_;
};

}  // namespace radial::detail
