#pragma once

#include <vector>

namespace acpm {

// Truncated Taylor expansion of a scalar field at a point: value, gradient,
// symmetric Hessian and symmetric third-order coefficients, up to order 3.
// Arithmetic propagates all retained derivatives exactly (forward mode), so
// curvature formulas built on jets carry no truncation error beyond
// floating-point rounding.
//
// Storage is a single packed array: [value | grad (dim) | upper-triangular
// Hessian | sorted third-order triples]. Blocks above `order` are absent.
class Jet {
public:
  Jet() = default;
  Jet(int dim, int order);  // zero jet

  static Jet constant(int dim, int order, double value);
  static Jet variable(int dim, int order, int index, double value);

  int dim() const { return dim_; }
  int order() const { return order_; }

  double value() const { return c_[0]; }
  double& value() { return c_[0]; }

  // Accessors sort their indices; mixed-order reads hit the same symmetric
  // coefficient. Reading a block above `order` is a logic error.
  double d1(int i) const;
  double d2(int i, int j) const;
  double d3(int i, int j, int k) const;
  double& d1(int i);
  double& d2(int i, int j);
  double& d3(int i, int j, int k);

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(double s);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator+(Jet a, double s) { a.value() += s; return a; }
  friend Jet operator+(double s, Jet a) { a.value() += s; return a; }
  friend Jet operator-(Jet a, double s) { a.value() -= s; return a; }
  friend Jet operator-(double s, const Jet& a) { Jet r = -a; r.value() += s; return r; }
  friend Jet operator/(Jet a, double s) { return a *= 1.0 / s; }
  friend Jet operator/(double s, const Jet& a);

  // Composition with a univariate function given its derivatives at value().
  Jet compose(double f0, double f1, double f2, double f3) const;

  static int coeff_count(int dim, int order);

private:
  void check_compatible(const Jet& o) const;

  int dim_ = 0;
  int order_ = 0;
  std::vector<double> c_{0.0};
};

Jet exp(const Jet& u);
Jet log(const Jet& u);
Jet sin(const Jet& u);
Jet cos(const Jet& u);
Jet sinh(const Jet& u);
Jet cosh(const Jet& u);
Jet sqrt(const Jet& u);
Jet pow_int(const Jet& u, int n);

// Jet of the partial derivative field: order drops by one.
Jet derivative(const Jet& u, int i);

// Copy truncated to at most `order`.
Jet truncate(const Jet& u, int order);

}  // namespace acpm
