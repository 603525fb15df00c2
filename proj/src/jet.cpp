#include "acpm/jet.hpp"

#include <cmath>
#include <stdexcept>

#include "acpm/errors.hpp"

namespace acpm {

namespace {

int pair_count(int d) { return d * (d + 1) / 2; }
int triple_count(int d) { return d * (d + 1) * (d + 2) / 6; }

void sort2(int& i, int& j) {
  if (i > j) std::swap(i, j);
}

void sort3(int& i, int& j, int& k) {
  if (i > j) std::swap(i, j);
  if (j > k) std::swap(j, k);
  if (i > j) std::swap(i, j);
}

// Index of (i,j), i <= j, in the row-major upper triangle of a d x d block.
int pair_index(int i, int j, int d) { return i * (2 * d - i - 1) / 2 + j; }

// Index of (i,j,k), i <= j <= k, among sorted triples over d coordinates.
int triple_index(int i, int j, int k, int d) {
  int base = 0;
  for (int a = 0; a < i; ++a) base += pair_count(d - a);
  return base + pair_index(j - i, k - i, d - i);
}

}  // namespace

int Jet::coeff_count(int dim, int order) {
  int n = 1;
  if (order >= 1) n += dim;
  if (order >= 2) n += pair_count(dim);
  if (order >= 3) n += triple_count(dim);
  return n;
}

Jet::Jet(int dim, int order) : dim_(dim), order_(order) {
  if (dim < 0 || order < 0 || order > 3)
    throw std::invalid_argument("jet: dim must be >= 0 and order in 0..3");
  c_.assign(coeff_count(dim, order), 0.0);
}

Jet Jet::constant(int dim, int order, double value) {
  Jet j(dim, order);
  j.c_[0] = value;
  return j;
}

Jet Jet::variable(int dim, int order, int index, double value) {
  Jet j(dim, order);
  j.c_[0] = value;
  if (order >= 1) j.c_[1 + index] = 1.0;
  return j;
}

double Jet::d1(int i) const {
  return c_[1 + i];
}

double& Jet::d1(int i) {
  return c_[1 + i];
}

double Jet::d2(int i, int j) const {
  sort2(i, j);
  return c_[1 + dim_ + pair_index(i, j, dim_)];
}

double& Jet::d2(int i, int j) {
  sort2(i, j);
  return c_[1 + dim_ + pair_index(i, j, dim_)];
}

double Jet::d3(int i, int j, int k) const {
  sort3(i, j, k);
  return c_[1 + dim_ + pair_count(dim_) + triple_index(i, j, k, dim_)];
}

double& Jet::d3(int i, int j, int k) {
  sort3(i, j, k);
  return c_[1 + dim_ + pair_count(dim_) + triple_index(i, j, k, dim_)];
}

void Jet::check_compatible(const Jet& o) const {
  if (dim_ != o.dim_ || order_ != o.order_)
    throw std::invalid_argument("jet: operands differ in dim or order");
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (double& v : r.c_) v = -v;
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  a.check_compatible(b);
  const int d = a.dim_, o = a.order_;
  Jet w(d, o);
  const double a0 = a.value(), b0 = b.value();
  w.value() = a0 * b0;
  if (o >= 1)
    for (int i = 0; i < d; ++i) w.d1(i) = a.d1(i) * b0 + a0 * b.d1(i);
  if (o >= 2)
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j)
        w.d2(i, j) = a.d2(i, j) * b0 + a.d1(i) * b.d1(j) + a.d1(j) * b.d1(i) +
                     a0 * b.d2(i, j);
  if (o >= 3)
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j)
        for (int k = j; k < d; ++k)
          w.d3(i, j, k) = a.d3(i, j, k) * b0 + a.d2(i, j) * b.d1(k) +
                          a.d2(i, k) * b.d1(j) + a.d2(j, k) * b.d1(i) +
                          a.d1(i) * b.d2(j, k) + a.d1(j) * b.d2(i, k) +
                          a.d1(k) * b.d2(i, j) + a0 * b.d3(i, j, k);
  return w;
}

Jet Jet::compose(double f0, double f1, double f2, double f3) const {
  const int d = dim_, o = order_;
  Jet w(d, o);
  w.value() = f0;
  if (o >= 1)
    for (int i = 0; i < d; ++i) w.d1(i) = f1 * d1(i);
  if (o >= 2)
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j)
        w.d2(i, j) = f1 * d2(i, j) + f2 * d1(i) * d1(j);
  if (o >= 3)
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j)
        for (int k = j; k < d; ++k)
          w.d3(i, j, k) = f1 * d3(i, j, k) +
                          f2 * (d1(i) * d2(j, k) + d1(j) * d2(i, k) +
                                d1(k) * d2(i, j)) +
                          f3 * d1(i) * d1(j) * d1(k);
  return w;
}

namespace {

Jet reciprocal(const Jet& v) {
  const double x = v.value();
  if (x == 0.0) throw DomainError("division by zero at sample point");
  const double ix = 1.0 / x;
  return v.compose(ix, -ix * ix, 2.0 * ix * ix * ix, -6.0 * ix * ix * ix * ix);
}

}  // namespace

Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

Jet operator/(double s, const Jet& a) { return reciprocal(a) * s; }

Jet exp(const Jet& u) {
  const double e = std::exp(u.value());
  return u.compose(e, e, e, e);
}

Jet log(const Jet& u) {
  const double x = u.value();
  if (x <= 0.0) throw DomainError("log of non-positive value");
  const double ix = 1.0 / x;
  return u.compose(std::log(x), ix, -ix * ix, 2.0 * ix * ix * ix);
}

Jet sin(const Jet& u) {
  const double s = std::sin(u.value()), c = std::cos(u.value());
  return u.compose(s, c, -s, -c);
}

Jet cos(const Jet& u) {
  const double s = std::sin(u.value()), c = std::cos(u.value());
  return u.compose(c, -s, -c, s);
}

Jet sinh(const Jet& u) {
  const double s = std::sinh(u.value()), c = std::cosh(u.value());
  return u.compose(s, c, s, c);
}

Jet cosh(const Jet& u) {
  const double s = std::sinh(u.value()), c = std::cosh(u.value());
  return u.compose(c, s, c, s);
}

Jet sqrt(const Jet& u) {
  const double x = u.value();
  if (x <= 0.0) throw DomainError("sqrt of non-positive value");
  const double s = std::sqrt(x);
  return u.compose(s, 0.5 / s, -0.25 / (s * x), 0.375 / (s * x * x));
}

Jet pow_int(const Jet& u, int n) {
  if (n == 0) return Jet::constant(u.dim(), u.order(), 1.0);
  if (n < 0) {
    if (u.value() == 0.0) throw DomainError("zero raised to a negative power");
    return pow_int(reciprocal(u), -n);
  }
  // Exponentiation by squaring keeps integer powers exact at any base value.
  Jet result = Jet::constant(u.dim(), u.order(), 1.0);
  Jet base = u;
  for (unsigned m = static_cast<unsigned>(n); m != 0; m >>= 1u) {
    if (m & 1u) result = result * base;
    if (m > 1u) base = base * base;
  }
  return result;
}

Jet derivative(const Jet& u, int i) {
  if (u.order() < 1)
    throw std::invalid_argument("jet derivative needs order >= 1");
  const int d = u.dim();
  Jet w(d, u.order() - 1);
  w.value() = u.d1(i);
  if (w.order() >= 1)
    for (int j = 0; j < d; ++j) w.d1(j) = u.d2(i, j);
  if (w.order() >= 2)
    for (int j = 0; j < d; ++j)
      for (int k = j; k < d; ++k) w.d2(j, k) = u.d3(i, j, k);
  return w;
}

Jet truncate(const Jet& u, int order) {
  if (order >= u.order()) return u;
  const int d = u.dim();
  Jet w(d, order);
  w.value() = u.value();
  if (order >= 1)
    for (int i = 0; i < d; ++i) w.d1(i) = u.d1(i);
  if (order >= 2)
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) w.d2(i, j) = u.d2(i, j);
  return w;
}

}  // namespace acpm
