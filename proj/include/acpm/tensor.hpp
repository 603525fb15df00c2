#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace acpm {

enum class Variance : std::uint8_t { Lower, Upper };

// Dense multi-index array of real components at a point, with a variance
// marker per slot. Components are row-major over dim^rank entries.
class TensorValue {
public:
  TensorValue() = default;
  TensorValue(int dim, std::vector<Variance> variance);

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(variance_.size()); }
  const std::vector<Variance>& variance() const { return variance_; }

  double at(std::span<const int> idx) const { return c_[offset(idx)]; }
  double& at(std::span<const int> idx) { return c_[offset(idx)]; }

  template <class... I>
  double operator()(I... idx) const {
    const int a[] = {static_cast<int>(idx)...};
    return at(a);
  }
  template <class... I>
  double& operator()(I... idx) {
    const int a[] = {static_cast<int>(idx)...};
    return at(a);
  }

  // Rank-0 tensors hold a single scalar.
  double scalar() const { return c_[0]; }

  std::span<const double> data() const { return c_; }
  std::span<double> data() { return c_; }

  TensorValue& operator+=(const TensorValue& o);
  TensorValue& operator-=(const TensorValue& o);
  TensorValue& operator*=(double s);
  friend TensorValue operator+(TensorValue a, const TensorValue& b) { return a += b; }
  friend TensorValue operator-(TensorValue a, const TensorValue& b) { return a -= b; }
  friend TensorValue operator*(TensorValue a, double s) { return a *= s; }
  friend TensorValue operator*(double s, TensorValue a) { return a *= s; }

  double max_abs() const;

private:
  std::size_t offset(std::span<const int> idx) const;

  int dim_ = 0;
  std::vector<Variance> variance_;
  std::vector<double> c_{0.0};
};

struct MetricAtPoint {
  TensorValue g;        // (0,2), symmetric
  TensorValue g_inv;    // (2,0)
  double det = 0.0;
  int positive = 0;     // eigenvalue sign counts
  int negative = 0;
  double scale = 0.0;   // max |g_ij|, used for relative tolerances
};

// Inverse, determinant and signature of a symmetric (0,2) tensor.
// Throws DegenerateMetric when |det| < 1e-12 * scale^dim.
MetricAtPoint invert_metric(const TensorValue& g);

// Metric contraction of two slots. Slots of equal variance are paired
// through g or its inverse; mixed slots are a plain trace.
TensorValue contract(const TensorValue& t, int slot_a, int slot_b,
                     const MetricAtPoint& metric);

TensorValue raise_slot(const TensorValue& t, int slot, const MetricAtPoint& metric);
TensorValue lower_slot(const TensorValue& t, int slot, const MetricAtPoint& metric);

// Pseudo-orthonormal frame: g(E_a, E_b) = signs[a] * delta_ab.
struct Frame {
  std::vector<std::vector<double>> vectors;
  std::vector<int> signs;
};

// Gram-Schmidt with the indefinite inner product. Candidates whose
// orthogonalized squared norm falls below tolerance are skipped in favor of
// later pool members, so light-like pivots never enter the frame. When a
// non-light-like hint is supplied it becomes the first frame vector.
Frame build_frame(const MetricAtPoint& metric,
                  const std::vector<double>* hint = nullptr);

}  // namespace acpm
