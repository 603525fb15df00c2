#include "acpm/tensor.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "acpm/errors.hpp"

namespace acpm {

namespace {

std::size_t pow_size(int dim, int rank) {
  std::size_t n = 1;
  for (int i = 0; i < rank; ++i) n *= static_cast<std::size_t>(dim);
  return n;
}

}  // namespace

TensorValue::TensorValue(int dim, std::vector<Variance> variance)
    : dim_(dim), variance_(std::move(variance)) {
  if (dim < 1) throw std::invalid_argument("tensor: dim must be >= 1");
  c_.assign(pow_size(dim, rank()), 0.0);
}

std::size_t TensorValue::offset(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != rank())
    throw std::invalid_argument("tensor: index count does not match rank");
  std::size_t off = 0;
  for (int i : idx) {
    if (i < 0 || i >= dim_) throw std::out_of_range("tensor index out of range");
    off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  }
  return off;
}

TensorValue& TensorValue::operator+=(const TensorValue& o) {
  if (dim_ != o.dim_ || variance_ != o.variance_)
    throw std::invalid_argument("tensor: shape mismatch in addition");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

TensorValue& TensorValue::operator-=(const TensorValue& o) {
  if (dim_ != o.dim_ || variance_ != o.variance_)
    throw std::invalid_argument("tensor: shape mismatch in subtraction");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

TensorValue& TensorValue::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

double TensorValue::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

MetricAtPoint invert_metric(const TensorValue& g) {
  if (g.rank() != 2 || g.variance()[0] != Variance::Lower ||
      g.variance()[1] != Variance::Lower)
    throw InvalidSlots("invert_metric expects a (0,2) tensor");
  const int d = g.dim();
  const double scale = g.max_abs();

  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = g(i, j);
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9 * std::max(scale, 1.0))
    throw std::invalid_argument("invert_metric: tensor is not symmetric");

  double det_threshold = 1e-12;
  for (int i = 0; i < d; ++i) det_threshold *= scale;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  const double det = lu.determinant();
  if (scale == 0.0 || std::abs(det) < det_threshold)
    throw DegenerateMetric("metric is numerically degenerate (|det| = " +
                           std::to_string(std::abs(det)) + ")");

  Eigen::MatrixXd inv = lu.inverse();
  MetricAtPoint out;
  out.g = g;
  out.g_inv = TensorValue(d, {Variance::Upper, Variance::Upper});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out.g_inv(i, j) = inv(i, j);
  out.det = det;
  out.scale = scale;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  for (int i = 0; i < d; ++i) {
    if (eig.eigenvalues()[i] > 0.0)
      ++out.positive;
    else
      ++out.negative;
  }
  return out;
}

namespace {

// Walks all multi-indices of the given rank.
bool advance(std::vector<int>& idx, int dim) {
  for (int i = static_cast<int>(idx.size()) - 1; i >= 0; --i) {
    if (++idx[i] < dim) return true;
    idx[i] = 0;
  }
  return false;
}

}  // namespace

TensorValue contract(const TensorValue& t, int slot_a, int slot_b,
                     const MetricAtPoint& metric) {
  const int r = t.rank();
  if (r < 2) throw InvalidSlots("contract needs rank >= 2");
  if (slot_a == slot_b || slot_a < 0 || slot_b < 0 || slot_a >= r || slot_b >= r)
    throw InvalidSlots("contract: invalid slot pair");
  if (slot_a > slot_b) std::swap(slot_a, slot_b);

  const int d = t.dim();
  const Variance va = t.variance()[slot_a];
  const Variance vb = t.variance()[slot_b];
  const bool mixed = va != vb;
  // Equal variance: pair through g (upper slots) or its inverse (lower slots).
  const TensorValue* weight = nullptr;
  if (!mixed) weight = va == Variance::Lower ? &metric.g_inv : &metric.g;

  std::vector<Variance> out_var;
  for (int s = 0; s < r; ++s)
    if (s != slot_a && s != slot_b) out_var.push_back(t.variance()[s]);
  TensorValue out(d, out_var);

  std::vector<int> out_idx(out_var.size(), 0);
  std::vector<int> full(r, 0);
  do {
    int w = 0;
    for (int s = 0; s < r; ++s)
      if (s != slot_a && s != slot_b) full[s] = out_idx[w++];
    double sum = 0.0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        if (mixed && a != b) continue;
        full[slot_a] = a;
        full[slot_b] = b;
        const double v = t.at(full);
        sum += mixed ? v : (*weight)(a, b) * v;
      }
    out.at(out_idx) = sum;
  } while (advance(out_idx, d));
  return out;
}

namespace {

TensorValue apply_metric_to_slot(const TensorValue& t, int slot,
                                 const TensorValue& w, Variance from,
                                 Variance to, const char* op) {
  const int r = t.rank();
  if (slot < 0 || slot >= r) throw InvalidSlots("slot out of range");
  if (t.variance()[slot] != from)
    throw InvalidSlots(std::string(op) + ": slot has the wrong variance");
  const int d = t.dim();
  std::vector<Variance> out_var = t.variance();
  out_var[slot] = to;
  TensorValue out(d, out_var);
  std::vector<int> idx(r, 0);
  std::vector<int> src(r, 0);
  do {
    double sum = 0.0;
    src = idx;
    for (int a = 0; a < d; ++a) {
      src[slot] = a;
      sum += w(idx[slot], a) * t.at(src);
    }
    out.at(idx) = sum;
  } while (advance(idx, d));
  return out;
}

}  // namespace

TensorValue raise_slot(const TensorValue& t, int slot, const MetricAtPoint& m) {
  return apply_metric_to_slot(t, slot, m.g_inv, Variance::Lower, Variance::Upper,
                              "raise_slot");
}

TensorValue lower_slot(const TensorValue& t, int slot, const MetricAtPoint& m) {
  return apply_metric_to_slot(t, slot, m.g, Variance::Upper, Variance::Lower,
                              "lower_slot");
}

namespace {

double inner(const TensorValue& g, const std::vector<double>& u,
             const std::vector<double>& v) {
  const int d = g.dim();
  double s = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) s += g(i, j) * u[i] * v[j];
  return s;
}

double norm2_euclid(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

}  // namespace

Frame build_frame(const MetricAtPoint& metric, const std::vector<double>* hint) {
  const int d = metric.g.dim();
  constexpr double kLightLikeTol = 1e-8;

  std::vector<std::vector<double>> pool;
  if (hint && static_cast<int>(hint->size()) == d && norm2_euclid(*hint) > 0.0)
    pool.push_back(*hint);
  for (int i = 0; i < d; ++i) {
    std::vector<double> e(d, 0.0);
    e[i] = 1.0;
    pool.push_back(e);
  }

  Frame frame;
  std::vector<bool> used(pool.size(), false);
  while (static_cast<int>(frame.vectors.size()) < d) {
    bool accepted = false;
    for (std::size_t c = 0; c < pool.size() && !accepted; ++c) {
      if (used[c]) continue;
      std::vector<double> w = pool[c];
      for (std::size_t a = 0; a < frame.vectors.size(); ++a) {
        const double coef =
            frame.signs[a] * inner(metric.g, w, frame.vectors[a]);
        for (int i = 0; i < d; ++i) w[i] -= coef * frame.vectors[a][i];
      }
      const double n2 = inner(metric.g, w, w);
      const double row_scale =
          std::max(metric.scale * norm2_euclid(w), 1e-300);
      if (std::abs(n2) < kLightLikeTol * row_scale) continue;  // light-like pivot
      const double inv_norm = 1.0 / std::sqrt(std::abs(n2));
      for (double& x : w) x *= inv_norm;
      frame.vectors.push_back(std::move(w));
      frame.signs.push_back(n2 > 0.0 ? 1 : -1);
      used[c] = true;
      accepted = true;
    }
    if (!accepted)
      throw FrameFailure("no non-light-like pivot left in the candidate pool");
  }
  return frame;
}

}  // namespace acpm
