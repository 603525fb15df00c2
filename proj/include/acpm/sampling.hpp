#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace acpm {

// Seeded generator with an explicit uint64 -> double mapping, so sampled
// points and directions are identical across platforms and runs.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double unit() {  // [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  std::vector<double> point_in_box(std::span<const double> lo,
                                   std::span<const double> hi) {
    std::vector<double> p(lo.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = uniform(lo[i], hi[i]);
    return p;
  }

  // Components uniform in [-1, 1].
  std::vector<double> direction(int dim) {
    std::vector<double> v(dim);
    for (double& x : v) x = uniform(-1.0, 1.0);
    return v;
  }

private:
  std::mt19937_64 gen_;
};

}  // namespace acpm
