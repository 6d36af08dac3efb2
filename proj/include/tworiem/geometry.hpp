#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "tworiem/errors.hpp"
#include "tworiem/jet.hpp"

namespace tworiem {

inline constexpr int kMaxDim = 3;

// Fixed-capacity coordinate/tangent vector over any scalar ring.
// Dimensions handled by the library are 1, 2 and 3.
template <class S>
struct Vec {
  std::array<S, kMaxDim> comp{};
  int n = 0;

  Vec() = default;
  explicit Vec(int dim) : n(dim) {
    for (int i = 0; i < n; ++i) comp[i] = ring::zero<S>();
  }
  Vec(std::initializer_list<S> xs) {
    n = 0;
    for (const S& x : xs) comp[n++] = x;
  }

  int size() const { return n; }
  S& operator[](int i) { return comp[static_cast<std::size_t>(i)]; }
  const S& operator[](int i) const { return comp[static_cast<std::size_t>(i)]; }
};

using Point = Vec<double>;

inline Point make_point(const std::vector<double>& xs) {
  if (xs.size() < 1 || xs.size() > kMaxDim)
    throw Error("point dimension must be 1, 2 or 3");
  Point p(static_cast<int>(xs.size()));
  for (int i = 0; i < p.n; ++i) p[i] = xs[static_cast<std::size_t>(i)];
  return p;
}

// Axis-aligned open box in R^n: the common domain of every field in a
// scenario.
struct Box {
  int dim = 0;
  std::array<double, kMaxDim> lo{};
  std::array<double, kMaxDim> hi{};

  Box() = default;
  Box(std::initializer_list<std::pair<double, double>> axes) {
    dim = 0;
    for (auto [a, b] : axes) {
      lo[static_cast<std::size_t>(dim)] = a;
      hi[static_cast<std::size_t>(dim)] = b;
      ++dim;
    }
  }

  bool contains(const Point& p) const {
    if (p.n != dim) return false;
    for (int i = 0; i < dim; ++i) {
      auto k = static_cast<std::size_t>(i);
      if (!(p[i] > lo[k] && p[i] < hi[k])) return false;
    }
    return true;
  }
};

// Deterministic uniform sampling. std::uniform_real_distribution output is
// implementation-defined, which would break byte-identical reports; the
// 53-bit mapping below is pinned.
class Rng {
 public:
  explicit Rng(std::uint64_t s) : engine_(s) {}

  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }
  // integer in [0, m)
  std::uint64_t index(std::uint64_t m) { return engine_() % m; }

  Point point_in(const Box& box, double margin = 0.0) {
    Point p(box.dim);
    for (int i = 0; i < box.dim; ++i) {
      auto k = static_cast<std::size_t>(i);
      double span = box.hi[k] - box.lo[k];
      p[i] = uniform(box.lo[k] + margin * span, box.hi[k] - margin * span);
    }
    return p;
  }

 private:
  std::mt19937_64 engine_;
};

// Interior sample set: explicit scenario points plus seeded random draws,
// slightly inset from the boundary so jets of boundary-singular expressions
// stay evaluable.
inline std::vector<Point> sample_points(const Box& box, int count,
                                        std::uint64_t seedval,
                                        const std::vector<Point>& fixed = {}) {
  std::vector<Point> pts = fixed;
  Rng rng(seedval);
  for (int i = 0; i < count; ++i) pts.push_back(rng.point_in(box, 0.05));
  return pts;
}

}  // namespace tworiem
