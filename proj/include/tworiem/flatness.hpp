#pragma once

#include <array>
#include <string>
#include <vector>

#include "tworiem/metric.hpp"

namespace tworiem {

// Adaptive Simpson over any scalar ring: integrates f : [a,b] → S with the
// refinement decision taken on the largest jet component, so derivative
// parts converge along with values. Subdivision is capped at 2^max_depth
// intervals; the estimate at the cap is accepted.
template <class S, class F>
S adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 20) {
  struct Impl {
    F& fn;
    double tol;
    int max_depth;
    S recurse(double lo, double hi, const S& flo, const S& fmid, const S& fhi,
              const S& whole, int depth) {
      double mid = 0.5 * (lo + hi);
      double lq = 0.5 * (lo + mid), rq = 0.5 * (mid + hi);
      S flq = fn(lq), frq = fn(rq);
      S left = (flo + 4.0 * flq + fmid) * ((mid - lo) / 6.0);
      S right = (fmid + 4.0 * frq + fhi) * ((hi - mid) / 6.0);
      S sum = left + right;
      S err = sum - whole;
      if (depth >= max_depth ||
          ring::max_abs_component(err) <= 15.0 * tol)
        return sum + err * (1.0 / 15.0);
      return recurse(lo, mid, flo, flq, fmid, left, depth + 1) +
             recurse(mid, hi, fmid, frq, fhi, right, depth + 1);
    }
  };
  S fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  S whole = (fa + 4.0 * fm + fb) * ((b - a) / 6.0);
  Impl impl{f, tol, max_depth};
  return impl.recurse(a, b, fa, fm, fb, whole, 0);
}

// Local flattening map of a dimension-2 metric with coordinate expression
// G = g(∂x,∂x/∂y): u = x, v = ∫₀^y √G(x,t) dt. The integral is evaluated
// through the substitution t = yτ, making v a genuine ring evaluator whose
// jets carry the quadrature's own derivative error.
struct FlatteningMap2D {
  ScalarField u, v;
  Box box;
  double quad_tol = 0.0;

  VectorField as_map() const { return VectorField({u, v}); }

  // ∂(u,v)/∂(x,y) at p, via jets of the map itself.
  double jacobian(const Point& p) const;
};

FlatteningMap2D flatten_2d(const ScalarField& G, const Box& box,
                           double quad_tol = 1e-10);

// Max residual of g_ijk − Σ_{α<β} ∂(f^α,f^β)/∂(x^i,x^k)·∂(f^α,f^β)/∂(x^j,x^k)
// over all index triples and the given points.
double system_residual_3d(const std::array<ScalarField, 3>& f,
                          const TwoMetric& g, const std::vector<Point>& pts);

struct BeltramiReport {
  double max_residual = 0.0;
  double worst_condition = 0.0;  // Frobenius condition estimate of the g-matrix
};

// Max entry of |Dᵗf·Df − J(x,f)²·G(x)| with G(x) the inverse of the 3x3
// matrix assembled from the g_ijk component fields.
BeltramiReport beltrami_residual(const std::array<ScalarField, 3>& f,
                                 const TwoMetric& g,
                                 const std::vector<Point>& pts);

// Verdict of the conformal flatness classifier for λ·g^st on R³.
struct ConformalVerdict {
  enum class Kind { FlatConstant, FlatInversion, NonFlat };
  Kind kind = Kind::NonFlat;
  Point center{};             // fitted pole a (FlatInversion)
  double radius = 0.0;        // fitted r
  double fit_residual = 0.0;  // RMS of the linearized relation
  bool center_inside_box = false;  // diagnostic: fit succeeded but a ∈ box
  int samples_used = 0;

  std::string label() const {
    switch (kind) {
      case Kind::FlatConstant: return "FLAT-constant";
      case Kind::FlatInversion: return "FLAT-inversion";
      case Kind::NonFlat: return "NON-FLAT";
    }
    return "?";
  }
};

// Decides whether λ·g^st can be locally flat: constant λ is flat; otherwise
// λ must match the inversion family λ = (r⁴/|x−a|⁴)², detected by a linear
// least-squares fit of |x−a|² = r²·λ^{-1/4} over the samples.
ConformalVerdict classify_conformal_3d(const ScalarField& lambda, const Box& box,
                                       int samples, double fit_tol,
                                       std::uint64_t seedval = 42);

}  // namespace tworiem
