#pragma once

#include <functional>
#include <memory>
#include <tuple>
#include <utility>
#include <vector>

#include "tworiem/expr.hpp"
#include "tworiem/geometry.hpp"
#include "tworiem/jet.hpp"

namespace tworiem {

// Evaluation rings form a fixed tower: level 0 is double, level K wraps
// level K-1 in a Jet. Every scalar field is evaluable at all levels up to
// its remaining depth; taking a directional derivative consumes one level.
// Depth 5 leaves headroom over the deepest chain the library builds
// (curvature of pushed-forward fields needs 4).
inline constexpr int kJetTowerDepth = 5;

template <int K>
struct RingAt {
  using type = Jet<typename RingAt<K - 1>::type>;
};
template <>
struct RingAt<0> {
  using type = double;
};
template <int K>
using ring_t = typename RingAt<K>::type;

namespace detail {

template <int K>
using EvalFn = std::function<ring_t<K>(const Vec<ring_t<K>>&)>;

template <class Seq>
struct FnTupleOf;
template <std::size_t... Ks>
struct FnTupleOf<std::index_sequence<Ks...>> {
  using type = std::tuple<EvalFn<static_cast<int>(Ks)>...>;
};
using FnTuple =
    typename FnTupleOf<std::make_index_sequence<kJetTowerDepth + 1>>::type;

struct FieldImpl {
  int dim = 0;
  int depth = 0;  // deepest ring level at which evaluation is defined
  FnTuple fns;
};

}  // namespace detail

// Coordinate-expression- or closure-backed smooth scalar function on an
// open box in R^n. Cheap to copy; immutable after construction; evaluation
// at distinct points is safe concurrently.
class ScalarField {
 public:
  ScalarField() = default;

  bool empty() const { return impl_ == nullptr; }
  int dim() const { return impl_ ? impl_->dim : 0; }
  int depth() const { return impl_ ? impl_->depth : 0; }

  template <int K>
  ring_t<K> eval(const Vec<ring_t<K>>& p) const {
    static_assert(K >= 0 && K <= kJetTowerDepth);
    if (!impl_) throw Error("evaluation of an empty scalar field");
    if (K > impl_->depth)
      throw Error("scalar field evaluated beyond its jet depth");
    return std::get<static_cast<std::size_t>(K)>(impl_->fns)(p);
  }

  double at(const Point& p) const { return eval<0>(p); }

  // f must accept (std::integral_constant<int, K>, const Vec<ring_t<K>>&)
  // for every level K of the tower and return ring_t<K>.
  template <class F>
  static ScalarField from_levels(int dim, int depth, F f) {
    auto impl = std::make_shared<detail::FieldImpl>();
    impl->dim = dim;
    impl->depth = depth < 0 ? 0 : std::min(depth, kJetTowerDepth);
    [&]<std::size_t... Ks>(std::index_sequence<Ks...>) {
      ((std::get<Ks>(impl->fns) =
            [f](const Vec<ring_t<static_cast<int>(Ks)>>& p) {
              return f(std::integral_constant<int, static_cast<int>(Ks)>{}, p);
            }),
       ...);
    }(std::make_index_sequence<kJetTowerDepth + 1>{});
    ScalarField out;
    out.impl_ = std::move(impl);
    return out;
  }

  static ScalarField from_expr(const Expr& e) {
    return from_levels(e.dimension(), kJetTowerDepth,
                       [e](auto /*lvl*/, const auto& p) {
                         using S = std::decay_t<decltype(p[0])>;
                         return e.template evaluate<S>(p);
                       });
  }

  static ScalarField constant(int dim, double c) {
    return from_levels(dim, kJetTowerDepth, [c](auto /*lvl*/, const auto& p) {
      using S = std::decay_t<decltype(p[0])>;
      (void)p;
      return ring::constant<S>(c);
    });
  }

  static ScalarField coordinate(int dim, int axis) {
    if (axis < 0 || axis >= dim) throw Error("coordinate axis out of range");
    return from_levels(dim, kJetTowerDepth,
                       [axis](auto /*lvl*/, const auto& p) { return p[axis]; });
  }

  bool same_impl(const ScalarField& o) const { return impl_ == o.impl_; }

 private:
  std::shared_ptr<const detail::FieldImpl> impl_;
};

namespace detail {

template <class Op>
ScalarField pointwise2(const ScalarField& a, const ScalarField& b, Op op) {
  if (a.dim() != b.dim()) throw Error("field dimension mismatch");
  return ScalarField::from_levels(
      a.dim(), std::min(a.depth(), b.depth()),
      [a, b, op](auto lvl, const auto& p) {
        constexpr int K = decltype(lvl)::value;
        return op(a.template eval<K>(p), b.template eval<K>(p));
      });
}

template <class Op>
ScalarField pointwise1(const ScalarField& a, Op op) {
  return ScalarField::from_levels(a.dim(), a.depth(),
                                  [a, op](auto lvl, const auto& p) {
                                    constexpr int K = decltype(lvl)::value;
                                    return op(a.template eval<K>(p));
                                  });
}

}  // namespace detail

inline ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return detail::pointwise2(a, b, [](const auto& x, const auto& y) { return x + y; });
}
inline ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return detail::pointwise2(a, b, [](const auto& x, const auto& y) { return x - y; });
}
inline ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  return detail::pointwise2(a, b, [](const auto& x, const auto& y) { return x * y; });
}
inline ScalarField operator/(const ScalarField& a, const ScalarField& b) {
  return detail::pointwise2(a, b, [](const auto& x, const auto& y) { return x * recip(y); });
}
inline ScalarField operator*(double c, const ScalarField& a) {
  return detail::pointwise1(a, [c](const auto& x) { return x * c; });
}
inline ScalarField operator*(const ScalarField& a, double c) { return c * a; }
inline ScalarField operator-(const ScalarField& a) { return -1.0 * a; }
inline ScalarField operator+(const ScalarField& a, double c) {
  return detail::pointwise1(a, [c](const auto& x) { return x + c; });
}

inline ScalarField ln_field(const ScalarField& a) {
  return detail::pointwise1(a, [](const auto& x) { return ln(x); });
}
inline ScalarField sqrt_field(const ScalarField& a) {
  return detail::pointwise1(a, [](const auto& x) { return sqrt_checked(x); });
}
inline ScalarField recip_field(const ScalarField& a) {
  return detail::pointwise1(a, [](const auto& x) { return recip(x); });
}
inline ScalarField exp_field(const ScalarField& a) {
  return detail::pointwise1(a, [](const auto& x) { return exp(x); });
}

// Tangent vector field: one component scalar field per coordinate axis.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::vector<ScalarField> comps)
      : comps_(std::move(comps)) {
    if (comps_.empty() || comps_.size() > kMaxDim)
      throw Error("vector field needs 1 to 3 components");
    for (const auto& c : comps_)
      if (c.dim() != dim()) throw Error("component dimension mismatch");
  }

  int dim() const { return static_cast<int>(comps_.size()); }
  int depth() const {
    int d = kJetTowerDepth;
    for (const auto& c : comps_) d = std::min(d, c.depth());
    return d;
  }
  bool empty() const { return comps_.empty(); }

  const ScalarField& operator[](int i) const {
    return comps_[static_cast<std::size_t>(i)];
  }

  template <int K>
  Vec<ring_t<K>> eval(const Vec<ring_t<K>>& p) const {
    Vec<ring_t<K>> v(dim());
    for (int i = 0; i < dim(); ++i)
      v[i] = comps_[static_cast<std::size_t>(i)].template eval<K>(p);
    return v;
  }

  Vec<double> at(const Point& p) const { return eval<0>(p); }

  static VectorField constant(int dim, const Point& v) {
    std::vector<ScalarField> cs;
    for (int i = 0; i < dim; ++i)
      cs.push_back(ScalarField::constant(dim, v[i]));
    return VectorField(std::move(cs));
  }

  static VectorField zero(int dim) {
    Point v(dim);
    return constant(dim, v);
  }

  bool same_impl(const VectorField& o) const {
    if (dim() != o.dim()) return false;
    for (int i = 0; i < dim(); ++i)
      if (!comps_[static_cast<std::size_t>(i)].same_impl(o[i])) return false;
    return true;
  }

 private:
  std::vector<ScalarField> comps_;
};

inline VectorField operator+(const VectorField& a, const VectorField& b) {
  std::vector<ScalarField> cs;
  for (int i = 0; i < a.dim(); ++i) cs.push_back(a[i] + b[i]);
  return VectorField(std::move(cs));
}
inline VectorField operator-(const VectorField& a, const VectorField& b) {
  std::vector<ScalarField> cs;
  for (int i = 0; i < a.dim(); ++i) cs.push_back(a[i] - b[i]);
  return VectorField(std::move(cs));
}
inline VectorField operator*(const ScalarField& f, const VectorField& a) {
  std::vector<ScalarField> cs;
  for (int i = 0; i < a.dim(); ++i) cs.push_back(f * a[i]);
  return VectorField(std::move(cs));
}
inline VectorField operator*(double c, const VectorField& a) {
  std::vector<ScalarField> cs;
  for (int i = 0; i < a.dim(); ++i) cs.push_back(c * a[i]);
  return VectorField(std::move(cs));
}
inline VectorField operator-(const VectorField& a) { return -1.0 * a; }

// ∂f/∂x_axis as a field, one jet level deep.
inline ScalarField partial_derivative(const ScalarField& f, int axis) {
  if (axis < 0 || axis >= f.dim()) throw Error("partial axis out of range");
  return ScalarField::from_levels(
      f.dim(), f.depth() - 1, [f, axis](auto lvl, const auto& p) {
        constexpr int K = decltype(lvl)::value;
        using S = ring_t<K>;
        if constexpr (K + 1 <= kJetTowerDepth) {
          using JS = ring_t<K + 1>;
          Vec<JS> jp(f.dim());
          for (int j = 0; j < f.dim(); ++j)
            jp[j] = JS(p[j], j == axis ? ring::one<S>() : ring::zero<S>());
          return f.template eval<K + 1>(jp).deriv;
        } else {
          throw Error("jet tower depth exceeded");
          return ring::zero<S>();
        }
      });
}

// X(f): p ↦ Σ_i X_i(p) ∂f/∂x_i(p). The result is itself jet-capable, which
// is what makes nested derivatives like X(Y(f)) available.
inline ScalarField directional_derivative(const VectorField& X,
                                          const ScalarField& f) {
  if (X.dim() != f.dim()) throw Error("dimension mismatch in X(f)");
  const int n = f.dim();
  return ScalarField::from_levels(
      n, std::min(X.depth(), f.depth() - 1),
      [X, f, n](auto lvl, const auto& p) {
        constexpr int K = decltype(lvl)::value;
        using S = ring_t<K>;
        if constexpr (K + 1 <= kJetTowerDepth) {
          using JS = ring_t<K + 1>;
          Vec<JS> jp(n);
          for (int j = 0; j < n; ++j)
            jp[j] = JS(p[j], ring::zero<S>());
          S acc = ring::zero<S>();
          for (int i = 0; i < n; ++i) {
            jp[i].deriv = ring::one<S>();
            acc += X[i].template eval<K>(p) * f.template eval<K + 1>(jp).deriv;
            jp[i].deriv = ring::zero<S>();
          }
          return acc;
        } else {
          throw Error("jet tower depth exceeded");
          return ring::zero<S>();
        }
      });
}

// [X,Y]: component i is X(Y_i) − Y(X_i).
inline VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
  if (X.dim() != Y.dim()) throw Error("dimension mismatch in [X,Y]");
  std::vector<ScalarField> cs;
  for (int i = 0; i < X.dim(); ++i)
    cs.push_back(directional_derivative(X, Y[i]) -
                 directional_derivative(Y, X[i]));
  return VectorField(std::move(cs));
}

inline ScalarField divergence(const VectorField& X) {
  ScalarField acc = partial_derivative(X[0], 0);
  for (int i = 1; i < X.dim(); ++i)
    acc = acc + partial_derivative(X[i], i);
  return acc;
}

// The vector-valued 2-form of a scalar: df(X,Y) = df(Y)·X − df(X)·Y.
inline VectorField df_two_form(const ScalarField& f, const VectorField& X,
                               const VectorField& Y) {
  return directional_derivative(Y, f) * X - directional_derivative(X, f) * Y;
}

// f ∘ φ for a coordinate map given componentwise.
inline ScalarField compose(const ScalarField& f, const VectorField& phi) {
  if (f.dim() != phi.dim()) throw Error("dimension mismatch in composition");
  return ScalarField::from_levels(
      phi.dim(), std::min(f.depth(), phi.depth()),
      [f, phi](auto lvl, const auto& p) {
        constexpr int K = decltype(lvl)::value;
        return f.template eval<K>(phi.template eval<K>(p));
      });
}

}  // namespace tworiem
