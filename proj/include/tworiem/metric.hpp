#pragma once

#include <memory>
#include <vector>

#include "tworiem/field.hpp"
#include "tworiem/twoinner.hpp"

namespace tworiem {

// δ_ijk = δ_ij − δ_ik·δ_jk, the components of the standard metric on the
// standard basis. Indices are 1-based.
inline double delta_ijk(int i, int j, int k) {
  if (i < 1 || i > 3 || j < 1 || j > 3 || k < 1 || k > 3)
    throw IndexOutOfRange("delta_ijk indices must be in 1..3");
  auto d = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  return d(i, j) - d(i, k) * d(j, k);
}

// Assignment of a 2-inner product to every point of an open box in R^n.
// Four representations: the standard metric, a simple metric generated by a
// field of inner products, a conformal rescaling of a base metric, and a raw
// component table (one field in dimension 2, nine in dimension 3).
class TwoMetric {
 public:
  enum class Kind { Standard, Simple, Conformal, Table2, Table3 };

  TwoMetric() = default;

  static TwoMetric standard(int dim) {
    if (dim < 2 || dim > kMaxDim) throw Error("metric dimension must be 2 or 3");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Standard;
    impl->dim = dim;
    impl->depth = kJetTowerDepth;
    return TwoMetric(std::move(impl));
  }

  static TwoMetric simple(std::vector<std::vector<ScalarField>> h) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Simple;
    impl->dim = static_cast<int>(h.size());
    if (impl->dim < 2 || impl->dim > kMaxDim)
      throw Error("metric dimension must be 2 or 3");
    impl->depth = kJetTowerDepth;
    for (int i = 0; i < impl->dim; ++i) {
      if (static_cast<int>(h[static_cast<std::size_t>(i)].size()) != impl->dim)
        throw Error("inner-product matrix must be square");
      for (int j = 0; j < impl->dim; ++j) {
        const ScalarField& f = h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (f.dim() != impl->dim) throw Error("entry dimension mismatch");
        impl->h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = f;
        impl->depth = std::min(impl->depth, f.depth());
      }
    }
    return TwoMetric(std::move(impl));
  }

  static TwoMetric simple_constant(const Mat& h) {
    require_spd(h);
    std::vector<std::vector<ScalarField>> fields;
    for (int i = 0; i < h.n; ++i) {
      std::vector<ScalarField> row;
      for (int j = 0; j < h.n; ++j)
        row.push_back(ScalarField::constant(h.n, h(i, j)));
      fields.push_back(std::move(row));
    }
    return simple(std::move(fields));
  }

  static TwoMetric conformal(ScalarField lambda, TwoMetric base) {
    if (lambda.dim() != base.dim()) throw Error("conformal factor dimension mismatch");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Conformal;
    impl->dim = base.dim();
    impl->lambda = std::move(lambda);
    impl->base = base.impl_;
    impl->depth = std::min(impl->lambda.depth(), base.depth());
    return TwoMetric(std::move(impl));
  }

  static TwoMetric table2(ScalarField g112) {
    if (g112.dim() != 2) throw Error("dim-2 table entry must live on R^2");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Table2;
    impl->dim = 2;
    impl->depth = g112.depth();
    impl->g112 = std::move(g112);
    return TwoMetric(std::move(impl));
  }

  // iij[i][j] = g(e_i,e_i/e_j) for i≠j; mixed[k] = g(e_i,e_j/e_k), {i,j,k}={0,1,2}
  static TwoMetric table3(std::array<std::array<ScalarField, 3>, 3> iij,
                          std::array<ScalarField, 3> mixed) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Table3;
    impl->dim = 3;
    impl->depth = kJetTowerDepth;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        impl->depth = std::min(impl->depth, iij[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].depth());
      }
      impl->depth = std::min(impl->depth, mixed[static_cast<std::size_t>(i)].depth());
    }
    impl->iij = std::move(iij);
    impl->mixed = std::move(mixed);
    return TwoMetric(std::move(impl));
  }

  bool empty() const { return impl_ == nullptr; }
  int dim() const { return impl_ ? impl_->dim : 0; }
  int depth() const { return impl_ ? impl_->depth : 0; }
  Kind kind() const { return impl_->kind; }

  bool involves_table() const {
    const Impl* c = impl_.get();
    while (c) {
      if (c->kind == Kind::Table2 || c->kind == Kind::Table3) return true;
      c = c->base.get();
    }
    return false;
  }

  template <int K>
  ring_t<K> slots(const Vec<ring_t<K>>& p, const Vec<ring_t<K>>& u,
                  const Vec<ring_t<K>>& v, const Vec<ring_t<K>>& w) const {
    if (!impl_) throw Error("empty metric");
    return slots_impl<K>(*impl_, p, u, v, w);
  }

  // Frozen 2-inner product at one point, for the axiom checker.
  TwoInnerValue at_point(const Point& p) const {
    TwoMetric self = *this;
    return [self, p](const Vec<double>& u, const Vec<double>& v,
                     const Vec<double>& w) { return self.slots<0>(p, u, v, w); };
  }

  // g(e_i,e_j/e_k) as a scalar field, 0-based indices. Vanishes identically
  // when k equals i or j.
  ScalarField component_field(int i, int j, int k) const;

 private:
  struct Impl {
    Kind kind = Kind::Standard;
    int dim = 0;
    int depth = 0;
    // Simple
    std::array<std::array<ScalarField, kMaxDim>, kMaxDim> h;
    // Conformal
    ScalarField lambda;
    std::shared_ptr<const Impl> base;
    // Table2
    ScalarField g112;
    // Table3
    std::array<std::array<ScalarField, 3>, 3> iij;
    std::array<ScalarField, 3> mixed;
  };

  explicit TwoMetric(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  template <int K>
  static ring_t<K> slots_impl(const Impl& m, const Vec<ring_t<K>>& p,
                              const Vec<ring_t<K>>& u, const Vec<ring_t<K>>& v,
                              const Vec<ring_t<K>>& w) {
    using S = ring_t<K>;
    switch (m.kind) {
      case Kind::Standard: {
        auto dot = [&](const Vec<S>& a, const Vec<S>& b) {
          S acc = a[0] * b[0];
          for (int i = 1; i < m.dim; ++i) acc += a[i] * b[i];
          return acc;
        };
        return dot(u, v) * dot(w, w) - dot(u, w) * dot(v, w);
      }
      case Kind::Simple: {
        std::array<std::array<S, kMaxDim>, kMaxDim> hv;
        for (int i = 0; i < m.dim; ++i)
          for (int j = 0; j < m.dim; ++j)
            hv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                m.h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                    .template eval<K>(p);
        return simple_slot_value(m.dim, hv, u, v, w);
      }
      case Kind::Conformal: {
        S lam = m.lambda.template eval<K>(p);
        if (!(ring::leading_value(lam) > 0.0))
          throw DomainError("conformal factor must be positive");
        return lam * slots_impl<K>(*m.base, p, u, v, w);
      }
      case Kind::Table2:
        return expand2_slot_value(m.g112.template eval<K>(p), u, v, w);
      case Kind::Table3: {
        std::array<std::array<S, 3>, 3> iv;
        std::array<S, 3> mv;
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j)
            iv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                (i == j) ? ring::zero<S>()
                         : m.iij[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                               .template eval<K>(p);
          mv[static_cast<std::size_t>(i)] =
              m.mixed[static_cast<std::size_t>(i)].template eval<K>(p);
        }
        return expand3_slot_value(iv, mv, u, v, w);
      }
    }
    throw Error("corrupt metric");
  }

  std::shared_ptr<const Impl> impl_;
};

// g(X,Y/Z) as a jet-capable scalar field. For table metrics the evaluation
// additionally watches the diagonal: g(u,u/v) dipping below -1e-9 means the
// table is not a 2-inner product at that point.
inline ScalarField g_scalar_field(const TwoMetric& g, const VectorField& X,
                                  const VectorField& Y, const VectorField& Z) {
  if (g.dim() != X.dim() || g.dim() != Y.dim() || g.dim() != Z.dim())
    throw Error("dimension mismatch in g(X,Y/Z)");
  const bool check_diag = g.involves_table() && X.same_impl(Y);
  int depth = std::min(std::min(g.depth(), X.depth()),
                       std::min(Y.depth(), Z.depth()));
  return ScalarField::from_levels(
      g.dim(), depth, [g, X, Y, Z, check_diag](auto lvl, const auto& p) {
        constexpr int K = decltype(lvl)::value;
        auto u = X.template eval<K>(p);
        auto v = Y.template eval<K>(p);
        auto w = Z.template eval<K>(p);
        auto val = g.template slots<K>(p, u, v, w);
        if (check_diag && ring::leading_value(val) < -1e-9)
          throw AxiomViolation("table metric produced g(u,u/v) < 0");
        return val;
      });
}

// Diffeomorphism of open subsets of R^n with a user-supplied inverse,
// verified numerically at construction.
class Diffeo {
 public:
  Diffeo() = default;

  static Diffeo create(VectorField forward, VectorField inverse, const Box& box,
                       int samples = 20, std::uint64_t seedval = 42) {
    if (forward.dim() != inverse.dim()) throw Error("diffeo dimension mismatch");
    Diffeo d;
    d.fwd_ = std::move(forward);
    d.inv_ = std::move(inverse);
    for (const Point& p : sample_points(box, samples, seedval)) {
      Vec<double> q = d.fwd_.at(p);
      Vec<double> back = d.inv_.at(q);
      for (int i = 0; i < d.fwd_.dim(); ++i)
        if (std::fabs(back[i] - p[i]) > 1e-8)
          throw PreconditionFailed("inverse does not undo forward map");
    }
    return d;
  }

  int dim() const { return fwd_.dim(); }
  const VectorField& forward() const { return fwd_; }
  const VectorField& inverse() const { return inv_; }

 private:
  VectorField fwd_;
  VectorField inv_;
};

namespace detail {

// Columns of the Jacobian of a coordinate map, via one jet level.
template <int K>
std::array<Vec<ring_t<K>>, kMaxDim> jacobian_columns(const VectorField& map,
                                                     const Vec<ring_t<K>>& p) {
  using S = ring_t<K>;
  if constexpr (K + 1 <= kJetTowerDepth) {
    using JS = ring_t<K + 1>;
    const int n = map.dim();
    std::array<Vec<S>, kMaxDim> cols;
    Vec<JS> jp(n);
    for (int j = 0; j < n; ++j) jp[j] = JS(p[j], ring::zero<S>());
    for (int i = 0; i < n; ++i) {
      jp[i].deriv = ring::one<S>();
      Vec<JS> img = map.template eval<K + 1>(jp);
      cols[static_cast<std::size_t>(i)] = Vec<S>(n);
      for (int a = 0; a < n; ++a) cols[static_cast<std::size_t>(i)][a] = img[a].deriv;
      jp[i].deriv = ring::zero<S>();
    }
    return cols;
  } else {
    throw Error("jet tower depth exceeded");
  }
}

template <class S>
S column_det(int n, const std::array<Vec<S>, kMaxDim>& cols) {
  if (n == 1) return cols[0][0];
  if (n == 2) return cols[0][0] * cols[1][1] - cols[0][1] * cols[1][0];
  return cols[0][0] * (cols[1][1] * cols[2][2] - cols[1][2] * cols[2][1]) -
         cols[1][0] * (cols[0][1] * cols[2][2] - cols[0][2] * cols[2][1]) +
         cols[2][0] * (cols[0][1] * cols[1][2] - cols[0][2] * cols[1][1]);
}

}  // namespace detail

// Table-kind metric with entries g_ijk(p) = ḡ_{φ(p)}(Dφe_i, Dφe_j / Dφe_k).
inline TwoMetric pullback_metric(const Diffeo& phi, const TwoMetric& gbar) {
  if (phi.dim() != gbar.dim()) throw Error("pullback dimension mismatch");
  const int n = phi.dim();
  const VectorField fwd = phi.forward();

  auto entry = [fwd, gbar, n](int i, int j, int k) {
    int depth = std::min(fwd.depth() - 1, gbar.depth());
    return ScalarField::from_levels(
        n, depth, [fwd, gbar, n, i, j, k](auto lvl, const auto& p) {
          constexpr int K = decltype(lvl)::value;
          auto cols = detail::jacobian_columns<K>(fwd, p);
          auto det = detail::column_det(n, cols);
          if (std::fabs(ring::leading_value(det)) < 1e-10)
            throw DegenerateJacobian("pullback map has vanishing Jacobian");
          auto q = fwd.template eval<K>(p);
          return gbar.template slots<K>(q, cols[static_cast<std::size_t>(i)],
                                        cols[static_cast<std::size_t>(j)],
                                        cols[static_cast<std::size_t>(k)]);
        });
  };

  if (n == 2) return TwoMetric::table2(entry(0, 0, 1));

  std::array<std::array<ScalarField, 3>, 3> iij;
  std::array<ScalarField, 3> mixed;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      iij[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = entry(i, i, j);
    }
  }
  for (int k = 0; k < 3; ++k) {
    int i = (k + 1) % 3, j = (k + 2) % 3;
    mixed[static_cast<std::size_t>(k)] = entry(i, j, k);
  }
  return TwoMetric::table3(std::move(iij), std::move(mixed));
}

// f_* X: the pushforward (Dφ X) ∘ φ⁻¹, a field on the codomain.
inline VectorField push_forward(const Diffeo& phi, const VectorField& X) {
  if (phi.dim() != X.dim()) throw Error("pushforward dimension mismatch");
  const int n = phi.dim();
  const VectorField fwd = phi.forward();
  const VectorField inv = phi.inverse();
  int depth = std::min(std::min(fwd.depth() - 1, inv.depth()), X.depth());
  std::vector<ScalarField> comps;
  for (int a = 0; a < n; ++a) {
    comps.push_back(ScalarField::from_levels(
        n, depth, [fwd, inv, X, n, a](auto lvl, const auto& q) {
          constexpr int K = decltype(lvl)::value;
          auto p = inv.template eval<K>(q);
          auto cols = detail::jacobian_columns<K>(fwd, p);
          auto xv = X.template eval<K>(p);
          auto acc = cols[0][a] * xv[0];
          for (int jx = 1; jx < n; ++jx) acc += cols[static_cast<std::size_t>(jx)][a] * xv[jx];
          return acc;
        }));
  }
  return VectorField(std::move(comps));
}

inline ScalarField TwoMetric::component_field(int i, int j, int k) const {
  const int n = dim();
  if (i < 0 || j < 0 || k < 0 || i >= n || j >= n || k >= n)
    throw IndexOutOfRange("component index out of range");
  if (k == i || k == j) return ScalarField::constant(n, 0.0);
  TwoMetric self = *this;
  return ScalarField::from_levels(
      n, depth(), [self, i, j, k, n](auto lvl, const auto& p) {
        constexpr int K = decltype(lvl)::value;
        using S = ring_t<K>;
        Vec<S> u(n), v(n), w(n);
        u[i] = ring::one<S>();
        v[j] = ring::one<S>();
        w[k] = ring::one<S>();
        return self.template slots<K>(p, u, v, w);
      });
}

}  // namespace tworiem
