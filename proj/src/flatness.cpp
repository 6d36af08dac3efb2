#include "tworiem/flatness.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace tworiem {

double FlatteningMap2D::jacobian(const Point& p) const {
  auto cols = detail::jacobian_columns<0>(as_map(), p);
  return detail::column_det(2, cols);
}

FlatteningMap2D flatten_2d(const ScalarField& G, const Box& box,
                           double quad_tol) {
  if (G.dim() != 2) throw Error("flatten_2d expects a field on R^2");
  // positivity sampled on a grid and at seeded random points
  std::vector<Point> probe = sample_points(box, 20, 42);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      double tx = (i + 1) / 6.0, ty = (j + 1) / 6.0;
      probe.push_back(Point{box.lo[0] + tx * (box.hi[0] - box.lo[0]),
                            box.lo[1] + ty * (box.hi[1] - box.lo[1])});
    }
  for (const Point& p : probe)
    if (!(G.at(p) > 0.0))
      throw NonPositiveG("flatten_2d: G must be positive on the box");

  FlatteningMap2D map;
  map.box = box;
  map.quad_tol = quad_tol;
  map.u = ScalarField::coordinate(2, 0);
  ScalarField Gcopy = G;
  map.v = ScalarField::from_levels(
      2, G.depth(), [Gcopy, quad_tol](auto lvl, const auto& p) {
        constexpr int K = decltype(lvl)::value;
        using S = ring_t<K>;
        S x = p[0], y = p[1];
        auto integrand = [&](double tau) {
          Vec<S> q{x, y * tau};
          S g = Gcopy.template eval<K>(q);
          if (!(ring::leading_value(g) > 0.0))
            throw NonPositiveG("flatten_2d: G must be positive on the segment");
          return sqrt_checked(g);
        };
        S integral = adaptive_simpson<S>(integrand, 0.0, 1.0, quad_tol);
        return y * integral;
      });
  return map;
}

namespace {

// 3x3 Jacobian of (f1,f2,f3) at p: rows indexed by function, columns by axis.
std::array<std::array<double, 3>, 3> jacobian3(const std::array<ScalarField, 3>& f,
                                               const Point& p) {
  std::array<std::array<double, 3>, 3> d{};
  for (int axis = 0; axis < 3; ++axis) {
    Vec<Jet<double>> jp(3);
    for (int j = 0; j < 3; ++j)
      jp[j] = Jet<double>(p[j], j == axis ? 1.0 : 0.0);
    for (int a = 0; a < 3; ++a)
      d[static_cast<std::size_t>(a)][static_cast<std::size_t>(axis)] =
          f[static_cast<std::size_t>(a)].eval<1>(jp).deriv;
  }
  return d;
}

}  // namespace

double system_residual_3d(const std::array<ScalarField, 3>& f,
                          const TwoMetric& g, const std::vector<Point>& pts) {
  if (g.dim() != 3) throw Error("system_residual_3d expects dimension 3");
  // cache the 27 component fields
  std::array<ScalarField, 27> comp;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        comp[static_cast<std::size_t>((i * 3 + j) * 3 + k)] = g.component_field(i, j, k);

  double worst = 0.0;
  for (const Point& p : pts) {
    auto d = jacobian3(f, p);
    auto minor2 = [&](int a, int b, int s, int t) {
      // ∂(f^a,f^b)/∂(x^s,x^t)
      return d[static_cast<std::size_t>(a)][static_cast<std::size_t>(s)] *
                 d[static_cast<std::size_t>(b)][static_cast<std::size_t>(t)] -
             d[static_cast<std::size_t>(a)][static_cast<std::size_t>(t)] *
                 d[static_cast<std::size_t>(b)][static_cast<std::size_t>(s)];
    };
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          double sum = 0.0;
          for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b)
              sum += minor2(a, b, i, k) * minor2(a, b, j, k);
          double gv = comp[static_cast<std::size_t>((i * 3 + j) * 3 + k)].at(p);
          worst = std::max(worst, std::fabs(gv - sum));
        }
  }
  return worst;
}

BeltramiReport beltrami_residual(const std::array<ScalarField, 3>& f,
                                 const TwoMetric& g,
                                 const std::vector<Point>& pts) {
  if (g.dim() != 3) throw Error("beltrami_residual expects dimension 3");
  ScalarField g223 = g.component_field(1, 1, 2);
  ScalarField g123 = g.component_field(0, 1, 2);
  ScalarField g132 = g.component_field(0, 2, 1);
  ScalarField g113 = g.component_field(0, 0, 2);
  ScalarField g231 = g.component_field(1, 2, 0);
  ScalarField g112 = g.component_field(0, 0, 1);

  BeltramiReport rep;
  for (const Point& p : pts) {
    Eigen::Matrix3d m;
    m << g223.at(p), -g123.at(p), -g132.at(p),
        -g123.at(p), g113.at(p), -g231.at(p),
        -g132.at(p), -g231.at(p), g112.at(p);
    double det = m.determinant();
    if (std::fabs(det) < 1e-12)
      throw SingularGMatrix("beltrami_residual: component matrix is singular");
    Eigen::Matrix3d gm = m.inverse();
    rep.worst_condition =
        std::max(rep.worst_condition, m.norm() * gm.norm());

    auto d = jacobian3(f, p);
    Eigen::Matrix3d df;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        df(a, b) = d[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    double jac = df.determinant();
    Eigen::Matrix3d lhs = df.transpose() * df;
    Eigen::Matrix3d diff = lhs - jac * jac * gm;
    rep.max_residual = std::max(rep.max_residual,
                                diff.cwiseAbs().maxCoeff());
  }
  return rep;
}

ConformalVerdict classify_conformal_3d(const ScalarField& lambda, const Box& box,
                                       int samples, double fit_tol,
                                       std::uint64_t seedval) {
  if (lambda.dim() != 3) throw Error("classify_conformal_3d expects R^3");
  if (samples < 200)
    throw Error("classify_conformal_3d needs at least 200 samples");
  Rng rng(seedval);

  std::vector<Point> pts;
  std::vector<double> lam;
  double lo = 0.0, hi = 0.0;
  for (int i = 0; i < samples; ++i) {
    Point p = rng.point_in(box, 0.02);
    double v = lambda.at(p);
    if (!(v > 0.0))
      throw NonPositiveLambda("conformal factor must be positive on the box");
    if (i == 0) lo = hi = v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    pts.push_back(p);
    lam.push_back(v);
  }

  ConformalVerdict verdict;
  verdict.samples_used = samples;
  if (hi - lo < 1e-12 * std::max(1.0, std::fabs(hi))) {
    verdict.kind = ConformalVerdict::Kind::FlatConstant;
    return verdict;
  }

  // linear model: 2a·x − q + s·λ^{-1/4} = |x|², unknowns (2a, q, s)
  Eigen::MatrixXd A(samples, 5);
  Eigen::VectorXd b(samples);
  for (int i = 0; i < samples; ++i) {
    const Point& p = pts[static_cast<std::size_t>(i)];
    double t = std::pow(lam[static_cast<std::size_t>(i)], -0.25);
    A(i, 0) = p[0];
    A(i, 1) = p[1];
    A(i, 2) = p[2];
    A(i, 3) = -1.0;
    A(i, 4) = t;
    b(i) = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
  }
  Eigen::VectorXd theta =
      (A.transpose() * A).ldlt().solve(A.transpose() * b);
  Eigen::VectorXd resid = A * theta - b;
  verdict.fit_residual = std::sqrt(resid.squaredNorm() / samples);

  Point a = make_point({theta(0) / 2.0, theta(1) / 2.0, theta(2) / 2.0});
  double q = theta(3);
  double s = theta(4);
  double a2 = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
  bool consistent = std::fabs(q - a2) <= fit_tol * std::max(1.0, a2);
  bool fit_ok = verdict.fit_residual <= fit_tol && s > 0.0 && consistent;

  if (fit_ok) {
    verdict.center = a;
    verdict.radius = std::sqrt(s);
    if (box.contains(a)) {
      // the inversion family requires the pole off the domain; flag and
      // fall back to the conservative verdict
      verdict.center_inside_box = true;
      verdict.kind = ConformalVerdict::Kind::NonFlat;
    } else {
      verdict.kind = ConformalVerdict::Kind::FlatInversion;
    }
    return verdict;
  }
  verdict.kind = ConformalVerdict::Kind::NonFlat;
  return verdict;
}

}  // namespace tworiem
