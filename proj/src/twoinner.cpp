#include "tworiem/twoinner.hpp"

#include <cmath>

#include "tworiem/errors.hpp"

namespace tworiem {

void require_spd(const Mat& h) {
  if (h.n < 2 || h.n > kMaxDim) throw NotSPD("inner product must be 2x2 or 3x3");
  for (int i = 0; i < h.n; ++i)
    for (int j = i + 1; j < h.n; ++j)
      if (std::fabs(h(i, j) - h(j, i)) > 1e-12)
        throw NotSPD("matrix is not symmetric");
  // Cholesky with positive pivots
  double l[kMaxDim][kMaxDim] = {};
  for (int i = 0; i < h.n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = h(i, j);
      for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      if (i == j) {
        if (!(s > 0.0)) throw NotSPD("matrix is not positive definite");
        l[i][i] = std::sqrt(s);
      } else {
        l[i][j] = s / l[j][j];
      }
    }
  }
}

TwoInnerTable3 TwoInnerTable3::from_inner(const Mat& h) {
  if (h.n != 3) throw Error("table_from_inner requires a 3x3 inner product");
  require_spd(h);
  TwoInnerTable3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      // g(e_i,e_i/e_j) = h_ii h_jj − h_ij²
      t.iij[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          h(i, i) * h(j, j) - h(i, j) * h(i, j);
    }
  for (int k = 0; k < 3; ++k) {
    int i = (k + 1) % 3, j = (k + 2) % 3;
    // g(e_i,e_j/e_k) = h_ij h_kk − h_ik h_jk
    t.mixed[static_cast<std::size_t>(k)] =
        h(i, j) * h(k, k) - h(i, k) * h(j, k);
  }
  return t;
}

double simple_from_inner(const Mat& h, const Vec<double>& u,
                         const Vec<double>& v, const Vec<double>& w) {
  require_spd(h);
  if (u.n != h.n || v.n != h.n || w.n != h.n)
    throw Error("slot dimension mismatch");
  return simple_slot_value(h.n, h.a, u, v, w);
}

double expand_dim2(const Vec<double>& alpha, const Vec<double>& beta,
                   const Vec<double>& gamma, double base_value) {
  return expand2_slot_value(base_value, alpha, beta, gamma);
}

double expand_dim3(const Vec<double>& alpha, const Vec<double>& beta,
                   const Vec<double>& gamma, const TwoInnerTable3& table) {
  return expand3_slot_value(table.iij, table.mixed, alpha, beta, gamma);
}

TwoInnerValue make_simple_inner(const Mat& h) {
  require_spd(h);
  return [h](const Vec<double>& u, const Vec<double>& v, const Vec<double>& w) {
    return simple_slot_value(h.n, h.a, u, v, w);
  };
}

TwoInnerValue make_table_inner3(const TwoInnerTable3& table) {
  return [table](const Vec<double>& u, const Vec<double>& v,
                 const Vec<double>& w) {
    return expand3_slot_value(table.iij, table.mixed, u, v, w);
  };
}

TwoInnerValue make_table_inner2(double g112) {
  return [g112](const Vec<double>& u, const Vec<double>& v,
                const Vec<double>& w) {
    return expand2_slot_value(g112, u, v, w);
  };
}

namespace {

Vec<double> random_vec(Rng& rng, int n, double lo = -2.0, double hi = 2.0) {
  Vec<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.uniform(lo, hi);
  return v;
}

Vec<double> axpy(double a, const Vec<double>& x, const Vec<double>& y) {
  Vec<double> r(x.n);
  for (int i = 0; i < x.n; ++i) r[i] = a * x[i] + y[i];
  return r;
}

Vec<double> scale(double a, const Vec<double>& x) {
  Vec<double> r(x.n);
  for (int i = 0; i < x.n; ++i) r[i] = a * x[i];
  return r;
}

// squared parallelogram area of (u,v) w.r.t. the Euclidean product; the
// independence measure used to pick well separated pairs
double gram_area2(const Vec<double>& u, const Vec<double>& v) {
  double uu = 0, vv = 0, uv = 0;
  for (int i = 0; i < u.n; ++i) {
    uu += u[i] * u[i];
    vv += v[i] * v[i];
    uv += u[i] * v[i];
  }
  return uu * vv - uv * uv;
}

struct EntryAcc {
  AxiomEntry entry;
  void update(double residual, double tol) {
    entry.max_residual = std::max(entry.max_residual, residual);
    entry.pass = entry.max_residual <= tol;
  }
};

}  // namespace

AxiomReport check_axioms(const TwoInnerValue& g, int n, int trials,
                         std::uint64_t seed, double tol) {
  if (trials < 1) throw Error("check_axioms: trials must be >= 1");
  if (n < 2 || n > kMaxDim) throw Error("check_axioms: dimension must be 2 or 3");
  Rng rng(seed);

  EntryAcc nonneg{{"nonnegativity", 0.0, true}};
  EntryAcc dep{{"degeneracy-dependent", 0.0, true}};
  EntryAcc indep{{"degeneracy-independent", 0.0, true}};
  EntryAcc exch{{"uu-vv-exchange", 0.0, true}};
  EntryAcc sym{{"first-slot-symmetry", 0.0, true}};
  EntryAcc lin{{"first-slot-linearity", 0.0, true}};
  EntryAcc third1{{"third-slot-equals-first", 0.0, true}};
  EntryAcc third2{{"shift-identity", 0.0, true}};
  EntryAcc quad{{"third-slot-quadratic", 0.0, true}};

  for (int t = 0; t < trials; ++t) {
    Vec<double> u = random_vec(rng, n);
    Vec<double> u2 = random_vec(rng, n);
    Vec<double> v = random_vec(rng, n);
    Vec<double> w = random_vec(rng, n);
    double a = rng.uniform(-2.0, 2.0);

    // Def. axiom 1: g(u,u/v) >= 0
    nonneg.update(std::max(0.0, -g(u, u, v)), tol);

    // dependence direction: g(u,u/αu) = 0
    dep.update(std::fabs(g(u, u, scale(a, u))), tol);

    // independence direction: well separated pairs must give positive value
    if (gram_area2(u, v) > 0.25) {
      double val = g(u, u, v);
      if (val <= tol) indep.update(tol - val + 1.0, tol);
    }

    // Def. axiom 2
    exch.update(std::fabs(g(u, u, v) - g(v, v, u)), tol);

    // Def. axiom 3
    sym.update(std::fabs(g(u, v, w) - g(v, u, w)), tol);

    // Def. axiom 4
    lin.update(std::fabs(g(axpy(a, u, u2), v, w) - a * g(u, v, w) - g(u2, v, w)),
               tol);

    // derived identities
    third1.update(std::fabs(g(u, v, u)), tol);
    third2.update(std::fabs(g(u, u, v) + g(u, v, axpy(1.0, u, v))), tol);
    for (double alpha : {-2.0, 0.5, 3.0})
      quad.update(std::fabs(g(u, v, scale(alpha, w)) -
                            alpha * alpha * g(u, v, w)),
                  tol);
  }

  AxiomReport report;
  report.seed = seed;
  report.trials = trials;
  for (const EntryAcc* acc :
       {&nonneg, &dep, &indep, &exch, &sym, &lin, &third1, &third2, &quad}) {
    report.entries.push_back(acc->entry);
    report.all_pass = report.all_pass && acc->entry.pass;
    report.worst = std::max(report.worst, acc->entry.max_residual);
  }
  return report;
}

}  // namespace tworiem
