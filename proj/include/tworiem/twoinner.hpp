#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tworiem/geometry.hpp"
#include "tworiem/jet.hpp"

namespace tworiem {

// Pointwise 2-inner products on R^n, n ∈ {2,3}: the simple construction
// from an inner product, the basis-expansion formulas, and a randomized
// axiom checker.

// A 2-inner product at a fixed point: trilinear-slot evaluator (u,v,w) ↦ g(u,v/w).
using TwoInnerValue = std::function<double(
    const Vec<double>&, const Vec<double>&, const Vec<double>&)>;

// Small symmetric matrix (inner product) with explicit dimension.
struct Mat {
  int n = 0;
  std::array<std::array<double, kMaxDim>, kMaxDim> a{};

  static Mat identity(int n) {
    Mat m;
    m.n = n;
    for (int i = 0; i < n; ++i)
      m.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
    return m;
  }
  double operator()(int i, int j) const {
    return a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  double& operator()(int i, int j) {
    return a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
};

// Throws NotSPD unless symmetric (1e-12) with positive Cholesky pivots.
void require_spd(const Mat& h);

// The nine basis values determining a 2-inner product on R^3:
// iij[i][j] = g(e_i, e_i / e_j) for i ≠ j, and mixed[k] = g(e_i, e_j / e_k)
// for {i,j,k} = {0,1,2} (symmetric in i,j, so one value per k).
struct TwoInnerTable3 {
  std::array<std::array<double, 3>, 3> iij{};
  std::array<double, 3> mixed{};

  static TwoInnerTable3 standard() {
    TwoInnerTable3 t;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t.iij[i][j] = (i == j) ? 0.0 : 1.0;
    t.mixed = {0.0, 0.0, 0.0};
    return t;
  }
  static TwoInnerTable3 from_inner(const Mat& h);
};

// --- ring-generic slot evaluators (shared with the metric module) ----------

template <class S>
S det_pair(const S& a0, const S& a1, const S& b0, const S& b1) {
  return a0 * b1 - a1 * b0;
}

template <class S>
S inner_dot(int n, const std::array<std::array<S, kMaxDim>, kMaxDim>& h,
            const Vec<S>& u, const Vec<S>& v) {
  S acc = ring::zero<S>();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      acc += u[i] * h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * v[j];
  return acc;
}

// h(u,v)h(w,w) − h(u,w)h(v,w)
template <class S>
S simple_slot_value(int n, const std::array<std::array<S, kMaxDim>, kMaxDim>& h,
                    const Vec<S>& u, const Vec<S>& v, const Vec<S>& w) {
  return inner_dot(n, h, u, v) * inner_dot(n, h, w, w) -
         inner_dot(n, h, u, w) * inner_dot(n, h, v, w);
}

// dim-2 expansion: det(α|γ)·det(β|γ)·g(e1,e1/e2)
template <class S>
S expand2_slot_value(const S& base, const Vec<S>& alpha, const Vec<S>& beta,
                     const Vec<S>& gamma) {
  return det_pair(alpha[0], alpha[1], gamma[0], gamma[1]) *
         det_pair(beta[0], beta[1], gamma[0], gamma[1]) * base;
}

// dim-3 expansion: the literal two-sum formula over the nine basis values.
template <class S>
S expand3_slot_value(const std::array<std::array<S, 3>, 3>& iij,
                     const std::array<S, 3>& mixed, const Vec<S>& alpha,
                     const Vec<S>& beta, const Vec<S>& gamma) {
  S acc = ring::zero<S>();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      S d1 = det_pair(alpha[i], alpha[j], gamma[i], gamma[j]);
      S d2 = det_pair(beta[i], beta[j], gamma[i], gamma[j]);
      acc += d1 * d2 * iij[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * 0.5;
    }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      int k = 3 - i - j;
      S d1 = det_pair(alpha[i], alpha[k], gamma[i], gamma[k]);
      S d2 = det_pair(beta[j], beta[k], gamma[j], gamma[k]);
      acc += d1 * d2 * mixed[static_cast<std::size_t>(k)];
    }
  return acc;
}

// --- double-level operations -------------------------------------------------

// Eq. h(u,v)h(w,w) − h(u,w)h(v,w); checks SPD on every call.
double simple_from_inner(const Mat& h, const Vec<double>& u,
                         const Vec<double>& v, const Vec<double>& w);

double expand_dim2(const Vec<double>& alpha, const Vec<double>& beta,
                   const Vec<double>& gamma, double base_value);

double expand_dim3(const Vec<double>& alpha, const Vec<double>& beta,
                   const Vec<double>& gamma, const TwoInnerTable3& table);

TwoInnerValue make_simple_inner(const Mat& h);
TwoInnerValue make_table_inner3(const TwoInnerTable3& table);
TwoInnerValue make_table_inner2(double g112);

// --- randomized axiom verification -------------------------------------------

struct AxiomEntry {
  std::string name;
  double max_residual = 0.0;
  bool pass = true;
};

struct AxiomReport {
  std::vector<AxiomEntry> entries;
  std::uint64_t seed = 0;
  int trials = 0;
  bool all_pass = true;
  double worst = 0.0;

  const AxiomEntry* find(const std::string& name) const {
    for (const auto& e : entries)
      if (e.name == name) return &e;
    return nullptr;
  }
};

// Samples the axioms of a 2-inner product plus the basic derived identities
// (third-slot-equals-first vanishing, the u/v exchange identity, quadratic
// third-slot homogeneity). Failures are report entries, never throws.
AxiomReport check_axioms(const TwoInnerValue& g, int n, int trials,
                         std::uint64_t seed, double tol = 1e-10);

}  // namespace tworiem
