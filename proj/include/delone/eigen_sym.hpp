#pragma once

// Symmetric eigenvalue machinery: orthogonal reduction to tridiagonal form
// (dense Householder or Givens band reduction), implicit-shift QL iteration,
// and Sturm/LDLᵀ inertia counting on the tridiagonal form.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "delone/error.hpp"

namespace delone {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// A = Q T Qᵀ with T tridiagonal. `q` is empty unless accumulation was requested.
template <typename Scalar>
struct TridiagonalForm {
  DenseVector<Scalar> diag;
  DenseVector<Scalar> offdiag;
  DenseMatrix<Scalar> q;
  Eigen::Index bandwidth = 0;

  Eigen::Index size() const { return diag.size(); }
};

/// Sorted eigenvalues; eigenvectors (columns) only when requested.
template <typename Scalar>
struct EigenDecomposition {
  DenseVector<Scalar> eigenvalues;
  DenseMatrix<Scalar> eigenvectors;
};

/// Number of eigenvalues strictly below E. `lower`/`upper` are the counts at
/// E ∓ tie; when they differ an eigenvalue sits within the tie band and the
/// result is flagged.
struct CountBelow {
  std::size_t count = 0;
  std::size_t lower = 0;
  std::size_t upper = 0;
  bool ambiguous = false;
};

inline constexpr int kQlMaxSweepsPerEigenvalue = 30;

/// Largest |i − j| with a(i, j) ≠ 0.
template <typename Derived>
Eigen::Index bandwidth(const Eigen::MatrixBase<Derived>& a) {
  Eigen::Index b = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != 0 && std::abs(i - j) > b) b = std::abs(i - j);
  return b;
}

template <typename Derived>
bool is_symmetric(const Eigen::MatrixBase<Derived>& a, double tol) {
  if (a.rows() != a.cols()) return false;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = j + 1; i < a.rows(); ++i)
      if (std::abs(a(i, j) - a(j, i)) > tol) return false;
  return true;
}

namespace detail {

template <typename Scalar>
TridiagonalForm<Scalar> extract_tridiagonal(const DenseMatrix<Scalar>& a) {
  const Eigen::Index n = a.rows();
  TridiagonalForm<Scalar> t;
  t.diag = a.diagonal();
  t.offdiag = n > 1 ? DenseVector<Scalar>(a.diagonal(-1)) : DenseVector<Scalar>(0);
  return t;
}

// Householder reduction working on the lower triangle; reflector k acts on
// rows/columns k+1..n−1.
template <typename Scalar>
TridiagonalForm<Scalar> householder_tridiagonalize(DenseMatrix<Scalar> a, bool accumulate) {
  const Eigen::Index n = a.rows();
  TridiagonalForm<Scalar> t;
  t.diag.resize(n);
  t.offdiag.resize(n > 0 ? n - 1 : 0);
  std::vector<Scalar> betas(static_cast<std::size_t>(std::max<Eigen::Index>(n - 2, 0)), Scalar(0));

  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index m = n - k - 1;
    auto x = a.col(k).tail(m);
    const Scalar tail_norm2 = x.tail(m - 1).squaredNorm();
    if (tail_norm2 == Scalar(0)) {
      t.offdiag(k) = x(0);
      continue;
    }
    const Scalar norm = std::sqrt(x(0) * x(0) + tail_norm2);
    const Scalar alpha = x(0) >= Scalar(0) ? -norm : norm;
    DenseVector<Scalar> v = x;
    v(0) -= alpha;
    const Scalar beta = Scalar(2) / v.squaredNorm();

    auto a22 = a.bottomRightCorner(m, m);
    DenseVector<Scalar> p = beta * (a22.template selfadjointView<Eigen::Lower>() * v);
    const Scalar half = Scalar(0.5) * beta * p.dot(v);
    p -= half * v;
    a22.template selfadjointView<Eigen::Lower>().rankUpdate(v, p, Scalar(-1));

    t.offdiag(k) = alpha;
    x = v;  // keep the reflector for accumulation
    betas[static_cast<std::size_t>(k)] = beta;
  }
  for (Eigen::Index i = 0; i < n; ++i) t.diag(i) = a(i, i);
  if (n >= 2) t.offdiag(n - 2) = a(n - 1, n - 2);

  if (accumulate) {
    t.q = DenseMatrix<Scalar>::Identity(n, n);
    for (Eigen::Index k = n - 3; k >= 0; --k) {
      const Scalar beta = betas[static_cast<std::size_t>(k)];
      if (beta == Scalar(0)) continue;
      const Eigen::Index m = n - k - 1;
      const DenseVector<Scalar> v = a.col(k).tail(m);
      auto block = t.q.bottomRightCorner(m, m);
      const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> w = v.transpose() * block;
      block.noalias() -= beta * v * w;
    }
  }
  return t;
}

// Givens reduction of a symmetric band matrix (half-bandwidth b): annihilate
// column entries from the outside in and chase each bulge down the band.
// Work per rotation is O(b), total O(n² b) without accumulation.
template <typename Scalar>
TridiagonalForm<Scalar> band_tridiagonalize(DenseMatrix<Scalar> a, Eigen::Index b, bool accumulate) {
  const Eigen::Index n = a.rows();
  DenseMatrix<Scalar> q;
  if (accumulate) q = DenseMatrix<Scalar>::Identity(n, n);

  // Zero a(r, col) by rotating the plane (r − 1, r).
  auto rotate = [&](Eigen::Index r, Eigen::Index col) {
    const Eigen::Index p = r - 1;
    const Scalar x = a(p, col);
    const Scalar y = a(r, col);
    const Scalar h = std::hypot(x, y);
    if (h == Scalar(0)) return;
    const Scalar c = x / h;
    const Scalar s = y / h;
    const Eigen::Index lo = std::max<Eigen::Index>(0, p - b - 1);
    const Eigen::Index hi = std::min<Eigen::Index>(n - 1, r + b + 1);
    for (Eigen::Index k = lo; k <= hi; ++k) {
      const Scalar u = a(p, k);
      const Scalar w = a(r, k);
      a(p, k) = c * u + s * w;
      a(r, k) = -s * u + c * w;
    }
    for (Eigen::Index k = lo; k <= hi; ++k) {
      const Scalar u = a(k, p);
      const Scalar w = a(k, r);
      a(k, p) = c * u + s * w;
      a(k, r) = -s * u + c * w;
    }
    a(r, col) = Scalar(0);
    a(col, r) = Scalar(0);
    if (accumulate) {
      for (Eigen::Index k = 0; k < n; ++k) {
        const Scalar u = q(k, p);
        const Scalar w = q(k, r);
        q(k, p) = c * u + s * w;
        q(k, r) = -s * u + c * w;
      }
    }
  };

  for (Eigen::Index j = 0; j + 2 < n; ++j) {
    for (Eigen::Index i = std::min(j + b, n - 1); i >= j + 2; --i) {
      if (a(i, j) == Scalar(0)) continue;
      rotate(i, j);
      for (Eigen::Index k = i; k + b < n && a(k + b, k - 1) != Scalar(0); k += b) rotate(k + b, k - 1);
    }
  }
  TridiagonalForm<Scalar> t = extract_tridiagonal<Scalar>(a);
  t.q = std::move(q);
  return t;
}

}  // namespace detail

/// Orthogonal similarity to tridiagonal form. Already tridiagonal input is
/// read off directly; narrow bands use Givens band reduction, everything
/// else dense Householder reflections.
template <typename Derived>
TridiagonalForm<typename Derived::Scalar> tridiagonalize(const Eigen::MatrixBase<Derived>& a,
                                                         bool accumulate = false) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = a.rows();
  const Eigen::Index b = bandwidth(a);
  TridiagonalForm<Scalar> t;
  if (b <= 1) {
    t = detail::extract_tridiagonal<Scalar>(a.derived());
    if (accumulate) t.q = DenseMatrix<Scalar>::Identity(n, n);
  } else if (8 * b <= n) {
    t = detail::band_tridiagonalize<Scalar>(a.derived(), b, accumulate);
  } else {
    t = detail::householder_tridiagonalize<Scalar>(a.derived(), accumulate);
  }
  t.bandwidth = b;
  return t;
}

/// Implicit-shift QL on (d, e) in place; d receives the (unsorted)
/// eigenvalues. When z is given its columns are rotated along. Throws
/// NoConvergence after kQlMaxSweepsPerEigenvalue sweeps on one eigenvalue.
template <typename Scalar>
void implicit_ql(DenseVector<Scalar>& d, DenseVector<Scalar> e_in, DenseMatrix<Scalar>* z) {
  const Eigen::Index n = d.size();
  if (n <= 1) return;
  DenseVector<Scalar> e = DenseVector<Scalar>::Zero(n);
  e.head(n - 1) = e_in;
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();

  for (Eigen::Index l = 0; l < n; ++l) {
    int sweeps = 0;
    Eigen::Index m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const Scalar dd = std::abs(d(m)) + std::abs(d(m + 1));
        if (std::abs(e(m)) <= eps * dd) break;
      }
      if (m == l) break;
      if (sweeps++ == kQlMaxSweepsPerEigenvalue)
        throw Error(Errc::NoConvergence, "implicit QL exceeded " +
                                             std::to_string(kQlMaxSweepsPerEigenvalue) +
                                             " sweeps at index " + std::to_string(l));
      // Wilkinson-type shift from the leading 2×2 block.
      Scalar g = (d(l + 1) - d(l)) / (Scalar(2) * e(l));
      Scalar r = std::hypot(g, Scalar(1));
      g = d(m) - d(l) + e(l) / (g + std::copysign(r, g));
      Scalar s = 1, c = 1, p = 0;
      bool deflated = false;
      for (Eigen::Index i = m - 1; i >= l; --i) {
        const Scalar f = s * e(i);
        const Scalar bb = c * e(i);
        r = std::hypot(f, g);
        e(i + 1) = r;
        if (r == Scalar(0)) {
          d(i + 1) -= p;
          e(m) = 0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d(i + 1) - p;
        r = (d(i) - g) * s + Scalar(2) * c * bb;
        p = s * r;
        d(i + 1) = g + p;
        g = c * r - bb;
        if (z) {
          for (Eigen::Index k = 0; k < z->rows(); ++k) {
            const Scalar zf = (*z)(k, i + 1);
            (*z)(k, i + 1) = s * (*z)(k, i) + c * zf;
            (*z)(k, i) = c * (*z)(k, i) - s * zf;
          }
        }
      }
      if (deflated) continue;
      d(l) -= p;
      e(l) = g;
      e(m) = 0;
    } while (m != l);
  }
}

template <typename Scalar>
EigenDecomposition<Scalar> eig_tridiagonal(const TridiagonalForm<Scalar>& t, bool vectors) {
  const Eigen::Index n = t.size();
  EigenDecomposition<Scalar> out;
  DenseVector<Scalar> d = t.diag;
  DenseMatrix<Scalar> z;
  if (vectors) z = t.q.size() ? t.q : DenseMatrix<Scalar>::Identity(n, n);
  implicit_ql<Scalar>(d, t.offdiag, vectors ? &z : nullptr);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index(0));
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) { return d(i) < d(j); });
  out.eigenvalues.resize(n);
  if (vectors) out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = d(order[static_cast<std::size_t>(k)]);
    if (vectors) out.eigenvectors.col(k) = z.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

/// Full spectrum of a symmetric matrix. Throws InvalidSpec when the input is
/// not symmetric within symmetry_tol, NoConvergence from the QL stage.
template <typename Derived>
EigenDecomposition<typename Derived::Scalar> eig_sym(const Eigen::MatrixBase<Derived>& a, bool vectors = false,
                                                     double symmetry_tol = 1e-12) {
  if (!is_symmetric(a, symmetry_tol)) throw Error(Errc::InvalidSpec, "eig_sym: matrix is not symmetric");
  return eig_tridiagonal(tridiagonalize(a, vectors), vectors);
}

namespace detail {

// Negative pivots of the LDLᵀ factorisation of T − E·I. Sets `singular` when
// a pivot falls below the underflow guard.
template <typename Scalar>
std::size_t sturm_count(const TridiagonalForm<Scalar>& t, Scalar e, bool& singular) {
  const Eigen::Index n = t.size();
  singular = false;
  if (n == 0) return 0;
  Scalar emax2 = 1;
  for (Eigen::Index i = 0; i + 1 < n; ++i) emax2 = std::max(emax2, t.offdiag(i) * t.offdiag(i));
  const Scalar pivmin = std::numeric_limits<Scalar>::min() * emax2;

  std::size_t count = 0;
  Scalar pivot = t.diag(0) - e;
  for (Eigen::Index i = 0;; ++i) {
    if (std::abs(pivot) <= pivmin) singular = true;
    if (pivot < 0) ++count;
    if (i + 1 == n) break;
    if (singular) pivot = -pivmin;  // keep going to finish the scan
    pivot = (t.diag(i + 1) - e) - t.offdiag(i) * t.offdiag(i) / pivot;
  }
  return count;
}

}  // namespace detail

/// Eigenvalue count strictly below E via factorisation inertia of T − E·I
/// (Sylvester: same inertia as A − E·I). A singular pivot at E falls back to
/// the count at E − tie; the result is ambiguous when the counts at E ∓ tie
/// differ. SingularShift is thrown if the retries are singular as well.
template <typename Scalar>
CountBelow count_below(const TridiagonalForm<Scalar>& t, Scalar e, Scalar tie = Scalar(1e-10)) {
  bool singular_lo = false, singular_hi = false, singular = false;
  CountBelow out;
  out.lower = detail::sturm_count(t, e - tie, singular_lo);
  out.upper = detail::sturm_count(t, e + tie, singular_hi);
  if (singular_lo || singular_hi)
    throw Error(Errc::SingularShift, "pivot underflow persists at E ± tie");
  out.count = detail::sturm_count(t, e, singular);
  // Equal counts at E ± tie leave no eigenvalue in the band, so a zero pivot
  // at E itself is an artefact of the factorisation.
  if (singular) out.count = out.lower;
  out.ambiguous = out.lower != out.upper;
  return out;
}

template <typename Derived>
CountBelow count_below(const Eigen::MatrixBase<Derived>& a, typename Derived::Scalar e,
                       typename Derived::Scalar tie = typename Derived::Scalar(1e-10)) {
  if (!is_symmetric(a, 1e-12)) throw Error(Errc::InvalidSpec, "count_below: matrix is not symmetric");
  return count_below(tridiagonalize(a, false), e, tie);
}

}  // namespace delone
