// Copyright 2026 The lyjump Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lyjump/matkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "lyjump/error.hpp"

namespace lyjump {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_dim(std::size_t n) {
  if (n == 0 || n > ComplexMatrix::kMaxDim) {
    throw Error(ErrorKind::InvalidArgument,
                "matrix dimension " + std::to_string(n) + " outside [1, 8]");
  }
}

bool before(const cplx& a, const cplx& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Parlett-Reinsch balancing with radix 2 (exact in floating point).
// On return a holds D^-1 A D and scale holds diag(D).
void balance(ComplexMatrix& a, std::vector<double>& scale) {
  const std::size_t n = a.dim();
  scale.assign(n, 1.0);
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double c = 0, r = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0 || r == 0) continue;
      double f = 1;
      const double s = c + r;
      double g = r / 2;
      while (c < g) {
        f *= 2;
        c *= 4;
      }
      g = r * 2;
      while (c >= g) {
        f /= 2;
        c /= 4;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        scale[i] *= f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) /= f;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

// Householder reduction to upper Hessenberg form; accumulates into z when given.
void hessenberg(ComplexMatrix& h, ComplexMatrix* z) {
  const std::size_t n = h.dim();
  ComplexVector v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double alpha = 0;
    for (std::size_t i = k + 1; i < n; ++i) alpha += std::norm(h(i, k));
    alpha = std::sqrt(alpha);
    if (alpha == 0) continue;
    const cplx x0 = h(k + 1, k);
    const cplx phase = std::abs(x0) > 0 ? x0 / std::abs(x0) : cplx(1);
    std::fill(v.begin(), v.end(), cplx(0));
    for (std::size_t i = k + 1; i < n; ++i) v[i] = h(i, k);
    v[k + 1] += phase * alpha;
    double vv = 0;
    for (std::size_t i = k + 1; i < n; ++i) vv += std::norm(v[i]);
    if (vv == 0) continue;
    const double beta = 2 / vv;

    // h <- P h
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0;
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, j);
      s *= beta;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= v[i] * s;
    }
    // h <- h P, z <- z P
    auto right = [&](ComplexMatrix& m) {
      for (std::size_t i = 0; i < n; ++i) {
        cplx s = 0;
        for (std::size_t j = k + 1; j < n; ++j) s += m(i, j) * v[j];
        s *= beta;
        for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= s * std::conj(v[j]);
      }
    };
    right(h);
    if (z) right(*z);
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0;
  }
}

struct Givens {
  double c = 1;
  cplx s = 0;
};

// Rotation G with G [x; y] = [r; 0], G = [c s; -conj(s) c].
Givens make_givens(cplx x, cplx y) {
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  if (ay == 0) return {};
  if (ax == 0) return {0.0, cplx(1)};
  const double nrm = std::hypot(ax, ay);
  return {ax / nrm, (x / ax) * std::conj(y) / nrm};
}

// Single-shift complex QR iteration on a Hessenberg matrix, reducing it to
// upper triangular (Schur) form in place. Accumulates into z when given.
void schur(ComplexMatrix& h, ComplexMatrix* z) {
  const std::size_t n = h.dim();
  const double hnorm = std::max(h.norm1(), std::numeric_limits<double>::min());
  constexpr int kMaxIterPerValue = 60;

  auto rotate_rows = [&](std::size_t k, const Givens& g, std::size_t col0) {
    for (std::size_t j = col0; j < n; ++j) {
      const cplx a = h(k, j), b = h(k + 1, j);
      h(k, j) = g.c * a + g.s * b;
      h(k + 1, j) = -std::conj(g.s) * a + g.c * b;
    }
  };
  auto rotate_cols = [&](ComplexMatrix& m, std::size_t k, const Givens& g, std::size_t row_end) {
    for (std::size_t i = 0; i < row_end; ++i) {
      const cplx a = m(i, k), b = m(i, k + 1);
      m(i, k) = g.c * a + std::conj(g.s) * b;
      m(i, k + 1) = -g.s * a + g.c * b;
    }
  };

  std::size_t hi = n - 1;
  int iter = 0;
  while (hi >= 1) {
    std::size_t l = hi;
    for (; l > 0; --l) {
      double ref = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (ref == 0) ref = hnorm;
      if (std::abs(h(l, l - 1)) <= kEps * ref) {
        h(l, l - 1) = 0;
        break;
      }
    }
    if (l == hi) {
      --hi;
      iter = 0;
      continue;
    }
    if (++iter > kMaxIterPerValue) {
      throw Error(ErrorKind::NoConvergence, "QR iteration did not converge");
    }

    cplx mu;
    if (iter % 10 == 0) {
      // exceptional shift to break cycles
      mu = h(hi, hi) + std::abs(h(hi, hi - 1).real()) +
           (hi >= 2 ? std::abs(h(hi - 1, hi - 2).real()) : 0.0);
    } else {
      const cplx a = h(hi - 1, hi - 1), b = h(hi - 1, hi);
      const cplx c = h(hi, hi - 1), d = h(hi, hi);
      const cplx m = 0.5 * (a + d);
      const cplx disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
      const cplx mu1 = m + disc, mu2 = m - disc;
      mu = std::abs(mu1 - d) < std::abs(mu2 - d) ? mu1 : mu2;
    }

    cplx x = h(l, l) - mu;
    cplx y = h(l + 1, l);
    for (std::size_t k = l; k < hi; ++k) {
      if (k > l) {
        x = h(k, k - 1);
        y = h(k + 1, k - 1);
      }
      const Givens g = make_givens(x, y);
      rotate_rows(k, g, k > l ? k - 1 : l);
      if (k > l) h(k + 1, k - 1) = 0;
      rotate_cols(h, k, g, std::min(k + 3, hi + 1));
      if (z) rotate_cols(*z, k, g, n);
    }
  }
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) h(i, j) = 0;
}

std::vector<std::size_t> sort_order(const ComplexVector& values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return before(values[a], values[b]); });
  // Real parts that agree to rounding count as ties: reorder such runs by imaginary part.
  double scale = 0;
  for (const cplx& v : values) scale = std::max(scale, std::abs(v));
  const double tol = 64 * kEps * scale;
  std::size_t start = 0;
  for (std::size_t k = 1; k <= idx.size(); ++k) {
    if (k < idx.size() && values[idx[k]].real() - values[idx[k - 1]].real() <= tol) continue;
    std::stable_sort(idx.begin() + static_cast<std::ptrdiff_t>(start), idx.begin() + static_cast<std::ptrdiff_t>(k),
                     [&](std::size_t a, std::size_t b) { return values[a].imag() < values[b].imag(); });
    start = k;
  }
  return idx;
}

ComplexVector sorted(const ComplexVector& values) {
  ComplexVector out;
  out.reserve(values.size());
  for (std::size_t k : sort_order(values)) out.push_back(values[k]);
  return out;
}

struct Lu {
  ComplexMatrix lu;
  std::vector<std::size_t> perm;
};

Lu lu_factor(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  Lu f{a, std::vector<std::size_t>(n)};
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
  auto& m = f.lu;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(p, k))) p = i;
    if (m(p, k) == cplx(0) || !std::isfinite(std::abs(m(p, k)))) {
      throw Error(ErrorKind::NonFinite, "singular matrix in LU factorization");
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      std::swap(f.perm[k], f.perm[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      m(i, k) /= m(k, k);
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= m(i, k) * m(k, j);
    }
  }
  return f;
}

ComplexVector lu_solve(const Lu& f, std::span<const cplx> b) {
  const std::size_t n = f.lu.dim();
  ComplexVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
    x[i] /= f.lu(i, i);
  }
  return x;
}

ComplexMatrix lu_solve(const Lu& f, const ComplexMatrix& b) {
  const std::size_t n = b.dim();
  ComplexMatrix x(n);
  ComplexVector col(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = b(i, j);
    const ComplexVector s = lu_solve(f, col);
    for (std::size_t i = 0; i < n; ++i) x(i, j) = s[i];
  }
  return x;
}

}  // namespace

// ---------------------------------------------------------------- ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t n) : n_(n), a_(n * n) {}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : n_(rows.size()), a_() {
  a_.reserve(n_ * n_);
  for (const auto& r : rows) {
    if (r.size() != n_) throw Error(ErrorKind::InvalidArgument, "matrix literal is not square");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> d) {
  ComplexMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(a_.begin(), a_.end(), [](const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

double ComplexMatrix::norm1() const noexcept {
  double best = 0;
  for (std::size_t j = 0; j < n_; ++j) {
    double s = 0;
    for (std::size_t i = 0; i < n_; ++i) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (rhs.n_ != n_) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (rhs.n_ != n_) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) noexcept {
  for (auto& z : a_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.n_ != b.n_) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  const std::size_t n = a.n_;
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0)) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

ComplexVector operator*(const ComplexMatrix& a, std::span<const cplx> v) {
  if (v.size() != a.n_) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  ComplexVector r(a.n_);
  for (std::size_t i = 0; i < a.n_; ++i) {
    cplx s = 0;
    for (std::size_t j = 0; j < a.n_; ++j) s += a(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

double norm2(std::span<const cplx> v) noexcept {
  double s = 0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

// ------------------------------------------------------------------ eigenproblem

EigenSystem eigen_decompose(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  require_dim(n);
  if (!a.all_finite()) throw Error(ErrorKind::NonFinite, "matrix has non-finite entries");

  ComplexMatrix t = a;
  std::vector<double> scale;
  balance(t, scale);
  ComplexMatrix z = ComplexMatrix::identity(n);
  hessenberg(t, &z);
  schur(t, &z);

  // Back-substitution for the eigenvectors of the triangular factor.
  const double smin = std::max(kEps * t.norm1(), std::numeric_limits<double>::min());
  ComplexMatrix vec(n);
  ComplexVector y(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::fill(y.begin(), y.end(), cplx(0));
    y[k] = 1;
    for (std::size_t i = k; i-- > 0;) {
      cplx s = 0;
      for (std::size_t j = i + 1; j <= k; ++j) s += t(i, j) * y[j];
      cplx d = t(i, i) - t(k, k);
      if (std::abs(d) < smin) d = smin;
      y[i] = -s / d;
      if (const double big = std::abs(y[i]); big > 1e100) {
        for (std::size_t j = i; j <= k; ++j) y[j] /= big;
      }
    }
    ComplexVector v = z * std::span<const cplx>(y);
    for (std::size_t i = 0; i < n; ++i) v[i] *= scale[i];
    const double nv = norm2(v);
    for (std::size_t i = 0; i < n; ++i) vec(i, k) = v[i] / nv;
  }

  ComplexVector raw(n);
  for (std::size_t k = 0; k < n; ++k) raw[k] = t(k, k);
  const auto order = sort_order(raw);

  EigenSystem es;
  es.values.resize(n);
  es.vectors = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    es.values[k] = raw[order[k]];
    for (std::size_t i = 0; i < n; ++i) es.vectors(i, k) = vec(i, order[k]);
  }
  if (!es.vectors.all_finite()) {
    es.condition = std::numeric_limits<double>::infinity();
    return es;
  }
  try {
    es.condition = es.vectors.norm1() * inverse(es.vectors).norm1();
    if (!std::isfinite(es.condition)) es.condition = std::numeric_limits<double>::infinity();
  } catch (const Error&) {
    es.condition = std::numeric_limits<double>::infinity();
  }
  return es;
}

EigenSystem eig(const ComplexMatrix& a) {
  EigenSystem es = eigen_decompose(a);
  if (!(es.condition <= kNearDefectiveCondition)) {
    throw Error(ErrorKind::NearDefective,
                "eigenvector condition " + std::to_string(es.condition) + " exceeds 1e8");
  }
  return es;
}

ComplexVector eigenvalues(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  require_dim(n);
  if (!a.all_finite()) throw Error(ErrorKind::NonFinite, "matrix has non-finite entries");
  ComplexMatrix t = a;
  std::vector<double> scale;
  balance(t, scale);
  hessenberg(t, nullptr);
  schur(t, nullptr);
  ComplexVector v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = t(k, k);
  return sorted(v);
}

// ---------------------------------------------------------------- linear solves

ComplexVector solve(const ComplexMatrix& a, std::span<const cplx> b) {
  require_dim(a.dim());
  if (b.size() != a.dim()) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  return lu_solve(lu_factor(a), b);
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  require_dim(a.dim());
  return lu_solve(lu_factor(a), ComplexMatrix::identity(a.dim()));
}

// ----------------------------------------------------------- matrix exponential

ComplexMatrix expm(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  require_dim(n);
  if (!a.all_finite()) throw Error(ErrorKind::NonFinite, "matrix has non-finite entries");

  static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  const double nrm = a.norm1();
  int s = 0;
  if (nrm > theta13) s = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
  ComplexMatrix x = a * cplx(std::ldexp(1.0, -s));

  const ComplexMatrix id = ComplexMatrix::identity(n);
  const ComplexMatrix x2 = x * x;
  const ComplexMatrix x4 = x2 * x2;
  const ComplexMatrix x6 = x4 * x2;

  ComplexMatrix u_inner = x6 * (b[13] * x6 + b[11] * x4 + b[9] * x2);
  u_inner += b[7] * x6 + b[5] * x4 + b[3] * x2 + b[1] * id;
  const ComplexMatrix u = x * u_inner;
  ComplexMatrix v = x6 * (b[12] * x6 + b[10] * x4 + b[8] * x2);
  v += b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * id;

  ComplexMatrix r = lu_solve(lu_factor(v - u), v + u);
  for (int k = 0; k < s; ++k) r = r * r;
  if (!r.all_finite()) throw Error(ErrorKind::NonFinite, "matrix exponential overflowed");
  return r;
}

ComplexVector expm_action(const ComplexMatrix& a, std::span<const cplx> v, double t) {
  if (!(t >= 0)) throw Error(ErrorKind::InvalidArgument, "expm_action requires t >= 0");
  if (v.size() != a.dim()) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  if (t == 0) return ComplexVector(v.begin(), v.end());
  ComplexVector r = expm(a * cplx(-t)) * v;
  for (const auto& z : r) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorKind::NonFinite, "expm_action produced a non-finite result");
    }
  }
  return r;
}

// ---------------------------------------------------------------- polynomials

cplx polyval(std::span<const double> coeffs, cplx x) noexcept {
  cplx p = 0;
  for (std::size_t k = coeffs.size(); k-- > 0;) p = p * x + coeffs[k];
  return p;
}

ComplexVector polyroots(std::span<const double> coeffs) {
  std::size_t size = coeffs.size();
  while (size > 0 && coeffs[size - 1] == 0) --size;
  if (size < 2) throw Error(ErrorKind::DegreeZero, "polynomial has no non-constant term");
  for (std::size_t k = 0; k < size; ++k) {
    if (!std::isfinite(coeffs[k])) throw Error(ErrorKind::NonFinite, "non-finite coefficient");
  }
  const std::size_t deg = size - 1;
  if (deg > ComplexMatrix::kMaxDim) {
    throw Error(ErrorKind::InvalidArgument, "polynomial degree exceeds 8");
  }
  const auto c = coeffs.first(size);

  ComplexMatrix comp(deg);
  for (std::size_t i = 1; i < deg; ++i) comp(i, i - 1) = 1;
  for (std::size_t i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i] / c[deg];
  ComplexVector roots = eigenvalues(comp);

  // Newton polish; a step is kept only when it lowers |p|.
  std::vector<double> dc(deg);
  for (std::size_t k = 1; k <= deg; ++k) dc[k - 1] = static_cast<double>(k) * c[k];
  for (auto& r : roots) {
    for (int it = 0; it < 3; ++it) {
      const cplx p = polyval(c, r);
      const cplx dp = polyval(dc, r);
      if (p == cplx(0) || dp == cplx(0)) break;
      const cplx cand = r - p / dp;
      if (std::abs(polyval(c, cand)) < std::abs(p)) {
        r = cand;
      } else {
        break;
      }
    }
  }
  return sorted(roots);
}

}  // namespace lyjump
