#pragma once

// Reference computations for the tests. They use plain nested vectors and a
// cyclic Jacobi eigensolver so that they share no code with the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "gptcone/herm.hpp"

namespace oracle {

using C = std::complex<double>;
using Mat = std::vector<std::vector<C>>;

inline Mat zeros(int n) { return Mat(n, std::vector<C>(n, C(0.0))); }

inline Mat from(const gptcone::HermMatrix& x) {
  Mat m = zeros(x.dim());
  for (int i = 0; i < x.dim(); ++i)
    for (int j = 0; j < x.dim(); ++j) m[i][j] = x(i, j);
  return m;
}

inline double max_diff(const Mat& a, const gptcone::HermMatrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a[i][j] - b(static_cast<int>(i), static_cast<int>(j))));
  return d;
}

inline Mat kron(const Mat& a, const Mat& b) {
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  Mat out = zeros(static_cast<int>(na * nb));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) out[i * nb + k][j * nb + l] = a[i][j] * b[k][l];
  return out;
}

inline Mat sub(const Mat& a, const Mat& b) {
  Mat out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) out[i][j] -= b[i][j];
  return out;
}

inline Mat partial_transpose(const Mat& x, int da, int db) {
  Mat y = zeros(da * db);
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int a2 = 0; a2 < da; ++a2)
        for (int b2 = 0; b2 < db; ++b2) y[a * db + b][a2 * db + b2] = x[a * db + b2][a2 * db + b];
  return y;
}

inline Mat partial_trace_b(const Mat& x, int da, int db) {
  Mat y = zeros(da);
  for (int a = 0; a < da; ++a)
    for (int a2 = 0; a2 < da; ++a2)
      for (int b = 0; b < db; ++b) y[a][a2] += x[a * db + b][a2 * db + b];
  return y;
}

inline Mat partial_trace_a(const Mat& x, int da, int db) {
  Mat y = zeros(db);
  for (int b = 0; b < db; ++b)
    for (int b2 = 0; b2 < db; ++b2)
      for (int a = 0; a < da; ++a) y[b][b2] += x[a * db + b][a * db + b2];
  return y;
}

inline C trace_product(const Mat& a, const Mat& b) {
  C s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) s += a[i][j] * b[j][i];
  return s;
}

// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, ascending.
inline std::vector<double> jacobi_symmetric(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

// Hermitian eigenvalues via the real embedding [[Re, -Im], [Im, Re]]; every
// eigenvalue appears twice there, so every other one is kept.
inline std::vector<double> eigenvalues(const Mat& h) {
  const std::size_t n = h.size();
  std::vector<std::vector<double>> r(2 * n, std::vector<double>(2 * n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      r[i][j] = h[i][j].real();
      r[i + n][j + n] = h[i][j].real();
      r[i][j + n] = -h[i][j].imag();
      r[i + n][j] = h[i][j].imag();
    }
  const std::vector<double> all = jacobi_symmetric(r);
  std::vector<double> ev;
  for (std::size_t i = 0; i < all.size(); i += 2) ev.push_back(all[i]);
  return ev;
}

inline double trace_norm(const Mat& h) {
  double s = 0.0;
  for (double v : eigenvalues(h)) s += std::abs(v);
  return s;
}

inline double helstrom(const gptcone::HermMatrix& r1, const gptcone::HermMatrix& r2) {
  return 1.0 - 0.5 * trace_norm(sub(from(r1), from(r2)));
}

// Schmidt coefficients: square roots of the eigenvalues of the reduced state, descending.
inline std::vector<double> schmidt(const gptcone::CVector& v, int da, int db) {
  const double nrm = v.norm();
  Mat r = zeros(da);
  for (int a = 0; a < da; ++a)
    for (int a2 = 0; a2 < da; ++a2)
      for (int b = 0; b < db; ++b) r[a][a2] += v(a * db + b) * std::conj(v(a2 * db + b)) / (nrm * nrm);
  std::vector<double> ev = eigenvalues(r);
  std::vector<double> out;
  for (auto it = ev.rbegin(); it != ev.rend(); ++it) out.push_back(std::sqrt(std::max(*it, 0.0)));
  return out;
}

// Minimum of <a (x) b|X|a (x) b> over a grid on both Bloch spheres (2x2 only).
inline double product_min_grid(const gptcone::HermMatrix& x, int steps = 48) {
  const double pi = 3.14159265358979323846;
  double best = 1e300;
  std::vector<std::vector<C>> qubits;
  for (int i = 0; i <= steps; ++i)
    for (int j = 0; j < 2 * steps; ++j) {
      const double th = pi * i / steps;
      const double ph = pi * j / steps;
      qubits.push_back({C(std::cos(th / 2), 0.0), std::polar(std::sin(th / 2), ph)});
    }
  for (const auto& a : qubits)
    for (const auto& b : qubits) {
      C v[4] = {a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
      C s = 0.0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += std::conj(v[i]) * x(i, j) * v[j];
      best = std::min(best, s.real());
    }
  return best;
}

}  // namespace oracle
