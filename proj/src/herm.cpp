#include "gptcone/herm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gptcone/random.hpp"

namespace gptcone {

namespace {

CMatrix symmetrized(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

HermMatrix spectral_map(const HermMatrix& x, double (*f)(double)) {
  const Spectrum s = eig_ascending(x);
  RVector mapped = s.values.unaryExpr(f);
  return HermMatrix::trusted(s.vectors * mapped.asDiagonal() * s.vectors.adjoint());
}

}  // namespace

HermMatrix::HermMatrix(CMatrix m, Repair repair) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << "HermMatrix: matrix is " << m.rows() << "x" << m.cols() << ", not square";
    throw DimensionError(os.str());
  }
  if (m.rows() == 0) throw DimensionError("HermMatrix: dimension must be positive");
  if (!m.allFinite()) throw ValidationError("HermMatrix: non-finite entry");
  if (repair == Repair::kSymmetrize) {
    m_ = symmetrized(m);
    return;
  }
  const double defect = hermiticity_defect(m);
  if (defect > kHermiticityTol) {
    std::ostringstream os;
    os << "HermMatrix: not Hermitian (max |A_ij - conj(A_ji)| = " << defect << ")";
    throw ValidationError(os.str());
  }
  m_ = symmetrized(m);
}

double HermMatrix::hermiticity_defect(const CMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermMatrix HermMatrix::zero(int dim) {
  if (dim <= 0) throw DimensionError("HermMatrix::zero: dimension must be positive");
  return HermMatrix(Unchecked{}, CMatrix::Zero(dim, dim));
}

HermMatrix HermMatrix::identity(int dim) {
  if (dim <= 0) throw DimensionError("HermMatrix::identity: dimension must be positive");
  return HermMatrix(Unchecked{}, CMatrix::Identity(dim, dim));
}

HermMatrix HermMatrix::diagonal(std::span<const double> entries) {
  const int n = static_cast<int>(entries.size());
  if (n == 0) throw DimensionError("HermMatrix::diagonal: empty");
  CMatrix m = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = entries[static_cast<std::size_t>(i)];
  return HermMatrix(Unchecked{}, std::move(m));
}

HermMatrix HermMatrix::projector(const CVector& v) {
  const double n2 = v.squaredNorm();
  if (v.size() == 0 || n2 == 0.0) throw DomainError("HermMatrix::projector: zero vector");
  return trusted(v * v.adjoint() / n2);
}

HermMatrix HermMatrix::from_real(const Eigen::MatrixXd& m) {
  return HermMatrix(m.cast<cplx>());
}

HermMatrix HermMatrix::trusted(CMatrix m) {
  return HermMatrix(Unchecked{}, symmetrized(m));
}

HermMatrix HermMatrix::operator-() const { return HermMatrix(Unchecked{}, -m_); }

HermMatrix& HermMatrix::operator+=(const HermMatrix& o) {
  require_same_dim(*this, o, "operator+");
  m_ += o.m_;
  return *this;
}

HermMatrix& HermMatrix::operator-=(const HermMatrix& o) {
  require_same_dim(*this, o, "operator-");
  m_ -= o.m_;
  return *this;
}

HermMatrix& HermMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

BipartiteDims::BipartiteDims(int da, int db) : a(da), b(db) {
  if (da <= 0 || db <= 0) throw DimensionError("BipartiteDims: local dimensions must be positive");
}

void require_same_dim(const HermMatrix& x, const HermMatrix& y, const char* what) {
  if (x.dim() != y.dim()) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << x.dim() << " vs " << y.dim() << ")";
    throw DimensionError(os.str());
  }
}

void require_dims(const HermMatrix& x, BipartiteDims dims, const char* what) {
  if (x.dim() != dims.total()) {
    std::ostringstream os;
    os << what << ": matrix dimension " << x.dim() << " does not match " << dims.a << "x"
       << dims.b;
    throw DimensionError(os.str());
  }
}

Spectrum eig_ascending(const HermMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a.matrix());
  if (es.info() != Eigen::Success) throw ValidationError("eig_ascending: eigensolver failed");
  return Spectrum{es.eigenvalues(), es.eigenvectors()};
}

double min_eigenvalue(const HermMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_eigenvalue(const HermMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

bool is_psd(const HermMatrix& a, double tol) { return min_eigenvalue(a) >= -tol; }

double trace_inner(const HermMatrix& x, const HermMatrix& y) {
  require_same_dim(x, y, "trace_inner");
  // Tr XY = sum_ij X_ij Y_ji = sum_ij X_ij conj(Y_ij) for Hermitian Y.
  return (x.matrix().array() * y.matrix().array().conjugate()).sum().real();
}

double norm(const HermMatrix& x, NormKind kind) {
  switch (kind) {
    case NormKind::kHilbertSchmidt:
      return x.matrix().norm();
    case NormKind::kTrace: {
      Eigen::SelfAdjointEigenSolver<CMatrix> es(x.matrix(), Eigen::EigenvaluesOnly);
      return es.eigenvalues().cwiseAbs().sum();
    }
    case NormKind::kOperator: {
      Eigen::SelfAdjointEigenSolver<CMatrix> es(x.matrix(), Eigen::EigenvaluesOnly);
      return es.eigenvalues().cwiseAbs().maxCoeff();
    }
  }
  return 0.0;
}

HermMatrix positive_part(const HermMatrix& x) {
  return spectral_map(x, [](double v) { return v > 0 ? v : 0.0; });
}

HermMatrix negative_part(const HermMatrix& x) {
  return spectral_map(x, [](double v) { return v < 0 ? v : 0.0; });
}

HermMatrix abs(const HermMatrix& x) {
  return spectral_map(x, [](double v) { return std::abs(v); });
}

HermMatrix project_psd(const HermMatrix& x) { return positive_part(x); }

HermMatrix conjugate(const HermMatrix& x, const CMatrix& u) {
  if (u.rows() != x.dim() || u.cols() != x.dim())
    throw DimensionError("conjugate: unitary dimension mismatch");
  return HermMatrix::trusted(u * x.matrix() * u.adjoint());
}

HermMatrix transpose(const HermMatrix& x) {
  return HermMatrix::trusted(x.matrix().transpose());
}

HermMatrix tensor(const HermMatrix& x, const HermMatrix& y) {
  const int dx = x.dim();
  const int dy = y.dim();
  CMatrix out(dx * dy, dx * dy);
  for (int i = 0; i < dx; ++i)
    for (int j = 0; j < dx; ++j) out.block(i * dy, j * dy, dy, dy) = x(i, j) * y.matrix();
  return HermMatrix::trusted(std::move(out));
}

CVector tensor(const CVector& x, const CVector& y) {
  CVector out(x.size() * y.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out.segment(i * y.size(), y.size()) = x(i) * y;
  return out;
}

HermMatrix partial_trace(const HermMatrix& x, BipartiteDims dims, Subsystem keep) {
  require_dims(x, dims, "partial_trace");
  const int da = dims.a;
  const int db = dims.b;
  const CMatrix& m = x.matrix();
  if (keep == Subsystem::kA) {
    CMatrix out = CMatrix::Zero(da, da);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j)
        for (int k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
    return HermMatrix::trusted(std::move(out));
  }
  CMatrix out = CMatrix::Zero(db, db);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
  return HermMatrix::trusted(std::move(out));
}

HermMatrix partial_transpose(const HermMatrix& x, BipartiteDims dims) {
  require_dims(x, dims, "partial_transpose");
  const int da = dims.a;
  const int db = dims.b;
  const CMatrix& m = x.matrix();
  CMatrix out(m.rows(), m.cols());
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int a2 = 0; a2 < da; ++a2)
        for (int b2 = 0; b2 < db; ++b2) out(a * db + b, a2 * db + b2) = m(a * db + b2, a2 * db + b);
  return HermMatrix::trusted(std::move(out));
}

HermMatrix partial_contract(const HermMatrix& x_a, const HermMatrix& x, BipartiteDims dims) {
  require_dims(x, dims, "partial_contract");
  if (x_a.dim() != dims.a) throw DimensionError("partial_contract: x_A must act on subsystem A");
  const int da = dims.a;
  const int db = dims.b;
  const CMatrix& m = x.matrix();
  CMatrix out = CMatrix::Zero(db, db);
  for (int a = 0; a < da; ++a)
    for (int a2 = 0; a2 < da; ++a2) {
      const cplx w = x_a(a2, a);
      if (w == cplx(0.0)) continue;
      out += w * m.block(a * db, a2 * db, db, db);
    }
  return HermMatrix::trusted(std::move(out));
}

std::vector<double> schmidt_coefficients(const CVector& v, BipartiteDims dims) {
  if (v.size() != dims.total()) throw DimensionError("schmidt_coefficients: vector length mismatch");
  const int k = std::min(dims.a, dims.b);
  const double n = v.norm();
  if (n == 0.0) return std::vector<double>(static_cast<std::size_t>(k), 0.0);
  CMatrix c(dims.a, dims.b);
  for (int i = 0; i < dims.a; ++i)
    for (int j = 0; j < dims.b; ++j) c(i, j) = v(i * dims.b + j) / n;
  Eigen::JacobiSVD<CMatrix> svd(c);
  const RVector& s = svd.singularValues();  // descending
  return {s.data(), s.data() + s.size()};
}

double nege(const HermMatrix& x) { return std::max(-min_eigenvalue(x), 0.0); }

double sco(const CVector& v, BipartiteDims dims) {
  const auto s = schmidt_coefficients(v, dims);
  if (s.size() < 2) return 0.0;
  return s[0] * s[1];
}

double fidelity(const HermMatrix& rho, const HermMatrix& sigma) {
  require_same_dim(rho, sigma, "fidelity");
  const Spectrum s = eig_ascending(sigma);
  const int d = sigma.dim();
  const double top = s.values(d - 1);
  const double rest = s.values.head(d - 1).cwiseAbs().sum();
  if (top <= 0.0 || rest > 1e-8 * std::max(1.0, top))
    throw DomainError("fidelity: sigma is not a rank-one state");
  return trace_inner(rho, sigma);
}

CVector canonical_max_entangled(int m) {
  if (m <= 0) throw DimensionError("canonical_max_entangled: m must be positive");
  CVector v = CVector::Zero(m * m);
  for (int i = 0; i < m; ++i) v(i * m + i) = 1.0 / std::sqrt(static_cast<double>(m));
  return v;
}

bool is_maximally_entangled(const HermMatrix& sigma, BipartiteDims dims, double tol) {
  if (dims.a != dims.b || sigma.dim() != dims.total()) return false;
  const Spectrum s = eig_ascending(sigma);
  const int d = sigma.dim();
  if (std::abs(s.values(d - 1) - 1.0) > tol) return false;
  if (s.values.head(d - 1).cwiseAbs().maxCoeff() > tol) return false;
  const HermMatrix target = HermMatrix::identity(dims.a) / dims.a;
  const double ea = (partial_trace(sigma, dims, Subsystem::kA) - target).matrix().cwiseAbs().maxCoeff();
  const double eb = (partial_trace(sigma, dims, Subsystem::kB) - target).matrix().cwiseAbs().maxCoeff();
  return ea <= tol && eb <= tol;
}

EntangledFidelity max_entangled_fidelity(const HermMatrix& rho, BipartiteDims dims, int restarts,
                                         std::uint64_t seed) {
  require_dims(rho, dims, "max_entangled_fidelity");
  if (dims.a != dims.b) throw DimensionError("max_entangled_fidelity: requires dA == dB");
  const int m = dims.a;
  const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m));
  // c(U) = vec(U^T)/sqrt(m) is the coefficient vector of (I (x) U)|Phi>.
  // A PSD shift keeps the quadratic form convex without moving the argmax.
  const double shift = std::max(0.0, -min_eigenvalue(rho));
  const CMatrix q = rho.matrix() + shift * CMatrix::Identity(rho.dim(), rho.dim());

  auto coeffs = [&](const CMatrix& u) {
    CVector c(m * m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) c(i * m + j) = u(j, i) * inv_sqrt_m;
    return c;
  };
  auto value_of = [&](const CVector& c) { return (c.adjoint() * rho.matrix() * c)(0, 0).real(); };

  Rng rng(seed);
  EntangledFidelity best;
  best.value = -std::numeric_limits<double>::infinity();
  best.restarts = std::max(restarts, 1);
  best.seed = seed;
  for (int r = 0; r < best.restarts; ++r) {
    CMatrix u = r == 0 ? CMatrix::Identity(m, m) : haar_unitary(m, rng);
    CVector c = coeffs(u);
    double f = value_of(c);
    for (int it = 0; it < 500; ++it) {
      const CVector w = q * c;
      CMatrix wt(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) wt(j, i) = w(i * m + j);
      Eigen::JacobiSVD<CMatrix> svd(wt, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const CMatrix u_next = svd.matrixU() * svd.matrixV().adjoint();
      const CVector c_next = coeffs(u_next);
      const double f_next = value_of(c_next);
      const bool stalled = f_next - f <= 1e-15 * std::max(1.0, std::abs(f));
      if (f_next >= f) {
        u = u_next;
        c = c_next;
        f = f_next;
      }
      if (stalled) break;
    }
    if (f > best.value) {
      best.value = f;
      best.local_unitary = u;
      best.argmax = HermMatrix::projector(c);
    }
  }
  return best;
}

RVector to_real_vector(const HermMatrix& x) {
  const int d = x.dim();
  RVector v(d * d);
  int k = 0;
  const double s2 = std::sqrt(2.0);
  for (int i = 0; i < d; ++i) v(k++) = x(i, i).real();
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      v(k++) = s2 * x(i, j).real();
      v(k++) = s2 * x(i, j).imag();
    }
  return v;
}

HermMatrix from_real_vector(const RVector& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim)
    throw DimensionError("from_real_vector: length is not dim^2");
  CMatrix m = CMatrix::Zero(dim, dim);
  int k = 0;
  const double s2 = std::sqrt(2.0);
  for (int i = 0; i < dim; ++i) m(i, i) = v(k++);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      const double re = v(k++) / s2;
      const double im = v(k++) / s2;
      m(i, j) = cplx(re, im);
      m(j, i) = cplx(re, -im);
    }
  return HermMatrix::trusted(std::move(m));
}

}  // namespace gptcone
