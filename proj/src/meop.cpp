#include "gptcone/meop.hpp"

#include <cmath>
#include <sstream>

namespace gptcone {

MeopFamily make_meop_family(std::vector<CVector> vectors, BipartiteDims dims, double tol) {
  if (dims.a != dims.b) throw DimensionError("MEOP family: requires dA == dB");
  const int total = dims.total();
  if (static_cast<int>(vectors.size()) != total) {
    std::ostringstream os;
    os << "MEOP family: expected " << total << " vectors, got " << vectors.size();
    throw ValidationError(os.str());
  }
  MeopFamily f;
  f.dims = dims;
  CMatrix frame(total, total);
  for (int k = 0; k < total; ++k) {
    CVector& v = vectors[static_cast<std::size_t>(k)];
    if (v.size() != total) throw DimensionError("MEOP family: vector length mismatch");
    frame.col(k) = v;
  }
  const double ortho = (frame.adjoint() * frame - CMatrix::Identity(total, total)).cwiseAbs().maxCoeff();
  if (ortho > tol) {
    std::ostringstream os;
    os << "MEOP family: vectors not orthonormal (defect " << ortho << ")";
    throw ValidationError(os.str());
  }
  const HermMatrix target = HermMatrix::identity(dims.a) / dims.a;
  for (int k = 0; k < total; ++k) {
    HermMatrix p = HermMatrix::projector(vectors[static_cast<std::size_t>(k)]);
    const double ea = (partial_trace(p, dims, Subsystem::kA) - target).matrix().cwiseAbs().maxCoeff();
    const double eb = (partial_trace(p, dims, Subsystem::kB) - target).matrix().cwiseAbs().maxCoeff();
    if (ea > tol || eb > tol) {
      std::ostringstream os;
      os << "MEOP family: member " << k << " is not maximally entangled";
      throw ValidationError(os.str());
    }
    f.projectors.push_back(std::move(p));
  }
  f.vectors = std::move(vectors);
  return f;
}

MeopFamily generalized_bell(int m) {
  if (m < 2) throw DomainError("generalized_bell: m must be >= 2");
  const CVector phi = canonical_max_entangled(m);
  const double pi = std::acos(-1.0);
  const cplx omega = std::polar(1.0, 2.0 * pi / m);
  std::vector<CVector> vectors;
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      // X^j Z^k |b> = omega^{k b} |b + j mod m>
      CMatrix w = CMatrix::Zero(m, m);
      for (int b = 0; b < m; ++b) w((b + j) % m, b) = std::pow(omega, k * b);
      CVector v = CVector::Zero(m * m);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) v.segment(a * m, m) += phi(a * m + b) * w.col(b);
      vectors.push_back(std::move(v));
    }
  }
  return make_meop_family(std::move(vectors), BipartiteDims(m, m));
}

MeopFamily swap_family(const MeopFamily& family) {
  if (family.size() < 2) throw DomainError("swap_family: needs at least two projectors");
  MeopFamily out = family;
  std::swap(out.vectors[0], out.vectors[1]);
  std::swap(out.projectors[0], out.projectors[1]);
  return out;
}

MeopFamily local_rotate_family(const MeopFamily& family, const CMatrix& ua, const CMatrix& ub) {
  CMatrix u(family.dims.total(), family.dims.total());
  for (int i = 0; i < ua.rows(); ++i)
    for (int j = 0; j < ua.cols(); ++j)
      u.block(i * ub.rows(), j * ub.cols(), ub.rows(), ub.cols()) = ua(i, j) * ub;
  std::vector<CVector> vectors;
  for (const CVector& v : family.vectors) vectors.push_back(u * v);
  return make_meop_family(std::move(vectors), family.dims, 1e-9);
}

HermMatrix npm_element(double lambda, const MeopFamily& family) {
  if (lambda < 0.0) throw DomainError("npm_element: lambda must be >= 0");
  if (family.size() < 2) throw DomainError("npm_element: family needs at least two projectors");
  HermMatrix n = -lambda * family.projectors[0] + (1.0 + lambda) * family.projectors[1];
  for (int k = 2; k < family.size(); ++k) n += 0.5 * family.projectors[static_cast<std::size_t>(k)];
  return n;
}

double r0(BipartiteDims dims) {
  return (std::sqrt(2.0 * dims.total()) - 2.0) / 4.0;
}

double eps_of_r(double r) {
  if (r < 0.0) throw DomainError("eps_of_r: r must be >= 0");
  return 2.0 * std::sqrt(2.0 * r / (2.0 * r + 1.0));
}

double r_of_eps(double eps) {
  if (eps < 0.0 || eps >= 2.0) throw DomainError("r_of_eps: eps must lie in [0, 2)");
  const double e2 = eps * eps;
  return e2 / (2.0 * (4.0 - e2));
}

PsesParams make_pses_params(std::vector<MeopFamily> families, double r) {
  if (families.empty()) throw DomainError("PsesParams: family set is empty");
  if (!(r >= 0.0)) throw DomainError("PsesParams: r must be >= 0");
  const BipartiteDims dims = families.front().dims;
  for (const MeopFamily& f : families)
    if (!(f.dims == dims)) throw DimensionError("PsesParams: families have different dimensions");
  PsesParams p;
  p.families = std::move(families);
  p.r = r;
  p.dims = dims;
  return p;
}

std::vector<MeopFamily> p0_families(const MeopFamily& family) {
  return {family, swap_family(family)};
}

std::vector<HermMatrix> npm_endpoints(const PsesParams& params) {
  std::vector<HermMatrix> out;
  for (const MeopFamily& f : params.families) {
    out.push_back(npm_element(0.0, f));
    if (params.r > 0.0) out.push_back(npm_element(params.r, f));
  }
  return out;
}

}  // namespace gptcone
