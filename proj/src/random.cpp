#include "gptcone/random.hpp"

#include <cmath>

namespace gptcone {

CVector random_gaussian_vector(int n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVector v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx(g(rng), g(rng));
  return v;
}

CVector random_unit_vector(int n, Rng& rng) {
  CVector v = random_gaussian_vector(n, rng);
  return v / v.norm();
}

CMatrix haar_unitary(int n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = cplx(g(rng), g(rng)) / std::sqrt(2.0);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    const cplx phase = mag > 0 ? r(j, j) / mag : cplx(1.0);
    q.col(j) *= phase;
  }
  return q;
}

HermMatrix random_hermitian(int n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = g(rng);
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = cplx(g(rng), g(rng)) / std::sqrt(2.0);
      m(j, i) = std::conj(m(i, j));
    }
  }
  return HermMatrix(std::move(m));
}

HermMatrix random_density(int n, Rng& rng, int rank) {
  if (rank <= 0 || rank > n) rank = n;
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix z(n, rank);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < rank; ++j) z(i, j) = cplx(g(rng), g(rng));
  CMatrix rho = z * z.adjoint();
  rho /= rho.trace().real();
  return HermMatrix::trusted(std::move(rho));
}

HermMatrix random_pure_state(int n, Rng& rng) {
  return HermMatrix::projector(random_unit_vector(n, rng));
}

HermMatrix random_product_pure_state(BipartiteDims dims, Rng& rng) {
  const CVector a = random_unit_vector(dims.a, rng);
  const CVector b = random_unit_vector(dims.b, rng);
  return HermMatrix::projector(tensor(a, b));
}

HermMatrix random_separable_state(BipartiteDims dims, Rng& rng, int terms) {
  HermMatrix acc = HermMatrix::zero(dims.total());
  double total = 0.0;
  for (int t = 0; t < terms; ++t) {
    const double w = uniform01(rng) + 1e-3;
    acc += w * random_product_pure_state(dims, rng);
    total += w;
  }
  return acc / total;
}

double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace gptcone
