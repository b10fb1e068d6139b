#include "gptcone/appendix.hpp"

#include <cmath>

namespace gptcone::appendix {

namespace {

HermMatrix real4(std::initializer_list<double> entries, double scale) {
  Eigen::Matrix4d m;
  auto it = entries.begin();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = *it++ * scale;
  return HermMatrix::from_real(m);
}

HermMatrix qubit_projector(double a, double b) {
  CVector v(2);
  v << a, b;
  return HermMatrix::projector(v);
}

}  // namespace

BipartiteDims dims() { return BipartiteDims(2, 2); }

HermMatrix e1() {
  return real4({2, 0, 0, -1,
                0, 0, -1, 0,
                0, -1, 0, 0,
                -1, 0, 0, 2}, 0.5);
}

HermMatrix e2() {
  return real4({0, 0, 0, 1,
                0, 2, 1, 0,
                0, 1, 2, 0,
                1, 0, 0, 0}, 0.5);
}

HermMatrix rho1() { return tensor(qubit_projector(1, 0), qubit_projector(1, 0)); }

HermMatrix rho2() { return tensor(qubit_projector(1, 1), qubit_projector(1, 1)); }

HermMatrix sigma1() {
  const double s = std::sqrt(3.0);
  return real4({3, s, s, s,
                s, 1, 1, 1,
                s, 1, 1, 1,
                s, 1, 1, 1}, 1.0 / 6.0);
}

HermMatrix sigma2() {
  const double s = std::sqrt(3.0);
  return real4({3, -s, -s, -s,
                -s, 1, 1, 1,
                -s, 1, 1, 1,
                -s, 1, 1, 1}, 1.0 / 6.0);
}

HermMatrix product00() { return tensor(qubit_projector(1, 0), qubit_projector(1, 0)); }

HermMatrix product11() { return tensor(qubit_projector(0, 1), qubit_projector(0, 1)); }

}  // namespace gptcone::appendix
