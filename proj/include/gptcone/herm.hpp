#pragma once

// Hermitian-matrix algebra over the trace inner product <X,Y> = Tr XY.
//
// HermMatrix is the element type of every real vector space in the library:
// states, effects, cone generators and witnesses are all HermMatrix values.
// Construction validates Hermiticity to an absolute tolerance of 1e-12;
// results of Hermiticity-preserving arithmetic skip the check and are
// re-symmetrized so that rounding never accumulates an anti-Hermitian part.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gptcone/errors.hpp"

namespace gptcone {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kDefaultTol = 1e-9;

class HermMatrix {
 public:
  enum class Repair { kNo, kSymmetrize };

  HermMatrix() = default;
  explicit HermMatrix(CMatrix m, Repair repair = Repair::kNo);

  static HermMatrix zero(int dim);
  static HermMatrix identity(int dim);
  static HermMatrix diagonal(std::span<const double> entries);
  static HermMatrix projector(const CVector& v);  // |v><v| / <v|v>
  static HermMatrix from_real(const Eigen::MatrixXd& m);
  // Result of an operation known to preserve Hermiticity; symmetrized, not checked.
  static HermMatrix trusted(CMatrix m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  cplx operator()(int i, int j) const { return m_(i, j); }
  double trace() const { return m_.trace().real(); }

  HermMatrix operator-() const;
  HermMatrix& operator+=(const HermMatrix& o);
  HermMatrix& operator-=(const HermMatrix& o);
  HermMatrix& operator*=(double s);

  friend HermMatrix operator+(HermMatrix a, const HermMatrix& b) { return a += b; }
  friend HermMatrix operator-(HermMatrix a, const HermMatrix& b) { return a -= b; }
  friend HermMatrix operator*(HermMatrix a, double s) { return a *= s; }
  friend HermMatrix operator*(double s, HermMatrix a) { return a *= s; }
  friend HermMatrix operator/(HermMatrix a, double s) { return a *= 1.0 / s; }

  // Largest |A_ij - conj(A_ji)| of an arbitrary square matrix.
  static double hermiticity_defect(const CMatrix& m);

 private:
  struct Unchecked {};
  HermMatrix(Unchecked, CMatrix m) : m_(std::move(m)) {}
  CMatrix m_;
};

struct BipartiteDims {
  int a = 1;
  int b = 1;

  BipartiteDims() = default;
  BipartiteDims(int da, int db);
  int total() const { return a * b; }
  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;
};

struct Spectrum {
  RVector values;    // ascending
  CMatrix vectors;   // column k belongs to values(k)
};

enum class NormKind { kTrace, kHilbertSchmidt, kOperator };
enum class Subsystem { kA, kB };

Spectrum eig_ascending(const HermMatrix& a);
double min_eigenvalue(const HermMatrix& a);
double max_eigenvalue(const HermMatrix& a);
bool is_psd(const HermMatrix& a, double tol = kDefaultTol);

double trace_inner(const HermMatrix& x, const HermMatrix& y);
double norm(const HermMatrix& x, NormKind kind);

HermMatrix positive_part(const HermMatrix& x);
HermMatrix negative_part(const HermMatrix& x);  // (x - |x|)/2, negative semidefinite
HermMatrix abs(const HermMatrix& x);
HermMatrix project_psd(const HermMatrix& x);     // same as positive_part
HermMatrix conjugate(const HermMatrix& x, const CMatrix& u);  // U X U^dagger
HermMatrix transpose(const HermMatrix& x);

HermMatrix tensor(const HermMatrix& x, const HermMatrix& y);
CVector tensor(const CVector& x, const CVector& y);
HermMatrix partial_trace(const HermMatrix& x, BipartiteDims dims, Subsystem keep);
HermMatrix partial_transpose(const HermMatrix& x, BipartiteDims dims);
// P_{xA}(X) = Tr_A[(xA (x) I) X], so that P_{xA}(a (x) b) = <a, xA> b.
HermMatrix partial_contract(const HermMatrix& x_a, const HermMatrix& x, BipartiteDims dims);

// Schmidt coefficients of v/|v| in descending order; all zeros for v = 0.
std::vector<double> schmidt_coefficients(const CVector& v, BipartiteDims dims);
// Magnitude of the most negative eigenvalue, 0 for PSD input.
double nege(const HermMatrix& x);
// Product of the two largest Schmidt coefficients of v/|v|; 0 for v = 0.
double sco(const CVector& v, BipartiteDims dims);

// Tr rho sigma for pure sigma. Throws DomainError when sigma is not rank one.
double fidelity(const HermMatrix& rho, const HermMatrix& sigma);

// (1/sqrt(m)) sum_i |ii>
CVector canonical_max_entangled(int m);
bool is_maximally_entangled(const HermMatrix& sigma, BipartiteDims dims, double tol);

struct EntangledFidelity {
  double value = 0.0;   // certified lower bound on F_max(rho)
  HermMatrix argmax;    // maximally entangled state achieving value
  CMatrix local_unitary;  // argmax = (I (x) U)|Phi><Phi|(I (x) U)^dagger
  int restarts = 0;
  std::uint64_t seed = 0;
};

// Lower bound on max_{sigma maximally entangled} Tr rho sigma by monotone
// polar-decomposition ascent over I (x) U, best over Haar restarts.
EntangledFidelity max_entangled_fidelity(const HermMatrix& rho, BipartiteDims dims,
                                         int restarts = 32, std::uint64_t seed = 7);

void require_same_dim(const HermMatrix& x, const HermMatrix& y, const char* what);
void require_dims(const HermMatrix& x, BipartiteDims dims, const char* what);

// Real orthonormal coordinates of the Hermitian space (d^2 reals) w.r.t. Tr XY.
RVector to_real_vector(const HermMatrix& x);
HermMatrix from_real_vector(const RVector& v, int dim);

}  // namespace gptcone
