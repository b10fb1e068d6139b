#include "gptcone/discrimination.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "gptcone/appendix.hpp"

namespace gptcone {

double err_of_measurement(const HermMatrix& rho1, const HermMatrix& rho2, const std::vector<HermMatrix>& effects) {
  if (effects.size() != 2) throw DomainError("err_of_measurement: measurement must have two outcomes");
  return trace_inner(rho1, effects[1]) + trace_inner(rho2, effects[0]);
}

void require_state(const HermMatrix& rho, const char* what, double tol) {
  if (std::abs(rho.trace() - 1.0) > tol) {
    std::ostringstream os;
    os << what << ": trace is " << rho.trace() << ", not 1";
    throw DomainError(os.str());
  }
  if (!is_psd(rho, tol)) throw DomainError(std::string(what) + ": not positive semidefinite");
}

HelstromResult helstrom(const HermMatrix& rho1, const HermMatrix& rho2) {
  require_same_dim(rho1, rho2, "helstrom");
  require_state(rho1, "helstrom rho1");
  require_state(rho2, "helstrom rho2");
  const HermMatrix diff = rho1 - rho2;
  const Spectrum s = eig_ascending(diff);
  CMatrix p = CMatrix::Zero(diff.dim(), diff.dim());
  for (int k = 0; k < diff.dim(); ++k)
    if (s.values(k) > 0) p += s.vectors.col(k) * s.vectors.col(k).adjoint();
  const HermMatrix m1 = HermMatrix::trusted(p);
  HelstromResult out;
  out.effects = {m1, HermMatrix::identity(rho1.dim()) - m1};
  out.value = 1.0 - 0.5 * norm(diff, NormKind::kTrace);
  return out;
}

ConeDiscrimination min_error_over_cone(const HermMatrix& rho1, const HermMatrix& rho2, const EffectCone& cone,
                                       const HermMatrix& unit,
                                       const std::vector<std::vector<HermMatrix>>& candidates,
                                       const AdmmOptions& opts) {
  require_same_dim(rho1, rho2, "min_error_over_cone");
  require_same_dim(rho1, unit, "min_error_over_cone");
  for (const HermMatrix& g : cone.generators) require_same_dim(unit, g, "min_error_over_cone");
  if (cone.generators.empty() && !cone.include_psd) throw DomainError("min_error_over_cone: empty effect cone");
  {
    ConicOptions co;
    co.tol = 1e-7;
    if (!conic_feasibility(unit, cone.generators, cone.include_psd, co).feasible)
      throw DomainError("min_error_over_cone: infeasible unit decomposition");
  }

  const int d = unit.dim();
  const int n = d * d;
  const int k = static_cast<int>(cone.generators.size());
  const int np = cone.include_psd ? n : 0;
  // z = (mu, nu, p, q); A z = G mu + G nu + p + q = vec(u).
  const int nz = 2 * k + 2 * np;
  Eigen::MatrixXd g(n, k);
  for (int i = 0; i < k; ++i) g.col(i) = to_real_vector(cone.generators[static_cast<std::size_t>(i)]);
  Eigen::MatrixXd a(n, nz);
  a.setZero();
  a.block(0, 0, n, k) = g;
  a.block(0, k, n, k) = g;
  if (np > 0) {
    a.block(0, 2 * k, n, n).setIdentity();
    a.block(0, 2 * k + n, n, n).setIdentity();
  }
  const RVector b = to_real_vector(unit);
  const RVector w = to_real_vector(rho2 - rho1);
  RVector c = RVector::Zero(nz);
  c.head(k) = g.transpose() * w;
  if (np > 0) c.segment(2 * k, n) = w;
  const double offset = trace_inner(rho1, unit);

  const Eigen::MatrixXd aat = a * a.transpose();
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> solver(aat);

  auto project_cone = [&](RVector v) {
    for (int i = 0; i < 2 * k; ++i) v(i) = std::max(v(i), 0.0);
    if (np > 0) {
      for (int blk = 0; blk < 2; ++blk) {
        const int off = 2 * k + blk * n;
        const HermMatrix p = project_psd(from_real_vector(v.segment(off, n), d));
        v.segment(off, n) = to_real_vector(p);
      }
    }
    return v;
  };

  const double rho = opts.rho;
  RVector z = RVector::Zero(nz);
  RVector y = RVector::Zero(nz);
  RVector x(nz);
  int it = 0;
  bool converged = false;
  const double scale = std::max(1.0, b.norm());
  for (; it < opts.iters; ++it) {
    const RVector v = z - y - c / rho;
    x = v - a.transpose() * solver.solve(a * v - b);
    const RVector z_prev = z;
    z = project_cone(x + y);
    y += x - z;
    const double primal = (x - z).norm();
    const double dual = rho * (z - z_prev).norm();
    if (primal <= opts.tol * scale && dual <= opts.tol * scale) {
      converged = true;
      ++it;
      break;
    }
  }

  RVector m = g * z.head(k);
  if (np > 0) m += z.segment(2 * k, n);
  const HermMatrix m1 = from_real_vector(m, d);
  ConeDiscrimination out;
  out.effects = {m1, unit - m1};
  out.value = offset + trace_inner(rho2 - rho1, m1);
  out.feasibility_residual = (a * z - b).norm();
  out.iterations = it;
  out.converged = converged;
  for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
    const double v = err_of_measurement(rho1, rho2, candidates[ci]);
    if (v < out.value) {
      out.value = v;
      out.effects = candidates[ci];
      out.candidate = static_cast<int>(ci);
    }
  }
  return out;
}

double distinguishability_deviation(const std::vector<HermMatrix>& states, const std::vector<HermMatrix>& effects) {
  if (states.size() != effects.size())
    throw DimensionError("perfectly_distinguishable: number of states and effects differ");
  double dev = 0.0;
  for (std::size_t k = 0; k < states.size(); ++k)
    for (std::size_t l = 0; l < effects.size(); ++l)
      dev = std::max(dev, std::abs(trace_inner(states[k], effects[l]) - (k == l ? 1.0 : 0.0)));
  return dev;
}

bool perfectly_distinguishable(const std::vector<HermMatrix>& states, const std::vector<HermMatrix>& effects,
                               double tol) {
  return distinguishability_deviation(states, effects) <= tol;
}

namespace {

void require_pure(const HermMatrix& rho, const char* what) {
  require_state(rho, what);
  if (std::abs(trace_inner(rho, rho) - 1.0) > 1e-9) throw DomainError(std::string(what) + ": state is not pure");
}

}  // namespace

AraiResult arai_criterion(const HermMatrix& rho_a1, const HermMatrix& rho_b1, const HermMatrix& rho_a2,
                          const HermMatrix& rho_b2) {
  require_pure(rho_a1, "arai_criterion rho_A1");
  require_pure(rho_b1, "arai_criterion rho_B1");
  require_pure(rho_a2, "arai_criterion rho_A2");
  require_pure(rho_b2, "arai_criterion rho_B2");
  AraiResult r;
  r.lhs = trace_inner(rho_a1, rho_a2) + trace_inner(rho_b1, rho_b2);
  r.distinguishable = r.lhs <= 1.0 + 1e-12;
  return r;
}

bool yah_region(double x, double y, YahFamily family, double param) {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0)) throw DomainError("yah_region: (x, y) must lie in [0,1]^2");
  double coeff = 0.0;
  if (family == YahFamily::kNeg) {
    if (!(param >= 0.0 && param <= 0.25)) throw DomainError("yah_region: s must lie in [0, 1/4]");
    coeff = 16.0 * param * param;
  } else {
    if (!(param >= 0.0 && param <= 1.0)) throw DomainError("yah_region: t must lie in [0, 1]");
    coeff = param;
  }
  return x * y <= coeff * (1.0 - x) * (1.0 - y) + 1e-12;
}

double sco_to_neg_parameter(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("sco_to_neg_parameter: t must lie in [0, 1]");
  return std::sqrt(t) / (1.0 + t);
}

double shannon_entropy_bits(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log2(v);
  return h;
}

Report entropy_example_audit() {
  Report rep("entropy_example_audit");
  const BipartiteDims dims = appendix::dims();
  const HermMatrix r1 = appendix::rho1();
  const HermMatrix r2 = appendix::rho2();
  const HermMatrix s1 = appendix::sigma1();
  const HermMatrix s2 = appendix::sigma2();
  const HermMatrix e1 = appendix::e1();
  const HermMatrix e2 = appendix::e2();
  const double w1 = (3.0 + std::sqrt(3.0)) / 6.0;
  const double w2 = (3.0 - std::sqrt(3.0)) / 6.0;

  const HermMatrix rho = r1 / 3.0 + (2.0 / 3.0) * r2;
  const HermMatrix alt = w1 * s1 + w2 * s2;
  rep.le("decomposition_residual", (rho - alt).matrix().cwiseAbs().maxCoeff(), 0.0, 1e-12);

  const ConeRep cone = ConeRep::augmented(ConeTag::kSep, dims, {s1, s2});
  const GptModel model(cone, HermMatrix::identity(4));
  bool e_valid = true;
  try {
    validate_measurement(model, {e1, e2});
  } catch (const ValidationError&) {
    e_valid = false;
  }
  rep.require("e_measurement_valid_in_hull", e_valid, "effects checked against SEP* and the added rays");
  rep.le("rho_pair_deviation", distinguishability_deviation({r1, r2}, {e1, e2}), 0.0, 1e-12);

  const std::vector<HermMatrix> proj = {s1, HermMatrix::identity(4) - s1};
  bool p_valid = true;
  try {
    validate_measurement(model, proj);
  } catch (const ValidationError&) {
    p_valid = false;
  }
  rep.require("sigma_measurement_valid", p_valid);
  rep.le("sigma_pair_deviation", distinguishability_deviation({s1, s2}, proj), 0.0, 1e-12);
  rep.near("tr_sigma1_sigma2", trace_inner(s1, s2), 0.0, 1e-12);

  const double h1 = shannon_entropy_bits({1.0 / 3.0, 2.0 / 3.0});
  const double h2 = shannon_entropy_bits({w1, w2});
  rep.near("entropy_rho_decomposition_bits", h1, 0.9182958, 1e-7);
  rep.near("entropy_sigma_decomposition_bits", h2, 0.7440, 5e-4);
  rep.ge("entropy_difference_bits", h1 - h2, 0.17, 0.0);
  rep.data()["weights_sigma"] = {w1, w2};
  return rep;
}

}  // namespace gptcone
