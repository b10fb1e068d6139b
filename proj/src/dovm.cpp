#include "gptcone/dovm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gptcone/discrimination.hpp"

namespace gptcone {

Dovm make_dovm(HermMatrix m1, HermMatrix m2, BipartiteDims dims, double tol, const SepOptions& opts) {
  require_dims(m1, dims, "Dovm");
  require_dims(m2, dims, "Dovm");
  const double defect = (m1 + m2 - HermMatrix::identity(dims.total())).matrix().cwiseAbs().maxCoeff();
  if (defect > 1e-10) {
    std::ostringstream os;
    os << "Dovm: M1 + M2 differs from I by " << defect;
    throw ValidationError(os.str());
  }
  Dovm d;
  d.dims = dims;
  d.evidence[0] = sep_dual_membership(m1, dims, tol, opts);
  d.evidence[1] = sep_dual_membership(m2, dims, tol, opts);
  for (int i = 0; i < 2; ++i)
    if (d.evidence[static_cast<std::size_t>(i)].status == Status::kOut) {
      std::ostringstream os;
      os << "Dovm: effect M" << (i + 1) << " is not block-positive (product value "
         << d.evidence[static_cast<std::size_t>(i)].margin << ")";
      throw ValidationError(os.str());
    }
  d.m1 = std::move(m1);
  d.m2 = std::move(m2);
  return d;
}

const char* to_string(DovmTag tag) {
  switch (tag) {
    case DovmTag::kBQ:
      return "BQ";
    case DovmTag::kAQ:
      return "AQ";
    case DovmTag::kNAQ:
      return "NAQ";
    case DovmTag::kPOVM:
      return "POVM";
  }
  return "POVM";
}

DovmClass classify(const Dovm& dovm, double tol) {
  const int d = dovm.dims.total();
  const double defect = (dovm.m1 + dovm.m2 - HermMatrix::identity(d)).matrix().cwiseAbs().maxCoeff();
  if (defect > 1e-10) throw ValidationError("classify: effects do not sum to I");
  DovmClass c;
  for (int i = 0; i < 2; ++i) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(dovm.effect(i).matrix(), Eigen::EigenvaluesOnly);
    c.spectra[static_cast<std::size_t>(i)] = {es.eigenvalues()(0), es.eigenvalues()(d - 1)};
  }
  int deciding = -1;
  for (int i = 0; i < 2 && deciding < 0; ++i)
    if (c.spectra[static_cast<std::size_t>(i)].lambda1 < -tol) deciding = i;
  c.deciding_effect = deciding;
  if (deciding < 0) {
    c.tag = DovmTag::kPOVM;
    return c;
  }
  const EffectSpectrum s = c.spectra[static_cast<std::size_t>(deciding)];
  if (s.lambda_d >= 1.0 - tol)
    c.tag = DovmTag::kBQ;
  else if (s.lambda_d > 1.0 + s.lambda1 + tol)
    c.tag = DovmTag::kAQ;
  else
    c.tag = DovmTag::kNAQ;
  return c;
}

namespace {

void check_tag(const DovmClass& c, std::initializer_list<DovmTag> allowed, const char* what) {
  for (DovmTag t : allowed)
    if (c.tag == t) return;
  throw DomainError(std::string(what) + ": measurement is classified " + to_string(c.tag));
}

}  // namespace

BqWitness bq_witness_states(const Dovm& dovm, double tol) {
  const DovmClass c = classify(dovm, tol);
  check_tag(c, {DovmTag::kBQ}, "bq_witness_states");
  const int i = c.deciding_effect;
  const Spectrum s = eig_ascending(dovm.effect(i));
  const int d = dovm.dims.total();
  const double l1 = s.values(0);
  const double ld = s.values(d - 1);
  const double gap = ld - l1;
  const CVector psi1 = s.vectors.col(0);
  const CVector psid = s.vectors.col(d - 1);
  // phi_one has probability 1 on the deciding effect, phi_zero probability 0.
  const CVector phi_one = std::sqrt(std::max(ld - 1.0, 0.0) / gap) * psi1 + std::sqrt((1.0 - l1) / gap) * psid;
  const CVector phi_zero = std::sqrt(ld / gap) * psi1 + std::sqrt(-l1 / gap) * psid;
  BqWitness w;
  w.phi1 = i == 0 ? phi_one : phi_zero;
  w.phi2 = i == 0 ? phi_zero : phi_one;
  w.rho1 = HermMatrix::projector(w.phi1);
  w.rho2 = HermMatrix::projector(w.phi2);
  w.overlap = trace_inner(w.rho1, w.rho2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      w.table(a, b) = trace_inner(a == 0 ? w.rho1 : w.rho2, dovm.effect(b));
  return w;
}

AqAdvantage aq_advantage_states(const Dovm& dovm, double tol) {
  const DovmClass c = classify(dovm, tol);
  check_tag(c, {DovmTag::kBQ, DovmTag::kAQ}, "aq_advantage_states");
  const int i = c.deciding_effect;
  const Spectrum s = eig_ascending(dovm.effect(i));
  const int d = dovm.dims.total();
  const double l1 = s.values(0);
  const double ld = s.values(d - 1);
  if (!(ld - l1 > 1.0)) throw DomainError("aq_advantage_states: requires lambda_d - lambda_1 > 1");
  const HermMatrix e1 = HermMatrix::projector(s.vectors.col(0));
  const HermMatrix ed = HermMatrix::projector(s.vectors.col(d - 1));
  const HermMatrix mixed = HermMatrix::identity(d) / d;
  const HermMatrix tilted = mixed + (e1 - ed) / (std::sqrt(2.0) * d);
  AqAdvantage out;
  out.rho1 = i == 0 ? mixed : tilted;
  out.rho2 = i == 0 ? tilted : mixed;
  out.err = err_of_measurement(out.rho1, out.rho2, {dovm.m1, dovm.m2});
  out.helstrom = helstrom(out.rho1, out.rho2).value;
  out.margin = out.helstrom - out.err;
  out.predicted_margin = (ld - l1 - 1.0) / (std::sqrt(2.0) * d);
  out.gurvits_distance = gurvits_distance(d * tilted);
  out.sep1 = sep_membership(out.rho1, dovm.dims, tol);
  out.sep2 = sep_membership(out.rho2, dovm.dims, tol);
  return out;
}

Dovm aq_from_subcone_witness(const HermMatrix& t, BipartiteDims dims, double tol, const SepOptions& opts) {
  require_dims(t, dims, "aq_from_subcone_witness");
  const double l1 = min_eigenvalue(t);
  const double ld = max_eigenvalue(t);
  if (l1 >= -tol) throw DomainError("aq_from_subcone_witness: T is positive semidefinite");
  if (ld <= tol) throw DomainError("aq_from_subcone_witness: -T is positive semidefinite");
  const HermMatrix scaled = t / ld;
  return make_dovm(scaled, HermMatrix::identity(dims.total()) - scaled, dims, tol, opts);
}

Dovm preceding_measurement(double alpha1, double alpha2, double beta1, double beta2) {
  if (!(alpha1 > 0.0 && alpha1 <= 1.0 && alpha2 > 0.0 && alpha2 <= 1.0))
    throw DomainError("preceding_measurement: alpha_i must lie in (0, 1]");
  const double g = alpha1 + alpha2;
  if (g == 0.0) throw DomainError("preceding_measurement: gamma = 0");
  const double c = beta1 * beta2 * g / (alpha1 * alpha2);
  const double b1 = (g - 1.0) * beta1 / alpha1;
  const double b2 = (g - 1.0) * beta2 / alpha2;
  Eigen::Matrix4d t1;
  t1 << g, 0, 0, -c,
        0, g - 1, 0, -b1,
        0, 0, g - 1, -b2,
        -c, -b1, -b2, 2 - g;
  Eigen::Matrix4d t2;
  t2 << 0, 0, 0, 0,
        0, 1, c, b1,
        0, c, 1, b2,
        0, b1, b2, 2 * (g - 1);
  t1 /= 2.0 * g;
  t2 /= 2.0 * g;
  const BipartiteDims dims(2, 2);
  const HermMatrix T1 = HermMatrix::from_real(t1);
  const HermMatrix T2 = HermMatrix::from_real(t2);
  return make_dovm(T1 + partial_transpose(T1, dims), T2 + partial_transpose(T2, dims), dims);
}

namespace {

CMatrix entangled_frame(BipartiteDims dims, Rng& rng) {
  const MeopFamily base = generalized_bell(dims.a);
  const MeopFamily rotated = local_rotate_family(base, haar_unitary(dims.a, rng), haar_unitary(dims.b, rng));
  CMatrix u(dims.total(), dims.total());
  for (int k = 0; k < dims.total(); ++k) u.col(k) = rotated.vectors[static_cast<std::size_t>(k)];
  // Random order so the extreme eigenvalues sit on arbitrary members.
  std::vector<int> perm(static_cast<std::size_t>(dims.total()));
  for (int k = 0; k < dims.total(); ++k) perm[static_cast<std::size_t>(k)] = k;
  std::shuffle(perm.begin(), perm.end(), rng);
  CMatrix out(dims.total(), dims.total());
  for (int k = 0; k < dims.total(); ++k) out.col(k) = u.col(perm[static_cast<std::size_t>(k)]);
  return out;
}

double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

}  // namespace

DovmSample sample_dovm(DovmTag target, BipartiteDims dims, Rng& rng, int max_attempts, const SepOptions& opts) {
  const int d = dims.total();
  DovmSample out;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    RVector spec(d);
    CMatrix frame;
    if (target == DovmTag::kPOVM) {
      frame = haar_unitary(d, rng);
      for (int k = 0; k < d; ++k) spec(k) = uniform01(rng);
    } else {
      if (dims.a != dims.b) throw DomainError("sample_dovm: non-POVM classes need dA == dB");
      frame = entangled_frame(dims, rng);
      const double a = uniform(rng, 0.02, 0.3);
      spec(0) = -a;
      if (target == DovmTag::kNAQ) {
        for (int k = 1; k < d; ++k) spec(k) = uniform(rng, a, 1.0 - a);
      } else if (target == DovmTag::kAQ) {
        spec(d - 1) = uniform(rng, 1.0 - a + 1e-3, 1.0 - 1e-3);
        for (int k = 1; k < d - 1; ++k) spec(k) = uniform(rng, a, spec(d - 1));
      } else {
        const double b = uniform(rng, 0.0, 0.3);
        spec(d - 1) = 1.0 + b;
        for (int k = 1; k < d - 1; ++k) spec(k) = uniform(rng, a, 1.0 - b);
      }
    }
    const HermMatrix m1 = HermMatrix::trusted(frame * spec.cast<cplx>().asDiagonal() * frame.adjoint());
    const HermMatrix m2 = HermMatrix::identity(d) - m1;
    try {
      Dovm dv = make_dovm(m1, m2, dims, kDefaultTol, opts);
      if (classify(dv).tag != target) {
        ++out.rejected;
        continue;
      }
      out.dovm = std::move(dv);
      return out;
    } catch (const ValidationError&) {
      ++out.rejected;
    }
  }
  return out;
}

Json dovm_class_to_json(const DovmClass& c) {
  Json j;
  j["class"] = to_string(c.tag);
  j["deciding_effect"] = c.deciding_effect;
  const int k = c.deciding_effect < 0 ? 0 : c.deciding_effect;
  j["lambda1"] = c.spectra[static_cast<std::size_t>(k)].lambda1;
  j["lambda_d"] = c.spectra[static_cast<std::size_t>(k)].lambda_d;
  Json spectra = Json::array();
  for (const EffectSpectrum& s : c.spectra) spectra.push_back({{"lambda1", s.lambda1}, {"lambda_d", s.lambda_d}});
  j["spectra"] = spectra;
  return j;
}

}  // namespace gptcone
