#include "gptcone/dual_engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "gptcone/random.hpp"

namespace gptcone {

const char* to_string(Status s) {
  switch (s) {
    case Status::kIn:
      return "In";
    case Status::kOut:
      return "Out";
    case Status::kUnknown:
      return "Unknown";
  }
  return "Unknown";
}

MembershipVerdict dual_membership(const std::vector<HermMatrix>& generators, const HermMatrix& x,
                                  double tol) {
  if (generators.empty()) throw DomainError("dual_membership: empty generator list");
  if (!(tol > 0.0)) throw DomainError("dual_membership: tol must be positive");
  double worst = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const double v = trace_inner(x, generators[k]);
    if (v < worst) {
      worst = v;
      arg = k;
    }
  }
  MembershipVerdict out;
  out.margin = worst;
  out.tier = "generator-scan";
  if (worst >= -tol) {
    out.status = Status::kIn;
  } else {
    out.status = Status::kOut;
    out.witness = generators[arg];
  }
  return out;
}

GramCheck gram_predual_check(const std::vector<HermMatrix>& generators, double tol) {
  if (generators.empty()) throw DomainError("gram_predual_check: empty generator list");
  const int n = static_cast<int>(generators.size());
  GramCheck out;
  out.gram.resize(n, n);
  out.value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = trace_inner(generators[static_cast<std::size_t>(i)], generators[static_cast<std::size_t>(j)]);
      out.gram(i, j) = v;
      out.gram(j, i) = v;
      if (v < out.value) {
        out.value = v;
        out.i = i;
        out.j = j;
      }
    }
  out.verdict = out.value >= -tol;
  return out;
}

namespace {

struct Objective {
  const HermMatrix& x;
  const std::vector<HermMatrix>& gens;
  bool include_psd;

  HermMatrix residual(const RVector& mu) const {
    HermMatrix r = x;
    for (std::size_t k = 0; k < gens.size(); ++k)
      if (mu(static_cast<Eigen::Index>(k)) != 0.0) r -= mu(static_cast<Eigen::Index>(k)) * gens[k];
    return r;
  }
  // Part of the residual that the cone cannot absorb.
  HermMatrix excess(const HermMatrix& r) const { return include_psd ? negative_part(r) : r; }
};

}  // namespace

ConicResult conic_feasibility(const HermMatrix& x, const std::vector<HermMatrix>& generators,
                              bool include_psd, const ConicOptions& opts) {
  if (opts.iters < 1) throw DomainError("conic_feasibility: iters must be >= 1");
  for (const HermMatrix& g : generators) require_same_dim(x, g, "conic_feasibility");
  const Objective obj{x, generators, include_psd};
  const Eigen::Index k = static_cast<Eigen::Index>(generators.size());

  double lipschitz = 0.0;
  for (const HermMatrix& g : generators) lipschitz += 2.0 * trace_inner(g, g);

  RVector mu = RVector::Zero(k);
  HermMatrix e = obj.excess(obj.residual(mu));
  double f = trace_inner(e, e);
  double step = lipschitz > 0.0 ? 1.0 / lipschitz : 0.0;
  int it = 0;
  while (it < opts.iters && std::sqrt(f) > opts.tol && k > 0) {
    ++it;
    RVector grad(k);
    for (Eigen::Index i = 0; i < k; ++i) grad(i) = -2.0 * trace_inner(e, generators[static_cast<std::size_t>(i)]);
    double t = 2.0 * step;
    bool accepted = false;
    RVector next;
    HermMatrix e_next;
    double f_next = f;
    for (int bt = 0; bt < 60; ++bt) {
      next = (mu - t * grad).cwiseMax(0.0);
      const RVector diff = next - mu;
      e_next = obj.excess(obj.residual(next));
      f_next = trace_inner(e_next, e_next);
      if (f_next <= f + grad.dot(diff) + diff.squaredNorm() / (2.0 * t)) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    const double change = (next - mu).norm();
    step = t;
    mu = next;
    e = e_next;
    const double prev = f;
    f = f_next;
    if (change <= 1e-15 * std::max(1.0, mu.norm()) && prev - f <= 1e-30) break;
  }

  ConicResult out;
  out.iterations = it;
  out.bound = std::sqrt(f);
  out.feasible = out.bound <= opts.tol;
  out.certificate.coefficients.assign(mu.data(), mu.data() + mu.size());
  const HermMatrix r = obj.residual(mu);
  if (include_psd) out.certificate.psd_part = positive_part(r);
  out.certificate.residual = out.bound;
  if (!out.feasible && out.bound > 0.0) {
    const HermMatrix w = -e / std::sqrt(f);
    bool ok = trace_inner(w, x) < -opts.tol;
    for (const HermMatrix& g : generators) ok = ok && trace_inner(w, g) >= -opts.tol;
    if (include_psd) ok = ok && min_eigenvalue(w) >= -opts.tol;
    if (ok) out.witness = w;
  }
  return out;
}

namespace {

double golden_min(const std::function<double(double)>& phi) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0;
  double b = 1.0;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = phi(c);
  double fd = phi(d);
  for (int i = 0; i < 60; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = phi(d);
    }
  }
  const double mid = 0.5 * (a + b);
  double best = mid;
  double fbest = phi(mid);
  for (double cand : {0.0, 1.0})
    if (phi(cand) < fbest) {
      fbest = phi(cand);
      best = cand;
    }
  return best;
}

}  // namespace

SpectrahedronMin min_over_spectrahedron(const HermMatrix& x, const std::vector<HermMatrix>& halfspaces,
                                        int iters, int restarts, std::uint64_t seed) {
  for (const HermMatrix& h : halfspaces) require_same_dim(x, h, "min_over_spectrahedron");
  const int d = x.dim();
  const Spectrum sx = eig_ascending(x);
  const HermMatrix bottom = HermMatrix::projector(sx.vectors.col(0));

  auto violation = [&](const HermMatrix& y) {
    double v = 0.0;
    for (const HermMatrix& h : halfspaces) v = std::max(v, -trace_inner(y, h));
    return v;
  };

  if (halfspaces.empty()) {
    SpectrahedronMin out;
    out.value = sx.values(0);
    out.argmin = bottom;
    out.feasible = true;
    return out;
  }

  bool interior_available = true;
  for (const HermMatrix& h : halfspaces) interior_available = interior_available && h.trace() > 0.0;

  const std::size_t nh = halfspaces.size();
  Rng rng(seed);
  SpectrahedronMin best;
  best.value = std::numeric_limits<double>::infinity();
  const int runs = std::max(restarts, 1);
  const int stages = 6;
  const int per_stage = std::max(iters / stages, 1);
  for (int run = 0; run < runs; ++run) {
    HermMatrix y = run == 0 ? bottom
                   : run == 1 ? HermMatrix::identity(d) / d
                              : random_pure_state(d, rng);
    double kappa = 10.0;
    for (int stage = 0; stage < stages; ++stage, kappa *= 10.0) {
      for (int it = 0; it < per_stage; ++it) {
        HermMatrix grad = x;
        std::vector<double> a(nh);
        for (std::size_t i = 0; i < nh; ++i) {
          a[i] = trace_inner(y, halfspaces[i]);
          if (a[i] < 0.0) grad += (kappa * a[i]) * halfspaces[i];
        }
        const Spectrum sg = eig_ascending(grad);
        const HermMatrix s = HermMatrix::projector(sg.vectors.col(0));
        const HermMatrix dir = s - y;
        std::vector<double> b(nh);
        for (std::size_t i = 0; i < nh; ++i) b[i] = trace_inner(dir, halfspaces[i]);
        const double e = trace_inner(x, dir);
        const double gap = -trace_inner(grad, dir);
        if (gap <= 1e-14) break;
        auto phi = [&](double gamma) {
          double v = gamma * e;
          for (std::size_t i = 0; i < nh; ++i) {
            const double t = a[i] + gamma * b[i];
            if (t < 0.0) v += 0.5 * kappa * t * t;
          }
          return v;
        };
        const double gamma = golden_min(phi);
        if (gamma <= 0.0) break;
        y = y + gamma * dir;
      }
    }
    if (interior_available) {
      double t = 0.0;
      for (const HermMatrix& h : halfspaces) {
        const double ah = trace_inner(y, h);
        const double ch = h.trace() / d;
        if (ah < 0.0) t = std::max(t, -ah / (ch - ah));
      }
      if (t > 0.0) y = (1.0 - t) * y + (t / d) * HermMatrix::identity(d);
    }
    const double viol = violation(y);
    const double value = trace_inner(x, y);
    const bool feasible = viol <= 1e-12;
    const bool better = (feasible && !best.feasible) ||
                        (feasible == best.feasible && value < best.value);
    if (better) {
      best.value = value;
      best.argmin = y;
      best.max_violation = viol;
      best.feasible = feasible;
    }
  }
  return best;
}

DualIdentityResult dual_identity_check(const std::vector<HermMatrix>& g1, const std::vector<HermMatrix>& g2,
                                       const std::vector<HermMatrix>& samples, double tol) {
  std::vector<HermMatrix> both = g1;
  both.insert(both.end(), g2.begin(), g2.end());
  DualIdentityResult out;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const HermMatrix& x = samples[s];
    auto in = [&](const std::vector<HermMatrix>& g) {
      if (g.empty()) return true;
      return dual_membership(g, x, tol).status == Status::kIn;
    };
    const bool lhs = in(both);
    const bool rhs = in(g1) && in(g2);
    ++out.samples;
    if (lhs) ++out.in_count;
    if (lhs != rhs) {
      ++out.disagreements;
      out.disagreeing.push_back(static_cast<int>(s));
    }
  }
  return out;
}

}  // namespace gptcone
