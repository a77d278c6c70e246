// Copyright 2026 The eprw Authors
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

#include "eprw/gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>

#include "eprw/errors.hpp"

namespace eprw {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

PhysicalityVerdict validate_mode(const ModeMoments &mode) {
  if (!std::isfinite(mode.nbar) || !std::isfinite(mode.m))
    throw DomainError("mode moments must be finite");
  if (mode.nbar < 0.0) throw DomainError("mean photon number must be non-negative");
  const double margin = std::sqrt(mode.nbar * (mode.nbar + 1.0)) - std::abs(mode.m);
  return {margin >= -kPhysicalityTol, margin};
}

void require_physical(const ModeMoments &mode) {
  if (!validate_mode(mode).physical)
    throw UnphysicalStateError("|m| exceeds sqrt(nbar (nbar + 1))");
}

QuadratureStddevs quadrature_stddevs(const ModeMoments &mode) {
  require_physical(mode);
  const double x1 = mode.nbar + 0.5 - mode.m;
  const double x2 = mode.nbar + 0.5 + mode.m;
  return {std::sqrt(std::max(x1, 0.0)), std::sqrt(std::max(x2, 0.0))};
}

double heisenberg_product(const ModeMoments &mode) {
  require_physical(mode);
  const double half = mode.nbar + 0.5;
  return std::sqrt(std::max((half - mode.m) * (half + mode.m), 0.0));
}

bool is_squeezed(const ModeMoments &mode) {
  require_physical(mode);
  return std::abs(mode.m) - mode.nbar > kBoundaryTol;
}

TwoModeMoments TwoModeMoments::epr(double nbar, double m) {
  TwoModeMoments tm;
  tm.nbar_c = nbar;
  tm.nbar_d = nbar;
  tm.corr_cd = -m;
  return tm;
}

TwoModeMoments TwoModeMoments::product(const ModeMoments &a, const ModeMoments &b) {
  TwoModeMoments tm;
  tm.nbar_c = a.nbar;
  tm.nbar_d = b.nbar;
  tm.sq_c = a.squeeze_moment();
  tm.sq_d = b.squeeze_moment();
  return tm;
}

void require_well_formed(const TwoModeMoments &tm) {
  if (!std::isfinite(tm.nbar_c) || !std::isfinite(tm.nbar_d) || !finite(tm.corr_cd) ||
      !finite(tm.coh_cd) || !finite(tm.sq_c) || !finite(tm.sq_d))
    throw DomainError("two-mode moments must be finite");
  if (tm.nbar_c < 0.0 || tm.nbar_d < 0.0)
    throw DomainError("mean photon numbers must be non-negative");
}

void require_physical(const TwoModeMoments &tm) {
  require_well_formed(tm);
  if (!covariance_matrix(tm).is_physical())
    throw UnphysicalStateError("two-mode covariance violates the uncertainty principle");
}

TwoModeMoments beam_splitter(const TwoModeMoments &in) {
  require_well_formed(in);
  const double mean_n = 0.5 * (in.nbar_c + in.nbar_d);
  const cplx i{0.0, 1.0};
  TwoModeMoments out;
  out.nbar_c = mean_n + in.coh_cd.real();
  out.nbar_d = mean_n - in.coh_cd.real();
  out.corr_cd = 0.5 * (in.sq_c - in.sq_d);
  out.coh_cd = 0.5 * (in.nbar_c - in.nbar_d) - i * in.coh_cd.imag();
  out.sq_c = 0.5 * (in.sq_c + in.sq_d) + in.corr_cd;
  out.sq_d = 0.5 * (in.sq_c + in.sq_d) - in.corr_cd;
  return out;
}

TwoModeMoments beam_splitter(const ModeMoments &mode_a, const ModeMoments &mode_b) {
  require_physical(mode_a);
  require_physical(mode_b);
  return beam_splitter(TwoModeMoments::product(mode_a, mode_b));
}

std::string_view to_string(RegionLabel label) {
  switch (label) {
    case RegionLabel::Unphysical: return "Unphysical";
    case RegionLabel::PureBoundary: return "PureBoundary";
    case RegionLabel::Entangled: return "Entangled";
    case RegionLabel::SeparableBoundary: return "SeparableBoundary";
    case RegionLabel::Separable: return "Separable";
  }
  return "Unknown";
}

double pure_boundary_nbar(double m) {
  // (-1 + sqrt(1 + 4 m^2)) / 2 without the cancellation at small m.
  const double m2 = m * m;
  return 2.0 * m2 / (1.0 + std::sqrt(1.0 + 4.0 * m2));
}

RegionLabel classify_region(double nbar, double m) {
  if (!std::isfinite(nbar) || !std::isfinite(m))
    throw DomainError("phase-diagram coordinates must be finite");
  m = std::abs(m);
  const double curve = pure_boundary_nbar(m);
  if (nbar < curve - kBoundaryTol) return RegionLabel::Unphysical;
  if (std::abs(nbar - curve) <= kBoundaryTol) return RegionLabel::PureBoundary;
  if (m > nbar + kBoundaryTol) return RegionLabel::Entangled;
  if (std::abs(m - nbar) <= kBoundaryTol) return RegionLabel::SeparableBoundary;
  return RegionLabel::Separable;
}

double bose_einstein_pn(double nbar, int n) {
  if (!std::isfinite(nbar) || nbar < 0.0)
    throw DomainError("Bose-Einstein mean must be finite and non-negative");
  if (n < 0) throw DomainError("photon number must be non-negative");
  if (nbar == 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(n * std::log(nbar) - (n + 1) * std::log1p(nbar));
}

Eigen::Matrix4d symplectic_form() {
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  omega(0, 1) = omega(2, 3) = 1.0;
  omega(1, 0) = omega(3, 2) = -1.0;
  return omega;
}

double QuadratureCovariance::heisenberg_min_eigenvalue() const {
  const Eigen::Matrix4cd h =
      sigma.cast<cplx>() + cplx(0.0, 0.5) * symplectic_form().cast<cplx>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

QuadratureCovariance covariance_matrix(const TwoModeMoments &tm) {
  require_well_formed(tm);
  const cplx k = tm.corr_cd;
  const cplx l = tm.coh_cd;
  Eigen::Matrix4d s;
  s(0, 0) = tm.nbar_c + 0.5 + tm.sq_c.real();
  s(1, 1) = tm.nbar_c + 0.5 - tm.sq_c.real();
  s(0, 1) = tm.sq_c.imag();
  s(2, 2) = tm.nbar_d + 0.5 + tm.sq_d.real();
  s(3, 3) = tm.nbar_d + 0.5 - tm.sq_d.real();
  s(2, 3) = tm.sq_d.imag();
  s(0, 2) = k.real() + l.real();
  s(1, 3) = -k.real() + l.real();
  s(0, 3) = k.imag() + l.imag();
  s(1, 2) = k.imag() - l.imag();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < r; ++c) s(r, c) = s(c, r);
  return {s};
}

PptSpectrum ppt_symplectic_eigenvalues(const QuadratureCovariance &cov) {
  if (!cov.sigma.allFinite()) throw DomainError("covariance must be finite");
  if (!cov.is_physical())
    throw DomainError("covariance is not a physical Gaussian state");

  Eigen::Matrix4d flip = Eigen::Matrix4d::Identity();
  flip(3, 3) = -1.0;
  const Eigen::Matrix4d pt = flip * cov.sigma * flip;

  // iΩσ̃ is similar to the Hermitian σ̃^{1/2} (iΩ) σ̃^{1/2}, whose
  // eigenvalues come in pairs ±ν.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(pt);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw DomainError("partially transposed covariance is not positive definite");
  const Eigen::Matrix4d root = es.operatorSqrt();
  const Eigen::Matrix4cd m =
      root.cast<cplx>() * (cplx(0.0, 1.0) * symplectic_form().cast<cplx>()) * root.cast<cplx>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> sym(m, Eigen::EigenvaluesOnly);
  std::array<double, 4> nu;
  for (int i = 0; i < 4; ++i) nu[i] = std::abs(sym.eigenvalues()(i));
  std::sort(nu.begin(), nu.end());
  return {0.5 * (nu[0] + nu[1]), 0.5 * (nu[2] + nu[3])};
}

namespace {

struct WickContext {
  const GaussianTwoMode &state;

  cplx mean(const Ladder &l) const {
    const cplx mu = l.mode == 0 ? state.mean_c : state.mean_d;
    return l.dagger ? std::conj(mu) : mu;
  }

  // Ordered central moment <δx δy>.
  cplx pair(Ladder x, Ladder y) const {
    const TwoModeMoments &f = state.fluct;
    if (x.mode == y.mode) {
      const double n = x.mode == 0 ? f.nbar_c : f.nbar_d;
      const cplx s = x.mode == 0 ? f.sq_c : f.sq_d;
      if (!x.dagger && !y.dagger) return s;
      if (x.dagger && y.dagger) return std::conj(s);
      if (x.dagger) return n;
      return n + 1.0;
    }
    if (x.mode == 1) std::swap(x, y);  // different modes commute
    if (!x.dagger && !y.dagger) return f.corr_cd;
    if (x.dagger && y.dagger) return std::conj(f.corr_cd);
    if (x.dagger) return f.coh_cd;
    return std::conj(f.coh_cd);
  }

  // Sum over perfect matchings, each pair kept in its original order.
  cplx central(std::vector<Ladder> &ops) const {
    if (ops.empty()) return 1.0;
    if (ops.size() % 2 != 0) return 0.0;
    const Ladder first = ops.front();
    cplx total = 0.0;
    for (std::size_t j = 1; j < ops.size(); ++j) {
      const cplx p = pair(first, ops[j]);
      if (p == 0.0) continue;
      std::vector<Ladder> rest;
      rest.reserve(ops.size() - 2);
      for (std::size_t k = 1; k < ops.size(); ++k)
        if (k != j) rest.push_back(ops[k]);
      total += p * central(rest);
    }
    return total;
  }

  cplx word(const std::vector<Ladder> &w, std::size_t pos, cplx prefix,
            std::vector<Ladder> &fluct) const {
    if (prefix == 0.0) return 0.0;
    if (pos == w.size()) return prefix * central(fluct);
    cplx total = word(w, pos + 1, prefix * mean(w[pos]), fluct);
    fluct.push_back(w[pos]);
    total += word(w, pos + 1, prefix, fluct);
    fluct.pop_back();
    return total;
  }
};

}  // namespace

cplx gaussian_expectation(const GaussianTwoMode &state, const LadderExpr &expr) {
  require_well_formed(state.fluct);
  if (expr.max_mode() > 1) throw DomainError("expression references a mode beyond d");
  const WickContext ctx{state};
  cplx total = 0.0;
  std::vector<Ladder> scratch;
  for (const auto &t : expr.terms()) total += t.coeff * ctx.word(t.word, 0, 1.0, scratch);
  return total;
}

cplx gaussian_expectation(const TwoModeMoments &tm, const LadderExpr &expr) {
  return gaussian_expectation(GaussianTwoMode{tm, {}, {}}, expr);
}

}  // namespace eprw
