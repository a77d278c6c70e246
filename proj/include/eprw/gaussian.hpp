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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string_view>

#include "eprw/ladder.hpp"

namespace eprw {

inline constexpr double kPhysicalityTol = 1e-12;
inline constexpr double kBoundaryTol = 1e-9;
inline constexpr double kCovarianceTol = 1e-10;

/// One-mode zero-mean Gaussian state: <a^dag a> = nbar, <a^2> = -m.
struct ModeMoments {
  double nbar = 0.0;
  double m = 0.0;

  cplx squeeze_moment() const { return {-m, 0.0}; }
};

struct PhysicalityVerdict {
  bool physical = false;
  /// sqrt(nbar (nbar + 1)) - |m|; negative when unphysical.
  double margin = 0.0;
};

/// Throws DomainError for negative or non-finite nbar.
PhysicalityVerdict validate_mode(const ModeMoments &mode);
/// validate_mode, throwing UnphysicalStateError when the verdict is negative.
void require_physical(const ModeMoments &mode);

struct QuadratureStddevs {
  double dx1 = 0.0;  // amplitude quadrature X1 = (a + a^dag)/sqrt(2)
  double dx2 = 0.0;  // phase quadrature X2 = (a - a^dag)/(sqrt(2) i)
};

QuadratureStddevs quadrature_stddevs(const ModeMoments &mode);
double heisenberg_product(const ModeMoments &mode);
/// nbar < |m|, decided with kBoundaryTol.
bool is_squeezed(const ModeMoments &mode);

/// Zero-mean two-mode state summarised by its six independent second moments.
struct TwoModeMoments {
  double nbar_c = 0.0;
  double nbar_d = 0.0;
  cplx corr_cd{};  // <c d>
  cplx coh_cd{};   // <c^dag d>
  cplx sq_c{};     // <c^2>
  cplx sq_d{};     // <d^2>

  /// The beam-splitter output family: nbar per mode, <cd> = -m.
  static TwoModeMoments epr(double nbar, double m);
  /// Uncorrelated product of two one-mode states.
  static TwoModeMoments product(const ModeMoments &a, const ModeMoments &b);
};

/// Finite entries, non-negative photon numbers. Throws DomainError.
void require_well_formed(const TwoModeMoments &tm);
/// Well-formed and the covariance satisfies the uncertainty principle.
void require_physical(const TwoModeMoments &tm);

/// 50/50 beam splitter c = (a+b)/sqrt(2), d = (a-b)/sqrt(2) acting on the
/// moments of an arbitrary two-mode state. The map is its own inverse.
TwoModeMoments beam_splitter(const TwoModeMoments &in);
/// Beam splitter fed with the product of two physical one-mode states.
TwoModeMoments beam_splitter(const ModeMoments &mode_a, const ModeMoments &mode_b);

enum class RegionLabel { Unphysical, PureBoundary, Entangled, SeparableBoundary, Separable };

std::string_view to_string(RegionLabel label);

/// nbar on the pure-state curve nbar (nbar + 1) = m^2.
double pure_boundary_nbar(double m);

/// Phase-diagram label of the EPR family (nbar, |m|), boundaries within
/// kBoundaryTol.
RegionLabel classify_region(double nbar, double m);

/// nbar^n / (1 + nbar)^(n+1); nbar = 0 gives the vacuum distribution.
double bose_einstein_pn(double nbar, int n);

/// Symmetrised quadrature covariance over (X_c, P_c, X_d, P_d); vacuum is I/2.
struct QuadratureCovariance {
  Eigen::Matrix4d sigma = 0.5 * Eigen::Matrix4d::Identity();

  /// Smallest eigenvalue of sigma + (i/2) Omega.
  double heisenberg_min_eigenvalue() const;
  bool is_physical(double tol = kCovarianceTol) const {
    return heisenberg_min_eigenvalue() >= -tol;
  }
};

/// Standard symplectic form, block diag([[0,1],[-1,0]], [[0,1],[-1,0]]).
Eigen::Matrix4d symplectic_form();

QuadratureCovariance covariance_matrix(const TwoModeMoments &tm);

struct PptSpectrum {
  double nu_minus = 0.5;
  double nu_plus = 0.5;

  bool entangled(double tol = kBoundaryTol) const { return nu_minus < 0.5 - tol; }
};

/// Symplectic eigenvalues of the partially transposed covariance (P_d -> -P_d).
/// Throws DomainError if the covariance is not a physical state.
PptSpectrum ppt_symplectic_eigenvalues(const QuadratureCovariance &cov);

/// Gaussian state with first moments: c = mean_c + fluctuation, where the
/// fluctuation has the zero-mean statistics of `fluct`.
struct GaussianTwoMode {
  TwoModeMoments fluct;
  cplx mean_c{};
  cplx mean_d{};
};

/// <expr> by the Gaussian moment theorem (order-preserving Wick pairings).
cplx gaussian_expectation(const GaussianTwoMode &state, const LadderExpr &expr);
cplx gaussian_expectation(const TwoModeMoments &tm, const LadderExpr &expr);

}  // namespace eprw
