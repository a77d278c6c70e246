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

#include <utility>

#include "eprw/gaussian.hpp"

namespace eprw {

enum class WitnessSign { SeparableConsistent, Entangled };

std::string_view to_string(WitnessSign sign);

struct WitnessVerdict {
  double value = 0.0;
  WitnessSign verdict = WitnessSign::SeparableConsistent;
};

/// Mean of the HBT witness on the EPR pair (nbar, m):
/// (nbar^2 - m^2) / (2 (3 nbar^2 + m^2)). Negative values certify entanglement.
/// Throws DegenerateInputError at (0, 0) and UnphysicalStateError off the
/// physical domain.
WitnessVerdict hbt_witness_value(double nbar, double m);

/// Second-order HOM visibility (nbar^2 + m^2) / (3 nbar^2 + m^2), in [1/3, 1].
double visibility(double nbar, double m);

/// 1/2 - v.
double witness_from_visibility(double v);

/// Joint detection probability 1 - v exp(-(tau/tau_c)^2).
double hom_coincidence(double tau, double tau_c, double v);

/// First and second moments of the Stokes operators. `_no` fields are the
/// normally ordered <:S_i^2:>, the plain fields <S_i^2>.
struct StokesMoments {
  double s0_mean = 0.0;
  double sx_mean = 0.0;
  double sy_mean = 0.0;
  double sz_mean = 0.0;
  double sx2_no = 0.0;
  double sy2_no = 0.0;
  double sz2_no = 0.0;
  double sx2 = 0.0;
  double sy2 = 0.0;
  double sz2 = 0.0;

  double var_x() const { return sx2 - sx_mean * sx_mean; }
  double var_y() const { return sy2 - sy_mean * sy_mean; }
  double var_z() const { return sz2 - sz_mean * sz_mean; }
};

/// Wick evaluation on an arbitrary zero-mean Gaussian two-mode state.
StokesMoments stokes_moments(const TwoModeMoments &tm);
/// Same, with first moments (displaced beams).
StokesMoments stokes_moments(const GaussianTwoMode &state);

/// 1/2 - <:S_x^2:> / sum_i <:S_i^2:>. The plain-ordered form
/// 1/2 - (<S_x^2> - <S_0>/2) / (sum_i <S_i^2> - 3/2 <S_0>) is evaluated as
/// well; a mismatch beyond 1e-10 throws DomainError.
double witness_from_stokes(const StokesMoments &sm);

struct StokesInequalities {
  bool normally_ordered = false;  // <:Sx^2:> > <:Sy^2:> + <:Sz^2:>
  bool symmetric = false;         // <Sx^2> > <Sy^2> + <Sz^2> - <S0>/2
};

StokesInequalities stokes_inequality_check(const StokesMoments &sm);

/// (ΔS_y)^2 (ΔS_z)^2 - |<S_x>|^2 / 4, the Robertson slack for [S_y, S_z] = i S_x.
/// Non-negative on every physical state.
double stokes_uncertainty_product(const TwoModeMoments &tm);
double stokes_uncertainty_product(const GaussianTwoMode &state);

}  // namespace eprw
