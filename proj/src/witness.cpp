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

#include "eprw/witness.hpp"

#include <algorithm>
#include <cmath>

#include "eprw/errors.hpp"

namespace eprw {

namespace {

void require_nondegenerate(double nbar, double m) {
  require_physical(ModeMoments{nbar, m});
  if (3.0 * nbar * nbar + m * m == 0.0)
    throw DegenerateInputError("witness and visibility are 0/0 at nbar = m = 0");
}

}  // namespace

std::string_view to_string(WitnessSign sign) {
  return sign == WitnessSign::Entangled ? "Entangled" : "SeparableConsistent";
}

WitnessVerdict hbt_witness_value(double nbar, double m) {
  require_nondegenerate(nbar, m);
  const double n2 = nbar * nbar;
  const double m2 = m * m;
  const double value = (n2 - m2) / (2.0 * (3.0 * n2 + m2));
  return {value, value < 0.0 ? WitnessSign::Entangled : WitnessSign::SeparableConsistent};
}

double visibility(double nbar, double m) {
  require_nondegenerate(nbar, m);
  const double n2 = nbar * nbar;
  const double m2 = m * m;
  return (n2 + m2) / (3.0 * n2 + m2);
}

double witness_from_visibility(double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw DomainError("visibility must lie in [0, 1]");
  return 0.5 - v;
}

double hom_coincidence(double tau, double tau_c, double v) {
  if (!(tau_c > 0.0) || !std::isfinite(tau_c))
    throw DomainError("coherence time must be positive");
  if (!(v >= 0.0 && v <= 1.0)) throw DomainError("visibility must lie in [0, 1]");
  if (std::isnan(tau)) throw DomainError("delay must not be NaN");
  const double x = tau / tau_c;
  return 1.0 - v * std::exp(-x * x);
}

StokesMoments stokes_moments(const GaussianTwoMode &state) {
  const LadderExpr sx = ops::stokes_x();
  const LadderExpr sy = ops::stokes_y();
  const LadderExpr sz = ops::stokes_z();
  auto ev = [&](const LadderExpr &e) { return gaussian_expectation(state, e).real(); };

  StokesMoments sm;
  sm.s0_mean = ev(ops::stokes_0());
  sm.sx_mean = ev(sx);
  sm.sy_mean = ev(sy);
  sm.sz_mean = ev(sz);
  sm.sx2 = ev(sx * sx);
  sm.sy2 = ev(sy * sy);
  sm.sz2 = ev(sz * sz);
  sm.sx2_no = ev((sx * sx).normal_ordered());
  sm.sy2_no = ev((sy * sy).normal_ordered());
  sm.sz2_no = ev((sz * sz).normal_ordered());
  return sm;
}

StokesMoments stokes_moments(const TwoModeMoments &tm) {
  return stokes_moments(GaussianTwoMode{tm, {}, {}});
}

double witness_from_stokes(const StokesMoments &sm) {
  const double den_no = sm.sx2_no + sm.sy2_no + sm.sz2_no;
  const double den_sym = sm.sx2 + sm.sy2 + sm.sz2 - 1.5 * sm.s0_mean;
  if (den_no == 0.0 || den_sym == 0.0)
    throw DegenerateInputError("Stokes witness is 0/0 (no normally ordered intensity)");
  const double w_no = 0.5 - sm.sx2_no / den_no;
  const double w_sym = 0.5 - (sm.sx2 - 0.5 * sm.s0_mean) / den_sym;
  if (std::abs(w_no - w_sym) > 1e-10 * std::max(1.0, std::abs(w_no)))
    throw DomainError("normally ordered and plain Stokes moments are inconsistent");
  return w_no;
}

StokesInequalities stokes_inequality_check(const StokesMoments &sm) {
  return {sm.sx2_no > sm.sy2_no + sm.sz2_no + kBoundaryTol,
          sm.sx2 > sm.sy2 + sm.sz2 - 0.5 * sm.s0_mean + kBoundaryTol};
}

double stokes_uncertainty_product(const GaussianTwoMode &state) {
  const StokesMoments sm = stokes_moments(state);
  return sm.var_y() * sm.var_z() - 0.25 * sm.sx_mean * sm.sx_mean;
}

double stokes_uncertainty_product(const TwoModeMoments &tm) {
  return stokes_uncertainty_product(GaussianTwoMode{tm, {}, {}});
}

}  // namespace eprw
