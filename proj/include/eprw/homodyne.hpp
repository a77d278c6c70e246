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

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "eprw/gaussian.hpp"

namespace eprw {

/// Strong reference beam alpha = |alpha| e^{i phi} mixed into both output beams.
class LocalOscillator {
 public:
  /// Throws DomainError for negative or non-finite amplitude; phase is wrapped
  /// into [0, 2 pi).
  LocalOscillator(double amplitude, double phase);
  static LocalOscillator from_power(double alpha2, double phase);

  double amplitude() const { return amplitude_; }
  double phase() const { return phase_; }
  double power() const { return amplitude_ * amplitude_; }
  cplx alpha() const { return std::polar(amplitude_, phase_); }

 private:
  double amplitude_;
  double phase_;
};

/// <X(phi)^2> of one beam (mode 0 = c, 1 = d).
double rotated_quadrature_variance(const TwoModeMoments &tm, int mode, double phi);

/// <X_c(phi) X_d(phi)>; equals -m cos 2phi on the EPR family.
double rotated_quadrature_correlation(const TwoModeMoments &tm, double phi);

// Stokes variances of the displaced beams c + alpha, d + alpha. The exact forms
// are Var(S_i) of the undisplaced pair plus the |alpha|^2 quadrature term; the
// strong-LO forms keep only the |alpha|^2 term. On the EPR family:
//   (ΔS_z)^2 = (n(n+1) - m^2)/2 + |α|^2/2 (1 + 2(n + m cos 2φ))
//   (ΔS_x)^2 = (n(n+1) + m^2)/2 + |α|^2/2 (1 + 2(n - m cos 2φ))
//   (ΔS_y)^2 = (n(n+1) + m^2)/2 + |α|^2/2 (1 + 2(n - m cos 2φ))
double stokes_z_variance_exact(const TwoModeMoments &tm, const LocalOscillator &lo);
double stokes_z_variance_strong_lo(const TwoModeMoments &tm, const LocalOscillator &lo);
double stokes_x_variance_exact(const TwoModeMoments &tm, const LocalOscillator &lo);
double stokes_x_variance_strong_lo(const TwoModeMoments &tm, const LocalOscillator &lo);
double stokes_y_variance_exact(const TwoModeMoments &tm, const LocalOscillator &lo);
double stokes_y_variance_strong_lo(const TwoModeMoments &tm, const LocalOscillator &lo);

/// Vacuum-input level |alpha|^2 / 2.
double shot_noise_level(const LocalOscillator &lo);

struct QuadratureRecord {
  double x_c = 0.0;
  double x_d = 0.0;

  friend bool operator==(const QuadratureRecord &, const QuadratureRecord &) = default;
};

/// Draws (X_c(phi), X_d(phi)) pairs from the zero-mean bivariate normal fixed
/// by tm. Bit-identical for a fixed seed within one build.
std::vector<QuadratureRecord> sample_quadrature_records(const TwoModeMoments &tm, double phi,
                                                        std::size_t n_samples,
                                                        std::uint64_t seed);

/// CSV with header `index,x_c,x_d`.
void write_records_csv(std::ostream &os, std::span<const QuadratureRecord> records);
std::vector<QuadratureRecord> read_records_csv(std::istream &is);

enum class NoiseVerdict { BelowShotNoise, AtOrAboveShotNoise };

std::string_view to_string(NoiseVerdict verdict);

struct VarianceReport {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  double shot_noise = 0.0;
  NoiseVerdict verdict = NoiseVerdict::AtOrAboveShotNoise;
};

/// Sample variance of S_z ~ (|alpha|/sqrt 2)(x_c - x_d). BelowShotNoise only
/// when estimate + 3 std_error < |alpha|^2/2.
VarianceReport estimate_sz_variance(std::span<const QuadratureRecord> records,
                                    const LocalOscillator &lo);

}  // namespace eprw
