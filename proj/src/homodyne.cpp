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

#include "eprw/homodyne.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include "eprw/errors.hpp"
#include "eprw/format.hpp"
#include "eprw/witness.hpp"

namespace eprw {

LocalOscillator::LocalOscillator(double amplitude, double phase) {
  if (!std::isfinite(amplitude) || amplitude < 0.0)
    throw DomainError("local oscillator amplitude must be finite and non-negative");
  if (!std::isfinite(phase)) throw DomainError("local oscillator phase must be finite");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(phase, two_pi);
  if (wrapped < 0.0) wrapped += two_pi;
  if (wrapped >= two_pi) wrapped = 0.0;
  amplitude_ = amplitude;
  phase_ = wrapped;
}

LocalOscillator LocalOscillator::from_power(double alpha2, double phase) {
  if (!std::isfinite(alpha2) || alpha2 < 0.0)
    throw DomainError("local oscillator power must be finite and non-negative");
  return LocalOscillator(std::sqrt(alpha2), phase);
}

double rotated_quadrature_variance(const TwoModeMoments &tm, int mode, double phi) {
  const double n = mode == 0 ? tm.nbar_c : tm.nbar_d;
  const cplx s = mode == 0 ? tm.sq_c : tm.sq_d;
  return n + 0.5 + (s * std::polar(1.0, -2.0 * phi)).real();
}

double rotated_quadrature_correlation(const TwoModeMoments &tm, double phi) {
  require_well_formed(tm);
  return (tm.corr_cd * std::polar(1.0, -2.0 * phi)).real() + tm.coh_cd.real();
}

namespace {

// <(X_c(phi) + sign X_d(phi))^2>
double combined_quadrature_power(const TwoModeMoments &tm, double phi, double sign) {
  return rotated_quadrature_variance(tm, 0, phi) + rotated_quadrature_variance(tm, 1, phi) +
         2.0 * sign * rotated_quadrature_correlation(tm, phi);
}

}  // namespace

double stokes_z_variance_strong_lo(const TwoModeMoments &tm, const LocalOscillator &lo) {
  require_well_formed(tm);
  return 0.5 * lo.power() * combined_quadrature_power(tm, lo.phase(), -1.0);
}

double stokes_z_variance_exact(const TwoModeMoments &tm, const LocalOscillator &lo) {
  require_physical(tm);
  return stokes_moments(tm).var_z() + stokes_z_variance_strong_lo(tm, lo);
}

double stokes_x_variance_strong_lo(const TwoModeMoments &tm, const LocalOscillator &lo) {
  require_well_formed(tm);
  return 0.5 * lo.power() * combined_quadrature_power(tm, lo.phase(), +1.0);
}

double stokes_x_variance_exact(const TwoModeMoments &tm, const LocalOscillator &lo) {
  require_physical(tm);
  return stokes_moments(tm).var_x() + stokes_x_variance_strong_lo(tm, lo);
}

double stokes_y_variance_strong_lo(const TwoModeMoments &tm, const LocalOscillator &lo) {
  require_well_formed(tm);
  return 0.5 * lo.power() *
         combined_quadrature_power(tm, lo.phase() + 0.5 * std::numbers::pi, -1.0);
}

double stokes_y_variance_exact(const TwoModeMoments &tm, const LocalOscillator &lo) {
  require_physical(tm);
  return stokes_moments(tm).var_y() + stokes_y_variance_strong_lo(tm, lo);
}

double shot_noise_level(const LocalOscillator &lo) { return 0.5 * lo.power(); }

std::vector<QuadratureRecord> sample_quadrature_records(const TwoModeMoments &tm, double phi,
                                                        std::size_t n_samples,
                                                        std::uint64_t seed) {
  require_physical(tm);
  if (n_samples < 1) throw DomainError("need at least one sample");
  const double var_c = rotated_quadrature_variance(tm, 0, phi);
  const double var_d = rotated_quadrature_variance(tm, 1, phi);
  const double cov = rotated_quadrature_correlation(tm, phi);
  if (var_c <= 0.0 || var_d <= 0.0 || var_c * var_d - cov * cov < -kCovarianceTol)
    throw UnphysicalStateError("quadrature covariance is not positive semidefinite");

  const double l11 = std::sqrt(var_c);
  const double l21 = cov / l11;
  const double l22 = std::sqrt(std::max(var_d - l21 * l21, 0.0));

  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  std::vector<QuadratureRecord> records(n_samples);
  for (auto &r : records) {
    const double z1 = normal(gen);
    const double z2 = normal(gen);
    r.x_c = l11 * z1;
    r.x_d = l21 * z1 + l22 * z2;
  }
  return records;
}

void write_records_csv(std::ostream &os, std::span<const QuadratureRecord> records) {
  os << "index,x_c,x_d\r\n";
  for (std::size_t i = 0; i < records.size(); ++i)
    os << i << ',' << format_real(records[i].x_c) << ',' << format_real(records[i].x_d)
       << "\r\n";
}

namespace {

double parse_real(std::string_view field, std::size_t line) {
  double x = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), x);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size())
    throw DomainError("malformed number on CSV line " + std::to_string(line));
  return x;
}

}  // namespace

std::vector<QuadratureRecord> read_records_csv(std::istream &is) {
  std::string line;
  if (!std::getline(is, line)) throw DomainError("empty record stream");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "index,x_c,x_d") throw DomainError("record CSV must start with index,x_c,x_d");

  std::vector<QuadratureRecord> records;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos)
      throw DomainError("expected three columns on CSV line " + std::to_string(lineno));
    const std::string_view view(line);
    records.push_back({parse_real(view.substr(c1 + 1, c2 - c1 - 1), lineno),
                       parse_real(view.substr(c2 + 1), lineno)});
  }
  return records;
}

std::string_view to_string(NoiseVerdict verdict) {
  return verdict == NoiseVerdict::BelowShotNoise ? "BelowShotNoise" : "AtOrAboveShotNoise";
}

VarianceReport estimate_sz_variance(std::span<const QuadratureRecord> records,
                                    const LocalOscillator &lo) {
  const std::size_t n = records.size();
  if (n < 2) throw DomainError("variance estimate needs at least two records");
  const double scale = lo.amplitude() / std::sqrt(2.0);
  auto sz = [&](const QuadratureRecord &r) { return scale * (r.x_c - r.x_d); };

  double mean = 0.0;
  for (const auto &r : records) mean += sz(r);
  mean /= static_cast<double>(n);
  double m2 = 0.0;
  double m4 = 0.0;
  for (const auto &r : records) {
    const double dev = sz(r) - mean;
    const double dev2 = dev * dev;
    m2 += dev2;
    m4 += dev2 * dev2;
  }
  const double nd = static_cast<double>(n);
  const double s2 = m2 / (nd - 1.0);
  m4 /= nd;

  // Var(s^2) = (mu4 - sigma^4 (n-3)/(n-1)) / n
  double var_s2 = (m4 - s2 * s2 * (nd - 3.0) / (nd - 1.0)) / nd;
  if (!(var_s2 > 0.0)) var_s2 = 2.0 * s2 * s2 / (nd - 1.0);

  VarianceReport report;
  report.estimate = s2;
  report.std_error = std::sqrt(var_s2);
  report.n_samples = n;
  report.shot_noise = shot_noise_level(lo);
  report.verdict = report.estimate + 3.0 * report.std_error < report.shot_noise
                       ? NoiseVerdict::BelowShotNoise
                       : NoiseVerdict::AtOrAboveShotNoise;
  return report;
}

}  // namespace eprw
