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
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eprw/gaussian.hpp"
#include "eprw/homodyne.hpp"
#include "eprw/witness.hpp"

namespace eprw::cli {

enum ExitCode : int { kExitOk = 0, kExitInvalidInput = 2, kExitVerifyFailure = 3 };

enum class Format { Text, Csv, Json };

Format parse_format(std::string_view name);

/// Inclusive grid `min,max,steps`; a single step yields just `min`.
struct Range {
  double min = 0.0;
  double max = 0.0;
  int steps = 1;

  std::vector<double> values() const;
};

Range parse_range(std::string_view text);

inline constexpr std::string_view kSweepOutputs[] = {"region", "witness", "visibility",
                                                     "ppt_nu_minus"};

struct SweepConfig {
  Range nbar_range{0.0, 3.0, 100};
  Range m_range{0.0, 3.0, 100};
  std::vector<std::string> outputs{std::begin(kSweepOutputs), std::end(kSweepOutputs)};
  Format format = Format::Csv;
};

/// Reads a JSON object with optional keys `nbar_range`, `m_range` (either
/// [min, max, steps] or {"min", "max", "steps"}), `outputs` and `format`.
SweepConfig load_sweep_config(std::istream &is);
void validate(const SweepConfig &config);

/// Where a command writes. With an output path, CSV and text payloads get a
/// `<path>.manifest.json` sidecar; on stdout the manifest goes to `err`.
struct RunContext {
  std::ostream *out = nullptr;
  std::ostream *err = nullptr;
  std::string out_path;
  std::string timestamp;
};

/// Current UTC time as YYYY-MM-DDThh:mm:ssZ.
std::string utc_timestamp();

/// Diagnostics of one phase-diagram point. Values are absent where they are
/// undefined (unphysical moments, or the 0/0 vacuum witness).
struct PointRecord {
  double nbar = 0.0;
  double m = 0.0;
  RegionLabel region = RegionLabel::Unphysical;
  std::optional<double> witness;
  std::optional<double> visibility;
  std::optional<double> nu_minus;
  std::optional<bool> squeezed;
  std::string warning;
};

PointRecord evaluate_point(double nbar, double m);

struct ClassifyOptions {
  double nbar = 0.0;
  double m = 0.0;
  Format format = Format::Text;
};

struct HomOptions {
  double nbar = 0.0;
  double m = 0.0;
  double tau_c = 0.0;
  /// Delays in the same units as tau_c; defaults to [-5 tau_c, 5 tau_c].
  std::optional<Range> tau_range;
  Format format = Format::Csv;
};

struct HomodyneSimOptions {
  double nbar = 0.0;
  double m = 0.0;
  double phi = 0.0;
  double alpha2 = 0.0;
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 42;
  std::string records_path;
  Format format = Format::Json;
};

/// Closed forms checked by `verify`; replaceable to exercise the harness.
struct ClosedForms {
  std::function<double(double, double)> witness;
  std::function<double(double, double)> visibility;
  std::function<StokesMoments(const TwoModeMoments &)> stokes;
  std::function<double(const TwoModeMoments &, const LocalOscillator &)> var_x;
  std::function<double(const TwoModeMoments &, const LocalOscillator &)> var_y;
  std::function<double(const TwoModeMoments &, const LocalOscillator &)> var_z;
};

ClosedForms default_closed_forms();

struct VerifyOptions {
  Range nbar_range{0.25, 2.0, 5};
  /// m as a fraction of sqrt(nbar (nbar + 1)).
  Range fraction_range{0.0, 1.0, 5};
  double tol = 1e-6;
  /// Doubling-sweep ceiling for the Fock cutoff.
  int cutoff = 128;
  Format format = Format::Json;
};

int cmd_classify(const ClassifyOptions &opts, const RunContext &ctx);
int cmd_sweep(const SweepConfig &config, const RunContext &ctx);
int cmd_hom(const HomOptions &opts, const RunContext &ctx);
int cmd_homodyne_sim(const HomodyneSimOptions &opts, const RunContext &ctx);
int cmd_verify(const VerifyOptions &opts, const RunContext &ctx,
               const ClosedForms &forms = default_closed_forms());

/// Parses argv and dispatches; returns the process exit code.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace eprw::cli
