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

#include "eprw/cli/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "eprw/errors.hpp"
#include "eprw/fock.hpp"
#include "eprw/format.hpp"

#ifndef EPRW_VERSION
#define EPRW_VERSION "0.0.0"
#endif

namespace eprw::cli {

using nlohmann::json;

namespace {

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_double(std::string_view text, std::string_view what) {
  const std::string s(text);
  char *end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
    throw DomainError("invalid " + std::string(what) + ": '" + s + "'");
  return v;
}

int parse_int(std::string_view text, std::string_view what) {
  int v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw DomainError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  return v;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

void validate(const Range &r, std::string_view what) {
  if (!std::isfinite(r.min) || !std::isfinite(r.max))
    throw DomainError(std::string(what) + " bounds must be finite");
  if (r.steps < 1) throw DomainError(std::string(what) + " needs at least one step");
  if (r.min > r.max) throw DomainError(std::string(what) + " has min > max");
}

json optional_json(const std::optional<double> &v) { return v ? json(*v) : json(nullptr); }

std::string optional_csv(const std::optional<double> &v) { return v ? format_real(*v) : ""; }

std::string_view format_name(Format f) {
  switch (f) {
    case Format::Text: return "text";
    case Format::Csv: return "csv";
    case Format::Json: return "json";
  }
  return "";
}

json range_json(const Range &r) { return {r.min, r.max, r.steps}; }

Range range_from_json(const json &j, std::string_view what) {
  Range r;
  if (j.is_array() && j.size() == 3) {
    r = {j[0].get<double>(), j[1].get<double>(), j[2].get<int>()};
  } else if (j.is_object()) {
    r = {j.at("min").get<double>(), j.at("max").get<double>(), j.at("steps").get<int>()};
  } else {
    throw DomainError(std::string(what) + " must be [min, max, steps] or an object");
  }
  validate(r, what);
  return r;
}

json manifest(std::string_view command, json params, json seeds, const RunContext &ctx) {
  return {{"command", command},
          {"params", std::move(params)},
          {"seeds", std::move(seeds)},
          {"version", EPRW_VERSION},
          {"timestamp", ctx.timestamp}};
}

void write_file(const std::string &path, const std::string &content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw OutputError("cannot open '" + path + "' for writing");
  os << content;
  os.flush();
  if (!os) throw OutputError("failed writing '" + path + "'");
}

void emit(const RunContext &ctx, Format format, const json &man, const json &data,
          const std::string &body) {
  if (format == Format::Json) {
    const json doc = {{"manifest", man}, {"data", data}};
    const std::string text = doc.dump(2) + "\n";
    if (ctx.out_path.empty())
      *ctx.out << text;
    else
      write_file(ctx.out_path, text);
    return;
  }
  if (ctx.out_path.empty()) {
    *ctx.out << body;
    *ctx.err << man.dump() << "\n";
  } else {
    write_file(ctx.out_path, body);
    write_file(ctx.out_path + ".manifest.json", man.dump(2) + "\n");
  }
}

template <class Body>
int guarded(const RunContext &ctx, Body &&body) {
  try {
    return body();
  } catch (const ConvergenceError &e) {
    *ctx.err << "error: " << e.what() << "\n";
    return kExitVerifyFailure;
  } catch (const DomainError &e) {
    *ctx.err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const TruncationError &e) {
    *ctx.err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const OutputError &e) {
    *ctx.err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const json::exception &e) {
    *ctx.err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
}

json point_json(const PointRecord &r) {
  return {{"nbar", r.nbar},
          {"m", r.m},
          {"region", to_string(r.region)},
          {"witness", optional_json(r.witness)},
          {"visibility", optional_json(r.visibility)},
          {"nu_minus", optional_json(r.nu_minus)},
          {"squeezed", r.squeezed ? json(*r.squeezed) : json(nullptr)},
          {"warning", r.warning.empty() ? json(nullptr) : json(r.warning)}};
}

std::string csv_quote(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "text") return Format::Text;
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw DomainError("unknown format '" + std::string(name) + "' (text, csv, json)");
}

std::vector<double> Range::values() const {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(std::max(steps, 0)));
  if (steps == 1) return {min};
  for (int i = 0; i < steps; ++i)
    v.push_back(i == steps - 1 ? max : min + (max - min) * i / (steps - 1));
  return v;
}

Range parse_range(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw DomainError("range must be 'min,max,steps'");
  Range r{parse_double(parts[0], "range min"), parse_double(parts[1], "range max"),
          parse_int(parts[2], "range steps")};
  validate(r, "range");
  return r;
}

void validate(const SweepConfig &config) {
  validate(config.nbar_range, "nbar_range");
  validate(config.m_range, "m_range");
  if (config.outputs.empty()) throw DomainError("sweep needs at least one output column");
  for (const auto &o : config.outputs)
    if (std::find(std::begin(kSweepOutputs), std::end(kSweepOutputs), o) ==
        std::end(kSweepOutputs))
      throw DomainError("unknown sweep output '" + o + "'");
  if (config.format == Format::Text) throw DomainError("sweep writes csv or json");
}

SweepConfig load_sweep_config(std::istream &is) {
  json j;
  try {
    j = json::parse(is);
  } catch (const json::exception &e) {
    throw DomainError(std::string("malformed sweep config: ") + e.what());
  }
  if (!j.is_object()) throw DomainError("sweep config must be a JSON object");
  SweepConfig c;
  try {
    if (j.contains("nbar_range")) c.nbar_range = range_from_json(j["nbar_range"], "nbar_range");
    if (j.contains("m_range")) c.m_range = range_from_json(j["m_range"], "m_range");
    if (j.contains("outputs")) c.outputs = j["outputs"].get<std::vector<std::string>>();
    if (j.contains("format")) c.format = parse_format(j["format"].get<std::string>());
  } catch (const json::exception &e) {
    throw DomainError(std::string("malformed sweep config: ") + e.what());
  }
  validate(c);
  return c;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

PointRecord evaluate_point(double nbar, double m) {
  PointRecord r;
  r.nbar = nbar;
  r.m = m;
  const PhysicalityVerdict verdict = validate_mode({nbar, m});
  r.region = classify_region(nbar, m);
  if (r.region == RegionLabel::Unphysical) {
    r.warning = "unphysical moments: |m| exceeds sqrt(nbar (nbar + 1))";
    return r;
  }
  // Inside the boundary band but past the strict bound: evaluate on the curve.
  const double me = verdict.physical ? m : std::copysign(std::sqrt(nbar * (nbar + 1.0)), m);
  r.squeezed = is_squeezed({nbar, me});
  r.nu_minus =
      ppt_symplectic_eigenvalues(covariance_matrix(TwoModeMoments::epr(nbar, me))).nu_minus;
  if (3.0 * nbar * nbar + me * me > 0.0) {
    r.witness = hbt_witness_value(nbar, me).value;
    r.visibility = visibility(nbar, me);
  } else {
    r.warning = "vacuum: witness and visibility are 0/0";
  }
  return r;
}

int cmd_classify(const ClassifyOptions &opts, const RunContext &ctx) {
  return guarded(ctx, [&] {
    const PointRecord r = evaluate_point(opts.nbar, opts.m);
    const json params = {{"nbar", opts.nbar}, {"m", opts.m}, {"format", format_name(opts.format)}};
    const json data = point_json(r);
    std::ostringstream body;
    if (opts.format == Format::Csv) {
      body << "nbar,m,region,witness,visibility,nu_minus,squeezed,warning\r\n"
           << format_real(r.nbar) << ',' << format_real(r.m) << ',' << to_string(r.region) << ','
           << optional_csv(r.witness) << ',' << optional_csv(r.visibility) << ','
           << optional_csv(r.nu_minus) << ','
           << (r.squeezed ? (*r.squeezed ? "true" : "false") : "") << ','
           << csv_quote(r.warning) << "\r\n";
    } else {
      body << "region=" << to_string(r.region) << "\n";
      body << "witness=" << (r.witness ? format_real(*r.witness) : "undefined") << "\n";
      body << "visibility=" << (r.visibility ? format_real(*r.visibility) : "undefined") << "\n";
      body << "nu_minus=" << (r.nu_minus ? format_real(*r.nu_minus) : "undefined") << "\n";
      body << "squeezed=" << (r.squeezed ? (*r.squeezed ? "true" : "false") : "undefined")
           << "\n";
      if (!r.warning.empty()) body << "warning=" << r.warning << "\n";
    }
    emit(ctx, opts.format, manifest("classify", params, json::array(), ctx), data, body.str());
    return kExitOk;
  });
}

int cmd_sweep(const SweepConfig &config, const RunContext &ctx) {
  return guarded(ctx, [&] {
    validate(config);
    const auto nbars = config.nbar_range.values();
    const auto ms = config.m_range.values();
    auto wants = [&](std::string_view name) {
      return std::find(config.outputs.begin(), config.outputs.end(), name) != config.outputs.end();
    };

    json rows = json::array();
    std::ostringstream body;
    body << "nbar,m";
    for (auto name : kSweepOutputs)
      if (wants(name)) body << ',' << name;
    body << "\r\n";

    for (double m : ms)
      for (double nbar : nbars) {
        const PointRecord r = evaluate_point(nbar, m);
        json row = {{"nbar", nbar}, {"m", m}};
        body << format_real(nbar) << ',' << format_real(m);
        if (wants("region")) {
          row["region"] = to_string(r.region);
          body << ',' << to_string(r.region);
        }
        if (wants("witness")) {
          row["witness"] = optional_json(r.witness);
          body << ',' << optional_csv(r.witness);
        }
        if (wants("visibility")) {
          row["visibility"] = optional_json(r.visibility);
          body << ',' << optional_csv(r.visibility);
        }
        if (wants("ppt_nu_minus")) {
          row["ppt_nu_minus"] = optional_json(r.nu_minus);
          body << ',' << optional_csv(r.nu_minus);
        }
        body << "\r\n";
        rows.push_back(std::move(row));
      }

    const json params = {{"nbar_range", range_json(config.nbar_range)},
                         {"m_range", range_json(config.m_range)},
                         {"outputs", config.outputs},
                         {"format", format_name(config.format)}};
    emit(ctx, config.format, manifest("sweep", params, json::array(), ctx), rows, body.str());
    return kExitOk;
  });
}

int cmd_hom(const HomOptions &opts, const RunContext &ctx) {
  return guarded(ctx, [&] {
    if (!(opts.tau_c > 0.0) || !std::isfinite(opts.tau_c))
      throw DomainError("--tau-c must be positive");
    if (opts.format == Format::Text) throw DomainError("hom writes csv or json");
    const double v = visibility(opts.nbar, opts.m);
    const Range taus = opts.tau_range.value_or(Range{-5.0 * opts.tau_c, 5.0 * opts.tau_c, 201});
    validate(taus, "tau range");

    json points = json::array();
    std::ostringstream body;
    body << "tau,p\r\n";
    for (double tau : taus.values()) {
      const double p = hom_coincidence(tau, opts.tau_c, v);
      points.push_back({{"tau", tau}, {"p", p}});
      body << format_real(tau) << ',' << format_real(p) << "\r\n";
    }
    const json data = {{"visibility", v},
                       {"witness", witness_from_visibility(v)},
                       {"points", std::move(points)}};
    const json params = {{"nbar", opts.nbar},       {"m", opts.m},
                         {"tau_c", opts.tau_c},     {"tau_range", range_json(taus)},
                         {"format", format_name(opts.format)}};
    emit(ctx, opts.format, manifest("hom", params, json::array(), ctx), data, body.str());
    return kExitOk;
  });
}

int cmd_homodyne_sim(const HomodyneSimOptions &opts, const RunContext &ctx) {
  return guarded(ctx, [&] {
    if (opts.samples < 2) throw DomainError("--samples must be at least 2");
    if (opts.format == Format::Text) throw DomainError("homodyne-sim writes csv or json");
    const TwoModeMoments tm = TwoModeMoments::epr(opts.nbar, opts.m);
    require_physical(tm);
    const LocalOscillator lo = LocalOscillator::from_power(opts.alpha2, opts.phi);
    const auto records = sample_quadrature_records(tm, opts.phi,
                                                   static_cast<std::size_t>(opts.samples), opts.seed);
    if (!opts.records_path.empty()) {
      std::ostringstream csv;
      write_records_csv(csv, records);
      write_file(opts.records_path, csv.str());
    }
    const VarianceReport rep = estimate_sz_variance(records, lo);
    const double exact = stokes_z_variance_exact(tm, lo);
    const double strong = stokes_z_variance_strong_lo(tm, lo);

    const json data = {{"estimate", rep.estimate},
                       {"std_error", rep.std_error},
                       {"n_samples", rep.n_samples},
                       {"shot_noise", rep.shot_noise},
                       {"exact", exact},
                       {"strong_lo", strong},
                       {"verdict", to_string(rep.verdict)}};
    std::ostringstream body;
    body << "estimate,std_error,n_samples,shot_noise,exact,strong_lo,verdict\r\n"
         << format_real(rep.estimate) << ',' << format_real(rep.std_error) << ','
         << rep.n_samples << ',' << format_real(rep.shot_noise) << ',' << format_real(exact)
         << ',' << format_real(strong) << ',' << to_string(rep.verdict) << "\r\n";
    const json params = {{"nbar", opts.nbar},
                         {"m", opts.m},
                         {"phi", opts.phi},
                         {"alpha2", opts.alpha2},
                         {"samples", opts.samples},
                         {"records", opts.records_path},
                         {"format", format_name(opts.format)}};
    emit(ctx, opts.format, manifest("homodyne-sim", params, json::array({opts.seed}), ctx), data,
         body.str());
    return kExitOk;
  });
}

ClosedForms default_closed_forms() {
  ClosedForms f;
  f.witness = [](double n, double m) { return hbt_witness_value(n, m).value; };
  f.visibility = [](double n, double m) { return visibility(n, m); };
  f.stokes = [](const TwoModeMoments &tm) { return stokes_moments(tm); };
  f.var_x = stokes_x_variance_exact;
  f.var_y = stokes_y_variance_exact;
  f.var_z = stokes_z_variance_exact;
  return f;
}

int cmd_verify(const VerifyOptions &opts, const RunContext &ctx, const ClosedForms &forms) {
  return guarded(ctx, [&] {
    validate(opts.nbar_range, "nbar range");
    validate(opts.fraction_range, "fraction range");
    if (opts.fraction_range.min < 0.0 || opts.fraction_range.max > 1.0)
      throw DomainError("fraction range must lie in [0, 1]");
    if (opts.nbar_range.min <= 0.0) throw DomainError("verify needs nbar > 0");
    if (!(opts.tol > 0.0)) throw DomainError("--tol must be positive");
    if (opts.cutoff < 2) throw DomainError("--cutoff must be at least 2");
    if (opts.format == Format::Text) throw DomainError("verify writes csv or json");

    const LadderExpr s0 = ops::stokes_0(), sx = ops::stokes_x(), sy = ops::stokes_y(),
                     sz = ops::stokes_z();
    const LadderExpr sx2 = sx * sx, sy2 = sy * sy, sz2 = sz * sz;
    const LadderExpr sx2_no = sx2.normal_ordered(), sy2_no = sy2.normal_ordered(),
                     sz2_no = sz2.normal_ordered();
    const LocalOscillator no_lo(0.0, 0.0);

    json rows = json::array();
    std::ostringstream body;
    body << "nbar,m,cutoff,max_deviation,worst,status\r\n";
    bool failed = false;
    double overall = 0.0;

    for (double nbar : opts.nbar_range.values())
      for (double frac : opts.fraction_range.values()) {
        const double m = frac * std::sqrt(nbar * (nbar + 1.0));
        json row = {{"nbar", nbar}, {"m", m}};
        ConvergenceReport conv;
        try {
          conv = convergence_check(nbar, m, 0.01 * opts.tol, opts.cutoff);
        } catch (const ConvergenceError &e) {
          failed = true;
          row.update({{"cutoff", nullptr},
                      {"max_deviation", nullptr},
                      {"worst", nullptr},
                      {"status", "no-convergence"}});
          body << format_real(nbar) << ',' << format_real(m) << ",,,,no-convergence\r\n";
          rows.push_back(std::move(row));
          continue;
        }
        const FockDensityMatrix rho = build_epr_state(nbar, m, conv.cutoff, opts.tol);
        const TwoModeMoments tm = TwoModeMoments::epr(nbar, m);
        auto ev = [&](const LadderExpr &op) { return expect(rho, op).real(); };

        const double w = witness_trace(rho);
        const StokesMoments sm = forms.stokes(tm);
        const double mx = ev(sx), my = ev(sy), mz = ev(sz);
        const std::pair<const char *, double> checks[] = {
            {"witness", std::abs(forms.witness(nbar, m) - w)},
            {"visibility", std::abs(forms.visibility(nbar, m) - (0.5 - w))},
            {"s0", std::abs(sm.s0_mean - ev(s0))},
            {"sx", std::abs(sm.sx_mean - mx)},
            {"sy", std::abs(sm.sy_mean - my)},
            {"sz", std::abs(sm.sz_mean - mz)},
            {"sx2_normal", std::abs(sm.sx2_no - ev(sx2_no))},
            {"sy2_normal", std::abs(sm.sy2_no - ev(sy2_no))},
            {"sz2_normal", std::abs(sm.sz2_no - ev(sz2_no))},
            {"sx2", std::abs(sm.sx2 - ev(sx2))},
            {"sy2", std::abs(sm.sy2 - ev(sy2))},
            {"sz2", std::abs(sm.sz2 - ev(sz2))},
            {"var_x", std::abs(forms.var_x(tm, no_lo) - (ev(sx2) - mx * mx))},
            {"var_y", std::abs(forms.var_y(tm, no_lo) - (ev(sy2) - my * my))},
            {"var_z", std::abs(forms.var_z(tm, no_lo) - (ev(sz2) - mz * mz))},
        };
        const auto worst = std::max_element(
            std::begin(checks), std::end(checks),
            [](const auto &a, const auto &b) { return !(a.second >= b.second); });
        const bool pass = worst->second <= opts.tol;
        failed = failed || !pass;
        overall = std::max(overall, worst->second);
        row.update({{"cutoff", conv.cutoff},
                    {"max_deviation", worst->second},
                    {"worst", worst->first},
                    {"status", pass ? "pass" : "fail"}});
        body << format_real(nbar) << ',' << format_real(m) << ',' << conv.cutoff << ','
             << format_real(worst->second) << ',' << worst->first << ','
             << (pass ? "pass" : "fail") << "\r\n";
        if (!pass)
          *ctx.err << "verify: deviation " << format_real(worst->second) << " in " << worst->first
                   << " at nbar=" << format_real(nbar) << " m=" << format_real(m) << "\n";
        rows.push_back(std::move(row));
      }

    const json data = {{"points", std::move(rows)},
                       {"max_deviation", overall},
                       {"status", failed ? "fail" : "pass"}};
    const json params = {{"nbar_range", range_json(opts.nbar_range)},
                         {"fraction_range", range_json(opts.fraction_range)},
                         {"tol", opts.tol},
                         {"cutoff", opts.cutoff},
                         {"format", format_name(opts.format)}};
    emit(ctx, opts.format, manifest("verify", params, json::array(), ctx), data, body.str());
    return failed ? kExitVerifyFailure : kExitOk;
  });
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Diagnostics for mixed Gaussian EPR states. nbar, m and |alpha|^2 are "
               "dimensionless; delays are in the units of --tau-c.",
               "eprw"};
  app.set_version_flag("--version", EPRW_VERSION);
  app.require_subcommand(1);

  std::string format;
  std::string out_path;
  auto add_io = [&](CLI::App *sub) {
    sub->add_option("--format", format, "text, csv or json");
    sub->add_option("--out", out_path, "Write to this file instead of stdout");
  };

  ClassifyOptions classify;
  auto *c = app.add_subcommand("classify", "Diagnose one (nbar, m) point");
  c->add_option("--nbar", classify.nbar, "Mean photon number per mode")->required();
  c->add_option("--m", classify.m, "Two-mode correlation, <cd> = -m")->required();
  add_io(c);

  std::string nbar_range, m_range, outputs, config_path;
  auto *s = app.add_subcommand("sweep", "Phase-diagram grid, m outer and nbar inner");
  s->add_option("--nbar-range", nbar_range, "min,max,steps");
  s->add_option("--m-range", m_range, "min,max,steps");
  s->add_option("--outputs", outputs, "Comma list of region,witness,visibility,ppt_nu_minus");
  s->add_option("--config", config_path, "JSON sweep configuration");
  add_io(s);

  HomOptions hom;
  std::string tau_range;
  auto *h = app.add_subcommand("hom", "Hong-Ou-Mandel coincidence curve");
  h->add_option("--nbar", hom.nbar)->required();
  h->add_option("--m", hom.m)->required();
  h->add_option("--tau-c", hom.tau_c, "Coherence time (required, sets the delay unit)")
      ->required();
  h->add_option("--tau-range", tau_range, "min,max,steps");
  add_io(h);

  HomodyneSimOptions sim;
  auto *hs = app.add_subcommand("homodyne-sim", "Monte Carlo homodyne S_z variance");
  hs->add_option("--nbar", sim.nbar)->required();
  hs->add_option("--m", sim.m)->required();
  hs->add_option("--phi", sim.phi, "Local-oscillator phase in radians");
  hs->add_option("--alpha2", sim.alpha2, "Local-oscillator power |alpha|^2")->required();
  hs->add_option("--samples", sim.samples, "Number of records")->capture_default_str();
  hs->add_option("--seed", sim.seed, "RNG seed")->capture_default_str();
  hs->add_option("--records", sim.records_path, "Also write the raw records as CSV");
  add_io(hs);

  VerifyOptions verify;
  std::string v_nbar, v_frac;
  bool cutoff_given = false;
  auto *v = app.add_subcommand("verify", "Closed forms against the Fock-space oracle");
  v->add_option("--nbar-range", v_nbar, "min,max,steps");
  v->add_option("--fraction-range", v_frac, "m / sqrt(nbar (nbar + 1)) as min,max,steps");
  v->add_option("--tol", verify.tol)->capture_default_str();
  auto *cut = v->add_option("--cutoff", verify.cutoff, "Fock cutoff ceiling");
  add_io(v);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  RunContext ctx{&out, &err, out_path, utc_timestamp()};
  auto fmt = [&](Format fallback) { return format.empty() ? fallback : parse_format(format); };

  return guarded(ctx, [&]() -> int {
    if (c->parsed()) {
      classify.format = fmt(Format::Text);
      return cmd_classify(classify, ctx);
    }
    if (s->parsed()) {
      SweepConfig config;
      if (!config_path.empty()) {
        std::ifstream is(config_path);
        if (!is) throw DomainError("cannot read config '" + config_path + "'");
        config = load_sweep_config(is);
      }
      if (!nbar_range.empty()) config.nbar_range = parse_range(nbar_range);
      if (!m_range.empty()) config.m_range = parse_range(m_range);
      if (!outputs.empty()) config.outputs = split(outputs, ',');
      config.format = fmt(config.format);
      return cmd_sweep(config, ctx);
    }
    if (h->parsed()) {
      if (!tau_range.empty()) hom.tau_range = parse_range(tau_range);
      hom.format = fmt(Format::Csv);
      return cmd_hom(hom, ctx);
    }
    if (hs->parsed()) {
      sim.format = fmt(Format::Json);
      return cmd_homodyne_sim(sim, ctx);
    }
    cutoff_given = cut->count() > 0;
    if (!cutoff_given) {
      if (const char *env = std::getenv("EPRW_DEFAULT_CUTOFF"))
        verify.cutoff = parse_int(env, "EPRW_DEFAULT_CUTOFF");
    }
    if (!v_nbar.empty()) verify.nbar_range = parse_range(v_nbar);
    if (!v_frac.empty()) verify.fraction_range = parse_range(v_frac);
    verify.format = fmt(Format::Json);
    return cmd_verify(verify, ctx);
  });
}

}  // namespace eprw::cli
