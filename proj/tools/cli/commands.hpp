// Copyright 2026 The symconv Authors.
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

// Subcommands of the symconv verification tool. Each command returns an
// exit code plus one JSON report object (schema 1).

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "symconv/symconv.hpp"

namespace symconv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerification = 1;
inline constexpr int kExitNonInvertible = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitDataFormat = 65;

inline constexpr int kReportSchema = 1;

struct RunConfig {
  std::string command;
  std::string x_mode = "ws";
  std::string w_mode = "ws";
  std::string size = "16";      // per-axis base length, "16" or "16,16"
  std::string period = "16";    // table: comma-separated periods
  std::size_t channels = 1;
  std::size_t radius = 1;
  std::optional<std::size_t> trials;
  std::uint64_t seed = 0;
  Precision precision = Precision::kDouble;
  std::optional<double> tolerance;
  std::string input;
  std::string output;
  std::string report;
  std::string rows;             // table: e.g. "12,15"
  std::size_t depth = 8;
  bool expect_failure = false;
};

struct CommandResult {
  int exit_code = kExitOk;
  nlohmann::json report;
  std::string message;
};

/// Configuration problems detected by the commands themselves.
class UsageError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline std::vector<std::size_t> parse_list(const std::string& text,
                                           const char* what) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &pos);
    } catch (const std::exception&) {
      throw UsageError(std::string("invalid ") + what + " '" + text + "'");
    }
    if (pos != item.size() || v <= 0) {
      throw UsageError(std::string("invalid ") + what + " '" + text + "'");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw UsageError(std::string("empty ") + what);
  return out;
}

inline std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

inline nlohmann::json base_report(const RunConfig& cfg) {
  return {{"schema", kReportSchema},
          {"command", cfg.command},
          {"generator", std::string(kGeneratorName)},
          {"seed", cfg.seed},
          {"precision", std::string(to_string(cfg.precision))},
          {"timestamp", timestamp_utc()}};
}

inline bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline ChannelSignal<double> read_signal_any(const std::string& path) {
  switch (sniff_file(path)) {
    case FileKind::kIcnv: return read_tensor_file(path);
    case FileKind::kPgm: return read_pgm(path);
    case FileKind::kUnknown: break;
  }
  throw FormatError(path + " is neither an ICNV tensor nor a P5 PGM");
}

template <typename T>
void write_signal_any(const ChannelSignal<T>& s, const std::string& path,
                      Precision precision) {
  if (ends_with(path, ".pgm")) {
    write_pgm(s, path);
  } else {
    write_tensor_file(s, path, precision);
  }
}

struct ModeConfig {
  AxisModes x_modes;
  AxisModes w_modes;
};

inline ModeConfig parse_modes(const RunConfig& cfg, std::size_t ndim) {
  ModeConfig mc;
  try {
    mc.x_modes = parse_axis_modes(cfg.x_mode);
    mc.w_modes = parse_axis_modes(cfg.w_mode);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  // A single token applies to every axis.
  if (mc.x_modes.size() == 1 && ndim == 2) mc.x_modes.push_back(mc.x_modes[0]);
  if (mc.w_modes.size() == 1 && ndim == 2) mc.w_modes.push_back(mc.w_modes[0]);
  if (mc.x_modes.size() != ndim || mc.w_modes.size() != ndim) {
    throw UsageError("mode tokens do not match the " + std::to_string(ndim) +
                     "-axis input");
  }
  return mc;
}

inline nlohmann::json rows_json(const std::vector<TransitionRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) out.push_back(r.id);
  return out;
}

inline double default_tolerance(Precision p) {
  return p == Precision::kDouble ? 1e-8 : 1e-3;
}

template <typename T>
CommandResult roundtrip_impl(const RunConfig& cfg) {
  std::optional<ChannelSignal<double>> file_input;
  Dims dims;
  std::size_t channels = cfg.channels;
  if (!cfg.input.empty()) {
    file_input = read_signal_any(cfg.input);
    dims = file_input->dims();
    channels = file_input->channels();
  } else {
    dims = parse_list(cfg.size, "size");
    if (dims.size() > 2) throw UsageError("at most two axes are supported");
  }
  const ModeConfig mc = parse_modes(cfg, dims.size());
  const auto rows = transition_axes(mc.x_modes, mc.w_modes);
  const bool invertible = std::all_of(
      rows.begin(), rows.end(), [](const TransitionRow& r) { return r.invertible; });

  CommandResult res;
  res.report = base_report(cfg);
  res.report["x_mode"] = to_token(mc.x_modes);
  res.report["w_mode"] = to_token(mc.w_modes);
  res.report["table_rows"] = rows_json(rows);
  res.report["dims"] = dims;
  res.report["channels"] = channels;
  res.report["radius"] = cfg.radius;
  res.report["invertible"] = invertible;
  res.report["expect_failure"] = cfg.expect_failure;

  if (!invertible) {
    const auto bad = *std::find_if(rows.begin(), rows.end(),
                                   [](const TransitionRow& r) { return !r.invertible; });
    const bool layer_kernel = std::all_of(
        mc.w_modes.begin(), mc.w_modes.end(),
        [](PadMode m) { return m == PadMode::kWS || m == PadMode::kWA; });
    if (!cfg.expect_failure || !layer_kernel) {
      res.exit_code = kExitNonInvertible;
      res.message = "not invertible: transition table " + describe_row(bad);
      res.report["error"] = res.message;
      res.report["pass"] = false;
      return res;
    }
  }

  const double tol = cfg.tolerance.value_or(default_tolerance(cfg.precision));
  const std::size_t trials = cfg.trials.value_or(file_input ? 1 : 10);
  const Dims radius(dims.size(), cfg.radius);
  const Dims periods = padded_dims_for(mc.x_modes, dims);
  Rng rng(cfg.seed);

  double max_err = 0.0;
  double min_ratio = 1.0;
  nlohmann::json per_trial = nlohmann::json::array();
  std::optional<ChannelSignal<T>> last;
  for (std::size_t t = 0; t < trials; ++t) {
    const KernelSpec<T> kernel =
        well_conditioned_kernel<double>(rng, channels, radius, mc.w_modes,
                                        mc.x_modes, periods)
            .template cast<T>();
    const ChannelSignal<T> x = file_input
                                   ? file_input->template cast<T>()
                                   : random_signal<T>(rng, channels, dims);
    ChannelSignal<T> xr;
    if (invertible) {
      const auto fwd = forward(x, kernel, mc.x_modes);
      xr = inverse(fwd.y, kernel, mc.x_modes);
    } else {
      xr = forced_inverse(forward_period(x, kernel, mc.x_modes), kernel,
                          mc.x_modes);
    }
    const double err = max_abs_diff(x, xr);
    const auto cond = condition_report(kernel, mc.x_modes, periods);
    max_err = std::max(max_err, err);
    min_ratio = std::min(min_ratio, cond.min_ratio);
    per_trial.push_back({{"trial", t},
                         {"max_abs_error", err},
                         {"min_condition_ratio", cond.min_ratio}});
    last = std::move(xr);
  }
  if (!cfg.output.empty() && last) {
    write_signal_any(*last, cfg.output, cfg.precision);
  }

  const bool pass = invertible ? max_err <= tol : max_err > tol;
  res.report["trials"] = per_trial;
  res.report["max_abs_error"] = max_err;
  res.report["tolerance"] = tol;
  res.report["kernel_condition"] = {{"min_ratio", min_ratio}};
  res.report["pass"] = pass;
  res.exit_code = pass ? kExitOk : kExitVerification;
  if (!pass) {
    res.message = invertible
                      ? "roundtrip error exceeds tolerance"
                      : "forced inversion unexpectedly reproduced the input";
  }
  return res;
}

}  // namespace detail

inline nlohmann::json row_report_json(const oracle::RowReport& r) {
  auto zero = [](const oracle::ZeroCheck& z) {
    return nlohmann::json{{"claimed", z.claimed},
                          {"confirmed", z.confirmed},
                          {"residual", z.residual}};
  };
  nlohmann::json j = {
      {"row_id", r.row_id},
      {"x_mode", std::string(to_token(r.x_mode))},
      {"w_mode", std::string(to_token(r.w_mode))},
      {"y_mode", std::string(to_token(r.y_mode))},
      {"period", r.period},
      {"trials", r.trials},
      {"seed", r.seed},
      {"mode_confirmed", r.mode_confirmed},
      {"zero_freq_confirmed",
       {{"dc", zero(r.y_dc)}, {"nyquist", zero(r.y_nyquist)}}},
      {"input_zeros_confirmed", r.input_zeros_confirmed},
      {"max_residual", r.max_residual},
      {"tolerance", r.tolerance},
      {"passed", r.passed()}};
  j["detected_shift"] = r.detected_shift
                            ? nlohmann::json(*r.detected_shift)
                            : nlohmann::json(nullptr);
  return j;
}

inline CommandResult cmd_roundtrip(const RunConfig& cfg) {
  return cfg.precision == Precision::kDouble
             ? detail::roundtrip_impl<double>(cfg)
             : detail::roundtrip_impl<float>(cfg);
}

inline CommandResult cmd_table(const RunConfig& cfg) {
  const auto periods = detail::parse_list(cfg.period, "period");
  for (std::size_t m : periods) {
    if (m % 2 != 0 || m < 6) {
      throw UsageError("table periods must be even and >= 6, got " +
                       std::to_string(m));
    }
  }
  std::vector<int> ids;
  if (cfg.rows.empty()) {
    for (int i = 1; i <= 20; ++i) ids.push_back(i);
  } else {
    for (std::size_t v : detail::parse_list(cfg.rows, "row list")) {
      if (v > 20) throw UsageError("rows are numbered 1-20");
      ids.push_back(static_cast<int>(v));
    }
  }
  const std::size_t trials = cfg.trials.value_or(25);
  const double tol = cfg.tolerance.value_or(1e-9);

  CommandResult res;
  res.report = detail::base_report(cfg);
  res.report["periods"] = periods;
  res.report["tolerance"] = tol;
  nlohmann::json rows = nlohmann::json::array();
  std::vector<std::string> failed;
  for (std::size_t m : periods) {
    for (int id : ids) {
      const std::size_t used = oracle::table_period_for_row(id, m);
      const auto rep = oracle::verify_table_row(id, used, trials, cfg.seed, tol);
      nlohmann::json j = row_report_json(rep);
      j["requested_period"] = m;
      rows.push_back(std::move(j));
      if (!rep.passed()) {
        failed.push_back(std::to_string(id) + "@" + std::to_string(used));
      }
    }
  }
  res.report["rows"] = rows;
  res.report["failed_rows"] = failed;
  res.report["pass"] = failed.empty();
  res.exit_code = failed.empty() ? kExitOk : kExitVerification;
  if (!failed.empty()) {
    std::string list;
    for (const auto& f : failed) list += (list.empty() ? "" : ", ") + f;
    res.message = "transition table rows not reproduced: " + list;
  }
  return res;
}

inline CommandResult cmd_spectrum(const RunConfig& cfg) {
  KernelSpec<double> kernel;
  Dims dims = detail::parse_list(cfg.size, "size");
  if (dims.size() > 2) throw UsageError("at most two axes are supported");
  const auto mc = detail::parse_modes(cfg, dims.size());
  if (!cfg.input.empty()) {
    kernel = {read_kernel_file(cfg.input), mc.w_modes};
    if (kernel.ndim() != dims.size()) {
      throw UsageError("kernel file rank does not match --size");
    }
  } else {
    Rng rng(cfg.seed);
    kernel = random_kernel<double>(rng, cfg.channels, cfg.channels,
                                   Dims(dims.size(), cfg.radius), mc.w_modes);
  }
  const Dims periods = padded_dims_for(mc.x_modes, dims);
  const double tol_sing = cfg.tolerance.value_or(kDefaultSingularTolerance);
  const auto rep = condition_report(kernel, mc.x_modes, periods);

  CommandResult res;
  res.report = detail::base_report(cfg);
  res.report["x_mode"] = to_token(mc.x_modes);
  res.report["w_mode"] = to_token(mc.w_modes);
  res.report["periods"] = periods;
  res.report["c_out"] = kernel.c_out();
  res.report["c_in"] = kernel.c_in();
  res.report["tol_sing"] = tol_sing;
  nlohmann::json entries = nlohmann::json::array();
  std::size_t near_singular = 0;
  for (const auto& e : rep.entries) {
    const bool ns = !e.in_skip && e.ratio < tol_sing;
    near_singular += ns ? 1 : 0;
    entries.push_back({{"frequency", e.frequency},
                       {"ratio", e.ratio},
                       {"in_skip", e.in_skip},
                       {"structural", e.structural},
                       {"near_singular", ns}});
  }
  res.report["frequencies"] = entries;
  res.report["min_ratio"] = rep.min_ratio;
  res.report["argmin"] = rep.argmin;
  res.report["near_singular_count"] = near_singular;
  res.report["pass"] = true;
  return res;
}

inline CommandResult cmd_stack(const RunConfig& cfg) {
  if (cfg.depth == 0) throw UsageError("depth must be positive");
  const Dims dims = detail::parse_list(cfg.size, "size");
  if (dims.size() > 2) throw UsageError("at most two axes are supported");
  const auto mc = detail::parse_modes(cfg, dims.size());
  const double tol = cfg.tolerance.value_or(1e-6);
  const std::size_t trials = cfg.trials.value_or(1);

  std::vector<std::size_t> depths;
  for (std::size_t d = 1; d <= cfg.depth; d *= 2) depths.push_back(d);
  if (depths.back() != cfg.depth) depths.push_back(cfg.depth);

  CommandResult res;
  res.report = detail::base_report(cfg);
  res.report.erase("precision");
  res.report["x_mode"] = to_token(mc.x_modes);
  res.report["w_mode"] = to_token(mc.w_modes);
  res.report["dims"] = dims;
  res.report["channels"] = cfg.channels;
  res.report["tolerance"] = tol;

  nlohmann::json per_depth = nlohmann::json::array();
  bool pass = true;
  for (std::size_t depth : depths) {
    Rng rng(cfg.seed);
    double err_double = 0.0;
    double err_single = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      std::vector<KernelSpec<double>> kernels;
      AxisModes modes = mc.x_modes;
      for (std::size_t l = 0; l < depth; ++l) {
        const Dims periods = padded_dims_for(modes, dims);
        kernels.push_back(well_conditioned_kernel<double>(
            rng, cfg.channels, Dims(dims.size(), cfg.radius), mc.w_modes,
            modes, periods));
        modes = output_modes(modes, mc.w_modes);
      }
      const auto stack = LayerStack<double>::chain(mc.x_modes, kernels);
      const auto x = random_signal<double>(rng, cfg.channels, dims);
      const auto y = stack_forward(x, stack);
      err_double = std::max(err_double,
                            max_abs_diff(x, stack_inverse(y.y, stack)));

      const auto stack_f = stack.cast<float>();
      const auto x_f = x.cast<float>();
      const auto y_f = stack_forward(x_f, stack_f);
      err_single = std::max(err_single,
                            max_abs_diff(x_f, stack_inverse(y_f.y, stack_f)));
    }
    const bool ok = err_double < err_single && err_double <= tol;
    pass = pass && ok;
    per_depth.push_back({{"depth", depth},
                         {"double_error", err_double},
                         {"single_error", err_single},
                         {"double_below_single", err_double < err_single},
                         {"pass", ok}});
  }
  res.report["depths"] = per_depth;
  res.report["pass"] = pass;
  res.exit_code = pass ? kExitOk : kExitVerification;
  if (!pass) res.message = "stack roundtrip stability check failed";
  return res;
}

inline CommandResult cmd_convert(const RunConfig& cfg) {
  if (cfg.input.empty() || cfg.output.empty()) {
    throw UsageError("convert needs --input and --output");
  }
  CommandResult res;
  res.report = detail::base_report(cfg);
  res.report["input"] = cfg.input;
  res.report["output"] = cfg.output;
  const FileKind kind = sniff_file(cfg.input);
  const bool to_pgm = detail::ends_with(cfg.output, ".pgm");
  res.report["output_kind"] = to_pgm ? "pgm" : "icnv";
  if (kind == FileKind::kIcnv && !to_pgm) {
    // ICNV -> ICNV re-encodes the raw record, so kernel files pass too.
    IcnvRecord rec = read_icnv(cfg.input);
    res.report["input_kind"] = "icnv";
    res.report["input_dtype"] = std::string(to_string(rec.dtype));
    rec.dtype = cfg.precision;
    const auto bytes = encode_icnv(rec);
    std::ofstream out(cfg.output, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(IoError::Reason::kOpen, "cannot create " + cfg.output);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError(IoError::Reason::kWrite, "write failed: " + cfg.output);
    res.report["dims"] = rec.dims;
  } else {
    const ChannelSignal<double> s = detail::read_signal_any(cfg.input);
    res.report["input_kind"] = kind == FileKind::kPgm ? "pgm" : "icnv";
    res.report["dims"] = s.dims();
    res.report["channels"] = s.channels();
    try {
      detail::write_signal_any(s, cfg.output, cfg.precision);
    } catch (const ShapeError& e) {
      throw FormatError(e.what());
    }
  }
  res.report["pass"] = true;
  return res;
}

/// Dispatches a command and maps library errors onto exit codes.
inline CommandResult run_command(const RunConfig& cfg) {
  CommandResult res;
  try {
    if (cfg.command == "roundtrip") return cmd_roundtrip(cfg);
    if (cfg.command == "table") return cmd_table(cfg);
    if (cfg.command == "spectrum") return cmd_spectrum(cfg);
    if (cfg.command == "stack") return cmd_stack(cfg);
    if (cfg.command == "convert") return cmd_convert(cfg);
    throw UsageError("unknown command '" + cfg.command + "'");
  } catch (const UsageError& e) {
    res.exit_code = kExitUsage;
    res.message = e.what();
  } catch (const std::invalid_argument& e) {
    res.exit_code = kExitUsage;
    res.message = e.what();
  } catch (const NonInvertibleModePair& e) {
    res.exit_code = kExitNonInvertible;
    res.message = e.what();
  } catch (const UnsupportedKernelMode& e) {
    res.exit_code = kExitNonInvertible;
    res.message = e.what();
  } catch (const FormatError& e) {
    res.exit_code = kExitDataFormat;
    res.message = e.what();
  } catch (const CorruptFile& e) {
    res.exit_code = kExitDataFormat;
    res.message = e.what();
  } catch (const UnsupportedDtype& e) {
    res.exit_code = kExitDataFormat;
    res.message = e.what();
  } catch (const IoError& e) {
    res.exit_code = kExitDataFormat;
    res.message = e.what();
  } catch (const ShapeError& e) {
    res.exit_code = kExitUsage;
    res.message = e.what();
  } catch (const Error& e) {
    // Singular kernels, chain errors and the like.
    res.exit_code = kExitVerification;
    res.message = e.what();
  }
  res.report = detail::base_report(cfg);
  res.report["error"] = res.message;
  res.report["pass"] = false;
  return res;
}

}  // namespace symconv::cli
