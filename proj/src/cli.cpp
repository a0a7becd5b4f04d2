#include "stdenoise/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "stdenoise/diffusion.hpp"
#include "stdenoise/errors.hpp"
#include "stdenoise/io.hpp"
#include "stdenoise/metrics.hpp"
#include "stdenoise/sigma_delta.hpp"
#include "stdenoise/synth.hpp"

namespace stdenoise {

namespace fs = std::filesystem;

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

std::pair<int, int> parse_pair(const std::string& text, const char* what) {
  std::istringstream is(text);
  int a = 0, b = 0;
  char comma = 0;
  if (!(is >> a >> comma >> b) || comma != ',' || !(is >> std::ws).eof()) {
    throw UsageError(std::string(what) + " must be of the form X,Y (got '" + text + "')");
  }
  return {a, b};
}

// Flat `key=value` file; '#' starts a comment line. Returns "--key=value" tokens.
std::vector<std::string> read_config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  std::vector<std::string> tokens;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    if (key.empty() || key == "config") {
      throw UsageError(path + ":" + std::to_string(lineno) + ": invalid key");
    }
    tokens.push_back("--" + key + "=" + value);
  }
  return tokens;
}

// Config values go right after the subcommand so explicit flags, parsed
// later with TakeLast, override them.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      continue;
    }
    auto tokens = read_config_tokens(path);
    args.insert(args.begin() + 1, tokens.begin(), tokens.end());
    break;
  }
  return args;
}

struct MethodOptions {
  DiffusionParams diffusion;
  SigmaDeltaParams sigma_delta;
  std::string temporal_mode = "gate";
  std::string fidelity_sign = "restoring";
  bool isotropic = false;
  int radius = 1;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--k-s", diffusion.k_s, "Spatial diffusivity threshold")->capture_default_str();
    cmd.add_option("--k-t", diffusion.k_t, "Temporal diffusivity threshold (soft mode)")
        ->capture_default_str();
    cmd.add_option("--lambda", diffusion.lambda, "Diffusion weight")->capture_default_str();
    cmd.add_option("--dt", diffusion.dt, "Time step, (0, 0.24]")->capture_default_str();
    cmd.add_option("--iters", diffusion.iterations, "Iteration count")->capture_default_str();
    cmd.add_option("--fidelity", diffusion.fidelity_weight, "Data fidelity weight")
        ->capture_default_str();
    cmd.add_option("--temporal-mode", temporal_mode, "gate | soft")
        ->check(CLI::IsMember({"gate", "soft"}))
        ->capture_default_str();
    cmd.add_option("--fidelity-sign", fidelity_sign,
                   "restoring: +(f-g); printed: +(g-f), diverges")
        ->check(CLI::IsMember({"restoring", "printed"}))
        ->capture_default_str();
    cmd.add_flag("--recompute-motion", diffusion.recompute_motion,
                 "Re-run motion detection on every iterate");
    cmd.add_option("--sd-n", sigma_delta.amplification, "Sigma-delta amplification N")
        ->capture_default_str();
    cmd.add_option("--sd-vmin", sigma_delta.v_min, "Sigma-delta variance floor")
        ->capture_default_str();
    cmd.add_option("--sd-vmax", sigma_delta.v_max, "Sigma-delta variance ceiling")
        ->capture_default_str();
    cmd.add_flag("--isotropic", isotropic, "pm2d: constant diffusivity (heat equation)");
    cmd.add_option("--radius", radius, "median3d: window radius")->capture_default_str();
  }

  void finalize() {
    diffusion.temporal_mode = temporal_mode == "soft" ? TemporalMode::Soft : TemporalMode::Gate;
    diffusion.fidelity_sign =
        fidelity_sign == "printed" ? FidelitySign::AsPrinted : FidelitySign::Restoring;
  }
};

const std::vector<std::string> kMethods = {"coupled", "diffusion3d", "median3d", "pm2d"};

Sequence run_method(const std::string& method, const Sequence& noisy, const MethodOptions& o) {
  if (method == "coupled") return denoise_coupled(noisy, o.diffusion, o.sigma_delta);
  if (method == "diffusion3d") return denoise_diffusion3d(noisy, o.diffusion);
  if (method == "pm2d") return denoise_pm2d(noisy, o.diffusion, o.isotropic);
  if (method == "median3d") return denoise_median3d(noisy, o.radius);
  throw UsageError("unknown method " + method);
}

void write_csv_file(const std::string& path, std::span<const MetricsReport> reports) {
  std::ostringstream os;
  write_metrics_csv(os, reports);
  const std::string text = os.str();
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  write_file_atomic(p, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

void print_summary(std::ostream& out, std::span<const MetricsReport> rows) {
  out << std::left << std::setw(14) << "method" << std::right << std::setw(14) << "mean_mse"
      << std::setw(12) << "mean_psnr" << '\n';
  for (const MetricsReport& r : rows) {
    out << std::left << std::setw(14) << r.method << std::right << std::setw(14)
        << format_number(r.mean_mse, 8) << std::setw(12) << format_number(r.mean_psnr, 4) << '\n';
  }
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spatio-temporal anisotropic diffusion denoising for grayscale image sequences",
               "stdenoise"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  std::string config_path;

  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key=value file; flags take precedence");
  };

  // synth
  SceneSpec scene;
  std::string synth_out, object = "square", velocity = "1,0", start = "4,26";
  auto* synth = app.add_subcommand("synth", "Write a synthetic ground-truth sequence");
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_option("--width", scene.width)->capture_default_str();
  synth->add_option("--height", scene.height)->capture_default_str();
  synth->add_option("--frames", scene.frames)->capture_default_str();
  synth->add_option("--object", object)->check(CLI::IsMember({"square", "disk"}))->capture_default_str();
  synth->add_option("--size", scene.object_size, "Square side or disk diameter")->capture_default_str();
  synth->add_option("--background", scene.background)->capture_default_str();
  synth->add_option("--intensity", scene.object_intensity)->capture_default_str();
  synth->add_option("--velocity", velocity, "DX,DY pixels per frame")->capture_default_str();
  synth->add_option("--start", start, "X,Y square corner or disk centre")->capture_default_str();
  add_config(synth);

  // noise
  NoiseSpec noise;
  std::string noise_in, noise_out;
  auto* noise_cmd = app.add_subcommand("noise", "Add seeded Gaussian noise to a sequence");
  noise_cmd->add_option("--in", noise_in)->required();
  noise_cmd->add_option("--out", noise_out)->required();
  noise_cmd->add_option("--sigma", noise.sigma)->capture_default_str();
  noise_cmd->add_option("--seed", noise.seed)->capture_default_str();
  add_config(noise_cmd);

  // denoise
  MethodOptions denoise_opts;
  std::string denoise_in, denoise_out, method = "coupled";
  auto* denoise = app.add_subcommand("denoise", "Denoise a sequence");
  denoise->add_option("--in", denoise_in)->required();
  denoise->add_option("--out", denoise_out)->required();
  denoise->add_option("--method", method)->check(CLI::IsMember(kMethods))->capture_default_str();
  denoise_opts.add_to(*denoise);
  add_config(denoise);

  // motion
  SigmaDeltaParams motion_params;
  std::string motion_in, motion_out;
  auto* motion = app.add_subcommand("motion", "Write sigma-delta motion masks (0/255)");
  motion->add_option("--in", motion_in)->required();
  motion->add_option("--out", motion_out)->required();
  motion->add_option("--sd-n", motion_params.amplification)->capture_default_str();
  motion->add_option("--sd-vmin", motion_params.v_min)->capture_default_str();
  motion->add_option("--sd-vmax", motion_params.v_max)->capture_default_str();
  add_config(motion);

  // metrics
  std::string metrics_ref, metrics_est, metrics_csv, label = "estimate";
  double peak = 1.0;
  auto* metrics = app.add_subcommand("metrics", "Per-frame MSE/PSNR of an estimate");
  metrics->add_option("--ref", metrics_ref)->required();
  metrics->add_option("--est", metrics_est)->required();
  metrics->add_option("--csv", metrics_csv)->required();
  metrics->add_option("--label", label)->capture_default_str();
  metrics->add_option("--peak", peak, "Peak intensity D")->capture_default_str();
  add_config(metrics);

  // compare
  MethodOptions compare_opts;
  std::string compare_ref, compare_noisy, compare_csv, compare_dir;
  auto* compare = app.add_subcommand("compare", "Run every method on a noisy sequence and score it");
  compare->add_option("--ref", compare_ref, "Clean reference sequence")->required();
  compare->add_option("--noisy", compare_noisy, "Noisy input sequence")->required();
  compare->add_option("--out-csv", compare_csv)->required();
  compare->add_option("--out-dir", compare_dir, "Also write each method's output here");
  compare_opts.add_to(*compare);
  add_config(compare);

  std::vector<std::string> args = expand_config(raw_args);
  // CLI11 consumes arguments from the back.
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  if (synth->parsed()) {
    scene.object = object == "disk" ? ObjectShape::Disk : ObjectShape::Square;
    std::tie(scene.velocity_x, scene.velocity_y) = parse_pair(velocity, "--velocity");
    std::tie(scene.start_x, scene.start_y) = parse_pair(start, "--start");
    write_sequence(generate(scene), synth_out);
  } else if (noise_cmd->parsed()) {
    write_sequence(add_gaussian_noise(read_sequence(noise_in), noise), noise_out);
  } else if (denoise->parsed()) {
    denoise_opts.finalize();
    const Sequence noisy = read_sequence(denoise_in);
    write_sequence(run_method(method, noisy, denoise_opts), denoise_out);
  } else if (motion->parsed()) {
    motion_params.validate();
    const Sequence seq = read_sequence(motion_in);
    std::vector<Frame> masks;
    for (const MotionFrame& m : sd_run(seq, motion_params)) masks.push_back(motion_mask(m));
    write_sequence(Sequence(std::move(masks)), motion_out);
  } else if (metrics->parsed()) {
    if (!(peak > 0.0)) throw ParameterError("--peak must be > 0");
    const MetricsReport report =
        evaluate(read_sequence(metrics_ref), read_sequence(metrics_est), peak, label);
    write_csv_file(metrics_csv, std::span(&report, 1));
    out << "mean_mse " << format_number(report.mean_mse, 8) << "\nmean_psnr "
        << format_number(report.mean_psnr, 4) << '\n';
  } else if (compare->parsed()) {
    compare_opts.finalize();
    compare_opts.diffusion.validate();
    compare_opts.sigma_delta.validate();
    const Sequence ref = read_sequence(compare_ref);
    const Sequence noisy = read_sequence(compare_noisy);
    std::vector<MetricsReport> reports;
    reports.push_back(evaluate(ref, noisy, 1.0, "noisy"));
    for (const std::string& name : kMethods) {
      const Sequence estimate = run_method(name, noisy, compare_opts);
      if (!compare_dir.empty()) write_sequence(estimate, fs::path(compare_dir) / name);
      reports.push_back(evaluate(ref, estimate, 1.0, name));
    }
    write_csv_file(compare_csv, reports);
    print_summary(out, std::span(reports).subspan(1));
    out << "input: noisy mean_mse " << format_number(reports[0].mean_mse, 8) << " mean_psnr "
        << format_number(reports[0].mean_psnr, 4) << '\n';
  }
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run(args, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParameter;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

int cli_main(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace stdenoise
