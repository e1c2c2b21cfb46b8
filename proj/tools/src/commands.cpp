#include "commands.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "manifest.hpp"
#include "ufofdm/analysis.hpp"
#include "ufofdm/errors.hpp"
#include "ufofdm/filter_io.hpp"
#include "ufofdm/pipeline.hpp"
#include "ufofdm/reference_filters.hpp"
#include "ufofdm/version.hpp"

namespace ufofdm::cli {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using nlohmann::ordered_json;

std::string num(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

void warn(const std::string& msg) { std::cerr << "warning: " << msg << '\n'; }

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot open '" + path.string() + "' for writing");
  return out;
}

/// Collects manifest fields while a command runs and writes the manifest
/// next to the primary output.
class Recorder {
 public:
  Recorder(std::string command, const std::vector<std::string>& args) {
    manifest_.command = std::move(command);
    manifest_.argv = args;
    manifest_.working_directory = fs::current_path().string();
    manifest_.version = kVersion;
  }

  RunManifest& manifest() { return manifest_; }
  void input(const fs::path& path) { manifest_.inputs.push_back(digest(path)); }

  void finish(const std::vector<fs::path>& outputs) {
    for (const auto& p : outputs) manifest_.outputs.push_back(digest(p));
    manifest_.duration_s = std::chrono::duration<double>(Clock::now() - start_).count();
    const fs::path path = manifest_path_for(outputs.front());
    write_manifest(path, manifest_);
    std::cout << "wrote " << outputs.front().string() << " (manifest " << path.string() << ")\n";
  }

 private:
  RunManifest manifest_;
  Clock::time_point start_ = Clock::now();
};

/// A filter file, or plain OFDM on the given band when no file is named.
struct Band {
  FilterDocument doc;
  DesignSpec spec;
};

Band load_band(const std::string& filter_path, int M, const std::string& carriers, Recorder& rec) {
  Band band;
  if (filter_path.empty()) {
    band.doc.M = M;
    band.doc.carriers = parse_carriers(carriers, M);
    band.doc.filter = identity_filter();
    band.doc.g = autocorrelation(band.doc.filter);
  } else {
    band.doc = read_filter_file(filter_path);
    rec.input(filter_path);
  }
  band.spec = spec_for(band.doc);
  band.spec.validate();
  return band;
}

ordered_json band_json(const Band& band) {
  return {{"M", band.spec.M},
          {"N", band.spec.N},
          {"carriers", format_carriers(band.spec.carriers)},
          {"filter_provenance", provenance_name(band.doc.filter.provenance)}};
}

/// "lo:step:hi", "a,b,c" or a single value.
std::vector<double> parse_snr_grid(const std::string& text) {
  std::vector<double> out;
  auto to_double = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw ParameterError("bad SNR value '" + s + "' in '" + text + "'");
    return v;
  };
  const auto c1 = text.find(':');
  if (c1 != std::string::npos) {
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos) throw ParameterError("SNR range must be lo:step:hi, got '" + text + "'");
    const double lo = to_double(text.substr(0, c1));
    const double step = to_double(text.substr(c1 + 1, c2 - c1 - 1));
    const double hi = to_double(text.substr(c2 + 1));
    if (!(step > 0.0) || hi < lo) throw ParameterError("SNR range needs step > 0 and hi >= lo");
    for (int i = 0;; ++i) {
      const double v = lo + i * step;
      if (v > hi + 1e-9 * step) break;
      out.push_back(v);
    }
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(item));
  if (out.empty()) throw ParameterError("empty SNR grid");
  return out;
}

// ---------------------------------------------------------------------------
// design

struct DesignArgs {
  int M = 128;
  int N = 16;
  std::string carriers = "4:19";
  double lambda = 1e-4;
  std::string stopband_start = "17pi/64";
  int grid_S = 0;
  int grid_G = 0;
  std::string spec_file;
  std::string out = "filter.json";
  std::string dump_lp;
  double tolerance = 1e-9;
  int max_iterations = 200;

  CLI::Option* M_opt = nullptr;
  CLI::Option* N_opt = nullptr;
  CLI::Option* carriers_opt = nullptr;
  CLI::Option* lambda_opt = nullptr;
  CLI::Option* stopband_opt = nullptr;
  CLI::Option* S_opt = nullptr;
  CLI::Option* G_opt = nullptr;
};

int cmd_design(const DesignArgs& a, const std::vector<std::string>& args) {
  Recorder rec("design", args);
  DesignSpec spec = DesignSpec::defaults(a.lambda);
  if (!a.spec_file.empty()) {
    spec = parse_design_config(read_text(a.spec_file), spec);
    rec.input(a.spec_file);
  }
  if (a.M_opt->count()) spec.M = a.M;
  if (a.N_opt->count()) {
    spec.N = a.N;
    spec.stopband_grid = 15 * a.N;
    spec.nonneg_grid = 16 * a.N;
  }
  if (a.carriers_opt->count()) spec.carriers = parse_carriers(a.carriers, spec.M);
  if (a.lambda_opt->count()) spec.lambda = a.lambda;
  if (a.S_opt->count()) spec.stopband_grid = a.grid_S;
  if (a.G_opt->count()) spec.nonneg_grid = a.grid_G;
  if (a.stopband_opt->count()) {
    spec.stopband_start = parse_angle(a.stopband_start);
    const CarrierFrequencies cf = shift_carriers(spec);
    if (!spec.allow_carrier_overlap && !cf.nonnegative_half.empty() &&
        cf.nonnegative_half.back() >= spec.stopband_start) {
      warn("stopband start " + format_angle(spec.stopband_start) + " lies below the outermost carrier at " +
           format_angle(cf.nonnegative_half.back()) +
           "; stopband samples next to carriers are dropped and the band edge gets no protection");
      spec.allow_carrier_overlap = true;
    }
  }
  spec.validate();

  const LpOptions options{a.tolerance, a.max_iterations};
  std::vector<fs::path> outputs{a.out};
  if (!a.dump_lp.empty()) {
    std::ofstream lp_out = open_output(a.dump_lp);
    write_cplex_lp(assemble_lp(spec, shift_carriers(spec)), lp_out);
    outputs.emplace_back(a.dump_lp);
  }

  const DesignResult result = design_filter(spec, options);
  FilterDocument doc = make_document(spec, result.filter);
  doc.g = result.repaired;
  write_filter_file(a.out, doc);

  const PsdTrace psd = analytic_psd(result.filter, spec, 4096);
  const double stopband_db = psd.stopband_max_db(spec.stopband_start);
  const double sigma = sigma_tilde(result.filter, spec);

  std::cout << "LP status        " << to_string(result.lp.status) << " after " << result.lp.iterations
            << " iterations\n"
            << "objective        " << num(result.lp.objective, 12) << "\n"
            << "t1               " << num(result.t1, 12) << "\n"
            << "t2               " << num(result.t2, 12) << "\n"
            << "residuals        primal " << num(result.lp.residuals.primal, 3) << "  dual "
            << num(result.lp.residuals.dual, 3) << "  gap " << num(result.lp.residuals.gap, 3) << "\n"
            << "repair           " << (result.repair_applied ? "applied" : "not needed") << "\n"
            << "power error      " << num(result.power_error, 3) << " (relative)\n"
            << "min F_g          " << num(result.min_spectrum, 6) << "\n"
            << "factorization    residual " << num(result.factorization.residual, 3) << ", "
            << result.factorization.unit_circle_roots << " unit-circle roots\n"
            << "stopband max     " << num(stopband_db, 6) << " dB rel. peak\n"
            << "sigma~           " << num(sigma, 8) << "\n";
  for (const auto& w : result.factorization.warnings) warn(w);

  auto& m = rec.manifest();
  m.params = {{"M", spec.M},
              {"N", spec.N},
              {"carriers", format_carriers(spec.carriers)},
              {"lambda", spec.lambda},
              {"stopband_start", format_angle(spec.stopband_start)},
              {"stopband_grid", spec.stopband_grid},
              {"nonneg_grid", spec.nonneg_grid},
              {"allow_carrier_overlap", spec.allow_carrier_overlap},
              {"tolerance", a.tolerance},
              {"max_iterations", a.max_iterations}};
  m.results = {{"lp_status", to_string(result.lp.status)},
               {"iterations", result.lp.iterations},
               {"objective", result.lp.objective},
               {"t1", result.t1},
               {"t2", result.t2},
               {"residual_primal", result.lp.residuals.primal},
               {"residual_dual", result.lp.residuals.dual},
               {"residual_gap", result.lp.residuals.gap},
               {"repair_applied", result.repair_applied},
               {"power_error", result.power_error},
               {"min_spectrum", result.min_spectrum},
               {"factorization_residual", result.factorization.residual},
               {"stopband_max_db", stopband_db},
               {"sigma_tilde", sigma}};
  rec.finish(outputs);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// spectrum

struct SpectrumArgs {
  std::string filter;
  int M = 128;
  std::string carriers = "4:19";
  int points = 4096;
  int empirical = 0;
  int fft_size = 0;
  std::uint64_t seed = 1;
  std::string stopband_start = "17pi/64";
  std::string out = "psd.csv";
};

int cmd_spectrum(const SpectrumArgs& a, int threads, const std::vector<std::string>& args) {
  Recorder rec("spectrum", args);
  const Band band = load_band(a.filter, a.M, a.carriers, rec);
  const double stop = parse_angle(a.stopband_start);

  PsdTrace trace;
  int fft_size = 0;
  if (a.empirical > 0) {
    fft_size = a.fft_size > 0 ? a.fft_size : 8 * band.spec.M;
    trace = empirical_psd(band.doc.filter, band.spec, a.empirical, fft_size, a.seed, threads);
  } else {
    trace = analytic_psd(band.doc.filter, band.spec, a.points);
  }
  {
    std::ofstream out = open_output(a.out);
    write_psd_csv(out, trace);
  }

  const double stopband_db = trace.stopband_max_db(stop);
  const double sidelobe_db = band.doc.filter.length() > 1 ? sidelobe_level_db(band.doc.filter)
                                                           : -std::numeric_limits<double>::infinity();
  std::cout << "stopband max     " << num(stopband_db, 6) << " dB rel. peak (from " << format_angle(stop) << ")\n"
            << "filter sidelobe  " << num(sidelobe_db, 6) << " dB rel. |F| peak\n";

  auto& m = rec.manifest();
  m.params = band_json(band);
  m.params["threads"] = threads;
  m.params["points"] = a.points;
  m.params["empirical_frames"] = a.empirical;
  m.params["fft_size"] = fft_size;
  m.params["stopband_start"] = format_angle(stop);
  m.results = {{"stopband_max_db", stopband_db}, {"filter_sidelobe_db", sidelobe_db}};
  if (a.empirical > 0) {
    m.seed = a.seed;
    const CarrierFrequencies cf = shift_carriers(band.spec);
    double worst = 0.0;
    for (std::size_t i = 0; i < trace.omega.size(); ++i) {
      if (trace.omega[i] <= cf.nonnegative_half.back()) {
        worst = std::max(worst, std::abs(trace.empirical_db[i] - trace.analytic_db[i]));
      }
    }
    std::cout << "in-band |empirical - analytic| max " << num(worst, 4) << " dB\n";
    m.results["inband_max_deviation_db"] = worst;
  }
  rec.finish({a.out});
  return kExitOk;
}

// ---------------------------------------------------------------------------
// ber

struct BerArgs {
  std::string filter;
  int M = 128;
  std::string carriers = "4:19";
  std::string channel = "rayleigh";
  int L = 12;
  int D = 16;
  std::string snr_db = "0:2:16";
  double bits = 1e5;
  std::uint64_t seed = 1;
  bool real_taps = false;
  std::string out = "ber.csv";
};

int cmd_ber(const BerArgs& a, int threads, const std::vector<std::string>& args) {
  Recorder rec("ber", args);
  const Band band = load_band(a.filter, a.M, a.carriers, rec);
  if (a.bits != std::floor(a.bits)) throw ParameterError("--bits must be a whole number");

  BerOptions options;
  options.model = a.channel == "awgn" ? ChannelModel::awgn_flat : ChannelModel::rayleigh;
  options.L = a.L;
  options.taps = a.real_taps ? FadingTaps::real_gaussian : FadingTaps::complex_gaussian;
  options.snr_db = parse_snr_grid(a.snr_db);
  options.bits_per_point = static_cast<std::uint64_t>(a.bits);
  options.seed = a.seed;
  options.threads = threads;

  ChainConfig cfg{band.spec.M, a.D, band.spec.carriers, band.doc.filter};
  cfg.validate();
  const BerCurve curve = run_ber_experiment(cfg, options);
  {
    std::ofstream out = open_output(a.out);
    write_ber_csv(out, curve);
  }

  std::cout << "snr_db    bits        errors      ber           95% interval\n";
  std::uint64_t redraws = 0;
  for (const auto& p : curve.points) {
    char line[160];
    std::snprintf(line, sizeof line, "%-9.4g %-11llu %-11llu %-13.6g [%.6g, %.6g]\n", p.snr_db,
                  static_cast<unsigned long long>(p.bits), static_cast<unsigned long long>(p.errors), p.ber,
                  p.ci_low, p.ci_high);
    std::cout << line;
    redraws += p.channel_redraws;
  }
  if (redraws > 0) std::cout << "channel redraws at spectral nulls: " << redraws << "\n";

  auto& m = rec.manifest();
  m.params = band_json(band);
  m.params["threads"] = threads;
  m.params["channel"] = to_string(options.model);
  m.params["L"] = curve.L;
  m.params["D"] = a.D;
  m.params["taps"] = a.real_taps ? "real_gaussian" : "complex_gaussian";
  m.params["snr_db"] = options.snr_db;
  m.params["bits_per_point"] = options.bits_per_point;
  m.seed = a.seed;
  m.results = {{"channel_redraws", redraws}};
  rec.finish({a.out});
  return kExitOk;
}

// ---------------------------------------------------------------------------
// papr

struct PaprArgs {
  std::string filter;
  int M = 128;
  std::string carriers = "4:19";
  double symbols = 1e5;
  std::uint64_t seed = 1;
  int interpolate = 1;
  std::string out = "ccdf.csv";
};

int cmd_papr(const PaprArgs& a, int threads, const std::vector<std::string>& args) {
  Recorder rec("papr", args);
  const Band band = load_band(a.filter, a.M, a.carriers, rec);
  if (a.symbols != std::floor(a.symbols) || a.symbols > std::numeric_limits<int>::max()) {
    throw ParameterError("--symbols must be a whole number below 2^31");
  }
  if (a.symbols < 1e3) warn("fewer than 1e3 symbols; the CCDF tail is unreliable");

  PaprOptions options;
  options.symbols = static_cast<int>(a.symbols);
  options.seed = a.seed;
  options.threads = threads;
  options.interpolation = a.interpolate;
  const PaprCcdf ccdf = compute_papr_ccdf(band.doc.filter, band.spec, options);
  {
    std::ofstream out = open_output(a.out);
    write_ccdf_csv(out, ccdf);
  }

  const double at_1e2 = ccdf.threshold_at(1e-2);
  const double at_1e3 = ccdf.threshold_at(1e-3);
  std::cout << "sigma~           " << num(ccdf.sigma_tilde, 8) << "\n"
            << "PAPR at 1e-2     " << num(at_1e2, 6) << " dB\n"
            << "PAPR at 1e-3     " << num(at_1e3, 6) << " dB\n"
            << "oversampling     " << ccdf.oversampling << "\n";

  auto& m = rec.manifest();
  m.params = band_json(band);
  m.params["threads"] = threads;
  m.params["symbols"] = options.symbols;
  m.params["interpolation"] = options.interpolation;
  m.seed = a.seed;
  m.results = {{"sigma_tilde", ccdf.sigma_tilde}, {"papr_db_at_1e-2", at_1e2}, {"papr_db_at_1e-3", at_1e3}};
  rec.finish({a.out});
  return kExitOk;
}

// ---------------------------------------------------------------------------
// chebyshev

struct ChebyshevArgs {
  int N = 16;
  double attenuation_db = 45.0;
  int M = 128;
  std::string carriers = "4:19";
  std::string out = "dolph_chebyshev.json";
};

int cmd_chebyshev(const ChebyshevArgs& a, const std::vector<std::string>& args) {
  Recorder rec("chebyshev", args);
  DesignSpec spec = DesignSpec::defaults();
  spec.M = a.M;
  spec.N = a.N;
  spec.stopband_grid = 15 * a.N;
  spec.nonneg_grid = 16 * a.N;
  spec.carriers = parse_carriers(a.carriers, a.M);

  const FirFilter window = dolph_chebyshev(a.N, a.attenuation_db);
  spec.validate();
  const FirFilter filter = normalize_power(window, spec);
  write_filter_file(a.out, make_document(spec, filter));

  const double sidelobe_db = sidelobe_level_db(filter);
  std::cout << "sidelobe level   " << num(sidelobe_db, 6) << " dB rel. |F| peak\n"
            << "sigma~           " << num(sigma_tilde(filter, spec), 8) << "\n";

  auto& m = rec.manifest();
  m.params = {{"M", spec.M},
              {"N", spec.N},
              {"carriers", format_carriers(spec.carriers)},
              {"attenuation_db", a.attenuation_db}};
  m.results = {{"sidelobe_db", sidelobe_db}};
  rec.finish({a.out});
  return kExitOk;
}

// ---------------------------------------------------------------------------
// replay

struct ReplayArgs {
  std::string manifest;
  int threads = 0;  ///< 0 keeps the recorded thread count
};

std::vector<std::string> with_threads(const std::vector<std::string>& argv, int threads) {
  std::vector<std::string> out{"--threads", std::to_string(threads)};
  for (std::size_t i = 0; i < argv.size(); ++i) {
    if (argv[i] == "--threads") {
      ++i;
      continue;
    }
    if (argv[i].rfind("--threads=", 0) == 0) continue;
    out.push_back(argv[i]);
  }
  return out;
}

int cmd_replay(const ReplayArgs& a) {
  const RunManifest m = read_manifest(a.manifest);
  const std::vector<std::string> args = a.threads > 0 ? with_threads(m.argv, a.threads) : m.argv;

  const fs::path previous = fs::current_path();
  if (!m.working_directory.empty()) fs::current_path(m.working_directory);
  struct Restore {
    fs::path dir;
    ~Restore() { fs::current_path(dir); }
  } restore{previous};

  for (const auto& in : m.inputs) {
    if (sha256_file(in.path) != in.sha256) warn("input '" + in.path + "' changed since the recorded run");
  }
  const int code = run_cli(args);
  if (code != kExitOk) return code;

  bool identical = true;
  for (const auto& out : m.outputs) {
    const bool same = fs::exists(out.path) && sha256_file(out.path) == out.sha256;
    std::cout << (same ? "identical  " : "DIFFERS    ") << out.path << "\n";
    identical = identical && same;
  }
  return identical ? kExitOk : kExitNumerical;
}

int default_threads() {
  if (const char* env = std::getenv("UFOFDM_THREADS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      warn("ignoring UFOFDM_THREADS='" + std::string(env) + "'");
    }
  }
  return 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"UF-OFDM filter design and evaluation", "ufofdm"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "INI/TOML file supplying option values; flags given on the command line win");

  int threads = default_threads();
  auto* threads_opt = app.add_option("--threads", threads, "Worker threads for Monte Carlo runs (default $UFOFDM_THREADS or 1)")
      ->check(CLI::PositiveNumber);

  DesignArgs design;
  auto* design_cmd = app.add_subcommand("design", "Design a filter by solving the side-lobe LP");
  design.M_opt = design_cmd->add_option("--M", design.M, "IFFT size")->capture_default_str();
  design.N_opt = design_cmd->add_option("--N", design.N, "Filter length")->capture_default_str();
  design.carriers_opt =
      design_cmd->add_option("--carriers", design.carriers, "Used carriers a:b (inclusive)")->capture_default_str();
  design.lambda_opt =
      design_cmd->add_option("--lambda", design.lambda, "Weight on the in-band gain")->capture_default_str();
  design.stopband_opt = design_cmd
                            ->add_option("--stopband-start", design.stopband_start,
                                         "Stopband lower edge in rad, e.g. 17pi/64")
                            ->capture_default_str();
  design.S_opt = design_cmd->add_option("--grid-S", design.grid_S, "Stopband samples (default 15N)");
  design.G_opt = design_cmd->add_option("--grid-G", design.grid_G, "Nonnegativity samples (default 16N)");
  design_cmd->add_option("--spec", design.spec_file, "Design config file (key = value); flags override it");
  design_cmd->add_option("--out", design.out, "Filter JSON output")->capture_default_str();
  design_cmd->add_option("--dump-lp", design.dump_lp, "Also write the LP in CPLEX LP format");
  design_cmd->add_option("--tolerance", design.tolerance, "LP optimality tolerance")->capture_default_str();
  design_cmd->add_option("--max-iterations", design.max_iterations, "LP iteration limit")->capture_default_str();

  SpectrumArgs spectrum;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Write the power spectrum of a filtered band");
  spectrum_cmd->add_option("--filter", spectrum.filter, "Filter JSON (plain OFDM when omitted)");
  spectrum_cmd->add_option("--M", spectrum.M, "IFFT size without --filter")->capture_default_str();
  spectrum_cmd->add_option("--carriers", spectrum.carriers, "Carriers without --filter")->capture_default_str();
  spectrum_cmd->add_option("--points", spectrum.points, "Analytic grid points on [0, pi]")
      ->capture_default_str()
      ->check(CLI::Range(256, 1 << 24));
  spectrum_cmd->add_option("--empirical", spectrum.empirical, "Also average this many random frames")
      ->check(CLI::NonNegativeNumber);
  spectrum_cmd->add_option("--fft-size", spectrum.fft_size, "Periodogram transform size (default 8M)");
  spectrum_cmd->add_option("--seed", spectrum.seed, "Master seed")->capture_default_str();
  spectrum_cmd->add_option("--stopband-start", spectrum.stopband_start, "Edge for the stopband report")
      ->capture_default_str();
  spectrum_cmd->add_option("--out", spectrum.out, "CSV output")->capture_default_str();

  BerArgs ber;
  auto* ber_cmd = app.add_subcommand("ber", "Monte Carlo bit error rate through the full chain");
  ber_cmd->add_option("--filter", ber.filter, "Filter JSON (plain OFDM when omitted)");
  ber_cmd->add_option("--M", ber.M, "IFFT size without --filter")->capture_default_str();
  ber_cmd->add_option("--carriers", ber.carriers, "Carriers without --filter")->capture_default_str();
  ber_cmd->add_option("--channel", ber.channel, "awgn or rayleigh")
      ->capture_default_str()
      ->check(CLI::IsMember({"awgn", "rayleigh"}));
  ber_cmd->add_option("--L", ber.L, "Channel taps")->capture_default_str()->check(CLI::PositiveNumber);
  ber_cmd->add_option("--D", ber.D, "Zero padding length")->capture_default_str()->check(CLI::NonNegativeNumber);
  ber_cmd->add_option("--snr-db", ber.snr_db, "sigma_s^2/sigma_n^2 grid lo:step:hi or a,b,c")->capture_default_str();
  ber_cmd->add_option("--bits", ber.bits, "Bits per SNR point (>= 1e4)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  ber_cmd->add_option("--seed", ber.seed, "Master seed")->capture_default_str();
  ber_cmd->add_flag("--real-taps", ber.real_taps, "Real Gaussian channel taps instead of complex");
  ber_cmd->add_option("--out", ber.out, "CSV output")->capture_default_str();

  PaprArgs papr;
  auto* papr_cmd = app.add_subcommand("papr", "Empirical PAPR CCDF");
  papr_cmd->add_option("--filter", papr.filter, "Filter JSON (plain OFDM when omitted)");
  papr_cmd->add_option("--M", papr.M, "IFFT size without --filter")->capture_default_str();
  papr_cmd->add_option("--carriers", papr.carriers, "Carriers without --filter")->capture_default_str();
  papr_cmd->add_option("--symbols", papr.symbols, "Symbols to evaluate")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  papr_cmd->add_option("--seed", papr.seed, "Master seed")->capture_default_str();
  papr_cmd->add_option("--interpolate", papr.interpolate, "Extra interpolation factor, 1 or 4")
      ->capture_default_str()
      ->check(CLI::IsMember({1, 4}));
  papr_cmd->add_option("--out", papr.out, "CSV output")->capture_default_str();

  ChebyshevArgs cheb;
  auto* cheb_cmd = app.add_subcommand("chebyshev", "Write a power-normalized Dolph-Chebyshev filter");
  cheb_cmd->add_option("--N", cheb.N, "Filter length")->capture_default_str();
  cheb_cmd->add_option("--attenuation-db", cheb.attenuation_db, "Side-lobe attenuation")->capture_default_str();
  cheb_cmd->add_option("--M", cheb.M, "IFFT size of the band")->capture_default_str();
  cheb_cmd->add_option("--carriers", cheb.carriers, "Band carriers a:b")->capture_default_str();
  cheb_cmd->add_option("--out", cheb.out, "Filter JSON output")->capture_default_str();

  ReplayArgs replay;
  auto* replay_cmd = app.add_subcommand("replay", "Re-run a manifest and compare output digests");
  replay_cmd->add_option("manifest", replay.manifest, "Manifest JSON")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*design_cmd) return cmd_design(design, args);
    if (*spectrum_cmd) return cmd_spectrum(spectrum, threads, args);
    if (*ber_cmd) return cmd_ber(ber, threads, args);
    if (*papr_cmd) return cmd_papr(papr, threads, args);
    if (*cheb_cmd) return cmd_chebyshev(cheb, args);
    if (*replay_cmd) {
      if (threads_opt->count()) replay.threads = threads;
      return cmd_replay(replay);
    }
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigurationError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace ufofdm::cli
