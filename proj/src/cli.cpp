#include "dimspect/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "dimspect/carpet.hpp"
#include "dimspect/estimate.hpp"
#include "dimspect/formulas.hpp"
#include "dimspect/frostman.hpp"
#include "dimspect/io.hpp"

namespace dimspect {

namespace {

enum class Format { csv, json };

struct Common {
  std::string format = "csv";
  std::string out_path;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", c.out_path, "Write to this file instead of stdout");
}

// Writes through a string so a failed run never leaves a partial file.
void emit(const Common& c, std::ostream& out, const std::string& text) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out_path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open output file '" + c.out_path + "'");
  f << text;
}

std::string render(const Common& c, const DimensionSpectrum& spectrum) {
  std::ostringstream ss;
  if (c.format == "json") {
    ss << spectrum_to_json(spectrum).dump(2) << '\n';
  } else {
    write_spectrum_csv(ss, spectrum);
  }
  return ss.str();
}

std::vector<Theta> grid_or_default(const std::string& text) {
  return text.empty() ? uniform_theta_grid() : parse_theta_grid(text);
}

PointCloud load_points(const std::string& path, std::istream& in) {
  if (path == "-") return read_points(in);
  return read_points_file(path);
}

nlohmann::json load_json_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return parse_json(arg);
  return read_json_file(arg);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Intermediate-dimension spectra of finite point sets and carpets", "dimspect"};
  app.require_subcommand(1);

  // sequence
  Common seq_c;
  double seq_p = 1.0;
  std::string seq_grid;
  auto* seq = app.add_subcommand("sequence", "Closed-form spectrum of {0} U {k^-p}");
  seq->add_option("--p", seq_p, "Exponent p > 0")->required();
  seq->add_option("--grid", seq_grid, "Theta grid: a:b:step or a comma list (default 101 points)");
  add_common(seq, seq_c);

  // example
  Common ex_c;
  int ex_which = 1;
  std::string ex_grid;
  auto* ex = app.add_subcommand("example", "Closed-form spectra of the four worked examples");
  ex->add_option("--which", ex_which, "Example number")->required()->check(CLI::Range(1, 4));
  ex->add_option("--grid", ex_grid, "Theta grid");
  add_common(ex, ex_c);

  // carpet
  Common car_c;
  std::string car_spec;
  std::string car_grid;
  std::optional<double> car_assouad;
  auto* car = app.add_subcommand("carpet", "Bounds for a Bedford-McMullen carpet");
  car->add_option("--spec", car_spec, "Carpet JSON file, or inline JSON")->required();
  car->add_option("--grid", car_grid, "Theta grid");
  car->add_option("--assouad", car_assouad, "Known Assouad dimension (adds a lower bound)");
  add_common(car, car_c);

  // estimate
  Common est_c;
  std::string est_points;
  std::string est_grid;
  std::string est_deltas = "0.01,0.00316227766,0.001";
  std::string est_engine = "dyadic";
  EstimateOptions est_opts;
  auto* est = app.add_subcommand("estimate", "Estimate the spectrum of a point file");
  est->add_option("--points", est_points, "Point file, or - for stdin")->required();
  est->add_option("--grid", est_grid,
                  "Theta grid (default 101 points; thetas too deep for the deltas are skipped)");
  est->add_option("--deltas", est_deltas, "Strictly decreasing scales in (0, 1)")
      ->capture_default_str();
  est->add_option("--engine", est_engine, "Cover engine")
      ->check(CLI::IsMember({"dyadic", "menu"}))
      ->capture_default_str();
  est->add_option("--menu-size", est_opts.menu_size, "Diameter menu size for the menu engine")
      ->check(CLI::Range(2, 4096))
      ->capture_default_str();
  bool est_no_interp = false;
  est->add_flag("--no-level-interpolation", est_no_interp,
                "Dyadic engine: use whole levels only");
  est->add_option("--threshold", est_opts.threshold, "Cost threshold")->capture_default_str();
  est->add_option("--s-tolerance", est_opts.s_tolerance, "Bisection tolerance in s")
      ->capture_default_str();
  est->add_option("--seed", est_opts.seed, "Seed (recorded; the estimator is deterministic)")
      ->capture_default_str();
  bool est_raw = false;
  est->add_flag("--raw", est_raw, "Skip the monotone tightening of the columns");
  add_common(est, est_c);

  // frostman
  Common fr_c;
  std::string fr_points;
  double fr_s = 0.0;
  double fr_delta = 0.0;
  double fr_theta = 0.0;
  int fr_samples = 200;
  std::uint64_t fr_seed = 0;
  std::string fr_measure_out;
  auto* fr = app.add_subcommand("frostman", "Build a Frostman-type measure and verify it");
  fr->add_option("--points", fr_points, "Point file, or - for stdin")->required();
  fr->add_option("--s", fr_s, "Exponent s > 0")->required();
  fr->add_option("--delta", fr_delta, "Upper scale delta in (0, 1)")->required();
  fr->add_option("--theta", fr_theta, "Theta in (0, 1]")->required();
  fr->add_option("--samples", fr_samples, "Balls sampled by the check")->capture_default_str();
  fr->add_option("--seed", fr_seed, "Sampling seed")->capture_default_str();
  fr->add_option("--measure-out", fr_measure_out, "Write the measure JSON here");
  add_common(fr, fr_c);

  // gen
  Common gen_c;
  std::string gen_family;
  double gen_p = 1.0;
  double gen_delta = 1e-4;
  std::string gen_spec;
  int gen_level = 6;
  auto* gen = app.add_subcommand("gen", "Write a truncated model set as a point file");
  gen->add_option("--family", gen_family, "fp, flog or carpet-points")
      ->required()
      ->check(CLI::IsMember({"fp", "flog", "carpet-points"}));
  gen->add_option("--p", gen_p, "Exponent p for fp")->capture_default_str();
  gen->add_option("--delta", gen_delta, "Truncation scale for fp and flog")->capture_default_str();
  gen->add_option("--spec", gen_spec, "Carpet JSON file or inline JSON for carpet-points");
  gen->add_option("--level", gen_level, "Word length for carpet-points")->capture_default_str();
  gen->add_option("--out", gen_c.out_path, "Write to this file instead of stdout");

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("dimspect");
  for (const auto& a : args) storage.push_back(a);
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (seq->parsed()) {
      if (!(seq_p > 0.0) || !std::isfinite(seq_p)) throw InvalidArgument("--p must be positive");
      const auto grid = grid_or_default(seq_grid);
      emit(seq_c, out, render(seq_c, sequence_spectrum(seq_p, grid)));
    } else if (ex->parsed()) {
      const auto grid = grid_or_default(ex_grid);
      emit(ex_c, out, render(ex_c, example_curve(ex_which, grid)));
    } else if (car->parsed()) {
      const auto spec = carpet_from_json(load_json_arg(car_spec));
      const auto grid = grid_or_default(car_grid);
      emit(car_c, out, render(car_c, carpet_spectrum(spec, grid, car_assouad)));
    } else if (est->parsed()) {
      const bool default_grid = est_grid.empty();
      const auto grid = grid_or_default(est_grid);
      const auto deltas = parse_delta_list(est_deltas);
      est_opts.engine = est_engine == "menu" ? CoverEngine::menu_1d : CoverEngine::dyadic;
      est_opts.skip_too_deep = default_grid;
      est_opts.monotone_bracket = !est_raw;
      est_opts.level_interpolation = !est_no_interp;
      const auto points = load_points(est_points, in);
      emit(est_c, out, render(est_c, estimate_spectrum(points, grid, deltas, est_opts)));
    } else if (fr->parsed()) {
      if (fr_samples < 1) throw InvalidArgument("--samples must be at least 1");
      if (!(fr_delta > 0.0 && fr_delta < 1.0)) throw InvalidArgument("--delta must lie in (0, 1)");
      if (!(fr_theta > 0.0 && fr_theta <= 1.0)) throw InvalidArgument("--theta must lie in (0, 1]");
      const Theta theta(fr_theta);
      const auto points = load_points(fr_points, in);
      const auto built = build_frostman_measure(points, fr_s, fr_delta, theta);
      // ball diameters from r_lo up to r_lo^theta, which stays below 2 r_hi
      const std::vector<MdpInput> inputs{{built.r_lo, built.measure}};
      const auto report = check_mdp(inputs, fr_s, theta, 1.0, built.constant_c, fr_samples, fr_seed);
      const auto& e = report.entries.front();
      if (!fr_measure_out.empty()) {
        std::ofstream f(fr_measure_out, std::ios::binary);
        if (!f) throw InvalidArgument("cannot open '" + fr_measure_out + "'");
        f << measure_to_json(built.measure).dump(2) << '\n';
      }
      std::ostringstream ss;
      if (fr_c.format == "json") {
        nlohmann::json j = {{"status", report.pass ? "pass" : "fail"},
                            {"atoms", built.measure.size()},
                            {"total", e.total},
                            {"s", fr_s},
                            {"delta", fr_delta},
                            {"theta", fr_theta},
                            {"constant_c", built.constant_c},
                            {"worst_ratio", report.worst_ratio},
                            {"violations", e.violations},
                            {"samples", fr_samples},
                            {"seed", fr_seed},
                            {"weak_certification", e.weak_certification},
                            {"max_cap_ratio", built.cascade.max_cap_ratio()},
                            {"max_attainment_gap", built.cascade.max_attainment_gap()}};
        ss << j.dump(2) << '\n';
      } else {
        ss << "status=" << (report.pass ? "pass" : "fail") << '\n'
           << "atoms=" << built.measure.size() << '\n'
           << "total=" << format_real(e.total) << '\n'
           << "s=" << format_real(fr_s) << '\n'
           << "delta=" << format_real(fr_delta) << '\n'
           << "theta=" << format_real(fr_theta) << '\n'
           << "constant_c=" << format_real(built.constant_c) << '\n'
           << "worst_ratio=" << format_real(report.worst_ratio) << '\n'
           << "violations=" << e.violations << '\n'
           << "samples=" << fr_samples << '\n'
           << "seed=" << fr_seed << '\n'
           << "weak_certification=" << (e.weak_certification ? "true" : "false") << '\n'
           << "max_cap_ratio=" << format_real(built.cascade.max_cap_ratio()) << '\n'
           << "max_attainment_gap=" << format_real(built.cascade.max_attainment_gap()) << '\n';
      }
      emit(fr_c, out, ss.str());
    } else if (gen->parsed()) {
      std::ostringstream ss;
      if (gen_family == "fp") {
        if (!(gen_p > 0.0)) throw InvalidArgument("--p must be positive");
        if (!(gen_delta > 0.0)) throw InvalidArgument("--delta must be positive");
        const auto count = coupled_truncation(gen_p, gen_delta);
        ss << "# {0} U {k^-p}, p=" << format_real(gen_p) << ", k<=" << count << '\n';
        write_points(ss, sequence_points(gen_p, count));
      } else if (gen_family == "flog") {
        if (!(gen_delta > 0.0)) throw InvalidArgument("--delta must be positive");
        const auto count = log_sequence_truncation(gen_delta);
        ss << "# {0} U {1/log k}, 2<=k<=" << count + 1 << '\n';
        write_points(ss, log_sequence_points(count));
      } else {
        if (gen_spec.empty()) throw InvalidArgument("carpet-points needs --spec");
        const auto spec = carpet_from_json(load_json_arg(gen_spec));
        ss << "# carpet points, level " << gen_level << '\n';
        write_points(ss, carpet_points(spec, gen_level));
      }
      emit(gen_c, out, ss.str());
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericRangeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitRange;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvariant;
  }
  return kExitOk;
}

int run_cli(int argc, char** argv, std::istream& in, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, in, out, err);
}

}  // namespace dimspect
