#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ratioci/ratioci.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitMethod = 3;

struct Failure {
  int code;
  std::string message;
};

void check(ratioci_status status) {
  if (status == RATIOCI_OK) return;
  throw Failure{ratioci_status_is_input_error(status) ? kExitInput : kExitMethod,
                std::string(ratioci_status_name(status)) + ": " + ratioci_last_error()};
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitInput, "cannot open input file '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const ratioci_text* text) {
  if (path.empty() || path == "-") {
    std::fwrite(ratioci_text_data(text), 1, ratioci_text_size(text), stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kExitInput, "cannot open output file '" + path + "'"};
  out.write(ratioci_text_data(text), static_cast<std::streamsize>(ratioci_text_size(text)));
  if (!out) throw Failure{kExitInput, "failed to write '" + path + "'"};
}

class Text {
 public:
  Text() = default;
  Text(const Text&) = delete;
  Text& operator=(const Text&) = delete;
  ~Text() { ratioci_text_destroy(ptr_); }
  ratioci_text** out() { return &ptr_; }
  const ratioci_text* get() const { return ptr_; }

 private:
  ratioci_text* ptr_ = nullptr;
};

class Sample {
 public:
  Sample() = default;
  Sample(const Sample&) = delete;
  Sample& operator=(const Sample&) = delete;
  ~Sample() { ratioci_sample_destroy(ptr_); }
  ratioci_sample** out() { return &ptr_; }
  const ratioci_sample* get() const { return ptr_; }

 private:
  ratioci_sample* ptr_ = nullptr;
};

const std::vector<std::string> kClosedForm = {"fieller", "taylor", "index", "trimmed-index",
                                              "zero-variance"};
const std::vector<std::string> kAll = {"fieller",       "taylor",        "index",
                                       "trimmed-index", "zero-variance", "bootstrap-percentile",
                                       "bootstrap-bca", "hwang"};

std::vector<ratioci_method> parse_methods(const std::vector<std::string>& names) {
  std::vector<std::string> expanded;
  for (const auto& n : names) {
    if (n == "all") {
      expanded.insert(expanded.end(), kAll.begin(), kAll.end());
    } else if (n == "closed-form") {
      expanded.insert(expanded.end(), kClosedForm.begin(), kClosedForm.end());
    } else {
      expanded.push_back(n);
    }
  }
  std::vector<ratioci_method> out;
  for (const auto& n : expanded) {
    ratioci_method m;
    if (ratioci_method_from_name(n.c_str(), &m) != RATIOCI_OK) {
      throw Failure{kExitInput, "unknown method '" + n + "'"};
    }
    out.push_back(m);
  }
  return out;
}

const std::map<std::string, ratioci_format> kFormats = {{"csv", RATIOCI_FORMAT_CSV},
                                                        {"json", RATIOCI_FORMAT_JSON},
                                                        {"text", RATIOCI_FORMAT_TEXT},
                                                        {"svg", RATIOCI_FORMAT_SVG}};

ratioci_format format_of(const std::string& name) { return kFormats.at(name); }

const auto kOpenUnit = CLI::Validator(
    [](std::string& s) -> std::string {
      try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos == s.size() && v > 0.0 && v < 1.0) return {};
      } catch (const std::exception&) {
      }
      return "value must lie strictly between 0 and 1, got " + s;
    },
    "(0,1)");

struct Common {
  std::string output;
  double level = 0.95;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-o,--output", c.output, "Output file (default: standard output)");
  cmd->add_option("--level", c.level, "Confidence level")->check(kOpenUnit)->capture_default_str();
  cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Confidence sets for ratios of means of paired measurements"};
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<std::size_t> threads;
  app.add_option("--threads", threads, "Maximum worker threads (default: RATIO_CI_THREADS or all cores)");

  // ci
  Common ci_common;
  std::string ci_input, ci_x = "x", ci_y = "y", ci_format = "csv";
  std::vector<std::string> ci_methods = {"closed-form"};
  std::size_t ci_reps = 2000;
  double ci_trim = 0.25;
  auto* ci = app.add_subcommand("ci", "Confidence sets for mean(y)/mean(x) from paired data");
  ci->add_option("-i,--input", ci_input, "CSV file with columns x,y ('-' for stdin)")->required();
  ci->add_option("--x-column", ci_x, "Denominator column")->capture_default_str();
  ci->add_option("--y-column", ci_y, "Numerator column")->capture_default_str();
  ci->add_option("-m,--methods", ci_methods, "Methods, comma separated, or 'all' / 'closed-form'")
      ->delimiter(',')
      ->capture_default_str();
  ci->add_option("-B,--replications", ci_reps, "Bootstrap replications")
      ->check(CLI::Range(std::size_t{100}, std::size_t{100000000}))
      ->capture_default_str();
  ci->add_option("--trim", ci_trim, "Trimming fraction for trimmed-index")
      ->check(CLI::Range(0.0, 0.49))
      ->capture_default_str();
  ci->add_option("-f,--format", ci_format, "csv, json or text")
      ->check(CLI::IsMember({"csv", "json", "text"}))
      ->capture_default_str();
  add_common(ci, ci_common);

  // simulate
  Common sim_common;
  ratioci_grid_options grid;
  ratioci_grid_options_init(&grid);
  std::string sim_format = "csv";
  std::vector<std::string> sim_methods = {"closed-form"};
  auto* sim = app.add_subcommand("simulate", "Monte Carlo coverage over a log-spaced CV grid");
  sim->add_option("--n", grid.n, "Sample size")->check(CLI::PositiveNumber)->capture_default_str();
  sim->add_option("--runs", grid.runs, "Runs per cell (>= 100)")
      ->check(CLI::Range(std::size_t{100}, std::size_t{100000000}))
      ->capture_default_str();
  sim->add_option("--corr", grid.corr, "Correlation of x and y")->check(CLI::Range(-1.0, 1.0))->capture_default_str();
  sim->add_option("--cv-x-min", grid.cv_x_min)->check(CLI::PositiveNumber)->capture_default_str();
  sim->add_option("--cv-x-max", grid.cv_x_max)->check(CLI::PositiveNumber)->capture_default_str();
  sim->add_option("--cv-x-steps", grid.cv_x_steps)->check(CLI::PositiveNumber)->capture_default_str();
  sim->add_option("--cv-y-min", grid.cv_y_min)->check(CLI::PositiveNumber)->capture_default_str();
  sim->add_option("--cv-y-max", grid.cv_y_max)->check(CLI::PositiveNumber)->capture_default_str();
  sim->add_option("--cv-y-steps", grid.cv_y_steps)->check(CLI::PositiveNumber)->capture_default_str();
  sim->add_option("-m,--methods", sim_methods, "Methods, comma separated, or 'all' / 'closed-form'")
      ->delimiter(',')
      ->capture_default_str();
  sim->add_option("-B,--replications", grid.replications, "Bootstrap replications")
      ->check(CLI::Range(std::size_t{100}, std::size_t{100000000}))
      ->capture_default_str();
  sim->add_option("--trim", grid.trim)->check(CLI::Range(0.0, 0.49))->capture_default_str();
  sim->add_option("-f,--format", sim_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  add_common(sim, sim_common);

  // errorbars
  Common eb_common;
  ratioci_errorbar_options eb;
  ratioci_errorbar_options_init(&eb);
  std::string eb_point, eb_format = "csv";
  auto* ebc = app.add_subcommand("errorbars", "Per-run Fieller and index intervals ordered by estimate");
  auto* point_opt = ebc->add_option("--point", eb_point, "Named cell A, B, C or D");
  ebc->add_option("--cv-x", eb.cv_x)->check(CLI::PositiveNumber)->excludes(point_opt)->capture_default_str();
  ebc->add_option("--cv-y", eb.cv_y)->check(CLI::PositiveNumber)->excludes(point_opt)->capture_default_str();
  ebc->add_option("--n", eb.n)->check(CLI::Range(std::size_t{2}, std::size_t{100000000}))->capture_default_str();
  ebc->add_option("--runs", eb.runs)->check(CLI::PositiveNumber)->capture_default_str();
  ebc->add_option("--corr", eb.corr)->check(CLI::Range(-1.0, 1.0))->capture_default_str();
  ebc->add_option("-f,--format", eb_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  add_common(ebc, eb_common);

  // ellipse
  Common el_common;
  std::string el_input, el_stats, el_format = "svg";
  std::size_t el_points = 200;
  auto* el = app.add_subcommand("ellipse", "Confidence ellipse of the means and its tangent wedge");
  auto* el_in = el->add_option("-i,--input", el_input, "CSV file with columns x,y");
  auto* el_st = el->add_option("--stats", el_stats, "One-row CSV: n,mean_x,mean_y,sd_x,sd_y[,corr]");
  el_in->excludes(el_st);
  el->add_option("--points", el_points, "Boundary points")
      ->check(CLI::Range(std::size_t{4}, std::size_t{1000000}))
      ->capture_default_str();
  el->add_option("-f,--format", el_format, "svg, csv or json")
      ->check(CLI::IsMember({"svg", "csv", "json"}))
      ->capture_default_str();
  add_common(el, el_common);

  // regress
  Common rg_common;
  std::string rg_input, rg_model = "ols", rg_response = "y", rg_group = "group", rg_format = "text";
  std::vector<std::string> rg_regressors = {"x"};
  bool rg_no_intercept = false;
  auto* rg = app.add_subcommand("regress", "Regression analyses of ratio data");
  rg->add_option("-i,--input", rg_input, "CSV file with named columns")->required();
  rg->add_option("--model", rg_model, "ols, deflated, allometric or ancova")
      ->check(CLI::IsMember({"ols", "deflated", "allometric", "ancova"}))
      ->capture_default_str();
  rg->add_option("--response", rg_response)->capture_default_str();
  rg->add_option("--regressors", rg_regressors)->delimiter(',')->capture_default_str();
  rg->add_flag("--no-intercept", rg_no_intercept, "Fit without intercept (ols)");
  rg->add_option("--group", rg_group, "Grouping column (ancova)")->capture_default_str();
  rg->add_option("-f,--format", rg_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  add_common(rg, rg_common);

  // demo
  Common dm_common;
  std::string dm_name, dm_format = "text";
  auto* dm = app.add_subcommand("demo", "Worked examples: stork, pang");
  dm->add_option("name", dm_name, "stork or pang")->required()->check(CLI::IsMember({"stork", "pang"}));
  dm->add_option("-f,--format", dm_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  add_common(dm, dm_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (threads) {
      ratioci_set_max_threads(*threads);
    } else if (const char* env = std::getenv("RATIO_CI_THREADS"); env && *env) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (*end != '\0') throw Failure{kExitInput, "RATIO_CI_THREADS must be a non-negative integer"};
      ratioci_set_max_threads(static_cast<std::size_t>(v));
    }

    Text out;
    std::string output;
    if (ci->parsed()) {
      const std::string data = read_input(ci_input);
      Sample sample;
      check(ratioci_sample_from_csv(data.data(), data.size(), ci_x.c_str(), ci_y.c_str(), sample.out()));
      ratioci_ci_options o;
      ratioci_ci_options_init(&o);
      o.level = ci_common.level;
      o.replications = ci_reps;
      o.seed = ci_common.seed;
      o.trim = ci_trim;
      const auto methods = parse_methods(ci_methods);
      check(ratioci_ci_report(sample.get(), methods.data(), methods.size(), &o, format_of(ci_format), out.out()));
      output = ci_common.output;
    } else if (sim->parsed()) {
      grid.level = sim_common.level;
      grid.seed = sim_common.seed;
      const auto methods = parse_methods(sim_methods);
      check(ratioci_simulate_grid(&grid, methods.data(), methods.size(), format_of(sim_format), out.out()));
      output = sim_common.output;
    } else if (ebc->parsed()) {
      if (!eb_point.empty()) check(ratioci_reference_point(eb_point.c_str(), &eb.cv_x, &eb.cv_y));
      eb.level = eb_common.level;
      eb.seed = eb_common.seed;
      check(ratioci_errorbars(&eb, format_of(eb_format), out.out()));
      output = eb_common.output;
    } else if (el->parsed()) {
      ratioci_summary summary{};
      if (!el_stats.empty()) {
        const std::string data = read_input(el_stats);
        check(ratioci_summary_from_csv(data.data(), data.size(), &summary));
      } else if (!el_input.empty()) {
        const std::string data = read_input(el_input);
        Sample sample;
        check(ratioci_sample_from_csv(data.data(), data.size(), "x", "y", sample.out()));
        check(ratioci_summarize(sample.get(), &summary));
      } else {
        throw Failure{kExitInput, "ellipse needs --input or --stats"};
      }
      check(ratioci_ellipse(&summary, el_common.level, el_points, format_of(el_format), out.out()));
      output = el_common.output;
    } else if (rg->parsed()) {
      const std::string data = read_input(rg_input);
      std::vector<const char*> names;
      for (const auto& r : rg_regressors) names.push_back(r.c_str());
      ratioci_regress_options o;
      ratioci_regress_options_init(&o);
      const std::map<std::string, ratioci_model> models = {{"ols", RATIOCI_MODEL_OLS},
                                                           {"deflated", RATIOCI_MODEL_DEFLATED},
                                                           {"allometric", RATIOCI_MODEL_ALLOMETRIC},
                                                           {"ancova", RATIOCI_MODEL_ANCOVA}};
      o.model = models.at(rg_model);
      o.response = rg_response.c_str();
      o.regressors = names.data();
      o.regressor_count = names.size();
      o.intercept = rg_no_intercept ? 0 : 1;
      o.group = rg_group.c_str();
      o.level = rg_common.level;
      check(ratioci_regress_csv(data.data(), data.size(), &o, format_of(rg_format), out.out()));
      output = rg_common.output;
    } else if (dm->parsed()) {
      check(ratioci_demo(dm_name.c_str(), format_of(dm_format), out.out()));
      output = dm_common.output;
    }
    write_output(output, out.get());
    return kExitOk;
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  }
}
