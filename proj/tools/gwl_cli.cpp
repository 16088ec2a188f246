// gwl: command-line interface to the GWL lifetime-distribution library.
//
// Verbs:
//   fit       estimate parameters on a dataset by any of the eight methods
//   compare   score GWL against GG, GW, GEP, EW on one dataset
//   simulate  run the Monte Carlo estimator study and emit the long CSV
//   sample    draw random variates
//   ttt       scaled TTT transform of a dataset
//   props     distribution properties at given parameters
//
// Exit codes: 0 success, 1 input error, 2 fit did not converge.

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gwl/gwl.hpp"

using nlohmann::json;

namespace {

struct CliError {
  int code;
  std::string message;
};

std::string fmt(double v, const char* spec = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string fmt12(double v) { return fmt(v, "%.12g"); }

// ------------------------------------------------------------ data loading

std::vector<double> parse_positive_reals(std::istream& in, const std::string& origin) {
  std::vector<double> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    for (char& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str() || *end != '\0')
        throw CliError{1, origin + ":" + std::to_string(line_no) +
                              ": cannot parse '" + tok + "' as a number"};
      if (!(v > 0.0) || !std::isfinite(v))
        throw CliError{1, origin + ":" + std::to_string(line_no) +
                              ": observations must be positive, got '" + tok + "'"};
      out.push_back(v);
    }
  }
  if (out.empty()) throw CliError{1, origin + ": no observations found"};
  return out;
}

std::vector<double> load_data(const std::string& source, bool corrected_aarset) {
  if (source.empty())
    throw CliError{1, "no dataset given; pass --data PATH, --data aarset, or --data cantareira"};
  if (source == "aarset") return gwl::aarset_data(corrected_aarset);
  if (source == "cantareira") return gwl::cantareira_data();
  std::ifstream f(source);
  if (!f) throw CliError{1, "cannot open data file '" + source + "'"};
  return parse_positive_reals(f, source);
}

enum class Format { table, csv, js };

Format parse_format(const std::string& s) {
  if (s == "table") return Format::table;
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::js;
  throw CliError{1, "unknown format '" + s + "' (expected table, csv, or json)"};
}

// ------------------------------------------------------------------- verbs

int cmd_fit(const std::string& data_src, bool corrected, const std::string& method_name,
            Format format) {
  const auto method = gwl::parse_method(method_name);
  if (!method)
    throw CliError{1, "unknown method '" + method_name +
                          "' (expected mle, me, olse, wlse, mps, cme, ade, or rade)"};
  gwl::LifetimeSample sample(load_data(data_src, corrected));
  const gwl::FitResult fit = gwl::fit(*method, sample);
  const auto ic = gwl::information_criteria(fit.loglik, 3, sample.size());
  const auto ks =
      gwl::ks_test(sample.sorted(), [&](double t) { return gwl::cdf(fit.estimate, t); });
  std::array<gwl::WaldInterval, 3> ci{};
  const bool have_ci = fit.covariance.has_value();
  if (have_ci) ci = gwl::wald_ci(fit, 0.95);

  static const char* names[3] = {"phi", "lambda", "alpha"};
  const std::array<double, 3> est{fit.estimate.phi, fit.estimate.lambda, fit.estimate.alpha};

  if (format == Format::table) {
    std::printf("GWL fit (%s) on %zu observations\n", gwl::to_string(*method), sample.size());
    for (int i = 0; i < 3; ++i) {
      std::printf("  %-6s = %-14s", names[i], fmt(est[i]).c_str());
      if (have_ci)
        std::printf(" se %-12s 95%% CI [%s, %s]", fmt(fit.std_errors[i], "%.6g").c_str(),
                    fmt(ci[i].lower, "%.6g").c_str(), fmt(ci[i].upper, "%.6g").c_str());
      std::printf("\n");
    }
    std::printf("  loglik = %s\n", fmt(fit.loglik).c_str());
    std::printf("  AIC    = %-14s AICc = %s\n", fmt(ic.aic).c_str(), fmt(ic.aicc).c_str());
    std::printf("  KS     = %-14s p = %s\n", fmt(ks.statistic).c_str(),
                fmt(ks.p_value).c_str());
    std::printf("  converged: %s\n", fit.converged ? "yes" : "no");
    if (!fit.notes.empty()) std::printf("  note: %s\n", fit.notes.c_str());
  } else if (format == Format::csv) {
    std::printf("quantity,value\n");
    std::printf("method,%s\n", gwl::to_string(*method));
    std::printf("n,%zu\n", sample.size());
    for (int i = 0; i < 3; ++i) {
      std::printf("%s,%s\n", names[i], fmt12(est[i]).c_str());
      if (have_ci) {
        std::printf("%s_se,%s\n", names[i], fmt12(fit.std_errors[i]).c_str());
        std::printf("%s_ci_low,%s\n", names[i], fmt12(ci[i].lower).c_str());
        std::printf("%s_ci_high,%s\n", names[i], fmt12(ci[i].upper).c_str());
      }
    }
    std::printf("loglik,%s\n", fmt12(fit.loglik).c_str());
    std::printf("aic,%s\n", fmt12(ic.aic).c_str());
    std::printf("aicc,%s\n", fmt12(ic.aicc).c_str());
    std::printf("ks_stat,%s\n", fmt12(ks.statistic).c_str());
    std::printf("ks_p,%s\n", fmt12(ks.p_value).c_str());
    std::printf("converged,%d\n", fit.converged ? 1 : 0);
  } else {
    json j;
    j["method"] = gwl::to_string(*method);
    j["n"] = sample.size();
    j["estimate"] = {{"phi", est[0]}, {"lambda", est[1]}, {"alpha", est[2]}};
    if (have_ci) {
      j["std_errors"] = {{"phi", fit.std_errors[0]},
                         {"lambda", fit.std_errors[1]},
                         {"alpha", fit.std_errors[2]}};
      j["wald_ci_95"] = {{"phi", {ci[0].lower, ci[0].upper}},
                         {"lambda", {ci[1].lower, ci[1].upper}},
                         {"alpha", {ci[2].lower, ci[2].upper}}};
    }
    j["loglik"] = fit.loglik;
    j["aic"] = ic.aic;
    j["aicc"] = ic.aicc;
    j["ks"] = {{"statistic", ks.statistic}, {"p_value", ks.p_value}};
    j["converged"] = fit.converged;
    if (!fit.notes.empty()) j["notes"] = fit.notes;
    std::printf("%s\n", j.dump(2).c_str());
  }
  return fit.converged ? 0 : 2;
}

int cmd_compare(const std::string& data_src, bool corrected, Format format) {
  gwl::LifetimeSample sample(load_data(data_src, corrected));
  const gwl::ModelComparison cmp = gwl::compare_models(sample);

  if (format == Format::table) {
    std::printf("model comparison on %zu observations (GWL fit by %s)\n", sample.size(),
                cmp.gwl_method_used.c_str());
    std::printf("%-5s %12s %12s %10s %10s\n", "model", "aic", "aicc", "ks_stat", "ks_p");
    for (const auto& row : cmp.rows) {
      std::printf("%-5s %12s %12s %10s %10s", row.model.c_str(), fmt(row.aic, "%.4f").c_str(),
                  fmt(row.aicc, "%.4f").c_str(), fmt(row.ks_statistic, "%.5f").c_str(),
                  fmt(row.ks_p_value, "%.5f").c_str());
      if (!row.notes.empty()) std::printf("  (%s)", row.notes.c_str());
      std::printf("\n");
    }
  } else if (format == Format::csv) {
    std::printf("# gwl_method=%s\n", cmp.gwl_method_used.c_str());
    std::printf("model,aic,aicc,ks_stat,ks_p\n");
    for (const auto& row : cmp.rows)
      std::printf("%s,%s,%s,%s,%s\n", row.model.c_str(), fmt12(row.aic).c_str(),
                  fmt12(row.aicc).c_str(), fmt12(row.ks_statistic).c_str(),
                  fmt12(row.ks_p_value).c_str());
  } else {
    json j;
    j["gwl_method_used"] = cmp.gwl_method_used;
    j["rows"] = json::array();
    for (const auto& row : cmp.rows) {
      json r;
      r["model"] = row.model;
      json params;
      for (const auto& [k, v] : row.params) params[k] = v;
      r["params"] = params;
      r["loglik"] = row.loglik;
      r["aic"] = row.aic;
      r["aicc"] = row.aicc;
      r["ks_stat"] = row.ks_statistic;
      r["ks_p"] = row.ks_p_value;
      r["converged"] = row.converged;
      if (!row.notes.empty()) r["notes"] = row.notes;
      j["rows"].push_back(std::move(r));
    }
    std::printf("%s\n", j.dump(2).c_str());
  }
  return 0;
}

// key=value configuration for the simulation study
gwl::StudyConfig parse_study_config(std::istream& in, const std::string& origin) {
  gwl::StudyConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::string trimmed;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos)
      throw CliError{1, origin + ":" + std::to_string(line_no) +
                            ": expected key=value, got '" + trimmed + "'"};
    const std::string key = trimmed.substr(0, eq);
    const std::string val = trimmed.substr(eq + 1);
    auto as_double = [&](const std::string& v) {
      char* end = nullptr;
      const double d = std::strtod(v.c_str(), &end);
      if (end == v.c_str() || *end != '\0')
        throw CliError{1, origin + ": field '" + key + "' has non-numeric value '" + v + "'"};
      return d;
    };
    auto split = [](const std::string& v) {
      std::vector<std::string> parts;
      std::string cur;
      for (char c : v) {
        if (c == ',') {
          parts.push_back(cur);
          cur.clear();
        } else
          cur += c;
      }
      parts.push_back(cur);
      return parts;
    };
    if (key == "truth.phi")
      cfg.truth.phi = as_double(val);
    else if (key == "truth.lambda")
      cfg.truth.lambda = as_double(val);
    else if (key == "truth.alpha")
      cfg.truth.alpha = as_double(val);
    else if (key == "n_grid") {
      cfg.n_grid.clear();
      for (const auto& p : split(val)) {
        const double d = as_double(p);
        if (d < 2 || d != static_cast<std::size_t>(d))
          throw CliError{1, origin + ": field 'n_grid' entry '" + p +
                                "' is not an integer sample size"};
        cfg.n_grid.push_back(static_cast<std::size_t>(d));
      }
    } else if (key == "replicates")
      cfg.replicates = static_cast<int>(as_double(val));
    else if (key == "master_seed")
      cfg.master_seed = static_cast<std::uint64_t>(as_double(val));
    else if (key == "methods") {
      cfg.methods.clear();
      for (const auto& p : split(val)) {
        const auto m = gwl::parse_method(p);
        if (!m)
          throw CliError{1, origin + ": field 'methods' has unknown method '" + p + "'"};
        cfg.methods.push_back(*m);
      }
    } else if (key == "start_at_truth")
      cfg.start_at_truth = as_double(val) != 0.0;
    else
      throw CliError{1, origin + ": unknown field '" + key + "'"};
  }
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw CliError{1, origin + ": " + e.what()};
  }
  return cfg;
}

int cmd_simulate(const std::string& preset, const std::string& config_path, int replicates,
                 long long seed, bool have_seed, bool progress) {
  gwl::StudyConfig cfg;
  if (!config_path.empty()) {
    std::ifstream f(config_path);
    if (!f) throw CliError{1, "cannot open config file '" + config_path + "'"};
    cfg = parse_study_config(f, config_path);
  } else if (preset == "paper-a" || preset.empty()) {
    cfg.truth = {2.0, 0.5, 0.1};
  } else if (preset == "paper-b") {
    cfg.truth = {0.5, 0.7, 1.5};
  } else {
    throw CliError{1, "unknown preset '" + preset + "' (expected paper-a or paper-b)"};
  }
  if (replicates > 0) cfg.replicates = replicates;
  if (have_seed) cfg.master_seed = static_cast<std::uint64_t>(seed);

  std::function<void(std::size_t, int, int)> cb;
  if (progress)
    cb = [](std::size_t n, int done, int total) {
      if (done % 50 == 0 || done == total)
        std::fprintf(stderr, "n=%zu %d/%d\n", n, done, total);
    };
  const gwl::StudyReport report = gwl::run_study(cfg, cb);
  std::ostringstream out;
  gwl::export_report_csv(report, out);
  std::fputs(out.str().c_str(), stdout);
  return 0;
}

int cmd_sample(double phi, double lambda, double alpha, int count, long long seed) {
  if (count < 1) throw CliError{1, "sample count must be positive"};
  gwl::GwlParams p{phi, lambda, alpha};
  try {
    p.validate();
  } catch (const std::exception& e) {
    throw CliError{1, e.what()};
  }
  const auto draws = gwl::sample(p, static_cast<std::size_t>(count),
                                 static_cast<std::uint64_t>(seed));
  for (double v : draws) std::printf("%.17g\n", v);
  return 0;
}

int cmd_ttt(const std::string& data_src, bool corrected, Format format) {
  const auto data = load_data(data_src, corrected);
  const auto curve = gwl::ttt_transform(data);
  if (format == Format::js) {
    json j = json::array();
    for (const auto& [x, y] : curve) j.push_back({x, y});
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    std::printf(format == Format::csv ? "r_over_n,g\n" : "  r/n        G(r/n)\n");
    for (const auto& [x, y] : curve) {
      if (format == Format::csv)
        std::printf("%s,%s\n", fmt12(x).c_str(), fmt12(y).c_str());
      else
        std::printf("  %-10s %s\n", fmt(x, "%.6g").c_str(), fmt(y, "%.6g").c_str());
    }
  }
  return 0;
}

int cmd_props(double phi, double lambda, double alpha, Format format) {
  gwl::GwlParams p{phi, lambda, alpha};
  try {
    p.validate();
  } catch (const std::exception& e) {
    throw CliError{1, e.what()};
  }
  const auto shape = gwl::classify_hazard_shape(p);
  std::vector<std::pair<std::string, double>> vals;
  vals.emplace_back("mean", gwl::mean(p));
  vals.emplace_back("variance", gwl::variance(p));
  vals.emplace_back("skewness", gwl::skewness(p));
  vals.emplace_back("excess_kurtosis", gwl::excess_kurtosis(p));
  vals.emplace_back("median", gwl::median(p));
  vals.emplace_back("mean_log", gwl::mean_log(p));
  vals.emplace_back("shannon_entropy", gwl::shannon_entropy(p));
  vals.emplace_back("mixture_weight", gwl::mixture_weight(p));
  vals.emplace_back("hazard_at_zero", gwl::hazard_limit_at_zero(p));
  vals.emplace_back("hazard_at_inf", gwl::hazard_limit_at_inf(p));
  vals.emplace_back("mrl_at_zero", gwl::mrl(p, 0.0));

  if (format == Format::table) {
    std::printf("GWL(phi=%s, lambda=%s, alpha=%s)\n", fmt(phi, "%.6g").c_str(),
                fmt(lambda, "%.6g").c_str(), fmt(alpha, "%.6g").c_str());
    for (const auto& [k, v] : vals) std::printf("  %-16s = %s\n", k.c_str(), fmt(v).c_str());
    std::printf("  %-16s = %s (sign pattern '%s')\n", "hazard_shape",
                gwl::to_string(shape.shape), shape.sign_pattern.c_str());
  } else if (format == Format::csv) {
    std::printf("quantity,value\n");
    std::printf("phi,%s\nlambda,%s\nalpha,%s\n", fmt12(phi).c_str(), fmt12(lambda).c_str(),
                fmt12(alpha).c_str());
    for (const auto& [k, v] : vals) std::printf("%s,%s\n", k.c_str(), fmt12(v).c_str());
    std::printf("hazard_shape,%s\n", gwl::to_string(shape.shape));
  } else {
    json j;
    j["params"] = {{"phi", phi}, {"lambda", lambda}, {"alpha", alpha}};
    for (const auto& [k, v] : vals) j[k] = v;
    j["hazard_shape"] = gwl::to_string(shape.shape);
    j["hazard_sign_pattern"] = shape.sign_pattern;
    std::printf("%s\n", j.dump(2).c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GWL lifetime distribution toolkit"};
  app.require_subcommand(1);

  std::string data_src, format_name = "table", method_name = "mle";
  std::string preset, config_path;
  bool corrected = false, progress = false;
  long long seed = 1;
  bool have_seed = false;
  int count = 10, replicates = -1;
  double phi = 1.0, lambda = 1.0, alpha = 1.0;

  app.add_option("--format", format_name, "output format: table, csv, json")
      ->capture_default_str();

  auto add_data_opts = [&](CLI::App* sub) {
    sub->add_option("--data", data_src, "path to a data file, or 'aarset'/'cantareira'");
    sub->add_flag("--corrected-aarset", corrected,
                  "use the corrected Aarset dataset (72,75,79 run instead of 72,15,79)");
  };
  auto add_param_opts = [&](CLI::App* sub) {
    sub->add_option("--phi", phi, "shape parameter phi > 0")->capture_default_str();
    sub->add_option("--lambda", lambda, "rate parameter lambda > 0")->capture_default_str();
    sub->add_option("--alpha", alpha, "power parameter alpha > 0")->capture_default_str();
  };

  CLI::App* fit_cmd = app.add_subcommand("fit", "fit the GWL model to a dataset");
  add_data_opts(fit_cmd);
  fit_cmd->add_option("--method", method_name,
                      "mle, me, olse, wlse, mps, cme, ade, or rade")
      ->capture_default_str();

  CLI::App* compare_cmd = app.add_subcommand("compare", "compare GWL with GG, GW, GEP, EW");
  add_data_opts(compare_cmd);

  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "run the Monte Carlo estimator study");
  simulate_cmd->add_option("--preset", preset, "paper-a (default) or paper-b");
  simulate_cmd->add_option("--config", config_path, "key=value study configuration file");
  simulate_cmd->add_option("--replicates", replicates, "override replicate count");
  simulate_cmd->add_flag("--progress", progress, "report progress on stderr");

  CLI::App* sample_cmd = app.add_subcommand("sample", "draw random variates");
  add_param_opts(sample_cmd);
  sample_cmd->add_option("-n,--count", count, "number of draws")->capture_default_str();

  CLI::App* ttt_cmd = app.add_subcommand("ttt", "scaled TTT transform of a dataset");
  add_data_opts(ttt_cmd);

  CLI::App* props_cmd = app.add_subcommand("props", "distribution properties");
  add_param_opts(props_cmd);

  auto* seed_opt = app.add_option("--seed", seed, "random seed");

  // global options (--format, --seed) may follow the subcommand name
  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion")
      return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  have_seed = seed_opt->count() > 0;

  try {
    const Format format = parse_format(format_name);
    if (fit_cmd->parsed()) return cmd_fit(data_src, corrected, method_name, format);
    if (compare_cmd->parsed()) return cmd_compare(data_src, corrected, format);
    if (simulate_cmd->parsed())
      return cmd_simulate(preset, config_path, replicates, seed, have_seed, progress);
    if (sample_cmd->parsed()) return cmd_sample(phi, lambda, alpha, count, seed);
    if (ttt_cmd->parsed()) return cmd_ttt(data_src, corrected, format);
    if (props_cmd->parsed()) return cmd_props(phi, lambda, alpha, format);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
