#pragma once

// Structured output for estimates, spectra, priors and Monte Carlo tables.
// JSON field names are stable and documented in the README.

#include <fmt/format.h>

#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hurst/error.hpp"
#include "hurst/harness.hpp"
#include "hurst/posterior.hpp"
#include "hurst/regression.hpp"

namespace hurst {

enum class OutputFormat { table, json, csv };

inline OutputFormat parse_output_format(const std::string& name) {
  if (name == "table") return OutputFormat::table;
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  fail(ErrorKind::invalid_argument, "unknown format '" + name + "' (table, json, csv)");
}

inline Method parse_method(const std::string& name) {
  if (name == "bayes-map") return Method::bayes_map;
  if (name == "regression") return Method::regression;
  fail(ErrorKind::parse_error, "unknown method '" + name + "'");
}

struct EstimateReport {
  std::string source;
  std::size_t n_input = 0;
  std::size_t n_used = 0;
  int J = 0;
  std::string wavelet;
  int depth = 0;
  int j1 = 0;
  int j2 = 0;
  std::optional<BetaPrior> prior;
  std::vector<EstimateResult> estimates;
};

inline nlohmann::json prior_to_json(const BetaPrior& p) {
  return {{"alpha", p.alpha()}, {"beta", p.beta()}, {"mean", p.mean()}, {"ess", p.ess()}};
}

inline nlohmann::json to_json(const EstimateResult& r) {
  nlohmann::json j = {
      {"method", to_string(r.method)},
      {"h_hat", r.h_hat.value()},
      {"sigma2_hat", r.sigma2_hat},
      {"log_posterior_at_mode", nullptr},
      {"levels", {r.levels_used.first, r.levels_used.second}},
      {"root_brackets", r.diagnostics.root_brackets},
      {"boundary_hit", r.diagnostics.boundary_hit},
  };
  if (r.log_posterior_at_mode) j["log_posterior_at_mode"] = *r.log_posterior_at_mode;
  return j;
}

inline nlohmann::json to_json(const EstimateReport& report) {
  nlohmann::json j = {
      {"source", report.source},
      {"n_input", report.n_input},
      {"n_used", report.n_used},
      {"J", report.J},
      {"wavelet", report.wavelet},
      {"depth", report.depth},
      {"levels", {report.j1, report.j2}},
      {"prior", nullptr},
      {"estimates", nlohmann::json::array()},
  };
  if (report.prior) j["prior"] = prior_to_json(*report.prior);
  for (const auto& r : report.estimates) j["estimates"].push_back(to_json(r));
  return j;
}

inline EstimateReport estimate_report_from_json(const nlohmann::json& j) {
  try {
    EstimateReport report;
    report.source = j.at("source").get<std::string>();
    report.n_input = j.at("n_input").get<std::size_t>();
    report.n_used = j.at("n_used").get<std::size_t>();
    report.J = j.at("J").get<int>();
    report.wavelet = j.at("wavelet").get<std::string>();
    report.depth = j.at("depth").get<int>();
    report.j1 = j.at("levels").at(0).get<int>();
    report.j2 = j.at("levels").at(1).get<int>();
    if (!j.at("prior").is_null()) {
      report.prior = BetaPrior(j["prior"].at("alpha").get<double>(),
                               j["prior"].at("beta").get<double>());
    }
    for (const auto& e : j.at("estimates")) {
      EstimateResult r;
      r.method = parse_method(e.at("method").get<std::string>());
      r.h_hat = Hurst(e.at("h_hat").get<double>());
      r.sigma2_hat = e.at("sigma2_hat").get<double>();
      if (!e.at("log_posterior_at_mode").is_null()) {
        r.log_posterior_at_mode = e["log_posterior_at_mode"].get<double>();
      }
      r.levels_used = {e.at("levels").at(0).get<int>(), e.at("levels").at(1).get<int>()};
      r.diagnostics.root_brackets = e.at("root_brackets").get<int>();
      r.diagnostics.boundary_hit = e.at("boundary_hit").get<bool>();
      report.estimates.push_back(r);
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse_error, std::string("malformed estimate report: ") + e.what());
  }
}

inline void write_report(std::ostream& out, const EstimateReport& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::json:
      out << to_json(report).dump(2) << '\n';
      return;
    case OutputFormat::csv:
      out << "method,h_hat,sigma2_hat,log_posterior_at_mode,j1,j2,alpha,beta,root_brackets,"
             "boundary_hit\n";
      for (const auto& r : report.estimates) {
        out << fmt::format("{},{},{},{},{},{},{},{},{},{}\n", to_string(r.method),
                           r.h_hat.value(), r.sigma2_hat,
                           r.log_posterior_at_mode ? fmt::format("{}", *r.log_posterior_at_mode)
                                                   : std::string(),
                           r.levels_used.first, r.levels_used.second,
                           report.prior && r.method == Method::bayes_map
                               ? fmt::format("{}", report.prior->alpha())
                               : std::string(),
                           report.prior && r.method == Method::bayes_map
                               ? fmt::format("{}", report.prior->beta())
                               : std::string(),
                           r.diagnostics.root_brackets, r.diagnostics.boundary_hit ? 1 : 0);
      }
      return;
    case OutputFormat::table:
      out << fmt::format("source      {}\n", report.source);
      out << fmt::format("samples     {} used of {} (J = {})\n", report.n_used, report.n_input,
                         report.J);
      out << fmt::format("transform   {} NDWT, depth {}, levels {}:{}\n", report.wavelet,
                         report.depth, report.j1, report.j2);
      if (report.prior) {
        out << fmt::format("prior       beta(alpha = {:.6g}, beta = {:.6g}), mean {:.6g}, ess {:.6g}\n",
                           report.prior->alpha(), report.prior->beta(), report.prior->mean(),
                           report.prior->ess());
      }
      out << fmt::format("\n{:<12}{:>12}{:>16}{:>18}{:>10}{:>10}\n", "method", "h_hat",
                         "sigma2_hat", "log_post_mode", "brackets", "boundary");
      for (const auto& r : report.estimates) {
        out << fmt::format("{:<12}{:>12.6f}{:>16.6g}{:>18}{:>10}{:>10}\n", to_string(r.method),
                           r.h_hat.value(), r.sigma2_hat,
                           r.log_posterior_at_mode ? fmt::format("{:.8g}", *r.log_posterior_at_mode)
                                                   : std::string("-"),
                           r.diagnostics.root_brackets, r.diagnostics.boundary_hit ? "yes" : "no");
      }
      return;
  }
}

inline void write_spectrum(std::ostream& out, const SpectrumFit& fit, int m, OutputFormat format) {
  const double h = -(fit.slope + m) / 2.0;
  switch (format) {
    case OutputFormat::json: {
      nlohmann::json j = {{"slope", fit.slope},
                          {"intercept", fit.intercept},
                          {"h_from_slope", h},
                          {"points", nlohmann::json::array()}};
      for (const auto& [lvl, v] : fit.points) {
        j["points"].push_back(
            {{"level", lvl}, {"log2_energy", v}, {"fitted", fit.intercept + fit.slope * lvl}});
      }
      out << j.dump(2) << '\n';
      return;
    }
    case OutputFormat::csv:
      out << "level,log2_energy,fitted\n";
      for (const auto& [lvl, v] : fit.points) {
        out << fmt::format("{},{},{}\n", lvl, v, fit.intercept + fit.slope * lvl);
      }
      return;
    case OutputFormat::table:
      out << fmt::format("# slope {:.8g}  intercept {:.8g}  H = -(slope + {})/2 = {:.6f}\n",
                         fit.slope, fit.intercept, m, h);
      out << fmt::format("{:>6}{:>16}{:>16}\n", "level", "log2_energy", "fitted");
      for (const auto& [lvl, v] : fit.points) {
        out << fmt::format("{:>6}{:>16.8f}{:>16.8f}\n", lvl, v, fit.intercept + fit.slope * lvl);
      }
      return;
  }
}

inline void write_prior(std::ostream& out, const BetaPrior& prior, OutputFormat format) {
  switch (format) {
    case OutputFormat::json:
      out << prior_to_json(prior).dump(2) << '\n';
      return;
    case OutputFormat::csv:
      out << "alpha,beta,mean,ess\n"
          << fmt::format("{},{},{},{}\n", prior.alpha(), prior.beta(), prior.mean(), prior.ess());
      return;
    case OutputFormat::table:
      out << fmt::format("alpha  {:.6g}\nbeta   {:.6g}\nmean   {:.6g}\ness    {:.6g}\n",
                         prior.alpha(), prior.beta(), prior.mean(), prior.ess());
      return;
  }
}

inline std::string cell_label(const ReportCell& cell) {
  if (cell.method == Method::regression) return "regression";
  return fmt::format("bayes(mu={:.4g})", cell.prior->mean());
}

inline nlohmann::json to_json(const MonteCarloReport& report, bool include_raw) {
  const auto& c = report.config;
  nlohmann::json j = {
      {"config",
       {{"replicates", c.replicates},
        {"n", c.n},
        {"hurst", c.hurst.value()},
        {"sigma", c.sigma},
        {"wavelet", c.wavelet},
        {"depth", c.depth},
        {"levels", {c.j1, c.j2}},
        {"master_seed", c.master_seed}}},
      {"cells", nlohmann::json::array()},
  };
  for (const auto& cell : report.cells) {
    nlohmann::json jc = {
        {"method", to_string(cell.method)},
        {"prior", cell.prior ? prior_to_json(*cell.prior) : nlohmann::json(nullptr)},
        {"mean", cell.summary.mean},
        {"variance", cell.summary.variance},
        {"mse", cell.summary.mse},
        {"squared_bias", cell.summary.squared_bias},
    };
    if (include_raw) jc["raw"] = cell.raw;
    j["cells"].push_back(std::move(jc));
  }
  return j;
}

inline void write_monte_carlo(std::ostream& out, const MonteCarloReport& report,
                              OutputFormat format, bool include_raw) {
  const auto& c = report.config;
  switch (format) {
    case OutputFormat::json:
      out << to_json(report, include_raw).dump(2) << '\n';
      return;
    case OutputFormat::csv:
      out << "method,prior_mean,alpha,beta,mean,variance,mse,squared_bias\n";
      for (const auto& cell : report.cells) {
        out << fmt::format(
            "{},{},{},{},{},{},{},{}\n", to_string(cell.method),
            cell.prior ? fmt::format("{}", cell.prior->mean()) : std::string(),
            cell.prior ? fmt::format("{}", cell.prior->alpha()) : std::string(),
            cell.prior ? fmt::format("{}", cell.prior->beta()) : std::string(), cell.summary.mean,
            cell.summary.variance, cell.summary.mse, cell.summary.squared_bias);
      }
      break;
    case OutputFormat::table: {
      out << fmt::format("# {} replicates, n = {}, H = {}, {} NDWT depth {}, levels {}:{}, seed {}\n",
                         c.replicates, c.n, c.hurst.value(), c.wavelet, c.depth, c.j1, c.j2,
                         c.master_seed);
      out << fmt::format("{:<14}", "");
      for (const auto& cell : report.cells) out << fmt::format("{:>18}", cell_label(cell));
      out << '\n';
      auto row = [&](const char* name, auto field) {
        out << fmt::format("{:<14}", name);
        for (const auto& cell : report.cells) out << fmt::format("{:>18.6g}", field(cell.summary));
        out << '\n';
      };
      row("Mean", [](const Summary& s) { return s.mean; });
      row("Variance", [](const Summary& s) { return s.variance; });
      row("MSE", [](const Summary& s) { return s.mse; });
      row("Squared bias", [](const Summary& s) { return s.squared_bias; });
      break;
    }
  }
  if (include_raw && format != OutputFormat::json) {
    out << "\nreplicate";
    for (const auto& cell : report.cells) out << ',' << cell_label(cell);
    out << '\n';
    for (std::size_t r = 0; r < c.replicates; ++r) {
      out << r;
      for (const auto& cell : report.cells) out << fmt::format(",{}", cell.raw[r]);
      out << '\n';
    }
  }
}

}  // namespace hurst
