// Command-line driver for the BP coding experiments: rate sweeps, restart
// histograms, and Shannon reference curves, with CSV/JSON output.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mlpc/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBreakdown = 3;

struct CliOptions {
  mlpc::ExperimentConfig cfg;
  std::string rates_str;
  std::string beta_grid_str;
};

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t next = s.find(',', pos);
    if (next == std::string::npos) next = s.size();
    out.push_back(std::stod(s.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

void add_common_options(CLI::App* sub, CliOptions& o, bool ecc, bool hist) {
  auto& cfg = o.cfg;
  sub->set_config("--config", "", "flat key=value config file; command line wins");
  sub->add_option("--network", [&cfg](const std::vector<std::string>& v) {
        cfg.network = mlpc::network_kind_from_string(v.front());
        return true;
      },
      "network kind: pth, cth or cto");
  sub->add_option("--K", cfg.K, "hidden units");
  sub->add_option("--N", cfg.N, "message (ECC) / codeword (LC) length; K must divide N");
  sub->add_option("--rates", o.rates_str,
                  hist ? "code rate (single value)" : "comma-separated code rates");
  if (ecc) {
    sub->add_option("--p", cfg.p, "flip probability of a +1 channel input");
    sub->add_option("--r", cfg.r, "flip probability of a -1 channel input");
  } else {
    sub->add_option("--bias", cfg.bias, "source bias P(y=+1)");
    sub->add_option("--beta", cfg.beta, "inverse temperature");
    sub->add_option("--beta-grid", o.beta_grid_str,
                    "comma-separated betas; the best per point is reported");
  }
  sub->add_option("--gamma", cfg.gamma, "inertia amplitude in [0,1)");
  sub->add_option("--runs", cfg.runs, "independent runs per sweep point");
  if (hist) {
    sub->add_option("--restarts", cfg.restarts, "BP restarts per message");
    sub->add_option("--messages", cfg.messages, "original messages");
  }
  sub->add_option("--iters", cfg.iters, "BP iterations (default 100 ECC / 35 LC)");
  sub->add_option("--seed", cfg.seed, "master seed")->required();
  sub->add_option("--out", cfg.out, "output path (CSV or sample list)")->required();
  sub->add_option("--k", cfg.k_override, "override the auto-tuned threshold");
  sub->add_option("--init-scale", cfg.init_scale, "initial magnetization scale");
  sub->add_option("--max-abort-frac", cfg.max_abort_frac,
                  "abort fraction above which the exit code is 3");
  sub->add_flag("--paper-scale", cfg.paper_scale, "use 100 runs / 30 restarts / 50 messages");
}

int finish_sweep(const CliOptions& o, const mlpc::SweepOutcome& res) {
  mlpc::write_sweep_csv(o.cfg.out, res.rows);
  std::ofstream js(o.cfg.out + ".json");
  js << mlpc::summary_json(o.cfg, res.rows, res.abort_fraction) << '\n';
  for (const auto& row : res.rows)
    std::printf("R=%.4f  %s  mean=%.4f  std=%.4f  (count=%d aborted=%d)\n", row.R,
                row.metric.c_str(), row.mean, row.stddev, row.count, row.aborted);
  return res.abort_fraction >= o.cfg.max_abort_frac && res.abort_fraction > 0.0 ? kExitBreakdown
                                                                                : kExitOk;
}

int finish_hist(const CliOptions& o, const mlpc::HistOutcome& res) {
  mlpc::write_samples(o.cfg.out, res.samples);
  std::vector<mlpc::ResultRow> rows{res.row};
  std::ofstream js(o.cfg.out + ".json");
  js << mlpc::summary_json(o.cfg, rows, res.abort_fraction) << '\n';
  std::printf("%s pooled %s = %.4f over %zu messages, %zu pairwise samples\n",
              res.row.task.c_str(), res.row.metric.c_str(), res.pooled_metric,
              res.message_metric.size(), res.samples.size());
  return res.abort_fraction >= o.cfg.max_abort_frac && res.abort_fraction > 0.0 ? kExitBreakdown
                                                                                : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Belief-propagation decoding/encoding experiments for tree-like "
               "multilayer-perceptron codes"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value config file; command line wins");

  CliOptions ecc_sweep_o, ecc_hist_o, lc_sweep_o, lc_hist_o, bounds_o;
  ecc_sweep_o.cfg.task = mlpc::ExperimentTask::EccSweep;
  ecc_hist_o.cfg.task = mlpc::ExperimentTask::EccHist;
  lc_sweep_o.cfg.task = mlpc::ExperimentTask::LcSweep;
  lc_hist_o.cfg.task = mlpc::ExperimentTask::LcHist;
  bounds_o.cfg.task = mlpc::ExperimentTask::Bounds;

  CLI::App* s1 = app.add_subcommand("ecc-sweep", "rate sweep of the BP decoder");
  add_common_options(s1, ecc_sweep_o, true, false);
  CLI::App* s2 = app.add_subcommand("ecc-hist", "restart-overlap histogram of the BP decoder");
  add_common_options(s2, ecc_hist_o, true, true);
  CLI::App* s3 = app.add_subcommand("lc-sweep", "rate sweep of the BP encoder");
  add_common_options(s3, lc_sweep_o, false, false);
  CLI::App* s4 = app.add_subcommand("lc-hist", "restart-overlap histogram of the BP encoder");
  add_common_options(s4, lc_hist_o, false, true);

  CLI::App* s5 = app.add_subcommand("bounds", "Shannon reference curves as CSV");
  s5->add_option("--p", bounds_o.cfg.p, "BAC flip probability of +1 inputs");
  s5->add_option("--r", bounds_o.cfg.r, "BAC flip probability of -1 inputs");
  s5->add_option("--bias", bounds_o.cfg.bias, "source bias for the rate-distortion curve");
  s5->add_option("--out", bounds_o.cfg.out, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitConfig;
  }

  auto prepare = [](CliOptions& o) {
    if (!o.rates_str.empty()) o.cfg.rates = parse_list(o.rates_str);
    if (!o.beta_grid_str.empty()) o.cfg.beta_grid = parse_list(o.beta_grid_str);
    if (o.cfg.paper_scale) o.cfg.apply_paper_scale();
  };

  try {
    if (s1->parsed()) {
      prepare(ecc_sweep_o);
      return finish_sweep(ecc_sweep_o, mlpc::sweep_ecc(ecc_sweep_o.cfg));
    }
    if (s2->parsed()) {
      prepare(ecc_hist_o);
      return finish_hist(ecc_hist_o, mlpc::hist_ecc(ecc_hist_o.cfg));
    }
    if (s3->parsed()) {
      prepare(lc_sweep_o);
      return finish_sweep(lc_sweep_o, mlpc::sweep_lc(lc_sweep_o.cfg));
    }
    if (s4->parsed()) {
      prepare(lc_hist_o);
      return finish_hist(lc_hist_o, mlpc::hist_lc(lc_hist_o.cfg));
    }
    if (s5->parsed()) {
      const auto rows = mlpc::bounds(bounds_o.cfg);
      mlpc::write_bounds_csv(bounds_o.cfg.out, rows);
      std::printf("wrote %zu bound rows to %s\n", rows.size(), bounds_o.cfg.out.c_str());
      return kExitOk;
    }
  } catch (const mlpc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}
