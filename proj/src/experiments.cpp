#include "irslab/experiments.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "irslab/channels.hpp"
#include "irslab/closed_form.hpp"
#include "irslab/config.hpp"
#include "irslab/df_relay.hpp"
#include "irslab/hwi.hpp"
#include "irslab/monte_carlo.hpp"
#include "irslab/optimizer.hpp"
#include "irslab/parallel.hpp"
#include "irslab/robustness.hpp"
#include "irslab/units.hpp"

namespace irslab::experiments {

namespace {

namespace fs = std::filesystem;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

/// Writes to a temporary sibling and renames on commit, so failed runs never
/// leave a partial CSV behind.
class CsvFile {
  public:
    explicit CsvFile(const std::string& path) : path_(path), tmp_(path + ".tmp") {
        out_.open(tmp_, std::ios::binary | std::ios::trunc);
        if (!out_) throw std::invalid_argument("cannot open output file '" + path + "'");
    }
    ~CsvFile() {
        out_.close();
        if (!committed_) {
            std::error_code ec;
            fs::remove(tmp_, ec);
        }
    }
    std::ostream& stream() { return out_; }
    void commit() {
        out_.close();
        if (!out_) throw std::runtime_error("write failed for '" + path_ + "'");
        fs::rename(tmp_, path_);
        committed_ = true;
    }

  private:
    std::string path_, tmp_;
    std::ofstream out_;
    bool committed_ = false;
};

void write_audit_header(std::ostream& out, const ExperimentSpec& spec,
                        const scenario::ScenarioParams& params) {
    out << "# irslab experiment output\n";
    out << "# experiment = " << to_string(spec.id) << "\n";
    out << "# seed = " << spec.seed << "\n";
    out << "# trials = " << spec.trials << "\n";
    for (const auto& [key, value] : config::resolved_entries(params))
        out << "# " << key << " = " << fmt(value) << "\n";
}

void validate_spec(const ExperimentSpec& spec) {
    if (spec.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (spec.out_path.empty()) throw std::invalid_argument("output path is required");
    if (spec.id == ExperimentId::custom_sweep) {
        if (!(spec.sweep_step > 0.0) || !(spec.sweep_to >= spec.sweep_from))
            throw std::invalid_argument("sweep grid must be nonempty and strictly increasing");
        if (spec.mc_every < 0) throw std::invalid_argument("mc-every must be nonnegative");
        if (spec.fixed_elements < 1) throw std::invalid_argument("elements must be >= 1");
    }
}

monte_carlo::TrialAverage compensated_mc(int n, const scenario::ScenarioParams& params,
                                         const scenario::LinkBudget& budget, long trials,
                                         const rng::Stream& stream) {
    return monte_carlo::average_rate(
        [&](rng::Engine& eng) {
            const auto errors = hwi::sample_phase_errors(n, eng);
            return monte_carlo::instantaneous_rate_compensated(n, params, budget, errors);
        },
        trials, stream);
}

void run_fig3(const ExperimentSpec& spec, const scenario::ScenarioParams& params,
              std::ostream& out) {
    const auto budget = scenario::link_budget(params);
    const bool rates = spec.id == ExperimentId::fig3a;
    const int n_max = 5000;
    out << "# columns: "
        << (rates ? "N,rate_hwi,rate_ideal,rate_gap,mc_mean,mc_std_error"
                  : "N,utility_hwi,utility_ideal,utility_gap")
        << "\n";

    std::vector<std::string> rows(n_max);
    parallel::parallel_for(n_max, [&](std::size_t idx) {
        const double n = static_cast<double>(idx + 1);
        if (rates) {
            rows[idx] = fmt(n) + "," + fmt(closed_form::avg_rate_hwi(n, params, budget)) + "," +
                        fmt(closed_form::rate_ideal(n, params, budget)) + "," +
                        fmt(closed_form::rate_gap(n, params, budget));
        } else {
            rows[idx] = fmt(n) + "," + fmt(closed_form::utility_hwi(n, params, budget)) + "," +
                        fmt(closed_form::utility_ideal(n, params, budget)) + "," +
                        fmt(closed_form::utility_gap(n, params, budget));
        }
    });

    if (rates) {
        const rng::Stream master{spec.seed};
        for (int idx = 0; idx < n_max; ++idx) {
            const int n = idx + 1;
            if (n == 1 || n % 500 == 0) {
                const auto avg =
                    compensated_mc(n, params, budget, spec.trials, master.fork(n));
                rows[idx] += "," + fmt(avg.mean) + "," + fmt(avg.std_error);
            } else {
                rows[idx] += ",,";
            }
        }
    }
    for (const auto& row : rows) out << row << "\n";
}

void run_fig4(const ExperimentSpec& spec, const scenario::ScenarioParams& params,
              std::ostream& out) {
    const auto budget = scenario::link_budget(params);
    out << "# columns: N,rate_compensated_cf,rate_compensated_mc,rate_compensated_mc_se,"
           "rate_opt_objective,rate_opt_reconstructed,rate_opt_mc,rate_opt_mc_se,"
           "rank1_certified,eigen_ratio\n";

    CsvFile thetas(spec.out_path + ".thetas.csv");
    thetas.stream() << "# columns: N,objective_snr,rank1_certified,eigen_ratio,theta...\n";

    const rng::Stream master{spec.seed};
    for (const int n : {1, 13, 25, 37}) {
        const auto point = master.fork(n);
        auto ch_eng = point.fork(1).substream(0);
        const auto ch = channels::sample_channels(params, n, ch_eng);

        const auto comp = compensated_mc(n, params, budget, spec.trials, point.fork(2));
        const auto opt = optimizer::optimize_and_evaluate(ch, params, spec.trials, point.fork(2));
        if (!opt.lifted.rank1_certified)
            throw InvariantViolation("fig4: rank-1 certification failed at N=" +
                                     std::to_string(n));

        Eigen::VectorXcd a(n + 1);
        for (int i = 0; i < n; ++i) a[i] = std::polar(params.alpha, -opt.lifted.theta[i]);
        a[n] = 1.0;
        const Eigen::MatrixXcd x_rebuilt = a * a.adjoint();
        const double snr_rebuilt =
            optimizer::average_snr_for(optimizer::expected_xi(ch), x_rebuilt, params, budget);

        out << n << "," << fmt(closed_form::avg_rate_hwi(n, params, budget)) << ","
            << fmt(comp.mean) << "," << fmt(comp.std_error) << ","
            << fmt(opt.objective_rate) << "," << fmt(closed_form::log2_rate(snr_rebuilt)) << ","
            << fmt(opt.mc_rate.mean) << "," << fmt(opt.mc_rate.std_error) << ","
            << (opt.lifted.rank1_certified ? 1 : 0) << "," << fmt(opt.lifted.eigen_ratio)
            << "\n";
        thetas.stream() << optimizer::format_report_row(n, opt) << "\n";
    }
    thetas.commit();
}

void run_fig5(const ExperimentSpec& spec, const scenario::ScenarioParams& params,
              std::ostream& out) {
    out << "# columns: N,variant,mean,std_error\n";
    const rng::Stream master{spec.seed};
    for (const int n : {1, 13, 25, 37}) {
        const auto point = master.fork(n);
        auto ch_eng = point.fork(1).substream(0);
        const auto ch = channels::sample_channels(params, n, ch_eng);

        // One shared trial stream keeps the phase-error draws paired across
        // the three variants.
        const auto trial_stream = point.fork(2);
        const auto clean =
            optimizer::optimize_and_evaluate(ch, params, spec.trials, trial_stream);
        const robustness::CsiErrorModel model{params.noise_w};
        const auto imperfect = robustness::optimize_with_imperfect_csi(
            ch, model, params, spec.trials, trial_stream);
        const auto residual = robustness::evaluate_with_residual_phase_noise(
            clean.lifted.theta, ch, params, spec.trials, trial_stream);

        out << n << ",clean," << fmt(clean.mc_rate.mean) << ","
            << fmt(clean.mc_rate.std_error) << "\n";
        out << n << ",imperfect_csi," << fmt(imperfect.rate.mean) << ","
            << fmt(imperfect.rate.std_error) << "\n";
        out << n << ",residual_phase_noise," << fmt(residual.mean) << ","
            << fmt(residual.std_error) << "\n";
    }
}

void run_fig6(const ExperimentSpec& spec, const scenario::ScenarioParams& params,
              std::ostream& out) {
    const bool sweep_n = spec.id == ExperimentId::fig6a;
    out << "# columns: kappa_each," << (sweep_n ? "N" : "P_dBm")
        << ",irs_rate,df_rate,irs_utility,df_utility\n";
    for (const double kappa_each : {0.05 * 0.05, 0.07 * 0.07, 0.09 * 0.09}) {
        scenario::ScenarioParams p = params;
        p.kappa_t = p.kappa_r = kappa_each;
        if (sweep_n) {
            const auto budget = scenario::link_budget(p);
            const auto df = df_relay::df_params_from(p, budget);
            for (int n = 1; n <= 5000; ++n) {
                out << fmt(kappa_each) << "," << n << ","
                    << fmt(closed_form::avg_rate_hwi(n, p, budget)) << ","
                    << fmt(df_relay::df_rate_upper_bound(n, df, p)) << ","
                    << fmt(closed_form::utility_hwi(n, p, budget)) << ","
                    << fmt(df_relay::df_utility(n, df, p).value) << "\n";
            }
        } else {
            const int n = 256;
            for (int p_dbm = 1; p_dbm <= 50; ++p_dbm) {
                scenario::ScenarioParams pp = p;
                pp.power_w = units::dbm_to_watts(p_dbm);
                const auto budget = scenario::link_budget(pp);
                const auto df = df_relay::df_params_from(pp, budget);
                out << fmt(kappa_each) << "," << p_dbm << ","
                    << fmt(closed_form::avg_rate_hwi(n, pp, budget)) << ","
                    << fmt(df_relay::df_rate_upper_bound(n, df, pp)) << ","
                    << fmt(closed_form::utility_hwi(n, pp, budget)) << ","
                    << fmt(df_relay::df_utility(n, df, pp).value) << "\n";
            }
        }
    }
}

void run_custom(const ExperimentSpec& spec, const scenario::ScenarioParams& params,
                std::ostream& out) {
    const rng::Stream master{spec.seed};
    if (spec.axis == SweepAxis::elements) {
        out << "# columns: N,rate_hwi,rate_ideal,rate_gap,df_rate,mc_mean,mc_std_error\n";
        const auto budget = scenario::link_budget(params);
        const auto df = df_relay::df_params_from(params, budget);
        long index = 0;
        for (double n = spec.sweep_from; n <= spec.sweep_to + 1e-9; n += spec.sweep_step) {
            out << fmt(n) << "," << fmt(closed_form::avg_rate_hwi(n, params, budget)) << ","
                << fmt(closed_form::rate_ideal(n, params, budget)) << ","
                << fmt(closed_form::rate_gap(n, params, budget)) << ","
                << fmt(df_relay::df_rate_upper_bound(n, df, params));
            if (spec.mc_every > 0 && index % spec.mc_every == 0) {
                const auto avg = compensated_mc(static_cast<int>(std::lround(n)), params,
                                                budget, spec.trials, master.fork(index));
                out << "," << fmt(avg.mean) << "," << fmt(avg.std_error);
            } else {
                out << ",,";
            }
            out << "\n";
            ++index;
        }
    } else {
        out << "# columns: P_dBm,rate_hwi,df_rate\n";
        for (double p_dbm = spec.sweep_from; p_dbm <= spec.sweep_to + 1e-9;
             p_dbm += spec.sweep_step) {
            scenario::ScenarioParams pp = params;
            pp.power_w = units::dbm_to_watts(p_dbm);
            const auto budget = scenario::link_budget(pp);
            const auto df = df_relay::df_params_from(pp, budget);
            out << fmt(p_dbm) << ","
                << fmt(closed_form::avg_rate_hwi(spec.fixed_elements, pp, budget)) << ","
                << fmt(df_relay::df_rate_upper_bound(spec.fixed_elements, df, pp)) << "\n";
        }
    }
}

}  // namespace

ExperimentId parse_experiment_id(const std::string& name) {
    if (name == "fig3a") return ExperimentId::fig3a;
    if (name == "fig3b") return ExperimentId::fig3b;
    if (name == "fig4") return ExperimentId::fig4;
    if (name == "fig5") return ExperimentId::fig5;
    if (name == "fig6a") return ExperimentId::fig6a;
    if (name == "fig6b") return ExperimentId::fig6b;
    if (name == "custom-sweep") return ExperimentId::custom_sweep;
    throw std::invalid_argument("unknown experiment '" + name + "'");
}

const char* to_string(ExperimentId id) {
    switch (id) {
        case ExperimentId::fig3a: return "fig3a";
        case ExperimentId::fig3b: return "fig3b";
        case ExperimentId::fig4: return "fig4";
        case ExperimentId::fig5: return "fig5";
        case ExperimentId::fig6a: return "fig6a";
        case ExperimentId::fig6b: return "fig6b";
        case ExperimentId::custom_sweep: return "custom-sweep";
    }
    return "unknown";
}

void run(const ExperimentSpec& spec, const scenario::ScenarioParams& params) {
    validate_spec(spec);
    scenario::validate(params);

    CsvFile file(spec.out_path);
    write_audit_header(file.stream(), spec, params);
    switch (spec.id) {
        case ExperimentId::fig3a:
        case ExperimentId::fig3b:
            run_fig3(spec, params, file.stream());
            break;
        case ExperimentId::fig4:
            run_fig4(spec, params, file.stream());
            break;
        case ExperimentId::fig5:
            run_fig5(spec, params, file.stream());
            break;
        case ExperimentId::fig6a:
        case ExperimentId::fig6b:
            run_fig6(spec, params, file.stream());
            break;
        case ExperimentId::custom_sweep:
            run_custom(spec, params, file.stream());
            break;
    }
    file.commit();
}

}  // namespace irslab::experiments
