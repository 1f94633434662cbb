#include "commands.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "config.hpp"
#include "parastab/basin.hpp"
#include "parastab/errors.hpp"
#include "parastab/floquet.hpp"
#include "parastab/format.hpp"
#include "parastab/hill.hpp"
#include "parastab/melnikov.hpp"
#include "parastab/model.hpp"
#include "parastab/ode.hpp"
#include "parastab/svg.hpp"

namespace parastab::cli {

namespace fs = std::filesystem;

namespace {

struct Overrides {
    std::optional<std::string> config_path;
    std::optional<std::string> out;
    std::optional<unsigned> workers;
    std::optional<unsigned long long> seed;
    bool dump = false;

    std::optional<double> delta_hat, gamma, beta, omega_m, f_amp, omega_f;

    std::optional<std::string> rhs;
    std::optional<double> x0, y0, periods, t0;
    std::optional<std::size_t> truncation, samples, nx, ny;
    std::optional<int> horizon;
    bool svg = false;
    bool no_quadrature = false;
};

template <typename T>
void override_with(const std::optional<T>& src, T& dst) {
    if (src) dst = *src;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidArgument(what);
}

std::ofstream open_output(const RunConfig& c, const std::string& name, fs::path& path) {
    std::error_code ec;
    fs::create_directories(c.out, ec);
    path = fs::path(c.out) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + path.string() + "'");
    return f;
}

int cmd_trajectory(const RunConfig& c, std::ostream& out) {
    const OscillatorParams p(c.params);
    const auto& o = c.trajectory;
    require(o.periods > 0 && o.dt > 0, "trajectory: periods and dt must be > 0");
    IntegratorSettings s;
    s.rel_tol = o.rel_tol;
    s.abs_tol = o.abs_tol;
    validate(s);

    const State s0{0.0, o.x0, o.y0};
    Trajectory traj;
    if (o.rhs == "full") {
        traj = integrate_sampled([&p](double t, const Vec2& v) { return rhs_full(p, {t, v[0], v[1]}); },
                                 s0, o.periods * reference_period(p), o.dt, s);
    } else if (o.rhs == "origin" || o.rhs == "saddle") {
        const bool origin = o.rhs == "origin";
        traj = integrate_sampled(
            [&p, origin](double tau, const Vec2& v) {
                return origin ? rhs_linearized_origin(p, tau, v) : rhs_linearized_saddle(p, tau, v);
            },
            s0, o.periods * 2.0 * std::numbers::pi, o.dt, s);
    } else {
        throw ConfigError("trajectory.rhs must be full, origin or saddle");
    }
    fs::path path;
    auto f = open_output(c, "trajectory.csv", path);
    write_trajectory_csv(f, traj);
    out << "wrote " << path.string() << " (" << traj.size() << " rows)\n";
    return kExitOk;
}

int cmd_tongues(const RunConfig& c, std::ostream& out) {
    const auto& o = c.tongues;
    require(o.k_max >= 1 && o.gamma_count >= 1, "tongues: k_max and gamma_count must be >= 1");
    require(o.gamma_min >= 0 && o.gamma_max >= o.gamma_min, "tongues: bad gamma range");
    const double wm = c.params.omega_m;
    const auto gammas = linspace(o.gamma_min, o.gamma_max, o.gamma_count);
    const auto rows = trace_tongues(o.k_max, gammas, wm, o.truncation);

    fs::path path;
    {
        auto f = open_output(c, "tongues.csv", path);
        write_tongues_csv(f, rows);
    }
    out << "wrote " << path.string() << '\n';

    std::vector<std::optional<std::pair<double, double>>> damped;
    if (o.damped_overlay) {
        auto f = open_output(c, "damped_tongue.csv", path);
        f << "gamma,delta_lower,delta_upper\n";
        for (double g : gammas) {
            damped.push_back(damped_first_tongue(g, c.params.beta, wm));
            f << shortest(g) << ',';
            if (damped.back()) f << shortest(damped.back()->first) << ',' << shortest(damped.back()->second);
            else f << ',';
            f << '\n';
        }
        out << "wrote " << path.string() << '\n';
    }

    if (o.svg) {
        SvgChart chart;
        chart.title = "Transition curves, omega_m = " + shortest(wm);
        chart.x_label = "gamma";
        chart.y_label = "delta_hat";
        for (int k = 1; k <= o.k_max; ++k) {
            for (auto fam : {DeterminantFamily::OddCosine, DeterminantFamily::OddSine}) {
                SvgSeries s;
                s.label = std::string(to_string(fam)) + " k=" + std::to_string(k);
                for (const auto& r : rows) {
                    if (r.k != k || r.family != fam) continue;
                    s.x.push_back(r.gamma);
                    s.y.push_back(r.delta_hat.value_or(std::numeric_limits<double>::quiet_NaN()));
                }
                chart.series.push_back(std::move(s));
            }
        }
        if (o.damped_overlay) {
            SvgSeries lo{"damped lower", {}, {}}, hi{"damped upper", {}, {}};
            const double nan = std::numeric_limits<double>::quiet_NaN();
            for (std::size_t i = 0; i < gammas.size(); ++i) {
                lo.x.push_back(gammas[i]);
                hi.x.push_back(gammas[i]);
                lo.y.push_back(damped[i] ? damped[i]->first : nan);
                hi.y.push_back(damped[i] ? damped[i]->second : nan);
            }
            chart.series.push_back(std::move(lo));
            chart.series.push_back(std::move(hi));
        }
        auto f = open_output(c, "tongues.svg", path);
        write_svg_chart(f, chart);
        out << "wrote " << path.string() << '\n';
    }

    std::size_t gaps = 0;
    for (const auto& r : rows) gaps += r.delta_hat ? 0 : 1;
    if (gaps) {
        out << gaps << " transition point(s) failed; gaps left in output\n";
        return kExitNumeric;
    }
    return kExitOk;
}

int cmd_floquet_map(const RunConfig& c, std::ostream& out) {
    const auto& o = c.floquet_map;
    require(o.gamma_count >= 1 && o.delta_count >= 1, "floquet_map: counts must be >= 1");
    const OscillatorParams p(c.params);
    const auto rows = floquet_map(p, linspace(o.gamma_min, o.gamma_max, o.gamma_count),
                                  linspace(o.delta_min, o.delta_max, o.delta_count),
                                  default_floquet_settings(), 1);
    fs::path path;
    auto f = open_output(c, "floquet_map.csv", path);
    write_floquet_map_csv(f, rows);
    out << "wrote " << path.string() << " (" << rows.size() << " cells)\n";
    return kExitOk;
}

int cmd_melnikov(const RunConfig& c, std::ostream& out, const CliHooks& hooks) {
    const OscillatorParams p(c.params);
    const auto e = hooks.closed_form(p, c.melnikov.t0);
    out << "t0 = " << shortest(e.t0) << '\n';
    out << "forcing_term = " << shortest(e.forcing_term) << '\n';
    out << "damping_term = " << shortest(e.damping_term) << '\n';
    out << "mass_term = " << shortest(e.mass_term) << '\n';
    out << "value = " << shortest(e.value) << '\n';
    if (c.melnikov.quadrature) out << "quadrature = " << shortest(melnikov_quadrature(p, e.t0)) << '\n';
    if (p.beta() > 0 || p.gamma() > 0) out << "forcing_threshold = " << shortest(forcing_threshold(p)) << '\n';
    if (p.beta() > 0) {
        std::string g = "none (delta_hat = omega_m^2)";
        try {
            g = shortest(gamma_threshold(p.delta_hat(), p.beta(), p.omega_m()));
        } catch (const NeutralFrequency&) {
        }
        out << "gamma_threshold = " << g << '\n';
    }
    out << "erosion_shift = " << to_string(erosion_shift_sign(p.delta_hat(), p.omega_m())) << '\n';
    return kExitOk;
}

int cmd_thresholds(const RunConfig& c, std::ostream& out) {
    const auto& o = c.thresholds;
    require(o.gamma_count >= 1 && !o.omega_fs.empty(), "thresholds: empty grid");
    const OscillatorParams p(c.params);
    const auto rows = threshold_table(p, linspace(o.gamma_min, o.gamma_max, o.gamma_count), o.omega_fs);
    fs::path path;
    auto f = open_output(c, "thresholds.csv", path);
    write_thresholds_csv(f, rows);
    out << "wrote " << path.string() << '\n';
    return kExitOk;
}

int cmd_basin(const RunConfig& c, std::ostream& out) {
    const OscillatorParams p(c.params);
    const auto r = compute_basin(p, c.basin.grid(), c.basin.settings(), c.workers);
    fs::path path;
    {
        auto f = open_output(c, "basin.pgm", path);
        write_basin_pgm(f, r);
    }
    out << "wrote " << path.string() << '\n';
    {
        auto f = open_output(c, "basin.csv", path);
        write_basin_csv(f, r);
    }
    out << "wrote " << path.string() << '\n';
    out << "safe_area = " << shortest(r.safe_area()) << '\n';
    out << "integration_failures = " << r.diagnostics.integration_failures << '\n';
    return kExitOk;
}

int cmd_integrity(const RunConfig& c, std::ostream& out) {
    const auto& o = c.integrity;
    require(o.f_count >= 1 && o.f_max >= o.f_min && !o.gammas.empty(), "integrity: bad F grid");
    const OscillatorParams p(c.params);
    const auto grid = c.basin.grid();
    const auto settings = c.basin.settings();
    const auto fvals = linspace(o.f_min, o.f_max, o.f_count);
    const std::optional<double> stop = o.stop_below >= 0 ? std::optional(o.stop_below) : std::nullopt;
    const double baseline = baseline_safe_area(p, grid, settings, c.workers);

    SvgChart chart;
    chart.title = "Integrity, delta_hat = " + shortest(p.delta_hat()) +
                  ", omega_m = " + shortest(p.omega_m());
    chart.x_label = "F";
    chart.y_label = "normalized safe area";
    for (double g : o.gammas) {
        const auto curve = integrity_curve(p.with_gamma(g), fvals, grid, settings, c.workers, stop, baseline);
        fs::path path;
        {
            auto f = open_output(c, "integrity_gamma_" + shortest(g) + ".csv", path);
            write_integrity_csv(f, curve);
        }
        const auto cliff = locate_cliff(curve);
        out << "wrote " << path.string() << "; cliff(gamma=" << shortest(g)
            << ") = " << (cliff ? shortest(*cliff) : std::string("none")) << '\n';
        SvgSeries s{"gamma = " + shortest(g), {}, {}};
        for (const auto& pt : curve.points) {
            s.x.push_back(pt.f_amp);
            s.y.push_back(pt.normalized_area);
        }
        chart.series.push_back(std::move(s));
    }
    if (o.svg) {
        fs::path path;
        auto f = open_output(c, "integrity.svg", path);
        write_svg_chart(f, chart);
        out << "wrote " << path.string() << '\n';
    }
    return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out, const CliHooks& hooks) {
    VerifySetup setup;
    setup.truncation = c.verify.truncation;
    setup.melnikov_samples = c.verify.melnikov_samples;
    setup.closed_form = hooks.closed_form;
    return report_verify(out, run_verify(setup)) ? kExitOk : kExitVerifyFailed;
}

std::optional<unsigned> workers_from_env() {
    const char* v = std::getenv("PARASTAB_WORKERS");
    if (!v || !*v) return std::nullopt;
    char* end = nullptr;
    const unsigned long n = std::strtoul(v, &end, 10);
    if (*end != '\0') throw ConfigError("PARASTAB_WORKERS must be a non-negative integer");
    return static_cast<unsigned>(n);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
            const CliHooks& hooks) {
    CLI::App app{"Stability analysis of the Helmholtz oscillator with time-varying mass", "parastab"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    Overrides ov;
    app.add_option("--config", ov.config_path, "JSON run configuration");
    app.add_option("--out", ov.out, "output directory");
    app.add_option("--workers", ov.workers, "worker threads for basin sweeps (0 = all cores)");
    app.add_option("--seed", ov.seed, "reserved; all algorithms are deterministic");
    app.add_flag("--dump-config", ov.dump, "print the resolved configuration as JSON and exit");
    app.add_option("--delta-hat", ov.delta_hat, "inverse mean mass");
    app.add_option("--gamma", ov.gamma, "mass-variation amplitude");
    app.add_option("--beta", ov.beta, "linear damping");
    app.add_option("--omega-m", ov.omega_m, "mass-variation frequency");
    app.add_option("--f-amp", ov.f_amp, "forcing amplitude");
    app.add_option("--omega-f", ov.omega_f, "forcing frequency");

    auto* traj = app.add_subcommand("trajectory", "integrate one trajectory to CSV");
    traj->add_option("--rhs", ov.rhs, "full | origin | saddle");
    traj->add_option("--x0", ov.x0);
    traj->add_option("--y0", ov.y0);
    traj->add_option("--periods", ov.periods);
    auto* tongues = app.add_subcommand("tongues", "trace transition curves");
    tongues->add_option("--truncation", ov.truncation);
    tongues->add_flag("--svg", ov.svg);
    app.add_subcommand("floquet-map", "Floquet stability over a (gamma, delta_hat) grid");
    auto* mel = app.add_subcommand("melnikov", "Melnikov function report");
    mel->add_option("--t0", ov.t0);
    mel->add_flag("--no-quadrature", ov.no_quadrature);
    app.add_subcommand("thresholds", "forcing thresholds over gamma and omega_f");
    auto* basin = app.add_subcommand("basin", "safe-basin raster");
    auto* integ = app.add_subcommand("integrity", "integrity curves");
    for (auto* sub : {basin, integ}) {
        sub->add_option("--nx", ov.nx);
        sub->add_option("--ny", ov.ny);
        sub->add_option("--horizon", ov.horizon, "horizon in reference periods");
    }
    integ->add_flag("--svg", ov.svg);
    auto* ver = app.add_subcommand("verify", "run the cross-oracle checks");
    ver->add_option("--truncation", ov.truncation);
    ver->add_option("--samples", ov.samples, "Melnikov sweep size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();

    try {
        RunConfig c;
        if (ov.config_path) c = load_config_file(*ov.config_path);
        if (!ov.workers) {
            if (auto w = workers_from_env()) ov.workers = w;
        }
        override_with(ov.out, c.out);
        override_with(ov.workers, c.workers);
        override_with(ov.seed, c.seed);
        override_with(ov.delta_hat, c.params.delta_hat);
        override_with(ov.gamma, c.params.gamma);
        override_with(ov.beta, c.params.beta);
        override_with(ov.omega_m, c.params.omega_m);
        override_with(ov.f_amp, c.params.f_amp);
        override_with(ov.omega_f, c.params.omega_f);
        override_with(ov.rhs, c.trajectory.rhs);
        override_with(ov.x0, c.trajectory.x0);
        override_with(ov.y0, c.trajectory.y0);
        override_with(ov.periods, c.trajectory.periods);
        override_with(ov.t0, c.melnikov.t0);
        if (ov.no_quadrature) c.melnikov.quadrature = false;
        if (cmd == "tongues") {
            override_with(ov.truncation, c.tongues.truncation);
            if (ov.svg) c.tongues.svg = true;
        }
        if (cmd == "verify") override_with(ov.truncation, c.verify.truncation);
        override_with(ov.samples, c.verify.melnikov_samples);
        override_with(ov.nx, c.basin.nx);
        override_with(ov.ny, c.basin.ny);
        override_with(ov.horizon, c.basin.horizon_periods);
        if (cmd == "integrity" && ov.svg) c.integrity.svg = true;

        if (const auto msg = validation_error(c.params); !msg.empty()) throw ConfigError(msg);
        c.basin.grid().validate();

        if (ov.dump) {
            out << dump_config(c);
            return kExitOk;
        }

        if (cmd == "trajectory") return cmd_trajectory(c, out);
        if (cmd == "tongues") return cmd_tongues(c, out);
        if (cmd == "floquet-map") return cmd_floquet_map(c, out);
        if (cmd == "melnikov") return cmd_melnikov(c, out, hooks);
        if (cmd == "thresholds") return cmd_thresholds(c, out);
        if (cmd == "basin") return cmd_basin(c, out);
        if (cmd == "integrity") return cmd_integrity(c, out);
        return cmd_verify(c, out, hooks);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const InvalidArgument& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        err << "numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    }
}

}  // namespace parastab::cli
