#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "parastab/errors.hpp"
#include "parastab/floquet.hpp"
#include "parastab/format.hpp"
#include "parastab/hill.hpp"

namespace parastab::cli {

namespace {
constexpr std::uint64_t kSweepSeed = 20260516;
}

std::string_view to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "PASS";
        case CheckStatus::Fail: return "FAIL";
        case CheckStatus::Unsupported: return "UNSUPPORTED";
    }
    return "?";
}

ParamValues sample_melnikov_params(UniformSampler& rng) {
    ParamValues v;
    v.delta_hat = rng.uniform(0.1, 4.0);
    v.gamma = rng.uniform(0.0, 0.5 / v.delta_hat);
    v.beta = rng.uniform(0.0, 0.1);
    v.f_amp = rng.uniform(0.0, 0.2);
    v.omega_m = rng.uniform(0.3, 3.0);
    v.omega_f = rng.uniform(0.3, 3.0);
    return v;
}

CheckResult check_melnikov_oracle(const VerifySetup& setup) {
    CheckResult r{"melnikov closed form vs quadrature", CheckStatus::Pass, {}};
    UniformSampler rng(kSweepSeed);
    double worst = 0.0;
    for (std::size_t i = 0; i < setup.melnikov_samples; ++i) {
        const OscillatorParams p(sample_melnikov_params(rng));
        const double t0 = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double closed = setup.closed_form(p, t0).value;
        const double quad = melnikov_quadrature(p, t0);
        worst = std::max(worst, std::abs(closed - quad) / (1.0 + std::abs(closed)));
    }
    if (!(worst < 1e-6)) r.status = CheckStatus::Fail;
    r.detail = "max scaled error " + shortest(worst) + " over " +
               std::to_string(setup.melnikov_samples) + " samples (limit 1e-6)";
    return r;
}

CheckResult check_hill_floquet(const VerifySetup& setup) {
    CheckResult r{"hill boundaries have unit floquet multipliers", CheckStatus::Pass, {}};
    if (setup.truncation < 8) {
        r.status = CheckStatus::Unsupported;
        r.detail = "truncation " + std::to_string(setup.truncation) + " < 8";
        return r;
    }
    double worst = 0.0;
    for (double g : linspace(0.02, 0.2, 5)) {
        for (auto fam : {DeterminantFamily::OddCosine, DeterminantFamily::OddSine}) {
            ParamValues v;
            v.gamma = g;
            v.delta_hat = solve_transition_curve(fam, 1, g, 1.0, setup.truncation);
            const auto m = monodromy(OscillatorParams(v), FixedPoint::Origin,
                                     default_floquet_settings());
            worst = std::max(worst, std::abs(m.max_abs_multiplier() - 1.0));
        }
    }
    if (!(worst < 1e-6)) r.status = CheckStatus::Fail;
    r.detail = "max | |lambda| - 1 | = " + shortest(worst) + " on 10 points (limit 1e-6)";
    return r;
}

CheckResult check_coexistence(const VerifySetup& setup) {
    CheckResult r{"even-tongue coexistence", CheckStatus::Pass, {}};
    UniformSampler rng(kSweepSeed + 1);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double dh = rng.uniform(0.1, 4.0);
        const double g = rng.uniform(0.0, 0.3 / dh);
        const double wm = rng.uniform(0.5, 2.0);
        worst = std::max(worst, coexistence_relative_residual(g, dh, wm, setup.truncation));
    }
    if (!(worst < 1e-10)) r.status = CheckStatus::Fail;
    r.detail = "max relative residual " + shortest(worst) + " at N = " +
               std::to_string(setup.truncation) + " (limit 1e-10)";
    return r;
}

CheckResult check_liouville(const VerifySetup&) {
    CheckResult r{"monodromy determinant vs Liouville formula", CheckStatus::Pass, {}};
    double worst = 0.0;
    for (double beta : {0.0, 0.01, 0.1}) {
        for (double g : {0.0, 0.1, 0.3}) {
            ParamValues v;
            v.delta_hat = 0.7;
            v.gamma = g;
            v.beta = beta;
            v.omega_m = 1.3;
            const OscillatorParams p(v);
            for (auto fp : {FixedPoint::Origin, FixedPoint::Saddle}) {
                const auto m = monodromy(p, fp, default_floquet_settings());
                worst = std::max(worst, std::abs(m.det - liouville_determinant(p)));
            }
        }
    }
    if (!(worst < 1e-8)) r.status = CheckStatus::Fail;
    r.detail = "max |det M - exp(-int tr A)| = " + shortest(worst) + " (limit 1e-8)";
    return r;
}

CheckResult check_tongue_slopes(const VerifySetup& setup) {
    CheckResult r{"tongue width exponents 2k - 1", CheckStatus::Pass, {}};
    constexpr int k_max = 3;
    if (setup.truncation < 2 * k_max + 6) {
        r.status = CheckStatus::Unsupported;
        r.detail = "truncation " + std::to_string(setup.truncation) + " < " +
                   std::to_string(2 * k_max + 6) + " needed for k = " + std::to_string(k_max);
        return r;
    }
    const auto gammas = linspace(0.02, 0.1, 9);
    constexpr double tol[] = {0.1, 0.2, 0.3};
    for (int k = 1; k <= k_max; ++k) {
        std::vector<double> widths;
        for (double g : gammas) widths.push_back(tongue_width(k, g, 1.0, setup.truncation));
        const double slope = loglog_slope(gammas, widths);
        const double want = 2 * k - 1;
        if (!(std::abs(slope - want) <= tol[k - 1])) r.status = CheckStatus::Fail;
        if (!r.detail.empty()) r.detail += ", ";
        r.detail += "k=" + std::to_string(k) + ": " + shortest(std::round(slope * 1e4) / 1e4);
    }
    return r;
}

std::vector<CheckResult> run_verify(const VerifySetup& setup) {
    using Check = CheckResult (*)(const VerifySetup&);
    const std::pair<const char*, Check> checks[] = {
        {"melnikov", check_melnikov_oracle}, {"hill-floquet", check_hill_floquet},
        {"coexistence", check_coexistence},  {"liouville", check_liouville},
        {"slopes", check_tongue_slopes}};
    std::vector<CheckResult> out;
    for (const auto& [name, c] : checks) {
        try {
            out.push_back(c(setup));
        } catch (const Error& e) {
            out.push_back({std::string(name) + " (aborted)", CheckStatus::Fail, e.what()});
        }
    }
    return out;
}

bool report_verify(std::ostream& os, const std::vector<CheckResult>& results) {
    bool ok = true;
    for (const auto& r : results) {
        os << to_string(r.status) << "  " << r.name << ": " << r.detail << '\n';
        ok = ok && r.status != CheckStatus::Fail;
    }
    return ok;
}

}  // namespace parastab::cli
