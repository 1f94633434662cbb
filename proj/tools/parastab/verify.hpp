#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "parastab/hill.hpp"
#include "parastab/melnikov.hpp"
#include "parastab/sampling.hpp"

namespace parastab::cli {

enum class CheckStatus { Pass, Fail, Unsupported };

std::string_view to_string(CheckStatus s);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Fail;
    std::string detail;
};

using ClosedFormMelnikov = std::function<MelnikovEvaluation(const OscillatorParams&, double)>;

struct VerifySetup {
    std::size_t truncation = kDefaultTruncation;
    std::size_t melnikov_samples = 100;
    /// Replaceable for mutation testing.
    ClosedFormMelnikov closed_form = melnikov_closed;
};

/// One draw from the Melnikov oracle sweep box: dh in [0.1, 4],
/// gamma dh <= 0.5, beta <= 0.1, F <= 0.2, wm, wf in [0.3, 3].
ParamValues sample_melnikov_params(UniformSampler& rng);

CheckResult check_melnikov_oracle(const VerifySetup& setup);
CheckResult check_hill_floquet(const VerifySetup& setup);
CheckResult check_coexistence(const VerifySetup& setup);
CheckResult check_liouville(const VerifySetup& setup);
CheckResult check_tongue_slopes(const VerifySetup& setup);

std::vector<CheckResult> run_verify(const VerifySetup& setup);

/// One line per check; returns true when nothing failed.
bool report_verify(std::ostream& os, const std::vector<CheckResult>& results);

}  // namespace parastab::cli
