#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace parastab {

/// Harmonic-balance determinant families for the origin linearization in
/// Ince form. Cosine/sine refer to the Fourier basis; even/odd to the
/// harmonic indices (period pi vs 2 pi in the Ince clock).
enum class DeterminantFamily { EvenCosine, EvenSine, OddCosine, OddSine };

std::string_view to_string(DeterminantFamily f);
std::optional<DeterminantFamily> parse_family(std::string_view s);

/// (1 + a cos 2t) x'' + b sin 2t x' + (c + d cos 2t) x = 0
struct InceCoefficients {
    double a = 0, b = 0, c = 0, d = 0;
};

/// a = dh gamma, b = -2 dh gamma, c = 4 dh / omega_m^2, d = 0.
InceCoefficients ince_coefficients(double gamma, double delta_hat, double omega_m);

/// Dense row-major square matrix.
class SquareMatrix {
public:
    explicit SquareMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    std::size_t size() const noexcept { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

private:
    std::size_t n_;
    std::vector<double> data_;
};

/// Leading n x n truncation of the infinite Hill matrix for `family`.
/// Diagonal: 4 dh / omega_m^2 - j^2 over the family's harmonics j;
/// off-diagonal couplings -(gamma dh) j (j + 2) / 2 between j and j + 2.
/// The odd families carry +/- gamma dh / 2 on the first diagonal entry,
/// and the EvenCosine row for a_0 is (c, -2 gamma dh, 0, ...).
SquareMatrix build_hill_matrix(DeterminantFamily family, double gamma, double delta_hat,
                               double omega_m, std::size_t n);

/// Determinant by LU factorization with partial pivoting.
double det_eval(const SquareMatrix& m);

/// det(D^-1 M) with D = diag(max(1, max_j |M_ij|)): same sign and roots as
/// det(M), without the j^2 magnitude growth, and continuous in M.
double scaled_det(const SquareMatrix& m);

inline constexpr std::size_t kDefaultTruncation = 25;
inline constexpr double kDefaultRootTol = 1e-14;

/// The family EvenCosine always has the root delta_hat = 0 (a_0 decouples).
inline constexpr double kTrivialTransitionCurve = 0.0;

struct TransitionCurvePoint {
    double gamma = 0;
    double delta_hat = 0;
    DeterminantFamily family = DeterminantFamily::OddCosine;
    int k = 1;
    std::size_t truncation = kDefaultTruncation;
};

/// gamma = 0 root of tongue k: ((2k - 1) omega_m / 2)^2 for odd families,
/// (k omega_m)^2 for even ones.
double seed_delta(DeterminantFamily family, int k, double omega_m);

/// delta_hat on the k-th transition curve of `family` at fixed gamma.
/// Brackets around the gamma = 0 seed (radius 0.4 x nearest seed spacing,
/// doubled once on failure), bisects, then finishes with a safeguarded
/// secant (Illinois) iteration. Requires n >= 2k + 6.
/// Throws NoRootInBracket when the determinant shows no sign change.
double solve_transition_curve(DeterminantFamily family, int k, double gamma, double omega_m,
                              std::size_t n = kDefaultTruncation,
                              double tol = kDefaultRootTol);

TransitionCurvePoint solve_transition_point(DeterminantFamily family, int k, double gamma,
                                            double omega_m, std::size_t n = kDefaultTruncation,
                                            double tol = kDefaultRootTol);

/// Published perturbation series for the odd tongues k = 1, 2, 3.
/// `max_order` truncates to powers gamma^p with p <= max_order; a negative
/// value keeps every printed term. Throws Unsupported for k > 3 or even
/// families.
double series_prediction(DeterminantFamily family, int k, double gamma, double omega_m,
                         int max_order = -1);

/// Highest power of gamma present in the printed series for tongue k.
int series_printed_order(int k);

/// |delta_OddSine - delta_OddCosine| for tongue k.
double tongue_width(int k, double gamma, double omega_m, std::size_t n = kDefaultTruncation);

/// |det(EvenCosine, n+1) - (4 dh / omega_m^2) det(EvenSine, n)|.
double coexistence_residual(double gamma, double delta_hat, double omega_m, std::size_t n);

/// coexistence_residual divided by max(|det(EvenCosine, n+1)|, |c det(EvenSine, n)|).
double coexistence_relative_residual(double gamma, double delta_hat, double omega_m,
                                     std::size_t n);

/// First damped tongue at leading order:
///   dh = omega_m^2 / 4 +/- (omega_m^3 / 32) sqrt(gamma^2 omega_m^2 - 16 beta^2).
/// Empty when gamma omega_m < 4 beta (no instability at this order).
std::optional<std::pair<double, double>> damped_first_tongue(double gamma, double beta,
                                                             double omega_m);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct TongueRow {
    DeterminantFamily family;
    int k;
    double gamma;
    std::optional<double> delta_hat;  ///< empty when the solver failed (gap)
};

/// Traces OddCosine and OddSine for k = 1..k_max over `gammas` (k-major).
std::vector<TongueRow> trace_tongues(int k_max, const std::vector<double>& gammas,
                                     double omega_m, std::size_t n = kDefaultTruncation);

/// CSV `family,k,gamma,delta_hat`; failed points are written with an empty
/// delta_hat field.
void write_tongues_csv(std::ostream& os, const std::vector<TongueRow>& rows);

}  // namespace parastab
