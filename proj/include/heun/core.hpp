#ifndef HEUN_CORE_HPP
#define HEUN_CORE_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace heun {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class Errc {
    invalid_argument,
    singular_point,          // z coincides with a finite singular point of the equation
    singular_value,          // requested value/derivative is unbounded at this point
    wrong_gamma_class,       // operation requires the other gamma family
    epsilon_zero,            // operation requires epsilon != 0
    no_convergence,          // series failed to settle within max_terms
    out_of_disc,             // evaluation point outside the convergence disc
    step_underflow,          // continuation step collapsed near a singular point
    max_steps_exceeded,
    singular_matrix,         // degenerate matching system
    far_seed_failure,        // asymptotic seed cannot reach the requested accuracy
    path_through_singularity,
    overflow,
    unsupported,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// The five parameters (q, alpha, gamma, delta, epsilon) of the confluent
/// Heun equation  f'' + (gamma/z + delta/(z-1) + epsilon) f'
///                   + (alpha z - q)/(z(z-1)) f = 0.
struct Params {
    Complex q{};
    Complex alpha{};
    Complex gamma{};
    Complex delta{};
    Complex epsilon{};

    friend bool operator==(const Params&, const Params&) = default;
};

/// Evaluation result: value, first derivative, error estimate, and the
/// number of series terms consumed.
struct EvalQuad {
    Complex f{};
    Complex df{};
    double r = 0.0;       // nonnegative error estimate
    long n_terms = 0;     // total series terms consumed
};

/// Tunables. far_field_R <= 0 means "auto": resolved from machine_eps via
/// asymptotics::far_field_radius (memoized per process).
struct Config {
    double kappa = 0.38;             // local-series radius fraction
    int n_diamond = 40;              // target term count per continuation step
    double near_one_radius = 0.05;
    double far_field_R = 0.0;        // <= 0 -> auto
    int max_terms = 2000;
    int max_steps = 20000;
    double tau_int = 1e-12;          // tolerance for integer-gamma detection
    double tau_zero = 0.0;           // tolerance for epsilon == 0 detection
    double machine_eps = 2.220446049250313e-16;
};

enum class Region {
    LocalZero,
    NearOne,
    FarField,
    Generic,
    OnCutZero,
    OnCutOne,
    SingularPoint,
};

const char* region_name(Region r);

/// Which local solution at z = 0: L is normalized to 1 at 0, S is the
/// companion solution (exponent 1-gamma, possibly logarithmic).
enum class Solution { L, S };

// ---------------------------------------------------------------------------
// Parameter classification
// ---------------------------------------------------------------------------

bool is_nonpositive_integer(Complex g, double tau_int);

inline bool gamma_nonpos_int(const Params& p, const Config& cfg) {
    return is_nonpositive_integer(p.gamma, cfg.tau_int);
}
inline bool gamma_is_one(const Params& p, const Config& cfg) {
    return std::abs(p.gamma - 1.0) <= cfg.tau_int;
}
inline bool epsilon_zero(const Params& p, const Config& cfg) {
    return std::abs(p.epsilon) <= cfg.tau_zero;
}

bool params_finite(const Params& p);

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Points exactly on the real axis are taken as the limit from the upper
/// half-plane: Im z = -0.0 becomes +0.0.
Complex upper_limit(Complex z);

/// far_field_R from cfg, resolving the "auto" setting once per machine_eps.
double resolved_far_field_R(const Config& cfg);

/// Region dispatch. Precedence: SingularPoint > LocalZero > NearOne >
/// FarField > OnCut > Generic.
Region classify_point(const Params& p, Complex z, const Config& cfg);

/// Coefficients (c1, c0) such that the equation reads f'' + c1 f' + c0 f = 0.
std::pair<Complex, Complex> ode_coefficients(const Params& p, Complex z);

} // namespace heun

#endif
