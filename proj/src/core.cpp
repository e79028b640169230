#include "heun/core.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "heun/asymptotics.hpp"

namespace heun {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::invalid_argument: return "invalid_argument";
        case Errc::singular_point: return "singular_point";
        case Errc::singular_value: return "singular_value";
        case Errc::wrong_gamma_class: return "wrong_gamma_class";
        case Errc::epsilon_zero: return "epsilon_zero";
        case Errc::no_convergence: return "no_convergence";
        case Errc::out_of_disc: return "out_of_disc";
        case Errc::step_underflow: return "step_underflow";
        case Errc::max_steps_exceeded: return "max_steps_exceeded";
        case Errc::singular_matrix: return "singular_matrix";
        case Errc::far_seed_failure: return "far_seed_failure";
        case Errc::path_through_singularity: return "path_through_singularity";
        case Errc::overflow: return "overflow";
        case Errc::unsupported: return "unsupported";
    }
    return "unknown";
}

const char* region_name(Region r) {
    switch (r) {
        case Region::LocalZero: return "local_zero";
        case Region::NearOne: return "near_one";
        case Region::FarField: return "far_field";
        case Region::Generic: return "generic";
        case Region::OnCutZero: return "on_cut_zero";
        case Region::OnCutOne: return "on_cut_one";
        case Region::SingularPoint: return "singular_point";
    }
    return "unknown";
}

bool is_nonpositive_integer(Complex g, double tau_int) {
    if (std::abs(g.imag()) > tau_int)
        return false;
    double re = g.real();
    if (re > tau_int)
        return false;
    return std::abs(re - std::round(re)) <= tau_int;
}

bool params_finite(const Params& p) {
    auto ok = [](Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); };
    return ok(p.q) && ok(p.alpha) && ok(p.gamma) && ok(p.delta) && ok(p.epsilon);
}

Complex upper_limit(Complex z) {
    if (z.imag() == 0.0)
        return Complex(z.real(), +0.0);
    return z;
}

double resolved_far_field_R(const Config& cfg) {
    if (cfg.far_field_R > 0.0)
        return cfg.far_field_R;
    static std::mutex mtx;
    static std::map<double, double> memo;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = memo.find(cfg.machine_eps);
    if (it != memo.end())
        return it->second;
    double R = asymptotics::far_field_radius(cfg.machine_eps);
    memo.emplace(cfg.machine_eps, R);
    return R;
}

Region classify_point(const Params& p, Complex z, const Config& cfg) {
    z = upper_limit(z);
    if (z == Complex(0.0, 0.0) || z == Complex(1.0, 0.0))
        return Region::SingularPoint;
    if (std::abs(z) < cfg.kappa)
        return Region::LocalZero;
    if (std::abs(z - 1.0) < cfg.near_one_radius)
        return Region::NearOne;
    if (std::abs(p.epsilon) > cfg.tau_zero &&
        std::abs(p.epsilon * z) > resolved_far_field_R(cfg))
        return Region::FarField;
    if (z.imag() == 0.0 && z.real() < 0.0)
        return Region::OnCutZero;
    if (z.imag() == 0.0 && z.real() > 1.0)
        return Region::OnCutOne;
    return Region::Generic;
}

std::pair<Complex, Complex> ode_coefficients(const Params& p, Complex z) {
    if (z == Complex(0.0, 0.0) || z == Complex(1.0, 0.0))
        throw Error(Errc::singular_point, "ode_coefficients: z is a singular point");
    Complex c1 = p.gamma / z + p.delta / (z - 1.0) + p.epsilon;
    Complex c0 = (p.alpha * z - p.q) / (z * (z - 1.0));
    return {c1, c0};
}

} // namespace heun
