#include "heun/taylor_step.hpp"

#include <cmath>

#include "detail.hpp"

namespace heun::taylor_step {

namespace {

void extend_step(const Params& p, Complex z0, std::vector<Complex>& c, int up_to) {
    for (int n = static_cast<int>(c.size()); n <= up_to; ++n) {
        double dn = n;
        Complex P = dn * (1.0 - dn) * z0 * (z0 - 1.0);
        Complex Q = (dn - 1.0) * (p.epsilon * z0 * z0 +
                                  z0 * (p.gamma + p.delta - p.epsilon + 2.0 * (dn - 2.0)) -
                                  p.gamma - dn + 2.0);
        Complex R = z0 * (2.0 * (dn - 2.0) * p.epsilon + p.alpha) +
                    (dn - 2.0) * (p.gamma - p.epsilon + p.delta + dn - 3.0) - p.q;
        Complex S = (dn - 3.0) * p.epsilon + p.alpha;
        Complex prev3 = n >= 3 ? c[n - 3] : Complex{};
        c.push_back((Q * c[n - 1] + R * c[n - 2] + S * prev3) / P);
    }
}

} // namespace

std::vector<Complex> step_coeffs(const Params& p, const StepSeed& seed, int up_to) {
    if (seed.z0 == Complex{} || seed.z0 == Complex{1.0})
        throw Error(Errc::singular_point, "step_coeffs: center is a singular point");
    std::vector<Complex> c{seed.H0, seed.H0p};
    if (up_to >= 2)
        extend_step(p, seed.z0, c, up_to);
    c.resize(up_to + 1);
    return c;
}

EvalQuad eval_step(const Params& p, const StepSeed& seed, Complex z, const Config& cfg) {
    if (seed.z0 == Complex{} || seed.z0 == Complex{1.0})
        throw Error(Errc::singular_point, "eval_step: center is a singular point");
    Complex w = z - seed.z0;
    double disc = std::min(std::abs(seed.z0), std::abs(seed.z0 - 1.0));
    if (std::abs(w) >= disc)
        throw Error(Errc::out_of_disc, "eval_step: point outside the convergence disc");
    if (w == Complex{})
        return {seed.H0, seed.H0p, 0.0, 1};

    // Work with coefficients scaled by s^n, s = |w|: near a singular point
    // the raw c_n grow like d^{1/2-n} and overflow long before the terms do,
    // while the scaled ones stay bounded and the powers of u = w/s have unit
    // modulus.
    const Complex z0 = seed.z0;
    const double s = std::abs(w);
    const Complex u = w / s;
    std::vector<Complex> c{seed.H0, s * seed.H0p};
    const double s2 = s * s, s3 = s2 * s;
    auto extend_scaled = [&](int up_to) {
        for (int m = static_cast<int>(c.size()); m <= up_to; ++m) {
            double dm = m;
            Complex P = dm * (1.0 - dm) * z0 * (z0 - 1.0);
            Complex Q = (dm - 1.0) * (p.epsilon * z0 * z0 +
                                      z0 * (p.gamma + p.delta - p.epsilon + 2.0 * (dm - 2.0)) -
                                      p.gamma - dm + 2.0);
            Complex R = z0 * (2.0 * (dm - 2.0) * p.epsilon + p.alpha) +
                        (dm - 2.0) * (p.gamma - p.epsilon + p.delta + dm - 3.0) - p.q;
            Complex S = (dm - 3.0) * p.epsilon + p.alpha;
            Complex prev3 = m >= 3 ? c[m - 3] : Complex{};
            c.push_back((s * Q * c[m - 1] + s2 * R * c[m - 2] + s3 * S * prev3) / P);
        }
    };

    Complex f{}, fp{}, fpp{};
    Complex un = 1.0, unm1{}, unm2{};
    detail::Settle settle;
    double last_term = 0.0;
    long n = 0;
    bool hit_max = true;
    for (; n < cfg.max_terms; ++n) {
        if (n >= static_cast<long>(c.size()))
            extend_scaled(static_cast<int>(n) + 63);
        Complex cn = c[n];
        double dn = static_cast<double>(n);
        f += cn * un;
        if (n >= 1)
            fp += dn * cn * unm1;
        if (n >= 2)
            fpp += dn * (dn - 1.0) * cn * unm2;
        last_term = std::abs(cn);
        unm2 = unm1;
        unm1 = un;
        un *= u;
        if (settle.update(f, fp)) {
            hit_max = false;
            ++n;
            break;
        }
    }
    fp /= s;
    fpp /= s2;
    return detail::finish_quad(p, z, f, fp, fpp, last_term, n, hit_max, cfg);
}

bool near_z_star(const Params& p, Complex z) {
    return std::abs(p.q - p.alpha * z) <
           1e-2 * (1.0 + std::abs(p.q) + std::abs(p.alpha) * std::abs(z));
}

std::optional<double> residual_estimate(const Params& p, Complex z,
                                        Complex sum, Complex sum1, Complex sum2) {
    if (near_z_star(p, z))
        return std::nullopt;
    Complex denom = p.q - p.alpha * z;
    Complex under = (z * (z - 1.0) * sum2 +
                     (p.gamma * (z - 1.0) + p.delta * z +
                      p.epsilon * z * (z - 1.0)) * sum1) / denom;
    double r = std::abs(under - sum);
    if (!std::isfinite(r))
        return std::nullopt;
    return r;
}

double heuristic_estimate(double last_term_mag, long n_terms,
                          double partial_sum_mag, double machine_eps) {
    double dn = static_cast<double>(n_terms);
    return std::sqrt(dn) * last_term_mag + machine_eps * dn * partial_sum_mag;
}

} // namespace heun::taylor_step
