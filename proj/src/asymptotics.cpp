#include "heun/asymptotics.hpp"

#include <cmath>
#include <string>

#include "heun/series_zero.hpp"

namespace heun::asymptotics {

namespace {

void require_epsilon(const Params& p) {
    if (p.epsilon == Complex{})
        throw Error(Errc::epsilon_zero, "formal solution at infinity needs epsilon != 0");
}

Complex q_tilde(const Params& p, Complex a, int n) {
    double dn = n;
    return 1.0 + (-p.q + a * (2.0 * dn - p.gamma - p.delta - 1.0 + a) +
                  (p.gamma + p.delta - p.epsilon + 1.0) * (1.0 - dn) +
                  p.alpha - 1.0) / (dn * dn);
}

Complex r_tilde(const Params& p, Complex a, int n) {
    double dn = n;
    return p.epsilon * (dn - 2.0 + a) * (p.gamma - dn + 1.0 - a) /
           (dn * dn * (dn - 1.0));
}

} // namespace

std::vector<Complex> beta_coeffs(const Params& p, int up_to) {
    require_epsilon(p);
    Complex a = p.alpha / p.epsilon;
    std::vector<Complex> beta{1.0};
    for (int n = 1; n <= up_to; ++n) {
        Complex v = q_tilde(p, a, n) * beta[n - 1];
        if (n >= 2)
            v += r_tilde(p, a, n) * beta[n - 2];
        beta.push_back(v);
    }
    return beta;
}

EvalQuad eval_a_inf(const Params& p, Complex z, const Config& cfg) {
    require_epsilon(p);
    if (z == Complex{})
        throw Error(Errc::invalid_argument, "eval_a_inf: z = 0");
    Complex a = p.alpha / p.epsilon;
    Complex u = 1.0 / (p.epsilon * z);

    // Optimal truncation: sum while the term magnitudes decrease, stop at
    // the least term; r is the first omitted term times the prefactor.
    Complex sum = 1.0;     // beta_0 term
    Complex nsum{};        // sum of n * term_n, for the derivative
    Complex b_prev2{}, b_prev = 1.0;
    Complex g = 1.0;       // n! * u^n
    double prev_mag = 1.0;
    double omitted = 0.0;
    long n_used = 1;
    for (int n = 1; n < cfg.max_terms; ++n) {
        Complex bn = q_tilde(p, a, n) * b_prev;
        if (n >= 2)
            bn += r_tilde(p, a, n) * b_prev2;
        g *= static_cast<double>(n) * u;
        Complex term = bn * g;
        double mag = std::abs(term);
        if (mag >= prev_mag) {
            omitted = mag;
            break;
        }
        sum += term;
        nsum += static_cast<double>(n) * term;
        ++n_used;
        b_prev2 = b_prev;
        b_prev = bn;
        omitted = mag;     // in case the loop ends by the tiny-term test
        prev_mag = mag;
        if (mag <= cfg.machine_eps * std::abs(sum) * 0.01)
            break;
    }

    Complex pre = std::pow(-z, -a);
    EvalQuad out;
    out.f = pre * sum;
    out.df = -(pre / z) * (a * sum + nsum);
    out.r = std::max(omitted * std::abs(pre),
                     cfg.machine_eps * std::abs(out.f));
    out.n_terms = n_used;
    if (!std::isfinite(out.f.real()) || !std::isfinite(out.f.imag()))
        throw Error(Errc::overflow, "eval_a_inf: overflow in prefactor");
    return out;
}

EvalQuad eval_b_inf(const Params& p, Complex z, const Config& cfg) {
    require_epsilon(p);
    double x = -(p.epsilon * z).real();
    if (x > 700.0)
        throw Error(Errc::overflow,
                    "eval_b_inf: |e^{-eps z}| overflows, log10|..| = " +
                        std::to_string(x / 2.302585092994046));
    EvalQuad inner = eval_a_inf(series_zero::exp_transform(p), z, cfg);
    Complex E = std::exp(-p.epsilon * z);
    EvalQuad out;
    out.f = E * inner.f;
    out.df = E * (inner.df - p.epsilon * inner.f);
    out.r = std::abs(E) * inner.r;
    out.n_terms = inner.n_terms;
    return out;
}

std::vector<Complex> eps_zero_coeffs(const Params& p, int sign, int up_to) {
    if (p.epsilon != Complex{})
        throw Error(Errc::unsupported, "eps_zero_coeffs: epsilon must be 0");
    if (p.alpha == Complex{})
        throw Error(Errc::unsupported, "eps_zero_coeffs: alpha must be nonzero");
    if (sign != 1 && sign != -1)
        throw Error(Errc::invalid_argument, "eps_zero_coeffs: sign must be +-1");
    Complex sa = std::sqrt(p.alpha);
    Complex gd = p.gamma + p.delta;
    double s = sign;
    std::vector<Complex> beta{1.0};
    const Complex i{0.0, 1.0};
    for (int n = 1; n <= up_to; ++n) {
        double dn = n;
        Complex P = 4.0 * i * dn * sa;
        Complex Q = (dn - 1.5) * (dn + 0.5) + 4.0 * (p.alpha - p.q) - gd * (gd - 2.0);
        Complex v = s * Q * beta[n - 1];
        if (n >= 2) {
            Complex R = 4.0 * i * sa * (dn - 2.0 + p.delta);
            v += R * beta[n - 2];
        }
        if (n >= 3) {
            Complex S = -(dn - 1.5 - p.gamma + p.delta) * (dn - 3.5 + gd);
            v += s * S * beta[n - 3];
        }
        beta.push_back(v / P);
    }
    return beta;
}

double far_field_radius(double machine_eps) {
    if (!(machine_eps > 0.0 && machine_eps < 1.0))
        throw Error(Errc::invalid_argument, "far_field_radius: eps outside (0,1)");
    for (double R = 0.5; R <= 2000.0; R += 0.5) {
        double logR = std::log(R);
        double min_log = 0.0;   // n = 0 term
        for (int n = 1; n <= 400; ++n) {
            double lt = std::lgamma(n + 1.0) - n * logR;
            if (lt < min_log)
                min_log = lt;
        }
        if (std::exp(min_log) < machine_eps)
            return R;
    }
    throw Error(Errc::invalid_argument, "far_field_radius: no radius found");
}

} // namespace heun::asymptotics
