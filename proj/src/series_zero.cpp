#include "heun/series_zero.hpp"

#include <cmath>

#include "detail.hpp"

namespace heun::series_zero {

namespace {

// P_n, Q_n, R_n of the three-term recurrence shared by every local series
// at z = 0.
struct PQR {
    Complex P, Q, R;
};

PQR pqr(const Params& p, int n) {
    double dn = n;
    return {dn * (p.gamma - 1.0 + dn),
            -p.q + (dn - 1.0) * (p.gamma + p.delta - p.epsilon + dn - 2.0),
            (dn - 2.0) * p.epsilon + p.alpha};
}

// Extra coefficients of the six-term relation tying the non-log series to
// the log one.
struct STU {
    Complex S, T, U;
};

STU stu(const Params& p, int n) {
    double dn = n;
    return {1.0 - p.gamma - 2.0 * dn,
            p.gamma + p.delta - p.epsilon + 2.0 * dn - 3.0,
            p.epsilon};
}

int n_star_of(const Params& p) {
    return 1 - static_cast<int>(std::lround(p.gamma.real()));
}

void extend_generic(const Params& p, std::vector<Complex>& b, int up_to) {
    for (int n = static_cast<int>(b.size()); n <= up_to; ++n) {
        auto [P, Q, R] = pqr(p, n);
        Complex prev2 = n >= 2 ? b[n - 2] : Complex{};
        b.push_back((Q * b[n - 1] + R * prev2) / P);
    }
}

void extend_log(const Params& p, LogCoeffs& lc, int up_to) {
    const int ns = lc.n_star;
    for (int n = static_cast<int>(lc.c.size()); n <= up_to; ++n) {
        auto [P, Q, R] = pqr(p, n);
        Complex c1 = lc.c[n - 1];
        Complex c2 = n >= 2 ? lc.c[n - 2] : Complex{};
        if (n < ns) {
            lc.c.push_back((Q * c1 + R * c2) / P);
            lc.s.push_back({});
        } else if (n == ns) {
            // P_{n*} vanishes; c_{n*} is the free coefficient (set to 0) and
            // the relation itself seeds s_{n*}.
            lc.c.push_back({});
            lc.s.push_back((Q * c1 + R * c2) / static_cast<double>(ns));
        } else {
            Complex s1 = lc.s[n - 1];
            Complex s2 = n >= 2 ? lc.s[n - 2] : Complex{};
            Complex sn = (Q * s1 + R * s2) / P;
            lc.s.push_back(sn);
            auto [S, T, U] = stu(p, n);
            lc.c.push_back((Q * c1 + R * c2 + S * sn + T * s1 + U * s2) / P);
        }
    }
}

void extend_gamma_one(const Params& p, GammaOneCoeffs& gc, int up_to) {
    for (int n = static_cast<int>(gc.t.size()); n <= up_to; ++n) {
        auto [P, Q, R] = pqr(p, n);
        Complex t1 = gc.t[n - 1];
        Complex t2 = n >= 2 ? gc.t[n - 2] : Complex{};
        Complex tn = (Q * t1 + R * t2) / P;
        gc.t.push_back(tn);
        Complex d1 = gc.d[n - 1];
        Complex d2 = n >= 2 ? gc.d[n - 2] : Complex{};
        auto [S, T, U] = stu(p, n);
        gc.d.push_back((Q * d1 + R * d2 + S * tn + T * t1 + U * t2) / P);
    }
}

// Sum  main(z) + log(z) * aux(z)  with termwise first and second
// derivatives. aux empty (all zero) gives the plain power series.
template <class MainAt, class AuxAt>
EvalQuad sum_local(const Params& p, Complex z, const Config& cfg,
                   MainAt&& main_at, AuxAt&& aux_at, bool has_log) {
    Complex L = has_log ? std::log(z) : Complex{};
    Complex inv_z = has_log ? 1.0 / z : Complex{};

    Complex cf{}, cfp{}, cfpp{};  // non-log sums
    Complex sf{}, sfp{}, sfpp{};  // log-factor sums
    Complex zn = 1.0, znm1{}, znm2{};
    detail::Settle settle;
    double last_term = 0.0;
    Complex f{}, fp{};
    long n = 0;
    bool hit_max = true;

    for (; n < cfg.max_terms; ++n) {
        Complex cn = main_at(static_cast<int>(n));
        cf += cn * zn;
        double dn = static_cast<double>(n);
        if (n >= 1)
            cfp += dn * cn * znm1;
        if (n >= 2)
            cfpp += dn * (dn - 1.0) * cn * znm2;
        last_term = std::abs(cn * zn);
        if (has_log) {
            Complex sn = aux_at(static_cast<int>(n));
            sf += sn * zn;
            if (n >= 1)
                sfp += dn * sn * znm1;
            if (n >= 2)
                sfpp += dn * (dn - 1.0) * sn * znm2;
            last_term += std::abs(L) * std::abs(sn * zn);
        }
        f = cf;
        fp = cfp;
        if (has_log) {
            f += L * sf;
            fp += L * sfp + sf * inv_z;
        }
        znm2 = znm1;
        znm1 = zn;
        zn *= z;
        if (settle.update(f, fp)) {
            hit_max = false;
            ++n;
            break;
        }
    }
    Complex fpp = cfpp;
    if (has_log)
        fpp += L * sfpp + 2.0 * sfp * inv_z - sf * inv_z * inv_z;
    return detail::finish_quad(p, z, f, fp, fpp, last_term, n, hit_max, cfg);
}

EvalQuad eval_generic(const Params& p, Complex z, const Config& cfg) {
    std::vector<Complex> b{1.0};
    auto main_at = [&](int n) {
        if (n >= static_cast<int>(b.size()))
            extend_generic(p, b, n + 63);
        return b[n];
    };
    return sum_local(p, z, cfg, main_at, [](int) { return Complex{}; }, false);
}

EvalQuad eval_log_family(const Params& p, Complex z, const Config& cfg) {
    LogCoeffs lc;
    lc.n_star = n_star_of(p);
    lc.c = {1.0};
    lc.s = {Complex{}};
    auto grow = [&](int n) {
        if (n >= static_cast<int>(lc.c.size()))
            extend_log(p, lc, n + 63);
    };
    auto main_at = [&](int n) { grow(n); return lc.c[n]; };
    auto aux_at = [&](int n) { grow(n); return lc.s[n]; };
    return sum_local(p, z, cfg, main_at, aux_at, true);
}

EvalQuad eval_gamma_one_s(const Params& p, Complex z, const Config& cfg) {
    GammaOneCoeffs gc;
    gc.d = {Complex{}};
    gc.t = {1.0};
    auto grow = [&](int n) {
        if (n >= static_cast<int>(gc.t.size()))
            extend_gamma_one(p, gc, n + 63);
    };
    auto main_at = [&](int n) { grow(n); return gc.d[n]; };
    auto aux_at = [&](int n) { grow(n); return gc.t[n]; };
    return sum_local(p, z, cfg, main_at, aux_at, true);
}

} // namespace

std::vector<Complex> coeffs_generic(const Params& p, int up_to, const Config& cfg) {
    if (gamma_nonpos_int(p, cfg))
        throw Error(Errc::wrong_gamma_class,
                    "coeffs_generic: gamma is a nonpositive integer");
    std::vector<Complex> b{1.0};
    extend_generic(p, b, up_to);
    b.resize(up_to + 1);
    return b;
}

LogCoeffs coeffs_log(const Params& p, int up_to, const Config& cfg) {
    if (!gamma_nonpos_int(p, cfg))
        throw Error(Errc::wrong_gamma_class,
                    "coeffs_log: gamma is not a nonpositive integer");
    LogCoeffs lc;
    lc.n_star = n_star_of(p);
    lc.c = {1.0};
    lc.s = {Complex{}};
    extend_log(p, lc, std::max(up_to, lc.n_star));
    lc.c.resize(std::max(up_to, lc.n_star) + 1);
    lc.s.resize(lc.c.size());
    return lc;
}

GammaOneCoeffs coeffs_gamma_one(const Params& p, int up_to, const Config& cfg) {
    if (!gamma_is_one(p, cfg))
        throw Error(Errc::wrong_gamma_class, "coeffs_gamma_one: gamma != 1");
    GammaOneCoeffs gc;
    gc.d = {Complex{}};
    gc.t = {1.0};
    extend_gamma_one(p, gc, up_to);
    gc.d.resize(up_to + 1);
    gc.t.resize(up_to + 1);
    return gc;
}

EvalQuad eval_cl_at0(const Params& p, Complex z, const Config& cfg) {
    z = upper_limit(z);
    if (std::abs(z) >= 1.0)
        throw Error(Errc::out_of_disc, "eval_cl_at0: |z| >= 1");
    bool log_family = gamma_nonpos_int(p, cfg);
    if (z == Complex{}) {
        if (!log_family)
            return {1.0, -p.q / p.gamma, 0.0, 1};
        if (std::abs(p.gamma) <= cfg.tau_int) {
            // gamma = 0: f'(z) ~ -q log z unless q = 0.
            if (std::abs(p.q) == 0.0)
                return {1.0, Complex{}, 0.0, 1};
            throw Error(Errc::singular_value,
                        "eval_cl_at0: derivative diverges like -q*log(z) at z=0 "
                        "for gamma=0");
        }
        return {1.0, -p.q / p.gamma, 0.0, 1};
    }
    return log_family ? eval_log_family(p, z, cfg) : eval_generic(p, z, cfg);
}

EvalQuad eval_cs_at0(const Params& p, Complex z, const Config& cfg) {
    z = upper_limit(z);
    if (std::abs(z) >= 1.0)
        throw Error(Errc::out_of_disc, "eval_cs_at0: |z| >= 1");
    if (gamma_is_one(p, cfg)) {
        if (z == Complex{})
            throw Error(Errc::singular_value,
                        "eval_cs_at0: logarithmic singularity at z=0");
        return eval_gamma_one_s(p, z, cfg);
    }
    Complex e = 1.0 - p.gamma;  // exponent at 0
    if (z == Complex{}) {
        if (gamma_nonpos_int(p, cfg)) {
            int ns = n_star_of(p);
            return {Complex{}, ns == 1 ? Complex{1.0} : Complex{}, 0.0, 1};
        }
        if (p.gamma.real() < 0.0)
            return {Complex{}, Complex{}, 0.0, 1};
        throw Error(Errc::singular_value,
                    "eval_cs_at0: value or derivative unbounded at z=0");
    }
    Params inner{p.q + (p.gamma - 1.0) * (p.delta - p.epsilon),
                 p.alpha + p.epsilon * (1.0 - p.gamma),
                 2.0 - p.gamma, p.delta, p.epsilon};
    EvalQuad g = eval_cl_at0(inner, z, cfg);
    Complex pw = std::pow(z, e);
    EvalQuad out;
    out.f = pw * g.f;
    out.df = pw * (g.df + e / z * g.f);
    out.r = std::abs(pw) * g.r;
    out.n_terms = g.n_terms;
    return out;
}

Params exp_transform(const Params& p) {
    return {p.q - p.epsilon * p.gamma,
            p.alpha - p.epsilon * (p.gamma + p.delta),
            p.gamma, p.delta, -p.epsilon};
}

Complex log_mixing_constant(const Params& p, const Config& cfg) {
    if (!gamma_nonpos_int(p, cfg))
        throw Error(Errc::wrong_gamma_class,
                    "log_mixing_constant: gamma is not a nonpositive integer");
    LogCoeffs lc = coeffs_log(p, n_star_of(p), cfg);
    const int ns = lc.n_star;
    Complex acc{};
    Complex epow = 1.0;   // epsilon^k
    double fact = 1.0;    // k!
    for (int k = 0; k <= ns; ++k) {  // k = n_star - n
        acc += lc.c[ns - k] * epow / fact;
        epow *= p.epsilon;
        fact *= static_cast<double>(k + 1);
    }
    return -acc;
}

} // namespace heun::series_zero
