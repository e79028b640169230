#include "heun/connection.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>

#include "heun/asymptotics.hpp"
#include "heun/continuation.hpp"
#include "heun/series_zero.hpp"
#include "detail.hpp"

namespace heun::connection {

namespace {

constexpr double kMatchPointOne = 0.5;     // matching point for the z=1 basis
constexpr double kMatchRadiusInf = 1.25;   // |z| of the infinity matching point
constexpr double kDetGuard = 1e-10;

std::atomic<long> g_solves{0};

struct CacheKey {
    std::array<double, 10> p;
    int kind;   // 0 = OneL, 1 = OneS, 2 = Inf sector +, 3 = Inf sector -

    bool operator<(const CacheKey& o) const {
        if (kind != o.kind)
            return kind < o.kind;
        return p < o.p;
    }
};

CacheKey make_key(const Params& p, int kind) {
    return {{p.q.real(), p.q.imag(), p.alpha.real(), p.alpha.imag(),
             p.gamma.real(), p.gamma.imag(), p.delta.real(), p.delta.imag(),
             p.epsilon.real(), p.epsilon.imag()},
            kind};
}

std::mutex g_mtx;
std::map<CacheKey, OnePair> g_one_cache;
std::map<CacheKey, InfSet> g_inf_cache;

// Solve [[a11,a12],[a21,a22]] x = [b1;b2] with a relative determinant guard.
std::pair<Complex, Complex> solve2(Complex a11, Complex a12, Complex a21,
                                   Complex a22, Complex b1, Complex b2) {
    ++g_solves;
    Complex det = a11 * a22 - a12 * a21;
    double row1 = std::hypot(std::abs(a11), std::abs(a12));
    double row2 = std::hypot(std::abs(a21), std::abs(a22));
    if (std::abs(det) < kDetGuard * row1 * row2)
        throw Error(Errc::singular_matrix, "matching system is degenerate");
    return {(b1 * a22 - a12 * b2) / det, (a11 * b2 - b1 * a21) / det};
}

Params mirror_params(const Params& p) {
    return {p.q - p.alpha, -p.alpha, p.delta, p.gamma, -p.epsilon};
}

// In-sector anti-Stokes direction: arg(+-i/eps), the candidate strictly
// inside the sector; a real-axis candidate is nudged into the sector.
double pick_theta(Complex epsilon, int sector) {
    Complex cand = Complex{0.0, 1.0} / epsilon;
    double th = std::arg(cand);
    if (sector * cand.imag() > 0.0)
        return th;
    if (sector * cand.imag() < 0.0)
        return std::arg(-cand);
    // cand is real: boundary between the sectors
    double nudge = 1e-6;
    if (std::abs(th) < 1.5)   // th ~ 0
        return sector > 0 ? nudge : -nudge;
    return sector > 0 ? M_PI - nudge : -M_PI + nudge;
}

// E-type matching for one parameter set: continue the power-type solution
// from the far seed inward to zhat and express it in the (L, S) basis.
struct MatchOut {
    Complex c1, c2;
    double residual;
    EvalQuad f1, f2;   // basis evaluations at zhat, reusable
};

MatchOut match_a_inf(const Params& p, double theta, const Config& cfg) {
    double R = resolved_far_field_R(cfg);
    Complex zhat = std::polar(kMatchRadiusInf, theta);
    Complex zfar = std::polar(R / std::abs(p.epsilon), theta);
    EvalQuad seed = asymptotics::eval_a_inf(p, zfar, cfg);
    if (seed.r > 1e-8 * (1.0 + std::abs(seed.f)))
        throw Error(Errc::far_seed_failure,
                    "optimal truncation too inaccurate at the far seed");
    continuation::Path ray{{zfar, zhat}};
    EvalQuad f0 = continuation::continue_along(p, ray, seed, cfg).first;
    EvalQuad f1 = continuation::eval_cl(p, zhat, cfg);
    EvalQuad f2 = continuation::eval_cs(p, zhat, cfg);
    auto [c1, c2] = solve2(f1.f, f2.f, f1.df, f2.df, f0.f, f0.df);
    double res = f0.r + std::abs(c1) * f1.r + std::abs(c2) * f2.r;
    return {c1, c2, res, f1, f2};
}

InfSet compute_inf(const Params& p, int sector, const Config& cfg) {
    if (p.epsilon == Complex{})
        throw Error(Errc::epsilon_zero, "match_at_infinity: epsilon = 0");
    double theta = pick_theta(p.epsilon, sector);
    InfSet set;
    MatchOut e = match_a_inf(p, theta, cfg);
    set.E1 = e.c1;
    set.E2 = e.c2;
    set.residual = e.residual;

    Params t = series_zero::exp_transform(p);
    if (detail::is_positive_integer_ge2(p.gamma, cfg.tau_int)) {
        // The companion solution does not transform cleanly for integer
        // gamma >= 2; match the exponential partner directly in the
        // original basis, seeded from its far-field form.
        double R = resolved_far_field_R(cfg);
        Complex zhat = std::polar(kMatchRadiusInf, theta);
        Complex zfar = std::polar(R / std::abs(p.epsilon), theta);
        EvalQuad a = asymptotics::eval_a_inf(t, zfar, cfg);
        Complex E = std::exp(-p.epsilon * zfar);
        EvalQuad seed{E * a.f, E * (a.df - p.epsilon * a.f),
                      std::abs(E) * a.r, a.n_terms};
        continuation::Path ray{{zfar, zhat}};
        EvalQuad f0 = continuation::continue_along(p, ray, seed, cfg).first;
        auto [d1, d2] = solve2(e.f1.f, e.f2.f, e.f1.df, e.f2.df, f0.f, f0.df);
        set.D1 = d1;
        set.D2 = d2;
        set.residual += f0.r;
    } else {
        MatchOut d = match_a_inf(t, theta, cfg);
        set.D1 = d.c1;
        set.D2 = d.c2;
        set.residual += d.residual;
        if (gamma_nonpos_int(p, cfg)) {
            // e^{-eps z} L(trans) = L + A*S in the original basis.
            Complex A = series_zero::log_mixing_constant(p, cfg);
            set.D2 += A * set.D1;
        }
    }

    Complex det = set.E1 * set.D2 - set.E2 * set.D1;
    double row1 = std::hypot(std::abs(set.E1), std::abs(set.E2));
    double row2 = std::hypot(std::abs(set.D1), std::abs(set.D2));
    if (std::abs(det) < kDetGuard * row1 * row2)
        throw Error(Errc::singular_matrix, "connection matrix is degenerate");
    set.d11 = set.D2 / det;
    set.d12 = -set.E2 / det;
    set.d21 = -set.D1 / det;
    set.d22 = set.E1 / det;
    return set;
}

} // namespace

OnePair match_at_one(const Params& p, Solution which, const Config& cfg) {
    CacheKey key = make_key(p, which == Solution::L ? 0 : 1);
    {
        std::lock_guard<std::mutex> lock(g_mtx);
        auto it = g_one_cache.find(key);
        if (it != g_one_cache.end())
            return it->second;
    }
    Params m = mirror_params(p);
    Complex zhat{kMatchPointOne};
    EvalQuad f0 = which == Solution::L ? continuation::eval_cl(p, zhat, cfg)
                                       : continuation::eval_cs(p, zhat, cfg);
    EvalQuad f1 = continuation::eval_cl(m, 1.0 - zhat, cfg);
    EvalQuad f2 = continuation::eval_cs(m, 1.0 - zhat, cfg);
    auto [c1, c2] = solve2(f1.f, f2.f, -f1.df, -f2.df, f0.f, f0.df);
    OnePair pair{c1, c2, f0.r + std::abs(c1) * f1.r + std::abs(c2) * f2.r};
    std::lock_guard<std::mutex> lock(g_mtx);
    return g_one_cache.emplace(key, pair).first->second;
}

InfSet match_at_infinity(const Params& p, int sector, const Config& cfg) {
    if (sector != 1 && sector != -1)
        throw Error(Errc::invalid_argument, "match_at_infinity: sector must be +-1");
    CacheKey key = make_key(p, sector > 0 ? 2 : 3);
    {
        std::lock_guard<std::mutex> lock(g_mtx);
        auto it = g_inf_cache.find(key);
        if (it != g_inf_cache.end())
            return it->second;
    }
    InfSet set = compute_inf(p, sector, cfg);
    std::lock_guard<std::mutex> lock(g_mtx);
    return g_inf_cache.emplace(key, set).first->second;
}

EvalQuad eval_near_one(const Params& p, Complex z, Solution which, const Config& cfg) {
    z = upper_limit(z);
    OnePair c = match_at_one(p, which, cfg);
    Params m = mirror_params(p);
    Complex w = 1.0 - z;
    bool drop_s = std::abs(c.c2) <= 1e-10 * std::max(1.0, std::abs(c.c1));
    EvalQuad f1, f2;
    if (w == Complex{}) {
        f1 = series_zero::eval_cl_at0(m, Complex{}, cfg);
        if (!drop_s)
            f2 = series_zero::eval_cs_at0(m, Complex{}, cfg);
    } else {
        f1 = continuation::eval_cl(m, w, cfg);
        f2 = continuation::eval_cs(m, w, cfg);
    }
    EvalQuad out;
    out.f = c.c1 * f1.f + c.c2 * f2.f;
    out.df = -c.c1 * f1.df - c.c2 * f2.df;
    out.r = std::abs(c.c1) * f1.r + std::abs(c.c2) * f2.r;
    out.n_terms = f1.n_terms + f2.n_terms;
    if (!std::isfinite(out.f.real()) || !std::isfinite(out.df.real()) ||
        !std::isfinite(out.f.imag()) || !std::isfinite(out.df.imag()))
        throw Error(Errc::singular_value, "eval_near_one: unbounded combination");
    return out;
}

EvalQuad eval_far_field(const Params& p, Complex z, Solution which, const Config& cfg) {
    z = upper_limit(z);
    if (p.epsilon == Complex{}) {
        // No far-field machinery for eps = 0; plain continuation.
        return which == Solution::L ? continuation::eval_cl(p, z, cfg)
                                    : continuation::eval_cs(p, z, cfg);
    }
    int sector = z.imag() > 0.0 ? 1 : (z.imag() < 0.0 ? -1 : 1);
    InfSet set = match_at_infinity(p, sector, cfg);
    EvalQuad a = asymptotics::eval_a_inf(p, z, cfg);
    EvalQuad b = asymptotics::eval_b_inf(p, z, cfg);
    Complex d1 = which == Solution::L ? set.d11 : set.d21;
    Complex d2 = which == Solution::L ? set.d12 : set.d22;
    EvalQuad out;
    out.f = d1 * a.f + d2 * b.f;
    out.df = d1 * a.df + d2 * b.df;
    out.r = std::abs(d1) * a.r + std::abs(d2) * b.r;
    out.n_terms = a.n_terms + b.n_terms;
    return out;
}

long matching_solve_count() { return g_solves.load(); }

void clear_cache() {
    std::lock_guard<std::mutex> lock(g_mtx);
    g_one_cache.clear();
    g_inf_cache.clear();
}

} // namespace heun::connection
