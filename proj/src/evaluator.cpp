#include "heun/evaluator.hpp"

#include <cmath>

#include "heun/asymptotics.hpp"
#include "heun/connection.hpp"
#include "heun/series_zero.hpp"

namespace heun {

namespace {

continuation::Trace plain_trace(const EvalQuad& q) {
    return {q.r, q.n_terms + 1, 0, {}};
}

void check_finite(const EvalQuad& q, Region region) {
    if (!std::isfinite(q.f.real()) || !std::isfinite(q.f.imag()) ||
        !std::isfinite(q.df.real()) || !std::isfinite(q.df.imag()))
        throw Error(Errc::overflow, std::string("evaluate: non-finite result in region ") +
                                        region_name(region));
}

TraceResult eval_local_pair(FunctionKind kind, const Params& p, Complex z,
                            const Config& cfg, bool improve) {
    Solution which = kind == FunctionKind::Cl ? Solution::L : Solution::S;
    Region region = classify_point(p, z, cfg);
    TraceResult out;
    out.dispatch.region = region;

    bool at_zero = region == Region::SingularPoint && z == Complex{};
    if (at_zero || region == Region::LocalZero) {
        out.quad = which == Solution::L ? series_zero::eval_cl_at0(p, z, cfg)
                                        : series_zero::eval_cs_at0(p, z, cfg);
        out.trace = plain_trace(out.quad);
        out.dispatch.method = "local";
        return out;
    }
    if (region == Region::SingularPoint && !improve)
        throw Error(Errc::singular_point,
                    "evaluate: z = 1 needs the near-one evaluator "
                    "(improvements disabled)");
    if (improve && (region == Region::NearOne || region == Region::SingularPoint)) {
        out.quad = connection::eval_near_one(p, z, which, cfg);
        out.trace = plain_trace(out.quad);
        out.dispatch.method = "near_one";
        return out;
    }
    if (improve && region == Region::FarField) {
        out.quad = connection::eval_far_field(p, z, which, cfg);
        out.trace = plain_trace(out.quad);
        out.dispatch.method = "far_field";
        return out;
    }
    auto [quad, trace] = which == Solution::L
                             ? continuation::eval_cl_traced(p, z, cfg)
                             : continuation::eval_cs_traced(p, z, cfg);
    out.quad = quad;
    out.trace = std::move(trace);
    out.dispatch.method = "continuation";
    return out;
}

TraceResult eval_at_infinity(FunctionKind kind, const Params& p, Complex z,
                             const Config& cfg) {
    if (std::abs(p.epsilon) == 0.0)
        throw Error(Errc::epsilon_zero,
                    "evaluate: AInf/BInf need epsilon != 0");
    TraceResult out;
    out.dispatch.region = classify_point(p, z, cfg);
    double R = resolved_far_field_R(cfg);
    if (kind == FunctionKind::BInf) {
        TraceResult a = eval_at_infinity(FunctionKind::AInf,
                                         series_zero::exp_transform(p), z, cfg);
        double x = -(p.epsilon * z).real();
        if (x > 700.0)
            throw Error(Errc::overflow, "evaluate: e^{-eps z} overflows");
        Complex E = std::exp(-p.epsilon * z);
        out.quad.f = E * a.quad.f;
        out.quad.df = E * (a.quad.df - p.epsilon * a.quad.f);
        out.quad.r = std::abs(E) * a.quad.r;
        out.quad.n_terms = a.quad.n_terms;
        out.trace = a.trace;
        out.trace.r_sigma = out.quad.r;
        out.dispatch.method = a.dispatch.method;
        return out;
    }
    if (std::abs(p.epsilon * z) >= R) {
        out.quad = asymptotics::eval_a_inf(p, z, cfg);
        out.trace = plain_trace(out.quad);
        out.dispatch.method = "asymptotic";
        return out;
    }
    if (z == Complex{} || z == Complex{1.0})
        throw Error(Errc::singular_point,
                    "evaluate: AInf continuation target is a singular point");
    Complex zfar = z * (R / std::abs(p.epsilon * z));
    EvalQuad seed = asymptotics::eval_a_inf(p, zfar, cfg);
    continuation::Path ray{{zfar, z}};
    auto [quad, trace] = continuation::continue_along(p, ray, seed, cfg);
    out.quad = quad;
    out.trace = std::move(trace);
    out.dispatch.method = "asymptotic_continued";
    return out;
}

} // namespace

const char* function_kind_name(FunctionKind k) {
    switch (k) {
        case FunctionKind::Cl: return "cl";
        case FunctionKind::Cs: return "cs";
        case FunctionKind::AInf: return "ainf";
        case FunctionKind::BInf: return "binf";
    }
    return "unknown";
}

TraceResult evaluate_with_trace(FunctionKind kind, const Params& p, Complex z,
                                const Config& cfg, bool use_improvements) {
    if (!params_finite(p) || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw Error(Errc::invalid_argument, "evaluate: non-finite input");
    if (!(cfg.kappa > 0.0 && cfg.kappa < 1.0) || cfg.n_diamond <= 0 ||
        cfg.near_one_radius <= 0.0 || cfg.max_terms <= 0 || cfg.max_steps <= 0 ||
        cfg.tau_int < 0.0 || cfg.tau_zero < 0.0 || cfg.machine_eps <= 0.0)
        throw Error(Errc::invalid_argument, "evaluate: bad configuration");
    z = upper_limit(z);
    TraceResult out;
    try {
        if (kind == FunctionKind::Cl || kind == FunctionKind::Cs)
            out = eval_local_pair(kind, p, z, cfg, use_improvements);
        else
            out = eval_at_infinity(kind, p, z, cfg);
    } catch (const Error& e) {
        throw Error(e.code(), std::string(e.what()) + " [kind " +
                                  function_kind_name(kind) + ", region " +
                                  region_name(classify_point(p, z, cfg)) + "]");
    }
    check_finite(out.quad, out.dispatch.region);
    return out;
}

EvalQuad evaluate(FunctionKind kind, const Params& p, Complex z,
                  const Config& cfg, bool use_improvements) {
    return evaluate_with_trace(kind, p, z, cfg, use_improvements).quad;
}

} // namespace heun
