#include "heun/reference.hpp"

#include <array>
#include <cmath>

namespace heun::reference {

namespace {

const Complex kI{0.0, 1.0};

struct CaseDef {
    IdentityCase desc;
    // closed form value, first and second derivative
    void (*eval)(Complex z, Complex& h, Complex& hp, Complex& hpp);
};

void case1(Complex z, Complex& h, Complex& hp, Complex& hpp) {
    Complex g = std::sqrt(1.0 - z);
    h = g;
    hp = -0.5 / g;
    hpp = -0.25 / (g * (1.0 - z));
}

void case2(Complex z, Complex& h, Complex& hp, Complex& hpp) {
    Complex g = std::sqrt(z);
    h = g;
    hp = 0.5 / g;
    hpp = -0.25 / (g * z);
}

void case3(Complex z, Complex& h, Complex& hp, Complex& hpp) {
    h = 6.0 * z * z - 6.0 * z + 1.0;
    hp = 12.0 * z - 6.0;
    hpp = 12.0;
}

void case4(Complex z, Complex& h, Complex& hp, Complex& hpp) {
    Complex pz = 6.0 * z * z - 6.0 * z + 1.0;
    Complex ppz = 12.0 * z - 6.0;
    Complex lg = std::log(z) - std::log(1.0 - z) - 3.0;
    Complex lgp = 1.0 / z + 1.0 / (1.0 - z);
    Complex lgpp = -1.0 / (z * z) + 1.0 / ((1.0 - z) * (1.0 - z));
    h = pz * lg - 6.0 * z + 3.0;
    hp = ppz * lg + pz * lgp - 6.0;
    hpp = 12.0 * lg + 2.0 * ppz * lgp + pz * lgpp;
}

// shared core of cases 5 and 6: L = log(sqrt(1-z) + i sqrt(z))
void log_core(Complex z, Complex& L, Complex& Lp, Complex& Lpp) {
    Complex s1 = std::sqrt(1.0 - z);
    Complex s2 = std::sqrt(z);
    Complex u = s1 + kI * s2;
    Complex up = -0.5 / s1 + kI * 0.5 / s2;
    Complex upp = -0.25 / (s1 * (1.0 - z)) - kI * 0.25 / (s2 * z);
    L = std::log(u);
    Lp = up / u;
    Lpp = upp / u - Lp * Lp;
}

void case5(Complex z, Complex& h, Complex& hp, Complex& hpp) {
    Complex L, Lp, Lpp;
    log_core(z, L, Lp, Lpp);
    h = std::cos(L);
    hp = -std::sin(L) * Lp;
    hpp = -std::cos(L) * Lp * Lp - std::sin(L) * Lpp;
}

void case6(Complex z, Complex& h, Complex& hp, Complex& hpp) {
    Complex L, Lp, Lpp;
    log_core(z, L, Lp, Lpp);
    h = -kI * std::sin(L);
    hp = -kI * std::cos(L) * Lp;
    hpp = -kI * (-std::sin(L) * Lp * Lp + std::cos(L) * Lpp);
}

void case7(Complex z, Complex& h, Complex& hp, Complex& hpp) {
    Complex e = std::exp(-z);
    Complex g = std::sqrt(1.0 - z);
    Complex gp = -0.5 / g;
    Complex gpp = -0.25 / (g * (1.0 - z));
    h = e * g;
    hp = e * (gp - g);
    hpp = e * (gpp - 2.0 * gp + g);
}

void case8(Complex z, Complex& h, Complex& hp, Complex& hpp) {
    Complex e = std::exp(-z);
    Complex g = std::sqrt(z);
    Complex gp = 0.5 / g;
    Complex gpp = -0.25 / (g * z);
    h = e * g;
    hp = e * (gp - g);
    hpp = e * (gpp - 2.0 * gp + g);
}

void case9(Complex z, Complex& h, Complex& hp, Complex& hpp) {
    Complex e = std::exp(-z);
    h = e * (1.0 - z);
    hp = e * (z - 2.0);
    hpp = e * (3.0 - z);
}

const std::array<CaseDef, 9> kCases = {{
    {{1, {0.25, 0.0, 0.5, 0.5, 0.0}, FunctionKind::Cl, false, {}}, case1},
    {{2, {0.25, 0.0, 0.5, 0.5, 0.0}, FunctionKind::Cs, false, {}}, case2},
    {{3, {6.0, 0.0, 1.0, 1.0, 0.0}, FunctionKind::Cl, false, {}}, case3},
    {{4, {6.0, 0.0, 1.0, 1.0, 0.0}, FunctionKind::Cs, false, {}}, case4},
    {{5, {-0.25, 0.0, 0.5, 0.5, 0.0}, FunctionKind::Cl, false, {}}, case5},
    {{6, {-0.25, 0.0, 0.5, 0.5, 0.0}, FunctionKind::Cs, false, {}}, case6},
    {{7, {0.75, 1.5, 0.5, 0.5, 1.0}, FunctionKind::Cl, false, {}}, case7},
    {{8, {1.25, 1.5, 0.5, 0.5, 1.0}, FunctionKind::Cs, false, {}}, case8},
    {{9, {-2.0, 0.0, -1.0, 0.0, 1.0}, FunctionKind::Cl, true, {1.5}}, case9},
}};

const CaseDef& case_def(int index) {
    if (index < 1 || index > 9)
        throw Error(Errc::invalid_argument, "identity case index must be 1..9");
    return kCases[index - 1];
}

} // namespace

const IdentityCase& identity_case(int index) { return case_def(index).desc; }

ClosedForm closed_form(int index, Complex z) {
    z = upper_limit(z);
    Complex h, hp, hpp;
    case_def(index).eval(z, h, hp, hpp);
    if (!std::isfinite(h.real()) || !std::isfinite(h.imag()) ||
        !std::isfinite(hp.real()) || !std::isfinite(hp.imag()))
        throw Error(Errc::singular_value, "closed_form: singular at this z");
    return {h, hp};
}

Complex closed_form_second(int index, Complex z) {
    z = upper_limit(z);
    Complex h, hp, hpp;
    case_def(index).eval(z, h, hp, hpp);
    return hpp;
}

bool in_exclusion_zone(Complex z) {
    if (std::abs(z) <= 1e-6 || std::abs(z - 1.0) <= 1e-6)
        return true;
    if (std::abs(z.imag()) < 1e-12 && (z.real() < 0.0 || z.real() > 1.0))
        return true;
    return false;
}

double lambda_metric(int index, Complex z, const EvalQuad& evaluated) {
    ClosedForm cf = closed_form(index, z);
    return std::abs(evaluated.f - cf.h) / (1.0 + std::abs(cf.h)) +
           std::abs(evaluated.df - cf.hp) / (1.0 + std::abs(cf.hp));
}

EvalQuad evaluate_case(int index, Complex z, const Config& cfg, bool use_improvements) {
    const IdentityCase& c = identity_case(index);
    EvalQuad main = evaluate(c.kind, c.params, z, cfg, use_improvements);
    if (!c.mixes_companion)
        return main;
    EvalQuad comp = evaluate(FunctionKind::Cs, c.params, z, cfg, use_improvements);
    EvalQuad out;
    out.f = main.f + c.companion_weight * comp.f;
    out.df = main.df + c.companion_weight * comp.df;
    out.r = main.r + std::abs(c.companion_weight) * comp.r;
    out.n_terms = main.n_terms + comp.n_terms;
    return out;
}

double wronskian_check(const Params& p, Complex z1, Complex z2, const Config& cfg) {
    auto wronskian = [&](Complex z) {
        EvalQuad l = evaluate(FunctionKind::Cl, p, z, cfg);
        EvalQuad s = evaluate(FunctionKind::Cs, p, z, cfg);
        return l.f * s.df - l.df * s.f;
    };
    auto weight = [&](Complex z) {
        return std::pow(z, -p.gamma) * std::pow(1.0 - z, -p.delta) *
               std::exp(-p.epsilon * z);
    };
    Complex W1 = wronskian(z1), W2 = wronskian(z2);
    Complex denom = W2 * weight(z1);
    if (std::abs(denom) == 0.0 || std::abs(W1) == 0.0)
        throw Error(Errc::singular_value, "wronskian_check: degenerate Wronskian");
    return std::abs(W1 * weight(z2) / denom - 1.0);
}

} // namespace heun::reference
