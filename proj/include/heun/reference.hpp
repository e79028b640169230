#ifndef HEUN_REFERENCE_HPP
#define HEUN_REFERENCE_HPP

#include "heun/core.hpp"
#include "heun/evaluator.hpp"

namespace heun::reference {

/// One verification case: parameter set, which solution(s) enter, and the
/// elementary closed form the combination must equal.
struct IdentityCase {
    int index = 0;                 // 1..9
    Params params{};
    FunctionKind kind = FunctionKind::Cl;
    bool mixes_companion = false;  // case 9 adds weight * Cs to Cl
    Complex companion_weight{};
};

/// Cases 1..9. Throws on an index outside that range.
const IdentityCase& identity_case(int index);

struct ClosedForm {
    Complex h{};
    Complex hp{};
};

/// Closed form value and first derivative.
ClosedForm closed_form(int index, Complex z);

/// Closed form second derivative (for residual checks).
Complex closed_form_second(int index, Complex z);

/// Inside the disks of radius 1e-6 around 0 and 1, or within 1e-12 of the
/// cuts (-inf,0) and (1,+inf).
bool in_exclusion_zone(Complex z);

/// |f-h|/(1+|h|) + |f'-h'|/(1+|h'|) against the case's closed form.
double lambda_metric(int index, Complex z, const EvalQuad& evaluated);

/// Evaluate the case's function combination with the library.
EvalQuad evaluate_case(int index, Complex z, const Config& cfg, bool use_improvements);

/// |W(z1) w(z2) / (W(z2) w(z1)) - 1| with W the numerical Wronskian of
/// (Cl, Cs) and w(z) = z^{-gamma} (1-z)^{-delta} e^{-eps z}.
double wronskian_check(const Params& p, Complex z1, Complex z2, const Config& cfg);

} // namespace heun::reference

#endif
