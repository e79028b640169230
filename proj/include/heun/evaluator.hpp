#ifndef HEUN_EVALUATOR_HPP
#define HEUN_EVALUATOR_HPP

#include "heun/continuation.hpp"
#include "heun/core.hpp"

namespace heun {

/// The four solutions the library evaluates: the two local solutions at 0
/// and the two formal solutions at infinity (the latter need eps != 0).
enum class FunctionKind { Cl, Cs, AInf, BInf };

const char* function_kind_name(FunctionKind k);

/// Region-dispatched single-point evaluation. With use_improvements the
/// near-one and far-field connection evaluators are used inside their
/// regions; without, everything goes through local series + continuation.
EvalQuad evaluate(FunctionKind kind, const Params& p, Complex z,
                  const Config& cfg = {}, bool use_improvements = true);

struct DispatchInfo {
    Region region = Region::Generic;
    const char* method = "";   // "local", "continuation", "near_one", "far_field", "asymptotic"
};

struct TraceResult {
    EvalQuad quad;
    continuation::Trace trace;
    DispatchInfo dispatch;
};

TraceResult evaluate_with_trace(FunctionKind kind, const Params& p, Complex z,
                                const Config& cfg = {}, bool use_improvements = true);

} // namespace heun

#endif
