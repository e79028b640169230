#ifndef HEUN_GRIDRUN_HPP
#define HEUN_GRIDRUN_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "heun/core.hpp"
#include "heun/evaluator.hpp"

namespace heun::gridrun {

/// Linearly spaced axis including both end points.
struct AxisSpec {
    double min = 0.0;
    double max = 0.0;
    int count = 0;   // >= 2
};

std::vector<double> axis_points(const AxisSpec& a);

enum class OutputFormat { Csv, JsonLines };

struct GridJob {
    AxisSpec re;
    AxisSpec im;
    FunctionKind kind = FunctionKind::Cl;
    Params params{};
    bool use_improvements = true;
    OutputFormat format = OutputFormat::Csv;
};

struct PointResult {
    double re = 0.0;
    double im = 0.0;
    EvalQuad quad{};
    std::string status;   // "ok", "excluded", or "error:<code>"
};

/// Row-major sweep, re fastest. Failures are recorded per point; points in
/// the exclusion zones are skipped with status "excluded". Evaluations run
/// in parallel; output order is deterministic.
std::vector<PointResult> run_grid(const GridJob& job, const Config& cfg);

void write_csv(std::ostream& os, const std::vector<PointResult>& rows);
void write_jsonl(std::ostream& os, const std::vector<PointResult>& rows);

struct VerifySpec {
    std::vector<int> cases;   // subset of 1..9
    AxisSpec re{-40.0, 40.0, 101};
    AxisSpec im{-40.0, 40.0, 101};
    bool use_improvements = true;
    double median_threshold = 1e-11;
    double p95_threshold = 1e-8;
    double max_far_threshold = 1e-6;
    double far_distance = 0.5;    // "far" = farther than this from 0, 1, and both cuts
};

struct CaseSummary {
    int case_index = 0;
    std::size_t points = 0;
    std::size_t excluded = 0;
    std::size_t failures = 0;
    double median_lambda = 0.0;
    double p95_lambda = 0.0;
    double max_lambda_far = 0.0;
    long n_terms_total = 0;
    bool pass = false;
};

/// Run the identity-suite metric over the grid. Axis values equal to zero
/// on the imaginary axis are split into ±0.01 so no grid line lies on the
/// real axis.
std::vector<CaseSummary> run_verify(const VerifySpec& spec, const Config& cfg);

/// Per-point record of a verify run (optional dump).
struct VerifyPoint {
    int case_index;
    double re, im;
    double lambda;
    long n_terms;
    std::string status;
};
std::vector<CaseSummary> run_verify(const VerifySpec& spec, const Config& cfg,
                                    std::vector<VerifyPoint>* dump);

} // namespace heun::gridrun

#endif
