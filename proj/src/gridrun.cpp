#include "heun/gridrun.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <functional>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "heun/reference.hpp"

namespace heun::gridrun {

namespace {

// Shortest decimal representation that round-trips to the same double.
std::string fmt_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (hw == 1 || n < 16) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n)
                return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t + 1 < hw; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& th : pool)
        th.join();
}

double dist_to_cut0(Complex z) {
    return z.real() < 0.0 ? std::abs(z.imag()) : std::abs(z);
}
double dist_to_cut1(Complex z) {
    return z.real() > 1.0 ? std::abs(z.imag()) : std::abs(z - 1.0);
}

} // namespace

std::vector<double> axis_points(const AxisSpec& a) {
    if (a.count < 2)
        throw Error(Errc::invalid_argument, "axis needs at least 2 points");
    std::vector<double> pts(a.count);
    double step = (a.max - a.min) / (a.count - 1);
    for (int i = 0; i < a.count; ++i)
        pts[i] = i + 1 == a.count ? a.max : a.min + step * i;
    return pts;
}

std::vector<PointResult> run_grid(const GridJob& job, const Config& cfg) {
    auto re_pts = axis_points(job.re);
    auto im_pts = axis_points(job.im);
    std::vector<PointResult> rows(re_pts.size() * im_pts.size());
    parallel_for(rows.size(), [&](std::size_t idx) {
        std::size_t i = idx / re_pts.size();   // im index (row)
        std::size_t j = idx % re_pts.size();   // re index, fastest
        PointResult& out = rows[idx];
        out.re = re_pts[j];
        out.im = im_pts[i];
        Complex z{out.re, out.im};
        if (reference::in_exclusion_zone(z)) {
            out.status = "excluded";
            return;
        }
        try {
            out.quad = evaluate(job.kind, job.params, z, cfg, job.use_improvements);
            out.status = "ok";
        } catch (const Error& e) {
            out.status = std::string("error:") + errc_name(e.code());
        }
    });
    return rows;
}

void write_csv(std::ostream& os, const std::vector<PointResult>& rows) {
    os << "re,im,f_re,f_im,df_re,df_im,err,n_terms,status\n";
    for (const auto& r : rows) {
        os << fmt_double(r.re) << ',' << fmt_double(r.im) << ','
           << fmt_double(r.quad.f.real()) << ',' << fmt_double(r.quad.f.imag()) << ','
           << fmt_double(r.quad.df.real()) << ',' << fmt_double(r.quad.df.imag()) << ','
           << fmt_double(r.quad.r) << ',' << r.quad.n_terms << ',' << r.status
           << '\n';
    }
}

void write_jsonl(std::ostream& os, const std::vector<PointResult>& rows) {
    for (const auto& r : rows) {
        nlohmann::json j{{"re", r.re},
                         {"im", r.im},
                         {"f_re", r.quad.f.real()},
                         {"f_im", r.quad.f.imag()},
                         {"df_re", r.quad.df.real()},
                         {"df_im", r.quad.df.imag()},
                         {"err", r.quad.r},
                         {"n_terms", r.quad.n_terms},
                         {"status", r.status}};
        os << j.dump() << '\n';
    }
}

std::vector<CaseSummary> run_verify(const VerifySpec& spec, const Config& cfg) {
    return run_verify(spec, cfg, nullptr);
}

std::vector<CaseSummary> run_verify(const VerifySpec& spec, const Config& cfg,
                                    std::vector<VerifyPoint>* dump) {
    if (spec.cases.empty())
        throw Error(Errc::invalid_argument, "verify: no cases selected");
    for (int c : spec.cases)
        if (c < 1 || c > 9)
            throw Error(Errc::invalid_argument, "verify: case index outside 1..9");

    auto re_pts = axis_points(spec.re);
    auto im_raw = axis_points(spec.im);
    // keep grid lines off the real axis: a zero line splits into +-0.01
    std::vector<double> im_pts;
    for (double v : im_raw) {
        if (std::abs(v) < 1e-9) {
            im_pts.push_back(-0.01);
            im_pts.push_back(0.01);
        } else {
            im_pts.push_back(v);
        }
    }

    std::vector<CaseSummary> out;
    for (int case_index : spec.cases) {
        struct Cell {
            double lambda = -1.0;   // <0: excluded or failed
            long n_terms = 0;
            int state = 0;          // 0 ok, 1 excluded, 2 failed
        };
        std::vector<Cell> cells(re_pts.size() * im_pts.size());
        parallel_for(cells.size(), [&](std::size_t idx) {
            std::size_t i = idx / re_pts.size();
            std::size_t j = idx % re_pts.size();
            Complex z{re_pts[j], im_pts[i]};
            Cell& cell = cells[idx];
            if (reference::in_exclusion_zone(z)) {
                cell.state = 1;
                return;
            }
            try {
                EvalQuad q = reference::evaluate_case(case_index, z, cfg,
                                                      spec.use_improvements);
                cell.lambda = reference::lambda_metric(case_index, z, q);
                cell.n_terms = q.n_terms;
            } catch (const Error&) {
                cell.state = 2;
            }
        });

        CaseSummary s;
        s.case_index = case_index;
        std::vector<double> lambdas;
        lambdas.reserve(cells.size());
        for (std::size_t idx = 0; idx < cells.size(); ++idx) {
            const Cell& cell = cells[idx];
            std::size_t i = idx / re_pts.size();
            std::size_t j = idx % re_pts.size();
            Complex z{re_pts[j], im_pts[i]};
            if (dump) {
                dump->push_back({case_index, z.real(), z.imag(),
                                 cell.state == 0 ? cell.lambda : -1.0, cell.n_terms,
                                 cell.state == 0 ? "ok"
                                 : cell.state == 1 ? "excluded" : "failed"});
            }
            ++s.points;
            if (cell.state == 1) {
                ++s.excluded;
                continue;
            }
            if (cell.state == 2) {
                ++s.failures;
                continue;
            }
            lambdas.push_back(cell.lambda);
            s.n_terms_total += cell.n_terms;
            bool far = std::abs(z) > spec.far_distance &&
                       std::abs(z - 1.0) > spec.far_distance &&
                       dist_to_cut0(z) > spec.far_distance &&
                       dist_to_cut1(z) > spec.far_distance;
            if (far)
                s.max_lambda_far = std::max(s.max_lambda_far, cell.lambda);
        }
        if (!lambdas.empty()) {
            std::sort(lambdas.begin(), lambdas.end());
            s.median_lambda = lambdas[lambdas.size() / 2];
            std::size_t k95 = static_cast<std::size_t>(
                std::ceil(0.95 * static_cast<double>(lambdas.size())));
            s.p95_lambda = lambdas[std::min(lambdas.size() - 1, k95 == 0 ? 0 : k95 - 1)];
        }
        s.pass = s.failures == 0 && !lambdas.empty() &&
                 s.median_lambda <= spec.median_threshold &&
                 s.p95_lambda <= spec.p95_threshold &&
                 s.max_lambda_far <= spec.max_far_threshold;
        out.push_back(s);
    }
    return out;
}

} // namespace heun::gridrun
