#include <doctest.h>

#include <charconv>
#include <sstream>

#include "heun/gridrun.hpp"

using namespace heun;
using namespace heun::gridrun;
using Cx = Complex;

namespace {
const Params h1{0.25, 0.0, 0.5, 0.5, 0.0};
}

TEST_CASE("axis_points: linear spacing including endpoints") {
    auto pts = axis_points({-1.0, 1.0, 5});
    REQUIRE(pts.size() == 5);
    CHECK(pts.front() == -1.0);
    CHECK(pts.back() == 1.0);
    CHECK(pts[2] == doctest::Approx(0.0));
    CHECK_THROWS_AS((void)axis_points({0.0, 1.0, 1}), Error);
}

TEST_CASE("run_grid: 2x2 sweep over [0.2,0.4]^2, row-major with re fastest") {
    GridJob job;
    job.re = {0.2, 0.4, 2};
    job.im = {0.2, 0.4, 2};
    job.kind = FunctionKind::Cl;
    job.params = h1;
    Config cfg;
    auto rows = run_grid(job, cfg);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].re == 0.2);
    CHECK(rows[0].im == 0.2);
    CHECK(rows[1].re == 0.4);
    CHECK(rows[1].im == 0.2);
    CHECK(rows[2].re == 0.2);
    CHECK(rows[2].im == 0.4);
    for (const auto& r : rows) {
        CHECK(r.status == "ok");
        Cx z{r.re, r.im};
        CHECK(std::abs(r.quad.f - std::sqrt(1.0 - z)) < 1e-12);
    }
}

TEST_CASE("run_grid: exclusion zone rows are marked, sweep never aborts") {
    GridJob job;
    job.re = {0.0, 1.0, 3};   // includes 0 and 1 exactly
    job.im = {0.0, 0.0, 2};
    job.kind = FunctionKind::Cl;
    job.params = h1;
    Config cfg;
    auto rows = run_grid(job, cfg);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].status == "excluded");   // z = 0
    CHECK(rows[1].status == "ok");         // z = 0.5
    CHECK(rows[2].status == "excluded");   // z = 1
}

TEST_CASE("csv output: schema and round-trip floats") {
    GridJob job;
    job.re = {0.2, 0.4, 2};
    job.im = {0.1, 0.1, 2};
    job.params = h1;
    Config cfg;
    auto rows = run_grid(job, cfg);
    std::ostringstream os;
    write_csv(os, rows);
    std::string text = os.str();
    CHECK(text.rfind("re,im,f_re,f_im,df_re,df_im,err,n_terms,status\n", 0) == 0);
    // parse the first data line back and compare bit-for-bit
    std::istringstream is(text);
    std::string header, line;
    std::getline(is, header);
    std::getline(is, line);
    double vals[7];
    std::size_t pos = 0;
    for (int i = 0; i < 7; ++i) {
        std::size_t comma = line.find(',', pos);
        std::from_chars(line.data() + pos, line.data() + comma, vals[i]);
        pos = comma + 1;
    }
    CHECK(vals[0] == rows[0].re);
    CHECK(vals[2] == rows[0].quad.f.real());
    CHECK(vals[3] == rows[0].quad.f.imag());
    CHECK(vals[6] == rows[0].quad.r);

    // byte-identical re-run
    auto rows2 = run_grid(job, cfg);
    std::ostringstream os2;
    write_csv(os2, rows2);
    CHECK(os2.str() == text);
}

TEST_CASE("jsonl output carries the same keys") {
    GridJob job;
    job.re = {0.2, 0.3, 2};
    job.im = {0.1, 0.1, 2};
    job.params = h1;
    Config cfg;
    auto rows = run_grid(job, cfg);
    std::ostringstream os;
    write_jsonl(os, rows);
    std::string line;
    std::istringstream is(os.str());
    std::getline(is, line);
    for (const char* key : {"\"re\"", "\"im\"", "\"f_re\"", "\"f_im\"", "\"df_re\"",
                            "\"df_im\"", "\"err\"", "\"n_terms\"", "\"status\""})
        CHECK(line.find(key) != std::string::npos);
}

TEST_CASE("run_verify: small grid on case 1") {
    VerifySpec spec;
    spec.cases = {1};
    spec.re = {-5.0, 5.0, 21};
    spec.im = {-5.0, 5.0, 21};
    Config cfg;
    auto out = run_verify(spec, cfg);
    REQUIRE(out.size() == 1);
    const auto& s = out[0];
    CHECK(s.case_index == 1);
    // the zero line splits in two: 21 re values x 22 im values
    CHECK(s.points == 21u * 22u);
    CHECK(s.failures == 0);
    CHECK(s.median_lambda <= 1e-11);
    CHECK(s.pass);
}

TEST_CASE("run_verify: usage validation") {
    VerifySpec spec;
    spec.cases = {};
    Config cfg;
    CHECK_THROWS_AS((void)run_verify(spec, cfg), Error);
    spec.cases = {12};
    CHECK_THROWS_AS((void)run_verify(spec, cfg), Error);
    spec.cases = {1};
    spec.re.count = 0;
    CHECK_THROWS_AS((void)run_verify(spec, cfg), Error);
}
