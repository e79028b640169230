#include <doctest.h>

#include <cmath>
#include <random>

#include "heun/continuation.hpp"
#include "heun/evaluator.hpp"
#include "heun/series_zero.hpp"
#include "heun/taylor_step.hpp"

using namespace heun;
using namespace heun::continuation;
using Cx = Complex;

namespace {
const Params h1{0.25, 0.0, 0.5, 0.5, 0.0};
const Params h3{6.0, 0.0, 1.0, 1.0, 0.0};
const Params h5{-0.25, 0.0, 0.5, 0.5, 0.0};
const Params h7{0.75, 1.5, 0.5, 0.5, 1.0};
const Params c9{-2.0, 0.0, -1.0, 0.0, 1.0};

Cx closed_h5(Cx z) {
    return std::cos(std::log(std::sqrt(1.0 - z) + Cx{0, 1} * std::sqrt(z)));
}
} // namespace

TEST_CASE("build_default_path picks the two-segment detour in omega_pm") {
    auto p1 = build_default_path(Cx{3.0, 2.0});
    REQUIRE(p1.waypoints.size() == 3);
    CHECK(p1.waypoints[1] == Cx{1.0, 1.0});
    CHECK(p1.waypoints[2] == Cx{3.0, 2.0});

    auto p2 = build_default_path(Cx{0.2, 0.0});
    REQUIRE(p2.waypoints.size() == 2);
    CHECK(p2.waypoints[1] == Cx{0.2, 0.0});

    auto p3 = build_default_path(Cx{-5.0, 0.0});
    REQUIRE(p3.waypoints.size() == 2);

    auto p4 = build_default_path(Cx{3.0, -2.0});
    CHECK(p4.waypoints[1] == Cx{1.0, -1.0});

    // on the (1,inf) cut: upper-limit routing through 1+i
    auto p5 = build_default_path(Cx{2.0, 0.0});
    REQUIRE(p5.waypoints.size() == 3);
    CHECK(p5.waypoints[1] == Cx{1.0, 1.0});

    // outside omega_pm despite Re z > 1: straight segment
    auto p6 = build_default_path(Cx{2.0, 3.0});
    CHECK(p6.waypoints.size() == 2);

    CHECK_THROWS_AS((void)build_default_path(Cx{1.0, 0.0}), Error);
}

TEST_CASE("step rule: first hops on the segment to 0.9") {
    // with adaptation effectively off (huge n_diamond), the base rule gives
    // z1 = 0.38, R1 = 0.38*min(0.38,0.62) = 0.1444, z2 = 0.5244
    Config cfg;
    cfg.n_diamond = 1000000;
    auto seed = series_zero::eval_cl_at0(h1, Cx{0.38}, cfg);
    Path path{{Cx{0.38}, Cx{0.9}}};
    auto [quad, tr] = continue_along(h1, path, seed, cfg);
    REQUIRE(tr.hops.size() >= 3);
    CHECK(tr.hops[0] == Cx{0.38});
    CHECK(std::abs(tr.hops[1] - Cx{0.5244}) < 1e-12);
    CHECK(std::abs(quad.f - std::sqrt(Cx{0.1})) < 1e-12);
}

TEST_CASE("every hop obeys the step-size rule") {
    Config cfg;
    for (Cx target : {Cx{-7.0, 2.0}, Cx{4.0, 4.5}, Cx{2.5, -1.0}, Cx{0.9, 0.0}}) {
        auto path = build_default_path(target);
        Cx w1 = path.waypoints[1];
        Cx z1 = cfg.kappa * w1 / std::abs(w1);
        auto seed = series_zero::eval_cl_at0(h7, z1, cfg);
        Path rest;
        rest.waypoints = {z1};
        rest.waypoints.insert(rest.waypoints.end(), path.waypoints.begin() + 1,
                              path.waypoints.end());
        auto [quad, tr] = continue_along(h7, rest, seed, cfg);
        (void)quad;
        for (std::size_t i = 0; i + 1 < tr.hops.size(); ++i) {
            double allowed = cfg.kappa * std::min(std::abs(tr.hops[i]),
                                                  std::abs(tr.hops[i] - 1.0));
            CHECK(std::abs(tr.hops[i + 1] - tr.hops[i]) <= allowed * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("trace accounting matches a per-hop recount") {
    Config cfg;
    auto seed = series_zero::eval_cl_at0(h3, Cx{-0.38}, cfg);
    Path path{{Cx{-0.38}, Cx{-10.0}}};
    auto [quad, tr] = continue_along(h3, path, seed, cfg);
    CHECK(quad.n_terms == tr.n_sigma);
    // recompute: walk the recorded hops and redo each step evaluation
    long n = seed.n_terms;
    long evals = 1;
    Cx f = seed.f, fp = seed.df;
    for (std::size_t i = 0; i + 1 < tr.hops.size(); ++i) {
        auto q = taylor_step::eval_step(h3, {tr.hops[i], f, fp}, tr.hops[i + 1], cfg);
        n += q.n_terms;
        ++evals;
        f = q.f;
        fp = q.df;
    }
    CHECK(n + evals == tr.n_sigma);
    CHECK(tr.steps == static_cast<int>(tr.hops.size()) - 1);
    CHECK(f == quad.f);
}

TEST_CASE("eval_cl: h3 polynomial far down the negative axis") {
    Config cfg;
    auto q = eval_cl(h3, Cx{-10.0, 0.0}, cfg);
    CHECK(std::abs(q.f - Cx{661.0}) <= 1e-10 * 661.0);
    CHECK(std::abs(q.df - Cx{-126.0}) <= 1e-10 * 126.0);
}

TEST_CASE("eval_cl: h5 at a complex point") {
    Config cfg;
    Cx z{0.5, 0.5};
    auto q = eval_cl(h5, z, cfg);
    CHECK(std::abs(q.f - closed_h5(z)) < 1e-12);
}

TEST_CASE("eval_cl: h7 at -20 exercises the exponential reduction") {
    Config cfg;
    auto q = eval_cl(h7, Cx{-20.0, 0.0}, cfg);
    Cx expect = std::exp(Cx{20.0}) * std::sqrt(Cx{21.0});
    CHECK(std::abs(q.f - expect) <= 1e-11 * std::abs(expect));
}

TEST_CASE("h9 combination at z = 2") {
    Config cfg;
    auto l = eval_cl(c9, Cx{2.0, 0.0}, cfg);
    auto s = eval_cs(c9, Cx{2.0, 0.0}, cfg);
    Cx combo = l.f + 1.5 * s.f;
    Cx expect = std::exp(Cx{-2.0}) * (1.0 - 2.0);
    CHECK(std::abs(combo - expect) <= 1e-10 * (1.0 + std::abs(expect)));
}

TEST_CASE("eval_cs continuation: sqrt(z) across the plane") {
    Config cfg;
    for (Cx z : {Cx{2.0, 0.5}, Cx{-3.0, 0.7}, Cx{0.5, -2.0}}) {
        auto q = eval_cs(h1, z, cfg);
        CHECK(std::abs(q.f - std::sqrt(z)) <= 1e-11 * (1.0 + std::abs(std::sqrt(z))));
    }
    // upper limit on the negative axis: sqrt(-5+i0) = i sqrt 5
    auto qcut = eval_cs(h1, Cx{-5.0, 0.0}, cfg);
    CHECK(std::abs(qcut.f - Cx{0.0, std::sqrt(5.0)}) < 1e-10);
}

TEST_CASE("path independence for homotopic polylines") {
    Config cfg;
    std::mt19937 rng(53);
    std::uniform_real_distribution<double> u(0.3, 1.4);
    for (int k = 0; k < 12; ++k) {
        Cx z{-1.5 - u(rng), 1.0 + u(rng)};
        auto direct = eval_multivalued(h5, Path{{Cx{}, z}}, Solution::L, cfg);
        // detour above, staying well away from 0 and 1, same homotopy class
        Cx mid{-0.2, 1.8};
        auto detour = eval_multivalued(h5, Path{{Cx{}, mid, z}}, Solution::L, cfg);
        CHECK(std::abs(direct.f - detour.f) <= 10.0 * (direct.r + detour.r));
    }
}

TEST_CASE("default path agrees with the explicit polyline evaluator") {
    Config cfg;
    Cx z{-2.0, 1.0};
    auto a = eval_cl(h5, z, cfg);
    auto b = eval_multivalued(h5, Path{{Cx{}, z}}, Solution::L, cfg);
    CHECK(std::abs(a.f - b.f) <= 10.0 * (a.r + b.r));
}

TEST_CASE("monodromy around 0: sqrt flips sign, sqrt(1-z) does not") {
    Config cfg;
    Path loop{{Cx{}, Cx{0.5}, Cx{0.5, 0.75}, Cx{-0.5, 0.0}, Cx{0.5, -0.75}, Cx{0.5}}};
    auto s = eval_multivalued(h1, loop, Solution::S, cfg);
    CHECK(std::abs(s.f - (-std::sqrt(Cx{0.5}))) < 1e-9);
    auto l = eval_multivalued(h1, loop, Solution::L, cfg);
    CHECK(std::abs(l.f - std::sqrt(Cx{0.5})) < 1e-9);
}

TEST_CASE("conjugation symmetry for real parameters") {
    Config cfg;
    for (Cx z : {Cx{2.3, 1.7}, Cx{-4.0, 2.5}, Cx{0.6, 0.2}, Cx{5.0, -3.0}}) {
        auto a = eval_cl(h5, z, cfg);
        auto b = eval_cl(h5, std::conj(z), cfg);
        CHECK(std::abs(std::conj(b.f) - a.f) <= 1e-12 * (1.0 + std::abs(a.f)));
        CHECK(std::abs(std::conj(b.df) - a.df) <= 1e-12 * (1.0 + std::abs(a.df)));
    }
}

TEST_CASE("degenerate path: target inside the local disc") {
    Config cfg;
    auto q = eval_cl(h1, Cx{0.2, 0.1}, cfg);
    auto local = series_zero::eval_cl_at0(h1, Cx{0.2, 0.1}, cfg);
    CHECK(q.f == local.f);
    CHECK(q.df == local.df);
}

TEST_CASE("multivalued path validation") {
    Config cfg;
    CHECK_THROWS_AS((void)eval_multivalued(h1, Path{{Cx{0.5}, Cx{2.0}}}, Solution::L, cfg),
                    Error);
    CHECK_THROWS_AS(
        (void)eval_multivalued(h1, Path{{Cx{}, Cx{1.0, 0.0}, Cx{2.0}}}, Solution::L, cfg),
        Error);
}

TEST_CASE("step underflow next to a singular target") {
    Config cfg;
    CHECK_THROWS_AS((void)eval_cl(h1, Cx{1.0 + 1e-13, 0.0}, cfg), Error);
    try {
        (void)eval_cl(h1, Cx{1.0 + 1e-13, 0.0}, cfg);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::step_underflow);
    }
}

TEST_CASE("max_steps guard") {
    Config cfg;
    cfg.max_steps = 3;
    CHECK_THROWS_AS((void)eval_cl(h3, Cx{-30.0, 0.0}, cfg), Error);
    try {
        (void)eval_cl(h3, Cx{-30.0, 0.0}, cfg);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::max_steps_exceeded);
    }
}

TEST_CASE("monodromy around 1: sqrt(1-z) flips sign") {
    Config cfg;
    Path loop{{Cx{}, Cx{0.5}, Cx{0.5, 0.75}, Cx{1.5, 0.75}, Cx{1.5, -0.75},
               Cx{0.5, -0.75}, Cx{0.5}}};
    auto l = eval_multivalued(h1, loop, Solution::L, cfg);
    CHECK(std::abs(l.f - (-std::sqrt(Cx{0.5}))) < 1e-9);
    // sqrt(z) is single-valued around 1
    auto s = eval_multivalued(h1, loop, Solution::S, cfg);
    CHECK(std::abs(s.f - std::sqrt(Cx{0.5})) < 1e-9);
}

TEST_CASE("conjugation symmetry across all dispatch regions") {
    Config cfg;
    const Params sets[] = {h5, h7, c9};
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> re(-45.0, 45.0);
    std::uniform_real_distribution<double> im(0.05, 45.0);
    for (const Params& p : sets) {
        for (int k = 0; k < 40; ++k) {
            Cx z{re(rng), im(rng)};
            if (std::abs(z) < 0.02 || std::abs(z - 1.0) < 0.02) continue;
            EvalQuad a, b;
            try {
                a = heun::evaluate(heun::FunctionKind::Cl, p, z, cfg);
                b = heun::evaluate(heun::FunctionKind::Cl, p, std::conj(z), cfg);
            } catch (const Error&) {
                continue;
            }
            CHECK(std::abs(std::conj(b.f) - a.f) <= 1e-12 * (1.0 + std::abs(a.f)));
            CHECK(std::abs(std::conj(b.df) - a.df) <= 1e-12 * (1.0 + std::abs(a.df)));
        }
    }
}

TEST_CASE("cross-path agreement for fully generic random parameters") {
    // every coefficient formula gets exercised with no structural zeros;
    // two homotopic routes must agree within their error budgets
    Config cfg;
    std::mt19937 rng(79);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    int done = 0;
    for (int k = 0; k < 120 && done < 40; ++k) {
        Params p{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)},
                 {u(rng), u(rng)}, {u(rng), u(rng)}};
        if (gamma_nonpos_int(p, cfg)) continue;
        Cx z{2.0 + u(rng), 1.5 + u(rng)};
        EvalQuad direct, detour;
        try {
            direct = eval_multivalued(p, Path{{Cx{}, z}}, Solution::L, cfg);
            detour = eval_multivalued(p, Path{{Cx{}, Cx{-0.3, 1.2}, z}}, Solution::L, cfg);
        } catch (const Error&) {
            continue;
        }
        CHECK(std::abs(direct.f - detour.f) <= 10.0 * (direct.r + detour.r));
        CHECK(std::abs(direct.df - detour.df) <=
              1e-9 * (1.0 + std::abs(direct.df)) + 10.0 * (direct.r + detour.r));
        ++done;
    }
    CHECK(done == 40);
}
