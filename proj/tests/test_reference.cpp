#include <doctest.h>

#include <cmath>
#include <random>

#include "heun/reference.hpp"

using namespace heun;
using namespace heun::reference;
using Cx = Complex;

namespace {
Cx random_offcut_point(std::mt19937& rng, double box) {
    std::uniform_real_distribution<double> u(-box, box);
    for (;;) {
        Cx z{u(rng), u(rng)};
        if (!in_exclusion_zone(z) && std::abs(z.imag()) > 1e-3 &&
            std::abs(z) > 0.05 && std::abs(z - 1.0) > 0.05)
            return z;
    }
}
} // namespace

TEST_CASE("closed forms: spot values") {
    CHECK(std::abs(closed_form(3, Cx{1.0, 0.0}).h - Cx{1.0, 0.0}) == 0.0);
    CHECK(std::abs(closed_form(9, Cx{1.0, 0.0}).h) == 0.0);
    // genuinely singular spots still refuse
    CHECK_THROWS_AS((void)closed_form(1, Cx{1.0, 0.0}), Error);
    CHECK_THROWS_AS((void)closed_form(2, Cx{}), Error);
    CHECK(std::abs(closed_form(4, Cx{0.5, 0.0}).h - Cx{1.5}) < 1e-14);
    CHECK(std::abs(closed_form(1, Cx{0.25, 0.0}).h - std::sqrt(0.75)) < 1e-15);
}

TEST_CASE("identity case table") {
    CHECK(identity_case(1).kind == FunctionKind::Cl);
    CHECK(identity_case(2).kind == FunctionKind::Cs);
    CHECK(identity_case(9).mixes_companion);
    CHECK(identity_case(9).companion_weight == Cx{1.5});
    CHECK(identity_case(7).params.epsilon == Cx{1.0});
    CHECK_THROWS_AS((void)identity_case(0), Error);
    CHECK_THROWS_AS((void)identity_case(10), Error);
}

TEST_CASE("oracle self-consistency: every closed form solves the equation") {
    std::mt19937 rng(61);
    for (int idx = 1; idx <= 9; ++idx) {
        const auto& c = identity_case(idx);
        for (int k = 0; k < 100; ++k) {
            Cx z = random_offcut_point(rng, 8.0);
            auto cf = closed_form(idx, z);
            Cx hpp = closed_form_second(idx, z);
            auto [c1, c0] = ode_coefficients(c.params, z);
            Cx resid = hpp + c1 * cf.hp + c0 * cf.h;
            CHECK(std::abs(resid) <= 1e-10 * (1.0 + std::abs(hpp)));
        }
    }
}

TEST_CASE("oracle conjugation symmetry off the cuts") {
    std::mt19937 rng(67);
    for (int idx = 1; idx <= 9; ++idx) {
        for (int k = 0; k < 30; ++k) {
            Cx z = random_offcut_point(rng, 6.0);
            auto a = closed_form(idx, z);
            auto b = closed_form(idx, std::conj(z));
            CHECK(std::abs(std::conj(b.h) - a.h) <= 1e-13 * (1.0 + std::abs(a.h)));
        }
    }
}

TEST_CASE("lambda_metric arithmetic") {
    Cx z{0.3, 0.2};
    auto cf = closed_form(1, z);
    EvalQuad exact{cf.h, cf.hp, 0.0, 10};
    CHECK(lambda_metric(1, z, exact) == 0.0);

    EvalQuad offset{cf.h + Cx{1e-12}, cf.hp, 0.0, 10};
    double expect = 1e-12 / (1.0 + std::abs(cf.h));
    CHECK(lambda_metric(1, z, offset) == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("exclusion zones") {
    CHECK(in_exclusion_zone(Cx{1e-7, 0.0}));
    CHECK(in_exclusion_zone(Cx{1.0 + 1e-7, 0.0}));
    CHECK(in_exclusion_zone(Cx{-3.0, 1e-13}));
    CHECK(in_exclusion_zone(Cx{4.0, -1e-13}));
    CHECK_FALSE(in_exclusion_zone(Cx{0.5, 0.0}));
    CHECK_FALSE(in_exclusion_zone(Cx{-3.0, 0.01}));
}

TEST_CASE("wronskian_check: shared-parameter pair") {
    Config cfg;
    // analytic value for the h1/h2 pair: W = 1/(2 sqrt(z(1-z))) and
    // w = z^{-1/2} (1-z)^{-1/2}: the ratio is constant 1/2, deviation 0
    Params h1{0.25, 0.0, 0.5, 0.5, 0.0};
    CHECK(wronskian_check(h1, Cx{0.3, 0.1}, Cx{0.6, -0.2}, cfg) <= 1e-10);

    Params h7{0.75, 1.5, 0.5, 0.5, 1.0};
    CHECK(wronskian_check(h7, Cx{0.3, 0.0}, Cx{0.3, 0.4}, cfg) <= 1e-8);
}

TEST_CASE("evaluate_case: case 9 combination against its closed form") {
    Config cfg;
    for (Cx z : {Cx{0.4, 0.2}, Cx{-2.0, 1.0}, Cx{3.0, -1.5}}) {
        auto q = evaluate_case(9, z, cfg, true);
        auto cf = closed_form(9, z);
        CHECK(std::abs(q.f - cf.h) <= 1e-10 * (1.0 + std::abs(cf.h)));
        CHECK(std::abs(q.df - cf.hp) <= 1e-10 * (1.0 + std::abs(cf.hp)));
    }
}
