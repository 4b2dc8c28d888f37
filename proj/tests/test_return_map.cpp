#include <cmath>
#include <random>

#include "doctest.h"
#include "pwlbif/errors.hpp"
#include "pwlbif/return_map.hpp"

using namespace pwlbif;

namespace {

Reduction reduce(NormalFormParams p, int m) {
    ReductionSpec spec;
    spec.m = m;
    spec.params = p;
    return reduced_params_generic(spec);
}

}  // namespace

TEST_SUITE("return_map") {
    const NormalFormParams fig6{2, 0.75, -0.45, 1.4};

    TEST_CASE("first return decomposition") {
        const SaddleData s = saddle_data(fig6);
        const PlanarPoint p = from_ab(s, {0.9, 0.03});
        REQUIRE(in_Q3(p));
        const ReturnResult res = first_return(fig6, p);
        REQUIRE(res.returned());
        const ReturnRecord& r = res.record;
        CHECK(r.ell >= 1);
        CHECK(r.r >= 1);
        CHECK(in_Q3(r.end));
        CHECK(r.z == doctest::Approx(0.03));

        // replay with explicit pieces
        PlanarPoint q = p;
        for (int i = 0; i < r.ell; ++i) {
            if (i > 0) CHECK(q.x <= 0);
            q = apply_left(fig6, q);
        }
        for (int i = 0; i < r.r; ++i) {
            CHECK(q.x > 0);
            q = apply_right(fig6, q);
        }
        CHECK(q == r.end);
        // raw iteration reaches the same point after ell + r steps
        const OrbitRecord o = iterate_orbit(fig6, p, static_cast<std::size_t>(r.ell + r.r));
        CHECK(distance(o.points.back(), r.end) < 1e-10);
        for (std::size_t i = 1; i + 1 < o.points.size(); ++i) CHECK_FALSE(in_Q3(o.points[i]));
    }

    TEST_CASE("below the stable line the orbit diverges") {
        const SaddleData s = saddle_data(fig6);
        const ReturnResult res = first_return(fig6, from_ab(s, {0.9, -0.01}));
        CHECK(res.status == ReturnStatus::Diverged);
    }

    TEST_CASE("on the stable line the budget runs out") {
        const SaddleData s = saddle_data(fig6);
        const ReturnResult res = first_return(fig6, from_ab(s, {0.9, 0.0}), 20);
        CHECK(res.status == ReturnStatus::Budget);
    }

    TEST_CASE("preconditions") {
        CHECK_THROWS_AS((void)first_return(fig6, {1, -1}), DomainError);
        CHECK_THROWS_AS((void)first_return(fig6, {-1, 0}), DomainError);
        CHECK_THROWS_AS((void)first_return({2, 0.75, -0.45, 0.0}, {-1, -1}), DomainError);
    }

    TEST_CASE("Psi0 samples sit on the branches of h") {
        const NormalFormParams p =
            geometric_ray({2, 0.75, -0.5, 1.5}, {ParamName::DeltaR, ParamName::TauR}, {-0.1, 0.05}, 2, 0.01, 0.5, 1)[0];
        const Reduction red = reduce(p, 2);
        PsiSampleOptions opts;
        opts.n_samples = 5000;
        opts.seed = 3;
        int seen_r2 = 0;
        int in0 = 0;
        const double tol = 0.3 * red.eps.epsilon;
        for_each_psi_sample(p, red.rp, opts, [&](const ReturnResult& res, bool psi0) {
            if (!res.returned()) return;
            const ReturnRecord& r = res.record;
            if (r.r == 2) ++seen_r2;
            if (!psi0) return;
            ++in0;
            const double scaled = std::pow(1.5, r.ell) * r.z;
            CHECK(scaled >= 1.0);
            CHECK(scaled < 1.5);
            CHECK(branch_index(r.z, 1.5) == r.ell);
            CHECK(std::abs(r.z_prime - eval_h(red.rp, r.z)) < tol);
        });
        CHECK(seen_r2 > 0);
        CHECK(in0 > 4000);
    }

    TEST_CASE("ell grows toward the stable line") {
        const SaddleData s = saddle_data(fig6);
        int prev = 0;
        for (double b = 0.1; b > 1e-6; b *= 0.97) {
            const PlanarPoint p = from_ab(s, {0.9, b});
            if (!in_Q3(p)) continue;
            const ReturnResult res = first_return(fig6, p);
            if (!res.returned()) continue;
            CHECK(res.record.ell >= prev);
            prev = res.record.ell;
        }
        CHECK(prev > 10);
    }

    TEST_CASE("sample_psi is independent of the worker count") {
        const Reduction red = reduce(fig6, 2);
        PsiSampleOptions opts;
        opts.n_samples = 6000;
        opts.seed = 42;
        opts.n_workers = 1;
        const Psi0Stats a = sample_psi(fig6, red.rp, opts);
        opts.n_workers = 3;
        const Psi0Stats b = sample_psi(fig6, red.rp, opts);
        CHECK(a.n_psi == 6000);
        CHECK(a.n_psi0 == b.n_psi0);
        CHECK(a.sup_error == b.sup_error);
        CHECK(a.fraction_outside >= 0.0);
        CHECK(a.fraction_outside <= 1.0);
        CHECK(a.sup_error >= 0.0);
        CHECK(a.c == doctest::Approx(std::log(2.0) / std::log(1.5)));
    }

    TEST_CASE("deltaL = 0 has no approximation error") {
        const NormalFormParams p{1.3, 0, 0.7, 2};
        const Reduction red = reduce(p, 3);
        PsiSampleOptions opts;
        opts.n_samples = 5000;
        const Psi0Stats st = sample_psi(p, red.rp, opts);
        CHECK(st.n_psi0 > 0);
        CHECK(st.sup_error < 1e-12);
        CHECK(std::isinf(st.c));
    }

    TEST_CASE("epsilon zero is rejected") {
        ReducedParams rp{0.0, 0.0, 1.5, 2, 0.5};
        CHECK_THROWS_AS((void)sample_psi({2, 0.75, -0.5, 1.5}, rp), DomainError);
    }

    TEST_CASE("fit_slope") {
        CHECK(fit_slope({0, 1, 2, 3}, {1, 3, 5, 7}) == doctest::Approx(2.0));
        CHECK_THROWS_AS((void)fit_slope({1}, {1}), DomainError);
    }

    TEST_CASE("geometric ray") {
        const NormalFormParams limit{2, 0.75, -0.5, 1.5};
        const auto ray =
            geometric_ray(limit, {ParamName::DeltaR, ParamName::TauR}, {-0.1, 0.05}, 2, 0.06, 1 / 2.25, 5);
        REQUIRE(ray.size() == 5);
        double target = 0.06;
        for (const auto& p : ray) {
            CHECK(reduce(p, 2).eps.epsilon == doctest::Approx(target).epsilon(1e-9));
            target /= 2.25;
        }
    }
}
