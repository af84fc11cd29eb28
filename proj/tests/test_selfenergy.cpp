#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "wgqed/errors.hpp"
#include "wgqed/selfenergy.hpp"

using namespace wgqed;
using wgqed::testing::Draw;
using wgqed::testing::reference_guide;

namespace {

const TmMode kMode{1, 1, 0.943, 1};
const EmitterParams kEmitter{1.2, 1.0, 0.1, 0.0};

}  // namespace

TEST_CASE("zeta values") {
    CHECK(zeta(kMode, 0.943 * std::sqrt(2.0)) == doctest::Approx(1.76274717403909).epsilon(1e-13));
    CHECK(zeta(kMode, 0.943 * std::sqrt(0.5)) == doctest::Approx(-1.5 * std::numbers::pi).epsilon(1e-13));
    CHECK(zeta(kMode, 0.943 * (1 + 1e-15)) >= 0.0);
    CHECK(zeta(kMode, 0.943 * (1 - 1e-12)) == doctest::Approx(-2.0 * std::numbers::pi).epsilon(1e-5));
    CHECK(zeta(kMode, 1e-6) == doctest::Approx(-std::numbers::pi).epsilon(1e-5));
    CHECK_THROWS_AS(zeta(kMode, 0.943), BoundaryError);
}

TEST_CASE("decay rate and Lamb shift of one mode") {
    CHECK(decay_rate(kEmitter, 1, kMode, 1.5) == doctest::Approx(0.0306544759956516).epsilon(1e-13));
    CHECK(lamb_shift(kEmitter, 1, kMode, 1.5, false) == doctest::Approx(0.0483028021416254).epsilon(1e-11));
    CHECK(decay_rate(kEmitter, 2, kMode, 1.5) == 0.0);
    CHECK(decay_rate(kEmitter, 1, kMode, 0.9) == 0.0);
    CHECK(lamb_shift(kEmitter, 1, kMode, 0.9, false) == 0.0);
    CHECK(lamb_shift(kEmitter, 1, kMode, 0.9, true) < 0.0);
    CHECK_THROWS_AS(decay_rate(kEmitter, 1, kMode, 0.943), BoundaryError);
    CHECK_THROWS_AS(lamb_shift(kEmitter, 1, kMode, 0.943, true), BoundaryError);
}

TEST_CASE("self-energy sums over open channels") {
    const auto g = reference_guide();
    const EmitterParams em{1.3, 1.1, 0.1, 0.07};
    const SelfEnergy se = self_energy(em, g, 2.0);
    REQUIRE(se.modes.size() == 2);
    for (int i = 0; i < 2; ++i) {
        double shift = 0.0;
        double decay = 0.0;
        for (const auto& part : se.modes) {
            CHECK(part.open);
            shift += part.shift[i];
            decay += part.decay[i];
            CHECK(part.decay[i] == doctest::Approx(decay_rate(em, i + 1, part.mode, 2.0)));
        }
        CHECK(se.shift[i] == doctest::Approx(shift));
        CHECK(se.decay[i] == doctest::Approx(decay));
    }
    CHECK(se.h(1) == complex{se.shift[0], -se.decay[0]});
    CHECK(h_total(em, 2, g, 2.0) == se.h(2));
    CHECK(self_energy(em, g, 0.5).modes.empty());
}

TEST_CASE("red shift option adds closed modes") {
    const auto g = reference_guide();
    const EmitterParams em{1.3, 1.1, 0.1, 0.07};
    SelfEnergyOptions opts;
    opts.include_red_shift = true;
    opts.red_shift_modes = 16;
    const SelfEnergy se = self_energy(em, g, 2.0, opts);
    CHECK(se.modes.size() == 16);
    CHECK(se.decay[0] == doctest::Approx(self_energy(em, g, 2.0).decay[0]));
    CHECK(se.shift[0] < self_energy(em, g, 2.0).shift[0]);
}

TEST_CASE("guard margin around cutoffs") {
    const auto g = reference_guide();
    const EmitterParams em{1.3, 1.1, 0.1, 0.07};
    const double w2 = cutoff(g, 3, 1);
    CHECK_THROWS_AS(self_energy(em, g, w2), BoundaryError);
    CHECK_THROWS_AS(self_energy(em, g, w2 * (1 + 5e-10)), BoundaryError);
    CHECK_THROWS_AS(self_energy(em, g, w2 * (1 - 5e-10)), BoundaryError);
    CHECK_NOTHROW(self_energy(em, g, w2 * (1 + 1e-8)));
    try {
        self_energy(em, g, w2);
    } catch (const BoundaryError& e) {
        CHECK(e.cutoff() == w2);
    }
}

TEST_CASE("f variants") {
    const auto g = reference_guide();
    const double e = 1.5;

    const EmitterParams gen{1.3, 1.1, 0.1, 0.07};
    const auto rv = f_eval(gen, g, e);
    const complex h1 = h_total(gen, 1, g, e);
    const complex h2 = h_total(gen, 2, g, e);
    CHECK(std::abs(rv.f - ((e - 1.3) * (e - 1.1) - (e - 1.1) * h1 - (e - 1.3) * h2)) < 1e-15);
    CHECK(rv.weights[0] == doctest::Approx(e - 1.1));
    CHECK(rv.weights[1] == doctest::Approx(e - 1.3));

    const EmitterParams deg{1.2, 1.2, 0.1, 0.07};
    const auto rd = f_eval(deg, g, e);
    CHECK(rd.variant == EmitterVariant::degenerate);
    CHECK(std::abs(rd.f - (e - 1.2 - h_total(deg, 1, g, e) - h_total(deg, 2, g, e))) < 1e-15);

    const EmitterParams two{1.3, 1.1, 0.0, 0.07};
    const auto rt = f_eval(two, g, e);
    CHECK(rt.variant == EmitterVariant::two_level);
    CHECK(std::abs(rt.f - (e - 1.1 - h_total(two, 2, g, e))) < 1e-15);
    CHECK(rt.weights[0] == 0.0);
    CHECK(rt.weights[1] == 1.0);
}

TEST_CASE("Im f equals the total width") {
    const auto g = reference_guide();
    Draw draw(5);
    for (int trial = 0; trial < 2000; ++trial) {
        EmitterParams em{draw.uniform(0.5, 3.0), draw.uniform(0.5, 3.0), draw.uniform(0.0, 0.3),
                         draw.uniform(0.0, 0.3)};
        if (trial % 5 == 1) em.omega2 = em.omega1;
        if (trial % 7 == 2) em.lambda1 = 0.0;
        const double e = draw.uniform(0.95, 3.5);
        ResolventValue rv;
        try {
            rv = f_eval(em, g, e);
        } catch (const BoundaryError&) {
            continue;
        }
        const double lam = rv.total_width();
        double sum = 0.0;
        for (const auto& part : rv.self.modes) sum += rv.channel_width(part.mode.rank);
        CHECK(rv.f.imag() == doctest::Approx(lam).epsilon(1e-12).scale(1e-12));
        CHECK(sum == doctest::Approx(lam).epsilon(1e-12).scale(1e-12));
    }
}

TEST_CASE("generic f approaches the degenerate form") {
    const auto g = reference_guide();
    const EmitterParams deg{1.2, 1.2, 0.1, 0.1};
    const EmitterParams near{1.2, 1.2 * (1 + 1e-6), 0.1, 0.1};
    for (double e = 1.0; e < 1.75; e += 0.01) {
        const double d = e - 1.2;
        const complex ratio = f_eval(near, g, e).f / f_eval(deg, g, e).f;
        if (std::abs(d) > 1e-3) CHECK(std::abs(ratio - d) < 1e-5);
    }
}
