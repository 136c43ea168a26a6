#include "casimir/permittivity.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace casimir;

namespace {

const OscillatorModel ethanol{23.84, 0.852, 6.600e14, 1.140e16};
const OscillatorModel alumina{7.03, 2.072, 1.000e14, 2.000e16};
const OscillatorModel dark_si{0.0, 10.66, 1e14, 6.6e15};

std::vector<double> log_points(double lo, double hi, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
    return v;
}

} // namespace

TEST(Oscillator, StaticValuesAreClosedForm) {
    EXPECT_DOUBLE_EQ(eval_oscillator(ethanol, 0.0), 25.692);
    EXPECT_DOUBLE_EQ(eval_oscillator(alumina, 0.0), 10.102);
    EXPECT_DOUBLE_EQ(ethanol.static_value(), 1.0 + 23.84 + 0.852);
}

TEST(Oscillator, EthanolAtUvResonance) {
    // 1 + 23.84 / (1 + (1.14e16/6.6e14)^2) + 0.852 / 2
    const double r = 1.14e16 / 6.6e14;
    const double by_hand = 1.0 + 23.84 / (1.0 + r * r) + 0.426;
    EXPECT_NEAR(eval_oscillator(ethanol, 1.14e16), by_hand, 1e-12);
    EXPECT_NEAR(eval_oscillator(ethanol, 1.14e16), 1.506, 5e-4);
}

TEST(Oscillator, TendsToOneAtInfinity) {
    EXPECT_NEAR(ethanol.evaluate(1e22), 1.0, 1e-11);
    EXPECT_EQ(ethanol.evaluate(std::numeric_limits<double>::infinity()), 1.0);
}

TEST(Oscillator, NegativeFrequencyIsDomainError) {
    EXPECT_THROW((void)ethanol.evaluate(-1.0), DomainError);
    EXPECT_THROW((void)PermittivityModel(ethanol).evaluate(-1e10), DomainError);
}

TEST(Oscillator, InvalidParametersRejected) {
    EXPECT_THROW(PermittivityModel(OscillatorModel{-1.0, 1.0, 1e14, 1e16}), InvariantError);
    EXPECT_THROW(PermittivityModel(OscillatorModel{1.0, 1.0, 0.0, 1e16}), InvariantError);
}

TEST(Oscillator, StrictlyDecreasingOnDenseGrid) {
    for (const auto& m : {ethanol, alumina, dark_si}) {
        double prev = m.evaluate(0.0);
        for (double xi : log_points(1e10, 1e19, 4000)) {
            const double v = m.evaluate(xi);
            ASSERT_LE(v, prev) << "xi = " << xi;
            ASSERT_GE(v, 1.0);
            prev = v;
        }
    }
}

TEST(PlasmaFrequency, IlluminatedSiliconValues) {
    const CarrierParameters p{2.1e25, 0.2588, 0.2063};
    EXPECT_NEAR(plasma_frequency(p, Species::electron) / 5.08e14, 1.0, 5e-3);
    EXPECT_NEAR(plasma_frequency(p, Species::hole) / 5.69e14, 1.0, 5e-3);
}

TEST(PlasmaFrequency, SquareRootScaling) {
    const CarrierParameters p{2.1e25, 0.2588, 0.2063};
    CarrierParameters q = p;
    q.n_density *= 4.0;
    EXPECT_NEAR(plasma_frequency(q, Species::electron), 2.0 * plasma_frequency(p, Species::electron), 1e-3);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> scale(0.1, 30.0);
    for (int i = 0; i < 200; ++i) {
        const double s = scale(rng);
        CarrierParameters r = p;
        r.n_density *= s * s;
        const double expect = s * plasma_frequency(p, Species::hole);
        ASSERT_NEAR(plasma_frequency(r, Species::hole) / expect, 1.0, 1e-14);
    }
}

TEST(PlasmaFrequency, RejectsNonPositive) {
    EXPECT_THROW(plasma_frequency({0.0, 0.26, 0.21}, Species::electron), InvariantError);
    EXPECT_THROW(plasma_frequency({1e25, -0.26, 0.21}, Species::electron), InvariantError);
}

class Carriers : public ::testing::Test {
  protected:
    CarrierAugmentedModel lit = make_carrier_augmented(PermittivityModel(dark_si), {2.1e25, 0.2588, 0.2063},
                                                       silicon_carriers::gamma_e, silicon_carriers::gamma_h);
};

TEST_F(Carriers, DrudeTermsAtFirstMatsubaraFrequency) {
    // Hand evaluation with the quoted plasma frequencies 5.08e14 / 5.69e14 rad/s.
    const double xi = 2.468e14;
    const double by_hand = 5.08e14 * 5.08e14 / (xi * (xi + 1.8e13)) + 5.69e14 * 5.69e14 / (xi * (xi + 5.0e12));
    EXPECT_NEAR(by_hand, 9.16, 0.01);
    EXPECT_NEAR(lit.carrier_terms(xi) / by_hand, 1.0, 5e-3);
    EXPECT_NEAR(eval_with_carriers(lit, xi) - dark_si.evaluate(xi), lit.carrier_terms(xi), 1e-12);
}

TEST_F(Carriers, ZeroFrequencySignalsDivergence) {
    EXPECT_THROW((void)lit.evaluate(0.0), DivergenceError);
    const PermittivityModel m(lit);
    EXPECT_TRUE(m.diverges_at_zero());
    EXPECT_TRUE(std::isinf(m.static_value()));
    EXPECT_EQ(m.te_zero_frequency_limit(), 0.0);
}

TEST_F(Carriers, DivergesTowardsZeroAndVanishesAtHighFrequency) {
    // Well below both damping rates the carrier terms grow as 1/xi.
    const double low = 5.08e14 * 5.08e14 / (1e6 * 1.8e13) + 5.69e14 * 5.69e14 / (1e6 * 5.0e12);
    EXPECT_NEAR(lit.evaluate(1e6) / low, 1.0, 1e-2);
    EXPECT_NEAR(lit.evaluate(1e5) / lit.evaluate(1e6), 10.0, 1e-3);
    EXPECT_NEAR(lit.evaluate(1e20) - dark_si.evaluate(1e20), 0.0, 1e-9);
}

TEST_F(Carriers, ExceedsBaseAndExcessDecreases) {
    double prev_excess = std::numeric_limits<double>::infinity();
    for (double xi : log_points(1e9, 1e19, 3000)) {
        const double excess = lit.evaluate(xi) - dark_si.evaluate(xi);
        ASSERT_GT(excess, 0.0);
        ASSERT_LT(excess, prev_excess);
        prev_excess = excess;
    }
}

TEST(Drude, Basics) {
    const PermittivityModel au(DrudeModel{1.37e16, 5.32e13});
    EXPECT_TRUE(au.diverges_at_zero());
    EXPECT_THROW((void)au.evaluate(0.0), DivergenceError);
    EXPECT_NEAR(au.evaluate(1e16), 1.0 + 1.37e16 * 1.37e16 / (1e16 * (1e16 + 5.32e13)), 1e-12);
    EXPECT_EQ(au.kind(), ModelKind::drude);
}

TEST(IdealMetalModel, InfiniteEverywhere) {
    const PermittivityModel m(IdealMetal{});
    EXPECT_TRUE(std::isinf(m.evaluate(1e15)));
    EXPECT_TRUE(m.diverges_at_zero());
    EXPECT_EQ(m.te_zero_frequency_limit(), 1.0);
}

TEST(Constant, RejectsBelowOne) {
    EXPECT_THROW(PermittivityModel(ConstantModel{0.5}), InvariantError);
    EXPECT_EQ(PermittivityModel(ConstantModel{2.0}).static_value(), 2.0);
}

TEST(Tabulated, InterpolatesInLogFrequency) {
    TabulatedPermittivity t{{1e13, 1e15}, {9.0, 3.0}, 10.0};
    const PermittivityModel m(t);
    EXPECT_DOUBLE_EQ(m.evaluate(1e14), 6.0);  // halfway in log
    EXPECT_DOUBLE_EQ(m.evaluate(1e13), 9.0);
    EXPECT_DOUBLE_EQ(m.evaluate(0.0), 10.0);
    EXPECT_DOUBLE_EQ(m.evaluate(0.5e13), 9.5); // linear in xi below the grid
    EXPECT_DOUBLE_EQ(m.evaluate(1e16), 1.0 + 2.0 * 1e-2); // 1/xi^2 tail
}

TEST(Tabulated, RejectsBadTables) {
    EXPECT_THROW(PermittivityModel(TabulatedPermittivity{{}, {}, 2.0}), InvariantError);
    EXPECT_THROW(PermittivityModel(TabulatedPermittivity{{2.0, 1.0}, {3.0, 2.0}, 3.0}), InvariantError);
    EXPECT_THROW(PermittivityModel(TabulatedPermittivity{{1.0, 2.0}, {2.0, 3.0}, 3.0}), InvariantError);
    EXPECT_THROW(PermittivityModel(TabulatedPermittivity{{1.0, 2.0}, {0.5, 0.4}, 3.0}), InvariantError);
    EXPECT_THROW(PermittivityModel(TabulatedPermittivity{{1.0, 2.0}, {3.0, 2.0}, 2.5}), InvariantError);
}

TEST(Tabulated, DivergentStaticValueBehavesLikeMetal) {
    TabulatedPermittivity t{{1e14, 1e15}, {1e4, 1e2}, infinite_permittivity};
    const PermittivityModel m(t);
    EXPECT_TRUE(m.diverges_at_zero());
    EXPECT_THROW((void)m.evaluate(0.0), DivergenceError);
    EXPECT_DOUBLE_EQ(m.evaluate(1e13), 1.0 + (1e4 - 1.0) * 10.0);
}

TEST(Tabulated, InterpolationStaysWithinNeighbours) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto grid = log_points(1e12, 1e18, 40);
    const auto table = tabulate(PermittivityModel(ethanol), grid);
    const PermittivityModel m(table);
    for (int i = 0; i < 20000; ++i) {
        const double xi = 1e12 * std::pow(1e6, u(rng));
        const auto hi = std::upper_bound(grid.begin(), grid.end(), xi) - grid.begin();
        if (hi == 0 || hi == static_cast<long>(grid.size())) continue;
        const double v = m.evaluate(xi);
        ASSERT_LE(v, table.values[hi - 1]);
        ASSERT_GE(v, table.values[hi]);
    }
    // Non-increasing everywhere, including extrapolated regions.
    double prev = m.evaluate(0.0);
    for (double xi : log_points(1e8, 1e21, 5000)) {
        const double v = m.evaluate(xi);
        ASSERT_LE(v, prev);
        ASSERT_GE(v, 1.0);
        prev = v;
    }
}

TEST(PermittivityModel, CopiesAreIndependentValues) {
    PermittivityModel a(ethanol);
    PermittivityModel b = a;
    a = PermittivityModel(alumina);
    EXPECT_DOUBLE_EQ(b.static_value(), 25.692);
    EXPECT_DOUBLE_EQ(a.static_value(), 10.102);
    ASSERT_NE(b.get_if<OscillatorModel>(), nullptr);
    EXPECT_EQ(b.get_if<DrudeModel>(), nullptr);
}
