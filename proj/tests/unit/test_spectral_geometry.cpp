#include "radialspec/errors.hpp"
#include "radialspec/spectral_geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace radialspec;
using namespace std::complex_literals;

namespace {

std::vector<std::string> value_strings(const ThresholdSet& t)
{
    std::vector<std::string> v;
    for (const auto& x : t.values) v.push_back(x.value.str());
    return v;
}

PointSpectrumOverlay a2_wall_overlay()
{
    // the wall subsystem of A2 is a single root of squared length 2
    auto rs = a_series(2);
    auto lat = compute_lattice(rs);
    auto b = lat.find(nullspace(QMatrix::from_rows({rs.roots()[rs.simples()[0]].coords}, 2)));
    PointSpectrumOverlay o;
    o.inject(subsystem(rs, lat, *b).system, {SpectralValue::rational(Rational(3, 10))});
    return o;
}

} // namespace

TEST(Thresholds, DefaultOverlay)
{
    EXPECT_EQ(value_strings(thresholds(a_series(2))), std::vector<std::string>{"2"});
    EXPECT_EQ(value_strings(thresholds(rank_one(1))), std::vector<std::string>{"1/4"});
    auto t = thresholds(rank_one(1));
    ASSERT_EQ(t.values[0].chains.size(), 1u);
    EXPECT_EQ(t.values[0].chains[0].path, std::vector<std::size_t>{0});
}

TEST(Thresholds, CollapseToRhoSquared)
{
    for (const auto& rs : {a_series(1), a_series(2), a_series(3), a_series(4), rank_one(3),
                           product({rank_one(1), rank_one(2)}), product({a_series(2), rank_one(1)})}) {
        auto t = thresholds(rs);
        ASSERT_EQ(t.values.size(), 1u);
        EXPECT_EQ(*t.values[0].value.exact, rho_norm2(rs));
        // one chain per chain of nested chamber faces; at least the b = 0 chain
        EXPECT_EQ(t.values[0].chains.front().path.front(), 0u);
    }
}

TEST(Thresholds, InjectedOverlay)
{
    auto t = thresholds(a_series(2), a2_wall_overlay());
    EXPECT_EQ(value_strings(t), (std::vector<std::string>{"9/5", "2"}));
    EXPECT_TRUE(t.warnings.empty());
}

TEST(Thresholds, UnmatchedOverlayKeyWarns)
{
    PointSpectrumOverlay o;
    o.inject(rank_one(5), {SpectralValue::rational(1)});
    auto t = thresholds(a_series(2), o);
    EXPECT_EQ(value_strings(t), std::vector<std::string>{"2"});
    EXPECT_EQ(t.warnings.size(), 1u);
}

TEST(Thresholds, ComplexInjectionDeduplicates)
{
    auto rs = a_series(2);
    auto lat = compute_lattice(rs);
    auto b = lat.find(nullspace(QMatrix::from_rows({rs.roots()[rs.simples()[0]].coords}, 2)));
    PointSpectrumOverlay o;
    o.inject(subsystem(rs, lat, *b).system, {SpectralValue::complex(0.1 - 0.2i), SpectralValue::complex(0.1 - 0.2i + 1e-15)});
    auto t = thresholds(rs, o);
    ASSERT_EQ(t.values.size(), 2u);
    EXPECT_FALSE(t.values[0].value.exact);
    EXPECT_NEAR(std::abs(t.values[0].value.value - (1.6 - 0.2i)), 0.0, 1e-14);
    EXPECT_EQ(t.values[0].chains.size(), 4u);  // two walls, two nearly equal injected values
}

TEST(Thresholds, InvariantUnderRelabelling)
{
    // reversing the simple roots permutes the lattice indices
    auto rs = a_series(3);
    QMatrix rev = QMatrix::from_rows({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}, 3);
    auto o1 = thresholds(rs);
    auto o2 = thresholds(rs.change_basis(rev));
    EXPECT_EQ(value_strings(o1), value_strings(o2));
}

TEST(Rays, AngleAndBase)
{
    auto r = ess_spectrum_rays(rank_one(1), -0.4i);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_DOUBLE_EQ(r[0].base.real(), 0.25);
    EXPECT_DOUBLE_EQ(r[0].angle, 0.8);
    auto a2 = ess_spectrum_rays(a_series(2), -0.3i);
    ASSERT_EQ(a2.size(), 1u);
    EXPECT_DOUBLE_EQ(a2[0].base.real(), 2.0);
    EXPECT_DOUBLE_EQ(a2[0].angle, 0.6);
    for (double t = -1.5; t <= 1.5; t += 0.1) {
        auto rr = ess_spectrum_rays(a_series(2), Complex(0.3, t));
        EXPECT_DOUBLE_EQ(rr[0].angle, -2 * t);
    }
    EXPECT_DOUBLE_EQ(ess_spectrum_rays(a_series(2), 0.7)[0].angle, 0.0);
    EXPECT_THROW(ess_spectrum_rays(rank_one(1), Complex(0, -std::numbers::pi / 2)), DomainError);
}

TEST(Rays, Tangential)
{
    auto rs = a_series(2);
    auto lat = compute_lattice(rs);
    auto b = lat.find(nullspace(QMatrix::from_rows({rs.roots()[rs.simples()[1]].coords}, 2)));
    auto r = spec_tangential(rs, lat, *b, 0.0);
    EXPECT_DOUBLE_EQ(r.base.real(), 1.5);
    EXPECT_DOUBLE_EQ(r.angle, 0.0);
    EXPECT_DOUBLE_EQ(spec_tangential(rs, lat, 0, 0.0).base.real(), 2.0);
    EXPECT_DOUBLE_EQ(spec_tangential(rs, lat, 0, Complex(0, -std::numbers::pi / 4)).angle, std::numbers::pi / 2);
}

TEST(Sheets, Examples)
{
    auto atlas = build_atlas(thresholds(rank_one(1)));
    EXPECT_DOUBLE_EQ(atlas.lambda0, 0.25);
    for (double beta : {0.0, 0.3, 1.2}) {
        EXPECT_EQ(sheet_classify(0.5 - 0.1i, beta, atlas), SheetClass::physical);
        EXPECT_EQ(sheet_classify(0.25, beta, atlas), SheetClass::on_cut);
    }
    EXPECT_EQ(sheet_classify(0.5 + 0.1i, 0.3, atlas), SheetClass::continued_in_chart);
    EXPECT_EQ(sheet_classify(0.25 + std::polar(2.0, 0.6), 0.3, atlas), SheetClass::on_cut);
    EXPECT_EQ(sheet_classify(0.25 + std::polar(2.0, 0.7), 0.3, atlas), SheetClass::outside_chart);
    EXPECT_EQ(sheet_classify(-1.0, 0.3, atlas), SheetClass::outside_chart);
    EXPECT_THROW(sheet_classify(1.0, std::numbers::pi / 2, atlas), ParameterError);
}

TEST(Sheets, BetaZeroIsPhysicalHalfPlane)
{
    auto atlas = build_atlas(thresholds(a_series(2)));
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(-10, 10);
    int wrong = 0;
    for (int i = 0; i < 1000; ++i) {
        Complex l(u(gen), u(gen));
        bool phys = sheet_classify(l, 0.0, atlas) == SheetClass::physical;
        wrong += phys != (l.imag() < 0);
    }
    EXPECT_EQ(wrong, 0);
}

TEST(Sheets, UpperSideByConjugation)
{
    auto lower = build_atlas(thresholds(rank_one(1)));
    auto upper = build_atlas(thresholds(rank_one(1)), Side::upper);
    EXPECT_EQ(sheet_classify(0.5 + 0.1i, 0.3, upper), SheetClass::physical);
    EXPECT_EQ(sheet_classify(0.5 - 0.1i, 0.3, upper), sheet_classify(0.5 + 0.1i, 0.3, lower));
}

TEST(Sheets, SheetPointBranch)
{
    auto atlas = build_atlas(thresholds(rank_one(1)));
    auto p = sheet_point(0.5 - 0.1i, 0.3, atlas);
    ASSERT_TRUE(p);
    EXPECT_LT(std::arg(p->z), 0.0);
    EXPECT_GT(std::arg(p->z), -std::numbers::pi / 2);
    EXPECT_NEAR(std::abs(p->lambda(atlas.lambda0) - (0.5 - 0.1i)), 0.0, 1e-15);
    auto q = sheet_point(0.5 + 0.1i, 0.3, atlas);
    ASSERT_TRUE(q);
    EXPECT_GE(std::arg(q->z), 0.0);
    EXPECT_LT(std::arg(q->z), 0.3);
    EXPECT_FALSE(sheet_point(-1.0, 0.3, atlas));
}

TEST(Sheets, Identification)
{
    auto atlas = build_atlas(thresholds(rank_one(1)));
    Complex l = 0.25 + std::polar(1.0, 0.5);
    EXPECT_FALSE(identify_points(l, 0.4, 0.1, atlas));
    EXPECT_TRUE(identify_points(l, 0.35, 0.3, atlas));
    EXPECT_TRUE(identify_points(0.7 - 0.2i, 1.0, 0.0, atlas));
    EXPECT_FALSE(identify_points(0.25, 0.3, 0.1, atlas));
    // monotone under shrinking the interval
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0, 1.5);
    std::uniform_real_distribution<double> z(-3, 3);
    for (int i = 0; i < 500; ++i) {
        double a = u(gen), b = u(gen);
        if (a > b) std::swap(a, b);
        Complex p(z(gen), z(gen));
        if (identify_points(p, b, a, atlas)) {
            double c = a + (b - a) * 0.3, d = a + (b - a) * 0.6;
            EXPECT_TRUE(identify_points(p, d, c, atlas));
        }
    }
}

TEST(Sheets, RamificationPoints)
{
    EXPECT_EQ(ramification_points(build_atlas(thresholds(rank_one(1))), 0.3), std::vector<Complex>{0.25});
    EXPECT_EQ(ramification_points(build_atlas(thresholds(a_series(2))), 0.3), std::vector<Complex>{2.0});
    auto r = ramification_points(build_atlas(thresholds(a_series(2), a2_wall_overlay())), 0.3);
    ASSERT_EQ(r.size(), 2u);
    EXPECT_DOUBLE_EQ(r[0].real(), 1.8);
    EXPECT_DOUBLE_EQ(r[1].real(), 2.0);
}
