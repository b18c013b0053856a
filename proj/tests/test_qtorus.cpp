#include "qcluster/qtorus.hpp"

#include <gtest/gtest.h>

#include <memory>
#include <random>

using namespace qcluster;

namespace {

std::shared_ptr<const FrameMatrix> frame2()
{
    return std::make_shared<const FrameMatrix>(QMatrix{{0, 2}, {-2, 0}});
}

VLaurent q(long e) { return VLaurent::qpow(e); }

} // namespace

TEST(VLaurent, Arithmetic)
{
    const VLaurent a = VLaurent(1) - VLaurent::vpow(4);
    EXPECT_EQ(a * VLaurent::vpow(-4), VLaurent::vpow(-4) - VLaurent(1));
    EXPECT_EQ(q(1), VLaurent::vpow(2));
    EXPECT_EQ(VLaurent::vpow(3).inverse(), VLaurent::vpow(-3));
    EXPECT_EQ((a + VLaurent::vpow(4)), VLaurent(1));
    EXPECT_TRUE((a - a).is_zero());
}

TEST(Bicharacter, DiagonalIsOne)
{
    const FrameMatrix f(QMatrix{{0, 2}, {-2, 0}});
    EXPECT_EQ(bicharacter(f, {1, 0}, {1, 0}), VLaurent(1));
    EXPECT_EQ(bicharacter(f, {0, 1}, {0, 1}), VLaurent(1));
}

TEST(Bicharacter, ReadsEntryAndIsBiadditive)
{
    const FrameMatrix f(QMatrix{{0, 2}, {-2, 0}});
    EXPECT_EQ(bicharacter(f, {1, 0}, {0, 1}), q(1));
    EXPECT_EQ(bicharacter(f, {1, 1}, {0, 1}), q(1));
    EXPECT_EQ(bicharacter(f, {0, 1}, {1, 0}), q(-1));
}

TEST(Frame, RejectsNonSkew)
{
    EXPECT_THROW(FrameMatrix(QMatrix{{0, 1}, {1, 0}}), std::invalid_argument);
}

TEST(TorusMul, Unit)
{
    const auto fr = frame2();
    const auto m = TorusElement::monomial(fr, {3, -1});
    EXPECT_EQ(torus_mul(m, TorusElement::monomial(fr, {0, 0})), m);
}

TEST(TorusMul, GeneratorsQuasiCommute)
{
    const auto fr = frame2();
    const auto e1 = TorusElement::monomial(fr, {1, 0});
    const auto e2 = TorusElement::monomial(fr, {0, 1});
    // M(f)M(g) = Omega(f,g) M(f+g)
    EXPECT_EQ(torus_mul(e1, e2), TorusElement::monomial(fr, {1, 1}, q(1)));
    EXPECT_EQ(torus_mul(e2, e1), TorusElement::monomial(fr, {1, 1}, q(-1)));
}

TEST(TorusMul, SquareOfSum)
{
    const auto fr = frame2();
    const auto s = TorusElement::monomial(fr, {1, 0}) + TorusElement::monomial(fr, {0, 1});
    const auto want = TorusElement::monomial(fr, {2, 0}) + TorusElement::monomial(fr, {1, 1}, q(1) + q(-1)) +
                      TorusElement::monomial(fr, {0, 2});
    EXPECT_EQ(torus_mul(s, s), want);
}

TEST(TorusMul, RejectsMixedFrames)
{
    const auto a = TorusElement::monomial(frame2(), {1, 0});
    const auto b = TorusElement::monomial(std::make_shared<const FrameMatrix>(QMatrix{{0, 1}, {-1, 0}}), {1, 0});
    EXPECT_THROW(torus_mul(a, b), std::invalid_argument);
}

TEST(TorusMul, AssociativeOnRandomElements)
{
    const auto fr = std::make_shared<const FrameMatrix>(QMatrix{{0, 2, Rational(1, 2)}, {-2, 0, -3}, {Rational(-1, 2), 3, 0}});
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> ex(-2, 2), co(-3, 3);
    const auto random_element = [&] {
        TorusElement x(fr);
        for (int t = 0; t < 3; ++t)
            x += TorusElement::monomial(fr, {ex(rng), ex(rng), ex(rng)}, VLaurent::vpow(ex(rng)) * VLaurent(co(rng)));
        return x;
    };
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_element(), b = random_element(), c = random_element();
        EXPECT_EQ(torus_mul(torus_mul(a, b), c), torus_mul(a, torus_mul(b, c)));
    }
}

TEST(Scr, UnitVectorsGiveOne)
{
    const QMatrix e{{0, 2, 1}, {-2, 0, 5}, {-1, -5, 0}};
    for (int k = 0; k < 3; ++k) {
        IntVec f(3, 0);
        f[k] = 1;
        EXPECT_EQ(scr(e, f), VLaurent(1));
    }
}

TEST(Scr, SingleFactorAndScaling)
{
    const QMatrix e{{0, 2}, {-2, 0}};
    EXPECT_EQ(scr(e, {1, 1}), VLaurent::vpow(-2));
    EXPECT_EQ(scr_exponent(e, {2, 2}), 4 * scr_exponent(e, {1, 1}));
    const QMatrix e3{{0, 2, 1}, {-2, 0, 5}, {-1, -5, 0}};
    EXPECT_EQ(scr_exponent(e3, {2, -2, 4}), 4 * scr_exponent(e3, {1, -1, 2}));
}

TEST(FrameRestrict, StandardBasisIsIdentity)
{
    const FrameMatrix f(QMatrix{{0, 2, 1}, {-2, 0, -1}, {-1, 1, 0}});
    EXPECT_EQ(frame_restrict(f, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), f);
}

TEST(FrameRestrict, Congruence)
{
    const FrameMatrix f(QMatrix{{0, 2}, {-2, 0}});
    EXPECT_EQ(frame_restrict(f, {{1, 0}, {1, 1}}), f);
    EXPECT_EQ(frame_restrict(f, {{0, 1}, {1, 0}}), FrameMatrix(QMatrix{{0, -2}, {2, 0}}));
}

TEST(FrameRestrict, RejectsDependentVectors)
{
    const FrameMatrix f(QMatrix{{0, 2}, {-2, 0}});
    EXPECT_THROW(frame_restrict(f, {{1, 1}, {2, 2}}), std::invalid_argument);
}
