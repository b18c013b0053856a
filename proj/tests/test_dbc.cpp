#include "qcluster/dbc.hpp"

#include <gtest/gtest.h>

using namespace qcluster;

namespace {

const CartanData& a1() { static const auto c = cartan_init("A1"); return c; }
const CartanData& a2() { static const auto c = cartan_init("A2"); return c; }

} // namespace

TEST(Bowtie, A1MixedEntryAndDegrees)
{
    const auto p = bowtie_build(a1(), {0}, {0});
    // lambda_21 = q^<beta'_1, beta_1> = q^2
    EXPECT_EQ(p.lambda_exp(1, 0), 4);
    EXPECT_EQ(p.lambda_exp(0, 1), -4);
    EXPECT_EQ(p.degrees, (std::vector<RootVec>{{-1}, {1}}));
}

TEST(Bowtie, LambdaStarIsTwiceSymmetrizer)
{
    for (const char* t : {"A2", "B2", "G2"}) {
        const auto c = cartan_init(t);
        for (const auto& w : reduced_words(c, 2))
            for (const auto& u : reduced_words(c, 2)) {
                const auto p = bowtie_build(c, w, u);
                for (int k = 0; k < p.size(); ++k)
                    EXPECT_EQ(p.lambda_star_qexp[k], 2 * p.d_of(k)) << t;
            }
    }
}

TEST(Bowtie, LambdaIsSkewAndNuIsHalf)
{
    const auto p = bowtie_build(cartan_init("B2"), {0, 1, 0}, {1, 0});
    EXPECT_TRUE(p.lambda_exp.is_skew());
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < p.size(); ++j)
            EXPECT_EQ(p.lambda_exp(i, j), 2 * p.nu_exp(i, j));
}

TEST(SigmaFrame, IdentityUsesPredecessorChains)
{
    const auto p = bowtie_build(a2(), {0, 1, 0}, {0});
    const auto s = sigma_frame(p, identity_permutation(4));
    for (int j = 0; j < 4; ++j) {
        IntVec want(4, 0);
        for (int i : p.dwd.p_chain(j))
            want[i] = 1;
        EXPECT_EQ(s.ebar[j], want);
    }
}

TEST(SigmaFrame, A1Identity)
{
    const auto s = sigma_frame(bowtie_build(a1(), {0}, {0}), identity_permutation(2));
    EXPECT_EQ(s.frame(1, 0), 2);
}

TEST(SigmaFrame, ProductFormulaMatchesCongruence)
{
    for (const auto& [w, u] : std::vector<std::pair<WeylWord, WeylWord>>{{{0, 1}, {0}}, {{0, 1, 0}, {0}}, {{0, 1}, {1, 0}}}) {
        const auto p = bowtie_build(a2(), w, u);
        for (const auto& sigma : xi_enumerate(p.size())) {
            std::vector<IntVec> ebar;
            for (int j = 0; j < p.size(); ++j) {
                IntVec e(p.size(), 0);
                for (int i : sigma_chain(sigma, p.dwd, j).indices)
                    e[i] = 1;
                ebar.push_back(e);
            }
            EXPECT_EQ(sigma_frame_product(p, sigma), frame_restrict(FrameMatrix(p.nu_exp), ebar));
        }
    }
}

TEST(Bfz, A1SingleColumn)
{
    const auto d = eta_machinery(a1(), {0}, {0});
    const auto b = bfz_matrix(a1(), d);
    EXPECT_EQ(b.ex, (std::vector<int>{0}));
    EXPECT_EQ(b.entries, (IntMatrix{{0}, {1}}));
}

TEST(Bfz, A2SkewSymmetrizable)
{
    const auto d = eta_machinery(a2(), {0, 1}, {0, 1});
    const auto b = bfz_matrix(a2(), d);
    EXPECT_EQ(bfz_d(a2(), d, b), IntVec(b.ex.size(), 1));
    EXPECT_TRUE(skew_symmetrizable(b, IntVec(b.ex.size(), 1)));
}

TEST(Bfz, SkewSymmetrizableAcrossTypes)
{
    for (const char* t : {"B2", "G2", "A3"}) {
        const auto c = cartan_init(t);
        for (const auto& w : reduced_words(c, 3))
            for (const auto& u : reduced_words(c, 2)) {
                const auto d = eta_machinery(c, w, u);
                const auto b = bfz_matrix(c, d);
                EXPECT_TRUE(skew_symmetrizable(b, bfz_d(c, d, b))) << t;
            }
    }
}

TEST(BColumns, A1)
{
    const DoubleCell cell(a1(), {0}, {0});
    EXPECT_EQ(cell.btilde.ex, (std::vector<int>{0}));
    EXPECT_EQ(cell.btilde.entries, (IntMatrix{{0}, {1}}));
    EXPECT_EQ(z_matrix(cell.pres.dwd), (IntMatrix{{1, 1}, {0, 1}}));
}

TEST(BColumns, A2FragmentAgreesWithOracle)
{
    const DoubleCell cell(a2(), {0, 1, 0}, {0});
    const auto s = sigma_frame(cell.pres, identity_permutation(cell.size()));
    for (std::size_t c = 0; c < cell.btilde.ex.size(); ++c)
        EXPECT_EQ(cell.btilde.entries.column(c), solve_b_oracle(cell.pres, s, cell.btilde.ex[c]));
}

TEST(Btau, IdentityReproducesBtilde)
{
    const DoubleCell cell(a2(), {0, 1, 0}, {0, 1});
    const auto s = cell.sigma_seed(identity_permutation(cell.size()));
    EXPECT_EQ(s.seed.exchange.ex, cell.btilde.ex);
    EXPECT_EQ(s.seed.exchange.entries, cell.btilde.entries);
}

TEST(Btau, ReversedPrefixReproducesBar)
{
    for (const char* t : {"A2", "B2"}) {
        const auto c = cartan_init(t);
        for (const auto& w : reduced_words(c, 3))
            for (const auto& u : reduced_words(c, 1)) {
                const DoubleCell cell(c, w, u);
                const auto s = cell.sigma_seed(longest_prefix_permutation(cell.pres.dwd.N, cell.size()));
                EXPECT_TRUE(same_seed(s.seed, cell.bar_seed())) << t;
            }
    }
}

TEST(Btau, AllSigmaAgreeWithOracleOnA2)
{
    const DoubleCell cell(a2(), {0, 1}, {1, 0, 1});
    for (const auto& sigma : xi_enumerate(cell.size())) {
        const auto s = cell.sigma_seed(sigma);
        for (std::size_t c = 0; c < s.data.ex.size(); ++c)
            EXPECT_EQ(s.seed.exchange.entries.column(c), solve_b_oracle(cell.pres, s.data, s.data.ex[c]));
    }
}

TEST(Oracle, A1Identity)
{
    const auto p = bowtie_build(a1(), {0}, {0});
    const auto s = sigma_frame(p, identity_permutation(2));
    EXPECT_EQ(solve_b_oracle(p, s, 0), (IntVec{0, 1}));
}

TEST(Oracle, InconsistentDataFlagged)
{
    const auto p = bowtie_build(a1(), {0}, {0});
    auto s = sigma_frame(p, identity_permutation(2));
    s.degrees[1] = {1};
    EXPECT_THROW(solve_b_oracle(p, s, 0), std::logic_error);
}

TEST(Oracle, ValueConditionHolds)
{
    const DoubleCell cell(cartan_init("B2"), {0, 1, 0}, {1});
    for (const auto& sigma : xi_enumerate(cell.size())) {
        const auto s = cell.sigma_seed(sigma);
        const auto rep = check_compatible(s.seed);
        ASSERT_TRUE(rep.ok());
        for (std::size_t c = 0; c < s.data.ex.size(); ++c) {
            const int l = s.data.ex[c];
            EXPECT_EQ(rep.columns[c].value, 2 * cell.pres.cartan.d[cell.pres.dwd.eta[sigma[l]]]);
        }
    }
}

TEST(Bz, A1Seed)
{
    const auto z = bz_seed(a1(), {0}, {0}, BzVariant::plain);
    EXPECT_EQ(z.size(), 3);
    EXPECT_EQ(z.eta, (std::vector<int>{0, 0, 0}));
    EXPECT_EQ(z.exchange.ex, (std::vector<int>{1}));
    EXPECT_EQ(z.exchange.entries, (IntMatrix{{-1}, {0}, {-1}}));
    EXPECT_TRUE(check_compatible(z.seed()).ok());
}

TEST(Bz, FrozenLabelsPairFundamentalWithItsImage)
{
    const WeylWord w{0, 1, 0};
    const auto z = bz_seed(a2(), {0, 1}, w, BzVariant::plain);
    const WeylWord winv(w.rbegin(), w.rend());
    for (int i = 0; i < a2().rank; ++i) {
        EXPECT_EQ(z.labels[i].first, a2().fundamental(i));
        EXPECT_EQ(z.labels[i].second, act(a2(), winv, a2().fundamental(i)));
    }
}

TEST(Bz, IntegralityAudit)
{
    for (const auto& [w, u] : std::vector<std::pair<WeylWord, WeylWord>>{{{0, 1, 0}, {0, 1, 0}}, {{0, 1}, {1, 0}}}) {
        for (auto v : {BzVariant::plain, BzVariant::modified})
            EXPECT_TRUE(frame_integral(FrameMatrix(bz_seed(a2(), u, w, v).mu)));
    }
    EXPECT_TRUE(frame_integral(FrameMatrix(bz_seed(a1(), {0}, {0}, BzVariant::plain).mu)));
}

TEST(Bz, RejectsNonReducedWords)
{
    EXPECT_THROW(bz_seed(a1(), {0, 0}, {0}, BzVariant::plain), ValidationError);
}

TEST(Connections, ThreeCells)
{
    EXPECT_TRUE(connections_check(a1(), {0}, {0}).ok());
    EXPECT_TRUE(connections_check(a2(), {0, 1, 0}, {0, 1, 0}).ok());
    EXPECT_TRUE(connections_check(a2(), {0, 1}, {1, 0}).ok());
}

TEST(Connections, ExchangePartIsNegatedReduction)
{
    const auto c = a2();
    const DoubleCell cell(c, {0, 1, 0}, {0, 1, 0});
    const auto red = graded_reduce(bz_seed(c, {0, 1, 0}, {0, 1, 0}, BzVariant::modified).seed(), c.rank);
    EXPECT_EQ(cell.bar_seed().exchange.entries, -red.exchange.entries);
}

TEST(Connections, OwnLabelConventionFails)
{
    EXPECT_FALSE(connections_check(a2(), {0, 1, 0}, {0, 1, 0}, BzConvention::own_labels).frames_match);
}

TEST(Connections, BothGradingComponentsWork)
{
    EXPECT_TRUE(connections_check(a2(), {0, 1}, {1, 0}, BzConvention::plain_labels, BzGrading::second).ok());
}

TEST(Linkage, A1Pair)
{
    const DoubleCell cell(a1(), {0}, {0});
    const auto r = linkage_check(cell, {0, 1}, 0);
    EXPECT_EQ(r.kind, LinkageKind::mutate);
    EXPECT_TRUE(r.holds);
    EXPECT_FALSE(r.literal_relabel_after_mutation);
}

TEST(Linkage, A2AllAdjacentPairs)
{
    const DoubleCell cell(a2(), {0, 1}, {0, 1});
    int relabel = 0, mutate = 0;
    for (const auto& sigma : xi_enumerate(cell.size()))
        for (int k = 0; k + 1 < cell.size(); ++k) {
            auto next = sigma;
            std::swap(next[k], next[k + 1]);
            if (!is_xi(next))
                continue;
            const auto r = linkage_check(cell, sigma, k);
            EXPECT_TRUE(r.holds);
            (r.kind == LinkageKind::relabel ? relabel : mutate)++;
        }
    EXPECT_GT(relabel, 0);
    EXPECT_GT(mutate, 0);
}
