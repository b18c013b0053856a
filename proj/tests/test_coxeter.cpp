#include "qcluster/coxeter.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

using namespace qcluster;

namespace {

// Independent membership test: every prefix image is a set of consecutive integers.
bool prefix_images_are_intervals(const Permutation& p)
{
    int lo = p[0], hi = p[0];
    for (std::size_t k = 1; k < p.size(); ++k) {
        lo = std::min(lo, p[k]);
        hi = std::max(hi, p[k]);
        if (hi - lo != static_cast<int>(k))
            return false;
    }
    return true;
}

std::set<Permutation> brute_force_xi(int n)
{
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    std::set<Permutation> out;
    do {
        if (prefix_images_are_intervals(p))
            out.insert(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

} // namespace

TEST(Cartan, TypeA2)
{
    const auto c = cartan_init('A', 2);
    EXPECT_EQ(c.cartan, (IntMatrix{{2, -1}, {-1, 2}}));
    EXPECT_EQ(c.d, (IntVec{1, 1}));
    EXPECT_EQ(c.pairing_ww(0, 0), Rational(2, 3));
    EXPECT_EQ(c.pairing_ww(0, 1), Rational(1, 3));
}

TEST(Cartan, TypeG2OffDiagonalAndSymmetrizer)
{
    const auto c = cartan_init("G2");
    std::multiset<long> off{c.cartan(0, 1), c.cartan(1, 0)};
    EXPECT_EQ(off, (std::multiset<long>{-1, -3}));
    EXPECT_EQ(std::multiset<long>(c.d.begin(), c.d.end()), (std::multiset<long>{1, 3}));
    // d_i c_ij is symmetric
    EXPECT_EQ(c.d[0] * c.cartan(0, 1), c.d[1] * c.cartan(1, 0));
}

TEST(Cartan, PairingInvertsCartanRelation)
{
    for (const char* t : {"A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2"}) {
        const auto c = cartan_init(t);
        // <alpha_i^vee, varpi_j> = delta_ij with alpha_i^vee = alpha_i / d_i
        for (int i = 0; i < c.rank; ++i)
            for (int j = 0; j < c.rank; ++j) {
                const auto alpha = c.root_to_weight(c.simple_root(i));
                const Rational val = c.weight_pairing(alpha, c.fundamental(j)) / c.d[i];
                EXPECT_EQ(val, Rational(i == j ? 1 : 0)) << t;
            }
    }
}

TEST(Cartan, RejectsBadInput)
{
    EXPECT_THROW(cartan_init('A', 0), ValidationError);
    EXPECT_THROW(cartan_init('G', 3), ValidationError);
    EXPECT_THROW(cartan_init("Q2"), ValidationError);
}

TEST(Reflect, SimpleReflections)
{
    const auto c = cartan_init("A2");
    // alpha_1 = 2 varpi_1 - varpi_2
    EXPECT_EQ(reflect(c, 0, c.fundamental(0)), (WeightVec{-1, 1}));
    EXPECT_EQ(reflect(c, 0, c.fundamental(1)), c.fundamental(1));
    // varpi_1 - alpha_1 - alpha_2 = (1,0) - (2,-1) - (-1,2)
    EXPECT_EQ(act(c, {0, 1, 0}, c.fundamental(0)), (WeightVec{0, -1}));
}

TEST(Reflect, IsAnInvolutionEverywhere)
{
    for (const char* t : {"A3", "B2", "G2"}) {
        const auto c = cartan_init(t);
        for (int i = 0; i < c.rank; ++i) {
            WeightVec mu(c.rank);
            std::iota(mu.begin(), mu.end(), -1);
            EXPECT_EQ(reflect(c, i, reflect(c, i, mu)), mu);
        }
    }
}

TEST(WordRoots, A2LongestWord)
{
    const auto c = cartan_init("A2");
    const auto roots = word_roots(c, {0, 1, 0});
    EXPECT_EQ(roots, (std::vector<RootVec>{{1, 0}, {1, 1}, {0, 1}}));
    EXPECT_TRUE(is_reduced(c, {0, 1, 0}));
}

TEST(WordRoots, SingleLetter)
{
    const auto c = cartan_init("B3");
    for (int i = 0; i < 3; ++i)
        EXPECT_EQ(word_roots(c, {i}), (std::vector<RootVec>{c.simple_root(i)}));
}

TEST(WordRoots, NonReducedFlagged)
{
    const auto c = cartan_init("A1");
    EXPECT_EQ(word_roots(c, {0, 0}), (std::vector<RootVec>{{1}, {-1}}));
    EXPECT_FALSE(is_reduced(c, {0, 0}));
}

TEST(WordRoots, ReducedWordCountsOfLongestElements)
{
    // Number of reduced words of w0: A2 2, B2 2, G2 2, A3 16.
    EXPECT_EQ(reduced_words(cartan_init("A2"), 3).size(), 2u);
    EXPECT_EQ(reduced_words(cartan_init("B2"), 4).size(), 2u);
    EXPECT_EQ(reduced_words(cartan_init("G2"), 6).size(), 2u);
    EXPECT_EQ(reduced_words(cartan_init("A3"), 6).size(), 16u);
    EXPECT_TRUE(reduced_words(cartan_init("A2"), 4).empty());
}

TEST(EtaMachinery, A1)
{
    const auto d = eta_machinery(cartan_init("A1"), {0}, {0});
    EXPECT_EQ(d.eta, (std::vector<int>{0, 0}));
    EXPECT_EQ(d.p, (std::vector<Link>{Link::minus_infinity(), Link::at(0)}));
    EXPECT_EQ(d.s, (std::vector<Link>{Link::at(1), Link::plus_infinity()}));
}

TEST(EtaMachinery, InjectiveLevelsHaveNoLinks)
{
    const auto d = eta_machinery(cartan_init("A3"), {0, 1, 2}, {});
    for (int k = 0; k < d.size(); ++k) {
        EXPECT_EQ(d.p[k], Link::minus_infinity());
        EXPECT_EQ(d.s[k], Link::plus_infinity());
    }
}

TEST(EtaMachinery, A2Fragment)
{
    const auto d = eta_machinery(cartan_init("A2"), {0, 1, 0}, {0});
    EXPECT_EQ(d.eta, (std::vector<int>{0, 1, 0, 0}));
    EXPECT_EQ(d.s[2], Link::at(3));
    EXPECT_EQ(d.p[2], Link::at(0));
}

TEST(EtaMachinery, PredecessorAndSuccessorAreInverse)
{
    const auto c = cartan_init("B2");
    for (const auto& w : reduced_words(c, 3))
        for (const auto& u : reduced_words(c, 2)) {
            const auto d = eta_machinery(c, w, u);
            for (int k = 0; k < d.size(); ++k) {
                if (d.s[k].finite()) {
                    EXPECT_EQ(d.p[d.s[k].value()], Link::at(k));
                }
                if (d.p[k].finite()) {
                    EXPECT_EQ(d.s[d.p[k].value()], Link::at(k));
                }
            }
        }
}

TEST(Xi, SmallSizes)
{
    EXPECT_EQ(xi_enumerate(1), (std::vector<Permutation>{{0}}));
    EXPECT_EQ(xi_enumerate(2).size(), 2u);
    EXPECT_EQ(xi_enumerate(4).size(), 8u);
}

TEST(Xi, MatchesBruteForceFilter)
{
    for (int n = 1; n <= 7; ++n) {
        const auto list = xi_enumerate(n);
        const std::set<Permutation> got(list.begin(), list.end());
        EXPECT_EQ(got.size(), list.size()) << "duplicates for n=" << n;
        EXPECT_EQ(got, brute_force_xi(n)) << n;
        EXPECT_EQ(list.size(), std::size_t{1} << (n - 1));
        for (const auto& p : list)
            EXPECT_TRUE(is_xi(p));
    }
}

TEST(Gamma, SizeTwo)
{
    const auto g = gamma_subset(2);
    EXPECT_EQ(g.size(), 3u);
    std::set<Permutation> distinct;
    for (const auto& e : g)
        distinct.insert(e.perm);
    EXPECT_EQ(distinct, (std::set<Permutation>{{0, 1}, {1, 0}}));
}

TEST(Gamma, FirstRowAndMembership)
{
    for (int n = 1; n <= 6; ++n) {
        const auto g = gamma_subset(n);
        EXPECT_EQ(g.size(), static_cast<std::size_t>(n * (n + 1) / 2));
        for (const auto& e : g) {
            EXPECT_TRUE(is_xi(e.perm));
            if (e.i == 1 && e.j == n) {
                Permutation want;
                for (int t = 1; t < n; ++t)
                    want.push_back(t);
                want.push_back(0);
                EXPECT_EQ(e.perm, want);
            }
        }
    }
}

TEST(SigmaChain, IdentityUsesFullPredecessorChain)
{
    const auto d = eta_machinery(cartan_init("A2"), {0, 1, 0}, {0, 1});
    const auto id = identity_permutation(d.size());
    for (int k = 0; k < d.size(); ++k) {
        const auto ch = sigma_chain(id, d, k);
        EXPECT_TRUE(ch.predecessor);
        EXPECT_EQ(ch.indices, d.p_chain(k));
    }
}

TEST(SigmaChain, ReversalIsSuccessorCase)
{
    const auto d = eta_machinery(cartan_init("A2"), {0, 1, 0}, {0, 1});
    const auto rev = longest_prefix_permutation(d.size(), d.size());
    for (int k = 1; k < d.size(); ++k)
        EXPECT_FALSE(sigma_chain(rev, d, k).predecessor);
}

TEST(SigmaChain, A1Swap)
{
    const auto d = eta_machinery(cartan_init("A1"), {0}, {0});
    const auto ch = sigma_chain({1, 0}, d, 1);
    EXPECT_FALSE(ch.predecessor);
    EXPECT_EQ(ch.indices, (std::vector<int>{0, 1}));
    EXPECT_EQ(ch.length, 1);
}

TEST(SigmaChain, RejectsNonXi)
{
    const auto d = eta_machinery(cartan_init("A2"), {0, 1, 0}, {});
    EXPECT_THROW(sigma_chain({0, 2, 1}, d, 1), ValidationError);
}
