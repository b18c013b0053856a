// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "qcluster/cgl.hpp"
#include "qcluster/verify.hpp"

#include <cstdio>
#include <iostream>
#include <sstream>

using namespace qcluster;

namespace {

struct Line {
    Line(int n, std::string t) : id(n), title(std::move(t)) {}
    int id;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

std::vector<DoubleCell> cells(const std::vector<const char*>& types, int max_total)
{
    std::vector<DoubleCell> out;
    for (const char* t : types) {
        const auto c = cartan_init(t);
        for (const auto& [w, u] : word_pairs(c, max_total))
            out.emplace_back(c, w, u);
    }
    return out;
}

Line identities(IdentityCounts& counts)
{
    Line line{1, "compatibility identity (Psi B)_kj = -delta_kj d_k"};
    line.seconds = timed([&] {
        for (const auto& cell : cells({"A1", "A2", "A3", "B2", "G2"}, 6))
            bar_identities(cell, counts);
    });
    std::ostringstream os;
    os << counts.cells << " cells, " << counts.columns << " columns, " << counts.product_failures
       << " failures with Psi in q-exponents; " << counts.product_failures_vunits
       << " columns differ by the factor 2 when Psi is read in v-exponents";
    if (!counts.first_failure.empty())
        os << "; first failure " << counts.first_failure;
    line.detail = os.str();
    line.pass = counts.cells > 0 && counts.product_failures == 0 && line.seconds < 60;
    return line;
}

Line grading(const IdentityCounts& counts, double seconds)
{
    Line line{2, "grading identity sum_j b_j deg M(e_j) = 0"};
    line.seconds = seconds;
    line.detail = std::to_string(counts.columns) + " columns, " + std::to_string(counts.grading_failures) + " failures";
    line.pass = counts.columns > 0 && counts.grading_failures == 0;
    return line;
}

Line btau()
{
    Line line{3, "exchange columns for every sigma agree with the direct linear solve"};
    BtauCounts counts;
    line.seconds = timed([&] {
        for (const auto& cell : cells({"A1", "A2", "B2"}, 5))
            if (cell.size() > 0)
                btau_versus_oracle(cell, xi_enumerate(cell.size()), counts);
    });
    line.detail = std::to_string(counts.cells) + " cells, " + std::to_string(counts.sigmas) + " sigma seeds, " +
                  std::to_string(counts.columns) + " columns, " + std::to_string(counts.mismatches) +
                  " mismatches, " + std::to_string(counts.oracle_errors) + " oracle errors";
    line.pass = counts.columns > 0 && counts.mismatches == 0 && counts.oracle_errors == 0 && line.seconds < 120;
    return line;
}

Line linkage()
{
    Line line{4, "adjacent sigma seeds are linked by relabeling or one mutation"};
    LinkageCounts counts;
    line.seconds = timed([&] {
        for (const auto& cell : cells({"A1", "A2", "A3", "B2", "G2"}, 5))
            linkage_family(cell, counts);
    });
    line.detail = std::to_string(counts.pairs) + " pairs (" + std::to_string(counts.relabel) + " relabel, " +
                  std::to_string(counts.mutate) + " mutation), " + std::to_string(counts.failures) +
                  " failures; mutation followed by the transposition matches in " +
                  std::to_string(counts.literal_holds) + " of " + std::to_string(counts.mutate) + " equal-level pairs";
    line.pass = counts.pairs > 0 && counts.relabel > 0 && counts.mutate > 0 && counts.failures == 0;
    return line;
}

Line calculus()
{
    Line line{5, "seed calculus: involution, compatibility preservation, sign independence, reduction"};
    CalculusCounts counts;
    long bz_incompatible = 0;
    line.seconds = timed([&] {
        for (const auto& cell : cells({"A1", "A2", "B2", "G2"}, 4)) {
            if (cell.size() == 0)
                continue;
            for (const auto& sigma : xi_enumerate(cell.size()))
                seed_calculus(cell.sigma_seed(sigma).seed, "sigma seed", counts);
            seed_calculus(cell.bar_seed(), "bar seed", counts);
        }
        for (const char* t : {"A1", "A2", "B2", "G2"}) {
            const auto c = cartan_init(t);
            for (const auto& [w, u] : word_pairs(c, 4))
                for (auto variant : {BzVariant::plain, BzVariant::modified}) {
                    const auto z = bz_seed(c, u, w, variant);
                    for (auto g : {BzGrading::first, BzGrading::second}) {
                        const auto s = z.seed(g);
                        if (!check_compatible(s).ok())
                            ++bz_incompatible;
                        seed_calculus(s, std::string(t) + " BZ seed", counts);
                        reduction_calculus(s, c.rank, std::string(t) + " BZ seed", counts);
                    }
                }
        }
    });
    line.detail = std::to_string(counts.seeds) + " seeds, " + std::to_string(counts.mutations) + " mutations, " +
                  std::to_string(counts.reductions) + " reductions, " + std::to_string(counts.failures) + " failures";
    if (!counts.notes.empty())
        line.detail += "; " + counts.notes.front();
    line.pass = counts.seeds > 0 && counts.reductions > 0 && counts.failures == 0 && bz_incompatible == 0;
    return line;
}

Line connections()
{
    Line line{6, "modified BZ seed reduces to the reversed-prefix seed"};
    int ok = 0;
    std::string failed;
    line.seconds = timed([&] {
        const auto a1 = cartan_init("A1"), a2 = cartan_init("A2");
        const std::vector<std::tuple<const CartanData*, WeylWord, WeylWord, const char*>> cases{
            {&a1, {0}, {0}, "A1 w=u=(1)"},
            {&a2, {0, 1, 0}, {0, 1, 0}, "A2 w=u=(1,2,1)"},
            {&a2, {0, 1}, {1, 0}, "A2 w=(1,2) u=(2,1)"}};
        for (const auto& [c, w, u, label] : cases) {
            if (connections_check(*c, w, u).ok())
                ++ok;
            else
                failed += std::string(" ") + label;
        }
    });
    line.detail = std::to_string(ok) + "/3 cells match" + (failed.empty() ? "" : "; failed:" + failed);
    line.pass = ok == 3;
    return line;
}

Line sl2()
{
    Line line{7, "sl2 worked example"};
    Sl2Example ex;
    line.seconds = timed([&] { ex = sl2_example(); });
    std::ostringstream os;
    os << "relation " << ex.relation << ", shared frozen " << ex.frozen_shared << ", frozen value " << ex.frozen_value
       << ", exchange relation " << ex.exchange_relation << ", frames " << ex.frame_identity << ex.frame_swapped
       << ", mutation " << ex.mutation;
    line.detail = os.str();
    line.pass = ex.ok() && line.seconds < 1;
    return line;
}

Line leading_terms()
{
    Line line{8, "leading-term law and associativity on shipped presentations"};
    long vectors = 0, bad = 0;
    int triples = 0, assoc_fail = 0;
    line.seconds = timed([&] {
        for (const auto& s : shipped_presentations()) {
            const CGLEngine e(s.presentation);
            for (const auto& f : exponents_up_to(s.presentation.n, 4)) {
                ++vectors;
                if (!xcomm_check(e, f))
                    ++bad;
            }
            const auto audit = associativity_audit(e, 1000);
            triples += audit.samples;
            assoc_fail += audit.failures;
        }
    });
    line.detail = std::to_string(vectors) + " exponent vectors, " + std::to_string(bad) + " failures; " +
                  std::to_string(triples) + " associativity triples, " + std::to_string(assoc_fail) + " failures";
    line.pass = vectors > 0 && bad == 0 && triples >= 2000 && assoc_fail == 0;
    return line;
}

Line normalization()
{
    Line line{9, "normalization condition after the shipped rescaling"};
    int entries = 0, bad = 0, second = 0, consistency = 0, before_bad = 0;
    bool consistent = true;
    line.seconds = timed([&] {
        for (const auto& s : shipped_presentations()) {
            const CGLEngine before_e(s.presentation);
            const PrimeTower before(before_e, s.c);
            for (const auto& e : normalization_check(before).entries)
                before_bad += !e.ok;
            const auto r = rescale(s.presentation, s.c, s.rescaling);
            const CGLEngine after_e(r.presentation);
            const PrimeTower after(after_e, r.c);
            for (const auto& e : normalization_check(after).entries) {
                ++entries;
                bad += !e.ok;
                second += e.m >= 2;
            }
            const auto rc = rescale_consistency(before, after, r.report);
            consistency += rc.checked;
            consistent = consistent && rc.ok();
        }
    });
    line.detail = std::to_string(entries) + " leading coefficients (" + std::to_string(second) +
                  " with the second-step scalar), " + std::to_string(bad) + " failures; " +
                  std::to_string(consistency) + " rescaling scalars consistent: " + (consistent ? "yes" : "no") +
                  "; before rescaling " + std::to_string(before_bad) + " entries fail";
    line.pass = entries > 0 && second > 0 && bad == 0 && consistent;
    return line;
}

} // namespace

int main()
{
    std::vector<Line> lines;
    IdentityCounts ids;
    lines.push_back(identities(ids));
    lines.push_back(grading(ids, lines.back().seconds));
    lines.push_back(btau());
    lines.push_back(linkage());
    lines.push_back(calculus());
    lines.push_back(connections());
    lines.push_back(sl2());
    lines.push_back(leading_terms());
    lines.push_back(normalization());

    bool all = true;
    for (const auto& l : lines) {
        all = all && l.pass;
        char secs[32];
        std::snprintf(secs, sizeof secs, "%.3f s", l.seconds);
        std::cout << (l.pass ? "PASS" : "FAIL") << " criterion " << l.id << ": " << l.title << " | " << l.detail
                  << " | " << secs << "\n";
    }
    return all ? 0 : 1;
}
