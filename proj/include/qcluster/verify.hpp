#pragma once

#include "qcluster/cgl.hpp"
#include "qcluster/dbc.hpp"
#include "qcluster/seed.hpp"

#include <chrono>
#include <sstream>
#include <string>
#include <vector>

namespace qcluster {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<Check> checks;
    std::vector<Check> audits; // informational, never affect ok()

    void add(std::string name, bool pass, std::string detail = {})
    {
        checks.push_back({std::move(name), pass, std::move(detail)});
    }
    bool ok() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
};

struct CellPair {
    WeylWord w, u;
};

/// All pairs of reduced words with total length at most max_total.
inline std::vector<CellPair> word_pairs(const CartanData& c, int max_total, int min_total = 0)
{
    std::vector<std::vector<WeylWord>> words(max_total + 1);
    for (int l = 0; l <= max_total; ++l)
        words[l] = reduced_words(c, l);
    std::vector<CellPair> out;
    for (int n = 0; n <= max_total; ++n)
        for (int m = 0; n + m <= max_total; ++m) {
            if (n + m < min_total)
                continue;
            for (const auto& w : words[n])
                for (const auto& u : words[m])
                    out.push_back({w, u});
        }
    return out;
}

inline std::string word_string(const WeylWord& w)
{
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i)
        s += (i ? "," : "") + std::to_string(w[i] + 1);
    return s + ")";
}

/// Symmetrizer of the sigma = w0_N exchange column k, read from its letter.
inline long bar_symmetrizer(const DoubleCell& cell, int k)
{
    const auto& d = cell.pres.dwd;
    const int letter = k < d.N ? d.w[k] : d.u[k - d.N];
    return cell.pres.cartan.d[letter];
}

struct IdentityCounts {
    long cells = 0, columns = 0;
    long product_failures = 0;       // (psi/2) B = -delta d
    long product_failures_vunits = 0; // psi B = -delta d, literal reading
    long grading_failures = 0;
    std::string first_failure;
};

/// (Psi B)_kj over the sigma = w0_N seed, plus the degree balance of every column.
inline void bar_identities(const DoubleCell& cell, IdentityCounts& counts, bool perturb = false)
{
    QuantumSeed bar = cell.bar_seed();
    if (perturb && !bar.exchange.ex.empty()) {
        const int l = bar.exchange.ex.front();
        for (std::size_t j = 0; j < bar.size(); ++j)
            if (bar.exchange.entries(j, 0) != 0) {
                QMatrix psi = bar.frame.psi();
                psi(l, j) += 1;
                psi(j, l) -= 1;
                bar.frame = FrameMatrix(psi);
                break;
            }
    }
    ++counts.cells;
    const auto& b = bar.exchange;
    const std::size_t n = bar.size();
    for (std::size_t c = 0; c < b.ex.size(); ++c) {
        ++counts.columns;
        const int l = b.ex[c];
        const long dl = bar_symmetrizer(cell, l);
        bool ok = true, ok_v = true;
        for (std::size_t k = 0; k < n; ++k) {
            Rational s(0);
            for (std::size_t i = 0; i < n; ++i)
                s += bar.frame(k, i) * b.entries(i, c);
            const Rational want = static_cast<int>(k) == l ? Rational(-dl) : Rational(0);
            if (s / 2 != want)
                ok = false;
            if (s != want)
                ok_v = false;
        }
        if (!ok) {
            ++counts.product_failures;
            if (counts.first_failure.empty())
                counts.first_failure = cell.pres.cartan.name() + " w=" + word_string(cell.pres.dwd.w) +
                                       " u=" + word_string(cell.pres.dwd.u) + " column " + std::to_string(l + 1);
        }
        if (!ok_v)
            ++counts.product_failures_vunits;
        for (std::size_t t = 0; t < bar.grading_rank(); ++t) {
            long s = 0;
            for (std::size_t j = 0; j < n; ++j)
                s += b.entries(j, c) * bar.degrees[j][t];
            if (s != 0) {
                ++counts.grading_failures;
                break;
            }
        }
    }
}

struct BtauCounts {
    long cells = 0, sigmas = 0, columns = 0, mismatches = 0, oracle_errors = 0;
    long incompatible = 0, not_symmetrizable = 0;
    std::string first_failure;
};

inline void btau_versus_oracle(const DoubleCell& cell, const std::vector<Permutation>& sigmas, BtauCounts& counts)
{
    ++counts.cells;
    for (const auto& sigma : sigmas) {
        ++counts.sigmas;
        const SigmaSeed s = cell.sigma_seed(sigma);
        for (std::size_t c = 0; c < s.data.ex.size(); ++c) {
            ++counts.columns;
            try {
                if (solve_b_oracle(cell.pres, s.data, s.data.ex[c]) != s.seed.exchange.entries.column(c))
                    ++counts.mismatches;
            } catch (const std::exception& e) {
                ++counts.oracle_errors;
                if (counts.first_failure.empty())
                    counts.first_failure = e.what();
            }
        }
        if (!check_compatible(s.seed).ok())
            ++counts.incompatible;
        if (!skew_symmetrizable(s.seed.exchange, s.seed.d))
            ++counts.not_symmetrizable;
    }
}

struct LinkageCounts {
    long pairs = 0, relabel = 0, mutate = 0, failures = 0, literal_holds = 0;
    std::string first_failure;
};

inline void linkage_family(const DoubleCell& cell, LinkageCounts& counts)
{
    const int n = cell.size();
    if (n < 2)
        return;
    for (const auto& sigma : xi_enumerate(n))
        for (int k = 0; k + 1 < n; ++k) {
            Permutation next = sigma;
            std::swap(next[k], next[k + 1]);
            if (!is_xi(next))
                continue;
            ++counts.pairs;
            const auto res = linkage_check(cell, sigma, k);
            if (res.kind == LinkageKind::relabel)
                ++counts.relabel;
            else {
                ++counts.mutate;
                if (res.literal_relabel_after_mutation)
                    ++counts.literal_holds;
            }
            if (!res.holds) {
                ++counts.failures;
                if (counts.first_failure.empty())
                    counts.first_failure = cell.pres.cartan.name() + " k=" + std::to_string(k + 1);
            }
        }
}

struct CalculusCounts {
    long seeds = 0, mutations = 0, failures = 0;
    long reductions = 0;
    std::vector<std::string> notes;

    void fail(const std::string& what)
    {
        ++failures;
        if (notes.size() < 5)
            notes.push_back(what);
    }
};

/// Involution, sign-choice independence, compatibility under every operation.
inline void seed_calculus(const QuantumSeed& seed, const std::string& label, CalculusCounts& counts)
{
    ++counts.seeds;
    if (!check_compatible(seed).ok()) {
        counts.fail(label + ": input seed incompatible");
        return;
    }
    for (int k : seed.exchange.ex) {
        ++counts.mutations;
        try {
            const auto plus = frame_restrict(seed.frame, detail::mutation_basis(seed, k, +1));
            const auto minus = frame_restrict(seed.frame, detail::mutation_basis(seed, k, -1));
            if (plus != minus)
                counts.fail(label + ": sign choice changes the mutated frame at " + std::to_string(k + 1));
            const QuantumSeed once = mutate_seed(seed, k);
            if (!same_seed(mutate_seed(once, k), seed))
                counts.fail(label + ": mutation at " + std::to_string(k + 1) + " is not an involution");
        } catch (const std::exception& e) {
            counts.fail(label + ": " + e.what());
        }
    }
    const int n = static_cast<int>(seed.size());
    Permutation shift(n), rev(n);
    for (int i = 0; i < n; ++i) {
        shift[i] = (i + 1) % n;
        rev[i] = n - 1 - i;
    }
    const QuantumSeed a = reindex(seed, shift);
    if (!check_compatible(a).ok())
        counts.fail(label + ": reindex broke compatibility");
    Permutation composed(n);
    for (int i = 0; i < n; ++i)
        composed[i] = shift[rev[i]];
    if (!same_seed(reindex(a, rev), reindex(seed, composed)))
        counts.fail(label + ": reindex is not a right action");
    const QuantumSeed z = antiiso_transform(seed);
    if (!check_compatible(z).ok() || !same_seed(antiiso_transform(z), seed))
        counts.fail(label + ": antiisomorphism transform");
}

/// Reduction by the first r indices commutes with every mutation.
inline void reduction_calculus(const QuantumSeed& seed, int r, const std::string& label, CalculusCounts& counts)
{
    try {
        const QuantumSeed red = graded_reduce(seed, r);
        ++counts.reductions;
        if (!check_compatible(red).ok()) {
            counts.fail(label + ": reduction broke compatibility");
            return;
        }
        for (int k : seed.exchange.ex) {
            const QuantumSeed a = graded_reduce(mutate_seed(seed, k), r);
            const QuantumSeed b = mutate_seed(red, k - r);
            if (!same_seed(a, b))
                counts.fail(label + ": reduce and mutate at " + std::to_string(k + 1) + " do not commute");
        }
    } catch (const std::exception& e) {
        counts.fail(label + ": " + e.what());
    }
}

struct VerifyOptions {
    bool all_xi = false;
    BzConvention convention = BzConvention::plain_labels;
    BzGrading grading = BzGrading::first;
    bool inject_frame_fault = false;
};

/// Every check for one (type, w, u).
inline VerifyReport verify_cell(const CartanData& c, const WeylWord& w, const WeylWord& u,
                                const VerifyOptions& opt = {})
{
    VerifyReport rep;
    const DoubleCell cell(c, w, u);
    const int n = cell.size();

    IdentityCounts ids;
    bar_identities(cell, ids, opt.inject_frame_fault);
    rep.add("compatibility_identity", ids.product_failures == 0,
            std::to_string(ids.columns) + " columns, " + std::to_string(ids.product_failures) + " failures");
    rep.add("grading_identity", ids.grading_failures == 0,
            std::to_string(ids.columns) + " columns, " + std::to_string(ids.grading_failures) + " failures");

    std::vector<Permutation> sigmas;
    if (n > 0) {
        if (opt.all_xi)
            sigmas = xi_enumerate(n);
        else
            sigmas = {identity_permutation(n), longest_prefix_permutation(cell.pres.dwd.N, n)};
    }
    BtauCounts bt;
    btau_versus_oracle(cell, sigmas, bt);
    rep.add("btau_oracle", bt.mismatches == 0 && bt.oracle_errors == 0,
            std::to_string(bt.sigmas) + " sigma seeds, " + std::to_string(bt.columns) + " columns");
    rep.add("sigma_seed_compatibility", bt.incompatible == 0, std::to_string(bt.incompatible) + " incompatible");
    rep.add("skew_symmetrizable", bt.not_symmetrizable == 0,
            std::to_string(bt.not_symmetrizable) + " not symmetrizable");
    rep.add("btau_reproduces_bar",
            sigmas.empty() || same_seed(cell.sigma_seed(longest_prefix_permutation(cell.pres.dwd.N, n)).seed,
                                        cell.bar_seed()),
            "sigma = w0_N seed against the BFZ seed");

    if (opt.all_xi) {
        LinkageCounts lk;
        linkage_family(cell, lk);
        rep.add("linkage", lk.failures == 0,
                std::to_string(lk.pairs) + " adjacent pairs, " + std::to_string(lk.failures) + " failures");
    }

    CalculusCounts calc;
    for (const auto& sigma : sigmas)
        seed_calculus(cell.sigma_seed(sigma).seed, "sigma seed", calc);
    const BZSeedData mbz = bz_seed(c, u, w, BzVariant::modified, opt.convention);
    const QuantumSeed graded = mbz.seed(opt.grading);
    seed_calculus(graded, "modified BZ seed", calc);
    reduction_calculus(graded, c.rank, "modified BZ seed", calc);
    rep.add("seed_calculus", calc.failures == 0,
            std::to_string(calc.seeds) + " seeds, " + std::to_string(calc.mutations) + " mutations" +
                (calc.notes.empty() ? "" : "; " + calc.notes.front()));

    const BZSeedData bz = bz_seed(c, u, w, BzVariant::plain, opt.convention);
    rep.add("bz_compatible", check_compatible(bz.seed(opt.grading)).ok(), "plain BZ seed");
    const auto conn = connections_check(c, w, u, opt.convention, opt.grading);
    rep.add("connections", conn.ok(),
            std::string("frames ") + (conn.frames_match ? "match" : "differ") + ", exchange " +
                (conn.exchange_match ? "match" : "differ"));
    rep.audits.push_back({"bz_frame_integral", frame_integral(FrameMatrix(bz.mu)), "integer v-exponents in mu"});
    return rep;
}

/// Wall-clock seconds of a callable.
template <class F>
double timed(F&& f)
{
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace qcluster
