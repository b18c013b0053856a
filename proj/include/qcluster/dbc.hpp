#pragma once

#include "qcluster/coxeter.hpp"
#include "qcluster/qtorus.hpp"
#include "qcluster/seed.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcluster {

/// Generator data of the double-cell algebra for a pair of reduced words.
struct BowtiePresentation {
    CartanData cartan;
    DoubleWordData dwd;
    QMatrix lambda_exp;     // log_v lambda_kj
    QMatrix nu_exp;         // lambda_exp / 2
    IntVec lambda_star_qexp; // log_q lambda*_k = 2 d_{eta(k)}
    std::vector<RootVec> degrees;

    int size() const noexcept { return dwd.size(); }
    long d_of(int k) const { return cartan.d.at(dwd.eta.at(k)); }
};

/// lambda_kj for j < k: q^{-<beta,beta>} on the w block, q^{-<beta',beta'>} on the u block,
/// q^{<beta',beta>} across.
inline BowtiePresentation bowtie_build(const CartanData& cartan, const WeylWord& w, const WeylWord& u)
{
    BowtiePresentation p;
    p.cartan = cartan;
    p.dwd = eta_machinery(cartan, w, u);
    const auto& d = p.dwd;
    const int n = d.size();
    p.nu_exp = QMatrix(n, n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < k; ++j) {
            long val;
            if (k < d.N)
                val = -cartan.root_pairing(d.root(k), d.root(j));
            else if (j >= d.N)
                val = -cartan.root_pairing(d.root(k), d.root(j));
            else
                val = cartan.root_pairing(d.root(k), d.root(j));
            p.nu_exp(k, j) = val;
            p.nu_exp(j, k) = -val;
        }
    p.lambda_exp = p.nu_exp.map<Rational>([](const Rational& x) { return Rational(2 * x); });
    p.lambda_star_qexp.resize(n);
    p.degrees.resize(n);
    for (int k = 0; k < n; ++k) {
        p.lambda_star_qexp[k] = 2 * p.d_of(k);
        p.degrees[k] = d.root(k);
        if (k < d.N)
            for (auto& x : p.degrees[k])
                x = -x;
    }
    return p;
}

/// Seed data attached to one sigma in Xi.
struct SigmaSeedData {
    Permutation sigma;
    std::vector<SigmaChain> chains;
    std::vector<IntVec> ebar;       // ebar_{sigma,j}
    FrameMatrix frame;              // r_sigma
    IntMatrix z, z_sigma;
    std::vector<RootVec> degrees;   // of M_sigma(e_k)
    std::vector<int> ex;            // ex_sigma
    IntVec d;                       // aligned with ex
};

/// z_jk = 1 when j = p^m(k), m >= 0.
inline IntMatrix z_matrix(const DoubleWordData& d)
{
    const int n = d.size();
    IntMatrix z(n, n);
    for (int k = 0; k < n; ++k)
        for (int j : d.p_chain(k))
            z(j, k) = 1;
    return z;
}

inline std::vector<int> ex_sigma(const DoubleWordData& d, const Permutation& sigma)
{
    std::vector<int> ex;
    const int n = d.size();
    for (int l = 0; l < n; ++l)
        for (int k = l + 1; k < n; ++k)
            if (d.eta[sigma[k]] == d.eta[sigma[l]]) {
                ex.push_back(l);
                break;
            }
    return ex;
}

/// Frame of sigma by the closed product formula, read in sigma coordinates.
inline FrameMatrix sigma_frame_product(const BowtiePresentation& pres, const Permutation& sigma)
{
    const auto& d = pres.dwd;
    const int n = d.size();
    // nu_sigma(a, b) = nu(sigma a, sigma b)
    QMatrix psi(n, n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
            Rational s(0);
            for (int a = 0; a <= k; ++a) {
                if (d.eta[sigma[a]] != d.eta[sigma[k]])
                    continue;
                for (int b = 0; b <= j; ++b)
                    if (d.eta[sigma[b]] == d.eta[sigma[j]])
                        s += pres.nu_exp(sigma[a], sigma[b]);
            }
            psi(k, j) = s;
        }
    return FrameMatrix(std::move(psi));
}

inline SigmaSeedData sigma_frame(const BowtiePresentation& pres, const Permutation& sigma)
{
    const auto& d = pres.dwd;
    const int n = d.size();
    if (static_cast<int>(sigma.size()) != n || !is_xi(sigma))
        throw ValidationError("permutation is not in Xi");
    SigmaSeedData s;
    s.sigma = sigma;
    s.z_sigma = IntMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        s.chains.push_back(sigma_chain(sigma, d, j));
        IntVec e(n, 0);
        for (int i : s.chains.back().indices) {
            e[i] = 1;
            s.z_sigma(i, j) = 1;
        }
        s.ebar.push_back(std::move(e));
    }
    s.frame = frame_restrict(FrameMatrix(pres.nu_exp), s.ebar);
    if (s.frame != sigma_frame_product(pres, sigma))
        throw std::logic_error("sigma frame: congruence and product formulas disagree");
    s.z = z_matrix(d);
    const std::size_t g = static_cast<std::size_t>(pres.cartan.rank);
    for (int k = 0; k < n; ++k) {
        RootVec deg(g, 0);
        for (int i : s.chains[k].indices)
            for (std::size_t t = 0; t < g; ++t)
                deg[t] += pres.degrees[i][t];
        s.degrees.push_back(std::move(deg));
    }
    s.ex = ex_sigma(d, sigma);
    for (int l : s.ex)
        s.d.push_back(pres.cartan.d[d.eta[sigma[l]]]);
    return s;
}

/// Exchange matrix of the double word -i_1..-i_N, i'_1..i'_M, in the reversed-w coordinates.
inline ExchangeMatrix bfz_matrix(const CartanData& cartan, const DoubleWordData& d)
{
    const int n = d.size();
    std::vector<int> letters(d.w.begin(), d.w.end());
    letters.insert(letters.end(), d.u.begin(), d.u.end());
    const LevelMaps maps = level_maps(letters);
    const auto eps = [&](int k) { return k < d.N ? -1 : 1; };
    // +infinity compares above every index
    const auto sv = [&](int k) { return maps.s[k].finite() ? maps.s[k].value() : n; };
    ExchangeMatrix b;
    for (int k = 0; k < n; ++k)
        if (maps.s[k].finite())
            b.ex.push_back(k);
    b.entries = IntMatrix(n, b.ex.size());
    for (std::size_t c = 0; c < b.ex.size(); ++c) {
        const int k = b.ex[c];
        for (int j = 0; j < n; ++j) {
            const long cjk = cartan.cartan(letters[j], letters[k]);
            long val = 0;
            const bool sj = maps.s[j].finite();
            if (maps.p[k] == Link::at(j))
                val = -eps(k);
            else if (maps.s[k] == Link::at(j))
                val = eps(j);
            else if ((j < k && k < sv(j) && sv(j) < sv(k) && sj && eps(k) == eps(sv(j))) ||
                     (j < k && k < sv(k) && sv(k) < sv(j) && eps(k) == -eps(sv(k))))
                val = -eps(k) * cjk;
            else if ((k < j && j < sv(k) && sv(k) < sv(j) && eps(j) == eps(sv(k))) ||
                     (k < j && j < sv(j) && sv(j) < sv(k) && sj && eps(j) == -eps(sv(j))))
                val = eps(j) * cjk;
            b.entries(j, c) = val;
        }
    }
    return b;
}

inline IntVec bfz_d(const CartanData& cartan, const DoubleWordData& d, const ExchangeMatrix& b)
{
    IntVec out;
    for (int k : b.ex)
        out.push_back(cartan.d[k < d.N ? d.w[k] : d.u[k - d.N]]);
    return out;
}

namespace detail {

inline IntVec solve_integer(const IntMatrix& a, const IntVec& rhs, const char* what)
{
    const auto sol = solve(to_rational(a), to_rational(rhs));
    if (sol.status != SolveStatus::unique)
        throw std::logic_error(std::string(what) + ": singular change of basis");
    return to_integer(sol.x);
}

inline IntVec add(IntVec a, const IntVec& b, long scale = 1)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] += scale * b[i];
    return a;
}

} // namespace detail

/// Columns b^l of the sigma = id exchange matrix, obtained from the reversed-w matrix.
inline ExchangeMatrix b_columns(const DoubleWordData& d, const ExchangeMatrix& bbar)
{
    const int n = d.size();
    const Permutation wn = longest_prefix_permutation(d.N, n);
    IntMatrix zw(n, n);
    for (int j = 0; j < n; ++j)
        for (int a = 0; a <= j; ++a)
            if (d.eta[wn[a]] == d.eta[wn[j]])
                zw(wn[a], j) = 1;
    const IntMatrix z = z_matrix(d);
    ExchangeMatrix out;
    for (int l = 0; l < n; ++l)
        if (d.s[l].finite())
            out.ex.push_back(l);
    out.entries = IntMatrix(n, out.ex.size());
    for (std::size_t c = 0; c < out.ex.size(); ++c) {
        const int l = out.ex[c];
        IntVec combo(n, 0);
        if (l >= d.N) {
            combo = bbar.column(l);
        } else if (d.s[l].value() < d.N) {
            combo = detail::add(combo, bbar.column(d.N - 1 - d.s[l].value()), -1);
        } else {
            for (int i : d.p_chain(l))
                combo = detail::add(combo, bbar.column(d.N - 1 - i));
        }
        const IntVec col = detail::solve_integer(z, zw * combo, "b_columns");
        for (int i = 0; i < n; ++i)
            out.entries(i, c) = col[i];
    }
    return out;
}

/// Exchange columns for sigma expressed through the sigma = id columns.
inline ExchangeMatrix btau_columns(const DoubleWordData& d, const SigmaSeedData& s,
                                   const ExchangeMatrix& btilde)
{
    const int n = d.size();
    const auto& sigma = s.sigma;
    ExchangeMatrix out;
    out.ex = s.ex;
    out.entries = IntMatrix(n, s.ex.size());
    for (std::size_t c = 0; c < s.ex.size(); ++c) {
        const int l = s.ex[c];
        int k = l + 1;
        while (d.eta[sigma[k]] != d.eta[sigma[l]])
            ++k;
        IntVec sum(n, 0);
        long sign = 0;
        if (sigma[k] > sigma[l]) {
            // sigma(k) = s^m sigma(l)
            for (int i = sigma[l]; i != sigma[k]; i = d.s[i].value())
                sum = detail::add(sum, btilde.column(i));
            sign = 1;
        } else {
            for (int i = d.p[sigma[l]].value();; i = d.p[i].value()) {
                sum = detail::add(sum, btilde.column(i));
                if (i == sigma[k])
                    break;
            }
            sign = -1;
        }
        IntVec rhs = s.z * sum;
        for (auto& x : rhs)
            x *= sign;
        const IntVec col = detail::solve_integer(s.z_sigma, rhs, "btau_columns");
        for (int i = 0; i < n; ++i)
            out.entries(i, c) = col[i];
    }
    return out;
}

/// Direct linear solve of the orthogonality, value and degree conditions for column l.
inline IntVec solve_b_oracle(const BowtiePresentation& pres, const SigmaSeedData& s, int l)
{
    const int n = pres.size();
    if (std::find(s.ex.begin(), s.ex.end(), l) == s.ex.end())
        throw std::out_of_range("solve_b_oracle: index is not exchangeable for sigma");
    const int first = pres.dwd.p_chain(s.sigma[l]).front();
    const long target = pres.lambda_star_qexp[first];
    const std::size_t g = static_cast<std::size_t>(pres.cartan.rank);
    QMatrix a(n + g, n);
    QVec rhs(n + g, Rational(0));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i)
            a(j, i) = s.frame(i, j);
        // Omega(b, e_l)^2 = lambda*, so psi(b, e_l) equals the q-exponent of lambda*.
        if (j == l)
            rhs[j] = target;
    }
    for (std::size_t t = 0; t < g; ++t)
        for (int i = 0; i < n; ++i)
            a(n + t, i) = s.degrees[i][t];
    const auto sol = solve(a, rhs);
    if (sol.status == SolveStatus::inconsistent)
        throw std::logic_error("solve_b_oracle: no solution");
    if (sol.status == SolveStatus::underdetermined)
        throw std::logic_error("solve_b_oracle: solution is not unique");
    for (const auto& x : sol.x)
        if (!is_integer(x))
            throw std::logic_error("solve_b_oracle: solution is not integral");
    return to_integer(sol.x);
}

/// Full seed data for one sigma.
struct SigmaSeed {
    SigmaSeedData data;
    QuantumSeed seed;
};

/// Shared per-(w,u) data for building sigma seeds.
struct DoubleCell {
    BowtiePresentation pres;
    ExchangeMatrix bbar;
    ExchangeMatrix btilde;

    DoubleCell(const CartanData& c, const WeylWord& w, const WeylWord& u)
        : pres(bowtie_build(c, w, u)),
          bbar(bfz_matrix(c, pres.dwd)),
          btilde(b_columns(pres.dwd, bbar))
    {
    }

    int size() const noexcept { return pres.size(); }

    QuantumSeed make_seed(const SigmaSeedData& s, const ExchangeMatrix& b) const
    {
        QuantumSeed q;
        q.frame = s.frame;
        q.exchange = b;
        q.degrees = s.degrees;
        q.d = s.d;
        return q;
    }

    SigmaSeed sigma_seed(const Permutation& sigma) const
    {
        SigmaSeed out{sigma_frame(pres, sigma), {}};
        out.seed = make_seed(out.data, btau_columns(pres.dwd, out.data, btilde));
        return out;
    }

    /// (M-bar, B-bar): the frame for sigma = reversal of the w block, exchange from the BFZ formula.
    QuantumSeed bar_seed() const
    {
        const auto s = sigma_frame(pres, longest_prefix_permutation(pres.dwd.N, size()));
        QuantumSeed q = make_seed(s, bbar);
        q.d = bfz_d(pres.cartan, pres.dwd, bbar);
        return q;
    }
};

/// How the modified-BZ frame is derived from weight labels.
enum class BzConvention {
    plain_labels,  // mu computed from the plain BZ labels and carried over unchanged
    own_labels     // mu computed from the modified labels themselves
};

/// Which component of the P x P degree drives graded reduction.
enum class BzGrading { first, second };

enum class BzVariant { plain, modified };

struct BZSeedData {
    int r = 0, N = 0, M = 0;
    BzVariant variant = BzVariant::plain;
    std::vector<int> eta;
    std::vector<std::pair<WeightVec, WeightVec>> labels; // (gamma_k, delta_k)
    QMatrix mu;
    ExchangeMatrix exchange;
    std::vector<int> inv;
    std::vector<std::pair<WeightVec, WeightVec>> degrees; // (-gamma_k, delta_k)
    IntVec d;

    int size() const noexcept { return r + N + M; }

    /// Seed graded by one component of the degree.
    QuantumSeed seed(BzGrading grading = BzGrading::first) const
    {
        QuantumSeed q;
        q.frame = FrameMatrix(mu);
        q.exchange = exchange;
        q.inv = inv;
        for (const auto& [a, b] : degrees)
            q.degrees.push_back(grading == BzGrading::first ? a : b);
        q.d = d;
        return q;
    }
};

namespace detail {

inline std::vector<std::pair<WeightVec, WeightVec>> bz_plain_labels(const CartanData& c,
                                                                    const WeylWord& w,
                                                                    const WeylWord& u)
{
    const int r = c.rank;
    const int N = static_cast<int>(w.size());
    const int M = static_cast<int>(u.size());
    WeylWord winv(w.rbegin(), w.rend());
    std::vector<std::pair<WeightVec, WeightVec>> labels;
    for (int i = 0; i < r; ++i)
        labels.emplace_back(c.fundamental(i), act(c, winv, c.fundamental(i)));
    for (int k = 0; k < N; ++k) {
        // w^{-1}_{<k} = s_{i_N} ... s_{i_{k+1}}
        WeylWord tail(w.rbegin(), w.rbegin() + (N - 1 - k));
        labels.emplace_back(c.fundamental(w[k]), act(c, tail, c.fundamental(w[k])));
    }
    for (int k = 0; k < M; ++k) {
        WeylWord head(u.begin(), u.begin() + k + 1);
        labels.emplace_back(act(c, head, c.fundamental(u[k])), c.fundamental(u[k]));
    }
    return labels;
}

inline QMatrix bz_mu(const CartanData& c, const std::vector<std::pair<WeightVec, WeightVec>>& labels)
{
    const int n = static_cast<int>(labels.size());
    QMatrix mu(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < j; ++k) {
            const Rational v = c.weight_pairing(labels[j].first, labels[k].first) -
                               c.weight_pairing(labels[j].second, labels[k].second);
            mu(j, k) = v;
            mu(k, j) = -v;
        }
    return mu;
}

} // namespace detail

/// Berenstein-Zelevinsky seed of the double word 1..r, i_1..i_N, -i'_1..-i'_M.
inline BZSeedData bz_seed(const CartanData& c, const WeylWord& u, const WeylWord& w, BzVariant variant,
                          BzConvention convention = BzConvention::plain_labels)
{
    for (int i : w)
        c.check_letter(i);
    for (int i : u)
        c.check_letter(i);
    if (!is_reduced(c, w) || !is_reduced(c, u))
        throw ValidationError("BZ seed needs reduced words");
    BZSeedData z;
    z.r = c.rank;
    z.N = static_cast<int>(w.size());
    z.M = static_cast<int>(u.size());
    z.variant = variant;
    const int n = z.size();
    for (int i = 0; i < z.r; ++i)
        z.eta.push_back(i);
    z.eta.insert(z.eta.end(), w.begin(), w.end());
    z.eta.insert(z.eta.end(), u.begin(), u.end());

    const auto plain = detail::bz_plain_labels(c, w, u);
    z.labels = plain;
    if (variant == BzVariant::modified)
        for (auto& [a, b] : z.labels)
            std::swap(a, b);
    z.mu = detail::bz_mu(c, convention == BzConvention::plain_labels ? plain : z.labels);
    for (const auto& [gamma, delta] : z.labels) {
        WeightVec ng = gamma;
        for (auto& x : ng)
            x = -x;
        z.degrees.emplace_back(ng, delta);
    }

    const LevelMaps maps = level_maps(z.eta);
    const auto eps = [&](int k) { return k < z.r + z.N ? 1 : -1; };
    const auto sv = [&](int k) { return maps.s[k].finite() ? maps.s[k].value() : n; };
    for (int k = z.r; k < n; ++k)
        if (maps.s[k].finite())
            z.exchange.ex.push_back(k);
    z.exchange.entries = IntMatrix(n, z.exchange.ex.size());
    const int split = z.r + z.N; // first index beyond r + N, 0-based
    for (std::size_t col = 0; col < z.exchange.ex.size(); ++col) {
        const int k = z.exchange.ex[col];
        for (int j = 0; j < n; ++j) {
            const long cjk = c.cartan(z.eta[j], z.eta[k]);
            const bool sj = maps.s[j].finite();
            long val = 0;
            if (maps.p[k] == Link::at(j))
                val = -eps(k);
            else if (maps.s[k] == Link::at(j))
                val = eps(j);
            else if ((j < k && k < sv(j) && sv(j) < sv(k) && sj && eps(k) == eps(sv(j))) ||
                     (j < k && k < split && split <= sv(k) && sv(k) < sv(j)))
                val = -eps(k) * cjk;
            else if ((k < j && j < sv(k) && sv(k) < sv(j) && eps(j) == eps(sv(k))) ||
                     (k < j && j < split && split <= sv(j) && sv(j) < sv(k) && sj))
                val = eps(j) * cjk;
            z.exchange.entries(j, col) = val;
        }
    }
    for (int k = 0; k < n; ++k)
        if (!z.exchange.exchangeable(k))
            z.inv.push_back(k);
    for (int k : z.exchange.ex)
        z.d.push_back(c.d[z.eta[k]]);
    return z;
}

struct ConnectionsReport {
    bool frames_match = false;
    bool exchange_match = false;
    bool ex_match = false;
    QuantumSeed bar;     // sigma = reversed-w seed
    QuantumSeed reduced; // modified BZ after reduction and antiisomorphism
    bool ok() const { return frames_match && exchange_match && ex_match; }
};

/// Compares (M-bar, B-bar) with the reduced, antiisomorphism-transformed modified BZ seed.
inline ConnectionsReport connections_check(const CartanData& c, const WeylWord& w, const WeylWord& u,
                                           BzConvention convention = BzConvention::plain_labels,
                                           BzGrading grading = BzGrading::first)
{
    ConnectionsReport rep;
    const DoubleCell cell(c, w, u);
    rep.bar = cell.bar_seed();
    const BZSeedData mbz = bz_seed(c, u, w, BzVariant::modified, convention);
    rep.reduced = antiiso_transform(graded_reduce(mbz.seed(grading), c.rank));
    rep.frames_match = rep.reduced.frame == rep.bar.frame;
    const auto& a = rep.reduced.exchange;
    const auto& b = rep.bar.exchange;
    rep.ex_match = std::set<int>(a.ex.begin(), a.ex.end()) == std::set<int>(b.ex.begin(), b.ex.end());
    rep.exchange_match = rep.ex_match;
    if (rep.ex_match)
        for (int k : b.ex)
            if (a.column(k) != b.column(k))
                rep.exchange_match = false;
    return rep;
}

enum class LinkageKind { relabel, mutate };

struct LinkageResult {
    LinkageKind kind = LinkageKind::relabel;
    bool holds = false;
    bool literal_relabel_after_mutation = false; // mu_k then (k,k+1), recorded for the equal-level case
};

/// Compares the seeds of sigma and sigma' = sigma (k,k+1).
/// Different levels: relabeling by (k,k+1). Equal levels: mutation at k, which already
/// leaves the shared chain variable at k+1 in place.
inline LinkageResult linkage_check(const DoubleCell& cell, const Permutation& sigma, int k)
{
    const int n = cell.size();
    if (k < 0 || k + 1 >= n)
        throw std::out_of_range("linkage_check: bad position");
    Permutation next = sigma;
    std::swap(next[k], next[k + 1]);
    if (!is_xi(sigma) || !is_xi(next))
        throw ValidationError("linkage_check: both permutations must lie in Xi");
    Permutation tau = identity_permutation(n);
    std::swap(tau[k], tau[k + 1]);
    const QuantumSeed from = cell.sigma_seed(sigma).seed;
    const QuantumSeed to = cell.sigma_seed(next).seed;
    LinkageResult res;
    const auto& eta = cell.pres.dwd.eta;
    if (eta[sigma[k]] != eta[sigma[k + 1]]) {
        res.kind = LinkageKind::relabel;
        res.holds = same_seed(reindex(from, tau), to);
    } else {
        res.kind = LinkageKind::mutate;
        const QuantumSeed mutated = mutate_seed(from, k);
        res.holds = same_seed(mutated, to);
        res.literal_relabel_after_mutation = same_seed(reindex(mutated, tau), to);
    }
    return res;
}

/// True when every frame exponent is an integer power of v.
inline bool frame_integral(const FrameMatrix& frame)
{
    for (std::size_t i = 0; i < frame.size(); ++i)
        for (std::size_t j = 0; j < frame.size(); ++j)
            if (!is_integer(frame(i, j)))
                return false;
    return true;
}

} // namespace qcluster
