#pragma once

#include "qcluster/matrix.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcluster {

/// Invalid Cartan type, bad letter, non-reduced word and similar input faults.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Coordinates in the basis of fundamental weights.
using WeightVec = IntVec;
/// Coordinates in the basis of simple roots.
using RootVec = IntVec;
/// Letters are 0-based simple reflection indices.
using WeylWord = std::vector<int>;
/// 0-based permutation, perm[k] is the image of k.
using Permutation = std::vector<int>;

struct CartanData {
    char family = 'A';
    int rank = 0;
    IntMatrix cartan;   // c_ij = <alpha_i^vee, alpha_j>
    IntVec d;           // |alpha_i|^2 / 2
    IntMatrix sym;      // <alpha_i, alpha_j> = d_i c_ij
    QMatrix pairing_ww; // <varpi_i, varpi_j>

    std::string name() const { return std::string(1, family) + std::to_string(rank); }

    /// <x, y> for root-coordinate vectors.
    long root_pairing(const RootVec& x, const RootVec& y) const
    {
        return bilinear(x, sym, y);
    }

    /// <x, y> for weight-coordinate vectors.
    Rational weight_pairing(const WeightVec& x, const WeightVec& y) const
    {
        return bilinear(to_rational(x), pairing_ww, to_rational(y));
    }

    WeightVec root_to_weight(const RootVec& x) const
    {
        // alpha_i = sum_j c_ji varpi_j
        WeightVec w(rank, 0);
        for (int j = 0; j < rank; ++j)
            for (int i = 0; i < rank; ++i)
                w[j] += cartan(j, i) * x[i];
        return w;
    }

    WeightVec fundamental(int i) const
    {
        WeightVec w(rank, 0);
        w.at(i) = 1;
        return w;
    }

    RootVec simple_root(int i) const
    {
        RootVec a(rank, 0);
        a.at(i) = 1;
        return a;
    }

    void check_letter(int i) const
    {
        if (i < 0 || i >= rank)
            throw ValidationError("letter " + std::to_string(i + 1) + " outside [1," +
                                  std::to_string(rank) + "]");
    }
};

namespace detail {

inline CartanData cartan_from_form(char family, int rank, const IntVec& d,
                                   const std::vector<std::pair<int, int>>& edges)
{
    CartanData c;
    c.family = family;
    c.rank = rank;
    c.d = d;
    c.sym = IntMatrix(rank, rank);
    for (int i = 0; i < rank; ++i)
        c.sym(i, i) = 2 * d[i];
    for (auto [i, j] : edges) {
        const long v = -std::max(d[i], d[j]);
        c.sym(i, j) = v;
        c.sym(j, i) = v;
    }
    c.cartan = IntMatrix(rank, rank);
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j)
            c.cartan(i, j) = 2 * c.sym(i, j) / c.sym(i, i);
    // <varpi_i, varpi_j> = d_i (C^{-1})_ij
    const auto cinv = inverse(to_rational(c.cartan));
    if (!cinv)
        throw std::logic_error("singular Cartan matrix");
    c.pairing_ww = QMatrix(rank, rank);
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j)
            c.pairing_ww(i, j) = Rational(d[i]) * (*cinv)(i, j);
    return c;
}

inline std::vector<std::pair<int, int>> chain(int from, int to)
{
    std::vector<std::pair<int, int>> e;
    for (int i = from; i + 1 <= to; ++i)
        e.emplace_back(i, i + 1);
    return e;
}

} // namespace detail

/// Bourbaki labelling; short roots have squared length 2.
inline CartanData cartan_init(char family, int rank)
{
    using detail::chain;
    const auto bad = [&] {
        return ValidationError(std::string("invalid Cartan type ") + family + std::to_string(rank));
    };
    switch (family) {
    case 'A':
        if (rank < 1)
            throw bad();
        return detail::cartan_from_form('A', rank, IntVec(rank, 1), chain(0, rank - 1));
    case 'B': {
        if (rank < 2)
            throw bad();
        IntVec d(rank, 2);
        d.back() = 1;
        return detail::cartan_from_form('B', rank, d, chain(0, rank - 1));
    }
    case 'C': {
        if (rank < 3)
            throw bad();
        IntVec d(rank, 1);
        d.back() = 2;
        return detail::cartan_from_form('C', rank, d, chain(0, rank - 1));
    }
    case 'D': {
        if (rank < 4)
            throw bad();
        auto e = chain(0, rank - 2);
        e.emplace_back(rank - 3, rank - 1);
        return detail::cartan_from_form('D', rank, IntVec(rank, 1), e);
    }
    case 'E': {
        if (rank < 6 || rank > 8)
            throw bad();
        std::vector<std::pair<int, int>> e{{0, 2}, {1, 3}};
        for (int i = 2; i + 1 < rank; ++i)
            e.emplace_back(i, i + 1);
        return detail::cartan_from_form('E', rank, IntVec(rank, 1), e);
    }
    case 'F':
        if (rank != 4)
            throw bad();
        return detail::cartan_from_form('F', 4, IntVec{2, 2, 1, 1}, chain(0, 3));
    case 'G':
        if (rank != 2)
            throw bad();
        return detail::cartan_from_form('G', 2, IntVec{1, 3}, {{0, 1}});
    default:
        throw bad();
    }
}

/// Parses "A2", "g2", ...
inline CartanData cartan_init(const std::string& type)
{
    if (type.size() < 2)
        throw ValidationError("invalid Cartan type '" + type + "'");
    int rank = 0;
    try {
        std::size_t used = 0;
        rank = std::stoi(type.substr(1), &used);
        if (used != type.size() - 1)
            throw ValidationError("invalid Cartan type '" + type + "'");
    } catch (const std::logic_error&) {
        throw ValidationError("invalid Cartan type '" + type + "'");
    }
    return cartan_init(static_cast<char>(std::toupper(static_cast<unsigned char>(type[0]))), rank);
}

/// s_i mu = mu - <mu, alpha_i^vee> alpha_i, in weight coordinates.
inline WeightVec reflect(const CartanData& c, int i, WeightVec mu)
{
    c.check_letter(i);
    if (mu.size() != static_cast<std::size_t>(c.rank))
        throw ValidationError("weight vector has wrong length");
    const long t = mu[i];
    for (int j = 0; j < c.rank; ++j)
        mu[j] -= t * c.cartan(j, i);
    return mu;
}

/// Applies s_{w_0} s_{w_1} ... s_{w_last} to mu (rightmost first).
inline WeightVec act(const CartanData& c, const WeylWord& w, WeightVec mu)
{
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        mu = reflect(c, *it, std::move(mu));
    return mu;
}

/// s_i in root coordinates.
inline RootVec reflect_root(const CartanData& c, int i, RootVec x)
{
    c.check_letter(i);
    long t = 0;
    for (int j = 0; j < c.rank; ++j)
        t += x[j] * c.cartan(i, j);
    x[i] -= t;
    return x;
}

/// beta_k = s_{i_1} ... s_{i_{k-1}} (alpha_{i_k})
inline std::vector<RootVec> word_roots(const CartanData& c, const WeylWord& word)
{
    std::vector<RootVec> out;
    out.reserve(word.size());
    for (std::size_t k = 0; k < word.size(); ++k) {
        RootVec b = c.simple_root(word[k]);
        for (std::size_t j = k; j-- > 0;)
            b = reflect_root(c, word[j], std::move(b));
        out.push_back(std::move(b));
    }
    return out;
}

inline bool is_positive(const RootVec& r)
{
    return std::all_of(r.begin(), r.end(), [](long x) { return x >= 0; }) &&
           std::any_of(r.begin(), r.end(), [](long x) { return x > 0; });
}

inline bool is_reduced(const CartanData& c, const WeylWord& word)
{
    const auto roots = word_roots(c, word);
    std::set<RootVec> seen;
    for (const auto& r : roots)
        if (!is_positive(r) || !seen.insert(r).second)
            return false;
    return true;
}

/// All reduced words of the given length, lexicographic.
inline std::vector<WeylWord> reduced_words(const CartanData& c, int length)
{
    std::vector<WeylWord> out;
    WeylWord cur;
    // w alpha_j > 0 iff w s_j is longer than w.
    const auto extend = [&](auto&& self, const std::vector<RootVec>& roots) -> void {
        if (static_cast<int>(cur.size()) == length) {
            out.push_back(cur);
            return;
        }
        for (int j = 0; j < c.rank; ++j) {
            RootVec b = c.simple_root(j);
            for (std::size_t t = cur.size(); t-- > 0;)
                b = reflect_root(c, cur[t], std::move(b));
            if (!is_positive(b) || std::find(roots.begin(), roots.end(), b) != roots.end())
                continue;
            cur.push_back(j);
            auto next = roots;
            next.push_back(b);
            self(self, next);
            cur.pop_back();
        }
    };
    extend(extend, {});
    return out;
}

/// Predecessor/successor value with explicit infinite sentinels.
struct Link {
    enum class Kind { minus_infinity, finite, plus_infinity };
    Kind kind = Kind::minus_infinity;
    int index = -1;

    static Link minus_infinity() { return {Kind::minus_infinity, -1}; }
    static Link plus_infinity() { return {Kind::plus_infinity, -1}; }
    static Link at(int i) { return {Kind::finite, i}; }

    bool finite() const noexcept { return kind == Kind::finite; }
    int value() const
    {
        if (!finite())
            throw std::logic_error("infinite link has no index");
        return index;
    }
    friend bool operator==(const Link&, const Link&) = default;
};

/// Predecessor and successor maps of a level function.
struct LevelMaps {
    std::vector<Link> p, s;
};

inline LevelMaps level_maps(const std::vector<int>& eta)
{
    const int n = static_cast<int>(eta.size());
    LevelMaps m;
    m.p.assign(n, Link::minus_infinity());
    m.s.assign(n, Link::plus_infinity());
    for (int k = 0; k < n; ++k)
        for (int j = k + 1; j < n; ++j)
            if (eta[j] == eta[k]) {
                m.s[k] = Link::at(j);
                m.p[j] = Link::at(k);
                break;
            }
    return m;
}

/// Index data for the combined generator list of a pair of reduced words.
/// Positions 0..N-1 carry the w letters in descending order, N..N+M-1 the u letters ascending.
struct DoubleWordData {
    WeylWord w, u;
    int N = 0, M = 0;
    std::vector<RootVec> beta, beta_prime;
    std::vector<int> eta;
    std::vector<Link> p, s;
    std::vector<int> o_minus, o_plus;
    std::vector<int> epsilon;
    std::vector<int> support;

    int size() const noexcept { return N + M; }

    /// Position inside its own word, 0-based.
    int abs_index(int k) const { return k < N ? N - 1 - k : k - N; }

    const RootVec& root(int k) const { return k < N ? beta[abs_index(k)] : beta_prime[abs_index(k)]; }

    std::vector<int> p_chain(int k) const
    {
        std::vector<int> c{k};
        while (p[c.back()].finite())
            c.push_back(p[c.back()].value());
        std::reverse(c.begin(), c.end());
        return c;
    }
};

inline DoubleWordData eta_machinery(const CartanData& c, const WeylWord& w, const WeylWord& u)
{
    for (int i : w)
        c.check_letter(i);
    for (int i : u)
        c.check_letter(i);
    if (!is_reduced(c, w))
        throw ValidationError("w word is not reduced");
    if (!is_reduced(c, u))
        throw ValidationError("u word is not reduced");
    DoubleWordData d;
    d.w = w;
    d.u = u;
    d.N = static_cast<int>(w.size());
    d.M = static_cast<int>(u.size());
    d.beta = word_roots(c, w);
    d.beta_prime = word_roots(c, u);
    const int n = d.N + d.M;
    d.eta.resize(n);
    for (int k = 0; k < n; ++k)
        d.eta[k] = k < d.N ? w[d.abs_index(k)] : u[d.abs_index(k)];
    auto maps = level_maps(d.eta);
    d.p = std::move(maps.p);
    d.s = std::move(maps.s);
    d.o_minus.assign(n, 0);
    d.o_plus.assign(n, 0);
    for (int k = 0; k < n; ++k) {
        for (Link l = d.p[k]; l.finite(); l = d.p[l.value()])
            ++d.o_minus[k];
        for (Link l = d.s[k]; l.finite(); l = d.s[l.value()])
            ++d.o_plus[k];
    }
    d.epsilon.assign(n, 1);
    for (int k = 0; k < d.N; ++k)
        d.epsilon[k] = -1;
    std::set<int> sup(d.eta.begin(), d.eta.end());
    d.support.assign(sup.begin(), sup.end());
    return d;
}

/// sigma([0,k]) is an interval for every k.
inline bool is_xi(const Permutation& sigma)
{
    const int n = static_cast<int>(sigma.size());
    std::vector<bool> seen(n, false);
    int lo = n, hi = -1;
    for (int k = 0; k < n; ++k) {
        const int x = sigma[k];
        if (x < 0 || x >= n || seen[x])
            return false;
        seen[x] = true;
        if (k > 0 && x != hi + 1 && x != lo - 1)
            return false;
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    return true;
}

/// The 2^(n-1) elements of Xi_n; bit k-1 of the code picks step k, 0 = max+1, 1 = min-1.
inline std::vector<Permutation> xi_enumerate(int n)
{
    if (n < 1)
        throw ValidationError("xi_enumerate needs n >= 1");
    if (n > 30)
        throw ValidationError("xi_enumerate: n too large");
    std::vector<Permutation> out;
    const std::uint32_t count = 1u << (n - 1);
    out.reserve(count);
    for (std::uint32_t code = 0; code < count; ++code) {
        Permutation s(n);
        int lo = std::popcount(code), hi = lo;
        s[0] = lo;
        for (int k = 1; k < n; ++k)
            s[k] = ((code >> (k - 1)) & 1u) ? --lo : ++hi;
        out.push_back(std::move(s));
    }
    return out;
}

struct GammaEntry {
    int i = 0, j = 0; // 1-based labels, i <= j
    Permutation perm;
};

/// sigma_{i,j} = [i+1..j, i, j+1..n, i-1..1], all n(n+1)/2 labels.
inline std::vector<GammaEntry> gamma_subset(int n)
{
    if (n < 1)
        throw ValidationError("gamma_subset needs n >= 1");
    std::vector<GammaEntry> out;
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            Permutation s;
            for (int t = i + 1; t <= j; ++t)
                s.push_back(t - 1);
            s.push_back(i - 1);
            for (int t = j + 1; t <= n; ++t)
                s.push_back(t - 1);
            for (int t = i - 1; t >= 1; --t)
                s.push_back(t - 1);
            out.push_back({i, j, std::move(s)});
        }
    return out;
}

inline Permutation identity_permutation(int n)
{
    Permutation s(n);
    for (int k = 0; k < n; ++k)
        s[k] = k;
    return s;
}

inline Permutation inverse_permutation(const Permutation& s)
{
    Permutation inv(s.size());
    for (std::size_t k = 0; k < s.size(); ++k)
        inv.at(s[k]) = static_cast<int>(k);
    return inv;
}

/// Reverses [0,N) and fixes the rest.
inline Permutation longest_prefix_permutation(int N, int n)
{
    Permutation s = identity_permutation(n);
    std::reverse(s.begin(), s.begin() + N);
    return s;
}

struct SigmaChain {
    bool predecessor = true; // false: successor case
    int length = 0;          // number of p (or s) steps
    std::vector<int> indices; // ascending
};

/// eta^{-1} eta sigma(k) intersected with sigma([0,k]).
inline SigmaChain sigma_chain(const Permutation& sigma, const DoubleWordData& d, int k)
{
    if (static_cast<int>(sigma.size()) != d.size() || !is_xi(sigma))
        throw ValidationError("permutation is not in Xi");
    const int target = d.eta.at(sigma.at(k));
    SigmaChain ch;
    ch.predecessor = sigma[0] <= sigma[k];
    for (int a = 0; a <= k; ++a)
        if (d.eta[sigma[a]] == target)
            ch.indices.push_back(sigma[a]);
    std::sort(ch.indices.begin(), ch.indices.end());
    ch.length = static_cast<int>(ch.indices.size()) - 1;
    const int anchor = ch.predecessor ? ch.indices.back() : ch.indices.front();
    if (anchor != sigma[k])
        throw std::logic_error("sigma chain is not anchored at sigma(k)");
    for (std::size_t t = 0; t + 1 < ch.indices.size(); ++t)
        if (d.s[ch.indices[t]] != Link::at(ch.indices[t + 1]))
            throw std::logic_error("sigma chain is not consecutive");
    return ch;
}

} // namespace qcluster
