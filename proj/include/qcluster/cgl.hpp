#pragma once

#include "qcluster/coxeter.hpp"
#include "qcluster/dbc.hpp"
#include "qcluster/qtorus.hpp"
#include "qcluster/seed.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcluster {

/// Rewriting exceeded its step or depth budget.
class RewriteBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Linear combination of ordered monomials x_1^{m_1} ... x_n^{m_n}.
class NFPoly {
public:
    using Terms = std::map<IntVec, VLaurent>;

    NFPoly() = default;
    explicit NFPoly(std::size_t n) : n_(n) {}

    static NFPoly constant(std::size_t n, const VLaurent& c = VLaurent(1))
    {
        NFPoly p(n);
        p.add_term(IntVec(n, 0), c);
        return p;
    }
    static NFPoly generator(std::size_t n, int i, const VLaurent& c = VLaurent(1))
    {
        IntVec f(n, 0);
        f.at(i) = 1;
        return monomial(f, c);
    }
    static NFPoly monomial(const IntVec& f, const VLaurent& c = VLaurent(1))
    {
        NFPoly p(f.size());
        p.add_term(f, c);
        return p;
    }

    std::size_t arity() const noexcept { return n_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(const IntVec& f, const VLaurent& c)
    {
        if (f.size() != n_)
            throw std::invalid_argument("monomial length does not match generator count");
        if (std::any_of(f.begin(), f.end(), [](long x) { return x < 0; }))
            throw std::invalid_argument("normal-form exponents must be nonnegative");
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(f, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    NFPoly& operator+=(const NFPoly& o)
    {
        same_arity(o);
        for (const auto& [f, c] : o.terms_)
            add_term(f, c);
        return *this;
    }
    NFPoly& operator-=(const NFPoly& o)
    {
        same_arity(o);
        for (const auto& [f, c] : o.terms_)
            add_term(f, -c);
        return *this;
    }
    friend NFPoly operator+(NFPoly a, const NFPoly& b) { return a += b; }
    friend NFPoly operator-(NFPoly a, const NFPoly& b) { return a -= b; }
    friend NFPoly operator*(const VLaurent& c, const NFPoly& a)
    {
        NFPoly out(a.n_);
        for (const auto& [f, x] : a.terms_)
            out.add_term(f, c * x);
        return out;
    }

    friend bool operator==(const NFPoly& a, const NFPoly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }
    friend bool operator!=(const NFPoly& a, const NFPoly& b) { return !(a == b); }

    /// Common degree of all terms, or nullopt when the element is not homogeneous.
    std::optional<RootVec> homogeneous_degree(const std::vector<RootVec>& degrees) const
    {
        std::optional<RootVec> deg;
        for (const auto& [f, c] : terms_) {
            RootVec d(degrees.empty() ? 0 : degrees.front().size(), 0);
            for (std::size_t i = 0; i < f.size(); ++i)
                for (std::size_t t = 0; t < d.size(); ++t)
                    d[t] += f[i] * degrees.at(i)[t];
            if (!deg)
                deg = d;
            else if (*deg != d)
                return std::nullopt;
        }
        if (!deg)
            deg = RootVec(degrees.empty() ? 0 : degrees.front().size(), 0);
        return deg;
    }

    /// Generators occurring with positive exponent in some term.
    std::vector<int> support() const
    {
        std::vector<int> out;
        for (std::size_t i = 0; i < n_; ++i)
            for (const auto& [f, c] : terms_)
                if (f[i] > 0) {
                    out.push_back(static_cast<int>(i));
                    break;
                }
        return out;
    }

    std::string str() const
    {
        std::ostringstream os;
        os << *this;
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const NFPoly& p)
    {
        if (p.terms_.empty())
            return os << '0';
        bool first = true;
        for (const auto& [f, c] : p.terms_) {
            os << (first ? "" : " + ") << '[' << c << ']';
            first = false;
            for (std::size_t i = 0; i < f.size(); ++i)
                if (f[i])
                    os << "*x" << i + 1 << (f[i] > 1 ? "^" + std::to_string(f[i]) : "");
        }
        return os;
    }

private:
    void same_arity(const NFPoly& o) const
    {
        if (n_ != o.n_)
            throw std::invalid_argument("normal-form elements over different generator counts");
    }

    std::size_t n_ = 0;
    Terms terms_;
};

/// Order of the leading term: compare from the last generator down.
inline bool revlex_less(const IntVec& a, const IntVec& b)
{
    for (std::size_t k = a.size(); k-- > 0;)
        if (a[k] != b[k])
            return a[k] < b[k];
    return false;
}

struct LeadingTerm {
    VLaurent coefficient;
    IntVec exponent;
};

inline LeadingTerm leading_term(const NFPoly& a)
{
    if (a.is_zero())
        throw std::invalid_argument("leading term of zero");
    auto best = a.terms().begin();
    for (auto it = a.terms().begin(); it != a.terms().end(); ++it)
        if (revlex_less(best->first, it->first))
            best = it;
    return {best->second, best->first};
}

/// x_k x_j = lambda_kj x_j x_k + T_kj for k > j, lambda_kj = v^{lambda_exp(k,j)}.
struct CGLPresentation {
    std::string name;
    int n = 0;
    QMatrix lambda_exp;
    std::map<std::pair<int, int>, NFPoly> tails; // key (k, j), k > j
    std::vector<int> eta;
    std::vector<RootVec> degrees;
    IntVec lambda_star_qexp;

    LevelMaps maps() const { return level_maps(eta); }

    QMatrix nu_exp() const
    {
        return lambda_exp.map<Rational>([](const Rational& x) { return Rational(x / 2); });
    }

    const NFPoly* tail(int k, int j) const
    {
        const auto it = tails.find({k, j});
        return it == tails.end() ? nullptr : &it->second;
    }

    NFPoly x(int i) const { return NFPoly::generator(n, i); }
    NFPoly one() const { return NFPoly::constant(n); }

    /// Shape, skewness, support and homogeneity of the tails.
    void validate() const
    {
        const auto un = static_cast<std::size_t>(n);
        if (lambda_exp.rows() != un || !lambda_exp.is_skew())
            throw std::invalid_argument(name + ": lambda exponents must form a skew n x n matrix");
        if (eta.size() != un || degrees.size() != un || lambda_star_qexp.size() != un)
            throw std::invalid_argument(name + ": per-generator data has the wrong length");
        for (const auto& g : degrees)
            if (g.size() != degrees.front().size())
                throw std::invalid_argument(name + ": degree vectors must share a length");
        for (const auto& [key, poly] : tails) {
            const auto [k, j] = key;
            if (!(0 <= j && j < k && k < n))
                throw std::invalid_argument(name + ": tail key must satisfy j < k");
            if (poly.arity() != un)
                throw std::invalid_argument(name + ": tail over the wrong generator count");
            for (int i : poly.support())
                if (i <= j || i >= k)
                    throw std::invalid_argument(name + ": tail T_" + std::to_string(k + 1) + "," +
                                                std::to_string(j + 1) +
                                                " uses generators outside the open interval");
            const auto deg = poly.homogeneous_degree(degrees);
            RootVec want = degrees[j];
            for (std::size_t t = 0; t < want.size(); ++t)
                want[t] += degrees[k][t];
            if (!poly.is_zero() && (!deg || *deg != want))
                throw std::invalid_argument(name + ": tail T_" + std::to_string(k + 1) + "," +
                                            std::to_string(j + 1) + " is not homogeneous of the right degree");
        }
    }
};

/// Normal-form multiplication with memoized rewriting. Not thread-safe: the cache is shared.
class CGLEngine {
public:
    static constexpr long default_budget = 1'000'000;

    explicit CGLEngine(CGLPresentation pres, long budget = default_budget)
        : pres_(std::move(pres)), budget_(budget)
    {
        pres_.validate();
        if (budget_ <= 0)
            throw std::invalid_argument("rewrite budget must be positive");
    }

    const CGLPresentation& presentation() const noexcept { return pres_; }
    int size() const noexcept { return pres_.n; }
    NFPoly x(int i) const { return pres_.x(i); }
    NFPoly one() const { return pres_.one(); }
    long last_steps() const noexcept { return steps_; }

    NFPoly mul(const NFPoly& a, const NFPoly& b) const
    {
        steps_ = 0;
        depth_ = 0;
        return mul_inner(a, b);
    }

    NFPoly product(const std::vector<NFPoly>& factors) const
    {
        NFPoly acc = one();
        for (const auto& f : factors)
            acc = mul(acc, f);
        return acc;
    }

    NFPoly power(const NFPoly& a, long m) const
    {
        if (m < 0)
            throw std::invalid_argument("negative power in a polynomial algebra");
        NFPoly acc = one();
        for (long i = 0; i < m; ++i)
            acc = mul(acc, a);
        return acc;
    }

private:
    static constexpr int max_depth = 20000;

    NFPoly mul_inner(const NFPoly& a, const NFPoly& b) const
    {
        if (a.arity() != static_cast<std::size_t>(pres_.n) || b.arity() != a.arity())
            throw std::invalid_argument("product of elements over a different generator count");
        NFPoly res(a.arity());
        for (const auto& [g, cb] : b.terms()) {
            NFPoly cur = a;
            for (int j = 0; j < pres_.n; ++j)
                for (long r = 0; r < g[j]; ++r) {
                    NFPoly next(a.arity());
                    for (const auto& [f, c] : cur.terms())
                        next += c * times_generator(f, j);
                    cur = std::move(next);
                }
            res += cb * cur;
        }
        return res;
    }

    /// x^f x_j in normal form.
    const NFPoly& times_generator(const IntVec& f, int j) const
    {
        const auto key = std::make_pair(f, j);
        if (const auto it = cache_.find(key); it != cache_.end())
            return it->second;
        if (++steps_ > budget_)
            throw RewriteBudgetExceeded("rewriting exceeded the step budget of " + std::to_string(budget_));
        if (++depth_ > max_depth)
            throw RewriteBudgetExceeded("rewriting exceeded the recursion depth limit");
        int t = -1;
        for (int i = pres_.n - 1; i >= 0; --i)
            if (f[i] > 0) {
                t = i;
                break;
            }
        NFPoly out(f.size());
        if (t <= j) {
            IntVec g = f;
            ++g[j];
            out.add_term(g, VLaurent(1));
        } else {
            // x^{f'} x_t x_j = lambda_tj x^{f'} x_j x_t + x^{f'} T_tj
            IntVec fp = f;
            --fp[t];
            const VLaurent lam = VLaurent::vpow(pres_.lambda_exp(t, j));
            const NFPoly left = times_generator(fp, j);
            for (const auto& [m, c] : left.terms())
                out += (lam * c) * times_generator(m, t);
            if (const NFPoly* tail = pres_.tail(t, j))
                out += mul_inner(NFPoly::monomial(fp), *tail);
        }
        --depth_;
        return cache_.emplace(key, std::move(out)).first->second;
    }

    CGLPresentation pres_;
    long budget_;
    mutable long steps_ = 0;
    mutable int depth_ = 0;
    mutable std::map<std::pair<IntVec, int>, NFPoly> cache_;
};

/// One-shot product; prefer a long-lived engine to reuse the rewriting cache.
inline NFPoly nf_mul(const CGLPresentation& pres, const NFPoly& a, const NFPoly& b)
{
    return CGLEngine(pres).mul(a, b);
}

/// Scalar c with a b = c b a, when it exists.
inline std::optional<VLaurent> quasi_commutation(const CGLEngine& e, const NFPoly& a, const NFPoly& b)
{
    const NFPoly ab = e.mul(a, b);
    const NFPoly ba = e.mul(b, a);
    if (ab.is_zero() || ba.is_zero())
        return std::nullopt;
    const auto la = leading_term(ab);
    const auto lb = leading_term(ba);
    if (la.exponent != lb.exponent || !la.coefficient.is_monomial() || !lb.coefficient.is_monomial())
        return std::nullopt;
    const VLaurent c = la.coefficient * lb.coefficient.inverse();
    if (ab != c * ba)
        return std::nullopt;
    return c;
}

/// lt(x_n^{f_n} ... x_1^{f_1}) = S_lambda(f) x^f.
inline bool xcomm_check(const CGLEngine& e, const IntVec& f)
{
    const auto& pres = e.presentation();
    if (f.size() != static_cast<std::size_t>(pres.n))
        throw std::invalid_argument("xcomm_check: exponent length mismatch");
    NFPoly acc = e.one();
    for (int k = pres.n - 1; k >= 0; --k)
        for (long r = 0; r < f[k]; ++r)
            acc = e.mul(acc, e.x(k));
    const auto lt = leading_term(acc);
    return lt.exponent == f && lt.coefficient == scr(pres.lambda_exp, f);
}

/// All exponent vectors with entries summing to at most total.
inline std::vector<IntVec> exponents_up_to(int n, int total)
{
    std::vector<IntVec> out;
    IntVec f(n, 0);
    const auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == n) {
            out.push_back(f);
            return;
        }
        for (int m = 0; m <= left; ++m) {
            f[i] = m;
            self(self, i + 1, left - m);
        }
        f[i] = 0;
    };
    rec(rec, 0, total);
    return out;
}

struct AssociativityAudit {
    int samples = 0;
    int failures = 0;
    bool ok() const { return failures == 0; }
};

/// Generator triples exhaustively, then random triples of small elements.
inline AssociativityAudit associativity_audit(const CGLEngine& e, int random_samples, unsigned seed = 12345,
                                              int max_total = 3)
{
    AssociativityAudit audit;
    const int n = e.size();
    const auto check = [&](const NFPoly& a, const NFPoly& b, const NFPoly& c) {
        ++audit.samples;
        if (e.mul(e.mul(a, b), c) != e.mul(a, e.mul(b, c)))
            ++audit.failures;
    };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                check(e.x(a), e.x(b), e.x(c));
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> gen(0, n - 1), terms(1, 2), total(0, max_total), vexp(-2, 2),
        coef(-3, 3);
    const auto random_element = [&] {
        NFPoly p(n);
        const int t = terms(rng);
        for (int i = 0; i < t; ++i) {
            IntVec f(n, 0);
            const int m = total(rng);
            for (int r = 0; r < m; ++r)
                ++f[gen(rng)];
            int cf = coef(rng);
            if (cf == 0)
                cf = 1;
            p.add_term(f, VLaurent::monomial(vexp(rng), cf));
        }
        return p;
    };
    for (int s = 0; s < random_samples; ++s) {
        const NFPoly a = random_element(), b = random_element(), c = random_element();
        check(a, b, c);
    }
    return audit;
}

using Interval = std::pair<int, int>; // (i, s^m(i)), 0-based

/// e_i + e_{s(i)} + ... + e_{hi} along one level chain.
inline IntVec chain_vector(const LevelMaps& maps, int n, int lo, int hi)
{
    IntVec e(n, 0);
    if (lo > hi)
        return e;
    for (int i = lo;; i = maps.s[i].value()) {
        e[i] = 1;
        if (i == hi)
            break;
        if (!maps.s[i].finite() || maps.s[i].value() > hi)
            throw std::invalid_argument("interval endpoints are not on one level chain");
    }
    return e;
}

/// Interval prime elements y_[i, s^m(i)] built from supplied c elements.
class PrimeTower {
public:
    PrimeTower(const CGLEngine& engine, std::map<Interval, NFPoly> c)
        : engine_(&engine), c_(std::move(c)), maps_(engine.presentation().maps())
    {
    }

    const CGLEngine& engine() const noexcept { return *engine_; }
    const LevelMaps& maps() const noexcept { return maps_; }
    const std::map<Interval, NFPoly>& c_elements() const noexcept { return c_; }

    int successor(int i, int m) const
    {
        int k = i;
        for (int t = 0; t < m; ++t) {
            if (!maps_.s.at(k).finite())
                throw std::out_of_range("s^m(i) is infinite");
            k = maps_.s[k].value();
        }
        return k;
    }

    IntVec chain(int lo, int hi) const { return chain_vector(maps_, engine_->size(), lo, hi); }

    /// y_[lo,hi] = y_[lo,p(hi)] x_hi - c_[lo,hi]; an empty interval gives 1.
    const NFPoly& y(int lo, int hi) const
    {
        const Interval key{lo, hi};
        if (const auto it = cache_.find(key); it != cache_.end())
            return it->second;
        const CGLEngine& e = *engine_;
        const auto& pres = e.presentation();
        const IntVec ch = chain(lo, hi);
        NFPoly val(pres.n);
        if (lo > hi) {
            val = e.one();
        } else if (lo == hi) {
            val = e.x(lo);
        } else {
            const auto it = c_.find(key);
            if (it == c_.end())
                throw std::invalid_argument("no c element supplied for interval [" + std::to_string(lo + 1) +
                                            "," + std::to_string(hi + 1) + "]");
            val = e.mul(y(lo, maps_.p[hi].value()), e.x(hi)) - it->second;
            validate(key, val, ch);
        }
        return cache_.emplace(key, std::move(val)).first->second;
    }

    /// S_nu(e_[lo,hi]) y_[lo,hi]
    NFPoly ybar(int lo, int hi) const
    {
        return scr(engine_->presentation().nu_exp(), chain(lo, hi)) * y(lo, hi);
    }

    /// y_k for the whole chain ending at k.
    const NFPoly& y_full(int k) const
    {
        int lo = k;
        while (maps_.p[lo].finite())
            lo = maps_.p[lo].value();
        return y(lo, k);
    }

    /// y_[i,s^{m-1}i] y_[s i,s^m i] - Omega_lambda(e_i, e_[s i,s^{m-1} i]) y_[s i,s^{m-1} i] y_[i,s^m i]
    NFPoly u(int i, int m) const
    {
        if (m < 1)
            throw std::invalid_argument("u element needs m >= 1");
        const CGLEngine& e = *engine_;
        const auto& pres = e.presentation();
        const int top = successor(i, m);
        const int prev = successor(i, m - 1);
        const int si = successor(i, 1);
        const int n = pres.n;
        const IntVec middle = m == 1 ? IntVec(n, 0) : chain(si, prev);
        const VLaurent omega = bicharacter(FrameMatrix(pres.lambda_exp), unit(n, i), middle);
        const NFPoly& mid = m == 1 ? cache_one() : y(si, prev);
        NFPoly val = e.mul(y(i, prev), y(si, top)) - omega * e.mul(mid, y(i, top));
        if (val.is_zero())
            throw std::logic_error("u element vanished");
        for (int g : val.support())
            if (g <= i || g >= top)
                throw std::logic_error("u element is not supported strictly inside the interval");
        if (!val.homogeneous_degree(pres.degrees))
            throw std::logic_error("u element is not homogeneous");
        return val;
    }

private:
    static IntVec unit(int n, int i)
    {
        IntVec e(n, 0);
        e[i] = 1;
        return e;
    }

    const NFPoly& cache_one() const
    {
        if (!one_)
            one_ = engine_->one();
        return *one_;
    }

    void validate(const Interval& key, const NFPoly& val, const IntVec& ch) const
    {
        const auto& pres = engine_->presentation();
        const std::string where =
            "supplied c for [" + std::to_string(key.first + 1) + "," + std::to_string(key.second + 1) + "] rejected: ";
        const auto deg = val.homogeneous_degree(pres.degrees);
        RootVec want(pres.degrees.front().size(), 0);
        for (int i = 0; i < pres.n; ++i)
            for (std::size_t t = 0; t < want.size(); ++t)
                want[t] += ch[i] * pres.degrees[i][t];
        if (!deg || *deg != want)
            throw std::invalid_argument(where + "not homogeneous of the chain degree");
        const auto lt = leading_term(val);
        if (lt.exponent != ch || lt.coefficient != VLaurent(1))
            throw std::invalid_argument(where + "leading term is not the chain monomial");
        for (int j = key.first; j <= key.second; ++j)
            if (!quasi_commutation(*engine_, val, engine_->x(j)))
                throw std::invalid_argument(where + "result does not quasi-commute with x_" + std::to_string(j + 1));
    }

    const CGLEngine* engine_;
    std::map<Interval, NFPoly> c_;
    LevelMaps maps_;
    mutable std::map<Interval, NFPoly> cache_;
    mutable std::optional<NFPoly> one_;
};

/// y_1, ..., y_n from c elements keyed by generator index.
inline std::vector<NFPoly> y_elements(const CGLEngine& e, const std::map<int, NFPoly>& c)
{
    const auto maps = e.presentation().maps();
    std::map<Interval, NFPoly> keyed;
    for (const auto& [k, poly] : c) {
        int lo = k;
        while (maps.p.at(lo).finite())
            lo = maps.p[lo].value();
        keyed.emplace(Interval{lo, k}, poly);
    }
    PrimeTower tower(e, std::move(keyed));
    std::vector<NFPoly> out;
    for (int k = 0; k < e.size(); ++k)
        out.push_back(tower.y_full(k));
    return out;
}

/// old monomial x^g equals prod t^{-g} x'^g in the rescaled generators x'_j = t_j x_j.
inline NFPoly rewrite_scaled(const NFPoly& a, const std::vector<VLaurent>& t)
{
    NFPoly out(a.arity());
    for (const auto& [g, c] : a.terms()) {
        VLaurent s = c;
        for (std::size_t i = 0; i < g.size(); ++i)
            if (g[i])
                s *= t.at(i).pow(-g[i]);
        out.add_term(g, s);
    }
    return out;
}

struct RescaleReport {
    std::vector<VLaurent> t;
    std::map<Interval, VLaurent> y_scalars;                 // keyed by interval
    std::map<std::pair<int, int>, VLaurent> u_scalars;      // keyed by (i, m)
};

struct Rescaled {
    CGLPresentation presentation;
    std::map<Interval, NFPoly> c;
    RescaleReport report;
};

/// x_j -> t_j x_j for invertible v-monomials t_j.
inline Rescaled rescale(const CGLPresentation& pres, const std::map<Interval, NFPoly>& c,
                        const std::vector<VLaurent>& t)
{
    if (t.size() != static_cast<std::size_t>(pres.n))
        throw std::invalid_argument("rescale: one scalar per generator is required");
    for (const auto& x : t)
        if (!x.is_monomial())
            throw std::invalid_argument("rescale: scalars must be nonzero single v-powers");
    Rescaled out;
    out.presentation = pres;
    out.presentation.name = pres.name + " (rescaled)";
    for (auto& [key, poly] : out.presentation.tails)
        poly = (t[key.first] * t[key.second]) * rewrite_scaled(poly, t);
    const auto maps = pres.maps();
    const auto chain_scalar = [&](int lo, int hi) {
        VLaurent s(1);
        const IntVec ch = chain_vector(maps, pres.n, lo, hi);
        for (int i = 0; i < pres.n; ++i)
            if (ch[i])
                s *= t[i];
        return s;
    };
    for (const auto& [key, poly] : c)
        out.c.emplace(key, chain_scalar(key.first, key.second) * rewrite_scaled(poly, t));
    out.report.t = t;
    for (int lo = 0; lo < pres.n; ++lo)
        for (int hi = lo;; hi = maps.s[hi].value()) {
            out.report.y_scalars.emplace(Interval{lo, hi}, chain_scalar(lo, hi));
            if (!maps.s[hi].finite())
                break;
        }
    for (int i = 0; i < pres.n; ++i) {
        int top = i;
        for (int m = 1; maps.s[top].finite(); ++m) {
            top = maps.s[top].value();
            // t_i t_{s i}^2 ... t_{s^{m-1} i}^2 t_{s^m i}
            VLaurent s = chain_scalar(i, top);
            if (m >= 2)
                s *= chain_scalar(maps.s[i].value(), maps.p[top].value());
            out.report.u_scalars.emplace(std::make_pair(i, m), s);
        }
    }
    return out;
}

struct RescaleConsistency {
    int checked = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// New y and u elements equal the reported scalars times the old ones.
inline RescaleConsistency rescale_consistency(const PrimeTower& before, const PrimeTower& after,
                                              const RescaleReport& report)
{
    RescaleConsistency rc;
    for (const auto& [key, s] : report.y_scalars) {
        if (key.first != key.second && !before.c_elements().count(key))
            continue;
        ++rc.checked;
        if (after.y(key.first, key.second) != s * rewrite_scaled(before.y(key.first, key.second), report.t))
            rc.failures.push_back("y[" + std::to_string(key.first + 1) + "," + std::to_string(key.second + 1) + "]");
    }
    for (const auto& [key, s] : report.u_scalars) {
        const auto [i, m] = key;
        const int top = before.successor(i, m);
        if (!before.c_elements().count({i, top}))
            continue;
        ++rc.checked;
        if (after.u(i, m) != s * rewrite_scaled(before.u(i, m), report.t))
            rc.failures.push_back("u(" + std::to_string(i + 1) + "," + std::to_string(m) + ")");
    }
    return rc;
}

struct NormalizationEntry {
    int i = 0, m = 1;
    VLaurent pi;       // leading coefficient of u_[i, s^m i]
    IntVec f;          // its leading exponent
    VLaurent expected;
    bool ok = false;
};

struct NormalizationReport {
    std::vector<NormalizationEntry> entries;
    bool ok() const
    {
        return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.ok; });
    }
};

/// m = 1: pi = S_nu(-e_i + f). m >= 2: pi = S_nu(e_[s i, s^m i])^{-2} S_nu(-e_i + f).
inline NormalizationReport normalization_check(const PrimeTower& tower)
{
    NormalizationReport rep;
    const auto& pres = tower.engine().presentation();
    const QMatrix nu = pres.nu_exp();
    const auto& maps = tower.maps();
    for (int i = 0; i < pres.n; ++i) {
        int top = i;
        for (int m = 1; maps.s[top].finite(); ++m) {
            top = maps.s[top].value();
            if (!tower.c_elements().count({i, top}))
                break;
            NormalizationEntry e;
            e.i = i;
            e.m = m;
            const auto lt = leading_term(tower.u(i, m));
            e.pi = lt.coefficient;
            e.f = lt.exponent;
            IntVec g = e.f;
            g[i] -= 1;
            e.expected = scr(nu, g);
            if (m >= 2)
                e.expected *= scr(nu, tower.chain(maps.s[i].value(), top)).pow(-2);
            e.ok = e.pi == e.expected;
            rep.entries.push_back(std::move(e));
        }
    }
    return rep;
}

/// M_sigma(e_k) for every k, read from the chain of sigma(k) inside sigma([0,k]).
inline std::vector<NFPoly> sigma_cluster_variables(const PrimeTower& tower, const Permutation& sigma)
{
    const auto& pres = tower.engine().presentation();
    if (static_cast<int>(sigma.size()) != pres.n || !is_xi(sigma))
        throw ValidationError("permutation is not in Xi");
    std::vector<NFPoly> out;
    for (int k = 0; k < pres.n; ++k) {
        int lo = sigma[k], hi = sigma[k];
        for (int a = 0; a <= k; ++a)
            if (pres.eta[sigma[a]] == pres.eta[sigma[k]]) {
                lo = std::min(lo, sigma[a]);
                hi = std::max(hi, sigma[a]);
            }
        out.push_back(tower.ybar(lo, hi));
    }
    return out;
}

/// psi with M(e_k) M(e_j) = v^{2 psi_kj} M(e_j) M(e_k), read off the algebra.
inline QMatrix algebra_frame(const CGLEngine& e, const std::vector<NFPoly>& vars)
{
    const std::size_t n = vars.size();
    QMatrix psi(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < k; ++j) {
            const auto c = quasi_commutation(e, vars[k], vars[j]);
            if (!c || !c->is_unit_power())
                throw std::logic_error("cluster variables do not quasi-commute");
            psi(k, j) = c->exponent() / 2;
            psi(j, k) = -psi(k, j);
        }
    return psi;
}

/// M(f) for f >= 0: v^{-sum_{j<k} f_j f_k psi_jk} M(e_1)^{f_1} ... M(e_n)^{f_n}.
inline NFPoly torus_value(const CGLEngine& e, const FrameMatrix& frame, const std::vector<NFPoly>& vars,
                          const IntVec& f)
{
    if (f.size() != vars.size() || f.size() != frame.size())
        throw std::invalid_argument("torus_value: size mismatch");
    NFPoly acc = e.one();
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] < 0)
            throw std::invalid_argument("torus_value needs a nonnegative exponent");
        for (long r = 0; r < f[i]; ++r)
            acc = e.mul(acc, vars[i]);
    }
    return scr(frame.psi(), f) * acc;
}

/// M(e_k) X' = Omega(e_k, -e_k + b+) M(b+) + Omega(e_k, -e_k + b-) M(b-) for the claimed new variable X'.
inline bool exchange_relation_check(const CGLEngine& e, const QuantumSeed& seed, const std::vector<NFPoly>& vars,
                                    int k, const NFPoly& replacement)
{
    const IntVec b = seed.exchange.column(k);
    const std::size_t n = b.size();
    IntVec plus(n, 0), minus(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        plus[i] = positive_part(b[i]);
        minus[i] = positive_part(-b[i]);
    }
    IntVec ek(n, 0);
    ek[k] = 1;
    const auto shifted = [&](IntVec g) {
        g[k] -= 1;
        return g;
    };
    const NFPoly rhs = bicharacter(seed.frame, ek, shifted(plus)) * torus_value(e, seed.frame, vars, plus) +
                       bicharacter(seed.frame, ek, shifted(minus)) * torus_value(e, seed.frame, vars, minus);
    return e.mul(vars[k], replacement) == rhs;
}

/// A presentation together with its c elements and normalizing rescaling.
struct ShippedPresentation {
    std::string type;
    WeylWord w, u;
    CGLPresentation presentation;
    std::map<Interval, NFPoly> c;
    std::vector<VLaurent> rescaling;
};

/// Y- = x1, Y+ = x2 with Y+ Y- = q^2 Y- Y+ + (1 - q^2).
inline ShippedPresentation shipped_sl2()
{
    ShippedPresentation s;
    s.type = "A1";
    s.w = {0};
    s.u = {0};
    auto& p = s.presentation;
    p.name = "sl2";
    p.n = 2;
    p.lambda_exp = QMatrix{{0, -4}, {4, 0}};
    p.tails.emplace(std::make_pair(1, 0), NFPoly::constant(2, VLaurent(1) - VLaurent::vpow(4)));
    p.eta = {0, 0};
    p.degrees = {{-1}, {1}};
    p.lambda_star_qexp = {2, 2};
    s.c.emplace(Interval{0, 1}, NFPoly::constant(2));
    s.rescaling = {VLaurent(1), VLaurent(1)};
    return s;
}

/// Double-cell fragment for A2, w = s1 s2 s1, u = s1.
inline ShippedPresentation shipped_a2()
{
    ShippedPresentation s;
    s.type = "A2";
    s.w = {0, 1, 0};
    s.u = {0};
    auto& p = s.presentation;
    p.name = "A2 fragment";
    p.n = 4;
    p.lambda_exp = QMatrix(4, 4);
    const auto set = [&](int k, int j, long e) {
        p.lambda_exp(k, j) = e;
        p.lambda_exp(j, k) = -e;
    };
    set(1, 0, -2);
    set(2, 1, -2);
    set(2, 0, 2);
    set(3, 2, 4);
    set(3, 1, 2);
    set(3, 0, -2);
    p.tails.emplace(std::make_pair(2, 0), NFPoly::generator(4, 1, VLaurent::vpow(-2) - VLaurent::vpow(2)));
    p.tails.emplace(std::make_pair(3, 2), NFPoly::constant(4, VLaurent(1) - VLaurent::vpow(4)));
    p.eta = {0, 1, 0, 0};
    p.degrees = {{0, -1}, {-1, -1}, {-1, 0}, {1, 0}};
    p.lambda_star_qexp = {2, 2, 2, 2};
    s.c.emplace(Interval{0, 2}, NFPoly::generator(4, 1));
    s.c.emplace(Interval{0, 3}, NFPoly::generator(4, 0));
    s.c.emplace(Interval{2, 3}, NFPoly::constant(4));
    s.rescaling = {VLaurent::vpow(1), VLaurent(1), VLaurent(1), VLaurent(1)};
    return s;
}

inline std::vector<ShippedPresentation> shipped_presentations()
{
    return {shipped_sl2(), shipped_a2()};
}

struct Sl2Example {
    bool relation = false;          // Y+ Y- = q^2 Y- Y+ + (1 - q^2)
    bool frozen_shared = false;     // both seeds carry p = q (Y- Y+ - 1)
    bool frozen_value = false;
    bool exchange_relation = false; // Y+ Y- = q p + 1
    bool frame_identity = false;    // algebra frame of sigma = id matches the double-cell seed
    bool frame_swapped = false;     // same for sigma = (1 2)
    bool mutation = false;          // mutation at 1 sends Y- to Y+
    QMatrix psi_identity, psi_swapped;
    NFPoly p;

    bool ok() const
    {
        return relation && frozen_shared && frozen_value && exchange_relation && frame_identity && frame_swapped &&
               mutation;
    }
};

inline Sl2Example sl2_example()
{
    Sl2Example ex;
    const auto shipped = shipped_sl2();
    const CGLEngine e(shipped.presentation);
    const NFPoly ym = e.x(0), yp = e.x(1);
    const VLaurent q = VLaurent::qpow(1);
    ex.relation = e.mul(yp, ym) == q.pow(2) * e.mul(ym, yp) + NFPoly::constant(2, VLaurent(1) - q.pow(2));
    const PrimeTower tower(e, shipped.c);
    const auto vars_id = sigma_cluster_variables(tower, {0, 1});
    const auto vars_sw = sigma_cluster_variables(tower, {1, 0});
    ex.p = vars_id[1];
    ex.frozen_shared = vars_id[1] == vars_sw[1] && vars_id[0] == ym && vars_sw[0] == yp;
    ex.frozen_value = ex.p == q * (e.mul(ym, yp) - e.one());
    ex.exchange_relation = e.mul(yp, ym) == q * ex.p + e.one();
    const DoubleCell cell(cartan_init("A1"), shipped.w, shipped.u);
    const auto seed_id = cell.sigma_seed({0, 1}).seed;
    const auto seed_sw = cell.sigma_seed({1, 0}).seed;
    ex.psi_identity = algebra_frame(e, vars_id);
    ex.psi_swapped = algebra_frame(e, vars_sw);
    ex.frame_identity = ex.psi_identity == seed_id.frame.psi();
    ex.frame_swapped = ex.psi_swapped == seed_sw.frame.psi();
    const QuantumSeed mutated = mutate_seed(seed_id, 0);
    ex.mutation = exchange_relation_check(e, seed_id, vars_id, 0, yp) && same_seed(mutated, seed_sw);
    return ex;
}

} // namespace qcluster
