#pragma once

#include "qcluster/coxeter.hpp"
#include "qcluster/qtorus.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcluster {

/// Raised when an operation needs a compatible seed and gets something else.
class IncompatibleSeed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// n x |ex| integer matrix; column c belongs to the index ex[c].
struct ExchangeMatrix {
    IntMatrix entries;
    std::vector<int> ex;

    std::size_t size() const noexcept { return entries.rows(); }

    int column_of(int k) const
    {
        const auto it = std::find(ex.begin(), ex.end(), k);
        if (it == ex.end())
            throw std::out_of_range("index " + std::to_string(k) + " is not exchangeable");
        return static_cast<int>(it - ex.begin());
    }
    bool exchangeable(int k) const { return std::find(ex.begin(), ex.end(), k) != ex.end(); }

    IntVec column(int k) const { return entries.column(column_of(k)); }

    /// b_kj for k, j both exchangeable.
    long principal(int k, int j) const { return entries(k, column_of(j)); }
};

/// True when d_k b_kj = -d_j b_jk on ex x ex; d is aligned with ex.
inline bool skew_symmetrizable(const ExchangeMatrix& b, const IntVec& d)
{
    if (d.size() != b.ex.size())
        return false;
    for (std::size_t a = 0; a < b.ex.size(); ++a)
        for (std::size_t c = 0; c < b.ex.size(); ++c)
            if (d[a] * b.entries(b.ex[a], c) != -d[c] * b.entries(b.ex[c], a))
                return false;
    return true;
}

struct QuantumSeed {
    FrameMatrix frame;
    ExchangeMatrix exchange;
    std::vector<int> inv;
    std::vector<IntVec> degrees;
    IntVec d; // aligned with exchange.ex

    std::size_t size() const noexcept { return frame.size(); }

    void validate_shape() const
    {
        const std::size_t n = size();
        if (exchange.entries.rows() != n || exchange.entries.cols() != exchange.ex.size())
            throw std::invalid_argument("exchange matrix shape does not match frame");
        if (degrees.size() != n)
            throw std::invalid_argument("one degree vector per index is required");
        for (const auto& g : degrees)
            if (g.size() != degrees.front().size())
                throw std::invalid_argument("degree vectors must share a length");
        if (d.size() != exchange.ex.size())
            throw std::invalid_argument("symmetrizer must have one entry per exchangeable index");
        std::set<int> seen;
        for (int k : exchange.ex)
            if (k < 0 || static_cast<std::size_t>(k) >= n || !seen.insert(k).second)
                throw std::invalid_argument("bad exchangeable index list");
        for (int k : inv)
            if (k < 0 || static_cast<std::size_t>(k) >= n || seen.count(k))
                throw std::invalid_argument("inverted indices must be frozen");
    }

    std::size_t grading_rank() const { return degrees.empty() ? 0 : degrees.front().size(); }
};

/// Ex order and inv order are irrelevant; columns are matched by index.
inline bool same_seed(const QuantumSeed& a, const QuantumSeed& b)
{
    if (a.frame != b.frame || a.degrees != b.degrees)
        return false;
    if (std::set<int>(a.inv.begin(), a.inv.end()) != std::set<int>(b.inv.begin(), b.inv.end()))
        return false;
    if (a.exchange.ex.size() != b.exchange.ex.size() || a.exchange.size() != b.exchange.size())
        return false;
    for (std::size_t c = 0; c < a.exchange.ex.size(); ++c) {
        const int k = a.exchange.ex[c];
        if (!b.exchange.exchangeable(k))
            return false;
        const int cb = b.exchange.column_of(k);
        if (a.exchange.entries.column(c) != b.exchange.entries.column(cb) || a.d[c] != b.d[cb])
            return false;
    }
    return true;
}

struct CompatibilityReport {
    struct Column {
        int k = 0;
        Rational value;                  // psi(b^k, e_k)
        std::vector<int> nonorthogonal;  // j != k with psi(b^k, e_j) != 0
        IntVec degree_sum;               // sum_j b_jk deg_j
        bool degree_balanced = true;
        bool ok() const { return value != 0 && nonorthogonal.empty() && degree_balanced; }
    };
    std::vector<Column> columns;
    bool skew_symmetrizable = true;

    bool ok() const
    {
        return std::all_of(columns.begin(), columns.end(), [](const Column& c) { return c.ok(); });
    }

    std::string summary() const
    {
        std::ostringstream os;
        for (const auto& c : columns) {
            if (c.value == 0)
                os << "column " << c.k << ": zero value exponent; ";
            for (int j : c.nonorthogonal)
                os << "column " << c.k << ": not orthogonal to e_" << j << "; ";
            if (!c.degree_balanced)
                os << "column " << c.k << ": degree imbalance; ";
        }
        return os.str();
    }
};

/// psi(b, e_j) = sum_i b_i psi_ij
inline QVec pairing_row(const FrameMatrix& frame, const IntVec& b)
{
    const std::size_t n = frame.size();
    QVec out(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (b[i] == 0)
            continue;
        for (std::size_t j = 0; j < n; ++j)
            out[j] += b[i] * frame(i, j);
    }
    return out;
}

inline CompatibilityReport check_compatible(const QuantumSeed& seed)
{
    seed.validate_shape();
    CompatibilityReport rep;
    const std::size_t n = seed.size();
    const std::size_t g = seed.grading_rank();
    for (std::size_t c = 0; c < seed.exchange.ex.size(); ++c) {
        CompatibilityReport::Column col;
        col.k = seed.exchange.ex[c];
        const IntVec b = seed.exchange.entries.column(c);
        const QVec row = pairing_row(seed.frame, b);
        for (std::size_t j = 0; j < n; ++j) {
            if (static_cast<int>(j) == col.k)
                col.value = row[j];
            else if (row[j] != 0)
                col.nonorthogonal.push_back(static_cast<int>(j));
        }
        col.degree_sum.assign(g, 0);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t t = 0; t < g; ++t)
                col.degree_sum[t] += b[j] * seed.degrees[j][t];
        col.degree_balanced =
            std::all_of(col.degree_sum.begin(), col.degree_sum.end(), [](long x) { return x == 0; });
        rep.columns.push_back(std::move(col));
    }
    rep.skew_symmetrizable = skew_symmetrizable(seed.exchange, seed.d);
    return rep;
}

inline void require_compatible(const QuantumSeed& seed, const char* where)
{
    const auto rep = check_compatible(seed);
    if (!rep.ok())
        throw IncompatibleSeed(std::string(where) + ": " + rep.summary());
}

inline long positive_part(long x) { return x > 0 ? x : 0; }

inline ExchangeMatrix mutate_exchange(const ExchangeMatrix& b, int k)
{
    const int ck = b.column_of(k);
    ExchangeMatrix out = b;
    for (std::size_t i = 0; i < b.entries.rows(); ++i)
        for (std::size_t c = 0; c < b.ex.size(); ++c) {
            const long bij = b.entries(i, c);
            if (static_cast<int>(i) == k || static_cast<int>(c) == ck) {
                out.entries(i, c) = -bij;
                continue;
            }
            const long bik = b.entries(i, ck);
            const long bkj = b.entries(k, c);
            out.entries(i, c) = bij + positive_part(bik) * positive_part(bkj) -
                                positive_part(-bik) * positive_part(-bkj);
        }
    return out;
}

namespace detail {

inline std::vector<IntVec> mutation_basis(const QuantumSeed& seed, int k, int sign)
{
    const std::size_t n = seed.size();
    const IntVec b = seed.exchange.column(k);
    std::vector<IntVec> g(n, IntVec(n, 0));
    for (std::size_t j = 0; j < n; ++j)
        g[j][j] = 1;
    IntVec& gk = g[k];
    gk.assign(n, 0);
    gk[k] = -1;
    for (std::size_t i = 0; i < n; ++i)
        gk[i] += positive_part(sign * b[i]);
    return g;
}

} // namespace detail

/// Frame mutation through the basis g_k = -e_k + sum_i [b_ik]_+ e_i.
inline QuantumSeed mutate_seed(const QuantumSeed& seed, int k)
{
    require_compatible(seed, "mutate_seed input");
    if (!seed.exchange.exchangeable(k))
        throw std::out_of_range("index " + std::to_string(k) + " is not exchangeable");
    QuantumSeed out = seed;
    out.frame = frame_restrict(seed.frame, detail::mutation_basis(seed, k, +1));
    const FrameMatrix other = frame_restrict(seed.frame, detail::mutation_basis(seed, k, -1));
    if (other != out.frame)
        throw std::logic_error("frame mutation depends on the sign choice");
    out.exchange = mutate_exchange(seed.exchange, k);
    const IntVec b = seed.exchange.column(k);
    IntVec deg(seed.grading_rank(), 0);
    for (std::size_t t = 0; t < deg.size(); ++t) {
        deg[t] = -seed.degrees[k][t];
        for (std::size_t i = 0; i < seed.size(); ++i)
            deg[t] += positive_part(b[i]) * seed.degrees[i][t];
    }
    out.degrees[k] = deg;
    require_compatible(out, "mutate_seed output");
    return out;
}

/// Right action: psi'_jk = psi_{tau j, tau k}, deg'_k = deg_{tau k}.
inline QuantumSeed reindex(const QuantumSeed& seed, const Permutation& tau)
{
    const std::size_t n = seed.size();
    if (tau.size() != n)
        throw std::invalid_argument("reindex: permutation size mismatch");
    const Permutation inv_tau = inverse_permutation(tau);
    QMatrix psi(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            psi(j, k) = seed.frame(tau[j], tau[k]);
    QuantumSeed out;
    out.frame = FrameMatrix(std::move(psi));
    out.exchange.entries = IntMatrix(n, seed.exchange.ex.size());
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t c = 0; c < seed.exchange.ex.size(); ++c)
            out.exchange.entries(j, c) = seed.exchange.entries(tau[j], c);
    for (int k : seed.exchange.ex)
        out.exchange.ex.push_back(inv_tau[k]);
    for (int k : seed.inv)
        out.inv.push_back(inv_tau[k]);
    out.degrees.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        out.degrees[k] = seed.degrees[tau[k]];
    out.d = seed.d;
    return out;
}

/// psi -> -psi, B -> -B.
inline QuantumSeed antiiso_transform(const QuantumSeed& seed)
{
    QuantumSeed out = seed;
    out.frame = FrameMatrix(-seed.frame.psi());
    out.exchange.entries = -seed.exchange.entries;
    return out;
}

/// Reduction by the first n frozen indices, whose degrees must form a lattice basis of all degrees.
inline QuantumSeed graded_reduce(const QuantumSeed& seed, int n)
{
    seed.validate_shape();
    const int total = static_cast<int>(seed.size());
    if (n < 0 || n > total)
        throw std::invalid_argument("graded_reduce: bad count of leading indices");
    if (n == 0)
        return seed;
    for (int k = 0; k < n; ++k)
        if (seed.exchange.exchangeable(k))
            throw std::invalid_argument("graded_reduce: leading index " + std::to_string(k) +
                                        " is exchangeable");
    std::vector<IntVec> phi(seed.degrees.begin(), seed.degrees.begin() + n);
    const QMatrix phim = to_rational(IntMatrix::from_columns(phi, seed.grading_rank()));
    if (rank(phim) != static_cast<std::size_t>(n))
        throw std::invalid_argument("graded_reduce: leading degrees are not independent");
    std::vector<IntVec> basis;
    for (int j = n; j < total; ++j) {
        const auto sol = solve(phim, to_rational(seed.degrees[j]));
        if (sol.status != SolveStatus::unique)
            throw std::invalid_argument("graded_reduce: degree of index " + std::to_string(j) +
                                        " is outside the span of the leading degrees");
        IntVec g(total, 0);
        g[j] = 1;
        for (int i = 0; i < n; ++i) {
            if (!is_integer(sol.x[i]))
                throw std::invalid_argument("graded_reduce: leading degrees are not a lattice basis");
            g[i] -= to_long(sol.x[i]);
        }
        basis.push_back(std::move(g));
    }
    QuantumSeed out;
    out.frame = frame_restrict(seed.frame, basis);
    out.exchange.entries = IntMatrix(total - n, seed.exchange.ex.size());
    for (int j = n; j < total; ++j)
        for (std::size_t c = 0; c < seed.exchange.ex.size(); ++c)
            out.exchange.entries(j - n, c) = seed.exchange.entries(j, c);
    for (int k : seed.exchange.ex)
        out.exchange.ex.push_back(k - n);
    for (int k : seed.inv)
        if (k >= n)
            out.inv.push_back(k - n);
    out.degrees.assign(total - n, IntVec(seed.grading_rank(), 0));
    out.d = seed.d;
    return out;
}

} // namespace qcluster
