#pragma once

#include "qcluster/matrix.hpp"

#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qcluster {

/// Finite sum of rational multiples of rational powers of v, v^2 = q.
class VLaurent {
public:
    using Terms = std::map<Rational, Rational>;

    VLaurent() = default;
    VLaurent(long c) { add_term(Rational(0), Rational(c)); }
    VLaurent(const Rational& c) { add_term(Rational(0), c); }

    /// c v^e
    static VLaurent monomial(const Rational& e, const Rational& c = Rational(1))
    {
        VLaurent x;
        x.add_term(e, c);
        return x;
    }
    static VLaurent vpow(const Rational& e) { return monomial(e); }
    static VLaurent qpow(const Rational& e) { return monomial(2 * e); }

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_monomial() const noexcept { return terms_.size() == 1; }
    bool is_unit_power() const { return is_monomial() && terms_.begin()->second == 1; }

    /// Exponent of a single-term value.
    const Rational& exponent() const
    {
        if (!is_monomial())
            throw std::domain_error("not a single v-power: " + str());
        return terms_.begin()->first;
    }
    const Rational& coefficient() const
    {
        if (!is_monomial())
            throw std::domain_error("not a single v-power: " + str());
        return terms_.begin()->second;
    }

    Rational coefficient_of(const Rational& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Rational& e, const Rational& c)
    {
        if (c == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    VLaurent& operator+=(const VLaurent& o)
    {
        for (const auto& [e, c] : o.terms_)
            add_term(e, c);
        return *this;
    }
    VLaurent& operator-=(const VLaurent& o)
    {
        for (const auto& [e, c] : o.terms_)
            add_term(e, -c);
        return *this;
    }
    VLaurent operator-() const
    {
        VLaurent x;
        for (const auto& [e, c] : terms_)
            x.terms_.emplace(e, -c);
        return x;
    }
    friend VLaurent operator+(VLaurent a, const VLaurent& b) { return a += b; }
    friend VLaurent operator-(VLaurent a, const VLaurent& b) { return a -= b; }
    friend VLaurent operator*(const VLaurent& a, const VLaurent& b)
    {
        VLaurent x;
        for (const auto& [e1, c1] : a.terms_)
            for (const auto& [e2, c2] : b.terms_)
                x.add_term(e1 + e2, c1 * c2);
        return x;
    }
    VLaurent& operator*=(const VLaurent& o) { return *this = *this * o; }

    /// Inverse of a single-term value.
    VLaurent inverse() const
    {
        return monomial(-exponent(), 1 / coefficient());
    }

    VLaurent pow(long n) const
    {
        if (n < 0)
            return inverse().pow(-n);
        VLaurent r(1), b(*this);
        while (n) {
            if (n & 1)
                r *= b;
            b *= b;
            n >>= 1;
        }
        return r;
    }

    friend bool operator==(const VLaurent& a, const VLaurent& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const VLaurent& a, const VLaurent& b) { return !(a == b); }

    std::string str() const
    {
        std::ostringstream os;
        os << *this;
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const VLaurent& x)
    {
        if (x.terms_.empty())
            return os << '0';
        bool first = true;
        for (const auto& [e, c] : x.terms_) {
            if (!first)
                os << " + ";
            first = false;
            os << '(' << c << ')';
            if (e != 0)
                os << "*v^(" << e << ')';
        }
        return os;
    }

private:
    Terms terms_;
};

/// Skew exponent matrix psi with r_kj = v^{psi_kj}.
class FrameMatrix {
public:
    FrameMatrix() = default;
    explicit FrameMatrix(QMatrix psi) : psi_(std::move(psi))
    {
        if (!psi_.is_skew())
            throw std::invalid_argument("frame matrix must be skew-symmetric");
    }

    std::size_t size() const noexcept { return psi_.rows(); }
    const QMatrix& psi() const noexcept { return psi_; }
    const Rational& operator()(std::size_t k, std::size_t j) const { return psi_.at(k, j); }

    /// f^T psi g
    Rational exponent(const QVec& f, const QVec& g) const
    {
        if (f.size() != size() || g.size() != size())
            throw std::invalid_argument("lattice vector length does not match frame");
        return bilinear(f, psi_, g);
    }
    Rational exponent(const IntVec& f, const IntVec& g) const
    {
        return exponent(to_rational(f), to_rational(g));
    }

    friend bool operator==(const FrameMatrix& a, const FrameMatrix& b) { return a.psi_ == b.psi_; }
    friend bool operator!=(const FrameMatrix& a, const FrameMatrix& b) { return !(a == b); }

private:
    QMatrix psi_;
};

/// Omega(f, g) = v^{f^T psi g}
inline VLaurent bicharacter(const FrameMatrix& frame, const IntVec& f, const IntVec& g)
{
    return VLaurent::vpow(frame.exponent(f, g));
}

/// Exponent of S(f) = prod_{j<k} lambda_jk^{-m_j m_k}, reading lambda_jk = v^{E_jk}.
inline Rational scr_exponent(const QMatrix& e, const IntVec& f)
{
    if (e.rows() != f.size() || e.cols() != f.size())
        throw std::invalid_argument("scr: dimension mismatch");
    Rational s(0);
    for (std::size_t j = 0; j < f.size(); ++j)
        for (std::size_t k = j + 1; k < f.size(); ++k)
            if (f[j] != 0 && f[k] != 0)
                s -= e(j, k) * f[j] * f[k];
    return s;
}

inline VLaurent scr(const QMatrix& e, const IntVec& f)
{
    return VLaurent::vpow(scr_exponent(e, f));
}

/// psi'_kj = g_k^T psi g_j; the vectors must be linearly independent.
inline FrameMatrix frame_restrict(const FrameMatrix& frame, const std::vector<IntVec>& vectors)
{
    const std::size_t n = frame.size();
    for (const auto& v : vectors)
        if (v.size() != n)
            throw std::invalid_argument("frame_restrict: vector length mismatch");
    const QMatrix g = to_rational(IntMatrix::from_columns(vectors, n));
    if (rank(g) != vectors.size())
        throw std::invalid_argument("frame_restrict: vectors are linearly dependent");
    return FrameMatrix(g.transpose() * frame.psi() * g);
}

/// Element of the based quantum torus of a frame.
class TorusElement {
public:
    using Terms = std::map<IntVec, VLaurent>;

    explicit TorusElement(std::shared_ptr<const FrameMatrix> frame) : frame_(std::move(frame))
    {
        if (!frame_)
            throw std::invalid_argument("torus element needs a frame");
    }

    /// c M(f)
    static TorusElement monomial(std::shared_ptr<const FrameMatrix> frame, const IntVec& f,
                                 const VLaurent& c = VLaurent(1))
    {
        TorusElement x(std::move(frame));
        x.add_term(f, c);
        return x;
    }

    const Terms& terms() const noexcept { return terms_; }
    const std::shared_ptr<const FrameMatrix>& frame() const noexcept { return frame_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(const IntVec& f, const VLaurent& c)
    {
        if (f.size() != frame_->size())
            throw std::invalid_argument("lattice vector length does not match frame");
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(f, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    TorusElement& operator+=(const TorusElement& o)
    {
        same_frame(o);
        for (const auto& [f, c] : o.terms_)
            add_term(f, c);
        return *this;
    }
    friend TorusElement operator+(TorusElement a, const TorusElement& b) { return a += b; }

    /// M(f) M(g) = Omega(f, g) M(f + g)
    friend TorusElement operator*(const TorusElement& a, const TorusElement& b)
    {
        a.same_frame(b);
        TorusElement x(a.frame_);
        for (const auto& [f, c1] : a.terms_)
            for (const auto& [g, c2] : b.terms_) {
                IntVec h(f.size());
                for (std::size_t i = 0; i < f.size(); ++i)
                    h[i] = f[i] + g[i];
                x.add_term(h, c1 * c2 * bicharacter(*a.frame_, f, g));
            }
        return x;
    }

    friend bool operator==(const TorusElement& a, const TorusElement& b)
    {
        return *a.frame_ == *b.frame_ && a.terms_ == b.terms_;
    }

private:
    void same_frame(const TorusElement& o) const
    {
        if (frame_ != o.frame_)
            throw std::invalid_argument("torus elements belong to different frames");
    }

    std::shared_ptr<const FrameMatrix> frame_;
    Terms terms_;
};

inline TorusElement torus_mul(const TorusElement& a, const TorusElement& b)
{
    return a * b;
}

} // namespace qcluster
