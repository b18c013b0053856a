#pragma once

#include "qcluster/cgl.hpp"
#include "qcluster/dbc.hpp"
#include "qcluster/seed.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>
#include <vector>

// JSON boundary. Indices are 1-based here and 0-based everywhere else.
namespace qcluster::json_io {

using nlohmann::json;

inline json to_json(const Rational& x) { return to_string(x); }

inline Rational rational_from_json(const json& j)
{
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    if (j.is_number_integer())
        return Rational(j.get<long>());
    throw std::invalid_argument("rational must be a \"p/q\" string or an integer");
}

inline json to_json(const QMatrix& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline QMatrix qmatrix_from_json(const json& j)
{
    std::vector<QVec> rows;
    for (const auto& r : j) {
        QVec row;
        for (const auto& x : r)
            row.push_back(rational_from_json(x));
        rows.push_back(std::move(row));
    }
    return QMatrix::from_rows(rows);
}

inline json to_json(const IntMatrix& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        rows.push_back(m.row(i));
    return rows;
}

inline IntMatrix intmatrix_from_json(const json& j, std::size_t cols_if_empty = 0)
{
    return IntMatrix::from_rows(j.get<std::vector<IntVec>>(), cols_if_empty);
}

inline json one_based(const std::vector<int>& v)
{
    json a = json::array();
    for (int x : v)
        a.push_back(x + 1);
    return a;
}

inline std::vector<int> zero_based(const json& j)
{
    std::vector<int> out;
    for (const auto& x : j) {
        const int v = x.get<int>();
        if (v < 1)
            throw std::invalid_argument("indices are 1-based");
        out.push_back(v - 1);
    }
    return out;
}

inline json to_json(const VLaurent& x)
{
    json a = json::array();
    for (const auto& [e, c] : x.terms())
        a.push_back({{"exp", to_json(e)}, {"coef", to_json(c)}});
    return a;
}

inline VLaurent vlaurent_from_json(const json& j)
{
    VLaurent x;
    for (const auto& t : j)
        x.add_term(rational_from_json(t.at("exp")), rational_from_json(t.at("coef")));
    return x;
}

inline json to_json(const FrameMatrix& f) { return to_json(f.psi()); }

inline json to_json(const QuantumSeed& s)
{
    return {{"psi", to_json(s.frame)},
            {"B", to_json(s.exchange.entries)},
            {"ex", one_based(s.exchange.ex)},
            {"inv", one_based(s.inv)},
            {"degrees", s.degrees},
            {"d", s.d}};
}

inline QuantumSeed seed_from_json(const json& j)
{
    QuantumSeed s;
    s.frame = FrameMatrix(qmatrix_from_json(j.at("psi")));
    s.exchange.ex = zero_based(j.at("ex"));
    s.exchange.entries = intmatrix_from_json(j.at("B"), s.exchange.ex.size());
    if (s.exchange.entries.rows() == 0)
        s.exchange.entries = IntMatrix(s.frame.size(), s.exchange.ex.size());
    s.inv = j.contains("inv") ? zero_based(j.at("inv")) : std::vector<int>{};
    s.degrees = j.at("degrees").get<std::vector<IntVec>>();
    s.d = j.at("d").get<IntVec>();
    s.validate_shape();
    return s;
}

inline json to_json(const CompatibilityReport& r)
{
    json cols = json::array();
    for (const auto& c : r.columns)
        cols.push_back({{"k", c.k + 1},
                        {"value_exponent", to_json(c.value)},
                        {"nonorthogonal", one_based(c.nonorthogonal)},
                        {"degree_sum", c.degree_sum},
                        {"ok", c.ok()}});
    return {{"columns", cols}, {"skew_symmetrizable", r.skew_symmetrizable}, {"ok", r.ok()}};
}

inline json to_json(const CartanData& c)
{
    return {{"family", std::string(1, c.family)},
            {"rank", c.rank},
            {"cartan", to_json(c.cartan)},
            {"d", c.d},
            {"pairing_ww", to_json(c.pairing_ww)}};
}

inline CartanData cartan_from_json(const json& j)
{
    const auto fam = j.at("family").get<std::string>();
    if (fam.size() != 1)
        throw ValidationError("family must be a single letter");
    return cartan_init(fam[0], j.at("rank").get<int>());
}

inline json link_json(const Link& l) { return l.finite() ? json(l.value() + 1) : json(nullptr); }

inline json to_json(const DoubleWordData& d)
{
    json p = json::array(), s = json::array();
    for (const auto& l : d.p)
        p.push_back(link_json(l));
    for (const auto& l : d.s)
        s.push_back(link_json(l));
    return {{"w", one_based(d.w)},
            {"u", one_based(d.u)},
            {"beta", d.beta},
            {"beta_prime", d.beta_prime},
            {"eta", one_based(d.eta)},
            {"p", p},
            {"s", s},
            {"O_minus", d.o_minus},
            {"O_plus", d.o_plus},
            {"epsilon", d.epsilon},
            {"support", one_based(d.support)}};
}

inline json to_json(const BZSeedData& z)
{
    json labels = json::array(), degrees = json::array();
    for (const auto& [g, d] : z.labels)
        labels.push_back({{"first", g}, {"second", d}});
    for (const auto& [a, b] : z.degrees)
        degrees.push_back({a, b});
    return {{"variant", z.variant == BzVariant::plain ? "BZ" : "mBZ"},
            {"labels", labels},
            {"mu", to_json(z.mu)},
            {"B", to_json(z.exchange.entries)},
            {"ex", one_based(z.exchange.ex)},
            {"inv", one_based(z.inv)},
            {"degrees", degrees},
            {"d", z.d}};
}

inline json to_json(const NFPoly& p)
{
    json a = json::array();
    for (const auto& [f, c] : p.terms())
        a.push_back({{"monomial", f}, {"coef", to_json(c)}});
    return a;
}

inline NFPoly nfpoly_from_json(const json& j, std::size_t n)
{
    NFPoly p(n);
    for (const auto& t : j)
        p.add_term(t.at("monomial").get<IntVec>(), vlaurent_from_json(t.at("coef")));
    return p;
}

inline json to_json(const CGLPresentation& p)
{
    json tails = json::array();
    for (const auto& [key, poly] : p.tails)
        tails.push_back({{"k", key.first + 1}, {"j", key.second + 1}, {"poly", to_json(poly)}});
    return {{"name", p.name},
            {"n", p.n},
            {"lambda_exp", to_json(p.lambda_exp)},
            {"tails", tails},
            {"eta", one_based(p.eta)},
            {"degrees", p.degrees},
            {"lambda_star_qexp", p.lambda_star_qexp}};
}

inline CGLPresentation presentation_from_json(const json& j)
{
    CGLPresentation p;
    p.name = j.value("name", std::string("presentation"));
    p.n = j.at("n").get<int>();
    p.lambda_exp = qmatrix_from_json(j.at("lambda_exp"));
    for (const auto& t : j.at("tails"))
        p.tails.emplace(std::make_pair(t.at("k").get<int>() - 1, t.at("j").get<int>() - 1),
                        nfpoly_from_json(t.at("poly"), static_cast<std::size_t>(p.n)));
    p.eta = zero_based(j.at("eta"));
    p.degrees = j.at("degrees").get<std::vector<RootVec>>();
    p.lambda_star_qexp = j.contains("lambda_star_qexp") ? j.at("lambda_star_qexp").get<IntVec>()
                                                        : IntVec(static_cast<std::size_t>(p.n), 2);
    p.validate();
    return p;
}

} // namespace qcluster::json_io
