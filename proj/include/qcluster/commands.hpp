#pragma once

#include "qcluster/cgl.hpp"
#include "qcluster/dbc.hpp"
#include "qcluster/json_io.hpp"
#include "qcluster/verify.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

// Library entry points behind the command-line tool. Each returns a JSON document.
namespace qcluster::commands {

using json_io::json;

struct JobSpec {
    std::string type;                // "A2" or a family letter combined with rank
    int rank = 0;
    WeylWord w, u;
    std::string sigma;               // id | wN | all-xi | explicit "2,1,3"
    bool bz = false, mbz = false, bfz = false, reduce = false;
    BzConvention convention = BzConvention::plain_labels;
    BzGrading grading = BzGrading::first;
};

/// "1,2,1", "1 2 1" or "121" to a 0-based word.
inline std::vector<int> parse_index_list(const std::string& text)
{
    std::vector<int> out;
    const bool packed = text.find_first_of(", ") == std::string::npos;
    if (packed) {
        for (char ch : text) {
            if (ch < '1' || ch > '9')
                throw ValidationError("bad index list '" + text + "'");
            out.push_back(ch - '1');
        }
        return out;
    }
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        std::istringstream parts(token);
        std::string t;
        while (parts >> t) {
            std::size_t used = 0;
            int v = 0;
            try {
                v = std::stoi(t, &used);
            } catch (const std::exception&) {
                throw ValidationError("bad index '" + t + "'");
            }
            if (used != t.size() || v < 1)
                throw ValidationError("indices are positive integers, got '" + t + "'");
            out.push_back(v - 1);
        }
    }
    return out;
}

inline CartanData cartan_of(const JobSpec& job)
{
    if (job.type.empty())
        throw ValidationError("--type is required");
    if (job.rank > 0) {
        if (job.type.size() != 1)
            throw ValidationError("with --rank, --type is a single family letter");
        return cartan_init(job.type[0], job.rank);
    }
    return cartan_init(job.type);
}

inline void check_words(const CartanData& c, const JobSpec& job)
{
    for (const auto* word : {&job.w, &job.u}) {
        for (int i : *word)
            c.check_letter(i);
        if (!is_reduced(c, *word))
            throw ValidationError("word " + word_string(*word) + " is not reduced in " + c.name());
    }
}

inline std::vector<Permutation> select_sigmas(const std::string& sel, int n, int N)
{
    if (sel.empty() || sel == "wN")
        return {longest_prefix_permutation(N, n)};
    if (sel == "id")
        return {identity_permutation(n)};
    if (sel == "all-xi")
        return xi_enumerate(n);
    Permutation p = parse_index_list(sel);
    if (static_cast<int>(p.size()) != n)
        throw ValidationError("sigma has " + std::to_string(p.size()) + " entries, the cell has " +
                              std::to_string(n) + " indices");
    if (!is_xi(p))
        throw ValidationError("sigma " + sel + " is not in Xi");
    return {p};
}

inline json header(const CartanData& c, const JobSpec& job)
{
    return {{"type", c.name()}, {"w", json_io::one_based(job.w)}, {"u", json_io::one_based(job.u)}};
}

/// Seeds requested by the job, in a fixed order.
inline json cmd_seed(const JobSpec& job)
{
    const CartanData c = cartan_of(job);
    check_words(c, job);
    json out = header(c, job);
    json seeds = json::array();
    const bool sigma_wanted = !job.sigma.empty() || !(job.bz || job.mbz || job.bfz);
    if (job.bfz || sigma_wanted) {
        const DoubleCell cell(c, job.w, job.u);
        if (job.bfz)
            seeds.push_back({{"kind", "BFZ"}, {"seed", json_io::to_json(cell.bar_seed())}});
        if (sigma_wanted)
            for (const auto& sigma : select_sigmas(job.sigma, cell.size(), cell.pres.dwd.N)) {
                const SigmaSeed s = cell.sigma_seed(sigma);
                seeds.push_back({{"kind", "sigma"},
                                 {"sigma", json_io::one_based(sigma)},
                                 {"seed", json_io::to_json(s.seed)}});
            }
    }
    for (auto [flag, variant] : {std::pair{job.bz, BzVariant::plain}, std::pair{job.mbz, BzVariant::modified}}) {
        if (!flag)
            continue;
        const BZSeedData z = bz_seed(c, job.u, job.w, variant, job.convention);
        const QuantumSeed q = z.seed(job.grading);
        json entry = {{"kind", variant == BzVariant::plain ? "BZ" : "mBZ"},
                      {"bz", json_io::to_json(z)},
                      {"seed", json_io::to_json(q)}};
        if (job.reduce)
            entry["reduced"] = json_io::to_json(graded_reduce(q, z.r));
        seeds.push_back(std::move(entry));
    }
    out["seeds"] = std::move(seeds);
    return out;
}

struct MutateResult {
    json document;
    bool compatible = true;
};

/// Mutation sequence with a compatibility attestation per step.
inline MutateResult cmd_mutate(const QuantumSeed& start, const std::vector<int>& sequence)
{
    MutateResult res;
    json steps = json::array();
    const CompatibilityReport first = check_compatible(start);
    res.document["input_compatible"] = first.ok();
    QuantumSeed current = start;
    if (!first.ok()) {
        res.compatible = false;
        res.document["input_report"] = json_io::to_json(first);
    } else {
        for (int k : sequence) {
            if (!current.exchange.exchangeable(k))
                throw ValidationError("index " + std::to_string(k + 1) + " is not exchangeable");
            try {
                current = mutate_seed(current, k);
                steps.push_back({{"k", k + 1}, {"compatible", true}});
            } catch (const IncompatibleSeed& e) {
                steps.push_back({{"k", k + 1}, {"compatible", false}, {"error", e.what()}});
                res.compatible = false;
                break;
            }
        }
    }
    res.document["sequence"] = json_io::one_based(sequence);
    res.document["steps"] = std::move(steps);
    res.document["seed"] = json_io::to_json(current);
    res.document["returns_to_input"] = same_seed(current, start);
    return res;
}

/// A seed document: a bare seed, or the first (or chosen) entry of a seed command's output.
inline QuantumSeed seed_from_document(const json& doc, std::size_t index = 0, bool reduced = false)
{
    if (doc.contains("psi"))
        return json_io::seed_from_json(doc);
    if (doc.contains("seeds")) {
        const auto& list = doc.at("seeds");
        if (index >= list.size())
            throw ValidationError("seed index " + std::to_string(index + 1) + " out of range");
        const auto& entry = list.at(index);
        if (reduced) {
            if (!entry.contains("reduced"))
                throw ValidationError("entry has no reduced seed");
            return json_io::seed_from_json(entry.at("reduced"));
        }
        return json_io::seed_from_json(entry.at("seed"));
    }
    if (doc.contains("seed"))
        return json_io::seed_from_json(doc.at("seed"));
    throw ValidationError("no seed found in the input document");
}

inline json report_json(const VerifyReport& rep)
{
    json checks = json::array(), audits = json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    for (const auto& c : rep.audits)
        audits.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"checks", checks}, {"audits", audits}, {"ok", rep.ok()}};
}

struct VerifyResult {
    json document;
    bool ok = false;
};

inline VerifyResult cmd_verify(const JobSpec& job, bool all_xi, bool inject_frame_fault)
{
    const CartanData c = cartan_of(job);
    check_words(c, job);
    VerifyOptions opt;
    opt.all_xi = all_xi;
    opt.convention = job.convention;
    opt.grading = job.grading;
    opt.inject_frame_fault = inject_frame_fault;
    const VerifyReport rep = verify_cell(c, job.w, job.u, opt);
    json doc = header(c, job);
    doc["report"] = report_json(rep);
    doc["fault_injected"] = inject_frame_fault;
    return {std::move(doc), rep.ok()};
}

/// Xi_n, or the gamma subset with its (i, j) labels.
inline json cmd_xi_list(int n, bool gamma)
{
    if (n < 1)
        throw ValidationError("xi-list needs n >= 1");
    json list = json::array();
    if (gamma) {
        for (const auto& g : gamma_subset(n))
            list.push_back({{"i", g.i}, {"j", g.j}, {"sigma", json_io::one_based(g.perm)}});
    } else {
        for (const auto& p : xi_enumerate(n))
            list.push_back(json_io::one_based(p));
    }
    return {{"n", n}, {"gamma", gamma}, {"count", list.size()}, {"permutations", list}};
}

inline ShippedPresentation shipped_by_name(const std::string& name)
{
    if (name == "sl2")
        return shipped_sl2();
    if (name == "a2" || name == "A2")
        return shipped_a2();
    throw ValidationError("unknown presentation '" + name + "' (sl2 or a2)");
}

/// Normal form of a product of generators.
inline json cmd_cgl_nf(const CGLPresentation& pres, const std::vector<int>& word)
{
    const CGLEngine engine(pres);
    std::vector<NFPoly> factors;
    for (int i : word) {
        if (i < 0 || i >= pres.n)
            throw ValidationError("generator " + std::to_string(i + 1) + " out of range");
        factors.push_back(engine.x(i));
    }
    const NFPoly nf = engine.product(factors);
    return {{"presentation", pres.name},
            {"word", json_io::one_based(word)},
            {"normal_form", json_io::to_json(nf)},
            {"text", nf.str()}};
}

} // namespace qcluster::commands
