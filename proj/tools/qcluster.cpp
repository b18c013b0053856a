// qcluster: construct, mutate and verify quantum seeds of double Bruhat cells.

#include "qcluster/commands.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace {

using qcluster::commands::json;

constexpr int exit_validation = 2;
constexpr int exit_incompatible = 3;

struct CellOptions {
    std::string type, w, u, sigma, convention = "plain", grading = "first";
    int rank = 0;
};

void add_cell_options(CLI::App* cmd, CellOptions& o)
{
    cmd->add_option("--type", o.type, "Cartan type, e.g. A2, or a family letter with --rank");
    cmd->add_option("--rank", o.rank, "rank when --type is a bare family letter");
    cmd->add_option("--w", o.w, "reduced word for w, 1-based letters such as 1,2,1");
    cmd->add_option("--u", o.u, "reduced word for u");
    cmd->add_option("--convention", o.convention, "modified BZ frame convention")
        ->check(CLI::IsMember({"plain", "own"}));
    cmd->add_option("--grading", o.grading, "degree component used for reduction")
        ->check(CLI::IsMember({"first", "second"}));
}

qcluster::commands::JobSpec job_of(const CellOptions& o)
{
    qcluster::commands::JobSpec job;
    job.type = o.type;
    job.rank = o.rank;
    job.w = qcluster::commands::parse_index_list(o.w);
    job.u = qcluster::commands::parse_index_list(o.u);
    job.sigma = o.sigma;
    job.convention = o.convention == "own" ? qcluster::BzConvention::own_labels
                                           : qcluster::BzConvention::plain_labels;
    job.grading = o.grading == "second" ? qcluster::BzGrading::second : qcluster::BzGrading::first;
    return job;
}

json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw qcluster::ValidationError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw qcluster::ValidationError(path + ": " + e.what());
    }
}

void emit(const json& doc, const std::string& out)
{
    const std::string text = doc.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f)
        throw qcluster::ValidationError("cannot write " + out);
    f << text;
}

int diagnostic(const char* kind, const std::string& message, int code)
{
    std::cerr << json{{"error", kind}, {"message", message}}.dump() << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Quantum cluster seeds of double Bruhat cells"};
    app.require_subcommand(1);
    std::string out;
    app.add_option("--out", out, "write JSON here instead of stdout");

    CellOptions seed_opt;
    bool bz = false, mbz = false, bfz = false, reduce = false;
    auto* seed = app.add_subcommand("seed", "emit sigma, BFZ, BZ or modified BZ seeds");
    add_cell_options(seed, seed_opt);
    seed->add_option("--sigma", seed_opt.sigma, "id, wN, all-xi or an explicit permutation");
    seed->add_flag("--bz", bz, "plain BZ seed");
    seed->add_flag("--mbz", mbz, "modified BZ seed");
    seed->add_flag("--bfz", bfz, "sigma = w0_N frame with the BFZ exchange matrix");
    seed->add_flag("--reduce", reduce, "add the graded reduction of BZ seeds");
    seed->add_option("--out", out);

    CellOptions mut_opt;
    std::string in, seq;
    std::size_t index = 1;
    bool use_reduced = false;
    auto* mutate = app.add_subcommand("mutate", "apply a mutation sequence");
    add_cell_options(mutate, mut_opt);
    mutate->add_option("--sigma", mut_opt.sigma, "seed to start from when no --in is given");
    mutate->add_option("--in", in, "seed JSON, bare or as written by the seed command");
    mutate->add_option("--index", index, "entry of a seed document, 1-based");
    mutate->add_flag("--reduced", use_reduced, "start from the entry's reduced seed");
    mutate->add_option("--seq", seq, "1-based mutation indices")->required();
    mutate->add_option("--out", out);

    CellOptions ver_opt;
    bool all_xi = false, fault = false;
    auto* verify = app.add_subcommand("verify", "run every check on one cell");
    add_cell_options(verify, ver_opt);
    verify->add_flag("--all-xi", all_xi, "verify the whole Xi family of sigma seeds");
    verify->add_flag("--inject-fault", fault, "perturb the frame before checking");
    verify->add_option("--out", out);

    int n = 0;
    bool gamma = false;
    CellOptions xi_opt;
    auto* xi = app.add_subcommand("xi-list", "enumerate Xi_n");
    add_cell_options(xi, xi_opt);
    xi->add_option("--n", n, "size; defaults to N+M of the given words");
    xi->add_flag("--gamma", gamma, "only the labelled gamma subset");
    xi->add_option("--out", out);

    std::string presentation = "sl2", pres_in, word;
    bool rescaled = false, show = false;
    auto* nf = app.add_subcommand("cgl-nf", "normal form of a product of generators");
    nf->add_option("--presentation", presentation, "shipped presentation: sl2 or a2");
    nf->add_option("--in", pres_in, "presentation JSON");
    nf->add_option("--word", word, "1-based generator indices")->required();
    nf->add_flag("--rescaled", rescaled, "use the shipped normalizing rescaling");
    nf->add_flag("--show-presentation", show, "include the presentation in the output");
    nf->add_option("--out", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return diagnostic("usage", e.what(), exit_validation);
    }

    using namespace qcluster::commands;
    try {
        if (*seed) {
            JobSpec job = job_of(seed_opt);
            job.bz = bz;
            job.mbz = mbz;
            job.bfz = bfz;
            job.reduce = reduce;
            emit(cmd_seed(job), out);
        } else if (*mutate) {
            qcluster::QuantumSeed start;
            if (!in.empty()) {
                if (index < 1)
                    throw qcluster::ValidationError("--index is 1-based");
                start = seed_from_document(read_json(in), index - 1, use_reduced);
            } else {
                JobSpec job = job_of(mut_opt);
                if (job.sigma == "all-xi")
                    throw qcluster::ValidationError("mutate starts from a single seed");
                start = seed_from_document(cmd_seed(job));
            }
            const auto res = cmd_mutate(start, parse_index_list(seq));
            emit(res.document, out);
            if (!res.compatible)
                return diagnostic("incompatible",
                                  res.document["input_compatible"].get<bool>()
                                      ? "mutation produced an incompatible seed"
                                      : "input seed is not compatible",
                                  exit_incompatible);
        } else if (*verify) {
            const auto res = cmd_verify(job_of(ver_opt), all_xi, fault);
            emit(res.document, out);
            return res.ok ? 0 : 1;
        } else if (*xi) {
            if (n == 0) {
                const JobSpec job = job_of(xi_opt);
                n = static_cast<int>(job.w.size() + job.u.size());
            }
            emit(cmd_xi_list(n, gamma), out);
        } else if (*nf) {
            qcluster::CGLPresentation pres;
            if (!pres_in.empty()) {
                if (rescaled)
                    throw qcluster::ValidationError("--rescaled applies to shipped presentations only");
                pres = qcluster::json_io::presentation_from_json(read_json(pres_in));
            } else {
                const auto shipped = shipped_by_name(presentation);
                pres = rescaled ? qcluster::rescale(shipped.presentation, shipped.c, shipped.rescaling).presentation
                                : shipped.presentation;
            }
            json doc = cmd_cgl_nf(pres, parse_index_list(word));
            if (show)
                doc["presentation_json"] = qcluster::json_io::to_json(pres);
            emit(doc, out);
        }
    } catch (const qcluster::IncompatibleSeed& e) {
        return diagnostic("incompatible", e.what(), exit_incompatible);
    } catch (const std::invalid_argument& e) {
        return diagnostic("validation", e.what(), exit_validation);
    } catch (const std::out_of_range& e) {
        return diagnostic("validation", e.what(), exit_validation);
    } catch (const json::exception& e) {
        return diagnostic("validation", e.what(), exit_validation);
    } catch (const std::exception& e) {
        return diagnostic("internal", e.what(), 1);
    }
    return 0;
}
