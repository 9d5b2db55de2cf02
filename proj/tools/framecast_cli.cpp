// Batch front-end for the framecast shared library. Reads JSON documents,
// dispatches through the C API, writes canonical reports, and maps every
// failure to a documented exit code (see fc_status in framecast.h).

#include <framecast.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct CommonOpts {
    std::string out = "-";
    std::uint64_t seed = 0;
    double tol_identity = 0.0;
    double rank_tol = 0.0;
    bool pretty = false;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--out", c.out, "Output path, - for stdout")->capture_default_str();
    cmd->add_option("--seed", c.seed, "Seed for randomized paths (default 0)");
    cmd->add_option("--tol-identity", c.tol_identity,
                    "Identity tolerance override (default 1e-9, or FRAMECAST_TOL_IDENTITY)");
    cmd->add_option("--rank-tol", c.rank_tol,
                    "Relative rank cutoff override (default 1e-10)");
    cmd->add_flag("--pretty", c.pretty,
                  "Indent output for reading (not the canonical byte form)");
}

nlohmann::json base_options(const CLI::App* cmd, const CommonOpts& c) {
    nlohmann::json opts = nlohmann::json::object();
    if (cmd->count("--seed")) opts["seed"] = c.seed;
    if (cmd->count("--tol-identity")) opts["tol_identity"] = c.tol_identity;
    if (cmd->count("--rank-tol")) opts["rank_tol"] = c.rank_tol;
    return opts;
}

bool read_input(const std::string& path, std::string& text) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        text = buffer.str();
        return true;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
    return true;
}

std::string render(const char* document, bool pretty) {
    std::string text(document);
    if (pretty) {
        const nlohmann::json parsed = nlohmann::json::parse(text, nullptr, false);
        if (!parsed.is_discarded()) text = parsed.dump(2);
    }
    text += '\n';
    return text;
}

bool write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return static_cast<bool>(std::cout);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << text;
    return static_cast<bool>(out);
}

int fail(const std::string& message) {
    std::cerr << "framecast: " << message << "\n";
    return FC_MALFORMED;
}

using ResultPtr = std::unique_ptr<fc_result, decltype(&fc_result_free)>;

ResultPtr own(fc_result* r) { return ResultPtr(r, &fc_result_free); }

// Writes documents (routed ones first), reports the message, returns the
// process exit code. Reports with nonzero status are still written.
int finish(const ResultPtr& result, const CommonOpts& common,
           const std::vector<std::string>& routes = {}) {
    if (!result) return fail("out of memory");
    const int status = fc_result_status(result.get());
    const int count = fc_result_document_count(result.get());
    for (int i = 0; i < count; ++i) {
        const char* document = fc_result_document(result.get(), i);
        if (!document) continue;
        const std::string target =
            i < static_cast<int>(routes.size()) && !routes[static_cast<std::size_t>(i)].empty()
                ? routes[static_cast<std::size_t>(i)]
                : common.out;
        if (!write_text(target, render(document, common.pretty)))
            return fail("cannot write " + target);
    }
    if (status != FC_OK)
        std::cerr << "framecast: " << fc_status_name(status) << ": "
                  << fc_result_message(result.get()) << "\n";
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frame and iterated-system analysis toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(fc_version()));

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Frame bounds and spectrum tests of a system");
    std::string analyze_system;
    CommonOpts analyze_common;
    analyze->add_option("system", analyze_system, "System document path or -")->required();
    add_common(analyze, analyze_common);

    // iterate
    auto* iterate = app.add_subcommand("iterate", "Orbit of an operator/generator pair");
    std::string iterate_op, iterate_vec;
    std::int64_t iterate_steps = 0;
    bool iterate_infinite = false;
    CommonOpts iterate_common;
    iterate->add_option("--op", iterate_op, "Operator document path or -")->required();
    iterate->add_option("--vec", iterate_vec, "Generator document path or -")->required();
    iterate->add_option("--steps", iterate_steps, "Orbit length K >= 1");
    iterate->add_flag("--infinite", iterate_infinite,
                      "Infinite-orbit frame operator via the Stein solution");
    add_common(iterate, iterate_common);

    // recover
    auto* recover = app.add_subcommand("recover", "Transition operator fitting a system");
    std::string recover_system;
    CommonOpts recover_common;
    recover->add_option("system", recover_system, "System document path or -")->required();
    add_common(recover, recover_common);

    // represent-check
    auto* represent =
        app.add_subcommand("represent-check", "Frame test for the orbit of a generator");
    represent->alias("represent_check");
    std::string represent_op, represent_vec;
    CommonOpts represent_common;
    represent->add_option("--op", represent_op, "Operator document path or -")->required();
    represent->add_option("--vec", represent_vec, "Generator document path or -")->required();
    add_common(represent, represent_common);

    // diagonalize
    auto* diagonalize = app.add_subcommand(
        "diagonalize", "Multiplication-operator form of a Hermitian operator");
    std::string diagonalize_op, diagonalize_vec;
    CommonOpts diagonalize_common;
    diagonalize->add_option("--op", diagonalize_op, "Operator document path or -")->required();
    diagonalize->add_option("--vec", diagonalize_vec, "Cyclic generator path or -")->required();
    add_common(diagonalize, diagonalize_common);

    // perturb
    auto* perturb = app.add_subcommand("perturb", "Perturbation bound sandwich of two systems");
    std::string perturb_f, perturb_g;
    double perturb_l1 = 0.0, perturb_l2 = 0.0;
    std::int64_t perturb_trials = 10000;
    CommonOpts perturb_common;
    perturb->add_option("reference", perturb_f, "Reference system path or -")->required();
    perturb->add_option("perturbed", perturb_g, "Perturbed system path or -")->required();
    perturb->add_option("--l1", perturb_l1, "Scalar-hypothesis lambda1 in (0,1)");
    perturb->add_option("--l2", perturb_l2, "Scalar-hypothesis lambda2 in (0,1)");
    perturb->add_option("--trials", perturb_trials, "Sampling trials (default 10000)");
    add_common(perturb, perturb_common);

    // conjecture
    auto* conjecture =
        app.add_subcommand("conjecture", "Invariant-block decomposition with certificates");
    std::string conjecture_op;
    std::int64_t conjecture_trials = 16;
    CommonOpts conjecture_common;
    conjecture->add_option("--op", conjecture_op, "Operator document path or -")->required();
    conjecture->add_option("--trials", conjecture_trials,
                           "Random generator candidates per block (default 16)");
    add_common(conjecture, conjecture_common);

    // generate
    auto* generate = app.add_subcommand("generate", "Example operator/vector documents");
    std::string generate_kind;
    std::int64_t generate_dim = 2, generate_size = 0;
    double generate_radius = 0.5, generate_lambda = 0.5, generate_lambda_im = 0.0;
    std::string generate_out_op, generate_out_vec;
    CommonOpts generate_common;
    generate->add_option("kind", generate_kind, "harmonic, contraction or jordan")->required();
    generate->add_option("--dim", generate_dim, "Space dimension (default 2)");
    generate->add_option("--size", generate_size,
                         "harmonic: orbit length (default 2*dim); jordan: block size");
    generate->add_option("--radius", generate_radius,
                         "contraction: target spectral radius in [0,1)");
    generate->add_option("--lambda", generate_lambda, "jordan: eigenvalue real part");
    generate->add_option("--lambda-im", generate_lambda_im, "jordan: eigenvalue imaginary part");
    generate->add_option("--out-op", generate_out_op, "Write the operator document here");
    generate->add_option("--out-vec", generate_out_vec, "Write the vector document here");
    add_common(generate, generate_common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return FC_MALFORMED;
    }

    if (analyze->parsed()) {
        std::string system_text;
        if (!read_input(analyze_system, system_text)) return fail("cannot read " + analyze_system);
        const nlohmann::json opts = base_options(analyze, analyze_common);
        return finish(own(fc_analyze(system_text.c_str(), opts.dump().c_str())), analyze_common);
    }

    if (iterate->parsed()) {
        std::string op_text, vec_text;
        if (!read_input(iterate_op, op_text)) return fail("cannot read " + iterate_op);
        if (!read_input(iterate_vec, vec_text)) return fail("cannot read " + iterate_vec);
        nlohmann::json opts = base_options(iterate, iterate_common);
        if (iterate->count("--steps")) opts["steps"] = iterate_steps;
        if (iterate_infinite) opts["infinite"] = true;
        return finish(own(fc_iterate(op_text.c_str(), vec_text.c_str(), opts.dump().c_str())),
                      iterate_common);
    }

    if (recover->parsed()) {
        std::string system_text;
        if (!read_input(recover_system, system_text)) return fail("cannot read " + recover_system);
        const nlohmann::json opts = base_options(recover, recover_common);
        return finish(own(fc_recover(system_text.c_str(), opts.dump().c_str())), recover_common);
    }

    if (represent->parsed()) {
        std::string op_text, vec_text;
        if (!read_input(represent_op, op_text)) return fail("cannot read " + represent_op);
        if (!read_input(represent_vec, vec_text)) return fail("cannot read " + represent_vec);
        const nlohmann::json opts = base_options(represent, represent_common);
        return finish(
            own(fc_represent_check(op_text.c_str(), vec_text.c_str(), opts.dump().c_str())),
            represent_common);
    }

    if (diagonalize->parsed()) {
        std::string op_text, vec_text;
        if (!read_input(diagonalize_op, op_text)) return fail("cannot read " + diagonalize_op);
        if (!read_input(diagonalize_vec, vec_text)) return fail("cannot read " + diagonalize_vec);
        const nlohmann::json opts = base_options(diagonalize, diagonalize_common);
        return finish(
            own(fc_diagonalize(op_text.c_str(), vec_text.c_str(), opts.dump().c_str())),
            diagonalize_common);
    }

    if (perturb->parsed()) {
        std::string f_text, g_text;
        if (!read_input(perturb_f, f_text)) return fail("cannot read " + perturb_f);
        if (!read_input(perturb_g, g_text)) return fail("cannot read " + perturb_g);
        nlohmann::json opts = base_options(perturb, perturb_common);
        if (perturb->count("--l1")) opts["l1"] = perturb_l1;
        if (perturb->count("--l2")) opts["l2"] = perturb_l2;
        if (perturb->count("--trials")) opts["trials"] = perturb_trials;
        return finish(own(fc_perturb(f_text.c_str(), g_text.c_str(), opts.dump().c_str())),
                      perturb_common);
    }

    if (conjecture->parsed()) {
        std::string op_text;
        if (!read_input(conjecture_op, op_text)) return fail("cannot read " + conjecture_op);
        nlohmann::json opts = base_options(conjecture, conjecture_common);
        if (conjecture->count("--trials")) opts["trials"] = conjecture_trials;
        return finish(own(fc_conjecture(op_text.c_str(), opts.dump().c_str())), conjecture_common);
    }

    if (generate->parsed()) {
        nlohmann::json opts = base_options(generate, generate_common);
        if (generate->count("--dim")) opts["dim"] = generate_dim;
        if (generate->count("--size")) opts["size"] = generate_size;
        if (generate->count("--radius")) opts["radius"] = generate_radius;
        if (generate->count("--lambda")) opts["lambda_re"] = generate_lambda;
        if (generate->count("--lambda-im")) opts["lambda_im"] = generate_lambda_im;
        return finish(own(fc_generate(generate_kind.c_str(), opts.dump().c_str())),
                      generate_common, {generate_out_op, generate_out_vec});
    }

    return fail("no subcommand given");
}
