#include "framecast/commands.hpp"

#include "framecast/dynamics.hpp"
#include "framecast/frames.hpp"
#include "framecast/numerics.hpp"
#include "framecast/perturbation.hpp"
#include "framecast/random.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <utility>

namespace framecast::commands {

namespace num = framecast::numerics;
using frames::FrameSystem;

namespace {

json parse_options(const std::string& text) {
    if (text.empty()) return json::object();
    json j = doc::parse_text(text);
    if (!j.is_object()) throw MalformedInputError("options must be a JSON object");
    return j;
}

double opt_real(const json& opts, const char* key, double fallback) {
    if (!opts.contains(key)) return fallback;
    if (!opts[key].is_number()) throw MalformedInputError(std::string(key) + " must be a number");
    return opts[key].get<double>();
}

std::int64_t opt_int(const json& opts, const char* key, std::int64_t fallback) {
    if (!opts.contains(key)) return fallback;
    if (!opts[key].is_number_integer())
        throw MalformedInputError(std::string(key) + " must be an integer");
    return opts[key].get<std::int64_t>();
}

bool opt_bool(const json& opts, const char* key, bool fallback) {
    if (!opts.contains(key)) return fallback;
    if (!opts[key].is_boolean())
        throw MalformedInputError(std::string(key) + " must be a boolean");
    return opts[key].get<bool>();
}

std::uint64_t opt_seed(const json& opts) {
    if (!opts.contains("seed")) return 0;
    const json& s = opts["seed"];
    if (s.is_number_unsigned()) return s.get<std::uint64_t>();
    if (s.is_number_integer()) {
        const std::int64_t v = s.get<std::int64_t>();
        if (v < 0) throw ParamRangeError("seed must be nonnegative");
        return static_cast<std::uint64_t>(v);
    }
    throw MalformedInputError("seed must be an integer");
}

Tolerances tolerances_from(const json& opts) {
    Tolerances tol = Tolerances::active();
    const double ti = opt_real(opts, "tol_identity", tol.tol_identity);
    const double rt = opt_real(opts, "rank_tol", tol.rank_tol_factor);
    if (!(ti > 0.0)) throw ParamRangeError("tol_identity must be positive");
    if (!(rt > 0.0)) throw ParamRangeError("rank_tol must be positive");
    tol.tol_identity = ti;
    tol.rank_tol_factor = rt;
    return tol;
}

CommandOutcome guarded(const std::function<void(CommandOutcome&)>& body) {
    CommandOutcome out;
    try {
        body(out);
    } catch (const Error& e) {
        out.status = static_cast<int>(e.code());
        out.message = e.what();
        out.documents.clear();
    } catch (const std::exception& e) {
        out.status = static_cast<int>(StatusCode::internal);
        out.message = e.what();
        out.documents.clear();
    }
    return out;
}

json report_document(const std::string& command, json inputs, json report,
                     std::optional<std::uint64_t> seed, const Tolerances& tol) {
    json payload{{"command", command},
                 {"inputs", std::move(inputs)},
                 {"report", std::move(report)}};
    return doc::make_document("report", std::move(payload), doc::meta_block(seed, tol));
}

json real_array(const std::vector<double>& values) {
    json a = json::array();
    for (double v : values) a.push_back(v);
    return a;
}

json recovery_to_json(const dynamics::RecoveryResult& r) {
    return json{{"recovered", doc::to_json(r.recovered)},
                {"residual", r.residual},
                {"consistent", r.consistent},
                {"kernel_shift_invariant", r.kernel_shift_invariant},
                {"norm_of_recovered", r.norm_of_recovered}};
}

Mat mat_power(const Mat& base, unsigned long exponent) {
    Mat result = Mat::Identity(base.rows(), base.cols());
    Mat square = base;
    while (exponent > 0) {
        if (exponent & 1UL) result = result * square;
        square = square * square;
        exponent >>= 1UL;
    }
    return result;
}

}  // namespace

CommandOutcome run_analyze(const std::string& system_text, const std::string& options_text) {
    return guarded([&](CommandOutcome& out) {
        const json opts = parse_options(options_text);
        const Tolerances tol = tolerances_from(opts);
        const json sys_doc = doc::parse_text(system_text);
        const FrameSystem f = doc::system_from_document(sys_doc);

        const frames::FrameReport fr = frames::frame_bounds(f, tol);
        const frames::FrameSequenceReport sr = frames::frame_sequence_test(f, tol);

        json report{{"lower_bound", fr.lower_bound},
                    {"upper_bound", fr.upper_bound},
                    {"rank", fr.rank},
                    {"spans_space", fr.spans_space},
                    {"tight", fr.tight},
                    {"tightness_defect", fr.tightness_defect},
                    {"synthesis_norm_sq", fr.synthesis_norm_sq},
                    {"restricted_spectrum", real_array(sr.restricted_spectrum)},
                    {"contained", sr.contained},
                    {"full_spectrum_bound", sr.full_spectrum_bound}};
        out.documents.push_back(report_document(
            "analyze", json{{"system", doc::digest(sys_doc)}}, std::move(report),
            std::nullopt, tol));
        if (!fr.spans_space) {
            out.status = static_cast<int>(StatusCode::frame_sequence_only);
            out.message = "system is a frame sequence for its span only";
        }
    });
}

CommandOutcome run_iterate(const std::string& operator_text, const std::string& vector_text,
                           const std::string& options_text) {
    return guarded([&](CommandOutcome& out) {
        const json opts = parse_options(options_text);
        const Tolerances tol = tolerances_from(opts);
        const json op_doc = doc::parse_text(operator_text);
        const json vec_doc = doc::parse_text(vector_text);
        const Mat t = doc::operator_from_document(op_doc);
        require_square(t, "iterate");
        const Vec phi = doc::vector_from_document(vec_doc);

        const bool infinite = opt_bool(opts, "infinite", false);
        const std::int64_t steps = opt_int(opts, "steps", 0);
        if (infinite == (steps > 0))
            throw ParamRangeError("iterate: pass exactly one of steps >= 1 or infinite");

        if (!infinite) {
            const FrameSystem orbit = dynamics::iterate(t, phi, static_cast<Index>(steps));
            out.documents.push_back(doc::make_document("system", doc::to_json(orbit),
                                                       doc::meta_block(std::nullopt, tol)));
            return;
        }

        if (phi.size() != t.rows()) throw DimensionError("iterate: generator dimension mismatch");
        if (phi.norm() == 0.0)
            throw DegenerateSystemError("iterate: infinite orbit of the zero generator");

        const Mat q = dynamics::cyclic_basis(t, phi, tol);
        const Mat tc = q.adjoint() * t * q;
        const double rho = num::spectral_radius(tc);
        if (rho >= 1.0 - tol.radius_margin)
            throw SpectralRadiusError(
                "iterate: restricted spectral radius " + doc::format_real(rho) +
                " admits no summable infinite orbit");

        const Vec phi_c = q.adjoint() * phi;
        const Mat sc = num::stein_solve(tc, phi_c * phi_c.adjoint(), tol);
        const Mat s_full = q * sc * q.adjoint();
        const num::EigResult eig = num::herm_eig(sc, tol);

        // Exact remainder of the K-term truncation: S - S_K = T^K S (T*)^K.
        const Mat pk = mat_power(tc, 400);
        const double remainder = num::operator_norm(pk * sc * pk.adjoint());

        json report{{"bessel", true},
                    {"restricted_radius", rho},
                    {"spans_space", q.cols() == t.rows()},
                    {"trace", sc.trace().real()},
                    {"lower_bound", eig.values(0)},
                    {"upper_bound", eig.values(eig.values.size() - 1)},
                    {"frame_operator", doc::to_json(s_full)},
                    {"tail", json{{"k", 400}, {"remainder_norm", remainder}}}};
        out.documents.push_back(report_document(
            "iterate",
            json{{"operator", doc::digest(op_doc)}, {"vector", doc::digest(vec_doc)}},
            std::move(report), std::nullopt, tol));
    });
}

CommandOutcome run_recover(const std::string& system_text, const std::string& options_text) {
    return guarded([&](CommandOutcome& out) {
        const json opts = parse_options(options_text);
        const Tolerances tol = tolerances_from(opts);
        const json sys_doc = doc::parse_text(system_text);
        const FrameSystem f = doc::system_from_document(sys_doc);

        const dynamics::RecoveryResult rec = dynamics::recover_operator(f, tol);
        const dynamics::LinearIndependenceReport li = dynamics::linear_independence_test(f, tol);

        json report = recovery_to_json(rec);
        report["independent"] = li.independent;
        report["rank"] = li.rank;
        out.documents.push_back(report_document(
            "recover", json{{"system", doc::digest(sys_doc)}}, std::move(report),
            std::nullopt, tol));
    });
}

CommandOutcome run_represent_check(const std::string& operator_text,
                                   const std::string& vector_text,
                                   const std::string& options_text) {
    return guarded([&](CommandOutcome& out) {
        const json opts = parse_options(options_text);
        const Tolerances tol = tolerances_from(opts);
        const json op_doc = doc::parse_text(operator_text);
        const json vec_doc = doc::parse_text(vector_text);
        const Mat t = doc::operator_from_document(op_doc);
        const Vec f1 = doc::vector_from_document(vec_doc);

        const dynamics::RepresentationReport rep = dynamics::representation_check(t, f1, tol);
        json report{{"condition_i", rep.condition_i},
                    {"invertible", rep.invertible},
                    {"is_frame", rep.is_frame},
                    {"stein_residual", rep.stein_residual},
                    {"lower_bound", rep.lower_bound},
                    {"upper_bound", rep.upper_bound}};
        if (rep.frame_op) report["frame_operator"] = doc::to_json(*rep.frame_op);
        out.documents.push_back(report_document(
            "represent_check",
            json{{"operator", doc::digest(op_doc)}, {"vector", doc::digest(vec_doc)}},
            std::move(report), std::nullopt, tol));
    });
}

CommandOutcome run_diagonalize(const std::string& operator_text, const std::string& vector_text,
                               const std::string& options_text) {
    return guarded([&](CommandOutcome& out) {
        const json opts = parse_options(options_text);
        const Tolerances tol = tolerances_from(opts);
        const json op_doc = doc::parse_text(operator_text);
        const json vec_doc = doc::parse_text(vector_text);
        const Mat t = doc::operator_from_document(op_doc);
        const Vec phi = doc::vector_from_document(vec_doc);

        const dynamics::SpectralRep rep = dynamics::multiplication_rep(t, phi, tol);
        json report{{"nodes", real_array(rep.nodes)},
                    {"weights", real_array(rep.weights)},
                    {"transform", doc::to_json(rep.transform)},
                    {"total_mass", rep.total_mass},
                    {"unitarity_defect", rep.unitarity_defect},
                    {"multiplication_defect", rep.multiplication_defect}};
        out.documents.push_back(report_document(
            "diagonalize",
            json{{"operator", doc::digest(op_doc)}, {"vector", doc::digest(vec_doc)}},
            std::move(report), std::nullopt, tol));
    });
}

CommandOutcome run_perturb(const std::string& reference_text, const std::string& perturbed_text,
                           const std::string& options_text) {
    return guarded([&](CommandOutcome& out) {
        const json opts = parse_options(options_text);
        const Tolerances tol = tolerances_from(opts);
        const json f_doc = doc::parse_text(reference_text);
        const json g_doc = doc::parse_text(perturbed_text);
        const FrameSystem f = doc::system_from_document(f_doc);
        const FrameSystem g = doc::system_from_document(g_doc);

        const bool has_l1 = opts.contains("l1");
        const bool has_l2 = opts.contains("l2");
        if (has_l1 != has_l2)
            throw ParamRangeError("perturb: l1 and l2 must be given together");

        const json inputs{{"reference", doc::digest(f_doc)}, {"perturbed", doc::digest(g_doc)}};

        if (!has_l1) {
            const perturbation::PerturbationReport rep = perturbation::sandwich_verify(f, g, tol);
            json report{{"params",
                         json{{"lambda1", rep.params.lambda1},
                              {"lambda2", rep.params.lambda2},
                              {"mu", rep.params.mu}}},
                        {"predicted_lower", rep.predicted_lower},
                        {"predicted_upper", rep.predicted_upper},
                        {"actual_lower", rep.actual_lower},
                        {"actual_upper", rep.actual_upper},
                        {"sandwich_ok", rep.sandwich_ok}};
            out.documents.push_back(
                report_document("perturb", inputs, std::move(report), std::nullopt, tol));
            return;
        }

        const double l1 = opt_real(opts, "l1", 0.0);
        const double l2 = opt_real(opts, "l2", 0.0);
        const std::int64_t trials = opt_int(opts, "trials", 10000);
        if (trials < 1) throw ParamRangeError("perturb: trials must be >= 1");
        const std::uint64_t seed = opt_seed(opts);

        const perturbation::PerturbationReport rep =
            perturbation::prop28_check(f, g, l1, l2, static_cast<Index>(trials), seed, tol);
        json report{{"params",
                     json{{"lambda1", rep.params.lambda1},
                          {"lambda2", rep.params.lambda2},
                          {"mu", rep.params.mu}}},
                    {"max_violation_ratio", rep.max_violation_ratio},
                    {"hypothesis_holds", rep.hypothesis_holds}};
        if (rep.hypothesis_holds) {
            report["predicted_lower"] = rep.predicted_lower;
            report["predicted_upper"] = rep.predicted_upper;
            report["actual_lower"] = rep.actual_lower;
            report["actual_upper"] = rep.actual_upper;
            report["sandwich_ok"] = rep.sandwich_ok;
            if (rep.representation) report["representation"] = recovery_to_json(*rep.representation);
        }
        out.documents.push_back(report_document("perturb", inputs, std::move(report), seed, tol));
    });
}

CommandOutcome run_conjecture(const std::string& operator_text, const std::string& options_text) {
    return guarded([&](CommandOutcome& out) {
        const json opts = parse_options(options_text);
        const Tolerances tol = tolerances_from(opts);
        const json op_doc = doc::parse_text(operator_text);
        const Mat t = doc::operator_from_document(op_doc);

        const std::int64_t trials = opt_int(opts, "trials", 16);
        if (trials < 0) throw ParamRangeError("conjecture: trials must be >= 0");
        const std::uint64_t seed = opt_seed(opts);

        const dynamics::ConjectureCertificate cert =
            dynamics::conjecture_explore(t, static_cast<Index>(trials), seed, tol);

        json blocks = json::array();
        for (const dynamics::ConjectureBlock& b : cert.blocks) {
            json block{{"eigenvalue", doc::to_json(b.eigenvalue)},
                       {"dim", b.dim},
                       {"restricted_radius", b.restricted_radius},
                       {"invariance_defect", b.invariance_defect},
                       {"certified", b.certified},
                       {"basis", doc::to_json(b.basis)}};
            if (b.certified) {
                block["generator"] = doc::to_json(b.generator);
                block["lower_bound"] = b.lower_bound;
                block["upper_bound"] = b.upper_bound;
            } else {
                block["reason"] = b.reason;
            }
            blocks.push_back(std::move(block));
        }
        json report{{"covers_space", cert.covers_space},
                    {"invariance_defect", cert.invariance_defect},
                    {"blocks", std::move(blocks)}};
        out.documents.push_back(report_document(
            "conjecture", json{{"operator", doc::digest(op_doc)}}, std::move(report), seed, tol));
    });
}

CommandOutcome run_generate(const std::string& kind, const std::string& options_text) {
    return guarded([&](CommandOutcome& out) {
        const json opts = parse_options(options_text);
        const Tolerances tol = tolerances_from(opts);

        if (kind == "harmonic") {
            const std::int64_t dim = opt_int(opts, "dim", 2);
            const std::int64_t size = opt_int(opts, "size", 2 * dim);
            if (dim < 1) throw ParamRangeError("generate harmonic: dim must be >= 1");
            if (size < dim) throw ParamRangeError("generate harmonic: size must be >= dim");

            Mat t = Mat::Zero(dim, dim);
            for (Index j = 0; j < dim; ++j) {
                const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) /
                                     static_cast<double>(size);
                t(j, j) = std::polar(1.0, angle);
            }
            const Vec ones = Vec::Ones(dim);
            out.documents.push_back(doc::make_document(
                "operator", json{{"matrix", doc::to_json(t)}},
                doc::meta_block(std::nullopt, tol)));
            out.documents.push_back(doc::make_document(
                "vector", json{{"entries", doc::to_json(ones)}},
                doc::meta_block(std::nullopt, tol)));
            return;
        }

        if (kind == "contraction") {
            const std::int64_t dim = opt_int(opts, "dim", 2);
            const double radius = opt_real(opts, "radius", 0.5);
            if (dim < 1) throw ParamRangeError("generate contraction: dim must be >= 1");
            if (radius < 0.0 || radius >= 1.0)
                throw ParamRangeError("generate contraction: radius must lie in [0, 1)");
            const std::uint64_t seed = opt_seed(opts);

            Rng rng(derive_seed(seed, 0, 0));
            Mat t;
            if (radius == 0.0) {
                // Strictly upper-triangular draw: exactly nilpotent.
                t = rng.gaussian_matrix(dim, dim);
                for (Index i = 0; i < dim; ++i)
                    for (Index j = 0; j <= i; ++j) t(i, j) = 0.0;
            } else {
                t = rng.gaussian_matrix(dim, dim);
                const double rho = num::spectral_radius(t);
                if (rho == 0.0)
                    throw Error(StatusCode::internal, "generate contraction: degenerate draw");
                t *= radius / rho;
            }
            const Vec phi = rng.unit_vector(dim);
            out.documents.push_back(doc::make_document(
                "operator", json{{"matrix", doc::to_json(t)}}, doc::meta_block(seed, tol)));
            out.documents.push_back(doc::make_document(
                "vector", json{{"entries", doc::to_json(phi)}}, doc::meta_block(seed, tol)));
            return;
        }

        if (kind == "jordan") {
            const std::int64_t size = opt_int(opts, "size", 2);
            if (size < 1) throw ParamRangeError("generate jordan: size must be >= 1");
            const Complex lambda(opt_real(opts, "lambda_re", 0.5),
                                 opt_real(opts, "lambda_im", 0.0));

            Mat t = Mat::Zero(size, size);
            for (Index i = 0; i < size; ++i) {
                t(i, i) = lambda;
                if (i + 1 < size) t(i, i + 1) = 1.0;
            }
            out.documents.push_back(doc::make_document(
                "operator", json{{"matrix", doc::to_json(t)}},
                doc::meta_block(std::nullopt, tol)));
            return;
        }

        throw ParamRangeError("generate: kind must be harmonic, contraction or jordan");
    });
}

}  // namespace framecast::commands
