#include "framecast.h"

#include "framecast/commands.hpp"
#include "framecast/document.hpp"

#include <new>
#include <string>
#include <vector>

struct fc_result {
    int status = FC_INTERNAL;
    std::string message;
    std::vector<std::string> documents;
};

namespace {

using framecast::commands::CommandOutcome;

std::string from_cstr(const char* text) { return text ? std::string(text) : std::string(); }

std::string options_or_default(const char* options_json) {
    return options_json && *options_json ? std::string(options_json) : std::string("{}");
}

fc_result* materialize(const CommandOutcome& outcome) {
    fc_result* r = new (std::nothrow) fc_result;
    if (!r) return nullptr;
    r->status = outcome.status;
    r->message = outcome.message;
    try {
        r->documents.reserve(outcome.documents.size());
        for (const auto& d : outcome.documents)
            r->documents.push_back(framecast::doc::canonical_dump(d));
    } catch (const std::exception& e) {
        r->status = FC_INTERNAL;
        r->message = e.what();
        r->documents.clear();
    }
    return r;
}

fc_result* failure(int status, const char* message) {
    fc_result* r = new (std::nothrow) fc_result;
    if (!r) return nullptr;
    r->status = status;
    r->message = message;
    return r;
}

template <typename F>
fc_result* run_guarded(F&& f) {
    try {
        return materialize(f());
    } catch (const std::exception& e) {
        return failure(FC_INTERNAL, e.what());
    } catch (...) {
        return failure(FC_INTERNAL, "unknown error");
    }
}

}  // namespace

extern "C" {

const char* fc_version(void) { return framecast::doc::kToolVersion; }

const char* fc_status_name(int status) {
    switch (status) {
        case FC_OK: return "ok";
        case FC_MALFORMED: return "malformed";
        case FC_DIMENSION_MISMATCH: return "dimension_mismatch";
        case FC_FRAME_SEQUENCE_ONLY: return "frame_sequence_only";
        case FC_DEGENERATE_SYSTEM: return "degenerate_system";
        case FC_SPECTRAL_RADIUS: return "spectral_radius";
        case FC_NOT_CYCLIC: return "not_cyclic";
        case FC_ADMISSIBILITY: return "admissibility";
        case FC_DOMAIN: return "domain";
        case FC_INTERNAL: return "internal";
        default: return "unknown";
    }
}

fc_result* fc_analyze(const char* system_json, const char* options_json) {
    if (!system_json) return failure(FC_MALFORMED, "system document is null");
    return run_guarded([&] {
        return framecast::commands::run_analyze(from_cstr(system_json),
                                                options_or_default(options_json));
    });
}

fc_result* fc_iterate(const char* operator_json, const char* vector_json,
                      const char* options_json) {
    if (!operator_json || !vector_json) return failure(FC_MALFORMED, "input document is null");
    return run_guarded([&] {
        return framecast::commands::run_iterate(from_cstr(operator_json), from_cstr(vector_json),
                                                options_or_default(options_json));
    });
}

fc_result* fc_recover(const char* system_json, const char* options_json) {
    if (!system_json) return failure(FC_MALFORMED, "system document is null");
    return run_guarded([&] {
        return framecast::commands::run_recover(from_cstr(system_json),
                                                options_or_default(options_json));
    });
}

fc_result* fc_represent_check(const char* operator_json, const char* vector_json,
                              const char* options_json) {
    if (!operator_json || !vector_json) return failure(FC_MALFORMED, "input document is null");
    return run_guarded([&] {
        return framecast::commands::run_represent_check(
            from_cstr(operator_json), from_cstr(vector_json), options_or_default(options_json));
    });
}

fc_result* fc_diagonalize(const char* operator_json, const char* vector_json,
                          const char* options_json) {
    if (!operator_json || !vector_json) return failure(FC_MALFORMED, "input document is null");
    return run_guarded([&] {
        return framecast::commands::run_diagonalize(
            from_cstr(operator_json), from_cstr(vector_json), options_or_default(options_json));
    });
}

fc_result* fc_perturb(const char* reference_json, const char* perturbed_json,
                      const char* options_json) {
    if (!reference_json || !perturbed_json)
        return failure(FC_MALFORMED, "input document is null");
    return run_guarded([&] {
        return framecast::commands::run_perturb(
            from_cstr(reference_json), from_cstr(perturbed_json),
            options_or_default(options_json));
    });
}

fc_result* fc_conjecture(const char* operator_json, const char* options_json) {
    if (!operator_json) return failure(FC_MALFORMED, "operator document is null");
    return run_guarded([&] {
        return framecast::commands::run_conjecture(from_cstr(operator_json),
                                                   options_or_default(options_json));
    });
}

fc_result* fc_generate(const char* kind, const char* options_json) {
    if (!kind) return failure(FC_MALFORMED, "kind is null");
    return run_guarded([&] {
        return framecast::commands::run_generate(from_cstr(kind),
                                                 options_or_default(options_json));
    });
}

int fc_result_status(const fc_result* result) { return result ? result->status : FC_INTERNAL; }

const char* fc_result_message(const fc_result* result) {
    return result ? result->message.c_str() : "";
}

int fc_result_document_count(const fc_result* result) {
    return result ? static_cast<int>(result->documents.size()) : 0;
}

const char* fc_result_document(const fc_result* result, int index) {
    if (!result || index < 0 || index >= static_cast<int>(result->documents.size()))
        return nullptr;
    return result->documents[static_cast<std::size_t>(index)].c_str();
}

void fc_result_free(fc_result* result) { delete result; }

}  // extern "C"
