#pragma once

#include "framecast/document.hpp"

#include <string>
#include <vector>

namespace framecast::commands {

using doc::json;

/// Outcome of one batch command. `status` follows the shared StatusCode
/// taxonomy and doubles as the process exit code; `documents` holds the
/// emitted documents in order (reports, or generated inputs); `message` is a
/// single human-readable line, set on any nonzero status.
struct CommandOutcome {
    int status = 0;
    std::vector<json> documents;
    std::string message;
};

/// All commands take raw document text plus an options object (JSON text,
/// "{}" for defaults) and never throw: failures come back as status codes.
///
/// Common option keys: seed (unsigned), tol_identity (real > 0),
/// rank_tol (real > 0), trials (integer >= 1).
CommandOutcome run_analyze(const std::string& system_text, const std::string& options_text);

/// steps (integer >= 1) or infinite (bool); exactly one of the two.
CommandOutcome run_iterate(const std::string& operator_text, const std::string& vector_text,
                           const std::string& options_text);

CommandOutcome run_recover(const std::string& system_text, const std::string& options_text);

CommandOutcome run_represent_check(const std::string& operator_text,
                                   const std::string& vector_text,
                                   const std::string& options_text);

CommandOutcome run_diagonalize(const std::string& operator_text, const std::string& vector_text,
                               const std::string& options_text);

/// Default path verifies the certified-mu bound sandwich; setting both l1 and
/// l2 in (0,1) switches to the sampled scalar-hypothesis check.
CommandOutcome run_perturb(const std::string& reference_text, const std::string& perturbed_text,
                           const std::string& options_text);

CommandOutcome run_conjecture(const std::string& operator_text, const std::string& options_text);

/// kind: harmonic (dim, size), contraction (dim, radius, seed),
/// jordan (size, lambda_re, lambda_im). Emits operator [+ vector] documents.
CommandOutcome run_generate(const std::string& kind, const std::string& options_text);

}  // namespace framecast::commands
