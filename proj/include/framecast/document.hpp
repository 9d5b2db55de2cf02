#pragma once

#include "framecast/frames.hpp"
#include "framecast/types.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace framecast::doc {

using json = nlohmann::json;
using frames::FrameSystem;

inline constexpr const char* kToolVersion = "0.1.0";

/// Canonical rendering of a finite real: %.17g semantics via std::to_chars,
/// locale-free, with -0 normalized to 0.
std::string format_real(double x);

/// Deterministic byte encoding: compact, keys sorted, floats via format_real.
std::string canonical_dump(const json& value);

std::string sha256_hex(const std::string& bytes);

/// SHA-256 of the canonical bytes of `value`.
std::string digest(const json& value);

json to_json(const Complex& z);  // [re, im]
json to_json(const Mat& m);      // rows of [re, im] pairs
json to_json(const Vec& v);
json to_json(const FrameSystem& f);  // {dim, index_origin, vectors}

/// Scalars parse from [re, im] or a bare number.
Complex complex_from(const json& j);
Mat matrix_from(const json& j);
Vec vector_from(const json& j);
FrameSystem system_from(const json& j);

/// {tool_version, seed (or null), tolerances}.
json meta_block(std::optional<std::uint64_t> seed, const Tolerances& tol);

json make_document(const std::string& kind, json payload, json meta);

/// MalformedInputError on invalid JSON text.
json parse_text(const std::string& text);

/// Validates the envelope and returns the payload object.
json document_payload(const json& document, const std::string& kind);

Mat operator_from_document(const json& document);
Vec vector_from_document(const json& document);
FrameSystem system_from_document(const json& document);

}  // namespace framecast::doc
