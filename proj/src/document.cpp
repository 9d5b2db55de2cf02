#include "framecast/document.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <utility>

namespace framecast::doc {

std::string format_real(double x) {
    if (!std::isfinite(x)) throw MalformedInputError("non-finite number has no JSON encoding");
    if (x == 0.0) return "0";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

void dump_value(const json& v, std::string& out) {
    switch (v.type()) {
        case json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {  // object_t is sorted
                if (!first) out += ',';
                first = false;
                out += json(it.key()).dump();
                out += ':';
                dump_value(it.value(), out);
            }
            out += '}';
            return;
        }
        case json::value_t::array: {
            out += '[';
            bool first = true;
            for (const json& item : v) {
                if (!first) out += ',';
                first = false;
                dump_value(item, out);
            }
            out += ']';
            return;
        }
        case json::value_t::string:
            out += v.dump();  // quoting and escaping
            return;
        case json::value_t::boolean:
            out += v.get<bool>() ? "true" : "false";
            return;
        case json::value_t::number_integer:
            out += std::to_string(v.get<std::int64_t>());
            return;
        case json::value_t::number_unsigned:
            out += std::to_string(v.get<std::uint64_t>());
            return;
        case json::value_t::number_float:
            out += format_real(v.get<double>());
            return;
        case json::value_t::null:
            out += "null";
            return;
        default:
            throw MalformedInputError("unsupported JSON value type");
    }
}

}  // namespace

std::string canonical_dump(const json& value) {
    std::string out;
    dump_value(value, out);
    return out;
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error(StatusCode::internal, "sha256 digest failed");
    static const char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xF];
    }
    return out;
}

std::string digest(const json& value) { return sha256_hex(canonical_dump(value)); }

json to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json to_json(const Mat& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const Vec& v) {
    json entries = json::array();
    for (Index i = 0; i < v.size(); ++i) entries.push_back(to_json(v(i)));
    return entries;
}

json to_json(const FrameSystem& f) {
    json vectors = json::array();
    for (Index k = 0; k < f.size(); ++k) vectors.push_back(to_json(Vec(f.mat.col(k))));
    return json{{"dim", f.dim}, {"index_origin", f.index_origin}, {"vectors", std::move(vectors)}};
}

Complex complex_from(const json& j) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Complex(j[0].get<double>(), j[1].get<double>());
    throw MalformedInputError("scalar must be a number or an [re, im] pair");
}

Mat matrix_from(const json& j) {
    if (!j.is_array() || j.empty()) throw MalformedInputError("matrix must be a nonempty array");
    if (!j[0].is_array() || j[0].empty())
        throw MalformedInputError("matrix rows must be nonempty arrays");
    const Index rows = static_cast<Index>(j.size());
    const Index cols = static_cast<Index>(j[0].size());
    Mat m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        const json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != cols)
            throw MalformedInputError("matrix rows must all have the same length");
        for (Index c = 0; c < cols; ++c)
            m(i, c) = complex_from(row[static_cast<std::size_t>(c)]);
    }
    return m;
}

Vec vector_from(const json& j) {
    if (!j.is_array() || j.empty()) throw MalformedInputError("vector must be a nonempty array");
    Vec v(static_cast<Index>(j.size()));
    for (Index i = 0; i < v.size(); ++i) v(i) = complex_from(j[static_cast<std::size_t>(i)]);
    return v;
}

FrameSystem system_from(const json& j) {
    if (!j.is_object()) throw MalformedInputError("system payload must be an object");
    if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<long>() < 1)
        throw MalformedInputError("system needs a positive integer dim");
    if (!j.contains("vectors") || !j["vectors"].is_array())
        throw MalformedInputError("system needs a vectors array");
    long origin = 0;
    if (j.contains("index_origin")) {
        if (!j["index_origin"].is_number_integer())
            throw MalformedInputError("index_origin must be an integer");
        origin = j["index_origin"].get<long>();
    }

    const Index dim = static_cast<Index>(j["dim"].get<long>());
    const json& vectors = j["vectors"];
    Mat m(dim, static_cast<Index>(vectors.size()));
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        const Vec v = vector_from(vectors[k]);
        if (v.size() != dim)
            throw DimensionError("system vector " + std::to_string(k) +
                                 " does not match the declared dim");
        m.col(static_cast<Index>(k)) = v;
    }
    return FrameSystem(std::move(m), origin);
}

json meta_block(std::optional<std::uint64_t> seed, const Tolerances& tol) {
    json tolerances{{"tol_identity", tol.tol_identity},
                    {"rank_tol_factor", tol.rank_tol_factor},
                    {"radius_margin", tol.radius_margin},
                    {"node_merge_factor", tol.node_merge_factor}};
    json meta{{"tool_version", kToolVersion}, {"tolerances", std::move(tolerances)}};
    if (seed)
        meta["seed"] = *seed;
    else
        meta["seed"] = nullptr;
    return meta;
}

json make_document(const std::string& kind, json payload, json meta) {
    return json{{"kind", kind}, {"payload", std::move(payload)}, {"meta", std::move(meta)}};
}

json parse_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw MalformedInputError("input is not valid JSON");
    return j;
}

json document_payload(const json& document, const std::string& kind) {
    if (!document.is_object()) throw MalformedInputError("document must be a JSON object");
    if (!document.contains("kind") || !document["kind"].is_string())
        throw MalformedInputError("document has no kind field");
    const std::string got = document["kind"].get<std::string>();
    if (got != kind)
        throw MalformedInputError("expected a " + kind + " document, got kind \"" + got + "\"");
    if (!document.contains("payload") || !document["payload"].is_object())
        throw MalformedInputError("document has no payload object");
    return document["payload"];
}

Mat operator_from_document(const json& document) {
    const json payload = document_payload(document, "operator");
    if (!payload.contains("matrix"))
        throw MalformedInputError("operator payload needs a matrix field");
    Mat m = matrix_from(payload["matrix"]);
    require_finite(m, "operator document");
    return m;
}

Vec vector_from_document(const json& document) {
    const json payload = document_payload(document, "vector");
    if (!payload.contains("entries"))
        throw MalformedInputError("vector payload needs an entries field");
    Vec v = vector_from(payload["entries"]);
    require_finite(v, "vector document");
    return v;
}

FrameSystem system_from_document(const json& document) {
    FrameSystem f = system_from(document_payload(document, "system"));
    require_finite(f.mat, "system document");
    return f;
}

}  // namespace framecast::doc
