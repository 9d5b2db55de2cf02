#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <framecast.h>

#include <json.hpp>

#include <cstring>
#include <memory>
#include <string>

using json = nlohmann::json;

namespace {

struct ResultFree {
    void operator()(fc_result* r) const { fc_result_free(r); }
};
using Result = std::unique_ptr<fc_result, ResultFree>;

const char* kOnb2 = R"({"kind":"system","payload":{"dim":2,"vectors":[[[1,0],[0,0]],[[0,0],[1,0]]]}})";
const char* kLine2 = R"({"kind":"system","payload":{"dim":2,"vectors":[[[1,0],[0,0]],[[1,0],[0,0]]]}})";
const char* kEmpty2 = R"({"kind":"system","payload":{"dim":2,"vectors":[]}})";
const char* kDiagHalfThird =
    R"({"kind":"operator","payload":{"matrix":[[[0.5,0],[0,0]],[[0,0],[0.3333333333333333,0]]]}})";
const char* kRotation =
    R"({"kind":"operator","payload":{"matrix":[[[0,0],[-1,0]],[[1,0],[0,0]]]}})";
const char* kDiag23 = R"({"kind":"operator","payload":{"matrix":[[[2,0],[0,0]],[[0,0],[3,0]]]}})";
const char* kShift = R"({"kind":"operator","payload":{"matrix":[[[0,0],[1,0]],[[0,0],[0,0]]]}})";
const char* kOnes2 = R"({"kind":"vector","payload":{"entries":[[1,0],[1,0]]}})";
const char* kE1of2 = R"({"kind":"vector","payload":{"entries":[[1,0],[0,0]]}})";
const char* kE1of3 = R"({"kind":"vector","payload":{"entries":[[1,0],[0,0],[0,0]]}})";

json first_document(const fc_result* r) {
    REQUIRE(fc_result_document_count(r) >= 1);
    const char* text = fc_result_document(r, 0);
    REQUIRE(text != nullptr);
    return json::parse(text);
}

}  // namespace

TEST_CASE("version and status names are stable strings") {
    CHECK(std::strcmp(fc_version(), "0.1.0") == 0);
    CHECK(std::strcmp(fc_status_name(FC_OK), "ok") == 0);
    CHECK(std::strcmp(fc_status_name(FC_MALFORMED), "malformed") == 0);
    CHECK(std::strcmp(fc_status_name(FC_FRAME_SEQUENCE_ONLY), "frame_sequence_only") == 0);
    CHECK(std::strcmp(fc_status_name(FC_DOMAIN), "domain") == 0);
    CHECK(std::strcmp(fc_status_name(-5), "unknown") == 0);
    CHECK(std::strcmp(fc_status_name(99), "unknown") == 0);
}

TEST_CASE("analyze returns a parseable report document") {
    Result r(fc_analyze(kOnb2, "{}"));
    REQUIRE(r);
    CHECK(fc_result_status(r.get()) == FC_OK);
    CHECK(std::strcmp(fc_result_message(r.get()), "") == 0);
    const json d = first_document(r.get());
    CHECK(d["kind"] == "report");
    CHECK(d["payload"]["report"]["tight"] == true);
    CHECK(d["payload"]["report"]["lower_bound"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("analyze reports span-only systems with the document intact") {
    Result r(fc_analyze(kLine2, "{}"));
    REQUIRE(r);
    CHECK(fc_result_status(r.get()) == FC_FRAME_SEQUENCE_ONLY);
    CHECK(fc_result_document_count(r.get()) == 1);
    CHECK(std::strlen(fc_result_message(r.get())) > 0);
    const json d = first_document(r.get());
    CHECK(d["payload"]["report"]["spans_space"] == false);
}

TEST_CASE("error statuses carry a message and no documents") {
    Result malformed(fc_analyze("{", "{}"));
    CHECK(fc_result_status(malformed.get()) == FC_MALFORMED);
    CHECK(fc_result_document_count(malformed.get()) == 0);
    CHECK(std::strlen(fc_result_message(malformed.get())) > 0);

    Result empty(fc_analyze(kEmpty2, "{}"));
    CHECK(fc_result_status(empty.get()) == FC_DEGENERATE_SYSTEM);

    Result dim(fc_iterate(kDiagHalfThird, kE1of3, R"({"steps": 2})"));
    CHECK(fc_result_status(dim.get()) == FC_DIMENSION_MISMATCH);

    Result radius(fc_iterate(kRotation, kE1of2, R"({"infinite": true})"));
    CHECK(fc_result_status(radius.get()) == FC_SPECTRAL_RADIUS);

    Result cyclic(fc_diagonalize(kDiag23, kE1of2, "{}"));
    CHECK(fc_result_status(cyclic.get()) == FC_NOT_CYCLIC);

    Result hermitian(fc_diagonalize(kShift, kOnes2, "{}"));
    CHECK(fc_result_status(hermitian.get()) == FC_DOMAIN);

    Result admissible(fc_perturb(kLine2, kOnb2, "{}"));
    CHECK(fc_result_status(admissible.get()) == FC_ADMISSIBILITY);
}

TEST_CASE("iterate emits a system document for finite steps") {
    Result r(fc_iterate(kDiagHalfThird, kOnes2, R"({"steps": 3})"));
    REQUIRE(r);
    CHECK(fc_result_status(r.get()) == FC_OK);
    const json d = first_document(r.get());
    CHECK(d["kind"] == "system");
    CHECK(d["payload"]["vectors"].size() == 3);
}

TEST_CASE("NULL arguments are reported, not crashed on") {
    Result r(fc_analyze(nullptr, "{}"));
    REQUIRE(r);
    CHECK(fc_result_status(r.get()) == FC_MALFORMED);
    Result r2(fc_iterate(kDiagHalfThird, nullptr, R"({"steps": 2})"));
    CHECK(fc_result_status(r2.get()) == FC_MALFORMED);
    Result r3(fc_generate(nullptr, "{}"));
    CHECK(fc_result_status(r3.get()) == FC_MALFORMED);
}

TEST_CASE("NULL options select defaults") {
    Result with_null(fc_analyze(kOnb2, nullptr));
    Result with_empty(fc_analyze(kOnb2, "{}"));
    CHECK(fc_result_status(with_null.get()) == FC_OK);
    CHECK(std::strcmp(fc_result_document(with_null.get(), 0),
                      fc_result_document(with_empty.get(), 0)) == 0);
}

TEST_CASE("accessors tolerate NULL handles and bad indices") {
    CHECK(fc_result_status(nullptr) == FC_INTERNAL);
    CHECK(fc_result_message(nullptr) != nullptr);
    CHECK(fc_result_document_count(nullptr) == 0);
    CHECK(fc_result_document(nullptr, 0) == nullptr);
    fc_result_free(nullptr);

    Result r(fc_analyze(kOnb2, "{}"));
    CHECK(fc_result_document(r.get(), -1) == nullptr);
    CHECK(fc_result_document(r.get(), 1) == nullptr);
}

TEST_CASE("repeat calls produce byte-identical documents") {
    Result a(fc_represent_check(kDiagHalfThird, kOnes2, "{}"));
    Result b(fc_represent_check(kDiagHalfThird, kOnes2, "{}"));
    REQUIRE(fc_result_status(a.get()) == FC_OK);
    CHECK(std::strcmp(fc_result_document(a.get(), 0), fc_result_document(b.get(), 0)) == 0);

    Result g1(fc_generate("contraction", R"({"dim": 3, "radius": 0.4, "seed": 9})"));
    Result g2(fc_generate("contraction", R"({"dim": 3, "radius": 0.4, "seed": 9})"));
    REQUIRE(fc_result_status(g1.get()) == FC_OK);
    REQUIRE(fc_result_document_count(g1.get()) == 2);
    CHECK(std::strcmp(fc_result_document(g1.get(), 0), fc_result_document(g2.get(), 0)) == 0);
    CHECK(std::strcmp(fc_result_document(g1.get(), 1), fc_result_document(g2.get(), 1)) == 0);
}

TEST_CASE("recover and conjecture round out the surface") {
    const char* orbit =
        R"({"kind":"system","payload":{"dim":2,"vectors":[[[1,0],[0,0]],[[0,0],[1,0]],[[1,0],[0,0]]]}})";
    Result r(fc_recover(orbit, "{}"));
    CHECK(fc_result_status(r.get()) == FC_OK);
    CHECK(first_document(r.get())["payload"]["report"]["consistent"] == true);

    Result c(fc_conjecture(kDiagHalfThird, R"({"trials": 4, "seed": 2})"));
    CHECK(fc_result_status(c.get()) == FC_OK);
    CHECK(first_document(c.get())["payload"]["report"]["covers_space"] == true);
}
