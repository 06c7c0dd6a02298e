#include "doctest.h"
#include "test_support.hpp"

using namespace gsflow;

namespace {

std::size_t count_of(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
    return n;
}

std::string section(const std::string& text, const std::string& title) {
    auto start = text.find("== " + title + " ==");
    REQUIRE(start != std::string::npos);
    auto end = text.find("\n== ", start + 1);
    return text.substr(start, end == std::string::npos ? std::string::npos : end - start);
}

}  // namespace

TEST_CASE("cone report lists three cancellations") {
    Report r = run_pipeline(testsupport::fixture("cone_example"), {});
    CHECK(r.exit_code == kExitOk);
    CHECK(count_of(section(r.text, "cancellation schedule"), "\nround ") == 3);
    CHECK(r.text.find("bijective: yes") != std::string::npos);
    CHECK(r.text.find("E-infinity matches homology: yes") != std::string::npos);
}

TEST_CASE("double crossing report") {
    Report r = run_pipeline(testsupport::fixture("double_crossing_example"), {});
    CHECK(r.exit_code == kExitOk);
    auto sched = section(r.text, "cancellation schedule");
    CHECK(count_of(sched, "\nround ") == 4);
    CHECK(sched.find("final flow: 6 generators") != std::string::npos);
}

TEST_CASE("truncated report") {
    PipelineOptions opt;
    opt.diagonal = 2;
    Report r = run_pipeline(testsupport::fixture("whitney_example"), opt);
    CHECK(r.exit_code == kExitOk);
    CHECK(section(r.text, "sweep").find("round 3") == std::string::npos);
    CHECK(section(r.text, "cancellation schedule").find("round 3") == std::string::npos);
    CHECK(count_of(section(r.text, "cancellation schedule"), "\nround ") == 1);
}

TEST_CASE("reports are deterministic") {
    for (const auto& name : testsupport::all_flow_fixtures()) {
        CAPTURE(name);
        PipelineOptions opt;
        opt.trace = true;
        CHECK(run_pipeline(testsupport::fixture(name), opt).text == run_pipeline(testsupport::fixture(name), opt).text);
    }
}

TEST_CASE("invalid flows give validation exit codes") {
    FlowSpec f = testsupport::fixture("pinched_torus");
    f.orbits[0].sheets.push_back(f.orbits[0].sheets[0]);
    Report r = run_pipeline(f, {});
    CHECK(r.exit_code == kExitValidation);
    CHECK(r.text.find("arity") != std::string::npos);
    CHECK(exit_code_for(ErrorKind::NonUnimodular) == kExitStructural);
    CHECK(exit_code_for(ErrorKind::Io) == kExitIo);
    CHECK(exit_code_for(ErrorKind::Range) == kExitValidation);
}

TEST_CASE("pivot rendering marks primaries and changes of basis") {
    IntMatrix m = IntMatrix::from_rows({{0, 1, 1}, {0, 0, 0}, {0, 0, 0}});
    std::vector<PivotMark> marks = {{1, 2, 1, PivotKind::Primary, 1}, {1, 3, 2, PivotKind::ChangeOfBasis, 1}};
    std::string text = render_pivot_matrix(m, marks);
    CHECK(text.find("[1]") != std::string::npos);
    CHECK(text.find("(1)") != std::string::npos);
}

TEST_CASE("canonical order changes the layout but not the homology") {
    PipelineOptions opt;
    opt.canonical_order = true;
    Report r = run_pipeline(testsupport::fixture("pinched_torus"), opt);
    CHECK(r.exit_code == kExitOk);
    CHECK(r.text.find("homology: H0=Z H1=Z H2=Z") != std::string::npos);
}
