#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"

using namespace qhom;

namespace {

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string data_file(const char *name) { return slurp(std::string(QHOM_SOURCE_DIR) + "/data/" + name); }
std::string test_file(const char *name) { return slurp(std::string(QHOM_SOURCE_DIR) + "/tests/data/" + name); }

const char *small_doc = R"(field q
quiver D
  vertices 1
  arrow x 1 1
  relation x*x
end
module S = simple D 1
check invariants D
  gldim
  hh 2
end
)";

}  // namespace

TEST_CASE("the shipped example matches the embedded copy", "[document]") {
    CHECK(data_file("example-4-5.qha") == example_4_5_document);
}

TEST_CASE("parsing the example document", "[document]") {
    auto doc = parse_document<Rational>(example_4_5_document);
    CHECK(doc.field.characteristic == 0);
    REQUIRE(doc.algebras.count("Lambda"));
    REQUIRE(doc.algebras.count("Gamma"));
    CHECK(doc.algebras.at("Lambda")->dim() == 9);
    CHECK(doc.algebras.at("Gamma")->dim() == 5);
    REQUIRE(doc.extensions.count("ext"));
    CHECK(doc.extensions.at("ext").retraction);
    REQUIRE(doc.checks.size() == 1);
    CHECK(doc.checks[0].target == "ext");
    CHECK(doc.checks[0].bounds.at("cap") == 12);
}

TEST_CASE("a document renders and parses back to the same text", "[document]") {
    for (const std::string text : {std::string(example_4_5_document), data_file("invariants.qha"), test_file("tor-nonvanishing.qha")}) {
        auto doc = parse_document<Rational>(text);
        auto once = render_document(doc);
        auto again = render_document(parse_document<Rational>(once));
        CHECK(once == again);
    }
}

TEST_CASE("the field block selects the backend", "[document]") {
    CHECK(detect_field(small_doc).characteristic == 0);
    CHECK(detect_field("# comment\nfield p 5\n").characteristic == 5);
    CHECK_THROWS_AS(detect_field(""), ParseError);
    CHECK_THROWS_AS(detect_field("field p 6\n"), ParseError);
    ModulusScope scope(3);
    auto doc = parse_document<PrimeField>(small_doc, Field{3});
    CHECK(doc.algebras.at("D")->dim() == 2);
}

TEST_CASE("parse errors carry line and column", "[document]") {
    auto expect_error = [](const std::string &text, std::size_t line) {
        try {
            parse_document<Rational>(text);
            FAIL("accepted: " << text);
        } catch (const ParseError &e) {
            CHECK(e.line() == line);
            CHECK(e.column() >= 1);
        }
    };
    expect_error("field q\nquiver A\n  vertices 1\n  arrow x 1 7\nend\n", 4);
    expect_error("field q\nmodule M = simple Nowhere 1\n", 2);
    expect_error("field q\nfrobnicate\n", 2);
    expect_error("field q\nquiver A\n  vertices 1\n", 3);  // missing end
    expect_error("field q\nquiver A\n  vertices 1\nend\nalgebra B\n  basis e\n  product e e = 6/-4 e\nend\n", 7);
    expect_error("field q\ncheck extension nothing\nend\n", 2);
}

TEST_CASE("rational literals are normalized", "[document]") {
    const std::string text = "field q\nalgebra K\n  basis e\n  product e e = 2/2 e\n  unit = 4/4 e\n  idempotent e\nend\n";
    auto doc = parse_document<Rational>(text);
    CHECK(doc.algebras.at("K")->dim() == 1);
    CHECK(render_document(doc).find("2/2") == std::string::npos);
}

TEST_CASE("reports are stable and machine readable", "[report]") {
    Report a("demo"), b("demo");
    for (auto *r : {&a, &b}) {
        r->set_input_digest(fnv1a("abc"));
        auto &s = r->section("extension ext");
        s.set("pd", std::string("holds (1)"));
        s.set("multi", std::string("x\ny"));
        s.set("flag", true);
    }
    CHECK(a.human() == b.human());
    CHECK(a.machine() == b.machine());
    CHECK(a.digest_text() == "fnv1a64:e71fa2190541574b");
    const auto m = a.machine();
    CHECK(m.find("report.version=1\n") == 0);
    CHECK(m.find("extension.ext.pd=holds (1)\n") != std::string::npos);
    CHECK(m.find("extension.ext.multi=x\\ny\n") != std::string::npos);
    CHECK(m.find("extension.ext.flag=yes\n") != std::string::npos);
    CHECK(a.human().find("[extension ext]") != std::string::npos);
}

TEST_CASE("field flags", "[app]") {
    CHECK(parse_field_flag("q")->characteristic == 0);
    CHECK(parse_field_flag("p:2")->characteristic == 2);
    CHECK(parse_field_flag("p:101")->characteristic == 101);
    CHECK_FALSE(parse_field_flag("p:4"));
    CHECK_FALSE(parse_field_flag("p:"));
    CHECK_FALSE(parse_field_flag("r"));
    CHECK_FALSE(parse_field_flag("p:99999999999"));
}

TEST_CASE("check-extension exit codes", "[app]") {
    CHECK(run_check_extension(example_4_5_document).exit_code == exit_holds);
    RunOptions capped;
    capped.cap = 0;
    CHECK(run_check_extension(example_4_5_document, capped).exit_code == exit_undetermined);
    CHECK(run_check_extension(test_file("tor-nonvanishing.qha")).exit_code == exit_fails);
    CHECK(run_check_extension(test_file("no-retraction.qha")).exit_code == exit_undetermined);
    CHECK(run_check_extension(test_file("zero-bimodule.qha")).exit_code == exit_holds);
    auto bad = run_check_extension(test_file("corrupted-embedding.qha"));
    CHECK(bad.exit_code == exit_input_error);
    CHECK(bad.diagnostics.find("line ") != std::string::npos);
    CHECK(run_check_extension("").exit_code == exit_input_error);
    CHECK(run_check_extension(small_doc).exit_code == exit_input_error);  // nothing to check
}

TEST_CASE("the example report carries the expected values", "[app]") {
    auto r = run_check_extension(example_4_5_document);
    const auto *s = r.report.find("extension ext");
    REQUIRE(s);
    CHECK(*s->get("pd.ranks") == "(12,8)");
    CHECK(s->get("pd")->rfind("holds", 0) == 0);
    CHECK(*s->get("bar.dims") == "(9,13,4)");
    CHECK(*s->get("exit") == "0");
    CHECK(r.report.human() == run_check_extension(example_4_5_document).report.human());

    RunOptions f2;
    f2.field = Field{2};
    auto r2 = run_check_extension(example_4_5_document, f2);
    CHECK(r2.exit_code == exit_holds);
    CHECK(*r2.report.find("extension ext")->get("pd.ranks") == "(12,8)");
}

TEST_CASE("invariants command", "[app]") {
    auto r = run_invariants(data_file("invariants.qha"));
    CHECK(r.exit_code == exit_holds);
    REQUIRE(r.report.find("invariants Gamma"));
    auto def = run_invariants(small_doc);
    CHECK(def.exit_code == exit_holds);
}

TEST_CASE("demo and random suite", "[app]") {
    auto d = run_demo("example-4-5");
    CHECK(d.exit_code == exit_holds);
    CHECK(run_demo("nothing").exit_code == exit_input_error);
    RunOptions opt;
    opt.count = 3;
    opt.max_dim = 3;
    auto a = run_random_suite(opt);
    auto b = run_random_suite(opt);
    CHECK(a.exit_code == exit_holds);
    CHECK(a.report.machine() == b.report.machine());
    opt.count = 0;
    CHECK(run_random_suite(opt).exit_code == exit_holds);
}
