#include <doctest.h>

#include <cstdio>

#include <json.hpp>

#include "hankelcos/report.hpp"

using namespace hankelcos;
using report::Record;
using report::VerificationReport;

namespace {

VerificationReport sample_report() {
    VerificationReport rep;
    Record a;
    a.k = {1.0, -0.1};
    a.w = {0.5, 0.0};
    a.method = "closed";
    a.value = {1.1322334641388021, 0.15030804502128682};
    a.err_est = 0.0;
    a.gap = 3.25e-13;
    a.pass = true;
    Record b = a;
    b.method = "quad";
    b.err_est = 5.6e-12;
    Record c = a;
    c.method = "green";
    c.gap = 7.5e-7;
    c.pass = false;
    rep.records = {a, b, c};
    rep.wall_ms = 123.0; // must never appear in the serialized output
    return rep;
}

} // namespace

TEST_CASE("empty report serializes to a header-only CSV and zero-count summary") {
    VerificationReport rep;
    CHECK(report::to_csv(rep) ==
          "k_re,k_im,w_re,w_im,method,value_re,value_im,err_est,gap,pass\n");
    const auto s = rep.summary();
    CHECK(s.count == 0);
    CHECK(s.pass_count == 0);
    CHECK(s.fail_count == 0);
    CHECK(s.max_gap == 0.0);
    const auto j = nlohmann::json::parse(report::to_json(rep));
    CHECK(j["records"].empty());
    CHECK(j["summary"]["count"] == 0);
}

TEST_CASE("CSV round-trips byte-identically") {
    const VerificationReport rep = sample_report();
    const std::string csv = report::to_csv(rep);
    const VerificationReport parsed = report::parse_csv(csv);
    CHECK(parsed.records.size() == rep.records.size());
    CHECK(report::to_csv(parsed) == csv);
    // parsed values are bit-identical (17 significant digits round-trip)
    for (std::size_t i = 0; i < rep.records.size(); ++i) {
        CHECK(parsed.records[i].value.real() == rep.records[i].value.real());
        CHECK(parsed.records[i].gap == rep.records[i].gap);
        CHECK(parsed.records[i].pass == rep.records[i].pass);
        CHECK(parsed.records[i].method == rep.records[i].method);
    }
}

TEST_CASE("JSON summary aggregates the record gaps") {
    const VerificationReport rep = sample_report();
    const auto j = nlohmann::json::parse(report::to_json(rep));
    double max_gap = 0.0;
    for (const auto& r : j["records"])
        max_gap = std::max(max_gap, r["gap"].get<double>());
    CHECK(j["summary"]["max_gap"].get<double>() == max_gap);
    CHECK(j["summary"]["count"] == 3);
    CHECK(j["summary"]["pass_count"] == 2);
    CHECK(j["summary"]["fail_count"] == 1);
    // determinism: wall time never serialized
    CHECK(report::to_json(rep).find("wall") == std::string::npos);
    CHECK(report::to_csv(rep).find("123") == std::string::npos);
}

TEST_CASE("emit_report surfaces filesystem failures as IoError") {
    const VerificationReport rep = sample_report();
    CHECK_THROWS_AS(
        report::emit_report(rep, report::Format::csv, "/nonexistent-dir-xyz/report.csv"),
        IoError);
}

TEST_CASE("emit_report writes the same bytes as the serializer") {
    const VerificationReport rep = sample_report();
    const std::string path = "test_report_tmp.csv";
    report::emit_report(rep, report::Format::csv, path);
    std::FILE* f = std::fopen(path.c_str(), "rb");
    REQUIRE(f != nullptr);
    std::string contents;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, f)) > 0)
        contents.append(buf, n);
    std::fclose(f);
    std::remove(path.c_str());
    CHECK(contents == report::to_csv(rep));
}

TEST_CASE("malformed CSV is rejected") {
    CHECK_THROWS_AS(report::parse_csv(""), DomainError);
    CHECK_THROWS_AS(report::parse_csv("bogus,header\n"), DomainError);
    CHECK_THROWS_AS(
        report::parse_csv("k_re,k_im,w_re,w_im,method,value_re,value_im,err_est,gap,pass\n"
                          "1,2,3\n"),
        DomainError);
}
