#include <doctest.h>

#include <cmath>
#include <fstream>
#include <limits>

#include "xicor/errors.hpp"
#include "xicor/io.hpp"

using namespace xicor;

TEST_CASE("parse comma and tab files") {
    const Sample a = io::parse_sample("x,y\n1,2\n3,4\n");
    CHECK(a.x == std::vector<double>{1, 3});
    CHECK(a.y == std::vector<double>{2, 4});
    const Sample b = io::parse_sample("1\t2\n3\t4\n");
    CHECK(b.x == a.x);
    CHECK(b.y == a.y);
    const Sample c = io::parse_sample("\n1.5,-2e3\n\n  3 , 4\n");
    CHECK(c.x == std::vector<double>{1.5, 3});
    CHECK(c.y == std::vector<double>{-2000, 4});
}

TEST_CASE("parse errors carry positions") {
    try {
        (void)io::parse_sample("1,foo\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 2);
    }
    try {
        (void)io::parse_sample("x,y\n1,2\n3\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(io::parse_sample("1,nan\n2,3\n"), Error);
    CHECK_THROWS_AS(io::parse_sample("1,2\n"), Error);
    CHECK_THROWS_AS(io::load_sample("/nonexistent/file.csv"), Error);
}

TEST_CASE("test result JSON round-trip") {
    TestResult r;
    r.method = "xi-pm";
    r.statistic = 0.1 + 0.2;
    r.p_value = 1.0 / 3.0;
    r.reject = false;
    r.n = 1000;
    r.M = 20;
    r.B = 999;
    r.alpha = 0.05;
    r.seed = std::numeric_limits<std::uint64_t>::max();
    CHECK(io::test_result_from_json(io::to_json(r)) == r);
    TestResult q = r;
    q.M.reset();
    q.B.reset();
    q.seed.reset();
    CHECK(io::test_result_from_json(io::to_json(q)) == q);
}

TEST_CASE("report JSON and CSV round-trip") {
    StudyReport rep;
    rep.study = "power";
    rep.master_seed = 123456789012345ULL;
    StudyRow a;
    a.method = "xi-pm";
    a.n = 1000;
    a.M = 20;
    a.rho = 5.0;
    a.replicates = 500;
    a.seed = rep.master_seed;
    a.metrics = {{"rejection_frequency", 0.851}, {"rejections", 425.5}};
    StudyRow b = a;
    b.method = "pearson";
    b.M.reset();
    b.rho = 1.0 / 3.0;
    rep.rows = {a, b};
    CHECK(io::report_from_json(io::to_json(rep)) == rep);
    CHECK(io::report_from_csv(io::to_csv(rep)) == rep);
    const std::string csv = io::to_csv(rep);
    CHECK(csv.rfind("study,schema_version,master_seed,method,n,M,rho,replicates,seed,", 0) == 0);
    CHECK_THROWS_AS(io::report_from_json(R"({"schema_version": 99})"), Error);
}

TEST_CASE("real formatting keeps every bit") {
    for (double v : {0.1, 1.0 / 3.0, 3.0667e-5, -2.0 / 7.0, 1e300}) {
        CHECK(std::stod(io::format_real(v)) == v);
    }
}

TEST_CASE("load from disk") {
    const auto path = std::filesystem::temp_directory_path() / "xicor_io_test.csv";
    {
        std::ofstream f(path);
        f << "a,b\n1,5\n2,6\n3,4\n";
    }
    const Sample s = io::load_sample(path);
    CHECK(s.size() == 3);
    std::filesystem::remove(path);
}
