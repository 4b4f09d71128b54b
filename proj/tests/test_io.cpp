#include <doctest.h>

#include <sstream>

#include "maxenergy/error.hpp"
#include "maxenergy/io.hpp"

using namespace maxenergy;
using io::json;

TEST_CASE("point CSV round trip")
{
    PointSet pts(3, 2);
    pts << 0.1, -2.5, 1.0 / 3.0, 7.0, -0.0, 1e-300;
    Eigen::VectorXd w(3);
    w << 0.25, 0.5, 0.25;
    std::stringstream ss;
    io::write_points_csv(ss, pts, w);
    CHECK(ss.str().rfind("x1,x2,weight\n", 0) == 0);
    const io::PointTable back = io::read_points_csv(ss);
    CHECK(back.points == pts);
    REQUIRE(back.weights.has_value());
    CHECK(*back.weights == w);

    std::stringstream plain;
    io::write_points_csv(plain, pts);
    const io::PointTable nw = io::read_points_csv(plain);
    CHECK_FALSE(nw.weights.has_value());
    CHECK(nw.points == pts);
}

TEST_CASE("point CSV tolerates spaces, CRLF and blank lines")
{
    std::stringstream ss("x1, x2\r\n1.5, 2\r\n\r\n-3,4e-1\n");
    const io::PointTable t = io::read_points_csv(ss);
    REQUIRE(t.points.rows() == 2);
    CHECK(t.points(0, 0) == 1.5);
    CHECK(t.points(1, 1) == 0.4);
}

TEST_CASE("point CSV errors")
{
    auto parse = [](const std::string& text) {
        std::stringstream ss(text);
        return io::read_points_csv(ss);
    };
    CHECK_THROWS_AS(parse(""), FormatError);
    CHECK_THROWS_AS(parse("x1,x2\n"), FormatError);
    CHECK_THROWS_AS(parse("a,b\n1,2\n"), FormatError);
    CHECK_THROWS_AS(parse("x2,x1\n1,2\n"), FormatError);
    CHECK_THROWS_AS(parse("weight,x1\n1,2\n"), FormatError);
    CHECK_THROWS_AS(parse("x1,x2\n1,2,3\n"), FormatError);
    CHECK_THROWS_AS(parse("x1,x2\n1,two\n"), FormatError);
    CHECK_THROWS_AS(parse("x1,x2\n1,2,5\n"), FormatError);
    CHECK_THROWS_AS(parse("x1\n1,5\n"), FormatError);
    CHECK_THROWS_AS(parse("x1\nnan\n"), FormatError);
    CHECK_THROWS_AS(io::read_points_csv_file("/nonexistent/points.csv"), FormatError);
}

TEST_CASE("body JSON round trip")
{
    const std::vector<BodySpec> bodies{BodySpec::interval(), BodySpec::lq_ball(5, 1.5), BodySpec::lq_ball(3, kInf),
                                       BodySpec::ellipsoid({2.0, 0.5})};
    for (const auto& body : bodies) {
        const json j = io::to_json(body);
        const BodySpec back = io::body_from_json(j);
        CHECK(io::to_json(back) == j);
        CHECK(back.dimension() == body.dimension());
    }
    CHECK(io::to_json(BodySpec::lq_ball(3, kInf))["q"] == "inf");

    Eigen::MatrixXd t(2, 2);
    t << 1.0, 0.5, 0.0, 2.0;
    const json mj = io::to_json(BodySpec::ellipsoid(t));
    CHECK(mj.contains("matrix"));
    const BodySpec back = io::body_from_json(mj);
    CHECK(back.as_ellipsoid()->map == t);
}

TEST_CASE("body JSON errors")
{
    CHECK_THROWS_AS(io::body_from_json(json{{"kind", "cube"}}), FormatError);
    CHECK_THROWS_AS(io::body_from_json(json{{"kind", "lq_ball"}, {"n", 3}}), FormatError);
    CHECK_THROWS_AS(io::body_from_json(json{{"kind", "lq_ball"}, {"n", 3}, {"q", "big"}}), FormatError);
    CHECK_THROWS_AS(io::body_from_json(json{{"kind", "ellipsoid"}}), FormatError);
    CHECK_THROWS_AS(io::body_from_json(json{{"kind", "ellipsoid"}, {"n", 3}, {"semi_axes", {1.0, 2.0}}}),
                    FormatError);
    CHECK_THROWS_AS(io::body_from_json(json{{"kind", "ellipsoid"}, {"matrix", {{1.0, 2.0}}}}), FormatError);
    CHECK_THROWS_AS(io::body_from_json(json{{"kind", "interval"}, {"n", 2}}), FormatError);
    CHECK_THROWS_AS(io::body_from_json(json{{"kind", "lq_ball"}, {"n", 3}, {"q", 0.5}}), DomainError);
}

TEST_CASE("measure JSON round trip")
{
    SignedAtomicMeasure mu;
    mu.points.resize(3, 2);
    mu.points << 0, 0, 1, 0, 0, 1;
    mu.weights = Eigen::Vector3d(0.5, 0.75, -0.25);
    const json j = io::to_json(mu);
    CHECK(j["dimension"] == 2);
    const SignedAtomicMeasure back = io::measure_from_json(j);
    CHECK(back.points == mu.points);
    CHECK(back.weights == mu.weights);

    json bad = j;
    bad["weights"] = {0.5, 0.5, 0.5};
    CHECK_THROWS_AS(io::measure_from_json(bad), DomainError);
    CHECK_THROWS_AS(io::measure_from_json(json{{"points", json::array()}, {"weights", json::array()}}),
                    FormatError);
}

TEST_CASE("report records carry method tags and uncertainty")
{
    EnergyReport rep;
    rep.value = 1.5;
    rep.trace = {{41, 1.4}, {101, 1.5}};
    const json j = io::to_json(rep);
    CHECK(j["method"] == "linear-system");
    CHECK(j["stderr"].is_null());
    CHECK(j["trace"].size() == 2);
    CHECK(j["trace"][1]["resolution"] == 101);

    const json e = io::to_json(McEstimate{2.0, 0.1, 1000});
    CHECK(e["method"] == "monte-carlo");
    CHECK(e["stderr"] == 0.1);
    CHECK(e["samples"] == 1000);

    SweepReport sw;
    sw.family = "q";
    sw.parameter = kInf;
    sw.expected_slope = std::nan("");
    sw.rows.push_back({4, 1.0, "inclusion", 0.0, 0.9, 1.2, 0.01, "monte-carlo"});
    const json sj = io::to_json(sw);
    CHECK(sj["expected_slope"].is_null());
    CHECK(sj["q"] == "inf");
    CHECK(sj["rows"][0]["lower_method"] == "inclusion");
    CHECK(sj["rows"][0]["upper_stderr"] == 0.01);
}
