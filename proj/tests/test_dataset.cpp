#include <catch2/catch_amalgamated.hpp>

#include "plsstop/dataset.hpp"
#include "plsstop/errors.hpp"
#include "plsstop/rng.hpp"

using namespace plsstop;
using Catch::Matchers::WithinAbs;

namespace {

Dataset tiny_gaussian() {
    Dataset d;
    d.X.resize(3, 2);
    d.X << 1.0, 10.0, 2.0, 30.0, 3.0, 20.0;
    d.y.resize(3);
    d.y << 4.0, 6.0, 8.0;
    d.family = Family::Gaussian;
    return d;
}

}  // namespace

TEST_CASE("family names round-trip") {
    for (Family f : {Family::Gaussian, Family::Binomial, Family::Poisson})
        CHECK(family_from_name(family_name(f)) == f);
    CHECK_THROWS_AS(family_from_name("cauchy"), InvalidArgs);
}

TEST_CASE("center_scale maps [1,2,3] to [-1,0,1]") {
    // sample sd of {1,2,3} is 1, so the standardized column is exactly
    // the centered one
    const Dataset d = tiny_gaussian();
    const auto [s, params] = center_scale(d);

    CHECK_THAT(s.X(0, 0), WithinAbs(-1.0, 1e-15));
    CHECK_THAT(s.X(1, 0), WithinAbs(0.0, 1e-15));
    CHECK_THAT(s.X(2, 0), WithinAbs(1.0, 1e-15));

    CHECK_THAT(params.x_mean[0], WithinAbs(2.0, 1e-15));
    CHECK_THAT(params.x_sd[0], WithinAbs(1.0, 1e-15));
    CHECK_THAT(params.x_mean[1], WithinAbs(20.0, 1e-15));
    CHECK_THAT(params.x_sd[1], WithinAbs(10.0, 1e-15));

    // gaussian y is standardized too
    CHECK_THAT(params.y_mean, WithinAbs(6.0, 1e-15));
    CHECK_THAT(params.y_sd, WithinAbs(2.0, 1e-15));
    CHECK_THAT(s.y[0], WithinAbs(-1.0, 1e-15));
    CHECK_THAT(s.y[2], WithinAbs(1.0, 1e-15));
}

TEST_CASE("center_scale leaves link-family responses untouched") {
    Dataset d;
    d.X.resize(4, 1);
    d.X << 1, 2, 3, 4;
    d.y.resize(4);
    d.y << 0, 1, 1, 0;
    d.family = Family::Binomial;
    const auto [s, params] = center_scale(d);
    CHECK(s.y == d.y);
    CHECK(params.y_mean == 0.0);
    CHECK(params.y_sd == 1.0);
}

TEST_CASE("unscale round-trips standardization") {
    auto eng = rng::engine(5);
    std::normal_distribution<double> g;
    Dataset d;
    d.X.resize(20, 4);
    d.y.resize(20);
    for (int i = 0; i < 20; ++i) {
        for (int j = 0; j < 4; ++j) d.X(i, j) = 3.0 * g(eng) + j;
        d.y[i] = 2.0 * g(eng) - 1.0;
    }
    const auto [s, params] = center_scale(d);
    CHECK((unscale_x(s.X, params) - d.X).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((unscale_y(s.y, params) - d.y).cwiseAbs().maxCoeff() < 1e-12);
    // standardized columns really have mean 0 / sample sd 1
    for (int j = 0; j < 4; ++j) {
        CHECK_THAT(s.X.col(j).mean(), WithinAbs(0.0, 1e-13));
        CHECK_THAT(s.X.col(j).squaredNorm() / 19.0, WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("center_scale rejects constant columns with the column index") {
    Dataset d = tiny_gaussian();
    d.X.col(1).setConstant(7.0);
    try {
        center_scale(d);
        FAIL("expected ZeroVarianceColumn");
    } catch (const ZeroVarianceColumn& e) {
        CHECK(e.column == 1);
    }

    Dataset dy = tiny_gaussian();
    dy.y.setConstant(1.0);
    try {
        center_scale(dy);
        FAIL("expected ZeroVarianceColumn");
    } catch (const ZeroVarianceColumn& e) {
        CHECK(e.column == static_cast<int>(dy.p()));  // y reported past X
    }
}

TEST_CASE("validate enforces family support") {
    Dataset d = tiny_gaussian();
    CHECK_NOTHROW(d.validate());

    d.family = Family::Binomial;
    CHECK_THROWS_AS(d.validate(), InvalidArgs);  // y = 4,6,8 not 0/1

    d.family = Family::Poisson;
    CHECK_NOTHROW(d.validate());  // non-negative integers
    d.y[0] = 1.5;
    CHECK_THROWS_AS(d.validate(), InvalidArgs);
    d.y[0] = -1.0;
    CHECK_THROWS_AS(d.validate(), InvalidArgs);

    Dataset bad = tiny_gaussian();
    bad.X(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(bad.validate(), InvalidArgs);

    Dataset mism = tiny_gaussian();
    mism.y.resize(2);
    CHECK_THROWS_AS(mism.validate(), DimensionMismatch);
}

TEST_CASE("rows() picks rows with repetition") {
    const Dataset d = tiny_gaussian();
    const Dataset r = d.rows({2, 0, 2});
    REQUIRE(r.n() == 3);
    CHECK(r.X(0, 0) == 3.0);
    CHECK(r.X(1, 0) == 1.0);
    CHECK(r.X(2, 1) == 20.0);
    CHECK(r.y[0] == 8.0);
    CHECK(r.family == d.family);
}
