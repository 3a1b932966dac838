#include "oracle.hpp"

#include "supra/error.hpp"
#include "supra/graph_analysis.hpp"
#include "supra/interlayer.hpp"

#include <doctest.h>

#include <numbers>

using namespace supra;

TEST_CASE("all_to_all") {
    CHECK(all_to_all(1).values() == Matrix::Ones(1, 1));
    CHECK(all_to_all(3).values() == Matrix::Ones(3, 3));
    CHECK(all_to_all(3, false).values() == Matrix::Ones(3, 3) - Matrix::Identity(3, 3));
    for (Index t = 1; t <= 8; ++t) {
        const auto p = oracle::eigen_perron(all_to_all(t).values());
        CHECK(p.lambda == doctest::Approx(static_cast<double>(t)).epsilon(1e-12));
        CHECK((p.vector.array() - 1.0 / std::sqrt(static_cast<double>(t))).abs().maxCoeff() <= 1e-12);
    }
    CHECK_THROWS_AS(all_to_all(0), InvalidArgument);
}

TEST_CASE("chain_undirected") {
    Matrix two(2, 2);
    two << 0, 1, 1, 0;
    CHECK(chain_undirected(2).values() == two);
    CHECK(oracle::eigen_perron(chain_undirected(3).values()).lambda == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(oracle::eigen_perron(chain_undirected(6).values()).lambda == doctest::Approx(1.8019377).epsilon(1e-7));
    for (Index t = 2; t <= 12; ++t) {
        const double expect = 2.0 * std::cos(std::numbers::pi / static_cast<double>(t + 1));
        CHECK(std::abs(oracle::eigen_perron(chain_undirected(t).values()).lambda - expect) <= 1e-10);
    }
    CHECK_THROWS_AS(chain_undirected(1), InvalidArgument);
}

TEST_CASE("chain_teleport") {
    Matrix expect(2, 2);
    expect << 0.5, 1.0, 0.5, 0.5;
    CHECK(chain_teleport(2, 0.5).values() == expect);
    for (Index t = 2; t <= 7; ++t) CHECK(strongly_connected(chain_teleport(t, 1e-4).values()));
    CHECK_FALSE(strongly_connected(chain_teleport(3, 0.0).values()));
    CHECK(chain_teleport(3, 0.2, true).values().diagonal() == Vector::Zero(3));
    CHECK_THROWS_AS(chain_teleport(3, -1.0), InvalidArgument);
}

TEST_CASE("block_communities") {
    const Matrix m = block_communities(6, {3, 3}, 1.0, 0.01).values();
    CHECK(m(2, 3) == 0.01);
    CHECK(m(3, 2) == 0.01);
    CHECK(m(0, 1) == 1.0);
    CHECK(m(4, 5) == 1.0);
    CHECK(m(0, 3) == 0.0);
    CHECK(m(0, 0) == 0.0);
    CHECK(m == m.transpose());
    CHECK(block_communities(4, {4}, 1.0, 0.5).values() == all_to_all(4, false).values());
    const Matrix flat = block_communities(6, {3, 3}, 1.0, 1.0).values();
    CHECK(flat(2, 3) == flat(0, 1));
    CHECK_THROWS_AS(block_communities(6, {3, 2}, 1.0, 0.1), InvalidArgument);
    CHECK_THROWS_AS(block_communities(6, {6, 0}, 1.0, 0.1), InvalidArgument);
}

TEST_CASE("from_triplets") {
    CHECK(from_triplets(3, {}).values() == Matrix::Zero(3, 3));
    CHECK(from_triplets(2, {{0, 1, 1.0}, {1, 0, 1.0}}).values() == chain_undirected(2).values());
    CHECK_THROWS_AS(from_triplets(2, {{0, 1, 1.0}, {0, 1, 2.0}}), InvalidArgument);
    CHECK_THROWS_AS(from_triplets(2, {{0, 2, 1.0}}), InvalidArgument);
    CHECK_THROWS_AS(from_triplets(2, {{0, 1, -1.0}}), InvalidArgument);
}
