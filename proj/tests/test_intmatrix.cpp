#include <doctest.h>
#include <invcoh/intmatrix.hpp>

#include <random>

using namespace invcoh;

namespace {

IntMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

void check_snf_contract(const IntMatrix& a) {
    SnfResult r = smith_normal_form(a);
    CHECK(r.u * a * r.v == r.s);
    Int du = det(r.u), dv = det(r.v);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    auto d = r.diagonal();
    for (size_t i = 0; i + 1 < d.size(); ++i) {
        if (d[i + 1] != 0) {
            REQUIRE(d[i] != 0);
            CHECK(d[i + 1] % d[i] == 0);
        }
    }
    for (size_t i = 0; i < r.s.rows(); ++i)
        for (size_t j = 0; j < r.s.cols(); ++j)
            if (i != j) CHECK(r.s(i, j) == 0);
}

} // namespace

TEST_CASE("snf hand oracles") {
    // diag(2,3): hand row/column reduction gives diag(1,6)
    SnfResult r = smith_normal_form(from_rows({{2, 0}, {0, 3}}));
    CHECK(r.diagonal() == std::vector<Int>{1, 6});
    // [[2,4],[4,8]] has rank 1: diag(2,0)
    SnfResult r2 = smith_normal_form(from_rows({{2, 4}, {4, 8}}));
    CHECK(r2.diagonal() == std::vector<Int>{2, 0});
    SnfResult r3 = smith_normal_form(IntMatrix(3, 2));
    CHECK(r3.s.is_zero());
    CHECK(r3.rank == 0);
}

TEST_CASE("snf randomized contract") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> dim(1, 6), val(-9, 9);
    for (int trial = 0; trial < 1000; ++trial) {
        IntMatrix a(dim(rng), dim(rng));
        for (size_t i = 0; i < a.rows(); ++i)
            for (size_t j = 0; j < a.cols(); ++j) a(i, j) = val(rng);
        check_snf_contract(a);
    }
}

TEST_CASE("quotient groups") {
    CHECK(quotient_group(from_rows({{2}}), 1).str() == "Z/2");
    AbelianGroup g = quotient_group(from_rows({{1, 0}}), 2);
    CHECK(g.free_rank == 1);
    CHECK(g.factors.empty());
    CHECK(quotient_group(from_rows({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}), 3).str() ==
          "Z/2 x Z/2 x Z/2");
    CHECK(quotient_group(from_rows({{2, 0}, {0, 3}}), 2).str() == "Z/6");
    CHECK(quotient_group(IntMatrix(0, 0), 2).str() == "Z^2");
}

TEST_CASE("kernel lattices and integer solve") {
    IntMatrix a = from_rows({{2, 4, 6}});
    IntMatrix k = kernel_lattice(a);
    CHECK(k.cols() == 2);
    for (size_t c = 0; c < k.cols(); ++c) {
        Int acc = 0;
        for (size_t j = 0; j < 3; ++j) acc += a(0, j) * k(j, c);
        CHECK(acc == 0);
    }
    auto sol = solve_integer(a, {Int(10)});
    REQUIRE(sol.has_value());
    Int acc = 0;
    for (size_t j = 0; j < 3; ++j) acc += a(0, j) * (*sol)[j];
    CHECK(acc == 10);
    CHECK(!solve_integer(from_rows({{2}}), {Int(3)}).has_value());

    // mod-m kernel: x with 2x = 0 mod 8 is generated by 4
    IntMatrix km = kernel_lattice_mod(from_rows({{2}}), Int(8));
    SnfResult s = smith_normal_form(km, false, false);
    CHECK(s.diagonal() == std::vector<Int>{4});
}

TEST_CASE("lattice coordinates") {
    IntMatrix l = from_rows({{2, 0}, {0, 3}}); // columns (2,0),(0,3)
    IntMatrix b = from_rows({{4}, {3}});
    IntMatrix x = lattice_coordinates(l, b);
    CHECK(x(0, 0) == 2);
    CHECK(x(1, 0) == 1);
    CHECK_THROWS(lattice_coordinates(l, from_rows({{1}, {0}})));
}
