#include <doctest.h>
#include <invcoh/catalogue.hpp>
#include <invcoh/matrix.hpp>

using namespace invcoh;

TEST_CASE("nullspace basics") {
    auto ctx = make_context(8);
    Matrix m = cat::mat(ctx, 2, {"1 1", "1 1"});
    auto ns = nullspace(m);
    REQUIRE(ns.size() == 1);
    CHECK(ns[0][0] == -ns[0][1]);

    CHECK(nullspace(Matrix::identity(ctx, 3)).empty());

    Matrix m2 = cat::mat(ctx, 2, {"1 c(8,1)", "c(8,7) 1"});
    auto ns2 = nullspace(m2);
    REQUIRE(ns2.size() == 1);
    // span{(zeta8, -1)}: check the vector annihilates both rows
    for (size_t r = 0; r < 2; ++r) {
        Cyclo acc(ctx);
        for (size_t c = 0; c < 2; ++c) acc += m2(r, c) * ns2[0][c];
        CHECK(acc.is_zero());
    }
    CHECK((ns2[0][0] * root(ctx, 0) - (-ns2[0][1]) * root(ctx, 1)).is_zero());
}

TEST_CASE("solve_linear") {
    auto ctx = make_context(4);
    Matrix id = Matrix::identity(ctx, 3);
    std::vector<Cyclo> b = {Cyclo(ctx, Rat(1)), root(ctx, 1), Cyclo(ctx, Rat(-2))};
    auto sol = solve_linear(id, b);
    REQUIRE(sol.consistent);
    CHECK(sol.particular == b);
    CHECK(sol.nullbasis.empty());

    Matrix row(ctx, 1, 2);
    row(0, 0) = Cyclo(ctx, Rat(1));
    row(0, 1) = Cyclo(ctx, Rat(1));
    auto sol2 = solve_linear(row, {Cyclo(ctx)});
    REQUIRE(sol2.consistent);
    CHECK(sol2.nullbasis.size() == 1);

    Matrix col(ctx, 2, 1);
    col(0, 0) = Cyclo(ctx, Rat(1));
    col(1, 0) = Cyclo(ctx, Rat(1));
    auto sol3 = solve_linear(col, {Cyclo(ctx, Rat(1)), Cyclo(ctx, Rat(2))});
    CHECK(!sol3.consistent);
}

TEST_CASE("inverse and rank") {
    auto ctx = make_context(8);
    Matrix m = cat::mat(ctx, 2, {"1 c(8,1)", "0 2"});
    Matrix mi = inverse(m);
    CHECK(m * mi == Matrix::identity(ctx, 2));
    CHECK(mi * m == Matrix::identity(ctx, 2));
    CHECK_THROWS(inverse(cat::mat(ctx, 2, {"1 1", "1 1"})));
    CHECK(rank(cat::mat(ctx, 2, {"1 1", "1 1"})) == 1);
}

TEST_CASE("dual basis of isometries") {
    auto ctx = make_context(8);
    // single isometry: S = (1,0)^T
    Matrix s(ctx, 2, 1);
    s(0, 0) = Cyclo(ctx, Rat(1));
    auto d = dual_basis({s});
    REQUIRE(d.size() == 1);
    CHECK(d[0] == s.dagger());
    // scaled by 2: dual scales by 1/4 so that dual * (2S) = id
    Matrix s2 = Cyclo(ctx, Rat(2)) * s;
    auto d2 = dual_basis({s2});
    CHECK(d2[0] * s2 == Matrix::identity(ctx, 1));
    CHECK(d2[0] == Cyclo(ctx, rat(1, 2)) * s.dagger());
}

TEST_CASE("kron and vec conventions") {
    auto ctx = make_context(4);
    Matrix a = cat::mat(ctx, 2, {"1 2", "3 4"});
    Matrix b = cat::mat(ctx, 2, {"0 1", "1 0"});
    Matrix k = kron(a, b);
    CHECK(k.rows() == 4);
    CHECK(k(0, 1) == Cyclo(ctx, Rat(1)));
    CHECK(k(0, 3) == Cyclo(ctx, Rat(2)));
    Matrix u = Matrix::unvec(ctx, a.vec(), 2, 2);
    CHECK(u == a);
}
