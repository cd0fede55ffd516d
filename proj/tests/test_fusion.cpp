#include <doctest.h>
#include <invcoh/catalogue.hpp>

using namespace invcoh;

TEST_CASE("skeletal category from s3 representations") {
    ConcreteModel m = s3_model();
    SkeletalCategory c = to_skeletal(m, /*cross_check=*/true);
    // unit-argument F-matrices are identity
    for (const auto& [key, f] : c.f_table) {
        auto [x, y, z, w] = key;
        if (x == c.unit || y == c.unit || z == c.unit) {
            REQUIRE(f.rows() == f.cols());
            CHECK(f == Matrix::identity(c.ctx, f.rows()));
        }
        CHECK(is_invertible(f));
    }
    CHECK(pentagon_check(c).empty());
}

TEST_CASE("skeletal category from k4 and q8") {
    SkeletalCategory k4 = to_skeletal(abelian_model("k4", {2, 2}), true);
    CHECK(pentagon_check(k4).empty());
    SkeletalCategory q8 = to_skeletal(q8_model(), true);
    CHECK(pentagon_check(q8).empty());
    CHECK(q8.invertibles().size() == 4);
}

TEST_CASE("tambara-yamagami data") {
    SkeletalCategory c = ty_kp_category();
    CHECK(c.nlabels() == 5);
    CHECK(c.invertibles().size() == 4);
    size_t rho = c.label_index("rho");
    for (size_t s = 0; s < 4; ++s) {
        CHECK(c.fus.n(s, rho, rho) == 1);
        CHECK(c.fus.n(rho, rho, s) == 1);
    }
    // phi_{rho,rho,rho} is Hadamard-type over 2: unitary
    const Matrix& big = c.f(rho, rho, rho, rho);
    CHECK(big * big.dagger() == Matrix::identity(c.ctx, 4));
    CHECK(pentagon_check(c).empty());

    // corrupting one phi_{rho rho rho} entry breaks the pentagon
    SkeletalCategory bad = c;
    Matrix corrupt = bad.f(rho, rho, rho, rho);
    corrupt(1, 1) = -corrupt(1, 1);
    bad.f_table[{rho, rho, rho, rho}] = corrupt;
    CHECK(!pentagon_check(bad).empty());

    CHECK_THROWS(ty_category(kp_bicharacter(), rat(1, 3)));
}

TEST_CASE("degenerate bicharacter rejected") {
    Bicharacter bc;
    bc.group = FiniteGroup::abelian({2, 2});
    bc.ctx = make_context(4);
    bc.table.assign(16, Cyclo(bc.ctx, Rat(1)));
    CHECK_THROWS(bc.validate());
}
