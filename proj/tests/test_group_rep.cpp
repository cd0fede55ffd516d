#include <doctest.h>
#include <invcoh/catalogue.hpp>

using namespace invcoh;

TEST_CASE("permutation closure") {
    FiniteGroup z2 = FiniteGroup::from_permutations({{1, 0}}, 8);
    CHECK(z2.order() == 2);
    FiniteGroup s3 = FiniteGroup::from_permutations({{1, 0, 2}, {1, 2, 0}}, 8);
    CHECK(s3.order() == 6);
    CHECK(!s3.is_abelian());
    s3.validate();
    CHECK_THROWS(FiniteGroup::from_permutations({{1, 2, 3, 4, 0}}, 3));
}

TEST_CASE("wall group closure and structure") {
    FiniteGroup g = wall_group_raw();
    CHECK(g.order() == 32);
    g.validate();
    int u = g.generators()[0], s = g.generators()[1], t = g.generators()[2];
    // s u s^-1 = u^3, t u t^-1 = u^5, s t = t s
    int u3 = g.mul(u, g.mul(u, u));
    int u5 = g.mul(u3, g.mul(u, u));
    CHECK(g.mul(g.mul(s, u), g.inv(s)) == u3);
    CHECK(g.mul(g.mul(t, u), g.inv(t)) == u5);
    CHECK(g.mul(s, t) == g.mul(t, s));
    CHECK(g.element_order(u) == 8);
    CHECK(g.element_order(s) == 2);
    CHECK(g.element_order(t) == 2);
}

TEST_CASE("abelian groups") {
    FiniteGroup k4 = FiniteGroup::abelian({2, 2});
    CHECK(k4.order() == 4);
    CHECK(k4.is_abelian());
    CHECK(k4.exponent() == 2);
    CHECK(k4.abelian_invariants() == std::vector<long>{2, 2});
    FiniteGroup z6 = FiniteGroup::abelian({6});
    CHECK(z6.abelian_invariants() == std::vector<long>{6});
    // Z2 x Z4 given in the wrong order still canonicalizes
    FiniteGroup g = FiniteGroup::abelian({4, 2});
    CHECK(g.abelian_invariants() == std::vector<long>{2, 4});
}

TEST_CASE("irrep validation") {
    ConcreteModel m = s3_model();
    for (const auto& r : m.irreps) {
        auto rep = validate_irrep(m.group, r);
        CHECK(rep.ok());
    }
    // direct sum of two characters fails irreducibility
    {
        CtxPtr ctx = make_context(3);
        Matrix r1 = cat::mat(ctx, 2, {"1 0", "0 1"});
        Matrix s1 = cat::mat(ctx, 2, {"1 0", "0 -1"});
        Irrep sum = Irrep::from_generator_matrices(m.group, "redsum", {r1, s1});
        auto rep = validate_irrep(m.group, sum);
        CHECK(rep.homomorphism);
        CHECK(!rep.irreducible);
    }
    // corrupted generator matrix fails the homomorphism check
    {
        CtxPtr ctx = make_context(3);
        Matrix rr = cat::mat(ctx, 2, {"c(3,1) 0", "0 c(3,2)"});
        Matrix bad = cat::mat(ctx, 2, {"0 1", "-1 0"});
        Irrep broken = Irrep::from_generator_matrices(m.group, "broken", {rr, bad});
        CHECK(!validate_irrep(m.group, broken).homomorphism);
    }
}

TEST_CASE("fusion tables") {
    ConcreteModel m = s3_model();
    // std (x) std = triv + sgn + std
    size_t std_i = 2;
    CHECK(m.fus.n(std_i, std_i, 0) == 1);
    CHECK(m.fus.n(std_i, std_i, 1) == 1);
    CHECK(m.fus.n(std_i, std_i, 2) == 1);
    // unit laws
    for (size_t x = 0; x < 3; ++x)
        for (size_t y = 0; y < 3; ++y) CHECK(m.fus.n(m.unit, x, y) == (x == y ? 1 : 0));
    // dimension bookkeeping and fusion associativity
    std::vector<long> dims = {1, 1, 2};
    size_t k = 3;
    for (size_t x = 0; x < k; ++x)
        for (size_t y = 0; y < k; ++y) {
            long lhs = 0;
            for (size_t z = 0; z < k; ++z) lhs += m.fus.n(x, y, z) * dims[z];
            CHECK(lhs == dims[x] * dims[y]);
        }
    for (size_t x = 0; x < k; ++x)
        for (size_t y = 0; y < k; ++y)
            for (size_t z = 0; z < k; ++z)
                for (size_t v = 0; v < k; ++v) {
                    long a = 0, b = 0;
                    for (size_t w = 0; w < k; ++w) {
                        a += m.fus.n(x, y, w) * m.fus.n(w, z, v);
                        b += m.fus.n(y, z, w) * m.fus.n(x, w, v);
                    }
                    CHECK(a == b);
                }
}

TEST_CASE("intertwiner bases with duals") {
    ConcreteModel m = s3_model();
    for (const auto& [key, basis] : m.bases) {
        auto [x, y, z] = key;
        for (const auto& t : basis.maps) CHECK(is_intertwiner(m.group, m.irreps[x], m.irreps[y], m.irreps[z], t));
        Matrix id = Matrix::identity(m.ctx, m.irreps[z].dim());
        for (size_t i = 0; i < basis.maps.size(); ++i)
            for (size_t j = 0; j < basis.maps.size(); ++j) {
                Matrix p = basis.duals[i] * basis.maps[j];
                if (i == j) CHECK(p == id);
                else CHECK(p.is_zero());
            }
    }
}
