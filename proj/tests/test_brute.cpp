#include <doctest.h>
#include <invcoh/brute.hpp>

using namespace invcoh;

TEST_CASE("schur multiplier formula") {
    CHECK(schur_multiplier({2, 2}).str() == "Z/2");
    CHECK(schur_multiplier({5}).trivial());
    CHECK(schur_multiplier({8}).trivial());
    CHECK(schur_multiplier({2, 2, 2}).str() == "Z/2 x Z/2 x Z/2");
    CHECK(schur_multiplier({2, 4}).str() == "Z/2");
    CHECK(schur_multiplier({2, 6}).str() == "Z/2");
    CHECK(schur_multiplier({4, 4}).str() == "Z/4");
    CHECK(schur_multiplier({2, 2, 4}).str() == "Z/2 x Z/2 x Z/2");
}

TEST_CASE("h2 brute force small cases") {
    CHECK(h2_brute(FiniteGroup::abelian({2}), 2).trivial());
    CHECK(h2_brute(FiniteGroup::abelian({4}), 4).trivial());
    CHECK(h2_brute(FiniteGroup::abelian({2, 2}), 2).str() == "Z/2");
    CHECK(h2_brute(FiniteGroup::abelian({2, 2}), 4).str() == "Z/2");
    CHECK_THROWS(h2_brute(FiniteGroup::abelian({4}), 2)); // m not multiple of exponent
}

TEST_CASE("oracle agreement on all abelian groups of order <= 16") {
    std::vector<std::vector<long>> groups = {
        {2}, {3}, {4}, {2, 2}, {5}, {6}, {7}, {8}, {2, 4}, {2, 2, 2},
        {9}, {3, 3}, {10}, {11}, {12}, {2, 6}, {13}, {14}, {15},
        {16}, {2, 8}, {4, 4}, {2, 2, 4}, {2, 2, 2, 2}};
    for (const auto& inv : groups) {
        FiniteGroup a = FiniteGroup::abelian(inv);
        AbelianGroup expect = schur_multiplier(inv);
        AbelianGroup got = h2_brute(a, a.exponent());
        INFO("invariants ", inv.size());
        CHECK(got == expect);
    }
}
