#include <doctest.h>
#include <invcoh/catalogue.hpp>

using namespace invcoh;

namespace {
const ConcreteModel& wall() {
    static ConcreteModel m = wall_model();
    return m;
}
size_t idx(const ConcreteModel& m, const std::string& l) {
    for (size_t i = 0; i < m.irreps.size(); ++i)
        if (m.irreps[i].label() == l) return i;
    REQUIRE(false);
    return 0;
}
} // namespace

TEST_CASE("wall irreps validate and exhaust the group") {
    const auto& m = wall();
    size_t total = 0;
    for (const auto& r : m.irreps) {
        auto rep = validate_irrep(m.group, r);
        INFO(r.label(), ": ", rep.detail);
        CHECK(rep.ok());
        total += r.dim() * r.dim();
    }
    CHECK(total == 32);
    // pi4(s) pi4(u) pi4(s)^-1 = pi4(u^3)
    const Irrep& pi4 = m.irreps[idx(m, "pi4")];
    int u = m.group.generators()[0], s = m.group.generators()[1];
    int u3 = m.group.mul(u, m.group.mul(u, u));
    CHECK(pi4.at(s) * pi4.at(u) * pi4.at(m.group.inv(s)) == pi4.at(u3));
}

TEST_CASE("wall fusion rules") {
    const auto& m = wall();
    size_t pi2 = idx(m, "pi2"), pi2p = idx(m, "pi2p"), pi4 = idx(m, "pi4");
    // pi2 (x) pi2 = sum of chi_{i0k}
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                size_t chi = idx(m, "chi" + std::to_string(i) + std::to_string(j) + std::to_string(k));
                CHECK(m.fus.n(pi2, pi2, chi) == (j == 0 ? 1 : 0));
                CHECK(m.fus.n(pi2p, pi2p, chi) == (j == 0 ? 1 : 0));
                CHECK(m.fus.n(pi2, pi2p, chi) == (j == 1 ? 1 : 0));
                CHECK(m.fus.n(pi4, pi4, chi) == 1);
            }
    CHECK(m.fus.n(pi2, pi4, pi4) == 2);
    CHECK(m.fus.n(pi4, pi2, pi4) == 2);
    CHECK(m.fus.n(pi2p, pi4, pi4) == 2);
    CHECK(m.fus.n(pi4, pi4, pi2) == 2);
    CHECK(m.fus.n(pi4, pi4, pi2p) == 2);
    CHECK(m.fus.n(m.unit, pi4, pi4) == 1);
}

TEST_CASE("reference channel bases are intertwiners") {
    const auto& m = wall();
    WallReferenceBases rb = wall_reference_bases();
    size_t pi2 = idx(m, "pi2"), pi2p = idx(m, "pi2p"), pi4 = idx(m, "pi4");
    CHECK(is_intertwiner(m.group, m.irreps[pi2], m.irreps[pi4], m.irreps[pi4], rb.t1));
    CHECK(is_intertwiner(m.group, m.irreps[pi2], m.irreps[pi4], m.irreps[pi4], rb.t2));
    CHECK(is_intertwiner(m.group, m.irreps[pi2p], m.irreps[pi4], m.irreps[pi4], rb.t1p));
    CHECK(is_intertwiner(m.group, m.irreps[pi2p], m.irreps[pi4], m.irreps[pi4], rb.t2p));
    CHECK(is_intertwiner(m.group, m.irreps[pi4], m.irreps[pi4], m.irreps[pi2], rb.s1));
    CHECK(is_intertwiner(m.group, m.irreps[pi4], m.irreps[pi4], m.irreps[pi2], rb.s2));
    // W_chi in Mor(pi4, chi (x) pi4): W pi4(g) = chi(g) pi4(g) W
    for (const auto& [label, w] : rb.w4) {
        size_t chi = idx(m, label);
        for (size_t a = 0; a < m.group.order(); ++a)
            CHECK(w * m.irreps[pi4].at((int)a) ==
                  m.irreps[chi].at((int)a)(0, 0) * (m.irreps[pi4].at((int)a) * w));
    }
    for (const auto& [label, u] : rb.u2) {
        size_t chi = idx(m, label);
        for (size_t a = 0; a < m.group.order(); ++a)
            CHECK(u * m.irreps[pi2].at((int)a) ==
                  m.irreps[chi].at((int)a)(0, 0) * (m.irreps[pi2].at((int)a) * u));
    }
    // V_chi' : H_{pi2p} -> H_{pi2} with V pi2p(g) = chi'(g) pi2(g) V
    for (const auto& [label, v] : rb.v2) {
        size_t chi = idx(m, label);
        for (size_t a = 0; a < m.group.order(); ++a)
            CHECK(v * m.irreps[pi2p].at((int)a) ==
                  m.irreps[chi].at((int)a)(0, 0) * (m.irreps[pi2].at((int)a) * v));
    }
    // {T1, T2} spans the same space as the computed channel basis
    const auto& basis = m.basis(pi2, pi4, pi4);
    REQUIRE(basis.maps.size() == 2);
    Matrix stack(m.ctx, 32, 3);
    auto load = [&](const Matrix& t, size_t col) {
        auto v = t.vec();
        for (size_t i = 0; i < 32; ++i) stack(i, col) = v[i];
    };
    load(basis.maps[0], 0);
    load(basis.maps[1], 1);
    load(rb.t1, 2);
    CHECK(rank(stack) == 2);
    load(rb.t2, 2);
    CHECK(rank(stack) == 2);
}

TEST_CASE("duals of the reference bases") {
    const auto& m = wall();
    WallReferenceBases rb = wall_reference_bases();
    Matrix id4 = Matrix::identity(m.ctx, 4);
    Matrix id2 = Matrix::identity(m.ctx, 2);
    auto duals_t = dual_basis({rb.t1, rb.t2});
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) {
            Matrix pr = duals_t[i] * (j == 0 ? rb.t1 : rb.t2);
            if (i == j) CHECK(pr == id4);
            else CHECK(pr.is_zero());
        }
    auto duals_s = dual_basis({rb.s1, rb.s2});
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) {
            Matrix pr = duals_s[i] * (j == 0 ? rb.s1 : rb.s2);
            if (i == j) CHECK(pr == id2);
            else CHECK(pr.is_zero());
        }
}

// The E/F expansion tables for the three reference channel families. These are
// exact consequences of the chosen bases; they pin the sign structure the
// branch analysis depends on.
TEST_CASE("sign tables of the composite channel expansions") {
    const auto& m = wall();
    WallReferenceBases rb = wall_reference_bases();
    size_t pi4 = idx(m, "pi4");
    Matrix id4 = Matrix::identity(m.ctx, 4);
    Matrix id2 = Matrix::identity(m.ctx, 2);

    // unprimed family: E_i = (id_chi (x) T_i) W_chi, F_j = (U_chi (x) id) T_j
    for (const auto& [label, a] : rb.a_unprimed) {
        const Matrix& w = rb.w4.at(label);
        const Matrix& u = rb.u2.at(label);
        Matrix e1 = rb.t1 * w, e2 = rb.t2 * w;
        Matrix f1 = kron(u, id4) * rb.t1, f2 = kron(u, id4) * rb.t2;
        CHECK(e1 == a(0, 0) * f1 + a(0, 1) * f2);
        CHECK(e2 == a(1, 0) * f1 + a(1, 1) * f2);
    }
    // primed family: E'_i = (id (x) T_i) W_chi', F'_j = (V_chi' (x) id) T'_j
    for (const auto& [label, a] : rb.a_primed) {
        const Matrix& w = rb.w4.at(label);
        const Matrix& v = rb.v2.at(label);
        Matrix e1 = rb.t1 * w, e2 = rb.t2 * w;
        Matrix f1 = kron(v, id4) * rb.t1p, f2 = kron(v, id4) * rb.t2p;
        CHECK(e1 == a(0, 0) * f1 + a(0, 1) * f2);
        CHECK(e2 == a(1, 0) * f1 + a(1, 1) * f2);
    }
    // S-family: G_l = (W_chi (x) id) S_l, H_y = (id (x) S_y) U_chi
    for (const auto& [label, n] : rb.n_matrices) {
        const Matrix& w = rb.w4.at(label);
        const Matrix& u = rb.u2.at(label);
        Matrix g1 = kron(w, id4) * rb.s1, g2 = kron(w, id4) * rb.s2;
        Matrix h1 = rb.s1 * u, h2 = rb.s2 * u;
        CHECK(g1 == n(0, 0) * h1 + n(0, 1) * h2);
        CHECK(g2 == n(1, 0) * h1 + n(1, 1) * h2);
    }
}
