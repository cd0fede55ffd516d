#pragma once

// Built-in inputs: concrete groups with exhaustive exact unitary irreps, the
// Tambara-Yamagami / Kac-Paljutkin skeletal data, and expected cohomology
// results where an independent source pins them.

#include "brute.hpp"
#include "fusion.hpp"
#include "literal.hpp"

namespace invcoh {

namespace cat {

inline Matrix mat(const CtxPtr& ctx, size_t n, const std::vector<std::string>& rows) {
    if (rows.size() != n) throw std::invalid_argument("bad matrix literal");
    Matrix m(ctx, n, n);
    for (size_t i = 0; i < n; ++i) {
        std::istringstream is(rows[i]);
        std::string tok;
        size_t j = 0;
        while (is >> tok) {
            if (j >= n) throw std::invalid_argument("bad matrix literal row");
            m(i, j++) = parse_cyclo(tok, ctx);
        }
        if (j != n) throw std::invalid_argument("bad matrix literal row");
    }
    return m;
}

} // namespace cat

// The order-32 group <u, s, t | u^8 = s^2 = t^2 = 1, st = ts, sus = u^3,
// tut = u^5>, realized faithfully by permutations of Z_8: u: x+1, s: 3x, t: 5x.
inline FiniteGroup wall_group_raw() {
    std::vector<std::vector<int>> perms = {
        {1, 2, 3, 4, 5, 6, 7, 0},  // u
        {0, 3, 6, 1, 4, 7, 2, 5},  // s
        {0, 5, 2, 7, 4, 1, 6, 3},  // t
    };
    FiniteGroup g = FiniteGroup::from_permutations(perms, 64, {"u", "s", "t"});
    if (g.order() != 32) throw std::logic_error("closure of u,s,t has unexpected order");
    return g;
}

inline ConcreteModel wall_model() {
    FiniteGroup g = wall_group_raw();
    CtxPtr ctx = make_context(8);
    std::vector<Irrep> irreps;
    // Characters chi_ijk: chi(s) = (-1)^i, chi(t) = (-1)^j, chi(u) = (-1)^k.
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                auto sc = [&](int sign) {
                    Matrix m(ctx, 1, 1);
                    m(0, 0) = Cyclo(ctx, Rat(sign ? -1 : 1));
                    return m;
                };
                std::string label = "chi" + std::to_string(i) + std::to_string(j) + std::to_string(k);
                irreps.push_back(Irrep::from_generator_matrices(g, label, {sc(k), sc(i), sc(j)}));
            }
    // pi2, pi2p, pi4 with omega = zeta_8.
    Matrix u2 = cat::mat(ctx, 2, {"c(8,2) 0", "0 c(8,6)"});
    Matrix s2 = cat::mat(ctx, 2, {"0 1", "1 0"});
    Matrix t2 = Matrix::identity(ctx, 2);
    irreps.push_back(Irrep::from_generator_matrices(g, "pi2", {u2, s2, t2}));
    Matrix t2m = cat::mat(ctx, 2, {"-1 0", "0 -1"});
    irreps.push_back(Irrep::from_generator_matrices(g, "pi2p", {u2, s2, t2m}));
    Matrix u4 = cat::mat(ctx, 4, {"c(8,1) 0 0 0", "0 c(8,3) 0 0", "0 0 c(8,5) 0", "0 0 0 c(8,7)"});
    Matrix s4m = cat::mat(ctx, 4, {"0 1 0 0", "1 0 0 0", "0 0 0 1", "0 0 1 0"});
    Matrix t4m = cat::mat(ctx, 4, {"0 0 1 0", "0 0 0 1", "1 0 0 0", "0 1 0 0"});
    irreps.push_back(Irrep::from_generator_matrices(g, "pi4", {u4, s4m, t4m}));
    return make_concrete_model("wall32", std::move(g), std::move(irreps));
}

// Reference bases for the two-dimensional channels of the wall32 model and
// the induced sign matrices, used by the regression suite. W_chi spans
// Mor(pi4, chi (x) pi4), U_chi spans Mor(pi2, chi (x) pi2), V_chi spans
// Mor(pi2p, chi' (x) pi2); phases are fixed once and for all here.
struct WallReferenceBases {
    CtxPtr ctx;
    Matrix t1, t2;        // Mor(pi4, pi2 (x) pi4), 8x4
    Matrix t1p, t2p;      // Mor(pi4, pi2p (x) pi4), 8x4
    Matrix s1, s2;        // Mor(pi2, pi4 (x) pi4), 16x2
    std::map<std::string, Matrix> w4;   // chi-indexed, 4x4
    std::map<std::string, Matrix> u2;   // chi_{i0k}-indexed, 2x2
    std::map<std::string, Matrix> v2;   // chi_{i1k}-indexed, 2x2 (pi2p -> pi2)
    std::map<std::string, Matrix> a_unprimed; // expected E/F sign matrices
    std::map<std::string, Matrix> a_primed;
    std::map<std::string, Matrix> n_matrices;
};

inline WallReferenceBases wall_reference_bases() {
    CtxPtr ctx = make_context(8);
    WallReferenceBases r;
    r.ctx = ctx;
    auto place = [&](std::initializer_list<std::pair<std::pair<int, int>, int>> entries, size_t rows) {
        Matrix m(ctx, rows, 4);
        for (const auto& e : entries) m((size_t)e.first.first, (size_t)e.first.second) = Cyclo(ctx, Rat(e.second));
        return m;
    };
    // basis order of H2 (x) H4: e_p (x) x_q at row 4p + q, zero-based.
    r.t1 = place({{{3, 0}, 1}, {{6, 1}, 1}, {{1, 2}, 1}, {{4, 3}, 1}}, 8);
    r.t2 = place({{{5, 0}, 1}, {{0, 1}, 1}, {{7, 2}, 1}, {{2, 3}, 1}}, 8);
    r.t1p = place({{{3, 0}, 1}, {{6, 1}, 1}, {{1, 2}, -1}, {{4, 3}, -1}}, 8);
    r.t2p = place({{{5, 0}, 1}, {{0, 1}, 1}, {{7, 2}, -1}, {{2, 3}, -1}}, 8);
    {
        Matrix s1(ctx, 16, 2), s2(ctx, 16, 2);
        Cyclo one(ctx, Rat(1));
        s1(0, 0) = one;  // x1 (x) x1
        s1(10, 0) = one; // x3 (x) x3
        s1(5, 1) = one;  // x2 (x) x2
        s1(15, 1) = one; // x4 (x) x4
        s2(7, 0) = one;  // x2 (x) x4
        s2(13, 0) = one; // x4 (x) x2
        s2(2, 1) = one;  // x1 (x) x3
        s2(8, 1) = one;  // x3 (x) x1
        r.s1 = s1;
        r.s2 = s2;
    }
    auto m2 = [&](const std::vector<std::string>& rows) { return cat::mat(ctx, 2, rows); };
    auto m4 = [&](const std::vector<std::string>& rows) { return cat::mat(ctx, 4, rows); };

    r.w4["chi000"] = Matrix::identity(ctx, 4);
    r.w4["chi001"] = m4({"0 0 1 0", "0 0 0 1", "1 0 0 0", "0 1 0 0"});
    r.w4["chi100"] = m4({"1 0 0 0", "0 -1 0 0", "0 0 1 0", "0 0 0 -1"});
    r.w4["chi101"] = m4({"0 0 -1 0", "0 0 0 1", "-1 0 0 0", "0 1 0 0"});
    r.w4["chi010"] = m4({"1 0 0 0", "0 1 0 0", "0 0 -1 0", "0 0 0 -1"});
    r.w4["chi110"] = m4({"1 0 0 0", "0 -1 0 0", "0 0 -1 0", "0 0 0 1"});
    r.w4["chi011"] = m4({"0 0 1 0", "0 0 0 1", "-1 0 0 0", "0 -1 0 0"});
    r.w4["chi111"] = m4({"0 0 1 0", "0 0 0 -1", "-1 0 0 0", "0 1 0 0"});

    r.u2["chi000"] = Matrix::identity(ctx, 2);
    r.u2["chi001"] = m2({"0 1", "1 0"});
    r.u2["chi100"] = m2({"1 0", "0 -1"});
    r.u2["chi101"] = m2({"0 1", "-1 0"});

    r.v2["chi010"] = Matrix::identity(ctx, 2);
    r.v2["chi110"] = m2({"1 0", "0 -1"});
    r.v2["chi011"] = m2({"0 1", "1 0"});
    r.v2["chi111"] = m2({"0 -1", "1 0"});

    r.a_unprimed["chi000"] = Matrix::identity(ctx, 2);
    r.a_unprimed["chi001"] = m2({"0 1", "1 0"});
    r.a_unprimed["chi100"] = m2({"1 0", "0 -1"});
    r.a_unprimed["chi101"] = m2({"0 -1", "1 0"});

    r.a_primed["chi010"] = Matrix::identity(ctx, 2);
    r.a_primed["chi110"] = m2({"1 0", "0 -1"});
    r.a_primed["chi011"] = m2({"0 -1", "-1 0"});
    r.a_primed["chi111"] = m2({"0 1", "-1 0"});

    r.n_matrices["chi000"] = Matrix::identity(ctx, 2);
    r.n_matrices["chi001"] = m2({"0 1", "1 0"});
    r.n_matrices["chi100"] = m2({"1 0", "0 -1"});
    r.n_matrices["chi101"] = m2({"0 1", "-1 0"});
    return r;
}

inline ConcreteModel s3_model() {
    FiniteGroup g = FiniteGroup::from_permutations({{1, 2, 0}, {1, 0, 2}}, 16, {"r", "s"});
    CtxPtr ctx = make_context(3);
    auto sc = [&](long v) {
        Matrix m(ctx, 1, 1);
        m(0, 0) = Cyclo(ctx, Rat(v));
        return m;
    };
    std::vector<Irrep> irreps;
    irreps.push_back(Irrep::from_generator_matrices(g, "triv", {sc(1), sc(1)}));
    irreps.push_back(Irrep::from_generator_matrices(g, "sgn", {sc(1), sc(-1)}));
    Matrix rr = cat::mat(ctx, 2, {"c(3,1) 0", "0 c(3,2)"});
    Matrix ss = cat::mat(ctx, 2, {"0 1", "1 0"});
    irreps.push_back(Irrep::from_generator_matrices(g, "std", {rr, ss}));
    return make_concrete_model("s3", std::move(g), std::move(irreps));
}

inline ConcreteModel s4_model() {
    FiniteGroup g = FiniteGroup::from_permutations({{1, 2, 3, 0}, {1, 0, 2, 3}}, 64, {"a", "b"});
    if (g.order() != 24) throw std::logic_error("s4 closure has unexpected order");
    CtxPtr ctx = make_context(3);
    auto sc = [&](long v) {
        Matrix m(ctx, 1, 1);
        m(0, 0) = Cyclo(ctx, Rat(v));
        return m;
    };
    std::vector<Irrep> irreps;
    irreps.push_back(Irrep::from_generator_matrices(g, "triv", {sc(1), sc(1)}));
    irreps.push_back(Irrep::from_generator_matrices(g, "sgn", {sc(-1), sc(-1)}));
    Matrix a2 = cat::mat(ctx, 2, {"0 c(3,1)", "c(3,2) 0"});
    Matrix b2 = cat::mat(ctx, 2, {"0 c(3,2)", "c(3,1) 0"});
    irreps.push_back(Irrep::from_generator_matrices(g, "dim2", {a2, b2}));
    Matrix a3 = cat::mat(ctx, 3, {"0 0 1", "0 -1 0", "-1 0 0"});
    Matrix b3 = cat::mat(ctx, 3, {"1 0 0", "0 0 -1", "0 -1 0"});
    Irrep std3 = Irrep::from_generator_matrices(g, "std", {a3, b3});
    Irrep sgn3 = std3.tensor_sign(irreps[1], "stdsgn");
    irreps.push_back(std::move(std3));
    irreps.push_back(std::move(sgn3));
    return make_concrete_model("s4", std::move(g), std::move(irreps));
}

inline ConcreteModel q8_model() {
    // regular action of the quaternion group; 1,-1,i,-i,j,-j,k,-k = 0..7
    std::vector<std::vector<int>> perms = {
        {2, 3, 1, 0, 6, 7, 5, 4},  // left multiplication by i
        {4, 5, 7, 6, 1, 0, 2, 3},  // left multiplication by j
    };
    FiniteGroup g = FiniteGroup::from_permutations(perms, 16, {"i", "j"});
    if (g.order() != 8) throw std::logic_error("q8 closure has unexpected order");
    CtxPtr ctx = make_context(4);
    auto sc = [&](long v) {
        Matrix m(ctx, 1, 1);
        m(0, 0) = Cyclo(ctx, Rat(v));
        return m;
    };
    std::vector<Irrep> irreps;
    irreps.push_back(Irrep::from_generator_matrices(g, "triv", {sc(1), sc(1)}));
    irreps.push_back(Irrep::from_generator_matrices(g, "chi_i", {sc(1), sc(-1)}));
    irreps.push_back(Irrep::from_generator_matrices(g, "chi_j", {sc(-1), sc(1)}));
    irreps.push_back(Irrep::from_generator_matrices(g, "chi_k", {sc(-1), sc(-1)}));
    Matrix mi = cat::mat(ctx, 2, {"c(4,1) 0", "0 c(4,3)"});
    Matrix mj = cat::mat(ctx, 2, {"0 -1", "1 0"});
    irreps.push_back(Irrep::from_generator_matrices(g, "dim2", {mi, mj}));
    return make_concrete_model("q8", std::move(g), std::move(irreps));
}

inline ConcreteModel d4_model() {
    FiniteGroup g = FiniteGroup::from_permutations({{1, 2, 3, 0}, {0, 3, 2, 1}}, 16, {"r", "s"});
    if (g.order() != 8) throw std::logic_error("d4 closure has unexpected order");
    CtxPtr ctx = make_context(4);
    auto sc = [&](long v) {
        Matrix m(ctx, 1, 1);
        m(0, 0) = Cyclo(ctx, Rat(v));
        return m;
    };
    std::vector<Irrep> irreps;
    irreps.push_back(Irrep::from_generator_matrices(g, "triv", {sc(1), sc(1)}));
    irreps.push_back(Irrep::from_generator_matrices(g, "chi_r", {sc(1), sc(-1)}));
    irreps.push_back(Irrep::from_generator_matrices(g, "chi_s", {sc(-1), sc(1)}));
    irreps.push_back(Irrep::from_generator_matrices(g, "chi_rs", {sc(-1), sc(-1)}));
    Matrix mr = cat::mat(ctx, 2, {"c(4,1) 0", "0 c(4,3)"});
    Matrix ms = cat::mat(ctx, 2, {"0 1", "1 0"});
    irreps.push_back(Irrep::from_generator_matrices(g, "dim2", {mr, ms}));
    return make_concrete_model("d4", std::move(g), std::move(irreps));
}

// Abelian group with all characters, conductor = exponent.
inline ConcreteModel abelian_model(const std::string& name, const std::vector<long>& invariants) {
    FiniteGroup g = FiniteGroup::abelian(invariants);
    long ex = 1;
    for (long d : invariants) ex = (long)lcm(Int(ex), Int(d)).get_si();
    CtxPtr ctx = make_context((unsigned long)ex);
    size_t n = g.order();
    auto unrank = [&](size_t idx) {
        std::vector<long> t(invariants.size());
        for (size_t i = invariants.size(); i-- > 0;) {
            t[i] = (long)(idx % (size_t)invariants[i]);
            idx /= (size_t)invariants[i];
        }
        return t;
    };
    std::vector<Irrep> irreps;
    for (size_t ci = 0; ci < n; ++ci) {
        auto mv = unrank(ci);
        std::vector<Cyclo> vals;
        for (size_t a = 0; a < n; ++a) {
            auto av = unrank(a);
            long e = 0;
            for (size_t k = 0; k < invariants.size(); ++k)
                e = (e + (ex / invariants[k]) * mv[k] * av[k]) % ex;
            vals.push_back(root(ctx, e));
        }
        std::string label = "chi" + std::to_string(ci);
        if (ci == 0) label = "triv";
        irreps.push_back(Irrep::from_character_values(g, label, vals));
    }
    return make_concrete_model(name, std::move(g), std::move(irreps));
}

// Klein four-group bicharacter of the Kac-Paljutkin category:
// chi(a,a) = chi(b,b) = -1, chi(a,b) = 1.
inline Bicharacter kp_bicharacter() {
    Bicharacter bc;
    bc.group = FiniteGroup::abelian({2, 2});
    bc.ctx = make_context(4);
    size_t n = 4;
    bc.table.assign(n * n, Cyclo(bc.ctx, Rat(1)));
    // elements: (0,0)=e, (0,1)=b, (1,0)=a, (1,1)=ab
    auto bits = [&](int g) { return std::pair<int, int>{g >> 1, g & 1}; };
    for (int g = 0; g < 4; ++g)
        for (int h = 0; h < 4; ++h) {
            auto [g1, g2] = bits(g);
            auto [h1, h2] = bits(h);
            // chi(a,a)=chi(b,b)=-1, chi(a,b)=chi(b,a)=1
            int e = g1 * h1 + g2 * h2;
            bc.table[(size_t)g * n + (size_t)h] = Cyclo(bc.ctx, Rat(e % 2 ? -1 : 1));
        }
    bc.validate();
    return bc;
}

inline SkeletalCategory ty_kp_category() { return ty_category(kp_bicharacter(), rat(1, 2)); }

// ---------------------------------------------------------------------------

struct CatalogueEntry {
    std::string name;
    bool skeletal = false;
    std::string description;
    // expected invariant-factor string of H^2 in both coefficient modes,
    // empty when no independent source pins the answer
    std::string expected;
};

inline const std::vector<CatalogueEntry>& catalogue() {
    static const std::vector<CatalogueEntry> entries = {
        {"wall32", false, "group <u,s,t>, |G| = 32, u^8 = s^2 = t^2 = 1, sus = u^3, tut = u^5", "Z/2"},
        {"ty-k4-kp", true, "Tambara-Yamagami over K4 (Kac-Paljutkin corepresentations)", "1"},
        {"s3", false, "symmetric group S3", "1"},
        {"s4", false, "symmetric group S4", "1"},
        {"k4", false, "Klein four-group", "Z/2"},
        {"z2^3", false, "elementary abelian (Z/2)^3", "Z/2 x Z/2 x Z/2"},
        {"z4xz2", false, "Z/4 x Z/2", "Z/2"},
        {"z2", false, "cyclic Z/2", "1"},
        {"z3", false, "cyclic Z/3", "1"},
        {"z4", false, "cyclic Z/4", "1"},
        {"z6", false, "cyclic Z/6", "1"},
        {"z8", false, "cyclic Z/8", "1"},
        {"q8", false, "quaternion group", ""},
        {"d4", false, "dihedral group of order 8", ""},
    };
    return entries;
}

inline const CatalogueEntry* catalogue_find(const std::string& name) {
    for (const auto& e : catalogue())
        if (e.name == name) return &e;
    return nullptr;
}

inline ConcreteModel build_concrete(const std::string& name) {
    if (name == "wall32") return wall_model();
    if (name == "s3") return s3_model();
    if (name == "s4") return s4_model();
    if (name == "q8") return q8_model();
    if (name == "d4") return d4_model();
    if (name == "k4") return abelian_model(name, {2, 2});
    if (name == "z2^3") return abelian_model(name, {2, 2, 2});
    if (name == "z4xz2") return abelian_model(name, {2, 4});
    if (name == "z2") return abelian_model(name, {2});
    if (name == "z3") return abelian_model(name, {3});
    if (name == "z4") return abelian_model(name, {4});
    if (name == "z6") return abelian_model(name, {6});
    if (name == "z8") return abelian_model(name, {8});
    throw std::invalid_argument("unknown concrete catalogue entry: " + name);
}

inline SkeletalCategory build_skeletal(const std::string& name) {
    if (name == "ty-k4-kp") return ty_kp_category();
    throw std::invalid_argument("unknown skeletal catalogue entry: " + name);
}

} // namespace invcoh
