#include <doctest.h>
#include <invcoh/catalogue.hpp>
#include <invcoh/cocycle.hpp>

#include <random>

using namespace invcoh;

namespace {
struct Fixture {
    ConcreteModel m;
    CoherenceProblem p;
    Fixture(const char* name, std::vector<long> inv = {})
        : m(inv.empty() ? build_concrete(name) : abelian_model(name, inv)),
          p(build_problem(solver_input(m))) {}
};
} // namespace

TEST_CASE("unit cocycle and coboundaries pass every check") {
    ConcreteModel m = abelian_model("z2", {2});
    GroupCocycle unit = GroupCocycle::unit(m.group, m.ctx);
    CHECK(check_left_cocycle(unit).ok);
    CHECK(check_right_cocycle_via_star(unit).ok);
    CHECK(check_invariance(unit).ok);
    CHECK(check_counital(unit).ok);
    CHECK(check_unitary(unit).ok);

    // h = (1, -1) is the group element u itself (grouplike), so delta(h) is
    // the unit cocycle; h = (1, i) produces the half-sum cocycle.
    {
        CtxPtr ctx = m.ctx;
        GroupCocycle du = coboundary(m, {Cyclo(ctx, Rat(1)), Cyclo(ctx, Rat(-1))});
        CHECK(equal(du, GroupCocycle::unit(m.group, ctx)));
    }
    CtxPtr ctx = make_context(4);
    std::vector<Cyclo> h = {Cyclo(ctx, Rat(1)), root(ctx, 1)};
    GroupCocycle d = coboundary(m, h);
    Rat half = rat(1, 2);
    CHECK(d.at(0, 0) == Cyclo(ctx, half));
    CHECK(d.at(0, 1) == Cyclo(ctx, half));
    CHECK(d.at(1, 0) == Cyclo(ctx, half));
    CHECK(d.at(1, 1) == Cyclo(ctx, -half));
    CHECK(check_left_cocycle(d).ok);
    CHECK(check_right_cocycle_via_star(d).ok);
    CHECK(check_invariance(d).ok);
    CHECK(check_counital(d).ok);
    CHECK(check_unitary(d).ok);
}

TEST_CASE("constructed failures are detected with witnesses") {
    // Z3, Omega = g (x) g fails the cocycle identity
    ConcreteModel m = abelian_model("z3", {3});
    GroupCocycle om = GroupCocycle::unit(m.group, m.ctx);
    om.at(0, 0) = Cyclo(m.ctx, Rat(0));
    om.at(1, 1) = Cyclo(m.ctx, Rat(1));
    auto r = check_left_cocycle(om);
    CHECK(!r.ok);
    CHECK(!r.witness.empty());
    CHECK(!check_right_cocycle_via_star(om).ok);

    // S3, Omega = t (x) t for a transposition t is not invariant
    ConcreteModel s3 = s3_model();
    int t = -1;
    for (size_t i = 1; i < s3.group.order(); ++i)
        if (s3.group.element_order((int)i) == 2) { t = (int)i; break; }
    REQUIRE(t > 0);
    GroupCocycle om2 = GroupCocycle::unit(s3.group, s3.ctx);
    om2.at(0, 0) = Cyclo(s3.ctx, Rat(0));
    om2.at(t, t) = Cyclo(s3.ctx, Rat(1));
    CHECK(!check_invariance(om2).ok);
}

TEST_CASE("fourier round trip on z2") {
    Fixture f("z2", {2});
    // J with sgn (x) sgn channel = -1 --> Omega = (e@e+e@u+u@e-u@u)/2
    TensorStructure ts = trivial_structure(f.p);
    int chan = f.p.channel_of(1, 1, 0);
    REQUIRE(chan >= 0);
    ts.blocks[chan](0, 0) = Cyclo(f.m.ctx, Rat(-1));
    GroupCocycle om = assemble_group_cocycle(f.m, f.p, ts);
    Rat half = rat(1, 2);
    CHECK(om.at(0, 0) == Cyclo(f.m.ctx, half));
    CHECK(om.at(1, 1) == Cyclo(f.m.ctx, -half));
    TensorStructure back = block_decompose(f.m, f.p, om);
    for (size_t c = 0; c < f.p.channels.size(); ++c) CHECK(back.blocks[c] == ts.blocks[c]);
}

TEST_CASE("fourier round trip on random structures") {
    std::mt19937 rng(2718);
    for (const char* name : {"z2", "k4", "s3"}) {
        Fixture f(name);
        std::uniform_int_distribution<int> pick(0, 7);
        unsigned long cond = (unsigned long)to_long(lcm(Int(8), Int((long)f.m.ctx->conductor)));
        for (int trial = 0; trial < 5; ++trial) {
            // random diagonal-channel root-of-unity assignment (not necessarily
            // coherent; the transform pair is linear so coherence is irrelevant)
            CtxPtr ctx = make_context(cond);
            TensorStructure ts;
            for (const auto& ch : f.p.channels) {
                Matrix b = Matrix::identity(ctx, (size_t)ch.n);
                if (!ch.counital)
                    for (long i = 0; i < ch.n; ++i)
                        b((size_t)i, (size_t)i) = root(ctx, pick(rng) * (long)(cond / 8));
                ts.blocks.push_back(std::move(b));
            }
            GroupCocycle om = assemble_group_cocycle(f.m, f.p, ts);
            TensorStructure back = block_decompose(f.m, f.p, om);
            for (size_t c = 0; c < f.p.channels.size(); ++c) CHECK(back.blocks[c] == ts.blocks[c]);
        }
    }
}

TEST_CASE("delta is a homomorphism into invariant cocycles") {
    Fixture f("k4", {2, 2});
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> pick(0, 3);
    CtxPtr ctx = make_context(4);
    for (int trial = 0; trial < 4; ++trial) {
        std::vector<Cyclo> h1, h2, h12;
        for (size_t i = 0; i < f.m.nlabels(); ++i) {
            // normalized central elements: unit-component scalar fixed to 1
            Cyclo a = i == f.p.in.unit ? Cyclo(ctx, Rat(1)) : root(ctx, pick(rng));
            Cyclo b = i == f.p.in.unit ? Cyclo(ctx, Rat(1)) : root(ctx, pick(rng));
            h1.push_back(a);
            h2.push_back(b);
            h12.push_back(a * b);
        }
        GroupCocycle d1 = coboundary(f.m, h1);
        GroupCocycle d2 = coboundary(f.m, h2);
        GroupCocycle d12 = coboundary(f.m, h12);
        CHECK(equal(product(d1, d2), d12));
        CHECK(check_left_cocycle(d1).ok);
        CHECK(check_invariance(d1).ok);
        CHECK(check_counital(d1).ok);
    }
}

TEST_CASE("cohomologous decisions with witnesses") {
    Fixture f("z2", {2});
    GroupCocycle unit = GroupCocycle::unit(f.m.group, f.m.ctx);
    auto self = cohomologous(f.m, unit, unit);
    REQUIRE(self.has_value());
    for (const auto& s : *self) CHECK(s.is_one());

    std::vector<Cyclo> h = {Cyclo(f.m.ctx, Rat(1)), root(make_context(4), 1)};
    h[0] = embed(h[0], make_context(4));
    GroupCocycle d = coboundary(f.m, h);
    auto w = cohomologous(f.m, unit, d);
    REQUIRE(w.has_value());
    // verify the witness actually produces d
    GroupCocycle built = coboundary(f.m, *w);
    CHECK(equal(built, d));
}
