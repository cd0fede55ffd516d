#include <doctest.h>
#include <invcoh/invcoh.hpp>

#include <fstream>

using namespace invcoh;

TEST_CASE("group file round trip, both forms") {
    ConcreteModel m = s3_model();
    std::ostringstream os;
    io::write_group(os, m.group);
    std::istringstream is(os.str());
    FiniteGroup g = io::read_group(is);
    CHECK(g.order() == 6);
    std::ostringstream os2;
    io::write_group(os2, g);
    CHECK(os.str() == os2.str());

    std::istringstream cyc("group\ngenerators\n(0 1 2)\n(0 1)\n");
    FiniteGroup g2 = io::read_group(cyc);
    CHECK(g2.order() == 6);
    CHECK(!g2.is_abelian());

    std::istringstream bad("group order=6\ngenerators\n(0 1)\n");
    CHECK_THROWS(io::read_group(bad));
}

TEST_CASE("irrep file round trip with word evaluation") {
    ConcreteModel m = q8_model();
    std::ostringstream os;
    io::write_irreps(os, m.group, m.irreps);
    std::istringstream is(os.str());
    std::vector<Irrep> back = io::read_irreps(is, m.group);
    REQUIRE(back.size() == m.irreps.size());
    for (size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].label() == m.irreps[i].label());
        for (size_t g = 0; g < m.group.order(); ++g)
            CHECK(back[i].at((int)g) == m.irreps[i].at((int)g));
    }
}

TEST_CASE("skeletal file matches the shipped catalogue data") {
    SkeletalCategory c = ty_kp_category();
    std::ifstream f("data/ty-k4-kp.fusion");
    if (!f.good()) f = std::ifstream("../data/ty-k4-kp.fusion");
    REQUIRE(f.good());
    SkeletalCategory fromfile = io::read_skeletal(f);
    CHECK(fromfile.labels == c.labels);
    CHECK(fromfile.fus.mult == c.fus.mult);
    REQUIRE(fromfile.f_table.size() == c.f_table.size());
    for (const auto& [key, m] : c.f_table) CHECK(fromfile.f_table.at(key) == m);
    CHECK(pentagon_check(fromfile).empty());
}

TEST_CASE("cocycle file round trip") {
    ConcreteModel m = abelian_model("z2", {2});
    CtxPtr ctx = make_context(4);
    GroupCocycle d = coboundary(m, {Cyclo(ctx, Rat(1)), root(ctx, 1)});
    std::ostringstream os;
    io::write_cocycle(os, "z2", d);
    std::istringstream is(os.str());
    std::string name;
    GroupCocycle back = io::read_cocycle(is, m.group, &name);
    CHECK(name == "z2");
    CHECK(equal(back, d));
    std::ostringstream os2;
    io::write_cocycle(os2, name, back);
    CHECK(os.str() == os2.str());
}

TEST_CASE("tensor file round trip") {
    ConcreteModel m = abelian_model("k4", {2, 2});
    SolverInput in = solver_input(m);
    CoherenceProblem p = build_problem(in);
    ClassifyResult r = compute_invariant_h2(in, CoeffMode::unitary);
    REQUIRE(r.reps.size() == 2);
    std::ostringstream os;
    io::write_tensor(os, p, r.reps[1], "k4", CoeffMode::unitary);
    std::istringstream is(os.str());
    std::string name, mode;
    TensorStructure back = io::read_tensor(is, p, &name, &mode);
    CHECK(name == "k4");
    CHECK(mode == "unitary");
    for (size_t c = 0; c < p.channels.size(); ++c) CHECK(back.blocks[c] == r.reps[1].blocks[c]);
    std::ostringstream os2;
    io::write_tensor(os2, p, back, name, CoeffMode::unitary);
    CHECK(os.str() == os2.str());
}

TEST_CASE("corrupted cocycle file fails verification with a witness") {
    ConcreteModel m = abelian_model("k4", {2, 2});
    SolverInput in = solver_input(m);
    CoherenceProblem p = build_problem(in);
    ClassifyResult res = compute_invariant_h2(in, CoeffMode::unitary);
    REQUIRE(res.reps.size() == 2);
    GroupCocycle om = assemble_group_cocycle(m, p, res.reps[1]);
    REQUIRE(check_left_cocycle(om).ok);
    // one sign flip on a nonzero entry, through the file format
    std::ostringstream os;
    io::write_cocycle(os, "k4", om);
    std::string text = os.str();
    size_t line2 = text.find('\n') + 1;
    size_t eol = text.find('\n', line2);
    std::string entry = text.substr(line2, eol - line2);
    size_t lastsp = entry.rfind(' ');
    std::string flipped = entry.substr(0, lastsp + 1) + "-(" + entry.substr(lastsp + 1) + ")";
    text = text.substr(0, line2) + flipped + text.substr(eol);
    std::istringstream is(text);
    GroupCocycle bad = io::read_cocycle(is, m.group, nullptr);
    auto r = check_left_cocycle(bad);
    CHECK(!r.ok);
    CHECK(!r.witness.empty());
}
