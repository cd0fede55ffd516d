// Acceptance suite: one criterion per section, one pass/fail line each.
// Everything is exact; no tolerances appear anywhere.

#include <invcoh/invcoh.hpp>

#include <chrono>
#include <iostream>
#include <random>

using namespace invcoh;

namespace {

int failures = 0;

void report(int idx, const std::string& what, bool ok) {
    std::cout << "criterion " << idx << " [" << (ok ? "PASS" : "FAIL") << "] " << what << std::endl;
    if (!ok) ++failures;
}

struct WallRun {
    ConcreteModel model;
    CoherenceProblem problem;
    ClassifyResult unitary, invertible;
    WallRun()
        : model(wall_model()),
          problem(build_problem(solver_input(model))),
          unitary(compute_invariant_h2(solver_input(model), CoeffMode::unitary)),
          invertible(compute_invariant_h2(solver_input(model), CoeffMode::invertible)) {}
};

} // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();

    WallRun wall;

    // 1. Wall group result in both coefficient modes.
    report(1, "wall32 cohomology is Z/2 in unitary and invertible mode",
           wall.unitary.abelian && wall.unitary.presentation.str() == "Z/2" &&
               wall.invertible.abelian && wall.invertible.presentation.str() == "Z/2");

    // 2. Kac-Paljutkin / Tambara-Yamagami result in both modes.
    {
        SkeletalCategory c = ty_kp_category();
        SolverInput in = solver_input(c, "ty-k4-kp");
        ClassifyResult u = compute_invariant_h2(in, CoeffMode::unitary);
        ClassifyResult i = compute_invariant_h2(in, CoeffMode::invertible);
        report(2, "ty-k4-kp cohomology is trivial in both modes",
               u.reps.size() == 1 && u.presentation.trivial() && i.reps.size() == 1 &&
                   i.presentation.trivial());
    }

    // 3. Branch anatomy of the wall32 run.
    {
        bool ok = wall.unitary.branches.size() == 4;
        size_t surviving = 0;
        size_t nontrivial_classes = 0;
        for (const auto& b : wall.unitary.branches) {
            if (!b.survived) continue;
            ++surviving;
            bool trivial_psi = true;
            for (const auto& q : b.psi.exponent)
                if (q != 0) trivial_psi = false;
            if (!trivial_psi) nontrivial_classes = b.class_exponents.size();
        }
        ok = ok && surviving == 2 && nontrivial_classes == 1;
        report(3, "wall32 branch tree: 4 candidate characters, 2 survive, nontrivial branch has one class",
               ok);
    }

    // 4. Oracle agreement on abelian groups.
    {
        struct Case {
            const char* name;
            const char* expect;
        };
        bool ok = true;
        for (const Case& c : {Case{"k4", "Z/2"}, Case{"z2^3", "Z/2 x Z/2 x Z/2"},
                              Case{"z4xz2", "Z/2"}, Case{"z6", "1"}, Case{"z8", "1"}}) {
            ConcreteModel m = build_concrete(c.name);
            AbelianGroup formula = schur_multiplier(m.group.abelian_invariants());
            AbelianGroup brute = h2_brute(m.group, m.group.exponent());
            ClassifyResult u = compute_invariant_h2(solver_input(m), CoeffMode::unitary);
            ClassifyResult i = compute_invariant_h2(solver_input(m), CoeffMode::invertible);
            bool here = formula.str() == c.expect && brute == formula &&
                        u.abelian && u.presentation == formula &&
                        i.abelian && i.presentation == formula;
            if (!here) std::cout << "  (disagreement at " << c.name << ")" << std::endl;
            ok = ok && here;
        }
        report(4, "k4, z2^3, z4xz2, z6, z8: solver, gcd formula and brute force agree", ok);
    }

    // 5. Symmetric-group regression.
    {
        bool ok = true;
        for (const char* name : {"s3", "s4"}) {
            ConcreteModel m = build_concrete(name);
            for (CoeffMode mode : {CoeffMode::unitary, CoeffMode::invertible}) {
                ClassifyResult r = compute_invariant_h2(solver_input(m), mode);
                ok = ok && r.reps.size() == 1 && r.presentation.trivial();
            }
        }
        report(5, "s3 and s4 have trivial invariant cohomology in both modes", ok);
    }

    // 6. Independent certification of the wall32 representative.
    {
        bool ok = wall.unitary.reps.size() == 2;
        GroupCocycle om = assemble_group_cocycle(wall.model, wall.problem, wall.unitary.reps[1]);
        ok = ok && check_left_cocycle(om).ok;
        ok = ok && check_right_cocycle_via_star(om).ok;
        ok = ok && check_invariance(om).ok;
        ok = ok && check_counital(om).ok;
        ok = ok && check_unitary(om).ok;
        GroupCocycle unit = GroupCocycle::unit(wall.model.group, om.ctx);
        ok = ok && !cohomologous(wall.model, unit, om).has_value();
        GroupCocycle square = product(om, om);
        auto witness = cohomologous(wall.model, unit, square);
        ok = ok && witness.has_value();
        if (witness) ok = ok && equal(coboundary(wall.model, *witness), square);
        report(6, "wall32 representative passes all five exact checks; [1] != [Omega], [Omega^2] = [1] with witness",
               ok);
    }

    // 7. Coherence property suite.
    {
        bool pentagon_ok = true;
        // skeletal catalogue data (from the shipped file when present)
        {
            SkeletalCategory ty = ty_kp_category();
            pentagon_ok = pentagon_ok && pentagon_check(ty).empty();
        }
        for (const char* name : {"s3", "k4", "q8", "wall32"}) {
            SkeletalCategory c = to_skeletal(build_concrete(name));
            pentagon_ok = pentagon_ok && pentagon_check(c).empty();
        }

        bool snf_ok = true;
        {
            std::mt19937 rng(424242);
            std::uniform_int_distribution<int> dim(1, 5), val(-10, 10);
            for (int trial = 0; trial < 1000 && snf_ok; ++trial) {
                IntMatrix a(dim(rng), dim(rng));
                for (size_t i = 0; i < a.rows(); ++i)
                    for (size_t j = 0; j < a.cols(); ++j) a(i, j) = val(rng);
                SnfResult r = smith_normal_form(a);
                snf_ok = snf_ok && r.u * a * r.v == r.s;
                Int du = det(r.u), dv = det(r.v);
                snf_ok = snf_ok && (du == 1 || du == -1) && (dv == 1 || dv == -1);
                auto d = r.diagonal();
                for (size_t i = 0; i + 1 < d.size(); ++i)
                    if (d[i + 1] != 0) snf_ok = snf_ok && d[i] != 0 && d[i + 1] % d[i] == 0;
                for (size_t i = 0; i < r.s.rows(); ++i)
                    for (size_t j = 0; j < r.s.cols(); ++j)
                        if (i != j) snf_ok = snf_ok && r.s(i, j) == 0;
            }
        }

        bool fourier_ok = true;
        {
            std::mt19937 rng(31415);
            std::uniform_int_distribution<int> pick(0, 7);
            int done = 0;
            for (const char* name : {"z2", "k4", "s3"}) {
                ConcreteModel m = build_concrete(name);
                CoherenceProblem p = build_problem(solver_input(m), false);
                unsigned long cond =
                    (unsigned long)to_long(lcm(Int(8), Int((long)m.ctx->conductor)));
                CtxPtr ctx = make_context(cond);
                for (int trial = 0; trial < 34 && fourier_ok; ++trial, ++done) {
                    TensorStructure ts;
                    for (const auto& ch : p.channels) {
                        Matrix b = Matrix::identity(ctx, (size_t)ch.n);
                        if (!ch.counital)
                            for (long i = 0; i < ch.n; ++i)
                                b((size_t)i, (size_t)i) = root(ctx, pick(rng) * (long)(cond / 8));
                        ts.blocks.push_back(std::move(b));
                    }
                    GroupCocycle om = assemble_group_cocycle(m, p, ts);
                    TensorStructure back = block_decompose(m, p, om);
                    for (size_t c = 0; c < p.channels.size(); ++c)
                        fourier_ok = fourier_ok && back.blocks[c] == ts.blocks[c];
                }
                if (done >= 100) break;
            }
        }

        bool gauge_ok = true;
        {
            std::mt19937 rng(2024);
            std::uniform_int_distribution<int> num(0, 7);
            for (const char* name : {"k4", "z4xz2"}) {
                ConcreteModel m = build_concrete(name);
                SolverInput in = solver_input(m);
                CoherenceProblem p = build_problem(in);
                ClassifyResult r = compute_invariant_h2(in, CoeffMode::unitary);
                for (int trial = 0; trial < 8 && gauge_ok; ++trial) {
                    std::vector<Rat> h;
                    for (size_t i = 0; i + 1 < in.labels.size(); ++i) h.push_back(rat(num(rng), 8));
                    for (size_t cls = 0; cls < r.reps.size() && gauge_ok; ++cls) {
                        TensorStructure moved = apply_gauge(p, r.reps[cls], h);
                        for (size_t other = 0; other < r.reps.size(); ++other) {
                            bool coh = cohomologous_witness(p, r.reps[other], moved,
                                                            CoeffMode::unitary)
                                           .has_value();
                            gauge_ok = gauge_ok && coh == (other == cls);
                        }
                    }
                }
            }
            // and the wall32 nontrivial class stays put under a random gauge
            std::vector<Rat> h;
            for (size_t i = 0; i + 1 < wall.problem.in.labels.size(); ++i)
                h.push_back(rat(num(rng), 8));
            TensorStructure moved = apply_gauge(wall.problem, wall.unitary.reps[1], h);
            gauge_ok = gauge_ok &&
                       cohomologous_witness(wall.problem, wall.unitary.reps[1], moved,
                                            CoeffMode::unitary)
                           .has_value() &&
                       !cohomologous_witness(wall.problem, wall.unitary.reps[0], moved,
                                             CoeffMode::unitary)
                            .has_value();
        }

        if (!pentagon_ok) std::cout << "  (pentagon part failed)" << std::endl;
        if (!snf_ok) std::cout << "  (Smith normal form part failed)" << std::endl;
        if (!fourier_ok) std::cout << "  (Fourier round-trip part failed)" << std::endl;
        if (!gauge_ok) std::cout << "  (gauge-orbit part failed)" << std::endl;
        report(7, "pentagon, Smith normal form, Fourier round trip and gauge-orbit property suites",
               pentagon_ok && snf_ok && fourier_ok && gauge_ok);
    }

    // 8. Unitary class count injects into the invertible class count.
    {
        bool ok = true;
        for (const auto& e : catalogue()) {
            SolverInput in;
            if (e.skeletal) {
                in = solver_input(build_skeletal(e.name), e.name);
                ClassifyResult u = compute_invariant_h2(in, CoeffMode::unitary);
                ClassifyResult i = compute_invariant_h2(in, CoeffMode::invertible);
                ok = ok && u.reps.size() <= i.reps.size();
                if (e.name == "ty-k4-kp") ok = ok && u.reps.size() == i.reps.size();
            } else {
                ConcreteModel m = build_concrete(e.name);
                in = solver_input(m);
                ClassifyResult u = compute_invariant_h2(in, CoeffMode::unitary);
                ClassifyResult i = compute_invariant_h2(in, CoeffMode::invertible);
                ok = ok && u.reps.size() <= i.reps.size();
                if (e.name == "wall32") ok = ok && u.reps.size() == i.reps.size();
            }
            if (!ok) {
                std::cout << "  (count comparison failed at " << e.name << ")" << std::endl;
                break;
            }
        }
        report(8, "unitary-mode class count <= invertible-mode count on the whole catalogue, equal on the case studies",
               ok);
    }

    auto t1 = std::chrono::steady_clock::now();
    std::cout << "acceptance total: " << failures << " failure(s), "
              << std::chrono::duration<double>(t1 - t0).count() << "s" << std::endl;
    return failures == 0 ? 0 : 1;
}
