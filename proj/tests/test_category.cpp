#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "folim/orbitcat.hpp"

using namespace folim;

namespace {
Perm cyc(uint32_t deg, std::initializer_list<std::initializer_list<int>> cycles) {
    Perm p(deg);
    for (uint32_t i = 0; i < deg; ++i) p[i] = uint16_t(i);
    for (auto& c : cycles) {
        std::vector<int> v(c);
        for (std::size_t i = 0; i < v.size(); ++i)
            p[std::size_t(v[i] - 1)] = uint16_t(v[(i + 1) % v.size()] - 1);
    }
    return p;
}
GroupPtr S3() { return FiniteGroup::make(3, {cyc(3, {{1, 2, 3}}), cyc(3, {{1, 2}})}, "S3"); }
GroupPtr S4() { return FiniteGroup::make(4, {cyc(4, {{1, 2, 3, 4}}), cyc(4, {{1, 2}})}, "S4"); }
}  // namespace

TEST_CASE("transporter category of S3 over the C3 class") {
    auto s3 = S3();
    Subgroup c3 = sylow(s3, 3);
    auto T = build_transporter(full_subgroup(s3), {c3});
    CHECK(T.cat->n_obj() == 1);
    CHECK(T.cat->hom[0][0].size() == 6);  // normal subgroup: all of S3
    CHECK(T.cat->check().empty());

    // empty collection -> empty category
    auto E = build_transporter(full_subgroup(s3), {});
    CHECK(E.cat->n_obj() == 0);
    CHECK(E.cat->check().empty());

    // trivial group -> one object, one morphism
    auto triv = FiniteGroup::make(1, {});
    auto Tt = build_transporter(full_subgroup(triv), {full_subgroup(triv)});
    CHECK(Tt.cat->n_mor() == 1);
}

TEST_CASE("orbit and fusion-orbit categories of S3 at p=3") {
    auto s3 = S3();
    Subgroup c3 = sylow(s3, 3);
    auto O = build_orbit(full_subgroup(s3), {c3});
    CHECK(O.cat->hom[0][0].size() == 2);  // C3\S3
    CHECK(O.cat->check().empty());
    auto FO = build_fusion_orbit(full_subgroup(s3), {c3});
    CHECK(FO.cat->hom[0][0].size() == 2);  // C3\S3/C3
    CHECK(FO.cat->check().empty());
    auto F = build_fusion(full_subgroup(s3), {c3});
    CHECK(F.cat->hom[0][0].size() == 2);  // S3/C3 (= Aut_F(C3))
    CHECK(F.cat->check().empty());
}

TEST_CASE("double-coset composition is independent of representatives") {
    auto s4 = S4();
    Subgroup d8 = sylow(s4, 2);
    Subgroup v = subgroup_generated(
        s4, {EltIdx(0)});
    // build V explicitly
    std::vector<EltIdx> gens;
    for (std::size_t i = 0; i < 24; ++i) {
        auto pm = s4->perm(EltIdx(i));
        if (pm == cyc(4, {{1, 2}, {3, 4}}) || pm == cyc(4, {{1, 3}, {2, 4}}))
            gens.push_back(EltIdx(i));
    }
    v = subgroup_generated(s4, gens);
    REQUIRE(v.order() == 4);
    auto FO = build_fusion_orbit(full_subgroup(s4), {v, d8});
    CHECK(FO.cat->check().empty());
    // recompute every composite from non-canonical representatives
    const FiniteCategory& c = *FO.cat;
    for (int g2 = 0; g2 < c.n_mor(); ++g2)
        for (int g1 = 0; g1 < c.n_mor(); ++g1) {
            if (!c.composable(g2, g1)) continue;
            int x = c.msrc[g1];
            int z = c.mdst[g2];
            // pick alternative representatives inside each double coset
            auto alt_reps = [&](int t) {
                const Subgroup& K = FO.objects[std::size_t(c.mdst[t])];
                const Subgroup& H = FO.objects[std::size_t(c.msrc[t])];
                Subgroup CH = stabilizers(H).centralizer;
                std::vector<EltIdx> reps;
                EltIdx base = FO.token_rep[std::size_t(t)];
                for (EltIdx k : K.elems)
                    for (EltIdx ce : CH.elems)
                        reps.push_back(s4->mul(s4->mul(k, base), ce));
                return reps;
            };
            int expect = c.compose(g2, g1);
            for (EltIdx r2 : alt_reps(g2))
                for (EltIdx r1 : alt_reps(g1)) {
                    int got = FO.token_of(x, z, s4->mul(r2, r1));
                    REQUIRE(got == expect);
                }
        }
}

TEST_CASE("fusion orbit is a quotient of both orbit and fusion") {
    auto s3 = S3();
    Subgroup c3 = sylow(s3, 3);
    std::vector<Subgroup> objs = {c3};
    Subgroup amb = full_subgroup(s3);
    auto T = build_transporter(amb, objs);
    auto O = build_orbit(amb, objs);
    auto F = build_fusion(amb, objs);
    auto FO = build_fusion_orbit(amb, objs);
    auto qTO = quotient_functor(T, O);
    auto qTF = quotient_functor(T, F);
    auto qOFO = quotient_functor(O, FO);
    auto qFFO = quotient_functor(F, FO);
    CHECK(qTO.check().empty());
    CHECK(qTF.check().empty());
    CHECK(qOFO.check().empty());
    CHECK(qFFO.check().empty());
    auto left = compose_functors(qOFO, qTO);
    auto right = compose_functors(qFFO, qTF);
    CHECK(left.omap == right.omap);
    CHECK(left.mmap == right.mmap);
}

TEST_CASE("opposite is an involution") {
    auto s3 = S3();
    auto O = build_orbit(full_subgroup(s3), {sylow(s3, 3), sylow(s3, 2)});
    FiniteCategory op = opposite(*O.cat);
    CHECK(op.check().empty());
    FiniteCategory opop = opposite(op);
    CHECK(opop.msrc == O.cat->msrc);
    CHECK(opop.mdst == O.cat->mdst);
    CHECK(opop.comp == O.cat->comp);
}

TEST_CASE("skeleton collapses conjugate objects") {
    auto s3 = S3();
    // all three C2 subgroups of S3 are conjugate -> one skeleton object
    std::vector<Subgroup> c2s;
    for (std::size_t i = 0; i < 6; ++i)
        if (s3->elt_order(EltIdx(i)) == 2)
            c2s.push_back(subgroup_generated(s3, {EltIdx(i)}));
    REQUIRE(c2s.size() == 3);
    auto T = build_transporter(full_subgroup(s3), c2s);
    auto sk = skeleton(*T.cat);
    CHECK(sk.cat->n_obj() == 1);
    CHECK(sk.cat->check().empty());
    CHECK(sk.to_skeleton.check().empty());
    CHECK(sk.from_skeleton.check().empty());

    // discrete category: no collapsing
    FiniteCategory disc = poset_category({"a", "b", "c"},
                                         [](int x, int y) { return x == y; });
    CHECK(skeleton(disc).cat->n_obj() == 3);

    // already-skeletal category maps identically
    auto O = build_orbit(full_subgroup(s3), {sylow(s3, 3)});
    auto sk2 = skeleton(*O.cat);
    CHECK(sk2.cat->n_obj() == 1);
    CHECK(sk2.cat->n_mor() == O.cat->n_mor());
}

TEST_CASE("check_category reports corrupted composites") {
    auto s3 = S3();
    auto O = build_orbit(full_subgroup(s3), {sylow(s3, 3)});
    FiniteCategory bad = *O.cat;
    // corrupt one composite entry
    int f = bad.hom[0][0][1];
    bad.set_compose(f, f, f == bad.hom[0][0][0] ? bad.hom[0][0][1] : bad.hom[0][0][0]);
    std::string err = bad.check();
    CHECK(!err.empty());
}

TEST_CASE("poset categories") {
    // reversed order via opposite
    FiniteCategory chain = poset_category(
        {"0", "1", "2"}, [](int x, int y) { return x >= y; });
    CHECK(chain.check().empty());
    CHECK(chain.n_mor() == 6);
    FiniteCategory rev = opposite(chain);
    CHECK(rev.check().empty());
    CHECK(rev.hom[0][2].size() == 1);
}

TEST_CASE("subgroup inclusion functor i_H^G") {
    auto s3 = S3();
    Subgroup c3 = sylow(s3, 3);
    Subgroup amb_h = c3;  // H = C3
    auto OH = build_orbit(amb_h, {c3});
    auto OG = build_orbit(full_subgroup(s3), {c3});
    auto inc = subgroup_inclusion_functor(OH, OG);
    CHECK(inc.check().empty());
    CHECK(OH.cat->hom[0][0].size() == 1);  // C3\C3
    // j_H^G on fusion orbit categories
    auto FH = build_fusion_orbit(amb_h, {c3});
    auto FG = build_fusion_orbit(full_subgroup(s3), {c3});
    auto j = subgroup_inclusion_functor(FH, FG);
    CHECK(j.check().empty());
    CHECK(FH.cat->hom[0][0].size() == 1);
    CHECK(FG.cat->hom[0][0].size() == 2);
    // pr o i = j o pr (the commuting square)
    auto OHf = build_fusion_orbit(amb_h, {c3});
    auto prH = quotient_functor(OH, OHf);
    auto prG = quotient_functor(OG, FG);
    auto left = compose_functors(prG, inc);
    auto jj = subgroup_inclusion_functor(OHf, FG);
    auto right = compose_functors(jj, prH);
    CHECK(left.omap == right.omap);
    CHECK(left.mmap == right.mmap);
}
