#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "folim/group.hpp"

using namespace folim;

namespace {
// cycle notation helpers (1-based points)
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
GroupPtr D8() { return FiniteGroup::make(4, {cyc(4, {{1, 2, 3, 4}}), cyc(4, {{1, 3}})}, "D8"); }

EltIdx find_elt(const GroupPtr& G, const Perm& p) {
    for (std::size_t i = 0; i < G->order(); ++i)
        if (G->perm(EltIdx(i)) == p) return EltIdx(i);
    throw std::runtime_error("element not found");
}

Subgroup gen(const GroupPtr& G, std::vector<Perm> ps) {
    std::vector<EltIdx> idx;
    for (auto& p : ps) idx.push_back(find_elt(G, p));
    return subgroup_generated(G, idx);
}
}  // namespace

TEST_CASE("make_group materializes deterministic element lists") {
    auto s3 = S3();
    CHECK(s3->order() == 6);
    auto s4 = S4();
    CHECK(s4->order() == 24);
    auto triv = FiniteGroup::make(1, {});
    CHECK(triv->order() == 1);
    // identity at index 0
    CHECK(s4->perm(0) == cyc(4, {}));
    // deterministic: rebuilding from other generators of the same group
    auto s3b = FiniteGroup::make(3, {cyc(3, {{1, 3, 2}}), cyc(3, {{2, 3}})});
    for (std::size_t i = 0; i < 6; ++i) CHECK(s3->perm(EltIdx(i)) == s3b->perm(EltIdx(i)));
    CHECK(s3->content_hash() == s3b->content_hash());
    CHECK_THROWS(FiniteGroup::make(3, {Perm{0, 0, 2}}));
}

TEST_CASE("sylow subgroups") {
    auto s4 = S4();
    CHECK(sylow(s4, 2).order() == 8);
    CHECK(sylow(s4, 3).order() == 3);
    auto s3 = S3();
    Subgroup syl3 = sylow(s3, 3);
    CHECK(syl3.order() == 3);
    CHECK(syl3 == gen(s3, {cyc(3, {{1, 2, 3}})}));
    auto c2 = FiniteGroup::make(2, {cyc(2, {{1, 2}})}, "C2");
    CHECK(sylow(c2, 3).order() == 1);
}

TEST_CASE("transporter") {
    auto s3 = S3();
    Subgroup c3 = gen(s3, {cyc(3, {{1, 2, 3}})});
    CHECK(transporter(c3, c3).size() == 6);  // normal subgroup
    Subgroup c2 = gen(s3, {cyc(3, {{1, 2}})});
    CHECK(transporter(c3, c2).empty());

    // brute-force oracle on S4
    auto s4 = S4();
    Subgroup h = gen(s4, {cyc(4, {{1, 2}})});
    Subgroup syl = sylow(s4, 2);
    std::vector<EltIdx> expect;
    for (std::size_t g = 0; g < 24; ++g) {
        bool ok = true;
        for (EltIdx x : h.elems)
            if (!syl.contains(s4->conj(EltIdx(g), x))) { ok = false; break; }
        if (ok) expect.push_back(EltIdx(g));
    }
    CHECK(transporter(h, syl) == expect);
}

TEST_CASE("transporter conjugation equivariance") {
    auto s4 = S4();
    Subgroup h = gen(s4, {cyc(4, {{1, 2}})});
    Subgroup k = sylow(s4, 2);
    auto tr = transporter(h, k);
    for (EltIdx g : {EltIdx(1), EltIdx(5), EltIdx(17)}) {
        Subgroup hg = conjugate_subgroup(h, g);
        Subgroup kg = conjugate_subgroup(k, g);
        auto thk = transporter(hg, kg);
        std::set<EltIdx> lhs(thk.begin(), thk.end());
        std::set<EltIdx> rhs;
        for (EltIdx t : tr) rhs.insert(s4->mul(s4->mul(g, t), s4->inv(g)));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("stabilizers") {
    auto s3 = S3();
    Subgroup c3 = gen(s3, {cyc(3, {{1, 2, 3}})});
    auto st = stabilizers(c3);
    CHECK(st.centralizer == c3);
    CHECK(st.normalizer.order() == 6);

    auto s4 = S4();
    Subgroup v = gen(s4, {cyc(4, {{1, 2}, {3, 4}}), cyc(4, {{1, 3}, {2, 4}})});
    auto stv = stabilizers(v);
    CHECK(stv.centralizer == v);
    CHECK(stv.normalizer.order() == 24);

    Subgroup whole = full_subgroup(s4);
    auto stw = stabilizers(whole);
    CHECK(stw.normalizer.order() == 24);
    CHECK(stw.centralizer.order() == 1);  // Z(S4) = 1
    CHECK(stw.center == stw.centralizer);
}

TEST_CASE("k_normalizer special cases") {
    auto s4 = S4();
    Subgroup v = gen(s4, {cyc(4, {{1, 2}, {3, 4}}), cyc(4, {{1, 3}, {2, 4}})});
    auto aut = automorphism_group(v);
    CHECK(aut.size() == 6);  // GL(2,2)
    // K = {id} -> centralizer
    CHECK(k_normalizer(v, {aut.front()}) == stabilizers(v).centralizer);
    // K = Aut(Q) -> normalizer
    CHECK(k_normalizer(v, aut) == stabilizers(v).normalizer);
    // chain (V < D8): N(sigma) = N(V) ∩ N(D8) = D8
    Subgroup d8 = sylow(s4, 2);
    REQUIRE(d8.contains_all(v));
    SubgroupChain sigma{{v, d8}};
    REQUIRE(sigma.validate().empty());
    Subgroup n = chain_normalizer(sigma);
    CHECK(n == d8);
    // against exhaustive oracle
    Subgroup oracle;
    oracle.parent = s4;
    for (std::size_t g = 0; g < 24; ++g) {
        if (conjugate_subgroup(v, EltIdx(g)) == v &&
            conjugate_subgroup(d8, EltIdx(g)) == d8)
            oracle.elems.push_back(EltIdx(g));
    }
    CHECK(n == oracle);
    // non-closed K rejected
    std::vector<Automorphism> bad;
    for (const auto& a : aut)
        if (a.table != aut.front().table) { bad.push_back(a); break; }
    bool closed = closed_under_composition(bad);
    if (!closed) CHECK_THROWS(k_normalizer(v, bad));
}

TEST_CASE("double cosets") {
    auto s3 = S3();
    Subgroup c3 = gen(s3, {cyc(3, {{1, 2, 3}})});
    std::vector<EltIdx> all;
    for (std::size_t i = 0; i < 6; ++i) all.push_back(EltIdx(i));
    CHECK(double_cosets(c3, all, c3).size() == 2);
    Subgroup triv = trivial_subgroup(s3);
    CHECK(double_cosets(triv, all, triv).size() == 6);
    Subgroup whole = full_subgroup(s3);
    CHECK(double_cosets(whole, all, triv).size() == 1);
    // representative list independent of input order
    std::vector<EltIdx> shuffled = {5, 3, 1, 0, 2, 4};
    CHECK(double_cosets(c3, all, c3) == double_cosets(c3, shuffled, c3));
    // not closed -> throws
    std::vector<EltIdx> partial = {0, 1};
    CHECK_THROWS(double_cosets(c3, partial, c3));
}

TEST_CASE("subgroup products") {
    auto s4 = S4();
    Subgroup p = gen(s4, {cyc(4, {{1, 2}})});
    Subgroup q = gen(s4, {cyc(4, {{3, 4}})});
    auto pq = subgroup_product(p, q);
    REQUIRE(pq.has_value());
    CHECK(pq->order() == 4);
    Subgroup big = sylow(s4, 2);
    CHECK(subgroup_product(p, big)->order() == 8);  // absorption P <= Q

    auto s3 = S3();
    Subgroup a = gen(s3, {cyc(3, {{1, 2}})});
    Subgroup b = gen(s3, {cyc(3, {{1, 3}})});
    CHECK(!subgroup_product(a, b).has_value());  // 4 elements, not a subgroup
}

TEST_CASE("subgroup classes") {
    auto s3 = S3();
    CHECK(all_subgroup_classes(s3).size() == 4);  // 1, C2, C3, S3
    auto c5 = FiniteGroup::make(5, {cyc(5, {{1, 2, 3, 4, 5}})}, "C5");
    CHECK(all_subgroup_classes(c5).size() == 2);
    auto d8 = D8();
    auto classes = all_subgroup_classes(d8);
    CHECK(classes.size() == 8);  // 1, Z, 2x C2-class, C4, 2x V-class, D8
    // exhaustive cross-check: every subgroup in exactly one class
    std::size_t total = 0;
    for (auto& c : classes) total += c.members.size();
    CHECK(total == all_subgroups(d8).size());
    // S4 has 30 subgroups in 11 classes
    auto s4 = S4();
    CHECK(all_subgroups(s4).size() == 30);
    CHECK(all_subgroup_classes(s4).size() == 11);
}

TEST_CASE("quotient group and p-core") {
    auto s4 = S4();
    Subgroup v = gen(s4, {cyc(4, {{1, 2}, {3, 4}}), cyc(4, {{1, 3}, {2, 4}})});
    auto q = quotient_group(full_subgroup(s4), v);
    CHECK(q.group->order() == 6);  // S4/V = S3
    CHECK(p_core(s4, 2) == v);
    auto s3 = S3();
    CHECK(p_core(s3, 3).order() == 3);
    CHECK(p_core(s3, 2).order() == 1);
}

TEST_CASE("automorphism groups") {
    auto s4 = S4();
    Subgroup d8 = sylow(s4, 2);
    CHECK(automorphism_group(d8).size() == 8);  // Aut(D8) = D8
    Subgroup c4;
    for (EltIdx e : d8.elems)
        if (s4->elt_order(e) == 4) {
            c4 = subgroup_generated(s4, {e});
            break;
        }
    CHECK(automorphism_group(c4).size() == 2);
    // chain stabilizer of (V < D8) inside Aut(D8)
    Subgroup v = gen(s4, {cyc(4, {{1, 2}, {3, 4}}), cyc(4, {{1, 3}, {2, 4}})});
    SubgroupChain sigma{{v, d8}};
    auto K = chain_stabilizer(sigma, automorphism_group(d8));
    CHECK(closed_under_composition(K));
    CHECK(k_normalizer(d8, K) == chain_normalizer(sigma));
}

TEST_CASE("group homomorphism validation") {
    auto s3 = S3();
    Subgroup c3 = gen(s3, {cyc(3, {{1, 2, 3}})});
    // inversion automorphism of C3
    GroupHom inv_hom{c3, c3, {}};
    inv_hom.images.resize(3);
    for (std::size_t i = 0; i < 3; ++i)
        inv_hom.images[i] = s3->inv(c3.elems[i]);
    CHECK(inv_hom.validate().empty());
    CHECK(inv_hom.is_injective());
    // corrupt one image
    GroupHom bad = inv_hom;
    bad.images[1] = bad.images[2];
    CHECK(!bad.validate().empty());
}

TEST_CASE("subgroup_as_group preserves order and arithmetic") {
    auto s4 = S4();
    Subgroup d8 = sylow(s4, 2);
    auto sub = subgroup_as_group(d8, "D8");
    CHECK(sub.group->order() == 8);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) {
            EltIdx parent_prod = s4->mul(sub.to_parent[i], sub.to_parent[j]);
            CHECK(sub.to_parent[std::size_t(sub.group->mul(EltIdx(i), EltIdx(j)))] ==
                  parent_prod);
        }
}
