#include "folim/orbitcat.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace folim {

namespace {

// least element of the token coset containing g, per kind
EltIdx canonical_rep(const GroupPtr& G, GroupCatKind kind, const Subgroup& K_target,
                     const Subgroup& C_source, EltIdx g) {
    switch (kind) {
        case GroupCatKind::transporter:
            return g;
        case GroupCatKind::orbit: {
            EltIdx best = G->mul(K_target.elems[0], g);
            for (EltIdx k : K_target.elems) best = std::min(best, G->mul(k, g));
            return best;
        }
        case GroupCatKind::fusion: {
            EltIdx best = G->mul(g, C_source.elems[0]);
            for (EltIdx c : C_source.elems) best = std::min(best, G->mul(g, c));
            return best;
        }
        case GroupCatKind::fusion_orbit: {
            EltIdx best = g;
            for (EltIdx k : K_target.elems) {
                EltIdx kg = G->mul(k, g);
                for (EltIdx c : C_source.elems) best = std::min(best, G->mul(kg, c));
            }
            return best;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

int GroupCat::token_of(int x, int y, EltIdx g) const {
    const GroupPtr& G = ambient.parent;
    Subgroup Cs;
    if (kind == GroupCatKind::fusion || kind == GroupCatKind::fusion_orbit)
        Cs = intersect(ambient, stabilizers(objects[std::size_t(x)]).centralizer);
    else
        Cs = trivial_subgroup(G);
    EltIdx rep = canonical_rep(G, kind, objects[std::size_t(y)], Cs, g);
    for (int t : cat->hom[std::size_t(x)][std::size_t(y)])
        if (token_rep[std::size_t(t)] == rep) return t;
    throw std::logic_error("token_of: no token with this representative");
}

GroupCat build_group_category(const Subgroup& ambient,
                              const std::vector<Subgroup>& objects,
                              GroupCatKind kind) {
    const GroupPtr& G = ambient.parent;
    GroupCat gc;
    gc.ambient = ambient;
    gc.kind = kind;
    gc.objects = objects;
    gc.cat = std::make_shared<FiniteCategory>();
    FiniteCategory& c = *gc.cat;
    const int N = int(objects.size());
    c.obj_labels.resize(N);
    for (int i = 0; i < N; ++i) {
        c.obj_labels[i] = objects[std::size_t(i)].parent->name().empty()
                              ? "H" + std::to_string(i)
                              : objects[std::size_t(i)].parent->name() + ":H" +
                                    std::to_string(i);
        c.obj_labels[i] += "(" + std::to_string(objects[std::size_t(i)].order()) + ")";
    }
    c.hom.assign(N, std::vector<std::vector<int>>(N));

    // centralizers within the ambient subgroup (sources), used by fusion kinds
    std::vector<Subgroup> cent(N);
    for (int i = 0; i < N; ++i) {
        if (kind == GroupCatKind::fusion || kind == GroupCatKind::fusion_orbit)
            cent[i] = intersect(ambient, stabilizers(objects[std::size_t(i)]).centralizer);
        else
            cent[i] = trivial_subgroup(G);
    }

    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y) {
            // transporter within the ambient subgroup
            std::vector<EltIdx> trans;
            for (EltIdx g : ambient.elems) {
                bool ok = true;
                for (EltIdx h : objects[std::size_t(x)].elems)
                    if (!objects[std::size_t(y)].contains(G->conj(g, h))) {
                        ok = false;
                        break;
                    }
                if (ok) trans.push_back(g);
            }
            std::map<EltIdx, int> by_rep;
            for (EltIdx g : trans) {
                EltIdx rep = canonical_rep(G, kind, objects[std::size_t(y)],
                                           cent[std::size_t(x)], g);
                if (!by_rep.count(rep)) by_rep[rep] = 0;
            }
            for (auto& [rep, id] : by_rep) {
                id = int(c.msrc.size());
                c.msrc.push_back(x);
                c.mdst.push_back(y);
                c.hom[std::size_t(x)][std::size_t(y)].push_back(id);
                gc.token_rep.push_back(rep);
            }
        }

    c.identity.resize(N);
    for (int x = 0; x < N; ++x) c.identity[x] = gc.token_of(x, x, 0);

    c.init_comp();
    for (int g2 = 0; g2 < c.n_mor(); ++g2)
        for (int g1 = 0; g1 < c.n_mor(); ++g1) {
            if (!c.composable(g2, g1)) continue;
            EltIdx prod = G->mul(gc.token_rep[std::size_t(g2)],
                                 gc.token_rep[std::size_t(g1)]);
            c.set_compose(g2, g1,
                          gc.token_of(c.msrc[g1], c.mdst[g2], prod));
        }
    return gc;
}

GroupCat build_transporter(const Subgroup& a, const std::vector<Subgroup>& o) {
    return build_group_category(a, o, GroupCatKind::transporter);
}
GroupCat build_orbit(const Subgroup& a, const std::vector<Subgroup>& o) {
    return build_group_category(a, o, GroupCatKind::orbit);
}
GroupCat build_fusion(const Subgroup& a, const std::vector<Subgroup>& o) {
    return build_group_category(a, o, GroupCatKind::fusion);
}
GroupCat build_fusion_orbit(const Subgroup& a, const std::vector<Subgroup>& o) {
    return build_group_category(a, o, GroupCatKind::fusion_orbit);
}

GroupCat group_as_category(const GroupPtr& P) {
    Subgroup full = full_subgroup(P);
    return build_transporter(full, {full});
}

bool conjugation_closed(const Subgroup& ambient, const std::vector<Subgroup>& members) {
    std::set<std::vector<EltIdx>> set;
    for (const Subgroup& m : members) set.insert(m.elems);
    for (const Subgroup& m : members)
        for (EltIdx g : ambient.elems)
            if (!set.count(conjugate_subgroup(m, g).elems)) return false;
    return true;
}

CatFunctor quotient_functor(const GroupCat& finer, const GroupCat& coarser) {
    if (finer.objects.size() != coarser.objects.size())
        throw std::invalid_argument("quotient_functor: object lists differ");
    for (std::size_t i = 0; i < finer.objects.size(); ++i)
        if (!(finer.objects[i] == coarser.objects[i]))
            throw std::invalid_argument("quotient_functor: object lists differ");
    CatFunctor F;
    F.src = finer.cat.get();
    F.dst = coarser.cat.get();
    if (finer.kind == GroupCatKind::orbit &&
        coarser.kind == GroupCatKind::fusion_orbit)
        F.kind = CatFunctor::Kind::projection;
    F.omap.resize(std::size_t(finer.cat->n_obj()));
    for (int i = 0; i < finer.cat->n_obj(); ++i) F.omap[std::size_t(i)] = i;
    F.mmap.resize(std::size_t(finer.cat->n_mor()));
    for (int m = 0; m < finer.cat->n_mor(); ++m)
        F.mmap[std::size_t(m)] = coarser.token_of(
            finer.cat->msrc[m], finer.cat->mdst[m], finer.token_rep[std::size_t(m)]);
    return F;
}

CatFunctor subgroup_inclusion_functor(const GroupCat& small, const GroupCat& big) {
    if (small.kind != big.kind)
        throw std::invalid_argument("inclusion functor needs matching kinds");
    CatFunctor F;
    F.src = small.cat.get();
    F.dst = big.cat.get();
    F.kind = small.kind == GroupCatKind::orbit ? CatFunctor::Kind::orbit_incl
             : small.kind == GroupCatKind::fusion_orbit
                 ? CatFunctor::Kind::fusion_incl
                 : CatFunctor::Kind::generic;
    F.omap.resize(std::size_t(small.cat->n_obj()));
    for (int i = 0; i < small.cat->n_obj(); ++i) {
        int found = -1;
        for (int j = 0; j < big.cat->n_obj(); ++j)
            if (big.objects[std::size_t(j)] == small.objects[std::size_t(i)]) {
                found = j;
                break;
            }
        if (found < 0)
            throw std::invalid_argument("inclusion functor: object missing in target");
        F.omap[std::size_t(i)] = found;
    }
    F.mmap.resize(std::size_t(small.cat->n_mor()));
    for (int m = 0; m < small.cat->n_mor(); ++m)
        F.mmap[std::size_t(m)] =
            big.token_of(F.omap[std::size_t(small.cat->msrc[m])],
                         F.omap[std::size_t(small.cat->mdst[m])],
                         small.token_rep[std::size_t(m)]);
    return F;
}

FiniteCategory poset_category(const std::vector<std::string>& labels,
                              const std::function<bool(int, int)>& leq) {
    FiniteCategory c;
    const int N = int(labels.size());
    c.obj_labels = labels;
    c.hom.assign(N, std::vector<std::vector<int>>(N));
    std::vector<std::vector<int>> mid(N, std::vector<int>(N, -1));
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y)
            if (leq(x, y)) {
                mid[std::size_t(x)][std::size_t(y)] = int(c.msrc.size());
                c.msrc.push_back(x);
                c.mdst.push_back(y);
                c.hom[std::size_t(x)][std::size_t(y)].push_back(
                    mid[std::size_t(x)][std::size_t(y)]);
            }
    c.identity.resize(N);
    for (int x = 0; x < N; ++x) {
        if (mid[std::size_t(x)][std::size_t(x)] < 0)
            throw std::invalid_argument("poset relation is not reflexive");
        c.identity[x] = mid[std::size_t(x)][std::size_t(x)];
    }
    c.init_comp();
    for (int g = 0; g < c.n_mor(); ++g)
        for (int f = 0; f < c.n_mor(); ++f) {
            if (!c.composable(g, f)) continue;
            int gf = mid[std::size_t(c.msrc[f])][std::size_t(c.mdst[g])];
            if (gf < 0) throw std::invalid_argument("poset relation not transitive");
            c.set_compose(g, f, gf);
        }
    return c;
}

}  // namespace folim
