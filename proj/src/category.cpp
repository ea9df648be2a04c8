#include "folim/category.hpp"

#include <memory>
#include <stdexcept>

namespace folim {

namespace {
uint64_t fnv1a64(const void* data, std::size_t n, uint64_t h) {
    const uint8_t* b = static_cast<const uint8_t*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= b[i];
        h *= 1099511628211ull;
    }
    return h;
}
}  // namespace

std::string FiniteCategory::check() const {
    const int M = n_mor();
    if (int(identity.size()) != n_obj()) return "identity list size mismatch";
    for (int x = 0; x < n_obj(); ++x) {
        int e = identity[x];
        if (e < 0 || e >= M || msrc[e] != x || mdst[e] != x)
            return "bad identity at object " + obj_labels[x];
    }
    for (int x = 0; x < n_obj(); ++x)
        for (int y = 0; y < n_obj(); ++y)
            for (int f : hom[x][y])
                if (msrc[f] != x || mdst[f] != y)
                    return "hom table inconsistent at morphism " + std::to_string(f);
    for (int f = 0; f < M; ++f) {
        if (compose(identity[mdst[f]], f) != f)
            return "left identity fails at morphism " + std::to_string(f);
        if (compose(f, identity[msrc[f]]) != f)
            return "right identity fails at morphism " + std::to_string(f);
    }
    for (int g = 0; g < M; ++g)
        for (int f = 0; f < M; ++f) {
            int gf = compose(g, f);
            if (composable(g, f)) {
                if (gf < 0 || msrc[gf] != msrc[f] || mdst[gf] != mdst[g])
                    return "composite missing or mistyped for (" +
                           std::to_string(g) + "," + std::to_string(f) + ")";
            } else if (gf != -1)
                return "composite defined for non-composable pair";
        }
    for (int h = 0; h < M; ++h)
        for (int g = 0; g < M; ++g) {
            if (!composable(h, g)) continue;
            int hg = compose(h, g);
            for (int f = 0; f < M; ++f) {
                if (!composable(g, f)) continue;
                if (compose(hg, f) != compose(h, compose(g, f)))
                    return "associativity fails at triple (" + std::to_string(h) +
                           "," + std::to_string(g) + "," + std::to_string(f) + ")";
            }
        }
    return "";
}

uint64_t FiniteCategory::composition_hash() const {
    uint64_t h = 1469598103934665603ull;
    int m = n_mor();
    h = fnv1a64(&m, sizeof(m), h);
    h = fnv1a64(msrc.data(), msrc.size() * sizeof(int), h);
    h = fnv1a64(mdst.data(), mdst.size() * sizeof(int), h);
    h = fnv1a64(comp.data(), comp.size() * sizeof(int32_t), h);
    return h;
}

std::string CatFunctor::check() const {
    if (int(omap.size()) != src->n_obj() || int(mmap.size()) != src->n_mor())
        return "functor map size mismatch";
    for (int f = 0; f < src->n_mor(); ++f) {
        int ff = mmap[f];
        if (ff < 0 || ff >= dst->n_mor()) return "morphism image out of range";
        if (dst->msrc[ff] != omap[src->msrc[f]] || dst->mdst[ff] != omap[src->mdst[f]])
            return "functor breaks sources/targets at " + std::to_string(f);
    }
    for (int x = 0; x < src->n_obj(); ++x)
        if (mmap[src->identity[x]] != dst->identity[omap[x]])
            return "functor breaks identity at object " + std::to_string(x);
    for (int g = 0; g < src->n_mor(); ++g)
        for (int f = 0; f < src->n_mor(); ++f) {
            if (!src->composable(g, f)) continue;
            if (mmap[src->compose(g, f)] != dst->compose(mmap[g], mmap[f]))
                return "functor breaks composition at (" + std::to_string(g) + "," +
                       std::to_string(f) + ")";
        }
    return "";
}

CatFunctor identity_functor(const FiniteCategory& c) {
    CatFunctor F;
    F.src = &c;
    F.dst = &c;
    F.omap.resize(c.n_obj());
    F.mmap.resize(c.n_mor());
    for (int i = 0; i < c.n_obj(); ++i) F.omap[i] = i;
    for (int i = 0; i < c.n_mor(); ++i) F.mmap[i] = i;
    F.kind = CatFunctor::Kind::equivalence;
    return F;
}

CatFunctor compose_functors(const CatFunctor& g, const CatFunctor& f) {
    if (f.dst != g.src) throw std::invalid_argument("functors not composable");
    CatFunctor h;
    h.src = f.src;
    h.dst = g.dst;
    h.omap.resize(f.omap.size());
    h.mmap.resize(f.mmap.size());
    for (std::size_t i = 0; i < f.omap.size(); ++i) h.omap[i] = g.omap[f.omap[i]];
    for (std::size_t i = 0; i < f.mmap.size(); ++i) h.mmap[i] = g.mmap[f.mmap[i]];
    return h;
}

FiniteCategory opposite(const FiniteCategory& c) {
    FiniteCategory o;
    o.obj_labels = c.obj_labels;
    o.msrc = c.mdst;
    o.mdst = c.msrc;
    o.identity = c.identity;
    o.hom.assign(c.n_obj(), std::vector<std::vector<int>>(c.n_obj()));
    for (int x = 0; x < c.n_obj(); ++x)
        for (int y = 0; y < c.n_obj(); ++y) o.hom[y][x] = c.hom[x][y];
    o.init_comp();
    for (int g = 0; g < c.n_mor(); ++g)
        for (int f = 0; f < c.n_mor(); ++f) {
            int gf = c.compose(g, f);
            if (gf >= 0) o.set_compose(f, g, gf);
        }
    return o;
}

bool objects_isomorphic(const FiniteCategory& c, int x, int y) {
    if (x == y) return true;
    for (int f : c.hom[x][y])
        for (int g : c.hom[y][x])
            if (c.compose(g, f) == c.identity[x] && c.compose(f, g) == c.identity[y])
                return true;
    return false;
}

SkeletonResult skeleton(const FiniteCategory& c) {
    SkeletonResult out;
    const int N = c.n_obj();
    out.obj_class.assign(N, -1);
    std::vector<int> reps;
    for (int x = 0; x < N; ++x) {
        if (out.obj_class[x] != -1) continue;
        int cls = int(reps.size());
        reps.push_back(x);
        out.obj_class[x] = cls;
        for (int y = x + 1; y < N; ++y)
            if (out.obj_class[y] == -1 && objects_isomorphic(c, x, y))
                out.obj_class[y] = cls;
    }
    // chosen isomorphism x -> rep(x): identity on reps, else least witness
    std::vector<int> iso_to_rep(N, -1), iso_from_rep(N, -1);
    for (int x = 0; x < N; ++x) {
        int r = reps[out.obj_class[x]];
        if (x == r) {
            iso_to_rep[x] = c.identity[x];
            iso_from_rep[x] = c.identity[x];
            continue;
        }
        for (int f : c.hom[x][r]) {
            bool found = false;
            for (int g : c.hom[r][x])
                if (c.compose(g, f) == c.identity[x] &&
                    c.compose(f, g) == c.identity[r]) {
                    iso_to_rep[x] = f;
                    iso_from_rep[x] = g;
                    found = true;
                    break;
                }
            if (found) break;
        }
        if (iso_to_rep[x] < 0) throw std::logic_error("skeleton: missing iso");
    }
    // skeleton = full subcategory on reps
    out.cat = std::make_shared<FiniteCategory>();
    FiniteCategory& s = *out.cat;
    const int K = int(reps.size());
    s.obj_labels.resize(K);
    for (int k = 0; k < K; ++k) s.obj_labels[k] = c.obj_labels[reps[k]];
    std::vector<int> new_id(c.n_mor(), -1);
    s.hom.assign(K, std::vector<std::vector<int>>(K));
    for (int a = 0; a < K; ++a)
        for (int b = 0; b < K; ++b)
            for (int f : c.hom[reps[a]][reps[b]]) {
                new_id[f] = int(s.msrc.size());
                s.msrc.push_back(a);
                s.mdst.push_back(b);
                s.hom[a][b].push_back(new_id[f]);
            }
    s.identity.resize(K);
    for (int k = 0; k < K; ++k) s.identity[k] = new_id[c.identity[reps[k]]];
    s.init_comp();
    for (int g = 0; g < c.n_mor(); ++g) {
        if (new_id[g] < 0) continue;
        for (int f = 0; f < c.n_mor(); ++f) {
            if (new_id[f] < 0 || !c.composable(g, f)) continue;
            s.set_compose(new_id[g], new_id[f], new_id[c.compose(g, f)]);
        }
    }
    // retraction: x -> rep, f: x->y -> iso_y o f o iso_x^{-1}
    out.to_skeleton.src = &c;  // caller must keep c alive
    out.to_skeleton.dst = out.cat.get();
    out.to_skeleton.kind = CatFunctor::Kind::equivalence;
    out.to_skeleton.omap = out.obj_class;
    out.to_skeleton.mmap.resize(c.n_mor());
    for (int f = 0; f < c.n_mor(); ++f) {
        int x = c.msrc[f], y = c.mdst[f];
        int lifted = c.compose(iso_to_rep[y], c.compose(f, iso_from_rep[x]));
        out.to_skeleton.mmap[f] = new_id[lifted];
    }
    // inclusion
    out.from_skeleton.src = out.cat.get();
    out.from_skeleton.dst = &c;
    out.from_skeleton.kind = CatFunctor::Kind::equivalence;
    out.from_skeleton.omap = reps;
    out.from_skeleton.mmap.resize(s.n_mor());
    for (int f = 0; f < c.n_mor(); ++f)
        if (new_id[f] >= 0) out.from_skeleton.mmap[new_id[f]] = f;
    return out;
}

}  // namespace folim
