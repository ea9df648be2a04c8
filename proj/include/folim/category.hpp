/* Explicit finite categories: enumerated hom sets and a total composition
 * table. Morphisms have global ids; hom(x, y) lists the ids of morphisms
 * from x to y. compose(g, f) is g o f for f: x->y, g: y->z.
 */
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace folim {

struct FiniteCategory {
    std::vector<std::string> obj_labels;
    std::vector<int> msrc, mdst;                      // per morphism id
    std::vector<std::vector<std::vector<int>>> hom;   // hom[x][y] -> ids
    std::vector<int> identity;                        // per object
    std::vector<int32_t> comp;                        // flat n_mor x n_mor, -1 invalid

    int n_obj() const { return int(obj_labels.size()); }
    int n_mor() const { return int(msrc.size()); }
    int compose(int g, int f) const {  // g o f
        return comp[std::size_t(g) * msrc.size() + std::size_t(f)];
    }
    void set_compose(int g, int f, int gf) {
        comp[std::size_t(g) * msrc.size() + std::size_t(f)] = gf;
    }
    void init_comp() { comp.assign(msrc.size() * msrc.size(), -1); }

    // Empty string if the category laws hold, else the first violation.
    std::string check() const;

    // All pairs (g, f) with compose defined, i.e. src(g) == dst(f).
    bool composable(int g, int f) const { return msrc[g] == mdst[f]; }

    uint64_t composition_hash() const;
};

struct CatFunctor {
    enum class Kind { generic, projection, orbit_incl, fusion_incl, equivalence };
    const FiniteCategory* src = nullptr;
    const FiniteCategory* dst = nullptr;
    std::vector<int> omap;  // per source object
    std::vector<int> mmap;  // per source morphism
    Kind kind = Kind::generic;

    std::string check() const;
};

CatFunctor identity_functor(const FiniteCategory& c);
CatFunctor compose_functors(const CatFunctor& g, const CatFunctor& f);  // g o f

// hom(x,y) <-> hom(y,x) with composition reversed; morphism ids preserved.
FiniteCategory opposite(const FiniteCategory& c);

struct SkeletonResult {
    std::shared_ptr<FiniteCategory> cat;  // stable storage: functors point here
    CatFunctor to_skeleton;     // retraction, full category -> skeleton
    CatFunctor from_skeleton;   // inclusion
    std::vector<int> obj_class; // per object of c, index of its skeleton object
};

// One object per isomorphism class (least object index); the retraction is
// the identity on representative objects.
SkeletonResult skeleton(const FiniteCategory& c);

// Objects isomorphic in c?
bool objects_isomorphic(const FiniteCategory& c, int x, int y);

}  // namespace folim
