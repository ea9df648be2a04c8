/* Modules over a finite category: contravariant functors to F_p vector
 * spaces, presented by explicit matrices. A morphism f: x -> y acts by a
 * matrix act[f] of shape dims[y] x dims[x] on row vectors, so composition
 * satisfies act[g o f] = act[g] * act[f].
 *
 * Resolutions are by finite sums of representables R Mor(?, x); covers use
 * a greedily pruned generating set. Ext groups (and higher limits, as Ext
 * from the constant module) come from the induced cochain complex under
 * the Yoneda identification hom(R Mor(?, x), N) = N(x).
 */
#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "folim/category.hpp"
#include "folim/fp.hpp"

namespace folim {

struct CatModule {
    const FiniteCategory* cat = nullptr;
    uint8_t p = 2;
    std::vector<uint32_t> dims;
    std::vector<FpMatrix> act;  // per morphism id

    uint32_t total_dim() const;
    // Empty when functorial (identities + all composites), else first failure.
    std::string check() const;
};

CatModule constant_module(const FiniteCategory& c, uint8_t p);
CatModule zero_module(const FiniteCategory& c, uint8_t p);
CatModule representable(const FiniteCategory& c, uint8_t p, int x);
CatModule direct_sum(const CatModule& a, const CatModule& b);

// Natural transformation M -> N: per object, dims_M(x) x dims_N(x).
struct ModuleMap {
    const CatModule* src = nullptr;
    const CatModule* dst = nullptr;
    std::vector<FpMatrix> comp;  // per object

    std::string check() const;  // naturality
};

// Basis of the space of natural transformations M -> N.
std::vector<ModuleMap> hom_space(const CatModule& m, const CatModule& n);
uint32_t hom_dim(const CatModule& m, const CatModule& n);

// Objectwise kernel of a module map, with bases kept in ambient coordinates.
struct SubModule {
    CatModule abstract;          // the kernel as a module in its own bases
    std::vector<FpMatrix> basis; // rows: basis of the subspace of src(x)
};
SubModule kernel_of(const ModuleMap& f);

struct QuotientModule {
    CatModule abstract;
    std::vector<FpMatrix> proj;  // N(x) -> Q(x), shape dimN(x) x dimQ(x)
    std::vector<FpMatrix> lift;  // Q(x) -> N(x), a section
};
QuotientModule cokernel_of(const ModuleMap& f);

CatModule restrict_along(const CatFunctor& F, const CatModule& m);

// Generic induction along F (tensor-product formula with its relations).
struct InducedModule {
    CatModule module;  // over F.dst
    // identification data per target object: list of (src_obj y, morphism
    // f in hom(x, F y), basis idx) for the ambient sum, plus the quotient
    std::vector<std::vector<std::array<int, 3>>> ambient_basis;
    std::vector<FpMatrix> proj;
    std::vector<FpMatrix> lift;
};
InducedModule induce_along(const CatFunctor& F, const CatModule& m);

// Generators: (object, vector) pairs; inclusion-minimal under greedy
// pruning, deterministic candidate order.
struct Generator {
    int obj;
    std::vector<uint8_t> vec;
};
std::vector<Generator> minimal_generators(const CatModule& m);
// Variant for the pruning-order invariance test.
std::vector<Generator> minimal_generators_pruned(const CatModule& m,
                                                 const std::vector<int>& prune_order);
bool generates(const CatModule& m, const std::vector<Generator>& gens);

struct ResolutionLevel {
    std::vector<int> gen_obj;  // one representable summand per generator
    CatModule proj_mod;        // the sum of representables
    // basis of proj_mod at object y: (generator index, morphism id y -> x_j)
    std::vector<std::vector<std::pair<int, int>>> basis_index;
};

struct ProjResolution {
    const FiniteCategory* cat = nullptr;
    uint8_t p = 2;
    int degree_bound = 0;
    std::vector<ResolutionLevel> levels;        // 0..degree_bound
    std::vector<std::vector<FpMatrix>> diff;    // diff[k][y]: P_k(y) -> P_{k-1}(y), k>=1
    std::vector<FpMatrix> aug;                  // P_0(y) -> M(y)
};

ProjResolution projective_resolution(const CatModule& m, int degree_bound);

// The projective module (sum of representables) for a list of generator
// objects, with its basis bookkeeping; shared with the cache loader.
ResolutionLevel build_resolution_level(const FiniteCategory& c, uint8_t p,
                                       const std::vector<int>& gen_objs);

struct ExtResult {
    std::vector<uint32_t> dims;               // Ext^0..Ext^d
    ChainComplexFp cochain;                   // hom(P_*, N) under Yoneda
    std::vector<FpMatrix> representatives;    // cocycle reps per degree
    std::vector<std::vector<int>> block_obj;  // per degree, object per block
};

ExtResult ext_groups(const ProjResolution& r, const CatModule& n, int d);
ExtResult ext_groups(const CatModule& m, const CatModule& n, int d);
std::vector<uint32_t> higher_limits(const CatModule& n, int d);

// lim^0 by its definition: compatible families in ⊕_x M(x).
struct Lim0 {
    uint32_t dim = 0;
    FpMatrix basis;               // rows in ⊕_x M(x) coordinates
    std::vector<uint32_t> offset; // object -> coordinate offset
};
Lim0 lim0(const CatModule& m);

// Matrices H^i(D; N) -> H^i(C; Res_F N) induced by F: C -> D, i <= d,
// computed by lifting the identity of the constant module through both
// resolutions. Also returns both Ext computations for reuse.
struct CohMapResult {
    std::vector<FpMatrix> maps;  // per degree i: rows index H^i(D), cols H^i(C)
    ExtResult source;            // over D
    ExtResult target;            // over C (coefficients Res_F N)
};
CohMapResult map_on_cohomology(const CatFunctor& F, const CatModule& n, int d);
// Variant with a perturbed (but still canonical-per-call) lift, for the
// independence-of-lift assertion.
CohMapResult map_on_cohomology_alt(const CatFunctor& F, const CatModule& n, int d);
// Same computation with precomputed resolutions of the constant modules
// over F.src (P) and F.dst (Q) and the matching Ext computations.
CohMapResult map_on_cohomology_pre(const CatFunctor& F, const CatModule& n, int d,
                                   const ProjResolution& P, const ProjResolution& Q,
                                   const ExtResult& ext_src, const ExtResult& ext_dst,
                                   bool alt = false);

// Module vanishing outside one isomorphism class of objects; rho assigns
// to every iso x -> x (x = least object of the class) its action matrix,
// satisfying rho(a o b) = rho(a) * rho(b).
CatModule atomic_module(const FiniteCategory& c, uint8_t p,
                        const std::vector<int>& class_objs,
                        const std::function<FpMatrix(int)>& rho, uint32_t value_dim);

bool modules_isomorphic(const CatModule& a, const CatModule& b);

}  // namespace folim
