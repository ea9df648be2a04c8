/* Exact arithmetic for small finite permutation groups.
 *
 * A FiniteGroup materializes its full element list, sorted lexicographically
 * on image tuples (so the identity is always element 0), together with a
 * multiplication table. Subgroups are sorted element-index sets; the sorted
 * index tuple is the canonical identity of a subgroup, and every "choose a
 * representative" step picks the least such tuple.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace folim {

using Perm = std::vector<uint16_t>;  // images of 0..degree-1
using EltIdx = uint16_t;

struct GroupLimits {
    std::size_t max_order = 200000;     // element-closure cap
    std::size_t max_subgroup_tests = 100000;
};

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

class FiniteGroup {
  public:
    // Throws std::invalid_argument on non-permutations, std::runtime_error
    // when closure exceeds limits.
    static GroupPtr make(uint32_t degree, const std::vector<Perm>& generators,
                         std::string name = "", GroupLimits limits = {});

    uint32_t degree() const { return degree_; }
    std::size_t order() const { return elems_.size(); }
    const std::string& name() const { return name_; }
    const Perm& perm(EltIdx i) const { return elems_[i]; }
    const std::vector<EltIdx>& generators() const { return gen_idx_; }

    EltIdx mul(EltIdx a, EltIdx b) const {  // (ab)(x) = a(b(x))
        return mult_[std::size_t(a) * elems_.size() + b];
    }
    EltIdx inv(EltIdx a) const { return inv_[a]; }
    EltIdx conj(EltIdx g, EltIdx h) const {  // g h g^-1
        return mul(mul(g, h), inv(g));
    }
    uint32_t elt_order(EltIdx a) const { return ord_[a]; }
    EltIdx pow(EltIdx a, long long n) const;

    // 64-bit content hash of (degree, element list); cache key material.
    uint64_t content_hash() const { return hash_; }

  private:
    FiniteGroup() = default;
    uint32_t degree_ = 1;
    std::string name_;
    std::vector<Perm> elems_;
    std::vector<EltIdx> gen_idx_;
    std::vector<EltIdx> mult_;
    std::vector<EltIdx> inv_;
    std::vector<uint32_t> ord_;
    uint64_t hash_ = 0;
};

struct Subgroup {
    GroupPtr parent;
    std::vector<EltIdx> elems;  // sorted, closed, contains 0

    std::size_t order() const { return elems.size(); }
    bool contains(EltIdx g) const;
    bool contains_all(const Subgroup& other) const;
    bool operator==(const Subgroup& o) const { return elems == o.elems; }
    bool operator<(const Subgroup& o) const { return elems < o.elems; }
};

struct GroupHom {
    // Total map between subgroups (possibly of different parent groups),
    // stored on all source elements: images[k] is the image (an element
    // index in target.parent) of source.elems[k].
    Subgroup source;
    Subgroup target;
    std::vector<EltIdx> images;

    bool is_injective() const;
    // Empty string when the map is a homomorphism into target, else reason.
    std::string validate() const;
    EltIdx apply(EltIdx src_elt) const;  // src_elt is a parent-index of source
};

struct SubgroupChain {
    std::vector<Subgroup> members;  // strictly increasing
    std::string validate() const;
};

// Closure of a set of parent elements.
Subgroup subgroup_generated(const GroupPtr& G, std::vector<EltIdx> gens);
Subgroup trivial_subgroup(const GroupPtr& G);
Subgroup full_subgroup(const GroupPtr& G);
Subgroup conjugate_subgroup(const Subgroup& H, EltIdx g);
Subgroup intersect(const Subgroup& A, const Subgroup& B);
bool is_subgroup_set(const GroupPtr& G, const std::vector<EltIdx>& sorted_elems);

// Re-materialize a subgroup as a standalone FiniteGroup (same degree).
// Returns the group and the map new-index -> parent-index (its elements
// list order), plus parent-index -> new-index.
struct SubgroupAsGroup {
    GroupPtr group;
    std::vector<EltIdx> to_parent;
    std::vector<int32_t> from_parent;  // -1 when not in subgroup
};
SubgroupAsGroup subgroup_as_group(const Subgroup& H, std::string name = "");

// Deterministic Sylow p-subgroup: the conjugate with the least element tuple.
Subgroup sylow(const GroupPtr& G, uint32_t p);

// N_G(H, K) = { g : g H g^-1 <= K }.
std::vector<EltIdx> transporter(const Subgroup& H, const Subgroup& K);

struct Stabilizers {
    Subgroup centralizer;  // C_G(H)
    Subgroup normalizer;   // N_G(H)
    Subgroup center;       // Z(H) = C_G(H) ∩ H
};
Stabilizers stabilizers(const Subgroup& H);

// An automorphism of Q as a permutation of Q's element positions:
// table[k] = position of the image of Q.elems[k].
struct Automorphism {
    std::vector<uint16_t> table;
    bool operator==(const Automorphism& o) const { return table == o.table; }
    bool operator<(const Automorphism& o) const { return table < o.table; }
};

// Full automorphism group by exhaustive generator-image search (|Q| <= 64
// expected; throws past the configured search cap).
std::vector<Automorphism> automorphism_group(const Subgroup& Q,
                                             std::size_t cap = 2000000);
Automorphism conj_automorphism(const Subgroup& Q, EltIdx g);  // g in N(Q)
Automorphism compose(const Automorphism& a, const Automorphism& b);
Automorphism inverse(const Automorphism& a);
bool closed_under_composition(const std::vector<Automorphism>& K);

// Automorphisms of P_n stabilizing every member of the chain.
std::vector<Automorphism> chain_stabilizer(const SubgroupChain& sigma,
                                           const std::vector<Automorphism>& aut_top);

// N_G^K(Q) = { g in N_G(Q) : (c_g)|_Q in K }. K must be composition-closed.
Subgroup k_normalizer(const Subgroup& Q, const std::vector<Automorphism>& K);
Subgroup chain_normalizer(const SubgroupChain& sigma);  // ∩ N_G(P_i)
Subgroup chain_normalizer_in(const Subgroup& S, const SubgroupChain& sigma);

// Orbit representatives (least element index per orbit) of A\X/B.
// Throws if X is not closed under the two-sided action.
std::vector<EltIdx> double_cosets(const Subgroup& A, const std::vector<EltIdx>& X,
                                  const Subgroup& B);
// The full double coset A·x·B as a sorted element list.
std::vector<EltIdx> double_coset_of(const Subgroup& A, EltIdx x, const Subgroup& B);

// PQ when it is a subgroup, nullopt otherwise.
std::optional<Subgroup> subgroup_product(const Subgroup& P, const Subgroup& Q);

struct SubgroupClass {
    Subgroup representative;          // least element tuple in the class
    std::vector<Subgroup> members;    // sorted by element tuple
};

// All subgroups of G up to conjugacy, optionally filtered (filter applies
// to any member; classes are conjugation-stable so this is well-defined
// only for conjugation-invariant predicates, which is what callers use).
std::vector<SubgroupClass> subgroups_up_to_conjugacy(
    const GroupPtr& G, const std::function<bool(const Subgroup&)>& filter,
    GroupLimits limits = {});
std::vector<SubgroupClass> all_subgroup_classes(const GroupPtr& G,
                                                GroupLimits limits = {});

// All subgroups of G (every member of every class), sorted by tuple.
std::vector<Subgroup> all_subgroups(const GroupPtr& G, GroupLimits limits = {});

// Quotient A/B as a standalone group (B normal in A): the permutation action
// of A on the left cosets of B.
struct QuotientGroup {
    GroupPtr group;
    std::vector<EltIdx> coset_rep;     // per quotient point, an A-element
    std::vector<EltIdx> elt_image;     // per A-element position, quotient element
    std::vector<EltIdx> a_elems;       // A's elements (positions index elt_image)
};
QuotientGroup quotient_group(const Subgroup& A, const Subgroup& B);

// Largest normal p-subgroup O_p(G) (intersection of the Sylow conjugates).
Subgroup p_core(const GroupPtr& G, uint32_t p);

uint32_t p_part(std::size_t n, uint32_t p);

}  // namespace folim
