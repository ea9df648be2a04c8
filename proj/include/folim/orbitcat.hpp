/* Categories built from a group and a collection of subgroups.
 *
 * For subgroups H, K of the ambient group A and transporter
 * N(H,K) = { g in A : g H g^-1 <= K }, the four quotients are
 *
 *   transporter   tokens g
 *   orbit         tokens K g            (right cosets)
 *   fusion        tokens g C(H)         (left cosets of the centralizer)
 *   fusion_orbit  tokens K g C(H)       (double cosets)
 *
 * Morphism tokens carry the least element of their (double) coset as the
 * canonical representative; composition multiplies representatives and
 * re-canonicalizes (well-definedness is asserted in tests).
 */
#pragma once

#include <memory>

#include "folim/category.hpp"
#include "folim/group.hpp"

namespace folim {

enum class GroupCatKind { transporter, orbit, fusion, fusion_orbit };

struct GroupCat {
    std::shared_ptr<FiniteCategory> cat;
    Subgroup ambient;                 // morphisms drawn from this subgroup
    GroupCatKind kind = GroupCatKind::transporter;
    std::vector<Subgroup> objects;    // one per category object
    std::vector<EltIdx> token_rep;    // canonical representative per morphism

    const FiniteCategory& c() const { return *cat; }
    // token id in hom(x,y) whose coset contains g
    int token_of(int x, int y, EltIdx g) const;
};

// objects: explicit subgroup list (class representatives for the skeletal
// build, or every member for the full build).
GroupCat build_group_category(const Subgroup& ambient,
                              const std::vector<Subgroup>& objects,
                              GroupCatKind kind);

GroupCat build_transporter(const Subgroup& ambient, const std::vector<Subgroup>& objects);
GroupCat build_orbit(const Subgroup& ambient, const std::vector<Subgroup>& objects);
GroupCat build_fusion(const Subgroup& ambient, const std::vector<Subgroup>& objects);
GroupCat build_fusion_orbit(const Subgroup& ambient, const std::vector<Subgroup>& objects);

// The group P as a one-object category (endomorphisms = P).
GroupCat group_as_category(const GroupPtr& P);

// True when every conjugate (within ambient) of every member is a member.
bool conjugation_closed(const Subgroup& ambient, const std::vector<Subgroup>& members);

// Quotient functors between two categories built on the SAME ambient and
// object list: transporter -> orbit/fusion, orbit/fusion -> fusion_orbit,
// orbit -> fusion_orbit (the projection functor pr).
CatFunctor quotient_functor(const GroupCat& finer, const GroupCat& coarser);

// Inclusion-induced functor for categories over collections C|_H vs C:
// maps each object (a subgroup of H) to the SAME subgroup in the target
// object list; token representatives map to their cosets in the target.
// Works for orbit (i_H^G) and fusion_orbit (j_H^G) kinds.
CatFunctor subgroup_inclusion_functor(const GroupCat& small, const GroupCat& big);

// Poset category: one morphism x -> y whenever leq(x, y); leq must be
// reflexive and transitive.
FiniteCategory poset_category(const std::vector<std::string>& labels,
                              const std::function<bool(int, int)>& leq);

}  // namespace folim
