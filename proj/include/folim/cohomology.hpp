/* Group cohomology H^n(P; F_p) through the category-module resolution
 * engine: the resolution of the constant module over the one-object
 * category with End = P. Records are memoized per (group content, p,
 * degree bound) and can be persisted to a content-addressed on-disk store.
 *
 * Induced maps H^n(P) -> H^n(Q) along group homomorphisms Q -> P are
 * computed by comparison lifts between the stored resolutions.
 */
#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "folim/catmodule.hpp"
#include "folim/group.hpp"
#include "folim/orbitcat.hpp"

namespace folim {

struct CohomologyRecord {
    GroupPtr group;
    uint8_t p = 2;
    int degree_bound = 5;
    std::shared_ptr<GroupCat> bcat;  // one-object category, kept alive here
    ProjResolution resolution;       // of the constant module, to degree_bound+1
    ExtResult ext;                   // coefficients = constant module
    std::vector<uint32_t> dims;      // H^0..H^degree_bound
};

class CohomologyStore {
  public:
    explicit CohomologyStore(std::string cache_dir = "");

    // Record with degree bound at least d (a longer cached record is reused).
    std::shared_ptr<const CohomologyRecord> get(const GroupPtr& P, uint8_t p, int d);

    // phi maps element indices of Q to element indices of P (a group hom);
    // returns H^i(P) -> H^i(Q) for i = 0..d.
    std::vector<FpMatrix> induced_maps(const GroupPtr& P, const GroupPtr& Q,
                                       const std::vector<EltIdx>& phi, uint8_t p,
                                       int d);
    FpMatrix induced_map(const GroupPtr& P, const GroupPtr& Q,
                         const std::vector<EltIdx>& phi, uint8_t p, int n);

    // Subgroups A, B of one parent group; rule(x) gives the image in B of
    // the parent element x in A. Cohomology is computed on the standalone
    // copies of A and B.
    FpMatrix induced_map_subgroups(const Subgroup& B, const Subgroup& A,
                                   const std::function<EltIdx(EltIdx)>& rule_A_to_B,
                                   uint8_t p, int n);

    const std::string& cache_dir() const { return cache_dir_; }
    std::size_t disk_hits() const { return disk_hits_; }

  private:
    std::string cache_dir_;
    std::mutex mu_;
    std::map<std::tuple<uint64_t, uint8_t>, std::shared_ptr<CohomologyRecord>> mem_;
    std::map<std::tuple<uint64_t, uint64_t, uint64_t, uint8_t, int>,
             std::vector<FpMatrix>>
        map_memo_;
    std::size_t disk_hits_ = 0;

    std::shared_ptr<CohomologyRecord> build(const GroupPtr& P, uint8_t p, int d);
    std::shared_ptr<CohomologyRecord> load_disk(const GroupPtr& P, uint8_t p, int d);
    void save_disk(const CohomologyRecord& rec);
};

// The standalone-group cohomology of a subgroup (handles the as-group copy).
struct SubgroupCohomology {
    SubgroupAsGroup as_group;
    std::shared_ptr<const CohomologyRecord> record;
};
SubgroupCohomology subgroup_cohomology(CohomologyStore& store, const Subgroup& P,
                                       uint8_t p, int d);

// H^n(-; F_p) as a module over a group-built category whose objects are
// p-subgroups: a morphism token with representative g acts through the
// homomorphism x -> g x g^-1 followed by inclusion.
struct OrbitCohomology {
    CatModule module;  // over oc.cat (keep oc alive)
    std::vector<SubgroupCohomology> obj_cohomology;
    int n = 0;
};
OrbitCohomology cohomology_over_orbit(CohomologyStore& store, const GroupCat& oc,
                                      uint8_t p, int n);

}  // namespace folim
