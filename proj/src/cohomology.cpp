#include "folim/cohomology.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace folim {

namespace {

uint64_t vec_hash(const std::vector<EltIdx>& v) {
    uint64_t h = 1469598103934665603ull;
    for (EltIdx x : v) {
        h ^= uint64_t(x) + 1;
        h *= 1099511628211ull;
    }
    return h;
}

nlohmann::json matrix_to_json(const FpMatrix& m) {
    nlohmann::json j;
    j["rows"] = m.rows;
    j["cols"] = m.cols;
    j["data"] = m.a;
    return j;
}

FpMatrix matrix_from_json(const nlohmann::json& j, uint8_t p) {
    FpMatrix m(p, j.at("rows").get<uint32_t>(), j.at("cols").get<uint32_t>());
    m.a = j.at("data").get<std::vector<uint8_t>>();
    if (m.a.size() != std::size_t(m.rows) * m.cols)
        throw std::runtime_error("cache: matrix size mismatch");
    return m;
}

}  // namespace

CohomologyStore::CohomologyStore(std::string cache_dir)
    : cache_dir_(std::move(cache_dir)) {}

std::shared_ptr<const CohomologyRecord> CohomologyStore::get(const GroupPtr& P,
                                                             uint8_t p, int d) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_tuple(P->content_hash(), p);
    auto it = mem_.find(key);
    if (it != mem_.end() && it->second->degree_bound >= d) return it->second;
    std::shared_ptr<CohomologyRecord> rec;
    if (!cache_dir_.empty()) rec = load_disk(P, p, d);
    if (!rec) {
        rec = build(P, p, d);
        if (!cache_dir_.empty()) save_disk(*rec);
    }
    mem_[key] = rec;
    return rec;
}

std::shared_ptr<CohomologyRecord> CohomologyStore::build(const GroupPtr& P, uint8_t p,
                                                         int d) {
    auto rec = std::make_shared<CohomologyRecord>();
    rec->group = P;
    rec->p = p;
    rec->degree_bound = d;
    rec->bcat = std::make_shared<GroupCat>(group_as_category(P));
    CatModule cst = constant_module(*rec->bcat->cat, p);
    rec->resolution = projective_resolution(cst, d + 1);
    rec->ext = ext_groups(rec->resolution, cst, d);
    rec->dims = rec->ext.dims;
    return rec;
}

void CohomologyStore::save_disk(const CohomologyRecord& rec) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cache_dir_, ec);
    nlohmann::json j;
    j["format"] = "folim-cohcache/1";
    j["group_hash"] = rec.group->content_hash();
    j["group_order"] = rec.group->order();
    j["p"] = rec.p;
    j["degree_bound"] = rec.degree_bound;
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& lv : rec.resolution.levels) levels.push_back(lv.gen_obj);
    j["level_gens"] = levels;
    nlohmann::json diffs = nlohmann::json::array();
    for (std::size_t k = 1; k < rec.resolution.diff.size() &&
                            k < rec.resolution.levels.size();
         ++k) {
        nlohmann::json per_obj = nlohmann::json::array();
        for (const FpMatrix& m : rec.resolution.diff[k])
            per_obj.push_back(matrix_to_json(m));
        diffs.push_back(per_obj);
    }
    j["diffs"] = diffs;
    nlohmann::json aug = nlohmann::json::array();
    for (const FpMatrix& m : rec.resolution.aug) aug.push_back(matrix_to_json(m));
    j["aug"] = aug;

    std::ostringstream name;
    name << std::hex << rec.group->content_hash() << "-p" << std::dec << int(rec.p)
         << "-d" << rec.degree_bound << ".json";
    fs::path tmp = fs::path(cache_dir_) / (name.str() + ".tmp");
    fs::path final_path = fs::path(cache_dir_) / name.str();
    {
        std::ofstream out(tmp);
        out << j.dump();
    }
    fs::rename(tmp, final_path, ec);
}

std::shared_ptr<CohomologyRecord> CohomologyStore::load_disk(const GroupPtr& P,
                                                             uint8_t p, int d) {
    namespace fs = std::filesystem;
    if (!fs::exists(cache_dir_)) return nullptr;
    // accept any stored bound >= d for this (group, p)
    std::ostringstream prefix;
    prefix << std::hex << P->content_hash() << "-p" << std::dec << int(p) << "-d";
    std::string pre = prefix.str();
    int best = -1;
    fs::path best_path;
    for (const auto& entry : fs::directory_iterator(cache_dir_)) {
        std::string fn = entry.path().filename().string();
        if (fn.rfind(pre, 0) != 0 || fn.size() < pre.size() + 6) continue;
        int bound = std::atoi(fn.substr(pre.size(), fn.size() - pre.size() - 5).c_str());
        if (bound >= d && bound > best) {
            best = bound;
            best_path = entry.path();
        }
    }
    if (best < 0) return nullptr;
    try {
        nlohmann::json j;
        {
            std::ifstream in(best_path);
            in >> j;
        }
        if (j.at("format") != "folim-cohcache/1") return nullptr;
        if (j.at("group_hash").get<uint64_t>() != P->content_hash()) return nullptr;
        auto rec = std::make_shared<CohomologyRecord>();
        rec->group = P;
        rec->p = p;
        rec->degree_bound = j.at("degree_bound").get<int>();
        rec->bcat = std::make_shared<GroupCat>(group_as_category(P));
        const FiniteCategory& c = *rec->bcat->cat;
        ProjResolution& r = rec->resolution;
        r.cat = &c;
        r.p = p;
        r.degree_bound = rec->degree_bound + 1;
        for (const auto& gens : j.at("level_gens"))
            r.levels.push_back(
                build_resolution_level(c, p, gens.get<std::vector<int>>()));
        r.diff.resize(r.levels.size());
        const auto& diffs = j.at("diffs");
        for (std::size_t k = 1; k < r.levels.size(); ++k) {
            for (const auto& mj : diffs.at(k - 1))
                r.diff[k].push_back(matrix_from_json(mj, p));
        }
        for (const auto& mj : j.at("aug")) r.aug.push_back(matrix_from_json(mj, p));
        CatModule cst = constant_module(c, p);
        rec->ext = ext_groups(r, cst, rec->degree_bound);
        rec->dims = rec->ext.dims;
        ++disk_hits_;
        return rec;
    } catch (const std::exception&) {
        return nullptr;  // corrupt cache entry: fall back to rebuilding
    }
}

std::vector<FpMatrix> CohomologyStore::induced_maps(const GroupPtr& P,
                                                    const GroupPtr& Q,
                                                    const std::vector<EltIdx>& phi,
                                                    uint8_t p, int d) {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_tuple(P->content_hash(), Q->content_hash(),
                                   vec_hash(phi), p, d);
        auto it = map_memo_.find(key);
        if (it != map_memo_.end()) return it->second;
    }
    auto recP = get(P, p, d);
    auto recQ = get(Q, p, d);
    // functor B(Q) -> B(P); token_rep of the one-object categories is the
    // element index itself
    CatFunctor F;
    F.src = recQ->bcat->cat.get();
    F.dst = recP->bcat->cat.get();
    F.omap = {0};
    F.mmap.resize(Q->order());
    for (std::size_t i = 0; i < Q->order(); ++i)
        F.mmap[i] = recP->bcat->token_of(0, 0, phi[i]);
    CatModule cst = constant_module(*recP->bcat->cat, p);
    CohMapResult res = map_on_cohomology_pre(F, cst, d, recQ->resolution,
                                             recP->resolution, recQ->ext, recP->ext);
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_tuple(P->content_hash(), Q->content_hash(), vec_hash(phi),
                               p, d);
    map_memo_[key] = res.maps;
    return res.maps;
}

FpMatrix CohomologyStore::induced_map(const GroupPtr& P, const GroupPtr& Q,
                                      const std::vector<EltIdx>& phi, uint8_t p,
                                      int n) {
    return induced_maps(P, Q, phi, p, n)[std::size_t(n)];
}

FpMatrix CohomologyStore::induced_map_subgroups(
    const Subgroup& B, const Subgroup& A,
    const std::function<EltIdx(EltIdx)>& rule_A_to_B, uint8_t p, int n) {
    SubgroupAsGroup ga = subgroup_as_group(A);
    SubgroupAsGroup gb = subgroup_as_group(B);
    std::vector<EltIdx> phi(ga.group->order());
    for (std::size_t i = 0; i < ga.group->order(); ++i) {
        EltIdx parent_img = rule_A_to_B(ga.to_parent[i]);
        int32_t pos = gb.from_parent[parent_img];
        if (pos < 0) throw std::invalid_argument("induced_map: image outside B");
        phi[i] = EltIdx(pos);
    }
    return induced_map(gb.group, ga.group, phi, p, n);
}

SubgroupCohomology subgroup_cohomology(CohomologyStore& store, const Subgroup& P,
                                       uint8_t p, int d) {
    SubgroupCohomology out;
    out.as_group = subgroup_as_group(P);
    out.record = store.get(out.as_group.group, p, d);
    return out;
}

OrbitCohomology cohomology_over_orbit(CohomologyStore& store, const GroupCat& oc,
                                      uint8_t p, int n) {
    OrbitCohomology out;
    out.n = n;
    const FiniteCategory& c = *oc.cat;
    for (const Subgroup& s : oc.objects)
        out.obj_cohomology.push_back(subgroup_cohomology(store, s, p, n));
    out.module.cat = &c;
    out.module.p = p;
    out.module.dims.resize(std::size_t(c.n_obj()));
    for (int x = 0; x < c.n_obj(); ++x)
        out.module.dims[std::size_t(x)] =
            out.obj_cohomology[std::size_t(x)].record->dims[std::size_t(n)];
    out.module.act.resize(std::size_t(c.n_mor()));
    const GroupPtr& G = oc.ambient.parent;
    for (int t = 0; t < c.n_mor(); ++t) {
        int x = c.msrc[t], y = c.mdst[t];
        EltIdx g = oc.token_rep[std::size_t(t)];
        const auto& gx = out.obj_cohomology[std::size_t(x)].as_group;
        const auto& gy = out.obj_cohomology[std::size_t(y)].as_group;
        std::vector<EltIdx> phi(gx.group->order());
        for (std::size_t i = 0; i < gx.group->order(); ++i) {
            EltIdx img = G->conj(g, gx.to_parent[i]);
            int32_t pos = gy.from_parent[img];
            if (pos < 0)
                throw std::logic_error("orbit cohomology: conjugate escapes target");
            phi[i] = EltIdx(pos);
        }
        out.module.act[std::size_t(t)] = store.induced_map(
            gy.group, gx.group, phi, p, n);
    }
    return out;
}

}  // namespace folim
