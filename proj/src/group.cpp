#include "folim/group.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace folim {

namespace {

Perm perm_mul(const Perm& a, const Perm& b) {  // (ab)(x) = a(b(x))
    Perm c(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) c[x] = a[b[x]];
    return c;
}

uint64_t fnv1a(const void* data, std::size_t n, uint64_t h = 1469598103934665603ull) {
    const uint8_t* b = static_cast<const uint8_t*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= b[i];
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

GroupPtr FiniteGroup::make(uint32_t degree, const std::vector<Perm>& generators,
                           std::string name, GroupLimits limits) {
    if (degree == 0) throw std::invalid_argument("degree must be positive");
    for (const Perm& g : generators) {
        if (g.size() != degree)
            throw std::invalid_argument("generator arity does not match degree");
        std::vector<bool> seen(degree, false);
        for (uint16_t x : g) {
            if (x >= degree || seen[x])
                throw std::invalid_argument("generator is not a permutation");
            seen[x] = true;
        }
    }
    Perm id(degree);
    for (uint32_t i = 0; i < degree; ++i) id[i] = uint16_t(i);

    std::set<Perm> closure{id};
    std::vector<Perm> frontier{id};
    while (!frontier.empty()) {
        std::vector<Perm> next;
        for (const Perm& x : frontier)
            for (const Perm& g : generators) {
                Perm y = perm_mul(g, x);
                if (closure.insert(y).second) {
                    if (closure.size() > limits.max_order)
                        throw std::runtime_error("group closure exceeds size bound");
                    next.push_back(std::move(y));
                }
            }
        frontier = std::move(next);
    }

    auto G = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    G->degree_ = degree;
    G->name_ = std::move(name);
    G->elems_.assign(closure.begin(), closure.end());  // set is lex-sorted
    const std::size_t n = G->elems_.size();
    if (n > 65535) throw std::runtime_error("group too large for element indices");

    std::map<Perm, EltIdx> index;
    for (std::size_t i = 0; i < n; ++i) index[G->elems_[i]] = EltIdx(i);
    for (const Perm& g : generators) G->gen_idx_.push_back(index.at(g));

    G->mult_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            G->mult_[i * n + j] = index.at(perm_mul(G->elems_[i], G->elems_[j]));

    G->inv_.resize(n);
    G->ord_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            if (G->mult_[i * n + j] == 0) {
                G->inv_[i] = EltIdx(j);
                break;
            }
        uint32_t o = 1;
        EltIdx x = EltIdx(i);
        while (x != 0) {
            x = G->mult_[std::size_t(x) * n + i];
            ++o;
        }
        G->ord_[i] = o;
    }

    uint64_t h = fnv1a(&degree, sizeof(degree));
    for (const Perm& e : G->elems_) h = fnv1a(e.data(), e.size() * sizeof(uint16_t), h);
    G->hash_ = h;
    return G;
}

EltIdx FiniteGroup::pow(EltIdx a, long long n) const {
    uint32_t o = ord_[a];
    long long m = ((n % o) + o) % o;
    EltIdx r = 0;
    for (long long i = 0; i < m; ++i) r = mul(r, a);
    return r;
}

bool Subgroup::contains(EltIdx g) const {
    return std::binary_search(elems.begin(), elems.end(), g);
}

bool Subgroup::contains_all(const Subgroup& other) const {
    return std::includes(elems.begin(), elems.end(), other.elems.begin(),
                         other.elems.end());
}

std::string GroupHom::validate() const {
    if (images.size() != source.elems.size()) return "image list size mismatch";
    const auto& S = *source.parent;
    for (EltIdx im : images)
        if (!target.contains(im)) return "image outside target";
    // full multiplication relation set of the source
    auto pos = [&](EltIdx g) {
        auto it = std::lower_bound(source.elems.begin(), source.elems.end(), g);
        return std::size_t(it - source.elems.begin());
    };
    const auto& T = *target.parent;
    for (std::size_t i = 0; i < source.elems.size(); ++i)
        for (std::size_t j = 0; j < source.elems.size(); ++j) {
            EltIdx prod = S.mul(source.elems[i], source.elems[j]);
            if (T.mul(images[i], images[j]) != images[pos(prod)])
                return "not a homomorphism";
        }
    return "";
}

bool GroupHom::is_injective() const {
    std::set<EltIdx> im(images.begin(), images.end());
    return im.size() == images.size();
}

EltIdx GroupHom::apply(EltIdx src_elt) const {
    auto it = std::lower_bound(source.elems.begin(), source.elems.end(), src_elt);
    if (it == source.elems.end() || *it != src_elt)
        throw std::invalid_argument("element outside hom source");
    return images[std::size_t(it - source.elems.begin())];
}

std::string SubgroupChain::validate() const {
    if (members.empty()) return "empty chain";
    for (std::size_t i = 0; i + 1 < members.size(); ++i) {
        if (!members[i + 1].contains_all(members[i]) ||
            members[i + 1].order() == members[i].order())
            return "chain is not strictly increasing";
    }
    return "";
}

Subgroup subgroup_generated(const GroupPtr& G, std::vector<EltIdx> gens) {
    std::set<EltIdx> cl{0};
    std::vector<EltIdx> frontier{0};
    while (!frontier.empty()) {
        std::vector<EltIdx> next;
        for (EltIdx x : frontier)
            for (EltIdx g : gens) {
                EltIdx y = G->mul(g, x);
                if (cl.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    Subgroup H;
    H.parent = G;
    H.elems.assign(cl.begin(), cl.end());
    return H;
}

Subgroup trivial_subgroup(const GroupPtr& G) { return Subgroup{G, {0}}; }

Subgroup full_subgroup(const GroupPtr& G) {
    Subgroup H;
    H.parent = G;
    H.elems.resize(G->order());
    for (std::size_t i = 0; i < G->order(); ++i) H.elems[i] = EltIdx(i);
    return H;
}

Subgroup conjugate_subgroup(const Subgroup& H, EltIdx g) {
    Subgroup K;
    K.parent = H.parent;
    K.elems.reserve(H.elems.size());
    for (EltIdx h : H.elems) K.elems.push_back(H.parent->conj(g, h));
    std::sort(K.elems.begin(), K.elems.end());
    return K;
}

Subgroup intersect(const Subgroup& A, const Subgroup& B) {
    Subgroup C;
    C.parent = A.parent;
    std::set_intersection(A.elems.begin(), A.elems.end(), B.elems.begin(),
                          B.elems.end(), std::back_inserter(C.elems));
    return C;
}

bool is_subgroup_set(const GroupPtr& G, const std::vector<EltIdx>& sorted) {
    if (sorted.empty() || sorted[0] != 0) return false;
    for (EltIdx a : sorted)
        for (EltIdx b : sorted)
            if (!std::binary_search(sorted.begin(), sorted.end(), G->mul(a, b)))
                return false;
    return true;
}

SubgroupAsGroup subgroup_as_group(const Subgroup& H, std::string name) {
    std::vector<Perm> gens;
    // greedy generating set
    Subgroup cur = trivial_subgroup(H.parent);
    std::vector<EltIdx> gen_idx;
    for (EltIdx h : H.elems) {
        if (cur.contains(h)) continue;
        gen_idx.push_back(h);
        cur = subgroup_generated(H.parent, gen_idx);
        if (cur.order() == H.order()) break;
    }
    for (EltIdx g : gen_idx) gens.push_back(H.parent->perm(g));
    if (gens.empty()) gens.push_back(H.parent->perm(0));
    SubgroupAsGroup out;
    out.group = FiniteGroup::make(H.parent->degree(), gens, std::move(name));
    out.to_parent.resize(out.group->order());
    out.from_parent.assign(H.parent->order(), -1);
    // element lists are both lex-sorted on image tuples, so they agree
    for (std::size_t i = 0; i < out.group->order(); ++i) {
        out.to_parent[i] = H.elems[i];
        out.from_parent[H.elems[i]] = int32_t(i);
    }
    if (out.group->order() != H.order())
        throw std::logic_error("subgroup_as_group: order mismatch");
    return out;
}

uint32_t p_part(std::size_t n, uint32_t p) {
    uint32_t q = 1;
    while (n % p == 0) {
        n /= p;
        q *= p;
    }
    return q;
}

Subgroup sylow(const GroupPtr& G, uint32_t p) {
    uint32_t target = p_part(G->order(), p);
    Subgroup P = trivial_subgroup(G);
    while (P.order() < target) {
        Subgroup N = stabilizers(P).normalizer;
        bool grew = false;
        for (EltIdx x : N.elems) {
            if (P.contains(x)) continue;
            uint32_t o = G->elt_order(x);
            // take a p-element power of x
            uint32_t q = p_part(o, p);
            if (q == 1) continue;
            EltIdx y = G->pow(x, o / q);
            if (P.contains(y)) continue;
            std::vector<EltIdx> gens = P.elems;
            gens.push_back(y);
            Subgroup Q = subgroup_generated(G, gens);
            if (p_part(Q.order(), p) == Q.order()) {
                P = Q;
                grew = true;
                break;
            }
        }
        if (!grew) throw std::logic_error("sylow: extension step failed");
    }
    // canonical: least element tuple among all conjugates
    Subgroup best = P;
    for (std::size_t g = 0; g < G->order(); ++g) {
        Subgroup c = conjugate_subgroup(P, EltIdx(g));
        if (c.elems < best.elems) best = c;
    }
    return best;
}

std::vector<EltIdx> transporter(const Subgroup& H, const Subgroup& K) {
    const GroupPtr& G = H.parent;
    std::vector<EltIdx> out;
    for (std::size_t g = 0; g < G->order(); ++g) {
        bool ok = true;
        for (EltIdx h : H.elems)
            if (!K.contains(G->conj(EltIdx(g), h))) {
                ok = false;
                break;
            }
        if (ok) out.push_back(EltIdx(g));
    }
    return out;
}

Stabilizers stabilizers(const Subgroup& H) {
    const GroupPtr& G = H.parent;
    Stabilizers st;
    st.centralizer.parent = G;
    st.normalizer.parent = G;
    for (std::size_t g = 0; g < G->order(); ++g) {
        bool cent = true, norm = true;
        for (EltIdx h : H.elems) {
            EltIdx c = G->conj(EltIdx(g), h);
            if (c != h) cent = false;
            if (!H.contains(c)) {
                norm = false;
                break;
            }
        }
        if (cent) st.centralizer.elems.push_back(EltIdx(g));
        if (norm) st.normalizer.elems.push_back(EltIdx(g));
    }
    st.center = intersect(st.centralizer, H);
    return st;
}

std::vector<Automorphism> automorphism_group(const Subgroup& Q, std::size_t cap) {
    const GroupPtr& G = Q.parent;
    const std::size_t n = Q.elems.size();
    auto pos = [&](EltIdx g) {
        auto it = std::lower_bound(Q.elems.begin(), Q.elems.end(), g);
        return std::size_t(it - Q.elems.begin());
    };
    // greedy generating set of Q
    std::vector<EltIdx> gens;
    {
        Subgroup cur = trivial_subgroup(G);
        for (EltIdx h : Q.elems) {
            if (cur.contains(h)) continue;
            gens.push_back(h);
            std::vector<EltIdx> gg = gens;
            cur = subgroup_generated(G, gg);
            if (cur.order() == n) break;
        }
    }
    std::vector<Automorphism> out;
    std::size_t tests = 0;
    // DFS over generator images; partial check via pair closure
    std::vector<EltIdx> chosen(gens.size());
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == gens.size()) {
            // build the full map by closure over words
            std::vector<int32_t> img(n, -1);  // position -> image position
            img[0] = 0;
            std::vector<std::size_t> frontier{0};
            while (!frontier.empty()) {
                std::vector<std::size_t> next;
                for (std::size_t x : frontier)
                    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
                        std::size_t yp = pos(G->mul(gens[gi], Q.elems[x]));
                        EltIdx imy =
                            G->mul(chosen[gi], Q.elems[std::size_t(img[x])]);
                        std::size_t imy_pos = pos(imy);
                        if (img[yp] == -1) {
                            img[yp] = int32_t(imy_pos);
                            next.push_back(yp);
                        } else if (img[yp] != int32_t(imy_pos))
                            return;  // inconsistent
                    }
                frontier = std::move(next);
            }
            for (std::size_t i = 0; i < n; ++i)
                if (img[i] < 0) return;  // should not happen: gens generate Q
            // bijectivity + homomorphism check
            std::vector<bool> hit(n, false);
            for (std::size_t i = 0; i < n; ++i) {
                if (img[i] < 0 || hit[std::size_t(img[i])]) return;
                hit[std::size_t(img[i])] = true;
            }
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    EltIdx prod = G->mul(Q.elems[i], Q.elems[j]);
                    EltIdx improd =
                        G->mul(Q.elems[std::size_t(img[i])],
                               Q.elems[std::size_t(img[j])]);
                    if (std::size_t(img[pos(prod)]) != pos(improd)) return;
                }
            Automorphism a;
            a.table.resize(n);
            for (std::size_t i = 0; i < n; ++i) a.table[i] = uint16_t(img[i]);
            out.push_back(std::move(a));
            return;
        }
        uint32_t want = G->elt_order(gens[k]);
        for (EltIdx cand : Q.elems) {
            if (G->elt_order(cand) != want) continue;
            if (++tests > cap)
                throw std::runtime_error("automorphism search cap exceeded");
            chosen[k] = cand;
            rec(k + 1);
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

Automorphism conj_automorphism(const Subgroup& Q, EltIdx g) {
    auto pos = [&](EltIdx x) {
        auto it = std::lower_bound(Q.elems.begin(), Q.elems.end(), x);
        return std::size_t(it - Q.elems.begin());
    };
    Automorphism a;
    a.table.resize(Q.elems.size());
    for (std::size_t i = 0; i < Q.elems.size(); ++i) {
        EltIdx c = Q.parent->conj(g, Q.elems[i]);
        if (!Q.contains(c)) throw std::invalid_argument("g does not normalize Q");
        a.table[i] = uint16_t(pos(c));
    }
    return a;
}

Automorphism compose(const Automorphism& a, const Automorphism& b) {
    Automorphism c;
    c.table.resize(a.table.size());
    for (std::size_t i = 0; i < a.table.size(); ++i) c.table[i] = a.table[b.table[i]];
    return c;
}

Automorphism inverse(const Automorphism& a) {
    Automorphism c;
    c.table.resize(a.table.size());
    for (std::size_t i = 0; i < a.table.size(); ++i) c.table[a.table[i]] = uint16_t(i);
    return c;
}

bool closed_under_composition(const std::vector<Automorphism>& K) {
    std::set<Automorphism> s(K.begin(), K.end());
    for (const auto& a : K)
        for (const auto& b : K)
            if (!s.count(compose(a, b))) return false;
    return true;
}

std::vector<Automorphism> chain_stabilizer(const SubgroupChain& sigma,
                                           const std::vector<Automorphism>& aut_top) {
    const Subgroup& top = sigma.members.back();
    std::vector<Automorphism> out;
    for (const auto& a : aut_top) {
        bool ok = true;
        for (const Subgroup& P : sigma.members) {
            for (EltIdx x : P.elems) {
                auto it = std::lower_bound(top.elems.begin(), top.elems.end(), x);
                EltIdx img = top.elems[a.table[std::size_t(it - top.elems.begin())]];
                if (!P.contains(img)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) break;
        }
        if (ok) out.push_back(a);
    }
    return out;
}

Subgroup k_normalizer(const Subgroup& Q, const std::vector<Automorphism>& K) {
    if (!closed_under_composition(K))
        throw std::invalid_argument("K is not closed under composition");
    std::set<Automorphism> ks(K.begin(), K.end());
    const GroupPtr& G = Q.parent;
    Subgroup N = stabilizers(Q).normalizer;
    Subgroup out;
    out.parent = G;
    for (EltIdx g : N.elems)
        if (ks.count(conj_automorphism(Q, g))) out.elems.push_back(g);
    return out;
}

Subgroup chain_normalizer(const SubgroupChain& sigma) {
    Subgroup N = stabilizers(sigma.members[0]).normalizer;
    for (std::size_t i = 1; i < sigma.members.size(); ++i)
        N = intersect(N, stabilizers(sigma.members[i]).normalizer);
    return N;
}

Subgroup chain_normalizer_in(const Subgroup& S, const SubgroupChain& sigma) {
    return intersect(S, chain_normalizer(sigma));
}

std::vector<EltIdx> double_coset_of(const Subgroup& A, EltIdx x, const Subgroup& B) {
    const GroupPtr& G = A.parent;
    std::set<EltIdx> s;
    for (EltIdx a : A.elems)
        for (EltIdx b : B.elems) s.insert(G->mul(G->mul(a, x), b));
    return {s.begin(), s.end()};
}

std::vector<EltIdx> double_cosets(const Subgroup& A, const std::vector<EltIdx>& X,
                                  const Subgroup& B) {
    std::set<EltIdx> xs(X.begin(), X.end());
    std::set<EltIdx> remaining = xs;
    std::vector<EltIdx> reps;
    while (!remaining.empty()) {
        EltIdx x = *remaining.begin();  // least remaining element
        reps.push_back(x);
        for (EltIdx y : double_coset_of(A, x, B)) {
            if (!xs.count(y))
                throw std::invalid_argument(
                    "set is not closed under the two-sided action");
            remaining.erase(y);
        }
    }
    return reps;
}

std::optional<Subgroup> subgroup_product(const Subgroup& P, const Subgroup& Q) {
    const GroupPtr& G = P.parent;
    std::set<EltIdx> s;
    for (EltIdx a : P.elems)
        for (EltIdx b : Q.elems) s.insert(G->mul(a, b));
    std::vector<EltIdx> elems(s.begin(), s.end());
    if (!is_subgroup_set(G, elems)) return std::nullopt;
    Subgroup R;
    R.parent = G;
    R.elems = std::move(elems);
    return R;
}

std::vector<Subgroup> all_subgroups(const GroupPtr& G, GroupLimits limits) {
    std::set<std::vector<EltIdx>> seen;
    std::vector<Subgroup> work;
    Subgroup triv = trivial_subgroup(G);
    seen.insert(triv.elems);
    work.push_back(triv);
    std::size_t tests = 0;
    for (std::size_t i = 0; i < work.size(); ++i) {
        Subgroup H = work[i];  // copy: work may reallocate
        for (std::size_t g = 0; g < G->order(); ++g) {
            if (H.contains(EltIdx(g))) continue;
            if (++tests > limits.max_subgroup_tests)
                throw std::runtime_error("subgroup enumeration cap exceeded");
            std::vector<EltIdx> gens = H.elems;
            gens.push_back(EltIdx(g));
            Subgroup J = subgroup_generated(G, gens);
            if (seen.insert(J.elems).second) work.push_back(J);
        }
    }
    std::vector<Subgroup> out(work.begin(), work.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<SubgroupClass> subgroups_up_to_conjugacy(
    const GroupPtr& G, const std::function<bool(const Subgroup&)>& filter,
    GroupLimits limits) {
    std::vector<Subgroup> subs = all_subgroups(G, limits);
    std::set<std::vector<EltIdx>> assigned;
    std::vector<SubgroupClass> classes;
    for (const Subgroup& H : subs) {
        if (assigned.count(H.elems)) continue;
        // H is the least tuple in its class because subs is sorted
        SubgroupClass cls;
        std::set<std::vector<EltIdx>> members;
        for (std::size_t g = 0; g < G->order(); ++g)
            members.insert(conjugate_subgroup(H, EltIdx(g)).elems);
        for (const auto& e : members) {
            assigned.insert(e);
            cls.members.push_back(Subgroup{G, e});
        }
        cls.representative = cls.members.front();
        if (!filter || filter(cls.representative)) classes.push_back(std::move(cls));
    }
    return classes;
}

std::vector<SubgroupClass> all_subgroup_classes(const GroupPtr& G, GroupLimits limits) {
    return subgroups_up_to_conjugacy(G, nullptr, limits);
}

QuotientGroup quotient_group(const Subgroup& A, const Subgroup& B) {
    const GroupPtr& G = A.parent;
    if (!A.contains_all(B)) throw std::invalid_argument("B not contained in A");
    // left cosets of B in A
    std::vector<EltIdx> reps;
    std::vector<int32_t> coset_of(G->order(), -1);
    for (EltIdx a : A.elems) {
        if (coset_of[a] != -1) continue;
        int32_t c = int32_t(reps.size());
        reps.push_back(a);
        for (EltIdx b : B.elems) coset_of[G->mul(a, b)] = c;
    }
    // normality check
    for (EltIdx a : A.elems)
        for (EltIdx b : B.elems)
            if (!B.contains(G->conj(a, b)))
                throw std::invalid_argument("B is not normal in A");
    const uint32_t m = uint32_t(reps.size());
    QuotientGroup out;
    out.coset_rep = reps;
    out.a_elems = A.elems;
    // generators of the action: images of A's elements acting by left mult
    std::vector<Perm> gens;
    std::vector<Perm> all_perms(A.elems.size(), Perm(m));
    for (std::size_t i = 0; i < A.elems.size(); ++i)
        for (uint32_t c = 0; c < m; ++c)
            all_perms[i][c] = uint16_t(coset_of[G->mul(A.elems[i], reps[c])]);
    for (const Perm& q : all_perms) gens.push_back(q);
    out.group = FiniteGroup::make(m, gens);
    if (out.group->order() != A.order() / B.order())
        throw std::logic_error("quotient order mismatch");
    // map each A-element to its quotient element index
    std::map<Perm, EltIdx> index;
    for (std::size_t i = 0; i < out.group->order(); ++i)
        index[out.group->perm(EltIdx(i))] = EltIdx(i);
    out.elt_image.resize(A.elems.size());
    for (std::size_t i = 0; i < A.elems.size(); ++i)
        out.elt_image[i] = index.at(all_perms[i]);
    return out;
}

Subgroup p_core(const GroupPtr& G, uint32_t p) {
    Subgroup P = sylow(G, p);
    Subgroup core = P;
    for (std::size_t g = 0; g < G->order(); ++g)
        core = intersect(core, conjugate_subgroup(P, EltIdx(g)));
    return core;
}

}  // namespace folim
