#include "folim/catmodule.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace folim {

uint32_t CatModule::total_dim() const {
    uint32_t t = 0;
    for (uint32_t d : dims) t += d;
    return t;
}

std::string CatModule::check() const {
    const FiniteCategory& c = *cat;
    if (int(dims.size()) != c.n_obj() || int(act.size()) != c.n_mor())
        return "module table size mismatch";
    for (int f = 0; f < c.n_mor(); ++f) {
        if (act[std::size_t(f)].rows != dims[std::size_t(c.mdst[f])] ||
            act[std::size_t(f)].cols != dims[std::size_t(c.msrc[f])])
            return "action shape mismatch at morphism " + std::to_string(f);
        if (act[std::size_t(f)].p != p) return "prime mismatch";
    }
    for (int x = 0; x < c.n_obj(); ++x)
        if (!(act[std::size_t(c.identity[std::size_t(x)])] ==
              FpMatrix::identity(p, dims[std::size_t(x)])))
            return "identity does not act as identity at object " + std::to_string(x);
    for (int g = 0; g < c.n_mor(); ++g)
        for (int f = 0; f < c.n_mor(); ++f) {
            if (!c.composable(g, f)) continue;
            if (!(act[std::size_t(c.compose(g, f))] ==
                  fp_mul(act[std::size_t(g)], act[std::size_t(f)])))
                return "functoriality fails at pair (" + std::to_string(g) + "," +
                       std::to_string(f) + ")";
        }
    return "";
}

CatModule constant_module(const FiniteCategory& c, uint8_t p) {
    CatModule m;
    m.cat = &c;
    m.p = p;
    m.dims.assign(std::size_t(c.n_obj()), 1);
    m.act.assign(std::size_t(c.n_mor()), FpMatrix::identity(p, 1));
    return m;
}

CatModule zero_module(const FiniteCategory& c, uint8_t p) {
    CatModule m;
    m.cat = &c;
    m.p = p;
    m.dims.assign(std::size_t(c.n_obj()), 0);
    m.act.assign(std::size_t(c.n_mor()), FpMatrix(p, 0, 0));
    return m;
}

CatModule representable(const FiniteCategory& c, uint8_t p, int x) {
    CatModule m;
    m.cat = &c;
    m.p = p;
    m.dims.resize(std::size_t(c.n_obj()));
    // basis of M(y) = hom(y, x) in hom-list order
    std::vector<std::vector<int>> pos(std::size_t(c.n_mor()));
    for (int y = 0; y < c.n_obj(); ++y) {
        m.dims[std::size_t(y)] = uint32_t(c.hom[std::size_t(y)][std::size_t(x)].size());
    }
    auto index_in = [&](int y, int f) {
        const auto& lst = c.hom[std::size_t(y)][std::size_t(x)];
        return int(std::find(lst.begin(), lst.end(), f) - lst.begin());
    };
    m.act.resize(std::size_t(c.n_mor()));
    for (int f = 0; f < c.n_mor(); ++f) {
        int src = c.msrc[f], dstv = c.mdst[f];
        FpMatrix a(p, m.dims[std::size_t(dstv)], m.dims[std::size_t(src)]);
        const auto& basis_dst = c.hom[std::size_t(dstv)][std::size_t(x)];
        for (std::size_t r = 0; r < basis_dst.size(); ++r) {
            int u = basis_dst[r];           // u : dst -> x
            int uf = c.compose(u, f);       // u o f : src -> x
            a.at(uint32_t(r), uint32_t(index_in(src, uf))) = 1;
        }
        m.act[std::size_t(f)] = std::move(a);
    }
    return m;
}

CatModule direct_sum(const CatModule& a, const CatModule& b) {
    if (a.cat != b.cat || a.p != b.p)
        throw std::invalid_argument("direct_sum: incompatible modules");
    CatModule s;
    s.cat = a.cat;
    s.p = a.p;
    s.dims.resize(a.dims.size());
    for (std::size_t i = 0; i < a.dims.size(); ++i) s.dims[i] = a.dims[i] + b.dims[i];
    s.act.resize(a.act.size());
    for (std::size_t f = 0; f < a.act.size(); ++f) {
        const FpMatrix &A = a.act[f], &B = b.act[f];
        FpMatrix m(s.p, A.rows + B.rows, A.cols + B.cols);
        for (uint32_t i = 0; i < A.rows; ++i)
            for (uint32_t j = 0; j < A.cols; ++j) m.at(i, j) = A.at(i, j);
        for (uint32_t i = 0; i < B.rows; ++i)
            for (uint32_t j = 0; j < B.cols; ++j)
                m.at(A.rows + i, A.cols + j) = B.at(i, j);
        s.act[f] = std::move(m);
    }
    return s;
}

std::string ModuleMap::check() const {
    const FiniteCategory& c = *src->cat;
    for (int x = 0; x < c.n_obj(); ++x)
        if (comp[std::size_t(x)].rows != src->dims[std::size_t(x)] ||
            comp[std::size_t(x)].cols != dst->dims[std::size_t(x)])
            return "component shape mismatch";
    for (int f = 0; f < c.n_mor(); ++f) {
        int x = c.msrc[f], y = c.mdst[f];
        // M(f) then phi_x  ==  phi_y then N(f)
        if (!(fp_mul(src->act[std::size_t(f)], comp[std::size_t(x)]) ==
              fp_mul(comp[std::size_t(y)], dst->act[std::size_t(f)])))
            return "naturality fails at morphism " + std::to_string(f);
    }
    return "";
}

std::vector<ModuleMap> hom_space(const CatModule& m, const CatModule& n) {
    const FiniteCategory& c = *m.cat;
    // unknowns: entries of X_x (dimM(x) x dimN(x)), row-major, objects in order
    std::vector<uint32_t> off(std::size_t(c.n_obj()) + 1, 0);
    for (int x = 0; x < c.n_obj(); ++x)
        off[std::size_t(x) + 1] =
            off[std::size_t(x)] + m.dims[std::size_t(x)] * n.dims[std::size_t(x)];
    uint32_t nvar = off.back();
    std::vector<std::vector<uint8_t>> rows;
    for (int f = 0; f < c.n_mor(); ++f) {
        int x = c.msrc[f], y = c.mdst[f];
        const FpMatrix& Am = m.act[std::size_t(f)];  // dimM(y) x dimM(x)
        const FpMatrix& An = n.act[std::size_t(f)];  // dimN(y) x dimN(x)
        // constraint: Am * X_x - X_y * An = 0, one equation per (i, j)
        for (uint32_t i = 0; i < Am.rows; ++i)
            for (uint32_t j = 0; j < n.dims[std::size_t(x)]; ++j) {
                std::vector<uint8_t> row(nvar, 0);
                for (uint32_t k = 0; k < Am.cols; ++k) {
                    uint8_t v = Am.at(i, k);
                    if (v)
                        row[off[std::size_t(x)] + k * n.dims[std::size_t(x)] + j] =
                            uint8_t((row[off[std::size_t(x)] +
                                         k * n.dims[std::size_t(x)] + j] +
                                     v) %
                                    m.p);
                }
                for (uint32_t k = 0; k < An.rows; ++k) {
                    uint8_t v = An.at(k, j);
                    if (v) {
                        auto& cell =
                            row[off[std::size_t(y)] + i * n.dims[std::size_t(y)] + k];
                        cell = uint8_t((cell + m.p - v) % m.p);
                    }
                }
                bool nz = false;
                for (uint8_t z : row)
                    if (z) { nz = true; break; }
                if (nz) rows.push_back(std::move(row));
            }
    }
    FpMatrix sys = FpMatrix::from_rows(m.p, nvar, rows);
    FpMatrix K = right_kernel(sys);
    std::vector<ModuleMap> basis;
    for (uint32_t r = 0; r < K.rows; ++r) {
        ModuleMap mm;
        mm.src = &m;
        mm.dst = &n;
        mm.comp.resize(std::size_t(c.n_obj()));
        for (int x = 0; x < c.n_obj(); ++x) {
            FpMatrix X(m.p, m.dims[std::size_t(x)], n.dims[std::size_t(x)]);
            for (uint32_t i = 0; i < X.rows; ++i)
                for (uint32_t j = 0; j < X.cols; ++j)
                    X.at(i, j) = K.at(r, off[std::size_t(x)] + i * X.cols + j);
            mm.comp[std::size_t(x)] = std::move(X);
        }
        basis.push_back(std::move(mm));
    }
    return basis;
}

uint32_t hom_dim(const CatModule& m, const CatModule& n) {
    return uint32_t(hom_space(m, n).size());
}

SubModule kernel_of(const ModuleMap& f) {
    const CatModule& M = *f.src;
    const FiniteCategory& c = *M.cat;
    SubModule out;
    out.basis.resize(std::size_t(c.n_obj()));
    out.abstract.cat = M.cat;
    out.abstract.p = M.p;
    out.abstract.dims.resize(std::size_t(c.n_obj()));
    for (int x = 0; x < c.n_obj(); ++x) {
        out.basis[std::size_t(x)] = left_kernel(f.comp[std::size_t(x)]);
        out.abstract.dims[std::size_t(x)] = out.basis[std::size_t(x)].rows;
    }
    out.abstract.act.resize(std::size_t(c.n_mor()));
    for (int g = 0; g < c.n_mor(); ++g) {
        int x = c.msrc[g], y = c.mdst[g];
        FpMatrix img = fp_mul(out.basis[std::size_t(y)], M.act[std::size_t(g)]);
        auto X = express_in_basis(out.basis[std::size_t(x)], img);
        if (!X) throw std::logic_error("kernel_of: subspace not preserved");
        out.abstract.act[std::size_t(g)] = std::move(*X);
    }
    return out;
}

namespace {

struct QSpace {
    FpMatrix rel;                  // RREF rows of the subspace
    std::vector<uint32_t> pivots;
    std::vector<uint32_t> free_cols;

    static QSpace of(const FpMatrix& span_rows, uint32_t ambient, uint8_t p) {
        QSpace q;
        FpMatrix sub = span_rows.rows ? span_rows : FpMatrix(p, 0, ambient);
        RrefResult rr = rref(sub);
        q.rel = FpMatrix(p, rr.rank, ambient);
        for (uint32_t i = 0; i < rr.rank; ++i)
            std::copy(rr.r.row(i), rr.r.row(i) + ambient, q.rel.row(i));
        q.pivots = rr.pivots;
        std::vector<bool> is_p(ambient, false);
        for (uint32_t c : q.pivots) is_p[c] = true;
        for (uint32_t c = 0; c < ambient; ++c)
            if (!is_p[c]) q.free_cols.push_back(c);
        return q;
    }
    uint32_t dim() const { return uint32_t(free_cols.size()); }
    // reduce v by the subspace, then read free coordinates
    std::vector<uint8_t> project(std::vector<uint8_t> v, uint8_t p) const {
        for (uint32_t i = 0; i < rel.rows; ++i) {
            uint8_t cval = v[pivots[i]];
            if (cval)
                for (uint32_t j = 0; j < rel.cols; ++j)
                    v[j] = uint8_t((v[j] + (p - cval) * rel.at(i, j)) % p);
        }
        std::vector<uint8_t> out(free_cols.size());
        for (std::size_t k = 0; k < free_cols.size(); ++k) out[k] = v[free_cols[k]];
        return out;
    }
    std::vector<uint8_t> lift(const std::vector<uint8_t>& q, uint32_t ambient) const {
        std::vector<uint8_t> v(ambient, 0);
        for (std::size_t k = 0; k < free_cols.size(); ++k) v[free_cols[k]] = q[k];
        return v;
    }
    FpMatrix proj_matrix(uint32_t ambient, uint8_t p) const {
        FpMatrix P(p, ambient, dim());
        for (uint32_t i = 0; i < ambient; ++i) {
            std::vector<uint8_t> e(ambient, 0);
            e[i] = 1;
            auto q = project(std::move(e), p);
            for (uint32_t j = 0; j < P.cols; ++j) P.at(i, j) = q[j];
        }
        return P;
    }
    FpMatrix lift_matrix(uint32_t ambient, uint8_t p) const {
        FpMatrix L(p, dim(), ambient);
        for (uint32_t i = 0; i < dim(); ++i) L.at(i, free_cols[i]) = 1;
        return L;
    }
};

}  // namespace

QuotientModule cokernel_of(const ModuleMap& f) {
    const CatModule& N = *f.dst;
    const FiniteCategory& c = *N.cat;
    QuotientModule out;
    out.abstract.cat = N.cat;
    out.abstract.p = N.p;
    out.abstract.dims.resize(std::size_t(c.n_obj()));
    out.proj.resize(std::size_t(c.n_obj()));
    out.lift.resize(std::size_t(c.n_obj()));
    std::vector<QSpace> qs(std::size_t(c.n_obj()));
    for (int x = 0; x < c.n_obj(); ++x) {
        qs[std::size_t(x)] =
            QSpace::of(f.comp[std::size_t(x)], N.dims[std::size_t(x)], N.p);
        out.abstract.dims[std::size_t(x)] = qs[std::size_t(x)].dim();
        out.proj[std::size_t(x)] = qs[std::size_t(x)].proj_matrix(
            N.dims[std::size_t(x)], N.p);
        out.lift[std::size_t(x)] = qs[std::size_t(x)].lift_matrix(
            N.dims[std::size_t(x)], N.p);
    }
    out.abstract.act.resize(std::size_t(c.n_mor()));
    for (int g = 0; g < c.n_mor(); ++g) {
        int x = c.msrc[g], y = c.mdst[g];
        out.abstract.act[std::size_t(g)] =
            fp_mul(fp_mul(out.lift[std::size_t(y)], N.act[std::size_t(g)]),
                   out.proj[std::size_t(x)]);
    }
    return out;
}

CatModule restrict_along(const CatFunctor& F, const CatModule& m) {
    if (m.cat != F.dst) throw std::invalid_argument("restrict: module not over target");
    CatModule r;
    r.cat = F.src;
    r.p = m.p;
    r.dims.resize(std::size_t(F.src->n_obj()));
    for (int x = 0; x < F.src->n_obj(); ++x)
        r.dims[std::size_t(x)] = m.dims[std::size_t(F.omap[std::size_t(x)])];
    r.act.resize(std::size_t(F.src->n_mor()));
    for (int f = 0; f < F.src->n_mor(); ++f)
        r.act[std::size_t(f)] = m.act[std::size_t(F.mmap[std::size_t(f)])];
    return r;
}

InducedModule induce_along(const CatFunctor& F, const CatModule& m) {
    if (m.cat != F.src) throw std::invalid_argument("induce: module not over source");
    const FiniteCategory& C = *F.src;
    const FiniteCategory& D = *F.dst;
    InducedModule out;
    out.module.cat = F.dst;
    out.module.p = m.p;
    out.module.dims.resize(std::size_t(D.n_obj()));
    out.ambient_basis.resize(std::size_t(D.n_obj()));
    out.proj.resize(std::size_t(D.n_obj()));
    out.lift.resize(std::size_t(D.n_obj()));
    std::vector<QSpace> qs(std::size_t(D.n_obj()));
    std::vector<uint32_t> ambient_dim(std::size_t(D.n_obj()), 0);
    // ambient basis: (y, f: x -> F y, k)
    for (int x = 0; x < D.n_obj(); ++x) {
        auto& basis = out.ambient_basis[std::size_t(x)];
        for (int y = 0; y < C.n_obj(); ++y)
            for (int f : D.hom[std::size_t(x)][std::size_t(F.omap[std::size_t(y)])])
                for (uint32_t k = 0; k < m.dims[std::size_t(y)]; ++k)
                    basis.push_back({y, f, int(k)});
        ambient_dim[std::size_t(x)] = uint32_t(basis.size());
    }
    auto basis_pos = [&](int x, int y, int f, int k) {
        const auto& basis = out.ambient_basis[std::size_t(x)];
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i][0] == y && basis[i][1] == f && basis[i][2] == k)
                return uint32_t(i);
        throw std::logic_error("induce: ambient basis lookup failed");
    };
    // relations: for phi: y -> y' in C, f in hom_D(x, F y), m'_k basis of M(y'):
    //   (m'_k . A_phi) (x) f  -  e_k (x) (F phi o f)
    for (int x = 0; x < D.n_obj(); ++x) {
        std::vector<std::vector<uint8_t>> rels;
        for (int phi = 0; phi < C.n_mor(); ++phi) {
            int y = C.msrc[phi], yp = C.mdst[phi];
            const FpMatrix& A = m.act[std::size_t(phi)];  // M(y') -> M(y)
            for (int f : D.hom[std::size_t(x)][std::size_t(F.omap[std::size_t(y)])]) {
                int fp2 = D.compose(F.mmap[std::size_t(phi)], f);
                for (uint32_t k = 0; k < m.dims[std::size_t(yp)]; ++k) {
                    std::vector<uint8_t> rel(ambient_dim[std::size_t(x)], 0);
                    for (uint32_t j = 0; j < A.cols; ++j) {
                        uint8_t v = A.at(k, j);
                        if (v) {
                            auto& cell = rel[basis_pos(x, y, f, int(j))];
                            cell = uint8_t((cell + v) % m.p);
                        }
                    }
                    auto& cell = rel[basis_pos(x, yp, fp2, int(k))];
                    cell = uint8_t((cell + m.p - 1) % m.p);
                    bool nz = false;
                    for (uint8_t z : rel)
                        if (z) { nz = true; break; }
                    if (nz) rels.push_back(std::move(rel));
                }
            }
        }
        FpMatrix relm = FpMatrix::from_rows(m.p, ambient_dim[std::size_t(x)], rels);
        qs[std::size_t(x)] = QSpace::of(relm, ambient_dim[std::size_t(x)], m.p);
        out.module.dims[std::size_t(x)] = qs[std::size_t(x)].dim();
        out.proj[std::size_t(x)] =
            qs[std::size_t(x)].proj_matrix(ambient_dim[std::size_t(x)], m.p);
        out.lift[std::size_t(x)] =
            qs[std::size_t(x)].lift_matrix(ambient_dim[std::size_t(x)], m.p);
    }
    // action of psi: x' -> x on the ambient sum: (y, f, k) -> (y, f o psi, k)
    out.module.act.resize(std::size_t(D.n_mor()));
    for (int psi = 0; psi < D.n_mor(); ++psi) {
        int xp = D.msrc[psi], x = D.mdst[psi];
        FpMatrix amb(m.p, ambient_dim[std::size_t(x)], ambient_dim[std::size_t(xp)]);
        const auto& basis = out.ambient_basis[std::size_t(x)];
        for (std::size_t i = 0; i < basis.size(); ++i) {
            int y = basis[i][0], f = basis[i][1], k = basis[i][2];
            amb.at(uint32_t(i), basis_pos(xp, y, D.compose(f, psi), k)) = 1;
        }
        out.module.act[std::size_t(psi)] =
            fp_mul(fp_mul(out.lift[std::size_t(x)], amb), out.proj[std::size_t(xp)]);
    }
    return out;
}

namespace {

// value of the submodule generated by gens at every object
std::vector<FpMatrix> generated_spans(const CatModule& m,
                                      const std::vector<Generator>& gens) {
    const FiniteCategory& c = *m.cat;
    std::vector<std::vector<std::vector<uint8_t>>> rows(std::size_t(c.n_obj()));
    for (const Generator& g : gens)
        for (int y = 0; y < c.n_obj(); ++y)
            for (int f : c.hom[std::size_t(y)][std::size_t(g.obj)])
                rows[std::size_t(y)].push_back(
                    fp_vec_mat(g.vec, m.act[std::size_t(f)]));
    std::vector<FpMatrix> spans(std::size_t(c.n_obj()));
    for (int y = 0; y < c.n_obj(); ++y)
        spans[std::size_t(y)] = row_space_basis(
            FpMatrix::from_rows(m.p, m.dims[std::size_t(y)], rows[std::size_t(y)]));
    return spans;
}

bool spans_full(const CatModule& m, const std::vector<FpMatrix>& spans) {
    for (std::size_t y = 0; y < m.dims.size(); ++y)
        if (spans[y].rows != m.dims[y]) return false;
    return true;
}

}  // namespace

bool generates(const CatModule& m, const std::vector<Generator>& gens) {
    return spans_full(m, generated_spans(m, gens));
}

std::vector<Generator> minimal_generators_pruned(const CatModule& m,
                                                 const std::vector<int>& prune_order) {
    const FiniteCategory& c = *m.cat;
    std::vector<Generator> gens;
    std::vector<FpMatrix> spans(std::size_t(c.n_obj()));
    for (int y = 0; y < c.n_obj(); ++y)
        spans[std::size_t(y)] = FpMatrix(m.p, 0, m.dims[std::size_t(y)]);
    for (int x = 0; x < c.n_obj(); ++x)
        for (uint32_t i = 0; i < m.dims[std::size_t(x)]; ++i) {
            // skip if e_i already in the current span at x
            FpMatrix cand(m.p, 1, m.dims[std::size_t(x)]);
            cand.at(0, i) = 1;
            if (express_in_basis(spans[std::size_t(x)], cand).has_value()) continue;
            Generator g;
            g.obj = x;
            g.vec.assign(m.dims[std::size_t(x)], 0);
            g.vec[i] = 1;
            gens.push_back(std::move(g));
            spans = generated_spans(m, gens);
            if (spans_full(m, spans)) goto done;
        }
done:
    if (!spans_full(m, spans) && m.total_dim() > 0)
        throw std::logic_error("minimal_generators: candidates did not generate");
    // prune in the requested order
    std::vector<int> order = prune_order;
    if (order.empty())
        for (std::size_t i = 0; i < gens.size(); ++i) order.push_back(int(i));
    std::vector<bool> keep(gens.size(), true);
    for (int idx : order) {
        if (idx < 0 || idx >= int(gens.size())) continue;
        keep[std::size_t(idx)] = false;
        std::vector<Generator> rest;
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (keep[i]) rest.push_back(gens[i]);
        if (!generates(m, rest)) keep[std::size_t(idx)] = true;
    }
    std::vector<Generator> out;
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (keep[i]) out.push_back(gens[i]);
    return out;
}

std::vector<Generator> minimal_generators(const CatModule& m) {
    return minimal_generators_pruned(m, {});
}

ResolutionLevel build_resolution_level(const FiniteCategory& c, uint8_t p,
                                        const std::vector<int>& gen_objs) {
    ResolutionLevel lv;
    lv.gen_obj = gen_objs;
    lv.proj_mod = zero_module(c, p);
    lv.basis_index.assign(std::size_t(c.n_obj()), {});
    for (int y = 0; y < c.n_obj(); ++y) {
        for (std::size_t j = 0; j < gen_objs.size(); ++j)
            for (int f : c.hom[std::size_t(y)][std::size_t(gen_objs[j])])
                lv.basis_index[std::size_t(y)].push_back({int(j), f});
        lv.proj_mod.dims[std::size_t(y)] =
            uint32_t(lv.basis_index[std::size_t(y)].size());
    }
    lv.proj_mod.act.resize(std::size_t(c.n_mor()));
    for (int f = 0; f < c.n_mor(); ++f) {
        int x = c.msrc[f], y = c.mdst[f];
        FpMatrix a(p, lv.proj_mod.dims[std::size_t(y)],
                   lv.proj_mod.dims[std::size_t(x)]);
        const auto& by = lv.basis_index[std::size_t(y)];
        const auto& bx = lv.basis_index[std::size_t(x)];
        for (std::size_t rI = 0; rI < by.size(); ++rI) {
            auto [j, u] = by[rI];
            int uf = c.compose(u, f);
            for (std::size_t cI = 0; cI < bx.size(); ++cI)
                if (bx[cI].first == j && bx[cI].second == uf) {
                    a.at(uint32_t(rI), uint32_t(cI)) = 1;
                    break;
                }
        }
        lv.proj_mod.act[std::size_t(f)] = std::move(a);
    }
    return lv;
}

ProjResolution projective_resolution(const CatModule& m, int degree_bound) {
    const FiniteCategory& c = *m.cat;
    ProjResolution r;
    r.cat = m.cat;
    r.p = m.p;
    r.degree_bound = degree_bound;
    r.diff.resize(std::size_t(degree_bound) + 1);

    // current module to cover: first M itself, then kernels (in ambient bases)
    CatModule cur = m;
    std::vector<FpMatrix> cur_basis;  // empty marks "cur == target module"

    for (int level = 0; level <= degree_bound; ++level) {
        std::vector<Generator> gens = minimal_generators(cur);
        std::vector<int> gen_objs;
        for (const Generator& g : gens) gen_objs.push_back(g.obj);
        ResolutionLevel lv = build_resolution_level(c, m.p, gen_objs);
        // cover map h : P_level -> cur, basis (j, f) -> gens[j].vec * act_cur[f]
        std::vector<FpMatrix> h(std::size_t(c.n_obj()));
        for (int y = 0; y < c.n_obj(); ++y) {
            FpMatrix hy(m.p, lv.proj_mod.dims[std::size_t(y)],
                        cur.dims[std::size_t(y)]);
            const auto& by = lv.basis_index[std::size_t(y)];
            for (std::size_t rI = 0; rI < by.size(); ++rI) {
                auto [j, f] = by[rI];
                auto img = fp_vec_mat(gens[std::size_t(j)].vec, cur.act[std::size_t(f)]);
                std::copy(img.begin(), img.end(), hy.row(uint32_t(rI)));
            }
            // surjectivity onto cur (exactness by construction)
            if (fp_rank(hy) != cur.dims[std::size_t(y)])
                throw std::logic_error("resolution: cover not surjective");
            h[std::size_t(y)] = std::move(hy);
        }
        if (level == 0) {
            r.aug = h;
        } else {
            // differential: into ambient coordinates of P_{level-1}
            r.diff[std::size_t(level)].resize(std::size_t(c.n_obj()));
            for (int y = 0; y < c.n_obj(); ++y)
                r.diff[std::size_t(level)][std::size_t(y)] =
                    fp_mul(h[std::size_t(y)], cur_basis[std::size_t(y)]);
        }
        r.levels.push_back(std::move(lv));
        if (level == degree_bound) break;
        // next: kernel of h as a module with ambient bases in P_level
        const ResolutionLevel& built = r.levels.back();
        CatModule next;
        next.cat = m.cat;
        next.p = m.p;
        next.dims.resize(std::size_t(c.n_obj()));
        std::vector<FpMatrix> nb(std::size_t(c.n_obj()));
        for (int y = 0; y < c.n_obj(); ++y) {
            nb[std::size_t(y)] = left_kernel(h[std::size_t(y)]);
            next.dims[std::size_t(y)] = nb[std::size_t(y)].rows;
        }
        next.act.resize(std::size_t(c.n_mor()));
        for (int f = 0; f < c.n_mor(); ++f) {
            int x = c.msrc[f], y = c.mdst[f];
            FpMatrix img = fp_mul(nb[std::size_t(y)],
                                  built.proj_mod.act[std::size_t(f)]);
            auto X = express_in_basis(nb[std::size_t(x)], img);
            if (!X) throw std::logic_error("resolution: kernel not preserved");
            next.act[std::size_t(f)] = std::move(*X);
        }
        cur = std::move(next);
        cur_basis = std::move(nb);
    }
    return r;
}

ExtResult ext_groups(const ProjResolution& r, const CatModule& n, int d) {
    const FiniteCategory& c = *r.cat;
    if (d > r.degree_bound - 1)
        throw std::invalid_argument("ext_groups: resolution too short");
    ExtResult out;
    ChainComplexFp& cc = out.cochain;
    cc.p = r.p;
    cc.lo = 0;
    const int top = d + 1;  // cochain degrees 0..top
    cc.dims.resize(std::size_t(top) + 1);
    out.block_obj.resize(std::size_t(top) + 1);
    std::vector<std::vector<uint32_t>> block_off(std::size_t(top) + 1);
    for (int k = 0; k <= top; ++k) {
        uint32_t t = 0;
        for (int obj : r.levels[std::size_t(k)].gen_obj) {
            out.block_obj[std::size_t(k)].push_back(obj);
            block_off[std::size_t(k)].push_back(t);
            t += n.dims[std::size_t(obj)];
        }
        cc.dims[std::size_t(k)] = t;
    }
    cc.d.resize(std::size_t(top));
    for (int k = 0; k < top; ++k) {
        FpMatrix delta(r.p, cc.dims[std::size_t(k)], cc.dims[std::size_t(k) + 1]);
        const auto& next_lv = r.levels[std::size_t(k) + 1];
        const auto& lv = r.levels[std::size_t(k)];
        for (std::size_t mI = 0; mI < next_lv.gen_obj.size(); ++mI) {
            int z = next_lv.gen_obj[mI];
            // row of d_{k+1}[z] at the basis element (m, id_z)
            int row_idx = -1;
            const auto& bz = next_lv.basis_index[std::size_t(z)];
            for (std::size_t i = 0; i < bz.size(); ++i)
                if (bz[i].first == int(mI) && bz[i].second == c.identity[std::size_t(z)]) {
                    row_idx = int(i);
                    break;
                }
            if (row_idx < 0) throw std::logic_error("ext: identity basis not found");
            const FpMatrix& dk = r.diff[std::size_t(k) + 1][std::size_t(z)];
            // entries over basis (j, f) of P_k(z)
            const auto& bkz = lv.basis_index[std::size_t(z)];
            for (std::size_t i = 0; i < bkz.size(); ++i) {
                uint8_t coeff = dk.at(uint32_t(row_idx), uint32_t(i));
                if (!coeff) continue;
                auto [j, f] = bkz[i];
                const FpMatrix& An = n.act[std::size_t(f)];  // N(x_j) -> N(z)
                for (uint32_t a2 = 0; a2 < An.rows; ++a2)
                    for (uint32_t b2 = 0; b2 < An.cols; ++b2) {
                        auto& cell = delta.at(
                            block_off[std::size_t(k)][std::size_t(j)] + a2,
                            block_off[std::size_t(k) + 1][mI] + b2);
                        cell = uint8_t((cell + coeff * An.at(a2, b2)) % r.p);
                    }
            }
        }
        cc.d[std::size_t(k)] = std::move(delta);
    }
    std::string err = cc.validate();
    if (!err.empty()) throw std::logic_error("ext: bad cochain complex: " + err);
    for (int k = 0; k <= d; ++k) {
        CohomologyAt h = cochain_cohomology(cc, k);
        out.dims.push_back(h.dim);
        out.representatives.push_back(h.representatives);
    }
    return out;
}

ExtResult ext_groups(const CatModule& m, const CatModule& n, int d) {
    ProjResolution r = projective_resolution(m, d + 1);
    return ext_groups(r, n, d);
}

std::vector<uint32_t> higher_limits(const CatModule& n, int d) {
    if (n.cat->n_obj() == 0) return std::vector<uint32_t>(std::size_t(d) + 1, 0);
    CatModule cst = constant_module(*n.cat, n.p);
    ExtResult e = ext_groups(cst, n, d);
    // cross-check: Ext^0(const, N) = lim^0 by definition, always
    if (e.dims[0] != lim0(n).dim)
        throw std::logic_error("higher_limits: Ext^0 disagrees with lim0");
    return e.dims;
}

Lim0 lim0(const CatModule& m) {
    const FiniteCategory& c = *m.cat;
    Lim0 out;
    out.offset.resize(std::size_t(c.n_obj()) + 1, 0);
    for (int x = 0; x < c.n_obj(); ++x)
        out.offset[std::size_t(x) + 1] = out.offset[std::size_t(x)] + m.dims[std::size_t(x)];
    uint32_t total = out.offset.back();
    std::vector<std::vector<uint8_t>> rows;
    // family (m_x): for every f: x -> y, m_y * act_f - m_x = 0
    for (int f = 0; f < c.n_mor(); ++f) {
        int x = c.msrc[f], y = c.mdst[f];
        const FpMatrix& A = m.act[std::size_t(f)];
        for (uint32_t j = 0; j < m.dims[std::size_t(x)]; ++j) {
            std::vector<uint8_t> row(total, 0);
            for (uint32_t i = 0; i < m.dims[std::size_t(y)]; ++i)
                row[out.offset[std::size_t(y)] + i] = A.at(i, j);
            auto& cell = row[out.offset[std::size_t(x)] + j];
            cell = uint8_t((cell + m.p - 1) % m.p);
            bool nz = false;
            for (uint8_t z : row)
                if (z) { nz = true; break; }
            if (nz) rows.push_back(std::move(row));
        }
    }
    FpMatrix sys = FpMatrix::from_rows(m.p, total, rows);
    out.basis = right_kernel(sys);
    out.dim = out.basis.rows;
    return out;
}

namespace {

// chain lift lambda_k of the identity of the constant module through
// P (over C) and Res_F Q (over C, from the resolution Q over D).
struct Lift {
    // per level, per generator j of P_k: value in Q_k(F y_j)
    std::vector<std::vector<std::vector<uint8_t>>> gen_vals;
};

std::vector<uint8_t> apply_lift_level(
    const CatFunctor& F, const ProjResolution& P, const ProjResolution& Q,
    const Lift& L, int level, int y, const std::vector<uint8_t>& w) {
    // w in P_level(y); result in Q_level(F y)
    const auto& by = P.levels[std::size_t(level)].basis_index[std::size_t(y)];
    int Fy = F.omap[std::size_t(y)];
    std::vector<uint8_t> out(
        Q.levels[std::size_t(level)].proj_mod.dims[std::size_t(Fy)], 0);
    for (std::size_t i = 0; i < by.size(); ++i) {
        if (!w[i]) continue;
        auto [j, f] = by[i];
        // value = gen_vals[j] acted by Q_level(F f)
        auto moved = fp_vec_mat(L.gen_vals[std::size_t(level)][std::size_t(j)],
                                Q.levels[std::size_t(level)]
                                    .proj_mod.act[std::size_t(F.mmap[std::size_t(f)])]);
        for (std::size_t t = 0; t < out.size(); ++t)
            out[t] = uint8_t((out[t] + w[i] * moved[t]) % P.p);
    }
    return out;
}

Lift build_lift(const CatFunctor& F, const ProjResolution& P,
                const ProjResolution& Q, int top, bool alt) {
    Lift L;
    L.gen_vals.resize(std::size_t(top) + 1);
    for (int k = 0; k <= top; ++k) {
        const auto& lv = P.levels[std::size_t(k)];
        for (std::size_t j = 0; j < lv.gen_obj.size(); ++j) {
            int yj = lv.gen_obj[j];
            int Fy = F.omap[std::size_t(yj)];
            std::vector<uint8_t> rhs;
            FpMatrix sysm;
            if (k == 0) {
                // condition: u * augQ[Fy] = augP value of (j, id)
                const auto& by = lv.basis_index[std::size_t(yj)];
                int idx = -1;
                for (std::size_t i = 0; i < by.size(); ++i)
                    if (by[i].first == int(j) &&
                        by[i].second == P.cat->identity[std::size_t(yj)]) {
                        idx = int(i);
                        break;
                    }
                rhs.assign(1, P.aug[std::size_t(yj)].at(uint32_t(idx), 0));
                sysm = Q.aug[std::size_t(Fy)];
            } else {
                // condition: u * dQ_k[Fy] = lambda_{k-1}(dP_k(e_{j, id}))
                const auto& by = lv.basis_index[std::size_t(yj)];
                int idx = -1;
                for (std::size_t i = 0; i < by.size(); ++i)
                    if (by[i].first == int(j) &&
                        by[i].second == P.cat->identity[std::size_t(yj)]) {
                        idx = int(i);
                        break;
                    }
                const FpMatrix& dP = P.diff[std::size_t(k)][std::size_t(yj)];
                std::vector<uint8_t> w(dP.cols);
                for (uint32_t t = 0; t < dP.cols; ++t) w[t] = dP.at(uint32_t(idx), t);
                rhs = apply_lift_level(F, P, Q, L, k - 1, yj, w);
                sysm = Q.diff[std::size_t(k)][std::size_t(Fy)];
            }
            std::optional<std::vector<uint8_t>> u;
            if (!alt) {
                u = solve_left(sysm, rhs);
            } else {
                // same system with reversed unknown order: a different but
                // deterministic lift, for the independence assertion
                FpMatrix rev(sysm.p, sysm.rows, sysm.cols);
                for (uint32_t i = 0; i < sysm.rows; ++i)
                    for (uint32_t j2 = 0; j2 < sysm.cols; ++j2)
                        rev.at(sysm.rows - 1 - i, j2) = sysm.at(i, j2);
                auto ur = solve_left(rev, rhs);
                if (ur) {
                    u = std::vector<uint8_t>(ur->size());
                    for (std::size_t t = 0; t < ur->size(); ++t)
                        (*u)[ur->size() - 1 - t] = (*ur)[t];
                }
            }
            if (!u) throw std::logic_error("map_on_cohomology: lift failed");
            L.gen_vals[std::size_t(k)].push_back(std::move(*u));
        }
    }
    return L;
}

CohMapResult map_on_cohomology_pre_impl(const CatFunctor& F, const CatModule& n,
                                         int d, const ProjResolution& P,
                                         const ProjResolution& Q,
                                         const ExtResult& ext_src,
                                         const ExtResult& ext_dst, bool alt) {
    CatModule resn = restrict_along(F, n);
    CohMapResult out;
    out.source = ext_dst;
    out.target = ext_src;
    Lift L = build_lift(F, P, Q, d + 1, alt);
    // cochain map T_k: hom(Q_k, N) -> hom(P_k, Res N)
    // block (gen m of Q_k at z_m) x (gen j of P_k at y_j):
    //   v_j = sum over decomposition of lambda(e_{j,id}) in Q_k(F y_j):
    //   coeff_{m,u} * (w_m * N(u))
    std::vector<FpMatrix> T(std::size_t(d) + 1);
    for (int k = 0; k <= d; ++k) {
        uint32_t srcdim = out.source.cochain.dims[std::size_t(k)];
        uint32_t dstdim = out.target.cochain.dims[std::size_t(k)];
        FpMatrix Tk(n.p, srcdim, dstdim);
        const auto& Plv = P.levels[std::size_t(k)];
        const auto& Qlv = Q.levels[std::size_t(k)];
        // offsets
        std::vector<uint32_t> qoff, poff;
        {
            uint32_t t = 0;
            for (int obj : Qlv.gen_obj) {
                qoff.push_back(t);
                t += n.dims[std::size_t(obj)];
            }
            t = 0;
            for (int obj : Plv.gen_obj) {
                poff.push_back(t);
                t += resn.dims[std::size_t(obj)];
            }
        }
        for (std::size_t j = 0; j < Plv.gen_obj.size(); ++j) {
            int yj = Plv.gen_obj[j];
            int Fy = F.omap[std::size_t(yj)];
            const auto& lam = L.gen_vals[std::size_t(k)][j];  // in Q_k(F yj)
            const auto& qb = Qlv.basis_index[std::size_t(Fy)];
            for (std::size_t i = 0; i < qb.size(); ++i) {
                uint8_t coeff = lam[i];
                if (!coeff) continue;
                auto [mIdx, u] = qb[i];  // u : Fy -> z_m
                const FpMatrix& An = n.act[std::size_t(u)];  // N(z_m) -> N(Fy)
                for (uint32_t a2 = 0; a2 < An.rows; ++a2)
                    for (uint32_t b2 = 0; b2 < An.cols; ++b2) {
                        auto& cell = Tk.at(qoff[std::size_t(mIdx)] + a2,
                                           poff[j] + b2);
                        cell = uint8_t((cell + coeff * An.at(a2, b2)) % n.p);
                    }
            }
        }
        T[std::size_t(k)] = std::move(Tk);
    }
    // verify T is a cochain map, then induce on cohomology
    for (int k = 0; k < d; ++k) {
        FpMatrix lhs = fp_mul(out.source.cochain.d[std::size_t(k)], T[std::size_t(k) + 1]);
        FpMatrix rhs = fp_mul(T[std::size_t(k)], out.target.cochain.d[std::size_t(k)]);
        if (!(lhs == rhs))
            throw std::logic_error("map_on_cohomology: lift is not a chain map");
    }
    for (int i = 0; i <= d; ++i) {
        const FpMatrix& repsD = out.source.representatives[std::size_t(i)];
        FpMatrix pushed = fp_mul(repsD, T[std::size_t(i)]);
        // express classes modulo coboundaries
        const FpMatrix& repsC = out.target.representatives[std::size_t(i)];
        FpMatrix cob = (i > 0)
                           ? row_space_basis(out.target.cochain.d[std::size_t(i) - 1])
                           : FpMatrix(n.p, 0, out.target.cochain.dims[std::size_t(i)]);
        FpMatrix basis = fp_vstack(repsC, cob);
        auto X = express_in_basis(basis, pushed);
        if (!X) throw std::logic_error("map_on_cohomology: image not a cocycle class");
        FpMatrix mapi(n.p, pushed.rows, repsC.rows);
        for (uint32_t r2 = 0; r2 < pushed.rows; ++r2)
            for (uint32_t c2 = 0; c2 < repsC.rows; ++c2)
                mapi.at(r2, c2) = X->at(r2, c2);
        out.maps.push_back(std::move(mapi));
    }
    return out;
}

CohMapResult map_on_cohomology_impl(const CatFunctor& F, const CatModule& n, int d,
                                    bool alt) {
    if (F.src->n_obj() == 0) {
        // everything on the source side is zero
        CohMapResult out;
        CatModule cstD = constant_module(*F.dst, n.p);
        ProjResolution Q = projective_resolution(cstD, d + 1);
        out.source = ext_groups(Q, n, d);
        out.target.dims.assign(std::size_t(d) + 1, 0);
        for (int i = 0; i <= d; ++i)
            out.maps.push_back(FpMatrix(n.p, out.source.dims[std::size_t(i)], 0));
        return out;
    }
    CatModule resn = restrict_along(F, n);
    CatModule cstC = constant_module(*F.src, n.p);
    CatModule cstD = constant_module(*F.dst, n.p);
    ProjResolution P = projective_resolution(cstC, d + 1);
    ProjResolution Q = projective_resolution(cstD, d + 1);
    ExtResult ext_dst = ext_groups(Q, n, d);
    ExtResult ext_src = ext_groups(P, resn, d);
    return map_on_cohomology_pre_impl(F, n, d, P, Q, ext_src, ext_dst, alt);
}

}  // namespace

CohMapResult map_on_cohomology(const CatFunctor& F, const CatModule& n, int d) {
    return map_on_cohomology_impl(F, n, d, false);
}

CohMapResult map_on_cohomology_alt(const CatFunctor& F, const CatModule& n, int d) {
    return map_on_cohomology_impl(F, n, d, true);
}

CohMapResult map_on_cohomology_pre(const CatFunctor& F, const CatModule& n, int d,
                                   const ProjResolution& P, const ProjResolution& Q,
                                   const ExtResult& ext_src, const ExtResult& ext_dst,
                                   bool alt) {
    return map_on_cohomology_pre_impl(F, n, d, P, Q, ext_src, ext_dst, alt);
}

CatModule atomic_module(const FiniteCategory& c, uint8_t p,
                        const std::vector<int>& class_objs,
                        const std::function<FpMatrix(int)>& rho, uint32_t value_dim) {
    CatModule m = zero_module(c, p);
    std::vector<bool> in_class(std::size_t(c.n_obj()), false);
    for (int x : class_objs) in_class[std::size_t(x)] = true;
    int base = *std::min_element(class_objs.begin(), class_objs.end());
    for (int x : class_objs) m.dims[std::size_t(x)] = value_dim;
    // chosen isos theta_x : base -> x (identity at base, least witness else)
    std::vector<int> theta(std::size_t(c.n_obj()), -1), theta_inv(std::size_t(c.n_obj()), -1);
    for (int x : class_objs) {
        if (x == base) {
            theta[std::size_t(x)] = c.identity[std::size_t(base)];
            theta_inv[std::size_t(x)] = c.identity[std::size_t(base)];
            continue;
        }
        for (int f : c.hom[std::size_t(base)][std::size_t(x)]) {
            for (int g : c.hom[std::size_t(x)][std::size_t(base)])
                if (c.compose(g, f) == c.identity[std::size_t(base)] &&
                    c.compose(f, g) == c.identity[std::size_t(x)]) {
                    theta[std::size_t(x)] = f;
                    theta_inv[std::size_t(x)] = g;
                    break;
                }
            if (theta[std::size_t(x)] >= 0) break;
        }
        if (theta[std::size_t(x)] < 0)
            throw std::invalid_argument("atomic_module: objects not isomorphic");
    }
    auto is_iso = [&](int f) {
        int x = c.msrc[f], y = c.mdst[f];
        for (int g : c.hom[std::size_t(y)][std::size_t(x)])
            if (c.compose(g, f) == c.identity[std::size_t(x)] &&
                c.compose(f, g) == c.identity[std::size_t(y)])
                return true;
        return false;
    };
    for (int f = 0; f < c.n_mor(); ++f) {
        int x = c.msrc[f], y = c.mdst[f];
        if (!in_class[std::size_t(x)] || !in_class[std::size_t(y)] || !is_iso(f)) {
            m.act[std::size_t(f)] =
                FpMatrix(p, m.dims[std::size_t(y)], m.dims[std::size_t(x)]);
            continue;
        }
        // a(f) = theta_y^{-1} o f o theta_x : base -> base
        int a = c.compose(theta_inv[std::size_t(y)],
                          c.compose(f, theta[std::size_t(x)]));
        m.act[std::size_t(f)] = rho(a);
    }
    return m;
}

bool modules_isomorphic(const CatModule& a, const CatModule& b) {
    if (a.dims != b.dims) return false;
    auto basis = hom_space(a, b);
    if (basis.empty()) return a.total_dim() == 0;
    // enumerate small combinations deterministically
    std::size_t k = basis.size();
    std::size_t count = 1;
    for (std::size_t i = 0; i < k; ++i) {
        count *= a.p;
        if (count > 4096) { count = 4096; break; }
    }
    const FiniteCategory& c = *a.cat;
    for (std::size_t code = 1; code < count; ++code) {
        std::size_t t = code;
        std::vector<uint8_t> coeff(k);
        for (std::size_t i = 0; i < k; ++i) {
            coeff[i] = uint8_t(t % a.p);
            t /= a.p;
        }
        bool ok = true;
        for (int x = 0; x < c.n_obj() && ok; ++x) {
            FpMatrix M(a.p, a.dims[std::size_t(x)], b.dims[std::size_t(x)]);
            for (std::size_t i = 0; i < k; ++i)
                if (coeff[i]) {
                    FpMatrix scaled = basis[i].comp[std::size_t(x)];
                    for (auto& v : scaled.a) v = uint8_t((v * coeff[i]) % a.p);
                    M = fp_add(M, scaled);
                }
            if (M.rows != M.cols || !fp_inverse(M).has_value()) ok = false;
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace folim
