#ifndef GRADAL_GROEBNER_HPP
#define GRADAL_GROEBNER_HPP

// Buchberger engine with cofactor tracking, elimination-based ideal calculus
// (quotient, saturation, intersection), dimension from staircases, eliminants
// by Krylov iteration, zero-dimensional decomposition with Berlekamp-style
// splitting over finite fields, and GTZ-flavoured minimal primes.

#include "mpoly.hpp"

#include <deque>
#include <set>

namespace gradal {

struct DeskCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// normal form of f against a list of (monic or not) divisors; optional
// cofactors: f = sum cof[i]*div[i] + r
inline MPoly normal_form(const MPoly& f, const std::vector<MPoly>& divs, std::vector<MPoly>* cof = nullptr) {
    const RingPtr& R = f.ring();
    if (cof) cof->assign(divs.size(), MPoly::zero(R));
    MPoly p = f, r = MPoly::zero(R);
    while (!p.is_zero()) {
        bool reduced = false;
        for (size_t i = 0; i < divs.size(); ++i) {
            if (divs[i].is_zero()) continue;
            if (mono::divides(divs[i].lm(), p.lm())) {
                Expv m = mono::div(p.lm(), divs[i].lm());
                FElem c = p.lc() / divs[i].lc();
                p = p - divs[i].mul_term(m, c);
                if (cof) (*cof)[i].add_term(m, c);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            r.add_term(p.lm(), p.lc());
            MPoly p2(R);
            auto it = p.terms().begin();
            ++it;
            for (; it != p.terms().end(); ++it) p2.add_term(it->first, it->second);
            p = std::move(p2);
        }
    }
    return r;
}

class GBasis {
public:
    RingPtr ring;
    std::vector<MPoly> gens;
    std::vector<MPoly> basis;                 // reduced, monic, deterministic order
    std::vector<std::vector<MPoly>> reps;     // basis[i] = sum reps[i][j]*gens[j] (when tracked)
    bool with_reps = false;

    MPoly reduce(const MPoly& f, std::vector<MPoly>* cof_on_gens = nullptr) const {
        if (!cof_on_gens) return normal_form(f, basis);
        std::vector<MPoly> cof;
        MPoly r = normal_form(f, basis, &cof);
        if (!with_reps) throw std::logic_error("GBasis: cofactors on generators need rep tracking");
        cof_on_gens->assign(gens.size(), MPoly::zero(ring));
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t j = 0; j < gens.size(); ++j) (*cof_on_gens)[j] = (*cof_on_gens)[j] + cof[i] * reps[i][j];
        return r;
    }
    bool contains(const MPoly& f) const { return reduce(f).is_zero(); }
    bool is_unit_ideal() const { return basis.size() == 1 && basis[0].total_degree() == 0 && !basis[0].is_zero(); }
    bool is_zero_ideal() const { return basis.empty(); }
};

inline GBasis groebner(const RingPtr& R, std::vector<MPoly> gens, bool with_reps = false) {
    GBasis out;
    out.ring = R;
    out.gens = gens;
    out.with_reps = with_reps;

    std::vector<MPoly> G;
    std::vector<std::vector<MPoly>> reps;
    for (size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].is_zero()) continue;
        G.push_back(gens[i]);
        if (with_reps) {
            std::vector<MPoly> r(gens.size(), MPoly::zero(R));
            r[i] = MPoly::one(R);
            reps.push_back(std::move(r));
        }
    }
    struct Pair {
        size_t i, j;
        Expv lcm;
        long deg;
    };
    auto make_pair = [&](size_t i, size_t j) {
        Pair p{i, j, mono::lcm(G[i].lm(), G[j].lm()), 0};
        p.deg = mono::total_degree(p.lcm);
        return p;
    };
    std::deque<Pair> pairs;
    for (size_t i = 0; i < G.size(); ++i)
        for (size_t j = i + 1; j < G.size(); ++j) pairs.push_back(make_pair(i, j));

    size_t safety = 0;
    while (!pairs.empty()) {
        if (++safety > 200000) throw DeskCapError("groebner: pair limit exceeded");
        // normal selection: smallest lcm degree first (deterministic)
        size_t best = 0;
        for (size_t i = 1; i < pairs.size(); ++i)
            if (pairs[i].deg < pairs[best].deg ||
                (pairs[i].deg == pairs[best].deg && R->mono_cmp(pairs[i].lcm, pairs[best].lcm) < 0))
                best = i;
        Pair pr = pairs[best];
        pairs.erase(pairs.begin() + static_cast<long>(best));
        if (mono::coprime(G[pr.i].lm(), G[pr.j].lm())) continue;  // Buchberger 1

        Expv mi = mono::div(pr.lcm, G[pr.i].lm());
        Expv mj = mono::div(pr.lcm, G[pr.j].lm());
        MPoly s = G[pr.i].mul_term(mi, G[pr.j].lc()) - G[pr.j].mul_term(mj, G[pr.i].lc());
        std::vector<MPoly> cof;
        MPoly r = normal_form(s, G, with_reps ? &cof : nullptr);
        if (r.is_zero()) continue;
        if (with_reps) {
            std::vector<MPoly> rep(gens.size(), MPoly::zero(R));
            for (size_t j2 = 0; j2 < gens.size(); ++j2) {
                rep[j2] = reps[pr.i][j2].mul_term(mi, G[pr.j].lc()) - reps[pr.j][j2].mul_term(mj, G[pr.i].lc());
                for (size_t t2 = 0; t2 < G.size(); ++t2) rep[j2] = rep[j2] - cof[t2] * reps[t2][j2];
            }
            reps.push_back(std::move(rep));
        }
        size_t newi = G.size();
        G.push_back(r);
        for (size_t i = 0; i < newi; ++i) pairs.push_back(make_pair(i, newi));
    }

    // inter-reduce to the reduced basis
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < G.size(); ++i) {
            if (G[i].is_zero()) continue;
            std::vector<MPoly> others;
            std::vector<size_t> omap;
            for (size_t j = 0; j < G.size(); ++j)
                if (j != i && !G[j].is_zero()) {
                    others.push_back(G[j]);
                    omap.push_back(j);
                }
            std::vector<MPoly> cof;
            MPoly r = normal_form(G[i], others, with_reps ? &cof : nullptr);
            if (r != G[i]) {
                changed = true;
                if (with_reps) {
                    for (size_t j2 = 0; j2 < gens.size(); ++j2) {
                        MPoly acc = reps[i][j2];
                        for (size_t t2 = 0; t2 < others.size(); ++t2) acc = acc - cof[t2] * reps[omap[t2]][j2];
                        reps[i][j2] = acc;
                    }
                }
                G[i] = r;
            }
        }
    }
    std::vector<std::pair<MPoly, std::vector<MPoly>>> nz;
    for (size_t i = 0; i < G.size(); ++i) {
        if (G[i].is_zero()) continue;
        FElem inv = G[i].lc().inv();
        MPoly g = G[i] * inv;
        std::vector<MPoly> rp;
        if (with_reps) {
            rp = reps[i];
            for (auto& x : rp) x = x * inv;
        }
        nz.emplace_back(std::move(g), std::move(rp));
    }
    std::sort(nz.begin(), nz.end(),
              [&](const auto& a, const auto& b) { return R->mono_cmp(a.first.lm(), b.first.lm()) < 0; });
    for (auto& [g, rp] : nz) {
        out.basis.push_back(g);
        if (with_reps) out.reps.push_back(rp);
    }
    return out;
}

// --- ring surgery -----------------------------------------------------------

// a ring with `extra` fresh variables prepended as an elimination block
inline RingPtr prepend_block(const RingPtr& R, const std::vector<std::string>& extra) {
    std::vector<std::string> vars = extra;
    vars.insert(vars.end(), R->vars.begin(), R->vars.end());
    std::vector<size_t> blocks{extra.size()};
    for (auto b : R->blocks) blocks.push_back(b);
    return MPolyRing::make(R->k, std::move(vars), std::move(blocks));
}

inline MPoly lift_to(const MPoly& f, const RingPtr& big, size_t offset) {
    std::vector<size_t> map(f.ring()->nvars());
    for (size_t i = 0; i < map.size(); ++i) map[i] = i + offset;
    return remap(f, big, map);
}

inline MPoly drop_front_vars(const MPoly& f, const RingPtr& small, size_t offset) {
    MPoly out = MPoly::zero(small);
    for (auto& [m, c] : f.terms()) {
        Expv m2(m.begin() + static_cast<long>(offset), m.end());
        out.add_term(m2, c);
    }
    return out;
}

// generators of I : h^inf
inline std::vector<MPoly> saturate(const RingPtr& R, const std::vector<MPoly>& gens, const MPoly& h) {
    if (h.is_zero()) throw std::domain_error("saturate: zero element");
    auto big = prepend_block(R, {"@z"});
    std::vector<MPoly> J;
    for (auto& g : gens) J.push_back(lift_to(g, big, 1));
    J.push_back(MPoly::one(big) - MPoly::var(big, 0) * lift_to(h, big, 1));
    auto G = groebner(big, J);
    std::vector<MPoly> out;
    for (auto& g : G.basis) {
        if (g.uses_var(0)) continue;
        out.push_back(drop_front_vars(g, R, 1));
    }
    if (out.empty()) out.push_back(MPoly::zero(R));
    return out;
}

inline std::vector<MPoly> intersect_ideals(const RingPtr& R, const std::vector<MPoly>& I,
                                           const std::vector<MPoly>& J) {
    auto big = prepend_block(R, {"@t"});
    MPoly t = MPoly::var(big, 0);
    std::vector<MPoly> K;
    for (auto& g : I) K.push_back(t * lift_to(g, big, 1));
    for (auto& g : J) K.push_back((MPoly::one(big) - t) * lift_to(g, big, 1));
    auto G = groebner(big, K);
    std::vector<MPoly> out;
    for (auto& g : G.basis)
        if (!g.uses_var(0)) out.push_back(drop_front_vars(g, R, 1));
    return out;
}

// I : h (single colon)
inline std::vector<MPoly> ideal_quotient(const RingPtr& R, const std::vector<MPoly>& I, const MPoly& h) {
    auto inter = intersect_ideals(R, I, {h});
    std::vector<MPoly> out;
    for (auto& g : inter) {
        auto q = detail_mfac::exact_divide(g, h);
        if (!q) throw std::logic_error("ideal_quotient: division failed");
        out.push_back(*q);
    }
    return out;
}

inline bool ideal_equal(const RingPtr& R, const std::vector<MPoly>& I, const std::vector<MPoly>& J) {
    auto GI = groebner(R, I);
    auto GJ = groebner(R, J);
    if (GI.basis.size() != GJ.basis.size()) return false;
    for (size_t i = 0; i < GI.basis.size(); ++i)
        if (GI.basis[i] != GJ.basis[i]) return false;
    return true;
}

// --- dimension and staircases ------------------------------------------------

// Krull dimension of R/I: size of the largest variable set meeting no leading
// monomial support. -1 for the unit ideal.
inline long ideal_dimension(const GBasis& G) {
    if (G.is_unit_ideal()) return -1;
    size_t n = G.ring->nvars();
    if (n > 24) throw DeskCapError("ideal_dimension: too many variables for subset enumeration");
    std::vector<Expv> lms;
    for (auto& g : G.basis) lms.push_back(g.lm());
    long best = 0;
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        long size = static_cast<long>(__builtin_popcountl(mask));
        if (size <= best) continue;
        bool independent = true;
        for (auto& m : lms) {
            bool inside = true;
            for (size_t i = 0; i < n; ++i)
                if (m[i] > 0 && !(mask >> i & 1)) {
                    inside = false;
                    break;
                }
            if (inside) {
                independent = false;
                break;
            }
        }
        if (independent) best = size;
    }
    return best;
}

// lexicographically-first maximal independent set (as a bool mask)
inline std::vector<bool> max_independent_set(const GBasis& G) {
    size_t n = G.ring->nvars();
    long d = ideal_dimension(G);
    std::vector<Expv> lms;
    for (auto& g : G.basis) lms.push_back(g.lm());
    auto independent = [&](unsigned long mask) {
        for (auto& m : lms) {
            bool inside = true;
            for (size_t i = 0; i < n; ++i)
                if (m[i] > 0 && !(mask >> i & 1)) {
                    inside = false;
                    break;
                }
            if (inside) return false;
        }
        return true;
    };
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        if (__builtin_popcountl(mask) != d) continue;
        if (independent(mask)) {
            std::vector<bool> out(n, false);
            for (size_t i = 0; i < n; ++i) out[i] = (mask >> i & 1) != 0;
            return out;
        }
    }
    return std::vector<bool>(n, false);
}

inline bool is_zero_dimensional(const GBasis& G) {
    if (G.is_unit_ideal()) return true;
    return ideal_dimension(G) == 0;
}

// monomial basis of R/I for zero-dimensional I
inline std::vector<Expv> staircase_basis(const GBasis& G) {
    size_t n = G.ring->nvars();
    if (G.is_unit_ideal()) return {};
    std::vector<Expv> lms;
    for (auto& g : G.basis) lms.push_back(g.lm());
    // bound per variable from pure powers
    std::vector<int> bound(n, -1);
    for (auto& m : lms) {
        size_t support = 0, var = 0;
        for (size_t i = 0; i < n; ++i)
            if (m[i]) {
                ++support;
                var = i;
            }
        if (support == 1) bound[var] = std::max(bound[var], m[var]);
        if (support == 0) return {};
    }
    for (size_t i = 0; i < n; ++i)
        if (bound[i] < 0) throw std::domain_error("staircase_basis: ideal is not zero-dimensional");
    std::vector<Expv> out;
    Expv cur(n, 0);
    size_t cap = 1;
    for (size_t i = 0; i < n; ++i) cap *= static_cast<size_t>(bound[i]);
    if (cap > 100000) throw DeskCapError("staircase_basis: quotient too large");
    while (true) {
        bool reducible = false;
        for (auto& m : lms)
            if (mono::divides(m, cur)) {
                reducible = true;
                break;
            }
        if (!reducible) out.push_back(cur);
        size_t i = 0;
        while (i < n) {
            if (++cur[i] >= bound[i]) {
                cur[i] = 0;
                ++i;
            } else
                break;
        }
        if (i == n) break;
    }
    return out;
}

// coordinates of NF(f) over the staircase
inline std::vector<FElem> coords_on_staircase(const GBasis& G, const std::vector<Expv>& B, const MPoly& f) {
    MPoly r = G.reduce(f);
    std::vector<FElem> out(B.size(), FElem::zero(G.ring->k));
    for (auto& [m, c] : r.terms()) {
        auto it = std::find(B.begin(), B.end(), m);
        if (it == B.end()) throw std::logic_error("coords_on_staircase: monomial outside staircase");
        out[static_cast<size_t>(it - B.begin())] = c;
    }
    return out;
}

// minimal polynomial of the image of u in R/I (zero-dimensional)
inline UPoly minpoly_of(const GBasis& G, const std::vector<Expv>& B, const MPoly& u) {
    const FieldPtr& k = G.ring->k;
    std::vector<std::vector<FElem>> rows;      // echelonized Krylov vectors
    std::vector<std::vector<FElem>> combos;    // row i = combo over powers
    MPoly cur = MPoly::one(G.ring);
    size_t maxdim = B.size();
    for (size_t step = 0; step <= maxdim; ++step) {
        std::vector<FElem> v = coords_on_staircase(G, B, cur);
        std::vector<FElem> combo(step + 1, FElem::zero(k));
        combo[step] = FElem::one(k);
        // eliminate against existing rows
        for (size_t r = 0; r < rows.size(); ++r) {
            size_t piv = 0;
            while (piv < maxdim && rows[r][piv].is_zero()) ++piv;
            if (piv == maxdim) continue;
            if (!v[piv].is_zero()) {
                FElem f = v[piv] / rows[r][piv];
                for (size_t j2 = 0; j2 < maxdim; ++j2) v[j2] = v[j2] - f * rows[r][j2];
                for (size_t j2 = 0; j2 < combos[r].size() && j2 < combo.size(); ++j2)
                    combo[j2] = combo[j2] - f * combos[r][j2];
            }
        }
        bool zero = true;
        for (auto& x : v)
            if (!x.is_zero()) {
                zero = false;
                break;
            }
        if (zero) return UPoly(k, combo);  // dependence found: minpoly coefficients
        rows.push_back(v);
        combos.push_back(combo);
        cur = G.reduce(cur * u);
    }
    throw std::logic_error("minpoly_of: no dependence found");
}

}  // namespace gradal

#endif
