#ifndef GRADAL_DECOMP_HPP
#define GRADAL_DECOMP_HPP

// Prime decomposition and reducedness:
//   zero-dimensional ideals: eliminant splitting, primitive-element
//     certificates, Frobenius fixed-space splitting over finite fields;
//   positive dimension: factor-splitting, principal primes, and a
//     GTZ-style contraction over nested rational function fields.

#include "groebner.hpp"

namespace gradal {

using IdealGens = std::vector<MPoly>;

inline std::vector<MPoly> ideal_sum(const IdealGens& a, const IdealGens& b) {
    IdealGens out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

// is q contained in p
inline bool ideal_contained(const RingPtr&, const IdealGens& q, const GBasis& p_gb) {
    for (auto& g : q)
        if (!p_gb.contains(g)) return false;
    return true;
}

// --- zero-dimensional decomposition ----------------------------------------

namespace detail_zdp {

inline MPoly upoly_at(const UPoly& f, const RingPtr& R, const MPoly& u) {
    MPoly out = MPoly::zero(R);
    MPoly pw = MPoly::one(R);
    for (size_t i = 0; i < f.c.size(); ++i) {
        if (!f.c[i].is_zero()) out = out + pw * f.c[i];
        pw = pw * u;
    }
    return out;
}

// kernel basis of (M - id) for the q-power Frobenius on the staircase algebra
inline std::vector<std::vector<FElem>> frobenius_fixed_space(const GBasis& G, const std::vector<Expv>& B) {
    const FieldPtr& k = G.ring->k;
    Int q = k->size();
    size_t n = B.size();
    // columns: phi(b_j) - b_j
    std::vector<std::vector<FElem>> M(n, std::vector<FElem>(n, FElem::zero(k)));
    for (size_t j = 0; j < n; ++j) {
        MPoly bj = MPoly::term(G.ring, B[j], FElem::one(k));
        MPoly img = bj;
        Int e = q;
        // compute bj^q mod I by square-and-multiply on the exponent
        img = MPoly::one(G.ring);
        MPoly base = bj;
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) img = G.reduce(img * base);
            base = G.reduce(base * base);
            e >>= 1;
        }
        auto v = coords_on_staircase(G, B, img);
        for (size_t i = 0; i < n; ++i) M[i][j] = v[i];
        M[j][j] = M[j][j] - FElem::one(k);
    }
    // kernel via Gaussian elimination
    std::vector<long> pivot_of_col(n, -1);
    size_t row = 0;
    for (size_t col = 0; col < n && row < n; ++col) {
        size_t sel = row;
        while (sel < n && M[sel][col].is_zero()) ++sel;
        if (sel == n) continue;
        std::swap(M[sel], M[row]);
        FElem inv = M[row][col].inv();
        for (size_t j = col; j < n; ++j) M[row][j] = M[row][j] * inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == row || M[i][col].is_zero()) continue;
            FElem f = M[i][col];
            for (size_t j = col; j < n; ++j) M[i][j] = M[i][j] - f * M[row][j];
        }
        pivot_of_col[col] = static_cast<long>(row);
        ++row;
    }
    std::vector<std::vector<FElem>> kernel;
    for (size_t col = 0; col < n; ++col) {
        if (pivot_of_col[col] >= 0) continue;
        std::vector<FElem> v(n, FElem::zero(k));
        v[col] = FElem::one(k);
        for (size_t c2 = 0; c2 < n; ++c2) {
            if (pivot_of_col[c2] < 0) continue;
            v[c2] = -M[static_cast<size_t>(pivot_of_col[c2])][col];
        }
        kernel.push_back(v);
    }
    return kernel;
}

}  // namespace detail_zdp

// maximal ideals over a zero-dimensional ideal
inline std::vector<IdealGens> zero_dim_primes(const RingPtr& R, const IdealGens& gens) {
    const FieldPtr& k = R->k;
    std::vector<IdealGens> out;
    std::deque<IdealGens> queue{gens};
    size_t safety = 0;
    while (!queue.empty()) {
        if (++safety > 4000) throw DeskCapError("zero_dim_primes: split limit exceeded");
        IdealGens I = queue.front();
        queue.pop_front();
        GBasis G = groebner(R, I);
        if (G.is_unit_ideal()) continue;
        auto B = staircase_basis(G);
        if (B.size() == 1) {
            out.push_back(G.basis);
            continue;
        }
        // coordinate eliminants
        bool split = false;
        long dmax = 0;
        for (size_t i = 0; i < R->nvars() && !split; ++i) {
            UPoly m = minpoly_of(G, B, MPoly::var(R, i));
            auto fac = factor(m);
            if (fac.factors.size() > 1 || fac.factors[0].mult > 1) {
                for (auto& fu : fac.factors)
                    queue.push_back(ideal_sum(I, {detail_zdp::upoly_at(fu.poly, R, MPoly::var(R, i))}));
                split = true;
            } else
                dmax = std::max(dmax, m.degree());
        }
        if (split) continue;
        if (static_cast<size_t>(dmax) == B.size()) {
            out.push_back(G.basis);
            continue;
        }
        // primitive-element trials: deterministic small combinations
        static const int combos[][4] = {{1, 1, 0, 0},  {1, -1, 0, 0}, {1, 2, 0, 0},  {1, 1, 1, 0},
                                        {1, -1, 1, 0}, {1, 2, 3, 0},  {1, 1, 1, 1},  {2, 1, 0, 0},
                                        {1, 0, 1, 0},  {0, 1, 1, 0},  {1, -2, 0, 0}, {3, 1, 0, 0}};
        for (auto& cvec : combos) {
            MPoly u = MPoly::zero(R);
            for (size_t i = 0; i < R->nvars() && i < 4; ++i)
                u = u + MPoly::var(R, i) * FElem::from_int(k, Int(cvec[i]));
            if (u.is_zero()) continue;
            UPoly m = minpoly_of(G, B, u);
            auto fac = factor(m);
            if (fac.factors.size() > 1 || fac.factors[0].mult > 1) {
                for (auto& fu : fac.factors) queue.push_back(ideal_sum(I, {detail_zdp::upoly_at(fu.poly, R, u)}));
                split = true;
                break;
            }
            if (static_cast<size_t>(m.degree()) == B.size()) {
                out.push_back(G.basis);
                split = true;
                break;
            }
        }
        if (split) continue;
        if (k->is_finite()) {
            auto kernel = detail_zdp::frobenius_fixed_space(G, B);
            if (kernel.size() == 1) {
                out.push_back(G.basis);
                continue;
            }
            // a non-constant fixed element splits the spectrum over F_q values
            std::vector<FElem> uvec;
            for (auto& v : kernel) {
                bool constant = true;
                // constant = multiple of the coordinate vector of the monomial 1
                for (size_t j = 0; j < B.size(); ++j)
                    if (mono::total_degree(B[j]) > 0 && !v[j].is_zero()) constant = false;
                if (!constant) {
                    uvec = v;
                    break;
                }
            }
            if (uvec.empty()) throw std::logic_error("zero_dim_primes: fixed space without splitter");
            MPoly u = MPoly::zero(R);
            for (size_t j = 0; j < B.size(); ++j) u.add_term(B[j], uvec[j]);
            for (auto& c : enumerate_field(k)) {
                IdealGens J = ideal_sum(I, {u - MPoly::constant(R, c)});
                auto GJ = groebner(R, J);
                if (!GJ.is_unit_ideal()) queue.push_back(J);
            }
            continue;
        }
        throw DeskCapError("zero_dim_primes: no primitive element found over infinite field");
    }
    // deduplicate
    std::vector<IdealGens> uniq;
    for (auto& p : out) {
        bool dup = false;
        for (auto& q : uniq)
            if (ideal_equal(R, p, q)) dup = true;
        if (!dup) uniq.push_back(p);
    }
    return uniq;
}

// --- GTZ-style minimal primes ------------------------------------------------

namespace detail_gtz {

struct NestedField {
    FieldPtr top;                    // k(u_{i1})(u_{i2})...
    std::vector<size_t> uvars;       // indices (in the base ring) of the U variables
    std::vector<FieldPtr> levels;    // levels[0] = k, levels.back() = top
};

inline NestedField build_nested(const RingPtr& R, const std::vector<bool>& umask) {
    NestedField N;
    N.levels.push_back(R->k);
    for (size_t i = 0; i < umask.size(); ++i) {
        if (!umask[i]) continue;
        N.uvars.push_back(i);
        N.levels.push_back(Field::rational_functions(N.levels.back(), R->vars[i]));
    }
    N.top = N.levels.back();
    return N;
}

inline FElem embed_to_top(const NestedField& N, const FElem& c, size_t from_level) {
    FElem cur = c;
    for (size_t l = from_level; l + 1 < N.levels.size(); ++l)
        cur = FElem::from_fraction(N.levels[l + 1], {cur}, {FElem::one(N.levels[l])});
    return cur;
}

// generator u_j (level j+1 variable) as an element of the top field
inline FElem uvar_in_top(const NestedField& N, size_t j) {
    FElem g = FElem::generator(N.levels[j + 1]);
    return embed_to_top(N, g, j + 1);
}

// flatten an element of the nested tower into (numerator, denominator) as
// polynomials in the U variables of the base ring
inline void flatten(const NestedField& N, const RingPtr& R, const FElem& e, size_t level, MPoly& num, MPoly& den);

inline void flatten_poly(const NestedField& N, const RingPtr& R, const std::vector<FElem>& c, size_t level,
                         size_t var_index, MPoly& num, MPoly& den) {
    // c: polynomial in u_{var_index} with coefficients at `level`
    den = MPoly::one(R);
    std::vector<MPoly> nums(c.size(), MPoly::zero(R));
    std::vector<MPoly> dens(c.size(), MPoly::one(R));
    for (size_t i = 0; i < c.size(); ++i)
        if (!c[i].is_zero()) flatten(N, R, c[i], level, nums[i], dens[i]);
    for (size_t i = 0; i < c.size(); ++i) den = den * dens[i];
    num = MPoly::zero(R);
    MPoly x = MPoly::var(R, N.uvars[var_index]);
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        MPoly t = nums[i];
        for (size_t j = 0; j < c.size(); ++j)
            if (j != i) t = t * dens[j];
        num = num + t * x.pow(static_cast<unsigned long>(i));
    }
}

inline void flatten(const NestedField& N, const RingPtr& R, const FElem& e, size_t level, MPoly& num, MPoly& den) {
    if (level == 0) {
        num = MPoly::constant(R, e);
        den = MPoly::one(R);
        return;
    }
    const auto& [n, d] = e.frac();
    MPoly nn, nd, dn, dd;
    flatten_poly(N, R, n, level - 1, level - 1, nn, nd);
    flatten_poly(N, R, d, level - 1, level - 1, dn, dd);
    num = nn * dd;
    den = nd * dn;
}

}  // namespace detail_gtz

inline std::vector<IdealGens> minimal_primes(const RingPtr& R, const IdealGens& gens, int depth = 0);

namespace detail_gtz {

inline std::vector<IdealGens> gtz_step(const RingPtr& R, const GBasis& G, int depth) {
    auto umask = max_independent_set(G);
    NestedField N = build_nested(R, umask);
    // upstairs ring: remaining variables over the nested field
    std::vector<std::string> rvars;
    std::vector<size_t> rindex;  // upstairs var -> base var index
    for (size_t i = 0; i < R->nvars(); ++i)
        if (!umask[i]) {
            rvars.push_back(R->vars[i]);
            rindex.push_back(i);
        }
    auto Rup = MPolyRing::make(N.top, rvars, {});

    auto lift_up = [&](const MPoly& f) {
        MPoly out = MPoly::zero(Rup);
        for (auto& [m, c] : f.terms()) {
            FElem coef = embed_to_top(N, c, 0);
            Expv m2 = mono::one(Rup->nvars());
            for (size_t j = 0; j < N.uvars.size(); ++j) {
                int e = m[N.uvars[j]];
                if (e) coef = coef * uvar_in_top(N, j).pow(Int(e));
            }
            for (size_t j = 0; j < rindex.size(); ++j) m2[j] = m[rindex[j]];
            out.add_term(m2, coef);
        }
        return out;
    };

    IdealGens up;
    for (auto& g : G.basis) up.push_back(lift_up(g));
    auto up_primes = zero_dim_primes(Rup, up);

    // h: product of the (flattened) leading coefficients and denominators of
    // the upstairs reduced basis of the extended ideal
    auto Gup = groebner(Rup, up);
    MPoly h = MPoly::one(R);
    auto absorb = [&](const FElem& c) {
        MPoly n = MPoly::one(R), d = MPoly::one(R);
        flatten(N, R, c, N.levels.size() - 1, n, d);
        if (!n.is_zero()) h = h * n;
        h = h * d;
    };
    for (auto& g : Gup.basis) absorb(g.lc());

    std::vector<IdealGens> primes;
    for (auto& P : up_primes) {
        // clear denominators downstairs, saturate by them
        IdealGens down;
        MPoly sat = MPoly::one(R);
        for (auto& g : P) {
            MPoly acc = MPoly::zero(R);
            MPoly common_den = MPoly::one(R);
            std::vector<std::pair<MPoly, MPoly>> parts;  // per term: (num incl rest-vars, den)
            for (auto& [m, c] : g.terms()) {
                MPoly n = MPoly::one(R), d = MPoly::one(R);
                flatten(N, R, c, N.levels.size() - 1, n, d);
                Expv m2 = mono::one(R->nvars());
                for (size_t j = 0; j < rindex.size(); ++j) m2[rindex[j]] = m[j];
                parts.emplace_back(n * MPoly::term(R, m2, FElem::one(R->k)), d);
            }
            for (auto& [n2, d2] : parts) common_den = common_den * d2;
            for (size_t i = 0; i < parts.size(); ++i) {
                MPoly t = parts[i].first;
                for (size_t j = 0; j < parts.size(); ++j)
                    if (j != i) t = t * parts[j].second;
                acc = acc + t;
            }
            down.push_back(acc);
            sat = sat * common_den;
        }
        sat = sat * h;
        auto contracted = saturate(R, down, sat);
        primes.push_back(contracted);
    }
    // components inside V(h)
    IdealGens withh = G.basis;
    withh.push_back(h);
    auto rest = minimal_primes(R, withh, depth + 1);
    primes.insert(primes.end(), rest.begin(), rest.end());
    return primes;
}

}  // namespace detail_gtz

inline std::vector<IdealGens> minimal_primes(const RingPtr& R, const IdealGens& gens, int depth) {
    if (depth > 16) throw DeskCapError("minimal_primes: recursion limit exceeded");
    GBasis G = groebner(R, gens);
    if (G.is_unit_ideal()) return {};
    if (G.is_zero_ideal()) return {IdealGens{}};

    std::vector<IdealGens> found;
    // split along a factorizable basis element
    for (auto& g : G.basis) {
        auto fac = factor_mpoly(g);
        if (fac.size() > 1 || (fac.size() == 1 && fac[0].second > 1) ||
            (fac.size() == 1 && fac[0].first != g.monic())) {
            for (auto& [f, m] : fac) {
                auto sub = minimal_primes(R, ideal_sum(G.basis, {f}), depth + 1);
                found.insert(found.end(), sub.begin(), sub.end());
            }
            goto prune;
        }
    }
    if (is_zero_dimensional(G)) {
        found = zero_dim_primes(R, G.basis);
        goto prune;
    }
    if (G.basis.size() == 1) {  // principal, generator irreducible by the loop above
        found.push_back(G.basis);
        goto prune;
    }
    found = detail_gtz::gtz_step(R, G, depth);

prune: {
    std::vector<std::pair<IdealGens, GBasis>> uniq;
    for (auto& p : found) {
        GBasis pg = groebner(R, p);
        if (pg.is_unit_ideal()) continue;
        bool skip = false;
        for (auto& [q, qg] : uniq)
            if (ideal_contained(R, pg.basis, qg) && ideal_contained(R, qg.basis, pg)) skip = true;
        if (!skip) uniq.emplace_back(pg.basis, pg);
    }
    // remove non-minimal
    std::vector<IdealGens> out;
    for (size_t i = 0; i < uniq.size(); ++i) {
        bool minimal = true;
        for (size_t j = 0; j < uniq.size(); ++j) {
            if (i == j) continue;
            // p_j strictly inside p_i => p_i not minimal
            if (ideal_contained(R, uniq[j].first, uniq[i].second) &&
                !ideal_contained(R, uniq[i].first, uniq[j].second))
                minimal = false;
        }
        if (minimal) out.push_back(uniq[i].first);
    }
    return out;
}
}

// --- radical and reducedness ---------------------------------------------------

inline std::vector<MPoly> radical_ideal(const RingPtr& R, const IdealGens& gens) {
    auto primes = minimal_primes(R, gens);
    if (primes.empty()) return {MPoly::one(R)};
    std::vector<MPoly> acc = primes[0];
    for (size_t i = 1; i < primes.size(); ++i) acc = intersect_ideals(R, acc, primes[i]);
    return acc;
}

inline bool is_radical_ideal(const RingPtr& R, const IdealGens& gens) {
    GBasis G = groebner(R, gens);
    if (G.is_unit_ideal()) return true;  // empty scheme
    if (G.is_zero_ideal()) return true;
    // quick separable accept in dimension zero
    if (is_zero_dimensional(G)) {
        auto B = staircase_basis(G);
        bool all_sep = true;
        for (size_t i = 0; i < R->nvars() && all_sep; ++i) {
            UPoly m = minpoly_of(G, B, MPoly::var(R, i));
            if (!is_separable(m)) all_sep = false;
        }
        if (all_sep) return true;
    }
    auto rad = radical_ideal(R, gens);
    for (auto& g : rad)
        if (!G.contains(g)) return false;
    return true;
}

// --- connected components via idempotents --------------------------------------

struct ComponentSystem {
    std::vector<MPoly> idempotents;                 // complete orthogonal system mod I
    std::vector<std::vector<size_t>> prime_groups;  // indices into the prime list
};

inline ComponentSystem connected_components_system(const RingPtr& R, const IdealGens& gens,
                                                   const std::vector<IdealGens>& primes) {
    ComponentSystem out;
    GBasis G = groebner(R, gens);
    if (primes.empty()) return out;  // empty scheme
    size_t s = primes.size();
    // connectivity graph
    std::vector<std::vector<size_t>> adj(s);
    std::vector<GBasis> pgb;
    for (auto& p : primes) pgb.push_back(groebner(R, p));
    for (size_t i = 0; i < s; ++i)
        for (size_t j = i + 1; j < s; ++j) {
            auto sum = ideal_sum(primes[i], primes[j]);
            if (!groebner(R, sum).is_unit_ideal()) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
        }
    std::vector<int> group(s, -1);
    size_t ngroups = 0;
    for (size_t i = 0; i < s; ++i) {
        if (group[i] >= 0) continue;
        std::deque<size_t> bfs{i};
        group[i] = static_cast<int>(ngroups);
        while (!bfs.empty()) {
            size_t v = bfs.front();
            bfs.pop_front();
            for (size_t w : adj[v])
                if (group[w] < 0) {
                    group[w] = static_cast<int>(ngroups);
                    bfs.push_back(w);
                }
        }
        ++ngroups;
    }
    out.prime_groups.assign(ngroups, {});
    for (size_t i = 0; i < s; ++i) out.prime_groups[static_cast<size_t>(group[i])].push_back(i);

    if (ngroups == 1) {
        out.idempotents.push_back(G.reduce(MPoly::one(R)));
        return out;
    }
    for (size_t g = 0; g < ngroups; ++g) {
        std::vector<MPoly> J, K;
        bool firstJ = true, firstK = true;
        for (size_t i = 0; i < s; ++i) {
            if (group[i] == static_cast<int>(g)) {
                J = firstJ ? primes[i] : intersect_ideals(R, J, primes[i]);
                firstJ = false;
            } else {
                K = firstK ? primes[i] : intersect_ideals(R, K, primes[i]);
                firstK = false;
            }
        }
        // 1 = a + b, a in J, b in K
        IdealGens both = J;
        both.insert(both.end(), K.begin(), K.end());
        auto GB = groebner(R, both, true);
        std::vector<MPoly> cof;
        MPoly r = GB.reduce(MPoly::one(R), &cof);
        if (!r.is_zero()) throw std::logic_error("connected_components: components not comaximal");
        MPoly b = MPoly::zero(R);
        for (size_t i = J.size(); i < both.size(); ++i) b = b + cof[i] * both[i];
        // Hensel-lift b to an idempotent mod I
        MPoly e = G.reduce(b);
        for (int iter = 0; iter < 64; ++iter) {
            MPoly defect = G.reduce(e * e - e);
            if (defect.is_zero()) break;
            e = G.reduce(e * e * (MPoly::constant(R, FElem::from_int(R->k, Int(3))) - e - e));
            if (iter == 63) throw std::logic_error("connected_components: idempotent lift did not converge");
        }
        out.idempotents.push_back(e);
    }
    return out;
}

// 1 in I + (f): f vanishes nowhere on V(I)
inline bool is_unit_mod(const RingPtr& R, const IdealGens& gens, const MPoly& f) {
    auto G = groebner(R, ideal_sum(gens, {f}));
    return G.is_unit_ideal();
}

}  // namespace gradal

#endif
