#ifndef GRADAL_FACTOR_HPP
#define GRADAL_FACTOR_HPP

// Univariate factorization over the supported coefficient fields:
//   finite fields          -> Cantor-Zassenhaus
//   Q                      -> Zassenhaus (monicize, factor mod p, Hensel, recombine)
//   number fields Ext(Q)   -> Trager norms
//   rational functions F(t)-> clear denominators + Kronecker to F
// plus squarefree tests that stay honest over imperfect fields.

#include "field.hpp"

#include <algorithm>
#include <numeric>

namespace gradal {

struct FactorUnit {
    UPoly poly;  // monic irreducible
    unsigned mult;
};

struct Factorization {
    FElem unit;  // leading scalar
    std::vector<FactorUnit> factors;

    UPoly product(const FieldPtr&) const {  // field kept for call-site symmetry
        UPoly r = UPoly::constant(unit);
        for (auto& f : factors)
            for (unsigned i = 0; i < f.mult; ++i) r = r * f.poly;
        return r;
    }
};

std::vector<UPoly> factor_squarefree_monic(const UPoly& f);  // fwd; irreducible parts
Factorization factor(const UPoly& f);

// --- finite field helpers -------------------------------------------------

inline std::vector<FElem> enumerate_field(const FieldPtr& k) {
    switch (k->kind) {
        case Field::Kind::Fp: {
            std::vector<FElem> out;
            for (Int i = 0; i < k->p; ++i) out.push_back(FElem::from_int(k, i));
            return out;
        }
        case Field::Kind::Ext: {
            auto base = enumerate_field(k->base);
            size_t d = k->ext_degree();
            std::vector<FElem> out;
            std::vector<size_t> idx(d, 0);
            while (true) {
                std::vector<FElem> coords;
                for (size_t i = 0; i < d; ++i) coords.push_back(base[idx[i]]);
                out.push_back(FElem::from_coords(k, coords));
                size_t i = 0;
                while (i < d && ++idx[i] == base.size()) idx[i++] = 0;
                if (i == d) break;
            }
            return out;
        }
        default: throw std::domain_error("enumerate_field: not a finite field");
    }
}

inline FElem random_elem(const FieldPtr& k, std::mt19937& rng) {
    switch (k->kind) {
        case Field::Kind::Fp: {
            std::uniform_int_distribution<unsigned long> d(0, mpz_get_ui(k->p.get_mpz_t()) - 1);
            return FElem::from_int(k, Int(d(rng)));
        }
        case Field::Kind::Ext: {
            std::vector<FElem> coords;
            for (size_t i = 0; i < k->ext_degree(); ++i) coords.push_back(random_elem(k->base, rng));
            return FElem::from_coords(k, coords);
        }
        case Field::Kind::Q: {
            std::uniform_int_distribution<int> d(-20, 20);
            return FElem::from_rat(k, Rat(d(rng)));
        }
        default: throw std::domain_error("random_elem: unsupported field");
    }
}

// --- Cantor-Zassenhaus -----------------------------------------------------

namespace detail_cz {

inline void edf(const UPoly& g, long d, const Int& q, std::mt19937& rng, std::vector<UPoly>& out) {
    if (g.degree() == d) {
        out.push_back(g.monic());
        return;
    }
    const FieldPtr& k = g.k;
    UPoly splitter = UPoly::zero(k);
    while (true) {
        // random polynomial of degree < deg g
        std::vector<FElem> rc;
        for (long i = 0; i < g.degree(); ++i) rc.push_back(random_elem(k, rng));
        UPoly r(k, std::move(rc));
        if (r.degree() < 1) continue;
        UPoly h;
        if (k->characteristic() == 2) {
            // trace map over F_{2^(e*d)}
            unsigned long bits = 0;
            Int qq = q;
            while (qq > 1) {
                qq /= 2;
                ++bits;
            }
            UPoly t = r.rem(g), acc = t;
            for (unsigned long i = 1; i < bits * static_cast<unsigned long>(d); ++i) {
                t = (t * t).rem(g);
                acc = (acc + t).rem(g);
            }
            h = gcd(acc, g);
        } else {
            Int e = (int_pow(q, static_cast<unsigned long>(d)) - 1) / 2;
            UPoly s = pow_mod(r, e, g);
            h = gcd(s - UPoly::one(k), g);
        }
        if (h.degree() > 0 && h.degree() < g.degree()) {
            edf(h, d, q, rng, out);
            edf(g.div_exact(h).monic(), d, q, rng, out);
            return;
        }
    }
}

inline std::vector<UPoly> cz_squarefree(const UPoly& f0) {
    const FieldPtr& k = f0.k;
    Int q = k->size();
    std::mt19937 rng(0x5EED1234u);
    UPoly f = f0.monic();
    std::vector<UPoly> out;
    UPoly h = UPoly::x(k);
    long d = 0;
    while (f.degree() > 0) {
        ++d;
        if (2 * d > f.degree()) {
            out.push_back(f.monic());
            break;
        }
        h = pow_mod(h, q, f);
        UPoly g = gcd(h - UPoly::x(k), f);
        if (g.degree() > 0) {
            edf(g, d, q, rng, out);
            f = f.div_exact(g);
            h = h.rem(f);
        }
    }
    return out;
}

}  // namespace detail_cz

// --- squarefree machinery ---------------------------------------------------

// p-th root of a field element, when one exists
inline std::optional<FElem> pth_root(const FElem& a) {
    const FieldPtr& k = a.field();
    Int p = k->characteristic();
    if (p == 0) throw std::domain_error("pth_root: characteristic zero");
    if (k->is_finite()) {
        // Frobenius is bijective
        Int e = k->size() / p;
        return a.pow(e);
    }
    if (k->kind == Field::Kind::RatFunc) {
        auto root_poly = [&](const std::vector<FElem>& c) -> std::optional<std::vector<FElem>> {
            std::vector<FElem> out;
            unsigned long pu = mpz_get_ui(p.get_mpz_t());
            for (size_t i = 0; i < c.size(); ++i) {
                if (i % pu == 0) {
                    auto r = c[i].is_zero() ? std::optional<FElem>(c[i]) : pth_root(c[i]);
                    if (!r) return std::nullopt;
                    out.push_back(*r);
                } else if (!c[i].is_zero())
                    return std::nullopt;
            }
            return out;
        };
        auto n = root_poly(a.frac().first);
        if (!n) return std::nullopt;
        auto d = root_poly(a.frac().second);
        if (!d) return std::nullopt;
        return FElem::from_fraction(k, *n, *d);
    }
    throw std::domain_error("pth_root: unsupported field");
}

// Is f free of repeated irreducible factors over its own coefficient field?
inline bool is_squarefree_over_field(const UPoly& f) {
    if (f.degree() <= 1) return true;
    UPoly d = f.derivative();
    if (!d.is_zero()) {
        if (f.k->characteristic() == 0) return gcd(f, d).degree() == 0;
        if (gcd(f, d).degree() == 0) return true;
        // char p with nontrivial gcd: decide by factorization
        auto fac = factor(f);
        for (auto& fu : fac.factors)
            if (fu.mult > 1) return false;
        return true;
    }
    // f = g(x^p)
    Int p = f.k->characteristic();
    if (p == 0) return true;  // derivative zero in char 0 means constant
    unsigned long pu = mpz_get_ui(p.get_mpz_t());
    std::vector<FElem> gc;
    for (size_t i = 0; i < f.c.size(); i += pu) gc.push_back(f.c[i]);
    UPoly g(f.k, std::move(gc));
    if (f.k->is_perfect()) return false;  // g(x^p) is a p-th power over a perfect field
    // imperfect: g(x^p) squarefree iff g squarefree and no irreducible factor of g
    // has all coefficients p-th powers
    if (!is_squarefree_over_field(g)) return false;
    auto fac = factor(g);
    for (auto& fu : fac.factors) {
        bool all_pth = true;
        for (auto& c : fu.poly.c)
            if (!c.is_zero() && !pth_root(c).has_value()) {
                all_pth = false;
                break;
            }
        if (all_pth) return false;
    }
    return true;
}

// squarefree part over the coefficient field (product of distinct irreducibles)
inline UPoly squarefree_part(const UPoly& f) {
    if (f.degree() <= 0) return f.monic();
    if (f.k->characteristic() == 0) return f.div_exact(gcd(f, f.derivative())).monic();
    auto fac = factor(f);
    UPoly r = UPoly::one(f.k);
    for (auto& fu : fac.factors) r = r * fu.poly;
    return r;
}

// squarefree decomposition: list of (g_i, i) with f = unit * prod g_i^i
inline std::vector<std::pair<UPoly, unsigned>> squarefree_decomposition(const UPoly& f) {
    auto fac = factor(f);
    std::map<unsigned, UPoly> by_mult;
    for (auto& fu : fac.factors) {
        auto it = by_mult.find(fu.mult);
        if (it == by_mult.end())
            by_mult.emplace(fu.mult, fu.poly);
        else
            it->second = it->second * fu.poly;
    }
    std::vector<std::pair<UPoly, unsigned>> out;
    for (auto& [m, g] : by_mult) out.emplace_back(g, m);
    return out;
}

// --- Zassenhaus over Q ------------------------------------------------------

namespace detail_q {

struct ZPoly {
    std::vector<Int> c;
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    long deg() const { return static_cast<long>(c.size()) - 1; }
};

inline ZPoly to_z(const UPoly& f, Int& den_out) {
    std::vector<Rat> qs;
    for (auto& x : f.c) qs.push_back(x.q_value());
    Int l = common_denominator(qs);
    ZPoly z;
    for (auto& q : qs) z.c.push_back(rat_num(q * Rat(l)));
    den_out = l;
    z.trim();
    return z;
}

inline Int content(const ZPoly& f) {
    Int g = 0;
    for (auto& x : f.c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g == 0 ? Int(1) : g;
}

inline ZPoly mul(const ZPoly& a, const ZPoly& b) {
    if (a.c.empty() || b.c.empty()) return {};
    ZPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, Int(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
}

// exact division test in Z[x]; quotient returned when divisible
inline bool divides(const ZPoly& d, ZPoly a, ZPoly* quot = nullptr) {
    if (d.c.empty()) return false;
    ZPoly q;
    q.c.assign(a.c.size(), Int(0));
    while (a.deg() >= d.deg() && !a.c.empty()) {
        Int lead = a.c.back();
        if (lead % d.c.back() != 0) return false;
        Int f = lead / d.c.back();
        size_t shift = a.c.size() - d.c.size();
        q.c[shift] = f;
        for (size_t i = 0; i < d.c.size(); ++i) a.c[shift + i] -= f * d.c[i];
        a.trim();
    }
    if (!a.c.empty()) return false;
    if (quot) {
        q.trim();
        *quot = q;
    }
    return true;
}

inline UPoly to_fp(const ZPoly& f, const FieldPtr& fp) {
    std::vector<FElem> c;
    for (auto& x : f.c) c.push_back(FElem::from_int(fp, x));
    return UPoly(fp, std::move(c));
}

// coefficients of a mod m, balanced to (-m/2, m/2]
inline ZPoly balance(ZPoly a, const Int& m) {
    for (auto& x : a.c) {
        x %= m;
        if (x < 0) x += m;
        if (x * 2 > m) x -= m;
    }
    a.trim();
    return a;
}

// Hensel: lift f = g*h (mod p) to f = g*h (mod m) with m >= target.
// f, g, h monic over Z; returns the modulus reached. Linear steps with the
// fixed mod-p Bezout pair: u = t*e rem g, v = (e - u*h)/g.
inline Int hensel_pair(const ZPoly& f, ZPoly& g, ZPoly& h, const Int& p, const Int& target) {
    auto fp = Field::prime_field(p);
    UPoly gp = to_fp(g, fp), hp = to_fp(h, fp);
    std::vector<FElem> s, t;
    auto one = pv::ext_gcd(fp, gp.c, hp.c, s, t);
    if (pv::deg(one) != 0) throw std::domain_error("hensel: factors not coprime mod p");
    UPoly sp(fp, s), tp(fp, t);
    Int m = p;
    while (m < target) {
        // e = (f - g*h)/m mod p
        ZPoly gh = mul(g, h);
        ZPoly diff;
        diff.c.assign(std::max(f.c.size(), gh.c.size()), Int(0));
        for (size_t i = 0; i < f.c.size(); ++i) diff.c[i] += f.c[i];
        for (size_t i = 0; i < gh.c.size(); ++i) diff.c[i] -= gh.c[i];
        diff.trim();
        ZPoly e;
        e.c.reserve(diff.c.size());
        for (auto& x : diff.c) e.c.push_back(x / m);
        UPoly ep = to_fp(e, fp);
        UPoly gpc = to_fp(g, fp), hpc = to_fp(h, fp);
        UPoly u = (tp * ep).rem(gpc);
        UPoly v = (ep - u * hpc).div_exact(gpc);
        auto lift_add = [&](ZPoly& base, const UPoly& delta) {
            if (base.c.size() < delta.c.size()) base.c.resize(delta.c.size(), Int(0));
            for (size_t i = 0; i < delta.c.size(); ++i) {
                Int d = delta.c[i].fp_value();
                if (d * 2 > p) d -= p;
                base.c[i] += m * d;
            }
            base.trim();
        };
        lift_add(g, u);
        lift_add(h, v);
        m *= p;
    }
    return m;
}

std::vector<ZPoly> factor_z_squarefree_monic(const ZPoly& f);

}  // namespace detail_q

// --- Trager over number fields ----------------------------------------------

namespace detail_trager {
std::vector<UPoly> factor_numberfield_squarefree(const UPoly& f);
}

// --- rational function fields ------------------------------------------------

namespace detail_ratfunc {
std::vector<std::pair<UPoly, unsigned>> factor_ratfunc(const UPoly& f);
}

// --- main dispatch ------------------------------------------------------------

inline std::vector<UPoly> factor_squarefree_monic(const UPoly& f) {
    const FieldPtr& k = f.k;
    if (f.degree() <= 0) return {};
    if (f.degree() == 1) return {f.monic()};
    if (k->is_finite()) return detail_cz::cz_squarefree(f);
    if (k->kind == Field::Kind::Q) {
        Int den;
        auto z = detail_q::to_z(f, den);
        Int c = detail_q::content(z);
        for (auto& x : z.c) x /= c;
        if (z.c.back() < 0)
            for (auto& x : z.c) x = -x;
        // monicize: F(y) = lc^(n-1) f(y/lc)
        Int lc = z.c.back();
        long n = z.deg();
        detail_q::ZPoly F;
        F.c.assign(z.c.size(), Int(0));
        for (long i = 0; i <= n; ++i) F.c[static_cast<size_t>(i)] = z.c[static_cast<size_t>(i)] * int_pow(lc, static_cast<unsigned long>(n - 1 - i >= 0 ? n - 1 - i : 0));
        // when i == n the exponent above would be -1; fix: leading becomes 1
        F.c[static_cast<size_t>(n)] = 1;
        auto zf = detail_q::factor_z_squarefree_monic(F);
        std::vector<UPoly> out;
        for (auto& g : zf) {
            // g(y) monic; factor of f is g(lc*x)/lc^deg g, normalized monic over Q
            std::vector<FElem> c2;
            for (size_t i = 0; i < g.c.size(); ++i)
                c2.push_back(FElem::from_rat(k, Rat(g.c[i]) * rat_pow(Rat(lc), static_cast<long>(i))));
            out.push_back(UPoly(k, std::move(c2)).monic());
        }
        return out;
    }
    if (k->kind == Field::Kind::Ext && k->base->kind == Field::Kind::Q)
        return detail_trager::factor_numberfield_squarefree(f);
    if (k->kind == Field::Kind::RatFunc) {
        auto fac = detail_ratfunc::factor_ratfunc(f);
        std::vector<UPoly> out;
        for (auto& [g, m] : fac) out.push_back(g);
        return out;
    }
    throw std::domain_error("factor_squarefree_monic: unsupported field " + k->describe());
}

inline Factorization factor(const UPoly& f) {
    Factorization out;
    const FieldPtr& k = f.k;
    if (f.is_zero()) throw std::domain_error("factor: zero polynomial");
    out.unit = f.lead();
    if (f.degree() == 0) return out;
    if (k->kind == Field::Kind::RatFunc) {
        auto fac = detail_ratfunc::factor_ratfunc(f);
        for (auto& [g, m] : fac) out.factors.push_back({g, m});
        return out;
    }
    UPoly work = f.monic();
    // extract repeated factors by iterated gcd with the derivative where usable
    while (work.degree() > 0) {
        UPoly d = work.derivative();
        UPoly sqf;
        if (!d.is_zero()) {
            sqf = work.div_exact(gcd(work, d)).monic();
        } else {
            // g(x^p): over the fields reaching here (finite, Q n/a) take p-th root
            Int p = k->characteristic();
            unsigned long pu = mpz_get_ui(p.get_mpz_t());
            std::vector<FElem> gc;
            for (size_t i = 0; i < work.c.size(); i += pu) {
                auto r = work.c[i].is_zero() ? std::optional<FElem>(work.c[i]) : pth_root(work.c[i]);
                if (!r) throw std::domain_error("factor: inseparable over imperfect field");
                gc.push_back(*r);
            }
            UPoly g(k, std::move(gc));
            auto sub = factor(g);
            for (auto& fu : sub.factors) {
                bool found = false;
                for (auto& mine : out.factors)
                    if (mine.poly == fu.poly) {
                        mine.mult += fu.mult * static_cast<unsigned>(pu);
                        found = true;
                    }
                if (!found) out.factors.push_back({fu.poly, fu.mult * static_cast<unsigned>(pu)});
            }
            return out;
        }
        for (auto& g : factor_squarefree_monic(sqf)) {
            unsigned mult = 0;
            while (true) {
                UPoly q, r;
                work.divrem(g, q, r);
                if (!r.is_zero()) break;
                work = q;
                ++mult;
            }
            if (mult) out.factors.push_back({g, mult});
        }
        if (work.degree() == 0) break;
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const FactorUnit& a, const FactorUnit& b) {
        if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
        for (long i = a.poly.degree(); i >= 0; --i) {
            int c = a.poly.coeff(static_cast<size_t>(i)).cmp_canonical(b.poly.coeff(static_cast<size_t>(i)));
            if (c) return c < 0;
        }
        return false;
    });
    return out;
}

inline bool is_irreducible(const UPoly& f) {
    if (f.degree() <= 0) return false;
    if (f.degree() == 1) return true;
    auto fac = factor(f);
    return fac.factors.size() == 1 && fac.factors[0].mult == 1;
}

// checked extension constructor
inline FieldPtr make_extension(const FieldPtr& base, const UPoly& modulus, const std::string& var) {
    if (!is_irreducible(modulus)) throw std::domain_error("make_extension: modulus is reducible");
    return Field::extension_unchecked(base, modulus.c, var);
}

// all monic irreducibles over a finite field with degree in [1, maxdeg],
// enumerated deterministically (degree, then coefficient order)
inline std::vector<UPoly> enumerate_monic_irreducibles(const FieldPtr& k, long maxdeg) {
    auto elems = enumerate_field(k);
    std::vector<UPoly> out;
    for (long d = 1; d <= maxdeg; ++d) {
        std::vector<size_t> idx(static_cast<size_t>(d), 0);
        while (true) {
            std::vector<FElem> c;
            for (size_t i = 0; i < static_cast<size_t>(d); ++i) c.push_back(elems[idx[i]]);
            c.push_back(FElem::one(k));
            UPoly f(k, std::move(c));
            if (is_irreducible(f)) out.push_back(f);
            size_t i = 0;
            while (i < static_cast<size_t>(d) && ++idx[i] == elems.size()) idx[i++] = 0;
            if (i == static_cast<size_t>(d)) break;
        }
    }
    return out;
}

// the canonical degree-d extension of a finite field
inline FieldPtr finite_extension(const FieldPtr& k, long d, const std::string& var) {
    if (d == 1) return k;
    auto elems = enumerate_field(k);
    std::vector<size_t> idx(static_cast<size_t>(d), 0);
    while (true) {
        std::vector<FElem> c;
        for (size_t i = 0; i < static_cast<size_t>(d); ++i) c.push_back(elems[idx[i]]);
        c.push_back(FElem::one(k));
        UPoly f(k, std::move(c));
        if (is_irreducible(f)) return Field::extension_unchecked(k, f.c, var);
        size_t i = 0;
        while (i < static_cast<size_t>(d) && ++idx[i] == elems.size()) idx[i++] = 0;
        if (i == static_cast<size_t>(d)) break;
    }
    throw std::logic_error("finite_extension: no irreducible found");
}

// ---------------------------------------------------------------------------
// implementation details for Q / number fields / rational functions

namespace detail_q {

inline std::vector<ZPoly> factor_z_squarefree_monic(const ZPoly& f) {
    long n = f.deg();
    if (n <= 1) return {f};
    // pick a prime keeping f squarefree
    static const long primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103};
    Int p = 0;
    FieldPtr fp;
    for (long pr : primes) {
        Int P(pr);
        if (f.c.back() % P == 0) continue;
        auto kp = Field::prime_field(P);
        UPoly fpoly = to_fp(f, kp);
        if (gcd(fpoly, fpoly.derivative()).degree() == 0) {
            p = P;
            fp = kp;
            break;
        }
    }
    if (p == 0) throw std::domain_error("factor_z: no suitable small prime");
    auto modular = detail_cz::cz_squarefree(to_fp(f, fp));
    if (modular.size() == 1) return {f};
    // coefficient bound: |coeff of any monic factor| <= 2^n * max|f_i| (crude Mignotte)
    Int maxc = 0;
    for (auto& x : f.c) maxc = std::max(maxc, Int(abs(x)));
    Int bound = int_pow(Int(2), static_cast<unsigned long>(n + 2)) * maxc;
    Int target = 2 * bound + 1;
    // lift factors by peeling one factor against the product of the rest
    std::vector<ZPoly> lifted;
    Int pk = p;
    {
        ZPoly rest = f;
        for (size_t i = 0; i + 1 < modular.size(); ++i) {
            ZPoly g;
            for (auto& x : modular[i].c) g.c.push_back(x.fp_value());
            g = balance(g, p);
            UPoly hp = UPoly::one(fp);
            for (size_t j = i + 1; j < modular.size(); ++j) hp = hp * modular[j];
            ZPoly h;
            for (auto& x : hp.c) h.c.push_back(x.fp_value());
            h = balance(h, p);
            pk = hensel_pair(rest, g, h, p, target);
            lifted.push_back(g);
            rest = h;
        }
        lifted.push_back(rest);
    }
    // recombination over subsets
    std::vector<ZPoly> result;
    ZPoly rem_poly = f;
    std::vector<int> alive(lifted.size(), 1);
    size_t alive_count = lifted.size();
    for (size_t take = 1; take <= alive_count && alive_count > 0; ++take) {
        bool progress = true;
        while (progress) {
            progress = false;
            std::vector<size_t> idxs;
            for (size_t i = 0; i < lifted.size(); ++i)
                if (alive[i]) idxs.push_back(i);
            if (take > idxs.size()) break;
            std::vector<size_t> comb(take);
            std::iota(comb.begin(), comb.end(), 0);
            while (true) {
                ZPoly cand{{Int(1)}};
                for (size_t j = 0; j < take; ++j) cand = balance(mul(cand, lifted[idxs[comb[j]]]), pk);
                ZPoly q;
                if (static_cast<long>(cand.deg()) <= rem_poly.deg() && divides(cand, rem_poly, &q)) {
                    result.push_back(cand);
                    rem_poly = q;
                    for (size_t j = 0; j < take; ++j) alive[idxs[comb[j]]] = 0;
                    alive_count -= take;
                    progress = true;
                    break;
                }
                // next combination
                long pos = static_cast<long>(take) - 1;
                while (pos >= 0 && comb[static_cast<size_t>(pos)] == idxs.size() - take + static_cast<size_t>(pos)) --pos;
                if (pos < 0) break;
                ++comb[static_cast<size_t>(pos)];
                for (size_t j = static_cast<size_t>(pos) + 1; j < take; ++j) comb[j] = comb[j - 1] + 1;
            }
        }
    }
    if (rem_poly.deg() > 0) result.push_back(rem_poly);
    return result;
}

}  // namespace detail_q

namespace detail_trager {

inline std::vector<UPoly> factor_numberfield_squarefree(const UPoly& f0) {
    const FieldPtr& K = f0.k;  // Q(alpha)
    const FieldPtr Q = K->base;
    UPoly f = f0.monic();
    // norm via resultant over Q(x): Res_y(m(y), f(x - s*y))
    auto Qx = Field::rational_functions(Q, "@x");
    auto to_qx_const = [&](const FElem& qc) { return FElem::from_fraction(Qx, {qc}, {FElem::one(Q)}); };
    FElem xelem = FElem::generator(Qx);

    for (long s = 0;; s = (s > 0 ? -s : -s + 1)) {
        // g_s in K[x], x -> x - s*alpha ; then view as polynomial in y = alpha over Q(x)
        FElem salpha = FElem::generator(K) * FElem::from_int(K, Int(s));
        UPoly shift(K, {-salpha, FElem::one(K)});  // x - s*alpha
        UPoly gs = f.compose(shift);
        // write gs = sum_j (sum_i c_{ij} alpha^i) x^j as polynomial in y over Q(x)
        size_t adeg = K->ext_degree();
        std::vector<FElem> ycoeffs(adeg, FElem::zero(Qx));
        for (size_t j = 0; j < gs.c.size(); ++j) {
            const auto& coords = gs.c[j].coords();
            for (size_t i = 0; i < coords.size(); ++i) {
                // add coords[i] * x^j to ycoeffs[i]
                FElem term = to_qx_const(coords[i]) * xelem.pow(Int(static_cast<long>(j)));
                ycoeffs[i] = ycoeffs[i] + term;
            }
        }
        UPoly gy(Qx, std::move(ycoeffs));
        std::vector<FElem> mcoeffs;
        for (auto& mc : *K->modulus) mcoeffs.push_back(to_qx_const(mc));
        UPoly my(Qx, std::move(mcoeffs));
        FElem norm = resultant(my, gy);
        // norm is a polynomial in x (denominator 1)
        const auto& [num, den] = norm.frac();
        if (!(den.size() == 1 && den[0].is_one())) throw std::logic_error("trager: norm not polynomial");
        UPoly N(Q, num);
        if (N.degree() >= 1 && is_separable(N)) {
            auto nf = factor_squarefree_monic(N.monic());
            if (nf.size() == 1) return {f};
            std::vector<UPoly> out;
            UPoly work = f;
            for (auto& ni : nf) {
                // lift n_i to K[x], substitute x -> x + s*alpha, gcd with f
                std::vector<FElem> lc;
                for (auto& qc : ni.c) lc.push_back(FElem::from_coords(K, {qc}));
                UPoly niK(K, std::move(lc));
                UPoly unshift(K, {FElem::generator(K) * FElem::from_int(K, Int(s)), FElem::one(K)});
                UPoly cand = gcd(work, niK.compose(unshift));
                if (cand.degree() >= 1) {
                    out.push_back(cand.monic());
                    work = work.div_exact(cand).monic();
                }
            }
            if (work.degree() >= 1) out.push_back(work);
            return out;
        }
        if (s > static_cast<long>(8 * f0.degree() * adeg + 8))
            throw std::logic_error("trager: no squarefree norm found");
    }
}

}  // namespace detail_trager

namespace detail_ratfunc {

// factor f in F(t)[x]: clear denominators into F[t][x], Kronecker to F[t],
// recombine subsets, trial-divide
inline std::vector<std::pair<UPoly, unsigned>> factor_ratfunc(const UPoly& f0) {
    const FieldPtr& k = f0.k;  // F(t)
    const FieldPtr F = k->base;
    UPoly f = f0.monic();
    if (f.degree() <= 0) return {};
    if (f.degree() == 1) return {{f, 1}};

    // clear denominators: biv[j] in F[t] is the x^j coefficient
    std::vector<std::vector<FElem>> biv(f.c.size());
    {
        std::vector<FElem> den{FElem::one(F)};
        for (auto& c : f.c) den = pv::mul(F, den, c.frac().second);
        for (size_t j = 0; j < f.c.size(); ++j) {
            const auto& [n, d] = f.c[j].frac();
            std::vector<FElem> q, r;
            pv::divrem(F, den, d, q, r);  // exact
            biv[j] = pv::mul(F, n, q);
        }
    }
    // primitive part in F[t]
    {
        std::vector<FElem> g;
        for (auto& cj : biv)
            if (!cj.empty()) g = g.empty() ? cj : pv::gcd(F, g, cj);
        if (pv::deg(g) >= 1 || (!g.empty() && !g[0].is_one())) {
            for (auto& cj : biv) {
                if (cj.empty()) continue;
                std::vector<FElem> q, r;
                pv::divrem(F, cj, g, q, r);
                cj = q;
            }
        }
    }
    long dt = 0;
    for (auto& cj : biv) dt = std::max(dt, pv::deg(cj));
    unsigned long D = static_cast<unsigned long>(dt + 1);

    // Kronecker: u(t) = sum_j biv[j](t) * t^(j*D)
    std::vector<FElem> u;
    for (size_t j = 0; j < biv.size(); ++j)
        for (size_t i = 0; i < biv[j].size(); ++i) {
            size_t e = i + j * D;
            if (u.size() <= e) u.resize(e + 1, FElem::zero(F));
            u[e] = u[e] + biv[j][i];
        }
    UPoly uu(F, std::move(u));
    auto ufac = factor(uu);
    std::vector<UPoly> parts;
    for (auto& fu : ufac.factors)
        for (unsigned i = 0; i < fu.mult; ++i) parts.push_back(fu.poly);

    auto to_bivariate = [&](const UPoly& g) {
        std::vector<std::vector<FElem>> out;
        for (size_t e = 0; e < g.c.size(); ++e) {
            if (g.c[e].is_zero()) continue;
            size_t j = e / D, i = e % D;
            if (out.size() <= j) out.resize(j + 1);
            if (out[j].size() <= i) out[j].resize(i + 1, FElem::zero(F));
            out[j][i] = g.c[e];
        }
        for (auto& cj : out) pv::trim(cj);
        return out;
    };
    auto to_kx = [&](const std::vector<std::vector<FElem>>& b) {
        std::vector<FElem> c;
        for (auto& cj : b) c.push_back(FElem::from_fraction(k, cj, {FElem::one(F)}));
        return UPoly(k, std::move(c));
    };

    std::vector<std::pair<UPoly, unsigned>> out;
    UPoly work = f;
    std::vector<int> alive(parts.size(), 1);
    for (size_t take = 1; take <= parts.size(); ++take) {
        bool progress = true;
        while (progress && work.degree() > 0) {
            progress = false;
            std::vector<size_t> idxs;
            for (size_t i = 0; i < parts.size(); ++i)
                if (alive[i]) idxs.push_back(i);
            if (take > idxs.size()) break;
            std::vector<size_t> comb(take);
            std::iota(comb.begin(), comb.end(), 0);
            while (true) {
                UPoly cand = UPoly::one(F);
                for (size_t j = 0; j < take; ++j) cand = cand * parts[idxs[comb[j]]];
                auto bivc = to_bivariate(cand);
                UPoly candk = to_kx(bivc);
                if (candk.degree() >= 1 && candk.degree() <= work.degree()) {
                    UPoly q, r;
                    work.divrem(candk.monic(), q, r);
                    if (r.is_zero()) {
                        UPoly mon = candk.monic();
                        unsigned mult = 1;
                        work = q;
                        while (true) {
                            work.divrem(mon, q, r);
                            if (!r.is_zero()) break;
                            work = q;
                            ++mult;
                        }
                        bool merged = false;
                        for (auto& [g, m] : out)
                            if (g == mon) {
                                m += mult;
                                merged = true;
                            }
                        if (!merged) out.emplace_back(mon, mult);
                        for (size_t j = 0; j < take; ++j) alive[idxs[comb[j]]] = 0;
                        progress = true;
                        break;
                    }
                }
                long pos = static_cast<long>(take) - 1;
                while (pos >= 0 && comb[static_cast<size_t>(pos)] == idxs.size() - take + static_cast<size_t>(pos)) --pos;
                if (pos < 0) break;
                ++comb[static_cast<size_t>(pos)];
                for (size_t j = static_cast<size_t>(pos) + 1; j < take; ++j) comb[j] = comb[j - 1] + 1;
            }
        }
        if (work.degree() == 0) break;
    }
    if (work.degree() > 0) out.emplace_back(work.monic(), 1);
    return out;
}

}  // namespace detail_ratfunc

}  // namespace gradal

#endif
