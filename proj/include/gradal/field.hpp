#ifndef GRADAL_FIELD_HPP
#define GRADAL_FIELD_HPP

// Desk-scale coefficient fields: Q, F_p, simple extensions by an irreducible
// polynomial (stacked, so F_q and number fields both fit), and univariate
// rational function fields. Elements are exact; all towers are recursive.

#include "arith.hpp"

#include <cassert>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <variant>

namespace gradal {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class FElem;

class Field : public std::enable_shared_from_this<Field> {
public:
    enum class Kind { Q, Fp, Ext, RatFunc };

    Kind kind;
    Int p = 0;                    // Fp: the prime
    FieldPtr base;                // Ext, RatFunc
    std::vector<FElem>* modulus;  // Ext: coefficients over base, monic; owned
    std::string var;              // Ext/RatFunc variable name
    Int char_ = 0;

    static FieldPtr rationals();
    static FieldPtr prime_field(const Int& p);
    // unchecked: callers verify irreducibility of the modulus (see factor.hpp)
    static FieldPtr extension_unchecked(FieldPtr base, std::vector<FElem> monic_modulus, std::string var);
    static FieldPtr rational_functions(FieldPtr base, std::string var);

    ~Field();

    Int characteristic() const { return char_; }
    bool is_finite() const;
    Int size() const;  // finite fields only
    size_t ext_degree() const;
    bool is_perfect() const;

    std::string describe() const;

private:
    Field() = default;
};

// A field element; carries its field so arithmetic can dispatch and check.
class FElem {
public:
    FElem() = default;

    // --- construction
    static FElem zero(const FieldPtr& k);
    static FElem one(const FieldPtr& k);
    static FElem from_int(const FieldPtr& k, const Int& n);
    static FElem from_rat(const FieldPtr& k, const Rat& q);  // Q only
    // Ext: element with the given coordinates over the base (low degree first)
    static FElem from_coords(const FieldPtr& k, std::vector<FElem> coords);
    // RatFunc: numerator/denominator coefficient vectors over the base
    static FElem from_fraction(const FieldPtr& k, std::vector<FElem> num, std::vector<FElem> den);
    // Ext/RatFunc: the generator (the class of the variable)
    static FElem generator(const FieldPtr& k);

    const FieldPtr& field() const { return k_; }
    bool is_zero() const;
    bool is_one() const;

    FElem operator+(const FElem& o) const;
    FElem operator-(const FElem& o) const;
    FElem operator-() const;
    FElem operator*(const FElem& o) const;
    FElem inv() const;
    FElem operator/(const FElem& o) const { return *this * o.inv(); }
    FElem pow(Int e) const;
    bool operator==(const FElem& o) const;
    bool operator!=(const FElem& o) const { return !(*this == o); }

    // canonical order, used only for deterministic printing/serialization
    int cmp_canonical(const FElem& o) const;

    std::string str() const;

    // representation accessors (used by residue maps and factorization)
    const Rat& q_value() const { return std::get<Rat>(rep_); }
    const Int& fp_value() const { return std::get<Int>(rep_); }
    const std::vector<FElem>& coords() const;                      // Ext
    const std::pair<std::vector<FElem>, std::vector<FElem>>& frac() const;  // RatFunc

private:
    friend class Field;
    FieldPtr k_;
    // Q: Rat; Fp: Int in [0,p); Ext: coords over base (trimmed);
    // RatFunc: (num, den) polys over base, den monic, gcd 1
    std::variant<std::monostate, Rat, Int, std::vector<FElem>,
                 std::pair<std::vector<FElem>, std::vector<FElem>>>
        rep_;
};

// ---------------------------------------------------------------------------
// polynomial vectors over a field (low degree first, trailing zeros trimmed)

namespace pv {

inline void trim(std::vector<FElem>& c) {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

inline long deg(const std::vector<FElem>& c) { return static_cast<long>(c.size()) - 1; }

inline std::vector<FElem> add(const std::vector<FElem>& a, const std::vector<FElem>& b) {
    std::vector<FElem> r = a.size() >= b.size() ? a : b;
    const auto& s = a.size() >= b.size() ? b : a;
    for (size_t i = 0; i < s.size(); ++i) r[i] = r[i] + s[i];
    trim(r);
    return r;
}

inline std::vector<FElem> neg(std::vector<FElem> a) {
    for (auto& x : a) x = -x;
    return a;
}

inline std::vector<FElem> sub(const std::vector<FElem>& a, const std::vector<FElem>& b) { return add(a, neg(b)); }

inline std::vector<FElem> mul(const FieldPtr& k, const std::vector<FElem>& a, const std::vector<FElem>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<FElem> r(a.size() + b.size() - 1, FElem::zero(k));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    }
    trim(r);
    return r;
}

inline std::vector<FElem> scal(const FElem& c, std::vector<FElem> a) {
    for (auto& x : a) x = x * c;
    trim(a);
    return a;
}

// division with remainder by a polynomial with invertible leading coefficient
inline void divrem(const FieldPtr& k, std::vector<FElem> a, const std::vector<FElem>& b, std::vector<FElem>& q,
                   std::vector<FElem>& r) {
    if (b.empty()) throw std::domain_error("pv::divrem: division by zero polynomial");
    q.clear();
    FElem linv = b.back().inv();
    while (a.size() >= b.size()) {
        FElem c = a.back() * linv;
        size_t shift = a.size() - b.size();
        if (q.size() < shift + 1) q.resize(shift + 1, FElem::zero(k));
        q[shift] = q[shift] + c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] = a[shift + i] - c * b[i];
        trim(a);
    }
    trim(q);
    r = std::move(a);
}

inline std::vector<FElem> rem(const FieldPtr& k, const std::vector<FElem>& a, const std::vector<FElem>& b) {
    std::vector<FElem> q, r;
    divrem(k, a, b, q, r);
    return r;
}

inline std::vector<FElem> monic(std::vector<FElem> a) {
    if (a.empty()) return a;
    FElem linv = a.back().inv();
    for (auto& x : a) x = x * linv;
    return a;
}

inline std::vector<FElem> gcd(const FieldPtr& k, std::vector<FElem> a, std::vector<FElem> b) {
    while (!b.empty()) {
        auto r = rem(k, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(std::move(a));
}

// returns g = gcd and s,t with s*a + t*b = g
inline std::vector<FElem> ext_gcd(const FieldPtr& k, std::vector<FElem> a, std::vector<FElem> b,
                                  std::vector<FElem>& s, std::vector<FElem>& t) {
    std::vector<FElem> s0{FElem::one(k)}, s1, t0, t1{FElem::one(k)};
    while (!b.empty()) {
        std::vector<FElem> q, r;
        divrem(k, a, b, q, r);
        a = std::move(b);
        b = std::move(r);
        auto s2 = sub(s0, mul(k, q, s1));
        auto t2 = sub(t0, mul(k, q, t1));
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (!a.empty()) {
        FElem linv = a.back().inv();
        for (auto& x : a) x = x * linv;
        for (auto& x : s0) x = x * linv;
        for (auto& x : t0) x = x * linv;
    }
    s = std::move(s0);
    t = std::move(t0);
    return a;
}

inline bool eq(const std::vector<FElem>& a, const std::vector<FElem>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
    return true;
}

}  // namespace pv

// ---------------------------------------------------------------------------
// Field implementation

inline Field::~Field() { delete modulus; }

inline FieldPtr Field::rationals() {
    static FieldPtr q = [] {
        auto f = std::shared_ptr<Field>(new Field());
        f->kind = Kind::Q;
        f->char_ = 0;
        f->modulus = nullptr;
        return f;
    }();
    return q;
}

inline FieldPtr Field::prime_field(const Int& p) {
    if (mpz_probab_prime_p(p.get_mpz_t(), 40) == 0) throw std::domain_error("prime_field: p is not prime");
    auto f = std::shared_ptr<Field>(new Field());
    f->kind = Kind::Fp;
    f->p = p;
    f->char_ = p;
    f->modulus = nullptr;
    return f;
}

inline FieldPtr Field::extension_unchecked(FieldPtr base, std::vector<FElem> monic_modulus, std::string var) {
    pv::trim(monic_modulus);
    if (pv::deg(monic_modulus) < 1) throw std::domain_error("extension: modulus must have degree >= 1");
    monic_modulus = pv::monic(std::move(monic_modulus));
    auto f = std::shared_ptr<Field>(new Field());
    f->kind = Kind::Ext;
    f->base = std::move(base);
    f->char_ = f->base->characteristic();
    f->modulus = new std::vector<FElem>(std::move(monic_modulus));
    f->var = std::move(var);
    return f;
}

inline FieldPtr Field::rational_functions(FieldPtr base, std::string var) {
    auto f = std::shared_ptr<Field>(new Field());
    f->kind = Kind::RatFunc;
    f->base = std::move(base);
    f->char_ = f->base->characteristic();
    f->modulus = nullptr;
    f->var = std::move(var);
    return f;
}

inline bool Field::is_finite() const {
    switch (kind) {
        case Kind::Q: return false;
        case Kind::Fp: return true;
        case Kind::Ext: return base->is_finite();
        case Kind::RatFunc: return false;
    }
    return false;
}

inline size_t Field::ext_degree() const {
    if (kind != Kind::Ext) return 1;
    return static_cast<size_t>(pv::deg(*modulus));
}

inline Int Field::size() const {
    switch (kind) {
        case Kind::Fp: return p;
        case Kind::Ext: {
            Int b = base->size();
            return int_pow(b, static_cast<unsigned long>(ext_degree()));
        }
        default: throw std::domain_error("Field::size: infinite field");
    }
}

inline bool Field::is_perfect() const {
    if (char_ == 0) return true;
    if (is_finite()) return true;
    return false;  // char p function fields and their extensions: treated imperfect
}

inline std::string Field::describe() const {
    switch (kind) {
        case Kind::Q: return "Q";
        case Kind::Fp: return "F" + p.get_str();
        case Kind::Ext: {
            std::ostringstream os;
            os << base->describe() << "[" << var << "]/(deg " << ext_degree() << ")";
            return os.str();
        }
        case Kind::RatFunc: return base->describe() + "(" + var + ")";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// FElem implementation

inline FElem FElem::zero(const FieldPtr& k) {
    FElem e;
    e.k_ = k;
    switch (k->kind) {
        case Field::Kind::Q: e.rep_ = Rat(0); break;
        case Field::Kind::Fp: e.rep_ = Int(0); break;
        case Field::Kind::Ext: e.rep_ = std::vector<FElem>{}; break;
        case Field::Kind::RatFunc:
            e.rep_ = std::make_pair(std::vector<FElem>{}, std::vector<FElem>{FElem::one(k->base)});
            break;
    }
    return e;
}

inline FElem FElem::one(const FieldPtr& k) { return from_int(k, 1); }

inline FElem FElem::from_int(const FieldPtr& k, const Int& n) {
    FElem e;
    e.k_ = k;
    switch (k->kind) {
        case Field::Kind::Q: e.rep_ = Rat(n); break;
        case Field::Kind::Fp: {
            Int m = n % k->p;
            if (m < 0) m += k->p;
            e.rep_ = m;
            break;
        }
        case Field::Kind::Ext: {
            std::vector<FElem> c{FElem::from_int(k->base, n)};
            pv::trim(c);
            e.rep_ = std::move(c);
            break;
        }
        case Field::Kind::RatFunc: {
            std::vector<FElem> num{FElem::from_int(k->base, n)};
            pv::trim(num);
            e.rep_ = std::make_pair(std::move(num), std::vector<FElem>{FElem::one(k->base)});
            break;
        }
    }
    return e;
}

inline FElem FElem::from_rat(const FieldPtr& k, const Rat& q) {
    if (k->kind == Field::Kind::Q) {
        FElem e;
        e.k_ = k;
        e.rep_ = q;
        return e;
    }
    FElem num = from_int(k, rat_num(q));
    FElem den = from_int(k, rat_den(q));
    return num / den;
}

inline FElem FElem::from_coords(const FieldPtr& k, std::vector<FElem> coords) {
    if (k->kind != Field::Kind::Ext) throw std::domain_error("from_coords: not an extension field");
    pv::trim(coords);
    if (pv::deg(coords) >= pv::deg(*k->modulus)) coords = pv::rem(k->base, coords, *k->modulus);
    FElem e;
    e.k_ = k;
    e.rep_ = std::move(coords);
    return e;
}

inline FElem FElem::from_fraction(const FieldPtr& k, std::vector<FElem> num, std::vector<FElem> den) {
    if (k->kind != Field::Kind::RatFunc) throw std::domain_error("from_fraction: not a rational function field");
    pv::trim(num);
    pv::trim(den);
    if (den.empty()) throw std::domain_error("from_fraction: zero denominator");
    auto g = pv::gcd(k->base, num, den);
    if (pv::deg(g) > 0 || (!g.empty() && !g[0].is_one())) {
        std::vector<FElem> q, r;
        pv::divrem(k->base, num, g, q, r);
        num = q;
        pv::divrem(k->base, den, g, q, r);
        den = q;
    }
    if (num.empty()) den = {FElem::one(k->base)};
    // normalize: monic denominator
    FElem linv = den.back().inv();
    for (auto& x : den) x = x * linv;
    for (auto& x : num) x = x * linv;
    FElem e;
    e.k_ = k;
    e.rep_ = std::make_pair(std::move(num), std::move(den));
    return e;
}

inline FElem FElem::generator(const FieldPtr& k) {
    switch (k->kind) {
        case Field::Kind::Ext:
            return from_coords(k, {FElem::zero(k->base), FElem::one(k->base)});
        case Field::Kind::RatFunc:
            return from_fraction(k, {FElem::zero(k->base), FElem::one(k->base)}, {FElem::one(k->base)});
        default: throw std::domain_error("generator: field has no distinguished generator");
    }
}

inline const std::vector<FElem>& FElem::coords() const { return std::get<std::vector<FElem>>(rep_); }
inline const std::pair<std::vector<FElem>, std::vector<FElem>>& FElem::frac() const {
    return std::get<std::pair<std::vector<FElem>, std::vector<FElem>>>(rep_);
}

inline bool FElem::is_zero() const {
    switch (k_->kind) {
        case Field::Kind::Q: return q_value() == 0;
        case Field::Kind::Fp: return fp_value() == 0;
        case Field::Kind::Ext: return coords().empty();
        case Field::Kind::RatFunc: return frac().first.empty();
    }
    return true;
}

inline bool FElem::is_one() const {
    switch (k_->kind) {
        case Field::Kind::Q: return q_value() == 1;
        case Field::Kind::Fp: return fp_value() == 1;
        case Field::Kind::Ext: return coords().size() == 1 && coords()[0].is_one();
        case Field::Kind::RatFunc: {
            const auto& [n, d] = frac();
            return n.size() == 1 && n[0].is_one() && d.size() == 1 && d[0].is_one();
        }
    }
    return false;
}

inline FElem FElem::operator+(const FElem& o) const {
    if (k_ != o.k_) throw std::invalid_argument("FElem: mixed fields");
    FElem e;
    e.k_ = k_;
    switch (k_->kind) {
        case Field::Kind::Q: e.rep_ = q_value() + o.q_value(); break;
        case Field::Kind::Fp: {
            Int m = (fp_value() + o.fp_value()) % k_->p;
            e.rep_ = m;
            break;
        }
        case Field::Kind::Ext: e.rep_ = pv::add(coords(), o.coords()); break;
        case Field::Kind::RatFunc: {
            const auto& [an, ad] = frac();
            const auto& [bn, bd] = o.frac();
            auto num = pv::add(pv::mul(k_->base, an, bd), pv::mul(k_->base, bn, ad));
            auto den = pv::mul(k_->base, ad, bd);
            return from_fraction(k_, std::move(num), std::move(den));
        }
    }
    return e;
}

inline FElem FElem::operator-() const {
    FElem e;
    e.k_ = k_;
    switch (k_->kind) {
        case Field::Kind::Q: e.rep_ = -q_value(); break;
        case Field::Kind::Fp: {
            Int m = fp_value() == 0 ? Int(0) : k_->p - fp_value();
            e.rep_ = m;
            break;
        }
        case Field::Kind::Ext: e.rep_ = pv::neg(coords()); break;
        case Field::Kind::RatFunc: {
            auto [n, d] = frac();
            e.rep_ = std::make_pair(pv::neg(n), d);
            break;
        }
    }
    return e;
}

inline FElem FElem::operator-(const FElem& o) const { return *this + (-o); }

inline FElem FElem::operator*(const FElem& o) const {
    if (k_ != o.k_) throw std::invalid_argument("FElem: mixed fields");
    FElem e;
    e.k_ = k_;
    switch (k_->kind) {
        case Field::Kind::Q: e.rep_ = q_value() * o.q_value(); break;
        case Field::Kind::Fp: {
            Int m = (fp_value() * o.fp_value()) % k_->p;
            e.rep_ = m;
            break;
        }
        case Field::Kind::Ext: {
            auto prod = pv::mul(k_->base, coords(), o.coords());
            e.rep_ = pv::rem(k_->base, prod, *k_->modulus);
            break;
        }
        case Field::Kind::RatFunc: {
            const auto& [an, ad] = frac();
            const auto& [bn, bd] = o.frac();
            return from_fraction(k_, pv::mul(k_->base, an, bn), pv::mul(k_->base, ad, bd));
        }
    }
    return e;
}

inline FElem FElem::inv() const {
    if (is_zero()) throw std::domain_error("FElem::inv: zero");
    FElem e;
    e.k_ = k_;
    switch (k_->kind) {
        case Field::Kind::Q: e.rep_ = Rat(1) / q_value(); break;
        case Field::Kind::Fp: {
            Int r;
            if (mpz_invert(r.get_mpz_t(), fp_value().get_mpz_t(), k_->p.get_mpz_t()) == 0)
                throw std::domain_error("FElem::inv: not invertible mod p");
            e.rep_ = r;
            break;
        }
        case Field::Kind::Ext: {
            std::vector<FElem> s, t;
            auto g = pv::ext_gcd(k_->base, coords(), *k_->modulus, s, t);
            if (pv::deg(g) != 0) throw std::domain_error("FElem::inv: modulus not irreducible over base?");
            e.rep_ = pv::rem(k_->base, s, *k_->modulus);
            break;
        }
        case Field::Kind::RatFunc: {
            const auto& [n, d] = frac();
            return from_fraction(k_, d, n);
        }
    }
    return e;
}

inline FElem FElem::pow(Int e) const {
    if (e < 0) return inv().pow(-e);
    FElem r = FElem::one(k_);
    FElem b = *this;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

inline bool FElem::operator==(const FElem& o) const {
    if (k_ != o.k_) return false;
    switch (k_->kind) {
        case Field::Kind::Q: return q_value() == o.q_value();
        case Field::Kind::Fp: return fp_value() == o.fp_value();
        case Field::Kind::Ext: return pv::eq(coords(), o.coords());
        case Field::Kind::RatFunc:
            return pv::eq(frac().first, o.frac().first) && pv::eq(frac().second, o.frac().second);
    }
    return false;
}

inline int FElem::cmp_canonical(const FElem& o) const {
    auto cmp_vec = [](const std::vector<FElem>& a, const std::vector<FElem>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (size_t i = 0; i < a.size(); ++i) {
            int c = a[i].cmp_canonical(b[i]);
            if (c) return c;
        }
        return 0;
    };
    switch (k_->kind) {
        case Field::Kind::Q: return cmp(q_value(), o.q_value());
        case Field::Kind::Fp: return cmp(fp_value(), o.fp_value());
        case Field::Kind::Ext: return cmp_vec(coords(), o.coords());
        case Field::Kind::RatFunc: {
            int c = cmp_vec(frac().first, o.frac().first);
            if (c) return c;
            return cmp_vec(frac().second, o.frac().second);
        }
    }
    return 0;
}

namespace detail {
inline std::string poly_str(const std::vector<FElem>& c, const std::string& var);
}

inline std::string FElem::str() const {
    switch (k_->kind) {
        case Field::Kind::Q: return q_value().get_str();
        case Field::Kind::Fp: return fp_value().get_str();
        case Field::Kind::Ext: return detail::poly_str(coords(), k_->var);
        case Field::Kind::RatFunc: {
            const auto& [n, d] = frac();
            std::string ns = detail::poly_str(n, k_->var);
            if (d.size() == 1 && d[0].is_one()) return ns;
            return "(" + ns + ")/(" + detail::poly_str(d, k_->var) + ")";
        }
    }
    return "?";
}

namespace detail {
inline std::string poly_str(const std::vector<FElem>& c, const std::string& var) {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c.size(); i-- > 0;) {
        if (c[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        std::string cs = c[i].str();
        bool needs_coeff = (i == 0) || !c[i].is_one();
        if (needs_coeff) {
            bool paren = cs.find_first_of("+ ") != std::string::npos;
            os << (paren ? "(" + cs + ")" : cs);
            if (i > 0) os << "*";
        }
        if (i > 0) {
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}
}  // namespace detail

// ---------------------------------------------------------------------------
// UPoly: univariate polynomials over a field, the workhorse for towers,
// eliminants and Newton polygon resolvents.

struct UPoly {
    FieldPtr k;
    std::vector<FElem> c;  // low degree first, trimmed

    UPoly() = default;
    UPoly(FieldPtr kk, std::vector<FElem> cc) : k(std::move(kk)), c(std::move(cc)) { pv::trim(c); }
    static UPoly zero(const FieldPtr& k) { return UPoly(k, {}); }
    static UPoly one(const FieldPtr& k) { return UPoly(k, {FElem::one(k)}); }
    static UPoly x(const FieldPtr& k) { return UPoly(k, {FElem::zero(k), FElem::one(k)}); }
    static UPoly constant(const FElem& a) { return UPoly(a.field(), {a}); }
    static UPoly from_ints(const FieldPtr& k, const std::vector<long>& v) {
        std::vector<FElem> c;
        c.reserve(v.size());
        for (long x : v) c.push_back(FElem::from_int(k, Int(x)));
        return UPoly(k, std::move(c));
    }

    long degree() const { return pv::deg(c); }
    bool is_zero() const { return c.empty(); }
    const FElem& lead() const { return c.back(); }
    FElem coeff(size_t i) const { return i < c.size() ? c[i] : FElem::zero(k); }

    UPoly operator+(const UPoly& o) const { return UPoly(k, pv::add(c, o.c)); }
    UPoly operator-(const UPoly& o) const { return UPoly(k, pv::sub(c, o.c)); }
    UPoly operator*(const UPoly& o) const { return UPoly(k, pv::mul(k, c, o.c)); }
    UPoly operator*(const FElem& a) const { return UPoly(k, pv::scal(a, c)); }
    UPoly monic() const { return UPoly(k, pv::monic(c)); }
    bool operator==(const UPoly& o) const { return pv::eq(c, o.c); }

    UPoly pow(unsigned long e) const {
        UPoly r = one(k), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    void divrem(const UPoly& d, UPoly& q, UPoly& r) const {
        std::vector<FElem> qq, rr;
        pv::divrem(k, c, d.c, qq, rr);
        q = UPoly(k, std::move(qq));
        r = UPoly(k, std::move(rr));
    }
    UPoly rem(const UPoly& d) const { return UPoly(k, pv::rem(k, c, d.c)); }
    UPoly div_exact(const UPoly& d) const {
        UPoly q, r;
        divrem(d, q, r);
        if (!r.is_zero()) throw std::domain_error("UPoly::div_exact: not divisible");
        return q;
    }

    UPoly derivative() const {
        std::vector<FElem> d;
        for (size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * FElem::from_int(k, Int(static_cast<long>(i))));
        return UPoly(k, std::move(d));
    }

    FElem eval(const FElem& a) const {
        FElem r = FElem::zero(k);
        for (size_t i = c.size(); i-- > 0;) r = r * a + c[i];
        return r;
    }

    // substitution x -> g(x)
    UPoly compose(const UPoly& g) const {
        UPoly r = zero(k);
        for (size_t i = c.size(); i-- > 0;) r = r * g + constant(c[i]);
        return r;
    }

    std::string str(const std::string& var = "x") const { return detail::poly_str(c, var); }
};

inline UPoly gcd(const UPoly& a, const UPoly& b) { return UPoly(a.k, pv::gcd(a.k, a.c, b.c)); }

inline UPoly pow_mod(const UPoly& base, Int e, const UPoly& mod) {
    UPoly r = UPoly::one(base.k);
    UPoly b = base.rem(mod);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = (r * b).rem(mod);
        b = (b * b).rem(mod);
        e >>= 1;
    }
    return r;
}

// Sylvester-matrix resultant via fraction-safe Gaussian elimination over k.
inline FElem resultant(const UPoly& f, const UPoly& g) {
    const FieldPtr& k = f.k;
    long m = f.degree(), n = g.degree();
    if (m < 0 || n < 0) return FElem::zero(k);
    if (m == 0) return f.lead().pow(Int(n));
    if (n == 0) return g.lead().pow(Int(m));
    size_t dim = static_cast<size_t>(m + n);
    std::vector<std::vector<FElem>> M(dim, std::vector<FElem>(dim, FElem::zero(k)));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j <= m; ++j) M[static_cast<size_t>(i)][static_cast<size_t>(i + j)] = f.coeff(static_cast<size_t>(m - j));
    for (long i = 0; i < m; ++i)
        for (long j = 0; j <= n; ++j) M[static_cast<size_t>(n + i)][static_cast<size_t>(i + j)] = g.coeff(static_cast<size_t>(n - j));
    FElem det = FElem::one(k);
    for (size_t col = 0; col < dim; ++col) {
        size_t piv = col;
        while (piv < dim && M[piv][col].is_zero()) ++piv;
        if (piv == dim) return FElem::zero(k);
        if (piv != col) {
            std::swap(M[piv], M[col]);
            det = -det;
        }
        det = det * M[col][col];
        FElem inv = M[col][col].inv();
        for (size_t i = col + 1; i < dim; ++i) {
            if (M[i][col].is_zero()) continue;
            FElem fct = M[i][col] * inv;
            for (size_t j = col; j < dim; ++j) M[i][j] = M[i][j] - fct * M[col][j];
        }
    }
    return det;
}

// discriminant-flavoured helper: is gcd(f, f') trivial
inline bool is_separable(const UPoly& f) {
    if (f.degree() <= 0) return true;
    return gcd(f, f.derivative()).degree() == 0;
}

}  // namespace gradal

#endif
