#ifndef GRADAL_DEGREE_HPP
#define GRADAL_DEGREE_HPP

// Multiplicative groups of positive reals with exact order (degree groups D,
// parameter groups Gamma), abstract ordered value groups of finite rank, and
// the positive-real value monoid used by every norm in the kernel.

#include "arith.hpp"

#include <algorithm>
#include <memory>
#include <optional>
#include <sstream>

namespace gradal {

// --- RealValue -----------------------------------------------------------
//
// An exact positive real of the form prod p^e (p prime, e rational), or 0.
// Every absolute value, Gauss norm and spectral norm in the kernel takes
// values here; comparisons are exact integer cross-exponentiation.
class RealValue {
public:
    RealValue() : zero_(true) {}
    static RealValue zero() { return RealValue(); }
    static RealValue one() {
        RealValue v;
        v.zero_ = false;
        return v;
    }
    static RealValue from_rat(const Rat& q) {
        if (q < 0) throw std::domain_error("RealValue: negative");
        if (q == 0) return zero();
        RealValue v = one();
        for (auto& [p, e] : factor_rational(q)) v.pexp_[p] = Rat(e);
        return v;
    }

    bool is_zero() const { return zero_; }
    bool is_one() const { return !zero_ && pexp_.empty(); }

    RealValue operator*(const RealValue& o) const {
        if (zero_ || o.zero_) return zero();
        RealValue r = *this;
        for (auto& [p, e] : o.pexp_) {
            r.pexp_[p] += e;
            if (r.pexp_[p] == 0) r.pexp_.erase(p);
        }
        return r;
    }
    RealValue operator/(const RealValue& o) const {
        if (o.zero_) throw std::domain_error("RealValue: division by zero value");
        if (zero_) return zero();
        RealValue r = *this;
        for (auto& [p, e] : o.pexp_) {
            r.pexp_[p] -= e;
            if (r.pexp_[p] == 0) r.pexp_.erase(p);
        }
        return r;
    }
    RealValue pow(const Rat& e) const {
        if (zero_) {
            if (e <= 0) throw std::domain_error("RealValue: 0^nonpositive");
            return zero();
        }
        RealValue r = one();
        if (e == 0) return r;
        for (auto& [p, x] : pexp_) r.pexp_[p] = x * e;
        return r;
    }

    // -1 / 0 / +1 against another value; 0 is smaller than everything.
    int compare(const RealValue& o) const {
        if (zero_ && o.zero_) return 0;
        if (zero_) return -1;
        if (o.zero_) return 1;
        std::vector<Rat> bases, exps;
        auto add = [&](const std::map<Int, Rat>& m, int sign) {
            for (auto& [p, e] : m) {
                bases.push_back(Rat(p));
                exps.push_back(sign > 0 ? e : -e);
            }
        };
        add(pexp_, 1);
        add(o.pexp_, -1);
        return compare_power_product_with_one(bases, exps);
    }
    bool operator==(const RealValue& o) const { return compare(o) == 0; }
    bool operator!=(const RealValue& o) const { return compare(o) != 0; }
    bool operator<(const RealValue& o) const { return compare(o) < 0; }
    bool operator<=(const RealValue& o) const { return compare(o) <= 0; }
    bool operator>(const RealValue& o) const { return compare(o) > 0; }
    bool operator>=(const RealValue& o) const { return compare(o) >= 0; }

    const std::map<Int, Rat>& prime_exponents() const { return pexp_; }

    std::string str() const {
        if (zero_) return "0";
        if (pexp_.empty()) return "1";
        std::ostringstream os;
        bool first = true;
        for (auto& [p, e] : pexp_) {
            if (!first) os << "*";
            first = false;
            os << p;
            if (e != 1) os << "^(" << e.get_str() << ")";
        }
        return os.str();
    }

    // exact rational reconstruction when all exponents are integral
    std::optional<Rat> as_rational() const {
        if (zero_) return Rat(0);
        Rat r(1);
        for (auto& [p, e] : pexp_) {
            if (rat_den(e) != 1) return std::nullopt;
            long ee = static_cast<long>(mpz_get_si(rat_num(e).get_mpz_t()));
            r *= rat_pow(Rat(p), ee);
        }
        return r;
    }

private:
    bool zero_ = true;
    std::map<Int, Rat> pexp_;
};

inline RealValue max(const RealValue& a, const RealValue& b) { return a.compare(b) >= 0 ? a : b; }

// --- MultRealGroup / DegreeElement --------------------------------------

class MultRealGroup;
using MultRealGroupPtr = std::shared_ptr<const MultRealGroup>;

class MultRealGroup : public std::enable_shared_from_this<MultRealGroup> {
public:
    static MultRealGroupPtr make(std::vector<Rat> gens) {
        for (auto& g : gens)
            if (g <= 0) throw std::domain_error("MultRealGroup: generators must be positive rationals");
        return std::shared_ptr<MultRealGroup>(new MultRealGroup(std::move(gens)));
    }
    const std::vector<Rat>& generators() const { return gens_; }
    size_t rank_hint() const { return gens_.size(); }

private:
    explicit MultRealGroup(std::vector<Rat> g) : gens_(std::move(g)) {}
    std::vector<Rat> gens_;
};

class DegreeElement {
public:
    DegreeElement() = default;
    DegreeElement(MultRealGroupPtr g, std::vector<Rat> exps) : group_(std::move(g)), exps_(std::move(exps)) {
        if (exps_.size() != group_->generators().size())
            throw std::invalid_argument("DegreeElement: exponent vector length mismatch");
    }
    static DegreeElement identity(const MultRealGroupPtr& g) {
        return DegreeElement(g, std::vector<Rat>(g->generators().size(), Rat(0)));
    }

    const MultRealGroupPtr& group() const { return group_; }
    const std::vector<Rat>& exponents() const { return exps_; }

    DegreeElement operator*(const DegreeElement& o) const {
        check_same(o);
        std::vector<Rat> e = exps_;
        for (size_t i = 0; i < e.size(); ++i) e[i] += o.exps_[i];
        return DegreeElement(group_, std::move(e));
    }
    DegreeElement inverse() const {
        std::vector<Rat> e = exps_;
        for (auto& x : e) x = -x;
        return DegreeElement(group_, std::move(e));
    }
    DegreeElement pow(const Rat& k) const {
        std::vector<Rat> e = exps_;
        for (auto& x : e) x *= k;
        return DegreeElement(group_, std::move(e));
    }

    RealValue value() const {
        RealValue v = RealValue::one();
        for (size_t i = 0; i < exps_.size(); ++i)
            v = v * RealValue::from_rat(group_->generators()[i]).pow(exps_[i]);
        return v;
    }

    std::string str() const { return value().str(); }

    void check_same(const DegreeElement& o) const {
        if (group_ != o.group_) throw std::invalid_argument("DegreeElement: mismatched groups");
    }

private:
    MultRealGroupPtr group_;
    std::vector<Rat> exps_;
};

enum class Ordering { Less = -1, Equal = 0, Greater = 1 };

// exact order on real values of the elements
inline Ordering compare(const DegreeElement& a, const DegreeElement& b) {
    a.check_same(b);
    const auto& gens = a.group()->generators();
    std::vector<Rat> bases(gens.begin(), gens.end()), exps;
    exps.reserve(gens.size());
    for (size_t i = 0; i < gens.size(); ++i) exps.push_back(a.exponents()[i] - b.exponents()[i]);
    int c = compare_power_product_with_one(bases, exps);
    return c < 0 ? Ordering::Less : (c == 0 ? Ordering::Equal : Ordering::Greater);
}

inline bool deg_equal(const DegreeElement& a, const DegreeElement& b) { return compare(a, b) == Ordering::Equal; }

namespace detail {

// prime-exponent coordinates of an element, scaled to integers by `scale`
inline std::vector<Int> scaled_prime_coords(const RealValue& v, const std::vector<Int>& primes, const Int& scale) {
    std::vector<Int> out(primes.size(), 0);
    for (auto& [p, e] : v.prime_exponents()) {
        size_t idx = static_cast<size_t>(std::lower_bound(primes.begin(), primes.end(), p) - primes.begin());
        Rat s = e * Rat(scale);
        out[idx] = rat_num(s);  // integral by choice of scale
    }
    return out;
}

inline void collect_support(const RealValue& v, std::vector<Int>& primes, std::vector<Rat>& dens) {
    for (auto& [p, e] : v.prime_exponents()) {
        primes.push_back(p);
        dens.push_back(e);
    }
}

}  // namespace detail

struct OrderModuloResult {
    bool finite = false;
    unsigned long n = 0;  // valid when finite
};

// Smallest n >= 1 with r^n in the subgroup generated by `subgens`
// (integer-exponent combinations), or infinite.
inline OrderModuloResult order_modulo(const RealValue& r, const std::vector<RealValue>& subgens) {
    if (r.is_zero()) throw std::domain_error("order_modulo: zero value");
    std::vector<Int> primes;
    std::vector<Rat> exps;
    detail::collect_support(r, primes, exps);
    for (auto& h : subgens) detail::collect_support(h, primes, exps);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    Int scale = common_denominator(exps);

    ZMat cols;
    for (auto& h : subgens) cols.push_back(detail::scaled_prime_coords(h, primes, scale));
    std::vector<Int> v = detail::scaled_prime_coords(r, primes, scale);
    ZMat basis = hnf_basis(std::move(cols), primes.size());

    // forward substitution over Q against the echelon basis
    std::vector<Rat> rem(v.size());
    for (size_t i = 0; i < v.size(); ++i) rem[i] = Rat(v[i]);
    Int n = 1;
    for (auto& b : basis) {
        size_t pr = 0;
        while (pr < b.size() && b[pr] == 0) ++pr;
        if (pr == b.size()) continue;
        Rat c = rem[pr] / Rat(b[pr]);
        for (size_t i = 0; i < rem.size(); ++i) rem[i] -= c * Rat(b[i]);
        Int d = rat_den(c);
        Int g;
        mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        n = n / g * d;
    }
    for (auto& x : rem)
        if (x != 0) return {false, 0};
    return {true, mpz_get_ui(n.get_mpz_t())};
}

inline OrderModuloResult order_modulo(const DegreeElement& r, const std::vector<DegreeElement>& subgens) {
    std::vector<RealValue> hs;
    hs.reserve(subgens.size());
    for (auto& h : subgens) hs.push_back(h.value());
    return order_modulo(r.value(), hs);
}

// Q-linear independence of the family in the quotient by the divisible hull
// of the subgroup generated by `subgens`.
inline bool is_free_family(const std::vector<RealValue>& family, const std::vector<RealValue>& subgens) {
    std::vector<Int> primes;
    std::vector<Rat> exps;
    for (auto& x : family) detail::collect_support(x, primes, exps);
    for (auto& h : subgens) detail::collect_support(h, primes, exps);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    auto qcoords = [&](const RealValue& v) {
        QVec out(primes.size(), Rat(0));
        for (auto& [p, e] : v.prime_exponents()) {
            size_t idx = static_cast<size_t>(std::lower_bound(primes.begin(), primes.end(), p) - primes.begin());
            out[idx] = e;
        }
        return out;
    };

    QMat hrows;
    for (auto& h : subgens) hrows.push_back(qcoords(h));
    size_t base_rank = rank_of(hrows);
    QMat all = hrows;
    for (auto& x : family) all.push_back(qcoords(x));
    return rank_of(all) == base_rank + family.size();
}

inline bool is_free_family(const std::vector<DegreeElement>& family, const std::vector<DegreeElement>& subgens) {
    std::vector<RealValue> f, h;
    for (auto& x : family) f.push_back(x.value());
    for (auto& x : subgens) h.push_back(x.value());
    return is_free_family(f, h);
}

// --- ordered value groups of finite rank ---------------------------------
//
// Either a MultRealGroup with its archimedean real order (rank <= 1 convex
// structure) or Q^h with the lexicographic order. Convex subgroups of the
// lex form are exactly the suffixes {0}^(h-k) x Q^k.

class OrderedValueGroup {
public:
    enum class Kind { MultReal, LexRational };

    static OrderedValueGroup mult_real(MultRealGroupPtr g) {
        OrderedValueGroup v;
        v.kind_ = Kind::MultReal;
        v.mult_ = std::move(g);
        return v;
    }
    static OrderedValueGroup lex_rational(size_t height) {
        OrderedValueGroup v;
        v.kind_ = Kind::LexRational;
        v.height_ = height;
        return v;
    }

    Kind kind() const { return kind_; }
    size_t height() const { return height_; }
    const MultRealGroupPtr& mult_group() const { return mult_; }

private:
    Kind kind_ = Kind::LexRational;
    MultRealGroupPtr mult_;
    size_t height_ = 0;
};

// Element of Q^h written additively; lexicographic comparison from the left
// (index 0 dominates).
struct LexValue {
    std::vector<Rat> coords;

    static LexValue zero(size_t h) { return LexValue{std::vector<Rat>(h, Rat(0))}; }
    LexValue operator+(const LexValue& o) const {
        LexValue r = *this;
        for (size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
        return r;
    }
    LexValue operator-(const LexValue& o) const {
        LexValue r = *this;
        for (size_t i = 0; i < coords.size(); ++i) r.coords[i] -= o.coords[i];
        return r;
    }
    int compare(const LexValue& o) const {
        for (size_t i = 0; i < coords.size(); ++i) {
            if (coords[i] < o.coords[i]) return -1;
            if (coords[i] > o.coords[i]) return 1;
        }
        return 0;
    }
    bool operator==(const LexValue& o) const { return compare(o) == 0; }
};

// A convex subgroup of Q^h_lex, described by the number of trailing
// coordinates it fills.
struct ConvexSubgroup {
    size_t trailing;  // H = {0}^(h-trailing) x Q^trailing
};

// Checks that the span of `gens` inside Q^h is a lex suffix and returns it.
inline std::optional<ConvexSubgroup> convex_subgroup_from_generators(size_t h, const std::vector<LexValue>& gens) {
    QMat rows;
    for (auto& g : gens) rows.push_back(g.coords);
    size_t r = rank_of(rows);
    // span must kill the first h-r coordinates and contain the last r axes
    for (auto& g : gens)
        for (size_t i = 0; i + r < h; ++i)
            if (g.coords[i] != 0) return std::nullopt;
    // containment of the r trailing axes
    for (size_t axis = h - r; axis < h; ++axis) {
        QMat aug = rows;
        LexValue e = LexValue::zero(h);
        e.coords[axis] = 1;
        aug.push_back(e.coords);
        if (rank_of(aug) != r) return std::nullopt;
    }
    return ConvexSubgroup{r};
}

// image under the order-preserving quotient map Q^h -> Q^(h-k)
inline LexValue coarsen(const LexValue& v, const ConvexSubgroup& H) {
    size_t keep = v.coords.size() - H.trailing;
    LexValue out;
    out.coords.assign(v.coords.begin(), v.coords.begin() + static_cast<long>(keep));
    return out;
}

}  // namespace gradal

#endif
