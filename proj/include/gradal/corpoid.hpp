#ifndef GRADAL_CORPOID_HPP
#define GRADAL_CORPOID_HPP

// Split graded fields (corpoids) and graded polynomial rings with
// degree-labelled indeterminates. A split corpoid is F1 together with a free
// family of degree generators and a multiplicative section; every element is
// coefficient * section-monomial, so arithmetic is coefficient arithmetic
// plus exponent bookkeeping. The Laurent translation realizes ideal theory
// inside F1[T.., U.., V..]/(U_i V_i - 1).

#include "decomp.hpp"
#include "degree.hpp"

namespace gradal {

// A grading degree: a D-component and a value-component (residue corpoids of
// valued corpoids are graded by pairs; plain corpoids keep v = 1).
struct BiDegree {
    RealValue d = RealValue::one();
    RealValue v = RealValue::one();

    static BiDegree one() { return {}; }
    static BiDegree of(RealValue dd) { return {std::move(dd), RealValue::one()}; }

    BiDegree operator*(const BiDegree& o) const { return {d * o.d, v * o.v}; }
    BiDegree operator/(const BiDegree& o) const { return {d / o.d, v / o.v}; }
    BiDegree pow(const Rat& e) const { return {d.pow(e), v.pow(e)}; }
    bool operator==(const BiDegree& o) const { return d == o.d && v == o.v; }
    bool operator!=(const BiDegree& o) const { return !(*this == o); }
    bool is_one() const { return d.is_one() && v.is_one(); }
    std::string str() const {
        if (v.is_one()) return d.str();
        return "(" + d.str() + "," + v.str() + ")";
    }
};

namespace detail_lattice {

// stacked scaled integer coordinates of bidegrees over their joint prime support
struct BiLattice {
    std::vector<Int> dprimes, vprimes;
    Int scale = 1;

    static BiLattice build(const std::vector<BiDegree>& all) {
        BiLattice L;
        std::vector<Rat> exps;
        for (auto& b : all) {
            for (auto& [p, e] : b.d.prime_exponents()) {
                L.dprimes.push_back(p);
                exps.push_back(e);
            }
            for (auto& [p, e] : b.v.prime_exponents()) {
                L.vprimes.push_back(p);
                exps.push_back(e);
            }
        }
        std::sort(L.dprimes.begin(), L.dprimes.end());
        L.dprimes.erase(std::unique(L.dprimes.begin(), L.dprimes.end()), L.dprimes.end());
        std::sort(L.vprimes.begin(), L.vprimes.end());
        L.vprimes.erase(std::unique(L.vprimes.begin(), L.vprimes.end()), L.vprimes.end());
        L.scale = common_denominator(exps);
        return L;
    }
    size_t dim() const { return dprimes.size() + vprimes.size(); }
    std::vector<Int> coords(const BiDegree& b) const {
        std::vector<Int> out(dim(), 0);
        for (auto& [p, e] : b.d.prime_exponents()) {
            size_t i = static_cast<size_t>(std::lower_bound(dprimes.begin(), dprimes.end(), p) - dprimes.begin());
            out[i] = rat_num(e * Rat(scale));
        }
        for (auto& [p, e] : b.v.prime_exponents()) {
            size_t i = static_cast<size_t>(std::lower_bound(vprimes.begin(), vprimes.end(), p) - vprimes.begin());
            out[dprimes.size() + i] = rat_num(e * Rat(scale));
        }
        return out;
    }
};

}  // namespace detail_lattice

class Corpoid;
using CorpoidPtr = std::shared_ptr<const Corpoid>;

class Corpoid : public std::enable_shared_from_this<Corpoid> {
public:
    // gens must be a free family (Q-linearly independent joint exponents)
    static CorpoidPtr make(FieldPtr F1, std::vector<BiDegree> gens, std::vector<std::string> gen_names) {
        if (gens.size() != gen_names.size()) throw std::invalid_argument("Corpoid: names/gens mismatch");
        auto L = detail_lattice::BiLattice::build(gens);
        QMat rows;
        for (auto& g : gens) {
            QVec row;
            for (auto& x : L.coords(g)) row.push_back(Rat(x));
            rows.push_back(row);
        }
        if (rank_of(rows) != gens.size()) throw std::invalid_argument("Corpoid: degree generators are not free");
        auto c = std::shared_ptr<Corpoid>(new Corpoid());
        c->F1_ = std::move(F1);
        c->gens_ = std::move(gens);
        c->names_ = std::move(gen_names);
        return c;
    }
    static CorpoidPtr trivial(FieldPtr F1) { return make(std::move(F1), {}, {}); }

    const FieldPtr& f1() const { return F1_; }
    const std::vector<BiDegree>& gens() const { return gens_; }
    const std::vector<std::string>& gen_names() const { return names_; }

    BiDegree degree_of_coords(const std::vector<Int>& g) const {
        BiDegree out;
        for (size_t i = 0; i < gens_.size(); ++i) {
            if (g[i] == 0) continue;
            out = out * gens_[i].pow(Rat(g[i]));
        }
        return out;
    }

    // integer coordinates of b over the generators, if b lies in the group
    std::optional<std::vector<Int>> coords_of(const BiDegree& b) const {
        std::vector<BiDegree> all = gens_;
        all.push_back(b);
        auto L = detail_lattice::BiLattice::build(all);
        ZMat cols;
        for (auto& g : gens_) cols.push_back(L.coords(g));
        auto basis = hnf_basis(std::move(cols), L.dim());
        std::vector<Int> co;
        if (!lattice_member(basis, L.coords(b), &co)) return std::nullopt;
        // lattice_member gives coords w.r.t. the echelon basis; re-solve on gens
        // directly by rational solve then integrality check
        QMat A(L.dim(), QVec(gens_.size(), Rat(0)));
        for (size_t j = 0; j < gens_.size(); ++j) {
            auto cj = L.coords(gens_[j]);
            for (size_t i = 0; i < L.dim(); ++i) A[i][j] = Rat(cj[i]);
        }
        QVec bvec;
        for (auto& x : L.coords(b)) bvec.push_back(Rat(x));
        QVec x;
        if (!solve_linear(A, bvec, x)) return std::nullopt;
        std::vector<Int> out;
        for (auto& q : x) {
            if (rat_den(q) != 1) return std::nullopt;
            out.push_back(rat_num(q));
        }
        return out;
    }

    bool has_degree(const BiDegree& b) const { return coords_of(b).has_value(); }

private:
    Corpoid() = default;
    FieldPtr F1_;
    std::vector<BiDegree> gens_;
    std::vector<std::string> names_;
};

// Homogeneous element of a split corpoid: coeff * section(g). The zero of a
// degree keeps its degree annotation.
class CorpoidElem {
public:
    CorpoidElem() = default;

    static CorpoidElem make(const CorpoidPtr& C, FElem coeff, std::vector<Int> gexp) {
        CorpoidElem e;
        e.C_ = C;
        e.coeff_ = std::move(coeff);
        e.gexp_ = std::move(gexp);
        if (e.gexp_.size() != C->gens().size()) throw std::invalid_argument("CorpoidElem: bad exponent length");
        if (e.coeff_.is_zero()) e.zdeg_ = C->degree_of_coords(e.gexp_);
        return e;
    }
    static CorpoidElem one(const CorpoidPtr& C) {
        return make(C, FElem::one(C->f1()), std::vector<Int>(C->gens().size(), 0));
    }
    static CorpoidElem from_coeff(const CorpoidPtr& C, FElem coeff) {
        return make(C, std::move(coeff), std::vector<Int>(C->gens().size(), 0));
    }
    static CorpoidElem section(const CorpoidPtr& C, size_t i, long e = 1) {
        std::vector<Int> g(C->gens().size(), 0);
        g[i] = e;
        return make(C, FElem::one(C->f1()), std::move(g));
    }
    static CorpoidElem zero_of(const CorpoidPtr& C, const BiDegree& deg) {
        CorpoidElem e;
        e.C_ = C;
        e.coeff_ = FElem::zero(C->f1());
        e.gexp_.assign(C->gens().size(), 0);
        e.zdeg_ = deg;
        return e;
    }
    // from a degree known to lie in the group
    static CorpoidElem from_degree(const CorpoidPtr& C, FElem coeff, const BiDegree& deg) {
        auto co = C->coords_of(deg);
        if (!co) throw std::domain_error("CorpoidElem: degree not in the corpoid's degree group");
        if (coeff.is_zero()) return zero_of(C, deg);
        return make(C, std::move(coeff), *co);
    }

    const CorpoidPtr& corpoid() const { return C_; }
    const FElem& coeff() const { return coeff_; }
    const std::vector<Int>& gexp() const { return gexp_; }
    bool is_zero() const { return coeff_.is_zero(); }
    bool is_one() const {
        if (!coeff_.is_one()) return false;
        for (auto& e : gexp_)
            if (e != 0) return false;
        return true;
    }

    BiDegree degree() const {
        if (is_zero()) return zdeg_;
        return C_->degree_of_coords(gexp_);
    }

    CorpoidElem operator*(const CorpoidElem& o) const {
        check(o);
        if (is_zero() || o.is_zero()) return zero_of(C_, degree() * o.degree());
        std::vector<Int> g = gexp_;
        for (size_t i = 0; i < g.size(); ++i) g[i] += o.gexp_[i];
        return make(C_, coeff_ * o.coeff_, std::move(g));
    }
    CorpoidElem inv() const {
        if (is_zero()) throw std::domain_error("CorpoidElem: inverse of zero");
        std::vector<Int> g = gexp_;
        for (auto& e : g) e = -e;
        return make(C_, coeff_.inv(), std::move(g));
    }
    CorpoidElem pow(long e) const {
        if (e < 0) return inv().pow(-e);
        if (is_zero()) {
            if (e == 0) return one(C_);
            return zero_of(C_, degree().pow(Rat(e)));
        }
        std::vector<Int> g = gexp_;
        for (auto& x : g) x *= e;
        return make(C_, coeff_.pow(Int(e)), std::move(g));
    }
    // addition: only within one degree (the theory's defining restriction)
    CorpoidElem operator+(const CorpoidElem& o) const {
        check(o);
        if (degree() != o.degree())
            throw std::domain_error("CorpoidElem: addition across degrees " + degree().str() + " vs " +
                                    o.degree().str());
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        FElem c = coeff_ + o.coeff_;
        if (c.is_zero()) return zero_of(C_, degree());
        return make(C_, std::move(c), gexp_);
    }
    CorpoidElem operator-() const {
        if (is_zero()) return *this;
        return make(C_, -coeff_, gexp_);
    }
    CorpoidElem operator-(const CorpoidElem& o) const { return *this + (-o); }

    bool operator==(const CorpoidElem& o) const {
        if (is_zero() && o.is_zero()) return degree() == o.degree();
        return coeff_ == o.coeff_ && gexp_ == o.gexp_;
    }

    std::string str() const {
        if (is_zero()) return "0^(" + degree().str() + ")";
        std::ostringstream os;
        os << coeff_.str();
        for (size_t i = 0; i < gexp_.size(); ++i) {
            if (gexp_[i] == 0) continue;
            os << "*" << C_->gen_names()[i];
            if (gexp_[i] != 1) os << "^" << gexp_[i].get_str();
        }
        return os.str();
    }

private:
    void check(const CorpoidElem& o) const {
        if (C_ != o.C_) throw std::invalid_argument("CorpoidElem: mixed corpoids");
    }
    CorpoidPtr C_;
    FElem coeff_;
    std::vector<Int> gexp_;
    BiDegree zdeg_;
};

// --- graded polynomial rings -------------------------------------------------

struct GradedVar {
    std::string name;
    BiDegree deg;
};

class GradedRing;
using GradedRingPtr = std::shared_ptr<const GradedRing>;

class GradedRing : public std::enable_shared_from_this<GradedRing> {
public:
    static GradedRingPtr make(CorpoidPtr C, std::vector<GradedVar> vars) {
        auto r = std::make_shared<GradedRing>();
        r->C_ = std::move(C);
        r->vars_ = std::move(vars);
        return r;
    }
    const CorpoidPtr& corpoid() const { return C_; }
    const std::vector<GradedVar>& vars() const { return vars_; }
    size_t nvars() const { return vars_.size(); }

    BiDegree monomial_degree(const Expv& I) const {
        BiDegree out;
        for (size_t i = 0; i < vars_.size(); ++i)
            if (I[i]) out = out * vars_[i].deg.pow(Rat(I[i]));
        return out;
    }

    CorpoidPtr C_;
    std::vector<GradedVar> vars_;
};

// Homogeneous polynomial: declared total degree + terms exponent -> F1
// coefficient; the corpoid coefficient of term I is coeff * section of
// (total / prod var_deg^I), which must lie in the degree group.
class GradedPoly {
public:
    GradedPoly() = default;
    GradedPoly(GradedRingPtr R, BiDegree total) : R_(std::move(R)), total_(std::move(total)) {}

    static GradedPoly zero(const GradedRingPtr& R, const BiDegree& total) { return GradedPoly(R, total); }
    static GradedPoly one(const GradedRingPtr& R) {
        GradedPoly p(R, BiDegree::one());
        p.add_term(mono::one(R->nvars()), FElem::one(R->corpoid()->f1()));
        return p;
    }
    static GradedPoly variable(const GradedRingPtr& R, size_t i) {
        GradedPoly p(R, R->vars()[i].deg);
        Expv m = mono::one(R->nvars());
        m[i] = 1;
        p.add_term(m, FElem::one(R->corpoid()->f1()));
        return p;
    }
    static GradedPoly constant(const GradedRingPtr& R, const CorpoidElem& c) {
        GradedPoly p(R, c.degree());
        if (!c.is_zero()) {
            // fold the section coordinates into the declared degree; the term
            // coefficient is the F1 part
            p.add_term(mono::one(R->nvars()), c.coeff());
        }
        return p;
    }

    const GradedRingPtr& ring() const { return R_; }
    const BiDegree& total_degree() const { return total_; }
    const std::map<Expv, FElem>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // coefficient of term I as a corpoid element
    CorpoidElem coefficient(const Expv& I) const {
        BiDegree cdeg = total_ / R_->monomial_degree(I);
        auto it = terms_.find(I);
        if (it == terms_.end()) return CorpoidElem::zero_of(R_->corpoid(), cdeg);
        return CorpoidElem::from_degree(R_->corpoid(), it->second, cdeg);
    }

    void add_term(const Expv& I, const FElem& c) {
        if (c.is_zero()) return;
        // the term's coefficient degree must exist in the corpoid
        BiDegree cdeg = total_ / R_->monomial_degree(I);
        if (!R_->corpoid()->has_degree(cdeg))
            throw std::domain_error("GradedPoly: coefficient degree " + cdeg.str() + " outside the corpoid");
        auto it = terms_.find(I);
        if (it == terms_.end())
            terms_.emplace(I, c);
        else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    GradedPoly operator+(const GradedPoly& o) const {
        check(o);
        if (total_ != o.total_)
            throw std::domain_error("GradedPoly: addition across degrees " + total_.str() + " vs " + o.total_.str());
        GradedPoly r = *this;
        for (auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }
    GradedPoly operator-() const {
        GradedPoly r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    GradedPoly operator-(const GradedPoly& o) const { return *this + (-o); }
    GradedPoly operator*(const GradedPoly& o) const {
        check(o);
        GradedPoly r(R_, total_ * o.total_);
        for (auto& [m1, c1] : terms_)
            for (auto& [m2, c2] : o.terms_) r.add_term(mono::mul(m1, m2), c1 * c2);
        return r;
    }
    GradedPoly operator*(const CorpoidElem& c) const {
        GradedPoly r(R_, total_ * c.degree());
        if (c.is_zero()) return r;
        for (auto& [m, cc] : terms_) r.add_term(m, cc * c.coeff());
        return r;
    }
    bool operator==(const GradedPoly& o) const { return total_ == o.total_ && terms_ == o.terms_; }

    GradedPoly pow(unsigned long e) const {
        GradedPoly r = GradedPoly::one(R_), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0^(" + total_.str() + ")";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!first) os << " + ";
            first = false;
            os << coefficient(it->first).str();
            for (size_t i = 0; i < it->first.size(); ++i) {
                if (!it->first[i]) continue;
                os << "*" << R_->vars()[i].name;
                if (it->first[i] != 1) os << "^" << it->first[i];
            }
        }
        return os.str();
    }

private:
    void check(const GradedPoly& o) const {
        if (R_ != o.R_) throw std::invalid_argument("GradedPoly: mixed rings");
    }
    GradedRingPtr R_;
    BiDegree total_;
    std::map<Expv, FElem> terms_;
};

// --- Laurent degree-one translation -------------------------------------------
//
// F[r\T] -> F1[T_1..T_n, U_1..U_a, V_1..V_a] with U_i V_i = 1. A homogeneous
// polynomial maps termwise: coefficient alpha * section(g) T^I goes to
// alpha U^(g+) V^(g-) T^I. Ideal questions add the inverse-pair relations.
class LaurentTranslation {
public:
    explicit LaurentTranslation(GradedRingPtr src) : src_(std::move(src)) {
        const auto& C = src_->corpoid();
        nT_ = src_->nvars();
        nU_ = C->gens().size();
        std::vector<std::string> names;
        for (auto& v : src_->vars()) names.push_back(v.name);
        for (auto& g : C->gen_names()) names.push_back("@U" + g);
        for (auto& g : C->gen_names()) names.push_back("@V" + g);
        target_ = MPolyRing::make(C->f1(), std::move(names));
    }

    const GradedRingPtr& source() const { return src_; }
    const RingPtr& target() const { return target_; }
    size_t n_poly_vars() const { return nT_; }
    size_t n_laurent_pairs() const { return nU_; }

    std::vector<MPoly> inverse_pair_relations() const {
        std::vector<MPoly> out;
        for (size_t i = 0; i < nU_; ++i)
            out.push_back(MPoly::var(target_, nT_ + i) * MPoly::var(target_, nT_ + nU_ + i) - MPoly::one(target_));
        return out;
    }

    MPoly translate(const GradedPoly& p) const {
        MPoly out = MPoly::zero(target_);
        const auto& C = src_->corpoid();
        for (auto& [I, c] : p.terms()) {
            BiDegree cdeg = p.total_degree() / src_->monomial_degree(I);
            auto g = C->coords_of(cdeg);
            if (!g) throw std::logic_error("translate: coefficient degree outside group");
            Expv m(target_->nvars(), 0);
            for (size_t i = 0; i < nT_; ++i) m[i] = I[i];
            for (size_t i = 0; i < nU_; ++i) {
                if ((*g)[i] > 0)
                    m[nT_ + i] = static_cast<int>(mpz_get_si((*g)[i].get_mpz_t()));
                else if ((*g)[i] < 0)
                    m[nT_ + nU_ + i] = static_cast<int>(-mpz_get_si((*g)[i].get_mpz_t()));
            }
            out.add_term(m, c);
        }
        return out;
    }

    BiDegree monomial_degree(const Expv& m) const {
        const auto& C = src_->corpoid();
        Expv I(m.begin(), m.begin() + static_cast<long>(nT_));
        BiDegree out = src_->monomial_degree(I);
        for (size_t i = 0; i < nU_; ++i) {
            long net = m[nT_ + i] - m[nT_ + nU_ + i];
            if (net) out = out * C->gens()[i].pow(Rat(net));
        }
        return out;
    }

    // split into homogeneous graded parts (after substituting V = U^-1)
    std::vector<GradedPoly> homogeneous_components(const MPoly& f) const {
        std::vector<GradedPoly> out;
        for (auto& [m, c] : f.terms()) {
            BiDegree deg = monomial_degree(m);
            GradedPoly* slot = nullptr;
            for (auto& p : out)
                if (p.total_degree() == deg) slot = &p;
            if (!slot) {
                out.emplace_back(src_, deg);
                slot = &out.back();
            }
            Expv I(m.begin(), m.begin() + static_cast<long>(nT_));
            slot->add_term(I, c);
        }
        return out;
    }

    // inverse dictionary on homogeneous images
    GradedPoly untranslate(const MPoly& f) const {
        auto parts = homogeneous_components(f);
        if (parts.empty()) return GradedPoly::zero(src_, BiDegree::one());
        if (parts.size() > 1) throw std::domain_error("untranslate: image is not homogeneous");
        return parts[0];
    }

private:
    GradedRingPtr src_;
    RingPtr target_;
    size_t nT_ = 0, nU_ = 0;
};

}  // namespace gradal

#endif
