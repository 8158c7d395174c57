#ifndef GRADAL_ANNULOID_HPP
#define GRADAL_ANNULOID_HPP

// Finitely presented algebras over a valuation annuloid F°, given through a
// polynomial model over the chain's center: coefficients in k[t] (height 1)
// or k[u][t] (height 2). Torsion/flatness via localized saturation tests and
// the fiber-splitting cover of flat algebras with reduced fibers.

#include "valuation.hpp"

namespace gradal {

// X = F°[x..]/(gens), with coefficients presented in the polynomial model:
// the model ring is k[(u,)t, x..] over the residue field k of the closed
// point; the chain witnesses are leading variables of the model.
class FOAlgebra {
public:
    // vars: names of the x-variables; the model ring automatically prepends
    // the witness variables of the chain
    static FOAlgebra make(ValuedField F, std::vector<std::string> vars) {
        FOAlgebra X;
        X.F_ = std::move(F);
        switch (X.F_.kind()) {
            case ValuedField::Kind::Trivial: X.nwit_ = 0; break;
            case ValuedField::Kind::TAdic: X.nwit_ = 1; break;
            case ValuedField::Kind::TThenU: X.nwit_ = 2; break;
            case ValuedField::Kind::PAdicQ:
                throw std::domain_error(
                    "FOAlgebra: p-adic polynomial models need integer coefficient bases (unsupported); "
                    "use a t-adic chain");
        }
        FieldPtr k = X.F_.residue_field(X.F_.height());
        std::vector<std::string> names;
        if (X.nwit_ >= 1) names.push_back("@t");
        if (X.nwit_ >= 2) names.push_back("@u");
        // witness variables come after the x-block so the default order stays
        // graded on the x's; elimination helpers reorder on demand
        std::vector<std::string> all = vars;
        all.insert(all.end(), names.begin(), names.end());
        X.ring_ = MPolyRing::make(k, all);
        X.nx_ = vars.size();
        return X;
    }

    const ValuedField& valued_field() const { return F_; }
    const RingPtr& model_ring() const { return ring_; }
    size_t n_x() const { return nx_; }
    size_t n_witness() const { return nwit_; }
    const std::vector<MPoly>& gens() const { return gens_; }
    void add_gen(MPoly g) { gens_.push_back(std::move(g)); }

    MPoly x(size_t i) const { return MPoly::var(ring_, i); }
    MPoly witness(size_t i) const { return MPoly::var(ring_, nx_ + i); }  // 0: t, 1: u

    // fiber over tau_level as an ideal over kappa(tau_level)
    std::pair<RingPtr, std::vector<MPoly>> fiber(size_t level) const {
        FieldPtr kappa = F_.residue_field(level);
        auto R = MPolyRing::make(kappa, std::vector<std::string>(ring_->vars.begin(),
                                                                 ring_->vars.begin() + static_cast<long>(nx_)));
        // witness images: generic levels keep deeper witnesses invertible
        // level j: witnesses nu_0..nu_{j-1} map to 0, the rest to units/params
        std::vector<MPoly> images;
        for (size_t i = 0; i < nx_; ++i) images.push_back(MPoly::var(R, i));
        // coefficient embedding k -> kappa: k is the deepest residue field;
        // kappa contains k as the base of its tower
        std::function<FElem(const FElem&)> cmap = [kappa](const FElem& c) { return embed_bottom(kappa, c); };
        for (size_t w = 0; w < nwit_; ++w) {
            // witness w corresponds to nu_w; nu_0 = t (level >= 1 kills it),
            // nu_1 = u (level >= 2 kills it)
            bool killed = level > w;
            if (killed)
                images.push_back(MPoly::zero(R));
            else {
                // still a parameter: as an element of kappa
                FElem param = witness_param(kappa, w, level);
                images.push_back(MPoly::constant(R, param));
            }
        }
        std::vector<MPoly> out;
        for (auto& g : gens_) out.push_back(g.substitute(R, images, cmap));
        return {R, out};
    }

    // specialize a model polynomial to the level's fiber ring
    MPoly to_level(const MPoly& g, size_t level, const RingPtr& target) const {
        FieldPtr kappa = F_.residue_field(level);
        std::vector<MPoly> images;
        for (size_t i = 0; i < nx_; ++i) images.push_back(MPoly::var(target, i));
        for (size_t w = 0; w < nwit_; ++w) {
            if (level > w)
                images.push_back(MPoly::zero(target));
            else
                images.push_back(MPoly::constant(target, witness_param(kappa, w, level)));
        }
        std::function<FElem(const FElem&)> cmap = [kappa](const FElem& c) { return embed_bottom(kappa, c); };
        return g.substitute(target, images, cmap);
    }

    // lift a fiber-ring polynomial (coefficients in kappa(level)) into the
    // model by clearing denominators; sound for closure computations up to
    // the witness saturation that follows
    MPoly lift_from_level(const MPoly& g, size_t level) const {
        // coefficients of kappa(level) are rational functions in the
        // witnesses level..nwit-1 over the bottom field
        MPoly den_acc = MPoly::one(ring_);
        std::vector<std::pair<Expv, std::pair<MPoly, MPoly>>> parts;  // (mono, (num, den))
        for (auto& [m, c] : g.terms()) {
            auto [n, d] = ratfunc_to_model(c, level);
            parts.push_back({m, {n, d}});
        }
        MPoly out = MPoly::zero(ring_);
        for (size_t i = 0; i < parts.size(); ++i) {
            MPoly t = parts[i].second.first;
            for (size_t j = 0; j < parts.size(); ++j)
                if (j != i) t = t * parts[j].second.second;
            Expv m(ring_->nvars(), 0);
            for (size_t v = 0; v < nx_; ++v) m[v] = parts[i].first[v];
            out = out + t.mul_term(m, FElem::one(ring_->k));
        }
        return out;
    }

private:
    // numerator/denominator of a kappa(level)-element as model polynomials in
    // the witness variables
    std::pair<MPoly, MPoly> ratfunc_to_model(const FElem& c, size_t level) const {
        FieldPtr kappa = F_.residue_field(level);
        return ratfunc_to_model_impl(c, kappa, level);
    }
    std::pair<MPoly, MPoly> ratfunc_to_model_impl(const FElem& c, const FieldPtr& layer, size_t level) const {
        if (layer->kind != Field::Kind::RatFunc)
            return {MPoly::constant(ring_, c), MPoly::one(ring_)};
        // outermost layer of kappa(level) is witness `level`, next level+1, ..
        size_t depth_here = 0;
        {
            const Field* cur = layer.get();
            while (cur->kind == Field::Kind::RatFunc) {
                ++depth_here;
                cur = cur->base.get();
            }
        }
        size_t w = nwit_ - depth_here;  // witness index of this layer
        MPoly wv = MPoly::var(ring_, nx_ + w);
        auto conv_poly = [&](const std::vector<FElem>& cs) {
            MPoly num = MPoly::zero(ring_), den = MPoly::one(ring_);
            std::vector<std::pair<MPoly, MPoly>> ps;
            for (auto& cc : cs) ps.push_back(cc.is_zero() ? std::make_pair(MPoly::zero(ring_), MPoly::one(ring_))
                                                          : ratfunc_to_model_impl(cc, layer->base, level));
            for (auto& [n2, d2] : ps) den = den * d2;
            for (size_t i = 0; i < ps.size(); ++i) {
                MPoly t = ps[i].first;
                for (size_t j = 0; j < ps.size(); ++j)
                    if (j != i) t = t * ps[j].second;
                num = num + t * wv.pow(static_cast<unsigned long>(i));
            }
            return std::make_pair(num, den);
        };
        const auto& [n, d] = c.frac();
        auto [nn, nd] = conv_poly(n);
        auto [dn, dd] = conv_poly(d);
        return {nn * dd, nd * dn};
    }

public:
    static FElem embed_bottom(const FieldPtr& kappa, const FElem& c) {
        // c lives in the deepest field of kappa's RatFunc tower
        if (kappa->kind != Field::Kind::RatFunc) return c;
        FElem inner = embed_bottom(kappa->base, c);
        return FElem::from_fraction(kappa, {inner}, {FElem::one(kappa->base)});
    }
    FElem witness_param(const FieldPtr& kappa, size_t w, size_t level) const {
        // at level, kappa = residue_field(level); surviving witnesses are the
        // tower variables of kappa from the inside out: for TThenU,
        // kappa(0)=k(u)(t) has t outermost, u next; kappa(1)=k(u) has u
        size_t surviving_index = w - level;  // 0-based among surviving, outermost = deepest witness
        // witnesses order: 0 -> t (outermost), 1 -> u (next layer)
        // surviving witnesses at this level, outermost first: t (if level==0), then u
        std::vector<FElem> params;
        const Field* cur = kappa.get();
        std::vector<const Field*> layers;
        while (cur->kind == Field::Kind::RatFunc) {
            layers.push_back(cur);
            cur = cur->base.get();
        }
        // layers[0] = outermost
        size_t layer = surviving_index;
        if (layer >= layers.size()) throw std::logic_error("witness_param: layer out of range");
        FElem g = FElem::generator(layers[layer]->shared_from_this());
        // embed back up to kappa
        for (size_t i = layer; i-- > 0;) {
            const FieldPtr up = layers[i]->shared_from_this();
            g = FElem::from_fraction(up, {g}, {FElem::one(up->base)});
        }
        return g;
    }

private:
    ValuedField F_;
    RingPtr ring_;
    size_t nx_ = 0, nwit_ = 0;
    std::vector<MPoly> gens_;
};

// --- torsion / flatness -----------------------------------------------------------

namespace detail_flat {

// is g in the extension-contraction I·F°[x] ∩ model, i.e. does (I : g) meet
// the multiplicative set of model constants invertible in F°?
inline bool in_localized_ideal(const FOAlgebra& X, const std::vector<MPoly>& I, const MPoly& g) {
    const RingPtr& R = X.model_ring();
    if (groebner(R, I).contains(g)) return true;
    auto quot = ideal_quotient(R, I, g);
    // eliminate the x-block: move witnesses to the front
    size_t nx = X.n_x(), nw = X.n_witness();
    if (nw == 0) return groebner(R, quot).is_unit_ideal();
    // elimination order with the x-block first reaches k[t,u]
    std::vector<std::string> names_elim;
    for (size_t i = 0; i < nx; ++i) names_elim.push_back(R->vars[i]);
    for (size_t i = 0; i < nw; ++i) names_elim.push_back(R->vars[nx + i]);
    auto Relim = MPolyRing::make(R->k, names_elim, {nx, nw});
    std::vector<size_t> vmap_elim(R->nvars());
    for (size_t i = 0; i < R->nvars(); ++i) vmap_elim[i] = i;
    std::vector<MPoly> quot_elim;
    for (auto& q : quot) quot_elim.push_back(remap(q, Relim, vmap_elim));
    auto G = groebner(Relim, quot_elim);
    for (auto& b : G.basis) {
        bool witness_only = true;
        for (size_t i = 0; i < nx; ++i)
            if (b.uses_var(i)) witness_only = false;
        if (!witness_only) continue;
        // b in k[t,u]; invertible in F° iff constant term nonzero
        Expv zero(Relim->nvars(), 0);
        auto it = b.terms().find(zero);
        if (it != b.terms().end() && !it->second.is_zero()) return true;
    }
    return false;
}

}  // namespace detail_flat

// torsion-freeness = flatness over the valuation annuloid
inline bool is_flat_module(const FOAlgebra& X) {
    if (X.valued_field().kind() == ValuedField::Kind::Trivial) return true;  // over a corpoid
    const RingPtr& R = X.model_ring();
    for (size_t w = 0; w < X.n_witness(); ++w) {
        MPoly nu = X.witness(w);
        auto quot = ideal_quotient(R, X.gens(), nu);
        for (auto& g : quot)
            if (!detail_flat::in_localized_ideal(X, X.gens(), g)) return false;
    }
    return true;
}

// --- fiber-splitting cover ----------------------------------------------------------

struct OpenCoverEntry {
    size_t depth;                          // defined through levels 0..depth
    std::vector<long> component_at_level;  // index into the level's component list; -1 below depth
};

struct FiberComponents {
    RingPtr ring;
    std::vector<MPoly> fiber_ideal;
    std::vector<IdealGens> primes;
    ComponentSystem comps;
};

struct OpenCover {
    std::vector<OpenCoverEntry> opens;
    std::vector<FiberComponents> levels;
};

// construct the cover of prop-style descent: each open is the union of the
// linked components along generization chains
inline OpenCover fiber_splitting_cover(const FOAlgebra& X) {
    size_t h = X.valued_field().height();
    OpenCover out;
    const RingPtr& R = X.model_ring();

    // fibers, their primes and components; reducedness is a precondition and
    // is re-checked here
    for (size_t level = 0; level <= h; ++level) {
        auto [FR, FI] = X.fiber(level);
        FiberComponents fc;
        fc.ring = FR;
        fc.fiber_ideal = FI;
        if (!is_radical_ideal(FR, FI))
            throw std::domain_error("fiber_splitting_cover: fiber at level " + std::to_string(level) +
                                    " is not reduced");
        fc.primes = minimal_primes(FR, FI);
        fc.comps = connected_components_system(FR, FI, fc.primes);
        out.levels.push_back(std::move(fc));
    }

    // closure linkage: for a component c at level i and a level j < i, the
    // unique component of level j whose closure contains c. computed on the
    // model: closure of the level-j component, cut at level i
    auto linked = [&](size_t i, size_t ci, size_t j) -> long {
        // model ideal of the closure of component ci' of level j:
        // saturate (I_X + lift of the component ideal) by the witnesses that
        // are invertible at level j (nu_j..): witness index w >= j survives
        // at level j (invertible iff w >= level)... witness w is invertible at
        // levels <= w; at level j the invertible witnesses are w >= j
        // candidates at level j:
        const auto& Lj = out.levels[j];
        const auto& Li = out.levels[i];
        std::vector<long> hits;
        for (size_t cj = 0; cj < Lj.comps.prime_groups.size(); ++cj) {
            // component ideal at level j: intersection of its primes
            std::vector<MPoly> cid;
            bool first = true;
            for (size_t pi : Lj.comps.prime_groups[cj]) {
                cid = first ? Lj.primes[pi] : intersect_ideals(Lj.ring, cid, Lj.primes[pi]);
                first = false;
            }
            // lift to the model: coefficients of kappa(j) lift along the tower
            std::vector<MPoly> model_gens = X.gens();
            for (auto& g : cid) model_gens.push_back(X.lift_from_level(g, j));
            // saturate by the witnesses invertible at level j
            std::vector<MPoly> closure = model_gens;
            for (size_t w = j; w < X.n_witness(); ++w) closure = saturate(R, closure, X.witness(w));
            // cut at level i and test containment in the primes of component ci
            bool contains_all = true;
            for (size_t pi : Li.comps.prime_groups[ci]) {
                auto PG = groebner(Li.ring, Li.primes[pi]);
                for (auto& g : closure) {
                    MPoly gi = X.to_level(g, i, Li.ring);
                    if (!PG.contains(gi)) {
                        contains_all = false;
                        break;
                    }
                }
                if (!contains_all) break;
            }
            if (contains_all) hits.push_back(static_cast<long>(cj));
        }
        if (hits.size() != 1)
            throw std::logic_error("fiber_splitting_cover: closure linkage not unique (found " +
                                   std::to_string(hits.size()) + ")");
        return hits[0];
    };

    std::vector<OpenCoverEntry> all;
    for (size_t i = 0; i <= h; ++i) {
        for (size_t ci = 0; ci < out.levels[i].comps.prime_groups.size(); ++ci) {
            OpenCoverEntry e;
            e.depth = i;
            e.component_at_level.assign(h + 1, -1);
            e.component_at_level[i] = static_cast<long>(ci);
            for (size_t j = 0; j < i; ++j) e.component_at_level[j] = linked(i, ci, j);
            all.push_back(std::move(e));
        }
    }
    // prune opens that are prefixes of deeper ones: their points are covered
    for (auto& e : all) {
        bool redundant = false;
        for (auto& other : all) {
            if (other.depth <= e.depth) continue;
            bool prefix = true;
            for (size_t j = 0; j <= e.depth; ++j)
                if (other.component_at_level[j] != e.component_at_level[j]) prefix = false;
            if (prefix) redundant = true;
        }
        if (!redundant) out.opens.push_back(e);
    }
    return out;
}

}  // namespace gradal

#endif
