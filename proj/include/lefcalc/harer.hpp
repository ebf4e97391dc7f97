#pragma once

// Harer's construction: a 2-handlebody, given as a framed link projected
// onto a disk with bands, becomes an ALF over D^2 with bounded fibers.
//
// Homology-level bookkeeping:
//   * the initial fiber is a disk with n1 holes, one boundary class d_m per
//     1-handle, and a component's class is the signed count of its band
//     traversals;
//   * at each double point the fiber gains a torus (a, b); the over strand
//     picks up b, the under strand sign * a, and both new bands are cancelled
//     by cycles on a and b;
//   * a framing move adds a boundary-parallel handle e, pushes the
//     component across it and adds a cycle on e whose sign is the change in
//     the component's framing relative to the page;
//   * cycles are ordered [a-side cancellers, components, b-side cancellers,
//     framing corrections], which makes the induced linking matrix on H_2
//     equal to the input's.

#include <optional>
#include <variant>
#include <vector>

#include "lefcalc/alf.hpp"

namespace lefcalc {

struct DoublePoint {
    std::size_t over_component = 0;
    std::size_t over_strand = 0;
    std::size_t under_component = 0;
    std::size_t under_strand = 0;
    int sign = 1;  // crossing sign

    bool self() const { return over_component == under_component; }
    bool operator==(const DoublePoint&) const = default;
};

struct LinkComponent {
    std::vector<int> band_word;  // +-(m + 1): traverse 1-handle m forwards/backwards
    Int target_framing = 0;      // relative to the product framing
    std::optional<Int> rotation;

    // Arcs between consecutive band traversals.
    std::size_t strand_count() const { return std::max<std::size_t>(1, band_word.size()); }
    bool operator==(const LinkComponent&) const = default;
};

struct ProjectedLink {
    std::size_t n1 = 0;
    std::vector<LinkComponent> components;
    std::vector<DoublePoint> double_points;
    std::optional<Int> declared_bridge_number;

    bool operator==(const ProjectedLink&) const = default;
};

inline void validate(const ProjectedLink& p) {
    for (const auto& c : p.components)
        for (int h : c.band_word)
            if (h == 0 || static_cast<std::size_t>(std::abs(h)) > p.n1)
                throw InputError("band word refers to a 1-handle that does not exist");
    for (const auto& dp : p.double_points) {
        if (dp.over_component >= p.components.size() || dp.under_component >= p.components.size())
            throw InputError("double point refers to a missing component");
        if (dp.over_strand >= p.components[dp.over_component].strand_count() ||
            dp.under_strand >= p.components[dp.under_component].strand_count())
            throw InputError("double point refers to a missing strand");
        if (dp.sign != 1 && dp.sign != -1) throw InputError("double point sign must be +1 or -1");
        if (dp.self() && dp.over_strand == dp.under_strand && p.components[dp.over_component].strand_count() > 1)
            throw InputError("double point joins a strand to itself");
    }
}

inline Int writhe(const ProjectedLink& p, std::size_t component) {
    Int w = 0;
    for (const auto& dp : p.double_points)
        if (dp.self() && dp.over_component == component) w += dp.sign;
    return w;
}

/// The 2-handlebody read straight off the projection: framings are
/// target + writhe, and for i < j the linking number is the signed count
/// of crossings where K_i passes over K_j.
inline KirbyData direct_kirby_data(const ProjectedLink& p) {
    validate(p);
    const std::size_t k = p.components.size();
    Matrix A(k, p.n1), Q(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (int h : p.components[i].band_word) A(i, static_cast<std::size_t>(std::abs(h) - 1)) += h > 0 ? 1 : -1;
        Q(i, i) = p.components[i].target_framing + writhe(p, i);
    }
    for (const auto& dp : p.double_points) {
        if (dp.self() || dp.over_component > dp.under_component) continue;
        Q(dp.over_component, dp.under_component) += dp.sign;
        Q(dp.under_component, dp.over_component) += dp.sign;
    }
    return {p.n1, std::move(A), std::move(Q)};
}

/// A projection realizing given Kirby data: band words from the attaching
/// classes, |Q_ij| crossings of K_i over K_j, no self-crossings.
inline ProjectedLink synthesize_projection(const KirbyData& k) {
    ProjectedLink p;
    p.n1 = k.n1;
    for (std::size_t i = 0; i < k.two_handles(); ++i) {
        LinkComponent c;
        for (std::size_t m = 0; m < k.n1; ++m) {
            const int step = k.attach(i, m) > 0 ? static_cast<int>(m + 1) : -static_cast<int>(m + 1);
            for (Int n = 0; n < (k.attach(i, m) < 0 ? Int(-k.attach(i, m)) : k.attach(i, m)); ++n) c.band_word.push_back(step);
        }
        c.target_framing = k.linking(i, i);
        p.components.push_back(std::move(c));
    }
    for (std::size_t i = 0; i < k.two_handles(); ++i)
        for (std::size_t j = i + 1; j < k.two_handles(); ++j) {
            const Int& lk = k.linking(i, j);
            for (Int n = 0; n < (lk < 0 ? Int(-lk) : lk); ++n) p.double_points.push_back({i, 0, j, 0, lk > 0 ? 1 : -1});
        }
    return p;
}

// ---------------------------------------------------------------------------
// Transcript.

struct TorusSum {
    std::size_t double_point = 0;
    bool operator==(const TorusSum&) const = default;
};
enum class Band { a, b };
struct CancellingPair {
    std::size_t double_point = 0;
    Band band = Band::a;
    int sign = 1;
    bool operator==(const CancellingPair&) const = default;
};
struct FramingMove {
    std::size_t component = 0;
    int sign = 1;  // sign of the new cycle; the component's relative framing moves by this much
    bool operator==(const FramingMove&) const = default;
};
using HarerMove = std::variant<TorusSum, CancellingPair, FramingMove>;

struct HarerTranscript {
    std::vector<HarerMove> moves;
    ALF result;
};

struct HarerOptions {
    int cancelling_sign = 1;
};

namespace detail {

class HarerBuilder {
  public:
    explicit HarerBuilder(const ProjectedLink& p) : link_(p), fiber_(0, static_cast<int>(p.n1) + 1), seifert_(SeifertForm::standard(fiber_)) {
        validate(p);
        for (const auto& c : p.components) {
            CurveClass cls = CurveClass::zero(fiber_);
            for (int h : c.band_word) cls.coeffs[fiber_.d_index(std::abs(h) - 1)] += h > 0 ? 1 : -1;
            components_.push_back(std::move(cls));
        }
        incidences_.assign(p.components.size(), 0);
        tori_.resize(p.double_points.size());
    }

    void apply(const HarerMove& m) {
        std::visit([this](const auto& mv) { apply_move(mv); }, m);
    }

    /// target + writhe minus the framing the current fiber would induce;
    /// the component's own cycle needs sign = -defect, so defect must end at +-1.
    Int framing_defect(std::size_t k) const {
        const auto& c = link_.components[k];
        return c.target_framing + writhe(link_, k) - seifert_(components_[k], components_[k]) + incidences_[k];
    }

    ALF finish() const {
        std::vector<VanishingCycle> cycles;
        for (const auto& c : a_side_) cycles.push_back(c);
        for (std::size_t k = 0; k < components_.size(); ++k) {
            const Int f = framing_defect(k);
            if (f != 1 && f != -1) throw IntegrityError("Harer transcript leaves a component with framing defect " + f.str());
            const auto& comp = link_.components[k];
            // Default rotation has the parity of the framing (characteristic).
            const Int framing = comp.target_framing + writhe(link_, k);
            const Int r = comp.rotation ? *comp.rotation : Int(framing % 2 == 0 ? 0 : 1);
            cycles.push_back({components_[k], f > 0 ? -1 : 1, r});
        }
        for (const auto& c : b_side_) cycles.push_back(c);
        for (const auto& c : corrections_) cycles.push_back(c);
        return {fiber_, std::move(cycles), seifert_};
    }

  private:
    void grow(const SurfaceExtension& ext) {
        for (auto& c : components_) c = ext.transport(c);
        for (auto& t : tori_)
            if (t) t = std::pair{ext.transport(t->first), ext.transport(t->second)};
        for (auto* list : {&a_side_, &b_side_, &corrections_})
            for (auto& c : *list) c.curve = ext.transport(c.curve);
        seifert_ = ext.transport(seifert_);
        fiber_ = ext.target;
    }

    void apply_move(const TorusSum& m) {
        if (m.double_point >= tori_.size() || tori_[m.double_point]) throw InputError("invalid torus sum in transcript");
        const SurfaceExtension ext = extend_surface(fiber_, HandleKind::torus);
        grow(ext);
        const CurveClass a = CurveClass::basis(fiber_, ext.new_classes[0]);
        const CurveClass b = CurveClass::basis(fiber_, ext.new_classes[1]);
        const DoublePoint& dp = link_.double_points[m.double_point];
        components_[dp.over_component] = components_[dp.over_component] + b;
        components_[dp.under_component] = components_[dp.under_component] + a * Int(dp.sign);
        tori_[m.double_point] = std::pair{a, b};
    }

    void apply_move(const CancellingPair& m) {
        if (m.double_point >= tori_.size() || !tori_[m.double_point]) throw InputError("cancelling pair before its torus sum");
        if (m.sign != 1 && m.sign != -1) throw InputError("cancelling pair sign must be +1 or -1");
        const auto& [a, b] = *tori_[m.double_point];
        const DoublePoint& dp = link_.double_points[m.double_point];
        if (m.band == Band::a) {
            a_side_.push_back({a, m.sign, 0});
            incidences_[dp.under_component] += m.sign;
        } else {
            b_side_.push_back({b, m.sign, 0});
            incidences_[dp.over_component] += m.sign;
        }
    }

    void apply_move(const FramingMove& m) {
        if (m.component >= components_.size()) throw InputError("framing move on a missing component");
        if (m.sign != 1 && m.sign != -1) throw InputError("framing move sign must be +1 or -1");
        const SurfaceExtension ext = extend_surface(fiber_, HandleKind::split);
        grow(ext);
        const CurveClass e = ext.new_class();
        components_[m.component] = components_[m.component] + e;
        corrections_.push_back({e, m.sign, 0});
        incidences_[m.component] += m.sign;
    }

    const ProjectedLink& link_;
    Surface fiber_;
    SeifertForm seifert_;
    std::vector<CurveClass> components_;
    std::vector<Int> incidences_;  // sum of signs of auxiliary cycles each component crosses
    std::vector<std::optional<std::pair<CurveClass, CurveClass>>> tori_;
    std::vector<VanishingCycle> a_side_, b_side_, corrections_;
};

}  // namespace detail

/// Rebuilds the ALF from the initial disk-with-holes by replaying moves.
inline ALF replay(const ProjectedLink& p, const std::vector<HarerMove>& moves) {
    detail::HarerBuilder builder(p);
    for (const auto& m : moves) builder.apply(m);
    return builder.finish();
}

inline std::pair<ALF, HarerTranscript> harer_alf(const ProjectedLink& p, const HarerOptions& opt = {}) {
    if (opt.cancelling_sign != 1 && opt.cancelling_sign != -1) throw InputError("cancelling sign must be +1 or -1");
    detail::HarerBuilder builder(p);
    HarerTranscript t;
    auto push = [&](HarerMove m) {
        builder.apply(m);
        t.moves.push_back(std::move(m));
    };
    for (std::size_t i = 0; i < p.double_points.size(); ++i) {
        push(TorusSum{i});
        push(CancellingPair{i, Band::a, opt.cancelling_sign});
        push(CancellingPair{i, Band::b, opt.cancelling_sign});
    }
    // Greedy: step toward the nearer of +-1; a defect of 0 goes to -1.
    for (std::size_t k = 0; k < p.components.size(); ++k)
        for (Int f = builder.framing_defect(k); f != 1 && f != -1; f = builder.framing_defect(k)) push(FramingMove{k, f > 0 ? -1 : 1});
    t.result = builder.finish();
    return {t.result, std::move(t)};
}

inline Int genus_bound(const ProjectedLink& p) {
    if (!p.declared_bridge_number) throw InputError("genus bound needs a declared bridge number");
    return *p.declared_bridge_number;
}

/// Total-space invariants of the ALF against those of the input handlebody.
struct HarerOracle {
    Int chi_direct, chi_alf;
    int sigma_direct = 0, sigma_alf = 0;
    AbelianGroup h1_direct, h1_alf;

    bool pass() const { return chi_direct == chi_alf && sigma_direct == sigma_alf && h1_direct == h1_alf; }
};

inline HarerOracle harer_oracle(const ProjectedLink& p, const ALF& a) {
    const KirbyData direct = direct_kirby_data(p);
    const KirbyData induced = induced_kirby_data(a);
    return {euler_characteristic(direct), euler_characteristic(induced), signature(direct), signature(induced),
            h1_total(direct).group(), h1_total(induced).group()};
}

}  // namespace lefcalc
