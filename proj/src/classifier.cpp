#include "nucembed/classifier.hpp"

#include <json.hpp>

namespace nucembed {

void FunctionSpaceParams::validate() const {
    if (d < 1) throw std::invalid_argument("FunctionSpaceParams: dimension must be positive");
    if (scale == Scale::F && p.is_inf())
        throw std::invalid_argument("FunctionSpaceParams: the F scale requires p < inf");
}

DomainInfo DomainInfo::bounded_lipschitz() { return DomainInfo{}; }

DomainInfo DomainInfo::quasi_bounded(const Rat& b, std::optional<bool> limsup_positive) {
    DomainInfo d;
    d.regime = Regime::quasi_bounded_finite_b;
    d.b_exact = b;
    d.limsup_positive = limsup_positive;
    return d;
}

DomainInfo DomainInfo::quasi_bounded_estimate(const BExponentEstimate& est,
                                              std::optional<bool> limsup_positive) {
    DomainInfo d;
    d.regime = Regime::quasi_bounded_finite_b;
    d.b_estimated = est;
    d.limsup_positive = limsup_positive;
    return d;
}

DomainInfo DomainInfo::quasi_bounded_infinite() {
    DomainInfo d;
    d.regime = Regime::quasi_bounded_infinite_b;
    return d;
}

DomainInfo DomainInfo::not_quasi_bounded() {
    DomainInfo d;
    d.regime = Regime::not_quasi_bounded;
    return d;
}

DomainInfo DomainInfo::finite_measure() {
    DomainInfo d;
    d.regime = Regime::finite_measure;
    return d;
}

std::string_view status_name(Status s) {
    switch (s) {
        case Status::yes: return "yes";
        case Status::no: return "no";
        case Status::undetermined: return "undetermined";
        case Status::not_applicable: return "not_applicable";
    }
    return "?";
}

Rat delta(const FunctionSpaceParams& src, const FunctionSpaceParams& dst) {
    if (src.d != dst.d) throw std::invalid_argument("delta: dimension mismatch");
    Rat dd(src.d);
    return src.s - dd * src.p.recip() - dst.s + dd * dst.p.recip();
}

namespace {

const char* kBoundaryNote = "boundary case: threshold met with equality, only necessity is established";

bool banach_all(const FunctionSpaceParams& a, const FunctionSpaceParams& b) {
    return a.p.is_banach() && a.q.is_banach() && b.p.is_banach() && b.q.is_banach();
}

void check_pair(const FunctionSpaceParams& src, const FunctionSpaceParams& dst) {
    src.validate();
    dst.validate();
    if (src.d != dst.d) throw std::invalid_argument("classify: dimension mismatch");
    if (src.scale != dst.scale)
        throw std::invalid_argument("classify: source and destination must use the same scale");
}

/// Membership of 2^{gamma j}(j+1)^{delta} in l_t (c_0 at t = inf), exactly.
bool tail_member(const Rat& gamma, const Rat& delta_exp, const Exponent& t) {
    if (gamma.is_negative()) return true;
    if (gamma.is_positive()) return false;
    if (t.is_inf()) return delta_exp.is_negative();
    return delta_exp * t.value() < Rat(-1);
}

}  // namespace

EmbeddingVerdict classify_sequence_embedding(const GrowthFamily& beta, const GrowthFamily& m,
                                             const Exponent& p1, const Exponent& p2, const Exponent& q1,
                                             const Exponent& q2) {
    if (!m.valid_block_family())
        throw std::invalid_argument("classify_sequence_embedding: block family must stay >= 1");

    EmbeddingVerdict v;

    Exponent p_star = star_exponent(p1, p2);
    Exponent q_star = star_exponent(q1, q2);
    Rat gamma_c = -beta.geo + m.geo * p_star.recip();
    Rat delta_c = -beta.poly + m.poly * p_star.recip();
    v.compact = tail_member(gamma_c, delta_c, q_star) ? Status::yes : Status::no;

    bool banach = p1.is_banach() && p2.is_banach() && q1.is_banach() && q2.is_banach();
    if (!banach) {
        v.nuclear = Status::not_applicable;
        v.rule_id = "rem:compact-seq";
        v.margin = gamma_c.is_zero() ? (q_star.is_inf() ? -delta_c : Rat(-1) - delta_c * q_star.value())
                                     : -gamma_c;
        v.notes.push_back("nuclearity needs 1 <= p,q <= inf (Banach range); only compactness was classified");
        return v;
    }

    Exponent tp = tong_exponent(p1, p2);
    Exponent tq = tong_exponent(q1, q2);
    Rat gamma_n = -beta.geo + m.geo * tp.recip();
    Rat delta_n = -beta.poly + m.poly * tp.recip();
    v.nuclear = tail_member(gamma_n, delta_n, tq) ? Status::yes : Status::no;
    v.rule_id = "thm:nuclear-seq";
    if (!gamma_n.is_zero())
        v.margin = -gamma_n;
    else
        v.margin = tq.is_inf() ? -delta_n : Rat(-1) - delta_n * tq.value();
    v.notes.push_back("term 2^(gamma j)(j+1)^delta with gamma=" + gamma_n.str() + ", delta=" + delta_n.str());
    return v;
}

EmbeddingVerdict classify_bounded_domain(const FunctionSpaceParams& src, const FunctionSpaceParams& dst) {
    check_pair(src, dst);

    EmbeddingVerdict v;
    Rat dd(src.d);
    Rat gap = delta(src, dst);
    v.delta = gap;
    v.delta_prime = gap;

    Rat thr_c = dd * star_exponent(src.p, dst.p).recip();
    v.threshold_compact = thr_c;
    v.compact = gap > thr_c ? Status::yes : Status::no;

    if (!banach_all(src, dst)) {
        v.nuclear = Status::not_applicable;
        v.rule_id = "prop:bounded-compact";
        v.margin = gap - thr_c;
        v.notes.push_back("nuclearity needs 1 <= p,q <= inf (Banach range); only compactness was classified");
        return v;
    }

    Rat thr_n = dd * tong_exponent(src.p, dst.p).recip();
    v.threshold_nuclear = thr_n;
    v.nuclear = gap > thr_n ? Status::yes : Status::no;
    v.rule_id = "prop:bounded-nuclear";
    v.margin = gap - thr_n;
    return v;
}

namespace {

EmbeddingVerdict quasi_finite_b(const FunctionSpaceParams& src, const FunctionSpaceParams& dst,
                                const Rat& b, std::optional<bool> limsup_positive, const char* rule_compact,
                                const char* rule_nuclear) {
    EmbeddingVerdict v;
    Rat gap = delta(src, dst);
    v.delta = gap;
    v.delta_prime = gap;

    Exponent p_star = star_exponent(src.p, dst.p);
    Rat thr_c = b * p_star.recip();
    v.threshold_compact = thr_c;
    if (gap > thr_c) {
        v.compact = Status::yes;
    } else if (p_star.is_inf() || gap < thr_c) {
        v.compact = Status::no;
    } else if (limsup_positive.value_or(false)) {
        // the strict threshold is also necessary here
        v.compact = Status::no;
    } else {
        v.compact = Status::undetermined;
        v.notes.push_back(kBoundaryNote);
    }

    if (!banach_all(src, dst)) {
        v.nuclear = Status::not_applicable;
        v.rule_id = rule_compact;
        v.margin = gap - thr_c;
        v.notes.push_back("nuclearity needs 1 <= p,q <= inf (Banach range); only compactness was classified");
        return v;
    }

    Exponent t = tong_exponent(src.p, dst.p);
    Rat thr_n = b * t.recip();
    v.threshold_nuclear = thr_n;
    v.rule_id = rule_nuclear;
    if (gap > thr_n) {
        v.nuclear = Status::yes;
    } else if (t.is_inf() || gap < thr_n) {
        v.nuclear = Status::no;
    } else if (limsup_positive.value_or(false)) {
        v.nuclear = Status::no;
        v.rule_id = "rem:limsup-boundary";
    } else {
        v.nuclear = Status::undetermined;
        if (v.notes.empty() || v.notes.back() != kBoundaryNote) v.notes.push_back(kBoundaryNote);
    }
    v.margin = gap - thr_n;
    return v;
}

EmbeddingVerdict quasi_infinite_b(const FunctionSpaceParams& src, const FunctionSpaceParams& dst) {
    EmbeddingVerdict v;
    Rat gap = delta(src, dst);
    v.delta = gap;
    v.delta_prime = gap;
    v.threshold_compact = Rat(0);
    v.threshold_nuclear = Rat(0);

    bool p_monotone = src.p <= dst.p;
    v.compact = (p_monotone && gap > Rat(0)) ? Status::yes : Status::no;
    if (!p_monotone) v.notes.push_back("compactness over an infinite-b domain requires p1 <= p2");

    if (!banach_all(src, dst)) {
        v.nuclear = Status::not_applicable;
        v.rule_id = "prop:quasi-compact(i)";
        v.margin = p_monotone ? gap : Rat::min(Rat(0), gap);
        v.notes.push_back("nuclearity needs 1 <= p,q <= inf (Banach range); only compactness was classified");
        return v;
    }

    if (src.scale == Scale::F) {
        v.nuclear = Status::no;
        v.rule_id = "cor:f-never-nuclear";
        v.margin = Rat::min(Rat(0), gap);
        v.notes.push_back("no F-scale embedding over an infinite-b domain is nuclear");
        return v;
    }

    bool extremal = src.p.is_one() && dst.p.is_inf();
    v.rule_id = "thm:nuclear-quasi(i)";
    if (extremal) {
        // here delta' = s1 - s2 - d, so the rule is exactly delta' > 0
        v.nuclear = gap > Rat(0) ? Status::yes : Status::no;
        v.margin = gap;
    } else {
        v.nuclear = Status::no;
        v.margin = Rat::min(Rat(0), gap);
        v.notes.push_back("nuclearity over an infinite-b domain requires p1 = 1 and p2 = inf");
    }
    return v;
}

Status combine_status(Status lo, Status hi) { return lo == hi ? lo : Status::undetermined; }

}  // namespace

EmbeddingVerdict classify_quasi_bounded(const FunctionSpaceParams& src, const FunctionSpaceParams& dst,
                                        const DomainInfo& dom) {
    check_pair(src, dst);
    if (!(src.s > dst.s))
        throw std::invalid_argument("classify_quasi_bounded: requires s1 > s2");

    switch (dom.regime) {
        case DomainInfo::Regime::bounded_lipschitz:
            throw std::invalid_argument("classify_quasi_bounded: use classify_bounded_domain for bounded Lipschitz domains");
        case DomainInfo::Regime::not_quasi_bounded: {
            EmbeddingVerdict v;
            v.compact = Status::no;
            v.nuclear = Status::no;
            v.rule_id = "rem:never-compact";
            v.margin = Rat(0);
            v.delta = delta(src, dst);
            v.delta_prime = v.delta;
            v.notes.push_back("embeddings over a domain that is not quasi-bounded are never compact");
            return v;
        }
        case DomainInfo::Regime::quasi_bounded_infinite_b:
            return quasi_infinite_b(src, dst);
        case DomainInfo::Regime::finite_measure: {
            auto v = quasi_finite_b(src, dst, Rat(src.d), true, "rem:finite-measure", "rem:finite-measure");
            v.notes.push_back("finite-measure domain: thresholds taken at b = d");
            return v;
        }
        case DomainInfo::Regime::quasi_bounded_finite_b: {
            if (dom.b_exact) {
                if (*dom.b_exact < Rat(src.d))
                    throw std::invalid_argument("classify_quasi_bounded: b must be at least the dimension");
                return quasi_finite_b(src, dst, *dom.b_exact, dom.limsup_positive, "prop:quasi-compact(ii)",
                                      "thm:nuclear-quasi(ii)");
            }
            if (!dom.b_estimated)
                throw std::invalid_argument("classify_quasi_bounded: finite-b regime needs b_exact or b_estimated");
            const auto& est = *dom.b_estimated;
            Rat lo = Rat::max(Rat(src.d), Rat::from_double_floor(est.b_hat - 2.0 * est.stderr_));
            Rat hi = Rat::max(lo, Rat::from_double_ceil(est.b_hat + 2.0 * est.stderr_));
            auto v_lo = quasi_finite_b(src, dst, lo, dom.limsup_positive, "prop:quasi-compact(ii)",
                                       "thm:nuclear-quasi(ii)");
            auto v_hi = quasi_finite_b(src, dst, hi, dom.limsup_positive, "prop:quasi-compact(ii)",
                                       "thm:nuclear-quasi(ii)");
            EmbeddingVerdict v = v_hi;
            v.compact = combine_status(v_lo.compact, v_hi.compact);
            v.nuclear = combine_status(v_lo.nuclear, v_hi.nuclear);
            v.margin = Rat::min(v_lo.margin, v_hi.margin);
            v.threshold_compact = v_hi.threshold_compact;
            v.threshold_nuclear = v_hi.threshold_nuclear;
            v.notes.push_back("estimate-based b: verdict requires agreement across b_hat +/- 2*stderr");
            return v;
        }
    }
    throw std::invalid_argument("classify_quasi_bounded: unsupported regime");
}

std::string verdict_report(const EmbeddingVerdict& v) {
    nlohmann::ordered_json j;
    j["compact"] = status_name(v.compact);
    j["nuclear"] = status_name(v.nuclear);
    j["rule_id"] = v.rule_id;
    auto put = [&](const char* key, const std::optional<Rat>& r) {
        if (r) j[key] = r->str();
        else j[key] = nullptr;
    };
    put("delta", v.delta);
    put("delta_prime", v.delta_prime);
    put("threshold_compact", v.threshold_compact);
    put("threshold_nuclear", v.threshold_nuclear);
    j["margin"] = v.margin.str();
    j["notes"] = v.notes;
    return j.dump();
}

}  // namespace nucembed
