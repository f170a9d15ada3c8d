#include <doctest.h>

#include <json.hpp>

#include "nucembed/classifier.hpp"

using namespace nucembed;

namespace {

FunctionSpaceParams sp(Rat s, Exponent p, Exponent q, int d, Scale scale = Scale::B) {
    FunctionSpaceParams f;
    f.scale = scale;
    f.s = s;
    f.p = p;
    f.q = q;
    f.d = d;
    return f;
}

const Exponent k1 = Exponent::of(1);
const Exponent k2 = Exponent::of(2);
const Exponent kinf = Exponent::inf();

}  // namespace

TEST_CASE("delta gap pinned values") {
    CHECK(delta(sp(Rat(2), k2, k2, 2), sp(Rat(0), k2, k2, 2)) == Rat(2));
    CHECK(delta(sp(Rat(3), k1, k2, 2), sp(Rat(0), kinf, k2, 2)) == Rat(1));
    CHECK(delta(sp(Rat(1), k2, k1, 3), sp(Rat(1), k2, k1, 3)) == Rat(0));
    CHECK_THROWS_AS(delta(sp(Rat(1), k2, k2, 2), sp(Rat(0), k2, k2, 3)), std::invalid_argument);
}

TEST_CASE("sequence-space verdicts") {
    GrowthFamily geo{Rat(1), Rat(0)};     // beta_j = 2^j
    GrowthFamily unit{Rat(0), Rat(0)};    // M_j = 1
    GrowthFamily fat{Rat(2), Rat(0)};     // M_j = 2^{2j}
    GrowthFamily poly{Rat(0), Rat(1)};    // beta_j = j+1

    auto v1 = classify_sequence_embedding(geo, unit, k2, k2, k2, k2);
    CHECK(v1.compact == Status::yes);
    CHECK(v1.nuclear == Status::yes);
    CHECK(v1.margin == Rat(1));

    // extremal exponents: compactness and nuclearity coincide
    auto v2 = classify_sequence_embedding(geo, fat, k1, kinf, k1, kinf);
    CHECK(v2.compact == Status::yes);
    CHECK(v2.nuclear == Status::yes);

    auto v3 = classify_sequence_embedding(poly, unit, k2, k2, k2, k2);
    CHECK(v3.compact == Status::yes);   // (j+1)^{-1} is a null sequence
    CHECK(v3.nuclear == Status::no);    // harmonic series diverges at t = 1
    CHECK(v3.rule_id == "thm:nuclear-seq");

    // quasi exponents: compactness only
    auto v4 = classify_sequence_embedding(geo, unit, Exponent::quasi(Rat(1, 2)), k2, k2, k2);
    CHECK(v4.compact == Status::yes);
    CHECK(v4.nuclear == Status::not_applicable);

    GrowthFamily shrinking{Rat(0), Rat(-1)};
    CHECK_THROWS_AS(classify_sequence_embedding(geo, shrinking, k2, k2, k2, k2), std::invalid_argument);
}

TEST_CASE("bounded-domain verdicts") {
    auto v1 = classify_bounded_domain(sp(Rat(3), k2, k2, 2), sp(Rat(0), k2, k2, 2));
    CHECK(v1.compact == Status::yes);
    CHECK(v1.nuclear == Status::yes);
    CHECK(v1.threshold_nuclear == Rat(2));
    CHECK(v1.margin == Rat(1));
    CHECK(v1.rule_id == "prop:bounded-nuclear");

    auto v2 = classify_bounded_domain(sp(Rat(1), k2, k2, 2), sp(Rat(0), k2, k2, 2));
    CHECK(v2.compact == Status::yes);
    CHECK(v2.nuclear == Status::no);

    // boundary equality fails the strict criterion on both counts
    auto v3 = classify_bounded_domain(sp(Rat(1), k1, k2, 1), sp(Rat(0), kinf, k2, 1));
    CHECK(v3.compact == Status::no);
    CHECK(v3.nuclear == Status::no);

    // nuclear threshold at equality: compact but not nuclear
    auto v4 = classify_bounded_domain(sp(Rat(2), k2, k2, 2), sp(Rat(0), k2, k2, 2));
    CHECK(v4.compact == Status::yes);
    CHECK(v4.nuclear == Status::no);

    CHECK_THROWS_AS(classify_bounded_domain(sp(Rat(1), kinf, k2, 2, Scale::F), sp(Rat(0), k2, k2, 2, Scale::F)),
                    std::invalid_argument);
}

TEST_CASE("quasi-bounded verdicts, infinite b") {
    auto dom = DomainInfo::quasi_bounded_infinite();

    auto v1 = classify_quasi_bounded(sp(Rat(3), k1, k1, 2), sp(Rat(0), kinf, k1, 2), dom);
    CHECK(v1.compact == Status::yes);
    CHECK(v1.nuclear == Status::yes);
    CHECK(v1.rule_id == "thm:nuclear-quasi(i)");
    CHECK(v1.margin == Rat(1));

    // equality s1 - s2 = d fails
    auto v2 = classify_quasi_bounded(sp(Rat(2), k1, k1, 2), sp(Rat(0), kinf, k1, 2), dom);
    CHECK(v2.nuclear == Status::no);
    CHECK(v2.compact == Status::no);  // delta = 0

    // non-extremal p never nuclear over infinite b
    auto v3 = classify_quasi_bounded(sp(Rat(10), k2, k1, 2), sp(Rat(0), kinf, k1, 2), dom);
    CHECK(v3.nuclear == Status::no);
    CHECK(v3.compact == Status::yes);

    // p1 > p2 never compact
    auto v4 = classify_quasi_bounded(sp(Rat(10), k2, k1, 2), sp(Rat(0), k1, k1, 2), dom);
    CHECK(v4.compact == Status::no);
    CHECK(v4.nuclear == Status::no);

    // F-scale is never nuclear there
    auto v5 = classify_quasi_bounded(sp(Rat(10), k1, k1, 2, Scale::F), sp(Rat(0), k2, k1, 2, Scale::F), dom);
    CHECK(v5.nuclear == Status::no);
    CHECK(v5.rule_id == "cor:f-never-nuclear");
    CHECK(v5.compact == Status::yes);

    CHECK_THROWS_AS(classify_quasi_bounded(sp(Rat(0), k1, k1, 2), sp(Rat(0), kinf, k1, 2), dom),
                    std::invalid_argument);
}

TEST_CASE("quasi-bounded verdicts, finite b") {
    // b = 3, d = 2, p1 = p2 = 2: t = 1 and p* = inf, so delta' = s1 - s2
    auto dom = DomainInfo::quasi_bounded(Rat(3));

    auto v1 = classify_quasi_bounded(sp(Rat(2), k2, k2, 2), sp(Rat(0), k2, k2, 2), dom);
    CHECK(v1.compact == Status::yes);
    CHECK(v1.nuclear == Status::no);
    CHECK(v1.threshold_nuclear == Rat(3));

    auto v2 = classify_quasi_bounded(sp(Rat(7, 2), k2, k2, 2), sp(Rat(0), k2, k2, 2), dom);
    CHECK(v2.nuclear == Status::yes);
    CHECK(v2.margin == Rat(1, 2));
    CHECK(v2.rule_id == "thm:nuclear-quasi(ii)");

    // equality at the nuclear threshold
    auto boundary = sp(Rat(3), k2, k2, 2);
    auto target = sp(Rat(0), k2, k2, 2);
    auto undec = classify_quasi_bounded(boundary, target, dom);
    CHECK(undec.nuclear == Status::undetermined);
    CHECK(undec.margin == Rat(0));

    auto pos = classify_quasi_bounded(boundary, target, DomainInfo::quasi_bounded(Rat(3), true));
    CHECK(pos.nuclear == Status::no);  // strict threshold is also necessary under a positive limsup
    CHECK(pos.rule_id == "rem:limsup-boundary");

    auto zero = classify_quasi_bounded(boundary, target, DomainInfo::quasi_bounded(Rat(3), false));
    CHECK(zero.nuclear == Status::undetermined);

    // compactness boundary with p* < inf
    auto domc = DomainInfo::quasi_bounded(Rat(5, 2));
    auto cb = classify_quasi_bounded(sp(Rat(9, 8), Exponent::of(4), k2, 2), sp(Rat(0), k2, k2, 2), domc);
    // delta' = 9/8 - 2(1/4 - 1/2) = 13/8 vs threshold (5/2)/4 = 5/8: strict pass
    CHECK(cb.compact == Status::yes);

    auto eq = classify_quasi_bounded(sp(Rat(1, 8), Exponent::of(4), k2, 2), sp(Rat(0), k2, k2, 2), domc);
    // delta' = 1/8 + 1/2 = 5/8 = threshold
    CHECK(eq.compact == Status::undetermined);
    auto eq_pos = classify_quasi_bounded(sp(Rat(1, 8), Exponent::of(4), k2, 2), sp(Rat(0), k2, k2, 2),
                                         DomainInfo::quasi_bounded(Rat(5, 2), true));
    CHECK(eq_pos.compact == Status::no);

    CHECK_THROWS_AS(classify_quasi_bounded(sp(Rat(1), k2, k2, 3), sp(Rat(0), k2, k2, 3),
                                           DomainInfo::quasi_bounded(Rat(2))),
                    std::invalid_argument);
}

TEST_CASE("degenerate regimes") {
    auto never = classify_quasi_bounded(sp(Rat(5), k2, k2, 2), sp(Rat(0), k2, k2, 2),
                                        DomainInfo::not_quasi_bounded());
    CHECK(never.compact == Status::no);
    CHECK(never.nuclear == Status::no);
    CHECK(never.rule_id == "rem:never-compact");

    // finite measure behaves like b = d with a decisive boundary
    auto fm = classify_quasi_bounded(sp(Rat(3), k2, k2, 2), sp(Rat(0), k2, k2, 2), DomainInfo::finite_measure());
    auto bd = classify_bounded_domain(sp(Rat(3), k2, k2, 2), sp(Rat(0), k2, k2, 2));
    CHECK(fm.compact == bd.compact);
    CHECK(fm.nuclear == bd.nuclear);
    CHECK(fm.rule_id == "rem:finite-measure");

    CHECK_THROWS_AS(classify_quasi_bounded(sp(Rat(3), k2, k2, 2), sp(Rat(0), k2, k2, 2),
                                           DomainInfo::bounded_lipschitz()),
                    std::invalid_argument);
}

TEST_CASE("estimate-based b gives a three-way verdict") {
    BExponentEstimate est;
    est.b_hat = 3.0;
    est.stderr_ = 0.05;

    // margin comfortably above the interval: yes
    auto far = classify_quasi_bounded(sp(Rat(4), k2, k2, 2), sp(Rat(0), k2, k2, 2),
                                      DomainInfo::quasi_bounded_estimate(est));
    CHECK(far.nuclear == Status::yes);
    bool has_caveat = false;
    for (const auto& n : far.notes) has_caveat |= n.find("estimate-based") != std::string::npos;
    CHECK(has_caveat);

    // threshold inside b_hat +/- 2 stderr: undetermined
    auto close = classify_quasi_bounded(sp(Rat(61, 20), k2, k2, 2), sp(Rat(0), k2, k2, 2),
                                        DomainInfo::quasi_bounded_estimate(est));
    CHECK(close.nuclear == Status::undetermined);

    // far below: no
    auto below = classify_quasi_bounded(sp(Rat(2), k2, k2, 2), sp(Rat(0), k2, k2, 2),
                                        DomainInfo::quasi_bounded_estimate(est));
    CHECK(below.nuclear == Status::no);
}

TEST_CASE("verdict report structure") {
    auto dom = DomainInfo::quasi_bounded(Rat(3));
    auto v = classify_quasi_bounded(sp(Rat(7, 2), k2, k2, 2), sp(Rat(0), k2, k2, 2), dom);
    auto line = verdict_report(v);
    CHECK(line.find('\n') == std::string::npos);

    auto j = nlohmann::json::parse(line);
    CHECK(j["compact"] == "yes");
    CHECK(j["nuclear"] == "yes");
    CHECK(j["rule_id"] == "thm:nuclear-quasi(ii)");
    CHECK(j["delta_prime"] == "7/2");
    CHECK(j["threshold_nuclear"] == "3");
    CHECK(j["margin"] == "1/2");
    CHECK(j["notes"].is_array());

    // stable field order
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    // nlohmann::json::parse sorts keys; re-parse with ordered_json to check emission order
    auto oj = nlohmann::ordered_json::parse(line);
    std::vector<std::string> order;
    for (auto it = oj.begin(); it != oj.end(); ++it) order.push_back(it.key());
    CHECK(order == std::vector<std::string>{"compact", "nuclear", "rule_id", "delta", "delta_prime",
                                            "threshold_compact", "threshold_nuclear", "margin", "notes"});

    // undetermined verdicts carry the boundary caveat
    auto u = classify_quasi_bounded(sp(Rat(3), k2, k2, 2), sp(Rat(0), k2, k2, 2), dom);
    auto uline = verdict_report(u);
    CHECK(uline.find("boundary case") != std::string::npos);

    auto never = classify_quasi_bounded(sp(Rat(5), k2, k2, 2), sp(Rat(0), k2, k2, 2),
                                        DomainInfo::not_quasi_bounded());
    CHECK(verdict_report(never).find("rem:never-compact") != std::string::npos);
}

TEST_CASE("classifier cross-properties on a small grid") {
    std::vector<Exponent> ps = {k1, Exponent::of(Rat(4, 3)), k2, Exponent::of(4), kinf};
    std::vector<Rat> gaps = {Rat(1, 2), Rat(1), Rat(2), Rat(3), Rat(4)};
    std::vector<DomainInfo> doms = {DomainInfo::quasi_bounded(Rat(2)), DomainInfo::quasi_bounded(Rat(3), true),
                                    DomainInfo::quasi_bounded_infinite(), DomainInfo::finite_measure()};

    for (const auto& p1 : ps)
        for (const auto& p2 : ps)
            for (const auto& gap : gaps)
                for (const auto& dom : doms) {
                    auto src = sp(gap, p1, k2, 2);
                    auto dst = sp(Rat(0), p2, k2, 2);
                    auto v = classify_quasi_bounded(src, dst, dom);
                    // nuclear => compact
                    if (v.nuclear == Status::yes) CHECK(v.compact == Status::yes);
                    // threshold ordering b/p* <= b/t
                    if (v.threshold_compact && v.threshold_nuclear)
                        CHECK(*v.threshold_compact <= *v.threshold_nuclear);
                    // fine-index independence
                    auto vq = classify_quasi_bounded(sp(gap, p1, kinf, 2), sp(Rat(0), p2, k1, 2), dom);
                    CHECK(vq.compact == v.compact);
                    CHECK(vq.nuclear == v.nuclear);
                    // monotone in s1
                    auto vup = classify_quasi_bounded(sp(gap + Rat(2), p1, k2, 2), dst, dom);
                    if (v.compact == Status::yes) CHECK(vup.compact == Status::yes);
                    if (v.nuclear == Status::yes) CHECK(vup.nuclear == Status::yes);
                }

    // b = d with positive limsup reproduces the bounded-domain classifier
    for (const auto& p1 : ps)
        for (const auto& p2 : ps)
            for (const auto& gap : gaps) {
                auto src = sp(gap, p1, k2, 2);
                auto dst = sp(Rat(0), p2, k2, 2);
                auto qb = classify_quasi_bounded(src, dst, DomainInfo::quasi_bounded(Rat(2), true));
                auto bd = classify_bounded_domain(src, dst);
                CHECK(qb.compact == bd.compact);
                CHECK(qb.nuclear == bd.nuclear);
            }
}
