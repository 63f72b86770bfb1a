#include "scop/morphism.hpp"

#include "scop/error.hpp"
#include "scop/experiments.hpp"
#include "scop/preorder.hpp"

#include <algorithm>
#include <random>

namespace scop {

namespace {

template <typename Map>
const typename Map::mapped_type& mapped(const Map& map, const typename Map::key_type& key,
                                        const std::string& what) {
    const auto it = map.find(key);
    if (it == map.end()) raise(errc::domain_mismatch, what + " is missing '" + key + "'");
    return it->second;
}

std::set<OutcomeLabel> row_outcomes(const ExperimentSpec& spec, const StateId& p) {
    std::set<OutcomeLabel> out;
    for (const auto& [key, label] : spec.outcomes)
        if (key.p == p) out.insert(label);
    return out;
}

// Shared by the SCOP and SCO verifiers: covariance of mu plus the
// experiment/outcome-bijection condition over the property-free parts.
template <typename SourceLike, typename TargetLike>
void verify_sco_part(const SourceLike& source, const TargetLike& target,
                     const std::map<StateId, StateId>& m,
                     const std::map<ContextId, ContextId>& l,
                     const std::map<ContextId, std::map<OutcomeLabel, OutcomeLabel>>& k,
                     std::vector<MorphismViolation>& violations) {
    const auto mu_of = [](const auto& sys, const MuKey& key) -> const SubsetProb& {
        static const SubsetProb kZero = SubsetProb::zero();
        const auto it = sys.mu_table.find(key);
        return it == sys.mu_table.end() ? kZero : it->second;
    };

    for (const auto& [p_big, p_small] : m)
        if (std::find(source.states.begin(), source.states.end(), p_small) == source.states.end())
            raise(errc::domain_mismatch, "m maps '" + p_big + "' to unknown state '" + p_small + "'");
    for (const auto& p_big : target.states) mapped(m, p_big, "m");
    for (const auto& [e_small, e_big] : l)
        if (std::find(target.contexts.begin(), target.contexts.end(), e_big) ==
            target.contexts.end())
            raise(errc::domain_mismatch, "l maps '" + e_small + "' to unknown context '" + e_big + "'");
    for (const auto& e : source.contexts) mapped(l, e, "l");

    // Covariance: mu(f, m(q'), e, m(p')) = mu'(l(f), q', l(e), p').
    for (const auto& e : source.contexts) {
        const auto& le = l.at(e);
        for (const auto& f : source.contexts) {
            const auto& lf = l.at(f);
            for (const auto& p_big : target.states) {
                const auto& mp = m.at(p_big);
                for (const auto& q_big : target.states) {
                    const auto& mq = m.at(q_big);
                    const auto& lhs = mu_of(source, MuKey{f, mq, e, mp});
                    const auto& rhs = mu_of(target, MuKey{lf, q_big, le, p_big});
                    if (!(lhs == rhs))
                        violations.push_back(
                            {"covariance-mu", "mu(" + f + "," + mq + "," + e + "," + mp + ") = " +
                                                  lhs.str() + " but mu'(" + lf + "," + q_big + "," +
                                                  le + "," + p_big + ") = " + rhs.str()});
                }
            }
        }
    }

    // Experiments map to experiments, with outcome bijections.
    for (const auto& [e, spec] : source.experiments) {
        const auto& le = l.at(e);
        const auto target_spec = target.experiments.find(le);
        if (target_spec == target.experiments.end()) {
            violations.push_back(
                {"experiment", "source experiment '" + e + "' maps to non-experiment '" + le + "'"});
            continue;
        }
        const auto k_it = k.find(e);
        if (k_it == k.end()) {
            violations.push_back({"experiment", "no outcome bijection declared for '" + e + "'"});
            continue;
        }
        const auto& ke = k_it->second;
        for (const auto& p_big : target.states) {
            const auto& mp = m.at(p_big);
            const auto source_row = row_outcomes(spec, mp);
            const auto target_row = row_outcomes(target_spec->second, p_big);
            std::set<OutcomeLabel> image;
            bool defined = true;
            for (const auto& x : source_row) {
                const auto mapped_it = ke.find(x);
                if (mapped_it == ke.end()) {
                    violations.push_back({"experiment", "k[" + e + "] undefined on outcome '" +
                                                            x.text() + "' of O(" + e + "," + mp + ")"});
                    defined = false;
                    break;
                }
                image.insert(mapped_it->second);
            }
            if (!defined) continue;
            if (image.size() != source_row.size())
                violations.push_back({"experiment", "k[" + e + "] is not injective on O(" + e + "," +
                                                        mp + ")"});
            if (image != target_row)
                violations.push_back({"experiment", "k[" + e + "] does not map O(" + e + "," + mp +
                                                        ") onto O(" + le + "," + p_big + ")"});
        }
    }
}

} // namespace

MorphismReport verify(const ScopMorphism& mor) {
    MorphismReport report;
    verify_sco_part(mor.source, mor.target, mor.m, mor.l, mor.k, report.violations);

    for (const auto& [a_small, a_big] : mor.n)
        if (!mor.target.has_property(a_big))
            raise(errc::domain_mismatch, "n maps '" + a_small + "' to unknown property '" + a_big + "'");
    for (const auto& a : mor.source.properties) mapped(mor.n, a, "n");

    // Covariance: a in xi(m(p')) <=> n(a) in xi'(p').
    for (const auto& p_big : mor.target.states) {
        const auto& mp = mor.m.at(p_big);
        const auto& xi_small = mor.source.xi(mp);
        const auto& xi_big = mor.target.xi(p_big);
        for (const auto& a : mor.source.properties) {
            const bool lhs = xi_small.count(a) != 0;
            const bool rhs = xi_big.count(mor.n.at(a)) != 0;
            if (lhs != rhs)
                report.violations.push_back(
                    {"covariance-xi", "a = '" + a + "', p' = '" + p_big + "': " +
                                          (lhs ? "actual in m(p') only" : "actual in p' only")});
        }
    }

    std::sort(report.violations.begin(), report.violations.end());
    return report;
}

ScopMorphism identity(const ScopSystem& sys) {
    ScopMorphism mor;
    mor.source = sys;
    mor.target = sys;
    for (const auto& p : sys.states) mor.m[p] = p;
    for (const auto& e : sys.contexts) mor.l[e] = e;
    for (const auto& a : sys.properties) mor.n[a] = a;
    for (const auto& [e, spec] : sys.experiments) {
        auto& ke = mor.k[e];
        for (const auto& [key, label] : spec.outcomes) ke[label] = label;
    }
    return mor;
}

ScopMorphism compose(const ScopMorphism& g, const ScopMorphism& h) {
    if (!(h.target == g.source))
        raise(errc::not_composable, "middle systems differ");
    ScopMorphism out;
    out.source = h.source;
    out.target = g.target;
    // States run backwards: first pull through g, then through h.
    for (const auto& [p, gp] : g.m) out.m[p] = h.m.at(gp);
    for (const auto& [e, he] : h.l) out.l[e] = g.l.at(he);
    for (const auto& [a, ha] : h.n) out.n[a] = g.n.at(ha);
    for (const auto& [e, ke] : h.k) {
        const auto& le = h.l.at(e);
        const auto gk = g.k.find(le);
        if (gk == g.k.end()) continue; // l(e) not an experiment for g; verify will complain
        auto& composed = out.k[e];
        for (const auto& [x, y] : ke) {
            const auto it = gk->second.find(y);
            if (it != gk->second.end()) composed[x] = it->second;
        }
    }
    return out;
}

PreservationReport check_preservation(const ScopMorphism& mor, bool require_complete) {
    if (!verify(mor).ok())
        raise(errc::covariance_violation, "morphism fails verification");

    PreservationReport report;
    const auto& src = mor.source;
    const auto& tgt = mor.target;

    for (const auto& p : tgt.states) {
        for (const auto& q : tgt.states) {
            const bool big = state_implies(tgt, p, q);
            const bool small = state_implies(src, mor.m.at(p), mor.m.at(q));
            if (big != small)
                report.order_violations.push_back("p' < q' vs m(p') < m(q') differ for (" + p +
                                                  ", " + q + ")");
        }
    }
    for (const auto& a : src.properties) {
        for (const auto& b : src.properties) {
            const bool small = property_implies(src, a, b);
            const bool big = property_implies(tgt, mor.n.at(a), mor.n.at(b));
            if (small != big)
                report.order_violations.push_back("a < b vs n(a) < n(b) differ for (" + a + ", " +
                                                  b + ")");
        }
    }

    const bool complete = check_property_completeness(src).complete &&
                          check_state_completeness(src).complete &&
                          check_property_completeness(tgt).complete &&
                          check_state_completeness(tgt).complete;
    if (!complete) {
        if (require_complete)
            raise(errc::not_complete, "meet/join preservation needs complete systems");
        return report;
    }
    report.meet_join_checked = true;

    // n(meet{a,b}) lands in the meet class of {n(a), n(b)}; the empty
    // family (the maximal property) is included.
    std::vector<std::set<PropertyId>> property_families{{}};
    for (const auto& a : src.properties)
        for (const auto& b : src.properties)
            if (a < b) property_families.push_back({a, b});
    for (const auto& family : property_families) {
        const auto meets = meet_properties(src, family);
        if (meets.empty()) continue; // complete source: only possible for foreign families
        std::set<PropertyId> mapped_family;
        for (const auto& a : family) mapped_family.insert(mor.n.at(a));
        const auto target_meets = meet_properties(tgt, mapped_family);
        const auto image = mor.n.at(*meets.begin());
        if (!target_meets.count(image))
            report.meet_join_violations.push_back("n(meet) escapes the meet class of its images");
    }

    // m(join{p', q'}) lands in the join class of {m(p'), m(q')}.
    std::vector<std::set<StateId>> state_families{{}};
    for (const auto& p : tgt.states)
        for (const auto& q : tgt.states)
            if (p < q) state_families.push_back({p, q});
    for (const auto& family : state_families) {
        const auto joins = join_states(tgt, family);
        if (joins.empty()) continue;
        std::set<StateId> mapped_family;
        for (const auto& p : family) mapped_family.insert(mor.m.at(p));
        const auto source_joins = join_states(src, mapped_family);
        const auto image = mor.m.at(*joins.begin());
        if (!source_joins.count(image))
            report.meet_join_violations.push_back("m(join) escapes the join class of its images");
    }
    return report;
}

MorphismReport verify_sampled(const ScopMorphism& mor, std::size_t samples, std::uint64_t seed) {
    MorphismReport report;
    const auto& src = mor.source;
    const auto& tgt = mor.target;
    for (const auto& p : tgt.states) mapped(mor.m, p, "m");
    for (const auto& e : src.contexts) mapped(mor.l, e, "l");
    for (const auto& a : src.properties) mapped(mor.n, a, "n");
    if (src.contexts.empty() || tgt.states.empty()) return report;

    std::mt19937_64 rng(seed);
    const auto pick = [&rng](const std::vector<std::string>& pool) -> const std::string& {
        return pool[rng() % pool.size()];
    };
    for (std::size_t i = 0; i < samples; ++i) {
        const auto& e = pick(src.contexts);
        const auto& f = pick(src.contexts);
        const auto& p_big = pick(tgt.states);
        const auto& q_big = pick(tgt.states);
        const auto& lhs = src.mu(f, mor.m.at(q_big), e, mor.m.at(p_big));
        const auto& rhs = tgt.mu(mor.l.at(f), q_big, mor.l.at(e), p_big);
        if (!(lhs == rhs))
            report.violations.push_back(
                {"covariance-mu", "sampled tuple (" + f + "," + q_big + "," + e + "," + p_big +
                                      "): " + lhs.str() + " != " + rhs.str()});
        if (!src.properties.empty()) {
            const auto& a = pick(src.properties);
            const bool small = src.xi(mor.m.at(p_big)).count(a) != 0;
            const bool big = tgt.xi(p_big).count(mor.n.at(a)) != 0;
            if (small != big)
                report.violations.push_back(
                    {"covariance-xi", "sampled pair (" + a + ", " + p_big + ") disagrees"});
        }
    }
    std::sort(report.violations.begin(), report.violations.end());
    report.violations.erase(std::unique(report.violations.begin(), report.violations.end()),
                            report.violations.end());
    return report;
}

MorphismReport verify_sco(const ScoMorphism& mor) {
    MorphismReport report;
    verify_sco_part(mor.source, mor.target, mor.m, mor.l, mor.k, report.violations);
    std::sort(report.violations.begin(), report.violations.end());
    return report;
}

ScopMorphism lift(const ScoMorphism& mor, std::size_t cap) {
    const auto sco_report = verify_sco(mor);
    if (!sco_report.ok())
        raise(errc::covariance_violation,
              "SCO morphism fails verification: " + sco_report.violations.front().detail);

    ScopMorphism out;
    out.source = sco_to_scop(mor.source, cap);
    out.target = sco_to_scop(mor.target, cap);
    out.m = mor.m;
    out.l = mor.l;
    out.k = mor.k;

    // n(e, A) = (l(e), k[e](A)).
    for (const auto& [e, spec] : mor.source.experiments) {
        const auto& le = mor.l.at(e);
        const auto ke_it = mor.k.find(e);
        if (ke_it == mor.k.end())
            raise(errc::domain_mismatch, "no outcome bijection declared for '" + e + "'");
        std::set<OutcomeLabel> labels;
        for (const auto& [key, label] : spec.outcomes) labels.insert(label);
        std::vector<OutcomeLabel> ordered(labels.begin(), labels.end());
        if (ordered.size() >= 8 * sizeof(std::size_t) - 1)
            raise(errc::cap_exceeded, "experiment '" + e + "' has too many outcomes");
        const std::size_t count = std::size_t{1} << ordered.size();
        for (std::size_t mask = 0; mask < count; ++mask) {
            std::set<OutcomeLabel> subset, image;
            for (std::size_t bit = 0; bit < ordered.size(); ++bit) {
                if (!(mask & (std::size_t{1} << bit))) continue;
                subset.insert(ordered[bit]);
                const auto mapped_it = ke_it->second.find(ordered[bit]);
                if (mapped_it == ke_it->second.end())
                    raise(errc::domain_mismatch, "k[" + e + "] undefined on outcome '" +
                                                     ordered[bit].text() + "'");
                image.insert(mapped_it->second);
            }
            out.n[sco_property_id(e, subset)] = sco_property_id(le, image);
        }
    }
    return out;
}

} // namespace scop
