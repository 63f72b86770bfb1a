#include "scop/preorder.hpp"

#include "scop/error.hpp"

#include <algorithm>

namespace scop {

namespace {

bool subset_of(const std::set<std::string>& a, const std::set<std::string>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace

bool property_implies(const ScopSystem& sys, const PropertyId& a, const PropertyId& b) {
    return subset_of(sys.kappa(a), sys.kappa(b));
}

bool state_implies(const ScopSystem& sys, const StateId& p, const StateId& q) {
    sys.require_state(p);
    return subset_of(sys.xi(q), sys.xi(p));
}

PreorderView PreorderView::states(const ScopSystem& sys) {
    PreorderView view;
    view.carrier_ = Carrier::states;
    view.elements_ = sys.states;
    std::sort(view.elements_.begin(), view.elements_.end());
    for (std::size_t i = 0; i < view.elements_.size(); ++i) view.index_[view.elements_[i]] = i;
    const std::size_t n = view.elements_.size();
    view.leq_.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            view.leq_[i][j] = subset_of(sys.xi(view.elements_[j]), sys.xi(view.elements_[i]));
    return view;
}

PreorderView PreorderView::properties(const ScopSystem& sys) {
    PreorderView view;
    view.carrier_ = Carrier::properties;
    view.elements_ = sys.properties;
    std::sort(view.elements_.begin(), view.elements_.end());
    for (std::size_t i = 0; i < view.elements_.size(); ++i) view.index_[view.elements_[i]] = i;
    const std::size_t n = view.elements_.size();
    std::vector<std::set<StateId>> kappas(n);
    for (std::size_t i = 0; i < n; ++i) kappas[i] = sys.kappa(view.elements_[i]);
    view.leq_.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) view.leq_[i][j] = subset_of(kappas[i], kappas[j]);
    return view;
}

std::size_t PreorderView::at(const std::string& x) const {
    const auto it = index_.find(x);
    if (it == index_.end()) raise(errc::unknown_id, "'" + x + "' is not in the carrier");
    return it->second;
}

bool PreorderView::implies(const std::string& x, const std::string& y) const {
    return leq_[at(x)][at(y)];
}

bool PreorderView::equivalent(const std::string& x, const std::string& y) const {
    const std::size_t i = at(x), j = at(y);
    return leq_[i][j] && leq_[j][i];
}

std::vector<std::vector<std::string>> PreorderView::equivalence_classes() const {
    std::vector<std::vector<std::string>> classes;
    std::vector<bool> done(elements_.size(), false);
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (done[i]) continue;
        std::vector<std::string> cls;
        for (std::size_t j = i; j < elements_.size(); ++j) {
            if (!done[j] && leq_[i][j] && leq_[j][i]) {
                cls.push_back(elements_[j]);
                done[j] = true;
            }
        }
        classes.push_back(std::move(cls)); // elements_ sorted, so classes are too
    }
    return classes;
}

std::vector<std::string> PreorderView::infimum_set(const std::vector<std::string>& subset) const {
    std::vector<std::size_t> members;
    members.reserve(subset.size());
    for (const auto& x : subset) members.push_back(at(x));
    std::vector<std::size_t> lower_bounds;
    for (std::size_t g = 0; g < elements_.size(); ++g) {
        bool below_all = true;
        for (const auto m : members)
            if (!leq_[g][m]) below_all = false;
        if (below_all) lower_bounds.push_back(g);
    }
    std::vector<std::string> out;
    for (const auto g : lower_bounds) {
        bool greatest = true;
        for (const auto h : lower_bounds)
            if (!leq_[h][g]) greatest = false;
        if (greatest) out.push_back(elements_[g]);
    }
    return out;
}

std::vector<std::string> PreorderView::supremum_set(const std::vector<std::string>& subset) const {
    std::vector<std::size_t> members;
    members.reserve(subset.size());
    for (const auto& x : subset) members.push_back(at(x));
    std::vector<std::size_t> upper_bounds;
    for (std::size_t g = 0; g < elements_.size(); ++g) {
        bool above_all = true;
        for (const auto m : members)
            if (!leq_[m][g]) above_all = false;
        if (above_all) upper_bounds.push_back(g);
    }
    std::vector<std::string> out;
    for (const auto g : upper_bounds) {
        bool least = true;
        for (const auto h : upper_bounds)
            if (!leq_[g][h]) least = false;
        if (least) out.push_back(elements_[g]);
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> PreorderView::hasse_edges() const {
    const auto classes = equivalence_classes();
    std::vector<std::pair<std::string, std::string>> edges;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        for (std::size_t j = 0; j < classes.size(); ++j) {
            if (i == j) continue;
            const auto& a = classes[i][0];
            const auto& b = classes[j][0];
            if (!implies(a, b) || equivalent(a, b)) continue;
            bool covered = true; // no class strictly between
            for (std::size_t k = 0; k < classes.size() && covered; ++k) {
                if (k == i || k == j) continue;
                const auto& c = classes[k][0];
                if (implies(a, c) && !equivalent(a, c) && implies(c, b) && !equivalent(c, b))
                    covered = false;
            }
            if (covered) edges.emplace_back(a, b);
        }
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

std::set<PropertyId> meet_properties(const ScopSystem& sys, const std::set<PropertyId>& props) {
    std::set<StateId> target(sys.states.begin(), sys.states.end()); // empty meet
    for (const auto& a : props) {
        const auto k = sys.kappa(a);
        std::set<StateId> next;
        std::set_intersection(target.begin(), target.end(), k.begin(), k.end(),
                              std::inserter(next, next.begin()));
        target = std::move(next);
    }
    std::set<PropertyId> out;
    for (const auto& c : sys.properties)
        if (sys.kappa(c) == target) out.insert(c);
    return out;
}

std::set<StateId> join_states(const ScopSystem& sys, const std::set<StateId>& states) {
    std::set<PropertyId> target(sys.properties.begin(), sys.properties.end());
    for (const auto& p : states) {
        const auto& x = sys.xi(p);
        std::set<PropertyId> next;
        std::set_intersection(target.begin(), target.end(), x.begin(), x.end(),
                              std::inserter(next, next.begin()));
        target = std::move(next);
    }
    std::set<StateId> out;
    for (const auto& s : sys.states)
        if (sys.xi(s) == target) out.insert(s);
    return out;
}

namespace {

CompletenessReport family_closure_report(const std::vector<std::string>& carrier,
                                         const std::vector<std::set<std::string>>& family,
                                         const std::set<std::string>& full) {
    CompletenessReport report;
    std::set<std::set<std::string>> present(family.begin(), family.end());
    if (!present.count(full)) report.missing.push_back({});
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            std::set<std::string> inter;
            std::set_intersection(family[i].begin(), family[i].end(), family[j].begin(),
                                  family[j].end(), std::inserter(inter, inter.begin()));
            if (!present.count(inter)) report.missing.push_back({carrier[i], carrier[j]});
        }
    }
    std::sort(report.missing.begin(), report.missing.end());
    report.missing.erase(std::unique(report.missing.begin(), report.missing.end()),
                         report.missing.end());
    report.complete = report.missing.empty();
    return report;
}

} // namespace

CompletenessReport check_property_completeness(const ScopSystem& sys) {
    std::vector<std::string> carrier = sys.properties;
    std::sort(carrier.begin(), carrier.end());
    std::vector<std::set<std::string>> family;
    family.reserve(carrier.size());
    for (const auto& a : carrier) family.push_back(sys.kappa(a));
    return family_closure_report(carrier, family,
                                 std::set<std::string>(sys.states.begin(), sys.states.end()));
}

CompletenessReport check_state_completeness(const ScopSystem& sys) {
    std::vector<std::string> carrier = sys.states;
    std::sort(carrier.begin(), carrier.end());
    std::vector<std::set<std::string>> family;
    family.reserve(carrier.size());
    for (const auto& p : carrier) family.push_back(sys.xi(p));
    return family_closure_report(carrier, family,
                                 std::set<std::string>(sys.properties.begin(), sys.properties.end()));
}

namespace {

void require_complete(const ScopSystem& sys) {
    if (!check_property_completeness(sys).complete || !check_state_completeness(sys).complete)
        raise(errc::not_complete, "system is not property- and state-complete");
}

} // namespace

PropertyId property_state(const ScopSystem& sys, const StateId& p) {
    require_complete(sys);
    const auto meets = meet_properties(sys, sys.xi(p));
    if (meets.empty()) raise(errc::not_complete, "no meet property for xi(" + p + ")");
    return *meets.begin();
}

StateId state_property(const ScopSystem& sys, const PropertyId& a) {
    require_complete(sys);
    const auto joins = join_states(sys, sys.kappa(a));
    if (joins.empty()) raise(errc::not_complete, "no join state for kappa(" + a + ")");
    return *joins.begin();
}

ProperClassification classify_proper(const ScopSystem& sys) {
    ProperClassification out;
    for (const auto& p : sys.states)
        (sys.xi(p).empty() ? out.improper_states : out.proper_states).insert(p);
    for (const auto& a : sys.properties)
        (sys.kappa(a).empty() ? out.improper_properties : out.proper_properties).insert(a);
    return out;
}

} // namespace scop
