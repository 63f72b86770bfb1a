#include "scop/io.hpp"

#include "scop/error.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace scop {

namespace {

using json = nlohmann::ordered_json;

json prob_to_json(const SubsetProb& prob) {
    json out = json::array();
    for (const auto& iv : prob.intervals())
        out.push_back({rational_to_string(iv.lo), rational_to_string(iv.hi)});
    return out;
}

SubsetProb prob_from_json(const json& j) {
    if (!j.is_array() || j.empty()) raise(errc::parse_error, "prob must be a nonempty array");
    std::vector<SubsetProb::Interval> raw;
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2)
            raise(errc::parse_error, "prob entries are [lo, hi] pairs");
        raw.push_back({rational_from_string(pair[0].get<std::string>()),
                       rational_from_string(pair[1].get<std::string>())});
    }
    return SubsetProb(std::move(raw));
}

json label_fields(const OutcomeLabel& label) {
    json out = json::object();
    if (label.is_subset())
        out["labelSubset"] = label.elems();
    else
        out["label"] = label.name();
    return out;
}

OutcomeLabel label_from_json(const json& j) {
    if (j.contains("labelSubset")) {
        std::set<std::string> elems;
        for (const auto& e : j.at("labelSubset")) elems.insert(e.get<std::string>());
        return OutcomeLabel::subset(std::move(elems));
    }
    if (j.contains("label")) return OutcomeLabel::plain(j.at("label").get<std::string>());
    raise(errc::parse_error, "outcome entry needs label or labelSubset");
}

json system_to_json(const ScopSystem& sys) {
    json out = json::object();
    out["states"] = json::array();
    for (const auto& p : sys.states)
        out["states"].push_back(
            {{"id", p}, {"destruction", sys.destruction_state && *sys.destruction_state == p}});
    out["contexts"] = sys.contexts;
    out["properties"] = sys.properties;

    json xi = json::object();
    for (const auto& p : sys.states) xi[p] = sys.xi_map.count(p) ? sys.xi_map.at(p) : std::set<PropertyId>{};
    out["xi"] = std::move(xi);

    json mu = json::array();
    for (const auto& [key, value] : sys.mu_table) {
        if (value.is_null()) continue; // canonical form drops explicit zeros
        mu.push_back({{"f", key.f}, {"q", key.q}, {"e", key.e}, {"p", key.p},
                      {"prob", prob_to_json(value)}});
    }
    out["mu"] = std::move(mu);

    if (!sys.experiments.empty()) {
        json experiments = json::object();
        for (const auto& [ctx, spec] : sys.experiments) {
            json spec_json = json::object();
            spec_json["context"] = ctx;
            spec_json["spectrum"] = spec.spectrum ? json(*spec.spectrum) : json(nullptr);
            json outcomes = json::array();
            for (const auto& [key, label] : spec.outcomes) {
                json entry = {{"f", key.f}, {"q", key.q}, {"p", key.p}};
                entry.update(label_fields(label));
                outcomes.push_back(std::move(entry));
            }
            spec_json["outcomes"] = std::move(outcomes);
            experiments[ctx] = std::move(spec_json);
        }
        out["experiments"] = std::move(experiments);
    }

    if (!sys.context_products.empty() || !sys.state_products.empty()) {
        json products = json::object();
        if (!sys.context_products.empty()) {
            json contexts = json::object();
            for (const auto& [id, info] : sys.context_products) {
                json entry = {{"factors", info.factors}};
                if (info.weights) {
                    json weights = json::array();
                    for (const auto& w : *info.weights) weights.push_back(rational_to_string(w));
                    entry["weights"] = std::move(weights);
                }
                contexts[id] = std::move(entry);
            }
            products["contexts"] = std::move(contexts);
        }
        if (!sys.state_products.empty()) {
            json states = json::object();
            for (const auto& [id, info] : sys.state_products)
                states[id] = {{"factors", info.factors}};
            products["states"] = std::move(states);
        }
        out["products"] = std::move(products);
    }
    return out;
}

ScopSystem system_from_json(const json& in) {
    ScopSystem sys;
    if (!in.is_object()) raise(errc::parse_error, "system file must be a JSON object");
    for (const auto& key : {"states", "contexts", "properties", "mu"})
        if (in.contains(key) && !in.at(key).is_array())
            raise(errc::parse_error, std::string(key) + " must be an array");
    for (const auto& key : {"xi", "experiments", "products"})
        if (in.contains(key) && !in.at(key).is_object())
            raise(errc::parse_error, std::string(key) + " must be an object");

    for (const auto& entry : in.value("states", json::array())) {
        if (entry.is_string()) {
            sys.states.push_back(entry.get<std::string>());
        } else {
            sys.states.push_back(entry.at("id").get<std::string>());
            if (entry.value("destruction", false)) {
                if (sys.destruction_state)
                    raise(errc::parse_error, "more than one destruction state");
                sys.destruction_state = sys.states.back();
            }
        }
    }
    for (const auto& e : in.value("contexts", json::array()))
        sys.contexts.push_back(e.get<std::string>());
    for (const auto& a : in.value("properties", json::array()))
        sys.properties.push_back(a.get<std::string>());

    for (const auto& p : sys.states) sys.xi_map[p] = {};
    if (in.contains("xi")) {
        for (const auto& [state, props] : in.at("xi").items()) {
            auto& entry = sys.xi_map[state];
            for (const auto& a : props) entry.insert(a.get<std::string>());
        }
    }

    for (const auto& entry : in.value("mu", json::array())) {
        const auto prob = prob_from_json(entry.at("prob"));
        if (prob.is_null()) continue;
        sys.mu_table.emplace(MuKey{entry.at("f").get<std::string>(),
                                   entry.at("q").get<std::string>(),
                                   entry.at("e").get<std::string>(),
                                   entry.at("p").get<std::string>()},
                             prob);
    }

    if (in.contains("experiments")) {
        for (const auto& [ctx, spec_json] : in.at("experiments").items()) {
            ExperimentSpec spec;
            spec.context = spec_json.value("context", ctx);
            if (spec_json.contains("spectrum") && !spec_json.at("spectrum").is_null()) {
                std::set<std::string> spectrum;
                for (const auto& s : spec_json.at("spectrum")) spectrum.insert(s.get<std::string>());
                spec.spectrum = std::move(spectrum);
            }
            for (const auto& entry : spec_json.value("outcomes", json::array()))
                spec.outcomes.emplace(
                    ExperimentSpec::TransitionKey{entry.at("f").get<std::string>(),
                                                  entry.at("q").get<std::string>(),
                                                  entry.at("p").get<std::string>()},
                    label_from_json(entry));
            sys.experiments[ctx] = std::move(spec);
        }
    }

    if (in.contains("products")) {
        const auto& products = in.at("products");
        if (products.contains("contexts")) {
            for (const auto& [id, entry] : products.at("contexts").items()) {
                ProductContextInfo info;
                for (const auto& f : entry.at("factors")) info.factors.push_back(f.get<std::string>());
                if (entry.contains("weights")) {
                    std::vector<Rational> weights;
                    for (const auto& w : entry.at("weights"))
                        weights.push_back(rational_from_string(w.get<std::string>()));
                    info.weights = std::move(weights);
                }
                sys.context_products[id] = std::move(info);
            }
        }
        if (products.contains("states")) {
            for (const auto& [id, entry] : products.at("states").items()) {
                ProductStateInfo info;
                for (const auto& f : entry.at("factors")) info.factors.push_back(f.get<std::string>());
                sys.state_products[id] = std::move(info);
            }
        }
    }
    return sys;
}

json parse_text(const std::string& text) {
    json parsed = json::parse(text, nullptr, false);
    if (parsed.is_discarded()) raise(errc::parse_error, "malformed JSON");
    return parsed;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(errc::parse_error, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::map<std::string, std::string> string_map(const json& j) {
    std::map<std::string, std::string> out;
    for (const auto& [key, value] : j.items()) out[key] = value.get<std::string>();
    return out;
}

// Resolves k entries (keyed by canonical outcome text) against the
// declared labels of the two experiments.
std::map<OutcomeLabel, OutcomeLabel>
resolve_outcome_map(const std::map<std::string, std::string>& text_map,
                    const ExperimentSpec& source_spec, const ExperimentSpec& target_spec) {
    std::map<std::string, OutcomeLabel> source_labels, target_labels;
    for (const auto& [key, label] : source_spec.outcomes) source_labels.emplace(label.text(), label);
    for (const auto& [key, label] : target_spec.outcomes) target_labels.emplace(label.text(), label);
    std::map<OutcomeLabel, OutcomeLabel> out;
    for (const auto& [from, to] : text_map) {
        const auto s = source_labels.find(from);
        if (s == source_labels.end())
            raise(errc::parse_error, "k maps unknown outcome '" + from + "'");
        const auto t = target_labels.find(to);
        if (t == target_labels.end())
            raise(errc::parse_error, "k targets unknown outcome '" + to + "'");
        out.emplace(s->second, t->second);
    }
    return out;
}

struct MorphismParts {
    ScopSystem source, target;
    json body;
};

MorphismParts load_morphism_parts(const std::string& path) {
    const auto body = parse_text(read_file(path));
    const auto dir = std::filesystem::path(path).parent_path();
    const auto resolve = [&](const std::string& rel) {
        const std::filesystem::path p(rel);
        return p.is_absolute() ? p.string() : (dir / p).string();
    };
    MorphismParts parts;
    parts.source = load_system(resolve(body.at("source").get<std::string>()));
    parts.target = load_system(resolve(body.at("target").get<std::string>()));
    parts.body = body;
    return parts;
}

std::map<ContextId, std::map<OutcomeLabel, OutcomeLabel>>
resolve_k(const json& body, const std::map<ContextId, ExperimentSpec>& source_experiments,
          const std::map<ContextId, ExperimentSpec>& target_experiments,
          const std::map<std::string, std::string>& l) {
    std::map<ContextId, std::map<OutcomeLabel, OutcomeLabel>> k;
    if (!body.contains("k")) return k;
    for (const auto& [ctx, mapping] : body.at("k").items()) {
        const auto source_spec = source_experiments.find(ctx);
        if (source_spec == source_experiments.end())
            raise(errc::parse_error, "k declared for non-experiment '" + ctx + "'");
        const auto l_it = l.find(ctx);
        if (l_it == l.end()) raise(errc::parse_error, "k declared for context outside l: '" + ctx + "'");
        const auto target_spec = target_experiments.find(l_it->second);
        if (target_spec == target_experiments.end())
            raise(errc::parse_error, "l(" + ctx + ") is not an experiment");
        k[ctx] = resolve_outcome_map(string_map(mapping), source_spec->second, target_spec->second);
    }
    return k;
}

} // namespace

std::string system_to_text(const ScopSystem& sys, bool pretty) {
    return system_to_json(sys).dump(pretty ? 2 : -1) + "\n";
}

ScopSystem system_from_text(const std::string& text) {
    try {
        return system_from_json(parse_text(text));
    } catch (const Error& err) {
        if (err.code() == errc::parse_error) throw;
        raise(errc::parse_error, std::string("bad system file: ") + err.what());
    } catch (const nlohmann::json::exception& err) {
        raise(errc::parse_error, std::string("bad system file: ") + err.what());
    }
}

ScopSystem load_system(const std::string& path) { return system_from_text(read_file(path)); }

void save_system(const ScopSystem& sys, const std::string& path, bool pretty) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(errc::parse_error, "cannot write '" + path + "'");
    out << system_to_text(sys, pretty);
}

ScopMorphism load_morphism(const std::string& path) {
    auto parts = load_morphism_parts(path);
    ScopMorphism mor;
    mor.m = string_map(parts.body.value("m", json::object()));
    mor.l = string_map(parts.body.value("l", json::object()));
    mor.n = string_map(parts.body.value("n", json::object()));
    mor.k = resolve_k(parts.body, parts.source.experiments, parts.target.experiments, mor.l);
    mor.source = std::move(parts.source);
    mor.target = std::move(parts.target);
    return mor;
}

ScoMorphism load_sco_morphism(const std::string& path) {
    auto parts = load_morphism_parts(path);
    ScoMorphism mor;
    mor.m = string_map(parts.body.value("m", json::object()));
    mor.l = string_map(parts.body.value("l", json::object()));
    mor.k = resolve_k(parts.body, parts.source.experiments, parts.target.experiments, mor.l);
    mor.source = parts.source.sco_part();
    mor.target = parts.target.sco_part();
    return mor;
}

} // namespace scop
