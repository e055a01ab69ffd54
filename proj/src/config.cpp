#include "yielon/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace yielon {

using nlohmann::json;

const char* to_string(Domain domain) {
    return domain == Domain::Sorting ? "sorting" : "gridworld";
}

std::vector<IslandConfig> default_islands(Domain domain) {
    std::vector<IslandConfig> islands;
    if (domain == Domain::Sorting) {
        const std::vector<AlgorithmId> rep{sorting::kCounting, sorting::kInsertion, sorting::kQuick};
        for (const auto& start : rep) {
            IslandConfig ic;
            ic.repertoire = rep;
            ic.start = start;
            islands.push_back(ic);
        }
    } else {
        const std::vector<AlgorithmId> rep = grid::all_learners();
        const std::vector<AlgorithmId> starts{
            grid::learner_id(grid::LearnerRule::QLearning, 0.1),
            grid::learner_id(grid::LearnerRule::Sarsa, 0.1),
            grid::learner_id(grid::LearnerRule::DoubleQ, 0.1),
            grid::learner_id(grid::LearnerRule::QLearning, 0.7),
        };
        for (const auto& start : starts) {
            IslandConfig ic;
            ic.repertoire = rep;
            ic.start = start;
            ic.world = grid::WorldSpec{};
            islands.push_back(ic);
        }
    }
    return islands;
}

ExperimentConfig default_config(Domain domain) {
    ExperimentConfig cfg;
    cfg.domain = domain;
    cfg.finalize();
    return cfg;
}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& why) {
    throw ConfigError(field + ": " + why);
}

void require_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    for (const auto& item : obj.items())
        if (!allowed.count(item.key()))
            fail(where.empty() ? item.key() : where + "." + item.key(), "unknown key");
}

bool algorithm_valid(Domain domain, const AlgorithmId& algo) {
    if (domain == Domain::Sorting)
        return algo == sorting::kQuick || algo == sorting::kInsertion || algo == sorting::kCounting;
    return grid::learner_spec(algo).has_value();
}

template <typename T>
T get_as(const json& obj, const std::string& where, const char* key, const T& fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        fail(where.empty() ? key : where + "." + key, "wrong type");
    }
}

YieldParams parse_yield(const json& obj) {
    require_keys(obj, "yield",
                 {"upsilon_max", "upsilon_min", "upsilon_initial", "window_size",
                  "saturation_top_up", "min_norm_credit", "epsilon", "sigma_tol", "g_island_gap"});
    YieldParams p;
    p.upsilon_max = get_as(obj, "yield", "upsilon_max", p.upsilon_max);
    p.upsilon_min = get_as(obj, "yield", "upsilon_min", p.upsilon_min);
    p.upsilon_initial = get_as(obj, "yield", "upsilon_initial", p.upsilon_initial);
    p.window_size = get_as(obj, "yield", "window_size", p.window_size);
    p.saturation_top_up = get_as(obj, "yield", "saturation_top_up", p.saturation_top_up);
    p.min_norm_credit = get_as(obj, "yield", "min_norm_credit", p.min_norm_credit);
    p.epsilon = get_as(obj, "yield", "epsilon", p.epsilon);
    p.sigma_tol = get_as(obj, "yield", "sigma_tol", p.sigma_tol);
    p.g_island_gap = get_as(obj, "yield", "g_island_gap", p.g_island_gap);
    return p;
}

IslandConfig parse_island(const json& obj, const std::string& where, Domain domain, int episodes) {
    require_keys(obj, where, {"repertoire", "start", "g_island", "phases", "world"});
    IslandConfig ic;
    if (obj.contains("repertoire")) {
        if (!obj.at("repertoire").is_array()) fail(where + ".repertoire", "must be an array");
        for (const auto& a : obj.at("repertoire")) {
            if (!a.is_string()) fail(where + ".repertoire", "entries must be strings");
            ic.repertoire.push_back(AlgorithmId{a.get<std::string>()});
        }
    }
    if (obj.contains("start")) ic.start = AlgorithmId{get_as<std::string>(obj, where, "start", "")};
    ic.g_island = get_as(obj, where, "g_island", false);
    if (obj.contains("phases")) {
        if (domain != Domain::Sorting) fail(where + ".phases", "only valid in the sorting domain");
        if (!obj.at("phases").is_array()) fail(where + ".phases", "must be an array");
        std::vector<sorting::Phase> phases;
        int cursor = 0;
        int index = 0;
        for (const auto& ph : obj.at("phases")) {
            const std::string pwhere = where + ".phases[" + std::to_string(index++) + "]";
            require_keys(ph, pwhere, {"kind", "episodes"});
            const auto kind = sorting::kind_from_string(get_as<std::string>(ph, pwhere, "kind", ""));
            if (!kind) fail(pwhere + ".kind", "must be RandL, RandS or AlmoS");
            const int span = get_as(ph, pwhere, "episodes", 0);
            if (span <= 0) fail(pwhere + ".episodes", "must be positive");
            phases.push_back({*kind, cursor, cursor + span});
            cursor += span;
        }
        if (phases.empty()) fail(where + ".phases", "must not be empty");
        if (cursor != episodes)
            fail(where + ".phases", "spans sum to " + std::to_string(cursor) + ", expected " +
                                        std::to_string(episodes));
        ic.phases = std::move(phases);
    }
    if (obj.contains("world")) {
        if (domain != Domain::Gridworld) fail(where + ".world", "only valid in the gridworld domain");
        const auto& w = obj.at("world");
        require_keys(w, where + ".world", {"width", "height", "obstacles"});
        grid::WorldSpec spec;
        spec.width = get_as(w, where + ".world", "width", spec.width);
        spec.height = get_as(w, where + ".world", "height", spec.height);
        spec.obstacles = get_as(w, where + ".world", "obstacles", spec.obstacles);
        if (spec.width < 3 || spec.height < 3) fail(where + ".world", "grid must be at least 3x3");
        if (spec.obstacles < 0) fail(where + ".world.obstacles", "must be nonnegative");
        ic.world = spec;
    }
    return ic;
}

} // namespace

void ExperimentConfig::finalize() {
    if (episodes < 0) fail("episodes", "must be nonnegative");
    try {
        yield.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("yield: ") + e.what());
    }
    regime.validate();

    if (islands.empty()) islands = default_islands(domain);

    if (!regime.use_g_island) {
        for (auto& ic : islands) ic.g_island = false;
    } else {
        int flagged = 0;
        for (const auto& ic : islands) flagged += ic.g_island ? 1 : 0;
        if (flagged == 0)
            islands[std::min<std::size_t>(1, islands.size() - 1)].g_island = true;
        else if (flagged > 1 && !allow_multiple_g)
            fail("islands", "more than one g_island; set allow_multiple_g to override");
    }

    for (std::size_t i = 0; i < islands.size(); ++i) {
        const std::string where = "islands[" + std::to_string(i) + "]";
        auto& ic = islands[i];
        if (ic.repertoire.empty()) fail(where + ".repertoire", "must not be empty");
        for (const auto& algo : ic.repertoire)
            if (!algorithm_valid(domain, algo))
                fail(where + ".repertoire", "unknown algorithm '" + algo.value + "' for domain " +
                                                to_string(domain));
        if (ic.start.value.empty()) ic.start = ic.repertoire.front();
        if (std::find(ic.repertoire.begin(), ic.repertoire.end(), ic.start) == ic.repertoire.end())
            fail(where + ".start", "'" + ic.start.value + "' is not in the repertoire");
        if (domain == Domain::Gridworld && !ic.world) ic.world = grid::WorldSpec{};
    }
}

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    require_keys(j, "",
                 {"domain", "episodes", "seed", "out_dir", "deterministic", "regime",
                  "allow_multiple_g", "yield", "islands"});

    ExperimentConfig cfg;
    if (j.contains("domain")) {
        const auto d = get_as<std::string>(j, "", "domain", "sorting");
        if (d == "sorting") cfg.domain = Domain::Sorting;
        else if (d == "gridworld") cfg.domain = Domain::Gridworld;
        else fail("domain", "must be 'sorting' or 'gridworld'");
    }
    cfg.episodes = get_as(j, "", "episodes", cfg.episodes);
    cfg.seed = get_as(j, "", "seed", cfg.seed);
    cfg.out_dir = get_as(j, "", "out_dir", cfg.out_dir);
    cfg.deterministic = get_as(j, "", "deterministic", cfg.deterministic);
    if (j.contains("regime")) {
        const auto name = get_as<std::string>(j, "", "regime", "");
        const auto regime = regime_from_string(name);
        if (!regime)
            fail("regime", "'" + name +
                               "' is not one of no_yielory_no_g, no_yielory_g, yielory_no_g, "
                               "yielory_g");
        cfg.regime = *regime;
    }
    cfg.allow_multiple_g = get_as(j, "", "allow_multiple_g", cfg.allow_multiple_g);
    if (j.contains("yield")) cfg.yield = parse_yield(j.at("yield"));
    if (j.contains("islands")) {
        if (!j.at("islands").is_array()) fail("islands", "must be an array");
        int index = 0;
        for (const auto& item : j.at("islands"))
            cfg.islands.push_back(parse_island(item, "islands[" + std::to_string(index++) + "]",
                                               cfg.domain, cfg.episodes));
    }
    cfg.finalize();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string dump_config(const ExperimentConfig& config) {
    json j;
    j["domain"] = to_string(config.domain);
    j["episodes"] = config.episodes;
    j["seed"] = config.seed;
    j["out_dir"] = config.out_dir;
    j["deterministic"] = config.deterministic;
    j["regime"] = to_string(config.regime);
    j["allow_multiple_g"] = config.allow_multiple_g;
    j["yield"] = {{"upsilon_max", config.yield.upsilon_max},
                  {"upsilon_min", config.yield.upsilon_min},
                  {"upsilon_initial", config.yield.upsilon_initial},
                  {"window_size", config.yield.window_size},
                  {"saturation_top_up", config.yield.saturation_top_up},
                  {"min_norm_credit", config.yield.min_norm_credit},
                  {"epsilon", config.yield.epsilon},
                  {"sigma_tol", config.yield.sigma_tol},
                  {"g_island_gap", config.yield.g_island_gap}};
    j["islands"] = json::array();
    for (const auto& ic : config.islands) {
        json island;
        island["repertoire"] = json::array();
        for (const auto& a : ic.repertoire) island["repertoire"].push_back(a.value);
        island["start"] = ic.start.value;
        island["g_island"] = ic.g_island;
        if (ic.phases) {
            island["phases"] = json::array();
            for (const auto& p : *ic.phases)
                island["phases"].push_back(
                    {{"kind", sorting::to_string(p.kind)}, {"episodes", p.end - p.begin}});
        }
        if (ic.world)
            island["world"] = {{"width", ic.world->width},
                               {"height", ic.world->height},
                               {"obstacles", ic.world->obstacles}};
        j["islands"].push_back(island);
    }
    return j.dump(2) + "\n";
}

} // namespace yielon
