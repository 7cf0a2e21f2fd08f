#include "sspare/config_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace sspare {

namespace {

using Json = nlohmann::ordered_json;

// Tracks which keys a parser consumed so leftovers can be reported by path.
class ObjectReader {
public:
    ObjectReader(const Json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj.is_object()) throw ConfigError(path_ + ": expected an object");
    }

    bool has(const char* key) const { return obj_.contains(key); }

    const Json* get(const char* key) {
        seen_.insert(key);
        auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    double number(const char* key, double fallback) {
        const Json* v = get(key);
        if (!v) return fallback;
        if (!v->is_number()) throw ConfigError(path_ + key + ": expected a number");
        return v->get<double>();
    }

    int integer(const char* key, int fallback) {
        const Json* v = get(key);
        if (!v) return fallback;
        if (!v->is_number_integer()) throw ConfigError(path_ + key + ": expected an integer");
        return v->get<int>();
    }

    bool boolean(const char* key, bool fallback) {
        const Json* v = get(key);
        if (!v) return fallback;
        if (!v->is_boolean()) throw ConfigError(path_ + key + ": expected a boolean");
        return v->get<bool>();
    }

    std::string text(const char* key, const std::string& fallback) {
        const Json* v = get(key);
        if (!v) return fallback;
        if (!v->is_string()) throw ConfigError(path_ + key + ": expected a string");
        return v->get<std::string>();
    }

    void finish() const {
        for (auto it = obj_.begin(); it != obj_.end(); ++it) {
            if (!seen_.count(it.key())) {
                throw ConfigError("unknown key: " + path_ + it.key());
            }
        }
    }

    const std::string& path() const { return path_; }

private:
    const Json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

ModuleSpec parse_module(const Json& j, const std::string& path) {
    ObjectReader r(j, path);
    ModuleSpec m;
    m.edge_length_m = r.number("edge_length_m", m.edge_length_m);
    m.thickness_m = r.number("thickness_m", m.thickness_m);
    m.stack_pitch_m = r.number("stack_pitch_m", m.stack_pitch_m);
    m.panel_area_m2 = r.number("panel_area_m2", m.panel_area_m2);
    m.efficiency = r.number("efficiency", m.efficiency);
    m.irradiance_w_m2 = r.number("irradiance_w_m2", m.irradiance_w_m2);
    m.degradation_rate_per_year = r.number("degradation_rate_per_year", m.degradation_rate_per_year);
    m.structure_mass_kg = r.number("structure_mass_kg", m.structure_mass_kg);
    m.battery_mass_kg = r.number("battery_mass_kg", m.battery_mass_kg);
    m.other_mass_kg = r.number("other_mass_kg", m.other_mass_kg);
    m.cell_count = r.integer("cell_count", m.cell_count);
    m.cell_cost_total_usd = r.number("cell_cost_total_usd", m.cell_cost_total_usd);
    m.structure_cost_usd = r.number("structure_cost_usd", m.structure_cost_usd);
    m.battery_electronics_cost_usd =
        r.number("battery_electronics_cost_usd", m.battery_electronics_cost_usd);
    m.battery_capacity_wh = r.number("battery_capacity_wh", m.battery_capacity_wh);
    r.finish();
    return m;
}

HazardModel parse_hazard(const Json& j, const std::string& path) {
    ObjectReader r(j, path);
    HazardModel h = HazardModel::geo_default();
    const std::string preset = r.text("preset", "geo_default");
    if (preset == "geo_default") {
        h = HazardModel::geo_default();
    } else if (preset == "leo_default") {
        h = HazardModel::leo_default();
    } else {
        throw ConfigError(path + "preset: unknown preset '" + preset + "'");
    }

    if (const Json* subs = r.get("subsystems")) {
        ObjectReader rs(*subs, path + "subsystems.");
        for (int i = 0; i < kSubsystemCount; ++i) {
            const auto s = static_cast<Subsystem>(i);
            if (const Json* sub = rs.get(to_string(s))) {
                ObjectReader rr(*sub, path + "subsystems." + to_string(s) + ".");
                auto& entry = h.at(s);
                entry.enabled = rr.boolean("enabled", entry.enabled);
                entry.shape = rr.number("shape", entry.shape);
                entry.scale_years = rr.number("scale_years", entry.scale_years);
                rr.finish();
            }
        }
        rs.finish();
    }
    if (const Json* weights = r.get("power_mode_weights")) {
        ObjectReader rw(*weights, path + "power_mode_weights.");
        h.power_mode_weights[0] = rw.number("solar_array", h.power_mode_weights[0]);
        h.power_mode_weights[1] = rw.number("distribution", h.power_mode_weights[1]);
        h.power_mode_weights[2] = rw.number("battery", h.power_mode_weights[2]);
        rw.finish();
    }
    if (const Json* infant = r.get("infant")) {
        ObjectReader ri(*infant, path + "infant.");
        h.infant.enabled = ri.boolean("enabled", h.infant.enabled);
        h.infant.shape = ri.number("shape", h.infant.shape);
        h.infant.scale_years = ri.number("scale_years", h.infant.scale_years);
        ri.finish();
    }
    r.finish();
    return h;
}

Architecture parse_architecture(const Json& j, const std::string& path) {
    ObjectReader r(j, path);
    Architecture a;
    const std::string kind = r.text("kind", "traditional");
    if (kind == "traditional") {
        a.kind = ArchitectureKind::Traditional;
    } else if (kind == "servicer_extended") {
        a.kind = ArchitectureKind::ServicerExtended;
    } else if (kind == "sspare") {
        a.kind = ArchitectureKind::Sspare;
    } else {
        throw ConfigError(path + "kind: unknown architecture '" + kind + "'");
    }
    a.annual_cost_usd = r.number("annual_cost_usd", a.annual_cost_usd);
    a.extension_years = r.number("extension_years", a.extension_years);
    a.service_epoch_years = r.number("service_epoch_years", a.service_epoch_years);
    a.n_modules = r.integer("n_modules", a.n_modules);
    a.n_spares = r.integer("n_spares", a.n_spares);
    if (const Json* rs = r.get("resupply_schedule")) {
        if (!rs->is_array()) throw ConfigError(path + "resupply_schedule: expected an array");
        for (std::size_t i = 0; i < rs->size(); ++i) {
            std::ostringstream op;
            op << path << "resupply_schedule[" << i << "].";
            ObjectReader re((*rs)[i], op.str());
            ResupplyEntry entry;
            entry.year = re.number("year", 0.0);
            entry.module_count = re.integer("module_count", 0);
            re.finish();
            a.resupply_schedule.push_back(entry);
        }
    }
    r.finish();
    return a;
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
    Json root;
    try {
        root = Json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("scenario parse error: ") + e.what());
    }

    ObjectReader r(root, "");
    Scenario s;
    if (const Json* arch = r.get("architecture")) {
        s.architecture = parse_architecture(*arch, "architecture.");
    }
    s.bus_demand_w = r.number("bus_demand_w", s.bus_demand_w);
    s.mission_duration_years = r.number("mission_duration_years", s.mission_duration_years);

    if (const Json* hb = r.get("heartbeat")) {
        ObjectReader rh(*hb, "heartbeat.");
        s.heartbeat.interval_s = rh.number("interval_s", s.heartbeat.interval_s);
        s.heartbeat.miss_threshold = rh.integer("miss_threshold", s.heartbeat.miss_threshold);
        s.heartbeat.drop_probability = rh.number("drop_probability", s.heartbeat.drop_probability);
        rh.finish();
    }
    if (const Json* module = r.get("module")) s.module = parse_module(*module, "module.");
    if (const Json* hazard = r.get("hazard")) s.hazard = parse_hazard(*hazard, "hazard.");

    if (const Json* dims = r.get("satellite_dims_m")) {
        if (!dims->is_array() || dims->size() != 3) {
            throw ConfigError("satellite_dims_m: expected [length, width, height]");
        }
        for (int i = 0; i < 3; ++i) {
            if (!(*dims)[i].is_number()) throw ConfigError("satellite_dims_m: expected numbers");
            s.satellite_dims_m[i] = (*dims)[i].get<double>();
        }
    }
    s.base_module_mass_kg = r.number("base_module_mass_kg", s.base_module_mass_kg);
    s.base_module_cost_usd = r.number("base_module_cost_usd", s.base_module_cost_usd);

    if (const Json* sim = r.get("sim")) {
        ObjectReader rs(*sim, "sim.");
        auto& t = s.sim;
        t.move_duration_s = rs.number("move_duration_s", t.move_duration_s);
        t.unloader_phase_duration_s =
            rs.number("unloader_phase_duration_s", t.unloader_phase_duration_s);
        t.rod_overtravel_m = rs.number("rod_overtravel_m", t.rod_overtravel_m);
        t.rod_half_span_m = rs.number("rod_half_span_m", t.rod_half_span_m);
        t.unloader_rod_cost_usd = rs.number("unloader_rod_cost_usd", t.unloader_rod_cost_usd);
        t.servicer_added_mass_kg = rs.number("servicer_added_mass_kg", t.servicer_added_mass_kg);
        t.open_circuit_fraction = rs.number("open_circuit_fraction", t.open_circuit_fraction);
        t.nonresponsive_fraction = rs.number("nonresponsive_fraction", t.nonresponsive_fraction);
        t.battery_temp_min_k = rs.number("battery_temp_min_k", t.battery_temp_min_k);
        t.battery_temp_max_k = rs.number("battery_temp_max_k", t.battery_temp_max_k);
        rs.finish();
    }
    r.finish();
    return validate_scenario(s);
}

std::string serialize_scenario(const Scenario& s) {
    Json root;

    Json arch;
    arch["kind"] = to_string(s.architecture.kind);
    switch (s.architecture.kind) {
        case ArchitectureKind::Traditional:
            break;
        case ArchitectureKind::ServicerExtended:
            arch["annual_cost_usd"] = s.architecture.annual_cost_usd;
            arch["extension_years"] = s.architecture.extension_years;
            arch["service_epoch_years"] = s.architecture.service_epoch_years;
            break;
        case ArchitectureKind::Sspare: {
            arch["n_modules"] = s.architecture.n_modules;
            arch["n_spares"] = s.architecture.n_spares;
            Json rs = Json::array();
            for (const auto& e : s.architecture.resupply_schedule) {
                rs.push_back({{"year", e.year}, {"module_count", e.module_count}});
            }
            arch["resupply_schedule"] = std::move(rs);
            break;
        }
    }
    root["architecture"] = std::move(arch);
    root["bus_demand_w"] = s.bus_demand_w;
    root["mission_duration_years"] = s.mission_duration_years;
    root["heartbeat"] = {{"interval_s", s.heartbeat.interval_s},
                         {"miss_threshold", s.heartbeat.miss_threshold},
                         {"drop_probability", s.heartbeat.drop_probability}};

    const ModuleSpec& m = s.module;
    root["module"] = {{"edge_length_m", m.edge_length_m},
                      {"thickness_m", m.thickness_m},
                      {"stack_pitch_m", m.stack_pitch_m},
                      {"panel_area_m2", m.panel_area_m2},
                      {"efficiency", m.efficiency},
                      {"irradiance_w_m2", m.irradiance_w_m2},
                      {"degradation_rate_per_year", m.degradation_rate_per_year},
                      {"structure_mass_kg", m.structure_mass_kg},
                      {"battery_mass_kg", m.battery_mass_kg},
                      {"other_mass_kg", m.other_mass_kg},
                      {"cell_count", m.cell_count},
                      {"cell_cost_total_usd", m.cell_cost_total_usd},
                      {"structure_cost_usd", m.structure_cost_usd},
                      {"battery_electronics_cost_usd", m.battery_electronics_cost_usd},
                      {"battery_capacity_wh", m.battery_capacity_wh}};

    Json subs;
    for (int i = 0; i < kSubsystemCount; ++i) {
        const auto& sub = s.hazard.subsystems[i];
        subs[to_string(static_cast<Subsystem>(i))] = {{"enabled", sub.enabled},
                                                      {"shape", sub.shape},
                                                      {"scale_years", sub.scale_years}};
    }
    root["hazard"] = {{"subsystems", std::move(subs)},
                      {"power_mode_weights",
                       {{"solar_array", s.hazard.power_mode_weights[0]},
                        {"distribution", s.hazard.power_mode_weights[1]},
                        {"battery", s.hazard.power_mode_weights[2]}}},
                      {"infant",
                       {{"enabled", s.hazard.infant.enabled},
                        {"shape", s.hazard.infant.shape},
                        {"scale_years", s.hazard.infant.scale_years}}}};

    root["satellite_dims_m"] = {s.satellite_dims_m[0], s.satellite_dims_m[1],
                                s.satellite_dims_m[2]};
    root["base_module_mass_kg"] = s.base_module_mass_kg;
    root["base_module_cost_usd"] = s.base_module_cost_usd;

    const SimTuning& t = s.sim;
    root["sim"] = {{"move_duration_s", t.move_duration_s},
                   {"unloader_phase_duration_s", t.unloader_phase_duration_s},
                   {"rod_overtravel_m", t.rod_overtravel_m},
                   {"rod_half_span_m", t.rod_half_span_m},
                   {"unloader_rod_cost_usd", t.unloader_rod_cost_usd},
                   {"servicer_added_mass_kg", t.servicer_added_mass_kg},
                   {"open_circuit_fraction", t.open_circuit_fraction},
                   {"nonresponsive_fraction", t.nonresponsive_fraction},
                   {"battery_temp_min_k", t.battery_temp_min_k},
                   {"battery_temp_max_k", t.battery_temp_max_k}};

    return root.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::ostringstream oss;
    oss << in.rdbuf();
    return oss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << content;
}

Scenario load_scenario_file(const std::string& path) {
    try {
        return parse_scenario(read_text_file(path));
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

}  // namespace sspare
