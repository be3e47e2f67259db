// Copyright 2026 The pushgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "pushgate/config.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <set>
#include <sstream>

#include "pushgate/errors.hpp"
#include "pushgate/statics.hpp"

namespace pushgate {

namespace {

using json = nlohmann::json;
constexpr double kPi = std::numbers::pi;
const char* kModule = "config";

template <class T>
const char* type_name()
{
    if constexpr (std::is_same_v<T, bool>) return "boolean";
    else if constexpr (std::is_integral_v<T>) return "integer";
    else if constexpr (std::is_floating_point_v<T>) return "number";
    else if constexpr (std::is_same_v<T, std::string>) return "string";
    else return "array";
}

// Reads one JSON object, remembers which keys were consumed and records
// type errors and leftovers against the dotted path.
class Block {
public:
    Block(const json& j, std::string path, std::vector<std::string>& errors)
        : j_(j), path_(std::move(path)), errors_(errors)
    {
    }

    std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    bool has(const std::string& key)
    {
        seen_.insert(key);
        return j_.contains(key);
    }

    template <class T>
    void get(const std::string& key, T& out)
    {
        if (!has(key)) return;
        const json& v = j_.at(key);
        bool ok;
        if constexpr (std::is_same_v<T, bool>) ok = v.is_boolean();
        else if constexpr (std::is_integral_v<T>) ok = v.is_number_integer();
        else if constexpr (std::is_floating_point_v<T>) ok = v.is_number();
        else if constexpr (std::is_same_v<T, std::string>) ok = v.is_string();
        else ok = v.is_array();
        if (ok) {
            try {
                out = v.get<T>();
                return;
            }
            catch (const json::exception&) {
            }
        }
        errors_.push_back(at(key) + ": expected " + type_name<T>());
    }

    template <class T>
    void get(const std::string& key, std::optional<T>& out)
    {
        if (!has(key)) return;
        T v{};
        const std::size_t before = errors_.size();
        get(key, v);
        if (errors_.size() == before) out = v;
    }

    // Nested object or nullptr (with an error if present but not an object).
    const json* object(const std::string& key)
    {
        if (!has(key)) return nullptr;
        if (!j_.at(key).is_object()) {
            errors_.push_back(at(key) + ": expected object");
            return nullptr;
        }
        return &j_.at(key);
    }

    void finish()
    {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key())) errors_.push_back(at(it.key()) + ": unknown key");
    }

private:
    const json& j_;
    std::string path_;
    std::vector<std::string>& errors_;
    std::set<std::string> seen_;
};

void require(bool ok, std::vector<std::string>& errors, const std::string& msg)
{
    if (!ok) errors.push_back(msg);
}

void positive(const std::optional<double>& v, std::vector<std::string>& errors, const std::string& path)
{
    if (v && !(*v > 0 && std::isfinite(*v))) errors.push_back(path + ": must be > 0");
}

SpeciesConfig read_species(const json& j, std::vector<std::string>& e)
{
    SpeciesConfig s;
    Block b(j, "species", e);
    b.get("preset", s.preset);
    b.get("mass", s.mass);
    b.get("charge", s.charge);
    b.get("wavelength", s.wavelength);
    b.get("doppler_temperature", s.doppler_temperature);
    b.finish();
    require(s.preset == "calcium40" || s.preset == "custom", e, "species.preset: calcium40 or custom");
    if (s.preset == "custom")
        require(s.mass && s.charge && s.wavelength, e, "species: custom needs mass, charge and wavelength");
    positive(s.mass, e, "species.mass");
    positive(s.charge, e, "species.charge");
    positive(s.wavelength, e, "species.wavelength");
    if (s.doppler_temperature && !(*s.doppler_temperature >= 0))
        e.push_back("species.doppler_temperature: must be >= 0");
    return s;
}

TrapConfig read_trap(const json& j, std::vector<std::string>& e)
{
    TrapConfig t;
    Block b(j, "trap", e);
    b.get("n_ions", t.n_ions);
    b.get("epsilon", t.epsilon);
    b.get("a_over_d", t.a_over_d);
    b.get("omega", t.omega);
    b.get("d0", t.d0);
    b.get("mode", t.mode);
    b.finish();
    require(t.n_ions >= 2 && t.n_ions <= 4, e, "trap.n_ions: 2 to 4");
    positive(t.epsilon, e, "trap.epsilon");
    if (t.epsilon && *t.epsilon > 2) e.push_back("trap.epsilon: must be <= 2");
    positive(t.a_over_d, e, "trap.a_over_d");
    positive(t.omega, e, "trap.omega");
    positive(t.d0, e, "trap.d0");
    const bool by_eps = t.epsilon && (t.a_over_d || t.omega);
    const bool by_mode = t.omega && t.mode;
    require(by_eps || by_mode, e, "trap: give (epsilon, a_over_d), (epsilon, omega) or (omega, mode)");
    if (t.mode) {
        try {
            if (trap_mode_from_string(*t.mode) == TrapMode::separate_microtraps && !t.epsilon)
                require(t.d0.has_value(), e, "trap.d0: required for separate_microtraps");
        }
        catch (const Error&) {
            e.push_back("trap.mode: separate_microtraps or shared_linear_trap");
        }
    }
    return t;
}

PulseConfig read_pulse(const json& j, std::vector<std::string>& e)
{
    PulseConfig p;
    Block b(j, "pulse", e);
    b.get("xi", p.xi);
    b.get("omega_tau", p.omega_tau);
    b.get("target_phase", p.target_phase);
    b.get("sign", p.sign);
    b.get("window_factor", p.window_factor);
    b.get("addressed", p.addressed);
    b.get("light_shift_offsets", p.light_shift_offsets);
    b.get("light_shift_sign", p.light_shift_sign);
    b.finish();
    positive(p.xi, e, "pulse.xi");
    positive(p.omega_tau, e, "pulse.omega_tau");
    require(p.sign == 1 || p.sign == -1, e, "pulse.sign: +1 or -1");
    require(p.light_shift_sign >= -1 && p.light_shift_sign <= 1, e, "pulse.light_shift_sign: -1, 0 or 1");
    require(p.window_factor > 0, e, "pulse.window_factor: must be > 0");
    return p;
}

SequenceConfig read_sequence(const json& j, std::vector<std::string>& e)
{
    SequenceConfig s;
    Block b(j, "sequence", e);
    b.get("kind", s.kind);
    b.get("pi_variant", s.pi_variant);
    b.finish();
    static const std::set<std::string> kinds = {"single", "spin_echo", "detuning_swap", "force_swap", "toffoli"};
    require(kinds.count(s.kind) > 0, e,
            "sequence.kind: single, spin_echo, detuning_swap, force_swap or toffoli");
    return s;
}

EnsembleConfig read_ensemble(const json& j, std::vector<std::string>& e)
{
    EnsembleConfig s;
    Block b(j, "ensemble", e);
    b.get("temperature", s.temperature);
    b.get("kT_over_hbar_omega", s.kT_over_hbar_omega);
    b.get("samples", s.samples);
    b.get("seed", s.seed);
    b.get("order", s.order);
    b.finish();
    require(!(s.temperature && s.kT_over_hbar_omega), e,
            "ensemble: temperature and kT_over_hbar_omega are exclusive");
    if (s.temperature && !(*s.temperature >= 0)) e.push_back("ensemble.temperature: must be >= 0");
    if (s.kT_over_hbar_omega && !(*s.kT_over_hbar_omega >= 0))
        e.push_back("ensemble.kT_over_hbar_omega: must be >= 0");
    require(s.samples >= 0, e, "ensemble.samples: must be >= 0");
    require(s.order == "state_first" || s.order == "sample_first", e,
            "ensemble.order: state_first or sample_first");
    return s;
}

LaserConfig read_laser(const json& j, std::vector<std::string>& e)
{
    LaserConfig l;
    Block b(j, "laser", e);
    b.get("configuration", l.configuration);
    b.get("waist", l.waist);
    b.get("x0", l.x0);
    b.get("wavelength", l.wavelength);
    b.get("alpha", l.alpha);
    b.get("k_alpha_z0", l.k_alpha_z0);
    b.get("power", l.power);
    b.finish();
    try {
        laser_configuration_from_string(l.configuration);
    }
    catch (const Error&) {
        e.push_back("laser.configuration: travelling_wave or standing_wave");
    }
    positive(l.waist, e, "laser.waist");
    positive(l.power, e, "laser.power");
    positive(l.wavelength, e, "laser.wavelength");
    require(l.waist && l.power, e, "laser: waist and power are required");
    return l;
}

SweepConfig read_sweep(const json& j, std::vector<std::string>& e)
{
    SweepConfig s;
    Block b(j, "sweep", e);
    b.get("name", s.name);
    b.get("axis", s.axis);
    b.get("start", s.start);
    b.get("stop", s.stop);
    b.get("points", s.points);
    b.get("spacing", s.spacing);
    b.get("dynamic_model", s.dynamic_model);
    b.get("configuration", s.configuration);
    b.get("wavelength", s.wavelength);
    b.get("x0_over_w", s.x0_over_w);
    b.get("alpha", s.alpha);
    b.get("k_alpha_z0", s.k_alpha_z0);
    b.get("omega", s.omega);
    b.get("epsilon", s.epsilon);
    b.get("omega_tau", s.omega_tau);
    b.get("vartheta_L", s.vartheta_L);
    b.get("xi", s.xi);
    b.get("samples", s.samples);
    b.get("seed", s.seed);
    if (b.has("curves")) {
        const json& cs = j.at("curves");
        if (!cs.is_array()) {
            e.push_back("sweep.curves: expected array");
        }
        else {
            for (std::size_t i = 0; i < cs.size(); ++i) {
                const std::string path = "sweep.curves[" + std::to_string(i) + "]";
                if (!cs[i].is_object()) {
                    e.push_back(path + ": expected object");
                    continue;
                }
                SweepCurveConfig c;
                Block cb(cs[i], path, e);
                cb.get("id", c.id);
                cb.get("label", c.label);
                cb.get("waist", c.waist);
                cb.get("power", c.power);
                cb.get("temperature", c.temperature);
                cb.get("temperature_rule", c.temperature_rule);
                cb.finish();
                if (c.id.empty()) c.id = "curve" + std::to_string(i + 1);
                s.curves.push_back(c);
            }
        }
    }
    b.finish();
    // Enumerations are checked here so that the report lists every problem.
    auto check = [&](auto fn, const std::string& v, const std::string& path) {
        try {
            fn(v);
        }
        catch (const Error& ex) {
            e.push_back(path + ": " + ex.what());
        }
    };
    check(sweep_axis_from_string, s.axis, "sweep.axis");
    check(spacing_from_string, s.spacing, "sweep.spacing");
    check(dynamic_model_from_string, s.dynamic_model, "sweep.dynamic_model");
    check(laser_configuration_from_string, s.configuration, "sweep.configuration");
    for (std::size_t i = 0; i < s.curves.size(); ++i)
        check(temperature_rule_from_string, s.curves[i].temperature_rule,
              "sweep.curves[" + std::to_string(i) + "].temperature_rule");
    return s;
}

template <class T>
void put(json& j, const char* key, const std::optional<T>& v)
{
    if (v) j[key] = *v;
}

json species_json(const SpeciesConfig& s)
{
    json j;
    j["preset"] = s.preset;
    put(j, "mass", s.mass);
    put(j, "charge", s.charge);
    put(j, "wavelength", s.wavelength);
    put(j, "doppler_temperature", s.doppler_temperature);
    return j;
}

json build_json(const RunConfig& c)
{
    json j = json::object();
    if (!c.preset.empty()) j["preset"] = c.preset;
    j["species"] = species_json(c.species);
    if (c.trap) {
        json t;
        t["n_ions"] = c.trap->n_ions;
        put(t, "epsilon", c.trap->epsilon);
        put(t, "a_over_d", c.trap->a_over_d);
        put(t, "omega", c.trap->omega);
        put(t, "d0", c.trap->d0);
        put(t, "mode", c.trap->mode);
        j["trap"] = t;
    }
    if (c.pulse) {
        const PulseConfig& p = *c.pulse;
        json t;
        put(t, "xi", p.xi);
        put(t, "omega_tau", p.omega_tau);
        put(t, "target_phase", p.target_phase);
        t["sign"] = p.sign;
        t["window_factor"] = p.window_factor;
        if (!p.addressed.empty()) t["addressed"] = p.addressed;
        if (!p.light_shift_offsets.empty()) t["light_shift_offsets"] = p.light_shift_offsets;
        t["light_shift_sign"] = p.light_shift_sign;
        j["pulse"] = t;
    }
    j["sequence"] = {{"kind", c.sequence.kind}, {"pi_variant", c.sequence.pi_variant}};
    if (c.ensemble) {
        const EnsembleConfig& s = *c.ensemble;
        json t;
        put(t, "temperature", s.temperature);
        put(t, "kT_over_hbar_omega", s.kT_over_hbar_omega);
        t["samples"] = s.samples;
        t["seed"] = s.seed;
        t["order"] = s.order;
        j["ensemble"] = t;
    }
    if (c.laser) {
        const LaserConfig& l = *c.laser;
        json t;
        t["configuration"] = l.configuration;
        put(t, "waist", l.waist);
        put(t, "x0", l.x0);
        put(t, "wavelength", l.wavelength);
        put(t, "alpha", l.alpha);
        put(t, "k_alpha_z0", l.k_alpha_z0);
        put(t, "power", l.power);
        j["laser"] = t;
    }
    if (c.sweep) {
        const SweepConfig& s = *c.sweep;
        json t;
        t["name"] = s.name;
        t["axis"] = s.axis;
        t["start"] = s.start;
        t["stop"] = s.stop;
        t["points"] = s.points;
        t["spacing"] = s.spacing;
        t["dynamic_model"] = s.dynamic_model;
        t["configuration"] = s.configuration;
        put(t, "wavelength", s.wavelength);
        t["x0_over_w"] = s.x0_over_w;
        t["alpha"] = s.alpha;
        t["k_alpha_z0"] = s.k_alpha_z0;
        t["omega"] = s.omega;
        t["epsilon"] = s.epsilon;
        t["omega_tau"] = s.omega_tau;
        t["vartheta_L"] = s.vartheta_L;
        t["xi"] = s.xi;
        t["samples"] = s.samples;
        t["seed"] = s.seed;
        json cs = json::array();
        for (const auto& cv : s.curves) {
            json x;
            x["id"] = cv.id;
            x["label"] = cv.label;
            put(x, "waist", cv.waist);
            put(x, "power", cv.power);
            put(x, "temperature", cv.temperature);
            x["temperature_rule"] = cv.temperature_rule;
            cs.push_back(x);
        }
        t["curves"] = cs;
        j["sweep"] = t;
    }
    json out;
    out["dir"] = c.output.dir;
    out["trajectories"] = c.output.trajectories;
    j["output"] = out;
    if (!c.tolerances.empty()) j["tolerances"] = c.tolerances;
    return j;
}

RunConfig from_json(const json& j)
{
    std::vector<std::string> e;
    RunConfig c;
    if (!j.is_object()) throw ConfigError(kModule, "top level must be a JSON object");
    Block top(j, "", e);
    top.get("preset", c.preset);
    if (const json* s = top.object("species")) c.species = read_species(*s, e);
    if (const json* s = top.object("trap")) c.trap = read_trap(*s, e);
    if (const json* s = top.object("pulse")) c.pulse = read_pulse(*s, e);
    if (const json* s = top.object("sequence")) c.sequence = read_sequence(*s, e);
    if (const json* s = top.object("ensemble")) c.ensemble = read_ensemble(*s, e);
    if (const json* s = top.object("laser")) c.laser = read_laser(*s, e);
    if (const json* s = top.object("sweep")) c.sweep = read_sweep(*s, e);
    if (const json* s = top.object("output")) {
        Block b(*s, "output", e);
        b.get("dir", c.output.dir);
        b.get("trajectories", c.output.trajectories);
        b.finish();
    }
    if (const json* s = top.object("tolerances")) {
        for (auto it = s->begin(); it != s->end(); ++it) {
            const std::string path = "tolerances." + it.key();
            if (!it.value().is_number() || !(it.value().get<double>() > 0))
                e.push_back(path + ": expected positive number");
            else
                c.tolerances[it.key()] = it.value().get<double>();
        }
    }
    top.finish();
    if (!e.empty()) {
        std::string msg = "invalid configuration:";
        for (const auto& x : e) msg += "\n  " + x;
        throw ConfigError(kModule, msg);
    }
    return c;
}

json parse_text(const std::string& text)
{
    try {
        return json::parse(text);
    }
    catch (const json::parse_error& ex) {
        throw ConfigError(kModule, std::string("malformed JSON: ") + ex.what());
    }
}

}  // namespace

IonSpecies SpeciesConfig::resolve() const
{
    IonSpecies s = calcium40();
    if (preset == "custom") s.label = "custom";
    if (mass) s.mass = *mass;
    if (charge) s.charge = *charge;
    if (wavelength) s.transition_wavelength = *wavelength;
    if (doppler_temperature) s.doppler_temperature = *doppler_temperature;
    s.validate();
    return s;
}

TrapArray TrapConfig::resolve(const IonSpecies& species) const
{
    if (epsilon && a_over_d) return trap_for(species, n_ions, *epsilon, *a_over_d);
    if (epsilon && omega) return trap_at(species, n_ions, *epsilon, *omega);
    if (!omega || !mode) throw ConfigError(kModule, "trap: incomplete specification");
    TrapArray t;
    t.n_ions = n_ions;
    t.omega = *omega;
    t.mode = trap_mode_from_string(*mode);
    t.d0 = d0.value_or(0.0);
    t.validate();
    return t;
}

double EnsembleConfig::temperature_K(double omega) const
{
    const PhysicalConstants k;
    if (kT_over_hbar_omega) return *kT_over_hbar_omega * k.hbar * omega / k.kB;
    return temperature.value_or(0.0);
}

LaserGeometry LaserConfig::resolve(const IonSpecies& species) const
{
    LaserGeometry g;
    g.configuration = laser_configuration_from_string(configuration);
    g.waist = waist.value_or(0.0);
    g.x0 = x0.value_or(0.5 * g.waist);
    g.wavelength = wavelength.value_or(species.transition_wavelength);
    g.alpha = alpha.value_or(0.0);
    g.power = power.value_or(0.0);
    if (g.configuration == LaserConfiguration::standing_wave && k_alpha_z0) g.z0 = *k_alpha_z0 / g.k_alpha();
    g.validate();
    return g;
}

SweepSpec SweepConfig::resolve(const IonSpecies& species) const
{
    SweepSpec s;
    s.name = name;
    s.species = species;
    s.configuration = laser_configuration_from_string(configuration);
    s.wavelength = wavelength.value_or(species.transition_wavelength);
    s.x0_over_w = x0_over_w;
    s.alpha = alpha;
    s.k_alpha_z0 = k_alpha_z0;
    s.axis = sweep_axis_from_string(axis);
    s.range = {start, stop, points, spacing_from_string(spacing)};
    s.omega = omega;
    s.epsilon = epsilon;
    s.omega_tau = omega_tau;
    s.vartheta_L = vartheta_L;
    s.xi = xi;
    s.model = dynamic_model_from_string(dynamic_model);
    s.samples = samples;
    s.seed = seed;
    for (const auto& c : curves) {
        SweepCurve v;
        v.id = c.id;
        v.label = c.label.empty() ? c.id : c.label;
        v.waist = c.waist.value_or(0.0);
        v.power = c.power.value_or(0.0);
        v.rule = temperature_rule_from_string(c.temperature_rule);
        v.temperature = c.temperature.value_or(species.doppler_temperature.value_or(0.0));
        s.curves.push_back(v);
    }
    s.validate();
    return s;
}

RunConfig parse_config(const std::string& json_text) { return from_json(parse_text(json_text)); }

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError(kModule, "cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

RunConfig merge_config(const RunConfig& base, const std::string& patch_text)
{
    json j = build_json(base);
    j.merge_patch(parse_text(patch_text));
    return from_json(j);
}

RunConfig resolve_config(const std::string& preset, const std::string& file_text)
{
    std::string name = preset;
    if (name.empty() && !file_text.empty()) {
        const json j = parse_text(file_text);
        if (j.is_object() && j.contains("preset") && j.at("preset").is_string())
            name = j.at("preset").get<std::string>();
    }
    RunConfig base = name.empty() ? RunConfig{} : preset_config(name);
    if (file_text.empty()) return base;
    if (name.empty()) return parse_config(file_text);
    RunConfig out = merge_config(base, file_text);
    out.preset = name;
    return out;
}

std::string config_json(const RunConfig& c, bool pretty) { return build_json(c).dump(pretty ? 2 : -1); }

std::vector<std::string> preset_names()
{
    return {"fig3", "fig4", "two_ion_smalleps", "linear_trap", "toffoli"};
}

RunConfig preset_config(const std::string& name)
{
    RunConfig c;
    c.preset = name;
    if (name == "fig3" || name == "fig4") {
        const SweepSpec s = name == "fig3" ? fig3_preset() : fig4_preset();
        SweepConfig w;
        w.name = s.name;
        w.axis = to_string(s.axis);
        w.start = s.range.start;
        w.stop = s.range.stop;
        w.points = s.range.points;
        w.spacing = to_string(s.range.spacing);
        w.dynamic_model = to_string(s.model);
        w.configuration = to_string(s.configuration);
        w.wavelength = s.wavelength;
        w.x0_over_w = s.x0_over_w;
        w.alpha = s.alpha;
        w.k_alpha_z0 = s.k_alpha_z0;
        w.epsilon = s.epsilon;
        w.omega_tau = s.omega_tau;
        w.vartheta_L = s.vartheta_L;
        w.seed = s.seed;
        for (const auto& cv : s.curves) {
            SweepCurveConfig x;
            x.id = cv.id;
            x.label = cv.label;
            x.waist = cv.waist;
            x.power = cv.power;
            if (cv.rule == TemperatureRule::fixed) x.temperature = cv.temperature;
            x.temperature_rule = to_string(cv.rule);
            w.curves.push_back(x);
        }
        c.sweep = w;
        return c;
    }
    if (name == "two_ion_smalleps") {
        TrapConfig t;
        t.epsilon = 0.01;
        t.a_over_d = 1e-3;
        c.trap = t;
        PulseConfig p;
        p.xi = 0.2;
        p.omega_tau = 20.0;
        c.pulse = p;
        return c;
    }
    if (name == "linear_trap") {
        TrapConfig t;
        t.omega = 2 * kPi * 1e6;
        t.mode = "shared_linear_trap";
        c.trap = t;
        PulseConfig p;
        p.omega_tau = 10.0;
        p.target_phase = kPi / 2;
        c.pulse = p;
        c.sequence.kind = "spin_echo";
        EnsembleConfig e;
        e.temperature = 538e-6;
        e.samples = 200;
        c.ensemble = e;
        LaserConfig l;
        l.waist = 4e-6;
        l.power = 10e-3;
        c.laser = l;
        return c;
    }
    if (name == "toffoli") {
        TrapConfig t;
        t.n_ions = 3;
        t.epsilon = 0.01;
        t.a_over_d = 1e-3;
        c.trap = t;
        PulseConfig p;
        p.omega_tau = 20.0;
        p.target_phase = 4 * kPi;
        c.pulse = p;
        c.sequence.kind = "toffoli";
        return c;
    }
    throw ConfigError(kModule, "unknown preset '" + name + "'");
}

ForcePulse make_pulse(const PulseConfig& p, const SystemModel& sys)
{
    if (!p.xi || !p.omega_tau) throw ConfigError(kModule, "pulse: xi and omega_tau must be resolved");
    ForcePulse f;
    f.xi = *p.xi;
    f.tau = *p.omega_tau / sys.trap.omega;
    f.sign = p.sign;
    f.window_factor = p.window_factor;
    f.addressed = p.addressed;
    f.light_shift_offsets = p.light_shift_offsets;
    f.light_shift_sign = p.light_shift_sign;
    f.validate(sys.n());
    return f;
}

}  // namespace pushgate
