// Copyright (c) 2026 stationary-gate contributors. MIT License.
#include "sgate/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

namespace sgate {

const char* to_string(JobKind job) {
    switch (job) {
        case JobKind::Spectrum: return "spectrum";
        case JobKind::FidelitySweep: return "fidelity_sweep";
        case JobKind::Optimize: return "optimize";
        case JobKind::GateTime: return "gate_time";
        case JobKind::PlacementStudy: return "placement_study";
    }
    return "unknown";
}

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::Config, msg); }

// ------------------------------------------------------------ TOML → JSON ---

json toml_node_to_json(const toml::node& node) {
    if (auto t = node.as_table()) {
        json out = json::object();
        for (auto&& [k, v] : *t) out[std::string(k.str())] = toml_node_to_json(v);
        return out;
    }
    if (auto a = node.as_array()) {
        json out = json::array();
        for (auto&& v : *a) out.push_back(toml_node_to_json(v));
        return out;
    }
    if (auto v = node.as_string()) return v->get();
    if (auto v = node.as_integer()) return v->get();
    if (auto v = node.as_floating_point()) return v->get();
    if (auto v = node.as_boolean()) return v->get();
    fail("dates and times are not supported in configurations");
}

// --------------------------------------------------------- typed readers ---

// Walks one table, handing out values by key and remembering which keys were
// consumed so that leftovers can be reported as unknown.
class Section {
public:
    Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) fail(where() + " must be a table");
    }

    bool has(const char* key) const { return node_.contains(key); }

    const json* get(const char* key) {
        seen_.insert(key);
        auto it = node_.find(key);
        return it == node_.end() ? nullptr : &*it;
    }

    std::optional<double> number(const char* key) {
        const json* v = get(key);
        if (!v) return std::nullopt;
        if (!v->is_number()) fail(where(key) + " must be a number");
        const double x = v->get<double>();
        if (!std::isfinite(x)) fail(where(key) + " must be finite");
        return x;
    }

    std::optional<long> integer(const char* key) {
        const json* v = get(key);
        if (!v) return std::nullopt;
        if (!v->is_number()) fail(where(key) + " must be an integer");
        const double x = v->get<double>();
        if (!std::isfinite(x) || std::floor(x) != x || std::abs(x) > 9.0e15) {
            fail(where(key) + " must be an integer");
        }
        return static_cast<long>(x);
    }

    std::optional<bool> boolean(const char* key) {
        const json* v = get(key);
        if (!v) return std::nullopt;
        if (!v->is_boolean()) fail(where(key) + " must be true or false");
        return v->get<bool>();
    }

    std::optional<std::string> text(const char* key) {
        const json* v = get(key);
        if (!v) return std::nullopt;
        if (!v->is_string()) fail(where(key) + " must be a string");
        return v->get<std::string>();
    }

    std::optional<std::vector<std::string>> text_list(const char* key) {
        const json* v = get(key);
        if (!v) return std::nullopt;
        if (!v->is_array()) fail(where(key) + " must be an array of strings");
        std::vector<std::string> out;
        for (const auto& e : *v) {
            if (!e.is_string()) fail(where(key) + " must be an array of strings");
            out.push_back(e.get<std::string>());
        }
        return out;
    }

    std::optional<std::vector<double>> number_list(const char* key) {
        const json* v = get(key);
        if (!v) return std::nullopt;
        if (!v->is_array()) fail(where(key) + " must be an array of numbers");
        std::vector<double> out;
        for (const auto& e : *v) {
            if (!e.is_number() || !std::isfinite(e.get<double>())) {
                fail(where(key) + " must be an array of finite numbers");
            }
            out.push_back(e.get<double>());
        }
        return out;
    }

    std::optional<Section> table(const char* key) {
        const json* v = get(key);
        if (!v) return std::nullopt;
        return Section(*v, where(key));
    }

    // Throws on any key that was not asked for.
    void finish() const {
        for (auto it = node_.begin(); it != node_.end(); ++it) {
            if (!seen_.count(it.key())) fail("unknown key '" + where(it.key().c_str()) + "'");
        }
    }

    std::string where(const char* key = nullptr) const {
        if (!key) return path_.empty() ? "configuration" : path_;
        return path_.empty() ? std::string(key) : path_ + "." + key;
    }

private:
    const json& node_;
    std::string path_;
    std::set<std::string> seen_;
};

template <class E>
E pick(const std::string& value, const std::string& where,
       std::initializer_list<std::pair<const char*, E>> options) {
    std::string names;
    for (const auto& [name, e] : options) {
        if (value == name) return e;
        names += names.empty() ? name : std::string(", ") + name;
    }
    fail(where + " must be one of: " + names + " (got '" + value + "')");
}

Scheme parse_scheme(const std::string& s, const std::string& where) {
    return pick<Scheme>(s, where, {{"lambda", Scheme::Lambda}, {"dual_v", Scheme::DualV}});
}

TbMode parse_tb_mode(const std::string& s, const std::string& where) {
    return pick<TbMode>(s, where, {{"one", TbMode::One}, {"match_r0", TbMode::MatchR0},
                                   {"optimized", TbMode::Optimized}, {"fixed", TbMode::Fixed}});
}

const char* scheme_name(Scheme s) { return s == Scheme::Lambda ? "lambda" : "dual_v"; }

std::vector<double> parse_grid(Section& g, json& spec) {
    auto values = g.number_list("values");
    auto start = g.number("start");
    auto stop = g.number("stop");
    auto count = g.integer("count");
    auto spacing = g.text("spacing");
    g.finish();
    if (values) {
        if (start || stop || count || spacing) fail("grid: give either 'values' or 'start/stop/count', not both");
        if (values->empty()) fail("empty grid");
        spec = {{"values", *values}};
        return *values;
    }
    if (!start || !stop || !count) fail("grid: needs 'values' or all of 'start', 'stop', 'count'");
    if (*count <= 0) fail("empty grid");
    if (*count > 1000000) fail("grid: count must not exceed 1000000");
    const bool log = pick<bool>(spacing.value_or("linear"), "grid.spacing", {{"linear", false}, {"log", true}});
    spec = {{"start", *start}, {"stop", *stop}, {"count", *count}, {"spacing", log ? "log" : "linear"}};
    if (log && !(*start > 0.0 && *stop > 0.0)) fail("grid: log spacing needs positive start and stop");
    std::vector<double> out(static_cast<std::size_t>(*count));
    for (long i = 0; i < *count; ++i) {
        const double f = *count == 1 ? 0.0 : double(i) / double(*count - 1);
        out[std::size_t(i)] = log ? std::exp(std::log(*start) + f * (std::log(*stop) - std::log(*start)))
                                  : *start + f * (*stop - *start);
    }
    return out;
}

}  // namespace

// ------------------------------------------------------- numeric settings ---

json numeric_to_json(const NumericSettings& s) {
    return json{{"sin_theta_floor", s.sin_theta_floor},
                {"min_rcond", s.min_rcond},
                {"scan_divisions", s.scan_divisions},
                {"scan_span", s.scan_span},
                {"bracket_retry_factor", s.bracket_retry_factor},
                {"golden_tol", s.golden_tol},
                {"kernel_asymptotic_min_x", s.kernel_asymptotic_min_x},
                {"kernel_points_per_width", s.kernel_points_per_width},
                {"kernel_min_time_points", s.kernel_min_time_points},
                {"kernel_max_time_points", s.kernel_max_time_points},
                {"discrete_max_atoms", s.discrete_max_atoms},
                {"discrete_retry_budget", s.discrete_retry_budget},
                {"spectrum_nodes", s.spectrum_nodes},
                {"spectrum_half_width_sigmas", s.spectrum_half_width_sigmas},
                {"nm_value_tol", s.nm_value_tol},
                {"nm_point_rel_tol", s.nm_point_rel_tol},
                {"nm_initial_step_fraction", s.nm_initial_step_fraction}};
}

void apply_numeric_overrides(NumericSettings& s, const json& overrides) {
    Section n(overrides, "numeric");
    auto positive = [&](const char* key, double& field) {
        if (auto v = n.number(key)) {
            if (!(*v > 0.0)) fail("numeric." + std::string(key) + " must be positive");
            field = *v;
        }
    };
    auto count = [&](const char* key, int& field, long lo, long hi) {
        if (auto v = n.integer(key)) {
            if (*v < lo || *v > hi) {
                fail("numeric." + std::string(key) + " must lie in [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
            }
            field = static_cast<int>(*v);
        }
    };
    positive("sin_theta_floor", s.sin_theta_floor);
    positive("min_rcond", s.min_rcond);
    count("scan_divisions", s.scan_divisions, 4, 100000);
    positive("scan_span", s.scan_span);
    positive("bracket_retry_factor", s.bracket_retry_factor);
    positive("golden_tol", s.golden_tol);
    positive("kernel_asymptotic_min_x", s.kernel_asymptotic_min_x);
    count("kernel_points_per_width", s.kernel_points_per_width, 2, 10000);
    count("kernel_min_time_points", s.kernel_min_time_points, 10, 10000000);
    count("kernel_max_time_points", s.kernel_max_time_points, 10, 10000000);
    count("discrete_max_atoms", s.discrete_max_atoms, 1, 1000000);
    count("discrete_retry_budget", s.discrete_retry_budget, 0, 64);
    count("spectrum_nodes", s.spectrum_nodes, 1, 4096);
    positive("spectrum_half_width_sigmas", s.spectrum_half_width_sigmas);
    positive("nm_value_tol", s.nm_value_tol);
    positive("nm_point_rel_tol", s.nm_point_rel_tol);
    positive("nm_initial_step_fraction", s.nm_initial_step_fraction);
    n.finish();
    if (s.kernel_min_time_points > s.kernel_max_time_points) {
        fail("numeric.kernel_min_time_points must not exceed kernel_max_time_points");
    }
    if (s.scan_span <= 1.0) fail("numeric.scan_span must exceed 1");
    if (s.nm_initial_step_fraction >= 1.0) fail("numeric.nm_initial_step_fraction must be below 1");
}

// ----------------------------------------------------------------- parsing ---

json toml_to_json(const std::string& text, const std::string& source) {
    try {
        const toml::table table = toml::parse(text, source);
        return toml_node_to_json(table);
    } catch (const toml::parse_error& e) {
        std::ostringstream msg;
        msg << source << ":" << e.source().begin.line << ":" << e.source().begin.column << ": "
            << e.description();
        fail(msg.str());
    }
}

RunConfig parse_config(const json& doc) {
    RunConfig cfg;
    Section root(doc, "");

    if (auto job = root.text("job")) {
        cfg.job = pick<JobKind>(*job, "job",
                                {{"spectrum", JobKind::Spectrum},
                                 {"fidelity_sweep", JobKind::FidelitySweep},
                                 {"optimize", JobKind::Optimize},
                                 {"gate_time", JobKind::GateTime},
                                 {"placement_study", JobKind::PlacementStudy}});
    }
    cfg.output_name = root.text("output").value_or(to_string(cfg.job));
    if (cfg.output_name.empty() || cfg.output_name.find_first_of("/\\") != std::string::npos ||
        cfg.output_name.front() == '.') {
        fail("output must be a plain file stem (no directories)");
    }
    if (auto seed = root.integer("rng_seed")) {
        if (*seed < 0) fail("rng_seed must be non-negative");
        cfg.rng_seed = static_cast<std::uint64_t>(*seed);
    }

    EnsembleSpec& e = cfg.gate.ensemble;
    if (auto s = root.table("ensemble")) {
        if (auto v = s->integer("N")) e.N = *v;
        if (auto v = s->text("scheme")) e.scheme = parse_scheme(*v, "ensemble.scheme");
        if (auto v = s->number("gamma_1d")) e.gamma_1d = *v;
        if (auto v = s->number("omega0")) e.omega0 = *v;
        if (auto v = s->number("delta_c")) {
            e.delta_c = *v;
            cfg.delta_c_explicit = true;
        }
        if (auto v = s->number("d")) {
            e.placement.d = *v;
            cfg.d_explicit = true;
        }
        if (auto v = s->text("placement")) {
            e.placement.kind = pick<Placement::Kind>(
                *v, "ensemble.placement",
                {{"regular", Placement::Kind::Regular}, {"random_uniform", Placement::Kind::RandomUniform}});
        }
        s->finish();
    }
    e.placement.seed = cfg.rng_seed;
    if (!(e.gamma_1d > 0.0 && e.gamma_1d < 1.0)) fail("ensemble.gamma_1d must lie in (0, 1)");

    if (auto s = root.table("geometry")) {
        if (auto v = s->number("k0_l1")) cfg.gate.geometry.k0_l1 = *v;
        if (auto v = s->number("k0_l2")) cfg.gate.geometry.k0_l2 = *v;
        s->finish();
    }

    if (auto s = root.table("photon_b")) {
        if (auto v = s->text("shape")) {
            cfg.gate.photon_b_shape = pick<PhotonBSpectrum::Shape>(
                *v, "photon_b.shape",
                {{"delta", PhotonBSpectrum::Shape::DiracDelta}, {"gaussian", PhotonBSpectrum::Shape::Gaussian}});
        }
        if (auto v = s->number("sigma_b")) cfg.gate.sigma_b = *v;
        s->finish();
    }
    if (cfg.gate.sigma_b < 0.0) fail("photon_b.sigma_b must be non-negative");
    if (cfg.gate.photon_b_shape == PhotonBSpectrum::Shape::Gaussian && !(cfg.gate.sigma_b > 0.0)) {
        fail("photon_b.sigma_b must be positive for a gaussian spectrum");
    }

    bool realizations_explicit = false;
    if (auto s = root.table("gate")) {
        if (auto v = s->number("sigma_tilde")) {
            cfg.gate.sigma_tilde = *v;
            cfg.sigma_tilde_explicit = true;
        }
        if (auto v = s->number("eit_omega")) cfg.gate.eit_omega = *v;
        if (auto v = s->text("tb_mode")) cfg.gate.tb_mode = parse_tb_mode(*v, "gate.tb_mode");
        if (auto v = s->number("t_b")) cfg.gate.t_b_fixed = *v;
        if (auto v = s->text("storage")) {
            cfg.gate.storage = pick<StorageModel>(*v, "gate.storage",
                                                  {{"kernel", StorageModel::Kernel},
                                                   {"discrete", StorageModel::Discrete},
                                                   {"dispersion", StorageModel::Dispersion}});
        }
        if (auto v = s->boolean("odd_site_adjustment")) cfg.gate.odd_site_adjustment = *v;
        if (auto v = s->integer("realizations")) {
            if (*v < 1 || *v > 100000) fail("gate.realizations must lie in [1, 100000]");
            cfg.gate.realizations = static_cast<int>(*v);
            realizations_explicit = true;
        }
        if (auto v = s->number("delta_res")) cfg.gate.delta_res = *v;
        s->finish();
    }
    // Random placement averages over 100 realisations unless told otherwise.
    if (!realizations_explicit &&
        (e.placement.kind == Placement::Kind::RandomUniform || cfg.job == JobKind::PlacementStudy)) {
        cfg.gate.realizations = 100;
    }
    // Dual-V spacing must avoid multiples of a quarter wavelength.
    if (!cfg.d_explicit && e.scheme == Scheme::DualV) e.placement.d = 0.266;
    if (!(cfg.gate.sigma_tilde > 0.0 && cfg.gate.sigma_tilde < 0.5)) fail("gate.sigma_tilde must lie in (0, 0.5)");
    if (cfg.gate.eit_omega && !(*cfg.gate.eit_omega > 0.0)) fail("gate.eit_omega must be positive");
    if (!(cfg.gate.t_b_fixed >= 0.0 && cfg.gate.t_b_fixed <= 1.0)) fail("gate.t_b must lie in [0, 1]");

    if (const json* n = root.get("numeric")) apply_numeric_overrides(cfg.numeric, *n);

    // Job-specific sections; a section for another job is an error.
    auto only_for = [&](const char* key, std::initializer_list<JobKind> jobs) {
        if (!root.has(key)) return false;
        for (auto j : jobs)
            if (j == cfg.job) return true;
        fail("section '" + std::string(key) + "' is not used by job '" + to_string(cfg.job) + "'");
    };

    if (only_for("spectrum", {JobKind::Spectrum})) {
        Section s = *root.table("spectrum");
        if (auto v = s.integer("stored_site")) cfg.stored_site = *v;
        s.finish();
    }
    if (only_for("sweep", {JobKind::FidelitySweep, JobKind::PlacementStudy})) {
        Section s = *root.table("sweep");
        if (auto v = s.text("param")) cfg.sweep_param = sweep_param_from_string(*v);
        if (auto v = s.text_list("schemes")) {
            if (v->empty()) fail("sweep.schemes must not be empty");
            for (const auto& x : *v) cfg.schemes.push_back(parse_scheme(x, "sweep.schemes"));
        }
        if (auto v = s.text_list("tb_modes")) {
            if (v->empty()) fail("sweep.tb_modes must not be empty");
            for (const auto& x : *v) cfg.tb_modes.push_back(parse_tb_mode(x, "sweep.tb_modes"));
        }
        s.finish();
    }
    if (only_for("optimize", {JobKind::Optimize})) {
        Section s = *root.table("optimize");
        if (auto v = s.text("objective")) {
            cfg.objective = pick<Objective>(*v, "optimize.objective",
                                            {{"unconditional", Objective::Unconditional},
                                             {"conditional", Objective::Conditional}});
        }
        if (auto v = s.text_list("free")) {
            cfg.free_params.clear();
            for (const auto& x : *v) {
                cfg.free_params.push_back(pick<FreeParam>(
                    x, "optimize.free",
                    {{"delta_c", FreeParam::DeltaC}, {"sigma_tilde", FreeParam::SigmaTilde}, {"t_b", FreeParam::TB}}));
            }
            if (cfg.free_params.empty()) fail("optimize.free must not be empty");
        }
        if (auto v = s.integer("budget")) {
            if (*v < 20 || *v > 100000) fail("optimize.budget must lie in [20, 100000]");
            cfg.budget = static_cast<int>(*v);
        }
        s.finish();
    }
    if (only_for("gate_time", {JobKind::GateTime})) {
        Section s = *root.table("gate_time");
        if (auto v = s.number("delta_hfs")) {
            if (!(*v > 0.0)) fail("gate_time.delta_hfs must be positive");
            cfg.delta_hfs = *v;
        }
        s.finish();
    }

    if (auto g = root.table("grid")) {
        if (cfg.job == JobKind::Optimize) fail("section 'grid' is not used by job 'optimize'");
        cfg.grid = parse_grid(*g, cfg.grid_spec);
    } else {
        switch (cfg.job) {
            case JobKind::Spectrum: {
                const json spec{{"start", 0.0}, {"stop", 0.4}, {"count", 801}};
                Section defaults(spec, "grid");
                cfg.grid = parse_grid(defaults, cfg.grid_spec);
                break;
            }
            case JobKind::GateTime:
                cfg.grid = {1e4, 1e5};
                cfg.grid_spec = {{"values", cfg.grid}};
                break;
            case JobKind::Optimize: break;
            default: fail(std::string("job '") + to_string(cfg.job) + "' needs a [grid] section");
        }
    }
    root.finish();

    // Cross-field checks.
    if (cfg.job == JobKind::Spectrum) {
        for (std::size_t i = 1; i < cfg.grid.size(); ++i) {
            if (!(cfg.grid[i] > cfg.grid[i - 1])) fail("grid: spectrum detunings must be strictly ascending");
        }
    }
    if (cfg.job == JobKind::GateTime) {
        for (double n : cfg.grid)
            if (!(n >= 2.0)) fail("grid: gate_time grid holds atom numbers N >= 2");
    }
    if (cfg.job == JobKind::PlacementStudy && e.scheme != Scheme::DualV) {
        fail("placement_study needs ensemble.scheme = 'dual_v' (Lambda atoms sit on a fixed lattice)");
    }
    if (cfg.job == JobKind::PlacementStudy && cfg.sweep_param != SweepParam::N &&
        cfg.sweep_param != SweepParam::D) {
        fail("sweep.param for placement_study must be 'N' or 'd'");
    }
    if (cfg.job == JobKind::FidelitySweep || cfg.job == JobKind::PlacementStudy) {
        for (double v : cfg.grid) {
            if (cfg.sweep_param == SweepParam::N && (v < 2.0 || std::floor(v + 0.5) > 1e8)) {
                fail("grid: N values must lie in [2, 1e8]");
            }
        }
    }
    // Spectra keep the flagship Δc = −10; gate jobs default to the analytic optimum.
    if (!cfg.delta_c_explicit && cfg.job != JobKind::Spectrum) {
        e.delta_c = optimal_params(double(e.N), e.gamma_1d).delta_c;
    }
    if (!cfg.sigma_tilde_explicit && cfg.job != JobKind::Spectrum) {
        cfg.gate.sigma_tilde = std::min(optimal_params(double(e.N), e.gamma_1d).sigma_tilde, 0.45);
    }
    if (cfg.schemes.empty()) cfg.schemes.push_back(e.scheme);
    if (cfg.tb_modes.empty()) cfg.tb_modes.push_back(cfg.gate.tb_mode);
    if (cfg.stored_site && (*cfg.stored_site < 0 || *cfg.stored_site >= e.site_count())) {
        fail("spectrum.stored_site must lie in [0, " + std::to_string(e.site_count() - 1) + "]");
    }
    e.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot read configuration '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    auto ends_with = [&](const char* ext) {
        const std::string e(ext);
        return path.size() >= e.size() && path.compare(path.size() - e.size(), e.size(), e) == 0;
    };
    json doc;
    if (ends_with(".toml")) {
        doc = toml_to_json(text, path);
    } else if (ends_with(".json")) {
        try {
            doc = json::parse(text);
        } catch (const json::parse_error& e) {
            fail(path + ": " + e.what());
        }
    } else {
        fail("configuration '" + path + "' must end in .toml or .json");
    }
    return parse_config(doc);
}

json RunConfig::to_json() const {
    const EnsembleSpec& e = gate.ensemble;
    json j;
    j["job"] = sgate::to_string(job);
    j["output"] = output_name;
    j["rng_seed"] = rng_seed;
    j["ensemble"] = {{"N", e.N},
                     {"scheme", scheme_name(e.scheme)},
                     {"gamma_1d", e.gamma_1d},
                     {"omega0", e.omega0},
                     {"delta_c", e.delta_c},
                     {"d", e.placement.d},
                     {"placement", e.placement.kind == Placement::Kind::Regular ? "regular" : "random_uniform"}};
    j["geometry"] = {{"k0_l1", gate.geometry.k0_l1}, {"k0_l2", gate.geometry.k0_l2}};
    j["photon_b"] = {{"shape", gate.photon_b_shape == PhotonBSpectrum::Shape::DiracDelta ? "delta" : "gaussian"},
                     {"sigma_b", gate.sigma_b}};
    j["gate"] = {{"sigma_tilde", gate.sigma_tilde},
                 {"tb_mode", sgate::to_string(gate.tb_mode)},
                 {"t_b", gate.t_b_fixed},
                 {"storage", sgate::to_string(gate.storage)},
                 {"odd_site_adjustment", gate.odd_site_adjustment},
                 {"realizations", gate.realizations}};
    if (gate.eit_omega) j["gate"]["eit_omega"] = *gate.eit_omega;
    if (gate.delta_res) j["gate"]["delta_res"] = *gate.delta_res;
    if (job != JobKind::Optimize) j["grid"] = grid_spec;
    switch (job) {
        case JobKind::Spectrum:
            if (stored_site) j["spectrum"] = {{"stored_site", *stored_site}};
            break;
        case JobKind::FidelitySweep:
        case JobKind::PlacementStudy: {
            json schemes = json::array(), modes = json::array();
            for (auto s : this->schemes) schemes.push_back(scheme_name(s));
            for (auto m : tb_modes) modes.push_back(sgate::to_string(m));
            j["sweep"] = {{"param", sgate::to_string(sweep_param)}, {"schemes", schemes}, {"tb_modes", modes}};
            break;
        }
        case JobKind::Optimize: {
            json free = json::array();
            for (auto p : free_params) free.push_back(sgate::to_string(p));
            j["optimize"] = {{"objective", sgate::to_string(objective)}, {"free", free}, {"budget", budget}};
            break;
        }
        case JobKind::GateTime:
            if (delta_hfs) j["gate_time"] = {{"delta_hfs", *delta_hfs}};
            break;
    }
    j["numeric"] = numeric_to_json(numeric);
    return j;
}

}  // namespace sgate
