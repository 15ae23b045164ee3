#include "frontlab/config.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace frontlab {

using nlohmann::json;

RunMode parse_run_mode(const std::string& name) {
    if (name == "simulate") return RunMode::Simulate;
    if (name == "stability") return RunMode::Stability;
    if (name == "converge") return RunMode::Converge;
    if (name == "attractor") return RunMode::Attractor;
    if (name == "verify") return RunMode::Verify;
    if (name == "figure") return RunMode::Figure;
    throw std::invalid_argument("config: field \"mode\" must be one of simulate, stability, "
                                "converge, attractor, verify, figure (got \"" +
                                name + "\")");
}

const char* to_string(RunMode mode) {
    switch (mode) {
        case RunMode::Simulate: return "simulate";
        case RunMode::Stability: return "stability";
        case RunMode::Converge: return "converge";
        case RunMode::Attractor: return "attractor";
        case RunMode::Verify: return "verify";
        default: return "figure";
    }
}

SpectralField<double> Psi0Spec::build(const GridConfig<double>& grid) const {
    if (coeffs.empty()) return preset_initial(grid, preset);
    SpectralField<double> f(grid);
    for (const auto& [k, re, im] : coeffs) {
        if (k < 0 || k >= grid.spectrum_size())
            throw std::invalid_argument("config: field \"psi0\" has mode index " +
                                        std::to_string(k) + " outside 0.." +
                                        std::to_string(grid.spectrum_size() - 1));
        f.set_coeff(k, {re, im});
    }
    return f;
}

GridConfig<double> RunConfig::grid() const {
    GridConfig<double> g;
    g.n_modes = n_modes;
    g.period = two_pi_v<double>;
    g.dealias_fraction = dealias_fraction;
    return g;
}

SimulationSettings RunConfig::simulation_settings() const {
    SimulationSettings s;
    s.grid = grid();
    s.dt = dt;
    s.snapshot_stride = snapshot_stride;
    s.blowup_sup = blowup_sup;
    return s;
}

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
    throw std::invalid_argument("config: field \"" + field + "\" " + why);
}

void require(bool ok, const std::string& field, const std::string& why) {
    if (!ok) bad_field(field, why);
}

}  // namespace

void RunConfig::validate() const {
    require(beta > 0.0, "beta", "must be > 0");
    require(eps >= 0.0, "eps", "must be >= 0");
    require(dt > 0.0, "dt", "must be > 0");
    require(u_flow > 0.0 && u_flow < 1.0, "u_flow", "must lie in (0,1)");
    require(ell > 0.0, "ell", "must be > 0");
    require(k_max >= 1, "k_max", "must be >= 1");
    require(n_modes >= 8 && n_modes % 2 == 0, "n_modes", "must be even and >= 8");
    require(dealias_fraction > 0.0 && dealias_fraction <= 1.0, "dealias_fraction",
            "must lie in (0,1]");
    require(dealias_fraction * (n_modes / 2) >= 1.0, "dealias_fraction",
            "must retain at least one mode");
    require(t_final > 0.0, "t_final", "must be > 0");
    require(snapshot_stride >= 1, "snapshot_stride", "must be >= 1");
    require(blowup_sup > 0.0, "blowup_sup", "must be > 0");
    require(transient_fraction >= 0.0 && transient_fraction < 1.0, "transient_fraction",
            "must lie in [0,1)");
    require(figure_id >= 1 && figure_id <= 13, "figure_id", "must lie in 1..13");
    require(!eps_list.empty(), "eps_list", "must not be empty");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        require(eps_list[i] > 0.0, "eps_list", "entries must be > 0");
        if (i > 0)
            require(eps_list[i] < eps_list[i - 1], "eps_list", "must be strictly decreasing");
    }
    require(!beta_list.empty(), "beta_list", "must not be empty");
    for (double b : beta_list) require(b > 0.0, "beta_list", "entries must be > 0");
    if (!psi0.coeffs.empty()) {
        for (const auto& [k, re, im] : psi0.coeffs)
            require(k >= 0 && k <= n_modes / 2, "psi0", "mode indices must lie in 0..n_modes/2");
    } else {
        require(psi0.preset == "sin" || psi0.preset == "cos" || psi0.preset == "tri", "psi0",
                "must be \"sin\", \"cos\", \"tri\" or a coefficient list");
    }
}

namespace {

double as_number(const json& j, const std::string& field) {
    if (!j.is_number()) bad_field(field, "must be a number");
    return j.get<double>();
}

long as_integer(const json& j, const std::string& field) {
    if (!j.is_number_integer()) bad_field(field, "must be an integer");
    return j.get<long>();
}

Psi0Spec parse_psi0(const json& j) {
    Psi0Spec spec;
    if (j.is_string()) {
        spec.preset = j.get<std::string>();
        return spec;
    }
    if (j.is_array()) {
        for (const auto& entry : j) {
            if (!entry.is_array() || entry.size() != 3)
                bad_field("psi0", "coefficient entries must be [k, re, im] triples");
            spec.coeffs.emplace_back(static_cast<int>(as_integer(entry[0], "psi0")),
                                     as_number(entry[1], "psi0"), as_number(entry[2], "psi0"));
        }
        if (spec.coeffs.empty()) bad_field("psi0", "coefficient list must not be empty");
        return spec;
    }
    bad_field("psi0", "must be a preset name or a [k, re, im] list");
}

std::vector<double> parse_number_list(const json& j, const std::string& field) {
    if (!j.is_array() || j.empty()) bad_field(field, "must be a non-empty array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& entry : j) out.push_back(as_number(entry, field));
    return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("config: document must be a JSON object");

    RunConfig cfg;
    for (const auto& [key, value] : doc.items()) {
        if (key == "mode") {
            if (!value.is_string()) bad_field("mode", "must be a string");
            cfg.mode = parse_run_mode(value.get<std::string>());
        } else if (key == "beta") {
            cfg.beta = as_number(value, key);
        } else if (key == "eps") {
            cfg.eps = as_number(value, key);
        } else if (key == "dt") {
            cfg.dt = as_number(value, key);
        } else if (key == "u_flow") {
            cfg.u_flow = as_number(value, key);
        } else if (key == "gamma") {
            cfg.gamma = as_number(value, key);
        } else if (key == "ell") {
            cfg.ell = as_number(value, key);
        } else if (key == "k_max") {
            cfg.k_max = static_cast<int>(as_integer(value, key));
        } else if (key == "n_modes") {
            cfg.n_modes = static_cast<int>(as_integer(value, key));
        } else if (key == "dealias_fraction") {
            cfg.dealias_fraction = as_number(value, key);
        } else if (key == "psi0") {
            cfg.psi0 = parse_psi0(value);
        } else if (key == "t_final") {
            cfg.t_final = as_number(value, key);
        } else if (key == "snapshot_stride") {
            cfg.snapshot_stride = as_integer(value, key);
        } else if (key == "blowup_sup") {
            cfg.blowup_sup = as_number(value, key);
        } else if (key == "out_dir") {
            if (!value.is_string()) bad_field("out_dir", "must be a string");
            cfg.output_dir = value.get<std::string>();
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(as_integer(value, key));
        } else if (key == "figure_id") {
            cfg.figure_id = static_cast<int>(as_integer(value, key));
        } else if (key == "eps_list") {
            cfg.eps_list = parse_number_list(value, key);
        } else if (key == "beta_list") {
            cfg.beta_list = parse_number_list(value, key);
        } else if (key == "transient_fraction") {
            cfg.transient_fraction = as_number(value, key);
        } else {
            throw std::invalid_argument("config: unknown key \"" + key + "\"");
        }
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace frontlab
