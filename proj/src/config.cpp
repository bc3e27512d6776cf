#include "bnkit/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bnkit/io.hpp"

namespace bnkit {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

std::string unquote(const std::string& v) {
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
    return v;
}

}  // namespace

std::map<std::string, std::string> parse_toml_lite(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = unquote(trim(line.substr(eq + 1)));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
        out[section.empty() ? key : section + "." + key] = value;
    }
    return out;
}

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
}

Config Config::from_text(const std::string& text) {
    Config cfg;
    cfg.values_ = parse_toml_lite(text);
    cfg.validate();
    return cfg;
}

void Config::set(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw std::invalid_argument("--set expects section.key=value");
    values_[trim(assignment.substr(0, eq))] = unquote(trim(assignment.substr(eq + 1)));
}

double Config::get_double(const std::string& key, double def) const {
    auto it = values_.find(key);
    if (it == values_.end()) return def;
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size())
        throw std::invalid_argument("config: bad numeric value for " + key);
    return v;
}

int Config::get_int(const std::string& key, int def) const {
    auto it = values_.find(key);
    if (it == values_.end()) return def;
    std::size_t pos = 0;
    const int v = std::stoi(it->second, &pos);
    if (pos != it->second.size())
        throw std::invalid_argument("config: bad integer value for " + key);
    return v;
}

std::string Config::get_string(const std::string& key, const std::string& def) const {
    auto it = values_.find(key);
    return it == values_.end() ? def : it->second;
}

CutoffSchedule Config::schedule() const {
    return CutoffSchedule(beta(), theta(), epsilon(), kappa(), Lambda());
}

CutoffSchedule Config::decay_schedule() const {
    return CutoffSchedule(decay_beta(), theta(), epsilon(), kappa(), Lambda());
}

DispersionModel Config::dispersion() const {
    DispersionModel model;
    const std::string kind = dispersion_kind();
    if (kind == "free")
        model.kind = DispersionModel::Kind::Free;
    else if (kind == "renormalized_mass")
        model.kind = DispersionModel::Kind::RenormalizedMass;
    else
        throw std::invalid_argument("config: dispersion.kind must be free or renormalized_mass");
    model.m_ren = m_ren();
    model.sigma_c = sigma_c();
    model.nu_min = nu_min();
    model.nu_max = nu_max();
    return model;
}

std::string Config::canonical() const {
    // Effective values for every known key, plus any extra keys verbatim.
    std::map<std::string, std::string> eff;
    eff["model.alpha"] = format_g17(alpha());
    eff["model.Lambda"] = format_g17(Lambda());
    eff["model.kappa"] = format_g17(kappa());
    eff["schedule.beta"] = format_g17(beta());
    eff["schedule.theta"] = format_g17(theta());
    eff["schedule.epsilon"] = format_g17(epsilon());
    eff["grid.n_radial"] = std::to_string(n_radial());
    eff["grid.n_polar"] = std::to_string(n_polar());
    eff["grid.n_azimuth"] = std::to_string(n_azimuth());
    eff["dispersion.kind"] = dispersion_kind();
    eff["dispersion.m_ren"] = format_g17(m_ren());
    eff["dispersion.sigma_c"] = format_g17(sigma_c());
    eff["dispersion.nu_min"] = format_g17(nu_min());
    eff["dispersion.nu_max"] = format_g17(nu_max());
    eff["run.seed"] = std::to_string(seed());
    eff["cloud.vx"] = format_g17(cloud_velocity().x);
    eff["cloud.vy"] = format_g17(cloud_velocity().y);
    eff["cloud.vz"] = format_g17(cloud_velocity().z);
    eff["decay.t"] = format_g17(decay_t());
    eff["decay.beta"] = format_g17(decay_beta());
    eff["offdiag.rho_elec"] = format_g17(rho_elec());
    eff["offdiag.epsilon"] = format_g17(offdiag_epsilon());
    eff["refine.ratio"] = format_g17(refine_ratio());
    eff["refine.epsilon"] = format_g17(refine_epsilon());
    eff["classical.vin_x"] = format_g17(v_in().x);
    eff["classical.vin_y"] = format_g17(v_in().y);
    eff["classical.vin_z"] = format_g17(v_in().z);
    eff["classical.vout_x"] = format_g17(v_out().x);
    eff["classical.vout_y"] = format_g17(v_out().y);
    eff["classical.vout_z"] = format_g17(v_out().z);
    eff["classical.t_bar"] = format_g17(t_bar());
    for (const auto& [k, v] : values_)
        if (!eff.count(k) && k != "run.out" && k != "run.threads") eff[k] = v;
    std::string out;
    for (const auto& [k, v] : eff) {
        out += k;
        out += " = ";
        out += v;
        out += "\n";
    }
    return out;
}

std::string Config::hash() const { return fnv1a_hex(canonical()); }

void Config::validate() const {
    if (!(alpha() > 0.0)) throw std::invalid_argument("config: alpha must be > 0");
    if (!(kappa() > 0.0 && kappa() <= Lambda()))
        throw std::invalid_argument("config: need 0 < kappa <= Lambda");
    if (!(beta() > 1.0)) throw std::invalid_argument("config: beta must be > 1");
    if (!(theta() > 0.0 && theta() < 1.0))
        throw std::invalid_argument("config: theta must lie in (0, 1)");
    if (!(epsilon() > 0.0)) throw std::invalid_argument("config: epsilon must be > 0");
    if (n_radial() < 2 || n_polar() < 2 || n_azimuth() < 2)
        throw std::invalid_argument("config: grid counts must be >= 2");
    dispersion();  // validates the kind string
}

}  // namespace bnkit
