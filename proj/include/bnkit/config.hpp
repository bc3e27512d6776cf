#ifndef BNKIT_CONFIG_HPP
#define BNKIT_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bnkit/dispersion.hpp"
#include "bnkit/softphoton.hpp"
#include "bnkit/vec3.hpp"

namespace bnkit {

/// Flat key-value view of a TOML file ("section.key" -> raw value).
/// Supported subset: comments, [section] headers, key = number|"string"|bool.
std::map<std::string, std::string> parse_toml_lite(const std::string& text);

/// Runtime configuration for the CLI and experiment runner. Values fall back
/// to the built-in defaults; every effective value participates in the
/// canonical form and hence the config hash.
class Config {
public:
    Config() = default;

    static Config from_file(const std::string& path);
    static Config from_text(const std::string& text);

    /// Apply a "section.key=value" override (--set flag).
    void set(const std::string& assignment);

    // [model]
    double alpha() const { return get_double("model.alpha", 1.0 / 137.0); }
    double Lambda() const { return get_double("model.Lambda", 1.0); }
    double kappa() const { return get_double("model.kappa", 0.5); }

    // [schedule]
    double beta() const { return get_double("schedule.beta", 1.25); }
    double theta() const { return get_double("schedule.theta", 0.8); }
    double epsilon() const { return get_double("schedule.epsilon", 0.2); }

    // [grid]
    int n_radial() const { return get_int("grid.n_radial", 64); }
    int n_polar() const { return get_int("grid.n_polar", 32); }
    int n_azimuth() const { return get_int("grid.n_azimuth", 64); }

    // [dispersion]
    std::string dispersion_kind() const { return get_string("dispersion.kind", "free"); }
    double m_ren() const { return get_double("dispersion.m_ren", 1.1); }
    double sigma_c() const { return get_double("dispersion.sigma_c", 0.0); }
    double nu_min() const { return get_double("dispersion.nu_min", 0.1); }
    double nu_max() const { return get_double("dispersion.nu_max", 1.0 / 3.0); }

    // [run]
    std::string out_dir() const { return get_string("run.out", "out"); }
    int threads() const { return get_int("run.threads", 2); }
    std::uint64_t seed() const { return static_cast<std::uint64_t>(get_int("run.seed", 12345)); }

    // [cloud]
    Vec3 cloud_velocity() const {
        return {get_double("cloud.vx", 0.3), get_double("cloud.vy", 0.0),
                get_double("cloud.vz", 0.0)};
    }

    // [decay] / [tail]: these experiments pin beta = 2 by default so two
    // decades of s fit under the freeze time.
    double decay_t() const { return get_double("decay.t", 100.0); }
    double decay_beta() const { return get_double("decay.beta", 2.0); }

    // [offdiag]
    double rho_elec() const { return get_double("offdiag.rho_elec", 1.0); }
    double offdiag_epsilon() const { return get_double("offdiag.epsilon", 0.151); }

    // [refine]: ratio and epsilon chosen so every decade of t1 refines the
    // partition by exactly one dyadic level.
    double refine_ratio() const { return get_double("refine.ratio", 10.0); }
    double refine_epsilon() const { return get_double("refine.epsilon", 0.3); }

    // [classical]
    Vec3 v_in() const {
        return {get_double("classical.vin_x", -0.2), get_double("classical.vin_y", 0.0),
                get_double("classical.vin_z", 0.0)};
    }
    Vec3 v_out() const {
        return {get_double("classical.vout_x", 0.25), get_double("classical.vout_y", 0.0),
                get_double("classical.vout_z", 0.0)};
    }
    double t_bar() const { return get_double("classical.t_bar", 1.0); }

    CutoffSchedule schedule() const;
    CutoffSchedule decay_schedule() const;  // beta overridden by decay.beta
    DispersionModel dispersion() const;

    /// Sorted "key = value" lines of the effective configuration.
    std::string canonical() const;
    /// FNV-1a hash of the canonical form, hex-encoded.
    std::string hash() const;

    void validate() const;

private:
    double get_double(const std::string& key, double def) const;
    int get_int(const std::string& key, int def) const;
    std::string get_string(const std::string& key, const std::string& def) const;

    std::map<std::string, std::string> values_;
};

}  // namespace bnkit

#endif
