#include "mvpose/experiment.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mvpose/error.hpp"

namespace mvpose {

namespace {

using nlohmann::json;

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

std::string threshold_key(double n) {
    std::ostringstream ss;
    ss << n;
    return ss.str();
}

}  // namespace

void ExperimentConfig::validate() const {
    try {
        cam.validate();
        noise.validate();
        refinement.validate();
        tracker_config().validate();
        dataset.validate();
    } catch (const Error& e) {
        throw Error(ErrorCode::ConfigError, e.what());
    }
    if (meshes.empty()) throw Error(ErrorCode::ConfigError, "config lists no meshes");
    for (const auto& m : meshes) {
        if (m.path.rfind("builtin:", 0) != 0 && !std::filesystem::exists(m.path)) {
            throw Error(ErrorCode::ConfigError, "mesh file not found: " + m.path);
        }
        if (!(m.scale > 0.0)) throw Error(ErrorCode::ConfigError, "mesh scale must be > 0");
    }
    if (thresholds.empty()) throw Error(ErrorCode::ConfigError, "no accuracy thresholds");
    for (double n : thresholds) {
        if (!(n > 0.0)) throw Error(ErrorCode::ConfigError, "accuracy thresholds must be > 0");
    }
    if (!(depth_prior.z_min > 0.0) || depth_prior.z_max < depth_prior.z_min) {
        throw Error(ErrorCode::ConfigError, "depth_prior needs 0 < z_min <= z_max");
    }
    if (trajectory.n_frames < 1) throw Error(ErrorCode::ConfigError, "trajectory.n_frames must be >= 1");
    if (standardization) standardization->validate();
}

TrackerConfig ExperimentConfig::tracker_config() const {
    TrackerConfig t = tracker;
    t.refinement = refinement;
    t.depth_prior = depth_prior;
    return t;
}

void ExperimentConfig::override_seed(std::uint64_t seed) {
    dataset.seed = seed;
    noise.seed = seed;
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text, const std::string& base_dir) {
    ExperimentConfig cfg;
    try {
        const json j = json::parse(text);
        read_opt(j, "name", cfg.name);
        if (j.contains("meshes")) {
            cfg.meshes.clear();
            for (const auto& m : j.at("meshes")) {
                MeshEntry e;
                if (m.is_string()) {
                    e.path = m.get<std::string>();
                } else {
                    e.path = m.at("path").get<std::string>();
                    read_opt(m, "scale", e.scale);
                    read_opt(m, "id", e.id);
                }
                if (e.id.empty()) {
                    e.id = e.path.rfind("builtin:", 0) == 0 ? e.path.substr(8)
                                                            : std::filesystem::path(e.path).stem().string();
                }
                if (e.path.rfind("builtin:", 0) != 0 && std::filesystem::path(e.path).is_relative()) {
                    e.path = (std::filesystem::path(base_dir) / e.path).lexically_normal().string();
                }
                cfg.meshes.push_back(e);
            }
        }
        if (j.contains("camera")) {
            const auto& c = j.at("camera");
            read_opt(c, "fx", cfg.cam.fx);
            read_opt(c, "fy", cfg.cam.fy);
            read_opt(c, "px", cfg.cam.px);
            read_opt(c, "py", cfg.cam.py);
            read_opt(c, "width", cfg.cam.width);
            read_opt(c, "height", cfg.cam.height);
        }
        if (j.contains("estimator")) {
            const auto& e = j.at("estimator");
            read_opt(e, "name", cfg.estimator);
            if (e.contains("noise")) {
                const auto& n = e.at("noise");
                read_opt(n, "gamma", cfg.noise.gamma);
                read_opt(n, "sigma_rot_deg", cfg.noise.sigma_rot_deg);
                read_opt(n, "sigma_trans_m", cfg.noise.sigma_trans_m);
                read_opt(n, "sigma_theta_deg", cfg.noise.sigma_theta_deg);
                read_opt(n, "proportional", cfg.noise.proportional);
                read_opt(n, "seed", cfg.noise.seed);
            }
        }
        if (j.contains("refinement")) {
            read_opt(j.at("refinement"), "t_ref_deg", cfg.refinement.t_ref_deg);
            read_opt(j.at("refinement"), "max_iters", cfg.refinement.max_iters);
        }
        if (j.contains("tracker")) {
            read_opt(j.at("tracker"), "t_low_deg", cfg.tracker.t_low_deg);
            read_opt(j.at("tracker"), "t_high_deg", cfg.tracker.t_high_deg);
        }
        if (j.contains("depth_prior")) {
            read_opt(j.at("depth_prior"), "z_min", cfg.depth_prior.z_min);
            read_opt(j.at("depth_prior"), "z_max", cfg.depth_prior.z_max);
        }
        if (j.contains("dataset")) {
            const auto& d = j.at("dataset");
            read_opt(d, "n_samples", cfg.dataset.n_samples);
            read_opt(d, "mask_dilate_max", cfg.dataset.mask_dilate_max);
            read_opt(d, "bbox_jitter_px", cfg.dataset.bbox_jitter_px);
            read_opt(d, "seed", cfg.dataset.seed);
            if (d.contains("depth_range")) {
                const auto r = d.at("depth_range").get<std::vector<double>>();
                if (r.size() != 2) throw Error(ErrorCode::ConfigError, "dataset.depth_range needs [z_min, z_max]");
                cfg.dataset.depth = {r[0], r[1]};
            }
        }
        cfg.trajectory.depth = cfg.dataset.depth;
        if (j.contains("trajectory")) {
            const auto& t = j.at("trajectory");
            read_opt(t, "n_frames", cfg.trajectory.n_frames);
            read_opt(t, "max_step_deg", cfg.trajectory.max_step_deg);
            read_opt(t, "max_step_m", cfg.trajectory.max_step_m);
            if (t.contains("discontinuities")) {
                for (const auto& d : t.at("discontinuities")) {
                    cfg.trajectory.discontinuities.push_back({d.at(0).get<int>(), d.at(1).get<double>()});
                }
            }
        }
        read_opt(j, "thresholds", cfg.thresholds);
        if (j.contains("baselines")) {
            for (const auto& b : j.at("baselines")) {
                BaselineRow row;
                row.name = b.at("name").get<std::string>();
                for (const auto& [k, v] : b.at("accuracy").items()) row.accuracy[std::stod(k)] = v.get<double>();
                cfg.baselines.push_back(row);
            }
        }
        if (j.contains("standardization")) {
            cfg.standardization = StandardizationStats::from_json(j.at("standardization").dump());
        }
        read_opt(j, "output_dir", cfg.output_dir);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ConfigError, e.what());
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error(ErrorCode::IoError, "cannot open config " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    const auto base = std::filesystem::path(path).parent_path();
    return from_json(ss.str(), base.empty() ? "." : base.string());
}

std::string ExperimentConfig::to_json() const {
    json j;
    j["name"] = name;
    j["meshes"] = json::array();
    for (const auto& m : meshes) j["meshes"].push_back({{"id", m.id}, {"path", m.path}, {"scale", m.scale}});
    j["camera"] = {{"fx", cam.fx}, {"fy", cam.fy}, {"px", cam.px}, {"py", cam.py}, {"width", cam.width},
                   {"height", cam.height}};
    j["estimator"] = {{"name", estimator},
                      {"noise",
                       {{"gamma", noise.gamma},
                        {"sigma_rot_deg", noise.sigma_rot_deg},
                        {"sigma_trans_m", noise.sigma_trans_m},
                        {"sigma_theta_deg", noise.sigma_theta_deg},
                        {"proportional", noise.proportional},
                        {"seed", noise.seed}}}};
    j["refinement"] = {{"t_ref_deg", refinement.t_ref_deg}, {"max_iters", refinement.max_iters}};
    j["tracker"] = {{"t_low_deg", tracker.t_low_deg}, {"t_high_deg", tracker.t_high_deg}};
    j["depth_prior"] = {{"z_min", depth_prior.z_min}, {"z_max", depth_prior.z_max}};
    j["dataset"] = {{"n_samples", dataset.n_samples},
                    {"mask_dilate_max", dataset.mask_dilate_max},
                    {"bbox_jitter_px", dataset.bbox_jitter_px},
                    {"depth_range", {dataset.depth.z_min, dataset.depth.z_max}},
                    {"seed", dataset.seed}};
    json disc = json::array();
    for (const auto& d : trajectory.discontinuities) disc.push_back({d.frame, d.jump_deg});
    j["trajectory"] = {{"n_frames", trajectory.n_frames},
                       {"max_step_deg", trajectory.max_step_deg},
                       {"max_step_m", trajectory.max_step_m},
                       {"discontinuities", disc}};
    j["thresholds"] = thresholds;
    j["baselines"] = json::array();
    for (const auto& b : baselines) {
        json acc = json::object();
        for (const auto& [n, v] : b.accuracy) acc[threshold_key(n)] = v;
        j["baselines"].push_back({{"name", b.name}, {"accuracy", acc}});
    }
    if (standardization) j["standardization"] = json::parse(standardization->to_json());
    j["output_dir"] = output_dir;
    return j.dump(2);
}

std::string ExperimentConfig::digest() const {
    json j = json::parse(to_json());
    j.erase("output_dir");
    const std::string text = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace mvpose
