#include "mvpose/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "mvpose/error.hpp"
#include "mvpose/raster_io.hpp"
#include "mvpose/zoom.hpp"

namespace mvpose {

void DatasetSpec::validate() const {
    if (n_samples < 1) throw Error(ErrorCode::InvalidArgument, "n_samples must be >= 1");
    if (mask_dilate_max < 0) throw Error(ErrorCode::InvalidArgument, "mask_dilate_max must be >= 0");
    if (!(bbox_jitter_px >= 0.0)) throw Error(ErrorCode::InvalidArgument, "bbox_jitter_px must be >= 0");
    if (!(depth.z_min > 0.0) || depth.z_max < depth.z_min) {
        throw Error(ErrorCode::InvalidArgument, "depth range needs 0 < z_min <= z_max");
    }
}

Detection simulate_detection(const RenderOutput& render, const DatasetSpec& spec, Rng& rng) {
    const BBox tight = bbox_from_mask(render.mask);
    Detection det;
    det.dilation = static_cast<int>(rng.uniform_int(0, spec.mask_dilate_max));
    det.mask = dilate_mask(render.mask, det.dilation);

    const double W = render.mask.width();
    const double H = render.mask.height();
    double x0 = tight.x, y0 = tight.y, x1 = tight.x1(), y1 = tight.y1();
    if (spec.bbox_jitter_px > 0.0) {
        x0 += rng.normal(0.0, spec.bbox_jitter_px);
        y0 += rng.normal(0.0, spec.bbox_jitter_px);
        x1 += rng.normal(0.0, spec.bbox_jitter_px);
        y1 += rng.normal(0.0, spec.bbox_jitter_px);
    }
    x0 = std::clamp(x0, 0.0, W - 1.0);
    y0 = std::clamp(y0, 0.0, H - 1.0);
    x1 = std::clamp(x1, x0 + 1.0, W);
    y1 = std::clamp(y1, y0 + 1.0, H);
    det.bbox = {x0, y0, x1 - x0, y1 - y0};
    return det;
}

DatasetRecord make_record(const TriangleMesh& mesh, const Pose& pose, const DatasetSpec& spec,
                          const CameraIntrinsics& cam, Rng& rng, const std::string& mesh_id) {
    const RenderOutput r = render(mesh, pose, cam);
    Detection det = simulate_detection(r, spec, rng);
    const BBox crop = expand_bbox_to_ratio(det.bbox, cam.width, cam.height);

    DatasetRecord rec;
    rec.scene = {mesh_id, pose, cam, 0};
    rec.observation = make_observation(r.rgb, det.mask, crop);
    rec.bbox = det.bbox;
    rec.dilation = det.dilation;
    return rec;
}

std::vector<DatasetRecord> generate_dataset(const TriangleMesh& mesh, const DatasetSpec& spec,
                                            const CameraIntrinsics& cam, const std::string& mesh_id) {
    spec.validate();
    cam.validate();
    constexpr int kMaxAttempts = 100;
    std::vector<DatasetRecord> records;
    records.reserve(static_cast<std::size_t>(spec.n_samples));
    for (int i = 0; i < spec.n_samples; ++i) {
        for (int attempt = 0;; ++attempt) {
            const std::uint64_t seed = derive_seed(spec.seed, {static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(attempt)});
            Rng rng(seed);
            const Pose pose = sample_pose_in_frustum(cam, spec.depth, mesh, rng);
            try {
                DatasetRecord rec = make_record(mesh, pose, spec, cam, rng, mesh_id);
                rec.scene.rng_seed = seed;
                records.push_back(std::move(rec));
                break;
            } catch (const Error& e) {
                const bool retry = e.code() == ErrorCode::BBoxLargerThanImage || e.code() == ErrorCode::EmptyMask;
                if (!retry || attempt + 1 >= kMaxAttempts) throw;
            }
        }
    }
    return records;
}

namespace {

nlohmann::json pose_json(const Pose& p) {
    return {{"q", p.rotation.as_array()}, {"t", {p.translation.x, p.translation.y, p.translation.z}}};
}

nlohmann::json camera_json(const CameraIntrinsics& c) {
    return {{"fx", c.fx}, {"fy", c.fy}, {"px", c.px}, {"py", c.py}, {"width", c.width}, {"height", c.height}};
}

std::string indexed(const char* prefix, std::size_t i, const char* ext) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s_%04zu.%s", prefix, i, ext);
    return buf;
}

}  // namespace

void write_dataset(const std::string& dir, const std::vector<DatasetRecord>& records) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);

    nlohmann::json scenes = nlohmann::json::array();
    std::ofstream boxes(fs::path(dir) / "boxes.csv");
    if (!boxes) throw Error(ErrorCode::IoError, "cannot write " + dir + "/boxes.csv");
    boxes << "index,x,y,w,h,crop_x,crop_y,crop_w,crop_h,dilation\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const DatasetRecord& r = records[i];
        scenes.push_back({{"index", i},
                          {"mesh_id", r.scene.mesh_id},
                          {"pose", pose_json(r.scene.true_pose)},
                          {"cam", camera_json(r.scene.cam)},
                          {"rng_seed", r.scene.rng_seed},
                          {"rgb", indexed("rgb", i, "ppm")},
                          {"mask", indexed("mask", i, "pgm")}});
        boxes << i << ',' << bbox_to_csv(r.bbox) << ',' << bbox_to_csv(r.observation.crop) << ',' << r.dilation << '\n';
        write_ppm((fs::path(dir) / indexed("rgb", i, "ppm")).string(), r.observation.rgb);
        write_pgm((fs::path(dir) / indexed("mask", i, "pgm")).string(), r.observation.mask);
    }
    std::ofstream js(fs::path(dir) / "scenes.json");
    if (!js) throw Error(ErrorCode::IoError, "cannot write " + dir + "/scenes.json");
    js << scenes.dump(2) << '\n';
}

}  // namespace mvpose
