#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mvpose/camera.hpp"
#include "mvpose/estimator.hpp"
#include "mvpose/mesh.hpp"
#include "mvpose/render.hpp"
#include "mvpose/sampling.hpp"

namespace mvpose {

struct Scene {
    std::string mesh_id;
    Pose true_pose;
    CameraIntrinsics cam;
    std::uint64_t rng_seed = 0;
};

struct DatasetSpec {
    int n_samples = 200;
    int mask_dilate_max = 40;
    double bbox_jitter_px = 0.0;
    DepthRange depth;
    std::uint64_t seed = 1;

    void validate() const;
};

struct Detection {
    BBox bbox;
    Mask mask;
    int dilation = 0;
};

/// Simulated detector: dilates the rendered mask with k uniform in [0, mask_dilate_max] and
/// jitters each edge of the tight box by N(0, bbox_jitter_px), keeping at least 1 px of
/// extent inside the frame. Throws Error(EmptyMask) when nothing was rendered.
Detection simulate_detection(const RenderOutput& render, const DatasetSpec& spec, Rng& rng);

struct DatasetRecord {
    Scene scene;
    Observation observation;  ///< zoomed target with its 4:3 crop box
    BBox bbox;                ///< detection box before 4:3 expansion
    int dilation = 0;
};

/// Per-record pipeline: frustum pose, render, simulated detection, 4:3 zoom. Record i uses
/// its own stream derived from (seed, i); poses that cannot be framed are redrawn.
std::vector<DatasetRecord> generate_dataset(const TriangleMesh& mesh, const DatasetSpec& spec,
                                            const CameraIntrinsics& cam, const std::string& mesh_id = "mesh");

/// One record of the pipeline above, shared with the tracking benchmark.
DatasetRecord make_record(const TriangleMesh& mesh, const Pose& pose, const DatasetSpec& spec,
                          const CameraIntrinsics& cam, Rng& rng, const std::string& mesh_id);

/// Writes scenes.json, boxes.csv, rgb_NNNN.ppm and mask_NNNN.pgm into `dir`.
void write_dataset(const std::string& dir, const std::vector<DatasetRecord>& records);

}  // namespace mvpose
