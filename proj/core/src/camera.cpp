#include "mvpose/camera.hpp"

#include <cmath>

#include "mvpose/error.hpp"

namespace mvpose {

void CameraIntrinsics::validate() const {
    if (!(fx > 0.0) || !(fy > 0.0) || !std::isfinite(px) || !std::isfinite(py)) {
        throw Error(ErrorCode::InvalidArgument, "camera focal lengths must be positive");
    }
    if (width <= 0 || height <= 0) throw Error(ErrorCode::InvalidArgument, "camera size must be positive");
}

}  // namespace mvpose
