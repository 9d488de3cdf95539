#pragma once

#include <vector>

namespace qugan {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

using PointCloud = std::vector<Point2>;

}  // namespace qugan
