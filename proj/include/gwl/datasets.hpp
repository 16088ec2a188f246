#pragma once

// Bundled benchmark datasets.
//
// aarset: 50 device failure times in hours, a classic bathtub-hazard
// benchmark. The bundled copy reproduces a widely circulated reprint whose
// entry between 72 and 79 reads 15; the original source reads 75. Both
// variants are available; the reprint ordering is the default so that
// published fit results can be reproduced exactly, and the corrected form
// is one flag away.
//
// cantareira: 83 January average inflows (m^3/s) of the Cantareira reservoir
// system, 1930-2012, an increasing-hazard benchmark.

#include <algorithm>
#include <vector>

namespace gwl {

inline std::vector<double> aarset_data(bool corrected = false) {
  std::vector<double> v = {
      0.1, 0.2, 1,  1,  1,  1,  1,  2,  3,  6,  7,  11, 12, 18, 18, 18, 18,
      18,  21,  32, 36, 40, 45, 46, 47, 50, 55, 60, 63, 63, 67, 67, 67, 67,
      72,  15,  79, 82, 82, 83, 84, 84, 84, 85, 85, 85, 85, 85, 86, 86};
  if (corrected) {
    auto it = std::find(v.begin(), v.end(), 15.0);
    if (it != v.end()) *it = 75.0;
  }
  return v;
}

inline std::vector<double> cantareira_data() {
  return {82.0,  80.9,  102.5, 65.3,  65.5, 47.1, 53.0, 139.4, 82.4,  80.2,
          92.5,  50.0,  50.4,  50.2,  36.2, 35.9, 100.0, 94.2,  78.1,  54.8,
          86.9,  80.1,  60.3,  26.9,  48.5, 51.0, 51.1,  84.5,  76.9,  69.4,
          77.3,  109.2, 55.3,  106.3, 30.5, 94.2, 87.3,  115.0, 70.0,  31.3,
          87.1,  35.9,  67.7,  55.1,  89.9, 50.1, 52.6,  82.0,  54.1,  44.3,
          69.2,  94.4,  83.4,  122.7, 88.1, 73.3, 35.9,  82.4,  64.9,  90.8,
          80.4,  55.3,  31.4,  45.7,  43.6, 45.8, 96.8,  85.8,  43.6,  122.3,
          66.5,  41.0,  75.4,  79.4,  34.8, 78.8, 52.4,  77.1,  47.0,  67.4,
          132.8, 144.9, 64.1};
}

}  // namespace gwl
