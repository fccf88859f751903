#pragma once

#include <string>
#include <vector>

#include "rhmap/synthetic.hpp"

namespace rhmap {

/// Straight drive past four building blocks while one car approaches in the
/// oncoming lane and another overtakes. 200 frames at 10 Hz.
SceneSpec urban_scene();

/// A slow car falls behind the sensor, so the cubes it leaves sit in its own
/// shadow and then in the sparse far field of the current pose.
SceneSpec residue_scene();

/// Dense 64-beam scans (about 100k returns) inside a walled street, for timing.
SceneSpec throughput_scene();

/// Looks up one of the scenes above by name ("urban", "residue", "throughput").
/// Throws std::invalid_argument for other names.
SceneSpec builtin_scene(const std::string& name);
std::vector<std::string> builtin_scene_names();

}  // namespace rhmap
