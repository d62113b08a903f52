#pragma once

#include <string>

#include <json.hpp>

#include "genbounds/avgjoint/learner.hpp"
#include "genbounds/bounds/bounds.hpp"
#include "genbounds/measures/discrete_dist.hpp"
#include "genbounds/measures/joint_table.hpp"

namespace genbounds::io {

// insertion-ordered documents keep artifacts byte-stable
using Json = nlohmann::ordered_json;

Json to_json(const measures::DiscreteDist& d);
measures::DiscreteDist dist_from_json(const Json& j);

Json to_json(const measures::JointTable& t);
measures::JointTable joint_from_json(const Json& j);

Json to_json(const avgjoint::LearnerSpec& learner);
avgjoint::LearnerSpec learner_from_json(const Json& j, avgjoint::SizeCaps caps = {});

Json to_json(const avgjoint::LossTable& loss);
avgjoint::LossTable loss_from_json(const Json& j);

Json to_json(const bounds::BoundReport& report);

Json parse_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace genbounds::io
