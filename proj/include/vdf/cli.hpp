#pragma once

#include <string>
#include <vector>

namespace vdf::cli {

struct Outcome {
  int code = 0;     // 0 ok, 2 contract or usage error, 3 parse error
  std::string out;  // one JSON report line
  std::string err;
};

/// args excludes the program name, e.g. {"ndeg", "--field", "f.json", "Y^2"}.
Outcome run(const std::vector<std::string>& args);

}  // namespace vdf::cli
