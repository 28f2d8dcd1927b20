#pragma once

// JSON renderings of analysis results. Every evaluated quantity is included
// so a report can be audited without re-running the computation.

#include <string>

#include "qcl/landscape.hpp"
#include "qcl/problem.hpp"
#include "qcl/scan.hpp"

namespace qcl {

std::string to_json(const TrapFreeVerdict& verdict);
std::string to_json(const SaddleProbeReport& report);
std::string to_json(const OptimizeReport& report);
std::string to_json(const ProblemVectors& pv);

}  // namespace qcl
