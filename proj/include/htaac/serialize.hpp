#pragma once

#include <string>

#include <json.hpp>

#include "htaac/baselines.hpp"
#include "htaac/cnf.hpp"
#include "htaac/poly.hpp"
#include "htaac/solution.hpp"
#include "htaac/sos.hpp"
#include "htaac/train.hpp"

namespace htaac {

nlohmann::json to_json(const Dyadic& d);
nlohmann::json to_json(const Assignment& y);
nlohmann::json to_json(const PolynomialObjective& obj);
nlohmann::json to_json(const TrainResult& result);
nlohmann::json to_json(const SolutionReport& report);
nlohmann::json to_json(const SosRelaxation& relax);
nlohmann::json to_json(const SdpSolution& sol, const SosResult& rounding);

/// "epoch,loss,see,fst" with one row per epoch.
std::string trajectory_csv(const TrainResult& result);

/// Deterministic text form used by every JSON writer: 2-space indent,
/// trailing newline.
std::string dump(const nlohmann::json& j);

}  // namespace htaac
