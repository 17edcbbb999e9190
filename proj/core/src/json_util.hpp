#ifndef BWSHARE_SRC_JSON_UTIL_HPP_
#define BWSHARE_SRC_JSON_UTIL_HPP_

#include <json.hpp>

#include "bwshare/arrivals.hpp"
#include "bwshare/model.hpp"

namespace bwshare::detail {

nlohmann::json system_to_json(const SystemConfig& cfg);
nlohmann::json models_to_json(const PerRegion<ArrivalModel>& models);

}  // namespace bwshare::detail

#endif  // BWSHARE_SRC_JSON_UTIL_HPP_
