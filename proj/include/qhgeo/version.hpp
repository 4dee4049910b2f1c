#pragma once

namespace qhgeo {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchemaVersion = "1";

}  // namespace qhgeo
