#pragma once

namespace qdeco {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qdeco
