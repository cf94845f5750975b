#pragma once

namespace spencer {

/* Artifact version embedded in every emitted report. */
inline constexpr const char* kArtifactVersion = "1.0.0";

}  // namespace spencer
