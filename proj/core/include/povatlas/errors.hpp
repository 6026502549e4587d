#pragma once

#include <stdexcept>

namespace povatlas {

// Failure modes surfaced to callers. The command-line tool maps ConfigError
// to exit code 2 and the artifact errors to exit code 3.

struct SingularConfiguration : std::runtime_error { using std::runtime_error::runtime_error; };
struct DisjointManifold : std::runtime_error { using std::runtime_error::runtime_error; };
struct NonClosure : std::runtime_error { using std::runtime_error::runtime_error; };
struct DegenerateSource : std::runtime_error { using std::runtime_error::runtime_error; };
struct DegenerateInput : std::runtime_error { using std::runtime_error::runtime_error; };
struct DimensionMismatch : std::runtime_error { using std::runtime_error::runtime_error; };
struct Unreachable : std::runtime_error { using std::runtime_error::runtime_error; };
struct ConfigError : std::runtime_error { using std::runtime_error::runtime_error; };
struct MissingStage : std::runtime_error { using std::runtime_error::runtime_error; };
struct MissingArtifact : std::runtime_error { using std::runtime_error::runtime_error; };
struct CorruptArtifact : std::runtime_error { using std::runtime_error::runtime_error; };

}  // namespace povatlas
