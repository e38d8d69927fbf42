#pragma once
// Batch experiment runner behind the `wellpath` binary. Verbs: gamma,
// gamma-mass, geodesic, annular, audit, version. Each experiment verb takes a
// JSON config path and an --out directory and writes CSV tables (with config
// hash + version provenance comments), a run_info.json, and optional field
// dumps. Errors surface as one machine-readable JSON line on stderr and the
// error's code as the process exit status.

namespace wellpath {

inline constexpr const char* kVersion = "wellpath 0.1.0";

int run_cli(int argc, char** argv);

}  // namespace wellpath
