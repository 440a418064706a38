#pragma once

#include "ksproof/io.hpp"

#include <string>

#ifndef KSPROOF_FIXTURE_DIR
#error "KSPROOF_FIXTURE_DIR must point at the bundled fixtures"
#endif

namespace fixtures {

inline std::string path(const std::string & name) { return std::string(KSPROOF_FIXTURE_DIR) + "/" + name; }

inline std::vector<ksproof::Ray> load(const std::string & name) { return ksproof::load_rayset(path(name)).rays; }

inline std::vector<ksproof::Ray> tetrahedron() { return load("tetrahedron.json"); }
inline std::vector<ksproof::Ray> nine_omega() { return load("nine-omega.json"); }
inline std::vector<ksproof::Ray> clifton_pair() { return load("clifton-pair.json"); }

} // namespace fixtures
