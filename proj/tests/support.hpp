// Shared fixtures for the test binaries.
#pragma once

#include <string>

#include "atlir/io.hpp"
#include "atlir/turing.hpp"

#ifndef ATLIR_DATA_DIR
#error "ATLIR_DATA_DIR must point at data/"
#endif

namespace atlir::test {

inline TuringMachine machine(const std::string& name) {
  return load_machine(std::string(ATLIR_DATA_DIR) + "/machines/" + name + ".json");
}

}  // namespace atlir::test
