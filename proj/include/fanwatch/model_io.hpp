// Flat text serialization for trained models.

#ifndef FANWATCH_MODEL_IO_HPP
#define FANWATCH_MODEL_IO_HPP

#include <string>

#include "fanwatch/eval.hpp"

namespace fanwatch {

void save_model(const std::string& path, const Model& m);
Model load_model(const std::string& path);

} // namespace fanwatch

#endif
