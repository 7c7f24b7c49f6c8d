#pragma once

#include <string>

#include "qcrf/corpus.hpp"
#include "qcrf/io.hpp"

namespace qcrf::testing {

inline std::string data_dir() { return QCRF_DATA_DIR; }

inline InstanceDocument instance(const std::string& name) { return load_instance(data_dir() + "/" + name + ".json"); }

inline std::vector<InstanceDocument> corpus() {
  std::vector<InstanceDocument> out;
  for (const auto& f : corpus_files(data_dir())) out.push_back(load_instance(f));
  return out;
}

}  // namespace qcrf::testing
