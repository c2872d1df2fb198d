// SPDX-License-Identifier: Apache-2.0
//
// CSV/JSON writers shared by the CLI subcommands. Every output file carries
// a header block with the model spec, seed, stream count and version string.
#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "sojourn/version.hpp"

namespace sojourn::io {

struct Metadata {
  std::string model;
  std::uint64_t seed = 0;
  std::uint64_t streams = 0;
  std::string extra;  // optional "key: value" line
};

inline std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const Metadata& meta,
            const std::vector<std::string>& columns)
      : out_(path) {
    if (!out_) throw std::runtime_error("cannot open output file: " + path);
    out_ << "# sojourn " << kVersion << "\n";
    out_ << "# model: " << meta.model << "\n";
    out_ << "# seed: " << meta.seed << "\n";
    out_ << "# streams: " << meta.streams << "\n";
    if (!meta.extra.empty()) out_ << "# " << meta.extra << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out_ << columns[i] << (i + 1 < columns.size() ? "," : "\n");
    }
  }

  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      out_ << format_double(values[i]) << (i + 1 < values.size() ? "," : "\n");
    }
  }

  void row(std::uint64_t index, const std::vector<double>& values) {
    out_ << index;
    for (double v : values) out_ << ',' << format_double(v);
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

inline nlohmann::json metadata_json(const Metadata& meta) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["model"] = meta.model;
  j["seed"] = meta.seed;
  j["streams"] = meta.streams;
  return j;
}

inline void write_json(const std::string& path, const nlohmann::json& body) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << body.dump(2) << '\n';
}

}  // namespace sojourn::io
