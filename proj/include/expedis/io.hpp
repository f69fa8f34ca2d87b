#pragma once

#include <string>

#include "expedis/model.hpp"
#include "expedis/transform.hpp"

namespace expedis {

enum class FileFormat { Native, Json };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Native text format:
///   line 1: "n m", then triplet lines
///   "F i j v"  objective quadratic (1-based, upper triangle)
///   "c i v"    objective linear
///   "A r j v"  constraint coefficient
///   "b r v"    right-hand side
/// '#' starts a comment. Unlisted entries are zero.
Bqp01Instance read_instance(const std::string& path,
                            FileFormat format = FileFormat::Native);
void write_instance(const Bqp01Instance& p, const std::string& path,
                    FileFormat format = FileFormat::Native);

/// Same formats via strings (testing and piping).
Bqp01Instance parse_instance(const std::string& text, FileFormat format);
std::string format_instance(const Bqp01Instance& p, FileFormat format);

struct MaxCutExport {
  bool scaled = false;
  double scale = 1.0;       // power of 2, <= 4096
  bool scale_failed = false;  // wanted integers but no scale fit the cap
};

/// Edge list: "V E" then "i j w" (1-based); the additive constant and
/// any scale factor go into '#' header comments.
MaxCutExport export_maxcut(const MaxCutInstance& g, const std::string& path,
                           bool scale_to_integer);
MaxCutInstance import_maxcut(const std::string& path);

}  // namespace expedis
