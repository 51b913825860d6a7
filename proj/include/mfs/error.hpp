#pragma once

#include <stdexcept>
#include <string>

namespace mfs {

/// Machine-checkable failure categories for every operation in the library.
enum class Errc {
  // image loading
  missing_file,
  bad_magic,
  maxval_unsupported,
  truncated_data,
  malformed_header,
  bad_sample,
  io_error,
  // tiling
  bad_tile_spec,
  image_too_small,
  // curves
  invalid_delta_max,
  curve_too_short,
  non_positive_area,
  curve_length_mismatch,
  variant_mismatch,
  // classifier
  empty_class,
  tile_size_mismatch,
  duplicate_label,
  unknown_test_label,
  bad_model_file,
  // synthesis
  level_out_of_range,
  bad_levels,
  bad_period,
  bad_size,
  bad_hurst,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace mfs
