#include "mfs/error.hpp"

namespace mfs {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::missing_file: return "missing_file";
    case Errc::bad_magic: return "bad_magic";
    case Errc::maxval_unsupported: return "maxval_unsupported";
    case Errc::truncated_data: return "truncated_data";
    case Errc::malformed_header: return "malformed_header";
    case Errc::bad_sample: return "bad_sample";
    case Errc::io_error: return "io_error";
    case Errc::bad_tile_spec: return "bad_tile_spec";
    case Errc::image_too_small: return "image_too_small";
    case Errc::invalid_delta_max: return "invalid_delta_max";
    case Errc::curve_too_short: return "curve_too_short";
    case Errc::non_positive_area: return "non_positive_area";
    case Errc::curve_length_mismatch: return "curve_length_mismatch";
    case Errc::variant_mismatch: return "variant_mismatch";
    case Errc::empty_class: return "empty_class";
    case Errc::tile_size_mismatch: return "tile_size_mismatch";
    case Errc::duplicate_label: return "duplicate_label";
    case Errc::unknown_test_label: return "unknown_test_label";
    case Errc::bad_model_file: return "bad_model_file";
    case Errc::level_out_of_range: return "level_out_of_range";
    case Errc::bad_levels: return "bad_levels";
    case Errc::bad_period: return "bad_period";
    case Errc::bad_size: return "bad_size";
    case Errc::bad_hurst: return "bad_hurst";
  }
  return "unknown";
}

}  // namespace mfs
