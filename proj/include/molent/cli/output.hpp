#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "molent/scenarios.hpp"
#include "molent/zeno.hpp"

namespace molent::cli {

/// 17 significant digits, "nan"/"inf" for non-finite values.
std::string format_number(double v);

/// Header "t_s,<observables...>", one row per sample, LF line ends.
void write_csv(const ObservableTable& table, std::ostream& out);

/// Writes to `path`, or stdout for "-". Throws IoError.
void write_csv_file(const ObservableTable& table, const std::string& path);

/// Zeno survival table: t_s,survival,survival_gamma0,exact,gaussian with a
/// t = 0 row of ones first.
struct ZenoRow {
    double t;
    double survival;
    double survival_gamma0;
    double exact;
    double gaussian;
};
void write_zeno_csv(const std::vector<ZenoRow>& rows, std::ostream& out);
void write_zeno_csv_file(const std::vector<ZenoRow>& rows, const std::string& path);

/// Concurrence maxima as t_s,C,pop_p,pop_s,pop_a,pop_q,re_p,im_p,...
void write_maxima_csv(const std::vector<ConcurrenceMaximum>& maxima, const std::string& path);

/// Writes `text` to `path` (or stdout for "-"). Throws IoError.
void write_text_file(const std::string& text, const std::string& path);

/// Path of one sweep point: "<stem>.<param>_<value>.csv".
std::string sweep_point_path(const std::string& out, std::string_view param, double value);

/// Known figure ids in a fixed order.
const std::vector<std::string>& figure_ids();

/// gnuplot script for `figure` reading `csv_paths`. Throws InvalidArgument for
/// an unknown id (listing the known ones) and IoError for a missing CSV.
std::string plot_script(const std::string& figure, const std::vector<std::string>& csv_paths);

}  // namespace molent::cli
