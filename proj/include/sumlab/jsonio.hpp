#ifndef SUMLAB_JSONIO_HPP
#define SUMLAB_JSONIO_HPP

#include <string>

#include <json.hpp>

#include "sumlab/common.hpp"
#include "sumlab/ergodic.hpp"
#include "sumlab/fourier.hpp"
#include "sumlab/linalg.hpp"
#include "sumlab/maximal.hpp"
#include "sumlab/metricgeo.hpp"
#include "sumlab/operators.hpp"
#include "sumlab/report.hpp"
#include "sumlab/series.hpp"

namespace sumlab {

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using json = nlohmann::json;

// complex values accept [re, im] or {"re":..,"im":..}
cplx complex_from_json(const json& j);

json vector_to_json(const cvector& v); // [[re,im],...]
cvector vector_from_json(const json& j);

// {"kind":"geometric","a":{"re":..,"im":..}} | {"kind":"list","terms":[[re,im],...]}
// | {"kind":"weighted-geometric","a":..,"degree":d} | {"kind":"custom","rule":id}
json series_to_json(const SeriesSpec& s);
SeriesSpec series_from_json(const json& j);

json matrix_to_json(const Matrix& m); // row-major [[[re,im],...],...]
Matrix matrix_from_json(const json& j);

json convex_to_json(const ConvexSpec& c);
ConvexSpec convex_from_json(const json& j);

json shift_system_to_json(const ShiftSystem& s);
ShiftSystem shift_system_from_json(const json& j);

json finite_system_to_json(const FiniteSystem& s);
FiniteSystem finite_system_from_json(const json& j);

json ultrametric_space_to_json(const UltrametricSpace& s);
UltrametricSpace ultrametric_space_from_json(const json& j);

json report_to_json(const Report& r);
json summability_report_to_json(const SummabilityReport& r);
json spectral_report_to_json(const SpectralReport& r);

/// 17 significant digits, for CSV round-trip fidelity.
std::string format_double(double v);

std::string grid_function_to_csv(const GridFunction& f); // rows j,re,im
GridFunction grid_function_from_csv(const std::string& text);

std::string circle_function_to_csv(const SampledCircleFunction& f); // theta,re,im
std::string table_to_csv(const Table& t);

/// Write-then-rename; throws io_error on failure.
void write_text_atomic(const std::string& path, const std::string& content);

std::string read_text(const std::string& path);

} // namespace sumlab

#endif
