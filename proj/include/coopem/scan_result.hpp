#ifndef COOPEM_SCAN_RESULT_HPP
#define COOPEM_SCAN_RESULT_HPP

#include <string>
#include <vector>

namespace coopem {

// Generic parameter-scan table: one row of named columns per axis value.
// Axis is strictly monotone; rows.size() == axis.size().
struct ScanResult {
    std::string axis_name;
    std::vector<double> axis;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

} // namespace coopem

#endif
