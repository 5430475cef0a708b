#ifndef GPSCHED_CSV_HPP
#define GPSCHED_CSV_HPP

#include <string>
#include <vector>

namespace gpsched {

/// Splits one CSV line. Double-quoted fields may contain commas and
/// doubled quotes. No multi-line fields.
std::vector<std::string> split_csv_line(const std::string& line);

/// Quotes a field if it contains a comma, quote, or CR/LF.
std::string csv_escape(const std::string& field);

std::string trim(const std::string& s);

}  // namespace gpsched

#endif  // GPSCHED_CSV_HPP
