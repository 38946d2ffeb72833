#pragma once

#include <filesystem>
#include <type_traits>
#include <string>
#include <vector>

#include <json.hpp>

namespace alps {

/// Writes a header line and rows of preformatted cells. Lines starting with
/// '#' carry the run tag (config hash and seed).
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header,
            const std::vector<std::string>& comments = {});
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  template <class... Ts>
  void row(const Ts&... cells) {
    std::vector<std::string> v;
    (v.push_back(cell(cells)), ...);
    write(v);
  }
  void write(const std::vector<std::string>& cells);

  static std::string cell(double v);
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const char* v) { return v; }
  static std::string cell(bool v) { return v ? "1" : "0"; }
  template <class I>
    requires std::is_integral_v<I>
  static std::string cell(I v) { return std::to_string(v); }

 private:
  struct Impl;
  Impl* impl_;
};

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

struct SvgSeries {
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  bool points = false;  // dots instead of a polyline
};

/// Minimal line/scatter plot with axes and tick labels.
void write_svg_plot(const std::filesystem::path& path, const std::vector<SvgSeries>& series,
                    const std::string& title, const std::string& xlabel, const std::string& ylabel);

}  // namespace alps
