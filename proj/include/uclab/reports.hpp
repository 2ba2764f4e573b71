#ifndef UCLAB_REPORTS_HPP
#define UCLAB_REPORTS_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace uclab {

// Shortest round-trip-safe text: 17 significant digits, '.' decimal point.
std::string format_number(double value);

struct ScanRow {
    std::string kernel;
    std::string sequence;
    std::size_t K = 0;
    double p = 1.0;
    double frequency = 0.0;
    double value = 0.0;
    bool refined = false;
};

class ScanTable {
  public:
    void add(ScanRow row) { rows_.push_back(std::move(row)); }
    const std::vector<ScanRow> &rows() const { return rows_; }
    bool empty() const { return rows_.empty(); }
    // Orders rows by (sequence, K, frequency); stable for equal keys.
    void sort();
    std::string csv() const;

  private:
    std::vector<ScanRow> rows_;
};

// Generic text table read back from CSV for plotting and replay.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    bool has_column(const std::string &name) const;
    std::size_t column_index(const std::string &name) const;
    std::vector<double> numeric_column(const std::string &name) const;
    std::vector<std::string> text_column(const std::string &name) const;
    std::string csv() const;
};

CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::string &path);

std::uint64_t fnv1a64(std::string_view bytes);
std::string digest_hex(std::string_view bytes);

struct RunManifest {
    std::string command;
    std::string config_path;
    std::string config_text;
    std::map<std::string, std::string> parameters;
    std::uint64_t seed = 0;
    std::string version;
    std::string started;
    std::string finished;
    std::string status;
    // Output file name -> row count and digest of its bytes.
    std::map<std::string, std::size_t> rows;
    std::map<std::string, std::string> digests;

    std::string json() const;
    static RunManifest from_json(std::string_view text);
};

RunManifest read_manifest(const std::string &path);
std::string utc_timestamp();

enum class PlotKind { SupVsK, SVsFrequency, AURatio };

PlotKind parse_plot_kind(const std::string &name);
std::string plot_kind_name(PlotKind kind);
// Self-contained SVG; EmptyTable when the table has no rows.
std::string render_plot(const CsvTable &table, PlotKind kind);

std::string read_text_file(const std::string &path);
// Writes through a temporary file and a rename so readers never see partial output.
void write_text_file(const std::string &path, std::string_view content);

} // namespace uclab

#endif
