#include "uclab/reports.hpp"

#include "uclab/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <tuple>

namespace uclab {

std::string format_number(double value) {
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

void ScanTable::sort() {
    std::stable_sort(rows_.begin(), rows_.end(), [](const ScanRow &a, const ScanRow &b) {
        return std::tie(a.sequence, a.K, a.frequency) < std::tie(b.sequence, b.K, b.frequency);
    });
}

namespace {

// Fields may be quoted with "" escapes; ids such as "measure-power[0:0.5,1:0.5]" contain commas.
std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    out.push_back(std::move(field));
    return out;
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

} // namespace

std::string ScanTable::csv() const {
    std::string out = "kernel,sequence,K,p,frequency,value,refined\n";
    for (const auto &r : rows_) {
        out += csv_field(r.kernel) + ',' + csv_field(r.sequence) + ',' + std::to_string(r.K) + ',' + format_number(r.p) + ',' +
               format_number(r.frequency) + ',' + format_number(r.value) + ',' + (r.refined ? "1" : "0") + '\n';
    }
    return out;
}

bool CsvTable::has_column(const std::string &name) const {
    return std::find(header.begin(), header.end(), name) != header.end();
}

std::size_t CsvTable::column_index(const std::string &name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
        throw MissingEntry("no column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
}

std::vector<double> CsvTable::numeric_column(const std::string &name) const {
    const auto i = column_index(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto &row : rows) {
        const std::string &cell = row.at(i);
        char *end = nullptr;
        const double v = std::strtod(cell.c_str(), &end);
        if (cell.empty() || end != cell.c_str() + cell.size())
            throw BadParameter("column '" + name + "' holds non-numeric value '" + cell + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<std::string> CsvTable::text_column(const std::string &name) const {
    const auto i = column_index(name);
    std::vector<std::string> out;
    for (const auto &row : rows)
        out.push_back(row.at(i));
    return out;
}

std::string CsvTable::csv() const {
    auto line = [](const std::vector<std::string> &cells) {
        std::string out;
        for (std::size_t i = 0; i < cells.size(); ++i)
            out += (i ? "," : "") + csv_field(cells[i]);
        return out + '\n';
    };
    std::string out = line(header);
    for (const auto &row : rows)
        out += line(row);
    return out;
}

CsvTable parse_csv(std::string_view text) {
    CsvTable table;
    std::stringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r")
            continue;
        auto cells = split_csv_line(line);
        if (table.header.empty()) {
            table.header = std::move(cells);
            continue;
        }
        if (cells.size() != table.header.size())
            throw BadParameter("CSV row has " + std::to_string(cells.size()) + " cells, header has " +
                               std::to_string(table.header.size()));
        table.rows.push_back(std::move(cells));
    }
    return table;
}

CsvTable read_csv(const std::string &path) { return parse_csv(read_text_file(path)); }

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string digest_hex(std::string_view bytes) {
    char buffer[17];
    std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    return buffer;
}

std::string RunManifest::json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["config_path"] = config_path;
    j["config_text"] = config_text;
    j["parameters"] = parameters;
    j["seed"] = seed;
    j["version"] = version;
    j["started"] = started;
    j["finished"] = finished;
    nlohmann::ordered_json outcome;
    outcome["status"] = status;
    outcome["rows"] = rows;
    outcome["digests"] = digests;
    j["outcome"] = outcome;
    return j.dump(2) + '\n';
}

RunManifest RunManifest::from_json(std::string_view text) {
    RunManifest m;
    try {
        const auto j = nlohmann::json::parse(text);
        m.command = j.at("command").get<std::string>();
        m.config_path = j.value("config_path", "");
        m.config_text = j.at("config_text").get<std::string>();
        m.parameters = j.value("parameters", std::map<std::string, std::string>{});
        m.seed = j.at("seed").get<std::uint64_t>();
        m.version = j.at("version").get<std::string>();
        m.started = j.value("started", "");
        m.finished = j.value("finished", "");
        const auto &outcome = j.at("outcome");
        m.status = outcome.at("status").get<std::string>();
        m.rows = outcome.at("rows").get<std::map<std::string, std::size_t>>();
        m.digests = outcome.at("digests").get<std::map<std::string, std::string>>();
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(0, "manifest", e.what());
    }
    return m;
}

RunManifest read_manifest(const std::string &path) { return RunManifest::from_json(read_text_file(path)); }

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

PlotKind parse_plot_kind(const std::string &name) {
    if (name == "sup-vs-K")
        return PlotKind::SupVsK;
    if (name == "S-vs-frequency")
        return PlotKind::SVsFrequency;
    if (name == "AU-ratio")
        return PlotKind::AURatio;
    throw BadParameter("unknown plot kind '" + name + "'");
}

std::string plot_kind_name(PlotKind kind) {
    switch (kind) {
    case PlotKind::SupVsK:
        return "sup-vs-K";
    case PlotKind::SVsFrequency:
        return "S-vs-frequency";
    case PlotKind::AURatio:
        return "AU-ratio";
    }
    return "";
}

namespace {

struct Axis {
    std::string label;
    double lo = 0.0;
    double hi = 1.0;
    bool log = false;

    double fraction(double v) const {
        if (log)
            return (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo));
        return (v - lo) / (hi - lo);
    }
};

Axis make_axis(std::string label, const std::vector<double> &values) {
    Axis axis;
    axis.label = std::move(label);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    double pos_lo = lo;
    for (double v : values) {
        if (!std::isfinite(v))
            continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        if (v > 0.0)
            pos_lo = std::min(pos_lo, v);
    }
    if (!std::isfinite(lo)) {
        lo = 0.0;
        hi = 1.0;
    }
    axis.log = lo > 0.0 && hi / lo > 100.0;
    if (axis.log) {
        axis.lo = std::pow(10.0, std::floor(std::log10(pos_lo)));
        axis.hi = std::pow(10.0, std::ceil(std::log10(hi)));
    } else if (hi == lo) {
        const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.5;
        axis.lo = lo - pad;
        axis.hi = hi + pad;
    } else {
        const double pad = 0.05 * (hi - lo);
        axis.lo = lo - pad;
        axis.hi = hi + pad;
    }
    return axis;
}

std::vector<double> ticks(const Axis &axis) {
    std::vector<double> out;
    if (axis.log) {
        for (double v = axis.lo; v <= axis.hi * 1.0000001; v *= 10.0)
            out.push_back(v);
        return out;
    }
    for (int i = 0; i <= 5; ++i)
        out.push_back(axis.lo + (axis.hi - axis.lo) * i / 5.0);
    return out;
}

std::string tick_label(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.4g", v);
    return buffer;
}

std::string xml_escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '&':
            out += "&amp;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

constexpr const char *kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

} // namespace

std::string render_plot(const CsvTable &table, PlotKind kind) {
    if (table.rows.empty())
        throw EmptyTable("nothing to plot");
    std::string x_name, y_name, group_name;
    bool lines = true;
    switch (kind) {
    case PlotKind::SupVsK:
        x_name = "K", y_name = "value", group_name = "sequence";
        break;
    case PlotKind::SVsFrequency:
        x_name = "frequency", y_name = "value", group_name = "K", lines = false;
        break;
    case PlotKind::AURatio:
        x_name = "k", y_name = "ratio", group_name = "name";
        break;
    }
    const auto xs = table.numeric_column(x_name);
    const auto ys = table.numeric_column(y_name);
    const auto groups = table.has_column(group_name) ? table.text_column(group_name)
                                                     : std::vector<std::string>(xs.size(), y_name);

    std::vector<Series> series;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        auto it = std::find_if(series.begin(), series.end(), [&](const Series &s) { return s.name == groups[i]; });
        if (it == series.end()) {
            series.push_back({groups[i], {}});
            it = series.end() - 1;
        }
        it->points.emplace_back(xs[i], ys[i]);
    }
    for (auto &s : series)
        std::sort(s.points.begin(), s.points.end());

    const Axis x = make_axis(x_name, xs), y = make_axis(y_name, ys);
    constexpr double width = 640, height = 420, left = 70, right = 20, top = 30, bottom = 50;
    const double plot_w = width - left - right, plot_h = height - top - bottom;
    auto px = [&](double v) { return left + plot_w * x.fraction(v); };
    auto py = [&](double v) { return top + plot_h * (1.0 - y.fraction(v)); };
    auto visible = [&](double vx, double vy) {
        return std::isfinite(vx) && std::isfinite(vy) && (!x.log || vx > 0.0) && (!y.log || vy > 0.0);
    };

    std::ostringstream svg;
    char buf[160];
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    svg << "<title>" << xml_escape(plot_kind_name(kind)) << "</title>\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf, "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" stroke=\"black\"/>\n",
                  left, top, plot_w, plot_h);
    svg << buf;
    for (double t : ticks(x)) {
        std::snprintf(buf, sizeof buf, "<line x1=\"%.2f\" y1=\"%.1f\" x2=\"%.2f\" y2=\"%.1f\" stroke=\"#ccc\"/>\n", px(t), top,
                      px(t), top + plot_h);
        svg << buf;
        std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.1f\" text-anchor=\"middle\">", px(t), top + plot_h + 15);
        svg << buf << tick_label(t) << "</text>\n";
    }
    for (double t : ticks(y)) {
        std::snprintf(buf, sizeof buf, "<line x1=\"%.1f\" y1=\"%.2f\" x2=\"%.1f\" y2=\"%.2f\" stroke=\"#ccc\"/>\n", left, py(t),
                      left + plot_w, py(t));
        svg << buf;
        std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.2f\" text-anchor=\"end\">", left - 5, py(t) + 4);
        svg << buf << tick_label(t) << "</text>\n";
    }
    const std::string x_label = x.label + (x.log ? " (log)" : ""), y_label = y.label + (y.log ? " (log)" : "");
    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">", left + plot_w / 2, height - 10);
    svg << buf << xml_escape(x_label) << "</text>\n";
    std::snprintf(buf, sizeof buf, "<text x=\"15\" y=\"%.1f\" text-anchor=\"middle\" transform=\"rotate(-90 15 %.1f)\">",
                  top + plot_h / 2, top + plot_h / 2);
    svg << buf << xml_escape(y_label) << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char *colour = kPalette[s % std::size(kPalette)];
        if (lines && series[s].points.size() > 1) {
            svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
            for (auto [vx, vy] : series[s].points) {
                if (!visible(vx, vy))
                    continue;
                std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(vx), py(vy));
                svg << buf;
            }
            svg << "\"/>\n";
        }
        for (auto [vx, vy] : series[s].points) {
            if (!visible(vx, vy))
                continue;
            std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%s\" fill=\"%s\"/>\n", px(vx), py(vy),
                          lines ? "2.5" : "1.2", colour);
            svg << buf;
        }
        std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" fill=\"%s\">", left + 8, top + 14 + 13.0 * s, colour);
        svg << buf << xml_escape(series[s].name) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError(0, "path", "cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string &path, std::string_view content) {
    const std::filesystem::path target(path);
    if (target.has_parent_path())
        std::filesystem::create_directories(target.parent_path());
    const std::filesystem::path temp = target.string() + ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw ConfigError(0, "out", "cannot write '" + temp.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw ConfigError(0, "out", "write failed for '" + temp.string() + "'");
    }
    std::filesystem::rename(temp, target);
}

} // namespace uclab
