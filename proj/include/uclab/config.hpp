#ifndef UCLAB_CONFIG_HPP
#define UCLAB_CONFIG_HPP

#include "uclab/criterion_engine.hpp"
#include "uclab/discrete_models.hpp"
#include "uclab/rotation_lab.hpp"
#include "uclab/sign_oracle.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uclab {

struct ConfigEntry {
    std::string value;
    int line = 0;
};

// One "[type name]" block of key = value lines.
class ConfigSection {
  public:
    ConfigSection(std::string type, std::string name, int line) : type_(std::move(type)), name_(std::move(name)), line_(line) {}

    const std::string &type() const { return type_; }
    const std::string &name() const { return name_; }
    int line() const { return line_; }
    const std::map<std::string, ConfigEntry> &entries() const { return entries_; }

    void set(const std::string &key, std::string value, int line);
    bool has(const std::string &key) const { return entries_.count(key) > 0; }

    std::string text(const std::string &key) const;
    std::string text(const std::string &key, const std::string &fallback) const;
    double number(const std::string &key) const;
    double number(const std::string &key, double fallback) const;
    std::int64_t integer(const std::string &key) const;
    std::int64_t integer(const std::string &key, std::int64_t fallback) const;
    bool flag(const std::string &key, bool fallback) const;
    // Comma-separated list; empty lists are rejected.
    std::vector<std::string> list(const std::string &key) const;
    std::vector<double> numbers(const std::string &key) const;

    // ConfigError naming the first key not in `allowed`.
    void require_known(const std::vector<std::string> &allowed) const;
    [[noreturn]] void fail(const std::string &key, const std::string &message) const;

  private:
    const ConfigEntry &entry(const std::string &key) const;

    std::string type_;
    std::string name_;
    int line_;
    std::map<std::string, ConfigEntry> entries_;
};

struct Config {
    std::string source;
    std::vector<ConfigSection> sections;

    std::vector<const ConfigSection *> of_type(const std::string &type) const;
};

Config parse_config(std::string_view text);
Config load_config(const std::string &path);

struct ScanJob {
    std::string name;
    KernelSpec kernel;
    SequenceSpec sequence;
    std::size_t K = 1;
    double exponent = 1.0;
    std::vector<std::size_t> probes;
    Sampling sampling;
    bool refine = true;
    bool dump_samples = false;

    DifferenceSumQuery query() const;
};

ScanJob make_scan_job(const ConfigSection &section);

struct RotationJob {
    std::string name;
    double rho = 0.0;
    PiecewiseLinearCircleFn f;
    std::optional<TentPairConfig> tent;
    SequenceSpec sequence;
    std::size_t K = 1;
};

RotationJob make_rotation_job(const ConfigSection &section);

struct SignOracleJob {
    std::string name;
    DifferenceTable diffs{1};
    FourierProfile profile;
    std::vector<std::int64_t> frequencies;
};

struct KhintchineJob {
    std::string name;
    GridFunctionZ phi;
    SequenceSpec sequence;
    std::size_t K = 1;
    std::size_t trials = 10000;
};

struct OracleJob {
    std::string mode; // "sign" or "khintchine"
    std::optional<SignOracleJob> sign;
    std::optional<KhintchineJob> khintchine;
};

OracleJob make_oracle_job(const ConfigSection &section);

} // namespace uclab

#endif
