#include "uclab/config.hpp"

#include "uclab/errors.hpp"
#include "uclab/numeric.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace uclab {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep))
        out.push_back(trim(item));
    return out;
}

bool parse_double(const std::string &s, double &out) {
    if (s.empty())
        return false;
    char *end = nullptr;
    errno = 0;
    out = std::strtod(s.c_str(), &end);
    return errno == 0 && end == s.c_str() + s.size() && std::isfinite(out);
}

bool parse_int(const std::string &s, std::int64_t &out) {
    const auto r = std::from_chars(s.data(), s.data() + s.size(), out);
    if (r.ec == std::errc() && r.ptr == s.data() + s.size())
        return true;
    // Accept integral values written in scientific notation such as 1e6.
    double d = 0.0;
    if (parse_double(s, d) && d == std::floor(d) && std::abs(d) < 0x1p62) {
        out = static_cast<std::int64_t>(d);
        return true;
    }
    return false;
}

} // namespace

void ConfigSection::set(const std::string &key, std::string value, int line) {
    if (entries_.count(key))
        throw ConfigError(line, key, "duplicate key in section [" + type_ + " " + name_ + "]");
    entries_[key] = {std::move(value), line};
}

const ConfigEntry &ConfigSection::entry(const std::string &key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end())
        throw ConfigError(line_, key, "missing key in section [" + type_ + " " + name_ + "]");
    return it->second;
}

void ConfigSection::fail(const std::string &key, const std::string &message) const {
    const auto it = entries_.find(key);
    throw ConfigError(it == entries_.end() ? line_ : it->second.line, key, message);
}

std::string ConfigSection::text(const std::string &key) const { return entry(key).value; }

std::string ConfigSection::text(const std::string &key, const std::string &fallback) const {
    return has(key) ? text(key) : fallback;
}

double ConfigSection::number(const std::string &key) const {
    double out = 0.0;
    if (!parse_double(text(key), out))
        fail(key, "expected a number, got '" + text(key) + "'");
    return out;
}

double ConfigSection::number(const std::string &key, double fallback) const { return has(key) ? number(key) : fallback; }

std::int64_t ConfigSection::integer(const std::string &key) const {
    std::int64_t out = 0;
    if (!parse_int(text(key), out))
        fail(key, "expected an integer, got '" + text(key) + "'");
    return out;
}

std::int64_t ConfigSection::integer(const std::string &key, std::int64_t fallback) const {
    return has(key) ? integer(key) : fallback;
}

bool ConfigSection::flag(const std::string &key, bool fallback) const {
    if (!has(key))
        return fallback;
    const auto v = text(key);
    if (v == "true" || v == "yes" || v == "1")
        return true;
    if (v == "false" || v == "no" || v == "0")
        return false;
    fail(key, "expected true or false, got '" + v + "'");
}

std::vector<std::string> ConfigSection::list(const std::string &key) const {
    const auto v = text(key);
    if (v.empty())
        fail(key, "list must not be empty");
    auto items = split(v, ',');
    for (const auto &item : items)
        if (item.empty())
            fail(key, "empty list item");
    return items;
}

std::vector<double> ConfigSection::numbers(const std::string &key) const {
    std::vector<double> out;
    for (const auto &item : list(key)) {
        double d = 0.0;
        if (!parse_double(item, d))
            fail(key, "expected a number, got '" + item + "'");
        out.push_back(d);
    }
    return out;
}

void ConfigSection::require_known(const std::vector<std::string> &allowed) const {
    for (const auto &[key, e] : entries_)
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ConfigError(e.line, key, "unknown key in section [" + type_ + " " + name_ + "]");
}

std::vector<const ConfigSection *> Config::of_type(const std::string &type) const {
    std::vector<const ConfigSection *> out;
    for (const auto &s : sections)
        if (s.type() == type)
            out.push_back(&s);
    return out;
}

Config parse_config(std::string_view text) {
    Config config;
    config.source = std::string(text);
    std::stringstream in(config.source);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (body.empty())
            continue;
        if (body.front() == '[') {
            if (body.back() != ']')
                throw ConfigError(line, "section", "unterminated section header");
            const auto words = split(trim(body.substr(1, body.size() - 2)), ' ');
            std::vector<std::string> parts;
            for (const auto &w : words)
                if (!w.empty())
                    parts.push_back(w);
            if (parts.size() != 2)
                throw ConfigError(line, "section", "section header must be [type name]");
            for (const auto &s : config.sections)
                if (s.type() == parts[0] && s.name() == parts[1])
                    throw ConfigError(line, "section", "duplicate section [" + parts[0] + " " + parts[1] + "]");
            config.sections.emplace_back(parts[0], parts[1], line);
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line, body, "expected key = value");
        if (config.sections.empty())
            throw ConfigError(line, trim(body.substr(0, eq)), "key outside of any section");
        const std::string key = trim(body.substr(0, eq));
        if (key.empty())
            throw ConfigError(line, "key", "empty key");
        config.sections.back().set(key, trim(body.substr(eq + 1)), line);
    }
    return config;
}

Config load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError(0, "config", "cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

namespace {

const std::vector<std::string> kSequenceKeys{"sequence", "param", "first", "blocks", "terms", "weights"};

FiniteMeasureZ parse_measure(const ConfigSection &s) {
    std::vector<FiniteMeasureZ::Atom> atoms;
    for (const auto &item : s.list("measure")) {
        const auto colon = item.find(':');
        std::int64_t offset = 0;
        double weight = 0.0;
        if (colon == std::string::npos || !parse_int(trim(item.substr(0, colon)), offset) ||
            !parse_double(trim(item.substr(colon + 1)), weight))
            s.fail("measure", "expected offset:weight, got '" + item + "'");
        atoms.push_back({offset, weight});
    }
    try {
        return FiniteMeasureZ(atoms);
    } catch (const Error &e) {
        s.fail("measure", e.what());
    }
}

KernelSpec parse_kernel(const ConfigSection &s) {
    const auto name = s.text("kernel");
    if (name == "cesaro")
        return KernelSpec::cesaro();
    if (name == "sinc-z")
        return KernelSpec::sinc_z();
    if (name == "sinc-r")
        return KernelSpec::sinc_r();
    if (name == "smoothed")
        return KernelSpec::smoothed();
    if (name == "measure-power")
        return KernelSpec::measure_power(parse_measure(s));
    s.fail("kernel", "unknown kernel '" + name + "'");
}

BlockRule parse_blocks(const ConfigSection &s) {
    const auto v = s.text("blocks", "linear");
    const auto colon = v.find(':');
    const std::string shape = colon == std::string::npos ? v : trim(v.substr(0, colon));
    BlockRule rule;
    if (colon != std::string::npos && !parse_double(trim(v.substr(colon + 1)), rule.scale))
        s.fail("blocks", "expected shape[:scale]");
    if (shape == "linear")
        rule.shape = BlockRule::Shape::Linear;
    else if (shape == "constant")
        rule.shape = BlockRule::Shape::Constant;
    else if (shape == "sqrt")
        rule.shape = BlockRule::Shape::Sqrt;
    else if (shape == "log")
        rule.shape = BlockRule::Shape::Log;
    else
        s.fail("blocks", "unknown block shape '" + shape + "'");
    return rule;
}

SequenceSpec parse_sequence(const ConfigSection &s) {
    const auto kind = s.text("sequence");
    SequenceSpec spec;
    try {
        if (kind == "identity")
            spec = SequenceSpec::identity();
        else if (kind == "power")
            spec = SequenceSpec::power(s.number("param"));
        else if (kind == "geometric")
            spec = SequenceSpec::geometric(s.number("param"));
        else if (kind == "double-exp")
            spec = SequenceSpec::double_exp(s.number("param"), static_cast<int>(s.integer("first", 1)));
        else if (kind == "dyadic-blocks")
            spec = SequenceSpec::dyadic_blocks(parse_blocks(s), static_cast<int>(s.integer("first", 1)));
        else if (kind == "integers") {
            std::vector<std::uint64_t> terms;
            for (double d : s.numbers("terms")) {
                if (!(d >= 1.0) || d != std::floor(d))
                    s.fail("terms", "integer terms must be positive integers");
                terms.push_back(static_cast<std::uint64_t>(d));
            }
            spec = SequenceSpec::explicit_integers(terms);
        } else if (kind == "reciprocal-dyadic")
            spec = SequenceSpec::reciprocal_dyadic();
        else if (kind == "reciprocal-identity")
            spec = SequenceSpec::reciprocal_identity();
        else if (kind == "reciprocal-ratio")
            spec = SequenceSpec::reciprocal_ratio(s.number("param"));
        else if (kind == "reals")
            spec = SequenceSpec::explicit_reals(s.numbers("terms"));
        else
            s.fail("sequence", "unknown sequence '" + kind + "'");
    } catch (const ConfigError &) {
        throw;
    } catch (const BudgetExceeded &) {
        throw;
    } catch (const BreakpointBudget &) {
        throw;
    } catch (const Error &e) {
        s.fail("sequence", e.what());
    }
    if (s.has("weights")) {
        const auto w = s.text("weights");
        if (w == "unit")
            spec = spec.with_weights(WeightPreset::Unit);
        else if (w == "log")
            spec = spec.with_weights(WeightPreset::Log);
        else {
            spec = spec.with_weights(WeightPreset::Explicit);
            spec.explicit_weights = s.numbers("weights");
        }
    }
    return spec;
}

std::size_t positive_count(const ConfigSection &s, const std::string &key, std::int64_t fallback) {
    const auto v = s.integer(key, fallback);
    if (v < 0)
        s.fail(key, "must be nonnegative");
    return static_cast<std::size_t>(v);
}

Sampling parse_sampling(const ConfigSection &s, FrequencyDomain domain) {
    switch (domain) {
    case FrequencyDomain::Torus:
        return TorusSampling{positive_count(s, "uniform", 2000), positive_count(s, "log_samples", 20000)};
    case FrequencyDomain::Integer:
        return IntegerSampling{s.integer("int_max", 10000), positive_count(s, "log_samples", 2000), s.integer("log_max", 1000000)};
    case FrequencyDomain::Real:
        return RealSampling{s.number("t_max", 1000.0), positive_count(s, "uniform", 20000),
                            positive_count(s, "log_samples", 2000), s.number("t_min", 1e-6)};
    }
    return TorusSampling{};
}

std::size_t count_needed(const SequenceSpec &spec, std::size_t K) {
    if (spec.kind == SequenceKind::ExplicitIntegers)
        return spec.integers.size();
    if (spec.kind == SequenceKind::ExplicitReals)
        return spec.reals.size();
    return K + 1;
}

} // namespace

DifferenceSumQuery ScanJob::query() const {
    const std::size_t top = probes.empty() ? K : *std::max_element(probes.begin(), probes.end());
    return DifferenceSumQuery(kernel, build_sequence(sequence, count_needed(sequence, top)), top, exponent);
}

ScanJob make_scan_job(const ConfigSection &s) {
    auto allowed = kSequenceKeys;
    allowed.insert(allowed.end(), {"kernel", "measure", "K", "exponent", "probes", "uniform", "log_samples", "int_max",
                                   "log_max", "t_max", "t_min", "refine", "dump_samples"});
    s.require_known(allowed);
    ScanJob job;
    job.name = s.name();
    job.kernel = parse_kernel(s);
    job.sequence = parse_sequence(s);
    job.exponent = s.number("exponent", 1.0);
    if (!(job.exponent > 0.0))
        s.fail("exponent", "exponent must be positive");
    if (s.has("probes")) {
        for (double d : s.numbers("probes")) {
            if (!(d >= 1.0) || d != std::floor(d))
                s.fail("probes", "probe levels must be positive integers");
            if (!job.probes.empty() && d <= static_cast<double>(job.probes.back()))
                s.fail("probes", "probe levels must increase");
            job.probes.push_back(static_cast<std::size_t>(d));
        }
        job.K = job.probes.back();
    }
    if (s.has("K") || job.probes.empty()) {
        const auto K = s.integer("K");
        if (K < 1)
            s.fail("K", "K must be at least 1");
        job.K = static_cast<std::size_t>(K);
        if (!job.probes.empty() && job.K != job.probes.back())
            s.fail("K", "K must equal the last probe level");
    }
    job.sampling = parse_sampling(s, job.kernel.domain());
    job.refine = s.flag("refine", true);
    job.dump_samples = s.flag("dump_samples", false);
    try {
        (void)job.query();
    } catch (const ConfigError &) {
        throw;
    } catch (const BudgetExceeded &) {
        throw;
    } catch (const BreakpointBudget &) {
        throw;
    } catch (const Error &e) {
        s.fail("sequence", e.what());
    }
    return job;
}

RotationJob make_rotation_job(const ConfigSection &s) {
    auto allowed = kSequenceKeys;
    allowed.insert(allowed.end(), {"rho", "function", "L", "centre", "width", "height", "K"});
    s.require_known(allowed);
    RotationJob job;
    job.name = s.name();
    const auto rho_text = s.text("rho", "golden");
    try {
        const RotationNumber rho = rho_text == "golden" ? RotationNumber::golden() : RotationNumber(s.number("rho"));
        job.rho = rho.value();
        const auto fn = s.text("function", "tent-pair");
        if (fn == "tent-pair") {
            const auto L = s.integer("L", 100);
            if (L < 2)
                s.fail("L", "L must be at least 2");
            auto pair = build_tent_pair(rho, static_cast<std::size_t>(L));
            job.f = std::move(pair.f);
            job.tent = std::move(pair.config);
        } else if (fn == "tent" || fn == "coboundary-tent") {
            const auto tent = PiecewiseLinearCircleFn::tent(s.number("centre", 0.5), s.number("width", 0.2), s.number("height", 1.0));
            job.f = fn == "tent" ? tent : coboundary(tent, rho);
        } else {
            s.fail("function", "unknown function '" + fn + "'");
        }
    } catch (const ConfigError &) {
        throw;
    } catch (const BudgetExceeded &) {
        throw;
    } catch (const BreakpointBudget &) {
        throw;
    } catch (const Error &e) {
        s.fail("function", e.what());
    }
    job.sequence = parse_sequence(s);
    if (!job.sequence.integer_kind())
        s.fail("sequence", "rotation averages need an integer sequence");
    const auto K = s.integer("K");
    if (K < 1)
        s.fail("K", "K must be at least 1");
    job.K = static_cast<std::size_t>(K);
    return job;
}

OracleJob make_oracle_job(const ConfigSection &s) {
    OracleJob job;
    job.mode = s.text("mode", "sign");
    auto allowed = kSequenceKeys;
    if (job.mode == "sign") {
        allowed.insert(allowed.end(), {"mode", "kernel", "measure", "K", "theta_pi", "frequencies", "amplitudes"});
        s.require_known(allowed);
        SignOracleJob sign;
        sign.name = s.name();
        const auto kernel = parse_kernel(s);
        const auto spec = parse_sequence(s);
        const auto K = s.integer("K");
        if (K < 1 || K > 8)
            s.fail("K", "K must lie in 1..8");
        for (double d : s.numbers("frequencies")) {
            if (d != std::floor(d))
                s.fail("frequencies", "frequencies must be integers");
            sign.frequencies.push_back(static_cast<std::int64_t>(d));
        }
        std::vector<double> amplitudes(sign.frequencies.size(), 1.0);
        if (s.has("amplitudes")) {
            amplitudes = s.numbers("amplitudes");
            if (amplitudes.size() != sign.frequencies.size())
                s.fail("amplitudes", "one amplitude per frequency required");
        }
        try {
            const auto seq = build_sequence(spec, static_cast<std::size_t>(K) + 1);
            sign.diffs = torus_difference_table(kernel, seq, static_cast<std::size_t>(K),
                                                Angle::radians(s.number("theta_pi") * kPi), sign.frequencies);
        } catch (const ConfigError &) {
            throw;
        } catch (const BudgetExceeded &) {
            throw;
        } catch (const Error &e) {
            s.fail("kernel", e.what());
        }
        for (std::size_t i = 0; i < sign.frequencies.size(); ++i)
            sign.profile.set(sign.frequencies[i], amplitudes[i]);
        job.sign = std::move(sign);
    } else if (job.mode == "khintchine") {
        allowed.insert(allowed.end(), {"mode", "phi", "K", "trials"});
        s.require_known(allowed);
        KhintchineJob kh;
        kh.name = s.name();
        std::map<std::int64_t, double> entries;
        for (const auto &item : s.list("phi")) {
            const auto colon = item.find(':');
            std::int64_t m = 0;
            double v = 0.0;
            if (colon == std::string::npos || !parse_int(trim(item.substr(0, colon)), m) ||
                !parse_double(trim(item.substr(colon + 1)), v))
                s.fail("phi", "expected position:value, got '" + item + "'");
            entries[m] += v;
        }
        kh.phi = GridFunctionZ::from_entries(entries);
        kh.sequence = parse_sequence(s);
        if (!kh.sequence.integer_kind())
            s.fail("sequence", "differences on Z need an integer sequence");
        const auto K = s.integer("K");
        if (K < 1)
            s.fail("K", "K must be at least 1");
        kh.K = static_cast<std::size_t>(K);
        const auto trials = s.integer("trials", 10000);
        if (trials < 1)
            s.fail("trials", "need at least one trial");
        kh.trials = static_cast<std::size_t>(trials);
        job.khintchine = std::move(kh);
    } else {
        s.fail("mode", "unknown oracle mode '" + job.mode + "'");
    }
    return job;
}

} // namespace uclab
