// Copyright 2026 The wsnsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wsnsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <boost/math/distributions/students_t.hpp>

#include "wsnsim/errors.hpp"
#include "wsnsim/rng.hpp"

namespace wsnsim {

namespace {

constexpr std::string_view kRoundHeader = "round,alive,total_residual_j,heads,consumed_j";
constexpr std::string_view kSummaryHeader =
    "protocol,runs,first_death_mean,first_death_sd,half_death_mean,half_death_sd,"
    "avg_joules_per_round_mean,avg_joules_per_round_sd,avg_residual_per_round_mean,"
    "avg_residual_per_round_sd,final_alive_mean,final_alive_sd";

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

std::vector<std::string_view> lines_of(std::string_view text) {
    auto lines = split(text, '\n');
    if (!lines.empty() && lines.back().empty()) {
        lines.pop_back();
    }
    return lines;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
    T value{};
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc{} || ptr != end || s.empty()) {
        return std::nullopt;
    }
    return value;
}

template <typename T>
T number_or_throw(std::string_view s, std::size_t line, std::string_view key) {
    if (auto v = parse_number<T>(s)) {
        return *v;
    }
    throw ParseError(line, "cannot parse '" + std::string(s) + "' as a number for " +
                               std::string(key));
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

/// Values of one parsed file before defaults and validation are applied.
struct RawPlan {
    ExperimentPlan plan;
    std::optional<std::int64_t> seed_count;
    std::optional<std::uint64_t> base_seed;
    std::optional<std::vector<std::uint64_t>> seed_list;
    std::vector<std::string> protocol_names;
    bool protocols_given = false;
};

void apply_key(RawPlan& raw, std::string_view section, std::string_view key,
               std::string_view value, std::size_t line) {
    auto& cfg = raw.plan.config;
    if (section == "network") {
        if (key == "n") {
            cfg.n = number_or_throw<std::int32_t>(value, line, key);
        } else if (key == "a") {
            cfg.a = number_or_throw<double>(value, line, key);
        } else if (key == "bs") {
            const auto xy = split(value, ',');
            if (xy.size() != 2) {
                throw ParseError(line, "bs expects 'x, y'");
            }
            cfg.bs_pos = Position{number_or_throw<double>(xy[0], line, key),
                                  number_or_throw<double>(xy[1], line, key)};
        } else if (key == "nu") {
            cfg.nu = number_or_throw<double>(value, line, key);
        } else if (key == "b") {
            cfg.b = number_or_throw<std::int32_t>(value, line, key);
        } else if (key == "eps0") {
            cfg.eps0 = number_or_throw<double>(value, line, key);
        } else if (key == "packet_bits") {
            cfg.packet_bits = number_or_throw<std::int64_t>(value, line, key);
        } else if (key == "max_rounds") {
            cfg.max_rounds = number_or_throw<std::int32_t>(value, line, key);
        } else {
            throw ParseError(line, "unknown key '" + std::string(key) + "' in [network]");
        }
    } else if (section == "radio") {
        if (key == "eps_elec") {
            cfg.radio.eps_elec = number_or_throw<double>(value, line, key);
        } else if (key == "eps_fs") {
            cfg.radio.eps_fs = number_or_throw<double>(value, line, key);
        } else if (key == "eps_mp") {
            cfg.radio.eps_mp = number_or_throw<double>(value, line, key);
        } else {
            throw ParseError(line, "unknown key '" + std::string(key) + "' in [radio]");
        }
    } else {
        if (key == "protocols") {
            raw.protocols_given = true;
            for (auto name : split(value, ',')) {
                if (!name.empty()) {
                    raw.protocol_names.emplace_back(name);
                }
            }
        } else if (key == "seeds") {
            raw.seed_count = number_or_throw<std::int64_t>(value, line, key);
        } else if (key == "base_seed") {
            raw.base_seed = number_or_throw<std::uint64_t>(value, line, key);
        } else if (key == "seed_list") {
            std::vector<std::uint64_t> seeds;
            for (auto item : split(value, ',')) {
                seeds.push_back(number_or_throw<std::uint64_t>(item, line, key));
            }
            raw.seed_list = std::move(seeds);
        } else if (key == "output_dir") {
            if (value.empty()) {
                throw ParseError(line, "output_dir must not be empty");
            }
            raw.plan.output_dir = std::string(value);
        } else if (key == "lloyd_iterations") {
            raw.plan.engine.lloyd_iterations = number_or_throw<std::int32_t>(value, line, key);
        } else if (key == "pc_replaces_d2") {
            if (value == "true") {
                raw.plan.engine.weight_replaces_d2 = true;
            } else if (value == "false") {
                raw.plan.engine.weight_replaces_d2 = false;
            } else {
                throw ParseError(line, "pc_replaces_d2 expects true or false");
            }
        } else {
            throw ParseError(line, "unknown key '" + std::string(key) + "' in [experiment]");
        }
    }
}

ExperimentPlan finish(RawPlan raw) {
    auto& plan = raw.plan;
    if (raw.seed_list && (raw.seed_count || raw.base_seed)) {
        throw ConfigError("seeds", "give either seed_list or seeds/base_seed, not both");
    }
    if (raw.seed_list) {
        plan.seeds = *raw.seed_list;
    } else {
        const std::int64_t count = raw.seed_count.value_or(30);
        if (count < 1) {
            throw ConfigError("seeds", "seed count must be at least 1");
        }
        const std::uint64_t base = raw.base_seed.value_or(1);
        for (std::int64_t i = 0; i < count; ++i) {
            plan.seeds.push_back(base + static_cast<std::uint64_t>(i));
        }
    }
    for (const auto& name : raw.protocol_names) {
        if (name == "matrix") {
            const auto& m = protocol_matrix();
            plan.protocols.insert(plan.protocols.end(), m.begin(), m.end());
            continue;
        }
        auto protocol = find_protocol(name);
        if (!protocol) {
            throw ConfigError("protocols", "unknown protocol '" + name + "'");
        }
        plan.protocols.push_back(*protocol);
    }
    validate(plan);
    return plan;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path.string(), "cannot open for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) {
        throw IoError(path.string(), "read failed");
    }
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(path.string(), "cannot open for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) {
        throw IoError(path.string(), "write failed");
    }
}

void append_stats(std::string& out, const SampleStats& s) {
    out += ',';
    out += format_double(s.mean);
    out += ',';
    out += format_double(s.stddev);
}

}  // namespace

ExperimentPlan parse_config(std::string_view text) {
    RawPlan raw;
    std::string section;
    std::set<std::string> seen;
    std::size_t line_no = 0;
    for (auto raw_line : lines_of(text)) {
        ++line_no;
        auto line = raw_line;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ParseError(line_no, "unterminated section header");
            }
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section != "network" && section != "radio" && section != "experiment") {
                throw ParseError(line_no, "unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError(line_no, "expected key = value");
        }
        if (section.empty()) {
            throw ParseError(line_no, "key outside of a section");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ParseError(line_no, "empty key");
        }
        if (!seen.insert(section + "." + std::string(key)).second) {
            throw ParseError(line_no, "duplicate key '" + std::string(key) + "'");
        }
        apply_key(raw, section, key, value, line_no);
    }
    return finish(std::move(raw));
}

ExperimentPlan load_plan(const std::filesystem::path& path) {
    return parse_config(read_file(path));
}

void validate(const ExperimentPlan& plan) {
    validate(plan.config);
    if (plan.protocols.empty()) {
        throw ConfigError("protocols", "at least one protocol is required");
    }
    std::set<std::string> names;
    for (const auto& p : plan.protocols) {
        if (!names.insert(p.name).second) {
            throw ConfigError("protocols", "protocol '" + p.name + "' listed twice");
        }
    }
    if (plan.seeds.empty()) {
        throw ConfigError("seeds", "at least one seed is required");
    }
    if (std::set<std::uint64_t>(plan.seeds.begin(), plan.seeds.end()).size() != plan.seeds.size()) {
        throw ConfigError("seeds", "seeds must be distinct");
    }
    if (plan.engine.lloyd_iterations < 0) {
        throw ConfigError("lloyd_iterations", "must be non-negative");
    }
}

std::uint64_t run_seed(std::uint64_t seed, std::string_view protocol_name) {
    return derive_seed(seed, protocol_name);
}

std::string_view to_string(Metric metric) {
    switch (metric) {
        case Metric::FirstDeath: return "first_death";
        case Metric::HalfDeath: return "half_death";
        case Metric::AvgJoulesPerRound: return "avg_joules_per_round";
        case Metric::AvgResidualPerRound: return "avg_residual_per_round";
        case Metric::FinalAlive: return "final_alive";
    }
    return "unknown";
}

std::optional<Metric> parse_metric(std::string_view name) {
    for (auto m : {Metric::FirstDeath, Metric::HalfDeath, Metric::AvgJoulesPerRound,
                   Metric::AvgResidualPerRound, Metric::FinalAlive}) {
        if (to_string(m) == name) {
            return m;
        }
    }
    return std::nullopt;
}

double metric_value(const SimulationResult& result, Metric metric, const NetworkConfig& config) {
    switch (metric) {
        case Metric::FirstDeath: return result.first_death_round.value_or(config.max_rounds);
        case Metric::HalfDeath: return result.half_death_round.value_or(config.max_rounds);
        case Metric::AvgJoulesPerRound: return result.avg_joules_per_round;
        case Metric::AvgResidualPerRound: return result.avg_residual_per_round;
        case Metric::FinalAlive:
            return result.per_round.empty() ? config.n : result.per_round.back().alive;
    }
    return 0.0;
}

SampleStats sample_stats(const std::vector<double>& values) {
    SampleStats s;
    if (values.empty()) {
        return s;
    }
    double total = 0.0;
    for (double v : values) {
        total += v;
    }
    s.mean = total / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) {
            ss += (v - s.mean) * (v - s.mean);
        }
        s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

const SampleStats& SummaryRow::stats(Metric metric) const {
    switch (metric) {
        case Metric::FirstDeath: return first_death;
        case Metric::HalfDeath: return half_death;
        case Metric::AvgJoulesPerRound: return avg_joules_per_round;
        case Metric::AvgResidualPerRound: return avg_residual_per_round;
        case Metric::FinalAlive: return final_alive;
    }
    return first_death;
}

const SummaryRow* SummaryTable::find(std::string_view protocol) const {
    for (const auto& row : rows) {
        if (row.protocol == protocol) {
            return &row;
        }
    }
    return nullptr;
}

PlanOutcome execute_plan(const ExperimentPlan& plan, unsigned jobs) {
    validate(plan);
    const std::size_t seeds = plan.seeds.size();
    const std::size_t total = plan.protocols.size() * seeds;
    std::vector<RunRecord> runs(total);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t task = next++; task < total; task = next++) {
            try {
                const auto& protocol = plan.protocols[task / seeds];
                auto& run = runs[task];
                run.protocol = protocol.name;
                run.seed_index = task % seeds;
                run.seed = run_seed(plan.seeds[run.seed_index], protocol.name);
                run.result = run_simulation(plan.config, protocol, run.seed, plan.engine);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(total)));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < workers; ++i) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    PlanOutcome outcome;
    outcome.summary = summarize(runs, plan);
    outcome.runs = std::move(runs);
    return outcome;
}

SummaryTable summarize(const std::vector<RunRecord>& runs, const ExperimentPlan& plan) {
    SummaryTable table;
    for (const auto& protocol : plan.protocols) {
        std::vector<const RunRecord*> mine;
        for (const auto& run : runs) {
            if (run.protocol == protocol.name) {
                mine.push_back(&run);
            }
        }
        std::sort(mine.begin(), mine.end(),
                  [](const RunRecord* l, const RunRecord* r) { return l->seed_index < r->seed_index; });
        auto collect = [&](Metric m) {
            std::vector<double> v;
            v.reserve(mine.size());
            for (const auto* run : mine) {
                v.push_back(metric_value(run->result, m, plan.config));
            }
            return sample_stats(v);
        };
        SummaryRow row;
        row.protocol = protocol.name;
        row.runs = static_cast<std::int32_t>(mine.size());
        row.first_death = collect(Metric::FirstDeath);
        row.half_death = collect(Metric::HalfDeath);
        row.avg_joules_per_round = collect(Metric::AvgJoulesPerRound);
        row.avg_residual_per_round = collect(Metric::AvgResidualPerRound);
        row.final_alive = collect(Metric::FinalAlive);
        table.rows.push_back(std::move(row));
    }
    return table;
}

PlanOutcome run_plan(const ExperimentPlan& plan, unsigned jobs) {
    auto outcome = execute_plan(plan, jobs);
    std::error_code ec;
    std::filesystem::create_directories(plan.output_dir, ec);
    if (ec) {
        throw IoError(plan.output_dir.string(), ec.message());
    }
    for (const auto& run : outcome.runs) {
        write_file(plan.output_dir / run_file_name(run.protocol, run.seed_index),
                   format_round_csv(run.result.per_round));
    }
    write_file(plan.output_dir / "summary.csv", format_summary(outcome.summary, plan));
    return outcome;
}

std::string run_file_name(std::string_view protocol, std::size_t seed_index) {
    char idx[32];
    std::snprintf(idx, sizeof idx, "%04zu", seed_index);
    return std::string(protocol) + "__seed" + idx + ".csv";
}

std::string format_round_csv(const std::vector<RoundMetrics>& rounds) {
    std::string out(kRoundHeader);
    out += '\n';
    for (const auto& m : rounds) {
        out += std::to_string(m.round);
        out += ',';
        out += std::to_string(m.alive);
        out += ',';
        out += format_double(m.total_residual);
        out += ',';
        out += std::to_string(m.heads);
        out += ',';
        out += format_double(m.consumed_this_round);
        out += '\n';
    }
    return out;
}

std::vector<RoundMetrics> parse_round_csv(std::string_view text) {
    const auto lines = lines_of(text);
    if (lines.empty() || lines.front() != kRoundHeader) {
        throw ParseError(1, "expected header '" + std::string(kRoundHeader) + "'");
    }
    std::vector<RoundMetrics> rounds;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto f = split(lines[i], ',');
        if (f.size() != 5) {
            throw ParseError(i + 1, "expected 5 fields");
        }
        RoundMetrics m;
        m.round = number_or_throw<std::int32_t>(f[0], i + 1, "round");
        m.alive = number_or_throw<std::int32_t>(f[1], i + 1, "alive");
        m.total_residual = number_or_throw<double>(f[2], i + 1, "total_residual_j");
        m.heads = number_or_throw<std::int32_t>(f[3], i + 1, "heads");
        m.consumed_this_round = number_or_throw<double>(f[4], i + 1, "consumed_j");
        rounds.push_back(m);
    }
    return rounds;
}

std::string format_summary(const SummaryTable& table, const ExperimentPlan& plan) {
    const auto& c = plan.config;
    const auto bs = c.base_station();
    std::string out = "# wsnsim summary\n";
    auto param = [&](std::string_view key, const std::string& value) {
        out += "# ";
        out += key;
        out += '=';
        out += value;
        out += '\n';
    };
    param("n", std::to_string(c.n));
    param("a", format_double(c.a));
    param("bs", format_double(bs.x) + "," + format_double(bs.y));
    param("nu", format_double(c.nu));
    param("b", std::to_string(c.b));
    param("eps0", format_double(c.eps0));
    param("packet_bits", std::to_string(c.packet_bits));
    param("eps_elec", format_double(c.radio.eps_elec));
    param("eps_fs", format_double(c.radio.eps_fs));
    param("eps_mp", format_double(c.radio.eps_mp));
    param("max_rounds", std::to_string(c.max_rounds));
    std::string seeds;
    for (std::size_t i = 0; i < plan.seeds.size(); ++i) {
        seeds += (i ? "," : "") + std::to_string(plan.seeds[i]);
    }
    param("seeds", seeds);
    param("lloyd_iterations", std::to_string(plan.engine.lloyd_iterations));
    param("pc_replaces_d2", plan.engine.weight_replaces_d2 ? "true" : "false");

    out += kSummaryHeader;
    out += '\n';
    for (const auto& row : table.rows) {
        out += row.protocol;
        out += ',';
        out += std::to_string(row.runs);
        append_stats(out, row.first_death);
        append_stats(out, row.half_death);
        append_stats(out, row.avg_joules_per_round);
        append_stats(out, row.avg_residual_per_round);
        append_stats(out, row.final_alive);
        out += '\n';
    }
    return out;
}

SummaryTable parse_summary(std::string_view text) {
    SummaryTable table;
    bool header = false;
    std::size_t line_no = 0;
    for (auto line : lines_of(text)) {
        ++line_no;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (!header) {
            if (line != kSummaryHeader) {
                throw ParseError(line_no, "unexpected summary header");
            }
            header = true;
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 12) {
            throw ParseError(line_no, "expected 12 fields");
        }
        SummaryRow row;
        row.protocol = std::string(f[0]);
        row.runs = number_or_throw<std::int32_t>(f[1], line_no, "runs");
        SampleStats* slots[] = {&row.first_death, &row.half_death, &row.avg_joules_per_round,
                                &row.avg_residual_per_round, &row.final_alive};
        for (std::size_t s = 0; s < 5; ++s) {
            slots[s]->mean = number_or_throw<double>(f[2 + 2 * s], line_no, "mean");
            slots[s]->stddev = number_or_throw<double>(f[3 + 2 * s], line_no, "sd");
        }
        table.rows.push_back(std::move(row));
    }
    if (!header) {
        throw ParseError(line_no, "summary header not found");
    }
    return table;
}

SummaryTable load_summary(const std::filesystem::path& path) {
    return parse_summary(read_file(path));
}

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::AGreater: return "a>b";
        case Verdict::BGreater: return "b>a";
        case Verdict::Indistinguishable: return "indistinguishable";
    }
    return "unknown";
}

Comparison compare_stats(const SampleStats& a, std::int32_t runs_a, const SampleStats& b,
                         std::int32_t runs_b, double confidence) {
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw std::invalid_argument("confidence must lie in (0, 1)");
    }
    Comparison c;
    c.mean_a = a.mean;
    c.mean_b = b.mean;
    c.difference = a.mean - b.mean;
    c.dof = static_cast<double>(runs_a + runs_b - 2);
    const double alpha = 1.0 - confidence;
    if (runs_a < 1 || runs_b < 1 || c.dof < 1.0) {
        return c;
    }
    const double pooled = ((runs_a - 1) * a.stddev * a.stddev + (runs_b - 1) * b.stddev * b.stddev) /
                          c.dof;
    const double se = std::sqrt(pooled * (1.0 / runs_a + 1.0 / runs_b));
    if (se == 0.0) {
        // No spread at all: any difference is exact.
        c.p_a_greater = c.difference > 0.0 ? 0.0 : 1.0;
        c.p_b_greater = c.difference < 0.0 ? 0.0 : 1.0;
    } else {
        c.t_statistic = c.difference / se;
        const boost::math::students_t dist(c.dof);
        c.p_a_greater = boost::math::cdf(boost::math::complement(dist, c.t_statistic));
        c.p_b_greater = boost::math::cdf(dist, c.t_statistic);
    }
    if (c.p_a_greater < alpha) {
        c.verdict = Verdict::AGreater;
    } else if (c.p_b_greater < alpha) {
        c.verdict = Verdict::BGreater;
    }
    return c;
}

Comparison compare(const SummaryTable& summary, Metric metric, std::string_view protocol_a,
                   std::string_view protocol_b, double confidence) {
    const auto* a = summary.find(protocol_a);
    const auto* b = summary.find(protocol_b);
    if (!a || !b) {
        throw std::invalid_argument("unknown protocol '" + std::string(a ? protocol_b : protocol_a) +
                                    "' in summary");
    }
    auto c = compare_stats(a->stats(metric), a->runs, b->stats(metric), b->runs, confidence);
    c.metric = metric;
    c.protocol_a = a->protocol;
    c.protocol_b = b->protocol;
    return c;
}

}  // namespace wsnsim
