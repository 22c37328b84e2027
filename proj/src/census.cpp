#include "ait/census.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <vector>

#include "ait/enumerate.hpp"

namespace ait {

std::string_view status_name(Status s) noexcept {
    switch (s) {
    case Status::halted_valid: return "halted-valid";
    case Status::halted_invalid: return "halted-invalid";
    case Status::aborted: return "aborted";
    case Status::unknown: return "unknown";
    }
    return "unknown";
}

std::optional<Status> status_from_name(std::string_view name) noexcept {
    for (Status s : {Status::halted_valid, Status::halted_invalid, Status::aborted, Status::unknown})
        if (status_name(s) == name) return s;
    return std::nullopt;
}

std::size_t Census::size_cap_at(std::uint64_t t) const noexcept {
    if (t == 0) return 0;
    std::size_t cap = 16 + static_cast<std::size_t>(t);
    return max_bits ? std::min(cap, *max_bits) : cap;
}

const CensusRecord* Census::find(const BitString& program) const {
    auto it = records.find(program);
    return it == records.end() ? nullptr : &it->second;
}

std::optional<Status> Census::status_of(const BitString& program) const {
    if (program.size() > size_cap() || program.size() < 16) return std::nullopt;
    if (auto* r = find(program)) return r->status;
    for (std::size_t k = program.size(); k-- > 16;) {
        const CensusRecord* r = find(program.prefix(k));
        if (!r) continue;
        switch (r->status) {
        case Status::halted_valid:
        case Status::halted_invalid: return Status::halted_invalid;
        case Status::unknown: return Status::unknown;
        case Status::aborted:
            // An overrun's children are always recorded once they fit, so a
            // missing child means the program is not in the census.
            if (r->detail == overrun_detail) return std::nullopt;
            return Status::aborted;
        }
    }
    return std::nullopt;
}

StatusCounts Census::counts(std::optional<std::size_t> max_len) const {
    const std::size_t limit = max_len ? std::min(*max_len, size_cap()) : size_cap();
    StatusCounts c;
    for (const auto& [bits, r] : records) {
        if (bits.size() > limit) break;  // ShortLex: sizes ascend
        mpz_class extensions;
        mpz_ui_pow_ui(extensions.get_mpz_t(), 2, limit - bits.size() + 1);
        extensions -= 2;
        switch (r.status) {
        case Status::halted_valid:
            c.halted_valid += 1;
            c.halted_invalid += extensions;
            break;
        case Status::halted_invalid: c.halted_invalid += 1 + extensions; break;
        case Status::unknown: c.unknown += 1 + extensions; break;
        case Status::aborted:
            c.aborted += 1;
            if (r.detail != overrun_detail) c.aborted += extensions;
            break;
        }
    }
    return c;
}

namespace {

CensusRecord record_from(const RunReport& report, std::uint64_t budget) {
    CensusRecord r;
    std::visit(
        [&](const auto& o) {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, Halted>) {
                r.status = report.valid_halt() ? Status::halted_valid : Status::halted_invalid;
                r.steps = o.steps;
                r.detail = print_canonical(o.value);
            } else if constexpr (std::is_same_v<T, AbortOverrun>) {
                r.status = Status::aborted;
                r.steps = o.steps;
                r.detail = std::string(overrun_detail);
            } else if constexpr (std::is_same_v<T, OutOfTime>) {
                r.status = Status::unknown;
                r.steps = budget;
            } else {
                r.status = Status::aborted;
                r.steps = 0;
                r.detail = o.reason;
            }
        },
        report.outcome);
    return r;
}

class PrefixCache {
public:
    std::shared_ptr<const DecodedPrefix> get(const BitString& program) {
        std::string text;
        for (std::size_t i = 0; 8 * i + 8 <= program.size(); ++i) {
            auto byte = program.byte_at(i);
            if (byte == MachineConfig::separator) break;
            text.push_back(static_cast<char>(byte));
        }
        auto [it, inserted] = cache_.try_emplace(text);
        if (inserted) it->second = decode_prefix_text(text);
        return it->second;
    }

private:
    std::unordered_map<std::string, std::shared_ptr<const DecodedPrefix>> cache_;
};

struct Job {
    BitString program;
    std::shared_ptr<const DecodedPrefix> prefix;
};

std::vector<CensusRecord> run_jobs(const std::vector<Job>& jobs, std::uint64_t budget, unsigned threads) {
    std::vector<CensusRecord> results(jobs.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const Job& j = jobs[i];
            RunReport report = run_decoded(*j.prefix, j.program, j.prefix->prefix_bits, budget);
            results[i] = record_from(report, budget);
        }
    };
    threads = std::max(1u, threads);
    if (threads == 1 || jobs.size() < 2 * threads) {
        work(0, jobs.size());
        return results;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (jobs.size() + threads - 1) / threads;
    for (unsigned k = 0; k < threads; ++k) {
        std::size_t begin = k * chunk;
        std::size_t end = std::min(jobs.size(), begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(work, begin, end);
    }
    for (auto& t : pool) t.join();
    return results;
}

void check_version(const Census& census) {
    if (census.version != MachineConfig::version)
        throw error("VersionMismatch", "census was made by machine " + census.version +
                                           ", this is " + std::string(MachineConfig::version));
}

void run_stage(Census& census, const AdvanceOptions& options) {
    const std::uint64_t t = census.stage + 1;
    const std::size_t prev_cap = census.size_cap_at(census.stage);
    const std::size_t cap = census.size_cap_at(t);
    const std::uint64_t budget = Census::budget_at(t);

    PrefixCache prefixes;
    std::vector<Job> pending;

    auto children_of = [&](const BitString& parent, std::vector<Job>& out,
                           const std::shared_ptr<const DecodedPrefix>& prefix) {
        if (parent.size() + 1 > cap) return;
        for (bool bit : {false, true}) {
            BitString child = parent;
            child.push_back(bit);
            if (!census.records.count(child)) out.push_back(Job{std::move(child), prefix});
        }
    };

    for (const auto& [bits, r] : census.records) {
        if (r.status == Status::unknown)
            pending.push_back(Job{bits, prefixes.get(bits)});
        else if (r.status == Status::aborted && r.detail == overrun_detail)
            children_of(bits, pending, prefixes.get(bits));
    }
    for (std::size_t chars = 1; 8 * chars + 8 <= cap; ++chars) {
        if (8 * chars + 8 <= prev_cap) continue;
        for_each_canonical_text(chars, [&](const std::string& text) {
            auto prefix = decode_prefix_text(text);
            BitString bits = BitString::from_bytes(text);
            bits.push_byte(MachineConfig::separator);
            pending.push_back(Job{std::move(bits), std::move(prefix)});
        });
    }

    // Overruns open two children, which run in the next round of the same
    // stage.  Each run depends only on (program, budget), so the rounds and
    // their partition across threads cannot change the result.
    while (!pending.empty()) {
        std::vector<CensusRecord> results = run_jobs(pending, budget, options.jobs);
        std::vector<Job> next;
        for (std::size_t i = 0; i < pending.size(); ++i) {
            const CensusRecord& r = results[i];
            auto [it, inserted] = census.records.insert_or_assign(pending[i].program, r);
            (void)inserted;
            if (r.status == Status::aborted && r.detail == overrun_detail)
                children_of(it->first, next, pending[i].prefix);
        }
        pending = std::move(next);
    }
    census.stage = t;
}

} // namespace

void advance(Census& census, std::uint64_t stages, const AdvanceOptions& options) {
    check_version(census);
    for (std::uint64_t i = 0; i < stages; ++i) run_stage(census, options);
}

DyadicRational omega_lower_bound(const Census& census) {
    // Accumulate per length as an integer count, then add count * 2^-len.
    DyadicRational sum;
    std::size_t len = 0;
    mpz_class count = 0;
    auto flush = [&] {
        if (count != 0) sum += DyadicRational(count, len);
        count = 0;
    };
    for (const auto& [bits, r] : census.records) {
        if (r.status != Status::halted_valid) continue;
        if (bits.size() != len) {
            flush();
            len = bits.size();
        }
        count += 1;
    }
    flush();
    return sum;
}

HaltingDecision decide_halting_via_omega(const DyadicRational& omega_prefix, Census& census,
                                         std::size_t max_bits, std::uint64_t stage_cap,
                                         const AdvanceOptions& options) {
    check_version(census);
    DyadicRational bound = omega_lower_bound(census);
    while (bound < omega_prefix) {
        if (census.stage >= stage_cap)
            throw error("StageCapExceeded", "Omega lower bound " + bound.to_binary() +
                                                " is still below " + omega_prefix.to_binary() +
                                                " at stage " + std::to_string(census.stage));
        advance(census, 1, options);
        bound = omega_lower_bound(census);
    }

    HaltingDecision d;
    d.stop_stage = census.stage;
    d.bound_at_stop = bound;
    d.max_bits = max_bits;
    for (const auto& [bits, r] : census.records) {
        if (bits.size() > max_bits) break;
        if (r.status == Status::halted_valid) d.halting.insert(bits);
    }
    StatusCounts c = census.counts(max_bits);
    d.not_halting_count = c.total() - c.halted_valid;
    return d;
}

void save_census(const Census& census, std::ostream& out) {
    out << "aitlab-census 1\n";
    out << "version: " << census.version << '\n';
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(MachineConfig::config_hash()));
    out << "config-hash: " << hash << '\n';
    out << "stage: " << census.stage << '\n';
    out << "max-bits: " << (census.max_bits ? std::to_string(*census.max_bits) : "none") << '\n';
    out << "records: " << census.records.size() << '\n';
    for (const auto& [bits, r] : census.records) {
        out << bits.to_hex() << ' ' << bits.size() << ' ' << status_name(r.status) << ' ' << r.steps;
        if (!r.detail.empty()) out << ' ' << r.detail;
        out << '\n';
    }
    out << "end\n";
}

void save_census(const Census& census, const std::string& path) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw error("IoError", "cannot write " + tmp);
        save_census(census, out);
        if (!out) throw error("IoError", "write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw error("IoError", "cannot replace " + path);
}

namespace {

[[noreturn]] void corrupt(const std::string& why) { throw error("CorruptFile", "census file: " + why); }

std::string header_value(std::istream& in, std::string_view key) {
    std::string line;
    if (!std::getline(in, line)) corrupt("truncated header");
    std::string prefix = std::string(key) + ": ";
    if (line.rfind(prefix, 0) != 0) corrupt("expected '" + std::string(key) + "'");
    return line.substr(prefix.size());
}

std::uint64_t to_u64(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) corrupt("bad number '" + s + "'");
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        corrupt("number out of range '" + s + "'");
    }
}

} // namespace

Census load_census(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "aitlab-census 1") corrupt("missing magic line");
    Census c;
    c.version = header_value(in, "version");
    std::string hash = header_value(in, "config-hash");
    if (c.version != MachineConfig::version)
        throw error("VersionMismatch", "census was made by machine " + c.version + ", this is " +
                                           std::string(MachineConfig::version));
    char expected[17];
    std::snprintf(expected, sizeof expected, "%016llx",
                  static_cast<unsigned long long>(MachineConfig::config_hash()));
    if (hash != expected) throw error("VersionMismatch", "census machine config hash differs");
    c.stage = to_u64(header_value(in, "stage"));
    std::string max_bits = header_value(in, "max-bits");
    if (max_bits != "none") c.max_bits = to_u64(max_bits);
    const std::uint64_t n = to_u64(header_value(in, "records"));

    for (std::uint64_t i = 0; i < n; ++i) {
        if (!std::getline(in, line)) corrupt("truncated record list");
        std::istringstream fields(line);
        std::string hex, len, status, steps;
        if (!(fields >> hex >> len >> status >> steps)) corrupt("short record line");
        std::string detail;
        if (fields >> std::ws) std::getline(fields, detail);
        auto st = status_from_name(status);
        if (!st) corrupt("unknown status '" + status + "'");
        BitString bits;
        try {
            bits = BitString::from_hex(hex, to_u64(len));
        } catch (const std::invalid_argument& e) {
            corrupt(e.what());
        }
        CensusRecord r{*st, to_u64(steps), std::move(detail)};
        if (!c.records.emplace(std::move(bits), std::move(r)).second) corrupt("duplicate record");
    }
    if (!std::getline(in, line) || line != "end") corrupt("missing end marker");
    return c;
}

Census load_census(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("IoError", "cannot open " + path);
    return load_census(in);
}

} // namespace ait
