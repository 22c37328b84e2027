// aitlab: command-line front end for the U machine, its census and the
// complexity tools.  Exit status: 0 success, 1 domain error, 2 usage error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ait/census.hpp"
#include "ait/demos.hpp"
#include "ait/enumerate.hpp"
#include "ait/eval.hpp"
#include "ait/machine.hpp"
#include "ait/metrics.hpp"
#include "ait/sexpr.hpp"

using json = nlohmann::json;
using namespace ait;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A domain failure whose result has already been printed.
struct Reported {
    std::string kind, message;
};

struct StopEnumeration {};

bool json_mode = false;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("IoError", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(json j, const std::vector<std::string>& text_lines) {
    if (json_mode) {
        j["machine"] = std::string(MachineConfig::version);
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::cout << "machine: " << MachineConfig::version << '\n';
    for (const auto& line : text_lines) std::cout << line << '\n';
}

std::string default_census_path() {
    const char* dir = std::getenv("AITLAB_CENSUS_DIR");
    return (std::filesystem::path(dir && *dir ? dir : ".") / "census.txt").string();
}

json emissions_json(const std::vector<SExpr>* emitted) {
    json out = json::array();
    if (emitted)
        for (const auto& e : *emitted) out.push_back(print_canonical(e));
    return out;
}

// Outcome lines and JSON shared by eval and run.
void report_outcome(const Outcome& o, std::optional<std::size_t> data_bits) {
    json j;
    std::vector<std::string> lines;
    const auto* emitted = outcome_emissions(o);
    if (emitted)
        for (const auto& e : *emitted) lines.push_back("display: " + print_canonical(e));
    j["outcome"] = std::string(outcome_name(o));
    j["emitted"] = emissions_json(emitted);
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Halted>) {
                j["value"] = print_canonical(v.value);
                j["steps"] = v.steps;
                j["bits_consumed"] = v.bits_consumed;
                lines.push_back(print_canonical(v.value));
                std::string info = "outcome: Halted steps=" + std::to_string(v.steps) +
                                   " bits-consumed=" + std::to_string(v.bits_consumed);
                if (data_bits) {
                    bool valid = v.bits_consumed == *data_bits;
                    j["valid_halt"] = valid;
                    j["data_bits"] = *data_bits;
                    info += std::string(" valid=") + (valid ? "yes" : "no");
                }
                lines.push_back(info);
            } else if constexpr (std::is_same_v<T, MalformedProgram>) {
                j["reason"] = v.reason;
                lines.push_back("outcome: MalformedProgram reason=" + v.reason);
            } else {
                j["steps"] = v.steps;
                lines.push_back("outcome: " + std::string(outcome_name(o)) + " steps=" + std::to_string(v.steps));
            }
        },
        o);
    emit(j, lines);
    if (auto* m = std::get_if<MalformedProgram>(&o)) throw Reported{"MalformedProgram", m->reason};
}

BinaryProgram load_program_arg(const std::string& file, const std::string& bits, const std::string& hex) {
    int given = !file.empty() + !bits.empty() + !hex.empty();
    if (given != 1) throw UsageError("give exactly one of --program, --bits, --hex");
    if (!file.empty()) {
        std::ifstream in(file, std::ios::binary);
        if (!in) throw error("IoError", "cannot open " + file);
        return read_program(in);
    }
    try {
        if (!bits.empty()) return BinaryProgram{BitString::from_text(bits)};
        return BinaryProgram{BitString::from_hex(hex, 4 * hex.size())};
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::string expr_or_file(const std::string& expr, const std::string& file) {
    if (expr.empty() == file.empty()) throw UsageError("give exactly one of --expr, --file");
    return expr.empty() ? read_file(file) : expr;
}

json counts_json(const StatusCounts& c) {
    return json{{"halted_valid", c.halted_valid.get_str()},
                {"halted_invalid", c.halted_invalid.get_str()},
                {"aborted", c.aborted.get_str()},
                {"unknown", c.unknown.get_str()},
                {"total", c.total().get_str()}};
}

json estimate_json(const ComplexityEstimate& e) {
    json j{{"subject", print_canonical(e.subject)},
           {"bound_bits", e.bound_bits},
           {"witness_bits", e.witness.size()},
           {"witness_hex", e.witness.bits.to_hex()},
           {"search_exhausted_to", e.search_exhausted_to},
           {"budget", e.budget},
           {"source", e.source}};
    if (e.given) j["given_bits"] = e.given->size();
    return j;
}

std::string estimate_line(const std::string& label, const ComplexityEstimate& e) {
    return label + " <= " + std::to_string(e.bound_bits) + " bits (" + e.source +
           ", search exhausted to " + std::to_string(e.search_exhausted_to) + " bits, budget " +
           std::to_string(e.budget) + ")";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"aitlab: programs, halting census and complexity bounds for the U machine"};
    app.require_subcommand(1);
    app.add_flag("--json", json_mode, "Machine-readable output");
    app.set_version_flag("--version", std::string(MachineConfig::version));

    // parse
    auto* parse_cmd = app.add_subcommand("parse", "Print S-expressions in canonical form");
    std::string parse_expr, parse_file;
    parse_cmd->add_option("--expr", parse_expr, "Expression text");
    parse_cmd->add_option("--file", parse_file, "File of expressions");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate an expression on a tape");
    std::string eval_expr, eval_file, eval_tape;
    std::vector<std::string> preludes;
    std::uint64_t eval_budget = MachineConfig::default_budget;
    std::uint64_t probe_cap = 0;
    eval_cmd->add_option("--expr", eval_expr, "Program text");
    eval_cmd->add_option("--file", eval_file, "Program file");
    eval_cmd->add_option("--prelude", preludes, "Definitions loaded first")->check(CLI::ExistingFile);
    eval_cmd->add_option("--tape", eval_tape, "Tape bits, e.g. 0110");
    eval_cmd->add_option("--budget", eval_budget, "Step budget")->check(CLI::PositiveNumber);
    eval_cmd->add_option("--probe", probe_cap, "Find the halting budget by doubling up to this cap");

    // run
    auto* run_cmd = app.add_subcommand("run", "Run a binary program on U");
    std::string run_file, run_bits, run_hex, run_apply;
    std::uint64_t run_budget = MachineConfig::default_budget;
    run_cmd->add_option("--program", run_file, "Program file (bits: N, then hex)");
    run_cmd->add_option("--bits", run_bits, "Program as a 0/1 string");
    run_cmd->add_option("--hex", run_hex, "Program as whole bytes of hex");
    run_cmd->add_option("--budget", run_budget, "Step budget")->check(CLI::PositiveNumber);
    run_cmd->add_option("--apply", run_apply, "Apply a function result to this expression");

    // encode
    auto* encode_cmd = app.add_subcommand("encode", "Encode a prefix and data as a binary program");
    std::string encode_expr, encode_file, encode_data, encode_out;
    encode_cmd->add_option("--expr", encode_expr, "Prefix text");
    encode_cmd->add_option("--file", encode_file, "Prefix file");
    encode_cmd->add_option("--data", encode_data, "Data bits");
    encode_cmd->add_option("--out", encode_out, "Write the program file here");

    // enumerate
    auto* enum_cmd = app.add_subcommand("enumerate", "List decodable programs in size order");
    std::size_t enum_max = 16;
    std::uint64_t enum_limit = 0;
    bool enum_count = false;
    enum_cmd->add_option("--max-bits", enum_max, "Largest program size")->required();
    enum_cmd->add_option("--limit", enum_limit, "Stop after this many programs (0: all)");
    enum_cmd->add_flag("--count", enum_count, "Only count");

    // census
    auto* census_cmd = app.add_subcommand("census", "Advance a halting census by dovetailing");
    std::uint64_t census_stages = 1;
    std::string census_out, census_resume;
    unsigned census_jobs = 1;
    std::size_t census_max_bits = 0;
    census_cmd->add_option("--stages", census_stages, "Stages to run");
    census_cmd->add_option("--out", census_out, "Census file to write (default $AITLAB_CENSUS_DIR/census.txt)");
    census_cmd->add_option("--resume", census_resume, "Census file to continue from");
    census_cmd->add_option("--jobs", census_jobs, "Worker threads")->check(CLI::PositiveNumber);
    census_cmd->add_option("--max-bits", census_max_bits, "Ceiling on program size for a new census");

    // omega
    auto* omega_cmd = app.add_subcommand("omega", "Omega lower bound from a census");
    std::string omega_census, omega_decide;
    std::size_t omega_truncate = 0, omega_decide_bits = 0;
    std::uint64_t omega_stage_cap = 24;
    unsigned omega_jobs = 1;
    omega_cmd->add_option("--census", omega_census, "Census file (default $AITLAB_CENSUS_DIR/census.txt)");
    omega_cmd->add_option("--truncate", omega_truncate, "Also show the first N bits");
    omega_cmd->add_option("--decide", omega_decide, "Decide halting from this Omega prefix (0.b1b2...)");
    omega_cmd->add_option("--max-bits", omega_decide_bits, "Programs to label with --decide");
    omega_cmd->add_option("--stage-cap", omega_stage_cap, "Give up after this stage with --decide");
    omega_cmd->add_option("--jobs", omega_jobs, "Worker threads")->check(CLI::PositiveNumber);

    // complexity
    auto* cx_cmd = app.add_subcommand("complexity", "Upper bounds on program-size complexity");
    std::string cx_of, cx_joint, cx_given, cx_census;
    std::vector<std::string> cx_candidates;
    bool cx_randomness = false;
    std::uint64_t cx_budget = MachineConfig::default_budget;
    cx_cmd->add_option("--of", cx_of, "Expression to bound")->required();
    cx_cmd->add_option("--joint", cx_joint, "Also bound the pair with this expression");
    cx_cmd->add_option("--given", cx_given, "Bound relative to a shortest program for this expression");
    cx_cmd->add_option("--census", cx_census, "Census file to search");
    cx_cmd->add_option("--candidate", cx_candidates, "Extra witness program files")->check(CLI::ExistingFile);
    cx_cmd->add_option("--budget", cx_budget, "Step budget for witnesses")->check(CLI::PositiveNumber);
    cx_cmd->add_flag("--randomness", cx_randomness, "Randomness report for a list of 0/1 atoms");

    // diag
    auto* diag_cmd = app.add_subcommand("diag", "Diagonal digits over enumerated digit programs");
    std::size_t diag_count = 50;
    std::uint64_t diag_budget = 1u << 12;
    diag_cmd->add_option("--count", diag_count, "Rows");
    diag_cmd->add_option("--budget", diag_budget, "Step budget per row")->check(CLI::PositiveNumber);

    // theory
    auto* theory_cmd = app.add_subcommand("theory", "Run a theorem-emitting program");
    std::string theory_file, theory_expr;
    std::uint64_t theory_budget = MachineConfig::default_budget;
    bool theory_claims = false;
    theory_cmd->add_option("--program", theory_file, "Program file");
    theory_cmd->add_option("--expr", theory_expr, "Prefix text (no data)");
    theory_cmd->add_option("--budget", theory_budget, "Step budget")->check(CLI::PositiveNumber);
    theory_cmd->add_flag("--omega-claims", theory_claims, "Report (omega-bit POSITION BIT) claims");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (parse_cmd->parsed()) {
            auto forms = parse(expr_or_file(parse_expr, parse_file));
            json j{{"forms", json::array()}};
            std::vector<std::string> lines;
            for (const auto& f : forms) {
                j["forms"].push_back(print_canonical(f));
                lines.push_back(print_canonical(f));
            }
            emit(j, lines);
        } else if (eval_cmd->parsed()) {
            std::string text;
            for (const auto& p : preludes) text += read_file(p) + "\n";
            text += expr_or_file(eval_expr, eval_file);
            auto program = parse(text);
            BitString tape;
            try {
                tape = BitString::from_text(eval_tape);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            if (probe_cap > 0) {
                BudgetProbe p = step_budget_probe(program, tape, probe_cap);
                emit(json{{"budget", p.budget}, {"steps", p.result.steps}, {"value", print_canonical(p.result.value)}},
                     {print_canonical(p.result.value),
                      "probe: budget=" + std::to_string(p.budget) + " steps=" + std::to_string(p.result.steps)});
            } else {
                report_outcome(evaluate(program, BitTape(tape), eval_budget), std::nullopt);
            }
        } else if (run_cmd->parsed()) {
            BinaryProgram p = load_program_arg(run_file, run_bits, run_hex);
            EvalOptions options;
            if (!run_apply.empty()) options.apply_result_to = parse_one(run_apply);
            RunReport r = run_u(p, run_budget, options);
            report_outcome(r.outcome, r.data_bits);
        } else if (encode_cmd->parsed()) {
            BitString data;
            try {
                data = BitString::from_text(encode_data);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            BinaryProgram p = encode_program(expr_or_file(encode_expr, encode_file), data);
            if (!encode_out.empty()) {
                std::ofstream out(encode_out, std::ios::binary | std::ios::trunc);
                if (!out) throw error("IoError", "cannot write " + encode_out);
                write_program(out, p);
            }
            std::ostringstream file;
            write_program(file, p);
            std::string body = file.str();
            body.pop_back();
            emit(json{{"bits", p.size()}, {"hex", p.bits.to_hex()}}, {body});
        } else if (enum_cmd->parsed()) {
            std::uint64_t n = 0;
            json list = json::array();
            std::vector<std::string> lines;
            try {
                enumerate_programs(enum_max, [&](const EnumeratedProgram& e) {
                    if (enum_limit && n >= enum_limit) throw StopEnumeration{};
                    ++n;
                    if (enum_count) return;
                    BitString data = e.program.bits.suffix(e.prefix->prefix_bits);
                    list.push_back({{"bits", e.program.size()}, {"prefix", e.prefix->text}, {"data", data.to_text()}});
                    lines.push_back(std::to_string(e.program.size()) + " " + e.prefix->text + " | " + data.to_text());
                });
            } catch (const StopEnumeration&) {
            }
            lines.push_back("count: " + std::to_string(n));
            json j{{"count", n}};
            if (!enum_count) j["programs"] = list;
            emit(j, lines);
        } else if (census_cmd->parsed()) {
            Census c;
            if (!census_resume.empty()) {
                c = load_census(census_resume);
                if (census_max_bits && c.max_bits != census_max_bits)
                    throw UsageError("--max-bits does not match the resumed census");
            } else if (census_max_bits) {
                c.max_bits = census_max_bits;
            }
            advance(c, census_stages, AdvanceOptions{census_jobs});
            const std::string out = census_out.empty() ? default_census_path() : census_out;
            save_census(c, out);
            DyadicRational bound = omega_lower_bound(c);
            emit(json{{"stage", c.stage},
                      {"size_cap", c.size_cap()},
                      {"budget", c.budget()},
                      {"records", c.records.size()},
                      {"counts", counts_json(c.counts())},
                      {"omega_lower_bound", bound.to_fraction()},
                      {"file", out}},
                 {"stage: " + std::to_string(c.stage) + " (programs <= " + std::to_string(c.size_cap()) +
                      " bits, budget " + std::to_string(c.budget()) + ")",
                  "halted-valid: " + c.counts().halted_valid.get_str(),
                  "omega >= " + bound.to_fraction(), "written: " + out});
        } else if (omega_cmd->parsed()) {
            const std::string path = omega_census.empty() ? default_census_path() : omega_census;
            if (!omega_decide.empty()) {
                if (omega_decide_bits == 0) throw UsageError("--decide needs --max-bits");
                Census c;
                if (std::filesystem::exists(path)) c = load_census(path);
                DyadicRational prefix = DyadicRational::parse(omega_decide);
                HaltingDecision d =
                    decide_halting_via_omega(prefix, c, omega_decide_bits, omega_stage_cap, AdvanceOptions{omega_jobs});
                json halting = json::array();
                std::vector<std::string> lines{"stopped at stage " + std::to_string(d.stop_stage) + " with omega >= " +
                                               d.bound_at_stop.to_binary()};
                for (const auto& b : d.halting) halting.push_back(b.to_hex());
                lines.push_back("halting: " + std::to_string(d.halting.size()));
                lines.push_back("not halting: " + d.not_halting_count.get_str());
                emit(json{{"stop_stage", d.stop_stage},
                          {"bound", d.bound_at_stop.to_fraction()},
                          {"max_bits", d.max_bits},
                          {"halting_hex", halting},
                          {"not_halting", d.not_halting_count.get_str()}},
                     lines);
            } else {
                Census c = load_census(path);
                DyadicRational bound = omega_lower_bound(c);
                json j{{"stage", c.stage}, {"fraction", bound.to_fraction()}, {"binary", bound.to_binary()}};
                std::vector<std::string> lines{"stage: " + std::to_string(c.stage), "omega >= " + bound.to_fraction(),
                                               "omega >= " + bound.to_binary()};
                if (omega_truncate) {
                    j["truncated"] = bound.truncate(omega_truncate).to_binary();
                    lines.push_back("first " + std::to_string(omega_truncate) +
                                    " bits: " + bound.truncate(omega_truncate).to_binary());
                }
                emit(j, lines);
            }
        } else if (cx_cmd->parsed()) {
            SearchSpace space;
            if (!cx_census.empty()) space = SearchSpace::from_census(load_census(cx_census));
            space.budget = std::max(space.budget, cx_budget);
            for (const auto& f : cx_candidates) {
                std::ifstream in(f, std::ios::binary);
                space.candidates.push_back(read_program(in));
            }
            SExpr x = parse_one(cx_of);
            json j;
            std::vector<std::string> lines;
            if (cx_randomness) {
                RandomnessReport r = randomness_report(x, space);
                j["randomness"] = {{"length", r.length},          {"bound_bits", r.bound_bits},
                                   {"literal_bits", r.literal_bits}, {"overhead", r.overhead},
                                   {"deficiency", r.deficiency},   {"compressible", r.compressible},
                                   {"verdict", r.verdict},         {"estimate", estimate_json(r.estimate)}};
                lines.push_back(estimate_line("H(x)", r.estimate));
                lines.push_back("length " + std::to_string(r.length) + ", literal " + std::to_string(r.literal_bits) +
                                " bits, deficiency " + std::to_string(r.deficiency));
                lines.push_back(r.verdict);
            } else if (!cx_joint.empty()) {
                MutualInfoEstimate m = mutual_info_estimate(x, parse_one(cx_joint), space);
                j["x"] = estimate_json(m.x);
                j["y"] = estimate_json(m.y);
                j["joint"] = estimate_json(m.joint);
                j["mutual_info_bits"] = m.bits;
                lines = {estimate_line("H(x)", m.x), estimate_line("H(y)", m.y), estimate_line("H(x,y)", m.joint),
                         "I(x:y) estimate: " + std::to_string(m.bits) + " bits"};
            } else if (!cx_given.empty()) {
                ComplexityEstimate wy = h_upper(parse_one(cx_given), space);
                ComplexityEstimate rel = h_relative_upper(x, wy.witness, space);
                j["given"] = estimate_json(wy);
                j["relative"] = estimate_json(rel);
                lines = {estimate_line("H(y)", wy), estimate_line("H(x|y)", rel)};
            } else {
                ComplexityEstimate e = h_upper(x, space);
                j["estimate"] = estimate_json(e);
                lines = {estimate_line("H(x)", e), "witness: " + e.witness.bits.to_hex()};
            }
            emit(j, lines);
        } else if (diag_cmd->parsed()) {
            auto rows = diagonal_digits(diag_count, diag_budget);
            json list = json::array();
            std::vector<std::string> lines;
            std::string digits;
            for (const auto& r : rows) {
                list.push_back({{"n", r.n},
                                {"program", r.program},
                                {"diagonal", r.diagonal ? json(*r.diagonal) : json(nullptr)},
                                {"digit", r.digit}});
                lines.push_back(std::to_string(r.n) + " " + r.program + " R(n,n)=" +
                                (r.diagonal ? std::to_string(*r.diagonal) : std::string("none")) +
                                " R*(n)=" + std::to_string(r.digit));
                digits += static_cast<char>('0' + r.digit);
            }
            lines.push_back("R* = 0." + digits);
            emit(json{{"rows", list}, {"digits", digits}}, lines);
        } else if (theory_cmd->parsed()) {
            if (theory_file.empty() == theory_expr.empty()) throw UsageError("give exactly one of --program, --expr");
            BinaryProgram p;
            if (!theory_file.empty()) {
                std::ifstream in(theory_file, std::ios::binary);
                if (!in) throw error("IoError", "cannot open " + theory_file);
                p = read_program(in);
            } else {
                p = encode_program(theory_expr, BitString{});
            }
            TheoryRun run = run_theory(p, theory_budget);
            json theorems = json::array();
            std::vector<std::string> lines;
            for (const auto& t : run.theorems) {
                theorems.push_back(print_canonical(t));
                lines.push_back("theorem: " + print_canonical(t));
            }
            lines.push_back("theory: " + std::to_string(run.size_bits) + " bits, " +
                            std::to_string(run.theorems.size()) + " theorems, ended " + run.terminal);
            json j{{"size_bits", run.size_bits}, {"theorems", theorems}, {"terminal", run.terminal},
                   {"budget", run.budget}, {"halted", run.halted}};
            if (theory_claims) {
                OmegaClaims c = omega_bit_claims(run);
                json claims = json::array();
                for (const auto& [pos, bit] : c.claims) claims.push_back({pos, bit});
                j["omega_claims"] = {{"claims", claims},
                                     {"positions", c.positions()},
                                     {"contradictions", c.contradictions},
                                     {"inconsistent", c.inconsistent()}};
                lines.push_back("omega-bit claims: " + std::to_string(c.claims.size()) + " over " +
                                std::to_string(c.positions()) + " positions, theory size " +
                                std::to_string(c.theory_bits) + " bits" +
                                (c.inconsistent() ? ", INCONSISTENT" : ""));
            }
            emit(j, lines);
        }
    } catch (const Reported& r) {
        std::cerr << "error: " << r.kind << ": " << r.message << '\n';
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const error& e) {
        if (json_mode)
            std::cout << json{{"error", e.kind()}, {"message", e.what()}, {"machine", std::string(MachineConfig::version)}}.dump(2)
                      << '\n';
        else
            std::cout << "machine: " << MachineConfig::version << '\n';
        std::cerr << "error: " << e.kind() << ": " << e.what() << '\n';
        return 1;
    }
    return 0;
}
