#include "ait/demos.hpp"

#include <unordered_set>

#include "ait/enumerate.hpp"

namespace ait {

std::vector<std::string> digit_programs(std::size_t count) {
    std::vector<std::string> out;
    for (std::size_t chars = 1; out.size() < count; ++chars) {
        for_each_canonical_text(chars, [&](const std::string& text) {
            if (out.size() < count) out.push_back(text);
        });
    }
    return out;
}

SExpr unary(std::size_t m) {
    return SExpr::list(SExpr::List(m, SExpr::atom("1")));
}

std::optional<int> digit_program_output(const std::string& program_text, std::size_t m,
                                        std::uint64_t budget) {
    auto forms = parse_canonical_program(program_text);
    if (!forms) forms = parse(program_text);
    EvalOptions options;
    options.apply_result_to = unary(m);
    Outcome o = evaluate(*forms, BitTape(), budget, options);
    auto* h = std::get_if<Halted>(&o);
    if (!h) return std::nullopt;
    const SExpr* head = &h->value;
    if (head->is_list()) {
        if (head->items().empty()) return std::nullopt;
        head = &head->items().front();
    }
    if (head->is_atom() && head->name().size() == 1 && head->name()[0] >= '0' && head->name()[0] <= '9')
        return head->name()[0] - '0';
    return std::nullopt;
}

std::optional<int> digit_program_output(std::size_t n, std::size_t m, std::uint64_t budget) {
    auto programs = digit_programs(n);
    return digit_program_output(programs.at(n - 1), m, budget);
}

int diagonal_digit(std::optional<int> r_nn) noexcept { return r_nn == 3 ? 2 : 3; }

std::vector<DiagonalRow> diagonal_digits(std::span<const std::string> programs, std::uint64_t budget) {
    std::vector<DiagonalRow> rows;
    rows.reserve(programs.size());
    for (std::size_t i = 0; i < programs.size(); ++i) {
        DiagonalRow row;
        row.n = i + 1;
        row.program = programs[i];
        row.diagonal = digit_program_output(programs[i], row.n, budget);
        row.digit = diagonal_digit(row.diagonal);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<DiagonalRow> diagonal_digits(std::size_t count, std::uint64_t budget) {
    auto programs = digit_programs(count);
    return diagonal_digits(programs, budget);
}

TheoryRun run_theory(const BinaryProgram& theory, std::uint64_t budget) {
    TheoryRun run;
    run.size_bits = theory.size();
    run.budget = budget;
    RunReport report = run_u(theory, budget);
    run.terminal = std::string(outcome_name(report.outcome));
    run.halted = report.halted();
    if (const auto* emitted = outcome_emissions(report.outcome)) {
        std::unordered_set<std::string> seen;
        for (const auto& t : *emitted)
            if (seen.insert(print_canonical(t)).second) run.theorems.push_back(t);
    }
    return run;
}

std::size_t OmegaClaims::positions() const {
    std::set<std::size_t> p;
    for (const auto& c : claims) p.insert(c.first);
    return p.size();
}

OmegaClaims omega_bit_claims(const TheoryRun& run) {
    OmegaClaims out;
    out.theory_bits = run.size_bits;
    for (const auto& t : run.theorems) {
        if (!t.is_list() || t.items().size() != 3 || !t.items()[0].is_atom("omega-bit")) continue;
        const SExpr& pos = t.items()[1];
        const SExpr& bit = t.items()[2];
        if (!pos.is_list() || pos.items().empty()) continue;
        bool all_ones = true;
        for (const auto& u : pos.items()) all_ones = all_ones && u.is_atom("1");
        if (!all_ones || !(bit.is_atom("0") || bit.is_atom("1"))) continue;
        std::size_t p = pos.items().size();
        int b = bit.is_atom("1") ? 1 : 0;
        out.claims.emplace(p, b);
        if (out.claims.count({p, 1 - b})) out.contradictions.insert(p);
    }
    return out;
}

} // namespace ait
