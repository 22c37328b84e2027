#include "ait/metrics.hpp"

#include <algorithm>

namespace ait {

SearchSpace SearchSpace::from_census(const Census& census) {
    SearchSpace space;
    for (const auto& [bits, r] : census.records)
        if (r.status == Status::halted_valid) space.census_index.try_emplace(r.detail, bits);
    space.exhausted_to = census.size_cap();
    space.budget = std::max(space.budget, census.budget());
    return space;
}

std::size_t wrapper_bits(std::string_view text) {
    return encode_program(text, BitString{}).size();
}

namespace {

BinaryProgram with_data(std::string_view prefix_text, const BitString& data) {
    return encode_program(prefix_text, data);
}

// Splits a decodable program after its separator.
std::size_t data_offset(const BinaryProgram& p) {
    for (std::size_t i = 0; 8 * i + 8 <= p.size(); ++i)
        if (p.bits.byte_at(i) == MachineConfig::separator) return 8 * i + 8;
    return p.size();
}

bool halts_with(const BinaryProgram& program, const SExpr& value, std::uint64_t budget) {
    RunReport r = run_u(program, budget);
    return r.valid_halt() && r.halt()->value == value;
}

struct Best {
    std::optional<ComplexityEstimate> best;

    void offer(ComplexityEstimate e) {
        if (!best || e.bound_bits < best->bound_bits ||
            (e.bound_bits == best->bound_bits && e.witness.bits < best->witness.bits))
            best = std::move(e);
    }
};

ComplexityEstimate make_estimate(const SExpr& subject, BinaryProgram witness, std::string source,
                                 const SearchSpace& space) {
    ComplexityEstimate e;
    e.subject = subject;
    e.bound_bits = witness.size();
    e.witness = std::move(witness);
    e.search_exhausted_to = space.exhausted_to;
    e.budget = space.budget;
    e.source = std::move(source);
    return e;
}

// Every candidate that validly halts with `x`.
void offer_direct(const SExpr& x, const SearchSpace& space, Best& best) {
    auto consider = [&](BinaryProgram p, const char* source) {
        if (halts_with(p, x, space.budget)) best.offer(make_estimate(x, std::move(p), source, space));
    };
    if (auto it = space.census_index.find(print_canonical(x)); it != space.census_index.end())
        consider(BinaryProgram{it->second}, "census");
    std::vector<SExpr> self{x};
    consider(encode_program(self, BitString{}), "self");
    std::vector<SExpr> literal{SExpr::list({SExpr::atom(std::string(quote_atom_name)), x})};
    consider(encode_program(literal, BitString{}), "literal");
    for (auto& g : generator_candidates(x)) consider(std::move(g), "generator");
    for (const auto& c : space.candidates) consider(c, "candidate");
}

// True when items is its first `block` elements repeated.
bool repeats(const SExpr::List& items, std::size_t block) {
    for (std::size_t i = block; i < items.size(); ++i)
        if (!(items[i] == items[i - block])) return false;
    return true;
}

} // namespace

BinaryProgram assembled_witness(const ComplexityEstimate& e) {
    if (!e.given) return e.witness;
    const std::size_t split = data_offset(e.witness);
    BitString bits = e.witness.bits.prefix(split);
    bits.append(*e.given);
    bits.append(e.witness.bits.suffix(split));
    return BinaryProgram{std::move(bits)};
}

std::vector<BinaryProgram> generator_candidates(const SExpr& x) {
    std::vector<BinaryProgram> out;
    if (!x.is_list() || x.items().size() < 2) return out;
    const auto& items = x.items();
    const std::size_t n = items.size();
    for (std::size_t copies = 2; copies <= n && n % copies == 0; copies *= 2) {
        const std::size_t block = n / copies;
        if (!repeats(items, block)) continue;
        SExpr::List head(items.begin(), items.begin() + static_cast<std::ptrdiff_t>(block));
        std::string body = "(' " + print_canonical(SExpr::list(std::move(head))) + ")";
        for (std::size_t c = copies; c > 1; c /= 2) body = "(d " + body + ")";
        std::string text =
            "(define (a x y) (if (= () x) y (join (head x) (a (tail x) y)))) "
            "(define (d x) (a x x)) " + body;
        out.push_back(with_data(text, BitString{}));
    }
    return out;
}

ComplexityEstimate h_upper(const SExpr& x, const SearchSpace& space) {
    Best best;
    offer_direct(x, space, best);
    // The literal witness always halts with x, so best is set.
    return std::move(*best.best);
}

ComplexityEstimate h_joint_upper(const SExpr& x, const SExpr& y, const SearchSpace& space) {
    const SExpr pair = SExpr::list({x, y});
    Best best;
    offer_direct(pair, space, best);

    ComplexityEstimate ex = h_upper(x, space);
    ComplexityEstimate ey = h_upper(y, space);
    BinaryProgram paired = pair_programs(ex.witness, ey.witness, space.budget);
    if (halts_with(paired, pair, space.budget)) best.offer(make_estimate(pair, std::move(paired), "pair", space));
    if (x == y) {
        BinaryProgram dup = with_data(duplicating_wrapper_text, ex.witness.bits);
        if (halts_with(dup, pair, space.budget)) best.offer(make_estimate(pair, std::move(dup), "duplicate", space));
    }
    return std::move(*best.best);
}

ComplexityEstimate h_relative_upper(const SExpr& x, const BinaryProgram& wy, const SearchSpace& space) {
    if (!run_u(wy, space.budget).valid_halt())
        throw error("InvalidWitness", "the given program does not halt validly");

    Best best;
    auto consider = [&](std::string_view prefix, const BitString& extra, const char* source) {
        ComplexityEstimate e = make_estimate(x, with_data(prefix, extra), source, space);
        e.given = wy.bits;
        if (halts_with(assembled_witness(e), x, space.budget)) best.offer(std::move(e));
    };
    consider(identity_wrapper_text, BitString{}, "identity");
    consider(ignore_given_wrapper_text, h_upper(x, space).witness.bits, "ignore-given");
    if (!best.best) throw error("InvalidWitness", "no relative witness halts within the budget");
    return std::move(*best.best);
}

MutualInfoEstimate mutual_info_estimate(const SExpr& x, const SExpr& y, const SearchSpace& space) {
    MutualInfoEstimate m{h_upper(x, space), h_upper(y, space), h_joint_upper(x, y, space), 0};
    m.bits = static_cast<long long>(m.x.bound_bits) + static_cast<long long>(m.y.bound_bits) -
             static_cast<long long>(m.joint.bound_bits);
    return m;
}

BinaryProgram pair_programs(const BinaryProgram& p, const BinaryProgram& q, std::uint64_t budget) {
    if (!run_u(p, budget).valid_halt())
        throw error("InvalidWitness", "first program does not halt validly");
    if (!run_u(q, budget).valid_halt())
        throw error("InvalidWitness", "second program does not halt validly");
    BitString data = p.bits;
    data.append(q.bits);
    return with_data(pairing_wrapper_text, data);
}

RandomnessReport randomness_report(const SExpr& x, const SearchSpace& space) {
    if (!x.is_list()) throw error("NotABitString", "expected a list of 0 and 1 atoms");
    for (const auto& item : x.items())
        if (!item.is_atom("0") && !item.is_atom("1"))
            throw error("NotABitString", "expected a list of 0 and 1 atoms, found " + print_canonical(item));

    RandomnessReport r;
    r.length = x.items().size();
    r.estimate = h_upper(x, space);
    r.bound_bits = r.estimate.bound_bits;
    // Baseline: the shorter verbatim spelling of x, quoted or self-evaluating.
    std::vector<SExpr> literal{SExpr::list({SExpr::atom(std::string(quote_atom_name)), x})};
    r.literal_bits = encode_program(literal, BitString{}).size();
    std::vector<SExpr> self{x};
    BinaryProgram self_program = encode_program(self, BitString{});
    if (self_program.size() < r.literal_bits && halts_with(self_program, x, space.budget))
        r.literal_bits = self_program.size();
    r.overhead = r.literal_bits - r.length;
    r.deficiency = static_cast<long long>(r.length) -
                   (static_cast<long long>(r.bound_bits) - static_cast<long long>(r.overhead));
    r.compressible = r.bound_bits < r.literal_bits;
    r.verdict = r.compressible ? "compressible at this search scale"
                               : "incompressible at exhausted range";
    return r;
}

} // namespace ait
