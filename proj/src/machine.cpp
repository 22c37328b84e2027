#include "ait/machine.hpp"

#include <istream>
#include <ostream>
#include <string>

namespace ait {

std::uint64_t MachineConfig::config_hash() noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
    };
    mix(version);
    mix("|sep=0|char=8|");
    return h;
}

BinaryProgram encode_program(std::span<const SExpr> prefix, const BitString& data) {
    BitString bits = BitString::from_bytes(print_canonical(prefix));
    bits.push_byte(MachineConfig::separator);
    bits.append(data);
    return BinaryProgram{std::move(bits)};
}

BinaryProgram encode_program(std::string_view prefix_text, const BitString& data) {
    auto forms = parse(prefix_text);
    return encode_program(forms, data);
}

DecodeResult decode_program(const BitString& bits) {
    // The separator is located first, so a string without one is NoSeparator
    // whatever bytes it holds.
    std::size_t i = 0;
    for (;; ++i) {
        if (8 * i + 8 > bits.size()) return MalformedProgram{"NoSeparator"};
        if (bits.byte_at(i) == MachineConfig::separator) break;
    }
    std::string text;
    for (std::size_t k = 0; k < i; ++k) {
        std::uint8_t byte = bits.byte_at(k);
        if (byte < 0x20 || byte > 0x7e) return MalformedProgram{"BadChar"};
        text.push_back(static_cast<char>(byte));
    }
    auto forms = parse_canonical_program(text);
    if (!forms) return MalformedProgram{"ParseFail"};
    auto prefix = std::make_shared<DecodedPrefix>();
    prefix->text = std::move(text);
    prefix->forms = std::move(*forms);
    prefix->prefix_bits = 8 * (i + 1);
    BitString data = bits.suffix(prefix->prefix_bits);
    return DecodedProgram{std::move(prefix), std::move(data)};
}

RunReport run_decoded(const DecodedPrefix& prefix, const BitString& bits, std::size_t data_begin,
                      std::uint64_t budget, const EvalOptions& options) {
    RunReport report{evaluate(prefix.forms, BitTape(bits, data_begin), budget, options),
                     bits.size() - data_begin};
    return report;
}

RunReport run_u(const BinaryProgram& p, std::uint64_t budget, const EvalOptions& options) {
    auto decoded = decode_program(p.bits);
    if (auto* bad = std::get_if<MalformedProgram>(&decoded)) return RunReport{*bad, 0};
    const auto& d = std::get<DecodedProgram>(decoded);
    return run_decoded(*d.prefix, p.bits, d.prefix->prefix_bits, budget, options);
}

void write_program(std::ostream& out, const BinaryProgram& p) {
    out << "bits: " << p.bits.size() << '\n' << p.bits.to_hex() << '\n';
}

BinaryProgram read_program(std::istream& in) {
    std::string header;
    std::string hex;
    if (!std::getline(in, header) || header.rfind("bits: ", 0) != 0)
        throw error("CorruptFile", "program file must start with 'bits: N'");
    std::size_t n = 0;
    try {
        std::size_t used = 0;
        n = std::stoull(header.substr(6), &used);
        if (used != header.size() - 6) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
        throw error("CorruptFile", "bad bit length in program header");
    }
    std::getline(in, hex);
    while (!hex.empty() && (hex.back() == '\r' || hex.back() == ' ')) hex.pop_back();
    try {
        return BinaryProgram{BitString::from_hex(hex, n)};
    } catch (const std::invalid_argument& e) {
        throw error("CorruptFile", e.what());
    }
}

} // namespace ait
