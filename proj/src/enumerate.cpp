#include "ait/enumerate.hpp"

#include <unordered_map>

namespace ait {

std::optional<CanonicalTextState> CanonicalTextState::step(char c) const noexcept {
    using L = Last;
    CanonicalTextState next = *this;
    if (is_atom_char(c)) {
        if (last == L::close || last == L::quote) return std::nullopt;
        next.last = L::atom_char;
    } else if (c == '(') {
        if (last != L::start && last != L::open && last != L::space) return std::nullopt;
        ++next.depth;
        next.last = L::open;
    } else if (c == ')') {
        if (depth == 0 || last == L::space) return std::nullopt;
        --next.depth;
        next.last = L::close;
    } else if (c == ' ') {
        if (last != L::close && last != L::atom_char && last != L::quote) return std::nullopt;
        next.last = L::space;
    } else if (c == '\'') {
        if (last != L::start && last != L::open && last != L::space) return std::nullopt;
        next.last = L::quote;
    } else {
        return std::nullopt;
    }
    return next;
}

namespace {

void text_dfs(std::string& text, CanonicalTextState state, std::size_t chars,
              const std::function<void(const std::string&)>& sink) {
    if (text.size() == chars) {
        if (state.accepting()) sink(text);
        return;
    }
    const std::size_t remaining = chars - text.size();
    if (state.depth > remaining) return;
    for (int c = 0x20; c < 0x7f; ++c) {
        auto next = state.step(static_cast<char>(c));
        if (!next) continue;
        text.push_back(static_cast<char>(c));
        text_dfs(text, *next, chars, sink);
        text.pop_back();
    }
}

} // namespace

void for_each_canonical_text(std::size_t chars, const std::function<void(const std::string&)>& sink) {
    if (chars == 0) return;
    std::string text;
    text_dfs(text, CanonicalTextState{}, chars, sink);
}

std::vector<std::string> canonical_texts(std::size_t chars) {
    std::vector<std::string> out;
    for_each_canonical_text(chars, [&](const std::string& t) { out.push_back(t); });
    return out;
}

std::shared_ptr<const DecodedPrefix> decode_prefix_text(const std::string& text) {
    auto prefix = std::make_shared<DecodedPrefix>();
    prefix->text = text;
    prefix->forms = parse(text);
    prefix->prefix_bits = 8 * (text.size() + 1);
    return prefix;
}

namespace {

class ProgramWalker {
public:
    ProgramWalker(std::size_t max_bits, const std::function<void(const EnumeratedProgram&)>& sink)
        : max_chars_(max_bits >= 16 ? (max_bits - 8) / 8 : 0), sink_(sink) {}

    // All programs of exactly `n` bits, in lexicographic order: a depth-first
    // walk over prefix bytes where the separator (0x00) sorts before every
    // text character.
    void programs_of_length(std::size_t n) {
        n_ = n;
        std::string text;
        walk(text, CanonicalTextState{});
    }

private:
    void walk(std::string& text, CanonicalTextState state) {
        if (state.accepting() && 8 * text.size() + 8 <= n_) emit_family(text);
        if (8 * text.size() + 16 > n_) return;
        for (int c = 0x20; c < 0x7f; ++c) {
            auto next = state.step(static_cast<char>(c));
            if (!next) continue;
            text.push_back(static_cast<char>(c));
            walk(text, *next);
            text.pop_back();
        }
    }

    std::shared_ptr<const DecodedPrefix> prefix_for(const std::string& text) {
        // Texts shorter than the longest possible are revisited for several
        // program lengths; keep those.
        if (text.size() >= max_chars_) return decode_prefix_text(text);
        auto [it, inserted] = cache_.try_emplace(text);
        if (inserted) it->second = decode_prefix_text(text);
        return it->second;
    }

    void emit_family(const std::string& text) {
        const std::size_t data_bits = n_ - 8 * text.size() - 8;
        EnumeratedProgram ep;
        ep.prefix = prefix_for(text);
        BitString head = BitString::from_bytes(text);
        head.push_byte(MachineConfig::separator);
        const std::uint64_t count = std::uint64_t{1} << data_bits;
        for (std::uint64_t v = 0; v < count; ++v) {
            BitString bits = head;
            for (std::size_t i = data_bits; i-- > 0;) bits.push_back((v >> i) & 1u);
            ep.program.bits = std::move(bits);
            sink_(ep);
        }
    }

    std::size_t max_chars_;
    std::size_t n_ = 0;
    const std::function<void(const EnumeratedProgram&)>& sink_;
    std::unordered_map<std::string, std::shared_ptr<const DecodedPrefix>> cache_;
};

} // namespace

void enumerate_programs(std::size_t max_bits, const std::function<void(const EnumeratedProgram&)>& sink) {
    ProgramWalker walker(max_bits, sink);
    for (std::size_t n = 16; n <= max_bits; ++n) walker.programs_of_length(n);
}

} // namespace ait
