#include "ait/eval.hpp"

#include <deque>
#include <string>
#include <unordered_map>
#include <utility>

namespace ait {

std::string_view outcome_name(const Outcome& o) noexcept {
    switch (o.index()) {
    case 0: return "Halted";
    case 1: return "AbortOverrun";
    case 2: return "OutOfTime";
    default: return "MalformedProgram";
    }
}

const std::vector<SExpr>* outcome_emissions(const Outcome& o) noexcept {
    if (auto* h = std::get_if<Halted>(&o)) return &h->emitted;
    if (auto* a = std::get_if<AbortOverrun>(&o)) return &a->emitted;
    if (auto* t = std::get_if<OutOfTime>(&o)) return &t->emitted;
    return nullptr;
}

namespace {

enum class NodeKind : std::uint8_t { atom, nil, cons, closure };

enum class Builtin : std::uint8_t {
    none,
    // special forms
    quote, if_, define, lambda,
    // primitives
    eq, head, tail, join, atom_p, read_bit, display, run_remaining,
};

bool is_special_form(Builtin b) noexcept {
    return b == Builtin::quote || b == Builtin::if_ || b == Builtin::define || b == Builtin::lambda;
}

Builtin builtin_for(std::string_view name) noexcept {
    if (name == "'" || name == "quote") return Builtin::quote;
    if (name == "if") return Builtin::if_;
    if (name == "define") return Builtin::define;
    if (name == "lambda") return Builtin::lambda;
    if (name == "=") return Builtin::eq;
    if (name == "head" || name == "car") return Builtin::head;
    if (name == "tail" || name == "cdr") return Builtin::tail;
    if (name == "join") return Builtin::join;
    if (name == "atom?") return Builtin::atom_p;
    if (name == "read-bit") return Builtin::read_bit;
    if (name == "display") return Builtin::display;
    if (name == "run-remaining") return Builtin::run_remaining;
    return Builtin::none;
}

struct Env;

// Heap cell.  cons: car/cdr.  closure: car = parameters, cdr = body, env.
struct Node {
    NodeKind kind;
    Builtin builtin = Builtin::none;
    std::string_view name;
    const Node* car = nullptr;
    const Node* cdr = nullptr;
    Env* env = nullptr;
};

struct Env {
    Env* parent = nullptr;
    std::vector<std::pair<const Node*, const Node*>> bindings;
};

// Per-run arena.  Atoms are interned, so atom identity is pointer identity.
// Everything is released together, so deep structures never recurse on
// destruction.
class Heap {
public:
    Heap() : nil_{NodeKind::nil, Builtin::none, {}} {
        true_ = atom("true");
        false_ = atom("false");
        zero_ = atom("0");
        one_ = atom("1");
        lambda_ = atom("lambda");
    }

    const Node* nil() const noexcept { return &nil_; }
    const Node* true_atom() const noexcept { return true_; }
    const Node* false_atom() const noexcept { return false_; }
    const Node* bit_atom(bool b) const noexcept { return b ? one_ : zero_; }

    const Node* atom(std::string_view name) {
        if (auto it = atoms_.find(name); it != atoms_.end()) return it->second;
        const std::string& stored = names_.emplace_back(name);
        Node& n = nodes_.emplace_back(Node{NodeKind::atom, builtin_for(stored), stored});
        atoms_.emplace(stored, &n);
        return &n;
    }

    const Node* cons(const Node* car, const Node* cdr) {
        return &nodes_.emplace_back(Node{NodeKind::cons, Builtin::none, {}, car, cdr});
    }

    const Node* closure(const Node* params, const Node* body, Env* env) {
        return &nodes_.emplace_back(Node{NodeKind::closure, Builtin::none, {}, params, body, env});
    }

    Env* env(Env* parent) { return &envs_.emplace_back(Env{parent, {}}); }

    const Node* from_sexpr(const SExpr& x) {
        if (x.is_atom()) return atom(x.name());
        const Node* list = nil();
        const auto& items = x.items();
        for (auto it = items.rbegin(); it != items.rend(); ++it) list = cons(from_sexpr(*it), list);
        return list;
    }

private:
    Node nil_;
    const Node* true_;
    const Node* false_;
    const Node* zero_;
    const Node* one_;
    const Node* lambda_;
    std::deque<Node> nodes_;
    std::deque<Env> envs_;
    std::deque<std::string> names_;
    std::unordered_map<std::string_view, const Node*> atoms_;
};

SExpr to_sexpr(const Node* n) {
    switch (n->kind) {
    case NodeKind::atom: return SExpr::atom(std::string(n->name));
    case NodeKind::nil: return SExpr::nil();
    case NodeKind::closure: {
        SExpr::List items;
        items.push_back(SExpr::atom("lambda"));
        items.push_back(to_sexpr(n->car));
        items.push_back(to_sexpr(n->cdr));
        return SExpr::list(std::move(items));
    }
    case NodeKind::cons: break;
    }
    SExpr::List items;
    for (; n->kind == NodeKind::cons; n = n->cdr) items.push_back(to_sexpr(n->car));
    return SExpr::list(std::move(items));
}

bool structurally_equal(const Node* a, const Node* b) {
    std::vector<std::pair<const Node*, const Node*>> work{{a, b}};
    while (!work.empty()) {
        auto [x, y] = work.back();
        work.pop_back();
        if (x == y) continue;
        if (x->kind != NodeKind::cons || y->kind != NodeKind::cons) return false;
        work.emplace_back(x->cdr, y->cdr);
        work.emplace_back(x->car, y->car);
    }
    return true;
}

const Node* nth(const Node* list, std::size_t i, const Node* missing) {
    for (; list->kind == NodeKind::cons; list = list->cdr, --i)
        if (i == 0) return list->car;
    return missing;
}

bool is_define_form(const Node* form) {
    return form->kind == NodeKind::cons && form->car->kind == NodeKind::atom &&
           form->car->builtin == Builtin::define;
}

class Machine {
public:
    Machine(BitTape tape, std::uint64_t budget) : tape_(tape), budget_(budget) {}

    Outcome run(std::span<const SExpr> program, const EvalOptions& options) {
        if (program.empty()) return finish_halted(heap_.nil());

        if (options.apply_result_to)
            frames_.push_back(Frame{Frame::Kind::apply_to, heap_.from_sexpr(*options.apply_result_to)});

        auto& forms = programs_.emplace_back();
        for (const auto& form : program) forms.push_back(heap_.from_sexpr(form));
        if (!begin_program(forms)) return MalformedProgram{"NonDefineForm"};

        for (;;) {
            if (mode_ == Mode::eval) {
                if (++steps_ > budget_) return OutOfTime{budget_, emitted()};
                if (!eval()) break;
            } else {
                if (frames_.empty()) return finish_halted(value_);
                if (!resume()) break;
            }
        }
        return std::move(*stop_);
    }

private:
    enum class Mode { eval, ret };

    struct Frame {
        enum class Kind : std::uint8_t { if_branch, define_value, args, program, apply_to };
        Kind kind;
        const Node* node = nullptr;   // branches, defined name, remaining args, or argument
        Env* env = nullptr;
        std::size_t base = 0;         // args: start of this call on values_
        const std::vector<const Node*>* forms = nullptr;
        std::size_t index = 0;
    };

    // Starts a program whose non-final forms must all be defines; false when
    // they are not.
    bool begin_program(const std::vector<const Node*>& forms) {
        for (std::size_t i = 0; i + 1 < forms.size(); ++i)
            if (!is_define_form(forms[i])) return false;
        Env* global = heap_.env(nullptr);
        frames_.push_back(Frame{Frame::Kind::program, nullptr, global, 0, &forms, 0});
        set_eval(forms[0], global);
        return true;
    }

    void set_eval(const Node* expr, Env* env) {
        mode_ = Mode::eval;
        expr_ = expr;
        env_ = env;
    }

    void set_ret(const Node* value) {
        mode_ = Mode::ret;
        value_ = value;
    }

    static Env* global_of(Env* env) {
        while (env->parent) env = env->parent;
        return env;
    }

    static void bind(Env* env, const Node* name, const Node* value) {
        for (auto& b : env->bindings) {
            if (b.first == name) {
                b.second = value;
                return;
            }
        }
        env->bindings.emplace_back(name, value);
    }

    static const Node* lookup(const Env* env, const Node* name) {
        for (; env; env = env->parent)
            for (auto it = env->bindings.rbegin(); it != env->bindings.rend(); ++it)
                if (it->first == name) return it->second;
        return nullptr;
    }

    bool eval() {
        const Node* e = expr_;
        switch (e->kind) {
        case NodeKind::atom: {
            const Node* v = lookup(env_, e);
            set_ret(v ? v : e);
            return true;
        }
        case NodeKind::nil:
        case NodeKind::closure:
            set_ret(e);
            return true;
        case NodeKind::cons: break;
        }

        const Node* head = e->car;
        const Node* nil = heap_.nil();
        if (head->kind == NodeKind::atom && is_special_form(head->builtin)) {
            switch (head->builtin) {
            case Builtin::quote:
                set_ret(nth(e, 1, nil));
                return true;
            case Builtin::if_:
                frames_.push_back(Frame{Frame::Kind::if_branch, e->cdr->kind == NodeKind::cons ? e->cdr->cdr : nil, env_});
                set_eval(nth(e, 1, nil), env_);
                return true;
            case Builtin::define: {
                const Node* target = nth(e, 1, nil);
                if (target->kind == NodeKind::cons) {
                    const Node* name = target->car;
                    const Node* fn = heap_.closure(target->cdr, nth(e, 2, nil), env_);
                    if (name->kind == NodeKind::atom) bind(global_of(env_), name, fn);
                    set_ret(name);
                    return true;
                }
                frames_.push_back(Frame{Frame::Kind::define_value, target, env_});
                set_eval(nth(e, 2, nil), env_);
                return true;
            }
            case Builtin::lambda:
                set_ret(heap_.closure(nth(e, 1, nil), nth(e, 2, nil), env_));
                return true;
            default: break;
            }
        }

        frames_.push_back(Frame{Frame::Kind::args, e->cdr, env_, values_.size()});
        set_eval(head, env_);
        return true;
    }

    bool resume() {
        Frame& f = frames_.back();
        switch (f.kind) {
        case Frame::Kind::if_branch: {
            const Node* branches = f.node;
            Env* env = f.env;
            frames_.pop_back();
            bool truthy = value_ != heap_.false_atom();
            set_eval(nth(branches, truthy ? 0 : 1, heap_.nil()), env);
            return true;
        }
        case Frame::Kind::define_value: {
            const Node* name = f.node;
            Env* env = f.env;
            frames_.pop_back();
            if (name->kind == NodeKind::atom) bind(global_of(env), name, value_);
            set_ret(name);
            return true;
        }
        case Frame::Kind::args: {
            values_.push_back(value_);
            if (f.node->kind == NodeKind::cons) {
                const Node* next = f.node->car;
                f.node = f.node->cdr;
                set_eval(next, f.env);
                return true;
            }
            std::size_t base = f.base;
            frames_.pop_back();
            return apply(base);
        }
        case Frame::Kind::program: {
            if (f.index + 1 < f.forms->size()) {
                ++f.index;
                set_eval((*f.forms)[f.index], f.env);
                return true;
            }
            frames_.pop_back();
            return true;  // value_ passes through
        }
        case Frame::Kind::apply_to: {
            const Node* arg = f.node;
            frames_.pop_back();
            if (value_->kind != NodeKind::closure) return true;
            std::size_t base = values_.size();
            values_.push_back(value_);
            values_.push_back(arg);
            return apply(base);
        }
        }
        return true;
    }

    // values_[base] is the function, values_[base+1..] the arguments.
    bool apply(std::size_t base) {
        const Node* fn = values_[base];
        const std::size_t argc = values_.size() - base - 1;
        const Node* nil = heap_.nil();
        auto arg = [&](std::size_t i) { return i < argc ? values_[base + 1 + i] : nil; };

        if (fn->kind == NodeKind::closure) {
            Env* env = heap_.env(fn->env);
            const Node* params = fn->car;
            if (params->kind == NodeKind::atom) {
                env->bindings.emplace_back(params, list_from(base + 1));
            } else {
                std::size_t i = 0;
                for (const Node* p = params; p->kind == NodeKind::cons; p = p->cdr, ++i)
                    if (p->car->kind == NodeKind::atom) env->bindings.emplace_back(p->car, arg(i));
            }
            values_.resize(base);
            set_eval(fn->cdr, env);
            return true;
        }

        const Builtin b = fn->kind == NodeKind::atom ? fn->builtin : Builtin::none;
        const Node* result = nullptr;
        switch (b) {
        case Builtin::eq:
            result = structurally_equal(arg(0), arg(1)) ? heap_.true_atom() : heap_.false_atom();
            break;
        case Builtin::head: {
            const Node* x = arg(0);
            result = x->kind == NodeKind::cons ? x->car : (x->kind == NodeKind::atom ? x : nil);
            break;
        }
        case Builtin::tail: {
            const Node* x = arg(0);
            result = x->kind == NodeKind::cons ? x->cdr : nil;
            break;
        }
        case Builtin::join: {
            const Node* rest = arg(1);
            bool is_list = rest->kind == NodeKind::cons || rest->kind == NodeKind::nil;
            result = heap_.cons(arg(0), is_list ? rest : nil);
            break;
        }
        case Builtin::atom_p:
            result = arg(0)->kind == NodeKind::atom ? heap_.true_atom() : heap_.false_atom();
            break;
        case Builtin::read_bit: {
            auto bit = tape_.read();
            if (!bit) {
                stop_ = AbortOverrun{steps_, emitted()};
                return false;
            }
            result = heap_.bit_atom(*bit);
            break;
        }
        case Builtin::display:
            result = arg(0);
            emitted_.push_back(result);
            break;
        case Builtin::run_remaining:
            values_.resize(base);
            return run_remaining();
        default:
            result = list_from(base);
            break;
        }
        values_.resize(base);
        set_ret(result);
        return true;
    }

    const Node* list_from(std::size_t begin) {
        const Node* list = heap_.nil();
        for (std::size_t i = values_.size(); i > begin; --i) list = heap_.cons(values_[i - 1], list);
        return list;
    }

    // Decodes a prefix from the unread tape and runs it in a fresh global
    // environment, sharing tape, budget and emissions with the caller.
    bool run_remaining() {
        std::string text;
        for (;;) {
            unsigned byte = 0;
            for (int i = 0; i < 8; ++i) {
                auto bit = tape_.read();
                if (!bit) {
                    stop_ = AbortOverrun{steps_, emitted()};
                    return false;
                }
                byte = (byte << 1) | (*bit ? 1u : 0u);
            }
            if (byte == 0) break;
            if (byte < 0x20 || byte > 0x7e) {
                stop_ = MalformedProgram{"BadChar"};
                return false;
            }
            text.push_back(static_cast<char>(byte));
        }
        auto parsed = parse_canonical_program(text);
        if (!parsed) {
            stop_ = MalformedProgram{"ParseFail"};
            return false;
        }
        auto& forms = programs_.emplace_back();
        for (const auto& form : *parsed) forms.push_back(heap_.from_sexpr(form));
        if (!begin_program(forms)) {
            stop_ = MalformedProgram{"NonDefineForm"};
            return false;
        }
        return true;
    }

    std::vector<SExpr> emitted() const {
        std::vector<SExpr> out;
        out.reserve(emitted_.size());
        for (const Node* n : emitted_) out.push_back(to_sexpr(n));
        return out;
    }

    Outcome finish_halted(const Node* value) {
        return Halted{to_sexpr(value), tape_.consumed(), steps_, emitted()};
    }

    Heap heap_;
    BitTape tape_;
    std::uint64_t budget_;
    std::uint64_t steps_ = 0;

    Mode mode_ = Mode::eval;
    const Node* expr_ = nullptr;
    Env* env_ = nullptr;
    const Node* value_ = nullptr;

    std::vector<Frame> frames_;
    std::vector<const Node*> values_;
    std::deque<std::vector<const Node*>> programs_;
    std::vector<const Node*> emitted_;
    std::optional<Outcome> stop_;
};

} // namespace

Outcome evaluate(std::span<const SExpr> program, BitTape tape, std::uint64_t budget,
                 const EvalOptions& options) {
    Machine machine(tape, budget);
    return machine.run(program, options);
}

BudgetProbe step_budget_probe(std::span<const SExpr> program, const BitString& tape,
                              std::uint64_t cap, std::uint64_t initial) {
    if (initial == 0) initial = 1;
    for (std::uint64_t b = initial; b <= cap; b *= 2) {
        Outcome o = evaluate(program, BitTape(tape), b);
        if (auto* h = std::get_if<Halted>(&o)) return BudgetProbe{b, std::move(*h)};
        if (!std::holds_alternative<OutOfTime>(o))
            throw error(std::string(outcome_name(o)),
                        "program stops without halting: " + std::string(outcome_name(o)));
        if (b > cap / 2) break;
    }
    throw error("CapExceeded", "no halt within step cap " + std::to_string(cap));
}

} // namespace ait
