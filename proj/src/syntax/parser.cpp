#include "tillst/syntax/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "tillst/syntax/ops.hpp"

namespace tillst::syntax {

namespace {

std::string join(const std::set<std::string>& s) {
    std::string out;
    for (const auto& x : s) {
        if (!out.empty()) out += ", ";
        out += x;
    }
    return out;
}

}  // namespace

ParseError::ParseError(SourcePos p, std::string f, std::set<std::string> e)
    : Error("parse error at " + p.str() + ": found " + f + ", expected one of {" + join(e) + "}"),
      pos(p),
      found(std::move(f)),
      expected(std::move(e)) {}

namespace {

struct Token {
    enum class Kind { Ident, Int, Sym, End };
    Kind kind = Kind::End;
    std::string text;
    std::int64_t value = 0;
    SourcePos pos;
};

std::string describe(const Token& t) {
    switch (t.kind) {
        case Token::Kind::End: return "end of input";
        case Token::Kind::Int: return "integer '" + t.text + "'";
        default: return "'" + t.text + "'";
    }
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(const std::string& src) {
    static const char* multi[] = {"]-->", "--[", "=>", "<=", "->", "==", "!=", ">=", "&&", "||"};
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        Token t;
        t.pos = SourcePos{line, col};
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j])) ++j;
            t.kind = Token::Kind::Ident;
            t.text = src.substr(i, j - i);
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            int base = 10;
            if (c == '0' && j + 1 < src.size() && (src[j + 1] == 'x' || src[j + 1] == 'X')) {
                base = 16;
                j += 2;
            }
            std::string digits;
            while (j < src.size() && (std::isxdigit(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
                if (base == 10 && !std::isdigit(static_cast<unsigned char>(src[j])) && src[j] != '_') break;
                if (src[j] != '_') digits += src[j];
                ++j;
            }
            t.kind = Token::Kind::Int;
            t.text = src.substr(i, j - i);
            if (digits.empty()) throw ParseError(t.pos, "'" + t.text + "'", {"integer"});
            try {
                t.value = static_cast<std::int64_t>(std::stoull(digits, nullptr, base));
            } catch (const std::exception&) {
                throw ParseError(t.pos, "'" + t.text + "'", {"integer within 64 bits"});
            }
            advance(j - i);
        } else {
            t.kind = Token::Kind::Sym;
            for (const char* m : multi) {
                std::string ms(m);
                if (src.compare(i, ms.size(), ms) == 0) {
                    t.text = ms;
                    break;
                }
            }
            if (t.text.empty()) {
                static const std::string singles = "<>(){};,:$+-*/%!?[]=@";
                if (singles.find(c) == std::string::npos) {
                    throw ParseError(t.pos, std::string("character '") + c + "'", {"token"});
                }
                t.text = std::string(1, c);
            }
            advance(t.text.size());
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.pos = SourcePos{line, col};
    out.push_back(end);
    return out;
}

const std::set<std::string> kTypeKeywords = {"Unit", "Tensor", "Lolli", "InChoice", "ExChoice",
                                             "Produce", "Request", "Query"};

class Parser {
public:
    Parser(std::vector<Token> toks, std::set<std::string> sorts) : toks_(std::move(toks)), sorts_(std::move(sorts)) {}

    static std::set<std::string> prescan_sorts(const std::vector<Token>& toks) {
        std::set<std::string> s;
        for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
            if (toks[i].kind == Token::Kind::Ident && toks[i].text == "sort" &&
                toks[i + 1].kind == Token::Kind::Ident) {
                s.insert(toks[i + 1].text);
            }
        }
        return s;
    }

    Program program() {
        Program prog;
        while (!at_end()) {
            const Token& t = peek();
            if (is_ident("sort")) {
                next();
                prog.sorts.push_back(SortDecl{ident(), t.pos});
            } else if (is_ident("extern")) {
                prog.externs.push_back(extern_decl());
            } else if (is_ident("type")) {
                next();
                TypeDecl d;
                d.pos = t.pos;
                d.name = ident();
                expect("=");
                d.type = type();
                prog.types.push_back(std::move(d));
            } else if (is_ident("fn")) {
                prog.procs.push_back(proc_decl());
            } else if (is_ident("automaton")) {
                prog.automata.push_back(automaton_decl());
            } else if (is_ident("system")) {
                prog.systems.push_back(system_decl());
            } else {
                fail({"sort", "extern", "type", "fn", "automaton", "system"});
            }
            accept(";");
        }
        return prog;
    }

    TypePtr type() {
        const Token& t = peek();
        if (t.kind != Token::Kind::Ident) fail({"session type"});
        SourcePos pos = t.pos;
        std::string kw = t.text;
        next();
        TypePtr out;
        if (!kTypeKeywords.count(kw)) {
            out = ty::ref(kw);
        } else if (kw == "Unit") {
            expect("<");
            auto [b, p] = binder();
            expect(">");
            out = ty::unit(b, p);
        } else if (kw == "Produce" || kw == "Request" || kw == "Query") {
            expect("<");
            ValueType vt;
            TimeVar b;
            Prop p;
            if (peek().kind == Token::Kind::Ident && is_sort_name(peek().text) && peek(1).text == ",") {
                vt = value_type();
                expect(",");
                std::tie(b, p) = binder();
            } else {
                std::tie(b, p) = binder();
                expect(",");
                vt = value_type();
            }
            expect(",");
            TypePtr cont = type();
            expect(">");
            out = kw == "Produce" ? ty::produce(vt, b, p, cont) : ty::request(vt, b, p, cont);
        } else {
            SessionType::Kind k = kw == "Tensor"   ? SessionType::Kind::Tensor
                                  : kw == "Lolli"  ? SessionType::Kind::Lolli
                                  : kw == "InChoice" ? SessionType::Kind::InChoice
                                                     : SessionType::Kind::ExChoice;
            expect("<");
            auto [b, p] = binder();
            expect(",");
            TypePtr a1 = type();
            expect(",");
            TypePtr a2 = type();
            expect(">");
            out = ty::binary(k, b, p, a1, a2);
        }
        std::const_pointer_cast<SessionType>(out)->pos = pos;
        return out;
    }

    TimeExpr time() {
        const Token& t = peek();
        if (t.kind == Token::Kind::Int) {
            next();
            return TimeExpr::init(t.value);
        }
        if (is_ident("Shift")) {
            next();
            expect("<");
            TimeExpr base = time();
            expect(",");
            std::int64_t k = signed_int();
            expect(">");
            return base.shifted(k);
        }
        if (t.kind != Token::Kind::Ident) fail({"time expression"});
        next();
        if (temporal::is_reserved_time_name(t.text)) return TimeExpr::init();
        return TimeExpr::var(t.text);
    }

    Prop prop() {
        const Token& t = peek();
        if (t.kind != Token::Kind::Ident) fail({"proposition"});
        std::string kw = t.text;
        if (kw == "True" || kw == "Top") {
            next();
            return Prop::top();
        }
        if (kw == "False" || kw == "Bot") {
            next();
            return Prop::bot();
        }
        static const std::set<std::string> time2 = {"Leq", "Geq", "Eq", "Neq", "Lt", "Gt"};
        static const std::set<std::string> prop2 = {"And", "Or", "Implies", "Imp"};
        if (time2.count(kw)) {
            next();
            expect("<");
            TimeExpr a = time();
            expect(",");
            TimeExpr b = time();
            expect(">");
            if (kw == "Leq") return Prop::leq(a, b);
            if (kw == "Geq") return Prop::geq(a, b);
            if (kw == "Eq") return Prop::eq(a, b);
            if (kw == "Neq") return Prop::neq(a, b);
            if (kw == "Lt") return Prop::lt(a, b);
            return Prop::gt(a, b);
        }
        if (kw == "In") {
            next();
            expect("<");
            TimeExpr a = time();
            expect(",");
            TimeExpr m = time();
            expect(",");
            TimeExpr b = time();
            expect(">");
            return Prop::in_range(a, m, b);
        }
        if (prop2.count(kw)) {
            next();
            expect("<");
            Prop a = prop();
            expect(",");
            Prop b = prop();
            expect(">");
            if (kw == "And") return Prop::conj(a, b);
            if (kw == "Or") return Prop::disj(a, b);
            return Prop::imp(a, b);
        }
        if (kw == "Not") {
            next();
            expect("<");
            Prop a = prop();
            expect(">");
            return Prop::negate(a);
        }
        fail({"True", "False", "Leq", "Geq", "Eq", "Neq", "Lt", "Gt", "In", "And", "Or", "Implies", "Not"});
    }

    ProcPtr process() {
        const Token& t = peek();
        SourcePos pos = t.pos;
        ProcPtr p = process_inner();
        if (!p->pos.known()) std::const_pointer_cast<Process>(p)->pos = pos;
        return p;
    }

    bool at_end() const { return toks_[i_].kind == Token::Kind::End; }

    [[noreturn]] void fail(const std::set<std::string>& expected) const {
        throw ParseError(peek().pos, describe(peek()), expected);
    }

private:
    ProcPtr process_inner() {
        const Token& t = peek();
        if (accept("{")) {
            ProcPtr p = process();
            expect("}");
            return p;
        }
        if (t.kind != Token::Kind::Ident) fail({"process"});
        std::string kw = t.text;
        next();
        if (kw == "Close") {
            auto [b, p] = angle_binder();
            return pr::close(b, p);
        }
        if (kw == "Wait") {
            TimeExpr at = angle_time();
            std::string x = paren_ident();
            expect(";");
            return pr::wait(at, x, process());
        }
        if (kw == "Lam") {
            auto [b, p] = angle_binder();
            expect("{");
            std::string x = ident();
            TypePtr annot;
            if (accept(":")) annot = type();
            expect("=>");
            ProcPtr body = process();
            expect("}");
            return pr::lam(b, p, x, annot, body);
        }
        if (kw == "App") {
            TimeExpr at = angle_time();
            expect("(");
            std::string x = ident();
            expect("<=");
            expect("{");
            ProcPtr payload = process();
            expect("}");
            expect(")");
            expect(";");
            return pr::app(at, x, payload, process());
        }
        if (kw == "SendCh") {
            auto [b, p] = angle_binder();
            expect("{");
            ProcPtr payload = process();
            expect("}");
            expect(";");
            return pr::send_ch(b, p, payload, process());
        }
        if (kw == "RecvCh") {
            TimeExpr at = angle_time();
            std::string x = paren_ident();
            expect("{");
            std::string y = ident();
            expect("=>");
            ProcPtr body = process();
            expect("}");
            return pr::recv_ch(at, x, y, body);
        }
        if (kw == "SwitchL" || kw == "SwitchR") {
            auto [b, p] = angle_binder();
            expect(";");
            ProcPtr cont = process();
            return kw == "SwitchL" ? pr::in_l(b, p, cont) : pr::in_r(b, p, cont);
        }
        if (kw == "Case") {
            TimeExpr at = angle_time();
            std::string x = paren_ident();
            auto [l, r] = branches();
            return pr::case_(at, x, l, r);
        }
        if (kw == "Offer") {
            auto [b, p] = angle_binder();
            auto [l, r] = branches();
            return pr::offer(b, p, l, r);
        }
        if (kw == "SelectL" || kw == "SelectR") {
            TimeExpr at = angle_time();
            std::string x = paren_ident();
            expect(";");
            ProcPtr cont = process();
            return kw == "SelectL" ? pr::select_l(at, x, cont) : pr::select_r(at, x, cont);
        }
        if (kw == "Prod") {
            auto [b, p] = angle_binder();
            ExprPtr e = delimited_expr();
            expect(";");
            return pr::prod(b, p, e, process());
        }
        if (kw == "Cons") {
            TimeExpr at = angle_time();
            std::string x = paren_ident();
            expect("{");
            std::string u = ident();
            expect("=>");
            ProcPtr body = process();
            expect("}");
            return pr::cons(at, x, u, body);
        }
        if (kw == "Query") {
            auto [b, p] = angle_binder();
            expect("{");
            std::string u = ident();
            expect("=>");
            ProcPtr body = process();
            expect("}");
            return pr::query(b, p, u, body);
        }
        if (kw == "Supply") {
            TimeExpr at = angle_time();
            std::string x = paren_ident();
            ExprPtr e = delimited_expr();
            expect(";");
            return pr::supply(at, x, e, process());
        }
        if (kw == "Fwd") {
            TimeExpr at = angle_time();
            return pr::fwd(at, paren_ident());
        }
        if (kw == "Spawn") {
            TimeExpr at = angle_time();
            expect("(");
            std::string callee = ident();
            std::vector<std::string> args;
            while (accept(",")) args.push_back(ident());
            expect(")");
            expect("{");
            std::string x = ident();
            TypePtr annot;
            if (accept(":")) annot = type();
            expect("=>");
            ProcPtr body = process();
            expect("}");
            return pr::spawn(at, callee, args, x, annot, body);
        }
        if (kw == "if") {
            ExprPtr c = delimited_expr();
            expect_ident("then");
            ProcPtr a = process();
            expect_ident("else");
            ProcPtr b = process();
            return pr::if_(c, a, b);
        }
        --i_;
        fail({"Close", "Wait", "Lam", "App", "SendCh", "RecvCh", "SwitchL", "SwitchR", "Case", "Offer", "SelectL",
              "SelectR", "Prod", "Cons", "Query", "Supply", "Fwd", "Spawn", "if", "{"});
    }

    std::pair<ProcPtr, ProcPtr> branches() {
        expect("{");
        expect_ident("L");
        expect("=>");
        ProcPtr l = process();
        expect("}");
        expect("{");
        expect_ident("R");
        expect("=>");
        ProcPtr r = process();
        expect("}");
        return {l, r};
    }

    // ---- expressions

    ExprPtr delimited_expr() {
        if (accept("$")) {
            ExprPtr e = expr();
            expect("$");
            return e;
        }
        return expr();
    }

    ExprPtr expr() { return expr_or(); }

    ExprPtr expr_or() {
        ExprPtr a = expr_and();
        while (true) {
            SourcePos pos = peek().pos;
            if (!accept("||")) return a;
            a = positioned(ex::binary(BinOp::Or, a, expr_and()), pos);
        }
    }

    ExprPtr expr_and() {
        ExprPtr a = expr_cmp();
        while (true) {
            SourcePos pos = peek().pos;
            if (!accept("&&")) return a;
            a = positioned(ex::binary(BinOp::And, a, expr_cmp()), pos);
        }
    }

    ExprPtr expr_cmp() {
        ExprPtr a = expr_add();
        static const std::vector<std::pair<std::string, BinOp>> ops = {
            {"==", BinOp::Eq}, {"!=", BinOp::Ne}, {"<=", BinOp::Le},
            {">=", BinOp::Ge}, {"<", BinOp::Lt},  {">", BinOp::Gt}};
        for (const auto& [s, op] : ops) {
            SourcePos pos = peek().pos;
            if (accept(s)) return positioned(ex::binary(op, a, expr_add()), pos);
        }
        return a;
    }

    ExprPtr expr_add() {
        ExprPtr a = expr_mul();
        while (true) {
            SourcePos pos = peek().pos;
            if (accept("+")) a = positioned(ex::binary(BinOp::Add, a, expr_mul()), pos);
            else if (accept("-")) a = positioned(ex::binary(BinOp::Sub, a, expr_mul()), pos);
            else return a;
        }
    }

    ExprPtr expr_mul() {
        ExprPtr a = expr_unary();
        while (true) {
            SourcePos pos = peek().pos;
            if (accept("*")) a = positioned(ex::binary(BinOp::Mul, a, expr_unary()), pos);
            else if (accept("/")) a = positioned(ex::binary(BinOp::Div, a, expr_unary()), pos);
            else if (accept("%")) a = positioned(ex::binary(BinOp::Mod, a, expr_unary()), pos);
            else return a;
        }
    }

    ExprPtr expr_unary() {
        SourcePos pos = peek().pos;
        if (accept("!")) return positioned(ex::not_(expr_unary()), pos);
        if (accept("-")) return positioned(ex::neg(expr_unary()), pos);
        return expr_primary();
    }

    ExprPtr expr_primary() {
        const Token& t = peek();
        SourcePos pos = t.pos;
        if (t.kind == Token::Kind::Int) {
            next();
            return positioned(ex::lit(Value::integer(t.value)), pos);
        }
        if (accept("(")) {
            ExprPtr e = expr();
            expect(")");
            return e;
        }
        if (t.kind != Token::Kind::Ident) fail({"expression"});
        std::string name = t.text;
        next();
        if (name == "true") return positioned(ex::lit(Value::boolean(true)), pos);
        if (name == "false") return positioned(ex::lit(Value::boolean(false)), pos);
        if (name == "if") {
            ExprPtr c = expr();
            expect_ident("then");
            ExprPtr a = expr();
            expect_ident("else");
            ExprPtr b = expr();
            return positioned(ex::if_(c, a, b), pos);
        }
        if (accept("(")) {
            std::vector<ExprPtr> args;
            if (!accept(")")) {
                args.push_back(expr());
                while (accept(",")) args.push_back(expr());
                expect(")");
            }
            return positioned(ex::call(name, std::move(args)), pos);
        }
        return positioned(ex::var(name), pos);
    }

    static ExprPtr positioned(ExprPtr e, SourcePos pos) {
        std::const_pointer_cast<Expr>(e)->pos = pos;
        return e;
    }

    // ---- declarations

    ExternDecl extern_decl() {
        ExternDecl d;
        d.pos = peek().pos;
        next();
        expect_ident("fn");
        d.name = ident();
        expect("(");
        if (!accept(")")) {
            d.args.push_back(value_type());
            while (accept(",")) d.args.push_back(value_type());
            expect(")");
        }
        expect("->");
        d.ret = value_type();
        return d;
    }

    ProcDecl proc_decl() {
        ProcDecl d;
        d.pos = peek().pos;
        next();
        d.name = ident();
        expect("(");
        if (!accept(")")) {
            do {
                Param p;
                p.name = ident();
                expect(":");
                p.type = type();
                d.params.push_back(std::move(p));
            } while (accept(","));
            expect(")");
        }
        expect("->");
        d.offered = type();
        expect("{");
        d.body = process();
        expect("}");
        return d;
    }

    AutomatonDecl automaton_decl() {
        AutomatonDecl d;
        d.pos = peek().pos;
        next();
        d.name = ident();
        expect("{");
        while (!accept("}")) {
            if (is_ident("state")) {
                next();
                std::string s = ident();
                d.states.push_back(s);
                if (is_ident("init")) {
                    next();
                    if (!d.initial.empty()) {
                        throw ParseError(peek().pos, "second initial state '" + s + "'", {"single init state"});
                    }
                    d.initial = s;
                }
                expect(";");
                continue;
            }
            TransitionDecl tr;
            tr.pos = peek().pos;
            tr.from = ident();
            expect("--[");
            if (peek().kind == Token::Kind::Int) {
                tr.guard = peek().value;
                next();
                expect(",");
            }
            tr.action = action_template();
            expect("]-->");
            tr.to = ident();
            expect(";");
            d.transitions.push_back(std::move(tr));
        }
        if (d.initial.empty()) throw ParseError(peek().pos, "automaton without init state", {"state NAME init;"});
        return d;
    }

    ActionTemplate action_template() {
        using K = ActionTemplate::Kind;
        bool send;
        if (accept("!")) send = true;
        else if (accept("?")) send = false;
        else fail({"!", "?"});
        const Token& t = peek();
        std::string w = ident();
        if (w == "L") return {send ? K::SendL : K::RecvL, {}};
        if (w == "R") return {send ? K::SendR : K::RecvR, {}};
        if (w == "cls") return {send ? K::SendClose : K::RecvClose, {}};
        if (w == "chan") return {send ? K::SendChan : K::RecvChan, {}};
        if (w == "val") {
            if (!send) return {K::RecvVal, {}};
            expect("(");
            std::string f = ident();
            expect(")");
            return {K::SendVal, f};
        }
        throw ParseError(t.pos, describe(t), {"L", "R", "val", "cls", "chan"});
    }

    SystemDecl system_decl() {
        SystemDecl d;
        d.pos = peek().pos;
        next();
        d.name = ident();
        expect("=");
        d.root = ident();
        expect("(");
        if (!accept(")")) {
            do {
                SystemArg a;
                a.pos = peek().pos;
                a.label = ident();
                expect("=");
                a.component = ident();
                if (is_ident("as")) {
                    next();
                    a.alias = ident();
                } else {
                    a.alias = a.label;
                }
                d.args.push_back(std::move(a));
            } while (accept(","));
            expect(")");
        }
        expect("@");
        d.start = time();
        return d;
    }

    // ---- pieces

    std::pair<TimeVar, Prop> binder() {
        const Token& t = peek();
        std::string name = ident();
        if (temporal::is_reserved_time_name(name)) {
            throw ParseError(t.pos, "reserved name '" + name + "'", {"fresh time variable"});
        }
        Prop p = Prop::top();
        if (is_ident("where")) {
            next();
            p = prop();
        }
        return {TimeVar{name}, p};
    }

    std::pair<TimeVar, Prop> angle_binder() {
        expect("<");
        auto r = binder();
        expect(">");
        return r;
    }

    TimeExpr angle_time() {
        expect("<");
        TimeExpr t = time();
        expect(">");
        return t;
    }

    std::string paren_ident() {
        expect("(");
        std::string x = ident();
        expect(")");
        return x;
    }

    bool is_sort_name(const std::string& n) const {
        return n == "bool" || n == "int" || n == "sort_bool" || n == "sort_int" || sorts_.count(n);
    }

    ValueType value_type() {
        const Token& t = peek();
        std::string n = ident();
        if (n == "bool" || n == "sort_bool") return ValueType::boolean();
        if (n == "int" || n == "sort_int") return ValueType::integer();
        if (sorts_.count(n)) return ValueType::named(n);
        throw ParseError(t.pos, "unknown sort '" + n + "'", {"bool", "int", "declared sort"});
    }

    std::int64_t signed_int() {
        bool neg = accept("-");
        const Token& t = peek();
        if (t.kind != Token::Kind::Int) fail({"integer"});
        next();
        return neg ? -t.value : t.value;
    }

    std::string ident() {
        const Token& t = peek();
        if (t.kind != Token::Kind::Ident) fail({"identifier"});
        next();
        return t.text;
    }

    const Token& peek(std::size_t k = 0) const {
        std::size_t j = std::min(i_ + k, toks_.size() - 1);
        return toks_[j];
    }
    void next() {
        if (i_ + 1 < toks_.size()) ++i_;
    }
    bool is_ident(const char* w) const { return peek().kind == Token::Kind::Ident && peek().text == w; }
    bool accept(const std::string& sym) {
        if (peek().kind == Token::Kind::Sym && peek().text == sym) {
            next();
            return true;
        }
        return false;
    }
    void expect(const std::string& sym) {
        if (!accept(sym)) fail({"'" + sym + "'"});
    }
    void expect_ident(const char* w) {
        if (!is_ident(w)) fail({std::string("'") + w + "'"});
        next();
    }

    std::vector<Token> toks_;
    std::set<std::string> sorts_;
    std::size_t i_ = 0;
};

// ---- resolution checks

class Resolver {
public:
    explicit Resolver(const Program& p) : prog_(p) {}

    void run() {
        unique(prog_.sorts, "sort");
        unique(prog_.externs, "extern");
        unique(prog_.types, "type");
        unique(prog_.systems, "system");
        std::set<std::string> comps;
        for (const auto& p : prog_.procs) {
            if (!comps.insert(p.name).second) dup("process", p.name, p.pos);
        }
        for (const auto& a : prog_.automata) {
            if (!comps.insert(a.name).second) dup("automaton", a.name, a.pos);
        }
        for (const auto& t : prog_.types) type(*t.type);
        for (const auto& t : prog_.types) expand_type_refs(prog_, t.type);
        for (const auto& e : prog_.externs) {
            for (const auto& a : e.args) value_type(a, e.pos);
            value_type(e.ret, e.pos);
        }
        for (const auto& p : prog_.procs) {
            for (const auto& prm : p.params) type(*prm.type);
            type(*p.offered);
            process(*p.body);
        }
        for (const auto& a : prog_.automata) {
            for (const auto& tr : a.transitions) {
                if (tr.action.kind == ActionTemplate::Kind::SendVal) {
                    const ExternDecl* e = prog_.find_extern(tr.action.extern_fn);
                    if (!e) throw UnknownName(tr.pos.str() + ": unknown extern '" + tr.action.extern_fn + "'");
                    if (!e->args.empty()) {
                        throw UnknownName(tr.pos.str() + ": extern '" + e->name + "' used by an automaton takes arguments");
                    }
                }
            }
        }
        for (const auto& s : prog_.systems) {
            if (!prog_.find_proc(s.root)) throw UnknownName(s.pos.str() + ": unknown proc '" + s.root + "'");
            std::set<std::string> aliases;
            for (const auto& a : s.args) {
                if (!prog_.find_proc(a.component) && !prog_.find_automaton(a.component)) {
                    throw UnknownName(a.pos.str() + ": unknown component '" + a.component + "'");
                }
                if (!aliases.insert(a.alias).second) dup("channel", a.alias, a.pos);
            }
        }
    }

private:
    template <class T>
    void unique(const std::vector<T>& v, const char* what) {
        std::set<std::string> seen;
        for (const auto& d : v) {
            if (!seen.insert(d.name).second) dup(what, d.name, d.pos);
        }
    }

    [[noreturn]] void dup(const char* what, const std::string& n, SourcePos pos) {
        throw UnknownName(pos.str() + ": duplicate " + std::string(what) + " '" + n + "'");
    }

    void value_type(const ValueType& v, SourcePos pos) {
        if (v.kind == ValueType::Kind::Named && !prog_.find_sort(v.name)) {
            throw UnknownName(pos.str() + ": unknown sort '" + v.name + "'");
        }
    }

    void type(const SessionType& a) {
        if (a.kind == SessionType::Kind::Ref) {
            if (!prog_.find_type(a.ref)) throw UnknownName(a.pos.str() + ": unknown type '" + a.ref + "'");
            return;
        }
        for (const auto& p : a.parts) type(*p);
    }

    void expr(const Expr& e) {
        if (e.kind == Expr::Kind::Call) {
            const ExternDecl* d = prog_.find_extern(e.name);
            if (!d) throw UnknownName(e.pos.str() + ": unknown extern '" + e.name + "'");
            if (d->args.size() != e.args.size()) {
                throw UnknownName(e.pos.str() + ": extern '" + e.name + "' expects " + std::to_string(d->args.size()) +
                                  " arguments");
            }
        }
        for (const auto& a : e.args) expr(*a);
    }

    void process(const Process& p) {
        if (p.annot) type(*p.annot);
        if (p.expr) expr(*p.expr);
        if (p.kind == Process::Kind::Spawn && !prog_.find_proc(p.callee)) {
            throw UnknownName(p.pos.str() + ": unknown proc '" + p.callee + "'");
        }
        if (p.first) process(*p.first);
        if (p.second) process(*p.second);
    }

    const Program& prog_;
};

template <class F>
auto parse_single(const std::string& src, const std::set<std::string>& sorts, F f) {
    Parser ps(lex(src), sorts);
    auto r = f(ps);
    if (!ps.at_end()) ps.fail({"end of input"});
    return r;
}

}  // namespace

Program parse_program(const std::string& source) {
    auto toks = lex(source);
    auto sorts = Parser::prescan_sorts(toks);
    Parser ps(std::move(toks), std::move(sorts));
    Program prog = ps.program();
    Resolver(prog).run();
    return prog;
}

TypePtr parse_type(const std::string& source, const std::set<std::string>& sorts) {
    return parse_single(source, sorts, [](Parser& p) { return p.type(); });
}

ProcPtr parse_process(const std::string& source, const std::set<std::string>& sorts) {
    return parse_single(source, sorts, [](Parser& p) { return p.process(); });
}

Prop parse_prop(const std::string& source) {
    return parse_single(source, {}, [](Parser& p) { return p.prop(); });
}

TimeExpr parse_time(const std::string& source) {
    return parse_single(source, {}, [](Parser& p) { return p.time(); });
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace tillst::syntax
